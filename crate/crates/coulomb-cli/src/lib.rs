//! Batch front door for the coulomb library: parse a theory description,
//! dispatch one computation, print exact text or JSON on stdout.
//!
//! Exit codes: 0 success, 1 validation/usage error (diagnostics on
//! stderr), 2 divergence or positivity failure (witness printed on
//! stdout, since it is a result about the theory, not about the input).

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use coulomb::algebra::{monopole_generator, AlgebraElement, Charge, Mode};
use coulomb::grading::{degree, DegreeReport, GradingSpec};
use coulomb::lattice::IntMatrix;
use coulomb::monopole::{monopole_hilbert_series, NonabelianTheory};
use coulomb::poly::Poly;
use coulomb::rat::{format_rat, parse_rat, HalfInt, Rat};
use coulomb::series::GradedSeries;
use coulomb::theory::TorusTheory;
use coulomb::{
    duality_check, find_relations_with, generic_fiber_witness, higgs_hilbert_series,
    molien_selfcheck, quiver_to_theory, verify_presentation, Error, HiggsInput, QuiverData,
};

/// Parse `args` (without the program name), run one subcommand, print its
/// output, and return the process exit code.
pub fn run(args: &[String]) -> i32 {
    let (code, out) = execute(args);
    if !out.is_empty() {
        print!("{out}");
    }
    code
}

/// As [`run`], but hand back stdout instead of printing it.  Diagnostics
/// still go to stderr directly.
pub fn execute(args: &[String]) -> (i32, String) {
    let mut argv = Vec::with_capacity(args.len() + 1);
    argv.push("coulomb".to_string());
    argv.extend(args.iter().cloned());
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            eprint!("{}", e.render());
            return (code, String::new());
        }
    };
    let format = cli.cmd.format();
    match dispatch(cli.cmd) {
        Ok(out) => (0, out),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            (1, String::new())
        }
        Err(CliError::Lib(e)) => match &e {
            Error::Divergence { witness } => (2, render_divergence(witness, format)),
            Error::SearchExhausted { shells_scanned } => {
                let out = match format {
                    Format::Text => format!(
                        "search exhausted: no certified support bound after {shells_scanned} shells\n"
                    ),
                    Format::Json => format!(
                        "{}\n",
                        serde_json::json!({
                            "status": "search-exhausted",
                            "shells_scanned": shells_scanned.to_string(),
                        })
                    ),
                };
                (2, out)
            }
            _ => {
                eprintln!("error: {e}");
                (1, String::new())
            }
        },
    }
}

fn render_divergence(witness: &[i64], format: Format) -> String {
    match format {
        Format::Text => format!(
            "divergent: witness [{}]\n",
            witness
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ),
        Format::Json => format!(
            "{}\n",
            serde_json::json!({
                "status": "divergent",
                "witness": witness.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            })
        ),
    }
}

enum CliError {
    /// Bad input: usage text already carries the detail.
    Usage(String),
    /// An error from the library; classified for the exit code.
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult = Result<String, CliError>;

#[derive(Parser)]
#[command(
    name = "coulomb",
    about = "Exact Coulomb-branch computations for 3d N=4 gauge theories",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Monopole-formula Hilbert series of a torus or quiver theory.
    #[command(name = "mono-hs")]
    MonoHs(MonoHsArgs),
    /// Multiply monopole generators in the abelianized algebra.
    #[command(name = "alg-mul")]
    AlgMul(AlgMulArgs),
    /// Generators-and-relations presentation of the coordinate ring.
    Present(PresentArgs),
    /// Commutator of two monopole generators in the quantized algebra.
    #[command(name = "quantize-comm")]
    QuantizeComm(QuantizeCommArgs),
    /// Higgs-branch Hilbert series by Molien constant-term extraction.
    #[command(name = "higgs-hs")]
    HiggsHs(HiggsHsArgs),
    /// Compare Coulomb and Higgs series for a torus embedding.
    Duality(DualityArgs),
    /// Evaluate the fiber witnesses at a (generic) base point.
    #[command(name = "fiber-check")]
    FiberCheck(FiberCheckArgs),
}

impl Cmd {
    fn format(&self) -> Format {
        match self {
            Cmd::MonoHs(a) => a.format,
            Cmd::AlgMul(a) => a.format,
            Cmd::Present(a) => a.format,
            Cmd::QuantizeComm(a) => a.format,
            Cmd::HiggsHs(a) => a.format,
            Cmd::Duality(a) => a.format,
            Cmd::FiberCheck(a) => a.format,
        }
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum OnOff {
    On,
    Off,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Classical,
    Quantized,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Classical => Mode::Classical,
            ModeArg::Quantized => Mode::Quantized,
        }
    }
}

fn parse_order(s: &str) -> Result<HalfInt, String> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        if den.trim() != "2" {
            return Err(format!("half-integers are written p/2, got `{s}`"));
        }
        let p: i64 = num
            .trim()
            .parse()
            .map_err(|_| format!("bad half-integer `{s}`"))?;
        Ok(HalfInt::new_halves(p))
    } else {
        let n: i64 = s.parse().map_err(|_| format!("bad integer order `{s}`"))?;
        Ok(HalfInt::from_int(n))
    }
}

#[derive(Args)]
struct MonoHsArgs {
    /// Theory description (inline JSON or @path).
    #[arg(long)]
    theory: String,
    /// Truncation order, integer or p/2.
    #[arg(long, value_parser = parse_order, default_value = "6")]
    order: HalfInt,
    /// Refine by topological (π₁) fugacities.
    #[arg(long, value_enum, default_value_t = OnOff::Off)]
    fugacities: OnOff,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct AlgMulArgs {
    /// Theory description (inline JSON or @path); must be abelian.
    #[arg(long)]
    theory: String,
    /// Sectors to multiply, in order, as a JSON array (e.g. '[[1],[-1]]').
    #[arg(long)]
    sectors: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Classical)]
    mode: ModeArg,
    /// Optional grading shift (rational covector, e.g. '["1/2"]'); when
    /// given, the degree of the product under the shifted grading is also
    /// reported.
    #[arg(long)]
    shift: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct PresentArgs {
    /// Theory description (inline JSON or @path); must be abelian.
    #[arg(long)]
    theory: String,
    /// Degree bound for the relation search, integer or p/2.
    #[arg(long, value_parser = parse_order, default_value = "5")]
    degree: HalfInt,
    /// Generator sectors as a JSON array; defaults to all low-degree
    /// sectors.
    #[arg(long)]
    gens: Option<String>,
    /// Substitute away weights that occur linearly in a relation.
    #[arg(long = "eliminate-w", default_value_t = false)]
    eliminate_w: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct QuantizeCommArgs {
    /// Theory description (inline JSON or @path); must be abelian.
    #[arg(long)]
    theory: String,
    /// Exactly two sectors, as a JSON array (e.g. '[[1],[-1]]').
    #[arg(long)]
    sectors: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct HiggsHsArgs {
    /// Charge covectors, one per hypermultiplet, as a JSON array.
    #[arg(long)]
    charges: String,
    /// Rank of the acting torus; inferred from the covectors when omitted.
    #[arg(long = "gauge-rank")]
    gauge_rank: Option<usize>,
    #[arg(long, value_parser = parse_order, default_value = "6")]
    order: HalfInt,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct DualityArgs {
    /// Torus embedding matrix as JSON rows (e.g. '[[1],[1]]' or @path).
    #[arg(long = "B")]
    b: String,
    #[arg(long, value_parser = parse_order, default_value = "8")]
    order: HalfInt,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct FiberCheckArgs {
    /// Theory description (inline JSON or @path); must be abelian.
    #[arg(long)]
    theory: String,
    /// Base point, rational entries (e.g. '["1","-1/2"]'); a random
    /// generic point is drawn when omitted.
    #[arg(long)]
    w0: Option<String>,
    /// Mass values, rational entries; zero when omitted.
    #[arg(long)]
    m0: Option<String>,
    /// Seed for the random base point.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// External theory description.
#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum TheorySpec {
    Torus {
        rank: usize,
        matter: Vec<Vec<i64>>,
        #[serde(default)]
        flavor: Option<Vec<Vec<i64>>>,
    },
    Quiver {
        vertices: usize,
        edges: Vec<(usize, usize)>,
        v: Vec<usize>,
        w: Vec<usize>,
    },
}

fn read_arg_payload(s: &str) -> Result<String, CliError> {
    if let Some(path) = s.strip_prefix('@') {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read `{path}`: {e}")))
    } else {
        Ok(s.to_string())
    }
}

fn load_theory(s: &str) -> Result<TheorySpec, CliError> {
    let text = read_arg_payload(s)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed theory: {e}")))
}

impl TheorySpec {
    fn to_nonabelian(&self) -> Result<NonabelianTheory, CliError> {
        match self {
            TheorySpec::Torus { .. } => {
                Ok(NonabelianTheory::from_torus(&self.to_torus()?))
            }
            TheorySpec::Quiver {
                vertices,
                edges,
                v,
                w,
            } => {
                let data = QuiverData {
                    vertices: *vertices,
                    edges: edges.clone(),
                    v: v.clone(),
                    w: w.clone(),
                };
                Ok(quiver_to_theory(&data)?)
            }
        }
    }

    fn to_torus(&self) -> Result<TorusTheory, CliError> {
        match self {
            TheorySpec::Torus {
                rank,
                matter,
                flavor,
            } => {
                let t = TorusTheory::new(*rank, matter.clone())?;
                match flavor {
                    Some(f) => Ok(t.with_masses(f.clone())?),
                    None => Ok(t),
                }
            }
            TheorySpec::Quiver { .. } => self.to_nonabelian()?.as_torus().ok_or_else(|| {
                CliError::Usage(
                    "this subcommand needs an abelian theory; the quiver has a nonabelian factor"
                        .into(),
                )
            }),
        }
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, s: &str) -> Result<T, CliError> {
    let text = read_arg_payload(s)?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed {what}: {e}")))
}

/// Rational entries given as JSON strings ("1/2") or integers.
fn parse_rat_list(what: &str, s: &str) -> Result<Vec<Rat>, CliError> {
    let vals: Vec<serde_json::Value> = parse_json(what, s)?;
    let mut out = Vec::with_capacity(vals.len());
    for v in vals {
        let r = match &v {
            serde_json::Value::String(t) => parse_rat(t)?,
            serde_json::Value::Number(n) => match n.as_i64() {
                Some(i) => Rat::from_integer(i.into()),
                None => {
                    return Err(CliError::Usage(format!(
                        "{what}: entry {n} is not an exact integer; write rationals as strings"
                    )))
                }
            },
            other => {
                return Err(CliError::Usage(format!(
                    "{what}: expected integer or rational string, got {other}"
                )))
            }
        };
        out.push(r);
    }
    Ok(out)
}

fn dispatch(cmd: Cmd) -> CliResult {
    match cmd {
        Cmd::MonoHs(a) => mono_hs(a),
        Cmd::AlgMul(a) => alg_mul(a),
        Cmd::Present(a) => present(a),
        Cmd::QuantizeComm(a) => quantize_comm(a),
        Cmd::HiggsHs(a) => higgs_hs(a),
        Cmd::Duality(a) => duality(a),
        Cmd::FiberCheck(a) => fiber_check(a),
    }
}

fn render_series(s: &GradedSeries, format: Format) -> String {
    match format {
        Format::Text => format!("{}\n", s.render()),
        Format::Json => format!("{}\n", s.to_json()),
    }
}

fn mono_hs(a: MonoHsArgs) -> CliResult {
    let theory = load_theory(&a.theory)?.to_nonabelian()?;
    let series = monopole_hilbert_series(&theory, a.order, a.fugacities == OnOff::On)?;
    Ok(render_series(&series, a.format))
}

fn element_json(e: &AlgebraElement) -> serde_json::Value {
    let theory = e.theory();
    let terms: Vec<serde_json::Value> = e
        .terms()
        .map(|(sector, poly)| {
            serde_json::json!({
                "sector": sector.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "poly": poly_json(poly),
            })
        })
        .collect();
    serde_json::json!({
        "vars": theory.var_names(),
        "terms": terms,
    })
}

fn poly_json(p: &Poly) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = p
        .terms()
        .map(|(e, c)| {
            serde_json::json!([
                e.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                c.numer().to_string(),
                c.denom().to_string(),
            ])
        })
        .collect();
    serde_json::Value::Array(terms)
}

fn charge_json(c: &Charge) -> serde_json::Value {
    match c {
        Charge::Pure(v) => {
            serde_json::json!(v.iter().map(|x| x.to_string()).collect::<Vec<_>>())
        }
        Charge::Mixed => serde_json::Value::String("mixed".into()),
    }
}

fn degree_text(d: &DegreeReport) -> String {
    match d {
        DegreeReport::Zero => "zero element".to_string(),
        DegreeReport::Homogeneous(r) => format_rat(r),
        DegreeReport::Inhomogeneous(rs) => format!(
            "inhomogeneous {{{}}}",
            rs.iter().map(format_rat).collect::<Vec<_>>().join(", ")
        ),
    }
}

fn degree_json(d: &DegreeReport) -> serde_json::Value {
    match d {
        DegreeReport::Zero => serde_json::json!({"kind": "zero"}),
        DegreeReport::Homogeneous(r) => {
            serde_json::json!({"kind": "homogeneous", "degree": format_rat(r)})
        }
        DegreeReport::Inhomogeneous(rs) => serde_json::json!({
            "kind": "inhomogeneous",
            "degrees": rs.iter().map(format_rat).collect::<Vec<_>>(),
        }),
    }
}

fn product_of_sectors(
    theory: &TorusTheory,
    sectors: &[Vec<i64>],
    mode: Mode,
) -> Result<AlgebraElement, CliError> {
    let mut acc = AlgebraElement::one(theory);
    for s in sectors {
        let g = monopole_generator(theory, s)?;
        acc = acc.multiply(&g, mode)?;
    }
    Ok(acc)
}

fn alg_mul(a: AlgMulArgs) -> CliResult {
    let theory = load_theory(&a.theory)?.to_torus()?;
    let sectors: Vec<Vec<i64>> = parse_json("sectors", &a.sectors)?;
    if sectors.is_empty() {
        return Err(CliError::Usage("need at least one sector".into()));
    }
    let prod = product_of_sectors(&theory, &sectors, a.mode.into())?;
    let charge = prod.topological_charge();
    let shift_report = match &a.shift {
        None => None,
        Some(s) => {
            let c = parse_rat_list("shift", s)?;
            Some(degree(&prod, &GradingSpec::Shifted(c))?)
        }
    };
    match a.format {
        Format::Text => {
            let mut out = format!("{prod}\n");
            match &charge {
                Charge::Pure(v) => {
                    out.push_str(&format!(
                        "topological charge: [{}]\n",
                        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
                    ));
                }
                Charge::Mixed => out.push_str("topological charge: mixed\n"),
            }
            if let Some(d) = &shift_report {
                out.push_str(&format!("shifted degree: {}\n", degree_text(d)));
            }
            Ok(out)
        }
        Format::Json => {
            let mut obj = serde_json::Map::new();
            obj.insert("product".into(), element_json(&prod));
            obj.insert("topological_charge".into(), charge_json(&charge));
            if let Some(d) = &shift_report {
                obj.insert("shifted_degree".into(), degree_json(d));
            }
            Ok(format!("{}\n", serde_json::Value::Object(obj)))
        }
    }
}

fn present(a: PresentArgs) -> CliResult {
    let theory = load_theory(&a.theory)?.to_torus()?;
    let gens: Option<Vec<Vec<i64>>> = match &a.gens {
        None => None,
        Some(s) => Some(parse_json("gens", s)?),
    };
    let p = find_relations_with(&theory, gens.as_deref(), a.degree, a.eliminate_w)?;
    let report = verify_presentation(&p)?;
    match a.format {
        Format::Text => {
            let mut out = format!("{}\n", p.render());
            if !report.pass() {
                out.push_str("verification FAILED\n");
            }
            Ok(out)
        }
        Format::Json => {
            let mut v = p.to_json();
            if let serde_json::Value::Object(map) = &mut v {
                map.insert("verified".into(), serde_json::json!(report.pass()));
            }
            Ok(format!("{v}\n"))
        }
    }
}

fn quantize_comm(a: QuantizeCommArgs) -> CliResult {
    let theory = load_theory(&a.theory)?.to_torus()?;
    let sectors: Vec<Vec<i64>> = parse_json("sectors", &a.sectors)?;
    if sectors.len() != 2 {
        return Err(CliError::Usage(format!(
            "need exactly two sectors, got {}",
            sectors.len()
        )));
    }
    let x = monopole_generator(&theory, &sectors[0])?;
    let y = monopole_generator(&theory, &sectors[1])?;
    let xy = x.multiply(&y, Mode::Quantized)?;
    let yx = y.multiply(&x, Mode::Quantized)?;
    let comm = xy.sub(&yx)?;
    match a.format {
        Format::Text => Ok(format!("{comm}\n")),
        Format::Json => Ok(format!("{}\n", element_json(&comm))),
    }
}

fn higgs_hs(a: HiggsHsArgs) -> CliResult {
    let charges: Vec<Vec<i64>> = parse_json("charges", &a.charges)?;
    let rank = match a.gauge_rank {
        Some(r) => r,
        None => charges.first().map_or(0, |c| c.len()),
    };
    let input = HiggsInput::new(rank, charges)?;
    let series = higgs_hilbert_series(&input, a.order)?;
    if let Some(bad) = molien_selfcheck(&input, a.order)? {
        eprintln!(
            "warning: Molien count disagrees with the brute-force invariant count at q^({bad}); \
             this input is outside the naive formula's warranty"
        );
    }
    Ok(render_series(&series, a.format))
}

fn duality(a: DualityArgs) -> CliResult {
    let rows: Vec<Vec<i64>> = parse_json("B", &a.b)?;
    let b = IntMatrix::from_rows(&rows)?;
    let report = duality_check(&b, a.order)?;
    match a.format {
        Format::Text => {
            let mut out = format!(
                "status: {}\norder checked: {}\n",
                if report.equal { "equal" } else { "mismatch" },
                report.order_checked
            );
            if let Some(d) = report.first_mismatch {
                out.push_str(&format!(
                    "first mismatch at q^({d}): coulomb {} vs higgs {}\n",
                    format_rat(&report.coulomb.coefficient(d.halves(), &[])),
                    format_rat(&report.higgs.coefficient(d.halves(), &[])),
                ));
            }
            if let Some(w) = report.higgs_selfcheck_disagrees_at {
                out.push_str(&format!("higgs selfcheck disagrees at q^({w})\n"));
            }
            Ok(out)
        }
        Format::Json => Ok(format!("{}\n", report.to_json())),
    }
}

/// Small deterministic generator for fiber base points (no dependency on a
/// full RNG crate for this one use).
struct SplitMix(u64);

impl SplitMix {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn small_nonzero(&mut self) -> i64 {
        let v = (self.next() % 19) as i64 - 9; // [-9, 9]
        if v == 0 {
            7
        } else {
            v
        }
    }
}

fn fiber_check(a: FiberCheckArgs) -> CliResult {
    let theory = load_theory(&a.theory)?.to_torus()?;
    let m0 = match &a.m0 {
        Some(s) => parse_rat_list("m0", s)?,
        None => vec![Rat::from_integer(0.into()); theory.mass_count()],
    };
    let report = match &a.w0 {
        Some(s) => {
            let w0 = parse_rat_list("w0", s)?;
            generic_fiber_witness(&theory, &w0, &m0)?
        }
        None => {
            // Draw seeded points until one is generic; a fixed number of
            // tries is plenty for any theory with finitely many matter
            // hyperplanes, unless a hyperplane is identically zero.
            let mut rng = SplitMix(a.seed.wrapping_mul(2).wrapping_add(1));
            let mut last_err: Option<Error> = None;
            let mut found = None;
            for _ in 0..64 {
                let w0: Vec<Rat> = (0..theory.rank())
                    .map(|_| Rat::from_integer(rng.small_nonzero().into()))
                    .collect();
                match generic_fiber_witness(&theory, &w0, &m0) {
                    Ok(r) => {
                        found = Some(r);
                        break;
                    }
                    Err(e @ Error::NonGeneric { .. }) => last_err = Some(e),
                    Err(e) => return Err(e.into()),
                }
            }
            match found {
                Some(r) => r,
                None => return Err(last_err.expect("either a report or an error").into()),
            }
        }
    };
    let fmt_list = |v: &[Rat]| {
        v.iter()
            .map(format_rat)
            .collect::<Vec<_>>()
            .join(", ")
    };
    match a.format {
        Format::Text => {
            let mut out = format!("w0: [{}]\n", fmt_list(&report.w0));
            if !report.m0.is_empty() {
                out.push_str(&format!("m0: [{}]\n", fmt_list(&report.m0)));
            }
            out.push_str(&format!("witnesses: [{}]\n", fmt_list(&report.witnesses)));
            Ok(out)
        }
        Format::Json => {
            let to_strs =
                |v: &[Rat]| v.iter().map(format_rat).collect::<Vec<String>>();
            Ok(format!(
                "{}\n",
                serde_json::json!({
                    "w0": to_strs(&report.w0),
                    "m0": to_strs(&report.m0),
                    "witnesses": to_strs(&report.witnesses),
                })
            ))
        }
    }
}
