//! Finite presentations of the Coulomb-branch coordinate ring.
//!
//! The ring carries the half-integer grading by Δ, and each graded piece is
//! finite dimensional, so relations among a chosen set of generators can be
//! extracted degree by degree.  Since a product of monopole generators
//! always stays in one sector, each degree slice splits into small blocks
//! indexed by total sector; within a block, monomials divisible by the
//! leading term of a known relation rewrite into lex-smaller monomials and
//! are skipped, and the kernel of what remains (expanded in the `w^α X_λ`
//! basis) consists precisely of the new, already-reduced relations.
//! Everything is exact rational arithmetic; nothing here is numerical.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::algebra::{monopole_generator, AlgebraElement, Mode};
use crate::linalg::{rank as mat_rank, right_kernel, RowSpace};
use crate::poly::Poly;
use crate::rat::{format_rat, rational_kth_root, HalfInt, Rat};
use crate::theory::TorusTheory;
use crate::{Error, Result};

/// Monomial basis of the coordinate ring truncated at `order`: all pairs
/// `(alpha, lambda)` of a w-exponent and a sector with
/// Δ(λ) + |α| ≤ order.  The list is complete and deterministically ordered
/// (sectors lexicographically, then exponents lexicographically).
pub fn graded_basis(theory: &TorusTheory, order: HalfInt) -> Result<Vec<(Vec<u16>, Vec<i64>)>> {
    if theory.mass_count() != 0 {
        return Err(Error::InvalidInput(
            "graded basis requires a theory without background masses".into(),
        ));
    }
    theory.check_positivity()?;
    if order.halves() < 0 {
        return Ok(Vec::new());
    }
    let n = theory.rank();
    let mut out = Vec::new();
    for lam in theory.enumerate_sectors(order)? {
        let dh = theory.delta_dimension(&lam)?.halves();
        // each w factor adds a whole unit of degree
        let budget = ((order.halves() - dh) / 2) as u32;
        for alpha in exponents_up_to(n, budget) {
            out.push((alpha, lam.clone()));
        }
    }
    Ok(out)
}

/// All exponent vectors of length `n` with total ≤ `cap`, lexicographic.
fn exponents_up_to(n: usize, cap: u32) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; n];
    rec_exponents(n, cap, 0, &mut cur, &mut out);
    out
}

fn rec_exponents(n: usize, left: u32, pos: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
    if pos == n {
        out.push(cur.clone());
        return;
    }
    for v in 0..=left {
        cur[pos] = v as u16;
        rec_exponents(n, left - v, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// What a presentation variable stands for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorKind {
    /// The equivariant weight w_j (0-based gauge index).
    Weight(usize),
    /// The monopole generator X_γ.
    Monopole(Vec<i64>),
}

/// One presentation variable.  The variable equals `scale` times the
/// canonical ring element named by `kind`; scales are introduced only by
/// the unit-clearing pass that makes binomial relations monic on both ends.
#[derive(Debug, Clone)]
pub struct Generator {
    pub name: String,
    pub kind: GeneratorKind,
    pub degree: HalfInt,
    pub scale: Rat,
}

/// A generators-and-relations description of the ring, valid up to
/// `degree_bound`.  Relation polynomials use one variable per entry of
/// `generators`, in the same order (monopole variables first, then
/// weights); each relation is Δ-homogeneous, reduced, and monic in its
/// leading monomial under the lexicographic order on that variable list.
#[derive(Debug, Clone)]
pub struct Presentation {
    theory: TorusTheory,
    pub generators: Vec<Generator>,
    pub relations: Vec<Poly>,
    pub degree_bound: HalfInt,
}

/// Default generating set: every sector γ ≠ 0 with Δ(γ) ≤ max_j Δ(e_j),
/// together with ±e_j themselves.
pub fn default_generators(theory: &TorusTheory) -> Result<Vec<Vec<i64>>> {
    theory.check_positivity()?;
    let n = theory.rank();
    let mut cap = HalfInt::new_halves(0);
    let mut set = BTreeSet::new();
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = 1;
        cap = cap.max(theory.delta_dimension(&e)?);
        set.insert(e.clone());
        e[j] = -1;
        set.insert(e);
    }
    for lam in theory.enumerate_sectors(cap)? {
        if lam.iter().any(|&x| x != 0) {
            set.insert(lam);
        }
    }
    // Order: lower degree first; within a degree, positive sectors before
    // their negatives (x1, y1, x2, ... rather than raw lexicographic).
    let mut out: Vec<Vec<i64>> = set.into_iter().collect();
    let mut keyed: Vec<(i64, Vec<i64>, Vec<i64>)> = Vec::new();
    for g in out.drain(..) {
        let d = theory.delta_dimension(&g)?.halves();
        let abs: Vec<i64> = g.iter().map(|x| x.abs()).collect();
        keyed.push((d, abs, g));
    }
    keyed.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then(b.1.cmp(&a.1))
            .then(b.2.cmp(&a.2))
    });
    Ok(keyed.into_iter().map(|(_, _, g)| g).collect())
}

/// Find all relations among the generators up to `degree_bound`, with the
/// default options (weights kept as generators).
pub fn find_relations(
    theory: &TorusTheory,
    gens: Option<&[Vec<i64>]>,
    degree_bound: HalfInt,
) -> Result<Presentation> {
    find_relations_with(theory, gens, degree_bound, false)
}

/// As [`find_relations`], but when `eliminate_w` is set, every weight that
/// appears isolated and linear in some relation is substituted away and
/// dropped from the generator list (e.g. `w = x*y` turns the hypersurface
/// picture of a product of punctured planes into a free polynomial ring).
pub fn find_relations_with(
    theory: &TorusTheory,
    gens: Option<&[Vec<i64>]>,
    degree_bound: HalfInt,
    eliminate_w: bool,
) -> Result<Presentation> {
    if theory.mass_count() != 0 {
        return Err(Error::InvalidInput(
            "presentations require a theory without background masses".into(),
        ));
    }
    theory.check_positivity()?;
    let n = theory.rank();

    // Generator sectors: explicit list (validated, deduplicated, order
    // preserved) or the default set.
    let sectors: Vec<Vec<i64>> = match gens {
        Some(list) => {
            let mut seen = BTreeSet::new();
            let mut v = Vec::new();
            for g in list {
                if g.len() != n {
                    return Err(Error::Shape(format!(
                        "generator sector has {} entries, expected rank {}",
                        g.len(),
                        n
                    )));
                }
                if g.iter().all(|&x| x == 0) {
                    return Err(Error::InvalidInput(
                        "the trivial sector cannot be a generator".into(),
                    ));
                }
                if seen.insert(g.clone()) {
                    v.push(g.clone());
                }
            }
            v
        }
        None => default_generators(theory)?,
    };

    let k = sectors.len();
    let nv = k + n;
    let mut generators = Vec::with_capacity(nv);
    for gamma in &sectors {
        generators.push(Generator {
            name: sector_name(n, gamma),
            kind: GeneratorKind::Monopole(gamma.clone()),
            degree: theory.delta_dimension(gamma)?,
            scale: Rat::one(),
        });
    }
    for j in 0..n {
        generators.push(Generator {
            name: if n == 1 { "w".into() } else { format!("w{}", j + 1) },
            kind: GeneratorKind::Weight(j),
            degree: HalfInt::new_halves(2),
            scale: Rat::one(),
        });
    }
    let degrees_h: Vec<i64> = generators.iter().map(|g| g.degree.halves()).collect();

    // Truncated basis, grouped into (degree, sector) blocks for the gap
    // check at the end.
    let basis = graded_basis(theory, degree_bound)?;
    let mut basis_blocks: BTreeMap<(i64, Vec<i64>), Vec<Vec<u16>>> = BTreeMap::new();
    for (alpha, lam) in &basis {
        let d = theory.delta_dimension(lam)?.halves()
            + 2 * alpha.iter().map(|&a| a as i64).sum::<i64>();
        basis_blocks
            .entry((d, lam.clone()))
            .or_default()
            .push(alpha.clone());
    }

    // Generator monomials bucketed by exact weighted degree (in halves),
    // then split by total sector.  A product of monopole generators always
    // lands in the single sector Σ exponents·γ, so each degree slice is
    // block-diagonal over sectors and the blocks stay small even when the
    // slice as a whole is huge.
    let mut by_degree: BTreeMap<i64, Vec<Vec<u16>>> = BTreeMap::new();
    let mut cur = vec![0u16; nv];
    bucket_monomials(
        &degrees_h,
        degree_bound.halves(),
        0,
        0,
        &mut cur,
        &mut by_degree,
    );
    let mut blocks: BTreeMap<(i64, Vec<i64>), Vec<Vec<u16>>> = BTreeMap::new();
    for (deg, monos) in by_degree {
        for m in monos {
            let mut s = vec![0i64; n];
            for (i, gamma) in sectors.iter().enumerate() {
                if m[i] != 0 {
                    for (sj, &gj) in s.iter_mut().zip(gamma) {
                        *sj += i64::from(m[i]) * gj;
                    }
                }
            }
            blocks.entry((deg, s)).or_default().push(m);
        }
    }
    for block in blocks.values_mut() {
        block.sort();
        block.reverse(); // leading (lex-largest) monomial first
    }

    // Expand monomials into the w^α X_λ basis, reusing smaller monomials.
    let mut expansion: BTreeMap<Vec<u16>, AlgebraElement> = BTreeMap::new();
    expansion.insert(vec![0u16; nv], AlgebraElement::one(theory));
    let gen_elems: Vec<AlgebraElement> = {
        let mut v = Vec::with_capacity(nv);
        for gamma in &sectors {
            v.push(monopole_generator(theory, gamma)?);
        }
        for j in 0..n {
            let p = Poly::var(theory.nvars(), theory.w_var(j));
            v.push(AlgebraElement::from_term(theory, vec![0i64; n], p)?);
        }
        v
    };

    let mut relations: Vec<(i64, Poly)> = Vec::new();
    let mut leads: Vec<Vec<u16>> = Vec::new();
    let mut missed: Vec<(Vec<u16>, Vec<i64>)> = Vec::new();

    for ((deg, sector), block) in &blocks {
        // A monomial divisible by the leading term of a known relation
        // rewrites, through that relation, into lex-smaller monomials of
        // this same block.  Such monomials add nothing to the image and
        // their kernel vectors are consequences, so only the reduced
        // (staircase) monomials need expanding.  This also keeps every
        // emitted relation reduced automatically.
        let staircase: Vec<&Vec<u16>> = block
            .iter()
            .filter(|m| !leads.iter().any(|l| divides(l, m)))
            .collect();

        // Columns of this block: w-exponents α with Δ(sector) + |α| = deg.
        let dh = theory.delta_dimension(sector)?.halves();
        debug_assert!(*deg >= dh && (deg - dh) % 2 == 0);
        let cols = exponents_exact(n, ((deg - dh) / 2) as u32);
        let col_pos: BTreeMap<&Vec<u16>, usize> =
            cols.iter().enumerate().map(|(i, c)| (c, i)).collect();

        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(staircase.len());
        for m in &staircase {
            ensure_expanded(m, &mut expansion, &gen_elems)?;
            let elem = &expansion[*m];
            let mut row = vec![Rat::zero(); cols.len()];
            for (lam, p) in elem.terms() {
                debug_assert_eq!(lam, sector);
                for (e, c) in p.terms() {
                    debug_assert!(e[theory.hbar_var()] == 0);
                    let alpha: Vec<u16> = (0..n).map(|j| e[theory.w_var(j)]).collect();
                    row[col_pos[&alpha]] = c.clone();
                }
            }
            rows.push(row);
        }

        // Surjectivity of this block: the monomial images must span it.
        if mat_rank(&rows) < cols.len() {
            let mut span = RowSpace::new();
            for r in &rows {
                span.insert(r);
            }
            for (i, alpha) in cols.iter().enumerate() {
                let mut unit = vec![Rat::zero(); cols.len()];
                unit[i] = Rat::one();
                if !span.contains(&unit) {
                    missed.push((alpha.clone(), sector.clone()));
                }
            }
        }

        // Kernel vectors over the staircase monomials are exactly the new
        // relations.
        let transpose: Vec<Vec<Rat>> = (0..cols.len())
            .map(|c| rows.iter().map(|r| r[c].clone()).collect())
            .collect();
        let mut span = RowSpace::new();
        for v in right_kernel(&transpose) {
            if let Some(red) = span.insert(&v) {
                let poly = Poly::from_terms(
                    nv,
                    red.iter()
                        .zip(&staircase)
                        .filter(|(c, _)| !c.is_zero())
                        .map(|(c, m)| ((*m).clone(), c.clone())),
                );
                let lead = poly
                    .terms()
                    .last()
                    .map(|(e, _)| e.clone())
                    .expect("nonzero relation");
                leads.push(lead);
                relations.push((*deg, poly));
            }
        }
    }

    // Basis blocks that no generator monomial reaches at all (the block
    // loop above never sees them) are missed wholesale.
    for ((deg, lam), alphas) in &basis_blocks {
        if !blocks.contains_key(&(*deg, lam.clone())) {
            for alpha in alphas {
                missed.push((alpha.clone(), lam.clone()));
            }
        }
    }
    if !missed.is_empty() {
        missed.sort();
        return Err(Error::IncompleteGenerators { missed });
    }

    let mut relations: Vec<Poly> = relations.into_iter().map(|(_, p)| p).collect();
    rescale_binomials(&mut generators, &mut relations);
    if eliminate_w {
        eliminate_weights(&mut generators, &mut relations, k, n);
    }

    Ok(Presentation {
        theory: theory.clone(),
        generators,
        relations,
        degree_bound,
    })
}

/// Componentwise divisibility of exponent vectors.
fn divides(l: &[u16], m: &[u16]) -> bool {
    l.iter().zip(m).all(|(&a, &b)| a <= b)
}

/// All exponent vectors of length `n` with total exactly `k`, lexicographic.
fn exponents_exact(n: usize, k: u32) -> Vec<Vec<u16>> {
    exponents_up_to(n, k)
        .into_iter()
        .filter(|e| e.iter().map(|&x| u32::from(x)).sum::<u32>() == k)
        .collect()
}

/// Make sure `m`'s expansion is cached, multiplying up from the nearest
/// cached divisor one variable at a time.  Staircase monomials have
/// staircase divisors, so the cache never holds anything that was pruned.
fn ensure_expanded(
    m: &[u16],
    expansion: &mut BTreeMap<Vec<u16>, AlgebraElement>,
    gen_elems: &[AlgebraElement],
) -> Result<()> {
    let mut chain: Vec<(usize, Vec<u16>)> = Vec::new();
    let mut cur = m.to_vec();
    while !expansion.contains_key(&cur) {
        let i = cur.iter().position(|&e| e > 0).expect("constant is cached");
        let parent = cur.clone();
        cur[i] -= 1;
        chain.push((i, parent));
    }
    while let Some((i, parent)) = chain.pop() {
        let mut base_key = parent.clone();
        base_key[i] -= 1;
        let prod = expansion[&base_key].multiply(&gen_elems[i], Mode::Classical)?;
        expansion.insert(parent, prod);
    }
    Ok(())
}

fn bucket_monomials(
    degrees_h: &[i64],
    cap_h: i64,
    pos: usize,
    used: i64,
    cur: &mut Vec<u16>,
    out: &mut BTreeMap<i64, Vec<Vec<u16>>>,
) {
    if pos == degrees_h.len() {
        out.entry(used).or_default().push(cur.clone());
        return;
    }
    let step = degrees_h[pos];
    let max = (cap_h - used) / step;
    for v in 0..=max {
        cur[pos] = v as u16;
        bucket_monomials(degrees_h, cap_h, pos + 1, used + v * step, cur, out);
    }
    cur[pos] = 0;
}

fn sector_name(n: usize, gamma: &[i64]) -> String {
    for j in 0..n {
        let mut e = vec![0i64; n];
        e[j] = 1;
        if gamma == e.as_slice() {
            return if n == 1 { "x".into() } else { format!("x{}", j + 1) };
        }
        e[j] = -1;
        if gamma == e.as_slice() {
            return if n == 1 { "y".into() } else { format!("y{}", j + 1) };
        }
    }
    let body: Vec<String> = gamma.iter().map(|c| c.to_string()).collect();
    format!("X[{}]", body.join(","))
}

/// Clear the unit in two-term relations `M1 - c*g^N` by rescaling the
/// generator `g` when |c| has an exact rational N-th root.  The root is
/// recorded in `Generator::scale` and all relations are rewritten in the
/// rescaled variable and made monic again.
fn rescale_binomials(generators: &mut [Generator], relations: &mut [Poly]) {
    for i in 0..relations.len() {
        let (trail_exp, trail_coeff) = {
            let terms: Vec<_> = relations[i].terms().collect();
            if terms.len() != 2 {
                continue;
            }
            // BTreeMap iteration is ascending, so the first term is the
            // trailing monomial and the last is the leading one.
            (terms[0].0.clone(), terms[0].1.clone())
        };
        let support: Vec<usize> = trail_exp
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(j, _)| j)
            .collect();
        if support.len() != 1 {
            continue;
        }
        let g = support[0];
        let power = trail_exp[g] as u32;
        let abs = trail_coeff.abs();
        if abs.is_one() || !generators[g].scale.is_one() {
            continue;
        }
        let Some(root) = rational_kth_root(&abs, power) else {
            continue;
        };
        generators[g].scale = root.clone();
        // Substitute g -> g/root in every relation, then re-normalize.
        for rel in relations.iter_mut() {
            let rescaled = Poly::from_terms(
                rel.nvars(),
                rel.terms().map(|(e, c)| {
                    let mut pw = Rat::one();
                    for _ in 0..e[g] {
                        pw /= root.clone();
                    }
                    (e.clone(), c * pw)
                }),
            );
            *rel = make_monic(rescaled);
        }
    }
}

/// Divide by the leading (lexicographically largest) coefficient.
fn make_monic(p: Poly) -> Poly {
    match p.terms().last() {
        None => p,
        Some((_, c)) => {
            let inv = Rat::one() / c.clone();
            p.scale(&inv)
        }
    }
}

/// Substitute away weight variables that occur isolated and linear in some
/// relation, dropping both the variable and the used relation.
fn eliminate_weights(
    generators: &mut Vec<Generator>,
    relations: &mut Vec<Poly>,
    k: usize,
    n: usize,
) {
    let nv = k + n;
    let mut dropped = vec![false; nv];
    for v in k..nv {
        // Find a relation where variable v appears only as the pure linear
        // monomial x_v (no other term contains v).
        let found = relations.iter().position(|rel| {
            let mut pure = false;
            for (e, _) in rel.terms() {
                if e[v] == 0 {
                    continue;
                }
                let is_pure = e[v] == 1 && e.iter().enumerate().all(|(j, &x)| j == v || x == 0);
                if !is_pure {
                    return false;
                }
                pure = true;
            }
            pure
        });
        let Some(ri) = found else { continue };
        let rel = relations.remove(ri);
        let mut unit = vec![0u16; nv];
        unit[v] = 1;
        let c = rel.terms().find(|(e, _)| **e == unit).unwrap().1.clone();
        // v = -(rest)/c
        let rest = rel.sub(&Poly::from_terms(nv, [(unit, c.clone())]));
        let repl = rest.scale(&(-Rat::one() / c));
        for r in relations.iter_mut() {
            *r = make_monic(r.subst_poly(v, &repl));
        }
        relations.retain(|r| !r.is_zero());
        dropped[v] = true;
    }
    if !dropped.iter().any(|&d| d) {
        return;
    }
    // Compact the variable space.
    let keep: Vec<usize> = (0..nv).filter(|&v| !dropped[v]).collect();
    let mut new_gens = Vec::with_capacity(keep.len());
    for &v in &keep {
        new_gens.push(generators[v].clone());
    }
    *generators = new_gens;
    for r in relations.iter_mut() {
        *r = Poly::from_terms(
            keep.len(),
            r.terms().map(|(e, c)| {
                debug_assert!((0..nv).all(|v| !dropped[v] || e[v] == 0));
                (keep.iter().map(|&v| e[v]).collect::<Vec<u16>>(), c.clone())
            }),
        );
    }
}

impl Presentation {
    pub fn theory(&self) -> &TorusTheory {
        &self.theory
    }

    /// Names in display order: weights first, then monopole generators.
    fn display_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .generators
            .iter()
            .filter(|g| matches!(g.kind, GeneratorKind::Weight(_)))
            .map(|g| g.name.clone())
            .collect();
        names.extend(
            self.generators
                .iter()
                .filter(|g| matches!(g.kind, GeneratorKind::Monopole(_)))
                .map(|g| g.name.clone()),
        );
        names
    }

    /// Human-readable one-line form, e.g. `ring C[w, x, y] / (x*y - w)`.
    pub fn render(&self) -> String {
        let names = self.display_names();
        let head = if names.is_empty() {
            "ring C".to_string()
        } else {
            format!("ring C[{}]", names.join(", "))
        };
        if self.relations.is_empty() {
            return head;
        }
        let gen_names: Vec<String> = self.generators.iter().map(|g| g.name.clone()).collect();
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| format_relation(r, &gen_names))
            .collect();
        format!("{} / ({})", head, rels.join(", "))
    }

    /// Exact machine form.  All numbers are strings.
    pub fn to_json(&self) -> serde_json::Value {
        let gens: Vec<serde_json::Value> = self
            .generators
            .iter()
            .map(|g| {
                let kind = match &g.kind {
                    GeneratorKind::Weight(j) => serde_json::json!({
                        "weight": j.to_string(),
                    }),
                    GeneratorKind::Monopole(s) => serde_json::json!({
                        "monopole": s.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    }),
                };
                serde_json::json!({
                    "name": g.name,
                    "kind": kind,
                    "degree": g.degree.to_string(),
                    "scale": format_rat(&g.scale),
                })
            })
            .collect();
        let rels: Vec<serde_json::Value> = self
            .relations
            .iter()
            .map(|r| {
                let mut terms: Vec<_> = r.terms().collect();
                terms.reverse(); // leading monomial first
                let parts: Vec<serde_json::Value> = terms
                    .into_iter()
                    .map(|(e, c)| {
                        serde_json::json!({
                            "coeff": format_rat(c),
                            "exponents": e.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                serde_json::Value::Array(parts)
            })
            .collect();
        serde_json::json!({
            "generators": gens,
            "relations": rels,
            "degree_bound": self.degree_bound.to_string(),
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Format a relation with the leading monomial first (descending
/// lexicographic order on the presentation variables).
fn format_relation(p: &Poly, names: &[String]) -> String {
    let mut terms: Vec<(&Vec<u16>, &Rat)> = p.terms().collect();
    terms.reverse();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (e, c)) in terms.iter().enumerate() {
        let mut mon = String::new();
        for (j, &ex) in e.iter().enumerate() {
            if ex == 0 {
                continue;
            }
            if !mon.is_empty() {
                mon.push('*');
            }
            mon.push_str(&names[j]);
            if ex > 1 {
                mon.push_str(&format!("^{}", ex));
            }
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mon.is_empty() {
            out.push_str(&format_rat(&abs));
        } else {
            if !abs.is_one() {
                out.push_str(&format_rat(&abs));
                out.push('*');
            }
            out.push_str(&mon);
        }
    }
    out
}

/// Outcome of re-checking a presentation against the ring itself.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    /// Relation indices that fail to vanish when evaluated on the actual
    /// (scaled) generators.  Empty means every relation holds exactly.
    pub failed_relations: Vec<usize>,
    /// Degrees where the staircase count (monomials not divisible by any
    /// relation's leading monomial) disagrees with the graded basis, as
    /// (degree, staircase count, basis count).
    pub dimension_mismatches: Vec<(HalfInt, usize, usize)>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.failed_relations.is_empty() && self.dimension_mismatches.is_empty()
    }
}

/// Independently re-check a presentation: evaluate every relation on the
/// actual generators (exact multiplication in the monopole basis) and
/// recount graded dimensions of the presented ring against [`graded_basis`].
pub fn verify_presentation(p: &Presentation) -> Result<VerifyReport> {
    let theory = &p.theory;
    let n = theory.rank();
    let nv = p.generators.len();

    // The ring elements the presentation variables stand for.
    let mut elems = Vec::with_capacity(nv);
    for g in &p.generators {
        let base = match &g.kind {
            GeneratorKind::Monopole(s) => monopole_generator(theory, s)?,
            GeneratorKind::Weight(j) => {
                let poly = Poly::var(theory.nvars(), theory.w_var(*j));
                AlgebraElement::from_term(theory, vec![0i64; n], poly)?
            }
        };
        elems.push(base.scale(&g.scale));
    }

    let mut failed_relations = Vec::new();
    for (ri, rel) in p.relations.iter().enumerate() {
        let mut acc = AlgebraElement::zero(theory);
        for (e, c) in rel.terms() {
            let mut term = AlgebraElement::one(theory).scale(c);
            for (j, &ex) in e.iter().enumerate() {
                for _ in 0..ex {
                    term = term.multiply(&elems[j], Mode::Classical)?;
                }
            }
            acc = acc.add(&term)?;
        }
        if !acc.is_zero() {
            failed_relations.push(ri);
        }
    }

    // Staircase recount: monomials below the degree bound that are not
    // divisible by any relation's leading monomial, versus the basis.
    let degrees_h: Vec<i64> = p.generators.iter().map(|g| g.degree.halves()).collect();
    let mut by_degree: BTreeMap<i64, Vec<Vec<u16>>> = BTreeMap::new();
    let mut cur = vec![0u16; nv];
    bucket_monomials(
        &degrees_h,
        p.degree_bound.halves(),
        0,
        0,
        &mut cur,
        &mut by_degree,
    );
    let leads: Vec<Vec<u16>> = p
        .relations
        .iter()
        .filter_map(|r| r.terms().last().map(|(e, _)| e.clone()))
        .collect();
    let mut staircase: BTreeMap<i64, usize> = BTreeMap::new();
    for (&d, bucket) in &by_degree {
        let count = bucket
            .iter()
            .filter(|m| {
                !leads
                    .iter()
                    .any(|l| l.iter().zip(m.iter()).all(|(&a, &b)| b >= a))
            })
            .count();
        staircase.insert(d, count);
    }
    let mut basis_count: BTreeMap<i64, usize> = BTreeMap::new();
    for (alpha, lam) in graded_basis(theory, p.degree_bound)? {
        let d = theory.delta_dimension(&lam)?.halves()
            + 2 * alpha.iter().map(|&a| a as i64).sum::<i64>();
        *basis_count.entry(d).or_insert(0) += 1;
    }
    let mut dimension_mismatches = Vec::new();
    let all_degrees: BTreeSet<i64> = staircase.keys().chain(basis_count.keys()).copied().collect();
    for d in all_degrees {
        let s = staircase.get(&d).copied().unwrap_or(0);
        let b = basis_count.get(&d).copied().unwrap_or(0);
        if s != b {
            dimension_mismatches.push((HalfInt::new_halves(d), s, b));
        }
    }

    Ok(VerifyReport {
        failed_relations,
        dimension_mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio};

    fn u1_with_charge(c: i64) -> TorusTheory {
        TorusTheory::new(1, vec![vec![c]]).unwrap()
    }

    #[test]
    fn graded_basis_u1_one_flavor_small() {
        let t = u1_with_charge(1);
        // order 1/2: sectors 0, ±1; only α = 0 fits beside the constant.
        let basis = graded_basis(&t, HalfInt::new_halves(1)).unwrap();
        assert_eq!(
            basis,
            vec![
                (vec![0], vec![-1]),
                (vec![0], vec![0]),
                (vec![0], vec![1]),
            ]
        );
        // order 1: sectors ±2 come into range and sector 0 admits α = 1.
        let basis = graded_basis(&t, HalfInt::new_halves(2)).unwrap();
        assert_eq!(basis.len(), 6);
        assert!(basis.contains(&(vec![1], vec![0])));
        assert!(basis.contains(&(vec![0], vec![2])));
    }

    #[test]
    fn graded_basis_counts_match_hilbert_coefficients() {
        // U(1) with two flavors: dim of degree-k piece is 2k+1.
        let t = TorusTheory::new(1, vec![vec![1], vec![1]]).unwrap();
        let basis = graded_basis(&t, HalfInt::new_halves(8)).unwrap();
        let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
        for (alpha, lam) in &basis {
            let d = t.delta_dimension(lam).unwrap().halves()
                + 2 * alpha.iter().map(|&a| a as i64).sum::<i64>();
            *counts.entry(d).or_insert(0) += 1;
        }
        for k in 0..=4 {
            assert_eq!(counts[&(2 * k)], (2 * k + 1) as usize, "degree {}", k);
        }
        assert!(!counts.contains_key(&1), "no half-integer degrees here");
    }

    #[test]
    fn graded_basis_rejects_nonpositive_theory() {
        let t = TorusTheory::new(1, vec![]).unwrap();
        match graded_basis(&t, HalfInt::new_halves(4)) {
            Err(Error::Divergence { witness }) => assert_eq!(witness, vec![1]),
            other => panic!("expected divergence, got {:?}", other),
        }
    }

    #[test]
    fn u1_one_flavor_presents_as_xy_minus_w() {
        let t = u1_with_charge(1);
        let gens = vec![vec![1], vec![-1]];
        let p = find_relations(&t, Some(&gens), HalfInt::new_halves(6)).unwrap();
        assert_eq!(p.generators.len(), 3);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.render(), "ring C[w, x, y] / (x*y - w)");
        assert!(p.generators.iter().all(|g| g.scale.is_one()));
        let report = verify_presentation(&p).unwrap();
        assert!(report.pass(), "report: {:?}", report);
    }

    #[test]
    fn charge_n_presents_as_kleinian_singularity() {
        // U(1) with one charge-N flavor: x*y = N^N w^N canonically; the
        // rescaling pass absorbs N^N into w, leaving x*y - w^N.
        for nn in 2..=4u32 {
            let t = u1_with_charge(nn as i64);
            let gens = vec![vec![1], vec![-1]];
            let bound = HalfInt::new_halves(2 * nn as i64);
            let p = find_relations(&t, Some(&gens), bound).unwrap();
            assert_eq!(p.relations.len(), 1, "N = {}", nn);
            let expected = format!("ring C[w, x, y] / (x*y - w^{})", nn);
            assert_eq!(p.render(), expected, "N = {}", nn);
            // w was rescaled by N, x and y untouched.
            let w = p
                .generators
                .iter()
                .find(|g| matches!(g.kind, GeneratorKind::Weight(_)))
                .unwrap();
            assert_eq!(w.scale, rat(nn as i64));
            let report = verify_presentation(&p).unwrap();
            assert!(report.pass(), "N = {}: {:?}", nn, report);
        }
    }

    #[test]
    fn torus_product_eliminates_to_free_ring() {
        // (C*)^d from d unit charges: after w-elimination the presentation
        // is a free polynomial ring on 2d monopole generators.
        for d in 1..=3usize {
            let matter: Vec<Vec<i64>> = (0..d)
                .map(|j| {
                    let mut r = vec![0i64; d];
                    r[j] = 1;
                    r
                })
                .collect();
            let t = TorusTheory::new(d, matter).unwrap();
            let mut gens = Vec::new();
            for j in 0..d {
                let mut e = vec![0i64; d];
                e[j] = 1;
                gens.push(e.clone());
                e[j] = -1;
                gens.push(e);
            }
            let p =
                find_relations_with(&t, Some(&gens), HalfInt::new_halves(4), true).unwrap();
            assert_eq!(p.generators.len(), 2 * d, "d = {}", d);
            assert!(p.relations.is_empty(), "d = {}: {:?}", d, p.relations);
            assert!(p
                .generators
                .iter()
                .all(|g| matches!(g.kind, GeneratorKind::Monopole(_))));
            let report = verify_presentation(&p).unwrap();
            assert!(report.pass(), "d = {}: {:?}", d, report);
        }
    }

    #[test]
    fn without_elimination_torus_keeps_hypersurface_relations() {
        let t = TorusTheory::new(1, vec![vec![1]]).unwrap();
        let p = find_relations_with(
            &t,
            Some(&[vec![1], vec![-1]]),
            HalfInt::new_halves(4),
            false,
        )
        .unwrap();
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.render(), "ring C[w, x, y] / (x*y - w)");
    }

    #[test]
    fn incomplete_generator_set_is_reported() {
        // Only the positive generator: every negative sector is missed.
        let t = u1_with_charge(1);
        match find_relations(&t, Some(&[vec![1]]), HalfInt::new_halves(2)) {
            Err(Error::IncompleteGenerators { missed }) => {
                assert!(missed.contains(&(vec![0], vec![-1])));
                assert!(!missed.is_empty());
            }
            other => panic!("expected incomplete generators, got {:?}", other),
        }
    }

    #[test]
    fn default_generators_cover_low_sectors() {
        // Charge-2 flavor: Δ(e_1) = 1, so sectors ±1 (Δ = 1) are in range.
        let t = u1_with_charge(2);
        let gens = default_generators(&t).unwrap();
        assert!(gens.contains(&vec![1]));
        assert!(gens.contains(&vec![-1]));
        assert_eq!(gens.len(), 2);
        // Two unit flavors on U(1)^1? rank 2 box: Δ(e_j) caps the sweep.
        let t2 = TorusTheory::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let gens2 = default_generators(&t2).unwrap();
        for j in 0..2 {
            let mut e = vec![0i64; 2];
            e[j] = 1;
            assert!(gens2.contains(&e));
            e[j] = -1;
            assert!(gens2.contains(&e));
        }
        for g in &gens2 {
            assert!(g.iter().any(|&x| x != 0));
        }
    }

    #[test]
    fn presentation_json_is_exact() {
        let t = u1_with_charge(2);
        let p = find_relations(&t, Some(&[vec![1], vec![-1]]), HalfInt::new_halves(4)).unwrap();
        let v = p.to_json();
        assert_eq!(v["degree_bound"], "2");
        let rel = v["relations"][0].as_array().unwrap();
        // x*y - w^2 with variables ordered (x, y, w)
        assert_eq!(rel[0]["coeff"], "1");
        assert_eq!(rel[0]["exponents"], serde_json::json!(["1", "1", "0"]));
        assert_eq!(rel[1]["coeff"], "-1");
        assert_eq!(rel[1]["exponents"], serde_json::json!(["0", "0", "2"]));
        // the scale on w is recorded
        let w = v["generators"]
            .as_array()
            .unwrap()
            .iter()
            .find(|g| g["name"] == "w")
            .unwrap();
        assert_eq!(w["scale"], "2");
        assert_eq!(w["degree"], "1");
    }

    #[test]
    fn verify_catches_wrong_relation() {
        let t = u1_with_charge(1);
        let mut p =
            find_relations(&t, Some(&[vec![1], vec![-1]]), HalfInt::new_halves(4)).unwrap();
        // Corrupt the relation: x*y - 2w does not hold.
        let bad = Poly::from_terms(
            3,
            [
                (vec![1, 1, 0], rat(1)),
                (vec![0, 0, 1], ratio(-2, 1)),
            ],
        );
        p.relations = vec![bad];
        let report = verify_presentation(&p).unwrap();
        assert_eq!(report.failed_relations, vec![0]);
    }

    #[test]
    fn verify_catches_missing_relation() {
        let t = u1_with_charge(1);
        let mut p =
            find_relations(&t, Some(&[vec![1], vec![-1]]), HalfInt::new_halves(4)).unwrap();
        p.relations.clear();
        let report = verify_presentation(&p).unwrap();
        assert!(!report.pass());
        assert!(!report.dimension_mismatches.is_empty());
        // The free ring overcounts: staircase > basis at degree 1.
        let (_, s, b) = report.dimension_mismatches[0];
        assert!(s > b);
    }

    #[test]
    fn rank_two_mixed_charges_verify() {
        // A rank-2 example with a non-diagonal charge matrix.
        let t = TorusTheory::new(2, vec![vec![1, 0], vec![0, 1], vec![1, -1]]).unwrap();
        let p = find_relations(&t, None, HalfInt::new_halves(4)).unwrap();
        let report = verify_presentation(&p).unwrap();
        assert!(report.pass(), "{:?}", report);
        assert!(!p.relations.is_empty());
    }

    #[test]
    fn rank_zero_theory_presents_the_point() {
        let t = TorusTheory::new(0, vec![]).unwrap();
        let p = find_relations(&t, None, HalfInt::new_halves(4)).unwrap();
        assert!(p.generators.is_empty());
        assert!(p.relations.is_empty());
        assert_eq!(p.render(), "ring C");
        assert!(verify_presentation(&p).unwrap().pass());
    }

    #[test]
    fn trivial_sector_rejected_as_generator() {
        let t = u1_with_charge(1);
        match find_relations(&t, Some(&[vec![0]]), HalfInt::new_halves(2)) {
            Err(Error::InvalidInput(_)) => {}
            other => panic!("expected invalid input, got {:?}", other),
        }
    }

    #[test]
    fn massive_theory_rejected() {
        let t = TorusTheory::new(1, vec![vec![1]])
            .unwrap()
            .with_masses(vec![vec![1]])
            .unwrap();
        assert!(matches!(
            graded_basis(&t, HalfInt::new_halves(2)),
            Err(Error::InvalidInput(_))
        ));
        assert!(matches!(
            find_relations(&t, None, HalfInt::new_halves(2)),
            Err(Error::InvalidInput(_))
        ));
    }
}
