//! The Coulomb-branch coordinate ring of a torus theory and its
//! ℏ-quantization.
//!
//! Elements are finite sums Σ c_λ(w, ℏ, m)·X_λ over sectors λ ∈ Z^n. The
//! classical product uses the structure constants
//!
//! ```text
//! X_λ · X_μ = [Π_i ℓ_i^{d_i(λ,μ)}] X_{λ+μ},
//! d_i(λ,μ) = (|⟨a_i,λ⟩| + |⟨a_i,μ⟩| − |⟨a_i,λ+μ⟩|)/2,
//! ```
//!
//! with ℓ_i the matter linear form. The quantized product is computed in a
//! shift-operator model: X_λ = Φ_λ(w)·u^λ where u^λ conjugates w ↦ w + ℏλ,
//! and the result is re-expressed in the X-basis by exact division. The
//! division always succeeds: for each matter line the ℏ-offsets of
//! Φ_λ·Φ_μ(w+ℏλ) telescope into Φ_{λ+μ} times a polynomial factor,
//! case-checked over all sign patterns of (⟨a_i,λ⟩, ⟨a_i,μ⟩).

use std::collections::BTreeMap;
use std::fmt;

use crate::poly::Poly;
use crate::rat::{ratio, Rat};
use crate::theory::TorusTheory;
use crate::{Error, Result};

/// Which product to compute.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Mode {
    Classical,
    Quantized,
}

/// ℏ-offset convention for the quantized shift-operator model. Both have
/// the same ℏ = 0 limit; `Descending` is the default and gives
/// [X_1, X_{−1}] = ℏ with X_1·X_{−1} = w + ℏ in the one-flavor example,
/// `HalfShifted` symmetrizes to w ± ℏ/2.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Convention {
    #[default]
    Descending,
    HalfShifted,
}

impl Convention {
    fn offset(&self, k: u32) -> Rat {
        match self {
            Convention::Descending => Rat::from_integer(k.into()),
            Convention::HalfShifted => ratio(2 * k as i64 + 1, 2),
        }
    }
}

/// Element of the (quantized) Coulomb-branch algebra: a finite sum of
/// sector symbols X_λ with polynomial coefficients in w, ℏ, and masses.
/// Immutable; all operations return new values.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraElement {
    theory: TorusTheory,
    terms: BTreeMap<Vec<i64>, Poly>,
}

/// The sector label of an element under the π₁(T) = Z^n grading.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Charge {
    /// All terms sit in one sector (the zero element counts as sector 0).
    Pure(Vec<i64>),
    /// Terms from at least two different sectors.
    Mixed,
}

impl AlgebraElement {
    pub fn zero(theory: &TorusTheory) -> Self {
        AlgebraElement { theory: theory.clone(), terms: BTreeMap::new() }
    }

    pub fn one(theory: &TorusTheory) -> Self {
        Self::from_term(theory, vec![0; theory.rank()], Poly::one(theory.nvars()))
            .expect("zero sector is always valid")
    }

    /// Single term c(w,ℏ,m)·X_λ.
    pub fn from_term(theory: &TorusTheory, sector: Vec<i64>, coeff: Poly) -> Result<Self> {
        if sector.len() != theory.rank() {
            return Err(Error::Shape(format!(
                "sector has length {}, expected rank {}",
                sector.len(),
                theory.rank()
            )));
        }
        if coeff.nvars() != theory.nvars() {
            return Err(Error::Shape(format!(
                "coefficient has {} variables, theory has {}",
                coeff.nvars(),
                theory.nvars()
            )));
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(sector, coeff);
        }
        Ok(AlgebraElement { theory: theory.clone(), terms })
    }

    /// A polynomial in w, ℏ, m placed in the zero sector.
    pub fn scalar(theory: &TorusTheory, coeff: Poly) -> Result<Self> {
        Self::from_term(theory, vec![0; theory.rank()], coeff)
    }

    pub fn theory(&self) -> &TorusTheory {
        &self.theory
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, sector: &[i64]) -> Option<&Poly> {
        self.terms.get(sector)
    }

    fn check_same_theory(&self, other: &Self) -> Result<()> {
        if self.theory != other.theory {
            return Err(Error::MixedTheories);
        }
        Ok(())
    }

    fn insert_term(&mut self, sector: Vec<i64>, coeff: Poly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(sector) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&coeff);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_theory(other)?;
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.insert_term(s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            theory: self.theory.clone(),
            terms: self.terms.iter().map(|(s, c)| (s.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero(&self.theory);
        for (s, p) in &self.terms {
            out.insert_term(s.clone(), p.scale(c));
        }
        out
    }

    /// Product in the requested mode.
    pub fn multiply(&self, other: &Self, mode: Mode) -> Result<Self> {
        self.multiply_with(other, mode, Convention::default())
    }

    /// Product with an explicit quantization convention (ignored in
    /// classical mode).
    pub fn multiply_with(&self, other: &Self, mode: Mode, conv: Convention) -> Result<Self> {
        self.check_same_theory(other)?;
        let mut out = Self::zero(&self.theory);
        for (lam, p) in &self.terms {
            for (mu, q) in &other.terms {
                let sum: Vec<i64> = lam.iter().zip(mu).map(|(a, b)| a + b).collect();
                let coeff = match mode {
                    Mode::Classical => {
                        let s = classical_structure(&self.theory, lam, mu);
                        p.mul(q).mul(&s)
                    }
                    Mode::Quantized => {
                        let s = quantized_structure(&self.theory, lam, mu, conv);
                        p.mul(&shift_by_sector(&self.theory, q, lam)).mul(&s)
                    }
                };
                out.insert_term(sum.clone(), coeff);
            }
        }
        Ok(out)
    }

    /// Specialize ℏ to zero in every coefficient.
    pub fn hbar_zero(&self) -> Self {
        let h = self.theory.hbar_var();
        let mut out = Self::zero(&self.theory);
        for (s, p) in &self.terms {
            out.insert_term(s.clone(), p.subst_const(h, &Rat::from_integer(0.into())));
        }
        out
    }

    /// Do any coefficients involve ℏ?
    pub fn involves_hbar(&self) -> bool {
        let h = self.theory.hbar_var();
        self.terms
            .values()
            .any(|p| p.terms().any(|(e, _)| e[h] > 0))
    }

    /// The Poisson bracket {f, g} = ((f̃g̃ − g̃f̃)/ℏ)|_{ℏ=0}, where the
    /// lifts keep the same coefficients and multiply in the quantized mode.
    pub fn poisson_bracket(&self, other: &Self) -> Result<Self> {
        self.check_same_theory(other)?;
        if self.involves_hbar() || other.involves_hbar() {
            return Err(Error::InvalidInput(
                "poisson_bracket requires hbar-free arguments".to_string(),
            ));
        }
        let fg = self.multiply(other, Mode::Quantized)?;
        let gf = other.multiply(self, Mode::Quantized)?;
        let comm = fg.sub(&gf)?;
        let h = self.theory.hbar_var();
        let mut out = Self::zero(&self.theory);
        for (s, p) in &comm.terms {
            let divided = p.div_by_var(h).ok_or(Error::HbarDivision)?;
            out.insert_term(
                s.clone(),
                divided.subst_const(h, &Rat::from_integer(0.into())),
            );
        }
        Ok(out)
    }

    /// Sector label under the π₁(T) grading; `Mixed` when terms disagree.
    pub fn topological_charge(&self) -> Charge {
        let mut it = self.terms.keys();
        match it.next() {
            None => Charge::Pure(vec![0; self.theory.rank()]),
            Some(first) => {
                if it.all(|s| s == first) {
                    Charge::Pure(first.clone())
                } else {
                    Charge::Mixed
                }
            }
        }
    }

    /// Canonical text rendering: `(coeff) * X[λ]` terms in sector order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let names = self.theory.var_names();
        let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, p)| {
                let sector = s
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                let coeff = p.format_with(&name_refs);
                if coeff == "1" {
                    format!("X[{sector}]")
                } else if p.num_terms() == 1 && !coeff.starts_with('-') {
                    format!("{coeff} * X[{sector}]")
                } else {
                    format!("({coeff}) * X[{sector}]")
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// The monopole operator X_λ.
pub fn monopole_generator(theory: &TorusTheory, lam: &[i64]) -> Result<AlgebraElement> {
    AlgebraElement::from_term(theory, lam.to_vec(), Poly::one(theory.nvars()))
}

/// Spec-surface alias for [`AlgebraElement::multiply`].
pub fn multiply(e1: &AlgebraElement, e2: &AlgebraElement, mode: Mode) -> Result<AlgebraElement> {
    e1.multiply(e2, mode)
}

/// Spec-surface alias for [`AlgebraElement::poisson_bracket`].
pub fn poisson_bracket(e1: &AlgebraElement, e2: &AlgebraElement) -> Result<AlgebraElement> {
    e1.poisson_bracket(e2)
}

/// Spec-surface alias for [`AlgebraElement::topological_charge`].
pub fn topological_charge(e: &AlgebraElement) -> Charge {
    e.topological_charge()
}

/// Π_i ℓ_i^{d_i(λ,μ)} with d_i = (|⟨a_i,λ⟩| + |⟨a_i,μ⟩| − |⟨a_i,λ+μ⟩|)/2.
fn classical_structure(theory: &TorusTheory, lam: &[i64], mu: &[i64]) -> Poly {
    let mut s = Poly::one(theory.nvars());
    for i in 0..theory.matter_count() {
        let a = crate::lattice::pairing(&theory.matter()[i], lam).expect("validated");
        let b = crate::lattice::pairing(&theory.matter()[i], mu).expect("validated");
        let d = (a.abs() + b.abs() - (a + b).abs()) / 2;
        debug_assert!(d >= 0 && (a.abs() + b.abs() - (a + b).abs()) % 2 == 0);
        if d > 0 {
            s = s.mul(&theory.linear_form(i).pow(d as u32));
        }
    }
    s
}

/// Apply u^λ conjugation to a coefficient: w_j ↦ w_j + ℏ·λ_j.
fn shift_by_sector(theory: &TorusTheory, p: &Poly, lam: &[i64]) -> Poly {
    let h = theory.hbar_var();
    let mut out = p.clone();
    for (j, &c) in lam.iter().enumerate() {
        out = out.subst_shift(theory.w_var(j), c, h);
    }
    out
}

/// Structure polynomial of the quantized product,
/// (Φ_λ · Φ_μ(w + ℏλ)) / Φ_{λ+μ} with
/// Φ_λ = Π_{i: ⟨a_i,λ⟩ < 0} Π_{k=0}^{−⟨a_i,λ⟩−1} (ℓ_i − offset(k)·ℏ).
///
/// The ratio is computed without polynomial division: per covector, every
/// factor is ℓ_i − t·ℏ for an offset t, the denominator's offset multiset
/// embeds in the numerator's, and cancelling it leaves exactly
/// d_i(λ,μ) factors.
fn quantized_structure(theory: &TorusTheory, lam: &[i64], mu: &[i64], conv: Convention) -> Poly {
    let nv = theory.nvars();
    let hbar = Poly::var(nv, theory.hbar_var());
    let mut s = Poly::one(nv);
    for i in 0..theory.matter_count() {
        let c1 = crate::lattice::pairing(&theory.matter()[i], lam).expect("validated");
        let c2 = crate::lattice::pairing(&theory.matter()[i], mu).expect("validated");
        let mut offsets: Vec<Rat> = Vec::new();
        if c1 < 0 {
            offsets.extend((0..(-c1) as u32).map(|k| conv.offset(k)));
        }
        if c2 < 0 {
            // the λ-shift moves ℓ_i by ⟨a_i,λ⟩·ℏ, i.e. offsets drop by c1
            let shift = Rat::from_integer(c1.into());
            offsets.extend((0..(-c2) as u32).map(|k| conv.offset(k) - &shift));
        }
        if c1 + c2 < 0 {
            for k in 0..(-(c1 + c2)) as u32 {
                let t = conv.offset(k);
                let pos = offsets
                    .iter()
                    .position(|x| *x == t)
                    .expect("internal error: quantized product left the X-basis");
                offsets.swap_remove(pos);
            }
        }
        debug_assert_eq!(
            offsets.len() as i64,
            (c1.abs() + c2.abs() - (c1 + c2).abs()) / 2
        );
        let ell = theory.linear_form(i);
        for t in offsets {
            s = s.mul(&ell.sub(&hbar.scale(&t)));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, ratio, HalfInt};

    fn u1(charges: &[i64]) -> TorusTheory {
        TorusTheory::new(1, charges.iter().map(|&c| vec![c]).collect()).unwrap()
    }

    fn w_poly(t: &TorusTheory) -> Poly {
        Poly::var(t.nvars(), t.w_var(0))
    }

    #[test]
    fn classical_xy_equals_w() {
        let t = u1(&[1]);
        let x = monopole_generator(&t, &[1]).unwrap();
        let y = monopole_generator(&t, &[-1]).unwrap();
        let xy = x.multiply(&y, Mode::Classical).unwrap();
        let w = AlgebraElement::scalar(&t, w_poly(&t)).unwrap();
        assert_eq!(xy, w);
        assert_eq!(xy.render(), "w * X[0]");
    }

    #[test]
    fn group_algebra_when_no_matter() {
        let t = u1(&[]);
        for m in -5..=5i64 {
            for n in -5..=5i64 {
                let a = monopole_generator(&t, &[m]).unwrap();
                let b = monopole_generator(&t, &[n]).unwrap();
                let prod = a.multiply(&b, Mode::Classical).unwrap();
                assert_eq!(prod, monopole_generator(&t, &[m + n]).unwrap());
                let prod = a.multiply(&b, Mode::Quantized).unwrap();
                assert_eq!(prod, monopole_generator(&t, &[m + n]).unwrap());
            }
        }
    }

    #[test]
    fn charge_n_classical_relation() {
        // one charge-2 flavor: x·y = (2w)^2 = 4w^2
        let t = u1(&[2]);
        let x = monopole_generator(&t, &[1]).unwrap();
        let y = monopole_generator(&t, &[-1]).unwrap();
        let xy = x.multiply(&y, Mode::Classical).unwrap();
        let expect =
            AlgebraElement::scalar(&t, w_poly(&t).pow(2).scale(&rat(4))).unwrap();
        assert_eq!(xy, expect);
    }

    #[test]
    fn quantized_commutator_is_hbar() {
        let t = u1(&[1]);
        let x = monopole_generator(&t, &[1]).unwrap();
        let y = monopole_generator(&t, &[-1]).unwrap();
        let xy = x.multiply(&y, Mode::Quantized).unwrap();
        let yx = y.multiply(&x, Mode::Quantized).unwrap();
        let nv = t.nvars();
        let w = Poly::var(nv, t.w_var(0));
        let h = Poly::var(nv, t.hbar_var());
        assert_eq!(xy, AlgebraElement::scalar(&t, w.add(&h)).unwrap());
        assert_eq!(yx, AlgebraElement::scalar(&t, w.clone()).unwrap());
        let comm = xy.sub(&yx).unwrap();
        assert_eq!(comm, AlgebraElement::scalar(&t, h).unwrap());
    }

    #[test]
    fn quantized_structure_matches_phi_ratio() {
        // Oracle: the literal ratio (Φ_λ · Φ_μ(w + ℏλ)) / Φ_{λ+μ} via
        // polynomial division, which the factored computation must match.
        fn phi(t: &TorusTheory, lam: &[i64], conv: Convention) -> Poly {
            let hbar = Poly::var(t.nvars(), t.hbar_var());
            let mut out = Poly::one(t.nvars());
            for i in 0..t.matter_count() {
                let c = crate::lattice::pairing(&t.matter()[i], lam).unwrap();
                let ell = t.linear_form(i);
                for k in 0..(-c).max(0) as u32 {
                    out = out.mul(&ell.sub(&hbar.scale(&conv.offset(k))));
                }
            }
            out
        }
        let t = TorusTheory::new(2, vec![vec![1, 0], vec![-2, 1], vec![1, 3]]).unwrap();
        for conv in [Convention::Descending, Convention::HalfShifted] {
            for l0 in -2..=2i64 {
                for l1 in -2..=2i64 {
                    for m0 in -2..=2i64 {
                        for m1 in -2..=2i64 {
                            let lam = [l0, l1];
                            let mu = [m0, m1];
                            let sum = [l0 + m0, l1 + m1];
                            let num = phi(&t, &lam, conv)
                                .mul(&shift_by_sector(&t, &phi(&t, &mu, conv), &lam));
                            let den = phi(&t, &sum, conv);
                            let expect = num.div_exact(&den).unwrap();
                            assert_eq!(quantized_structure(&t, &lam, &mu, conv), expect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn half_shifted_convention_same_commutator() {
        let t = u1(&[1]);
        let x = monopole_generator(&t, &[1]).unwrap();
        let y = monopole_generator(&t, &[-1]).unwrap();
        let xy = x.multiply_with(&y, Mode::Quantized, Convention::HalfShifted).unwrap();
        let yx = y.multiply_with(&x, Mode::Quantized, Convention::HalfShifted).unwrap();
        let nv = t.nvars();
        let w = Poly::var(nv, t.w_var(0));
        let h = Poly::var(nv, t.hbar_var());
        // symmetric model: w ± ℏ/2, same commutator
        assert_eq!(
            xy,
            AlgebraElement::scalar(&t, w.add(&h.scale(&ratio(1, 2)))).unwrap()
        );
        assert_eq!(
            yx,
            AlgebraElement::scalar(&t, w.sub(&h.scale(&ratio(1, 2)))).unwrap()
        );
        assert_eq!(xy.sub(&yx).unwrap(), AlgebraElement::scalar(&t, h).unwrap());
    }

    #[test]
    fn poisson_golden_values() {
        let t = u1(&[1]);
        let x = monopole_generator(&t, &[1]).unwrap();
        let y = monopole_generator(&t, &[-1]).unwrap();
        let w = AlgebraElement::scalar(&t, w_poly(&t)).unwrap();
        // {x, y} = 1
        assert_eq!(x.poisson_bracket(&y).unwrap(), AlgebraElement::one(&t));
        // {w, x} = −x
        assert_eq!(w.poisson_bracket(&x).unwrap(), x.neg());
        // {f, f} = 0
        let f = x.add(&w).unwrap();
        assert!(f.poisson_bracket(&f).unwrap().is_zero());
        // ℏ-dependent inputs are rejected
        let h = AlgebraElement::scalar(&t, Poly::var(t.nvars(), t.hbar_var())).unwrap();
        assert!(matches!(h.poisson_bracket(&x), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn degeneration_matches_classical() {
        let t = u1(&[1, -2]).with_masses(vec![vec![1, 0], vec![0, 1]]).unwrap();
        let nv = t.nvars();
        let a = AlgebraElement::from_term(&t, vec![2], Poly::var(nv, t.w_var(0)))
            .unwrap()
            .add(&monopole_generator(&t, &[-1]).unwrap())
            .unwrap();
        let b = monopole_generator(&t, &[-2])
            .unwrap()
            .add(&AlgebraElement::scalar(&t, Poly::var(nv, t.mass_var(0))).unwrap())
            .unwrap();
        let q = a.multiply(&b, Mode::Quantized).unwrap().hbar_zero();
        let c = a.multiply(&b, Mode::Classical).unwrap();
        assert_eq!(q, c);
    }

    #[test]
    fn sector_additivity_and_charge() {
        let t = TorusTheory::new(2, vec![vec![1, 0], vec![1, 1]]).unwrap();
        let a = monopole_generator(&t, &[2, -1]).unwrap();
        let b = monopole_generator(&t, &[-1, 3]).unwrap();
        let prod = a.multiply(&b, Mode::Classical).unwrap();
        assert_eq!(prod.topological_charge(), Charge::Pure(vec![1, 2]));
        assert_eq!(a.add(&b).unwrap().topological_charge(), Charge::Mixed);
        let zero = AlgebraElement::zero(&t);
        assert_eq!(zero.topological_charge(), Charge::Pure(vec![0, 0]));
    }

    #[test]
    fn mass_deformed_products() {
        // charge (1) with flavor (1): x·y = w + m
        let t = u1(&[1]).with_masses(vec![vec![1]]).unwrap();
        let x = monopole_generator(&t, &[1]).unwrap();
        let y = monopole_generator(&t, &[-1]).unwrap();
        let xy = x.multiply(&y, Mode::Classical).unwrap();
        let nv = t.nvars();
        let expect = AlgebraElement::scalar(
            &t,
            Poly::var(nv, t.w_var(0)).add(&Poly::var(nv, t.mass_var(0))),
        )
        .unwrap();
        assert_eq!(xy, expect);
        assert_eq!(xy.render(), "(w + m) * X[0]");

        // charges (1,1) with flavor charges (1),(0): x·y = (w+m)·w
        let t = u1(&[1, 1]).with_masses(vec![vec![1], vec![0]]).unwrap();
        let x = monopole_generator(&t, &[1]).unwrap();
        let y = monopole_generator(&t, &[-1]).unwrap();
        let xy = x.multiply(&y, Mode::Classical).unwrap();
        let nv = t.nvars();
        let w = Poly::var(nv, t.w_var(0));
        let m = Poly::var(nv, t.mass_var(0));
        let expect = AlgebraElement::scalar(&t, w.add(&m).mul(&w)).unwrap();
        assert_eq!(xy, expect);

        // zero flavor charges leave the product undeformed
        let t0 = u1(&[1, 1]).with_masses(vec![vec![0], vec![0]]).unwrap();
        let x = monopole_generator(&t0, &[1]).unwrap();
        let y = monopole_generator(&t0, &[-1]).unwrap();
        let xy = x.multiply(&y, Mode::Classical).unwrap();
        let nv = t0.nvars();
        let expect =
            AlgebraElement::scalar(&t0, Poly::var(nv, t0.w_var(0)).pow(2)).unwrap();
        assert_eq!(xy, expect);
    }

    #[test]
    fn mixed_theories_rejected() {
        let t1 = u1(&[1]);
        let t2 = u1(&[2]);
        let x = monopole_generator(&t1, &[1]).unwrap();
        let y = monopole_generator(&t2, &[-1]).unwrap();
        assert!(matches!(x.multiply(&y, Mode::Classical), Err(Error::MixedTheories)));
        assert!(matches!(x.add(&y), Err(Error::MixedTheories)));
    }

    #[test]
    fn grading_additive_on_products() {
        let t = u1(&[1, 1, -1]);
        let a = monopole_generator(&t, &[2]).unwrap();
        let b = monopole_generator(&t, &[-3]).unwrap();
        let prod = a.multiply(&b, Mode::Classical).unwrap();
        // deg X_2 + deg X_{-3} = Δ(2) + Δ(−3) = 3 + 9/2
        let d2 = t.delta_dimension(&[2]).unwrap();
        let d3 = t.delta_dimension(&[-3]).unwrap();
        // every monomial of the product coefficient has |α| making the total
        // degree Δ(λ+μ) + |α| equal to the sum above
        let target = d2 + d3;
        for (s, p) in prod.terms() {
            let base = t.delta_dimension(s).unwrap();
            for (e, _) in p.terms() {
                let alpha: i64 = e.iter().map(|&x| x as i64).sum();
                assert_eq!(base + HalfInt::from_int(alpha), target);
            }
        }
    }
}
