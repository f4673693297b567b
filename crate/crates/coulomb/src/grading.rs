//! Gradings on the Coulomb-branch algebra.
//!
//! The base grading assigns X_λ the monopole dimension Δ(λ) and every
//! polynomial variable (w, ℏ, masses) degree 1; degrees live in ½Z but can
//! be shifted by an arbitrary rational covector on the cocharacter lattice,
//! which tilts deg X_λ by ⟨c, λ⟩. The shift is a user parameter: the
//! homological normalization it matches is theory-dependent and not
//! inferred here.

use num_traits::Zero;

use crate::algebra::AlgebraElement;
use crate::rat::Rat;
use crate::{Error, Result};

/// Grading choice: plain monopole dimension, or tilted by a covector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GradingSpec {
    /// deg X_λ = Δ(λ).
    Delta,
    /// deg X_λ = Δ(λ) + ⟨c, λ⟩ for the stored rational covector c.
    Shifted(Vec<Rat>),
}

/// Result of a degree computation.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DegreeReport {
    /// The zero element (homogeneous of every degree).
    Zero,
    Homogeneous(Rat),
    /// Distinct degrees present, sorted ascending.
    Inhomogeneous(Vec<Rat>),
}

/// Degree of an element under the grading, or the list of term degrees if
/// it is not homogeneous.
pub fn degree(e: &AlgebraElement, g: &GradingSpec) -> Result<DegreeReport> {
    let theory = e.theory();
    if let GradingSpec::Shifted(c) = g {
        if c.len() != theory.rank() {
            return Err(Error::Shape(format!(
                "grading shift has length {}, expected rank {}",
                c.len(),
                theory.rank()
            )));
        }
    }
    let mut degrees: Vec<Rat> = Vec::new();
    for (lam, poly) in e.terms() {
        let mut base = theory.delta_dimension(lam)?.to_rat();
        if let GradingSpec::Shifted(c) = g {
            for (cj, &lj) in c.iter().zip(lam) {
                base += cj * Rat::from_integer(lj.into());
            }
        }
        for (exp, _) in poly.terms() {
            let total: i64 = exp.iter().map(|&x| x as i64).sum();
            let d = base.clone() + Rat::from_integer(total.into());
            if !degrees.contains(&d) {
                degrees.push(d);
            }
        }
    }
    degrees.sort();
    match degrees.len() {
        0 => Ok(DegreeReport::Zero),
        1 => Ok(DegreeReport::Homogeneous(degrees.pop().unwrap())),
        _ => Ok(DegreeReport::Inhomogeneous(degrees)),
    }
}

impl GradingSpec {
    /// Convenience constructor for a shifted grading.
    pub fn shifted(c: Vec<Rat>) -> Self {
        GradingSpec::Shifted(c)
    }

    /// Is this the unshifted Δ-grading (including a zero shift vector)?
    pub fn is_delta(&self) -> bool {
        match self {
            GradingSpec::Delta => true,
            GradingSpec::Shifted(c) => c.iter().all(|x| x.is_zero()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monopole_generator;
    use crate::poly::Poly;
    use crate::rat::{rat, ratio};
    use crate::theory::TorusTheory;

    fn u1_one_flavor() -> TorusTheory {
        TorusTheory::new(1, vec![vec![1]]).unwrap()
    }

    #[test]
    fn delta_mode_degrees() {
        let t = u1_one_flavor();
        let x = monopole_generator(&t, &[1]).unwrap();
        let y = monopole_generator(&t, &[-1]).unwrap();
        assert_eq!(degree(&x, &GradingSpec::Delta).unwrap(), DegreeReport::Homogeneous(ratio(1, 2)));
        assert_eq!(degree(&y, &GradingSpec::Delta).unwrap(), DegreeReport::Homogeneous(ratio(1, 2)));
        let one = crate::algebra::AlgebraElement::one(&t);
        assert_eq!(degree(&one, &GradingSpec::Delta).unwrap(), DegreeReport::Homogeneous(rat(0)));
    }

    #[test]
    fn shifted_mode_tilts_x_and_y() {
        // shift ½: deg x = 1, deg y = 0
        let t = u1_one_flavor();
        let g = GradingSpec::shifted(vec![ratio(1, 2)]);
        let x = monopole_generator(&t, &[1]).unwrap();
        let y = monopole_generator(&t, &[-1]).unwrap();
        assert_eq!(degree(&x, &g).unwrap(), DegreeReport::Homogeneous(rat(1)));
        assert_eq!(degree(&y, &g).unwrap(), DegreeReport::Homogeneous(rat(0)));
        // mismatched shift length rejected
        let bad = GradingSpec::shifted(vec![ratio(1, 2), rat(0)]);
        assert!(degree(&x, &bad).is_err());
    }

    #[test]
    fn inhomogeneous_marker_and_zero() {
        let t = u1_one_flavor();
        let x = monopole_generator(&t, &[1]).unwrap();
        let one = crate::algebra::AlgebraElement::one(&t);
        let mix = x.add(&one).unwrap();
        assert_eq!(
            degree(&mix, &GradingSpec::Delta).unwrap(),
            DegreeReport::Inhomogeneous(vec![rat(0), ratio(1, 2)])
        );
        let zero = crate::algebra::AlgebraElement::zero(&t);
        assert_eq!(degree(&zero, &GradingSpec::Delta).unwrap(), DegreeReport::Zero);
        // w·ℏ has degree 2 under the polynomial grading
        let nv = t.nvars();
        let wh = Poly::var(nv, t.w_var(0)).mul(&Poly::var(nv, t.hbar_var()));
        let el = crate::algebra::AlgebraElement::scalar(&t, wh).unwrap();
        assert_eq!(degree(&el, &GradingSpec::Delta).unwrap(), DegreeReport::Homogeneous(rat(2)));
    }
}
