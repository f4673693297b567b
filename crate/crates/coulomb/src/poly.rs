//! Multivariate polynomials over exact rationals.
//!
//! Terms live in a `BTreeMap` keyed by exponent vector, so iteration order —
//! and therefore every rendered string — is deterministic. Invariants:
//! no zero coefficients are stored, and every exponent vector has length
//! `nvars`. The monomial order used for leading terms is graded lex.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rat::{format_rat, Rat};

/// Polynomial in `nvars` variables with rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, Rat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index {i} out of range for {nvars} vars");
        let mut e = vec![0u16; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(e, Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u16>, Rat)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// The constant coefficient.
    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&vec![0u16; self.nvars])
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u16]) -> Rat {
        self.terms.get(e).cloned().unwrap_or_else(Rat::zero)
    }

    fn add_term(&mut self, e: Vec<u16>, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k.clone() * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u16> = ea
                    .iter()
                    .zip(eb)
                    .map(|(&x, &y)| x.checked_add(y).expect("exponent overflow"))
                    .collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as u32).sum())
            .max()
    }

    /// Leading term under graded lex.
    fn leading(&self) -> Option<(&Vec<u16>, &Rat)> {
        self.terms.iter().max_by(|(ea, _), (eb, _)| {
            let da: u32 = ea.iter().map(|&x| x as u32).sum();
            let db: u32 = eb.iter().map(|&x| x as u32).sum();
            da.cmp(&db).then_with(|| ea.cmp(eb))
        })
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Single-divisor reduction: for an exact multiple the result
    /// is independent of the monomial order.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert_eq!(self.nvars, divisor.nvars);
        let (dlead_e, dlead_c) = divisor.leading()?;
        let dlead_e = dlead_e.clone();
        let dlead_c = dlead_c.clone();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((rlead_e, rlead_c)) = rem.leading() {
            let Some(me): Option<Vec<u16>> = rlead_e
                .iter()
                .zip(&dlead_e)
                .map(|(&r, &d)| r.checked_sub(d))
                .collect()
            else {
                return None;
            };
            let mc = rlead_c.clone() / dlead_c.clone();
            let mono = Poly::from_terms(self.nvars, [(me, mc)]);
            quot = quot.add(&mono);
            rem = rem.sub(&mono.mul(divisor));
        }
        Some(quot)
    }

    /// Exact quotient by a single variable; `None` if some term lacks it.
    pub fn div_by_var(&self, i: usize) -> Option<Poly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] == 0 {
                return None;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            terms.insert(e2, c.clone());
        }
        Some(Poly { nvars: self.nvars, terms })
    }

    /// Substitute variable `i` by the constant `value`.
    pub fn subst_const(&self, i: usize, value: &Rat) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            let mut coeff = c.clone();
            for _ in 0..k {
                coeff *= value.clone();
            }
            out.add_term(e2, coeff);
        }
        out
    }

    /// Substitute variable `i` by an arbitrary polynomial (same variable
    /// count; the replacement may itself use variable `i`).
    pub fn subst_poly(&self, i: usize, replacement: &Poly) -> Poly {
        assert_eq!(self.nvars, replacement.nvars);
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = e2[i];
            e2[i] = 0;
            let term = Poly::from_terms(self.nvars, [(e2, c.clone())]);
            out = out.add(&term.mul(&replacement.pow(k as u32)));
        }
        out
    }

    /// Substitute `x_i -> x_i + c * x_j` (binomial expansion), `j != i`.
    pub fn subst_shift(&self, i: usize, c: i64, j: usize) -> Poly {
        assert_ne!(i, j);
        if c == 0 {
            return self.clone();
        }
        let c = Rat::from(BigInt::from(c));
        let mut out = Poly::zero(self.nvars);
        for (e, coeff) in &self.terms {
            let n = e[i];
            // (x_i + c x_j)^n = sum_k C(n,k) x_i^(n-k) (c x_j)^k
            let mut binom = Rat::one();
            let mut cpow = Rat::one();
            for k in 0..=n {
                let mut e2 = e.clone();
                e2[i] = n - k;
                e2[j] = e2[j].checked_add(k).expect("exponent overflow");
                out.add_term(e2, coeff.clone() * binom.clone() * cpow.clone());
                // advance C(n,k) -> C(n,k+1) and c^k -> c^(k+1)
                binom = binom * Rat::from(BigInt::from((n - k) as i64))
                    / Rat::from(BigInt::from((k + 1) as i64));
                cpow *= c.clone();
            }
        }
        out
    }

    /// Evaluate at a rational point.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t *= point[i].clone();
                }
            }
            acc += t;
        }
        acc
    }

    /// Render with the given variable names, e.g. `w1^2*h - 3/2*m1`.
    pub fn format_with(&self, names: &[&str]) -> String {
        assert_eq!(names.len(), self.nvars);
        if self.terms.is_empty() {
            return "0".to_string();
        }
        // graded-lex descending so leading terms print first
        let mut keys: Vec<&Vec<u16>> = self.terms.keys().collect();
        keys.sort_by(|ea, eb| {
            let da: u32 = ea.iter().map(|&x| x as u32).sum();
            let db: u32 = eb.iter().map(|&x| x as u32).sum();
            db.cmp(&da).then_with(|| eb.cmp(ea))
        });
        let mut s = String::new();
        for (idx, e) in keys.iter().enumerate() {
            let c = &self.terms[*e];
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        names[i].to_string()
                    } else {
                        format!("{}^{}", names[i], k)
                    }
                })
                .collect();
            let mono = mono.join("*");
            let neg = c < &Rat::zero();
            let cabs = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let coeff_str = format_rat(&cabs);
            if mono.is_empty() {
                s.push_str(&coeff_str);
            } else if cabs.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{coeff_str}*{mono}");
            }
        }
        s
    }
}
