//! Truncated graded series: the output form of every Hilbert-series
//! computation in the crate.
//!
//! Exponents of q are half-integers stored in half-units; each coefficient
//! may be refined by a vector of fugacity exponents (π₁ charges on the
//! monopole side, gauge fugacities during Molien extraction). Invariants:
//! no stored q-exponent exceeds the truncation order, and no zero
//! coefficient is stored. Arithmetic truncates, so products are exact up
//! to the stated order.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::rat::{format_rat, HalfInt, Rat};

/// A series Σ c_{p,v} q^{p/2} b^v truncated at a half-integer order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GradedSeries {
    /// (q-exponent in half-units, fugacity exponents) → coefficient.
    coefficients: BTreeMap<(i64, Vec<i64>), Rat>,
    truncation: HalfInt,
    fugacity_count: usize,
}

impl GradedSeries {
    pub fn new(truncation: HalfInt, fugacity_count: usize) -> Self {
        GradedSeries {
            coefficients: BTreeMap::new(),
            truncation,
            fugacity_count,
        }
    }

    /// The series 1.
    pub fn one(truncation: HalfInt, fugacity_count: usize) -> Self {
        let mut s = Self::new(truncation, fugacity_count);
        s.add_term(0, vec![0; fugacity_count], Rat::from_integer(1.into()));
        s
    }

    /// Single term q^{halves/2} b^{fugs}.
    pub fn monomial(truncation: HalfInt, halves: i64, fugs: Vec<i64>) -> Self {
        let k = fugs.len();
        let mut s = Self::new(truncation, k);
        s.add_term(halves, fugs, Rat::from_integer(1.into()));
        s
    }

    pub fn truncation(&self) -> HalfInt {
        self.truncation
    }

    pub fn fugacity_count(&self) -> usize {
        self.fugacity_count
    }

    /// Add `c · q^{halves/2} b^{fugs}`, dropping exponents beyond the
    /// truncation order.
    pub fn add_term(&mut self, halves: i64, fugs: Vec<i64>, c: Rat) {
        assert_eq!(fugs.len(), self.fugacity_count, "fugacity vector length");
        if c.is_zero() || halves > self.truncation.halves() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coefficients.entry((halves, fugs)) {
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

    pub fn coefficient(&self, halves: i64, fugs: &[i64]) -> Rat {
        self.coefficients
            .get(&(halves, fugs.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, Vec<i64>), &Rat)> {
        self.coefficients.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &GradedSeries) -> GradedSeries {
        assert_eq!(self.fugacity_count, other.fugacity_count);
        let trunc = self.truncation.min(other.truncation);
        let mut out = GradedSeries::new(trunc, self.fugacity_count);
        for ((h, v), c) in &self.coefficients {
            out.add_term(*h, v.clone(), c.clone());
        }
        for ((h, v), c) in &other.coefficients {
            out.add_term(*h, v.clone(), c.clone());
        }
        out
    }

    /// Truncating product; exact up to min(truncations).
    pub fn mul(&self, other: &GradedSeries) -> GradedSeries {
        assert_eq!(self.fugacity_count, other.fugacity_count);
        let trunc = self.truncation.min(other.truncation);
        let mut out = GradedSeries::new(trunc, self.fugacity_count);
        for ((ha, va), ca) in &self.coefficients {
            if *ha > trunc.halves() {
                continue;
            }
            for ((hb, vb), cb) in &other.coefficients {
                let h = ha + hb;
                if h > trunc.halves() {
                    continue;
                }
                let v: Vec<i64> = va.iter().zip(vb).map(|(x, y)| x + y).collect();
                out.add_term(h, v, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> GradedSeries {
        let mut out = GradedSeries::new(self.truncation, self.fugacity_count);
        for ((h, v), k) in &self.coefficients {
            out.add_term(*h, v.clone(), k.clone() * c.clone());
        }
        out
    }

    /// Truncated expansion of 1/(1 − q^{step/2} b^{fugs}) =
    /// Σ_j q^{j·step/2} b^{j·fugs}. `step` must be positive (in half-units).
    pub fn geometric(truncation: HalfInt, step_halves: i64, fugs: &[i64]) -> GradedSeries {
        assert!(step_halves > 0, "geometric factor needs a positive degree");
        let mut out = GradedSeries::new(truncation, fugs.len());
        let mut j = 0i64;
        while j * step_halves <= truncation.halves() {
            out.add_term(
                j * step_halves,
                fugs.iter().map(|&f| f * j).collect(),
                Rat::from_integer(1.into()),
            );
            j += 1;
        }
        out
    }

    /// Reinterpret a fugacity-free series in a ring with `k` fugacities
    /// (every term gets the zero fugacity vector).
    pub fn with_fugacity_dim(&self, k: usize) -> GradedSeries {
        assert_eq!(self.fugacity_count, 0, "only a plain q-series can be lifted");
        let mut out = GradedSeries::new(self.truncation, k);
        for ((h, _), c) in &self.coefficients {
            out.add_term(*h, vec![0; k], c.clone());
        }
        out
    }

    /// Collapse all fugacities to 1, leaving a pure q-series.
    pub fn set_fugacities_one(&self) -> GradedSeries {
        let mut out = GradedSeries::new(self.truncation, 0);
        for ((h, _), c) in &self.coefficients {
            out.add_term(*h, vec![], c.clone());
        }
        out
    }

    /// Keep only terms whose fugacity vector is zero (constant-term
    /// extraction), dropping the fugacity dimension.
    pub fn fugacity_constant_term(&self) -> GradedSeries {
        let zero = vec![0i64; self.fugacity_count];
        let mut out = GradedSeries::new(self.truncation, 0);
        for ((h, v), c) in &self.coefficients {
            if *v == zero {
                out.add_term(*h, vec![], c.clone());
            }
        }
        out
    }

    /// Coefficients of the integer powers q^0..q^n of a fugacity-free
    /// series (half-integer terms, if any, are simply not sampled).
    pub fn integer_coefficients(&self, n: i64) -> Vec<Rat> {
        assert_eq!(self.fugacity_count, 0, "collapse fugacities first");
        (0..=n).map(|k| self.coefficient(2 * k, &[])).collect()
    }

    /// First exponent (in half-units) where the two series differ, checked
    /// through min(truncations); `None` when equal throughout.
    pub fn first_mismatch(&self, other: &GradedSeries) -> Option<i64> {
        assert_eq!(self.fugacity_count, other.fugacity_count);
        let trunc = self.truncation.min(other.truncation).halves();
        let keys: std::collections::BTreeSet<&(i64, Vec<i64>)> = self
            .coefficients
            .keys()
            .chain(other.coefficients.keys())
            .filter(|(h, _)| *h <= trunc)
            .collect();
        keys.into_iter()
            .find(|k| self.coefficients.get(*k) != other.coefficients.get(*k))
            .map(|(h, _)| *h)
    }

    /// Sorted `q^(p/2) * b^(v): c` lines.
    pub fn render(&self) -> String {
        let mut lines = Vec::with_capacity(self.coefficients.len());
        for ((h, v), c) in &self.coefficients {
            let q = HalfInt::new_halves(*h);
            let mut line = format!("q^({q})");
            if !v.is_empty() {
                let fug = v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                line.push_str(&format!(" * b^({fug})"));
            }
            line.push_str(&format!(": {}", format_rat(c)));
            lines.push(line);
        }
        lines.join("\n")
    }

    /// JSON form: array of [exponent_half_units, fugacity_vector,
    /// numerator, denominator], all numbers rendered as strings.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .coefficients
            .iter()
            .map(|((h, v), c)| {
                serde_json::json!([
                    h.to_string(),
                    v.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    c.numer().to_string(),
                    c.denom().to_string(),
                ])
            })
            .collect();
        serde_json::Value::Array(entries)
    }
}

impl fmt::Display for GradedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}
