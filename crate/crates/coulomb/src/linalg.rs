//! Exact linear algebra over the rationals for relation discovery.
//!
//! Forward elimination is fraction-free (Bareiss) on denominator-cleared
//! integer rows, so intermediate entries stay integral; rationals only
//! reappear in back-substitution. Everything is deterministic: pivots are
//! chosen by first nonzero position, never by magnitude.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rat::Rat;

/// Clear denominators row by row (row scaling preserves rank, row space,
/// and right kernel).
fn to_integer_rows(rows: &[Vec<Rat>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for x in row {
                lcm = lcm.lcm(x.denom());
            }
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect()
}

/// Fraction-free row echelon form. Returns (echelon rows, pivot columns);
/// row i has its leading nonzero entry in pivot column i.
fn bareiss_echelon(rows: &[Vec<Rat>]) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut m = to_integer_rows(rows);
    let nrows = m.len();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..nrows {
            for j in c + 1..ncols {
                let num = &m[i][j] * &m[r][c] - &m[i][c] * &m[r][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss divisibility");
                m[i][j] = num / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r.max(pivots.len()));
    (m, pivots)
}

/// Rank over Q.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    bareiss_echelon(rows).1.len()
}

/// Basis of the right kernel {x : M·x = 0}, deterministic: one vector per
/// free column in ascending order, with the free coordinate set to 1.
pub fn right_kernel(rows: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let (ech, pivots) = bareiss_echelon(rows);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut x = vec![Rat::zero(); ncols];
        x[free] = Rat::one();
        // back-substitute pivot rows in reverse
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let row = &ech[i];
            let mut acc = Rat::zero();
            for j in pc + 1..ncols {
                if !row[j].is_zero() && !x[j].is_zero() {
                    acc += Rat::from(row[j].clone()) * x[j].clone();
                }
            }
            x[pc] = -acc / Rat::from(row[pc].clone());
        }
        basis.push(x);
    }
    basis
}

/// An incrementally maintained row space in reduced row echelon form, used
/// to quotient new relation candidates by consequences of older ones.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    /// RREF rows: each has leading coefficient 1 in its pivot column, and
    /// pivot columns are zero in all other rows.
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new() -> Self {
        RowSpace::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residual of `v` after eliminating all pivot columns.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                *o -= c.clone() * r.clone();
            }
        }
        out
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Insert `v`; returns the normalized residual if it enlarged the
    /// space, `None` if `v` was already in it.
    pub fn insert(&mut self, v: &[Rat]) -> Option<Vec<Rat>> {
        let mut red = self.reduce(v);
        let pivot = red.iter().position(|x| !x.is_zero())?;
        let lead = red[pivot].clone();
        for x in &mut red {
            *x /= lead.clone();
        }
        // keep full RREF: clear the new pivot column from existing rows
        for row in &mut self.rows {
            if !row[pivot].is_zero() {
                let c = row[pivot].clone();
                for (r, n) in row.iter_mut().zip(&red) {
                    *r -= c.clone() * n.clone();
                }
            }
        }
        // insert sorted by pivot column
        let at = self.pivots.partition_point(|&p| p < pivot);
        self.pivots.insert(at, pivot);
        self.rows.insert(at, red.clone());
        Some(red)
    }
}
