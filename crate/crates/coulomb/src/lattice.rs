//! Exact integer-lattice linear algebra.
//!
//! Charge matrices, Smith normal form with unimodular witnesses, and the
//! dual torus exact sequences used by the hypertoric duality check. All
//! lattices are Z^k with explicit bases; everything is plain matrix algebra
//! over the integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "expected {}x{}={} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    /// Build from rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Shape(format!(
                    "row {} has length {}, expected {}",
                    i,
                    r.len(),
                    cols
                )));
            }
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        // Accumulate in i128: entries are exact, never silently wrapped, and
        // unimodular witnesses from the Smith form can be large.
        let mut acc = vec![0i128; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)] as i128;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    acc[idx] = acc[idx]
                        .checked_add(a * other[(k, j)] as i128)
                        .ok_or(Error::Overflow("matrix product"))?;
                }
            }
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for (slot, v) in out.entries.iter_mut().zip(acc) {
            *slot = i64::try_from(v).map_err(|_| Error::Overflow("matrix product"))?;
        }
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Rank over Q, via the Smith normal form.
    pub fn rank(&self) -> usize {
        smith_normal_form(self).diag_rank()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Exact dot product of an integer covector against an integer vector.
pub fn pairing(a: &[i64], lambda: &[i64]) -> Result<i64> {
    if a.len() != lambda.len() {
        return Err(Error::Shape(format!(
            "pairing length mismatch: covector has {}, vector has {}",
            a.len(),
            lambda.len()
        )));
    }
    Ok(a.iter().zip(lambda).map(|(x, y)| x * y).sum())
}

/// Smith normal form with unimodular witnesses: `u * m * v = d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Number of nonzero diagonal entries (= rank of the input).
    pub fn diag_rank(&self) -> usize {
        let n = self.d.rows().min(self.d.cols());
        (0..n).filter(|&i| self.d[(i, i)] != 0).count()
    }

    /// The nonzero elementary divisors, in divisibility order.
    pub fn divisors(&self) -> Vec<i64> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)]).filter(|&x| x != 0).collect()
    }
}

// Working copy in arbitrary precision: elimination fill-in has no a-priori
// bound (witness entries can grow doubly exponentially in pathological
// inputs), so the working arrays are BigInt and only the final matrices
// convert back to i64.
struct Work {
    rows: usize,
    cols: usize,
    m: Vec<BigInt>,
    u: Vec<BigInt>,
    v: Vec<BigInt>,
}

// Nearest-integer quotient: the remainder a - q*p has |r| <= |p|/2, which
// keeps elimination fill-in far smaller than floor division would.
fn balanced_quotient(a: &BigInt, p: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + p).div_floor(&(p * &two))
}

impl Work {
    fn at(&self, i: usize, j: usize) -> &BigInt {
        &self.m[i * self.cols + j]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.m.swap(a * self.cols + j, b * self.cols + j);
        }
        for j in 0..self.rows {
            self.u.swap(a * self.rows + j, b * self.rows + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.m.swap(i * self.cols + a, i * self.cols + b);
        }
        for i in 0..self.cols {
            self.v.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    // row a -= q * row b, mirrored in u
    fn row_sub(&mut self, a: usize, q: &BigInt, b: usize) {
        for j in 0..self.cols {
            let x = &self.m[b * self.cols + j] * q;
            self.m[a * self.cols + j] -= x;
        }
        for j in 0..self.rows {
            let x = &self.u[b * self.rows + j] * q;
            self.u[a * self.rows + j] -= x;
        }
    }

    // col a -= q * col b, mirrored in v
    fn col_sub(&mut self, a: usize, q: &BigInt, b: usize) {
        for i in 0..self.rows {
            let x = &self.m[i * self.cols + b] * q;
            self.m[i * self.cols + a] -= x;
        }
        for i in 0..self.cols {
            let x = &self.v[i * self.cols + b] * q;
            self.v[i * self.cols + a] -= x;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let x = std::mem::take(&mut self.m[a * self.cols + j]);
            self.m[a * self.cols + j] = -x;
        }
        for j in 0..self.rows {
            let x = std::mem::take(&mut self.u[a * self.rows + j]);
            self.u[a * self.rows + j] = -x;
        }
    }
}

/// Smith normal form of an integer matrix.
///
/// Returns witnesses with `u` (rows x rows) and `v` (cols x cols) unimodular,
/// `d` diagonal with each diagonal entry dividing the next, all nonnegative.
/// Total function: never fails.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let rows = m.rows();
    let cols = m.cols();
    let mut w = Work {
        rows,
        cols,
        m: m.entries.iter().map(|&e| BigInt::from(e)).collect(),
        u: IntMatrix::identity(rows).entries.iter().map(|&e| BigInt::from(e)).collect(),
        v: IntMatrix::identity(cols).entries.iter().map(|&e| BigInt::from(e)).collect(),
    };

    let n = rows.min(cols);
    let mut t = 0;
    'outer: while t < n {
        // Promote the globally smallest nonzero entry of the trailing block
        // and sweep row/column t with balanced quotients; any leftover
        // remainder is at most half the pivot, so re-selecting after each
        // sweep terminates quickly and keeps fill-in small.
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let e = w.at(i, j);
                    if !e.is_zero()
                        && pivot.map_or(true, |(pi, pj)| e.abs() < w.at(pi, pj).abs())
                    {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else { break 'outer };
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            let mut cleared = true;
            for i in t + 1..rows {
                let q = balanced_quotient(w.at(i, t), w.at(t, t));
                if !q.is_zero() {
                    w.row_sub(i, &q, t);
                }
                if !w.at(i, t).is_zero() {
                    cleared = false;
                }
            }
            for j in t + 1..cols {
                let q = balanced_quotient(w.at(t, j), w.at(t, t));
                if !q.is_zero() {
                    w.col_sub(j, &q, t);
                }
                if !w.at(t, j).is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }

        // divisibility: pivot must divide the whole trailing block
        let p = w.at(t, t).clone();
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !(w.at(i, j) % &p).is_zero() {
                    // fold the offending row into row t and redo this step
                    w.row_sub(t, &BigInt::from(-1), i);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            if w.at(t, t).is_negative() {
                w.negate_row(t);
            }
            t += 1;
        }
    }

    let to_i64 = |v: &[BigInt], r: usize, c: usize| -> IntMatrix {
        IntMatrix {
            rows: r,
            cols: c,
            entries: v
                .iter()
                .map(|e| e.to_i64().expect("Smith normal form entry exceeds i64"))
                .collect(),
        }
    };
    Smith {
        u: to_i64(&w.u, rows, rows),
        d: to_i64(&w.m, rows, cols),
        v: to_i64(&w.v, cols, cols),
    }
}

/// Cokernel of a torus inclusion, with its torsion diagnostic.
#[derive(Clone, Debug)]
pub struct Cokernel {
    /// Rows form a basis of the saturation of the left-kernel of the input.
    pub charges: IntMatrix,
    /// Product of the elementary divisors; 1 exactly when the embedding is
    /// saturated. A value > 1 flags a finite pi_0 quotient, which is reported
    /// but not modeled further.
    pub torsion_index: i64,
}

/// Quotient charges of a torus embedding `B` (d x n, full column rank):
/// the rows of the result are a basis of the saturated left-kernel of `B`,
/// so `charges * B = 0` exactly.
pub fn cokernel(b: &IntMatrix) -> Result<Cokernel> {
    let snf = smith_normal_form(b);
    let rank = snf.diag_rank();
    if rank < b.cols() {
        return Err(Error::DegenerateEmbedding {
            rank,
            cols: b.cols(),
        });
    }
    // u * b * v = d with the first `rank` diagonal entries nonzero, so the
    // trailing rows of u kill b from the left; u unimodular makes them a
    // saturated basis.
    let d = b.rows();
    let mut rows = Vec::with_capacity(d - rank);
    for i in rank..d {
        rows.push(snf.u.row(i).to_vec());
    }
    let charges = IntMatrix::from_rows(&rows)?;
    let charges = if d == rank {
        IntMatrix::zero(0, d)
    } else {
        charges
    };
    let torsion_index = snf.divisors().iter().product();
    Ok(Cokernel { charges, torsion_index })
}

/// The charge-matrix view of `cokernel`.
pub fn cokernel_charges(b: &IntMatrix) -> Result<IntMatrix> {
    Ok(cokernel(b)?.charges)
}

/// Weights of the standard coordinates of C^d restricted along `B`:
/// row i of `B` is the weight of coordinate i on the embedded torus.
pub fn restrict_weights(b: &IntMatrix) -> IntMatrix {
    b.clone()
}

/// Exact sequence of tori `1 -> T -> T~ -> T_F -> 1` in cocharacter bases,
/// together with the dual-side inclusion.
#[derive(Clone, Debug)]
pub struct DualSequence {
    /// Cocharacters of T inside T~ = (C*)^d.
    pub inclusion: IntMatrix,
    /// Characters of T~ spanning the quotient lattice (charges of T_F).
    pub quotient: IntMatrix,
    /// Cocharacters of T_F-dual inside T~-dual; equals `quotient` transposed.
    pub dual_inclusion: IntMatrix,
}

impl DualSequence {
    pub fn from_inclusion(b: &IntMatrix) -> Result<Self> {
        let quotient = cokernel_charges(b)?;
        let dual_inclusion = quotient.transpose();
        Ok(DualSequence {
            inclusion: b.clone(),
            quotient,
            dual_inclusion,
        })
    }
}

/// Does the integer row lattice of `basis` contain `v`?
///
/// Solves `x * basis = v` over Z via the Smith form.
pub fn row_lattice_contains(basis: &IntMatrix, v: &[i64]) -> Result<bool> {
    if v.len() != basis.cols() {
        return Err(Error::Shape(format!(
            "vector length {} does not match lattice ambient dimension {}",
            v.len(),
            basis.cols()
        )));
    }
    // x * B = v  <=>  B^T x^T = v^T; with U B^T V = D this becomes
    // D y = U v^T with x^T = V y.
    let bt = basis.transpose();
    let snf = smith_normal_form(&bt);
    let uv: Vec<i64> = (0..bt.rows())
        .map(|i| pairing(snf.u.row(i), v).unwrap())
        .collect();
    let n = bt.rows().min(bt.cols());
    for (i, &val) in uv.iter().enumerate() {
        if i < n {
            let d = snf.d[(i, i)];
            if d == 0 {
                if val != 0 {
                    return Ok(false);
                }
            } else if val % d != 0 {
                return Ok(false);
            }
        } else if val != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Basis for the saturation of the row space of `m`, as rows.
///
/// Computed as the left-kernel of the right-kernel, which is saturated by
/// construction.
pub fn saturated_row_basis(m: &IntMatrix) -> Result<IntMatrix> {
    // right kernel of m = left kernel of m^T, transposed back to columns
    let left_of_t = match cokernel(&m.transpose()) {
        Ok(c) => c.charges,
        Err(Error::DegenerateEmbedding { .. }) => {
            // m^T not of full column rank: compute via SNF directly
            let snf = smith_normal_form(&m.transpose());
            let rank = snf.diag_rank();
            let rows: Vec<Vec<i64>> = (rank..m.rows()).map(|i| snf.u.row(i).to_vec()).collect();
            if rows.is_empty() {
                IntMatrix::zero(0, m.rows())
            } else {
                IntMatrix::from_rows(&rows)?
            }
        }
        Err(e) => return Err(e),
    };
    let right_kernel_cols = left_of_t.transpose(); // m * right_kernel_cols = 0
    if right_kernel_cols.cols() == 0 {
        // full row-rank over Q in all directions: saturation is Z^cols
        return Ok(IntMatrix::identity(m.cols()));
    }
    let snf = smith_normal_form(&right_kernel_cols);
    let rank = snf.diag_rank();
    let rows: Vec<Vec<i64>> = (rank..m.cols()).map(|i| snf.u.row(i).to_vec()).collect();
    if rows.is_empty() {
        Ok(IntMatrix::zero(0, m.cols()))
    } else {
        IntMatrix::from_rows(&rows)
    }
}
