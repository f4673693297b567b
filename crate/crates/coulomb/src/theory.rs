//! Torus gauge theories: rank-n gauge torus plus integer matter charges.
//!
//! The theory fixes the variable layout of every coefficient polynomial:
//! variables `0..n` are the equivariant parameters `w_1..w_n`, variable `n`
//! is `hbar`, and variables `n+1..n+1+f` are the masses `m_1..m_f`. All
//! enumeration here is exact: the sector enumerator is provably complete
//! (it scans the image coordinates `⟨a_i, λ⟩`, which the dimension bound
//! caps directly), and divergence is detected by an integer rank check,
//! never by a timeout.

use std::sync::Arc;

use crate::poly::Poly;
use crate::rat::HalfInt;
use crate::{lattice::IntMatrix, Error, Result};

#[derive(Debug, PartialEq, Eq)]
struct TheoryData {
    rank: usize,
    matter: Vec<Vec<i64>>,
    /// Flavor charge covectors, one per matter covector, each of length
    /// `mass_count`. Empty when the theory carries no mass deformation.
    flavor: Vec<Vec<i64>>,
    mass_count: usize,
}

/// A torus gauge theory `T = (C*)^n` acting on `N = C^d` with integer
/// charges, optionally deformed by flavor masses. Cheap to clone.
#[derive(Clone, Debug)]
pub struct TorusTheory {
    inner: Arc<TheoryData>,
}

impl PartialEq for TorusTheory {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner == other.inner
    }
}
impl Eq for TorusTheory {}

impl TorusTheory {
    /// A rank-n torus with the given matter charge covectors (no masses).
    pub fn new(rank: usize, matter: Vec<Vec<i64>>) -> Result<Self> {
        for (i, a) in matter.iter().enumerate() {
            if a.len() != rank {
                return Err(Error::Shape(format!(
                    "matter covector {} has length {}, expected rank {}",
                    i,
                    a.len(),
                    rank
                )));
            }
        }
        Ok(TorusTheory {
            inner: Arc::new(TheoryData {
                rank,
                matter,
                flavor: Vec::new(),
                mass_count: 0,
            }),
        })
    }

    /// The same theory with mass deformations turned on: `flavor[i]` is the
    /// flavor charge covector of matter direction `i`, and the linear form
    /// of direction `i` becomes `⟨a_i, w⟩ + ⟨flavor[i], m⟩`.
    pub fn with_masses(&self, flavor: Vec<Vec<i64>>) -> Result<Self> {
        if flavor.len() != self.inner.matter.len() {
            return Err(Error::Shape(format!(
                "got {} flavor covectors for {} matter covectors",
                flavor.len(),
                self.inner.matter.len()
            )));
        }
        let mass_count = flavor.first().map_or(0, |f| f.len());
        for (i, f) in flavor.iter().enumerate() {
            if f.len() != mass_count {
                return Err(Error::Shape(format!(
                    "flavor covector {} has length {}, expected {}",
                    i,
                    f.len(),
                    mass_count
                )));
            }
        }
        Ok(TorusTheory {
            inner: Arc::new(TheoryData {
                rank: self.inner.rank,
                matter: self.inner.matter.clone(),
                flavor,
                mass_count,
            }),
        })
    }

    pub fn rank(&self) -> usize {
        self.inner.rank
    }

    pub fn matter_count(&self) -> usize {
        self.inner.matter.len()
    }

    pub fn matter(&self) -> &[Vec<i64>] {
        &self.inner.matter
    }

    pub fn mass_count(&self) -> usize {
        self.inner.mass_count
    }

    pub fn flavor(&self) -> &[Vec<i64>] {
        &self.inner.flavor
    }

    /// Number of polynomial variables: w_1..w_n, hbar, m_1..m_f.
    pub fn nvars(&self) -> usize {
        self.inner.rank + 1 + self.inner.mass_count
    }

    pub fn w_var(&self, j: usize) -> usize {
        debug_assert!(j < self.inner.rank);
        j
    }

    pub fn hbar_var(&self) -> usize {
        self.inner.rank
    }

    pub fn mass_var(&self, j: usize) -> usize {
        debug_assert!(j < self.inner.mass_count);
        self.inner.rank + 1 + j
    }

    /// Variable names in layout order, for rendering.
    pub fn var_names(&self) -> Vec<String> {
        let n = self.inner.rank;
        let f = self.inner.mass_count;
        let mut names = Vec::with_capacity(self.nvars());
        for j in 0..n {
            names.push(if n == 1 { "w".to_string() } else { format!("w{}", j + 1) });
        }
        names.push("hbar".to_string());
        for j in 0..f {
            names.push(if f == 1 { "m".to_string() } else { format!("m{}", j + 1) });
        }
        names
    }

    /// The linear form `⟨a_i, w⟩ + ⟨flavor_i, m⟩` of matter direction `i`.
    pub fn linear_form(&self, i: usize) -> Poly {
        let nv = self.nvars();
        let mut p = Poly::zero(nv);
        for (j, &c) in self.inner.matter[i].iter().enumerate() {
            if c != 0 {
                p = p.add(&Poly::var(nv, self.w_var(j)).scale(&crate::rat::rat(c)));
            }
        }
        if let Some(f) = self.inner.flavor.get(i) {
            for (j, &c) in f.iter().enumerate() {
                if c != 0 {
                    p = p.add(&Poly::var(nv, self.mass_var(j)).scale(&crate::rat::rat(c)));
                }
            }
        }
        p
    }

    /// Monopole dimension `Δ(λ) = ½ Σ_i |⟨a_i, λ⟩|`: no root contribution
    /// for a torus, so the value is a nonnegative half-integer.
    pub fn delta_dimension(&self, lam: &[i64]) -> Result<HalfInt> {
        if lam.len() != self.inner.rank {
            return Err(Error::Shape(format!(
                "coweight has length {}, expected rank {}",
                lam.len(),
                self.inner.rank
            )));
        }
        let mut halves: i64 = 0;
        for a in &self.inner.matter {
            halves += crate::lattice::pairing(a, lam)?.abs();
        }
        Ok(HalfInt::new_halves(halves))
    }

    /// A nonzero coweight with `Δ ≡ 0` along its line, if one exists.
    ///
    /// `None` means the theory is positive (`Δ(λ) > 0` for all `λ ≠ 0`),
    /// which happens exactly when the charge matrix has full column rank.
    pub fn positivity_witness(&self) -> Option<Vec<i64>> {
        let n = self.inner.rank;
        if n == 0 {
            return None;
        }
        let m = IntMatrix::from_rows(&self.inner.matter).expect("validated at construction");
        if self.inner.matter.is_empty() {
            let mut w = vec![0; n];
            w[0] = 1;
            return Some(w);
        }
        let snf = crate::lattice::smith_normal_form(&m);
        let rank = snf.diag_rank();
        if rank == n {
            return None;
        }
        // U·M·V = D with diagonal rank short of n: column `rank` of V spans
        // part of the kernel of M, hence Δ vanishes on it.
        let witness: Vec<i64> = (0..n).map(|i| snf.v[(i, rank)]).collect();
        debug_assert!(witness.iter().any(|&x| x != 0));
        Some(witness)
    }

    pub fn check_positivity(&self) -> Result<()> {
        match self.positivity_witness() {
            None => Ok(()),
            Some(witness) => Err(Error::Divergence { witness }),
        }
    }

    /// All coweights with `Δ(λ) ≤ order`, in lexicographic order.
    pub fn enumerate_sectors(&self, order: HalfInt) -> Result<Vec<Vec<i64>>> {
        let n = self.inner.rank;
        let h = order.halves(); // 2·order, the cap on Σ|⟨a_i,λ⟩|
        if h < 0 {
            return Ok(Vec::new());
        }
        if n == 0 {
            return Ok(vec![vec![]]);
        }
        self.check_positivity()?;
        Ok(bounded_weight_points(&self.inner.matter, n, h)
            .expect("positivity guarantees n independent covectors"))
    }
}

/// All λ ∈ Z^n with Σᵢ|⟨aᵢ,λ⟩| ≤ h, in lexicographic order, or `None`
/// when the covectors span less than full rank (the set is then infinite).
///
/// Complete by construction: pick n linearly independent covectors
/// s_1..s_n; any admissible λ has `|⟨s_k, λ⟩| ≤ h`, so scanning the image
/// box [−h, h]^n and inverting catches everything.
pub(crate) fn bounded_weight_points(
    covectors: &[Vec<i64>],
    n: usize,
    h: i64,
) -> Option<Vec<Vec<i64>>> {
    if n == 0 {
        return Some(vec![vec![]]);
    }
    if h < 0 {
        return Some(Vec::new());
    }

    // Greedily select n independent rows of the charge matrix.
    let mut chosen: Vec<Vec<i64>> = Vec::with_capacity(n);
    for a in covectors {
        if chosen.len() == n {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(a.clone());
        let m = IntMatrix::from_rows(&trial).expect("uniform covector lengths");
        if m.rank() == trial.len() {
            chosen = trial;
        }
    }
    if chosen.len() < n {
        return None;
    }

    let s = IntMatrix::from_rows(&chosen).expect("uniform covector lengths");
    let (adj, det) = adjugate_i128(&s);
    debug_assert_ne!(det, 0);

    // λ = adj·y / det for y in the image box [−h, h]^n; keep the
    // integral solutions that meet the weight bound.
    let mut out = std::collections::BTreeSet::new();
    let mut y = vec![-h; n];
    'scan: loop {
        let mut lam = Vec::with_capacity(n);
        let mut integral = true;
        for r in 0..n {
            let num: i128 = (0..n).map(|c| adj[r * n + c] * y[c] as i128).sum();
            if num % det != 0 {
                integral = false;
                break;
            }
            lam.push(i64::try_from(num / det).expect("lattice point exceeds i64"));
        }
        if integral {
            let weight: i64 = covectors
                .iter()
                .map(|a| a.iter().zip(&lam).map(|(c, l)| c * l).sum::<i64>().abs())
                .sum();
            if weight <= h {
                out.insert(lam);
            }
        }
        // odometer increment over the box
        for k in 0..n {
            if y[k] < h {
                y[k] += 1;
                continue 'scan;
            }
            y[k] = -h;
        }
        break;
    }
    Some(out.into_iter().collect())
}

/// Adjugate and determinant of a small square integer matrix, in i128.
fn adjugate_i128(m: &IntMatrix) -> (Vec<i128>, i128) {
    let n = m.rows();
    assert_eq!(n, m.cols());
    let det = det_i128(m, &(0..n).collect::<Vec<_>>(), &(0..n).collect::<Vec<_>>());
    let mut adj = vec![0i128; n * n];
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let minor = det_i128(m, &rows, &cols);
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[i * n + j] = sign * minor;
        }
    }
    (adj, det)
}

fn det_i128(m: &IntMatrix, rows: &[usize], cols: &[usize]) -> i128 {
    match rows.len() {
        0 => 1,
        1 => m[(rows[0], cols[0])] as i128,
        _ => {
            let mut acc: i128 = 0;
            let sub_rows = &rows[1..];
            for (k, &c) in cols.iter().enumerate() {
                let a = m[(rows[0], c)] as i128;
                if a == 0 {
                    continue;
                }
                let sub_cols: Vec<usize> =
                    cols.iter().copied().filter(|&x| x != c).collect();
                let sign = if k % 2 == 0 { 1 } else { -1 };
                acc += sign * a * det_i128(m, sub_rows, &sub_cols);
            }
            acc
        }
    }
}
