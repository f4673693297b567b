//! Monopole-formula Hilbert series for products of GL and torus factors.
//!
//! The series is a sum over dominant coweights λ of q^{Δ(λ)} times a
//! dressing factor from the stabilizer of λ, optionally refined by π₁
//! fugacities. Enumeration is certified. For an abelian group (no roots)
//! the support {Δ ≤ order} is computed exactly by inverting the image box
//! of n independent matter weights. Otherwise Δ is positively homogeneous,
//! so a per-shell minimum combined with an explicit Lipschitz constant
//! yields a provable L1 bound on the support. A coweight with Δ ≤ 0 off
//! the origin is returned as a divergence witness; if no bound can be
//! certified within the scan budget the failure is reported as such,
//! never as an empty tail.

use std::ops::Range;

use crate::rat::{HalfInt, Rat};
use crate::series::GradedSeries;
use crate::theory::TorusTheory;
use crate::{Error, Result};

/// One factor of the gauge group.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GroupFactor {
    /// GL(n): coweight block of length n, dominance λ_1 ≥ ... ≥ λ_n,
    /// positive roots e_a − e_b (a < b).
    GL(usize),
    /// (C*)^r: no roots, no dominance condition.
    Torus(usize),
}

impl GroupFactor {
    fn size(&self) -> usize {
        match *self {
            GroupFactor::GL(n) => n,
            GroupFactor::Torus(r) => r,
        }
    }
}

/// A product of GL and torus factors with matter weights on the coweight
/// lattice of the maximal torus.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NonabelianTheory {
    factors: Vec<GroupFactor>,
    matter_weights: Vec<Vec<i64>>,
    /// Derived: e_a − e_b (a < b) within each GL block.
    positive_roots: Vec<Vec<i64>>,
    /// Derived: coweight index range of each factor.
    block_ranges: Vec<Range<usize>>,
}

impl NonabelianTheory {
    pub fn new(factors: Vec<GroupFactor>, matter_weights: Vec<Vec<i64>>) -> Result<Self> {
        let rank: usize = factors.iter().map(|f| f.size()).sum();
        for (i, w) in matter_weights.iter().enumerate() {
            if w.len() != rank {
                return Err(Error::Shape(format!(
                    "matter weight {} has length {}, expected total rank {}",
                    i,
                    w.len(),
                    rank
                )));
            }
        }
        let mut block_ranges = Vec::with_capacity(factors.len());
        let mut at = 0;
        for f in &factors {
            block_ranges.push(at..at + f.size());
            at += f.size();
        }
        let mut positive_roots = Vec::new();
        for (f, range) in factors.iter().zip(&block_ranges) {
            if let GroupFactor::GL(_) = f {
                for a in range.clone() {
                    for b in a + 1..range.end {
                        let mut root = vec![0i64; rank];
                        root[a] = 1;
                        root[b] = -1;
                        positive_roots.push(root);
                    }
                }
            }
        }
        Ok(NonabelianTheory {
            factors,
            matter_weights,
            positive_roots,
            block_ranges,
        })
    }

    /// View a torus theory through the nonabelian interface (masses are a
    /// ring-side deformation and do not enter the series).
    pub fn from_torus(t: &TorusTheory) -> Self {
        NonabelianTheory::new(
            vec![GroupFactor::Torus(t.rank())],
            t.matter().to_vec(),
        )
        .expect("torus weights are validated already")
    }

    pub fn factors(&self) -> &[GroupFactor] {
        &self.factors
    }

    pub fn matter_weights(&self) -> &[Vec<i64>] {
        &self.matter_weights
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn total_rank(&self) -> usize {
        self.block_ranges.last().map_or(0, |r| r.end)
    }

    /// The same theory as a [`TorusTheory`] when every factor is abelian
    /// (GL(1) or a torus block); `None` otherwise.
    pub fn as_torus(&self) -> Option<TorusTheory> {
        let abelian = self
            .factors
            .iter()
            .all(|f| matches!(f, GroupFactor::GL(1) | GroupFactor::Torus(_)));
        if !abelian {
            return None;
        }
        Some(
            TorusTheory::new(self.total_rank(), self.matter_weights.clone())
                .expect("weights validated at construction"),
        )
    }

    /// Weyl group orders per factor (n! for GL(n), 1 for a torus).
    pub fn weyl_orders(&self) -> Vec<u64> {
        self.factors
            .iter()
            .map(|f| match *f {
                GroupFactor::GL(n) => (1..=n as u64).product(),
                GroupFactor::Torus(_) => 1,
            })
            .collect()
    }

    /// Number of π₁ fugacities: one per GL factor, the block rank per
    /// torus factor.
    pub fn fugacity_dim(&self) -> usize {
        self.factors
            .iter()
            .map(|f| match *f {
                GroupFactor::GL(_) => 1,
                GroupFactor::Torus(r) => r,
            })
            .sum()
    }

    /// π₁ class of a coweight: determinant sum per GL factor, the block
    /// itself per torus factor.
    pub fn pi1_class(&self, lam: &[i64]) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.fugacity_dim());
        for (f, range) in self.factors.iter().zip(&self.block_ranges) {
            match f {
                GroupFactor::GL(_) => out.push(lam[range.clone()].iter().sum()),
                GroupFactor::Torus(_) => out.extend_from_slice(&lam[range.clone()]),
            }
        }
        out
    }

    /// Monopole dimension in half-units:
    /// 2Δ(λ) = Σ_ρ |⟨ρ,λ⟩| − 2 Σ_{α>0} |⟨α,λ⟩|.
    fn delta_halves(&self, lam: &[i64]) -> i64 {
        let mut h: i64 = 0;
        for w in &self.matter_weights {
            h += dot(w, lam).abs();
        }
        for a in &self.positive_roots {
            h -= 2 * dot(a, lam).abs();
        }
        h
    }

    pub fn monopole_delta(&self, lam: &[i64]) -> Result<HalfInt> {
        if lam.len() != self.total_rank() {
            return Err(Error::Shape(format!(
                "coweight has length {}, expected total rank {}",
                lam.len(),
                self.total_rank()
            )));
        }
        Ok(HalfInt::new_halves(self.delta_halves(lam)))
    }

    /// Is λ dominant (non-increasing within each GL block)?
    pub fn is_dominant(&self, lam: &[i64]) -> bool {
        self.factors.iter().zip(&self.block_ranges).all(|(f, r)| match f {
            GroupFactor::GL(_) => lam[r.clone()].windows(2).all(|w| w[0] >= w[1]),
            GroupFactor::Torus(_) => true,
        })
    }

    /// The dominant Weyl representative (sort each GL block descending).
    pub fn dominant_representative(&self, lam: &[i64]) -> Vec<i64> {
        let mut out = lam.to_vec();
        for (f, r) in self.factors.iter().zip(&self.block_ranges) {
            if let GroupFactor::GL(_) = f {
                out[r.clone()].sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        out
    }

    /// Dressing factor of λ: Π 1/(1−q^d) over the Casimir degrees of the
    /// stabilizer — degrees 1..b for each multiplicity-b cluster of equal
    /// entries in a GL block, degree 1 per torus coordinate.
    pub fn dressing_factor(&self, lam: &[i64], order: HalfInt) -> Result<GradedSeries> {
        if lam.len() != self.total_rank() {
            return Err(Error::Shape(format!(
                "coweight has length {}, expected total rank {}",
                lam.len(),
                self.total_rank()
            )));
        }
        let mut out = GradedSeries::one(order, 0);
        for (f, r) in self.factors.iter().zip(&self.block_ranges) {
            match f {
                GroupFactor::Torus(_) => {
                    for _ in r.clone() {
                        out = out.mul(&GradedSeries::geometric(order, 2, &[]));
                    }
                }
                GroupFactor::GL(_) => {
                    let block = &lam[r.clone()];
                    let mut i = 0;
                    while i < block.len() {
                        let mut j = i;
                        while j < block.len() && block[j] == block[i] {
                            j += 1;
                        }
                        for d in 1..=(j - i) as i64 {
                            out = out.mul(&GradedSeries::geometric(order, 2 * d, &[]));
                        }
                        i = j;
                    }
                }
            }
        }
        Ok(out)
    }

    /// All dominant coweights with the given L1 norm.
    fn dominant_shell(&self, l1: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut acc = Vec::with_capacity(self.total_rank());
        self.shell_rec(0, l1, &mut acc, &mut out);
        out
    }

    fn shell_rec(&self, block: usize, budget: i64, acc: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if block == self.factors.len() {
            if budget == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let size = self.factors[block].size();
        let last = block + 1 == self.factors.len();
        let dominant = matches!(self.factors[block], GroupFactor::GL(_));
        // budget for this block: exact remainder if last, else any split
        let budgets = if last { budget..budget + 1 } else { 0..budget + 1 };
        for b in budgets {
            block_tuples(size, b, dominant, acc, &mut |acc| {
                self.shell_rec(block + 1, budget - b, acc, out);
            });
        }
    }

    /// Monopole-formula Hilbert series up to `order`.
    pub fn monopole_hilbert_series(
        &self,
        order: HalfInt,
        include_fugacities: bool,
    ) -> Result<GradedSeries> {
        let k = if include_fugacities { self.fugacity_dim() } else { 0 };
        let order_h = order.halves();
        let mut out = GradedSeries::new(order, k);
        if order_h < 0 {
            return Ok(out);
        }
        let n = self.total_rank();
        if n == 0 {
            out.add_term(0, vec![], Rat::from_integer(1.into()));
            return Ok(out);
        }

        for lam in self.certified_support(order_h)? {
            let d = self.delta_halves(&lam);
            debug_assert!(d >= 0 && d <= order_h);
            let fugs = if include_fugacities { self.pi1_class(&lam) } else { vec![] };
            let dress = self.dressing_factor(&lam, order)?.with_fugacity_dim(k);
            let term = dress.mul(&GradedSeries::monomial(order, d, fugs));
            out = out.add(&term);
        }
        Ok(out)
    }

    /// All dominant λ with Δ(λ) ≤ order (in half-units), with a certified
    /// completeness bound; errors on divergence or an uncertifiable scan.
    fn certified_support(&self, order_h: i64) -> Result<Vec<Vec<i64>>> {
        // Rootless groups are abelian: every coweight is dominant and
        // 2Δ(λ) = Σ|⟨w,λ⟩| is a polyhedral norm whose sublevel sets invert
        // exactly through any n independent weights — no scan bound needed.
        if self.positive_roots.is_empty() {
            let t = self.as_torus().expect("rootless factors are abelian");
            t.check_positivity()?;
            return Ok(crate::theory::bounded_weight_points(
                &self.matter_weights,
                self.total_rank(),
                order_h,
            )
            .expect("positivity guarantees full rank"));
        }

        let n = self.total_rank() as i64;
        // Lipschitz constant of 2Δ with respect to the L1 norm
        let k_h: i64 = (0..n as usize)
            .map(|j| {
                self.matter_weights.iter().map(|w| w[j].abs()).sum::<i64>()
                    + 2 * self.positive_roots.iter().map(|a| a[j].abs()).sum::<i64>()
            })
            .max()
            .unwrap_or(0);
        let rad = (n + 1) / 2;
        let slack = (k_h * n + 1) / 2; // ⌈K·n/2⌉

        let mut support = vec![vec![0i64; n as usize]];
        let mut shell_min: Vec<i64> = vec![0]; // index L → min 2Δ on shell L
        let mut best_bound: Option<i64> = None;
        let mut points_scanned: usize = 0;
        const POINT_BUDGET: usize = 5_000_000;
        let l_max = 64.max(16 * order_h);

        let mut l = 1i64;
        loop {
            if let Some(b) = best_bound {
                if l > b {
                    return Ok(support);
                }
            }
            if l > l_max || points_scanned > POINT_BUDGET {
                return Err(Error::SearchExhausted { shells_scanned: l - 1 });
            }
            let shell = self.dominant_shell(l);
            points_scanned += shell.len();
            let mut m = i64::MAX;
            for lam in shell {
                let d = self.delta_halves(&lam);
                if d <= 0 {
                    return Err(Error::Divergence { witness: lam });
                }
                if d <= order_h {
                    support.push(lam);
                }
                m = m.min(d);
            }
            shell_min.push(m);

            // certify with the window centered at l − rad: for real x on the
            // unit L1 sphere, round((l−rad)·x) lands in shells within the
            // window, so min(window) − ⌈K·n/2⌉ under-estimates (l−rad)·2Δ(x).
            let center = l - rad;
            if center > rad {
                let lo = (center - rad) as usize;
                let hi = (center + rad) as usize;
                let window_min = shell_min[lo..=hi].iter().copied().min().unwrap();
                let c_num = window_min - slack;
                if c_num > 0 {
                    // 2Δ(λ) ≥ c_num/center · ‖λ‖₁, so Δ ≤ order forces
                    // ‖λ‖₁ ≤ order_h·center/c_num
                    let b = (order_h * center + c_num - 1) / c_num;
                    best_bound = Some(best_bound.map_or(b, |old| old.min(b)));
                }
            }
            l += 1;
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Emit all integer tuples of the given length and exact L1 norm into
/// `acc`, non-increasing when `dominant`, calling `f` per completed tuple.
fn block_tuples(
    len: usize,
    norm: i64,
    dominant: bool,
    acc: &mut Vec<i64>,
    f: &mut impl FnMut(&mut Vec<i64>),
) {
    fn rec(
        left: usize,
        norm: i64,
        max_entry: i64,
        dominant: bool,
        acc: &mut Vec<i64>,
        f: &mut impl FnMut(&mut Vec<i64>),
    ) {
        if left == 0 {
            if norm == 0 {
                f(acc);
            }
            return;
        }
        // |remaining entries| must sum to `norm`; each entry is bounded by
        // `norm` in absolute value, and by the previous entry if dominant
        let hi = if dominant { max_entry.min(norm) } else { norm };
        for v in (-norm..=hi).rev() {
            let used = v.abs();
            if norm - used < 0 {
                continue;
            }
            // dominance prune: remaining entries are ≤ v, so if v < 0 they
            // all have magnitude ≥ |v| and must fit in the leftover norm
            if dominant && v < 0 && (left as i64 - 1) * v.abs() > norm - used {
                continue;
            }
            acc.push(v);
            rec(left - 1, norm - used, if dominant { v } else { i64::MAX }, dominant, acc, f);
            acc.pop();
        }
    }
    rec(len, norm, i64::MAX, dominant, acc, f);
}

/// Spec-surface alias for [`NonabelianTheory::monopole_delta`].
pub fn monopole_delta(theory: &NonabelianTheory, lam: &[i64]) -> Result<HalfInt> {
    theory.monopole_delta(lam)
}

/// Spec-surface alias for [`NonabelianTheory::dressing_factor`].
pub fn dressing_factor(
    theory: &NonabelianTheory,
    lam: &[i64],
    order: HalfInt,
) -> Result<GradedSeries> {
    theory.dressing_factor(lam, order)
}

/// Spec-surface alias for [`NonabelianTheory::monopole_hilbert_series`].
pub fn monopole_hilbert_series(
    theory: &NonabelianTheory,
    order: HalfInt,
    include_fugacities: bool,
) -> Result<GradedSeries> {
    theory.monopole_hilbert_series(order, include_fugacities)
}

/// Independent algebra-side series: counts graded-basis monomials
/// w^α X_λ per exact degree (no dressing factors, no lattice sum).
pub fn algebra_hilbert_series(theory: &TorusTheory, order: HalfInt) -> Result<GradedSeries> {
    let basis = crate::presentation::graded_basis(theory, order)?;
    let mut out = GradedSeries::new(order, 0);
    for (alpha, lam) in basis {
        let d = theory.delta_dimension(&lam)?.halves()
            + 2 * alpha.iter().map(|&a| a as i64).sum::<i64>();
        out.add_term(d, vec![], Rat::from_integer(1.into()));
    }
    Ok(out)
}
