//! Shared helpers for the integration suites: seeded samplers for random
//! theories and algebra elements, plus closed-form series oracles.  Every
//! random draw goes through a caller-provided ChaCha stream so failures
//! reproduce exactly.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use coulomb::algebra::AlgebraElement;
use coulomb::poly::Poly;
use coulomb::rat::{ratio, HalfInt, Rat};
use coulomb::series::GradedSeries;
use coulomb::theory::TorusTheory;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A torus theory with uniformly drawn shape: rank in 1..=max_rank, between
/// 1 and max_matter covectors, entries in [-bound, bound].
pub fn random_torus(
    r: &mut ChaCha8Rng,
    max_rank: usize,
    max_matter: usize,
    bound: i64,
) -> TorusTheory {
    let rank = r.gen_range(1..=max_rank);
    let count = r.gen_range(1..=max_matter);
    let matter: Vec<Vec<i64>> = (0..count)
        .map(|_| (0..rank).map(|_| r.gen_range(-bound..=bound)).collect())
        .collect();
    TorusTheory::new(rank, matter).expect("consistent shape")
}

/// As [`random_torus`], but resampled until the positivity check passes, so
/// Hilbert series and graded bases exist.
pub fn random_positive_torus(
    r: &mut ChaCha8Rng,
    max_rank: usize,
    max_matter: usize,
    bound: i64,
) -> TorusTheory {
    loop {
        let t = random_torus(r, max_rank, max_matter, bound);
        if t.check_positivity().is_ok() {
            return t;
        }
    }
}

/// As [`random_positive_torus`], but with every covector nonzero, so the
/// theory has generic base points (a zero covector vanishes everywhere).
pub fn random_fiber_torus(
    r: &mut ChaCha8Rng,
    max_rank: usize,
    max_matter: usize,
    bound: i64,
) -> TorusTheory {
    loop {
        let t = random_positive_torus(r, max_rank, max_matter, bound);
        if t.matter().iter().all(|a| a.iter().any(|&x| x != 0)) {
            return t;
        }
    }
}

fn random_rat(r: &mut ChaCha8Rng) -> Rat {
    let num = r.gen_range(-9..=9i64);
    let den = r.gen_range(1..=3i64);
    ratio(num, den)
}

/// A random polynomial in the w-variables only (degree ≤ 2, a few terms),
/// embedded in the theory's full variable space.  Never the zero polynomial
/// unless `allow_zero`.
pub fn random_w_poly(r: &mut ChaCha8Rng, theory: &TorusTheory, allow_zero: bool) -> Poly {
    let nv = theory.nvars();
    let n = theory.rank();
    loop {
        let mut p = Poly::zero(nv);
        for _ in 0..r.gen_range(1..=2) {
            let mut mono = Poly::constant(nv, random_rat(r));
            for _ in 0..r.gen_range(0..=2) {
                let j = r.gen_range(0..n);
                mono = mono.mul(&Poly::var(nv, j));
            }
            p = p.add(&mono);
        }
        if allow_zero || !p.is_zero() {
            return p;
        }
    }
}

/// A random algebra element: one or two sectors with small entries, each
/// dressed by a random w-polynomial coefficient.
pub fn random_element(r: &mut ChaCha8Rng, theory: &TorusTheory, sector_bound: i64) -> AlgebraElement {
    let n = theory.rank();
    let mut acc = AlgebraElement::zero(theory);
    for _ in 0..r.gen_range(1..=2) {
        let sector: Vec<i64> = (0..n).map(|_| r.gen_range(-sector_bound..=sector_bound)).collect();
        let coeff = random_w_poly(r, theory, false);
        let term = AlgebraElement::from_term(theory, sector, coeff).expect("consistent element");
        acc = acc.add(&term).expect("same theory");
    }
    acc
}

/// A single-sector element `X_sector` with coefficient 1.
pub fn generator(theory: &TorusTheory, sector: &[i64]) -> AlgebraElement {
    coulomb::monopole_generator(theory, sector).expect("valid sector")
}

/// Closed-form oracle: Π_{i=1..power} 1/(1 - q^{step_halves/2}) truncated.
pub fn geometric_pow(order: HalfInt, step_halves: i64, power: usize) -> GradedSeries {
    let mut s = GradedSeries::one(order, 0);
    for _ in 0..power {
        s = s.mul(&GradedSeries::geometric(order, step_halves, &[]));
    }
    s
}

/// Closed-form oracle for (1+q)/(1-q)^2: coefficient of q^k is 2k+1.
pub fn odd_tower(order: HalfInt) -> GradedSeries {
    let mut s = GradedSeries::new(order, 0);
    let mut k = 0i64;
    while 2 * k <= order.halves() {
        s.add_term(2 * k, vec![], coulomb::rat::rat(2 * k + 1));
        k += 1;
    }
    s
}
