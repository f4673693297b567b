//! Exact-arithmetic Coulomb branches of 3d N=4 gauge theories at desk
//! scale.
//!
//! For a torus gauge theory (rank-n torus acting on C^d through an integer
//! charge matrix) the crate builds the Coulomb-branch coordinate ring with
//! explicit structure constants, its ℏ-quantization as a shift-operator
//! algebra, gradings, mass deformations, and finite presentations found by
//! exact graded linear algebra. Independently of the ring, it computes
//! monopole-formula Hilbert series for torus and GL-product (quiver) gauge
//! theories, and Higgs-branch Molien series for hypertoric duals, so the
//! two sides can be cross-checked coefficient by coefficient.
//!
//! Every coefficient in the crate is an exact rational; degrees are
//! half-integers stored in doubled form. There is no floating point and no
//! truncation other than explicit series orders, and divergent (non-good)
//! theories are detected exactly and reported with a witness rather than
//! looped on.

pub mod algebra;
pub mod fiber;
pub mod grading;
pub mod higgs;
pub mod lattice;
pub mod linalg;
pub mod monopole;
pub mod poly;
pub mod presentation;
pub mod quiver;
pub mod rat;
pub mod series;
pub mod theory;

pub use algebra::{monopole_generator, multiply, poisson_bracket, topological_charge};
pub use algebra::{AlgebraElement, Charge, Convention, Mode};
pub use fiber::{generic_fiber_witness, FiberReport};
pub use grading::{degree, DegreeReport, GradingSpec};
pub use higgs::{
    duality_check, higgs_hilbert_series, invariant_counts, molien_selfcheck, DualityReport,
    HiggsInput,
};
pub use lattice::{
    cokernel, cokernel_charges, pairing, restrict_weights, smith_normal_form, Cokernel,
    DualSequence, IntMatrix, Smith,
};
pub use monopole::{
    algebra_hilbert_series, dressing_factor, monopole_delta, monopole_hilbert_series,
    GroupFactor, NonabelianTheory,
};
pub use presentation::{
    default_generators, find_relations, find_relations_with, graded_basis, verify_presentation,
    Generator, GeneratorKind, Presentation, VerifyReport,
};
pub use quiver::{quiver_to_theory, QuiverData};
pub use rat::{HalfInt, Rat};
pub use series::GradedSeries;
pub use theory::TorusTheory;

/// Unified error type for the whole crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Dimension or shape mismatch between inputs.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// Unparseable number, matrix, or theory description.
    #[error("parse error: {0}")]
    Parse(String),

    /// Two elements from different theories were combined.
    #[error("elements belong to different theories")]
    MixedTheories,

    /// The graded pieces are infinite-dimensional: the witness coweight has
    /// Δ = 0 along its whole line (or Δ ≤ 0 in the nonabelian case).
    #[error("divergent theory: Δ fails to grow along λ = {witness:?}")]
    Divergence { witness: Vec<i64> },

    /// The enumeration bound could not be certified within the scanned
    /// shells; neither convergence nor divergence is proven.
    #[error("search exhausted after scanning Σ|λ| ≤ {shells_scanned} without certifying the series support")]
    SearchExhausted { shells_scanned: i64 },

    /// A torus embedding whose matrix does not have full column rank.
    #[error("degenerate torus embedding: rank {rank} < {cols} columns")]
    DegenerateEmbedding { rank: usize, cols: usize },

    /// A fiber point on a matter hyperplane.
    #[error("non-generic point: matter direction {index} vanishes ({hyperplane})")]
    NonGeneric { index: usize, hyperplane: String },

    /// A commutator that is not divisible by ℏ (structure-constant bug).
    #[error("commutator is not divisible by hbar")]
    HbarDivision,

    /// Semantically invalid input (valid shape, unusable content).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An exact integer result left the i64 range.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// The chosen generators miss part of the ring below the degree bound.
    /// Each missed basis element is reported as (w-exponent, sector).
    #[error("generators do not span the ring up to the degree bound ({} basis elements missed)", missed.len())]
    IncompleteGenerators { missed: Vec<(Vec<u16>, Vec<i64>)> },
}

pub type Result<T> = std::result::Result<T, Error>;
