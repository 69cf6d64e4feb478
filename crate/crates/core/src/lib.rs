//! Exact enumeration of the semigroup of continued fractions with bounded
//! partial quotients, encoded as 2×2 integer matrices, together with the
//! number theory needed to predict how often each denominator occurs.
//!
//! The pieces fit together as a pipeline:
//!
//! * [`mat`] — the matrix encoding and the pair-generator alphabet;
//! * [`enumerator`] — pruned depth-first traversal producing exact
//!   multiplicity tallies and ball counts up to a denominator bound;
//! * [`number_theory`] — sieve, Möbius function, Ramanujan sums and the
//!   singular series ζ(2)·∏_{p|n}(p−1)/p;
//! * [`sl2`] — exhaustive SL₂(ℤ/qℤ) cross-checks of the closed-form local
//!   factors behind that series;
//! * [`analysis`] — power-law growth fitting and the heuristic multiplicity
//!   (2δ·|B_n|/n)·𝔊(n) compared against exact counts;
//! * [`equidist`] — residue-class statistics of the enumerated denominators.
//!
//! Everything exact stays in integer or rational arithmetic. The real-valued
//! layer is generic over the [`Real`] scalar; the aliases below pin the f64
//! instantiations used by the CLI and the test suites.

pub mod analysis;
pub mod enumerator;
pub mod equidist;
mod error;
pub mod mat;
pub mod number_theory;
pub mod real;
pub mod sl2;

pub use analysis::{
    compare, fit_growth, heuristic_mult, partial_sum_check, sphere_estimate, ComparisonRecord,
    PowerLawFit,
};
pub use enumerator::{enumerate, walk, EnumConfig, TallyTable};
pub use equidist::ResidueHistogram;
pub use error::{Error, Result};
pub use mat::{Alphabet, Mat2};
pub use number_theory::{
    average_singular, ramanujan_c, ramanujan_c_direct, singular_series,
    singular_series_truncated, SpfSieve,
};
pub use real::Real;
pub use sl2::{cbar_bruteforce, cbar_closed, order_formula, Sl2ModQ};

/// Exact rational values, wide enough for every group-averaged sum the
/// SL₂ oracle produces.
pub type Rational = num_rational::Ratio<i128>;

/// f64 instantiations of the scalar-generic analysis types.
pub type PowerLawFit64 = PowerLawFit<f64>;
pub type ComparisonRecord64 = ComparisonRecord<f64>;
