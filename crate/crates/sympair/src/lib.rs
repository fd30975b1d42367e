//! Exact-arithmetic verification engine for the symmetric pair
//! (GL_{n+k}, GL_n × GL_k) over the rationals.
//!
//! The crate has three layers:
//!
//! - [`rational`] and [`matrix`]: exact rational scalars and dense linear
//!   algebra, plus the pair's structure maps ε, θ, σ and the symmetrization
//!   s(g) = g·σ(g);
//! - [`graded`], [`orbits`], [`oracle`]: the graded sl₂ calculus, the
//!   enumeration of nilpotent orbit types as balanced signed partitions with
//!   the closed-form trace bound T < 0, and a matrix-level oracle that
//!   recomputes the same traces from explicit sl₂ realizations;
//! - [`poly`], [`descend`]: rational polynomials and the classification of
//!   descendants of σ-fixed semisimple elements into diagonal, Galois, and
//!   linear blocks.
//!
//! With the default `parallel` feature the orbit sweeps run on rayon;
//! disabling it falls back to equivalent sequential code.

pub mod descend;
pub mod graded;
pub mod matrix;
pub mod oracle;
pub mod orbits;
pub mod poly;
pub mod rational;

pub use descend::{
    check_sigma_fixed, classify_auto, classify_descendant, factor_min_poly,
    has_central_symmetrization, is_semisimple, minimal_polynomial, ClassifyError, DescendantPair,
    Factorization, DEFAULT_KRONECKER_DEGREE,
};
pub use graded::{hom_decomp, m_closed_form, m_first_principles, tensor, GradedDecomp, GradedIrrep, Parity};
pub use matrix::{EpsilonForm, LinAlgError, RationalMatrix};
pub use orbits::{
    enumerate_orbits, key_lemma_reports, key_lemma_sum, verify_all, KeyLemmaReport, OrbitError,
    SignedOrbit, VerifySummary,
};
pub use poly::RationalPoly;
pub use rational::{rat, rint, Rational};
