//! Exact spectral statistics of random increasing trees.
//!
//! The crate computes eigenvalue multiplicities of tree matrices in exact
//! arithmetic over Q(α), grows and enumerates the two classical increasing
//! tree families (recursive and binary increasing), evaluates the constants
//! of the limit laws for the multiplicity of a fixed eigenvalue by
//! quadrature and by exact rational series, and runs Monte Carlo harnesses
//! that cross-validate all of these routes against each other.
//!
//! Everything is deterministic given a seed: sampling uses per-sample
//! derived ChaCha streams and all aggregation is order-fixed, so identical
//! inputs give bit-identical reports on any thread count.

pub mod asymptotics;
pub mod experiments;
pub mod field;
pub mod gen;
pub mod poly;
pub mod rng;
pub mod spectral;
pub mod tree;

pub use asymptotics::{
    a_func, closed_form_check, constants_bin, constants_rec, constants_report, euler_gompertz,
    series_solve, ConstantsReport, QuadratureResult, SeriesTable,
};
pub use experiments::{
    exact_toll_expectation, extrapolate_mu, forcing_check, fringe_mu, independence_report,
    mc_clt, mc_clt_multi, mc_samples, toll_series, MCReport, TollSeriesReport,
};
pub use field::{nf_inverse, EigenvalueSpec, FieldElement, SpectralError};
pub use gen::{enum_shapes, gen_binary, gen_recursive, EnumLimits, Family, GenError, ShapeAtom};
pub use poly::{factor_multiplicity, IntPoly, RatPoly};
pub use rng::RngSeed;
pub use spectral::{
    char_poly, multiplicity, multiplicity_zero_fast, sign_type_zero, toll, MatrixKind,
};
pub use tree::{
    automorphism_count, canonical_key, count_fringe, leaves_quasipendants, matching_number,
    FringePattern, IsoMode, RootedTree, ShapeKey, TreeError,
};
