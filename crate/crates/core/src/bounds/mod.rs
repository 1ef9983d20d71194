//! The auxiliary function `B`, its nonnegativity certificate, and the degree
//! bounds built on it.

pub mod anneal;
pub mod bfunc;
pub mod cert;
pub mod criteria;

pub use anneal::{anneal_coefficients, grid_min, AnnealResult};
pub use bfunc::{BFunction, BTerm, Singularity};
pub use cert::{locate_minimum, verify_b_nonneg, verify_b_nonneg_with, Neighborhood, NonnegCertificate, Piece};
pub use criteria::{
    degree_threshold, gamma, morrison_degree_bound, morrison_gap_check, morrison_rho, rho_infinity, trace_bound_criterion,
    GapReport, GapVerdict, TraceFactor, TraceVerdict,
};
