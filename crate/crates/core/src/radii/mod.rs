//! Bohr-radius constants, per-function and family radii, the convexity
//! constant, bound chains and the `L^q` witness.

mod chains;
mod constants;
mod convexity;
mod lq;
mod radius;

pub use chains::{chain_links, check_bound_chains, h_p, ChainLink, Direction};
pub use constants::{psi, rstar, rstar_from_xi, xi_objective, xi_p, xi_p_with_grid};
pub use convexity::{
    estimate_a_pn, estimate_a_pn_with_grid, from_tuple_values, lq_norm, phase_max_norm,
    sample_tuple, tuple_lambda_max, validate_convexity, ConvexityEstimate, PhaseConvention, Space,
    DEFAULT_THETA_GRID,
};
pub use lq::{lq_witness, lq_witness_closed_form};
pub use radius::{
    bohr_functional, family_radius_inf, full_series_radius, function_radius, leading_norms,
    radius_from_norms, radius_triple, record_radius_ordering, RadiusEstimate, RadiusKind,
    RadiusParams,
};
