//! Verifiers for the Bohr and Rogosinski type inequalities. Each returns a
//! [`VerificationReport`] whose margins are `RHS − LHS`.

mod bohr;
mod report;
mod rogosinski;

pub use bohr::{
    classical_bohr_check, majorant_property_check, milne_check, refined_bohr_check,
    refined_bohr_terms, sfunc, subordination_majorant_check, wiener_check, RefinedBohrTerms,
};
pub use report::{
    fingerprint, Mode, Status, VerificationReport, Violation, MAX_VIOLATIONS, SLACK_CLOSED_FORM,
    SLACK_RANDOM,
};
pub use rogosinski::{
    abel_identity_check, abel_identity_residual, parseval_bound_check, rogosinski_check,
    rogosinski_check_radii, rogosinski_lhs, rogosinski_terms, Coupling, RogosinskiTerms,
    RogosinskiVariant,
};
