//! Consistency of estimated radii and convexity constants with the bound
//! chains relating them.
//!
//! Every estimate is either exact or an upper bound of the true quantity
//! (sampled infima). All bound expressions are increasing in their
//! arguments, so an inequality `L ≤ R` is only refuted by its estimates
//! when `L` is exact; otherwise a negative margin is reported as a note.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::convexity::{ConvexityEstimate, PhaseConvention};
use super::radius::{RadiusEstimate, RadiusKind};
use crate::inequalities::VerificationReport;
use crate::math::powf;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Exact,
    /// The estimate can only exceed the true value.
    Upper,
}

impl Direction {
    fn of(kind: RadiusKind) -> Self {
        match kind {
            RadiusKind::ExactScalar => Direction::Exact,
            RadiusKind::FamilyUpper | RadiusKind::WitnessBound => Direction::Upper,
        }
    }

    fn join(self, other: Self) -> Self {
        if self == Direction::Exact && other == Direction::Exact {
            Direction::Exact
        } else {
            Direction::Upper
        }
    }
}

/// One inequality `lhs ≤ rhs` of a chain, evaluated on estimates.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainLink {
    pub name: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub lhs_direction: Direction,
    pub rhs_direction: Direction,
}

impl ChainLink {
    pub fn margin(&self) -> f64 {
        self.rhs - self.lhs
    }

    /// Whether a violation would contradict the estimate directions.
    pub fn conclusive(&self) -> bool {
        self.lhs_direction == Direction::Exact
    }
}

/// `t / (1 + t^p)^{1/p}`.
pub fn h_p(p: f64, t: f64) -> f64 {
    t / powf(1.0 + powf(t, p), 1.0 / p)
}

/// The links of the chains: `R̃/(1+R̃^p)^{1/p} ≤ r_p ≤ R̃`, and when a
/// convexity estimate is given `A^{1/p}/(2N) ≤ R̃ ≤ A^{1/p}`, the monotone
/// image `h_p(A^{1/p}/2N) ≤ h_p(R̃)` and the combined
/// `A^{1/p}/(A + (2N)^p)^{1/p} ≤ r_p ≤ A^{1/p}`.
pub fn chain_links(
    p: f64,
    order: usize,
    convexity: Option<&ConvexityEstimate>,
    r_tilde: &RadiusEstimate,
    r_p: &RadiusEstimate,
) -> Vec<ChainLink> {
    let rt = r_tilde.value;
    let rp = r_p.value;
    let rt_dir = Direction::of(r_tilde.kind);
    let rp_dir = Direction::of(r_p.kind);
    let mut links = alloc::vec![
        ChainLink {
            name: "rp_lower_from_radius",
            lhs: h_p(p, rt),
            rhs: rp,
            lhs_direction: rt_dir,
            rhs_direction: rp_dir,
        },
        ChainLink {
            name: "rp_upper_radius",
            lhs: rp,
            rhs: rt,
            lhs_direction: rp_dir,
            rhs_direction: rt_dir,
        },
    ];
    if let Some(a) = convexity {
        let a_dir = Direction::Upper;
        let big_a = a.lambda_upper;
        let root = powf(big_a, 1.0 / p);
        let two_n = 2.0 * order as f64;
        links.extend([
            ChainLink {
                name: "radius_lower_from_convexity",
                lhs: root / two_n,
                rhs: rt,
                lhs_direction: a_dir,
                rhs_direction: rt_dir,
            },
            ChainLink {
                name: "radius_upper_from_convexity",
                lhs: rt,
                rhs: root,
                lhs_direction: rt_dir,
                rhs_direction: a_dir,
            },
            ChainLink {
                name: "monotone_image",
                lhs: h_p(p, root / two_n),
                rhs: h_p(p, rt),
                lhs_direction: a_dir,
                rhs_direction: rt_dir,
            },
            ChainLink {
                name: "rp_lower_from_convexity",
                lhs: root / powf(big_a + powf(two_n, p), 1.0 / p),
                rhs: rp,
                lhs_direction: a_dir,
                rhs_direction: rp_dir,
            },
            ChainLink {
                name: "rp_upper_from_convexity",
                lhs: rp,
                rhs: root,
                lhs_direction: rp_dir,
                rhs_direction: a_dir.join(rp_dir),
            },
        ]);
    }
    links
}

/// Evaluates [`chain_links`] into a report. Conclusive links are recorded
/// as evaluations (sample index = link position); inconclusive links are
/// described in notes. Under the common-phase convention with `N ≥ 2` and
/// a vanishing constant the report is marked degenerate.
pub fn check_bound_chains(
    p: f64,
    order: usize,
    convexity: Option<&ConvexityEstimate>,
    r_tilde: &RadiusEstimate,
    r_p: &RadiusEstimate,
    slack: f64,
) -> VerificationReport {
    let mut report = VerificationReport::new("bound_chains", slack).with_samples(1);
    let links = chain_links(p, order, convexity, r_tilde, r_p);
    report.note(format!("radius estimate: {}", r_tilde.kind.name()));
    report.note(format!("rp estimate: {}", r_p.kind.name()));
    if let Some(a) = convexity {
        report = report.with_seed(a.seed);
        report.note(format!(
            "convexity estimate: upper bound over {} sampled tuples ({})",
            a.samples, a.phase_convention
        ));
        if a.phase_convention == PhaseConvention::CommonPhase && order >= 2 && a.lambda_upper == 0.0
        {
            report.mark_degenerate();
            report.note(String::from(
                "common-phase constant collapses to 0 for N >= 2 via cancelling tuples",
            ));
        }
    }
    for (i, link) in links.iter().enumerate() {
        if link.conclusive() {
            report.record(i, link.margin(), || {
                format!("{}: {} <= {}", link.name, link.lhs, link.rhs)
            });
        } else if link.margin() < -slack {
            report.note(format!(
                "{}: margin {} not conclusive (left side is an upper estimate)",
                link.name,
                link.margin()
            ));
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::Status;
    use crate::radii::convexity::Space;

    fn exact_a(lambda: f64, convention: PhaseConvention, order: usize) -> ConvexityEstimate {
        ConvexityEstimate {
            lambda_upper: lambda,
            phase_convention: convention,
            samples: 1,
            seed: 0,
            p: 2.0,
            order,
            space: Space::ComplexScalars,
            skipped: 0,
        }
    }

    #[test]
    fn scalar_p2_order1_chain_holds() {
        let a = exact_a(1.0, PhaseConvention::PowerPhase, 1);
        let one = RadiusEstimate::exact(1.0);
        let links = chain_links(2.0, 1, Some(&a), &one, &one);
        assert_eq!(links.len(), 7);
        assert!((links[0].lhs - 1.0 / 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(links[2].lhs, 0.5);
        assert!((links[5].lhs - 1.0 / 5f64.sqrt()).abs() < 1e-15);
        let report = check_bound_chains(2.0, 1, Some(&a), &one, &one, 1e-9);
        assert_eq!(report.status(), Status::Pass);
        assert!(report.min_margin >= 0.0);
    }

    #[test]
    fn zero_radius_passes_vacuously() {
        let zero = RadiusEstimate::exact(0.0);
        let report = check_bound_chains(2.0, 3, None, &zero, &zero, 1e-9);
        assert_eq!(report.status(), Status::Pass);
    }

    #[test]
    fn common_phase_collapse_is_degenerate() {
        let a = exact_a(0.0, PhaseConvention::CommonPhase, 2);
        let r = RadiusEstimate::exact(0.7);
        let report = check_bound_chains(2.0, 2, Some(&a), &r, &r, 1e-9);
        assert_eq!(report.status(), Status::Degenerate);
    }

    #[test]
    fn exact_contradiction_fails() {
        let report = check_bound_chains(
            2.0,
            1,
            None,
            &RadiusEstimate::exact(0.5),
            &RadiusEstimate::exact(0.9),
            1e-9,
        );
        assert_eq!(report.status(), Status::Fail);
    }

    #[test]
    fn upper_estimates_only_produce_notes() {
        let rt = RadiusEstimate {
            value: 0.5,
            bracket_width: 0.0,
            kind: RadiusKind::FamilyUpper,
        };
        let rp = RadiusEstimate {
            value: 0.9,
            bracket_width: 0.0,
            kind: RadiusKind::FamilyUpper,
        };
        let report = check_bound_chains(2.0, 1, None, &rt, &rp, 1e-9);
        assert_eq!(report.status(), Status::Pass);
        assert!(report.notes.iter().any(|n| n.contains("rp_upper_radius")));
    }
}
