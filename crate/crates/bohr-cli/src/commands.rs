use std::f64::consts::TAU;
use std::path::PathBuf;

use bohr_core::inequalities::{
    abel_identity_check, classical_bohr_check, majorant_property_check, milne_check,
    parseval_bound_check, refined_bohr_check, rogosinski_check_radii, subordination_majorant_check,
    wiener_check, Coupling, RogosinskiVariant, SLACK_CLOSED_FORM, SLACK_RANDOM,
};
use bohr_core::radii::{
    chain_links, check_bound_chains, from_tuple_values, full_series_radius, function_radius,
    lq_witness, lq_witness_closed_form, record_radius_ordering, rstar, sample_tuple,
    tuple_lambda_max, validate_convexity, xi_p, ConvexityEstimate, PhaseConvention, RadiusEstimate,
    RadiusParams, Space, DEFAULT_THETA_GRID,
};
use bohr_core::rng::{point_in_disk, sample_rng, uniform, SampleRng};
use bohr_core::series::family::{random_schwarz, FamilyKind, FamilySpec};
use bohr_core::{Complex64, SchwarzSeries, Status, VerificationReport};
use serde_json::json;

use crate::config::{Check, Command, Options, RunConfig};
use crate::error::{CliError, EXIT_PASS, EXIT_USAGE, EXIT_VERIFICATION_FAILURE};
use crate::output::{push_report, Cell, ReportContext, Table, REPORT_HEADERS};
use crate::sweep::{merge_all, Pool};

/// Stream offset for auxiliary draws (Schwarz maps, vectors) so they never
/// share a stream with the family sample of the same index.
const AUX_STREAM: u64 = 1 << 32;

const DEFAULT_P: &[f64] = &[1.0, 1.25, 1.5, 1.75, 2.0, 2.5, 3.0];
const DEFAULT_ORDER: &[usize] = &[3];

#[derive(Debug)]
pub struct Outcome {
    pub path: PathBuf,
    pub table: Table,
    pub exit_code: u8,
    /// Printed to stderr when set.
    pub message: Option<String>,
}

fn aux_rng(seed: u64, index: usize) -> SampleRng {
    sample_rng(seed, AUX_STREAM + index as u64)
}

fn usage(field: &'static str, message: impl Into<String>) -> CliError {
    CliError::Usage {
        field,
        message: message.into(),
    }
}

fn default_slack(kind: FamilyKind) -> f64 {
    match kind {
        FamilyKind::Mobius => SLACK_CLOSED_FORM,
        _ => SLACK_RANDOM,
    }
}

fn t_angles(t_grid: usize) -> Vec<f64> {
    (0..t_grid)
        .map(|j| TAU * j as f64 / t_grid as f64)
        .collect()
}

/// Builds the table for a command without touching the file system.
/// The second value lists precondition violations that did not abort the
/// run.
pub fn build(config: &RunConfig) -> Result<(Table, Vec<String>), CliError> {
    let o = &config.opts;
    o.validate()?;
    let pool = Pool::new(o.threads)?;
    let mut warnings = Vec::new();
    let table = match &config.command {
        Command::Xi => xi_table(o)?,
        Command::Rstar => rstar_table(o, &mut warnings)?,
        Command::Radius => radius_table(o, &pool)?,
        Command::Convexity => convexity_table(o, &pool)?,
        Command::Chains => chains_table(o, &pool)?,
        Command::LqWitness => lq_table(o)?,
        Command::Verify { check } => verify_table(*check, o, &pool)?,
    };
    Ok((table, warnings))
}

/// Runs a command, writes its report and picks the exit code.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let (table, warnings) = build(config)?;
    let name = config.command.name();
    let o = &config.opts;
    let path = table.write(&o.out_dir, &name, o.seed, o.output)?;
    let (exit_code, message) = if table.status() == Status::Fail {
        (
            EXIT_VERIFICATION_FAILURE,
            Some(format!("{name}: verification failed")),
        )
    } else if !warnings.is_empty() {
        (EXIT_USAGE, Some(warnings.join("\n")))
    } else {
        (EXIT_PASS, None)
    };
    Ok(Outcome {
        path,
        table,
        exit_code,
        message,
    })
}

fn xi_table(o: &Options) -> Result<Table, CliError> {
    let mut t = Table::new(&["p", "xi_p", "tol"]);
    for p in o.p_values(DEFAULT_P) {
        t.push(
            vec![p.into(), xi_p(p, o.tol)?.into(), o.tol.into()],
            Status::Pass,
            None,
        );
    }
    Ok(t)
}

fn rstar_table(o: &Options, warnings: &mut Vec<String>) -> Result<Table, CliError> {
    let mut t = Table::new(&["p", "N", "xi_p", "rstar", "precondition", "tol"]);
    for p in o.p_values(&[1.0, 1.5, 2.0]) {
        let xi = xi_p(p, o.tol)?;
        for n in o.orders(&[1, 2, 3]) {
            let (value, pre) = match rstar(p, n, o.tol) {
                Ok(r) => (r.into(), "ok"),
                Err(bohr_core::Error::XiNotBelowOrder { .. }) => {
                    warnings.push(format!(
                        "r*_N undefined for p={p}, N={n}: needs xi_p < N, xi_p = {xi}"
                    ));
                    ("".into(), "xi_not_below_N")
                }
                Err(e) => return Err(e.into()),
            };
            t.push(
                vec![
                    p.into(),
                    n.into(),
                    xi.into(),
                    value,
                    pre.into(),
                    o.tol.into(),
                ],
                Status::Pass,
                None,
            );
        }
    }
    Ok(t)
}

fn radius_table(o: &Options, pool: &Pool) -> Result<Table, CliError> {
    let kind = o.family_or(FamilyKind::Mobius);
    let spec = FamilySpec::new(kind, o.dim, o.degree, o.samples, o.seed);
    let slack = o.slack_or(default_slack(kind));
    let mut t = Table::new(&[
        "family",
        "d",
        "degree",
        "samples",
        "seed",
        "p",
        "N",
        "radius",
        "bracket_width",
        "kind",
        "ordering_min_margin",
        "ordering_status",
        "slack",
        "tol",
    ]);
    let mut combos = Vec::new();
    for p in o.p_values(&[1.0]) {
        for n in o.orders(DEFAULT_ORDER) {
            combos.push(RadiusParams::new(p, n, o.tol)?);
        }
    }
    // Each sample is drawn (and certified) once for all (p, N).
    let per_sample = pool.map(o.samples, |i| {
        let f = spec.sample(i)?;
        combos
            .iter()
            .map(|params| {
                let mut report = VerificationReport::new("radius_ordering", slack).with_samples(1);
                let [_, order_n, _] = record_radius_ordering(&mut report, i, &f, params)?;
                Ok((order_n, report))
            })
            .collect::<Result<Vec<_>, CliError>>()
    })?;
    for (c, params) in combos.iter().enumerate() {
        let est = RadiusEstimate::family_min(per_sample.iter().map(|s| s[c].0))?;
        let ordering = merge_all(per_sample.iter().map(|s| s[c].1.clone()))?;
        t.push(
            vec![
                kind.name().into(),
                o.dim.into(),
                o.degree.into(),
                o.samples.into(),
                o.seed.into(),
                params.p().into(),
                params.order().into(),
                est.value.into(),
                est.bracket_width.into(),
                est.kind.name().into(),
                ordering.min_margin.into(),
                ordering.status().name().into(),
                slack.into(),
                o.tol.into(),
            ],
            ordering.status(),
            None,
        );
    }
    Ok(t)
}

fn space(o: &Options) -> Space {
    match o.q {
        Some(q) => Space::Lq { q, d: o.dim },
        None => Space::ComplexScalars,
    }
}

fn convexity_estimate(
    o: &Options,
    pool: &Pool,
    p: f64,
    order: usize,
    space: Space,
) -> Result<ConvexityEstimate, CliError> {
    validate_convexity(p, order, space, o.samples)?;
    let convention = PhaseConvention::from(o.phase_convention);
    let values = pool.map(o.samples, |i| {
        let tuple = sample_tuple(order, space, o.seed, i);
        Ok(tuple_lambda_max(
            p,
            &tuple,
            space,
            convention,
            DEFAULT_THETA_GRID,
        )?)
    })?;
    Ok(from_tuple_values(
        p, order, space, convention, o.seed, &values,
    )?)
}

fn convexity_table(o: &Options, pool: &Pool) -> Result<Table, CliError> {
    let space = space(o);
    let mut t = Table::new(&[
        "p",
        "N",
        "space",
        "phase_convention",
        "lambda_upper",
        "samples",
        "skipped",
        "seed",
        "theta_grid",
        "tol",
    ]);
    for p in o.p_values(&[2.0]) {
        for n in o.orders(DEFAULT_ORDER) {
            let a = convexity_estimate(o, pool, p, n, space)?;
            t.push(
                vec![
                    p.into(),
                    n.into(),
                    space.to_string().into(),
                    a.phase_convention.name().into(),
                    a.lambda_upper.into(),
                    a.samples.into(),
                    a.skipped.into(),
                    a.seed.into(),
                    DEFAULT_THETA_GRID.into(),
                    o.tol.into(),
                ],
                Status::Pass,
                None,
            );
        }
    }
    Ok(t)
}

/// Chains are evaluated for X = ℂ: scalar families, scalar tuples. One row
/// per link; a violated link is a failure only when its left side is exact,
/// otherwise a finding.
fn chains_table(o: &Options, pool: &Pool) -> Result<Table, CliError> {
    let kind = o.family_or(FamilyKind::Mobius);
    let spec = FamilySpec::new(kind, 1, o.degree, o.samples, o.seed);
    let slack = o.slack_or(default_slack(kind));
    let mut t = Table::new(&[
        "family",
        "seed",
        "samples",
        "p",
        "N",
        "phase_convention",
        "lambda_upper",
        "radius",
        "radius_kind",
        "rp",
        "rp_kind",
        "link",
        "lhs",
        "rhs",
        "margin",
        "conclusive",
        "slack",
        "tol",
        "status",
    ]);
    for p in o.p_values(&[2.0]) {
        for n in o.orders(&[1]) {
            let params = RadiusParams::new(p, n, o.tol)?;
            let radii = pool.map(o.samples, |i| {
                let f = spec.sample(i)?;
                Ok((
                    function_radius(&f, &params)?,
                    full_series_radius(&f, p, o.tol)?,
                ))
            })?;
            let (order_n, full): (Vec<_>, Vec<_>) = radii.into_iter().unzip();
            let r_tilde = RadiusEstimate::family_min(order_n)?;
            let r_p = RadiusEstimate::family_min(full)?;
            let a = if p >= 2.0 {
                Some(convexity_estimate(o, pool, p, n, Space::ComplexScalars)?)
            } else {
                None
            };
            let mut report = check_bound_chains(p, n, a.as_ref(), &r_tilde, &r_p, slack);
            if a.is_none() {
                report.note("convexity links skipped: p < 2");
            }
            let details = json!({ "notes": report.notes });
            for link in chain_links(p, n, a.as_ref(), &r_tilde, &r_p) {
                let status = if report.degenerate {
                    Status::Degenerate
                } else if link.margin() >= -slack {
                    Status::Pass
                } else if link.conclusive() {
                    Status::Fail
                } else {
                    Status::Finding
                };
                t.push(
                    vec![
                        kind.name().into(),
                        o.seed.into(),
                        o.samples.into(),
                        p.into(),
                        n.into(),
                        a.as_ref().map_or("", |a| a.phase_convention.name()).into(),
                        a.as_ref().map_or(Cell::from(""), |a| a.lambda_upper.into()),
                        r_tilde.value.into(),
                        r_tilde.kind.name().into(),
                        r_p.value.into(),
                        r_p.kind.name().into(),
                        link.name.into(),
                        link.lhs.into(),
                        link.rhs.into(),
                        link.margin().into(),
                        if link.conclusive() { "yes" } else { "no" }.into(),
                        slack.into(),
                        o.tol.into(),
                        status.name().into(),
                    ],
                    status,
                    Some(details.clone()),
                );
            }
        }
    }
    Ok(t)
}

fn lq_table(o: &Options) -> Result<Table, CliError> {
    let q = o.q.unwrap_or(2.0);
    let mut a_values = o.a.clone().unwrap_or_else(|| vec![0.9, 0.99, 0.999]);
    a_values.sort_by(f64::total_cmp);
    let mut t = Table::new(&[
        "p",
        "q",
        "N",
        "a",
        "radius",
        "closed_form",
        "bracket_width",
        "kind",
        "decreasing",
        "tol",
    ]);
    for p in o.p_values(&[1.0]) {
        for n in o.orders(&[1]) {
            let mut previous = f64::INFINITY;
            for &a in &a_values {
                let w = lq_witness(p, q, n, a, o.tol)?;
                let decreasing = w.value < previous;
                previous = w.value;
                let status = if decreasing {
                    Status::Pass
                } else {
                    Status::Fail
                };
                t.push(
                    vec![
                        p.into(),
                        q.into(),
                        n.into(),
                        a.into(),
                        w.value.into(),
                        lq_witness_closed_form(p, q, a).into(),
                        w.bracket_width.into(),
                        w.kind.name().into(),
                        status.name().into(),
                        o.tol.into(),
                    ],
                    status,
                    None,
                );
            }
        }
    }
    Ok(t)
}

fn require_polynomial_family(kind: FamilyKind, check: Check) -> Result<(), CliError> {
    if kind.is_polynomial() {
        Ok(())
    } else {
        Err(usage(
            "family",
            format!(
                "{} needs exact polynomials (poly-random), got {kind}",
                check.name()
            ),
        ))
    }
}

fn verify_table(check: Check, o: &Options, pool: &Pool) -> Result<Table, CliError> {
    let default_family = match check {
        Check::Bohr | Check::Subordination => FamilyKind::Mobius,
        Check::Wiener => FamilyKind::Blaschke,
        _ => FamilyKind::PolyRandom,
    };
    let kind = o.family_or(default_family);
    let dim = if check == Check::Wiener { 1 } else { o.dim };
    let ctx = ReportContext {
        family: kind.name(),
        dim,
        degree: o.degree,
        r_grid: o.r_grid,
        t_grid: o.t_grid,
        tol: o.tol,
    };
    let spec = FamilySpec::new(kind, dim, o.degree, o.samples, o.seed);
    let mut t = Table::new(REPORT_HEADERS);
    let finish = |r: VerificationReport, grid: String| r.with_seed(o.seed).with_grid(grid);

    match check {
        Check::Bohr => {
            let slack = o.slack_or(default_slack(kind));
            let spec = spec.with_scalar_constant_term(true);
            let radii = o.radii_up_to(1.0 / 3.0)?;
            let report = pool.sweep(o.samples, |i| {
                let f = spec.sample(i)?;
                merge_all(
                    radii
                        .iter()
                        .map(|&r| classical_bohr_check(&f, r, slack))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            })?;
            let grid = format!("r_points={}:r_max={}", radii.len(), max(&radii));
            push_report(&mut t, &ctx, &finish(report, grid), None);
        }
        Check::Refined => refined(o, pool, &mut t)?,
        Check::Subordination => {
            let slack = o.slack_or(default_slack(kind));
            let radii = o.radii_up_to(1.0 / 3.0)?;
            let report = pool.sweep(o.samples, |i| {
                let g = spec.sample(i)?;
                let phi = random_schwarz(&mut aux_rng(o.seed, i), o.degree)?;
                merge_all(
                    radii
                        .iter()
                        .map(|&r| subordination_majorant_check(&g, &phi, r, slack))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            })?;
            let grid = format!("r_points={}:r_max={}", radii.len(), max(&radii));
            push_report(&mut t, &ctx, &finish(report, grid), None);
        }
        Check::Wiener => {
            let slack = o.slack_or(SLACK_RANDOM);
            let report = pool.sweep(o.samples, |i| Ok(wiener_check(&spec.sample(i)?, slack)?))?;
            push_report(&mut t, &ctx, &finish(report, "n<=D".into()), None);
        }
        Check::Majorant => {
            let slack = o.slack_or(SLACK_RANDOM);
            let pairs = FamilySpec {
                samples: 2 * o.samples,
                ..spec
            };
            let report = pool.sweep(o.samples, |i| {
                let f = pairs.sample(i)?;
                let g = pairs.sample(o.samples + i)?;
                Ok(majorant_property_check(&f, &g, o.r_grid, slack)?)
            })?;
            let grid = format!("r_grid={}", o.r_grid);
            push_report(&mut t, &ctx, &finish(report, grid), None);
        }
        Check::RogosinskiA | Check::RogosinskiB => {
            require_polynomial_family(kind, check)?;
            let variant = if check == Check::RogosinskiA {
                RogosinskiVariant::A
            } else {
                RogosinskiVariant::B
            };
            let slack = o.slack_or(SLACK_RANDOM);
            let radii = o.radii_up_to(0.5)?;
            let orders = o.orders(DEFAULT_ORDER);
            let mut couplings = vec![Coupling::Coupled];
            if o.uncoupled {
                couplings.push(Coupling::Uncoupled);
            }
            let mut groups = Vec::new();
            for &c in &couplings {
                for &n in &orders {
                    groups.push((c, n));
                }
            }
            let reports = pool.sweep_groups(o.samples, groups.len() * radii.len(), |i| {
                let f = spec.sample(i)?;
                let mut out = Vec::with_capacity(groups.len() * radii.len());
                for &(c, n) in &groups {
                    out.extend(rogosinski_check_radii(
                        &f, n, &radii, variant, o.t_grid, c, slack,
                    )?);
                }
                Ok(out)
            })?;
            let labels = groups
                .iter()
                .flat_map(|&(_, n)| radii.iter().map(move |&r| (n, r)));
            for (report, (n, r)) in reports.into_iter().zip(labels) {
                let grid = format!("t_grid={}:r={r}:N={n}", o.t_grid);
                push_report(&mut t, &ctx, &finish(report, grid), None);
            }
        }
        Check::Parseval => {
            require_polynomial_family(kind, check)?;
            let slack = o.slack_or(SLACK_RANDOM);
            let orders = o.orders(DEFAULT_ORDER);
            let angles = t_angles(o.t_grid);
            let reports = pool.sweep_groups(o.samples, orders.len(), |i| {
                let f = spec.sample(i)?;
                orders
                    .iter()
                    .map(|&n| {
                        let mut parts = Vec::with_capacity(angles.len() * (n + 1));
                        for &theta in &angles {
                            for k in 0..=n {
                                parts.push(parseval_bound_check(&f, theta, k, slack)?);
                            }
                        }
                        merge_all(parts)
                    })
                    .collect()
            })?;
            for (report, n) in reports.into_iter().zip(orders) {
                let grid = format!("t_grid={}:n<={n}", o.t_grid);
                push_report(&mut t, &ctx, &finish(report, grid), None);
            }
        }
        Check::Abel => {
            require_polynomial_family(kind, check)?;
            let slack = o.slack_or(1e-12);
            let orders = o.orders(DEFAULT_ORDER);
            let radii = o.radii_up_to(1.0)?;
            let angles = t_angles(o.t_grid);
            let reports = pool.sweep_groups(o.samples, orders.len(), |i| {
                let f = spec.sample(i)?;
                orders
                    .iter()
                    .map(|&n| {
                        let mut parts = Vec::with_capacity(angles.len() * radii.len());
                        for &theta in &angles {
                            for &r in &radii {
                                parts.push(abel_identity_check(&f, theta, r, n, slack)?);
                            }
                        }
                        merge_all(parts)
                    })
                    .collect()
            })?;
            for (report, n) in reports.into_iter().zip(orders) {
                let grid = format!("t_grid={}:r_points={}:N={n}", o.t_grid, radii.len());
                push_report(&mut t, &ctx, &finish(report, grid), None);
            }
        }
        Check::Milne => {
            let slack = o.slack_or(SLACK_CLOSED_FORM);
            let report = pool.sweep(o.samples, |i| {
                let mut rng = aux_rng(o.seed, i);
                let mut draw = || loop {
                    let v = uniform(&mut rng, -1.0, 1.0);
                    if v != 0.0 {
                        return v;
                    }
                };
                let x: Vec<f64> = (0..o.len).map(|_| draw()).collect();
                let y: Vec<f64> = (0..o.len).map(|_| draw()).collect();
                Ok(milne_check(&x, &y, slack)?)
            })?;
            let ctx = ReportContext {
                family: "uniform_vectors",
                ..ctx
            };
            push_report(
                &mut t,
                &ctx,
                &finish(report, format!("len={}", o.len)),
                None,
            );
        }
    }
    Ok(t)
}

fn max(v: &[f64]) -> f64 {
    v.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

/// Closed form with `--alpha` (real) and `--psi z^k`, otherwise random
/// `α` in `|α| < 0.9` and random Schwarz maps.
fn refined(o: &Options, pool: &Pool, t: &mut Table) -> Result<(), CliError> {
    let radii = o.radii_up_to(1.0 / 3.0)?;
    if let Some(alpha) = o.alpha {
        if !(alpha.abs() < 1.0) {
            return Err(usage(
                "alpha",
                format!("must satisfy |alpha| < 1, got {alpha}"),
            ));
        }
        let k = o.psi_power()?;
        let psi = SchwarzSeries::monomial(k);
        let slack = o.slack_or(SLACK_CLOSED_FORM);
        let ctx = ReportContext {
            family: "closed_form",
            dim: o.dim,
            degree: o.degree,
            r_grid: o.r_grid,
            t_grid: o.t_grid,
            tol: o.tol,
        };
        for &r in &radii {
            let (terms, report) =
                refined_bohr_check(Complex64::new(alpha, 0.0), &psi, o.dim, o.degree, r, slack)?;
            let report = report
                .with_seed(o.seed)
                .with_grid(format!("alpha={alpha}:psi=z^{k}:r={r}"));
            let values = json!({
                "beta": terms.beta,
                "g": terms.g,
                "sum_majorant": terms.sum_majorant,
                "term2": terms.term2,
                "term3": terms.term3,
                "lhs": terms.lhs,
                "defect": terms.defect(),
            });
            push_report(t, &ctx, &report, Some(values));
        }
        return Ok(());
    }
    let slack = o.slack_or(SLACK_RANDOM);
    let report = pool.sweep(o.samples, |i| {
        let mut rng = aux_rng(o.seed, i);
        let alpha = point_in_disk(&mut rng, 0.9);
        let psi = random_schwarz(&mut rng, o.degree)?;
        merge_all(
            radii
                .iter()
                .map(|&r| Ok(refined_bohr_check(alpha, &psi, o.dim, o.degree, r, slack)?.1))
                .collect::<Result<Vec<_>, CliError>>()?,
        )
    })?;
    let ctx = ReportContext {
        family: "subordination",
        dim: o.dim,
        degree: o.degree,
        r_grid: o.r_grid,
        t_grid: o.t_grid,
        tol: o.tol,
    };
    let report = report.with_seed(o.seed).with_grid(format!(
        "r_points={}:r_max={}",
        radii.len(),
        max(&radii)
    ));
    push_report(t, &ctx, &report, None);
    Ok(())
}
