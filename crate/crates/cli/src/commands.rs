//! Implementations of the non-repro subcommands.

use std::path::{Path, PathBuf};

use stochord::apps::{
    compare_game, compare_savings, diamond_equilibrium, hh_bounds_check, self_protection_verdict,
    solve_savings, SavingsProblem, SearchGame,
};
use stochord::checks::{check_n_sufficient, check_sosd, check_two_sufficient};
use stochord::oracle::oracle_dominance;
use stochord::{Distribution, IntervalBounds, OrderParams};

use crate::report::{InputDigest, Phase, Report};
use crate::scenario::{GameScenario, HhScenario, ProtectScenario, SavingsScenario, SweepConfig};
use crate::{CheckArgs, GameArgs, HhArgs, OracleArgs, ProtectArgs, SavingsArgs, SweepArgs};

pub fn load_distribution(path: &Path) -> Result<(Distribution, Vec<u8>), String> {
    let bytes =
        std::fs::read(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let dist: Distribution = serde_json::from_slice(&bytes)
        .map_err(|e| format!("invalid distribution in {}: {e}", path.display()))?;
    Ok((dist, bytes))
}

fn scenario_base(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."))
}

/// Order interval from explicit flags, defaulting to the hull of the two
/// distributions' declared intervals.
fn order_bounds(
    a: Option<f64>,
    b: Option<f64>,
    f: &Distribution,
    g: &Distribution,
) -> Result<IntervalBounds, String> {
    let (fa, fb) = f.interval();
    let (ga, gb) = g.interval();
    let lo = a.unwrap_or_else(|| fa.min(ga));
    let hi = b.unwrap_or_else(|| fb.max(gb));
    IntervalBounds::new(lo, hi).map_err(|e| e.to_string())
}

pub fn cmd_check(args: &CheckArgs) -> Result<Report, String> {
    let (f, f_bytes) = load_distribution(&args.f)?;
    let (g, g_bytes) = load_distribution(&args.g)?;
    let bounds = order_bounds(args.a, args.b, &f, &g)?;
    let mut digest = InputDigest::new("check");
    digest.add("f", &f_bytes);
    digest.add("g", &g_bytes);
    digest.add_str(
        "flags",
        &format!(
            "a={:?} b={:?} alpha={} n={:?} tol={} grid={} oracle={} knots={} seed={:?}",
            args.a, args.b, args.alpha, args.n, args.tolerance, args.grid, args.oracle_samples, args.max_knots, args.seed
        ),
    );
    let mut report = Report::new("check", digest);
    report.set_output("bounds", [bounds.a(), bounds.b()]);

    let phase = Phase::start();
    report.push_verdict("sosd", check_sosd(&f, &g, bounds).map_err(|e| e.to_string())?);
    report.push_verdict("two-sufficient", check_two_sufficient(&f, &g, bounds).map_err(|e| e.to_string())?);
    if let Some(n) = args.n {
        if n >= 3 {
            let params = OrderParams::new(args.alpha.max(1.0), bounds)
                .and_then(|p| p.with_n(n))
                .and_then(|p| p.with_grid_points(args.grid))
                .and_then(|p| p.with_tolerance(args.tolerance))
                .map_err(|e| e.to_string())?;
            report.push_verdict("n-sufficient", check_n_sufficient(&f, &g, &params).map_err(|e| e.to_string())?);
        }
    }
    phase.record(&mut report, "checks");

    if args.oracle_samples > 0 {
        let seed = args.seed.ok_or("--seed is required when --oracle-samples > 0")?;
        let phase = Phase::start();
        let v = oracle_dominance(&f, &g, args.alpha, bounds, args.oracle_samples, args.max_knots, seed)
            .map_err(|e| e.to_string())?;
        report.push_verdict("oracle", v);
        phase.record(&mut report, "oracle");
    }
    Ok(report)
}

pub fn cmd_oracle(args: &OracleArgs) -> Result<Report, String> {
    let (f, f_bytes) = load_distribution(&args.f)?;
    let (g, g_bytes) = load_distribution(&args.g)?;
    let bounds = order_bounds(args.a, args.b, &f, &g)?;
    let mut digest = InputDigest::new("oracle");
    digest.add("f", &f_bytes);
    digest.add("g", &g_bytes);
    digest.add_str(
        "flags",
        &format!("a={:?} b={:?} alpha={} samples={} knots={} seed={}", args.a, args.b, args.alpha, args.samples, args.max_knots, args.seed),
    );
    let mut report = Report::new("oracle", digest);
    report.set_output("bounds", [bounds.a(), bounds.b()]);
    let phase = Phase::start();
    let v = oracle_dominance(&f, &g, args.alpha, bounds, args.samples, args.max_knots, args.seed)
        .map_err(|e| e.to_string())?;
    phase.record(&mut report, "oracle");
    report.push_verdict("oracle", v);
    Ok(report)
}

pub fn cmd_savings(args: &SavingsArgs) -> Result<Report, String> {
    let bytes = std::fs::read(&args.scenario)
        .map_err(|e| format!("cannot read {}: {e}", args.scenario.display()))?;
    let scenario: SavingsScenario = serde_json::from_str(
        std::str::from_utf8(&bytes).map_err(|e| e.to_string())?,
    )
    .map_err(|e| format!("invalid savings scenario: {e}"))?;
    let base = scenario_base(&args.scenario);
    let (income, _) = scenario.income.resolve(&base)?;
    let mut digest = InputDigest::new("savings");
    digest.add("scenario", &bytes);
    let mut report = Report::new("savings", digest);

    let problem = SavingsProblem {
        utility: scenario.utility.clone(),
        wealth: scenario.wealth,
        rate: scenario.rate,
        income,
    };
    let phase = Phase::start();
    let s_f = solve_savings(&problem, scenario.tolerance).map_err(|e| e.to_string())?;
    report.set_output("savings_f", s_f);

    if let Some(alt) = &scenario.income_alt {
        let (g, _) = alt.resolve(&base)?;
        let cmp = compare_savings(&problem, &g, scenario.tolerance).map_err(|e| e.to_string())?;
        report.set_output("savings_g", cmp.savings_g);
        report.set_output("gap", cmp.gap);
        report.set_output("certificate", cmp.certificate);
        report.set_output("prudence", cmp.prudence);
        report.push_verdict("dominance", cmp.dominance.clone());
        if let Some(shrunk) = cmp.shrunk.clone() {
            report.push_verdict("dominance-shrunk", shrunk);
        }
    }
    phase.record(&mut report, "solve");

    if let Some(csv_path) = &args.profile_out {
        let points = args.profile_points.max(2);
        let mut wtr = csv::Writer::from_path(csv_path).map_err(|e| e.to_string())?;
        wtr.write_record(["s", "objective", "marginal"]).map_err(|e| e.to_string())?;
        let u = &problem.utility;
        let r = problem.rate;
        for i in 0..=points {
            let s = problem.wealth * i as f64 / points as f64;
            let mut objective = u.value(problem.wealth - s);
            let mut expected_marginal = 0.0;
            for at in problem.income.atoms() {
                objective += at.p * u.value(r * s + at.x);
                expected_marginal += at.p * u.d1(r * s + at.x);
            }
            for seg in problem.income.segments() {
                let f = |y: f64| u.value(r * s + y);
                let integral = stochord::quad::integrate_adaptive(&f, seg.lo, seg.hi, 1e-11)
                    .map_err(|e| e.to_string())?;
                objective += seg.p * integral / (seg.hi - seg.lo);
                // The antiderivative of u'(Rs + y) in y is u(Rs + y).
                expected_marginal += seg.p * (u.value(r * s + seg.hi) - u.value(r * s + seg.lo)) / (seg.hi - seg.lo);
            }
            let marginal = -u.d1(problem.wealth - s) + r * expected_marginal;
            wtr.write_record([format!("{s}"), format!("{objective}"), format!("{marginal}")])
                .map_err(|e| e.to_string())?;
        }
        wtr.flush().map_err(|e| e.to_string())?;
    }
    Ok(report)
}

pub fn cmd_protect(args: &ProtectArgs) -> Result<Report, String> {
    let bytes = std::fs::read(&args.scenario)
        .map_err(|e| format!("cannot read {}: {e}", args.scenario.display()))?;
    let scenario: ProtectScenario =
        serde_json::from_slice(&bytes).map_err(|e| format!("invalid protection scenario: {e}"))?;
    let mut digest = InputDigest::new("protect");
    digest.add("scenario", &bytes);
    let mut report = Report::new("protect", digest);
    let phase = Phase::start();
    let outcome = self_protection_verdict(&scenario).map_err(|e| e.to_string())?;
    phase.record(&mut report, "verdict");
    report.push_verdict("two-concave", outcome.verdict.clone());
    report.set_output("recommendation", outcome.recommendation);
    report.set_output("expectation_gap", outcome.expectation_gap);
    report.set_output("two_point_supports", scenario.as_two_point());
    Ok(report)
}

pub fn cmd_game(args: &GameArgs) -> Result<Report, String> {
    let bytes = std::fs::read(&args.scenario)
        .map_err(|e| format!("cannot read {}: {e}", args.scenario.display()))?;
    let scenario: GameScenario =
        serde_json::from_slice(&bytes).map_err(|e| format!("invalid game scenario: {e}"))?;
    let base = scenario_base(&args.scenario);
    let (belief, _) = scenario.belief.resolve(&base)?;
    let mut digest = InputDigest::new("game");
    digest.add("scenario", &bytes);
    let mut report = Report::new("game", digest);

    let game = SearchGame {
        k: scenario.k,
        l: scenario.l,
        alpha: scenario.alpha,
        cost_exponent: scenario.cost_exponent,
        belief,
    };
    let phase = Phase::start();
    let eq = diamond_equilibrium(&game).map_err(|e| e.to_string())?;
    report.set_output("equilibrium", &eq);
    let comparison = match &scenario.belief_shifted {
        Some(shifted) => {
            let (shifted, _) = shifted.resolve(&base)?;
            let cmp = compare_game(&game, &shifted).map_err(|e| e.to_string())?;
            report.push_verdict("belief-shift", cmp.dominance.clone());
            report.set_output("certificate", cmp.certificate);
            report.set_output("equilibrium_shifted", &cmp.shifted);
            report.set_output("pointwise_ordered", cmp.pointwise_ordered);
            report.set_output("expected_ordered", cmp.expected_ordered);
            report.set_output("worst_curve_gap", cmp.worst_curve_gap);
            report.set_output("readings", &cmp.readings);
            Some(cmp)
        }
        None => None,
    };
    phase.record(&mut report, "solve");

    if let Some(csv_path) = &args.curves_out {
        let n = args.theta_points.max(2);
        let mut wtr = csv::Writer::from_path(csv_path).map_err(|e| e.to_string())?;
        let mut header = vec!["theta".to_string(), "informed_effort".to_string(), "match".to_string()];
        if comparison.is_some() {
            header.push("match_shifted".to_string());
        }
        wtr.write_record(&header).map_err(|e| e.to_string())?;
        for i in 0..n {
            let theta = i as f64 / (n - 1) as f64;
            let mut row = vec![
                format!("{theta}"),
                format!("{}", eq.informed_effort(theta)),
                format!("{}", eq.match_probability(theta)),
            ];
            if let Some(cmp) = &comparison {
                row.push(format!("{}", cmp.shifted.match_probability(theta)));
            }
            wtr.write_record(&row).map_err(|e| e.to_string())?;
        }
        wtr.flush().map_err(|e| e.to_string())?;
    }
    Ok(report)
}

pub fn cmd_hh(args: &HhArgs) -> Result<Report, String> {
    let bytes = std::fs::read(&args.scenario)
        .map_err(|e| format!("cannot read {}: {e}", args.scenario.display()))?;
    let scenario: HhScenario =
        serde_json::from_slice(&bytes).map_err(|e| format!("invalid hh scenario: {e}"))?;
    let mut digest = InputDigest::new("hh");
    digest.add("scenario", &bytes);
    let mut report = Report::new("hh", digest);
    let phase = Phase::start();
    let bounds = hh_bounds_check(&scenario.function, scenario.t, scenario.gamma, scenario.quad_points)
        .map_err(|e| e.to_string())?;
    phase.record(&mut report, "bounds");
    report.set_output("bounds_check", bounds);
    report.set_output("t", scenario.t);
    report.set_output("gamma", scenario.gamma);
    Ok(report)
}

const MAX_SWEEP_ROWS: usize = 1_000_000;

pub fn cmd_sweep(args: &SweepArgs) -> Result<Report, String> {
    let bytes = std::fs::read(&args.config)
        .map_err(|e| format!("cannot read {}: {e}", args.config.display()))?;
    let config: SweepConfig =
        serde_json::from_slice(&bytes).map_err(|e| format!("invalid sweep config: {e}"))?;
    let base = scenario_base(&args.config);
    let mut digest = InputDigest::new("sweep");
    digest.add("config", &bytes);
    let mut report = Report::new("sweep", digest);
    let phase = Phase::start();

    let mut wtr = csv::Writer::from_path(&args.out_csv).map_err(|e| e.to_string())?;
    let mut rows = 0usize;
    match config {
        SweepConfig::UniformPair { a1, a2, b2, b1_from, b1_to, steps } => {
            if steps > MAX_SWEEP_ROWS {
                return Err(format!("sweep of {steps} rows exceeds the {MAX_SWEEP_ROWS}-row limit"));
            }
            wtr.write_record(["a1", "b1", "a2", "b2", "verdict", "margin"]).map_err(|e| e.to_string())?;
            for i in 0..steps {
                let t = if steps == 1 { 0.0 } else { i as f64 / (steps - 1) as f64 };
                let b1 = b1_from + (b1_to - b1_from) * t;
                let v = stochord::checks::check_uniform_pair(a1, b1, a2, b2).map_err(|e| e.to_string())?;
                wtr.write_record([
                    format!("{a1}"),
                    format!("{b1}"),
                    format!("{a2}"),
                    format!("{b2}"),
                    format!("{:?}", v.outcome),
                    format!("{}", v.margin),
                ])
                .map_err(|e| e.to_string())?;
                rows += 1;
            }
        }
        SweepConfig::AlphaCertify { f, g, a, b, alphas, grid } => {
            if alphas.len() > MAX_SWEEP_ROWS {
                return Err(format!("sweep of {} rows exceeds the {MAX_SWEEP_ROWS}-row limit", alphas.len()));
            }
            let (f, _) = f.resolve(&base)?;
            let (g, _) = g.resolve(&base)?;
            let bounds = IntervalBounds::new(a, b).map_err(|e| e.to_string())?;
            wtr.write_record(["alpha", "n_used", "verdict", "margin"]).map_err(|e| e.to_string())?;
            for alpha in alphas {
                let (n_used, verdict, margin) = certify_at_alpha(&f, &g, alpha, bounds, grid)?;
                wtr.write_record([
                    format!("{alpha}"),
                    format!("{n_used}"),
                    verdict.to_string(),
                    format!("{margin}"),
                ])
                .map_err(|e| e.to_string())?;
                rows += 1;
            }
        }
    }
    wtr.flush().map_err(|e| e.to_string())?;
    phase.record(&mut report, "sweep");
    report.set_output("rows", rows);
    report.set_output("csv", args.out_csv.display().to_string());
    Ok(report)
}

/// Certification at degree `alpha`: try each sound integer-order check
/// `n <= alpha` (capped at 4) and report the first that passes. Not
/// passing any leaves the degree uncertified rather than refuted.
fn certify_at_alpha(
    f: &Distribution,
    g: &Distribution,
    alpha: f64,
    bounds: IntervalBounds,
    grid: usize,
) -> Result<(usize, &'static str, f64), String> {
    if alpha.is_nan() || alpha < 1.0 {
        return Err(format!("alpha must be >= 1, got {alpha}"));
    }
    let n_max = (alpha.floor() as usize).clamp(1, 4);
    let mut best_margin = f64::NEG_INFINITY;
    for n in 1..=n_max {
        let params = OrderParams::new(alpha, bounds)
            .and_then(|p| p.with_n(n))
            .and_then(|p| p.with_grid_points(grid))
            .map_err(|e| e.to_string())?;
        let v = check_n_sufficient(f, g, &params).map_err(|e| e.to_string())?;
        if v.dominates() {
            return Ok((n, "dominates", v.margin));
        }
        best_margin = best_margin.max(v.margin);
    }
    Ok((0, "uncertified", best_margin))
}
