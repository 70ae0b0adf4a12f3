//! Acceptance gate. Runs every criterion in sequence so the timings are not skewed by other
//! tests, prints one line per criterion and exits nonzero if any of them fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use crn_persist::dynamics::{self, integrate_fixed, IntegratorConfig, KineticSystem, RateSchedule, ScheduleKind};
use crn_persist::netmodel::{format_network, parse_network, ReactionNetwork};
use crn_persist::polygon::{self, SUBTANGENTIALITY_TOL};
use crn_persist::verify::{self, CONTAINMENT_TOL};
use crn_persist::{bundled, endo, gac3, graph};
use crn_persist_oracle::sweep;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn net(name: &str) -> ReactionNetwork {
    bundled::load(name).expect("bundled").expect("parses")
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn run(n: usize, title: &str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let result = match (result, limit) {
        (Ok(_), Some(l)) if elapsed > l => Err(format!("took {:.2}s, limit {}s", elapsed.as_secs_f64(), l.as_secs())),
        (r, _) => r,
    };
    let budget = limit.map_or(String::new(), |l| format!(" / {}s", l.as_secs()));
    let (tag, detail) = match &result {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!(
        "criterion {n} {tag} [{title}] {detail} ({:.2}s{budget})",
        elapsed.as_secs_f64()
    );
    result.is_ok()
}

fn verdicts() -> Outcome {
    let expect = [
        ("eq31", true, true),
        ("lotka", false, false),
        ("ssystem", true, true),
        ("thomas", true, true),
    ];
    let mut out = Vec::new();
    for (name, endotactic, lower) in expect {
        let n = net(name);
        let t = Instant::now();
        let v = endo::is_endotactic(&n).map_err(|e| e.to_string())?;
        let dt = t.elapsed().as_secs_f64();
        ensure(
            v.endotactic == endotactic && v.lower_endotactic == lower,
            format!("{name}: got {}/{}", v.endotactic, v.lower_endotactic),
        )?;
        ensure(dt < 1.0, format!("{name}: {dt:.3}s"))?;
        out.push(format!("{name}={}", if endotactic { "endotactic" } else { "neither" }));
    }
    Ok(out.join(" "))
}

fn oracle_equivalence() -> Outcome {
    let dirs = sweep::lattice_directions(sweep::bound_for(1000).max(2 * common::MAX_COEF));
    ensure(dirs.len() >= 1000, "too few directions")?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut disagree, mut endotactic) = (0, 0);
    let count = 600;
    for i in 0..count {
        let (pairs, n) = common::planar(&mut rng, i);
        let v = endo::is_endotactic(&n).map_err(|e| e.to_string())?;
        let brute = sweep::brute_endotactic(&pairs, &dirs);
        endotactic += brute as usize;
        disagree += (v.endotactic != brute) as usize;
    }
    ensure(disagree == 0, format!("{disagree} disagreements"))?;
    Ok(format!(
        "{count} networks ({endotactic} endotactic), {} directions, 0 disagreements",
        dirs.len()
    ))
}

fn weakly_reversible_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2025);
    let count = 1000;
    for i in 0..count {
        let (pairs, n) = common::weakly_reversible(&mut rng);
        ensure(
            graph::is_weakly_reversible(&n),
            format!("generator produced a non weakly reversible net {i}"),
        )?;
        let v = endo::is_endotactic(&n).map_err(|e| e.to_string())?;
        ensure(v.endotactic, format!("network {i} not endotactic: {pairs:?}"))?;
    }
    Ok(format!("{count} weakly reversible networks, all endotactic"))
}

fn polygon_audits() -> Outcome {
    let n = net("eq31");
    let family = polygon::build_family(&n, 0.5, [1.0, 1.0]).map_err(|e| e.to_string())?;
    let cond = family.audit_conditions();
    ensure(cond.all_pass(), format!("P1-P5: {:?}", cond.failures))?;
    let alphas: Vec<f64> = (0..=8)
        .map(|k| {
            let (lo, hi) = (family.alpha_min.ln(), family.alpha_max.ln());
            (lo + (hi - lo) * k as f64 / 8.0).exp()
        })
        .collect();
    let polys = alphas
        .iter()
        .map(|&a| family.polygon_at(a))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    for p in &polys {
        let shape = family.audit_polygon_shape(p);
        ensure(shape.all_pass(), format!("alpha {:e}: {:?}", p.alpha, shape.failures))?;
    }
    for w in polys.windows(2) {
        ensure(
            w[1].vertices.iter().all(|v| w[0].contains_tol(*v, 1e-9)),
            format!("P({:e}) not nested", w[1].alpha),
        )?;
    }
    let sub = polygon::subtangentiality_audit(&n, &family, family.alpha_max, 10_000).map_err(|e| e.to_string())?;
    ensure(sub.samples >= 10_000, "too few samples")?;
    ensure(
        sub.min_value >= -SUBTANGENTIALITY_TOL,
        format!("min c.n = {:e} on {}", sub.min_value, sub.min_side),
    )?;
    Ok(format!(
        "alpha0 = {:e}, P1-P5/convexity/P*/nesting over 9 levels, min c.n = {:.3e} over {} samples (tol -{SUBTANGENTIALITY_TOL:e})",
        family.alpha_max, sub.min_value, sub.samples
    ))
}

fn containment_and_permanence() -> Outcome {
    let n = net("eq31");
    let horizon = 1000.0;
    let starts = verify::random_starts(100, 2, 1e-2, 1e2, 5);
    let runs =
        verify::seeded_runs(&n, 0.5, ScheduleKind::Piecewise, &starts, horizon, 100).map_err(|e| e.to_string())?;
    let family = verify::family_for(&n, 0.5, &starts, false).map_err(|e| e.to_string())?;
    let cfg = IntegratorConfig::with_horizon(horizon);
    let c = verify::check_containment(&n, &family, &runs, &cfg).map_err(|e| e.to_string())?;
    ensure(c.passed(), format!("containment: {:?}", c.counterexample))?;
    let worst = c
        .trajectories
        .iter()
        .filter_map(|e| e.worst_excess)
        .fold(f64::NEG_INFINITY, f64::max);
    let p = verify::check_permanence(&n, &family, &runs, &cfg).map_err(|e| e.to_string())?;
    ensure(p.passed(), format!("permanence: {:?} {:?}", p.reason, p.counterexample))?;
    let last_reach = p
        .trajectories
        .iter()
        .filter_map(|e| e.phi.as_ref().and_then(|f| f.reached_at))
        .fold(0.0f64, f64::max);
    Ok(format!(
        "100 runs, worst excess {worst:.2e} (tol {CONTAINMENT_TOL:e}), alpha0 reached by t = {last_reach:.1} and held"
    ))
}

fn s_system() -> Outcome {
    let n = net("ssystem");
    let horizon = 200.0;
    let starts = verify::random_starts(50, 2, 1e-2, 1e2, 6);
    let runs =
        verify::seeded_runs(&n, 0.5, ScheduleKind::Piecewise, &starts, horizon, 200).map_err(|e| e.to_string())?;
    let cfg = IntegratorConfig::with_horizon(horizon);
    let report = verify::certify(verify::Claim::Permanence, &n, 0.5, &runs, &cfg).map_err(|e| e.to_string())?;
    ensure(
        report.passed(),
        format!("{:?} {:?}", report.reason, report.counterexample),
    )?;
    let tail = report.tail_box.as_ref().ok_or("no tail box")?;
    let limit = report.limit_box.as_ref().ok_or("no limit box")?;
    ensure(tail.lo.iter().all(|&v| v > 0.0), "tail minimum not positive")?;
    ensure(tail.hi.iter().all(|v| v.is_finite()), "tail maximum not finite")?;
    let inside = (0..2).all(|k| tail.lo[k] >= limit.lo[k] && tail.hi[k] <= limit.hi[k]);
    ensure(inside, "tails leave the fixed box")?;
    Ok(format!(
        "50 runs, tails in [{:.3e}, {:.3e}] x [{:.3e}, {:.3e}], fixed box [{:.1e}, {:.1e}] x [{:.1e}, {:.1e}]",
        tail.lo[0], tail.hi[0], tail.lo[1], tail.hi[1], limit.lo[0], limit.hi[0], limit.lo[1], limit.hi[1]
    ))
}

fn gac() -> Outcome {
    let mut out = Vec::new();
    for (i, name) in ["gac-a", "gac-b"].into_iter().enumerate() {
        let n = net(name);
        ensure(
            graph::deficiency(&n) == 0,
            format!("{name}: deficiency {}", graph::deficiency(&n)),
        )?;
        ensure(
            graph::is_weakly_reversible(&n),
            format!("{name}: not weakly reversible"),
        )?;
        let kappas = n.nominal_rates();
        let mut starts = verify::random_starts(50, 3, 1e-1, 1e1, 70 + i as u64);
        let axis = [vec![1e-4, 1e-4, 1.0], vec![1e-4, 1e-4, 3.0]];
        starts.extend(axis.iter().cloned());
        let cfg = IntegratorConfig::with_horizon(200.0);
        let report = gac3::check_gac(&n, &kappas, &starts, &cfg).map_err(|e| e.to_string())?;
        ensure(report.construction.audits_pass, format!("{name}: K audits failed"))?;
        ensure(
            report.passed(),
            format!("{name}: {:?} {:?}", report.report.reason, report.report.counterexample),
        )?;
        let axis_floor = report.runs[50..]
            .iter()
            .zip(&report.report.trajectories[50..])
            .map(|(r, e)| {
                let eq_min = r.equilibrium.iter().copied().fold(f64::INFINITY, f64::min);
                e.tail.lo.iter().copied().fold(f64::INFINITY, f64::min) / eq_min
            })
            .fold(f64::INFINITY, f64::min);
        ensure(
            axis_floor > 0.5,
            format!("{name}: z-axis start collapses (tail/equilibrium {axis_floor:e})"),
        )?;
        let worst = report.runs.iter().map(|r| r.final_distance).fold(0.0, f64::max);
        out.push(format!(
            "{name}: d={:.2e}, worst distance {worst:.1e}",
            report.construction.d
        ));
    }
    Ok(format!(
        "deficiency 0, weakly reversible, 50 + 2 axis starts each; {}",
        out.join("; ")
    ))
}

fn integrator() -> Outcome {
    let decay = parse_network("X -> 0", crn_persist::netmodel::Mode::Chemical).map_err(|e| e.to_string())?;
    let s = RateSchedule::nominal(&decay, 0.5).map_err(|e| e.to_string())?;
    let sys = KineticSystem::new(&decay, &s).map_err(|e| e.to_string())?;
    let exact = (-2f64).exp();
    let err = |steps| integrate_fixed(&sys, &[1.0], 2.0, steps).map(|y| (y[0] - exact).abs());
    let order = (err(32).map_err(|e| e.to_string())? / err(64).map_err(|e| e.to_string())?).log2();
    ensure((order - 5.0).abs() <= 0.2, format!("order {order:.3}"))?;

    // x' = x - xy, y' = xy - y conserves x - ln x + y - ln y
    let lv = net("lotka");
    let s = RateSchedule::nominal(&lv, 0.5).map_err(|e| e.to_string())?;
    let cfg = IntegratorConfig {
        horizon: 100.0,
        record_stride: 0.0,
        ..Default::default()
    };
    let traj = dynamics::integrate(&lv, &s, &[1.0, 0.5], &cfg).map_err(|e| e.to_string())?;
    let h = |c: &[f64]| c[0] - c[0].ln() + c[1] - c[1].ln();
    let h0 = h(&traj.states[0]);
    let drift = traj.states.iter().map(|c| (h(c) - h0).abs()).fold(0.0, f64::max);
    let periods = traj
        .states
        .windows(2)
        .filter(|w| w[0][0] < 1.0 && w[1][0] >= 1.0)
        .count()
        .max(1);
    let per_period = drift / periods as f64;
    ensure(
        per_period < 1e-6,
        format!("first-integral drift {per_period:e} per period"),
    )?;

    let mut residual = 0.0f64;
    for (text, c0) in [
        ("A <-> B\nB <-> C", vec![1.0, 2.0, 0.5]),
        ("A + B <-> C\nC <-> 2A", vec![0.3, 1.0, 2.0]),
    ] {
        let n = parse_network(text, crn_persist::netmodel::Mode::Chemical).map_err(|e| e.to_string())?;
        let s = RateSchedule::random_piecewise(&n, 0.5, 1.0, 50.0, 9).map_err(|e| e.to_string())?;
        let traj =
            dynamics::integrate(&n, &s, &c0, &IntegratorConfig::with_horizon(50.0)).map_err(|e| e.to_string())?;
        residual = residual.max(dynamics::stoichiometric_residual(&n, &traj));
    }
    ensure(residual < 1e-7, format!("stoichiometric residual {residual:e}"))?;
    Ok(format!(
        "order {order:.3} (5 +/- 0.2), drift {per_period:.2e}/period over {periods} periods (< 1e-6), residual {residual:.1e} (< 1e-7)"
    ))
}

fn determinism() -> Outcome {
    let n = net("eq31");
    let report = || -> Result<String, String> {
        let starts = verify::random_starts(4, 2, 0.1, 10.0, 7);
        let runs =
            verify::seeded_runs(&n, 0.5, ScheduleKind::Piecewise, &starts, 50.0, 7).map_err(|e| e.to_string())?;
        let r = verify::certify(
            verify::Claim::Permanence,
            &n,
            0.5,
            &runs,
            &IntegratorConfig::with_horizon(50.0),
        )
        .map_err(|e| e.to_string())?;
        serde_json::to_string(&r).map_err(|e| e.to_string())
    };
    let (a, b) = (report()?, report()?);
    ensure(a == b, "seeded reports differ")?;
    for (file, text) in bundled::NETWORKS {
        let first = parse_network(text, crn_persist::netmodel::mode_for_path(file)).map_err(|e| e.to_string())?;
        let again = parse_network(&format_network(&first), first.mode()).map_err(|e| e.to_string())?;
        ensure(first.equivalent(&again), format!("{file} does not round-trip"))?;
        ensure(
            format_network(&again) == format_network(&first),
            format!("{file} text is not stable"),
        )?;
    }
    Ok(format!(
        "seeded report identical ({} bytes); {} bundled networks round-trip",
        a.len(),
        bundled::NETWORKS.len()
    ))
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let results = [
        run(1, "endotactic verdicts", secs(1), verdicts),
        run(2, "finite test vs brute-force sweep", secs(30), oracle_equivalence),
        run(3, "weakly reversible fuzz", secs(30), weakly_reversible_fuzz),
        run(4, "polygon audits", secs(10), polygon_audits),
        run(5, "containment and permanence", secs(60), containment_and_permanence),
        run(6, "S-system permanence", secs(60), s_system),
        run(7, "GAC-3 examples", secs(120), gac),
        run(8, "integrator validation", None, integrator),
        run(9, "determinism and round-trip", None, determinism),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
