//! One function per subcommand. Each returns the process exit code; errors map to 2.

use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::Serialize;

use crn_persist::dynamics::{self, IntegratorConfig, RateSchedule, ScheduleKind};
use crn_persist::exact;
use crn_persist::gac3;
use crn_persist::netmodel::{mode_for_path, parse_network, Mode, ReactionNetwork};
use crn_persist::polygon::{self, ConditionAudit, FamilyOptions, ShapeAudit, SubtangentialityReport};
use crn_persist::svg::{Figure, SweepDiagram};
use crn_persist::verify::{self, Claim};
use crn_persist::{bundled, endo, graph};

use crate::output::{emit, num, Payload, RunManifest};
use crate::{ClaimArg, Command, Common, Format, Gac3Args, PolygonArgs, Schedule, SimulateArgs, VerifyArgs};

/// Range of randomly drawn starts for `verify` and `gac3`.
const START_RANGE: (f64, f64) = (0.1, 10.0);

struct Input {
    name: String,
    text: String,
    net: ReactionNetwork,
}

/// Reads a network file, falling back to the bundled examples when no such file exists.
fn load(name: &str) -> Result<Input> {
    let text = if Path::new(name).is_file() {
        fs::read_to_string(name).with_context(|| format!("reading {name}"))?
    } else if let Some((_, text)) = bundled::source(name) {
        text.to_string()
    } else {
        bail!("no such file or bundled network: {name}");
    };
    let mode = match bundled::source(name) {
        Some((file, _)) if !Path::new(name).is_file() => mode_for_path(file),
        _ => mode_for_path(name),
    };
    let net = parse_network(&text, mode).with_context(|| format!("parsing {name}"))?;
    Ok(Input {
        name: name.to_string(),
        text,
        net,
    })
}

fn integrator(common: &Common, default_horizon: f64) -> IntegratorConfig {
    let horizon = common.horizon.unwrap_or(default_horizon);
    IntegratorConfig {
        rel_tol: common.rel_tol,
        abs_tol: common.abs_tol,
        ..IntegratorConfig::with_horizon(horizon)
    }
}

fn schedule_kind(s: Schedule) -> ScheduleKind {
    match s {
        Schedule::Constant => ScheduleKind::Constant,
        Schedule::Piecewise => ScheduleKind::Piecewise,
        Schedule::Sin => ScheduleKind::Sinusoidal,
    }
}

fn unsupported(sub: &str, format: Format) -> anyhow::Error {
    anyhow!(
        "{sub} does not support --format {}",
        format!("{format:?}").to_lowercase()
    )
}

fn check_start(net: &ReactionNetwork, c0: &[f64]) -> Result<()> {
    if c0.len() != net.dim() {
        bail!("--c0 needs {} values, got {}", net.dim(), c0.len());
    }
    if c0.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
        bail!("--c0 must be positive and finite");
    }
    Ok(())
}

fn planar(v: &exact::Vec2) -> [f64; 2] {
    [exact::to_f64(&v[0]), exact::to_f64(&v[1])]
}

pub fn run(command: &Command) -> Result<u8> {
    match command {
        Command::Analyze(c) => analyze(c),
        Command::SweepTest(c) => sweep_test(c),
        Command::Polygon(a) => polygon_cmd(a),
        Command::Simulate(a) => simulate(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Gac3(a) => gac3_cmd(a),
    }
}

fn finish<T: Serialize>(sub: &str, input: &Input, args: &T, common: &Common, payload: Payload) -> Result<()> {
    let manifest = RunManifest::new(sub, &input.name, &input.text, serde_json::to_value(args)?, common.seed);
    emit(&manifest, &payload, common.out_dir.as_deref(), sub)
}

fn analyze(common: &Common) -> Result<u8> {
    let input = load(&common.network)?;
    if common.format != Format::Json {
        return Err(unsupported("analyze", common.format));
    }
    let report = graph::analyze(&input.net);
    finish(
        "analyze",
        &input,
        common,
        common,
        Payload::Json(serde_json::to_value(report)?),
    )?;
    Ok(0)
}

fn sweep_test(common: &Common) -> Result<u8> {
    let input = load(&common.network)?;
    let net = &input.net;
    let verdict = endo::is_endotactic(net)?;
    let payload = match common.format {
        Format::Json => Payload::Json(serde_json::to_value(verdict.summary(net))?),
        Format::Svg => {
            let sources: Vec<[f64; 2]> = net
                .source_complexes()
                .iter()
                .map(|c| [exact::to_f64(&c.0[0]), exact::to_f64(&c.0[1])])
                .collect();
            let exact_sources: Vec<exact::Vec2> = net
                .source_complexes()
                .iter()
                .map(|c| [c.0[0].clone(), c.0[1].clone()])
                .collect();
            let bad: Vec<usize> = verdict.witnesses.iter().map(|w| w.reaction).collect();
            let diagram = SweepDiagram {
                title: format!(
                    "{}: {}",
                    input.name,
                    if verdict.endotactic {
                        "endotactic"
                    } else if verdict.lower_endotactic {
                        "lower-endotactic"
                    } else {
                        "not endotactic"
                    }
                ),
                hull: endo::convex_hull(&exact_sources).iter().map(planar).collect(),
                sources,
                reactions: net
                    .reactions()
                    .iter()
                    .enumerate()
                    .map(|(i, r)| {
                        let s = r.source.to_f64();
                        let t = r.target.to_f64();
                        ([s[0], s[1]], [t[0], t[1]], bad.contains(&i))
                    })
                    .collect(),
                directions: verdict.tested_vectors.iter().map(planar).collect(),
            };
            Payload::Svg(diagram.render())
        }
        Format::Csv => return Err(unsupported("sweep-test", common.format)),
    };
    finish("sweep-test", &input, common, common, payload)?;
    Ok(0)
}

#[derive(Serialize)]
struct VertexRow {
    label: String,
    x: f64,
    y: f64,
}

#[derive(Serialize)]
struct PolygonReport {
    eta: f64,
    c0: [f64; 2],
    delta: f64,
    delta_prime: f64,
    xi: f64,
    big_m: f64,
    alpha0: f64,
    alpha: f64,
    r: Vec<f64>,
    s: Vec<f64>,
    vertices: Vec<VertexRow>,
    conditions: ConditionAudit,
    shape: ShapeAudit,
    nested_in_family: bool,
    subtangentiality: SubtangentialityReport,
    passed: bool,
}

fn polygon_cmd(args: &PolygonArgs) -> Result<u8> {
    let common = &args.common;
    let input = load(&common.network)?;
    let net = &input.net;
    if net.dim() != 2 {
        bail!("polygon needs a 2-species network, {} has {}", input.name, net.dim());
    }
    check_start(net, &args.c0)?;
    let c0 = [args.c0[0], args.c0[1]];
    let options = FamilyOptions {
        lower: args.lower,
        ..Default::default()
    };
    let family = polygon::build_family_with(net, common.eta, c0, &options)?;
    let alpha = args.alpha.unwrap_or(family.alpha_max);
    let poly = family.polygon_at(alpha)?;
    let conditions = family.audit_conditions();
    let shape = family.audit_polygon_shape(&poly);
    let limit = family.polygon_at(family.alpha_max)?;
    let nested = limit.vertices.iter().all(|v| poly.contains_tol(*v, 1e-9));
    let sub = polygon::subtangentiality_audit_polygon(net, family.eta, &poly, args.samples, |_| true);
    let passed = conditions.all_pass() && shape.all_pass() && nested && sub.pass;
    let payload = match common.format {
        Format::Json => Payload::Json(serde_json::to_value(PolygonReport {
            eta: family.eta,
            c0,
            delta: family.delta,
            delta_prime: family.delta_prime,
            xi: family.xi,
            big_m: family.big_m,
            alpha0: family.alpha_max,
            alpha,
            r: family.r().to_vec(),
            s: family.s().to_vec(),
            vertices: poly
                .vertices
                .iter()
                .zip(&poly.labels)
                .map(|(v, l)| VertexRow {
                    label: l.clone(),
                    x: v[0],
                    y: v[1],
                })
                .collect(),
            conditions,
            shape,
            nested_in_family: nested,
            subtangentiality: sub,
            passed,
        })?),
        Format::Csv => Payload::Csv {
            header: vec!["label".into(), "x".into(), "y".into()],
            rows: poly
                .vertices
                .iter()
                .zip(&poly.labels)
                .map(|(v, l)| vec![l.clone(), num(v[0]), num(v[1])])
                .collect(),
        },
        Format::Svg => {
            let mut curves: Vec<(polygon::Curve, bool)> =
                family.dotted_curves().into_iter().map(|(_, c)| (c, true)).collect();
            curves.extend(family.solid_curves().into_iter().map(|c| (c, false)));
            let fig = Figure {
                title: format!("{}: P({alpha:.3e})", input.name),
                x_label: net.species()[0].clone(),
                y_label: net.species()[1].clone(),
                paths: Vec::new(),
                polygons: vec![poly.vertices.clone()],
                curves,
            };
            Payload::Svg(fig.render())
        }
    };
    finish("polygon", &input, args, common, payload)?;
    Ok(if passed { 0 } else { 1 })
}

#[derive(Serialize)]
struct SimulationReport<'a> {
    species: &'a [String],
    c0: &'a [f64],
    times: &'a [f64],
    states: &'a [Vec<f64>],
    stats: &'a dynamics::StepStats,
    tail_box: dynamics::OmegaBox,
    stoichiometric_residual: Option<f64>,
}

fn simulate(args: &SimulateArgs) -> Result<u8> {
    let common = &args.common;
    let input = load(&common.network)?;
    let net = &input.net;
    let c0 = args.c0.clone().unwrap_or_else(|| vec![1.0; net.dim()]);
    check_start(net, &c0)?;
    let config = integrator(common, 100.0);
    let schedule = RateSchedule::build(
        schedule_kind(common.schedule),
        net,
        common.eta,
        config.horizon,
        common.seed,
    )?;
    let traj = dynamics::integrate(net, &schedule, &c0, &config)?;
    let payload = match common.format {
        Format::Json => Payload::Json(serde_json::to_value(SimulationReport {
            species: net.species(),
            c0: &c0,
            times: &traj.times,
            states: &traj.states,
            stats: &traj.stats,
            tail_box: dynamics::omega_limit_estimate(&traj, verify::TAIL_FRACTION),
            stoichiometric_residual: (net.mode() == Mode::Chemical)
                .then(|| dynamics::stoichiometric_residual(net, &traj)),
        })?),
        Format::Csv => {
            let mut header = vec!["t".to_string()];
            header.extend(net.species().iter().cloned());
            let rows = traj
                .times
                .iter()
                .zip(&traj.states)
                .map(|(t, s)| std::iter::once(num(*t)).chain(s.iter().map(|v| num(*v))).collect())
                .collect();
            Payload::Csv { header, rows }
        }
        Format::Svg => {
            if net.dim() < 2 {
                bail!("a phase portrait needs at least 2 species");
            }
            let fig = Figure {
                title: format!(
                    "{} from ({})",
                    input.name,
                    c0.iter().map(|v| format!("{v}")).collect::<Vec<_>>().join(", ")
                ),
                x_label: net.species()[0].clone(),
                y_label: net.species()[1].clone(),
                paths: vec![traj.states.iter().map(|s| [s[0], s[1]]).collect()],
                polygons: Vec::new(),
                curves: Vec::new(),
            };
            Payload::Svg(fig.render())
        }
    };
    finish("simulate", &input, args, common, payload)?;
    Ok(0)
}

fn starts(explicit: &Option<Vec<f64>>, n: usize, dim: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut out: Vec<Vec<f64>> = explicit.iter().cloned().collect();
    let missing = n.saturating_sub(out.len());
    out.extend(verify::random_starts(missing, dim, START_RANGE.0, START_RANGE.1, seed));
    out
}

fn verify_cmd(args: &VerifyArgs) -> Result<u8> {
    let common = &args.common;
    let input = load(&common.network)?;
    let net = &input.net;
    if let Some(c0) = &args.c0 {
        check_start(net, c0)?;
    }
    let claim = match args.claim {
        ClaimArg::Persistence => Claim::Persistence,
        ClaimArg::Permanence => Claim::Permanence,
        ClaimArg::Containment => Claim::Containment,
        ClaimArg::LowerEndotacticPersistence => Claim::LowerEndotacticPersistence,
    };
    let config = integrator(common, 100.0);
    let starts = starts(&args.c0, common.ensemble.unwrap_or(8).max(1), net.dim(), common.seed);
    let runs = verify::seeded_runs(
        net,
        common.eta,
        schedule_kind(common.schedule),
        &starts,
        config.horizon,
        common.seed,
    )?;
    let report = verify::certify(claim, net, common.eta, &runs, &config)?;
    let payload = match common.format {
        Format::Json => Payload::Json(serde_json::to_value(&report)?),
        Format::Csv => {
            let mut header: Vec<String> = vec!["index".into(), "seed".into(), "samples".into()];
            for s in net.species() {
                header.push(format!("c0_{s}"));
            }
            for s in net.species() {
                header.push(format!("tail_min_{s}"));
                header.push(format!("tail_max_{s}"));
            }
            header.extend(["worst_excess".into(), "phi_reached_at".into()]);
            let rows = report
                .trajectories
                .iter()
                .map(|e| {
                    let mut row = vec![
                        e.index.to_string(),
                        e.seed.map_or(String::new(), |s| s.to_string()),
                        e.samples.to_string(),
                    ];
                    row.extend(e.c0.iter().map(|v| num(*v)));
                    for k in 0..e.tail.lo.len() {
                        row.push(num(e.tail.lo[k]));
                        row.push(num(e.tail.hi[k]));
                    }
                    row.push(e.worst_excess.map_or(String::new(), num));
                    row.push(e.phi.as_ref().and_then(|p| p.reached_at).map_or(String::new(), num));
                    row
                })
                .collect();
            Payload::Csv { header, rows }
        }
        Format::Svg => return Err(unsupported("verify", common.format)),
    };
    finish("verify", &input, args, common, payload)?;
    Ok(if report.passed() { 0 } else { 1 })
}

fn gac3_cmd(args: &Gac3Args) -> Result<u8> {
    let common = &args.common;
    let input = load(&common.network)?;
    let net = &input.net;
    if let Some(c0) = &args.c0 {
        check_start(net, c0)?;
    }
    let kappas = args.kappa.clone().unwrap_or_else(|| net.nominal_rates());
    let config = integrator(common, 200.0);
    let starts = starts(&args.c0, common.ensemble.unwrap_or(20).max(1), net.dim(), common.seed);
    let report = gac3::check_gac(net, &kappas, &starts, &config)?;
    let payload = match common.format {
        Format::Json => Payload::Json(serde_json::to_value(&report)?),
        Format::Csv => {
            // same schedule as the check, so the trajectories are the ones it saw
            let min = kappas.iter().copied().fold(f64::INFINITY, f64::min);
            let schedule = RateSchedule::constant(0.5 * min.min(1.0), &kappas)?;
            let mut rows = Vec::new();
            for (run, c0) in report.runs.iter().zip(&starts) {
                let traj = dynamics::integrate(net, &schedule, c0, &config)?;
                for (t, s) in traj.times.iter().zip(&traj.states) {
                    let d = s
                        .iter()
                        .zip(&run.equilibrium)
                        .map(|(a, b)| (a - b).powi(2))
                        .sum::<f64>()
                        .sqrt();
                    rows.push(vec![run.index.to_string(), num(*t), num(d)]);
                }
            }
            Payload::Csv {
                header: vec!["run".into(), "t".into(), "distance".into()],
                rows,
            }
        }
        Format::Svg => return Err(unsupported("gac3", common.format)),
    };
    finish("gac3", &input, args, common, payload)?;
    Ok(if report.passed() { 0 } else { 1 })
}
