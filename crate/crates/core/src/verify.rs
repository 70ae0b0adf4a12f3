//! Empirical persistence checks tying the polygon family to simulated trajectories:
//! containment in the starting level set, the level function reaching `α₀`, and the
//! bounded-trajectory criterion for lower-endotactic networks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dynamics::{
    self, omega_limit_estimate, DynError, IntegratorConfig, OmegaBox, RateSchedule, ScheduleKind, StepStats, Trajectory,
};
use crate::endo::{self, EndoError};
use crate::netmodel::ReactionNetwork;
use crate::polygon::{self, FamilyOptions, Polygon, PolygonError, PolygonFamily, SubtangentialityReport};

/// Absolute overshoot allowed past a polygon side.
pub const CONTAINMENT_TOL: f64 = 1e-7;
/// Relative slack on `Φ ≥ α₀` once the level has been reached.
pub const PHI_TOL: f64 = 1e-6;
/// Trailing share of samples that must sit at the limiting level.
pub const TAIL_FRACTION: f64 = 0.2;
/// Boundary samples for the sub-tangentiality evidence attached to containment reports.
const EVIDENCE_SAMPLES: usize = 2000;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Dynamics(#[from] DynError),
    #[error(transparent)]
    Polygon(#[from] PolygonError),
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error("{0}")]
    Config(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Persistence,
    Permanence,
    Containment,
    LowerEndotacticPersistence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

/// One ensemble member: start, rate schedule and the seed that produced the schedule.
#[derive(Debug, Clone)]
pub struct Run {
    pub c0: Vec<f64>,
    pub schedule: RateSchedule,
    pub seed: Option<u64>,
}

/// Seeded runs, one per start; run `i` uses seed `base_seed + i`.
pub fn seeded_runs(
    net: &ReactionNetwork,
    eta: f64,
    kind: ScheduleKind,
    starts: &[Vec<f64>],
    horizon: f64,
    base_seed: u64,
) -> Result<Vec<Run>, DynError> {
    starts
        .iter()
        .enumerate()
        .map(|(i, c0)| {
            let seed = base_seed.wrapping_add(i as u64);
            Ok(Run {
                c0: c0.clone(),
                schedule: RateSchedule::build(kind, net, eta, horizon, seed)?,
                seed: Some(seed),
            })
        })
        .collect()
}

/// `n` points log-uniform in `[lo, hi]^dim`.
pub fn random_starts(n: usize, dim: usize, lo: f64, hi: f64, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| (0..dim).map(|_| rng.gen_range(lo.ln()..=hi.ln()).exp()).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiSummary {
    pub start: f64,
    pub min: f64,
    pub max: f64,
    pub last: f64,
    /// First recorded time with `Φ ≥ α₀(1 - PHI_TOL)`.
    pub reached_at: Option<f64>,
    pub min_after_reach: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryEvidence {
    pub index: usize,
    pub seed: Option<u64>,
    pub c0: Vec<f64>,
    pub samples: usize,
    pub min: Vec<f64>,
    pub max: Vec<f64>,
    pub tail: OmegaBox,
    /// Largest distance outside the starting level polygon (negative when strictly inside).
    pub worst_excess: Option<f64>,
    pub phi: Option<PhiSummary>,
    pub steps: StepStats,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub trajectory: usize,
    pub time: f64,
    pub state: Vec<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertificationReport {
    pub claim: Claim,
    pub verdict: Verdict,
    pub reason: Option<String>,
    pub eta: f64,
    pub alpha0: Option<f64>,
    /// Union of the tail boxes over the ensemble.
    pub tail_box: Option<OmegaBox>,
    /// Bounding box of the limiting polygon `P(α₀)`, or the persistence threshold box.
    pub limit_box: Option<OmegaBox>,
    pub subtangentiality: Option<SubtangentialityReport>,
    pub trajectories: Vec<TrajectoryEvidence>,
    pub counterexample: Option<Counterexample>,
    pub config: IntegratorConfig,
    pub seeds: Vec<Option<u64>>,
}

impl CertificationReport {
    pub fn new(claim: Claim, eta: f64, config: &IntegratorConfig) -> Self {
        CertificationReport {
            claim,
            verdict: Verdict::Pass,
            reason: None,
            eta,
            alpha0: None,
            tail_box: None,
            limit_box: None,
            subtangentiality: None,
            trajectories: Vec::new(),
            counterexample: None,
            config: config.clone(),
            seeds: Vec::new(),
        }
    }

    pub fn inapplicable(claim: Claim, eta: f64, config: &IntegratorConfig, reason: String) -> Self {
        CertificationReport {
            verdict: Verdict::Inapplicable,
            reason: Some(reason),
            ..Self::new(claim, eta, config)
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Records a failure; the first counterexample found (lowest trajectory index) is kept.
    pub fn fail(&mut self, cx: Counterexample) {
        self.verdict = Verdict::Fail;
        if self
            .counterexample
            .as_ref()
            .is_none_or(|c| cx.trajectory < c.trajectory)
        {
            self.reason = Some(cx.detail.clone());
            self.counterexample = Some(cx);
        }
    }
}

fn planar(state: &[f64]) -> [f64; 2] {
    [state[0], state[1]]
}

fn union_box(boxes: impl Iterator<Item = OmegaBox>) -> Option<OmegaBox> {
    boxes.reduce(|a, b| OmegaBox {
        lo: a.lo.iter().zip(&b.lo).map(|(x, y)| x.min(*y)).collect(),
        hi: a.hi.iter().zip(&b.hi).map(|(x, y)| x.max(*y)).collect(),
    })
}

fn poly_box(poly: &Polygon) -> OmegaBox {
    let (lo, hi) = poly.bounds();
    OmegaBox {
        lo: lo.to_vec(),
        hi: hi.to_vec(),
    }
}

/// Family covering every start of the ensemble: the first start is the family's `c0`, the
/// rest are required points.
pub fn family_for(
    net: &ReactionNetwork,
    eta: f64,
    starts: &[Vec<f64>],
    lower: bool,
) -> Result<PolygonFamily, PolygonError> {
    let first = starts.first().ok_or(PolygonError::BadStart)?;
    if starts.iter().any(|s| s.len() != 2) {
        return Err(PolygonError::BadStart);
    }
    let options = FamilyOptions {
        lower,
        required_points: starts[1..].iter().map(|s| planar(s)).collect(),
        ..Default::default()
    };
    polygon::build_family_with(net, eta, planar(first), &options)
}

fn check_runs(net: &ReactionNetwork, family: &PolygonFamily, runs: &[Run]) -> Result<(), VerifyError> {
    if net.dim() != 2 {
        return Err(VerifyError::Config(format!(
            "polygon checks need 2 species, network has {}",
            net.dim()
        )));
    }
    for run in runs {
        if run.schedule.eta() < family.eta {
            return Err(VerifyError::Config(format!(
                "schedule eta {} leaves the family's rate box (eta {})",
                run.schedule.eta(),
                family.eta
            )));
        }
    }
    Ok(())
}

fn simulate(net: &ReactionNetwork, runs: &[Run], config: &IntegratorConfig) -> Result<Vec<Trajectory>, DynError> {
    runs.par_iter()
        .map(|run| dynamics::integrate(net, &run.schedule, &run.c0, config))
        .collect()
}

fn base_evidence(index: usize, run: &Run, traj: &Trajectory) -> TrajectoryEvidence {
    let whole = omega_limit_estimate(traj, 1.0);
    TrajectoryEvidence {
        index,
        seed: run.seed,
        c0: run.c0.clone(),
        samples: traj.len(),
        min: whole.lo,
        max: whole.hi,
        tail: omega_limit_estimate(traj, TAIL_FRACTION),
        worst_excess: None,
        phi: None,
        steps: traj.stats.clone(),
    }
}

/// Every recorded state stays in `P(Φ(c0))` up to [`CONTAINMENT_TOL`].
pub fn check_containment(
    net: &ReactionNetwork,
    family: &PolygonFamily,
    runs: &[Run],
    config: &IntegratorConfig,
) -> Result<CertificationReport, VerifyError> {
    check_runs(net, family, runs)?;
    let trajectories = simulate(net, runs, config)?;
    let mut report = CertificationReport::new(Claim::Containment, family.eta, config);
    report.alpha0 = Some(family.alpha_max);
    report.seeds = runs.iter().map(|r| r.seed).collect();
    let limit = family.polygon_at(family.alpha_max)?;
    report.limit_box = Some(poly_box(&limit));
    report.subtangentiality = Some(polygon::subtangentiality_audit_polygon(
        net,
        family.eta,
        &limit,
        EVIDENCE_SAMPLES,
        |_| true,
    ));

    let results: Vec<Result<(TrajectoryEvidence, Option<Counterexample>), VerifyError>> = runs
        .par_iter()
        .zip(&trajectories)
        .enumerate()
        .map(|(i, (run, traj))| {
            let level = family.phi(planar(&run.c0))?;
            let poly = family.polygon_at(level)?;
            let mut ev = base_evidence(i, run, traj);
            let mut worst = f64::NEG_INFINITY;
            let mut cx = None;
            for (t, state) in traj.times.iter().zip(&traj.states) {
                let p = planar(state);
                worst = worst.max(poly.excess(p));
                if cx.is_none() && !poly.contains_abs(p, CONTAINMENT_TOL) {
                    cx = Some(Counterexample {
                        trajectory: i,
                        time: *t,
                        state: state.clone(),
                        detail: format!("state leaves P({level:e}) by {:e}", poly.excess(p)),
                    });
                }
            }
            ev.worst_excess = Some(worst);
            Ok((ev, cx))
        })
        .collect();
    for r in results {
        let (ev, cx) = r?;
        report.trajectories.push(ev);
        if let Some(cx) = cx {
            report.fail(cx);
        }
    }
    report.tail_box = union_box(report.trajectories.iter().map(|e| e.tail.clone()));
    Ok(report)
}

/// `Φ` along a trajectory. States within [`CONTAINMENT_TOL`] of `P(α₀)` are at level `α₀`.
pub fn phi_series(family: &PolygonFamily, limit: &Polygon, traj: &Trajectory) -> Result<Vec<f64>, PolygonError> {
    traj.states
        .iter()
        .map(|s| {
            let p = planar(s);
            if limit.contains_abs(p, CONTAINMENT_TOL) {
                Ok(family.alpha_max)
            } else {
                family.phi(p)
            }
        })
        .collect()
}

/// `Φ` reaches `α₀` within the horizon and stays there, with every tail inside the fixed
/// box of `P(α₀)`.
pub fn check_permanence(
    net: &ReactionNetwork,
    family: &PolygonFamily,
    runs: &[Run],
    config: &IntegratorConfig,
) -> Result<CertificationReport, VerifyError> {
    check_runs(net, family, runs)?;
    let trajectories = simulate(net, runs, config)?;
    let alpha0 = family.alpha_max;
    let floor = alpha0 * (1.0 - PHI_TOL);
    let mut report = CertificationReport::new(Claim::Permanence, family.eta, config);
    report.alpha0 = Some(alpha0);
    report.seeds = runs.iter().map(|r| r.seed).collect();
    let limit = family.polygon_at(alpha0)?;
    report.limit_box = Some(poly_box(&limit));

    let results: Vec<Result<(TrajectoryEvidence, Option<Counterexample>), VerifyError>> = runs
        .par_iter()
        .zip(&trajectories)
        .enumerate()
        .map(|(i, (run, traj))| {
            let phis = phi_series(family, &limit, traj)?;
            let mut ev = base_evidence(i, run, traj);
            let reach = phis.iter().position(|&v| v >= floor);
            let after = reach.map(|k| phis[k..].iter().copied().fold(f64::INFINITY, f64::min));
            ev.phi = Some(PhiSummary {
                start: phis[0],
                min: phis.iter().copied().fold(f64::INFINITY, f64::min),
                max: phis.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                last: *phis.last().expect("nonempty"),
                reached_at: reach.map(|k| traj.times[k]),
                min_after_reach: after,
            });
            let at = |k: usize, detail: String| Counterexample {
                trajectory: i,
                time: traj.times[k],
                state: traj.states[k].clone(),
                detail,
            };
            let tail = traj.tail_start(TAIL_FRACTION);
            let cx = match reach {
                None => {
                    let k = phis.len() - 1;
                    let rising = k > 0 && phis[k] > phis[traj.tail_start(0.5)];
                    Some(at(
                        k,
                        format!(
                            "level {:e} below alpha0 {alpha0:e} at the horizon{}",
                            phis[k],
                            if rising {
                                "; still rising, horizon too short"
                            } else {
                                ""
                            }
                        ),
                    ))
                }
                Some(k0) if k0 > tail => Some(at(k0, "alpha0 reached only inside the final 20% of samples".into())),
                Some(k0) => phis[k0..].iter().position(|&v| v < floor).map(|k| {
                    at(
                        k0 + k,
                        format!("level drops to {:e} after reaching alpha0", phis[k0 + k]),
                    )
                }),
            };
            Ok((ev, cx))
        })
        .collect();
    for r in results {
        let (ev, cx) = r?;
        report.trajectories.push(ev);
        if let Some(cx) = cx {
            report.fail(cx);
        }
    }
    report.tail_box = union_box(report.trajectories.iter().map(|e| e.tail.clone()));
    if let Some(tb) = &report.tail_box {
        if report.passed() && !tb.lo.iter().all(|&v| v > 0.0) {
            report.verdict = Verdict::Fail;
            report.reason = Some("tail box touches the boundary".into());
        }
    }
    Ok(report)
}

/// A bounded trajectory of a lower-endotactic network stays above the south-west chain of
/// the lower-mode polygon through its start. The family covers the trajectory's bounding
/// box; the threshold is the polygon's lower-left corner of its bounding box.
pub fn check_bounded_persistence(
    net: &ReactionNetwork,
    eta: f64,
    traj: &Trajectory,
    config: &IntegratorConfig,
) -> Result<CertificationReport, VerifyError> {
    let claim = Claim::LowerEndotacticPersistence;
    if net.dim() != 2 {
        return Err(VerifyError::Config(format!(
            "polygon checks need 2 species, network has {}",
            net.dim()
        )));
    }
    if !endo::is_lower_endotactic(net)?.lower_endotactic {
        return Ok(CertificationReport::inapplicable(
            claim,
            eta,
            config,
            "network is not lower-endotactic".into(),
        ));
    }
    let whole = omega_limit_estimate(traj, 1.0);
    if !whole.hi.iter().all(|v| v.is_finite()) || !whole.lo.iter().all(|&v| v > 0.0) {
        return Ok(CertificationReport::inapplicable(
            claim,
            eta,
            config,
            "trajectory is not bounded".into(),
        ));
    }
    let corners: Vec<Vec<f64>> = vec![
        traj.states[0].clone(),
        whole.lo.clone(),
        whole.hi.clone(),
        vec![whole.lo[0], whole.hi[1]],
        vec![whole.hi[0], whole.lo[1]],
    ];
    let family = family_for(net, eta, &corners, true)?;
    let level = family.phi(planar(&traj.states[0]))?;
    let poly = family.polygon_at(level)?;
    let (threshold, _) = poly.bounds();

    let mut report = CertificationReport::new(claim, eta, config);
    report.alpha0 = Some(family.alpha_max);
    report.limit_box = Some(OmegaBox {
        lo: threshold.to_vec(),
        hi: whole.hi.clone(),
    });
    let tail = omega_limit_estimate(traj, TAIL_FRACTION);
    report.trajectories.push(TrajectoryEvidence {
        index: 0,
        seed: None,
        c0: traj.states[0].clone(),
        samples: traj.len(),
        min: whole.lo.clone(),
        max: whole.hi.clone(),
        tail: tail.clone(),
        worst_excess: None,
        phi: None,
        steps: traj.stats.clone(),
    });
    report.tail_box = Some(tail.clone());
    let start = traj.tail_start(TAIL_FRACTION);
    for (k, state) in traj.states.iter().enumerate().skip(start) {
        if let Some(i) = (0..2).find(|&i| state[i] <= threshold[i]) {
            report.fail(Counterexample {
                trajectory: 0,
                time: traj.times[k],
                state: state.clone(),
                detail: format!(
                    "coordinate {i} at {:e} is not above the threshold {:e}",
                    state[i], threshold[i]
                ),
            });
            break;
        }
    }
    Ok(report)
}

/// Builds the family for the ensemble and runs `claim`; a network the construction refuses
/// is reported as inapplicable.
pub fn certify(
    claim: Claim,
    net: &ReactionNetwork,
    eta: f64,
    runs: &[Run],
    config: &IntegratorConfig,
) -> Result<CertificationReport, VerifyError> {
    match claim {
        Claim::Containment | Claim::Permanence | Claim::Persistence => {
            let starts: Vec<Vec<f64>> = runs.iter().map(|r| r.c0.clone()).collect();
            let family = match family_for(net, eta, &starts, false) {
                Ok(f) => f,
                Err(e @ (PolygonError::NotEndotactic(_) | PolygonError::Endo(_))) => {
                    return Ok(CertificationReport::inapplicable(claim, eta, config, e.to_string()));
                }
                Err(e) => return Err(e.into()),
            };
            if claim == Claim::Containment {
                check_containment(net, &family, runs, config)
            } else {
                let mut report = check_permanence(net, &family, runs, config)?;
                report.claim = claim;
                Ok(report)
            }
        }
        Claim::LowerEndotacticPersistence => {
            let run = runs
                .first()
                .ok_or_else(|| VerifyError::Config("empty ensemble".into()))?;
            let traj = dynamics::integrate(net, &run.schedule, &run.c0, config)?;
            let mut report = check_bounded_persistence(net, eta, &traj, config)?;
            report.seeds = vec![run.seed];
            if let Some(ev) = report.trajectories.first_mut() {
                ev.seed = run.seed;
            }
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netmodel::{parse_network, Mode};

    const TWO_SPECIES: &str = "2X <-> Y\nX <-> Y\nX <-> 2X + Y";
    const LV: &str = "A -> 2A\nA + B -> 2B\nB -> 0";
    /// Lower-endotactic only: X+Y escapes north-east, quadratic decay keeps it bounded.
    const ESCAPE: &str = "0 <-> X\n0 <-> Y\nX + Y -> 2X + 2Y\n2X -> X\n2Y -> Y";

    fn chem(text: &str) -> ReactionNetwork {
        parse_network(text, Mode::Chemical).unwrap()
    }

    fn cfg(horizon: f64) -> IntegratorConfig {
        IntegratorConfig::with_horizon(horizon)
    }

    #[test]
    fn two_species_containment_and_permanence() {
        let net = chem(TWO_SPECIES);
        let starts = random_starts(6, 2, 0.1, 10.0, 3);
        let runs = seeded_runs(&net, 0.5, ScheduleKind::Piecewise, &starts, 50.0, 11).unwrap();
        let family = family_for(&net, 0.5, &starts, false).unwrap();
        let c = check_containment(&net, &family, &runs, &cfg(50.0)).unwrap();
        assert!(c.passed(), "{:?}", c.counterexample);
        assert!(c.subtangentiality.as_ref().unwrap().pass);
        let p = check_permanence(&net, &family, &runs, &cfg(50.0)).unwrap();
        assert!(p.passed(), "{:?}", p.counterexample);
        assert!(p.tail_box.as_ref().unwrap().lo.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn vertex_start_is_contained() {
        // linear kinetics stay integrable at the extreme scales of the polygon vertices
        let net = chem("0 <-> X\n0 <-> Y");
        let family = polygon::build_family(&net, 0.5, [1.0, 1.0]).unwrap();
        let poly = family.polygon_at(family.alpha_max).unwrap();
        for v in &poly.vertices {
            let run = Run {
                c0: v.to_vec(),
                schedule: RateSchedule::nominal(&net, 0.5).unwrap(),
                seed: None,
            };
            let r = check_containment(&net, &family, &[run], &cfg(1.0)).unwrap();
            assert!(r.passed(), "{v:?}: {:?}", r.counterexample);
        }
    }

    #[test]
    fn lotka_volterra_is_inapplicable() {
        let net = chem(LV);
        let runs = seeded_runs(&net, 0.5, ScheduleKind::Piecewise, &[vec![1.0, 0.5]], 10.0, 1).unwrap();
        let r = certify(Claim::Containment, &net, 0.5, &runs, &cfg(10.0)).unwrap();
        assert_eq!(r.verdict, Verdict::Inapplicable);
        let b = certify(Claim::LowerEndotacticPersistence, &net, 0.5, &runs, &cfg(10.0)).unwrap();
        assert_eq!(b.verdict, Verdict::Inapplicable);
    }

    #[test]
    fn equilibrium_run_is_permanent() {
        // X <-> Y with unit rates: every point of x = y is at rest
        let net = chem("X <-> Y\n0 <-> X\n0 <-> Y");
        let run = Run {
            c0: vec![1.0, 1.0],
            schedule: RateSchedule::nominal(&net, 0.5).unwrap(),
            seed: None,
        };
        let family = family_for(&net, 0.5, &[run.c0.clone()], false).unwrap();
        let r = check_permanence(&net, &family, std::slice::from_ref(&run), &cfg(10.0)).unwrap();
        assert!(r.passed(), "{:?}", r.reason);
        let ev = &r.trajectories[0];
        assert_eq!(ev.phi.as_ref().unwrap().reached_at, Some(0.0));
    }

    #[test]
    fn escape_network_bounded_persistence() {
        let net = chem(ESCAPE);
        let verdict = endo::is_endotactic(&net).unwrap();
        assert!(!verdict.endotactic && verdict.lower_endotactic);
        let schedule = RateSchedule::nominal(&net, 0.5).unwrap();
        let traj = dynamics::integrate(&net, &schedule, &[0.2, 3.0], &cfg(30.0)).unwrap();
        let r = check_bounded_persistence(&net, 0.5, &traj, &cfg(30.0)).unwrap();
        assert!(r.passed(), "{:?}", r.reason);
        let lo = &r.limit_box.as_ref().unwrap().lo;
        assert!(lo.iter().all(|&v| v > 0.0));
    }

    #[test]
    fn two_species_bounded_persistence() {
        let net = chem(TWO_SPECIES);
        let schedule = RateSchedule::random_piecewise(&net, 0.5, 1.0, 30.0, 5).unwrap();
        let traj = dynamics::integrate(&net, &schedule, &[3.0, 0.5], &cfg(30.0)).unwrap();
        let r = check_bounded_persistence(&net, 0.5, &traj, &cfg(30.0)).unwrap();
        assert!(r.passed(), "{:?}", r.reason);
    }

    #[test]
    fn escaping_state_fails_containment() {
        // a schedule outside the family's rate box is refused
        let net = chem(TWO_SPECIES);
        let family = family_for(&net, 0.5, &[vec![1.0, 1.0]], false).unwrap();
        let run = Run {
            c0: vec![1.0, 1.0],
            schedule: RateSchedule::nominal(&net, 0.1).unwrap(),
            seed: None,
        };
        assert!(matches!(
            check_containment(&net, &family, &[run], &cfg(1.0)),
            Err(VerifyError::Config(_))
        ));
    }

    #[test]
    fn reports_are_reproducible() {
        let net = chem(TWO_SPECIES);
        let starts = random_starts(3, 2, 0.5, 2.0, 9);
        let go = || {
            let runs = seeded_runs(&net, 0.5, ScheduleKind::Piecewise, &starts, 20.0, 4).unwrap();
            let r = certify(Claim::Containment, &net, 0.5, &runs, &cfg(20.0)).unwrap();
            serde_json::to_string(&r).unwrap()
        };
        assert_eq!(go(), go());
    }
}
