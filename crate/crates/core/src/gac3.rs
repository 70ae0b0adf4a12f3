//! Three-species global attraction: planar projections, the compact set `K` cut out by three
//! invariant polygons, complex-balance residuals and convergence checks.

use std::collections::HashSet;

use nalgebra::{DMatrix, DVector};
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::dynamics::{self, DynError, IntegratorConfig, RateSchedule, Trajectory};
use crate::exact;
use crate::graph;
use crate::netmodel::{Complex, Mode, NetError, Reaction, ReactionNetwork};
use crate::polygon::{self, FamilyOptions, Polygon, PolygonError, PolygonFamily, SubtangentialityReport};
use crate::verify::{CertificationReport, Claim, Counterexample, TrajectoryEvidence, Verdict, TAIL_FRACTION};

/// K-membership tolerance (absolute, per polygon side and box face).
pub const K_TOL: f64 = 1e-7;
/// Target distance to the equilibrium at the end of a certified run.
pub const CONVERGENCE_TOL: f64 = 1e-6;
/// Share of samples over which the distance to the equilibrium must not increase.
pub const MONOTONE_FRACTION: f64 = 0.3;
/// Allowed increase of the distance between consecutive samples (integrator noise).
const MONOTONE_SLACK: f64 = 1e-10;
const AUDIT_SAMPLES: usize = 2000;

#[derive(Debug, Error)]
pub enum GacError {
    #[error("network must have exactly 3 species, has {0}")]
    Dimension(usize),
    #[error("network is not weakly reversible")]
    NotWeaklyReversible,
    #[error("expected {expected} rate constants, got {got}")]
    RateCount { expected: usize, got: usize },
    #[error("rate constants must be positive and finite")]
    BadRate,
    #[error("epsilon must lie in (0, 1), got {0}")]
    BadEpsilon(f64),
    #[error("state must be strictly positive")]
    BadStart,
    #[error("no positive equilibrium found: {0}")]
    NoConvergence(String),
    #[error("plane {plane}: {source}")]
    Plane { plane: Plane, source: PolygonError },
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Dynamics(#[from] DynError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Plane {
    Xy,
    Yz,
    Zx,
}

impl Plane {
    pub const ALL: [Plane; 3] = [Plane::Xy, Plane::Yz, Plane::Zx];

    /// Coordinates kept, in order.
    pub fn axes(self) -> [usize; 2] {
        match self {
            Plane::Xy => [0, 1],
            Plane::Yz => [1, 2],
            Plane::Zx => [2, 0],
        }
    }

    pub fn project(self, c: &[f64]) -> [f64; 2] {
        let [a, b] = self.axes();
        [c[a], c[b]]
    }
}

impl std::fmt::Display for Plane {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Plane::Xy => "xy",
            Plane::Yz => "yz",
            Plane::Zx => "zx",
        })
    }
}

fn require_3(net: &ReactionNetwork) -> Result<(), GacError> {
    if net.dim() == 3 {
        Ok(())
    } else {
        Err(GacError::Dimension(net.dim()))
    }
}

fn check_rates(net: &ReactionNetwork, kappas: &[f64]) -> Result<(), GacError> {
    if kappas.len() != net.reactions().len() {
        return Err(GacError::RateCount {
            expected: net.reactions().len(),
            got: kappas.len(),
        });
    }
    if kappas.iter().any(|&k| !(k > 0.0 && k.is_finite())) {
        return Err(GacError::BadRate);
    }
    Ok(())
}

/// Drops the third coordinate from every complex. Reactions that collapse to a loop are
/// removed; repeated projected reactions are kept once. Also returns the largest number of
/// original reactions merged into one projected reaction.
pub fn project_with_multiplicity(net: &ReactionNetwork, plane: Plane) -> Result<(ReactionNetwork, usize), GacError> {
    require_3(net)?;
    let axes = plane.axes();
    let proj = |c: &Complex| Complex(axes.iter().map(|&i| c.0[i].clone()).collect());
    let mut seen: Vec<Reaction> = Vec::new();
    let mut counts: Vec<usize> = Vec::new();
    for r in net.reactions() {
        let p = Reaction::new(proj(&r.source), proj(&r.target));
        if p.source == p.target {
            continue;
        }
        match seen.iter().position(|q| *q == p) {
            Some(i) => counts[i] += 1,
            None => {
                seen.push(p);
                counts.push(1);
            }
        }
    }
    let species = axes.iter().map(|&i| net.species()[i].clone()).collect();
    let multiplicity = counts.iter().copied().max().unwrap_or(1);
    Ok((ReactionNetwork::new(species, seen, Mode::Chemical)?, multiplicity))
}

pub fn project_network(net: &ReactionNetwork, plane: Plane) -> Result<ReactionNetwork, GacError> {
    project_with_multiplicity(net, plane).map(|(n, _)| n)
}

/// `min{κ, 1/κ}` over the rate constants.
pub fn kappa_min(kappas: &[f64]) -> f64 {
    kappas.iter().map(|&k| k.min(1.0 / k)).fold(1.0, f64::min)
}

/// Largest stoichiometric coefficient of any species in any complex.
pub fn s_max(net: &ReactionNetwork) -> i32 {
    exact::to_f64(&net.max_coefficient())
        .ceil()
        .to_i32()
        .unwrap_or(i32::MAX)
}

/// `η = κ_min ε^{s_max}`.
pub fn eta_for(net: &ReactionNetwork, kappas: &[f64], epsilon: f64) -> f64 {
    kappa_min(kappas) * epsilon.powi(s_max(net))
}

/// One planar slice of `K`.
#[derive(Debug, Clone)]
pub struct PlaneConstruction {
    pub plane: Plane,
    pub network: ReactionNetwork,
    /// Rate bound for the planar system; `η` divided by the largest number of merged reactions.
    pub eta: f64,
    pub family: PolygonFamily,
    pub polygon: Polygon,
    pub convex: bool,
    pub square_included: bool,
    pub subtangentiality: SubtangentialityReport,
}

#[derive(Debug, Clone)]
pub struct GacConstruction {
    pub epsilon: f64,
    pub kappa_min: f64,
    pub s_max: i32,
    pub eta: f64,
    /// Common distance of the vertical and horizontal closing sides from the axes.
    pub d: f64,
    pub planes: Vec<PlaneConstruction>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlaneSummary {
    pub plane: Plane,
    pub species: Vec<String>,
    pub eta: f64,
    pub xi: f64,
    pub big_m: f64,
    pub alpha0: f64,
    pub vertices: Vec<[f64; 2]>,
    pub convex: bool,
    pub square_included: bool,
    pub subtangentiality: SubtangentialityReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct GacSummary {
    pub epsilon: f64,
    pub kappa_min: f64,
    pub s_max: i32,
    pub eta: f64,
    pub d: f64,
    pub audits_pass: bool,
    pub planes: Vec<PlaneSummary>,
}

impl GacConstruction {
    /// `c ∈ [0, 1/ε]³` with each planar projection in its polygon, up to `tol`.
    pub fn contains(&self, c: &[f64], tol: f64) -> bool {
        c.iter().all(|&v| v >= -tol && v <= 1.0 / self.epsilon + tol)
            && self
                .planes
                .iter()
                .all(|p| p.polygon.contains_abs(p.plane.project(c), tol))
    }

    /// Every plane passed its convexity, square and sub-tangentiality audits.
    pub fn audits_pass(&self) -> bool {
        self.eta < 1.0
            && self
                .planes
                .iter()
                .all(|p| p.convex && p.square_included && p.subtangentiality.pass)
    }

    pub fn summary(&self) -> GacSummary {
        GacSummary {
            epsilon: self.epsilon,
            kappa_min: self.kappa_min,
            s_max: self.s_max,
            eta: self.eta,
            d: self.d,
            audits_pass: self.audits_pass(),
            planes: self
                .planes
                .iter()
                .map(|p| PlaneSummary {
                    plane: p.plane,
                    species: p.network.species().to_vec(),
                    eta: p.eta,
                    xi: p.family.xi,
                    big_m: p.family.big_m,
                    alpha0: p.family.alpha_max,
                    vertices: p.polygon.vertices.clone(),
                    convex: p.convex,
                    square_included: p.square_included,
                    subtangentiality: p.subtangentiality.clone(),
                })
                .collect(),
        }
    }
}

/// Builds the three planar polygons and the box. Each planar family covers the square
/// `[ε, 1/ε]²` and the projections of all `starts`; the polygons are `P(α₀)` with their
/// closing sides moved to a common distance `d`.
pub fn build_k(
    net: &ReactionNetwork,
    kappas: &[f64],
    epsilon: f64,
    starts: &[Vec<f64>],
) -> Result<GacConstruction, GacError> {
    require_3(net)?;
    check_rates(net, kappas)?;
    if !graph::is_weakly_reversible(net) {
        return Err(GacError::NotWeaklyReversible);
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(GacError::BadEpsilon(epsilon));
    }
    if starts.is_empty() || starts.iter().any(|s| s.len() != 3 || s.iter().any(|&v| !(v > 0.0))) {
        return Err(GacError::BadStart);
    }
    let eta = eta_for(net, kappas, epsilon);
    let square = [
        [epsilon, epsilon],
        [1.0 / epsilon, 1.0 / epsilon],
        [epsilon, 1.0 / epsilon],
        [1.0 / epsilon, epsilon],
    ];

    let mut raw = Vec::with_capacity(3);
    for plane in Plane::ALL {
        let at = |source| GacError::Plane { plane, source };
        let (network, multiplicity) = project_with_multiplicity(net, plane)?;
        let plane_eta = eta / multiplicity as f64;
        let mut required: Vec<[f64; 2]> = square.to_vec();
        required.extend(starts.iter().map(|s| plane.project(s)));
        let c0 = required.pop().expect("at least one start");
        let options = FamilyOptions {
            required_points: required,
            ..Default::default()
        };
        let family = polygon::build_family_with(&network, plane_eta, c0, &options).map_err(at)?;
        let poly = family.polygon_at(family.alpha_max).map_err(at)?;
        raw.push((plane, network, plane_eta, family, poly));
    }
    let d = raw
        .iter()
        .map(|(.., poly)| {
            let (lo, _) = poly.bounds();
            lo[0].min(lo[1])
        })
        .fold(f64::INFINITY, f64::min);

    let planes = raw
        .into_iter()
        .map(|(plane, network, plane_eta, family, poly)| {
            let polygon = poly
                .with_sw_distance(d)
                .map_err(|source| GacError::Plane { plane, source })?;
            let subtangentiality =
                polygon::subtangentiality_audit_polygon(&network, plane_eta, &polygon, AUDIT_SAMPLES, |_| true);
            Ok(PlaneConstruction {
                plane,
                eta: plane_eta,
                convex: polygon.is_convex(),
                square_included: square.iter().all(|&q| polygon.contains(q)),
                subtangentiality,
                network,
                family,
                polygon,
            })
        })
        .collect::<Result<Vec<_>, GacError>>()?;
    Ok(GacConstruction {
        epsilon,
        kappa_min: kappa_min(kappas),
        s_max: s_max(net),
        eta,
        d,
        planes,
    })
}

/// `ε = ½ min(min_t (x+y+z)/3, 1/max_t max_i c_i)` over all trajectories.
pub fn epsilon_from(trajectories: &[Trajectory]) -> f64 {
    let mut low_sum = f64::INFINITY;
    let mut high = 0.0f64;
    for traj in trajectories {
        for s in &traj.states {
            low_sum = low_sum.min(s.iter().sum::<f64>());
            high = high.max(s.iter().copied().fold(0.0, f64::max));
        }
    }
    0.5 * (low_sum / 3.0).min(1.0 / high)
}

fn monomial(c: &[f64], p: &[f64]) -> f64 {
    c.iter().zip(p).map(|(&x, &e)| x.powi(e as i32)).product()
}

/// Inflow minus outflow at each complex, in the order of `net.complexes()`.
pub fn complex_balance_residual(net: &ReactionNetwork, kappas: &[f64], c: &[f64]) -> Vec<f64> {
    let complexes = net.complexes();
    let mut out = vec![0.0; complexes.len()];
    for (r, &k) in net.reactions().iter().zip(kappas) {
        let flux = k * monomial(c, &r.source.to_f64());
        let s = complexes
            .iter()
            .position(|x| *x == r.source)
            .expect("source is a complex");
        let t = complexes
            .iter()
            .position(|x| *x == r.target)
            .expect("target is a complex");
        out[t] += flux;
        out[s] -= flux;
    }
    out
}

/// Orthonormal bases of the stoichiometric subspace and its orthogonal complement.
fn stoichiometric_bases(net: &ReactionNetwork) -> (DMatrix<f64>, DMatrix<f64>) {
    let n = net.dim();
    let cols: Vec<f64> = net
        .reactions()
        .iter()
        .flat_map(|r| r.vector().iter().map(exact::to_f64).collect::<Vec<_>>())
        .collect();
    let m = DMatrix::from_column_slice(n, net.reactions().len(), &cols);
    let eig = (&m * m.transpose()).symmetric_eigen();
    let tol = 1e-9 * eig.eigenvalues.max().max(1.0);
    let pick = |keep: bool| {
        let idx: Vec<usize> = (0..n).filter(|&i| (eig.eigenvalues[i] > tol) == keep).collect();
        DMatrix::from_fn(n, idx.len(), |r, c| eig.eigenvectors[(r, idx[c])])
    };
    (pick(true), pick(false))
}

fn jacobian(net: &ReactionNetwork, kappas: &[f64], c: &[f64]) -> DMatrix<f64> {
    let n = c.len();
    let mut j = DMatrix::zeros(n, n);
    for (r, &k) in net.reactions().iter().zip(kappas) {
        let p = r.source.to_f64();
        let v: Vec<f64> = r.vector().iter().map(exact::to_f64).collect();
        let flux = k * monomial(c, &p);
        for col in 0..n {
            if p[col] == 0.0 {
                continue;
            }
            let d = flux * p[col] / c[col];
            for row in 0..n {
                j[(row, col)] += v[row] * d;
            }
        }
    }
    j
}

/// Positive equilibrium in the stoichiometric class of `c0`: damped Newton on `rhs = 0`
/// together with the conservation laws, seeded by integrating from another point of the
/// class so the result does not depend on the trajectory being checked.
pub fn find_equilibrium(net: &ReactionNetwork, kappas: &[f64], c0: &[f64]) -> Result<Vec<f64>, GacError> {
    check_rates(net, kappas)?;
    if c0.len() != net.dim() || c0.iter().any(|&v| !(v > 0.0)) {
        return Err(GacError::BadStart);
    }
    let (basis, complement) = stoichiometric_bases(net);
    let x0 = DVector::from_column_slice(c0);
    // the point of the class nearest (1, ..., 1), pulled toward c0 until positive
    let shift = &basis * (basis.transpose() * (DVector::from_element(c0.len(), 1.0) - &x0));
    let mut t = 1.0;
    while (&x0 + t * &shift).iter().any(|&v| v <= 0.0) {
        t *= 0.5;
    }
    let seed: Vec<f64> = (&x0 + t * &shift).iter().copied().collect();
    let schedule = constant_schedule(kappas)?;
    let traj = dynamics::integrate(net, &schedule, &seed, &IntegratorConfig::with_horizon(50.0))?;
    let residual = |c: &[f64]| -> Result<(DVector<f64>, f64), GacError> {
        let f = DVector::from_vec(dynamics::rhs_with_rates(net, kappas, c)?);
        let cv = DVector::from_column_slice(c);
        let g = basis.transpose() * &f;
        let w = complement.transpose() * (cv - &x0);
        let mut out = DVector::zeros(g.len() + w.len());
        out.rows_mut(0, g.len()).copy_from(&g);
        out.rows_mut(g.len(), w.len()).copy_from(&w);
        Ok((out, f.amax()))
    };
    let mut c = traj.last().to_vec();
    let (mut g, mut f_norm) = residual(&c)?;
    for _ in 0..100 {
        if f_norm < 1e-14 {
            break;
        }
        let jf = jacobian(net, kappas, &c);
        let mut jg = DMatrix::zeros(g.len(), c.len());
        let top = basis.transpose() * jf;
        jg.rows_mut(0, top.nrows()).copy_from(&top);
        let bottom = complement.transpose();
        jg.rows_mut(top.nrows(), bottom.nrows()).copy_from(&bottom);
        let step = jg
            .svd(true, true)
            .solve(&(-&g), 1e-14)
            .map_err(|e| GacError::NoConvergence(e.to_string()))?;
        let mut lambda = 1.0;
        let accepted = loop {
            let trial: Vec<f64> = c.iter().zip(step.iter()).map(|(x, d)| x + lambda * d).collect();
            if trial.iter().all(|&v| v > 0.0) {
                let (g_new, f_new) = residual(&trial)?;
                if g_new.norm() < g.norm() {
                    break Some((trial, g_new, f_new));
                }
            }
            lambda *= 0.5;
            if lambda < 1e-12 {
                break None;
            }
        };
        match accepted {
            Some((trial, g_new, f_new)) => {
                c = trial;
                g = g_new;
                f_norm = f_new;
            }
            None => break,
        }
    }
    if f_norm < 1e-10 {
        Ok(c)
    } else {
        Err(GacError::NoConvergence(format!("residual {f_norm:e} at {c:?}")))
    }
}

/// Constant schedule carrying `kappas`, with a rate box wide enough to hold them.
fn constant_schedule(kappas: &[f64]) -> Result<RateSchedule, DynError> {
    RateSchedule::constant(0.5 * kappa_min(kappas), kappas)
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Per-run evidence specific to the convergence check.
#[derive(Debug, Clone, Serialize)]
pub struct GacRun {
    pub index: usize,
    pub c0: Vec<f64>,
    pub equilibrium: Vec<f64>,
    pub balance_residual: f64,
    pub final_distance: f64,
    pub monotone_tail: bool,
    pub min_sum: f64,
    pub in_k: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GacReport {
    pub construction: GacSummary,
    pub runs: Vec<GacRun>,
    pub report: CertificationReport,
}

impl GacReport {
    pub fn passed(&self) -> bool {
        self.report.passed()
    }
}

/// Simulates every start with constant rates, builds `K` from the observed `ε`, and passes
/// when every recorded state lies in `K` and each trajectory's distance to the equilibrium
/// of its class ends below [`CONVERGENCE_TOL`] without increasing over the final 30%.
pub fn check_gac(
    net: &ReactionNetwork,
    kappas: &[f64],
    starts: &[Vec<f64>],
    config: &IntegratorConfig,
) -> Result<GacReport, GacError> {
    require_3(net)?;
    check_rates(net, kappas)?;
    if !graph::is_weakly_reversible(net) {
        return Err(GacError::NotWeaklyReversible);
    }
    let schedule = constant_schedule(kappas)?;
    let trajectories = starts
        .par_iter()
        .map(|c0| dynamics::integrate(net, &schedule, c0, config))
        .collect::<Result<Vec<_>, DynError>>()?;
    let epsilon = epsilon_from(&trajectories);
    let construction = build_k(net, kappas, epsilon, starts)?;

    let equilibria = starts
        .par_iter()
        .map(|c0| find_equilibrium(net, kappas, c0))
        .collect::<Result<Vec<_>, GacError>>()?;

    let mut report = CertificationReport::new(Claim::Persistence, construction.eta, config);
    report.seeds = vec![None; starts.len()];
    let mut runs = Vec::with_capacity(starts.len());
    if !construction.audits_pass() {
        report.verdict = Verdict::Fail;
        report.reason = Some("construction audit failed".into());
    }
    for (i, (traj, eq)) in trajectories.iter().zip(&equilibria).enumerate() {
        let balance = complex_balance_residual(net, kappas, eq)
            .iter()
            .fold(0.0f64, |m, r| m.max(r.abs()));
        let dist: Vec<f64> = traj.states.iter().map(|s| distance(s, eq)).collect();
        let tail = traj.tail_start(MONOTONE_FRACTION);
        let monotone = dist[tail..].windows(2).all(|w| w[1] <= w[0] + MONOTONE_SLACK);
        let final_distance = *dist.last().expect("nonempty");
        let outside = traj.states.iter().position(|s| !construction.contains(s, K_TOL));
        let min_sum = traj
            .states
            .iter()
            .map(|s| s.iter().sum::<f64>())
            .fold(f64::INFINITY, f64::min);
        let cx = |k: usize, detail: String| Counterexample {
            trajectory: i,
            time: traj.times[k],
            state: traj.states[k].clone(),
            detail,
        };
        if let Some(k) = outside {
            report.fail(cx(k, "state leaves K".into()));
        } else if balance > 1e-8 {
            report.fail(cx(
                0,
                format!("equilibrium is not complex-balanced (residual {balance:e})"),
            ));
        } else if final_distance >= CONVERGENCE_TOL {
            report.fail(cx(
                dist.len() - 1,
                format!("distance {final_distance:e} to the equilibrium at the horizon"),
            ));
        } else if !monotone {
            let k = tail
                + dist[tail..]
                    .windows(2)
                    .position(|w| w[1] > w[0] + MONOTONE_SLACK)
                    .unwrap_or(0)
                + 1;
            report.fail(cx(k, "distance to the equilibrium increases in the final 30%".into()));
        }
        let whole = dynamics::omega_limit_estimate(traj, 1.0);
        report.trajectories.push(TrajectoryEvidence {
            index: i,
            seed: None,
            c0: starts[i].clone(),
            samples: traj.len(),
            min: whole.lo,
            max: whole.hi,
            tail: dynamics::omega_limit_estimate(traj, TAIL_FRACTION),
            worst_excess: None,
            phi: None,
            steps: traj.stats.clone(),
        });
        runs.push(GacRun {
            index: i,
            c0: starts[i].clone(),
            equilibrium: eq.clone(),
            balance_residual: balance,
            final_distance,
            monotone_tail: monotone,
            min_sum,
            in_k: outside.is_none(),
        });
    }
    report.tail_box = report
        .trajectories
        .iter()
        .map(|e| e.tail.clone())
        .reduce(|a, b| dynamics::OmegaBox {
            lo: a.lo.iter().zip(&b.lo).map(|(x, y)| x.min(*y)).collect(),
            hi: a.hi.iter().zip(&b.hi).map(|(x, y)| x.max(*y)).collect(),
        });
    Ok(GacReport {
        construction: construction.summary(),
        runs,
        report,
    })
}

/// Distinct projected reactions, as labels, for diagnostics.
pub fn projected_labels(net: &ReactionNetwork, plane: Plane) -> Result<Vec<String>, GacError> {
    let p = project_network(net, plane)?;
    let mut seen = HashSet::new();
    Ok(p.reactions()
        .iter()
        .map(|r| p.reaction_label(r))
        .filter(|l| seen.insert(l.clone()))
        .collect())
}
