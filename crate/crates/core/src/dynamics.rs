//! κ-variable mass-action and power-law ODEs: rate schedules, right-hand sides and an
//! adaptive Dormand–Prince 5(4) integrator that keeps states in the open orthant.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exact;
use crate::netmodel::{Mode, RateMeta, ReactionNetwork};

#[derive(Debug, Error, PartialEq)]
pub enum DynError {
    #[error("eta must lie in (0,1), got {0}")]
    BadEta(f64),
    #[error("schedule has {found} rate functions, network has {expected} reactions")]
    RateCount { expected: usize, found: usize },
    #[error("state has {found} coordinates, expected {expected}")]
    Dimension { expected: usize, found: usize },
    #[error("nonpositive coordinate {index} = {value} with a negative exponent")]
    Domain { index: usize, value: f64 },
    #[error("step size underflow at t = {time}, state {state:?}")]
    StepUnderflow { time: f64, state: Vec<f64> },
    #[error("horizon unreachable: {steps} steps taken, stopped at t = {time}")]
    TooManySteps { time: f64, steps: usize },
    #[error("invalid integrator configuration: {0}")]
    Config(String),
    #[error("initial state must be strictly positive")]
    BadStart,
}

/// Time dependence of one rate constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum RateFunction {
    Constant(f64),
    /// `values[k]` holds on `[breakpoints[k-1], breakpoints[k])`; the last value persists.
    Piecewise {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
    Sinusoidal {
        mean: f64,
        amplitude: f64,
        period: f64,
        phase: f64,
    },
}

impl RateFunction {
    fn raw(&self, t: f64) -> f64 {
        match self {
            RateFunction::Constant(k) => *k,
            RateFunction::Piecewise { breakpoints, values } => {
                let k = breakpoints.partition_point(|&b| b <= t);
                values[k.min(values.len() - 1)]
            }
            RateFunction::Sinusoidal {
                mean,
                amplitude,
                period,
                phase,
            } => mean + amplitude * (std::f64::consts::TAU * t / period + phase).sin(),
        }
    }
}

/// Schedule kinds selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ScheduleKind {
    Constant,
    Piecewise,
    Sinusoidal,
}

/// Per-reaction rate functions, each confined to the open interval `(η, 1/η)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RateSchedule {
    eta: f64,
    functions: Vec<RateFunction>,
}

fn check_eta(eta: f64) -> Result<(), DynError> {
    if eta > 0.0 && eta < 1.0 {
        Ok(())
    } else {
        Err(DynError::BadEta(eta))
    }
}

/// Sampling interval `[lo, hi]` for a reaction: its declared range, or all of `(η, 1/η)`.
fn sampling_range(meta: Option<&RateMeta>, eta: f64) -> (f64, f64) {
    let (lo, hi) = (eta, 1.0 / eta);
    match meta {
        Some(RateMeta::Range(a, b)) => (a.max(lo), b.min(hi)),
        _ => (lo, hi),
    }
}

impl RateSchedule {
    pub fn new(eta: f64, functions: Vec<RateFunction>) -> Result<Self, DynError> {
        check_eta(eta)?;
        Ok(RateSchedule { eta, functions })
    }

    pub fn constant(eta: f64, rates: &[f64]) -> Result<Self, DynError> {
        Self::new(eta, rates.iter().map(|&k| RateFunction::Constant(k)).collect())
    }

    /// Constant schedule at the network's nominal rates.
    pub fn nominal(net: &ReactionNetwork, eta: f64) -> Result<Self, DynError> {
        Self::constant(eta, &net.nominal_rates())
    }

    /// Piecewise-constant rates resampled every `interval` up to `horizon`, log-uniform in
    /// each reaction's range.
    pub fn random_piecewise(
        net: &ReactionNetwork,
        eta: f64,
        interval: f64,
        horizon: f64,
        seed: u64,
    ) -> Result<Self, DynError> {
        check_eta(eta)?;
        if !(interval > 0.0 && horizon > 0.0) {
            return Err(DynError::Config(
                "piecewise interval and horizon must be positive".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pieces = (horizon / interval).ceil() as usize;
        let breakpoints: Vec<f64> = (1..pieces).map(|k| k as f64 * interval).collect();
        let functions = (0..net.reactions().len())
            .map(|i| {
                let (lo, hi) = sampling_range(net.rates()[i].as_ref(), eta);
                let values = (0..pieces).map(|_| (rng.gen_range(lo.ln()..=hi.ln())).exp()).collect();
                RateFunction::Piecewise {
                    breakpoints: breakpoints.clone(),
                    values,
                }
            })
            .collect();
        Self::new(eta, functions)
    }

    /// Sinusoids around the nominal rate with seeded periods in `[1, 10]` and phases.
    pub fn random_sinusoidal(net: &ReactionNetwork, eta: f64, seed: u64) -> Result<Self, DynError> {
        check_eta(eta)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let functions = net
            .nominal_rates()
            .iter()
            .enumerate()
            .map(|(i, &k)| {
                let (lo, hi) = sampling_range(net.rates()[i].as_ref(), eta);
                let mean = k.clamp(lo, hi);
                let amplitude = 0.9 * (mean - lo).min(hi - mean);
                RateFunction::Sinusoidal {
                    mean,
                    amplitude,
                    period: rng.gen_range(1.0..=10.0),
                    phase: rng.gen_range(0.0..std::f64::consts::TAU),
                }
            })
            .collect();
        Self::new(eta, functions)
    }

    pub fn build(
        kind: ScheduleKind,
        net: &ReactionNetwork,
        eta: f64,
        horizon: f64,
        seed: u64,
    ) -> Result<Self, DynError> {
        match kind {
            ScheduleKind::Constant => Self::nominal(net, eta),
            ScheduleKind::Piecewise => Self::random_piecewise(net, eta, 1.0, horizon, seed),
            ScheduleKind::Sinusoidal => Self::random_sinusoidal(net, eta, seed),
        }
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn functions(&self) -> &[RateFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    /// Rate of reaction `r` at time `t`, clamped strictly inside `(η, 1/η)`.
    pub fn rate(&self, r: usize, t: f64) -> f64 {
        self.rate_in_piece(r, t, t)
    }

    /// Like [`rate`](Self::rate), but piecewise functions are read at `anchor`, so a step
    /// ending on a breakpoint keeps the piece it started in.
    pub fn rate_in_piece(&self, r: usize, t: f64, anchor: f64) -> f64 {
        let lo = self.eta * (1.0 + 1e-12);
        let hi = (1.0 - 1e-12) / self.eta;
        let f = &self.functions[r];
        let raw = match f {
            RateFunction::Piecewise { .. } => f.raw(anchor),
            _ => f.raw(t),
        };
        raw.clamp(lo, hi)
    }

    /// First piecewise breakpoint strictly after `t`.
    pub fn next_breakpoint(&self, t: f64) -> Option<f64> {
        self.functions
            .iter()
            .filter_map(|f| match f {
                RateFunction::Piecewise { breakpoints, .. } => {
                    breakpoints.get(breakpoints.partition_point(|&b| b <= t)).copied()
                }
                _ => None,
            })
            .min_by(f64::total_cmp)
    }
}

/// An autonomous or time-dependent vector field on the open orthant.
pub trait System {
    fn dim(&self) -> usize;
    fn eval(&self, t: f64, c: &[f64], out: &mut [f64]) -> Result<(), DynError>;
    /// Evaluation inside a step that started at `anchor`; fields with breakpoints use the
    /// piece containing `anchor`.
    fn eval_in_step(&self, t: f64, _anchor: f64, c: &[f64], out: &mut [f64]) -> Result<(), DynError> {
        self.eval(t, c, out)
    }
    /// Times where the field is discontinuous; steps never straddle them.
    fn next_breakpoint(&self, _t: f64) -> Option<f64> {
        None
    }
}

/// `ċ = Σ κ_r(t) c^{P_r} (P'_r - P_r)`.
pub struct KineticSystem<'a> {
    sources: Vec<Vec<f64>>,
    integer_sources: Vec<Option<Vec<i32>>>,
    vectors: Vec<Vec<f64>>,
    schedule: &'a RateSchedule,
    dim: usize,
}

impl<'a> KineticSystem<'a> {
    pub fn new(net: &ReactionNetwork, schedule: &'a RateSchedule) -> Result<Self, DynError> {
        if schedule.len() != net.reactions().len() {
            return Err(DynError::RateCount {
                expected: net.reactions().len(),
                found: schedule.len(),
            });
        }
        let to_f = |v: &[exact::Rational]| v.iter().map(exact::to_f64).collect::<Vec<_>>();
        let sources: Vec<Vec<f64>> = net.reactions().iter().map(|r| to_f(&r.source.0)).collect();
        // chemical exponents use repeated multiplication, which keeps 0^0 = 1 exact
        let integer_sources = net
            .reactions()
            .iter()
            .map(|r| {
                (net.mode() == Mode::Chemical && r.source.is_nonnegative_integral())
                    .then(|| r.source.0.iter().map(|q| exact::to_f64(q) as i32).collect())
            })
            .collect();
        Ok(KineticSystem {
            sources,
            integer_sources,
            vectors: net.reactions().iter().map(|r| to_f(&r.vector())).collect(),
            schedule,
            dim: net.dim(),
        })
    }

    fn monomial(&self, r: usize, c: &[f64]) -> Result<f64, DynError> {
        if let Some(p) = &self.integer_sources[r] {
            return Ok(p.iter().zip(c).map(|(&k, &x)| x.powi(k)).product());
        }
        let mut m = 1.0;
        for (i, (&p, &x)) in self.sources[r].iter().zip(c).enumerate() {
            if p == 0.0 {
                continue;
            }
            if x <= 0.0 && p < 0.0 {
                return Err(DynError::Domain { index: i, value: x });
            }
            m *= x.powf(p);
        }
        Ok(m)
    }

    /// Right-hand side with explicit rate values (no clamping).
    pub fn eval_with_rates(&self, rates: &[f64], c: &[f64], out: &mut [f64]) -> Result<(), DynError> {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (r, v) in self.vectors.iter().enumerate() {
            let w = rates[r] * self.monomial(r, c)?;
            for (o, vi) in out.iter_mut().zip(v) {
                *o += w * vi;
            }
        }
        Ok(())
    }
}

impl System for KineticSystem<'_> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, t: f64, c: &[f64], out: &mut [f64]) -> Result<(), DynError> {
        self.eval_in_step(t, t, c, out)
    }

    fn eval_in_step(&self, t: f64, anchor: f64, c: &[f64], out: &mut [f64]) -> Result<(), DynError> {
        out.iter_mut().for_each(|o| *o = 0.0);
        for (r, v) in self.vectors.iter().enumerate() {
            let w = self.schedule.rate_in_piece(r, t, anchor) * self.monomial(r, c)?;
            for (o, vi) in out.iter_mut().zip(v) {
                *o += w * vi;
            }
        }
        Ok(())
    }

    fn next_breakpoint(&self, t: f64) -> Option<f64> {
        self.schedule.next_breakpoint(t)
    }
}

/// `ċ` for a network under a schedule at time `t`.
pub fn rhs(net: &ReactionNetwork, schedule: &RateSchedule, t: f64, c: &[f64]) -> Result<Vec<f64>, DynError> {
    if c.len() != net.dim() {
        return Err(DynError::Dimension {
            expected: net.dim(),
            found: c.len(),
        });
    }
    let sys = KineticSystem::new(net, schedule)?;
    let mut out = vec![0.0; c.len()];
    sys.eval(t, c, &mut out)?;
    Ok(out)
}

/// `ċ` with explicit rate constants, outside any `(η, 1/η)` box.
pub fn rhs_with_rates(net: &ReactionNetwork, rates: &[f64], c: &[f64]) -> Result<Vec<f64>, DynError> {
    let schedule = RateSchedule::constant(0.5, rates)?;
    let sys = KineticSystem::new(net, &schedule)?;
    let mut out = vec![0.0; c.len()];
    sys.eval_with_rates(rates, c, &mut out)?;
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Unlimited by default; infinity serializes as `null`.
    pub max_step: f64,
    pub horizon: f64,
    /// Recording interval; `0` records every accepted step.
    pub record_stride: f64,
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_step: f64::INFINITY,
            horizon: 100.0,
            record_stride: 0.1,
            max_steps: 50_000_000,
        }
    }
}

impl IntegratorConfig {
    pub fn with_horizon(horizon: f64) -> Self {
        IntegratorConfig {
            horizon,
            record_stride: horizon / 1000.0,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<(), DynError> {
        let bad = |m: &str| Err(DynError::Config(m.to_string()));
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return bad("tolerances must be positive");
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return bad("horizon must be positive and finite");
        }
        if !(self.record_stride >= 0.0 && self.max_step > 0.0) {
            return bad("record stride must be nonnegative and max step positive");
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    pub positivity_rejections: usize,
    pub max_error_estimate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
    pub stats: StepStats,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> &[f64] {
        self.states.last().expect("trajectory is never empty")
    }

    /// Index of the first sample in the trailing `fraction` of the record.
    pub fn tail_start(&self, fraction: f64) -> usize {
        let n = self.len();
        let skip = ((1.0 - fraction.clamp(0.0, 1.0)) * n as f64).floor() as usize;
        skip.min(n.saturating_sub(1))
    }
}

// Dormand–Prince 5(4) tableau
const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B_HAT: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// One Dormand–Prince step from `(t, y)` with `k[0] = f(t, y)` already filled. Returns the
/// fifth-order state and the embedded error vector, or `None` if a stage left the orthant.
fn dopri_step<S: System>(
    sys: &S,
    t: f64,
    y: &[f64],
    h: f64,
    k: &mut [Vec<f64>; 7],
) -> Result<Option<(Vec<f64>, Vec<f64>)>, DynError> {
    let n = y.len();
    let mut stage = vec![0.0; n];
    for s in 1..7 {
        for i in 0..n {
            let mut acc = y[i];
            for (j, kj) in k.iter().enumerate().take(s) {
                acc += h * A[s][j] * kj[i];
            }
            stage[i] = acc;
        }
        if stage.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Ok(None);
        }
        sys.eval_in_step(t + C[s] * h, t, &stage, &mut k[s])?;
    }
    // the last stage is evaluated at the fifth-order solution (FSAL)
    let y_new = stage;
    let err: Vec<f64> = (0..n)
        .map(|i| h * (0..7).map(|j| (B[j] - B_HAT[j]) * k[j][i]).sum::<f64>())
        .collect();
    Ok(Some((y_new, err)))
}

fn error_norm(err: &[f64], y: &[f64], y_new: &[f64], cfg: &IntegratorConfig) -> f64 {
    let sum: f64 = err
        .iter()
        .zip(y.iter().zip(y_new))
        .map(|(e, (a, b))| {
            let scale = cfg.abs_tol + cfg.rel_tol * a.abs().max(b.abs());
            (e / scale).powi(2)
        })
        .sum();
    (sum / err.len() as f64).sqrt()
}

/// Adaptive integration of `sys` from `c0` over `[0, horizon]`.
pub fn integrate_system<S: System>(sys: &S, c0: &[f64], cfg: &IntegratorConfig) -> Result<Trajectory, DynError> {
    cfg.validate()?;
    if c0.len() != sys.dim() {
        return Err(DynError::Dimension {
            expected: sys.dim(),
            found: c0.len(),
        });
    }
    if c0.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
        return Err(DynError::BadStart);
    }
    let n = c0.len();
    let mut t = 0.0;
    let mut y = c0.to_vec();
    let mut k: [Vec<f64>; 7] = std::array::from_fn(|_| vec![0.0; n]);
    sys.eval(t, &y, &mut k[0])?;
    let mut stats = StepStats::default();
    let mut times = vec![0.0];
    let mut states = vec![y.clone()];

    // initial step from the scale of the derivative
    let d0 = y.iter().map(|v| v.abs()).fold(0.0, f64::max);
    let d1 = k[0].iter().map(|v| v.abs()).fold(0.0, f64::max);
    let mut h = if d1 > 0.0 { 0.01 * (d0 / d1).max(1e-6) } else { 0.01 };
    h = h.min(cfg.max_step).min(cfg.horizon);

    let mut next_record = if cfg.record_stride > 0.0 {
        cfg.record_stride
    } else {
        f64::INFINITY
    };
    let mut record_index = 1usize;
    let mut steps = 0usize;
    while t < cfg.horizon {
        steps += 1;
        if steps > cfg.max_steps {
            return Err(DynError::TooManySteps { time: t, steps });
        }
        let mut stop = cfg.horizon.min(next_record);
        let breakpoint = sys.next_breakpoint(t);
        if let Some(b) = breakpoint {
            stop = stop.min(b);
        }
        let clipped = t + h >= stop;
        let h_try = if clipped { stop - t } else { h };
        if h_try <= 1e-14 * t.abs().max(1.0) && !clipped {
            return Err(DynError::StepUnderflow { time: t, state: y });
        }
        let Some((y_new, err)) = dopri_step(sys, t, &y, h_try, &mut k)? else {
            stats.rejected += 1;
            stats.positivity_rejections += 1;
            h = h_try * 0.5;
            if h <= 1e-14 * t.abs().max(1.0) {
                return Err(DynError::StepUnderflow { time: t, state: y });
            }
            continue;
        };
        let e = error_norm(&err, &y, &y_new, cfg);
        if !e.is_finite() || e > 1.0 {
            stats.rejected += 1;
            let factor = if e.is_finite() {
                (0.9 * e.powf(-0.2)).clamp(0.1, 0.9)
            } else {
                0.25
            };
            h = h_try * factor;
            if h <= 1e-14 * t.abs().max(1.0) {
                return Err(DynError::StepUnderflow { time: t, state: y });
            }
            continue;
        }
        stats.accepted += 1;
        stats.max_error_estimate = stats.max_error_estimate.max(e);
        t = if clipped { stop } else { t + h_try };
        y = y_new;
        k.swap(0, 6);
        if clipped && breakpoint == Some(stop) {
            // the FSAL derivative belongs to the piece just left
            sys.eval(t, &y, &mut k[0])?;
        }
        let factor = if e > 0.0 {
            (0.9 * e.powf(-0.2)).clamp(0.2, 5.0)
        } else {
            5.0
        };
        let proposed = (h_try * factor).min(cfg.max_step);
        // a step shortened only to hit a stop should not shrink the next one
        h = if clipped { proposed.max(h) } else { proposed };
        if cfg.record_stride == 0.0 {
            times.push(t);
            states.push(y.clone());
        } else if t >= next_record || t >= cfg.horizon {
            times.push(t);
            states.push(y.clone());
            record_index += 1;
            next_record = record_index as f64 * cfg.record_stride;
        }
    }
    if *times.last().unwrap() < t {
        times.push(t);
        states.push(y);
    }
    Ok(Trajectory { times, states, stats })
}

/// Integrates a network under a schedule.
pub fn integrate(
    net: &ReactionNetwork,
    schedule: &RateSchedule,
    c0: &[f64],
    cfg: &IntegratorConfig,
) -> Result<Trajectory, DynError> {
    let sys = KineticSystem::new(net, schedule)?;
    integrate_system(&sys, c0, cfg)
}

/// Fixed-step fifth-order integration; used for convergence-order checks.
pub fn integrate_fixed<S: System>(sys: &S, c0: &[f64], t_end: f64, steps: usize) -> Result<Vec<f64>, DynError> {
    let n = c0.len();
    let h = t_end / steps as f64;
    let mut y = c0.to_vec();
    let mut k: [Vec<f64>; 7] = std::array::from_fn(|_| vec![0.0; n]);
    for s in 0..steps {
        let t = s as f64 * h;
        sys.eval(t, &y, &mut k[0])?;
        match dopri_step(sys, t, &y, h, &mut k)? {
            Some((y_new, _)) => y = y_new,
            None => return Err(DynError::StepUnderflow { time: t, state: y }),
        }
    }
    Ok(y)
}

/// Per-coordinate bounds over the trailing part of a trajectory.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OmegaBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

pub fn omega_limit_estimate(traj: &Trajectory, tail_fraction: f64) -> OmegaBox {
    let n = traj.states[0].len();
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for s in &traj.states[traj.tail_start(tail_fraction)..] {
        for i in 0..n {
            lo[i] = lo[i].min(s[i]);
            hi[i] = hi[i].max(s[i]);
        }
    }
    OmegaBox { lo, hi }
}

/// Largest distance of `c(t) - c(0)` from the stoichiometric subspace.
pub fn stoichiometric_residual(net: &ReactionNetwork, traj: &Trajectory) -> f64 {
    let n = net.dim();
    let cols: Vec<f64> = net
        .reactions()
        .iter()
        .flat_map(|r| r.vector().iter().map(exact::to_f64).collect::<Vec<_>>())
        .collect();
    let m = DMatrix::from_column_slice(n, net.reactions().len(), &cols);
    let svd = m.svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let tol = 1e-10 * svd.singular_values.max().max(1.0);
    let basis: Vec<_> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > tol)
        .map(|i| u.column(i).into_owned())
        .collect();
    let c0 = nalgebra::DVector::from_column_slice(&traj.states[0]);
    traj.states
        .iter()
        .map(|s| {
            let mut d = nalgebra::DVector::from_column_slice(s) - &c0;
            for b in &basis {
                let proj = b.dot(&d);
                d -= b * proj;
            }
            d.norm()
        })
        .fold(0.0, f64::max)
}
