//! The one-parameter family of convex invariant polygons for two-species networks.
//!
//! A polygon `P(α)` has four corner chains. Counterclockwise from `A_1 = (α, α^{r_.5})`:
//! the `A` chain descends the south-west corner on curves `y = x^{r_{i-.5}}`, a horizontal
//! side leads to the `B` chain in the south-east, a vertical side to the `C` chain in the
//! north-east, a horizontal side to the `D` chain in the north-west, and a closing side
//! returns to the start. Chain sides are orthogonal to `(1, σ)` for the slopes `σ` between
//! source complexes.
//!
//! The closing side is vertical at `x = min(α, D_{f+1}.x)` and meets the first side
//! extended back beyond `A_1` or the last side extended beyond `D_{f+1}`. A straight segment `D_{f+1} A_1` tilts with `α`, and the corner of `P(α)`
//! near `D_{f+1}` then escapes `P(α')` for `α' < α`.

use std::fmt;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::endo::{self, EndoError};
use crate::exact::{self, Rational, Vec2};
use crate::netmodel::ReactionNetwork;

#[derive(Debug, Error, PartialEq)]
pub enum PolygonError {
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error("eta must lie in (0,1), got {0}")]
    BadEta(f64),
    #[error("initial condition must be strictly positive")]
    BadStart,
    #[error("no reaction with source on the essential support points inward along {0}; network is not endotactic")]
    NotEndotactic(String),
    #[error("construction failed after {iterations} iterations: {condition}")]
    SearchFailed { iterations: usize, condition: String },
    #[error("alpha {alpha} outside (0, {alpha_max}]")]
    AlphaOutOfRange { alpha: f64, alpha_max: f64 },
    #[error("vertex construction failed at {0}")]
    Vertex(String),
    #[error("point ({0}, {1}) is outside the family's covered range")]
    OutsideFamily(f64, f64),
}

fn point_of(c: &crate::netmodel::Complex) -> Vec2 {
    [c.0[0].clone(), c.0[1].clone()]
}

/// Slopes `(m1-m2)/(n2-n1)` between source complexes, split by sign, plus the interleaving
/// fractional exponents that host the polygon vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlopeSet {
    pub r: Vec<Rational>,
    pub s: Vec<Rational>,
    pub r_frac: Vec<Rational>,
    pub s_frac: Vec<Rational>,
}

impl SlopeSet {
    /// No pair of sources differs in both coordinates.
    pub fn is_empty(&self) -> bool {
        self.r.is_empty() && self.s.is_empty()
    }

    pub fn e(&self) -> usize {
        self.r.len()
    }

    pub fn f(&self) -> usize {
        self.s.len()
    }

    /// Strict interleaving of slopes and fractional exponents.
    pub fn interleaves(&self) -> bool {
        let chain = |slopes: &[Rational], fracs: &[Rational]| {
            fracs.len() == slopes.len() + 1
                && slopes
                    .iter()
                    .enumerate()
                    .all(|(i, v)| fracs[i] < *v && *v < fracs[i + 1])
        };
        chain(&self.r, &self.r_frac)
            && chain(&self.s, &self.s_frac)
            && self.r_frac.iter().all(Signed::is_positive)
            && self.s_frac.iter().all(Signed::is_negative)
    }
}

fn fractional(slopes: &[Rational], first: Rational, last: Rational, default: Rational) -> Vec<Rational> {
    if slopes.is_empty() {
        return vec![default];
    }
    let two = exact::int(2);
    let mut out = vec![first];
    for w in slopes.windows(2) {
        out.push((&w[0] + &w[1]) / &two);
    }
    out.push(last);
    out
}

pub fn slope_set(net: &ReactionNetwork) -> Result<SlopeSet, PolygonError> {
    if net.dim() != 2 {
        return Err(EndoError::Dimension(net.dim()).into());
    }
    let sources: Vec<Vec2> = net.source_complexes().iter().map(point_of).collect();
    let mut slopes = Vec::new();
    for (i, p) in sources.iter().enumerate() {
        for q in &sources[i + 1..] {
            if p[0] != q[0] && p[1] != q[1] {
                slopes.push((&p[0] - &q[0]) / (&q[1] - &p[1]));
            }
        }
    }
    slopes.sort();
    slopes.dedup();
    let r: Vec<Rational> = slopes.iter().filter(|q| q.is_positive()).cloned().collect();
    let s: Vec<Rational> = slopes.iter().filter(|q| q.is_negative()).cloned().collect();
    let two = exact::int(2);
    let one = exact::int(1);
    let r_frac = match (r.first(), r.last()) {
        (Some(a), Some(b)) => fractional(&r, a / &two, b + &one, one.clone()),
        _ => vec![one.clone()],
    };
    let s_frac = match (s.first(), s.last()) {
        (Some(a), Some(b)) => fractional(&s, a - &one, b / &two, -one.clone()),
        _ => vec![-one],
    };
    Ok(SlopeSet { r, s, r_frac, s_frac })
}

fn f64s(v: &[Rational]) -> Vec<f64> {
    v.iter().map(exact::to_f64).collect()
}

fn norm(v: &Vec2) -> f64 {
    let (a, b) = (exact::to_f64(&v[0]), exact::to_f64(&v[1]));
    a.hypot(b)
}

/// Per-direction data behind the bound `δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalBound {
    pub normal: Vec2,
    /// Dominant reaction on the essential support; `None` when every reaction is orthogonal.
    pub reaction: Option<usize>,
    pub delta_n: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaBound {
    pub delta: f64,
    pub per_normal: Vec<NormalBound>,
}

/// Directions whose sweep must produce a dominant reaction: the hull test set and the
/// normals `±(1,σ)` of every slope (or, in lower mode, only quadrant directions).
fn bound_normals(net: &ReactionNetwork, slopes: &SlopeSet, lower: bool) -> Result<Vec<Vec2>, PolygonError> {
    let mut normals = if lower {
        endo::lower_test_vector_set(net)?.vectors
    } else {
        endo::test_vector_set(net)?.vectors
    };
    let one = exact::int(1);
    for sigma in slopes.r.iter().chain(&slopes.s) {
        let n = exact::primitive(&[one.clone(), sigma.clone()]);
        let positive_quadrant = !n[1].is_negative();
        if !lower || positive_quadrant {
            normals.push(n.clone());
        }
        if !lower {
            normals.push([-n[0].clone(), -n[1].clone()]);
        }
    }
    normals.sort();
    normals.dedup();
    Ok(normals)
}

fn delta_over(net: &ReactionNetwork, eta: f64, normals: Vec<Vec2>) -> Result<DeltaBound, PolygonError> {
    if !(eta > 0.0 && eta < 1.0) {
        return Err(PolygonError::BadEta(eta));
    }
    let total: f64 = net
        .reactions()
        .iter()
        .map(|r| {
            let v = r.vector();
            norm(&[v[0].clone(), v[1].clone()])
        })
        .sum();
    let mut per_normal = Vec::with_capacity(normals.len());
    let mut delta = f64::INFINITY;
    for n in normals {
        if endo::essential_subnetwork(net, &n)?.is_empty() {
            per_normal.push(NormalBound {
                normal: n,
                reaction: None,
                delta_n: None,
            });
            continue;
        }
        let dominant = if endo::sweep_test(net, &n)?.passed() {
            endo::dominant_reaction(net, &n)?
        } else {
            None
        };
        let Some(i) = dominant else {
            return Err(PolygonError::NotEndotactic(format!(
                "({}, {})",
                exact::format_rational(&n[0]),
                exact::format_rational(&n[1])
            )));
        };
        let v = net.reactions()[i].vector();
        let d = exact::to_f64(&(&v[0] * &n[0] + &v[1] * &n[1]));
        let delta_n = eta * eta * d / (norm(&n) * total);
        delta = delta.min(delta_n);
        per_normal.push(NormalBound {
            normal: n,
            reaction: Some(i),
            delta_n: Some(delta_n),
        });
    }
    if !delta.is_finite() {
        return Err(PolygonError::NotEndotactic("every direction".into()));
    }
    Ok(DeltaBound { delta, per_normal })
}

/// The constant `δ` bounding how much weaker competing source monomials must be.
pub fn delta_bound(net: &ReactionNetwork, eta: f64) -> Result<DeltaBound, PolygonError> {
    let slopes = slope_set(net)?;
    delta_over(net, eta, bound_normals(net, &slopes, false)?)
}

/// `δ` over quadrant directions only, for the lower-endotactic variant.
pub fn lower_delta_bound(net: &ReactionNetwork, eta: f64) -> Result<DeltaBound, PolygonError> {
    let slopes = slope_set(net)?;
    delta_over(net, eta, bound_normals(net, &slopes, true)?)
}

/// Coordinate differences between source complexes (both orders, nonzero only).
fn source_differences(net: &ReactionNetwork, coord: usize) -> Vec<f64> {
    let sources = net.source_complexes();
    let mut out = Vec::new();
    for p in &sources {
        for q in &sources {
            let d = &q.0[coord] - &p.0[coord];
            if !d.is_zero() {
                out.push(exact::to_f64(&d));
            }
        }
    }
    out
}

/// Which side of the polygon a segment belongs to; chain indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SideKind {
    A(usize),
    Bottom,
    B(usize),
    Right,
    C(usize),
    Top,
    D(usize),
    Left,
}

impl fmt::Display for SideKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SideKind::A(i) => write!(f, "A{i}A{}", i + 1),
            SideKind::B(j) => write!(f, "B{j}B{}", j + 1),
            SideKind::C(i) => write!(f, "C{i}C{}", i + 1),
            SideKind::D(j) => write!(f, "D{j}D{}", j + 1),
            SideKind::Bottom => write!(f, "bottom"),
            SideKind::Right => write!(f, "right"),
            SideKind::Top => write!(f, "top"),
            SideKind::Left => write!(f, "left"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Side {
    pub kind: SideKind,
    pub start: [f64; 2],
    pub end: [f64; 2],
    /// Inward normal, exact when the side direction is fixed by a slope or an axis.
    pub exact_normal: Option<Vec2>,
    pub normal: [f64; 2],
    pub unit: [f64; 2],
    /// `unit · start`; the inside is `unit · p >= offset`.
    pub offset: f64,
}

impl Side {
    fn new(kind: SideKind, start: [f64; 2], end: [f64; 2], exact_normal: Option<Vec2>) -> Self {
        let normal = match &exact_normal {
            Some(n) => [exact::to_f64(&n[0]), exact::to_f64(&n[1])],
            None => [start[1] - end[1], end[0] - start[0]],
        };
        let len = normal[0].hypot(normal[1]);
        let unit = [normal[0] / len, normal[1] / len];
        Side {
            kind,
            start,
            end,
            exact_normal,
            normal,
            unit,
            offset: unit[0] * start[0] + unit[1] * start[1],
        }
    }

    pub fn point_at(&self, t: f64) -> [f64; 2] {
        // convex combination: start + t(end - start) cancels when the endpoints differ by
        // tens of orders of magnitude
        [
            (1.0 - t) * self.start[0] + t * self.end[0],
            (1.0 - t) * self.start[1] + t * self.end[1],
        ]
    }

    /// Signed distance-like margin; nonnegative inside.
    pub fn margin(&self, p: [f64; 2]) -> f64 {
        self.unit[0] * p[0] + self.unit[1] * p[1] - self.offset
    }

    fn scale(&self, p: [f64; 2]) -> f64 {
        (self.unit[0] * p[0]).abs() + (self.unit[1] * p[1]).abs() + self.offset.abs()
    }
}

/// A convex polygon given by counterclockwise vertices and the sides between them.
#[derive(Debug, Clone)]
pub struct Polygon {
    pub alpha: f64,
    /// `A_1 = (α, α^{r_.5})`, on the first side.
    pub a1: [f64; 2],
    /// `D_{f+1}`, on the last side.
    pub d_end: [f64; 2],
    pub vertices: Vec<[f64; 2]>,
    pub labels: Vec<String>,
    /// `sides[i]` joins `vertices[i]` to `vertices[i + 1]`.
    pub sides: Vec<Side>,
}

/// Relative tolerance used by exact containment to absorb rounding in the half-plane offsets.
const ROUNDING: f64 = 1e-12;

impl Polygon {
    fn from_parts(
        alpha: f64,
        a1: [f64; 2],
        d_end: [f64; 2],
        vertices: Vec<[f64; 2]>,
        labels: Vec<String>,
        specs: Vec<(SideKind, Option<Vec2>)>,
    ) -> Self {
        let n = vertices.len();
        let sides = specs
            .into_iter()
            .enumerate()
            .map(|(i, (kind, exact_normal))| Side::new(kind, vertices[i], vertices[(i + 1) % n], exact_normal))
            .collect();
        Polygon {
            alpha,
            a1,
            d_end,
            vertices,
            labels,
            sides,
        }
    }

    /// Closed containment up to floating-point rounding of the side offsets.
    pub fn contains(&self, p: [f64; 2]) -> bool {
        self.contains_tol(p, ROUNDING)
    }

    /// Containment with a tolerance relative to the magnitudes involved in each side test.
    pub fn contains_tol(&self, p: [f64; 2], rel_tol: f64) -> bool {
        self.sides.iter().all(|s| s.margin(p) >= -rel_tol * s.scale(p))
    }

    /// Containment allowing an absolute overshoot of `abs_tol` past each side, on top of the
    /// rounding allowance of [`contains`](Self::contains).
    pub fn contains_abs(&self, p: [f64; 2], abs_tol: f64) -> bool {
        self.sides
            .iter()
            .all(|s| s.margin(p) >= -(abs_tol + ROUNDING * s.scale(p)))
    }

    /// Largest distance past any side line; zero or negative inside.
    pub fn excess(&self, p: [f64; 2]) -> f64 {
        self.sides
            .iter()
            .map(|s| -s.margin(p))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest side margin relative to its scale; negative means outside.
    pub fn relative_margin(&self, p: [f64; 2]) -> f64 {
        self.sides
            .iter()
            .map(|s| s.margin(p) / s.scale(p).max(f64::MIN_POSITIVE))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn centroid(&self) -> [f64; 2] {
        let n = self.vertices.len() as f64;
        let sx: f64 = self.vertices.iter().map(|v| v[0]).sum();
        let sy: f64 = self.vertices.iter().map(|v| v[1]).sum();
        [sx / n, sy / n]
    }

    pub fn vertex(&self, label: &str) -> Option<[f64; 2]> {
        self.labels.iter().position(|l| l == label).map(|i| self.vertices[i])
    }

    /// Bounding box `[min, max]`.
    pub fn bounds(&self) -> ([f64; 2], [f64; 2]) {
        let mut lo = [f64::INFINITY; 2];
        let mut hi = [f64::NEG_INFINITY; 2];
        for v in &self.vertices {
            for k in 0..2 {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
        (lo, hi)
    }

    /// Moves the left side out to `x = d` and the bottom side down to `y = d`, extending the
    /// sides next to them. `a1` and `d_end` are kept as construction points and may end up
    /// inside.
    pub fn with_sw_distance(&self, d: f64) -> Result<Polygon, PolygonError> {
        let n = self.sides.len();
        let left = n - 1;
        let bottom = self
            .sides
            .iter()
            .position(|s| s.kind == SideKind::Bottom)
            .ok_or_else(|| PolygonError::Vertex("no bottom side".into()))?;
        if !(d > 0.0 && d <= self.vertices[0][0] && d <= self.vertices[bottom][1]) {
            return Err(PolygonError::Vertex(format!("distance {d:e} would cut the polygon")));
        }
        // unmoved sides keep their lines: any original endpoint plus the side direction
        let on_x = |i: usize| -> f64 {
            let s = &self.sides[i];
            let (q, dir) = (s.start, [s.normal[1], -s.normal[0]]);
            q[1] + (d - q[0]) / dir[0] * dir[1]
        };
        let on_y = |i: usize| -> f64 {
            let s = &self.sides[i];
            let (q, dir) = (s.start, [s.normal[1], -s.normal[0]]);
            q[0] + (d - q[1]) / dir[1] * dir[0]
        };
        let mut vertices = self.vertices.clone();
        vertices[left] = [d, on_x(left - 1)];
        vertices[0] = if bottom == 0 { [d, d] } else { [d, on_x(0)] };
        if bottom > 0 {
            vertices[bottom] = [on_y(bottom - 1), d];
        }
        vertices[bottom + 1] = [on_y(bottom + 1), d];
        let specs = self.sides.iter().map(|s| (s.kind, s.exact_normal.clone())).collect();
        let poly = Polygon::from_parts(self.alpha, self.a1, self.d_end, vertices, self.labels.clone(), specs);
        if poly
            .vertices
            .iter()
            .any(|v| !(v[0].is_finite() && v[1].is_finite() && v[0] > 0.0 && v[1] > 0.0))
        {
            return Err(PolygonError::Vertex(
                "non-finite vertex after moving the closing sides".into(),
            ));
        }
        Ok(poly)
    }

    /// Convexity from the side normals: each turn is strictly to the left, the normals wind
    /// once around, and every vertex satisfies every side's half-plane. Sides far shorter than
    /// their coordinates collapse in f64, so vertex cross products alone are unreliable.
    pub fn is_convex(&self) -> bool {
        let n = self.sides.len();
        let mut winding = 0.0;
        for i in 0..n {
            let (a, b) = (self.sides[i].unit, self.sides[(i + 1) % n].unit);
            let turn = (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1]);
            if turn <= 0.0 {
                return false;
            }
            winding += turn;
        }
        (winding - std::f64::consts::TAU).abs() < 1e-9 && self.vertices.iter().all(|&v| self.contains_tol(v, 1e-9))
    }

    /// Boundary sample points with the indices of the sides whose normals generate the normal
    /// cone there (two at a vertex). Each side gets an even share split between a uniform
    /// grid and points clustered geometrically toward both ends.
    pub fn boundary_samples(&self, samples: usize) -> Vec<([f64; 2], Vec<usize>)> {
        let n = self.sides.len();
        let mut out: Vec<([f64; 2], Vec<usize>)> =
            (0..n).map(|i| (self.vertices[i], vec![(i + n - 1) % n, i])).collect();
        let per_side = samples.saturating_sub(n).div_ceil(n).max(3);
        let uniform = per_side / 2;
        let clustered = (per_side - uniform) / 2;
        for (i, side) in self.sides.iter().enumerate() {
            let mut ts: Vec<f64> = (1..=uniform).map(|k| k as f64 / (uniform + 1) as f64).collect();
            for k in 0..clustered {
                let t = 10f64.powf(-12.0 + 11.0 * k as f64 / clustered.max(1) as f64);
                ts.push(t);
                ts.push(1.0 - t);
            }
            for t in ts {
                if t > 0.0 && t < 1.0 {
                    out.push((side.point_at(t), vec![i]));
                }
            }
        }
        out
    }
}

/// Settings for the family search.
#[derive(Debug, Clone)]
pub struct FamilyOptions {
    /// Use only quadrant directions for `δ` (lower-endotactic networks).
    pub lower: bool,
    /// `α_min = alpha_span · α_max`.
    pub alpha_span: f64,
    pub max_iterations: usize,
    /// Points that must lie in `(ξ, M)²` besides the initial condition.
    pub required_points: Vec<[f64; 2]>,
}

impl Default for FamilyOptions {
    fn default() -> Self {
        FamilyOptions {
            lower: false,
            alpha_span: 1e-6,
            max_iterations: 64,
            required_points: Vec::new(),
        }
    }
}

/// A curve `y = a x^p` stored as `(ln a, p)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Curve {
    pub ln_a: f64,
    pub p: f64,
}

impl Curve {
    pub fn eval(&self, x: f64) -> f64 {
        (self.ln_a + self.p * x.ln()).exp()
    }

    /// `ln y - ln(a x^p)` at a positive point.
    pub fn log_gap(&self, q: [f64; 2]) -> f64 {
        q[1].ln() - self.ln_a - self.p * q[0].ln()
    }
}

#[derive(Debug, Clone)]
pub struct PolygonFamily {
    pub slopes: SlopeSet,
    pub eta: f64,
    pub delta: f64,
    pub delta_prime: f64,
    pub xi: f64,
    pub big_m: f64,
    pub alpha_max: f64,
    pub alpha_min: f64,
    pub lower: bool,
    pub c0: [f64; 2],
    pub bound: DeltaBound,
    pub required_points: Vec<[f64; 2]>,
    r: Vec<f64>,
    s: Vec<f64>,
    r_frac: Vec<f64>,
    s_frac: Vec<f64>,
    n_diffs: Vec<f64>,
    m_diffs: Vec<f64>,
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> Option<f64> {
    let (flo, fhi) = (f(lo), f(hi));
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        if flo == 0.0 {
            return Some(lo);
        }
        if fhi == 0.0 {
            return Some(hi);
        }
        // a bracket narrower than the coordinate's resolution: the side collapses in f64
        if (hi - lo).abs() <= 1e-12 * lo.abs().max(hi.abs()) && flo.is_finite() && fhi.is_finite() {
            return Some(if flo.abs() <= fhi.abs() { lo } else { hi });
        }
        return None;
    }
    let lo_sign = flo.signum();
    for _ in 0..400 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) <= 1e-15 * hi.abs().max(lo.abs()) {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

impl PolygonFamily {
    pub fn r(&self) -> &[f64] {
        &self.r
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn r_frac(&self) -> &[f64] {
        &self.r_frac
    }

    pub fn s_frac(&self) -> &[f64] {
        &self.s_frac
    }

    /// Dotted curves `y = δ' x^σ`, `y = x^σ / δ'` for every slope.
    pub fn dotted_curves(&self) -> Vec<(f64, Curve)> {
        let ld = self.delta_prime.ln();
        self.r
            .iter()
            .chain(&self.s)
            .flat_map(|&p| [(p, Curve { ln_a: ld, p }), (p, Curve { ln_a: -ld, p })])
            .collect()
    }

    /// Solid curves `y = x^τ` for the fractional exponents.
    pub fn solid_curves(&self) -> Vec<Curve> {
        self.r_frac
            .iter()
            .chain(&self.s_frac)
            .map(|&p| Curve { ln_a: 0.0, p })
            .collect()
    }

    fn all_curves(&self) -> Vec<Curve> {
        let mut c: Vec<Curve> = self.dotted_curves().into_iter().map(|(_, c)| c).collect();
        c.extend(self.solid_curves());
        c
    }

    /// Vertices and sides of `P(α)` without the range check.
    fn construct(&self, alpha: f64) -> Result<Polygon, PolygonError> {
        let (e, f) = (self.r.len(), self.s.len());
        let fail = |label: String| PolygonError::Vertex(label);
        let mut vertices: Vec<[f64; 2]> = Vec::with_capacity(2 * (e + f) + 4);
        let mut labels = Vec::with_capacity(2 * (e + f) + 4);
        let mut specs: Vec<(SideKind, Option<Vec2>)> = Vec::with_capacity(2 * (e + f) + 4);
        let one = exact::int(1);
        let zero = Rational::zero();

        // A chain: direction (r_i, -1), next vertex on y = x^{r_{i+.5}}
        let mut cur = [alpha, alpha.powf(self.r_frac[0])];
        vertices.push(cur);
        labels.push("A1".to_string());
        for i in 0..e {
            let (x0, y0, r, tau) = (cur[0], cur[1], self.r[i], self.r_frac[i + 1]);
            let line = |x: f64| y0 - (x - x0) / r;
            let x =
                bisect(|x| line(x) - x.powf(tau), x0, x0 + 2.0 * y0 * r).ok_or_else(|| fail(format!("A{}", i + 2)))?;
            if !(x0 < 1.0) {
                return Err(fail(format!("A{}", i + 2)));
            }
            cur = [x, x.powf(tau)];
            specs.push((SideKind::A(i + 1), Some([one.clone(), self.slopes.r[i].clone()])));
            vertices.push(cur);
            labels.push(format!("A{}", i + 2));
        }
        // bottom: horizontal to B_1 on y = x^{s_.5}
        let h = cur[1];
        cur = [h.powf(1.0 / self.s_frac[0]), h];
        specs.push((SideKind::Bottom, Some([zero.clone(), one.clone()])));
        vertices.push(cur);
        labels.push("B1".to_string());
        // B chain: direction (-s_j, 1)
        for j in 0..f {
            let (x0, y0, s, tau) = (cur[0], cur[1], self.s[j], self.s_frac[j + 1]);
            let line = |x: f64| y0 + (x - x0) / (-s);
            let hi = x0 + (-s) * x0.powf(tau) + (-s) * y0;
            let x = bisect(|x| line(x) - x.powf(tau), x0, hi).ok_or_else(|| fail(format!("B{}", j + 2)))?;
            cur = [x, x.powf(tau)];
            specs.push((SideKind::B(j + 1), Some([-one.clone(), -self.slopes.s[j].clone()])));
            vertices.push(cur);
            labels.push(format!("B{}", j + 2));
        }
        // right: vertical to C_1 on y = x^{r_.5}
        let big_x = cur[0];
        cur = [big_x, big_x.powf(self.r_frac[0])];
        specs.push((SideKind::Right, Some([-one.clone(), zero.clone()])));
        vertices.push(cur);
        labels.push("C1".to_string());
        // C chain: direction (-r_i, 1)
        for i in 0..e {
            let (x0, y0, r, tau) = (cur[0], cur[1], self.r[i], self.r_frac[i + 1]);
            let line = |x: f64| y0 + (x0 - x) / r;
            let x =
                bisect(|x| line(x) - x.powf(tau), y0.powf(1.0 / tau), x0).ok_or_else(|| fail(format!("C{}", i + 2)))?;
            cur = [x, x.powf(tau)];
            specs.push((SideKind::C(i + 1), Some([-one.clone(), -self.slopes.r[i].clone()])));
            vertices.push(cur);
            labels.push(format!("C{}", i + 2));
        }
        // top: horizontal to D_1 on y = x^{s_.5}
        let big_h = cur[1];
        cur = [big_h.powf(1.0 / self.s_frac[0]), big_h];
        specs.push((SideKind::Top, Some([zero.clone(), -one.clone()])));
        vertices.push(cur);
        labels.push("D1".to_string());
        // D chain: direction (s_j, -1)
        for j in 0..f {
            let (x0, y0, s, tau) = (cur[0], cur[1], self.s[j], self.s_frac[j + 1]);
            let line = |x: f64| y0 - (x0 - x) / (-s);
            let x =
                bisect(|x| line(x) - x.powf(tau), y0.powf(1.0 / tau), x0).ok_or_else(|| fail(format!("D{}", j + 2)))?;
            cur = [x, x.powf(tau)];
            specs.push((SideKind::D(j + 1), Some([one.clone(), self.slopes.s[j].clone()])));
            vertices.push(cur);
            labels.push(format!("D{}", j + 2));
        }
        // closing side: vertical at x = min(α, D_{f+1}.x). The first side is extended back
        // beyond A_1, or the last side forward beyond D_{f+1}, to meet it; the point passed
        // stays on the boundary but is no longer a corner.
        let a1 = vertices[0];
        let d_end = cur;
        if d_end[0] < a1[0] {
            let d = d_end[0];
            vertices[0] = match self.r.first() {
                Some(r1) => [d, a1[1] + (a1[0] - d) / r1],
                None => [d, a1[1]],
            };
            labels[0] = "E".to_string();
        } else if d_end[0] > a1[0] {
            let last = vertices.len() - 1;
            vertices[last] = match self.s.last() {
                Some(sf) => [a1[0], d_end[1] - (d_end[0] - a1[0]) / (-sf)],
                None => [a1[0], d_end[1]],
            };
            labels[last] = "F".to_string();
        }
        specs.push((SideKind::Left, Some([one, zero])));
        if vertices
            .iter()
            .any(|v| !(v[0].is_finite() && v[1].is_finite() && v[0] > 0.0 && v[1] > 0.0))
        {
            return Err(fail("non-finite vertex".into()));
        }
        Ok(Polygon::from_parts(alpha, a1, d_end, vertices, labels, specs))
    }

    /// `P(α)` for `0 < α ≤ α_max`.
    pub fn polygon_at(&self, alpha: f64) -> Result<Polygon, PolygonError> {
        if !(alpha > 0.0 && alpha <= self.alpha_max * (1.0 + 1e-12)) {
            return Err(PolygonError::AlphaOutOfRange {
                alpha,
                alpha_max: self.alpha_max,
            });
        }
        self.construct(alpha.min(self.alpha_max))
    }

    /// Level function: the `α` whose boundary passes through `p`, saturating at `α_max`.
    pub fn phi(&self, p: [f64; 2]) -> Result<f64, PolygonError> {
        let inside = |alpha: f64| self.construct(alpha).map(|poly| poly.contains(p));
        if inside(self.alpha_max)? {
            return Ok(self.alpha_max);
        }
        if !inside(self.alpha_min)? {
            return Err(PolygonError::OutsideFamily(p[0], p[1]));
        }
        let (mut lo, mut hi) = (self.alpha_min.ln(), self.alpha_max.ln());
        while hi - lo > 1e-13 {
            let mid = 0.5 * (lo + hi);
            if inside(mid.exp())? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo.exp())
    }
}

fn ln_range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

/// Which of ξ (too large) and M (too small) must move for the conditions to hold.
struct SearchFlags {
    shrink_xi: Option<String>,
    grow_m: Option<String>,
}

impl PolygonFamily {
    fn search_flags(&self, xi: f64, m: f64) -> SearchFlags {
        let (lx, lm) = (xi.ln(), m.ln());
        let mut shrink_xi = None;
        let mut grow_m = None;
        let mut need_xi = |why: String| {
            shrink_xi.get_or_insert(why);
        };
        for p in std::iter::once(self.c0).chain(self.required_points.iter().copied()) {
            if p[0].min(p[1]) <= xi {
                need_xi("P1".into());
            }
        }
        let ld = self.delta.ln();
        for &k in self.n_diffs.iter().chain(&self.m_diffs) {
            if lx >= ld / k {
                need_xi("P5".into());
            }
        }
        let curves = self.all_curves();
        for (i, c1) in curves.iter().enumerate() {
            for c2 in &curves[i + 1..] {
                if c1.p == c2.p {
                    continue;
                }
                let ux = (c1.ln_a - c2.ln_a) / (c2.p - c1.p);
                let uy = c1.ln_a + c1.p * ux;
                if ux.min(uy) <= lx {
                    need_xi("P2".into());
                }
            }
        }
        for c in &curves {
            if c.p < 0.0 && c.ln_a + c.p * lx < lx {
                need_xi("P3".into());
            }
        }
        let mut need_m = |why: String| {
            grow_m.get_or_insert(why);
        };
        for p in std::iter::once(self.c0).chain(self.required_points.iter().copied()) {
            if p[0].max(p[1]) >= m {
                need_m("P1".into());
            }
        }
        for &k in self.n_diffs.iter().chain(&self.m_diffs) {
            if lm <= -ld / k {
                need_m("P5".into());
            }
        }
        for (i, c1) in curves.iter().enumerate() {
            for c2 in &curves[i + 1..] {
                if c1.p == c2.p {
                    continue;
                }
                let ux = (c1.ln_a - c2.ln_a) / (c2.p - c1.p);
                let uy = c1.ln_a + c1.p * ux;
                if ux.max(uy) >= lm {
                    need_m("P2".into());
                }
            }
        }
        for c in &curves {
            if c.p < 0.0 {
                if c.ln_a + c.p * lm > lm {
                    need_m("P3".into());
                }
                if (lm - c.ln_a) / c.p >= lx || c.ln_a + c.p * lm >= lx {
                    need_m("P4".into());
                }
            } else if c.ln_a + c.p * lx > lm || c.ln_a + c.p * lm < lx {
                need_m("P3".into());
            }
        }
        SearchFlags { shrink_xi, grow_m }
    }
}

/// Builds the family with default options.
pub fn build_family(net: &ReactionNetwork, eta: f64, c0: [f64; 2]) -> Result<PolygonFamily, PolygonError> {
    build_family_with(net, eta, c0, &FamilyOptions::default())
}

pub fn build_family_with(
    net: &ReactionNetwork,
    eta: f64,
    c0: [f64; 2],
    options: &FamilyOptions,
) -> Result<PolygonFamily, PolygonError> {
    if !(c0[0] > 0.0 && c0[1] > 0.0 && c0[0].is_finite() && c0[1].is_finite()) {
        return Err(PolygonError::BadStart);
    }
    let slopes = slope_set(net)?;
    let bound = delta_over(net, eta, bound_normals(net, &slopes, options.lower)?)?;
    let delta = bound.delta;
    let n_diffs = source_differences(net, 1);
    let m_diffs = source_differences(net, 0);
    // δ' = min δ^{1/(n'-n)}, computed in log form
    let delta_prime = n_diffs.iter().map(|k| delta.ln() / k).fold(f64::INFINITY, f64::min);
    let delta_prime = if delta_prime.is_finite() {
        delta_prime.exp()
    } else {
        delta
    };
    let mut family = PolygonFamily {
        r: f64s(&slopes.r),
        s: f64s(&slopes.s),
        r_frac: f64s(&slopes.r_frac),
        s_frac: f64s(&slopes.s_frac),
        slopes,
        eta,
        delta,
        delta_prime,
        xi: 0.0,
        big_m: 0.0,
        alpha_max: 0.0,
        alpha_min: 0.0,
        lower: options.lower,
        c0,
        bound,
        required_points: options.required_points.clone(),
        n_diffs,
        m_diffs,
    };

    // initial (ξ, M) from the explicit bounds, the curve intersections and the required points
    let ld = delta.ln();
    let curves = family.all_curves();
    let mut logs: Vec<f64> = Vec::new();
    for &k in family.n_diffs.iter().chain(&family.m_diffs) {
        logs.push(ld / k);
    }
    for (i, c1) in curves.iter().enumerate() {
        for c2 in &curves[i + 1..] {
            if c1.p != c2.p {
                let ux = (c1.ln_a - c2.ln_a) / (c2.p - c1.p);
                logs.push(ux);
                logs.push(c1.ln_a + c1.p * ux);
            }
        }
    }
    for p in std::iter::once(c0).chain(options.required_points.iter().copied()) {
        logs.push(p[0].ln());
        logs.push(p[1].ln());
    }
    logs.push(0.0);
    let (lo, hi) = ln_range(logs.into_iter());
    let mut xi = 0.5 * lo.exp();
    let mut m = 2.0 * hi.exp();
    let mut converged = false;
    let mut last = String::new();
    for _ in 0..options.max_iterations {
        let flags = family.search_flags(xi, m);
        if flags.shrink_xi.is_none() && flags.grow_m.is_none() {
            converged = true;
            break;
        }
        if let Some(why) = flags.shrink_xi {
            xi /= 4.0;
            last = why;
        }
        if let Some(why) = flags.grow_m {
            m *= 4.0;
            last = why;
        }
    }
    if !converged {
        return Err(PolygonError::SearchFailed {
            iterations: options.max_iterations,
            condition: format!("(xi, M) search, last failing condition {last}"),
        });
    }
    family.xi = xi;
    family.big_m = m;
    let conditions = family.audit_conditions();
    if !conditions.all_pass() {
        return Err(PolygonError::SearchFailed {
            iterations: options.max_iterations,
            condition: format!("independent audit rejected (xi, M): {}", conditions.failures.join("; ")),
        });
    }

    // α search: shrink ln α with growing steps until the polygon audit passes, then bisect
    // back toward the last failure for the largest passing α
    let check = |alpha: f64| -> Result<(), String> {
        let poly = family.construct(alpha).map_err(|e| e.to_string())?;
        let audit = family.audit_polygon_shape(&poly);
        if audit.all_pass() {
            Ok(())
        } else {
            Err(audit.failures.join("; "))
        }
    };
    let mut ln_alpha = (0.5 * xi.min(xi.powf(1.0 / family.r_frac[0]))).ln();
    let mut failed_at = None;
    let mut found = None;
    let mut reason = String::new();
    for _ in 0..options.max_iterations {
        match check(ln_alpha.exp()) {
            Ok(()) => {
                found = Some(ln_alpha);
                break;
            }
            Err(why) => reason = why,
        }
        failed_at = Some(ln_alpha);
        ln_alpha -= (0.25 * ln_alpha.abs()).max(4f64.ln());
        if ln_alpha.exp() == 0.0 {
            break;
        }
    }
    let Some(mut good) = found else {
        return Err(PolygonError::SearchFailed {
            iterations: options.max_iterations,
            condition: format!("alpha search: {reason}"),
        });
    };
    if let Some(mut bad) = failed_at {
        for _ in 0..40 {
            let mid = 0.5 * (good + bad);
            if check(mid.exp()).is_ok() {
                good = mid;
            } else {
                bad = mid;
            }
        }
    }
    let alpha_max = good.exp();
    family.alpha_max = alpha_max;
    // keep α_min positive when α_max itself is near the bottom of the f64 range
    family.alpha_min = (alpha_max * options.alpha_span).max(alpha_max.min(1e-318));
    Ok(family)
}

/// Result of re-checking P1–P5 without the constructor's shortcuts.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionAudit {
    pub p1: bool,
    pub p2: bool,
    pub p3: bool,
    pub p4: bool,
    pub p5: bool,
    pub failures: Vec<String>,
}

impl ConditionAudit {
    pub fn all_pass(&self) -> bool {
        self.p1 && self.p2 && self.p3 && self.p4 && self.p5
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapeAudit {
    pub convex: bool,
    pub corner_boxes: bool,
    pub p_star: bool,
    pub failures: Vec<String>,
}

impl ShapeAudit {
    pub fn all_pass(&self) -> bool {
        self.convex && self.corner_boxes && self.p_star
    }
}

/// Geometric grid of `count` points between `lo` and `hi` (both positive).
fn log_grid(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|k| (a + (b - a) * (k as f64 + 0.5) / count as f64).exp())
        .collect()
}

impl PolygonFamily {
    /// Re-verifies P1–P5 for the current `(ξ, M)`: intersections are found by bisection in
    /// log coordinates and the region conditions by sampling the regions.
    pub fn audit_conditions(&self) -> ConditionAudit {
        let (xi, m) = (self.xi, self.big_m);
        let mut failures = Vec::new();
        let inside = |v: f64| v > xi && v < m;

        let p1 = std::iter::once(self.c0)
            .chain(self.required_points.iter().copied())
            .all(|p| inside(p[0]) && inside(p[1]));
        if !p1 {
            failures.push("P1: required point outside (xi, M)^2".into());
        }

        let curves = self.all_curves();
        let mut p2 = true;
        for (i, c1) in curves.iter().enumerate() {
            for c2 in &curves[i + 1..] {
                if c1.p == c2.p {
                    continue;
                }
                // g(u) = ln c1(e^u) - ln c2(e^u) is affine in u; bracket widely and bisect
                let g = |u: f64| (c1.ln_a - c2.ln_a) + (c1.p - c2.p) * u;
                let Some(u) = bisect(g, -1e4, 1e4) else {
                    p2 = false;
                    failures.push("P2: curves do not cross".into());
                    continue;
                };
                let (x, y) = (u.exp(), c1.eval(u.exp()));
                if !(inside(x) && inside(y)) {
                    p2 = false;
                    failures.push(format!("P2: intersection ({x:.3e}, {y:.3e}) outside"));
                }
            }
        }

        // region sampling: (0,ξ)², (M,∞)², (0,ξ)×(M,∞), (M,∞)×(0,ξ)
        let small = log_grid(xi * 1e-6, xi, 24);
        let large = log_grid(m, m * 1e6, 24);
        let mut p3 = true;
        for c in &curves {
            let below_all = |xs: &[f64], ys: &[f64]| xs.iter().all(|&x| ys.iter().all(|&y| y < c.eval(x)));
            let above_all = |xs: &[f64], ys: &[f64]| xs.iter().all(|&x| ys.iter().all(|&y| y > c.eval(x)));
            let ok = if c.p < 0.0 {
                below_all(&small, &small) && above_all(&large, &large)
            } else {
                above_all(&small, &large) && below_all(&large, &small)
            };
            if !ok {
                p3 = false;
                failures.push(format!("P3: corner region not separated by curve exponent {}", c.p));
            }
        }

        let mut p4 = true;
        for c in curves.iter().filter(|c| c.p < 0.0) {
            // crossing of the segment (0,ξ)×{M}, found by bisection on ln x
            let (lx, lm) = (xi.ln(), m.ln());
            let top = bisect(|u| c.ln_a + c.p * u - lm, lx - 1e4, lx).filter(|&u| u < lx);
            let right = c.eval(m) < xi;
            if top.is_none() || !right {
                p4 = false;
                failures.push(format!("P4: curve exponent {} misses a boundary segment", c.p));
            }
        }

        let ld = self.delta.ln();
        let p5 = self
            .n_diffs
            .iter()
            .chain(&self.m_diffs)
            .all(|&k| xi.ln() < ld / k && m.ln() > -ld / k);
        if !p5 {
            failures.push("P5: explicit delta-power bounds violated".into());
        }
        ConditionAudit {
            p1,
            p2,
            p3,
            p4,
            p5,
            failures,
        }
    }

    /// Convexity, corner placement of the vertex chains and property (P*).
    pub fn audit_polygon_shape(&self, poly: &Polygon) -> ShapeAudit {
        let mut failures = Vec::new();
        let convex = poly.is_convex();
        if !convex {
            failures.push("polygon is not strictly convex".into());
        }
        let (xi, m) = (self.xi, self.big_m);
        let mut corner_boxes = true;
        for (v, label) in poly.vertices.iter().zip(&poly.labels) {
            let ok = match label.as_bytes()[0] {
                b'A' | b'E' => v[0] < xi && v[1] < xi,
                b'B' => v[0] > m && v[1] < xi,
                b'C' => v[0] > m && v[1] > m,
                b'D' | b'F' => v[0] < xi && v[1] > m,
                _ => true,
            };
            if !ok {
                corner_boxes = false;
                failures.push(format!("{label} outside its corner box"));
            }
        }
        let mut p_star = true;
        for (sigma, curve) in self.dotted_curves() {
            let mut total = 0;
            for side in &poly.sides {
                let k = crossings(side, &curve);
                if k == 0 {
                    continue;
                }
                total += k;
                if !self.side_is_orthogonal_to(side.kind, sigma) {
                    p_star = false;
                    failures.push(format!("P*: curve exponent {sigma} crosses side {}", side.kind));
                }
            }
            if total != 2 {
                p_star = false;
                failures.push(format!("P*: curve exponent {sigma} crosses the boundary {total} times"));
            }
        }
        ShapeAudit {
            convex,
            corner_boxes,
            p_star,
            failures,
        }
    }

    fn side_is_orthogonal_to(&self, kind: SideKind, sigma: f64) -> bool {
        match kind {
            SideKind::A(i) | SideKind::C(i) => self.r[i - 1] == sigma,
            SideKind::B(j) | SideKind::D(j) => self.s[j - 1] == sigma,
            _ => false,
        }
    }

    /// Runs both audits at `α`.
    pub fn audit_polygon(&self, alpha: f64) -> Result<ShapeAudit, PolygonError> {
        let poly = self.polygon_at(alpha)?;
        Ok(self.audit_polygon_shape(&poly))
    }
}

/// Number of crossings of `curve` with a side; the gap along a side is unimodal.
fn crossings(side: &Side, curve: &Curve) -> usize {
    let g = |t: f64| curve.log_gap(side.point_at(t));
    let (g0, g1) = (g(0.0), g(1.0));
    if g0.signum() != g1.signum() {
        return 1;
    }
    if side.start[0] == side.end[0] {
        return 0;
    }
    // the linear-minus-power gap y - a x^p is concave for 0<p<1 and convex otherwise;
    // locate its extremum by ternary search
    let lin = |t: f64| {
        let q = side.point_at(t);
        q[1] - curve.eval(q[0])
    };
    let concave = curve.p > 0.0 && curve.p < 1.0;
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..200 {
        let a = lo + (hi - lo) / 3.0;
        let b = hi - (hi - lo) / 3.0;
        let (fa, fb) = (lin(a), lin(b));
        let a_better = if concave { fa > fb } else { fa < fb };
        if a_better {
            hi = b;
        } else {
            lo = a;
        }
    }
    let ext = g(0.5 * (lo + hi));
    if ext.signum() != g0.signum() && ext != 0.0 {
        2
    } else {
        0
    }
}

/// Worst-case inward flow over the boundary.
#[derive(Debug, Clone, Serialize)]
pub struct SubtangentialityReport {
    pub alpha: f64,
    pub samples: usize,
    pub min_value: f64,
    pub min_point: [f64; 2],
    pub min_side: String,
    pub tolerance: f64,
    pub pass: bool,
}

/// Coefficients `(P'-P)·n / |n|` per reaction for one side, exact when the normal is.
fn side_coefficients(net: &ReactionNetwork, side: &Side) -> Vec<f64> {
    net.reactions()
        .iter()
        .map(|r| {
            let v = r.vector();
            match &side.exact_normal {
                Some(n) => exact::to_f64(&(&v[0] * &n[0] + &v[1] * &n[1])) / side.normal[0].hypot(side.normal[1]),
                None => exact::to_f64(&v[0]) * side.unit[0] + exact::to_f64(&v[1]) * side.unit[1],
            }
        })
        .collect()
}

pub const SUBTANGENTIALITY_TOL: f64 = 1e-9;

/// Minimum over boundary samples and normal-cone generators of `ċ·n` with each rate at the
/// κ-box vertex that makes its term smallest.
pub fn subtangentiality_audit_polygon(
    net: &ReactionNetwork,
    eta: f64,
    poly: &Polygon,
    samples: usize,
    side_filter: impl Fn(SideKind) -> bool + Sync,
) -> SubtangentialityReport {
    let coeffs: Vec<Vec<f64>> = poly.sides.iter().map(|s| side_coefficients(net, s)).collect();
    let sources: Vec<[f64; 2]> = net
        .reactions()
        .iter()
        .map(|r| [exact::to_f64(&r.source.0[0]), exact::to_f64(&r.source.0[1])])
        .collect();
    let points = poly.boundary_samples(samples);
    let worst = |p: [f64; 2], w: &[f64]| -> f64 {
        let (lx, ly) = (p[0].ln(), p[1].ln());
        sources
            .iter()
            .zip(w)
            .map(|(src, &wi)| {
                if wi == 0.0 {
                    return 0.0;
                }
                let kappa = if wi > 0.0 { eta } else { 1.0 / eta };
                kappa * (src[0] * lx + src[1] * ly).exp() * wi
            })
            .sum()
    };
    let results: Vec<(f64, [f64; 2], usize)> = points
        .par_iter()
        .flat_map_iter(|(p, sides)| {
            sides
                .iter()
                .filter(|&&i| side_filter(poly.sides[i].kind))
                .map(|&i| (worst(*p, &coeffs[i]), *p, i))
                .collect::<Vec<_>>()
        })
        .collect();
    let (min_value, min_point, min_side) =
        results
            .iter()
            .copied()
            .fold((f64::INFINITY, [0.0, 0.0], usize::MAX), |acc, x| {
                if x.0 < acc.0 {
                    x
                } else {
                    acc
                }
            });
    SubtangentialityReport {
        alpha: poly.alpha,
        samples: points.len(),
        min_value,
        min_point,
        min_side: poly
            .sides
            .get(min_side)
            .map_or_else(|| "none".into(), |s| s.kind.to_string()),
        tolerance: SUBTANGENTIALITY_TOL,
        pass: min_value >= -SUBTANGENTIALITY_TOL,
    }
}

/// Sub-tangentiality audit of `P(α)`.
pub fn subtangentiality_audit(
    net: &ReactionNetwork,
    family: &PolygonFamily,
    alpha: f64,
    samples: usize,
) -> Result<SubtangentialityReport, PolygonError> {
    let poly = family.polygon_at(alpha)?;
    Ok(subtangentiality_audit_polygon(net, family.eta, &poly, samples, |_| {
        true
    }))
}

pub fn polygon_at(family: &PolygonFamily, alpha: f64) -> Result<Polygon, PolygonError> {
    family.polygon_at(alpha)
}

pub fn contains(poly: &Polygon, p: [f64; 2]) -> bool {
    poly.contains(p)
}

pub fn phi(family: &PolygonFamily, p: [f64; 2]) -> Result<f64, PolygonError> {
    family.phi(p)
}
