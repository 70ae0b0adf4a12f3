//! Two-species sweep geometry: essential supports, the parallel sweep test and the
//! endotactic / lower-endotactic classification over a finite set of directions.

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{self, Rational, Vec2};
use crate::netmodel::{Reaction, ReactionNetwork};

#[derive(Debug, Error, PartialEq)]
pub enum EndoError {
    #[error("sweep geometry needs exactly 2 species, network has {0}")]
    Dimension(usize),
    #[error("test direction must be nonzero")]
    ZeroVector,
}

fn require_planar(net: &ReactionNetwork) -> Result<(), EndoError> {
    if net.dim() == 2 {
        Ok(())
    } else {
        Err(EndoError::Dimension(net.dim()))
    }
}

fn point(c: &crate::netmodel::Complex) -> Vec2 {
    [c.0[0].clone(), c.0[1].clone()]
}

fn vector(r: &Reaction) -> Vec2 {
    [&r.target.0[0] - &r.source.0[0], &r.target.0[1] - &r.source.0[1]]
}

fn dot2(a: &Vec2, b: &Vec2) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

/// Indices of the reactions whose vectors are not orthogonal to `v`.
pub fn essential_subnetwork(net: &ReactionNetwork, v: &Vec2) -> Result<Vec<usize>, EndoError> {
    require_planar(net)?;
    if v.iter().all(Zero::is_zero) {
        return Err(EndoError::ZeroVector);
    }
    Ok(net
        .reactions()
        .iter()
        .enumerate()
        .filter(|(_, r)| !dot2(&vector(r), v).is_zero())
        .map(|(i, _)| i)
        .collect())
}

/// The line `{P : P·normal = level}` through `point`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportLine {
    pub point: Vec2,
    pub normal: Vec2,
    pub level: Rational,
}

impl SupportLine {
    pub fn contains(&self, p: &Vec2) -> bool {
        dot2(p, &self.normal) == self.level
    }
}

/// The support line orthogonal to `v` through the essential sources minimizing `P·v`.
pub fn essential_support(net: &ReactionNetwork, v: &Vec2) -> Result<Option<SupportLine>, EndoError> {
    let essential = essential_subnetwork(net, v)?;
    let best = essential
        .iter()
        .map(|&i| point(&net.reactions()[i].source))
        .min_by(|a, b| dot2(a, v).cmp(&dot2(b, v)).then_with(|| a.cmp(b)));
    Ok(best.map(|p| SupportLine {
        level: dot2(&p, v),
        point: p,
        normal: v.clone(),
    }))
}

/// A reaction violating the sweep condition for `vector`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub vector: Vec2,
    pub reaction: usize,
    pub support: SupportLine,
}

impl Witness {
    /// Re-checks the witness from scratch: source on the support line, target strictly behind it.
    pub fn holds(&self, net: &ReactionNetwork) -> bool {
        let r = &net.reactions()[self.reaction];
        self.support.contains(&point(&r.source)) && dot2(&vector(r), &self.vector).is_negative()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepOutcome {
    Pass,
    Fail(Vec<Witness>),
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, SweepOutcome::Pass)
    }
}

/// Sweeps a line orthogonal to `v` in the direction of `v` and checks that no reaction with
/// source on the stopping line points back into the swept half-plane.
pub fn sweep_test(net: &ReactionNetwork, v: &Vec2) -> Result<SweepOutcome, EndoError> {
    let Some(support) = essential_support(net, v)? else {
        return Ok(SweepOutcome::Pass);
    };
    let witnesses: Vec<Witness> = net
        .reactions()
        .iter()
        .enumerate()
        .filter(|(_, r)| support.contains(&point(&r.source)) && dot2(&vector(r), v).is_negative())
        .map(|(i, _)| Witness {
            vector: v.clone(),
            reaction: i,
            support: support.clone(),
        })
        .collect();
    Ok(if witnesses.is_empty() {
        SweepOutcome::Pass
    } else {
        SweepOutcome::Fail(witnesses)
    })
}

/// Counterclockwise convex hull without collinear points.
pub fn convex_hull(points: &[Vec2]) -> Vec<Vec2> {
    let mut pts: Vec<Vec2> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec2> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !exact::cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec2> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !exact::cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 2 {
        // all points collinear collapse to the two extremes
        return vec![pts[0].clone(), pts[pts.len() - 1].clone()];
    }
    lower
}

/// A hull side and its primitive inward normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HullSide {
    pub from: Vec2,
    pub to: Vec2,
    pub inward_normal: Vec2,
}

/// Sides of the source hull with inward normals; a segment yields both of its normals.
pub fn hull_sides(net: &ReactionNetwork) -> Result<Vec<HullSide>, EndoError> {
    require_planar(net)?;
    let sources: Vec<Vec2> = net.source_complexes().iter().map(point).collect();
    let hull = convex_hull(&sources);
    let side = |a: &Vec2, b: &Vec2| HullSide {
        from: a.clone(),
        to: b.clone(),
        inward_normal: exact::primitive(&[-(&b[1] - &a[1]), &b[0] - &a[0]]),
    };
    Ok(match hull.len() {
        0 | 1 => Vec::new(),
        2 => vec![side(&hull[0], &hull[1]), side(&hull[1], &hull[0])],
        n => (0..n).map(|i| side(&hull[i], &hull[(i + 1) % n])).collect(),
    })
}

fn axes() -> [Vec2; 4] {
    [
        exact::vec2(1, 0),
        exact::vec2(-1, 0),
        exact::vec2(0, 1),
        exact::vec2(0, -1),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestVectors {
    pub vectors: Vec<Vec2>,
    /// Set when all sources coincide.
    pub degenerate: bool,
}

fn sorted_unique(mut vs: Vec<Vec2>) -> Vec<Vec2> {
    vs.sort();
    vs.dedup();
    vs
}

/// Inward hull normals together with `±i, ±j`.
pub fn test_vector_set(net: &ReactionNetwork) -> Result<TestVectors, EndoError> {
    let sides = hull_sides(net)?;
    let mut vs: Vec<Vec2> = sides.iter().map(|s| s.inward_normal.clone()).collect();
    vs.extend(axes());
    Ok(TestVectors {
        vectors: sorted_unique(vs),
        degenerate: net.source_complexes().len() == 1,
    })
}

/// Inward normals of negative-slope hull sides pointing into the positive quadrant, with `i, j`.
pub fn lower_test_vector_set(net: &ReactionNetwork) -> Result<TestVectors, EndoError> {
    let sides = hull_sides(net)?;
    let mut vs: Vec<Vec2> = sides
        .iter()
        .map(|s| s.inward_normal.clone())
        .filter(|n| n[0].is_positive() && n[1].is_positive())
        .collect();
    vs.push(exact::vec2(1, 0));
    vs.push(exact::vec2(0, 1));
    Ok(TestVectors {
        vectors: sorted_unique(vs),
        degenerate: net.source_complexes().len() == 1,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepVerdict {
    pub endotactic: bool,
    pub lower_endotactic: bool,
    pub degenerate: bool,
    pub tested_vectors: Vec<Vec2>,
    pub witnesses: Vec<Witness>,
}

fn run_sweeps(net: &ReactionNetwork, vectors: &[Vec2]) -> Vec<Witness> {
    let outcomes: Vec<SweepOutcome> = vectors
        .par_iter()
        .map(|v| sweep_test(net, v).expect("planar network and nonzero vectors"))
        .collect();
    outcomes
        .into_iter()
        .flat_map(|o| match o {
            SweepOutcome::Pass => Vec::new(),
            SweepOutcome::Fail(w) => w,
        })
        .collect()
}

fn single_source_witnesses(net: &ReactionNetwork) -> Vec<Witness> {
    let r = &net.reactions()[0];
    let v = vector(r);
    let dir = [-v[0].clone(), -v[1].clone()];
    match sweep_test(net, &dir) {
        Ok(SweepOutcome::Fail(w)) => w,
        _ => Vec::new(),
    }
}

/// Full classification over the finite direction set.
pub fn is_endotactic(net: &ReactionNetwork) -> Result<SweepVerdict, EndoError> {
    let tv = test_vector_set(net)?;
    let mut witnesses = run_sweeps(net, &tv.vectors);
    if tv.degenerate {
        let mut extra = single_source_witnesses(net);
        extra.append(&mut witnesses);
        witnesses = extra;
    }
    let endotactic = witnesses.is_empty();
    let lower = lower_test_vector_set(net)?;
    let lower_endotactic = endotactic || run_sweeps(net, &lower.vectors).is_empty();
    Ok(SweepVerdict {
        endotactic,
        lower_endotactic,
        degenerate: tv.degenerate,
        tested_vectors: tv.vectors,
        witnesses,
    })
}

/// Classification restricted to directions in the closed positive quadrant.
pub fn is_lower_endotactic(net: &ReactionNetwork) -> Result<SweepVerdict, EndoError> {
    let lower = lower_test_vector_set(net)?;
    let witnesses = run_sweeps(net, &lower.vectors);
    Ok(SweepVerdict {
        endotactic: is_endotactic(net)?.endotactic,
        lower_endotactic: witnesses.is_empty(),
        degenerate: lower.degenerate,
        tested_vectors: lower.vectors,
        witnesses,
    })
}

/// Among reactions with source on `esupp^v`, the one maximizing `(P'-P)·v`
/// (ties broken by the lexicographically smallest reaction).
pub fn dominant_reaction(net: &ReactionNetwork, v: &Vec2) -> Result<Option<usize>, EndoError> {
    let Some(support) = essential_support(net, v)? else {
        return Ok(None);
    };
    let best = net
        .reactions()
        .iter()
        .enumerate()
        .filter(|(_, r)| support.contains(&point(&r.source)))
        .map(|(i, r)| (dot2(&vector(r), v), i))
        .filter(|(d, _)| d.is_positive())
        .max_by(|(da, ia), (db, ib)| da.cmp(db).then_with(|| net.reactions()[*ib].cmp(&net.reactions()[*ia])));
    Ok(best.map(|(_, i)| i))
}

/// JSON-friendly rendering of a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictSummary {
    pub endotactic: bool,
    pub lower_endotactic: bool,
    pub degenerate: bool,
    pub tested_vectors: Vec<[String; 2]>,
    pub witnesses: Vec<WitnessSummary>,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessSummary {
    pub vector: [String; 2],
    pub reaction: String,
    pub support_point: [String; 2],
}

fn fmt2(v: &Vec2) -> [String; 2] {
    [exact::format_rational(&v[0]), exact::format_rational(&v[1])]
}

impl SweepVerdict {
    pub fn summary(&self, net: &ReactionNetwork) -> VerdictSummary {
        VerdictSummary {
            endotactic: self.endotactic,
            lower_endotactic: self.lower_endotactic,
            degenerate: self.degenerate,
            tested_vectors: self.tested_vectors.iter().map(fmt2).collect(),
            witnesses: self
                .witnesses
                .iter()
                .map(|w| WitnessSummary {
                    vector: fmt2(&w.vector),
                    reaction: net.reaction_label(&net.reactions()[w.reaction]),
                    support_point: fmt2(&w.support.point),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::vec2;
    use crate::netmodel::{parse_network, Mode};

    fn chem(text: &str) -> ReactionNetwork {
        parse_network(text, Mode::Chemical).unwrap()
    }

    const TWO_SPECIES: &str = "2X <-> Y\nX <-> Y\nX <-> 2X + Y";
    const LV: &str = "A -> 2A\nA + B -> 2B\nB -> 0";

    #[test]
    fn essential_subnetworks() {
        assert_eq!(essential_subnetwork(&chem(TWO_SPECIES), &vec2(1, 0)).unwrap().len(), 6);
        let xy = chem("X -> Y\nY -> 2Y");
        assert_eq!(essential_subnetwork(&xy, &vec2(1, 1)).unwrap(), vec![1]);
        let lv = chem(LV);
        assert_eq!(essential_subnetwork(&lv, &vec2(0, 1)).unwrap(), vec![1, 2]);
        assert_eq!(essential_subnetwork(&lv, &vec2(0, 0)), Err(EndoError::ZeroVector));
        let three = chem("A -> B + C");
        assert_eq!(essential_subnetwork(&three, &vec2(1, 0)), Err(EndoError::Dimension(3)));
    }

    #[test]
    fn essential_supports() {
        // B -> 0 is orthogonal to (1,0), so only (1,0) and (1,1) remain: the line is x = 1
        let lv = chem(LV);
        let line = essential_support(&lv, &vec2(1, 0)).unwrap().unwrap();
        assert_eq!(line.level, exact::int(1));
        let ab = chem("A -> B");
        let line = essential_support(&ab, &vec2(-1, 0)).unwrap().unwrap();
        assert_eq!(line.point, vec2(1, 0));
        let flat = chem("A -> A + B");
        assert_eq!(essential_support(&flat, &vec2(1, 0)).unwrap(), None);
    }

    #[test]
    fn sweep_tests() {
        let decay = chem("A -> 0\n0 -> B");
        match sweep_test(&decay, &vec2(1, 0)).unwrap() {
            SweepOutcome::Fail(w) => {
                assert_eq!(w.len(), 1);
                assert_eq!(w[0].reaction, 0);
                assert!(w[0].holds(&decay));
            }
            SweepOutcome::Pass => panic!("A -> 0 must fail"),
        }
        assert!(sweep_test(&chem(TWO_SPECIES), &vec2(1, 2)).unwrap().passed());
        let lv = chem(LV);
        match sweep_test(&lv, &vec2(1, 0)).unwrap() {
            SweepOutcome::Fail(w) => assert_eq!(lv.reaction_label(&lv.reactions()[w[0].reaction]), "A + B -> 2B"),
            SweepOutcome::Pass => panic!("LV fails along (1,0)"),
        }
    }

    #[test]
    fn hull_and_test_vectors() {
        // four hull sides, three of whose normals coincide with axis vectors
        assert_eq!(hull_sides(&chem(TWO_SPECIES)).unwrap().len(), 4);
        let tv = test_vector_set(&chem(TWO_SPECIES)).unwrap();
        assert_eq!(
            tv.vectors,
            vec![vec2(-1, 0), vec2(0, -1), vec2(0, 1), vec2(1, 0), vec2(1, 1)]
        );
        assert!(!tv.degenerate);
        let diag = chem("0 -> A + B\nA + B -> 2A + 2B\n2A + 2B -> A + B");
        let tv = test_vector_set(&diag).unwrap();
        assert!(tv.vectors.contains(&vec2(1, -1)) && tv.vectors.contains(&vec2(-1, 1)));
        assert_eq!(tv.vectors.len(), 6);
        let single = chem("A -> B");
        let tv = test_vector_set(&single).unwrap();
        assert_eq!(tv.vectors.len(), 4);
        assert!(tv.degenerate);
    }

    #[test]
    fn classifications() {
        let wr = is_endotactic(&chem(TWO_SPECIES)).unwrap();
        assert!(wr.endotactic && wr.lower_endotactic);
        let lv = is_endotactic(&chem(LV)).unwrap();
        assert!(!lv.endotactic && !lv.lower_endotactic);
        assert!(lv.witnesses.iter().all(|w| w.holds(&chem(LV))));
        assert!(!is_lower_endotactic(&chem(LV)).unwrap().lower_endotactic);
        let single = is_endotactic(&chem("A -> B")).unwrap();
        assert!(!single.endotactic && single.degenerate);
        assert_eq!(single.witnesses[0].vector, vec2(1, -1));
    }

    #[test]
    fn diagonal_escape_needs_axis_vectors() {
        // sources on the diagonal; the outward reaction along the diagonal is only caught by i, j
        let net = chem("0 -> A + B\nA + B -> 0\n2A + 2B -> 3A + 3B");
        let lower = is_lower_endotactic(&net).unwrap();
        assert!(lower.lower_endotactic);
        let full = is_endotactic(&net).unwrap();
        assert!(!full.endotactic);
        assert!(full
            .witnesses
            .iter()
            .all(|w| w.vector == vec2(-1, 0) || w.vector == vec2(0, -1)));
    }

    #[test]
    fn dominant_reactions() {
        let net = chem("X -> 2X + Y\n2X + Y -> X");
        let i = dominant_reaction(&net, &vec2(-1, 0)).unwrap().unwrap();
        assert_eq!(net.reactions()[i].source, crate::netmodel::Complex::from_ints(&[2, 1]));
        assert_eq!(dominant_reaction(&chem("2X <-> Y"), &vec2(1, 2)).unwrap(), None);
    }
}
