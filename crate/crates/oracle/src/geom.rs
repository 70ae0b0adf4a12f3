//! Plane geometry checks in floating point, written independently of the polygon code.

use crate::Pair;

/// Signed area test: `p` is inside or on the counterclockwise polygon `vertices`
/// when it lies on the left of every edge, up to `tol` relative to the edge scale.
pub fn inside_convex(vertices: &[[f64; 2]], p: [f64; 2], tol: f64) -> bool {
    let n = vertices.len();
    (0..n).all(|i| {
        let a = vertices[i];
        let b = vertices[(i + 1) % n];
        let cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0]);
        let scale = (b[0] - a[0]).hypot(b[1] - a[1]) * (p[0] - a[0]).hypot(p[1] - a[1]);
        cross >= -tol * scale
    })
}

/// Twice the signed area; positive for counterclockwise order.
pub fn signed_area2(vertices: &[[f64; 2]]) -> f64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            a[0] * b[1] - a[1] * b[0]
        })
        .sum()
}

/// The dominance constant for direction `v`: the reaction on the lowest source line
/// with the largest forward component `d` gives `eta^2 d / (|v| sum |P' - P|)`.
/// `None` when no reaction moves along `v`, or when no reaction on the line moves forward.
pub fn delta_for(reactions: &[Pair], eta: f64, v: [i64; 2]) -> Option<f64> {
    let dot = |a: &[i64]| a[0] * v[0] + a[1] * v[1];
    let level = reactions
        .iter()
        .filter(|(s, t)| dot(t) != dot(s))
        .map(|(s, _)| dot(s))
        .min()?;
    let best = reactions
        .iter()
        .filter(|(s, _)| dot(s) == level)
        .map(|(s, t)| dot(t) - dot(s))
        .max()?;
    if best <= 0 {
        return None;
    }
    let total: f64 = reactions
        .iter()
        .map(|(s, t)| ((t[0] - s[0]) as f64).hypot((t[1] - s[1]) as f64))
        .sum();
    let norm = (v[0] as f64).hypot(v[1] as f64);
    Some(eta * eta * best as f64 / (norm * total))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square() {
        let sq = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]];
        assert!(signed_area2(&sq) > 0.0);
        assert!(inside_convex(&sq, [0.5, 0.5], 0.0));
        assert!(inside_convex(&sq, [1.0, 0.5], 1e-12));
        assert!(!inside_convex(&sq, [1.1, 0.5], 1e-12));
    }

    #[test]
    fn delta_by_hand() {
        // 0 <-> X: along +x the inflow dominates, total length 2
        let net = vec![(vec![0, 0], vec![1, 0]), (vec![1, 0], vec![0, 0])];
        assert_eq!(delta_for(&net, 0.5, [1, 0]), Some(0.25 / 2.0));
        assert_eq!(delta_for(&net, 0.5, [-1, 0]), Some(0.25 / 2.0));
        assert_eq!(delta_for(&net, 0.5, [0, 1]), None);
    }
}
