//! Exhaustive sweep over a dense set of integer directions.
//!
//! For networks whose complexes have coordinates in `0..=c`, every direction at which
//! the outcome of a sweep can change is orthogonal to an integer vector with entries
//! in `-c..=c`. Between two consecutive such directions lies their mediant, which has
//! entries at most `2c`, so sweeping all primitive directions up to a bound of `2c`
//! sees every cone and every critical direction.

use crate::Pair;

fn dot(a: &[i64], v: [i64; 2]) -> i64 {
    a[0] * v[0] + a[1] * v[1]
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// All primitive integer vectors `(a, b)` with `max(|a|, |b|) <= bound`, in angular order.
pub fn lattice_directions(bound: i64) -> Vec<[i64; 2]> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        for b in -bound..=bound {
            if (a, b) != (0, 0) && gcd(a, b) == 1 {
                out.push([a, b]);
            }
        }
    }
    out.sort_by(|p, q| {
        let tp = (p[1] as f64).atan2(p[0] as f64);
        let tq = (q[1] as f64).atan2(q[0] as f64);
        tp.partial_cmp(&tq).unwrap()
    });
    out
}

/// Smallest lattice bound giving at least `n` directions.
pub fn bound_for(n: usize) -> i64 {
    (1..).find(|&b| lattice_directions(b).len() >= n).unwrap()
}

/// True when some reaction sitting on the lowest line (over sources of reactions not
/// orthogonal to `v`) moves strictly backwards against `v`.
pub fn sweep_fails(reactions: &[Pair], v: [i64; 2]) -> bool {
    let moving: Vec<&Pair> = reactions.iter().filter(|(s, t)| dot(t, v) != dot(s, v)).collect();
    let Some(level) = moving.iter().map(|(s, _)| dot(s, v)).min() else {
        return false;
    };
    reactions.iter().any(|(s, t)| dot(s, v) == level && dot(t, v) < level)
}

/// Directions in the given set at which the sweep fails.
pub fn failing_directions(reactions: &[Pair], directions: &[[i64; 2]]) -> Vec<[i64; 2]> {
    directions
        .iter()
        .copied()
        .filter(|&v| sweep_fails(reactions, v))
        .collect()
}

pub fn brute_endotactic(reactions: &[Pair], directions: &[[i64; 2]]) -> bool {
    failing_directions(reactions, directions).is_empty()
}

/// Sweep restricted to directions in the closed positive quadrant.
pub fn brute_lower_endotactic(reactions: &[Pair], directions: &[[i64; 2]]) -> bool {
    directions
        .iter()
        .filter(|v| v[0] >= 0 && v[1] >= 0)
        .all(|&v| !sweep_fails(reactions, v))
}

/// Largest coordinate appearing in any complex.
pub fn max_coordinate(reactions: &[Pair]) -> i64 {
    reactions
        .iter()
        .flat_map(|(s, t)| s.iter().chain(t.iter()))
        .copied()
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: [i64; 2], t: [i64; 2]) -> Pair {
        (s.to_vec(), t.to_vec())
    }

    #[test]
    fn lattice_counts() {
        assert_eq!(lattice_directions(1).len(), 8);
        assert!(lattice_directions(bound_for(1000)).len() >= 1000);
    }

    #[test]
    fn hand_checked_networks() {
        let dirs = lattice_directions(8);
        // X <-> 2X, Y <-> 2Y, with a reversible link between them
        let reversible = vec![
            r([1, 0], [2, 0]),
            r([2, 0], [1, 0]),
            r([0, 1], [0, 2]),
            r([0, 2], [0, 1]),
        ];
        assert!(brute_endotactic(&reversible, &dirs));
        // A -> 2A, A + B -> 2B, B -> 0
        let lotka = vec![r([1, 0], [2, 0]), r([1, 1], [0, 2]), r([0, 1], [0, 0])];
        assert!(!brute_endotactic(&lotka, &dirs));
        assert!(!brute_lower_endotactic(&lotka, &dirs));
        // a lone inflow escapes along +x
        let inflow = vec![r([0, 0], [1, 0])];
        assert!(sweep_fails(&inflow, [-1, 0]));
        assert!(!sweep_fails(&inflow, [1, 0]));
        assert!(!sweep_fails(&inflow, [0, 1]));
    }
}
