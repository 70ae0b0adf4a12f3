//! Reachability and rank computed the long way round.

use crate::Pair;

/// Distinct complexes in order of first appearance.
pub fn complexes(reactions: &[Pair]) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    for (s, t) in reactions {
        for c in [s, t] {
            if !out.contains(c) {
                out.push(c.clone());
            }
        }
    }
    out
}

/// Transitive closure of the reaction graph (Floyd-Warshall on booleans).
pub fn reachability(reactions: &[Pair]) -> (Vec<Vec<i64>>, Vec<Vec<bool>>) {
    let nodes = complexes(reactions);
    let n = nodes.len();
    let index = |c: &Vec<i64>| nodes.iter().position(|x| x == c).unwrap();
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for (s, t) in reactions {
        reach[index(s)][index(t)] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    (nodes, reach)
}

/// Every reaction's target can reach back to its source.
pub fn weakly_reversible(reactions: &[Pair]) -> bool {
    let (nodes, reach) = reachability(reactions);
    let index = |c: &Vec<i64>| nodes.iter().position(|x| x == c).unwrap();
    reactions.iter().all(|(s, t)| reach[index(t)][index(s)])
}

/// Number of connected components of the undirected reaction graph.
pub fn linkage_classes(reactions: &[Pair]) -> usize {
    let nodes = complexes(reactions);
    let index = |c: &Vec<i64>| nodes.iter().position(|x| x == c).unwrap();
    let mut label: Vec<usize> = (0..nodes.len()).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for (s, t) in reactions {
            let (a, b) = (index(s), index(t));
            let m = label[a].min(label[b]);
            if label[a] != m || label[b] != m {
                label[a] = m;
                label[b] = m;
                changed = true;
            }
        }
    }
    let mut roots = label;
    roots.sort_unstable();
    roots.dedup();
    roots.len()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = 1i128;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for k in c + 1..cols {
                m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[rank][c];
        rank += 1;
    }
    rank
}

pub fn deficiency(reactions: &[Pair]) -> i64 {
    let vectors: Vec<Vec<i64>> = reactions
        .iter()
        .map(|(s, t)| t.iter().zip(s).map(|(a, b)| a - b).collect())
        .collect();
    complexes(reactions).len() as i64 - linkage_classes(reactions) as i64 - rank(&vectors) as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &[i64], t: &[i64]) -> Pair {
        (s.to_vec(), t.to_vec())
    }

    #[test]
    fn small_cases() {
        let cycle = vec![r(&[1, 0], &[0, 1]), r(&[0, 1], &[0, 0]), r(&[0, 0], &[1, 0])];
        assert!(weakly_reversible(&cycle));
        assert_eq!(deficiency(&cycle), 0);
        let chain = vec![r(&[1, 0], &[0, 1]), r(&[0, 1], &[0, 0])];
        assert!(!weakly_reversible(&chain));
        assert_eq!(rank(&[vec![1, 2], vec![2, 4], vec![0, 1]]), 2);
        assert_eq!(rank(&[vec![2, 0, 0], vec![0, 3, 0], vec![1, 1, 1]]), 3);
    }
}
