//! Seeded generators for random small networks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::Pair;

fn random_complex<R: Rng>(rng: &mut R, dim: usize, max_coef: i64) -> Vec<i64> {
    (0..dim).map(|_| rng.gen_range(0..=max_coef)).collect()
}

fn distinct_complexes<R: Rng>(rng: &mut R, count: usize, dim: usize, max_coef: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    while out.len() < count {
        let c = random_complex(rng, dim, max_coef);
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// Planar network with between 1 and `max_sources` distinct sources, each firing one
/// or two reactions to random distinct targets. Coefficients lie in `0..=max_coef`.
pub fn network<R: Rng>(rng: &mut R, max_sources: usize, max_coef: i64) -> Vec<Pair> {
    let n = rng.gen_range(1..=max_sources);
    let mut out = Vec::new();
    for s in distinct_complexes(rng, n, 2, max_coef) {
        let fan = rng.gen_range(1..=2);
        let mut targets: Vec<Vec<i64>> = Vec::new();
        while targets.len() < fan {
            let t = random_complex(rng, 2, max_coef);
            if t != s && !targets.contains(&t) {
                targets.push(t);
            }
        }
        out.extend(targets.into_iter().map(|t| (s.clone(), t)));
    }
    out
}

/// Adds the reverse of each reaction with probability `p`.
pub fn with_reverses<R: Rng>(rng: &mut R, mut pairs: Vec<Pair>, p: f64) -> Vec<Pair> {
    let reverses: Vec<Pair> = pairs
        .iter()
        .filter(|_| rng.gen_bool(p))
        .map(|(s, t)| (t.clone(), s.clone()))
        .filter(|r| !pairs.contains(r))
        .collect();
    for r in reverses {
        if !pairs.contains(&r) {
            pairs.push(r);
        }
    }
    pairs
}

/// Weakly reversible network: random complexes split into linkage classes, each class
/// closed into a directed cycle and then given a few extra internal edges.
pub fn weakly_reversible<R: Rng>(rng: &mut R, dim: usize, max_complexes: usize, max_coef: i64) -> Vec<Pair> {
    let n = rng.gen_range(2..=max_complexes.max(2));
    let mut nodes = distinct_complexes(rng, n, dim, max_coef);
    nodes.shuffle(rng);
    let mut out = Vec::new();
    let mut rest = &nodes[..];
    while rest.len() >= 2 {
        let size = if rest.len() <= 3 {
            rest.len()
        } else {
            rng.gen_range(2..=rest.len())
        };
        let (class, tail) = rest.split_at(size);
        rest = tail;
        for i in 0..class.len() {
            out.push((class[i].clone(), class[(i + 1) % class.len()].clone()));
        }
        for _ in 0..rng.gen_range(0..=class.len()) {
            let a = rng.gen_range(0..class.len());
            let b = rng.gen_range(0..class.len());
            let edge = (class[a].clone(), class[b].clone());
            if a != b && !out.contains(&edge) {
                out.push(edge);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn generated_shapes() {
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let net = network(&mut rng, 6, 4);
            let mut sources: Vec<&Vec<i64>> = net.iter().map(|(s, _)| s).collect();
            sources.dedup();
            assert!(!net.is_empty() && sources.len() <= 6);
            assert!(net.iter().all(|(s, t)| s != t));
            let wr = weakly_reversible(&mut rng, 2, 6, 4);
            assert!(structure::weakly_reversible(&wr));
        }
    }
}
