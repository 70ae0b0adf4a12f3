//! Shared helpers for the integration tests.

#![allow(dead_code)]

use crn_persist::netmodel::ReactionNetwork;
use crn_persist_oracle::{random, Pair};
use rand::Rng;

pub const MAX_SOURCES: usize = 6;
pub const MAX_COEF: i64 = 4;

/// `None` when validation rejects the network, e.g. because a species never appears.
pub fn try_build(pairs: &[Pair], dim: usize) -> Option<ReactionNetwork> {
    let names: Vec<&str> = ["X", "Y", "Z"][..dim].to_vec();
    ReactionNetwork::from_int_pairs(&names, pairs).ok()
}

/// Redraws until the network validates.
pub fn draw(mut gen: impl FnMut() -> Vec<Pair>, dim: usize) -> (Vec<Pair>, ReactionNetwork) {
    loop {
        let pairs = gen();
        if let Some(net) = try_build(&pairs, dim) {
            return (pairs, net);
        }
    }
}

fn source_count(pairs: &[Pair]) -> usize {
    let mut sources: Vec<&Vec<i64>> = pairs.iter().map(|(s, _)| s).collect();
    sources.sort();
    sources.dedup();
    sources.len()
}

/// Planar network with at most [`MAX_SOURCES`] sources and coefficients up to [`MAX_COEF`].
/// Odd draws get most reactions reversed so both verdicts are common.
pub fn planar<R: Rng>(rng: &mut R, i: usize) -> (Vec<Pair>, ReactionNetwork) {
    let p = if i % 2 == 1 { 0.8 } else { 0.0 };
    draw(
        || {
            let base = random::network(rng, MAX_SOURCES, MAX_COEF);
            let pairs = random::with_reverses(rng, base, p);
            if source_count(&pairs) <= MAX_SOURCES {
                pairs
            } else {
                Vec::new()
            }
        },
        2,
    )
}

pub fn weakly_reversible<R: Rng>(rng: &mut R) -> (Vec<Pair>, ReactionNetwork) {
    draw(|| random::weakly_reversible(rng, 2, 7, MAX_COEF), 2)
}
