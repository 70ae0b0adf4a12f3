//! The finite-direction classifier against an exhaustive lattice sweep.

mod common;

use crn_persist::endo;
use crn_persist::graph;
use crn_persist_oracle::{random, structure, sweep};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const NETWORKS: usize = 600;

fn directions() -> Vec<[i64; 2]> {
    sweep::lattice_directions(sweep::bound_for(1000).max(2 * common::MAX_COEF))
}

#[test]
fn finite_test_matches_lattice_sweep() {
    let dirs = directions();
    assert!(dirs.len() >= 1000);
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut disagreements = Vec::new();
    let mut endotactic = 0;
    for i in 0..NETWORKS {
        let (pairs, net) = common::planar(&mut rng, i);
        let verdict = endo::is_endotactic(&net).unwrap();
        let expected = sweep::brute_endotactic(&pairs, &dirs);
        let expected_lower = sweep::brute_lower_endotactic(&pairs, &dirs);
        endotactic += expected as usize;
        if verdict.endotactic != expected || verdict.lower_endotactic != expected_lower {
            disagreements.push((i, pairs.clone(), verdict.endotactic, expected));
        }
        for w in &verdict.witnesses {
            assert!(w.holds(&net), "network {i}: stale witness");
        }
    }
    assert!(disagreements.is_empty(), "{disagreements:?}");
    // both classes should be well represented
    assert!(
        endotactic > NETWORKS / 20 && endotactic < NETWORKS - NETWORKS / 20,
        "{endotactic}"
    );
}

#[test]
fn weakly_reversible_networks_are_endotactic() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    for i in 0..1000 {
        let (pairs, net) = common::weakly_reversible(&mut rng);
        assert!(graph::is_weakly_reversible(&net), "network {i}");
        assert!(endo::is_endotactic(&net).unwrap().endotactic, "network {i}: {pairs:?}");
    }
}

#[test]
fn structure_matches_reachability_and_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    for i in 0..300 {
        let dim = 2 + i % 2;
        let pairs = if i % 3 == 0 {
            random::weakly_reversible(&mut rng, dim, 6, 3)
        } else {
            let planar = random::network(&mut rng, 5, 3);
            if dim == 2 {
                planar
            } else {
                planar
                    .into_iter()
                    .map(|(s, t)| (vec![s[0], s[1], t[0]], vec![t[1], s[0], s[1]]))
                    .filter(|(s, t)| s != t)
                    .collect()
            }
        };
        let Some(net) = common::try_build(&pairs, dim) else {
            continue;
        };
        assert_eq!(
            graph::is_weakly_reversible(&net),
            structure::weakly_reversible(&pairs),
            "{pairs:?}"
        );
        assert_eq!(graph::deficiency(&net), structure::deficiency(&pairs), "{pairs:?}");
        assert_eq!(
            graph::linkage_classes(&net).len(),
            structure::linkage_classes(&pairs),
            "{pairs:?}"
        );
    }
}
