//! Property tests over random small networks and the bundled planar example family.

use std::sync::OnceLock;

use crn_persist::dynamics::{self, IntegratorConfig, RateSchedule, ScheduleKind};
use crn_persist::exact;
use crn_persist::gac3::{project_network, Plane};
use crn_persist::netmodel::{format_network, parse_network, ReactionNetwork};
use crn_persist::polygon::{self, PolygonFamily};
use crn_persist::{bundled, endo, graph};
use crn_persist_oracle::{geom, Pair};
use proptest::prelude::*;

fn net_from(pairs: &[Pair], dim: usize) -> Option<ReactionNetwork> {
    let names: Vec<&str> = ["X", "Y", "Z"][..dim].to_vec();
    ReactionNetwork::from_int_pairs(&names, pairs).ok()
}

fn pairs_strategy(dim: usize, max_len: usize) -> impl Strategy<Value = Vec<Pair>> {
    let complex = move || prop::collection::vec(0..=4i64, dim);
    prop::collection::vec((complex(), complex()), 1..=max_len)
        .prop_map(|v| v.into_iter().filter(|(s, t)| s != t).collect::<Vec<_>>())
        .prop_filter("species must all appear", move |v| net_from(v, dim).is_some())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn two_species() -> &'static (ReactionNetwork, PolygonFamily) {
    static FAMILY: OnceLock<(ReactionNetwork, PolygonFamily)> = OnceLock::new();
    FAMILY.get_or_init(|| {
        let net = bundled::load("eq31").unwrap().unwrap();
        let family = polygon::build_family(&net, 0.5, [1.0, 1.0]).unwrap();
        (net, family)
    })
}

fn alpha_at(family: &PolygonFamily, u: f64) -> f64 {
    let (lo, hi) = (family.alpha_min.ln(), family.alpha_max.ln());
    (lo + u * (hi - lo)).exp()
}

proptest! {
    #![proptest_config(config(128))]

    #[test]
    fn text_round_trip(pairs in pairs_strategy(2, 8)) {
        let net = net_from(&pairs, 2).unwrap();
        let text = format_network(&net);
        let back = parse_network(&text, net.mode()).unwrap();
        prop_assert!(net.equivalent(&back), "{text}");
    }

    #[test]
    fn weak_reversibility_survives_reversal(pairs in pairs_strategy(3, 8)) {
        let net = net_from(&pairs, 3).unwrap();
        prop_assert_eq!(graph::is_weakly_reversible(&net), graph::is_weakly_reversible(&net.reversed()));
        prop_assert_eq!(graph::deficiency(&net), graph::deficiency(&net.reversed()));
    }

    #[test]
    fn verdict_ignores_translation_and_swap(pairs in pairs_strategy(2, 8), dx in 0..3i64, dy in 0..3i64) {
        let net = net_from(&pairs, 2).unwrap();
        let moved: Vec<Pair> = pairs
            .iter()
            .map(|(s, t)| (vec![s[0] + dx, s[1] + dy], vec![t[0] + dx, t[1] + dy]))
            .collect();
        let base = endo::is_endotactic(&net).unwrap();
        let shifted = endo::is_endotactic(&net_from(&moved, 2).unwrap()).unwrap();
        let swapped = endo::is_endotactic(&net.swap_species(0, 1)).unwrap();
        prop_assert_eq!(base.endotactic, shifted.endotactic);
        prop_assert_eq!(base.lower_endotactic, shifted.lower_endotactic);
        prop_assert_eq!(base.endotactic, swapped.endotactic);
    }

    #[test]
    fn witnesses_recheck(pairs in pairs_strategy(2, 8)) {
        let net = net_from(&pairs, 2).unwrap();
        let verdict = endo::is_endotactic(&net).unwrap();
        prop_assert_eq!(verdict.endotactic, verdict.witnesses.is_empty());
        for w in &verdict.witnesses {
            prop_assert!(w.holds(&net));
        }
    }

    #[test]
    fn delta_matches_direct_formula(half in pairs_strategy(2, 5)) {
        // reversible, hence endotactic
        let mut pairs = half.clone();
        for (s, t) in &half {
            let back = (t.clone(), s.clone());
            if !pairs.contains(&back) {
                pairs.push(back);
            }
        }
        let net = net_from(&pairs, 2).unwrap();
        let bound = polygon::delta_bound(&net, 0.5).unwrap();
        for nb in &bound.per_normal {
            let v = [exact::to_f64(&nb.normal[0]), exact::to_f64(&nb.normal[1])];
            prop_assert!(v.iter().all(|x| x.fract() == 0.0));
            let expected = geom::delta_for(&pairs, 0.5, [v[0] as i64, v[1] as i64]);
            match (nb.delta_n, expected) {
                (Some(a), Some(b)) => prop_assert!((a - b).abs() <= 1e-14 * b, "{a} vs {b}"),
                (a, b) => prop_assert_eq!(a, b),
            }
        }
        let min = bound.per_normal.iter().filter_map(|nb| nb.delta_n).fold(f64::INFINITY, f64::min);
        prop_assert_eq!(bound.delta, min);
        prop_assert!(bound.delta < 1.0);
    }

    #[test]
    fn projection_commutes_with_reversal(pairs in pairs_strategy(3, 6)) {
        let net = net_from(&pairs, 3).unwrap();
        for plane in Plane::ALL {
            let a = project_network(&net.reversed(), plane);
            let b = project_network(&net, plane).map(|n| n.reversed());
            match (a, b) {
                (Ok(a), Ok(b)) => prop_assert!(a.equivalent(&b)),
                (a, b) => prop_assert_eq!(a.is_ok(), b.is_ok()),
            }
        }
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn levels_are_nested(u in 0.0..1.0f64, w in 0.0..1.0f64) {
        let (_, family) = two_species();
        let (lo, hi) = if u < w { (u, w) } else { (w, u) };
        prop_assume!(hi - lo > 1e-3);
        let outer = family.polygon_at(alpha_at(family, lo)).unwrap();
        let inner = family.polygon_at(alpha_at(family, hi)).unwrap();
        for v in &inner.vertices {
            prop_assert!(outer.contains_tol(*v, 1e-9), "{v:?}");
        }
    }

    #[test]
    fn level_function_is_constant_on_boundaries(u in 0.0..1.0f64) {
        let (_, family) = two_species();
        let alpha = alpha_at(family, u);
        let poly = family.polygon_at(alpha).unwrap();
        for (p, _) in poly.boundary_samples(40) {
            let level = family.phi(p).unwrap();
            prop_assert!((level / alpha).ln().abs() < 1e-6, "phi = {level}, alpha = {alpha} at {p:?}");
        }
    }

    #[test]
    fn containment_agrees_with_cross_products(u in 0.0..1.0f64, a in 0.0..1.0f64, b in 0.0..1.0f64) {
        let (_, family) = two_species();
        let poly = family.polygon_at(alpha_at(family, u)).unwrap();
        let mut vertices = poly.vertices.clone();
        if geom::signed_area2(&vertices) < 0.0 {
            vertices.reverse();
        }
        let (lo, hi) = poly.bounds();
        let pick = |t: f64, k: usize| {
            let (l, h) = ((lo[k] / 2.0).ln(), (hi[k] * 2.0).ln());
            (l + t * (h - l)).exp()
        };
        let p = [pick(a, 0), pick(b, 1)];
        let loose = geom::inside_convex(&vertices, p, 1e-9);
        let strict = geom::inside_convex(&vertices, p, -1e-9);
        prop_assume!(loose == strict);
        prop_assert_eq!(poly.contains(p), loose, "{:?}", p);
    }

    #[test]
    fn states_stay_positive(a in -2.0..2.0f64, b in -2.0..2.0f64, seed in 0..1000u64) {
        let (net, _) = two_species();
        let schedule = RateSchedule::build(ScheduleKind::Piecewise, net, 0.5, 5.0, seed).unwrap();
        let traj = dynamics::integrate(net, &schedule, &[10f64.powf(a), 10f64.powf(b)], &IntegratorConfig::with_horizon(5.0)).unwrap();
        prop_assert!(traj.states.iter().flatten().all(|&x| x > 0.0 && x.is_finite()));
    }
}

proptest! {
    #![proptest_config(config(6))]

    #[test]
    fn schedules_stay_inside_the_rate_box(seed in any::<u64>(), sinusoidal in any::<bool>()) {
        let (net, _) = two_species();
        let eta = 0.5;
        let kind = if sinusoidal { ScheduleKind::Sinusoidal } else { ScheduleKind::Piecewise };
        let horizon = 1000.0;
        let schedule = RateSchedule::build(kind, net, eta, horizon, seed).unwrap();
        for i in 0..100_000 {
            let t = horizon * i as f64 / 100_000.0;
            let r = i % schedule.len();
            let k = schedule.rate(r, t);
            prop_assert!(k > eta && k < 1.0 / eta, "rate {k} at t = {t}");
        }
    }
}
