//! Complex graph: linkage classes, (weak) reversibility, stoichiometric rank, deficiency.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use petgraph::algo::{condensation, connected_components, tarjan_scc};
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::exact::Rational;
use crate::netmodel::{Complex, ReactionNetwork};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub num_complexes: usize,
    pub num_linkage_classes: usize,
    /// Complex labels per linkage class.
    pub linkage_classes: Vec<Vec<String>>,
    pub reversible: bool,
    pub weakly_reversible: bool,
    pub stoich_rank: usize,
    pub deficiency: i64,
}

/// Directed complex graph with nodes in first-appearance order.
pub struct ComplexGraph {
    pub complexes: Vec<Complex>,
    pub graph: DiGraph<usize, ()>,
}

impl ComplexGraph {
    pub fn new(net: &ReactionNetwork) -> Self {
        let complexes = net.complexes();
        let index: HashMap<&Complex, usize> = complexes.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut graph = DiGraph::with_capacity(complexes.len(), net.reactions().len());
        for i in 0..complexes.len() {
            graph.add_node(i);
        }
        for r in net.reactions() {
            let (a, b) = (index[&r.source], index[&r.target]);
            graph.add_edge(NodeIndex::new(a), NodeIndex::new(b), ());
        }
        ComplexGraph { complexes, graph }
    }
}

/// Connected components of the undirected complex graph, each listed in first-appearance order.
pub fn linkage_classes(net: &ReactionNetwork) -> Vec<Vec<Complex>> {
    let cg = ComplexGraph::new(net);
    let n = cg.complexes.len();
    let mut uf = UnionFind::<usize>::new(n);
    for e in cg.graph.raw_edges() {
        uf.union(e.source().index(), e.target().index());
    }
    let mut order: Vec<usize> = Vec::new();
    let mut classes: HashMap<usize, Vec<Complex>> = HashMap::new();
    for (i, c) in cg.complexes.iter().enumerate() {
        let root = uf.find(i);
        let entry = classes.entry(root).or_insert_with(|| {
            order.push(root);
            Vec::new()
        });
        entry.push(c.clone());
    }
    order.into_iter().map(|r| classes.remove(&r).unwrap()).collect()
}

pub fn is_reversible(net: &ReactionNetwork) -> bool {
    let set: std::collections::HashSet<_> = net.reactions().iter().collect();
    net.reactions().iter().all(|r| set.contains(&r.reversed()))
}

/// Every linkage class is a single strongly connected component.
pub fn is_weakly_reversible(net: &ReactionNetwork) -> bool {
    let cg = ComplexGraph::new(net);
    tarjan_scc(&cg.graph).len() == linkage_classes(net).len()
}

/// Linkage class count recomputed from the SCC condensation.
pub fn linkage_count_via_condensation(net: &ReactionNetwork) -> usize {
    let cg = ComplexGraph::new(net);
    let condensed = condensation(cg.graph, true);
    connected_components(&condensed)
}

/// Exact rank of a set of rational vectors (fraction-free elimination).
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            row.iter()
                .map(|q| (q * Rational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(pivot) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        for i in r + 1..m.len() {
            for j in c + 1..cols {
                let v = (&m[r][c] * &m[i][j] - &m[i][c] * &m[r][j]) / &prev;
                m[i][j] = v;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

pub fn stoich_rank(net: &ReactionNetwork) -> usize {
    let rows: Vec<Vec<Rational>> = net.reactions().iter().map(|r| r.vector()).collect();
    rank(&rows)
}

pub fn deficiency(net: &ReactionNetwork) -> i64 {
    let n = net.complexes().len() as i64;
    let l = linkage_classes(net).len() as i64;
    n - l - stoich_rank(net) as i64
}

/// Deficiency with the linkage count taken from the condensation instead of union-find.
pub fn deficiency_via_condensation(net: &ReactionNetwork) -> i64 {
    let n = net.complexes().len() as i64;
    n - linkage_count_via_condensation(net) as i64 - stoich_rank(net) as i64
}

pub fn analyze(net: &ReactionNetwork) -> StructureReport {
    let classes = linkage_classes(net);
    let stoich_rank = stoich_rank(net);
    let num_complexes = net.complexes().len();
    StructureReport {
        num_complexes,
        num_linkage_classes: classes.len(),
        linkage_classes: classes
            .iter()
            .map(|cls| cls.iter().map(|c| net.complex_label(c)).collect())
            .collect(),
        reversible: is_reversible(net),
        weakly_reversible: is_weakly_reversible(net),
        stoich_rank,
        deficiency: num_complexes as i64 - classes.len() as i64 - stoich_rank as i64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, ratio};
    use crate::netmodel::{parse_network, Mode};

    fn chem(text: &str) -> ReactionNetwork {
        parse_network(text, Mode::Chemical).unwrap()
    }

    const TWO_SPECIES: &str = "2X <-> Y\nX <-> Y\nX <-> 2X + Y";
    const LV: &str = "A -> 2A\nA + B -> 2B\nB -> 0";
    const GAC_A: &str = "A <-> B\nB <-> A + B\nA + B <-> A + C";
    const GAC_B: &str = "A + B <-> A + C\nA -> B\nB -> 2A\n2A -> A";
    const TRIANGLE: &str = "2A1 <-> A1 + A2\nA1 + A2 <-> 2A2\n2A2 <-> 2A1";

    #[test]
    fn linkage_class_counts() {
        assert_eq!(linkage_classes(&chem(TWO_SPECIES)).len(), 1);
        assert_eq!(linkage_classes(&chem(GAC_B)).len(), 2);
        assert_eq!(linkage_classes(&chem("A -> B")).len(), 1);
        assert_eq!(linkage_classes(&chem(LV)).len(), 3);
    }

    #[test]
    fn weak_reversibility() {
        assert!(is_weakly_reversible(&chem(GAC_A)));
        assert!(is_weakly_reversible(&chem(GAC_B)));
        assert!(!is_reversible(&chem(GAC_B)));
        assert!(!is_weakly_reversible(&chem(LV)));
        assert!(is_reversible(&chem(TWO_SPECIES)) && is_weakly_reversible(&chem(TWO_SPECIES)));
    }

    #[test]
    fn ranks_and_deficiencies() {
        assert_eq!(stoich_rank(&chem(TRIANGLE)), 1);
        assert_eq!(deficiency(&chem(TRIANGLE)), 1);
        assert_eq!(stoich_rank(&chem(GAC_A)), 3);
        assert_eq!(deficiency(&chem(GAC_A)), 0);
        assert_eq!(deficiency(&chem(GAC_B)), 0);
        assert_eq!(stoich_rank(&chem("A <-> B")), 1);
        for text in [TWO_SPECIES, LV, GAC_A, GAC_B, TRIANGLE] {
            let net = chem(text);
            assert_eq!(deficiency(&net), deficiency_via_condensation(&net));
        }
    }

    #[test]
    fn rank_with_fractions() {
        let rows = vec![
            vec![ratio(1, 2), ratio(1, 3), int(0)],
            vec![int(3), int(2), int(0)],
            vec![int(0), ratio(-7, 5), int(1)],
        ];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank(&[vec![int(0), int(0)]]), 0);
        assert_eq!(rank(&[]), 0);
    }

    #[test]
    fn report_fields() {
        let report = analyze(&chem(GAC_B));
        assert_eq!(report.num_complexes, 5);
        assert_eq!(report.num_linkage_classes, 2);
        assert_eq!(report.stoich_rank, 3);
        assert_eq!(report.deficiency, 0);
        assert!(report.weakly_reversible && !report.reversible);
    }
}
