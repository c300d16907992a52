use std::collections::{BTreeSet, HashSet};

use crate::bits::Mask;
use crate::complex::{joints_in, LeafOrderMode, SimplicialComplex, ORDER_LIST_GUARD};
use crate::duality::dual_generators;
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

use super::labeled::{LabeledComplex, UnionFind};

/// Which joint a new facet is attached to while building a tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JointChoice {
    /// The joint that comes first in the leaf order.
    SmallestIndex,
    /// Every joint, over every leaf order.
    EnumerateAll,
}

/// Graph tree supporting the minimal resolution of the ideal dual to the
/// quasi-forest `d`.
///
/// Facets are taken in `order`, or, if none is given, in presentation order
/// when that is a leaf order and in greedy peeling order otherwise. Facet `k`
/// of the order is joined to the earliest facet of its prefix that is one of
/// its joints there. Vertex `i` of the tree is facet `i` of `d`, labeled by the
/// product of the variables outside that facet.
pub fn build_tree(d: &SimplicialComplex, order: Option<&[usize]>) -> Result<LabeledComplex> {
    let ideal = dual_generators(d)?;
    let identity: Vec<usize> = (0..d.num_facets()).collect();
    let order = match order {
        Some(o) if d.is_leaf_order(o) => o.to_vec(),
        Some(_) => return Err(Error::NotQuasiForest),
        None if d.is_leaf_order(&identity) => identity,
        None => d
            .leaf_order(LeafOrderMode::Greedy)?
            .or(d.leaf_order(LeafOrderMode::Exhaustive)?)
            .ok_or(Error::NotQuasiForest)?,
    };
    let facets = d.facets();
    let mut prefix: Vec<Mask> = Vec::with_capacity(order.len());
    let mut edges = Vec::with_capacity(order.len().saturating_sub(1));
    for (k, &i) in order.iter().enumerate() {
        prefix.push(facets[i]);
        if k > 0 {
            let u = *joints_in(&prefix, k).first().ok_or(Error::NotQuasiForest)?;
            edges.push((i, order[u]));
        }
    }
    tree_from(&ideal, &edges)
}

fn tree_from(ideal: &MonomialIdeal, edges: &[(usize, usize)]) -> Result<LabeledComplex> {
    LabeledComplex::graph(ideal.vars().clone(), ideal.generators().to_vec(), edges)
}

/// Every tree the construction can produce, over all leaf orders and all joint
/// choices, each listed once.
pub fn enumerate_trees(d: &SimplicialComplex) -> Result<Vec<LabeledComplex>> {
    let q = d.num_facets();
    if q > ORDER_LIST_GUARD {
        return Err(Error::Guard { what: "facet count", got: q, limit: ORDER_LIST_GUARD });
    }
    let ideal = dual_generators(d)?;
    let mut found: BTreeSet<Vec<(usize, usize)>> = BTreeSet::new();
    let mut visited: HashSet<(Mask, Vec<(usize, usize)>)> = HashSet::new();
    let mut order = Vec::with_capacity(q);
    let mut edges = Vec::with_capacity(q);
    grow(d.facets(), &mut order, &mut edges, &mut visited, &mut found);
    if found.is_empty() {
        return Err(Error::NotQuasiForest);
    }
    found.iter().map(|e| tree_from(&ideal, e)).collect()
}

fn grow(
    facets: &[Mask],
    order: &mut Vec<usize>,
    edges: &mut Vec<(usize, usize)>,
    visited: &mut HashSet<(Mask, Vec<(usize, usize)>)>,
    found: &mut BTreeSet<Vec<(usize, usize)>>,
) {
    let placed: Mask = order.iter().fold(0, |a, &i| a | 1 << i);
    let mut key_edges = edges.clone();
    key_edges.sort_unstable();
    if !visited.insert((placed, key_edges.clone())) {
        return;
    }
    if order.len() == facets.len() {
        found.insert(key_edges);
        return;
    }
    for i in (0..facets.len()).filter(|i| placed >> i & 1 == 0) {
        order.push(i);
        let prefix: Vec<Mask> = order.iter().map(|&j| facets[j]).collect();
        let last = prefix.len() - 1;
        if last == 0 {
            grow(facets, order, edges, visited, found);
        } else {
            for u in joints_in(&prefix, last) {
                let (a, b) = (i.min(order[u]), i.max(order[u]));
                edges.push((a, b));
                grow(facets, order, edges, visited, found);
                edges.pop();
            }
        }
        order.pop();
    }
}

/// Trees for `d` under the given joint policy.
pub fn trees_for(d: &SimplicialComplex, choice: JointChoice) -> Result<Vec<LabeledComplex>> {
    match choice {
        JointChoice::SmallestIndex => Ok(vec![build_tree(d, None)?]),
        JointChoice::EnumerateAll => enumerate_trees(d),
    }
}

/// Nested spanning forests of the complete graph on the generators, with each
/// edge labeled by the lcm of its ends: candidate edges are taken in order of
/// (lcm degree, first vertex, second vertex) and kept when they join two
/// components. Returns the first forest that spans every vertex.
pub fn floystad_tree(ideal: &MonomialIdeal) -> Result<LabeledComplex> {
    let gens = ideal.generators();
    let q = gens.len();
    let mut candidates: Vec<(u32, usize, usize)> = Vec::new();
    for a in 0..q {
        for b in a + 1..q {
            candidates.push((gens[a].lcm(&gens[b]).degree(), a, b));
        }
    }
    candidates.sort_unstable();
    let mut uf = UnionFind::new(q);
    let mut edges = Vec::with_capacity(q.saturating_sub(1));
    for (_, a, b) in candidates {
        if edges.len() + 1 == q {
            break;
        }
        if uf.union(a, b) {
            edges.push((a, b));
        }
    }
    if edges.len() + 1 != q {
        return Err(Error::NoSpanningTree);
    }
    tree_from(ideal, &edges)
}

/// Labels of a tree's edges, in edge order.
pub fn edge_labels(tree: &LabeledComplex) -> Vec<Monomial> {
    tree.edges().iter().map(|&(a, b)| tree.labels()[a].lcm(&tree.labels()[b])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::dual_facets;
    use crate::monomial::VariableSet;

    fn ideal(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
        let v = VariableSet::numbered("x", n).unwrap();
        let gens = gens
            .iter()
            .map(|g| Monomial::from_mask(n, g.iter().fold(0, |m, &i| m | 1 << (i - 1))))
            .collect();
        MonomialIdeal::new(v, gens).unwrap()
    }

    fn example() -> MonomialIdeal {
        ideal(6, &[&[1, 3, 6], &[1, 4, 6], &[1, 2, 4], &[4, 5, 6]])
    }

    fn star() -> MonomialIdeal {
        ideal(5, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
    }

    #[test]
    fn worked_example_builds_the_star() {
        let d = dual_facets(&example()).unwrap();
        let t = build_tree(&d, Some(&[0, 1, 2, 3])).unwrap();
        // Centre is vertex 1, labeled x1x4x6.
        assert_eq!(t.edges(), vec![(0, 1), (1, 2), (1, 3)]);
        assert_eq!(t.fmt_mono(&t.labels()[1]), "x1*x4*x6");
        assert_eq!(build_tree(&d, None).unwrap(), t);
    }

    #[test]
    fn single_facet_gives_single_vertex() {
        let d = dual_facets(&ideal(2, &[&[1]])).unwrap();
        let t = build_tree(&d, None).unwrap();
        assert!(t.edges().is_empty());
        assert_eq!(t.labels().len(), 1);
    }

    #[test]
    fn star_example_reaches_all_sixteen_trees() {
        let d = dual_facets(&star()).unwrap();
        let trees = enumerate_trees(&d).unwrap();
        assert_eq!(trees.len(), 16);
        assert!(trees.iter().all(LabeledComplex::is_graph_tree));
    }

    #[test]
    fn rejects_non_quasi_forests() {
        let v = VariableSet::new(["a", "b", "c"]).unwrap();
        let hollow = SimplicialComplex::new(v, vec![0b011, 0b110, 0b101]).unwrap();
        assert_eq!(build_tree(&hollow, None), Err(Error::NotQuasiForest));
        assert_eq!(enumerate_trees(&hollow), Err(Error::NotQuasiForest));
        let d = dual_facets(&example()).unwrap();
        assert_eq!(build_tree(&d, Some(&[3, 0, 1, 2])), Err(Error::NotQuasiForest));
    }

    #[test]
    fn floystad_examples() {
        let t = floystad_tree(&example()).unwrap();
        assert!(t.is_graph_tree());
        assert!(edge_labels(&t).iter().all(|m| m.degree() == 4));
        assert!(t.supports_resolution().unwrap());

        let t = floystad_tree(&ideal(3, &[&[1, 2]])).unwrap();
        assert_eq!(t.labels().len(), 1);

        let t = floystad_tree(&star()).unwrap();
        assert!(t.is_graph_tree());
        assert!(t.supports_resolution().unwrap());
    }
}
