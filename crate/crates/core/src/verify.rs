//! Three-way check for a squarefree ideal `I`: `pd(I) <= 1`, the dual complex
//! is a quasi-forest, and some graph tree supports a minimal resolution of `S/I`.
//!
//! Each statement is decided on its own: the first by the Betti oracle, the
//! second by exhaustive leaf-order search, the third by running the tree
//! construction and, for small ideals, by searching every labeled tree on the
//! generators.

use crate::bits::Mask;
use crate::complex::{LeafOrderMode, SimplicialComplex};
use crate::duality::dual_facets;
use crate::error::{Error, Result};
use crate::homology::{betti, BettiTable};
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};
use crate::resolution::{build_tree, lcm_lattice, trees_for, JointChoice, LabeledComplex};

/// Largest generator count for the search over all labeled trees.
pub const TREE_SEARCH_GUARD: usize = 8;

#[derive(Debug, Clone)]
pub struct Verification {
    pub ideal: MonomialIdeal,
    pub betti: BettiTable,
    /// `pd(I)`, one less than `pd(S/I)`.
    pub pd: usize,
    /// Dual complex; over one extra variable when some generator uses every variable.
    pub dual: SimplicialComplex,
    pub extended_ambient: bool,
    pub leaf_order: Option<Vec<usize>>,
    pub connected: bool,
    /// Output of the tree construction, when the dual is a quasi-forest.
    pub tree: Option<LabeledComplex>,
    /// The constructed tree supports a resolution and that resolution is minimal.
    pub tree_resolves_minimally: bool,
    /// Result of searching all labeled trees; `None` when the ideal is too large.
    pub searched: Option<Option<LabeledComplex>>,
}

impl Verification {
    pub fn pd_at_most_one(&self) -> bool {
        self.pd <= 1
    }

    pub fn is_quasi_forest(&self) -> bool {
        self.leaf_order.is_some()
    }

    pub fn has_tree_resolution(&self) -> bool {
        self.tree_resolves_minimally || matches!(self.searched, Some(Some(_)))
    }

    pub fn statements(&self) -> [bool; 3] {
        [self.pd_at_most_one(), self.is_quasi_forest(), self.has_tree_resolution()]
    }

    /// All three statements agree, the construction succeeds whenever the dual
    /// is a quasi-forest, and the exhaustive search agrees with both.
    pub fn consistent(&self) -> bool {
        let [a, b, c] = self.statements();
        let search_agrees = match &self.searched {
            Some(found) => found.is_some() == a,
            None => true,
        };
        a == b && b == c && (!b || self.tree_resolves_minimally) && search_agrees
    }

    pub fn report(&self) -> String {
        let mut parts = vec![format!("pd(I)={}", self.pd)];
        parts.push(match &self.leaf_order {
            Some(order) => {
                let kind = if self.connected { "quasi-tree" } else { "quasi-forest" };
                let names: Vec<String> = order.iter().map(|i| format!("F{}", i + 1)).collect();
                format!("dual is {kind} (leaf order {})", names.join(","))
            }
            None => "dual is not a quasi-forest (no leaf order)".to_string(),
        });
        parts.push(if self.has_tree_resolution() {
            "tree supports minimal resolution".to_string()
        } else {
            "no tree supports a minimal resolution".to_string()
        });
        parts.join("; ")
    }
}

/// The dual complex, adding a fresh variable first if some generator is
/// divisible by every variable (that variable lies in every facet and does not
/// change projective dimension).
pub fn dual_with_room(ideal: &MonomialIdeal) -> Result<(SimplicialComplex, bool)> {
    match dual_facets(ideal) {
        Err(Error::EmptyDualFacet(_)) => {
            let mut names = ideal.vars().names().to_vec();
            let mut fresh = String::from("z");
            while names.contains(&fresh) {
                fresh.push('_');
            }
            names.push(fresh);
            let vars = VariableSet::new(names)?;
            let gens = ideal
                .generators()
                .iter()
                .map(|g| {
                    let mut e = g.exponents().to_vec();
                    e.push(0);
                    Monomial::new(e)
                })
                .collect();
            Ok((dual_facets(&MonomialIdeal::new(vars, gens)?)?, true))
        }
        other => other.map(|d| (d, false)),
    }
}

pub fn verify(ideal: &MonomialIdeal) -> Result<Verification> {
    ideal.require_squarefree()?;
    let betti = betti(ideal)?;
    let pd = betti.projective_dimension() - 1;
    let (dual, extended_ambient) = dual_with_room(ideal)?;
    let identity: Vec<usize> = (0..dual.num_facets()).collect();
    let leaf_order = if dual.is_leaf_order(&identity) {
        Some(identity)
    } else {
        dual.leaf_order(LeafOrderMode::Exhaustive)?
    };
    let (tree, tree_resolves_minimally) = match &leaf_order {
        Some(order) => {
            let t = relabel(ideal, &build_tree(&dual, Some(order))?)?;
            let ok = t.supports_resolution()? && t.is_minimal_support()?;
            (Some(t), ok)
        }
        None => (None, false),
    };
    let searched = if ideal.len() <= TREE_SEARCH_GUARD { Some(find_supporting_tree(ideal)?) } else { None };
    Ok(Verification {
        ideal: ideal.clone(),
        betti,
        pd,
        connected: dual.is_connected(),
        dual,
        extended_ambient,
        leaf_order,
        tree,
        tree_resolves_minimally,
        searched,
    })
}

/// The same tree labeled by the generators of `ideal`, dropping any variable
/// added by [`dual_with_room`].
fn relabel(ideal: &MonomialIdeal, t: &LabeledComplex) -> Result<LabeledComplex> {
    LabeledComplex::graph(ideal.vars().clone(), ideal.generators().to_vec(), &t.edges())
}

/// Trees on the generators of `ideal` from its dual quasi-forest: the default
/// construction, or every tree over all leaf orders and joint choices.
pub fn trees_for_ideal(ideal: &MonomialIdeal, choice: JointChoice) -> Result<Vec<LabeledComplex>> {
    ideal.require_squarefree()?;
    let (dual, _) = dual_with_room(ideal)?;
    trees_for(&dual, choice)?.iter().map(|t| relabel(ideal, t)).collect()
}

/// Edges of the labeled tree with Prüfer sequence `seq` on `q` vertices.
fn prufer_edges(seq: &[usize], q: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; q];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(q - 1);
    for &s in seq {
        let leaf = (0..q).find(|&v| degree[v] == 1).expect("a leaf always exists");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..q).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Search every labeled tree on the generators for one whose homogenization
/// is a minimal resolution. Uses the connectivity criterion directly: in a
/// forest, the part induced on `W` is connected iff it has `|W| - 1` edges.
pub fn find_supporting_tree(ideal: &MonomialIdeal) -> Result<Option<LabeledComplex>> {
    let q = ideal.len();
    if q > TREE_SEARCH_GUARD {
        return Err(Error::Guard { what: "generator count", got: q, limit: TREE_SEARCH_GUARD });
    }
    let gens = ideal.generators();
    let make = |edges: &[(usize, usize)]| LabeledComplex::graph(ideal.vars().clone(), gens.to_vec(), edges);
    if q == 1 {
        return make(&[]).map(Some);
    }
    let below: Vec<Mask> = lcm_lattice(ideal)?
        .iter()
        .map(|m| gens.iter().enumerate().filter(|(_, g)| g.divides(m)).fold(0, |a, (i, _)| a | 1 << i))
        .collect();
    let mut seq = vec![0usize; q - 2];
    loop {
        let edges = if q == 2 { vec![(0, 1)] } else { prufer_edges(&seq, q) };
        let resolves = below.iter().all(|&w| {
            let inside = edges.iter().filter(|&&(a, b)| w >> a & 1 == 1 && w >> b & 1 == 1).count();
            inside + 1 == w.count_ones() as usize
        });
        if resolves {
            let tree = make(&edges)?;
            if tree.is_minimal_support()? {
                return Ok(Some(tree));
            }
        }
        // Next sequence in base q.
        let mut k = 0;
        while k < seq.len() && seq[k] + 1 == q {
            seq[k] = 0;
            k += 1;
        }
        if k == seq.len() {
            return Ok(None);
        }
        seq[k] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
        let v = VariableSet::numbered("x", n).unwrap();
        let gens = gens
            .iter()
            .map(|g| Monomial::from_mask(n, g.iter().fold(0, |m, &i| m | 1 << (i - 1))))
            .collect();
        MonomialIdeal::new(v, gens).unwrap()
    }

    #[test]
    fn worked_example_report() {
        let v = verify(&ideal(6, &[&[1, 3, 6], &[1, 4, 6], &[1, 2, 4], &[4, 5, 6]])).unwrap();
        assert!(v.consistent());
        assert_eq!(
            v.report(),
            "pd(I)=1; dual is quasi-tree (leaf order F1,F2,F3,F4); tree supports minimal resolution"
        );
    }

    #[test]
    fn four_cycle_is_a_consistent_negative() {
        let v = verify(&ideal(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])).unwrap();
        assert_eq!(v.pd, 2);
        assert_eq!(v.statements(), [false, false, false]);
        assert!(v.consistent());
    }

    #[test]
    fn principal_ideal_using_every_variable() {
        let v = verify(&ideal(2, &[&[1, 2]])).unwrap();
        assert!(v.extended_ambient);
        assert_eq!(v.pd, 0);
        assert!(v.consistent());
        assert_eq!(v.tree.unwrap().labels().len(), 1);
    }

    #[test]
    fn prufer_decoding_counts_cayley_trees() {
        use std::collections::HashSet;
        let q = 5;
        let mut all = HashSet::new();
        for code in 0..q * q * q {
            let seq = [code % q, code / q % q, code / (q * q)];
            let mut e = prufer_edges(&seq, q);
            e.sort_unstable();
            all.insert(e);
        }
        assert_eq!(all.len(), 125);
    }

    #[test]
    fn search_finds_nothing_for_three_variables() {
        // (x1, x2, x3) has pd 2.
        assert_eq!(find_supporting_tree(&ideal(3, &[&[1], &[2], &[3]])).unwrap(), None);
        assert!(find_supporting_tree(&ideal(3, &[&[1, 2], &[2, 3]])).unwrap().is_some());
    }
}
