use std::collections::HashSet;

use crate::bits::{self, Mask};
use crate::complex::{maximal_sets, SimplicialComplex};
use crate::error::{Error, Result};
use crate::monomial::{minimalize, Monomial, MonomialIdeal, VariableSet};

/// Largest generator count for lcm-lattice enumeration.
pub const LATTICE_GUARD: usize = 20;

/// Every lcm of a nonempty subset of `gens`, deduplicated and sorted.
pub(crate) fn lattice_of(gens: &[Monomial]) -> Result<Vec<Monomial>> {
    if gens.len() > LATTICE_GUARD {
        return Err(Error::Guard { what: "generator count", got: gens.len(), limit: LATTICE_GUARD });
    }
    let mut seen: HashSet<Monomial> = HashSet::new();
    for g in gens {
        let grown: Vec<Monomial> = seen.iter().map(|m| m.lcm(g)).collect();
        seen.extend(grown);
        seen.insert(g.clone());
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    Ok(out)
}

pub fn lcm_lattice(ideal: &MonomialIdeal) -> Result<Vec<Monomial>> {
    lattice_of(ideal.generators())
}

/// A simplicial complex on vertices `0..q` with vertex `i` labeled by monomial `i`.
/// Faces carry the lcm of their vertex labels.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabeledComplex {
    complex: SimplicialComplex,
    vars: VariableSet,
    labels: Vec<Monomial>,
}

impl LabeledComplex {
    pub fn new(complex: SimplicialComplex, vars: VariableSet, labels: Vec<Monomial>) -> Result<Self> {
        if complex.vertices().len() != labels.len() {
            return Err(Error::LabelCount { vertices: complex.vertices().len(), labels: labels.len() });
        }
        if let Some(l) = labels.iter().find(|l| l.len() != vars.len()) {
            return Err(Error::VariableMismatch { left: l.len(), right: vars.len() });
        }
        Ok(Self { complex, vars, labels })
    }

    fn vertex_names(q: usize) -> Result<VariableSet> {
        VariableSet::numbered("v", q)
    }

    /// The full simplex on the generators.
    pub fn simplex(ideal: &MonomialIdeal) -> Result<Self> {
        let complex = SimplicialComplex::simplex(Self::vertex_names(ideal.len())?);
        Self::new(complex, ideal.vars().clone(), ideal.generators().to_vec())
    }

    /// A graph on the labels with the given edges. Vertices on no edge become
    /// isolated points.
    pub fn graph(vars: VariableSet, labels: Vec<Monomial>, edges: &[(usize, usize)]) -> Result<Self> {
        let q = labels.len();
        let mut facets: Vec<Mask> = Vec::new();
        let mut covered: Mask = 0;
        for &(a, b) in edges {
            if a >= q || b >= q || a == b {
                return Err(Error::Format(format!("bad edge ({a}, {b}) on {q} vertices")));
            }
            let e = 1 << a | 1 << b;
            if !facets.contains(&e) {
                facets.push(e);
            }
            covered |= e;
        }
        facets.extend((0..q).filter(|v| covered >> v & 1 == 0).map(|v| 1 << v));
        let complex = SimplicialComplex::new(Self::vertex_names(q)?, facets)?;
        Self::new(complex, vars, labels)
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn labels(&self) -> &[Monomial] {
        &self.labels
    }

    /// The ideal generated by the labels.
    pub fn ideal(&self) -> Result<MonomialIdeal> {
        minimalize(self.vars.clone(), self.labels.clone())
    }

    pub fn face_label(&self, face: Mask) -> Monomial {
        bits::ones(face).fold(Monomial::one(self.vars.len()), |acc, v| acc.lcm(&self.labels[v]))
    }

    pub fn fmt_mono(&self, m: &Monomial) -> String {
        m.display(&self.vars).to_string()
    }

    /// Edges of a graph (facets with two vertices), as sorted index pairs.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<(usize, usize)> = self
            .complex
            .facets()
            .iter()
            .filter(|f| f.count_ones() == 2)
            .map(|&f| {
                let mut it = bits::ones(f);
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        e.sort_unstable();
        e
    }

    /// A graph with `q` vertices, `q - 1` edges and one component.
    pub fn is_graph_tree(&self) -> bool {
        let q = self.labels.len();
        self.complex.dim() <= 1 && self.edges().len() + 1 == q && self.complex.is_connected()
    }

    pub fn lcm_lattice(&self) -> Result<Vec<Monomial>> {
        lattice_of(&self.labels)
    }

    /// Vertices whose labels divide `m`.
    pub fn vertices_below(&self, m: &Monomial) -> Mask {
        self.labels.iter().enumerate().filter(|(_, l)| l.divides(m)).fold(0, |a, (i, _)| a | 1 << i)
    }

    fn induced_connected(&self, w: Mask) -> bool {
        let traces: Vec<Mask> = self.complex.facets().iter().map(|f| f & w).filter(|&t| t != 0).collect();
        let mut comps: Vec<Mask> = Vec::new();
        for f in maximal_sets(&traces) {
            let mut merged = f;
            comps.retain(|&c| {
                let hit = c & merged != 0;
                if hit {
                    merged |= c;
                }
                !hit
            });
            comps.push(merged);
        }
        comps.len() <= 1
    }

    /// For a simplicial forest: the homogenized chain complex resolves `S/I`
    /// iff the subcomplex induced on the vertices whose labels divide `m` is
    /// connected for every `m` in the lcm lattice.
    pub fn supports_resolution(&self) -> Result<bool> {
        if !self.complex.is_simplicial_forest()? {
            return Err(Error::NotSimplicialForest);
        }
        Ok(self.connected_over(&self.lcm_lattice()?))
    }

    /// The same connectivity test, restricted to the given monomials.
    pub fn connected_over(&self, monomials: &[Monomial]) -> bool {
        monomials.iter().all(|m| self.induced_connected(self.vertices_below(m)))
    }

    /// Connectivity test over pairwise lcms of labels only.
    pub fn connected_over_pairs(&self) -> bool {
        let q = self.labels.len();
        (0..q).all(|i| (i..q).all(|j| self.induced_connected(self.vertices_below(&self.labels[i].lcm(&self.labels[j])))))
    }

    /// No face has the same label as one of its proper subfaces. Checking
    /// codimension-one subfaces suffices because labels grow with faces.
    pub fn is_minimal_support(&self) -> Result<bool> {
        for face in self.complex.faces()? {
            if face.count_ones() < 2 {
                continue;
            }
            let label = self.face_label(face);
            if bits::ones(face).any(|v| self.face_label(face & !(1 << v)) == label) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For a graph tree: for every degree `d`, the vertices and edges with label
    /// degree at most `d` form a spanning forest of the part of the complete
    /// graph on the labels with lcm degree at most `d`.
    pub fn has_degree_filtration(&self) -> bool {
        let q = self.labels.len();
        let deg: Vec<u32> = self.labels.iter().map(Monomial::degree).collect();
        let edges: Vec<((usize, usize), u32)> =
            self.edges().into_iter().map(|(a, b)| ((a, b), self.labels[a].lcm(&self.labels[b]).degree())).collect();
        let top = edges.iter().map(|e| e.1).chain(deg.iter().copied()).max().unwrap_or(0);
        for d in 0..=top {
            let present: Vec<bool> = deg.iter().map(|&x| x <= d).collect();
            let mut tree = UnionFind::new(q);
            for &((a, b), w) in &edges {
                if w <= d && !tree.union(a, b) {
                    return false;
                }
            }
            let mut full = UnionFind::new(q);
            for a in 0..q {
                for b in a + 1..q {
                    if present[a] && present[b] && self.labels[a].lcm(&self.labels[b]).degree() <= d {
                        full.union(a, b);
                    }
                }
            }
            for a in (0..q).filter(|&a| present[a]) {
                for b in (a + 1..q).filter(|&b| present[b]) {
                    if tree.same(a, b) != full.same(a, b) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl std::fmt::Debug for LabeledComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let labels: Vec<String> = self.labels.iter().map(|l| self.fmt_mono(l)).collect();
        write!(f, "{} labeled [{}]", self.complex, labels.join(", "))
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// False if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }

    pub(crate) fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(n: usize, idx: &[usize]) -> Monomial {
        Monomial::from_mask(n, idx.iter().fold(0, |m, &i| m | 1 << (i - 1)))
    }

    fn example_star_tree() -> LabeledComplex {
        // Centre x1x4x6 joined to x1x3x6, x1x2x4 and x4x5x6.
        let labels = vec![sq(6, &[1, 3, 6]), sq(6, &[1, 4, 6]), sq(6, &[1, 2, 4]), sq(6, &[4, 5, 6])];
        LabeledComplex::graph(VariableSet::numbered("x", 6).unwrap(), labels, &[(0, 1), (1, 2), (1, 3)]).unwrap()
    }

    #[test]
    fn lattice_examples() {
        let v = VariableSet::numbered("x", 5).unwrap();
        let star = MonomialIdeal::new(
            v,
            vec![sq(5, &[1, 2, 3]), sq(5, &[1, 2, 4]), sq(5, &[1, 3, 4]), sq(5, &[2, 3, 4])],
        )
        .unwrap();
        let l = lcm_lattice(&star).unwrap();
        assert_eq!(l.len(), 5);
        assert!(l.contains(&sq(5, &[1, 2, 3, 4])));

        let v = VariableSet::numbered("x", 2).unwrap();
        let p = MonomialIdeal::new(v, vec![sq(2, &[1, 2])]).unwrap();
        assert_eq!(lcm_lattice(&p).unwrap(), vec![sq(2, &[1, 2])]);

        let t = example_star_tree();
        let l = t.lcm_lattice().unwrap();
        for m in [sq(6, &[1, 2, 4, 6]), sq(6, &[1, 3, 4, 6]), sq(6, &[1, 4, 5, 6])] {
            assert!(l.contains(&m));
        }
    }

    #[test]
    fn support_and_minimality_of_worked_example() {
        let t = example_star_tree();
        assert!(t.is_graph_tree());
        assert!(t.supports_resolution().unwrap());
        assert!(t.is_minimal_support().unwrap());
        assert!(t.has_degree_filtration());
    }

    #[test]
    fn path_with_wrong_middle_is_not_a_resolution() {
        // x1 - x3 - x2: lcm(x1, x2) induces two isolated vertices.
        let labels = vec![sq(3, &[1]), sq(3, &[3]), sq(3, &[2])];
        let t = LabeledComplex::graph(VariableSet::numbered("x", 3).unwrap(), labels, &[(0, 1), (1, 2)]).unwrap();
        assert!(!t.supports_resolution().unwrap());
        assert!(!t.connected_over_pairs());
    }

    #[test]
    fn repeated_label_is_not_minimal() {
        let labels = vec![sq(2, &[1]), sq(2, &[1, 2])];
        let t = LabeledComplex::graph(VariableSet::numbered("x", 2).unwrap(), labels, &[(0, 1)]).unwrap();
        assert!(!t.is_minimal_support().unwrap());
    }

    #[test]
    fn hollow_triangle_is_rejected() {
        let v = VariableSet::numbered("x", 3).unwrap();
        let labels = vec![sq(3, &[1]), sq(3, &[2]), sq(3, &[3])];
        let t = LabeledComplex::graph(v, labels, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(t.supports_resolution(), Err(Error::NotSimplicialForest));
    }
}
