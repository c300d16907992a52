//! Simplicial complexes presented by their facets.
//!
//! Facets are vertex bitmasks over a named universe. The presentation order of
//! the facets is kept because leaf orders are orders on that list; equality
//! and hashing ignore it.
//!
//! The universe may contain vertices that lie in no facet. That happens for the
//! dual complex of an ideal whose generators share a variable, and duality is
//! always computed against the stored universe.

use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::bits::{self, Mask};
use crate::error::{Error, Result};
use crate::monomial::VariableSet;

/// Largest facet count accepted by the exponential recognizers.
pub const FACET_GUARD: usize = 20;
/// Largest universe accepted by the induced-subcomplex recognizer.
pub const VERTEX_GUARD: usize = 20;
/// Largest facet count for which all leaf orders are listed.
pub const ORDER_LIST_GUARD: usize = 9;

#[derive(Clone)]
pub struct SimplicialComplex {
    vertices: VariableSet,
    facets: Vec<Mask>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LeafOrderMode {
    /// Peel the smallest-index leaf repeatedly, then reverse.
    Greedy,
    /// Backtracking over every removal order.
    Exhaustive,
}

impl SimplicialComplex {
    /// A complex with no facets is the complex whose only face is the empty set.
    pub fn new(vertices: VariableSet, facets: Vec<Mask>) -> Result<Self> {
        let universe = vertices.full_mask();
        for (i, &f) in facets.iter().enumerate() {
            if f == 0 {
                return Err(Error::EmptyFacet(i));
            }
            if !bits::is_subset(f, universe) {
                return Err(Error::UnknownVertex(format!("facet {i} uses a vertex outside the universe")));
            }
        }
        for (i, &f) in facets.iter().enumerate() {
            for (j, &g) in facets.iter().enumerate() {
                if i != j && bits::is_subset(f, g) {
                    return Err(Error::FacetContainment(i, j));
                }
            }
        }
        Ok(Self { vertices, facets })
    }

    pub fn from_names<S: AsRef<str>>(vertices: VariableSet, facets: &[Vec<S>]) -> Result<Self> {
        let masks = facets.iter().map(|f| vertices.mask_of(f)).collect::<Result<Vec<_>>>()?;
        Self::new(vertices, masks)
    }

    /// The complex generated by arbitrary faces: keeps the inclusion-maximal ones,
    /// first occurrence first.
    pub fn generated_by(vertices: VariableSet, faces: impl IntoIterator<Item = Mask>) -> Result<Self> {
        let faces: Vec<Mask> = faces.into_iter().filter(|&f| f != 0).collect();
        let facets = maximal_sets(&faces);
        Self::new(vertices, facets)
    }

    pub fn simplex(vertices: VariableSet) -> Self {
        let full = vertices.full_mask();
        Self { vertices, facets: vec![full] }
    }

    pub fn vertices(&self) -> &VariableSet {
        &self.vertices
    }

    pub fn facets(&self) -> &[Mask] {
        &self.facets
    }

    pub fn num_facets(&self) -> usize {
        self.facets.len()
    }

    /// No facets: the only face is the empty one.
    pub fn is_empty(&self) -> bool {
        self.facets.is_empty()
    }

    /// Vertices that lie in some facet.
    pub fn vertex_set(&self) -> Mask {
        self.facets.iter().fold(0, |a, f| a | f)
    }

    pub fn is_full_simplex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0] == self.vertices.full_mask()
    }

    pub fn canonical_facets(&self) -> Vec<Mask> {
        let mut f = self.facets.clone();
        f.sort_by(|a, b| bits::lex_cmp(*a, *b));
        f
    }

    /// Same complex, facets in canonical order.
    pub fn canonicalized(&self) -> Self {
        Self { vertices: self.vertices.clone(), facets: self.canonical_facets() }
    }

    pub fn facet_index(&self, facet: Mask) -> Result<usize> {
        self.facets
            .iter()
            .position(|&f| f == facet)
            .ok_or_else(|| Error::NotAFacet(self.vertices.format_set(facet)))
    }

    pub fn format_facet(&self, f: Mask) -> String {
        self.vertices.format_set(f)
    }

    /// `-1` for the complex with no facets.
    pub fn dim(&self) -> isize {
        self.facets.iter().map(|f| f.count_ones() as isize - 1).max().unwrap_or(-1)
    }

    /// Every nonempty face, sorted by size and then lexicographically.
    pub fn faces(&self) -> Result<Vec<Mask>> {
        if let Some(&big) = self.facets.iter().find(|f| f.count_ones() as usize > VERTEX_GUARD) {
            return Err(Error::Guard { what: "facet size", got: big.count_ones() as usize, limit: VERTEX_GUARD });
        }
        let mut all = HashSet::new();
        for &f in &self.facets {
            all.extend(bits::nonempty_submasks(f));
        }
        let mut faces: Vec<Mask> = all.into_iter().collect();
        faces.sort_by(|a, b| a.count_ones().cmp(&b.count_ones()).then(bits::lex_cmp(*a, *b)));
        Ok(faces)
    }

    pub fn contains_face(&self, face: Mask) -> bool {
        self.facets.iter().any(|&f| bits::is_subset(face, f))
    }

    pub fn f_vector(&self) -> Result<Vec<usize>> {
        let faces = self.faces()?;
        let mut f = vec![0; (self.dim() + 1).max(0) as usize];
        for face in faces {
            f[face.count_ones() as usize - 1] += 1;
        }
        Ok(f)
    }

    /// The induced subcomplex on `w`, over the universe `w`. It has no facets
    /// when `w` only meets vertices outside every facet.
    pub fn induced(&self, w: Mask) -> Result<SimplicialComplex> {
        if w == 0 {
            return Err(Error::EmptySubset);
        }
        if !bits::is_subset(w, self.vertices.full_mask()) {
            return Err(Error::UnknownVertex(format!("subset {w:#b} leaves the universe")));
        }
        let traces: Vec<Mask> = self.facets.iter().map(|f| f & w).filter(|&t| t != 0).collect();
        let facets = maximal_sets(&traces).into_iter().map(|f| compress(f, w)).collect();
        Ok(SimplicialComplex { vertices: self.vertices.restrict(w)?, facets })
    }

    pub fn subcollection(&self, indices: &[usize]) -> Result<SimplicialComplex> {
        if indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut seen = HashSet::new();
        let mut facets = Vec::with_capacity(indices.len());
        for &i in indices {
            let f = *self.facets.get(i).ok_or(Error::FacetIndex(i))?;
            if seen.insert(i) {
                facets.push(f);
            }
        }
        Ok(SimplicialComplex { vertices: self.vertices.clone(), facets })
    }

    /// Indices of the joints of `facet`.
    pub fn joints(&self, facet: Mask) -> Result<Vec<usize>> {
        let i = self.facet_index(facet)?;
        Ok(joints_in(&self.facets, i))
    }

    pub fn is_leaf(&self, facet: Mask) -> Result<bool> {
        let i = self.facet_index(facet)?;
        Ok(is_leaf_in(&self.facets, i))
    }

    pub fn free_vertices(&self, facet: Mask) -> Result<Mask> {
        let i = self.facet_index(facet)?;
        Ok(free_in(&self.facets, i))
    }

    /// Indices of the facets that are leaves.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.facets.len()).filter(|&i| is_leaf_in(&self.facets, i)).collect()
    }

    /// True iff `order` lists every facet once and each facet is a leaf of the
    /// subcollection generated by itself and its predecessors.
    pub fn is_leaf_order(&self, order: &[usize]) -> bool {
        let q = self.facets.len();
        if order.len() != q {
            return false;
        }
        let mut seen = vec![false; q];
        for &i in order {
            if i >= q || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        let prefix: Vec<Mask> = order.iter().map(|&i| self.facets[i]).collect();
        (0..q).all(|k| is_leaf_in(&prefix[..=k], k))
    }

    pub fn leaf_order(&self, mode: LeafOrderMode) -> Result<Option<Vec<usize>>> {
        match mode {
            LeafOrderMode::Greedy => Ok(greedy_leaf_order(&self.facets)),
            LeafOrderMode::Exhaustive => {
                let q = self.facets.len();
                if q > FACET_GUARD {
                    return Err(Error::Guard { what: "facet count", got: q, limit: FACET_GUARD });
                }
                Ok(exhaustive_leaf_order(&self.facets))
            }
        }
    }

    /// Every leaf order, in lexicographic order of index sequences.
    pub fn all_leaf_orders(&self) -> Result<Vec<Vec<usize>>> {
        let q = self.facets.len();
        if q > ORDER_LIST_GUARD {
            return Err(Error::Guard { what: "facet count", got: q, limit: ORDER_LIST_GUARD });
        }
        let mut out = Vec::new();
        let mut order = Vec::with_capacity(q);
        extend_orders(&self.facets, &mut order, &mut out);
        Ok(out)
    }

    pub fn is_quasi_forest(&self) -> Result<bool> {
        Ok(self.leaf_order(LeafOrderMode::Exhaustive)?.is_some())
    }

    /// Every nonempty induced subcomplex has a leaf.
    pub fn is_quasi_forest_by_induced(&self) -> Result<bool> {
        let n = self.vertices.len();
        if n > VERTEX_GUARD {
            return Err(Error::Guard { what: "vertex count", got: n, limit: VERTEX_GUARD });
        }
        let mut traces = Vec::with_capacity(self.facets.len());
        Ok(bits::nonempty_submasks(self.vertices.full_mask()).all(|w| {
            traces.clear();
            traces.extend(self.facets.iter().map(|f| f & w).filter(|&t| t != 0));
            let facets = maximal_sets(&traces);
            facets.is_empty() || (0..facets.len()).any(|i| is_leaf_in(&facets, i))
        }))
    }

    /// Every nonempty subcollection has a leaf.
    pub fn is_simplicial_forest(&self) -> Result<bool> {
        let q = self.facets.len();
        if q > FACET_GUARD {
            return Err(Error::Guard { what: "facet count", got: q, limit: FACET_GUARD });
        }
        let mut sub = Vec::with_capacity(q);
        Ok(bits::nonempty_submasks(bits::full(q)).all(|s| {
            sub.clear();
            sub.extend(bits::ones(s).map(|i| self.facets[i]));
            (0..sub.len()).any(|i| is_leaf_in(&sub, i))
        }))
    }

    /// Vertex sets of the connected components, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Mask> {
        let mut comps: Vec<Mask> = Vec::new();
        for &f in &self.facets {
            let mut merged = f;
            comps.retain(|&c| {
                if c & merged != 0 {
                    merged |= c;
                    false
                } else {
                    true
                }
            });
            comps.push(merged);
        }
        comps.sort_by_key(|c| c.trailing_zeros());
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.canonical_facets() == other.canonical_facets()
    }
}

impl Eq for SimplicialComplex {}

impl Hash for SimplicialComplex {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vertices.hash(state);
        self.canonical_facets().hash(state);
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self.facets.iter().map(|&m| self.format_facet(m)).collect();
        write!(f, "<{}>", facets.join(", "))
    }
}

/// Inclusion-maximal sets, duplicates dropped, first occurrence order.
pub(crate) fn maximal_sets(sets: &[Mask]) -> Vec<Mask> {
    let mut out = Vec::new();
    for (i, &s) in sets.iter().enumerate() {
        let dominated = sets
            .iter()
            .enumerate()
            .any(|(j, &t)| j != i && bits::is_subset(s, t) && (s != t || j < i));
        if !dominated {
            out.push(s);
        }
    }
    out
}

/// Re-index the bits of `m` (a subset of `w`) to positions within `w`.
pub(crate) fn compress(m: Mask, w: Mask) -> Mask {
    bits::ones(w).enumerate().fold(0, |acc, (k, i)| acc | ((m >> i) & 1) << k)
}

/// Union of `facets[i] ∩ facets[h]` over `h != i`.
fn shared_part(facets: &[Mask], i: usize) -> Mask {
    let f = facets[i];
    facets.iter().enumerate().filter(|&(h, _)| h != i).fold(0, |a, (_, &g)| a | (f & g))
}

pub(crate) fn joints_in(facets: &[Mask], i: usize) -> Vec<usize> {
    let shared = shared_part(facets, i);
    (0..facets.len())
        .filter(|&g| g != i && bits::is_subset(shared, facets[g]))
        .collect()
}

pub(crate) fn is_leaf_in(facets: &[Mask], i: usize) -> bool {
    if facets.len() == 1 {
        return true;
    }
    let shared = shared_part(facets, i);
    facets.iter().enumerate().any(|(g, &m)| g != i && bits::is_subset(shared, m))
}

pub(crate) fn free_in(facets: &[Mask], i: usize) -> Mask {
    facets[i] & !facets.iter().enumerate().filter(|&(h, _)| h != i).fold(0, |a, (_, &g)| a | g)
}

fn greedy_leaf_order(facets: &[Mask]) -> Option<Vec<usize>> {
    let mut remaining: Vec<usize> = (0..facets.len()).collect();
    let mut current: Vec<Mask> = facets.to_vec();
    let mut peeled = Vec::with_capacity(facets.len());
    while !remaining.is_empty() {
        let k = (0..current.len()).find(|&k| is_leaf_in(&current, k))?;
        peeled.push(remaining.remove(k));
        current.remove(k);
    }
    peeled.reverse();
    Some(peeled)
}

fn exhaustive_leaf_order(facets: &[Mask]) -> Option<Vec<usize>> {
    fn search(facets: &[Mask], alive: Mask, dead: &mut HashSet<Mask>, peeled: &mut Vec<usize>) -> bool {
        if alive.count_ones() <= 1 {
            peeled.extend(bits::ones(alive));
            return true;
        }
        if dead.contains(&alive) {
            return false;
        }
        let idx: Vec<usize> = bits::ones(alive).collect();
        let sub: Vec<Mask> = idx.iter().map(|&i| facets[i]).collect();
        for (k, &i) in idx.iter().enumerate() {
            if is_leaf_in(&sub, k) {
                peeled.push(i);
                if search(facets, alive & !(1 << i), dead, peeled) {
                    return true;
                }
                peeled.pop();
            }
        }
        dead.insert(alive);
        false
    }
    let mut peeled = Vec::with_capacity(facets.len());
    let mut dead = HashSet::new();
    if search(facets, bits::full(facets.len()), &mut dead, &mut peeled) {
        peeled.reverse();
        Some(peeled)
    } else {
        None
    }
}

fn extend_orders(facets: &[Mask], order: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if order.len() == facets.len() {
        out.push(order.clone());
        return;
    }
    for i in 0..facets.len() {
        if order.contains(&i) {
            continue;
        }
        order.push(i);
        let prefix: Vec<Mask> = order.iter().map(|&j| facets[j]).collect();
        if is_leaf_in(&prefix, prefix.len() - 1) {
            extend_orders(facets, order, out);
        }
        order.pop();
    }
}
