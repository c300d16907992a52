use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal, VariableSet};

use super::labeled::LabeledComplex;

/// One nonzero entry `sign * monomial` of a differential matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub sign: i8,
    pub monomial: Monomial,
}

/// A complex of multigraded free modules `0 <- F_0 <- F_1 <- ... <- F_len`.
///
/// `modules[i]` lists the multidegrees of the basis of `F_i`; `differentials[i - 1]`
/// holds the sparse matrix of `d_i : F_i -> F_{i-1}` with rows indexing `F_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    vars: VariableSet,
    modules: Vec<Vec<Monomial>>,
    differentials: Vec<Vec<Entry>>,
}

impl FreeComplex {
    pub fn new(vars: VariableSet, modules: Vec<Vec<Monomial>>, differentials: Vec<Vec<Entry>>) -> Result<Self> {
        if modules.is_empty() || modules.len() != differentials.len() + 1 {
            return Err(Error::Format("need one more module than differentials".into()));
        }
        if modules[0].len() != 1 || !modules[0][0].is_one() {
            return Err(Error::Format("degree 0 must be the single module S".into()));
        }
        for (deg, module) in modules.iter().enumerate() {
            if let Some(m) = module.iter().find(|m| m.len() != vars.len()) {
                return Err(Error::Format(format!("multidegree {m:?} in degree {deg} has the wrong length")));
            }
        }
        for (k, d) in differentials.iter().enumerate() {
            let (rows, cols) = (&modules[k], &modules[k + 1]);
            for e in d {
                if e.row >= rows.len() || e.col >= cols.len() || (e.sign != 1 && e.sign != -1) {
                    return Err(Error::Format(format!("bad entry {e:?} in d_{}", k + 1)));
                }
                // Homogeneity: entry = mdeg(col) / mdeg(row).
                if rows[e.row].mul(&e.monomial) != cols[e.col] {
                    return Err(Error::Format(format!("entry {e:?} of d_{} is not homogeneous", k + 1)));
                }
            }
        }
        Ok(Self { vars, modules, differentials })
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(Vec::len).collect()
    }

    pub fn modules(&self) -> &[Vec<Monomial>] {
        &self.modules
    }

    pub fn multidegrees(&self, degree: usize) -> &[Monomial] {
        &self.modules[degree]
    }

    /// Entries of `d_degree`, for `degree` in `1..=length`.
    pub fn differential(&self, degree: usize) -> &[Entry] {
        &self.differentials[degree - 1]
    }

    pub fn differentials(&self) -> &[Vec<Entry>] {
        &self.differentials
    }

    /// Symbolic check of `d_i * d_{i+1} = 0`: in each product entry the
    /// monomials all equal `mdeg(col)/mdeg(row)`, so the signed counts must cancel.
    pub fn check_square_zero(&self) -> Result<()> {
        for i in 1..self.length() {
            let lower = &self.differentials[i - 1];
            let upper = &self.differentials[i];
            let mut by_row: HashMap<usize, Vec<&Entry>> = HashMap::new();
            for e in lower {
                by_row.entry(e.col).or_default().push(e);
            }
            let mut sums: BTreeMap<(usize, usize, Monomial), i64> = BTreeMap::new();
            for u in upper {
                for l in by_row.get(&u.row).into_iter().flatten() {
                    let key = (l.row, u.col, l.monomial.mul(&u.monomial));
                    *sums.entry(key).or_default() += i64::from(l.sign) * i64::from(u.sign);
                }
            }
            if sums.values().any(|&s| s != 0) {
                return Err(Error::NonZeroSquare(i));
            }
        }
        Ok(())
    }

    /// Every differential entry lies in the maximal ideal.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().flatten().all(|e| !e.monomial.is_one())
    }

    /// Dense view of `d_degree` with entries rendered as strings.
    pub fn dense_strings(&self, degree: usize) -> Vec<Vec<String>> {
        let rows = self.modules[degree - 1].len();
        let cols = self.modules[degree].len();
        let mut out = vec![vec!["0".to_string(); cols]; rows];
        for e in self.differential(degree) {
            let m = e.monomial.display(&self.vars).to_string();
            out[e.row][e.col] = if e.sign < 0 { format!("-{m}") } else { m };
        }
        out
    }
}

/// I-homogenization of the augmented chain complex of a labeled complex.
///
/// Faces of each dimension are ordered by size, then lexicographically on
/// their sorted vertex lists; the boundary sign of dropping the `k`-th vertex
/// (0-based, ascending) is `(-1)^k`.
pub fn homogenize(labeled: &LabeledComplex) -> Result<FreeComplex> {
    let faces = labeled.complex().faces()?;
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    let mut by_size: Vec<Vec<Mask>> = vec![Vec::new(); top + 1];
    by_size[0].push(0);
    for f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    let labels: Vec<Vec<Monomial>> =
        by_size.iter().map(|fs| fs.iter().map(|&f| labeled.face_label(f)).collect()).collect();
    let mut differentials = Vec::with_capacity(top);
    for k in 1..=top {
        let index: HashMap<Mask, usize> = by_size[k - 1].iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let mut d = Vec::new();
        for (col, &f) in by_size[k].iter().enumerate() {
            for (pos, v) in bits::ones(f).enumerate() {
                let row = index[&(f & !(1 << v))];
                let monomial = labels[k][col].quotient(&labels[k - 1][row]).expect("labels grow with faces");
                d.push(Entry { row, col, sign: if pos % 2 == 0 { 1 } else { -1 }, monomial });
            }
        }
        d.sort_by_key(|e| (e.col, e.row));
        differentials.push(d);
    }
    FreeComplex::new(labeled.vars().clone(), labels, differentials)
}

/// The Taylor complex: homogenization of the full simplex on the generators.
pub fn taylor(ideal: &MonomialIdeal) -> Result<FreeComplex> {
    let q = ideal.len();
    if q > crate::complex::VERTEX_GUARD {
        return Err(Error::Guard { what: "generator count", got: q, limit: crate::complex::VERTEX_GUARD });
    }
    homogenize(&LabeledComplex::simplex(ideal)?)
}

/// A free complex with every variable set to 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    dims: Vec<usize>,
    matrices: Vec<Vec<Vec<i64>>>,
}

impl Frame {
    pub fn new(dims: Vec<usize>, matrices: Vec<Vec<Vec<i64>>>) -> Result<Self> {
        if dims.len() != matrices.len() + 1 {
            return Err(Error::Format("need one more dimension than matrices".into()));
        }
        for (k, m) in matrices.iter().enumerate() {
            if m.len() != dims[k] || m.iter().any(|r| r.len() != dims[k + 1]) {
                return Err(Error::Format(format!("matrix {} has the wrong shape", k + 1)));
            }
        }
        Ok(Self { dims, matrices })
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrices(&self) -> &[Vec<Vec<i64>>] {
        &self.matrices
    }

    /// Matrix of `d_degree`, rows indexing degree `degree - 1`.
    pub fn matrix(&self, degree: usize) -> &[Vec<i64>] {
        &self.matrices[degree - 1]
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for i in 1..self.matrices.len() {
            let (a, b) = (&self.matrices[i - 1], &self.matrices[i]);
            for row in a {
                for c in 0..self.dims[i + 1] {
                    let s: i64 = row.iter().enumerate().map(|(k, &x)| x * b[k][c]).sum();
                    if s != 0 {
                        return Err(Error::NonZeroSquare(i));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn frame(complex: &FreeComplex) -> Frame {
    let dims = complex.ranks();
    let matrices = (1..=complex.length())
        .map(|deg| {
            let mut m = vec![vec![0i64; dims[deg]]; dims[deg - 1]];
            for e in complex.differential(deg) {
                m[e.row][e.col] += i64::from(e.sign);
            }
            m
        })
        .collect();
    Frame { dims, matrices }
}

/// Graph read off a length-two frame: one vertex per degree-1 basis element,
/// one edge per degree-2 basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameGraph {
    pub vertices: usize,
    /// `(row with -1, row with +1)` for each degree-2 column.
    pub edges: Vec<(usize, usize)>,
}

impl FrameGraph {
    pub fn is_tree(&self) -> bool {
        if self.edges.len() + 1 != self.vertices {
            return false;
        }
        let mut uf = super::labeled::UnionFind::new(self.vertices);
        self.edges.iter().all(|&(a, b)| uf.union(a, b))
    }
}

pub fn frame_to_graph(frame: &Frame) -> Result<FrameGraph> {
    let len = frame.matrices.len();
    if len == 0 || len > 2 {
        return Err(Error::FrameShape(format!("length {len}, expected 1 or 2")));
    }
    let vertices = frame.dims[1];
    let mut edges = Vec::new();
    if len == 2 {
        let m = &frame.matrices[1];
        for c in 0..frame.dims[2] {
            let col: Vec<(usize, i64)> = (0..vertices).map(|r| (r, m[r][c])).filter(|&(_, x)| x != 0).collect();
            match col.as_slice() {
                [(a, x), (b, y)] if x * y == -1 => {
                    edges.push(if *x < 0 { (*a, *b) } else { (*b, *a) });
                }
                _ => return Err(Error::FrameShape(format!("column {c} is not one +1 and one -1"))),
            }
        }
    }
    Ok(FrameGraph { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(n: usize, idx: &[usize]) -> Monomial {
        Monomial::from_mask(n, idx.iter().fold(0, |m, &i| m | 1 << (i - 1)))
    }

    fn koszul2() -> FreeComplex {
        let v = VariableSet::numbered("x", 2).unwrap();
        taylor(&MonomialIdeal::new(v, vec![sq(2, &[1]), sq(2, &[2])]).unwrap()).unwrap()
    }

    #[test]
    fn single_vertex() {
        let v = VariableSet::numbered("x", 2).unwrap();
        let m = sq(2, &[1, 2]);
        let f = taylor(&MonomialIdeal::new(v, vec![m.clone()]).unwrap()).unwrap();
        assert_eq!(f.ranks(), vec![1, 1]);
        assert_eq!(f.differential(1), &[Entry { row: 0, col: 0, sign: 1, monomial: m }]);
    }

    #[test]
    fn koszul_complex_of_two_variables() {
        let f = koszul2();
        assert_eq!(f.ranks(), vec![1, 2, 1]);
        assert_eq!(f.multidegrees(2), &[sq(2, &[1, 2])]);
        assert_eq!(f.dense_strings(2), vec![vec!["-x2".to_string()], vec!["x1".to_string()]]);
        f.check_square_zero().unwrap();
        let fr = frame(&f);
        assert_eq!(fr.matrix(1), &[vec![1, 1]]);
        assert_eq!(fr.matrix(2), &[vec![-1], vec![1]]);
        let g = frame_to_graph(&fr).unwrap();
        assert_eq!(g, FrameGraph { vertices: 2, edges: vec![(0, 1)] });
        assert!(g.is_tree());
    }

    #[test]
    fn taylor_ranks_are_binomial() {
        let v = VariableSet::numbered("x", 4).unwrap();
        let i = MonomialIdeal::new(v, vec![sq(4, &[1, 2]), sq(4, &[2, 3]), sq(4, &[3, 4]), sq(4, &[1, 4])]).unwrap();
        let t = taylor(&i).unwrap();
        assert_eq!(t.ranks(), vec![1, 4, 6, 4, 1]);
        t.check_square_zero().unwrap();
        frame(&t).check_square_zero().unwrap();
    }

    #[test]
    fn square_zero_catches_a_flipped_sign() {
        let f = koszul2();
        let mut diffs = f.differentials().to_vec();
        diffs[1][0].sign = -diffs[1][0].sign;
        let broken = FreeComplex::new(f.vars().clone(), f.modules().to_vec(), diffs).unwrap();
        assert_eq!(broken.check_square_zero(), Err(Error::NonZeroSquare(1)));
    }

    #[test]
    fn inhomogeneous_entries_are_rejected() {
        let f = koszul2();
        let mut diffs = f.differentials().to_vec();
        diffs[1][0].monomial = sq(2, &[1]);
        assert!(FreeComplex::new(f.vars().clone(), f.modules().to_vec(), diffs).is_err());
    }

    #[test]
    fn frame_to_graph_rejects_triangles() {
        let v = VariableSet::numbered("x", 3).unwrap();
        let i = MonomialIdeal::new(v, vec![sq(3, &[1]), sq(3, &[2]), sq(3, &[3])]).unwrap();
        let fr = frame(&taylor(&i).unwrap());
        assert!(matches!(frame_to_graph(&fr), Err(Error::FrameShape(_))));
    }
}
