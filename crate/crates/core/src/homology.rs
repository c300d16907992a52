//! Exact linear algebra over the rationals and the homological ground truth
//! every structural claim is checked against.
//!
//! Ranks are computed by fraction-free (Bareiss) elimination. Boundary
//! matrices first try an `i64` pass with checked arithmetic and drop to
//! big integers when an intermediate minor overflows.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bits::{self, Mask};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::resolution::{Frame, LabeledComplex};

/// Largest number of faces fed to a single homology computation.
pub const FACE_GUARD: usize = 1 << 16;
/// Largest generator count accepted by the Betti oracle.
pub const BETTI_GUARD: usize = 12;

/// Dense matrix of normalized rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged integer matrix");
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigRational::from_integer(v.into()));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }
}

/// Rank over the rationals.
pub fn rank_exact(m: &ExactMatrix) -> usize {
    // Clearing denominators row by row does not change the rank.
    let rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|r| {
            let row = &m.entries[r * m.cols..(r + 1) * m.cols];
            let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| x.numer() * (&den / x.denom())).collect()
        })
        .collect();
    bareiss_rank_big(rows, m.cols)
}

/// Rank of an integer matrix given as dense rows.
pub fn rank_integer(rows: &[Vec<i64>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    match bareiss_rank_i64(rows.to_vec(), cols) {
        Some(r) => r,
        None => bareiss_rank_big(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect(), cols),
    }
}

fn bareiss_rank_i64(mut a: Vec<Vec<i64>>, cols: usize) -> Option<usize> {
    let n = a.len();
    let mut prev: i128 = 1;
    let mut rank = 0;
    for c in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| a[i][c] != 0) else { continue };
        a.swap(rank, p);
        let piv = a[rank][c] as i128;
        for i in rank + 1..n {
            let lead = a[i][c] as i128;
            for j in c + 1..cols {
                let num = piv.checked_mul(a[i][j] as i128)?.checked_sub(lead.checked_mul(a[rank][j] as i128)?)?;
                a[i][j] = i64::try_from(num / prev).ok()?;
            }
            a[i][c] = 0;
        }
        prev = piv;
        rank += 1;
    }
    Some(rank)
}

fn bareiss_rank_big(mut a: Vec<Vec<BigInt>>, cols: usize) -> usize {
    let n = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        let piv = a[rank][c].clone();
        for i in rank + 1..n {
            let lead = a[i][c].clone();
            for j in c + 1..cols {
                let num = &piv * &a[i][j] - &lead * &a[rank][j];
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = piv;
        rank += 1;
    }
    rank
}

/// Reduced homology dimensions. Index 0 holds degree -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedHomology {
    dims: Vec<usize>,
}

impl ReducedHomology {
    pub fn dim(&self, degree: isize) -> usize {
        usize::try_from(degree + 1).ok().and_then(|i| self.dims.get(i).copied()).unwrap_or(0)
    }

    /// `(degree, dim)` for every degree from -1 up to the top face dimension.
    pub fn iter(&self) -> impl Iterator<Item = (isize, usize)> + '_ {
        self.dims.iter().enumerate().map(|(i, &d)| (i as isize - 1, d))
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.iter().map(|(k, d)| if k.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) }).sum()
    }
}

/// Reduced homology of the complex on the nonempty `faces` (which must be
/// closed under taking nonempty subsets), with the empty face in degree -1.
/// No faces at all gives `H_{-1} = 1`.
pub fn reduced_homology_of_faces(faces: &[Mask]) -> Result<ReducedHomology> {
    if faces.len() > FACE_GUARD {
        return Err(Error::Guard { what: "face count", got: faces.len(), limit: FACE_GUARD });
    }
    let top = faces.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0);
    // by_size[k] lists the faces with k vertices; by_size[0] is the empty face.
    let mut by_size: Vec<Vec<Mask>> = vec![Vec::new(); top + 1];
    by_size[0].push(0);
    for &f in faces {
        by_size[f.count_ones() as usize].push(f);
    }
    let index: Vec<HashMap<Mask, usize>> =
        by_size.iter().map(|fs| fs.iter().enumerate().map(|(i, &f)| (f, i)).collect()).collect();
    // ranks[k] = rank of the boundary from size k to size k-1, k >= 1.
    let mut ranks = vec![0usize; top + 2];
    for k in 1..=top {
        let rows = by_size[k - 1].len();
        let mut m = vec![vec![0i64; by_size[k].len()]; rows];
        for (c, &f) in by_size[k].iter().enumerate() {
            for (pos, v) in bits::ones(f).enumerate() {
                let r = index[k - 1][&(f & !(1 << v))];
                m[r][c] = if pos % 2 == 0 { 1 } else { -1 };
            }
        }
        ranks[k] = rank_integer(&m);
    }
    let dims = (0..=top).map(|k| by_size[k].len() - ranks[k] - ranks[k + 1]).collect();
    Ok(ReducedHomology { dims })
}

pub fn reduced_homology_dims(d: &crate::complex::SimplicialComplex) -> Result<ReducedHomology> {
    reduced_homology_of_faces(&d.faces()?)
}

/// True iff the frame has no homology in any positive degree.
pub fn is_exact_frame(frame: &Frame) -> Result<bool> {
    frame.check_square_zero()?;
    let dims = frame.dims();
    let mats = frame.matrices();
    let rank: Vec<usize> = mats.iter().map(|m| rank_integer(m)).collect();
    // rank_of(i) is the rank of d_i : degree i -> degree i-1.
    let rank_of = |i: usize| if i >= 1 && i <= rank.len() { rank[i - 1] } else { 0 };
    Ok((1..dims.len()).all(|i| dims[i] == rank_of(i) + rank_of(i + 1)))
}

/// Multigraded Betti numbers of `S/I`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, m: &Monomial) -> usize {
        self.entries.get(&(i, m.clone())).copied().unwrap_or(0)
    }

    pub fn insert(&mut self, i: usize, m: Monomial, beta: usize) {
        if beta > 0 {
            *self.entries.entry((i, m)).or_default() += beta;
        }
    }

    pub fn graded(&self) -> impl Iterator<Item = (usize, &Monomial, usize)> {
        self.entries.iter().map(|((i, m), &b)| (*i, m, b))
    }

    /// Total Betti numbers `beta_0, ..., beta_pd`.
    pub fn totals(&self) -> Vec<usize> {
        let len = self.entries.keys().map(|(i, _)| i + 1).max().unwrap_or(0);
        let mut t = vec![0; len];
        for ((i, _), b) in &self.entries {
            t[*i] += b;
        }
        t
    }

    /// Projective dimension of `S/I`.
    pub fn projective_dimension(&self) -> usize {
        self.totals().len().saturating_sub(1)
    }
}

/// The lcm of every generator subset, indexed by subset bitmask.
pub(crate) fn subset_lcms(gens: &[Monomial], n: usize) -> Vec<Monomial> {
    let q = gens.len();
    let mut table = Vec::with_capacity(1 << q);
    table.push(Monomial::one(n));
    for s in 1usize..1 << q {
        let low = s.trailing_zeros() as usize;
        let rest = table[s & (s - 1)].lcm(&gens[low]);
        table.push(rest);
    }
    table
}

/// `beta_{i,m}(S/I) = dim H~_{i-2}(T_{<m})` where `T_{<m}` is the set of
/// generator subsets whose lcm strictly divides `m`.
pub fn betti(ideal: &MonomialIdeal) -> Result<BettiTable> {
    let q = ideal.len();
    if q > BETTI_GUARD {
        return Err(Error::Guard { what: "generator count", got: q, limit: BETTI_GUARD });
    }
    let gens = ideal.generators();
    let n = ideal.vars().len();
    let table = subset_lcms(gens, n);
    let mut lattice: Vec<&Monomial> = table[1..].iter().collect();
    lattice.sort();
    lattice.dedup();
    let graded: Vec<(Monomial, ReducedHomology)> = lattice
        .into_par_iter()
        .map(|m| {
            let below = gens.iter().enumerate().filter(|(_, g)| g.divides(m)).fold(0usize, |a, (j, _)| a | 1 << j);
            let faces: Vec<Mask> = bits::nonempty_submasks(below as Mask)
                .filter(|&a| table[a as usize] != *m)
                .collect();
            reduced_homology_of_faces(&faces).map(|h| (m.clone(), h))
        })
        .collect::<Result<_>>()?;
    let mut out = BettiTable::default();
    out.insert(0, Monomial::one(n), 1);
    for (m, h) in graded {
        for (deg, dim) in h.iter() {
            out.insert((deg + 2) as usize, m.clone(), dim);
        }
    }
    Ok(out)
}

/// Projective dimension of `S/I`.
pub fn pd_quotient(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(betti(ideal)?.projective_dimension())
}

/// Projective dimension of `I` itself, one less than that of `S/I`.
pub fn pd(ideal: &MonomialIdeal) -> Result<usize> {
    Ok(pd_quotient(ideal)? - 1)
}

/// The homogenized complex of `labeled` resolves `S/I` iff for every `m` in
/// the lcm lattice the faces whose labels divide `m` form an acyclic complex.
pub fn is_resolution(labeled: &LabeledComplex) -> Result<bool> {
    let faces = labeled.complex().faces()?;
    let labels: Vec<Monomial> = faces.iter().map(|&f| labeled.face_label(f)).collect();
    for m in labeled.lcm_lattice()? {
        let below: Vec<Mask> =
            faces.iter().zip(&labels).filter(|(_, l)| l.divides(&m)).map(|(&f, _)| f).collect();
        if !reduced_homology_of_faces(&below)?.is_acyclic() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exact `rank` of a rational matrix given as `(numerator, denominator)` pairs.
pub fn rank_of_fractions(rows: &[Vec<(i64, i64)>]) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut m = ExactMatrix::zeros(rows.len(), cols);
    for (i, row) in rows.iter().enumerate() {
        for (j, &(n, d)) in row.iter().enumerate() {
            m.set(i, j, BigRational::new(n.into(), d.into()));
        }
    }
    rank_exact(&m)
}
