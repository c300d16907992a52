//! Exact monomial arithmetic over a named variable set.
//!
//! Monomials are dense exponent vectors. Ideals keep their generators in the
//! order they were given: downstream, generator `i` becomes facet `i` of the
//! dual complex and vertex `i` of any tree built from it.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::{self, Mask};
use crate::error::{Error, Result};

/// Ordered list of distinct variable names.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VariableSet {
    names: Arc<[String]>,
}

impl VariableSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::NoVariables);
        }
        if names.len() > bits::MAX_BITS {
            return Err(Error::TooManyVariables { max: bits::MAX_BITS, got: names.len() });
        }
        let mut seen = HashSet::new();
        for n in &names {
            let ok = !n.is_empty() && n.chars().all(|c| !c.is_whitespace() && !",*^".contains(c));
            if !ok || !seen.insert(n.as_str()) {
                return Err(Error::BadVariableName(n.clone()));
            }
        }
        Ok(Self { names: names.into() })
    }

    /// `prefix1, ..., prefixN`.
    pub fn numbered(prefix: &str, n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("{prefix}{i}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Mask of the named variables.
    pub fn mask_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Mask> {
        names.iter().try_fold(0, |acc, n| {
            let n = n.as_ref();
            self.index_of(n)
                .map(|i| acc | 1 << i)
                .ok_or_else(|| Error::UnknownVertex(n.to_string()))
        })
    }

    pub fn full_mask(&self) -> Mask {
        bits::full(self.len())
    }

    /// The sub-list of variables selected by `mask`, in their original order.
    pub fn restrict(&self, mask: Mask) -> Result<Self> {
        Self::new(bits::ones(mask & self.full_mask()).map(|i| self.names[i].clone()))
    }

    pub fn format_set(&self, mask: Mask) -> String {
        let inner: Vec<&str> = bits::ones(mask).map(|i| self.name(i)).collect();
        format!("{{{}}}", inner.join(","))
    }
}

impl fmt::Debug for VariableSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// A monomial `x^a` stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn one(n: usize) -> Self {
        Self { exps: vec![0; n] }
    }

    /// Squarefree monomial with support `mask`.
    pub fn from_mask(n: usize, mask: Mask) -> Self {
        Self { exps: (0..n).map(|i| ((mask >> i) & 1) as u32).collect() }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn support(&self) -> Mask {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    // The unchecked methods below assume equal lengths; the free functions
    // `divides`, `lcm` and `gcd` check it.

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect() }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.len(), other.len());
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect() }
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        other.divides(self).then(|| Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect() }
    }

    /// Keep only the coordinates selected by `mask`.
    pub fn project(&self, mask: Mask) -> Monomial {
        Monomial { exps: bits::ones(mask).map(|i| self.exps[i]).collect() }
    }

    pub fn display<'a>(&'a self, vars: &'a VariableSet) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, vars }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    vars: &'a VariableSet,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.vars.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

fn same_len(a: &Monomial, b: &Monomial) -> Result<()> {
    if a.len() == b.len() {
        Ok(())
    } else {
        Err(Error::VariableMismatch { left: a.len(), right: b.len() })
    }
}

pub fn divides(a: &Monomial, b: &Monomial) -> Result<bool> {
    same_len(a, b)?;
    Ok(a.divides(b))
}

pub fn lcm(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    same_len(a, b)?;
    Ok(a.lcm(b))
}

pub fn gcd(a: &Monomial, b: &Monomial) -> Result<Monomial> {
    same_len(a, b)?;
    Ok(a.gcd(b))
}

/// A monomial ideal together with an ordered minimal generating set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    vars: VariableSet,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Checks that `gens` is already a minimal generating set.
    pub fn new(vars: VariableSet, gens: Vec<Monomial>) -> Result<Self> {
        check_generators(&vars, &gens)?;
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                if i != j && a.divides(b) {
                    return Err(Error::NotMinimal(
                        a.display(&vars).to_string(),
                        b.display(&vars).to_string(),
                    ));
                }
            }
        }
        Ok(Self { vars, gens })
    }

    pub fn vars(&self) -> &VariableSet {
        &self.vars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn require_squarefree(&self) -> Result<()> {
        match self.gens.iter().find(|g| !g.is_squarefree()) {
            Some(g) => Err(Error::NotSquarefree(self.fmt_mono(g))),
            None => Ok(()),
        }
    }

    pub fn is_principal(&self) -> bool {
        self.gens.len() == 1
    }

    /// Order-insensitive equality of generating sets over the same variables.
    pub fn same_ideal(&self, other: &MonomialIdeal) -> bool {
        if self.vars != other.vars || self.gens.len() != other.gens.len() {
            return false;
        }
        let a: HashSet<&Monomial> = self.gens.iter().collect();
        other.gens.iter().all(|g| a.contains(g))
    }

    /// True iff `m` lies in the ideal.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn fmt_mono(&self, m: &Monomial) -> String {
        m.display(&self.vars).to_string()
    }

    /// Supports of the generators; only meaningful for squarefree ideals.
    pub fn supports(&self) -> Vec<Mask> {
        self.gens.iter().map(Monomial::support).collect()
    }

    /// The same generators, reordered.
    pub fn permuted(&self, order: &[usize]) -> MonomialIdeal {
        MonomialIdeal { vars: self.vars.clone(), gens: order.iter().map(|&i| self.gens[i].clone()).collect() }
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| self.fmt_mono(g)).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {:?}", self.vars)
    }
}

fn check_generators(vars: &VariableSet, gens: &[Monomial]) -> Result<()> {
    if gens.is_empty() {
        return Err(Error::NoGenerators);
    }
    for g in gens {
        if g.len() != vars.len() {
            return Err(Error::VariableMismatch { left: g.len(), right: vars.len() });
        }
        if g.is_one() {
            return Err(Error::UnitGenerator(g.display(vars).to_string()));
        }
    }
    Ok(())
}

/// Keep the divisibility-minimal generators, dropping duplicates and
/// preserving the relative order of what remains.
pub fn minimalize(vars: VariableSet, gens: Vec<Monomial>) -> Result<MonomialIdeal> {
    check_generators(&vars, &gens)?;
    let keep: Vec<bool> = gens
        .iter()
        .enumerate()
        .map(|(i, g)| {
            !gens
                .iter()
                .enumerate()
                .any(|(j, h)| j != i && h.divides(g) && (h != g || j < i))
        })
        .collect();
    let gens = gens.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect();
    Ok(MonomialIdeal { vars, gens })
}

/// Where a polarized variable came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolarVariable {
    pub original: usize,
    /// 1-based copy index.
    pub copy: u32,
}

/// Standard polarization: `x^a` becomes `x_1 * ... * x_a` for fresh variables
/// `x_1, x_2, ...`. Squarefree ideals come back unchanged.
pub fn polarize(ideal: &MonomialIdeal) -> Result<(MonomialIdeal, Vec<PolarVariable>)> {
    let n = ideal.vars.len();
    if ideal.is_squarefree() {
        let map = (0..n).map(|i| PolarVariable { original: i, copy: 1 }).collect();
        return Ok((ideal.clone(), map));
    }
    let max_exp: Vec<u32> = (0..n)
        .map(|i| ideal.gens.iter().map(|g| g.exps[i]).max().unwrap_or(0))
        .collect();
    let mut names = Vec::new();
    let mut map = Vec::new();
    let mut offset = Vec::with_capacity(n);
    for (i, &e) in max_exp.iter().enumerate() {
        offset.push(map.len());
        let name = ideal.vars.name(i);
        if e <= 1 {
            names.push(name.to_string());
            map.push(PolarVariable { original: i, copy: 1 });
        } else {
            for j in 1..=e {
                names.push(format!("{name}_{j}"));
                map.push(PolarVariable { original: i, copy: j });
            }
        }
    }
    let vars = VariableSet::new(names)?;
    let gens = ideal
        .gens
        .iter()
        .map(|g| {
            let mut exps = vec![0; vars.len()];
            for (i, &a) in g.exps.iter().enumerate() {
                for k in 0..a as usize {
                    exps[offset[i] + k] = 1;
                }
            }
            Monomial::new(exps)
        })
        .collect();
    // Polarization preserves divisibility between generators, so minimality carries over.
    Ok((MonomialIdeal::new(vars, gens)?, map))
}

/// Outcome of restricting an ideal to a subset of its variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Restriction {
    Ideal(MonomialIdeal),
    /// Some generator is supported entirely outside the subset.
    Unit,
}

impl Restriction {
    pub fn ideal(self) -> Option<MonomialIdeal> {
        match self {
            Restriction::Ideal(i) => Some(i),
            Restriction::Unit => None,
        }
    }
}

/// Set every variable outside `w` to 1: the generators become
/// `gcd(m_i, prod_{x in w} x)`, minimalized, over the variables of `w`.
pub fn restrict(ideal: &MonomialIdeal, w: Mask) -> Result<Restriction> {
    ideal.require_squarefree()?;
    let n = ideal.vars.len();
    if w == 0 {
        return Err(Error::EmptySubset);
    }
    if !bits::is_subset(w, bits::full(n)) {
        let bad = bits::ones(w).find(|&i| i >= n).unwrap_or(n);
        return Err(Error::UnknownVertex(format!("#{bad}")));
    }
    let projected: Vec<Monomial> = ideal.gens.iter().map(|g| g.project(w)).collect();
    if projected.iter().any(Monomial::is_one) {
        return Ok(Restriction::Unit);
    }
    Ok(Restriction::Ideal(minimalize(ideal.vars.restrict(w)?, projected)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars6() -> VariableSet {
        VariableSet::numbered("x", 6).unwrap()
    }

    fn sq(n: usize, idx: &[usize]) -> Monomial {
        Monomial::from_mask(n, idx.iter().fold(0, |m, &i| m | 1 << (i - 1)))
    }

    fn example_ideal() -> MonomialIdeal {
        MonomialIdeal::new(
            vars6(),
            vec![sq(6, &[1, 3, 6]), sq(6, &[1, 4, 6]), sq(6, &[1, 2, 4]), sq(6, &[4, 5, 6])],
        )
        .unwrap()
    }

    #[test]
    fn divides_examples() {
        assert!(divides(&sq(6, &[1, 3, 6]), &sq(6, &[1, 3, 4, 6])).unwrap());
        let m = sq(6, &[2, 5]);
        assert!(divides(&m, &m).unwrap());
        assert!(!divides(&sq(6, &[2]), &sq(6, &[1, 3, 6])).unwrap());
        assert!(matches!(
            divides(&sq(6, &[2]), &sq(5, &[1])),
            Err(Error::VariableMismatch { .. })
        ));
    }

    #[test]
    fn lcm_and_gcd_examples() {
        assert_eq!(lcm(&sq(6, &[1, 2, 4]), &sq(6, &[1, 4, 6])).unwrap(), sq(6, &[1, 2, 4, 6]));
        assert_eq!(lcm(&sq(6, &[1, 2, 3]), &sq(6, &[2, 3, 4])).unwrap(), sq(6, &[1, 2, 3, 4]));
        let m = sq(6, &[3, 5]);
        assert_eq!(lcm(&m, &Monomial::one(6)).unwrap(), m);
        assert_eq!(gcd(&sq(6, &[1, 3, 6]), &sq(6, &[1, 2, 3, 4])).unwrap(), sq(6, &[1, 3]));
        assert_eq!(gcd(&m, &m).unwrap(), m);
        assert!(gcd(&sq(6, &[1]), &sq(6, &[2])).unwrap().is_one());
        assert!(lcm(&sq(6, &[1]), &sq(3, &[2])).is_err());
    }

    #[test]
    fn minimalize_examples() {
        let v = VariableSet::numbered("x", 2).unwrap();
        let i = minimalize(v.clone(), vec![sq(2, &[1]), sq(2, &[1, 2])]).unwrap();
        assert_eq!(i.generators(), &[sq(2, &[1])]);
        let i = minimalize(v.clone(), vec![sq(2, &[1, 2]), sq(2, &[1, 2])]).unwrap();
        assert_eq!(i.generators(), &[sq(2, &[1, 2])]);
        let p = example_ideal();
        let again = minimalize(vars6(), p.generators().to_vec()).unwrap();
        assert_eq!(again, p);
        assert_eq!(minimalize(v.clone(), vec![]), Err(Error::NoGenerators));
        assert!(matches!(minimalize(v, vec![Monomial::one(2)]), Err(Error::UnitGenerator(_))));
    }

    #[test]
    fn new_rejects_non_antichain() {
        let v = VariableSet::numbered("x", 2).unwrap();
        assert!(matches!(
            MonomialIdeal::new(v, vec![sq(2, &[1, 2]), sq(2, &[1])]),
            Err(Error::NotMinimal(..))
        ));
    }

    #[test]
    fn same_ideal_ignores_order() {
        let p = example_ideal();
        let q = p.permuted(&[3, 2, 1, 0]);
        assert_ne!(p, q);
        assert!(p.same_ideal(&q));
    }

    #[test]
    fn polarize_examples() {
        let v = VariableSet::new(["x", "y"]).unwrap();
        let i = MonomialIdeal::new(v, vec![Monomial::new(vec![2, 1]), Monomial::new(vec![0, 2])]).unwrap();
        let (p, map) = polarize(&i).unwrap();
        assert_eq!(p.vars().names(), &["x_1", "x_2", "y_1", "y_2"]);
        assert_eq!(p.to_string(), "(x_1*x_2*y_1, y_1*y_2)");
        assert_eq!(map[1], PolarVariable { original: 0, copy: 2 });
        assert_eq!(map[3], PolarVariable { original: 1, copy: 2 });

        let v = VariableSet::new(["x"]).unwrap();
        let cube = MonomialIdeal::new(v, vec![Monomial::new(vec![3])]).unwrap();
        let (p, _) = polarize(&cube).unwrap();
        assert_eq!(p.to_string(), "(x_1*x_2*x_3)");

        let (same, map) = polarize(&example_ideal()).unwrap();
        assert_eq!(same, example_ideal());
        assert!(map.iter().enumerate().all(|(i, p)| p.original == i && p.copy == 1));
    }

    #[test]
    fn restrict_examples() {
        let p = example_ideal();
        let r = restrict(&p, 0b1111).unwrap().ideal().unwrap();
        assert_eq!(r.vars().names(), &["x1", "x2", "x3", "x4"]);
        assert_eq!(r.to_string(), "(x1*x3, x4)");
        assert_eq!(restrict(&p, p.vars().full_mask()).unwrap(), Restriction::Ideal(p.clone()));

        let v = VariableSet::numbered("x", 3).unwrap();
        let i = MonomialIdeal::new(v, vec![sq(3, &[1, 2])]).unwrap();
        assert_eq!(restrict(&i, 0b100).unwrap(), Restriction::Unit);
        assert_eq!(restrict(&i, 0), Err(Error::EmptySubset));
    }
}
