//! Stanley-Reisner correspondence and Alexander duality, always relative to
//! the stored vertex universe.

use crate::bits::{self, Mask};
use crate::complex::{SimplicialComplex, VERTEX_GUARD};
use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialIdeal};

fn guard(n: usize) -> Result<()> {
    if n > VERTEX_GUARD {
        Err(Error::Guard { what: "vertex count", got: n, limit: VERTEX_GUARD })
    } else {
        Ok(())
    }
}

/// Minimal non-faces, sorted by size and then lexicographically.
pub fn minimal_non_faces(d: &SimplicialComplex) -> Result<Vec<Mask>> {
    let n = d.vertices().len();
    guard(n)?;
    let mut out: Vec<Mask> = (0..n).map(|v| 1 << v).filter(|&s| !d.contains_face(s)).collect();
    // Every other minimal non-face is a face plus one vertex.
    for f in d.faces()? {
        for v in bits::ones(d.vertices().full_mask() & !f) {
            let tau = f | 1 << v;
            if !d.contains_face(tau) && bits::ones(tau).all(|u| d.contains_face(tau & !(1 << u))) {
                out.push(tau);
            }
        }
    }
    out.sort_by(|a, b| a.count_ones().cmp(&b.count_ones()).then(bits::lex_cmp(*a, *b)));
    out.dedup();
    Ok(out)
}

/// The Stanley-Reisner ideal, or `None` for the full simplex (zero ideal).
pub fn sr_ideal(d: &SimplicialComplex) -> Result<Option<MonomialIdeal>> {
    let non_faces = minimal_non_faces(d)?;
    if non_faces.is_empty() {
        return Ok(None);
    }
    let n = d.vertices().len();
    let gens = non_faces.into_iter().map(|m| Monomial::from_mask(n, m)).collect();
    MonomialIdeal::new(d.vertices().clone(), gens).map(Some)
}

/// The Stanley-Reisner complex. It has no facets when every variable lies in the ideal.
pub fn sr_complex(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    ideal.require_squarefree()?;
    let vars = ideal.vars();
    let n = vars.len();
    guard(n)?;
    let supports = ideal.supports();
    let full = vars.full_mask();
    let is_face = |t: Mask| !supports.iter().any(|&s| bits::is_subset(s, t));
    let mut facets: Vec<Mask> = (1..=full)
        .filter(|&t| is_face(t) && bits::ones(full & !t).all(|v| !is_face(t | 1 << v)))
        .collect();
    facets.sort_by(|a, b| bits::lex_cmp(*a, *b));
    SimplicialComplex::new(vars.clone(), facets)
}

/// `{V \ tau : tau not a face}`, or `None` for the full simplex, whose dual is void.
pub fn alexander_dual(d: &SimplicialComplex) -> Result<Option<SimplicialComplex>> {
    if d.is_full_simplex() {
        return Ok(None);
    }
    let full = d.vertices().full_mask();
    // Maximal faces of the dual are complements of minimal non-faces.
    let mut facets: Vec<Mask> =
        minimal_non_faces(d)?.into_iter().map(|t| full & !t).filter(|&f| f != 0).collect();
    facets.sort_by(|a, b| bits::lex_cmp(*a, *b));
    SimplicialComplex::new(d.vertices().clone(), facets).map(Some)
}

/// Facets of the Stanley-Reisner complex of the Alexander dual of `ideal`:
/// facet `i` is the set of variables not dividing generator `i`.
pub fn dual_facets(ideal: &MonomialIdeal) -> Result<SimplicialComplex> {
    ideal.require_squarefree()?;
    let full = ideal.vars().full_mask();
    let facets = ideal
        .generators()
        .iter()
        .map(|g| match full & !g.support() {
            0 => Err(Error::EmptyDualFacet(ideal.fmt_mono(g))),
            f => Ok(f),
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialComplex::new(ideal.vars().clone(), facets)
}

/// Minimal generators of the Stanley-Reisner ideal of the Alexander dual:
/// generator `i` is the product of the variables outside facet `i`.
pub fn dual_generators(d: &SimplicialComplex) -> Result<MonomialIdeal> {
    let full = d.vertices().full_mask();
    let n = d.vertices().len();
    let gens = d
        .facets()
        .iter()
        .map(|&f| {
            if f == full {
                Err(Error::FullFacet(d.format_facet(f)))
            } else {
                Ok(Monomial::from_mask(n, full & !f))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(d.vertices().clone(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::VariableSet;

    fn set(idx: &[usize]) -> Mask {
        idx.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }

    fn ideal(n: usize, gens: &[&[usize]]) -> MonomialIdeal {
        let v = VariableSet::numbered("x", n).unwrap();
        MonomialIdeal::new(v, gens.iter().map(|g| Monomial::from_mask(n, set(g))).collect()).unwrap()
    }

    fn hollow_triangle() -> SimplicialComplex {
        let v = VariableSet::new(["a", "b", "c"]).unwrap();
        SimplicialComplex::from_names(v, &[vec!["a", "b"], vec!["b", "c"], vec!["c", "a"]]).unwrap()
    }

    /// Straight from the definition: complements of every non-face.
    fn dual_by_definition(d: &SimplicialComplex) -> SimplicialComplex {
        let full = d.vertices().full_mask();
        let faces = (1..=full).filter(|&t| !d.contains_face(t)).map(|t| full & !t);
        SimplicialComplex::generated_by(d.vertices().clone(), faces).unwrap()
    }

    #[test]
    fn sr_ideal_examples() {
        let v = VariableSet::numbered("x", 2).unwrap();
        let pts = SimplicialComplex::new(v.clone(), vec![0b01, 0b10]).unwrap();
        assert_eq!(sr_ideal(&pts).unwrap().unwrap().to_string(), "(x1*x2)");
        assert_eq!(sr_ideal(&hollow_triangle()).unwrap().unwrap().to_string(), "(a*b*c)");
        assert_eq!(sr_ideal(&SimplicialComplex::simplex(v)).unwrap(), None);
    }

    #[test]
    fn sr_complex_examples() {
        let i = ideal(2, &[&[1, 2]]);
        assert_eq!(sr_complex(&i).unwrap().facets(), &[0b01, 0b10]);
        let maximal = ideal(2, &[&[1], &[2]]);
        assert!(sr_complex(&maximal).unwrap().is_empty());
        let example = ideal(6, &[&[1, 3, 6], &[1, 4, 6], &[1, 2, 4], &[4, 5, 6]]);
        assert!(sr_ideal(&sr_complex(&example).unwrap()).unwrap().unwrap().same_ideal(&example));
    }

    #[test]
    fn alexander_dual_examples() {
        // The boundary of a triangle has the single non-face {a,b,c}; its dual is
        // the complex whose only face is empty.
        let h = hollow_triangle();
        let d = alexander_dual(&h).unwrap().unwrap();
        assert!(d.is_empty());
        assert_eq!(d, dual_by_definition(&h));
        assert_eq!(alexander_dual(&d).unwrap().unwrap(), h);

        let v = VariableSet::numbered("x", 2).unwrap();
        let pts = SimplicialComplex::new(v.clone(), vec![0b01, 0b10]).unwrap();
        let d = alexander_dual(&pts).unwrap().unwrap();
        assert_eq!(d, dual_by_definition(&pts));
        assert!(d.is_empty());

        let path = SimplicialComplex::new(VariableSet::numbered("x", 3).unwrap(), vec![0b011, 0b110]).unwrap();
        let d = alexander_dual(&path).unwrap().unwrap();
        assert_eq!(d, dual_by_definition(&path));
        assert_eq!(d.canonical_facets(), vec![0b010]);
        assert_eq!(alexander_dual(&SimplicialComplex::simplex(v)).unwrap(), None);
    }

    #[test]
    fn dual_facets_examples() {
        let example = ideal(6, &[&[1, 3, 6], &[1, 4, 6], &[1, 2, 4], &[4, 5, 6]]);
        let d = dual_facets(&example).unwrap();
        assert_eq!(d.facets(), &[set(&[2, 4, 5]), set(&[2, 3, 5]), set(&[3, 5, 6]), set(&[1, 2, 3])]);

        let star = ideal(5, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]);
        let d = dual_facets(&star).unwrap();
        assert_eq!(d.facets(), &[set(&[4, 5]), set(&[3, 5]), set(&[2, 5]), set(&[1, 5])]);
        assert_eq!(dual_generators(&d).unwrap(), star);

        let principal = ideal(2, &[&[1]]);
        assert_eq!(dual_facets(&principal).unwrap().facets(), &[0b10]);

        let everything = ideal(2, &[&[1, 2]]);
        assert!(matches!(dual_facets(&everything), Err(Error::EmptyDualFacet(_))));
    }

    #[test]
    fn dual_generators_examples() {
        let v = VariableSet::numbered("x", 2).unwrap();
        let d = SimplicialComplex::new(v.clone(), vec![0b01]).unwrap();
        assert_eq!(dual_generators(&d).unwrap().to_string(), "(x2)");
        let full = SimplicialComplex::simplex(v);
        assert!(matches!(dual_generators(&full), Err(Error::FullFacet(_))));
    }

    #[test]
    fn dual_generators_match_definitional_composite() {
        let path = SimplicialComplex::new(VariableSet::numbered("x", 4).unwrap(), vec![0b0011, 0b0110, 0b1100]).unwrap();
        let fast = dual_generators(&path).unwrap();
        let slow = sr_ideal(&alexander_dual(&path).unwrap().unwrap()).unwrap().unwrap();
        assert!(fast.same_ideal(&slow));
    }
}
