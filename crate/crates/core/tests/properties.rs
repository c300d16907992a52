use proptest::prelude::*;

use quasitree::bits::{self, Mask};
use quasitree::duality::{alexander_dual, dual_facets, dual_generators};
use quasitree::homology::{rank_exact, rank_integer, ExactMatrix};
use quasitree::io::{format_ideal, parse_ideal};
use quasitree::monomial::{minimalize, polarize, restrict};
use quasitree::resolution::{homogenize, taylor, LabeledComplex};
use quasitree::{Error, Monomial, MonomialIdeal, Restriction, SimplicialComplex, VariableSet};

fn monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0..=max_exp, n).prop_map(Monomial::new)
}

fn squarefree_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (2usize..=6).prop_flat_map(|n| {
        prop::collection::vec(1..(1u64 << n), 1..=5).prop_map(move |masks| {
            let gens = masks.into_iter().map(|m| Monomial::from_mask(n, m)).collect();
            minimalize(VariableSet::numbered("x", n).unwrap(), gens).unwrap()
        })
    })
}

fn any_ideal() -> impl Strategy<Value = MonomialIdeal> {
    (1usize..=3).prop_flat_map(|n| {
        prop::collection::vec(monomial(n, 2), 1..=4).prop_filter_map("unit generator", move |gens| {
            if gens.iter().any(Monomial::is_one) {
                return None;
            }
            Some(minimalize(VariableSet::new(["x", "y", "z"].into_iter().take(n)).unwrap(), gens).unwrap())
        })
    })
}

fn complex() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=6).prop_flat_map(|n| {
        prop::collection::vec(1..(1u64 << n), 1..=6).prop_map(move |faces| {
            SimplicialComplex::generated_by(VariableSet::numbered("x", n).unwrap(), faces).unwrap()
        })
    })
}

/// Re-index the bits of `w` (a subset of `outer`) by their position in `outer`.
fn compress(w: Mask, outer: Mask) -> Mask {
    bits::ones(outer).enumerate().filter(|&(_, v)| w >> v & 1 == 1).fold(0, |a, (i, _)| a | 1 << i)
}

fn same(a: &Restriction, b: &Restriction) -> bool {
    match (a, b) {
        (Restriction::Unit, Restriction::Unit) => true,
        (Restriction::Ideal(x), Restriction::Ideal(y)) => x.vars() == y.vars() && x.same_ideal(y),
        _ => false,
    }
}

proptest! {
    #[test]
    fn lcm_and_gcd_laws(
        (a, b, c) in (1usize..=5).prop_flat_map(|n| (monomial(n, 3), monomial(n, 3), monomial(n, 3)))
    ) {
        prop_assert_eq!(a.lcm(&b), b.lcm(&a));
        prop_assert_eq!(a.gcd(&b), b.gcd(&a));
        prop_assert_eq!(a.lcm(&b).lcm(&c), a.lcm(&b.lcm(&c)));
        prop_assert_eq!(a.gcd(&b).gcd(&c), a.gcd(&b.gcd(&c)));
        prop_assert_eq!(a.lcm(&a.gcd(&b)), a.clone());
        prop_assert_eq!(a.gcd(&a.lcm(&b)), a.clone());
        prop_assert!(a.divides(&a.lcm(&b)) && a.gcd(&b).divides(&a));
        prop_assert_eq!(a.lcm(&b).degree() + a.gcd(&b).degree(), a.degree() + b.degree());
        prop_assert_eq!(a.lcm(&b).mul(&a.gcd(&b)), a.mul(&b));
    }

    #[test]
    fn minimalize_is_idempotent_and_keeps_the_ideal(
        (n, gens) in (1usize..=4).prop_flat_map(|n| (Just(n), prop::collection::vec(monomial(n, 2), 1..=6)))
    ) {
        prop_assume!(gens.iter().all(|g| !g.is_one()));
        let vars = VariableSet::numbered("x", n).unwrap();
        let i = minimalize(vars.clone(), gens.clone()).unwrap();
        prop_assert_eq!(&minimalize(vars, i.generators().to_vec()).unwrap(), &i);
        prop_assert!(gens.iter().all(|g| i.contains(g)));
        prop_assert!(i.generators().iter().all(|g| gens.contains(g)));
    }

    #[test]
    fn restriction_nests(i in squarefree_ideal(), w1 in 1u64..64, w2 in 1u64..64) {
        let full = i.vars().full_mask();
        let (w1, w2) = (w1 & full, w2 & w1 & full);
        prop_assume!(w2 != 0);
        let direct = restrict(&i, w2).unwrap();
        let nested = match restrict(&i, w1).unwrap() {
            Restriction::Unit => Restriction::Unit,
            Restriction::Ideal(j) => restrict(&j, compress(w2, w1)).unwrap(),
        };
        prop_assert!(same(&direct, &nested));
    }

    #[test]
    fn induced_subcomplexes_nest(d in complex(), w1 in 1u64..64, w2 in 1u64..64) {
        let full = d.vertices().full_mask();
        let (w1, w2) = (w1 & full, w2 & w1 & full);
        prop_assume!(w2 != 0);
        let direct = d.induced(w2).unwrap();
        let nested = d.induced(w1).unwrap().induced(compress(w2, w1)).unwrap();
        prop_assert_eq!(direct, nested);
    }

    #[test]
    fn restriction_is_dual_to_induced(i in squarefree_ideal(), w in 1u64..64) {
        let w = w & i.vars().full_mask();
        prop_assume!(w != 0);
        let Ok(d) = dual_facets(&i) else { return Ok(()) };
        let sub = d.induced(w).unwrap();
        match restrict(&i, w).unwrap() {
            Restriction::Unit => prop_assert!(sub.is_full_simplex()),
            // W avoiding every facet leaves (x_W), dual to the complex {∅}.
            Restriction::Ideal(j) => match dual_facets(&j) {
                Err(Error::EmptyDualFacet(_)) => prop_assert!(sub.is_empty()),
                other => prop_assert_eq!(other.unwrap(), sub),
            },
        }
    }

    #[test]
    fn dual_facets_and_generators_are_inverse(i in squarefree_ideal()) {
        let Ok(d) = dual_facets(&i) else { return Ok(()) };
        prop_assert_eq!(&dual_generators(&d).unwrap(), &i);
    }

    #[test]
    fn alexander_duality_is_an_involution(d in complex()) {
        if let Some(e) = alexander_dual(&d).unwrap() {
            prop_assert_eq!(alexander_dual(&e).unwrap(), Some(d));
        } else {
            prop_assert!(d.is_full_simplex());
        }
    }

    #[test]
    fn rank_is_transpose_invariant(
        rows in (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..=3, c), r)
        })
    ) {
        let m = ExactMatrix::from_integers(&rows);
        let r = rank_exact(&m);
        prop_assert_eq!(r, rank_exact(&m.transpose()));
        prop_assert_eq!(r, rank_integer(&rows));
    }

    #[test]
    fn homogenized_differentials_square_to_zero(i in squarefree_ideal()) {
        prop_assert!(taylor(&i).unwrap().check_square_zero().is_ok());
        let simplex = LabeledComplex::simplex(&i).unwrap();
        prop_assert!(homogenize(&simplex).unwrap().check_square_zero().is_ok());
    }

    #[test]
    fn simplex_on_random_labels_squares_to_zero(
        labels in prop::collection::vec(monomial(4, 2), 3)
    ) {
        let v = VariableSet::numbered("v", 3).unwrap();
        let lc = LabeledComplex::new(SimplicialComplex::simplex(v), VariableSet::numbered("x", 4).unwrap(), labels)
            .unwrap();
        prop_assert!(homogenize(&lc).unwrap().check_square_zero().is_ok());
    }

    #[test]
    fn polarization_is_squarefree(i in any_ideal()) {
        let (p, _) = polarize(&i).unwrap();
        prop_assert!(p.is_squarefree());
        prop_assert_eq!(p.len(), i.len());
    }

    #[test]
    fn ideal_text_round_trips(i in any_ideal()) {
        prop_assert_eq!(parse_ideal(&format_ideal(&i)).unwrap(), i);
    }
}
