//! Seeded generators for the randomized suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::error::Result;
use crate::monomial::{minimalize, Monomial, MonomialIdeal, VariableSet};

pub type SuiteRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SuiteRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A squarefree ideal on `2..=max_vars` variables from up to `max_gens`
/// random nonempty supports, minimalized.
pub fn squarefree_ideal<R: Rng>(rng: &mut R, max_vars: usize, max_gens: usize) -> Result<MonomialIdeal> {
    let n = rng.gen_range(2..=max_vars.max(2));
    let count = rng.gen_range(1..=max_gens.max(1));
    let gens = (0..count).map(|_| Monomial::from_mask(n, rng.gen_range(1..1u64 << n))).collect();
    minimalize(VariableSet::numbered("x", n)?, gens)
}

/// A non-squarefree ideal on `1..=max_vars` variables with exponents at most
/// `max_exp` and up to `max_gens` generators. Draws are repeated until the
/// minimalized ideal is not squarefree.
pub fn non_squarefree_ideal<R: Rng>(
    rng: &mut R,
    max_vars: usize,
    max_exp: u32,
    max_gens: usize,
) -> Result<MonomialIdeal> {
    assert!(max_exp >= 2, "exponent bound must allow a square");
    let names = ["x", "y", "z", "w", "u", "v"];
    loop {
        let n = rng.gen_range(1..=max_vars.clamp(1, names.len()));
        let count = rng.gen_range(1..=max_gens.max(1));
        let gens: Vec<Monomial> = (0..count)
            .map(|_| Monomial::new((0..n).map(|_| rng.gen_range(0..=max_exp)).collect()))
            .filter(|m| !m.is_one())
            .collect();
        if gens.is_empty() {
            continue;
        }
        let ideal = minimalize(VariableSet::new(names[..n].iter().copied())?, gens)?;
        if !ideal.is_squarefree() {
            return Ok(ideal);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_respect_bounds_and_seed() {
        let mut a = rng(7);
        let mut b = rng(7);
        for _ in 0..50 {
            let i = squarefree_ideal(&mut a, 6, 5).unwrap();
            assert!(i.is_squarefree() && i.len() <= 5 && i.vars().len() <= 6);
            assert_eq!(i, squarefree_ideal(&mut b, 6, 5).unwrap());
            let j = non_squarefree_ideal(&mut a, 3, 2, 4).unwrap();
            assert!(!j.is_squarefree() && j.len() <= 4 && j.vars().len() <= 3);
            assert!(j.generators().iter().all(|g| g.exponents().iter().all(|&e| e <= 2)));
            non_squarefree_ideal(&mut b, 3, 2, 4).unwrap();
        }
    }
}
