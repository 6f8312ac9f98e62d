//! Seeded generators of small ("desk-scale") random ideals.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::ideals::Ideal;
use crate::poly::{Monomial, Polynomial, Ring, RingSpec};

pub use rand::SeedableRng;
pub type DeskRng = ChaCha8Rng;

pub fn rng(seed: u64) -> DeskRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct DeskScale {
    pub max_vars: usize,
    pub max_generators: usize,
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for DeskScale {
    fn default() -> Self {
        DeskScale { max_vars: 3, max_generators: 3, max_degree: 4, max_terms: 3 }
    }
}

const NAMES: [&str; 6] = ["x", "y", "z", "w", "u", "v"];

pub fn random_ring(rng: &mut DeskRng, p: u64, max_vars: usize) -> Result<Ring> {
    let n = rng.gen_range(1..=max_vars.clamp(1, NAMES.len()));
    RingSpec::new(p, &NAMES[..n])
}

/// A monomial of total degree in `min_degree..=max_degree`.
pub fn random_monomial(rng: &mut DeskRng, nvars: usize, min_degree: u32, max_degree: u32) -> Monomial {
    let degree = rng.gen_range(min_degree..=max_degree);
    let mut exps = vec![0u32; nvars];
    for _ in 0..degree {
        exps[rng.gen_range(0..nvars)] += 1;
    }
    Monomial::from_exponents(&exps)
}

/// A nonzero polynomial without constant term.
pub fn random_polynomial(rng: &mut DeskRng, ring: &Ring, scale: &DeskScale) -> Polynomial {
    let p = u64::from(ring.characteristic());
    loop {
        let terms = rng.gen_range(1..=scale.max_terms);
        let f = Polynomial::from_terms(
            ring,
            (0..terms).map(|_| {
                let m = random_monomial(rng, ring.nvars(), 1, scale.max_degree);
                (m, rng.gen_range(1..p) as u32)
            }),
        );
        if !f.is_zero() {
            return f;
        }
    }
}

/// A proper nonzero ideal in `ring`.
pub fn random_ideal(rng: &mut DeskRng, ring: &Ring, scale: &DeskScale) -> Result<Ideal> {
    let count = rng.gen_range(1..=scale.max_generators);
    let gens = (0..count).map(|_| random_polynomial(rng, ring, scale)).collect();
    Ideal::new(ring, gens)
}

/// A monomial ideal with generators of degree `1..=max_degree`.
pub fn random_monomial_ideal(rng: &mut DeskRng, ring: &Ring, scale: &DeskScale) -> Result<Ideal> {
    let count = rng.gen_range(1..=scale.max_generators);
    let gens = (0..count)
        .map(|_| Polynomial::monomial(ring, random_monomial(rng, ring.nvars(), 1, scale.max_degree), 1))
        .collect();
    Ideal::new(ring, gens)
}

/// A random permutation of `0..n`.
pub fn random_permutation(rng: &mut DeskRng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reproducible() {
        let scale = DeskScale::default();
        let draw = |seed| {
            let mut r = rng(seed);
            let ring = random_ring(&mut r, 3, 3).unwrap();
            random_ideal(&mut r, &ring, &scale).unwrap().generators().to_vec()
        };
        assert_eq!(draw(7), draw(7));
    }

    #[test]
    fn random_ideals_are_desk_scale() {
        let scale = DeskScale::default();
        let mut r = rng(1);
        for _ in 0..50 {
            let ring = random_ring(&mut r, 5, 3).unwrap();
            let i = random_ideal(&mut r, &ring, &scale).unwrap();
            assert!(ring.nvars() <= 3);
            assert!(!i.is_zero() && i.generators().len() <= 3);
            for g in i.generators() {
                assert!(g.total_degree().unwrap() <= 4);
                assert!(g.terms().iter().all(|(m, _)| m.degree() >= 1));
            }
        }
    }
}
