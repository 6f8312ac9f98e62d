//! Randomized property suite for e-th roots.

use rand::Rng;

use crate::error::Result;
use crate::frobenius::{eth_root, eth_root_of_power};
use crate::ideals::Ideal;
use crate::poly::Polynomial;
use crate::random::{self, DeskRng, DeskScale};

/// Names of the properties checked by [`check_root_properties`].
pub const ROOT_PROPERTIES: [&str; 8] = [
    "containment",
    "bracket-power",
    "monotonicity",
    "permutation",
    "extension",
    "minimality",
    "generating-set",
    "power-route",
];

/// Checks the e-th root properties of `ideal`, returning the names of those
/// that fail.
pub fn check_root_properties(
    ideal: &Ideal,
    e: u32,
    rng: &mut DeskRng,
    scale: &DeskScale,
) -> Result<Vec<&'static str>> {
    let ring = ideal.ring();
    let p = u64::from(ring.characteristic());
    let q = p.pow(e);
    let root = eth_root(ideal, e)?;
    let mut failed = Vec::new();

    if !ideal.is_subset_of(&root.bracket_power(q)?)? {
        failed.push("containment");
    }

    let ell = e + rng.gen_range(0..=1);
    let lifted = eth_root(&ideal.bracket_power(p.pow(ell))?, e)?;
    if !lifted.equals(&ideal.bracket_power(p.pow(ell - e))?)? {
        failed.push("bracket-power");
    }

    let bigger = ideal.sum(&Ideal::new(ring, vec![random::random_polynomial(rng, ring, scale)])?)?;
    if !root.is_subset_of(&eth_root(&bigger, e)?)? {
        failed.push("monotonicity");
    }

    let perm = random::random_permutation(rng, ring.nvars());
    let moved_root = root.map_variables(ring, &perm)?;
    if !moved_root.equals(&eth_root(&ideal.map_variables(ring, &perm)?, e)?)? {
        failed.push("permutation");
    }

    let wide = ring.extended(&[ring.fresh_name("t")])?;
    let identity: Vec<usize> = (0..ring.nvars()).collect();
    let extended_root = root.map_variables(&wide, &identity)?;
    if !extended_root.equals(&eth_root(&ideal.map_variables(&wide, &identity)?, e)?)? {
        failed.push("extension");
    }

    // An ideal inside b^[q] by construction must have its root inside b.
    let b = random::random_ideal(rng, ring, scale)?;
    let mut combos = Vec::new();
    for _ in 0..2 {
        let mut f = Polynomial::zero(ring);
        for g in b.generators() {
            let h = random::random_polynomial(rng, ring, scale);
            f = f.checked_add(&h.checked_mul(&g.frobenius(q)?)?)?;
        }
        combos.push(f);
    }
    if !eth_root(&Ideal::new(ring, combos)?, e)?.is_subset_of(&b)? {
        failed.push("minimality");
    }

    let mut regenerated = ideal.basis()?.polynomials();
    let gens = ideal.generators();
    if gens.len() >= 2 {
        regenerated.push(gens[0].checked_add(&gens[1])?);
    } else if let Some(g) = gens.first() {
        regenerated.push(g.checked_mul(&random::random_polynomial(rng, ring, scale))?);
    }
    if !eth_root(&Ideal::new(ring, regenerated)?, e)?.equals(&root)? {
        failed.push("generating-set");
    }

    let k = rng.gen_range(1..=3);
    if !eth_root_of_power(ideal, k, e)?.equals(&eth_root(&ideal.power(k)?, e)?)? {
        failed.push("power-route");
    }

    Ok(failed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyFailure {
    pub case: usize,
    pub p: u64,
    pub e: u32,
    pub property: &'static str,
    pub ideal: String,
}

#[derive(Clone, Debug)]
pub struct SelfCheckReport {
    pub seed: u64,
    pub cases: usize,
    pub checks: usize,
    pub failures: Vec<PropertyFailure>,
}

impl SelfCheckReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs [`check_root_properties`] on `cases` random ideals, drawing the
/// characteristic from `primes` and the exponent from `exponents`.
pub fn root_property_suite(
    seed: u64,
    cases: usize,
    primes: &[u64],
    exponents: &[u32],
) -> Result<SelfCheckReport> {
    let scale = DeskScale::default();
    let mut rng = random::rng(seed);
    let mut failures = Vec::new();
    let mut checks = 0;
    for case in 0..cases {
        let p = primes[rng.gen_range(0..primes.len())];
        let e = exponents[rng.gen_range(0..exponents.len())];
        let ring = random::random_ring(&mut rng, p, scale.max_vars)?;
        let ideal = random::random_ideal(&mut rng, &ring, &scale)?;
        let failed = check_root_properties(&ideal, e, &mut rng, &scale)?;
        checks += ROOT_PROPERTIES.len();
        for property in failed {
            failures.push(PropertyFailure {
                case,
                p,
                e,
                property,
                ideal: crate::ideals::render_ideal_file(&ideal),
            });
        }
    }
    Ok(SelfCheckReport { seed, cases, checks, failures })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let report = root_property_suite(11, 12, &[2, 3, 5], &[0, 1, 2]).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.checks, 12 * ROOT_PROPERTIES.len());
    }
}
