//! ν-functions, F-thresholds and generalized test ideals `τ(λ•a)`.
//!
//! Test ideals are approximated by the increasing chain
//! `J_e = (a^⌈λ p^e⌉)^[1/p^e]`. A chain member is *certified* when it is
//! the unit ideal or when it coincides with the upper envelope
//! `U_e = (a^(⌊λ p^e⌋ - r + 1))^[1/p^e]` (with `r` generators of `a`),
//! which always contains `τ(λ•a)`. Uncertified chains run to `e_max` and
//! count as a plateau when their last `confirm_steps` steps were equalities.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frobenius::eth_root_of_power;
use crate::ideals::Ideal;
use crate::rational::ExactRational;

/// Default cap on `N` when confirming `g^N ∈ b` for the radical precondition.
pub const DEFAULT_RADICAL_BOUND: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdEstimate {
    pub lower: ExactRational,
    pub upper: ExactRational,
    /// Largest exponent `e` used.
    pub e: u32,
    /// `(q, ν(q))` for `q = p^0, …, p^e`.
    pub nu_values: Vec<(u64, u64)>,
}

impl ThresholdEstimate {
    pub fn contains(&self, x: &ExactRational) -> bool {
        &self.lower <= x && x <= &self.upper
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilizationPolicy {
    pub e_max: u32,
    pub confirm_steps: u32,
    /// Ignore plateaus and only stop on a certificate.
    pub require_certificate: bool,
}

impl Default for StabilizationPolicy {
    fn default() -> Self {
        StabilizationPolicy { e_max: 3, confirm_steps: 1, require_certificate: false }
    }
}

impl StabilizationPolicy {
    pub fn new(e_max: u32, confirm_steps: u32) -> Result<Self> {
        let policy = StabilizationPolicy { e_max, confirm_steps, require_certificate: false };
        policy.validate()?;
        Ok(policy)
    }

    pub fn certified(e_max: u32) -> Result<Self> {
        let policy = StabilizationPolicy { require_certificate: true, ..Self::new(e_max, 1)? };
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        if self.e_max == 0 {
            return Err(Error::InvalidArgument("e_max must be at least 1".into()));
        }
        if self.confirm_steps == 0 {
            return Err(Error::InvalidArgument("confirm_steps must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Stabilization {
    /// Proven equal to `τ(λ•a)`.
    Certified,
    /// Uncertified, but the chain ended in `confirm_steps` equalities; heuristic.
    Plateau,
    /// `e_max` reached without either.
    Unstabilized,
}

impl Stabilization {
    pub fn as_str(self) -> &'static str {
        match self {
            Stabilization::Certified => "certified",
            Stabilization::Plateau => "plateau",
            Stabilization::Unstabilized => "unstabilized",
        }
    }

    pub fn is_stable(self) -> bool {
        self != Stabilization::Unstabilized
    }
}

#[derive(Clone, Debug)]
pub struct TestIdeal {
    pub lambda: ExactRational,
    pub ideal: Ideal,
    /// Exponent of the returned chain member.
    pub e: u32,
    pub status: Stabilization,
}

fn check_same_ring(a: &Ideal, b: &Ideal) -> Result<()> {
    if crate::poly::same_ring(a.ring(), b.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// Confirms `a ⊆ rad(b)`, returning for each generator the least `N ≤ bound`
/// with `g^N ∈ b`.
pub fn radical_exponents(a: &Ideal, b: &Ideal, bound: u32) -> Result<Vec<u32>> {
    check_same_ring(a, b)?;
    let gb = b.basis()?;
    let mut out = Vec::with_capacity(a.generators().len());
    for g in a.generators() {
        let g = gb.reduce(g);
        let mut h = g.clone();
        let mut found = None;
        for n in 1..=bound {
            if h.is_zero() {
                found = Some(n);
                break;
            }
            h = gb.reduce(&h.checked_mul(&g)?);
        }
        match found {
            Some(n) => out.push(n),
            None => {
                return Err(Error::RadicalUnconfirmed(format!(
                    "no power g^N with N ≤ {bound} of generator {g} lies in b"
                )))
            }
        }
    }
    Ok(out)
}

/// `ν(p^e) = max { r ≥ 0 | a^r ⊄ b^[p^e] }`.
pub fn nu(a: &Ideal, b: &Ideal, e: u32) -> Result<u64> {
    nu_with_bound(a, b, e, DEFAULT_RADICAL_BOUND)
}

pub fn nu_with_bound(a: &Ideal, b: &Ideal, e: u32, radical_bound: u32) -> Result<u64> {
    let exponents = radical_exponents(a, b, radical_bound)?;
    nu_unchecked(a, b, e, &exponents, 0)
}

/// Searches `r` using `a^r ⊆ b^[q] ⇔ (a^r)^[1/q] ⊆ b`; `start` is a known
/// value with `a^start ⊄ b^[q]`.
fn nu_unchecked(a: &Ideal, b: &Ideal, e: u32, exponents: &[u32], start: u64) -> Result<u64> {
    if b.is_unit()? {
        return Err(Error::InvalidArgument("b must be a proper ideal".into()));
    }
    let q = checked_q(a, e)?;
    // With g_i^{N_i} ∈ b, a^L ⊆ b^[q] once L > Σ (N_i q - 1).
    let ceiling: u64 = exponents.iter().map(|&n| u64::from(n) * q - 1).sum::<u64>() + 1;
    let contained = |r: u64| -> Result<bool> { eth_root_of_power(a, r, e)?.is_subset_of(b) };

    let mut lo = start;
    let mut hi = ceiling;
    // Invariant: a^lo ⊄ b^[q], a^hi ⊆ b^[q].
    let mut step = 1u64;
    while lo + step < hi {
        if contained(lo + step)? {
            hi = lo + step;
            break;
        }
        lo += step;
        step *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if contained(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo)
}

fn checked_q(a: &Ideal, e: u32) -> Result<u64> {
    let p = u64::from(a.ring().characteristic());
    p.checked_pow(e)
        .filter(|q| *q <= u64::from(u32::MAX))
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{e} is too large")))
}

/// Brackets the F-threshold `c^b(a)` with `ν(q)` for `q = p^0, …, p^e_max`.
///
/// The lower bound is `max ν(q)/q`; the upper bound is `min (ν(q) + r)/q`
/// with `r` the number of generators of `a`.
pub fn threshold_estimate(a: &Ideal, b: &Ideal, e_max: u32) -> Result<ThresholdEstimate> {
    let exponents = radical_exponents(a, b, DEFAULT_RADICAL_BOUND)?;
    let p = u64::from(a.ring().characteristic());
    let r = a.generators().len().max(1) as u64;
    let mut nu_values = Vec::new();
    let mut lower = ExactRational::zero();
    let mut upper: Option<ExactRational> = None;
    let mut previous = 0u64;
    for e in 0..=e_max {
        let q = checked_q(a, e)?;
        let value = nu_unchecked(a, b, e, &exponents, previous * if e == 0 { 0 } else { p })?;
        previous = value;
        nu_values.push((q, value));
        let lo = ExactRational::new(value, q)?;
        let hi = ExactRational::new(value + r, q)?;
        if lo > lower {
            lower = lo;
        }
        if upper.as_ref().is_none_or(|u| &hi < u) {
            upper = Some(hi);
        }
    }
    Ok(ThresholdEstimate { lower, upper: upper.expect("e ranges over 0..=e_max"), e: e_max, nu_values })
}

/// Brackets the F-pure threshold of a homogeneous ideal `a ⊆ m`.
pub fn fpt_bracket(a: &Ideal, e_max: u32) -> Result<ThresholdEstimate> {
    if !a.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if a.generators().iter().any(|g| g.total_degree() == Some(0)) {
        return Err(Error::InvalidArgument("ideal is not contained in the maximal ideal".into()));
    }
    threshold_estimate(a, &Ideal::variables(a.ring()), e_max)
}

/// `τ(λ•a)` by the chain `J_1 ⊆ J_2 ⊆ …`, stopped per `policy`.
pub fn test_ideal(a: &Ideal, lambda: &ExactRational, policy: &StabilizationPolicy) -> Result<TestIdeal> {
    policy.validate()?;
    let ring = a.ring();
    if lambda.is_zero() {
        return Ok(TestIdeal {
            lambda: lambda.clone(),
            ideal: Ideal::unit(ring),
            e: 0,
            status: Stabilization::Certified,
        });
    }
    let r = a.generators().len() as u64;
    let mut previous: Option<Ideal> = None;
    let mut run = 0u32;
    for e in 1..=policy.e_max {
        let q = checked_q(a, e)?;
        let j = eth_root_of_power(a, lambda.ceil_times(q)?, e)?;
        if let Some(prev) = &previous {
            if !prev.is_subset_of(&j)? {
                return Err(Error::ChainViolation(format!(
                    "J_{} ⊄ J_{e} for λ = {lambda}",
                    e - 1
                )));
            }
        }
        let done = |status| TestIdeal { lambda: lambda.clone(), ideal: j.clone(), e, status };
        if j.is_unit()? {
            return Ok(done(Stabilization::Certified));
        }
        let envelope = (lambda.floor_times(q)? + 1).checked_sub(r).filter(|&m| m > 0);
        if let Some(m) = envelope {
            if eth_root_of_power(a, m, e)?.equals(&j)? {
                return Ok(done(Stabilization::Certified));
            }
        }
        if let Some(prev) = &previous {
            if prev.equals(&j)? {
                run += 1;
            } else {
                run = 0;
            }
        }
        if e == policy.e_max {
            let status = if !policy.require_certificate && run >= policy.confirm_steps {
                Stabilization::Plateau
            } else {
                Stabilization::Unstabilized
            };
            return Ok(done(status));
        }
        previous = Some(j);
    }
    unreachable!("e_max ≥ 1 guarantees a return inside the loop")
}

/// Test ideals at every grid point, in ascending `λ`.
#[derive(Clone, Debug)]
pub struct GridScan {
    pub points: Vec<TestIdeal>,
    pub jumps: Vec<ExactRational>,
}

/// Evaluates `τ` on all reduced fractions in `[lo, hi]` with denominator at
/// most `max_denominator`, checking that the family is non-increasing.
pub fn scan_grid(
    a: &Ideal,
    lo: &ExactRational,
    hi: &ExactRational,
    max_denominator: u64,
    policy: &StabilizationPolicy,
) -> Result<GridScan> {
    if max_denominator == 0 {
        return Err(Error::InvalidArgument("denominator bound must be positive".into()));
    }
    let grid = ExactRational::grid(lo, hi, max_denominator);
    let points = grid
        .par_iter()
        .map(|lambda| test_ideal(a, lambda, policy))
        .collect::<Result<Vec<_>>>()?;
    let jumps = detect_jumps(&points)?;
    Ok(GridScan { points, jumps })
}

/// Points (in the given ascending order) where the ideal strictly drops
/// relative to its predecessor; errors if some ideal grows.
pub fn detect_jumps(points: &[TestIdeal]) -> Result<Vec<ExactRational>> {
    let mut jumps = Vec::new();
    for pair in points.windows(2) {
        let (before, after) = (&pair[0], &pair[1]);
        if !after.ideal.is_subset_of(&before.ideal)? {
            return Err(Error::ChainViolation(format!(
                "τ({}) ⊄ τ({})",
                after.lambda, before.lambda
            )));
        }
        if !before.ideal.is_subset_of(&after.ideal)? {
            jumps.push(after.lambda.clone());
        }
    }
    Ok(jumps)
}

/// Grid points where `τ(λ•a)` strictly drops relative to the previous point.
pub fn jumping_numbers_on_grid(
    a: &Ideal,
    lo: &ExactRational,
    hi: &ExactRational,
    max_denominator: u64,
    policy: &StabilizationPolicy,
) -> Result<Vec<ExactRational>> {
    Ok(scan_grid(a, lo, hi, max_denominator, policy)?.jumps)
}

/// Checks Skoda's identity `τ(λ•a) = a · τ((λ-1)•a)`.
pub fn skoda_check(a: &Ideal, lambda: &ExactRational, policy: &StabilizationPolicy) -> Result<bool> {
    let r = a.generators().len() as u64;
    let shifted = lambda.checked_sub(&ExactRational::integer(1));
    let shifted = match shifted {
        Some(s) if lambda >= &ExactRational::integer(r) => s,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "Skoda's identity needs λ ≥ {r} (the number of generators)"
            )))
        }
    };
    let (high, low) = rayon::join(
        || test_ideal(a, lambda, policy),
        || test_ideal(a, &shifted, policy),
    );
    high?.ideal.equals(&a.product(&low?.ideal)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, RingSpec};

    fn ideal(p: u64, vars: &[&str], gens: &[&str]) -> Ideal {
        let ring = RingSpec::new(p, vars).unwrap();
        let gens = gens.iter().map(|g| parse_polynomial(g, &ring).unwrap()).collect();
        Ideal::new(&ring, gens).unwrap()
    }

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    #[test]
    fn nu_of_principal_variable() {
        for p in [2u64, 3] {
            let x = ideal(p, &["x"], &["x"]);
            for e in 0..=3 {
                assert_eq!(nu(&x, &x, e).unwrap(), p.pow(e) - 1);
            }
        }
    }

    #[test]
    fn nu_of_maximal_ideal_in_two_variables() {
        let m = ideal(3, &["x", "y"], &["x", "y"]);
        for e in 0..=2 {
            assert_eq!(nu(&m, &m, e).unwrap(), 2 * (3u64.pow(e) - 1));
        }
    }

    #[test]
    fn nu_of_square_against_variable() {
        for p in [2u64, 3, 5] {
            let a = ideal(p, &["x"], &["x^2"]);
            let b = ideal(p, &["x"], &["x"]);
            for e in 0..=3 {
                let qq = p.pow(e);
                let oracle = (0..).find(|r| 2 * r >= qq).unwrap() - 1;
                assert_eq!(nu(&a, &b, e).unwrap(), oracle, "p={p} e={e}");
            }
        }
    }

    #[test]
    fn nu_is_zero_when_already_contained() {
        let a = ideal(2, &["x", "y"], &["x^4", "x*y^2"]);
        let b = ideal(2, &["x", "y"], &["x", "y"]);
        assert_eq!(nu(&a, &b, 1).unwrap(), 0);
    }

    #[test]
    fn radical_precondition_is_enforced() {
        let a = ideal(2, &["x", "y"], &["y"]);
        let b = ideal(2, &["x", "y"], &["x"]);
        assert!(matches!(nu(&a, &b, 1), Err(Error::RadicalUnconfirmed(_))));
        let unit = ideal(2, &["x", "y"], &["1"]);
        assert!(nu(&a, &unit, 1).is_err());
    }

    #[test]
    fn maximal_ideal_threshold_is_dimension() {
        let m = ideal(2, &["x", "y", "z"], &["x", "y", "z"]);
        let est = threshold_estimate(&m, &m, 2).unwrap();
        assert_eq!(est.lower, q("9/4"));
        assert_eq!(est.upper, q("3"));
        assert_eq!(est.nu_values, vec![(1, 0), (2, 3), (4, 9)]);
        let at_zero = threshold_estimate(&m, &m, 0).unwrap();
        assert_eq!(at_zero.lower, q("0"));
    }

    #[test]
    fn fpt_bracket_of_square() {
        let a = ideal(3, &["x"], &["x^2"]);
        let est = fpt_bracket(&a, 3).unwrap();
        assert!(est.contains(&q("1/2")));
        assert!(est.lower <= est.upper);
        let bad = ideal(3, &["x", "y"], &["x^2 + y"]);
        assert!(matches!(fpt_bracket(&bad, 1), Err(Error::NotHomogeneous)));
    }

    #[test]
    fn test_ideals_of_maximal_ideals() {
        let m = ideal(2, &["x", "y"], &["x", "y"]);
        let t = test_ideal(&m, &q("5/2"), &StabilizationPolicy::certified(3).unwrap()).unwrap();
        assert_eq!(t.status, Stabilization::Certified);
        assert!(t.ideal.equals(&m).unwrap());
        let t = test_ideal(&m, &q("3"), &StabilizationPolicy::default()).unwrap();
        assert!(t.ideal.equals(&m.power(2).unwrap()).unwrap());
    }

    #[test]
    fn trivial_test_ideals() {
        let x = ideal(5, &["x"], &["x"]);
        let policy = StabilizationPolicy::default();
        assert!(test_ideal(&x, &q("0"), &policy).unwrap().ideal.is_unit().unwrap());
        let half = test_ideal(&x, &q("1/2"), &policy).unwrap();
        assert!(half.ideal.is_unit().unwrap());
        assert_eq!(half.status, Stabilization::Certified);
    }

    #[test]
    fn policy_validation() {
        assert!(StabilizationPolicy::new(0, 1).is_err());
        assert!(StabilizationPolicy::new(2, 0).is_err());
    }

    #[test]
    fn jumps_of_a_variable() {
        let x = ideal(2, &["x"], &["x"]);
        let jumps =
            jumping_numbers_on_grid(&x, &q("0"), &q("3"), 4, &StabilizationPolicy::default()).unwrap();
        assert_eq!(jumps, vec![q("1"), q("2"), q("3")]);
        let m = ideal(3, &["x", "y"], &["x", "y"]);
        let none =
            jumping_numbers_on_grid(&m, &q("0"), &q("3/4"), 4, &StabilizationPolicy::default()).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn skoda_examples() {
        let policy = StabilizationPolicy::default();
        let m = ideal(2, &["x", "y"], &["x", "y"]);
        assert!(skoda_check(&m, &q("2"), &policy).unwrap());
        let x = ideal(3, &["x"], &["x"]);
        assert!(skoda_check(&x, &q("1"), &policy).unwrap());
        assert!(skoda_check(&m, &q("1"), &policy).is_err());
    }
}
