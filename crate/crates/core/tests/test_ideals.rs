use froblab::ideals::Ideal;
use froblab::poly::{parse_polynomial, RingSpec};
use froblab::random::{self, DeskScale};
use froblab::rational::ExactRational;
use froblab::testideal::{
    nu, scan_grid, skoda_check, test_ideal, threshold_estimate, Stabilization, StabilizationPolicy,
};
use proptest::prelude::*;

fn ideal(p: u64, vars: &[&str], gens: &[&str]) -> Ideal {
    let ring = RingSpec::new(p, vars).unwrap();
    let gens = gens.iter().map(|g| parse_polynomial(g, &ring).unwrap()).collect();
    Ideal::new(&ring, gens).unwrap()
}

fn desk_ideal(seed: u64, p: u64) -> Ideal {
    let mut rng = random::rng(seed);
    let ring = random::random_ring(&mut rng, p, 3).unwrap();
    random::random_ideal(&mut rng, &ring, &DeskScale::default()).unwrap()
}

fn rational(num: u64, den: u64) -> ExactRational {
    ExactRational::new(num, den).unwrap()
}

#[test]
fn cusp_threshold_bracket() {
    // fpt(x^2 - y^3) = 5/6 in characteristic p ≡ 1 (mod 6).
    let cusp = ideal(7, &["x", "y"], &["x^2 - y^3"]);
    let m = ideal(7, &["x", "y"], &["x", "y"]);
    let est = threshold_estimate(&cusp, &m, 2).unwrap();
    assert!(est.contains(&rational(5, 6)), "{est:?}");
}

#[test]
fn grid_scan_reports_every_point() {
    let a = ideal(3, &["x", "y"], &["x^2", "y^2"]);
    let policy = StabilizationPolicy::default();
    let scan = scan_grid(&a, &rational(0, 1), &rational(2, 1), 2, &policy).unwrap();
    let lambdas: Vec<String> = scan.points.iter().map(|t| t.lambda.to_string()).collect();
    assert_eq!(lambdas, ["0", "1/2", "1", "3/2", "2"]);
    // τ(λ•(x², y²)) = τ(2λ•(x, y)) = m^(⌊2λ⌋ - 1).
    let jumps: Vec<String> = scan.jumps.iter().map(|j| j.to_string()).collect();
    assert_eq!(jumps, ["1", "3/2", "2"]);
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 16, ..ProptestConfig::default() })]

    #[test]
    fn nu_scales_with_frobenius(seed in 0u64..10_000, p in prop::sample::select(vec![2u64, 3])) {
        let a = desk_ideal(seed, p);
        let m = Ideal::variables(a.ring());
        let lower = nu(&a, &m, 1).unwrap();
        let upper = nu(&a, &m, 2).unwrap();
        prop_assert!(upper >= p * lower);
    }

    #[test]
    fn test_ideal_chain_and_monotonicity(
        seed in 0u64..10_000,
        num in 0u64..12,
        den in 1u64..4,
    ) {
        let a = desk_ideal(seed, 2);
        let policy = StabilizationPolicy::new(3, 1).unwrap();
        let lo = rational(num, den);
        let hi = lo.add(&rational(1, 4));
        let t_lo = test_ideal(&a, &lo, &policy).unwrap();
        let t_hi = test_ideal(&a, &hi, &policy).unwrap();
        if t_lo.status == Stabilization::Certified && t_hi.status == Stabilization::Certified {
            prop_assert!(t_hi.ideal.is_subset_of(&t_lo.ideal).unwrap());
        }
    }

    #[test]
    fn nested_brackets(seed in 0u64..10_000) {
        let a = desk_ideal(seed, 2);
        let m = Ideal::variables(a.ring());
        let coarse = threshold_estimate(&a, &m, 1).unwrap();
        let fine = threshold_estimate(&a, &m, 2).unwrap();
        prop_assert!(coarse.lower <= fine.lower && fine.upper <= coarse.upper);
        prop_assert!(fine.lower <= fine.upper);
    }

    #[test]
    fn skoda_on_random_ideals(seed in 0u64..10_000, shift in 0u64..=2) {
        let a = desk_ideal(seed, 2);
        let r = a.generators().len() as u64;
        let policy = StabilizationPolicy::default();
        prop_assert!(skoda_check(&a, &ExactRational::integer(r + shift), &policy).unwrap());
    }
}

#[test]
fn right_continuity_at_detected_jumps() {
    let a = ideal(2, &["x", "y"], &["x^2", "x*y^2"]);
    let policy = StabilizationPolicy::new(4, 1).unwrap();
    let scan = scan_grid(&a, &rational(0, 1), &rational(3, 1), 4, &policy).unwrap();
    for jump in &scan.jumps {
        let nudged = jump.add(&rational(1, 8));
        let here = scan.points.iter().find(|t| &t.lambda == jump).unwrap();
        let there = test_ideal(&a, &nudged, &policy).unwrap();
        assert!(here.ideal.equals(&there.ideal).unwrap(), "τ jumps again right after {jump}");
    }
}
