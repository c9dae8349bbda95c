//! Maass operator identities as exact coefficient identities.

mod common;

use common::{pi_times_e2, random_c64_expansion, random_gauss_expansion, rng, PiPoly};
use proptest::prelude::*;
use vvmod_core::qyseries::{Coefficient, ScalarExpansion};

fn pair(
    seed: u64,
    k1: i32,
    k2: i32,
    order: usize,
    d1: usize,
    d2: usize,
) -> (ScalarExpansion<PiPoly>, ScalarExpansion<PiPoly>) {
    let mut r = rng(seed);
    (random_gauss_expansion(&mut r, k1, order, d1, 9), random_gauss_expansion(&mut r, k2, order, d2, 9))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lowering_is_a_derivation(seed in any::<u64>(), k1 in -6i32..8, k2 in -6i32..8, order in 0usize..8, d1 in 0usize..4, d2 in 0usize..4) {
        let (f, g) = pair(seed, k1, k2, order, d1, d2);
        let lhs = f.mul(&g).lower();
        let rhs = f.lower().mul(&g).checked_add(&f.mul(&g.lower())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn raising_is_a_graded_derivation(seed in any::<u64>(), k1 in -6i32..8, k2 in -6i32..8, order in 0usize..8, d1 in 0usize..4, d2 in 0usize..4) {
        let (f, g) = pair(seed, k1, k2, order, d1, d2);
        let lhs = f.mul(&g).raise();
        let rhs = f.raise().mul(&g).checked_add(&f.mul(&g.raise())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn weights_shift(seed in any::<u64>(), k in -6i32..8, order in 0usize..8, d in 0usize..4) {
        let f = random_gauss_expansion(&mut rng(seed), k, order, d, 9);
        prop_assert_eq!(f.lower().weight(), k - 2);
        prop_assert_eq!(f.raise().weight(), k + 2);
        prop_assert_eq!(f.laplace().weight(), k);
        prop_assert_eq!(f.mul(&f).weight(), 2 * k);
    }

    #[test]
    fn lowering_exhausts_depth(seed in any::<u64>(), k in -6i32..8, order in 0usize..8, d in 0usize..5) {
        let f = random_gauss_expansion(&mut rng(seed), k, order, d, 9);
        let mut g = f.clone();
        for _ in 0..f.depth() {
            g = g.lower();
        }
        prop_assert!(f.is_zero() || !g.is_zero() || f.depth() == 0);
        prop_assert!(g.lower().is_zero());
    }

    #[test]
    fn commutator_is_minus_weight(seed in any::<u64>(), k in -6i32..8, order in 0usize..8, d in 0usize..4) {
        let f = random_gauss_expansion(&mut rng(seed), k, order, d, 9);
        let lr = f.raise().lower();
        let rl = f.lower().raise();
        let expected = f.scale(&PiPoly::from_int(-(k as i64)));
        prop_assert_eq!(lr.checked_sub(&rl).unwrap(), expected);
    }

    #[test]
    fn truncation_commutes_with_operators(seed in any::<u64>(), k in -6i32..8, order in 1usize..10, d in 0usize..4, cut in 0usize..10) {
        let f = random_gauss_expansion(&mut rng(seed), k, order, d, 9);
        let cut = cut.min(order);
        prop_assert_eq!(f.lower().truncate(cut), f.truncate(cut).lower());
        prop_assert_eq!(f.raise().truncate(cut), f.truncate(cut).raise());
    }

    #[test]
    fn float_lowering_leibniz_is_bit_exact(seed in any::<u64>(), k1 in -6i32..8, k2 in -6i32..8, order in 0usize..8, d1 in 0usize..4, d2 in 0usize..4) {
        let mut r = rng(seed);
        let f = random_c64_expansion(&mut r, k1, order, d1, 5);
        let g = random_c64_expansion(&mut r, k2, order, d2, 5);
        let lhs = f.mul(&g).lower();
        let rhs = f.lower().mul(&g).checked_add(&f.mul(&g.lower())).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), k in -6i32..8, order in 0usize..8, d in 0usize..4) {
        let f = random_c64_expansion(&mut rng(seed), k, order, d, 50);
        let text = serde_json::to_string(&f).unwrap();
        let back: ScalarExpansion = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, f);
    }
}

#[test]
fn e2_is_harmonic_exactly() {
    let e2 = pi_times_e2(40);
    assert!(e2.laplace().is_zero());
    let lr = e2.raise().lower();
    assert_eq!(lr, e2.scale(&PiPoly::from_int(-2)));
}

#[test]
fn exact_ring_agrees_with_floats() {
    let e2 = pi_times_e2(10);
    let float = vvmod_core::eisenstein::e2_expansion(10);
    let pi = std::f64::consts::PI;
    for r in 0..=1 {
        for n in 0..=10 {
            let exact = e2.coeff(r, n).to_c64() / pi;
            assert!((exact - float.coeff(r, n)).norm() <= 1e-12 * (1.0 + exact.norm()));
        }
    }
}
