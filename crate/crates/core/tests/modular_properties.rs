//! Slash action, frame equivariance and coset enumeration.

use proptest::prelude::*;
use vvmod_core::eisenstein::{enumerate_cosets, CompensatedSum};
use vvmod_core::symframe::{frame_coordinates, frame_value, slash_value, GroupElement, XPolynomial};
use vvmod_core::{EvalPoint, Result, C64};

fn element() -> impl Strategy<Value = GroupElement> {
    (-2.0f64..2.0, 0.5f64..2.0, 0.0f64..std::f64::consts::TAU).prop_map(|(x, t, th)| GroupElement::iwasawa(x, t, th))
}

fn point() -> impl Strategy<Value = EvalPoint> {
    (-1.0f64..1.0, 0.3f64..2.0).prop_map(|(x, y)| EvalPoint::new(x, y).unwrap())
}

// Some smooth non-modular test function valued in C[X]_m.
fn probe(m: usize) -> impl Fn(&EvalPoint) -> Result<XPolynomial> {
    move |p: &EvalPoint| {
        let tau = p.tau();
        let coeffs = (0..=m).map(|a| (tau * (a as f64 + 1.0)).sin() + C64::new(0.0, p.y()).powi(a as i32)).collect();
        XPolynomial::from_coeffs(coeffs)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn slash_is_a_right_action(g in element(), h in element(), p in point(), k in -4i32..6, m in 0usize..4) {
        let gh = g.compose(&h);
        let direct = slash_value(probe(m), k, m, &gh, &p).unwrap();
        let inner = |q: &EvalPoint| slash_value(probe(m), k, m, &g, q);
        let nested = slash_value(inner, k, m, &h, &p).unwrap();
        let scale = 1.0 + direct.max_abs();
        prop_assert!(direct.max_abs_diff(&nested) <= 1e-9 * scale);
    }

    #[test]
    fn frame_vectors_are_invariant(g in element(), p in point(), m in 0usize..6, j in 0usize..6) {
        prop_assume!(j <= m);
        let w = m as i32 - 2 * j as i32;
        let slashed = slash_value(|q: &EvalPoint| frame_value(j, m, q), w, m, &g, &p).unwrap();
        let plain = frame_value(j, m, &p).unwrap();
        prop_assert!(slashed.max_abs_diff(&plain) <= 1e-10 * (1.0 + plain.max_abs()));
    }

    #[test]
    fn frame_coordinates_invert_expansion(p in point(), m in 0usize..6, seed in any::<u64>()) {
        let coeffs: Vec<C64> = (0..=m).map(|a| C64::new(((seed >> a) & 7) as f64 - 3.0, ((seed >> (a + 8)) & 7) as f64)).collect();
        let mut sum = XPolynomial::zero(m);
        for (j, c) in coeffs.iter().enumerate() {
            sum = sum.add(&frame_value(j, m, &p).unwrap().scale(*c)).unwrap();
        }
        let back = frame_coordinates(&sum, &p).unwrap();
        for (a, b) in coeffs.iter().zip(&back) {
            prop_assert!((a - b).norm() <= 1e-9 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn inverse_undoes(g in element(), p in point()) {
        let back = g.inverse().compose(&g);
        let id = GroupElement::identity();
        prop_assert!((back.a - id.a).abs() < 1e-12 && (back.b).abs() < 1e-12 && (back.c).abs() < 1e-12 && (back.d - 1.0).abs() < 1e-12);
        let image = vvmod_core::symframe::moebius(&g, &p).unwrap();
        prop_assert!(image.y() > 0.0);
    }
}

#[test]
fn cosets_are_primitive_and_unique() {
    let e = enumerate_cosets(30).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for c in e.cosets() {
        let (cc, dd) = (c.c, c.d);
        assert!(cc > 0 || (cc == 0 && dd == 1), "{cc},{dd}");
        assert_eq!(num_gcd(cc.unsigned_abs(), dd.unsigned_abs()), 1);
        assert!(cc.abs() <= 30 && dd.abs() <= 30);
        assert_eq!(c.a * c.d - c.b * c.c, 1);
        assert!(seen.insert((cc, dd)));
    }
    let keys: Vec<_> = e.cosets().iter().map(|c| (c.c * c.c + c.d * c.d, c.c, c.d)).collect();
    assert!(keys.windows(2).all(|w| w[0] < w[1]));
    // every primitive pair up to sign is present
    let mut count = 0;
    for c in 0i64..=30 {
        for d in -30i64..=30 {
            if num_gcd(c.unsigned_abs(), d.unsigned_abs()) == 1 && (c > 0 || d == 1) {
                count += 1;
            }
        }
    }
    assert_eq!(count, e.len());
}

#[test]
fn first_cosets() {
    assert_eq!(enumerate_cosets(1).unwrap().pairs(), vec![(0, 1), (1, 0), (1, -1), (1, 1)]);
    assert!(enumerate_cosets(0).is_err());
}

#[test]
fn compensated_sum_recovers_cancellation() {
    let mut s = CompensatedSum::default();
    for x in [1e16, 1.0, -1e16, 1.0] {
        s.add(C64::new(x, -x));
    }
    assert_eq!(s.value(), C64::new(2.0, -2.0));
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}
