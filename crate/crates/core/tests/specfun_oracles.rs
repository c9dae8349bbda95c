//! Special functions against independent numerical oracles.

use std::f64::consts::PI;

use vvmod_core::specfun::{gamma, sigma, whittaker_w, zeta, DivisorSumSpec};
use vvmod_core::C64;

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm()
}

/// Bernoulli numbers B_2, B_4, ..., B_12.
const BERNOULLI: [f64; 6] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0, -691.0 / 2730.0];

/// Euler-Maclaurin tail of `sum_{n >= big_n} n^-s`.
fn em_tail(s: C64, big_n: f64) -> C64 {
    let n = C64::new(big_n, 0.0);
    let mut tail = n.powc(1.0 - s) / (s - 1.0) + 0.5 * n.powc(-s);
    let mut rising = s;
    let mut fact = 2.0;
    for (k, b) in BERNOULLI.iter().enumerate() {
        let p = 2 * k as i32 + 2;
        tail += b / fact * rising * n.powc(-s - (p - 1) as f64);
        rising = rising * (s + (p - 1) as f64) * (s + p as f64);
        fact *= ((p + 1) * (p + 2)) as f64;
    }
    tail
}

fn zeta_oracle(s: C64, terms: u64) -> C64 {
    let mut head = C64::new(0.0, 0.0);
    for n in (1..terms).rev() {
        head += C64::new(n as f64, 0.0).powc(-s);
    }
    head + em_tail(s, terms as f64)
}

#[test]
fn zeta_three_from_long_partial_sum() {
    let mut head = 0.0;
    for n in (1..10_000_000u64).rev() {
        let x = n as f64;
        head += 1.0 / (x * x * x);
    }
    let oracle = head + em_tail(C64::new(3.0, 0.0), 1e7).re;
    let z = zeta(C64::new(3.0, 0.0)).unwrap();
    assert!((z.re - oracle).abs() < 1e-14, "{z} vs {oracle}");
    assert_eq!(z.im, 0.0);
}

#[test]
fn zeta_across_the_strip() {
    for s in [
        C64::new(0.5, 0.0),
        C64::new(0.5, 3.0),
        C64::new(0.9, -1.2),
        C64::new(1.1, 0.04),
        C64::new(2.0, 2.0),
        C64::new(7.5, -2.0),
        C64::new(11.9, 0.3),
    ] {
        let oracle = zeta_oracle(s, 2000);
        assert!(rel(zeta(s).unwrap(), oracle) < 1e-12, "zeta({s})");
    }
}

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> C64, a: f64, b: f64, n: usize) -> C64 {
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

#[test]
fn gamma_against_euler_integral() {
    let s = C64::new(2.5, 1.0);
    let oracle = simpson(
        |t| if t == 0.0 { C64::new(0.0, 0.0) } else { C64::new(t, 0.0).powc(s - 1.0) * (-t).exp() },
        0.0,
        60.0,
        400_000,
    );
    assert!(rel(gamma(s).unwrap(), oracle) < 1e-10);
}

/// Stirling series with upward shift, independent of the library's Lanczos sum.
fn gamma_oracle(x: f64) -> f64 {
    let mut shift = 1.0;
    let mut y = x;
    while y < 30.0 {
        shift *= y;
        y += 1.0;
    }
    let series = 1.0 / (12.0 * y) - 1.0 / (360.0 * y.powi(3)) + 1.0 / (1260.0 * y.powi(5));
    ((y - 0.5) * y.ln() - y + 0.5 * (2.0 * PI).ln() + series).exp() / shift
}

/// `W_{kappa,mu}(z)` from `z^{mu+1/2} e^{-z/2} / Gamma(a) int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt`
/// with `a = mu - kappa + 1/2`, `b = 2 mu + 1`. The substitution `t = v^p`
/// with `p a >= 6` makes the integrand smooth at the origin for Simpson's rule.
fn whittaker_oracle(kappa: f64, mu: f64, z: f64) -> f64 {
    let a = mu - kappa + 0.5;
    let b = 2.0 * mu + 1.0;
    let p = (6.0 / a).ceil();
    let upper = (50.0 / z).powf(1.0 / p);
    let integrand = |v: f64| {
        let t = v.powf(p);
        C64::new((-z * t).exp() * (1.0 + t).powf(b - a - 1.0) * p * v.powf(p * a - 1.0), 0.0)
    };
    let integral = simpson(integrand, 0.0, upper, 200_000).re;
    z.powf(mu + 0.5) * (-z / 2.0).exp() * integral / gamma_oracle(a)
}

#[test]
fn whittaker_against_quadrature() {
    // (kappa, mu, z) as they occur in Fourier terms E_k(tau, s), z = 4 pi |n| y
    let cases = [
        (-1.0, 0.5, 4.0 * PI),
        (0.0, 2.5, 4.0 * PI * 0.8),
        (0.0, 2.5, 4.0 * PI * 3.0 * 1.2),
        (-2.0, 1.5, 4.0 * PI),
        (-3.0, 2.5, 4.0 * PI * 2.0 * 0.8),
        (1.0, 0.8, 4.0 * PI * 1.2),
        (0.0, 0.5 + 0.3, 4.0 * PI * 0.7),
        (2.0, 3.5, 4.0 * PI * 0.6),
    ];
    for (kappa, mu, z) in cases {
        let w = whittaker_w(C64::new(kappa, 0.0), C64::new(mu, 0.0), z).unwrap();
        let oracle = whittaker_oracle(kappa, mu, z);
        assert!((w.re - oracle).abs() <= 1e-8 * oracle.abs(), "W({kappa},{mu},{z}) = {w} vs {oracle}");
        assert_eq!(w.im, 0.0);
    }
}

#[test]
fn sigma_examples() {
    let s = |z: f64, n: u64| sigma(DivisorSumSpec::new(C64::new(z, 0.0), n)).unwrap().re;
    assert_eq!(s(1.0, 6), 12.0);
    assert_eq!(s(3.0, 2), 9.0);
    assert_eq!(s(0.0, 12), 6.0);
    assert_eq!(s(1.0, 1), 1.0);
}
