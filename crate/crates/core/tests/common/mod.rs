//! Shared test helpers: an exact coefficient ring and seeded random data.

#![allow(dead_code)]

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vvmod_core::qyseries::{Coefficient, ScalarExpansion};
use vvmod_core::C64;

/// Gaussian integer `re + i im`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct GaussInt {
    pub re: i128,
    pub im: i128,
}

impl GaussInt {
    pub fn new(re: i128, im: i128) -> Self {
        GaussInt { re, im }
    }

    fn is_zero(&self) -> bool {
        self.re == 0 && self.im == 0
    }
}

impl Add for GaussInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        GaussInt::new(self.re + o.re, self.im + o.im)
    }
}

impl Mul for GaussInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        GaussInt::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

/// Polynomial in `pi` with Gaussian-integer coefficients; index `p` holds
/// the coefficient of `pi^p`. Exact, so operator identities involving the
/// `4 pi n` of the raising operator can be compared with `==`.
#[derive(Debug, Clone, Default)]
pub struct PiPoly {
    coeffs: Vec<GaussInt>,
}

impl PiPoly {
    pub fn from_coeffs(mut coeffs: Vec<GaussInt>) -> Self {
        while coeffs.last().is_some_and(GaussInt::is_zero) {
            coeffs.pop();
        }
        PiPoly { coeffs }
    }

    pub fn gauss(re: i128, im: i128) -> Self {
        Self::from_coeffs(vec![GaussInt::new(re, im)])
    }

    pub fn to_c64(&self) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * std::f64::consts::PI + C64::new(c.re as f64, c.im as f64);
        }
        acc
    }
}

impl PartialEq for PiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Add for PiPoly {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        let get = |v: &Vec<GaussInt>, i: usize| v.get(i).copied().unwrap_or_default();
        Self::from_coeffs((0..len).map(|i| get(&self.coeffs, i) + get(&o.coeffs, i)).collect())
    }
}

impl Neg for PiPoly {
    type Output = Self;
    fn neg(self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| GaussInt::new(-c.re, -c.im)).collect())
    }
}

impl Sub for PiPoly {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for PiPoly {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return PiPoly::default();
        }
        let mut out = vec![GaussInt::default(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j] + *a * *b;
            }
        }
        Self::from_coeffs(out)
    }
}

impl Zero for PiPoly {
    fn zero() -> Self {
        PiPoly::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for PiPoly {
    fn one() -> Self {
        Self::gauss(1, 0)
    }
}

impl Coefficient for PiPoly {
    fn from_int(n: i64) -> Self {
        Self::gauss(n as i128, 0)
    }
    fn four_pi() -> Self {
        Self::from_coeffs(vec![GaussInt::default(), GaussInt::new(4, 0)])
    }
}

/// Random expansion with Gaussian-integer entries in `[-bound, bound]`,
/// about half of them zero.
pub fn random_gauss_expansion(
    rng: &mut ChaCha8Rng,
    weight: i32,
    order: usize,
    depth: usize,
    bound: i64,
) -> ScalarExpansion<PiPoly> {
    ScalarExpansion::from_fn(weight, order, depth, |_, _| {
        if rng.random_bool(0.5) {
            PiPoly::zero()
        } else {
            PiPoly::gauss(rng.random_range(-bound..=bound) as i128, rng.random_range(-bound..=bound) as i128)
        }
    })
}

/// The same data with `f64` coefficients.
pub fn random_c64_expansion(
    rng: &mut ChaCha8Rng,
    weight: i32,
    order: usize,
    depth: usize,
    bound: i64,
) -> ScalarExpansion {
    ScalarExpansion::from_fn(weight, order, depth, |_, _| {
        if rng.random_bool(0.5) {
            C64::new(0.0, 0.0)
        } else {
            C64::new(rng.random_range(-bound..=bound) as f64, rng.random_range(-bound..=bound) as f64)
        }
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Exact `E_2` as a `pi`-polynomial expansion scaled by `pi`, so that the
/// `-3/pi` entry becomes the integer `-3`: returns `pi E_2`.
pub fn pi_times_e2(order: usize) -> ScalarExpansion<PiPoly> {
    let pi = PiPoly::from_coeffs(vec![GaussInt::default(), GaussInt::new(1, 0)]);
    ScalarExpansion::from_fn(2, order, 1, |r, n| match (r, n) {
        (0, 0) => pi.clone(),
        (0, n) => {
            let s: i128 = (1..=n as i128).filter(|d| n as i128 % d == 0).sum();
            pi.clone() * PiPoly::gauss(-24 * s, 0)
        }
        (1, 0) => PiPoly::gauss(-3, 0),
        _ => PiPoly::zero(),
    })
}
