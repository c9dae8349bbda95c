//! Truncated expansions in `C[[q]][1/y]` and the exact Maass operators on them.
//!
//! An almost holomorphic form of weight `k` is stored as
//! `sum_{r,n} c(r,n) y^{-r} q^n` with `q = e(tau)`. Lowering and raising act
//! monomial by monomial:
//!
//! ```text
//! L (y^-r q^n) = -r y^{-(r-1)} q^n
//! R_k (y^-r q^n) = -4 pi n y^-r q^n + (k - r) y^{-(r+1)} q^n
//! ```
//!
//! so every operator identity between expansions is a statement about
//! coefficients, with no differentiation or evaluation involved.

use std::f64::consts::PI;
use std::fmt::Debug;
use std::ops::{Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::C64;

/// Default q-truncation order; `|q|^60 < 1e-16` once `Im(tau) >= 0.6`.
pub const DEFAULT_ORDER: usize = 60;

/// Coefficient ring of an expansion.
///
/// `four_pi` is the constant multiplying `n` in the raising operator. Exact
/// rings used in tests may represent it symbolically.
pub trait Coefficient: Clone + PartialEq + Debug + Zero + One + Sub<Output = Self> + Neg<Output = Self> {
    fn from_int(n: i64) -> Self;
    fn four_pi() -> Self;
}

impl Coefficient for C64 {
    fn from_int(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }

    fn four_pi() -> Self {
        C64::new(4.0 * PI, 0.0)
    }
}

/// A point `tau = x + iy` of the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    tau: C64,
}

impl EvalPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        Self::from_tau(C64::new(x, y))
    }

    pub fn from_tau(tau: C64) -> Result<Self> {
        if !(tau.im > 0.0 && tau.im.is_finite() && tau.re.is_finite()) {
            return Err(Error::NotInUpperHalfPlane(tau.to_string()));
        }
        Ok(EvalPoint { tau })
    }

    /// `tau = i`.
    pub fn i() -> Self {
        EvalPoint { tau: C64::new(0.0, 1.0) }
    }

    pub fn tau(&self) -> C64 {
        self.tau
    }

    pub fn x(&self) -> f64 {
        self.tau.re
    }

    pub fn y(&self) -> f64 {
        self.tau.im
    }

    /// `q = e(tau) = exp(2 pi i tau)`.
    pub fn q(&self) -> C64 {
        (C64::new(0.0, 2.0 * PI) * self.tau).exp()
    }
}

/// A value together with an estimate of the truncation error behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: C64,
    pub tail_bound: f64,
}

/// Truncated element of `C[[q]][1/y]` carrying a weight tag.
///
/// Row `r` holds the q-series multiplying `y^-r`; every row has `order + 1`
/// entries. Trailing all-zero rows are never stored, so `depth()` is the
/// exact power of `1/y` present (zero for the zero expansion).
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarExpansion<C = C64> {
    weight: i32,
    order: usize,
    rows: Vec<Vec<C>>,
}

impl<C: Coefficient> ScalarExpansion<C> {
    pub fn zero(weight: i32, order: usize) -> Self {
        ScalarExpansion { weight, order, rows: vec![vec![C::zero(); order + 1]] }
    }

    pub fn constant(value: C, weight: i32, order: usize) -> Self {
        Self::monomial(0, 0, value, weight, order)
    }

    pub fn one(weight: i32, order: usize) -> Self {
        Self::constant(C::one(), weight, order)
    }

    /// `value * y^-r q^n`; zero when `n` exceeds the order.
    pub fn monomial(r: usize, n: usize, value: C, weight: i32, order: usize) -> Self {
        let mut out = Self::zero(weight, order);
        if n <= order {
            out.rows.resize(r + 1, vec![C::zero(); order + 1]);
            out.rows[r][n] = value;
            out.normalize();
        }
        out
    }

    /// Build from rows indexed `[r][n]`; every row must have `order + 1` entries.
    pub fn from_rows(weight: i32, order: usize, rows: Vec<Vec<C>>) -> Result<Self> {
        if rows.iter().any(|row| row.len() != order + 1) {
            return Err(Error::Dimension(format!("every row needs {} coefficients", order + 1)));
        }
        let mut out = ScalarExpansion { weight, order, rows };
        if out.rows.is_empty() {
            out.rows.push(vec![C::zero(); order + 1]);
        }
        out.normalize();
        Ok(out)
    }

    pub fn from_fn(weight: i32, order: usize, depth: usize, mut f: impl FnMut(usize, usize) -> C) -> Self {
        let rows = (0..=depth).map(|r| (0..=order).map(|n| f(r, n)).collect()).collect();
        let mut out = ScalarExpansion { weight, order, rows };
        out.normalize();
        out
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn depth(&self) -> usize {
        self.rows.len() - 1
    }

    /// Coefficient of `y^-r q^n`, zero outside the stored range.
    pub fn coeff(&self, r: usize, n: usize) -> C {
        self.rows.get(r).and_then(|row| row.get(n)).cloned().unwrap_or_else(C::zero)
    }

    pub fn rows(&self) -> &[Vec<C>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|row| row.iter().all(|c| c.is_zero()))
    }

    /// Same coefficients with a different weight tag.
    pub fn with_weight(mut self, weight: i32) -> Self {
        self.weight = weight;
        self
    }

    /// Drop coefficients beyond `q^order`.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let rows = self.rows.iter().map(|row| row[..=order].to_vec()).collect();
        let mut out = ScalarExpansion { weight: self.weight, order, rows };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        while self.rows.len() > 1 && self.rows.last().is_some_and(|row| row.iter().all(|c| c.is_zero())) {
            self.rows.pop();
        }
    }

    pub fn scale(&self, factor: &C) -> Self {
        let rows = self.rows.iter().map(|row| row.iter().map(|c| c.clone() * factor.clone()).collect()).collect();
        let mut out = ScalarExpansion { weight: self.weight, order: self.order, rows };
        out.normalize();
        out
    }

    fn combine(&self, other: &Self, sign: &C) -> Result<Self> {
        if self.weight != other.weight {
            return Err(Error::WeightMismatch { left: self.weight, right: other.weight });
        }
        let order = self.order.min(other.order);
        let depth = self.depth().max(other.depth());
        let rows = (0..=depth)
            .map(|r| (0..=order).map(|n| self.coeff(r, n) + sign.clone() * other.coeff(r, n)).collect())
            .collect();
        let mut out = ScalarExpansion { weight: self.weight, order, rows };
        out.normalize();
        Ok(out)
    }

    /// Coefficientwise sum; the order is the smaller of the two.
    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.combine(other, &C::one())
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, &-C::one())
    }

    /// Truncated Cauchy product in both `q` and `1/y`; weights add.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let depth = self.depth() + other.depth();
        let mut rows = vec![vec![C::zero(); order + 1]; depth + 1];
        for (r1, row1) in self.rows.iter().enumerate() {
            for (r2, row2) in other.rows.iter().enumerate() {
                let target = &mut rows[r1 + r2];
                for (n1, a) in row1.iter().enumerate().take(order + 1) {
                    if a.is_zero() {
                        continue;
                    }
                    for (n2, b) in row2.iter().enumerate().take(order + 1 - n1) {
                        target[n1 + n2] = target[n1 + n2].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        let mut out = ScalarExpansion { weight: self.weight + other.weight, order, rows };
        out.normalize();
        out
    }

    /// Maass lowering `L_k = -2i y^2 d/d(conj tau)`; weight `k -> k - 2`.
    pub fn lower(&self) -> Self {
        let rows: Vec<Vec<C>> = self
            .rows
            .iter()
            .enumerate()
            .skip(1)
            .map(|(r, row)| {
                let factor = -C::from_int(r as i64);
                row.iter().map(|c| factor.clone() * c.clone()).collect()
            })
            .collect();
        let mut out = ScalarExpansion { weight: self.weight - 2, order: self.order, rows };
        if out.rows.is_empty() {
            out.rows.push(vec![C::zero(); self.order + 1]);
        }
        out.normalize();
        out
    }

    /// Maass raising `R_k = 2i d/dtau + k/y`; weight `k -> k + 2`.
    pub fn raise(&self) -> Self {
        let k = self.weight as i64;
        let depth = self.depth() + 1;
        let mut rows = vec![vec![C::zero(); self.order + 1]; depth + 1];
        let four_pi = C::four_pi();
        for (r, row) in self.rows.iter().enumerate() {
            let shift = C::from_int(k - r as i64);
            for (n, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if n > 0 {
                    let holo = -(four_pi.clone() * C::from_int(n as i64)) * c.clone();
                    rows[r][n] = rows[r][n].clone() + holo;
                }
                rows[r + 1][n] = rows[r + 1][n].clone() + shift.clone() * c.clone();
            }
        }
        let mut out = ScalarExpansion { weight: self.weight + 2, order: self.order, rows };
        out.normalize();
        out
    }

    /// `Delta_k = -R_{k-2} L_k`; weight preserved.
    pub fn laplace(&self) -> Self {
        let raised = self.lower().raise();
        raised.scale(&-C::one())
    }
}

impl ScalarExpansion<C64> {
    /// Value at `tau` together with a bound on the omitted q-tail.
    pub fn eval(&self, point: &EvalPoint) -> Evaluation {
        let q = point.q();
        let inv_y = 1.0 / point.y();
        let mut value = C64::new(0.0, 0.0);
        let mut y_power = 1.0;
        let mut tail_scale: f64 = 0.0;
        for row in &self.rows {
            let mut acc = C64::new(0.0, 0.0);
            for c in row.iter().rev() {
                acc = acc * q + c;
            }
            value += acc * y_power;
            tail_scale = tail_scale.max(row[self.order].norm() * y_power);
            y_power *= inv_y;
        }
        let q_abs = q.norm();
        let tail_bound = tail_scale * q_abs.powi(self.order as i32 + 1) / (1.0 - q_abs);
        Evaluation { value, tail_bound }
    }

    pub fn max_abs(&self) -> f64 {
        self.rows.iter().flat_map(|row| row.iter()).fold(0.0, |m, c| m.max(c.norm()))
    }

    /// Largest coefficient difference, comparing over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let order = self.order.min(other.order);
        let depth = self.depth().max(other.depth());
        let mut worst: f64 = 0.0;
        for r in 0..=depth {
            for n in 0..=order {
                worst = worst.max((self.coeff(r, n) - other.coeff(r, n)).norm());
            }
        }
        worst
    }

    /// Zero every coefficient below `rel_tol * max|c|` and re-minimize the
    /// depth. Meant for expansions built from floating-point input.
    pub fn trim(&self, rel_tol: f64) -> Self {
        let cutoff = rel_tol * self.max_abs();
        let rows = self
            .rows
            .iter()
            .map(|row| row.iter().map(|c| if c.norm() <= cutoff { C64::new(0.0, 0.0) } else { *c }).collect())
            .collect();
        let mut out = ScalarExpansion { weight: self.weight, order: self.order, rows };
        out.normalize();
        out
    }

    pub fn to_json(&self) -> ScalarExpansionJson {
        let mut coeffs = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            for (n, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    coeffs.push((r, n, c.re, c.im));
                }
            }
        }
        ScalarExpansionJson { weight: self.weight, depth: self.depth(), order: self.order, coeffs }
    }

    pub fn from_json(json: &ScalarExpansionJson) -> Result<Self> {
        let mut out = Self::zero(json.weight, json.order);
        out.rows = vec![vec![C64::new(0.0, 0.0); json.order + 1]; json.depth + 1];
        for &(r, n, re, im) in &json.coeffs {
            if r > json.depth || n > json.order {
                return Err(Error::Parse(format!(
                    "coefficient ({r}, {n}) outside depth {} / order {}",
                    json.depth, json.order
                )));
            }
            out.rows[r][n] = C64::new(re, im);
        }
        out.normalize();
        if out.depth() != json.depth {
            return Err(Error::Parse(format!("declared depth {} but top nonzero row is {}", json.depth, out.depth())));
        }
        Ok(out)
    }
}

/// Wire form: `{"weight", "depth", "order", "coeffs": [[r, n, re, im], ...]}`
/// with nonzero coefficients sorted by `(r, n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarExpansionJson {
    pub weight: i32,
    pub depth: usize,
    pub order: usize,
    pub coeffs: Vec<(usize, usize, f64, f64)>,
}

impl Serialize for ScalarExpansion<C64> {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ScalarExpansion<C64> {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = ScalarExpansionJson::deserialize(deserializer)?;
        ScalarExpansion::from_json(&json).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn inv_y(value: f64, weight: i32) -> ScalarExpansion {
        ScalarExpansion::monomial(1, 0, c(value), weight, 4)
    }

    #[test]
    fn additive_identity_and_cancellation() {
        let f = ScalarExpansion::from_fn(2, 5, 2, |r, n| c((r * 7 + n) as f64));
        let zero = ScalarExpansion::zero(2, 5);
        assert_eq!(f.checked_add(&zero).unwrap(), f);

        let sum = inv_y(1.0, 0).checked_add(&inv_y(-1.0, 0)).unwrap();
        assert!(sum.is_zero());
        assert_eq!(sum.depth(), 0);
    }

    #[test]
    fn add_rejects_weight_mismatch() {
        let err = ScalarExpansion::<C64>::one(2, 3).checked_add(&ScalarExpansion::one(4, 3));
        assert_eq!(err, Err(Error::WeightMismatch { left: 2, right: 4 }));
    }

    #[test]
    fn add_uses_smaller_order() {
        let f = ScalarExpansion::<C64>::one(0, 7);
        let g = ScalarExpansion::<C64>::one(0, 3);
        assert_eq!(f.checked_add(&g).unwrap().order(), 3);
    }

    #[test]
    fn multiplication_rules() {
        let f = ScalarExpansion::from_fn(2, 5, 1, |r, n| c((1 + r + n) as f64));
        assert_eq!(f.mul(&ScalarExpansion::one(0, 5)), f);

        let p = inv_y(1.0, 3).mul(&inv_y(1.0, -1));
        assert_eq!(p.depth(), 2);
        assert_eq!(p.weight(), 2);
        assert_eq!(p.coeff(2, 0), c(1.0));

        let q1 = ScalarExpansion::monomial(0, 1, c(1.0), 0, 2);
        let q2 = q1.mul(&q1);
        assert_eq!(q2.coeff(0, 2), c(1.0));
        let q4 = q2.mul(&q2);
        assert!(q4.is_zero());
    }

    #[test]
    fn evaluation_basics() {
        let one = ScalarExpansion::<C64>::one(0, 10);
        let p = EvalPoint::new(0.3, 0.9).unwrap();
        assert_eq!(one.eval(&p).value, c(1.0));
        let f = inv_y(-3.0 / PI, 2);
        assert!((f.eval(&EvalPoint::i()).value - c(-3.0 / PI)).norm() < 1e-16);
    }

    #[test]
    fn lowering_rules() {
        assert!(ScalarExpansion::<C64>::one(0, 4).lower().is_zero());
        let y2 = ScalarExpansion::monomial(2, 0, c(1.0), 4, 4);
        let lowered = y2.lower();
        assert_eq!(lowered, ScalarExpansion::monomial(1, 0, c(-2.0), 2, 4));
    }

    #[test]
    fn raising_rules() {
        assert!(ScalarExpansion::<C64>::one(0, 4).raise().is_zero());
        let raised = ScalarExpansion::<C64>::one(2, 4).raise();
        assert_eq!(raised, ScalarExpansion::monomial(1, 0, c(2.0), 4, 4));
        let qn = ScalarExpansion::monomial(0, 3, c(1.0), 0, 4).raise();
        assert_eq!(qn.coeff(0, 3), c(-12.0 * PI));
        assert_eq!(qn.depth(), 0);
    }

    #[test]
    fn laplace_of_inverse_y() {
        // Delta_k(y^-1) = -R_{k-2}(-1) = (k - 2) y^-1
        assert!(inv_y(1.0, 2).laplace().is_zero());
        assert_eq!(inv_y(1.0, 1).laplace(), inv_y(-1.0, 1));
        assert_eq!(inv_y(1.0, 4).laplace(), inv_y(2.0, 4));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let f = ScalarExpansion::from_fn(-2, 3, 2, |r, n| c(if (r + n) % 2 == 0 { 1.5 } else { 0.0 }));
        let text = serde_json::to_string(&f).unwrap();
        let back: ScalarExpansion = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);

        let bad = r#"{"weight":0,"depth":3,"order":2,"coeffs":[[0,0,1.0,0.0]]}"#;
        assert!(serde_json::from_str::<ScalarExpansion>(bad).is_err());
        let out_of_range = r#"{"weight":0,"depth":0,"order":2,"coeffs":[[0,5,1.0,0.0]]}"#;
        assert!(serde_json::from_str::<ScalarExpansion>(out_of_range).is_err());
    }

    #[test]
    fn trim_restores_minimal_depth() {
        let f = ScalarExpansion::from_fn(0, 2, 1, |r, _| c(if r == 0 { 1.0 } else { 1e-17 }));
        assert_eq!(f.depth(), 1);
        assert_eq!(f.trim(1e-14).depth(), 0);
    }

    #[test]
    fn upper_half_plane_is_enforced() {
        assert!(EvalPoint::new(0.0, 0.0).is_err());
        assert!(EvalPoint::new(1.0, -1.0).is_err());
    }
}
