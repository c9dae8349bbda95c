//! The symmetric-power type `sym^m`: group elements, Moebius and slash
//! actions on `C[X]_m`-valued functions, the frame forms `e_{j,m-j}`, and
//! vector-valued forms stored in frame coordinates.
//!
//! The frame form
//!
//! ```text
//! e_{j,m-j}(tau) = (-1)^{m-j} / j! * y^{j-m} (X - tau)^j (X - conj tau)^{m-j}
//! ```
//!
//! has weight `m - 2j` and is fixed by the weight `m - 2j`, type `m` slash
//! action of every real group element. A form of weight `k` and type `m` is
//! `sum_j e_{j,m-j} f_j` with scalar `f_j` of weight `k - m + 2j`.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qyseries::{EvalPoint, ScalarExpansion};
use crate::specfun::C64;

const DET_TOLERANCE: f64 = 1e-12;

/// Real 2x2 matrix of determinant one, `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GroupElement {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if det.is_nan() || (det - 1.0).abs() > DET_TOLERANCE {
            return Err(Error::InvalidGroupElement(det));
        }
        Ok(GroupElement { a, b, c, d })
    }

    pub fn identity() -> Self {
        GroupElement { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// `S = [[0, -1], [1, 0]]`.
    pub fn s() -> Self {
        GroupElement { a: 0.0, b: -1.0, c: 1.0, d: 0.0 }
    }

    /// `T = [[1, 1], [0, 1]]`.
    pub fn t() -> Self {
        Self::translation(1.0)
    }

    pub fn translation(x: f64) -> Self {
        GroupElement { a: 1.0, b: x, c: 0.0, d: 1.0 }
    }

    /// `diag(sqrt t, 1/sqrt t)`, acting on `H` as `tau -> t tau`.
    pub fn dilation(t: f64) -> Self {
        let r = t.sqrt();
        GroupElement { a: r, b: 0.0, c: 0.0, d: 1.0 / r }
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = theta.sin_cos();
        GroupElement { a: c, b: -s, c: s, d: c }
    }

    /// `N(x) A(t) K(theta)`.
    pub fn iwasawa(x: f64, t: f64, theta: f64) -> Self {
        Self::translation(x).compose(&Self::dilation(t)).compose(&Self::rotation(theta))
    }

    /// Matrix product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        GroupElement {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    pub fn inverse(&self) -> Self {
        GroupElement { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// `c tau + d`.
    pub fn automorphy(&self, tau: C64) -> C64 {
        self.c * tau + self.d
    }

    /// Seeded elements `N(x) A(t) K(theta)` with `x` in `[-2, 2]`, `t` in
    /// `[1/2, 2]` and `theta` in `[0, 2 pi)`.
    pub fn random_elements(seed: u64, count: usize) -> Vec<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let x = rng.random_range(-2.0..=2.0);
                let t = rng.random_range(0.5..=2.0);
                let theta = rng.random_range(0.0..TAU);
                Self::iwasawa(x, t, theta)
            })
            .collect()
    }
}

/// Moebius action `tau -> (a tau + b) / (c tau + d)`.
pub fn moebius(g: &GroupElement, point: &EvalPoint) -> Result<EvalPoint> {
    let tau = point.tau();
    EvalPoint::from_tau((g.a * tau + g.b) / g.automorphy(tau))
}

/// Polynomial of degree at most `m` in `X`; coefficient of `X^a` at index `a`.
#[derive(Debug, Clone, PartialEq)]
pub struct XPolynomial {
    coeffs: Vec<C64>,
}

impl XPolynomial {
    pub fn zero(m: usize) -> Self {
        XPolynomial { coeffs: vec![C64::new(0.0, 0.0); m + 1] }
    }

    pub fn from_coeffs(coeffs: Vec<C64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Dimension("polynomial needs at least one coefficient".into()));
        }
        Ok(XPolynomial { coeffs })
    }

    /// `value * X^a` in `C[X]_m`.
    pub fn monomial(a: usize, m: usize, value: C64) -> Result<Self> {
        if a > m {
            return Err(Error::Index(format!("X^{a} does not lie in C[X]_{m}")));
        }
        let mut p = Self::zero(m);
        p.coeffs[a] = value;
        Ok(p)
    }

    /// `(alpha X + beta)^e`.
    pub fn linear_power(alpha: C64, beta: C64, e: usize) -> Self {
        let mut p = XPolynomial { coeffs: vec![C64::new(1.0, 0.0)] };
        let linear = XPolynomial { coeffs: vec![beta, alpha] };
        for _ in 0..e {
            p = p.mul(&linear);
        }
        p
    }

    pub fn m(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize) -> C64 {
        self.coeffs.get(a).copied().unwrap_or_default()
    }

    fn check_same_m(&self, other: &Self) -> Result<()> {
        if self.m() != other.m() {
            return Err(Error::Dimension(format!("C[X]_{} vs C[X]_{}", self.m(), other.m())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_m(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(XPolynomial { coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_m(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(XPolynomial { coeffs })
    }

    pub fn scale(&self, factor: C64) -> Self {
        XPolynomial { coeffs: self.coeffs.iter().map(|c| c * factor).collect() }
    }

    /// Product in `C[X]_{m1 + m2}`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        XPolynomial { coeffs }
    }

    /// View in `C[X]_m` for a larger `m`.
    pub fn widen(&self, m: usize) -> Result<Self> {
        if m < self.m() {
            return Err(Error::Dimension(format!("cannot narrow C[X]_{} to C[X]_{m}", self.m())));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(m + 1, C64::new(0.0, 0.0));
        Ok(XPolynomial { coeffs })
    }

    pub fn eval(&self, x: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * x + c)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).map(|a| (self.coeff(a) - other.coeff(a)).norm()).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> XPolynomialJson {
        XPolynomialJson { m: self.m(), coeffs: self.coeffs.iter().map(|c| (c.re, c.im)).collect() }
    }
}

/// Wire form `{"m": m, "coeffs": [[re, im], ...]}`, index `a` holding `X^a`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct XPolynomialJson {
    pub m: usize,
    pub coeffs: Vec<(f64, f64)>,
}

impl Serialize for XPolynomial {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for XPolynomial {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = XPolynomialJson::deserialize(deserializer)?;
        if json.coeffs.len() != json.m + 1 {
            return Err(serde::de::Error::custom(format!(
                "expected {} coefficients, found {}",
                json.m + 1,
                json.coeffs.len()
            )));
        }
        Ok(XPolynomial { coeffs: json.coeffs.iter().map(|&(re, im)| C64::new(re, im)).collect() })
    }
}

/// `(cX + d)^m p((aX + b)/(cX + d))`, expanded.
pub fn act_on_x(g: &GroupElement, p: &XPolynomial) -> XPolynomial {
    let m = p.m();
    let mut out = XPolynomial::zero(m);
    for (a, coeff) in p.coeffs().iter().enumerate() {
        if *coeff == C64::new(0.0, 0.0) {
            continue;
        }
        let num = XPolynomial::linear_power(C64::new(g.a, 0.0), C64::new(g.b, 0.0), a);
        let den = XPolynomial::linear_power(C64::new(g.c, 0.0), C64::new(g.d, 0.0), m - a);
        for (i, c) in num.mul(&den).coeffs().iter().enumerate() {
            out.coeffs[i] += coeff * c;
        }
    }
    out
}

/// `(F|_{k,m} g)(tau) = (cX + d)^m (c tau + d)^{-k} F(g tau)(g X)`.
pub fn slash_value<F>(f: F, k: i32, m: usize, g: &GroupElement, point: &EvalPoint) -> Result<XPolynomial>
where
    F: Fn(&EvalPoint) -> Result<XPolynomial>,
{
    let image = moebius(g, point)?;
    let value = f(&image)?;
    if value.m() != m {
        return Err(Error::Dimension(format!("expected C[X]_{m}, got C[X]_{}", value.m())));
    }
    let factor = g.automorphy(point.tau()).powi(-k);
    Ok(act_on_x(g, &value).scale(factor))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Closed form of `e_{j,m-j}(tau)`.
pub fn frame_value(j: usize, m: usize, point: &EvalPoint) -> Result<XPolynomial> {
    if j > m {
        return Err(Error::Index(format!("frame index j = {j} exceeds m = {m}")));
    }
    let tau = point.tau();
    let sign = if (m - j).is_multiple_of(2) { 1.0 } else { -1.0 };
    let scalar = sign / factorial(j) * point.y().powi(j as i32 - m as i32);
    let one = C64::new(1.0, 0.0);
    let holo = XPolynomial::linear_power(one, -tau, j);
    let anti = XPolynomial::linear_power(one, -tau.conj(), m - j);
    Ok(holo.mul(&anti).scale(C64::new(scalar, 0.0)))
}

/// Matrix whose column `j` holds the monomial coefficients of `e_{j,m-j}(tau)`.
pub fn frame_matrix(m: usize, point: &EvalPoint) -> DMatrix<C64> {
    let mut matrix = DMatrix::zeros(m + 1, m + 1);
    for j in 0..=m {
        let column = frame_value(j, m, point).expect("j <= m");
        for (a, c) in column.coeffs().iter().enumerate() {
            matrix[(a, j)] = *c;
        }
    }
    matrix
}

/// Coordinates of `p` with respect to the frame at `tau`.
pub fn frame_coordinates(p: &XPolynomial, point: &EvalPoint) -> Result<Vec<C64>> {
    let m = p.m();
    let rhs = DVector::from_column_slice(p.coeffs());
    frame_matrix(m, point)
        .lu()
        .solve(&rhs)
        .map(|v| v.iter().copied().collect())
        .ok_or_else(|| Error::Dimension(format!("frame matrix singular at {}", point.tau())))
}

/// `L = -2i y^2 d/d(conj tau)` applied to a polynomial-valued function by
/// fourth-order central differences of step `h`.
pub fn numeric_lower<F>(f: F, point: &EvalPoint, h: f64) -> Result<XPolynomial>
where
    F: Fn(&EvalPoint) -> Result<XPolynomial>,
{
    let (dx, dy) = partials(&f, point, h)?;
    // d/d(conj tau) = (d/dx + i d/dy) / 2
    let dbar = dx.add(&dy.scale(C64::new(0.0, 1.0)))?.scale(C64::new(0.5, 0.0));
    let y = point.y();
    Ok(dbar.scale(C64::new(0.0, -2.0 * y * y)))
}

/// `R_k = 2i d/dtau + k/y` by fourth-order central differences of step `h`.
pub fn numeric_raise<F>(f: F, k: i32, point: &EvalPoint, h: f64) -> Result<XPolynomial>
where
    F: Fn(&EvalPoint) -> Result<XPolynomial>,
{
    let (dx, dy) = partials(&f, point, h)?;
    // d/dtau = (d/dx - i d/dy) / 2
    let d = dx.sub(&dy.scale(C64::new(0.0, 1.0)))?.scale(C64::new(0.5, 0.0));
    let value = f(point)?;
    d.scale(C64::new(0.0, 2.0)).add(&value.scale(C64::new(k as f64 / point.y(), 0.0)))
}

fn partials<F>(f: &F, point: &EvalPoint, h: f64) -> Result<(XPolynomial, XPolynomial)>
where
    F: Fn(&EvalPoint) -> Result<XPolynomial>,
{
    let (x, y) = (point.x(), point.y());
    // fourth-order central stencil
    let stencil = |shift: &dyn Fn(f64) -> Result<EvalPoint>| -> Result<XPolynomial> {
        let near = f(&shift(h)?)?.sub(&f(&shift(-h)?)?)?;
        let far = f(&shift(2.0 * h)?)?.sub(&f(&shift(-2.0 * h)?)?)?;
        Ok(near.scale(C64::new(8.0, 0.0)).sub(&far)?.scale(C64::new(1.0 / (12.0 * h), 0.0)))
    };
    let dx = stencil(&|t| EvalPoint::new(x + t, y))?;
    let dy = stencil(&|t| EvalPoint::new(x, y + t))?;
    Ok((dx, dy))
}

/// Vector-valued almost holomorphic form of weight `k` and type `sym^m`,
/// `F = sum_j e_{j,m-j} f_j`, with `f_j` of weight `k - m + 2j`.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorForm {
    weight: i32,
    frame: Vec<ScalarExpansion>,
}

impl VectorForm {
    pub fn new(weight: i32, frame: Vec<ScalarExpansion>) -> Result<Self> {
        if frame.is_empty() {
            return Err(Error::Dimension("a vector form needs m + 1 >= 1 components".into()));
        }
        let m = frame.len() - 1;
        for (j, f) in frame.iter().enumerate() {
            let expected = component_weight(weight, m, j);
            if f.weight() != expected {
                return Err(Error::WeightMismatch { left: f.weight(), right: expected });
            }
        }
        Ok(VectorForm { weight, frame })
    }

    pub fn zero(m: usize, weight: i32, order: usize) -> Self {
        let frame = (0..=m).map(|j| ScalarExpansion::zero(component_weight(weight, m, j), order)).collect();
        VectorForm { weight, frame }
    }

    /// `e_{j,m-j}` itself, of weight `m - 2j`.
    pub fn pure_frame(j: usize, m: usize, order: usize) -> Result<Self> {
        if j > m {
            return Err(Error::Index(format!("frame index j = {j} exceeds m = {m}")));
        }
        let weight = m as i32 - 2 * j as i32;
        let mut form = Self::zero(m, weight, order);
        form.frame[j] = ScalarExpansion::one(0, order);
        Ok(form)
    }

    pub fn m(&self) -> usize {
        self.frame.len() - 1
    }

    pub fn weight(&self) -> i32 {
        self.weight
    }

    pub fn component(&self, j: usize) -> Option<&ScalarExpansion> {
        self.frame.get(j)
    }

    pub fn components(&self) -> &[ScalarExpansion] {
        &self.frame
    }

    pub fn order(&self) -> usize {
        self.frame.iter().map(ScalarExpansion::order).min().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.frame.iter().all(ScalarExpansion::is_zero)
    }

    /// Largest stored coefficient magnitude over all components.
    pub fn max_abs(&self) -> f64 {
        self.frame.iter().map(ScalarExpansion::max_abs).fold(0.0, f64::max)
    }

    /// `sum_j f_j(tau) e_{j,m-j}(tau)` with the summed component tail bounds
    /// weighted by the frame polynomial sizes.
    pub fn eval(&self, point: &EvalPoint) -> Result<(XPolynomial, f64)> {
        let m = self.m();
        let mut out = XPolynomial::zero(m);
        let mut tail = 0.0;
        for (j, f) in self.frame.iter().enumerate() {
            let value = f.eval(point);
            let frame = frame_value(j, m, point)?;
            out = out.add(&frame.scale(value.value))?;
            tail += value.tail_bound * frame.max_abs();
        }
        Ok((out, tail))
    }

    /// Lowering in frame coordinates: component `j` of the result is
    /// `L f_j + j (m - j + 1) f_{j-1}`.
    pub fn lower(&self) -> Result<Self> {
        let m = self.m();
        let mut frame = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let mut component = self.frame[j].lower();
            if j > 0 {
                let shift = (j * (m - j + 1)) as f64;
                let moved = self.frame[j - 1].scale(&C64::new(shift, 0.0));
                component = component.checked_add(&moved)?;
            }
            frame.push(component);
        }
        VectorForm::new(self.weight - 2, frame)
    }

    /// Raising in frame coordinates: component `j` of the result is
    /// `R f_j + f_{j+1}`.
    pub fn raise(&self) -> Result<Self> {
        let m = self.m();
        let mut frame = Vec::with_capacity(m + 1);
        for j in 0..=m {
            let mut component = self.frame[j].raise();
            if j < m {
                component = component.checked_add(&self.frame[j + 1])?;
            }
            frame.push(component);
        }
        VectorForm::new(self.weight + 2, frame)
    }

    pub fn to_json(&self) -> VectorFormJson {
        VectorFormJson {
            m: self.m(),
            weight: self.weight,
            frame: self.frame.iter().map(ScalarExpansion::to_json).collect(),
        }
    }

    pub fn from_json(json: &VectorFormJson) -> Result<Self> {
        if json.frame.len() != json.m + 1 {
            return Err(Error::Parse(format!(
                "m = {} needs {} frame components, found {}",
                json.m,
                json.m + 1,
                json.frame.len()
            )));
        }
        let frame = json.frame.iter().map(ScalarExpansion::from_json).collect::<Result<Vec<_>>>()?;
        VectorForm::new(json.weight, frame)
    }
}

/// Weight carried by the scalar multiplying `e_{j,m-j}` in a form of weight `k`.
pub fn component_weight(k: i32, m: usize, j: usize) -> i32 {
    k - m as i32 + 2 * j as i32
}

/// Wire form `{"m", "weight", "frame": [expansion, ...]}`, components `j = 0..m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorFormJson {
    pub m: usize,
    pub weight: i32,
    pub frame: Vec<crate::qyseries::ScalarExpansionJson>,
}

impl Serialize for VectorForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for VectorForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let json = VectorFormJson::deserialize(deserializer)?;
        VectorForm::from_json(&json).map_err(serde::de::Error::custom)
    }
}
