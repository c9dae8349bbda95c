//! Real-analytic Eisenstein series, scalar and of type `sym^m`.
//!
//! Scalar series `E_k(tau, s) = sum y^s |_k gamma` over `Gamma_inf \ SL2(Z)`
//! have two evaluators: a truncated coset sum, valid where the sum converges,
//! and the Fourier expansion
//!
//! ```text
//! E_k(tau, s) = y^s + C(k, s) y^{1-k-s}
//!   + sum_{n != 0} (-1)^{k/2} pi^{k/2+s} / zeta(k+2s) sigma_{k-1+2s}(|n|) |n|^{-k/2-s}
//!       / Gamma(s + (1 + sgn n) k/2) y^{-k/2} W_{sgn(n) k/2, (k-1)/2+s}(4 pi |n| y) e(nx)
//! C(k, s) = (-1)^{k/2} 2^{2-k-2s} pi Gamma(k-1+2s) zeta(k-1+2s)
//!       / (Gamma(s) Gamma(k+s) zeta(k+2s))
//! ```
//!
//! which continues `E_k(tau, .)` meromorphically. Vector-valued series are
//! summed directly or assembled from scalar ones through the frame.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qyseries::{EvalPoint, Evaluation, ScalarExpansion};
use crate::specfun::{gamma, rgamma, sigma, whittaker_w, zeta, DivisorSumSpec, C64};
use crate::symframe::{act_on_x, frame_value, GroupElement, VectorForm, XPolynomial};

/// Shifts used for the symmetric limit at removable singularities of `C(k, s)`.
const EPS_COARSE: f64 = 1e-4;
const EPS_FINE: f64 = 1e-5;

/// Radius of the contour used by [`residue_at`].
pub const RESIDUE_RADIUS: f64 = 0.05;

/// Parameters `(k, m, j, s)` of `E_k(tau, s)` (`m = 0`) or `E_{k,m}(tau, j, s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EisensteinSpec {
    pub k: i32,
    pub m: usize,
    pub j: usize,
    pub s: C64,
}

impl EisensteinSpec {
    pub fn scalar(k: i32, s: C64) -> Self {
        EisensteinSpec { k, m: 0, j: 0, s }
    }

    pub fn vector(k: i32, m: usize, j: usize, s: C64) -> Result<Self> {
        if j > m {
            return Err(Error::Index(format!("frame index j = {j} exceeds m = {m}")));
        }
        Ok(EisensteinSpec { k, m, j, s })
    }

    pub fn with_s(self, s: C64) -> Self {
        EisensteinSpec { s, ..self }
    }

    fn check_parity(&self) -> Result<()> {
        if (self.k - self.m as i32).rem_euclid(2) != 0 {
            return Err(Error::Parity(format!("k = {} and m = {} differ in parity", self.k, self.m)));
        }
        Ok(())
    }

    fn check_convergence(&self) -> Result<()> {
        let lhs = 2.0 * self.s.re + self.k as f64;
        let bound = 2.0 + self.m as f64;
        if lhs.is_nan() || lhs <= bound {
            return Err(Error::Divergence(format!("coset sum needs 2 Re(s) + k > {bound}, got {lhs}")));
        }
        Ok(())
    }

    fn require_scalar(&self, routine: &str) -> Result<()> {
        if self.m != 0 {
            return Err(Error::Dimension(format!("{routine} takes m = 0, got m = {}", self.m)));
        }
        Ok(())
    }
}

/// One coset of `Gamma_inf \ SL2(Z)`: the bottom row `(c, d)` and a completion
/// `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Coset {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Coset {
    pub fn matrix(&self) -> GroupElement {
        GroupElement { a: self.a as f64, b: self.b as f64, c: self.c as f64, d: self.d as f64 }
    }
}

/// Coprime bottom rows with `max(|c|, |d|) <= R`, one per sign class,
/// ordered by `c^2 + d^2` and then lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetEnumeration {
    radius: u32,
    cosets: Vec<Coset>,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    (a, b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `(g, x, y)` with `x a + y b = g = gcd(a, b)`.
fn extended_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a, b);
    let (mut x0, mut x1) = (1, 0);
    let (mut y0, mut y1) = (0, 1);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
        (y0, y1) = (y1, y0 - q * y1);
    }
    if r0 < 0 {
        (-r0, -x0, -y0)
    } else {
        (r0, x0, y0)
    }
}

/// Completion of a coprime row with `|b|` minimal, ties broken towards `b >= 0`.
fn complete(c: i64, d: i64) -> Coset {
    if c == 0 {
        return Coset { a: 1, b: 0, c, d };
    }
    if d == 0 {
        return Coset { a: 0, b: -1, c, d };
    }
    // a d - b c = 1 from x d + y c = 1 with a = x, b = -y
    let (_, _, y) = extended_gcd(d, c);
    let period = d.abs();
    let mut b = (-y).rem_euclid(period);
    if 2 * b > period {
        b -= period;
    }
    let a = (1 + b * c) / d;
    debug_assert_eq!(a * d - b * c, 1);
    Coset { a, b, c, d }
}

impl CosetEnumeration {
    pub fn new(radius: u32) -> Result<Self> {
        if radius == 0 {
            return Err(Error::domain("enumerate_cosets", "radius must be at least 1"));
        }
        let r = radius as i64;
        let mut cosets = vec![complete(0, 1)];
        for c in 1..=r {
            for d in -r..=r {
                if gcd(c, d) == 1 {
                    cosets.push(complete(c, d));
                }
            }
        }
        cosets.sort_by_key(|g| (g.c * g.c + g.d * g.d, g.c, g.d));
        Ok(CosetEnumeration { radius, cosets })
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    pub fn pairs(&self) -> Vec<(i64, i64)> {
        self.cosets.iter().map(|g| (g.c, g.d)).collect()
    }

    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

pub fn enumerate_cosets(radius: u32) -> Result<CosetEnumeration> {
    CosetEnumeration::new(radius)
}

/// Neumaier's compensated sum, applied to real and imaginary parts separately.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: C64,
    carry: C64,
}

fn two_sum(sum: f64, carry: f64, x: f64) -> (f64, f64) {
    let t = sum + x;
    let c = if sum.abs() >= x.abs() { (sum - t) + x } else { (x - t) + sum };
    (t, carry + c)
}

impl CompensatedSum {
    pub fn add(&mut self, x: C64) {
        let (re, cre) = two_sum(self.sum.re, self.carry.re, x.re);
        let (im, cim) = two_sum(self.sum.im, self.carry.im, x.im);
        self.sum = C64::new(re, im);
        self.carry = C64::new(cre, cim);
    }

    pub fn value(&self) -> C64 {
        self.sum + self.carry
    }
}

fn compensated_poly_sum(terms: &[XPolynomial], m: usize) -> XPolynomial {
    let mut acc = vec![CompensatedSum::default(); m + 1];
    for term in terms {
        for (slot, c) in acc.iter_mut().zip(term.coeffs()) {
            slot.add(*c);
        }
    }
    XPolynomial::from_coeffs(acc.iter().map(CompensatedSum::value).collect()).expect("m + 1 >= 1 coefficients")
}

/// `(Im gamma tau)^s (c tau + d)^{-k}`.
fn scalar_term(coset: &Coset, k: i32, s: C64, tau: C64) -> C64 {
    let j = coset.c as f64 * tau + coset.d as f64;
    let im = tau.im / j.norm_sqr();
    C64::new(im, 0.0).powc(s) * j.powi(-k)
}

/// Truncated coset sum for `E_k(tau, s)`.
pub fn eis_sum(spec: &EisensteinSpec, point: &EvalPoint, radius: u32) -> Result<C64> {
    eis_sum_over(spec, point, &CosetEnumeration::new(radius)?)
}

/// [`eis_sum`] over a prebuilt enumeration.
pub fn eis_sum_over(spec: &EisensteinSpec, point: &EvalPoint, cosets: &CosetEnumeration) -> Result<C64> {
    spec.require_scalar("eis_sum")?;
    spec.check_convergence()?;
    if spec.k.rem_euclid(2) == 1 {
        return Ok(C64::new(0.0, 0.0));
    }
    let tau = point.tau();
    let terms: Vec<C64> = cosets.cosets().par_iter().map(|g| scalar_term(g, spec.k, spec.s, tau)).collect();
    let mut acc = CompensatedSum::default();
    terms.iter().for_each(|t| acc.add(*t));
    Ok(acc.value())
}

/// Constant-term coefficient `C(k, s)` evaluated directly.
fn constant_coefficient_direct(k: i32, s: C64) -> Result<C64> {
    let kf = k as f64;
    let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let power = C64::new(2.0, 0.0).powc(2.0 - kf - 2.0 * s);
    let g = gamma(kf - 1.0 + 2.0 * s)?;
    let numerator = zeta(kf - 1.0 + 2.0 * s)?;
    let denominator = zeta(kf + 2.0 * s)?;
    Ok(sign * power * PI * g * rgamma(s)? * rgamma(kf + s)? * numerator / denominator)
}

/// `C(k, s)`, with removable singularities filled in by a symmetric limit in
/// `s` extrapolated from two step sizes.
pub fn constant_coefficient(k: i32, s: C64) -> Result<C64> {
    match constant_coefficient_direct(k, s) {
        Err(Error::Pole { .. }) => {}
        other => return other,
    }
    let sides = |eps: f64| -> Result<(C64, C64)> {
        let plus = constant_coefficient_direct(k, s + eps)?;
        let minus = constant_coefficient_direct(k, s - eps)?;
        Ok(((plus + minus) * 0.5, (plus - minus) * 0.5))
    };
    let pole = || Error::pole("eis_fourier", format!("C(k = {k}, s = {s})"));
    let (sym1, anti1) = sides(EPS_COARSE).map_err(|_| pole())?;
    let (sym2, anti2) = sides(EPS_FINE).map_err(|_| pole())?;
    // near a pole the odd part scales like 1/eps
    if anti2.norm() > 2.0 * anti1.norm() + 1e-9 {
        return Err(pole());
    }
    let (e1, e2) = (EPS_COARSE * EPS_COARSE, EPS_FINE * EPS_FINE);
    Ok((sym2 * e1 - sym1 * e2) / (e1 - e2))
}

fn check_fourier_spec(spec: &EisensteinSpec) -> Result<()> {
    spec.require_scalar("eis_fourier")?;
    if spec.k < 0 || spec.k % 2 != 0 {
        return Err(Error::Unsupported {
            routine: "eis_fourier",
            detail: format!("weight k = {} must be even and non-negative", spec.k),
        });
    }
    Ok(())
}

/// Fourier evaluation of `E_k(tau, s)` with `|n| <= order`.
pub fn eis_fourier(spec: &EisensteinSpec, point: &EvalPoint, order: usize) -> Result<C64> {
    eis_fourier_with_tail(spec, point, order).map(|e| e.value)
}

/// [`eis_fourier`] together with a tail estimate: the last two retained
/// Fourier terms continued geometrically in `e^{-2 pi y}`.
pub fn eis_fourier_with_tail(spec: &EisensteinSpec, point: &EvalPoint, order: usize) -> Result<Evaluation> {
    check_fourier_spec(spec)?;
    let (k, s) = (spec.k, spec.s);
    let kf = k as f64;
    let (x, y) = (point.x(), point.y());
    let y_c = C64::new(y, 0.0);
    let mut acc = CompensatedSum::default();
    acc.add(y_c.powc(s));
    acc.add(constant_coefficient(k, s)? * y_c.powc(1.0 - kf - s));

    let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let prefactor = sign * C64::new(PI, 0.0).powc(kf / 2.0 + s) / zeta(kf + 2.0 * s)?;
    let mu = (kf - 1.0) / 2.0 + s;
    let sigma_exponent = kf - 1.0 + 2.0 * s;
    let gamma_factor = [rgamma(s)?, rgamma(s + kf)?];
    let y_factor = y.powf(-kf / 2.0);

    let mut last = 0.0;
    for n in 1..=order {
        let nf = n as f64;
        let common = prefactor
            * sigma(DivisorSumSpec::new(sigma_exponent, n as u64))?
            * C64::new(nf, 0.0).powc(-kf / 2.0 - s)
            * y_factor;
        let z = 4.0 * PI * nf * y;
        let mut pair = 0.0;
        for (positive, g) in [(false, gamma_factor[0]), (true, gamma_factor[1])] {
            if g == C64::new(0.0, 0.0) {
                continue;
            }
            let kappa = if positive { kf / 2.0 } else { -kf / 2.0 };
            let phase = C64::from_polar(1.0, if positive { 2.0 } else { -2.0 } * PI * nf * x);
            let term = common * g * whittaker_w(C64::new(kappa, 0.0), mu, z)? * phase;
            pair += term.norm();
            acc.add(term);
        }
        last = pair;
    }
    let ratio = (-2.0 * PI * y).exp();
    Ok(Evaluation { value: acc.value(), tail_bound: last * ratio / (1.0 - ratio) })
}

/// `E_2 = E_2^hol - 3/(pi y)` to q-order `order`.
pub fn e2_expansion(order: usize) -> ScalarExpansion {
    e2hol_expansion(order)
        .checked_add(&ScalarExpansion::monomial(1, 0, C64::new(-3.0 / PI, 0.0), 2, order))
        .expect("equal weights")
}

/// `E_2^hol = 1 - 24 sum sigma_1(n) q^n`.
pub fn e2hol_expansion(order: usize) -> ScalarExpansion {
    ScalarExpansion::from_fn(2, order, 0, |_, n| {
        if n == 0 {
            C64::new(1.0, 0.0)
        } else {
            let s: u64 = crate::specfun::divisors(n as u64).iter().sum();
            C64::new(-24.0 * s as f64, 0.0)
        }
    })
}

/// `E_2^vec = e_{1,0} E_2 - e_{0,1} 3/pi`, of weight 1 and type `sym^1`.
pub fn e2vec(order: usize) -> VectorForm {
    let f0 = ScalarExpansion::constant(C64::new(-3.0 / PI, 0.0), 0, order);
    VectorForm::new(1, vec![f0, e2_expansion(order)]).expect("component weights 0 and 2")
}

/// Term of a vector-valued coset sum: `(cX + d)^m (c tau + d)^{-k}
/// (Im gamma tau)^s P(gamma tau)(gamma X)`.
fn vector_term<P>(coset: &Coset, spec: &EisensteinSpec, tau: C64, seed: &P) -> Result<XPolynomial>
where
    P: Fn(&EvalPoint) -> Result<XPolynomial>,
{
    let g = coset.matrix();
    let j = g.automorphy(tau);
    let image = EvalPoint::from_tau((g.a * tau + g.b) / j)?;
    let weight = C64::new(image.y(), 0.0).powc(spec.s) * j.powi(-spec.k);
    Ok(act_on_x(&g, &seed(&image)?).scale(weight))
}

fn vector_sum<P>(spec: &EisensteinSpec, point: &EvalPoint, cosets: &CosetEnumeration, seed: P) -> Result<XPolynomial>
where
    P: Fn(&EvalPoint) -> Result<XPolynomial> + Sync,
{
    spec.check_parity()?;
    spec.check_convergence()?;
    let tau = point.tau();
    let terms = cosets.cosets().par_iter().map(|g| vector_term(g, spec, tau, &seed)).collect::<Result<Vec<_>>>()?;
    Ok(compensated_poly_sum(&terms, spec.m))
}

/// Truncated coset sum for `E_{k,m}(tau, j, s) = sum (X - tau)^j y^s |_{k,m} gamma`.
pub fn vv_eis_sum(spec: &EisensteinSpec, point: &EvalPoint, radius: u32) -> Result<XPolynomial> {
    vv_eis_sum_over(spec, point, &CosetEnumeration::new(radius)?)
}

pub fn vv_eis_sum_over(spec: &EisensteinSpec, point: &EvalPoint, cosets: &CosetEnumeration) -> Result<XPolynomial> {
    let (m, j) = (spec.m, spec.j);
    vector_sum(spec, point, cosets, |p| XPolynomial::linear_power(C64::new(1.0, 0.0), -p.tau(), j).widen(m))
}

/// Truncated coset sum for `E^ahol_{k,m}(tau, j, s) = sum e_{j,m-j} y^s |_{k,m} gamma`.
pub fn vv_eis_ahol_sum(spec: &EisensteinSpec, point: &EvalPoint, radius: u32) -> Result<XPolynomial> {
    vv_eis_ahol_sum_over(spec, point, &CosetEnumeration::new(radius)?)
}

pub fn vv_eis_ahol_sum_over(
    spec: &EisensteinSpec,
    point: &EvalPoint,
    cosets: &CosetEnumeration,
) -> Result<XPolynomial> {
    let (m, j) = (spec.m, spec.j);
    vector_sum(spec, point, cosets, |p| frame_value(j, m, p))
}

fn binomial(n: usize, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `E_{k,m}(tau, j, s)` assembled in the frame from scalar series:
/// component `r` (for `j <= r <= m`) is
/// `(i/2)^{m-j} binom(m-j, r-j) r! E_{k-m+2r}(tau, s-r+j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VvProduct {
    pub k: i32,
    pub m: usize,
    pub j: usize,
    pub order: usize,
}

impl VvProduct {
    pub fn new(k: i32, m: usize, j: usize, order: usize) -> Result<Self> {
        let spec = EisensteinSpec::vector(k, m, j, C64::new(0.0, 0.0))?;
        spec.check_parity()?;
        Ok(VvProduct { k, m, j, order })
    }

    /// Frame coordinates at `tau`, indexed by `r = 0..=m`.
    pub fn components(&self, s: C64, point: &EvalPoint) -> Result<Vec<C64>> {
        Ok(self.components_with_tail(s, point)?.into_iter().map(|(c, _)| c).collect())
    }

    /// Frame coordinates with the Fourier tail estimate of each, scaled alike.
    pub fn components_with_tail(&self, s: C64, point: &EvalPoint) -> Result<Vec<(C64, f64)>> {
        let (m, j) = (self.m, self.j);
        let lead = C64::new(0.0, 0.5).powi((m - j) as i32);
        let mut out = vec![(C64::new(0.0, 0.0), 0.0); m + 1];
        for (r, slot) in out.iter_mut().enumerate().skip(j) {
            let weight = self.k - m as i32 + 2 * r as i32;
            let shifted = s - (r - j) as f64;
            let scalar = eis_fourier_with_tail(&EisensteinSpec::scalar(weight, shifted), point, self.order).map_err(
                |e| match e {
                    Error::Pole { routine, at } => {
                        Error::Pole { routine, at: format!("{at} in E_{weight}(tau, {shifted})") }
                    }
                    other => other,
                },
            )?;
            let factor = lead * binomial(m - j, r - j) * factorial(r);
            *slot = (factor * scalar.value, factor.norm() * scalar.tail_bound);
        }
        Ok(out)
    }

    pub fn eval(&self, s: C64, point: &EvalPoint) -> Result<XPolynomial> {
        self.eval_with_tail(s, point).map(|(v, _)| v)
    }

    /// Value together with the component tails weighted by the frame sizes.
    pub fn eval_with_tail(&self, s: C64, point: &EvalPoint) -> Result<(XPolynomial, f64)> {
        let coords = self.components_with_tail(s, point)?;
        let mut out = XPolynomial::zero(self.m);
        let mut tail = 0.0;
        for (r, (c, t)) in coords.iter().enumerate() {
            if *c != C64::new(0.0, 0.0) || *t != 0.0 {
                let frame = frame_value(r, self.m, point)?;
                tail += t * frame.max_abs();
                out = out.add(&frame.scale(*c))?;
            }
        }
        Ok((out, tail))
    }
}

/// `vv_eis_product` under the name used for the evaluator constructor.
pub fn vv_eis_product(k: i32, m: usize, j: usize, order: usize) -> Result<VvProduct> {
    VvProduct::new(k, m, j, order)
}

/// `e_{j,m-j}(tau) E_{k-m+2j}(tau, s)`.
pub fn vv_eis_ahol_product(spec: &EisensteinSpec, point: &EvalPoint, order: usize) -> Result<XPolynomial> {
    let weight = spec.k - spec.m as i32 + 2 * spec.j as i32;
    let scalar = eis_fourier(&EisensteinSpec::scalar(weight, spec.s), point, order)?;
    Ok(frame_value(spec.j, spec.m, point)?.scale(scalar))
}

/// Residue at `s0` of a polynomial-valued function by the trapezoid rule on
/// `|s - s0| = 0.05`, 16 nodes, cross-checked against the 8 even nodes.
pub fn residue_at_vec<F>(f: F, s0: C64) -> Result<XPolynomial>
where
    F: Fn(C64) -> Result<XPolynomial>,
{
    const NODES: usize = 16;
    let mut samples = Vec::with_capacity(NODES);
    for i in 0..NODES {
        let offset = C64::from_polar(RESIDUE_RADIUS, 2.0 * PI * i as f64 / NODES as f64);
        samples.push(f(s0 + offset)?.scale(offset));
    }
    let m = samples[0].m();
    let mean = |step: usize| -> Result<XPolynomial> {
        let picked: Vec<_> = samples.iter().step_by(step).cloned().collect();
        let count = picked.len() as f64;
        for p in &picked {
            if p.m() != m {
                return Err(Error::Dimension("residue samples of different type".into()));
            }
        }
        Ok(compensated_poly_sum(&picked, m).scale(C64::new(1.0 / count, 0.0)))
    };
    let fine = mean(1)?;
    let coarse = mean(2)?;
    let change = fine.max_abs_diff(&coarse);
    if change > 1e-3 * fine.max_abs() + 1e-12 {
        return Err(Error::NonConvergence(format!("residue at {s0}: 8 and 16 nodes differ by {change:e}")));
    }
    Ok(fine)
}

/// Scalar form of [`residue_at_vec`].
pub fn residue_at<F>(f: F, s0: C64) -> Result<C64>
where
    F: Fn(C64) -> Result<C64>,
{
    let lifted = residue_at_vec(|s| XPolynomial::from_coeffs(vec![f(s)?]), s0)?;
    Ok(lifted.coeff(0))
}

/// The two summands `E_{1,1}(tau, 1, 0)` and `2i Res_{s=1} E_{1,1}(tau, 0, s)`.
pub fn e2vec_via_eisenstein_terms(point: &EvalPoint, order: usize) -> Result<(XPolynomial, XPolynomial)> {
    let holomorphic = VvProduct::new(1, 1, 1, order)?.eval(C64::new(0.0, 0.0), point)?;
    let series = VvProduct::new(1, 1, 0, order)?;
    let residue = residue_at_vec(|s| series.eval(s, point), C64::new(1.0, 0.0))?;
    Ok((holomorphic, residue.scale(C64::new(0.0, 2.0))))
}

/// `E_2^vec(tau) = E_{1,1}(tau, 1, 0) + 2i Res_{s=1} E_{1,1}(tau, 0, s)`.
pub fn e2vec_via_eisenstein(point: &EvalPoint, order: usize) -> Result<XPolynomial> {
    let (holomorphic, residue) = e2vec_via_eisenstein_terms(point, order)?;
    holomorphic.add(&residue)
}
