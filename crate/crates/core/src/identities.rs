//! Registry of named identity checks. Each check recomputes one identity
//! from the objects in this crate and reports the measured residual against
//! a tolerance; tolerance-0 checks are exact coefficient identities.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::eisenstein::{
    e2_expansion, e2vec, e2vec_via_eisenstein_terms, eis_fourier, eis_sum_over, enumerate_cosets, residue_at,
    vv_eis_ahol_sum_over, vv_eis_sum_over, EisensteinSpec, VvProduct,
};
use crate::error::Result;
use crate::qyseries::{EvalPoint, ScalarExpansion, DEFAULT_ORDER};
use crate::specfun::{divisors, C64};
use crate::symframe::{
    frame_coordinates, frame_value, numeric_lower, numeric_raise, slash_value, GroupElement, VectorForm, XPolynomial,
};

/// Default coset radius for sum-based checks.
pub const DEFAULT_RADIUS: u32 = 400;

/// Points used by the pointwise checks.
pub const SAMPLE_POINTS: [(f64, f64); 5] = [(0.0, 1.0), (0.1, 0.7), (0.3, 0.8), (-0.4, 1.2), (0.25, 1.5)];

/// Finite-difference step for the frame operator table.
const FD_STEP: f64 = 1e-3;

/// Labels carried in [`CheckReport::anchor`], one per registered check.
pub const ANCHORS: &[&str] = &[
    "L E2vec = 0",
    "E2vec |_{1,1} g = E2vec",
    "L e_{i,j} = (i+1) j e_{i+1,j-1}, R e_{i,j} = e_{i-1,j+1}",
    "F = sum_j e_{j,m-j} f_j",
    "L R E2 = c E2",
    "L_3 (e E2 + 1/2 e R_2 E2) = const e",
    "E2vec = E_{1,1}(tau,1,0) + 2i Res_{s=1} E_{1,1}(tau,0,s)",
    "E2hol = 1 - 24 sum sigma_1(n) q^n",
    "sum y^s |_k gamma = Fourier expansion",
    "Res_{s=1} E_0(tau,s) = 3/pi",
    "e_{j,m-j} |_{m-2j,m} g = e_{j,m-j}",
    "E_{k,m}(tau,j,s) = sum_r binom(m-j,r-j) r! (i/2)^{m-j} e_{r,m-r} E_{k-m+2r}(tau,s-r+j)",
    "E^ahol_{k,m}(tau,j,s) = e_{j,m-j} E_{k-m+2j}(tau,s)",
];

/// Outcome of one check; `passed` holds exactly when `residual <= tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub anchor: String,
    pub parameters: BTreeMap<String, String>,
    pub residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub notes: String,
}

impl CheckReport {
    fn new(name: &str, anchor: &str, residual: f64, tolerance: f64) -> Self {
        CheckReport {
            name: name.to_string(),
            anchor: anchor.to_string(),
            parameters: BTreeMap::new(),
            residual,
            tolerance,
            passed: residual <= tolerance,
            notes: String::new(),
        }
    }

    fn failed(name: &str, anchor: &str, tolerance: f64, error: &crate::Error) -> Self {
        let mut report = Self::new(name, anchor, f64::INFINITY, tolerance);
        report.notes = format!("error: {error}");
        report
    }

    fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    fn note(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    /// Replace the tolerance and recompute `passed`.
    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self.passed = self.residual <= tolerance;
        self
    }
}

fn sample_points() -> Vec<EvalPoint> {
    SAMPLE_POINTS.iter().map(|&(x, y)| EvalPoint::new(x, y).expect("sample points lie in H")).collect()
}

fn rel_diff(a: &XPolynomial, b: &XPolynomial) -> f64 {
    a.max_abs_diff(b) / (1.0 + b.max_abs())
}

fn settle(name: &str, anchor: &str, tolerance: f64, outcome: Result<CheckReport>) -> CheckReport {
    outcome.unwrap_or_else(|e| CheckReport::failed(name, anchor, tolerance, &e))
}

const E2VEC_HOLOMORPHIC: &str = "e2vec_holomorphic";

/// Lowering of `E_2^vec` vanishes coefficientwise.
pub fn check_e2vec_holomorphic(order: usize) -> CheckReport {
    check_holomorphic_form(&e2vec(order))
}

/// [`check_e2vec_holomorphic`] applied to an arbitrary weight-1 form.
pub fn check_holomorphic_form(form: &VectorForm) -> CheckReport {
    let (anchor, tol) = (ANCHORS[0], 0.0);
    let outcome = form.lower().map(|lowered| {
        CheckReport::new(E2VEC_HOLOMORPHIC, anchor, lowered.max_abs(), tol)
            .param("order", form.order())
            .note(format!("max |coefficient| of L E2vec over {} components", lowered.m() + 1))
    });
    settle(E2VEC_HOLOMORPHIC, anchor, tol, outcome)
}

const E2VEC_MODULAR: &str = "e2vec_modular";

/// `E_2^vec |_{1,1} g = E_2^vec` for `g` in `{S, T}` at the sample points.
pub fn check_e2vec_modular(order: usize) -> CheckReport {
    let (anchor, tol) = (ANCHORS[1], 1e-6);
    let form = e2vec(order);
    let outcome = (|| {
        let f = |p: &EvalPoint| form.eval(p).map(|(v, _)| v);
        let mut worst: f64 = 0.0;
        let mut tail: f64 = 0.0;
        let mut per_element = [0.0f64; 2];
        for p in sample_points() {
            let (direct, t) = form.eval(&p)?;
            tail = tail.max(t);
            for (slot, g) in per_element.iter_mut().zip([GroupElement::s(), GroupElement::t()]) {
                let slashed = slash_value(f, 1, 1, &g, &p)?;
                let dev = slashed.max_abs_diff(&direct) / direct.max_abs();
                *slot = slot.max(dev);
                worst = worst.max(dev);
            }
        }
        Ok(CheckReport::new(E2VEC_MODULAR, anchor, worst, tol)
            .param("order", order)
            .param("points", SAMPLE_POINTS.len())
            .param("tail_bound", format!("{tail:e}"))
            .note(format!("S: {:e}, T: {:e}", per_element[0], per_element[1])))
    })();
    settle(E2VEC_MODULAR, anchor, tol, outcome)
}

const FRAME_MAASS_TABLE: &str = "frame_maass_table";

/// Frame lowering and raising in coordinates against the stated table and
/// against central differences of the closed form.
pub fn check_frame_maass_table(m_max: usize) -> CheckReport {
    let (anchor, tol) = (ANCHORS[2], 1e-6);
    let outcome = (|| {
        let points = [EvalPoint::i(), EvalPoint::new(0.3, 0.8)?, EvalPoint::new(-0.4, 1.2)?];
        let mut table: f64 = 0.0;
        let mut numeric: f64 = 0.0;
        for m in 0..=m_max {
            for i in 0..=m {
                let j = m - i;
                let weight = m as i32 - 2 * i as i32;
                let pure = VectorForm::pure_frame(i, m, 2)?;
                let lowered = pure.lower()?;
                let raised = pure.raise()?;

                let mut expected_lower = VectorForm::zero(m, weight - 2, 2);
                if j > 0 {
                    let scale = C64::new(((i + 1) * j) as f64, 0.0);
                    expected_lower = VectorForm::new(
                        weight - 2,
                        VectorForm::pure_frame(i + 1, m, 2)?.components().iter().map(|f| f.scale(&scale)).collect(),
                    )?;
                }
                let expected_raise =
                    if i > 0 { VectorForm::pure_frame(i - 1, m, 2)? } else { VectorForm::zero(m, weight + 2, 2) };
                for (got, want) in [(&lowered, &expected_lower), (&raised, &expected_raise)] {
                    for (a, b) in got.components().iter().zip(want.components()) {
                        table = table.max(a.max_abs_diff(b));
                    }
                }

                let closed = |p: &EvalPoint| frame_value(i, m, p);
                for p in &points {
                    let fd_lower = numeric_lower(closed, p, FD_STEP)?;
                    let fd_raise = numeric_raise(closed, weight, p, FD_STEP)?;
                    let (l, _) = lowered.eval(p)?;
                    let (r, _) = raised.eval(p)?;
                    numeric = numeric.max(rel_diff(&fd_lower, &l)).max(rel_diff(&fd_raise, &r));
                }
            }
        }
        Ok(CheckReport::new(FRAME_MAASS_TABLE, anchor, table.max(numeric), tol)
            .param("m_max", m_max)
            .param("step", FD_STEP)
            .note(format!("table deviation {table:e}, finite-difference deviation {numeric:e}")))
    })();
    settle(FRAME_MAASS_TABLE, anchor, tol, outcome)
}

const DECOMPOSITION: &str = "decomposition_roundtrip";

fn random_component(rng: &mut ChaCha8Rng, weight: i32) -> ScalarExpansion {
    ScalarExpansion::from_fn(weight, 4, 2, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

/// Random frame components evaluated through the frame and recovered by a
/// linear solve against the frame matrix.
pub fn check_decomposition_roundtrip(m: usize, seed: u64) -> CheckReport {
    let (anchor, tol) = (ANCHORS[3], 1e-9);
    let outcome = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let weight = m as i32;
        let frame =
            (0..=m).map(|j| random_component(&mut rng, crate::symframe::component_weight(weight, m, j))).collect();
        let form = VectorForm::new(weight, frame)?;
        let mut worst: f64 = 0.0;
        for p in sample_points() {
            let (value, _) = form.eval(&p)?;
            let coords = frame_coordinates(&value, &p)?;
            for (c, f) in coords.iter().zip(form.components()) {
                let expected = f.eval(&p).value;
                worst = worst.max((c - expected).norm() / (1.0 + expected.norm()));
            }
        }
        Ok(CheckReport::new(DECOMPOSITION, anchor, worst, tol).param("m", m).param("seed", seed))
    })();
    settle(DECOMPOSITION, anchor, tol, outcome)
}

const LR_E2: &str = "lr_e2_relation";

/// `L_4 R_2 E_2 = c E_2` coefficientwise with `|c| = 2`, and `Delta_2 E_2 = 0`.
pub fn check_lr_e2_relation(order: usize) -> CheckReport {
    let (anchor, tol) = (ANCHORS[4], 0.0);
    let e2 = e2_expansion(order);
    let lr = e2.raise().lower();
    let c = lr.coeff(0, 0) / e2.coeff(0, 0);
    let proportional = lr.max_abs_diff(&e2.scale(&c));
    let laplace = e2.laplace().max_abs();
    let residual = proportional + (c.norm() - 2.0).abs() + laplace;
    CheckReport::new(LR_E2, anchor, residual, tol).param("order", order).param("c", format!("{}", c.re)).note(format!(
        "c = {} (measured sign {}), proportionality deviation {proportional:e}, max |Delta_2 E2| = {laplace:e}",
        c.re,
        if c.re < 0.0 { "negative" } else { "positive" }
    ))
}

const BK_FORM: &str = "bk_case_IIIb_form";

/// Outcome of lowering the weight-3 form `e_{0,1} E_2 + 1/2 e_{1,0} R_2 E_2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BkLowering {
    /// Frame index carrying the result.
    pub support: Vec<usize>,
    /// Constant coefficient on that frame vector.
    pub constant: C64,
    /// Size of everything that is not a constant on a single frame vector.
    pub structural_residual: f64,
    pub lowered: VectorForm,
    pub lowered_twice: VectorForm,
    pub lowered_thrice: VectorForm,
    /// Largest coefficient of the non-`e_{1,0}` and non-constant parts when
    /// the form is read with `E_2` on `e_{1,0}` and `R_2 E_2 / 2` on `e_{0,1}`.
    pub literal_residual: f64,
}

/// Exact computation behind [`check_bk_case_iiib_form`].
pub fn bk_lowering(order: usize) -> Result<BkLowering> {
    let e2 = e2_expansion(order);
    let half_re2 = e2.raise().scale(&C64::new(0.5, 0.0));
    let g = VectorForm::new(3, vec![e2.clone(), half_re2.clone()])?;
    let lowered = g.lower()?;
    let support: Vec<usize> = (0..=1).filter(|&j| !lowered.components()[j].is_zero()).collect();
    let mut structural_residual = 0.0;
    let mut constant = C64::new(0.0, 0.0);
    if let [j] = support[..] {
        let f = &lowered.components()[j];
        constant = f.coeff(0, 0);
        structural_residual += f.max_abs_diff(&ScalarExpansion::constant(constant, f.weight(), f.order()));
    } else {
        structural_residual += lowered.max_abs();
    }

    // literal reading: component 0 = R_2 E_2 / 2 (weight 4), component 1 = E_2
    // (weight 2); L is weight-blind on monomials, so compute it unweighted
    let lit0 = half_re2.lower().with_weight(0);
    let lit1 = e2.lower().with_weight(0).checked_add(&half_re2.clone().with_weight(0))?;
    let constant_part = ScalarExpansion::constant(lit1.coeff(0, 0), 0, lit1.order());
    let literal_residual = lit0.max_abs() + lit1.max_abs_diff(&constant_part);

    let lowered_twice = lowered.lower()?;
    let lowered_thrice = lowered_twice.lower()?;
    Ok(BkLowering { support, constant, structural_residual, lowered, lowered_twice, lowered_thrice, literal_residual })
}

/// Lowering of the weight-3 form lands on a single frame vector with a
/// constant coefficient; the constant is reported next to `3/pi`.
pub fn check_bk_case_iiib_form(order: usize) -> CheckReport {
    let (anchor, tol) = (ANCHORS[5], 0.0);
    let outcome = bk_lowering(order).map(|b| {
        let frame = match b.support[..] {
            [0] => "e_{0,1}".to_string(),
            [1] => "e_{1,0}".to_string(),
            _ => format!("{:?}", b.support),
        };
        let twice = if b.lowered_twice.is_zero() { "0".to_string() } else { "nonzero".to_string() };
        CheckReport::new(BK_FORM, anchor, b.structural_residual, tol)
            .param("order", order)
            .param("support", &frame)
            .param("constant", format!("{}", b.constant.re))
            .note(format!(
                "L_3 (e_{{0,1}} E2 + 1/2 e_{{1,0}} R_2 E2) = {c} {frame}; 3/pi = {pi3}, deviation {dev:e}; \
                 L^2 = {twice}, L^3 = {thrice}; reading with E2 on e_{{1,0}} and R_2 E2/2 on e_{{0,1}} \
                 mixes weights 1 and 5 and leaves residual {lit:e}",
                c = b.constant.re,
                pi3 = 3.0 / PI,
                dev = (b.constant - 3.0 / PI).norm(),
                thrice = if b.lowered_thrice.is_zero() { "0" } else { "nonzero" },
                lit = b.literal_residual,
            ))
    });
    settle(BK_FORM, anchor, tol, outcome)
}

const TWO_CONSTRUCTIONS: &str = "e2vec_two_constructions";

/// `E_2^vec` from its frame expansion against the Eisenstein construction.
pub fn check_e2vec_two_constructions(order: usize) -> CheckReport {
    let (anchor, tol) = (ANCHORS[6], 1e-5);
    let outcome = (|| {
        let form = e2vec(order);
        let mut worst: f64 = 0.0;
        let mut residue_dev: f64 = 0.0;
        for p in sample_points() {
            let (hol, res) = e2vec_via_eisenstein_terms(&p, order)?;
            let (direct, _) = form.eval(&p)?;
            worst = worst.max(hol.add(&res)?.max_abs_diff(&direct));
            // 2i (3i / 2 pi) e_{0,1} = -(3/pi) e_{0,1}
            let expected = frame_value(0, 1, &p)?.scale(C64::new(-3.0 / PI, 0.0));
            residue_dev = residue_dev.max(res.max_abs_diff(&expected));
        }
        Ok(CheckReport::new(TWO_CONSTRUCTIONS, anchor, worst, tol)
            .param("order", order)
            .param("points", SAMPLE_POINTS.len())
            .note(format!("residue term vs (3i/2pi) e_{{0,1}} deviates by {residue_dev:e}")))
    })();
    settle(TWO_CONSTRUCTIONS, anchor, tol, outcome)
}

const E2_COEFFICIENTS: &str = "e2_coefficients";

/// `c(0, n) = -24 sigma_1(n)` for `n <= 20` by brute-force divisor sums and
/// `c(1, 0) = -3/pi`.
pub fn check_e2_coefficients(order: usize) -> CheckReport {
    let (anchor, tol) = (ANCHORS[7], 1e-15);
    let e2 = e2_expansion(order);
    let top = order.min(20);
    let mut worst: f64 = 0.0;
    for n in 1..=top {
        let brute: u64 = (1..=n as u64).filter(|d| (n as u64).is_multiple_of(*d)).sum();
        worst = worst.max((e2.coeff(0, n) - C64::new(-24.0 * brute as f64, 0.0)).norm());
    }
    worst = worst.max((e2.coeff(0, 0) - C64::new(1.0, 0.0)).norm());
    worst = worst.max((e2.coeff(1, 0) - C64::new(-3.0 / PI, 0.0)).norm());
    debug_assert_eq!(divisors(6).iter().sum::<u64>(), 12);
    CheckReport::new(E2_COEFFICIENTS, anchor, worst, tol).param("n_max", top)
}

const CROSS_EVALUATOR: &str = "eisenstein_cross_evaluator";

/// Coset sums against Fourier evaluation.
pub fn check_eisenstein_cross_evaluator(order: usize, radius: u32) -> CheckReport {
    let (anchor, tol) = (ANCHORS[8], 1e-4);
    let outcome = (|| {
        let cosets = enumerate_cosets(radius)?;
        let points = [EvalPoint::i(), EvalPoint::new(0.3, 0.8)?, EvalPoint::new(-0.4, 1.2)?];
        let mut worst: f64 = 0.0;
        let mut notes = Vec::new();
        for (k, s) in [(4, 0.0), (6, 0.0), (0, 3.0), (2, 2.0)] {
            let spec = EisensteinSpec::scalar(k, C64::new(s, 0.0));
            let mut local: f64 = 0.0;
            for p in &points {
                let fourier = eis_fourier(&spec, p, order)?;
                let sum = eis_sum_over(&spec, p, &cosets)?;
                local = local.max((fourier - sum).norm() / (1.0 + fourier.norm()));
            }
            notes.push(format!("(k={k}, s={s}): {local:e}"));
            worst = worst.max(local);
        }
        Ok(CheckReport::new(CROSS_EVALUATOR, anchor, worst, tol)
            .param("order", order)
            .param("radius", radius)
            .note(notes.join("; ")))
    })();
    settle(CROSS_EVALUATOR, anchor, tol, outcome)
}

const RESIDUE: &str = "eisenstein_residue";

/// Contour residue of `E_0(tau, .)` at `s = 1`.
pub fn check_eisenstein_residue(order: usize) -> CheckReport {
    let (anchor, tol) = (ANCHORS[9], 1e-4);
    let outcome = (|| {
        let points = [EvalPoint::i(), EvalPoint::new(0.3, 0.8)?, EvalPoint::new(-0.4, 1.2)?];
        let mut worst: f64 = 0.0;
        for p in &points {
            let r = residue_at(|s| eis_fourier(&EisensteinSpec::scalar(0, s), p, order), C64::new(1.0, 0.0))?;
            worst = worst.max((r - 3.0 / PI).norm());
        }
        Ok(CheckReport::new(RESIDUE, anchor, worst, tol).param("order", order).param("points", points.len()))
    })();
    settle(RESIDUE, anchor, tol, outcome)
}

const FRAME_INVARIANCE: &str = "frame_invariance";

/// Frame vectors fixed by seeded random real group elements.
pub fn check_frame_invariance(m_max: usize, seed: u64) -> CheckReport {
    let (anchor, tol) = (ANCHORS[10], 1e-10);
    let outcome = (|| {
        let points = [EvalPoint::i(), EvalPoint::new(0.3, 0.8)?, EvalPoint::new(-0.4, 1.2)?];
        let mut worst: f64 = 0.0;
        for g in GroupElement::random_elements(seed, 10) {
            for m in 0..=m_max {
                for j in 0..=m {
                    let weight = m as i32 - 2 * j as i32;
                    let f = |p: &EvalPoint| frame_value(j, m, p);
                    for p in &points {
                        let slashed = slash_value(f, weight, m, &g, p)?;
                        worst = worst.max(rel_diff(&slashed, &f(p)?));
                    }
                }
            }
        }
        Ok(CheckReport::new(FRAME_INVARIANCE, anchor, worst, tol)
            .param("m_max", m_max)
            .param("seed", seed)
            .param("elements", 10))
    })();
    settle(FRAME_INVARIANCE, anchor, tol, outcome)
}

const VV_PRODUCT: &str = "vv_eisenstein_product";

/// Vector-valued coset sum against the frame product of scalar series.
pub fn check_vv_eisenstein_product(order: usize, radius: u32) -> CheckReport {
    let (anchor, tol) = (ANCHORS[11], 1e-4);
    let outcome = (|| {
        let cosets = enumerate_cosets(radius)?;
        let points = [EvalPoint::i(), EvalPoint::new(0.3, 0.8)?, EvalPoint::new(-0.4, 1.2)?];
        let mut worst: f64 = 0.0;
        let mut notes = Vec::new();
        for j in 0..=1 {
            let spec = EisensteinSpec::vector(5, 1, j, C64::new(0.0, 0.0))?;
            let product = VvProduct::new(5, 1, j, order)?;
            let mut local: f64 = 0.0;
            for p in &points {
                let sum = vv_eis_sum_over(&spec, p, &cosets)?;
                local = local.max(sum.max_abs_diff(&product.eval(spec.s, p)?));
            }
            notes.push(format!("(k,m,j,s) = (5,1,{j},0): {local:e}"));
            worst = worst.max(local);
        }
        Ok(CheckReport::new(VV_PRODUCT, anchor, worst, tol)
            .param("order", order)
            .param("radius", radius)
            .note(notes.join("; ")))
    })();
    settle(VV_PRODUCT, anchor, tol, outcome)
}

const VV_AHOL: &str = "vv_eisenstein_ahol_product";

/// Term-by-term identity between the almost holomorphic vector sum and the
/// frame vector times the scalar sum over the same cosets.
pub fn check_vv_eisenstein_ahol_product(radius: u32) -> CheckReport {
    let (anchor, tol) = (ANCHORS[12], 1e-10);
    let outcome = (|| {
        let cosets = enumerate_cosets(radius)?;
        let points = [EvalPoint::i(), EvalPoint::new(0.3, 0.8)?, EvalPoint::new(-0.4, 1.2)?];
        let mut worst: f64 = 0.0;
        for (k, m, j, s) in [(5, 1, 0, 0.0), (5, 1, 1, 0.0), (4, 2, 1, 0.5), (6, 2, 2, 0.0)] {
            let spec = EisensteinSpec::vector(k, m, j, C64::new(s, 0.0))?;
            let weight = k - m as i32 + 2 * j as i32;
            for p in &points {
                let sum = vv_eis_ahol_sum_over(&spec, p, &cosets)?;
                let scalar = eis_sum_over(&EisensteinSpec::scalar(weight, spec.s), p, &cosets)?;
                let product = frame_value(j, m, p)?.scale(scalar);
                worst = worst.max(rel_diff(&sum, &product));
            }
        }
        Ok(CheckReport::new(VV_AHOL, anchor, worst, tol).param("radius", radius))
    })();
    settle(VV_AHOL, anchor, tol, outcome)
}

/// Configuration shared by [`run_all`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub order: usize,
    pub radius: u32,
    pub seed: u64,
    pub tolerances: BTreeMap<String, f64>,
    /// Glob over check names; `None` runs everything.
    pub filter: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { order: DEFAULT_ORDER, radius: DEFAULT_RADIUS, seed: 1, tolerances: BTreeMap::new(), filter: None }
    }
}

type CheckFn = fn(&RunConfig) -> CheckReport;

/// Registered checks in execution order.
pub const REGISTRY: &[(&str, CheckFn)] = &[
    (E2VEC_HOLOMORPHIC, |c| check_e2vec_holomorphic(c.order)),
    (E2VEC_MODULAR, |c| check_e2vec_modular(c.order)),
    (TWO_CONSTRUCTIONS, |c| check_e2vec_two_constructions(c.order)),
    (E2_COEFFICIENTS, |c| check_e2_coefficients(c.order)),
    (FRAME_INVARIANCE, |c| check_frame_invariance(4, c.seed)),
    (FRAME_MAASS_TABLE, |_| check_frame_maass_table(4)),
    (DECOMPOSITION, |c| check_decomposition_roundtrip(4, c.seed)),
    (LR_E2, |c| check_lr_e2_relation(c.order)),
    (BK_FORM, |c| check_bk_case_iiib_form(c.order)),
    (CROSS_EVALUATOR, |c| check_eisenstein_cross_evaluator(c.order, c.radius)),
    (RESIDUE, |c| check_eisenstein_residue(c.order)),
    (VV_PRODUCT, |c| check_vv_eisenstein_product(c.order, c.radius)),
    (VV_AHOL, |c| check_vv_eisenstein_ahol_product(c.radius.min(100))),
];

/// Names of all registered checks.
pub fn check_names() -> Vec<&'static str> {
    REGISTRY.iter().map(|(name, _)| *name).collect()
}

/// Run every registered check whose name matches the filter.
pub fn run_all(config: &RunConfig) -> Result<Vec<CheckReport>> {
    let pattern = match &config.filter {
        Some(f) => Some(glob::Pattern::new(f).map_err(|e| crate::Error::Parse(format!("filter {f:?}: {e}")))?),
        None => None,
    };
    Ok(REGISTRY
        .iter()
        .filter(|(name, _)| pattern.as_ref().is_none_or(|p| p.matches(name)))
        .map(|(name, check)| {
            let report = check(config);
            match config.tolerances.get(*name) {
                Some(&tol) => report.with_tolerance(tol),
                None => report,
            }
        })
        .collect())
}
