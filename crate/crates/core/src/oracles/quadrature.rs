//! Adaptive Gauss–Kronrod quadrature for the integral forms of the Hessians
//! and for the power-law integral identities behind their closed forms.

use std::f64::consts::PI;

use nalgebra::{Complex, DMatrix};

use crate::hermitian::{is_positive_definite, HermitianMatrix};
use crate::objectives::{ProblemInstance, ProblemKind};
use crate::{Error, Result};

// 15-point Kronrod abscissae on [-1, 1] (non-negative half) with weights, and
// the weights of the embedded 7-point Gauss rule at the odd-indexed abscissae.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] =
    [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// Integral estimate with its absolute error bound (max over components).
#[derive(Debug, Clone, PartialEq)]
pub struct Estimate {
    pub value: Vec<f64>,
    pub error: f64,
}

/// Adaptive bisection driver for vector-valued integrands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_segments: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self { rel_tol: 1e-11, abs_tol: 1e-15, max_segments: 4000 }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: Vec<f64>,
    error: f64,
}

fn kronrod<F: FnMut(f64) -> Vec<f64>>(f: &mut F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut k: Vec<f64> = fc.iter().map(|x| x * WGK[7]).collect();
    let mut g: Vec<f64> = fc.iter().map(|x| x * WG[3]).collect();
    for (i, (&x, &wk)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let lo = f(center - half * x);
        let hi = f(center + half * x);
        for c in 0..k.len() {
            let s = lo[c] + hi[c];
            k[c] += wk * s;
            if i % 2 == 1 {
                g[c] += WG[i / 2] * s;
            }
        }
    }
    let error = k.iter().zip(&g).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max) * half.abs();
    Segment { a, b, value: k.into_iter().map(|x| x * half).collect(), error }
}

impl Quadrature {
    /// `∫_a^b f(x) dx` for a vector-valued `f`; every call must return the same length.
    pub fn integrate<F: FnMut(f64) -> Vec<f64>>(&self, mut f: F, a: f64, b: f64) -> Result<Estimate> {
        let mut segments = vec![kronrod(&mut f, a, b)];
        loop {
            let n = segments[0].value.len();
            let mut total = vec![0.0; n];
            let mut error = 0.0;
            for s in &segments {
                for (t, v) in total.iter_mut().zip(&s.value) {
                    *t += v;
                }
                error += s.error;
            }
            let scale = total.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if error <= self.abs_tol.max(self.rel_tol * scale) {
                return Ok(Estimate { value: total, error });
            }
            if segments.len() >= self.max_segments {
                return Err(Error::QuadratureNonConvergence { error });
            }
            let worst = (0..segments.len())
                .max_by(|&i, &j| segments[i].error.total_cmp(&segments[j].error))
                .expect("at least one segment");
            let s = segments.swap_remove(worst);
            let mid = 0.5 * (s.a + s.b);
            if mid <= s.a || mid >= s.b {
                return Err(Error::QuadratureNonConvergence { error });
            }
            segments.push(kronrod(&mut f, s.a, mid));
            segments.push(kronrod(&mut f, mid, s.b));
        }
    }
}

/// `∫_0^∞ t^r F(t) dt` for `r ∈ (−1, 1)` and `F(t) = O(t^{-2})`.
///
/// The range is split at `scale`. Below it, `t = v^p` with `p = 1/(1+r)`
/// removes the `t^r` endpoint singularity. Above it, `t = scale/u` maps the
/// tail onto `(0, 1]`.
pub fn integrate_power_weighted<F: FnMut(f64) -> Vec<f64>>(
    quad: &Quadrature,
    r: f64,
    scale: f64,
    mut f: F,
) -> Result<Estimate> {
    if !(r > -1.0 && r < 1.0) || !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::DomainError(format!("power weight r = {r} with scale {scale}")));
    }
    let p = 1.0 / (1.0 + r);
    let head = quad.integrate(|v| f(v.powf(p)).into_iter().map(|x| p * x).collect(), 0.0, scale.powf(1.0 + r))?;
    let tail = quad.integrate(
        |u| {
            let t = scale / u;
            let w = t.powf(r) * scale / (u * u);
            f(t).into_iter().map(|x| w * x).collect()
        },
        0.0,
        1.0,
    )?;
    Ok(Estimate {
        value: head.value.iter().zip(&tail.value).map(|(a, b)| a + b).collect(),
        error: head.error + tail.error,
    })
}

/// `c₁(α) = (1−α) sin(απ/(α−1)) / π`
fn c1(alpha: f64) -> f64 {
    (1.0 - alpha) * (alpha * PI / (alpha - 1.0)).sin() / PI
}

/// `c₂(α) = α sin((α−1)π/α) / π`
fn c2(alpha: f64) -> f64 {
    alpha * ((alpha - 1.0) / alpha * PI).sin() / PI
}

type CMat = DMatrix<Complex<f64>>;

fn flatten(m: &CMat) -> Vec<f64> {
    m.iter().flat_map(|z| [z.re, z.im]).collect()
}

fn unflatten(d: usize, v: &[f64]) -> CMat {
    CMat::from_iterator(d, d, v.chunks(2).map(|c| Complex::new(c[0], c[1])))
}

/// `R (X R B + B R X) R` with `R = (ω + tI)^{-1}`.
fn sandwich(omega: &CMat, x: &CMat, b: &CMat, t: f64) -> CMat {
    let d = omega.nrows();
    let shifted = omega + CMat::identity(d, d) * Complex::new(t, 0.0);
    let r = shifted.try_inverse().expect("ω + tI is positive definite");
    &r * (x * &r * b + b * &r * x) * &r
}

/// Hessian action from its integral representation
/// `H(X) = −c ∫_0^∞ t^r (ω+tI)^{-1} [X (ω+tI)^{-1} B + B (ω+tI)^{-1} X] (ω+tI)^{-1} dt`
/// with `(c, r, B)` equal to `(1, 0, ρ)`, `(c₁, α/(α−1), σ)` or `(c₂, (α−1)/α, ρ)`.
///
/// At α = ½ the weight `−c₂ t^{−1}` collapses to a point mass `α δ(t)`.
pub fn quadrature_hessian(
    inst: &ProblemInstance<f64>,
    omega: &HermitianMatrix<f64>,
    x: &HermitianMatrix<f64>,
) -> Result<HermitianMatrix<f64>> {
    omega.check_same_dim(x)?;
    omega.check_same_dim(inst.rho())?;
    if !is_positive_definite(omega)? {
        return Err(Error::DomainError("quadrature Hessian needs a positive definite point".into()));
    }
    let (coef, r, b) = match inst.kind() {
        ProblemKind::MeasuredRelEnt => (1.0, 0.0, inst.rho()),
        ProblemKind::RenyiLow(a) => (c1(a), a / (a - 1.0), inst.sigma()),
        ProblemKind::RenyiMid(a) if a == 0.5 => {
            let m = sandwich(omega.as_matrix(), x.as_matrix(), inst.rho().as_matrix(), 0.0);
            return HermitianMatrix::new(m * Complex::new(a, 0.0));
        }
        ProblemKind::RenyiMid(a) | ProblemKind::RenyiHigh(a) => (c2(a), (a - 1.0) / a, inst.rho()),
    };
    let d = omega.dim();
    let scale = omega.as_matrix().clone().determinant().norm().powf(1.0 / d as f64);
    let (w, xm, bm) = (omega.as_matrix(), x.as_matrix(), b.as_matrix());
    let est = integrate_power_weighted(&Quadrature::default(), r, scale, |t| flatten(&sandwich(w, xm, bm, t)))?;
    HermitianMatrix::new(unflatten(d, &est.value) * Complex::new(-coef, 0.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityKind {
    /// `−c₁(α) ∫ t^{α/(α−1)} (k+t)^{-3} dt = α/(2(1−α)) k^{−(2−α)/(1−α)}` on α ∈ (0, ½).
    Low,
    /// `−c₂(α) ∫ t^{(α−1)/α} (k+t)^{-3} dt = (1−α)/(2α) k^{−(α+1)/α}` on α ∈ [½, 1) ∪ (1, ∞).
    High,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub alpha: f64,
    pub k: f64,
    pub kind: IdentityKind,
    pub quadrature: f64,
    pub closed_form: f64,
    pub rel_deviation: f64,
    /// Value obtained as the α → ½ limit rather than by direct evaluation.
    pub limiting: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    pub max_rel_deviation: f64,
}

impl IdentityReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_rel_deviation <= tol
    }
}

fn identity_sides(alpha: f64, k: f64) -> Result<(IdentityKind, f64, f64)> {
    let cubic = |t: f64| vec![(k + t).powi(-3)];
    let quad = Quadrature::default();
    if alpha < 0.5 {
        let r = alpha / (alpha - 1.0);
        let i = integrate_power_weighted(&quad, r, k, cubic)?.value[0];
        let closed = alpha / (2.0 * (1.0 - alpha)) * k.powf(-(2.0 - alpha) / (1.0 - alpha));
        Ok((IdentityKind::Low, -c1(alpha) * i, closed))
    } else {
        let r = (alpha - 1.0) / alpha;
        let i = integrate_power_weighted(&quad, r, k, cubic)?.value[0];
        let closed = (1.0 - alpha) / (2.0 * alpha) * k.powf(-(alpha + 1.0) / alpha);
        Ok((IdentityKind::High, -c2(alpha) * i, closed))
    }
}

/// Steps above α = ½ used to extrapolate the `c₂` identity to its endpoint,
/// where `c₂(½) = 0` and the integral diverges.
const HALF_STEPS: [f64; 3] = [1e-3, 5e-4, 2.5e-4];

/// Compares both sides of the power-law identities on a grid.
pub fn check_integral_identities(alpha_grid: &[f64], k_grid: &[f64]) -> Result<IdentityReport> {
    let mut checks = Vec::new();
    for &alpha in alpha_grid {
        if !(alpha > 0.0 && alpha.is_finite()) || (alpha - 1.0).abs() < 1e-6 {
            return Err(Error::AlphaOutOfRange { alpha });
        }
        for &k in k_grid {
            if !(k > 0.0 && k.is_finite()) {
                return Err(Error::DomainError(format!("k = {k} must be positive")));
            }
            let (kind, quadrature, closed_form, limiting) = if alpha == 0.5 {
                let v =
                    HALF_STEPS.iter().map(|&h| identity_sides(0.5 + h, k).map(|s| s.1)).collect::<Result<Vec<_>>>()?;
                // Richardson extrapolation to h = 0 on halving steps.
                let r1 = 2.0 * v[1] - v[0];
                let r2 = 2.0 * v[2] - v[1];
                let limit = (4.0 * r2 - r1) / 3.0;
                (IdentityKind::High, limit, 0.5 * k.powi(-3), true)
            } else {
                let (kind, q, c) = identity_sides(alpha, k)?;
                (kind, q, c, false)
            };
            let rel_deviation = (quadrature - closed_form).abs() / closed_form.abs();
            checks.push(IdentityCheck { alpha, k, kind, quadrature, closed_form, rel_deviation, limiting });
        }
    }
    let max_rel_deviation = checks.iter().map(|c| c.rel_deviation).fold(0.0, f64::max);
    Ok(IdentityReport { checks, max_rel_deviation })
}
