//! Entanglement entropies: exact finite-block values from the nu spectrum
//! and the large-block limits.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::chain::{ModelParams, NuSpectrum, PhaseCase};
use crate::error::{Error, Result};
use crate::quadrature::integrate_pieces;
use crate::special::{modular_lambda, modular_lambda_complement, EllipticModulus, ModularPoint};
use crate::toeplitz::ln_widom_constant;

/// Which formula produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EntropyMethod {
    ExactFiniteL,
    XXAsymptotic,
    LimitSeries,
    LimitIntegral,
    ClosedFormElliptic,
    RenyiQProduct,
    RenyiModular,
    CriticalApprox,
}

impl fmt::Display for EntropyMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            EntropyMethod::ExactFiniteL => "exact",
            EntropyMethod::XXAsymptotic => "xx_asymptotic",
            EntropyMethod::LimitSeries => "limit_series",
            EntropyMethod::LimitIntegral => "limit_integral",
            EntropyMethod::ClosedFormElliptic => "closed_form",
            EntropyMethod::RenyiQProduct => "renyi_qproduct",
            EntropyMethod::RenyiModular => "renyi_modular",
            EntropyMethod::CriticalApprox => "critical_approx",
        };
        f.write_str(s)
    }
}

/// The inputs a value refers to. `l = None` is the infinite block; `alpha = 1`
/// is von Neumann. `gamma` and `h` are unknown to operations that only see a
/// spectrum or a modulus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyParams {
    pub gamma: Option<f64>,
    pub h: Option<f64>,
    pub l: Option<usize>,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyResult {
    /// Entropy in nats.
    pub value: f64,
    pub method: EntropyMethod,
    pub params: EntropyParams,
}

impl EntropyResult {
    fn new(value: f64, method: EntropyMethod, l: Option<usize>, alpha: f64) -> Self {
        EntropyResult {
            value,
            method,
            params: EntropyParams {
                gamma: None,
                h: None,
                l,
                alpha,
            },
        }
    }

    /// Records the chain parameters.
    pub fn with_model(mut self, p: &ModelParams) -> Self {
        self.params.gamma = Some(p.gamma);
        self.params.h = Some(p.h);
        self
    }
}

fn xlnx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `e(x, nu) = -((x+nu)/2) ln((x+nu)/2) - ((x-nu)/2) ln((x-nu)/2)`, with `0 ln 0 = 0`.
pub fn e_func(x: f64, nu: f64) -> Result<f64> {
    if !(x >= nu.abs()) {
        return Err(Error::domain("e_func", format!("need x >= |nu|, got x = {x}, nu = {nu}")));
    }
    Ok(-xlnx((x + nu) / 2.0) - xlnx((x - nu) / 2.0))
}

/// `e(1, tanh y)` without cancellation for large `y`.
fn e_tanh(y: f64) -> f64 {
    let y = y.abs();
    let t = (-2.0 * y).exp();
    let l = t.ln_1p();
    let p = 1.0 / (1.0 + t);
    let q = t / (1.0 + t);
    p * l + q * (2.0 * y + l)
}

fn check_alpha(op: &'static str, alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || alpha == 1.0 || !alpha.is_finite() {
        return Err(Error::domain(
            op,
            format!("Renyi index alpha = {alpha} must be positive, finite and different from 1"),
        ));
    }
    Ok(())
}

/// `S = sum_m e(1, nu_m)`.
pub fn vn_entropy_exact(nus: &NuSpectrum) -> Result<EntropyResult> {
    let mut s = 0.0;
    for &v in &nus.nus {
        s += e_func(1.0, v)?;
    }
    Ok(EntropyResult::new(s, EntropyMethod::ExactFiniteL, Some(nus.len()), 1.0))
}

/// `S_alpha = (1/(1-alpha)) sum_m ln[((1+nu)/2)^alpha + ((1-nu)/2)^alpha]`.
pub fn renyi_exact(nus: &NuSpectrum, alpha: f64) -> Result<EntropyResult> {
    check_alpha("renyi_exact", alpha)?;
    let s: f64 = nus
        .nus
        .iter()
        .map(|&v| {
            let v = v.abs();
            let hi = (1.0 + v) / 2.0;
            let lo = (1.0 - v) / 2.0;
            // ln(hi^a + lo^a) = a ln hi + ln(1 + (lo/hi)^a)
            alpha * hi.ln() + (lo / hi).powf(alpha).ln_1p()
        })
        .sum();
    Ok(EntropyResult::new(s / (1.0 - alpha), EntropyMethod::ExactFiniteL, Some(nus.len()), alpha))
}

/// `sinh(u) - u cosh(u)` and `sinh^3(u)` combination
/// `3 (2 sinh u - 2u cosh u) + 2 sinh^3 u`, summed from its power series
/// (all terms past the cancelling cubic are positive).
fn upsilon_numerator(u: f64) -> f64 {
    let u2 = u * u;
    // term_n = u^{2n+1}/(2n+1)!
    let mut term = u * u2 / 6.0;
    let mut pow3 = 27.0;
    let mut sum = 0.0;
    for n in 1..40 {
        let c = -12.0 * n as f64 + (pow3 - 3.0) / 2.0;
        sum += c * term;
        if n >= 2 && (c * term).abs() < 1e-18 * sum.abs() {
            break;
        }
        term *= u2 / ((2 * n + 2) * (2 * n + 3)) as f64;
        pow3 *= 9.0;
    }
    sum
}

fn upsilon_integrand(t: f64) -> f64 {
    let u = t / 2.0;
    let s = u.sinh();
    if t < 1.0 {
        if t == 0.0 {
            return -1.0 / 3.0;
        }
        (-t).exp_m1() / (3.0 * t) + upsilon_numerator(u) / (6.0 * t * s * s * s)
    } else {
        (-t).exp() / (3.0 * t) + (2.0 * s - t * u.cosh()) / (2.0 * t * s * s * s)
    }
}

/// The integrand of the XX constant, exposed for checks of its `t -> 0` limit.
pub fn upsilon1_integrand(t: f64) -> f64 {
    upsilon_integrand(t)
}

/// `Upsilon_1 = -int_0^inf [e^{-t}/(3t) + 1/(t sinh^2(t/2)) - cosh(t/2)/(2 sinh^3(t/2))] dt`,
/// computed once.
pub fn upsilon1() -> f64 {
    static CACHE: OnceLock<f64> = OnceLock::new();
    *CACHE.get_or_init(|| {
        -integrate_pieces(upsilon_integrand, &[0.0, 1.0, 5.0, 15.0, 50.0], 1e-10)
            .expect("fixed smooth integrand")
    })
}

/// `(1/3) ln L + (1/6) ln(1 - h^2/4) + (ln 2)/3 + Upsilon_1`.
pub fn xx_entropy_asymptotic(h: f64, l: usize) -> Result<EntropyResult> {
    if !(h.abs() < 2.0) {
        return Err(Error::domain("xx_entropy_asymptotic", format!("|h| = {} must be below 2", h.abs())));
    }
    if l < 2 {
        return Err(Error::domain("xx_entropy_asymptotic", "block length must be >= 2"));
    }
    let v = (l as f64).ln() / 3.0 + (1.0 - h * h / 4.0).ln() / 6.0 + LN_2 / 3.0 + upsilon1();
    Ok(EntropyResult {
        value: v,
        method: EntropyMethod::XXAsymptotic,
        params: EntropyParams {
            gamma: Some(0.0),
            h: Some(h),
            l: Some(l),
            alpha: 1.0,
        },
    })
}

/// `lambda_m = tanh((m + (1-sigma)/2) pi tau0)` for `m = 0..=M`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaZeroLadder {
    pub tau0: f64,
    pub sigma: u8,
    pub values: Vec<f64>,
}

pub fn theta_zero_ladder(e: &EllipticModulus, sigma: u8, m: usize) -> Result<ThetaZeroLadder> {
    if sigma > 1 {
        return Err(Error::domain("theta_zero_ladder", format!("sigma = {sigma} must be 0 or 1")));
    }
    Ok(ThetaZeroLadder {
        tau0: e.tau0,
        sigma,
        values: crate::toeplitz::theta_zeros(e.tau0, sigma, m + 1),
    })
}

/// Budget for the ladder sum.
const SERIES_BUDGET: usize = 100_000;

/// `S = sum_{m in Z} e(1, lambda_m)`, stopping at the first term below `tol`.
pub fn vn_entropy_limit_series(e: &EllipticModulus, sigma: u8, tol: f64) -> Result<EntropyResult> {
    if sigma > 1 {
        return Err(Error::domain("vn_entropy_limit_series", format!("sigma = {sigma} must be 0 or 1")));
    }
    let shift = if sigma == 1 { 0.0 } else { 0.5 };
    // the ladder is odd under m -> -m - (1 - sigma)
    let mut s = if sigma == 1 { LN_2 } else { 0.0 };
    let start = sigma as usize;
    for m in start..start + SERIES_BUDGET {
        let term = e_tanh((m as f64 + shift) * PI * e.tau0);
        s += 2.0 * term;
        if term < tol {
            return Ok(EntropyResult::new(s, EntropyMethod::LimitSeries, None, 1.0));
        }
    }
    Err(Error::NonConvergence {
        op: "vn_entropy_limit_series",
        terms: SERIES_BUDGET,
    })
}

fn limit_integrand(x: f64, tau0: f64, sigma: u8) -> Result<f64> {
    let w = ln_widom_constant(Complex64::new(0.0, x), tau0, sigma)?;
    let sh = (PI * x).sinh();
    Ok(PI / 2.0 * w.re / (sh * sh))
}

/// `S = (pi/2) int_0^inf ln[theta_3(ix + sigma tau/2) theta_3(ix - sigma tau/2) / theta_3^2(sigma tau/2)] dx / sinh^2(pi x)`.
pub fn vn_entropy_limit_integral(e: &EllipticModulus, sigma: u8) -> Result<EntropyResult> {
    if sigma > 1 {
        return Err(Error::domain("vn_entropy_limit_integral", format!("sigma = {sigma} must be 0 or 1")));
    }
    let tau0 = e.tau0;
    let f = |x: f64| limit_integrand(x, tau0, sigma);
    // quadratic through three small abscissae replaces the 0/0 form near the origin
    let (x1, x2, x3) = (1e-3, 2e-3, 4e-3);
    let (f1, f2, f3) = (f(x1)?, f(x2)?, f(x3)?);
    let quad = move |x: f64| {
        f1 * (x - x2) * (x - x3) / ((x1 - x2) * (x1 - x3))
            + f2 * (x - x1) * (x - x3) / ((x2 - x1) * (x2 - x3))
            + f3 * (x - x1) * (x - x2) / ((x3 - x1) * (x3 - x2))
    };
    let mut upper = 1.0;
    while f(upper)?.abs() >= 1e-16 {
        upper += 0.5;
        if upper > 200.0 {
            return Err(Error::Quadrature { error: f(upper)?.abs(), tol: 1e-16 });
        }
    }
    let mut breaks = vec![0.0, x1, 0.05, 0.25, 1.0];
    let mut b = 2.0;
    while b < upper {
        breaks.push(b);
        b += 2.0;
    }
    breaks.push(upper);
    let first_err = std::cell::RefCell::new(None);
    let g = |x: f64| {
        if x <= x1 {
            return quad(x);
        }
        match f(x) {
            Ok(v) => v,
            Err(err) => {
                first_err.borrow_mut().get_or_insert(err);
                0.0
            }
        }
    };
    let v = integrate_pieces(g, &breaks, 1e-12)?;
    if let Some(err) = first_err.into_inner() {
        return Err(err);
    }
    Ok(EntropyResult::new(v, EntropyMethod::LimitIntegral, None, 1.0))
}

/// Closed forms in terms of `k`, `k'` and the complete elliptic integrals.
pub fn vn_entropy_closed(e: &EllipticModulus, case: &PhaseCase) -> Result<EntropyResult> {
    let (k, kp) = (e.k, e.kprime);
    let kk = 4.0 * e.big_k() * e.big_k_prime() / PI;
    let v = if case.sigma == 1 {
        ((k * k / (16.0 * kp)).ln() + (1.0 - k * k / 2.0) * kk) / 6.0 + LN_2
    } else {
        ((16.0 / (k * k * kp * kp)).ln() + (k * k - kp * kp) * kk) / 12.0
    };
    Ok(EntropyResult::new(v, EntropyMethod::ClosedFormElliptic, None, 1.0))
}

/// `2 sum_{n >= n0} ln(1 + q^{step n + offset})` with `ln q = -a`, truncated at
/// relative tolerance `1e-15`.
fn ln_q_product(a: f64, step: f64, offset: f64, n0: usize) -> Result<f64> {
    let mut s = 0.0;
    for n in n0..n0 + SERIES_BUDGET {
        let term = (-a * (step * n as f64 + offset)).exp().ln_1p();
        s += 2.0 * term;
        if term <= 1e-15 * s.abs() || term == 0.0 {
            return Ok(s);
        }
    }
    Err(Error::NonConvergence {
        op: "renyi_limit_qproduct",
        terms: SERIES_BUDGET,
    })
}

/// Limiting Rényi entropy from the products over `q_alpha = e^{-alpha pi tau0}`.
pub fn renyi_limit_qproduct(alpha: f64, e: &EllipticModulus, case: &PhaseCase) -> Result<EntropyResult> {
    check_alpha("renyi_limit_qproduct", alpha)?;
    let (k, kp, t) = (e.k, e.kprime, e.tau0);
    let a = alpha * PI * t;
    let r = alpha / (1.0 - alpha);
    let v = if case.sigma == 0 {
        r * (PI * t / 12.0 + (k * kp / 4.0).ln() / 6.0) + ln_q_product(a, 2.0, 1.0, 0)? / (1.0 - alpha)
    } else {
        r * (-PI * t / 6.0 + (kp / (4.0 * k * k)).ln() / 6.0)
            + ln_q_product(a, 2.0, 0.0, 1)? / (1.0 - alpha)
            + LN_2 / (1.0 - alpha)
    };
    Ok(EntropyResult::new(v, EntropyMethod::RenyiQProduct, None, alpha))
}

/// Limiting Rényi entropy through the modular lambda function at `i alpha tau0`.
pub fn renyi_limit_modular(alpha: f64, e: &EllipticModulus, case: &PhaseCase) -> Result<EntropyResult> {
    check_alpha("renyi_limit_modular", alpha)?;
    let (k, kp) = (e.k, e.kprime);
    let tau = ModularPoint::imaginary(alpha * e.tau0)?;
    let lam = modular_lambda(&tau)?.re;
    let lamc = modular_lambda_complement(&tau)?.re;
    let r = alpha / (1.0 - alpha);
    let v = if case.sigma == 0 {
        r * (k * kp).ln() / 6.0 - (lam.ln() + lamc.ln()) / (12.0 * (1.0 - alpha)) + LN_2 / 3.0
    } else {
        r * (kp / (k * k)).ln() / 6.0 + (2.0 * lam.ln() - lamc.ln()) / (12.0 * (1.0 - alpha)) + LN_2 / 3.0
    };
    Ok(EntropyResult::new(v, EntropyMethod::RenyiModular, None, alpha))
}

/// Two-term approximations near the critical lines: `h -> 2` for
/// `|2 - h| < 0.1`, and `gamma -> 0` for `gamma < 0.1`, `h < 2`.
pub fn critical_entropy_approx(p: &ModelParams) -> Result<EntropyResult> {
    let (g, h) = (p.gamma, p.h);
    let v = if g > 0.0 && (2.0 - h).abs() < 0.1 && h != 2.0 {
        -(2.0 - h).abs().ln() / 6.0 + (4.0 * g).ln() / 3.0
    } else if g > 0.0 && g < 0.1 && h < 2.0 {
        -g.ln() / 3.0 + (4.0 - h * h).ln() / 6.0 + LN_2 / 3.0
    } else {
        return Err(Error::domain(
            "critical_entropy_approx",
            format!("(gamma, h) = ({g}, {h}) is outside both near-critical regimes"),
        ));
    };
    Ok(EntropyResult::new(v, EntropyMethod::CriticalApprox, None, 1.0).with_model(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{classify_case, modulus_k};

    #[test]
    fn e_func_values() {
        assert!((e_func(1.0, 0.0).unwrap() - LN_2).abs() < 1e-16);
        assert_eq!(e_func(1.0, 1.0).unwrap(), 0.0);
        assert_eq!(e_func(1.0, 0.37).unwrap(), e_func(1.0, -0.37).unwrap());
        assert!(e_func(0.5, 0.7).is_err());
    }

    #[test]
    fn stable_tanh_form() {
        for y in [0.0f64, 0.1, 1.0, 3.0, 7.0] {
            let direct = e_func(1.0, y.tanh()).unwrap();
            assert!((e_tanh(y) - direct).abs() < 1e-12, "y={y}");
        }
        assert!(e_tanh(30.0) > 0.0);
    }

    #[test]
    fn renyi_single_values() {
        let one = NuSpectrum::new(vec![0.0]).unwrap();
        assert!((renyi_exact(&one, 2.0).unwrap().value - LN_2).abs() < 1e-15);
        let pure = NuSpectrum::new(vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(renyi_exact(&pure, 3.0).unwrap().value, 0.0);
        assert_eq!(vn_entropy_exact(&pure).unwrap().value, 0.0);
        assert!(renyi_exact(&one, 1.0).is_err());
        assert!(renyi_exact(&one, -2.0).is_err());
    }

    #[test]
    fn upsilon_integrand_finite_at_origin() {
        let a = upsilon_integrand(1e-3);
        let b = upsilon_integrand(1e-4);
        assert!(a.is_finite() && b.is_finite());
        assert!((a - b).abs() < 1e-3);
        assert!((upsilon_integrand(1.0 - 1e-9) - upsilon_integrand(1.0)).abs() < 1e-9);
    }

    #[test]
    fn upsilon_value() {
        assert!((upsilon1() - 0.495_017_9).abs() < 1e-6, "{}", upsilon1());
    }

    #[test]
    fn ladder_basics() {
        let e = crate::special::tau0_from_modulus(0.6).unwrap();
        let l1 = theta_zero_ladder(&e, 1, 5).unwrap();
        assert_eq!(l1.values[0], 0.0);
        assert_eq!(l1.values.len(), 6);
        let l0 = theta_zero_ladder(&e, 0, 5).unwrap();
        assert!((l0.values[0] - (PI * e.tau0 / 2.0).tanh()).abs() < 1e-16);
        for w in l1.values.windows(2) {
            assert!(w[1] > w[0] && w[1] - w[0] <= 4.0 * PI * e.tau0);
        }
    }

    #[test]
    fn large_tau_series_is_ln2() {
        let e = EllipticModulus {
            k: 0.0,
            kprime: 1.0,
            tau0: 5.0,
        };
        let s = vn_entropy_limit_series(&e, 1, 1e-16).unwrap().value;
        assert!((s - LN_2).abs() < 1e-11);
        assert!(s > LN_2);
    }

    #[test]
    fn critical_examples() {
        let p = ModelParams::new(1.0, 1.99).unwrap();
        let v = critical_entropy_approx(&p).unwrap().value;
        assert!((v - (-(0.01f64).ln() / 6.0 + 4.0f64.ln() / 3.0)).abs() < 1e-12);
        let p = ModelParams::new(0.01, 1.0).unwrap();
        let v = critical_entropy_approx(&p).unwrap().value;
        assert!((v - (-(0.01f64).ln() / 3.0 + 3.0f64.ln() / 6.0 + LN_2 / 3.0)).abs() < 1e-12);
        assert!(critical_entropy_approx(&ModelParams::new(0.5, 1.0).unwrap()).is_err());
    }

    #[test]
    fn closed_matches_series_at_sample_point() {
        let p = ModelParams::new(0.5, 1.0).unwrap();
        let e = modulus_k(&p).unwrap();
        let case = classify_case(&p).unwrap();
        let a = vn_entropy_closed(&e, &case).unwrap().value;
        let b = vn_entropy_limit_series(&e, case.sigma, 1e-16).unwrap().value;
        assert!((a - b).abs() < 1e-10, "{a} {b}");
    }
}
