use num_complex::Complex64;
use std::f64::consts::PI;

use super::MAX_TERMS;
use crate::error::{Error, Result};

/// A point of the upper half plane together with its nome `q = e^{i pi tau}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModularPoint {
    tau: Complex64,
}

impl ModularPoint {
    pub fn new(tau: Complex64) -> Result<Self> {
        if !(tau.im > 0.0) || !tau.re.is_finite() || !tau.im.is_finite() {
            return Err(Error::domain(
                "ModularPoint",
                format!("tau = {tau} must have positive imaginary part"),
            ));
        }
        Ok(ModularPoint { tau })
    }

    /// The purely imaginary point `i * t`.
    pub fn imaginary(t: f64) -> Result<Self> {
        Self::new(Complex64::new(0.0, t))
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn q(&self) -> Complex64 {
        (Complex64::i() * PI * self.tau).exp()
    }
}

/// Which Jacobi theta function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaKind {
    /// `sum exp(pi i tau (n+1/2)^2 + 2 pi i s (n+1/2))`
    Two,
    /// `sum exp(pi i tau n^2 + 2 pi i s n)`
    Three,
    /// `sum (-1)^n exp(pi i tau n^2 + 2 pi i s n)`
    Four,
}

/// Logarithm of a theta function.
///
/// Terms are summed outward from the dominant index, with every term scaled
/// by the largest one, so values far up the imaginary `s` axis neither
/// overflow nor lose the early growing terms. Summation stops once both new
/// terms are below `tol` relative to the partial sum.
pub fn ln_theta(kind: ThetaKind, s: Complex64, tau: &ModularPoint, tol: f64) -> Result<Complex64> {
    let t = tau.tau;
    if !(t.im > 0.0) {
        return Err(Error::NonConvergence {
            op: "theta",
            terms: 0,
        });
    }
    let (shift, s_eff) = match kind {
        ThetaKind::Two => (0.5, s),
        ThetaKind::Three => (0.0, s),
        ThetaKind::Four => (0.0, s + 0.5),
    };
    let ipi = Complex64::new(0.0, PI);
    let exponent = |n: i64| {
        let m = n as f64 + shift;
        ipi * t * (m * m) + ipi * 2.0 * s_eff * m
    };
    let peak = -s_eff.im / t.im - shift;
    let centre = if peak.abs() < 1e15 { peak.round() as i64 } else { 0 };
    let scale = exponent(centre).re;
    let term = |n: i64| (exponent(n) - scale).exp();

    let mut sum = term(centre);
    for k in 1..MAX_TERMS as i64 {
        let a = term(centre + k);
        let b = term(centre - k);
        sum += a + b;
        let bound = tol * sum.norm().max(1e-300);
        if a.norm() <= bound && b.norm() <= bound {
            return Ok(sum.ln() + scale);
        }
    }
    Err(Error::NonConvergence {
        op: "theta",
        terms: MAX_TERMS,
    })
}

/// Jacobi theta function `theta_j(s | tau)`.
pub fn theta(kind: ThetaKind, s: Complex64, tau: &ModularPoint, tol: f64) -> Result<Complex64> {
    ln_theta(kind, s, tau, tol).map(|l| l.exp())
}

/// Elliptic modular function `lambda(tau) = theta_2^4(0|tau) / theta_3^4(0|tau)`.
pub fn modular_lambda(tau: &ModularPoint) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let l2 = ln_theta(ThetaKind::Two, zero, tau, super::DEFAULT_TOL * 1e-2)?;
    let l3 = ln_theta(ThetaKind::Three, zero, tau, super::DEFAULT_TOL * 1e-2)?;
    Ok(((l2 - l3) * 4.0).exp())
}

/// `1 - lambda(tau)`, evaluated as `theta_4^4 / theta_3^4` so that it keeps
/// full relative precision when `lambda` is close to one.
pub fn modular_lambda_complement(tau: &ModularPoint) -> Result<Complex64> {
    let zero = Complex64::new(0.0, 0.0);
    let l4 = ln_theta(ThetaKind::Four, zero, tau, super::DEFAULT_TOL * 1e-2)?;
    let l3 = ln_theta(ThetaKind::Three, zero, tau, super::DEFAULT_TOL * 1e-2)?;
    Ok(((l4 - l3) * 4.0).exp())
}
