use num_complex::Complex64;

use super::{MAX_TERMS};
use crate::error::{Error, Result};

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_860_606_512_090_082_402_431;

// B_{2j} / (2j)! for j = 1..=8
const BERNOULLI_OVER_FACT: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3617.0 / 10_670_622_842_880_000.0,
];

/// Hurwitz zeta `sum_{k>=0} (a+k)^{-s}` for integer `s >= 2` and `a >= 16`,
/// by Euler-Maclaurin summation with the integral started at `a`.
fn hurwitz_zeta(s: u32, a: f64) -> f64 {
    let sf = s as f64;
    let mut sum = a.powf(1.0 - sf) / (sf - 1.0) + 0.5 * a.powf(-sf);
    // rising factorial s (s+1) ... (s+2j-2)
    let mut rising = sf;
    let mut pow = a.powf(-sf - 1.0);
    for (j, b) in BERNOULLI_OVER_FACT.iter().enumerate() {
        let term = b * rising * pow;
        sum += term;
        if term.abs() < 1e-300 || term.abs() < 1e-18 * sum.abs() {
            break;
        }
        let j2 = 2.0 * (j as f64 + 1.0);
        rising *= (sf + j2 - 1.0) * (sf + j2);
        pow /= a * a;
    }
    sum
}

/// Number of leading product factors summed exactly before the tail is
/// resummed through zeta values.
const HEAD: usize = 16;

/// Sums `sum_{n>HEAD} sum_{j} coeff(j) * n^{-p(j)}` given the power series of
/// a log-factor in `1/n`, stopping once the last included term is below
/// `tol` relative to `scale`.
fn tail_sum<C, P>(coeff: C, power: P, first_j: u32, scale: f64, tol: f64, op: &'static str) -> Result<Complex64>
where
    C: Fn(u32) -> Complex64,
    P: Fn(u32) -> u32,
{
    let a = (HEAD + 1) as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in first_j..first_j + 400 {
        let term = coeff(j) * hurwitz_zeta(power(j), a);
        sum += term;
        if term.norm() <= tol * scale.max(sum.norm()).max(1e-300) || term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence { op, terms: MAX_TERMS })
}

/// `ln G(1+x)` from the Weierstrass product of the Barnes G-function.
///
/// The first factors are taken exactly; the remaining tail
/// `sum_{n>N} [n ln(1+x/n) - x + x^2/(2n)]` is expanded in powers of `x/n` and
/// summed with Hurwitz zeta values, so the result is accurate to `tol`
/// relative without millions of factors.
pub fn ln_barnes_g(x: Complex64, tol: f64) -> Result<Complex64> {
    if !(tol > 0.0) {
        return Err(Error::domain("barnes_g", "tolerance must be positive"));
    }
    if !(x.norm() <= 1.0) {
        return Err(Error::domain(
            "barnes_g",
            format!("|x| = {} must not exceed 1", x.norm()),
        ));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut acc = x * 0.5 * two_pi.ln() - (x + 1.0) * x * 0.5 - EULER_GAMMA * x * x * 0.5;
    for n in 1..=HEAD {
        let nf = n as f64;
        acc += nf * (x / nf + 1.0).ln() - x + x * x / (2.0 * nf);
    }
    // n ln(1+x/n) - x + x^2/(2n) = sum_{j>=3} (-1)^{j+1} x^j / (j n^{j-1})
    let tail = tail_sum(
        |j| {
            let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
            x.powu(j) * (sign / j as f64)
        },
        |j| j - 1,
        3,
        acc.norm(),
        tol,
        "barnes_g",
    )?;
    Ok(acc + tail)
}

/// `G(1+x)` for complex `|x| <= 1`.
pub fn barnes_g(x: Complex64, tol: f64) -> Result<Complex64> {
    ln_barnes_g(x, tol).map(|l| l.exp())
}

/// `ln [G(1+beta) G(1-beta)]` from the symmetric product
/// `e^{-(1+gamma_E) beta^2} prod_n (1 - beta^2/n^2)^n e^{beta^2/n}`.
pub fn ln_barnes_g_pair(beta: Complex64, tol: f64) -> Result<Complex64> {
    if !(tol > 0.0) {
        return Err(Error::domain("barnes_g_pair", "tolerance must be positive"));
    }
    if !(beta.re.abs() < 0.5) {
        return Err(Error::domain(
            "barnes_g_pair",
            format!("|Re beta| = {} must be below 1/2", beta.re.abs()),
        ));
    }
    let w = beta * beta;
    if beta.norm() >= HEAD as f64 {
        return Err(Error::domain(
            "barnes_g_pair",
            format!("|beta| = {} too large for the product expansion", beta.norm()),
        ));
    }
    let mut acc = -(1.0 + EULER_GAMMA) * w;
    for n in 1..=HEAD {
        let n2 = (n * n) as f64;
        acc += (n as f64) * (-w / n2 + 1.0).ln() + w / n as f64;
    }
    // n ln(1-w/n^2) + w/n^2 = -sum_{j>=2} w^j / (j n^{2j-1})
    let tail = tail_sum(
        |j| -w.powu(j) / j as f64,
        |j| 2 * j - 1,
        2,
        acc.norm(),
        tol,
        "barnes_g_pair",
    )?;
    Ok(acc + tail)
}

/// `G(1+beta) G(1-beta)` for `|Re beta| < 1/2`.
pub fn barnes_g_pair(beta: Complex64, tol: f64) -> Result<Complex64> {
    ln_barnes_g_pair(beta, tol).map(|l| l.exp())
}
