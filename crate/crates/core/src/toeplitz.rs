//! Toeplitz determinants: exact values by dense factorisation and the
//! large-size asymptotics of Szegő, Fisher-Hartwig and the theta-function
//! formula for the XY block symbol.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

use crate::chain::PhaseCase;
use crate::error::{Error, Result};
use crate::special::{ln_barnes_g, ln_barnes_g_pair, ln_theta, EllipticModulus, ModularPoint, ThetaKind, DEFAULT_TOL};

/// Default minimum distance from points where the theta asymptotics break down.
pub const PROXIMITY_THRESHOLD: f64 = 1e-3;

/// Fourier coefficients `c_k` for `-n <= k <= n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoSided<T> {
    n: usize,
    coeffs: Vec<T>,
}

impl<T: Copy> TwoSided<T> {
    /// Builds from the coefficients listed in order `c_{-n}, ..., c_n`.
    pub fn from_vec(coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() % 2 != 1 {
            return Err(Error::domain("TwoSided", "need an odd number of coefficients"));
        }
        Ok(TwoSided {
            n: coeffs.len() / 2,
            coeffs,
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(i64) -> T) -> Self {
        let coeffs = (-(n as i64)..=n as i64).map(f).collect();
        TwoSided { n, coeffs }
    }

    pub fn half_bandwidth(&self) -> usize {
        self.n
    }

    /// Coefficient `c_k`; panics for `|k| > n`.
    pub fn get(&self, k: i64) -> T {
        self.coeffs[(k + self.n as i64) as usize]
    }

    pub fn try_get(&self, k: i64) -> Option<T> {
        let idx = k + self.n as i64;
        (idx >= 0).then(|| self.coeffs.get(idx as usize).copied()).flatten()
    }
}

/// Whether a grid transform should verify that the symbol is resolved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Smoothness {
    /// Reject the result if the coefficient at the Nyquist index exceeds `limit`.
    Smooth { limit: f64 },
    /// Jumps or kinks expected; no resolution check.
    Unchecked,
}

/// Fourier coefficients `(1/2pi) int Phi(theta) e^{-ik theta} dtheta`, `|k| <= n`,
/// from `quad_points` uniform samples.
pub fn fourier_coeffs<F: FnMut(f64) -> Complex64>(
    mut symbol: F,
    n: usize,
    quad_points: usize,
    smoothness: Smoothness,
) -> Result<TwoSided<Complex64>> {
    if quad_points < 4 * n.max(1) {
        return Err(Error::domain(
            "fourier_coeffs",
            format!("quad_points = {quad_points} must be at least 4n = {}", 4 * n.max(1)),
        ));
    }
    let step = 2.0 * PI / quad_points as f64;
    let mut buf: Vec<Complex64> = (0..quad_points).map(|j| symbol(j as f64 * step)).collect();
    FftPlanner::new().plan_fft_forward(quad_points).process(&mut buf);
    let scale = 1.0 / quad_points as f64;
    if let Smoothness::Smooth { limit } = smoothness {
        let trailing = buf[quad_points / 2].norm() * scale;
        if trailing > limit {
            return Err(Error::Resolution {
                op: "fourier_coeffs",
                trailing,
                limit,
            });
        }
    }
    Ok(TwoSided::from_fn(n, |k| {
        buf[k.rem_euclid(quad_points as i64) as usize] * scale
    }))
}

/// A complex number held as its logarithm: `ln|D|` and `arg D`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogValue {
    pub ln: Complex64,
}

impl LogValue {
    pub fn new(ln: Complex64) -> Self {
        // keep the phase in (-pi, pi]
        let phase = Complex64::new(0.0, ln.im).exp().arg();
        LogValue {
            ln: Complex64::new(ln.re, phase),
        }
    }

    pub fn ln_abs(&self) -> f64 {
        self.ln.re
    }

    pub fn phase(&self) -> f64 {
        self.ln.im
    }

    pub fn value(&self) -> Complex64 {
        self.ln.exp()
    }

    /// `self / other - 1`, evaluated in log space.
    pub fn ratio_minus_one(&self, other: &LogValue) -> Complex64 {
        (self.ln - other.ln).exp() - 1.0
    }
}

/// Result of an exact determinant evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactDet {
    pub det: LogValue,
    /// Set when a pivot fell below `1e-13` of the largest pivot.
    pub ill_conditioned: bool,
}

fn lu_log_det(m: DMatrix<Complex64>) -> ExactDet {
    let lu = m.lu();
    let sign = lu.p().determinant::<f64>();
    let u = lu.u();
    let max = u.diagonal().iter().map(|d| d.norm()).fold(0.0, f64::max);
    let mut ln = Complex64::new(0.0, if sign < 0.0 { PI } else { 0.0 });
    let mut ill = false;
    for d in u.diagonal().iter() {
        if d.norm() <= 1e-13 * max {
            ill = true;
        }
        ln += d.ln();
    }
    if max == 0.0 {
        ill = true;
        ln = Complex64::new(f64::NEG_INFINITY, 0.0);
    }
    ExactDet {
        det: LogValue::new(ln),
        ill_conditioned: ill,
    }
}

/// `det (Phi_{i-j})_{i,j<L}` by LU with partial pivoting.
pub fn toeplitz_det_exact(coeffs: &TwoSided<Complex64>, l: usize) -> Result<ExactDet> {
    check_bandwidth(coeffs.half_bandwidth(), l)?;
    let m = DMatrix::from_fn(l, l, |i, j| coeffs.get(i as i64 - j as i64));
    Ok(lu_log_det(m))
}

/// Determinant of the `2L x 2L` block Toeplitz matrix with `2x2` blocks.
pub fn block_toeplitz_det_exact(coeffs: &TwoSided<Matrix2<Complex64>>, l: usize) -> Result<ExactDet> {
    check_bandwidth(coeffs.half_bandwidth(), l)?;
    let m = DMatrix::from_fn(2 * l, 2 * l, |i, j| {
        coeffs.get((i / 2) as i64 - (j / 2) as i64)[(i % 2, j % 2)]
    });
    Ok(lu_log_det(m))
}

fn check_bandwidth(n: usize, l: usize) -> Result<()> {
    if l == 0 || n + 1 < l {
        return Err(Error::domain(
            "toeplitz_det_exact",
            format!("need coefficients up to |k| = {} for L = {l}, have {n}", l.saturating_sub(1)),
        ));
    }
    Ok(())
}

/// `D_L(lambda) = prod (lambda - nu_m)` for the XX matrix.
pub fn xx_char_det_from_spectrum(nus: &[f64], lambda: Complex64) -> LogValue {
    LogValue::new(nus.iter().map(|&v| (lambda - v).ln()).sum())
}

/// `D_L(lambda) = (-1)^L prod (lambda^2 - nu_m^2)` for the Majorana matrix.
pub fn xy_char_det_from_spectrum(nus: &[f64], lambda: Complex64) -> LogValue {
    let sign = Complex64::new(0.0, PI * (nus.len() % 2) as f64);
    LogValue::new(sign + nus.iter().map(|&v| (lambda * lambda - v * v).ln()).sum::<Complex64>())
}

/// Szegő data of a smooth, non-vanishing, index-zero symbol: the Fourier
/// coefficients of `V = ln phi` and the Wiener-Hopf factors
/// `b_+(z) = exp(sum_{k>0} V_k z^k)`, `b_-(z) = exp(sum_{k>0} V_{-k} z^{-k})`.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothSymbolFactorization {
    vk: TwoSided<Complex64>,
}

impl SmoothSymbolFactorization {
    /// From known coefficients of `ln phi`.
    pub fn from_log_coeffs(vk: TwoSided<Complex64>) -> Self {
        SmoothSymbolFactorization { vk }
    }

    /// A constant symbol `e^{V0}`.
    pub fn constant(v0: Complex64) -> Self {
        SmoothSymbolFactorization {
            vk: TwoSided::from_fn(0, |_| v0),
        }
    }

    /// From samples of `phi` on the circle. The logarithm is taken along a
    /// continuous branch; a nonzero winding number is rejected. The tail
    /// coefficients `V_{+-n}` must be below `1e-12`.
    pub fn from_samples<F: Fn(f64) -> Complex64>(symbol: F, n: usize, quad_points: usize) -> Result<Self> {
        let step = 2.0 * PI / quad_points as f64;
        let samples: Vec<Complex64> = (0..quad_points).map(|j| symbol(j as f64 * step)).collect();
        let mut logs = Vec::with_capacity(quad_points);
        let mut prev_arg = 0.0;
        for (j, s) in samples.iter().enumerate() {
            if !(s.norm() > 0.0) || !s.norm().is_finite() {
                return Err(Error::domain(
                    "SmoothSymbolFactorization",
                    format!("symbol vanishes or is infinite at theta = {}", j as f64 * step),
                ));
            }
            let mut arg = s.arg();
            if j > 0 {
                arg += 2.0 * PI * ((prev_arg - arg) / (2.0 * PI)).round();
            }
            prev_arg = arg;
            logs.push(Complex64::new(s.norm().ln(), arg));
        }
        let first = samples[0].arg();
        let closing = first + 2.0 * PI * ((prev_arg - first) / (2.0 * PI)).round();
        let winding = ((closing - logs[0].im) / (2.0 * PI)).round();
        if winding != 0.0 {
            return Err(Error::domain(
                "SmoothSymbolFactorization",
                format!("symbol has index {winding}, Szego asymptotics need index 0"),
            ));
        }
        let mut it = logs.into_iter();
        let vk = fourier_coeffs(|_| it.next().unwrap_or_default(), n, quad_points, Smoothness::Unchecked)?;
        let tail = vk.get(n as i64).norm().max(vk.get(-(n as i64)).norm());
        if tail > 1e-12 {
            return Err(Error::TailTooLarge {
                op: "SmoothSymbolFactorization",
                tail,
                tol: 1e-12,
            });
        }
        Ok(SmoothSymbolFactorization { vk })
    }

    pub fn vk(&self) -> &TwoSided<Complex64> {
        &self.vk
    }

    pub fn v0(&self) -> Complex64 {
        self.vk.get(0)
    }

    /// `sum_{k>=1} k V_k V_{-k}`, the log of the Szegő constant.
    pub fn ln_szego_constant(&self) -> Complex64 {
        (1..=self.vk.half_bandwidth() as i64)
            .map(|k| self.vk.get(k) * self.vk.get(-k) * k as f64)
            .sum()
    }

    /// `ln b_+(z)`
    pub fn ln_b_plus(&self, z: Complex64) -> Complex64 {
        (1..=self.vk.half_bandwidth() as i64)
            .map(|k| self.vk.get(k) * z.powi(k as i32))
            .sum()
    }

    /// `ln b_-(z)`
    pub fn ln_b_minus(&self, z: Complex64) -> Complex64 {
        (1..=self.vk.half_bandwidth() as i64)
            .map(|k| self.vk.get(-k) * z.powi(-(k as i32)))
            .sum()
    }

    /// Taylor coefficients of `b_+(z)` up to `z^n`.
    pub fn bplus_coeffs(&self) -> Vec<Complex64> {
        exp_series(|k| self.vk.try_get(k as i64).unwrap_or_default(), self.vk.half_bandwidth())
    }

    /// Coefficients of `b_-(z)` in powers of `1/z` up to `z^{-n}`.
    pub fn bminus_coeffs(&self) -> Vec<Complex64> {
        exp_series(|k| self.vk.try_get(-(k as i64)).unwrap_or_default(), self.vk.half_bandwidth())
    }
}

/// Coefficients of `exp(sum_{k>=1} a_k x^k)` through `x^n`.
fn exp_series(a: impl Fn(usize) -> Complex64, n: usize) -> Vec<Complex64> {
    let mut b = vec![Complex64::new(0.0, 0.0); n + 1];
    b[0] = Complex64::new(1.0, 0.0);
    for m in 1..=n {
        let s: Complex64 = (1..=m).map(|k| a(k) * k as f64 * b[m - k]).sum();
        b[m] = s / m as f64;
    }
    b
}

/// A Fisher-Hartwig singularity `|z - z_j|^{2 alpha} g_{beta}(z)` at `z_j = e^{i theta_j}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FHSingularity {
    pub theta: f64,
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl FHSingularity {
    pub fn new(theta: f64, alpha: Complex64, beta: Complex64) -> Result<Self> {
        if !(0.0..2.0 * PI).contains(&theta) {
            return Err(Error::Hypothesis(format!("theta_j = {theta} must lie in [0, 2pi)")));
        }
        if !(alpha.re > -0.5) {
            return Err(Error::Hypothesis(format!("Re alpha = {} must exceed -1/2", alpha.re)));
        }
        Ok(FHSingularity { theta, alpha, beta })
    }

    pub fn z(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.theta)
    }
}

/// Evaluates the Fisher-Hartwig symbol
/// `e^{V(z)} z^{sum beta_j} prod |z - z_j|^{2 alpha_j} g_{beta_j}(z) z_j^{-beta_j}`
/// at `z = e^{i theta}`.
pub fn fisher_hartwig_symbol(f: &SmoothSymbolFactorization, sings: &[FHSingularity], theta: f64) -> Complex64 {
    let z = Complex64::from_polar(1.0, theta);
    let mut ln = f.v0() + f.ln_b_plus(z) + f.ln_b_minus(z);
    let beta_sum: Complex64 = sings.iter().map(|s| s.beta).sum();
    ln += beta_sum * Complex64::new(0.0, theta);
    for s in sings {
        let dist = (z - s.z()).norm();
        ln += 2.0 * s.alpha * dist.ln();
        let jump = if theta < s.theta { 1.0 } else { -1.0 };
        ln += Complex64::new(0.0, jump * PI) * s.beta;
        ln -= s.beta * Complex64::new(0.0, s.theta);
    }
    ln.exp()
}

/// Strong Szegő asymptotics `E_Sz e^{L V0}`.
pub fn szego_asymptotic(f: &SmoothSymbolFactorization, l: usize) -> Result<LogValue> {
    fisher_hartwig_asymptotic(f, &[], l)
}

/// Fisher-Hartwig asymptotics `E_FH L^{sum(alpha^2 - beta^2)} e^{L V0}`.
pub fn fisher_hartwig_asymptotic(
    f: &SmoothSymbolFactorization,
    sings: &[FHSingularity],
    l: usize,
) -> Result<LogValue> {
    let mut s: Vec<FHSingularity> = sings.to_vec();
    s.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    for w in s.windows(2) {
        if w[0].theta == w[1].theta {
            return Err(Error::Hypothesis(format!("repeated singularity at theta = {}", w[0].theta)));
        }
    }
    for (j, a) in s.iter().enumerate() {
        if !(a.alpha.re > -0.5) {
            return Err(Error::Hypothesis(format!("Re alpha_{j} = {} must exceed -1/2", a.alpha.re)));
        }
        for b in &s[j + 1..] {
            if !((a.beta.re - b.beta.re).abs() < 1.0) {
                return Err(Error::Hypothesis(format!(
                    "|Re beta_j - Re beta_k| = {} must be below 1",
                    (a.beta.re - b.beta.re).abs()
                )));
            }
        }
        for x in [a.alpha + a.beta, a.alpha - a.beta] {
            if x.im == 0.0 && x.re <= -1.0 && x.re.fract() == 0.0 {
                return Err(Error::Hypothesis(format!("alpha +- beta = {x} is a negative integer")));
            }
        }
    }

    let lf = l as f64;
    let mut ln = f.ln_szego_constant() + f.v0() * lf;
    for (j, a) in s.iter().enumerate() {
        let zj = a.z();
        ln += (a.beta - a.alpha) * f.ln_b_plus(zj) - (a.alpha + a.beta) * f.ln_b_minus(zj);
        ln += (a.alpha * a.alpha - a.beta * a.beta) * lf.ln();
        ln += ln_barnes_g(a.alpha + a.beta, DEFAULT_TOL)? + ln_barnes_g(a.alpha - a.beta, DEFAULT_TOL)?
            - ln_barnes_g(2.0 * a.alpha, DEFAULT_TOL)?;
        for b in &s[j + 1..] {
            let zk = b.z();
            ln += 2.0 * (a.beta * b.beta - a.alpha * b.alpha) * (zj - zk).norm().ln();
            // z_k / (z_j e^{i pi}) = e^{i(theta_k - theta_j - pi)} with the exponent in (-pi, pi)
            let ln_ratio = Complex64::new(0.0, b.theta - a.theta - PI);
            ln += (a.alpha * b.beta - b.alpha * a.beta) * ln_ratio;
        }
    }
    Ok(LogValue::new(ln))
}

/// A spectral parameter off the cut `[-1, 1]` and
/// `beta(lambda) = (1/2 pi i) ln((lambda+1)/(lambda-1))` with
/// `-pi <= arg < pi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParameter {
    pub lambda: Complex64,
    pub beta: Complex64,
}

/// `ln((lambda+1)/(lambda-1))` with the argument in `[-pi, pi)`.
pub fn ln_lambda_ratio(lambda: Complex64) -> Complex64 {
    let r = (lambda + 1.0) / (lambda - 1.0);
    let mut arg = r.arg();
    if arg >= PI {
        arg -= 2.0 * PI;
    }
    Complex64::new(r.norm().ln(), arg)
}

impl SpectralParameter {
    pub fn new(lambda: Complex64) -> Result<Self> {
        if !lambda.re.is_finite() || !lambda.im.is_finite() {
            return Err(Error::domain("SpectralParameter", "lambda must be finite"));
        }
        if lambda.im == 0.0 && lambda.re.abs() <= 1.0 {
            return Err(Error::domain(
                "SpectralParameter",
                format!("lambda = {} lies on the cut [-1, 1]", lambda.re),
            ));
        }
        let beta = ln_lambda_ratio(lambda) / Complex64::new(0.0, 2.0 * PI);
        Ok(SpectralParameter { lambda, beta })
    }

    pub fn real(lambda: f64) -> Result<Self> {
        Self::new(Complex64::new(lambda, 0.0))
    }
}

/// The data of the XX characteristic symbol (`lambda - 1` on `|theta| < k_F`,
/// `lambda + 1` elsewhere) in Fisher-Hartwig form: constant smooth part
/// `e^{V0} = (lambda+1) ((lambda+1)/(lambda-1))^{-k_F/pi}` and two pure jumps
/// `beta_1 = -beta(lambda)` at `k_F`, `beta_2 = beta(lambda)` at `2pi - k_F`.
pub fn xx_fisher_hartwig_data(
    s: &SpectralParameter,
    h: f64,
) -> Result<(SmoothSymbolFactorization, Vec<FHSingularity>)> {
    let kf = xx_fermi_momentum(h)?;
    let v0 = (s.lambda + 1.0).ln() - ln_lambda_ratio(s.lambda) * (kf / PI);
    let zero = Complex64::new(0.0, 0.0);
    let sings = vec![
        FHSingularity::new(kf, zero, -s.beta)?,
        FHSingularity::new(2.0 * PI - kf, zero, s.beta)?,
    ];
    Ok((SmoothSymbolFactorization::constant(v0), sings))
}

fn xx_fermi_momentum(h: f64) -> Result<f64> {
    if !(h.abs() < 2.0) {
        return Err(Error::domain("xx_char_det_asymptotic", format!("|h| = {} must be below 2", h.abs())));
    }
    Ok((h.abs() / 2.0).acos())
}

/// Closed-form Fisher-Hartwig asymptotics of `det(lambda I - G_L)` for the XX chain.
pub fn xx_char_det_asymptotic(s: &SpectralParameter, h: f64, l: usize) -> Result<LogValue> {
    let kf = xx_fermi_momentum(h)?;
    let b2 = s.beta * s.beta;
    let lf = l as f64;
    let v0 = (s.lambda + 1.0).ln() - ln_lambda_ratio(s.lambda) * (kf / PI);
    let ln = -b2 * (2.0 - 2.0 * (2.0 * kf).cos()).ln()
        + 2.0 * ln_barnes_g_pair(s.beta, DEFAULT_TOL)?
        + v0 * lf
        - 2.0 * b2 * lf.ln();
    Ok(LogValue::new(ln))
}

/// `beta(x)` for `x` on the cut `(-1, 1)`, taking the `arg = -pi` side.
/// The individual theta factors are real there.
pub fn beta_on_cut(x: f64) -> Complex64 {
    let r = ((1.0 + x) / (1.0 - x)).ln();
    Complex64::new(-0.5, -r / (2.0 * PI))
}

/// Zeros `lambda_m = tanh((m + (1-sigma)/2) pi tau0)` of the theta prefactor.
pub fn theta_zeros(tau0: f64, sigma: u8, count: usize) -> Vec<f64> {
    let shift = if sigma == 1 { 0.0 } else { 0.5 };
    (0..count)
        .map(|m| ((m as f64 + shift) * PI * tau0).tanh())
        .collect()
}

/// The two theta factors `theta_3(beta +- sigma tau/2)` and the normaliser
/// `theta_3(sigma tau/2)`, with `tau = i tau0`.
pub fn widom_theta_factors(beta: Complex64, tau0: f64, sigma: u8) -> Result<[Complex64; 3]> {
    let tau = ModularPoint::imaginary(tau0)?;
    let half = Complex64::new(0.0, sigma as f64 * tau0 / 2.0);
    let tol = DEFAULT_TOL * 1e-2;
    Ok([
        ln_theta(ThetaKind::Three, beta + half, &tau, tol)?.exp(),
        ln_theta(ThetaKind::Three, beta - half, &tau, tol)?.exp(),
        ln_theta(ThetaKind::Three, half, &tau, tol)?.exp(),
    ])
}

/// `ln` of the Widom constant
/// `theta_3(beta + sigma tau/2) theta_3(beta - sigma tau/2) / theta_3^2(sigma tau/2)`.
pub fn ln_widom_constant(beta: Complex64, tau0: f64, sigma: u8) -> Result<Complex64> {
    let tau = ModularPoint::imaginary(tau0)?;
    let half = Complex64::new(0.0, sigma as f64 * tau0 / 2.0);
    let tol = DEFAULT_TOL * 1e-2;
    Ok(ln_theta(ThetaKind::Three, beta + half, &tau, tol)?
        + ln_theta(ThetaKind::Three, beta - half, &tau, tol)?
        - 2.0 * ln_theta(ThetaKind::Three, half, &tau, tol)?)
}

/// Theta-function asymptotics of the XY characteristic determinant
/// `det(i lambda I - B_L) ~ E_W (1 - lambda^2)^L`.
///
/// `threshold` overrides [`PROXIMITY_THRESHOLD`], the minimum distance from
/// `+-1` and from the zeros `+-lambda_m`.
pub fn xy_block_det_asymptotic(
    s: &SpectralParameter,
    e: &EllipticModulus,
    case: &PhaseCase,
    l: usize,
    threshold: Option<f64>,
) -> Result<LogValue> {
    let thr = threshold.unwrap_or(PROXIMITY_THRESHOLD);
    let lam = s.lambda;
    let mut excluded = vec![1.0, -1.0];
    for z in theta_zeros(e.tau0, case.sigma, 10_000) {
        excluded.push(z);
        excluded.push(-z);
        if 1.0 - z < thr {
            break;
        }
    }
    for p in excluded {
        let d = (lam - p).norm();
        if d < thr {
            return Err(Error::Proximity {
                lambda: lam.to_string(),
                point: p.to_string(),
                distance: d,
                threshold: thr,
            });
        }
    }
    let widom = ln_widom_constant(s.beta, e.tau0, case.sigma)?;
    let ln = widom + (1.0 - lam * lam).ln() * l as f64;
    Ok(LogValue::new(ln))
}
