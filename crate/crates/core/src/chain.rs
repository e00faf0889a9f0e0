//! Ground-state correlation matrices of the XX/XY chain
//! `H = -sum (1+gamma) sx sx + (1-gamma) sy sy + h sz`
//! and the spectrum that determines every block entropy.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::special::EllipticModulus;
use crate::toeplitz::{fourier_coeffs, Smoothness};

/// Relative tolerance used to reject parameters on a phase boundary.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Tolerance for spectrum values outside `[-1, 1]` before clamping.
pub const SPECTRUM_TOL: f64 = 1e-8;

/// Anisotropy `gamma` and magnetic field `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub gamma: f64,
    pub h: f64,
}

impl ModelParams {
    pub fn new(gamma: f64, h: f64) -> Result<Self> {
        if !(gamma >= 0.0 && gamma.is_finite()) {
            return Err(Error::domain("ModelParams", format!("gamma = {gamma} must be >= 0")));
        }
        if !(h >= 0.0 && h.is_finite()) {
            return Err(Error::domain("ModelParams", format!("h = {h} must be >= 0")));
        }
        Ok(ModelParams { gamma, h })
    }

    pub fn is_xx(&self) -> bool {
        self.gamma == 0.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseLabel {
    /// `2 sqrt(1-gamma^2) < h < 2`
    Case1a,
    /// `h^2 < 4 (1-gamma^2)`
    Case1b,
    /// `h > 2`
    Case2,
}

impl std::fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CaseLabel::Case1a => "1a",
            CaseLabel::Case1b => "1b",
            CaseLabel::Case2 => "2",
        })
    }
}

/// Phase region together with the theta-shift `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseCase {
    pub label: CaseLabel,
    pub sigma: u8,
}

impl PhaseCase {
    /// `h < 2`
    pub fn is_weak_field(&self) -> bool {
        self.sigma == 1
    }
}

pub fn classify_case(p: &ModelParams) -> Result<PhaseCase> {
    let ModelParams { gamma, h } = *p;
    if gamma == 0.0 {
        return Err(Error::Boundary {
            manifold: "gamma = 0",
            gamma,
            h,
        });
    }
    if (h - 2.0).abs() <= BOUNDARY_TOL * 2.0 {
        return Err(Error::Boundary {
            manifold: "h = 2",
            gamma,
            h,
        });
    }
    let inner = 1.0 - gamma * gamma;
    if inner >= 0.0 && (h - 2.0 * inner.sqrt()).abs() <= BOUNDARY_TOL * h.max(1.0) {
        return Err(Error::Boundary {
            manifold: "h = 2 sqrt(1 - gamma^2)",
            gamma,
            h,
        });
    }
    let label = if h > 2.0 {
        CaseLabel::Case2
    } else if h * h < 4.0 * inner {
        CaseLabel::Case1b
    } else {
        CaseLabel::Case1a
    };
    let sigma = if label == CaseLabel::Case2 { 0 } else { 1 };
    Ok(PhaseCase { label, sigma })
}

/// Branch data of the symbol and the four branch points of its elliptic curve,
/// labelled so that `A`, `B` lie inside the unit circle and `C`, `D` outside.
///
/// On the Ising line `gamma = 1`, `lambda1 = 0` and `D` is the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchPoints {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

fn inverse(z: Complex64) -> Complex64 {
    if z == Complex64::new(0.0, 0.0) {
        Complex64::new(f64::INFINITY, 0.0)
    } else {
        z.inv()
    }
}

pub fn branch_points(p: &ModelParams) -> Result<BranchPoints> {
    let case = classify_case(p)?;
    let ModelParams { gamma, h } = *p;
    let disc = h * h - 4.0 * (1.0 - gamma) * (1.0 + gamma);
    let (l1, l2) = match case.label {
        CaseLabel::Case1a | CaseLabel::Case2 => {
            // rationalised forms of (h - sqrt(disc)) / (2(1+gamma)) and (1+gamma)/(1-gamma) lambda1
            let den = h + disc.sqrt();
            (
                Complex64::new(2.0 * (1.0 - gamma) / den, 0.0),
                Complex64::new(2.0 * (1.0 + gamma) / den, 0.0),
            )
        }
        CaseLabel::Case1b => {
            let l1 = Complex64::new(h, -(-disc).sqrt()) / (2.0 * (1.0 + gamma));
            (l1, l1.conj().inv())
        }
    };
    let (a, b, c, d) = match case.label {
        CaseLabel::Case1a => (l1, inverse(l2), l2, inverse(l1)),
        CaseLabel::Case1b => (l1, inverse(l2), inverse(l1), l2),
        CaseLabel::Case2 => (l1, l2, inverse(l2), inverse(l1)),
    };
    Ok(BranchPoints {
        lambda1: l1,
        lambda2: l2,
        a,
        b,
        c,
        d,
    })
}

/// Elliptic modulus of the chain, with `k` and `k'` each computed in closed
/// form so neither loses precision near a phase boundary.
pub fn modulus_k(p: &ModelParams) -> Result<EllipticModulus> {
    let case = classify_case(p)?;
    let ModelParams { gamma, h } = *p;
    let hh = h / 2.0;
    // (h/2)^2 - 1 and 1 - (h/2)^2 without cancellation
    let above = (hh - 1.0) * (hh + 1.0);
    let below = (1.0 - hh) * (1.0 + hh);
    let (k, kp) = match case.label {
        CaseLabel::Case1a => ((above + gamma * gamma).sqrt() / gamma, below.sqrt() / gamma),
        CaseLabel::Case1b => (
            ((below - gamma * gamma) / below).sqrt(),
            gamma / below.sqrt(),
        ),
        CaseLabel::Case2 => {
            let r = (above + gamma * gamma).sqrt();
            (gamma / r, above.sqrt() / r)
        }
    };
    EllipticModulus::from_pair(k, kp)
}

/// The unimodular symbol `phi(theta) = (cos - i gamma sin - h/2) / |...|`.
pub fn symbol_phi(theta: f64, p: &ModelParams) -> Result<Complex64> {
    let z = Complex64::new(theta.cos() - p.h / 2.0, -p.gamma * theta.sin());
    let r = z.norm();
    if r <= 1e-14 {
        return Err(Error::SingularSymbol {
            theta,
            gamma: p.gamma,
            h: p.h,
        });
    }
    Ok(z / r)
}

/// The 2x2 symbol `[[0, phi], [-1/phi, 0]]` generating the Majorana correlations.
pub fn symbol_phi0(theta: f64, p: &ModelParams) -> Result<Matrix2<Complex64>> {
    let phi = symbol_phi(theta, p)?;
    let zero = Complex64::new(0.0, 0.0);
    Ok(Matrix2::new(zero, phi, -phi.inv(), zero))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// `2L x 2L` real antisymmetric Majorana correlation matrix.
    MajoranaXY,
    /// `L x L` real symmetric Toeplitz matrix of the XX chain.
    SymmetricXX,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub l: usize,
    pub kind: MatrixKind,
    pub entries: DMatrix<f64>,
}

/// Default grid for the Fourier coefficients of the symbol.
pub fn default_quad_points(l: usize) -> usize {
    (8 * l).max(4096).next_power_of_two()
}

/// Fourier coefficients `phi_l` of the XX step symbol (+1 on `|theta| < k_F`).
pub fn xx_symbol_coeff(k_f: f64, l: i64) -> f64 {
    if l == 0 {
        2.0 * k_f / PI - 1.0
    } else {
        let lf = l as f64;
        2.0 * (k_f * lf).sin() / (PI * lf)
    }
}

fn xx_fermi_momentum(h: f64) -> Result<f64> {
    if !(h.abs() < 2.0) {
        return Err(Error::domain("build_xx_matrix", format!("|h| = {} must be below 2", h.abs())));
    }
    Ok((h.abs() / 2.0).acos())
}

/// Builds the Majorana correlation matrix `B_L` with `2x2` blocks `Pi_{i-j}`.
///
/// For `gamma > 0` the coefficients of the smooth symbol come from a uniform
/// grid of `quad_points` samples (a power of two, at least `4L`). At
/// `gamma = 0` the symbol is a step function and the closed-form coefficients
/// are used instead.
pub fn build_correlation_matrix(
    p: &ModelParams,
    l: usize,
    quad_points: Option<usize>,
) -> Result<CorrelationMatrix> {
    if l == 0 {
        return Err(Error::domain("build_correlation_matrix", "block length must be >= 1"));
    }
    let n = quad_points.unwrap_or_else(|| default_quad_points(l));
    if !n.is_power_of_two() || n < 4 * l {
        return Err(Error::domain(
            "build_correlation_matrix",
            format!("quad_points = {n} must be a power of two >= 4L = {}", 4 * l),
        ));
    }
    let nl = l as i64;
    // phi_k for |k| < L; the symbol has phi(-theta) = conj(phi(theta)) so these are real
    let coeff: Vec<f64> = if p.is_xx() {
        if p.h > 2.0 {
            (-(nl - 1)..nl).map(|k| if k == 0 { -1.0 } else { 0.0 }).collect()
        } else {
            if (p.h - 2.0).abs() <= BOUNDARY_TOL * 2.0 {
                return Err(Error::Boundary {
                    manifold: "h = 2",
                    gamma: p.gamma,
                    h: p.h,
                });
            }
            let kf = xx_fermi_momentum(p.h)?;
            (-(nl - 1)..nl).map(|k| xx_symbol_coeff(kf, k)).collect()
        }
    } else {
        let mut fail = None;
        let samples = |t: f64| match symbol_phi(t, p) {
            Ok(v) => v,
            Err(e) => {
                fail.get_or_insert(e);
                Complex64::new(0.0, 0.0)
            }
        };
        let two_sided = fourier_coeffs(samples, l - 1, n, Smoothness::Smooth { limit: 1e-12 });
        if let Some(e) = fail {
            return Err(e);
        }
        let two_sided = two_sided?;
        (-(nl - 1)..nl).map(|k| two_sided.get(k).re).collect()
    };
    let phi = |k: i64| coeff[(k + nl - 1) as usize];
    let mut b = DMatrix::<f64>::zeros(2 * l, 2 * l);
    for i in 0..l {
        for j in 0..l {
            let d = i as i64 - j as i64;
            b[(2 * i, 2 * j + 1)] = phi(d);
            b[(2 * i + 1, 2 * j)] = -phi(-d);
        }
    }
    Ok(CorrelationMatrix {
        l,
        kind: MatrixKind::MajoranaXY,
        entries: b,
    })
}

/// The XX Toeplitz matrix `G_L = (phi_{i-j})`.
pub fn build_xx_matrix(h: f64, l: usize) -> Result<CorrelationMatrix> {
    if l == 0 {
        return Err(Error::domain("build_xx_matrix", "block length must be >= 1"));
    }
    let kf = xx_fermi_momentum(h)?;
    let g = DMatrix::from_fn(l, l, |i, j| xx_symbol_coeff(kf, i as i64 - j as i64));
    Ok(CorrelationMatrix {
        l,
        kind: MatrixKind::SymmetricXX,
        entries: g,
    })
}

/// The numbers `nu_m` of a correlation matrix, sorted in descending order.
///
/// For the XX matrix these are the signed eigenvalues of `G_L`; for the
/// Majorana matrix they are the `L` non-negative values with
/// `spec(B_L) = {+-i nu_m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct NuSpectrum {
    pub nus: Vec<f64>,
}

impl NuSpectrum {
    /// Wraps precomputed values, checking and clamping them to `[-1, 1]`.
    pub fn new(mut nus: Vec<f64>) -> Result<Self> {
        for v in nus.iter_mut() {
            if !v.is_finite() || v.abs() > 1.0 + SPECTRUM_TOL {
                return Err(Error::SpectrumOutOfRange { value: *v });
            }
            *v = v.clamp(-1.0, 1.0);
        }
        nus.sort_by(|a, b| b.total_cmp(a));
        Ok(NuSpectrum { nus })
    }

    pub fn len(&self) -> usize {
        self.nus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nus.is_empty()
    }

    /// `|nu_m|` in ascending order: the order in which the values approach
    /// the ladder of zeros `lambda_0 < lambda_1 < ...`.
    pub fn ascending_abs(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.nus.iter().map(|x| x.abs()).collect();
        v.sort_by(f64::total_cmp);
        v
    }
}

pub fn nu_spectrum(c: &CorrelationMatrix) -> Result<NuSpectrum> {
    match c.kind {
        MatrixKind::SymmetricXX => {
            let eig = c.entries.clone().symmetric_eigen();
            NuSpectrum::new(eig.eigenvalues.iter().copied().collect())
        }
        MatrixKind::MajoranaXY => {
            // i B is Hermitian with eigenvalues +-nu_m
            let herm = c.entries.map(|x| Complex64::new(0.0, x));
            let eig = herm.symmetric_eigen();
            let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
            vals.sort_by(|a, b| b.total_cmp(a));
            vals.truncate(c.l);
            NuSpectrum::new(vals.into_iter().map(f64::abs).collect())
        }
    }
}
