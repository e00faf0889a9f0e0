//! The spectrum of the limiting reduced density matrix: geometric ladders
//! with partition-counting multiplicities.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::chain::{classify_case, modulus_k, ModelParams, NuSpectrum, PhaseCase};
use crate::error::{Error, Result};
use crate::special::EllipticModulus;

/// Default ladder truncation.
pub const DEFAULT_NMAX: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartitionKind {
    /// Partitions into distinct odd parts.
    DistinctOdd,
    /// Partitions into distinct positive parts.
    Distinct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTable {
    pub kind: PartitionKind,
    /// `counts[n]` for `n = 0..=nmax`.
    pub counts: Vec<BigUint>,
}

/// Expands `prod (1 + q^part)` over the admissible parts up to degree `nmax`.
pub fn partition_counts(kind: PartitionKind, nmax: usize) -> PartitionTable {
    let mut c = vec![BigUint::zero(); nmax + 1];
    c[0] = BigUint::from(1u32);
    let (first, step) = match kind {
        PartitionKind::DistinctOdd => (1, 2),
        PartitionKind::Distinct => (1, 1),
    };
    for part in (first..=nmax).step_by(step) {
        for n in (part..=nmax).rev() {
            let add = c[n - part].clone();
            c[n] += add;
        }
    }
    PartitionTable { kind, counts: c }
}

fn self_convolution(p: &[BigUint]) -> Vec<BigUint> {
    (0..p.len())
        .map(|n| (0..=n).map(|l| &p[l] * &p[n - l]).sum())
        .collect()
}

/// Degeneracies of the ladder: `a_n` (strong field) or `2 b_n` (weak field).
pub fn multiplicities(case: &PhaseCase, nmax: usize) -> Vec<BigUint> {
    if case.is_weak_field() {
        let p = partition_counts(PartitionKind::Distinct, nmax);
        self_convolution(&p.counts).into_iter().map(|b| b * 2u32).collect()
    } else {
        let p = partition_counts(PartitionKind::DistinctOdd, nmax);
        self_convolution(&p.counts)
    }
}

/// `2^{-3/2} 3^{-1/4} n^{-3/4} e^{pi sqrt(n/3)}`, the large-`n` estimate of `a_n`.
pub fn multiplicity_asymptotic(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("multiplicity_asymptotic", "n must be >= 1"));
    }
    let n = n as f64;
    Ok(2f64.powf(-1.5) * 3f64.powf(-0.25) * n.powf(-0.75) * (PI * (n / 3.0).sqrt()).exp())
}

/// Eigenvalues `lambda_n = lambda_0 r^n` with multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySpectrum {
    pub case: PhaseCase,
    pub modulus: EllipticModulus,
    pub lambdas: Vec<f64>,
    pub mults: Vec<BigUint>,
    /// Common ratio `e^{-pi tau0}` or `e^{-2 pi tau0}`.
    pub ratio: f64,
    pub ln_lambda0: f64,
    pub ln_ratio: f64,
    pub nmax: usize,
}

impl DensitySpectrum {
    pub fn ln_lambda(&self, n: usize) -> f64 {
        self.ln_lambda0 + n as f64 * self.ln_ratio
    }

    pub fn mult_f64(&self, n: usize) -> f64 {
        self.mults[n].to_f64().unwrap_or(f64::INFINITY)
    }

    /// Running sums `sum_{m <= n} mult_m lambda_m`.
    pub fn cumulative_trace(&self) -> Vec<f64> {
        let mut acc = 0.0;
        (0..=self.nmax)
            .map(|n| {
                acc += self.mult_f64(n) * self.lambdas[n];
                acc
            })
            .collect()
    }

    /// The first `count` eigenvalues with each repeated by its multiplicity.
    pub fn expanded(&self, count: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(count);
        for n in 0..=self.nmax {
            let m = self.mults[n].to_usize().unwrap_or(usize::MAX);
            for _ in 0..m.min(count - out.len()) {
                out.push(self.lambdas[n]);
            }
            if out.len() == count {
                break;
            }
        }
        out
    }
}

/// The limiting spectrum truncated at `nmax`.
pub fn density_spectrum(p: &ModelParams, nmax: usize) -> Result<DensitySpectrum> {
    let case = classify_case(p)?;
    let e = modulus_k(p)?;
    let (k, kp, t) = (e.k, e.kprime, e.tau0);
    let (ln_lambda0, ln_ratio) = if case.is_weak_field() {
        (-PI * t / 6.0 + (kp / (4.0 * k * k)).ln() / 6.0, -2.0 * PI * t)
    } else {
        (PI * t / 12.0 + (k * kp / 4.0).ln() / 6.0, -PI * t)
    };
    let lambdas = (0..=nmax).map(|n| (ln_lambda0 + n as f64 * ln_ratio).exp()).collect();
    Ok(DensitySpectrum {
        case,
        modulus: e,
        lambdas,
        mults: multiplicities(&case, nmax),
        ratio: ln_ratio.exp(),
        ln_lambda0,
        ln_ratio,
        nmax,
    })
}

/// Exponent `c` of the growth envelope `mult_n <= C e^{c sqrt n}`.
fn growth_exponent(case: &PhaseCase) -> f64 {
    if case.is_weak_field() {
        PI * (2.0f64 / 3.0).sqrt()
    } else {
        PI / 3f64.sqrt()
    }
}

const ENVELOPE_RANGE: usize = 400;

/// `C = max_{n <= 400} mult_n e^{-c sqrt n}`. The normalised multiplicities
/// decay like `n^{-3/4}` so the maximum sits at small `n`.
fn growth_constant(case: &PhaseCase) -> f64 {
    static STRONG: OnceLock<f64> = OnceLock::new();
    static WEAK: OnceLock<f64> = OnceLock::new();
    let cell = if case.is_weak_field() { &WEAK } else { &STRONG };
    *cell.get_or_init(|| {
        let c = growth_exponent(case);
        multiplicities(case, ENVELOPE_RANGE)
            .iter()
            .enumerate()
            .map(|(n, m)| m.to_f64().unwrap_or(f64::INFINITY) * (-c * (n as f64).sqrt()).exp())
            .fold(0.0, f64::max)
    })
}

/// Upper bound on `sum_{n > nmax} mult_n lambda_n^alpha` from the growth envelope.
pub fn tail_bound(spec: &DensitySpectrum, alpha: f64, nmax: usize) -> f64 {
    let c = growth_exponent(&spec.case);
    let big_c = growth_constant(&spec.case);
    let mut sum = 0.0;
    let mut prev = f64::INFINITY;
    for n in nmax + 1.. {
        let ln_term = big_c.ln() + c * (n as f64).sqrt() + alpha * spec.ln_lambda(n);
        let term = ln_term.exp();
        sum += term;
        // terms are eventually decreasing; stop once negligible
        if term < prev && term <= 1e-20 * sum.max(1e-300) {
            break;
        }
        if n > nmax + 10_000_000 {
            return f64::INFINITY;
        }
        prev = term;
    }
    sum
}

/// Smallest truncation whose tail bound at `alpha` is below `tol`.
pub fn required_nmax(p: &ModelParams, alpha: f64, tol: f64) -> Result<usize> {
    if !(alpha > 0.0) {
        return Err(Error::domain("required_nmax", format!("alpha = {alpha} must be positive")));
    }
    let probe = density_spectrum(p, 0)?;
    let mut n = 0;
    while tail_bound(&probe, alpha, n) > tol {
        n += 1;
        if n > 100_000 {
            return Err(Error::TailTooLarge {
                op: "required_nmax",
                tail: tail_bound(&probe, alpha, n),
                tol,
            });
        }
    }
    Ok(n)
}

/// Relative tail tolerance of [`zeta_function`].
pub const ZETA_TAIL_TOL: f64 = 1e-14;

/// `zeta(alpha) = sum_n mult_n lambda_n^alpha`, which equals `Tr rho^alpha`.
pub fn zeta_function(spec: &DensitySpectrum, alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::domain("zeta_function", format!("alpha = {alpha} must be positive")));
    }
    let s: f64 = (0..=spec.nmax)
        .map(|n| spec.mult_f64(n) * (alpha * spec.ln_lambda(n)).exp())
        .sum();
    let tail = tail_bound(spec, alpha, spec.nmax);
    if tail > ZETA_TAIL_TOL * s {
        return Err(Error::TailTooLarge {
            op: "zeta_function",
            tail,
            tol: ZETA_TAIL_TOL * s,
        });
    }
    Ok(s)
}

#[derive(PartialEq)]
struct State {
    cost: f64,
    last: usize,
}

impl Eq for State {}

impl Ord for State {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on cost
        other.cost.total_cmp(&self.cost).then(other.last.cmp(&self.last))
    }
}

impl PartialOrd for State {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The `count` largest eigenvalues of the block density matrix
/// `prod_m (1 +- nu_m)/2`, in decreasing order.
pub fn finite_l_top_eigenvalues(nus: &NuSpectrum, count: usize) -> Vec<f64> {
    let ln_base: f64 = nus.nus.iter().map(|&v| ((1.0 + v.abs()) / 2.0).ln()).sum();
    // flipping factor m multiplies by (1-nu)/(1+nu) <= 1
    let mut costs: Vec<f64> = nus
        .nus
        .iter()
        .map(|&v| {
            let v = v.abs();
            (-((1.0 - v) / (1.0 + v)).ln()).min(1e4)
        })
        .collect();
    costs.sort_by(f64::total_cmp);
    let total = 1usize.checked_shl(costs.len() as u32).unwrap_or(usize::MAX);
    let count = count.min(total);
    let mut out = Vec::with_capacity(count);
    if count == 0 {
        return out;
    }
    out.push(ln_base.exp());
    let mut heap = BinaryHeap::new();
    if !costs.is_empty() {
        heap.push(State { cost: costs[0], last: 0 });
    }
    while out.len() < count {
        let Some(State { cost, last }) = heap.pop() else { break };
        out.push((ln_base - cost).exp());
        if last + 1 < costs.len() {
            heap.push(State {
                cost: cost + costs[last + 1],
                last: last + 1,
            });
            heap.push(State {
                cost: cost - costs[last] + costs[last + 1],
                last: last + 1,
            });
        }
    }
    out
}
