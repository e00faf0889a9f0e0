use crate::error::{Error, Result};

/// Arithmetic-geometric mean of two positive reals.
fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        if (an - bn).abs() <= 1e-16 * an {
            return an;
        }
        a = an;
        b = bn;
    }
    0.5 * (a + b)
}

/// Complete elliptic integral of the first kind in the modulus convention,
/// `K(k) = int_0^1 dx / sqrt((1-x^2)(1-k^2 x^2))`, via `pi / (2 agm(1, k'))`.
pub fn complete_elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::domain(
            "complete_elliptic_k",
            format!("k = {k} must satisfy 0 <= k < 1"),
        ));
    }
    let kp = ((1.0 - k) * (1.0 + k)).sqrt();
    Ok(std::f64::consts::FRAC_PI_2 / agm(1.0, kp))
}

/// Modulus `k`, complementary modulus `k'` and the module `tau0 = K(k')/K(k)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticModulus {
    pub k: f64,
    pub kprime: f64,
    pub tau0: f64,
}

impl EllipticModulus {
    /// Builds the modulus from a `(k, k')` pair computed independently, which
    /// keeps full relative precision in whichever of the two is small.
    pub fn from_pair(k: f64, kprime: f64) -> Result<Self> {
        if !(k > 0.0 && k < 1.0 && kprime > 0.0 && kprime < 1.0) {
            return Err(Error::domain(
                "EllipticModulus",
                format!("k = {k}, k' = {kprime} must both lie in (0, 1)"),
            ));
        }
        if (k * k + kprime * kprime - 1.0).abs() > 1e-12 {
            return Err(Error::domain(
                "EllipticModulus",
                format!("k^2 + k'^2 = {} differs from 1", k * k + kprime * kprime),
            ));
        }
        // K(k')/K(k) = agm(1, k') / agm(1, k)
        let tau0 = agm(1.0, kprime) / agm(1.0, k);
        Ok(EllipticModulus { k, kprime, tau0 })
    }

    /// Complete elliptic integral at `k`.
    pub fn big_k(&self) -> f64 {
        std::f64::consts::FRAC_PI_2 / agm(1.0, self.kprime)
    }

    /// Complete elliptic integral at `k'`.
    pub fn big_k_prime(&self) -> f64 {
        std::f64::consts::FRAC_PI_2 / agm(1.0, self.k)
    }
}

/// Completes `k` to the full [`EllipticModulus`].
pub fn tau0_from_modulus(k: f64) -> Result<EllipticModulus> {
    if !(k > 0.0 && k < 1.0) {
        return Err(Error::domain(
            "tau0_from_modulus",
            format!("k = {k} must satisfy 0 < k < 1"),
        ));
    }
    EllipticModulus::from_pair(k, ((1.0 - k) * (1.0 + k)).sqrt())
}
