//! Complete elliptic integrals of the first kind and inversion of the
//! ratio condition `2 K(lambda) / K(lambda') = H`.
//!
//! ```text
//!           1
//!          ⌠            dξ
//! K(k)  =  │  ───────────────────────,   k' = sqrt(1 - k²),
//!          ⌡  sqrt((1-ξ²)(1-k²ξ²))
//!         0
//! ```
//!
//! computed through the arithmetic-geometric mean, `K(k) = π/(2·agm(1, k'))`.
//!
//! A [`Modulus`] stores `k` together with its complement `k'` as two
//! independently accurate scalars. That matters for large stretch factors:
//! `lambda' ~ 4·exp(-πH/4)`, so past `H ≈ 30` the complement carries
//! information that `1 - lambda` cannot represent in `f64`. All ratio
//! arithmetic here runs off whichever side is well-conditioned.

use crate::error::{Error, Result};
use crate::real::Real;
use crate::rootfind::{self, Bracket};

/// An elliptic modulus `k ∈ (0,1)` paired with its complement `k' = sqrt(1-k²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus<T> {
    k: T,
    k_prime: T,
}

impl<T: Real> Modulus<T> {
    /// Builds from `k`, deriving the complement.
    pub fn new(k: T) -> Result<Self> {
        if !(k > T::zero() && k < T::one()) {
            return Err(Error::Domain(format!("modulus k={k} outside (0,1)")));
        }
        let k_prime = ((T::one() - k) * (T::one() + k)).sqrt();
        Ok(Self { k, k_prime })
    }

    /// Builds from the complement `k'`, deriving `k`.
    ///
    /// When `k'` is so small that `k` rounds to 1, `k` saturates at the
    /// largest scalar below 1; `k'` remains the authoritative side.
    pub fn from_complement(k_prime: T) -> Result<Self> {
        if !(k_prime > T::zero() && k_prime < T::one()) {
            return Err(Error::Domain(format!(
                "complement k'={k_prime} outside (0,1)"
            )));
        }
        let mut k = ((T::one() - k_prime) * (T::one() + k_prime)).sqrt();
        if k >= T::one() {
            k = T::one() - T::epsilon() / T::of(2.0);
        }
        Ok(Self { k, k_prime })
    }

    /// Builds from both sides, checking `k² + k'² = 1` within 4 epsilons.
    pub fn from_parts(k: T, k_prime: T) -> Result<Self> {
        if !(k > T::zero() && k < T::one()) || !(k_prime > T::zero() && k_prime < T::one()) {
            return Err(Error::Domain(format!(
                "modulus pair ({k}, {k_prime}) outside (0,1)"
            )));
        }
        let gap = (k * k + k_prime * k_prime - T::one()).abs();
        if gap > T::of(4.0) * T::epsilon() {
            return Err(Error::Inconsistent(format!(
                "k² + k'² deviates from 1 by {gap}"
            )));
        }
        Ok(Self { k, k_prime })
    }

    pub fn k(&self) -> T {
        self.k
    }

    /// The complementary modulus `k' = sqrt(1-k²)`.
    pub fn complement(&self) -> T {
        self.k_prime
    }

    /// The complementary pair `(k', k)`.
    pub fn swapped(&self) -> Self {
        Self {
            k: self.k_prime,
            k_prime: self.k,
        }
    }
}

/// Arithmetic-geometric mean of two positive scalars.
pub fn agm<T: Real>(a0: T, b0: T) -> T {
    let mut a = a0;
    let mut b = b0;
    for _ in 0..64 {
        if (a - b).abs() <= T::of(2.0) * T::epsilon() * a {
            break;
        }
        let an = (a + b) * T::of(0.5);
        b = (a * b).sqrt();
        a = an;
    }
    (a + b) * T::of(0.5)
}

/// Complete elliptic integral of the first kind, `K(k) = π/(2·agm(1, k'))`.
///
/// `k` must lie in `[0, 1)`; `K` diverges at `k = 1`.
pub fn complete_elliptic_k<T: Real>(k: T) -> Result<T> {
    if !(k >= T::zero() && k < T::one()) {
        return Err(Error::Domain(format!("K(k) needs 0 <= k < 1, got {k}")));
    }
    let kp = ((T::one() - k) * (T::one() + k)).sqrt();
    Ok(T::PI() / (T::of(2.0) * agm(T::one(), kp)))
}

/// `K(k)` evaluated from the complement: `π/(2·agm(1, k'))` with `k'` given.
pub fn complete_elliptic_k_from_complement<T: Real>(k_prime: T) -> Result<T> {
    if !(k_prime > T::zero() && k_prime <= T::one()) {
        return Err(Error::Domain(format!(
            "K from complement needs 0 < k' <= 1, got {k_prime}"
        )));
    }
    Ok(T::PI() / (T::of(2.0) * agm(T::one(), k_prime)))
}

/// The ratio `K(k)/K(k')`, strictly increasing in `k`.
pub fn k_ratio<T: Real>(m: &Modulus<T>) -> T {
    // K(k) = pi/(2 agm(1,k')), so the ratio collapses to agm(1,k)/agm(1,k').
    agm(T::one(), m.k()) / agm(T::one(), m.complement())
}

fn k_ratio_scalar<T: Real>(k: T) -> T {
    let kp = ((T::one() - k) * (T::one() + k)).sqrt();
    agm(T::one(), k) / agm(T::one(), kp)
}

/// Solves `2 K(lambda)/K(lambda') = h` for the modulus pair.
///
/// The root is found on whichever of `lambda`, `lambda'` lies in
/// `(0, sqrt(2)/2]` — the side with ratio at most 1 — so both members of the
/// returned pair are fully accurate even when the other would round to 1.
pub fn solve_modulus_from_ratio<T: Real>(h: T) -> Result<Modulus<T>> {
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::Domain(format!("H must be positive, got {h}")));
    }
    // k_ratio(lambda) = h/2 and k_ratio(lambda') = 2/h; solve the small side.
    let target = if h >= T::of(2.0) {
        T::of(2.0) / h
    } else {
        h / T::of(2.0)
    };
    // solve in log space: the root spans hundreds of orders of magnitude
    // over the supported H range, and Brent needs comparable endpoint scales
    let y_lo = T::of(-690.0);
    let y_hi = T::of(0.7072).ln();
    let f = |y: T| k_ratio_scalar(y.exp()) - target;
    let bracket = Bracket::from_eval(&f, y_lo, y_hi).map_err(|_| {
        Error::Numerical(format!(
            "modulus ratio target {target} not bracketed; H={h} outside supported range"
        ))
    })?;
    let x = rootfind::bracketed_root(f, &bracket, T::zero())?.exp();
    let m = Modulus::<T> {
        k: x,
        k_prime: ((T::one() - x) * (T::one() + x)).sqrt(),
    };
    if h >= T::of(2.0) {
        Ok(m.swapped())
    } else {
        Ok(m)
    }
}

/// `multiplier · K(mu)/K(mu')`, the module of a quadrilateral whose
/// cross-ratio modulus is `mu`.
pub fn module_from_mu<T: Real>(mu: &Modulus<T>, multiplier: T) -> Result<T> {
    if !(mu.k() > T::zero() && mu.k() < T::one()) {
        return Err(Error::Domain(format!("mu={} outside (0,1)", mu.k())));
    }
    Ok(multiplier * k_ratio(mu))
}
