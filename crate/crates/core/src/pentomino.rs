//! Accessory parameters and conformal module of the stretched P-pentomino
//! `P_H` (vertices `i, 3i, 2H+3i, 2H, H, H+i`).
//!
//! The construction rests on the degree-5 rational map
//!
//! ```text
//! h(ζ) = ζ³ (1 - c²ζ²) / (ζ² - c²)
//! ```
//!
//! whose critical point `α₀` and parameter `c` are fixed by `h(α₀) = a`,
//! `h'(α₀) = 0` with `a = sqrt(lambda)`, `2K(lambda)/K(lambda') = H`. The
//! prevertex preimages `α₁, α₂, α₃` solve `h = 1/a, -1/a, -a` inside known
//! monotonicity intervals, and the module is `K(mu)/K(mu')` with
//! `mu = sqrt(beta2/beta3)` after the half-disk-to-half-plane change of
//! variables `beta = ((1-α²)/(1+α²))²`.
//!
//! For stretch factors far from 1 the straightforward equations are badly
//! conditioned in `f64` (prevertices crowd pairwise); the solver therefore
//! switches to exact shifted/complement forms of the same polynomials where
//! needed. See the comments on the individual steps.

use num_complex::Complex;

use crate::elliptic::{self, Modulus};
use crate::error::{Error, Result};
use crate::real::Real;
use crate::rootfind::{self, Bracket};

fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// Everything the P-pentomino pipeline produces for one stretch factor.
#[derive(Debug, Clone)]
pub struct PentominoSolution<T> {
    /// Stretch factor `H`.
    pub stretch: T,
    /// `lambda` with `2K(lambda)/K(lambda') = H`.
    pub lambda: Modulus<T>,
    /// `a = sqrt(lambda)`, the slit endpoint.
    pub a: T,
    /// Critical point of `h` in `(0,1)`.
    pub alpha0: T,
    /// `c²`, the squared pole parameter.
    pub c2: T,
    /// Preimage of vertex C (`h = 1/a`).
    pub alpha1: T,
    /// Preimage of vertex B (`h = -1/a`).
    pub alpha2: T,
    /// Preimage of vertex A (`h = -a`).
    pub alpha3: T,
    pub beta1: T,
    pub beta2: T,
    pub beta3: T,
    /// Module modulus, `mu = sqrt(beta2/beta3)`.
    pub mu: Modulus<T>,
    /// `Mod(P_H) = K(mu)/K(mu')`.
    pub module: T,
}

/// Consistency residuals of a solution, all evaluated directly in the
/// working precision.
#[derive(Debug, Clone, Copy)]
pub struct PentominoDiagnostics<T> {
    /// `|2α₀⁶ - 3aα₀⁵ + 3aα₀ - 2a²|`.
    pub residual_alpha0: T,
    /// Relative gaps `|h(α_k) - target|/|target|` for k = 1, 2, 3.
    pub h_gap_alpha1: T,
    pub h_gap_alpha2: T,
    pub h_gap_alpha3: T,
    /// `|mu - sqrt(beta2/beta3)|`.
    pub mu_consistency: T,
}

/// The rational map `h(z) = z³(1 - c²z²)/(z² - c²)`.
pub fn h_pent<T: Real>(z: Complex<T>, c2: T) -> Result<Complex<T>> {
    let z2 = z * z;
    if z2 == Complex::new(c2, T::zero()) {
        return Err(Error::Domain(format!("h has a pole at z² = c² = {c2}")));
    }
    Ok(z * z2 * (cone::<T>() - z2 * c2) / (z2 - Complex::new(c2, T::zero())))
}

/// Logarithmic derivative `h'/h = 3/z - 2z/(z²-c²) + 2z/(z²-1/c²)`.
pub fn h_pent_logderiv<T: Real>(z: Complex<T>, c2: T) -> Result<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let z2 = z * z;
    let inv_c2 = T::one() / c2;
    if z == zero || z2 == Complex::new(c2, T::zero()) || z2 == Complex::new(inv_c2, T::zero()) {
        return Err(Error::Domain(
            "logarithmic derivative evaluated at a zero or pole of h".into(),
        ));
    }
    let three = Complex::new(T::of(3.0), T::zero());
    let two = Complex::new(T::of(2.0), T::zero());
    Ok(three / z - two * z / (z2 - Complex::new(c2, T::zero()))
        + two * z / (z2 - Complex::new(inv_c2, T::zero())))
}

fn g_poly<T: Real>(a: T, x: T) -> T {
    // 2x^6 - 3a x^5 + 3a x - 2a^2, Horner in x
    ((((T::of(2.0) * x - T::of(3.0) * a) * x) * x * x * x + T::of(3.0) * a) * x)
        - T::of(2.0) * a * a
}

fn g_poly_deriv<T: Real>(a: T, x: T) -> T {
    (T::of(12.0) * x - T::of(15.0) * a) * x * x * x * x + T::of(3.0) * a
}

/// `g(1-s)` with the constant and linear coefficients carried through the
/// complements `eps = 1-a²`, `delta = 1-a`; exact rearrangement of `g`.
fn g_shifted<T: Real>(a: T, eps: T, delta: T, s: T) -> T {
    let k0 = T::of(2.0) * eps;
    let k1 = -T::of(12.0) * delta;
    let k2 = T::of(30.0) * delta;
    let k3 = -(T::of(40.0) - T::of(30.0) * a);
    let k4 = T::of(30.0) - T::of(15.0) * a;
    let k5 = -(T::of(12.0) - T::of(3.0) * a);
    let k6 = T::of(2.0);
    (((((k6 * s + k5) * s + k4) * s + k3) * s + k2) * s + k1) * s + k0
}

fn g_shifted_deriv<T: Real>(a: T, delta: T, s: T) -> T {
    let k1 = -T::of(12.0) * delta;
    let k2 = T::of(60.0) * delta;
    let k3 = -T::of(3.0) * (T::of(40.0) - T::of(30.0) * a);
    let k4 = T::of(4.0) * (T::of(30.0) - T::of(15.0) * a);
    let k5 = -T::of(5.0) * (T::of(12.0) - T::of(3.0) * a);
    let k6 = T::of(12.0);
    ((((k6 * s + k5) * s + k4) * s + k3) * s + k2) * s + k1
}

/// Solves `2α₀⁶ - 3aα₀⁵ + 3aα₀ - 2a² = 0` for the unique root in `(0,1)`.
pub fn solve_alpha0_pent<T: Real>(a: T) -> Result<T> {
    if !(a > T::zero() && a < T::one()) {
        return Err(Error::Domain(format!("a={a} outside (0,1)")));
    }
    let delta = T::one() - a;
    let eps = delta * (T::one() + a);
    Ok(alpha0_with_complements(a, eps, delta)?.0)
}

/// Returns `(alpha0, s0 = 1 - alpha0)`, both fully accurate.
fn alpha0_with_complements<T: Real>(a: T, eps: T, delta: T) -> Result<(T, T)> {
    let lambda = a * a;
    if lambda <= T::of(0.5) {
        // g increases on (0,1); g(2a/3) = -160 a^6/729 < 0 < g(1) = 2(1-a²).
        // Back the left endpoint off slightly so its sign survives rounding.
        let lo = T::of(2.0) / T::of(3.0) * a * (T::one() - T::of(1e-9));
        let f = |x| g_poly(a, x);
        let bracket = Bracket::from_eval(&f, lo, T::one())?;
        let x = rootfind::bracketed_root(f, &bracket, T::zero())?;
        let x = rootfind::newton_polish(f, |x| g_poly_deriv(a, x), x, &bracket);
        Ok((x, T::one() - x))
    } else {
        // near a = 1 the root crowds the triple cluster at x = 1; solve the
        // exact shifted polynomial in s = 1 - x instead.
        let hi = T::one() - T::of(2.0) / T::of(3.0) * a;
        let f = |s| g_shifted(a, eps, delta, s);
        let bracket = Bracket::from_eval(&f, T::zero(), hi)?;
        let s = rootfind::bracketed_root(f, &bracket, T::zero())?;
        let s = rootfind::newton_polish(f, |s| g_shifted_deriv(a, delta, s), s, &bracket);
        Ok((T::one() - s, s))
    }
}

/// `c² = (3α₀ - 2a)/(5α₀³)`.
pub fn compute_c2<T: Real>(a: T, alpha0: T) -> Result<T> {
    let num = T::of(3.0) * alpha0 - T::of(2.0) * a;
    if !(num > T::zero()) {
        return Err(Error::Inconsistent(format!(
            "3α₀ - 2a = {num} not positive; inputs do not satisfy the defining equations"
        )));
    }
    Ok(num / (T::of(5.0) * alpha0 * alpha0 * alpha0))
}

/// `c²` in the cancellation-free form `α₀²(3a - 2α₀)/(5a)`.
///
/// Equal to [`compute_c2`] whenever `α₀` solves the sextic; stable for both
/// `a -> 0` (where `3α₀ - 2a` cancels) and `a -> 1`.
fn c2_stable<T: Real>(a: T, alpha0: T) -> T {
    alpha0 * alpha0 * (T::of(3.0) * a - T::of(2.0) * alpha0) / (T::of(5.0) * a)
}

fn p1_poly<T: Real>(a: T, c2: T, x: T) -> T {
    // c² x^5 - x^3 + x²/a - c²/a
    (((c2 * x * x - T::one()) * x + T::one() / a) * x) * x - c2 / a
}

fn p2_poly<T: Real>(a: T, c2: T, x: T) -> T {
    // c² x^5 - x^3 - x²/a + c²/a
    (((c2 * x * x - T::one()) * x - T::one() / a) * x) * x + c2 / a
}

fn p3_poly<T: Real>(a: T, c2: T, x: T) -> T {
    // c² x^5 - x^3 - a x² + a c²
    (((c2 * x * x - T::one()) * x - a) * x) * x + a * c2
}

/// Coefficients of `p1(1-t)` with the cancelling pieces rewritten through
/// `s0 = 1-α₀` and `delta = 1-a` using the sextic identity for `α₀`.
fn p1_shifted<T: Real>(a: T, c2: T, s0: T, delta: T, t: T) -> T {
    let k0 = delta * (T::one() - c2) / a;
    let k1 = s0
        * (T::of(3.0) * s0 - T::of(2.0) * s0 * s0 - T::of(6.0) * delta + T::of(3.0) * s0 * delta)
        / a;
    let k2 = (-T::of(6.0) * s0 * s0 + T::of(4.0) * s0 * s0 * s0
        - T::of(3.0) * delta * (T::one() - T::of(4.0) * s0 + T::of(2.0) * s0 * s0))
        / a;
    let k3 = T::one() - T::of(10.0) * c2;
    let k4 = T::of(5.0) * c2;
    let k5 = -c2;
    ((((k5 * t + k4) * t + k3) * t + k2) * t + k1) * t + k0
}

/// Divided difference `[h(y) - h(x)] (x²-c²)(y²-c²) / (y-x)`, expanded so
/// nearby arguments cost no cancellation.
fn h_divided_difference_numerator<T: Real>(c2: T, x: T, y: T) -> T {
    let xy = x * y;
    let sq = x * x + xy + y * y;
    xy * xy - c2 * sq * (T::one() + xy * xy)
        + c2 * c2 * (x * x * x * x + x * x * x * y + xy * xy + x * y * y * y + y * y * y * y)
}

/// Fixed point for a root hugging the pole from above: `x² - c² = a x³(1-c²x²)`.
fn pole_hug_above<T: Real>(a: T, c2: T) -> T {
    let c = c2.sqrt();
    let mut v = a * c * c2 * (T::one() - c2 * c2);
    for _ in 0..6 {
        let x = (c2 + v).sqrt();
        v = a * x * x * x * (T::one() - c2 * x * x);
    }
    (c2 + v).sqrt()
}

/// Fixed point for a root hugging the pole from below: `c² - x² = a x³(1-c²x²)`.
fn pole_hug_below<T: Real>(a: T, c2: T) -> T {
    let c = c2.sqrt();
    let mut v = a * c * c2 * (T::one() - c2 * c2);
    for _ in 0..6 {
        let x = (c2 - v).sqrt();
        v = a * x * x * x * (T::one() - c2 * x * x);
    }
    (c2 - v).sqrt()
}

struct PentAlphas<T> {
    alpha1: T,
    /// `1 - alpha1`, accurate also when `alpha1` crowds 1.
    t1: T,
    alpha2: T,
    alpha3: T,
    /// `alpha2 - alpha3`, accurate also when the pair crowds together.
    d: T,
}

fn alphas_with_complements<T: Real>(
    a: T,
    c2: T,
    alpha0: T,
    s0: T,
    eps: T,
    delta: T,
) -> Result<PentAlphas<T>> {
    let lambda = a * a;
    let c = c2.sqrt();
    let offset = T::of(8.0) * T::epsilon();

    // alpha1: h = 1/a on (c, alpha0), where h decreases from +inf to a.
    let (alpha1, t1) = if lambda > T::of(0.5) {
        let f = |t| p1_shifted(a, c2, s0, delta, t);
        let bracket = Bracket::from_eval(&f, s0, T::one() - c)?;
        let t = rootfind::bracketed_root(f, &bracket, T::zero())?;
        (T::one() - t, t)
    } else {
        let lo = c * (T::one() + offset);
        let f = |x| p1_poly(a, c2, x);
        if !(f(lo) < T::zero()) {
            // root between the pole and lo: iterate the exact gap identity
            let x = pole_hug_above(a, c2);
            (x, T::one() - x)
        } else {
            let bracket = Bracket::from_eval(&f, lo, alpha0)?;
            let x = rootfind::bracketed_root(f, &bracket, T::zero())?;
            (x, T::one() - x)
        }
    };

    // alpha2: h = -1/a on (0, c), where h decreases from 0 to -inf.
    let alpha2 = {
        let hi = c * (T::one() - offset);
        let f = |x| p2_poly(a, c2, x);
        if !(f(hi) < T::zero()) {
            pole_hug_below(a, c2)
        } else {
            let bracket = Bracket::from_eval(&f, T::zero(), hi)?;
            rootfind::bracketed_root(f, &bracket, T::zero())?
        }
    };

    // alpha3: h = -a, further from the pole on the same branch. The module
    // needs alpha2 - alpha3 to full relative accuracy, and for large H the
    // two roots agree in most digits; there the difference is solved
    // directly from the divided-difference form of h(alpha3) - h(alpha2) =
    // (1-a²)/a, whose residual costs no cancellation.
    let d = if lambda > T::of(0.5) {
        let target = eps / a;
        let q2 = alpha2 * alpha2 - c2;
        let f = |dd: T| {
            let y = alpha2 - dd;
            let qy = y * y - c2;
            -dd * h_divided_difference_numerator(c2, alpha2, y) / (q2 * qy) - target
        };
        let bracket = Bracket::from_eval(&f, T::zero(), alpha2 * (T::one() - T::of(1e-9)))?;
        rootfind::bracketed_root(f, &bracket, T::zero())?
    } else {
        let f = |x| p3_poly(a, c2, x);
        let bracket = Bracket::from_eval(&f, T::zero(), alpha2)?;
        let alpha3 = rootfind::bracketed_root(f, &bracket, T::zero())?;
        alpha2 - alpha3
    };
    let alpha3 = alpha2 - d;

    if !(d > T::zero()) || !(alpha3 > T::zero()) {
        return Err(Error::Numerical(
            "prevertex ordering alpha3 < alpha2 lost".into(),
        ));
    }
    let al = PentAlphas {
        alpha1,
        t1,
        alpha2,
        alpha3,
        d,
    };
    validate_alphas(a, c2, &al)?;
    Ok(al)
}

/// Evaluates `h` at each root against its target. Direct evaluation of `h`
/// loses `eps·c²/|x²-c²|` near the pole, so roots hugging the pole are
/// checked with a correspondingly scaled tolerance.
fn validate_alphas<T: Real>(a: T, c2: T, al: &PentAlphas<T>) -> Result<()> {
    let checks = [
        (al.alpha1, T::one() / a),
        (al.alpha2, -T::one() / a),
        (al.alpha3, -a),
    ];
    for (x, target) in checks {
        let q = x * x - c2;
        if q == T::zero() {
            // stored root collapsed onto the pole (extreme stretch); the
            // gap identities used downstream remain positive, nothing to check
            continue;
        }
        let h = h_pent(Complex::new(x, T::zero()), c2)?.re;
        let eval_noise = T::of(32.0) * T::epsilon() * (c2 / q.abs()).max(T::one());
        let base = T::of(1e-9).max(T::epsilon() * T::of(1e3));
        let tol = (base + eval_noise) * target.abs();
        if (h - target).abs() > tol {
            return Err(Error::Numerical(format!(
                "h({x}) = {h} deviates from target {target}"
            )));
        }
    }
    Ok(())
}

/// Solves the three quintics for `(α₁, α₂, α₃)` given consistent `(a, c², α₀)`.
pub fn solve_alphas_pent<T: Real>(a: T, c2: T, alpha0: T) -> Result<(T, T, T)> {
    if !(a > T::zero() && a < T::one()) || !(c2 > T::zero()) || !(alpha0 > T::zero()) {
        return Err(Error::Domain("need a, c², α₀ positive with a < 1".into()));
    }
    let delta = T::one() - a;
    let eps = delta * (T::one() + a);
    let s0 = T::one() - alpha0;
    let al = alphas_with_complements(a, c2, alpha0, s0, eps, delta)?;
    Ok((al.alpha1, al.alpha2, al.alpha3))
}

/// `beta = ((1-α²)/(1+α²))²`, the half-disk to half-plane boundary change.
pub fn betas_pent<T: Real>(alpha: T) -> T {
    let a2 = alpha * alpha;
    let r = (T::one() - a2) / (T::one() + a2);
    r * r
}

/// Builds the module modulus from `α₂, α₃`: `mu = sqrt(beta2/beta3)` with
/// the complement taken without cancellation.
pub fn mu_pent<T: Real>(alpha2: T, alpha3: T) -> Result<Modulus<T>> {
    if !(T::zero() < alpha3 && alpha3 < alpha2 && alpha2 < T::one()) {
        return Err(Error::Domain(format!(
            "need 0 < α₃ < α₂ < 1, got ({alpha2}, {alpha3})"
        )));
    }
    mu_pent_with_gap(alpha2, alpha3, alpha2 - alpha3)
}

fn mu_pent_with_gap<T: Real>(alpha2: T, alpha3: T, d: T) -> Result<Modulus<T>> {
    let s2 = alpha2 * alpha2;
    let s3 = alpha3 * alpha3;
    let denom = (T::one() - s3) * (T::one() + s2);
    let mu = ((T::one() + s3) * (T::one() - s2)) / denom;
    // mu'² = 1 - mu² = 4(α₂²-α₃²)(1-α₂²α₃²)/denom² with α₂²-α₃² = d(α₂+α₃)
    let mu_prime = T::of(2.0) * (d * (alpha2 + alpha3) * (T::one() - s2 * s3)).sqrt() / denom;
    let mu = mu.min(T::one() - T::epsilon() / T::of(2.0));
    Modulus::from_parts(mu, mu_prime)
}

/// Full Theorem-style pipeline: stretch factor to all accessory parameters
/// and `Mod(P_H)`.
pub fn solve_pentomino<T: Real>(h: T) -> Result<PentominoSolution<T>> {
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::Domain("H must be positive".into()));
    }
    let lambda = elliptic::solve_modulus_from_ratio(h)?;
    let (lam, lam_p) = (lambda.k(), lambda.complement());
    let a = lam.sqrt();
    // 1 - lambda and 1 - a from the complement side; exact where 1-lam rounds
    let eps = lam_p * lam_p / (T::one() + lam);
    let delta = eps / (T::one() + a);

    let (alpha0, s0) = alpha0_with_complements(a, eps, delta)?;
    let c2 = c2_stable(a, alpha0);
    if !(c2 > T::zero()) {
        return Err(Error::Inconsistent("derived c² not positive".into()));
    }
    let al = alphas_with_complements(a, c2, alpha0, s0, eps, delta)?;
    if !(al.t1 > s0) {
        return Err(Error::Numerical("ordering alpha1 < alpha0 lost".into()));
    }

    // beta1 through the complement of alpha1 (alpha1 crowds 1 for large H)
    let one_minus_a1_sq = al.t1 * (T::of(2.0) - al.t1);
    let r1 = one_minus_a1_sq / (T::one() + al.alpha1 * al.alpha1);
    let beta1 = r1 * r1;
    let beta2 = betas_pent(al.alpha2);
    let beta3 = betas_pent(al.alpha3);
    let mu = mu_pent_with_gap(al.alpha2, al.alpha3, al.d)?;
    let module = elliptic::module_from_mu(&mu, T::one())?;

    Ok(PentominoSolution {
        stretch: h,
        lambda,
        a,
        alpha0,
        c2,
        alpha1: al.alpha1,
        alpha2: al.alpha2,
        alpha3: al.alpha3,
        beta1,
        beta2,
        beta3,
        mu,
        module,
    })
}

impl<T: Real> PentominoSolution<T> {
    /// Direct-evaluation consistency residuals.
    pub fn diagnostics(&self) -> PentominoDiagnostics<T> {
        let a = self.a;
        let c2 = self.c2;
        let h_gap = |x: T, target: T| -> T {
            match h_pent(Complex::new(x, T::zero()), c2) {
                Ok(v) => ((v.re - target) / target).abs(),
                Err(_) => T::infinity(),
            }
        };
        let mu_direct = (self.beta2 / self.beta3).sqrt();
        PentominoDiagnostics {
            residual_alpha0: g_poly(a, self.alpha0).abs(),
            h_gap_alpha1: h_gap(self.alpha1, T::one() / a),
            h_gap_alpha2: h_gap(self.alpha2, -T::one() / a),
            h_gap_alpha3: h_gap(self.alpha3, -a),
            mu_consistency: (self.mu.k() - mu_direct).abs(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    // Reference values computed with a 60-digit implementation of the same
    // equations (lambda from the nome, bisected roots). The H=1 column of
    // the source table is misprinted from c² on; these are the values the
    // equations actually determine.
    const EX1: [(f64, f64); 12] = [
        (0.0, 0.1715728752538099),   // lambda
        (1.0, 0.41421356237309505),  // a
        (2.0, 0.2770467602385059),   // alpha0
        (3.0, 0.025517935088801877), // c2
        (4.0, 0.16551359720783165),  // alpha1
        (5.0, 0.15485691648873706),  // alpha2
        (6.0, 0.1383191934042299),   // alpha3
        (7.0, 0.8961867801012983),   // beta1
        (8.0, 0.9085175696278964),   // beta2
        (9.0, 0.9263175869492339),   // beta3
        (10.0, 0.9903454495768234),  // mu
        (11.0, 2.1374262560248264),  // module
    ];

    fn fields(s: &PentominoSolution<f64>) -> [f64; 12] {
        [
            s.lambda.k(),
            s.a,
            s.alpha0,
            s.c2,
            s.alpha1,
            s.alpha2,
            s.alpha3,
            s.beta1,
            s.beta2,
            s.beta3,
            s.mu.k(),
            s.module,
        ]
    }

    #[test]
    fn solves_h_equal_one() {
        let s = solve_pentomino(1.0f64).unwrap();
        let got = fields(&s);
        for (i, &(_, want)) in EX1.iter().enumerate() {
            assert!(
                (got[i] - want).abs() <= 1e-13 * want.abs().max(1.0),
                "field {i}: got {} want {want}",
                got[i]
            );
        }
    }

    #[test]
    fn solves_h_equal_two() {
        let s = solve_pentomino(2.0f64).unwrap();
        let want = [
            0.7071067811865475,
            0.8408964152537145,
            0.6018988245345684,
            0.11364323450967319,
            0.4158386617464553,
            0.301_418_612_412_185_5,
            0.2909312959081722,
            0.4972273908632052,
            0.6946010638718234,
            0.712214555130066,
            0.9875572909125926,
            2.056221831167257,
        ];
        let got = fields(&s);
        for i in 0..12 {
            assert!(
                (got[i] - want[i]).abs() <= 1e-13 * want[i].abs().max(1.0),
                "field {i}: got {} want {}",
                got[i],
                want[i]
            );
        }
    }

    #[test]
    fn large_stretch_modules() {
        for (h, want) in [
            (5.0, 3.347_860_491_275_728),
            (10.0, 5.839523190316949),
            (14.0, 7.839479469710124),
            (20.0, 10.839478797768796),
            (30.0, 15.839478796511673),
        ] {
            let s = solve_pentomino::<f64>(h).unwrap();
            assert!(
                (s.module - want).abs() <= 1e-12 * want,
                "H={h}: module {} want {want}",
                s.module
            );
        }
    }

    #[test]
    fn small_stretch_modules() {
        for (h, want) in [
            (0.5, 3.052_764_661_391_808),
            (0.25, 5.049104293890057),
            (0.125, 9.04909745772202),
            (0.0625, 17.04909745769818),
        ] {
            let s = solve_pentomino::<f64>(h).unwrap();
            assert!(
                (s.module - want).abs() <= 1e-12 * want,
                "H={h}: module {} want {want}",
                s.module
            );
        }
    }

    #[test]
    fn rejects_nonpositive_stretch() {
        assert!(matches!(solve_pentomino(0.0f64), Err(Error::Domain(_))));
        assert!(solve_pentomino(-1.0f64).is_err());
    }

    #[test]
    fn h_pent_fixed_points_and_pole() {
        let one = Complex64::new(1.0, 0.0);
        for c2 in [0.1, 0.3, 0.7] {
            let v = h_pent(one, c2).unwrap();
            assert!((v - one).norm() < 1e-15);
        }
        assert!(h_pent(Complex64::new(0.5, 0.0), 0.25).is_err());
    }

    #[test]
    fn h_pent_example_one_value() {
        // with the correct c² the critical value is exactly a
        let v = h_pent(
            Complex64::new(0.2770467602385059, 0.0),
            0.025517935088801877,
        )
        .unwrap();
        assert!((v.re - 0.41421356237309505).abs() < 1e-13);
        assert!(v.im == 0.0);
    }

    #[test]
    fn logderiv_vanishes_at_critical_points() {
        let c2 = 0.025517935088801877;
        let a0 = 0.2770467602385059;
        for x in [a0, 1.0 / a0] {
            let v = h_pent_logderiv(Complex64::new(x, 0.0), c2).unwrap();
            assert!(v.norm() < 1e-12, "logderiv at {x}: {v}");
        }
        // direct arithmetic at z = i
        let v = h_pent_logderiv(Complex64::new(0.0, 1.0), 0.1).unwrap();
        let want = Complex64::new(0.0, -3.0) - Complex64::new(0.0, 2.0) / Complex64::new(-1.1, 0.0)
            + Complex64::new(0.0, 2.0) / Complex64::new(-11.0, 0.0);
        assert!((v - want).norm() < 1e-15);
    }

    #[test]
    fn alpha0_examples() {
        let r = solve_alpha0_pent(0.414213562373095f64).unwrap();
        assert!((r - 0.277046760238506).abs() < 1e-14);
        let r2 = solve_alpha0_pent(0.840896415253714f64).unwrap();
        assert!((r2 - 0.601898824534568).abs() < 1e-14);
        // defining property
        assert!(g_poly(0.414213562373095, r).abs() < 1e-13);
        assert!(solve_alpha0_pent(1.5f64).is_err());
    }

    #[test]
    fn c2_examples() {
        // the equations force c² = 0.0255179...; the source's Example-1
        // table prints a value poisoned by a rounded alpha0
        let c2 = compute_c2(0.414213562373095f64, 0.277046760238506).unwrap();
        assert!((c2 - 0.025517935088801877).abs() < 1e-13);
        let c2b = compute_c2(0.840896415253714f64, 0.601898824534568).unwrap();
        assert!((c2b - 0.11364323450967319).abs() < 1e-13);
        // Eq.-(5) consistency at the returned value
        let a0 = 0.277046760238506f64;
        let resid = a0.powi(4) - (5.0 * c2 + 1.0 / c2) / 3.0 * a0 * a0 + 1.0;
        assert!(resid.abs() < 1e-12, "consistency residual {resid}");
        assert!(compute_c2(0.9f64, 0.3).is_err()); // 3α₀ < 2a
    }

    #[test]
    fn alphas_solve_and_verify() {
        let (a, c2, a0) = (
            0.8408964152537145f64,
            0.11364323450967319,
            0.6018988245345684,
        );
        let (a1, a2, a3) = solve_alphas_pent(a, c2, a0).unwrap();
        assert!((a1 - 0.4158386617464553).abs() < 1e-14);
        assert!((a2 - 0.301_418_612_412_185_5).abs() < 1e-14);
        assert!((a3 - 0.2909312959081722).abs() < 1e-14);
        // defining properties, relative 1e-11
        for (x, tgt) in [(a1, 1.0 / a), (a2, -1.0 / a), (a3, -a)] {
            let h = h_pent(Complex64::new(x, 0.0), c2).unwrap().re;
            assert!(((h - tgt) / tgt).abs() < 1e-11);
        }
    }

    #[test]
    fn beta_transform_examples() {
        assert!((betas_pent(0.165536032447626f64) - 0.896160135941632).abs() < 1e-12);
        assert!((betas_pent(0.290931295908172f64) - 0.712214555130066).abs() < 1e-12);
        assert_eq!(betas_pent(0.0f64), 1.0);
    }

    #[test]
    fn mu_examples() {
        let m = mu_pent(0.154876549226231f64, 0.138335266800084).unwrap();
        assert!((m.k() - 0.990342209151293).abs() < 1e-12);
        let m2 = mu_pent(0.301418612412185f64, 0.290931295908172).unwrap();
        assert!((m2.k() - 0.987557290912592).abs() < 1e-12);
        assert!(mu_pent(0.3f64, 0.3).is_err()); // degenerate
    }

    #[test]
    fn diagnostics_are_tight_at_moderate_stretch() {
        for h in [0.5f64, 1.0, 2.0, 4.0] {
            let s = solve_pentomino(h).unwrap();
            let d = s.diagnostics();
            assert!(d.residual_alpha0 < 1e-13);
            assert!(d.h_gap_alpha1 < 1e-11);
            assert!(d.h_gap_alpha2 < 1e-11);
            assert!(d.h_gap_alpha3 < 1e-11);
            assert!(d.mu_consistency < 1e-13);
        }
    }
}
