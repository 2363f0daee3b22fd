//! Accessory parameters and conformal module of the stretched L-tetromino
//! `R_H` (vertices `2i, 3i, 2H+3i, 2H, H, H+2i`).
//!
//! Here the uniformizing map is
//!
//! ```text
//! h(ζ) = ζ³ (1 - cζ) / (ζ - c)
//! ```
//!
//! with a single simple pole `c = α₂ ∈ (0,1)`. The critical point `α₀`
//! satisfies `h(α₀) = lambda`, `h'(α₀) = 0`; the remaining prevertex
//! preimages solve `h(α₁) = lambda` on `(-1,0)` and `h(α₃) = 1/lambda` on
//! `(c, α₀)`. After `beta = ((1+α)/(1-α))²` the module is
//! `2K(mu)/K(mu')` with `mu = (1-A)/(1+A)` and `A²` the cross-ratio of
//! `(0, beta1, beta2, beta3)`.
//!
//! The same crowding phenomena as in the pentomino pipeline are handled by
//! exact complement forms: the cubic in `W = 1-α₀²`, the quartics shifted to
//! `u = 1+α₁` and `sigma = 1-α₃`, the pole gap `α₃-c = lambda·α₃³(1-cα₃)`,
//! and the difference identity `beta_b - beta_a = 4(b-a)(1-ab)/((1-b)²(1-a)²)`.

use num_complex::Complex;

use crate::elliptic::{self, Modulus};
use crate::error::{Error, Result};
use crate::real::Real;
use crate::rootfind::{self, Bracket};

fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// Everything the L-tetromino pipeline produces for one stretch factor.
#[derive(Debug, Clone)]
pub struct TetrominoSolution<T> {
    /// Stretch factor `H`.
    pub stretch: T,
    /// `lambda` with `2K(lambda)/K(lambda') = H`.
    pub lambda: Modulus<T>,
    /// Critical point of `h` in `(0,1)`.
    pub alpha0: T,
    /// Preimage of vertex A (`h = lambda`), in `(-1,0)`.
    pub alpha1: T,
    /// The pole `c` of `h`; prevertex preimage of vertex F.
    pub alpha2: T,
    /// Preimage of vertex E (`h = 1/lambda`).
    pub alpha3: T,
    pub beta1: T,
    pub beta2: T,
    pub beta3: T,
    /// Cross-ratio root `A = sqrt(beta1(beta3-beta2)/(beta2(beta3-beta1)))`.
    pub a_cross: T,
    /// Module modulus `mu = (1-A)/(1+A)`.
    pub mu: Modulus<T>,
    /// `Mod(R_H) = 2K(mu)/K(mu')`.
    pub module: T,
}

/// Consistency residuals, evaluated directly in working precision.
#[derive(Debug, Clone, Copy)]
pub struct TetrominoDiagnostics<T> {
    /// `|α₀⁶ - 3λα₀⁴ + 3λα₀² - λ²|`.
    pub residual_alpha0: T,
    /// Relative gaps `|h(α₁) - λ|/λ` and `|h(α₃) - 1/λ|·λ`.
    pub h_gap_alpha1: T,
    pub h_gap_alpha3: T,
    /// `|mu² + mu'² - 1|`.
    pub mu_consistency: T,
}

/// The rational map `h(z) = z³(1 - cz)/(z - c)`.
pub fn h_tet<T: Real>(z: Complex<T>, c: T) -> Result<Complex<T>> {
    let cc = Complex::new(c, T::zero());
    if z == cc {
        return Err(Error::Domain(format!("h has a pole at z = c = {c}")));
    }
    Ok(z * z * z * (cone::<T>() - z * c) / (z - cc))
}

/// Logarithmic derivative `h'/h = 3/z - 1/(z-c) - c/(1-cz)`.
pub fn h_tet_logderiv<T: Real>(z: Complex<T>, c: T) -> Result<Complex<T>> {
    let zero = Complex::new(T::zero(), T::zero());
    let cc = Complex::new(c, T::zero());
    let inv_c = Complex::new(T::one() / c, T::zero());
    if z == zero || z == cc || z == inv_c {
        return Err(Error::Domain(
            "logarithmic derivative evaluated at a zero or pole of h".into(),
        ));
    }
    let three = Complex::new(T::of(3.0), T::zero());
    Ok(three / z - cone::<T>() / (z - cc) - cc / (cone::<T>() - z * c))
}

/// The sextic in `x` reduced to a cubic in `u = x²`.
fn r_cubic<T: Real>(lam: T, u: T) -> T {
    ((u - T::of(3.0) * lam) * u + T::of(3.0) * lam) * u - lam * lam
}

/// The same cubic in `W = 1 - u`: `W³ - 3εW² + 3εW - ε(2-ε)`, `ε = 1-λ`.
fn r_cubic_shifted<T: Real>(eps: T, w: T) -> T {
    ((w - T::of(3.0) * eps) * w + T::of(3.0) * eps) * w - eps * (T::of(2.0) - eps)
}

/// Solves `α₀⁶ - 3λα₀⁴ + 3λα₀² - λ² = 0` for the unique root in `(0,1)`.
pub fn solve_alpha0_tet<T: Real>(lambda: T) -> Result<T> {
    if !(lambda > T::zero() && lambda < T::one()) {
        return Err(Error::Domain(format!("lambda={lambda} outside (0,1)")));
    }
    let eps = T::one() - lambda;
    Ok(alpha0_with_complements(lambda, eps)?.0)
}

/// Returns `(alpha0, sigma0 = 1-alpha0, u0 = alpha0²)`.
fn alpha0_with_complements<T: Real>(lam: T, eps: T) -> Result<(T, T, T)> {
    if lam <= T::of(0.5) {
        // cubic in u on (lam/3, 1); r(lam/3) = -(8/27)λ³ < 0 < r(1) = 1-λ²
        let lo = lam / T::of(3.0) * (T::one() - T::of(1e-9));
        let f = |u| r_cubic(lam, u);
        let bracket = Bracket::from_eval(&f, lo, T::one())?;
        let u = rootfind::bracketed_root(f, &bracket, T::zero())?;
        let alpha0 = u.sqrt();
        Ok((alpha0, T::one() - alpha0, u))
    } else {
        // cubic in W = 1-u; the root scales like (2ε)^(1/3), far better
        // conditioned than the near-triple cluster in the u variable
        let hi = T::one() - lam / T::of(3.0);
        let f = |w| r_cubic_shifted(eps, w);
        let bracket = Bracket::from_eval(&f, T::zero(), hi)?;
        let w = rootfind::bracketed_root(f, &bracket, T::zero())?;
        let u = T::one() - w;
        let alpha0 = u.sqrt();
        Ok((alpha0, w / (T::one() + alpha0), u))
    }
}

/// `α₂ = c = (3α₀² - λ)/(4α₀³)`.
pub fn compute_c_tet<T: Real>(lambda: T, alpha0: T) -> Result<T> {
    let num = T::of(3.0) * alpha0 * alpha0 - lambda;
    if !(num > T::zero()) {
        return Err(Error::Inconsistent(format!(
            "3α₀² - λ = {num} not positive; inputs do not satisfy the defining equations"
        )));
    }
    Ok(num / (T::of(4.0) * alpha0 * alpha0 * alpha0))
}

/// `c` in the cancellation-free form `sqrt(u₀)(3λ - u₀)/(4λ)`.
///
/// Equal to [`compute_c_tet`] whenever `u₀ = α₀²` solves the cubic; stable
/// for `λ -> 0` where `3α₀² - λ` cancels.
fn c_stable<T: Real>(lam: T, u0: T) -> T {
    u0.sqrt() * (T::of(3.0) * lam - u0) / (T::of(4.0) * lam)
}

fn q1_poly<T: Real>(lam: T, c: T, x: T) -> T {
    // c x^4 - x^3 + λx - cλ
    (((c * x - T::one()) * x) * x + lam) * x - c * lam
}

/// `q1(u-1)` with exact complement coefficients; root `u₁ = 1 + α₁`.
fn q1_shifted<T: Real>(lam: T, c: T, eps: T, u: T) -> T {
    let k0 = (T::one() + c) * eps;
    let k1 = lam - T::of(3.0) - T::of(4.0) * c;
    let k2 = T::of(6.0) * c + T::of(3.0);
    let k3 = -(T::of(4.0) * c + T::one());
    ((((c * u + k3) * u + k2) * u) + k1) * u + k0
}

fn q3_poly<T: Real>(lam: T, c: T, x: T) -> T {
    // λc x^4 - λx^3 + x - c
    (((lam * c * x - lam) * x) * x + T::one()) * x - c
}

/// `q3(1-σ)` through `ε` and `γ = 1/2 - c`; root `σ₃ = 1 - α₃`.
fn q3_shifted<T: Real>(lam: T, c: T, eps: T, gamma: T, s: T) -> T {
    let k0 = (T::one() - c) * eps;
    let k1 = T::of(4.0) * lam * gamma - eps;
    let k2 = -T::of(6.0) * lam * gamma;
    let k3 = -lam * (T::one() - T::of(4.0) * gamma);
    let k4 = lam * c;
    (((k4 * s + k3) * s + k2) * s + k1) * s + k0
}

struct TetAlphas<T> {
    alpha1: T,
    /// `1 + alpha1`.
    u1: T,
    alpha3: T,
    /// `1 - alpha3`.
    sigma3: T,
    /// `alpha3 - c`, from the exact identity `λα₃³(1-cα₃)`.
    gap3: T,
}

fn alphas_with_complements<T: Real>(
    lam: T,
    c: T,
    alpha0: T,
    sigma0: T,
    eps: T,
) -> Result<TetAlphas<T>> {
    let offset = T::of(8.0) * T::epsilon();

    // alpha1: h = lambda on (-1, 0), h decreasing from 1 to 0.
    let (alpha1, u1) = if lam > T::of(0.5) {
        let f = |u| q1_shifted(lam, c, eps, u);
        let bracket = Bracket::from_eval(&f, T::zero(), T::one())?;
        let u = rootfind::bracketed_root(f, &bracket, T::zero())?;
        (u - T::one(), u)
    } else {
        let f = |x| q1_poly(lam, c, x);
        let bracket = Bracket::from_eval(&f, -T::one(), T::zero())?;
        let x = rootfind::bracketed_root(f, &bracket, T::zero())?;
        (x, T::one() + x)
    };

    // alpha3: h = 1/lambda on (c, alpha0), h decreasing from +inf to lambda.
    let (alpha3, sigma3, gap3) = if lam > T::of(0.5) {
        let gamma = (T::of(3.0) * sigma0 * sigma0 - T::of(2.0) * sigma0 * sigma0 * sigma0 - eps)
            / (T::of(4.0) * alpha0 * alpha0 * alpha0);
        let f = |s| q3_shifted(lam, c, eps, gamma, s);
        let bracket = Bracket::from_eval(&f, sigma0, T::one() - c)?;
        let s = rootfind::bracketed_root(f, &bracket, T::zero())?;
        let alpha3 = T::one() - s;
        let gap3 = lam * alpha3 * alpha3 * alpha3 * (T::one() - c * alpha3);
        (alpha3, s, gap3)
    } else {
        let lo = c * (T::one() + offset);
        let f = |x| q3_poly(lam, c, x);
        if !(f(lo) < T::zero()) {
            // root between the pole and lo: iterate the exact gap identity
            let mut gap = lam * c * c * c * (T::one() - c * c);
            for _ in 0..6 {
                let x = c + gap;
                gap = lam * x * x * x * (T::one() - c * x);
            }
            let alpha3 = c + gap;
            (alpha3, T::one() - alpha3, gap)
        } else {
            let bracket = Bracket::from_eval(&f, lo, alpha0)?;
            let x = rootfind::bracketed_root(f, &bracket, T::zero())?;
            let gap3 = lam * x * x * x * (T::one() - c * x);
            (x, T::one() - x, gap3)
        }
    };

    if !(u1 > T::zero() && gap3 > T::zero() && sigma3 > T::zero()) {
        return Err(Error::Numerical("prevertex ordering lost".into()));
    }
    let al = TetAlphas {
        alpha1,
        u1,
        alpha3,
        sigma3,
        gap3,
    };
    validate_alphas(lam, c, &al)?;
    Ok(al)
}

/// Evaluates `h` at the two roots against their targets, scaling the
/// tolerance by the evaluation noise, which grows like `eps·c/|x-c|` when a
/// root hugs the pole.
fn validate_alphas<T: Real>(lam: T, c: T, al: &TetAlphas<T>) -> Result<()> {
    let base = T::of(1e-9).max(T::epsilon() * T::of(1e3));
    let h1 = h_tet(Complex::new(al.alpha1, T::zero()), c)?.re;
    if ((h1 - lam) / lam).abs() > base {
        return Err(Error::Numerical(format!(
            "h(α₁) = {h1} deviates from λ = {lam}"
        )));
    }
    if al.alpha3 == c {
        // stored root collapsed onto the pole (extreme stretch); downstream
        // uses the positive gap identity, nothing evaluable here
        return Ok(());
    }
    let h3 = h_tet(Complex::new(al.alpha3, T::zero()), c)?.re;
    let eval_noise = T::of(32.0) * T::epsilon() * (c / (al.alpha3 - c).abs()).max(T::one());
    let tol = base + eval_noise;
    if ((h3 - T::one() / lam) * lam).abs() > tol {
        return Err(Error::Numerical(format!("h(α₃) = {h3} deviates from 1/λ")));
    }
    Ok(())
}

/// Solves the two quartics for `(α₁, α₃)` given consistent `(λ, c, α₀)`.
pub fn solve_alphas_tet<T: Real>(lambda: T, c: T, alpha0: T) -> Result<(T, T)> {
    if !(lambda > T::zero() && lambda < T::one()) || !(c > T::zero() && c < alpha0) {
        return Err(Error::Domain("need λ in (0,1) and 0 < c < α₀ < 1".into()));
    }
    let eps = T::one() - lambda;
    let sigma0 = T::one() - alpha0;
    let al = alphas_with_complements(lambda, c, alpha0, sigma0, eps)?;
    Ok((al.alpha1, al.alpha3))
}

/// `beta = ((1+α)/(1-α))²`, the half-disk to half-plane boundary change.
pub fn betas_tet<T: Real>(alpha: T) -> Result<T> {
    if !(alpha > -T::one() && alpha < T::one()) {
        return Err(Error::Domain(format!("alpha={alpha} outside (-1,1)")));
    }
    let r = (T::one() + alpha) / (T::one() - alpha);
    Ok(r * r)
}

/// Cross-ratio root and module modulus from the three finite prevertices.
pub fn mu_tet<T: Real>(beta1: T, beta2: T, beta3: T) -> Result<(T, Modulus<T>)> {
    if !(T::zero() < beta1 && beta1 < beta2 && beta2 < beta3) {
        return Err(Error::Domain(format!(
            "need 0 < β₁ < β₂ < β₃, got ({beta1}, {beta2}, {beta3})"
        )));
    }
    let a_cross = (beta1 * (beta3 - beta2) / (beta2 * (beta3 - beta1))).sqrt();
    if !(a_cross > T::zero() && a_cross < T::one()) {
        return Err(Error::Domain(format!(
            "cross-ratio root A = {a_cross} outside (0,1)"
        )));
    }
    let mu = mu_from_cross_ratio(a_cross)?;
    Ok((a_cross, mu))
}

fn mu_from_cross_ratio<T: Real>(a_cross: T) -> Result<Modulus<T>> {
    let denom = T::one() + a_cross;
    let mu = ((T::one() - a_cross) / denom).min(T::one() - T::epsilon() / T::of(2.0));
    let mu_prime = T::of(2.0) * a_cross.sqrt() / denom;
    Modulus::from_parts(mu, mu_prime)
}

/// Full pipeline: stretch factor to all accessory parameters and `Mod(R_H)`.
pub fn solve_tetromino<T: Real>(h: T) -> Result<TetrominoSolution<T>> {
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::Domain("H must be positive".into()));
    }
    let lambda = elliptic::solve_modulus_from_ratio(h)?;
    let (lam, lam_p) = (lambda.k(), lambda.complement());
    let eps = lam_p * lam_p / (T::one() + lam);

    let (alpha0, sigma0, u0) = alpha0_with_complements(lam, eps)?;
    let c = c_stable(lam, u0);
    if !(c > T::zero() && c < alpha0) {
        return Err(Error::Inconsistent("derived pole c outside (0, α₀)".into()));
    }
    let al = alphas_with_complements(lam, c, alpha0, sigma0, eps)?;
    if !(al.sigma3 > sigma0) {
        return Err(Error::Numerical("ordering alpha3 < alpha0 lost".into()));
    }

    let r1 = al.u1 / (T::of(2.0) - al.u1);
    let beta1 = r1 * r1;
    let r2 = (T::one() + c) / (T::one() - c);
    let beta2 = r2 * r2;
    let r3 = (T::of(2.0) - al.sigma3) / al.sigma3;
    let beta3 = r3 * r3;

    // beta3 - beta2 and beta3 - beta1 via the difference identity so that
    // the near-pole case (small H: alpha3 -> c, beta3 -> beta2) keeps full
    // relative accuracy
    let one_minus_c = T::one() - c;
    let b32 = T::of(4.0) * al.gap3 * (T::one() - c * al.alpha3)
        / (al.sigma3 * al.sigma3 * one_minus_c * one_minus_c);
    let two_minus_u1 = T::of(2.0) - al.u1;
    let b31 = T::of(4.0) * (al.alpha3 - al.alpha1) * (T::one() - al.alpha1 * al.alpha3)
        / (al.sigma3 * al.sigma3 * two_minus_u1 * two_minus_u1);
    if !(b32 > T::zero() && b31 > T::zero()) {
        return Err(Error::Numerical("beta ordering lost".into()));
    }
    let a_cross = (beta1 * b32 / (beta2 * b31)).sqrt();
    let mu = mu_from_cross_ratio(a_cross)?;
    let module = elliptic::module_from_mu(&mu, T::of(2.0))?;

    Ok(TetrominoSolution {
        stretch: h,
        lambda,
        alpha0,
        alpha1: al.alpha1,
        alpha2: c,
        alpha3: al.alpha3,
        beta1,
        beta2,
        beta3,
        a_cross,
        mu,
        module,
    })
}

impl<T: Real> TetrominoSolution<T> {
    /// Direct-evaluation consistency residuals.
    pub fn diagnostics(&self) -> TetrominoDiagnostics<T> {
        let lam = self.lambda.k();
        let c = self.alpha2;
        let h_at = |x: T| -> T {
            h_tet(Complex::new(x, T::zero()), c)
                .map(|v| v.re)
                .unwrap_or(T::infinity())
        };
        TetrominoDiagnostics {
            residual_alpha0: r_cubic(lam, self.alpha0 * self.alpha0).abs(),
            h_gap_alpha1: ((h_at(self.alpha1) - lam) / lam).abs(),
            h_gap_alpha3: ((h_at(self.alpha3) - T::one() / lam) * lam).abs(),
            mu_consistency: (self.mu.k() * self.mu.k()
                + self.mu.complement() * self.mu.complement()
                - T::one())
            .abs(),
        }
    }
}
