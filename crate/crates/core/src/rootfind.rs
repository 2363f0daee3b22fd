//! Bracketed scalar root-finding: Brent iteration with guaranteed
//! termination, plus a guarded Newton polish.
//!
//! Every accessory-parameter equation in this crate has a root that is
//! unique inside a known interval with a sign change, so nothing fancier is
//! needed; the point of this module is to be deterministic and to fail
//! loudly when a caller's bracket assumption is wrong.

use crate::error::{Error, Result};
use crate::real::Real;

/// Sign of a function value at a bracket endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Positive,
}

impl Sign {
    pub fn of<T: Real>(v: T) -> Option<Sign> {
        if v > T::zero() {
            Some(Sign::Positive)
        } else if v < T::zero() {
            Some(Sign::Negative)
        } else {
            None
        }
    }
}

/// An interval `[lo, hi]` with recorded opposite signs at the endpoints.
#[derive(Debug, Clone, Copy)]
pub struct Bracket<T> {
    pub lo: T,
    pub hi: T,
    pub f_lo_sign: Sign,
    pub f_hi_sign: Sign,
}

impl<T: Real> Bracket<T> {
    pub fn new(lo: T, hi: T, f_lo_sign: Sign, f_hi_sign: Sign) -> Result<Self> {
        if !(lo < hi) {
            return Err(Error::Bracket(format!("need lo < hi, got [{lo}, {hi}]")));
        }
        if f_lo_sign == f_hi_sign {
            return Err(Error::Bracket(format!(
                "no sign change recorded on [{lo}, {hi}]"
            )));
        }
        Ok(Self {
            lo,
            hi,
            f_lo_sign,
            f_hi_sign,
        })
    }

    /// Evaluates `f` at both endpoints and records the signs.
    pub fn from_eval(f: impl Fn(T) -> T, lo: T, hi: T) -> Result<Self> {
        let (flo, fhi) = (f(lo), f(hi));
        match (Sign::of(flo), Sign::of(fhi)) {
            (Some(slo), Some(shi)) => Self::new(lo, hi, slo, shi),
            _ => Err(Error::Bracket(format!(
                "endpoint value vanishes on [{lo}, {hi}]"
            ))),
        }
    }
}

const MAX_ITER: usize = 200;

/// Brent's method on a bracketed root.
///
/// Terminates when `|f| <= tol * scale` (scale = larger endpoint magnitude)
/// or when the enclosing interval shrinks to a few ulps of the root.
/// The returned point always lies inside the input bracket.
pub fn bracketed_root<T: Real>(f: impl Fn(T) -> T, bracket: &Bracket<T>, tol: T) -> Result<T> {
    let mut a = bracket.lo;
    let mut b = bracket.hi;
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    let sa = Sign::of(fa).unwrap();
    let sb = Sign::of(fb).unwrap();
    if sa != bracket.f_lo_sign || sb != bracket.f_hi_sign {
        return Err(Error::Bracket(format!(
            "endpoint signs changed under evaluation on [{}, {}]",
            bracket.lo, bracket.hi
        )));
    }
    if sa == sb {
        return Err(Error::Bracket(format!(
            "no sign change on [{}, {}]",
            bracket.lo, bracket.hi
        )));
    }
    let f_scale = fa.abs().max(fb.abs());

    let mut c = b;
    let mut fc = fb;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..MAX_ITER {
        if (fb > T::zero()) == (fc > T::zero()) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = T::of(2.0) * T::epsilon() * b.abs() + T::min_positive_value();
        let xm = T::of(0.5) * (c - b);
        if xm.abs() <= tol1 || fb == T::zero() || fb.abs() <= tol * f_scale {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            // inverse quadratic / secant step
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = T::of(2.0) * xm * s;
                q = T::one() - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (T::of(2.0) * xm * qq * (qq - r) - (b - a) * (r - T::one()));
                q = (qq - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = T::of(3.0) * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if T::of(2.0) * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if d.abs() > tol1 {
            b = b + d;
        } else if xm > T::zero() {
            b = b + tol1;
        } else {
            b = b - tol1;
        }
        fb = f(b);
    }
    Err(Error::Numerical(format!(
        "root iteration cap exceeded on [{}, {}]",
        bracket.lo, bracket.hi
    )))
}

/// A few guarded Newton steps to sharpen `x0` to the last bit.
///
/// Steps that leave the guard interval or fail to reduce `|f|` are
/// discarded; the input is returned unchanged in the worst case.
pub fn newton_polish<T: Real>(
    f: impl Fn(T) -> T,
    df: impl Fn(T) -> T,
    x0: T,
    guard: &Bracket<T>,
) -> T {
    let mut best = x0;
    let mut best_f = f(x0).abs();
    let mut x = x0;
    for _ in 0..3 {
        let d = df(x);
        if d == T::zero() || !d.is_finite() {
            break;
        }
        let x1 = x - f(x) / d;
        if !(x1 >= guard.lo && x1 <= guard.hi) || x1 == x {
            break;
        }
        let f1 = f(x1).abs();
        if f1 < best_f {
            best = x1;
            best_f = f1;
        }
        if f1 == T::zero() {
            break;
        }
        x = x1;
    }
    best
}
