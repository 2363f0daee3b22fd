//! Panel-adaptive Gauss-Legendre quadrature used by the map evaluator.
//!
//! Integrands here are analytic inside every panel (endpoint square-root
//! behavior is removed beforehand by substitution), so fixed 32-node panels
//! with doubling until two refinements agree are both fast and reliable.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;

/// Nodes and weights of an n-point Gauss-Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> GaussLegendre<T> {
    pub fn new(n: usize) -> Self {
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nf = T::of(n as f64);
        for i in 0..n {
            // Newton from the Chebyshev-like initial guess
            let mut x = (T::PI() * (T::of(i as f64) + T::of(0.75)) / (nf + T::of(0.5))).cos();
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_and_deriv(n, x);
                dp = d;
                let dx = p / d;
                x = x - dx;
                if dx.abs() <= T::epsilon() * (x.abs() + T::one()) {
                    let (p2, d2) = legendre_and_deriv(n, x);
                    dp = d2;
                    x = x - p2 / d2;
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = T::of(2.0) / ((T::one() - x * x) * dp * dp);
        }
        Self { nodes, weights }
    }

    /// One panel of the rule over `[a, b]` for a complex-valued integrand.
    pub fn panel<F>(&self, a: T, b: T, f: &F) -> Complex<T>
    where
        F: Fn(T) -> Complex<T>,
    {
        let half = (b - a) * T::of(0.5);
        let mid = (a + b) * T::of(0.5);
        let mut acc = Complex::new(T::zero(), T::zero());
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            acc = acc + f(mid + half * *x) * *w;
        }
        acc * half
    }

    /// Integral over `[a, b]` with panel doubling until two successive
    /// refinements agree to `tol` relative.
    pub fn adaptive<F>(&self, a: T, b: T, tol: T, f: &F) -> Result<Complex<T>>
    where
        F: Fn(T) -> Complex<T>,
    {
        if a == b {
            return Ok(Complex::new(T::zero(), T::zero()));
        }
        let mut panels = 1usize;
        let mut prev = self.panel(a, b, f);
        for _ in 0..14 {
            panels *= 2;
            let step = (b - a) / T::of(panels as f64);
            let mut acc = Complex::new(T::zero(), T::zero());
            for i in 0..panels {
                let lo = a + step * T::of(i as f64);
                acc = acc + self.panel(lo, lo + step, f);
            }
            let scale = acc.norm().max(T::min_positive_value());
            if (acc - prev).norm() <= tol * scale {
                return Ok(acc);
            }
            prev = acc;
        }
        Err(Error::Numerical(format!(
            "quadrature failed to converge on [{a}, {b}]"
        )))
    }
}

fn legendre_and_deriv<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = T::of(k as f64);
        let p2 = ((T::of(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = T::of(n as f64) * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}
