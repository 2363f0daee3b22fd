//! Numerical evaluation of the Schwarz-Christoffel maps of the upper
//! half-plane onto `P_H` and `R_H`.
//!
//! The derivative of the map is `z'(t) = M · Π (t - x_i)^{e_i}` over the
//! finite prevertices, with exponents `-1/2` at right-angle vertices and
//! `+1/2` at the reflex corner `L`; one more right angle sits at the
//! prevertex at infinity (finite exponents sum to `-3/2`). Every factor
//! uses the power branch continuous in the closed upper half-plane with
//! `arg ∈ [0, π]`, which is exactly the principal complex power there.
//!
//! Endpoint square-root behavior is removed analytically: on an interval
//! ending at a prevertex `x` the substitution `t = x ± s²` turns
//! `(t-x)^{±1/2} dt` into `2 s^{2e+1} ds`, analytic in `s`; the unbounded
//! intervals use `t = x ± 1/s²`, under which the integrand becomes
//! `2 Π (1 + |x - x_i| s²)^{e_i}` because the exponents sum to `-3/2`.
//! The multiplier is not taken from a printed constant but solved from two
//! anchor conditions and then verified against all six vertices.

use std::sync::OnceLock;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::pentomino::PentominoSolution;
use crate::quad::GaussLegendre;
use crate::real::Real;
use crate::shapes::{self, Containment};
use crate::tetromino::TetrominoSolution;

/// A prevertex on the extended real line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PrevertexLocation<T> {
    Finite(T),
    Infinity,
}

/// One prevertex with its exponent (interior angle over pi, minus one) and
/// the polygon vertex it maps to.
#[derive(Debug, Clone, Copy)]
pub struct Prevertex<T> {
    pub location: PrevertexLocation<T>,
    pub exponent: T,
    pub target_vertex: Complex<T>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeTag {
    Pentomino,
    Tetromino,
}

/// A fully determined half-plane-to-polygon map.
#[derive(Debug)]
pub struct ScSpec<T> {
    /// Prevertices in boundary order; the last entry sits at infinity.
    pub prevertices: Vec<Prevertex<T>>,
    /// Complex constant multiplying the Schwarz-Christoffel integral.
    pub multiplier: Complex<T>,
    /// Image of the anchor prevertex.
    pub offset: Complex<T>,
    /// Target polygon vertices, in the same boundary order.
    pub polygon: Vec<Complex<T>>,
    pub shape: ShapeTag,
    quad_tol: T,
    /// `(location, exponent)` of the finite prevertices, ascending.
    finite: Vec<(T, T)>,
    /// Computed images of the finite prevertices, plus the infinite one.
    vertex_images: Vec<Complex<T>>,
    gl: GaussLegendre<T>,
    seeds: OnceLock<Vec<(Complex<T>, Complex<T>)>>,
}

const DEFAULT_QUAD_TOL: f64 = 1e-11;
const NEAR_PREVERTEX: f64 = 1e-8;

fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Builds the pentomino map: prevertices `0, β₁, β₂, β₃, 1, ∞` with images
/// `E, C, B, A, L, F`; anchored at `z(0) = E = 2H` with the multiplier
/// solved from `z(β₁) = C`.
pub fn build_sc_pent<T: Real>(sol: &PentominoSolution<T>) -> Result<ScSpec<T>> {
    build_sc_pent_with_tol(sol, T::of(DEFAULT_QUAD_TOL))
}

pub fn build_sc_pent_with_tol<T: Real>(sol: &PentominoSolution<T>, tol: T) -> Result<ScSpec<T>> {
    let h = sol.stretch;
    let v = shapes::pentomino_polygon(h); // A, B, C, E, F, L
    let half = T::of(0.5);
    let finite = vec![
        (T::zero(), -half),
        (sol.beta1, -half),
        (sol.beta2, -half),
        (sol.beta3, -half),
        (T::one(), half),
    ];
    let targets = vec![v[3], v[2], v[1], v[0], v[5], v[4]]; // E C B A L F
    ScSpec::build(
        ShapeTag::Pentomino,
        finite,
        targets,
        0,
        Adjacency::NextFinite,
        tol,
    )
}

/// Builds the tetromino map: prevertices `0, β₁, 1, β₂, β₃, ∞` with images
/// `B, A, L, F, E, C`; anchored at `z(β₃) = E = 2H` with the multiplier
/// solved from the edge of length 3 running to `C` at infinity.
pub fn build_sc_tet<T: Real>(sol: &TetrominoSolution<T>) -> Result<ScSpec<T>> {
    build_sc_tet_with_tol(sol, T::of(DEFAULT_QUAD_TOL))
}

pub fn build_sc_tet_with_tol<T: Real>(sol: &TetrominoSolution<T>, tol: T) -> Result<ScSpec<T>> {
    let h = sol.stretch;
    let v = shapes::tetromino_polygon(h); // A, B, C, E, F, L
    let half = T::of(0.5);
    let finite = vec![
        (T::zero(), -half),
        (sol.beta1, -half),
        (T::one(), half),
        (sol.beta2, -half),
        (sol.beta3, -half),
    ];
    let targets = vec![v[1], v[0], v[5], v[4], v[3], v[2]]; // B A L F E C
    ScSpec::build(
        ShapeTag::Tetromino,
        finite,
        targets,
        4,
        Adjacency::RightTail,
        tol,
    )
}

enum Adjacency {
    /// Multiplier pinned by the next finite vertex after the anchor.
    NextFinite,
    /// Multiplier pinned by the infinite vertex across the right tail.
    RightTail,
}

impl<T: Real> ScSpec<T> {
    fn build(
        shape: ShapeTag,
        finite: Vec<(T, T)>,
        targets: Vec<Complex<T>>,
        anchor: usize,
        adjacency: Adjacency,
        quad_tol: T,
    ) -> Result<Self> {
        let n = finite.len();
        debug_assert_eq!(targets.len(), n + 1);
        for w in finite.windows(2) {
            if !(w[0].0 < w[1].0) {
                return Err(Error::Domain(
                    "finite prevertices must be strictly increasing".into(),
                ));
            }
        }
        let exp_sum = finite.iter().fold(T::zero(), |s, &(_, e)| s + e);
        if (exp_sum + T::of(1.5)).abs() > T::of(16.0) * T::epsilon() {
            return Err(Error::Inconsistent(format!(
                "finite exponents sum to {exp_sum}, expected -3/2"
            )));
        }

        let mut spec = ScSpec {
            prevertices: Vec::new(),
            multiplier: Complex::new(T::one(), T::zero()),
            offset: targets[anchor],
            polygon: targets.clone(),
            shape,
            quad_tol,
            finite,
            vertex_images: Vec::new(),
            gl: GaussLegendre::new(32),
            seeds: OnceLock::new(),
        };

        // raw edge integrals (multiplier not yet applied)
        let mut edges = Vec::with_capacity(n - 1);
        for k in 0..n - 1 {
            edges.push(spec.edge_integral_raw(k, k + 1)?);
        }
        let right = spec.right_edge_raw()?;
        let left = spec.left_edge_raw()?;

        spec.multiplier = match adjacency {
            Adjacency::NextFinite => (targets[anchor + 1] - targets[anchor]) / edges[anchor],
            Adjacency::RightTail => (targets[n] - targets[anchor]) / right,
        };

        // walk the images out from the anchor
        let m = spec.multiplier;
        let mut images = vec![czero::<T>(); n + 1];
        images[anchor] = targets[anchor];
        for k in anchor..n - 1 {
            images[k + 1] = images[k] + m * edges[k];
        }
        for k in (0..anchor).rev() {
            images[k] = images[k + 1] - m * edges[k];
        }
        let inf_right = images[n - 1] + m * right;
        let inf_left = images[0] - m * left;
        images[n] = inf_right;

        // scale for the absolute checks: the polygon diameter
        let scale = targets
            .iter()
            .map(|t| (*t - targets[0]).norm())
            .fold(T::one(), T::max);
        let closure = (inf_right - inf_left).norm();
        if closure > T::of(1e-7) * scale {
            return Err(Error::Numerical(format!(
                "boundary image fails to close: gap {closure}"
            )));
        }
        let mut worst = T::zero();
        for k in 0..=n {
            worst = worst.max((images[k] - targets[k]).norm());
        }
        if worst > T::of(1e-6) * scale {
            return Err(Error::Numerical(format!(
                "vertex image error {worst} exceeds tolerance"
            )));
        }

        spec.vertex_images = images;
        spec.prevertices = spec
            .finite
            .iter()
            .enumerate()
            .map(|(k, &(x, e))| Prevertex {
                location: PrevertexLocation::Finite(x),
                exponent: e,
                target_vertex: targets[k],
            })
            .chain(std::iter::once(Prevertex {
                location: PrevertexLocation::Infinity,
                exponent: -T::of(0.5),
                target_vertex: targets[n],
            }))
            .collect();
        Ok(spec)
    }

    pub fn quad_tol(&self) -> T {
        self.quad_tol
    }

    /// Computed vertex images (finite prevertices first, then infinity).
    pub fn vertex_images(&self) -> &[Complex<T>] {
        &self.vertex_images
    }

    /// Product of the branch-fixed factors, optionally skipping one.
    fn factors(&self, skip: Option<usize>, t: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::one(), T::zero());
        for (i, &(x, e)) in self.finite.iter().enumerate() {
            if Some(i) == skip {
                continue;
            }
            acc = acc * (t - Complex::new(x, T::zero())).powf(e);
        }
        acc
    }

    /// Map derivative `z'(ζ) = multiplier · Π(ζ - x_i)^{e_i}`.
    pub fn derivative(&self, zeta: Complex<T>) -> Complex<T> {
        self.multiplier * self.factors(None, zeta)
    }

    /// Integral from a prevertex `from = finite[sing].0` to a regular real
    /// point `to` on the same side, via `t = from ± s²`.
    fn singular_side_raw(&self, sing: usize, to: T) -> Result<Complex<T>> {
        let (x, e) = self.finite[sing];
        if to == x {
            return Ok(czero());
        }
        let dir = if to > x { T::one() } else { -T::one() };
        let phase = Complex::new(dir, T::zero()).powf(e + T::one());
        let p = T::of(2.0) * e + T::one();
        let smax = (to - x).abs().sqrt();
        let f = |s: T| {
            let t = Complex::new(x + dir * s * s, T::zero());
            self.factors(Some(sing), t) * (T::of(2.0) * s.powf(p))
        };
        Ok(self.gl.adaptive(T::zero(), smax, self.quad_tol, &f)? * phase)
    }

    /// Integral over `[a, b]` on the real axis with no prevertex inside or
    /// at the ends.
    fn regular_raw(&self, a: T, b: T) -> Result<Complex<T>> {
        let f = |t: T| self.factors(None, Complex::new(t, T::zero()));
        self.gl.adaptive(a, b, self.quad_tol, &f)
    }

    /// Integral between two adjacent finite prevertices.
    fn edge_integral_raw(&self, i: usize, j: usize) -> Result<Complex<T>> {
        let mid = (self.finite[i].0 + self.finite[j].0) * T::of(0.5);
        Ok(self.singular_side_raw(i, mid)? - self.singular_side_raw(j, mid)?)
    }

    fn tail_width(&self) -> T {
        let span = self.finite.last().unwrap().0 - self.finite[0].0;
        span.max(T::one())
    }

    /// `∫ over (t(s_up), +inf)` in the `t = x_last + 1/s²` variable.
    fn right_tail_raw(&self, s_up: T) -> Result<Complex<T>> {
        let x0 = self.finite.last().unwrap().0;
        let pieces: Vec<(T, T)> = self.finite.iter().map(|&(x, e)| (x0 - x, e)).collect();
        let f = |s: T| {
            let mut acc = T::of(2.0);
            for &(dx, e) in &pieces {
                acc = acc * (T::one() + dx * s * s).powf(e);
            }
            Complex::new(acc, T::zero())
        };
        self.gl.adaptive(T::zero(), s_up, self.quad_tol, &f)
    }

    /// `∫ over (-inf, t(s_up))` in the `t = x_first - 1/s²` variable; the
    /// factors are all negative real there, contributing `exp(-3πi/2) = i`.
    fn left_tail_raw(&self, s_up: T) -> Result<Complex<T>> {
        let x0 = self.finite[0].0;
        let pieces: Vec<(T, T)> = self.finite.iter().map(|&(x, e)| (x - x0, e)).collect();
        let f = |s: T| {
            let mut acc = T::of(2.0);
            for &(dx, e) in &pieces {
                acc = acc * (T::one() + dx * s * s).powf(e);
            }
            Complex::new(acc, T::zero())
        };
        let v = self.gl.adaptive(T::zero(), s_up, self.quad_tol, &f)?;
        Ok(v * Complex::new(T::zero(), T::one()))
    }

    /// Full edge from the last finite prevertex to +infinity.
    fn right_edge_raw(&self) -> Result<Complex<T>> {
        let x0 = self.finite.last().unwrap().0;
        let h = self.tail_width();
        let near = self.singular_side_raw(self.finite.len() - 1, x0 + h)?;
        let tail = self.right_tail_raw(T::one() / h.sqrt())?;
        Ok(near + tail)
    }

    /// Full edge from -infinity to the first finite prevertex.
    fn left_edge_raw(&self) -> Result<Complex<T>> {
        let x0 = self.finite[0].0;
        let h = self.tail_width();
        let tail = self.left_tail_raw(T::one() / h.sqrt())?;
        let near = -self.singular_side_raw(0, x0 - h)?;
        Ok(tail + near)
    }

    fn nearest_prevertex(&self, zeta: Complex<T>) -> (usize, T) {
        let mut best = (0usize, T::infinity());
        for (k, &(x, _)) in self.finite.iter().enumerate() {
            let d = (zeta - Complex::new(x, T::zero())).norm();
            if d < best.1 {
                best = (k, d);
            }
        }
        best
    }

    /// Forward map `z(ζ)` for `ζ` in the closed upper half-plane.
    ///
    /// Integrates along the straight ray from the nearest prevertex, with
    /// the square-root substitution absorbing that prevertex's factor.
    pub fn map_point(&self, zeta: Complex<T>) -> Result<Complex<T>> {
        if zeta.im < T::zero() {
            return Err(Error::Domain(format!(
                "zeta = {zeta} lies in the lower half-plane"
            )));
        }
        let (k, dist) = self.nearest_prevertex(zeta);
        if dist <= T::of(NEAR_PREVERTEX) {
            return Ok(self.vertex_images[k]);
        }
        let (x, e) = self.finite[k];
        let dir = zeta - Complex::new(x, T::zero());
        let len = dir.norm();
        let unit = dir / len;
        let phase = unit.powf(e + T::one());
        let p = T::of(2.0) * e + T::one();
        let f = |s: T| {
            let t = Complex::new(x, T::zero()) + unit * (s * s);
            self.factors(Some(k), t) * (T::of(2.0) * s.powf(p))
        };
        let raw = self.gl.adaptive(T::zero(), len.sqrt(), self.quad_tol, &f)?;
        Ok(self.vertex_images[k] + self.multiplier * raw * phase)
    }

    /// Raw side-length integral `∫ |Π(t-x_i)^{e_i}| dt` over a boundary
    /// interval between adjacent prevertices (`±inf` allowed on the
    /// unbounded sides). Multiply by `|multiplier|` for the edge length.
    ///
    /// Between adjacent prevertices the integrand's phase is constant (the
    /// image edge is straight), so this equals the norm of the complex
    /// interval integral.
    pub fn side_length(&self, from: T, to: T) -> Result<T> {
        if !(from < to) {
            return Err(Error::Domain("need from < to".into()));
        }
        let find = |v: T| -> Option<usize> {
            self.finite.iter().position(|&(x, _)| {
                (x - v).abs() <= T::of(64.0) * T::epsilon() * (T::one() + x.abs())
            })
        };
        if from.is_infinite() {
            if find(to) != Some(0) {
                return Err(Error::Domain(
                    "unbounded interval must end at the first prevertex".into(),
                ));
            }
            return Ok(self.left_edge_raw()?.norm());
        }
        if to.is_infinite() {
            if find(from) != Some(self.finite.len() - 1) {
                return Err(Error::Domain(
                    "unbounded interval must start at the last prevertex".into(),
                ));
            }
            return Ok(self.right_edge_raw()?.norm());
        }
        match (find(from), find(to)) {
            (Some(i), Some(j)) if j == i + 1 => Ok(self.edge_integral_raw(i, j)?.norm()),
            (Some(_), Some(_)) => Err(Error::Domain(
                "interval contains an interior prevertex".into(),
            )),
            _ => Err(Error::Domain(
                "interval endpoints are not prevertices".into(),
            )),
        }
    }

    /// Edge length in target units: `|multiplier| ·` [`Self::side_length`].
    pub fn scaled_side_length(&self, from: T, to: T) -> Result<T> {
        Ok(self.multiplier.norm() * self.side_length(from, to)?)
    }

    /// Closed polyline tracing the image of the real axis, `samples` points
    /// per boundary edge (endpoints included).
    pub fn trace_boundary(&self, samples: usize) -> Result<Vec<Complex<T>>> {
        if samples < 2 {
            return Err(Error::Domain("need at least 2 samples per edge".into()));
        }
        let n = self.finite.len();
        let m = self.multiplier;
        let mut pts: Vec<Complex<T>> = Vec::new();
        pts.push(self.vertex_images[0]);

        // finite edges
        for k in 0..n - 1 {
            let (xa, _) = self.finite[k];
            let (xb, _) = self.finite[k + 1];
            let mut z = self.vertex_images[k];
            let step = (xb - xa) / T::of((samples - 1) as f64);
            let mut prev_t = xa;
            for j in 1..samples {
                let t = if j == samples - 1 {
                    xb
                } else {
                    xa + step * T::of(j as f64)
                };
                let inc = if j == 1 && j == samples - 1 {
                    self.edge_integral_raw(k, k + 1)?
                } else if j == 1 {
                    self.singular_side_raw(k, t)?
                } else if j == samples - 1 {
                    -self.singular_side_raw(k + 1, prev_t)?
                } else {
                    self.regular_raw(prev_t, t)?
                };
                z = z + m * inc;
                pts.push(z);
                prev_t = t;
            }
        }

        // edge from the last prevertex through +infinity
        let hnear = self.tail_width();
        let x_last = self.finite[n - 1].0;
        {
            let mut z = self.vertex_images[n - 1];
            // sample in the tail variable: s from 1/sqrt(h) down to 0
            let s_h = T::one() / hnear.sqrt();
            let mut prev_s = s_h;
            // first step covers [x_last, x_last + h]
            z = z + m * self.singular_side_raw(n - 1, x_last + hnear)?;
            if samples == 2 {
                z = z + m * self.right_tail_raw(s_h)?;
                pts.push(z);
            } else {
                for j in 1..samples {
                    let s = s_h * T::of((samples - 1 - j) as f64) / T::of((samples - 1) as f64);
                    let inc = self.right_tail_raw(prev_s)? - self.right_tail_raw(s)?;
                    z = z + m * inc;
                    pts.push(z);
                    prev_s = s;
                }
            }
        }

        // edge from -infinity to the first prevertex
        {
            let mut z = *pts.last().unwrap();
            let s_h = T::one() / hnear.sqrt();
            if samples == 2 {
                z = z + m * self.left_edge_raw()?;
                pts.push(z);
            } else {
                let mut prev_s = T::zero();
                for j in 1..samples {
                    let s = s_h * T::of(j as f64) / T::of((samples - 1) as f64);
                    let inc = self.left_tail_raw(s)? - self.left_tail_raw(prev_s)?;
                    z = z + m * inc;
                    prev_s = s;
                    if j < samples - 1 {
                        pts.push(z);
                    }
                }
                // last stretch into the first prevertex
                let x0 = self.finite[0].0;
                z = z - m * self.singular_side_raw(0, x0 - hnear)?;
                pts.push(z);
            }
        }
        Ok(pts)
    }

    fn seed_grid(&self) -> &Vec<(Complex<T>, Complex<T>)> {
        self.seeds.get_or_init(|| {
            let x0 = self.finite[0].0;
            let x1 = self.finite.last().unwrap().0;
            let w = (x1 - x0).max(T::one());
            let mut out = Vec::new();
            let mut push = |zeta: Complex<T>, me: &Self| {
                if let Ok(z) = me.map_point(zeta) {
                    out.push((zeta, z));
                }
            };
            // every gap between consecutive prevertices opens into one
            // "room" of the polygon; seed each at heights scaled to the gap
            for k in 0..self.finite.len() - 1 {
                let a = self.finite[k].0;
                let b = self.finite[k + 1].0;
                let gap = b - a;
                for fx in [0.25, 0.5, 0.75] {
                    for fy in [0.1, 0.35, 1.0, 3.0] {
                        let zeta = Complex::new(a + gap * T::of(fx), gap * T::of(fy));
                        push(zeta, self);
                    }
                }
            }
            // the two unbounded sides and the far field
            for t in [0.3, 1.0, 4.0, 16.0, 64.0, 256.0] {
                for fy in [0.3, 1.0] {
                    let d = w * T::of(t);
                    push(Complex::new(x1 + d, d * T::of(fy)), self);
                    push(Complex::new(x0 - d, d * T::of(fy)), self);
                }
            }
            for r in [2.0, 8.0, 40.0, 200.0] {
                for deg in [30.0, 60.0, 90.0, 120.0, 150.0] {
                    let ang = T::of(deg * std::f64::consts::PI / 180.0);
                    let mid = (x0 + x1) * T::of(0.5);
                    let zeta =
                        Complex::new(mid + w * T::of(r) * ang.cos(), w * T::of(r) * ang.sin());
                    push(zeta, self);
                }
            }
            out
        })
    }

    /// Inverse map: finds `ζ` in the open upper half-plane with
    /// `|z(ζ) - z| ≤ 1e-8`, by damped Newton on the forward map seeded from
    /// a precomputed grid of forward images.
    pub fn invert_point(&self, z: Complex<T>) -> Result<Complex<T>> {
        let scale = self.polygon.iter().map(|v| v.norm()).fold(T::one(), T::max);
        match shapes::locate_in_rectilinear(&self.polygon, z, T::of(1e-12) * scale) {
            Containment::Inside => {}
            _ => {
                return Err(Error::Domain(format!(
                    "z = {z} is not strictly inside the polygon"
                )))
            }
        }
        let mut seeds: Vec<Complex<T>> = {
            let grid = self.seed_grid();
            let mut order: Vec<usize> = (0..grid.len()).collect();
            order.sort_by(|&i, &j| {
                let di = (grid[i].1 - z).norm();
                let dj = (grid[j].1 - z).norm();
                di.partial_cmp(&dj).unwrap()
            });
            order.iter().take(6).map(|&i| grid[i].0).collect()
        };
        if seeds.is_empty() {
            return Err(Error::Numerical("empty seed grid".into()));
        }
        let tol = T::of(1e-10) * scale;
        let mut last_err = Error::Numerical("inverse-map Newton failed to converge".into());
        for seed in seeds.drain(..) {
            match self.newton_from(seed, z, tol) {
                Ok(zeta) => return Ok(zeta),
                Err(e) => last_err = e,
            }
        }
        Err(last_err)
    }

    fn newton_from(&self, seed: Complex<T>, z: Complex<T>, tol: T) -> Result<Complex<T>> {
        let mut zeta = seed;
        let mut fval = self.map_point(zeta)? - z;
        for _ in 0..100 {
            if fval.norm() <= tol {
                return Ok(zeta);
            }
            let deriv = self.derivative(zeta);
            if deriv.norm() == T::zero() {
                return Err(Error::Numerical("vanishing derivative in Newton".into()));
            }
            let full_step = -fval / deriv;
            let mut lambda = T::one();
            let mut accepted = false;
            for _ in 0..40 {
                let trial = zeta + full_step * lambda;
                if trial.im > T::zero() {
                    if let Ok(img) = self.map_point(trial) {
                        let ftrial = img - z;
                        if ftrial.norm() < fval.norm() {
                            zeta = trial;
                            fval = ftrial;
                            accepted = true;
                            break;
                        }
                    }
                }
                lambda = lambda * T::of(0.5);
            }
            if !accepted {
                return Err(Error::Numerical(
                    "Newton stalled while inverting the map".into(),
                ));
            }
        }
        if fval.norm() <= tol {
            Ok(zeta)
        } else {
            Err(Error::Numerical(
                "inverse-map Newton failed to converge".into(),
            ))
        }
    }
}
