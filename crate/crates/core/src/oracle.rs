//! Formula-free estimate of the conformal module from its definition as an
//! extremal length, used to cross-validate the analytic pipeline.
//!
//! The polygon is covered by a uniform grid of unit cells; each grid edge
//! becomes a conductor (weight 1 inside, 1/2 along the boundary, which is
//! the exact energy of the five-point stencil with reflected ghosts). With
//! potential 0 and 1 on the two marked sides and natural no-flux conditions
//! elsewhere, the extremal length of the joining curve family is the
//! reciprocal of the Dirichlet energy.
//!
//! The reentrant corner limits plain-grid convergence to order ~4/3, so
//! [`richardson`] extrapolates in the observed order. Summation order is
//! fixed and single-threaded: identical inputs give identical bits.

use crate::error::{Error, Result};
use crate::real::Real;

/// A rectilinear polygon with two marked sides (edge indices into the
/// vertex list; edge `k` runs from vertex `k` to vertex `k+1`).
#[derive(Debug, Clone)]
pub struct QuadrilateralSpec<T> {
    pub polygon: Vec<(T, T)>,
    pub side_u0: usize,
    pub side_u1: usize,
}

/// Result of a Richardson extrapolation over grid resolutions.
#[derive(Debug, Clone, Copy)]
pub struct RichardsonResult<T> {
    pub value: T,
    /// Difference of the two finest extrapolants plus the snapping bound.
    pub error_estimate: T,
    /// Observed convergence order (4/3 assumed when only two levels exist).
    pub order: T,
    /// Set when the grid values were not monotone and the finest value was
    /// returned unextrapolated.
    pub warning: bool,
}

/// Discrete module at `n` cells per unit length.
pub fn grid_module<T: Real>(q: &QuadrilateralSpec<T>, n: u32) -> Result<T> {
    if n < 8 {
        return Err(Error::Domain(format!("grid too coarse: n = {n} < 8")));
    }
    grid_module_arcs(&q.polygon, &[q.side_u0], &[q.side_u1], n)
}

/// Largest snapping perturbation of a vertex coordinate at resolution `n`.
pub fn snap_error<T: Real>(q: &QuadrilateralSpec<T>, n: u32) -> T {
    let nf = T::of(n as f64);
    q.polygon
        .iter()
        .flat_map(|&(x, y)| [x, y])
        .map(|v| {
            let s = v * nf;
            (s - s.round()).abs() / nf
        })
        .fold(T::zero(), T::max)
}

/// General engine: each marked side may be a union of polygon edges (the
/// conjugate quadrilateral of an L-shape needs two-edge arcs).
pub fn grid_module_arcs<T: Real>(
    polygon: &[(T, T)],
    arcs0: &[usize],
    arcs1: &[usize],
    n: u32,
) -> Result<T> {
    let m = polygon.len();
    if m < 4 {
        return Err(Error::Setup("polygon needs at least 4 vertices".into()));
    }
    let nf = T::of(n as f64);
    let xmin = polygon.iter().map(|p| p.0).fold(T::infinity(), T::min);
    let ymin = polygon.iter().map(|p| p.1).fold(T::infinity(), T::min);
    let xmax = polygon.iter().map(|p| p.0).fold(-T::infinity(), T::max);
    let ymax = polygon.iter().map(|p| p.1).fold(-T::infinity(), T::max);
    let nx = ((xmax - xmin) * nf).round().to_usize().unwrap_or(0);
    let ny = ((ymax - ymin) * nf).round().to_usize().unwrap_or(0);
    if nx == 0 || ny == 0 {
        return Err(Error::Setup("degenerate polygon extent".into()));
    }
    // snapped vertex coordinates in grid units
    let verts: Vec<(i64, i64)> = polygon
        .iter()
        .map(|&(x, y)| {
            let gx = ((x - xmin) * nf).round().to_f64().unwrap() as i64;
            let gy = ((y - ymin) * nf).round().to_f64().unwrap() as i64;
            (gx, gy)
        })
        .collect();

    // cell inclusion by center ray-cast against vertical edges
    let mut inside = vec![false; nx * ny];
    for k in 0..m {
        let a = verts[k];
        let b = verts[(k + 1) % m];
        if a.0 == b.0 {
            let (ylo, yhi) = (a.1.min(b.1), a.1.max(b.1));
            for cy in ylo.max(0)..yhi.min(ny as i64) {
                // cells with center x < edge x, i.e. cx in [0, a.0)
                for cx in 0..a.0.min(nx as i64) {
                    inside[cx as usize * ny + cy as usize] ^= true;
                }
            }
        }
    }
    let cell = |i: i64, j: i64| -> bool {
        i >= 0
            && j >= 0
            && (i as usize) < nx
            && (j as usize) < ny
            && inside[i as usize * ny + j as usize]
    };

    // conductor list over grid edges touching at least one interior cell
    let nyn = ny + 1;
    let nid = |i: usize, j: usize| i * nyn + j;
    let half = T::of(0.5);
    let mut edges: Vec<(u32, u32, T)> = Vec::new();
    for i in 0..nx {
        for j in 0..=ny {
            let c = conductance(cell(i as i64, j as i64 - 1), cell(i as i64, j as i64), half);
            if c > T::zero() {
                edges.push((nid(i, j) as u32, nid(i + 1, j) as u32, c));
            }
        }
    }
    for i in 0..=nx {
        for j in 0..ny {
            let c = conductance(cell(i as i64 - 1, j as i64), cell(i as i64, j as i64), half);
            if c > T::zero() {
                edges.push((nid(i, j) as u32, nid(i, j + 1) as u32, c));
            }
        }
    }

    // Dirichlet values on the marked arcs
    let nnode = (nx + 1) * nyn;
    let mut fixed: Vec<Option<T>> = vec![None; nnode];
    let mut mark = |edge_idx: usize, value: T| -> Result<()> {
        if edge_idx >= m {
            return Err(Error::Setup(format!("edge index {edge_idx} out of range")));
        }
        let a = verts[edge_idx];
        let b = verts[(edge_idx + 1) % m];
        if a.0 == b.0 {
            let (ylo, yhi) = (a.1.min(b.1), a.1.max(b.1));
            for j in ylo..=yhi {
                fixed[nid(a.0 as usize, j as usize)] = Some(value);
            }
        } else {
            let (xlo, xhi) = (a.0.min(b.0), a.0.max(b.0));
            for i in xlo..=xhi {
                fixed[nid(i as usize, a.1 as usize)] = Some(value);
            }
        }
        Ok(())
    };
    for &k in arcs0 {
        mark(k, T::zero())?;
    }
    for &k in arcs1 {
        mark(k, T::one())?;
    }

    // index the free nodes that the conductor graph actually touches
    let mut used = vec![false; nnode];
    for &(p, q, _) in &edges {
        used[p as usize] = true;
        used[q as usize] = true;
    }
    let mut index = vec![usize::MAX; nnode];
    let mut nfree = 0usize;
    for v in 0..nnode {
        if used[v] && fixed[v].is_none() {
            index[v] = nfree;
            nfree += 1;
        }
    }
    if nfree == 0 {
        return Err(Error::Setup("no free nodes after discretization".into()));
    }
    let dirichlet_count = (0..nnode)
        .filter(|&v| used[v] && fixed[v].is_some())
        .count();
    if dirichlet_count == 0 {
        return Err(Error::Setup(
            "marked sides empty after discretization".into(),
        ));
    }

    // matrix-free CG on the free-node Laplacian
    let mut b = vec![T::zero(); nfree];
    for &(p, q, c) in &edges {
        let (p, q) = (p as usize, q as usize);
        match (fixed[p], fixed[q]) {
            (None, Some(vq)) => b[index[p]] = b[index[p]] + c * vq,
            (Some(vp), None) => b[index[q]] = b[index[q]] + c * vp,
            _ => {}
        }
    }
    let apply = |u: &[T], out: &mut [T]| {
        for o in out.iter_mut() {
            *o = T::zero();
        }
        for &(p, q, c) in &edges {
            let (p, q) = (p as usize, q as usize);
            match (fixed[p], fixed[q]) {
                (None, None) => {
                    let (ip, iq) = (index[p], index[q]);
                    let d = c * (u[ip] - u[iq]);
                    out[ip] = out[ip] + d;
                    out[iq] = out[iq] - d;
                }
                (None, Some(_)) => {
                    let ip = index[p];
                    out[ip] = out[ip] + c * u[ip];
                }
                (Some(_), None) => {
                    let iq = index[q];
                    out[iq] = out[iq] + c * u[iq];
                }
                _ => {}
            }
        }
    };
    let dot = |a: &[T], b: &[T]| -> T {
        let mut s = T::zero();
        for (x, y) in a.iter().zip(b) {
            s = s + *x * *y;
        }
        s
    };

    let mut u = vec![T::zero(); nfree];
    let mut r = b.clone();
    let mut p = r.clone();
    let mut ap = vec![T::zero(); nfree];
    let rtol2 = T::of(1e-10) * T::of(1e-10) * dot(&b, &b).max(T::min_positive_value());
    let mut rr = dot(&r, &r);
    let max_iter = 200 * (nx + ny).max(100);
    let mut converged = rr <= rtol2;
    for _ in 0..max_iter {
        if converged {
            break;
        }
        apply(&p, &mut ap);
        let pap = dot(&p, &ap);
        if !(pap > T::zero()) {
            return Err(Error::Numerical("CG broke down".into()));
        }
        let alpha = rr / pap;
        for i in 0..nfree {
            u[i] = u[i] + alpha * p[i];
            r[i] = r[i] - alpha * ap[i];
        }
        let rr_new = dot(&r, &r);
        if rr_new <= rtol2 {
            converged = true;
            break;
        }
        let beta = rr_new / rr;
        rr = rr_new;
        for i in 0..nfree {
            p[i] = r[i] + beta * p[i];
        }
    }
    if !converged {
        return Err(Error::Numerical("CG failed to reach tolerance".into()));
    }

    // Dirichlet energy; module of the joining family is its reciprocal
    let mut energy = T::zero();
    for &(pn, qn, c) in &edges {
        let (pn, qn) = (pn as usize, qn as usize);
        let up = fixed[pn].unwrap_or_else(|| u[index[pn]]);
        let uq = fixed[qn].unwrap_or_else(|| u[index[qn]]);
        let d = up - uq;
        energy = energy + c * d * d;
    }
    if !(energy > T::zero()) {
        return Err(Error::Numerical("vanishing Dirichlet energy".into()));
    }
    Ok(T::one() / energy)
}

fn conductance<T: Real>(left: bool, right: bool, half: T) -> T {
    let mut c = T::zero();
    if left {
        c = c + half;
    }
    if right {
        c = c + half;
    }
    c
}

/// Extrapolates [`grid_module`] values over increasing resolutions in the
/// observed convergence order.
pub fn richardson<T: Real>(
    q: &QuadrilateralSpec<T>,
    n_list: &[u32],
) -> Result<RichardsonResult<T>> {
    if n_list.len() < 2 {
        return Err(Error::Domain("need at least two grid resolutions".into()));
    }
    for w in n_list.windows(2) {
        if !(w[0] < w[1]) || w[1] % w[0] != 0 {
            return Err(Error::Domain(
                "resolutions must increase by integer factors".into(),
            ));
        }
    }
    let vals: Vec<T> = n_list
        .iter()
        .map(|&n| grid_module(q, n))
        .collect::<Result<_>>()?;
    let snap = snap_error(q, *n_list.last().unwrap());
    let corner_order = T::of(4.0 / 3.0);
    let k = vals.len();
    if k == 2 {
        let ratio = T::of(n_list[1] as f64 / n_list[0] as f64);
        let value = vals[1] + (vals[1] - vals[0]) / (ratio.powf(corner_order) - T::one());
        return Ok(RichardsonResult {
            value,
            error_estimate: (vals[1] - vals[0]).abs() + snap,
            order: corner_order,
            warning: false,
        });
    }
    let (m1, m2, m3) = (vals[k - 3], vals[k - 2], vals[k - 1]);
    let d1 = m2 - m1;
    let d2 = m3 - m2;
    if d1.abs() <= T::of(1e-9) * m3.abs() && d2.abs() <= T::of(1e-9) * m3.abs() {
        // already converged to solver tolerance; nothing to extrapolate
        return Ok(RichardsonResult {
            value: m3,
            error_estimate: d2.abs() + snap,
            order: corner_order,
            warning: false,
        });
    }
    if !(d1 * d2 > T::zero()) {
        // not monotone; extrapolation order cannot be estimated
        return Ok(RichardsonResult {
            value: m3,
            error_estimate: d2.abs() + snap,
            order: T::zero(),
            warning: true,
        });
    }
    let ratio = T::of(n_list[k - 1] as f64 / n_list[k - 2] as f64);
    let order = (d1 / d2).abs().ln() / ratio.ln();
    let gain = ratio.powf(order) - T::one();
    let e23 = m3 + d2 / gain;
    let e12 = m2 + d1 / gain;
    Ok(RichardsonResult {
        value: e23,
        error_estimate: (e23 - e12).abs() + snap,
        order,
        warning: false,
    })
}
