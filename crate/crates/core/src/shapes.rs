//! Geometry of the two target polygons and small rectilinear-polygon
//! utilities shared by the map and oracle layers.

use num_complex::Complex;

use crate::oracle::QuadrilateralSpec;
use crate::real::Real;

/// Vertices of `P_H` in the order `A, B, C, E, F, L`:
/// `i, 3i, 2H+3i, 2H, H, H+i`.
pub fn pentomino_polygon<T: Real>(h: T) -> Vec<Complex<T>> {
    let two_h = h + h;
    vec![
        Complex::new(T::zero(), T::one()),
        Complex::new(T::zero(), T::of(3.0)),
        Complex::new(two_h, T::of(3.0)),
        Complex::new(two_h, T::zero()),
        Complex::new(h, T::zero()),
        Complex::new(h, T::one()),
    ]
}

/// Vertices of `R_H` in the order `A, B, C, E, F, L`:
/// `2i, 3i, 2H+3i, 2H, H, H+2i`.
pub fn tetromino_polygon<T: Real>(h: T) -> Vec<Complex<T>> {
    let two_h = h + h;
    vec![
        Complex::new(T::zero(), T::of(2.0)),
        Complex::new(T::zero(), T::of(3.0)),
        Complex::new(two_h, T::of(3.0)),
        Complex::new(two_h, T::zero()),
        Complex::new(h, T::zero()),
        Complex::new(h, T::of(2.0)),
    ]
}

/// Side lengths of `P_H` in the order `AB, BC, CE, EF, FL, LA`.
pub fn pentomino_side_lengths<T: Real>(h: T) -> [T; 6] {
    [T::of(2.0), h + h, T::of(3.0), h, T::one(), h]
}

/// Side lengths of `R_H` in the order `AB, BC, CE, EF, FL, LA`.
pub fn tetromino_side_lengths<T: Real>(h: T) -> [T; 6] {
    [T::one(), h + h, T::of(3.0), h, T::of(2.0), h]
}

/// The quadrilateral `P_H` marked at sides `AB` and `EF`.
pub fn pentomino_quadrilateral<T: Real>(h: T) -> QuadrilateralSpec<T> {
    QuadrilateralSpec {
        polygon: pentomino_polygon(h).iter().map(|v| (v.re, v.im)).collect(),
        side_u0: 0,
        side_u1: 3,
    }
}

/// The quadrilateral `R_H` marked at sides `AB` and `EF`.
pub fn tetromino_quadrilateral<T: Real>(h: T) -> QuadrilateralSpec<T> {
    QuadrilateralSpec {
        polygon: tetromino_polygon(h).iter().map(|v| (v.re, v.im)).collect(),
        side_u0: 0,
        side_u1: 3,
    }
}

/// Position of a point relative to a closed rectilinear polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Containment {
    Inside,
    Boundary,
    Outside,
}

/// Even-odd containment test for an axis-parallel polygon, with an explicit
/// boundary band of width `tol`.
pub fn locate_in_rectilinear<T: Real>(
    polygon: &[Complex<T>],
    p: Complex<T>,
    tol: T,
) -> Containment {
    let n = polygon.len();
    let mut inside = false;
    for k in 0..n {
        let a = polygon[k];
        let b = polygon[(k + 1) % n];
        if a.re == b.re {
            // vertical edge
            let (ylo, yhi) = (a.im.min(b.im), a.im.max(b.im));
            if (p.re - a.re).abs() <= tol && p.im >= ylo - tol && p.im <= yhi + tol {
                return Containment::Boundary;
            }
            if p.im > ylo && p.im <= yhi && p.re < a.re {
                inside = !inside;
            }
        } else {
            // horizontal edge
            let (xlo, xhi) = (a.re.min(b.re), a.re.max(b.re));
            if (p.im - a.im).abs() <= tol && p.re >= xlo - tol && p.re <= xhi + tol {
                return Containment::Boundary;
            }
        }
    }
    if inside {
        Containment::Inside
    } else {
        Containment::Outside
    }
}
