//! Closed-form coamoeba of a line `ax + by + c = 0` in `(C*)^2`.
//!
//! For `x + y + 1` the coamoeba is the union of the two open triangles
//! `{|alpha - beta| > pi}` of the square `(-pi, pi]^2` together with the
//! three points `(pi, 0)`, `(pi, pi)`, `(0, pi)`. Its closure adds the three
//! lines `alpha = pi`, `beta = pi` and `alpha - beta = pi`. A general line is
//! reduced to this one by rescaling `x` and `y`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{circle_distance, wrap, TorusPoint};
use crate::error::{Error, Result};

/// Snapping tolerance used by [`line2_membership`].
pub const DEFAULT_MEMBERSHIP_TOL: f64 = 1e-12;

/// The line `ax + by + c = 0` with nonzero coefficients.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineT2 {
    a: Complex64,
    b: Complex64,
    c: Complex64,
}

impl LineT2 {
    pub fn new(a: Complex64, b: Complex64, c: Complex64) -> Result<Self> {
        for z in [a, b, c] {
            if z.norm() == 0.0 || !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::InvalidArgument(
                    "line coefficients must be finite and nonzero".into(),
                ));
            }
        }
        Ok(LineT2 { a, b, c })
    }

    pub fn coefficients(&self) -> [Complex64; 3] {
        [self.a, self.b, self.c]
    }

    /// `(arg(a/c), arg(b/c))`: adding it to a point of this line's coamoeba
    /// gives a point of the coamoeba of `x + y + 1`.
    pub fn rotation(&self) -> [f64; 2] {
        [(self.a / self.c).arg(), (self.b / self.c).arg()]
    }

    /// Image of a point of this coamoeba in the frame of `x + y + 1`.
    pub fn reduce(&self, p: &TorusPoint) -> TorusPoint {
        p.translate(&self.rotation())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Membership {
    Interior,
    Vertex,
    ClosureBoundary,
    Outside,
}

impl Membership {
    pub fn as_str(self) -> &'static str {
        match self {
            Membership::Interior => "interior",
            Membership::Vertex => "vertex",
            Membership::ClosureBoundary => "closure-boundary",
            Membership::Outside => "outside",
        }
    }

    /// Whether the point belongs to the coamoeba itself.
    pub fn in_coamoeba(self) -> bool {
        matches!(self, Membership::Interior | Membership::Vertex)
    }
}

impl std::fmt::Display for Membership {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `line2_membership(line, p)` with the default tolerance.
pub fn line2_membership(line: &LineT2, p: &TorusPoint) -> Result<Membership> {
    line2_membership_tol(line, p, DEFAULT_MEMBERSHIP_TOL)
}

/// Membership with an explicit snapping tolerance for vertices and the
/// closure boundary.
pub fn line2_membership_tol(line: &LineT2, p: &TorusPoint, tol: f64) -> Result<Membership> {
    if p.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: p.rank(),
        });
    }
    if !(tol >= 0.0) {
        return Err(Error::InvalidArgument(
            "tolerance must be nonnegative".into(),
        ));
    }
    let q = line.reduce(p);
    Ok(classify_reduced(q.angles()[0], q.angles()[1], tol))
}

/// Classification in the frame of `x + y + 1`.
pub fn classify_reduced(alpha: f64, beta: f64, tol: f64) -> Membership {
    let (alpha, beta) = (wrap(alpha), wrap(beta));
    let near = |a: f64, b: f64| circle_distance(alpha, a) <= tol && circle_distance(beta, b) <= tol;
    if near(PI, 0.0) || near(PI, PI) || near(0.0, PI) {
        return Membership::Vertex;
    }
    if circle_distance(alpha, PI) <= tol
        || circle_distance(beta, PI) <= tol
        || circle_distance(alpha - beta, PI) <= tol
    {
        return Membership::ClosureBoundary;
    }
    if (alpha - beta).abs() > PI {
        Membership::Interior
    } else {
        Membership::Outside
    }
}

/// Which closed triangle of the `x + y + 1` coamoeba contains `(alpha,
/// beta)`: `Some(1)` for `{alpha - beta >= pi}` (with `beta` represented in
/// `[-pi, pi)`), `Some(2)` for `{beta - alpha >= pi}` (with `alpha` in
/// `[-pi, pi)`), `None` if neither. Shared vertices report 1.
pub fn reduced_triangle(alpha: f64, beta: f64, tol: f64) -> Option<u8> {
    [1, 2]
        .into_iter()
        .find(|&k| in_reduced_triangle(k, alpha, beta, tol))
}

/// Membership in closed triangle `which` (1 or 2) of [`reduced_triangle`].
pub fn in_reduced_triangle(which: u8, alpha: f64, beta: f64, tol: f64) -> bool {
    let half_open = |t: f64| {
        let w = wrap(t);
        if w >= PI - tol {
            w - 2.0 * PI
        } else {
            w
        }
    };
    let (a, b) = (wrap(alpha), wrap(beta));
    match which {
        1 => a - half_open(b) >= PI - tol && a >= -tol,
        2 => b - half_open(a) >= PI - tol && b >= -tol,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn xy1() -> LineT2 {
        LineT2::new(one(), one(), one()).unwrap()
    }

    fn m(alpha: f64, beta: f64) -> Membership {
        line2_membership(&xy1(), &TorusPoint::new(vec![alpha, beta])).unwrap()
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn examples() {
        assert_eq!(m(PI, 0.0), Membership::Vertex);
        assert_eq!(m(PI, PI), Membership::Vertex);
        assert_eq!(m(-PI, PI), Membership::Vertex);
        assert_eq!(m(0.0, PI), Membership::Vertex);
        assert_eq!(m(0.0, 0.0), Membership::Outside);
        assert_eq!(m(3.0 * PI / 4.0, -PI / 2.0), Membership::Interior);
        assert_eq!(m(-3.0 * PI / 4.0, PI / 2.0), Membership::Interior);
        assert_eq!(m(PI, 1.0), Membership::ClosureBoundary);
        assert_eq!(m(1.0, 1.0 - PI), Membership::ClosureBoundary);
        assert_eq!(m(3.1415926, 0.0), Membership::Outside);
        let loose = line2_membership_tol(&xy1(), &TorusPoint::new(vec![3.1415926, 0.0]), 1e-6);
        assert_eq!(loose.unwrap(), Membership::Vertex);
    }

    #[test]
    fn rotation_moves_points_into_the_reduced_frame() {
        // -x + y + 1: x -> -x flips alpha by pi
        let l = LineT2::new(-one(), one(), one()).unwrap();
        let p = TorusPoint::new(vec![3.0 * PI / 4.0 - PI, -PI / 2.0]);
        assert_eq!(line2_membership(&l, &p).unwrap(), Membership::Interior);
        assert!(LineT2::new(one(), Complex64::new(0.0, 0.0), one()).is_err());
    }

    #[test]
    fn triangles() {
        assert_eq!(reduced_triangle(3.0 * PI / 4.0, -PI / 2.0, 1e-12), Some(1));
        assert_eq!(reduced_triangle(-3.0 * PI / 4.0, PI / 2.0, 1e-12), Some(2));
        assert_eq!(reduced_triangle(PI, PI, 1e-12), Some(1));
        assert_eq!(reduced_triangle(0.0, PI, 1e-12), Some(1));
        assert_eq!(reduced_triangle(0.5, 0.5, 1e-12), None);
    }
}
