//! Lines in `P^3` given by four linear forms on `P^1`, and their coamoebae in
//! `U P^3`.
//!
//! A line is stored in normal form: the root of the first form is moved to
//! infinity, so the parametrization reads `x -> (x - z1, x - z2, x - z3)` up
//! to a constant phase per coordinate. Points of `U P^3` are written in the
//! chart that drops the 0th homogeneous angle.

mod arcs;
mod limits;
mod membrane;

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::coamoeba::{in_reduced_triangle, reduced_triangle, wrap, LineT2, TorusPoint};
use crate::error::{Error, Result};

pub use arcs::{arc_image, coamoeba_segments, ArcSource, CoamoebaSegment};
pub use limits::{lines_intersect, phase_limit_lines, PhaseLimitLine};
pub use membrane::{
    contour_image, differential_rank, sample_membrane, sample_root_circle, ContourImage,
    ContourPiece, HalfPlane, MembraneOptions, PieceKind,
};

/// Relative tolerance for two roots to count as equal.
pub const ROOT_EQUALITY_TOL: f64 = 1e-10;
/// Tolerance on the normalized imaginary part of the cross ratio.
pub const COCIRCULAR_TOL: f64 = 1e-10;
/// Inputs whose cocircularity defect is below this (but above
/// [`COCIRCULAR_TOL`]) are flagged as nearly cocircular.
pub const NEAR_COCIRCULAR_TOL: f64 = 1e-6;

/// A point of `P^1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RootP1 {
    Finite(Complex64),
    Infinity,
}

impl RootP1 {
    pub fn finite(&self) -> Option<Complex64> {
        match self {
            RootP1::Finite(z) => Some(*z),
            RootP1::Infinity => None,
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RootP1::Infinity)
    }

    /// Homogeneous coordinates `(s, t)` with `x = s / t`.
    pub(crate) fn homogeneous(&self) -> [Complex64; 2] {
        match self {
            RootP1::Finite(z) => [*z, Complex64::new(1.0, 0.0)],
            RootP1::Infinity => [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        }
    }

    /// Equality up to [`ROOT_EQUALITY_TOL`] in the chordal sense.
    pub fn approx_eq(&self, other: &RootP1) -> bool {
        let (p, q) = (self.homogeneous(), other.homogeneous());
        let det = p[0] * q[1] - p[1] * q[0];
        let np = (p[0].norm_sqr() + p[1].norm_sqr()).sqrt();
        let nq = (q[0].norm_sqr() + q[1].norm_sqr()).sqrt();
        det.norm() <= ROOT_EQUALITY_TOL * np * nq
    }
}

impl fmt::Display for RootP1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootP1::Infinity => write!(f, "inf"),
            RootP1::Finite(z) if z.im == 0.0 => write!(f, "{}", z.re),
            RootP1::Finite(z) if z.im < 0.0 => write!(f, "{}-{}i", z.re, -z.im),
            RootP1::Finite(z) => write!(f, "{}+{}i", z.re, z.im),
        }
    }
}

impl Serialize for RootP1 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Combinatorial type of a line, by its roots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LineKind {
    TwoDistinctRoots,
    ThreeDistinctRoots,
    RealLine,
    Generic,
}

impl LineKind {
    pub fn as_str(self) -> &'static str {
        match self {
            LineKind::TwoDistinctRoots => "two-distinct-roots",
            LineKind::ThreeDistinctRoots => "three-distinct-roots",
            LineKind::RealLine => "real-line",
            LineKind::Generic => "generic",
        }
    }
}

impl fmt::Display for LineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub kind: LineKind,
    pub distinct_roots: usize,
    /// Set for generic lines that are cocircular up to
    /// [`NEAR_COCIRCULAR_TOL`].
    pub near_cocircular: bool,
}

/// A line in `P^3` not contained in a coordinate plane, in normal form.
#[derive(Clone, Debug, PartialEq)]
pub struct LineInP3 {
    roots: [RootP1; 4],
    phase_shift: [f64; 3],
    original_roots: [RootP1; 4],
}

impl LineInP3 {
    /// `from_linear_forms`: rows `(a_i, b_i)` define `l_i = a_i s + b_i t`,
    /// with root `z_i = -b_i / a_i` in the coordinate `x = s / t`.
    pub fn from_linear_forms(forms: [[Complex64; 2]; 4]) -> Result<Self> {
        for (i, [a, b]) in forms.iter().enumerate() {
            let finite =
                a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite();
            if !finite {
                return Err(Error::InvalidArgument(format!(
                    "form {i} has non-finite entries"
                )));
            }
            if a.norm() == 0.0 && b.norm() == 0.0 {
                return Err(Error::InvalidArgument(format!("form {i} is zero")));
            }
        }
        let raw: Vec<RootP1> = forms
            .iter()
            .map(|[a, b]| {
                if a.norm() == 0.0 {
                    RootP1::Infinity
                } else {
                    RootP1::Finite(-b / a)
                }
            })
            .collect();
        // snap near-equal roots to their first occurrence
        let mut rep = [0usize, 1, 2, 3];
        for i in 1..4 {
            if let Some(j) = (0..i).find(|&j| rep[j] == j && raw[i].approx_eq(&raw[j])) {
                rep[i] = j;
            }
        }
        if rep.iter().all(|&r| r == 0) {
            return Err(Error::Degenerate(
                "all four forms vanish at the same point".into(),
            ));
        }
        let original_roots = [raw[rep[0]], raw[rep[1]], raw[rep[2]], raw[rep[3]]];

        // reparametrize so that the root of the first form is at infinity:
        // s = z0 s' + t', t = s' turns (a, b) into (a z0 + b, a)
        let mut rows = forms;
        if let RootP1::Finite(z0) = raw[0] {
            for row in rows.iter_mut() {
                let [a, b] = *row;
                *row = [a * z0 + b, a];
            }
        }
        for i in 0..4 {
            if rep[i] == 0 {
                rows[i][0] = Complex64::new(0.0, 0.0);
            }
        }
        let b0 = rows[0][1];
        let mut roots = [RootP1::Infinity; 4];
        let mut phase_shift = [0.0; 3];
        for i in 1..4 {
            let [a, b] = rows[i];
            if a.norm() == 0.0 {
                roots[i] = RootP1::Infinity;
                phase_shift[i - 1] = wrap((b / b0).arg());
            } else {
                roots[i] = RootP1::Finite(-b / a);
                phase_shift[i - 1] = wrap((a / b0).arg());
            }
        }
        for i in 1..4 {
            if rep[i] != i {
                roots[i] = roots[rep[i]];
            }
        }
        Ok(LineInP3 {
            roots,
            phase_shift,
            original_roots,
        })
    }

    /// The line whose forms are `t` for a root at infinity and `s - z t` for
    /// a finite root `z`.
    pub fn from_roots(roots: [RootP1; 4]) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let forms = roots.map(|r| match r {
            RootP1::Infinity => [zero, one],
            RootP1::Finite(z) => [one, -z],
        });
        Self::from_linear_forms(forms)
    }

    /// Roots of the normal form; `roots()[0]` is always infinity.
    pub fn roots(&self) -> &[RootP1; 4] {
        &self.roots
    }

    /// Roots as given, before normalization (near-equal roots snapped).
    pub fn original_roots(&self) -> &[RootP1; 4] {
        &self.original_roots
    }

    /// Constant phases added to the three chart coordinates of the normal
    /// form.
    pub fn phase_shift(&self) -> [f64; 3] {
        self.phase_shift
    }

    /// Number of distinct roots.
    pub fn distinct_roots(&self) -> usize {
        let mut seen: Vec<RootP1> = Vec::new();
        for r in &self.roots {
            if !seen.contains(r) {
                seen.push(*r);
            }
        }
        seen.len()
    }

    /// The finite roots `z1, z2, z3` of the normal form, if all are finite.
    pub fn finite_roots(&self) -> Option<[Complex64; 3]> {
        Some([
            self.roots[1].finite()?,
            self.roots[2].finite()?,
            self.roots[3].finite()?,
        ])
    }

    /// Four distinct roots, or an error naming the repetition.
    pub(crate) fn distinct_finite_roots(&self) -> Result<[Complex64; 3]> {
        if self.distinct_roots() < 4 {
            return Err(Error::RepeatedRoots(format!(
                "{}, {}, {}, {}",
                self.original_roots[0],
                self.original_roots[1],
                self.original_roots[2],
                self.original_roots[3]
            )));
        }
        Ok(self
            .finite_roots()
            .expect("distinct roots with z0 at infinity are finite"))
    }

    pub fn classify(&self) -> Classification {
        let distinct = self.distinct_roots();
        let (kind, near) = match distinct {
            2 => (LineKind::TwoDistinctRoots, false),
            3 => (LineKind::ThreeDistinctRoots, false),
            _ => {
                let defect = cocircularity_defect(&self.roots);
                if defect <= COCIRCULAR_TOL {
                    (LineKind::RealLine, false)
                } else {
                    (LineKind::Generic, defect <= NEAR_COCIRCULAR_TOL)
                }
            }
        };
        Classification {
            kind,
            distinct_roots: distinct,
            near_cocircular: near,
        }
    }

    pub fn is_real(&self) -> bool {
        self.classify().kind == LineKind::RealLine
    }

    /// The chart point `arg(phi(x)) + phase_shift` for the parameter `x` of
    /// the normal form.
    pub fn arg_at(&self, x: Complex64) -> Result<[f64; 3]> {
        let mut out = [0.0; 3];
        for k in 0..3 {
            let v = match self.roots[k + 1] {
                RootP1::Infinity => Complex64::new(1.0, 0.0),
                RootP1::Finite(z) => x - z,
            };
            if v.norm() == 0.0 {
                return Err(Error::AtRoot(format!("{x}")));
            }
            out[k] = wrap(v.arg() + self.phase_shift[k]);
        }
        Ok(out)
    }

    /// An equivalent line with real roots: the affine substitution
    /// `x = p x' + q` puts `z1, z2, z3` on the real axis and moves `arg p`
    /// into the phase shift. Fails unless the roots are cocircular.
    pub fn realified(&self) -> Result<LineInP3> {
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        let z = self
            .finite_roots()
            .expect("real lines have finite normal roots");
        let (i, j) = (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .max_by(|a, b| {
                (z[a.0] - z[a.1])
                    .norm()
                    .total_cmp(&(z[b.0] - z[b.1]).norm())
            })
            .unwrap();
        let mut p = (z[j] - z[i]) / (z[j] - z[i]).norm();
        if p.re < 0.0 || (p.re == 0.0 && p.im < 0.0) {
            p = -p;
        }
        let q = z[i] - p * (z[i] * p.conj()).re;
        let mut roots = self.roots;
        let mut phase_shift = self.phase_shift;
        for k in 0..3 {
            let r = ((z[k] - q) / p).re;
            roots[k + 1] = RootP1::Finite(Complex64::new(r, 0.0));
            phase_shift[k] = wrap(phase_shift[k] + p.arg());
        }
        Ok(LineInP3 {
            roots,
            phase_shift,
            original_roots: self.original_roots,
        })
    }

    /// Forms of the normal form as `(coefficient of x, constant)`, with the
    /// phase shift folded in.
    fn normal_forms(&self) -> [[Complex64; 2]; 4] {
        let mut f = [[Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]; 4];
        for k in 1..4 {
            let u = Complex64::from_polar(1.0, self.phase_shift[k - 1]);
            f[k] = match self.roots[k] {
                RootP1::Infinity => [Complex64::new(0.0, 0.0), u],
                RootP1::Finite(z) => [u, -u * z],
            };
        }
        f
    }

    /// The line in `(C*)^2` obtained by forgetting homogeneous coordinate
    /// `drop`, in the chart of [`project_chart`].
    pub fn projection(&self, drop: usize) -> Result<LineT2> {
        if drop > 3 {
            return Err(Error::InvalidArgument(format!(
                "coordinate {drop} out of range 0..4"
            )));
        }
        let f = self.normal_forms();
        let keep: Vec<usize> = (0..4).filter(|&k| k != drop).collect();
        let det = |p: [Complex64; 2], q: [Complex64; 2]| p[0] * q[1] - p[1] * q[0];
        let (u, v, w) = (f[keep[0]], f[keep[1]], f[keep[2]]);
        // det(v, w) u - det(u, w) v + det(u, v) w = 0
        LineT2::new(-det(u, w), det(u, v), det(v, w))
            .map_err(|_| Error::RepeatedRoots(format!("projection forgetting coordinate {drop}")))
    }

    /// Images of the four real intervals of a real line, left to right in
    /// the realified parameter.
    pub fn quadrilateral(&self) -> Result<[[f64; 3]; 4]> {
        let work = self.realified()?;
        let mut r: Vec<f64> = work.roots()[1..]
            .iter()
            .map(|z| z.finite().unwrap().re)
            .collect();
        r.sort_by(f64::total_cmp);
        let probes = [
            r[0] - 1.0,
            (r[0] + r[1]) / 2.0,
            (r[1] + r[2]) / 2.0,
            r[2] + 1.0,
        ];
        let mut out = [[0.0; 3]; 4];
        for (k, x) in probes.into_iter().enumerate() {
            out[k] = work.arg_at(Complex64::new(x, 0.0))?;
        }
        Ok(out)
    }

    /// Whether a chart point satisfies the four triangle-projection
    /// constraints of the quadrilateral of a real line: forgetting each
    /// homogeneous coordinate, it must lie in the closed triangle that
    /// contains the image of the upper half plane.
    pub fn in_quadrilateral_hull(&self, p: &[f64; 3], tol: f64) -> Result<bool> {
        Ok(self.hull_constraints(tol)?.iter().all(|c| c.holds(p, tol)))
    }

    pub(crate) fn hull_constraints(&self, tol: f64) -> Result<[HullConstraint; 4]> {
        let work = self.realified()?;
        let r: Vec<f64> = work.roots()[1..]
            .iter()
            .map(|z| z.finite().unwrap().re)
            .collect();
        let probe = Complex64::new(r.iter().sum::<f64>() / 3.0, 1.0);
        let reference = work.arg_at(probe)?;
        let mut out = Vec::with_capacity(4);
        for drop in 0..4 {
            let line = self.projection(drop)?;
            let q = line.reduce(&project_chart(&reference, drop));
            let triangle =
                reduced_triangle(q.angles()[0], q.angles()[1], tol).ok_or_else(|| {
                    Error::Degenerate("reference point on the triangle boundary".into())
                })?;
            out.push(HullConstraint {
                drop,
                line,
                triangle,
            });
        }
        Ok([out[0], out[1], out[2], out[3]])
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct HullConstraint {
    drop: usize,
    line: LineT2,
    triangle: u8,
}

impl HullConstraint {
    fn holds(&self, p: &[f64; 3], tol: f64) -> bool {
        let q = self.line.reduce(&project_chart(p, self.drop));
        in_reduced_triangle(self.triangle, q.angles()[0], q.angles()[1], tol)
    }
}

/// The chart point of `U P^2` obtained from a chart point of `U P^3` by
/// forgetting homogeneous coordinate `drop`.
pub fn project_chart(p: &[f64; 3], drop: usize) -> TorusPoint {
    let h = [0.0, p[0], p[1], p[2]];
    let keep: Vec<usize> = (0..4).filter(|&k| k != drop).collect();
    TorusPoint::new(vec![h[keep[1]] - h[keep[0]], h[keep[2]] - h[keep[0]]])
}

/// `is_cocircular(roots)` for four distinct points of `P^1`.
pub fn is_cocircular(roots: &[RootP1; 4]) -> Result<bool> {
    for i in 0..4 {
        for j in 0..i {
            if roots[i].approx_eq(&roots[j]) {
                return Err(Error::RepeatedRoots(format!(
                    "{} and {}",
                    roots[j], roots[i]
                )));
            }
        }
    }
    Ok(cocircularity_defect(roots) <= COCIRCULAR_TOL)
}

/// Normalized distance from cocircularity: `|Im CR| / |CR|` for the cross
/// ratio, or `|sin|` of the angle at one point when a root is infinite.
fn cocircularity_defect(roots: &[RootP1; 4]) -> f64 {
    let finite: Vec<Complex64> = roots.iter().filter_map(|r| r.finite()).collect();
    match finite.len() {
        4 => {
            let [z1, z2, z3, z4] = [finite[0], finite[1], finite[2], finite[3]];
            let cr = (z1 - z3) * (z2 - z4) / ((z1 - z4) * (z2 - z3));
            cr.im.abs() / cr.norm()
        }
        3 => {
            let (u, v) = (finite[1] - finite[0], finite[2] - finite[0]);
            (u * v.conj()).im.abs() / (u.norm() * v.norm())
        }
        // two or more roots at infinity: always on a common circle
        _ => 0.0,
    }
}
