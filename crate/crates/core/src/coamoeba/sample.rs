//! Coamoeba sampling for plane curves `f(x, y) = 0`.
//!
//! The first coordinate runs over a log-polar grid; for each grid value the
//! curve equation is solved for the second coordinate. Besides the global
//! shells centred at the origin, refinement shells surround the nonzero roots
//! of the lowest and highest coefficients `a_k(x)` of `f = sum_k a_k(x) y^k`.
//! Near those points a solution `y` tends to `0` or `infinity` and its
//! argument turns fastest.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::roots::solve_univariate;
use super::{PointCloud, TAU};
use crate::error::{Error, Result};
use crate::laurent::LaurentPolynomial;

/// Grid parameters for [`sample_plane_curve`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurveScheme {
    /// Radius range of the global shells, which are log-uniform.
    pub r_min: f64,
    pub r_max: f64,
    pub shells: usize,
    /// Angles per shell, uniform with a half-step offset.
    pub angles: usize,
    /// Total number of refinement shells, divided among the centres.
    pub refinement_shells: usize,
    /// Refinement radii relative to the modulus of the centre.
    pub refinement_min: f64,
    pub refinement_max: f64,
}

impl Default for CurveScheme {
    fn default() -> Self {
        CurveScheme {
            r_min: 1e-3,
            r_max: 1e3,
            shells: 48,
            angles: 256,
            refinement_shells: 48,
            refinement_min: 1e-4,
            refinement_max: 1.0,
        }
    }
}

impl CurveScheme {
    /// A grid with about `points` values of the first coordinate, split
    /// evenly between global and refinement shells.
    pub fn with_budget(points: usize) -> Self {
        let angles = ((points as f64).sqrt().ceil() as usize).max(4);
        let total = points.div_ceil(angles).max(2);
        CurveScheme {
            shells: total / 2,
            angles,
            refinement_shells: total - total / 2,
            ..CurveScheme::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.r_min > 0.0
            && self.r_max >= self.r_min
            && self.r_max.is_finite()
            && self.shells >= 1
            && self.angles >= 1
            && self.refinement_min > 0.0
            && self.refinement_max >= self.refinement_min;
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "invalid sampling scheme {self:?}"
            )))
        }
    }
}

/// Output of [`sample_plane_curve`].
#[derive(Clone, Debug)]
pub struct CurveSample {
    /// Arguments `(arg x, arg y)` of the solution points.
    pub cloud: PointCloud,
    /// `(log|x|, log|y|)` for the same points, row-major.
    pub amoeba: Vec<f64>,
    /// Grid values skipped because the equation in `y` dropped degree or the
    /// root finder failed.
    pub skipped: usize,
}

impl CurveSample {
    /// Moduli `(|x|, |y|)` of the k-th point.
    pub fn moduli(&self, k: usize) -> (f64, f64) {
        (self.amoeba[2 * k].exp(), self.amoeba[2 * k + 1].exp())
    }
}

/// Largest univariate degree handed to the root finder.
pub const MAX_UNIVARIATE_DEGREE: usize = 1024;
const MAX_DEGREE: i64 = MAX_UNIVARIATE_DEGREE as i64;

struct Shell {
    center: Complex64,
    radius: f64,
}

/// `sample_plane_curve(f, scheme)`.
pub fn sample_plane_curve(f: &LaurentPolynomial, scheme: &CurveScheme) -> Result<CurveSample> {
    if f.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: f.rank(),
        });
    }
    scheme.validate()?;
    let columns = y_columns(f)?;
    if columns.len() < 2 {
        return Err(Error::Degenerate(
            "f has no dependence on the second variable beyond a monomial factor".into(),
        ));
    }
    let centers = refinement_centers(&columns)?;
    let mut shells: Vec<Shell> = (0..scheme.shells)
        .map(|s| Shell {
            center: Complex64::new(0.0, 0.0),
            radius: log_uniform(scheme.r_min, scheme.r_max, s, scheme.shells),
        })
        .collect();
    if !centers.is_empty() {
        let per = (scheme.refinement_shells / centers.len()).max(1);
        for c in &centers {
            for s in 0..per {
                shells.push(Shell {
                    center: *c,
                    radius: c.norm()
                        * log_uniform(scheme.refinement_min, scheme.refinement_max, s, per),
                });
            }
        }
    }

    let angles: Vec<Complex64> = (0..scheme.angles)
        .map(|a| Complex64::from_polar(1.0, -PI + TAU * (a as f64 + 0.5) / scheme.angles as f64))
        .collect();
    let chunks: Vec<(Vec<f64>, Vec<f64>, usize)> = shells
        .par_iter()
        .map(|shell| {
            let mut args = Vec::new();
            let mut logs = Vec::new();
            let mut skipped = 0;
            let mut coeffs = vec![Complex64::new(0.0, 0.0); columns.len()];
            for u in &angles {
                let x = shell.center + shell.radius * u;
                if x.norm() == 0.0 {
                    skipped += 1;
                    continue;
                }
                for (c, col) in coeffs.iter_mut().zip(&columns) {
                    *c = col.iter().map(|&(a, e)| a * x.powi(e)).sum();
                }
                let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
                let lead = coeffs.last().unwrap().norm();
                if !(lead > 1e-12 * max) || !max.is_finite() {
                    skipped += 1;
                    continue;
                }
                match solve_univariate(&coeffs) {
                    Ok(roots) => {
                        for y in roots.into_iter().filter(|y| y.norm() != 0.0) {
                            args.extend([x.arg(), y.arg()]);
                            logs.extend([x.norm().ln(), y.norm().ln()]);
                        }
                    }
                    Err(_) => skipped += 1,
                }
            }
            (args, logs, skipped)
        })
        .collect();

    let mut data = Vec::new();
    let mut amoeba = Vec::new();
    let mut skipped = 0;
    for (a, l, s) in chunks {
        data.extend(a);
        amoeba.extend(l);
        skipped += s;
    }
    let provenance = format!(
        "sample_plane_curve shells={} r=[{:e},{:e}] angles={} refinement_shells={} centers={} skipped={}",
        scheme.shells,
        scheme.r_min,
        scheme.r_max,
        scheme.angles,
        scheme.refinement_shells,
        centers.len(),
        skipped
    );
    Ok(CurveSample {
        cloud: PointCloud::from_flat(2, data, provenance)?,
        amoeba,
        skipped,
    })
}

fn log_uniform(lo: f64, hi: f64, k: usize, count: usize) -> f64 {
    if count <= 1 {
        return (lo * hi).sqrt();
    }
    lo * (hi / lo).powf(k as f64 / (count - 1) as f64)
}

/// Terms of `f` grouped by the exponent of `y`, as `(coefficient, x exponent)`
/// lists, one per exponent from the lowest to the highest. Missing exponents
/// give empty columns.
fn y_columns(f: &LaurentPolynomial) -> Result<Vec<Vec<(Complex64, i32)>>> {
    let ky: Vec<i64> = f
        .terms()
        .iter()
        .map(|t| t.exponent().entries()[1])
        .collect();
    let (Some(&lo), Some(&hi)) = (ky.iter().min(), ky.iter().max()) else {
        return Ok(Vec::new());
    };
    let width = hi.checked_sub(lo).ok_or(Error::Overflow)?;
    let xs = f.terms().iter().map(|t| t.exponent().entries()[0]);
    let x_width = xs
        .clone()
        .max()
        .unwrap()
        .checked_sub(xs.min().unwrap())
        .ok_or(Error::Overflow)?;
    if width > MAX_DEGREE || x_width > MAX_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "degree exceeds the sampler limit of {MAX_DEGREE}"
        )));
    }
    let mut cols = vec![Vec::new(); width as usize + 1];
    for t in f.terms() {
        let e = t.exponent().entries();
        let ex = i32::try_from(e[0]).map_err(|_| Error::Overflow)?;
        cols[(e[1] - lo) as usize].push((t.coefficient(), ex));
    }
    Ok(cols)
}

/// Nonzero roots of the extreme coefficient polynomials in `x`.
fn refinement_centers(columns: &[Vec<(Complex64, i32)>]) -> Result<Vec<Complex64>> {
    let mut centers: Vec<Complex64> = Vec::new();
    for col in [columns.first().unwrap(), columns.last().unwrap()] {
        let lo = col.iter().map(|t| t.1).min().unwrap_or(0);
        let hi = col.iter().map(|t| t.1).max().unwrap_or(0);
        if hi == lo {
            continue;
        }
        let mut c = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for &(a, e) in col {
            c[(e - lo) as usize] += a;
        }
        for r in solve_univariate(&c)? {
            let fresh = centers
                .iter()
                .all(|z| (z - r).norm() > 1e-9 * r.norm().max(1.0));
            if r.norm() > 0.0 && fresh {
                centers.push(r);
            }
        }
    }
    Ok(centers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coamoeba::circle_distance;
    use crate::laurent::parse;

    fn small() -> CurveScheme {
        CurveScheme {
            shells: 12,
            angles: 32,
            refinement_shells: 8,
            ..CurveScheme::default()
        }
    }

    #[test]
    fn diagonal_and_antidiagonal() {
        let f = parse("x-y", &["x", "y"]).unwrap();
        let s = sample_plane_curve(&f, &small()).unwrap();
        assert!(!s.cloud.is_empty());
        assert!(s.cloud.iter().all(|p| circle_distance(p[0], p[1]) < 1e-12));
        let g = parse("x*y-1", &["x", "y"]).unwrap();
        let s = sample_plane_curve(&g, &small()).unwrap();
        assert!(s.cloud.iter().all(|p| circle_distance(p[0], -p[1]) < 1e-12));
    }

    #[test]
    fn refinement_centres_of_the_line() {
        let f = parse("x+y+1", &["x", "y"]).unwrap();
        let c = refinement_centers(&y_columns(&f).unwrap()).unwrap();
        assert_eq!(c.len(), 1);
        assert!((c[0] + 1.0).norm() < 1e-15);
    }

    #[test]
    fn solutions_lie_on_the_curve() {
        let f = parse("x^2*y^2+(2-1i)*y+x^-1+3", &["x", "y"]).unwrap();
        let s = sample_plane_curve(&f, &small()).unwrap();
        assert_eq!(s.cloud.len() * 2, s.amoeba.len());
        for k in (0..s.cloud.len()).step_by(7) {
            let p = s.cloud.point(k);
            let (rx, ry) = s.moduli(k);
            let x = Complex64::from_polar(rx, p[0]);
            let y = Complex64::from_polar(ry, p[1]);
            let v = f.evaluate_slice(&[x, y]).unwrap();
            let scale: f64 = f
                .terms()
                .iter()
                .map(|t| {
                    let e = t.exponent().entries();
                    t.coefficient().norm() * rx.powi(e[0] as i32) * ry.powi(e[1] as i32)
                })
                .sum();
            assert!(v.norm() <= 1e-7 * scale, "residual {} at {k}", v.norm());
        }
    }

    #[test]
    fn rejects_curves_without_second_variable() {
        let f = parse("x+1", &["x", "y"]).unwrap();
        assert!(matches!(
            sample_plane_curve(&f, &small()),
            Err(Error::Degenerate(_))
        ));
        let g = parse("y*x+y", &["x", "y"]).unwrap();
        assert!(matches!(
            sample_plane_curve(&g, &small()),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn deterministic_and_budgeted() {
        let f = parse("x+y+1", &["x", "y"]).unwrap();
        let scheme = CurveScheme::with_budget(2000);
        let a = sample_plane_curve(&f, &scheme).unwrap();
        let b = sample_plane_curve(&f, &scheme).unwrap();
        assert_eq!(a.cloud, b.cloud);
        assert!(a.cloud.len() >= 2000);
    }
}
