//! The argument and logarithm maps, angle arithmetic on the real torus
//! `U^n = (R / 2 pi Z)^n`, point clouds, and the samplers built on them.

mod export;
mod index;
mod line2;
mod roots;
mod sample;

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::TorusElement;

pub use export::{write_csv, write_ply};
pub use index::TorusGrid;
pub use line2::{
    classify_reduced, in_reduced_triangle, line2_membership, line2_membership_tol,
    reduced_triangle, LineT2, Membership, DEFAULT_MEMBERSHIP_TOL,
};
pub use roots::{polynomial_residual_bound, solve_univariate};
pub use sample::{sample_plane_curve, CurveSample, CurveScheme, MAX_UNIVARIATE_DEGREE};

pub const TAU: f64 = 2.0 * PI;

/// Canonical representative of an angle in `(-pi, pi]`.
pub fn wrap(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let r = theta.rem_euclid(TAU);
    if r > PI {
        r - TAU
    } else {
        r
    }
}

/// Geodesic distance on the circle `R / 2 pi Z`.
pub fn circle_distance(a: f64, b: f64) -> f64 {
    wrap(a - b).abs()
}

/// A point of `U^n` with every angle in `(-pi, pi]`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TorusPoint(Vec<f64>);

impl TorusPoint {
    /// Wraps arbitrary real angles to their canonical representatives.
    pub fn new(angles: Vec<f64>) -> Self {
        TorusPoint(angles.into_iter().map(wrap).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn angles(&self) -> &[f64] {
        &self.0
    }

    /// Coordinatewise sum, wrapped.
    pub fn translate(&self, by: &[f64]) -> TorusPoint {
        TorusPoint::new(self.0.iter().zip(by).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, a) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// `arg_map(x)`: coordinatewise principal argument.
pub fn arg_map(x: &TorusElement) -> TorusPoint {
    TorusPoint::new(x.coordinates().iter().map(|z| z.arg()).collect())
}

/// `log_map(x)`: coordinatewise logarithm of the modulus.
pub fn log_map(x: &TorusElement) -> Vec<f64> {
    x.coordinates().iter().map(|z| z.norm().ln()).collect()
}

/// `torus_distance(p, q)`: the maximum over coordinates of the circle
/// distance.
pub fn torus_distance(p: &TorusPoint, q: &TorusPoint) -> Result<f64> {
    if p.rank() != q.rank() {
        return Err(Error::RankMismatch {
            expected: p.rank(),
            found: q.rank(),
        });
    }
    Ok(linf(p.angles(), q.angles()))
}

pub(crate) fn linf(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| circle_distance(*a, *b))
        .fold(0.0, f64::max)
}

/// A finite sample of `U^n`, stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct PointCloud {
    rank: usize,
    data: Vec<f64>,
    provenance: String,
}

impl PointCloud {
    pub fn new(rank: usize, provenance: impl Into<String>) -> Self {
        PointCloud {
            rank,
            data: Vec::new(),
            provenance: provenance.into(),
        }
    }

    /// Builds a cloud from raw angles, wrapping each one.
    pub fn from_flat(
        rank: usize,
        mut data: Vec<f64>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if rank == 0 || data.len() % rank != 0 {
            return Err(Error::InvalidArgument(format!(
                "{} values do not form points of rank {rank}",
                data.len()
            )));
        }
        data.iter_mut().for_each(|a| *a = wrap(*a));
        Ok(PointCloud {
            rank,
            data,
            provenance: provenance.into(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.rank
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn set_provenance(&mut self, provenance: impl Into<String>) {
        self.provenance = provenance.into();
    }

    /// Appends a point given by raw angles (wrapped on insertion).
    pub fn push(&mut self, angles: &[f64]) {
        assert_eq!(angles.len(), self.rank, "point rank");
        self.data.extend(angles.iter().map(|a| wrap(*a)));
    }

    pub fn extend_from(&mut self, other: &PointCloud) {
        assert_eq!(other.rank, self.rank, "cloud rank");
        self.data.extend_from_slice(&other.data);
    }

    pub fn point(&self, k: usize) -> &[f64] {
        &self.data[k * self.rank..(k + 1) * self.rank]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.data.chunks_exact(self.rank)
    }

    pub fn to_points(&self) -> Vec<TorusPoint> {
        self.iter().map(|p| TorusPoint(p.to_vec())).collect()
    }

    pub fn as_flat(&self) -> &[f64] {
        &self.data
    }

    /// The cloud under `theta -> -theta`.
    pub fn negated(&self) -> PointCloud {
        let mut c = PointCloud::new(self.rank, format!("negated {}", self.provenance));
        for p in self.iter() {
            c.push(&p.iter().map(|a| -a).collect::<Vec<_>>());
        }
        c
    }
}
