//! Sampling `arg . phi` over the parameter line: membranes, contours, small
//! circles around roots, and the differential of the map.

use std::f64::consts::PI;
use std::ops::Range;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{LineInP3, RootP1};
use crate::coamoeba::{wrap, PointCloud};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HalfPlane {
    Upper,
    Lower,
    Both,
}

impl HalfPlane {
    fn angle_range(self) -> (f64, f64) {
        match self {
            HalfPlane::Upper => (0.0, PI),
            HalfPlane::Lower => (-PI, 0.0),
            HalfPlane::Both => (-PI, PI),
        }
    }

    fn admits(self, x: Complex64) -> bool {
        match self {
            HalfPlane::Upper => x.im > 0.0,
            HalfPlane::Lower => x.im < 0.0,
            HalfPlane::Both => true,
        }
    }
}

impl std::str::FromStr for HalfPlane {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "upper" => Ok(HalfPlane::Upper),
            "lower" => Ok(HalfPlane::Lower),
            "both" => Ok(HalfPlane::Both),
            _ => Err(Error::InvalidArgument(format!("unknown half plane '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MembraneOptions {
    pub samples: usize,
    pub half_plane: HalfPlane,
    /// Seed for a random radius and rotation of every shell.
    pub jitter_seed: Option<u64>,
}

impl MembraneOptions {
    pub fn new(samples: usize, half_plane: HalfPlane) -> Self {
        MembraneOptions {
            samples,
            half_plane,
            jitter_seed: None,
        }
    }
}

struct ShellSet {
    center: Complex64,
    r_min: f64,
    r_max: f64,
}

/// Ratio of angular to radial resolution in each log-polar grid. The
/// argument map stretches far more along circles than along rays.
const ANGULAR_DENSITY: f64 = 32.0;

/// `sample_membrane(line, samples, half_plane)`: log-polar shells around
/// every finite root and a global set around their centroid. Real lines
/// are sampled in their realified parameter, where the half planes are the
/// two sides of the circle through the roots; other lines use the normal
/// form parameter.
pub fn sample_membrane(line: &LineInP3, options: &MembraneOptions) -> Result<PointCloud> {
    if options.samples == 0 {
        return Err(Error::InvalidArgument("samples must be positive".into()));
    }
    let work = if line.distinct_roots() == 4 && line.is_real() {
        line.realified()?
    } else {
        line.clone()
    };
    let mut finite: Vec<Complex64> = Vec::new();
    for r in &work.roots()[1..] {
        if let RootP1::Finite(z) = r {
            if !finite.contains(z) {
                finite.push(*z);
            }
        }
    }
    let centroid = if finite.is_empty() {
        Complex64::new(0.0, 0.0)
    } else {
        finite.iter().sum::<Complex64>() / finite.len() as f64
    };
    let spread = finite
        .iter()
        .map(|z| (z - centroid).norm())
        .fold(0.0, f64::max);
    let spread = if spread > 0.0 { spread } else { 1.0 };
    let mut sets: Vec<ShellSet> = finite
        .iter()
        .map(|z| {
            let s = finite
                .iter()
                .filter(|w| *w != z)
                .map(|w| (w - z).norm())
                .fold(f64::INFINITY, f64::min);
            let s = if s.is_finite() { s } else { 1.0 };
            ShellSet {
                center: *z,
                r_min: 1e-3 * s,
                r_max: s,
            }
        })
        .collect();
    sets.push(ShellSet {
        center: centroid,
        r_min: 1e-2 * spread,
        r_max: 1e3 * spread,
    });

    let per = options.samples.div_ceil(sets.len());
    let (lo, hi) = options.half_plane.angle_range();
    let grids: Vec<(usize, usize)> = sets
        .iter()
        .map(|set| {
            let span = (set.r_max / set.r_min).ln();
            let angles = (ANGULAR_DENSITY * per as f64 * (hi - lo) / span)
                .sqrt()
                .ceil()
                .max(1.0) as usize;
            (per.div_ceil(angles), angles)
        })
        .collect();

    let jobs: Vec<(usize, usize)> = (0..sets.len())
        .flat_map(|s| (0..grids[s].0).map(move |j| (s, j)))
        .collect();
    let chunks: Vec<Result<Vec<f64>>> = jobs
        .par_iter()
        .map(|&(s, j)| {
            let set = &sets[s];
            let (shells, angles) = grids[s];
            let mut rng = options
                .jitter_seed
                .map(|seed| ChaCha8Rng::seed_from_u64(seed ^ ((s as u64) << 40) ^ j as u64));
            let mut offset = || match rng.as_mut() {
                Some(r) => r.gen_range(-0.5..0.5),
                None => 0.0,
            };
            let span = (set.r_max / set.r_min).ln();
            let radius = set.r_min * ((j as f64 + 0.5 + offset()) / shells as f64 * span).exp();
            let turn = offset();
            let mut out = Vec::with_capacity(3 * angles);
            for k in 0..angles {
                let phi = lo + (k as f64 + 0.5 + turn) / angles as f64 * (hi - lo);
                let x = set.center + Complex64::from_polar(radius, phi);
                if !options.half_plane.admits(x) {
                    continue;
                }
                match work.arg_at(x) {
                    Ok(p) => out.extend_from_slice(&p),
                    Err(Error::AtRoot(_)) => {}
                    Err(e) => return Err(e),
                }
            }
            Ok(out)
        })
        .collect();
    let mut data = Vec::with_capacity(3 * options.samples);
    for c in chunks {
        data.extend(c?);
    }
    let provenance = format!(
        "membrane roots=[{}] half_plane={:?} centers={} grids={:?} jitter={:?}",
        line.original_roots().map(|r| r.to_string()).join(", "),
        options.half_plane,
        sets.len(),
        grids,
        options.jitter_seed
    );
    PointCloud::from_flat(3, data, provenance)
}

/// `arg . phi` on the circle of radius `epsilon` about root `i` of the
/// normal form, or on `|x| = 1 / epsilon` for the root at infinity.
pub fn sample_root_circle(
    line: &LineInP3,
    i: usize,
    epsilon: f64,
    points: usize,
) -> Result<PointCloud> {
    if i > 3 || !(epsilon > 0.0) || points == 0 {
        return Err(Error::InvalidArgument(format!(
            "root circle needs index < 4, positive radius and points (got {i}, {epsilon}, {points})"
        )));
    }
    let (center, radius) = match line.roots()[i] {
        RootP1::Infinity => (Complex64::new(0.0, 0.0), 1.0 / epsilon),
        RootP1::Finite(z) => (z, epsilon),
    };
    let mut cloud = PointCloud::new(3, format!("circle about root {i} radius {radius}"));
    for k in 0..points {
        let x = center
            + Complex64::from_polar(radius, -PI + (k as f64 + 0.5) / points as f64 * 2.0 * PI);
        cloud.push(&line.arg_at(x)?);
    }
    Ok(cloud)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum PieceKind {
    /// The real interval between consecutive roots (0 is left of all roots).
    RealSegment { index: usize },
    /// Small semicircle over the root with this index in the line.
    RootSemicircle { root: usize },
    /// The semicircle of radius `1 / epsilon` through the upper half plane.
    OuterSemicircle,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContourPiece {
    pub kind: PieceKind,
    pub range: Range<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ContourImage {
    pub cloud: PointCloud,
    pub pieces: Vec<ContourPiece>,
}

impl ContourImage {
    pub fn piece_points(&self, piece: usize) -> impl Iterator<Item = &[f64]> + '_ {
        self.pieces[piece]
            .range
            .clone()
            .map(move |k| self.cloud.point(k))
    }

    pub fn real_segments(&self) -> impl Iterator<Item = &ContourPiece> + '_ {
        self.pieces
            .iter()
            .filter(|p| matches!(p.kind, PieceKind::RealSegment { .. }))
    }
}

/// `contour_image(line, epsilon, points_per_piece)`: the real axis with
/// semicircles of radius `epsilon` over each root, closed by the semicircle
/// of radius `1 / epsilon`, traversed left to right and then back through
/// the upper half plane.
pub fn contour_image(
    line: &LineInP3,
    epsilon: f64,
    points_per_piece: usize,
) -> Result<ContourImage> {
    let work = line.realified()?;
    if points_per_piece < 2 {
        return Err(Error::InvalidArgument(
            "contour pieces need at least 2 points".into(),
        ));
    }
    let mut order: Vec<(f64, usize)> = (1..4)
        .map(|i| (work.roots()[i].finite().unwrap().re, i))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let r: Vec<f64> = order.iter().map(|o| o.0).collect();
    let big = 1.0 / epsilon;
    let fits = epsilon > 0.0
        && r.windows(2).all(|w| w[1] - w[0] > 2.0 * epsilon)
        && big > r[0].abs().max(r[2].abs()) + epsilon;
    if !fits {
        return Err(Error::InvalidArgument(format!(
            "epsilon {epsilon} too large for roots {r:?}"
        )));
    }
    let n = points_per_piece;
    let lin = |a: f64, b: f64| (0..n).map(move |k| a + (b - a) * k as f64 / (n - 1) as f64);
    let mut cloud = PointCloud::new(3, String::new());
    let mut pieces = Vec::new();
    let mut push = |kind: PieceKind, xs: Vec<Complex64>, cloud: &mut PointCloud| -> Result<()> {
        let start = cloud.len();
        for x in xs {
            cloud.push(&work.arg_at(x)?);
        }
        pieces.push(ContourPiece {
            kind,
            range: start..cloud.len(),
        });
        Ok(())
    };
    let real = |a: f64, b: f64| {
        lin(a, b)
            .map(|x| Complex64::new(x, 0.0))
            .collect::<Vec<_>>()
    };
    let mut left = -big;
    for (k, &(root, idx)) in order.iter().enumerate() {
        push(
            PieceKind::RealSegment { index: k },
            real(left, root - epsilon),
            &mut cloud,
        )?;
        let arc = lin(PI, 0.0)
            .map(|phi| Complex64::new(root, 0.0) + Complex64::from_polar(epsilon, phi))
            .collect();
        push(PieceKind::RootSemicircle { root: idx }, arc, &mut cloud)?;
        left = root + epsilon;
    }
    push(
        PieceKind::RealSegment { index: 3 },
        real(left, big),
        &mut cloud,
    )?;
    let outer = lin(0.0, PI)
        .map(|phi| Complex64::from_polar(big, phi))
        .collect();
    push(PieceKind::OuterSemicircle, outer, &mut cloud)?;
    let described: Vec<String> = pieces
        .iter()
        .map(|p| match p.kind {
            PieceKind::RealSegment { index } => format!("real-segment[{index}]={:?}", p.range),
            PieceKind::RootSemicircle { root } => format!("semicircle[root {root}]={:?}", p.range),
            PieceKind::OuterSemicircle => format!("outer-semicircle={:?}", p.range),
        })
        .collect();
    cloud.set_provenance(format!("contour epsilon={epsilon} {}", described.join(" ")));
    Ok(ContourImage { cloud, pieces })
}

/// Step of the central differences in [`differential_rank`].
pub const RANK_STEP: f64 = 1e-6;

/// `differential_rank(line, x)`: numerical rank of the real 3x2 Jacobian of
/// `arg . phi` at the normal-form parameter `x`.
pub fn differential_rank(line: &LineInP3, x: Complex64) -> Result<usize> {
    let z = line.distinct_finite_roots()?;
    if z.iter().any(|r| (x - r).norm() <= 10.0 * RANK_STEP) {
        return Err(Error::AtRoot(format!("{x}")));
    }
    let h = RANK_STEP;
    let column = |dx: Complex64| -> Result<[f64; 3]> {
        let (p, m) = (line.arg_at(x + dx)?, line.arg_at(x - dx)?);
        Ok([0, 1, 2].map(|k| wrap(p[k] - m[k]) / (2.0 * h)))
    };
    let a = column(Complex64::new(h, 0.0))?;
    let b = column(Complex64::new(0.0, h))?;
    // eigenvalues of the Gram matrix J^T J
    let g11: f64 = a.iter().map(|v| v * v).sum();
    let g22: f64 = b.iter().map(|v| v * v).sum();
    let g12: f64 = a.iter().zip(&b).map(|(u, v)| u * v).sum();
    let mean = (g11 + g22) / 2.0;
    let disc = (((g11 - g22) / 2.0).powi(2) + g12 * g12).sqrt();
    let s_max = (mean + disc).max(0.0).sqrt();
    let s_min = (mean - disc).max(0.0).sqrt();
    Ok(match (s_max > 0.0, s_min > 1e-6 * s_max) {
        (false, _) => 0,
        (true, false) => 1,
        (true, true) => 2,
    })
}
