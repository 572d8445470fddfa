//! Arc images and the twelve interior segments of a generic line.

use num_complex::Complex64;
use serde::Serialize;

use super::{LineInP3, RootP1};
use crate::coamoeba::{wrap, TorusPoint};
use crate::error::{Error, Result};

/// Sub-arcs used to follow the moving coordinate along an arc.
const SWEEP_STEPS: usize = 256;

type Hom = [Complex64; 2];

fn det(p: Hom, q: Hom) -> Complex64 {
    p[0] * q[1] - p[1] * q[0]
}

/// The circle through three distinct points of `P^1`, parametrized by the
/// real projective line via the Moebius map sending them to `0, 1, inf`.
struct Circle {
    p: [Hom; 3],
    k1: Complex64,
    k2: Complex64,
}

impl Circle {
    fn new(roots: &[RootP1; 3]) -> Result<Self> {
        for (i, j) in [(0, 1), (1, 2), (0, 2)] {
            if roots[i].approx_eq(&roots[j]) {
                return Err(Error::RepeatedRoots(format!(
                    "{} and {}",
                    roots[i], roots[j]
                )));
            }
        }
        let p = roots.map(|r| r.homogeneous());
        Ok(Circle {
            k1: det(p[1], p[2]),
            k2: det(p[1], p[0]),
            p,
        })
    }

    /// The point with Moebius parameter `num / den`.
    fn at(&self, num: f64, den: f64) -> Hom {
        [
            self.k1 * self.p[0][0] * den - self.k2 * self.p[2][0] * num,
            self.k1 * self.p[0][1] * den - self.k2 * self.p[2][1] * num,
        ]
    }

    /// Arc `k` runs from root `k` to root `k + 1 (mod 3)`, avoiding the
    /// third; `s` in `(0, 1)` moves along it.
    fn arc_point(&self, arc: usize, s: f64) -> Hom {
        match arc {
            0 => self.at(s, 1.0),
            1 => self.at(1.0, 1.0 - s),
            _ => self.at(-(1.0 - s), s),
        }
    }
}

/// The monic form with the given root, evaluated at `v = (s, t)`.
fn monic(root: &RootP1, v: Hom) -> Complex64 {
    match root {
        RootP1::Infinity => v[1],
        RootP1::Finite(z) => v[0] - z * v[1],
    }
}

/// `arc_image(roots, arc)`: the constant value of
/// `(arg l_1 - arg l_0, arg l_2 - arg l_0)` on arc `arc` of the circle
/// through the roots, for the monic forms `l_i` vanishing at `roots[i]`.
/// Arc `k` joins `roots[k]` and `roots[(k + 1) % 3]`.
pub fn arc_image(roots: &[RootP1; 3], arc: usize) -> Result<TorusPoint> {
    if arc > 2 {
        return Err(Error::InvalidArgument(format!(
            "arc index {arc} out of range 0..3"
        )));
    }
    let v = Circle::new(roots)?.arc_point(arc, 0.5);
    let l = roots.map(|r| monic(&r, v));
    let base = l[0].arg();
    Ok(TorusPoint::new(vec![l[1].arg() - base, l[2].arg() - base]))
}

/// Which circle and arc a segment comes from: the circle through the roots
/// other than `circle`, and its arc from root `from` to root `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ArcSource {
    pub circle: usize,
    pub from: usize,
    pub to: usize,
}

/// A segment `fixed_angles + lambda * d` for `lambda` strictly between
/// `interval.0` and `interval.1`, where `d` is the coordinate direction
/// `direction_index` of `U P^3` (the diagonal for 0). `interval.1 -
/// interval.0` is the signed sweep; `fixed_angles` is zero in the
/// coordinate that measures `lambda`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CoamoebaSegment {
    pub direction_index: usize,
    pub fixed_angles: [f64; 3],
    pub interval: (f64, f64),
    pub source: ArcSource,
}

impl CoamoebaSegment {
    pub fn direction(&self) -> [f64; 3] {
        match self.direction_index {
            0 => [1.0; 3],
            i => {
                let mut d = [0.0; 3];
                d[i - 1] = 1.0;
                d
            }
        }
    }

    /// The point at fraction `s` of the way along the segment.
    pub fn point(&self, s: f64) -> [f64; 3] {
        let lambda = self.interval.0 + s * (self.interval.1 - self.interval.0);
        let d = self.direction();
        [0, 1, 2].map(|k| wrap(self.fixed_angles[k] + lambda * d[k]))
    }

    pub fn sweep(&self) -> f64 {
        self.interval.1 - self.interval.0
    }
}

/// `coamoeba_segments(line)`: for each `i`, the three arcs of the circle
/// through the other three roots map to segments parallel to direction `i`.
pub fn coamoeba_segments(line: &LineInP3) -> Result<Vec<CoamoebaSegment>> {
    let z = line.distinct_finite_roots()?;
    if line.is_real() {
        return Err(Error::Cocircular);
    }
    let roots = *line.roots();
    let shift = line.phase_shift();
    let mut out = Vec::with_capacity(12);
    for i in 0..4 {
        let others: Vec<usize> = (0..4).filter(|&j| j != i).collect();
        let circle = Circle::new(&[roots[others[0]], roots[others[1]], roots[others[2]]])?;
        for arc in 0..3 {
            let (a, b, c) = (others[arc], others[(arc + 1) % 3], others[(arc + 2) % 3]);
            // chart coordinate that measures the position along the segment
            let m = if i == 0 { c - 1 } else { i - 1 };
            let measure = |x: Complex64| wrap((x - z[m]).arg() + shift[m]);
            let endpoint = |e: usize, partner: usize| -> f64 {
                if e == 0 {
                    // escaping to infinity along the line through the two
                    // finite roots, away from the third one
                    wrap((z[partner - 1] - z[c - 1]).arg() + shift[m])
                } else {
                    measure(z[e - 1])
                }
            };
            let start = endpoint(a, b);
            let end = endpoint(b, a);
            let mut prev = start;
            let mut sweep = 0.0;
            let mut mid_offset = 0.0;
            let mut mid = [0.0; 3];
            for k in 1..SWEEP_STEPS {
                let v = circle.arc_point(arc, k as f64 / SWEEP_STEPS as f64);
                let x = v[0] / v[1];
                let val = measure(x);
                sweep += wrap(val - prev);
                prev = val;
                if k == SWEEP_STEPS / 2 {
                    mid_offset = sweep;
                    mid = line.arg_at(x)?;
                }
            }
            sweep += wrap(end - prev);
            let d = if i == 0 {
                [1.0; 3]
            } else {
                let mut d = [0.0; 3];
                d[m] = 1.0;
                d
            };
            let fixed = [0, 1, 2].map(|k| wrap(mid[k] - mid[m] * d[k]));
            // the midpoint sits at start + mid_offset along the segment
            debug_assert!(crate::coamoeba::circle_distance(start + mid_offset, mid[m]) < 1e-9);
            out.push(CoamoebaSegment {
                direction_index: i,
                fixed_angles: fixed,
                interval: (start, start + sweep),
                source: ArcSource {
                    circle: i,
                    from: a,
                    to: b,
                },
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::tests::{real_line, symmetric_line};
    use super::*;
    use crate::coamoeba::linf;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn example_roots() -> [RootP1; 3] {
        [
            RootP1::Infinity,
            RootP1::Finite(c(0.0, 0.0)),
            RootP1::Finite(c(-1.0, 0.0)),
        ]
    }

    #[test]
    fn example_arcs_with_monic_forms() {
        let r = example_roots();
        // arcs (0, inf), (-1, 0), (-inf, -1)
        assert_eq!(arc_image(&r, 0).unwrap().angles(), &[0.0, 0.0]);
        assert_eq!(arc_image(&r, 1).unwrap().angles(), &[PI, 0.0]);
        assert_eq!(arc_image(&r, 2).unwrap().angles(), &[PI, PI]);
        assert!(arc_image(&r, 3).is_err());
    }

    #[test]
    fn arc_value_is_constant() {
        let r = example_roots();
        let circle = Circle::new(&r).unwrap();
        let value = |v: Hom| {
            let l = r.map(|q| monic(&q, v));
            [l[1].arg() - l[0].arg(), l[2].arg() - l[0].arg()]
        };
        let one = c(1.0, 0.0);
        let a = value([c(1.0, 0.0), one]);
        let b = value([c(7.0, 0.0), one]);
        assert!(linf(&a, &b) < 1e-12);
        for arc in 0..3 {
            let reference = value(circle.arc_point(arc, 0.5));
            for k in 1..20 {
                let v = value(circle.arc_point(arc, k as f64 / 20.0));
                assert!(linf(&v, &reference) < 1e-12);
            }
        }
    }

    #[test]
    fn arc_endpoints() {
        let r = [
            RootP1::Finite(c(0.3, 1.0)),
            RootP1::Finite(c(-2.0, 0.5)),
            RootP1::Finite(c(1.0, -1.0)),
        ];
        let circle = Circle::new(&r).unwrap();
        for (arc, (from, to)) in [(0, 1), (1, 2), (2, 0)].into_iter().enumerate() {
            let near = |s: f64| {
                let v = circle.arc_point(arc, s);
                v[0] / v[1]
            };
            assert!((near(1e-9) - r[from].finite().unwrap()).norm() < 1e-6);
            assert!((near(1.0 - 1e-9) - r[to].finite().unwrap()).norm() < 1e-6);
        }
        assert!(Circle::new(&[r[0], r[1], r[0]]).is_err());
    }

    #[test]
    fn twelve_segments_on_the_symmetric_line() {
        let l = symmetric_line();
        let segs = coamoeba_segments(&l).unwrap();
        assert_eq!(segs.len(), 12);
        for i in 0..4 {
            assert_eq!(segs.iter().filter(|s| s.direction_index == i).count(), 3);
        }
        for s in &segs {
            assert!(s.sweep().abs() > 1e-3 && s.sweep().abs() < 2.0 * PI);
        }
    }

    #[test]
    fn segments_are_arc_images() {
        let l = symmetric_line();
        let roots = *l.roots();
        for seg in coamoeba_segments(&l).unwrap() {
            let others: Vec<usize> = (0..4).filter(|&j| j != seg.source.circle).collect();
            let circle =
                Circle::new(&[roots[others[0]], roots[others[1]], roots[others[2]]]).unwrap();
            let arc = others.iter().position(|&j| j == seg.source.from).unwrap();
            for k in 1..40 {
                let s = k as f64 / 40.0;
                let v = circle.arc_point(arc, s);
                let p = l.arg_at(v[0] / v[1]).unwrap();
                let best = (0..=2000)
                    .map(|j| linf(&seg.point(j as f64 / 2000.0), &p))
                    .fold(f64::INFINITY, f64::min);
                assert!(best < 5e-3, "segment {seg:?} misses {p:?} by {best}");
            }
        }
    }

    #[test]
    fn cocircular_input_is_rejected() {
        assert_eq!(coamoeba_segments(&real_line()), Err(Error::Cocircular));
    }
}
