//! Phase limit lines `h_0, ..., h_3` and their pairwise intersections.

use serde::Serialize;

use super::LineInP3;
use crate::coamoeba::{circle_distance, wrap, TAU};
use crate::error::Result;

/// Intersection tolerance on the circle.
pub const INTERSECTION_TOL: f64 = 1e-9;

/// A coordinate line of `U P^3` in the chart: the points
/// `fixed_angles + theta * d` where `d` is the unit vector of coordinate
/// `free_index` for `free_index >= 1` and the diagonal `(1, 1, 1)` for
/// `free_index == 0`. The entry of `fixed_angles` along the free
/// coordinate (the first one for the diagonal) is zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhaseLimitLine {
    pub free_index: usize,
    pub fixed_angles: [f64; 3],
}

impl PhaseLimitLine {
    pub fn point(&self, theta: f64) -> [f64; 3] {
        let mut p = self.fixed_angles;
        match self.free_index {
            0 => p.iter_mut().for_each(|a| *a = wrap(*a + theta)),
            i => p[i - 1] = wrap(theta),
        }
        p
    }

    /// Torus distance (max of circle distances) from `p` to the line.
    pub fn distance(&self, p: &[f64; 3]) -> f64 {
        match self.free_index {
            0 => {
                let q: Vec<f64> = (0..3).map(|k| wrap(p[k] - self.fixed_angles[k])).collect();
                diagonal_distance(&q)
            }
            i => (0..3)
                .filter(|&k| k != i - 1)
                .map(|k| circle_distance(p[k], self.fixed_angles[k]))
                .fold(0.0, f64::max),
        }
    }
}

/// `min_theta max_k |q_k - theta|` on the circle: half of the shortest arc
/// containing every `q_k`.
fn diagonal_distance(q: &[f64]) -> f64 {
    let mut a: Vec<f64> = q.iter().map(|x| x.rem_euclid(TAU)).collect();
    a.sort_by(f64::total_cmp);
    let mut gap = a[0] + TAU - a[a.len() - 1];
    for w in a.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    (TAU - gap) / 2.0
}

/// `phase_limit_lines(line)`: `h_0` is the diagonal translated by the
/// phase shift; `h_i` frees coordinate `i` and fixes coordinate `j` at
/// `arg(z_i - z_j)` plus the shift.
pub fn phase_limit_lines(line: &LineInP3) -> Result<[PhaseLimitLine; 4]> {
    let z = line.distinct_finite_roots()?;
    let s = line.phase_shift();
    let h0 = PhaseLimitLine {
        free_index: 0,
        fixed_angles: [0.0, wrap(s[1] - s[0]), wrap(s[2] - s[0])],
    };
    let h = |i: usize| {
        let mut fixed = [0.0; 3];
        for j in 0..3 {
            if j != i {
                fixed[j] = wrap((z[i] - z[j]).arg() + s[j]);
            }
        }
        PhaseLimitLine {
            free_index: i + 1,
            fixed_angles: fixed,
        }
    };
    Ok([h0, h(0), h(1), h(2)])
}

/// `lines_intersect(lines)`: pairs `(a, b)` with `a < b`, by position in
/// the input, whose lines meet.
pub fn lines_intersect(lines: &[PhaseLimitLine; 4]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in a + 1..4 {
            if intersect(&lines[a], &lines[b]) {
                out.push((a, b));
            }
        }
    }
    out
}

fn intersect(g: &PhaseLimitLine, h: &PhaseLimitLine) -> bool {
    let (g, h) = if g.free_index <= h.free_index {
        (g, h)
    } else {
        (h, g)
    };
    match (g.free_index, h.free_index) {
        (0, 0) => (1..3).all(|k| {
            circle_distance(
                g.fixed_angles[k] - g.fixed_angles[0],
                h.fixed_angles[k] - h.fixed_angles[0],
            ) <= INTERSECTION_TOL
        }),
        // theta on the diagonal is forced by both fixed coordinates of h
        (0, j) => {
            let d: Vec<f64> = (0..3)
                .filter(|&k| k != j - 1)
                .map(|k| h.fixed_angles[k] - g.fixed_angles[k])
                .collect();
            circle_distance(d[0], d[1]) <= INTERSECTION_TOL
        }
        (i, j) if i == j => (0..3)
            .filter(|&k| k != i - 1)
            .all(|k| circle_distance(g.fixed_angles[k], h.fixed_angles[k]) <= INTERSECTION_TOL),
        (i, j) => {
            let k = 3 - (i - 1) - (j - 1);
            circle_distance(g.fixed_angles[k], h.fixed_angles[k]) <= INTERSECTION_TOL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::{real_line, symmetric_line};
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn real_line_limits() {
        let h = phase_limit_lines(&real_line()).unwrap();
        assert_eq!(h[0].fixed_angles, [0.0, 0.0, 0.0]);
        assert_eq!(h[1].fixed_angles, [0.0, PI, PI]);
        assert_eq!(h[2].fixed_angles, [0.0, 0.0, PI]);
        assert_eq!(h[3].fixed_angles, [0.0, 0.0, 0.0]);
        assert_eq!(h[3].free_index, 3);
        assert_eq!(lines_intersect(&h), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn symmetric_line_limits_are_disjoint() {
        let h = phase_limit_lines(&symmetric_line()).unwrap();
        assert!(lines_intersect(&h).is_empty());
    }

    #[test]
    fn meeting_point_of_h1_and_h2() {
        let h1 = PhaseLimitLine {
            free_index: 1,
            fixed_angles: [0.0, PI, PI],
        };
        let h2 = PhaseLimitLine {
            free_index: 2,
            fixed_angles: [0.0, 0.0, PI],
        };
        let p = [0.0, PI, PI];
        assert_eq!(h1.distance(&p), 0.0);
        assert_eq!(h2.distance(&p), 0.0);
        assert!(intersect(&h1, &h2));
    }

    #[test]
    fn diagonal_distance_examples() {
        let d = PhaseLimitLine {
            free_index: 0,
            fixed_angles: [0.0; 3],
        };
        assert!(d.distance(&[1.0, 1.0, 1.0]) < 1e-15);
        assert!((d.distance(&[0.0, 0.2, -0.2]) - 0.2).abs() < 1e-15);
        assert!((d.distance(&[3.0, -3.0, PI]) - (TAU - 6.0) / 2.0).abs() < 1e-12);
        assert!((d.point(0.5)[2] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn repeated_roots_are_reported() {
        use super::super::RootP1;
        use num_complex::Complex64;
        let z = RootP1::Finite(Complex64::new(0.0, 0.0));
        let l = LineInP3::from_roots([
            RootP1::Infinity,
            z,
            z,
            RootP1::Finite(Complex64::new(1.0, 0.0)),
        ])
        .unwrap();
        assert!(phase_limit_lines(&l).is_err());
    }
}
