//! Uniform bucket grid on `U^n` for nearest-point queries in the `l-inf`
//! torus metric.

use super::{linf, PointCloud, TAU};

/// A bucket index over a point cloud. Cells wrap around each circle.
pub struct TorusGrid<'a> {
    cloud: &'a PointCloud,
    per_axis: usize,
    cell: f64,
    starts: Vec<usize>,
    order: Vec<usize>,
}

impl<'a> TorusGrid<'a> {
    /// Builds the index with cells of side about `cell_size` radians.
    pub fn new(cloud: &'a PointCloud, cell_size: f64) -> Self {
        let n = cloud.rank();
        let per_axis = ((TAU / cell_size).floor() as usize).clamp(1, 4096);
        let per_axis = per_axis.min(max_per_axis(n));
        let cell = TAU / per_axis as f64;
        let cells = per_axis.pow(n as u32);
        let keys: Vec<usize> = cloud.iter().map(|p| key(p, per_axis, cell)).collect();
        let mut starts = vec![0usize; cells + 1];
        for &k in &keys {
            starts[k + 1] += 1;
        }
        for k in 0..cells {
            starts[k + 1] += starts[k];
        }
        let mut fill = starts.clone();
        let mut order = vec![0usize; keys.len()];
        for (i, &k) in keys.iter().enumerate() {
            order[fill[k]] = i;
            fill[k] += 1;
        }
        TorusGrid {
            cloud,
            per_axis,
            cell,
            starts,
            order,
        }
    }

    /// Distance from `p` to the nearest cloud point, if one lies within
    /// `radius`.
    pub fn nearest_within(&self, p: &[f64], radius: f64) -> Option<f64> {
        let n = self.cloud.rank();
        let reach = ((radius / self.cell).ceil() as usize + 1).min(self.per_axis / 2 + 1);
        let span = (2 * reach + 1).min(self.per_axis);
        let home: Vec<usize> = p
            .iter()
            .map(|&a| axis_cell(a, self.per_axis, self.cell))
            .collect();
        let mut best: Option<f64> = None;
        let mut offset = vec![0usize; n];
        loop {
            let mut k = 0;
            for d in 0..n {
                let c = (home[d] + self.per_axis + offset[d] - reach.min(span / 2)) % self.per_axis;
                k = k * self.per_axis + c;
            }
            for &i in &self.order[self.starts[k]..self.starts[k + 1]] {
                let dist = linf(p, self.cloud.point(i));
                if dist <= radius && best.map_or(true, |b| dist < b) {
                    best = Some(dist);
                }
            }
            let mut d = 0;
            loop {
                if d == n {
                    return best;
                }
                offset[d] += 1;
                if offset[d] < span {
                    break;
                }
                offset[d] = 0;
                d += 1;
            }
        }
    }

    /// Distance from `p` to the nearest cloud point (infinite for an empty
    /// cloud).
    pub fn nearest(&self, p: &[f64]) -> f64 {
        if self.cloud.is_empty() {
            return f64::INFINITY;
        }
        let mut r = self.cell;
        loop {
            if let Some(d) = self.nearest_within(p, r) {
                return d;
            }
            if r > TAU {
                return self
                    .nearest_within(p, f64::INFINITY)
                    .unwrap_or(f64::INFINITY);
            }
            r *= 2.0;
        }
    }

    /// One-sided Hausdorff distance `sup_{q in other} d(q, cloud)`.
    pub fn directed_hausdorff_from(&self, other: &PointCloud) -> f64 {
        use rayon::prelude::*;
        let pts: Vec<&[f64]> = other.iter().collect();
        pts.par_iter()
            .map(|q| self.nearest(q))
            .reduce(|| 0.0, f64::max)
    }
}

fn max_per_axis(n: usize) -> usize {
    match n {
        0 | 1 => 4096,
        2 => 1024,
        3 => 128,
        _ => 16,
    }
}

fn axis_cell(a: f64, per_axis: usize, cell: f64) -> usize {
    let t = (a + std::f64::consts::PI).rem_euclid(TAU);
    ((t / cell) as usize).min(per_axis - 1)
}

fn key(p: &[f64], per_axis: usize, cell: f64) -> usize {
    p.iter()
        .fold(0, |k, &a| k * per_axis + axis_cell(a, per_axis, cell))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_brute_force() {
        let mut cloud = PointCloud::new(2, "test");
        let mut s = 1u64;
        let mut next = || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64 * TAU - std::f64::consts::PI
        };
        for _ in 0..500 {
            let p = [next(), next()];
            cloud.push(&p);
        }
        let grid = TorusGrid::new(&cloud, 0.1);
        for _ in 0..200 {
            let q = [next(), next()];
            let brute = cloud
                .iter()
                .map(|p| linf(&q, p))
                .fold(f64::INFINITY, f64::min);
            assert_eq!(grid.nearest(&q), brute);
        }
    }

    #[test]
    fn wraps_around() {
        let mut cloud = PointCloud::new(3, "test");
        cloud.push(&[3.1, -3.1, 0.0]);
        let grid = TorusGrid::new(&cloud, 0.1);
        let d = grid.nearest(&[-3.1, 3.1, 0.0]);
        assert!((d - (TAU - 6.2)).abs() < 1e-12);
    }
}
