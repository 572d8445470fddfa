//! Exact convex hulls of small integer point sets (ambient dimension <= 3).
//!
//! [`facets`] returns an integer basis of the orthogonal complement of the
//! affine span, and every facet as (primitive inner normal, indices of the
//! points on it). Inner normals lie in the span of the differences, so together with
//! the complement they generate the normal cones of the faces.

use std::collections::HashSet;

use super::lattice::{cross, dot, independent_subset, is_zero, primitive, sub, widen};
use crate::error::{Error, Result};

pub(crate) struct Facets {
    pub lineality: Vec<Vec<i64>>,
    pub facets: Vec<(Vec<i64>, Vec<usize>)>,
}

pub(crate) fn facets(points: &[Vec<i64>]) -> Result<Facets> {
    let n = points[0].len();
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedRank(n));
    }
    let p: Vec<Vec<i128>> = points.iter().map(|q| widen(q)).collect();
    let diffs: Vec<Vec<i64>> = p
        .iter()
        .map(|q| sub(q, &p[0]).into_iter().map(|x| x as i64).collect())
        .collect();
    let basis: Vec<Vec<i128>> = independent_subset(&diffs)
        .into_iter()
        .map(|k| widen(&diffs[k]))
        .collect();
    let d = basis.len();
    let lineality = complement(n, &basis)?;

    let mut normals: Vec<Vec<i64>> = Vec::new();
    match d {
        0 => {}
        1 => {
            let u = primitive(&basis[0])?;
            normals.push(u.iter().map(|x| -x).collect());
            normals.push(u);
        }
        2 => {
            let plane_normal = if n == 3 {
                Some(cross(&basis[0], &basis[1]))
            } else {
                None
            };
            let proj: Vec<[i128; 2]> = match plane_normal {
                None => p.iter().map(|q| [q[0], q[1]]).collect(),
                Some(nv) => {
                    let drop = (0..3).max_by_key(|&k| nv[k].abs()).unwrap();
                    let keep: Vec<usize> = (0..3).filter(|&k| k != drop).collect();
                    p.iter().map(|q| [q[keep[0]], q[keep[1]]]).collect()
                }
            };
            let cycle = monotone_chain(&proj);
            for k in 0..cycle.len() {
                let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
                let e = sub(&p[b], &p[a]);
                let raw: Vec<i128> = match plane_normal {
                    None => vec![-e[1], e[0]],
                    Some(nv) => cross(&nv, &e).to_vec(),
                };
                normals.push(orient_inward(&p, a, &raw)?);
            }
        }
        _ => {
            for [a, b, c] in hull3(&p) {
                let out = cross(&sub(&p[b], &p[a]), &sub(&p[c], &p[a]));
                let inner: Vec<i128> = out.iter().map(|x| -x).collect();
                normals.push(primitive(&inner)?);
            }
        }
    }
    let mut seen = HashSet::new();
    let mut facets = Vec::new();
    for u in normals {
        if !seen.insert(u.clone()) {
            continue;
        }
        let uw = widen(&u);
        let vals: Vec<i128> = p.iter().map(|q| dot(q, &uw)).collect();
        let min = *vals.iter().min().unwrap();
        let on: Vec<usize> = (0..p.len()).filter(|&k| vals[k] == min).collect();
        facets.push((u, on));
    }
    Ok(Facets { lineality, facets })
}

/// Integer basis of the orthogonal complement of `span(basis)` in `Z^n`.
fn complement(n: usize, basis: &[Vec<i128>]) -> Result<Vec<Vec<i64>>> {
    let units: Vec<Vec<i128>> = (0..n)
        .map(|k| (0..n).map(|j| i128::from(j == k)).collect())
        .collect();
    match (n, basis.len()) {
        (_, 0) => units.iter().map(|u| primitive(u)).collect(),
        (2, 1) => Ok(vec![primitive(&[-basis[0][1], basis[0][0]])?]),
        (3, 1) => {
            let cands: Vec<Vec<i64>> = units
                .iter()
                .map(|u| cross(&basis[0], u))
                .filter(|c| !is_zero(c))
                .map(|c| primitive(&c))
                .collect::<Result<_>>()?;
            Ok(independent_subset(&cands)
                .into_iter()
                .map(|k| cands[k].clone())
                .collect())
        }
        (3, 2) => Ok(vec![primitive(&cross(&basis[0], &basis[1]))?]),
        _ => Ok(Vec::new()),
    }
}

/// Makes `raw` primitive with the sign for which every point has
/// `<p - p_a, u> >= 0`.
fn orient_inward(p: &[Vec<i128>], a: usize, raw: &[i128]) -> Result<Vec<i64>> {
    let negative = p.iter().any(|q| dot(&sub(q, &p[a]), raw) < 0);
    let signed: Vec<i128> = if negative {
        raw.iter().map(|x| -x).collect()
    } else {
        raw.to_vec()
    };
    primitive(&signed)
}

fn cross2(o: [i128; 2], a: [i128; 2], b: [i128; 2]) -> i128 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

/// Strict convex hull (no collinear points) of distinct planar points, as a
/// counter-clockwise cycle of indices.
fn monotone_chain(pts: &[[i128; 2]]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by_key(|&k| pts[k]);
    idx.dedup_by_key(|k| pts[*k]);
    if idx.len() < 3 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &k in iter {
            while hull.len() >= start + 2
                && cross2(pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]], pts[k]) <= 0
            {
                hull.pop();
            }
            hull.push(k);
        }
        hull.pop();
    }
    hull
}

fn orient3(p: &[Vec<i128>], a: usize, b: usize, c: usize, d: usize) -> i128 {
    let n = cross(&sub(&p[b], &p[a]), &sub(&p[c], &p[a]));
    dot(&n, &sub(&p[d], &p[a]))
}

/// Incremental hull of a full-dimensional point set in `Z^3`. Returns
/// triangles oriented so that `(b - a) x (c - a)` points outward. Coplanar
/// triangles of one facet share a normal and are merged by the caller.
fn hull3(p: &[Vec<i128>]) -> Vec<[usize; 3]> {
    let i0 = 0;
    let i1 = (1..p.len())
        .find(|&k| p[k] != p[i0])
        .expect("full-dimensional input");
    let i2 = (0..p.len())
        .find(|&k| !is_zero(&cross(&sub(&p[i1], &p[i0]), &sub(&p[k], &p[i0]))))
        .expect("full-dimensional input");
    let i3 = (0..p.len())
        .find(|&k| orient3(p, i0, i1, i2, k) != 0)
        .expect("full-dimensional input");

    let mut faces: Vec<[usize; 3]> = Vec::new();
    for [a, b, c, opposite] in [
        [i0, i1, i2, i3],
        [i0, i1, i3, i2],
        [i0, i2, i3, i1],
        [i1, i2, i3, i0],
    ] {
        if orient3(p, a, b, c, opposite) > 0 {
            faces.push([a, c, b]);
        } else {
            faces.push([a, b, c]);
        }
    }
    let initial = [i0, i1, i2, i3];
    for k in 0..p.len() {
        if initial.contains(&k) {
            continue;
        }
        let visible: Vec<bool> = faces
            .iter()
            .map(|&[a, b, c]| orient3(p, a, b, c, k) > 0)
            .collect();
        if !visible.iter().any(|&v| v) {
            continue;
        }
        let mut edges = HashSet::new();
        for (f, _) in faces.iter().zip(&visible).filter(|(_, &v)| v) {
            edges.insert((f[0], f[1]));
            edges.insert((f[1], f[2]));
            edges.insert((f[2], f[0]));
        }
        let mut next: Vec<[usize; 3]> = faces
            .iter()
            .zip(&visible)
            .filter(|(_, &v)| !v)
            .map(|(f, _)| *f)
            .collect();
        let mut horizon: Vec<(usize, usize)> = edges
            .iter()
            .copied()
            .filter(|&(a, b)| !edges.contains(&(b, a)))
            .collect();
        horizon.sort_unstable();
        for (a, b) in horizon {
            next.push([a, b, k]);
        }
        faces = next;
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_facets(points: &[Vec<i64>]) -> Vec<(Vec<i64>, Vec<usize>)> {
        let mut f = facets(points).unwrap().facets;
        f.sort();
        f
    }

    #[test]
    fn square_with_interior_and_edge_points() {
        let pts = vec![
            vec![0, 0],
            vec![2, 0],
            vec![0, 2],
            vec![2, 2],
            vec![1, 1],
            vec![1, 0],
        ];
        let f = sorted_facets(&pts);
        assert_eq!(f.len(), 4);
        assert!(f.contains(&(vec![0, 1], vec![0, 1, 5])));
        assert!(f.contains(&(vec![-1, 0], vec![1, 3])));
    }

    #[test]
    fn cube_has_six_facets() {
        let mut pts = Vec::new();
        for x in 0..2 {
            for y in 0..2 {
                for z in 0..2 {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        pts.push(vec![0, 0, 0]);
        let f = facets(&pts).unwrap();
        assert!(f.lineality.is_empty());
        assert_eq!(f.facets.len(), 6);
        assert!(f.facets.iter().all(|(_, on)| on.len() >= 4));
    }

    #[test]
    fn planar_set_in_space() {
        let pts = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let f = facets(&pts).unwrap();
        assert_eq!(f.lineality, vec![vec![1, 1, 1]]);
        assert_eq!(f.facets.len(), 3);
        for (u, on) in &f.facets {
            assert_eq!(u.iter().sum::<i64>(), 0);
            assert_eq!(on.len(), 2);
        }
    }

    #[test]
    fn segment_in_space() {
        let pts = vec![vec![0, 0, 0], vec![2, 4, 6], vec![1, 2, 3]];
        let f = facets(&pts).unwrap();
        assert_eq!(f.lineality.len(), 2);
        let mut on: Vec<Vec<usize>> = f.facets.iter().map(|x| x.1.clone()).collect();
        on.sort();
        assert_eq!(on, vec![vec![0], vec![1]]);
    }
}
