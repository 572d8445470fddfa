//! Exact integer vector helpers. Inputs are bounded by `MAX_COORD` so that
//! every determinant used by the hull code fits in `i128`.

use crate::error::{Error, Result};

/// Largest accepted absolute value of an exponent entry in polytope code.
pub const MAX_COORD: i64 = 1 << 31;

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0, |g, &x| gcd(g, x))
}

/// Divides by the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[i128]) -> Result<Vec<i64>> {
    let g = gcd_all(v);
    let g = if g == 0 { 1 } else { g };
    v.iter()
        .map(|&x| i64::try_from(x / g).map_err(|_| Error::Overflow))
        .collect()
}

pub fn widen(v: &[i64]) -> Vec<i128> {
    v.iter().map(|&x| x as i128).collect()
}

pub fn sub(a: &[i128], b: &[i128]) -> Vec<i128> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn dot(a: &[i128], b: &[i128]) -> i128 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot64(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

pub fn cross(a: &[i128], b: &[i128]) -> [i128; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

pub fn is_zero(v: &[i128]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn check_bounds<'a, I: IntoIterator<Item = &'a [i64]>>(points: I) -> Result<()> {
    for p in points {
        if p.iter().any(|x| x.abs() > MAX_COORD) {
            return Err(Error::Overflow);
        }
    }
    Ok(())
}

/// Rank of a family of integer vectors, by fraction-free elimination.
pub fn rank(vectors: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = vectors.iter().map(|v| widen(v)).collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for k in 0..cols {
                    m[i][k] = a * m[i][k] - b * m[r][k];
                }
                let g = gcd_all(&m[i]);
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

/// Indices of a maximal linearly independent subfamily (greedy, in order).
pub fn independent_subset(vectors: &[Vec<i64>]) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current: Vec<Vec<i64>> = Vec::new();
    for (i, v) in vectors.iter().enumerate() {
        current.push(v.clone());
        if rank(&current) == current.len() {
            chosen.push(i);
        } else {
            current.pop();
        }
    }
    chosen
}
