//! Univariate complex root finding: Aberth-Ehrlich simultaneous iteration,
//! Newton polishing, and a deflation fallback for stubborn roots.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 500;
const RESIDUAL_FACTOR: f64 = 1e-8;

/// `solve_univariate`: all roots, with multiplicity, of
/// `c[0] + c[1] z + ... + c[d] z^d`.
///
/// Every returned root satisfies `|p(r)| <= 1e-8 * sum|c_i| * max(1,|r|)^d`;
/// otherwise the call fails with [`Error::NonConvergence`].
pub fn solve_univariate(coefficients: &[Complex64]) -> Result<Vec<Complex64>> {
    if coefficients
        .iter()
        .any(|c| !(c.re.is_finite() && c.im.is_finite()))
    {
        return Err(Error::InvalidArgument("coefficients must be finite".into()));
    }
    let d = coefficients.len().saturating_sub(1);
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    if coefficients[d] == Complex64::new(0.0, 0.0) {
        return Err(Error::InvalidArgument("leading coefficient is zero".into()));
    }
    let zeros = coefficients.iter().take_while(|c| c.norm() == 0.0).count();
    let reduced = &coefficients[zeros..];
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    roots.extend(match reduced.len() - 1 {
        0 => Vec::new(),
        1 => vec![-reduced[0] / reduced[1]],
        2 => quadratic(reduced),
        _ => aberth(reduced)?,
    });
    let polished: Vec<Complex64> = roots.iter().map(|&r| polish(coefficients, r)).collect();
    let mut worst: f64 = 0.0;
    for &r in &polished {
        worst = worst.max(residual_ratio(coefficients, r));
    }
    if worst <= 1.0 {
        return Ok(polished);
    }
    let fallback = deflation(reduced, &roots[zeros..]);
    let mut out = vec![Complex64::new(0.0, 0.0); zeros];
    out.extend(fallback.into_iter().map(|r| polish(coefficients, r)));
    let worst = out
        .iter()
        .map(|&r| residual_ratio(coefficients, r))
        .fold(0.0, f64::max);
    if worst <= 1.0 {
        Ok(out)
    } else {
        Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            residual: worst,
        })
    }
}

/// The admissible residual `1e-8 * sum|c_i| * max(1,|r|)^d` at `r`.
pub fn polynomial_residual_bound(coefficients: &[Complex64], r: Complex64) -> f64 {
    let d = coefficients.len() as i32 - 1;
    let scale: f64 = coefficients.iter().map(|c| c.norm()).sum();
    RESIDUAL_FACTOR * scale * r.norm().max(1.0).powi(d)
}

fn residual_ratio(c: &[Complex64], r: Complex64) -> f64 {
    let bound = polynomial_residual_bound(c, r);
    let v = horner(c, r).0.norm();
    if v == 0.0 {
        0.0
    } else {
        v / bound
    }
}

/// Value and derivative by Horner's rule.
fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn quadratic(c: &[Complex64]) -> Vec<Complex64> {
    let (a, b, cc) = (c[2], c[1], c[0]);
    let disc = (b * b - 4.0 * a * cc).sqrt();
    // choose the sign that avoids cancellation
    let q = if (b.conj() * disc).re >= 0.0 {
        -(b + disc) / 2.0
    } else {
        -(b - disc) / 2.0
    };
    if q.norm() == 0.0 {
        return vec![Complex64::new(0.0, 0.0); 2];
    }
    vec![q / a, cc / q]
}

fn aberth(c: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = c.len() - 1;
    let radius = (c[0].norm() / c[d].norm()).powf(1.0 / d as f64);
    let radius = if radius.is_finite() && radius > 0.0 {
        radius
    } else {
        1.0
    };
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(radius, 0.4 + std::f64::consts::TAU * k as f64 / d as f64))
        .collect();
    let mut done = vec![false; d];
    for _ in 0..MAX_ITERATIONS {
        let mut moved = false;
        for i in 0..d {
            if done[i] {
                continue;
            }
            let (p, dp) = horner(c, z[i]);
            if p.norm() == 0.0 {
                done[i] = true;
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..d)
                .filter(|&j| j != i)
                .map(|j| {
                    let diff = z[i] - z[j];
                    if diff.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        1.0 / diff
                    }
                })
                .sum();
            let step = ratio / (1.0 - ratio * sum);
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            z[i] -= step;
            if step.norm() <= 4.0 * f64::EPSILON * z[i].norm().max(f64::MIN_POSITIVE) {
                done[i] = true;
            } else {
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    Ok(z)
}

/// A few Newton steps on the original polynomial, kept only if they reduce
/// the residual.
fn polish(c: &[Complex64], mut r: Complex64) -> Complex64 {
    let mut best = horner(c, r).0.norm();
    for _ in 0..3 {
        let (p, dp) = horner(c, r);
        if p.norm() == 0.0 || dp.norm() == 0.0 {
            break;
        }
        let next = r - p / dp;
        let v = horner(c, next).0.norm();
        if !(v < best) {
            break;
        }
        best = v;
        r = next;
    }
    r
}

/// Sequential Newton-with-deflation, seeded by the given approximations.
fn deflation(c: &[Complex64], seeds: &[Complex64]) -> Vec<Complex64> {
    let mut q = c.to_vec();
    let mut out = Vec::with_capacity(c.len() - 1);
    let mut order: Vec<Complex64> = seeds.to_vec();
    order.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    for &seed in order.iter() {
        if q.len() < 2 {
            break;
        }
        let mut r = seed;
        for _ in 0..100 {
            let (p, dp) = horner(&q, r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            r -= step;
            if step.norm() <= f64::EPSILON * r.norm() {
                break;
            }
        }
        out.push(r);
        // synthetic division by (z - r)
        let n = q.len() - 1;
        let mut next = vec![Complex64::new(0.0, 0.0); n];
        let mut carry = q[n];
        for k in (0..n).rev() {
            next[k] = carry;
            carry = q[k] + carry * r;
        }
        q = next;
    }
    out
}
