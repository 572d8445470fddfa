use std::f64::consts::PI;

use coamoeba::coamoeba::{
    arg_map, line2_membership, log_map, polynomial_residual_bound, sample_plane_curve,
    solve_univariate, torus_distance, write_csv, CurveScheme, LineT2, Membership, TorusGrid,
    TorusPoint,
};
use coamoeba::{parse, TorusElement};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit_line() -> LineT2 {
    LineT2::new(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)).unwrap()
}

fn nonzero() -> impl Strategy<Value = Complex64> {
    (0.2f64..5.0, -PI..PI).prop_map(|(r, a)| Complex64::from_polar(r, a))
}

proptest! {
    #[test]
    fn rotation_equivariance(a in nonzero(), b in nonzero(), cc in nonzero(), p in (-PI..PI, -PI..PI)) {
        let line = LineT2::new(a, b, cc).unwrap();
        // X = a x / c turns the line into X + Y + 1
        let shifted = TorusPoint::new(vec![p.0 + (a / cc).arg(), p.1 + (b / cc).arg()]);
        let direct = line2_membership(&line, &TorusPoint::new(vec![p.0, p.1])).unwrap();
        prop_assert_eq!(direct, line2_membership(&unit_line(), &shifted).unwrap());
    }

    #[test]
    fn polar_factorization(z in prop::collection::vec(nonzero(), 1..5)) {
        let x = TorusElement::new(z.clone()).unwrap();
        let (r, theta) = (log_map(&x), arg_map(&x));
        for (k, w) in z.iter().enumerate() {
            let back = Complex64::from_polar(r[k].exp(), theta.angles()[k]);
            prop_assert!((back - w).norm() <= 1e-12 * w.norm().max(1.0));
        }
    }

    #[test]
    fn distance_is_translation_invariant(p in (-PI..PI, -PI..PI), q in (-PI..PI, -PI..PI), s in (-10.0f64..10.0, -10.0f64..10.0)) {
        let (p, q) = (TorusPoint::new(vec![p.0, p.1]), TorusPoint::new(vec![q.0, q.1]));
        let d = torus_distance(&p, &q).unwrap();
        let e = torus_distance(&p.translate(&[s.0, s.1]), &q.translate(&[s.0, s.1])).unwrap();
        prop_assert!((d - e).abs() < 1e-9);
        prop_assert!(d <= PI + 1e-12);
    }
}

#[test]
fn membership_examples() {
    let l = unit_line();
    let at = |a: f64, b: f64| line2_membership(&l, &TorusPoint::new(vec![a, b])).unwrap();
    assert_eq!(at(PI, 0.0), Membership::Vertex);
    assert_eq!(at(0.0, PI), Membership::Vertex);
    assert_eq!(at(PI, PI), Membership::Vertex);
    assert_eq!(at(0.0, 0.0), Membership::Outside);
    assert_eq!(at(3.0 * PI / 4.0, -PI / 2.0), Membership::Interior);
}

#[test]
fn interior_example_is_near_the_sampled_cloud() {
    let f = parse("x+y+1", &["x", "y"]).unwrap();
    let s = sample_plane_curve(&f, &CurveScheme::with_budget(100_000)).unwrap();
    let grid = TorusGrid::new(&s.cloud, 0.05);
    assert!(grid.nearest(&[3.0 * PI / 4.0, -PI / 2.0]) < 1e-2);
}

#[test]
fn sampler_is_sound_at_every_budget() {
    let f = parse("x+y+1", &["x", "y"]).unwrap();
    for budget in [500, 5_000, 50_000] {
        let s = sample_plane_curve(&f, &CurveScheme::with_budget(budget)).unwrap();
        for p in s.cloud.iter() {
            let m = line2_membership(&unit_line(), &TorusPoint::new(p.to_vec())).unwrap();
            assert!(m.in_coamoeba(), "{p:?} classified {m:?} at budget {budget}");
        }
    }
}

#[test]
fn sampled_points_lie_on_the_curve() {
    let f = parse("x^2*y + 3*y^-1 - (2+1i)*x + 1", &["x", "y"]).unwrap();
    let s = sample_plane_curve(&f, &CurveScheme::with_budget(4_000)).unwrap();
    for k in (0..s.cloud.len()).step_by(37) {
        let (rx, ry) = s.moduli(k);
        let p = s.cloud.point(k);
        let x = TorusElement::new(vec![
            Complex64::from_polar(rx, p[0]),
            Complex64::from_polar(ry, p[1]),
        ])
        .unwrap();
        let scale: f64 = f
            .terms()
            .iter()
            .map(|t| {
                let e = t.exponent().entries();
                t.coefficient().norm() * rx.powi(e[0] as i32) * ry.powi(e[1] as i32)
            })
            .sum();
        assert!(f.evaluate(&x).unwrap().norm() <= 1e-7 * scale);
    }
}

#[test]
fn root_residuals_on_random_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let d = rng.gen_range(1..=12);
        let coeffs: Vec<Complex64> = (0..=d)
            .map(|_| Complex64::from_polar(rng.gen_range(0.1..10.0), rng.gen_range(-PI..PI)))
            .collect();
        let roots = solve_univariate(&coeffs).unwrap();
        assert_eq!(roots.len(), d);
        for r in roots {
            let v = coeffs.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * r + a);
            assert!(v.norm() <= polynomial_residual_bound(&coeffs, r));
        }
    }
}

#[test]
fn csv_layout() {
    let f = parse("x+y+1", &["x", "y"]).unwrap();
    let s = sample_plane_curve(&f, &CurveScheme::with_budget(300)).unwrap();
    let mut buf = Vec::new();
    write_csv(&s.cloud, &mut buf, false).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("theta_1,theta_2"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), s.cloud.len());
    for row in rows {
        for v in row.split(',') {
            let v: f64 = v.parse().unwrap();
            assert!(v > -PI && v <= PI);
        }
    }
}

#[test]
fn sampling_is_deterministic() {
    let f = parse("x^2 + y^2 + x*y + 1", &["x", "y"]).unwrap();
    let a = sample_plane_curve(&f, &CurveScheme::with_budget(20_000)).unwrap();
    let b = sample_plane_curve(&f, &CurveScheme::with_budget(20_000)).unwrap();
    assert_eq!(a.cloud.as_flat(), b.cloud.as_flat());
}
