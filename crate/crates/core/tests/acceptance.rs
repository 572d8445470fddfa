//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::Instant;

use coamoeba::coamoeba::{
    circle_distance, classify_reduced, line2_membership, sample_plane_curve, CurveScheme, LineT2,
    Membership, PointCloud, TorusGrid, TorusPoint,
};
use coamoeba::lines3d::{
    coamoeba_segments, contour_image, is_cocircular, lines_intersect, phase_limit_lines,
    sample_membrane, sample_root_circle, HalfPlane, LineInP3, MembraneOptions, RootP1,
};
use coamoeba::phase_limit::{degenerate, predicted_limit, windowed_distance, DEFAULT_WINDOW};
use coamoeba::polytope::{newton_polytope, normal_fan};
use coamoeba::{parse, ExponentVector, LaurentPolynomial, TorusElement, WeightVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = (bool, String);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn real_line_roots() -> [RootP1; 4] {
    [
        RootP1::Infinity,
        RootP1::Finite(c(-0.5, 0.0)),
        RootP1::Finite(c(0.0, 0.0)),
        RootP1::Finite(c(1.5, 0.0)),
    ]
}

fn symmetric_roots() -> [RootP1; 4] {
    let w = Complex64::from_polar(1.0, 2.0 * PI / 3.0);
    [
        RootP1::Infinity,
        RootP1::Finite(c(1.0, 0.0)),
        RootP1::Finite(w),
        RootP1::Finite(w * w),
    ]
}

fn linf(p: &[f64], q: &[f64]) -> f64 {
    p.iter()
        .zip(q)
        .map(|(a, b)| circle_distance(*a, *b))
        .fold(0.0, f64::max)
}

fn c1() -> Outcome {
    let start = Instant::now();
    let f = parse("x+y+1", &["x", "y"]).unwrap();
    let s = sample_plane_curve(&f, &CurveScheme::with_budget(100_000)).unwrap();
    let one = c(1.0, 0.0);
    let line = LineT2::new(one, one, one).unwrap();
    let bad = s
        .cloud
        .iter()
        .filter(|p| {
            !line2_membership(&line, &TorusPoint::new(p.to_vec()))
                .unwrap()
                .in_coamoeba()
        })
        .count();
    let grid = TorusGrid::new(&s.cloud, 0.05);
    let mut worst: f64 = 0.0;
    let mut probes = 0;
    for i in 0..100 {
        for j in 0..100 {
            let a = -PI + 2.0 * PI * (i as f64 + 0.5) / 100.0;
            let b = -PI + 2.0 * PI * (j as f64 + 0.5) / 100.0;
            if (a - b).abs() >= PI + 0.05 {
                probes += 1;
                worst = worst.max(grid.nearest(&[a, b]));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = bad == 0 && worst <= 0.05 && secs < 10.0 && s.cloud.len() >= 100_000;
    (
        ok,
        format!(
            "points={} outside={bad} probes={probes} worst={worst:.4} time={secs:.2}s",
            s.cloud.len()
        ),
    )
}

fn c2() -> Outcome {
    let line = LineInP3::from_roots(real_line_roots()).unwrap();
    let img = contour_image(&line, 1e-3, 400).unwrap();
    let expected = [[PI, PI, PI], [0.0, PI, PI], [0.0, 0.0, PI], [0.0, 0.0, 0.0]];
    let mut worst: f64 = 0.0;
    let mut pieces = 0;
    for (piece, want) in img.real_segments().zip(expected) {
        pieces += 1;
        for k in piece.range.clone() {
            worst = worst.max(linf(img.cloud.point(k), &want));
        }
    }
    (
        pieces == 4 && worst <= 1e-6,
        format!("real pieces={pieces} worst={worst:.2e}"),
    )
}

fn c3() -> Outcome {
    let roots = symmetric_roots();
    let line = LineInP3::from_roots(roots).unwrap();
    let z: Vec<Complex64> = roots[1..].iter().map(|r| r.finite().unwrap()).collect();
    // distance to h_i computed directly from the roots
    let dist = |i: usize, p: &[f64]| -> f64 {
        if i == 0 {
            let q: Vec<f64> = p
                .iter()
                .map(|a| p[0] + (a - p[0] + PI).rem_euclid(2.0 * PI) - PI)
                .collect();
            let (lo, hi) = q
                .iter()
                .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &v| {
                    (l.min(v), h.max(v))
                });
            (hi - lo) / 2.0
        } else {
            (0..3)
                .filter(|&j| j != i - 1)
                .map(|j| circle_distance(p[j], (z[i - 1] - z[j]).arg()))
                .fold(0.0, f64::max)
        }
    };
    let mut ok = true;
    let mut parts = Vec::new();
    for i in 0..4 {
        let d: Vec<f64> = [1e-1, 1e-2, 1e-3]
            .iter()
            .map(|&eps| {
                let cloud = sample_root_circle(&line, i, eps, 2000).unwrap();
                cloud.iter().map(|p| dist(i, p)).fold(0.0, f64::max)
            })
            .collect();
        ok &= d[0] > d[1] && d[1] > d[2] && d[2] < 1e-2;
        parts.push(format!("h{i}=[{:.1e},{:.1e},{:.1e}]", d[0], d[1], d[2]));
    }
    (ok, parts.join(" "))
}

fn c4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let check = |roots: [RootP1; 4]| -> (bool, bool) {
        let co = is_cocircular(&roots).unwrap();
        let h = phase_limit_lines(&LineInP3::from_roots(roots).unwrap()).unwrap();
        (co, !lines_intersect(&h).is_empty())
    };
    let (real_co, real_meet) = check(real_line_roots());
    let real_pairs = lines_intersect(
        &phase_limit_lines(&LineInP3::from_roots(real_line_roots()).unwrap()).unwrap(),
    );
    let sym_pairs = lines_intersect(
        &phase_limit_lines(&LineInP3::from_roots(symmetric_roots()).unwrap()).unwrap(),
    );
    let (sym_co, _) = check(symmetric_roots());
    let mut agree = 0;
    let mut truth_ok = 0;
    for k in 0..200 {
        let cocircular = k % 2 == 0;
        let with_infinity = k % 4 < 2 && rng.gen_bool(0.5);
        let roots: [RootP1; 4] = if cocircular {
            if with_infinity {
                let (p, d) = (
                    c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
                    Complex64::from_polar(1.0, rng.gen_range(0.0..PI)),
                );
                let mut r = [RootP1::Infinity; 4];
                for slot in r.iter_mut().skip(1) {
                    *slot = RootP1::Finite(p + d * rng.gen_range(-3.0..3.0));
                }
                r.swap(0, rng.gen_range(0..4));
                r
            } else {
                let center = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                let radius = rng.gen_range(0.3..3.0);
                [0; 4].map(|_| {
                    RootP1::Finite(center + Complex64::from_polar(radius, rng.gen_range(-PI..PI)))
                })
            }
        } else {
            let mut r = [0; 4]
                .map(|_| RootP1::Finite(c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))));
            if with_infinity {
                r[rng.gen_range(0..4)] = RootP1::Infinity;
            }
            r
        };
        let (co, meet) = check(roots);
        agree += usize::from(co == meet);
        truth_ok += usize::from(co == cocircular);
    }
    let ok =
        real_co && real_meet && !sym_co && sym_pairs.is_empty() && agree == 200 && truth_ok == 200;
    (
        ok,
        format!(
            "real: cocircular={real_co} pairs={real_pairs:?}; symmetric: cocircular={sym_co} pairs={}; random agree={agree}/200 construction={truth_ok}/200",
            sym_pairs.len()
        ),
    )
}

fn c5() -> Outcome {
    let start = Instant::now();
    let line = LineInP3::from_roots(symmetric_roots()).unwrap();
    let segs = coamoeba_segments(&line).unwrap();
    let mut per_direction = [0usize; 4];
    let mut parallel = true;
    for s in &segs {
        per_direction[s.direction_index] += 1;
        // every point differs from the first only along the direction
        let p0 = s.point(0.0);
        for k in 1..=20 {
            let p = s.point(k as f64 / 20.0);
            let moved: Vec<f64> = (0..3)
                .map(|j| ((p[j] - p0[j] + PI).rem_euclid(2.0 * PI)) - PI)
                .collect();
            parallel &= match s.direction_index {
                0 => (moved[0] - moved[1]).abs() < 1e-12 && (moved[1] - moved[2]).abs() < 1e-12,
                i => (0..3)
                    .filter(|&j| j != i - 1)
                    .all(|j| moved[j].abs() < 1e-12),
            };
        }
    }
    let cloud = sample_membrane(&line, &MembraneOptions::new(1_000_000, HalfPlane::Both)).unwrap();
    let grid = TorusGrid::new(&cloud, 0.03);
    let mut worst: f64 = 0.0;
    for s in &segs {
        for k in 0..400 {
            let p = s.point((k as f64 + 0.5) / 400.0);
            worst = worst.max(grid.nearest(&p));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok =
        segs.len() == 12 && per_direction == [3; 4] && parallel && worst <= 0.03 && secs < 60.0;
    (
        ok,
        format!(
            "segments={} per_direction={per_direction:?} parallel={parallel} membrane={} worst={worst:.4} time={secs:.1}s",
            segs.len(),
            cloud.len()
        ),
    )
}

fn random_polynomial(rng: &mut ChaCha8Rng, n: usize) -> LaurentPolynomial {
    let count = rng.gen_range(1..=10usize.min(7usize.pow(n as u32)));
    let mut seen = BTreeSet::new();
    let mut terms = Vec::new();
    while terms.len() < count {
        let e: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..=3)).collect();
        if seen.insert(e.clone()) {
            let z = Complex64::from_polar(rng.gen_range(0.1..3.0), rng.gen_range(-PI..PI));
            terms.push((z, ExponentVector::new(e)));
        }
    }
    LaurentPolynomial::new(n, terms).unwrap()
}

fn c6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut exact, mut fan_checked, mut fan_ok) = (0, 0, 0);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=4);
        let f = random_polynomial(&mut rng, n);
        let w = WeightVector::new((0..n).map(|_| rng.gen_range(-5..=5)).collect());
        let got = f.initial_form(&w).unwrap();
        // brute force: evaluate every pairing and keep the minimizers
        let pairs: Vec<i64> = f
            .terms()
            .iter()
            .map(|t| {
                t.exponent()
                    .entries()
                    .iter()
                    .zip(w.entries())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        let min = *pairs.iter().min().unwrap();
        let want: Vec<(Vec<i64>, Complex64)> = f
            .terms()
            .iter()
            .zip(&pairs)
            .filter(|(_, &p)| p == min)
            .map(|(t, _)| (t.exponent().entries().to_vec(), t.coefficient()))
            .collect();
        let have: Vec<(Vec<i64>, Complex64)> = got
            .terms()
            .iter()
            .map(|t| (t.exponent().entries().to_vec(), t.coefficient()))
            .collect();
        let mut want_sorted = want.clone();
        want_sorted.sort_by(|a, b| a.0.cmp(&b.0));
        let mut have_sorted = have;
        have_sorted.sort_by(|a, b| a.0.cmp(&b.0));
        exact += usize::from(want_sorted == have_sorted);
        if n <= 3 {
            fan_checked += 1;
            let fan = normal_fan(&newton_polytope(&f).unwrap()).unwrap();
            let maximal = fan.cone_of(&w).unwrap().cone.is_maximal();
            fan_ok += usize::from(maximal == (want.len() == 1));
        }
    }
    (
        exact == 1000 && fan_ok == fan_checked,
        format!("initial forms exact={exact}/1000 monomial<->maximal={fan_ok}/{fan_checked}"),
    )
}

fn c7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut pass = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=4);
        let f = random_polynomial(&mut rng, n);
        let w = WeightVector::new((0..n).map(|_| rng.gen_range(-5..=5)).collect());
        let t: f64 = 1.0 - rng.gen_range(0.0..1.0);
        let x = TorusElement::new(
            (0..n)
                .map(|_| Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-PI..PI)))
                .collect(),
        )
        .unwrap();
        // t^w x coordinate by coordinate
        let scaled = TorusElement::new(
            x.coordinates()
                .iter()
                .zip(w.entries())
                .map(|(z, &k)| z * t.powi(k as i32))
                .collect(),
        )
        .unwrap();
        let lhs = f.deform(&w, t).unwrap().evaluate(&x).unwrap();
        let rhs = f.evaluate(&scaled).unwrap();
        let err = (lhs - rhs).norm() / (1.0 + rhs.norm());
        worst = worst.max(err);
        pass += usize::from(err <= 1e-9);
    }
    (
        pass == 1000,
        format!("instances={pass}/1000 worst relative error={worst:.2e}"),
    )
}

fn c8() -> Outcome {
    let f = parse("x+y+1", &["x", "y"]).unwrap();
    let ts = [1e-1, 1e-2, 1e-3];
    let scheme = CurveScheme::with_budget(100_000);
    let mut ok = true;
    let mut parts = Vec::new();
    let mut lines = Vec::new();
    for w in [[1, 0], [0, 1], [-1, -1]] {
        let w = WeightVector::new(w.to_vec());
        let fams = predicted_limit(&f, &w).unwrap();
        let fibers = degenerate(&f, &w, &ts, &scheme).unwrap();
        let d: Vec<f64> = fibers
            .iter()
            .map(|fb| windowed_distance(fb, &fams, DEFAULT_WINDOW).unwrap_or(f64::INFINITY))
            .collect();
        ok &= d[0] > d[1] && d[1] > d[2] && d[2] < 2e-2;
        parts.push(format!(
            "w={:?}: [{:.1e},{:.1e},{:.1e}]",
            w.entries(),
            d[0],
            d[1],
            d[2]
        ));
        for h in fams {
            lines.push((h.normal, h.offsets));
        }
    }
    lines.sort_by(|a, b| a.0.cmp(&b.0));
    // alpha = pi, beta = pi, alpha - beta = pi
    let boundary = vec![
        (vec![0, 1], vec![PI]),
        (vec![1, -1], vec![PI]),
        (vec![1, 0], vec![PI]),
    ];
    let exact = lines == boundary;
    // every point of each predicted line is on the closure boundary of the x + y + 1 coamoeba
    let mut on_boundary = true;
    for (normal, offsets) in &lines {
        for k in 0..200 {
            let s = -PI + 2.0 * PI * k as f64 / 200.0;
            let p = match normal.as_slice() {
                [0, 1] => [s, offsets[0]],
                [1, 0] => [offsets[0], s],
                _ => [s, s - offsets[0]],
            };
            let m = classify_reduced(p[0], p[1], 1e-12);
            on_boundary &= matches!(m, Membership::ClosureBoundary | Membership::Vertex);
        }
    }
    ok &= exact && on_boundary;
    (
        ok,
        format!(
            "{} codual lines exact={exact} on closure boundary={on_boundary}",
            parts.join(" ")
        ),
    )
}

fn c9() -> Outcome {
    let line = LineInP3::from_roots(real_line_roots()).unwrap();
    let upper = sample_membrane(&line, &MembraneOptions::new(100_000, HalfPlane::Upper)).unwrap();
    let outside = upper
        .iter()
        .filter(|p| {
            !line
                .in_quadrilateral_hull(&[p[0], p[1], p[2]], 1e-9)
                .unwrap()
        })
        .count();
    let symmetry = |seed: Option<u64>| {
        let mut options = MembraneOptions::new(100_000, HalfPlane::Both);
        options.jitter_seed = seed;
        let full = sample_membrane(&line, &options).unwrap();
        let negated: PointCloud = full.negated();
        (
            full.len(),
            TorusGrid::new(&full, 0.02).directed_hausdorff_from(&negated),
        )
    };
    let (n_grid, h_grid) = symmetry(None);
    let (n_jit, h_jit) = symmetry(Some(9));
    (
        outside == 0 && h_grid <= 0.02 && h_jit <= 0.02,
        format!(
            "upper points={} outside hull={outside}; negation hausdorff grid={h_grid:.4} ({n_grid} points) jittered={h_jit:.4} ({n_jit} points)",
            upper.len()
        ),
    )
}

fn main() {
    let criteria: [fn() -> Outcome; 9] = [c1, c2, c3, c4, c5, c6, c7, c8, c9];
    let mut failed = 0;
    for (k, run) in criteria.iter().enumerate() {
        let (ok, msg) = run();
        failed += usize::from(!ok);
        println!(
            "criterion {}: {} {msg}",
            k + 1,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
