//! Phase limit sets of hypersurfaces: codual hyperplanes coming from edges of
//! the Newton polytope, and sampled toric degenerations.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::coamoeba::{
    circle_distance, sample_plane_curve, solve_univariate, wrap, CurveSample, CurveScheme, TAU,
};
use crate::error::{Error, Result};
use crate::laurent::{default_variables, LaurentPolynomial, LaurentTerm, WeightVector};
use crate::polytope::lattice::gcd_all;
use crate::polytope::{logarithmic_limit_directions, newton_polytope, normal_fan, Cone};

/// Offsets closer than this on the circle are merged.
pub const OFFSET_MERGE_TOL: f64 = 1e-9;

/// The union of the translates `{theta : <normal, theta> = offset}` over
/// `offsets`. `multiplicity` counts the roots that produced the family (1
/// for binomials).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CodualHyperplane {
    pub rank: usize,
    pub normal: Vec<i64>,
    pub offsets: Vec<f64>,
    pub multiplicity: usize,
}

impl CodualHyperplane {
    /// Canonical form: primitive normal whose first nonzero entry is
    /// positive, offsets wrapped and sorted.
    fn canonical(normal: Vec<i64>, offsets: Vec<f64>, multiplicity: usize) -> Self {
        let flip = normal.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0);
        let (normal, mut offsets): (Vec<i64>, Vec<f64>) = if flip {
            (
                normal.iter().map(|x| -x).collect(),
                offsets.iter().map(|o| wrap(-o)).collect(),
            )
        } else {
            (normal, offsets.into_iter().map(wrap).collect())
        };
        offsets.sort_by(f64::total_cmp);
        CodualHyperplane {
            rank: normal.len(),
            normal,
            offsets,
            multiplicity,
        }
    }

    /// `<normal, theta>` reduced to `(-pi, pi]`.
    pub fn pairing(&self, theta: &[f64]) -> f64 {
        wrap(
            self.normal
                .iter()
                .zip(theta)
                .map(|(&v, t)| v as f64 * t)
                .sum(),
        )
    }

    /// Torus distance (max of circle distances) from `theta` to the family.
    pub fn distance(&self, theta: &[f64]) -> f64 {
        let p = self.pairing(theta);
        let l1: i64 = self.normal.iter().map(|v| v.abs()).sum();
        self.offsets
            .iter()
            .map(|&o| circle_distance(p, o))
            .fold(f64::INFINITY, f64::min)
            / l1 as f64
    }

    pub fn contains(&self, theta: &[f64], tol: f64) -> bool {
        self.distance(theta) <= tol
    }

    /// Text such as `theta_1 - theta_2 = 3.141592653590`.
    pub fn to_text(&self) -> String {
        let vars: Vec<String> = (1..=self.rank).map(|k| format!("theta_{k}")).collect();
        let lhs = pairing_text(&self.normal, &vars);
        let values: Vec<String> = self.offsets.iter().map(|o| format!("{o:.12}")).collect();
        let mult = if self.multiplicity > 1 {
            format!(" (multiplicity {})", self.multiplicity)
        } else {
            String::new()
        };
        format!("{lhs} = {}{mult}", values.join(" | "))
    }
}

fn pairing_text(v: &[i64], vars: &[String]) -> String {
    let mut s = String::new();
    for (k, &c) in v.iter().enumerate() {
        if c == 0 {
            continue;
        }
        s.push_str(match (s.is_empty(), c < 0) {
            (true, false) => "",
            (true, true) => "-",
            (false, false) => " + ",
            (false, true) => " - ",
        });
        if c.abs() != 1 {
            s.push_str(&format!("{}*", c.abs()));
        }
        s.push_str(&vars[k]);
    }
    s
}

/// Distance to a union of families.
pub fn distance_to_union(families: &[CodualHyperplane], theta: &[f64]) -> f64 {
    families
        .iter()
        .map(|h| h.distance(theta))
        .fold(f64::INFINITY, f64::min)
}

/// `binomial_coamoeba(t1, t2)`: the solutions of `c_a x^a + c_b x^b = 0` in
/// `U^n`, as the `g` translates of `<v, theta> = (pi + arg(c_b / c_a) + 2 pi
/// k) / g` where `a - b = g v`.
pub fn binomial_coamoeba(t1: &LaurentTerm, t2: &LaurentTerm) -> Result<CodualHyperplane> {
    let (a, b) = (t1.exponent(), t2.exponent());
    if a.rank() != b.rank() {
        return Err(Error::RankMismatch {
            expected: a.rank(),
            found: b.rank(),
        });
    }
    if a == b {
        return Err(Error::InvalidArgument(
            "binomial needs distinct exponents".into(),
        ));
    }
    let d: Vec<i128> = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(&x, &y)| x as i128 - y as i128)
        .collect();
    let g = gcd_all(&d);
    let v: Vec<i64> = d
        .iter()
        .map(|x| i64::try_from(x / g).map_err(|_| Error::Overflow))
        .collect::<Result<_>>()?;
    let phi = PI + (t2.coefficient() / t1.coefficient()).arg();
    let offsets = (0..g).map(|k| (phi + TAU * k as f64) / g as f64).collect();
    Ok(CodualHyperplane::canonical(v, offsets, 1))
}

/// Coamoeba of a polynomial whose Newton polytope is a segment: writing it
/// as `x^m p(x^u)` with `u` primitive, one family `{<u, theta> = arg r}` per
/// root `r` of `p`, merged by offset with multiplicity.
pub fn segment_coamoeba(g: &LaurentPolynomial) -> Result<Vec<CodualHyperplane>> {
    if g.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    if g.is_monomial() {
        return Ok(Vec::new());
    }
    let poly = newton_polytope(g)?;
    if poly.dimension() != 1 {
        return Err(Error::InvalidArgument(format!(
            "Newton polytope has dimension {}, expected a segment",
            poly.dimension()
        )));
    }
    let (lo, hi) = (
        &poly.vertices()[0],
        &poly.vertices()[poly.vertices().len() - 1],
    );
    let d: Vec<i128> = hi
        .entries()
        .iter()
        .zip(lo.entries())
        .map(|(&x, &y)| x as i128 - y as i128)
        .collect();
    let len = gcd_all(&d);
    let u: Vec<i128> = d.iter().map(|x| x / len).collect();
    let degree = usize::try_from(len).map_err(|_| Error::Overflow)?;
    if degree > crate::coamoeba::MAX_UNIVARIATE_DEGREE {
        return Err(Error::InvalidArgument(format!(
            "edge of lattice length {len} is too long"
        )));
    }
    let mut coeffs = vec![Complex64::new(0.0, 0.0); degree + 1];
    for term in g.terms() {
        let e = term.exponent().entries();
        let k = (0..e.len())
            .find(|&j| u[j] != 0)
            .map(|j| (e[j] as i128 - lo.entries()[j] as i128) / u[j])
            .unwrap();
        coeffs[k as usize] += term.coefficient();
    }
    let roots = solve_univariate(&coeffs)?;
    let normal: Vec<i64> = u.iter().map(|&x| x as i64).collect();
    let mut families: Vec<(f64, usize)> = Vec::new();
    for r in roots {
        let a = r.arg();
        match families
            .iter_mut()
            .find(|(o, _)| circle_distance(*o, a) <= OFFSET_MERGE_TOL)
        {
            Some(f) => f.1 += 1,
            None => families.push((a, 1)),
        }
    }
    let mut out: Vec<CodualHyperplane> = families
        .into_iter()
        .map(|(o, m)| CodualHyperplane::canonical(normal.clone(), vec![o], m))
        .collect();
    out.sort_by(|a, b| a.offsets[0].total_cmp(&b.offsets[0]));
    Ok(out)
}

/// Codual families contributed by one edge of the Newton polytope.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EdgeLimit {
    pub cone: Cone,
    #[serde(serialize_with = "as_text")]
    pub initial_form: LaurentPolynomial,
    pub families: Vec<CodualHyperplane>,
}

fn as_text<S: serde::Serializer>(
    f: &LaurentPolynomial,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_text(&default_variables(f.rank())))
}

/// `hypersurface_phase_limit(f)`: for every edge of the Newton polytope, its
/// normal cone, the initial form there and the codual families.
pub fn hypersurface_phase_limit(f: &LaurentPolynomial) -> Result<Vec<EdgeLimit>> {
    if f.rank() > 3 {
        return Err(Error::UnsupportedRank(f.rank()));
    }
    if f.is_monomial() {
        return Err(Error::Degenerate("a monomial has no edges".into()));
    }
    let fan = normal_fan(&newton_polytope(f)?)?;
    let mut out = Vec::new();
    for fc in fan.cones() {
        if fc.face_dimension != 1 || fc.cone.dimension() == 0 {
            continue;
        }
        let g = f.initial_form(&fc.cone.interior_point())?;
        out.push(EdgeLimit {
            cone: fc.cone.clone(),
            families: segment_coamoeba(&g)?,
            initial_form: g,
        });
    }
    Ok(out)
}

/// The predicted limit `coA(in_w f)` when `in_w f` is supported on a
/// segment (empty for a monomial).
pub fn predicted_limit(f: &LaurentPolynomial, w: &WeightVector) -> Result<Vec<CodualHyperplane>> {
    if w.is_zero() {
        return Err(Error::InvalidArgument("weight must be nonzero".into()));
    }
    segment_coamoeba(&f.initial_form(w)?)
}

/// One fiber `t^{-w} X` of the degeneration.
#[derive(Clone, Debug)]
pub struct DegenerationFiber {
    pub t: f64,
    pub sample: CurveSample,
}

/// `degenerate(f, w, ts, scheme)`: samples `V(f(t))` for each `t`; its points
/// `x` correspond to the points `t^w x` of `V(f)` with the same arguments.
pub fn degenerate(
    f: &LaurentPolynomial,
    w: &WeightVector,
    ts: &[f64],
    scheme: &CurveScheme,
) -> Result<Vec<DegenerationFiber>> {
    if f.rank() != 2 {
        return Err(Error::UnsupportedRank(f.rank()));
    }
    if w.rank() != 2 {
        return Err(Error::RankMismatch {
            expected: 2,
            found: w.rank(),
        });
    }
    if w.is_zero() {
        return Err(Error::InvalidArgument("weight must be nonzero".into()));
    }
    ts.par_iter()
        .map(|&t| {
            let ft = f.normalized_deform(w, t)?;
            let mut sample = sample_plane_curve(&ft, scheme)?;
            sample.cloud.set_provenance(format!(
                "degeneration fiber t={t} w={:?} of {}",
                w.entries(),
                sample.cloud.provenance()
            ));
            Ok(DegenerationFiber { t, sample })
        })
        .collect()
}

/// Moduli window used by [`windowed_distance`] by default.
pub const DEFAULT_WINDOW: (f64, f64) = (0.5, 2.0);

/// Largest distance to the union of `families` over the fiber points whose
/// moduli both lie in `window`; `None` if no point does.
pub fn windowed_distance(
    fiber: &DegenerationFiber,
    families: &[CodualHyperplane],
    window: (f64, f64),
) -> Option<f64> {
    let s = &fiber.sample;
    let inside = |r: f64| r >= window.0 && r <= window.1;
    (0..s.cloud.len())
        .filter(|&k| {
            let (a, b) = s.moduli(k);
            inside(a) && inside(b)
        })
        .map(|k| distance_to_union(families, s.cloud.point(k)))
        .reduce(f64::max)
}

/// One cone of the logarithmic limit set with its initial form and, when
/// the initial form lives on an edge, its codual families.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConeReport {
    pub cone: Cone,
    pub initial_form: String,
    pub families: Option<Vec<CodualHyperplane>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseLimitReport {
    pub polynomial: String,
    pub rank: usize,
    pub cones: Vec<ConeReport>,
}

impl PhaseLimitReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("phase limit set of {}\n", self.polynomial);
        if self.cones.is_empty() {
            s.push_str("empty\n");
        }
        for c in &self.cones {
            s.push_str(&format!(
                "cone dim {} rays {:?} lineality {:?}: initial form {}\n",
                c.cone.dimension(),
                c.cone.rays(),
                c.cone.lineality(),
                c.initial_form
            ));
            match &c.families {
                Some(fs) => {
                    for h in fs {
                        s.push_str(&format!("  {}\n", h.to_text()));
                    }
                }
                None => s.push_str("  (no closed form)\n"),
            }
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// `phase_limit_summary(f)`.
pub fn phase_limit_summary(f: &LaurentPolynomial) -> Result<PhaseLimitReport> {
    if f.rank() > 3 {
        return Err(Error::UnsupportedRank(f.rank()));
    }
    let vars = default_variables(f.rank());
    let mut cones = Vec::new();
    for cone in logarithmic_limit_directions(f)? {
        let g = f.initial_form(&cone.interior_point())?;
        let families = if newton_polytope(&g)?.dimension() == 1 {
            Some(segment_coamoeba(&g)?)
        } else {
            None
        };
        cones.push(ConeReport {
            cone,
            initial_form: g.to_text(&vars),
            families,
        });
    }
    Ok(PhaseLimitReport {
        polynomial: f.to_text(&vars),
        rank: f.rank(),
        cones,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{parse, ExponentVector};

    fn term(c: f64, e: &[i64]) -> LaurentTerm {
        LaurentTerm::new(Complex64::new(c, 0.0), ExponentVector::new(e.to_vec())).unwrap()
    }

    #[test]
    fn binomial_examples() {
        let h = binomial_coamoeba(&term(1.0, &[1]), &term(1.0, &[0])).unwrap();
        assert_eq!((h.normal.clone(), h.offsets.clone()), (vec![1], vec![PI]));
        let h = binomial_coamoeba(&term(1.0, &[1, 0]), &term(-1.0, &[0, 1])).unwrap();
        assert_eq!(h.normal, vec![1, -1]);
        assert_eq!(h.offsets.len(), 1);
        assert!(circle_distance(h.offsets[0], 0.0) < 1e-15);
        let h = binomial_coamoeba(&term(1.0, &[2]), &term(-1.0, &[0])).unwrap();
        assert_eq!(h.offsets.len(), 2);
        assert!(
            circle_distance(h.offsets[0], 0.0) < 1e-15
                || circle_distance(h.offsets[1], 0.0) < 1e-15
        );
        assert!(h.offsets.iter().any(|&o| circle_distance(o, PI) < 1e-15));
        assert!(binomial_coamoeba(&term(1.0, &[2]), &term(3.0, &[2])).is_err());
    }

    #[test]
    fn sign_normalization_keeps_the_set() {
        let (a, b) = (
            term(1.0, &[0, 1]),
            LaurentTerm::new(
                Complex64::from_polar(1.0, 0.7),
                ExponentVector::new(vec![1, 0]),
            )
            .unwrap(),
        );
        let h = binomial_coamoeba(&a, &b).unwrap();
        assert_eq!(h.normal, vec![1, -1]);
        // a point of the set: y = -e^{0.7} x in arguments
        let theta = [0.3, wrap(0.3 + 0.7 + PI)];
        assert!(h.distance(&theta) < 1e-12);
    }

    #[test]
    fn triangle_line_edges() {
        let f = parse("x + y + 1", &["x", "y"]).unwrap();
        let edges = hypersurface_phase_limit(&f).unwrap();
        assert_eq!(edges.len(), 3);
        let mut normals: Vec<(Vec<i64>, f64)> = edges
            .iter()
            .map(|e| {
                assert_eq!(e.families.len(), 1);
                (e.families[0].normal.clone(), e.families[0].offsets[0])
            })
            .collect();
        normals.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(
            normals.iter().map(|n| n.0.clone()).collect::<Vec<_>>(),
            vec![vec![0, 1], vec![1, -1], vec![1, 0]]
        );
        assert!(normals.iter().all(|n| circle_distance(n.1, PI) < 1e-12));
    }

    #[test]
    fn conic_edge_has_two_families() {
        let f = parse("x^2 + x*y + y^2 + x + y + 1", &["x", "y"]).unwrap();
        let w = WeightVector::new(vec![-1, -1]);
        let fams = predicted_limit(&f, &w).unwrap();
        assert_eq!(fams.len(), 2);
        let mut o: Vec<f64> = fams.iter().map(|h| h.offsets[0]).collect();
        o.sort_by(f64::total_cmp);
        assert!((o[0] + 2.0 * PI / 3.0).abs() < 1e-10 && (o[1] - 2.0 * PI / 3.0).abs() < 1e-10);
        let report = phase_limit_summary(&f).unwrap();
        assert_eq!(report.cones.len(), 3);
    }

    #[test]
    fn repeated_roots_carry_multiplicity() {
        let f = parse("x^2 + 2*x*y + y^2", &["x", "y"]).unwrap();
        let fams = segment_coamoeba(&f).unwrap();
        assert_eq!(fams.len(), 1);
        assert_eq!(fams[0].multiplicity, 2);
    }

    #[test]
    fn monomials() {
        let m = parse("3*x*y", &["x", "y"]).unwrap();
        assert!(hypersurface_phase_limit(&m).is_err());
        assert!(phase_limit_summary(&m).unwrap().cones.is_empty());
        assert!(phase_limit_summary(&m).unwrap().to_text().contains("empty"));
    }

    #[test]
    fn degeneration_approaches_the_initial_coamoeba() {
        let f = parse("x + y + 1", &["x", "y"]).unwrap();
        let w = WeightVector::new(vec![1, 0]);
        let fams = predicted_limit(&f, &w).unwrap();
        let fibers = degenerate(
            &f,
            &w,
            &[1e-1, 1e-2, 1e-3],
            &CurveScheme::with_budget(20_000),
        )
        .unwrap();
        let d: Vec<f64> = fibers
            .iter()
            .map(|fb| windowed_distance(fb, &fams, DEFAULT_WINDOW).unwrap())
            .collect();
        assert!(d[0] > d[1] && d[1] > d[2] && d[2] < 2e-2, "{d:?}");
        assert!(degenerate(&f, &WeightVector::zero(2), &[0.1], &CurveScheme::default()).is_err());
    }

    #[test]
    fn unit_parameter_is_a_plain_sample() {
        let f = parse("x + y + 1", &["x", "y"]).unwrap();
        let scheme = CurveScheme::with_budget(2000);
        let fiber = degenerate(&f, &WeightVector::new(vec![2, -1]), &[1.0], &scheme).unwrap();
        assert_eq!(
            fiber[0].sample.cloud.as_flat(),
            sample_plane_curve(&f, &scheme).unwrap().cloud.as_flat()
        );
    }
}
