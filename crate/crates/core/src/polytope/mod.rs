//! Newton polytopes and their normal fans under the min convention: the cone
//! of a face `F` is the closure of `{w : F minimizes <., w> over P}`.
//!
//! Construction is exact and restricted to ambient rank `n <= 3`.

mod hull;
pub(crate) mod lattice;

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{ExponentVector, LaurentPolynomial, WeightVector};
use lattice::{check_bounds, dot64, primitive, rank, widen};

/// The extreme points of the convex hull of a support, sorted
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolytope {
    rank: usize,
    vertices: Vec<ExponentVector>,
}

impl NewtonPolytope {
    /// Convex hull of an arbitrary finite point set.
    pub fn from_points(rank: usize, points: &[ExponentVector]) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        if !(1..=3).contains(&rank) {
            return Err(Error::UnsupportedRank(rank));
        }
        if let Some(p) = points.iter().find(|p| p.rank() != rank) {
            return Err(Error::RankMismatch {
                expected: rank,
                found: p.rank(),
            });
        }
        let pts: Vec<Vec<i64>> = points
            .iter()
            .map(|p| p.entries().to_vec())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        check_bounds(pts.iter().map(|p| p.as_slice()))?;
        let vertices = if pts.len() == 1 {
            pts
        } else {
            let h = hull::facets(&pts)?;
            let faces = face_closure(&h.facets);
            let mut v: Vec<Vec<i64>> = faces
                .iter()
                .filter(|f| f.len() == 1)
                .map(|f| pts[f[0]].clone())
                .collect();
            v.sort();
            v
        };
        Ok(NewtonPolytope {
            rank,
            vertices: vertices.into_iter().map(ExponentVector::new).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[ExponentVector] {
        &self.vertices
    }

    /// Affine dimension of the polytope.
    pub fn dimension(&self) -> usize {
        affine_dimension(&self.vertices.iter().collect::<Vec<_>>())
    }
}

/// `newton_polytope(f)`.
pub fn newton_polytope(f: &LaurentPolynomial) -> Result<NewtonPolytope> {
    let support: Vec<ExponentVector> = f.support().cloned().collect();
    NewtonPolytope::from_points(f.rank(), &support)
}

/// A rational polyhedral cone `cone(rays) + span(lineality)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cone {
    rank: usize,
    rays: Vec<Vec<i64>>,
    lineality: Vec<Vec<i64>>,
}

impl Cone {
    /// Builds a cone, making every generator primitive. Zero generators are
    /// dropped and parallel rays are merged.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, lineality: Vec<Vec<i64>>) -> Result<Self> {
        let fix = |v: Vec<i64>| -> Result<Option<Vec<i64>>> {
            if v.len() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: v.len(),
                });
            }
            if v.iter().all(|&x| x == 0) {
                return Ok(None);
            }
            Ok(Some(primitive(&widen(&v))?))
        };
        let mut r: Vec<Vec<i64>> = Vec::new();
        for v in rays {
            if let Some(v) = fix(v)? {
                if !r.contains(&v) {
                    r.push(v);
                }
            }
        }
        let mut l = Vec::new();
        for v in lineality {
            if let Some(v) = fix(v)? {
                l.push(v);
            }
        }
        r.sort();
        Ok(Cone {
            rank,
            rays: r,
            lineality: l,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<i64>] {
        &self.lineality
    }

    pub fn dimension(&self) -> usize {
        let all: Vec<Vec<i64>> = self.rays.iter().chain(&self.lineality).cloned().collect();
        rank(&all)
    }

    pub fn is_maximal(&self) -> bool {
        self.dimension() == self.rank
    }

    /// A lattice point in the relative interior: the sum of all generators.
    pub fn interior_point(&self) -> WeightVector {
        let mut w = vec![0i64; self.rank];
        for v in self.rays.iter().chain(&self.lineality) {
            for (a, b) in w.iter_mut().zip(v) {
                *a += b;
            }
        }
        WeightVector::new(w)
    }
}

/// A cone of a normal fan together with the face it is normal to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FanCone {
    pub cone: Cone,
    /// Indices into the polytope's vertex list.
    pub face: Vec<usize>,
    pub face_dimension: usize,
}

/// The normal fan of a Newton polytope (min convention).
#[derive(Clone, Debug)]
pub struct NormalFan {
    polytope: NewtonPolytope,
    cones: Vec<FanCone>,
    by_face: HashMap<Vec<usize>, usize>,
}

impl NormalFan {
    pub fn polytope(&self) -> &NewtonPolytope {
        &self.polytope
    }

    /// Cones ordered by face dimension (maximal cones first), then by face.
    pub fn cones(&self) -> &[FanCone] {
        &self.cones
    }

    pub fn face_vertices(&self, cone: &FanCone) -> Vec<&ExponentVector> {
        cone.face
            .iter()
            .map(|&k| &self.polytope.vertices[k])
            .collect()
    }

    /// The face of the polytope on which `<., w>` is minimal.
    pub fn minimizing_face(&self, w: &WeightVector) -> Result<Vec<usize>> {
        if w.rank() != self.polytope.rank {
            return Err(Error::RankMismatch {
                expected: self.polytope.rank,
                found: w.rank(),
            });
        }
        let vals: Vec<i128> = self
            .polytope
            .vertices
            .iter()
            .map(|v| dot64(v.entries(), w.entries()))
            .collect();
        let min = *vals.iter().min().expect("nonempty polytope");
        Ok((0..vals.len()).filter(|&k| vals[k] == min).collect())
    }

    /// `cone_of(fan, w)`: the unique cone holding `w` in its relative interior.
    pub fn cone_of(&self, w: &WeightVector) -> Result<&FanCone> {
        let face = self.minimizing_face(w)?;
        let k = self.by_face.get(&face).expect("minimizing sets are faces");
        Ok(&self.cones[*k])
    }

    /// Whether `w` lies in the (closed) cone of the given fan cone.
    pub fn contains(&self, cone: &FanCone, w: &WeightVector) -> Result<bool> {
        let face = self.minimizing_face(w)?;
        Ok(cone.face.iter().all(|k| face.contains(k)))
    }

    /// Serializable view: vertices plus the cone list.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rank": self.polytope.rank,
            "vertices": self.polytope.vertices.iter().map(|v| v.entries().to_vec()).collect::<Vec<_>>(),
            "cones": self.cones.iter().map(|c| serde_json::json!({
                "dimension": c.cone.dimension(),
                "rays": c.cone.rays,
                "lineality": c.cone.lineality,
                "face": c.face.iter().map(|&k| self.polytope.vertices[k].entries().to_vec()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// `normal_fan(P)`.
pub fn normal_fan(polytope: &NewtonPolytope) -> Result<NormalFan> {
    let n = polytope.rank;
    if !(1..=3).contains(&n) {
        return Err(Error::UnsupportedRank(n));
    }
    let pts: Vec<Vec<i64>> = polytope
        .vertices
        .iter()
        .map(|v| v.entries().to_vec())
        .collect();
    let mut faces: Vec<Vec<usize>>;
    let facets;
    let lineality;
    if pts.len() == 1 {
        faces = vec![vec![0]];
        facets = Vec::new();
        lineality = (0..n)
            .map(|k| (0..n).map(|j| i64::from(j == k)).collect())
            .collect();
    } else {
        let h = hull::facets(&pts)?;
        faces = face_closure(&h.facets);
        faces.push((0..pts.len()).collect());
        facets = h.facets;
        lineality = h.lineality;
    }
    let mut cones: Vec<FanCone> = Vec::with_capacity(faces.len());
    for face in faces {
        let rays: Vec<Vec<i64>> = facets
            .iter()
            .filter(|(_, on)| face.iter().all(|k| on.contains(k)))
            .map(|(u, _)| u.clone())
            .collect();
        let cone = Cone::new(n, rays, lineality.clone())?;
        let face_dimension = affine_dimension(
            &face
                .iter()
                .map(|&k| &polytope.vertices[k])
                .collect::<Vec<_>>(),
        );
        debug_assert_eq!(cone.dimension(), n - face_dimension);
        cones.push(FanCone {
            cone,
            face,
            face_dimension,
        });
    }
    cones.sort_by(|a, b| (a.face_dimension, &a.face).cmp(&(b.face_dimension, &b.face)));
    let by_face = cones
        .iter()
        .enumerate()
        .map(|(k, c)| (c.face.clone(), k))
        .collect();
    Ok(NormalFan {
        polytope: polytope.clone(),
        cones,
        by_face,
    })
}

/// `logarithmic_limit_directions(f)`: cones of the normal fan of dimension
/// between 1 and `n - 1`. Empty for monomials.
pub fn logarithmic_limit_directions(f: &LaurentPolynomial) -> Result<Vec<Cone>> {
    let fan = normal_fan(&newton_polytope(f)?)?;
    let n = f.rank();
    Ok(fan
        .cones
        .into_iter()
        .map(|c| c.cone)
        .filter(|c| (1..n).contains(&c.dimension()))
        .collect())
}

/// All faces obtained by intersecting facets, as sorted index lists. The
/// full point set is not included.
fn face_closure(facets: &[(Vec<i64>, Vec<usize>)]) -> Vec<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = facets.iter().map(|(_, on)| on.clone()).collect();
    let mut queue: Vec<Vec<usize>> = seen.iter().cloned().collect();
    while let Some(g) = queue.pop() {
        for (_, on) in facets {
            let h: Vec<usize> = g.iter().copied().filter(|k| on.contains(k)).collect();
            if !h.is_empty() && seen.insert(h.clone()) {
                queue.push(h);
            }
        }
    }
    seen.into_iter().collect()
}

fn affine_dimension(points: &[&ExponentVector]) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let diffs: Vec<Vec<i64>> = points
        .iter()
        .map(|p| {
            p.entries()
                .iter()
                .zip(first.entries())
                .map(|(a, b)| a - b)
                .collect()
        })
        .collect();
    rank(&diffs)
}
