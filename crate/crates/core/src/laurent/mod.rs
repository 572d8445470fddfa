//! Laurent polynomials over the complex numbers with integer exponent vectors.
//!
//! Exponents and weights are exact `i64` vectors; only coefficients are
//! floating point. We fix the identification of the character lattice with
//! `Z^n` given by the order of the declared variables.
//!
//! Terms are kept sorted lexicographically (ascending) by exponent, with like
//! terms combined and exact zeros dropped, so structural equality is equality
//! of polynomials. Printing lists terms in descending order (`x+y+1`).

mod parse;

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use parse::{check_variables, parse};

/// An element of the character lattice `M = Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn zero(rank: usize) -> Self {
        ExponentVector(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// The pairing `<m, w>`.
    pub fn pair(&self, w: &WeightVector) -> i64 {
        self.0.iter().zip(w.entries()).map(|(a, b)| a * b).sum()
    }
}

impl From<Vec<i64>> for ExponentVector {
    fn from(v: Vec<i64>) -> Self {
        ExponentVector(v)
    }
}

/// An integer weight `w` in the cocharacter lattice `N = Z^n`.
///
/// Rational weights are not accepted; initial forms are invariant under
/// positive scaling so callers clear denominators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(entries: Vec<i64>) -> Self {
        WeightVector(entries)
    }

    pub fn zero(rank: usize) -> Self {
        WeightVector(vec![0; rank])
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl From<Vec<i64>> for WeightVector {
    fn from(v: Vec<i64>) -> Self {
        WeightVector(v)
    }
}

/// A point of the complex torus `(C^*)^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusElement(Vec<Complex64>);

impl TorusElement {
    pub fn new(coordinates: Vec<Complex64>) -> Result<Self> {
        for (i, z) in coordinates.iter().enumerate() {
            if !(z.re.is_finite() && z.im.is_finite()) || z.norm() == 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "torus coordinate {i} must be finite and nonzero, got {z}"
                )));
            }
        }
        Ok(TorusElement(coordinates))
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coordinates(&self) -> &[Complex64] {
        &self.0
    }

    /// The one-parameter subgroup action `t^w . x` for real `t > 0`.
    pub fn scaled(&self, w: &WeightVector, t: f64) -> Result<Self> {
        if w.rank() != self.rank() {
            return Err(Error::RankMismatch {
                expected: self.rank(),
                found: w.rank(),
            });
        }
        let coords = self
            .0
            .iter()
            .zip(w.entries())
            .map(|(z, &k)| Ok(z * power(t, k)?))
            .collect::<Result<Vec<_>>>()?;
        TorusElement::new(coords)
    }
}

/// One term `c * xi^m` with a nonzero coefficient.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentTerm {
    coefficient: Complex64,
    exponent: ExponentVector,
}

impl LaurentTerm {
    pub fn new(coefficient: Complex64, exponent: ExponentVector) -> Result<Self> {
        if coefficient == Complex64::new(0.0, 0.0) {
            return Err(Error::InvalidArgument(
                "term coefficient must be nonzero".into(),
            ));
        }
        if !(coefficient.re.is_finite() && coefficient.im.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "term coefficient must be finite, got {coefficient}"
            )));
        }
        Ok(LaurentTerm {
            coefficient,
            exponent,
        })
    }

    pub fn coefficient(&self) -> Complex64 {
        self.coefficient
    }

    pub fn exponent(&self) -> &ExponentVector {
        &self.exponent
    }
}

/// A Laurent polynomial `f = sum c_m xi^m` in `n` variables.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentPolynomial {
    rank: usize,
    terms: Vec<LaurentTerm>,
}

impl LaurentPolynomial {
    /// Builds a polynomial in canonical form from arbitrary `(coefficient,
    /// exponent)` pairs. Like terms are summed and exact zeros are dropped.
    pub fn new<I, E>(rank: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, E)>,
        E: Into<ExponentVector>,
    {
        if rank == 0 {
            return Err(Error::InvalidArgument("rank must be positive".into()));
        }
        let mut acc: BTreeMap<ExponentVector, Complex64> = BTreeMap::new();
        for (c, e) in terms {
            let e = e.into();
            if e.rank() != rank {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: e.rank(),
                });
            }
            *acc.entry(e).or_insert(Complex64::new(0.0, 0.0)) += c;
        }
        let terms = acc
            .into_iter()
            .filter(|(_, c)| *c != Complex64::new(0.0, 0.0))
            .map(|(e, c)| LaurentTerm::new(c, e))
            .collect::<Result<Vec<_>>>()?;
        Ok(LaurentPolynomial { rank, terms })
    }

    /// The zero polynomial (empty term list).
    pub fn zero(rank: usize) -> Self {
        LaurentPolynomial {
            rank,
            terms: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[LaurentTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The support `A`, in canonical (ascending lexicographic) order.
    pub fn support(&self) -> impl Iterator<Item = &ExponentVector> + '_ {
        self.terms.iter().map(|t| &t.exponent)
    }

    pub fn coefficient(&self, exponent: &ExponentVector) -> Option<Complex64> {
        self.terms
            .binary_search_by(|t| t.exponent.cmp(exponent))
            .ok()
            .map(|i| self.terms[i].coefficient)
    }

    /// Whether some term has a nonzero exponent in variable `var`.
    pub fn depends_on(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.exponent.entries()[var] != 0)
    }

    /// Evaluates `sum c_m prod x_i^{m_i}` at a torus point.
    pub fn evaluate(&self, x: &TorusElement) -> Result<Complex64> {
        self.evaluate_slice(x.coordinates())
    }

    pub(crate) fn evaluate_slice(&self, x: &[Complex64]) -> Result<Complex64> {
        if x.len() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: x.len(),
            });
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for term in &self.terms {
            let mut v = term.coefficient;
            for (z, &k) in x.iter().zip(term.exponent.entries()) {
                if k != 0 {
                    v *= z.powi(exponent_i32(k)?);
                }
            }
            sum += v;
        }
        Ok(sum)
    }

    /// `w(f)`: the minimum of `<m, w>` over the support.
    pub fn weight_value(&self, w: &WeightVector) -> Result<i64> {
        self.check_weight(w)?;
        self.support()
            .map(|m| m.pair(w))
            .min()
            .ok_or(Error::EmptyPolynomial)
    }

    /// The initial form `in_w f`: the terms of `f` on which `<m, w>` attains
    /// `w(f)`.
    pub fn initial_form(&self, w: &WeightVector) -> Result<Self> {
        let min = self.weight_value(w)?;
        Ok(LaurentPolynomial {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .filter(|t| t.exponent.pair(w) == min)
                .cloned()
                .collect(),
        })
    }

    /// The deformation `f(t) = sum c_m t^{<m,w>} xi^m`, so that
    /// `f(t)(x) = f(t^w x)`.
    pub fn deform(&self, w: &WeightVector, t: f64) -> Result<Self> {
        self.check_weight(w)?;
        self.scaled_by_weight(w, t, 0)
    }

    /// `t^{-w(f)} f(t)`: equal to `in_w f` plus terms carrying positive
    /// powers of `t`.
    pub fn normalized_deform(&self, w: &WeightVector, t: f64) -> Result<Self> {
        let shift = self.weight_value(w)?;
        self.scaled_by_weight(w, t, shift)
    }

    fn scaled_by_weight(&self, w: &WeightVector, t: f64, shift: i64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "deformation parameter must be positive and finite, got {t}"
            )));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for term in &self.terms {
            let k = term
                .exponent
                .pair(w)
                .checked_sub(shift)
                .ok_or(Error::Overflow)?;
            let c = term.coefficient * power(t, k)?;
            if !(c.re.is_finite() && c.im.is_finite()) {
                return Err(Error::InvalidArgument(format!(
                    "deformed coefficient overflows at t = {t}"
                )));
            }
            // underflow to an exact zero drops the term
            if c != Complex64::new(0.0, 0.0) {
                terms.push(LaurentTerm {
                    coefficient: c,
                    exponent: term.exponent.clone(),
                });
            }
        }
        Ok(LaurentPolynomial {
            rank: self.rank,
            terms,
        })
    }

    fn check_weight(&self, w: &WeightVector) -> Result<()> {
        if w.rank() != self.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: w.rank(),
            });
        }
        Ok(())
    }

    /// Formats the polynomial with the given variable names. Terms appear in
    /// descending lexicographic order of exponents; the output re-parses to an
    /// identical polynomial.
    pub fn to_text<S: AsRef<str>>(&self, vars: &[S]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, term) in self.terms.iter().rev().enumerate() {
            let c = term.coefficient;
            let negative = c.re < 0.0 || (c.re == 0.0 && c.im < 0.0);
            let c = if negative { -c } else { c };
            if negative {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            let mono = monomial_text(term.exponent.entries(), vars);
            let is_one = c.re == 1.0 && c.im == 0.0;
            if mono.is_empty() {
                out.push_str(&coefficient_text(c));
            } else if is_one {
                out.push_str(&mono);
            } else {
                out.push_str(&coefficient_text(c));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(&default_variables(self.rank)))
    }
}

/// `x`, `x,y`, `x,y,z`, `x,y,z,w`, then `x1..xn`.
pub fn default_variables(rank: usize) -> Vec<String> {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    if rank <= NAMES.len() {
        NAMES[..rank].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=rank).map(|i| format!("x{i}")).collect()
    }
}

fn monomial_text<S: AsRef<str>>(exponent: &[i64], vars: &[S]) -> String {
    let mut parts = Vec::new();
    for (k, &e) in exponent.iter().enumerate() {
        let name = vars
            .get(k)
            .map(|s| s.as_ref().to_string())
            .unwrap_or_else(|| format!("x{}", k + 1));
        match e {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

// `c` has re >= 0, or re == 0 and im > 0.
fn coefficient_text(c: Complex64) -> String {
    if c.im == 0.0 {
        format!("{}", c.re)
    } else if c.re == 0.0 {
        if c.im == 1.0 {
            "i".to_string()
        } else {
            format!("({}i)", c.im)
        }
    } else if c.im > 0.0 {
        format!("({}+{}i)", c.re, c.im)
    } else {
        format!("({}-{}i)", c.re, -c.im)
    }
}

fn exponent_i32(k: i64) -> Result<i32> {
    i32::try_from(k).map_err(|_| Error::Overflow)
}

fn power(t: f64, k: i64) -> Result<f64> {
    Ok(t.powi(exponent_i32(k)?))
}
