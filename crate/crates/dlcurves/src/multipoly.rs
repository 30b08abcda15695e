//! Sparse multivariate polynomials over a tabulated finite field.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finite_field::{Fe, Field};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("point has {got} coordinates, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("unknown coordinate {0}")]
    UnknownCoordinate(String),
    #[error("term of degree {degree} exceeds target degree {target}")]
    DegreeTooHigh { degree: u32, target: u32 },
    #[error("the zero polynomial has no canonical form")]
    Zero,
    #[error("coordinate systems differ")]
    CoordinateMismatch,
    #[error("coefficient {0} is outside the prime field")]
    NotPrimeField(u32),
}

/// Ordered, named projective coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateSystem {
    pub names: Vec<String>,
}

pub type Coords = Arc<CoordinateSystem>;

impl CoordinateSystem {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Coords {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            assert!(!names[..i].contains(a), "duplicate coordinate {a}");
        }
        Arc::new(CoordinateSystem { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize, PolyError> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| PolyError::UnknownCoordinate(name.to_string()))
    }
}

/// Exponent vector ordered by graded lexicographic order; the first
/// coordinate is the most significant one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone)]
pub struct MultiPoly {
    coords: Coords,
    field: Field,
    terms: BTreeMap<Monomial, Fe>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

impl MultiPoly {
    pub fn zero(coords: &Coords, field: &Field) -> Self {
        MultiPoly { coords: coords.clone(), field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(coords: &Coords, field: &Field, c: Fe) -> Self {
        let mut p = Self::zero(coords, field);
        p.add_term(vec![0; coords.len()], c);
        p
    }

    pub fn one(coords: &Coords, field: &Field) -> Self {
        Self::constant(coords, field, Fe::ONE)
    }

    /// The coordinate function named `name`.
    pub fn var(coords: &Coords, field: &Field, name: &str) -> Result<Self, PolyError> {
        let i = coords.index(name)?;
        Ok(Self::var_index(coords, field, i))
    }

    pub fn var_index(coords: &Coords, field: &Field, i: usize) -> Self {
        let mut e = vec![0; coords.len()];
        e[i] = 1;
        let mut p = Self::zero(coords, field);
        p.add_term(e, Fe::ONE);
        p
    }

    pub fn monomial(coords: &Coords, field: &Field, exp: Vec<u32>, c: Fe) -> Self {
        let mut p = Self::zero(coords, field);
        p.add_term(exp, c);
        p
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], Fe)> {
        self.terms.iter().rev().map(|(m, &c)| (m.0.as_slice(), c))
    }

    pub fn coefficient(&self, exp: &[u32]) -> Fe {
        self.terms.get(&Monomial(exp.to_vec())).copied().unwrap_or(Fe::ZERO)
    }

    pub fn add_term(&mut self, exp: Vec<u32>, c: Fe) {
        debug_assert_eq!(exp.len(), self.coords.len());
        if c.is_zero() {
            return;
        }
        let key = Monomial(exp);
        let f = self.field.clone();
        match self.terms.get_mut(&key) {
            Some(v) => {
                *v = f.add(*v, c);
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut d = self.terms.keys().map(|m| m.degree());
        match d.next() {
            None => true,
            Some(first) => d.all(|x| x == first),
        }
    }

    pub fn leading(&self) -> Option<(&[u32], Fe)> {
        self.terms.iter().next_back().map(|(m, &c)| (m.0.as_slice(), c))
    }

    pub fn scale(&self, c: Fe) -> Self {
        let mut out = Self::zero(&self.coords, &self.field);
        if c.is_zero() {
            return out;
        }
        for (m, &v) in &self.terms {
            out.terms.insert(m.clone(), self.field.mul(v, c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.field.neg(Fe::ONE))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.coords, other.coords, "coordinate systems differ");
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.0.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.coords, other.coords, "coordinate systems differ");
        let mut out = Self::zero(&self.coords, &self.field);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let e: Vec<u32> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
                out.add_term(e, self.field.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut result = Self::one(&self.coords, &self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn evaluate(&self, pt: &[Fe]) -> Result<Fe, PolyError> {
        if pt.len() != self.coords.len() {
            return Err(PolyError::LengthMismatch { expected: self.coords.len(), got: pt.len() });
        }
        let f = &self.field;
        let mut acc = Fe::ZERO;
        for (m, &c) in &self.terms {
            let mut t = c;
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = f.mul(t, f.pow(pt[i], e as u64));
                    if t.is_zero() {
                        break;
                    }
                }
            }
            acc = f.add(acc, t);
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, name: &str) -> Result<Self, PolyError> {
        let i = self.coords.index(name)?;
        Ok(self.partial_derivative_index(i))
    }

    /// Formal derivative; exponents divisible by p annihilate their term.
    pub fn partial_derivative_index(&self, i: usize) -> Self {
        let mut out = Self::zero(&self.coords, &self.field);
        for (m, &c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let k = self.field.from_int(e as i64);
            if k.is_zero() {
                continue;
            }
            let mut ex = m.0.clone();
            ex[i] -= 1;
            out.add_term(ex, self.field.mul(c, k));
        }
        out
    }

    /// Multiplies every term by a power of `coord` to reach `target` degree.
    pub fn homogenize(&self, target: u32, coord: &str) -> Result<Self, PolyError> {
        let i = self.coords.index(coord)?;
        let mut out = Self::zero(&self.coords, &self.field);
        for (m, &c) in &self.terms {
            let d = m.degree();
            if d > target {
                return Err(PolyError::DegreeTooHigh { degree: d, target });
            }
            let mut e = m.0.clone();
            e[i] += target - d;
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Sets coordinate `coord` to 1.
    pub fn dehomogenize(&self, coord: &str) -> Result<Self, PolyError> {
        let i = self.coords.index(coord)?;
        let mut out = Self::zero(&self.coords, &self.field);
        for (m, &c) in &self.terms {
            let mut e = m.0.clone();
            e[i] = 0;
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Monic representative: leading coefficient (graded lex) scaled to 1.
    pub fn canonical_form(&self) -> Result<Self, PolyError> {
        let (_, lc) = self.leading().ok_or(PolyError::Zero)?;
        Ok(self.scale(self.field.inv(lc).expect("nonzero leading coefficient")))
    }

    /// Substitutes polynomials (over the same field) for every coordinate.
    pub fn compose(&self, images: &[MultiPoly]) -> Result<MultiPoly, PolyError> {
        if images.len() != self.coords.len() {
            return Err(PolyError::LengthMismatch { expected: self.coords.len(), got: images.len() });
        }
        let target = images.first().map(|p| p.coords.clone()).ok_or(PolyError::CoordinateMismatch)?;
        let mut out = MultiPoly::zero(&target, &self.field);
        let mut cache: BTreeMap<(usize, u32), MultiPoly> = BTreeMap::new();
        for (m, &c) in &self.terms {
            let mut t = MultiPoly::constant(&target, &self.field, c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let pw = cache.entry((i, e)).or_insert_with(|| images[i].pow(e)).clone();
                    t = t.mul(&pw);
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Re-expresses a polynomial with prime-field coefficients over another
    /// field of the same characteristic.
    pub fn to_field(&self, field: &Field) -> Result<MultiPoly, PolyError> {
        let mut out = MultiPoly::zero(&self.coords, field);
        for (m, &c) in &self.terms {
            let v = self.field.to_prime(c).ok_or(PolyError::NotPrimeField(c.0))?;
            out.add_term(m.0.clone(), field.from_int(v as i64));
        }
        Ok(out)
    }

    pub fn compile(&self) -> CompiledPoly {
        CompiledPoly {
            nvars: self.coords.len(),
            terms: self
                .terms
                .iter()
                .map(|(m, &c)| {
                    let f: Vec<(usize, u32)> =
                        m.0.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i, e)).collect();
                    (c, f)
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            coords: self.coords.names.clone(),
            terms: self.terms().map(|(e, c)| TermJson { exp: e.to_vec(), coef: c.0 as i64 }).collect(),
        }
    }

    /// Builds a polynomial from JSON; integer coefficients are read as field
    /// encodings, reduced into the prime field when the field is prime.
    pub fn from_json(json: &PolyJson, coords: &Coords, field: &Field) -> Result<MultiPoly, PolyError> {
        if json.coords != coords.names {
            return Err(PolyError::CoordinateMismatch);
        }
        let mut p = MultiPoly::zero(coords, field);
        for t in &json.terms {
            if t.exp.len() != coords.len() {
                return Err(PolyError::LengthMismatch { expected: coords.len(), got: t.exp.len() });
            }
            let c = if field.degree() == 1 || (0..field.p() as i64).contains(&t.coef) || t.coef < 0 {
                field.from_int(t.coef)
            } else {
                Fe(t.coef as u32)
            };
            p.add_term(t.exp.clone(), c);
        }
        Ok(p)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut parts = Vec::new();
            if c != Fe::ONE || e.iter().all(|&x| x == 0) {
                parts.push(format!("{}", c.0));
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => parts.push(self.coords.names[i].clone()),
                    _ => parts.push(format!("{}^{}", self.coords.names[i], x)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Term list prepared for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    nvars: usize,
    terms: Vec<(Fe, Vec<(usize, u32)>)>,
}

impl CompiledPoly {
    pub fn eval(&self, field: &Field, pt: &[Fe]) -> Fe {
        debug_assert_eq!(pt.len(), self.nvars);
        let mut acc = Fe::ZERO;
        for (c, factors) in &self.terms {
            let mut t = *c;
            for &(i, e) in factors {
                t = field.mul(t, field.pow(pt[i], e as u64));
                if t.is_zero() {
                    break;
                }
            }
            acc = field.add(acc, t);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<u32>,
    pub coef: i64,
}

/// `{"coords": [...], "terms": [{"exp": [...], "coef": int}]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub coords: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::GaloisField;

    #[test]
    fn derivative_annihilates_multiples_of_p() {
        let f = GaloisField::with_degree(3, 3).unwrap();
        let c = CoordinateSystem::new(&["t", "x", "w4"]);
        let x = MultiPoly::var(&c, &f, "x").unwrap();
        let w4 = MultiPoly::var(&c, &f, "w4").unwrap();
        let g = x.pow(3).mul(&w4);
        assert!(g.partial_derivative("x").unwrap().is_zero());
        assert_eq!(g.partial_derivative("w4").unwrap(), x.pow(3));
    }

    #[test]
    fn grlex_leading_term() {
        let f = GaloisField::with_degree(3, 1).unwrap();
        let c = CoordinateSystem::new(&["t", "x"]);
        let t = MultiPoly::var(&c, &f, "t").unwrap();
        let x = MultiPoly::var(&c, &f, "x").unwrap();
        let p = t.add(&x.pow(2)).add(&t.mul(&x).scale(Fe(2)));
        // t*x beats x^2 lexicographically within degree 2
        assert_eq!(p.leading().unwrap().0, &[1, 1]);
        assert_eq!(p.canonical_form().unwrap().leading().unwrap().1, Fe::ONE);
    }
}
