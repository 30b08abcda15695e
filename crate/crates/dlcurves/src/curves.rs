//! Concrete models of the Hermitian, Suzuki and Ree curves.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::finite_field::{Fe, Field, FieldError, GaloisField};
use crate::multipoly::{CoordinateSystem, Coords};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("unknown curve family {0:?}")]
    UnknownFamily(String),
    #[error("parameter m must be at least {min} for this family, got {got}")]
    BadM { min: u32, got: u32 },
    #[error("Hermitian curves need characteristic 2 or 3, got {0}")]
    BadCharacteristic(u32),
    #[error("extension degree r must be positive")]
    BadExtension,
    #[error("point count formula gave a non-integer value for r = {0}")]
    NonIntegral(u32),
    #[error("point count overflows 128-bit integers at r = {0}")]
    Overflow(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Hermitian,
    Suzuki,
    Ree,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Hermitian => "hermitian",
            Family::Suzuki => "suzuki",
            Family::Ree => "ree",
        })
    }
}

impl FromStr for Family {
    type Err = CurveError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hermitian" => Ok(Family::Hermitian),
            "suzuki" => Ok(Family::Suzuki),
            "ree" => Ok(Family::Ree),
            _ => Err(CurveError::UnknownFamily(s.to_string())),
        }
    }
}

pub const REE_COORDS: [&str; 14] =
    ["t", "x", "y1", "y2", "w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8", "w9", "w10"];
pub const SUZUKI_COORDS: [&str; 5] = ["t", "x", "y", "z", "w"];
pub const HERMITIAN_COORDS: [&str; 3] = ["t", "x", "y"];

/// One of the three curves over its base field GF(q).
///
/// The first coordinate `t` is the homogenizing coordinate; affine points
/// have `t = 1`.
#[derive(Clone)]
pub struct CurveSpec {
    pub family: Family,
    pub m: u32,
    pub p: u32,
    /// Degree of GF(q) over GF(p).
    pub n: u32,
    pub q: u64,
    pub q0: u64,
    pub genus: u64,
    /// Pole order of the hyperplane section at P∞, i.e. of the coordinate
    /// paired with t by the involution.
    pub m_infinity: u64,
    coords: Coords,
    field: Field,
}

impl fmt::Debug for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CurveSpec({} m={} q={} q0={})", self.family, self.m, self.q, self.q0)
    }
}

impl CurveSpec {
    /// Ree curve over GF(3^{2m+1}).
    pub fn ree(m: u32) -> Result<Self, CurveError> {
        let q0 = 3u64.pow(m);
        let q = 3 * q0 * q0;
        let n = 2 * m + 1;
        Ok(CurveSpec {
            family: Family::Ree,
            m,
            p: 3,
            n,
            q,
            q0,
            genus: 3 * q0 * (q - 1) * (q + q0 + 1) / 2,
            m_infinity: q * q + 3 * q0 * q + 2 * q + 3 * q0 + 1,
            coords: CoordinateSystem::new(&REE_COORDS),
            field: GaloisField::with_degree(3, n)?,
        })
    }

    /// Suzuki curve over GF(2^{2m+1}); m ≥ 1.
    pub fn suzuki(m: u32) -> Result<Self, CurveError> {
        if m == 0 {
            return Err(CurveError::BadM { min: 1, got: m });
        }
        let q0 = 2u64.pow(m);
        let q = 2 * q0 * q0;
        let n = 2 * m + 1;
        Ok(CurveSpec {
            family: Family::Suzuki,
            m,
            p: 2,
            n,
            q,
            q0,
            genus: q0 * (q - 1),
            m_infinity: q + 2 * q0 + 1,
            coords: CoordinateSystem::new(&SUZUKI_COORDS),
            field: GaloisField::with_degree(2, n)?,
        })
    }

    /// Hermitian curve y^{q0} + y = x^{q0+1} over GF(q0²) with q0 = p^m.
    pub fn hermitian(p: u32, m: u32) -> Result<Self, CurveError> {
        if p != 2 && p != 3 {
            return Err(CurveError::BadCharacteristic(p));
        }
        if m == 0 {
            return Err(CurveError::BadM { min: 1, got: m });
        }
        let q0 = (p as u64).pow(m);
        Ok(CurveSpec {
            family: Family::Hermitian,
            m,
            p,
            n: 2 * m,
            q: q0 * q0,
            q0,
            genus: q0 * (q0 - 1) / 2,
            m_infinity: q0 + 1,
            coords: CoordinateSystem::new(&HERMITIAN_COORDS),
            field: GaloisField::with_degree(p, 2 * m)?,
        })
    }

    /// Default instance of a family: Hermitian curves use characteristic 3.
    pub fn from_family(family: Family, m: u32) -> Result<Self, CurveError> {
        match family {
            Family::Ree => Self::ree(m),
            Family::Suzuki => Self::suzuki(m),
            Family::Hermitian => Self::hermitian(3, m),
        }
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Field GF(q^r) containing the base field.
    pub fn extension_field(&self, r: u32) -> Result<Field, CurveError> {
        if r == 0 {
            return Err(CurveError::BadExtension);
        }
        if r == 1 {
            return Ok(self.field.clone());
        }
        Ok(GaloisField::with_degree(self.p, self.n * r)?)
    }

    /// Number of affine coordinates (x, y1, y2) or (x, y).
    pub fn affine_dim(&self) -> usize {
        match self.family {
            Family::Ree => 3,
            Family::Suzuki | Family::Hermitian => 2,
        }
    }

    /// Pole orders at P∞ of the coordinate functions, in coordinate order.
    pub fn pole_orders(&self) -> Vec<u64> {
        let vt = self.valuation_table();
        self.coords.names.iter().map(|n| vt.get(n).expect("every coordinate is tabulated").pole).collect()
    }

    /// Projective coordinate vector of the affine point over any field
    /// containing GF(p).
    pub fn coordinates(&self, field: &Field, affine: &[Fe]) -> Vec<Fe> {
        match self.family {
            Family::Ree => ree_coordinates(field, self.q0, affine[0], affine[1], affine[2]).coords.to_vec(),
            Family::Suzuki => suzuki_coordinates(field, self.q0, affine[0], affine[1]).to_vec(),
            Family::Hermitian => vec![Fe::ONE, affine[0], affine[1]],
        }
    }

    /// Projective image of P∞: every coordinate zero except the one of
    /// largest pole order (w8, w or y), the involution partner of t.
    pub fn infinity_point(&self) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; self.coords.len()];
        v[self.involution()[0].0] = Fe::ONE;
        v
    }

    /// The affine curve equations, evaluated: zero iff the affine tuple lies
    /// on the curve.
    pub fn affine_residuals(&self, field: &Field, a: &[Fe]) -> Vec<Fe> {
        let q = self.q;
        let q0 = self.q0;
        let f = field;
        match self.family {
            Family::Ree | Family::Suzuki => {
                // y1^q - y1 = x^{q0}(x^q - x)
                let x = a[0];
                let y1 = a[1];
                let xq = f.pow(x, q);
                let lhs1 = f.sub(f.pow(y1, q), y1);
                let rhs1 = f.mul(f.pow(x, q0), f.sub(xq, x));
                let mut out = vec![f.sub(lhs1, rhs1)];
                if self.family == Family::Ree {
                    // y2^q - y2 = x^{q0}(y1^q - y1)
                    let y2 = a[2];
                    let lhs2 = f.sub(f.pow(y2, q), y2);
                    let rhs2 = f.mul(f.pow(x, q0), lhs1);
                    out.push(f.sub(lhs2, rhs2));
                }
                out
            }
            Family::Hermitian => {
                let (x, y) = (a[0], a[1]);
                vec![f.sub(f.add(f.pow(y, q0), y), f.pow(x, q0 + 1))]
            }
        }
    }

    /// Exact N_r, the number of GF(q^r)-rational points.
    ///
    /// Ree: the L-polynomial is (1 + 3q0 T + q T²)^a (1 + q T²)^b with
    /// a = q0(q²−1), b = q0(q−1)(q+3q0+1)/2, so
    /// N_r = q^r + 1 − 2q^{r/2}(a cos(5rπ/6) + b cos(rπ/2)).
    /// The cosines are taken from the exact table and √3 is carried
    /// symbolically.
    pub fn rational_point_count_formula(&self, r: u32) -> Result<i128, CurveError> {
        if r == 0 {
            return Err(CurveError::BadExtension);
        }
        let q = self.q as i128;
        let q0 = self.q0 as i128;
        let g = self.genus as i128;
        let qr = checked_pow(q, r).ok_or(CurveError::Overflow(r))?;
        match self.family {
            Family::Hermitian => {
                let t = checked_pow(-q0, r).ok_or(CurveError::Overflow(r))?;
                Ok(qr + 1 - 2 * g * t)
            }
            Family::Suzuki => {
                // (−1+i)^r + (−1−i)^r = 2 Re((−1+i)^r) = 2^{r/2+1} cos(3rπ/4)
                let (mut re, mut im) = (1i128, 0i128);
                for _ in 0..r {
                    (re, im) = (-re - im, re - im);
                }
                let q0r = checked_pow(q0, r).ok_or(CurveError::Overflow(r))?;
                Ok(qr + 1 - g * q0r * 2 * re)
            }
            Family::Ree => {
                let a = q0 * (q * q - 1);
                let b = q0 * (q - 1) * (q + 3 * q0 + 1) / 2;
                // s = a·2cos(5rπ/6) + b·2cos(3rπ/6) = s0 + s1·√3
                let (a0, a1) = two_cos_sixth(5 * r as u64);
                let (b0, b1) = two_cos_sixth(3 * r as u64);
                let s0 = a * a0 + b * b0;
                let s1 = a * a1 + b * b1;
                // q^{r/2} = h0 + h1·√3
                let (h0, h1) = if r.is_multiple_of(2) {
                    (checked_pow(q, r / 2).ok_or(CurveError::Overflow(r))?, 0)
                } else {
                    (0, checked_pow(q, r / 2).ok_or(CurveError::Overflow(r))? * q0)
                };
                let rational = h0 * s0 + 3 * h1 * s1;
                let irrational = h0 * s1 + h1 * s0;
                if irrational != 0 {
                    return Err(CurveError::NonIntegral(r));
                }
                Ok(qr + 1 - rational)
            }
        }
    }

    /// Upper Hasse–Weil bound q^r + 1 + 2g q^{r/2}, for even r.
    pub fn hasse_weil_max(&self, r: u32) -> Option<i128> {
        if !r.is_multiple_of(2) {
            return None;
        }
        let q = self.q as i128;
        Some(checked_pow(q, r)? + 1 + 2 * self.genus as i128 * checked_pow(q, r / 2)?)
    }

    pub fn valuation_table(&self) -> ValuationTable {
        let q = self.q;
        let q0 = self.q0;
        let rows: Vec<(&str, u64, u64)> = match self.family {
            Family::Ree => vec![
                ("t", 0, 0),
                ("x", 1, q * q),
                ("y1", q0 + 1, q * q + q0 * q),
                ("y2", 2 * q0 + 1, q * q + 2 * q0 * q),
                ("w1", 3 * q0 + 1, q * q + 3 * q0 * q),
                ("w2", q + 3 * q0 + 1, q * q + 3 * q0 * q + q),
                ("w3", 2 * q + 3 * q0 + 1, q * q + 3 * q0 * q + 2 * q),
                ("w4", q + 2 * q0 + 1, q * q + 2 * q0 * q + q),
                ("v", q + 3 * q0 + 1, q * q + 3 * q0 * q + q),
                ("w5", q0 * q + q + 3 * q0 + 1, q * q + 3 * q0 * q + q + q0),
                ("w6", 3 * q0 * q + 2 * q + 3 * q0 + 1, q * q + 3 * q0 * q + 2 * q + 3 * q0),
                ("w7", q0 * q + q + 2 * q0 + 1, q * q + 2 * q0 * q + q + q0),
                ("w8", q * q + 3 * q0 * q + 2 * q + 3 * q0 + 1, q * q + 3 * q0 * q + 2 * q + 3 * q0 + 1),
                ("w9", q0 * q + 2 * q + 3 * q0 + 1, q * q + 3 * q0 * q + 2 * q + q0),
                ("w10", 2 * q0 * q + 2 * q + 3 * q0 + 1, q * q + 3 * q0 * q + 2 * q + 2 * q0),
            ],
            Family::Suzuki => vec![
                ("t", 0, 0),
                ("x", 1, q),
                ("y", q0 + 1, q + q0),
                ("z", 2 * q0 + 1, q + 2 * q0),
                ("w", q + 2 * q0 + 1, q + 2 * q0 + 1),
            ],
            Family::Hermitian => vec![("t", 0, 0), ("x", 1, q0), ("y", q0 + 1, q0 + 1)],
        };
        ValuationTable {
            rows: rows.into_iter().map(|(n, z, p)| ValuationRow { name: n.to_string(), nu0: z, pole: p }).collect(),
        }
    }

    /// Partner of each coordinate under the involution swapping P∞ and
    /// P000, with its sign: coordinate i maps to `sign · coordinate j`.
    pub fn involution(&self) -> Vec<(usize, bool)> {
        let map: Vec<(&str, bool)> = match self.family {
            Family::Ree => vec![
                ("w8", false),
                ("w6", false),
                ("w10", false),
                ("w9", false),
                ("w3", false),
                ("w2", true),
                ("w1", false),
                ("w5", false),
                ("w4", false),
                ("x", false),
                ("w7", true),
                ("t", false),
                ("y2", false),
                ("y1", false),
            ],
            Family::Suzuki => vec![("w", false), ("z", false), ("y", false), ("x", false), ("t", false)],
            Family::Hermitian => vec![("y", false), ("x", false), ("t", false)],
        };
        map.into_iter().map(|(n, neg)| (self.coords.index(n).expect("valid name"), neg)).collect()
    }
}

/// 2cos(kπ/6) as (A, B) meaning A + B√3.
fn two_cos_sixth(k: u64) -> (i128, i128) {
    match k % 12 {
        0 => (2, 0),
        1 | 11 => (0, 1),
        2 | 10 => (1, 0),
        3 | 9 => (0, 0),
        4 | 8 => (-1, 0),
        5 | 7 => (0, -1),
        _ => (-2, 0),
    }
}

fn checked_pow(b: i128, e: u32) -> Option<i128> {
    let mut r: i128 = 1;
    for _ in 0..e {
        r = r.checked_mul(b)?;
    }
    Some(r)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationRow {
    pub name: String,
    /// Zero order at P000.
    pub nu0: u64,
    /// Pole order at P∞, i.e. −ν∞.
    pub pole: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationTable {
    pub rows: Vec<ValuationRow>,
}

impl ValuationTable {
    pub fn get(&self, name: &str) -> Option<&ValuationRow> {
        self.rows.iter().find(|r| r.name == name)
    }
}

/// Ree coordinate values together with the auxiliary function v.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReeValues {
    /// (1, x, y1, y2, w1, …, w10)
    pub coords: [Fe; 14],
    pub v: Fe,
}

impl ReeValues {
    pub fn w7(&self) -> Fe {
        self.coords[10]
    }
}

/// Evaluates the fourteen Ree coordinate functions at an affine point.
pub fn ree_coordinates(f: &Field, q0: u64, x: Fe, y1: Fe, y2: Fe) -> ReeValues {
    let p = |a: Fe, e: u64| f.pow(a, e);
    let e3 = 3 * q0;
    let w1 = f.sub(p(x, e3 + 1), p(y1, e3));
    let w2 = f.sub(f.mul(x, p(y1, e3)), p(y2, e3));
    let w3 = f.sub(f.mul(x, p(y2, e3)), p(w1, e3));
    let w4 = f.sub(f.mul(x, p(w2, q0)), f.mul(y1, p(w1, q0)));
    let v = f.sub(f.mul(x, p(w3, q0)), f.mul(y2, p(w1, q0)));
    let w5 = f.sub(f.mul(y1, p(w3, q0)), f.mul(y2, p(w2, q0)));
    let w6 = f.add(f.sub(p(v, e3), p(w2, e3)), f.mul(x, p(w4, e3)));
    let w7 = f.add(w2, v);
    let w8 = f.sub(f.sub(f.mul(w2, w2), f.mul(x, w6)), f.mul(w1, w3));
    let w9 = f.sub(f.mul(w4, p(w2, q0)), f.mul(y1, p(w6, q0)));
    let w10 = f.sub(f.mul(y2, p(w6, q0)), f.mul(p(w3, q0), w4));
    ReeValues { coords: [Fe::ONE, x, y1, y2, w1, w2, w3, w4, w5, w6, w7, w8, w9, w10], v }
}

/// (1, x, y, z, w) with z = x^{2q0+1} − y^{2q0} and w = x y^{2q0} − z^{2q0}.
pub fn suzuki_coordinates(f: &Field, q0: u64, x: Fe, y: Fe) -> [Fe; 5] {
    let z = f.sub(f.pow(x, 2 * q0 + 1), f.pow(y, 2 * q0));
    let w = f.sub(f.mul(x, f.pow(y, 2 * q0)), f.pow(z, 2 * q0));
    [Fe::ONE, x, y, z, w]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ree_constants() {
        let c = CurveSpec::ree(1).unwrap();
        assert_eq!((c.q, c.q0, c.genus, c.m_infinity), (27, 3, 3627, 1036));
        assert_eq!(7 * c.m_infinity, 2 * c.genus - 2);
    }

    #[test]
    fn counts() {
        let r = CurveSpec::ree(1).unwrap();
        assert_eq!(r.rational_point_count_formula(1).unwrap(), 19684);
        assert_eq!(r.rational_point_count_formula(6).unwrap(), r.hasse_weil_max(6).unwrap());
        let s = CurveSpec::suzuki(1).unwrap();
        assert_eq!(s.rational_point_count_formula(1).unwrap(), 65);
        assert_eq!(s.rational_point_count_formula(4).unwrap(), 5889);
        assert_eq!(s.hasse_weil_max(4).unwrap(), 5889);
        let h = CurveSpec::hermitian(3, 1).unwrap();
        assert_eq!(h.rational_point_count_formula(1).unwrap(), 28);
    }

    #[test]
    fn origin_maps_to_first_basis_vector() {
        let c = CurveSpec::ree(1).unwrap();
        let v = c.coordinates(c.field(), &[Fe::ZERO; 3]);
        assert_eq!(v[0], Fe::ONE);
        assert!(v[1..].iter().all(|a| a.is_zero()));
    }
}
