//! Power-series expansions of the coordinate functions at P000 in the
//! uniformizer x, and exact valuation queries at P000 and P∞.
//!
//! Every curve here is defined over GF(p) and P000 is GF(p)-rational, so all
//! expansions have prime-field coefficients. A p-th power of a series is then
//! the substitution x ↦ x^p, which keeps Frobenius twists cheap.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::curves::{CurveSpec, Family};
use crate::finite_field::Fe;
use crate::multipoly::MultiPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("precision ceiling {ceiling} reached before a nonzero coefficient appeared")]
    PrecisionCeiling { ceiling: usize },
    #[error("series vanish to the degree bound {bound} but the polynomial is nonzero at a curve point")]
    Inconsistent { bound: u64 },
    #[error("polynomial coordinates do not match the curve")]
    CoordinateMismatch,
    #[error("fixed-point iteration did not stabilise")]
    NoConvergence,
    #[error("series is not invertible (zero constant term)")]
    NotUnit,
}

const NTT_MOD: u64 = 998_244_353;
const NTT_ROOT: u64 = 3;

fn mod_pow(mut b: u64, mut e: u64) -> u64 {
    let mut r = 1u64;
    b %= NTT_MOD;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % NTT_MOD;
        }
        b = b * b % NTT_MOD;
        e >>= 1;
    }
    r
}

fn ntt(a: &mut [u64], invert: bool) {
    let n = a.len();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j ^= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w = mod_pow(NTT_ROOT, (NTT_MOD - 1) / len as u64);
        if invert {
            w = mod_pow(w, NTT_MOD - 2);
        }
        let half = len / 2;
        let mut tw = Vec::with_capacity(half);
        let mut cur = 1u64;
        for _ in 0..half {
            tw.push(cur);
            cur = cur * w % NTT_MOD;
        }
        for start in (0..n).step_by(len) {
            for k in 0..half {
                let u = a[start + k];
                let v = a[start + k + half] * tw[k] % NTT_MOD;
                a[start + k] = if u + v >= NTT_MOD { u + v - NTT_MOD } else { u + v };
                a[start + k + half] = if u >= v { u - v } else { u + NTT_MOD - v };
            }
        }
        len <<= 1;
    }
    if invert {
        let inv = mod_pow(n as u64, NTT_MOD - 2);
        for x in a.iter_mut() {
            *x = *x * inv % NTT_MOD;
        }
    }
}

/// Product of two GF(p) coefficient vectors, truncated to `len`.
///
/// Convolution entries are bounded by len·(p−1)², far below the NTT
/// modulus, so the integer convolution is exact before reduction mod p.
pub fn convolve_mod_p(a: &[u8], b: &[u8], len: usize, p: u8) -> Vec<u8> {
    let la = a.len().min(len);
    let lb = b.len().min(len);
    let a = &a[..la];
    let b = &b[..lb];
    let mut out = vec![0u8; len];
    if la == 0 || lb == 0 {
        return out;
    }
    let p32 = p as u32;
    if la.min(lb) <= 48 {
        let (s, l) = if la <= lb { (a, b) } else { (b, a) };
        let mut acc = vec![0u32; len];
        for (i, &x) in s.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let lim = (len - i).min(l.len());
            for (j, &y) in l[..lim].iter().enumerate() {
                acc[i + j] += x as u32 * y as u32;
            }
        }
        for (o, v) in out.iter_mut().zip(acc) {
            *o = (v % p32) as u8;
        }
        return out;
    }
    let need = (la + lb - 1).min(len);
    let size = (la + lb - 1).next_power_of_two();
    let mut fa: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    fa.resize(size, 0);
    let mut fb: Vec<u64> = b.iter().map(|&x| x as u64).collect();
    fb.resize(size, 0);
    ntt(&mut fa, false);
    ntt(&mut fb, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % NTT_MOD;
    }
    ntt(&mut fa, true);
    for i in 0..need {
        out[i] = (fa[i] % p as u64) as u8;
    }
    out
}

/// Power series over GF(p) known exactly below `prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    p: u8,
    coeffs: Vec<u8>,
}

impl TruncatedSeries {
    pub fn zero(p: u8, prec: usize) -> Self {
        TruncatedSeries { p, coeffs: vec![0; prec] }
    }

    /// c·x^e.
    pub fn monomial(p: u8, prec: usize, e: usize, c: u8) -> Self {
        let mut s = Self::zero(p, prec);
        if e < prec {
            s.coeffs[e] = c % p;
        }
        s
    }

    pub fn from_coeffs(p: u8, coeffs: Vec<u8>) -> Self {
        TruncatedSeries { p, coeffs: coeffs.into_iter().map(|c| c % p).collect() }
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u8 {
        self.coeffs[i]
    }

    /// Order of the first nonzero coefficient; `None` means every retained
    /// coefficient is zero, so only "valuation ≥ precision" is known.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(prec);
        TruncatedSeries { p: self.p, coeffs: c }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        let p = self.p;
        let coeffs = (0..n).map(|i| (self.coeffs[i] + o.coeffs[i]) % p).collect();
        TruncatedSeries { p, coeffs }
    }

    pub fn neg(&self) -> Self {
        let p = self.p;
        TruncatedSeries { p, coeffs: self.coeffs.iter().map(|&c| (p - c) % p).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn scale(&self, c: u8) -> Self {
        let p = self.p as u32;
        TruncatedSeries {
            p: self.p,
            coeffs: self.coeffs.iter().map(|&a| ((a as u32 * c as u32) % p) as u8).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.precision().min(o.precision());
        TruncatedSeries { p: self.p, coeffs: convolve_mod_p(&self.coeffs, &o.coeffs, n, self.p) }
    }

    /// a(x^k). Exact to k·precision; truncated to `prec`.
    pub fn substitute_power(&self, k: usize, prec: usize) -> Self {
        let known = self.precision().saturating_mul(k).min(prec);
        let mut out = vec![0u8; known];
        for (i, &c) in self.coeffs.iter().enumerate() {
            let j = i * k;
            if j >= known {
                break;
            }
            out[j] = c;
        }
        TruncatedSeries { p: self.p, coeffs: out }
    }

    /// a^e using base-p digits: a^{p^i} is a(x^{p^i}).
    pub fn pow(&self, e: u64) -> Self {
        let n = self.precision();
        let p = self.p as u64;
        let mut result = TruncatedSeries::monomial(self.p, n, 0, 1);
        let mut e = e;
        let mut k = 1usize;
        while e > 0 {
            let d = e % p;
            if d > 0 {
                let base = self.substitute_power(k, n);
                for _ in 0..d {
                    result = result.mul(&base);
                }
            }
            e /= p;
            k = k.saturating_mul(self.p as usize);
            if k >= n && e > 0 {
                // a(x^k) with k ≥ n is its constant term c0 ∈ GF(p), and
                // c0^{p^i} = c0, so the rest contributes c0^{digit sum}
                let c0 = self.coeffs.first().copied().unwrap_or(0) as u64;
                let mut c = 1u64;
                while e > 0 {
                    for _ in 0..(e % p) {
                        c = c * c0 % p;
                    }
                    e /= p;
                }
                return result.scale(c as u8);
            }
        }
        result
    }

    /// Multiplicative inverse of a unit, by Newton iteration.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let n = self.precision();
        let p = self.p;
        let c0 = *self.coeffs.first().ok_or(SeriesError::NotUnit)?;
        if c0 == 0 {
            return Err(SeriesError::NotUnit);
        }
        // in GF(2) and GF(3) every unit is its own inverse
        let mut g = TruncatedSeries::monomial(p, 1, 0, c0);
        let mut k = 1;
        while k < n {
            k = (2 * k).min(n);
            let a = self.truncate(k);
            let gk = TruncatedSeries { p, coeffs: { let mut c = g.coeffs.clone(); c.resize(k, 0); c } };
            let ag = a.mul(&gk);
            let two_minus = TruncatedSeries::monomial(p, k, 0, 2).sub(&ag);
            g = gk.mul(&two_minus);
        }
        Ok(g)
    }

    /// Divides by x^k; the result is known to precision − k.
    pub fn shift_down(&self, k: usize) -> Self {
        TruncatedSeries { p: self.p, coeffs: self.coeffs.get(k..).map(|s| s.to_vec()).unwrap_or_default() }
    }
}

/// Expansions of every coordinate (plus auxiliary functions) at P000.
#[derive(Clone, Debug)]
pub struct SeriesTable {
    pub precision: usize,
    names: Vec<String>,
    series: Vec<TruncatedSeries>,
}

impl SeriesTable {
    pub fn get(&self, name: &str) -> Option<&TruncatedSeries> {
        self.names.iter().position(|n| n == name).map(|i| &self.series[i])
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &TruncatedSeries)> {
        self.names.iter().map(|s| s.as_str()).zip(self.series.iter())
    }
}

/// Solves y = c + y(x^k) by iteration from 0; the error order grows by a
/// factor k each round.
fn fixed_point(c: &TruncatedSeries, k: usize, sign: u8) -> Result<TruncatedSeries, SeriesError> {
    let n = c.precision();
    let mut y = TruncatedSeries::zero(c.p(), n);
    for _ in 0..64 {
        let mut frob = y.substitute_power(k, n);
        if sign != 1 {
            frob = frob.neg();
        }
        let next = c.add(&frob);
        if next == y {
            return Ok(y);
        }
        y = next;
    }
    Err(SeriesError::NoConvergence)
}

/// Expands all coordinate functions in the uniformizer x at P000 to `n`
/// coefficients. The Ree table also carries v.
pub fn expand_coordinates(curve: &CurveSpec, n: usize) -> Result<SeriesTable, SeriesError> {
    let p = curve.p as u8;
    let q = curve.q as usize;
    let q0 = curve.q0 as usize;
    let mono = |e: usize| TruncatedSeries::monomial(p, n, e, 1);
    let one = mono(0);
    let x = mono(1);
    let (names, series): (Vec<&str>, Vec<TruncatedSeries>) = match curve.family {
        Family::Hermitian => {
            // y = x^{q0+1} − y^{q0}
            let y = fixed_point(&mono(q0 + 1), q0, p - 1)?;
            (vec!["t", "x", "y"], vec![one, x, y])
        }
        Family::Suzuki | Family::Ree => {
            // y1 = y1^q + x^{q0+1} − x^{q+q0}
            let y1 = fixed_point(&mono(q0 + 1).sub(&mono(q + q0)), q, 1)?;
            let f = |a: &TruncatedSeries, k: usize| a.substitute_power(k, n);
            if curve.family == Family::Suzuki {
                let z = mono(2 * q0 + 1).sub(&f(&y1, 2 * q0));
                let w = x.mul(&f(&y1, 2 * q0)).sub(&f(&z, 2 * q0));
                (vec!["t", "x", "y", "z", "w"], vec![one, x, y1, z, w])
            } else {
                // y2 = y2^q − x^{q0}(y1^q − y1)
                let c = mono(q0).mul(&f(&y1, q).sub(&y1)).neg();
                let y2 = fixed_point(&c, q, 1)?;
                let e3 = 3 * q0;
                let w1 = mono(e3 + 1).sub(&f(&y1, e3));
                let w2 = x.mul(&f(&y1, e3)).sub(&f(&y2, e3));
                let w3 = x.mul(&f(&y2, e3)).sub(&f(&w1, e3));
                let w4 = x.mul(&f(&w2, q0)).sub(&y1.mul(&f(&w1, q0)));
                let v = x.mul(&f(&w3, q0)).sub(&y2.mul(&f(&w1, q0)));
                let w5 = y1.mul(&f(&w3, q0)).sub(&y2.mul(&f(&w2, q0)));
                let w6 = f(&v, e3).sub(&f(&w2, e3)).add(&x.mul(&f(&w4, e3)));
                let w7 = w2.add(&v);
                let w8 = w2.mul(&w2).sub(&x.mul(&w6)).sub(&w1.mul(&w3));
                let w9 = w4.mul(&f(&w2, q0)).sub(&y1.mul(&f(&w6, q0)));
                let w10 = y2.mul(&f(&w6, q0)).sub(&f(&w3, q0).mul(&w4));
                (
                    vec!["t", "x", "y1", "y2", "w1", "w2", "w3", "w4", "w5", "w6", "w7", "w8", "w9", "w10", "v"],
                    vec![one, x, y1, y2, w1, w2, w3, w4, w5, w6, w7, w8, w9, w10, v],
                )
            }
        }
    };
    Ok(SeriesTable { precision: n, names: names.into_iter().map(String::from).collect(), series })
}

/// Precision schedule for valuation queries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionPolicy {
    pub initial: usize,
    pub ceiling: usize,
}

impl PrecisionPolicy {
    /// 2·(2g−2) + 2·m∞ + 1 coefficients, doubling up to 2^20.
    pub fn default_for(curve: &CurveSpec) -> Self {
        let g = curve.genus as usize;
        let m = curve.m_infinity as usize;
        PrecisionPolicy { initial: 2 * (2 * g).saturating_sub(2) + 2 * m + 1, ceiling: 1 << 20 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Valuation {
    Finite(u64),
    /// The function vanishes identically on the curve.
    Zero,
}

impl Valuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Zero => None,
        }
    }
}

/// Valuation oracle at P000 and P∞ with precision doubling.
pub struct SeriesOracle {
    curve: CurveSpec,
    policy: PrecisionPolicy,
    table: SeriesTable,
    poles: Vec<u64>,
}

impl SeriesOracle {
    pub fn new(curve: &CurveSpec, policy: PrecisionPolicy) -> Result<Self, SeriesError> {
        let table = expand_coordinates(curve, policy.initial.max(1))?;
        Ok(SeriesOracle { curve: curve.clone(), policy, table, poles: curve.pole_orders() })
    }

    pub fn curve(&self) -> &CurveSpec {
        &self.curve
    }

    pub fn table(&self) -> &SeriesTable {
        &self.table
    }

    fn coordinate_series(&self) -> Vec<&TruncatedSeries> {
        self.curve.coords().names.iter().map(|n| self.table.get(n).expect("coordinate expanded")).collect()
    }

    /// Series of a polynomial in the coordinate functions (t = 1).
    pub fn compose(&self, f: &MultiPoly) -> Result<TruncatedSeries, SeriesError> {
        if f.coords() != self.curve.coords() {
            return Err(SeriesError::CoordinateMismatch);
        }
        let coords = self.coordinate_series();
        let p = self.curve.p as u8;
        let n = self.table.precision;
        let mut cache: HashMap<(usize, u32), TruncatedSeries> = HashMap::new();
        let mut acc = TruncatedSeries::zero(p, n);
        for (exp, c) in f.terms() {
            let c = f.field().to_prime(c).expect("curve functions have prime-field coefficients") as u8;
            let mut term = TruncatedSeries::monomial(p, n, 0, c);
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 || i == 0 {
                    continue;
                }
                let s = cache.entry((i, e)).or_insert_with(|| coords[i].pow(e as u64));
                term = term.mul(s);
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Largest pole order at P∞ among the terms of f (the t-slot is ignored).
    pub fn weighted_pole_degree(&self, f: &MultiPoly) -> u64 {
        f.terms()
            .map(|(e, _)| e.iter().zip(&self.poles).map(|(&a, &b)| a as u64 * b).sum::<u64>())
            .max()
            .unwrap_or(0)
    }

    fn raise_precision(&mut self) -> Result<(), SeriesError> {
        let n = self.table.precision;
        if n >= self.policy.ceiling {
            return Err(SeriesError::PrecisionCeiling { ceiling: self.policy.ceiling });
        }
        self.table = expand_coordinates(&self.curve, (2 * n).min(self.policy.ceiling))?;
        Ok(())
    }

    /// ν0(f). A nonzero f has ν0(f) ≤ its pole order, so vanishing past the
    /// weighted pole degree D proves f = 0; 200 random rational points are
    /// checked as a second witness.
    pub fn valuation_at_origin(&mut self, f: &MultiPoly) -> Result<Valuation, SeriesError> {
        let bound = self.weighted_pole_degree(f);
        self.valuation_with_bound(f, bound, f)
    }

    fn valuation_with_bound(&mut self, f: &MultiPoly, bound: u64, original: &MultiPoly) -> Result<Valuation, SeriesError> {
        loop {
            let s = self.compose(f)?;
            if let Some(v) = s.valuation() {
                return Ok(Valuation::Finite(v as u64));
            }
            if s.precision() as u64 > bound {
                return if self.vanishes_at_random_points(original, 200) {
                    Ok(Valuation::Zero)
                } else {
                    Err(SeriesError::Inconsistent { bound })
                };
            }
            self.raise_precision()?;
        }
    }

    /// ν∞(f) = ν0(φ-numerator) − d·m∞ for f homogenized to degree d. Returns
    /// the valuation, which is minus the pole order.
    pub fn valuation_at_infinity(&mut self, f: &MultiPoly) -> Result<Option<i64>, SeriesError> {
        if f.is_zero() {
            return Ok(None);
        }
        let d = f.total_degree().unwrap_or(0);
        let h = f.homogenize(d, "t").map_err(|_| SeriesError::CoordinateMismatch)?;
        let numer = self.involution_image(&h);
        let bound = d as u64 * self.curve.m_infinity;
        match self.valuation_with_bound(&numer, bound, f)? {
            Valuation::Zero => Ok(None),
            Valuation::Finite(v) => Ok(Some(v as i64 - bound as i64)),
        }
    }

    /// Pole order at P∞ (−ν∞), `None` for the zero function.
    pub fn pole_order(&mut self, f: &MultiPoly) -> Result<Option<u64>, SeriesError> {
        Ok(self.valuation_at_infinity(f)?.map(|v| (-v) as u64))
    }

    /// Substitutes each coordinate by its signed involution partner.
    pub fn involution_image(&self, h: &MultiPoly) -> MultiPoly {
        let inv = self.curve.involution();
        let field = h.field();
        let mut out = MultiPoly::zero(h.coords(), field);
        for (e, c) in h.terms() {
            let mut ne = vec![0u32; e.len()];
            let mut neg = false;
            for (i, &k) in e.iter().enumerate() {
                let (j, s) = inv[i];
                ne[j] += k;
                if s && k % 2 == 1 {
                    neg = !neg;
                }
            }
            out.add_term(ne, if neg { field.neg(c) } else { c });
        }
        out
    }

    fn vanishes_at_random_points(&self, f: &MultiPoly, count: usize) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ count as u64);
        let field = self.curve.field();
        let nf = f.field();
        let ff = if nf.degree() == field.degree() { f.clone() } else {
            match f.to_field(field) {
                Ok(g) => g,
                Err(_) => return false,
            }
        };
        let compiled = ff.compile();
        for _ in 0..count {
            let pt = random_rational_point(&self.curve, &mut rng);
            let v = self.curve.coordinates(field, &pt);
            if !compiled.eval(field, &v).is_zero() {
                return false;
            }
        }
        true
    }
}

/// A uniformly random affine GF(q)-point of the curve.
pub fn random_rational_point<R: Rng>(curve: &CurveSpec, rng: &mut R) -> Vec<Fe> {
    let field = curve.field();
    let q = field.size();
    let mut pick = || Fe(rng.gen_range(0..q));
    match curve.family {
        Family::Ree => vec![pick(), pick(), pick()],
        Family::Suzuki => vec![pick(), pick()],
        Family::Hermitian => loop {
            let x = pick();
            let y = pick();
            if curve.affine_residuals(field, &[x, y])[0].is_zero() {
                return vec![x, y];
            }
        },
    }
}

/// Laurent expansions at P∞ in the local parameter φ*(x): coordinate c has
/// expansion `unit[c] · s^{−m∞}`, where `unit[c]` is the P000 series of its
/// signed partner divided by the unit part of the partner of t.
#[derive(Clone, Debug)]
pub struct InfinityExpansion {
    pub precision: usize,
    pub m_infinity: usize,
    pub poles: Vec<u64>,
    pub units: Vec<TruncatedSeries>,
}

impl InfinityExpansion {
    pub fn new(curve: &CurveSpec, n: usize) -> Result<Self, SeriesError> {
        let m = curve.m_infinity as usize;
        let table = expand_coordinates(curve, n + m)?;
        let inv = curve.involution();
        let names = &curve.coords().names;
        // partner of t vanishes to order exactly m∞
        let (jt, _) = inv[0];
        let top = table.get(&names[jt]).unwrap();
        if top.valuation() != Some(m) {
            return Err(SeriesError::NotUnit);
        }
        let u = top.shift_down(m).truncate(n).inverse()?;
        let mut units = Vec::with_capacity(names.len());
        for &(j, neg) in &inv {
            let s = table.get(&names[j]).unwrap().truncate(n);
            let s = if neg { s.neg() } else { s };
            units.push(s.mul(&u));
        }
        Ok(InfinityExpansion { precision: n, m_infinity: m, poles: curve.pole_orders(), units })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ntt_matches_schoolbook() {
        let a: Vec<u8> = (0..300).map(|i| (i * 7 % 3) as u8).collect();
        let b: Vec<u8> = (0..200).map(|i| (i * 5 % 3) as u8).collect();
        let fast = convolve_mod_p(&a, &b, 400, 3);
        let mut slow = vec![0u32; 400];
        for i in 0..300 {
            for j in 0..200 {
                if i + j < 400 {
                    slow[i + j] += a[i] as u32 * b[j] as u32;
                }
            }
        }
        let slow: Vec<u8> = slow.into_iter().map(|v| (v % 3) as u8).collect();
        assert_eq!(fast, slow);
    }

    #[test]
    fn inverse_roundtrip() {
        let s = TruncatedSeries::from_coeffs(3, (0..100).map(|i| ((i * i + 1) % 3) as u8).collect());
        let s = s.add(&TruncatedSeries::monomial(3, 100, 0, 1));
        if s.coeff(0) != 0 {
            let inv = s.inverse().unwrap();
            assert_eq!(s.mul(&inv), TruncatedSeries::monomial(3, 100, 0, 1));
        }
    }

    #[test]
    fn pow_uses_frobenius() {
        let s = TruncatedSeries::from_coeffs(3, vec![1, 2, 0, 1, 1, 0, 2, 2, 1, 0]);
        let mut naive = TruncatedSeries::monomial(3, 10, 0, 1);
        for _ in 0..14 {
            naive = naive.mul(&s);
        }
        assert_eq!(s.pow(14), naive);
    }
}
