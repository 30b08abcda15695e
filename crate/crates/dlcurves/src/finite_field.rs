//! Exact arithmetic in GF(p^n) for p in {2, 3}.
//!
//! Elements are encoded as the integer `sum c_i p^i` of their coefficient
//! vector in the polynomial basis of the modulus. Multiplication and addition
//! go through discrete-log and Zech-log tables, which is fast for the field
//! sizes used here (at most 2^20 elements).

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field we are willing to tabulate.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("unsupported characteristic {0}; only 2 and 3 are supported")]
    UnsupportedPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field GF({p}^{n}) exceeds the table limit of 2^20 elements")]
    TooLarge { p: u32, n: u32 },
    #[error("no tabulated modulus for GF({p}^{n})")]
    NoModulus { p: u32, n: u32 },
    #[error("modulus {0:?} is not primitive")]
    NotPrimitive(Vec<u32>),
    #[error("GF({small}) does not embed in GF({big})")]
    NoEmbedding { small: u64, big: u64 },
}

/// Conway polynomials, coefficients low to high (monic, leading 1 included).
fn conway(p: u32, n: u32) -> Option<Vec<u32>> {
    let c: &[u32] = match (p, n) {
        (2, 1) => &[1, 1],
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 1, 0, 1],
        (2, 4) => &[1, 1, 0, 0, 1],
        (2, 5) => &[1, 0, 1, 0, 0, 1],
        (2, 6) => &[1, 1, 0, 1, 1, 0, 1],
        (2, 7) => &[1, 1, 0, 0, 0, 0, 0, 1],
        (2, 8) => &[1, 0, 1, 1, 1, 0, 0, 0, 1],
        (2, 9) => &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1],
        (2, 10) => &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1],
        (2, 11) => &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        (2, 12) => &[1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1],
        (3, 1) => &[1, 1],
        (3, 2) => &[2, 2, 1],
        (3, 3) => &[1, 2, 0, 1],
        (3, 4) => &[2, 0, 0, 2, 1],
        (3, 5) => &[1, 2, 0, 0, 0, 1],
        (3, 6) => &[2, 2, 1, 0, 2, 0, 1],
        (3, 7) => &[1, 0, 2, 0, 0, 0, 0, 1],
        (3, 8) => &[2, 2, 2, 0, 1, 2, 0, 0, 1],
        (3, 9) => &[1, 1, 2, 2, 0, 0, 0, 0, 0, 1],
        (3, 10) => &[2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1],
        (3, 11) => &[1, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        (3, 12) => &[2, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 0, 1],
        _ => return None,
    };
    Some(c.to_vec())
}

/// Parameters of GF(p^n): the prime, the degree and the defining modulus.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldParams {
    pub p: u32,
    pub n: u32,
    /// Monic modulus, coefficients low to high, length n + 1.
    pub modulus: Vec<u32>,
}

impl FieldParams {
    pub fn size(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }

    /// For odd n = 2m+1 returns (q0, q) with q = p q0^2.
    pub fn curve_sizes(&self) -> Option<(u64, u64)> {
        if self.n.is_multiple_of(2) {
            return None;
        }
        let q0 = (self.p as u64).pow((self.n - 1) / 2);
        Some((q0, self.size()))
    }
}

/// Builds the parameters for GF(p^n) from the fixed modulus table.
pub fn make_field(p: u32, n: u32) -> Result<FieldParams, FieldError> {
    if p != 2 && p != 3 {
        return Err(FieldError::UnsupportedPrime(p));
    }
    if n == 0 {
        return Err(FieldError::ZeroDegree);
    }
    if (p as u64).checked_pow(n).is_none_or(|s| s > MAX_FIELD_SIZE) {
        return Err(FieldError::TooLarge { p, n });
    }
    let modulus = conway(p, n).ok_or(FieldError::NoModulus { p, n })?;
    Ok(FieldParams { p, n, modulus })
}

/// A field element, encoded as the base-p integer of its coefficients.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Tabulated GF(p^n).
pub struct GaloisField {
    params: FieldParams,
    size: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    // zech[k] = log(1 + g^k), or u32::MAX when 1 + g^k = 0
    zech: Vec<u32>,
}

/// Shared handle to a field.
pub type Field = Arc<GaloisField>;

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.params.p, self.params.n)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
    }
}

fn poly_mulx_mod(v: &mut [u32], modulus: &[u32], p: u32) {
    // v <- x * v mod modulus, v has length n
    let n = v.len();
    let top = v[n - 1];
    for i in (1..n).rev() {
        v[i] = v[i - 1];
    }
    v[0] = 0;
    if top != 0 {
        for i in 0..n {
            v[i] = (v[i] + (p - top) * modulus[i]) % p;
        }
    }
}

fn encode(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut a: u32, p: u32, n: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    for c in v.iter_mut() {
        *c = a % p;
        a /= p;
    }
    v
}

impl GaloisField {
    /// Tabulates the field; fails if the modulus does not generate the
    /// multiplicative group.
    pub fn new(params: FieldParams) -> Result<Field, FieldError> {
        let p = params.p;
        let n = params.n as usize;
        let size = params.size() as u32;
        let order = size - 1;
        let mut exp = vec![0u32; order as usize];
        let mut log = vec![u32::MAX; size as usize];
        let mut v = vec![0u32; n];
        v[0] = 1;
        for k in 0..order {
            let e = encode(&v, p);
            if log[e as usize] != u32::MAX {
                return Err(FieldError::NotPrimitive(params.modulus.clone()));
            }
            exp[k as usize] = e;
            log[e as usize] = k;
            if n == 1 {
                // multiply by the root -m0 of X + m0
                let g = (p - params.modulus[0] % p) % p;
                v[0] = v[0] * g % p;
            } else {
                poly_mulx_mod(&mut v, &params.modulus, p);
            }
        }
        if order > 1 && exp[0] != 1 {
            return Err(FieldError::NotPrimitive(params.modulus.clone()));
        }
        let mut zech = vec![u32::MAX; order as usize];
        for k in 0..order {
            let g = decode(exp[k as usize], p, n);
            let mut s = g.clone();
            s[0] = (s[0] + 1) % p;
            let e = encode(&s, p);
            zech[k as usize] = if e == 0 { u32::MAX } else { log[e as usize] };
        }
        Ok(Arc::new(GaloisField { params, size, order, exp, log, zech }))
    }

    /// GF(p^n) with the default modulus.
    pub fn with_degree(p: u32, n: u32) -> Result<Field, FieldError> {
        GaloisField::new(make_field(p, n)?)
    }

    pub fn params(&self) -> &FieldParams {
        &self.params
    }

    pub fn p(&self) -> u32 {
        self.params.p
    }

    pub fn degree(&self) -> u32 {
        self.params.n
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Generator of the multiplicative group (the class of X).
    pub fn generator(&self) -> Fe {
        Fe(self.exp[if self.order > 1 { 1 } else { 0 }])
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.size).map(Fe)
    }

    pub fn from_int(&self, c: i64) -> Fe {
        Fe(c.rem_euclid(self.params.p as i64) as u32)
    }

    /// The prime-field value of `a`, if `a` lies in GF(p).
    pub fn to_prime(&self, a: Fe) -> Option<u32> {
        (a.0 < self.params.p).then_some(a.0)
    }

    pub fn coeffs(&self, a: Fe) -> Vec<u32> {
        decode(a.0, self.params.p, self.params.n as usize)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Fe {
        Fe(encode(c, self.params.p))
    }

    pub fn log(&self, a: Fe) -> Option<u32> {
        let l = self.log[a.0 as usize];
        (l != u32::MAX).then_some(l)
    }

    pub fn exp(&self, k: u64) -> Fe {
        Fe(self.exp[(k % self.order as u64) as usize])
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        if self.params.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let k = if lb >= la { lb - la } else { lb + self.order - la };
        let z = self.zech[k as usize];
        if z == u32::MAX {
            return Fe::ZERO;
        }
        let e = la + z;
        Fe(self.exp[(if e >= self.order { e - self.order } else { e }) as usize])
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if a.0 == 0 || self.params.p == 2 {
            return a;
        }
        // -1 = g^{(q-1)/2} in odd characteristic
        let e = self.log[a.0 as usize] + self.order / 2;
        Fe(self.exp[(if e >= self.order { e - self.order } else { e }) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        let e = self.log[a.0 as usize] + self.log[b.0 as usize];
        Fe(self.exp[(if e >= self.order { e - self.order } else { e }) as usize])
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let l = self.log[a.0 as usize];
        Some(Fe(self.exp[((self.order - l) % self.order) as usize]))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    #[inline]
    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let l = self.log[a.0 as usize] as u64;
        Fe(self.exp[((l * (e % self.order as u64)) % self.order as u64) as usize])
    }

    /// a^(p^k).
    pub fn frobenius(&self, a: Fe, k: u32) -> Fe {
        let e = (self.params.p as u64).pow(k % self.params.n) % self.order.max(1) as u64;
        if self.order == 1 {
            return a;
        }
        self.pow(a, if e == 0 { self.order as u64 } else { e })
    }

    /// Whether a lies in the subfield with `sub` elements.
    pub fn in_subfield(&self, a: Fe, sub: u64) -> bool {
        self.pow(a, sub) == a
    }

    pub fn sum<I: IntoIterator<Item = Fe>>(&self, it: I) -> Fe {
        it.into_iter().fold(Fe::ZERO, |s, a| self.add(s, a))
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.params.p, n: self.params.n, modulus: self.params.modulus.clone() }
    }
}

/// Serialized form of a field, included in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

/// Checks irreducibility of a monic polynomial over GF(p) by testing
/// gcd(f, X^(p^d) - X) = 1 for every proper divisor d of n.
pub fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let n = f.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    // x^(p^d) mod f by repeated p-th powering
    let mut x = vec![0u32; n];
    x[1] = 1;
    let mut cur = x.clone();
    for d in 1..n {
        cur = polymod_pow(&cur, p as u64, f, p);
        if n.is_multiple_of(d) {
            let mut g = cur.clone();
            if g.len() < 2 {
                g.resize(2, 0);
            }
            g[1] = (g[1] + p - 1) % p;
            let h = poly_gcd(&trim(g), &trim(f.to_vec()), p);
            if h.len() > 1 {
                return false;
            }
        }
    }
    polymod_pow(&cur, p as u64, f, p) == x
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    if v.is_empty() {
        v.push(0);
    }
    v
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    (1..p).find(|&b| a * b % p == 1).unwrap_or(0)
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lb = inv_mod_p(b[db], p);
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = r[dr] * lb % p;
        for i in 0..=db {
            r[dr - db + i] = (r[dr - db + i] + p * p - c * b[i] % p) % p;
        }
        r = trim(r);
        if dr == 0 {
            break;
        }
    }
    r
}

fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !(b.len() == 1 && b[0] == 0) {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn polymul_mod(a: &[u32], b: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let mut r = poly_rem(&prod, f, p);
    r.resize(f.len() - 1, 0);
    r
}

fn polymod_pow(a: &[u32], mut e: u64, f: &[u32], p: u32) -> Vec<u32> {
    let n = f.len() - 1;
    let mut result = vec![0u32; n];
    result[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = polymul_mod(&result, &base, f, p);
        }
        base = polymul_mod(&base, &base, f, p);
        e >>= 1;
    }
    result
}

/// Dense matrix over GF(p), row-major, used by the linearized solvers.
#[derive(Clone, Debug)]
pub struct PrimeMatrix {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl PrimeMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        PrimeMatrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn at(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v % self.p;
    }
}

/// Reduced row echelon form of the map y -> y^q - y on GF(p^N), viewed
/// as a GF(p)-linear map on coefficient vectors.
#[derive(Clone, Debug)]
pub struct ArtinSchreierSolver {
    field: Field,
    q: u64,
    // augmented elimination: for each pivot row, the pivot column and the
    // row combination taking the image to echelon form
    pivots: Vec<usize>,
    transform: PrimeMatrix,
    kernel: Vec<Fe>,
}

impl ArtinSchreierSolver {
    pub fn new(field: Field, q: u64) -> Self {
        let p = field.p();
        let n = field.degree() as usize;
        // column j = coefficients of L(e_j)
        let mut a = PrimeMatrix::zeros(p, n, n);
        for j in 0..n {
            let e = Fe(p.pow(j as u32));
            let img = field.sub(field.pow(e, q), e);
            for (i, c) in field.coeffs(img).into_iter().enumerate() {
                a.set(i, j, c);
            }
        }
        // row-reduce [A | I]
        let mut m = a.clone();
        let mut t = PrimeMatrix::zeros(p, n, n);
        for i in 0..n {
            t.set(i, i, 1);
        }
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(pr) = (r..n).find(|&i| m.at(i, c) != 0) else { continue };
            for k in 0..n {
                m.data.swap(r * n + k, pr * n + k);
                t.data.swap(r * n + k, pr * n + k);
            }
            let iv = inv_mod_p(m.at(r, c), p);
            for k in 0..n {
                let v = m.at(r, k) * iv % p;
                m.set(r, k, v);
                let v = t.at(r, k) * iv % p;
                t.set(r, k, v);
            }
            for i in 0..n {
                if i != r && m.at(i, c) != 0 {
                    let f = m.at(i, c);
                    for k in 0..n {
                        let v = (m.at(i, k) + p * p - f * m.at(r, k)) % p;
                        m.set(i, k, v);
                        let v = (t.at(i, k) + p * p - f * t.at(r, k)) % p;
                        t.set(i, k, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        // kernel basis from free columns
        let mut basis = Vec::new();
        for free in 0..n {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![0u32; n];
            v[free] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m.at(row, free)) % p;
            }
            basis.push(field.from_coeffs(&v));
        }
        let mut kernel = vec![Fe::ZERO];
        for b in basis {
            let mut next = Vec::with_capacity(kernel.len() * p as usize);
            for &k in &kernel {
                let mut acc = k;
                for _ in 0..p {
                    next.push(acc);
                    acc = field.add(acc, b);
                }
            }
            kernel = next;
        }
        kernel.sort();
        ArtinSchreierSolver { field, q, pivots, transform: t, kernel }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Solutions of y^q - y = 0.
    pub fn kernel(&self) -> &[Fe] {
        &self.kernel
    }

    /// One solution of y^q - y = c, if any.
    pub fn particular(&self, c: Fe) -> Option<Fe> {
        let p = self.field.p();
        let n = self.field.degree() as usize;
        let cv = self.field.coeffs(c);
        // b = T c
        let b: Vec<u32> = (0..n)
            .map(|i| (0..n).map(|k| self.transform.at(i, k) * cv[k]).sum::<u32>() % p)
            .collect();
        if b[self.pivots.len()..].iter().any(|&x| x != 0) {
            return None;
        }
        let mut y = vec![0u32; n];
        for (row, &pc) in self.pivots.iter().enumerate() {
            y[pc] = b[row];
        }
        Some(self.field.from_coeffs(&y))
    }

    /// All y with y^q - y = c.
    pub fn solve(&self, c: Fe) -> Vec<Fe> {
        match self.particular(c) {
            None => Vec::new(),
            Some(y0) => self.kernel.iter().map(|&k| self.field.add(y0, k)).collect(),
        }
    }
}

/// Convenience wrapper over [`ArtinSchreierSolver`].
pub fn solve_artin_schreier(field: &Field, c: Fe, q: u64) -> Vec<Fe> {
    ArtinSchreierSolver::new(field.clone(), q).solve(c)
}

/// An embedding of a small field into a larger one of the same
/// characteristic, fixed by sending the small generator to the least root
/// of its modulus.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub small: Field,
    pub big: Field,
    pub image_of_generator: Fe,
    table: Vec<Fe>,
}

impl Embedding {
    pub fn new(small: &Field, big: &Field) -> Result<Self, FieldError> {
        let err = FieldError::NoEmbedding { small: small.size() as u64, big: big.size() as u64 };
        if small.p() != big.p() || !big.degree().is_multiple_of(small.degree()) {
            return Err(err);
        }
        let m = &small.params().modulus;
        let root = big
            .elements()
            .find(|&a| {
                let v = m.iter().rev().fold(Fe::ZERO, |acc, &c| {
                    big.add(big.mul(acc, a), big.from_int(c as i64))
                });
                v.is_zero()
            })
            .ok_or(err)?;
        let n = small.degree() as usize;
        let powers: Vec<Fe> = (0..n).map(|i| big.pow(root, i as u64)).collect();
        let table = small
            .elements()
            .map(|a| {
                let c = small.coeffs(a);
                big.sum((0..n).map(|i| big.mul(big.from_int(c[i] as i64), powers[i])))
            })
            .collect();
        Ok(Embedding { small: small.clone(), big: big.clone(), image_of_generator: root, table })
    }

    pub fn map(&self, a: Fe) -> Fe {
        self.table[a.0 as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_three() {
        let f = GaloisField::with_degree(3, 1).unwrap();
        assert_eq!(f.size(), 3);
        assert_eq!(f.add(Fe(2), Fe(2)), Fe(1));
        assert_eq!(f.mul(Fe(2), Fe(2)), Fe(1));
        assert_eq!(f.neg(Fe(1)), Fe(2));
    }

    #[test]
    fn gf27_has_26_units() {
        let f = GaloisField::with_degree(3, 3).unwrap();
        assert_eq!(f.elements().filter(|&a| f.inv(a).is_some()).count(), 26);
    }

    #[test]
    fn gf8_elements_satisfy_x8() {
        let f = GaloisField::with_degree(2, 3).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(a, 8), a);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(make_field(5, 1), Err(FieldError::UnsupportedPrime(5)));
        assert_eq!(make_field(3, 0), Err(FieldError::ZeroDegree));
        assert!(matches!(make_field(3, 13), Err(FieldError::TooLarge { .. })));
    }

    #[test]
    fn irreducibility_check() {
        assert!(is_irreducible(2, &[1, 1, 0, 1]));
        assert!(!is_irreducible(2, &[1, 0, 1])); // (x+1)^2
        assert!(!is_irreducible(3, &[2, 0, 1])); // x^2 - 1
    }
}
