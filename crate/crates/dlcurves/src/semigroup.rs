//! Numerical semigroups and the Weierstrass semigroup H(P∞) computed from
//! Laurent expansions at P∞.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::time::Instant;

use thiserror::Error;

use crate::curves::CurveSpec;
use crate::finite_field::Fe;
use crate::local_series::{convolve_mod_p, InfinityExpansion, PrecisionPolicy, SeriesError, SeriesOracle};
use crate::multipoly::MultiPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemigroupError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("expansion precision {precision} too small: a product needs the coefficient at s^0")]
    Precision { precision: usize },
    #[error("found {found} nongaps below 2g but the genus allows only {expected}")]
    TooManyNongaps { found: usize, expected: usize },
    #[error("candidates exhausted at pole bound {bound} with {found} of {expected} nongaps")]
    Incomplete { bound: u64, found: usize, expected: usize },
    #[error("witness expansion exceeds {0} terms")]
    WitnessTooLarge(usize),
}

/// Nongaps of a numerical semigroup inside [0, bound].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericSemigroup {
    bound: u64,
    member: Vec<bool>,
}

impl NumericSemigroup {
    /// Additive closure of `generators` intersected with [0, bound].
    pub fn generate_from(generators: &[u64], bound: u64) -> Self {
        let mut member = vec![false; bound as usize + 1];
        member[0] = true;
        for n in 1..=bound as usize {
            member[n] = generators.iter().any(|&g| g > 0 && g as usize <= n && member[n - g as usize]);
        }
        NumericSemigroup { bound, member }
    }

    /// Takes a nongap set as given; 0 is always included.
    pub fn from_nongaps(nongaps: &[u64], bound: u64) -> Self {
        let mut member = vec![false; bound as usize + 1];
        member[0] = true;
        for &a in nongaps {
            if a <= bound {
                member[a as usize] = true;
            }
        }
        NumericSemigroup { bound, member }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn contains(&self, a: u64) -> bool {
        self.member.get(a as usize).copied().unwrap_or(false)
    }

    pub fn nongaps(&self) -> Vec<u64> {
        (0..=self.bound).filter(|&a| self.member[a as usize]).collect()
    }

    pub fn count_nongaps_below(&self, limit: u64) -> usize {
        (0..limit.min(self.bound + 1)).filter(|&a| self.member[a as usize]).count()
    }

    /// Gaps in [0, bound].
    pub fn gap_count(&self) -> usize {
        self.member.iter().filter(|&&b| !b).count()
    }

    pub fn is_closed(&self) -> bool {
        let ng = self.nongaps();
        for (i, &a) in ng.iter().enumerate() {
            for &b in &ng[i..] {
                if a + b > self.bound {
                    break;
                }
                if !self.contains(a + b) {
                    return false;
                }
            }
        }
        true
    }

    /// a ∈ S ⇔ 2g−1−a ∉ S for 0 ≤ a < 2g.
    pub fn symmetry_check(&self, g: u64) -> bool {
        if g == 0 {
            return true;
        }
        if self.bound + 1 < 2 * g {
            return false;
        }
        (0..2 * g).all(|a| self.contains(a) != self.contains(2 * g - 1 - a))
    }

    /// Nongap counts in [0, 2g−1] by residue class.
    pub fn residue_counts(&self, modulus: u64, limit: u64) -> Vec<usize> {
        let mut out = vec![0; modulus as usize];
        for a in 0..limit.min(self.bound + 1) {
            if self.member[a as usize] {
                out[(a % modulus) as usize] += 1;
            }
        }
        out
    }

    /// Nongaps that are not sums of two smaller positive nongaps. Integers
    /// from 2g on count as nongaps, so the set is only meaningful once all
    /// nongaps below 2g are known.
    pub fn minimal_generators(&self, g: u64) -> Vec<u64> {
        let top = (2 * g).max(self.bound + 1);
        let first = (1..top).find(|&a| self.is_nongap(a, g)).unwrap_or(1);
        let limit = top + first;
        let nongap: Vec<bool> = (0..=limit).map(|a| self.is_nongap(a, g)).collect();
        let mut out = Vec::new();
        for n in 1..=limit {
            if !nongap[n as usize] {
                continue;
            }
            let split = (1..=n / 2).any(|a| nongap[a as usize] && nongap[(n - a) as usize]);
            if !split {
                out.push(n);
            }
        }
        out
    }

    fn is_nongap(&self, a: u64, g: u64) -> bool {
        if a >= 2 * g && g > 0 {
            return true;
        }
        self.contains(a)
    }
}

/// GF(2)/GF(3) vector in bit planes; GF(3) uses one plane for the value 1
/// and one for the value 2.
#[derive(Clone, Debug)]
struct Packed {
    ones: Vec<u64>,
    twos: Vec<u64>,
}

impl Packed {
    fn zeros(len: usize) -> Self {
        let w = len.div_ceil(64);
        Packed { ones: vec![0; w], twos: vec![0; w] }
    }

    fn set(&mut self, k: usize, v: u8) {
        let (w, b) = (k / 64, k % 64);
        match v {
            1 => self.ones[w] |= 1 << b,
            2 => self.twos[w] |= 1 << b,
            _ => {}
        }
    }

    fn get(&self, k: usize) -> u8 {
        let (w, b) = (k / 64, k % 64);
        ((self.ones[w] >> b) & 1) as u8 | ((((self.twos[w] >> b) & 1) as u8) << 1)
    }

    fn highest(&self) -> Option<usize> {
        for w in (0..self.ones.len()).rev() {
            let m = self.ones[w] | self.twos[w];
            if m != 0 {
                return Some(w * 64 + 63 - m.leading_zeros() as usize);
            }
        }
        None
    }

    /// self −= c·other over the words other covers.
    fn sub_scaled(&mut self, other: &Packed, c: u8, p: u8) {
        let n = other.ones.len();
        if p == 2 {
            for i in 0..n {
                self.ones[i] ^= other.ones[i];
            }
            return;
        }
        // −c·other: for c = 1 swap planes, for c = 2 keep them
        let (b1s, b2s) = if c == 1 { (&other.twos, &other.ones) } else { (&other.ones, &other.twos) };
        for i in 0..n {
            let (a1, a2, b1, b2) = (self.ones[i], self.twos[i], b1s[i], b2s[i]);
            let na = a1 | a2;
            let nb = b1 | b2;
            self.ones[i] = (a1 & !nb) | (b1 & !na) | (a2 & b2);
            self.twos[i] = (a2 & !nb) | (b2 & !na) | (a1 & b1);
        }
    }
}

/// How a basis function was built: `scale · (coord · parent − Σ c_k b_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    pub coord: usize,
    pub parent: usize,
    pub reducers: Vec<(usize, u8)>,
    pub scale: u8,
}

/// A function in L(∞P∞) with known Laurent expansion at P∞.
#[derive(Clone, Debug)]
pub struct BasisFunction {
    pub pole: u64,
    /// Coefficients of s^e for e = −pole ..= top.
    pub laurent: Vec<u8>,
    /// `None` for the constant 1.
    pub recipe: Option<Recipe>,
    window: Packed,
}

impl BasisFunction {
    pub fn top(&self) -> i64 {
        self.laurent.len() as i64 - 1 - self.pole as i64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    /// Expansion length at P∞ (coefficients of the unit parts).
    pub precision: usize,
    /// Initial bound on the naive pole order of candidate products.
    pub candidate_bound: u64,
}

impl EngineConfig {
    pub fn default_for(curve: &CurveSpec) -> Self {
        let g = curve.genus as usize;
        let m = curve.m_infinity as usize;
        EngineConfig { precision: 2 * (2 * g).saturating_sub(2) + 2 * m + 1, candidate_bound: (2 * curve.genus).saturating_sub(1).max(1) }
    }
}

#[derive(Clone, Debug, Default)]
pub struct EngineStats {
    pub candidates: usize,
    pub direct: usize,
    pub reduced_new: usize,
    pub reduced_to_span: usize,
    pub bound_raises: usize,
    pub seconds: f64,
}

/// Result of the reduction engine: an echelon basis of L((2g−1)P∞) and more.
pub struct WeierstrassResult {
    pub genus: u64,
    pub basis: Vec<BasisFunction>,
    pub semigroup: NumericSemigroup,
    pub stats: EngineStats,
    poles: Vec<u64>,
}

impl WeierstrassResult {
    pub fn index_of_pole(&self, pole: u64) -> Option<usize> {
        self.basis.iter().position(|b| b.pole == pole)
    }

    pub fn poles(&self) -> &[u64] {
        &self.poles
    }

    /// Expands the witness of basis function `i` as a polynomial in the
    /// coordinates, failing past `cap` terms.
    pub fn witness(&self, curve: &CurveSpec, i: usize, cap: usize) -> Result<MultiPoly, SemigroupError> {
        let mut memo: HashMap<usize, MultiPoly> = HashMap::new();
        self.witness_rec(curve, i, cap, &mut memo)
    }

    fn witness_rec(
        &self,
        curve: &CurveSpec,
        i: usize,
        cap: usize,
        memo: &mut HashMap<usize, MultiPoly>,
    ) -> Result<MultiPoly, SemigroupError> {
        if let Some(p) = memo.get(&i) {
            return Ok(p.clone());
        }
        let f = curve.field();
        let coords = curve.coords();
        let out = match &self.basis[i].recipe {
            None => MultiPoly::one(coords, f),
            Some(r) => {
                let parent = self.witness_rec(curve, r.parent, cap, memo)?;
                let mut acc = MultiPoly::var_index(coords, f, r.coord).mul(&parent);
                for &(k, c) in &r.reducers {
                    let wk = self.witness_rec(curve, k, cap, memo)?;
                    acc = acc.sub(&wk.scale(f.from_int(c as i64)));
                    if acc.num_terms() > cap {
                        return Err(SemigroupError::WitnessTooLarge(cap));
                    }
                }
                acc.scale(f.from_int(r.scale as i64))
            }
        };
        if out.num_terms() > cap {
            return Err(SemigroupError::WitnessTooLarge(cap));
        }
        memo.insert(i, out.clone());
        Ok(out)
    }
}

fn inv_mod_p(a: u8, p: u8) -> u8 {
    // GF(2) and GF(3): every unit is its own inverse
    debug_assert!(a != 0 && a < p);
    a
}

/// Computes pole orders of L(∞P∞) by echelon reduction of Laurent series.
///
/// Candidates `c · b` (coordinate times basis function) are processed in
/// ascending naive pole order, FIFO among ties. A candidate whose leading
/// pole is new becomes a basis function; otherwise it is reduced against the
/// basis on the window of exponents [−P, 0]. A nonzero remainder has a new,
/// strictly smaller pole order. The run stops once [0, 2g−1] holds g
/// nongaps, which is dim L((2g−1)P∞) by Riemann–Roch, so the set is then
/// complete.
pub fn compute_weierstrass_semigroup(curve: &CurveSpec, cfg: EngineConfig) -> Result<WeierstrassResult, SemigroupError> {
    let start = Instant::now();
    let p = curve.p as u8;
    let g = curve.genus;
    let two_g = 2 * g;
    let exp = InfinityExpansion::new(curve, cfg.precision)?;
    let m = exp.m_infinity;
    let ncoords = exp.poles.len();
    // coordinate c = coord_series[c] · s^{−pole_c}
    let coord_series: Vec<Vec<u8>> = (0..ncoords)
        .map(|c| {
            let lead = m - exp.poles[c] as usize;
            exp.units[c].coeffs()[lead..].to_vec()
        })
        .collect();
    let coord_top = cfg.precision as i64 - 1 - m as i64;

    let mut basis: Vec<BasisFunction> = Vec::new();
    let mut by_pole: HashMap<u64, usize> = HashMap::new();
    let mut one = Packed::zeros(1);
    one.set(0, 1);
    // the constant 1 is known exactly to any order; store enough zeros
    let mut one_laurent = vec![0u8; cfg.precision];
    one_laurent[0] = 1;
    basis.push(BasisFunction { pole: 0, laurent: one_laurent, recipe: None, window: one });
    by_pole.insert(0, 0);

    let mut bound = cfg.candidate_bound;
    let mut heap: BinaryHeap<Reverse<(u64, u64, usize, usize)>> = BinaryHeap::new();
    let mut deferred: Vec<(usize, usize)> = Vec::new();
    let mut seq = 0u64;
    let mut stats = EngineStats::default();
    let nongaps_below = |by_pole: &HashMap<u64, usize>| by_pole.keys().filter(|&&k| k < two_g).count();

    let push = |heap: &mut BinaryHeap<_>, deferred: &mut Vec<(usize, usize)>, seq: &mut u64, idx: usize, pole: u64, bound: u64| {
        for c in 1..ncoords {
            let naive = pole + exp.poles[c];
            if naive <= bound {
                heap.push(Reverse((naive, *seq, c, idx)));
                *seq += 1;
            } else {
                deferred.push((c, idx));
            }
        }
    };
    push(&mut heap, &mut deferred, &mut seq, 0, 0, bound);

    while nongaps_below(&by_pole) < g as usize {
        let Some(Reverse((naive, _, c, bi))) = heap.pop() else {
            if deferred.is_empty() {
                return Err(SemigroupError::Incomplete { bound, found: nongaps_below(&by_pole), expected: g as usize });
            }
            bound += m as u64;
            stats.bound_raises += 1;
            let mut keep = Vec::new();
            for (c, idx) in std::mem::take(&mut deferred) {
                let naive = basis[idx].pole + exp.poles[c];
                if naive <= bound {
                    heap.push(Reverse((naive, seq, c, idx)));
                    seq += 1;
                } else {
                    keep.push((c, idx));
                }
            }
            deferred = keep;
            continue;
        };
        stats.candidates += 1;
        let b = &basis[bi];
        let top = (coord_top - b.pole as i64).min(b.top() - exp.poles[c] as i64);
        if top < 0 {
            return Err(SemigroupError::Precision { precision: cfg.precision });
        }
        if let std::collections::hash_map::Entry::Vacant(e) = by_pole.entry(naive) {
            // products have additive pole orders: new without reduction
            let len = (top + naive as i64 + 1) as usize;
            let prod = convolve_mod_p(&coord_series[c], &b.laurent, len, p);
            let lead = prod[0];
            let s = inv_mod_p(lead, p);
            let laurent: Vec<u8> = prod.iter().map(|&v| ((v as u32 * s as u32) % p as u32) as u8).collect();
            let window = window_of(&laurent, naive as usize);
            let idx = basis.len();
            basis.push(BasisFunction {
                pole: naive,
                laurent,
                recipe: Some(Recipe { coord: c, parent: bi, reducers: Vec::new(), scale: s }),
                window,
            });
            e.insert(idx);
            stats.direct += 1;
            push(&mut heap, &mut deferred, &mut seq, idx, naive, bound);
            continue;
        }
        // window product: exponents −naive ..= 0
        let wlen = naive as usize + 1;
        let prod = convolve_mod_p(&coord_series[c], &b.laurent, wlen, p);
        let mut w = window_of(&prod, naive as usize);
        let mut steps: Vec<(usize, u8)> = Vec::new();
        let mut new_pole = None;
        while let Some(k) = w.highest() {
            match by_pole.get(&(k as u64)) {
                Some(&j) => {
                    let coef = w.get(k);
                    w.sub_scaled(&basis[j].window, coef, p);
                    steps.push((j, coef));
                }
                None => {
                    new_pole = Some(k as u64);
                    break;
                }
            }
        }
        let Some(np) = new_pole else {
            stats.reduced_to_span += 1;
            continue;
        };
        // replay on the full expansions
        let mut t = top;
        for &(j, _) in &steps {
            t = t.min(basis[j].top());
        }
        if t < 0 {
            return Err(SemigroupError::Precision { precision: cfg.precision });
        }
        let full_len = (t + naive as i64 + 1) as usize;
        let mut acc = convolve_mod_p(&coord_series[c], &basis[bi].laurent, full_len, p);
        for &(j, coef) in &steps {
            let bj = &basis[j];
            let off = (naive - bj.pole) as usize;
            for (i, &v) in bj.laurent.iter().enumerate() {
                let at = off + i;
                if at >= full_len {
                    break;
                }
                acc[at] = ((acc[at] as u32 + (p - coef) as u32 * v as u32) % p as u32) as u8;
            }
        }
        let drop = (naive - np) as usize;
        debug_assert!(acc[..drop].iter().all(|&v| v == 0));
        let lead = acc[drop];
        let s = inv_mod_p(lead, p);
        let laurent: Vec<u8> = acc[drop..].iter().map(|&v| ((v as u32 * s as u32) % p as u32) as u8).collect();
        let window = window_of(&laurent, np as usize);
        let idx = basis.len();
        basis.push(BasisFunction {
            pole: np,
            laurent,
            recipe: Some(Recipe { coord: c, parent: bi, reducers: steps, scale: s }),
            window,
        });
        by_pole.insert(np, idx);
        stats.reduced_new += 1;
        push(&mut heap, &mut deferred, &mut seq, idx, np, bound);
    }
    let found = nongaps_below(&by_pole);
    if found > g as usize {
        return Err(SemigroupError::TooManyNongaps { found, expected: g as usize });
    }
    let mut poles: Vec<u64> = by_pole.keys().copied().collect();
    poles.sort_unstable();
    let limit = two_g.saturating_sub(1);
    let semigroup = NumericSemigroup::from_nongaps(&poles, limit);
    stats.seconds = start.elapsed().as_secs_f64();
    Ok(WeierstrassResult { genus: g, basis, semigroup, stats, poles })
}

/// Outcome of replaying one witness recipe from fresh expansions.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WitnessCheck {
    pub index: usize,
    pub claimed_pole: u64,
    /// Pole order found by the replay; `None` if precision ran out.
    pub replayed_pole: Option<u64>,
    /// Whether the replayed expansion agrees with the stored one on their
    /// common range.
    pub expansion_agrees: bool,
}

impl WitnessCheck {
    pub fn passed(&self) -> bool {
        self.replayed_pole == Some(self.claimed_pole) && self.expansion_agrees
    }
}

/// Recomputes the Laurent expansions of the chosen witnesses from a new
/// expansion of the coordinates at `precision`, following each recipe
/// exactly (full products and subtractions, no windows), and reads off the
/// pole order as the first nonzero coefficient.
pub fn replay_witnesses(
    res: &WeierstrassResult,
    curve: &CurveSpec,
    precision: usize,
    indices: &[usize],
) -> Result<Vec<WitnessCheck>, SemigroupError> {
    let p = curve.p as u8;
    let exp = InfinityExpansion::new(curve, precision)?;
    let m = exp.m_infinity;
    let coord: Vec<Vec<u8>> =
        (0..exp.poles.len()).map(|c| exp.units[c].coeffs()[m - exp.poles[c] as usize..].to_vec()).collect();
    // memo: index -> (pole, expansion from s^{-pole})
    let mut memo: HashMap<usize, Option<(u64, Vec<u8>)>> = HashMap::new();
    let mut out = Vec::new();
    for &i in indices {
        let got = replay_one(res, &coord, &exp.poles, p, precision, i, &mut memo);
        let stored = &res.basis[i];
        let (replayed_pole, agrees) = match got {
            Some((pole, v)) => {
                let n = v.len().min(stored.laurent.len());
                (Some(pole), pole == stored.pole && v[..n] == stored.laurent[..n])
            }
            None => (None, false),
        };
        out.push(WitnessCheck { index: i, claimed_pole: stored.pole, replayed_pole, expansion_agrees: agrees });
    }
    Ok(out)
}

fn replay_one(
    res: &WeierstrassResult,
    coord: &[Vec<u8>],
    poles: &[u64],
    p: u8,
    precision: usize,
    i: usize,
    memo: &mut HashMap<usize, Option<(u64, Vec<u8>)>>,
) -> Option<(u64, Vec<u8>)> {
    if let Some(v) = memo.get(&i) {
        return v.clone();
    }
    let val = match &res.basis[i].recipe {
        None => {
            let mut one = vec![0u8; precision];
            one[0] = 1;
            Some((0, one))
        }
        Some(r) => (|| {
            let (pp, parent) = replay_one(res, coord, poles, p, precision, r.parent, memo)?;
            let naive = pp + poles[r.coord];
            let len = parent.len().min(coord[r.coord].len());
            let mut acc = convolve_mod_p(&coord[r.coord], &parent, len, p);
            for &(k, c) in &r.reducers {
                let (pk, bk) = replay_one(res, coord, poles, p, precision, k, memo)?;
                let off = (naive - pk) as usize;
                let n = acc.len().min(off + bk.len());
                acc.truncate(n);
                for at in off..n {
                    acc[at] = ((acc[at] as u32 + (p - c) as u32 * bk[at - off] as u32) % p as u32) as u8;
                }
            }
            let drop = acc.iter().position(|&v| v != 0)?;
            let s = r.scale as u32;
            let v: Vec<u8> = acc[drop..].iter().map(|&x| ((x as u32 * s) % p as u32) as u8).collect();
            Some((naive - drop as u64, v))
        })(),
    };
    memo.insert(i, val.clone());
    val
}

/// Summary of re-verifying a random sample of witnesses twice: by recipe
/// replay at doubled precision and by the involution valuation oracle on
/// the expanded witness polynomial.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WitnessSpotCheck {
    pub sampled: usize,
    pub replay_precision: usize,
    pub replay_failures: Vec<usize>,
    pub oracle_failures: Vec<usize>,
}

impl WitnessSpotCheck {
    pub fn passed(&self) -> bool {
        self.sampled > 0 && self.replay_failures.is_empty() && self.oracle_failures.is_empty()
    }
}

pub fn spot_check_witnesses(
    res: &WeierstrassResult,
    curve: &CurveSpec,
    engine_precision: usize,
    count: usize,
    seed: u64,
) -> Result<WitnessSpotCheck, SemigroupError> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut idx: Vec<usize> = (0..res.basis.len()).collect();
    idx.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
    idx.truncate(count);
    let replay_precision = 2 * engine_precision;
    let replay = replay_witnesses(res, curve, replay_precision, &idx)?;
    let replay_failures = replay.iter().filter(|c| !c.passed()).map(|c| c.index).collect();
    let mut policy = PrecisionPolicy::default_for(curve);
    policy.initial = policy.initial.max(replay_precision);
    let mut oracle = SeriesOracle::new(curve, policy)?;
    let mut oracle_failures = Vec::new();
    for &i in &idx {
        let w = res.witness(curve, i, 100_000)?;
        if oracle.pole_order(&w)? != Some(res.basis[i].pole) {
            oracle_failures.push(i);
        }
    }
    Ok(WitnessSpotCheck { sampled: idx.len(), replay_precision, replay_failures, oracle_failures })
}

/// Packs coefficients of s^{−pole}..s^0 so that bit k holds s^{−k}.
fn window_of(laurent: &[u8], pole: usize) -> Packed {
    let mut w = Packed::zeros(pole + 1);
    for k in 0..=pole {
        w.set(k, laurent[pole - k]);
    }
    w
}

/// Evaluates a recipe chain at a point to recompute a witness value.
pub fn evaluate_witness(res: &WeierstrassResult, curve: &CurveSpec, i: usize, coords: &[Fe]) -> Fe {
    let f = curve.field();
    let mut vals: Vec<Option<Fe>> = vec![None; i + 1];
    fn go(res: &WeierstrassResult, f: &crate::finite_field::Field, i: usize, coords: &[Fe], vals: &mut Vec<Option<Fe>>) -> Fe {
        if let Some(v) = vals[i] {
            return v;
        }
        let v = match &res.basis[i].recipe {
            None => Fe::ONE,
            Some(r) => {
                let mut acc = f.mul(coords[r.coord], go(res, f, r.parent, coords, vals));
                for &(k, c) in &r.reducers {
                    acc = f.sub(acc, f.mul(f.from_int(c as i64), go(res, f, k, coords, vals)));
                }
                f.mul(acc, f.from_int(r.scale as i64))
            }
        };
        vals[i] = Some(v);
        v
    }
    go(res, f, i, coords, &mut vals)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_gf3_subtraction() {
        for a in 0..3u8 {
            for b in 0..3u8 {
                for c in 1..3u8 {
                    let mut x = Packed::zeros(5);
                    x.set(3, a);
                    let mut y = Packed::zeros(5);
                    y.set(3, b);
                    x.sub_scaled(&y, c, 3);
                    assert_eq!(x.get(3), (a + 9 - c * b) % 3, "{a} - {c}*{b}");
                }
            }
        }
    }

    #[test]
    fn hermitian_and_suzuki_semigroups() {
        let s = NumericSemigroup::generate_from(&[3, 4], 10);
        assert_eq!(s.gap_count(), 3);
        assert_eq!(s.minimal_generators(3), vec![3, 4]);
        let s = NumericSemigroup::generate_from(&[8, 10, 12, 13], 27);
        assert_eq!(s.gap_count(), 14);
        assert!(s.symmetry_check(14));
        assert_eq!(s.minimal_generators(14), vec![8, 10, 12, 13]);
        let s = NumericSemigroup::generate_from(&[2, 3], 5);
        assert!(s.symmetry_check(1));
    }
}
