//! The stabilizer of P∞ and the involution φ, acting on affine points and
//! linearly on the coordinate functions.
//!
//! A matrix `M` represents ψ when `coords(ψ(P)) = M · coords(P)` for every
//! affine point P; rows are indexed by target coordinate.

use std::collections::HashSet;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{ree_coordinates, CurveSpec, Family};
use crate::finite_field::{Fe, Field};
use crate::fixtures::{ActionFixture, ActionTerm};
use crate::graph_equations::linear_form;
use crate::local_series::random_rational_point;
use crate::multipoly::MultiPoly;
use crate::variety_checks::{enumerate_points, normalize, JacobianSystem};

#[derive(Debug, Error)]
pub enum AutError {
    #[error("alpha must be nonzero")]
    ZeroAlpha,
    #[error("gamma does not satisfy c^q0 + c = b^(q0+1)")]
    BadHermitianShift,
    #[error("no independent point basis")]
    Degenerate,
    #[error("unknown coordinate {0} in action table")]
    UnknownCoordinate(String),
    #[error("action table is for {0}")]
    WrongFamily(Family),
    #[error(transparent)]
    Variety(#[from] crate::variety_checks::VarietyError),
}

/// ψ_{αβγδ}; δ is unused for Suzuki and Hermitian curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AutParams {
    pub alpha: Fe,
    pub beta: Fe,
    pub gamma: Fe,
    pub delta: Fe,
}

impl AutParams {
    pub fn identity() -> Self {
        AutParams { alpha: Fe::ONE, beta: Fe::ZERO, gamma: Fe::ZERO, delta: Fe::ZERO }
    }

    pub fn new(curve: &CurveSpec, alpha: Fe, beta: Fe, gamma: Fe, delta: Fe) -> Result<Self, AutError> {
        if alpha.is_zero() {
            return Err(AutError::ZeroAlpha);
        }
        let f = curve.field();
        if curve.family == Family::Hermitian {
            let lhs = f.add(f.pow(gamma, curve.q0), gamma);
            if lhs != f.pow(beta, curve.q0 + 1) {
                return Err(AutError::BadHermitianShift);
            }
        }
        Ok(AutParams { alpha, beta, gamma, delta })
    }

    pub fn random<R: Rng>(curve: &CurveSpec, rng: &mut R) -> Self {
        let f = curve.field();
        let n = f.size();
        let alpha = Fe(rng.gen_range(1..n));
        let beta = Fe(rng.gen_range(0..n));
        let mut gamma = Fe(rng.gen_range(0..n));
        let delta = if curve.family == Family::Ree { Fe(rng.gen_range(0..n)) } else { Fe::ZERO };
        if curve.family == Family::Hermitian {
            let target = f.pow(beta, curve.q0 + 1);
            let roots: Vec<Fe> = f.elements().filter(|&c| f.add(f.pow(c, curve.q0), c) == target).collect();
            gamma = roots[rng.gen_range(0..roots.len())];
        }
        AutParams { alpha, beta, gamma, delta }
    }
}

/// ψ(P) for an affine point P over the base field.
pub fn apply_affine(curve: &CurveSpec, psi: &AutParams, pt: &[Fe]) -> Vec<Fe> {
    let f = curve.field();
    let q0 = curve.q0;
    let AutParams { alpha: a, beta: b, gamma: c, delta: d } = *psi;
    let x = pt[0];
    let a1 = f.pow(a, q0 + 1);
    let bq = f.pow(b, q0);
    let nx = f.add(f.mul(a, x), b);
    let ny1 = f.add(f.add(f.mul(a1, pt[1]), f.mul(f.mul(a, bq), x)), c);
    if curve.family != Family::Ree {
        return vec![nx, ny1];
    }
    // y2 ↦ α^{2q0+1} y2 − α^{q0+1} β^{q0} y1 + α β^{2q0} x + δ
    let t1 = f.mul(f.pow(a, 2 * q0 + 1), pt[2]);
    let t2 = f.mul(f.mul(a1, bq), pt[1]);
    let t3 = f.mul(f.mul(a, f.mul(bq, bq)), x);
    let ny2 = f.add(f.add(f.sub(t1, t2), t3), d);
    vec![nx, ny1, ny2]
}

/// Parameters of ψ2 ∘ ψ1 (ψ1 applied first).
pub fn compose(curve: &CurveSpec, psi2: &AutParams, psi1: &AutParams) -> AutParams {
    let f = curve.field();
    let q0 = curve.q0;
    let (a1, b1, c1, d1) = (psi1.alpha, psi1.beta, psi1.gamma, psi1.delta);
    let (a2, b2, c2, d2) = (psi2.alpha, psi2.beta, psi2.gamma, psi2.delta);
    let b2q = f.pow(b2, q0);
    let a2q = f.pow(a2, q0 + 1);
    let gamma = f.add(f.add(f.mul(a2q, c1), f.mul(f.mul(a2, b2q), b1)), c2);
    let delta = if curve.family == Family::Ree {
        let t1 = f.mul(f.pow(a2, 2 * q0 + 1), d1);
        let t2 = f.mul(f.mul(a2q, b2q), c1);
        let t3 = f.mul(f.mul(a2, f.mul(b2q, b2q)), b1);
        f.add(f.add(f.sub(t1, t2), t3), d2)
    } else {
        Fe::ZERO
    };
    AutParams { alpha: f.mul(a1, a2), beta: f.add(f.mul(a2, b1), b2), gamma, delta }
}

/// Square matrix acting on coordinate vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesMatrix {
    pub rows: Vec<Vec<Fe>>,
}

impl SeriesMatrix {
    pub fn identity(n: usize) -> Self {
        SeriesMatrix { rows: (0..n).map(|i| (0..n).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }).collect()).collect() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn apply(&self, f: &Field, v: &[Fe]) -> Vec<Fe> {
        self.rows.iter().map(|r| dot(f, r, v)).collect()
    }

    pub fn mul(&self, f: &Field, o: &SeriesMatrix) -> SeriesMatrix {
        let n = self.dim();
        SeriesMatrix {
            rows: (0..n).map(|i| (0..n).map(|j| f.sum((0..n).map(|k| f.mul(self.rows[i][k], o.rows[k][j])))).collect()).collect(),
        }
    }

    /// Whether entry (i, j) vanishes whenever `order` puts j after i.
    pub fn is_lower_triangular(&self, order: &[usize]) -> bool {
        let mut pos = vec![0; order.len()];
        for (k, &c) in order.iter().enumerate() {
            pos[c] = k;
        }
        (0..self.dim()).all(|i| (0..self.dim()).all(|j| pos[j] <= pos[i] || self.rows[i][j].is_zero()))
    }

    pub fn proportional(&self, f: &Field, o: &SeriesMatrix) -> bool {
        let a: Vec<Fe> = self.rows.concat();
        let b: Vec<Fe> = o.rows.concat();
        proportional(f, &a, &b)
    }
}

fn dot(f: &Field, a: &[Fe], b: &[Fe]) -> Fe {
    f.sum(a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)))
}

/// Whether two nonzero vectors agree up to a nonzero scalar.
pub fn proportional(f: &Field, a: &[Fe], b: &[Fe]) -> bool {
    match (normalize(f, a), normalize(f, b)) {
        (Some(x), Some(y)) => x == y,
        _ => false,
    }
}

/// Coordinates sorted by ascending pole order at P∞ (t first); the
/// stabilizer acts lower-triangularly in this order.
pub fn triangular_order(curve: &CurveSpec) -> Vec<usize> {
    let poles = curve.pole_orders();
    let mut idx: Vec<usize> = (0..poles.len()).collect();
    idx.sort_by_key(|&i| (poles[i], i));
    idx
}

/// Signed permutation realizing φ projectively.
pub fn involution_matrix(curve: &CurveSpec) -> SeriesMatrix {
    let f = curve.field();
    let map = curve.involution();
    let n = map.len();
    let mut m = vec![vec![Fe::ZERO; n]; n];
    for (i, &(j, neg)) in map.iter().enumerate() {
        m[i][j] = if neg { f.neg(Fe::ONE) } else { Fe::ONE };
    }
    SeriesMatrix { rows: m }
}

fn invert(f: &Field, m: &[Vec<Fe>]) -> Option<Vec<Vec<Fe>>> {
    let n = m.len();
    let mut a: Vec<Vec<Fe>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Fe::ONE } else { Fe::ZERO }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = f.inv(a[c][c])?;
        for x in a[c].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let k = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(k, y));
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rational affine points with linearly independent coordinate vectors,
/// used to recover the matrix of any ψ by a linear solve.
#[derive(Clone, Debug)]
pub struct PointBasis {
    pub points: Vec<Vec<Fe>>,
    /// Inverse of the matrix whose columns are the coordinate vectors.
    inverse: Vec<Vec<Fe>>,
}

impl PointBasis {
    pub fn new(curve: &CurveSpec) -> Result<Self, AutError> {
        let f = curve.field();
        let n = curve.coords().len();
        let pts = enumerate_points(curve, 1)?;
        let mut chosen: Vec<Vec<Fe>> = Vec::new();
        let mut vecs: Vec<Vec<Fe>> = Vec::new();
        for a in &pts.affine {
            let v = curve.coordinates(f, a);
            let mut trial = vecs.clone();
            trial.push(v.clone());
            if crate::variety_checks::rank(f, trial) == vecs.len() + 1 {
                vecs.push(v);
                chosen.push(a.clone());
                if vecs.len() == n {
                    break;
                }
            }
        }
        if vecs.len() < n {
            return Err(AutError::Degenerate);
        }
        let cols: Vec<Vec<Fe>> = (0..n).map(|i| (0..n).map(|k| vecs[k][i]).collect()).collect();
        let inverse = invert(f, &cols).ok_or(AutError::Degenerate)?;
        Ok(PointBasis { points: chosen, inverse })
    }

    /// The unique matrix sending each basis coordinate vector to that of
    /// its image: M = Y · P⁻¹ with P, Y holding the vectors as columns.
    pub fn derived_matrix(&self, curve: &CurveSpec, psi: &AutParams) -> SeriesMatrix {
        let f = curve.field();
        let n = self.points.len();
        let images: Vec<Vec<Fe>> = self.points.iter().map(|p| curve.coordinates(f, &apply_affine(curve, psi, p))).collect();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| f.sum((0..n).map(|k| f.mul(images[k][i], self.inverse[k][j])))).collect())
            .collect();
        SeriesMatrix { rows }
    }
}

/// A tabulated row: the target as a linear form in the coordinates and
/// its image as a sum of parameter monomials times coordinates.
#[derive(Clone, Debug)]
pub struct ActionRow {
    pub target: String,
    pub target_form: Vec<Fe>,
    pub terms: Vec<(Fe, [u64; 4], Vec<Fe>)>,
    pub sum_of: Vec<usize>,
}

/// The tabulated action of ψ on the coordinate functions and v.
#[derive(Clone, Debug)]
pub struct ActionTable {
    pub rows: Vec<ActionRow>,
}

fn form_vector(curve: &CurveSpec, name: &str) -> Result<Vec<Fe>, AutError> {
    let expr = match name {
        "1" => "t",
        "v" => "w7-w2",
        s => s,
    };
    let p: MultiPoly =
        linear_form(curve.coords(), curve.field(), expr).map_err(|_| AutError::UnknownCoordinate(name.into()))?;
    let n = curve.coords().len();
    Ok((0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            p.coefficient(&e)
        })
        .collect())
}

impl ActionTable {
    pub fn from_fixture(curve: &CurveSpec, fx: &ActionFixture) -> Result<Self, AutError> {
        if fx.family != curve.family {
            return Err(AutError::WrongFamily(fx.family));
        }
        let f = curve.field();
        let q0 = curve.q0;
        let e = |c: [u32; 2]| c[0] as u64 + c[1] as u64 * q0;
        let mut rows = Vec::new();
        for r in &fx.rows {
            let terms = r
                .terms
                .iter()
                .map(|t: &ActionTerm| {
                    Ok((f.from_int(t.coef), [e(t.alpha), e(t.beta), e(t.gamma), e(t.delta)], form_vector(curve, &t.basis)?))
                })
                .collect::<Result<Vec<_>, AutError>>()?;
            rows.push(ActionRow { target: r.target.clone(), target_form: form_vector(curve, &r.target)?, terms, sum_of: Vec::new() });
        }
        for (k, r) in fx.rows.iter().enumerate() {
            for s in &r.sum_of {
                let i = fx.rows.iter().position(|x| &x.target == s).ok_or_else(|| AutError::UnknownCoordinate(s.clone()))?;
                rows[k].sum_of.push(i);
            }
        }
        Ok(ActionTable { rows })
    }

    /// Row k evaluated at ψ, as a coefficient vector over the coordinates.
    pub fn row_vector(&self, curve: &CurveSpec, psi: &AutParams, k: usize) -> Vec<Fe> {
        let f = curve.field();
        let n = curve.coords().len();
        let row = &self.rows[k];
        let mut out = vec![Fe::ZERO; n];
        for &i in &row.sum_of {
            let v = self.row_vector(curve, psi, i);
            for (o, x) in out.iter_mut().zip(v) {
                *o = f.add(*o, x);
            }
        }
        let p = [psi.alpha, psi.beta, psi.gamma, psi.delta];
        for (c, ex, basis) in &row.terms {
            let mut s = *c;
            for (b, &e) in p.iter().zip(ex) {
                s = f.mul(s, f.pow(*b, e));
            }
            if s.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(basis) {
                *o = f.add(*o, f.mul(s, x));
            }
        }
        out
    }

    /// Tabulated matrix of ψ; coordinates without a row of their own keep
    /// the identity row (only t, which ψ fixes).
    pub fn matrix(&self, curve: &CurveSpec, psi: &AutParams) -> SeriesMatrix {
        let mut m = SeriesMatrix::identity(curve.coords().len());
        for k in 0..self.rows.len() {
            if let Some(i) = unit_index(&self.rows[k].target_form) {
                m.rows[i] = self.row_vector(curve, psi, k);
            }
        }
        m
    }
}

fn unit_index(v: &[Fe]) -> Option<usize> {
    let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
    (nz.len() == 1 && v[nz[0]] == Fe::ONE).then(|| nz[0])
}

/// First counterexample of a tabulated row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowFailure {
    pub psi: AutParams,
    pub point: Vec<Fe>,
    pub expected: Fe,
    pub tabulated: Fe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCheck {
    pub target: String,
    pub checks: usize,
    pub failures: usize,
    pub first_failure: Option<RowFailure>,
    /// Whether the row was replaced by the solved row.
    pub corrected: bool,
}

/// Checks every tabulated row pointwise: the row applied to coords(P)
/// must equal the target evaluated at ψ(P).
pub fn validate_table(
    curve: &CurveSpec,
    table: &ActionTable,
    psis: &[AutParams],
    points: &[Vec<Fe>],
) -> Vec<RowCheck> {
    let f = curve.field();
    let mut out: Vec<RowCheck> = table
        .rows
        .iter()
        .map(|r| RowCheck { target: r.target.clone(), checks: 0, failures: 0, first_failure: None, corrected: false })
        .collect();
    for psi in psis {
        let vecs: Vec<Vec<Fe>> = (0..table.rows.len()).map(|k| table.row_vector(curve, psi, k)).collect();
        for p in points {
            let before = curve.coordinates(f, p);
            let after = curve.coordinates(f, &apply_affine(curve, psi, p));
            for (k, row) in table.rows.iter().enumerate() {
                let want = dot(f, &row.target_form, &after);
                let got = dot(f, &vecs[k], &before);
                let c = &mut out[k];
                c.checks += 1;
                if want != got {
                    c.failures += 1;
                    c.first_failure.get_or_insert(RowFailure { psi: *psi, point: p.clone(), expected: want, tabulated: got });
                }
            }
        }
    }
    out
}

/// The tabulated action with failing rows replaced by solved rows.
#[derive(Clone, Debug)]
pub struct CorrectedAction {
    pub table: ActionTable,
    pub basis: PointBasis,
    pub corrected_rows: Vec<usize>,
}

impl CorrectedAction {
    pub fn new(table: ActionTable, basis: PointBasis, checks: &[RowCheck]) -> Self {
        let corrected_rows = (0..checks.len()).filter(|&k| checks[k].failures > 0).collect();
        CorrectedAction { table, basis, corrected_rows }
    }

    /// Matrix of ψ: tabulated rows where they validated, solved rows for
    /// the coordinates whose row (or a row it sums) failed.
    pub fn matrix_on_series(&self, curve: &CurveSpec, psi: &AutParams) -> SeriesMatrix {
        let mut m = self.table.matrix(curve, psi);
        if self.corrected_rows.is_empty() {
            return m;
        }
        let solved = self.basis.derived_matrix(curve, psi);
        for k in 0..self.table.rows.len() {
            let row = &self.table.rows[k];
            let bad = self.corrected_rows.contains(&k) || row.sum_of.iter().any(|i| self.corrected_rows.contains(i));
            if let (true, Some(i)) = (bad, unit_index(&row.target_form)) {
                m.rows[i] = solved.rows[i].clone();
            }
        }
        m
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionReport {
    pub family: Option<Family>,
    pub psi_samples: usize,
    pub points_per_psi: usize,
    pub row_checks: Vec<RowCheck>,
    pub corrections: usize,
    pub variety_failures: usize,
    pub triangular_failures: usize,
    pub composition_failures: usize,
    pub matrix_failures: usize,
    pub involution_squared_identity: bool,
    pub phi_points: usize,
    pub phi_failures: usize,
    pub phi_permutes_points: bool,
    pub phi_swaps_special_points: bool,
    pub orbit_size: usize,
    pub orbit_expected: usize,
}

impl ActionReport {
    pub fn passed(&self) -> bool {
        self.variety_failures == 0
            && self.triangular_failures == 0
            && self.composition_failures == 0
            && self.matrix_failures == 0
            && self.involution_squared_identity
            && self.phi_failures == 0
            && self.phi_permutes_points
            && self.phi_swaps_special_points
            && self.orbit_size == self.orbit_expected
    }
}

#[derive(Clone, Debug)]
pub struct ActionConfig {
    pub psi_samples: usize,
    pub points_per_psi: usize,
}

impl Default for ActionConfig {
    fn default() -> Self {
        ActionConfig { psi_samples: 1000, points_per_psi: 100 }
    }
}

/// Runs every group-action check on one curve.
pub fn verify_group_action<R: Rng>(
    curve: &CurveSpec,
    system: &JacobianSystem,
    table: Option<&ActionTable>,
    cfg: &ActionConfig,
    rng: &mut R,
) -> Result<ActionReport, AutError> {
    let f = curve.field();
    let n = curve.coords().len();
    let basis = PointBasis::new(curve)?;
    let order = triangular_order(curve);
    let psis: Vec<AutParams> = (0..cfg.psi_samples).map(|_| AutParams::random(curve, rng)).collect();
    let points: Vec<Vec<Fe>> = (0..cfg.points_per_psi).map(|_| random_rational_point(curve, rng)).collect();
    let mut rep = ActionReport {
        family: Some(curve.family),
        psi_samples: psis.len(),
        points_per_psi: points.len(),
        ..Default::default()
    };

    let corrected = match table {
        Some(t) => {
            let mut checks = validate_table(curve, t, &psis, &points);
            let ca = CorrectedAction::new(t.clone(), basis.clone(), &checks);
            for &k in &ca.corrected_rows {
                checks[k].corrected = true;
            }
            rep.corrections = ca.corrected_rows.len();
            rep.row_checks = checks;
            Some(ca)
        }
        None => None,
    };

    for (s, psi) in psis.iter().enumerate() {
        let m = match &corrected {
            Some(ca) => ca.matrix_on_series(curve, psi),
            None => basis.derived_matrix(curve, psi),
        };
        if !m.is_lower_triangular(&order) {
            rep.triangular_failures += 1;
        }
        let psi2 = psis[(s + 1) % psis.len()];
        let comp = compose(curve, &psi2, psi);
        let m2 = basis.derived_matrix(curve, &psi2);
        let mc = basis.derived_matrix(curve, &comp);
        if !mc.proportional(f, &m2.mul(f, &m)) {
            rep.composition_failures += 1;
        }
        for p in &points {
            let img = apply_affine(curve, psi, p);
            let v = curve.coordinates(f, &img);
            if !system.on_variety(&v) {
                rep.variety_failures += 1;
            }
            if m.apply(f, &curve.coordinates(f, p)) != v {
                rep.matrix_failures += 1;
            }
            if apply_affine(curve, &psi2, &img) != apply_affine(curve, &comp, p) {
                rep.composition_failures += 1;
            }
        }
    }
    let id = SeriesMatrix::identity(n);
    if basis.derived_matrix(curve, &AutParams::identity()) != id {
        rep.matrix_failures += 1;
    }

    // φ on every rational point
    let phi = involution_matrix(curve);
    rep.involution_squared_identity = phi.mul(f, &phi).proportional(f, &id);
    let all = enumerate_points(curve, 1)?;
    let proj = all.projective(curve);
    let set: HashSet<Vec<Fe>> = proj.iter().map(|v| normalize(f, v).expect("nonzero")).collect();
    rep.phi_points = proj.len();
    let mut permutes = true;
    for v in &proj {
        let w = phi.apply(f, v);
        if !system.on_variety(&w) {
            rep.phi_failures += 1;
        }
        permutes &= normalize(f, &w).is_some_and(|w| set.contains(&w));
    }
    rep.phi_permutes_points = permutes;
    let origin = curve.coordinates(f, &vec![Fe::ZERO; curve.affine_dim()]);
    let inf = curve.infinity_point();
    rep.phi_swaps_special_points =
        proportional(f, &phi.apply(f, &inf), &origin) && proportional(f, &phi.apply(f, &origin), &inf);

    // orbit of the origin under the translations ψ_{1βγδ}
    rep.orbit_expected = all.affine.len();
    rep.orbit_size = translation_orbit(curve).len();
    Ok(rep)
}

/// Images of the origin under all ψ_{1,β,γ,δ} (Hermitian: ψ_{1,b,c}).
pub fn translation_orbit(curve: &CurveSpec) -> HashSet<Vec<Fe>> {
    let f = curve.field();
    let zero = vec![Fe::ZERO; curve.affine_dim()];
    let mut orbit = HashSet::new();
    let els: Vec<Fe> = f.elements().collect();
    for &b in &els {
        for &c in &els {
            let deltas: &[Fe] = if curve.family == Family::Ree { &els } else { &[Fe::ZERO] };
            for &d in deltas {
                if let Ok(psi) = AutParams::new(curve, Fe::ONE, b, c, d) {
                    orbit.insert(apply_affine(curve, &psi, &zero));
                }
            }
        }
    }
    orbit
}

/// Values of the Ree coordinates and v at ψ(P), for row diagnostics.
pub fn ree_image_values(curve: &CurveSpec, psi: &AutParams, pt: &[Fe]) -> ([Fe; 14], Fe) {
    let img = apply_affine(curve, psi, pt);
    let r = ree_coordinates(curve.field(), curve.q0, img[0], img[1], img[2]);
    (r.coords, r.v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::GaloisField;

    #[test]
    fn invert_round_trip() {
        let f = GaloisField::with_degree(3, 3).unwrap();
        let m = vec![vec![Fe(1), Fe(5)], vec![Fe(7), Fe(2)]];
        let inv = invert(&f, &m).unwrap();
        let a = SeriesMatrix { rows: m };
        let b = SeriesMatrix { rows: inv };
        assert_eq!(a.mul(&f, &b), SeriesMatrix::identity(2));
    }

    #[test]
    fn lower_triangular_respects_order() {
        let f = GaloisField::with_degree(3, 1).unwrap();
        let m = SeriesMatrix { rows: vec![vec![Fe(1), Fe(1)], vec![Fe(0), Fe(1)]] };
        assert!(m.is_lower_triangular(&[1, 0]));
        assert!(!m.is_lower_triangular(&[0, 1]));
        assert!(m.proportional(&f, &SeriesMatrix { rows: vec![vec![Fe(2), Fe(2)], vec![Fe(0), Fe(2)]] }));
    }
}
