//! Rational points, membership in the projective model and smoothness by
//! exact Jacobian rank.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{CurveError, CurveSpec, Family};
use crate::finite_field::{ArtinSchreierSolver, Fe, Field, MAX_FIELD_SIZE};
use crate::multipoly::{CompiledPoly, MultiPoly};

#[derive(Debug, Error)]
pub enum VarietyError {
    #[error("x-loop over {0} elements exceeds the 2^20 guard")]
    TooLarge(u64),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("point is not on the variety")]
    NotOnVariety,
    #[error("no point found after {0} tries")]
    SamplingFailed(usize),
}

/// An affine witness or the point at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Affine(Vec<Fe>),
    Infinity,
}

impl CurvePoint {
    /// Normalized projective representative: first nonzero coordinate 1.
    pub fn projective(&self, curve: &CurveSpec, field: &Field) -> Vec<Fe> {
        match self {
            CurvePoint::Affine(a) => curve.coordinates(field, a),
            CurvePoint::Infinity => curve.infinity_point(),
        }
    }
}

/// Scales a nonzero vector so that its first nonzero entry is 1.
pub fn normalize(field: &Field, v: &[Fe]) -> Option<Vec<Fe>> {
    let lead = *v.iter().find(|c| !c.is_zero())?;
    let inv = field.inv(lead)?;
    Some(v.iter().map(|&c| field.mul(c, inv)).collect())
}

/// All GF(q^r)-rational points: the affine ones in x-order, then infinity.
#[derive(Clone, Debug)]
pub struct PointSet {
    pub field: Field,
    pub r: u32,
    pub affine: Vec<Vec<Fe>>,
}

impl PointSet {
    pub fn count(&self) -> usize {
        self.affine.len() + 1
    }

    pub fn points(&self) -> impl Iterator<Item = CurvePoint> + '_ {
        self.affine.iter().map(|a| CurvePoint::Affine(a.clone())).chain(std::iter::once(CurvePoint::Infinity))
    }

    pub fn projective(&self, curve: &CurveSpec) -> Vec<Vec<Fe>> {
        self.points().map(|p| p.projective(curve, &self.field)).collect()
    }
}

/// Enumerates the rational points over GF(q^r).
///
/// For r = 1 both sides of every Artin–Schreier equation vanish, so every
/// tuple of GF(q) is a point (Hermitian curves excepted). Otherwise each x
/// is extended through the Artin–Schreier chain.
pub fn enumerate_points(curve: &CurveSpec, r: u32) -> Result<PointSet, VarietyError> {
    let size = (curve.q as u128).checked_pow(r).unwrap_or(u128::MAX);
    if size > MAX_FIELD_SIZE as u128 {
        return Err(VarietyError::TooLarge(size.min(u64::MAX as u128) as u64));
    }
    let field = curve.extension_field(r)?;
    let f = &field;
    let mut affine = Vec::new();
    match curve.family {
        Family::Ree | Family::Suzuki if r == 1 => {
            let els: Vec<Fe> = f.elements().collect();
            for &x in &els {
                for &y in &els {
                    if curve.family == Family::Suzuki {
                        affine.push(vec![x, y]);
                    } else {
                        for &z in &els {
                            affine.push(vec![x, y, z]);
                        }
                    }
                }
            }
        }
        Family::Ree | Family::Suzuki => {
            let solver = ArtinSchreierSolver::new(field.clone(), curve.q);
            for x in f.elements() {
                // y1^q - y1 = x^{q0}(x^q - x), y2^q - y2 = x^{q0}(y1^q - y1)
                let xq0 = f.pow(x, curve.q0);
                let c1 = f.mul(xq0, f.sub(f.pow(x, curve.q), x));
                for y1 in solver.solve(c1) {
                    if curve.family == Family::Suzuki {
                        affine.push(vec![x, y1]);
                        continue;
                    }
                    for y2 in solver.solve(f.mul(xq0, c1)) {
                        affine.push(vec![x, y1, y2]);
                    }
                }
            }
        }
        Family::Hermitian => {
            // y ↦ y^{q0} + y is GF(p)-linear; bucket its fibres once.
            let mut fibres: HashMap<Fe, Vec<Fe>> = HashMap::new();
            for y in f.elements() {
                fibres.entry(f.add(f.pow(y, curve.q0), y)).or_default().push(y);
            }
            for x in f.elements() {
                if let Some(ys) = fibres.get(&f.pow(x, curve.q0 + 1)) {
                    for &y in ys {
                        affine.push(vec![x, y]);
                    }
                }
            }
        }
    }
    Ok(PointSet { field, r, affine })
}

/// Equations and their formal partials, compiled over one field.
#[derive(Clone, Debug)]
pub struct JacobianSystem {
    pub field: Field,
    pub ncoords: usize,
    pub equations: Vec<CompiledPoly>,
    /// partials[i][j] = ∂ equation_i / ∂ coordinate_j
    pub partials: Vec<Vec<CompiledPoly>>,
}

impl JacobianSystem {
    pub fn new(polys: &[MultiPoly], field: &Field) -> Self {
        let ncoords = polys.first().map_or(0, |p| p.coords().len());
        JacobianSystem {
            field: field.clone(),
            ncoords,
            equations: polys.iter().map(|p| p.compile()).collect(),
            partials: polys
                .iter()
                .map(|p| (0..ncoords).map(|j| p.partial_derivative_index(j).compile()).collect())
                .collect(),
        }
    }

    /// True iff every equation vanishes at the representative.
    pub fn on_variety(&self, pt: &[Fe]) -> bool {
        self.equations.iter().all(|e| e.eval(&self.field, pt).is_zero())
    }

    /// Labels of the equations that do not vanish.
    pub fn failing(&self, pt: &[Fe]) -> Vec<usize> {
        (0..self.equations.len()).filter(|&i| !self.equations[i].eval(&self.field, pt).is_zero()).collect()
    }

    pub fn jacobian(&self, pt: &[Fe]) -> Vec<Vec<Fe>> {
        self.partials.iter().map(|row| row.iter().map(|d| d.eval(&self.field, pt)).collect()).collect()
    }

    pub fn jacobian_rank(&self, pt: &[Fe]) -> Result<usize, VarietyError> {
        if !self.on_variety(pt) {
            return Err(VarietyError::NotOnVariety);
        }
        Ok(rank(&self.field, self.jacobian(pt)))
    }
}

/// Convenience form of [`JacobianSystem::on_variety`].
pub fn on_variety(polys: &[MultiPoly], field: &Field, pt: &[Fe]) -> bool {
    polys.iter().all(|p| p.compile().eval(field, pt).is_zero())
}

/// Rank by Gaussian elimination.
pub fn rank(field: &Field, mut m: Vec<Vec<Fe>>) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = field.inv(m[r][c]).expect("nonzero pivot");
        let pivot: Vec<Fe> = m[r].iter().map(|&x| field.mul(x, inv)).collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot).skip(c) {
                    *x = field.sub(*x, field.mul(f, y));
                }
            }
        }
        m[r] = pivot;
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Random affine point over `field`, found by drawing x and walking the
/// Artin–Schreier chain, so points are weighted by their x-fibre.
///
/// Small extensions of the Ree and Suzuki base fields can add no new
/// points (N₂ = N₁ for q = 27), so the result may well be GF(q)-rational;
/// see [`outside_base_field`].
pub fn random_point_over<R: Rng>(
    curve: &CurveSpec,
    field: &Field,
    solver: &ArtinSchreierSolver,
    rng: &mut R,
) -> Result<Vec<Fe>, VarietyError> {
    let f = field;
    let n = f.size();
    let tries = 1_000_000;
    for _ in 0..tries {
        let x = Fe(rng.gen_range(0..n));
        let affine = match curve.family {
            Family::Ree | Family::Suzuki => {
                let xq0 = f.pow(x, curve.q0);
                let c1 = f.mul(xq0, f.sub(f.pow(x, curve.q), x));
                let ys = solver.solve(c1);
                if ys.is_empty() {
                    continue;
                }
                let y1 = ys[rng.gen_range(0..ys.len())];
                if curve.family == Family::Suzuki {
                    vec![x, y1]
                } else {
                    let zs = solver.solve(f.mul(xq0, c1));
                    vec![x, y1, zs[rng.gen_range(0..zs.len())]]
                }
            }
            Family::Hermitian => {
                let y = Fe(rng.gen_range(0..n));
                if !curve.affine_residuals(f, &[x, y])[0].is_zero() {
                    continue;
                }
                vec![x, y]
            }
        };
        return Ok(affine);
    }
    Err(VarietyError::SamplingFailed(tries))
}

/// Whether some coordinate of the affine point lies outside GF(q).
pub fn outside_base_field(curve: &CurveSpec, field: &Field, affine: &[Fe]) -> bool {
    affine.iter().any(|&a| !field.in_subfield(a, curve.q))
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct SmoothnessSummary {
    pub points: usize,
    pub expected_rank: usize,
    pub min_rank: usize,
    pub max_rank: usize,
    pub off_variety: usize,
    /// Index of the first point with the wrong rank, if any.
    pub first_failure: Option<usize>,
}

impl SmoothnessSummary {
    pub fn passed(&self) -> bool {
        self.points > 0 && self.off_variety == 0 && self.min_rank == self.expected_rank && self.max_rank == self.expected_rank
    }
}

/// Jacobian ranks over a batch of projective points; a smooth curve has
/// rank #coords − 2 everywhere.
pub fn smoothness_sweep(sys: &JacobianSystem, pts: &[Vec<Fe>]) -> SmoothnessSummary {
    let expected = sys.ncoords - 2;
    let mut s = SmoothnessSummary { points: pts.len(), expected_rank: expected, min_rank: usize::MAX, ..Default::default() };
    for (i, pt) in pts.iter().enumerate() {
        match sys.jacobian_rank(pt) {
            Ok(r) => {
                s.min_rank = s.min_rank.min(r);
                s.max_rank = s.max_rank.max(r);
                if r != expected && s.first_failure.is_none() {
                    s.first_failure = Some(i);
                }
            }
            Err(_) => {
                s.off_variety += 1;
                s.first_failure.get_or_insert(i);
            }
        }
    }
    if s.min_rank == usize::MAX {
        s.min_rank = 0;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::GaloisField;

    #[test]
    fn rank_of_small_matrices() {
        let f = GaloisField::with_degree(3, 1).unwrap();
        let m = vec![vec![Fe(1), Fe(2)], vec![Fe(2), Fe(1)]];
        assert_eq!(rank(&f, m), 1);
        let m = vec![vec![Fe(1), Fe(0)], vec![Fe(0), Fe(1)], vec![Fe(1), Fe(1)]];
        assert_eq!(rank(&f, m), 2);
        assert_eq!(rank(&f, vec![vec![Fe(0); 3]; 2]), 0);
    }

    #[test]
    fn normalize_scales_first_nonzero() {
        let f = GaloisField::with_degree(3, 1).unwrap();
        assert_eq!(normalize(&f, &[Fe(0), Fe(2), Fe(1)]).unwrap(), vec![Fe(0), Fe(1), Fe(2)]);
        assert!(normalize(&f, &[Fe(0)]).is_none());
    }

    #[test]
    fn guard_refuses_large_loops() {
        let c = CurveSpec::ree(1).unwrap();
        assert!(matches!(enumerate_points(&c, 5), Err(VarietyError::TooLarge(_))));
    }
}
