//! Defining equations generated from edge-labelled complete graphs.
//!
//! Vertices and edge labels are signed linear forms in the coordinates. For
//! vertices i < j < k the triangle relation is
//! `L(j,k)·V_i^{q0} − L(i,k)·V_j^{q0} + L(i,j)·V_k^{q0}`, its twist raises
//! the labels instead of the vertices, and every four vertices give the
//! Plücker quadric `L(i,j)L(k,l) − L(i,k)L(j,l) + L(i,l)L(j,k)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{CurveSpec, Family};
use crate::finite_field::{Fe, Field};
use crate::multipoly::{Coords, MultiPoly, PolyError, PolyJson};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("bad linear form {0:?}")]
    BadForm(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("expected exactly one duplicated quadric, found {0}")]
    DuplicateCount(usize),
}

/// Parses a signed sum of coordinate names such as `-w7+w2`; `1` is `t`.
pub fn linear_form(coords: &Coords, field: &Field, s: &str) -> Result<MultiPoly, GraphError> {
    let mut out = MultiPoly::zero(coords, field);
    let mut rest = s.trim();
    if rest.is_empty() {
        return Err(GraphError::BadForm(s.to_string()));
    }
    while !rest.is_empty() {
        let (neg, body) = match rest.as_bytes()[0] {
            b'-' => (true, &rest[1..]),
            b'+' => (false, &rest[1..]),
            _ => (false, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let name = body[..end].trim();
        let name = if name == "1" { "t" } else { name };
        let v = MultiPoly::var(coords, field, name).map_err(|_| GraphError::BadForm(s.to_string()))?;
        out = if neg { out.sub(&v) } else { out.add(&v) };
        rest = body[end..].trim();
    }
    Ok(out)
}

/// Complete graph with signed vertex forms and antisymmetric edge labels.
#[derive(Clone, Debug)]
pub struct LabeledGraph {
    pub family: Family,
    pub vertex_names: Vec<String>,
    pub vertices: Vec<MultiPoly>,
    /// Labels for i < j; label(j, i) = −label(i, j).
    upper: BTreeMap<(usize, usize), MultiPoly>,
    upper_names: BTreeMap<(usize, usize), String>,
    /// Pairs of vertices joined by long diagonals, and the central vertex.
    pub long_diagonals: Vec<(usize, usize)>,
    pub center: Option<usize>,
}

impl LabeledGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn label(&self, i: usize, j: usize) -> MultiPoly {
        if i < j {
            self.upper[&(i, j)].clone()
        } else {
            self.upper[&(j, i)].neg()
        }
    }

    pub fn label_name(&self, i: usize, j: usize) -> String {
        let s = &self.upper_names[&(i.min(j), i.max(j))];
        if i < j {
            s.clone()
        } else {
            negate_name(s)
        }
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }
}

fn negate_name(s: &str) -> String {
    let mut out = String::new();
    let s = s.trim();
    let s = if s.starts_with(['+', '-']) { s.to_string() } else { format!("+{s}") };
    for ch in s.chars() {
        out.push(match ch {
            '+' => '-',
            '-' => '+',
            c => c,
        });
    }
    out.trim_start_matches('+').to_string()
}

/// Ree vertices in order, then the upper triangle of the label matrix.
const REE_VERTICES: [&str; 7] = ["1", "-w6", "-w3", "w2", "-w8", "x", "w1"];
const REE_LABEL_ROWS: [[&str; 7]; 7] = [
    ["", "-w4", "-y2", "y1", "-w7", "1", "x"],
    ["w4", "", "w10", "w9", "-w8", "-w7-w2", "-w3"],
    ["-y2", "-w10", "", "-w5", "-w6", "w1", "-w7+w2"],
    ["-y1", "-w9", "w5", "", "-w10", "-y2", "w4"],
    ["w7", "w8", "w6", "w10", "", "-w5", "-w9"],
    ["-1", "w7+w2", "-w1", "y2", "w5", "", "y1"],
    ["-x", "w3", "w7-w2", "-w4", "w9", "-y1", ""],
];

/// Unsigned Plücker correspondence: the function whose 3q0-th power is
/// proportional to the minor on each vertex pair (vertices unsigned).
const REE_PLUCKER: [(&str, &str, &str); 21] = [
    ("1", "x", "1"),
    ("1", "w1", "x"),
    ("x", "w3", "w1"),
    ("w6", "w1", "w3"),
    ("w8", "w3", "w6"),
    ("w8", "w6", "w8"),
    ("x", "w1", "y1"),
    ("1", "w2", "y1"),
    ("1", "w3", "y2"),
    ("x", "w2", "y2"),
    ("1", "w6", "w4"),
    ("w2", "w1", "w4"),
    ("w8", "x", "w5"),
    ("w3", "w2", "w5"),
    ("w8", "w1", "w9"),
    ("w2", "w6", "w9"),
    ("w6", "w3", "w10"),
    ("w2", "w8", "w10"),
    ("w3", "w1", "w7-w2"),
    ("1", "w8", "w7"),
    ("w6", "x", "w7+w2"),
];

fn build(curve: &CurveSpec, verts: &[&str], upper: &[((usize, usize), &str)]) -> Result<LabeledGraph, GraphError> {
    let (c, f) = (curve.coords(), curve.field());
    let vertices = verts.iter().map(|v| linear_form(c, f, v)).collect::<Result<Vec<_>, _>>()?;
    let mut u = BTreeMap::new();
    let mut names = BTreeMap::new();
    for &((i, j), s) in upper {
        u.insert((i, j), linear_form(c, f, s)?);
        names.insert((i, j), s.to_string());
    }
    Ok(LabeledGraph {
        family: curve.family,
        vertex_names: verts.iter().map(|s| s.to_string()).collect(),
        vertices,
        upper: u,
        upper_names: names,
        long_diagonals: Vec::new(),
        center: None,
    })
}

/// K3 (Hermitian), K4 (Suzuki) or K7 (Ree) with its fixed labelling.
pub fn build_graph(curve: &CurveSpec) -> Result<LabeledGraph, GraphError> {
    match curve.family {
        Family::Hermitian => build(curve, &["1", "x", "y"], &[((0, 1), "1"), ((0, 2), "x"), ((1, 2), "y")]),
        Family::Suzuki => build(
            curve,
            &["1", "x", "z", "w"],
            &[((0, 1), "1"), ((0, 2), "x"), ((0, 3), "y"), ((1, 2), "y"), ((1, 3), "z"), ((2, 3), "w")],
        ),
        Family::Ree => {
            let upper: Vec<_> = REE_LABEL_ROWS
                .iter()
                .enumerate()
                .flat_map(|(i, row)| (i + 1..7).map(move |j| ((i, j), row[j])))
                .collect();
            let mut g = build(curve, &REE_VERTICES, &upper)?;
            g.long_diagonals = vec![(0, 4), (1, 5), (2, 6)];
            g.center = Some(3);
            Ok(g)
        }
    }
}

/// Cells of the full Ree label matrix whose lower entry is not the negated
/// upper entry. The graph uses the upper triangle.
pub fn label_table_asymmetries(curve: &CurveSpec) -> Result<Vec<(String, String, String, String)>, GraphError> {
    let (c, f) = (curve.coords(), curve.field());
    let mut out = Vec::new();
    for i in 0..7 {
        for j in i + 1..7 {
            let up = linear_form(c, f, REE_LABEL_ROWS[i][j])?;
            let lo = linear_form(c, f, REE_LABEL_ROWS[j][i])?;
            if up.add(&lo) != MultiPoly::zero(c, f) {
                out.push((
                    REE_VERTICES[i].to_string(),
                    REE_VERTICES[j].to_string(),
                    REE_LABEL_ROWS[i][j].to_string(),
                    REE_LABEL_ROWS[j][i].to_string(),
                ));
            }
        }
    }
    Ok(out)
}

/// Edges whose label differs from the Plücker table by more than a sign.
pub fn plucker_mismatches(curve: &CurveSpec, g: &LabeledGraph) -> Result<Vec<(String, String)>, GraphError> {
    let (c, f) = (curve.coords(), curve.field());
    let strip = |s: &str| s.trim_start_matches('-').to_string();
    let unsigned: Vec<String> = g.vertex_names.iter().map(|s| strip(s)).collect();
    let mut bad = Vec::new();
    for &(a, b, func) in REE_PLUCKER.iter() {
        let i = unsigned.iter().position(|n| n == a).expect("vertex");
        let j = unsigned.iter().position(|n| n == b).expect("vertex");
        let want = linear_form(c, f, func)?;
        let got = g.label(i, j);
        if got != want && got != want.neg() {
            bad.push((format!("{a},{b}"), g.label_name(i, j)));
        }
    }
    Ok(bad)
}

#[derive(Clone, Debug)]
pub struct Equation {
    pub label: String,
    pub poly: MultiPoly,
}

#[derive(Clone, Debug)]
pub struct EquationSet {
    pub name: String,
    pub equations: Vec<Equation>,
}

#[derive(Clone, Debug)]
pub struct EquationSystem {
    pub family: Family,
    pub sets: Vec<EquationSet>,
    /// Quadrics dropped as repeats: (kept label, dropped label).
    pub duplicates: Vec<(String, String, MultiPoly)>,
}

impl EquationSystem {
    pub fn all(&self) -> impl Iterator<Item = &Equation> {
        self.sets.iter().flat_map(|s| s.equations.iter())
    }

    pub fn polys(&self) -> Vec<MultiPoly> {
        self.all().map(|e| e.poly.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.sets.iter().map(|s| s.equations.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn set_sizes(&self) -> Vec<(String, usize)> {
        self.sets.iter().map(|s| (s.name.clone(), s.equations.len())).collect()
    }

    /// Re-expresses every equation over an extension field.
    pub fn over(&self, field: &Field) -> Vec<MultiPoly> {
        self.all().map(|e| e.poly.to_field(field).expect("prime-field coefficients")).collect()
    }
}

fn triple_name(g: &LabeledGraph, idx: &[usize]) -> String {
    idx.iter().map(|&i| g.vertex_names[i].as_str()).collect::<Vec<_>>().join(",")
}

/// Set 1: one relation per vertex triple.
pub fn triangle_equations(g: &LabeledGraph, q0: u32) -> Vec<Equation> {
    let n = g.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let p = g
                    .label(j, k)
                    .mul(&g.vertices[i].pow(q0))
                    .sub(&g.label(i, k).mul(&g.vertices[j].pow(q0)))
                    .add(&g.label(i, j).mul(&g.vertices[k].pow(q0)));
                out.push(Equation { label: format!("T({})", triple_name(g, &[i, j, k])), poly: p });
            }
        }
    }
    out
}

/// Set 2: the Frobenius power moves from the vertices to the labels.
pub fn twisted_equations(g: &LabeledGraph, e: u32) -> Vec<Equation> {
    let n = g.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let p = g
                    .label(j, k)
                    .pow(e)
                    .mul(&g.vertices[i])
                    .sub(&g.label(i, k).pow(e).mul(&g.vertices[j]))
                    .add(&g.label(i, j).pow(e).mul(&g.vertices[k]));
                out.push(Equation { label: format!("W({})", triple_name(g, &[i, j, k])), poly: p });
            }
        }
    }
    out
}

/// Set 4: Plücker quadrics of all 4-subsets, duplicates removed by
/// canonical form. Returns (kept, dropped duplicates).
#[allow(clippy::type_complexity)]
pub fn quadric_equations(g: &LabeledGraph) -> (Vec<Equation>, Vec<(String, String, MultiPoly)>) {
    let n = g.len();
    let mut out: Vec<Equation> = Vec::new();
    let mut seen: Vec<MultiPoly> = Vec::new();
    let mut dups = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                for l in k + 1..n {
                    let p = g
                        .label(i, j)
                        .mul(&g.label(k, l))
                        .sub(&g.label(i, k).mul(&g.label(j, l)))
                        .add(&g.label(i, l).mul(&g.label(j, k)));
                    let label = format!("Q({})", triple_name(g, &[i, j, k, l]));
                    let cf = p.canonical_form().expect("quadrics are nonzero");
                    if let Some(pos) = seen.iter().position(|s| *s == cf) {
                        dups.push((out[pos].label.clone(), label, cf));
                        continue;
                    }
                    seen.push(cf);
                    out.push(Equation { label, poly: p });
                }
            }
        }
    }
    (out, dups)
}

/// Set 3: −(V_c² + Σ V_a·V_b over the long diagonals (a, b)).
pub fn long_diagonal_equation(g: &LabeledGraph) -> Option<Equation> {
    let c = g.center?;
    let mut p = g.vertices[c].pow(2);
    for &(a, b) in &g.long_diagonals {
        p = p.add(&g.vertices[a].mul(&g.vertices[b]));
    }
    Some(Equation { label: "D(long diagonals)".to_string(), poly: p.neg() })
}

/// Generates the full system of the curve.
pub fn generate_system(curve: &CurveSpec) -> Result<EquationSystem, GraphError> {
    let g = build_graph(curve)?;
    let q0 = curve.q0 as u32;
    let mut sets = vec![EquationSet { name: "triangles".into(), equations: triangle_equations(&g, q0) }];
    let mut duplicates = Vec::new();
    match curve.family {
        Family::Hermitian => {}
        Family::Suzuki => {
            let (quads, d) = quadric_equations(&g);
            duplicates = d;
            sets.push(EquationSet { name: "quadrics".into(), equations: quads });
        }
        Family::Ree => {
            sets.push(EquationSet { name: "twisted".into(), equations: twisted_equations(&g, 3 * q0) });
            sets.push(EquationSet { name: "long-diagonal".into(), equations: long_diagonal_equation(&g).into_iter().collect() });
            let (quads, d) = quadric_equations(&g);
            if d.len() != 1 {
                return Err(GraphError::DuplicateCount(d.len()));
            }
            duplicates = d;
            sets.push(EquationSet { name: "quadrics".into(), equations: quads });
        }
    }
    Ok(EquationSystem { family: curve.family, sets, duplicates })
}

/// One equation of a reference list.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReferenceEquation {
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<u32>,
    pub poly: PolyJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReferenceEquations {
    pub format: String,
    pub family: Family,
    pub m: u32,
    pub p: u32,
    #[serde(default)]
    pub notes: Vec<String>,
    pub equations: Vec<ReferenceEquation>,
}

impl ReferenceEquations {
    pub fn polys(&self, coords: &Coords, field: &Field) -> Result<Vec<(String, MultiPoly)>, PolyError> {
        self.equations
            .iter()
            .map(|e| Ok((e.label.clone(), MultiPoly::from_json(&e.poly, coords, field)?)))
            .collect()
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq, Eq)]
pub struct MatchReport {
    pub matched: usize,
    pub pairs: Vec<(String, String)>,
    pub unmatched_generated: Vec<String>,
    pub unmatched_fixture: Vec<String>,
    pub corrections_applied: Vec<(String, String)>,
}

impl MatchReport {
    pub fn is_bijection(&self) -> bool {
        self.unmatched_generated.is_empty() && self.unmatched_fixture.is_empty()
    }
}

/// Matches generated equations to reference equations up to nonzero scalar.
pub fn verify_against_reference(
    system: &EquationSystem,
    reference: &ReferenceEquations,
    coords: &Coords,
    field: &Field,
) -> Result<MatchReport, PolyError> {
    let refs = reference.polys(coords, field)?;
    let mut pool: Vec<Option<(String, MultiPoly)>> =
        refs.into_iter().map(|(l, p)| Ok(Some((l, p.canonical_form()?)))).collect::<Result<_, PolyError>>()?;
    let mut report = MatchReport::default();
    for eq in system.all() {
        let cf = eq.poly.canonical_form()?;
        let hit = pool.iter().position(|e| matches!(e, Some((_, p)) if *p == cf));
        match hit {
            Some(i) => {
                let (l, _) = pool[i].take().unwrap();
                report.matched += 1;
                report.pairs.push((eq.label.clone(), l));
            }
            None => report.unmatched_generated.push(eq.label.clone()),
        }
    }
    report.unmatched_fixture = pool.into_iter().flatten().map(|(l, _)| l).collect();
    report.corrections_applied = reference
        .equations
        .iter()
        .filter_map(|e| e.note.clone().map(|n| (e.label.clone(), n)))
        .collect();
    Ok(report)
}

/// Evaluates the residual of every equation at a point.
pub fn residuals(polys: &[MultiPoly], field: &Field, pt: &[Fe]) -> Vec<Fe> {
    polys.iter().map(|p| p.compile().eval(field, pt)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negate_label_names() {
        assert_eq!(negate_name("-w7+w2"), "w7-w2");
        assert_eq!(negate_name("y1"), "-y1");
    }

    #[test]
    fn ree_counts() {
        let c = CurveSpec::ree(1).unwrap();
        let s = generate_system(&c).unwrap();
        let sizes: Vec<usize> = s.sets.iter().map(|x| x.equations.len()).collect();
        assert_eq!(sizes, vec![35, 35, 1, 34]);
    }
}
