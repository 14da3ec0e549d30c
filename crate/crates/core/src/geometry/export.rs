//! JSON and cdd-style text serialization of polytopes.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::affine::AffineForm;
use crate::error::{Error, Result};
use crate::geometry::hrep::{HRep, LinearConstraint};
use crate::geometry::polytope::Polytope;
use crate::scalar::{format_rational, parse_rational};
use crate::system::{QuantumSystem, WeightVector};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowDocument {
    pub a: Vec<i64>,
    pub b0: i64,
    pub bw: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDocument {
    pub system: QuantumSystem,
    pub w: Vec<String>,
    pub vertices: Vec<Vec<String>>,
    pub rows: Vec<RowDocument>,
}

impl PolytopeDocument {
    pub fn from_polytope(p: &Polytope) -> Self {
        Self {
            system: *p.system(),
            w: p.w().to_strings(),
            vertices: p
                .distinct_vertex_values()
                .iter()
                .map(|v| v.iter().map(format_rational).collect())
                .collect(),
            rows: hrep_rows(p.hrep()),
        }
    }

    pub fn weights(&self) -> Result<WeightVector> {
        WeightVector::parse(&self.w.join(","))
    }

    pub fn vertex_values(&self) -> Result<Vec<Vec<Rational>>> {
        self.vertices
            .iter()
            .map(|v| v.iter().map(|s| parse_rational(s)).collect())
            .collect()
    }

    /// Rebuild the H-representation, evaluating right-hand sides at the stored weights.
    pub fn hrep(&self) -> Result<HRep> {
        let w = self.weights()?;
        let d = self.system.d();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                if r.a.len() != d {
                    return Err(Error::Length(format!("row has {} coefficients, expected {d}", r.a.len())));
                }
                let rhs = AffineForm {
                    constant: r.b0,
                    coeffs: r.bw.clone(),
                };
                Ok(LinearConstraint::new(r.a.clone(), rhs, &w))
            })
            .collect::<Result<_>>()?;
        Ok(HRep::new(d, self.system.n(), rows))
    }
}

pub fn hrep_rows(h: &HRep) -> Vec<RowDocument> {
    h.rows
        .iter()
        .map(|r| RowDocument {
            a: r.a.clone(),
            b0: r.rhs.constant,
            bw: r.rhs.coeffs.clone(),
        })
        .collect()
}

pub fn polytope_to_json(p: &Polytope) -> serde_json::Value {
    serde_json::to_value(PolytopeDocument::from_polytope(p)).expect("document is serializable")
}

pub fn polytope_from_json(v: &serde_json::Value) -> Result<PolytopeDocument> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))
}

fn header(p: &Polytope) -> String {
    let s = p.system();
    format!("* N={} twoS={} d={} w={}\n", s.n(), s.two_s(), s.d(), p.w())
}

/// H-representation of the sorted slice in cdd `.ine` layout: `b − A·x ≥ 0`,
/// with the chamber rows and the normalization as a linearity.
pub fn to_ine(p: &Polytope) -> String {
    let (d, n) = (p.system().d(), p.system().n());
    let mut lines: Vec<String> = Vec::new();
    let mut eq = vec![n.to_string()];
    eq.extend(std::iter::repeat_n("-1".to_string(), d));
    lines.push(eq.join(" "));
    for k in 0..d.saturating_sub(1) {
        let mut row = vec!["0".to_string(); d + 1];
        row[k + 1] = "1".into();
        row[k + 2] = "-1".into();
        lines.push(row.join(" "));
    }
    for r in &p.hrep().rows {
        let mut row = vec![format_rational(&r.value)];
        row.extend(r.a.iter().map(|x| (-x).to_string()));
        lines.push(row.join(" "));
    }
    let mut s = header(p);
    s.push_str("* rows act on the decreasingly sorted spectrum\n");
    s.push_str("H-representation\nlinearity 1 1\nbegin\n");
    let _ = writeln!(s, "{} {} rational", lines.len(), d + 1);
    for l in lines {
        s.push_str(&l);
        s.push('\n');
    }
    s.push_str("end\n");
    s
}

/// Generating vertices in cdd `.ext` layout.
pub fn to_ext(p: &Polytope) -> String {
    let vs = p.distinct_vertex_values();
    let d = p.system().d();
    let mut s = header(p);
    s.push_str("* generating vertices; the polytope is the convex hull of all their permutations\n");
    s.push_str("V-representation\nbegin\n");
    let _ = writeln!(s, "{} {} rational", vs.len(), d + 1);
    for v in vs {
        let mut row = vec!["1".to_string()];
        row.extend(v.iter().map(format_rational));
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s.push_str("end\n");
    s
}
