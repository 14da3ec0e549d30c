//! Normal fan of a permutation-invariant polytope, restricted to the
//! fundamental chamber, and the facet rows read off its rays.

use num_traits::ToPrimitive;

use crate::affine::AffineForm;
use crate::error::{Error, Result};
use crate::geometry::cone::{chamber_inequalities, extreme_rays, Cone, Ray};
use crate::geometry::hrep::{remove_redundant, HRep, LinearConstraint};
use crate::lineups::GeneratingVertex;
use crate::scalar::integerize;
use crate::system::WeightVector;
use crate::Rational;

/// `C_i = {η nonincreasing : ⟨η, v_i⟩ ≥ ⟨η, v_j⟩ ∀j}` modulo `𝟙`, one per vertex.
pub fn fundamental_normal_cones(vertices: &[Vec<Rational>]) -> Result<Vec<Cone>> {
    let Some(d) = vertices.first().map(|v| v.len()) else {
        return Ok(Vec::new());
    };
    for (i, v) in vertices.iter().enumerate() {
        if vertices[..i].contains(v) {
            return Err(Error::DegenerateInput(format!(
                "vertex {i} repeats an earlier vertex"
            )));
        }
    }
    Ok(vertices
        .iter()
        .enumerate()
        .map(|(i, vi)| {
            let mut ineqs = chamber_inequalities(d);
            for (j, vj) in vertices.iter().enumerate() {
                if i != j {
                    let diff: Vec<Rational> = vi.iter().zip(vj).map(|(a, b)| a - b).collect();
                    ineqs.push(integerize(&diff));
                }
            }
            Cone::modulo_ones(ineqs, d)
        })
        .collect())
}

fn pairing(a: &[i64], v: &[Rational]) -> Rational {
    a.iter()
        .zip(v)
        .map(|(&x, y)| y * Rational::from_integer(x.into()))
        .sum()
}

/// Symbolic support value of `a` over the vertices, evaluated and as a form.
fn support(a: &[i64], vertices: &[GeneratingVertex], w: &WeightVector) -> Result<(Rational, AffineForm)> {
    let vals: Vec<Rational> = vertices.iter().map(|v| pairing(a, v.values())).collect();
    let best = vals.iter().max().cloned().unwrap();
    let mut forms: Vec<AffineForm> = vertices
        .iter()
        .zip(&vals)
        .filter(|(_, x)| **x == best)
        .map(|(v, _)| AffineForm::combine(a, v.forms()))
        .collect();
    forms.sort();
    forms.dedup();
    // ties between distinct forms are resolved by the value at generic weights
    for k in 0..2 {
        if forms.len() == 1 {
            break;
        }
        let sample = WeightVector::generic_sample(w.r().max(forms[0].r()), k);
        let top = forms.iter().map(|f| f.eval(&sample)).max().unwrap();
        forms.retain(|f| f.eval(&sample) == top);
    }
    if forms.len() > 1 {
        return Err(Error::Tie(format!("{a:?}: {} vs {}", forms[0], forms[1])));
    }
    Ok((best, forms.pop().unwrap()))
}

/// Rows `⟨ρ, λ↓⟩ ≤ max_i ⟨ρ, v_i⟩` for every extreme ray `ρ` of every cone,
/// minimized by [`remove_redundant`].
pub fn facet_inequalities(
    vertices: &[GeneratingVertex],
    cones: &[Cone],
    n: usize,
    w: &WeightVector,
) -> Result<HRep> {
    let d = vertices
        .first()
        .map(|v| v.d())
        .ok_or_else(|| Error::DegenerateInput("no vertices".into()))?;
    let mut rays: Vec<Ray> = Vec::new();
    for c in cones {
        rays.extend(extreme_rays(c)?);
    }
    rays.sort();
    rays.dedup();
    let mut rows = Vec::with_capacity(rays.len());
    for ray in &rays {
        let a: Vec<i64> = ray
            .direction
            .iter()
            .map(|x| x.to_i64().ok_or_else(|| Error::Invariant("ray entry overflow".into())))
            .collect::<Result<_>>()?;
        let (value, form) = support(&a, vertices, w)?;
        debug_assert_eq!(form.eval(w), value);
        let row = LinearConstraint::new(a, form, w).canonicalize(n, w);
        rows.push(row);
    }
    Ok(remove_redundant(&HRep::new(d, n, rows)))
}
