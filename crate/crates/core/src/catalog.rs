//! Closed-form constraint and vertex families, written out by hand for
//! comparison against the computed pipeline.
//!
//! Rows are emitted in canonical form (`a` nonincreasing, `a_d = 0`). Catalog
//! H-representations are not minimized here; pass them through
//! [`remove_redundant`](crate::geometry::remove_redundant) before comparing.

use num_traits::{One, Zero};

use crate::affine::AffineForm;
use crate::error::{Error, Result};
use crate::geometry::hrep::{HRep, LinearConstraint};
use crate::geometry::minkowski::hypersimplex_vertices;
use crate::lineups::GeneratingVertex;
use crate::poset::stability_check;
use crate::system::{QuantumSystem, WeightVector};
use crate::Rational;

/// Parse a short expression such as `2-w1-w3` or `1+2w1` into a form over `r` weights.
fn form(expr: &str, r: usize) -> AffineForm {
    let mut out = AffineForm::zero(r);
    let normalized = expr.replace('-', "+-");
    for term in normalized.split('+').map(str::trim).filter(|t| !t.is_empty()) {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, term),
        };
        match body.split_once('w') {
            Some((coef, idx)) => {
                let c: i64 = if coef.is_empty() { 1 } else { coef.parse().expect("coefficient") };
                let j: usize = idx.parse().expect("weight index");
                assert!(j >= 1 && j < r, "w{j} is not a reduced coordinate for r={r}");
                out.coeffs[j - 1] += sign * c;
            }
            None => out.constant += sign * body.parse::<i64>().expect("constant"),
        }
    }
    out
}

/// Coefficient vector from `(value, count)` runs, zero-padded to `d`.
fn runs(d: usize, parts: &[(i64, usize)]) -> Vec<i64> {
    let mut a: Vec<i64> = parts
        .iter()
        .flat_map(|&(v, k)| std::iter::repeat_n(v, k))
        .collect();
    assert!(a.len() <= d, "row longer than d");
    a.resize(d, 0);
    a
}

fn row(a: Vec<i64>, rhs: AffineForm, w: &WeightVector, label: &str) -> LinearConstraint {
    LinearConstraint::new(a, rhs, w).with_label(label)
}

/// `Σ_{i≤k} λ↓_i ≤ min(2k, N−2S+max(0,k−K), N)` for `k = 1..d−1`.
///
/// Rows past `k = J` all read `≤ N`; the last of them encodes `λ↓_d ≥ 0`.
pub fn spin_pauli(sys: &QuantumSystem) -> HRep {
    spin_pauli_at(sys, &WeightVector::pure())
}

fn spin_pauli_at(sys: &QuantumSystem, w: &WeightVector) -> HRep {
    let (n, k_, d) = (sys.n(), sys.k(), sys.d());
    let two_s = sys.two_s();
    let rows = (1..d)
        .map(|k| {
            let b = (2 * k).min(n - two_s + k.saturating_sub(k_)).min(n) as i64;
            row(
                runs(d, &[(1, k)]),
                AffineForm::constant(b, w.r()),
                w,
                &b.to_string(),
            )
        })
        .collect();
    HRep::new(d, n, rows)
}

fn require_r(w: &WeightVector, r: usize) -> Result<()> {
    if w.r() != r {
        return Err(Error::Weights(format!(
            "family for r={r} needs {r} nonzero weights, got {}",
            w.r()
        )));
    }
    Ok(())
}

/// Spin-Pauli ladder plus the generic rows for `r = 2, 3`.
pub fn generic_family(sys: &QuantumSystem, w: &WeightVector, r: usize) -> Result<HRep> {
    if !(1..=3).contains(&r) {
        return Err(Error::Applicability(format!("no generic closed form for r={r}")));
    }
    require_r(w, r)?;
    let rep = stability_check(sys, r);
    if !rep.holds() {
        return Err(Error::Stability(rep.describe()));
    }
    let mut h = spin_pauli_at(sys, w);
    let (n, s2, d) = (sys.n() as i64, sys.two_s() as i64, sys.d());
    let (k, j) = (sys.k(), sys.j());
    if r >= 2 {
        h.rows.push(row(
            runs(d, &[(2, k), (1, j - k)]),
            form(&format!("{}+w1", 2 * n - s2 - 1), r),
            w,
            "2(N-S)-1+w1",
        ));
    }
    if r >= 3 {
        h.rows.push(row(
            runs(d, &[(3, k - 1), (2, 2), (1, j - k - 1)]),
            form(&format!("{}+w1+w2", 3 * n - 2 * s2 - 2), r),
            w,
            "3N-4S-2+w1+w2",
        ));
        h.rows.push(row(
            runs(d, &[(3, k), (2, j - 1 - k), (1, 2)]),
            form(&format!("{}+w1+w2", 3 * n - s2 - 2), r),
            w,
            "3N-2S-2+w1+w2",
        ));
    }
    Ok(h)
}

fn singlet_applicable(n: usize, d: usize, r: usize) -> Result<()> {
    if n % 2 != 0 || n == 0 {
        return Err(Error::Applicability(format!("singlet family needs even N>0, got N={n}")));
    }
    if !(1..=4).contains(&r) {
        return Err(Error::Applicability(format!("no singlet closed form for r={r}")));
    }
    if d < n / 2 + r.max(2) - 1 {
        return Err(Error::Applicability(format!(
            "singlet family for r={r} needs d >= N/2+r-1 = {}, got d={d}",
            n / 2 + r - 1
        )));
    }
    if r >= 3 && n < 4 {
        return Err(Error::Applicability(format!("singlet family for r={r} needs N >= 4")));
    }
    Ok(())
}

/// Spin-Pauli ladder for `S = 0` plus the singlet rows for `r = 2, 3, 4`.
pub fn singlet_family(n: usize, d: usize, w: &WeightVector, r: usize) -> Result<HRep> {
    singlet_applicable(n, d, r)?;
    require_r(w, r)?;
    let sys = QuantumSystem::new(n, 0, d, None)?;
    let mut h = spin_pauli_at(&sys, w);
    let h2 = n / 2;
    let ni = n as i64;
    if r >= 2 {
        h.rows.push(row(runs(d, &[(1, h2)]), form(&format!("{}+w1", ni - 1), r), w, "N-1+w1"));
    }
    if r >= 3 {
        h.rows.push(row(
            runs(d, &[(3, h2 - 1), (2, 1), (1, 1)]),
            form(&format!("{}+2w1+w2", 3 * ni - 4), r),
            w,
            "3N-4+2w1+w2",
        ));
    }
    if r >= 4 {
        h.rows.push(row(
            runs(d, &[(3, h2 - 1), (2, 1), (1, 2)]),
            form(&format!("{}+2w1+w2+w3", 3 * ni - 4), r),
            w,
            "3N-4+2w1+w2+w3",
        ));
        h.rows.push(row(
            runs(d, &[(2, h2 - 1), (1, 2)]),
            form(&format!("{}+w1+w2+w3", 2 * ni - 3), r),
            w,
            "2N-3+w1+w2+w3",
        ));
        h.rows.push(row(
            runs(d, &[(3, h2 - 2), (2, 2), (1, 1)]),
            form(&format!("{}+2w1+w2+w3", 3 * ni - 6), r),
            w,
            "3N-6+2w1+w2+w3",
        ));
    }
    Ok(h)
}

/// The closed-form H-representation covering `sys` at `w`, if any.
pub fn catalog_hrep(sys: &QuantumSystem, w: &WeightVector) -> Result<HRep> {
    let r = w.r();
    if r == 1 {
        return Ok(spin_pauli_at(sys, w));
    }
    if sys.two_s() == 0 {
        return singlet_family(sys.n(), sys.d(), w, r);
    }
    generic_family(sys, w, r)
}

/// Vertex from runs of `(expression, count)`, zero-padded to `d`.
fn vertex(d: usize, w: &WeightVector, parts: &[(&str, usize)]) -> GeneratingVertex {
    let r = w.r();
    let mut forms: Vec<AffineForm> = parts
        .iter()
        .flat_map(|&(e, k)| std::iter::repeat_n(form(e, r), k))
        .collect();
    assert!(forms.len() <= d, "vertex longer than d");
    forms.resize(d, AffineForm::zero(r));
    GeneratingVertex::new(forms, w)
}

/// The displayed generating-vertex families.
pub fn catalog_vertices(sys: &QuantumSystem, w: &WeightVector, r: usize) -> Result<Vec<GeneratingVertex>> {
    require_r(w, r)?;
    let d = sys.d();
    let (k, s2) = (sys.k(), sys.two_s());
    if r == 1 {
        return Ok(vec![vertex(d, w, &[("2", k), ("1", s2)])]);
    }
    if s2 == 0 {
        let n = sys.n();
        singlet_applicable(n, d, r)?;
        let h = n / 2;
        let v = |parts: &[(&str, usize)]| vertex(d, w, parts);
        return Ok(match r {
            2 => vec![v(&[("2", h - 1), ("1+w1", 1), ("1-w1", 1)])],
            3 => vec![
                v(&[("2", h - 1), ("1+w1", 1), ("w2", 1), ("1-w1-w2", 1)]),
                v(&[("2", h - 1), ("2w1+w2", 1), ("2-2w1-w2", 1)]),
                v(&[("2", h - 2), ("1+w1+w2", 1), ("2-w2", 1), ("1-w1", 1)]),
            ],
            _ => {
                let mut out = vec![
                    v(&[("2", h - 1), ("1+w1", 1), ("w2", 1), ("w3", 1), ("1-w1-w2-w3", 1)]),
                    v(&[("2", h - 1), ("2w1+w2+w3", 1), ("2-2w1-w2-2w3", 1), ("w3", 1)]),
                    v(&[("2", h - 1), ("1+w1-w3", 1), ("w2+2w3", 1), ("1-w1-w2-w3", 1)]),
                    v(&[("2", h - 2), ("1+w1+w2+w3", 1), ("2-w2-2w3", 1), ("1-w1+w3", 1)]),
                    v(&[("2", h - 2), ("2-w3", 1), ("2w1+w2+2w3", 1), ("2-2w1-w2-w3", 1)]),
                    v(&[("2", h - 2), ("1+w1+w2+w3", 1), ("2-w2-w3", 1), ("1-w1-w3", 1), ("w3", 1)]),
                    v(&[("2", h - 2), ("2-w3", 1), ("1+w1+w3", 1), ("w2+w3", 1), ("1-w1-w2-w3", 1)]),
                ];
                // the last family needs three doubly occupied orbitals to draw from
                if h >= 3 {
                    out.push(v(&[("2", h - 3), ("1+w1+w2+w3", 1), ("2-w3", 1), ("2-w2", 1), ("1-w1", 1)]));
                }
                out
            }
        });
    }
    let rep = stability_check(sys, r);
    if !rep.holds() {
        return Err(Error::Stability(rep.describe()));
    }
    let v = |parts: &[(&str, usize)]| vertex(d, w, parts);
    match r {
        2 => Ok(vec![
            v(&[("2", k), ("1", s2 - 1), ("w1", 1), ("1-w1", 1)]),
            v(&[("2", k - 1), ("1+w1", 1), ("2-w1", 1), ("1", s2 - 1)]),
        ]),
        3 => Ok(vec![
            v(&[("2", k - 1), ("2-w2", 1), ("1+w2", 1), ("1", s2 - 2), ("w1+w2", 1), ("1-w1-w2", 1)]),
            v(&[("2", k - 1), ("1+w1+w2", 1), ("2-w1-w2", 1), ("1", s2 - 2), ("1-w2", 1), ("w2", 1)]),
            v(&[("2", k - 1), ("1+w1", 1), ("1+w2", 1), ("2-w1-w2", 1), ("1", s2 - 2)]),
            v(&[("2", k - 2), ("1+w1+w2", 1), ("2-w2", 1), ("2-w1", 1), ("1", s2 - 1)]),
            v(&[("2", k), ("1", s2 - 1), ("w1", 1), ("w2", 1), ("1-w1-w2", 1)]),
            v(&[("2", k), ("1", s2 - 2), ("w1+w2", 1), ("1-w2", 1), ("1-w1", 1)]),
        ]),
        _ => Err(Error::Applicability(format!("no generic vertex family for r={r}"))),
    }
}

/// Generators of the two hypersimplices whose Minkowski sum is the `w = (1)`
/// polytope: `K` ones and `J` ones respectively, with all their permutations.
pub fn pauli_minkowski_vertices(sys: &QuantumSystem) -> (Vec<Vec<Rational>>, Vec<Vec<Rational>>) {
    (
        hypersimplex_vertices(sys.d(), sys.k()),
        hypersimplex_vertices(sys.d(), sys.j()),
    )
}

/// The sorted generators `p⁽¹⁾ = (1^K, 0, …)` and `p⁽²⁾ = (1^J, 0, …)`.
pub fn pauli_minkowski_generators(sys: &QuantumSystem) -> (Vec<Rational>, Vec<Rational>) {
    let ones = |m: usize| -> Vec<Rational> {
        (0..sys.d())
            .map(|i| if i < m { Rational::one() } else { Rational::zero() })
            .collect()
    };
    (ones(sys.k()), ones(sys.j()))
}
