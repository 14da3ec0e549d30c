//! Hyperplane representations on sorted spectra and their minimization.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::affine::AffineForm;
use crate::geometry::lp::{LinearProgram, LpStatus, Relation, Sense};
use crate::system::WeightVector;
use crate::Rational;

/// `⟨a, λ↓⟩ ≤ b(w)` with integer `a` and an integer affine right-hand side.
///
/// Equality and ordering look at `(a, rhs)` only; `value` follows from `rhs`
/// at the polytope's weights and `label` is presentation.
#[derive(Debug, Clone)]
pub struct LinearConstraint {
    pub a: Vec<i64>,
    pub rhs: AffineForm,
    pub value: Rational,
    pub label: Option<String>,
}

impl LinearConstraint {
    pub fn new(a: Vec<i64>, rhs: AffineForm, w: &WeightVector) -> Self {
        let value = rhs.eval(w);
        Self {
            a,
            rhs,
            value,
            label: None,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn d(&self) -> usize {
        self.a.len()
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.a
            .iter()
            .zip(x)
            .filter(|(a, _)| **a != 0)
            .map(|(&a, xi)| xi * Rational::from_integer(a.into()))
            .sum()
    }

    /// Rewrite to the canonical representative on `Σλ = n`: shift so that
    /// `a_d = 0`, then divide by the gcd. The coefficient vector must be
    /// nonincreasing for the result to be canonical.
    pub fn canonicalize(mut self, n: usize, w: &WeightVector) -> Self {
        let Some(&last) = self.a.last() else {
            return self;
        };
        if last != 0 {
            self.a.iter_mut().for_each(|x| *x -= last);
            let r = self.rhs.r();
            self.rhs = self.rhs - AffineForm::constant(last * n as i64, r);
        }
        let g = self
            .a
            .iter()
            .fold(0i64, |g, &x| num_integer::gcd(g, x))
            .abs();
        if g > 1 {
            let value_scaled = &self.rhs;
            let divisible = value_scaled.constant % g == 0
                && value_scaled.coeffs.iter().all(|c| c % g == 0);
            if divisible {
                self.a.iter_mut().for_each(|x| *x /= g);
                self.rhs = AffineForm {
                    constant: self.rhs.constant / g,
                    coeffs: self.rhs.coeffs.iter().map(|c| c / g).collect(),
                };
            }
        }
        self.value = self.rhs.eval(w);
        self
    }

    /// Text rendering such as `2λ1+λ2+λ3 <= 57/10`.
    pub fn render(&self, symbolic: bool) -> String {
        let mut lhs = String::new();
        for (i, &c) in self.a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if c < 0 {
                lhs.push('-');
            } else if !lhs.is_empty() {
                lhs.push('+');
            }
            if c.abs() != 1 {
                lhs.push_str(&c.abs().to_string());
            }
            lhs.push_str(&format!("λ{}", i + 1));
        }
        if lhs.is_empty() {
            lhs.push('0');
        }
        let rhs = if symbolic {
            self.label.clone().unwrap_or_else(|| self.rhs.render())
        } else {
            crate::scalar::format_rational(&self.value)
        };
        format!("{lhs} <= {rhs}")
    }
}

impl PartialEq for LinearConstraint {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.rhs == other.rhs
    }
}

impl Eq for LinearConstraint {}

impl PartialOrd for LinearConstraint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LinearConstraint {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.a, &self.rhs).cmp(&(&other.a, &other.rhs))
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

/// Rows on `λ↓` together with the implicit equality `Σλ = n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HRep {
    pub d: usize,
    pub n: usize,
    pub rows: Vec<LinearConstraint>,
}

impl HRep {
    pub fn new(d: usize, n: usize, rows: Vec<LinearConstraint>) -> Self {
        Self { d, n, rows }
    }

    /// Sort rows canonically and drop exact duplicates.
    pub fn sorted(mut self) -> Self {
        self.rows.sort();
        self.rows.dedup();
        self
    }

    /// Rows with the same coefficient vector keep only the tightest bound at `w`.
    pub fn dedupe_coefficients(mut self) -> Self {
        self.rows.sort_by(|x, y| x.a.cmp(&y.a).then(x.value.cmp(&y.value)));
        self.rows.dedup_by(|later, first| later.a == first.a);
        self
    }

    /// Canonical `(a, rhs)` pairs, sorted; the form used for exact comparison.
    pub fn canonical_rows(&self) -> Vec<(Vec<i64>, AffineForm)> {
        let mut v: Vec<_> = self.rows.iter().map(|r| (r.a.clone(), r.rhs.clone())).collect();
        v.sort();
        v
    }

    /// Re-evaluate every right-hand side at `w`.
    pub fn at(&self, w: &WeightVector) -> Self {
        let mut out = self.clone();
        for r in out.rows.iter_mut() {
            r.value = r.rhs.eval(w);
        }
        out
    }

    /// Sorted `x`: indices of violated rows.
    pub fn violations(&self, sorted: &[Rational]) -> Vec<usize> {
        self.rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.lhs(sorted) > r.value)
            .map(|(i, _)| i)
            .collect()
    }
}

fn rational(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// The sorted simplex domain `x₁ ≥ … ≥ x_d`, `Σx = n`, as LP rows over free variables.
pub(crate) fn sorted_domain(lp: &mut LinearProgram<Rational>, d: usize, n: usize) {
    lp.set_all_free();
    for k in 0..d.saturating_sub(1) {
        let mut row = vec![Rational::zero(); d];
        row[k] = Rational::one();
        row[k + 1] = -Rational::one();
        lp.add_row(row, Relation::Ge, Rational::zero());
    }
    lp.add_row(vec![Rational::one(); d], Relation::Eq, rational(n as i64));
}

/// Drop every row implied by the others on the sorted domain.
///
/// Rows are tested in canonical order; a row is removed iff maximizing its
/// left side under the remaining rows stays within its bound.
pub fn remove_redundant(h: &HRep) -> HRep {
    let mut rows = h.clone().dedupe_coefficients().rows;
    rows.retain(|r| r.a.iter().any(|&x| x != 0) || r.value.is_negative());
    let mut t = 0;
    while t < rows.len() {
        let mut lp = LinearProgram::<Rational>::new(h.d);
        sorted_domain(&mut lp, h.d, h.n);
        for (i, r) in rows.iter().enumerate() {
            if i != t {
                lp.add_row(r.a.iter().map(|&x| rational(x)).collect(), Relation::Le, r.value.clone());
            }
        }
        lp.set_objective(rows[t].a.iter().map(|&x| rational(x)).collect(), Sense::Max);
        let sol = lp.solve();
        let redundant = match sol.status {
            LpStatus::Optimal => sol.optimum.unwrap() <= rows[t].value,
            // the others already make the domain empty: keep the row, the set is empty either way
            LpStatus::Infeasible => false,
            LpStatus::Unbounded => false,
        };
        if redundant {
            rows.remove(t);
        } else {
            t += 1;
        }
    }
    HRep::new(h.d, h.n, rows).sorted()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(a: &[i64], c: i64) -> LinearConstraint {
        LinearConstraint::new(a.to_vec(), AffineForm::constant(c, 1), &WeightVector::pure())
    }

    #[test]
    fn duplicates_collapse() {
        let h = HRep::new(3, 2, vec![row(&[1, 0, 0], 1), row(&[1, 0, 0], 1)]);
        assert_eq!(remove_redundant(&h).rows.len(), 1);
    }

    #[test]
    fn looser_bound_dropped() {
        let h = HRep::new(4, 4, vec![row(&[1, 0, 0, 0], 2), row(&[1, 0, 0, 0], 3)]);
        let m = remove_redundant(&h);
        assert_eq!(m.rows, vec![row(&[1, 0, 0, 0], 2)]);
    }

    #[test]
    fn implied_row_dropped() {
        // with λ1 ≤ 1 on four sorted entries summing to 2, λ1+λ2 ≤ 2 is implied
        let h = HRep::new(
            4,
            2,
            vec![row(&[1, 0, 0, 0], 1), row(&[1, 1, 0, 0], 2), row(&[1, 1, 1, 0], 2)],
        );
        let m = remove_redundant(&h);
        assert_eq!(m.rows, vec![row(&[1, 0, 0, 0], 1), row(&[1, 1, 1, 0], 2)]);
    }

    #[test]
    fn canonical_shift_and_gcd() {
        let w = WeightVector::pure();
        let r = LinearConstraint::new(vec![3, 3, 1, 1], AffineForm::constant(10, 1), &w).canonicalize(4, &w);
        assert_eq!(r.a, vec![1, 1, 0, 0]);
        assert_eq!(r.rhs, AffineForm::constant(3, 1));
    }

    #[test]
    fn rendering() {
        let w = WeightVector::parse("7/10,3/10").unwrap();
        let r = LinearConstraint::new(vec![2, 1, 1, 0], AffineForm { constant: 5, coeffs: vec![1] }, &w);
        assert_eq!(r.render(false), "2λ1+λ2+λ3 <= 57/10");
        assert_eq!(r.render(true), "2λ1+λ2+λ3 <= 5+w1");
    }
}
