//! Integer affine forms in the weights `w₁, …, w_r`.
//!
//! Forms are stored in reduced coordinates: `w_r` is eliminated through
//! `Σ w_j = 1`, so a form is `c₀ + Σ_{j<r} c_j w_j`. Two forms with the same
//! value on every normalized weight vector are then structurally equal.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::system::WeightVector;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineForm {
    pub constant: i64,
    /// Coefficients of `w₁ … w_{r−1}`.
    pub coeffs: Vec<i64>,
}

impl AffineForm {
    pub fn zero(r: usize) -> Self {
        Self::constant(0, r)
    }

    pub fn constant(c: i64, r: usize) -> Self {
        Self {
            constant: c,
            coeffs: vec![0; r.saturating_sub(1)],
        }
    }

    /// `Σ_{j≤r} full[j] · w_j`, reduced.
    pub fn from_weights(full: &[i64]) -> Self {
        let Some((&last, rest)) = full.split_last() else {
            return Self::zero(0);
        };
        Self {
            constant: last,
            coeffs: rest.iter().map(|c| c - last).collect(),
        }
    }

    /// Number of weights the form is defined over.
    pub fn r(&self) -> usize {
        self.coeffs.len() + 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Value at `w`; weights beyond the form's range are read as absent, so a
    /// weight vector with fewer than `r` entries evaluates as if `w_r = 0`.
    pub fn eval(&self, w: &WeightVector) -> Rational {
        let mut v = Rational::from_integer(self.constant.into());
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                v += w.get(j) * Rational::from_integer(c.into());
            }
        }
        v
    }

    /// Restrict to `w_r = 0`, giving a form over `r − 1` weights.
    pub fn drop_last_weight(&self) -> Self {
        let Some((&last, rest)) = self.coeffs.split_last() else {
            return self.clone();
        };
        Self {
            constant: self.constant + last,
            coeffs: rest.iter().map(|c| c - last).collect(),
        }
    }

    /// Pad to a form over `r` weights (no-op if already that long).
    pub fn extend_to(&self, r: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(r.saturating_sub(1).max(coeffs.len()), 0);
        Self {
            constant: self.constant,
            coeffs,
        }
    }

    /// Integer linear combination `Σ a_i f_i`.
    pub fn combine(a: &[i64], forms: &[AffineForm]) -> Self {
        let r = forms.iter().map(|f| f.r()).max().unwrap_or(1);
        a.iter()
            .zip(forms)
            .fold(Self::zero(r), |acc, (&ai, f)| acc + f.extend_to(r) * ai)
    }

    /// Human-readable rendering with `N` and `S` left numeric.
    pub fn render(&self) -> String {
        let mut s = String::new();
        if self.constant != 0 || self.is_constant() {
            s.push_str(&self.constant.to_string());
        }
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else if s.is_empty() { "" } else { "+" };
            let mag = c.unsigned_abs();
            let coef = if mag == 1 { String::new() } else { mag.to_string() };
            s.push_str(&format!("{sign}{coef}w{}", j + 1));
        }
        s
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl Add for AffineForm {
    type Output = AffineForm;
    fn add(self, rhs: AffineForm) -> AffineForm {
        let r = self.r().max(rhs.r());
        let (a, b) = (self.extend_to(r), rhs.extend_to(r));
        AffineForm {
            constant: a.constant + b.constant,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl Neg for AffineForm {
    type Output = AffineForm;
    fn neg(self) -> AffineForm {
        self * -1
    }
}

impl Sub for AffineForm {
    type Output = AffineForm;
    fn sub(self, rhs: AffineForm) -> AffineForm {
        self + (-rhs)
    }
}

impl Mul<i64> for AffineForm {
    type Output = AffineForm;
    fn mul(self, k: i64) -> AffineForm {
        AffineForm {
            constant: self.constant * k,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }
}
