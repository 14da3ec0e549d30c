//! Domain types: the quantum-number sector, the ensemble weights, spectra,
//! and the majorization order.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{format_rational, parse_rational_list, ExactField};
use crate::Rational;

/// The sector `(N, S, M)` together with the orbital count `d`.
///
/// Spin quantum numbers are stored doubled so they stay integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumSystem {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "twoS")]
    two_s: usize,
    d: usize,
    #[serde(rename = "twoM", default, skip_serializing_if = "Option::is_none")]
    two_m: Option<i64>,
}

impl QuantumSystem {
    /// Validate raw quantum numbers. Never clamps.
    pub fn new(n: usize, two_s: usize, d: usize, two_m: Option<i64>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::Range(format!(
                "N and d must be positive (N={n}, d={d})"
            )));
        }
        if two_s % 2 != n % 2 {
            return Err(Error::Parity(format!(
                "2S={two_s} and N={n} must have equal parity"
            )));
        }
        if two_s > n {
            return Err(Error::Range(format!("2S={two_s} exceeds N={n}")));
        }
        if n > 2 * d {
            return Err(Error::Range(format!(
                "N={n} exceeds the Pauli capacity 2d={}",
                2 * d
            )));
        }
        let j = (n + two_s) / 2;
        if j > d {
            return Err(Error::Range(format!(
                "J=(N+2S)/2={j} occupied orbitals do not fit into d={d}"
            )));
        }
        if let Some(m) = two_m {
            if m.unsigned_abs() as usize > two_s {
                return Err(Error::Range(format!("|2M|={} exceeds 2S={two_s}", m.abs())));
            }
            if m.rem_euclid(2) as usize != two_s % 2 {
                return Err(Error::Parity(format!(
                    "2M={m} and 2S={two_s} must have equal parity"
                )));
            }
        }
        Ok(Self { n, two_s, d, two_m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn two_s(&self) -> usize {
        self.two_s
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn two_m(&self) -> Option<i64> {
        self.two_m
    }

    /// Number of doubly occupied orbitals in the highest-weight configuration, `(N-2S)/2`.
    pub fn k(&self) -> usize {
        (self.n - self.two_s) / 2
    }

    /// Number of occupied orbitals in the highest-weight configuration, `(N+2S)/2`.
    pub fn j(&self) -> usize {
        (self.n + self.two_s) / 2
    }

    /// Same sector with a different orbital count.
    pub fn with_orbitals(&self, d: usize) -> Result<Self> {
        Self::new(self.n, self.two_s, d, self.two_m)
    }
}

impl fmt::Display for QuantumSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={} 2S={} d={}", self.n, self.two_s, self.d)?;
        if let Some(m) = self.two_m {
            write!(f, " 2M={m}")?;
        }
        Ok(())
    }
}

/// Nonincreasing positive weights summing to one. Trailing zeros are implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Weights("no weights given".into()));
        }
        if entries.iter().any(|w| *w <= Rational::zero()) {
            return Err(Error::Weights(
                "stored weights must be positive (drop trailing zeros)".into(),
            ));
        }
        if entries.windows(2).any(|p| p[0] < p[1]) {
            return Err(Error::Weights("weights must be nonincreasing".into()));
        }
        let total: Rational = entries.iter().sum();
        if !total.is_one() {
            return Err(Error::Weights(format!(
                "weights sum to {}, not 1",
                format_rational(&total)
            )));
        }
        Ok(Self(entries))
    }

    /// Parse `"p/q,p/q,..."`; trailing zero entries are dropped.
    pub fn parse(s: &str) -> Result<Self> {
        let mut v = parse_rational_list(s)?;
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        Self::new(v)
    }

    /// The pure-state weights `(1)`.
    pub fn pure() -> Self {
        Self(vec![Rational::one()])
    }

    /// A deterministic, strictly decreasing weight vector of length `r`.
    ///
    /// Entries are proportional to `b^(r-j) + j*(k+1)` with `b = k + 3`, so
    /// different `k` give unrelated gap patterns.
    pub fn generic_sample(r: usize, k: usize) -> Self {
        assert!(r >= 1, "weight vectors need at least one entry");
        let base = (k + 3) as i64;
        let raw: Vec<i64> = (1..=r)
            .map(|j| base.pow((r - j) as u32) + (j * (k + 1)) as i64)
            .collect();
        let total: i64 = raw.iter().sum();
        Self(
            raw.into_iter()
                .map(|x| Rational::new(x.into(), total.into()))
                .collect(),
        )
    }

    pub fn r(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    /// Entry `j` (0-based), zero past the stored length.
    pub fn get(&self, j: usize) -> Rational {
        self.0.get(j).cloned().unwrap_or_else(Rational::zero)
    }

    /// Entries padded with zeros to length `len`.
    pub fn padded(&self, len: usize) -> Vec<Rational> {
        (0..len.max(self.r())).map(|j| self.get(j)).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

/// A candidate vector of natural-orbital occupation numbers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spectrum(Vec<Rational>);

impl Spectrum {
    pub fn new(entries: Vec<Rational>) -> Self {
        Self(entries)
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self(parse_rational_list(s)?))
    }

    /// Attach to a system: length `d` and total `N` are checked exactly.
    pub fn for_system(entries: Vec<Rational>, sys: &QuantumSystem) -> Result<Self> {
        if entries.len() != sys.d() {
            return Err(Error::Length(format!(
                "spectrum has {} entries, system has d={}",
                entries.len(),
                sys.d()
            )));
        }
        let total: Rational = entries.iter().sum();
        if total != Rational::from_integer(sys.n().into()) {
            return Err(Error::Normalization(format!(
                "entries sum to {}, expected N={}",
                format_rational(&total),
                sys.n()
            )));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.0.iter().sum()
    }

    /// The decreasingly rearranged vector.
    pub fn sorted(&self) -> Vec<Rational> {
        sort_descending(&self.0).0
    }
}

/// Stable decreasing sort. `perm[i]` is the position input entry `i` moves to.
pub fn sort_descending<T: Ord + Clone>(x: &[T]) -> (Vec<T>, Vec<usize>) {
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&a, &b| x[b].cmp(&x[a]));
    let mut perm = vec![0; x.len()];
    for (pos, &i) in order.iter().enumerate() {
        perm[i] = pos;
    }
    (order.iter().map(|&i| x[i].clone()).collect(), perm)
}

/// `y ≺ x`: partial sums of `y↓` never exceed those of `x↓`, with equal totals.
///
/// Shorter vectors are padded with zeros.
pub fn majorizes<T: ExactField>(x: &[T], y: &[T]) -> Result<bool> {
    let len = x.len().max(y.len());
    let pad = |v: &[T]| {
        let mut p = v.to_vec();
        p.resize(len, T::zero());
        sort_descending(&p).0
    };
    let (xs, ys) = (pad(x), pad(y));
    let (mut sx, mut sy) = (T::zero(), T::zero());
    let mut ok = true;
    for (a, b) in xs.iter().zip(&ys) {
        sx = sx + a.clone();
        sy = sy + b.clone();
        if sy > sx {
            ok = false;
        }
    }
    if sx != sy {
        return Err(Error::Length(format!(
            "totals differ ({sx} vs {sy}); majorization is undefined"
        )));
    }
    Ok(ok)
}
