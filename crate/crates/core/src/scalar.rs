//! Scalar traits shared by the generic kernels.
//!
//! The polyhedral kernels (simplex, rank, majorization) are written against
//! [`ExactField`], which is implemented for every `num_rational::Ratio<I>`
//! over a signed integer type. Floating point types deliberately do not
//! implement it: every comparison the kernels make is an equality test.
//! The eigenvalue routine is the one place that works over
//! `num_traits::Float` instead.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, Signed, Zero};

use crate::error::{Error, Result};

/// An ordered field with exact arithmetic.
pub trait ExactField: Clone + Ord + Num + Signed + fmt::Debug + fmt::Display {}

impl<I> ExactField for Ratio<I> where
    I: Clone + Integer + Signed + fmt::Debug + fmt::Display
{
}

/// A signed integer type usable for primitive integer vectors.
pub trait ExactInteger: Clone + Integer + Signed + fmt::Debug + fmt::Display {}

impl<I> ExactInteger for I where I: Clone + Integer + Signed + fmt::Debug + fmt::Display {}

/// Parse a rational of the form `p/q` or an integer `p`.
///
/// Decimal notation is rejected so that values stay exact end to end.
pub fn parse_rational(s: &str) -> Result<Ratio<BigInt>> {
    let s = s.trim();
    if s.contains('.') || s.contains('e') || s.contains('E') {
        return Err(Error::Parse(format!(
            "'{s}' is not an exact rational (use p/q, decimals are rejected)"
        )));
    }
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("'{s}' is not a rational p/q")))
    };
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse_int(q)?;
            if q.is_zero() {
                return Err(Error::Parse(format!("'{s}' has zero denominator")));
            }
            Ok(Ratio::new(parse_int(p)?, q))
        }
        None => Ok(Ratio::from_integer(parse_int(s)?)),
    }
}

/// Parse a comma separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Ratio<BigInt>>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// Format a rational as `p` or `p/q`.
pub fn format_rational<I: Clone + Integer + fmt::Display>(x: &Ratio<I>) -> String {
    if x.denom().is_one() {
        format!("{}", x.numer())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Greatest common divisor of a slice, always nonnegative; zero for an all-zero slice.
pub fn gcd_slice<I: ExactInteger>(v: &[I]) -> I {
    v.iter()
        .fold(I::zero(), |acc, x| acc.gcd(x))
        .abs()
}

/// Divide an integer vector by the gcd of its entries.
pub fn make_primitive<I: ExactInteger>(v: &mut [I]) {
    let g = gcd_slice(v);
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = x.clone() / g.clone();
        }
    }
}

/// Scale a rational vector to the primitive integer vector pointing the same way.
pub fn integerize<I: ExactInteger>(v: &[Ratio<I>]) -> Vec<I> {
    let l = v
        .iter()
        .fold(I::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<I> = v
        .iter()
        .map(|x| x.numer().clone() * (l.clone() / x.denom().clone()))
        .collect();
    make_primitive(&mut out);
    out
}

/// Rank of a matrix over an exact field, by Gaussian elimination.
pub fn rank<T: ExactField>(rows: &[Vec<T>]) -> usize {
    let mut m: Vec<Vec<T>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for i in (rank + 1)..m.len() {
            if m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone() / pivot.clone();
            for j in col..ncols {
                let t = m[rank][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - t;
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}
