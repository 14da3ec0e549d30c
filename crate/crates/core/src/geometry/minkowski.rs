//! Minkowski sums of permutohedra given by their vertices.

use num_traits::{One, Zero};

use crate::geometry::lp::{LinearProgram, LpStatus, Relation};
use crate::Rational;

/// Vertices of the hypersimplex `{p ∈ [0,1]^d : Σp = k}`.
pub fn hypersimplex_vertices(d: usize, k: usize) -> Vec<Vec<Rational>> {
    let mut top = vec![Rational::zero(); d];
    top[..k.min(d)].fill(Rational::one());
    crate::geometry::polytope::distinct_permutations(&top)
}

/// True iff `x` is a convex combination of `points`.
pub fn in_convex_hull(x: &[Rational], points: &[Vec<Rational>]) -> bool {
    if points.is_empty() {
        return false;
    }
    let m = points.len();
    let mut lp = LinearProgram::<Rational>::new(m);
    lp.add_row(vec![Rational::one(); m], Relation::Eq, Rational::one());
    for (i, xi) in x.iter().enumerate() {
        lp.add_row(points.iter().map(|p| p[i].clone()).collect(), Relation::Eq, xi.clone());
    }
    lp.solve().status == LpStatus::Optimal
}

/// Extreme points of `conv(P) + conv(Q)`, sorted.
pub fn minkowski_vertices(p: &[Vec<Rational>], q: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut sums: Vec<Vec<Rational>> = p
        .iter()
        .flat_map(|a| q.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
        .collect();
    sums.sort();
    sums.dedup();
    (0..sums.len())
        .filter(|&i| {
            let others: Vec<Vec<Rational>> = sums
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, s)| s.clone())
                .collect();
            !in_convex_hull(&sums[i], &others)
        })
        .map(|i| sums[i].clone())
        .collect()
}
