//! The polytope `Σ_{N,S}(w)` in paired vertex and hyperplane form, and the
//! queries answered on it.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::fan::{facet_inequalities, fundamental_normal_cones};
use crate::geometry::hrep::{sorted_domain, HRep, LinearConstraint};
use crate::geometry::lp::{LinearProgram, LpStatus, Relation, Sense};
use crate::lineups::{generating_vertices, GeneratingVertex};
use crate::oracle::{hermitian_eigenvalues, HermitianMatrix};
use crate::system::{sort_descending, QuantumSystem, Spectrum, WeightVector};
use crate::Rational;

#[derive(Debug, Clone)]
pub struct Polytope {
    system: QuantumSystem,
    w: WeightVector,
    vertices: Vec<GeneratingVertex>,
    hrep: HRep,
}

impl Polytope {
    pub fn from_parts(
        system: QuantumSystem,
        w: WeightVector,
        vertices: Vec<GeneratingVertex>,
        hrep: HRep,
    ) -> Self {
        Self {
            system,
            w,
            vertices,
            hrep,
        }
    }

    pub fn system(&self) -> &QuantumSystem {
        &self.system
    }

    pub fn w(&self) -> &WeightVector {
        &self.w
    }

    /// Generating vertices, one per symbolically distinct lineup vertex.
    pub fn vertices(&self) -> &[GeneratingVertex] {
        &self.vertices
    }

    pub fn hrep(&self) -> &HRep {
        &self.hrep
    }

    /// Evaluated generating vertices with numeric duplicates removed.
    pub fn distinct_vertex_values(&self) -> Vec<Vec<Rational>> {
        distinct_values(&self.vertices)
    }

    /// Every distinct permutation of every generating vertex.
    pub fn permuted_vertices(&self) -> Vec<Vec<Rational>> {
        let mut out: Vec<Vec<Rational>> = self
            .distinct_vertex_values()
            .iter()
            .flat_map(|v| distinct_permutations(v))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn distinct_values(vertices: &[GeneratingVertex]) -> Vec<Vec<Rational>> {
    let mut out: Vec<Vec<Rational>> = Vec::new();
    for v in vertices {
        if !out.iter().any(|u| u.as_slice() == v.values()) {
            out.push(v.values().to_vec());
        }
    }
    out
}

/// All distinct rearrangements of `v`, in lexicographically decreasing order.
pub fn distinct_permutations(v: &[Rational]) -> Vec<Vec<Rational>> {
    let mut cur: Vec<Rational> = v.to_vec();
    cur.sort_by(|a, b| b.cmp(a));
    let mut out = vec![cur.clone()];
    // previous permutation in lexicographic order, starting from the largest
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] > cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] < cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

/// Vertex representation from the lineups, then the minimal H-representation
/// from the normal fan.
pub fn build_polytope(sys: &QuantumSystem, w: &WeightVector) -> Result<Polytope> {
    let vertices = generating_vertices(sys, w)?;
    let distinct = distinct_values(&vertices);
    let cones = fundamental_normal_cones(&distinct)?;
    let hrep = facet_inequalities(&vertices, &cones, sys.n(), w)?;
    Ok(Polytope {
        system: *sys,
        w: w.clone(),
        vertices,
        hrep,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub violated: Vec<LinearConstraint>,
}

fn check_total(entries: &[Rational], n: usize, d: usize) -> Result<()> {
    if entries.len() != d {
        return Err(Error::Length(format!("expected {d} entries, got {}", entries.len())));
    }
    let total: Rational = entries.iter().sum();
    if total != Rational::from_integer(n.into()) {
        return Err(Error::Normalization(format!(
            "entries sum to {}, expected {n}",
            crate::scalar::format_rational(&total)
        )));
    }
    Ok(())
}

/// Sort `λ` and test every row.
pub fn member_hrep(lambda: &Spectrum, h: &HRep) -> Result<Membership> {
    check_total(lambda.entries(), h.n, h.d)?;
    let sorted = lambda.sorted();
    let violated: Vec<LinearConstraint> = h
        .violations(&sorted)
        .into_iter()
        .map(|i| h.rows[i].clone())
        .collect();
    Ok(Membership {
        member: violated.is_empty(),
        violated,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixtureWitness {
    pub member: bool,
    /// Mixture weights over the vertices, when a member.
    pub mixture: Option<Vec<Rational>>,
}

/// `λ ≺ Σ q_i v_i` for some probability vector `q`, decided by LP.
///
/// Mixtures of nonincreasing vectors are nonincreasing, so partial sums of
/// the mixture are the mixture of partial sums.
pub fn member_majorization(lambda: &Spectrum, vertices: &[Vec<Rational>]) -> Result<MixtureWitness> {
    let Some(first) = vertices.first() else {
        return Err(Error::DegenerateInput("no vertices".into()));
    };
    let d = first.len();
    let total: Rational = first.iter().sum();
    let n = total
        .to_integer()
        .try_into()
        .map_err(|_| Error::Normalization("vertex total is not a small integer".into()))?;
    if !total.is_integer() {
        return Err(Error::Normalization("vertex total is not an integer".into()));
    }
    check_total(lambda.entries(), n, d)?;
    let sorted = lambda.sorted();
    let m = vertices.len();
    let mut lp = LinearProgram::<Rational>::new(m);
    lp.add_row(vec![Rational::one(); m], Relation::Eq, Rational::one());
    let prefix = |v: &[Rational]| -> Vec<Rational> {
        v.iter()
            .scan(Rational::zero(), |acc, x| {
                *acc += x;
                Some(acc.clone())
            })
            .collect()
    };
    let target = prefix(&sorted);
    let sums: Vec<Vec<Rational>> = vertices.iter().map(|v| prefix(v)).collect();
    for k in 0..d.saturating_sub(1) {
        lp.add_row(
            sums.iter().map(|s| s[k].clone()).collect(),
            Relation::Ge,
            target[k].clone(),
        );
    }
    let sol = lp.solve();
    Ok(match sol.status {
        LpStatus::Optimal => MixtureWitness {
            member: true,
            mixture: sol.witness,
        },
        _ => MixtureWitness {
            member: false,
            mixture: None,
        },
    })
}

/// `min ⟨h, λ⟩` over the polytope, computed twice: by pairing ascending `h`
/// with each descending vertex, and by LP over the H-representation.
pub fn minimize_linear(h: &[Rational], p: &Polytope) -> Result<(Rational, Vec<Rational>)> {
    let d = p.system.d();
    if h.len() != d {
        return Err(Error::Length(format!("h has {} entries, expected {d}", h.len())));
    }
    // indices of h in ascending order
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| h[a].cmp(&h[b]).then(a.cmp(&b)));
    let ascending: Vec<Rational> = order.iter().map(|&i| h[i].clone()).collect();

    let mut best: Option<(Rational, Vec<Rational>)> = None;
    for v in p.distinct_vertex_values() {
        let e: Rational = ascending.iter().zip(&v).map(|(a, b)| a * b).sum();
        if best.as_ref().is_none_or(|(b, _)| e < *b) {
            let mut arg = vec![Rational::zero(); d];
            for (pos, &i) in order.iter().enumerate() {
                arg[i] = v[pos].clone();
            }
            best = Some((e, arg));
        }
    }
    let (opt, arg) = best.ok_or_else(|| Error::DegenerateInput("no vertices".into()))?;

    let mut lp = LinearProgram::<Rational>::new(d);
    sorted_domain(&mut lp, d, p.system.n());
    for r in &p.hrep.rows {
        lp.add_row(
            r.a.iter().map(|&x| Rational::from_integer(x.into())).collect(),
            Relation::Le,
            r.value.clone(),
        );
    }
    lp.set_objective(ascending, Sense::Min);
    let sol = lp.solve();
    match (sol.status, sol.optimum) {
        (LpStatus::Optimal, Some(x)) if x == opt => Ok((opt, arg)),
        (status, x) => Err(Error::Invariant(format!(
            "vertex minimum {} but LP gives {status:?} {}",
            crate::scalar::format_rational(&opt),
            x.map(|x| crate::scalar::format_rational(&x)).unwrap_or_default()
        ))),
    }
}

/// Whether a site-occupation vector lies in the density domain of the
/// polytope, i.e. is majorized by some point of it.
pub fn density_domain_check(rho: &[Rational], sys: &QuantumSystem, w: &WeightVector) -> Result<bool> {
    if rho.iter().any(|x| x.is_negative()) {
        return Err(Error::Range("density entries must be nonnegative".into()));
    }
    check_total(rho, sys.n(), sys.d())?;
    let p = build_polytope(sys, w)?;
    Ok(member_majorization(&Spectrum::new(rho.to_vec()), &p.distinct_vertex_values())?.member)
}

/// Necessary condition on a supplied orbital density matrix: its spectrum,
/// computed in floating point and snapped to exact rationals, satisfies every
/// row with the bound relaxed by `tol·‖a‖₁`.
pub fn contraction_check(
    g: &HermitianMatrix,
    sys: &QuantumSystem,
    w: &WeightVector,
    tol: &Rational,
) -> Result<bool> {
    let p = build_polytope(sys, w)?;
    contraction_check_in(g, &p, tol)
}

/// [`contraction_check`] against an already built polytope.
pub fn contraction_check_in(g: &HermitianMatrix, p: &Polytope, tol: &Rational) -> Result<bool> {
    let sys = p.system();
    if g.dim() != sys.d() {
        return Err(Error::Length(format!(
            "matrix is {0}x{0}, expected d={1}",
            g.dim(),
            sys.d()
        )));
    }
    let ftol = num_traits::ToPrimitive::to_f64(tol).unwrap_or(0.0);
    let eig = hermitian_eigenvalues(g, ftol)?;
    let trace: f64 = eig.iter().sum();
    if (trace - sys.n() as f64).abs() > ftol.max(f64::EPSILON) * sys.d() as f64 {
        return Err(Error::Trace(format!("trace {trace} differs from N={}", sys.n())));
    }
    let mut exact: Vec<Rational> = eig
        .iter()
        .map(|&x| Rational::from_float(x).unwrap_or_else(Rational::zero))
        .collect();
    let total: Rational = exact.iter().sum();
    let shift = (Rational::from_integer(sys.n().into()) - total) / Rational::from_integer(sys.d().into());
    for x in exact.iter_mut() {
        *x += &shift;
    }
    let (sorted, _) = sort_descending(&exact);
    Ok(p.hrep().rows.iter().all(|r| {
        let norm: i64 = r.a.iter().map(|x| x.abs()).sum();
        r.lhs(&sorted) <= &r.value + tol * Rational::from_integer(norm.into())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn permutations_of_multiset() {
        let v = vec![q(2, 1), q(1, 1), q(1, 1), q(0, 1)];
        let ps = distinct_permutations(&v);
        assert_eq!(ps.len(), 12);
        assert_eq!(ps[0], v);
    }
}
