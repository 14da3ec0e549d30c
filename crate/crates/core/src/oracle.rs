//! Independent checks: brute-force ensemble energies, representation audits,
//! seeded sampling, and a small Jacobi eigenvalue solver.

use num_traits::{Float, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::hrep::HRep;
use crate::geometry::polytope::{member_hrep, member_majorization};
use crate::poset::enumerate_configurations;
use crate::scalar::{format_rational, rank};
use crate::system::{QuantumSystem, Spectrum, WeightVector};
use crate::Rational;

/// `Σ_{i≤r} w_i E_i` over the `r` lowest configuration energies `⟨h, n⟩`,
/// each configuration counted with its multiplicity.
pub fn gok_energy_direct(h: &[Rational], sys: &QuantumSystem, w: &WeightVector) -> Result<Rational> {
    if h.len() != sys.d() {
        return Err(Error::Length(format!("h has {} entries, expected {}", h.len(), sys.d())));
    }
    let mut levels: Vec<Rational> = Vec::new();
    for (c, m) in enumerate_configurations(sys) {
        let e = c.energy(h);
        levels.extend(std::iter::repeat_n(e, m as usize));
    }
    if w.r() > levels.len() {
        return Err(Error::Range(format!(
            "r={} exceeds the sector dimension {}",
            w.r(),
            levels.len()
        )));
    }
    levels.sort();
    Ok(w.entries().iter().zip(&levels).map(|(wi, e)| wi * e).sum())
}

/// Dyadic points `u/2^16`, rescaled onto `{λ ≥ 0, Σλ = n}`.
pub fn sample_simplex(d: usize, n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| simplex_point(&mut rng, d, n)).collect()
}

fn simplex_point(rng: &mut ChaCha8Rng, d: usize, n: usize) -> Vec<Rational> {
    loop {
        let u: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=1i64 << 16)).collect();
        let s: i64 = u.iter().sum();
        if s > 0 {
            return u
                .iter()
                .map(|&x| Rational::new((x * n as i64).into(), s.into()))
                .collect();
        }
    }
}

/// Points of the simplex concentrated around the polytope: mixtures of a few
/// randomly permuted vertices, blended with a uniform point by a dyadic weight.
pub fn sample_near(vertices: &[Vec<Rational>], n: usize, count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = vertices[0].len();
    let blend = [
        Rational::one(),
        Rational::new(15.into(), 16.into()),
        Rational::new(31.into(), 32.into()),
        Rational::new(63.into(), 64.into()),
        Rational::new(7.into(), 8.into()),
    ];
    (0..count)
        .map(|_| {
            let k = rng.gen_range(1..=3usize);
            let raw: Vec<i64> = (0..k).map(|_| rng.gen_range(1..=256)).collect();
            let total: i64 = raw.iter().sum();
            let mut x = vec![Rational::zero(); d];
            for &q in &raw {
                let v = &vertices[rng.gen_range(0..vertices.len())];
                let mut perm: Vec<usize> = (0..d).collect();
                for i in (1..d).rev() {
                    perm.swap(i, rng.gen_range(0..=i));
                }
                let q = Rational::new(q.into(), total.into());
                for i in 0..d {
                    x[perm[i]] += &q * &v[i];
                }
            }
            let t = blend[rng.gen_range(0..blend.len())].clone();
            let y = simplex_point(&mut rng, d, n);
            x.iter()
                .zip(&y)
                .map(|(a, b)| &t * a + (Rational::one() - &t) * b)
                .collect()
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    /// `(row index, vertex)` pairs where a vertex breaks a row.
    pub violations: Vec<(usize, Vec<String>)>,
    /// `(row index, affine rank)` for rows whose tight set is too small.
    pub rank_deficient: Vec<(usize, usize)>,
    /// Rows tight on no vertex.
    pub untouched: Vec<usize>,
    /// Points where the two membership tests disagree: `(λ, hrep, majorization)`.
    pub disagreements: Vec<(Vec<String>, bool, bool)>,
    pub samples: usize,
}

impl AuditReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
            && self.rank_deficient.is_empty()
            && self.untouched.is_empty()
            && self.disagreements.is_empty()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report is serializable")
    }
}

/// Affine rank of the points on `⟨a, x⟩ = b` among all permutations of the
/// (sorted) vertices, without listing the permutations: each tight sorted
/// vertex contributes itself, and a block of equal `a` on which some tight
/// vertex is not constant contributes its sum-zero subspace.
pub fn tight_affine_rank(a: &[i64], b: &Rational, sorted_vertices: &[Vec<Rational>]) -> usize {
    let tight: Vec<&Vec<Rational>> = sorted_vertices
        .iter()
        .filter(|v| {
            let s: Rational = a.iter().zip(v.iter()).map(|(&x, y)| y * Rational::from_integer(x.into())).sum();
            s == *b
        })
        .collect();
    let Some(base) = tight.first() else {
        return 0;
    };
    let d = a.len();
    let mut rows: Vec<Vec<Rational>> = tight[1..]
        .iter()
        .map(|v| v.iter().zip(base.iter()).map(|(x, y)| x - y).collect())
        .collect();
    let mut start = 0;
    while start < d {
        let mut end = start;
        while end + 1 < d && a[end + 1] == a[start] {
            end += 1;
        }
        // a block holding two different values permutes onto its whole sum-zero subspace
        if tight.iter().any(|v| v[start..=end].iter().any(|x| *x != v[start])) {
            for i in start..end {
                let mut e = vec![Rational::zero(); d];
                e[i] = Rational::one();
                e[i + 1] = -Rational::one();
                rows.push(e);
            }
        }
        start = end + 1;
    }
    rank(&rows)
}

/// (a) vertices satisfy every row, (b) every row is tight on a set of affine
/// rank `d − 2`, (c) `sample_count` seeded points get the same verdict from
/// the row test and the majorization LP.
pub fn audit_hrep(vertices: &[Vec<Rational>], hrep: &HRep, sample_count: usize, seed: u64) -> AuditReport {
    let mut report = AuditReport {
        samples: sample_count,
        ..AuditReport::default()
    };
    let sorted: Vec<Vec<Rational>> = vertices.iter().map(|v| Spectrum::new(v.clone()).sorted()).collect();
    for (i, row) in hrep.rows.iter().enumerate() {
        for v in &sorted {
            if row.lhs(v) > row.value {
                report.violations.push((i, v.iter().map(format_rational).collect()));
            }
        }
    }
    let full_dim = sorted.iter().any(|v| v.windows(2).any(|p| p[0] != p[1]));
    if full_dim && hrep.d >= 2 {
        for (i, row) in hrep.rows.iter().enumerate() {
            let rk = tight_affine_rank(&row.a, &row.value, &sorted);
            let any_tight = sorted.iter().any(|v| row.lhs(v) == row.value);
            if !any_tight {
                report.untouched.push(i);
            } else if rk < hrep.d - 2 {
                report.rank_deficient.push((i, rk));
            }
        }
    }
    let half = sample_count / 2;
    let mut points = sample_simplex(hrep.d, hrep.n, sample_count - half, seed);
    points.extend(sample_near(&sorted, hrep.n, half, seed.wrapping_add(0x9e37_79b9)));
    for x in points {
        let s = Spectrum::new(x.clone());
        let a = member_hrep(&s, hrep).map(|m| m.member);
        let b = member_majorization(&s, &sorted).map(|m| m.member);
        match (a, b) {
            (Ok(a), Ok(b)) if a == b => {}
            (a, b) => report.disagreements.push((
                x.iter().map(format_rational).collect(),
                a.unwrap_or(false),
                b.unwrap_or(false),
            )),
        }
    }
    report
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, nonincreasing.
///
/// Iterates until the off-diagonal Frobenius norm drops below `tol` (or below
/// machine precision relative to the matrix norm), for at most 100 sweeps.
pub fn symmetric_eigenvalues<T: Float>(g: &[Vec<T>], tol: T) -> Result<Vec<T>> {
    const SWEEPS: usize = 100;
    let n = g.len();
    if g.iter().any(|r| r.len() != n) {
        return Err(Error::Length("matrix is not square".into()));
    }
    for i in 0..n {
        for j in 0..i {
            if (g[i][j] - g[j][i]).abs() > tol {
                return Err(Error::NotHermitian(format!("entries ({i},{j}) and ({j},{i}) differ")));
            }
        }
    }
    let mut a: Vec<Vec<T>> = g.to_vec();
    // symmetrize so rotations act on an exactly symmetric matrix
    for i in 0..n {
        for j in 0..i {
            let m = (a[i][j] + a[j][i]) / (T::one() + T::one());
            a[i][j] = m;
            a[j][i] = m;
        }
    }
    let frob = a.iter().flatten().fold(T::zero(), |s, &x| s + x * x).sqrt();
    let floor = tol.max(T::epsilon() * frob);
    let off = |a: &Vec<Vec<T>>| -> T {
        let mut s = T::zero();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s = s + a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };
    let mut sweeps = 0;
    while off(&a) >= floor && off(&a) > T::zero() {
        if sweeps == SWEEPS {
            return Err(Error::NoConvergence(SWEEPS));
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                if a[p][q] == T::zero() {
                    continue;
                }
                let two = T::one() + T::one();
                let theta = (a[q][q] - a[p][p]) / (two * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let t = if theta == T::zero() { T::one() } else { t };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<T> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    Ok(ev)
}

/// A Hermitian matrix given as a real array or as real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HermitianMatrix {
    Real(Vec<Vec<f64>>),
    Complex { re: Vec<Vec<f64>>, im: Vec<Vec<f64>> },
}

impl HermitianMatrix {
    pub fn dim(&self) -> usize {
        match self {
            Self::Real(a) | Self::Complex { re: a, .. } => a.len(),
        }
    }

    pub fn diagonal(entries: &[f64]) -> Self {
        let n = entries.len();
        Self::Real(
            (0..n)
                .map(|i| (0..n).map(|j| if i == j { entries[i] } else { 0.0 }).collect())
                .collect(),
        )
    }
}

/// Eigenvalues of a Hermitian matrix, nonincreasing. The complex case uses
/// the real embedding `[[A, −B], [B, A]]`, whose spectrum doubles each eigenvalue.
pub fn hermitian_eigenvalues(g: &HermitianMatrix, tol: f64) -> Result<Vec<f64>> {
    match g {
        HermitianMatrix::Real(a) => symmetric_eigenvalues(a, tol),
        HermitianMatrix::Complex { re, im } => {
            let n = re.len();
            if im.len() != n || im.iter().chain(re.iter()).any(|r| r.len() != n) {
                return Err(Error::Length("real and imaginary parts must be square and equal-sized".into()));
            }
            for i in 0..n {
                for j in 0..=i {
                    if (im[i][j] + im[j][i]).abs() > tol {
                        return Err(Error::NotHermitian(format!(
                            "imaginary part is not antisymmetric at ({i},{j})"
                        )));
                    }
                }
            }
            let big: Vec<Vec<f64>> = (0..2 * n)
                .map(|i| {
                    (0..2 * n)
                        .map(|j| match (i < n, j < n) {
                            (true, true) => re[i][j],
                            (true, false) => -im[i][j - n],
                            (false, true) => im[i - n][j],
                            (false, false) => re[i - n][j - n],
                        })
                        .collect()
                })
                .collect();
            let ev = symmetric_eigenvalues(&big, tol)?;
            Ok(ev.into_iter().step_by(2).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn sys(n: usize, two_s: usize, d: usize) -> QuantumSystem {
        QuantumSystem::new(n, two_s, d, None).unwrap()
    }

    #[test]
    fn tight_rank_counts_whole_blocks() {
        // λ1 = 2 on the orbit of (2,1,1,0): (2,1,1,0), (2,1,0,1), (2,0,1,1)
        let v = vec![vec![q(2), q(1), q(1), q(0)]];
        assert_eq!(tight_affine_rank(&[1, 0, 0, 0], &q(2), &v), 2);
        assert_eq!(tight_affine_rank(&[1, 1, 1, 0], &q(4), &v), 2);
        assert_eq!(tight_affine_rank(&[1, 1, 0, 0], &q(4), &v), 0);
    }

    #[test]
    fn ground_energy_of_four_electron_triplet() {
        let h = [q(0), q(1), q(2), q(3)];
        assert_eq!(gok_energy_direct(&h, &sys(4, 2, 4), &WeightVector::pure()).unwrap(), q(3));
    }

    #[test]
    fn constant_hamiltonian_gives_c_times_n() {
        let h = [q(5), q(5), q(5), q(5)];
        let w = WeightVector::parse("1/2,1/3,1/6").unwrap();
        assert_eq!(gok_energy_direct(&h, &sys(4, 2, 4), &w).unwrap(), q(20));
    }

    #[test]
    fn full_spectrum_of_three_electrons_counts_the_doublet_twice() {
        // configurations (N=3, S=1/2, d=3) with energies under h = (0,1,2):
        // 112→1, 113→2, 122→2, 123→3 (×2), 133→4, 223→4, 233→5
        let h = [q(0), q(1), q(2)];
        let w = WeightVector::new((1..=8).rev().map(|k| Rational::new(k.into(), 36.into())).collect()).unwrap();
        let levels = [1, 2, 2, 3, 3, 4, 4, 5];
        let expected: Rational = (1..=8i64)
            .rev()
            .zip(levels)
            .map(|(k, e)| Rational::new((k * e).into(), 36.into()))
            .sum();
        assert_eq!(gok_energy_direct(&h, &sys(3, 1, 3), &w).unwrap(), expected);
    }

    #[test]
    fn too_many_weights_is_a_range_error() {
        let w = WeightVector::parse("1/2,1/2").unwrap();
        assert!(matches!(
            gok_energy_direct(&[q(0)], &sys(2, 0, 1), &w),
            Err(Error::Range(_))
        ));
    }

    #[test]
    fn jacobi_examples() {
        let id = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        assert_eq!(symmetric_eigenvalues(&id, 1e-12).unwrap(), vec![1.0, 1.0]);
        let ev = symmetric_eigenvalues(&[vec![1.0, 1.0], vec![1.0, 1.0]], 1e-12).unwrap();
        assert!((ev[0] - 2.0).abs() < 1e-12 && ev[1].abs() < 1e-12);
        let diag = HermitianMatrix::diagonal(&[0.0, 2.0, 1.0, 1.0]);
        assert_eq!(hermitian_eigenvalues(&diag, 1e-12).unwrap(), vec![2.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn jacobi_in_single_precision() {
        let ev = symmetric_eigenvalues(&[vec![2.0f32, 1.0], vec![1.0, 2.0]], 1e-6).unwrap();
        assert!((ev[0] - 3.0).abs() < 1e-5 && (ev[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn complex_hermitian_via_embedding() {
        // [[1, -i], [i, 1]] has eigenvalues 2 and 0
        let g = HermitianMatrix::Complex {
            re: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
            im: vec![vec![0.0, -1.0], vec![1.0, 0.0]],
        };
        let ev = hermitian_eigenvalues(&g, 1e-12).unwrap();
        assert!((ev[0] - 2.0).abs() < 1e-12 && ev[1].abs() < 1e-12);
    }

    #[test]
    fn asymmetric_input_rejected() {
        assert!(matches!(
            symmetric_eigenvalues(&[vec![1.0, 0.5], vec![0.0, 1.0]], 1e-9),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn sampling_is_deterministic_and_normalized() {
        let a = sample_simplex(4, 4, 5, 7);
        assert_eq!(a, sample_simplex(4, 4, 5, 7));
        for x in a {
            assert_eq!(x.iter().sum::<Rational>(), q(4));
        }
    }
}
