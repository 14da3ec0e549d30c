//! Polyhedral cones `{η : ⟨a, η⟩ ≥ 0}` and extreme-ray extraction by the
//! double description method.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{make_primitive, ExactInteger};
use crate::Integer;

/// Inequalities `⟨a, η⟩ ≥ 0` together with directions quotiented out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub inequalities: Vec<Vec<Integer>>,
    pub lineality: Vec<Vec<Integer>>,
}

impl Cone {
    /// A cone in `R^d` with the all-ones direction as lineality.
    pub fn modulo_ones(inequalities: Vec<Vec<Integer>>, d: usize) -> Self {
        Self {
            inequalities,
            lineality: vec![vec![Integer::from(1); d]],
        }
    }

    /// The fundamental chamber `η₁ ≥ η₂ ≥ … ≥ η_d` modulo `𝟙`.
    pub fn chamber(d: usize) -> Self {
        Self::modulo_ones(chamber_inequalities(d), d)
    }
}

pub fn chamber_inequalities(d: usize) -> Vec<Vec<Integer>> {
    (0..d.saturating_sub(1))
        .map(|k| {
            let mut a = vec![Integer::zero(); d];
            a[k] = Integer::from(1);
            a[k + 1] = Integer::from(-1);
            a
        })
        .collect()
}

/// An extreme ray, reduced to the section where the lineality coordinates vanish.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ray {
    pub direction: Vec<Integer>,
}

impl Ray {
    /// Coefficients over `f_k = e₁ + … + e_k`, `k = 1..d−1`, for a ray in
    /// the chamber section `η_d = 0`.
    pub fn f_expansion(&self) -> Vec<Integer> {
        self.direction
            .windows(2)
            .map(|p| &p[0] - &p[1])
            .collect()
    }
}

fn dot<I: ExactInteger>(a: &[I], b: &[I]) -> I {
    a.iter()
        .zip(b)
        .fold(I::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `α·x − β·y`, made primitive.
fn combine<I: ExactInteger>(alpha: &I, x: &[I], beta: &I, y: &[I]) -> Vec<I> {
    let mut v: Vec<I> = x
        .iter()
        .zip(y)
        .map(|(a, b)| alpha.clone() * a.clone() - beta.clone() * b.clone())
        .collect();
    make_primitive(&mut v);
    v
}

/// Output of the double description method: a lineality basis and the
/// extreme rays of the pointed part.
#[derive(Debug, Clone)]
pub struct DoubleDescription<I> {
    pub lineality: Vec<Vec<I>>,
    pub rays: Vec<Vec<I>>,
}

/// Double description for `{x ∈ R^n : ⟨a, x⟩ ≥ 0 for all a}`.
///
/// Starts from the whole space (lineality = standard basis) and intersects one
/// half-space at a time. Adjacency uses the combinatorial test: two rays are
/// adjacent iff no third ray is tight on every processed inequality they share.
pub fn double_description<I: ExactInteger>(ineqs: &[Vec<I>], n: usize) -> DoubleDescription<I> {
    let mut lineality: Vec<Vec<I>> = (0..n)
        .map(|i| {
            let mut e = vec![I::zero(); n];
            e[i] = I::one();
            e
        })
        .collect();
    let mut rays: Vec<Vec<I>> = Vec::new();
    // zero sets as bitsets over processed inequality indices
    let mut zeros: Vec<Vec<bool>> = Vec::new();
    let mut processed: Vec<usize> = Vec::new();
    let mut remaining: Vec<usize> = (0..ineqs.len()).collect();

    while !remaining.is_empty() {
        // most zeros against current rays first
        let pick = remaining
            .iter()
            .enumerate()
            .max_by_key(|&(pos, &k)| {
                let z = rays.iter().filter(|r| dot(&ineqs[k], r).is_zero()).count();
                (z, usize::MAX - pos)
            })
            .map(|(pos, _)| pos)
            .unwrap();
        let k = remaining.remove(pick);
        let a = &ineqs[k];

        if let Some(p) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(p);
            let mut s = dot(a, &l0);
            if s.is_negative() {
                l0.iter_mut().for_each(|x| *x = -x.clone());
                s = -s;
            }
            for l in lineality.iter_mut() {
                let t = dot(a, l);
                if !t.is_zero() {
                    *l = combine(&s, l, &t, &l0);
                }
            }
            for r in rays.iter_mut() {
                let t = dot(a, r);
                if !t.is_zero() {
                    *r = combine(&s, r, &t, &l0);
                }
            }
            for z in zeros.iter_mut() {
                z.push(true);
            }
            make_primitive(&mut l0);
            // l0 was in the lineality, so it is tight on every earlier inequality
            let mut z0 = vec![true; processed.len()];
            z0.push(false);
            rays.push(l0);
            zeros.push(z0);
            processed.push(k);
            continue;
        }

        let vals: Vec<I> = rays.iter().map(|r| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut new_rays = Vec::new();
        let mut new_zeros = Vec::new();
        for &i in &pos {
            for &j in &neg {
                let common: Vec<bool> = zeros[i].iter().zip(&zeros[j]).map(|(x, y)| *x && *y).collect();
                let adjacent = (0..rays.len()).all(|m| {
                    m == i
                        || m == j
                        || common
                            .iter()
                            .zip(&zeros[m])
                            .any(|(c, zm)| *c && !*zm)
                });
                if !adjacent {
                    continue;
                }
                // vals[i] > 0 > vals[j]: vals[i]·r_j − vals[j]·r_i is tight on a
                let r = combine(&vals[i], &rays[j], &vals[j], &rays[i]);
                let mut z = common;
                z.push(true);
                new_rays.push(r);
                new_zeros.push(z);
            }
        }
        let mut kept_rays = Vec::new();
        let mut kept_zeros = Vec::new();
        for i in 0..rays.len() {
            if vals[i].is_negative() {
                continue;
            }
            let mut z = zeros[i].clone();
            z.push(vals[i].is_zero());
            kept_rays.push(rays[i].clone());
            kept_zeros.push(z);
        }
        kept_rays.extend(new_rays);
        kept_zeros.extend(new_zeros);
        rays = kept_rays;
        zeros = kept_zeros;
        processed.push(k);
    }
    DoubleDescription { lineality, rays }
}

/// Reduce `v` modulo the span of `basis` so that one chosen coordinate per
/// basis vector vanishes (the highest-index nonzero coordinate available).
fn section<I: ExactInteger>(basis: &[Vec<I>]) -> Vec<(usize, Vec<I>)> {
    let mut pivots: Vec<(usize, Vec<I>)> = Vec::new();
    for b in basis {
        let mut v = b.clone();
        for (p, u) in &pivots {
            if !v[*p].is_zero() {
                v = combine(&u[*p], &v, &v[*p], u);
            }
        }
        if let Some(p) = (0..v.len()).rev().find(|&i| !v[i].is_zero()) {
            pivots.push((p, v));
        }
    }
    pivots
}

fn reduce<I: ExactInteger>(v: &[I], pivots: &[(usize, Vec<I>)]) -> Vec<I> {
    let mut v = v.to_vec();
    for (p, u) in pivots {
        if !v[*p].is_zero() {
            let (mut a, mut b) = (u[*p].clone(), v[*p].clone());
            if a.is_negative() {
                a = -a;
                b = -b;
            }
            v = combine(&a, &v, &b, u);
        }
    }
    make_primitive(&mut v);
    v
}

/// Extreme rays of a cone modulo its declared lineality, sorted and deduplicated.
pub fn extreme_rays(c: &Cone) -> Result<Vec<Ray>> {
    let n = c
        .inequalities
        .first()
        .or(c.lineality.first())
        .map_or(0, |v| v.len());
    let dd = double_description(&c.inequalities, n);
    let declared = crate::scalar::rank(
        &c.lineality
            .iter()
            .map(|v| v.iter().cloned().map(crate::Rational::from_integer).collect())
            .collect::<Vec<Vec<crate::Rational>>>(),
    );
    if dd.lineality.len() > declared {
        return Err(Error::NotPointed(dd.lineality.len() - declared));
    }
    let pivots = section(&c.lineality);
    let mut rays: Vec<Ray> = dd
        .rays
        .iter()
        .map(|r| reduce(r, &pivots))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|direction| Ray { direction })
        .collect();
    rays.sort();
    rays.dedup();
    Ok(rays)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Integer> {
        xs.iter().map(|&x| Integer::from(x)).collect()
    }

    fn plain(ineqs: Vec<Vec<Integer>>) -> Cone {
        Cone {
            inequalities: ineqs,
            lineality: vec![],
        }
    }

    #[test]
    fn positive_quadrant() {
        let rays = extreme_rays(&plain(vec![v(&[1, 0]), v(&[0, 1])])).unwrap();
        let dirs: Vec<Vec<Integer>> = rays.into_iter().map(|r| r.direction).collect();
        assert_eq!(dirs, vec![v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn wedge_between_axis_and_diagonal() {
        // x ≥ y ≥ 0
        let rays = extreme_rays(&plain(vec![v(&[1, -1]), v(&[0, 1])])).unwrap();
        let dirs: Vec<Vec<Integer>> = rays.into_iter().map(|r| r.direction).collect();
        assert_eq!(dirs, vec![v(&[1, 0]), v(&[1, 1])]);
    }

    #[test]
    fn chamber_modulo_ones() {
        let rays = extreme_rays(&Cone::chamber(3)).unwrap();
        let dirs: Vec<Vec<Integer>> = rays.iter().map(|r| r.direction.clone()).collect();
        assert_eq!(dirs, vec![v(&[1, 0, 0]), v(&[1, 1, 0])]);
        assert_eq!(rays[1].f_expansion(), v(&[0, 1]));
    }

    #[test]
    fn half_plane_is_not_pointed() {
        assert!(matches!(
            extreme_rays(&plain(vec![v(&[1, 0])])),
            Err(Error::NotPointed(1))
        ));
    }

    #[test]
    fn square_pyramid_has_four_rays() {
        // cone over the square |x| ≤ z, |y| ≤ z
        let c = plain(vec![
            v(&[1, 0, 1]),
            v(&[-1, 0, 1]),
            v(&[0, 1, 1]),
            v(&[0, -1, 1]),
        ]);
        let rays = extreme_rays(&c).unwrap();
        assert_eq!(rays.len(), 4);
        for r in &rays {
            assert_eq!(r.direction[2], Integer::from(1));
        }
    }

    #[test]
    fn redundant_inequalities_do_not_add_rays() {
        let c = plain(vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[2, 1])]);
        assert_eq!(extreme_rays(&c).unwrap().len(), 2);
    }

    #[test]
    fn chamber_in_five_dimensions_is_simplicial() {
        let rays = extreme_rays(&Cone::chamber(5)).unwrap();
        assert_eq!(rays.len(), 4);
        for r in rays {
            let f = r.f_expansion();
            assert_eq!(f.iter().filter(|x| !x.is_zero()).count(), 1);
        }
    }
}
