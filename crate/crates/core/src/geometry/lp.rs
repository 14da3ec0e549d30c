//! Dense two-phase simplex over an exact ordered field.
//!
//! Bland's rule throughout, so the method terminates on degenerate problems
//! without perturbation. Problem sizes here are tens of rows, which a dense
//! tableau handles comfortably.


use crate::scalar::ExactField;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Min,
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct LinearRow<T> {
    pub coeffs: Vec<T>,
    pub relation: Relation,
    pub rhs: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution<T> {
    pub status: LpStatus,
    pub optimum: Option<T>,
    pub witness: Option<Vec<T>>,
}

/// A linear program. Variables are nonnegative unless marked free.
#[derive(Debug, Clone)]
pub struct LinearProgram<T> {
    nvars: usize,
    objective: Vec<T>,
    sense: Sense,
    rows: Vec<LinearRow<T>>,
    free: Vec<bool>,
}

impl<T: ExactField> LinearProgram<T> {
    pub fn new(nvars: usize) -> Self {
        Self {
            nvars,
            objective: vec![T::zero(); nvars],
            sense: Sense::Min,
            rows: Vec::new(),
            free: vec![false; nvars],
        }
    }

    pub fn set_objective(&mut self, objective: Vec<T>, sense: Sense) -> &mut Self {
        assert_eq!(objective.len(), self.nvars);
        self.objective = objective;
        self.sense = sense;
        self
    }

    pub fn set_free(&mut self, j: usize) -> &mut Self {
        self.free[j] = true;
        self
    }

    pub fn set_all_free(&mut self) -> &mut Self {
        self.free.fill(true);
        self
    }

    pub fn add_row(&mut self, coeffs: Vec<T>, relation: Relation, rhs: T) -> &mut Self {
        assert_eq!(coeffs.len(), self.nvars);
        self.rows.push(LinearRow {
            coeffs,
            relation,
            rhs,
        });
        self
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn solve(&self) -> LpSolution<T> {
        lp_solve(
            &self.objective,
            &self.rows,
            self.sense,
            &self.free,
        )
    }
}

struct Tableau<T> {
    a: Vec<Vec<T>>,
    b: Vec<T>,
    basis: Vec<usize>,
}

impl<T: ExactField> Tableau<T> {
    fn pivot(&mut self, r: usize, c: usize, cost: &mut [T], z0: &mut T) {
        let p = self.a[r][c].clone();
        if !p.is_one() {
            for x in self.a[r].iter_mut() {
                *x = x.clone() / p.clone();
            }
            self.b[r] = self.b[r].clone() / p;
        }
        let pivot_row = self.a[r].clone();
        let pivot_b = self.b[r].clone();
        for i in 0..self.a.len() {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for (x, y) in self.a[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
            self.b[i] = self.b[i].clone() - f * pivot_b.clone();
        }
        if !cost[c].is_zero() {
            let f = cost[c].clone();
            for (x, y) in cost.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
            *z0 = z0.clone() + f * pivot_b;
        }
        self.basis[r] = c;
    }

    /// Minimize `z0 + cost·x` over the columns accepted by `allowed`.
    /// Returns false when unbounded.
    fn run(&mut self, cost: &mut [T], z0: &mut T, allowed: &dyn Fn(usize) -> bool) -> bool {
        loop {
            let Some(c) = (0..cost.len()).find(|&j| allowed(j) && cost[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, T)> = None;
            for i in 0..self.a.len() {
                if !self.a[i][c].is_positive() {
                    continue;
                }
                let ratio = self.b[i].clone() / self.a[i][c].clone();
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(r, c, cost, z0);
        }
    }

    fn priced(&self, c: &[T]) -> (Vec<T>, T) {
        let mut cost = c.to_vec();
        let mut z0 = T::zero();
        for (i, &bj) in self.basis.iter().enumerate() {
            let cb = c[bj].clone();
            if cb.is_zero() {
                continue;
            }
            for (x, y) in cost.iter_mut().zip(&self.a[i]) {
                *x = x.clone() - cb.clone() * y.clone();
            }
            z0 = z0 + cb * self.b[i].clone();
        }
        (cost, z0)
    }
}

/// Solve `min|max objective·x` subject to `rows`, with `x_j ≥ 0` unless `free[j]`.
pub fn lp_solve<T: ExactField>(
    objective: &[T],
    rows: &[LinearRow<T>],
    sense: Sense,
    free: &[bool],
) -> LpSolution<T> {
    let n = objective.len();
    // structural columns: one per variable plus a negative part for free ones
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut ncols = 0;
    for &is_free in free.iter().take(n) {
        let pos = ncols;
        ncols += 1;
        let neg = if is_free {
            ncols += 1;
            Some(pos + 1)
        } else {
            None
        };
        col_of.push((pos, neg));
    }
    let nstruct = ncols;

    // normalize rows to nonnegative rhs
    let norm: Vec<(Vec<T>, Relation, T)> = rows
        .iter()
        .map(|row| {
            let mut coeffs = vec![T::zero(); nstruct];
            for (j, x) in row.coeffs.iter().enumerate() {
                let (p, q) = col_of[j];
                coeffs[p] = x.clone();
                if let Some(q) = q {
                    coeffs[q] = -x.clone();
                }
            }
            if row.rhs.is_negative() {
                let rel = match row.relation {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (coeffs.into_iter().map(|x| -x).collect(), rel, -row.rhs.clone())
            } else {
                (coeffs, row.relation, row.rhs.clone())
            }
        })
        .collect();

    let nslack = norm.iter().filter(|r| r.1 != Relation::Eq).count();
    let nart = norm.iter().filter(|r| r.1 != Relation::Le).count();
    let total = nstruct + nslack + nart;
    let first_art = nstruct + nslack;

    let m = norm.len();
    let mut t = Tableau {
        a: Vec::with_capacity(m),
        b: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
    };
    let (mut s, mut art) = (nstruct, first_art);
    for (coeffs, rel, rhs) in norm {
        let mut row = coeffs;
        row.resize(total, T::zero());
        match rel {
            Relation::Le => {
                row[s] = T::one();
                t.basis.push(s);
                s += 1;
            }
            Relation::Ge => {
                row[s] = -T::one();
                s += 1;
                row[art] = T::one();
                t.basis.push(art);
                art += 1;
            }
            Relation::Eq => {
                row[art] = T::one();
                t.basis.push(art);
                art += 1;
            }
        }
        t.a.push(row);
        t.b.push(rhs);
    }

    if nart > 0 {
        let mut c1 = vec![T::zero(); total];
        c1[first_art..].fill(T::one());
        let (mut cost, mut z0) = t.priced(&c1);
        t.run(&mut cost, &mut z0, &|_| true);
        if z0.is_positive() {
            return LpSolution {
                status: LpStatus::Infeasible,
                optimum: None,
                witness: None,
            };
        }
        // drive remaining (zero-level) artificials out of the basis
        let mut i = 0;
        while i < t.a.len() {
            if t.basis[i] >= first_art {
                match (0..first_art).find(|&j| !t.a[i][j].is_zero()) {
                    Some(j) => {
                        let mut dummy = vec![T::zero(); total];
                        let mut dz = T::zero();
                        t.pivot(i, j, &mut dummy, &mut dz);
                    }
                    None => {
                        t.a.remove(i);
                        t.b.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut c2 = vec![T::zero(); total];
    for (j, x) in objective.iter().enumerate() {
        let x = if sense == Sense::Max { -x.clone() } else { x.clone() };
        let (p, q) = col_of[j];
        if let Some(q) = q {
            c2[q] = -x.clone();
        }
        c2[p] = x;
    }
    let (mut cost, mut z0) = t.priced(&c2);
    if !t.run(&mut cost, &mut z0, &|j| j < first_art) {
        return LpSolution {
            status: LpStatus::Unbounded,
            optimum: None,
            witness: None,
        };
    }
    let mut vals = vec![T::zero(); total];
    for (i, &bj) in t.basis.iter().enumerate() {
        vals[bj] = t.b[i].clone();
    }
    let witness: Vec<T> = col_of
        .iter()
        .map(|&(p, q)| match q {
            Some(q) => vals[p].clone() - vals[q].clone(),
            None => vals[p].clone(),
        })
        .collect();
    let optimum = if sense == Sense::Max { -z0 } else { z0 };
    LpSolution {
        status: LpStatus::Optimal,
        optimum: Some(optimum),
        witness: Some(witness),
    }
}
