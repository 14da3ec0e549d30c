//! Lineups (sequences of the `r` lowest configurations for some ordered
//! one-body Hamiltonian) and the generating vertices they induce.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::affine::AffineForm;
use crate::error::{Error, Result};
use crate::geometry::lp::{LinearProgram, LpStatus, Relation, Sense};
use crate::poset::{build_poset, enumerate_configurations, ConfigurationPoset, Configuration};
use crate::scalar::integerize;
use crate::system::{QuantumSystem, WeightVector};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lineup {
    sequence: Vec<Configuration>,
    certificate: Vec<Rational>,
}

impl Lineup {
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// The `r` configurations in energy order; repeats are consecutive.
    pub fn sequence(&self) -> &[Configuration] {
        &self.sequence
    }

    /// A nondecreasing `h` with `h₁ = 0` realizing the lineup strictly.
    pub fn certificate(&self) -> &[Rational] {
        &self.certificate
    }

    /// Distinct configurations with their repeat counts, in order.
    pub fn blocks(&self) -> Vec<(&Configuration, usize)> {
        let mut out: Vec<(&Configuration, usize)> = Vec::new();
        for c in &self.sequence {
            match out.last_mut() {
                Some((last, k)) if *last == c => *k += 1,
                _ => out.push((c, 1)),
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "configurations": self.sequence.iter().map(|c| c.index_form()).collect::<Vec<_>>(),
            "certificate": self.certificate.iter().map(crate::scalar::format_rational).collect::<Vec<_>>(),
        })
    }
}

/// `v = Σ_J w_J n^(J)`, kept both symbolically and evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratingVertex {
    forms: Vec<AffineForm>,
    #[serde(skip)]
    values: Vec<Rational>,
}

impl GeneratingVertex {
    pub fn new(forms: Vec<AffineForm>, w: &WeightVector) -> Self {
        let values = forms.iter().map(|f| f.eval(w)).collect();
        Self { forms, values }
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn d(&self) -> usize {
        self.forms.len()
    }

    /// Re-evaluate at another weight vector of the same length.
    pub fn at(&self, w: &WeightVector) -> Self {
        Self::new(self.forms.clone(), w)
    }

    /// The vertex obtained by setting `w_r = 0`.
    pub fn drop_last_weight(&self, w: &WeightVector) -> Self {
        Self::new(self.forms.iter().map(|f| f.drop_last_weight()).collect(), w)
    }
}

fn rational(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

/// Exact LP for a lineup certificate.
///
/// `chain` lists the distinct members in energy order; `others` are the
/// configurations that must sit strictly above the last member. Variables are
/// the gaps `g_m = h_{m+1} − h_m ≥ 0` and a shared slack `ε ∈ [0, 1]`.
/// Returns `h` (integer, primitive, `h₁ = 0`) iff the optimal slack is positive.
pub fn separating_hamiltonian(
    chain: &[&Configuration],
    others: &[&Configuration],
) -> Option<Vec<Rational>> {
    let d = chain.first()?.d();
    let nv = d; // d − 1 gaps plus ε
    let eps = d - 1;
    let mut lp = LinearProgram::<Rational>::new(nv);
    let mut obj = vec![Rational::zero(); nv];
    obj[eps] = Rational::one();
    lp.set_objective(obj, Sense::Max);
    // ⟨h, hi − lo⟩ = Σ_m g_m (P_m(lo) − P_m(hi)) ≥ ε
    let mut separate = |lo: &Configuration, hi: &Configuration| {
        let (pl, ph) = (lo.prefix_sums(), hi.prefix_sums());
        let mut row: Vec<Rational> = (0..d - 1).map(|m| rational(ph[m] - pl[m])).collect();
        row.push(Rational::one());
        lp.add_row(row, Relation::Le, Rational::zero());
    };
    for pair in chain.windows(2) {
        separate(pair[0], pair[1]);
    }
    let last = chain.last()?;
    for x in others {
        separate(last, x);
    }
    let mut cap = vec![Rational::zero(); nv];
    cap[eps] = Rational::one();
    lp.add_row(cap, Relation::Le, Rational::one());
    let sol = lp.solve();
    if sol.status != LpStatus::Optimal || !sol.optimum.as_ref()?.is_positive() {
        return None;
    }
    let g = sol.witness?;
    let mut h = vec![Rational::zero(); d];
    for m in 0..d - 1 {
        h[m + 1] = &h[m] + &g[m];
    }
    Some(integerize(&h).into_iter().map(Rational::from_integer).collect())
}

/// Every configuration outside the poset must lie above at least `r + 1`
/// poset nodes for all ordered `h`; otherwise the truncation could hide a
/// member of some lineup.
fn check_depth(sys: &QuantumSystem, poset: &ConfigurationPoset, r: usize) -> Result<()> {
    let inside: HashSet<&Configuration> = poset.nodes().iter().map(|n| &n.configuration).collect();
    for (x, _) in enumerate_configurations(sys) {
        if inside.contains(&x) {
            continue;
        }
        let below = poset
            .nodes()
            .iter()
            .filter(|n| n.configuration.is_below(&x))
            .count();
        if below < r + 1 {
            return Err(Error::Depth {
                depth: poset.depth(),
                config: x.to_string(),
            });
        }
    }
    Ok(())
}

/// All lineups of length `r`, using the poset truncated at depth `r + 1`.
pub fn enumerate_lineups(sys: &QuantumSystem, r: usize) -> Result<Vec<Lineup>> {
    enumerate_lineups_at_depth(sys, r, r + 1)
}

pub fn enumerate_lineups_at_depth(
    sys: &QuantumSystem,
    r: usize,
    depth: usize,
) -> Result<Vec<Lineup>> {
    if r == 0 {
        return Err(Error::Range("lineup length must be positive".into()));
    }
    let dim = crate::poset::hilbert_dim(sys);
    if r as u64 > dim {
        return Err(Error::Range(format!(
            "r={r} exceeds the sector dimension {dim}"
        )));
    }
    let poset = build_poset(sys, depth)?;
    check_depth(sys, &poset, r)?;
    let nodes = poset.nodes();
    let below: Vec<Vec<usize>> = (0..nodes.len())
        .map(|c| {
            (0..nodes.len())
                .filter(|&y| y != c && nodes[y].configuration.is_below(&nodes[c].configuration))
                .collect()
        })
        .collect();

    struct Search<'a> {
        poset: &'a ConfigurationPoset,
        below: Vec<Vec<usize>>,
        r: usize,
        out: Vec<Lineup>,
    }

    impl Search<'_> {
        fn certify(&self, chain: &[usize]) -> Option<Vec<Rational>> {
            let nodes = self.poset.nodes();
            let members: Vec<&Configuration> = chain.iter().map(|&i| &nodes[i].configuration).collect();
            let others: Vec<&Configuration> = (0..nodes.len())
                .filter(|i| !chain.contains(i))
                .map(|i| &nodes[i].configuration)
                .collect();
            separating_hamiltonian(&members, &others)
        }

        fn extend(&mut self, chain: &mut Vec<usize>, counts: &mut Vec<usize>, len: usize) {
            let nodes = self.poset.nodes();
            for c in 0..nodes.len() {
                if chain.contains(&c) || !self.below[c].iter().all(|y| chain.contains(y)) {
                    continue;
                }
                chain.push(c);
                if let Some(h) = self.certify(chain) {
                    let m = nodes[c].multiplicity as usize;
                    for t in 1..=m.min(self.r - len) {
                        counts.push(t);
                        if len + t == self.r {
                            let sequence = chain
                                .iter()
                                .zip(counts.iter())
                                .flat_map(|(&i, &k)| std::iter::repeat_n(nodes[i].configuration.clone(), k))
                                .collect();
                            self.out.push(Lineup {
                                sequence,
                                certificate: h.clone(),
                            });
                        } else if t == m {
                            self.extend(chain, counts, len + t);
                        }
                        counts.pop();
                    }
                }
                chain.pop();
            }
        }
    }

    let mut search = Search {
        poset: &poset,
        below,
        r,
        out: Vec::new(),
    };
    search.extend(&mut Vec::new(), &mut Vec::new(), 0);
    Ok(search.out)
}

/// `v = Σ_J w_J n^(J)` for a lineup whose length matches `w`.
pub fn generating_vertex(l: &Lineup, w: &WeightVector) -> Result<GeneratingVertex> {
    if l.len() != w.r() {
        return Err(Error::Length(format!(
            "lineup of length {} paired with {} weights",
            l.len(),
            w.r()
        )));
    }
    let d = l.sequence[0].d();
    let forms = (0..d)
        .map(|i| {
            let coeffs: Vec<i64> = l.sequence.iter().map(|c| c.occupation()[i] as i64).collect();
            AffineForm::from_weights(&coeffs)
        })
        .collect();
    Ok(GeneratingVertex::new(forms, w))
}

/// Generating vertices of all lineups of length `w.r()`, deduplicated symbolically.
pub fn generating_vertices(sys: &QuantumSystem, w: &WeightVector) -> Result<Vec<GeneratingVertex>> {
    let mut out: Vec<GeneratingVertex> = Vec::new();
    for l in enumerate_lineups(sys, w.r())? {
        let v = generating_vertex(&l, w)?;
        if !out.iter().any(|u| u.forms == v.forms) {
            out.push(v);
        }
    }
    Ok(out)
}
