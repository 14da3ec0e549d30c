//! Spin-compatible orbital configurations, their multiplicities, and the
//! excitation diagram generated by single-orbital promotions.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::system::QuantumSystem;
use crate::Rational;

/// An occupation vector `n ∈ {0,1,2}^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Configuration {
    occ: Vec<u8>,
}

impl Configuration {
    pub fn new(occ: Vec<u8>) -> Result<Self> {
        if let Some(x) = occ.iter().find(|&&x| x > 2) {
            return Err(Error::Range(format!(
                "orbital occupation {x} exceeds the Pauli bound 2"
            )));
        }
        Ok(Self { occ })
    }

    /// Build from the nondecreasing list of 1-based orbital labels.
    pub fn from_index_form(d: usize, labels: &[usize]) -> Result<Self> {
        let mut occ = vec![0u8; d];
        for &i in labels {
            if i == 0 || i > d {
                return Err(Error::Range(format!("orbital label {i} outside 1..={d}")));
            }
            occ[i - 1] += 1;
        }
        Self::new(occ)
    }

    pub fn occupation(&self) -> &[u8] {
        &self.occ
    }

    pub fn d(&self) -> usize {
        self.occ.len()
    }

    pub fn electrons(&self) -> usize {
        self.occ.iter().map(|&x| x as usize).sum()
    }

    /// Number of singly occupied orbitals.
    pub fn unpaired(&self) -> usize {
        self.occ.iter().filter(|&&x| x == 1).count()
    }

    /// Orbital labels (1-based), each repeated by its occupation.
    pub fn index_form(&self) -> Vec<usize> {
        self.occ
            .iter()
            .enumerate()
            .flat_map(|(i, &n)| std::iter::repeat_n(i + 1, n as usize))
            .collect()
    }

    /// Sum of the orbital labels.
    pub fn index_sum(&self) -> usize {
        self.occ
            .iter()
            .enumerate()
            .map(|(i, &n)| (i + 1) * n as usize)
            .sum()
    }

    /// `Σ_{i≤k} n_i` for `k = 1..d`.
    pub fn prefix_sums(&self) -> Vec<i64> {
        self.occ
            .iter()
            .scan(0i64, |acc, &x| {
                *acc += x as i64;
                Some(*acc)
            })
            .collect()
    }

    /// `⟨h, n⟩`.
    pub fn energy(&self, h: &[Rational]) -> Rational {
        self.occ
            .iter()
            .zip(h)
            .map(|(&n, hi)| hi * Rational::from_integer(n.into()))
            .sum()
    }

    /// True when `⟨h, self⟩ ≤ ⟨h, other⟩` for every nondecreasing `h`,
    /// i.e. every prefix sum of `self` is at least that of `other`.
    pub fn is_below(&self, other: &Configuration) -> bool {
        let (a, b) = (self.prefix_sums(), other.prefix_sums());
        a.last() == b.last() && a.iter().zip(&b).all(|(x, y)| x >= y)
    }

    pub fn occupation_rational(&self) -> Vec<Rational> {
        self.occ
            .iter()
            .map(|&x| Rational::from_integer(x.into()))
            .collect()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.index_form().iter().map(|i| i.to_string()).collect();
        write!(f, "({})", labels.join(","))
    }
}

fn binomial(n: usize, k: i64) -> u64 {
    if k < 0 || k as usize > n {
        return 0;
    }
    let k = (k as usize).min(n - k as usize);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i as u64 + 1))
}

/// Number of linearly independent spin-`S` states sharing this configuration.
///
/// `C(Nu, Nu/2 − S) − C(Nu, Nu/2 − S − 1)`, zero when `Nu − 2S` is negative or odd.
pub fn multiplicity(c: &Configuration, two_s: usize) -> u64 {
    let nu = c.unpaired();
    if nu < two_s || (nu - two_s) % 2 != 0 {
        return 0;
    }
    let k = ((nu - two_s) / 2) as i64;
    binomial(nu, k) - binomial(nu, k - 1)
}

/// The lowest configuration: `K` doubly occupied, `2S` singly occupied orbitals.
pub fn highest_weight_config(sys: &QuantumSystem) -> Result<Configuration> {
    let (k, j, d) = (sys.k(), sys.j(), sys.d());
    if j > d {
        return Err(Error::Range(format!("J={j} exceeds d={d}")));
    }
    let mut occ = vec![0u8; d];
    occ[..k].fill(2);
    occ[k..j].fill(1);
    Configuration::new(occ)
}

/// All spin-compatible configurations with their multiplicities, ordered
/// lexicographically by index form (the highest-weight configuration first).
pub fn enumerate_configurations(sys: &QuantumSystem) -> Vec<(Configuration, u64)> {
    fn rec(
        pos: usize,
        left: usize,
        occ: &mut Vec<u8>,
        two_s: usize,
        out: &mut Vec<(Configuration, u64)>,
    ) {
        let d = occ.len();
        if pos == d {
            if left == 0 {
                let c = Configuration { occ: occ.clone() };
                let m = multiplicity(&c, two_s);
                if m > 0 {
                    out.push((c, m));
                }
            }
            return;
        }
        if left > 2 * (d - pos) {
            return;
        }
        for x in (0..=2u8.min(left as u8)).rev() {
            occ[pos] = x;
            rec(pos + 1, left - x as usize, occ, two_s, out);
        }
        occ[pos] = 0;
    }
    let mut out = Vec::new();
    rec(0, sys.n(), &mut vec![0; sys.d()], sys.two_s(), &mut out);
    out
}

/// Dimension of the `(N, S, M)` sector: the multiplicity-weighted configuration count.
pub fn hilbert_dim(sys: &QuantumSystem) -> u64 {
    enumerate_configurations(sys).iter().map(|(_, m)| m).sum()
}

/// Which of the three size conditions hold for a given rank `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    /// `d − (N+2S)/2 ≥ r − 1`
    pub empty_orbitals: bool,
    /// `(N−2S)/2 ≥ r − 1`
    pub doubly_occupied: bool,
    /// `2S ≥ r − 1`
    pub unpaired: bool,
}

impl StabilityReport {
    pub fn holds(&self) -> bool {
        self.empty_orbitals && self.doubly_occupied && self.unpaired
    }

    pub fn describe(&self) -> String {
        let mut failed = Vec::new();
        if !self.empty_orbitals {
            failed.push("d-(N+2S)/2 >= r-1");
        }
        if !self.doubly_occupied {
            failed.push("(N-2S)/2 >= r-1");
        }
        if !self.unpaired {
            failed.push("2S >= r-1");
        }
        if failed.is_empty() {
            "all stability conditions hold".to_string()
        } else {
            format!("violated: {}", failed.join(", "))
        }
    }
}

pub fn stability_check(sys: &QuantumSystem, r: usize) -> StabilityReport {
    let need = r.saturating_sub(1);
    StabilityReport {
        empty_orbitals: sys.d() - sys.j() >= need,
        doubly_occupied: sys.k() >= need,
        unpaired: sys.two_s() >= need,
    }
}

/// Configurations reached by promoting one electron from orbital `j` to `j+1`,
/// keeping only spin-compatible results.
pub fn excitations(c: &Configuration, two_s: usize) -> Vec<Configuration> {
    let occ = c.occupation();
    (0..occ.len().saturating_sub(1))
        .filter(|&j| occ[j] >= 1 && occ[j + 1] <= 1)
        .map(|j| {
            let mut next = occ.to_vec();
            next[j] -= 1;
            next[j + 1] += 1;
            Configuration { occ: next }
        })
        .filter(|n| multiplicity(n, two_s) > 0)
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetNode {
    pub configuration: Configuration,
    pub multiplicity: u64,
}

/// Depth-bounded excitation diagram rooted at the highest-weight configuration.
///
/// Node 0 is the bottom. Nodes are sorted by index sum, then by index form.
#[derive(Debug, Clone)]
pub struct ConfigurationPoset {
    system: QuantumSystem,
    depth: usize,
    nodes: Vec<PosetNode>,
    edges: Vec<(usize, usize)>,
}

impl ConfigurationPoset {
    pub fn system(&self) -> &QuantumSystem {
        &self.system
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn nodes(&self) -> &[PosetNode] {
        &self.nodes
    }

    /// Generator edges `(from, to)`: single promotions `j → j+1`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn bottom(&self) -> &Configuration {
        &self.nodes[0].configuration
    }

    pub fn index_of(&self, c: &Configuration) -> Option<usize> {
        self.nodes.iter().position(|n| &n.configuration == c)
    }

    /// Index-sum order: `a` precedes `b` iff its label sum is strictly smaller.
    /// Distinct nodes with equal sums are incomparable.
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        self.nodes[a].configuration.index_sum() < self.nodes[b].configuration.index_sum()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "system": self.system,
            "depth": self.depth,
            "nodes": self.nodes.iter().map(|n| serde_json::json!({
                "occupation": n.configuration.occupation(),
                "index_form": n.configuration.index_form(),
                "multiplicity": n.multiplicity,
            })).collect::<Vec<_>>(),
            "edges": self.edges,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(
                s,
                "  n{i} [label=\"{} m={}\"];",
                n.configuration, n.multiplicity
            );
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  n{a} -> n{b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Breadth-first closure of [`excitations`] from the highest-weight
/// configuration, keeping every node whose index sum exceeds the bottom's by
/// at most `depth`.
pub fn build_poset(sys: &QuantumSystem, depth: usize) -> Result<ConfigurationPoset> {
    let bottom = highest_weight_config(sys)?;
    let limit = bottom.index_sum() + depth;
    let mut seen: HashMap<Configuration, ()> = HashMap::new();
    let mut queue = VecDeque::from([bottom.clone()]);
    let mut raw_edges = Vec::new();
    seen.insert(bottom, ());
    while let Some(c) = queue.pop_front() {
        for next in excitations(&c, sys.two_s()) {
            if next.index_sum() > limit {
                continue;
            }
            raw_edges.push((c.clone(), next.clone()));
            if seen.insert(next.clone(), ()).is_none() {
                queue.push_back(next);
            }
        }
    }
    let mut configs: Vec<Configuration> = seen.into_keys().collect();
    configs.sort_by_key(|c| (c.index_sum(), c.index_form()));
    let index: BTreeMap<&Configuration, usize> =
        configs.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut edges: Vec<(usize, usize)> = raw_edges
        .iter()
        .map(|(a, b)| (index[a], index[b]))
        .collect();
    edges.sort_unstable();
    edges.dedup();
    let nodes = configs
        .iter()
        .map(|c| PosetNode {
            configuration: c.clone(),
            multiplicity: multiplicity(c, sys.two_s()),
        })
        .collect();
    Ok(ConfigurationPoset {
        system: *sys,
        depth,
        nodes,
        edges,
    })
}
