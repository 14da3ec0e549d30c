//! Acceptance run: one PASS/FAIL line per criterion, with timing against its budget.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use spin_polytope::catalog::{
    catalog_vertices, generic_family, pauli_minkowski_vertices, singlet_family, spin_pauli,
};
use spin_polytope::geometry::minkowski::minkowski_vertices;
use spin_polytope::geometry::{remove_redundant, HRep};
use spin_polytope::oracle::{gok_energy_direct, sample_near, sample_simplex};
use spin_polytope::poset::stability_check;
use spin_polytope::system::Spectrum;
use spin_polytope::*;

const GRID: [(usize, usize, usize); 5] = [(4, 2, 4), (7, 3, 7), (6, 0, 6), (5, 1, 6), (8, 2, 8)];

type Outcome = std::result::Result<String, String>;

fn sys(n: usize, two_s: usize, d: usize) -> QuantumSystem {
    QuantumSystem::new(n, two_s, d, None).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn tag(s: &QuantumSystem) -> String {
    format!("(N={},2S={},d={})", s.n(), s.two_s(), s.d())
}

fn rows_of(h: &HRep) -> Vec<String> {
    h.rows.iter().map(|r| r.render(true)).collect()
}

fn same(computed: &HRep, expected: &HRep, what: &str) -> std::result::Result<(), String> {
    if computed.canonical_rows() == expected.canonical_rows() {
        Ok(())
    } else {
        Err(format!(
            "{what}: computed {:?} vs expected {:?}",
            rows_of(computed),
            rows_of(expected)
        ))
    }
}

/// Rows of `after` whose coefficient vector does not occur in `before`.
fn added_rows(before: &HRep, after: &HRep) -> Vec<(Vec<i64>, String)> {
    let old: BTreeSet<&Vec<i64>> = before.rows.iter().map(|r| &r.a).collect();
    after
        .rows
        .iter()
        .filter(|r| !old.contains(&r.a))
        .map(|r| (r.a.clone(), r.rhs.render()))
        .collect()
}

fn random_weights(rng: &mut ChaCha8Rng, r: usize) -> WeightVector {
    let mut raw: Vec<i64> = (0..r).map(|_| rng.gen_range(1..=100)).collect();
    raw.sort_by(|a, b| b.cmp(a));
    let total: i64 = raw.iter().sum();
    WeightVector::new(raw.into_iter().map(|x| q(x, total)).collect()).unwrap()
}

fn spin_pauli_reproduction() -> Outcome {
    for &(n, s, d) in &GRID {
        let sy = sys(n, s, d);
        let p = build_polytope(&sy, &WeightVector::pure()).map_err(|e| e.to_string())?;
        same(p.hrep(), &remove_redundant(&spin_pauli(&sy)), &tag(&sy))?;
    }
    Ok(format!("{} grid points", GRID.len()))
}

fn generic_r2() -> Outcome {
    let mut checked = 0;
    for &(n, s, d) in &GRID {
        let sy = sys(n, s, d);
        if !stability_check(&sy, 2).holds() {
            continue;
        }
        for k in 0..3 {
            let w = WeightVector::generic_sample(2, k);
            let p = build_polytope(&sy, &w).map_err(|e| e.to_string())?;
            let cat = generic_family(&sy, &w, 2).map_err(|e| e.to_string())?;
            same(p.hrep(), &remove_redundant(&cat), &tag(&sy))?;
            let base = build_polytope(&sy, &WeightVector::pure()).map_err(|e| e.to_string())?;
            let added = added_rows(base.hrep(), p.hrep());
            let expected = format!("{}+w1", 2 * n - s - 1);
            if added.len() != 1 || added[0].1 != expected {
                return Err(format!("{}: added rows {added:?}, expected one with rhs {expected}", tag(&sy)));
            }
        }
        checked += 1;
    }
    Ok(format!("{checked} stable grid points, 3 weight vectors each"))
}

fn generic_r3() -> Outcome {
    for (n, s, d) in [(7, 3, 7), (8, 2, 8)] {
        let sy = sys(n, s, d);
        let count = enumerate_lineups(&sy, 3).map_err(|e| e.to_string())?.len();
        if count != 6 {
            return Err(format!("{}: {count} lineups, expected 6", tag(&sy)));
        }
        for k in 0..3 {
            let w3 = WeightVector::generic_sample(3, k);
            let p3 = build_polytope(&sy, &w3).map_err(|e| e.to_string())?;
            let cat = generic_family(&sy, &w3, 3).map_err(|e| e.to_string())?;
            same(p3.hrep(), &remove_redundant(&cat), &tag(&sy))?;
            let p2 = build_polytope(&sy, &WeightVector::generic_sample(2, k)).map_err(|e| e.to_string())?;
            let added: BTreeSet<String> = added_rows(p2.hrep(), p3.hrep()).into_iter().map(|x| x.1).collect();
            let expected: BTreeSet<String> = [
                format!("{}+w1+w2", 3 * n - 2 * s - 2),
                format!("{}+w1+w2", 3 * n - s - 2),
            ]
            .into();
            if added != expected {
                return Err(format!("{}: added {added:?}, expected {expected:?}", tag(&sy)));
            }
        }
    }
    Ok("(7,3,7) and (8,2,8): 6 lineups, two new rows".into())
}

fn singlet_ladder() -> Outcome {
    let mut problems = Vec::new();
    let mut counts = Vec::new();
    for n in [4usize, 6, 8] {
        let d = n / 2 + 3;
        let sy = sys(n, 0, d);
        let ni = n as i64;
        let expected_new: [Vec<String>; 3] = [
            vec![format!("{}+w1", ni - 1)],
            vec![format!("{}+2w1+w2", 3 * ni - 4)],
            vec![
                format!("{}+2w1+w2+w3", 3 * ni - 4),
                format!("{}+w1+w2+w3", 2 * ni - 3),
                format!("{}+2w1+w2+w3", 3 * ni - 6),
            ],
        ];
        let mut prev = build_polytope(&sy, &WeightVector::pure()).map_err(|e| e.to_string())?;
        let mut row_counts = Vec::new();
        for r in 2..=4 {
            let w = WeightVector::generic_sample(r, 0);
            let p = build_polytope(&sy, &w).map_err(|e| e.to_string())?;
            let cat = singlet_family(n, d, &w, r).map_err(|e| e.to_string())?;
            if let Err(e) = same(p.hrep(), &remove_redundant(&cat), &format!("N={n} r={r}")) {
                problems.push(e);
            }
            let added: BTreeSet<String> = added_rows(prev.hrep(), p.hrep()).into_iter().map(|x| x.1).collect();
            let want: BTreeSet<String> = expected_new[r - 2].iter().cloned().collect();
            if added != want {
                problems.push(format!("N={n} r={r}: added {added:?}, expected {want:?}"));
            }
            let cat_forms: BTreeSet<Vec<AffineForm>> = catalog_vertices(&sy, &w, r)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|v| v.forms().to_vec())
                .collect();
            let forms: BTreeSet<Vec<AffineForm>> = p.vertices().iter().map(|v| v.forms().to_vec()).collect();
            if cat_forms != forms {
                problems.push(format!("N={n} r={r}: generating vertices differ from the catalog"));
            }
            let expected_count = [1, 3, 8][r - 2];
            if p.vertices().len() != expected_count {
                problems.push(format!(
                    "N={n} r={r}: {} generating vertices, expected {expected_count}",
                    p.vertices().len()
                ));
            }
            row_counts.push(p.vertices().len());
            prev = p;
        }
        counts.push(format!("N={n}:{row_counts:?}"));
    }
    if problems.is_empty() {
        Ok(format!("vertex counts {}", counts.join(" ")))
    } else {
        Err(problems.join("; "))
    }
}

fn small_system_anomaly() -> Outcome {
    let sy = sys(3, 1, 3);
    let dim = hilbert_dim(&sy);
    let configs = enumerate_configurations(&sy).len();
    if dim != 8 || configs != 7 {
        return Err(format!("dim {dim}, {configs} configurations"));
    }
    let l5 = enumerate_lineups(&sy, 5).map_err(|e| e.to_string())?.len();
    if l5 != 2 {
        return Err(format!("{l5} lineups for r=5"));
    }
    for k in 0..3 {
        let p2 = build_polytope(&sy, &WeightVector::generic_sample(2, k)).map_err(|e| e.to_string())?;
        let p3 = build_polytope(&sy, &WeightVector::generic_sample(3, k)).map_err(|e| e.to_string())?;
        let normals = |h: &HRep| -> Vec<Vec<i64>> { h.rows.iter().map(|r| r.a.clone()).collect() };
        if normals(p2.hrep()) != normals(p3.hrep()) {
            return Err(format!(
                "r=3 rows {:?} vs r=2 rows {:?}",
                rows_of(p3.hrep()),
                rows_of(p2.hrep())
            ));
        }
    }
    Ok("dim 8, 7 configurations, 2 lineups at r=5, r=3 facets = r=2 facets".into())
}

fn gok_duality() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut total = 0;
    for &(n, s, d) in &GRID {
        let sy = sys(n, s, d);
        let mut cache: Vec<Option<Polytope>> = vec![None, None, None, None];
        for _ in 0..200 {
            let r = rng.gen_range(1..=4usize);
            let w = random_weights(&mut rng, r);
            let mut h: Vec<i64> = (0..d).map(|_| rng.gen_range(-5..=12)).collect();
            h.sort();
            let h: Vec<Rational> = h.into_iter().map(|x| q(x, 1)).collect();
            // one symbolic build per r, re-evaluated at each w
            if cache[r - 1].is_none() {
                let p = build_polytope(&sy, &WeightVector::generic_sample(r, 0)).map_err(|e| e.to_string())?;
                cache[r - 1] = Some(p);
            }
            let template = cache[r - 1].as_ref().unwrap();
            let p = Polytope::from_parts(
                sy,
                w.clone(),
                template.vertices().iter().map(|v| v.at(&w)).collect(),
                template.hrep().at(&w),
            );
            let (lp, _) = minimize_linear(&h, &p).map_err(|e| format!("{} r={r}: {e}", tag(&sy)))?;
            let direct = gok_energy_direct(&h, &sy, &w).map_err(|e| e.to_string())?;
            if lp != direct {
                return Err(format!(
                    "{} w={w} h={:?}: polytope {} vs direct {}",
                    tag(&sy),
                    h.iter().map(format_rational).collect::<Vec<_>>(),
                    format_rational(&lp),
                    format_rational(&direct)
                ));
            }
            total += 1;
        }
    }
    Ok(format!("{total} minimizations agree"))
}

fn membership_cross_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut members = 0usize;
    let mut total = 0usize;
    for (gi, &(n, s, d)) in GRID.iter().enumerate() {
        let sy = sys(n, s, d);
        let r = rng.gen_range(2..=3usize);
        let w = random_weights(&mut rng, r);
        let p = build_polytope(&sy, &w).map_err(|e| e.to_string())?;
        let verts = p.distinct_vertex_values();
        let mut points = sample_simplex(d, n, 5000, 100 + gi as u64);
        points.extend(sample_near(&verts, n, 5000, 200 + gi as u64));
        for x in points {
            let lambda = Spectrum::new(x);
            let a = member_hrep(&lambda, p.hrep()).map_err(|e| e.to_string())?.member;
            let b = member_majorization(&lambda, &verts).map_err(|e| e.to_string())?.member;
            if a != b {
                return Err(format!(
                    "{} w={w} λ={:?}: hrep {a}, majorization {b}",
                    tag(&sy),
                    lambda.entries().iter().map(format_rational).collect::<Vec<_>>()
                ));
            }
            members += a as usize;
            total += 1;
        }
    }
    Ok(format!("{total} points, {members} members, 0 disagreements"))
}

/// `w` padded by one zero, then a few Robin Hood transfers: the result is majorized by `w`.
fn mix(rng: &mut ChaCha8Rng, w: &WeightVector) -> WeightVector {
    let mut x: Vec<Rational> = w.entries().to_vec();
    if rng.gen_bool(0.5) && x.len() < 4 {
        x.push(Rational::zero());
    }
    for _ in 0..3 {
        let i = rng.gen_range(0..x.len());
        let j = rng.gen_range(0..x.len());
        let (hi, lo) = if x[i] >= x[j] { (i, j) } else { (j, i) };
        let t = q(rng.gen_range(0..=8), 16);
        let moved = (&x[hi] - &x[lo]) * t;
        x[hi] -= &moved;
        x[lo] += &moved;
    }
    x.sort_by(|a, b| b.cmp(a));
    while x.last().is_some_and(Zero::is_zero) {
        x.pop();
    }
    WeightVector::new(x).unwrap()
}

fn monotonicity_and_hierarchy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checked = 0;
    for i in 0..20 {
        let (n, s, d) = GRID[i % GRID.len()];
        let sy = sys(n, s, d);
        let r = rng.gen_range(1..=3usize);
        let w = random_weights(&mut rng, r);
        let w2 = mix(&mut rng, &w);
        let outer = build_polytope(&sy, &w).map_err(|e| e.to_string())?;
        let inner = build_polytope(&sy, &w2).map_err(|e| e.to_string())?;
        for v in inner.distinct_vertex_values() {
            let m = member_hrep(&Spectrum::new(v.clone()), outer.hrep()).map_err(|e| e.to_string())?;
            if !m.member {
                return Err(format!(
                    "{} w'={w2} ≺ w={w}: vertex {:?} outside",
                    tag(&sy),
                    v.iter().map(format_rational).collect::<Vec<_>>()
                ));
            }
            checked += 1;
        }
    }
    let mut pairs = 0;
    let mut cases: Vec<(QuantumSystem, usize)> = Vec::new();
    for &(n, s, d) in &GRID {
        for r in 2..=3 {
            cases.push((sys(n, s, d), r));
        }
    }
    cases.push((sys(6, 0, 6), 4));
    cases.push((sys(3, 1, 3), 3));
    for (sy, r) in cases {
        for k in 0..2 {
            let full = build_polytope(&sy, &WeightVector::generic_sample(r, k)).map_err(|e| e.to_string())?;
            let w = WeightVector::generic_sample(r - 1, k);
            let rows = full
                .hrep()
                .rows
                .iter()
                .map(|row| LinearConstraint::new(row.a.clone(), row.rhs.drop_last_weight(), &w))
                .collect();
            let substituted = remove_redundant(&HRep::new(sy.d(), sy.n(), rows));
            let lower = build_polytope(&sy, &w).map_err(|e| e.to_string())?;
            same(&substituted, lower.hrep(), &format!("{} r={r} with w_r=0", tag(&sy)))?;
            pairs += 1;
        }
    }
    Ok(format!("{checked} inner vertices contained, {pairs} hierarchy substitutions"))
}

fn minkowski_identity() -> Outcome {
    let sy = sys(4, 2, 4);
    let p = build_polytope(&sy, &WeightVector::pure()).map_err(|e| e.to_string())?;
    let (a, b) = pauli_minkowski_vertices(&sy);
    let mut sum = minkowski_vertices(&a, &b);
    sum.sort();
    let computed = p.permuted_vertices();
    if computed != sum {
        return Err(format!("{} polytope vertices vs {} Minkowski vertices", computed.len(), sum.len()));
    }
    let v = vec![q(2, 1), Rational::one(), Rational::one(), Rational::zero()];
    if p.distinct_vertex_values() != vec![v] || computed.len() != 12 {
        return Err("generating vertex is not (2,1,1,0)".into());
    }
    Ok("12 permutations of (2,1,1,0)".into())
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("1 spin-Pauli reproduction", 10, spin_pauli_reproduction),
        ("2 generic r=2", 30, generic_r2),
        ("3 generic r=3", 300, generic_r3),
        ("4 singlet ladder", 600, singlet_ladder),
        ("5 small-system anomaly", 600, small_system_anomaly),
        ("6 GOK duality", 300, gok_duality),
        ("7 membership cross-oracle", 600, membership_cross_oracle),
        ("8 monotonicity and hierarchy", 600, monotonicity_and_hierarchy),
        ("9 Minkowski identity", 600, minkowski_identity),
    ];
    let mut failed = 0;
    for (name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (ok, detail) = match outcome {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over budget")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} criterion {name}: {detail} [{:.2}s / {limit}s]",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 9 - failed);
}
