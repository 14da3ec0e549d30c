use std::collections::BTreeSet;

use spin_polytope::catalog::{catalog_hrep, catalog_vertices, spin_pauli};
use spin_polytope::geometry::export::{polytope_from_json, polytope_to_json, to_ext, to_ine};
use spin_polytope::geometry::{remove_redundant, HRep};
use spin_polytope::oracle::audit_hrep;
use spin_polytope::system::{QuantumSystem, Spectrum, WeightVector};
use spin_polytope::*;

fn sys(n: usize, two_s: usize, d: usize) -> QuantumSystem {
    QuantumSystem::new(n, two_s, d, None).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn forms(vs: &[GeneratingVertex]) -> BTreeSet<Vec<AffineForm>> {
    vs.iter().map(|v| v.forms().to_vec()).collect()
}

#[test]
fn computed_matches_catalog_where_it_applies() {
    let cases = [
        (4, 2, 4, 2),
        (7, 3, 7, 2),
        (7, 3, 7, 3),
        (8, 2, 8, 3),
        (5, 1, 6, 2),
        (9, 3, 8, 3),
        (6, 0, 6, 3),
        (6, 0, 7, 4),
        (8, 0, 7, 4),
        (4, 0, 5, 3),
    ];
    for (n, s, d, r) in cases {
        let sy = sys(n, s, d);
        for k in 0..2 {
            let w = WeightVector::generic_sample(r, k);
            let p = build_polytope(&sy, &w).unwrap();
            let cat = remove_redundant(&catalog_hrep(&sy, &w).unwrap());
            assert_eq!(p.hrep().canonical_rows(), cat.canonical_rows(), "({n},{s},{d}) r={r}");
            let cv = catalog_vertices(&sy, &w, r).unwrap();
            assert_eq!(forms(p.vertices()), forms(&cv), "({n},{s},{d}) r={r}");
        }
    }
}

#[test]
fn spin_pauli_examples_after_minimization() {
    let rows = |h: &HRep| -> Vec<String> { h.rows.iter().map(|r| r.render(false)).collect() };
    assert_eq!(
        rows(&remove_redundant(&spin_pauli(&sys(4, 2, 4)))),
        ["λ1 <= 2", "λ1+λ2 <= 3", "λ1+λ2+λ3 <= 4"]
    );
    // λ1+λ2 <= 4 goes; the last rung stays as it carries λ4 >= 0
    assert_eq!(
        rows(&remove_redundant(&spin_pauli(&sys(4, 0, 4)))),
        ["λ1 <= 2", "λ1+λ2+λ3 <= 4"]
    );
    assert_eq!(rows(&remove_redundant(&spin_pauli(&sys(2, 2, 2)))), ["λ1 <= 1"]);
}

#[test]
fn singlet_r2_instance() {
    let sy = sys(4, 0, 4);
    let w = WeightVector::parse("3/5,2/5").unwrap();
    let p = build_polytope(&sy, &w).unwrap();
    let lines: Vec<String> = p.hrep().rows.iter().map(|r| r.render(false)).collect();
    assert!(lines.contains(&"λ1+λ2 <= 18/5".to_string()), "{lines:?}");
}

#[test]
fn json_round_trip() {
    let sy = sys(7, 3, 7);
    let w = WeightVector::parse("1/2,3/10,1/5").unwrap();
    let p = build_polytope(&sy, &w).unwrap();
    let text = serde_json::to_string(&polytope_to_json(&p)).unwrap();
    let doc = polytope_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(doc.system, sy);
    assert_eq!(doc.weights().unwrap(), w);
    assert_eq!(doc.vertex_values().unwrap(), p.distinct_vertex_values());
    let h = doc.hrep().unwrap();
    assert_eq!(h.canonical_rows(), p.hrep().canonical_rows());
    let values = |h: &HRep| -> Vec<Rational> { h.rows.iter().map(|r| r.value.clone()).collect() };
    assert_eq!(values(&h), values(p.hrep()));
}

#[test]
fn cdd_text_layout() {
    let sy = sys(4, 2, 4);
    let p = build_polytope(&sy, &WeightVector::parse("7/10,3/10").unwrap()).unwrap();
    let ine = to_ine(&p);
    assert!(ine.contains("linearity 1 1"));
    assert!(ine.contains("8 5 rational"));
    assert!(ine.contains("57/10 -2 -1 -1 0"));
    let ext = to_ext(&p);
    assert!(ext.contains("2 5 rational"));
    assert!(ext.contains("1 2 1 7/10 3/10"));
}

#[test]
fn audit_flags_a_tightened_row() {
    let sy = sys(7, 3, 7);
    let p = build_polytope(&sy, &WeightVector::generic_sample(3, 0)).unwrap();
    let verts = p.distinct_vertex_values();
    assert!(audit_hrep(&verts, p.hrep(), 100, 1).is_clean());
    let mut bad = p.hrep().clone();
    let last = bad.rows.len() - 1;
    bad.rows[last].value -= q(1, 10);
    let report = audit_hrep(&verts, &bad, 100, 1);
    assert!(!report.violations.is_empty());
    assert!(report.violations.iter().all(|(i, _)| *i == last));
}

#[test]
fn audit_flags_a_loosened_row() {
    let sy = sys(7, 3, 7);
    let p = build_polytope(&sy, &WeightVector::generic_sample(3, 0)).unwrap();
    let verts = p.distinct_vertex_values();
    let mut bad = p.hrep().clone();
    bad.rows[0].value += q(1, 2);
    let report = audit_hrep(&verts, &bad, 400, 2);
    assert_eq!(report.untouched, vec![0]);
}

#[test]
fn vertices_are_members_and_outside_points_are_not() {
    let sy = sys(8, 2, 8);
    let w = WeightVector::parse("1/2,3/10,1/5").unwrap();
    let p = build_polytope(&sy, &w).unwrap();
    for v in p.distinct_vertex_values() {
        let mut reversed = v.clone();
        reversed.reverse();
        assert!(member_hrep(&Spectrum::new(reversed.clone()), p.hrep()).unwrap().member);
        assert!(member_majorization(&Spectrum::new(reversed), &p.distinct_vertex_values()).unwrap().member);
    }
    // the closed-shell configuration is excluded once two states are mixed in
    let x: Vec<Rational> = [2, 2, 2, 1, 1, 0, 0, 0].iter().map(|&k| q(k, 1)).collect();
    let m = member_hrep(&Spectrum::new(x), p.hrep()).unwrap();
    assert!(!m.member);
    assert!(!m.violated.is_empty());
}

#[test]
fn symbolic_rows_hold_at_other_weights() {
    // one build at a generic point, re-evaluated elsewhere, against fresh builds
    let sy = sys(7, 3, 7);
    let template = build_polytope(&sy, &WeightVector::generic_sample(3, 0)).unwrap();
    for w in ["1/2,3/10,1/5", "2/5,2/5,1/5", "1/3,1/3,1/3"] {
        let w = WeightVector::parse(w).unwrap();
        let fresh = build_polytope(&sy, &w).unwrap();
        let cached = template.hrep().at(&w);
        for v in fresh.distinct_vertex_values() {
            assert!(member_hrep(&Spectrum::new(v), &cached).unwrap().member);
        }
        for v in template.vertices().iter().map(|v| v.at(&w)) {
            assert!(member_hrep(&Spectrum::new(v.values().to_vec()), fresh.hrep()).unwrap().member);
        }
    }
}

#[test]
fn bad_inputs_are_rejected() {
    assert!(matches!(QuantumSystem::new(4, 1, 4, None), Err(Error::Parity(_))));
    assert!(matches!(QuantumSystem::new(4, 6, 4, None), Err(Error::Range(_))));
    assert!(matches!(WeightVector::parse("1/2,1/3"), Err(Error::Weights(_))));
    assert!(matches!(WeightVector::parse("0.5,0.5"), Err(Error::Parse(_))));
    let sy = sys(4, 2, 4);
    let p = build_polytope(&sy, &WeightVector::pure()).unwrap();
    let lam = Spectrum::new(vec![q(1, 1); 3]);
    assert!(matches!(member_hrep(&lam, p.hrep()), Err(Error::Length(_))));
    let lam = Spectrum::new(vec![q(1, 1); 4]);
    assert!(member_hrep(&lam, p.hrep()).unwrap().member);
    let lam = Spectrum::new(vec![q(2, 1), q(1, 1), q(1, 1), q(1, 1)]);
    assert!(matches!(member_hrep(&lam, p.hrep()), Err(Error::Normalization(_))));
}
