//! `spin-polytope`: constraints, membership checks, verification, ensemble
//! energies and slice export for spin-adapted w-ensemble polytopes.
//!
//! Exit codes: 0 success or member, 1 non-member or failed check, 2 bad
//! input, 3 family not applicable or stability failure, 4 normalization or
//! Hermiticity error.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use spin_polytope::catalog::{catalog_hrep, catalog_vertices};
use spin_polytope::geometry::export::{hrep_rows, polytope_to_json, to_ext, to_ine};
use spin_polytope::geometry::{contraction_check_in, remove_redundant, HRep};
use spin_polytope::oracle::{audit_hrep, gok_energy_direct, hermitian_eigenvalues, HermitianMatrix};
use spin_polytope::scalar::parse_rational_list;
use spin_polytope::system::{QuantumSystem, Spectrum, WeightVector};
use spin_polytope::{
    build_polytope, format_rational, member_hrep, minimize_linear, parse_rational, Error,
    LinearConstraint, Polytope, Rational,
};

#[derive(Parser)]
#[command(name = "spin-polytope", version, about = "Spin-adapted w-ensemble occupation-number polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the minimal H-representation.
    Constraints(ConstraintsArgs),
    /// Test a spectrum or a one-particle density matrix for membership.
    Check(CheckArgs),
    /// Compare computed H-representations with the catalog over a grid and audit them.
    Verify(VerifyArgs),
    /// Ensemble energy of a one-particle Hamiltonian, from the polytope and directly.
    Energy(EnergyArgs),
    /// CSV of the d=4 polytope projected onto (λ1, λ2, λ3).
    ExportSlice(SystemArgs),
}

#[derive(Args, Clone)]
struct SystemArgs {
    /// Number of electrons.
    #[arg(long = "N")]
    n: usize,
    /// Twice the total spin.
    #[arg(long = "twoS")]
    two_s: usize,
    /// Number of spatial orbitals.
    #[arg(long)]
    d: usize,
    /// Twice the magnetic quantum number.
    #[arg(long = "twoM", allow_hyphen_values = true)]
    two_m: Option<i64>,
    /// Ensemble weights "p/q,p/q,...", nonincreasing and summing to 1.
    #[arg(long)]
    w: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Ine,
    Ext,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Source {
    Computed,
    Catalog,
}

#[derive(Args)]
struct ConstraintsArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Ensemble size; weights beyond those given are zero.
    #[arg(long)]
    r: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Print right-hand sides as affine forms in the weights.
    #[arg(long)]
    symbolic: bool,
    #[arg(long, value_enum, default_value = "computed")]
    source: Source,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// Occupation numbers "p/q,...".
    #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix", allow_hyphen_values = true)]
    lambda: Option<String>,
    /// JSON file holding a real symmetric matrix, or {"re": ..., "im": ...}.
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Slack allowed per unit of ‖a‖₁ when checking a matrix spectrum.
    #[arg(long, default_value = "1/10000000000")]
    tol: String,
}

const DEFAULT_GRID: &str = "4:2:4:1;4:2:4:2;7:3:7:1;7:3:7:2;7:3:7:3;6:0:6:1;6:0:6:2;6:0:6:3;6:0:6:4;\
5:1:6:1;5:1:6:2;8:2:8:1;8:2:8:2;8:2:8:3;4:0:5:2;4:0:5:3;4:0:5:4;8:0:7:4;3:1:3:2;3:1:3:3";

#[derive(Args)]
struct VerifyArgs {
    /// Grid points "N:twoS:d:r;...".
    #[arg(long, default_value = DEFAULT_GRID)]
    grid: String,
    /// Random points per grid point in the membership audit.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Tighten the first catalog row before comparing (negative control).
    #[arg(long, hide = true)]
    corrupt_catalog: bool,
}

#[derive(Args)]
struct EnergyArgs {
    #[command(flatten)]
    system: SystemArgs,
    /// One-particle orbital energies "p/q,...".
    #[arg(long, allow_hyphen_values = true)]
    h: String,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parity(_)
            | Error::Range(_)
            | Error::Length(_)
            | Error::Weights(_)
            | Error::Parse(_)
            | Error::DegenerateInput(_) => 2,
            Error::Stability(_) | Error::Applicability(_) | Error::Depth { .. } => 3,
            Error::Normalization(_) | Error::NotHermitian(_) | Error::Trace(_) | Error::NoConvergence(_) => 4,
            Error::NotPointed(_) | Error::Tie(_) | Error::Invariant(_) => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type Outcome = Result<u8, Failure>;

impl SystemArgs {
    fn system(&self) -> Result<QuantumSystem, Failure> {
        Ok(QuantumSystem::new(self.n, self.two_s, self.d, self.two_m)?)
    }

    fn weights(&self) -> Result<WeightVector, Failure> {
        Ok(WeightVector::parse(&self.w)?)
    }
}

fn catalog_polytope(sys: &QuantumSystem, w: &WeightVector) -> Result<Polytope, Failure> {
    let h = remove_redundant(&catalog_hrep(sys, w)?);
    let vertices = catalog_vertices(sys, w, w.r())?;
    Ok(Polytope::from_parts(*sys, w.clone(), vertices, h))
}

/// Attach catalog labels to computed rows that coincide with a catalog row.
fn labelled(h: &HRep, sys: &QuantumSystem, w: &WeightVector) -> HRep {
    let mut out = h.clone();
    if let Ok(cat) = catalog_hrep(sys, w) {
        for row in out.rows.iter_mut() {
            if let Some(c) = cat.rows.iter().find(|c| *c == row) {
                row.label = c.label.clone();
            }
        }
    }
    out
}

fn render_rows(h: &HRep, symbolic: bool) -> Vec<String> {
    h.rows.iter().map(|r| r.render(symbolic)).collect()
}

fn cmd_constraints(a: &ConstraintsArgs) -> Outcome {
    let sys = a.system.system()?;
    let w = a.system.weights()?;
    if let Some(r) = a.r {
        if r < w.r() {
            return Err(fail(2, format!("--r {r} is smaller than the {} weights given", w.r())));
        }
    }
    let p = match a.source {
        Source::Computed => build_polytope(&sys, &w)?,
        Source::Catalog => catalog_polytope(&sys, &w)?,
    };
    match a.format {
        Format::Text => {
            for line in render_rows(&labelled(p.hrep(), &sys, &w), a.symbolic) {
                println!("{line}");
            }
        }
        Format::Json => {
            let mut doc = polytope_to_json(&p);
            if a.symbolic {
                doc["symbolic"] = json!(render_rows(&labelled(p.hrep(), &sys, &w), true));
            }
            println!("{}", serde_json::to_string_pretty(&doc).expect("json"));
        }
        Format::Ine => print!("{}", to_ine(&p)),
        Format::Ext => print!("{}", to_ext(&p)),
    }
    Ok(0)
}

fn cmd_check(a: &CheckArgs) -> Outcome {
    let sys = a.system.system()?;
    let w = a.system.weights()?;
    if let Some(lambda) = &a.lambda {
        let lambda = Spectrum::parse(lambda)?;
        if lambda.len() != sys.d() {
            return Err(fail(2, format!("λ has {} entries, expected d={}", lambda.len(), sys.d())));
        }
        let p = build_polytope(&sys, &w)?;
        let m = member_hrep(&lambda, p.hrep())?;
        if m.member {
            println!("member");
            return Ok(0);
        }
        println!("not a member; violated:");
        for r in labelled(&HRep::new(sys.d(), sys.n(), m.violated), &sys, &w).rows {
            println!("  {}", r.render(false));
        }
        return Ok(1);
    }
    let path = a.matrix.as_ref().expect("clap requires --lambda or --matrix");
    let text = std::fs::read_to_string(path).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    let g: HermitianMatrix =
        serde_json::from_str(&text).map_err(|e| fail(2, format!("{}: {e}", path.display())))?;
    let tol = parse_rational(&a.tol)?;
    let p = build_polytope(&sys, &w)?;
    let member = contraction_check_in(&g, &p, &tol)?;
    let ftol = num_traits::ToPrimitive::to_f64(&tol).unwrap_or(0.0);
    let eig = hermitian_eigenvalues(&g, ftol)?;
    let shown: Vec<String> = eig.iter().map(|x| format!("{x:.12}")).collect();
    println!("spectrum: {}", shown.join(","));
    if member {
        println!("member");
        Ok(0)
    } else {
        println!("not a member");
        Ok(1)
    }
}

fn parse_grid(s: &str) -> Result<Vec<(usize, usize, usize, usize)>, Failure> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let parts: Vec<usize> = t
                .split(':')
                .map(|x| x.trim().parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|e| fail(2, format!("grid point {t:?}: {e}")))?;
            match parts[..] {
                [n, s, d, r] if r >= 1 => Ok((n, s, d, r)),
                _ => Err(fail(2, format!("grid point {t:?} is not N:twoS:d:r with r >= 1"))),
            }
        })
        .collect()
}

fn mismatch(sys: &QuantumSystem, r: usize, what: &str, detail: serde_json::Value) -> Failure {
    let doc = json!({
        "system": sys,
        "r": r,
        "check": what,
        "detail": detail,
    });
    fail(1, serde_json::to_string_pretty(&doc).expect("json"))
}

/// Substitute `w_r = 0` into the symbolic rows of `p` and compare with the
/// computed `(r−1)` polytope after minimization.
fn hierarchy(sys: &QuantumSystem, p: &Polytope, r: usize) -> Result<Result<(), serde_json::Value>, Failure> {
    let w = WeightVector::generic_sample(r - 1, 0);
    let rows = p
        .hrep()
        .rows
        .iter()
        .map(|row| LinearConstraint::new(row.a.clone(), row.rhs.drop_last_weight(), &w))
        .collect();
    let substituted = remove_redundant(&HRep::new(sys.d(), sys.n(), rows));
    let lower = build_polytope(sys, &w)?;
    if substituted.canonical_rows() == lower.hrep().canonical_rows() {
        Ok(Ok(()))
    } else {
        Ok(Err(json!({
            "substituted": render_rows(&substituted, true),
            "lower": render_rows(lower.hrep(), true),
        })))
    }
}

fn cmd_verify(a: &VerifyArgs) -> Outcome {
    for (n, s, d, r) in parse_grid(&a.grid)? {
        let sys = QuantumSystem::new(n, s, d, None)?;
        let w = WeightVector::generic_sample(r, 0);
        let p = build_polytope(&sys, &w)?;
        let mut notes = Vec::new();
        match catalog_hrep(&sys, &w) {
            Ok(mut cat) => {
                if a.corrupt_catalog {
                    if let Some(row) = cat.rows.first_mut() {
                        row.rhs.constant -= 1;
                        row.value = row.rhs.eval(&w);
                    }
                }
                let cat = remove_redundant(&cat);
                if cat.canonical_rows() != p.hrep().canonical_rows() {
                    return Err(mismatch(
                        &sys,
                        r,
                        "catalog rows",
                        json!({
                            "computed": hrep_rows(p.hrep()),
                            "catalog": hrep_rows(&cat),
                        }),
                    ));
                }
                notes.push("catalog rows equal".to_string());
                if let Ok(vs) = catalog_vertices(&sys, &w, r) {
                    let want: BTreeSet<_> = vs.iter().map(|v| v.forms().to_vec()).collect();
                    let got: BTreeSet<_> = p.vertices().iter().map(|v| v.forms().to_vec()).collect();
                    if want != got {
                        return Err(mismatch(
                            &sys,
                            r,
                            "catalog vertices",
                            json!({
                                "computed": got.iter().map(|f| f.iter().map(|x| x.render()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                                "catalog": want.iter().map(|f| f.iter().map(|x| x.render()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                            }),
                        ));
                    }
                    notes.push(format!("{} catalog vertices equal", vs.len()));
                }
            }
            Err(_) if r >= 2 => {
                if let Err(detail) = hierarchy(&sys, &p, r)? {
                    return Err(mismatch(&sys, r, "hierarchy", detail));
                }
                notes.push(format!("no catalog family; w_r=0 reproduces computed r={}", r - 1));
            }
            Err(e) => return Err(e.into()),
        }
        let report = audit_hrep(&p.distinct_vertex_values(), p.hrep(), a.samples, a.seed);
        if !report.is_clean() {
            return Err(mismatch(&sys, r, "audit", report.to_json()));
        }
        notes.push(format!("audit clean ({} samples)", report.samples));
        println!("ok N={n} twoS={s} d={d} r={r}: {}", notes.join(", "));
    }
    Ok(0)
}

fn cmd_energy(a: &EnergyArgs) -> Outcome {
    let sys = a.system.system()?;
    let w = a.system.weights()?;
    let h = parse_rational_list(&a.h)?;
    if h.len() != sys.d() {
        return Err(fail(2, format!("h has {} entries, expected d={}", h.len(), sys.d())));
    }
    let p = build_polytope(&sys, &w)?;
    let (lp, _) = minimize_linear(&h, &p)?;
    let direct = gok_energy_direct(&h, &sys, &w)?;
    if lp == direct {
        println!("{} == {}", format_rational(&lp), format_rational(&direct));
        Ok(0)
    } else {
        println!("{} != {}", format_rational(&lp), format_rational(&direct));
        Ok(1)
    }
}

fn permutations(a: &[i64]) -> Vec<Vec<i64>> {
    let mut cur = a.to_vec();
    cur.sort();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

fn cmd_export_slice(a: &SystemArgs) -> Outcome {
    if a.d != 4 {
        return Err(fail(3, format!("the slice is defined for d=4 only, got d={}", a.d)));
    }
    let sys = a.system()?;
    let w = a.weights()?;
    let p = build_polytope(&sys, &w)?;
    for v in p.permuted_vertices() {
        println!("v,{},{},{}", format_rational(&v[0]), format_rational(&v[1]), format_rational(&v[2]));
    }
    let n = Rational::from_integer(sys.n().into());
    let mut seen = BTreeSet::new();
    for row in &p.hrep().rows {
        for perm in permutations(&row.a) {
            // λ4 = N − λ1 − λ2 − λ3
            let a4 = perm[3];
            let b = &row.value - &n * Rational::from_integer(a4.into());
            let key = (perm[0] - a4, perm[1] - a4, perm[2] - a4, b);
            if seen.insert(key.clone()) {
                println!("f,{},{},{},{}", key.0, key.1, key.2, format_rational(&key.3));
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Constraints(a) => cmd_constraints(a),
        Command::Check(a) => cmd_check(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Energy(a) => cmd_energy(a),
        Command::ExportSlice(a) => cmd_export_slice(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
