use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use rbundle::corpus::{self, ClassificationRow};
use rbundle::format::{self, Input, InputDocument};
use rbundle::hilbert::{
    chi_line_bundle, coker_dim_d0, coker_dim_d1, h0_by_gluing, h0_line_bundle,
    hilbert_function_coker, plane_coker_dim, restriction_hilbert_polys, HilbertPoly,
    VANISHING_TWISTS,
};
use rbundle::moduli::{
    common_zero, is_in_x, is_in_x8, tangent_and_normal, to_special_form, Certificate, Direction,
    SheafMatrix,
};
use rbundle::rbundle::{build_phi, equivalent, stabilizer_orbits, support_report, PhiMatrix};
use rbundle::verify::{self, Oracle, SweepConfig};
use rbundle::Error;

/// Largest `--max-m` accepted by `hilbert`.
const MAX_HILBERT_M: u32 = 8;

#[derive(Parser)]
#[command(
    name = "rbundle",
    version,
    about = "Exact computations for R-bundles on the degenerate surface D(p)"
)]
struct Cli {
    /// Print a human-readable summary to stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Membership, special form, normal coordinates, Phi, support and Hilbert data.
    Analyze { file: PathBuf },
    /// Decide whether the directions B and B2 give isomorphic R-bundles.
    Equiv { file: PathBuf },
    /// Hilbert functions of the cokernel of Phi(A, B) and its restrictions.
    Hilbert {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_m: u32,
    },
    /// Euler characteristics and sections of the line bundles with vanishing higher cohomology.
    CohomologyTable,
    /// Randomized finite-field oracles.
    Verify {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = OracleArg::All)]
        oracle: OracleArg,
    },
    /// Classify the built-in examples.
    Examples {
        /// Print the fixture with this name instead of the table.
        #[arg(long)]
        dump: Option<String>,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum OracleArg {
    All,
    Singular,
    Equiv,
    Stabilizer,
}

impl From<OracleArg> for Oracle {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::All => Oracle::All,
            OracleArg::Singular => Oracle::Singular,
            OracleArg::Equiv => Oracle::Equiv,
            OracleArg::Stabilizer => Oracle::Stabilizer,
        }
    }
}

/// Exit statuses.
const EXIT_INPUT: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_ORACLE: u8 = 3;

struct Failure {
    code: u8,
    message: String,
    /// Partial report gathered before the failure.
    partial: Map<String, Value>,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
            partial: Map::new(),
        }
    }

    fn from_error(e: Error, partial: Map<String, Value>) -> Self {
        let code = match e {
            Error::Parse(_)
            | Error::NotHomogeneous(_)
            | Error::InvalidPrime(_)
            | Error::OutOfRange(..) => EXIT_INPUT,
            _ => EXIT_PRECONDITION,
        };
        Failure {
            code,
            message: e.to_string(),
            partial,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from_error(e, Map::new())
    }
}

struct Outcome {
    report: Value,
    summary: String,
    oracle_failures: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { file } => analyze(&file),
        Command::Equiv { file } => equiv(&file),
        Command::Hilbert { file, max_m } => hilbert(&file, max_m),
        Command::CohomologyTable => Ok(cohomology_table()),
        Command::Verify {
            prime,
            samples,
            seed,
            oracle,
        } => run_verify(prime, samples, seed, oracle.into()),
        Command::Examples { dump } => examples(dump.as_deref()),
    };
    match result {
        Ok(out) => {
            emit(&out.report);
            if cli.verbose {
                eprint!("{}", out.summary);
            }
            if out.oracle_failures > 0 {
                eprintln!("error: {} oracle failure(s)", out.oracle_failures);
                ExitCode::from(EXIT_ORACLE)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            let mut doc = f.partial;
            doc.insert("error".into(), Value::String(f.message.clone()));
            emit(&Value::Object(doc));
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Writes pretty JSON to stdout; a closed pipe is not an error.
fn emit(value: &Value) {
    let mut out = std::io::stdout().lock();
    let _ = serde_json::to_writer_pretty(&mut out, value)
        .map_err(std::io::Error::from)
        .and_then(|_| writeln!(out));
}

fn read_input(path: &PathBuf) -> Result<Input, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    Ok(format::parse_input(&text)?)
}

fn require<'a>(d: &'a Option<Direction>, name: &str) -> Result<&'a Direction, Failure> {
    d.as_ref()
        .ok_or_else(|| Failure::input(format!("{name}: missing direction")))
}

/// Special form of `A` together with the certificate, after the membership checks.
fn prepare(
    input: &Input,
    report: &mut Map<String, Value>,
) -> Result<(SheafMatrix, Certificate), Failure> {
    report.insert(
        "input".into(),
        serde_json::to_value(InputDocument::from_input(input)).expect("json"),
    );
    let in_x = is_in_x(&input.a);
    report.insert("in_X".into(), json!(in_x));
    if !in_x {
        let e = if common_zero(&input.a).is_err() {
            Error::DependentForms
        } else {
            Error::NotInX
        };
        return Err(Failure::from_error(e, report.clone()));
    }
    let in_x8 = is_in_x8(&input.a).expect("in X");
    report.insert("in_X8".into(), json!(in_x8));
    report.insert(
        "p_A".into(),
        format::point(&common_zero(&input.a).expect("in X")),
    );
    let (special, cert) =
        to_special_form(&input.a).map_err(|e| Failure::from_error(e, report.clone()))?;
    report.insert("special_form".into(), format::matrix(&special));
    report.insert("certificate".into(), format::certificate(&cert));
    Ok((special, cert))
}

/// Phi for a direction given in the original coordinates.
fn phi_for(
    special: &SheafMatrix,
    cert: &Certificate,
    b: &Direction,
    report: &Map<String, Value>,
) -> Result<(Direction, PhiMatrix), Failure> {
    let moved = cert.transport_direction(b);
    let phi = build_phi(special, &moved).map_err(|e| Failure::from_error(e, report.clone()))?;
    Ok((moved, phi))
}

fn analyze_direction(
    special: &SheafMatrix,
    moved: &Direction,
    phi: &PhiMatrix,
) -> Result<(Value, String), Error> {
    let (_, n) = tangent_and_normal(special, moved)?;
    let support = support_report(phi);
    let orbits = if support.c1.is_zero() {
        Value::Null
    } else {
        format::orbits(&stabilizer_orbits(&support.c1)?)
    };
    let (h_d0, h_d1) = restriction_hilbert_polys(phi)?;
    let h0 = hilbert_function_coker(phi, 0, 0)?;
    let summary = format!(
        "  normal coordinates {n}\n  boundary {} ({:?}), conic {} ({:?}), q = {}\n  Hilbert polynomials on D0, D1: {h_d0}, {h_d1}; h0 = {h0}\n",
        support.boundary, support.boundary_class, support.c1, support.conic_class, support.q
    );
    let value = json!({
        "direction_special": format::direction(moved),
        "normal_coordinates": format::normal(&n),
        "phi": format::phi(phi),
        "support": format::support(&support),
        "orbits": orbits,
        "hilbert": {
            "D0": h_d0.to_string(),
            "D1": h_d1.to_string(),
            "h0": h0,
        },
    });
    Ok((value, summary))
}

fn analyze(path: &PathBuf) -> Result<Outcome, Failure> {
    let input = read_input(path)?;
    let mut report = Map::new();
    let (special, cert) = prepare(&input, &mut report)?;
    let mut summary = format!("A in X8, special form {special}\n");
    for (name, b) in [("B", &input.b), ("B2", &input.b2)] {
        let Some(b) = b else { continue };
        let (moved, phi) = phi_for(&special, &cert, b, &report)?;
        let (value, text) = analyze_direction(&special, &moved, &phi)
            .map_err(|e| Failure::from_error(e, report.clone()))?;
        report.insert(name.into(), value);
        let _ = write!(summary, "{name}:\n{text}");
    }
    Ok(Outcome {
        report: Value::Object(report),
        summary,
        oracle_failures: 0,
    })
}

fn equiv(path: &PathBuf) -> Result<Outcome, Failure> {
    let input = read_input(path)?;
    let b1 = require(&input.b, "B")?;
    let b2 = require(&input.b2, "B2")?;
    let mut report = Map::new();
    let (special, cert) = prepare(&input, &mut report)?;
    let (m1, _) = phi_for(&special, &cert, b1, &report)?;
    let (m2, _) = phi_for(&special, &cert, b2, &report)?;
    let n1 = tangent_and_normal(&special, &m1)?.1;
    let n2 = tangent_and_normal(&special, &m2)?.1;
    let verdict =
        equivalent(&special, &m1, &m2).map_err(|e| Failure::from_error(e, report.clone()))?;
    report.insert("normal_B".into(), format::normal(&n1));
    report.insert("normal_B2".into(), format::normal(&n2));
    report.insert("equivalent".into(), json!(verdict.is_some()));
    let summary = match &verdict {
        Some(e) => {
            report.insert("alpha".into(), format::scalar(&e.alpha));
            report.insert("automorphism".into(), format::automorphism(&e.automorphism));
            format!(
                "equivalent: n(B2) = {} n(B), witness {}\n",
                e.alpha, e.automorphism
            )
        }
        None => format!("not equivalent: normal coordinates {n1} and {n2} are not proportional\n"),
    };
    Ok(Outcome {
        report: Value::Object(report),
        summary,
        oracle_failures: 0,
    })
}

fn hilbert(path: &PathBuf, max_m: u32) -> Result<Outcome, Failure> {
    if max_m > MAX_HILBERT_M {
        return Err(Failure::input(format!("--max-m: at most {MAX_HILBERT_M}")));
    }
    let input = read_input(path)?;
    let b = require(&input.b, "B")?;
    let mut report = Map::new();
    let (special, cert) = prepare(&input, &mut report)?;
    let (_, phi) = phi_for(&special, &cert, b, &report)?;
    let expected_d0 = HilbertPoly::from_ints(1, 4, 0);
    let expected_d1 = HilbertPoly::from_ints(2, 2, 0);
    let plane = HilbertPoly::from_ints(1, 3, 0);
    let mut rows = Vec::new();
    let mut summary = String::from(" m  D0  D1  plane\n");
    for m in 0..=max_m {
        let (d0, d1, p) = (
            coker_dim_d0(&phi, m),
            coker_dim_d1(&phi, m),
            plane_coker_dim(&input.a, m),
        );
        let _ = writeln!(summary, "{m:>2} {d0:>3} {d1:>3} {p:>6}");
        rows.push(json!({
            "m": m,
            "D0": d0,
            "D0_expected": expected_d0.eval(m as i64).to_string(),
            "D1": d1,
            "D1_expected": expected_d1.eval(m as i64).to_string(),
            "plane": p,
            "plane_expected": plane.eval(m as i64).to_string(),
        }));
    }
    let (h_d0, h_d1) = restriction_hilbert_polys(&phi)?;
    report.insert("rows".into(), Value::Array(rows));
    report.insert("hilbert_poly_D0".into(), json!(h_d0.to_string()));
    report.insert("hilbert_poly_D1".into(), json!(h_d1.to_string()));
    report.insert("h0".into(), json!(hilbert_function_coker(&phi, 0, 0)?));
    let _ = writeln!(summary, "D0: {h_d0}, D1: {h_d1}");
    Ok(Outcome {
        report: Value::Object(report),
        summary,
        oracle_failures: 0,
    })
}

fn cohomology_table() -> Outcome {
    let mut rows = Vec::new();
    let mut mismatches = 0;
    let mut summary = String::from("  a   b  chi  h0\n");
    for (a, b) in VANISHING_TWISTS {
        let chi = chi_line_bundle(a, b);
        let h0 = h0_line_bundle(a, b);
        let gluing = h0_by_gluing(a, b);
        if h0 as i64 != chi || gluing != h0 {
            mismatches += 1;
        }
        let _ = writeln!(summary, "{a:>3} {b:>3} {chi:>4} {h0:>3}");
        rows.push(json!({"a": a, "b": b, "chi": chi, "h0": h0, "h0_gluing": gluing}));
    }
    Outcome {
        report: json!({"rows": rows, "mismatches": mismatches}),
        summary,
        oracle_failures: mismatches,
    }
}

fn run_verify(prime: u64, samples: usize, seed: u64, oracle: Oracle) -> Result<Outcome, Failure> {
    let cfg = SweepConfig::new(prime, samples, seed, oracle)?;
    let report = verify::run(&cfg);
    let failures = report.failures();
    let mut summary = String::new();
    if let Some(r) = &report.singular {
        let _ = writeln!(
            summary,
            "singular: {}/{} passed ({} tangent)",
            r.passes, r.samples, r.tangent_samples
        );
    }
    if let Some(r) = &report.equivalence {
        let _ = writeln!(
            summary,
            "equivalence: {}/{} witnesses, {}/{} absences",
            r.witnesses_verified, r.equivalent_pairs, r.absences_correct, r.inequivalent_pairs
        );
    }
    if let Some(r) = &report.stabilizer {
        let _ = writeln!(summary, "stabilizer: {}/{} agree", r.agreements, r.samples);
    }
    Ok(Outcome {
        report: serde_json::to_value(&report).expect("json"),
        summary,
        oracle_failures: failures,
    })
}

fn table_text(rows: &[ClassificationRow]) -> String {
    let mut out = format!(
        "{:<26} {:<12} {:<10} {:<11} {:<20} {:>3}\n",
        "example", "boundary", "class", "conic", "stabilizer", "F7"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<26} {:<12} {:<10} {:<11} {:<20} {:>3}",
            r.name,
            r.boundary,
            format!("{:?}", r.boundary_class),
            format!("{:?}", r.conic_class),
            format!("{:?}", r.stabilizer_class),
            r.count_f7
        );
    }
    out
}

fn examples(dump: Option<&str>) -> Result<Outcome, Failure> {
    if let Some(name) = dump {
        let ex = corpus::find(name)
            .ok_or_else(|| Failure::input(format!("--dump: no example named {name:?}")))?;
        return Ok(Outcome {
            report: serde_json::from_str(ex.json).expect("fixture is JSON"),
            summary: String::new(),
            oracle_failures: 0,
        });
    }
    let rows = corpus::classification_table()?;
    let mismatches = rows
        .iter()
        .zip(corpus::EXAMPLES.iter())
        .filter(|(r, e)| r.boundary_class != e.boundary_class)
        .count();
    Ok(Outcome {
        summary: table_text(&rows),
        report: json!({"examples": rows, "mismatches": mismatches}),
        oracle_failures: mismatches,
    })
}
