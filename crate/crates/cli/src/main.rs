//! `destab`: exact Hilbert-Mumford weights, flat limits and
//! Donaldson-Futaki invariants from the command line.
//!
//! Exit status: 0 success, 2 bad input, 3 a `--check` oracle disagreed,
//! 4 a resource guard tripped (see `DESTAB_MAX_CELLS`).

mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use destab_core::algebra::{format_rational, monomials_of_degree, q, Scalar};
use destab_core::building::{building_point_of, BuildingPoint, FramedOnePS};
use destab_core::kempf::{certificate_holds, min_norm_point_oracle, optimal_destabilizer};
use destab_core::opsub::{canonicalize, lift_exponent, NormalizedValue, WeightVector};
use destab_core::report::{approx_decimal, approx_normalized, IdealFile, APPROX_NOTE, KEMPF_SCOPE};
use destab_core::stability::{mu, mu_value, s_prime_membership, state_of_hilbert_point};
use destab_core::testconfig::{
    almost_trivial_necessary, df_invariant, flat_limit, k_stability_sweep, DfReport, TestDegeneration,
};
use destab_core::{algebra::HomogeneousIdeal, algebra::Polynomial, Error};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "destab", version, about = "Exact test-configuration and destabilization reports")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Also run the independent oracle for this computation.
    #[arg(long, global = true)]
    check: bool,
    /// Add labeled decimal approximations.
    #[arg(long, global = true)]
    approx: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct Inputs {
    /// Ideal file (or inline JSON): {"variables": [...], "generators": [...]}.
    #[arg(long)]
    ideal: Option<String>,
    /// Weight vector as JSON or a path to a JSON file.
    #[arg(long, allow_hyphen_values = true)]
    weights: Option<String>,
    /// State as JSON or a path: {"characters": [[...]], "degree": d}.
    #[arg(long)]
    state: Option<String>,
    #[arg(long)]
    degree: Option<u32>,
    #[arg(long)]
    exponent: Option<u32>,
    #[arg(long = "denominator-bound")]
    denominator_bound: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Hilbert-Mumford weight of a state.
    Mu(Inputs),
    /// Normalized weight of a state.
    Nu(Inputs),
    /// Optimal destabilizing direction of a state, or of the Hilbert point
    /// of an ideal in `--degree`.
    Kempf(Inputs),
    /// Central fiber of the degeneration.
    Flatlimit(Inputs),
    /// Donaldson-Futaki invariant.
    Df(Inputs),
    /// Necessary condition for almost triviality.
    AlmostTrivial(Inputs),
    /// Whether the minimal-weight coordinates cut out nothing on X.
    Sprime(Inputs),
    /// Building-theoretic views of a one-parameter subgroup.
    #[command(subcommand)]
    Building(BuildingCommand),
    /// Weights induced on a higher exponent.
    Lift {
        #[command(flatten)]
        inputs: Inputs,
        /// Multiplier `l`: lift from exponent `r` to `r * l`.
        #[arg(long, default_value_t = 2)]
        factor: u32,
    },
    /// Exhaustive DF sweep over small exponents and weights.
    Sweep(Inputs),
}

#[derive(Subcommand)]
enum BuildingCommand {
    /// Canonical apartment point and building point of a weight vector.
    Canonical {
        #[command(flatten)]
        inputs: Inputs,
        /// Frame matrix whose columns are the eigenvectors.
        #[arg(long)]
        frame: Option<String>,
    },
}

pub enum Failure {
    Input { field: String, message: String },
    Mismatch(String),
    TooLarge(String),
}

impl Failure {
    pub fn input(field: &str, message: impl Into<String>) -> Self {
        Failure::Input {
            field: field.to_string(),
            message: message.into(),
        }
    }

    pub fn core(field: &str, e: Error) -> Self {
        match e {
            Error::TooLarge(m) => Failure::TooLarge(m),
            other => Failure::input(field, other.to_string()),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.common.clone();
    match run(cli.command, &common) {
        Ok(value) => {
            let text = match common.format {
                Format::Json => serde_json::to_string_pretty(&value).expect("serializable") + "\n",
                Format::Table => {
                    let mut out = String::new();
                    table("", &value, &mut out);
                    out
                }
            };
            // a closed pipe is not an error of ours
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Input { field, message }) => {
            eprintln!("error: {field}: {message}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(3)
        }
        Err(Failure::TooLarge(m)) => {
            eprintln!("resource guard: {m}");
            ExitCode::from(4)
        }
    }
}

fn table(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                table(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.to_string().contains('{')) => {
            for (i, x) in items.iter().enumerate() {
                table(&format!("{prefix}[{i}]"), x, out);
            }
        }
        Value::String(s) => out.push_str(&format!("{prefix:<40} {s}\n")),
        other => out.push_str(&format!("{prefix:<40} {other}\n")),
    }
}

fn r(x: &Scalar) -> Value {
    Value::String(format_rational(x))
}

fn rs(xs: &[Scalar]) -> Value {
    Value::Array(xs.iter().map(r).collect())
}

fn nu_json(nu: &Option<NormalizedValue>) -> Value {
    match nu {
        None => Value::Null,
        Some(v) => json!({
            "numerator": r(&v.numerator),
            "normsq": r(&v.normsq),
            "signed_square": r(&v.signed_square()),
        }),
    }
}

fn with_approx(mut v: Value, common: &Common, fields: Vec<(&str, String)>) -> Value {
    if common.approx {
        let mut block = serde_json::Map::new();
        block.insert("note".into(), Value::String(APPROX_NOTE.into()));
        for (k, x) in fields {
            block.insert(k.into(), Value::String(x));
        }
        v["approx"] = Value::Object(block);
    }
    v
}

fn mismatch(ok: bool, what: &str) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch(what.to_string()))
    }
}

fn run(command: Command, common: &Common) -> Outcome {
    match command {
        Command::Mu(i) => cmd_mu(&i, common),
        Command::Nu(i) => cmd_nu(&i, common),
        Command::Kempf(i) => cmd_kempf(&i, common),
        Command::Flatlimit(i) => cmd_flatlimit(&i, common),
        Command::Df(i) => cmd_df(&i, common),
        Command::AlmostTrivial(i) => cmd_almost_trivial(&i, common),
        Command::Sprime(i) => cmd_sprime(&i, common),
        Command::Building(BuildingCommand::Canonical { inputs, frame }) => cmd_canonical(&inputs, frame.as_deref(), common),
        Command::Lift { inputs, factor } => cmd_lift(&inputs, factor, common),
        Command::Sweep(i) => cmd_sweep(&i, common),
    }
}

fn weights_as_scalars(a: &WeightVector) -> Vec<Scalar> {
    a.entries().iter().map(|&x| q(x)).collect()
}

fn cmd_mu(i: &Inputs, common: &Common) -> Outcome {
    let state = input::state(i.state.as_deref())?;
    let a = input::weights(i.weights.as_deref())?;
    let report = mu(&state, &a).map_err(|e| Failure::core("--weights", e))?;
    if common.check {
        // direct maximum over the characters, and argmax membership
        let direct = mu_value(&state, &weights_as_scalars(&a)).map_err(|e| Failure::core("--weights", e))?;
        mismatch(direct == report.mu, "mu differs from the direct maximum")?;
        let attains = report.argmax.iter().all(|c| {
            -c.iter().zip(a.entries()).map(|(x, y)| q(x * y)).sum::<Scalar>() == report.mu
        });
        mismatch(attains && !report.argmax.is_empty(), "argmax does not attain mu")?;
    }
    let v = json!({
        "weights": a.entries(),
        "mu": r(&report.mu),
        "nu": nu_json(&report.nu),
        "argmax": report.argmax,
    });
    let mut approx = vec![("mu", approx_decimal(&report.mu))];
    if let Some(nu) = &report.nu {
        approx.push(("nu", approx_normalized(nu)));
    }
    Ok(with_approx(v, common, approx))
}

fn cmd_nu(i: &Inputs, common: &Common) -> Outcome {
    let state = input::state(i.state.as_deref())?;
    let a = input::weights(i.weights.as_deref())?;
    let report = mu(&state, &a).map_err(|e| Failure::core("--weights", e))?;
    if common.check && !a.is_central() {
        let moved = mu(&state, &a.scaled(3).shifted(-2)).map_err(|e| Failure::core("--weights", e))?;
        mismatch(moved.nu == report.nu, "nu changed under scaling and a central shift")?;
    }
    let v = json!({ "weights": a.entries(), "nu": nu_json(&report.nu) });
    let approx = report.nu.iter().map(|nu| ("nu", approx_normalized(nu))).collect();
    Ok(with_approx(v, common, approx))
}

fn cmd_kempf(i: &Inputs, common: &Common) -> Outcome {
    let state = match (&i.state, &i.ideal) {
        (Some(_), _) => input::state(i.state.as_deref())?,
        (None, Some(_)) => {
            let ideal = input::ideal(i.ideal.as_deref())?;
            let d = i.degree.ok_or_else(|| Failure::input("--degree", "required with --ideal"))?;
            state_of_hilbert_point(&ideal, d).map_err(|e| Failure::core("--degree", e))?
        }
        (None, None) => return Err(Failure::input("--state", "required (or --ideal with --degree)")),
    };
    let report = optimal_destabilizer(&state);
    if common.check {
        let oracle = min_norm_point_oracle(&state).map_err(|e| Failure::core("--state", e))?;
        mismatch(oracle.q == report.certificate.q, "Wolfe and face enumeration disagree on q")?;
        mismatch(oracle.normsq == report.certificate.normsq, "Wolfe and face enumeration disagree on |q|^2")?;
        mismatch(certificate_holds(&state, &report.certificate), "optimality certificate fails")?;
    }
    let mut v = serde_json::to_value(&report).expect("serializable");
    v["state"] = serde_json::to_value(&state).expect("serializable");
    v["scope"] = Value::String(KEMPF_SCOPE.into());
    let approx = report
        .nu_min
        .iter()
        .map(|nu| ("nu_min", approx_normalized(nu)))
        .chain(std::iter::once(("normsq", approx_decimal(&report.certificate.normsq))))
        .collect();
    Ok(with_approx(v, common, approx))
}

fn degeneration(i: &Inputs) -> Result<TestDegeneration, Failure> {
    let ideal = input::ideal(i.ideal.as_deref())?;
    let a = input::weights(i.weights.as_deref())?;
    TestDegeneration::new(ideal, i.exponent.unwrap_or(1), a).map_err(|e| Failure::core("--weights", e))
}

fn ideal_json(i: &HomogeneousIdeal) -> Value {
    serde_json::to_value(IdealFile::of(i)).expect("serializable")
}

fn cmd_flatlimit(i: &Inputs, common: &Common) -> Outcome {
    let td = degeneration(i)?;
    let limit = flat_limit(&td);
    let hf: Vec<usize> = (0..=8).map(|k| limit.hilbert_function(k)).collect();
    if common.check {
        let original: Vec<usize> = (0..=8).map(|k| td.ideal().hilbert_function(k)).collect();
        mismatch(original == hf, "Hilbert functions of X and its flat limit differ")?;
        let again = limit
            .initial_ideal(td.weights().entries())
            .map_err(|e| Failure::core("--weights", e))?;
        mismatch(again.same_ideal(&limit), "flat limit is not fixed by the torus")?;
    }
    Ok(json!({
        "weights": td.weights().entries(),
        "point": td.point().map(|p| p.canonical().to_vec()),
        "ideal": ideal_json(td.ideal()),
        "central_fiber": ideal_json(&limit),
        "hilbert_function": hf,
    }))
}

fn df_json(d: &DfReport) -> Value {
    serde_json::to_value(d).expect("serializable")
}

fn cmd_df(i: &Inputs, common: &Common) -> Outcome {
    let td = degeneration(i)?;
    let report = df_invariant(&td).map_err(|e| Failure::core("--ideal", e))?;
    if common.check {
        let with = |a: WeightVector| -> Result<DfReport, Failure> {
            let t = TestDegeneration::new(td.ideal().clone(), td.exponent(), a).map_err(|e| Failure::core("--weights", e))?;
            df_invariant(&t).map_err(|e| Failure::core("--ideal", e))
        };
        mismatch(with(td.weights().shifted(5))?.df == report.df, "df changed under a central shift")?;
        mismatch(with(td.weights().scaled(2))?.df == q(2) * &report.df, "df is not linear under base change")?;
    }
    let v = json!({
        "weights": td.weights().entries(),
        "point": td.point().map(|p| p.canonical().to_vec()),
        "central_fiber": ideal_json(td.central_fiber()),
        "df": df_json(&report),
    });
    Ok(with_approx(v, common, vec![("df", approx_decimal(&report.df))]))
}

/// Emptiness of `I + (X_j : a_j minimal)` through the Hilbert polynomial,
/// independent of the leading-term criterion used by the library.
fn minimal_locus_is_empty(ideal: &HomogeneousIdeal, a: &WeightVector) -> Result<bool, Failure> {
    let n = ideal.nvars();
    let vars: Vec<Polynomial> = a.argmin().into_iter().map(|j| Polynomial::var(n, j)).collect();
    let sum = ideal.sum(&vars).map_err(|e| Failure::core("--ideal", e))?;
    match sum.hilbert_polynomial() {
        Ok(h) => Ok(h.poly.is_zero()),
        Err(Error::EmptyScheme) => Ok(true),
        Err(e) => Err(Failure::core("--ideal", e)),
    }
}

fn cmd_almost_trivial(i: &Inputs, common: &Common) -> Outcome {
    let ideal = input::ideal(i.ideal.as_deref())?;
    let a = input::weights(i.weights.as_deref())?;
    let report = almost_trivial_necessary(&ideal, &a).map_err(|e| Failure::core("--weights", e))?;
    if common.check {
        mismatch(report.meets == !minimal_locus_is_empty(&ideal, &a)?, "emptiness checks disagree")?;
    }
    let mut v = serde_json::to_value(&report).expect("serializable");
    v["weights"] = json!(a.entries());
    Ok(v)
}

fn cmd_sprime(i: &Inputs, common: &Common) -> Outcome {
    let ideal = input::ideal(i.ideal.as_deref())?;
    let a = input::weights(i.weights.as_deref())?;
    let member = s_prime_membership(&ideal, &a).map_err(|e| Failure::core("--weights", e))?;
    if common.check {
        mismatch(member == minimal_locus_is_empty(&ideal, &a)?, "emptiness checks disagree")?;
    }
    let names: Vec<&String> = a.argmin().into_iter().map(|j| &ideal.variables()[j]).collect();
    Ok(json!({ "weights": a.entries(), "minimal_coordinates": names, "member": member }))
}

fn building_json(p: &BuildingPoint) -> Value {
    let flag: Vec<Value> = p
        .flag
        .subspaces()
        .iter()
        .map(|s| Value::Array(s.basis().to_rows().iter().map(|row| rs(row)).collect()))
        .collect();
    json!({ "flag": flag, "gaps": rs(&p.gaps) })
}

fn cmd_canonical(i: &Inputs, frame: Option<&str>, common: &Common) -> Outcome {
    let a = input::weights(i.weights.as_deref())?;
    let canonical = canonicalize(&a).map_err(|e| Failure::core("--weights", e))?;
    let framed = |w: WeightVector| -> Result<FramedOnePS, Failure> {
        match frame {
            None => Ok(FramedOnePS::diagonal(w)),
            Some(f) => FramedOnePS::new(w, input::frame(f)?).map_err(|e| Failure::core("--frame", e)),
        }
    };
    let point = building_point_of(&framed(a.clone())?).map_err(|e| Failure::core("--weights", e))?;
    if common.check {
        let again = building_point_of(&framed(canonical.representative())?).map_err(|e| Failure::core("--weights", e))?;
        mismatch(again == point, "canonical representative has a different building point")?;
    }
    Ok(json!({
        "weights": a.entries(),
        "canonical": canonical.canonical(),
        "building_point": building_json(&point),
    }))
}

fn cmd_lift(i: &Inputs, factor: u32, common: &Common) -> Outcome {
    let ideal = input::ideal(i.ideal.as_deref())?;
    let a = input::weights(i.weights.as_deref())?;
    let r = i.exponent.unwrap_or(1);
    let lifted = lift_exponent(&a, r, factor, &ideal).map_err(|e| Failure::core("--weights", e))?;
    if common.check {
        // lifting commutes with a -> 2a + 3 up to the induced shift 3l
        let moved = lift_exponent(&a.scaled(2).shifted(3), r, factor, &ideal).map_err(|e| Failure::core("--weights", e))?;
        let expect = lifted.scaled(2).shifted(3 * factor as i64);
        mismatch(moved == expect, "lift does not commute with scaling and shifts")?;
    }
    let labels: Vec<String> = monomials_of_degree(ideal.nvars(), r * factor)
        .iter()
        .map(|m| m.display_with(ideal.variables()))
        .collect();
    Ok(json!({
        "exponent": r * factor,
        "coordinates": labels,
        "weights": lifted.entries(),
    }))
}

fn cmd_sweep(i: &Inputs, common: &Common) -> Outcome {
    let ideal = input::ideal(i.ideal.as_deref())?;
    let r_max = i.exponent.unwrap_or(1);
    let bound = i.denominator_bound.unwrap_or(1);
    let report = k_stability_sweep(&ideal, r_max, bound).map_err(|e| Failure::core("--ideal", e))?;
    if common.check {
        let again = k_stability_sweep(&ideal, r_max, bound).map_err(|e| Failure::core("--ideal", e))?;
        mismatch(again == report, "sweep is not deterministic")?;
        for e in &report.exponents {
            let (Some(d), Some(k)) = (e.kempf_degree, &e.kempf) else { continue };
            let j = IdealFile {
                name: None,
                variables: e.coordinates.clone(),
                generators: e.ideal.clone(),
            }
            .to_ideal()
            .map_err(|e| Failure::core("--ideal", e))?;
            let state = state_of_hilbert_point(&j, d).map_err(|e| Failure::core("--ideal", e))?;
            match min_norm_point_oracle(&state) {
                Ok(o) => mismatch(o.q == k.certificate.q, "Wolfe and face enumeration disagree on a Hilbert point")?,
                Err(Error::TooLarge(_)) => {}
                Err(e) => return Err(Failure::core("--ideal", e)),
            }
        }
    }
    Ok(serde_json::to_value(&report).expect("serializable"))
}
