use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use orthomod::congruence::{default_grid, in_subgroup, paired_kernel_test, verify_theorem, SubgroupSpec, TheoremId};
use orthomod::element::AnyElem;
use orthomod::forms::{build_form, enumerate_aut, is_closed_group, mat_json, FormSpec};
use orthomod::matrices::z_lattice_image;
use orthomod::symplectic::GroupKind;
use orthomod::Error;

#[derive(Parser)]
#[command(name = "orthomod", version, about = "Degree-2 modular groups as discriminant kernels of SO0(2,n)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lift a symplectic element to the orthogonal group.
    Lift {
        /// siegel, hermitian, quat-sp, quat-special or quat-extended
        #[arg(long)]
        kind: Option<String>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Evaluate a congruence subgroup predicate and its paired kernel test.
    Check {
        #[arg(long)]
        spec: String,
        #[command(flatten)]
        params: Params,
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Run the forward and backward inclusion checks of a theorem.
    Verify {
        #[arg(long)]
        theorem: String,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `m=3 n=2 N=6`; without it the default parameter grid is used
        #[arg(long, num_args = 1..)]
        params: Vec<String>,
    },
    /// Enumerate the automorphism group of a positive definite form.
    Enumerate {
        #[arg(long)]
        form: String,
    },
    /// The image lattice (Z^k)·S of a form's Gram matrix.
    LatticeInfo {
        #[arg(long)]
        form: String,
        #[command(flatten)]
        params: Params,
    },
}

#[derive(Args)]
struct Params {
    #[arg(long)]
    m: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long = "N")]
    level: Option<u32>,
}

enum Failure {
    Input(String),
    Verification(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<Value, Failure>;

fn read_element(path: &PathBuf, kind: Option<GroupKind>) -> std::result::Result<AnyElem, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: invalid JSON: {e}", path.display())))?;
    AnyElem::from_json(&v, kind).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn lift_cmd(kind: Option<String>, m: Option<u32>, input: &PathBuf) -> Outcome {
    let kind = kind.map(|k| GroupKind::parse(&k, m)).transpose()?;
    let g = read_element(input, kind)?;
    let mt = g.lift()?;
    Ok(json!({ "element": g.to_json(), "lift": mt.to_json() }))
}

fn check_cmd(spec: &str, p: &Params, input: &PathBuf) -> Outcome {
    let spec = SubgroupSpec::parse(spec, p.m, p.n, p.level)?;
    let g = read_element(input, None)?;
    let check = in_subgroup(&spec, &g)?;
    let kernel = if g.half_turn() { None } else { Some(paired_kernel_test(&spec, &g.lift()?)?) };
    let out = json!({
        "spec": spec.to_json(),
        "element": g.to_json(),
        "check": check.to_json(),
        "kernel": kernel,
        "agree": kernel.map(|k| k == check.member),
    });
    match kernel {
        Some(k) if k != check.member => Err(Failure::Verification(out)),
        _ => Ok(out),
    }
}

fn parse_params(theorem: TheoremId, params: &[String]) -> Result<SubgroupSpec, Failure> {
    let (mut m, mut n, mut level) = (None, None, None);
    for p in params.iter().flat_map(|p| p.split(',')).filter(|p| !p.is_empty()) {
        let (key, value) = p.split_once('=').ok_or_else(|| Failure::Input(format!("parameter '{p}' is not key=value")))?;
        let value: u32 = value.parse().map_err(|_| Failure::Input(format!("parameter '{key}' must be a positive integer")))?;
        match key {
            "m" => m = Some(value),
            "n" => n = Some(value),
            "N" => level = Some(value),
            other => return Err(Failure::Input(format!("unknown parameter '{other}'"))),
        }
    }
    Ok(theorem.spec(m, n, level)?)
}

fn verify_cmd(theorem: &str, samples: usize, seed: u64, params: &[String]) -> Outcome {
    let theorem = TheoremId::parse(theorem)?;
    let specs = if params.is_empty() { default_grid(theorem) } else { vec![parse_params(theorem, params)?] };
    let mut reports = Vec::with_capacity(specs.len());
    for spec in &specs {
        let r = verify_theorem(spec, samples, seed)?;
        eprintln!(
            "{spec}: forward {}/{}, backward hits {}, failures {}",
            r.forward_passed,
            samples,
            r.backward_hits,
            r.failures.len()
        );
        reports.push(r);
    }
    let pass = reports.iter().all(|r| r.passed());
    let out = json!({
        "theorem": theorem.name(),
        "samples": samples,
        "seed": seed,
        "pass": pass,
        "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    });
    if pass {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn enumerate_cmd(form: &str) -> Outcome {
    let f = build_form(&FormSpec::parse(form, None, None, None)?)?;
    let elems = enumerate_aut(&f)?;
    Ok(json!({ "form": form, "order": elems.len(), "closed": is_closed_group(&elems) }))
}

fn lattice_cmd(name: &str, p: &Params) -> Outcome {
    let spec = FormSpec::parse(name, p.m, p.n, p.level)?;
    let f = build_form(&spec)?;
    let mut out = json!({ "form": spec.name(), "gram": mat_json(f.gram()), "image": z_lattice_image(f.gram(), None, None).to_json() });
    if let FormSpec::IdealT { m, level } = spec {
        let right = [BigInt::from(1), BigInt::from(level)];
        let scaled = z_lattice_image(f.gram(), None, Some(&right));
        let sk = build_form(&FormSpec::HermitianS { m })?;
        let left = [BigInt::from(level), BigInt::from(1)];
        let reference = z_lattice_image(sk.gram(), Some(&left), None);
        let obj = out.as_object_mut().expect("object");
        obj.insert("scaledImage".into(), scaled.to_json());
        obj.insert("referenceImage".into(), reference.to_json());
        obj.insert("scaledMatchesReference".into(), json!(scaled.lattice == reference.lattice));
    }
    Ok(out)
}

fn configure_threads() -> std::result::Result<(), Failure> {
    let Ok(v) = std::env::var("ORTHOMOD_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Input(format!("ORTHOMOD_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Input(e.to_string()))
}

fn run(cli: Cli) -> Outcome {
    configure_threads()?;
    match cli.command {
        Command::Lift { kind, m, input } => lift_cmd(kind, m, &input),
        Command::Check { spec, params, input } => check_cmd(&spec, &params, &input),
        Command::Verify { theorem, samples, seed, params } => verify_cmd(&theorem, samples, seed, &params),
        Command::Enumerate { form } => enumerate_cmd(&form),
        Command::LatticeInfo { form, params } => lattice_cmd(&form, &params),
    }
}

fn emit(v: &Value) {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize");
    // a closed pipe is not an error of ours
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(v)) => {
            emit(&v);
            eprintln!("verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            emit(&json!({ "error": msg }));
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
