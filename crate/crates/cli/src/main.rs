use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cuntz_fock::quant::{parse_fermion_expr, Limits};
use cuntz_fock::verification::{run_suite, SuiteConfig, SUITE_NAMES};
use cuntz_fock::{
    enumerate_grade, forward, forward_operational, gp_vector, inverse, BosonMonomial,
    CorrespondencePair, Error, OperatorExpr, RadicalScalar, RepSpace, State, TailWord,
};
use serde_json::json;

mod graph;

/// Exact boson/fermion correspondence on the Cuntz representation P2(1).
#[derive(Parser)]
#[command(name = "cuntz-fock", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Image of a boson monomial, e.g. "1^2 3".
    Map {
        expr: String,
        /// Also compute the image by operator action and compare.
        #[arg(long)]
        check: bool,
    },
    /// Preimage of a fermion monomial, e.g. "1 2 4".
    Unmap {
        expr: String,
        #[arg(long)]
        check: bool,
    },
    /// All n-particle monomials with their images.
    Table {
        #[arg(short = 'n', long)]
        particles: u64,
        #[arg(short = 'm', long = "max-mode", default_value_t = 6)]
        max_mode: u64,
        #[arg(long, value_enum, default_value_t = Format::Tsv)]
        format: Format,
    },
    /// Run verification suites and print JSON reports.
    Verify {
        #[arg(required = true, value_parser = clap::builder::PossibleValuesParser::new(SUITE_NAMES))]
        suites: Vec<String>,
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, default_value_t = 5)]
        modes: u64,
        #[arg(long, default_value_t = 4)]
        particles: u64,
        #[arg(long, default_value_t = 12)]
        max_subset: u64,
        #[arg(short = 'p')]
        p: Option<u64>,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 4096)]
        oracle_dim: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Apply an operator product such as "b1* a2 t1" to a basis vector.
    Apply {
        ops: String,
        /// Space P2(J); the start vector is its GP vector.
        #[arg(long, default_value = "1")]
        space: String,
        /// Start from this basis word instead, e.g. "2(1)" or "1(21)@1".
        #[arg(long, conflicts_with = "space")]
        word: Option<String>,
    },
    /// DOT rendering of the basis tree of P2(J).
    Graph {
        #[arg(long, default_value = "1")]
        space: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = graph::Label::Words)]
        label: graph::Label,
        #[arg(long, value_enum, default_value_t = graph::Gens::Cuntz)]
        gens: graph::Gens,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

/// Failure with its exit status: 1 verification, 2 usage or parse, 3 bound refusal.
struct Fail(u8, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BoundExceeded { .. } => 3,
            Error::Parse(_)
            | Error::Invalid(_)
            | Error::NotAFermionVector(_)
            | Error::NotInFockSpace(_) => 2,
            _ => 1,
        };
        Fail(code, e.to_string())
    }
}

type Out = Result<String, Fail>;

fn bound(what: &'static str, value: u64, limit: u64) -> Result<(), Fail> {
    if value > limit {
        return Err(Error::BoundExceeded { what, value, limit }.into());
    }
    Ok(())
}

fn pair_json(p: &CorrespondencePair, relation: &str) -> serde_json::Value {
    json!({
        "boson": p.boson,
        "fermion": p.fermion,
        "relation": relation,
        "coeff": p.coeff,
        "decimal": p.coeff.to_decimal(),
    })
}

fn pair_text(p: &CorrespondencePair, relation: &str, name: &str) -> String {
    format!(
        "boson     {}\nfermion   {}\nrelation  {relation}\n{name:<9} {}\ndecimal   {}\n",
        p.boson,
        p.fermion,
        p.coeff,
        p.coeff.to_decimal()
    )
}

fn cmd_map(expr: &str, check: bool, as_json: bool) -> Out {
    let m: BosonMonomial = expr.parse()?;
    Limits::default().check_boson(&m)?;
    let pair = forward(&m);
    let checked = if check {
        let op = forward_operational(&m, &Limits::default())?;
        if op != pair {
            return Err(Fail(
                1,
                format!("operator action gives {} with C = {}", op.fermion, op.coeff),
            ));
        }
        Some(true)
    } else {
        None
    };
    let relation = "b*_M Ω = C · a*_S Ω";
    Ok(if as_json {
        let mut v = pair_json(&pair, relation);
        if let Some(c) = checked {
            v["check"] = json!(c);
        }
        v.to_string() + "\n"
    } else {
        let mut s = pair_text(&pair, relation, "C");
        if checked.is_some() {
            s.push_str("check     operator action agrees\n");
        }
        s
    })
}

fn cmd_unmap(expr: &str, check: bool, as_json: bool) -> Out {
    let signed = parse_fermion_expr(expr)?;
    Limits::default().check_fermion(&signed.subset)?;
    let mut pair = inverse(&signed.subset);
    // unsorted input carries the reordering sign
    if signed.sign < 0 {
        pair.coeff = pair.coeff.neg();
    }
    if check {
        let op = forward_operational(&pair.boson, &Limits::default())?;
        let product = op.coeff.mul(&pair.coeff);
        let expected = RadicalScalar::from_integer(signed.sign as i64);
        if op.fermion != signed.subset || product != expected {
            return Err(Fail(
                1,
                format!("operator action gives {} with C = {}", op.fermion, op.coeff),
            ));
        }
    }
    let relation = "a*_S Ω = D · b*_M Ω";
    Ok(if as_json {
        let mut v = pair_json(&pair, relation);
        v["sign"] = json!(signed.sign);
        if check {
            v["check"] = json!(true);
        }
        v.to_string() + "\n"
    } else {
        let mut s = pair_text(&pair, relation, "D");
        if check {
            s.push_str("check     operator action agrees\n");
        }
        s
    })
}

fn cmd_table(n: u64, max_mode: u64, format: Format) -> Out {
    let rows = enumerate_grade(n, max_mode, &Limits::default())?;
    Ok(match format {
        Format::Json => {
            let v: Vec<_> = rows
                .iter()
                .map(|p| pair_json(p, "b*_M Ω = C · a*_S Ω"))
                .collect();
            serde_json::Value::Array(v).to_string() + "\n"
        }
        Format::Tsv => {
            let mut s = String::from("boson\tfermion\tC\tdecimal\n");
            for p in &rows {
                s.push_str(&p.tsv_row());
                s.push('\n');
            }
            s
        }
    })
}

fn cmd_verify(suites: &[String], cfg: SuiteConfig, jobs: usize) -> Out {
    bound("depth", cfg.depth as u64, 12)?;
    bound("modes", cfg.modes, 8)?;
    bound("particles", cfg.particles, 6)?;
    bound("max-subset", cfg.max_subset, 16)?;
    bound("samples", cfg.oracle_samples as u64, 100_000)?;
    bound("oracle-dim", cfg.oracle_dim as u64, 1 << 14)?;
    if !cfg.oracle_dim.is_power_of_two() {
        return Err(Fail(
            2,
            format!("oracle dimension {} is not a power of two", cfg.oracle_dim),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Fail(1, e.to_string()))?;
    let reports = pool.install(|| {
        suites
            .iter()
            .map(|s| run_suite(s, &cfg))
            .collect::<cuntz_fock::Result<Vec<_>>>()
    })?;
    let pass = reports.iter().all(|r| r.pass);
    for r in &reports {
        eprintln!(
            "{}: {} ({} cases, {} failures)",
            r.suite,
            if r.pass { "PASS" } else { "FAIL" },
            r.cases,
            r.failures.len()
        );
    }
    let v = json!({
        "pass": pass,
        "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
    });
    let text = serde_json::to_string_pretty(&v).expect("report serializes") + "\n";
    if pass {
        Ok(text)
    } else {
        print!("{text}");
        Err(Fail(1, "verification failed".into()))
    }
}

fn check_modes(op: &OperatorExpr, lim: &Limits) -> cuntz_fock::Result<()> {
    match op {
        OperatorExpr::Boson { mode, .. } | OperatorExpr::Fermion { mode, .. } => {
            lim.check_mode(*mode)
        }
        OperatorExpr::S(m) | OperatorExpr::SStar(m) => lim.check_mode(*m),
        OperatorExpr::Product(xs) => xs.iter().try_for_each(|x| check_modes(x, lim)),
        _ => Ok(()),
    }
}

fn cmd_apply(ops: &str, space: &str, word: Option<&str>, as_json: bool) -> Out {
    let op = OperatorExpr::parse_product(ops)?;
    check_modes(&op, &Limits::default())?;
    let start = match word {
        Some(w) => {
            let w: TailWord = w.parse()?;
            let sp = RepSpace::new(cuntz_fock::FiniteWord::new(w.period().to_vec()))?;
            bound("|J|", sp.word().len() as u64, 8)?;
            State::unit(&sp, w)?
        }
        None => {
            let sp: RepSpace = space.parse()?;
            bound("|J|", sp.word().len() as u64, 8)?;
            gp_vector(&sp)
        }
    };
    let out = op.apply(&start);
    Ok(if as_json {
        json!({ "operator": op.to_string(), "input": start, "output": out }).to_string() + "\n"
    } else {
        format!("{out}\n")
    })
}

fn dispatch(cli: Cli) -> Out {
    match cli.cmd {
        Cmd::Map { expr, check } => cmd_map(&expr, check, cli.json),
        Cmd::Unmap { expr, check } => cmd_unmap(&expr, check, cli.json),
        Cmd::Table {
            particles,
            max_mode,
            format,
        } => {
            let format = if cli.json { Format::Json } else { format };
            cmd_table(particles, max_mode, format)
        }
        Cmd::Verify {
            suites,
            depth,
            modes,
            particles,
            max_subset,
            p,
            samples,
            oracle_dim,
            seed,
            jobs,
        } => {
            let cfg = SuiteConfig {
                depth,
                modes,
                particles,
                max_subset,
                p,
                oracle_dim,
                oracle_samples: samples,
                seed,
            };
            cmd_verify(&suites, cfg, jobs)
        }
        Cmd::Apply { ops, space, word } => cmd_apply(&ops, &space, word.as_deref(), cli.json),
        Cmd::Graph {
            space,
            depth,
            label,
            gens,
        } => {
            let sp: RepSpace = space.parse()?;
            graph::render(&sp, depth, label, gens).map_err(Fail::from)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match dispatch(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
