mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use padic_hg::charsum::CharOracle;
use padic_hg::ffield::{trace_of_frobenius, Weierstrass};
use padic_hg::gfunc::{choose_precision, evaluate_g, trace_sum_bound};
use padic_hg::suite::{run_suite, SuiteName, SuiteOptions};
use padic_hg::{build_field, CurveSpec, Error, ExactRational, FqElem, FqField, GParams, PadicCtx};

use output::{emit, Format};

#[derive(Parser)]
#[command(name = "padic-hg", version, about = "p-adic hypergeometric functions over finite fields")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate nGn[top; bottom | t] over F_{p^r}.
    EvalG(EvalG),
    /// Count points and the Frobenius trace of a curve over F_{p^r}.
    Trace(Trace),
    /// Run a verification suite.
    Verify(Verify),
    /// Complex character-sum oracles.
    #[command(subcommand)]
    Oracle(Oracle),
}

#[derive(Args)]
struct FieldArgs {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    r: u32,
}

impl FieldArgs {
    fn build(&self) -> Result<FqField, Failure> {
        Ok(build_field(self.p, self.r)?)
    }
}

#[derive(Args)]
struct EvalG {
    #[command(flatten)]
    field: FieldArgs,
    /// Comma-separated rationals `n/d`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    top: Vec<String>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    bottom: Vec<String>,
    /// Base-p encoding `0..q-1`, a base-field integer, or `n/d`.
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    /// Raise the p-adic precision above the default.
    #[arg(long)]
    precision: Option<u32>,
    /// Largest |integer| to reconstruct; defaults to 4 sqrt(q) + 4.
    #[arg(long)]
    bound: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Legendre,
    A1a3,
    Fg,
    Cd,
    Weierstrass,
}

#[derive(Args)]
struct Trace {
    #[arg(long, value_enum)]
    family: Family,
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a3: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a4: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a6: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
}

#[derive(Args)]
struct Verify {
    #[arg(long)]
    suite: String,
    #[arg(long)]
    pmax: Option<u64>,
    #[arg(long)]
    rmax: Option<u32>,
    /// Random parameter choices per field for the sampled suites.
    #[arg(long, default_value_t = 30)]
    samples: usize,
    #[arg(long, default_value_t = SuiteOptions::default().seed)]
    seed: u64,
}

#[derive(Subcommand)]
enum Oracle {
    /// The Gauss sum g(T^k) for a generator character T.
    Gauss {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
    },
    /// The Jacobi sum J(T^a, T^b).
    Jacobi {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
    },
    /// Davenport-Hasse product relation for T^psi and m | q - 1.
    Dh {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        m: i64,
        #[arg(long, allow_hyphen_values = true)]
        psi: i64,
    },
    /// Greene's n+1Fn with characters given as powers of T.
    Greene {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        top: Vec<i64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        bottom: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
}

/// A command outcome that is not a plain success.
enum Failure {
    Usage(String, String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPrime(_)
            | Error::DegreeTooLarge { .. }
            | Error::FieldTooLarge(_)
            | Error::InvalidParameters(_) => Failure::Usage(e.name().into(), e.to_string()),
            e => Failure::Math(e),
        }
    }
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure::Usage("UsageError".into(), msg.into())
    }

    fn payload(&self) -> (Value, u8) {
        match self {
            Failure::Usage(name, msg) => (json!({ "error": name, "message": msg }), 2),
            Failure::Math(e) => (json!({ "error": e.name(), "message": e.to_string() }), 3),
        }
    }
}

/// A payload and whether the command's check held.
type Outcome = Result<(Value, bool), Failure>;

fn parse_rational(s: &str) -> Result<ExactRational, Failure> {
    s.parse()
        .map_err(|_| Failure::Usage("ParseError".into(), format!("not a rational: {s:?}")))
}

/// `n/d` reduces into F_p; an integer in `0..q` is a base-p encoding; any
/// other integer reduces mod p.
fn parse_elem(s: &str, field: &FqField) -> Result<FqElem, Failure> {
    if s.contains('/') {
        let x = parse_rational(s)?;
        return field
            .from_rational(&x)
            .ok_or_else(|| Error::DenominatorDivisibleByP(x.to_string()).into());
    }
    let n: i64 = s
        .trim()
        .parse()
        .map_err(|_| Failure::Usage("ParseError".into(), format!("not a field element: {s:?}")))?;
    Ok(match u64::try_from(n) {
        Ok(e) if e < field.q() => field.from_encoding(e).expect("in range"),
        _ => field.from_int(n),
    })
}

fn eval_g(a: &EvalG) -> Outcome {
    let field = a.field.build()?;
    let top = a.top.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
    let bottom = a.bottom.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>, _>>()?;
    let t = parse_elem(&a.t, &field)?;
    let params = GParams::new(top, bottom, t)?;
    let bound = a.bound.unwrap_or_else(|| trace_sum_bound(field.q()));
    let n = choose_precision(field.p(), bound).max(a.precision.unwrap_or(0));
    let start = Instant::now();
    let ctx = PadicCtx::new(&field, n)?;
    let v = evaluate_g(&params, &field, &ctx)?;
    let integer = v.clone().with_integer(bound).ok().and_then(|v| v.integer);
    let elapsed = start.elapsed().as_millis() as u64;
    let modulus = (field.p() as u128).pow(v.padic.precision);
    Ok((
        json!({
            "padic_value": {
                "residue": v.padic.value,
                "modulus": modulus.to_string(),
                "scale": v.scale,
            },
            "precision": v.precision,
            "integer": integer,
            "elapsed_ms": elapsed,
        }),
        true,
    ))
}

fn trace(a: &Trace) -> Outcome {
    let field = a.field.build()?;
    let get = |name: &str, v: &Option<String>| -> Result<FqElem, Failure> {
        match v {
            Some(s) => parse_elem(s, &field),
            None => Err(Failure::usage(format!("--{name} is required for this family"))),
        }
    };
    let zero_default = |v: &Option<String>| -> Result<FqElem, Failure> {
        v.as_deref().map_or(Ok(field.zero()), |s| parse_elem(s, &field))
    };
    let curve = match a.family {
        Family::Legendre => CurveSpec::Legendre { lambda: get("lambda", &a.lambda)? },
        Family::A1a3 => CurveSpec::A1A3 { a1: get("a1", &a.a1)?, a3: get("a3", &a.a3)? },
        Family::Fg => CurveSpec::FG { f: get("f", &a.f)?, g: get("g", &a.g)? },
        Family::Cd => CurveSpec::CD { c: get("c", &a.c)?, d: get("d", &a.d)? },
        Family::Weierstrass => CurveSpec::Weierstrass(Weierstrass {
            a1: zero_default(&a.a1)?,
            a2: zero_default(&a.a2)?,
            a3: zero_default(&a.a3)?,
            a4: zero_default(&a.a4)?,
            a6: zero_default(&a.a6)?,
        }),
    };
    let tr = trace_of_frobenius(&curve, &field)?;
    let count = field.q() as i64 + 1 - tr;
    let hasse_ok = (tr as i128).pow(2) <= 4 * field.q() as i128;
    Ok((json!({ "count": count, "trace": tr, "hasse_ok": hasse_ok }), hasse_ok))
}

fn verify(a: &Verify) -> Outcome {
    let name: SuiteName = a.suite.parse()?;
    let opts = SuiteOptions {
        pmax: a.pmax,
        rmax: a.rmax,
        samples: a.samples,
        seed: a.seed,
    };
    let report = run_suite(name, &opts)?;
    let ok = report.all_passed();
    Ok((serde_json::to_value(&report).expect("report serializes"), ok))
}

fn complex(z: num_complex::Complex64) -> Value {
    json!({ "re": z.re, "im": z.im, "abs": z.norm() })
}

fn oracle(o: &Oracle) -> Outcome {
    match o {
        Oracle::Gauss { field, k } => {
            let f = field.build()?;
            let or = CharOracle::new(&f)?;
            Ok((json!({ "k": k, "gauss_sum": complex(or.gauss_sum(*k)) }), true))
        }
        Oracle::Jacobi { field, a, b } => {
            let f = field.build()?;
            let or = CharOracle::new(&f)?;
            Ok((json!({ "a": a, "b": b, "jacobi_sum": complex(or.jacobi_sum(*a, *b)) }), true))
        }
        Oracle::Dh { field, m, psi } => {
            let f = field.build()?;
            let or = CharOracle::new(&f)?;
            let holds = or.davenport_hasse_check(*m, *psi)?;
            Ok((json!({ "m": m, "psi": psi, "holds": holds }), holds))
        }
        Oracle::Greene { field, top, bottom, x } => {
            let f = field.build()?;
            let or = CharOracle::new(&f)?;
            let x = parse_elem(x, &f)?;
            let v = or.greene_f(top, bottom, x)?;
            Ok((json!({ "value": complex(v) }), true))
        }
    }
}

fn threads_from_env() -> Result<Option<usize>, Failure> {
    match std::env::var("PADIC_HG_THREADS") {
        Err(_) => Ok(None),
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(Failure::usage(format!("PADIC_HG_THREADS must be a positive integer, got {s:?}"))),
        },
    }
}

/// Suites use up to `PADIC_HG_THREADS` workers; other commands use one.
fn run(cli: &Cli) -> Outcome {
    let cap = threads_from_env()?;
    let threads = match cli.command {
        Command::Verify(_) => cap.unwrap_or(0),
        _ => 1,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::usage(e.to_string()))?;
    pool.install(|| match &cli.command {
        Command::EvalG(a) => eval_g(a),
        Command::Trace(a) => trace(a),
        Command::Verify(a) => verify(a),
        Command::Oracle(o) => oracle(o),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let (payload, code) = Failure::usage(e.to_string().trim_end()).payload();
            emit(&payload, Format::Json);
            return ExitCode::from(code);
        }
    };
    let (payload, code) = match run(&cli) {
        Ok((payload, ok)) => (payload, if ok { 0 } else { 1 }),
        Err(f) => f.payload(),
    };
    emit(&payload, cli.format);
    ExitCode::from(code)
}
