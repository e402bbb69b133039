use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgGroup, Parser, ValueEnum};

use tricubic::gf::FieldCtx;
use tricubic::parse::{parse_ratfn, split_top_level};
use tricubic::pipeline::{compute, render, InputMode, JobSpec, Report, VerifyLevel};
use tricubic::verify::{PmaxVerdict, DEFAULT_BUDGET};
use tricubic::{Error, Field};

/// Discriminant, index and a certified integral basis for an impure cubic
/// function field over F_q(x).
#[derive(Debug, Parser)]
#[command(name = "tricubic", version)]
#[command(group(ArgGroup::new("input").required(true).args(["a", "b", "cubic"])))]
struct Args {
    /// Constant field as P or P^N (a prime power such as 9 is also accepted).
    #[arg(long)]
    field: String,

    /// Defining polynomial of GF(P^N) as "c0,c1,...", lowest degree first.
    #[arg(long)]
    modulus: Option<String>,

    /// Coefficient a of y^3 - 3y - a (characteristic other than 3).
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,

    /// Coefficient b of z^3 + bz + b^2 (characteristic 3).
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,

    /// General cubic X^3 + bX^2 + cX + d given as "b,c,d".
    #[arg(long, allow_hyphen_values = true)]
    cubic: Option<String>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    #[arg(long, value_enum, default_value_t = Level::Full)]
    verify: Level,

    /// Candidate budget for the brute-force checks.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u128,

    /// Write the JSON report to this file instead of standard output.
    #[arg(long, conflicts_with = "pretty")]
    json: Option<PathBuf>,

    /// Print a human-readable summary instead of JSON.
    #[arg(long)]
    pretty: bool,

    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Fast,
    Full,
    Paranoid,
}

impl From<Level> for VerifyLevel {
    fn from(l: Level) -> VerifyLevel {
        match l {
            Level::Fast => VerifyLevel::Fast,
            Level::Full => VerifyLevel::Full,
            Level::Paranoid => VerifyLevel::Paranoid,
        }
    }
}

const EXIT_USAGE: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_BUDGET: u8 = 5;

fn parse_field(src: &str, modulus: Option<&str>) -> Result<Field, String> {
    let src = src.trim();
    let (p, n) = match src.split_once('^') {
        Some((p, n)) => (
            p.trim().parse::<u64>().map_err(|e| format!("bad prime '{p}': {e}"))?,
            n.trim().parse::<usize>().map_err(|e| format!("bad exponent '{n}': {e}"))?,
        ),
        None => {
            let q = src.parse::<u64>().map_err(|e| format!("bad field '{src}': {e}"))?;
            prime_power(q).ok_or_else(|| format!("{q} is not a prime power"))?
        }
    };
    let coeffs = modulus
        .map(|m| {
            m.split(',')
                .map(|c| c.trim().parse::<u64>().map_err(|e| format!("bad modulus coefficient '{c}': {e}")))
                .collect::<Result<Vec<_>, _>>()
        })
        .transpose()?;
    FieldCtx::new(p, n, coeffs.as_deref()).map_err(|e| e.to_string())
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut n = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        n += 1;
    }
    (r == 1).then_some((p, n))
}

fn parse_job(args: &Args) -> Result<JobSpec, String> {
    let field = parse_field(&args.field, args.modulus.as_deref())?;
    let p = field.characteristic();
    let expr = |s: &str| parse_ratfn(&field, s).map_err(|e| e.to_string());
    let input = if let Some(a) = &args.a {
        if p == 3 {
            return Err("characteristic 3 requires --b (z^3 + bz + b^2)".into());
        }
        InputMode::CoeffA(expr(a)?)
    } else if let Some(b) = &args.b {
        if p != 3 {
            return Err(format!("--b is for characteristic 3; use --a in characteristic {p}"));
        }
        InputMode::CoeffB(expr(b)?)
    } else {
        let src = args.cubic.as_deref().expect("clap enforces one input");
        let parts = split_top_level(src);
        if parts.len() != 3 {
            return Err(format!("--cubic expects \"b,c,d\", got {} parts", parts.len()));
        }
        InputMode::GeneralCubic(expr(parts[0])?, expr(parts[1])?, expr(parts[2])?)
    };
    Ok(JobSpec { field, input, verify: args.verify.into(), seed: args.seed, budget: args.budget })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NonPrimeP(_)
        | Error::ReducibleModulus(_)
        | Error::DegreeMismatch { .. }
        | Error::WrongCharacteristic { .. }
        | Error::Parse(_)
        | Error::DivisionByZero
        | Error::ZeroDenominator => EXIT_USAGE,
        Error::PureCubic
        | Error::NotReducibleHere(_)
        | Error::NotStandardForm(_)
        | Error::ReducibleCubic
        | Error::ReducibleInput
        | Error::Inseparable
        | Error::InseparableModel
        | Error::DegenerateInput(_)
        | Error::ZeroInput => EXIT_UNSUPPORTED,
        Error::BudgetExceeded { .. } | Error::IterationCap(_) => EXIT_BUDGET,
        _ => EXIT_VERIFY,
    }
}

fn report_exit_code(r: &Report) -> u8 {
    if !r.verification.passed {
        EXIT_VERIFY
    } else if r.verification.budget_exceeded {
        EXIT_BUDGET
    } else {
        0
    }
}

fn pretty(r: &Report) -> String {
    let mut s = String::new();
    let f = &r.field;
    let q = if f.n == 1 { format!("GF({})", f.p) } else { format!("GF({}^{})", f.p, f.n) };
    let _ = writeln!(s, "field        {q}  modulus {:?}", f.modulus);
    let _ = writeln!(s, "branch       {:?}", r.branch);
    if let Some(orig) = &r.input_coefficient {
        let _ = writeln!(s, "input        {orig}");
    }
    let _ = writeln!(s, "coefficient  {}", r.coefficient);
    let _ = writeln!(s, "generator    {}", r.generator);
    if let Some(scale) = &r.generator_scale {
        let _ = writeln!(s, "             (generator = ({scale}) * y)");
    }
    for st in &r.char3_trace {
        let _ = writeln!(s, "reduced at   {}: {} -> {}", st.prime, st.before, st.after);
    }
    if let Some(h) = &r.hasse {
        let _ = writeln!(s, "resolvent    {}  ~  {}", h.b0, h.b_std);
    }
    let _ = writeln!(s, "disc(omega)  {}", r.delta_omega);
    let _ = writeln!(s, "disc         {}", r.disc.generator);
    let _ = writeln!(s, "index        {}", r.index.generator);
    let _ = writeln!(s, "basis");
    for (k, b) in r.basis.iter().enumerate() {
        let _ = writeln!(s, "  b{k} = ({}) + ({})*g + ({})*g^2, over {}", b.coords[0], b.coords[1], b.coords[2], b.den);
    }
    let v = &r.verification;
    let _ = writeln!(
        s,
        "verification ({:?}): integral {} closed {} disc {} index identity {}",
        v.level, v.integral, v.closed, v.disc_match, v.index_identity
    );
    for e in &v.pmax {
        let verdict = match &e.verdict {
            PmaxVerdict::Maximal => "maximal".to_string(),
            PmaxVerdict::NotMaximal => "NOT maximal".to_string(),
            PmaxVerdict::SkippedBudget { needed } => format!("skipped ({needed} candidates over budget)"),
        };
        let _ = writeln!(s, "  at {}: {verdict}", e.prime);
    }
    if let Some(ok) = v.char3_steps_isomorphic {
        let _ = writeln!(s, "  reduction steps isomorphic: {ok}");
    }
    if let Some(sf) = &v.same_field {
        let _ = writeln!(s, "  same field as input: {sf:?}");
    }
    let _ = writeln!(s, "result       {}", if v.passed { "PASS" } else { "FAIL" });
    if let Some(ms) = r.timing_ms {
        let _ = writeln!(s, "time         {ms} ms");
    }
    s
}

fn main() -> ExitCode {
    let args = Args::parse();
    let job = match parse_job(&args) {
        Ok(j) => j,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let start = Instant::now();
    let outcome = match compute(&job) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let mut report = render(&job, &outcome);
    if args.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    if args.pretty {
        print!("{}", pretty(&report));
    } else {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        match &args.json {
            Some(path) => {
                if let Err(e) = std::fs::write(path, json + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(EXIT_USAGE);
                }
            }
            None => println!("{json}"),
        }
    }
    ExitCode::from(report_exit_code(&report))
}
