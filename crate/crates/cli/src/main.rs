mod source;

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flagvec::cdindex::{cd_coefficient, cd_index, cd_index_symbolic, cd_word_to_flag_form, toric_g, CdWord};
use flagvec::families::{
    candidate_6d, candidate_7d, connected_sum_f, convexity5_scan, logconv_scan, properties, strict_dip,
    PropertyReport, Verdict,
};
use flagvec::flagalg::{complete_from_sparse, euler_check};
use flagvec::forms::{check_candidate, g_forms, CandidateReport, ConvExpr};
use flagvec::scalar::{approx_decimal, rational_to_string};
use flagvec::verify::{self, DEFAULT_SEED};
use flagvec::{Error, FVector, FlagVector, Form, Rational};
use num_bigint::{BigInt, Sign};
use serde_json::{json, Map, Value};

use source::{Family, Operand};

/// Exact flag-vector combinatorics of convex polytopes.
#[derive(Parser, Debug)]
#[command(name = "flagvec", version)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Omit run metadata (timings, version) from reports.
    #[arg(long, global = true)]
    no_meta: bool,
    /// Seed for randomized property sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// f-vector of a family member.
    Generate(GenerateArgs),
    /// (C)/(L)/(U)/(B) verdicts for an f-vector.
    Check(CheckArgs),
    /// Flag vector of a family member, or completion of sparse flag data.
    Flags(FlagsArgs),
    /// cd-index, a single cd coefficient, or cd-words as flag forms.
    Cdindex(CdArgs),
    /// Convolution of flag forms.
    Convolve(ConvolveArgs),
    /// The 6- and 7-dimensional candidate flag vectors, screened.
    Candidates(CandidatesArgs),
    /// Exact scans over a range of n.
    Scan(ScanArgs),
    /// Run the whole verification suite.
    VerifyPaper,
}

#[derive(Args, Debug)]
struct Shape {
    #[arg(short = 'd')]
    d: Option<usize>,
    #[arg(short = 'n')]
    n: Option<usize>,
    /// Use the dual polytope.
    #[arg(long)]
    dual: bool,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(value_enum)]
    family: Family,
    #[command(flatten)]
    shape: Shape,
    /// Simplicial summand of a connected sum, e.g. `cyclic:7:10`.
    #[arg(long)]
    left: Option<String>,
    /// Simple summand of a connected sum, e.g. `cyclic-dual:7:10`.
    #[arg(long)]
    right: Option<String>,
}

#[derive(Args, Debug)]
struct CheckArgs {
    /// Comma-separated f-vector, or `@path` to a file holding one (plain
    /// or as JSON `{"f": [...]}`).
    vector: String,
    /// Expected dimension.
    #[arg(short = 'd')]
    d: Option<usize>,
}

#[derive(Args, Debug)]
struct FlagsArgs {
    #[arg(value_enum)]
    family: Option<Family>,
    #[command(flatten)]
    shape: Shape,
    /// Print only the sparse-basis entries.
    #[arg(long)]
    sparse: bool,
    /// Complete the sparse flag data in this JSON file instead.
    #[arg(long, value_name = "FILE", conflicts_with = "family")]
    complete: Option<String>,
}

#[derive(Args, Debug)]
struct CdArgs {
    #[arg(value_enum)]
    family: Option<Family>,
    #[command(flatten)]
    shape: Shape,
    /// Print only the coefficient of this cd-word.
    #[arg(long, value_name = "WORD")]
    coeff: Option<String>,
    /// Express cd coefficients as flag forms in dimension `-d`.
    #[arg(long, conflicts_with = "family")]
    symbolic: bool,
    /// Also print the toric g-vector.
    #[arg(long)]
    toric: bool,
}

#[derive(Args, Debug)]
struct ConvolveArgs {
    /// Forms to convolve, left to right: `g0:D`, `g1:D`, `D:<form>` (e.g.
    /// `2:f_0 - 3`) or `@path` to a JSON form.
    #[arg(required = true, num_args = 1..)]
    operands: Vec<String>,
    /// Reduce the result to the sparse basis.
    #[arg(long)]
    reduce: bool,
    /// Evaluate on a polytope both by index shifting and by summing over
    /// faces, e.g. `cyclic:5:8`.
    #[arg(long, value_name = "POLYTOPE")]
    on: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Candidate {
    #[value(name = "6d")]
    Six,
    #[value(name = "7d")]
    Seven,
}

#[derive(Args, Debug)]
struct CandidatesArgs {
    #[arg(value_enum)]
    which: Candidate,
    /// Family parameter (or range `a..b`) for the 6-dimensional family.
    #[arg(long, default_value = "0")]
    ell: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ScanKind {
    Logconv7,
    Convexity5,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(value_enum)]
    kind: ScanKind,
    /// Inclusive range `a..b`.
    #[arg(long = "n", value_name = "RANGE")]
    range: String,
}

/// Error with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotEulerian(_) | Error::FaceNotInLattice | Error::MissingEntry(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::usage(format!("invalid JSON: {e}"))
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Generate(a) => generate(cli, a),
        Command::Check(a) => check(cli, a),
        Command::Flags(a) => flags(cli, a),
        Command::Cdindex(a) => cdindex(cli, a),
        Command::Convolve(a) => convolve(cli, a),
        Command::Candidates(a) => candidates(cli, a),
        Command::Scan(a) => scan(cli, a),
        Command::VerifyPaper => verify_paper(cli),
    }
}

fn read_arg(text: &str) -> Result<String, Failure> {
    match text.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}"))),
        None => Ok(text.to_string()),
    }
}

fn strings<T: ToString>(xs: impl IntoIterator<Item = T>) -> Vec<Value> {
    xs.into_iter().map(|x| Value::String(x.to_string())).collect()
}

fn f_json(f: &FVector) -> Value {
    json!({ "d": f.dim(), "f": strings(f.components()) })
}

fn f_csv(f: &FVector) -> String {
    let header: Vec<String> = (0..f.dim()).map(|i| format!("f{i}")).collect();
    format!("{}\n{}", header.join(","), f.to_csv())
}

fn parse_range(text: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::usage(format!("bad range {text:?}; expected a..b"));
    let num = |s: &str| s.trim().parse::<u64>().map_err(|_| bad());
    match text.split_once("..") {
        Some((a, b)) => Ok((num(a)?, num(b.trim_start_matches('='))?)),
        None => num(text).map(|a| (a, a)),
    }
}

fn generate(cli: &Cli, a: &GenerateArgs) -> Outcome {
    let f = if a.family == Family::ConnectedSum {
        let (Some(left), Some(right)) = (&a.left, &a.right) else {
            return Err(Failure::usage("connected-sum needs --left and --right"));
        };
        let p: Operand = left.parse()?;
        let q: Operand = right.parse()?;
        if p.simplicial != Some(true) {
            eprintln!("warning: {} is not known to be simplicial; the f-vector formula may not apply", p.label);
        }
        if q.simple != Some(true) {
            eprintln!("warning: {} is not known to be simple; the f-vector formula may not apply", q.label);
        }
        connected_sum_f(&p.f, &q.f)?
    } else {
        source::f_vector(a.family, a.shape.d, a.shape.n, a.shape.dual)?
    };
    match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => println!("{}", f_csv(&f)),
        Format::Json => println!("{}", f_json(&f)),
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_f_vector(text: &str) -> Result<FVector, Failure> {
    let text = text.trim();
    if text.starts_with('{') {
        let v: Value = serde_json::from_str(text)?;
        let items = v
            .get("f")
            .and_then(Value::as_array)
            .ok_or_else(|| Failure::usage("JSON f-vector needs an \"f\" array"))?;
        let parts: Vec<String> = items
            .iter()
            .map(|x| match x {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            })
            .collect();
        Ok(parts.join(",").parse()?)
    } else {
        Ok(text.parse()?)
    }
}

fn validate(f: &FVector, d: Option<usize>) -> Result<(), Failure> {
    let dim = f.dim();
    if let Some(d) = d {
        if d != dim {
            return Err(Failure::usage(format!("expected {d} components, got {dim}")));
        }
    }
    if dim == 0 {
        return Err(Failure::usage("empty f-vector"));
    }
    if f.components().iter().any(|x| x.sign() != Sign::Plus) {
        return Err(Failure::usage("f-vector components must be positive"));
    }
    let least = BigInt::from(dim + 1);
    if *f.get(0) < least || *f.get(dim - 1) < least {
        return Err(Failure::usage(format!(
            "a {dim}-polytope has at least {least} vertices and facets; got {f}"
        )));
    }
    Ok(())
}

fn verdict_json(v: &Verdict) -> Value {
    json!({ "holds": v.holds, "witness": v.witness })
}

fn properties_json(p: &PropertyReport) -> Value {
    json!({
        "C": verdict_json(&p.convex),
        "L": verdict_json(&p.log_convex),
        "U": verdict_json(&p.unimodal),
        "B": verdict_json(&p.barany),
    })
}

fn check(cli: &Cli, a: &CheckArgs) -> Outcome {
    let f = parse_f_vector(&read_arg(&a.vector)?)?;
    validate(&f, a.d)?;
    let p = properties(&f);
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let doc = json!({
                "d": f.dim(),
                "f": strings(f.components()),
                "euler": euler_check(&f),
                "properties": properties_json(&p),
                "strict_dip": strict_dip(&f),
            });
            println!("{doc}");
        }
        Format::Csv => {
            println!("property,holds,witness");
            for (name, v) in [("C", p.convex), ("L", p.log_convex), ("U", p.unimodal), ("B", p.barany)] {
                println!("{name},{},{}", v.holds, v.witness.map_or(String::new(), |k| k.to_string()));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn family_lattice(family: Option<Family>, shape: &Shape) -> Result<flagvec::FaceLattice, Failure> {
    let family = family.ok_or_else(|| Failure::usage("a polytope family is required"))?;
    Ok(source::lattice(family, shape.d, shape.n, shape.dual)?)
}

fn print_flags(cli: &Cli, v: &FlagVector) {
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => println!("{}", v.to_json()),
        Format::Csv => {
            println!("S,f_S");
            for (s, x) in v.entries() {
                println!("{},{x}", s.key());
            }
        }
    }
}

fn flags(cli: &Cli, a: &FlagsArgs) -> Outcome {
    let v = match &a.complete {
        Some(path) => {
            let doc: Value = serde_json::from_str(&read_arg(&format!("@{path}"))?)?;
            complete_from_sparse(&FlagVector::from_json(&doc)?)?
        }
        None => family_lattice(a.family, &a.shape)?.flag_vector(),
    };
    let v = if a.sparse { v.restrict_to_sparse()? } else { v };
    print_flags(cli, &v);
    Ok(ExitCode::SUCCESS)
}

fn cdindex(cli: &Cli, a: &CdArgs) -> Outcome {
    let word = a.coeff.as_deref().map(str::parse::<CdWord>).transpose()?;
    if a.symbolic {
        let d = a.shape.d.ok_or_else(|| Failure::usage("--symbolic needs -d"))?;
        return cd_symbolic(cli, d, word.as_ref());
    }
    let lattice = family_lattice(a.family, &a.shape)?;
    if let Some(u) = word {
        let x = cd_coefficient(&lattice.flag_vector(), &u)?;
        match cli.format {
            Some(Format::Json) => println!("{}", json!({ "word": u.to_string(), "value": rational_to_string(&x) })),
            Some(Format::Csv) => println!("word,value\n{u},{}", rational_to_string(&x)),
            None => println!("{}", rational_to_string(&x)),
        }
        return Ok(ExitCode::SUCCESS);
    }
    let psi = cd_index(&lattice)?;
    let g = if a.toric { Some(toric_g(&lattice)?) } else { None };
    match cli.format {
        Some(Format::Json) => {
            let mut doc = json!({ "d": lattice.dim(), "cd": psi.to_string(), "coeffs": psi.to_json() });
            if let Some(g) = &g {
                doc["toric_g"] = Value::Array(strings(&g.g));
                doc["toric_h"] = Value::Array(strings(&g.h));
            }
            println!("{doc}");
        }
        Some(Format::Csv) => {
            println!("word,coeff");
            for (u, c) in &psi.terms {
                println!("{u},{}", rational_to_string(c));
            }
        }
        None => {
            println!("{psi}");
            println!("{}", json!(psi.to_json()));
            if let Some(g) = &g {
                let join = |xs: &[BigInt]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
                println!("toric g = ({})", join(&g.g));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cd_symbolic(cli: &Cli, d: usize, word: Option<&CdWord>) -> Outcome {
    let entries: Vec<(String, Form)> = match word {
        Some(u) => vec![(u.to_string(), cd_word_to_flag_form(u, d)?)],
        None => cd_index_symbolic(d)?
            .terms
            .iter()
            .map(|(u, m)| (u.to_string(), m.clone()))
            .collect(),
    };
    match cli.format {
        Some(Format::Json) => {
            let map: Map<String, Value> = entries.iter().map(|(u, m)| (u.clone(), m.to_json())).collect();
            println!("{}", Value::Object(map));
        }
        Some(Format::Csv) => {
            println!("word,form");
            for (u, m) in &entries {
                println!("{u},{m}");
            }
        }
        None if word.is_some() => println!("{}", entries[0].1),
        None => {
            for (u, m) in &entries {
                println!("{u}: {m}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_operand(text: &str) -> Result<Form, Failure> {
    if text.starts_with('@') {
        let doc: Value = serde_json::from_str(&read_arg(text)?)?;
        return Ok(Form::from_json(&doc)?);
    }
    let bad = || Failure::usage(format!("bad form operand {text:?}"));
    let (head, body) = text.split_once(':').ok_or_else(bad)?;
    let d = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    match head.trim() {
        "g0" => Ok(g_forms::<Rational>(d(body)?).0),
        "g1" => Ok(g_forms::<Rational>(d(body)?).1),
        dim => Ok(Form::parse(d(dim)?, body)?),
    }
}

fn convolve(cli: &Cli, a: &ConvolveArgs) -> Outcome {
    let mut operands = a.operands.iter().map(|t| parse_operand(t).map(ConvExpr::form));
    let first = operands.next().expect("clap requires an operand")?;
    let expr = operands.try_fold(first, |acc, m| m.map(|m| acc.conv(m)))?;
    let product = expr.to_form()?;
    let product = if a.reduce { product.reduce() } else { product };
    let values = match &a.on {
        Some(spec) => {
            let lattice = source::lattice_spec(spec)?;
            let by_index = product.evaluate(&lattice.flag_vector())?;
            let by_faces = expr.eval_on_lattice(&lattice)?;
            Some((rational_to_string(&by_index), rational_to_string(&by_faces)))
        }
        None => None,
    };
    match cli.format {
        Some(Format::Json) => {
            let mut doc = product.to_json();
            if let Some((i, f)) = &values {
                doc["value_by_index"] = json!(i);
                doc["value_by_faces"] = json!(f);
            }
            println!("{doc}");
        }
        Some(Format::Csv) => {
            println!("S,coeff");
            for (s, c) in product.terms() {
                println!("{},{}", s.key(), rational_to_string(c));
            }
        }
        None => {
            println!("{product}");
            if let Some((i, f)) = &values {
                println!("value by index shift = {i}, by face sum = {f}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn candidate_json(ell: Option<u64>, r: &CandidateReport) -> Result<Value, Failure> {
    let battery: Map<String, Value> =
        r.battery.iter().map(|(n, x)| (n.clone(), Value::String(rational_to_string(x)))).collect();
    let star: Map<String, Value> = r.star.iter().map(|(n, ok)| (n.clone(), Value::Bool(*ok))).collect();
    let mut doc = json!({
        "d": r.d,
        "f": strings(r.f_vector.components()),
        "sparse": r.flag_vector.restrict_to_sparse()?.to_json()["entries"],
        "euler": r.euler,
        "gds": r.gds,
        "battery": battery,
        "battery_holds": r.battery_holds,
        "properties": properties_json(&r.properties),
        "star": star,
    });
    if let Some(ell) = ell {
        doc["ell"] = json!(ell);
    }
    Ok(doc)
}

fn candidates(cli: &Cli, a: &CandidatesArgs) -> Outcome {
    let rows: Vec<(Option<u64>, CandidateReport)> = match a.which {
        Candidate::Six => {
            let (lo, hi) = parse_range(&a.ell)?;
            if lo > hi {
                return Err(Failure::usage(format!("empty range {}", a.ell)));
            }
            (lo..=hi)
                .map(|ell| Ok((Some(ell), check_candidate(&candidate_6d(ell))?)))
                .collect::<Result<_, Failure>>()?
        }
        Candidate::Seven => vec![(None, check_candidate(&candidate_7d())?)],
    };
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let docs = rows.iter().map(|(ell, r)| candidate_json(*ell, r)).collect::<Result<Vec<_>, _>>()?;
            let out = if docs.len() == 1 { docs.into_iter().next().expect("one row") } else { Value::Array(docs) };
            println!("{out}");
        }
        Format::Csv => {
            let d = rows[0].1.d;
            let fs: Vec<String> = (0..d).map(|i| format!("f{i}")).collect();
            println!("ell,{},battery,C,L,U,B,star", fs.join(","));
            for (ell, r) in &rows {
                let p = &r.properties;
                println!(
                    "{},{},{},{},{},{},{},{}",
                    ell.map_or(String::new(), |e| e.to_string()),
                    r.f_vector.to_csv(),
                    r.battery_holds,
                    p.convex.holds,
                    p.log_convex.holds,
                    p.unimodal.holds,
                    p.barany.holds,
                    r.star.iter().all(|(_, ok)| *ok)
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

const DIGITS: usize = 12;

fn scan(cli: &Cli, a: &ScanArgs) -> Outcome {
    let (lo, hi) = parse_range(&a.range)?;
    let json = cli.format == Some(Format::Json);
    let mut out = String::new();
    match a.kind {
        ScanKind::Logconv7 => {
            let rows = logconv_scan(lo, hi)?;
            if json {
                let docs: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        let mut o = Map::new();
                        o.insert("n".into(), json!(r.n));
                        for (k, x) in [("r1", &r.r1), ("r2", &r.r2), ("r3", &r.r3)] {
                            o.insert(k.into(), json!(rational_to_string(x)));
                            o.insert(format!("{k}_approx"), json!(approx_decimal(x, DIGITS)));
                        }
                        Value::Object(o)
                    })
                    .collect();
                writeln!(out, "{}", Value::Array(docs)).ok();
            } else {
                writeln!(out, "n,r1,r2,r3,r1_approx,r2_approx,r3_approx").ok();
                for r in &rows {
                    let exact = [&r.r1, &r.r2, &r.r3].map(rational_to_string);
                    let approx = [&r.r1, &r.r2, &r.r3].map(|x| approx_decimal(x, DIGITS));
                    writeln!(out, "{},{},{}", r.n, exact.join(","), approx.join(",")).ok();
                }
            }
        }
        ScanKind::Convexity5 => {
            let rows = convexity5_scan(lo, hi)?;
            if json {
                let docs: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "n": r.n,
                            "f": strings(r.f.components()),
                            "gap": rational_to_string(&r.gap),
                            "gap_approx": approx_decimal(&r.gap, DIGITS),
                        })
                    })
                    .collect();
                writeln!(out, "{}", Value::Array(docs)).ok();
            } else {
                writeln!(out, "n,f0,f1,f2,f3,f4,gap,gap_approx").ok();
                for r in &rows {
                    writeln!(
                        out,
                        "{},{},{},{}",
                        r.n,
                        r.f.to_csv(),
                        rational_to_string(&r.gap),
                        approx_decimal(&r.gap, DIGITS)
                    )
                    .ok();
                }
            }
        }
    }
    print!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn verify_paper(cli: &Cli) -> Outcome {
    let start = Instant::now();
    let report = verify::run(cli.seed)?;
    let elapsed = start.elapsed().as_millis() as u64;
    let meta = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "elapsed_ms": elapsed,
    });
    match cli.format {
        Some(Format::Json) => {
            let mut doc = serde_json::to_value(&report)?;
            doc["pass"] = json!(report.all_pass());
            if !cli.no_meta {
                doc["meta"] = meta;
            }
            println!("{doc}");
        }
        Some(Format::Csv) => {
            println!("name,pass,operation,expected,computed");
            for c in &report.checks {
                let quote = |s: &str| format!("\"{}\"", s.replace('"', "\"\""));
                println!(
                    "{},{},{},{},{}",
                    c.name,
                    c.pass,
                    quote(&c.operation),
                    quote(&c.expected),
                    quote(&c.computed)
                );
            }
        }
        None => {
            if !cli.no_meta {
                println!("flagvec {} (seed {}, {elapsed} ms)\n", env!("CARGO_PKG_VERSION"), report.seed);
            }
            println!("{report}");
        }
    }
    Ok(if report.all_pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
