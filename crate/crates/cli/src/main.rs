use std::fmt::Write as _;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use tame_orders::{
    canonical_embedding, cummings_blocks, is_tame, parse_poset, pattern_r22, pattern_s_n2,
    r_lambda, random_poset, realize, reduce, tame_rank, to_text, verify_proposition,
    verify_samples, Error, GeneratorConfig, Poset, TameProfile, VerificationReport, VerifyOptions,
};

/// Tame finite partial orders: detection, reduction, rank, and embeddings
/// into the template orders R_lambda.
#[derive(Parser, Debug)]
#[command(name = "tame", version)]
struct Cli {
    /// Emit a single JSON document on stdout
    #[arg(long, global = true)]
    json: bool,

    /// Node cap for brute-force embedding searches
    #[arg(long, global = true, value_name = "NODES")]
    budget: Option<u64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide tameness; exit 3 when an R22 witness is found
    Check { file: PathBuf },
    /// Print the tame rank
    Rank { file: PathBuf },
    /// Print the canonical embedding x -> (m(x), M(x)) of a reduced tame order
    Embed { file: PathBuf },
    /// Print the quotient by equal down-set/up-set signatures
    Reduce { file: PathBuf },
    /// Realize the order as a restriction of an inflated R_lambda
    Realize { file: PathBuf },
    /// Run the finite-scope verification checks
    Verify(VerifyArgs),
    /// Write a generated poset to stdout
    Gen(GenArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("mode").args(["exhaustive", "samples"])))]
struct VerifyArgs {
    /// Number of elements
    #[arg(long)]
    n: usize,
    /// Check every labeled poset on N elements (default)
    #[arg(long)]
    exhaustive: bool,
    /// Check K seeded random posets instead
    #[arg(long, value_name = "K", requires = "seed")]
    samples: Option<usize>,
    #[arg(long, value_name = "S")]
    seed: Option<u64>,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Permit exhaustive runs at n = 6
    #[arg(long)]
    extended: bool,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("pattern").required(true).args(["r_lambda", "s_n2", "r22", "cummings", "random"])))]
struct GenArgs {
    /// The template order R_L
    #[arg(long, value_name = "L")]
    r_lambda: Option<usize>,
    /// Truncation of S_{omega,2} to indices below N
    #[arg(long, value_name = "N")]
    s_n2: Option<usize>,
    /// Two disjoint 2-chains
    #[arg(long)]
    r22: bool,
    /// Cummings block order for o(kappa) = O
    #[arg(long, value_name = "O")]
    cummings: Option<usize>,
    /// Random order with N elements and edge probability P
    #[arg(long, num_args = 3, value_names = ["N", "P", "SEED"])]
    random: Option<Vec<String>>,
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Lib(e) => match e {
                Error::BudgetExceeded(_) => 2,
                Error::NotTame { .. } | Error::NotReduced(..) => 3,
                Error::InternalInvariantViolation(_) => 4,
                _ => 1,
            },
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(m) => f.write_str(m),
        }
    }
}

/// Successful output and its exit code.
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Check { file } => check(&load(file)?, cli.json),
        Command::Rank { file } => rank(&load(file)?, cli.json),
        Command::Embed { file } => embed(&load(file)?, cli.json),
        Command::Reduce { file } => reduce_cmd(&load(file)?, cli.json),
        Command::Realize { file } => realize_cmd(&load(file)?, cli.json),
        Command::Verify(args) => verify(args, cli.budget, cli.json),
        Command::Gen(args) => gen(args).map(|p| Output::ok(to_text(&p))),
    }
}

fn load(path: &Path) -> Result<Poset, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?
    };
    Ok(parse_poset(&text)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn coordinate_table(p: &Poset, profile: &TameProfile) -> String {
    let mut out = String::new();
    for x in 0..p.len() {
        let c = profile.coordinates(x);
        let _ = writeln!(out, "{} -> ({},{})", p.label(x), c.alpha, c.beta);
    }
    out
}

fn check(p: &Poset, json: bool) -> Result<Output, Failure> {
    let report = is_tame(p)?;
    let code = if report.tame { 0 } else { 3 };
    if json {
        return Ok(Output {
            text: to_json(&report),
            code,
        });
    }
    let mut text = String::new();
    match (&report.witness, report.tame_rank) {
        (Some(w), _) => {
            let _ = writeln!(text, "tame: no");
            let _ = writeln!(text, "witness: {} < {}, {} < {}", w[0], w[2], w[1], w[3]);
        }
        (None, Some(rank)) => {
            let _ = writeln!(text, "tame: yes");
            let _ = writeln!(text, "tame rank: {rank}");
            if report.canonical.is_some() {
                let _ = writeln!(text, "canonical embedding into R_{rank}:");
                text.push_str(&coordinate_table(p, &TameProfile::new(p)?));
            } else {
                let _ = writeln!(text, "not reduced: no canonical embedding");
            }
        }
        (None, None) => unreachable!("a tame report always carries a rank"),
    }
    Ok(Output { text, code })
}

fn rank(p: &Poset, json: bool) -> Result<Output, Failure> {
    let r = tame_rank(p)?;
    Ok(Output::ok(if json {
        to_json(&json!({ "tame_rank": r }))
    } else {
        format!("{r}\n")
    }))
}

fn embed(p: &Poset, json: bool) -> Result<Output, Failure> {
    let e = canonical_embedding(p)?;
    let profile = TameProfile::new(p)?;
    if json {
        let coords: serde_json::Map<String, serde_json::Value> = (0..p.len())
            .map(|x| {
                let c = profile.coordinates(x);
                (p.label(x).to_string(), json!([c.alpha, c.beta]))
            })
            .collect();
        return Ok(Output::ok(to_json(&json!({
            "lambda": profile.tame_rank(),
            "embedding": coords,
            "verified": e.verified(),
        }))));
    }
    Ok(Output::ok(coordinate_table(p, &profile)))
}

fn reduce_cmd(p: &Poset, json: bool) -> Result<Output, Failure> {
    let red = reduce(p);
    let q = &red.quotient;
    let classes: Vec<(String, Vec<&str>)> = red
        .classes
        .iter()
        .map(|c| {
            (
                p.label(c[0]).to_string(),
                c.iter().map(|&x| p.label(x)).collect(),
            )
        })
        .collect();
    if json {
        let relations: Vec<[&str; 2]> = q
            .cover_relations()
            .into_iter()
            .map(|(a, b)| [q.label(a), q.label(b)])
            .collect();
        let class_map: serde_json::Map<String, serde_json::Value> = classes
            .into_iter()
            .map(|(rep, members)| (rep, json!(members)))
            .collect();
        return Ok(Output::ok(to_json(&json!({
            "elements": q.labels(),
            "relations": relations,
            "classes": class_map,
        }))));
    }
    let mut text = to_text(q);
    for (rep, members) in classes {
        let _ = writeln!(text, "# class {rep}: {}", members.join(" "));
    }
    Ok(Output::ok(text))
}

fn realize_cmd(p: &Poset, json: bool) -> Result<Output, Failure> {
    let r = realize(p)?;
    if json {
        return Ok(Output::ok(to_json(&r)));
    }
    let mut text = String::new();
    let _ = writeln!(text, "lambda: {}", r.lambda);
    let _ = writeln!(text, "inflated size: {}", r.inflated.poset.len());
    let window: Vec<&str> = r.window.iter().map(|w| r.inflated.poset.label(w)).collect();
    let _ = writeln!(text, "window: {}", window.join(" "));
    for (s, t) in r.iso.label_pairs() {
        let _ = writeln!(text, "{s} -> {t}");
    }
    Ok(Output::ok(text))
}

fn verify(args: &VerifyArgs, budget: Option<u64>, json: bool) -> Result<Output, Failure> {
    let opts = VerifyOptions {
        jobs: args.jobs,
        budget,
        extended: args.extended,
    };
    let report = match args.samples {
        Some(k) => verify_samples(args.n, k, args.seed.unwrap_or_default(), &opts)?,
        None => verify_proposition(args.n, &opts)?,
    };
    let code = if report.passed() { 0 } else { 3 };
    let text = if json {
        to_json(&report)
    } else {
        summary(&report)
    };
    Ok(Output { text, code })
}

fn summary(r: &VerificationReport) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "n: {} ({})", r.n, r.mode);
    let _ = writeln!(text, "posets: {}", r.total);
    let _ = writeln!(text, "tame: {}", r.tame_count);
    let _ = writeln!(text, "reduced tame: {}", r.reduced_tame_count);
    let _ = writeln!(text, "minimality checked: {}", r.minimality_checked);
    if r.brute_force_skipped > 0 {
        let _ = writeln!(text, "brute force skipped: {}", r.brute_force_skipped);
    }
    let _ = writeln!(text, "counterexamples: {}", r.counterexamples.len());
    if let Some(c) = r.first_counterexample() {
        let _ = writeln!(text, "first: #{} {:?}: {}", c.index, c.check, c.detail);
        text.push_str(&c.poset);
    }
    text
}

fn gen(args: &GenArgs) -> Result<Poset, Failure> {
    if let Some(l) = args.r_lambda {
        return Ok(r_lambda(l)?);
    }
    if let Some(n) = args.s_n2 {
        return Ok(pattern_s_n2(n)?);
    }
    if args.r22 {
        return Ok(pattern_r22());
    }
    if let Some(o) = args.cummings {
        return Ok(cummings_blocks(o)?);
    }
    let values = args.random.as_deref().expect("clap requires one generator");
    let bad = |what: &str, v: &str| Failure::Lib(Error::InvalidParameter(format!("{what} `{v}`")));
    let n = values[0]
        .parse()
        .map_err(|_| bad("element count", &values[0]))?;
    let edge_probability = values[1]
        .parse()
        .map_err(|_| bad("probability", &values[1]))?;
    let seed = values[2].parse().map_err(|_| bad("seed", &values[2]))?;
    Ok(random_poset(&GeneratorConfig {
        n,
        edge_probability,
        seed,
    })?)
}
