use std::fmt::Display;
use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use congrkit::monoid::DEFAULT_ENUMERATION_CAP;
use congrkit::oracle::CongruencePartition;
use congrkit::product::enumerate::{enumerate_landscapes, DEFAULT_LANDSCAPE_CAP};
use congrkit::product::principal_product;
use congrkit::product::render::{from_json, render, to_json, Layout};
use congrkit::qn::{congruence_chain, principal_qn};
use congrkit::verify::{
    check_chain, check_fmfn, check_fn, check_fn_lattice, check_landscapes, check_product, check_qn,
    Check,
};
use congrkit::{
    principal_fmfn, principal_fn, CongruenceFn, DlockLandscape, Error, Execution, IndexedMonoid,
    MatrixFamily, MatrixProductFamily, MonoidFamily, ProductFamily, Selection, SweepReport,
    Transformation,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "congrkit",
    version,
    about = "Congruences on transformation monoids, their products, and matrix monoids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the congruence generated by one pair of elements.
    Principal {
        /// Monoid such as T3, PT2xI2, F2@GF(3) or F2xF2@GF(2).
        monoid: String,
        a: String,
        b: String,
        /// Draw the landscape of a product with rows and columns.
        #[arg(long)]
        matrix: bool,
        #[command(flatten)]
        opts: Opts,
    },
    /// List every congruence of a monoid.
    Enumerate {
        monoid: String,
        /// Print only the number of congruences.
        #[arg(long)]
        count: bool,
        #[command(flatten)]
        opts: Opts,
    },
    /// Check the closed forms against the brute-force oracle.
    Verify {
        monoid: String,
        #[command(flatten)]
        mode: Mode,
        /// Sample this many generator pairs instead of visiting all of them.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        opts: Opts,
    },
    /// Draw a landscape given as JSON, read from a file or `-` for stdin.
    Render {
        file: String,
        #[arg(long)]
        matrix: bool,
    },
    /// Print the congruence generated by a pair, computed by brute force.
    Oracle {
        monoid: String,
        a: String,
        b: String,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args)]
struct Opts {
    #[arg(long)]
    json: bool,
    /// Largest degree (or matrix size) to tabulate or enumerate. Defaults to 4
    /// for tables and 3 for landscape enumeration.
    #[arg(long, env = "CONGRKIT_CAP")]
    cap: Option<usize>,
}

#[derive(Args)]
#[group(multiple = false)]
struct Mode {
    /// Compare every principal congruence with the oracle closure (default).
    #[arg(long)]
    principal_sweep: bool,
    /// Compare the full list of congruences with the oracle lattice.
    #[arg(long)]
    lattice: bool,
    /// Check that each principal closed form is a congruence containing its
    /// generators.
    #[arg(long)]
    axioms: bool,
}

enum Failure {
    Usage(String),
    Mismatch,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

#[derive(Clone, Copy)]
enum Target {
    Single(MonoidFamily),
    Product(ProductFamily),
    Matrix(MatrixFamily),
    MatrixProduct(MatrixProductFamily),
}

impl Target {
    fn parse(s: &str) -> Result<Self, Error> {
        Ok(match (s.contains('@'), s.contains('x')) {
            (true, true) => Target::MatrixProduct(s.parse()?),
            (true, false) => Target::Matrix(s.parse()?),
            (false, true) => Target::Product(s.parse()?),
            (false, false) => Target::Single(s.parse()?),
        })
    }

    fn degrees(self) -> Vec<usize> {
        match self {
            Target::Single(f) => vec![f.degree],
            Target::Product(f) => vec![f.left.degree, f.right.degree],
            Target::Matrix(f) => vec![f.n],
            Target::MatrixProduct(f) => vec![f.left.n, f.right.n],
        }
    }

    fn ensure_cap(self, cap: usize) -> Result<(), Error> {
        match self.degrees().into_iter().max() {
            Some(d) if d > cap => Err(Error::CapExceeded {
                what: format!("degree of {}", self),
                size: d,
                cap,
            }),
            _ => Ok(()),
        }
    }
}

impl Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::Single(x) => x.fmt(f),
            Target::Product(x) => x.fmt(f),
            Target::Matrix(x) => x.fmt(f),
            Target::MatrixProduct(x) => x.fmt(f),
        }
    }
}

fn layout(matrix: bool) -> Layout {
    if matrix {
        Layout::Matrix
    } else {
        Layout::Diamond
    }
}

fn print_json(v: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("serialisable output")
    );
}

fn landscape_value(l: &DlockLandscape) -> Value {
    serde_json::from_str(&to_json(l)).expect("landscape JSON parses")
}

/// Number of classes of `related` over the table, when the table fits.
fn class_count<T>(
    table: Result<IndexedMonoid<T>, Error>,
    related: impl Fn(&T, &T) -> Result<bool, Error>,
) -> Result<Option<usize>, Error>
where
    T: Clone + Eq + std::hash::Hash,
{
    let table = match table {
        Ok(t) => t,
        Err(Error::CapExceeded { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let els = table.elements();
    let err = std::cell::OnceCell::new();
    let p = CongruencePartition::from_equivalence(els.len(), |x, y| {
        related(&els[x], &els[y]).unwrap_or_else(|e| {
            let _ = err.set(e);
            false
        })
    });
    match err.into_inner() {
        Some(e) => Err(e),
        None => Ok(Some(p.block_count())),
    }
}

fn principal(monoid: &str, a: &str, b: &str, matrix: bool, opts: &Opts) -> Outcome {
    let monoid = Target::parse(monoid)?;
    let cap = opts.cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
    let (mut out, landscape) = match monoid {
        Target::Single(f) => {
            let (x, y) = (Transformation::parse(f, a)?, Transformation::parse(f, b)?);
            let c = principal_qn(&x, &y)?;
            let classes = class_count(f.table(cap), |x, y| c.related(x, y))?;
            (
                json!({"family": f.to_string(), "case": c.to_string(), "classes": classes}),
                None,
            )
        }
        Target::Product(f) => {
            let (x, y) = (f.parse_element(a)?, f.parse_element(b)?);
            let d = principal_product(&x, &y)?;
            let classes = class_count(f.table(cap), |x, y| d.related(x, y))?;
            let l = DlockLandscape::of_principal(&d);
            (
                json!({
                    "family": f.to_string(),
                    "case": d.tag(),
                    "description": d.to_string(),
                    "classes": classes,
                    "landscape": landscape_value(&l),
                }),
                Some(l),
            )
        }
        Target::Matrix(f) => {
            monoid.ensure_cap(cap)?;
            let (x, y) = (f.parse_element(a)?, f.parse_element(b)?);
            let c = principal_fn(&x, &y)?;
            let classes = class_count(f.table(), |x, y| c.related(x, y))?;
            (
                json!({
                    "family": f.to_string(),
                    "case": c.to_string(),
                    "parameters": c.to_json(),
                    "classes": classes,
                }),
                None,
            )
        }
        Target::MatrixProduct(f) => {
            monoid.ensure_cap(cap)?;
            let (x, y) = (f.parse_element(a)?, f.parse_element(b)?);
            let d = principal_fmfn(&x, &y)?;
            let classes = class_count(f.table(), |x, y| d.related(x, y))?;
            (
                json!({
                    "family": f.to_string(),
                    "case": d.tag(),
                    "description": d.to_string(),
                    "classes": classes,
                }),
                None,
            )
        }
    };
    if opts.json {
        print_json(&out);
        return Ok(());
    }
    println!("family {}", out["family"].as_str().unwrap_or_default());
    println!("case {}", out["case"].as_str().unwrap_or_default());
    if let Some(d) = out.get("description").and_then(Value::as_str) {
        println!("description {d}");
    }
    match out["classes"].take() {
        Value::Null => println!("classes unavailable: table exceeds the cap"),
        n => println!("classes {n}"),
    }
    if let Some(l) = landscape {
        print!("{}", render(&l, layout(matrix)));
    }
    Ok(())
}

fn enumerate(monoid: &str, count: bool, opts: &Opts) -> Outcome {
    let monoid = Target::parse(monoid)?;
    let (lines, values): (Vec<String>, Vec<Value>) = match monoid {
        Target::Single(f) => congruence_chain(f)?
            .iter()
            .map(|c| (c.to_string(), Value::String(c.to_string())))
            .unzip(),
        Target::Product(f) => enumerate_landscapes(f, opts.cap.unwrap_or(DEFAULT_LANDSCAPE_CAP))?
            .iter()
            .map(|l| (l.to_string(), landscape_value(l)))
            .unzip(),
        Target::Matrix(f) => {
            monoid.ensure_cap(opts.cap.unwrap_or(DEFAULT_ENUMERATION_CAP))?;
            CongruenceFn::all(f)?
                .iter()
                .map(|c| {
                    (
                        c.to_string(),
                        serde_json::to_value(c.to_json()).expect("serialisable"),
                    )
                })
                .unzip()
        }
        Target::MatrixProduct(f) => {
            return Err(Failure::Usage(format!(
            "enumeration is not available for {f}; use `principal` or `verify --principal-sweep`"
        )))
        }
    };
    if count {
        println!("{}", lines.len());
    } else if opts.json {
        print_json(&values);
    } else {
        for l in lines {
            println!("{l}");
        }
    }
    Ok(())
}

fn report_sweep(r: &SweepReport, json: bool) -> Outcome {
    if json {
        print_json(r);
    } else {
        println!("{r}");
        println!("{}", if r.passed() { "PASS" } else { "FAIL" });
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn report_lattice(
    report: &impl serde::Serialize,
    lines: &[String],
    passed: bool,
    json: bool,
) -> Outcome {
    if json {
        print_json(report);
    } else {
        for l in lines {
            println!("{l}");
        }
        println!("{}", if passed { "PASS" } else { "FAIL" });
    }
    if passed {
        Ok(())
    } else {
        Err(Failure::Mismatch)
    }
}

fn verify(
    monoid: &str,
    mode: &Mode,
    samples: Option<usize>,
    seed: u64,
    exec: Execution,
    opts: &Opts,
) -> Outcome {
    let monoid = Target::parse(monoid)?;
    monoid.ensure_cap(opts.cap.unwrap_or(DEFAULT_ENUMERATION_CAP))?;
    if mode.lattice {
        return verify_lattice(monoid, exec, opts);
    }
    let check = if mode.axioms {
        Check::Axioms
    } else {
        Check::Oracle
    };
    let selection = match samples {
        Some(count) => Selection::Sample { count, seed },
        None => Selection::All,
    };
    let r = match monoid {
        Target::Single(f) => check_qn(f, selection, exec, check)?,
        Target::Product(f) => check_product(f, selection, exec, check)?,
        Target::Matrix(f) => check_fn(f, selection, exec, check)?,
        Target::MatrixProduct(f) => check_fmfn(f, selection, exec, check)?,
    };
    report_sweep(&r, opts.json)
}

fn verify_lattice(monoid: Target, exec: Execution, opts: &Opts) -> Outcome {
    match monoid {
        Target::Single(f) => {
            let r = check_chain(f)?;
            let lines = [
                format!(
                    "{}: {} oracle congruences, {} in the chain",
                    r.family, r.oracle_count, r.chain_count
                ),
                format!("chain matches the lattice: {}", r.chain_matches),
                format!("lattice is totally ordered: {}", r.totally_ordered),
            ];
            report_lattice(&r, &lines, r.passed(), opts.json)
        }
        Target::Product(f) => {
            let cap = opts.cap.unwrap_or(DEFAULT_LANDSCAPE_CAP);
            let r = check_landscapes(f, cap, exec)?;
            let mut lines = vec![
                format!(
                    "{}: {} landscapes, {} oracle congruences",
                    r.family, r.enumerated, r.oracle_count
                ),
                format!("duplicates {}, unknown {}", r.duplicates, r.unknown),
            ];
            for (what, list) in [
                ("invalid", &r.invalid),
                ("not a congruence", &r.not_congruences),
                ("principal mismatch", &r.principal_mismatches),
                ("round trip failure", &r.round_trip_failures),
            ] {
                lines.extend(list.iter().map(|m| format!("  {what}: {m}")));
            }
            report_lattice(&r, &lines, r.passed(), opts.json)
        }
        Target::Matrix(f) => {
            let r = check_fn_lattice(f)?;
            let lines = [
                format!(
                    "{}: {} parameter tuples, {} distinct relations, {} oracle congruences",
                    r.family, r.tuples, r.distinct, r.oracle_count
                ),
                format!("missing {}, extra {}", r.missing, r.extra),
            ];
            report_lattice(&r, &lines, r.passed(), opts.json)
        }
        Target::MatrixProduct(f) => Err(Failure::Usage(format!(
            "lattice verification is not available for {f}"
        ))),
    }
}

fn render_file(file: &str, matrix: bool) -> Outcome {
    let mut input = String::new();
    let read = if file == "-" {
        std::io::stdin().read_to_string(&mut input).map(|_| ())
    } else {
        std::fs::read_to_string(file).map(|s| input = s)
    };
    read.map_err(|e| Failure::Usage(format!("cannot read {file}: {e}")))?;
    let l = from_json(&input)?;
    l.validate().map_err(Error::InvalidLandscape)?;
    print!("{}", render(&l, layout(matrix)));
    Ok(())
}

fn oracle<T>(table: IndexedMonoid<T>, a: T, b: T, json: bool) -> Outcome
where
    T: Clone + Eq + std::hash::Hash + Display,
{
    let p = table.closure_of(&a, &b)?;
    let classes: Vec<Vec<String>> = p
        .blocks()
        .iter()
        .filter(|b| b.len() > 1)
        .map(|b| b.iter().map(|&i| table.element(i).to_string()).collect())
        .collect();
    if json {
        print_json(&json!({
            "elements": table.size(),
            "classes": p.block_count(),
            "nontrivial": classes,
        }));
    } else {
        println!("{} elements, {} classes", table.size(), p.block_count());
        for c in classes {
            println!("{{{}}}", c.join(" "));
        }
    }
    Ok(())
}

fn run_oracle(monoid: &str, a: &str, b: &str, opts: &Opts) -> Outcome {
    let monoid = Target::parse(monoid)?;
    let cap = opts.cap.unwrap_or(DEFAULT_ENUMERATION_CAP);
    monoid.ensure_cap(cap)?;
    match monoid {
        Target::Single(f) => oracle(
            f.table(cap)?,
            Transformation::parse(f, a)?,
            Transformation::parse(f, b)?,
            opts.json,
        ),
        Target::Product(f) => oracle(
            f.table(cap)?,
            f.parse_element(a)?,
            f.parse_element(b)?,
            opts.json,
        ),
        Target::Matrix(f) => oracle(
            f.table()?,
            f.parse_element(a)?,
            f.parse_element(b)?,
            opts.json,
        ),
        Target::MatrixProduct(f) => oracle(
            f.table()?,
            f.parse_element(a)?,
            f.parse_element(b)?,
            opts.json,
        ),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Principal {
            monoid,
            a,
            b,
            matrix,
            opts,
        } => principal(monoid, a, b, *matrix, opts),
        Command::Enumerate {
            monoid,
            count,
            opts,
        } => enumerate(monoid, *count, opts),
        Command::Verify {
            monoid,
            mode,
            samples,
            seed,
            sequential,
            opts,
        } => {
            let exec = if *sequential {
                Execution::Sequential
            } else {
                Execution::Parallel
            };
            verify(monoid, mode, *samples, *seed, exec, opts)
        }
        Command::Render { file, matrix } => render_file(file, *matrix),
        Command::Oracle { monoid, a, b, opts } => run_oracle(monoid, a, b, opts),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
