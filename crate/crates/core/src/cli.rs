//! Command-line verbs. Exit codes: 0 success or satisfiable, 1 unsatisfiable or nothing found,
//! 2 not in class, 3 usage, parse or internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::analysis::{classify_component, classify_negative_pattern, inconsistency_graph, is_forest};
use crate::analysis::{ComponentClass, PatternClassification};
use crate::catalog::NamedPattern;
use crate::generators::{self, Formula3Sat, SeededRng};
use crate::io::{self, Document};
use crate::model::{CspInstance, CspPattern, Value};
use crate::occurrence::{first_occurrence_ordered, occurs, occurs_in_instance_ordered, Renaming};
use crate::solvers::{solve_btp, solve_with_class, SolveOutcome, SolverClass};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSAT: i32 = 1;
pub const EXIT_NOT_IN_CLASS: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Environment variable supplying the seed when `--seed` is absent.
pub const SEED_VAR: &str = "CSPPAT_SEED";

#[derive(Parser)]
#[command(name = "csppat", about = "Forbidden patterns and class solvers for binary CSPs")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// Solve an instance with a class solver.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "auto")]
        class: SolverClass,
        /// Variable order for the BTP solver, comma separated.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
    },
    /// Report whether an instance forbids every listed pattern.
    Check {
        instance: PathBuf,
        #[arg(required = true)]
        patterns: Vec<String>,
        /// Variable order for ordered patterns; defaults to index order.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
    },
    /// Find an occurrence of the first pattern in the second pattern or instance.
    Occurs { source: String, target: String },
    /// Classify a connected flat negative pattern.
    ClassifyPattern { pattern: String },
    /// Summarise the structure of an instance.
    Analyze { instance: PathBuf },
    /// Write a generated instance.
    Generate {
        #[command(subcommand)]
        family: Family,
        /// Output file; standard output when absent.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Time a solver over a family of growing instances.
    Bench {
        /// One of alldiff, pn, sat, random.
        family: String,
        #[arg(long, value_delimiter = ',', default_value = "25,50,100")]
        sizes: Vec<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Gadget reduction of a DIMACS CNF file.
    #[command(name = "3sat")]
    Sat {
        cnf: PathBuf,
        #[arg(long, default_value_t = 2)]
        ell: usize,
    },
    /// The single-conflict clique family.
    Pn { n: usize },
    /// Pairwise disequality over domains `0..d`.
    Alldiff { n: usize, d: usize },
    /// Uniform random instance.
    Random {
        n: usize,
        d: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0.2)]
        disallowed: f64,
        #[arg(long)]
        seed: Option<u64>,
    },
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

/// Runs one command line; the first item is the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(cli.verb, out) {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(verb: Verb, out: &mut dyn Write) -> Result<i32, Failure> {
    match verb {
        Verb::Solve { instance, class, order } => solve(&read_instance(&instance)?, class, order, out),
        Verb::Check { instance, patterns, order } => check(&read_instance(&instance)?, &patterns, order, out),
        Verb::Occurs { source, target } => occurs_verb(&source, &target, out),
        Verb::ClassifyPattern { pattern } => classify(&resolve_pattern(&pattern)?, out),
        Verb::Analyze { instance } => analyze(&read_instance(&instance)?, out),
        Verb::Generate { family, output } => generate(family, output.as_deref(), out),
        Verb::Bench { family, sizes, seed } => bench(&family, &sizes, seed_or_env(seed)?, out),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn read_instance(path: &Path) -> Result<CspInstance, Failure> {
    io::parse_instance(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// A catalog name such as `pivot:1`, or a pattern file.
fn resolve_pattern(reference: &str) -> Result<CspPattern, Failure> {
    if let Ok(name) = reference.parse::<NamedPattern>() {
        return Ok(name.build()?);
    }
    let path = Path::new(reference);
    if path.exists() {
        return io::parse_pattern(&read(path)?).map_err(|e| Failure(format!("{reference}: {e}")));
    }
    Err(Failure(format!("{reference:?} is neither a catalog name nor a file")))
}

fn seed_or_env(seed: Option<u64>) -> Result<u64, Failure> {
    match seed {
        Some(s) => Ok(s),
        None => match std::env::var(SEED_VAR) {
            Ok(v) => v.trim().parse().map_err(|_| Failure(format!("{SEED_VAR}={v:?} is not a u64"))),
            Err(_) => Ok(0),
        },
    }
}

fn show_renaming(r: &Renaming) -> String {
    format!("varMap={:?} pointMap={:?}", r.var_map, r.point_map)
}

fn show_values(values: &[Value]) -> String {
    values.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

fn solve(p: &CspInstance, class: SolverClass, order: Option<Vec<usize>>, out: &mut dyn Write) -> Result<i32, Failure> {
    let (used, outcome) = match (class, order) {
        (SolverClass::Btp, Some(order)) => (SolverClass::Btp, solve_btp(p, &order)?),
        (_, Some(_)) => return Err(Failure("--order applies to --class btp only".into())),
        (c, None) => solve_with_class(p, c)?,
    };
    writeln!(out, "class: {used}")?;
    Ok(match outcome {
        SolveOutcome::Solution(s) => {
            writeln!(out, "outcome: satisfiable")?;
            writeln!(out, "assignment: {}", show_values(&s.to_vec().expect("solutions are total")))?;
            EXIT_OK
        }
        SolveOutcome::Unsatisfiable => {
            writeln!(out, "outcome: unsatisfiable")?;
            EXIT_UNSAT
        }
        SolveOutcome::NotInClass(w) => {
            writeln!(out, "outcome: not-in-class")?;
            writeln!(out, "witness: {} {}", w.name, show_renaming(&w.occurrence.renaming))?;
            EXIT_NOT_IN_CLASS
        }
    })
}

fn check(p: &CspInstance, refs: &[String], order: Option<Vec<usize>>, out: &mut dyn Write) -> Result<i32, Failure> {
    let patterns = refs.iter().map(|r| resolve_pattern(r)).collect::<Result<Vec<_>, _>>()?;
    let order = order.unwrap_or_else(|| (0..p.num_vars()).collect());
    match first_occurrence_ordered(p, &patterns, &order)? {
        None => {
            writeln!(out, "forbids: true")?;
            Ok(EXIT_OK)
        }
        Some((i, occ)) => {
            writeln!(out, "forbids: false")?;
            writeln!(out, "witness: {} {}", refs[i], show_renaming(&occ.renaming))?;
            Ok(EXIT_NOT_IN_CLASS)
        }
    }
}

fn occurs_verb(source: &str, target: &str, out: &mut dyn Write) -> Result<i32, Failure> {
    let chi = resolve_pattern(source)?;
    let found = match target.parse::<NamedPattern>() {
        Ok(name) => occurs(&chi, &name.build()?)?,
        Err(_) => match io::parse(&read(Path::new(target))?).map_err(|e| Failure(format!("{target}: {e}")))? {
            Document::Pattern(tau) => occurs(&chi, &tau)?,
            Document::Instance(p) => {
                let order: Vec<usize> = (0..p.num_vars()).collect();
                occurs_in_instance_ordered(&chi, &p, &order)?
            }
        },
    };
    match found {
        Some(occ) => {
            writeln!(out, "witness: {}", show_renaming(&occ.renaming))?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "none")?;
            Ok(EXIT_UNSAT)
        }
    }
}

fn classify(chi: &CspPattern, out: &mut dyn Write) -> Result<i32, Failure> {
    match classify_negative_pattern(chi)? {
        PatternClassification::Intractable { witness, occurrence } => {
            writeln!(out, "verdict: intractable")?;
            writeln!(out, "witness: {witness} {}", show_renaming(&occurrence.renaming))?;
        }
        PatternClassification::PivotEmbeddable { r, occurrence } => {
            writeln!(out, "verdict: pivot-embeddable")?;
            writeln!(out, "witness: pivot:{r} {}", show_renaming(&occurrence.renaming))?;
        }
    }
    Ok(EXIT_OK)
}

fn analyze(p: &CspInstance, out: &mut dyn Write) -> Result<i32, Failure> {
    let g = inconsistency_graph(p);
    let (mut cliques, mut two, mut violations) = (0, 0, 0);
    for h in g.components() {
        match classify_component(&g, h)? {
            ComponentClass::InconsistencyClique => cliques += 1,
            ComponentClass::TwoVariable { .. } => two += 1,
            ComponentClass::Violation(_) => violations += 1,
        }
    }
    writeln!(out, "variables: {}", p.num_vars())?;
    writeln!(out, "constraints: {}", p.num_constraints())?;
    writeln!(out, "disallowed: {}", p.num_disallowed())?;
    writeln!(out, "forest: {}", is_forest(p))?;
    writeln!(out, "components: {} cliques={cliques} twoVariable={two} violations={violations}", g.components().len())?;
    Ok(EXIT_OK)
}

fn generate(family: Family, output: Option<&Path>, out: &mut dyn Write) -> Result<i32, Failure> {
    let p = match family {
        Family::Sat { cnf, ell } => generators::gen_3sat_instance(&Formula3Sat::parse_dimacs(&read(&cnf)?)?, ell)?.instance,
        Family::Pn { n } => generators::gen_pn_family(n)?,
        Family::Alldiff { n, d } => generators::gen_alldiff_unary(n, &vec![(0..d as Value).collect(); n])?,
        Family::Random { n, d, density, disallowed, seed } => {
            generators::gen_random_instance(n, d, density, disallowed, seed_or_env(seed)?)?
        }
    };
    let text = io::serialise_instance(&p);
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(EXIT_OK)
}

fn bench(family: &str, sizes: &[usize], seed: u64, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut rng = SeededRng::new(seed);
    for &n in sizes {
        let (p, class) = match family {
            "alldiff" => (generators::gen_alldiff_unary(n, &vec![(0..n as Value).collect(); n])?, SolverClass::Negtrans),
            "pn" => (generators::gen_pn_family(n)?, SolverClass::Pivot1),
            "sat" => {
                let f = Formula3Sat::random(&mut rng, n, 4 * n)?;
                (generators::gen_3sat_instance(&f, 2)?.instance, SolverClass::Generic)
            }
            "random" => {
                let s = rng.next_u64();
                (generators::gen_random_instance(n, 4, 0.3, 0.15, s)?, SolverClass::Generic)
            }
            other => return Err(Failure(format!("unknown bench family {other:?}"))),
        };
        let start = Instant::now();
        let (_, outcome) = solve_with_class(&p, class)?;
        let micros = start.elapsed().as_micros();
        let kind = match outcome {
            SolveOutcome::Solution(_) => "satisfiable",
            SolveOutcome::Unsatisfiable => "unsatisfiable",
            SolveOutcome::NotInClass(_) => "not-in-class",
        };
        writeln!(
            out,
            "family={family} size={n} vars={} disallowed={} solver={class} outcome={kind} micros={micros}",
            p.num_vars(),
            p.num_disallowed()
        )?;
    }
    Ok(EXIT_OK)
}
