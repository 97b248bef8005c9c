//! `flowvol`: exact flow-polytope volumes from the command line.
//!
//! Tables go to stdout as tab-separated values with a header row; notes and
//! errors go to stderr. Exit status: 0 all checks pass, 1 mismatch,
//! 2 usage or input error, 3 resource cap reached.

mod verify;

use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use flowvol::arrays::{BConstraintSystem, DEFAULT_NODE_CAP as ARRAY_CAP};
use flowvol::bijections::{seq_to_tree, tree_to_seq, RaryTree, StepSequence};
use flowvol::catalanotope::{f_closed, f_recurrence};
use flowvol::ctlaurent::ct_volume_traced;
use flowvol::families::{FamilyKind, FamilySpec};
use flowvol::formulas;
use flowvol::kostant::{kostant, volume_via_kostant, NetflowVector};
use flowvol::multigraph::{parse_graph, write_graph, write_graphs};
use flowvol::reduction::{for_each_leaf, ReductionOptions, DEFAULT_NODE_CAP as REDUCTION_CAP};
use flowvol::{Error, Multigraph};

#[derive(Parser)]
#[command(name = "flowvol", version, about = "Exact volumes of flow polytopes", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Volume of F_{G~} for a graph file (`-` reads stdin).
    ///
    /// Output columns: method, volume. With `--method all` a final
    /// `verdict` row reports whether every computed value agrees.
    Volume(VolumeArgs),
    /// Kostant partition function of a graph at a netflow vector.
    ///
    /// Output columns: netflow, count.
    Kostant {
        file: PathBuf,
        /// Comma-separated integers, one per vertex.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        netflow: Vec<i64>,
    },
    /// Writes members of a named family in the graph text format.
    Family {
        kind: FamilyArg,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long, value_delimiter = ',')]
        mults: Vec<u32>,
        /// Write one file per member into this directory instead of stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Volume over the extended multipath with multiplicities c1,c2,...
    ///
    /// Output columns: method, value.
    Catalanotope {
        #[arg(long, value_delimiter = ',', required = true)]
        mults: Vec<u32>,
        #[arg(long, value_enum, default_value_t = CatMethod::All)]
        method: CatMethod,
    },
    /// Runs a verification table.
    ///
    /// cry: N, arrays, kostant, product, match.
    /// pmn: m, N, arrays, product, match.
    /// narayana: k, members, arrays, btilde, formula, match; last row totals.
    /// rary: r, n, sequences, arrays, formula, round_trip, match.
    /// catalan: n, recurrence, closed, catalan, kset, catalan_prev, match.
    /// kirillov: m, n, kostant, product, alternate, match.
    #[command(verbatim_doc_comment)]
    Verify(verify::VerifyArgs),
    /// Evaluates a closed-form product.
    ///
    /// catalan i | narayana n k | cry N | pmn m N | kirillov m N | rary r n
    Formula {
        name: FormulaName,
        #[arg(long, value_delimiter = ',', required = true)]
        args: Vec<u64>,
    },
    /// Builds the (r+2)-ary tree of a step sequence, or decodes a tree.
    Tree {
        #[arg(long)]
        r: u32,
        /// Comma-separated steps b21,b32,...; empty for the one-node tree.
        #[arg(long, value_delimiter = ',', conflicts_with = "decode")]
        seq: Option<Vec<u64>>,
        /// A serialized tree to turn back into its step sequence.
        #[arg(long)]
        decode: Option<String>,
    },
}

#[derive(Args)]
struct VolumeArgs {
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    /// Search-node cap for the reduction tree and the array counter.
    #[arg(long)]
    node_cap: Option<u64>,
    /// Write every reduction-tree leaf to this file.
    #[arg(long)]
    dump_leaves: Option<PathBuf>,
    /// Truncation window for the constant-term method (default |E|).
    #[arg(long)]
    bound: Option<u32>,
    /// Per-step term counts of the constant-term method on stderr.
    #[arg(long)]
    trace: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Reduction,
    Arrays,
    Kostant,
    Ct,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CatMethod {
    Recurrence,
    Closed,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Complete,
    Cry,
    Narayana,
    Rary,
    Multipath,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormulaName {
    Catalan,
    Narayana,
    Cry,
    Pmn,
    Kirillov,
    Rary,
}

/// How a command ended, ordered by precedence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Outcome {
    Pass,
    Cap,
    Mismatch,
}

impl Outcome {
    fn code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Mismatch => 1,
            Outcome::Cap => 3,
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => 3,
        Error::TruncationUnstable { .. } | Error::NonIntegral(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli.command, &mut out);
    if let Err(e) = out.flush() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match result {
        Ok(outcome) => ExitCode::from(outcome.code()),
        Err(CliError::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(error_code(&e))
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[derive(Debug)]
pub(crate) enum CliError {
    Lib(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

pub(crate) type CliResult<T> = std::result::Result<T, CliError>;

fn run(cmd: Command, out: &mut impl Write) -> CliResult<Outcome> {
    match cmd {
        Command::Volume(args) => cmd_volume(&args, out),
        Command::Kostant { file, netflow } => {
            let g = read_graph(&file)?;
            let v = NetflowVector(netflow);
            let count = kostant(&g, &v)?;
            writeln!(out, "netflow\tcount")?;
            writeln!(out, "{v}\t{count}")?;
            Ok(Outcome::Pass)
        }
        Command::Family { kind, m, n, k, r, mults, out_dir } => {
            let spec = FamilySpec { m, n, k, r, mults };
            let kind = match kind {
                FamilyArg::Complete => FamilyKind::Complete,
                FamilyArg::Cry => FamilyKind::Cry,
                FamilyArg::Narayana => FamilyKind::Narayana,
                FamilyArg::Rary => FamilyKind::Rary,
                FamilyArg::Multipath => FamilyKind::Multipath,
            };
            let graphs = spec.build(kind)?;
            match out_dir {
                None => write!(out, "{}", write_graphs(&graphs))?,
                Some(dir) => {
                    fs::create_dir_all(&dir)?;
                    for (i, g) in graphs.iter().enumerate() {
                        let path = dir.join(format!("member-{}.txt", i + 1));
                        fs::write(&path, write_graph(g))?;
                        writeln!(out, "{}", path.display())?;
                    }
                }
            }
            Ok(Outcome::Pass)
        }
        Command::Catalanotope { mults, method } => {
            writeln!(out, "method\tvalue")?;
            let mut values = Vec::new();
            if method != CatMethod::Closed {
                let v = f_recurrence(&mults)?;
                writeln!(out, "recurrence\t{v}")?;
                values.push(v);
            }
            if method != CatMethod::Recurrence {
                if mults.len() < 2 && method == CatMethod::All {
                    eprintln!("note: the closed form needs at least two multiplicities; skipped");
                } else {
                    let v = f_closed(&mults)?;
                    writeln!(out, "closed\t{v}")?;
                    values.push(v);
                }
            }
            Ok(verdict_row(out, &values, method == CatMethod::All)?)
        }
        Command::Verify(args) => verify::run(&args, out),
        Command::Formula { name, args } => {
            let need = |k: usize| -> CliResult<()> {
                if args.len() == k {
                    Ok(())
                } else {
                    Err(Error::Parameter(format!("expected {k} argument(s), got {}", args.len())).into())
                }
            };
            let value = match name {
                FormulaName::Catalan => {
                    need(1)?;
                    formulas::catalan(args[0])
                }
                FormulaName::Narayana => {
                    need(2)?;
                    formulas::narayana(args[0], args[1])?
                }
                FormulaName::Cry => {
                    need(1)?;
                    formulas::cry_product(args[0])?
                }
                FormulaName::Pmn => {
                    need(2)?;
                    formulas::pmn_product(args[0], args[1])?
                }
                FormulaName::Kirillov => {
                    need(2)?;
                    formulas::kirillov_alternate(args[0], args[1])?
                }
                FormulaName::Rary => {
                    need(2)?;
                    formulas::rary_count(args[0], args[1])?
                }
            };
            writeln!(out, "{value}")?;
            Ok(Outcome::Pass)
        }
        Command::Tree { r, seq, decode } => {
            if let Some(s) = decode {
                let t = RaryTree::parse(r, &s)?;
                let steps = tree_to_seq(&t)?.steps;
                let joined: Vec<String> = steps.iter().map(u64::to_string).collect();
                writeln!(out, "{}", joined.join(","))?;
            } else {
                let t = seq_to_tree(&StepSequence::new(r, seq.unwrap_or_default())?)?;
                writeln!(out, "{t}")?;
            }
            Ok(Outcome::Pass)
        }
    }
}

/// Appends `verdict pass|mismatch` when asked and reports the outcome.
fn verdict_row(out: &mut impl Write, values: &[BigUint], print: bool) -> io::Result<Outcome> {
    let agree = values.windows(2).all(|w| w[0] == w[1]);
    if print {
        writeln!(out, "verdict\t{}", if agree { "pass" } else { "mismatch" })?;
    }
    Ok(if agree { Outcome::Pass } else { Outcome::Mismatch })
}

fn read_graph(path: &Path) -> CliResult<Multigraph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path)?
    };
    Ok(parse_graph(&text)?)
}

fn cmd_volume(args: &VolumeArgs, out: &mut impl Write) -> CliResult<Outcome> {
    let g = read_graph(&args.file)?;
    let all = args.method == Method::All;
    let wants = |m: Method| all || args.method == m;
    let mut values = Vec::new();
    let mut capped = false;
    writeln!(out, "method\tvolume")?;

    if wants(Method::Reduction) {
        match reduction_volume(&g, args) {
            Ok(v) => {
                writeln!(out, "reduction\t{v}")?;
                values.push(v);
            }
            Err(CliError::Lib(e @ Error::ResourceLimit { .. })) if all => {
                eprintln!("note: reduction stopped: {e}");
                writeln!(out, "reduction\tcap")?;
                capped = true;
            }
            Err(e) => return Err(e),
        }
    }
    if wants(Method::Arrays) {
        let counted = BConstraintSystem::from_graph(&g)
            .and_then(|sys| sys.count_with_cap(Some(args.node_cap.unwrap_or(ARRAY_CAP))));
        match counted {
            Ok(v) => {
                writeln!(out, "arrays\t{v}")?;
                values.push(v);
            }
            Err(e @ Error::MultiplicityViolation { .. }) if all => {
                eprintln!("note: arrays skipped: {e}");
                writeln!(out, "arrays\tskipped")?;
            }
            Err(e @ Error::ResourceLimit { .. }) if all => {
                eprintln!("note: array count stopped: {e}");
                writeln!(out, "arrays\tcap")?;
                capped = true;
            }
            Err(e) => return Err(e.into()),
        }
    }
    if wants(Method::Kostant) {
        let v = volume_via_kostant(&g)?;
        writeln!(out, "kostant\t{v}")?;
        values.push(v);
    }
    if wants(Method::Ct) {
        let (v, trace) = ct_volume_traced(&g, args.bound)?;
        if args.trace {
            eprintln!("variable\tfactors\tterms_before_ct\tterms_after_ct");
            for s in &trace {
                eprintln!("{}\t{}\t{}\t{}", s.variable, s.factors, s.terms_before_ct, s.terms_after_ct);
            }
        }
        writeln!(out, "ct\t{v}")?;
        values.push(v);
    }
    let outcome = verdict_row(out, &values, all)?;
    Ok(if outcome == Outcome::Pass && capped { Outcome::Cap } else { outcome })
}

fn reduction_volume(g: &Multigraph, args: &VolumeArgs) -> CliResult<BigUint> {
    let opts = ReductionOptions { node_cap: Some(args.node_cap.unwrap_or(REDUCTION_CAP)), ..Default::default() };
    let mut dump = match &args.dump_leaves {
        Some(path) => Some(BufWriter::new(fs::File::create(path)?)),
        None => None,
    };
    let mut io_err = None;
    let mut first = true;
    let stats = for_each_leaf(g, &opts, |leaf| {
        if let (Some(w), None) = (dump.as_mut(), io_err.as_ref()) {
            let sep = if first { "" } else { "---\n" };
            first = false;
            if let Err(e) = write!(w, "{sep}{}", write_graph(leaf)) {
                io_err = Some(e);
            }
        }
    })?;
    if let Some(e) = io_err {
        return Err(e.into());
    }
    if let Some(mut w) = dump {
        w.flush()?;
    }
    Ok(BigUint::from(stats.leaves))
}
