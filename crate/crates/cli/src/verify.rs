//! Verification tables: computed volumes against closed forms.

use std::io::Write;

use clap::{Args, ValueEnum};
use num_bigint::BigUint;

use flowvol::arrays::{count_btilde, BConstraintSystem, DEFAULT_NODE_CAP};
use flowvol::bijections::{seq_count, seq_to_tree, tree_to_seq, StepSequence};
use flowvol::catalanotope::{catalan_kset_count, f_closed, f_recurrence};
use flowvol::families::{complete, cry_graph, narayana_family, rary_graph};
use flowvol::formulas::{catalan, cry_product, narayana, pmn_product, rary_count};
use flowvol::kostant::{identity_kirillov, volume_via_kostant};
use flowvol::{Error, Multigraph};

use crate::{CliResult, Outcome};

/// Sequence sets above this size skip the exhaustive round trip.
const ROUND_TRIP_LIMIT: usize = 200_000;

#[derive(Args)]
pub(crate) struct VerifyArgs {
    suite: Suite,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long)]
    max_m: Option<u32>,
    #[arg(long)]
    max_r: Option<u32>,
    /// Dimension for the narayana suite.
    #[arg(long)]
    n: Option<usize>,
    /// Search-node cap for array counting.
    #[arg(long)]
    node_cap: Option<u64>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Cry,
    Pmn,
    Narayana,
    Rary,
    Catalan,
    Kirillov,
}

/// Tracks the combined outcome of a table.
struct Table {
    outcome: Outcome,
    rows: usize,
    failed: usize,
}

impl Table {
    fn new() -> Self {
        Table { outcome: Outcome::Pass, rows: 0, failed: 0 }
    }

    fn verdict(&mut self, ok: bool) -> &'static str {
        self.rows += 1;
        if ok {
            "yes"
        } else {
            self.failed += 1;
            self.outcome = self.outcome.max(Outcome::Mismatch);
            "no"
        }
    }

    fn cap(&mut self, e: &Error, at: &str) {
        eprintln!("note: table truncated at {at}: {e}");
        self.outcome = self.outcome.max(Outcome::Cap);
    }

    fn finish(self) -> Outcome {
        eprintln!("{} rows, {} mismatched", self.rows, self.failed);
        self.outcome
    }
}

fn arrays(g: &Multigraph, cap: Option<u64>) -> flowvol::Result<BigUint> {
    BConstraintSystem::from_graph(g)?.count_with_cap(Some(cap.unwrap_or(DEFAULT_NODE_CAP)))
}

fn all_equal(values: &[&BigUint]) -> bool {
    values.windows(2).all(|w| w[0] == w[1])
}

pub(crate) fn run(args: &VerifyArgs, out: &mut impl Write) -> CliResult<Outcome> {
    let mut t = Table::new();
    match args.suite {
        Suite::Cry => {
            writeln!(out, "N\tarrays\tkostant\tproduct\tmatch")?;
            for n in 2..=args.max_n.unwrap_or(6) {
                let g = complete(n)?;
                let a = match arrays(&g, args.node_cap) {
                    Ok(v) => v,
                    Err(e @ Error::ResourceLimit { .. }) => {
                        t.cap(&e, &format!("N={n}"));
                        break;
                    }
                    Err(e) => return Err(e.into()),
                };
                let k = volume_via_kostant(&g)?;
                let p = cry_product(n as u64)?;
                let ok = all_equal(&[&a, &k, &p]);
                writeln!(out, "{n}\t{a}\t{k}\t{p}\t{}", t.verdict(ok))?;
            }
        }
        Suite::Pmn => {
            writeln!(out, "m\tN\tarrays\tproduct\tmatch")?;
            'outer: for m in 0..=args.max_m.unwrap_or(3) {
                for n in 2..=args.max_n.unwrap_or(5) {
                    let a = match arrays(&cry_graph(m, n)?, args.node_cap) {
                        Ok(v) => v,
                        Err(e @ Error::ResourceLimit { .. }) => {
                            t.cap(&e, &format!("m={m}, N={n}"));
                            break 'outer;
                        }
                        Err(e) => return Err(e.into()),
                    };
                    let p = pmn_product(m as u64, n as u64)?;
                    let ok = a == p;
                    writeln!(out, "{m}\t{n}\t{a}\t{p}\t{}", t.verdict(ok))?;
                }
            }
        }
        Suite::Narayana => {
            let n = args.n.unwrap_or(3);
            if n == 0 {
                return Err(Error::Parameter("--n must be at least 1".into()).into());
            }
            writeln!(out, "k\tmembers\tarrays\tbtilde\tformula\tmatch")?;
            let prod = flowvol::formulas::catalan_product(n as u64 - 1);
            let (mut members, mut sum_a, mut sum_bt, mut sum_f) = (0usize, BigUint::default(), BigUint::default(), BigUint::default());
            for k in 1..=n {
                let family = narayana_family(n, k)?;
                let mut a = BigUint::default();
                for g in &family {
                    a += arrays(g, args.node_cap)?;
                }
                let bt = count_btilde(n, k)?;
                let f = narayana(n as u64, k as u64)? * &prod;
                let ok = all_equal(&[&a, &bt, &f]);
                writeln!(out, "{k}\t{}\t{a}\t{bt}\t{f}\t{}", family.len(), t.verdict(ok))?;
                members += family.len();
                sum_a += a;
                sum_bt += bt;
                sum_f += f;
            }
            let cry = cry_product(n as u64 + 1)?;
            let ok = all_equal(&[&sum_a, &sum_bt, &sum_f, &cry]);
            writeln!(out, "total\t{members}\t{sum_a}\t{sum_bt}\t{cry}\t{}", t.verdict(ok))?;
        }
        Suite::Rary => {
            writeln!(out, "r\tn\tsequences\tarrays\tformula\tround_trip\tmatch")?;
            for r in 0..=args.max_r.unwrap_or(2) {
                for n in 0..=args.max_n.unwrap_or(3) {
                    let s = seq_count(r, n);
                    let a = arrays(&rary_graph(r, n)?, args.node_cap)?;
                    let f = rary_count(r as u64, n as u64)?;
                    let trip = round_trip(r, n, &s);
                    let ok = all_equal(&[&s, &a, &f]) && trip != "fail";
                    writeln!(out, "{r}\t{n}\t{s}\t{a}\t{f}\t{trip}\t{}", t.verdict(ok))?;
                }
            }
        }
        Suite::Catalan => {
            writeln!(out, "n\trecurrence\tclosed\tcatalan\tkset\tcatalan_prev\tmatch")?;
            for n in 1..=args.max_n.unwrap_or(10) {
                let ones = vec![1; n];
                let rec = f_recurrence(&ones)?;
                let c = catalan(n as u64);
                let prev = catalan(n as u64 - 1);
                if n == 1 {
                    let ok = rec == c;
                    writeln!(out, "{n}\t{rec}\t-\t{c}\t-\t{prev}\t{}", t.verdict(ok))?;
                    continue;
                }
                let closed = f_closed(&ones)?;
                let kset = catalan_kset_count(n)?;
                let ok = all_equal(&[&rec, &closed, &c]) && kset == prev;
                writeln!(out, "{n}\t{rec}\t{closed}\t{c}\t{kset}\t{prev}\t{}", t.verdict(ok))?;
            }
        }
        Suite::Kirillov => {
            eprintln!("note: the last netflow entry is the balancing sink value -(nm + n(n+1)/2)");
            writeln!(out, "m\tn\tkostant\tproduct\talternate\tmatch")?;
            for m in 0..=args.max_m.unwrap_or(2) {
                for n in 1..=args.max_n.unwrap_or(4) {
                    let rep = identity_kirillov(m as u64, n as u64)?;
                    let ok = rep.holds();
                    writeln!(out, "{m}\t{n}\t{}\t{}\t{}\t{}", rep.kostant, rep.product, rep.alternate, t.verdict(ok))?;
                }
            }
        }
    }
    Ok(t.finish())
}

fn round_trip(r: u32, n: usize, count: &BigUint) -> &'static str {
    if *count > BigUint::from(ROUND_TRIP_LIMIT) {
        return "skipped";
    }
    let ok = StepSequence::all(r, n)
        .iter()
        .all(|s| seq_to_tree(s).and_then(|t| tree_to_seq(&t)).map(|back| &back == s).unwrap_or(false));
    if ok {
        "ok"
    } else {
        "fail"
    }
}
