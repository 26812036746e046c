use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::fs::File;
use std::io::{self, BufRead, BufWriter, Write};
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use turanlab::coloring::{adjacent_pair_deletions, chromatic_number, color_class_deletions};
use turanlab::enumerate::{enumerate_free, EnumerateOptions};
use turanlab::formulas::{self, Params, Theorem};
use turanlab::graph::from_graph6;
use turanlab::structure::audit_lemmas;
use turanlab::{ConstructionSpec, Graph, GraphFamily, Mode, TuranEngine};

#[derive(Parser)]
#[command(name = "turanlab", version, about = "Exact Turán numbers for path-and-H-free graphs")]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; 0 uses every core. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a construction expression.
    Construct {
        expr: String,
    },
    /// Canonical graph6 for each graph6 line on stdin.
    Canon,
    /// List every F-free graph on n vertices up to isomorphism, as graph6.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Comma-separated construction expressions.
        #[arg(long, default_value = "")]
        forbid: String,
        #[arg(long)]
        connected: bool,
        /// Write graph6 lines here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact ex(n, F) or ex_conn(n, F) with every extremal graph.
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        forbid: String,
        #[arg(long, default_value = "all")]
        mode: Mode,
    },
    /// Family obtained from H by color-class or adjacent-pair deletion.
    DeriveFamily {
        #[arg(long)]
        h: String,
        #[arg(long, value_enum)]
        kind: Kind,
    },
    /// Evaluate a closed-form prediction.
    Predict(PredictArgs),
    /// Compare a prediction against exhaustive search over a range of n.
    Verify {
        #[command(flatten)]
        args: PredictArgs,
        /// Inclusive range, `a..b`.
        #[arg(long)]
        n_range: String,
    },
    /// Decide the odd-k correction term c for H.
    ResolveC {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        h: String,
        #[arg(long)]
        n_probe: usize,
    },
    /// Exhaustively check the path-decomposition lemmas.
    AuditLemmas {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n_max: usize,
    },
    /// Randomized self-test of canonical labeling and graph6.
    Selfcheck {
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Class,
    Pair,
}

#[derive(Args)]
struct PredictArgs {
    #[arg(long)]
    theorem: Theorem,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    h: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    kk: Option<usize>,
}

impl PredictArgs {
    fn params(&self) -> anyhow::Result<Params> {
        let h = self.h.as_deref().map(parse_spec).transpose()?;
        Ok(Params { n: self.n, k: self.k, h, m: self.m, t: self.t, kk: self.kk })
    }
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Ok,
    Mismatch,
}

fn parse_spec(s: &str) -> anyhow::Result<ConstructionSpec> {
    s.parse().with_context(|| format!("parsing construction {s:?}"))
}

fn parse_family(s: &str) -> anyhow::Result<GraphFamily> {
    if s.trim().is_empty() {
        return Ok(GraphFamily::empty());
    }
    GraphFamily::parse(s).with_context(|| format!("parsing family {s:?}"))
}

fn parse_range(s: &str) -> anyhow::Result<RangeInclusive<usize>> {
    let (a, b) = s.split_once("..").context("range must look like a..b")?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let (a, b): (usize, usize) = (a.trim().parse().context("range start")?, b.trim().parse().context("range end")?);
    if a > b {
        bail!("empty range {s}");
    }
    Ok(a..=b)
}

fn print_json(v: &Value) {
    // a closed pipe downstream is not an error worth reporting
    let _ = writeln!(io::stdout(), "{}", serde_json::to_string_pretty(v).expect("values serialize"));
}

fn stats(g: &Graph) -> anyhow::Result<Value> {
    let connected = g.order() > 0 && g.is_connected()?;
    let chi = if g.order() > 0 { Some(chromatic_number(g)?) } else { None };
    Ok(json!({
        "graph6": g.to_graph6(),
        "canonical": g.canonical().to_graph6(),
        "order": g.order(),
        "edges": g.edge_count(),
        "connected": connected,
        "chromatic_number": chi,
    }))
}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    let engine = TuranEngine::from_env().context("opening result cache")?.with_threads(cli.threads);
    match cli.cmd {
        Command::Construct { expr } => {
            let spec = parse_spec(&expr)?;
            let g = spec.build()?;
            let mut s = stats(&g)?;
            s["spec"] = json!(spec.to_string());
            if cli.json {
                print_json(&s);
            } else {
                println!("{}", g.to_graph6());
                println!("order {}  edges {}  connected {}", g.order(), g.edge_count(), s["connected"]);
            }
        }
        Command::Canon => {
            let mut out = BufWriter::new(io::stdout().lock());
            for (i, line) in io::stdin().lock().lines().enumerate() {
                let line = line?;
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let g = from_graph6(line).with_context(|| format!("stdin line {}", i + 1))?;
                writeln!(out, "{}", g.canonical().to_graph6())?;
            }
        }
        Command::Enumerate { n, forbid, connected, out } => {
            let fam = parse_family(&forbid)?;
            let opts = EnumerateOptions { connected_only: connected, threads: cli.threads, ..Default::default() };
            let mut sink: Box<dyn Write> = match &out {
                Some(path) => Box::new(BufWriter::new(
                    File::create(path).with_context(|| format!("creating {}", path.display()))?,
                )),
                None if cli.json => Box::new(io::sink()),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            let mut graphs = Vec::new();
            let mut failed = None;
            let count = enumerate_free(n, &fam, &opts, &mut |g| {
                if failed.is_none() {
                    if let Err(e) = writeln!(sink, "{}", g.to_graph6()) {
                        failed = Some(e);
                    }
                }
                if cli.json && out.is_none() {
                    graphs.push(g.to_graph6());
                }
            })?;
            if let Some(e) = failed {
                return Err(e.into());
            }
            sink.flush()?;
            drop(sink);
            if cli.json {
                let mut v = json!({ "n": n, "family": fam.graph6_list(), "connected": connected, "count": count });
                if out.is_none() {
                    v["graphs"] = json!(graphs);
                }
                print_json(&v);
            } else if out.is_some() {
                println!("{count} graphs");
            }
        }
        Command::Turan { n, forbid, mode } => {
            let fam = parse_family(&forbid)?;
            let r = engine.turan(n, &fam, mode)?;
            if cli.json {
                print_json(&r.to_json());
            } else {
                println!("n = {n}  family = {}  mode = {mode}", fam.label());
                println!("value = {}", r.value);
                println!("extremal graphs: {}", r.extremal.len());
                for g in &r.extremal {
                    println!("  {}", g.to_graph6());
                }
            }
        }
        Command::DeriveFamily { h, kind } => {
            let g = parse_spec(&h)?.build()?;
            let fam = match kind {
                Kind::Class => color_class_deletions(&g)?,
                Kind::Pair => adjacent_pair_deletions(&g)?,
            };
            if cli.json {
                print_json(&json!({ "h": h, "label": fam.label(), "members": fam.graph6_list() }));
            } else {
                for s in fam.graph6_list() {
                    println!("{s}");
                }
            }
        }
        Command::Predict(args) => {
            let p = formulas::predict(&engine, args.theorem, &args.params()?)?;
            let checks = p.check_constructions()?;
            let mut v = p.to_json();
            v["construction_checks"] = json!(checks
                .iter()
                .map(|c| json!({
                    "spec": c.spec,
                    "order": c.order,
                    "edges": c.edges,
                    "free": c.free,
                    "connected": c.connected,
                    "attains": c.attains,
                }))
                .collect::<Vec<_>>());
            print_json(&v);
        }
        Command::Verify { args, n_range } => {
            let range = parse_range(&n_range)?;
            let ver = formulas::verify(&engine, args.theorem, &args.params()?, range)?;
            if cli.json {
                print_json(&ver.to_json());
            } else {
                println!("{:>4}  {:>12}  {:>6}  {:>6}  note", "n", "predicted", "brute", "match");
                for r in &ver.rows {
                    let pred = r.predicted.as_ref().map_or("n/a".to_string(), |p| p.to_string());
                    let brute = r.brute.map_or("-".to_string(), |b| b.to_string());
                    let mut matched = r.matched.map_or("n/a".to_string(), |m| if m { "yes" } else { "NO" }.to_string());
                    if let Some(s) = r.block_slope {
                        matched = format!("{matched} ({})", formulas::rational_str(s));
                    }
                    println!("{:>4}  {:>12}  {:>6}  {:>6}  {}", r.n, pred, brute, matched, r.note.as_deref().unwrap_or(""));
                }
                match ver.first_stable_n() {
                    Some(n) => println!("matches from n = {n}"),
                    None => println!("no stable match at the end of the range"),
                }
            }
            if !ver.all_match() {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::ResolveC { k, h, n_probe } => {
            let g = parse_spec(&h)?.build()?;
            let res = formulas::resolve_c(&engine, k, &g, n_probe)?;
            if cli.json {
                print_json(&res.to_json());
            } else {
                println!("c = {}", res.c);
                println!("base = {}  condition = {}", res.base, res.condition);
                for w in &res.witnesses {
                    println!(
                        "witness {}  order {}  edges {}  path-free {}  h-free {}",
                        w.spec, w.order, w.edges, w.path_free, w.h_free
                    );
                }
                if let Some(p) = res.probe {
                    println!("probe ex_conn({n_probe}) = {p}");
                }
            }
        }
        Command::AuditLemmas { k, n_max } => {
            let rep = audit_lemmas(k, n_max, cli.threads)?;
            if cli.json {
                print_json(&rep.to_json());
            } else {
                println!("k = {k}  n <= {n_max}");
                println!("graphs {}  paths {}", rep.graphs, rep.paths);
                println!(
                    "checks: off-path bound {}  neighbor rules {}  edge count {}",
                    rep.off_path_checks, rep.neighbor_rule_checks, rep.edge_count_checks
                );
                println!("violations {}", rep.violations.len());
                for v in &rep.violations {
                    println!("{}  path {:?}  {}", v.graph6, v.path, v.what);
                }
            }
            if !rep.violations.is_empty() {
                return Ok(Outcome::Mismatch);
            }
        }
        Command::Selfcheck { trials, max_n } => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let mut failures = Vec::new();
            for _ in 0..trials {
                let n = rng.gen_range(0..=max_n);
                let p: f64 = rng.gen();
                let mut g = Graph::try_new(n)?;
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen_bool(p) {
                            g.add_edge(u, v);
                        }
                    }
                }
                let mut perm: Vec<usize> = (0..n).collect();
                perm.shuffle(&mut rng);
                let h = g.relabel(&perm);
                let round_trip = from_graph6(&g.to_graph6())? == g;
                if g.canonical() != h.canonical() || !round_trip {
                    failures.push(g.to_graph6());
                }
            }
            if cli.json {
                print_json(&json!({ "seed": cli.seed, "trials": trials, "max_n": max_n, "failures": failures }));
            } else {
                println!("seed {}  trials {trials}  failures {}", cli.seed, failures.len());
                for f in &failures {
                    println!("{f}");
                }
            }
            if !failures.is_empty() {
                return Ok(Outcome::Mismatch);
            }
        }
    }
    Ok(Outcome::Ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
