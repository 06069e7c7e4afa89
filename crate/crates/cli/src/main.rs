use std::fs;
use std::io::{self, BufRead, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand};
use ridom_core::gadget::GadgetKind;
use ridom_core::harness::{Suite, SuiteParams, SuiteReport};
use ridom_core::perturbation::{edge_removal_profile, vertex_removal_profile};
use ridom_core::solver::{ColorConstraint, DEFAULT_BRUTE_CAP, DEFAULT_SEARCH_CAP};
use ridom_core::{
    attach_gadget, emit_graph6, enumerate_free_trees, is_er_critical, is_stable, parse_graph6, recognize_family_f,
    recognize_family_t, FMembership, Graph, Solver, TMembership,
};
use serde_json::{json, Value};

const EXIT_VERIFY: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "ridom", version, about = "2-rainbow independent domination: solve, classify, generate, verify")]
struct Cli {
    /// Emit JSON lines instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Largest order for exponential scans (3^n oracle, function enumeration, i(G)).
    #[arg(long, global = true, default_value_t = DEFAULT_BRUTE_CAP)]
    brute_cap: usize,
    /// Largest order for exhaustive free-tree sweeps.
    #[arg(long, global = true, default_value_t = 14)]
    enum_cap: usize,
    /// Largest cyclic component handed to the exact search.
    #[arg(long, global = true, default_value_t = DEFAULT_SEARCH_CAP)]
    search_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// A graph6 string; omit to read lines from --input or standard input.
    graph6: Option<String>,
    /// File of graph6 lines.
    #[arg(long, conflicts_with = "graph6")]
    input: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal weight and lexicographically first optimal function.
    Solve {
        #[command(flatten)]
        input: Input,
        /// Also report the vertices that are 0 in every optimal function.
        #[arg(long)]
        wzero: bool,
        /// Also report the independent domination number.
        #[arg(long)]
        indep: bool,
    },
    /// Stability, edge-removal criticality and family membership.
    Classify {
        #[command(flatten)]
        input: Input,
    },
    /// Optimal weight after each single vertex or edge deletion.
    #[command(group(ArgGroup::new("mode").required(true).args(["vertices", "edges"])))]
    Profile {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        vertices: bool,
        #[arg(long)]
        edges: bool,
    },
    /// Stream graph6 lines.
    Gen {
        #[command(subcommand)]
        what: Gen,
    },
    /// Run a verification suite, or `all`.
    Verify {
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Every free tree of the given order.
    Trees {
        #[arg(long)]
        n: usize,
    },
    /// The spider with k legs of length three.
    Spider {
        #[arg(long)]
        k: usize,
    },
    /// A base graph with a gadget attached at one vertex.
    Gadget {
        /// o1, o2, o3:K, k12, k13, spider:K, k14-1 .. k14-7 (k14-6:K).
        #[arg(long)]
        kind: GadgetKind,
        #[arg(long)]
        base: String,
        #[arg(long)]
        at: usize,
    },
}

struct Ctx {
    json: bool,
    solver: Solver,
    enum_cap: usize,
    out: BufWriter<io::StdoutLock<'static>>,
    status: u8,
}

impl Ctx {
    fn emit(&mut self, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) -> io::Result<()> {
        if self.json {
            writeln!(self.out, "{}", value())
        } else {
            writeln!(self.out, "{}", text())
        }
    }

    fn fail_line(&mut self, line: usize, msg: impl std::fmt::Display) {
        eprintln!("line {line}: {msg}");
        self.status = self.status.max(EXIT_USAGE);
    }
}

/// Calls `f` on each parsed graph with its 1-based line number; bad lines
/// are reported and skipped.
fn for_each_graph<F>(ctx: &mut Ctx, input: &Input, mut f: F) -> io::Result<()>
where
    F: FnMut(&mut Ctx, usize, &str, &Graph) -> io::Result<()>,
{
    let lines: Box<dyn Iterator<Item = io::Result<String>>> = match (&input.graph6, &input.input) {
        (Some(s), _) => Box::new(std::iter::once(Ok(s.clone()))),
        (None, Some(path)) => match fs::File::open(path) {
            Ok(file) => Box::new(io::BufReader::new(file).lines()),
            Err(e) => {
                eprintln!("{}: {e}", path.display());
                ctx.status = EXIT_USAGE;
                return Ok(());
            }
        },
        (None, None) => Box::new(io::stdin().lock().lines()),
    };
    for (i, line) in lines.enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        match parse_graph6(text) {
            Ok(g) => f(ctx, i + 1, text, &g)?,
            Err(e) => ctx.fail_line(i + 1, e),
        }
    }
    Ok(())
}

fn solve(ctx: &mut Ctx, input: &Input, wzero: bool, indep: bool) -> io::Result<()> {
    for_each_graph(ctx, input, |ctx, line, g6, g| {
        let s = ctx.solver;
        let result = (|| {
            let out = s.gamma(g, &ColorConstraint::none(g.order()))?;
            let w0 = if wzero { Some(s.w_zero(g)?) } else { None };
            let i = if indep { Some(s.independent_domination(g)?) } else { None };
            Ok::<_, ridom_core::Error>((out, w0, i))
        })();
        let (out, w0, i) = match result {
            Ok(v) => v,
            Err(e) => {
                ctx.fail_line(line, e);
                return Ok(());
            }
        };
        let gamma = out.weight().expect("unconstrained problems are feasible");
        let witness = out.witness().unwrap().to_string();
        ctx.emit(
            || {
                let mut s = format!("{g6} gamma={gamma} witness={witness}");
                if let Some(w0) = &w0 {
                    s += &format!(" w_zero={w0:?}");
                }
                if let Some(i) = i {
                    s += &format!(" i={i}");
                }
                s
            },
            || {
                let mut v = json!({"line": line, "graph6": g6, "order": g.order(), "gamma": gamma, "witness": witness});
                if let Some(w0) = &w0 {
                    v["w_zero"] = json!(w0);
                }
                if let Some(i) = i {
                    v["independent_domination"] = json!(i);
                }
                v
            },
        )
    })
}

fn classify(ctx: &mut Ctx, input: &Input) -> io::Result<()> {
    for_each_graph(ctx, input, |ctx, line, g6, g| {
        let s = ctx.solver;
        let stable = match is_stable(&s, g) {
            Ok(v) => v,
            Err(e) => {
                ctx.fail_line(line, e);
                return Ok(());
            }
        };
        let tree = g.is_tree();
        let mut value = json!({"line": line, "graph6": g6, "stable": stable, "tree": tree,
            "er_critical": null, "in_T": null, "in_F": null});
        let mut text = format!("{g6} stable={stable} tree={tree}");
        if !tree {
            text += " (tree checks skipped)";
        } else {
            if g.size() > 0 {
                let er = is_er_critical(&s, g).expect("tree with an edge");
                value["er_critical"] = json!(er);
                text += &format!(" er_critical={er}");
            }
            if g.order() >= 3 {
                match recognize_family_t(&s, g) {
                    Ok(TMembership::Member { certificate, .. }) => {
                        text += &format!(" in_T=yes [{certificate}]");
                        value["in_T"] = json!({"member": true, "certificate": certificate});
                    }
                    Ok(TMembership::NotMember { reason }) => {
                        text += &format!(" in_T=no ({reason})");
                        value["in_T"] = json!({"member": false, "reason": reason});
                    }
                    Err(e) => {
                        ctx.fail_line(line, e);
                        return Ok(());
                    }
                }
            }
            match recognize_family_f(g).expect("input is a tree") {
                FMembership::Member(p) => {
                    let pre = emit_graph6(&p.preimage).expect("preimage is smaller than the input");
                    text += &format!(" in_F=yes (preimage {pre})");
                    value["in_F"] = json!({"member": true, "preimage": p});
                }
                FMembership::NotMember { reason } => {
                    text += &format!(" in_F=no ({reason})");
                    value["in_F"] = json!({"member": false, "reason": reason});
                }
            }
        }
        ctx.emit(|| text, || value)
    })
}

fn profile(ctx: &mut Ctx, input: &Input, edges: bool) -> io::Result<()> {
    let mode = if edges { "edges" } else { "vertices" };
    for_each_graph(ctx, input, |ctx, line, g6, g| {
        let p = if edges { edge_removal_profile(&ctx.solver, g) } else { vertex_removal_profile(&ctx.solver, g) };
        match p {
            Ok(p) => ctx.emit(
                || format!("# {g6} {mode}\n{}", p.to_string().trim_end()),
                || json!({"line": line, "graph6": g6, "mode": mode, "profile": p}),
            ),
            Err(e) => {
                ctx.fail_line(line, e);
                Ok(())
            }
        }
    })
}

fn emit_graph(ctx: &mut Ctx, g: &Graph) -> io::Result<()> {
    match emit_graph6(g) {
        Ok(s) => ctx.emit(|| s.clone(), || json!({"graph6": s})),
        Err(e) => {
            eprintln!("{e}");
            ctx.status = EXIT_USAGE;
            Ok(())
        }
    }
}

fn generate(ctx: &mut Ctx, what: &Gen) -> io::Result<()> {
    match what {
        Gen::Trees { n } => {
            if *n > ctx.enum_cap {
                eprintln!("order {n} exceeds --enum-cap {}", ctx.enum_cap);
                ctx.status = EXIT_USAGE;
                return Ok(());
            }
            for t in enumerate_free_trees(*n) {
                emit_graph(ctx, &t)?;
            }
        }
        Gen::Spider { k } => match Graph::spider(*k) {
            Ok(g) => emit_graph(ctx, &g)?,
            Err(e) => {
                eprintln!("{e}");
                ctx.status = EXIT_USAGE;
            }
        },
        Gen::Gadget { kind, base, at } => {
            let built = parse_graph6(base).map_err(ridom_core::Error::from).and_then(|g| attach_gadget(&g, *at, *kind));
            match built {
                Ok(a) => emit_graph(ctx, &a.graph)?,
                Err(e) => {
                    eprintln!("{e}");
                    ctx.status = EXIT_USAGE;
                }
            }
        }
    }
    Ok(())
}

fn print_report(ctx: &mut Ctx, r: &SuiteReport) -> io::Result<()> {
    if ctx.json {
        return writeln!(ctx.out, "{}", serde_json::to_string(r).expect("reports serialize"));
    }
    writeln!(ctx.out, "== {} [{}]", r.suite, r.status)?;
    for c in &r.checks {
        writeln!(ctx.out, "  {:<28} runs={} failures={} skipped={}", c.name, c.runs, c.failures, c.skipped)?;
    }
    for f in &r.failures {
        let g6 = f.graph6.as_deref().unwrap_or("-");
        writeln!(ctx.out, "  FAIL {} graph6={g6} expected={} actual={} {}", f.check, f.expected, f.actual, f.detail)?;
    }
    for n in &r.notes {
        writeln!(ctx.out, "  note: {n}")?;
    }
    if let Some(ev) = &r.evidence {
        write!(ctx.out, "{ev}")?;
    }
    Ok(())
}

fn verify(ctx: &mut Ctx, name: &str, overrides: SuiteParams) -> io::Result<()> {
    let suites = if name == "all" {
        Suite::ALL.to_vec()
    } else {
        match name.parse::<Suite>() {
            Ok(s) => vec![s],
            Err(e) => {
                eprintln!("{e}");
                ctx.status = EXIT_USAGE;
                return Ok(());
            }
        }
    };
    let mut reports = Vec::new();
    for suite in suites {
        let max_n = suite.defaults().max_n.map(|d| overrides.max_n.unwrap_or(d));
        let sweeps_trees = !matches!(suite, Suite::PathCycle | Suite::Gadgets);
        if let Some(n) = max_n.filter(|&n| sweeps_trees && n > ctx.enum_cap) {
            eprintln!("{suite}: --max-n {n} exceeds --enum-cap {}", ctx.enum_cap);
            ctx.status = EXIT_USAGE;
            continue;
        }
        match suite.run(&ctx.solver, &overrides) {
            Ok(r) => {
                print_report(ctx, &r)?;
                ctx.out.flush()?;
                if !r.passed() {
                    ctx.status = ctx.status.max(EXIT_VERIFY);
                }
                reports.push(r);
            }
            Err(e) => {
                eprintln!("{suite}: {e}");
                ctx.status = EXIT_USAGE;
            }
        }
    }
    eprintln!("{}", SuiteReport::SUMMARY_HEADER);
    for r in &reports {
        eprintln!("{}", r.summary_line());
    }
    Ok(())
}

fn run(cli: Cli) -> io::Result<u8> {
    let out = BufWriter::new(io::stdout().lock());
    let solver = Solver::with_caps(cli.brute_cap, cli.search_cap);
    let mut ctx = Ctx { json: cli.json, solver, enum_cap: cli.enum_cap, out, status: 0 };
    match &cli.command {
        Command::Solve { input, wzero, indep } => solve(&mut ctx, input, *wzero, *indep)?,
        Command::Classify { input } => classify(&mut ctx, input)?,
        Command::Profile { input, edges, .. } => profile(&mut ctx, input, *edges)?,
        Command::Gen { what } => generate(&mut ctx, what)?,
        Command::Verify { suite, max_n, trials, seed } => {
            let overrides = SuiteParams { max_n: *max_n, trials: *trials, seed: *seed };
            verify(&mut ctx, suite, overrides)?
        }
    }
    ctx.out.flush()?;
    Ok(ctx.status)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
