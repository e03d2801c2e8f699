//! Command-line interface.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use oscsolve_core::dynamics::{run, Schedule, STABILITY_CEILING};
use oscsolve_core::oracle::{self, ExactHamiltonian, OracleBudget};
use oscsolve_core::solve::{SolveOutcome, Solver};
use oscsolve_core::{DistanceMatrix, Graph, Network, RunConfig};

use crate::error::{Result, ShellError};
use crate::exec::RayonExecutor;
use crate::formats::{format_edge_list, parse_distance_matrix, parse_edge_list, read_text};
use crate::record::{timestamp, write_result, BalanceName, IntegratorName, Parameters, ResultRecord};
use crate::trace::{write_trajectory, PHASE_COLUMN_LIMIT};

#[derive(Debug, Parser)]
#[command(name = "oscsolve", version, about = "Coupled-oscillator solvers for graph problems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the oscillator dynamics on an instance.
    Solve(SolveArgs),
    /// Solve an instance exactly (small instances only).
    Oracle(OracleArgs),
    /// Run both and print the ratio.
    Compare(SolveArgs),
    /// Write a generated graph as an edge list.
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    #[value(alias = "maxcut")]
    Maxkcut,
    #[value(alias = "coloring")]
    Color,
    Mis,
    Clique,
    Tsp,
    #[value(alias = "hc")]
    Hamiltonian,
    #[value(alias = "gp")]
    Partition,
}

impl Problem {
    fn name(self) -> &'static str {
        match self {
            Problem::Maxkcut => "maxkcut",
            Problem::Color => "color",
            Problem::Mis => "mis",
            Problem::Clique => "clique",
            Problem::Tsp => "tsp",
            Problem::Hamiltonian => "hamiltonian",
            Problem::Partition => "partition",
        }
    }
}

#[derive(Debug, Clone, Args)]
struct SolveArgs {
    problem: Problem,
    /// Edge list, or a CSV distance matrix for `tsp`.
    instance: PathBuf,
    /// Number of sets for `maxkcut`.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Bump width; defaults to π/(8·order).
    #[arg(long)]
    sigma: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    dt: f64,
    /// Simulated time (cycles).
    #[arg(long, default_value_t = 100.0)]
    cycles: f64,
    /// C1 at the end of the ramp. Partition default 0.5, otherwise 10.
    #[arg(long)]
    anneal_a: Option<f64>,
    /// C1 at the start of the ramp. Partition default 0.5, otherwise 1.
    #[arg(long)]
    c1_start: Option<f64>,
    #[arg(long, default_value_t = 1.0)]
    csync: f64,
    /// Cut weight of the partition dynamics.
    #[arg(long, default_value_t = 1.0)]
    c2: f64,
    #[arg(long, default_value_t = 20)]
    restarts: usize,
    /// First restart seed; restart r uses seed + r.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 0.1)]
    record_every: f64,
    #[arg(long, value_enum, default_value_t = IntegratorName::Euler)]
    integrator: IntegratorName,
    #[arg(long, value_enum, default_value_t = BalanceName::Total)]
    balance: BalanceName,
    /// Use raw distances instead of D/max(D) as TSP couplings.
    #[arg(long)]
    raw_distances: bool,
    /// Keep edge weights instead of reading the graph as unweighted.
    #[arg(long)]
    weighted: bool,
    /// Write the best restart's trajectory here.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Include phase columns in the trace even for large instances.
    #[arg(long)]
    trace_phases: bool,
    /// Write the result document here.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl SolveArgs {
    fn parameters(&self) -> Parameters {
        let gp = self.problem == Problem::Partition;
        let c1 = self.c1_start.unwrap_or(if gp { 0.5 } else { 1.0 });
        let a = self.anneal_a.unwrap_or(if gp { 0.5 } else { 10.0 });
        Parameters {
            k: (self.problem == Problem::Maxkcut).then_some(self.k),
            sigma: self.sigma,
            dt: self.dt,
            cycles: self.cycles,
            c1_start: c1,
            anneal_a: a,
            csync: self.csync,
            c2: self.c2,
            seed: self.seed,
            restarts: self.restarts,
            record_every: self.record_every,
            integrator: self.integrator,
            balance: self.balance,
            normalize_distances: !self.raw_distances,
            weighted: self.weighted,
        }
    }
}

#[derive(Debug, Clone, Args)]
struct OracleArgs {
    problem: Problem,
    instance: PathBuf,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long)]
    weighted: bool,
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// Möbius ladder on n nodes.
    Mobius {
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// G(n, p) random graph.
    Random {
        n: usize,
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command) -> Result<()> {
    match cmd {
        Command::Solve(args) => {
            let start = std::time::Instant::now();
            let record = solve(&args)?;
            println!("{}", summary(&record));
            // kept out of the result document so reruns stay byte-identical
            eprintln!("wall time {:.3}s", start.elapsed().as_secs_f64());
            Ok(())
        }
        Command::Oracle(args) => {
            println!("{}", oracle(&args)?);
            Ok(())
        }
        Command::Compare(args) => {
            let record = solve(&args)?;
            let exact = oracle(&OracleArgs {
                problem: args.problem,
                instance: args.instance.clone(),
                k: args.k,
                weighted: args.weighted,
            })?;
            println!("{}", summary(&record));
            println!("oracle {exact}");
            if let Ok(best) = exact.parse::<f64>() {
                if best != 0.0 {
                    println!("ratio {}", record.best_score / best);
                }
            }
            Ok(())
        }
        Command::Gen(g) => {
            let (graph, out) = match g {
                GenCommand::Mobius { n, out } => (Graph::mobius_ladder(n)?, out),
                GenCommand::Random { n, p, seed, out } => (Graph::random(n, p, seed)?, out),
            };
            let text = format_edge_list(&graph);
            match out {
                Some(path) => std::fs::write(&path, text).map_err(|e| ShellError::io(path, e)),
                None => std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| ShellError::io("<stdout>", e)),
            }
        }
    }
}

fn summary(r: &ResultRecord) -> String {
    format!("{} best {} valid {}", r.problem, r.best_score, r.valid)
}

enum Instance {
    Graph(Graph),
    Matrix(DistanceMatrix),
}

fn load(problem: Problem, path: &Path, weighted: bool) -> Result<Instance> {
    let text = read_text(path)?;
    Ok(match problem {
        Problem::Tsp => Instance::Matrix(parse_distance_matrix(&text)?),
        _ => Instance::Graph(parse_edge_list(&text, weighted)?),
    })
}

fn instance_id(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

/// Runs a solve as described by the CLI arguments and writes the requested files.
fn solve(args: &SolveArgs) -> Result<ResultRecord> {
    let params = args.parameters();
    let instance = load(args.problem, &args.instance, args.weighted)?;
    let exec = RayonExecutor::from_env()?;
    let (record, replay) = solve_instance(args.problem, &instance, &params, instance_id(&args.instance), &exec)?;
    if let Some(path) = &args.trace {
        if let Some((net, seed)) = replay {
            let phases = net.len() <= PHASE_COLUMN_LIMIT || args.trace_phases;
            let cfg = RunConfig { seed, record_phases: phases, ..params.solver_config().run };
            let r = run(&net, &params.solver_config().schedule, &cfg)?;
            write_trajectory(&r, path)?;
        }
    }
    if let Some(path) = &args.out {
        write_result(&record, path)?;
    }
    Ok(record)
}

type Replay = Option<(Network, u64)>;

fn solve_instance(
    problem: Problem,
    instance: &Instance,
    params: &Parameters,
    id: String,
    exec: &RayonExecutor,
) -> Result<(ResultRecord, Replay)> {
    let cfg = params.solver_config();
    let sched: Schedule = cfg.schedule;
    if sched.exceeds_stability_ceiling(STABILITY_CEILING) {
        eprintln!(
            "warning: C1/Csync reaches {} (above {STABILITY_CEILING}); clusters may not form",
            sched.c1_start.max(sched.anneal_target) / sched.c_sync
        );
    }
    let solver = Solver::with_executor(cfg, exec);
    let (n, m) = match instance {
        Instance::Graph(g) => (g.node_count(), g.edge_count()),
        Instance::Matrix(d) => (d.len(), d.len() * d.len().saturating_sub(1) / 2),
    };
    let base = ResultRecord {
        problem: problem.name().to_string(),
        instance: id,
        n,
        m,
        parameters: params.clone(),
        best_score: 0.0,
        valid: false,
        best_seed: None,
        discreteness: None,
        energy_initial: None,
        energy_final: None,
        solution: Vec::new(),
        trials: Vec::new(),
        timestamp: timestamp(),
    };
    let replay_of = |net: Network, o: &SolveOutcome| Some((net, o.best().seed));
    Ok(match (problem, instance) {
        (Problem::Tsp, Instance::Matrix(d)) => {
            let o = solver.tsp(d)?;
            (base.with_outcome(&o), replay_of(solver.tsp_network(d)?, &o))
        }
        (Problem::Maxkcut, Instance::Graph(g)) => {
            let o = solver.max_k_cut(g, params.k.unwrap_or(2))?;
            (base.with_outcome(&o), replay_of(solver.max_k_cut_network(g, params.k.unwrap_or(2))?, &o))
        }
        (Problem::Hamiltonian, Instance::Graph(g)) => {
            let o = solver.hamiltonian(g)?;
            (base.with_outcome(&o), replay_of(solver.hamiltonian_network(g)?, &o))
        }
        (Problem::Partition, Instance::Graph(g)) => {
            let o = solver.graph_partition(g)?;
            (base.with_outcome(&o), replay_of(solver.partition_network(g)?, &o))
        }
        (Problem::Color, Instance::Graph(g)) => {
            let c = solver.chromatic_search(g)?;
            let (rec, replay) = match c.attempts.last() {
                Some((k, o)) => (base.with_outcome(o), replay_of(solver.max_k_cut_network(g, *k)?, o)),
                None => (base, None),
            };
            let rec = ResultRecord { best_score: c.colors as f64, valid: c.proper, solution: c.labels, ..rec };
            (rec, replay)
        }
        (Problem::Mis | Problem::Clique, Instance::Graph(g)) => {
            let set = if problem == Problem::Mis {
                solver.approximate_mis(g)?
            } else {
                solver.approximate_max_clique(g)?
            };
            let rec = ResultRecord { best_score: set.len() as f64, valid: true, solution: set, ..base };
            (rec, None)
        }
        _ => unreachable!("instance kind follows the problem"),
    })
}

/// Exact value as printed by `oracle`.
fn oracle(args: &OracleArgs) -> Result<String> {
    let b = OracleBudget::default();
    Ok(match load(args.problem, &args.instance, args.weighted)? {
        Instance::Matrix(d) => oracle::exact_tsp(&d, &b)?.length.to_string(),
        Instance::Graph(g) => match args.problem {
            Problem::Maxkcut => oracle::exact_max_k_cut(&g, args.k, &b)?.value.to_string(),
            Problem::Color => oracle::exact_chromatic(&g, &b)?.to_string(),
            Problem::Mis => oracle::exact_mis(&g, &b)?.len().to_string(),
            Problem::Clique => oracle::exact_mis(&g.complement()?, &b)?.len().to_string(),
            Problem::Partition => oracle::exact_balanced_partition(&g, &b)?.cut_edges.to_string(),
            Problem::Hamiltonian => match oracle::exact_hamiltonian(&g, &b)? {
                ExactHamiltonian::Cycle(c) => format!("cycle {}", join(&c)),
                ExactHamiltonian::Path(p) => format!("path {}", join(&p)),
                ExactHamiltonian::None => "none".to_string(),
            },
            Problem::Tsp => unreachable!("tsp instances are matrices"),
        },
    })
}

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Reruns the solve described by a result document on the given instance.
pub fn replay(record: &ResultRecord, instance: &Path) -> Result<ResultRecord> {
    let problem = Problem::from_str(&record.problem, true).map_err(ShellError::Usage)?;
    let loaded = load(problem, instance, record.parameters.weighted)?;
    let exec = RayonExecutor::from_env()?;
    Ok(solve_instance(problem, &loaded, &record.parameters, record.instance.clone(), &exec)?.0)
}
