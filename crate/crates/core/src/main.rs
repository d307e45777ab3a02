use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use majdim::bounds::expressiveness_upper_bound;
use majdim::census::census_dimension;
use majdim::cnf::CnfFormula;
use majdim::cultures::{sample, CultureSpec, Model, Sample};
use majdim::dimension::{check_k_majority, dimension, CheckOutcome, DimensionOptions};
use majdim::encoding::{EncodeOptions, Mode};
use majdim::gadgets::{self, GadgetOutput};
use majdim::graph::{AnyGraph, Digraph};
use majdim::preflib::{parse_preflib, PrefLibData};
use majdim::solver::SatSolver;
use majdim::transforms::{to_ordered3, to_reducedfew};
use majdim::{Error, Profile, Result};

#[derive(Parser)]
#[command(name = "majdim", version, about = "Majority dimension of digraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SolverArgs {
    /// DIMACS solver binary (default: $MAJDIM_SAT_SOLVER, then bundled majdim-sat)
    #[arg(long)]
    solver: Option<PathBuf>,
    /// Per-call timeout in seconds
    #[arg(long)]
    timeout: Option<f64>,
    #[arg(long, value_enum, default_value = "optimized")]
    mode: ModeArg,
    /// Lexicographic voter ordering constraints (optimized mode)
    #[arg(long)]
    symmetry_breaking: bool,
}

impl SolverArgs {
    fn solver(&self) -> Result<SatSolver> {
        let s = match &self.solver {
            Some(p) => SatSolver::new(p),
            None => SatSolver::locate()?,
        };
        Ok(s.with_timeout(self.timeout.map(Duration::from_secs_f64)))
    }

    fn encode(&self) -> EncodeOptions {
        EncodeOptions { mode: self.mode.into(), break_voter_symmetry: self.symmetry_breaking }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Optimized,
    Direct,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Optimized => Mode::Optimized,
            ModeArg::Direct => Mode::Direct,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Uniform,
    Ic,
    Iac,
    Mallows,
    Spatial,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetArg {
    Banks,
    Teq,
    Kemeny,
    Slater,
    RpDigraph,
    RpTournament,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformArg {
    Ordered3,
    Reducedfew,
}

#[derive(Subcommand)]
enum Cmd {
    /// Majority dimension with witness, as JSON
    Dim {
        /// Digraph file (`n m` + `u v` rows, or `u v w` rows for weights)
        #[arg(long, conflicts_with = "preflib", required_unless_present = "preflib")]
        graph: Option<PathBuf>,
        /// PrefLib file; the majority relation of its profile or margins is used
        #[arg(long)]
        preflib: Option<PathBuf>,
        #[arg(long, default_value_t = 15)]
        max_k: usize,
        #[arg(long)]
        no_decomposition: bool,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether k voters induce the digraph (exit 0 yes, 1 no)
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(short, long)]
        k: usize,
        /// Write the witness profile here on YES
        #[arg(long)]
        witness: Option<PathBuf>,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Exhaustive census over unlabeled tournaments, CSV output
    Census {
        #[arg(short, long)]
        n: usize,
        #[arg(short, long)]
        k: usize,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Largest size all of whose tournaments k voters might still induce
    Bounds {
        #[arg(short, long, required = true)]
        k: Vec<u64>,
    },
    /// Draw tournaments or profiles from a stochastic model
    Sample {
        #[arg(long, value_enum)]
        model: ModelArg,
        #[arg(short, long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 51)]
        voters: usize,
        #[arg(long, default_value_t = 0.5)]
        phi: f64,
        #[arg(long, default_value_t = 2)]
        dims: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        out_dir: PathBuf,
        /// Also compute the dimension of every majority digraph
        #[arg(long)]
        dim: bool,
        #[arg(long, default_value_t = 15)]
        max_k: usize,
        #[command(flatten)]
        solver: SolverArgs,
    },
    /// Compile a formula (or a digraph for kemeny) into a hardness gadget
    Gadget {
        #[arg(long, value_enum)]
        kind: GadgetArg,
        /// DIMACS CNF, or a digraph file for kemeny
        #[arg(long)]
        input: PathBuf,
        /// Writes PREFIX.dg or PREFIX.wdg, PREFIX.prof and PREFIX.trace.json
        #[arg(long)]
        out_prefix: PathBuf,
        /// Bring the formula into the required normal form first
        #[arg(long)]
        normalize: bool,
        /// Slater component size
        #[arg(long, default_value_t = 1)]
        component_size: usize,
    },
    /// Rewrite a 3-CNF into Ordered3 or ReducedFew form
    Transform {
        #[arg(long, value_enum)]
        to: TransformArg,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check that a profile induces a digraph (exact margins for weighted files)
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        profile: PathBuf,
    },
}

/// Domain answer of a decision subcommand.
enum Answer {
    Yes,
    No,
    Timeout,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_digraph(path: &Path) -> Result<Digraph> {
    Ok(match AnyGraph::from_text(&read(path)?)? {
        AnyGraph::Plain(g) => g,
        AnyGraph::Weighted(w) => w.arc_set(),
    })
}

fn run(cli: Cli) -> Result<Answer> {
    match cli.cmd {
        Cmd::Dim { graph, preflib, max_k, no_decomposition, solver, out } => {
            let g = match (graph, preflib) {
                (Some(p), _) => load_digraph(&p)?,
                (None, Some(p)) => match parse_preflib(&p)? {
                    PrefLibData::Profile(pr) => pr.majority_digraph(),
                    PrefLibData::Weighted(w) => w.arc_set(),
                },
                (None, None) => unreachable!("clap requires one input"),
            };
            let opts = DimensionOptions { max_k, use_decomposition: !no_decomposition, encode: solver.encode() };
            let res = dimension(&g, &opts, &solver.solver()?)?;
            let timed_out = res.timed_out;
            let text = serde_json::to_string_pretty(&res).expect("result serializes") + "\n";
            write_or_print(out.as_deref(), &text)?;
            Ok(if timed_out { Answer::Timeout } else { Answer::Yes })
        }
        Cmd::Check { graph, k, witness, solver } => {
            let g = load_digraph(&graph)?;
            match check_k_majority(&g, k, &solver.solver()?, solver.encode())? {
                CheckOutcome::Yes(p) => {
                    if let Some(w) = witness {
                        fs::write(w, p.to_text())?;
                    }
                    println!("YES");
                    Ok(Answer::Yes)
                }
                CheckOutcome::No => {
                    println!("NO");
                    Ok(Answer::No)
                }
                CheckOutcome::Timeout => {
                    println!("TIMEOUT");
                    Ok(Answer::Timeout)
                }
            }
        }
        Cmd::Census { n, k, solver, out } => {
            let rep = census_dimension(n, k, &solver.solver()?, solver.encode())?;
            write_or_print(out.as_deref(), &rep.to_csv())?;
            eprintln!(
                "n={n} k={k} classes={} inducible={} not_inducible={} timeouts={} disagreements={}",
                rep.records.len(),
                rep.inducible,
                rep.not_inducible,
                rep.timeouts,
                rep.failures.len()
            );
            if !rep.failures.is_empty() {
                return Err(Error::Internal(format!("solver runs disagree on keys {:?}", rep.failures)));
            }
            Ok(if rep.timeouts > 0 { Answer::Timeout } else { Answer::Yes })
        }
        Cmd::Bounds { k } => {
            for k in k {
                println!("{}", expressiveness_upper_bound(k)?);
            }
            Ok(Answer::Yes)
        }
        Cmd::Sample { model, n, seed, voters, phi, dims, count, out_dir, dim, max_k, solver } => {
            let model = match model {
                ModelArg::Uniform => Model::UniformTournament,
                ModelArg::Ic => Model::Ic,
                ModelArg::Iac => Model::Iac,
                ModelArg::Mallows => Model::Mallows,
                ModelArg::Spatial => Model::Spatial,
            };
            let spec = CultureSpec { model, n, voters, phi, dims, seed };
            spec.validate()?;
            fs::create_dir_all(&out_dir)?;
            let sat = if dim { Some(solver.solver()?) } else { None };
            let opts = DimensionOptions { max_k, use_decomposition: true, encode: solver.encode() };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut entries = Vec::with_capacity(count);
            let mut timed_out = false;
            for i in 0..count {
                let s = sample(&spec, &mut rng)?;
                let (file, g) = match &s {
                    Sample::Tournament(t) => {
                        let f = format!("sample_{i:04}.dg");
                        fs::write(out_dir.join(&f), t.to_text())?;
                        (f, t.clone())
                    }
                    Sample::Profile(p) => {
                        let f = format!("sample_{i:04}.prof");
                        fs::write(out_dir.join(&f), p.to_text())?;
                        (f, p.majority_digraph())
                    }
                };
                let mut entry = json!({ "file": file, "classification": g.classify() });
                if let Some(sat) = &sat {
                    let r = dimension(&g, &opts, sat)?;
                    timed_out |= r.timed_out;
                    entry["dim"] = json!(r.dim);
                    entry["method"] = json!(r.method);
                }
                entries.push(entry);
            }
            let sidecar = json!({ "spec": spec, "samples": entries });
            fs::write(out_dir.join("samples.json"), serde_json::to_string_pretty(&sidecar).expect("json") + "\n")?;
            Ok(if timed_out { Answer::Timeout } else { Answer::Yes })
        }
        Cmd::Gadget { kind, input, out_prefix, normalize, component_size } => {
            let text = read(&input)?;
            let out: GadgetOutput = match kind {
                GadgetArg::Kemeny => gadgets::kemeny_subdivide(&load_digraph(&input)?)?,
                _ => {
                    let mut f = CnfFormula::from_dimacs(&text)?;
                    if normalize {
                        f = match kind {
                            GadgetArg::Banks | GadgetArg::Teq => to_ordered3(&f)?,
                            GadgetArg::Slater => to_reducedfew(&f)?,
                            _ => f,
                        };
                    }
                    match kind {
                        GadgetArg::Banks => gadgets::banks_tournament(&f)?,
                        GadgetArg::Teq => gadgets::teq_tournament(&f)?,
                        GadgetArg::Slater => gadgets::slater_tournament(&f)?,
                        GadgetArg::RpDigraph => gadgets::rp_digraph(&f)?,
                        GadgetArg::RpTournament => gadgets::rp_tournament(&f)?,
                        GadgetArg::Kemeny => unreachable!(),
                    }
                }
            };
            let with_ext = |ext: &str| {
                let mut s = out_prefix.clone().into_os_string();
                s.push(ext);
                PathBuf::from(s)
            };
            let mut trace = out.trace_json();
            if component_size > 1 {
                let (big, p) = gadgets::expand_components(&out, component_size)?;
                fs::write(with_ext(".dg"), big.to_text())?;
                fs::write(with_ext(".prof"), p.to_text())?;
                trace["component_size"] = json!(component_size);
            } else {
                let ext = match out.graph {
                    gadgets::GadgetGraph::Plain(_) => ".dg",
                    gadgets::GadgetGraph::Weighted(_) => ".wdg",
                };
                fs::write(with_ext(ext), out.graph.to_text())?;
                fs::write(with_ext(".prof"), out.witness.to_text())?;
            }
            fs::write(with_ext(".trace.json"), serde_json::to_string_pretty(&trace).expect("json") + "\n")?;
            println!("{} vertices, {} voters", out.graph.n(), out.witness.k());
            Ok(Answer::Yes)
        }
        Cmd::Transform { to, input, out } => {
            let f = CnfFormula::from_dimacs(&read(&input)?)?;
            let g = match to {
                TransformArg::Ordered3 => to_ordered3(&f)?,
                TransformArg::Reducedfew => to_reducedfew(&f)?,
            };
            write_or_print(out.as_deref(), &g.to_dimacs())?;
            Ok(Answer::Yes)
        }
        Cmd::Verify { graph, profile } => {
            let p = Profile::from_text(&read(&profile)?)?;
            let ok = match AnyGraph::from_text(&read(&graph)?)? {
                AnyGraph::Plain(g) => p.induces(&g),
                AnyGraph::Weighted(w) => p.induces_weighted(&w),
            };
            println!("{}", if ok { "OK" } else { "MISMATCH" });
            Ok(if ok { Answer::Yes } else { Answer::No })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Answer::Yes) => ExitCode::SUCCESS,
        Ok(Answer::No) => ExitCode::from(1),
        Ok(Answer::Timeout) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            let infra = e.is_infrastructure() || matches!(e, Error::Internal(_));
            ExitCode::from(if infra { 3 } else { 2 })
        }
    }
}
