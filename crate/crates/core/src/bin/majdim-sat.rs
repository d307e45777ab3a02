//! DIMACS front end for the CaDiCaL library.
//!
//! Usage: `majdim-sat [--config NAME] [--seed S] [--conflicts N] [FILE]`
//! (stdin when omitted). Prints `s SATISFIABLE` with `v` model lines and
//! exits 10, `s UNSATISFIABLE` and exits 20, or `s UNKNOWN` and exits 0 when
//! the conflict limit is reached. `--seed` renames variables and shuffles
//! clauses before solving. The default configuration is `sat`; the census and
//! dimension workloads are dominated by hard satisfiable instances.

use std::io::{Read, Write};

use majdim::cnf::CnfFormula;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fail(msg: &str) -> ! {
    eprintln!("c {msg}");
    std::process::exit(1);
}

struct Opts {
    config: Option<String>,
    seed: Option<u64>,
    conflicts: Option<i32>,
    path: Option<String>,
}

fn parse_args() -> Opts {
    let mut o = Opts { config: None, seed: None, conflicts: None, path: None };
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        let mut value = |name: &str| args.next().unwrap_or_else(|| fail(&format!("{name} needs a value")));
        match a.as_str() {
            "--config" => o.config = Some(value("--config")),
            "--seed" => o.seed = Some(value("--seed").parse().unwrap_or_else(|_| fail("bad --seed"))),
            "--conflicts" => {
                o.conflicts = Some(value("--conflicts").parse().unwrap_or_else(|_| fail("bad --conflicts")))
            }
            _ if o.path.is_none() => o.path = Some(a),
            _ => fail(&format!("unexpected argument {a}")),
        }
    }
    o
}

fn main() {
    let opts = parse_args();
    let text = match &opts.path {
        Some(path) => std::fs::read_to_string(path).unwrap_or_else(|e| fail(&format!("cannot read {path}: {e}"))),
        None => {
            let mut s = String::new();
            if let Err(e) = std::io::stdin().read_to_string(&mut s) {
                fail(&format!("cannot read stdin: {e}"));
            }
            s
        }
    };
    let f = CnfFormula::from_dimacs(&text).unwrap_or_else(|e| fail(&e.to_string()));
    let config = opts.config.as_deref().unwrap_or("sat");
    let mut solver: cadical::Solver =
        cadical::Solver::with_config(config).unwrap_or_else(|_| fail(&format!("bad configuration {config}")));
    if let Some(limit) = opts.conflicts {
        solver.set_limit("conflicts", limit).unwrap_or_else(|_| fail("cannot set conflict limit"));
    }
    // rename[v] is the solver-side name of variable v
    let mut rename: Vec<i32> = (0..=f.num_vars as i32).collect();
    let mut clauses = f.clauses.clone();
    if let Some(seed) = opts.seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rename[1..].shuffle(&mut rng);
        clauses.shuffle(&mut rng);
    }
    let map = |l: i32| rename[l.unsigned_abs() as usize] * l.signum();
    if f.num_vars > 0 {
        solver.reserve(f.num_vars as i32);
    }
    for c in &clauses {
        solver.add_clause(c.iter().map(|&l| map(l)));
    }
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let code = match solver.solve() {
        Some(true) => {
            let _ = writeln!(out, "s SATISFIABLE");
            let mut line = String::from("v");
            for v in 1..=f.num_vars as i32 {
                let lit = if solver.value(map(v)) == Some(false) { -v } else { v };
                line.push_str(&format!(" {lit}"));
                if line.len() > 72 {
                    let _ = writeln!(out, "{line}");
                    line = String::from("v");
                }
            }
            let _ = writeln!(out, "{line} 0");
            10
        }
        Some(false) => {
            let _ = writeln!(out, "s UNSATISFIABLE");
            20
        }
        None => {
            let _ = writeln!(out, "s UNKNOWN");
            0
        }
    };
    let _ = out.flush();
    drop(out);
    std::process::exit(code);
}
