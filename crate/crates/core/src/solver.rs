//! External DIMACS solver driven as a subprocess.

use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};
use std::time::{Duration, Instant};

use crate::cnf::CnfFormula;
use crate::error::{Error, Result};

/// Environment variable naming the solver binary.
pub const SOLVER_ENV: &str = "MAJDIM_SAT_SOLVER";
/// Name of the bundled solver binary.
pub const BUNDLED_SOLVER: &str = "majdim-sat";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatOutcome {
    /// `model[v]` is the value of variable v; index 0 is unused.
    Sat(Vec<bool>),
    Unsat,
    Timeout,
}

#[derive(Clone, Debug)]
pub struct SatSolver {
    pub path: PathBuf,
    pub args: Vec<String>,
    pub timeout: Option<Duration>,
}

impl SatSolver {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        SatSolver { path: path.into(), args: Vec::new(), timeout: None }
    }

    pub fn with_timeout(mut self, timeout: Option<Duration>) -> Self {
        self.timeout = timeout;
        self
    }

    /// `$MAJDIM_SAT_SOLVER`, then `majdim-sat` next to the running executable
    /// (or one directory up), then `PATH`.
    pub fn locate() -> Result<SatSolver> {
        if let Some(p) = std::env::var_os(SOLVER_ENV) {
            let p = PathBuf::from(p);
            return if p.is_file() {
                Ok(SatSolver::new(p))
            } else {
                Err(Error::Backend(format!("{SOLVER_ENV}={} does not exist", p.display())))
            };
        }
        let exe_name = format!("{BUNDLED_SOLVER}{}", std::env::consts::EXE_SUFFIX);
        if let Ok(exe) = std::env::current_exe() {
            let mut dir = exe.parent().map(Path::to_path_buf);
            for _ in 0..2 {
                if let Some(d) = dir {
                    let cand = d.join(&exe_name);
                    if cand.is_file() {
                        return Ok(SatSolver::new(cand));
                    }
                    dir = d.parent().map(Path::to_path_buf);
                }
            }
        }
        if let Some(paths) = std::env::var_os("PATH") {
            for d in std::env::split_paths(&paths) {
                let cand = d.join(&exe_name);
                if cand.is_file() {
                    return Ok(SatSolver::new(cand));
                }
            }
        }
        Err(Error::Backend(format!("no SAT solver found; set {SOLVER_ENV} or put {BUNDLED_SOLVER} on PATH")))
    }

    pub fn solve(&self, f: &CnfFormula) -> Result<SatOutcome> {
        let mut file = tempfile::Builder::new().prefix("majdim-").suffix(".cnf").tempfile()?;
        file.write_all(f.to_dimacs().as_bytes())?;
        file.flush()?;
        let mut child = Command::new(&self.path)
            .args(&self.args)
            .arg(file.path())
            .stdin(Stdio::null())
            .stdout(Stdio::piped())
            .stderr(Stdio::null())
            .spawn()
            .map_err(|e| Error::Backend(format!("cannot start {}: {e}", self.path.display())))?;
        let mut stdout = child.stdout.take().expect("piped stdout");
        let reader = std::thread::spawn(move || {
            let mut s = String::new();
            stdout.read_to_string(&mut s).map(|_| s)
        });
        let start = Instant::now();
        let mut nap = Duration::from_micros(200);
        let status = loop {
            if let Some(st) = child.try_wait()? {
                break Some(st);
            }
            if self.timeout.is_some_and(|t| start.elapsed() >= t) {
                let _ = child.kill();
                let _ = child.wait();
                break None;
            }
            std::thread::sleep(nap);
            nap = (nap * 2).min(Duration::from_millis(20));
        };
        let out = reader
            .join()
            .map_err(|_| Error::Backend("reader thread panicked".into()))?
            .map_err(|e| Error::Backend(format!("reading solver output: {e}")))?;
        if status.is_none() {
            return Ok(SatOutcome::Timeout);
        }
        parse_solver_output(&out, f.num_vars)
    }
}

/// Competition-style output: an `s` status line and `v` model lines.
pub fn parse_solver_output(out: &str, num_vars: usize) -> Result<SatOutcome> {
    let mut status = None;
    let mut model = vec![false; num_vars + 1];
    let mut terminated = false;
    for line in out.lines() {
        let line = line.trim();
        if let Some(s) = line.strip_prefix("s ") {
            status = Some(s.trim().to_string());
        } else if let Some(v) = line.strip_prefix('v') {
            for tok in v.split_whitespace() {
                let l: i64 = tok.parse().map_err(|_| Error::Backend(format!("bad model token `{tok}`")))?;
                if l == 0 {
                    terminated = true;
                    continue;
                }
                let var = l.unsigned_abs() as usize;
                if var > num_vars {
                    return Err(Error::Backend(format!("model mentions variable {var} > {num_vars}")));
                }
                model[var] = l > 0;
            }
        }
    }
    match status.as_deref() {
        Some("SATISFIABLE") if terminated || num_vars == 0 => Ok(SatOutcome::Sat(model)),
        Some("SATISFIABLE") => Err(Error::Backend("model not terminated by 0".into())),
        Some("UNSATISFIABLE") => Ok(SatOutcome::Unsat),
        Some("UNKNOWN") => Ok(SatOutcome::Timeout),
        Some(other) => Err(Error::Backend(format!("unexpected status `{other}`"))),
        None => Err(Error::Backend("solver produced no status line".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sat_output() {
        let out = "c hello\ns SATISFIABLE\nv 1 -2\nv 3 0\n";
        assert_eq!(parse_solver_output(out, 3).unwrap(), SatOutcome::Sat(vec![false, true, false, true]));
    }

    #[test]
    fn parses_unsat_and_garbage() {
        assert_eq!(parse_solver_output("s UNSATISFIABLE\n", 2).unwrap(), SatOutcome::Unsat);
        assert!(parse_solver_output("", 2).is_err());
        assert!(parse_solver_output("s SATISFIABLE\nv 1 9 0\n", 2).is_err());
        assert!(parse_solver_output("s SATISFIABLE\nv 1\n", 2).is_err());
    }

    #[test]
    fn missing_binary_is_backend_error() {
        let s = SatSolver::new("/nonexistent/solver");
        let f = CnfFormula::new(1, vec![vec![1]]).unwrap();
        assert!(matches!(s.solve(&f), Err(Error::Backend(_))));
    }
}
