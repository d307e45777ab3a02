//! Unlabeled tournament enumeration and exhaustive k-inducibility censuses.

use std::collections::HashSet;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::dimension::{check_k_majority, CheckOutcome, Method};
use crate::encoding::{EncodeOptions, Mode};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::solver::SatSolver;
use crate::tournament::{canonical_form, from_canonical_key};

pub const MAX_CENSUS_N: usize = 8;

/// Canonical keys of all unlabeled tournaments on n vertices, sorted.
pub fn enumerate_keys(n: usize) -> Result<Vec<u64>> {
    if n == 0 || n > MAX_CENSUS_N {
        return Err(Error::Invalid(format!("census supports 1 <= n <= {MAX_CENSUS_N}, got {n}")));
    }
    let mut level = vec![canonical_form(&Digraph::new(1))?];
    for size in 2..=n {
        let parents: Vec<Digraph> = level.iter().map(|&k| from_canonical_key(size - 1, k)).collect();
        let children: Vec<Vec<u64>> = parents
            .par_iter()
            .map(|p| (0..1u32 << (size - 1)).map(|mask| canonical_form(&extend(p, mask))).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let set: HashSet<u64> = children.into_iter().flatten().collect();
        level = set.into_iter().collect();
        level.sort_unstable();
    }
    Ok(level)
}

/// Adds vertex n-1; bit i of `mask` set means the new vertex beats i.
fn extend(p: &Digraph, mask: u32) -> Digraph {
    let m = p.n();
    let mut t = Digraph::new(m + 1);
    for (u, v) in p.arcs() {
        t.add_arc(u, v);
    }
    for i in 0..m {
        if mask >> i & 1 == 1 {
            t.add_arc(m, i);
        } else {
            t.add_arc(i, m);
        }
    }
    t
}

/// One representative per isomorphism class.
pub fn enumerate_tournaments(n: usize) -> Result<Vec<Digraph>> {
    Ok(enumerate_keys(n)?.into_iter().map(|k| from_canonical_key(n, k)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusRecord {
    pub key: u64,
    pub n: usize,
    pub k: usize,
    /// `None` on timeout.
    pub inducible: Option<bool>,
    pub method: Method,
    pub seconds: f64,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CensusReport {
    pub inducible: usize,
    pub not_inducible: usize,
    pub timeouts: usize,
    /// Keys whose two solver runs disagreed.
    pub failures: Vec<u64>,
    pub records: Vec<CensusRecord>,
}

impl CensusReport {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("canonical_key,n,k,inducible,method,seconds\n");
        for r in &self.records {
            let ind = match r.inducible {
                Some(true) => "yes",
                Some(false) => "no",
                None => "timeout",
            };
            let method =
                serde_json::to_value(r.method).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
            s.push_str(&format!("{},{},{},{},{},{:.4}\n", r.key, r.n, r.k, ind, method, r.seconds));
        }
        s
    }
}

/// Whether every tournament on n vertices is k-inducible. NO answers are
/// re-checked with the other encoding; a disagreement is a failure.
pub fn census_dimension(n: usize, k: usize, solver: &SatSolver, encode: EncodeOptions) -> Result<CensusReport> {
    if k.is_multiple_of(2) {
        return Err(Error::Parity(format!("tournaments need an odd voter count, got {k}")));
    }
    let keys = enumerate_keys(n)?;
    let records: Vec<(CensusRecord, bool)> =
        keys.par_iter().map(|&key| census_one(n, k, key, solver, encode)).collect::<Result<_>>()?;
    let mut rep = CensusReport::default();
    for (r, agreed) in records {
        match r.inducible {
            Some(true) => rep.inducible += 1,
            Some(false) => rep.not_inducible += 1,
            None => rep.timeouts += 1,
        }
        if !agreed {
            rep.failures.push(r.key);
        }
        rep.records.push(r);
    }
    Ok(rep)
}

fn census_one(n: usize, k: usize, key: u64, solver: &SatSolver, encode: EncodeOptions) -> Result<(CensusRecord, bool)> {
    let t = from_canonical_key(n, key);
    let start = Instant::now();
    let (inducible, method, agreed) = if t.is_transitive() {
        (Some(true), Method::FastPath1, true)
    } else {
        match check_k_majority(&t, k, solver, encode)? {
            CheckOutcome::Yes(_) => (Some(true), Method::Sat, true),
            CheckOutcome::Timeout => (None, Method::Sat, true),
            CheckOutcome::No => {
                let other = EncodeOptions {
                    mode: match encode.mode {
                        Mode::Optimized => Mode::Direct,
                        Mode::Direct => Mode::Optimized,
                    },
                    break_voter_symmetry: false,
                };
                let second = check_k_majority(&t, k, solver, other)?;
                (Some(false), Method::Sat, matches!(second, CheckOutcome::No | CheckOutcome::Timeout))
            }
        }
    };
    let rec = CensusRecord { key, n, k, inducible, method, seconds: start.elapsed().as_secs_f64() };
    Ok((rec, agreed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_keys(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 12, 56]);
        assert!(enumerate_keys(9).is_err());
        assert!(enumerate_keys(0).is_err());
    }
}
