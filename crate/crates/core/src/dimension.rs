//! Check-k-Majority and the majority-dimension search.

use serde::{Deserialize, Serialize};

use crate::blocks::{conjugate_order, two_voter_profile, two_voter_profile_with};
use crate::encoding::{decode_model, encode_check_k, EncodeOptions};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::profile::{LinearOrder, Profile};
use crate::solver::{SatOutcome, SatSolver};
use crate::tournament::decompose;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    FastPath1,
    FastPath2,
    Decomposition,
    Sat,
    TwoPartition,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Yes(Profile),
    No,
    Timeout,
}

impl CheckOutcome {
    pub fn is_yes(&self) -> bool {
        matches!(self, CheckOutcome::Yes(_))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionResult {
    /// `None` when max_k was exhausted or a solver call timed out.
    pub dim: Option<usize>,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Profile>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub timed_out: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct DimensionOptions {
    pub max_k: usize,
    pub use_decomposition: bool,
    pub encode: EncodeOptions,
}

impl Default for DimensionOptions {
    fn default() -> Self {
        DimensionOptions { max_k: 15, use_decomposition: true, encode: EncodeOptions::default() }
    }
}

/// SAT-based decision with a decoded and verified witness.
pub fn check_k_majority(
    g: &Digraph,
    k: usize,
    solver: &SatSolver,
    opts: impl Into<EncodeOptions>,
) -> Result<CheckOutcome> {
    let (f, vm) = encode_check_k(g, k, opts)?;
    match solver.solve(&f)? {
        SatOutcome::Sat(model) => {
            if !f.evaluate(&model) {
                return Err(Error::Backend("solver model does not satisfy the formula".into()));
            }
            let p = decode_model(&model, &vm)?;
            if !p.induces(g) {
                return Err(Error::Internal("decoded profile does not induce the digraph".into()));
            }
            Ok(CheckOutcome::Yes(p))
        }
        SatOutcome::Unsat => Ok(CheckOutcome::No),
        SatOutcome::Timeout => Ok(CheckOutcome::Timeout),
    }
}

pub fn dimension(g: &Digraph, opts: &DimensionOptions, solver: &SatSolver) -> Result<DimensionResult> {
    if g.n() == 0 {
        return Err(Error::Invalid("empty digraph".into()));
    }
    if opts.max_k == 0 {
        return Err(Error::Invalid("max_k must be at least 1".into()));
    }
    let unknown = |method, timed_out| DimensionResult { dim: None, method, witness: None, timed_out };
    if g.is_tournament() {
        if g.is_transitive() {
            let order = LinearOrder::linearize(g)?;
            return Ok(DimensionResult {
                dim: Some(1),
                method: Method::FastPath1,
                witness: Some(Profile::new(g.n(), vec![order])?),
                timed_out: false,
            });
        }
        if opts.use_decomposition {
            let d = decompose(g)?;
            if !d.is_trivial() {
                return dimension_by_decomposition(g, &d, opts, solver);
            }
        }
        sat_search(g, 3, opts, solver)
    } else {
        if opts.max_k < 2 {
            return Ok(unknown(Method::FastPath2, false));
        }
        if let Some(conj) = conjugate_order(g) {
            let p = two_voter_profile_with(g, &conj)?;
            return Ok(DimensionResult { dim: Some(2), method: Method::FastPath2, witness: Some(p), timed_out: false });
        }
        sat_search(g, 4, opts, solver)
    }
}

fn sat_search(g: &Digraph, start: usize, opts: &DimensionOptions, solver: &SatSolver) -> Result<DimensionResult> {
    let mut k = start;
    while k <= opts.max_k {
        match check_k_majority(g, k, solver, opts.encode)? {
            CheckOutcome::Yes(p) => {
                return Ok(DimensionResult { dim: Some(k), method: Method::Sat, witness: Some(p), timed_out: false })
            }
            CheckOutcome::No => k += 2,
            CheckOutcome::Timeout => {
                return Ok(DimensionResult { dim: None, method: Method::Sat, witness: None, timed_out: true })
            }
        }
    }
    Ok(DimensionResult { dim: None, method: Method::Sat, witness: None, timed_out: false })
}

fn pad(p: &Profile, k: usize) -> Result<Profile> {
    let mut out = p.clone();
    let base = p.voters()[0].clone();
    while out.k() + 2 <= k {
        out.push(base.clone());
        out.push(base.reversed());
    }
    if out.k() != k {
        return Err(Error::Internal(format!("cannot pad {} voters to {k}", p.k())));
    }
    Ok(out)
}

fn dimension_by_decomposition(
    g: &Digraph,
    d: &crate::tournament::Decomposition,
    opts: &DimensionOptions,
    solver: &SatSolver,
) -> Result<DimensionResult> {
    let mut parts = Vec::with_capacity(d.components.len() + 1);
    for c in &d.components {
        parts.push(dimension(&g.induced(c), opts, solver)?);
    }
    let summary = dimension(&d.summary, opts, solver)?;
    parts.push(summary);
    if let Some(bad) = parts.iter().find(|r| r.dim.is_none()) {
        return Ok(DimensionResult {
            dim: None,
            method: Method::Decomposition,
            witness: None,
            timed_out: bad.timed_out,
        });
    }
    let z = parts.iter().filter_map(|r| r.dim).max().unwrap_or(1);
    let padded: Vec<Profile> = parts
        .iter()
        .map(|r| pad(r.witness.as_ref().expect("known dimension carries a witness"), z))
        .collect::<Result<_>>()?;
    let (comp_profiles, summary_profile) = padded.split_at(d.components.len());
    let mut voters = Vec::with_capacity(z);
    for i in 0..z {
        let mut ranking = Vec::with_capacity(g.n());
        for &q in summary_profile[0].voters()[i].ranking() {
            let local = comp_profiles[q].voters()[i].ranking();
            ranking.extend(local.iter().map(|&j| d.components[q][j]));
        }
        voters.push(LinearOrder::new(ranking)?);
    }
    let p = Profile::new(g.n(), voters)?;
    if !p.induces(g) {
        return Err(Error::Internal("substituted witness does not induce the tournament".into()));
    }
    Ok(DimensionResult { dim: Some(z), method: Method::Decomposition, witness: Some(p), timed_out: false })
}

/// Largest n accepted by [`min_fas_size`].
pub const FAS_CAP: usize = 10;

/// Minimum feedback arc set size, exact, n <= 10.
pub fn min_fas_size(g: &Digraph) -> Result<usize> {
    min_fas_size_capped(g, FAS_CAP)
}

/// Subset dynamic programme over orderings, with an explicit size cap.
pub fn min_fas_size_capped(g: &Digraph, cap: usize) -> Result<usize> {
    let n = g.n();
    if n > cap || n > 26 {
        return Err(Error::Cap(format!("feedback arc set oracle supports n <= {cap}, got {n}")));
    }
    // back[v] = vertices u with v -> u; placing v after them reverses those arcs
    let back: Vec<u32> = (0..n).map(|v| g.out_neighbors(v).fold(0u32, |m, u| m | 1 << u)).collect();
    let full = (1usize << n) - 1;
    let mut dp = vec![u32::MAX; full + 1];
    dp[0] = 0;
    for s in 0..=full {
        let cur = dp[s];
        if cur == u32::MAX {
            continue;
        }
        let mut rest = !s & full;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let cost = cur + (back[v] & s as u32).count_ones();
            let t = s | 1 << v;
            if cost < dp[t] {
                dp[t] = cost;
            }
        }
    }
    Ok(dp[full] as usize)
}

/// Largest arc count accepted by [`two_partition_check_3`].
pub const TWO_PARTITION_CAP: usize = 21;

/// Exhaustive split into transitive E1 and acyclic, transitively reorientable E2.
/// Returns the first certificate found.
pub fn two_partition_check_3(t: &Digraph) -> Result<Option<(Digraph, Digraph)>> {
    if !t.is_tournament() {
        return Err(Error::Precondition("two-partition check expects a tournament".into()));
    }
    let arcs = t.arcs();
    if arcs.len() > TWO_PARTITION_CAP {
        return Err(Error::Cap(format!("2^|E| scan supports |E| <= {TWO_PARTITION_CAP}, got {}", arcs.len())));
    }
    let n = t.n();
    for mask in (0..1u32 << arcs.len()).rev() {
        let mut e1 = Digraph::new(n);
        let mut e2 = Digraph::new(n);
        for (i, &(u, v)) in arcs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                e1.add_arc(u, v);
            } else {
                e2.add_arc(u, v);
            }
        }
        if e1.is_transitive() && e2.is_acyclic() && e2.symmetric_closure().transitive_orientation().is_some() {
            return Ok(Some((e1, e2)));
        }
    }
    Ok(None)
}

/// Three voters from a certificate of [`two_partition_check_3`].
pub fn three_voter_profile(e1: &Digraph, e2: &Digraph) -> Result<Profile> {
    let mut p = two_voter_profile(e1)?;
    p.push(LinearOrder::linearize(e2)?);
    Ok(p)
}
