//! Constructive witnesses: 2-voter blocks and their combination.

use crate::error::{Error, Result};
use crate::graph::{first_conflict, Digraph};
use crate::profile::{LinearOrder, Profile};

/// Transitive reorientation of the incomparability graph, if `e` is 2-inducible.
pub fn conjugate_order(e: &Digraph) -> Option<Digraph> {
    if !e.is_transitive() {
        return None;
    }
    e.incomparability_graph().transitive_orientation()
}

pub fn is_2_inducible(e: &Digraph) -> bool {
    conjugate_order(e).is_some()
}

/// Union of two arc sets that share no pair.
fn disjoint_union(a: &Digraph, b: &Digraph) -> Digraph {
    let mut u = a.clone();
    for (x, y) in b.arcs() {
        u.add_arc(x, y);
    }
    u
}

/// Voters E ∪ E' and E ∪ conv(E'), every arc of `e` with margin 2.
pub fn two_voter_profile(e: &Digraph) -> Result<Profile> {
    let conj = conjugate_order(e).ok_or_else(|| Error::Precondition("arc set is not 2-inducible".into()))?;
    two_voter_profile_with(e, &conj)
}

/// As [`two_voter_profile`], with a caller-supplied reorientation.
pub fn two_voter_profile_with(e: &Digraph, conj: &Digraph) -> Result<Profile> {
    let r1 =
        LinearOrder::linearize(&disjoint_union(e, conj)).map_err(|_| Error::Precondition("E ∪ E' is cyclic".into()))?;
    let r2 = LinearOrder::linearize(&disjoint_union(e, &conj.converse()))
        .map_err(|_| Error::Precondition("E ∪ conv(E') is cyclic".into()))?;
    let p = Profile::new(e.n(), vec![r1, r2])?;
    if !p.induces(e) {
        return Err(Error::Precondition("supplied reorientation does not yield a 2-voter witness".into()));
    }
    Ok(p)
}

/// Concatenates 2-voter blocks and an optional completion voter, checking
/// that the blocks' majority arc sets are pairwise orientation compatible.
pub fn combine_blocks(n: usize, blocks: &[Profile], completion: Option<&LinearOrder>) -> Result<Profile> {
    let arcs: Vec<Digraph> = blocks.iter().map(Profile::majority_digraph).collect();
    for i in 0..arcs.len() {
        for j in i + 1..arcs.len() {
            if let Some((u, v)) = first_conflict(&arcs[i], &arcs[j]) {
                return Err(Error::Incompatible(u, v));
            }
        }
    }
    let mut voters = Vec::new();
    for b in blocks {
        if b.n() != n {
            return Err(Error::Invalid(format!("block over {} alternatives, expected {n}", b.n())));
        }
        voters.extend(b.voters().iter().cloned());
    }
    if let Some(c) = completion {
        voters.push(c.clone());
    }
    Profile::new(n, voters)
}
