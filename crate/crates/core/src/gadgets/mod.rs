//! Hardness tournaments and digraphs compiled from CNF formulas, each with a
//! constant-size witness profile assembled from 2-voter blocks.

mod banks;
mod rp;
mod slater;

pub use banks::{banks_tournament, teq_order, teq_tournament};
pub use rp::{rp_digraph, rp_tournament};
pub use slater::{expand_components, kemeny_subdivide, slater_tournament};

use serde::{Deserialize, Serialize};

use crate::blocks::{combine_blocks, two_voter_profile};
use crate::error::{Error, Result};
use crate::graph::{first_conflict, Digraph, WeightedDigraph};
use crate::profile::{LinearOrder, Profile};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GadgetKind {
    Banks,
    Teq,
    Kemeny,
    Slater,
    RpDigraph,
    RpTournament,
}

impl GadgetKind {
    /// Witness size guaranteed by the construction.
    pub fn voters(self) -> usize {
        match self {
            GadgetKind::Banks => 5,
            GadgetKind::Teq => 7,
            GadgetKind::Kemeny => 4,
            GadgetKind::Slater => 7,
            GadgetKind::RpDigraph => 8,
            GadgetKind::RpTournament => 11,
        }
    }

    /// Whether the 2-voter blocks are sub-relations of the gadget and hence
    /// pairwise orientation compatible.
    pub fn compatible_blocks(self) -> bool {
        self != GadgetKind::Slater
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetGraph {
    Plain(Digraph),
    Weighted(WeightedDigraph),
}

impl GadgetGraph {
    pub fn n(&self) -> usize {
        match self {
            GadgetGraph::Plain(g) => g.n(),
            GadgetGraph::Weighted(w) => w.n(),
        }
    }

    pub fn arc_set(&self) -> Digraph {
        match self {
            GadgetGraph::Plain(g) => g.clone(),
            GadgetGraph::Weighted(w) => w.arc_set(),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            GadgetGraph::Plain(g) => g.to_text(),
            GadgetGraph::Weighted(w) => w.to_text(),
        }
    }
}

/// Arc-set decomposition behind a witness: every block contributes margin 2
/// on its arcs, the completion voter contributes 1 in its own direction.
#[derive(Clone, Debug)]
pub struct BlockTrace {
    pub blocks: Vec<Digraph>,
    /// Arcs left to the single completion voter.
    pub residue: Option<Digraph>,
    pub completion: Option<LinearOrder>,
}

impl BlockTrace {
    /// Margins implied by the decomposition alone.
    pub fn margins(&self, n: usize) -> WeightedDigraph {
        let mut w = WeightedDigraph::new(n);
        for b in &self.blocks {
            for (u, v) in b.arcs() {
                w.add(u, v, 2);
            }
        }
        if let Some(c) = &self.completion {
            let r = c.ranking();
            for i in 0..n {
                for j in i + 1..n {
                    w.add(r[i], r[j], 1);
                }
            }
        }
        w
    }
}

#[derive(Clone, Debug)]
pub struct GadgetOutput {
    pub kind: GadgetKind,
    pub graph: GadgetGraph,
    pub decision_vertex: Option<usize>,
    pub witness: Profile,
    pub trace: BlockTrace,
    pub labels: Vec<String>,
}

#[derive(Serialize)]
struct TraceJson<'a> {
    kind: GadgetKind,
    n: usize,
    voters: usize,
    decision_vertex: Option<usize>,
    labels: &'a [String],
    blocks: Vec<Vec<(usize, usize)>>,
    residue: Option<Vec<(usize, usize)>>,
    completion: Option<&'a [usize]>,
}

impl GadgetOutput {
    pub fn trace_json(&self) -> serde_json::Value {
        let t = TraceJson {
            kind: self.kind,
            n: self.graph.n(),
            voters: self.witness.k(),
            decision_vertex: self.decision_vertex,
            labels: &self.labels,
            blocks: self.trace.blocks.iter().map(Digraph::arcs).collect(),
            residue: self.trace.residue.as_ref().map(Digraph::arcs),
            completion: self.trace.completion.as_ref().map(LinearOrder::ranking),
        };
        serde_json::to_value(t).expect("trace serializes")
    }

    /// Structural check of the trace, independent of the witness profile.
    pub fn check_trace(&self) -> Result<()> {
        let n = self.graph.n();
        let arcs = self.graph.arc_set();
        let t = &self.trace;
        if self.kind.compatible_blocks() {
            for i in 0..t.blocks.len() {
                for j in i + 1..t.blocks.len() {
                    if let Some((u, v)) = first_conflict(&t.blocks[i], &t.blocks[j]) {
                        return Err(Error::Incompatible(u, v));
                    }
                }
            }
            let mut union = Digraph::new(n);
            for b in t.blocks.iter().chain(t.residue.iter()) {
                if !b.is_subset_of(&arcs) {
                    return Err(Error::Internal("trace arc set leaves the gadget".into()));
                }
                for (u, v) in b.arcs() {
                    union.add_arc(u, v);
                }
            }
            if union != arcs {
                return Err(Error::Internal("trace arc sets do not cover the gadget".into()));
            }
        }
        if let (Some(res), Some(c)) = (&t.residue, &t.completion) {
            if !res.is_subset_of(&c.as_digraph()) {
                return Err(Error::Internal("completion voter does not extend the residue".into()));
            }
        }
        let m = t.margins(n);
        let ok = match &self.graph {
            GadgetGraph::Plain(g) => m.arc_set() == *g,
            GadgetGraph::Weighted(w) => m == *w,
        };
        if !ok {
            return Err(Error::Internal("trace margins do not reproduce the gadget".into()));
        }
        Ok(())
    }

    /// Witness size, exact induction and the structural trace check.
    pub fn verify(&self) -> Result<()> {
        if self.witness.k() != self.kind.voters() {
            return Err(Error::Internal(format!(
                "{:?} witness has {} voters, expected {}",
                self.kind,
                self.witness.k(),
                self.kind.voters()
            )));
        }
        let induced = match &self.graph {
            GadgetGraph::Plain(g) => self.witness.induces(g),
            GadgetGraph::Weighted(w) => self.witness.induces_weighted(w),
        };
        if !induced {
            return Err(Error::Internal(format!("{:?} witness does not induce the gadget", self.kind)));
        }
        self.check_trace()
    }
}

/// Builds the witness from 2-voter blocks plus an optional single voter and
/// verifies the result.
fn assemble(
    kind: GadgetKind,
    graph: GadgetGraph,
    decision_vertex: Option<usize>,
    labels: Vec<String>,
    blocks: Vec<Digraph>,
    residue: Option<Digraph>,
    completion: Option<LinearOrder>,
) -> Result<GadgetOutput> {
    let n = graph.n();
    let completion = match (completion, &residue) {
        (Some(c), _) => Some(c),
        (None, Some(r)) => Some(LinearOrder::linearize(r)?),
        (None, None) => None,
    };
    let profiles = blocks.iter().map(two_voter_profile).collect::<Result<Vec<_>>>()?;
    let witness = if kind.compatible_blocks() {
        combine_blocks(n, &profiles, completion.as_ref())?
    } else {
        let mut voters: Vec<LinearOrder> = profiles.iter().flat_map(|p| p.voters().iter().cloned()).collect();
        voters.extend(completion.iter().cloned());
        Profile::new(n, voters)?
    };
    let out = GadgetOutput {
        kind,
        graph,
        decision_vertex,
        witness,
        trace: BlockTrace { blocks, residue, completion },
        labels,
    };
    out.verify()?;
    Ok(out)
}

/// Arcs of `g` not in any of `parts`.
fn difference(g: &Digraph, parts: &[&Digraph]) -> Digraph {
    Digraph::from_fn(g.n(), |u, v| g.has_arc(u, v) && parts.iter().all(|p| !p.has_arc(u, v)))
}

fn lit_var(l: i32) -> usize {
    l.unsigned_abs() as usize
}
