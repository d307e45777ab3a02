//! Ranked-pairs gadgets: the weighted digraph (8 voters) and its weighted
//! tournament completion (11 voters).

use super::{assemble, lit_var, GadgetGraph, GadgetKind, GadgetOutput};
use crate::cnf::CnfFormula;
use crate::error::Result;
use crate::graph::{Digraph, WeightedDigraph};
use crate::profile::LinearOrder;
use crate::transforms::check_three_cnf;

/// d = 0, u_i^j = 1 + 4i + (j - 1), x_j = 1 + 4m + j.
struct Layout {
    vars: usize,
    clauses: usize,
}

impl Layout {
    fn n(&self) -> usize {
        1 + 4 * self.vars + self.clauses
    }
    fn d(&self) -> usize {
        0
    }
    fn u(&self, i: usize, j: usize) -> usize {
        1 + 4 * i + j - 1
    }
    fn x(&self, j: usize) -> usize {
        1 + 4 * self.vars + j
    }
    fn labels(&self) -> Vec<String> {
        let mut l = vec!["d".to_string()];
        for i in 1..=self.vars {
            l.extend((1..=4).map(|j| format!("u{i}^{j}")));
        }
        l.extend((1..=self.clauses).map(|j| format!("x{j}")));
        l
    }
}

struct Parts {
    lay: Layout,
    /// (u2,u3) and (u4,u1) per variable.
    heavy: Digraph,
    /// (u1,u2) and (u3,u4) per variable.
    light_cycle: Digraph,
    d_out: Digraph,
    x_in: Digraph,
    /// Literal arcs by position in their clause.
    literal: [Digraph; 3],
}

/// Positive literal p_i contributes u_i^2 -> x_j, negative u_i^4 -> x_j.
fn parts(f: &CnfFormula) -> Result<Parts> {
    check_three_cnf(f)?;
    let lay = Layout { vars: f.num_vars, clauses: f.clauses.len() };
    let n = lay.n();
    let mut heavy = Digraph::new(n);
    let mut light_cycle = Digraph::new(n);
    let mut d_out = Digraph::new(n);
    let mut x_in = Digraph::new(n);
    for i in 0..lay.vars {
        heavy.add_arc(lay.u(i, 2), lay.u(i, 3));
        heavy.add_arc(lay.u(i, 4), lay.u(i, 1));
        light_cycle.add_arc(lay.u(i, 1), lay.u(i, 2));
        light_cycle.add_arc(lay.u(i, 3), lay.u(i, 4));
        d_out.add_arc(lay.d(), lay.u(i, 1));
        d_out.add_arc(lay.d(), lay.u(i, 3));
    }
    let mut literal = [Digraph::new(n), Digraph::new(n), Digraph::new(n)];
    for (j, c) in f.clauses.iter().enumerate() {
        x_in.add_arc(lay.x(j), lay.d());
        for (s, &l) in c.iter().enumerate() {
            let i = lit_var(l) - 1;
            let from = if l > 0 { lay.u(i, 2) } else { lay.u(i, 4) };
            literal[s].add_arc(from, lay.x(j));
        }
    }
    Ok(Parts { lay, heavy, light_cycle, d_out, x_in, literal })
}

fn union(gs: &[&Digraph]) -> Digraph {
    let mut out = Digraph::new(gs[0].n());
    for g in gs {
        for (u, v) in g.arcs() {
            out.add_arc(u, v);
        }
    }
    out
}

/// Weighted digraph on 1 + 4m + l vertices with weights 4 on the heavy
/// cycle arcs and 2 elsewhere; decision vertex d.
pub fn rp_digraph(f: &CnfFormula) -> Result<GadgetOutput> {
    let p = parts(f)?;
    let n = p.lay.n();
    let mut w = WeightedDigraph::new(n);
    for (u, v) in p.heavy.arcs() {
        w.set(u, v, 4);
    }
    let rest = union(&[&p.light_cycle, &p.d_out, &p.x_in, &p.literal[0], &p.literal[1], &p.literal[2]]);
    for (u, v) in rest.arcs() {
        w.set(u, v, 2);
    }
    let blocks = vec![
        union(&[&p.literal[0], &p.heavy]),
        union(&[&p.literal[1], &p.heavy]),
        union(&[&p.literal[2], &p.d_out]),
        union(&[&p.x_in, &p.light_cycle]),
    ];
    assemble(GadgetKind::RpDigraph, GadgetGraph::Weighted(w), Some(p.lay.d()), p.lay.labels(), blocks, None, None)
}

/// Weighted tournament: 5 on heavy arcs, 3 on the other digraph arcs, 1 on
/// the completion; decision vertex d.
pub fn rp_tournament(f: &CnfFormula) -> Result<GadgetOutput> {
    let p = parts(f)?;
    let lay = &p.lay;
    let n = lay.n();
    let mut w = WeightedDigraph::new(n);
    let base = union(&[&p.heavy, &p.light_cycle, &p.d_out, &p.x_in, &p.literal[0], &p.literal[1], &p.literal[2]]);
    for (u, v) in base.arcs() {
        w.set(u, v, if p.heavy.has_arc(u, v) { 5 } else { 3 });
    }
    // completion arcs, all pointing forward in id order
    for a in 0..n {
        for b in a + 1..n {
            if !base.comparable(a, b) {
                w.set(a, b, 1);
            }
        }
    }
    let mut back = Digraph::new(n);
    for i in 0..lay.vars {
        back.add_arc(lay.u(i, 4), lay.u(i, 1));
    }
    let blocks = vec![
        union(&[&p.literal[0], &p.heavy]),
        union(&[&p.literal[1], &p.heavy]),
        union(&[&p.literal[2], &p.d_out]),
        union(&[&p.x_in, &p.light_cycle]),
        union(&[&p.x_in, &back]),
    ];
    let covered = union(&blocks.iter().collect::<Vec<_>>());
    let residue = Digraph::from_fn(n, |u, v| w.weight(u, v) > 0 && !covered.has_arc(u, v));
    let out = assemble(
        GadgetKind::RpTournament,
        GadgetGraph::Weighted(w),
        Some(lay.d()),
        lay.labels(),
        blocks,
        Some(residue),
        Some(LinearOrder::identity(n)),
    )?;
    Ok(out)
}
