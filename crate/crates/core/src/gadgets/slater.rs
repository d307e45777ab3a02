//! Arc subdivision for Kemeny and the Slater tournament over ReducedFew formulas.

use super::{assemble, lit_var, GadgetGraph, GadgetKind, GadgetOutput};
use crate::cnf::CnfFormula;
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::profile::{LinearOrder, Profile};
use crate::transforms::is_reduced_few;

/// Subdivides every arc (a,b) by a fresh vertex e_ab; subdividers get ids
/// n.. in sorted arc order. 4-voter witness from the two star forests.
pub fn kemeny_subdivide(g: &Digraph) -> Result<GadgetOutput> {
    let n = g.n();
    let arcs = g.arcs();
    let total = n + arcs.len();
    let mut out = Digraph::new(total);
    let mut e1 = Digraph::new(total);
    let mut e2 = Digraph::new(total);
    let mut labels: Vec<String> = (0..n).map(|v| v.to_string()).collect();
    for (s, &(a, b)) in arcs.iter().enumerate() {
        let e = n + s;
        out.add_arc(a, e);
        out.add_arc(e, b);
        e1.add_arc(a, e);
        e2.add_arc(e, b);
        labels.push(format!("e_{a}_{b}"));
    }
    assemble(GadgetKind::Kemeny, GadgetGraph::Plain(out), None, labels, vec![e1, e2], None, None)
}

/// c_j at id j, t_i^j at |C| + 6i + (j - 1) for variable index i (0-based).
struct Layout {
    clauses: usize,
}

impl Layout {
    fn c(&self, j: usize) -> usize {
        j
    }
    fn t(&self, i: usize, j: usize) -> usize {
        self.clauses + 6 * i + j - 1
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Occ {
    Pos,
    Neg,
    Absent,
}

fn occurrence(clause: &[i32], var: usize) -> Occ {
    match clause.iter().find(|&&l| lit_var(l) == var) {
        Some(&l) if l > 0 => Occ::Pos,
        Some(_) => Occ::Neg,
        None => Occ::Absent,
    }
}

/// Slater tournament with unit components; 7-voter witness with every margin 1.
pub fn slater_tournament(f: &CnfFormula) -> Result<GadgetOutput> {
    if !is_reduced_few(f) {
        return Err(Error::Precondition("formula is not in ReducedFew form".into()));
    }
    if let Some(i) = f.clauses.iter().position(|c| c.len() < 2) {
        return Err(Error::Precondition(format!("clause {i} has fewer than two literals")));
    }
    let nc = f.clauses.len();
    let nv = f.num_vars;
    let lay = Layout { clauses: nc };
    let n = nc + 6 * nv;
    let mut g = Digraph::new(n);
    // E_A
    for i in 0..nc {
        for j in i + 1..nc {
            g.add_arc(lay.c(i), lay.c(j));
        }
    }
    for i in 0..nv {
        for i2 in i + 1..nv {
            for j in 1..=6 {
                for j2 in 1..=6 {
                    g.add_arc(lay.t(i, j), lay.t(i2, j2));
                }
            }
        }
        for big in 4..=6 {
            for j in 1..big {
                g.add_arc(lay.t(i, j), lay.t(i, big));
            }
        }
        g.add_arc(lay.t(i, 1), lay.t(i, 2));
        g.add_arc(lay.t(i, 2), lay.t(i, 3));
        g.add_arc(lay.t(i, 3), lay.t(i, 1));
    }
    for (cj, clause) in f.clauses.iter().enumerate() {
        let c = lay.c(cj);
        for i in 0..nv {
            g.add_arc(lay.t(i, 6), c);
            g.add_arc(c, lay.t(i, 1));
            let (t2, t3, t4, t5) = (lay.t(i, 2), lay.t(i, 3), lay.t(i, 4), lay.t(i, 5));
            match occurrence(clause, i + 1) {
                Occ::Pos => {
                    g.add_arc(t2, c);
                    g.add_arc(c, t3);
                    g.add_arc(c, t4);
                    g.add_arc(t5, c);
                }
                Occ::Neg => {
                    g.add_arc(c, t2);
                    g.add_arc(t3, c);
                    g.add_arc(t4, c);
                    g.add_arc(c, t5);
                }
                Occ::Absent => {
                    g.add_arc(c, t2);
                    g.add_arc(c, t3);
                    g.add_arc(t4, c);
                    g.add_arc(t5, c);
                }
            }
        }
    }
    debug_assert!(g.is_tournament());

    // E_1: t_1^1 > ... > t_1^6 > t_2^1 > ... > c_1 > ... > c_|C|
    let mut order: Vec<usize> = (0..nv).flat_map(|i| (1..=6).map(move |j| (i, j))).map(|(i, j)| lay.t(i, j)).collect();
    order.extend((0..nc).map(|j| lay.c(j)));
    let e1 = LinearOrder::new(order)?;

    let mut e2 = Digraph::new(n);
    let mut e3 = Digraph::new(n);
    let mut e4 = Digraph::new(n);
    for cj in 0..nc {
        for i in 0..nv {
            for j in 1..=3 {
                e2.add_arc(lay.c(cj), lay.t(i, j));
            }
        }
    }
    // (t^3, t^1) for every variable, so variables outside two-literal clauses
    // also get their cycle arc
    for i in 0..nv {
        e3.add_arc(lay.t(i, 3), lay.t(i, 1));
    }
    for (cj, clause) in f.clauses.iter().enumerate() {
        let c = lay.c(cj);
        let (inward, outward) = if clause.len() == 2 { (&mut e3, &mut e4) } else { (&mut e4, &mut e3) };
        for &l in clause {
            let i = lit_var(l) - 1;
            if l > 0 {
                inward.add_arc(lay.t(i, 2), c);
                outward.add_arc(c, lay.t(i, 4));
            } else {
                inward.add_arc(lay.t(i, 3), c);
                outward.add_arc(c, lay.t(i, 5));
            }
        }
    }
    let mut labels: Vec<String> = (1..=nc).map(|j| format!("c{j}")).collect();
    for i in 1..=nv {
        labels.extend((1..=6).map(|j| format!("t{i}^{j}")));
    }
    let out = assemble(GadgetKind::Slater, GadgetGraph::Plain(g), None, labels, vec![e2, e3, e4], None, Some(e1))?;
    let w = out.witness.weighted_majority();
    if w.positive_arcs().iter().any(|&(_, _, m)| m != 1) {
        return Err(Error::Internal("Slater witness has a margin other than 1".into()));
    }
    Ok(out)
}

/// Replaces every t-vertex of a Slater gadget by a transitive interval of
/// `l` vertices. The first four voters list each interval ascending, the
/// other three descending, so every margin stays 1.
pub fn expand_components(out: &GadgetOutput, l: usize) -> Result<(Digraph, Profile)> {
    if out.kind != GadgetKind::Slater {
        return Err(Error::Invalid("component expansion applies to Slater gadgets".into()));
    }
    if l == 0 {
        return Err(Error::Invalid("component size must be at least 1".into()));
    }
    let g = out.graph.arc_set();
    let nc = out.labels.iter().take_while(|s| s.starts_with('c')).count();
    let n = g.n();
    let size = |v: usize| if v < nc { 1 } else { l };
    let mut first = Vec::with_capacity(n);
    let mut next = 0;
    for v in 0..n {
        first.push(next);
        next += size(v);
    }
    let total = next;
    let mut big = Digraph::new(total);
    for (u, v) in g.arcs() {
        for a in 0..size(u) {
            for b in 0..size(v) {
                big.add_arc(first[u] + a, first[v] + b);
            }
        }
    }
    for v in nc..n {
        for a in 0..l {
            for b in a + 1..l {
                big.add_arc(first[v] + a, first[v] + b);
            }
        }
    }
    let voters = out
        .witness
        .voters()
        .iter()
        .enumerate()
        .map(|(idx, o)| {
            let mut r = Vec::with_capacity(total);
            for &v in o.ranking() {
                let block = first[v]..first[v] + size(v);
                if idx < 4 {
                    r.extend(block);
                } else {
                    r.extend(block.rev());
                }
            }
            LinearOrder::new(r)
        })
        .collect::<Result<Vec<_>>>()?;
    let p = Profile::new(total, voters)?;
    if !p.induces(&big) || p.weighted_majority().positive_arcs().iter().any(|&(_, _, m)| m != 1) {
        return Err(Error::Internal("expanded witness does not induce the expanded tournament".into()));
    }
    Ok((big, p))
}
