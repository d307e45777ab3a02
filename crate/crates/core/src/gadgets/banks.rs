//! Banks-set and tournament-equilibrium-set gadgets over ordered formulas.

use super::{assemble, difference, GadgetGraph, GadgetKind, GadgetOutput};
use crate::cnf::CnfFormula;
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::profile::LinearOrder;
use crate::transforms::is_ordered;

/// Ids: c_0..c_m first, then U_1..U_m (three vertices for odd i, one for even).
struct Layout {
    m: usize,
    start: Vec<usize>,
    n: usize,
}

impl Layout {
    fn new(m: usize) -> Self {
        let mut start = vec![0; m + 1];
        let mut next = m + 1;
        for (i, s) in start.iter_mut().enumerate().skip(1) {
            *s = next;
            next += if i % 2 == 1 { 3 } else { 1 };
        }
        Layout { m, start, n: next }
    }

    fn c(&self, i: usize) -> usize {
        i
    }

    fn block(&self, i: usize) -> std::ops::Range<usize> {
        let len = if i % 2 == 1 { 3 } else { 1 };
        self.start[i]..self.start[i] + len
    }

    /// u_i^j, j in 1..=3, odd i.
    fn u(&self, i: usize, j: usize) -> usize {
        debug_assert!(i % 2 == 1 && (1..=3).contains(&j));
        self.start[i] + j - 1
    }

    fn labels(&self) -> Vec<String> {
        let mut l: Vec<String> = (0..=self.m).map(|i| format!("c{i}")).collect();
        for i in 1..=self.m {
            if i % 2 == 1 {
                l.extend((1..=3).map(|j| format!("u{i}^{j}")));
            } else {
                l.push(format!("u{i}"));
            }
        }
        l
    }
}

fn require_ordered(f: &CnfFormula) -> Result<()> {
    if f.clauses.is_empty() {
        return Err(Error::Precondition("formula has no clauses".into()));
    }
    if !is_ordered(f) {
        return Err(Error::Precondition("formula is not in Ordered3 form".into()));
    }
    Ok(())
}

/// Later literal token -> earlier complementary token.
fn formula_arcs(lay: &Layout, f: &CnfFormula, block_of: impl Fn(usize) -> usize) -> Digraph {
    let mut toks = Vec::new();
    for (a, c) in f.clauses.iter().enumerate() {
        let i = block_of(a);
        for (j, &l) in c.iter().enumerate() {
            toks.push((i, lay.u(i, j + 1), l));
        }
    }
    let mut e = Digraph::new(lay.n);
    for &(i, x, lx) in &toks {
        for &(j, y, ly) in &toks {
            if i > j && lx == -ly {
                e.add_arc(x, y);
            }
        }
    }
    e
}

/// Shared skeleton; `special` arcs point from later blocks to earlier ones
/// and replace the default forward orientation.
fn build(lay: &Layout, cyclic_blocks: bool, special: &Digraph) -> Digraph {
    let m = lay.m;
    let mut g = Digraph::new(lay.n);
    for j in 0..=m {
        for i in 0..j {
            g.add_arc(lay.c(j), lay.c(i));
        }
    }
    for i in 0..=m {
        for j in 1..=m {
            for u in lay.block(j) {
                if i == j {
                    g.add_arc(u, lay.c(i));
                } else {
                    g.add_arc(lay.c(i), u);
                }
            }
        }
    }
    for i in (1..=m).step_by(2) {
        g.add_arc(lay.u(i, 1), lay.u(i, 2));
        g.add_arc(lay.u(i, 2), lay.u(i, 3));
        if cyclic_blocks {
            g.add_arc(lay.u(i, 3), lay.u(i, 1));
        } else {
            g.add_arc(lay.u(i, 1), lay.u(i, 3));
        }
    }
    for i in 1..=m {
        for j in i + 1..=m {
            for u in lay.block(i) {
                for v in lay.block(j) {
                    if special.has_arc(v, u) {
                        g.add_arc(v, u);
                    } else {
                        g.add_arc(u, v);
                    }
                }
            }
        }
    }
    g
}

/// Banks gadget: m = 2|C| - 1, decision vertex c_0, 5-voter witness.
pub fn banks_tournament(f: &CnfFormula) -> Result<GadgetOutput> {
    require_ordered(f)?;
    let lay = Layout::new(2 * f.clauses.len() - 1);
    let ephi = formula_arcs(&lay, f, |a| 2 * a + 1);
    let g = build(&lay, false, &ephi);
    debug_assert!(g.is_tournament());
    let mut e1 = Digraph::new(lay.n);
    for i in 1..=lay.m {
        for u in lay.block(i) {
            e1.add_arc(u, lay.c(i));
        }
    }
    let e3 = difference(&g, &[&e1, &ephi]);
    assemble(GadgetKind::Banks, GadgetGraph::Plain(g), Some(lay.c(0)), lay.labels(), vec![e1, ephi], Some(e3), None)
}

/// The order c_0, U_1, c_1, U_2, c_2, ..., U_m, c_m with each U_i in index order.
pub fn teq_order(m: usize) -> LinearOrder {
    let lay = Layout::new(m);
    let mut r = vec![lay.c(0)];
    for i in 1..=m {
        r.extend(lay.block(i));
        r.push(lay.c(i));
    }
    LinearOrder::new(r).expect("layout is a permutation")
}

/// TEQ gadget: m = 4|C| - 3, clause a at U_{4a+1}, decision vertex c_0,
/// 7-voter witness.
pub fn teq_tournament(f: &CnfFormula) -> Result<GadgetOutput> {
    require_ordered(f)?;
    let m = 4 * f.clauses.len() - 3;
    let lay = Layout::new(m);
    let ephi = formula_arcs(&lay, f, |a| 4 * a + 1);
    let mut ez = Digraph::new(lay.n);
    for i in (3..=m).step_by(4) {
        for l in 1..=3 {
            for l2 in (1..=3).filter(|&x| x != l) {
                ez.add_arc(lay.u(i, l), lay.u(i - 2, l2));
            }
        }
    }
    let mut special = ephi.clone();
    for (u, v) in ez.arcs() {
        special.add_arc(u, v);
    }
    let g = build(&lay, true, &special);
    debug_assert!(g.is_tournament());

    let mut e1 = Digraph::new(lay.n);
    for i in 1..=m {
        for j in 0..i {
            e1.add_arc(lay.c(i), lay.c(j));
            if j >= 1 {
                for u in lay.block(j) {
                    e1.add_arc(lay.c(i), u);
                }
            }
        }
    }
    for i in (1..=m).step_by(2) {
        e1.add_arc(lay.u(i, 3), lay.u(i, 1));
    }
    for i in (3..=m).step_by(4) {
        e1.add_arc(lay.u(i, 1), lay.u(i - 2, 2));
        e1.add_arc(lay.u(i, 3), lay.u(i - 2, 2));
    }
    let e3 = difference(&ez, &[&e1]);
    let e4 = difference(&g, &[&e1, &ephi, &e3]);
    let order = teq_order(m);
    if !e4.is_subset_of(&order.as_digraph()) {
        return Err(Error::Internal("TEQ remainder is not consistent with the certifying order".into()));
    }
    assemble(
        GadgetKind::Teq,
        GadgetGraph::Plain(g),
        Some(lay.c(0)),
        lay.labels(),
        vec![e1, ephi, e3],
        Some(e4),
        Some(order),
    )
}
