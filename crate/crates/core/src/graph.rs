//! Dense digraphs, undirected graphs and margin matrices.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square bit matrix, one row of `words` u64 per vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Bits {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Bits { n, words, data: vec![0; n * words] }
    }

    #[inline]
    fn get(&self, u: usize, v: usize) -> bool {
        self.data[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    #[inline]
    fn set(&mut self, u: usize, v: usize, on: bool) {
        let w = &mut self.data[u * self.words + v / 64];
        if on {
            *w |= 1 << (v % 64);
        } else {
            *w &= !(1 << (v % 64));
        }
    }

    fn row(&self, u: usize) -> &[u64] {
        &self.data[u * self.words..(u + 1) * self.words]
    }

    fn row_count(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter_row(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + b)
            })
        })
    }
}

/// Asymmetric loop-free relation on `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Digraph {
    out: Bits,
    inc: Bits,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Classification {
    pub tournament: bool,
    pub transitive: bool,
    pub acyclic: bool,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph { out: Bits::new(n), inc: Bits::new(n) }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut g = Digraph::new(n);
        for &(u, v) in arcs {
            g.try_add_arc(u, v)?;
        }
        Ok(g)
    }

    /// Build from a predicate; the predicate must be asymmetric.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Digraph::new(n);
        for u in 0..n {
            for v in 0..n {
                if u != v && f(u, v) {
                    g.add_arc(u, v);
                }
            }
        }
        g
    }

    /// Transitive tournament following `order`, best first.
    pub fn from_order(order: &[usize]) -> Self {
        let mut g = Digraph::new(order.len());
        for (i, &u) in order.iter().enumerate() {
            for &v in &order[i + 1..] {
                g.add_arc(u, v);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.out.n
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.out.get(u, v)
    }

    pub fn comparable(&self, u: usize, v: usize) -> bool {
        self.out.get(u, v) || self.out.get(v, u)
    }

    pub fn try_add_arc(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::Invalid(format!("arc ({u},{v}) out of range for n={n}")));
        }
        if u == v {
            return Err(Error::Invalid(format!("self-loop at {u}")));
        }
        if self.has_arc(v, u) {
            return Err(Error::Invalid(format!("arcs ({u},{v}) and ({v},{u}) both present")));
        }
        self.out.set(u, v, true);
        self.inc.set(v, u, true);
        Ok(())
    }

    /// Panics when the arc would break asymmetry.
    pub fn add_arc(&mut self, u: usize, v: usize) {
        if let Err(e) = self.try_add_arc(u, v) {
            panic!("{e}");
        }
    }

    pub fn remove_arc(&mut self, u: usize, v: usize) {
        self.out.set(u, v, false);
        self.inc.set(v, u, false);
    }

    pub fn arc_count(&self) -> usize {
        (0..self.n()).map(|u| self.out.row_count(u)).sum()
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        let mut a = Vec::new();
        for u in 0..self.n() {
            a.extend(self.out.iter_row(u).map(|v| (u, v)));
        }
        a
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.out.iter_row(u)
    }

    pub fn in_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.inc.iter_row(u)
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.out.row_count(u)
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.inc.row_count(u)
    }

    pub fn converse(&self) -> Digraph {
        Digraph { out: self.inc.clone(), inc: self.out.clone() }
    }

    pub fn is_tournament(&self) -> bool {
        let n = self.n();
        self.arc_count() == n * n.saturating_sub(1) / 2
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.n();
        for u in 0..n {
            for v in self.out.iter_row(u) {
                // every successor of v must be a successor of u
                let rv = self.out.row(v);
                let ru = self.out.row(u);
                if rv.iter().zip(ru).any(|(a, b)| a & !b != 0) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_acyclic(&self) -> bool {
        self.topological_order().is_some()
    }

    pub fn classify(&self) -> Classification {
        Classification {
            tournament: self.is_tournament(),
            transitive: self.is_transitive(),
            acyclic: self.is_acyclic(),
        }
    }

    /// Kahn's algorithm, smallest available id first.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.n();
        let mut indeg: Vec<usize> = (0..n).map(|v| self.in_degree(v)).collect();
        let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| indeg[v] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(u)) = heap.pop() {
            order.push(u);
            for v in self.out.iter_row(u) {
                indeg[v] -= 1;
                if indeg[v] == 0 {
                    heap.push(Reverse(v));
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    pub fn incomparability_graph(&self) -> UndirectedGraph {
        let n = self.n();
        let mut h = UndirectedGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if !self.comparable(u, v) {
                    h.add_edge(u, v);
                }
            }
        }
        h
    }

    pub fn symmetric_closure(&self) -> UndirectedGraph {
        let n = self.n();
        let mut h = UndirectedGraph::new(n);
        for (u, v) in self.arcs() {
            h.add_edge(u, v);
        }
        h
    }

    /// Subgraph induced on `vs`, relabelled to `0..vs.len()` in the given order.
    pub fn induced(&self, vs: &[usize]) -> Digraph {
        Digraph::from_fn(vs.len(), |i, j| self.has_arc(vs[i], vs[j]))
    }

    /// Image under `perm`: arc (u,v) becomes (perm[u], perm[v]).
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        let mut g = Digraph::new(self.n());
        for (u, v) in self.arcs() {
            g.add_arc(perm[u], perm[v]);
        }
        g
    }

    pub fn is_subset_of(&self, other: &Digraph) -> bool {
        self.n() == other.n() && self.arcs().into_iter().all(|(u, v)| other.has_arc(u, v))
    }

    /// Strongly connected components in topological order of the condensation.
    pub fn sccs(&self) -> Vec<Vec<usize>> {
        // Tarjan, iterative
        let n = self.n();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut comps = Vec::new();
        let mut next = 0;
        let succ: Vec<Vec<usize>> = (0..n).map(|u| self.out_neighbors(u).collect()).collect();
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next;
            low[root] = next;
            next += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut i)) = call.last_mut() {
                if *i < succ[v].len() {
                    let w = succ[v][*i];
                    *i += 1;
                    if index[w] == usize::MAX {
                        index[w] = next;
                        low[w] = next;
                        next += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(p, _)) = call.last() {
                        low[p] = low[p].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        comp.sort_unstable();
                        comps.push(comp);
                    }
                }
            }
        }
        // Tarjan emits sinks first
        comps.reverse();
        comps
    }

    pub fn to_text(&self) -> String {
        let arcs = self.arcs();
        let mut s = format!("{} {}\n", self.n(), arcs.len());
        for (u, v) in arcs {
            let _ = writeln!(s, "{u} {v}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Digraph> {
        let (n, rows) = parse_graph_text(text, 2)?;
        let mut g = Digraph::new(n);
        for (line, row) in rows {
            g.try_add_arc(row[0] as usize, row[1] as usize).map_err(|e| Error::parse(line, e.to_string()))?;
        }
        Ok(g)
    }
}

/// Reads `n m` then `m` rows of `arity` integers.
/// Header vertex count and numbered rows of `arity` integers.
type Rows = (usize, Vec<(usize, Vec<i64>)>);

fn parse_graph_text(text: &str, arity: usize) -> Result<Rows> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let hv: Vec<&str> = header.split_whitespace().collect();
    if hv.len() != 2 {
        return Err(Error::parse(hl, "header must be `n m`"));
    }
    let n: usize = hv[0].parse().map_err(|_| Error::parse(hl, "bad vertex count"))?;
    let m: usize = hv[1].parse().map_err(|_| Error::parse(hl, "bad arc count"))?;
    let mut rows = Vec::with_capacity(m);
    for (line, l) in lines {
        let vals: Vec<i64> = l
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(line, "non-integer token"))?;
        if vals.len() != arity {
            return Err(Error::parse(line, format!("expected {arity} fields, got {}", vals.len())));
        }
        if vals[..2].iter().any(|&x| x < 0 || x as usize >= n) {
            return Err(Error::parse(line, format!("vertex out of range 0..{n}")));
        }
        rows.push((line, vals));
    }
    if rows.len() != m {
        return Err(Error::parse(hl, format!("header announces {m} arcs, found {}", rows.len())));
    }
    Ok((n, rows))
}

/// Simple undirected graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UndirectedGraph {
    adj: Bits,
}

impl UndirectedGraph {
    pub fn new(n: usize) -> Self {
        UndirectedGraph { adj: Bits::new(n) }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut h = UndirectedGraph::new(n);
        for &(u, v) in edges {
            h.add_edge(u, v);
        }
        h
    }

    pub fn n(&self) -> usize {
        self.adj.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u != v && u < self.n() && v < self.n(), "bad edge {{{u},{v}}}");
        self.adj.set(u, v, true);
        self.adj.set(v, u, true);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj.set(u, v, false);
        self.adj.set(v, u, false);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj.iter_row(u)
    }

    /// Edges as (u,v) with u < v.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut e = Vec::new();
        for u in 0..self.n() {
            e.extend(self.adj.iter_row(u).filter(|&v| v > u).map(|v| (u, v)));
        }
        e
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|u| self.adj.row_count(u)).sum::<usize>() / 2
    }

    /// Transitive orientation by implication classes, or `None` when
    /// the graph is not a comparability graph.
    pub fn transitive_orientation(&self) -> Option<Digraph> {
        let n = self.n();
        let mut rest = self.clone();
        let mut result = Digraph::new(n);
        while let Some(&(a, b)) = rest.edges().first() {
            // implication class of (a,b) with respect to the remaining edges
            let mut in_class = Bits::new(n);
            in_class.set(a, b, true);
            let mut queue = VecDeque::from([(a, b)]);
            let mut class = vec![(a, b)];
            while let Some((x, y)) = queue.pop_front() {
                let mut forced = Vec::new();
                for z in rest.neighbors(x) {
                    if z != y && !rest.has_edge(y, z) {
                        forced.push((x, z));
                    }
                }
                for z in rest.neighbors(y) {
                    if z != x && !rest.has_edge(x, z) {
                        forced.push((z, y));
                    }
                }
                for (p, q) in forced {
                    if in_class.get(q, p) {
                        return None;
                    }
                    if !in_class.get(p, q) {
                        in_class.set(p, q, true);
                        class.push((p, q));
                        queue.push_back((p, q));
                    }
                }
            }
            for &(p, q) in &class {
                rest.remove_edge(p, q);
                result.add_arc(p, q);
            }
        }
        debug_assert!(result.is_transitive());
        Some(result)
    }
}

/// Free-function form of [`UndirectedGraph::transitive_orientation`].
pub fn transitive_orientation(h: &UndirectedGraph) -> Option<Digraph> {
    h.transitive_orientation()
}

/// True iff no pair is covered by both sets with opposite directions.
pub fn orientation_compatible(e1: &Digraph, e2: &Digraph) -> bool {
    first_conflict(e1, e2).is_none()
}

/// First pair oriented one way in `e1` and the other way in `e2`.
pub fn first_conflict(e1: &Digraph, e2: &Digraph) -> Option<(usize, usize)> {
    assert_eq!(e1.n(), e2.n(), "vertex counts differ");
    e1.arcs().into_iter().find(|&(u, v)| e2.has_arc(v, u))
}

/// Integer margins with w(u,v) = -w(v,u).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedDigraph {
    n: usize,
    w: Vec<i64>,
}

impl WeightedDigraph {
    pub fn new(n: usize) -> Self {
        WeightedDigraph { n, w: vec![0; n * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, u: usize, v: usize) -> i64 {
        self.w[u * self.n + v]
    }

    /// Sets w(u,v) and w(v,u) = -w.
    pub fn set(&mut self, u: usize, v: usize, w: i64) {
        assert!(u != v || w == 0, "nonzero self margin");
        self.w[u * self.n + v] = w;
        self.w[v * self.n + u] = -w;
    }

    pub fn add(&mut self, u: usize, v: usize, w: i64) {
        let cur = self.weight(u, v);
        self.set(u, v, cur + w);
    }

    /// Arcs with positive margin.
    pub fn arc_set(&self) -> Digraph {
        Digraph::from_fn(self.n, |u, v| self.weight(u, v) > 0)
    }

    /// Positive margins as (u, v, w).
    pub fn positive_arcs(&self) -> Vec<(usize, usize, i64)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                let w = self.weight(u, v);
                if w > 0 {
                    out.push((u, v, w));
                }
            }
        }
        out
    }

    pub fn to_text(&self) -> String {
        let arcs = self.positive_arcs();
        let mut s = format!("{} {}\n", self.n, arcs.len());
        for (u, v, w) in arcs {
            let _ = writeln!(s, "{u} {v} {w}");
        }
        s
    }

    pub fn from_text(text: &str) -> Result<WeightedDigraph> {
        let (n, rows) = parse_graph_text(text, 3)?;
        let mut g = WeightedDigraph::new(n);
        for (line, row) in rows {
            let (u, v, w) = (row[0] as usize, row[1] as usize, row[2]);
            if u == v {
                return Err(Error::parse(line, "self-loop"));
            }
            if w <= 0 {
                return Err(Error::parse(line, "only positive weights are listed"));
            }
            if g.weight(u, v) != 0 {
                return Err(Error::parse(line, format!("pair ({u},{v}) listed twice")));
            }
            g.set(u, v, w);
        }
        Ok(g)
    }
}

/// Either graph flavour, as read from a file.
#[derive(Clone, Debug)]
pub enum AnyGraph {
    Plain(Digraph),
    Weighted(WeightedDigraph),
}

impl AnyGraph {
    /// Plain if every arc row has two fields, weighted if three.
    pub fn from_text(text: &str) -> Result<AnyGraph> {
        let arity = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .nth(1)
            .map(|l| l.split_whitespace().count())
            .unwrap_or(2);
        match arity {
            3 => WeightedDigraph::from_text(text).map(AnyGraph::Weighted),
            _ => Digraph::from_text(text).map(AnyGraph::Plain),
        }
    }
}
