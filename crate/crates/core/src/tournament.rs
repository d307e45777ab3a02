//! Module decomposition and canonical keys for tournaments.

use crate::error::{Error, Result};
use crate::graph::Digraph;

/// Largest n accepted by [`canonical_form`].
pub const CANONICAL_CAP: usize = 10;

/// Partition into components plus the quotient tournament.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub components: Vec<Vec<usize>>,
    pub summary: Digraph,
}

impl Decomposition {
    pub fn is_trivial(&self) -> bool {
        self.components.len() <= 1 || self.components.iter().all(|c| c.len() == 1)
    }

    /// Checks coverage and uniformity between blocks against `t`.
    pub fn is_valid_for(&self, t: &Digraph) -> bool {
        let n = t.n();
        let mut seen = vec![false; n];
        for c in &self.components {
            if c.is_empty() {
                return false;
            }
            for &v in c {
                if v >= n || seen[v] {
                    return false;
                }
                seen[v] = true;
            }
        }
        if seen.iter().any(|s| !s) || self.summary.n() != self.components.len() {
            return false;
        }
        for (q, cq) in self.components.iter().enumerate() {
            for (r, cr) in self.components.iter().enumerate() {
                if q == r {
                    continue;
                }
                let want = self.summary.has_arc(q, r);
                if cq.iter().any(|&a| cr.iter().any(|&b| t.has_arc(a, b) != want)) {
                    return false;
                }
            }
        }
        true
    }

    /// Rebuilds the tournament from the summary and per-component subtournaments
    /// (each labelled in the component's listed order).
    pub fn reconstruct(&self, parts: &[Digraph]) -> Digraph {
        let n: usize = self.components.iter().map(Vec::len).sum();
        let mut block = vec![0; n];
        let mut pos = vec![0; n];
        for (q, c) in self.components.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                block[v] = q;
                pos[v] = i;
            }
        }
        Digraph::from_fn(n, |a, b| {
            if block[a] == block[b] {
                parts[block[a]].has_arc(pos[a], pos[b])
            } else {
                self.summary.has_arc(block[a], block[b])
            }
        })
    }
}

/// Smallest vertex set containing `seed` that no outside vertex splits.
pub fn module_closure(t: &Digraph, seed: &[usize]) -> Vec<bool> {
    let n = t.n();
    let mut inside = vec![false; n];
    let mut beats = vec![0usize; n];
    let mut loses = vec![0usize; n];
    let mut queue = Vec::new();
    let mut queued = vec![false; n];
    let add = |y: usize,
               inside: &mut Vec<bool>,
               beats: &mut Vec<usize>,
               loses: &mut Vec<usize>,
               queue: &mut Vec<usize>,
               queued: &mut Vec<bool>| {
        inside[y] = true;
        for x in 0..n {
            if inside[x] || x == y {
                continue;
            }
            if t.has_arc(x, y) {
                beats[x] += 1;
            } else if t.has_arc(y, x) {
                loses[x] += 1;
            }
            if beats[x] > 0 && loses[x] > 0 && !queued[x] {
                queued[x] = true;
                queue.push(x);
            }
        }
    };
    for &s in seed {
        if !inside[s] {
            queued[s] = true;
            add(s, &mut inside, &mut beats, &mut loses, &mut queue, &mut queued);
        }
    }
    while let Some(x) = queue.pop() {
        if !inside[x] {
            add(x, &mut inside, &mut beats, &mut loses, &mut queue, &mut queued);
        }
    }
    inside
}

fn summary_of(t: &Digraph, components: &[Vec<usize>]) -> Digraph {
    Digraph::from_fn(components.len(), |q, r| t.has_arc(components[q][0], components[r][0]))
}

/// Maximal proper components, or the all-singleton partition for prime tournaments.
pub fn decompose(t: &Digraph) -> Result<Decomposition> {
    if !t.is_tournament() {
        return Err(Error::Precondition("decompose expects a tournament".into()));
    }
    let n = t.n();
    if n <= 1 {
        let components = vec![(0..n).collect()];
        return Ok(Decomposition { components, summary: Digraph::new(1) });
    }
    let sccs = t.sccs();
    let components = if sccs.len() > 1 {
        if sccs.iter().all(|c| c.len() == 1) {
            // transitive: split off the top vertex
            let order: Vec<usize> = sccs.into_iter().flatten().collect();
            vec![vec![order[0]], order[1..].to_vec()]
        } else {
            sccs
        }
    } else {
        let mut assigned = vec![false; n];
        let mut comps = Vec::new();
        for v in 0..n {
            if assigned[v] {
                continue;
            }
            let mut block = vec![false; n];
            block[v] = true;
            for w in v + 1..n {
                if assigned[w] || block[w] {
                    continue;
                }
                let m = module_closure(t, &[v, w]);
                if m.iter().any(|&x| !x) {
                    for (x, &inm) in m.iter().enumerate() {
                        block[x] |= inm;
                    }
                }
            }
            let members: Vec<usize> = (0..n).filter(|&x| block[x]).collect();
            for &x in &members {
                assigned[x] = true;
            }
            comps.push(members);
        }
        comps
    };
    let summary = summary_of(t, &components);
    let d = Decomposition { components, summary };
    debug_assert!(d.is_valid_for(t));
    Ok(d)
}

/// Score-respecting ordering that minimises the column-major adjacency key.
pub fn canonical_labeling(t: &Digraph) -> Result<(u64, Vec<usize>)> {
    let n = t.n();
    if n > CANONICAL_CAP {
        return Err(Error::Cap(format!("canonical form supports n <= {CANONICAL_CAP}, got {n}")));
    }
    if !t.is_tournament() {
        return Err(Error::Precondition("canonical form expects a tournament".into()));
    }
    let score: Vec<usize> = (0..n).map(|v| t.out_degree(v)).collect();
    let mut slots = score.clone();
    slots.sort_unstable();
    let mut level: Vec<(Vec<usize>, u32)> = vec![(Vec::new(), 0)];
    let mut key = 0u64;
    for (j, &want) in slots.iter().enumerate() {
        let mut best = u64::MAX;
        let mut next = Vec::new();
        for (prefix, used) in &level {
            for v in 0..n {
                if used >> v & 1 == 1 || score[v] != want {
                    continue;
                }
                let mut col = 0u64;
                for &p in prefix {
                    col = col << 1 | t.has_arc(p, v) as u64;
                }
                if col < best {
                    best = col;
                    next.clear();
                }
                if col == best {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push((p, used | 1 << v));
                }
            }
        }
        key = key << j | best;
        level = next;
    }
    Ok((key, level.swap_remove(0).0))
}

/// Isomorphism-invariant key; equal keys iff isomorphic.
pub fn canonical_form(t: &Digraph) -> Result<u64> {
    canonical_labeling(t).map(|(k, _)| k)
}

/// The tournament whose vertex `j` is position `j` of the canonical ordering.
pub fn from_canonical_key(n: usize, mut key: u64) -> Digraph {
    let mut g = Digraph::new(n);
    for j in (1..n).rev() {
        let col = key & ((1u64 << j) - 1);
        key >>= j;
        for i in 0..j {
            if col >> (j - 1 - i) & 1 == 1 {
                g.add_arc(i, j);
            } else {
                g.add_arc(j, i);
            }
        }
    }
    g
}
