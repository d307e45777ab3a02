//! Linear orders, profiles and majority extraction.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Digraph, WeightedDigraph};

/// Strict total order, best first.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinearOrder {
    ranking: Vec<usize>,
}

impl LinearOrder {
    pub fn new(ranking: Vec<usize>) -> Result<Self> {
        let n = ranking.len();
        let mut seen = vec![false; n];
        for &v in &ranking {
            if v >= n || seen[v] {
                return Err(Error::Invalid(format!("{ranking:?} is not a permutation of 0..{n}")));
            }
            seen[v] = true;
        }
        Ok(LinearOrder { ranking })
    }

    pub fn identity(n: usize) -> Self {
        LinearOrder { ranking: (0..n).collect() }
    }

    pub fn ranking(&self) -> &[usize] {
        &self.ranking
    }

    pub fn n(&self) -> usize {
        self.ranking.len()
    }

    /// pos[v] = rank of v, 0 is best.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.n()];
        for (i, &v) in self.ranking.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    pub fn prefers(&self, a: usize, b: usize) -> bool {
        let pos = self.positions();
        pos[a] < pos[b]
    }

    pub fn reversed(&self) -> Self {
        LinearOrder { ranking: self.ranking.iter().rev().copied().collect() }
    }

    /// Linearization of an acyclic arc set, smallest id first among ties.
    pub fn linearize(g: &Digraph) -> Result<Self> {
        g.topological_order()
            .map(|ranking| LinearOrder { ranking })
            .ok_or_else(|| Error::Precondition("arc set has a cycle".into()))
    }

    pub fn as_digraph(&self) -> Digraph {
        Digraph::from_order(&self.ranking)
    }
}

/// Ordered tuple of voters over `0..n`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Profile {
    n: usize,
    voters: Vec<LinearOrder>,
}

impl Profile {
    pub fn new(n: usize, voters: Vec<LinearOrder>) -> Result<Self> {
        if voters.is_empty() {
            return Err(Error::Invalid("profile needs at least one voter".into()));
        }
        if let Some(v) = voters.iter().find(|v| v.n() != n) {
            return Err(Error::Invalid(format!("voter over {} alternatives, expected {n}", v.n())));
        }
        Ok(Profile { n, voters })
    }

    pub fn from_rankings(n: usize, rankings: Vec<Vec<usize>>) -> Result<Self> {
        let voters = rankings.into_iter().map(LinearOrder::new).collect::<Result<_>>()?;
        Profile::new(n, voters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.voters.len()
    }

    pub fn voters(&self) -> &[LinearOrder] {
        &self.voters
    }

    /// A voter and its reverse.
    pub fn opposed_pair(order: &LinearOrder) -> Profile {
        Profile { n: order.n(), voters: vec![order.clone(), order.reversed()] }
    }

    pub fn concat(parts: &[Profile]) -> Result<Profile> {
        let n = parts.first().map(|p| p.n).ok_or_else(|| Error::Invalid("nothing to concatenate".into()))?;
        Profile::new(n, parts.iter().flat_map(|p| p.voters.iter().cloned()).collect())
    }

    pub fn push(&mut self, v: LinearOrder) {
        assert_eq!(v.n(), self.n);
        self.voters.push(v);
    }

    pub fn weighted_majority(&self) -> WeightedDigraph {
        let n = self.n;
        let mut w = WeightedDigraph::new(n);
        let mut acc = vec![0i64; n * n];
        for v in &self.voters {
            let r = v.ranking();
            for i in 0..n {
                for j in i + 1..n {
                    acc[r[i] * n + r[j]] += 1;
                }
            }
        }
        for a in 0..n {
            for b in a + 1..n {
                w.set(a, b, acc[a * n + b] - acc[b * n + a]);
            }
        }
        w
    }

    pub fn majority_digraph(&self) -> Digraph {
        self.weighted_majority().arc_set()
    }

    pub fn induces(&self, g: &Digraph) -> bool {
        self.n == g.n() && self.majority_digraph() == *g
    }

    pub fn induces_weighted(&self, g: &WeightedDigraph) -> bool {
        self.n == g.n() && self.weighted_majority() == *g
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.k());
        for v in &self.voters {
            let row: Vec<String> = v.ranking().iter().map(usize::to_string).collect();
            let _ = writeln!(s, "{}", row.join(" "));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Profile> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let hv: Vec<usize> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::parse(hl, "header must be `n k`"))?;
        if hv.len() != 2 {
            return Err(Error::parse(hl, "header must be `n k`"));
        }
        let (n, k) = (hv[0], hv[1]);
        let mut voters = Vec::with_capacity(k);
        for (line, l) in lines {
            let r: Vec<usize> = l
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::parse(line, "non-integer token"))?;
            if r.len() != n {
                return Err(Error::parse(line, format!("ranking has {} entries, expected {n}", r.len())));
            }
            voters.push(LinearOrder::new(r).map_err(|e| Error::parse(line, e.to_string()))?);
        }
        if voters.len() != k {
            return Err(Error::parse(hl, format!("header announces {k} voters, found {}", voters.len())));
        }
        Profile::new(n, voters).map_err(|e| Error::parse(hl, e.to_string()))
    }
}

/// Two voters per arc, each pair cancelling except on its arc.
pub fn mcgarvey_profile(g: &Digraph) -> Profile {
    let n = g.n();
    let arcs = g.arcs();
    if arcs.is_empty() {
        return Profile::opposed_pair(&LinearOrder::identity(n));
    }
    let mut voters = Vec::with_capacity(2 * arcs.len());
    for (u, v) in arcs {
        let rest: Vec<usize> = (0..n).filter(|&x| x != u && x != v).collect();
        let mut a = vec![u, v];
        a.extend(&rest);
        let mut b: Vec<usize> = rest.iter().rev().copied().collect();
        b.extend([u, v]);
        voters.push(LinearOrder { ranking: a });
        voters.push(LinearOrder { ranking: b });
    }
    Profile { n, voters }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_voter_is_transitive() {
        let p = Profile::from_rankings(3, vec![vec![0, 1, 2]]).unwrap();
        assert_eq!(p.majority_digraph(), Digraph::from_order(&[0, 1, 2]));
        let w = p.weighted_majority();
        assert_eq!(w.weight(0, 2), 1);
        assert_eq!(w.weight(2, 1), -1);
    }

    #[test]
    fn opposed_voters_cancel() {
        let p = Profile::opposed_pair(&LinearOrder::identity(4));
        assert_eq!(p.majority_digraph().arc_count(), 0);
        assert!(p.induces_weighted(&WeightedDigraph::new(4)));
    }

    #[test]
    fn identical_voters_double() {
        let p = Profile::from_rankings(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(p.weighted_majority().weight(0, 1), 2);
    }

    #[test]
    fn mcgarvey_single_arc() {
        let g = Digraph::from_arcs(3, &[(0, 1)]).unwrap();
        let p = mcgarvey_profile(&g);
        assert_eq!(p.k(), 2);
        let w = p.weighted_majority();
        assert_eq!(w.weight(0, 1), 2);
        assert_eq!(w.weight(0, 2), 0);
        assert_eq!(w.weight(1, 2), 0);
    }

    #[test]
    fn mcgarvey_cycle() {
        let g = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let p = mcgarvey_profile(&g);
        assert_eq!(p.k(), 6);
        assert!(p.induces(&g));
    }

    #[test]
    fn rejects_bad_orders() {
        assert!(LinearOrder::new(vec![0, 0, 1]).is_err());
        assert!(Profile::new(3, vec![]).is_err());
        assert!(Profile::from_text("3 1\n0 1\n").is_err());
    }

    #[test]
    fn text_roundtrip() {
        let p = Profile::from_rankings(3, vec![vec![2, 0, 1], vec![1, 2, 0]]).unwrap();
        assert_eq!(Profile::from_text(&p.to_text()).unwrap(), p);
    }
}
