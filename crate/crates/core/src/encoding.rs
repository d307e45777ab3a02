//! CNF encoding of "is this digraph induced by k voters".

use serde::{Deserialize, Serialize};

use crate::cnf::{binomial, CnfBuilder, CnfFormula, Subsets};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::profile::{LinearOrder, Profile};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Full n×n relation per voter with reflexive, complete, transitive and
    /// antisymmetric clauses, and one Tseitin variable per voter subset.
    Direct,
    /// One variable per unordered pair, 3-cycle exclusion, direct cardinality.
    #[default]
    Optimized,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EncodeOptions {
    pub mode: Mode,
    /// Require voters in lexicographically nondecreasing order (optimized mode only).
    pub break_voter_symmetry: bool,
}

impl From<Mode> for EncodeOptions {
    fn from(mode: Mode) -> Self {
        EncodeOptions { mode, break_voter_symmetry: false }
    }
}

/// Location of r_{i,a,b} and of the auxiliary block.
#[derive(Clone, Debug)]
pub struct VarMap {
    pub n: usize,
    pub k: usize,
    pub mode: Mode,
    /// First and last auxiliary variable (inclusive); empty if first > last.
    pub aux: (usize, usize),
}

impl VarMap {
    fn pairs(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    fn pair_index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a < b);
        // row-major over a < b
        a * (2 * self.n - a - 1) / 2 + (b - a - 1)
    }

    pub fn primary_count(&self) -> usize {
        match self.mode {
            Mode::Direct => self.k * self.n * self.n,
            Mode::Optimized => self.k * self.pairs(),
        }
    }

    /// Literal true iff voter `i` ranks `a` above `b` (a != b).
    /// Direct mode also accepts a == b (the reflexive variable).
    pub fn lit(&self, i: usize, a: usize, b: usize) -> i32 {
        match self.mode {
            Mode::Direct => (1 + i * self.n * self.n + a * self.n + b) as i32,
            Mode::Optimized => {
                assert_ne!(a, b, "no diagonal variables in optimized mode");
                let (lo, hi, sign) = if a < b { (a, b, 1) } else { (b, a, -1) };
                sign * (1 + i * self.pairs() + self.pair_index(lo, hi)) as i32
            }
        }
    }
}

/// Smallest number of agreeing voters that yields a positive margin.
pub fn majority_threshold(k: usize) -> usize {
    k / 2 + 1
}

fn check_parity(g: &Digraph, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Invalid("k must be at least 1".into()));
    }
    if g.n() == 0 {
        return Err(Error::Invalid("digraph must have at least one vertex".into()));
    }
    let tournament = g.is_tournament();
    if tournament && k.is_multiple_of(2) && g.n() > 1 {
        return Err(Error::Parity(format!("a tournament needs an odd number of voters, got k={k}")));
    }
    if !tournament && k % 2 == 1 {
        return Err(Error::Parity(format!("a non-tournament needs an even number of voters, got k={k}")));
    }
    Ok(())
}

pub fn encode_check_k(g: &Digraph, k: usize, opts: impl Into<EncodeOptions>) -> Result<(CnfFormula, VarMap)> {
    let opts = opts.into();
    check_parity(g, k)?;
    match opts.mode {
        Mode::Direct => Ok(encode_direct(g, k)),
        Mode::Optimized => Ok(encode_optimized(g, k, opts.break_voter_symmetry)),
    }
}

fn encode_direct(g: &Digraph, k: usize) -> (CnfFormula, VarMap) {
    let n = g.n();
    let nn = n * n;
    let m = majority_threshold(k);
    let tournament = g.is_tournament();
    let c_maj = binomial(k, m);
    let c_half = if tournament { 0 } else { binomial(k, k / 2) };
    let maj_base = k * nn;
    let half_base = maj_base + c_maj * nn;
    let total = half_base + c_half * nn;
    let vm = VarMap { n, k, mode: Mode::Direct, aux: (maj_base + 1, total) };
    let mut b = CnfBuilder::with_vars(total);
    let r = |i, a, b| vm.lit(i, a, b);
    for i in 0..k {
        for a in 0..n {
            b.add(vec![r(i, a, a)]);
        }
        for a in 0..n {
            for c in a + 1..n {
                b.add(vec![r(i, a, c), r(i, c, a)]);
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    b.add(vec![-r(i, x, y), -r(i, y, z), r(i, x, z)]);
                }
            }
        }
        for a in 0..n {
            for c in a + 1..n {
                b.add(vec![-r(i, a, c), -r(i, c, a)]);
            }
        }
    }
    // some m-subset of voters all rank x above y
    let tseitin = |b: &mut CnfBuilder, base: usize, width: usize, x: usize, y: usize| {
        let slot = base + (x * n + y) * binomial(k, width);
        let mut any = Vec::new();
        for (s, subset) in Subsets::new(k, width).enumerate() {
            let t = (slot + s + 1) as i32;
            any.push(t);
            for i in subset {
                b.add(vec![-t, r(i, x, y)]);
            }
        }
        b.add(any);
    };
    for (x, y) in g.arcs() {
        tseitin(&mut b, maj_base, m, x, y);
    }
    if !tournament {
        for x in 0..n {
            for y in x + 1..n {
                if !g.comparable(x, y) {
                    tseitin(&mut b, half_base, k / 2, x, y);
                    tseitin(&mut b, half_base, k / 2, y, x);
                }
            }
        }
    }
    (b.finish(), vm)
}

fn encode_optimized(g: &Digraph, k: usize, symmetry: bool) -> (CnfFormula, VarMap) {
    let n = g.n();
    let mut vm = VarMap { n, k, mode: Mode::Optimized, aux: (0, 0) };
    let primaries = vm.primary_count();
    let mut b = CnfBuilder::with_vars(primaries);
    for i in 0..k {
        for a in 0..n {
            for c in a + 1..n {
                for d in c + 1..n {
                    let (ab, bc, ac) = (vm.lit(i, a, c), vm.lit(i, c, d), vm.lit(i, a, d));
                    b.add(vec![-ab, -bc, ac]);
                    b.add(vec![ab, bc, -ac]);
                }
            }
        }
    }
    let m = majority_threshold(k);
    for x in 0..n {
        for y in x + 1..n {
            let lits: Vec<i32> = (0..k).map(|i| vm.lit(i, x, y)).collect();
            if g.has_arc(x, y) {
                b.at_least(&lits, m);
            } else if g.has_arc(y, x) {
                let neg: Vec<i32> = lits.iter().map(|&l| -l).collect();
                b.at_least(&neg, m);
            } else {
                let neg: Vec<i32> = lits.iter().map(|&l| -l).collect();
                b.at_least(&lits, k / 2);
                b.at_least(&neg, k / 2);
            }
        }
    }
    if symmetry {
        let per = primaries / k;
        for i in 0..k.saturating_sub(1) {
            let xs: Vec<i32> = (0..per).map(|j| (1 + i * per + j) as i32).collect();
            let ys: Vec<i32> = (0..per).map(|j| (1 + (i + 1) * per + j) as i32).collect();
            lex_leq(&mut b, &xs, &ys);
        }
    }
    vm.aux = (primaries + 1, b.num_vars);
    (b.finish(), vm)
}

/// xs <= ys lexicographically, false < true.
fn lex_leq(b: &mut CnfBuilder, xs: &[i32], ys: &[i32]) {
    let mut eq = b.fresh();
    b.add(vec![eq]);
    for (j, (&x, &y)) in xs.iter().zip(ys).enumerate() {
        b.add(vec![-eq, -x, y]);
        if j + 1 < xs.len() {
            let next = b.fresh();
            b.add(vec![-eq, x, y, next]);
            b.add(vec![-eq, -x, -y, next]);
            eq = next;
        }
    }
}

/// Reads k linear orders off a model (`model[v]` = value of variable v).
pub fn decode_model(model: &[bool], vm: &VarMap) -> Result<Profile> {
    let (n, k) = (vm.n, vm.k);
    let value = |l: i32| -> bool {
        let v = model.get(l.unsigned_abs() as usize).copied().unwrap_or(false);
        if l > 0 {
            v
        } else {
            !v
        }
    };
    let mut voters = Vec::with_capacity(k);
    for i in 0..k {
        let above = |a: usize, b: usize| value(vm.lit(i, a, b));
        let mut wins: Vec<(usize, usize)> =
            (0..n).map(|a| ((0..n).filter(|&b| b != a && above(a, b)).count(), a)).collect();
        wins.sort_unstable_by(|x, y| y.cmp(x));
        let ranking: Vec<usize> = wins.iter().map(|&(_, a)| a).collect();
        let order = LinearOrder::new(ranking).map_err(|e| Error::Internal(e.to_string()))?;
        let pos = order.positions();
        for a in 0..n {
            for b in 0..n {
                if a != b && above(a, b) != (pos[a] < pos[b]) {
                    return Err(Error::Internal(format!("voter {i}: relation on ({a},{b}) is not a linear order")));
                }
            }
        }
        if vm.mode == Mode::Direct && (0..n).any(|a| !above(a, a)) {
            return Err(Error::Internal(format!("voter {i}: reflexivity violated")));
        }
        voters.push(order);
    }
    Profile::new(n, voters)
}

/// Variable and clause counts of the direct encoding, evaluated
/// from closed forms (tournament with odd k, or any non-tournament with even k).
pub fn direct_counts(n: usize, k: usize, tournament: bool) -> (usize, usize) {
    let m = majority_threshold(k);
    let nn = n * n;
    if tournament {
        let vars = nn * (k + binomial(k, m));
        let clauses = k * (n * nn + nn) + (nn - n) / 2 * (1 + binomial(k, m) * m);
        (vars, clauses)
    } else {
        let vars = nn * (k + binomial(k, m) + binomial(k, k / 2));
        let clauses = k * (n * nn + nn) + (nn - n) * (1 + binomial(k, k / 2) * (k / 2));
        (vars, clauses)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_n5_k3() {
        let t = Digraph::from_order(&[0, 1, 2, 3, 4]);
        let (f, _) = encode_check_k(&t, 3, Mode::Direct).unwrap();
        assert_eq!(f.num_vars, 150);
        assert_eq!(f.clauses.len(), 520);
    }

    #[test]
    fn parity_rejected() {
        let c3 = Digraph::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(matches!(encode_check_k(&c3, 2, Mode::Optimized), Err(Error::Parity(_))));
        assert!(matches!(encode_check_k(&Digraph::new(3), 3, Mode::Optimized), Err(Error::Parity(_))));
        assert!(encode_check_k(&c3, 0, Mode::Optimized).is_err());
        assert!(encode_check_k(&Digraph::new(0), 2, Mode::Optimized).is_err());
    }

    #[test]
    fn var_map_injective() {
        for mode in [Mode::Direct, Mode::Optimized] {
            let vm = VarMap { n: 5, k: 3, mode, aux: (0, 0) };
            let mut seen = std::collections::HashSet::new();
            for i in 0..3 {
                for a in 0..5 {
                    for b in 0..5 {
                        if a == b {
                            continue;
                        }
                        let l = vm.lit(i, a, b);
                        if mode == Mode::Optimized {
                            assert_eq!(l, -vm.lit(i, b, a));
                            if a < b {
                                assert!(seen.insert(l));
                            }
                        } else {
                            assert!(seen.insert(l));
                        }
                        assert!(l.unsigned_abs() as usize <= vm.primary_count());
                    }
                }
            }
        }
    }

    #[test]
    fn decode_single_pair() {
        let g = Digraph::from_arcs(2, &[(0, 1)]).unwrap();
        let (_, vm) = encode_check_k(&g, 1, Mode::Optimized).unwrap();
        let p = decode_model(&[false, true], &vm).unwrap();
        assert_eq!(p.voters()[0].ranking(), &[0, 1]);
    }
}
