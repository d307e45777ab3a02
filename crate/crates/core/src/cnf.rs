//! CNF formulas, DIMACS I/O and cardinality helpers.

use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Clauses over variables `1..=num_vars`, DIMACS literal convention.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(num_vars: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        let f = CnfFormula { num_vars, clauses };
        f.check_range()?;
        Ok(f)
    }

    pub fn check_range(&self) -> Result<()> {
        for (i, c) in self.clauses.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::Invalid(format!("clause {i} is empty")));
            }
            if let Some(&l) = c.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > self.num_vars) {
                return Err(Error::Invalid(format!("clause {i}: literal {l} out of range 1..={}", self.num_vars)));
            }
        }
        Ok(())
    }

    pub fn has_tautology(&self) -> bool {
        self.clauses.iter().any(|c| c.iter().any(|&l| c.contains(&-l)))
    }

    /// True if every clause has a true literal; `model[v]` is the value of variable v.
    pub fn evaluate(&self, model: &[bool]) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|&l| model[l.unsigned_abs() as usize] == (l > 0)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = String::with_capacity(16 * self.clauses.len() + 32);
        let _ = writeln!(s, "p cnf {} {}", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let _ = write!(s, "{l} ");
            }
            s.push_str("0\n");
        }
        s
    }

    pub fn from_dimacs(text: &str) -> Result<CnfFormula> {
        let mut header: Option<(usize, usize)> = None;
        let mut clauses = Vec::new();
        let mut cur = Vec::new();
        let mut last_line = 0;
        for (i, line) in text.lines().enumerate() {
            let ln = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if line.starts_with('p') {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 4 || parts[1] != "cnf" {
                    return Err(Error::parse(ln, "header must be `p cnf <vars> <clauses>`"));
                }
                let v = parts[2].parse().map_err(|_| Error::parse(ln, "bad variable count"))?;
                let c = parts[3].parse().map_err(|_| Error::parse(ln, "bad clause count"))?;
                if header.replace((v, c)).is_some() {
                    return Err(Error::parse(ln, "duplicate header"));
                }
                continue;
            }
            let (nv, _) = header.ok_or_else(|| Error::parse(ln, "clause before header"))?;
            for tok in line.split_whitespace() {
                let l: i32 = tok.parse().map_err(|_| Error::parse(ln, format!("bad literal `{tok}`")))?;
                if l == 0 {
                    clauses.push(std::mem::take(&mut cur));
                } else if l.unsigned_abs() as usize > nv {
                    return Err(Error::parse(ln, format!("literal {l} exceeds declared {nv} variables")));
                } else {
                    cur.push(l);
                }
            }
            last_line = ln;
        }
        let (nv, nc) = header.ok_or_else(|| Error::parse(1, "missing header"))?;
        if !cur.is_empty() {
            clauses.push(cur);
        }
        if clauses.len() != nc {
            return Err(Error::parse(
                last_line.max(1),
                format!("header announces {nc} clauses, found {}", clauses.len()),
            ));
        }
        Ok(CnfFormula { num_vars: nv, clauses })
    }
}

/// Incremental clause collector with fresh-variable allocation.
#[derive(Default, Debug)]
pub struct CnfBuilder {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfBuilder {
    pub fn with_vars(num_vars: usize) -> Self {
        CnfBuilder { num_vars, clauses: Vec::new() }
    }

    pub fn fresh(&mut self) -> i32 {
        self.num_vars += 1;
        self.num_vars as i32
    }

    pub fn add(&mut self, clause: Vec<i32>) {
        self.clauses.push(clause);
    }

    /// At least `m` of `lits` true.
    pub fn at_least(&mut self, lits: &[i32], m: usize) {
        let k = lits.len();
        if m == 0 {
            return;
        }
        if m > k {
            // unsatisfiable
            let v = self.fresh();
            self.add(vec![v]);
            self.add(vec![-v]);
            return;
        }
        // every (k-m+1)-subset contains a true literal
        let width = k - m + 1;
        if binomial(k, width) <= 70 {
            for subset in Subsets::new(k, width) {
                self.add(subset.iter().map(|&i| lits[i]).collect());
            }
        } else {
            let neg: Vec<i32> = lits.iter().map(|&l| -l).collect();
            self.at_most(&neg, k - m);
        }
    }

    /// At most `b` of `lits` true, sequential counter.
    pub fn at_most(&mut self, lits: &[i32], b: usize) {
        let k = lits.len();
        if b >= k {
            return;
        }
        if b == 0 {
            for &l in lits {
                self.add(vec![-l]);
            }
            return;
        }
        let mut prev: Vec<i32> = (0..b).map(|_| self.fresh()).collect();
        self.add(vec![-lits[0], prev[0]]);
        for &s in &prev[1..] {
            self.add(vec![-s]);
        }
        for &x in &lits[1..k - 1] {
            let cur: Vec<i32> = (0..b).map(|_| self.fresh()).collect();
            self.add(vec![-x, cur[0]]);
            self.add(vec![-prev[0], cur[0]]);
            for j in 1..b {
                self.add(vec![-x, -prev[j - 1], cur[j]]);
                self.add(vec![-prev[j], cur[j]]);
            }
            self.add(vec![-x, -prev[b - 1]]);
            prev = cur;
        }
        self.add(vec![-lits[k - 1], -prev[b - 1]]);
    }

    pub fn finish(self) -> CnfFormula {
        CnfFormula { num_vars: self.num_vars, clauses: self.clauses }
    }
}

pub fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// r-subsets of 0..n in lexicographic order.
pub struct Subsets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Subsets {
    pub fn new(n: usize, r: usize) -> Self {
        Subsets { n, cur: (r <= n).then(|| (0..r).collect()) }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let r = out.len();
        let mut next = out.clone();
        let mut i = r;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - r + i {
                next[i] += 1;
                for j in i + 1..r {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        if r == 0 {
            self.cur = None;
        }
        Some(out)
    }
}
