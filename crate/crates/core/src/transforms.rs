//! Ordered3 and ReducedFew normal forms, and a truth-table oracle.

use std::collections::BTreeMap;

use rand::Rng;

use crate::cnf::CnfFormula;
use crate::error::{Error, Result};

/// Largest variable count accepted by the truth-table oracle.
pub const BRUTE_FORCE_CAP: usize = 22;

fn var(l: i32) -> usize {
    l.unsigned_abs() as usize
}

/// Index of the first clause mentioning a variable twice.
pub fn repeated_variable(f: &CnfFormula) -> Option<usize> {
    f.clauses.iter().position(|c| {
        let mut vs: Vec<usize> = c.iter().map(|&l| var(l)).collect();
        vs.sort_unstable();
        vs.windows(2).any(|w| w[0] == w[1])
    })
}

/// Clauses of at most three literals, none repeating a variable.
pub fn check_three_cnf(f: &CnfFormula) -> Result<()> {
    f.check_range()?;
    if let Some(i) = f.clauses.iter().position(|c| c.len() > 3) {
        return Err(Error::Invalid(format!("clause {i} has more than three literals")));
    }
    if let Some(i) = repeated_variable(f) {
        return Err(Error::Invalid(format!("clause {i} repeats a variable")));
    }
    Ok(())
}

/// Exactly three distinct variables per clause, and for every variable all
/// clauses with the positive literal come before all with the negative one.
pub fn is_ordered(f: &CnfFormula) -> bool {
    if f.check_range().is_err() || repeated_variable(f).is_some() {
        return false;
    }
    if f.clauses.iter().any(|c| c.len() != 3) {
        return false;
    }
    let mut last_pos = vec![None; f.num_vars + 1];
    let mut first_neg = vec![None; f.num_vars + 1];
    for (i, c) in f.clauses.iter().enumerate() {
        for &l in c {
            if l > 0 {
                last_pos[var(l)] = Some(i);
            } else if first_neg[var(l)].is_none() {
                first_neg[var(l)] = Some(i);
            }
        }
    }
    (1..=f.num_vars).all(|v| match (last_pos[v], first_neg[v]) {
        (Some(p), Some(q)) => p < q,
        _ => true,
    })
}

/// Literal at most twice, variable at most thrice, variable in at most one
/// three-literal clause, literal in at most one two-literal clause.
pub fn is_reduced_few(f: &CnfFormula) -> bool {
    if check_three_cnf(f).is_err() {
        return false;
    }
    let nv = f.num_vars;
    let idx = |l: i32| if l > 0 { 2 * var(l) } else { 2 * var(l) + 1 };
    let mut lit = vec![0; 2 * nv + 2];
    let mut lit2 = vec![0; 2 * nv + 2];
    let mut var3 = vec![0; nv + 1];
    for c in &f.clauses {
        for &l in c {
            lit[idx(l)] += 1;
            if c.len() == 2 {
                lit2[idx(l)] += 1;
            }
            if c.len() == 3 {
                var3[var(l)] += 1;
            }
        }
    }
    (1..=nv).all(|v| {
        let (p, n) = (lit[2 * v], lit[2 * v + 1]);
        p <= 2 && n <= 2 && p + n <= 3 && var3[v] <= 1 && lit2[2 * v] <= 1 && lit2[2 * v + 1] <= 1
    })
}

/// A satisfying assignment by exhaustive search (`model[v]`, index 0 unused).
pub fn brute_force_model(f: &CnfFormula) -> Result<Option<Vec<bool>>> {
    let n = f.num_vars;
    if n > BRUTE_FORCE_CAP {
        return Err(Error::Cap(format!("truth-table oracle supports <= {BRUTE_FORCE_CAP} variables, got {n}")));
    }
    f.check_range()?;
    let masks: Vec<(u32, u32)> = f
        .clauses
        .iter()
        .map(|c| {
            c.iter().fold((0u32, 0u32), |(p, q), &l| {
                let b = 1u32 << (var(l) - 1);
                if l > 0 {
                    (p | b, q)
                } else {
                    (p, q | b)
                }
            })
        })
        .collect();
    for a in 0..1u64 << n {
        let a = a as u32;
        if masks.iter().all(|&(p, q)| a & p != 0 || !a & q != 0) {
            return Ok(Some((0..=n).map(|v| v > 0 && a >> (v - 1) & 1 == 1).collect()));
        }
    }
    Ok(None)
}

pub fn brute_force_sat(f: &CnfFormula) -> Result<bool> {
    brute_force_model(f).map(|m| m.is_some())
}

/// Maximum number of simultaneously satisfiable clauses, exhaustive.
pub fn brute_force_max_sat(f: &CnfFormula) -> Result<usize> {
    let n = f.num_vars;
    if n > BRUTE_FORCE_CAP {
        return Err(Error::Cap(format!("truth-table oracle supports <= {BRUTE_FORCE_CAP} variables, got {n}")));
    }
    let mut best = 0;
    for a in 0..1u64 << n {
        let model: Vec<bool> = (0..=n).map(|v| v > 0 && a >> (v - 1) & 1 == 1).collect();
        let sat = f.clauses.iter().filter(|c| c.iter().any(|&l| model[var(l)] == (l > 0))).count();
        best = best.max(sat);
    }
    Ok(best)
}

/// Result of unit simplification, 2-clause padding and literal sorting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preprocessed {
    /// Every clause has three distinct literals sorted by variable.
    Formula(CnfFormula),
    /// Unit propagation derived the empty clause.
    Unsat,
}

pub fn ordered3_preprocess(f: &CnfFormula) -> Result<Preprocessed> {
    check_three_cnf(f)?;
    let mut value: Vec<Option<bool>> = vec![None; f.num_vars + 1];
    let mut clauses = f.clauses.clone();
    loop {
        let mut next = Vec::with_capacity(clauses.len());
        let mut unit = None;
        for c in &clauses {
            if c.iter().any(|&l| value[var(l)] == Some(l > 0)) {
                continue;
            }
            let rest: Vec<i32> = c.iter().copied().filter(|&l| value[var(l)].is_none()).collect();
            if rest.is_empty() {
                return Ok(Preprocessed::Unsat);
            }
            if rest.len() == 1 && unit.is_none() {
                unit = Some(rest[0]);
            }
            next.push(rest);
        }
        clauses = next;
        match unit {
            Some(l) => value[var(l)] = Some(l > 0),
            None => break,
        }
    }
    let mut num_vars = f.num_vars;
    let mut out = Vec::with_capacity(clauses.len() * 2);
    for c in clauses {
        if c.len() == 2 {
            num_vars += 1;
            let x = num_vars as i32;
            out.push(vec![c[0], c[1], x]);
            out.push(vec![c[0], c[1], -x]);
        } else {
            out.push(c);
        }
    }
    for c in &mut out {
        c.sort_by_key(|&l| var(l));
    }
    Ok(Preprocessed::Formula(CnfFormula { num_vars, clauses: out }))
}

/// All eight sign patterns over three variables.
fn unsat_core(first_var: usize) -> CnfFormula {
    let v = first_var as i32;
    let clauses =
        (0..8).map(|m| (0..3).map(|b| if m >> (2 - b) & 1 == 0 { v + b } else { -(v + b) }).collect()).collect();
    CnfFormula { num_vars: first_var + 2, clauses }
}

/// Equisatisfiable Ordered3 formula: six clauses and four fresh variables per
/// preprocessed clause, arranged variable by variable.
pub fn to_ordered3(f: &CnfFormula) -> Result<CnfFormula> {
    let g = match ordered3_preprocess(f)? {
        Preprocessed::Formula(g) => g,
        Preprocessed::Unsat => match ordered3_preprocess(&unsat_core(f.num_vars + 1))? {
            Preprocessed::Formula(g) => g,
            Preprocessed::Unsat => unreachable!("no units in the core"),
        },
    };
    let base = g.num_vars;
    let m = g.clauses.len();
    // gadget[i][j] = clause c_i^{j+1}; literal slot for j < 4 is the original literal
    let mut gadget = Vec::with_capacity(m);
    for (i, c) in g.clauses.iter().enumerate() {
        let b = (base + 4 * i) as i32;
        let (x, xp, y, z) = (b + 1, b + 2, b + 3, b + 4);
        gadget.push([
            vec![c[0], x, xp],
            vec![c[1], -x, y],
            vec![c[1], -xp, y],
            vec![c[2], -y, z],
            vec![-x, -y, -z],
            vec![-xp, -y, -z],
        ]);
    }
    let mut by_lit: BTreeMap<i32, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, gc) in gadget.iter().enumerate() {
        for (j, c) in gc.iter().take(4).enumerate() {
            by_lit.entry(c[0]).or_default().push((j, i));
        }
    }
    let mut clauses = Vec::with_capacity(6 * m);
    for v in 1..=base as i32 {
        for l in [v, -v] {
            if let Some(mut occ) = by_lit.remove(&l) {
                occ.sort_unstable();
                clauses.extend(occ.into_iter().map(|(j, i)| gadget[i][j].clone()));
            }
        }
    }
    for gc in &gadget {
        clauses.push(gc[4].clone());
        clauses.push(gc[5].clone());
    }
    let out = CnfFormula { num_vars: base + 4 * m, clauses };
    debug_assert!(is_ordered(&out));
    Ok(out)
}

/// Pads every clause to three literals with fresh variables.
fn pad_to_three(f: &CnfFormula) -> CnfFormula {
    let mut num_vars = f.num_vars;
    let mut clauses = Vec::new();
    for c in &f.clauses {
        match c.len() {
            3 => clauses.push(c.clone()),
            2 => {
                num_vars += 1;
                let x = num_vars as i32;
                clauses.push(vec![c[0], c[1], x]);
                clauses.push(vec![c[0], c[1], -x]);
            }
            1 => {
                let (x, y) = (num_vars as i32 + 1, num_vars as i32 + 2);
                num_vars += 2;
                for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    clauses.push(vec![c[0], sx * x, sy * y]);
                }
            }
            _ => unreachable!("checked 3-CNF"),
        }
    }
    CnfFormula { num_vars, clauses }
}

/// Equisatisfiable ReducedFew formula: every occurrence gets its own copy,
/// copies of one variable are chained by an implication cycle.
pub fn to_reducedfew(f: &CnfFormula) -> Result<CnfFormula> {
    check_three_cnf(f)?;
    if f.clauses.iter().any(|c| c.is_empty()) {
        return Err(Error::Invalid("empty clause".into()));
    }
    let g = pad_to_three(f);
    let mut copies: Vec<Vec<i32>> = vec![Vec::new(); g.num_vars + 1];
    let mut next = 0i32;
    let mut clauses = Vec::with_capacity(g.clauses.len() * 2);
    for c in &g.clauses {
        let renamed = c
            .iter()
            .map(|&l| {
                next += 1;
                copies[var(l)].push(next);
                l.signum() * next
            })
            .collect();
        clauses.push(renamed);
    }
    for cs in copies.iter().filter(|cs| cs.len() >= 2) {
        let len = cs.len();
        clauses.push(vec![-cs[len - 1], cs[0]]);
        for j in 0..len - 1 {
            clauses.push(vec![-cs[j], cs[j + 1]]);
        }
    }
    let out = CnfFormula { num_vars: next as usize, clauses };
    debug_assert!(is_reduced_few(&out));
    Ok(out)
}

/// Random clause of `len` distinct variables from 1..=nv with random signs.
fn random_clause<R: Rng + ?Sized>(rng: &mut R, nv: usize, len: usize) -> Vec<i32> {
    let vars = rand::seq::index::sample(rng, nv, len);
    vars.iter().map(|v| if rng.gen::<bool>() { v as i32 + 1 } else { -(v as i32 + 1) }).collect()
}

/// Random 3-CNF with clause lengths in 1..=3 (3 when nv < 3 is impossible).
pub fn random_three_cnf<R: Rng + ?Sized>(rng: &mut R, nv: usize, clauses: usize) -> CnfFormula {
    let cs = (0..clauses)
        .map(|_| {
            let len = rng.gen_range(1..=3.min(nv));
            random_clause(rng, nv, len)
        })
        .collect();
    CnfFormula { num_vars: nv, clauses: cs }
}

/// Random Ordered3 formula: each variable switches from positive to
/// negative occurrences at a random clause index.
pub fn random_ordered<R: Rng + ?Sized>(rng: &mut R, nv: usize, clauses: usize) -> CnfFormula {
    assert!(nv >= 3, "ordered clauses need three variables");
    let switch: Vec<usize> = (0..=nv).map(|_| rng.gen_range(0..=clauses)).collect();
    let cs = (0..clauses)
        .map(|i| {
            random_clause(rng, nv, 3).into_iter().map(|l| if i < switch[var(l)] { l.abs() } else { -l.abs() }).collect()
        })
        .collect();
    CnfFormula { num_vars: nv, clauses: cs }
}

/// Random ReducedFew formula with clauses of two or three literals, by
/// rejection sampling. Needs `clauses <= nv`; sampling is quick when
/// `nv >= 2 * clauses`.
pub fn random_reduced_few<R: Rng + ?Sized>(rng: &mut R, nv: usize, clauses: usize) -> CnfFormula {
    assert!(nv >= 3, "need at least three variables");
    assert!(clauses <= nv, "{clauses} clauses over {nv} variables rarely fit the occurrence limits");
    loop {
        let mut f = CnfFormula { num_vars: nv, clauses: Vec::with_capacity(clauses) };
        for _ in 0..clauses {
            let mut placed = false;
            for _ in 0..50 {
                let len = rng.gen_range(2..=3);
                let c = random_clause(rng, nv, len);
                f.clauses.push(c);
                if is_reduced_few(&f) {
                    placed = true;
                    break;
                }
                f.clauses.pop();
            }
            if !placed {
                break;
            }
        }
        if f.clauses.len() == clauses {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cnf(nv: usize, cs: &[&[i32]]) -> CnfFormula {
        CnfFormula::new(nv, cs.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn oracle_basics() {
        assert!(!brute_force_sat(&cnf(1, &[&[1], &[-1]])).unwrap());
        assert!(brute_force_sat(&cnf(3, &[&[1, 2, 3]])).unwrap());
        assert!(brute_force_sat(&CnfFormula { num_vars: 23, clauses: vec![] }).is_err());
    }

    #[test]
    fn ordered_two_clauses() {
        let f = cnf(4, &[&[1, -2, 3], &[-1, 2, 4]]);
        let g = to_ordered3(&f).unwrap();
        assert_eq!(g.clauses.len(), 12);
        assert_eq!(g.num_vars - f.num_vars, 8);
        assert!(is_ordered(&g));
    }

    #[test]
    fn padded_unsat_core() {
        let f = cnf(2, &[&[1, 2], &[-1, 2], &[1, -2], &[-1, -2]]);
        match ordered3_preprocess(&f).unwrap() {
            Preprocessed::Formula(g) => {
                assert_eq!(g.clauses.len(), 8);
                assert!(!brute_force_sat(&g).unwrap());
            }
            Preprocessed::Unsat => panic!("no units here"),
        }
    }

    #[test]
    fn units_propagate() {
        let f = cnf(3, &[&[1], &[-1, 2], &[-2, 3, -1]]);
        assert!(matches!(ordered3_preprocess(&f).unwrap(), Preprocessed::Formula(g) if g.clauses.is_empty()));
        let f = cnf(2, &[&[1], &[-1, 2], &[-2]]);
        assert_eq!(ordered3_preprocess(&f).unwrap(), Preprocessed::Unsat);
        let g = to_ordered3(&f).unwrap();
        assert!(is_ordered(&g));
        assert_eq!(g.clauses.len(), 48);
    }

    #[test]
    fn repeated_variable_rejected() {
        let f = cnf(2, &[&[1, -1, 2]]);
        assert!(to_ordered3(&f).is_err());
        assert!(to_reducedfew(&f).is_err());
    }

    #[test]
    fn reducedfew_cycle() {
        let f = cnf(4, &[&[1, 2, 3], &[1, -2, 4], &[-1, 3, 4]]);
        let g = to_reducedfew(&f).unwrap();
        assert!(is_reduced_few(&g));
        // copies of variable 1 are 1, 4, 7
        assert_eq!(&g.clauses[3..6], &[vec![-7, 1], vec![-1, 4], vec![-4, 7]]);
    }

    #[test]
    fn reducedfew_single_occurrences_unchanged() {
        let f = cnf(6, &[&[1, -2, 3], &[4, 5, -6]]);
        let g = to_reducedfew(&f).unwrap();
        assert_eq!(g, f);
    }

    #[test]
    fn predicates() {
        assert!(is_ordered(&cnf(3, &[&[1, 2, 3], &[-1, 2, 3]])));
        assert!(!is_ordered(&cnf(3, &[&[-1, 2, 3], &[1, 2, 3]])));
        assert!(!is_ordered(&cnf(3, &[&[1, 2]])));
        assert!(is_reduced_few(&cnf(3, &[&[1, 2, 3], &[-1, 2]])));
        assert!(!is_reduced_few(&cnf(3, &[&[1, 2], &[1, 3]])));
        assert!(!is_reduced_few(&cnf(3, &[&[1, 2, 3], &[1, -2, -3]])));
    }
}
