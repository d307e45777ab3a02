//! Counting bounds on k-inducible tournaments.

use num_bigint::BigUint;

use crate::error::{Error, Result};

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, i| acc * i)
}

/// (n!)^k ordered k-voter profiles over n alternatives.
pub fn profile_count(n: u64, k: u32) -> BigUint {
    factorial(n).pow(k)
}

/// 2^C(n,2) labelled tournaments on n vertices.
pub fn labeled_tournament_count(n: u64) -> BigUint {
    BigUint::from(1u32) << (n * n.saturating_sub(1) / 2)
}

/// Whether k-voter profiles (up to voter order) can still cover all labelled
/// tournaments on m vertices: C(m,2)·ln 2 <= k·(ln 2 + ln m!) − ln k!.
fn holds_float(m: u64, k: u64) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    let lnfact = |x: u64| (2..=x).map(|i| (i as f64).ln()).sum::<f64>();
    k as f64 * (ln2 + lnfact(m)) - lnfact(k) - (m * (m - 1) / 2) as f64 * ln2
}

/// Exact form of the same inequality: 2^C(m,2) · k! <= (2·m!)^k.
fn holds_exact(m: u64, k: u64) -> bool {
    labeled_tournament_count(m) * factorial(k) <= (factorial(m) * 2u32).pow(k as u32)
}

fn holds(m: u64, k: u64) -> bool {
    let slack = holds_float(m, k);
    if slack.abs() < 1e-6 * (1.0 + (m * m) as f64) {
        holds_exact(m, k)
    } else {
        slack >= 0.0
    }
}

/// Largest m for which the counting inequality holds; every larger size
/// contains a tournament that no k voters induce.
pub fn expressiveness_upper_bound(k: u64) -> Result<u64> {
    if k < 3 || k.is_multiple_of(2) {
        return Err(Error::Invalid(format!("k must be odd and at least 3, got {k}")));
    }
    // for small m the ln k! term dominates; start from the first m where it holds
    let mut m = 1;
    while !holds(m, k) {
        m += 1;
        if m > 64 * k {
            return Err(Error::Internal("inequality never holds".into()));
        }
    }
    while holds(m + 1, k) {
        m += 1;
    }
    Ok(m)
}
