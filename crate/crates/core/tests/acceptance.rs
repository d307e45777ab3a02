//! Acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line for its
//! criterion; run with `--nocapture` to see them. Tolerances are pinned as
//! constants next to the criterion that uses them.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use majdim::bounds::{expressiveness_upper_bound, profile_count};
use majdim::census::{census_dimension, enumerate_tournaments};
use majdim::cnf::CnfFormula;
use majdim::cultures::{qr_tournament, sample, uniform_tournament, CultureSpec, Model, Sample};
use majdim::dimension::{check_k_majority, dimension, two_partition_check_3, CheckOutcome, DimensionOptions};
use majdim::encoding::{encode_check_k, EncodeOptions, Mode};
use majdim::gadgets::{
    banks_tournament, kemeny_subdivide, rp_digraph, rp_tournament, slater_tournament, teq_tournament, GadgetOutput,
};
use majdim::solver::{SatOutcome, SatSolver};
use majdim::transforms::{
    brute_force_sat, is_ordered, is_reduced_few, random_ordered, random_reduced_few, random_three_cnf, to_ordered3,
    to_reducedfew, BRUTE_FORCE_CAP,
};
use majdim::{Digraph, LinearOrder, Profile};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn solver() -> SatSolver {
    SatSolver::new(env!("CARGO_BIN_EXE_majdim-sat"))
}

fn report(id: &str, what: &str, ok: bool, detail: String) {
    let tag = if ok { "PASS" } else { "FAIL" };
    println!("[{tag}] criterion {id}: {what} ({detail})");
    assert!(ok, "criterion {id} failed: {detail}");
}

fn is_yes(g: &Digraph, k: usize, encode: EncodeOptions) -> bool {
    match check_k_majority(g, k, &solver(), encode).unwrap() {
        CheckOutcome::Yes(p) => {
            assert!(p.induces(g));
            true
        }
        CheckOutcome::No => false,
        CheckOutcome::Timeout => panic!("no timeout configured"),
    }
}

// ---------------------------------------------------------------------------
// 1. bounds table

const BOUNDS_TABLE: [(u64, u64); 10] =
    [(3, 18), (5, 41), (7, 66), (9, 93), (11, 122), (13, 152), (15, 183), (17, 216), (19, 249), (21, 282)];
const BOUNDS_BUDGET: Duration = Duration::from_secs(1);

#[test]
fn c01_bounds_table() {
    let start = Instant::now();
    let got: Vec<(u64, u64)> = BOUNDS_TABLE.iter().map(|&(k, _)| (k, expressiveness_upper_bound(k).unwrap())).collect();
    let elapsed = start.elapsed();
    let ok = got == BOUNDS_TABLE && elapsed < BOUNDS_BUDGET;
    report("1", "bounds table", ok, format!("{got:?} in {elapsed:.2?}, budget {BOUNDS_BUDGET:?}"));
}

// ---------------------------------------------------------------------------
// 2 and 3. censuses

const CENSUS_SMALL_COUNTS: [usize; 7] = [1, 1, 2, 4, 12, 56, 456];
const CENSUS_SMALL_BUDGET: Duration = Duration::from_secs(300);

#[test]
fn c02_census_up_to_seven() {
    let start = Instant::now();
    let mut counts = Vec::new();
    let mut bad = 0;
    for n in 1..=7 {
        let rep = census_dimension(n, 3, &solver(), EncodeOptions::default()).unwrap();
        counts.push(rep.records.len());
        bad += rep.not_inducible + rep.timeouts + rep.failures.len();
    }
    let elapsed = start.elapsed();
    let ok = counts == CENSUS_SMALL_COUNTS && bad == 0 && elapsed < CENSUS_SMALL_BUDGET;
    report(
        "2",
        "every tournament with n <= 7 is 3-inducible",
        ok,
        format!("classes {counts:?}, non-inducible/timeouts/failures {bad}, {elapsed:.1?}"),
    );
}

const CENSUS8_CLASSES: usize = 6880;
const CENSUS8_NOT_3: usize = 96;
const CENSUS8_BUDGET: Duration = Duration::from_secs(45 * 60);

#[test]
fn c03_census_eight() {
    let start = Instant::now();
    let r3 = census_dimension(8, 3, &solver(), EncodeOptions::default()).unwrap();
    let r5 = census_dimension(8, 5, &solver(), EncodeOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let ok = r3.records.len() == CENSUS8_CLASSES
        && r3.not_inducible == CENSUS8_NOT_3
        && r3.timeouts == 0
        && r3.failures.is_empty()
        && r5.inducible == CENSUS8_CLASSES
        && elapsed < CENSUS8_BUDGET;
    report(
        "3",
        "n = 8 census",
        ok,
        format!(
            "{} classes, {} not 3-inducible, {} 5-inducible, failures {}, {elapsed:.1?}",
            r3.records.len(),
            r3.not_inducible,
            r5.inducible,
            r3.failures.len() + r5.failures.len()
        ),
    );
}

// ---------------------------------------------------------------------------
// 4. quadratic residue tournaments

const QR_BUDGET: Duration = Duration::from_secs(120);

#[test]
fn c04_quadratic_residue() {
    let start = Instant::now();
    let opts = DimensionOptions { max_k: 7, ..Default::default() };
    let d11 = dimension(&qr_tournament(11).unwrap(), &opts, &solver()).unwrap().dim;
    let q19 = qr_tournament(19).unwrap();
    let q19_3 = is_yes(&q19, 3, EncodeOptions::default());
    let q19_5 = is_yes(&q19, 5, EncodeOptions::default());
    let elapsed = start.elapsed();
    let ok = d11 == Some(3) && !q19_3 && q19_5 && elapsed < QR_BUDGET;
    report(
        "4",
        "dim(Q11) = 3 and dim(Q19) = 5",
        ok,
        format!("dim Q11 {d11:?}, Q19 k=3 {q19_3}, k=5 {q19_5}, {elapsed:.1?}"),
    );
}

// ---------------------------------------------------------------------------
// 5. direct encoding sizes

fn binom(n: usize, r: usize) -> usize {
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed forms for tournaments (odd k) and for digraphs with no arc at all
/// (even k), where the clause bound is attained.
fn expected_counts(n: usize, k: usize) -> (usize, usize) {
    let m = k / 2 + 1;
    let n2 = n * n;
    let base = k * (n * n2 + n2);
    if k % 2 == 1 {
        (n2 * (k + binom(k, m)), base + (n2 - n) / 2 * (1 + binom(k, m) * m))
    } else {
        (n2 * (k + binom(k, m) + binom(k, k / 2)), base + (n2 - n) * (1 + binom(k, k / 2) * (k / 2)))
    }
}

#[test]
fn c05_encoding_counts() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut mismatches = Vec::new();
    let mut cells = 0;
    for n in 3..=10 {
        for k in 2..=7 {
            let (vars, clauses) = expected_counts(n, k);
            let graphs = if k % 2 == 1 {
                vec![uniform_tournament(n, &mut rng), Digraph::from_order(&(0..n).collect::<Vec<_>>())]
            } else {
                vec![Digraph::new(n)]
            };
            for g in graphs {
                let (f, _) = encode_check_k(&g, k, Mode::Direct).unwrap();
                cells += 1;
                if (f.num_vars, f.clauses.len()) != (vars, clauses) {
                    mismatches.push((n, k, f.num_vars, f.clauses.len(), vars, clauses));
                }
            }
            if k % 2 == 0 {
                // a partial digraph stays within the stated upper bound
                let g = Digraph::from_fn(n, |u, v| u < v && rng.gen_bool(0.4));
                let (f, _) = encode_check_k(&g, k, Mode::Direct).unwrap();
                if f.num_vars != vars || f.clauses.len() > clauses {
                    mismatches.push((n, k, f.num_vars, f.clauses.len(), vars, clauses));
                }
            }
        }
    }
    report(
        "5",
        "direct variable and clause counts on n 3..10, k 2..7",
        mismatches.is_empty(),
        format!("{cells} exact cells, mismatches {mismatches:?}"),
    );
}

// ---------------------------------------------------------------------------
// 6. oracle equivalence

/// Majority digraphs of all multisets of k orders on n alternatives.
fn exhaustive_majority_digraphs(n: usize, k: usize) -> HashSet<Vec<bool>> {
    let orders: Vec<LinearOrder> = permutations(n).into_iter().map(|r| LinearOrder::new(r).unwrap()).collect();
    let mut out = HashSet::new();
    let mut idx = vec![0usize; k];
    loop {
        let p = Profile::new(n, idx.iter().map(|&i| orders[i].clone()).collect()).unwrap();
        out.insert(adjacency(&p.majority_digraph()));
        // next nondecreasing index tuple
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] + 1 < orders.len() {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[i];
                }
                break;
            }
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn adjacency(g: &Digraph) -> Vec<bool> {
    let n = g.n();
    (0..n * n).map(|i| g.has_arc(i / n, i % n)).collect()
}

/// Every digraph on n labelled vertices: each pair absent, forward or backward.
fn all_digraphs(n: usize) -> Vec<Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let total = 3usize.pow(pairs.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut g = Digraph::new(n);
            for &(a, b) in &pairs {
                match code % 3 {
                    1 => g.add_arc(a, b),
                    2 => g.add_arc(b, a),
                    _ => {}
                }
                code /= 3;
            }
            g
        })
        .collect()
}

#[test]
fn c06_oracle_equivalence() {
    let mut tournaments = 0;
    let mut partition_disagree = Vec::new();
    for n in 1..=6 {
        for t in enumerate_tournaments(n).unwrap() {
            tournaments += 1;
            let by_partition = two_partition_check_3(&t).unwrap().is_some();
            if by_partition != is_yes(&t, 3, EncodeOptions::default()) {
                partition_disagree.push(t.to_text());
            }
        }
    }
    let mut compared = 0;
    let mut sat_disagree = Vec::new();
    for n in 1..=4 {
        for k in 1..=3 {
            let reachable = exhaustive_majority_digraphs(n, k);
            for g in all_digraphs(n) {
                if g.is_tournament() != (k % 2 == 1) {
                    continue;
                }
                compared += 1;
                let want = reachable.contains(&adjacency(&g));
                for mode in [Mode::Optimized, Mode::Direct] {
                    if is_yes(&g, k, mode.into()) != want {
                        sat_disagree.push((n, k, mode, g.to_text()));
                    }
                }
            }
        }
    }
    let ok = tournaments == 76 && partition_disagree.is_empty() && sat_disagree.is_empty();
    report(
        "6",
        "two-partition and exhaustive oracles agree with SAT",
        ok,
        format!(
            "{tournaments} tournaments, {} partition disagreements; {compared} labelled digraphs, {} SAT disagreements",
            partition_disagree.len(),
            sat_disagree.len()
        ),
    );
}

// ---------------------------------------------------------------------------
// 7. gadget suite

const GADGET_FORMULAS: usize = 100;
const GADGET_MAX_CLAUSES: usize = 6;

fn random_digraph(rng: &mut ChaCha8Rng, n: usize) -> Digraph {
    let mut g = Digraph::new(n);
    for a in 0..n {
        for b in a + 1..n {
            match rng.gen_range(0..3) {
                1 => g.add_arc(a, b),
                2 => g.add_arc(b, a),
                _ => {}
            }
        }
    }
    g
}

fn gadget_ok(out: &GadgetOutput, voters: usize) -> bool {
    out.witness.k() == voters && out.verify().is_ok() && out.check_trace().is_ok()
}

#[test]
fn c07_gadget_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures: Vec<String> = Vec::new();
    let mut runs = [0usize; 6];
    for _ in 0..GADGET_FORMULAS {
        let clauses = rng.gen_range(1..=GADGET_MAX_CLAUSES);
        let nv = rng.gen_range(3..=6);
        let ordered = random_ordered(&mut rng, nv, clauses);
        let few = random_reduced_few(&mut rng, (2 * clauses).max(4), clauses);
        let plain = random_three_cnf(&mut rng, nv, clauses);
        let size = rng.gen_range(2..=7);
        let g = random_digraph(&mut rng, size);
        let cases: [(&str, majdim::Result<GadgetOutput>, usize); 6] = [
            ("banks", banks_tournament(&ordered), 5),
            ("teq", teq_tournament(&ordered), 7),
            ("kemeny", kemeny_subdivide(&g), 4),
            ("slater", slater_tournament(&few), 7),
            ("rp-digraph", rp_digraph(&plain), 8),
            ("rp-tournament", rp_tournament(&plain), 11),
        ];
        for (i, (name, out, voters)) in cases.into_iter().enumerate() {
            runs[i] += 1;
            match out {
                Ok(o) if gadget_ok(&o, voters) => {}
                Ok(_) => failures.push(format!("{name}: witness check")),
                Err(e) => failures.push(format!("{name}: {e}")),
            }
        }
    }
    report(
        "7",
        "gadget witnesses induce their graphs with 5/7/4/7/8/11 voters",
        failures.is_empty() && runs.iter().all(|&r| r >= GADGET_FORMULAS),
        format!("runs {runs:?}, failures {failures:?}"),
    );
}

// ---------------------------------------------------------------------------
// 8. transform suite

const TRANSFORM_FORMULAS: usize = 500;
const TRANSFORM_MAX_VARS: usize = 12;

/// Brute force under the enumeration cap, the SAT backend above it.
fn satisfiable(f: &CnfFormula) -> bool {
    if f.num_vars <= BRUTE_FORCE_CAP {
        return brute_force_sat(f).unwrap();
    }
    match solver().solve(f).unwrap() {
        SatOutcome::Sat(model) => f.evaluate(&model),
        SatOutcome::Unsat => false,
        SatOutcome::Timeout => panic!("no timeout configured"),
    }
}

#[test]
fn c08_transform_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    let (mut sat, mut unsat) = (0, 0);
    for i in 0..TRANSFORM_FORMULAS {
        let nv = rng.gen_range(3..=TRANSFORM_MAX_VARS);
        let clauses = rng.gen_range(1..=3 * nv);
        let f = random_three_cnf(&mut rng, nv, clauses);
        let want = brute_force_sat(&f).unwrap();
        if want {
            sat += 1;
        } else {
            unsat += 1;
        }
        let o = to_ordered3(&f).unwrap();
        if !is_ordered(&o) || satisfiable(&o) != want {
            failures.push(format!("#{i} ordered3"));
        }
        let r = to_reducedfew(&f).unwrap();
        if !is_reduced_few(&r) || satisfiable(&r) != want {
            failures.push(format!("#{i} reducedfew"));
        }
    }
    report(
        "8",
        "transforms preserve satisfiability and shape",
        failures.is_empty() && sat > 0 && unsat > 0,
        format!("{TRANSFORM_FORMULAS} formulas ({sat} sat, {unsat} unsat), failures {failures:?}"),
    );
}

// ---------------------------------------------------------------------------
// 9. profile counting

#[test]
fn c09_profile_count() {
    let a = profile_count(5, 1);
    let b = profile_count(5, 3);
    let ok = a == BigUint::from(120u32) && b == BigUint::from(1_728_000u32);
    report("9", "profile counts", ok, format!("(5,1) = {a}, (5,3) = {b}"));
}

// ---------------------------------------------------------------------------
// 10. stochastic surrogate

const UNIFORM_N: usize = 21;
const UNIFORM_SAMPLES: u64 = 30;
const UNIFORM_MIN_MEAN: f64 = 4.5;
const SPATIAL_SAMPLES: u64 = 200;

#[test]
fn c10_stochastic_surrogate() {
    let opts = DimensionOptions { max_k: 9, ..Default::default() };
    let mut dims = Vec::new();
    for seed in 0..UNIFORM_SAMPLES {
        let spec = CultureSpec::new(Model::UniformTournament, UNIFORM_N, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Sample::Tournament(t) = sample(&spec, &mut rng).unwrap() else { panic!("expected a tournament") };
        dims.push(dimension(&t, &opts, &solver()).unwrap().dim);
    }
    let known: Vec<usize> = dims.iter().flatten().copied().collect();
    let mean = known.iter().sum::<usize>() as f64 / known.len().max(1) as f64;
    let mut transitive = 0;
    for seed in 0..SPATIAL_SAMPLES {
        let spec = CultureSpec { dims: 1, ..CultureSpec::new(Model::Spatial, 8, seed) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let Sample::Profile(p) = sample(&spec, &mut rng).unwrap() else { panic!("expected a profile") };
        if p.majority_digraph().is_transitive() {
            transitive += 1;
        }
    }
    let ok = known.len() == dims.len() && mean >= UNIFORM_MIN_MEAN && transitive == SPATIAL_SAMPLES;
    report(
        "10",
        "uniform n = 21 mean dimension and one-dimensional spatial transitivity",
        ok,
        format!(
            "mean {mean:.2} over {} samples (min {UNIFORM_MIN_MEAN}), spatial {transitive}/{SPATIAL_SAMPLES}",
            known.len()
        ),
    );
}

// ---------------------------------------------------------------------------
// 11. runtime smoke

const SMOKE_BUDGET: Duration = Duration::from_secs(60);

#[test]
fn c11_runtime_smoke() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let t = uniform_tournament(20, &mut rng);
    let start = Instant::now();
    let outcome = check_k_majority(&t, 3, &solver(), EncodeOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let ok = !matches!(outcome, CheckOutcome::Timeout) && elapsed < SMOKE_BUDGET;
    report(
        "11",
        "random 20-vertex tournament at k = 3",
        ok,
        format!("answer {}, {elapsed:.2?}, budget {SMOKE_BUDGET:?}", if outcome.is_yes() { "yes" } else { "no" }),
    );
}

// ---------------------------------------------------------------------------
// worked examples

#[test]
fn x_worked_examples() {
    // the introductory 3-voter profile over a..e
    let fig1 = Digraph::from_arcs(5, &[(3, 0), (1, 3), (2, 3), (4, 0), (4, 1), (2, 4), (3, 4), (0, 1), (1, 2), (0, 2)])
        .unwrap();
    let p = Profile::from_rankings(5, vec![vec![0, 1, 2, 3, 4], vec![3, 4, 0, 1, 2], vec![2, 4, 1, 3, 0]]).unwrap();
    let fig1_ok = p.induces(&fig1) && is_yes(&fig1, 3, EncodeOptions::default()) && !fig1.is_transitive();

    // transitive but not 2-inducible
    let fig4a = Digraph::from_arcs(6, &[(0, 1), (1, 2), (4, 3), (3, 2), (0, 5), (4, 5), (0, 2), (4, 2)]).unwrap();
    let fig4a_ok = fig4a.is_transitive() && !is_yes(&fig4a, 2, EncodeOptions::default());

    // 8-vertex tournament of dimension 5: arcs point from earlier to later
    // letters except for the listed reversals
    let up = [(3, 0), (7, 0), (6, 0), (7, 1), (5, 1), (6, 2), (5, 2)];
    let t8 = Digraph::from_fn(8, |u, v| if up.contains(&(u, v)) { true } else { u < v && !up.contains(&(v, u)) });
    let t8_ok =
        t8.is_tournament() && !is_yes(&t8, 3, EncodeOptions::default()) && is_yes(&t8, 5, EncodeOptions::default());

    let ok = fig1_ok && fig4a_ok && t8_ok;
    report(
        "x",
        "worked examples",
        ok,
        format!("3-voter example {fig1_ok}, not 2-inducible {fig4a_ok}, 8-vertex dimension 5 {t8_ok}"),
    );
}
