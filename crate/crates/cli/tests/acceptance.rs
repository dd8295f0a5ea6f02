//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod corpus;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::Instant;

use chebotarev::covers::verify_bijection_all;
use chebotarev::experiment::{conservation_failures, run_a5_experiment, ExperimentConfig, A5_TYPES, WITNESS_BOUND};
use chebotarev::freewords::{abelianized_matrix, HomFile, Presentation};
use chebotarev::quotients::{IntMatrix, SearchOptions};
use chebotarev::sft::{enumerate_orbits, SftEdge};
use chebotarev::{
    braid_presentation, generic_check, quotient_search, realization_check, smith_normal_form, verify_artin, BraidWord,
    CycleType, FiniteGroup, GroupHom, LabeledSFT, Permutation, Word,
};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const BUNDLED_SFT: &str = include_str!("../data/a5_sft.json");
const BUNDLED_HOM: &str = include_str!("../data/a5_hom.json");

/// Surjections from the trefoil group onto A5, frozen from the exhaustive
/// search and confirmed by the brute-force oracle below.
const TREFOIL_A5_SURJECTIONS: usize = 120;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn bundled_sft() -> LabeledSFT {
    let hom: HomFile = serde_json::from_str(BUNDLED_HOM).unwrap();
    LabeledSFT::from_json(BUNDLED_SFT, hom.build().unwrap()).unwrap()
}

fn trefoil() -> Presentation {
    braid_presentation(&BraidWord::parse("2:s1 s1 s1").unwrap())
}

/// Primitive necklaces of length `n` over `k` symbols.
fn necklaces(k: u64, n: u64) -> u64 {
    let mut total: i64 = 0;
    for d in 1..=n {
        if n.is_multiple_of(d) {
            total += mobius(n / d) * k.pow(d as u32) as i64;
        }
    }
    (total / n as i64) as u64
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let sft = bundled_sft();
    let out = match run_a5_experiment(&sft, &ExperimentConfig::default()) {
        Ok(o) => o,
        Err(e) => return outcome(false, format!("experiment error: {e}")),
    };
    let elapsed = start.elapsed();
    let counts: Vec<usize> = out.table.iter().map(|r| r.element_count).collect();
    let targets: Vec<String> = out.table.iter().map(|r| r.target.to_string()).collect();
    let expected_orbits: u64 = (1..=11).map(|n| necklaces(3, n)).sum();
    let types_ok = out
        .table
        .iter()
        .zip(A5_TYPES)
        .all(|(r, t)| r.decomposition_type == CycleType::from_parts(t.to_vec()));
    let passed = counts == [1, 15, 20, 24]
        && targets == ["1/60", "1/4", "1/3", "2/5"]
        && types_ok
        && out.within_tolerance()
        && out.orbit_count as u64 == expected_orbits
        && elapsed.as_secs() < 60;
    outcome(
        passed,
        format!(
            "max deviation {:.6} <= 0.02, element counts {:?}, {} orbits (necklace count {}; the 1e5 figure is not reachable by a 3-symbol shift at length 11), {:.2?}",
            out.max_deviation, counts, out.orbit_count, expected_orbits, elapsed
        ),
    )
}

struct CorpusCase {
    name: String,
    group: Arc<FiniteGroup>,
}

fn corpus() -> (Vec<CorpusCase>, Outcome) {
    let groups = corpus::groups_up_to_24();
    let mut per_order = [0usize; 25];
    let mut sigs = BTreeSet::new();
    for g in &groups {
        per_order[g.group.order()] += 1;
        sigs.insert(corpus::signature(&g.group));
    }
    // number of isomorphism types of each order 1..=24
    let known = [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14, 1, 5, 1, 5, 2, 2, 1, 15];
    let complete = per_order[1..] == known && sigs.len() == groups.len();
    let mut cases: Vec<CorpusCase> = groups
        .into_iter()
        .map(|g| CorpusCase {
            name: g.name,
            group: Arc::new(g.group),
        })
        .collect();
    let a5 = FiniteGroup::from_cycle_strings(5, &["(1 2 3 4 5)", "(1 2 3)"]).unwrap();
    cases.push(CorpusCase {
        name: "A5".into(),
        group: Arc::new(a5),
    });
    let check = outcome(
        complete,
        format!("{} groups, {} distinct invariant signatures", cases.len() - 1, sigs.len()),
    );
    (cases, check)
}

fn criterion_2(cases: &[CorpusCase], corpus_ok: &Outcome) -> Outcome {
    let mut pairs = 0;
    let mut elements = 0;
    let mut mismatches = Vec::new();
    let mut saw_a4 = false;
    for c in cases {
        for sub in c.group.subgroups() {
            saw_a4 |= c.name == "A5" && sub.order() == 12;
            match verify_artin(&c.group, &sub) {
                Ok(r) => {
                    pairs += 1;
                    elements += r.checked;
                    if !r.passed() {
                        mismatches.push(format!("{} / order {}: {}", c.name, sub.order(), r.mismatches.len()));
                    }
                }
                Err(e) => mismatches.push(format!("{}: {e}", c.name)),
            }
        }
    }
    outcome(
        corpus_ok.passed && saw_a4 && mismatches.is_empty(),
        format!(
            "{} (group, subgroup) pairs, {} elements, {} mismatches; corpus: {}",
            pairs,
            elements,
            mismatches.len(),
            corpus_ok.detail
        ),
    )
}

fn criterion_3(cases: &[CorpusCase]) -> Outcome {
    let mut loops = 0;
    let mut degree_one = 0;
    let mut conjugates = 0;
    let mut failures = Vec::new();
    for c in cases {
        for sub in c.group.subgroups() {
            match verify_bijection_all(&c.group, &sub) {
                Ok(reports) => {
                    for r in &reports {
                        loops += 1;
                        degree_one += r.degree_one.len();
                        conjugates += r.conjugates_in_subgroup.len();
                        if !r.direction_one_holds() {
                            failures.push(format!("{} order {}: direction 1", c.name, sub.order()));
                        }
                        if !r.direction_two_holds() {
                            failures.push(format!("{} order {}: direction 2", c.name, sub.order()));
                        }
                    }
                }
                Err(e) => failures.push(format!("{}: {e}", c.name)),
            }
        }
    }
    outcome(
        failures.is_empty() && degree_one > 0 && conjugates > 0,
        format!(
            "{loops} loops, {degree_one} degree-one components, {conjugates} conjugates in H, {} failures",
            failures.len()
        ),
    )
}

fn s3_hom() -> GroupHom {
    let hom = HomFile {
        degree: 3,
        generators: vec!["(1 2 3)".into(), "(1 2)".into()],
        target: None,
    };
    hom.build().unwrap()
}

fn edges(spec: &[(usize, usize, &str)]) -> Vec<SftEdge> {
    spec.iter()
        .map(|&(from, to, w)| SftEdge {
            from,
            to,
            label: Word::parse(w).unwrap(),
        })
        .collect()
}

fn golden_mean() -> LabeledSFT {
    LabeledSFT::new(2, edges(&[(0, 0, "x1"), (0, 1, "x2"), (1, 0, "x1 x2")]), s3_hom()).unwrap()
}

fn test_sfts() -> Vec<(&'static str, LabeledSFT)> {
    let a5 = bundled_sft();
    let a5_hom = a5.hom().clone();
    vec![
        ("bundled A5", a5),
        ("golden mean / S3", golden_mean()),
        (
            "3-state / S3",
            LabeledSFT::new(
                3,
                edges(&[(0, 1, "x1"), (1, 2, "x2"), (2, 0, "1"), (2, 2, "x1^-1"), (1, 0, "x2 x1")]),
                s3_hom(),
            )
            .unwrap(),
        ),
        (
            "period 2 / A5",
            LabeledSFT::new(2, edges(&[(0, 1, "x1"), (1, 0, "x2"), (1, 0, "1")]), a5_hom.clone()).unwrap(),
        ),
        (
            "identity labels / A5",
            LabeledSFT::new(1, edges(&[(0, 0, "1"), (0, 0, "x1 x1^-1")]), a5_hom).unwrap(),
        ),
    ]
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for (name, sft) in test_sfts() {
        let orbits: Vec<_> = enumerate_orbits(&sft, 10).collect();
        match conservation_failures(&sft, &orbits, 10) {
            Ok(bad) if bad.is_empty() => checked += 10,
            Ok(bad) => failures.push(format!("{name}: lengths {bad:?}")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    outcome(
        failures.is_empty(),
        format!("{checked} (subshift, length) pairs exact; failures {failures:?}"),
    )
}

/// Primitive orbit counts from traces of powers of the adjacency matrix.
fn trace_oracle(adj: &[Vec<i64>], n: usize) -> Vec<i64> {
    let k = adj.len();
    let mut traces = vec![0i64; n + 1];
    let mut power: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect();
    for t in traces.iter_mut().skip(1) {
        power = (0..k)
            .map(|i| (0..k).map(|j| (0..k).map(|l| power[i][l] * adj[l][j]).sum()).collect())
            .collect();
        *t = (0..k).map(|i| power[i][i]).sum();
    }
    (1..=n)
        .map(|m| {
            let s: i64 = (1..=m).filter(|d| m % d == 0).map(|d| mobius((m / d) as u64) * traces[d]).sum();
            s / m as i64
        })
        .collect()
}

fn criterion_5() -> Outcome {
    let sft = golden_mean();
    let mut counts = vec![0i64; 8];
    for o in enumerate_orbits(&sft, 8) {
        counts[o.len() - 1] += 1;
    }
    let oracle = trace_oracle(&[vec![1, 1], vec![1, 0]], 8);
    let golden = [1, 1, 1, 1, 2, 2, 4, 5];
    outcome(
        counts == oracle && oracle == golden,
        format!("enumerated {counts:?}, trace oracle {oracle:?}"),
    )
}

/// Determinant by cofactor expansion along the first row.
fn cofactor_det(m: &[Vec<i64>]) -> i64 {
    if m.is_empty() {
        return 1;
    }
    (0..m.len())
        .map(|j| {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * cofactor_det(&minor)
        })
        .sum()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in &mut with {
        s.push(n - 1);
    }
    with.extend(subsets(n - 1, k));
    with
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Invariant factors as ratios of determinantal divisors (gcds of minors).
fn determinantal_oracle(a: &[Vec<i64>]) -> Vec<i64> {
    let (r, c) = (a.len(), a.first().map_or(0, Vec::len));
    let mut divisors = vec![1i64];
    for k in 1..=r.min(c) {
        let mut g = 0;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let minor: Vec<Vec<i64>> = rows.iter().map(|&i| cols.iter().map(|&j| a[i][j]).collect()).collect();
                g = gcd(g, cofactor_det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    let mut out: Vec<i64> = divisors.windows(2).map(|w| w[1] / w[0]).collect();
    out.resize(r.min(c), 0);
    out
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut failures = Vec::new();
    let mut oracle_checked = 0;
    for trial in 0..1000 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let a = IntMatrix::from_i64_rows(&rows).unwrap();
        let f = smith_normal_form(&a);
        let reconstructed = f.u.mul(&f.s).mul(&f.v) == a;
        let unimodular = f.u.determinant().abs().is_one() && f.v.determinant().abs().is_one();
        let diag = f.diagonal();
        let diagonal_only = (0..r).all(|i| (0..c).all(|j| i == j || f.s[(i, j)].is_zero()));
        let chain = diag.iter().all(|d| !d.is_negative())
            && diag.windows(2).all(|w| {
                if w[0].is_zero() {
                    w[1].is_zero()
                } else {
                    (&w[1] % &w[0]).is_zero()
                }
            });
        if !(reconstructed && unimodular && diagonal_only && chain) {
            failures.push(format!("trial {trial}: {rows:?}"));
        }
        if trial % 10 == 0 {
            oracle_checked += 1;
            let oracle: Vec<BigInt> = determinantal_oracle(&rows).into_iter().map(BigInt::from).collect();
            if oracle != diag {
                failures.push(format!("trial {trial}: oracle {oracle:?} vs {diag:?}"));
            }
        }
    }
    outcome(
        failures.is_empty(),
        format!("1000 matrices, {oracle_checked} against the determinantal-divisor oracle, failures {failures:?}"),
    )
}

fn criterion_7() -> Outcome {
    let p = trefoil();
    let with_meridian = generic_check(&p, &[Word::parse("x1").unwrap()]);
    let empty = generic_check(&p, &[]);
    let witness_ok = match &empty.witness {
        Some(w) => {
            let kills_relators = p.relators().iter().all(|r| w.evaluate(r) == 0);
            let relator_rows = abelianized_matrix(&p).to_i64_rows().unwrap();
            let kills_rows = relator_rows.iter().all(|row| {
                row.iter().zip(&w.values).map(|(&a, &v)| a * v as i64).sum::<i64>().rem_euclid(w.prime as i64) == 0
            });
            let onto = w.values.iter().any(|&v| v % w.prime != 0);
            let prime = (2..w.prime).all(|d| w.prime % d != 0) && w.prime >= 2;
            kills_relators && kills_rows && onto && prime
        }
        None => false,
    };
    outcome(
        with_meridian.generic && with_meridian.witness.is_none() && !empty.generic && witness_ok,
        format!(
            "{{x1}} -> {}, {{}} -> {} with witness {:?}",
            with_meridian.generic,
            empty.generic,
            empty.witness.as_ref().map(|w| (w.prime, w.values.clone()))
        ),
    )
}

/// Closure of a generating set by plain composition.
fn closure_size(gens: &[Permutation]) -> usize {
    let degree = gens[0].degree();
    let mut seen = BTreeSet::from([Permutation::identity(degree)]);
    let mut frontier = vec![Permutation::identity(degree)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.compose(g).unwrap();
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// Pairs `(a, b)` of `elements` with `a b a = b a b` (or any pair when
/// `braid` is false) generating a group of order `order`.
fn pair_oracle(elements: &[Permutation], order: usize, braid: bool) -> usize {
    let mut count = 0;
    for a in elements {
        for b in elements {
            if braid {
                let aba = a.compose(b).unwrap().compose(a).unwrap();
                let bab = b.compose(a).unwrap().compose(b).unwrap();
                if aba != bab {
                    continue;
                }
            }
            if closure_size(&[a.clone(), b.clone()]) == order {
                count += 1;
            }
        }
    }
    count
}

fn criterion_8() -> Outcome {
    let p = trefoil();
    let opts = SearchOptions::default();
    let z2 = Arc::new(FiniteGroup::from_cycle_strings(2, &["(1 2)"]).unwrap());
    let a5 = Arc::new(FiniteGroup::from_cycle_strings(5, &["(1 2 3 4 5)", "(1 2 3)"]).unwrap());
    let s3 = Arc::new(FiniteGroup::from_cycle_strings(3, &["(1 2 3)", "(1 2)"]).unwrap());

    let to_z2 = quotient_search(&p, &z2, &opts).map(|v| v.len());
    let to_a5 = quotient_search(&p, &a5, &opts).unwrap_or_default();
    let revalidated = to_a5
        .iter()
        .all(|h| p.relators().iter().all(|r| h.evaluate(r) == Ok(a5.identity())) && h.is_surjective());
    let a5_oracle = pair_oracle(a5.elements(), 60, true);
    let f2_s3 = quotient_search(&Presentation::free(2), &s3, &opts).map(|v| v.len());
    let s3_oracle = pair_oracle(s3.elements(), 6, false);

    outcome(
        to_z2 == Ok(1)
            && !to_a5.is_empty()
            && to_a5.len() == a5_oracle
            && to_a5.len() == TREFOIL_A5_SURJECTIONS
            && revalidated
            && f2_s3 == Ok(18)
            && s3_oracle == 18,
        format!(
            "trefoil->Z2 {:?}, trefoil->A5 {} (oracle {a5_oracle}, frozen {TREFOIL_A5_SURJECTIONS}), F2->S3 {:?} (oracle {s3_oracle})",
            to_z2,
            to_a5.len(),
            f2_s3
        ),
    )
}

fn criterion_9() -> Outcome {
    let sft = bundled_sft();
    let report = realization_check(&sft, WITNESS_BOUND);
    let longest = report.witnesses.iter().flatten().map(|o| o.len()).max().unwrap_or(0);
    let identity = test_sfts().pop().unwrap().1;
    let bad = realization_check(&identity, WITNESS_BOUND);
    let diag = bad.diagnostics();
    let holonomy_diag = diag.iter().any(|d| d.contains("holonomy group has order 1"));
    outcome(
        report.passed() && report.witnesses.len() == 5 && longest <= WITNESS_BOUND && !bad.passed() && holonomy_diag,
        format!(
            "bundled: 5 classes by length {longest}; identity labels rejected: {}",
            diag.join("; ")
        ),
    )
}

fn main() {
    let (cases, corpus_ok) = corpus();
    let results: Vec<(&str, Outcome)> = vec![
        ("A5 decomposition-type table", criterion_1()),
        ("covering graph vs monodromy cycle type", criterion_2(&cases, &corpus_ok)),
        ("degree-one component bijection", criterion_3(&cases)),
        ("conservation identity", criterion_4()),
        ("golden-mean orbit counts", criterion_5()),
        ("Smith normal form", criterion_6()),
        ("genericity check", criterion_7()),
        ("quotient search", criterion_8()),
        ("realization check", criterion_9()),
    ];
    let mut failed = 0;
    for (i, (name, r)) in results.iter().enumerate() {
        let tag = if r.passed { "PASS" } else { "FAIL" };
        println!("criterion {} [{tag}] {name}: {}", i + 1, r.detail);
        failed += usize::from(!r.passed);
    }
    if failed > 0 {
        eprintln!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
