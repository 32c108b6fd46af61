//! Acceptance criteria, one test each. Every test prints a single
//! `criterion NN [PASS|FAIL] ...` line before asserting.
//!
//! The expensive n = 8 conjecture run and the n = 7 `M_J` scan are gated
//! behind `ODDLEN_ACCEPTANCE_FULL=1`.

use std::io::Write;
use std::time::{Duration, Instant};

use oddlen_core::closed_forms::formula_d_singleton;
use oddlen_core::{
    check_mj_signatures, enumerate_group, verify_claim, verify_suite, ClaimId, ClaimParams,
    GfEngine, GfValue, GroupLabel, Report, SignatureMode, Status,
};

fn full() -> bool {
    std::env::var("ODDLEN_ACCEPTANCE_FULL").is_ok_and(|v| v == "1")
}

fn max_workers() -> usize {
    std::thread::available_parallelism().map_or(1, usize::from)
}

fn verdict(id: u8, title: &str, pass: bool, detail: &str) -> bool {
    let mark = if pass { "PASS" } else { "FAIL" };
    // straight to the stream so the line shows even when output is captured
    let line = format!("criterion {id:02} [{mark}] {title}: {detail}\n");
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    pass
}

fn first_problem(reports: &[Report]) -> Option<String> {
    reports
        .iter()
        .find(|r| r.status != Status::Verified)
        .map(|r| {
            format!(
                "{} n={} {} is {}: {}",
                r.claim,
                r.n,
                r.params,
                r.status,
                r.counterexample
                    .as_deref()
                    .or(r.note.as_deref())
                    .unwrap_or("")
            )
        })
}

fn run_claim(engine: &GfEngine, id: ClaimId, ns: impl IntoIterator<Item = usize>) -> Vec<Report> {
    ns.into_iter()
        .flat_map(|n| verify_suite(engine, &[id], n..=n, SignatureMode::Literal).unwrap())
        .collect()
}

fn all_verified(reports: &[Report]) -> bool {
    !reports.is_empty() && reports.iter().all(|r| r.status == Status::Verified)
}

#[test]
fn criterion_01_whole_group_product() {
    let engine = GfEngine::single_threaded();
    let start = Instant::now();
    let small = run_claim(&engine, ClaimId::ThmDTrivial, 2..=7);
    let small_time = start.elapsed();

    let engine = GfEngine::single_threaded();
    let start = Instant::now();
    let eight = run_claim(&engine, ClaimId::ThmDTrivial, [8]);
    let eight_time = start.elapsed();

    let exact = all_verified(&small) && all_verified(&eight) && small.len() == 6;
    let pass =
        exact && small_time < Duration::from_secs(10) && eight_time < Duration::from_secs(120);
    let detail = match first_problem(&small).or_else(|| first_problem(&eight)) {
        Some(p) => p,
        None => format!("n=2..7 in {small_time:.2?} (budget 10s), n=8 in {eight_time:.2?} single-threaded (budget 2min)"),
    };
    assert!(verdict(
        1,
        "D_n whole-group gf equals the tower product",
        pass,
        &detail
    ));
}

#[test]
fn criterion_02_square_of_type_a() {
    let engine = GfEngine::new(max_workers()).unwrap();
    let reports = run_claim(&engine, ClaimId::CorDASquare, 2..=8);
    // both sides come from separate enumerations of D_n and S_n
    let independent = reports.iter().all(|r| match (&r.lhs, &r.rhs) {
        (GfValue::Signed(d), GfValue::Signed(a2)) => {
            let a = engine
                .signed_gf(r.n, GroupLabel::TypeA, &oddlen_core::IndexSet::empty(r.n))
                .unwrap();
            d == a2 && *a2 == &a * &a
        }
        _ => false,
    });
    let pass = all_verified(&reports) && independent && reports.len() == 7;
    let detail = first_problem(&reports).unwrap_or_else(|| "n=2..8 exact".into());
    assert!(verdict(
        2,
        "D_n gf is the square of the S_n gf",
        pass,
        &detail
    ));
}

#[test]
fn criterion_03_maximal_quotients() {
    let engine = GfEngine::single_threaded();
    let start = Instant::now();
    let reports = run_claim(&engine, ClaimId::ThmDSingleton, 3..=7);
    let elapsed = start.elapsed();
    let mut independent = true;
    for n in 3..=7 {
        let expect = GfValue::Signed(formula_d_singleton(n).unwrap());
        let per_i: Vec<_> = reports.iter().filter(|r| r.n == n).collect();
        independent &= per_i.len() == n && per_i.iter().all(|r| r.lhs == expect);
    }
    let pass = all_verified(&reports) && independent && elapsed < Duration::from_secs(60);
    let detail = first_problem(&reports).unwrap_or_else(|| {
        format!(
            "{} instances, n=3..7, every i, in {elapsed:.2?} (budget 1min)",
            reports.len()
        )
    });
    assert!(verdict(
        3,
        "maximal quotients and (1-x^2) relation",
        pass,
        &detail
    ));
}

#[test]
fn criterion_04_pair_quotients() {
    let engine = GfEngine::new(max_workers()).unwrap();
    let mut reports = run_claim(&engine, ClaimId::ThmD01, 3..=7);
    reports.extend(run_claim(&engine, ClaimId::CorD02, 4..=7));
    let pass = all_verified(&reports) && reports.len() == 9;
    let detail =
        first_problem(&reports).unwrap_or_else(|| "{0,1} for n=3..7, {0,2} for n=4..7".into());
    assert!(verdict(
        4,
        "{0,1} and {0,2} quotient products",
        pass,
        &detail
    ));
}

#[test]
fn criterion_05_structural_identities() {
    let engine = GfEngine::single_threaded();
    let ids = [
        ClaimId::LemComplement,
        ClaimId::Prop01Swap,
        ClaimId::LemVanishing,
        ClaimId::PropShift,
    ];
    let start = Instant::now();
    let reports = verify_suite(&engine, &ids, 1..=6, SignatureMode::Literal).unwrap();
    let elapsed = start.elapsed();
    let checked: Vec<_> = reports
        .iter()
        .filter(|r| r.status != Status::Inapplicable)
        .cloned()
        .collect();
    // below each claim's first rank the suite emits inapplicable records
    let only_low_ranks = reports
        .iter()
        .filter(|r| r.status == Status::Inapplicable)
        .all(|r| r.n < r.claim.min_rank());
    let counts: Vec<String> = ids
        .iter()
        .map(|id| format!("{id} {}", checked.iter().filter(|r| r.claim == *id).count()))
        .collect();
    let pass = all_verified(&checked) && only_low_ranks && elapsed < Duration::from_secs(120);
    let failed: Vec<_> = checked
        .iter()
        .filter(|r| r.status != Status::Verified)
        .collect();
    // position 2 feeds the descent at 0, so a = 3 is where a zero in I can interfere
    let next_to_zero = failed
        .iter()
        .filter(|r| r.params.a == Some(3) && r.params.set.is_some_and(|s| s.contains(0)))
        .count();
    let detail = match first_problem(&checked) {
        Some(first) => format!(
            "{} of {} checks fail ({next_to_zero} with a=3 and 0 in I), first {first}",
            failed.len(),
            checked.len()
        ),
        None => format!("{} in {elapsed:.2?} (budget 2min)", counts.join(", ")),
    };
    assert!(verdict(
        5,
        "complement, 0-1 swap, vanishing slices, shifts (n<=6)",
        pass,
        &detail
    ));
}

#[test]
fn criterion_06_conjectured_products() {
    let ids = [
        ClaimId::ConjZeroI,
        ClaimId::ConjZeroOneI,
        ClaimId::ConjZeroISquare,
        ClaimId::ConjZeroOneISquare,
    ];
    let engine = GfEngine::new(max_workers()).unwrap();
    let reports = verify_suite(&engine, &ids, 5..=7, SignatureMode::Literal).unwrap();
    let mut pass = all_verified(&reports) && reports.len() == 4 * (2 + 3 + 4);
    let mut detail = first_problem(&reports).unwrap_or_else(|| "n=5..7, every i in [3,n-1]".into());
    if full() {
        let engine = GfEngine::new(8).unwrap();
        let start = Instant::now();
        let eight = verify_suite(&engine, &ids, 8..=8, SignatureMode::Literal).unwrap();
        let elapsed = start.elapsed();
        pass &= all_verified(&eight) && elapsed < Duration::from_secs(300);
        detail = first_problem(&eight)
            .map(|p| format!("{detail}; {p}"))
            .unwrap_or_else(|| {
                format!("{detail}; n=8 in {elapsed:.2?} at 8 workers (budget 5min)")
            });
    } else {
        detail.push_str("; n=8 skipped (set ODDLEN_ACCEPTANCE_FULL=1)");
    }
    assert!(verdict(
        6,
        "conjectured {0,i} and {0,1,i} products",
        pass,
        &detail
    ));
}

#[test]
fn criterion_07_tower_cofactors() {
    let engine = GfEngine::new(max_workers()).unwrap();
    let hi = if full() { 7 } else { 6 };
    let mut reports =
        verify_suite(&engine, &[ClaimId::ConjMJ], 3..=hi, SignatureMode::Literal).unwrap();
    let expected: usize = (3..=hi).map(|n| 1 << n).sum();
    let divisible = reports.iter().filter(|r| r.cofactor.is_some()).count();
    let literal = reports
        .iter()
        .filter(|r| r.status == Status::Mismatch)
        .count();
    let normalized: usize = check_mj_signatures(&mut reports, SignatureMode::SwapNormalized)
        .unwrap()
        .iter()
        .map(|c| c.violations.len())
        .sum();
    let first = reports
        .iter()
        .find_map(|r| r.counterexample.clone())
        .unwrap_or_default();
    let pass = reports.len() == expected && divisible == expected && literal == 0;
    let detail = format!(
        "n=3..{hi}: tower divides {divisible}/{expected}; {literal} sets break signature dependence{}{}; \
         with 0<->1 normalized keys: {normalized} violations",
        if literal > 0 { ", first: " } else { "" },
        first
    );
    assert!(verdict(
        7,
        "M_J exists and depends only on component sizes",
        pass,
        &detail
    ));
}

#[test]
fn criterion_08_half_count_definitions() {
    let mut odd_bad = 0usize;
    let mut len_bad = 0usize;
    let mut total = 0usize;
    let mut example = None;
    for n in 1..=6 {
        for s in enumerate_group(n, GroupLabel::TypeB) {
            let st = s.stats();
            total += 1;
            if s.odd_length_b_halfcount() != st.oinv + st.oneg + st.onsp {
                odd_bad += 1;
            }
            // the pair set should have twice as many elements as ℓ_B
            if s.inverted_pairs_b() != 2 * (st.inv + st.neg + st.nsp) {
                len_bad += 1;
                example.get_or_insert_with(|| {
                    format!(
                        "{s}: {} pairs vs 2*{}",
                        s.inverted_pairs_b(),
                        st.inv + st.neg + st.nsp
                    )
                });
            }
        }
    }
    let pass = odd_bad == 0 && len_bad == 0;
    let detail = format!(
        "B_1..B_6 ({total} elements): odd-length disagreements {odd_bad}, length disagreements {len_bad}{}",
        example.map(|e| format!(", first {e}")).unwrap_or_default()
    );
    assert!(verdict(
        8,
        "half-count and statistic forms of L_B and l_B",
        pass,
        &detail
    ));
}

#[test]
fn criterion_09_descents_shorten() {
    let mut checked = 0usize;
    let mut bad = None;
    for g in [GroupLabel::TypeA, GroupLabel::TypeB, GroupLabel::TypeD] {
        for n in 1..=5 {
            for s in enumerate_group(n, g) {
                let d = s.descent_set(g).unwrap();
                let len = s.length(g).unwrap();
                for i in g.first_generator()..n {
                    let Ok(t) = s.mul_generator(i, g) else {
                        continue;
                    };
                    checked += 1;
                    if d.contains(i) != (t.length(g).unwrap() < len) {
                        bad.get_or_insert_with(|| format!("{g} {s} s_{i}"));
                    }
                }
            }
        }
    }
    let pass = bad.is_none() && checked > 0;
    let detail =
        bad.unwrap_or_else(|| format!("{checked} (element, generator) pairs, types A/B/D, n<=5"));
    assert!(verdict(9, "i in D(w) iff l(w s_i) < l(w)", pass, &detail));
}

#[test]
fn criterion_10_quotient_divisibility() {
    let engine = GfEngine::new(max_workers()).unwrap();
    let ids = [ClaimId::ThmAQuotient, ClaimId::ThmBQuotient];
    let reports = verify_suite(&engine, &ids, 1..=7, SignatureMode::Literal).unwrap();
    let with_cofactor = reports.iter().filter(|r| r.cofactor.is_some()).count();
    let warnings = reports
        .iter()
        .filter(|r| r.note.as_deref().is_some_and(|n| n.starts_with("warning")))
        .count();
    // type A: 2^(n-1) sets, type B: 2^n sets
    let expected: usize = (1..=7).map(|n| (1 << (n - 1)) + (1 << n)).sum();
    let pass = all_verified(&reports) && with_cofactor == expected;
    let detail = first_problem(&reports).unwrap_or_else(|| {
        format!("{with_cofactor}/{expected} exact cofactors, n<=7; q-multinomial hypothesis warnings: {warnings}")
    });
    assert!(verdict(
        10,
        "type A and B quotient gfs divisible by their explicit factors",
        pass,
        &detail
    ));
}

fn cli(args: &[&str], workers: usize) -> (u8, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full_args = vec![
        "oddlen".to_string(),
        "--workers".into(),
        workers.to_string(),
        "--omit-timing".into(),
    ];
    full_args.extend(args.iter().map(|s| s.to_string()));
    let code = oddlen_cli::run(full_args, &mut out, &mut err);
    (code, out)
}

#[test]
fn criterion_11_worker_count_determinism() {
    let jobs: [&[&str]; 4] = [
        &[
            "verify",
            "--claim",
            "thmD_singleton,conj_MJ,lem_vanishing,thmB_quotient,prop_shift",
            "--n",
            "3..6",
            "--format",
            "json",
        ],
        &[
            "verify", "--claim", "conj_MJ", "--n", "5", "--format", "csv",
        ],
        &["scan", "--group", "D", "--n", "2..6", "--format", "json"],
        &["scan", "--group", "B", "--n", "5", "--format", "csv"],
    ];
    let mut pass = true;
    let mut detail = String::new();
    let workers = [1, 2, max_workers()];
    for job in jobs {
        let runs: Vec<_> = workers.iter().map(|&w| cli(job, w)).collect();
        if runs[0].1.is_empty() || runs.iter().any(|r| *r != runs[0]) {
            pass = false;
            detail = format!("`{}` differs across workers {workers:?}", job.join(" "));
            break;
        }
    }
    if pass {
        detail = format!(
            "{} verify/scan jobs byte-identical at workers {workers:?}",
            jobs.len()
        );
    }
    assert!(verdict(
        11,
        "reports independent of worker count",
        pass,
        &detail
    ));
}

#[test]
fn inapplicable_instances_are_reported() {
    let engine = GfEngine::single_threaded();
    let r = verify_claim(&engine, ClaimId::ConjZeroI, 8, &ClaimParams::with_i(2)).unwrap();
    assert_eq!(r.status, Status::Inapplicable);
}
