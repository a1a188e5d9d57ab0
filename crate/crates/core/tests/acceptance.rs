//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use braidgen::certify::{
    conjugate_claim, build_certificate, build_rewrite_certificate, sigma0_certificate,
    small_strand_certificate, verify_certificate, Certificate,
};
use braidgen::random::{random_word, random_zero_sum_word, scramble};
use braidgen::rewrite::{admissible_ks, two_generator_factor, RewriteParams};
use braidgen::suite::{pipeline_case, random_conjugate_factor};
use braidgen::{equal, normal_form, BraidWord, LkOracle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdicts = BTreeMap<(usize, i64, i64), bool>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn target(n: usize, i: i64) -> BraidWord {
    BraidWord::from_tokens(n, &[1, -i]).unwrap()
}

fn criterion_1(verdicts: &mut Verdicts) -> Outcome {
    let start = Instant::now();
    let (mut total, mut failures) = (0, Vec::new());
    for n in [5usize, 7, 8, 9, 10, 11] {
        for k in admissible_ks(n) {
            let p = RewriteParams::new(n, k).unwrap();
            for i in 2..n as i64 {
                let ok = build_certificate(p, i)
                    .map(|c| verify_certificate(&c).pass)
                    .unwrap_or(false);
                verdicts.insert((n, k, i), ok);
                total += 1;
                if !ok {
                    failures.push((n, k, i));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        failures.is_empty() && elapsed < Duration::from_secs(600),
        format!(
            "{total} certificates, {} failures {:?}, {:.2} s (limit 600 s)",
            failures.len(),
            failures,
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_2(verdicts: &Verdicts) -> Outcome {
    let mut cases = 0;
    let mut problems = Vec::new();
    let mut max_flat = 0u128;
    for (n, ks) in [(5usize, vec![2i64, 3]), (7, vec![2, 3, 4, 5])] {
        for k in ks {
            let p = RewriteParams::new(n, k).unwrap();
            for i in 2..n as i64 {
                cases += 1;
                let slp = two_generator_factor(p, i).unwrap();
                max_flat = max_flat.max(slp.flat_len());
                let direct = match slp.artin_expansion(1_000_000) {
                    Ok(w) => equal(&w, &target(n, i)).unwrap(),
                    Err(e) => {
                        problems.push(format!("n={n} k={k} i={i}: {e}"));
                        continue;
                    }
                };
                if !direct {
                    problems.push(format!("n={n} k={k} i={i}: expansion differs"));
                }
                if verdicts.get(&(n, k, i)) != Some(&direct) {
                    problems.push(format!("n={n} k={k} i={i}: disagrees with certificate"));
                }
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!("{cases} expansions, max flat length {max_flat} (limit 1000000), problems {problems:?}"),
    )
}

fn criterion_3() -> Outcome {
    let report = verify_certificate(&small_strand_certificate());
    let passed = report.claims.iter().filter(|c| c.pass).count();
    outcome(
        report.pass && report.claims.len() == 6,
        format!("{passed}/{} identities hold", report.claims.len()),
    )
}

fn criterion_4() -> Outcome {
    let mut problems = Vec::new();
    let sigma0 = verify_certificate(&sigma0_certificate());
    if !sigma0.pass {
        problems.push(format!("sigma0 identities failing {:?}", sigma0.failing_claims()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in [5usize, 6, 7] {
        let mut bad = 0;
        for _ in 0..200 {
            let f = random_conjugate_factor(&mut rng, n);
            assert!(f.conjugator.len() <= 6);
            let ok = conjugate_claim(&f)
                .and_then(|c| equal(&c.lhs, &c.rhs))
                .unwrap_or(false);
            bad += usize::from(!ok);
        }
        if bad > 0 {
            problems.push(format!("{bad}/200 conjugate expansions failed for n={n}"));
        }
    }
    let mut expanded = 0;
    for (n, k) in [(5usize, 2i64), (7, 3)] {
        let p = RewriteParams::new(n, k).unwrap();
        let mut bad = 0;
        for _ in 0..100 {
            let len = 2 * rng.gen_range(0..=5);
            let w = random_zero_sum_word(&mut rng, n, len);
            let (ok, ex) = pipeline_case(p, &w, 1_000_000);
            bad += usize::from(!ok);
            expanded += usize::from(ex);
        }
        if bad > 0 {
            problems.push(format!("{bad}/100 pipeline cases failed for (n, k) = ({n}, {k})"));
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "{} sigma0 identities, 600 conjugate expansions, 200 pipeline cases ({expanded} also expanded, all certified); problems {problems:?}",
            sigma0.claims.len()
        ),
    )
}

fn criterion_5() -> Outcome {
    let oracle = LkOracle::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut pairs, mut disagreements, mut rewrites_missed) = (0, 0, 0);
    for n in 4..=7usize {
        for case in 0..500 {
            let len = rng.gen_range(0..=40);
            let a = random_word(&mut rng, n, len);
            let b = if case % 2 == 0 {
                // defining-relation rewrites, kept within the length bound
                loop {
                    let s = scramble(&mut rng, &a, 3);
                    if s.len() <= 40 {
                        break s;
                    }
                }
            } else {
                let len = rng.gen_range(0..=40);
                random_word(&mut rng, n, len)
            };
            let g = equal(&a, &b).unwrap();
            let l = oracle.equal(&a, &b).unwrap();
            pairs += 1;
            disagreements += usize::from(g != l);
            if case % 2 == 0 && !(g && l) {
                rewrites_missed += 1;
            }
        }
        for i in 1..n - 1 {
            let lhs = BraidWord::from_tokens(n, &[i as i64, i as i64 + 1, i as i64]).unwrap();
            let rhs = BraidWord::from_tokens(n, &[i as i64 + 1, i as i64, i as i64 + 1]).unwrap();
            rewrites_missed += usize::from(!(equal(&lhs, &rhs).unwrap() && oracle.equal(&lhs, &rhs).unwrap()));
        }
        for i in 1..n {
            for j in i + 2..n {
                let lhs = BraidWord::from_tokens(n, &[i as i64, j as i64]).unwrap();
                let rhs = BraidWord::from_tokens(n, &[j as i64, i as i64]).unwrap();
                rewrites_missed += usize::from(!(equal(&lhs, &rhs).unwrap() && oracle.equal(&lhs, &rhs).unwrap()));
            }
        }
    }
    outcome(
        disagreements == 0 && rewrites_missed == 0,
        format!("{pairs} pairs, {disagreements} disagreements, {rewrites_missed} relation rewrites not recognized"),
    )
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let w = random_word(&mut rng, 7, 100_000);
    let start = Instant::now();
    let nf = normal_form(&w);
    let nf_time = start.elapsed();

    let p = RewriteParams::new(11, 2).unwrap();
    let start = Instant::now();
    let mut all_pass = true;
    let mut max_flat = 0u128;
    for i in 2..11 {
        let cert = build_certificate(p, i).unwrap();
        all_pass &= verify_certificate(&cert).pass;
        max_flat = max_flat.max(cert.conclusion.as_ref().unwrap().slp.flat_len());
    }
    let cert_time = start.elapsed();
    let limit = Duration::from_secs(60);
    outcome(
        nf_time < limit && cert_time < limit && all_pass,
        format!(
            "normal form of 100000 letters in B7: {:.3} s (canonical length {}); (11, 2) certificates: {:.3} s, verified {all_pass}, largest flat length {max_flat} never expanded (limit 60 s each)",
            nf_time.as_secs_f64(),
            nf.canonical_length(),
            cert_time.as_secs_f64()
        ),
    )
}

fn perturbation_localized(cert: &Certificate, rng: &mut ChaCha8Rng) -> bool {
    let idx = rng.gen_range(0..cert.claims.len());
    let mut bad = cert.clone();
    let claim = &mut bad.claims[idx];
    let on_lhs = claim.rhs.is_empty() || (!claim.lhs.is_empty() && rng.gen_bool(0.5));
    let side = if on_lhs { &mut claim.lhs } else { &mut claim.rhs };
    let mut letters = side.letters().to_vec();
    let pos = rng.gen_range(0..letters.len());
    letters[pos] = letters[pos].inverse();
    *side = BraidWord::new(side.n(), letters).unwrap();
    let report = verify_certificate(&bad);
    !report.pass && report.failing_claims() == vec![idx]
}

fn criterion_7() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_braidgen");
    let mut problems = Vec::new();
    for (n, k) in [(6, 5), (4, 3), (3, 2)] {
        let status = Command::new(bin)
            .args(["rewrite", "--n", &n.to_string(), "--k", &k.to_string(), "--target", "2"])
            .output()
            .expect("binary runs");
        if status.status.code() != Some(2) {
            problems.push(format!("rewrite ({n}, {k}) exited with {:?}", status.status.code()));
        }
    }
    let mut certs = vec![small_strand_certificate(), sigma0_certificate()];
    for (n, k) in [(5usize, 2i64), (5, 3), (7, 2), (7, 3), (8, 3)] {
        let p = RewriteParams::new(n, k).unwrap();
        for i in 2..n as i64 {
            certs.push(build_certificate(p, i).unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (n, k) in [(5usize, 2i64), (7, 3)] {
        let p = RewriteParams::new(n, k).unwrap();
        for _ in 0..5 {
            let w = random_zero_sum_word(&mut rng, n, 8);
            certs.push(build_rewrite_certificate(p, &w).unwrap());
        }
    }
    let mut perturbed = 0;
    for cert in &certs {
        if !verify_certificate(cert).pass {
            problems.push("a baseline certificate does not verify".into());
            continue;
        }
        for _ in 0..3 {
            perturbed += 1;
            if !perturbation_localized(cert, &mut rng) {
                problems.push(format!("perturbation not localized (n={}, k={})", cert.n, cert.k));
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!("3 invalid (n, k) rejected with exit 2; {perturbed} single-letter perturbations each fail exactly the altered claim; problems {problems:?}"),
    )
}

fn main() {
    let mut verdicts = Verdicts::new();
    let results = [
        ("certificate sweep", criterion_1(&mut verdicts)),
        ("flatten-and-expand cross-check", criterion_2(&verdicts)),
        ("B6/B4 identity suite", criterion_3()),
        ("conjugates suite", criterion_4()),
        ("oracle agreement", criterion_5()),
        ("performance gate", criterion_6()),
        ("negative controls", criterion_7()),
    ];
    let mut all = true;
    for (idx, (name, o)) in results.iter().enumerate() {
        all &= o.pass;
        println!(
            "{} criterion {}: {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            idx + 1,
            o.detail
        );
    }
    if !all {
        std::process::exit(1);
    }
}
