//! The identity battery behind `braidgen suite`.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::certify::{
    conjugate_claim, build_certificate, build_rewrite_certificate, sigma0_certificate,
    small_strand_certificate, verify_certificate, Certificate,
};
use crate::garside::equal;
use crate::lk::LkOracle;
use crate::random::{random_word, random_zero_sum_word, scramble};
use crate::rewrite::{
    admissible_ks, rewrite_full, two_generator_factor, ConjugateFactor, RewriteParams,
};
use crate::word::{BraidWord, Sign};

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub lk_bound: usize,
    pub max_flat_len: u128,
    /// Randomized cases per randomized task.
    pub cases: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            lk_bound: crate::lk::DEFAULT_LK_BOUND,
            max_flat_len: 1_000_000,
            cases: 100,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    /// Certificate for `σ₁σᵢ⁻¹`, cross-checked by expansion when short enough.
    Factor { n: usize, k: i64, i: i64 },
    /// The `B₆`, `B₄` and `ψ` identities.
    SmallStrands,
    /// The `σ₀`-elimination identities in `B₅`.
    Sigma0,
    /// Random conjugates `g (σ_aσ_b⁻¹)^{±1} g⁻¹`, `|g| ≤ 6`.
    Conjugates { n: usize },
    /// Random zero-sum words through the full rewriting pipeline.
    Pipeline { n: usize, k: i64 },
    /// Normal form against the Lawrence-Krammer oracle.
    Oracle { n: usize },
}

impl Task {
    pub fn name(&self) -> String {
        match *self {
            Task::Factor { n, k, i } => format!("two-generator factor n={n} k={k} i={i}"),
            Task::SmallStrands => "B6/B4 generator identities".into(),
            Task::Sigma0 => "sigma0 elimination identities".into(),
            Task::Conjugates { n } => format!("random conjugate expansions n={n}"),
            Task::Pipeline { n, k } => format!("random rewrite pipeline n={n} k={k}"),
            Task::Oracle { n } => format!("normal form vs LK oracle n={n}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub micros: u128,
}

/// The battery for one strand count.
pub fn tasks_for(n: usize) -> Vec<Task> {
    let mut tasks = Vec::new();
    if n == 4 || n == 6 {
        tasks.push(Task::SmallStrands);
    }
    if n == 5 {
        tasks.push(Task::Sigma0);
    }
    for k in admissible_ks(n) {
        for i in 2..n as i64 {
            tasks.push(Task::Factor { n, k, i });
        }
    }
    if n >= 5 {
        tasks.push(Task::Conjugates { n });
    }
    for k in admissible_ks(n) {
        tasks.push(Task::Pipeline { n, k });
    }
    if n >= 3 {
        tasks.push(Task::Oracle { n });
    }
    tasks
}

fn certificate_detail(cert: &Certificate) -> (bool, String) {
    let report = verify_certificate(cert);
    let failing = report.failing_claims();
    let detail = if report.pass {
        format!("{} claims verified", report.claims.len())
    } else {
        format!(
            "failing claims {:?}; structure errors {:?}",
            failing, report.structure_errors
        )
    };
    (report.pass, detail)
}

fn task_rng(cfg: &SuiteConfig, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ index as u64)
}

pub fn run_task(task: Task, index: usize, cfg: &SuiteConfig) -> CheckResult {
    let start = Instant::now();
    let (pass, detail) = match task {
        Task::Factor { n, k, i } => factor_check(n, k, i, cfg),
        Task::SmallStrands => certificate_detail(&small_strand_certificate()),
        Task::Sigma0 => certificate_detail(&sigma0_certificate()),
        Task::Conjugates { n } => conjugate_check(n, &mut task_rng(cfg, index), cfg.cases),
        Task::Pipeline { n, k } => pipeline_check(n, k, &mut task_rng(cfg, index), cfg),
        Task::Oracle { n } => oracle_check(n, &mut task_rng(cfg, index), cfg),
    };
    CheckResult {
        name: task.name(),
        pass,
        detail,
        micros: start.elapsed().as_micros(),
    }
}

/// Runs tasks in parallel; results come back in task order.
pub fn run_suite(tasks: &[Task], cfg: &SuiteConfig) -> Vec<CheckResult> {
    tasks
        .par_iter()
        .enumerate()
        .map(|(idx, &t)| run_task(t, idx, cfg))
        .collect()
}

fn factor_check(n: usize, k: i64, i: i64, cfg: &SuiteConfig) -> (bool, String) {
    let p = match RewriteParams::new(n, k) {
        Ok(p) => p,
        Err(e) => return (false, e.to_string()),
    };
    let cert = match build_certificate(p, i) {
        Ok(c) => c,
        Err(e) => return (false, e.to_string()),
    };
    let (cert_pass, mut detail) = certificate_detail(&cert);
    let slp = two_generator_factor(p, i).expect("certificate built");
    if slp.flat_len() <= cfg.max_flat_len {
        let target = BraidWord::from_tokens(n, &[1, -i]).expect("target in range");
        let direct = slp
            .artin_expansion(cfg.max_flat_len)
            .and_then(|w| equal(&w, &target))
            .unwrap_or(false);
        detail.push_str(&format!("; expansion of {} letters agrees: {}", slp.flat_len(), direct));
        (cert_pass && direct, detail)
    } else {
        detail.push_str(&format!("; flat length {} not expanded", slp.flat_len()));
        (cert_pass, detail)
    }
}

pub fn random_conjugate_factor<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ConjugateFactor {
    let len = rng.gen_range(0..=6);
    let a = rng.gen_range(1..n);
    let b = (a + rng.gen_range(1..n - 1) - 1) % (n - 1) + 1;
    ConjugateFactor {
        conjugator: random_word(rng, n, len),
        core: (a, b),
        exponent: if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg },
    }
}

fn conjugate_check<R: Rng + ?Sized>(n: usize, rng: &mut R, cases: usize) -> (bool, String) {
    let mut failures = 0;
    for _ in 0..cases {
        let f = random_conjugate_factor(rng, n);
        let ok = conjugate_claim(&f)
            .and_then(|c| equal(&c.lhs, &c.rhs))
            .unwrap_or(false);
        if !ok {
            failures += 1;
        }
    }
    (failures == 0, format!("{cases} cases, {failures} failures"))
}

/// One pipeline case: expansion check when short enough, certificate always.
pub fn pipeline_case(p: RewriteParams, w: &BraidWord, max_flat_len: u128) -> (bool, bool) {
    let Ok(slp) = rewrite_full(p, w) else {
        return (false, false);
    };
    let expanded = slp.flat_len() <= max_flat_len;
    let direct = !expanded
        || slp
            .artin_expansion(max_flat_len)
            .and_then(|x| equal(&x, w))
            .unwrap_or(false);
    let certified = build_rewrite_certificate(p, w)
        .map(|c| {
            c.conclusion.as_ref().is_some_and(|c| c.slp == slp) && verify_certificate(&c).pass
        })
        .unwrap_or(false);
    (direct && certified, expanded)
}

fn pipeline_check<R: Rng + ?Sized>(
    n: usize,
    k: i64,
    rng: &mut R,
    cfg: &SuiteConfig,
) -> (bool, String) {
    let p = match RewriteParams::new(n, k) {
        Ok(p) => p,
        Err(e) => return (false, e.to_string()),
    };
    let (mut failures, mut expanded) = (0, 0);
    for _ in 0..cfg.cases {
        let len = 2 * rng.gen_range(0..=5);
        let w = random_zero_sum_word(rng, n, len);
        let (ok, ex) = pipeline_case(p, &w, cfg.max_flat_len);
        failures += usize::from(!ok);
        expanded += usize::from(ex);
    }
    (
        failures == 0,
        format!(
            "{} cases ({} expanded, all certified), {} failures",
            cfg.cases, expanded, failures
        ),
    )
}

fn oracle_check<R: Rng + ?Sized>(n: usize, rng: &mut R, cfg: &SuiteConfig) -> (bool, String) {
    let oracle = LkOracle::new(cfg.lk_bound);
    let (mut disagreements, mut equal_pairs, mut errors) = (0, 0, 0);
    let max_len = cfg.lk_bound.min(40);
    for case in 0..cfg.cases {
        let len = rng.gen_range(0..=max_len);
        let a = random_word(rng, n, len);
        let b = if case % 2 == 0 {
            let s = scramble(rng, &a, 4);
            if s.free_reduce().len() > cfg.lk_bound {
                a.clone()
            } else {
                s
            }
        } else {
            let len = rng.gen_range(0..=max_len);
            random_word(rng, n, len)
        };
        match (equal(&a, &b), oracle.equal(&a, &b)) {
            (Ok(x), Ok(y)) => {
                disagreements += usize::from(x != y);
                equal_pairs += usize::from(x);
            }
            _ => errors += 1,
        }
    }
    (
        disagreements == 0 && errors == 0,
        format!(
            "{} pairs ({} equal), {} disagreements, {} errors",
            cfg.cases, equal_pairs, disagreements, errors
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_batteries_pass() {
        let cfg = SuiteConfig {
            cases: 10,
            ..SuiteConfig::default()
        };
        for n in 3..=7 {
            let tasks = tasks_for(n);
            let results = run_suite(&tasks, &cfg);
            assert_eq!(results.len(), tasks.len());
            for r in &results {
                assert!(r.pass, "{}: {}", r.name, r.detail);
            }
        }
    }

    #[test]
    fn deterministic_results() {
        let cfg = SuiteConfig {
            cases: 5,
            seed: 42,
            ..SuiteConfig::default()
        };
        let tasks = tasks_for(5);
        let a: Vec<String> = run_suite(&tasks, &cfg).into_iter().map(|r| r.detail).collect();
        let b: Vec<String> = run_suite(&tasks, &cfg).into_iter().map(|r| r.detail).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn battery_contents() {
        assert_eq!(tasks_for(6)[0], Task::SmallStrands);
        assert_eq!(tasks_for(5)[0], Task::Sigma0);
        let t7 = tasks_for(7);
        let count = t7.iter().filter(|t| matches!(t, Task::Factor { .. })).count();
        assert_eq!(count, 4 * 5);
    }
}
