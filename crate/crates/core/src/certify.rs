//! Certificates: ordered lists of short braid identities whose truth, chained
//! through the two-generator recurrences, establishes a factorization without
//! expanding it.
//!
//! The verifier checks every claim with the normal form, checks that the
//! recurrence and telescope claims are the expected closed forms, and checks
//! that the program's rules and root are justified by claims.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{BraidError, Result};
use crate::garside::equal;
use crate::rewrite::conjugates::{parse_sigma1_blocks, sigma1_word};
use crate::rewrite::pipeline::{recognize_generator, sigma1_decomposition, slp_from_sigma1_word};
use crate::rewrite::{
    expand_conjugate, b6_generator, pair_product, psi_b4_to_b3, r_word, s_word,
    substitute_b6, telescope_length, two_generator_factor, b4_generators, B6Gen,
    ConjugateFactor, RewriteParams, SIGMA1_SIGMA0_INV,
};
use crate::slp::{Symbol, TwoGenSlp};
use crate::word::{sigma, BraidWord, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    SRecurrence,
    RRecurrence,
    Telescope,
    B6Identity,
    B4Relation,
    AppendixBase,
    Sigma0Elim,
    AdHoc,
}

impl Rule {
    pub const ALL: [Rule; 8] = [
        Rule::SRecurrence,
        Rule::RRecurrence,
        Rule::Telescope,
        Rule::B6Identity,
        Rule::B4Relation,
        Rule::AppendixBase,
        Rule::Sigma0Elim,
        Rule::AdHoc,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Rule::SRecurrence => "S_RECURRENCE",
            Rule::RRecurrence => "R_RECURRENCE",
            Rule::Telescope => "TELESCOPE",
            Rule::B6Identity => "B6_IDENTITY",
            Rule::B4Relation => "B4_RELATION",
            Rule::AppendixBase => "APPENDIX_BASE",
            Rule::Sigma0Elim => "SIGMA0_ELIM",
            Rule::AdHoc => "AD_HOC",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Rule::ALL
            .into_iter()
            .find(|r| r.tag() == s)
            .ok_or_else(|| format!("unknown rule tag {s:?}"))
    }
}

/// `lhs = rhs` in `B_n`, tagged with the rule it instantiates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityClaim {
    pub n: usize,
    pub rule: Rule,
    pub params: BTreeMap<String, i64>,
    pub lhs: BraidWord,
    pub rhs: BraidWord,
}

impl IdentityClaim {
    pub fn new(rule: Rule, params: &[(&str, i64)], lhs: BraidWord, rhs: BraidWord) -> Self {
        assert_eq!(lhs.n(), rhs.n(), "claim sides must share a strand count");
        IdentityClaim {
            n: lhs.n(),
            rule,
            params: params.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
            lhs,
            rhs,
        }
    }

    fn param(&self, key: &str) -> Option<i64> {
        self.params.get(key).copied()
    }
}

/// What a certificate proves: `target` equals the expansion of `slp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conclusion {
    pub target: BraidWord,
    pub slp: TwoGenSlp,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub n: usize,
    /// Zero when the certificate carries no two-generator conclusion.
    pub k: i64,
    pub claims: Vec<IdentityClaim>,
    pub conclusion: Option<Conclusion>,
}

fn cat(parts: &[&BraidWord]) -> BraidWord {
    let mut out = BraidWord::empty(parts[0].n());
    for p in parts {
        out = out.concat_raw(p).expect("same strand count");
    }
    out
}

fn s_recurrence_claim(p: RewriteParams, m: usize) -> IdentityClaim {
    let (r, s) = (r_word(p, m), s_word(p, m));
    IdentityClaim::new(
        Rule::SRecurrence,
        &[("k", p.k()), ("m", m as i64)],
        s_word(p, m + 1),
        cat(&[&r, &s, &r.inverse()]),
    )
}

fn r_recurrence_claim(p: RewriteParams, m: usize) -> IdentityClaim {
    let (r, s) = (r_word(p, m), s_word(p, m));
    IdentityClaim::new(
        Rule::RRecurrence,
        &[("k", p.k()), ("m", m as i64)],
        r_word(p, m + 1),
        cat(&[&r, &s.pow_raw(p.big_n())]),
    )
}

fn sigma1_target(n: usize, i: i64) -> BraidWord {
    BraidWord::from_tokens(n, &[1, -i]).expect("target index checked")
}

fn telescope_claim(p: RewriteParams, i: i64) -> Result<IdentityClaim> {
    let l = telescope_length(p, i)?;
    let mut rhs = BraidWord::empty(p.n());
    for m in 0..l {
        rhs = rhs.concat_raw(&s_word(p, m))?;
    }
    Ok(IdentityClaim::new(
        Rule::Telescope,
        &[("k", p.k()), ("i", i), ("l", l as i64)],
        sigma1_target(p.n(), i),
        rhs,
    ))
}

fn recurrence_claims(p: RewriteParams, depth: usize) -> Vec<IdentityClaim> {
    (0..depth)
        .flat_map(|m| [s_recurrence_claim(p, m), r_recurrence_claim(p, m)])
        .collect()
}

/// Certificate that `σ₁σᵢ⁻¹` equals the expansion of its two-generator program.
pub fn build_certificate(p: RewriteParams, i: i64) -> Result<Certificate> {
    let slp = two_generator_factor(p, i)?;
    let depth = telescope_length(p, i)? - 1;
    let mut claims = recurrence_claims(p, depth);
    claims.push(telescope_claim(p, i)?);
    Ok(Certificate {
        n: p.n(),
        k: p.k(),
        claims,
        conclusion: Some(Conclusion {
            target: sigma1_target(p.n(), i),
            slp,
        }),
    })
}

/// Certificate for the output of the full rewriting pipeline on `w`.
pub fn build_rewrite_certificate(p: RewriteParams, w: &BraidWord) -> Result<Certificate> {
    if w.n() != p.n() {
        return Err(BraidError::StrandCountMismatch {
            left: w.n(),
            right: p.n(),
        });
    }
    let total = w.exponent_sum();
    if total != 0 {
        return Err(BraidError::NonZeroExponentSum(total));
    }
    if let Some((sym, e)) = recognize_generator(p, w) {
        let (code, base) = match sym {
            Symbol::R(_) => (0, r_word(p, 0)),
            _ => (1, s_word(p, 0)),
        };
        let claim = IdentityClaim::new(
            Rule::AdHoc,
            &[("generator", code), ("exp", e)],
            w.clone(),
            base.pow_raw(e),
        );
        return Ok(Certificate {
            n: p.n(),
            k: p.k(),
            claims: vec![claim],
            conclusion: Some(Conclusion {
                target: w.clone(),
                slp: TwoGenSlp::with_depth(p, 0, vec![(sym, e)]),
            }),
        });
    }
    let letters = sigma1_decomposition(w)?;
    let slp = slp_from_sigma1_word(p, &letters)?;
    let mut claims = recurrence_claims(p, slp.depth());
    let used: BTreeSet<usize> = letters.iter().map(|l| l.index).collect();
    for &x in &used {
        claims.push(telescope_claim(p, x as i64)?);
    }
    claims.push(IdentityClaim::new(
        Rule::AdHoc,
        &[("decomposition", 1)],
        w.clone(),
        sigma1_word(p.n(), &letters),
    ));
    Ok(Certificate {
        n: p.n(),
        k: p.k(),
        claims,
        conclusion: Some(Conclusion {
            target: w.clone(),
            slp,
        }),
    })
}

fn tokens(n: usize, t: &[i64]) -> BraidWord {
    BraidWord::from_tokens(n, t).expect("fixed tokens are in range")
}

fn run(index: i64, e: i64) -> Vec<i64> {
    vec![index * e.signum(); e.unsigned_abs() as usize]
}

/// The `B₆` and `B₄` identities, plus `ψ(σ₁σ₃⁻¹) = 1` in `B₃`.
pub fn small_strand_claims() -> Vec<IdentityClaim> {
    use B6Gen::*;
    let conj = |x: B6Gen| substitute_b6(&[(R, 1), (x, 1), (R, -1)]);
    let mut rar_rhs = run(3, -9);
    rar_rhs.push(-4);
    rar_rhs.extend(run(3, 10));
    let g = b4_generators();
    let ucu = cat(&[&g.u, &g.c, &g.u.inverse()]);
    let psi = psi_b4_to_b3(&tokens(4, &[1, -3])).expect("B4 word");
    vec![
        IdentityClaim::new(Rule::B6Identity, &[("case", 1)], conj(B), tokens(6, &[3, -5])),
        IdentityClaim::new(
            Rule::B6Identity,
            &[("case", 2), ("i", 5)],
            tokens(6, &[1, -5]),
            substitute_b6(&[(B, 1), (R, 1), (B, 1), (R, -1)]),
        ),
        IdentityClaim::new(Rule::B6Identity, &[("case", 3)], conj(A), tokens(6, &rar_rhs)),
        IdentityClaim::new(
            Rule::B6Identity,
            &[("case", 4), ("i", 4)],
            tokens(6, &[1, -4]),
            substitute_b6(&[(B, -9), (R, 1), (A, 1), (R, -1), (B, 10)]),
        ),
        IdentityClaim::new(Rule::B4Relation, &[("case", 1)], g.w, ucu),
        IdentityClaim::new(Rule::B4Relation, &[("case", 2)], psi, BraidWord::empty(3)),
    ]
}

pub fn small_strand_certificate() -> Certificate {
    Certificate {
        n: 6,
        k: 0,
        claims: small_strand_claims(),
        conclusion: None,
    }
}

/// The `B₅` identities removing `σ₀ = α σ₄ α⁻¹`.
pub fn sigma0_claims() -> Vec<IdentityClaim> {
    let n = 5;
    let target = cat(&[&tokens(n, &[1]), &sigma(n, 0, Sign::Neg)]);
    let left = tokens(n, &[1, 1, 2, -1, -1, -1]);
    let middle = tokens(n, &[3, -4]);
    let right = tokens(n, &[1, 1, 1, -3, -2, -1]);
    let claim = |case: i64, lhs: BraidWord, rhs: BraidWord| {
        IdentityClaim::new(Rule::Sigma0Elim, &[("case", case)], lhs, rhs)
    };
    vec![
        claim(
            1,
            target.clone(),
            tokens(n, &[1, 1, 2, 3, -4, -3, -2, -1]),
        ),
        claim(2, target.clone(), cat(&[&left, &middle, &right])),
        claim(3, left, pair_product(n, &SIGMA1_SIGMA0_INV[..6])),
        claim(4, right, pair_product(n, &SIGMA1_SIGMA0_INV[7..])),
        claim(5, target, pair_product(n, &SIGMA1_SIGMA0_INV)),
    ]
}

pub fn sigma0_certificate() -> Certificate {
    Certificate {
        n: 5,
        k: 0,
        claims: sigma0_claims(),
        conclusion: None,
    }
}

/// `g (σ_aσ_b⁻¹)^{±1} g⁻¹ = ∏ σ_iσ_j⁻¹` as produced by the conjugate expansion.
pub fn conjugate_claim(factor: &ConjugateFactor) -> Result<IdentityClaim> {
    let n = factor.conjugator.n();
    let pairs = expand_conjugate(n, factor)?;
    Ok(IdentityClaim::new(
        Rule::AppendixBase,
        &[
            ("a", factor.core.0 as i64),
            ("b", factor.core.1 as i64),
            ("exp", factor.exponent.value()),
            ("conjugator_len", factor.conjugator.len() as i64),
        ],
        factor.to_word()?,
        pair_product(n, &pairs),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClaimReport {
    pub index: usize,
    pub rule: Rule,
    pub params: BTreeMap<String, i64>,
    /// Both sides have the same normal form.
    pub equal: bool,
    /// The claim matches the closed form its rule prescribes (always true for ground rules).
    pub canonical: bool,
    pub pass: bool,
    pub lhs_len: usize,
    pub rhs_len: usize,
    pub micros: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub pass: bool,
    pub claims: Vec<ClaimReport>,
    pub structure_errors: Vec<String>,
    pub micros: u128,
}

impl VerificationReport {
    pub fn failing_claims(&self) -> Vec<usize> {
        self.claims.iter().filter(|c| !c.pass).map(|c| c.index).collect()
    }
}

/// The closed form a recurrence or telescope claim must match.
fn expected_claim(claim: &IdentityClaim) -> std::result::Result<IdentityClaim, String> {
    let k = claim.param("k").ok_or("missing parameter k")?;
    let p = RewriteParams::new(claim.n, k).map_err(|e| e.to_string())?;
    let index = |key: &str| -> std::result::Result<i64, String> {
        claim.param(key).ok_or_else(|| format!("missing parameter {key}"))
    };
    match claim.rule {
        Rule::SRecurrence | Rule::RRecurrence => {
            let m = index("m")?;
            if !(0..=p.n() as i64).contains(&m) {
                return Err(format!("m = {m} out of range"));
            }
            Ok(if claim.rule == Rule::SRecurrence {
                s_recurrence_claim(p, m as usize)
            } else {
                r_recurrence_claim(p, m as usize)
            })
        }
        Rule::Telescope => {
            let expected = telescope_claim(p, index("i")?).map_err(|e| e.to_string())?;
            if expected.params.get("l") != claim.params.get("l") {
                return Err("parameter l is not the least telescope length".into());
            }
            Ok(expected)
        }
        _ => unreachable!("only called for closed-form rules"),
    }
}

fn check_claim(index: usize, claim: &IdentityClaim) -> ClaimReport {
    let start = Instant::now();
    let mut notes = Vec::new();
    let equal = match equal(&claim.lhs, &claim.rhs) {
        Ok(eq) => eq,
        Err(e) => {
            notes.push(e.to_string());
            false
        }
    };
    if !equal && notes.is_empty() {
        notes.push("sides differ".to_string());
    }
    let canonical = match claim.rule {
        Rule::SRecurrence | Rule::RRecurrence | Rule::Telescope => match expected_claim(claim) {
            Ok(exp) if exp.lhs == claim.lhs && exp.rhs == claim.rhs => true,
            Ok(_) => {
                notes.push("words do not match the closed form".to_string());
                false
            }
            Err(e) => {
                notes.push(e);
                false
            }
        },
        _ => true,
    };
    ClaimReport {
        index,
        rule: claim.rule,
        params: claim.params.clone(),
        equal,
        canonical,
        pass: equal && canonical,
        lhs_len: claim.lhs.len(),
        rhs_len: claim.rhs.len(),
        micros: start.elapsed().as_micros(),
        note: if notes.is_empty() {
            None
        } else {
            Some(notes.join("; "))
        },
    }
}

fn has_claim(cert: &Certificate, rule: Rule, key: &str, value: i64) -> bool {
    cert.claims
        .iter()
        .any(|c| c.rule == rule && c.n == cert.n && c.param("k") == Some(cert.k) && c.param(key) == Some(value))
}

/// Bookkeeping that ties the claims to the conclusion.
fn check_structure(cert: &Certificate) -> Vec<String> {
    let mut errors = Vec::new();
    for (idx, c) in cert.claims.iter().enumerate() {
        if matches!(c.rule, Rule::SRecurrence | Rule::RRecurrence | Rule::Telescope)
            && (c.n != cert.n || c.param("k") != Some(cert.k))
        {
            errors.push(format!("claim {idx}: (n, k) differs from the certificate"));
        }
    }
    let Some(conclusion) = &cert.conclusion else {
        return errors;
    };
    let p = match RewriteParams::new(cert.n, cert.k) {
        Ok(p) => p,
        Err(e) => {
            errors.push(e.to_string());
            return errors;
        }
    };
    let slp = &conclusion.slp;
    if slp.params != p {
        errors.push("program parameters differ from the certificate".into());
    }
    if let Err(e) = slp.validate() {
        errors.push(e.to_string());
    }
    if !slp.is_recurrence() {
        errors.push("program rules are not the R/S recurrences".into());
    }
    for m in 0..slp.depth() as i64 {
        for rule in [Rule::SRecurrence, Rule::RRecurrence] {
            if !has_claim(cert, rule, "m", m) {
                errors.push(format!("no {rule} claim for m = {m}"));
            }
        }
    }
    if conclusion.target.n() != cert.n {
        errors.push("target strand count differs from the certificate".into());
        return errors;
    }
    if !root_justified(cert, p, conclusion) {
        errors.push("program root is not justified by any claim".into());
    }
    errors
}

fn root_justified(cert: &Certificate, p: RewriteParams, conclusion: &Conclusion) -> bool {
    let target = &conclusion.target;
    let root = &conclusion.slp.root;
    cert.claims.iter().filter(|c| c.n == cert.n && c.lhs == *target).any(|c| {
        match c.rule {
            Rule::Telescope => match (c.param("i"), c.param("l")) {
                (Some(_), Some(l)) => {
                    *root == (0..l.max(0) as usize).map(|m| (Symbol::S(m), 1)).collect::<Vec<_>>()
                }
                _ => false,
            },
            Rule::AdHoc if c.param("decomposition") == Some(1) => {
                let Some(letters) = parse_sigma1_blocks(&c.rhs) else {
                    return false;
                };
                let Ok(expected) = slp_from_sigma1_word(p, &letters) else {
                    return false;
                };
                expected.root == *root
                    && letters
                        .iter()
                        .all(|l| has_claim(cert, Rule::Telescope, "i", l.index as i64))
            }
            Rule::AdHoc => match (c.param("generator"), c.param("exp")) {
                (Some(code @ (0 | 1)), Some(e @ (-1 | 1))) => {
                    let (sym, base) = if code == 0 {
                        (Symbol::R(0), r_word(p, 0))
                    } else {
                        (Symbol::S(0), s_word(p, 0))
                    };
                    *root == vec![(sym, e)] && c.rhs == base.pow_raw(e)
                }
                _ => false,
            },
            _ => false,
        }
    })
}

/// Checks every claim (in parallel, reported in order) and the bookkeeping.
pub fn verify_certificate(cert: &Certificate) -> VerificationReport {
    let start = Instant::now();
    let claims: Vec<ClaimReport> = cert
        .claims
        .par_iter()
        .enumerate()
        .map(|(i, c)| check_claim(i, c))
        .collect();
    let structure_errors = check_structure(cert);
    let pass = claims.iter().all(|c| c.pass) && structure_errors.is_empty();
    VerificationReport {
        pass,
        claims,
        structure_errors,
        micros: start.elapsed().as_micros(),
    }
}

#[derive(Serialize, Deserialize)]
struct ClaimJson {
    rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default)]
    params: BTreeMap<String, i64>,
    lhs: String,
    rhs: String,
}

#[derive(Serialize, Deserialize)]
struct CertificateJson {
    n: usize,
    k: i64,
    claims: Vec<ClaimJson>,
    #[serde(default)]
    slp: Vec<String>,
    #[serde(default)]
    target: String,
}

pub fn emit_json(cert: &Certificate) -> String {
    let json = CertificateJson {
        n: cert.n,
        k: cert.k,
        claims: cert
            .claims
            .iter()
            .map(|c| ClaimJson {
                rule: c.rule.tag().to_string(),
                n: (c.n != cert.n).then_some(c.n),
                params: c.params.clone(),
                lhs: c.lhs.to_string(),
                rhs: c.rhs.to_string(),
            })
            .collect(),
        slp: cert
            .conclusion
            .as_ref()
            .map(|c| c.slp.lines())
            .unwrap_or_default(),
        target: cert
            .conclusion
            .as_ref()
            .map(|c| c.target.to_string())
            .unwrap_or_default(),
    };
    serde_json::to_string_pretty(&json).expect("plain data serializes")
}

fn located(field: String) -> impl Fn(BraidError) -> BraidError {
    move |e| match e {
        BraidError::Parse { location, message } => {
            BraidError::parse(format!("{field}: {location}"), message)
        }
        other => BraidError::parse(field.clone(), other.to_string()),
    }
}

pub fn parse_json(text: &str) -> Result<Certificate> {
    let json: CertificateJson = serde_json::from_str(text).map_err(|e| {
        BraidError::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    let mut claims = Vec::with_capacity(json.claims.len());
    for (idx, c) in json.claims.into_iter().enumerate() {
        let at = |field: &str| format!("claims[{idx}].{field}");
        let rule: Rule = c.rule.parse().map_err(|m: String| BraidError::parse(at("rule"), m))?;
        let n = c.n.unwrap_or(json.n);
        let lhs = BraidWord::parse(n, &c.lhs).map_err(located(at("lhs")))?;
        let rhs = BraidWord::parse(n, &c.rhs).map_err(located(at("rhs")))?;
        claims.push(IdentityClaim {
            n,
            rule,
            params: c.params,
            lhs,
            rhs,
        });
    }
    let conclusion = if json.slp.is_empty() {
        if !json.target.trim().is_empty() {
            return Err(BraidError::parse("target", "target given without slp"));
        }
        None
    } else {
        let p = RewriteParams::new(json.n, json.k).map_err(located("k".into()))?;
        let slp = TwoGenSlp::parse(p, &json.slp.join("\n")).map_err(located("slp".into()))?;
        let target = BraidWord::parse(json.n, &json.target).map_err(located("target".into()))?;
        Some(Conclusion { target, slp })
    };
    Ok(Certificate {
        n: json.n,
        k: json.k,
        claims,
        conclusion,
    })
}

/// The generators `a`, `b`, `r` of `B₆′`, exposed for hand-written certificates.
pub fn b6_words() -> [(char, BraidWord); 3] {
    [
        ('a', b6_generator(B6Gen::A)),
        ('b', b6_generator(B6Gen::B)),
        ('r', b6_generator(B6Gen::R)),
    ]
}
