//! Rewriting an arbitrary element of `B_n′` over `{r, s}`.
//!
//! Telescope into `σ₁`-conjugates, expand each conjugate into pairs, pass to
//! the `σ₁σₓ⁻¹` alphabet, and replace each letter by its two-generator program.

use crate::error::{BraidError, Result};
use crate::slp::{invert_powers, push_power, Symbol, SymbolPower, TwoGenSlp};
use crate::word::{BraidWord, Letter, Sign};

use super::conjugates::{
    expand_conjugate, eliminate_sigma0, pairs_to_sigma1_alphabet, ConjugateFactor,
    Sigma1Letter,
};
use super::{r_word, s_word, telescope_length, RewriteParams};

fn sigma1_power(n: usize, e: i64) -> BraidWord {
    let letter = if e >= 0 { Letter::pos(1) } else { Letter::neg(1) };
    BraidWord::new(n, vec![letter; e.unsigned_abs() as usize]).expect("σ₁ is in range")
}

/// Writes `w` as an ordered product of `σ₁`-conjugates of `(σ_aσ₁⁻¹)^{±1}`.
///
/// With `E` the running exponent sum, `σ_a` contributes
/// `σ₁^E (σ_aσ₁⁻¹) σ₁^{-E}` and `σ_a⁻¹` contributes
/// `σ₁^{E-1} (σ_aσ₁⁻¹)⁻¹ σ₁^{-(E-1)}`; letters `σ₁^{±1}` contribute nothing.
pub fn telescope_decompose(w: &BraidWord) -> Result<Vec<ConjugateFactor>> {
    let total = w.exponent_sum();
    if total != 0 {
        return Err(BraidError::NonZeroExponentSum(total));
    }
    let n = w.n();
    let mut e = 0i64;
    let mut out = Vec::new();
    for l in w.letters() {
        let before = e;
        e += l.sign.value();
        if l.index == 1 {
            continue;
        }
        let shift = match l.sign {
            Sign::Pos => before,
            Sign::Neg => before - 1,
        };
        out.push(ConjugateFactor {
            conjugator: sigma1_power(n, shift),
            core: (l.index, 1),
            exponent: l.sign,
        });
    }
    Ok(out)
}

fn free_reduce_letters(letters: Vec<Sigma1Letter>) -> Vec<Sigma1Letter> {
    let mut out: Vec<Sigma1Letter> = Vec::with_capacity(letters.len());
    for l in letters {
        match out.last() {
            Some(&p) if p.index == l.index && p.sign != l.sign => {
                out.pop();
            }
            _ => out.push(l),
        }
    }
    out
}

/// `w` as a freely reduced word over `σ₁σₓ⁻¹`, `2 ≤ x ≤ n-1`.
pub fn sigma1_decomposition(w: &BraidWord) -> Result<Vec<Sigma1Letter>> {
    let n = w.n();
    if n < 5 {
        return Err(BraidError::BadStrandCount {
            n,
            reason: "conjugate expansion needs at least 5 strands",
        });
    }
    let mut letters = Vec::new();
    for factor in telescope_decompose(w)? {
        let mut pairs = expand_conjugate(n, &factor)?;
        if n == 5 {
            pairs = eliminate_sigma0(&pairs);
        }
        letters.extend(pairs_to_sigma1_alphabet(&pairs));
    }
    Ok(free_reduce_letters(letters))
}

/// Program for a `σ₁σₓ⁻¹`-alphabet word: each letter becomes `S₀⋯S_{ℓ-1}` or its inverse.
pub fn slp_from_sigma1_word(p: RewriteParams, letters: &[Sigma1Letter]) -> Result<TwoGenSlp> {
    let mut root: Vec<SymbolPower> = Vec::new();
    let mut depth = 0;
    for l in letters {
        let len = telescope_length(p, l.index as i64)?;
        depth = depth.max(len - 1);
        let piece: Vec<SymbolPower> = (0..len).map(|m| (Symbol::S(m), 1)).collect();
        let piece = match l.sign {
            Sign::Pos => piece,
            Sign::Neg => invert_powers(&piece),
        };
        for item in piece {
            push_power(&mut root, item);
        }
    }
    Ok(TwoGenSlp::with_depth(p, depth, root))
}

/// `Some((R0 | S0, ±1))` if `w` freely reduces to `r₀^{±1}` or `s₀^{±1}`.
pub fn recognize_generator(p: RewriteParams, w: &BraidWord) -> Option<SymbolPower> {
    let reduced = w.free_reduce();
    let r = r_word(p, 0);
    let s = s_word(p, 0);
    [
        (Symbol::R(0), 1, r.clone()),
        (Symbol::R(0), -1, r.inverse()),
        (Symbol::S(0), 1, s.clone()),
        (Symbol::S(0), -1, s.inverse()),
    ]
    .into_iter()
    .find(|(_, _, g)| *g == reduced)
    .map(|(sym, e, _)| (sym, e))
}

/// Program over `{R, S}` whose expansion equals `w`.
pub fn rewrite_full(p: RewriteParams, w: &BraidWord) -> Result<TwoGenSlp> {
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
    if let Some(g) = recognize_generator(p, w) {
        return Ok(TwoGenSlp::with_depth(p, 0, vec![g]));
    }
    let letters = sigma1_decomposition(w)?;
    slp_from_sigma1_word(p, &letters)
}
