//! Braid words over the Artin generators and the elementary operations on them.
//!
//! Letters are stored flat as `(index, sign)` pairs. The index-zero generator
//! `σ₀ = α σ_{n-1} α⁻¹` is never stored as a letter; [`sigma`] expands it into
//! honest Artin letters, so every word here is a genuine word in `B_n`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{BraidError, Result};
use crate::perm::Permutation;

/// Largest supported strand count. Canonical factors store positions in a byte.
pub const MAX_STRANDS: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn of(v: i64) -> Sign {
        if v < 0 {
            Sign::Neg
        } else {
            Sign::Pos
        }
    }
}

/// A single Artin generator `σ_index` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(index: usize) -> Self {
        Letter {
            index,
            sign: Sign::Pos,
        }
    }

    pub fn neg(index: usize) -> Self {
        Letter {
            index,
            sign: Sign::Neg,
        }
    }

    pub fn inverse(self) -> Self {
        Letter {
            index: self.index,
            sign: self.sign.flip(),
        }
    }

    /// Signed integer token: `i` for `σᵢ`, `-i` for `σᵢ⁻¹`.
    pub fn token(self) -> i64 {
        self.index as i64 * self.sign.value()
    }
}

/// A word in `σ₁, ..., σ_{n-1}` and their inverses, tied to a strand count.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<Letter>,
}

fn check_strands(n: usize) -> Result<()> {
    if n < 2 {
        return Err(BraidError::BadStrandCount {
            n,
            reason: "need at least 2 strands",
        });
    }
    if n > MAX_STRANDS {
        return Err(BraidError::BadStrandCount {
            n,
            reason: "more than 256 strands",
        });
    }
    Ok(())
}

fn check_index(n: usize, index: i64) -> Result<()> {
    if index < 1 || index as usize > n - 1 {
        return Err(BraidError::IndexOutOfRange {
            index,
            n,
            max: n - 1,
        });
    }
    Ok(())
}

impl BraidWord {
    pub fn empty(n: usize) -> Self {
        BraidWord {
            n,
            letters: Vec::new(),
        }
    }

    /// Builds a word from letters, validating every index. No reduction.
    pub fn new(n: usize, letters: Vec<Letter>) -> Result<Self> {
        check_strands(n)?;
        for l in &letters {
            check_index(n, l.index as i64)?;
        }
        Ok(BraidWord { n, letters })
    }

    /// Builds a word from signed tokens (`3` is `σ₃`, `-3` is `σ₃⁻¹`).
    pub fn from_tokens(n: usize, tokens: &[i64]) -> Result<Self> {
        check_strands(n)?;
        let mut letters = Vec::with_capacity(tokens.len());
        for &t in tokens {
            check_index(n, t.abs())?;
            letters.push(Letter {
                index: t.unsigned_abs() as usize,
                sign: Sign::of(t),
            });
        }
        Ok(BraidWord { n, letters })
    }

    /// Caller guarantees the letters are in range.
    pub(crate) fn from_letters_unchecked(n: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.index >= 1 && l.index < n));
        BraidWord { n, letters }
    }

    /// The positive half twist `Δ`.
    pub fn delta(n: usize) -> Self {
        let mut letters = Vec::with_capacity(n * (n - 1) / 2);
        for top in (1..n).rev() {
            letters.extend((1..=top).map(Letter::pos));
        }
        BraidWord { n, letters }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn tokens(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.token()).collect()
    }

    /// Cancels adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord {
            n: self.n,
            letters: out,
        }
    }

    fn same_strands(&self, other: &BraidWord) -> Result<()> {
        if self.n != other.n {
            return Err(BraidError::StrandCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Literal concatenation, no reduction. Certificates rely on this.
    pub fn concat_raw(&self, other: &BraidWord) -> Result<BraidWord> {
        self.same_strands(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { n: self.n, letters })
    }

    /// Product `self · other`, free-reduced.
    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord> {
        Ok(self.concat_raw(other)?.free_reduce())
    }

    /// Formal inverse: reversed order, flipped signs.
    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self^e` as a literal repetition (of the inverse when `e < 0`).
    pub fn pow_raw(&self, e: i64) -> BraidWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let reps = e.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.len() * reps);
        for _ in 0..reps {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { n: self.n, letters }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.value()).sum()
    }

    /// Image in the symmetric group, `σᵢ ↦ (i i+1)`.
    pub fn permutation_image(&self) -> Permutation {
        // arrangement[p] = strand sitting at position p
        let mut arrangement: Vec<usize> = (0..self.n).collect();
        for l in &self.letters {
            arrangement.swap(l.index - 1, l.index);
        }
        Permutation::from_images(arrangement).expect("swaps preserve bijectivity")
    }

    /// Parses the whitespace-separated token format, e.g. `"1^2 2 1^-3"`.
    pub fn parse(n: usize, text: &str) -> Result<BraidWord> {
        check_strands(n)?;
        let mut letters = Vec::new();
        for (pos, tok) in text.split_whitespace().enumerate() {
            let location = format!("token {} ({tok:?})", pos + 1);
            let (base, power) = match tok.split_once('^') {
                Some((b, p)) => {
                    let p: i64 = p
                        .parse()
                        .map_err(|_| BraidError::parse(&location, "bad exponent"))?;
                    (b, p)
                }
                None => (tok, 1),
            };
            let negative = base.starts_with('-');
            let index: i64 = base
                .trim_start_matches(['-', '+'])
                .parse()
                .map_err(|_| BraidError::parse(&location, "bad generator index"))?;
            let exp = if negative { -power } else { power };
            if index == 0 {
                if n < 3 {
                    return Err(BraidError::parse(&location, "σ₀ needs at least 3 strands"));
                }
                letters.extend(sigma_pow(n, 0, exp).letters);
            } else {
                check_index(n, index)?;
                let letter = Letter {
                    index: index as usize,
                    sign: Sign::of(exp),
                };
                letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
            }
        }
        Ok(BraidWord { n, letters })
    }
}

impl fmt::Display for BraidWord {
    /// Run-length encoded token text; parses back to the identical letter sequence.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            match (run, l.sign) {
                (1, Sign::Pos) => write!(f, "{}", l.index)?,
                (1, Sign::Neg) => write!(f, "-{}", l.index)?,
                (r, Sign::Pos) => write!(f, "{}^{}", l.index, r)?,
                (r, Sign::Neg) => write!(f, "{}^-{}", l.index, r)?,
            }
            i += run;
        }
        Ok(())
    }
}

/// Wrapper so `"n:word"` strings can go through `FromStr` (used by tests and tools).
impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(s: &str) -> Result<Self> {
        let (n, w) = s
            .split_once(':')
            .ok_or_else(|| BraidError::parse("input", "expected \"n:word\""))?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| BraidError::parse("input", "bad strand count"))?;
        BraidWord::parse(n, w)
    }
}

/// `g · w · g⁻¹`, free-reduced.
pub fn conjugate(g: &BraidWord, w: &BraidWord) -> Result<BraidWord> {
    g.concat_raw(w)?.concat(&g.inverse())
}

/// `α^k` for `α = σ₁ ⋯ σ_{n-1}`; the formal inverse for negative `k`.
pub fn alpha_power(n: usize, k: i64) -> Result<BraidWord> {
    check_strands(n)?;
    if n < 3 {
        return Err(BraidError::BadStrandCount {
            n,
            reason: "α-powers need at least 3 strands",
        });
    }
    let alpha = BraidWord {
        n,
        letters: (1..n).map(Letter::pos).collect(),
    };
    Ok(alpha.pow_raw(k))
}

/// Reduces `i` into `0..n`.
pub fn residue(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

/// `σ_i^{sign}` with `i` read modulo `n`; index zero expands to `α σ_{n-1}^{±1} α⁻¹`.
///
/// Panics if `n < 3`.
pub fn sigma(n: usize, i: i64, sign: Sign) -> BraidWord {
    sigma_pow(n, i, sign.value())
}

/// `σ_i^e` with `i` read modulo `n`, free-reduced. Index zero becomes
/// `α σ_{n-1}^e α⁻¹`, so the expansion length is `2(n-2) + |e|`.
pub fn sigma_pow(n: usize, i: i64, e: i64) -> BraidWord {
    assert!((3..=MAX_STRANDS).contains(&n), "sigma needs 3..=256 strands");
    let r = residue(i, n);
    let letter_index = if r == 0 { n - 1 } else { r };
    let core = BraidWord {
        n,
        letters: vec![Letter::pos(letter_index)],
    }
    .pow_raw(e);
    if r == 0 {
        let alpha = alpha_power(n, 1).expect("n >= 3");
        conjugate(&alpha, &core).expect("same strand count")
    } else {
        core
    }
}

/// Rewrites every letter `σᵢ^ε` as `σ_{i+m}^ε` (indices mod n, σ₀ expanded).
/// Represents the same element as `α^m w α^{-m}`.
pub fn shift_conjugate(w: &BraidWord, m: i64) -> BraidWord {
    if m.rem_euclid(w.n as i64) == 0 {
        return w.clone();
    }
    let mut letters = Vec::with_capacity(w.len());
    for l in &w.letters {
        letters.extend(sigma(w.n, l.index as i64 + m, l.sign).letters);
    }
    BraidWord { n: w.n, letters }
}
