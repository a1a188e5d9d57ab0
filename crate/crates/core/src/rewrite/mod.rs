//! Factorizations over small generating sets of the commutator subgroup.
//!
//! For admissible `(n, k)` the two words `r = α^k σ₁^{-N}` and `s = σ₁σ_{1+k}⁻¹`
//! (with `N = k(n-1)`) generate `B_n′`. The conjugates
//! `r_m = α^k σ_{1+mk}^{-N}` and `s_m = σ_{1+mk} σ_{1+(m+1)k}⁻¹` satisfy
//! `s_{m+1} = r_m s_m r_m⁻¹` and `r_{m+1} = r_m s_m^N`, and the `s_m` telescope
//! to `σ₁σᵢ⁻¹`.

pub mod conjugates;
pub mod pipeline;
pub mod generators;

use crate::error::{BraidError, Result};
use crate::slp::{Symbol, TwoGenSlp};
use crate::word::{alpha_power, residue, sigma, sigma_pow, BraidWord, Sign, MAX_STRANDS};

pub use conjugates::{
    expand_conjugate, choose_commuting_index, eliminate_sigma0, pair_product,
    pairs_to_sigma1_alphabet, sigma1_word, ConjugateFactor, Pair, Sigma1Letter,
    SIGMA1_SIGMA0_INV,
};
pub use pipeline::{rewrite_full, sigma1_decomposition, slp_from_sigma1_word, telescope_decompose};
pub use generators::{
    b6_generator, format_b6_word, psi_b4_to_b3, substitute_b6, b4_generators,
    b6_factor, B4Generators, B6Gen,
};

const EXCLUDED: &str =
    "n in {3, 4, 6} is excluded: any integer coprime to n is congruent to either 1 or -1 mod n";

/// Validated `(n, k)` with `N = k(n-1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RewriteParams {
    n: usize,
    k: i64,
}

impl RewriteParams {
    pub fn new(n: usize, k: i64) -> Result<Self> {
        let bad = |reason: &str| BraidError::BadParams {
            n,
            k,
            reason: reason.to_string(),
        };
        if n > MAX_STRANDS {
            return Err(bad("more than 256 strands"));
        }
        if matches!(n, 3 | 4 | 6) {
            return Err(bad(EXCLUDED));
        }
        if n < 5 {
            return Err(bad("need n = 5 or n >= 7"));
        }
        if k < 2 || k > n as i64 - 2 {
            return Err(bad("need 2 <= k <= n-2"));
        }
        if gcd(k as u64, n as u64) != 1 {
            return Err(bad("need gcd(k, n) = 1"));
        }
        Ok(RewriteParams { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    /// `N = k(n-1)`.
    pub fn big_n(&self) -> i64 {
        self.k * (self.n as i64 - 1)
    }

    /// Index `1 + mk`, as a residue mod `n`.
    pub fn index(&self, m: usize) -> i64 {
        residue(1 + m as i64 * self.k, self.n) as i64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// All admissible `k` for a given `n` (empty if `n` is excluded).
pub fn admissible_ks(n: usize) -> Vec<i64> {
    (2..n as i64 - 1)
        .filter(|&k| RewriteParams::new(n, k).is_ok())
        .collect()
}

/// `r_m = α^k σ_{1+mk}^{-N}`, free-reduced.
pub fn r_word(p: RewriteParams, m: usize) -> BraidWord {
    let alpha = alpha_power(p.n, p.k).expect("valid params have n >= 5");
    let tail = sigma_pow(p.n, p.index(m), -p.big_n());
    alpha.concat(&tail).expect("same strand count")
}

/// `s_m = σ_{1+mk} σ_{1+(m+1)k}⁻¹`, free-reduced.
pub fn s_word(p: RewriteParams, m: usize) -> BraidWord {
    sigma(p.n, p.index(m), Sign::Pos)
        .concat(&sigma(p.n, p.index(m + 1), Sign::Neg))
        .expect("same strand count")
}

/// Least `ℓ ≥ 0` with `1 + kℓ ≡ i (mod n)`.
pub fn telescope_length(p: RewriteParams, i: i64) -> Result<usize> {
    if i < 2 || i > p.n as i64 - 1 {
        return Err(BraidError::BadTarget {
            target: i,
            n: p.n,
            max: p.n - 1,
        });
    }
    Ok((0..p.n)
        .find(|&l| p.index(l) == i)
        .expect("k is a unit mod n"))
}

/// The program `S₀ S₁ ⋯ S_{ℓ-1}` for `σ₁σᵢ⁻¹`.
pub fn two_generator_factor(p: RewriteParams, i: i64) -> Result<TwoGenSlp> {
    let l = telescope_length(p, i)?;
    let root = (0..l).map(|m| (Symbol::S(m), 1)).collect();
    Ok(TwoGenSlp::with_depth(p, l - 1, root))
}
