//! Expanding conjugates `g (σ_aσ_b⁻¹)^{±1} g⁻¹` into products of `σ_iσ_j⁻¹`,
//! and from there into the alphabet `σ₁σₓ⁻¹`.
//!
//! For `n = 5` indices live in `ℤ/5`, with `σ₀ = α σ₄ α⁻¹` supplying the
//! commuting generator that `σ₂` and `σ₃` otherwise lack.

use crate::error::{BraidError, Result};
use crate::word::{residue, sigma, BraidWord, Sign};

/// `(a, b)` denotes `σ_a σ_b⁻¹`.
pub type Pair = (usize, usize);

/// `conjugator · (σ_aσ_b⁻¹)^exponent · conjugator⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugateFactor {
    pub conjugator: BraidWord,
    pub core: Pair,
    pub exponent: Sign,
}

impl ConjugateFactor {
    /// The element as a word, not reduced.
    pub fn to_word(&self) -> Result<BraidWord> {
        let n = self.conjugator.n();
        let core = pair_product(n, &[self.core]);
        let core = match self.exponent {
            Sign::Pos => core,
            Sign::Neg => core.inverse(),
        };
        self.conjugator
            .concat_raw(&core)?
            .concat_raw(&self.conjugator.inverse())
    }
}

/// `(σ₁σₓ⁻¹)^sign`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Sigma1Letter {
    pub index: usize,
    pub sign: Sign,
}

fn commutes(n: usize, i: usize, j: usize, ring: bool) -> bool {
    if ring {
        let d = (i + n - j) % n;
        d != 1 && d != n - 1
    } else {
        i.abs_diff(j) != 1
    }
}

/// Least index whose generator commutes with both `σᵢ` and `σⱼ`.
///
/// Linear mode scans `1..n-1`; ring mode scans `0..n` and reads `i`, `j` mod `n`.
pub fn choose_commuting_index(n: usize, i: i64, j: i64, ring: bool) -> Result<usize> {
    let none = || BraidError::NoCommutingIndex { n, i, j };
    let (i, j, range) = if ring {
        (residue(i, n), residue(j, n), 0..n)
    } else {
        if i < 1 || j < 1 || i >= n as i64 || j >= n as i64 {
            return Err(none());
        }
        (i as usize, j as usize, 1..n)
    };
    range
        .into_iter()
        .find(|&l| commutes(n, l, i, ring) && commutes(n, l, j, ring))
        .ok_or_else(none)
}

/// One conjugation step: `σ_k^ε (σ_iσ_j⁻¹) σ_k^{-ε}` as a product of pairs.
fn base_case(n: usize, k: usize, eps: Sign, (i, j): Pair, ring: bool) -> Result<Vec<Pair>> {
    if commutes(n, k, i, ring) && commutes(n, k, j, ring) {
        // the formulas with ℓ = m = k collapse to the core itself
        return Ok(vec![(i, j)]);
    }
    let choose = |a: usize, b: usize| choose_commuting_index(n, a as i64, b as i64, ring);
    Ok(match eps {
        Sign::Pos => {
            let l = choose(i, j)?;
            vec![(k, l), (i, j), (l, k)]
        }
        Sign::Neg => {
            let l = choose(k, i)?;
            let m = choose(j, k)?;
            vec![(l, k), (i, l), (m, j), (k, m)]
        }
    })
}

/// Pairs whose product equals the conjugate `factor` denotes.
///
/// Ring indices are used for `n = 5`, so pairs may contain `0`.
pub fn expand_conjugate(n: usize, factor: &ConjugateFactor) -> Result<Vec<Pair>> {
    if n < 5 {
        return Err(BraidError::BadStrandCount {
            n,
            reason: "conjugate expansion needs at least 5 strands",
        });
    }
    let ring = n == 5;
    let (a, b) = factor.core;
    if a == b {
        return Err(BraidError::BadIndices(a as i64));
    }
    let bound = if ring { n } else { n - 1 };
    for x in [a, b] {
        if x > bound || (!ring && x == 0) {
            return Err(BraidError::IndexOutOfRange {
                index: x as i64,
                n,
                max: n - 1,
            });
        }
    }
    let (a, b) = (a % n, b % n);
    let mut pairs = match factor.exponent {
        Sign::Pos => vec![(a, b)],
        Sign::Neg => vec![(b, a)],
    };
    for letter in factor.conjugator.letters().iter().rev() {
        let mut next = Vec::with_capacity(pairs.len() * 4);
        for &p in &pairs {
            for q in base_case(n, letter.index, letter.sign, p, ring)? {
                if q.0 != q.1 {
                    next.push(q);
                }
            }
        }
        pairs = next;
    }
    Ok(pairs)
}

/// `∏ σ_aσ_b⁻¹`, with index `0` expanded; not reduced.
pub fn pair_product(n: usize, pairs: &[Pair]) -> BraidWord {
    let mut letters = Vec::with_capacity(2 * pairs.len());
    for &(a, b) in pairs {
        letters.extend_from_slice(sigma(n, a as i64, Sign::Pos).letters());
        letters.extend_from_slice(sigma(n, b as i64, Sign::Neg).letters());
    }
    BraidWord::new(n, letters).expect("sigma yields in-range letters")
}

/// Pairs for `σ₁σ₀⁻¹` in `B₅` avoiding index `0`.
pub const SIGMA1_SIGMA0_INV: [Pair; 12] = [
    (1, 4),
    (1, 4),
    (2, 4),
    (4, 1),
    (4, 1),
    (4, 1),
    (3, 4),
    (1, 3),
    (1, 4),
    (1, 4),
    (4, 2),
    (4, 1),
];

/// Removes index `0` via `σᵢσ₀⁻¹ = (σᵢσ₁⁻¹)(σ₁σ₀⁻¹)` and formal inversion.
pub fn eliminate_sigma0(pairs: &[Pair]) -> Vec<Pair> {
    let mut out = Vec::with_capacity(pairs.len());
    for &(a, b) in pairs {
        match (a, b) {
            (0, 0) => {}
            (i, 0) => out.extend(expand_to_zero(i)),
            (0, i) => out.extend(expand_to_zero(i).into_iter().rev().map(|(x, y)| (y, x))),
            p => out.push(p),
        }
    }
    out
}

fn expand_to_zero(i: usize) -> Vec<Pair> {
    let mut v = Vec::with_capacity(13);
    if i != 1 {
        v.push((i, 1));
    }
    v.extend_from_slice(&SIGMA1_SIGMA0_INV);
    v
}

/// `σᵢσⱼ⁻¹ = (σ₁σᵢ⁻¹)⁻¹ (σ₁σⱼ⁻¹)`; pairs involving `1` give a single letter.
pub fn pairs_to_sigma1_alphabet(pairs: &[Pair]) -> Vec<Sigma1Letter> {
    let mut out = Vec::with_capacity(2 * pairs.len());
    for &(i, j) in pairs {
        if i != 1 {
            out.push(Sigma1Letter {
                index: i,
                sign: Sign::Neg,
            });
        }
        if j != 1 {
            out.push(Sigma1Letter {
                index: j,
                sign: Sign::Pos,
            });
        }
    }
    out
}

/// Artin word for a `σ₁σₓ⁻¹`-alphabet word, block by block, not reduced.
pub fn sigma1_word(n: usize, letters: &[Sigma1Letter]) -> BraidWord {
    let pairs: Vec<Pair> = letters
        .iter()
        .map(|l| match l.sign {
            Sign::Pos => (1, l.index),
            Sign::Neg => (l.index, 1),
        })
        .collect();
    pair_product(n, &pairs)
}

/// Inverse of `sigma1_word`: reads blocks `[σ₁, σₓ⁻¹]` and `[σₓ, σ₁⁻¹]`.
pub fn parse_sigma1_blocks(w: &BraidWord) -> Option<Vec<Sigma1Letter>> {
    let letters = w.letters();
    if !letters.len().is_multiple_of(2) {
        return None;
    }
    letters
        .chunks(2)
        .map(|c| match (c[0].sign, c[1].sign) {
            (Sign::Pos, Sign::Neg) if c[0].index == 1 && c[1].index != 1 => Some(Sigma1Letter {
                index: c[1].index,
                sign: Sign::Pos,
            }),
            (Sign::Pos, Sign::Neg) if c[1].index == 1 && c[0].index != 1 => Some(Sigma1Letter {
                index: c[0].index,
                sign: Sign::Neg,
            }),
            _ => None,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::equal;
    use crate::random::random_word;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn w(n: usize, t: &[i64]) -> BraidWord {
        BraidWord::from_tokens(n, t).unwrap()
    }

    #[test]
    fn commuting_index_examples() {
        assert_eq!(choose_commuting_index(6, 1, 3, false).unwrap(), 1);
        assert_eq!(choose_commuting_index(6, 1, 2, false).unwrap(), 4);
        assert_eq!(choose_commuting_index(5, 2, 3, true).unwrap(), 0);
        assert!(matches!(
            choose_commuting_index(5, 2, 3, false),
            Err(BraidError::NoCommutingIndex { .. })
        ));
        for n in 6..10 {
            for i in 1..n as i64 {
                for j in 1..n as i64 {
                    let l = choose_commuting_index(n, i, j, false).unwrap();
                    let (sl, si, sj) = (w(n, &[l as i64]), w(n, &[i]), w(n, &[j]));
                    for s in [si, sj] {
                        let a = sl.concat_raw(&s).unwrap();
                        let b = s.concat_raw(&sl).unwrap();
                        assert!(equal(&a, &b).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn expand_examples() {
        let f = ConjugateFactor {
            conjugator: BraidWord::empty(6),
            core: (1, 3),
            exponent: Sign::Pos,
        };
        assert_eq!(expand_conjugate(6, &f).unwrap(), vec![(1, 3)]);

        let f = ConjugateFactor {
            conjugator: w(6, &[2]),
            core: (1, 2),
            exponent: Sign::Pos,
        };
        let pairs = expand_conjugate(6, &f).unwrap();
        assert_eq!(pairs, vec![(2, 4), (1, 2), (4, 2)]);
        assert!(equal(&pair_product(6, &pairs), &f.to_word().unwrap()).unwrap());

        let f = ConjugateFactor {
            conjugator: w(7, &[-2]),
            core: (5, 1),
            exponent: Sign::Pos,
        };
        let pairs = expand_conjugate(7, &f).unwrap();
        let l = choose_commuting_index(7, 2, 5, false).unwrap();
        let m = choose_commuting_index(7, 1, 2, false).unwrap();
        let expect: Vec<Pair> = [(l, 2), (5, l), (m, 1), (2, m)]
            .into_iter()
            .filter(|&(x, y)| x != y)
            .collect();
        assert_eq!(pairs, expect);
        assert!(equal(&pair_product(7, &pairs), &f.to_word().unwrap()).unwrap());

        let bad = ConjugateFactor {
            conjugator: BraidWord::empty(6),
            core: (2, 2),
            exponent: Sign::Pos,
        };
        assert_eq!(expand_conjugate(6, &bad), Err(BraidError::BadIndices(2)));
    }

    #[test]
    fn sigma0_elimination() {
        assert_eq!(eliminate_sigma0(&[(1, 3)]), vec![(1, 3)]);
        assert_eq!(eliminate_sigma0(&[(1, 0)]), SIGMA1_SIGMA0_INV.to_vec());
        let mut expect = vec![(3, 1)];
        expect.extend_from_slice(&SIGMA1_SIGMA0_INV);
        assert_eq!(eliminate_sigma0(&[(3, 0)]), expect);

        assert!(equal(&pair_product(5, &SIGMA1_SIGMA0_INV), &pair_product(5, &[(1, 0)])).unwrap());
        for i in 1..5 {
            let out = eliminate_sigma0(&[(i, 0), (0, i)]);
            assert!(out.iter().all(|&(a, b)| a != 0 && b != 0));
            assert!(equal(&pair_product(5, &out), &pair_product(5, &[(i, 0), (0, i)])).unwrap());
            let out = eliminate_sigma0(&[(0, i)]);
            assert!(equal(&pair_product(5, &out), &pair_product(5, &[(0, i)])).unwrap());
        }
    }

    #[test]
    fn sigma1_alphabet() {
        let pos = |index| Sigma1Letter { index, sign: Sign::Pos };
        let neg = |index| Sigma1Letter { index, sign: Sign::Neg };
        assert_eq!(pairs_to_sigma1_alphabet(&[(1, 3)]), vec![pos(3)]);
        assert_eq!(pairs_to_sigma1_alphabet(&[(2, 4)]), vec![neg(2), pos(4)]);
        assert_eq!(pairs_to_sigma1_alphabet(&[(3, 1)]), vec![neg(3)]);
        assert!(pairs_to_sigma1_alphabet(&[(1, 1)]).is_empty());
        let pairs = [(2, 4), (3, 1), (1, 5), (4, 2)];
        let letters = pairs_to_sigma1_alphabet(&pairs);
        let word = sigma1_word(6, &letters);
        assert!(equal(&word, &pair_product(6, &pairs)).unwrap());
        assert_eq!(parse_sigma1_blocks(&word).unwrap(), letters);
        assert!(parse_sigma1_blocks(&w(6, &[1, -1])).is_none());
        assert!(parse_sigma1_blocks(&w(6, &[1])).is_none());
    }

    #[test]
    fn random_conjugates_expand_soundly() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [5usize, 6, 7] {
            for _ in 0..60 {
                let len = rng.gen_range(0..=6);
                let conjugator = random_word(&mut rng, n, len);
                let a = rng.gen_range(1..n);
                let b = (a + rng.gen_range(1..n - 1) - 1) % (n - 1) + 1;
                let exponent = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
                let f = ConjugateFactor { conjugator, core: (a, b), exponent };
                let pairs = expand_conjugate(n, &f).unwrap();
                assert!(equal(&pair_product(n, &pairs), &f.to_word().unwrap()).unwrap());
                if n == 5 {
                    let clean = eliminate_sigma0(&pairs);
                    assert!(clean.iter().all(|&(x, y)| x != 0 && y != 0));
                    assert!(equal(&pair_product(n, &clean), &f.to_word().unwrap()).unwrap());
                }
            }
        }
    }
}
