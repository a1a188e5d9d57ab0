//! Seeded random words and relation-preserving scrambles for sweeps and benchmarks.

use rand::Rng;

use crate::word::{BraidWord, Letter, Sign};

pub fn random_letter<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Letter {
    let index = rng.gen_range(1..n);
    if rng.gen_bool(0.5) {
        Letter::pos(index)
    } else {
        Letter::neg(index)
    }
}

/// Uniform random letters, not reduced.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    let letters = (0..len).map(|_| random_letter(rng, n)).collect();
    BraidWord::new(n, letters).expect("indices drawn in range")
}

/// Random word with exponent sum zero; `len` is rounded down to even.
pub fn random_zero_sum_word<R: Rng + ?Sized>(rng: &mut R, n: usize, len: usize) -> BraidWord {
    let half = len / 2;
    let mut letters: Vec<Letter> = Vec::with_capacity(2 * half);
    for _ in 0..half {
        letters.push(Letter::pos(rng.gen_range(1..n)));
        letters.push(Letter::neg(rng.gen_range(1..n)));
    }
    for i in (1..letters.len()).rev() {
        let j = rng.gen_range(0..=i);
        letters.swap(i, j);
    }
    BraidWord::new(n, letters).expect("indices drawn in range")
}

/// Applies `steps` random defining-relation moves, so the result represents
/// the same braid as `w`: inserting `σᵢ^{±1}σᵢ^{∓1}`, swapping far-apart
/// neighbours, and `σᵢσⱼσᵢ ↔ σⱼσᵢσⱼ` for `|i - j| = 1` (either sign pattern).
pub fn scramble<R: Rng + ?Sized>(rng: &mut R, w: &BraidWord, steps: usize) -> BraidWord {
    let n = w.n();
    let mut letters = w.letters().to_vec();
    for _ in 0..steps {
        match rng.gen_range(0..3) {
            0 => {
                let at = rng.gen_range(0..=letters.len());
                let l = random_letter(rng, n);
                letters.splice(at..at, [l, l.inverse()]);
            }
            1 if letters.len() >= 2 => {
                let candidates: Vec<usize> = (0..letters.len() - 1)
                    .filter(|&p| letters[p].index.abs_diff(letters[p + 1].index) >= 2)
                    .collect();
                if !candidates.is_empty() {
                    let p = candidates[rng.gen_range(0..candidates.len())];
                    letters.swap(p, p + 1);
                }
            }
            _ if letters.len() >= 3 => {
                let candidates: Vec<usize> = (0..letters.len() - 2)
                    .filter(|&p| {
                        let (a, b, c) = (letters[p], letters[p + 1], letters[p + 2]);
                        a == c && a.sign == b.sign && a.index.abs_diff(b.index) == 1
                    })
                    .collect();
                if let Some(&p) = candidates.get(rng.gen_range(0..candidates.len().max(1))) {
                    let (a, b) = (letters[p], letters[p + 1]);
                    letters[p] = b;
                    letters[p + 1] = a;
                    letters[p + 2] = b;
                } else if n >= 3 {
                    // plant a braid-relation triple to rewrite later
                    let i = rng.gen_range(1..n - 1);
                    let sign = if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg };
                    let (a, b) = (Letter { index: i, sign }, Letter { index: i + 1, sign });
                    let at = rng.gen_range(0..=letters.len());
                    // aba (bab)⁻¹ is trivial by the braid relation
                    let planted = [a, b, a, b.inverse(), a.inverse(), b.inverse()];
                    letters.splice(at..at, planted);
                }
            }
            _ => {}
        }
    }
    BraidWord::new(n, letters).expect("moves keep indices in range")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::garside::equal;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn scramble_preserves_the_braid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 3..7 {
            for _ in 0..30 {
                let w = random_word(&mut rng, n, 12);
                let s = scramble(&mut rng, &w, 8);
                assert!(equal(&w, &s).unwrap());
            }
        }
    }

    #[test]
    fn zero_sum_words() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for len in 0..12 {
            let w = random_zero_sum_word(&mut rng, 5, len);
            assert_eq!(w.exponent_sum(), 0);
            assert_eq!(w.len(), len / 2 * 2);
        }
    }
}
