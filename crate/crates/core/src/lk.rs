//! Lawrence–Krammer representation over exact Laurent polynomials.
//!
//! The module is free on `x_{i,j}`, `1 ≤ i < j ≤ n`, and `σ_k` acts by
//! Krammer's formulas. The representation is faithful, so equality of
//! matrices decides equality of braids; it serves as an oracle independent
//! of the Garside machinery.

use crate::error::{BraidError, Result};
use crate::laurent::LaurentPoly2;
use crate::word::{BraidWord, Letter, Sign};

/// Default cap on word length; matrix entries grow quickly with length.
pub const DEFAULT_LK_BOUND: usize = 64;

fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Index of the basis vector `x_{i,j}` (1-based, `i < j`).
fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    // pairs (1,2)..(1,n), (2,3)..(2,n), ...
    (i - 1) * n - (i - 1) * i / 2 + (j - i - 1)
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

fn mono(c: i128, q: i32, t: i32) -> LaurentPoly2 {
    LaurentPoly2::monomial(c, q, t)
}

/// `c · q^shift · (q - 1)^power`
fn qm1(c: i128, shift: i32, power: u32) -> LaurentPoly2 {
    let mut p = mono(c, shift, 0);
    let base = LaurentPoly2::from_terms([((1, 0), 1), ((0, 0), -1)]);
    for _ in 0..power {
        p = &p * &base;
    }
    p
}

/// Image of `x_{i,j}` under `σ_k^{±1}`, as `(basis index, coefficient)` terms.
fn generator_column(n: usize, k: usize, sign: Sign, i: usize, j: usize) -> Vec<(usize, LaurentPoly2)> {
    let x = |a: usize, b: usize| pair_index(n, a, b);
    let (ki, kk) = (k as i32, i as i32);
    let one = LaurentPoly2::one;
    match sign {
        Sign::Pos => {
            if i == k && j == k + 1 {
                vec![(x(k, k + 1), mono(1, 2, 1))]
            } else if j == k && i < k {
                vec![
                    (x(i, k), LaurentPoly2::from_terms([((0, 0), 1), ((1, 0), -1)])),
                    (x(i, k + 1), mono(1, 1, 0)),
                ]
            } else if j == k + 1 && i < k {
                vec![
                    (x(i, k), one()),
                    (x(k, k + 1), &qm1(1, ki - kk + 1, 1) * &mono(1, 0, 1)),
                ]
            } else if i == k && j > k + 1 {
                vec![
                    (x(k, k + 1), &qm1(1, 1, 1) * &mono(1, 0, 1)),
                    (x(k + 1, j), mono(1, 1, 0)),
                ]
            } else if i == k + 1 {
                vec![
                    (x(k, j), one()),
                    (x(k + 1, j), LaurentPoly2::from_terms([((0, 0), 1), ((1, 0), -1)])),
                ]
            } else if j < k || i > k + 1 {
                vec![(x(i, j), one())]
            } else {
                vec![
                    (x(i, j), one()),
                    (x(k, k + 1), &qm1(1, ki - kk, 2) * &mono(1, 0, 1)),
                ]
            }
        }
        Sign::Neg => {
            if i == k && j == k + 1 {
                vec![(x(k, k + 1), mono(1, -2, -1))]
            } else if j == k && i < k {
                vec![
                    (x(i, k + 1), one()),
                    (x(k, k + 1), qm1(-1, ki - kk - 1, 1)),
                ]
            } else if j == k + 1 && i < k {
                vec![
                    (x(i, k), mono(1, -1, 0)),
                    (x(i, k + 1), LaurentPoly2::from_terms([((0, 0), 1), ((-1, 0), -1)])),
                    (x(k, k + 1), qm1(-1, ki - kk - 2, 2)),
                ]
            } else if i == k && j > k + 1 {
                vec![
                    (x(k, k + 1), qm1(-1, -2, 2)),
                    (x(k, j), LaurentPoly2::from_terms([((0, 0), 1), ((-1, 0), -1)])),
                    (x(k + 1, j), one()),
                ]
            } else if i == k + 1 {
                vec![(x(k, k + 1), qm1(-1, -2, 1)), (x(k, j), mono(1, -1, 0))]
            } else if j < k || i > k + 1 {
                vec![(x(i, j), one())]
            } else {
                vec![(x(i, j), one()), (x(k, k + 1), qm1(-1, ki - kk - 2, 2))]
            }
        }
    }
}

/// Square matrix of Laurent polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LkMatrix {
    n: usize,
    dim: usize,
    entries: Vec<LaurentPoly2>,
}

impl LkMatrix {
    pub fn identity(n: usize) -> Self {
        let dim = pair_count(n);
        let mut entries = vec![LaurentPoly2::zero(); dim * dim];
        for d in 0..dim {
            entries[d * dim + d] = LaurentPoly2::one();
        }
        LkMatrix { n, dim, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly2 {
        &self.entries[row * self.dim + col]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn mul(&self, other: &LkMatrix) -> LkMatrix {
        assert_eq!(self.n, other.n, "strand count mismatch");
        let dim = self.dim;
        let mut entries = vec![LaurentPoly2::zero(); dim * dim];
        for r in 0..dim {
            for m in 0..dim {
                let a = &self.entries[r * dim + m];
                if a.is_zero() {
                    continue;
                }
                for c in 0..dim {
                    let b = &other.entries[m * dim + c];
                    if !b.is_zero() {
                        let slot = &mut entries[r * dim + c];
                        *slot = &*slot + &(a * b);
                    }
                }
            }
        }
        LkMatrix {
            n: self.n,
            dim,
            entries,
        }
    }

    /// `self ← self · M(letter)`, using the sparse generator columns.
    fn mul_generator(&mut self, letter: Letter) {
        let dim = self.dim;
        let mut entries = vec![LaurentPoly2::zero(); dim * dim];
        for (col, (i, j)) in pairs(self.n).enumerate() {
            for (row_of_gen, coeff) in generator_column(self.n, letter.index, letter.sign, i, j) {
                for r in 0..dim {
                    let a = &self.entries[r * dim + row_of_gen];
                    if !a.is_zero() {
                        let slot = &mut entries[r * dim + col];
                        *slot = &*slot + &(a * &coeff);
                    }
                }
            }
        }
        self.entries = entries;
    }

    pub fn max_abs_coeff(&self) -> i128 {
        self.entries.iter().map(LaurentPoly2::max_abs_coeff).max().unwrap_or(0)
    }
}

/// Matrix of `σᵢ^{sign}` in `B_n`.
pub fn lk_generator(n: usize, i: usize, sign: Sign) -> Result<LkMatrix> {
    if n < 2 {
        return Err(BraidError::BadStrandCount {
            n,
            reason: "need at least 2 strands",
        });
    }
    if i < 1 || i >= n {
        return Err(BraidError::IndexOutOfRange {
            index: i as i64,
            n,
            max: n - 1,
        });
    }
    let mut m = LkMatrix::identity(n);
    m.mul_generator(Letter { index: i, sign });
    Ok(m)
}

/// Evaluates words in the representation, refusing words longer than `max_len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LkOracle {
    pub max_len: usize,
}

impl Default for LkOracle {
    fn default() -> Self {
        LkOracle {
            max_len: DEFAULT_LK_BOUND,
        }
    }
}

impl LkOracle {
    pub fn new(max_len: usize) -> Self {
        LkOracle { max_len }
    }

    fn check(&self, w: &BraidWord) -> Result<()> {
        if w.len() > self.max_len {
            return Err(BraidError::WordTooLong {
                len: w.len(),
                max: self.max_len,
            });
        }
        Ok(())
    }

    pub fn matrix(&self, w: &BraidWord) -> Result<LkMatrix> {
        self.check(w)?;
        let mut m = LkMatrix::identity(w.n());
        for &l in w.letters() {
            m.mul_generator(l);
        }
        Ok(m)
    }

    /// Column `col` of the matrix of `w`, i.e. `M(w) · x_col`.
    fn column(&self, w: &BraidWord, col: usize) -> Vec<LaurentPoly2> {
        let n = w.n();
        let all_pairs: Vec<(usize, usize)> = pairs(n).collect();
        let mut v = vec![LaurentPoly2::zero(); pair_count(n)];
        v[col] = LaurentPoly2::one();
        for &l in w.letters().iter().rev() {
            let mut next = vec![LaurentPoly2::zero(); v.len()];
            for (c, coeff_c) in v.iter().enumerate() {
                if coeff_c.is_zero() {
                    continue;
                }
                let (i, j) = all_pairs[c];
                for (r, g) in generator_column(n, l.index, l.sign, i, j) {
                    next[r] = &next[r] + &(coeff_c * &g);
                }
            }
            v = next;
        }
        v
    }

    /// Compares the two matrices column by column, stopping at the first difference.
    pub fn equal(&self, w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
        if w1.n() != w2.n() {
            return Err(BraidError::StrandCountMismatch {
                left: w1.n(),
                right: w2.n(),
            });
        }
        self.check(w1)?;
        self.check(w2)?;
        let (a, b) = (w1.free_reduce(), w2.free_reduce());
        for col in 0..pair_count(w1.n()) {
            if self.column(&a, col) != self.column(&b, col) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Matrix of `w` under the default length bound.
pub fn lk_matrix(w: &BraidWord) -> Result<LkMatrix> {
    LkOracle::default().matrix(w)
}

/// Braid equality decided by the Lawrence–Krammer matrices, default bound.
pub fn equal_via_lk(w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
    LkOracle::default().equal(w1, w2)
}
