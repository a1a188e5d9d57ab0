//! Word problem in `B_n` via the Garside left normal form.
//!
//! Every element has a unique expression `Δ^p · A₁ ⋯ A_s` where each `Aᵢ` is a
//! permutation braid strictly between `1` and `Δ`, and each adjacent pair is
//! left-weighted. The word is absorbed letter by letter: `σᵢ` is a simple
//! element, and `σᵢ⁻¹ = (σᵢ⁻¹Δ) · Δ⁻¹` is a simple element followed by `Δ⁻¹`,
//! which passes to the front through the flip automorphism `τ(σᵢ) = σ_{n-i}`.
//! Each simple element is absorbed by a right-to-left left-weighting sweep.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{BraidError, Result};
use crate::perm::Permutation;
use crate::word::{BraidWord, Sign};

/// A permutation braid, kept as its final arrangement and its inverse.
///
/// `arr[p]` is the strand ending at position `p`; `pos[s]` is where strand `s`
/// ends. Strands and positions are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Simple {
    arr: Vec<u8>,
    pos: Vec<u8>,
}

impl Simple {
    fn identity(n: usize) -> Self {
        let arr: Vec<u8> = (0..n).map(|x| x as u8).collect();
        Simple {
            pos: arr.clone(),
            arr,
        }
    }

    fn delta(n: usize) -> Self {
        let arr: Vec<u8> = (0..n).rev().map(|x| x as u8).collect();
        Simple {
            pos: arr.clone(),
            arr,
        }
    }

    fn atom(n: usize, i: usize) -> Self {
        let mut s = Self::identity(n);
        s.mul_atom(i);
        s
    }

    /// `Δ σᵢ⁻¹`, the right complement of `σᵢ`.
    fn delta_without(n: usize, i: usize) -> Self {
        let mut s = Self::delta(n);
        s.arr.swap(i - 1, i);
        let (a, b) = (s.arr[i - 1] as usize, s.arr[i] as usize);
        s.pos[a] = (i - 1) as u8;
        s.pos[b] = i as u8;
        s
    }

    fn n(&self) -> usize {
        self.arr.len()
    }

    fn is_identity(&self) -> bool {
        self.arr.iter().enumerate().all(|(p, &s)| p == s as usize)
    }

    fn is_delta(&self) -> bool {
        let n = self.n();
        self.arr.iter().enumerate().all(|(p, &s)| s as usize == n - 1 - p)
    }

    /// `self = x · σᵢ` for some simple `x`.
    #[inline]
    fn ends_with(&self, i: usize) -> bool {
        self.arr[i - 1] > self.arr[i]
    }

    /// `self = σᵢ · x` for some simple `x`.
    #[inline]
    fn starts_with(&self, i: usize) -> bool {
        self.pos[i - 1] > self.pos[i]
    }

    /// `self ← self · σᵢ`; caller ensures the result is still simple.
    #[inline]
    fn mul_atom(&mut self, i: usize) {
        self.arr.swap(i - 1, i);
        let (a, b) = (self.arr[i - 1] as usize, self.arr[i] as usize);
        self.pos[a] = (i - 1) as u8;
        self.pos[b] = i as u8;
    }

    /// `self ← σᵢ⁻¹ · self`; caller ensures `starts_with(i)`.
    #[inline]
    fn strip_atom(&mut self, i: usize) {
        let (pa, pb) = (self.pos[i - 1] as usize, self.pos[i] as usize);
        self.arr[pa] = i as u8;
        self.arr[pb] = (i - 1) as u8;
        self.pos.swap(i - 1, i);
    }

    /// `self ← τ(self) = Δ self Δ⁻¹`, i.e. `σᵢ ↦ σ_{n-i}`.
    fn apply_tau(&mut self) {
        let n = self.n();
        self.arr.reverse();
        self.pos.reverse();
        let top = (n - 1) as u8;
        for v in self.arr.iter_mut().chain(self.pos.iter_mut()) {
            *v = top - *v;
        }
    }

    fn permutation(&self) -> Permutation {
        Permutation::from_images(self.arr.iter().map(|&x| x as usize).collect())
            .expect("arrangement is a bijection")
    }
}

/// Replaces `(a, b)` by the left-weighted pair with the same product.
/// Returns whether `a` changed.
fn left_weight(a: &mut Simple, b: &mut Simple) -> bool {
    let n = a.n();
    let mut changed = false;
    'scan: loop {
        for i in 1..n {
            if b.starts_with(i) && !a.ends_with(i) {
                a.mul_atom(i);
                b.strip_atom(i);
                changed = true;
                continue 'scan;
            }
        }
        return changed;
    }
}

/// Incremental left normal form under right multiplication.
///
/// Factors are stored lazily: a factor whose `flipped` tag differs from the
/// builder's `flip` is really `τ` of what is stored. This makes right
/// multiplication by `Δ⁻¹` (and moving a fresh `Δ` to the front) cost O(1)
/// instead of touching every factor.
struct Builder {
    n: usize,
    delta_power: i64,
    flip: bool,
    factors: VecDeque<(Simple, bool)>,
}

impl Builder {
    fn new(n: usize) -> Self {
        Builder {
            n,
            delta_power: 0,
            flip: false,
            factors: VecDeque::new(),
        }
    }

    fn materialize(&mut self, idx: usize) {
        let flip = self.flip;
        let (s, tag) = &mut self.factors[idx];
        if *tag != flip {
            s.apply_tau();
            *tag = flip;
        }
    }

    /// Right multiplication by `Δ^{-1}`: `X Δ⁻¹ = Δ⁻¹ τ(X)`.
    fn mul_delta_inverse(&mut self) {
        self.delta_power -= 1;
        self.flip = !self.flip;
    }

    /// Right multiplication by a simple element.
    fn push(&mut self, x: Simple) {
        if x.is_identity() {
            return;
        }
        self.factors.push_back((x, self.flip));
        let mut j = self.factors.len() - 1;
        while j > 0 {
            self.materialize(j - 1);
            let (left, right) = self.factors.pair_mut(j - 1);
            if !left_weight(left, right) {
                break;
            }
            if left.is_delta() {
                // A₁⋯A_{j-2} Δ = Δ τ(A₁)⋯τ(A_{j-2}): flip everything, then
                // restore the already-materialized suffix.
                self.factors.remove(j - 1);
                self.delta_power += 1;
                self.flip = !self.flip;
                let flip = self.flip;
                for (_, tag) in self.factors.range_mut(j - 1..) {
                    *tag = flip;
                }
                break;
            }
            j -= 1;
        }
        if j == 0 && self.factors.front().is_some_and(|(s, _)| s.is_delta()) {
            self.factors.pop_front();
            self.delta_power += 1;
            self.flip = !self.flip;
            let flip = self.flip;
            for (_, tag) in self.factors.iter_mut() {
                *tag = flip;
            }
        }
        while self.factors.back().is_some_and(|(s, _)| s.is_identity()) {
            self.factors.pop_back();
        }
    }

    fn finish(mut self) -> NormalForm {
        for idx in 0..self.factors.len() {
            self.materialize(idx);
        }
        debug_assert!(self
            .factors
            .iter()
            .all(|(f, _)| !f.is_identity() && !f.is_delta()));
        NormalForm {
            n: self.n,
            delta_power: self.delta_power,
            factors: self
                .factors
                .into_iter()
                .map(|(s, _)| CanonicalFactor { arr: s.arr })
                .collect(),
        }
    }
}

trait PairMut {
    fn pair_mut(&mut self, i: usize) -> (&mut Simple, &mut Simple);
}

impl PairMut for VecDeque<(Simple, bool)> {
    /// Mutable references to elements `i` and `i + 1`.
    fn pair_mut(&mut self, i: usize) -> (&mut Simple, &mut Simple) {
        let (front, back) = self.as_mut_slices();
        if i + 1 < front.len() {
            let (x, y) = front.split_at_mut(i + 1);
            (&mut x[i].0, &mut y[0].0)
        } else if i + 1 == front.len() {
            (&mut front[i].0, &mut back[0].0)
        } else {
            let k = i - front.len();
            let (x, y) = back.split_at_mut(k + 1);
            (&mut x[k].0, &mut y[0].0)
        }
    }
}

/// A permutation braid strictly between the identity and `Δ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalFactor {
    arr: Vec<u8>,
}

impl CanonicalFactor {
    pub fn n(&self) -> usize {
        self.arr.len()
    }

    pub fn permutation(&self) -> Permutation {
        Simple {
            arr: self.arr.clone(),
            pos: Vec::new(),
        }
        .permutation()
    }

    /// A positive word for the factor (each strand pair crosses at most once).
    pub fn to_word(&self) -> BraidWord {
        // bubble sort of the arrangement, read backwards, spells the factor
        let mut arr = self.arr.clone();
        let mut swaps = Vec::new();
        let n = arr.len();
        for pass in 0..n {
            for p in 0..n - 1 - pass {
                if arr[p] > arr[p + 1] {
                    arr.swap(p, p + 1);
                    swaps.push(p + 1);
                }
            }
        }
        let letters = swaps.into_iter().rev().map(crate::word::Letter::pos).collect();
        BraidWord::from_letters_unchecked(n, letters)
    }

    fn simple(&self) -> Simple {
        let mut pos = vec![0u8; self.arr.len()];
        for (p, &s) in self.arr.iter().enumerate() {
            pos[s as usize] = p as u8;
        }
        Simple {
            arr: self.arr.clone(),
            pos,
        }
    }

    pub fn one_line(&self) -> String {
        self.permutation().one_line()
    }
}

/// Left normal form `Δ^delta_power · factors[0] ⋯ factors[s-1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalForm {
    pub n: usize,
    pub delta_power: i64,
    pub factors: Vec<CanonicalFactor>,
}

impl NormalForm {
    pub fn is_identity(&self) -> bool {
        self.delta_power == 0 && self.factors.is_empty()
    }

    /// Number of non-`Δ` factors.
    pub fn canonical_length(&self) -> usize {
        self.factors.len()
    }

    /// Checks the defining conditions: proper factors, left-weighted pairs.
    pub fn is_left_weighted(&self) -> bool {
        let proper = self
            .factors
            .iter()
            .map(CanonicalFactor::simple)
            .all(|s| !s.is_identity() && !s.is_delta());
        proper
            && self.factors.windows(2).all(|w| {
                let (a, b) = (w[0].simple(), w[1].simple());
                (1..self.n).all(|i| !b.starts_with(i) || a.ends_with(i))
            })
    }

    /// A word representing the same element (`Δ^p` spelled out, then the factors).
    pub fn to_word(&self) -> BraidWord {
        let delta = BraidWord::delta(self.n).pow_raw(self.delta_power);
        let mut w = delta;
        for f in &self.factors {
            w = w.concat_raw(&f.to_word()).expect("same strand count");
        }
        w
    }
}

impl fmt::Display for NormalForm {
    /// `D^p | perm1 | perm2 | ...`, permutations in one-line notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{} |", self.delta_power)?;
        for (idx, factor) in self.factors.iter().enumerate() {
            if idx > 0 {
                f.write_str(" |")?;
            }
            write!(f, " {}", factor.one_line())?;
        }
        Ok(())
    }
}

/// The unique left normal form of the element `w` represents.
pub fn normal_form(w: &BraidWord) -> NormalForm {
    let n = w.n();
    let mut builder = Builder::new(n);
    for l in w.letters() {
        match l.sign {
            Sign::Pos => builder.push(Simple::atom(n, l.index)),
            Sign::Neg => {
                // σᵢ⁻¹ = (σᵢ⁻¹Δ) Δ⁻¹ and σᵢ⁻¹Δ = Δ σ_{n-i}⁻¹
                builder.push(Simple::delta_without(n, n - l.index));
                builder.mul_delta_inverse();
            }
        }
    }
    builder.finish()
}

/// Whether the two words represent the same braid.
pub fn equal(w1: &BraidWord, w2: &BraidWord) -> Result<bool> {
    if w1.n() != w2.n() {
        return Err(BraidError::StrandCountMismatch {
            left: w1.n(),
            right: w2.n(),
        });
    }
    if w1.exponent_sum() != w2.exponent_sum() {
        return Ok(false);
    }
    Ok(normal_form(w1) == normal_form(w2))
}

pub fn is_identity(w: &BraidWord) -> bool {
    w.exponent_sum() == 0 && normal_form(w).is_identity()
}
