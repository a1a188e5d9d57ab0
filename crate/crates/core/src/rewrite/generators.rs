//! Three-element generating sets for `B₄′` and `B₆′`.

use std::fmt;

use crate::error::{BraidError, Result};
use crate::garside::equal;
use crate::word::{alpha_power, BraidWord, Letter};

fn w(n: usize, t: &[i64]) -> BraidWord {
    BraidWord::from_tokens(n, t).expect("fixed tokens are in range")
}

/// The B₄ generators and the relation `w = u c u⁻¹`.
#[derive(Clone, Debug)]
pub struct B4Generators {
    pub u: BraidWord,
    pub v: BraidWord,
    pub c: BraidWord,
    pub w: BraidWord,
    /// `u⁻¹ = σ₁σ₂⁻¹`, `v⁻¹ = σ₁²σ₂⁻¹σ₁⁻¹`, `c⁻¹ = σ₁σ₃⁻¹`.
    pub generators: [BraidWord; 3],
    pub relation_holds: bool,
}

pub fn b4_generators() -> B4Generators {
    let u = w(4, &[2, -1]);
    let v = w(4, &[1, 2, -1, -1]);
    let c = w(4, &[3, -1]);
    let rel_w = w(4, &[2, 3, -1, -2]);
    let ucu = u.concat_raw(&c).and_then(|x| x.concat_raw(&u.inverse())).unwrap();
    let relation_holds = equal(&rel_w, &ucu).unwrap();
    B4Generators {
        generators: [u.inverse(), v.inverse(), c.inverse()],
        u,
        v,
        c,
        w: rel_w,
        relation_holds,
    }
}

/// `B₄ → B₃`, `σ₁, σ₃ ↦ σ₁`, `σ₂ ↦ σ₂`.
pub fn psi_b4_to_b3(word: &BraidWord) -> Result<BraidWord> {
    if word.n() != 4 {
        return Err(BraidError::StrandCountMismatch {
            left: word.n(),
            right: 4,
        });
    }
    let letters = word
        .letters()
        .iter()
        .map(|l| Letter {
            index: if l.index == 3 { 1 } else { l.index },
            sign: l.sign,
        })
        .collect();
    BraidWord::new(3, letters)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum B6Gen {
    A,
    B,
    R,
}

impl fmt::Display for B6Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            B6Gen::A => "a",
            B6Gen::B => "b",
            B6Gen::R => "r",
        })
    }
}

/// `a = σ₁σ₂⁻¹`, `b = σ₁σ₃⁻¹`, `r = α²σ₁⁻¹⁰` in `B₆`.
pub fn b6_generator(g: B6Gen) -> BraidWord {
    match g {
        B6Gen::A => w(6, &[1, -2]),
        B6Gen::B => w(6, &[1, -3]),
        B6Gen::R => alpha_power(6, 2)
            .unwrap()
            .concat_raw(&w(6, &[-1; 10]))
            .unwrap(),
    }
}

/// Word over `{a, b, r}` equal to `σ₁σᵢ⁻¹` in `B₆`.
pub fn b6_factor(i: i64) -> Result<Vec<(B6Gen, i64)>> {
    use B6Gen::*;
    Ok(match i {
        2 => vec![(A, 1)],
        3 => vec![(B, 1)],
        4 => vec![(B, -9), (R, 1), (A, 1), (R, -1), (B, 10)],
        5 => vec![(B, 1), (R, 1), (B, 1), (R, -1)],
        _ => {
            return Err(BraidError::BadTarget {
                target: i,
                n: 6,
                max: 5,
            })
        }
    })
}

/// Substitutes the generator words; not reduced.
pub fn substitute_b6(word: &[(B6Gen, i64)]) -> BraidWord {
    word.iter().fold(BraidWord::empty(6), |acc, &(g, e)| {
        acc.concat_raw(&b6_generator(g).pow_raw(e)).unwrap()
    })
}

pub fn format_b6_word(word: &[(B6Gen, i64)]) -> String {
    word.iter()
        .map(|&(g, e)| if e == 1 { g.to_string() } else { format!("{g}^{e}") })
        .collect::<Vec<_>>()
        .join(" ")
}
