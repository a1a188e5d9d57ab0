//! Exact integer Laurent polynomials in two variables `q`, `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Sparse polynomial: terms sorted by `(q, t)` exponent with nonzero coefficients.
///
/// Coefficient arithmetic is checked; overflow panics rather than wrapping.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    terms: Vec<((i32, i32), i128)>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// `coeff · q^q_exp · t^t_exp`.
    pub fn monomial(coeff: i128, q_exp: i32, t_exp: i32) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        LaurentPoly2 {
            terms: vec![((q_exp, t_exp), coeff)],
        }
    }

    /// Builds from arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = ((i32, i32), i128)>) -> Self {
        let mut terms: Vec<_> = terms.into_iter().collect();
        terms.sort_unstable_by_key(|&(e, _)| e);
        let mut out: Vec<((i32, i32), i128)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = checked(lc.checked_add(c)),
                _ => out.push((e, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        LaurentPoly2 { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[((i32, i32), i128)] {
        &self.terms
    }

    pub fn coeff(&self, q_exp: i32, t_exp: i32) -> i128 {
        self.terms
            .binary_search_by_key(&(q_exp, t_exp), |&(e, _)| e)
            .map(|idx| self.terms[idx].1)
            .unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> i128 {
        self.terms.iter().map(|&(_, c)| c.abs()).max().unwrap_or(0)
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let sgn = |c: i128| if negate_other { checked(c.checked_neg()) } else { c };
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = self.terms[i];
            let (eb, cb) = other.terms[j];
            match ea.cmp(&eb) {
                std::cmp::Ordering::Less => {
                    out.push((ea, ca));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((eb, sgn(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = checked(ca.checked_add(sgn(cb)));
                    if c != 0 {
                        out.push((ea, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|&(e, c)| (e, sgn(c))));
        LaurentPoly2 { terms: out }
    }
}

fn checked(v: Option<i128>) -> i128 {
    v.expect("Laurent coefficient overflowed i128")
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        self.merge(rhs, false)
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        self.merge(rhs, true)
    }
}

impl Neg for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn neg(self) -> LaurentPoly2 {
        LaurentPoly2 {
            terms: self
                .terms
                .iter()
                .map(|&(e, c)| (e, checked(c.checked_neg())))
                .collect(),
        }
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly2::zero();
        }
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for &((qa, ta), ca) in &self.terms {
            for &((qb, tb), cb) in &rhs.terms {
                terms.push(((qa + qb, ta + tb), checked(ca.checked_mul(cb))));
            }
        }
        LaurentPoly2::from_terms(terms)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly2 {
            type Output = LaurentPoly2;
            fn $m(self, rhs: LaurentPoly2) -> LaurentPoly2 {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, &((qe, te), c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if idx == 0 {
                if sign == "-" {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mut parts = Vec::new();
            if mag != 1 || (qe == 0 && te == 0) {
                parts.push(mag.to_string());
            }
            match qe {
                0 => {}
                1 => parts.push("q".into()),
                e => parts.push(format!("q^{e}")),
            }
            match te {
                0 => {}
                1 => parts.push("t".into()),
                e => parts.push(format!("t^{e}")),
            }
            f.write_str(&parts.join("*"))?;
        }
        Ok(())
    }
}
