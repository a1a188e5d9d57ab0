//! Straight-line programs over the two letters `R`, `S`.
//!
//! Symbols `R_m`, `S_m` are defined by rules; `R0` and `S0` are the letters
//! themselves. Flat lengths grow roughly like `N^m`, so lengths are computed
//! from the rules and expansion is refused past a caller-given limit.

use std::collections::HashMap;
use std::fmt;

use crate::error::{BraidError, Result};
use crate::rewrite::{r_word, s_word, RewriteParams};
use crate::word::{BraidWord, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    R(usize),
    S(usize),
}

impl Symbol {
    pub fn level(self) -> usize {
        match self {
            Symbol::R(m) | Symbol::S(m) => m,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::R(m) => write!(f, "R{m}"),
            Symbol::S(m) => write!(f, "S{m}"),
        }
    }
}

/// A symbol raised to a nonzero power.
pub type SymbolPower = (Symbol, i64);

/// Letters of the flattened word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TwoGen {
    R,
    S,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlpRule {
    pub lhs: Symbol,
    pub rhs: Vec<SymbolPower>,
}

/// Appends `item` to a symbol sequence, merging and cancelling with the tail.
pub fn push_power(seq: &mut Vec<SymbolPower>, item: SymbolPower) {
    if item.1 == 0 {
        return;
    }
    match seq.last_mut() {
        Some((sym, e)) if *sym == item.0 => {
            *e += item.1;
            if *e == 0 {
                seq.pop();
            }
        }
        _ => seq.push(item),
    }
}

/// Formal inverse of a symbol sequence.
pub fn invert_powers(seq: &[SymbolPower]) -> Vec<SymbolPower> {
    seq.iter().rev().map(|&(s, e)| (s, -e)).collect()
}

/// The recurrence rules defining `S_m` and `R_m` for `m = 1..=depth`.
pub fn recurrence_rules(big_n: i64, depth: usize) -> Vec<SlpRule> {
    let mut rules = Vec::with_capacity(2 * depth);
    for m in 1..=depth {
        let (r, s) = (Symbol::R(m - 1), Symbol::S(m - 1));
        rules.push(SlpRule {
            lhs: Symbol::S(m),
            rhs: vec![(r, 1), (s, 1), (r, -1)],
        });
        rules.push(SlpRule {
            lhs: Symbol::R(m),
            rhs: vec![(r, 1), (s, big_n)],
        });
    }
    rules
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoGenSlp {
    pub params: RewriteParams,
    pub rules: Vec<SlpRule>,
    pub root: Vec<SymbolPower>,
}

impl TwoGenSlp {
    /// SLP with the recurrence rules up to `depth` and the given root.
    pub fn with_depth(params: RewriteParams, depth: usize, root: Vec<SymbolPower>) -> Self {
        TwoGenSlp {
            rules: recurrence_rules(params.big_n(), depth),
            params,
            root,
        }
    }

    /// Checks that base symbols are not redefined, every symbol is defined
    /// once, and every use comes after its definition.
    pub fn validate(&self) -> Result<()> {
        let mut defined = vec![Symbol::R(0), Symbol::S(0)];
        for (idx, rule) in self.rules.iter().enumerate() {
            let loc = format!("slp rule {}", idx + 1);
            for &(sym, _) in &rule.rhs {
                if !defined.contains(&sym) {
                    return Err(BraidError::parse(&loc, format!("{sym} used before definition")));
                }
            }
            if defined.contains(&rule.lhs) {
                return Err(BraidError::parse(&loc, format!("{} defined twice", rule.lhs)));
            }
            defined.push(rule.lhs);
        }
        for &(sym, _) in &self.root {
            if !defined.contains(&sym) {
                return Err(BraidError::parse("slp root", format!("{sym} is not defined")));
            }
        }
        Ok(())
    }

    /// Whether the rules are exactly the `R`/`S` recurrences, in order.
    pub fn is_recurrence(&self) -> bool {
        let depth = self.rules.len() / 2;
        self.rules.len().is_multiple_of(2) && self.rules == recurrence_rules(self.params.big_n(), depth)
    }

    /// Highest level defined by the rules.
    pub fn depth(&self) -> usize {
        self.rules.iter().map(|r| r.lhs.level()).max().unwrap_or(0)
    }

    /// Flat lengths of every symbol, saturating at `u128::MAX`.
    fn symbol_lengths(&self) -> HashMap<Symbol, u128> {
        let mut len = HashMap::new();
        len.insert(Symbol::R(0), 1u128);
        len.insert(Symbol::S(0), 1u128);
        for rule in &self.rules {
            let total = rule.rhs.iter().fold(0u128, |acc, &(sym, e)| {
                let l = len.get(&sym).copied().unwrap_or(0);
                acc.saturating_add(l.saturating_mul(e.unsigned_abs() as u128))
            });
            len.insert(rule.lhs, total);
        }
        len
    }

    pub fn symbol_flat_len(&self, sym: Symbol) -> Option<u128> {
        self.symbol_lengths().get(&sym).copied()
    }

    /// Length of the fully expanded root over `{R, S}`; saturates.
    pub fn flat_len(&self) -> u128 {
        let len = self.symbol_lengths();
        self.root.iter().fold(0u128, |acc, &(sym, e)| {
            let l = len.get(&sym).copied().unwrap_or(0);
            acc.saturating_add(l.saturating_mul(e.unsigned_abs() as u128))
        })
    }

    /// Fully expanded root, refusing if it would exceed `max_len` letters.
    pub fn flatten(&self, max_len: u128) -> Result<Vec<(TwoGen, Sign)>> {
        self.validate()?;
        let len = self.flat_len();
        if len > max_len {
            return Err(BraidError::TooLong { len, max: max_len });
        }
        let mut memo: HashMap<Symbol, Vec<(TwoGen, Sign)>> = HashMap::new();
        memo.insert(Symbol::R(0), vec![(TwoGen::R, Sign::Pos)]);
        memo.insert(Symbol::S(0), vec![(TwoGen::S, Sign::Pos)]);
        let needed = self.needed_symbols();
        for rule in &self.rules {
            if !needed.contains(&rule.lhs) {
                continue;
            }
            let mut out = Vec::new();
            for &(sym, e) in &rule.rhs {
                append_power(&mut out, &memo[&sym], e);
            }
            memo.insert(rule.lhs, out);
        }
        let mut out = Vec::with_capacity(len as usize);
        for &(sym, e) in &self.root {
            append_power(&mut out, &memo[&sym], e);
        }
        Ok(out)
    }

    /// Symbols reachable from the root.
    fn needed_symbols(&self) -> Vec<Symbol> {
        let mut needed: Vec<Symbol> = self.root.iter().map(|&(s, _)| s).collect();
        for rule in self.rules.iter().rev() {
            if needed.contains(&rule.lhs) {
                needed.extend(rule.rhs.iter().map(|&(s, _)| s));
            }
        }
        needed.sort();
        needed.dedup();
        needed
    }

    /// Artin word obtained by flattening and substituting `R ↦ r₀`, `S ↦ s₀`; free-reduced.
    pub fn artin_expansion(&self, max_flat_len: u128) -> Result<BraidWord> {
        let flat = self.flatten(max_flat_len)?;
        Ok(expand_two_gen(self.params, &flat))
    }

    /// Parses the line format produced by `Display`.
    pub fn parse(params: RewriteParams, text: &str) -> Result<Self> {
        let mut rules = Vec::new();
        let mut root = None;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let loc = format!("slp line {}", lineno + 1);
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| BraidError::parse(&loc, "expected `SYMBOL = ...`"))?;
            let rhs = parse_powers(rhs, &loc)?;
            if lhs.trim() == "ROOT" {
                if root.is_some() {
                    return Err(BraidError::parse(&loc, "ROOT given twice"));
                }
                root = Some(rhs);
            } else {
                if root.is_some() {
                    return Err(BraidError::parse(&loc, "rule after ROOT"));
                }
                rules.push(SlpRule {
                    lhs: parse_symbol(lhs.trim(), &loc)?,
                    rhs,
                });
            }
        }
        let slp = TwoGenSlp {
            params,
            rules,
            root: root.ok_or_else(|| BraidError::parse("slp", "missing ROOT line"))?,
        };
        slp.validate()?;
        Ok(slp)
    }

    /// One string per line, as used in certificates.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .rules
            .iter()
            .map(|r| format!("{} = {}", r.lhs, format_powers(&r.rhs)))
            .collect();
        let root = format_powers(&self.root);
        out.push(if root.is_empty() {
            "ROOT =".to_string()
        } else {
            format!("ROOT = {root}")
        });
        out
    }
}

impl fmt::Display for TwoGenSlp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.lines().join("\n"))
    }
}

fn append_power(out: &mut Vec<(TwoGen, Sign)>, base: &[(TwoGen, Sign)], e: i64) {
    for _ in 0..e.unsigned_abs() {
        if e > 0 {
            out.extend_from_slice(base);
        } else {
            out.extend(base.iter().rev().map(|&(g, s)| (g, s.flip())));
        }
    }
}

/// Substitutes `R ↦ r₀`, `S ↦ s₀` into a flat two-letter word; free-reduced.
pub fn expand_two_gen(params: RewriteParams, flat: &[(TwoGen, Sign)]) -> BraidWord {
    let r = r_word(params, 0);
    let s = s_word(params, 0);
    let (r_inv, s_inv) = (r.inverse(), s.inverse());
    let mut letters = Vec::new();
    for &(g, sign) in flat {
        let piece = match (g, sign) {
            (TwoGen::R, Sign::Pos) => &r,
            (TwoGen::R, Sign::Neg) => &r_inv,
            (TwoGen::S, Sign::Pos) => &s,
            (TwoGen::S, Sign::Neg) => &s_inv,
        };
        letters.extend_from_slice(piece.letters());
    }
    BraidWord::from_letters_unchecked(params.n(), letters).free_reduce()
}

fn parse_symbol(tok: &str, loc: &str) -> Result<Symbol> {
    let (kind, level) = tok.split_at(tok.chars().next().map_or(0, char::len_utf8));
    let level: usize = level
        .parse()
        .map_err(|_| BraidError::parse(loc, format!("bad symbol {tok:?}")))?;
    match kind {
        "R" => Ok(Symbol::R(level)),
        "S" => Ok(Symbol::S(level)),
        _ => Err(BraidError::parse(loc, format!("bad symbol {tok:?}"))),
    }
}

fn parse_powers(text: &str, loc: &str) -> Result<Vec<SymbolPower>> {
    text.split_whitespace()
        .map(|tok| {
            let (sym, e) = match tok.split_once('^') {
                Some((s, e)) => (
                    s,
                    e.parse::<i64>()
                        .map_err(|_| BraidError::parse(loc, format!("bad exponent in {tok:?}")))?,
                ),
                None => (tok, 1),
            };
            if e == 0 {
                return Err(BraidError::parse(loc, format!("zero exponent in {tok:?}")));
            }
            Ok((parse_symbol(sym, loc)?, e))
        })
        .collect()
}

fn format_powers(seq: &[SymbolPower]) -> String {
    seq.iter()
        .map(|&(s, e)| if e == 1 { s.to_string() } else { format!("{s}^{e}") })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, k: i64) -> RewriteParams {
        RewriteParams::new(n, k).unwrap()
    }

    #[test]
    fn flatten_examples() {
        let p = params(5, 2);
        let root_s = TwoGenSlp::with_depth(p, 0, vec![(Symbol::S(0), 1)]);
        assert_eq!(root_s.flatten(10).unwrap(), vec![(TwoGen::S, Sign::Pos)]);

        let root_r1 = TwoGenSlp::with_depth(p, 1, vec![(Symbol::R(1), 1)]);
        let flat = root_r1.flatten(100).unwrap();
        assert_eq!(flat.len(), 9);
        assert_eq!(flat[0], (TwoGen::R, Sign::Pos));
        assert!(flat[1..].iter().all(|&x| x == (TwoGen::S, Sign::Pos)));
    }

    #[test]
    fn deep_programs_refuse_to_flatten() {
        let p = params(10, 3);
        let slp = TwoGenSlp::with_depth(p, 8, vec![(Symbol::S(8), 1)]);
        assert!(slp.flat_len() > 1_000_000);
        assert!(matches!(slp.flatten(1_000_000), Err(BraidError::TooLong { .. })));
    }

    #[test]
    fn length_recurrences() {
        let p = params(7, 3);
        let slp = TwoGenSlp::with_depth(p, 6, vec![]);
        let big_n = p.big_n() as u128;
        for m in 0..6 {
            let r = slp.symbol_flat_len(Symbol::R(m)).unwrap();
            let s = slp.symbol_flat_len(Symbol::S(m)).unwrap();
            assert_eq!(slp.symbol_flat_len(Symbol::S(m + 1)).unwrap(), 2 * r + s);
            assert_eq!(slp.symbol_flat_len(Symbol::R(m + 1)).unwrap(), r + big_n * s);
        }
    }

    #[test]
    fn text_round_trip() {
        let p = params(5, 2);
        let slp = TwoGenSlp::with_depth(
            p,
            2,
            vec![(Symbol::S(0), 1), (Symbol::S(1), 1), (Symbol::S(2), -2)],
        );
        let text = slp.to_string();
        assert!(text.starts_with("S1 = R0 S0 R0^-1\nR1 = R0 S0^8\n"));
        assert!(text.ends_with("ROOT = S0 S1 S2^-2"));
        assert_eq!(TwoGenSlp::parse(p, &text).unwrap(), slp);
        assert!(slp.is_recurrence());

        let empty = TwoGenSlp::with_depth(p, 0, vec![]);
        assert_eq!(empty.to_string(), "ROOT =");
        assert_eq!(TwoGenSlp::parse(p, "ROOT =").unwrap(), empty);
    }

    #[test]
    fn parse_rejects_bad_programs() {
        let p = params(5, 2);
        assert!(TwoGenSlp::parse(p, "ROOT = S3").is_err());
        assert!(TwoGenSlp::parse(p, "S1 = R0 S0\n").is_err());
        assert!(TwoGenSlp::parse(p, "S0 = R0\nROOT = S0").is_err());
        assert!(TwoGenSlp::parse(p, "ROOT = X1").is_err());
        assert!(TwoGenSlp::parse(p, "ROOT = S0^0").is_err());
        let odd = TwoGenSlp::parse(p, "S1 = S0 R0\nROOT = S1").unwrap();
        assert!(!odd.is_recurrence());
    }

    #[test]
    fn push_power_merges() {
        let mut seq = Vec::new();
        push_power(&mut seq, (Symbol::S(0), 1));
        push_power(&mut seq, (Symbol::S(0), 2));
        assert_eq!(seq, vec![(Symbol::S(0), 3)]);
        push_power(&mut seq, (Symbol::S(0), -3));
        assert!(seq.is_empty());
        assert_eq!(
            invert_powers(&[(Symbol::R(0), 1), (Symbol::S(1), -2)]),
            vec![(Symbol::S(1), 2), (Symbol::R(0), -1)]
        );
    }
}
