//! Formal sums of words in `a` and `a*`, normal ordering, and their
//! realization as spans built from the ladder spans.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::Ladder;
use crate::error::{Error, Result};
use crate::groupoid::discrete;
use crate::span::{compose_reduced, identity_span, scalar, sum, zero_span, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// `a`
    Annihilate,
    /// `a*`
    Create,
}

/// A product of letters, leftmost applied last.
pub type Word = Vec<Letter>;

fn word_to_string(w: &[Letter]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|l| if *l == Letter::Annihilate { "a" } else { "a*" }).collect()
}

fn parse_word(s: &str) -> Result<Word> {
    if s == "1" {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    let mut chars = s.chars().peekable();
    while let Some(c) = chars.next() {
        if c != 'a' {
            return Err(Error::Parse(format!("unexpected '{c}' in word {s:?}")));
        }
        if chars.peek() == Some(&'*') {
            chars.next();
            out.push(Letter::Create);
        } else {
            out.push(Letter::Annihilate);
        }
    }
    Ok(out)
}

/// Words with positive natural-number coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FormalOperatorSum {
    terms: BTreeMap<Word, u64>,
}

impl FormalOperatorSum {
    pub fn word(w: Word) -> Self {
        let mut s = Self::default();
        s.add_term(w, 1);
        s
    }

    pub fn add_term(&mut self, w: Word, coefficient: u64) {
        if coefficient > 0 {
            *self.terms.entry(w).or_insert(0) += coefficient;
        }
    }

    pub fn terms(&self) -> &BTreeMap<Word, u64> {
        &self.terms
    }

    pub fn coefficient(&self, w: &[Letter]) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// `self · other`, concatenating words.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (u, &x) in &self.terms {
            for (v, &y) in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.add_term(w, x * y);
            }
        }
        out
    }

    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }
}

impl fmt::Display for FormalOperatorSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, &c)| if c == 1 { word_to_string(w) } else { format!("{c}·{}", word_to_string(w)) })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for FormalOperatorSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, u64> = self.terms.iter().map(|(w, &c)| (word_to_string(w), c)).collect();
        map.serialize(serializer)
    }
}

/// Parses `"a*a + 2·aa + 1"`-style sums; `1` is the empty word.
impl FromStr for FormalOperatorSum {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Self::default();
        let s = s.trim();
        if s == "0" || s.is_empty() {
            return Ok(out);
        }
        for term in s.split('+') {
            let term = term.trim();
            let digits = term.chars().take_while(char::is_ascii_digit).count();
            let coefficient = if digits == 0 {
                1
            } else {
                term[..digits].parse().map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?
            };
            let rest = term[digits..].trim_start();
            let word = if digits > 0 { rest.trim_start_matches(['·', '*']).trim() } else { rest };
            let word = if word.is_empty() { "1" } else { word };
            out.add_term(parse_word(word)?, coefficient);
        }
        Ok(out)
    }
}

/// Expands `(a + a*)ⁿ` and moves every `a*` to the left of every `a` in
/// each word, without commutator corrections.
pub fn normal_order(n: usize) -> FormalOperatorSum {
    let mut out = FormalOperatorSum::default();
    for mask in 0u64..(1u64 << n) {
        let creations = mask.count_ones() as usize;
        let mut w = vec![Letter::Create; creations];
        w.extend(std::iter::repeat(Letter::Annihilate).take(n - creations));
        out.add_term(w, 1);
    }
    out
}

/// Builds the span of a formal sum: each word is a composite of ladder
/// spans, each coefficient `k` a product with the discrete groupoid on `k`
/// objects, and the terms are added. Composites use skeletal weak
/// pullbacks and share common suffixes.
pub fn realize(s: &FormalOperatorSum, ladder: &Ladder) -> Result<Span> {
    let e = &ladder.sets.groupoid;
    let letter_span = |l: Letter| if l == Letter::Annihilate { &ladder.annihilation } else { &ladder.creation };
    let mut suffixes: HashMap<Word, Span> = HashMap::new();
    let mut suffix_span = |w: &[Letter]| -> Result<Span> {
        if w.is_empty() {
            return Ok(identity_span(e));
        }
        let last = w.len() - 1;
        let mut current = letter_span(w[last]).clone();
        for k in (0..last).rev() {
            let key = w[k..].to_vec();
            current = match suffixes.get(&key) {
                Some(span) => span.clone(),
                None => {
                    let span = compose_reduced(letter_span(w[k]), &current)?;
                    suffixes.insert(key, span.clone());
                    span
                }
            };
        }
        Ok(current)
    };
    let mut total: Option<Span> = None;
    for (w, &k) in s.terms() {
        let mut term = suffix_span(w)?;
        if k > 1 {
            term = scalar(&Arc::new(discrete(k as usize)), &term);
        }
        total = Some(match total {
            None => term,
            Some(acc) => sum(&acc, &term)?,
        });
    }
    Ok(total.unwrap_or_else(|| zero_span(e, e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Letter::{Annihilate as A, Create as C};

    #[test]
    fn listed_normal_orders() {
        assert_eq!(normal_order(0), "1".parse().unwrap());
        assert_eq!(normal_order(1), "a + a*".parse().unwrap());
        assert_eq!(normal_order(2), "aa + 2·a*a + a*a*".parse().unwrap());
        assert_eq!(normal_order(3), "aaa + 3·a*aa + 3·a*a*a + a*a*a*".parse().unwrap());
        assert_eq!(normal_order(2).coefficient(&[C, A]), 2);
    }

    #[test]
    fn display_and_parse_roundtrip() {
        let s = normal_order(4);
        assert_eq!(s.to_string().parse::<FormalOperatorSum>().unwrap(), s);
        assert_eq!(serde_json::to_string(&normal_order(2)).unwrap(), r#"{"a*a":2,"a*a*":1,"aa":1}"#);
        assert!("b".parse::<FormalOperatorSum>().is_err());
    }

    #[test]
    fn product_concatenates() {
        let p = FormalOperatorSum::word(vec![A]).product(&FormalOperatorSum::word(vec![C]));
        assert_eq!(p, "aa*".parse().unwrap());
    }
}
