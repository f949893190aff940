//! Bigraded dimension tables and their collapses.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::laurent::LaurentPoly;

/// Finite map `(i, j) -> dimension`, absent keys meaning zero.
///
/// For Khovanov tables `i` is the homological and `j` the quantum grading.
/// Grid Floer tables reuse the type with `(maslov, alexander)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BigradedDims {
    entries: BTreeMap<(i32, i32), u64>,
}

/// Collapse of a bigraded table onto a single grading.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DeltaGradedDims {
    entries: BTreeMap<i32, u64>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableParseError {
    #[error("malformed table term `{0}`")]
    Term(String),
}

impl BigradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((i32, i32), u64)>) -> Self {
        let mut t = Self::new();
        for (k, d) in entries {
            t.add(k.0, k.1, d);
        }
        t
    }

    pub fn add(&mut self, i: i32, j: i32, d: u64) {
        if d == 0 {
            return;
        }
        *self.entries.entry((i, j)).or_insert(0) += d;
    }

    pub fn set(&mut self, i: i32, j: i32, d: u64) {
        if d == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), d);
        }
    }

    pub fn get(&self, i: i32, j: i32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Entries in `(i, j)` order.
    pub fn iter(&self) -> impl Iterator<Item = (i32, i32, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &d)| (i, j, d))
    }

    /// Applies a shift `[h]{q}`: the copy of `(i, j)` lands in `(i + h, j + q)`.
    pub fn shifted(&self, h: i32, q: i32) -> Self {
        Self { entries: self.entries.iter().map(|(&(i, j), &d)| ((i + h, j + q), d)).collect() }
    }

    /// `(i, j) -> (-i, -j)`.
    pub fn negated(&self) -> Self {
        Self { entries: self.entries.iter().map(|(&(i, j), &d)| ((-i, -j), d)).collect() }
    }

    /// Rows restricted to a single first grading.
    pub fn row(&self, i: i32) -> BTreeMap<i32, u64> {
        self.entries.range((i, i32::MIN)..=(i, i32::MAX)).map(|(&(_, j), &d)| (j, d)).collect()
    }

    pub fn first_gradings(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.entries.keys().map(|k| k.0).collect();
        v.dedup();
        v
    }

    /// Sum along `key(i, j)`.
    pub fn collapse(&self, key: impl Fn(i32, i32) -> i32) -> DeltaGradedDims {
        let mut out = DeltaGradedDims::default();
        for (&(i, j), &d) in &self.entries {
            *out.entries.entry(key(i, j)).or_insert(0) += d;
        }
        out
    }

    /// `sum (-1)^i d t^j`.
    pub fn euler(&self) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (&(i, j), &d) in &self.entries {
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            p.add_term(j, sign * d as i64);
        }
        p
    }

    /// Bar-Natan's text notation, e.g. `1^{-7}_{-13} 2^0_1`.
    pub fn to_text(&self) -> String {
        fn script(n: i32) -> String {
            let s = n.to_string();
            if s.len() > 1 {
                format!("{{{s}}}")
            } else {
                s
            }
        }
        self.entries.iter().map(|(&(i, j), &d)| format!("{d}^{}_{}", script(i), script(j))).collect::<Vec<_>>().join(" ")
    }

    /// Parses the notation produced by [`BigradedDims::to_text`]. Repeated
    /// terms accumulate, so `1^0_1 1^0_1` equals `2^0_1`.
    pub fn parse_text(text: &str) -> Result<Self, TableParseError> {
        fn num(s: &str) -> Option<i32> {
            s.trim().trim_start_matches('{').trim_end_matches('}').trim().parse().ok()
        }
        let mut t = Self::new();
        for term in text.split_whitespace() {
            let err = || TableParseError::Term(term.to_string());
            let (d, rest) = term.split_once('^').ok_or_else(err)?;
            let (i, j) = rest.split_once('_').ok_or_else(err)?;
            let d: u64 = d.parse().map_err(|_| err())?;
            t.add(num(i).ok_or_else(err)?, num(j).ok_or_else(err)?, d);
        }
        Ok(t)
    }
}

impl fmt::Display for BigradedDims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl DeltaGradedDims {
    pub fn from_entries(entries: impl IntoIterator<Item = (i32, u64)>) -> Self {
        let mut out = Self::default();
        for (k, d) in entries {
            if d > 0 {
                *out.entries.entry(k).or_insert(0) += d;
            }
        }
        out
    }

    pub fn get(&self, k: i32) -> u64 {
        self.entries.get(&k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, u64)> + '_ {
        self.entries.iter().map(|(&k, &d)| (k, d))
    }

    pub fn reflected(&self) -> Self {
        Self { entries: self.entries.iter().map(|(&k, &d)| (-k, d)).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let t = BigradedDims::from_entries([((0, -1), 1), ((0, 1), 1)]);
        assert_eq!(t.to_text(), "1^0_{-1} 1^0_1");
        assert_eq!(BigradedDims::parse_text(&t.to_text()).unwrap(), t);
        let u = BigradedDims::parse_text("1^{-7}_{-13} 2^0_{-1} 1^6_{11}").unwrap();
        assert_eq!(u.get(-7, -13), 1);
        assert_eq!(u.get(6, 11), 1);
        assert_eq!(u.total(), 4);
        assert!(BigradedDims::parse_text("1^0").is_err());
    }

    #[test]
    fn shifts_compose() {
        let t = BigradedDims::from_entries([((0, 1), 2), ((2, 5), 1)]);
        assert_eq!(t.shifted(1, 2).shifted(-3, 4), t.shifted(-2, 6));
    }

    #[test]
    fn collapse_preserves_total() {
        let t = BigradedDims::from_entries([((0, 1), 1), ((0, 3), 1), ((2, 5), 1), ((3, 9), 1)]);
        let d = t.collapse(|i, q| q - 2 * i);
        assert_eq!(d.total(), t.total());
        assert_eq!(d.get(1), 2);
        assert_eq!(d.get(3), 2);
        assert!(BigradedDims::new().collapse(|i, q| q - 2 * i).is_empty());
    }
}
