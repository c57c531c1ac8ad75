//! Index sets `S ⊆ {0, …, d-1}` labelling flag-vector entries.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::{Error, Result};

/// Largest dimension whose index sets fit the one-digit-per-index key format.
pub const MAX_FORM_DIM: usize = 10;

/// A subset of `{0, …, 31}` stored as a bitmask.
///
/// Ordering is by cardinality first, then lexicographic on the sorted
/// elements, so `∅ < {0} < {1} < {0,2} < {0,3} < {1,3} < {0,2,4}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct FlagSet(u32);

impl FlagSet {
    pub const EMPTY: FlagSet = FlagSet(0);

    pub fn from_bits(bits: u32) -> Self {
        FlagSet(bits)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn single(i: usize) -> Self {
        FlagSet(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn insert(self, i: usize) -> Self {
        FlagSet(self.0 | (1 << i))
    }

    pub fn remove(self, i: usize) -> Self {
        FlagSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 31 - self.0.leading_zeros() as usize)
    }

    pub fn is_subset(self, other: FlagSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: FlagSet) -> Self {
        FlagSet(self.0 | other.0)
    }

    /// Every element shifted up by `by`.
    pub fn shift(self, by: usize) -> Self {
        FlagSet(self.0 << by)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.0 & (1 << i) != 0)
    }

    pub fn fits(self, d: usize) -> bool {
        d >= 32 || self.0 >> d == 0
    }

    /// `{d-1-s : s ∈ S}`.
    pub fn reverse(self, d: usize) -> Self {
        self.iter().fold(FlagSet::EMPTY, |acc, s| acc.insert(d - 1 - s))
    }

    /// No two consecutive elements and nothing equal to `d-1`.
    pub fn is_sparse(self, d: usize) -> bool {
        self.0 & (self.0 >> 1) == 0 && (d == 0 || !self.contains(d - 1)) && self.fits(d)
    }

    /// All subsets of `{0, …, d-1}` in canonical order.
    pub fn all(d: usize) -> Vec<FlagSet> {
        let mut v: Vec<_> = (0..1u32 << d).map(FlagSet).collect();
        v.sort();
        v
    }

    /// All subsets of `self`, including `∅` and `self`.
    pub fn subsets(self) -> impl Iterator<Item = FlagSet> {
        let full = self.0;
        let mut sub = Some(full);
        std::iter::from_fn(move || {
            let cur = sub?;
            sub = if cur == 0 { None } else { Some((cur - 1) & full) };
            Some(FlagSet(cur))
        })
    }

    /// Concatenated-digit key, e.g. `"024"`; `""` for the empty set.
    pub fn key(self) -> String {
        self.iter().map(|i| char::from_digit(i as u32, 10).unwrap_or('?')).collect()
    }
}

impl Ord for FlagSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for FlagSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<usize> for FlagSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(FlagSet::EMPTY, FlagSet::insert)
    }
}

impl FromStr for FlagSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut set = FlagSet::EMPTY;
        let mut last = None;
        for ch in s.chars() {
            let i = ch
                .to_digit(10)
                .ok_or_else(|| Error::Parse(format!("bad index-set key {s:?}")))? as usize;
            if last.is_some_and(|l| l >= i) {
                return Err(Error::Parse(format!("index-set key {s:?} is not strictly increasing")));
            }
            last = Some(i);
            set = set.insert(i);
        }
        Ok(set)
    }
}

impl fmt::Display for FlagSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("∅")
        } else {
            f.write_str(&self.key())
        }
    }
}

impl fmt::Debug for FlagSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f_{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(k: &str) -> FlagSet {
        k.parse().unwrap()
    }

    #[test]
    fn ordering_is_cardinality_then_lex() {
        let mut v = [s("13"), s("024"), s(""), s("1"), s("03"), s("0"), s("02")];
        v.sort();
        let keys: Vec<_> = v.iter().map(|x| x.key()).collect();
        assert_eq!(keys, ["", "0", "1", "02", "03", "13", "024"]);
    }

    #[test]
    fn keys_round_trip_and_reject_junk() {
        assert_eq!(s("135").key(), "135");
        assert!("31".parse::<FlagSet>().is_err());
        assert!("1a".parse::<FlagSet>().is_err());
        assert!("11".parse::<FlagSet>().is_err());
    }

    #[test]
    fn sparse_and_reverse() {
        assert!(s("024").is_sparse(6));
        assert!(!s("024").is_sparse(5));
        assert!(!s("12").is_sparse(6));
        assert_eq!(s("02").reverse(5), s("24"));
        assert_eq!(s("13").reverse(5), s("13"));
    }

    #[test]
    fn subsets_enumerates_all() {
        assert_eq!(s("135").subsets().count(), 8);
        assert_eq!(FlagSet::EMPTY.subsets().count(), 1);
    }
}
