//! Bitmask subsets of a ground set `{0, .., n-1}` with `n <= 64`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// Largest ground set a [`Subset`] can address.
pub const MAX_GROUND: usize = 64;

/// A subset of the ground set, stored as a 64-bit mask.
///
/// Ordering is by mask value, which gives the deterministic "sorted by
/// subset mask" order used throughout the crate.
///
/// Serializes as the sorted list of its elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u64);

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let elems = Vec::<usize>::deserialize(d)?;
        if let Some(&e) = elems.iter().find(|&&e| e >= MAX_GROUND) {
            return Err(serde::de::Error::custom(format!(
                "element {e} out of range"
            )));
        }
        Ok(Subset::from_elems(elems))
    }
}

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full ground set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND, "ground set too large: {n}");
        if n == 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        debug_assert!(e < MAX_GROUND);
        Subset(1u64 << e)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        elems.into_iter().fold(Subset::EMPTY, |s, e| s.with(e))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        e < MAX_GROUND && self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn with(self, e: usize) -> Self {
        Subset(self.0 | 1u64 << e)
    }

    #[inline]
    pub fn without(self, e: usize) -> Self {
        Subset(self.0 & !(1u64 << e))
    }

    #[inline]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_proper_subset_of(self, other: Subset) -> bool {
        self != other && self.is_subset_of(other)
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest element, if any.
    pub fn min_elem(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// True when every element is `< n`.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(Subset::full(n))
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> SubsetsOf {
        SubsetsOf {
            universe: self.0,
            next: Some(0),
        }
    }

    /// Re-index through `map`: element `e` goes to `map[e]`, `None` drops it.
    pub fn remap(self, map: &[Option<usize>]) -> Subset {
        self.iter()
            .filter_map(|e| map.get(e).copied().flatten())
            .fold(Subset::EMPTY, |s, e| s.with(e))
    }
}

/// Iterator over the elements of a [`Subset`] in increasing order.
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Iterator over all subsets of a fixed mask.
pub struct SubsetsOf {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for SubsetsOf {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        // standard "next submask in increasing order" trick
        self.next = if cur == self.universe {
            None
        } else {
            Some(cur.wrapping_sub(self.universe) & self.universe)
        };
        Some(Subset(cur))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, e) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("malformed subset literal {0:?}")]
pub struct SubsetParseError(pub String);

impl FromStr for Subset {
    type Err = SubsetParseError;

    /// Parses `{0,2,5}`; whitespace is tolerated.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || SubsetParseError(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .ok_or_else(err)?;
        let mut out = Subset::EMPTY;
        for tok in inner.split(',') {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            let e: usize = tok.parse().map_err(|_| err())?;
            if e >= MAX_GROUND {
                return Err(err());
            }
            out = out.with(e);
        }
        Ok(out)
    }
}
