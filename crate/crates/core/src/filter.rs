use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// An upward-closed set of nonempty flats.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Filter {
    /// Sorted in the `(rank, mask)` order of the matroid's flats.
    flats: Vec<Subset>,
}

impl Filter {
    pub fn new(m: &Matroid, flats: &[Subset]) -> Result<Filter> {
        if flats.is_empty() {
            return Err(Error::InvalidFilter("empty family".into()));
        }
        for &p in flats {
            if p.is_empty() {
                return Err(Error::InvalidFilter("contains the empty set".into()));
            }
            if !m.is_flat(p) {
                return Err(Error::InvalidFilter(format!("{p} is not a flat")));
            }
        }
        let mut sorted: Vec<Subset> = m
            .flats()
            .iter()
            .copied()
            .filter(|f| flats.contains(f))
            .collect();
        sorted.dedup();
        for &p in &sorted {
            if let Some(q) = m
                .flats()
                .iter()
                .find(|q| p.is_proper_subset_of(**q) && !sorted.contains(q))
            {
                return Err(Error::InvalidFilter(format!(
                    "{q} contains {p} but is missing"
                )));
            }
        }
        Ok(Filter { flats: sorted })
    }

    /// All nonempty flats.
    pub fn full(m: &Matroid) -> Filter {
        Filter {
            flats: m
                .flats()
                .iter()
                .copied()
                .filter(|f| !f.is_empty())
                .collect(),
        }
    }

    /// `{E}`.
    pub fn top(m: &Matroid) -> Filter {
        Filter {
            flats: vec![m.ground()],
        }
    }

    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn contains(&self, p: Subset) -> bool {
        self.flats.contains(&p)
    }

    pub fn is_full(&self, m: &Matroid) -> bool {
        *self == Filter::full(m)
    }

    /// Nonempty flats outside the filter all of whose proper overflats are in it.
    pub fn maximal_missing(&self, m: &Matroid) -> Vec<Subset> {
        m.flats()
            .iter()
            .copied()
            .filter(|&p| !p.is_empty() && !self.contains(p))
            .filter(|&p| {
                m.flats()
                    .iter()
                    .all(|&q| !p.is_proper_subset_of(q) || self.contains(q))
            })
            .collect()
    }

    /// `P ∪ {p}` for `p` maximal among the missing nonempty flats.
    pub fn flip(&self, m: &Matroid, p: Subset) -> Result<Filter> {
        if !self.maximal_missing(m).contains(&p) {
            return Err(Error::NotMaximalFlat(p));
        }
        let mut flats = self.flats.clone();
        flats.push(p);
        Filter::new(m, &flats)
    }

    /// Adds missing flats one at a time, highest rank first (ties by mask),
    /// until the filter is full. Returns the centers in order.
    pub fn flip_sequence_to_full(&self, m: &Matroid) -> Vec<Subset> {
        let mut cur = self.clone();
        let mut centers = Vec::new();
        loop {
            let cands = cur.maximal_missing(m);
            let Some(&p) = cands
                .iter()
                .max_by_key(|p| (m.rank_of(**p), std::cmp::Reverse(p.bits())))
            else {
                break;
            };
            centers.push(p);
            cur = cur.flip(m, p).expect("candidate is maximal");
        }
        centers
    }
}
