//! Matroids stored by their complete, rank-graded family of flats.

mod builtin;
mod construct;
pub mod io;
mod ops;

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, FlatAxiom, Result};
use crate::subset::{Subset, MAX_GROUND};

pub use builtin::{boolean, builtin, c5, fano, fano_matrix, k4, uniform, vamos};
pub use construct::{FiniteFieldMatrix, Graph, MAX_ENUMERATED_GROUND};

/// How a matroid was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Flats,
    Bases,
    Circuits,
    Graph,
    Matrix,
    Derived,
}

#[derive(Clone)]
pub struct Matroid {
    n: usize,
    /// Sorted by `(rank, mask)`; index 0 is the bottom flat, the last one is E.
    flats: Vec<Subset>,
    ranks: Vec<usize>,
    /// `rank_start[k]..rank_start[k+1]` are the flats of rank `k`.
    rank_start: Vec<usize>,
    provenance: Provenance,
    representable: Option<bool>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.flats == other.flats
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.n)
            .field("rank", &self.rank())
            .field("flats", &self.flats)
            .finish()
    }
}

impl Matroid {
    /// Builds a matroid from its flats, validating both flat axioms.
    pub fn from_flats(n: usize, flats: &[Subset]) -> Result<Matroid> {
        validate_flats(n, flats)?;
        Ok(Matroid::from_flats_unchecked(n, flats, Provenance::Flats))
    }

    /// Fast path for families produced by trusted operations.
    pub(crate) fn from_flats_unchecked(
        n: usize,
        flats: &[Subset],
        provenance: Provenance,
    ) -> Matroid {
        let mut by_card: Vec<Subset> = flats.to_vec();
        by_card.sort_by_key(|s| (s.len(), s.bits()));
        by_card.dedup();
        // rank = length of the longest chain below
        let mut rank = vec![0usize; by_card.len()];
        for i in 0..by_card.len() {
            rank[i] = (0..i)
                .filter(|&j| by_card[j].is_proper_subset_of(by_card[i]))
                .map(|j| rank[j] + 1)
                .max()
                .unwrap_or(0);
        }
        let mut order: Vec<usize> = (0..by_card.len()).collect();
        order.sort_by_key(|&i| (rank[i], by_card[i].bits()));
        let flats: Vec<Subset> = order.iter().map(|&i| by_card[i]).collect();
        let ranks: Vec<usize> = order.iter().map(|&i| rank[i]).collect();
        let top = ranks.last().copied().unwrap_or(0);
        let mut rank_start = vec![0usize; top + 2];
        for k in 0..=top + 1 {
            rank_start[k] = ranks.partition_point(|&r| r < k);
        }
        Matroid {
            n,
            flats,
            ranks,
            rank_start,
            provenance,
            representable: None,
        }
    }

    pub(crate) fn with_representable(mut self, r: Option<bool>) -> Self {
        self.representable = r;
        self
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    /// `r(M)`, the rank of the ground set.
    pub fn rank(&self) -> usize {
        self.ranks.last().copied().unwrap_or(0)
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// `Some(true)` when built from a representation (or derived from
    /// representable ones), `Some(false)` for known non-representable
    /// instances, `None` when unknown.
    pub fn known_representable(&self) -> Option<bool> {
        self.representable
    }

    pub fn set_known_representable(&mut self, r: Option<bool>) {
        self.representable = r;
    }

    /// All flats, sorted by `(rank, mask)`.
    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn flat_ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn flats_of_rank(&self, k: usize) -> &[Subset] {
        if k + 1 >= self.rank_start.len() {
            return &[];
        }
        &self.flats[self.rank_start[k]..self.rank_start[k + 1]]
    }

    pub fn num_flats(&self) -> usize {
        self.flats.len()
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.flat_index(s).is_some()
    }

    /// Position of a flat in [`Matroid::flats`].
    pub fn flat_index(&self, s: Subset) -> Option<usize> {
        if !s.fits(self.n) {
            return None;
        }
        let (c, k) = self.closure_with_rank(s);
        if c != s {
            return None;
        }
        let start = self.rank_start[k];
        self.flats[start..self.rank_start[k + 1]]
            .binary_search(&s)
            .ok()
            .map(|i| i + start)
    }

    /// Smallest flat containing `s`.
    pub fn closure(&self, s: Subset) -> Subset {
        self.closure_with_rank(s).0
    }

    fn closure_with_rank(&self, s: Subset) -> (Subset, usize) {
        // in (rank, mask) order the first flat containing `s` is the
        // intersection of all of them
        self.flats
            .iter()
            .zip(&self.ranks)
            .find(|(f, _)| s.is_subset_of(**f))
            .map(|(f, r)| (*f, *r))
            .expect("ground set is a flat")
    }

    pub fn rank_of(&self, s: Subset) -> usize {
        self.closure_with_rank(s).1
    }

    pub fn corank_of(&self, s: Subset) -> usize {
        self.rank() - self.rank_of(s)
    }

    /// Rank of every subset of the ground set, indexed by mask.
    pub fn rank_table(&self) -> Result<Vec<u8>> {
        check_enumerable(self.n)?;
        let size = 1usize << self.n;
        let mut table = vec![0u8; size];
        for (mask, slot) in table.iter_mut().enumerate() {
            *slot = self.rank_of(Subset(mask as u64)) as u8;
        }
        Ok(table)
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank_of(s) == s.len()
    }

    pub fn loops(&self) -> Subset {
        self.flats[0]
    }

    pub fn has_loops(&self) -> bool {
        !self.loops().is_empty()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.loops().contains(e)
    }

    /// An element lying in every basis.
    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank_of(self.ground().without(e)) < self.rank()
    }

    /// Loop-free with singleton rank-one flats.
    pub fn is_simple(&self) -> bool {
        !self.has_loops() && self.flats_of_rank(1).iter().all(|p| p.len() == 1)
    }

    pub fn independent_sets(&self) -> Result<Vec<Subset>> {
        let table = self.rank_table()?;
        Ok(table
            .iter()
            .enumerate()
            .filter(|(m, &r)| (*m as u64).count_ones() as u8 == r)
            .map(|(m, _)| Subset(m as u64))
            .collect())
    }

    pub fn bases(&self) -> Result<Vec<Subset>> {
        let r = self.rank();
        Ok(self
            .independent_sets()?
            .into_iter()
            .filter(|s| s.len() == r)
            .collect())
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> Result<Vec<Subset>> {
        let table = self.rank_table()?;
        let indep = |m: u64| table[m as usize] as u32 == m.count_ones();
        Ok((0..table.len() as u64)
            .filter(|&m| m != 0 && !indep(m) && Subset(m).iter().all(|e| indep(m & !(1 << e))))
            .map(Subset)
            .collect())
    }

    /// `f_k` = number of independent sets of size `k`, for `k = 0..=r`.
    pub fn f_vector(&self) -> Result<Vec<u64>> {
        let mut f = vec![0u64; self.rank() + 1];
        for s in self.independent_sets()? {
            f[s.len()] += 1;
        }
        Ok(f)
    }

    /// `W_k` = number of flats of rank `k`.
    pub fn whitney_second(&self) -> Vec<u64> {
        (0..=self.rank())
            .map(|k| self.flats_of_rank(k).len() as u64)
            .collect()
    }

    pub(crate) fn check_subset(&self, s: Subset) -> Result<()> {
        if s.fits(self.n) {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange(format!(
                "{s} not within ground set of size {}",
                self.n
            )))
        }
    }
}

pub(crate) fn check_enumerable(n: usize) -> Result<()> {
    if n > MAX_ENUMERATED_GROUND {
        Err(Error::TooLarge(format!(
            "subset enumeration over {n} elements (limit {MAX_ENUMERATED_GROUND})"
        )))
    } else {
        Ok(())
    }
}

/// Checks both flat axioms, returning a witness on failure.
pub fn validate_flats(n: usize, flats: &[Subset]) -> Result<()> {
    if n > MAX_GROUND {
        return Err(Error::BadParameters(format!(
            "ground set of size {n} exceeds {MAX_GROUND}"
        )));
    }
    if flats.is_empty() {
        return Err(Error::BadParameters("empty flat family".into()));
    }
    if let Some(bad) = flats.iter().find(|f| !f.fits(n)) {
        return Err(Error::IndexOutOfRange(format!(
            "flat {bad} outside ground set of size {n}"
        )));
    }
    let ground = Subset::full(n);
    let set: HashSet<Subset> = flats.iter().copied().collect();
    if !set.contains(&ground) {
        return Err(Error::AxiomViolation {
            axiom: FlatAxiom::Intersection,
            detail: format!("ground set {ground} (the empty intersection) is not a flat"),
        });
    }
    let mut sorted: Vec<Subset> = set.iter().copied().collect();
    sorted.sort_by_key(|s| (s.len(), s.bits()));
    for (i, &p) in sorted.iter().enumerate() {
        for &q in &sorted[i + 1..] {
            if !set.contains(&p.intersection(q)) {
                return Err(Error::AxiomViolation {
                    axiom: FlatAxiom::Intersection,
                    detail: format!("{p} ∩ {q} = {} is not a flat", p.intersection(q)),
                });
            }
        }
    }
    let smallest_containing = |s: Subset| *sorted.iter().find(|f| s.is_subset_of(**f)).unwrap();
    for &p in &sorted {
        if p == ground {
            continue;
        }
        let candidates: Vec<Subset> = ground
            .difference(p)
            .iter()
            .map(|e| smallest_containing(p.with(e)))
            .collect();
        let covered = candidates
            .iter()
            .filter(|c| !candidates.iter().any(|d| d.is_proper_subset_of(**c)))
            .fold(p, |acc, c| acc.union(*c));
        if covered != ground {
            let missing = ground.difference(covered).min_elem().unwrap();
            return Err(Error::AxiomViolation {
                axiom: FlatAxiom::Cover,
                detail: format!("minimal flats above {p} miss element {missing}"),
            });
        }
    }
    Ok(())
}
