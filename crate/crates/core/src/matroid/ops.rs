use super::construct::from_rank_table;
use super::{check_enumerable, Matroid, Provenance};
use crate::error::{Error, Result};
use crate::subset::{Subset, MAX_GROUND};

/// `map[e]` is the new index of `e` when keeping exactly the elements of `keep`.
fn compress_map(n: usize, keep: Subset) -> Vec<Option<usize>> {
    let mut next = 0;
    (0..n)
        .map(|e| {
            keep.contains(e).then(|| {
                next += 1;
                next - 1
            })
        })
        .collect()
}

fn and_representable(a: Option<bool>, b: Option<bool>) -> Option<bool> {
    match (a, b) {
        (Some(true), Some(true)) => Some(true),
        _ => None,
    }
}

impl Matroid {
    fn derived(&self, n: usize, flats: &[Subset]) -> Matroid {
        let rep = self.representable.filter(|&r| r);
        Matroid::from_flats_unchecked(n, flats, Provenance::Derived).with_representable(rep)
    }

    /// Bases of the dual are the complements of bases.
    pub fn dual(&self) -> Result<Matroid> {
        let table = self.rank_table()?;
        let n = self.n;
        let r = self.rank() as i64;
        let full = self.ground().bits();
        let dual: Vec<u8> = (0..table.len() as u64)
            .map(|a| (a.count_ones() as i64 - r + table[(full & !a) as usize] as i64) as u8)
            .collect();
        let rep = self.representable.filter(|&r| r);
        Ok(from_rank_table(n, &dual, Provenance::Derived).with_representable(rep))
    }

    /// `M|X`, re-indexed onto `0..|X|` in increasing order.
    pub fn restriction(&self, x: Subset) -> Result<Matroid> {
        Ok(self.restriction_with_map(x)?.0)
    }

    /// Restriction together with the old-to-new element map.
    pub fn restriction_with_map(&self, x: Subset) -> Result<(Matroid, Vec<Option<usize>>)> {
        self.check_subset(x)?;
        let map = compress_map(self.n, x);
        let flats: Vec<Subset> = self
            .flats
            .iter()
            .map(|p| p.intersection(x).remap(&map))
            .collect();
        Ok((self.derived(x.len(), &flats), map))
    }

    /// `M \ F = M|(E - F)`.
    pub fn deletion(&self, f: Subset) -> Result<Matroid> {
        self.check_subset(f)?;
        self.restriction(self.ground().difference(f))
    }

    /// `M/F` on `E - F`, with `rk(A) = rk_M(A ∪ F) - rk_M(F)`.
    pub fn contraction(&self, f: Subset) -> Result<Matroid> {
        Ok(self.contraction_with_map(f)?.0)
    }

    pub fn contraction_with_map(&self, f: Subset) -> Result<(Matroid, Vec<Option<usize>>)> {
        self.check_subset(f)?;
        let rest = self.ground().difference(f);
        let map = compress_map(self.n, rest);
        let flats: Vec<Subset> = self
            .flats
            .iter()
            .filter(|q| f.is_subset_of(**q))
            .map(|q| q.difference(f).remap(&map))
            .collect();
        Ok((self.derived(rest.len(), &flats), map))
    }

    /// Elements of `other` are shifted past those of `self`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        let n = self.n + other.n;
        if n > MAX_GROUND {
            return Err(Error::BadParameters(format!(
                "direct sum has {n} > {MAX_GROUND} elements"
            )));
        }
        let flats: Vec<Subset> = self
            .flats
            .iter()
            .flat_map(|p| {
                other
                    .flats
                    .iter()
                    .map(move |q| Subset(p.bits() | q.bits() << self.n))
            })
            .collect();
        Ok(
            Matroid::from_flats_unchecked(n, &flats, Provenance::Derived)
                .with_representable(and_representable(self.representable, other.representable)),
        )
    }

    /// The combinatorial geometry of `M`: loops dropped, parallel classes
    /// merged. `map[e]` is the new index of `e` (`None` for loops).
    pub fn simplify(&self) -> (Matroid, Vec<Option<usize>>) {
        let atoms = self.flats_of_rank(1);
        let bottom = self.loops();
        let map: Vec<Option<usize>> = (0..self.n)
            .map(|e| atoms.iter().position(|a| a.difference(bottom).contains(e)))
            .collect();
        let flats: Vec<Subset> = self
            .flats
            .iter()
            .map(|p| {
                atoms
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.is_subset_of(*p))
                    .fold(Subset::EMPTY, |s, (i, _)| s.with(i))
            })
            .collect();
        (self.derived(atoms.len(), &flats), map)
    }

    /// Truncation keeping the flats of rank at most `k + 1` and `E`; the result has rank `k + 2`.
    pub fn truncate(&self, k: usize) -> Result<Matroid> {
        if k + 2 > self.rank() {
            return Err(Error::BadParameters(format!(
                "truncation to rank {} of a rank-{} matroid",
                k + 2,
                self.rank()
            )));
        }
        let e = self.ground();
        let flats: Vec<Subset> = self
            .flats
            .iter()
            .zip(&self.ranks)
            .filter(|(p, &r)| r <= k + 1 || **p == e)
            .map(|(p, _)| *p)
            .collect();
        Ok(Matroid::from_flats_unchecked(
            self.n,
            &flats,
            Provenance::Derived,
        ))
    }

    /// Adds a new element `n` in general position (same rank).
    pub fn free_extension(&self) -> Result<Matroid> {
        let n = self.n + 1;
        check_enumerable(n)?;
        let table = self.rank_table()?;
        let r = self.rank() as u8;
        let new = 1u64 << self.n;
        let ext: Vec<u8> = (0..1u64 << n)
            .map(|s| {
                let old = table[(s & !new) as usize];
                if s & new == 0 {
                    old
                } else {
                    (old + 1).min(r)
                }
            })
            .collect();
        Ok(from_rank_table(n, &ext, Provenance::Derived))
    }

    /// Dual of the free extension of the dual; has rank `r(M) + 1`.
    pub fn free_coextension(&self) -> Result<Matroid> {
        self.dual()?.free_extension()?.dual()
    }
}
