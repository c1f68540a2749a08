//! The graded Möbius algebra `B(M)` and the top-heavy property.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{is_log_concave, is_unimodal};
use crate::linalg::QMatrix;
use crate::matroid::Matroid;
use crate::par::Exec;
use crate::subset::Subset;

/// Basis `δ_P` over the flats, graded by rank, with
/// `δ_P δ_Q = δ_{P ∨ Q}` when ranks add and `0` otherwise.
#[derive(Debug, Clone)]
pub struct MoebiusAlgebra {
    matroid: Matroid,
    index: HashMap<Subset, usize>,
}

/// Sparse element of `B(M)`: flat index to coefficient.
pub type BElement = Vec<(usize, i64)>;

impl MoebiusAlgebra {
    pub fn new(m: &Matroid) -> Self {
        MoebiusAlgebra {
            matroid: m.clone(),
            index: m.flats().iter().enumerate().map(|(i, &f)| (f, i)).collect(),
        }
    }

    pub fn flat(&self, i: usize) -> Subset {
        self.matroid.flats()[i]
    }

    pub fn index_of(&self, p: Subset) -> Option<usize> {
        self.index.get(&p).copied()
    }

    pub fn degree_of(&self, i: usize) -> usize {
        self.matroid.flat_ranks()[i]
    }

    /// `dim B^k`, the number of rank-`k` flats.
    pub fn dims(&self) -> Vec<usize> {
        (0..=self.matroid.rank())
            .map(|k| self.matroid.flats_of_rank(k).len())
            .collect()
    }

    /// `δ_P δ_Q` as a basis index, or `None` for zero.
    pub fn basis_product(&self, p: usize, q: usize) -> Option<usize> {
        let join = self.matroid.closure(self.flat(p).union(self.flat(q)));
        let j = self.index[&join];
        (self.degree_of(p) + self.degree_of(q) == self.degree_of(j)).then_some(j)
    }

    pub fn mul(&self, a: &BElement, b: &BElement) -> Result<BElement> {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for &(p, x) in a {
            for &(q, y) in b {
                if let Some(j) = self.basis_product(p, q) {
                    let v = acc.entry(j).or_default();
                    *v = x
                        .checked_mul(y)
                        .and_then(|xy| v.checked_add(xy))
                        .ok_or(Error::Overflow)?;
                }
            }
        }
        let mut out: BElement = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// `λ = Σ_i δ_{<i>}` over the non-loop elements.
    pub fn lambda(&self) -> BElement {
        let m = &self.matroid;
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for i in (0..m.ground_size()).filter(|&i| !m.is_loop(i)) {
            *acc.entry(self.index[&m.closure(Subset::singleton(i))])
                .or_default() += 1;
        }
        let mut out: BElement = acc.into_iter().collect();
        out.sort_unstable();
        out
    }

    /// Matrix of `λ^{q-p} : B^p -> B^q`; rows are rank-`p` flats, columns
    /// rank-`q` flats, both in mask order.
    pub fn lambda_matrix(&self, p: usize, q: usize) -> Result<Vec<Vec<i64>>> {
        let m = &self.matroid;
        if p > q || q > m.rank() {
            return Err(Error::BadParameters(format!("need p <= q <= {}", m.rank())));
        }
        let cols = flats_by_mask(m, q);
        let col_of: HashMap<Subset, usize> =
            cols.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let lambda = self.lambda();
        flats_by_mask(m, p)
            .into_iter()
            .map(|f| {
                let mut x: BElement = vec![(self.index[&f], 1)];
                for _ in p..q {
                    x = self.mul(&x, &lambda)?;
                }
                let mut row = vec![0i64; cols.len()];
                for (j, c) in x {
                    row[col_of[&self.flat(j)]] = c;
                }
                Ok(row)
            })
            .collect()
    }
}

fn flats_by_mask(m: &Matroid, k: usize) -> Vec<Subset> {
    let mut v = m.flats_of_rank(k).to_vec();
    v.sort_by_key(|f| f.bits());
    v
}

/// An injection from rank-`p` flats into rank-`q` flats with `P ⊆ ι(P)`,
/// by augmenting paths in mask order.
pub fn flat_matching(m: &Matroid, p: usize, q: usize) -> Option<Vec<(Subset, Subset)>> {
    let left = flats_by_mask(m, p);
    let right = flats_by_mask(m, q);
    let adj: Vec<Vec<usize>> = left
        .iter()
        .map(|&a| {
            (0..right.len())
                .filter(|&j| a.is_subset_of(right[j]))
                .collect()
        })
        .collect();
    let mut owner: Vec<Option<usize>> = vec![None; right.len()];
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    for u in 0..left.len() {
        let mut seen = vec![false; right.len()];
        if !augment(u, &adj, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut pairs: Vec<(Subset, Subset)> = owner
        .iter()
        .enumerate()
        .filter_map(|(v, u)| u.map(|u| (left[u], right[v])))
        .collect();
    pairs.sort_by_key(|(a, _)| a.bits());
    Some(pairs)
}

#[derive(Debug, Clone, Serialize)]
pub struct TopHeavyReport {
    pub p: usize,
    pub q: usize,
    pub w_p: usize,
    pub w_q: usize,
    pub rank: usize,
    pub full_rank: bool,
    pub w_p_le_w_q: bool,
    pub matching: Option<Vec<(Subset, Subset)>>,
    /// Set when a matroid known to be representable fails either check.
    pub critical: bool,
}

impl TopHeavyReport {
    pub fn passed(&self) -> bool {
        self.full_rank && self.w_p_le_w_q && self.matching.is_some()
    }
}

/// Rank of `λ^{q-p}`, the Whitney comparison and the matching for one pair.
pub fn topheavy_check(m: &Matroid, p: usize, q: usize) -> Result<TopHeavyReport> {
    let r = m.rank();
    if q > r || p > q.min(r - q) {
        return Err(Error::BadParameters(format!("need p <= min(q, {r} - q)")));
    }
    let b = MoebiusAlgebra::new(m);
    let lam = b.lambda_matrix(p, q)?;
    let rank = if lam.is_empty() {
        0
    } else {
        QMatrix::from_i64(&lam).rank()
    };
    let dims = b.dims();
    let (w_p, w_q) = (dims[p], dims[q]);
    let matching = flat_matching(m, p, q);
    let full_rank = rank == w_p;
    let critical = m.known_representable() == Some(true) && (!full_rank || matching.is_none());
    Ok(TopHeavyReport {
        p,
        q,
        w_p,
        w_q,
        rank,
        full_rank,
        w_p_le_w_q: w_p <= w_q,
        matching,
        critical,
    })
}

/// Every pair `0 <= p <= min(q, r - q)`.
pub fn valid_pairs(m: &Matroid) -> Vec<(usize, usize)> {
    let r = m.rank();
    (0..=r)
        .flat_map(|q| (0..=q.min(r - q)).map(move |p| (p, q)))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct TopHeavySweep {
    pub whitney: Vec<usize>,
    pub whitney_log_concave: bool,
    pub whitney_unimodal: bool,
    pub pairs: Vec<TopHeavyReport>,
}

impl TopHeavySweep {
    pub fn all_passed(&self) -> bool {
        self.pairs.iter().all(TopHeavyReport::passed)
    }

    pub fn any_critical(&self) -> bool {
        self.pairs.iter().any(|r| r.critical)
    }

    /// Full rank of `λ^{q-p}` always came with a matching.
    pub fn rank_implies_matching(&self) -> bool {
        self.pairs
            .iter()
            .all(|r| !r.full_rank || r.matching.is_some())
    }
}

pub fn topheavy_sweep(m: &Matroid, exec: Exec) -> Result<TopHeavySweep> {
    let pairs = valid_pairs(m);
    let reports = exec
        .map(&pairs, |&(p, q)| topheavy_check(m, p, q))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let whitney = MoebiusAlgebra::new(m).dims();
    let w: Vec<i64> = whitney.iter().map(|&x| x as i64).collect();
    Ok(TopHeavySweep {
        whitney_log_concave: is_log_concave(&w),
        whitney_unimodal: is_unimodal(&w),
        whitney,
        pairs: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{fano, uniform};

    #[test]
    fn u23_algebra() {
        let m = uniform(2, 3).unwrap();
        let b = MoebiusAlgebra::new(&m);
        assert_eq!(b.dims(), vec![1, 3, 1]);
        assert_eq!(b.lambda_matrix(0, 1).unwrap(), vec![vec![1, 1, 1]]);
        assert_eq!(
            b.lambda_matrix(1, 1).unwrap(),
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        let p = b.index_of(Subset::singleton(0)).unwrap();
        assert_eq!(b.basis_product(p, p), None);
        let e = b.index_of(m.ground()).unwrap();
        assert_eq!(
            flat_matching(&m, 0, 2),
            Some(vec![(Subset::EMPTY, m.ground())])
        );
        assert_eq!(
            b.basis_product(b.index_of(Subset::EMPTY).unwrap(), e),
            Some(e)
        );
    }

    #[test]
    fn fano_points_to_lines() {
        let m = fano().unwrap();
        let b = MoebiusAlgebra::new(&m);
        assert_eq!(b.dims(), vec![1, 7, 7, 1]);
        let lam = b.lambda_matrix(1, 2).unwrap();
        // a point lies on 3 lines, each reached from 2 other points
        assert!(lam
            .iter()
            .all(|row| row.iter().filter(|&&x| x == 2).count() == 3));
        let rep = topheavy_check(&m, 1, 2).unwrap();
        assert!(rep.passed() && rep.matching.unwrap().len() == 7);
    }

    #[test]
    fn pairs_are_in_range() {
        let m = fano().unwrap();
        assert_eq!(
            valid_pairs(&m),
            vec![(0, 0), (0, 1), (1, 1), (0, 2), (1, 2), (0, 3)]
        );
        assert!(topheavy_check(&m, 2, 2).is_err());
    }
}
