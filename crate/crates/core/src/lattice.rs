//! Lattice of flats, Möbius function and characteristic polynomials.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rat_frac, Rational};
use crate::matroid::Matroid;
use crate::poly::IntPolynomial;
use crate::subset::Subset;

/// The flats of a matroid as a ranked lattice. Index 0 is the bottom and
/// the last index the top; indices follow the `(rank, mask)` order of
/// [`Matroid::flats`], which is a linear extension of the partial order.
#[derive(Debug, Clone)]
pub struct FlatLattice {
    flats: Vec<Subset>,
    ranks: Vec<usize>,
    index: HashMap<Subset, usize>,
    covers: Vec<Vec<usize>>,
}

impl FlatLattice {
    pub fn new(m: &Matroid) -> FlatLattice {
        let flats = m.flats().to_vec();
        let ranks = m.flat_ranks().to_vec();
        let index = flats.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let covers = (0..flats.len())
            .map(|i| {
                (i + 1..flats.len())
                    .filter(|&j| ranks[j] == ranks[i] + 1 && flats[i].is_subset_of(flats[j]))
                    .collect()
            })
            .collect();
        FlatLattice {
            flats,
            ranks,
            index,
            covers,
        }
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    pub fn flat(&self, i: usize) -> Subset {
        self.flats[i]
    }

    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks[i]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    pub fn index_of(&self, s: Subset) -> Option<usize> {
        self.index.get(&s).copied()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.flats[i].is_subset_of(self.flats[j])
    }

    /// Flats covering `i`.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        let u = self.flats[i].union(self.flats[j]);
        (i.max(j)..self.len())
            .find(|&k| u.is_subset_of(self.flats[k]))
            .expect("top contains everything")
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.index[&self.flats[i].intersection(self.flats[j])]
    }

    /// Full Möbius table over all intervals.
    pub fn moebius(&self) -> MoebiusTable {
        moebius_poset(self.len(), |x, y| self.leq(x, y))
    }

    /// `μ(bottom, y)` for every `y`.
    pub fn moebius_from_bottom(&self) -> Vec<i64> {
        let m = self.len();
        let mut row = vec![0i64; m];
        for y in 0..m {
            row[y] = if y == 0 {
                1
            } else {
                -(0..y)
                    .filter(|&z| self.leq(z, y))
                    .map(|z| row[z])
                    .sum::<i64>()
            };
        }
        row
    }

    /// `Σ_{x : x ∨ a = top} μ(bottom, x) = 0` for `a` above the bottom.
    pub fn weisner_check(&self, a: usize) -> bool {
        let mu = self.moebius_from_bottom();
        let top = self.top();
        (0..self.len())
            .filter(|&x| self.join(x, a) == top)
            .map(|x| mu[x])
            .sum::<i64>()
            == 0
    }

    /// `(-1)^{rk y - rk x} μ(x, y) >= 0` on every interval.
    pub fn moebius_sign_check(&self) -> bool {
        let table = self.moebius();
        (0..self.len()).all(|x| {
            (x..self.len()).filter(|&y| self.leq(x, y)).all(|y| {
                let sign = if (self.ranks[y] - self.ranks[x]).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                sign * table.get(x, y) >= 0
            })
        })
    }

    /// Every maximal chain has length equal to the rank of the top.
    pub fn is_graded(&self) -> bool {
        (0..self.len()).all(|i| {
            self.covers[i]
                .iter()
                .all(|&j| self.ranks[j] == self.ranks[i] + 1)
        }) && (0..self.top()).all(|i| !self.covers[i].is_empty())
    }
}

/// Möbius function of a finite poset on `0..size` whose index order is a
/// linear extension of `leq`.
pub fn moebius_poset(size: usize, leq: impl Fn(usize, usize) -> bool) -> MoebiusTable {
    let m = size;
    let mut vals = vec![0i64; m * m];
    for x in 0..m {
        vals[x * m + x] = 1;
        for y in x + 1..m {
            if !leq(x, y) {
                continue;
            }
            let s: i64 = (x..y)
                .filter(|&z| leq(x, z) && leq(z, y))
                .map(|z| vals[x * m + z])
                .sum();
            vals[x * m + y] = -s;
        }
    }
    MoebiusTable { m, vals }
}

/// Values `μ(x, y)`; zero when `x` is not below `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoebiusTable {
    m: usize,
    vals: Vec<i64>,
}

impl MoebiusTable {
    pub fn get(&self, x: usize, y: usize) -> i64 {
        self.vals[x * self.m + y]
    }

    pub fn as_incidence(&self, lattice: &FlatLattice) -> IncidenceFn {
        IncidenceFn::from_fn(lattice, |x, y| self.get(x, y))
    }
}

/// An element of the incidence algebra of a [`FlatLattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceFn {
    m: usize,
    vals: Vec<i64>,
}

impl IncidenceFn {
    /// Samples `f` on comparable pairs only.
    pub fn from_fn(lattice: &FlatLattice, f: impl Fn(usize, usize) -> i64) -> IncidenceFn {
        let m = lattice.len();
        let mut vals = vec![0; m * m];
        for x in 0..m {
            for y in x..m {
                if lattice.leq(x, y) {
                    vals[x * m + y] = f(x, y);
                }
            }
        }
        IncidenceFn { m, vals }
    }

    pub fn zeta(lattice: &FlatLattice) -> IncidenceFn {
        IncidenceFn::from_fn(lattice, |_, _| 1)
    }

    pub fn delta(lattice: &FlatLattice) -> IncidenceFn {
        IncidenceFn::from_fn(lattice, |x, y| i64::from(x == y))
    }

    pub fn get(&self, x: usize, y: usize) -> i64 {
        self.vals[x * self.m + y]
    }

    /// `(φ * ψ)(x, y) = Σ_{x ≤ z ≤ y} φ(x, z) ψ(z, y)`.
    pub fn convolve(&self, other: &IncidenceFn, lattice: &FlatLattice) -> IncidenceFn {
        IncidenceFn::from_fn(lattice, |x, y| {
            (x..=y)
                .filter(|&z| lattice.leq(x, z) && lattice.leq(z, y))
                .map(|z| self.get(x, z) * other.get(z, y))
                .sum()
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharPolyAlgorithm {
    SubsetSum,
    Moebius,
    DeletionContraction,
}

impl CharPolyAlgorithm {
    pub const ALL: [CharPolyAlgorithm; 3] = [
        CharPolyAlgorithm::SubsetSum,
        CharPolyAlgorithm::Moebius,
        CharPolyAlgorithm::DeletionContraction,
    ];
}

pub fn char_poly(m: &Matroid, algorithm: CharPolyAlgorithm) -> Result<IntPolynomial> {
    match algorithm {
        CharPolyAlgorithm::SubsetSum => char_poly_subset_sum(m),
        CharPolyAlgorithm::Moebius => Ok(char_poly_moebius(m)),
        CharPolyAlgorithm::DeletionContraction => char_poly_deletion_contraction(m),
    }
}

/// `Σ_{A ⊆ E} (-1)^{|A|} T^{r - rk A}`.
pub fn char_poly_subset_sum(m: &Matroid) -> Result<IntPolynomial> {
    let table = m.rank_table()?;
    let r = m.rank();
    let mut coeffs = vec![0i64; r + 1];
    for (mask, &rk) in table.iter().enumerate() {
        let sign = if (mask as u64).count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        };
        coeffs[r - rk as usize] += sign;
    }
    Ok(IntPolynomial::new(coeffs))
}

/// `Σ_P μ(∅, P) T^{cork P}`, and zero when `M` has loops.
pub fn char_poly_moebius(m: &Matroid) -> IntPolynomial {
    if m.has_loops() {
        return IntPolynomial::zero();
    }
    let lattice = FlatLattice::new(m);
    let mu = lattice.moebius_from_bottom();
    let r = m.rank();
    let mut coeffs = vec![0i64; r + 1];
    for (i, v) in mu.iter().enumerate() {
        coeffs[r - lattice.rank(i)] += v;
    }
    IntPolynomial::new(coeffs)
}

/// Deletion–contraction on the smallest element that is neither a loop
/// nor a coloop; coloops split off as factors `T - 1`.
pub fn char_poly_deletion_contraction(m: &Matroid) -> Result<IntPolynomial> {
    let mut memo = HashMap::new();
    dc(m, &mut memo)
}

fn dc(
    m: &Matroid,
    memo: &mut HashMap<(usize, Vec<Subset>), IntPolynomial>,
) -> Result<IntPolynomial> {
    if m.has_loops() {
        return Ok(IntPolynomial::zero());
    }
    let key = (m.ground_size(), m.flats().to_vec());
    if let Some(p) = memo.get(&key) {
        return Ok(p.clone());
    }
    let coloops = Subset::from_elems((0..m.ground_size()).filter(|&e| m.is_coloop(e)));
    let result = if !coloops.is_empty() {
        let rest = dc(&m.deletion(coloops)?, memo)?;
        &IntPolynomial::t_minus_one().pow(coloops.len() as u32) * &rest
    } else if m.ground_size() == 0 {
        IntPolynomial::one()
    } else {
        // no loops and no coloops: element 0 qualifies
        let e = Subset::singleton(0);
        let del = dc(&m.deletion(e)?, memo)?;
        let con = dc(&m.contraction(e)?, memo)?;
        &del - &con
    };
    memo.insert(key, result.clone());
    Ok(result)
}

/// `χ_M(T) / (T - 1)`; needs a nonempty ground set.
pub fn reduced_char_poly(m: &Matroid) -> Result<IntPolynomial> {
    if m.ground_size() == 0 {
        return Err(Error::BadParameters(
            "reduced characteristic polynomial of the empty matroid".into(),
        ));
    }
    Ok(char_poly_moebius(m).div_t_minus_one()?)
}

/// `(μ^0, .., μ^{r})` with `r = rk(M) - 1`: the coefficients of the reduced
/// characteristic polynomial with alternating signs removed.
pub fn mu_vector(m: &Matroid) -> Result<Vec<i64>> {
    if m.has_loops() {
        return Err(Error::HasLoops);
    }
    if m.rank() == 0 {
        return Err(Error::BadParameters(
            "rank-zero matroid has no reduced coefficients".into(),
        ));
    }
    Ok(reduced_char_poly(m)?.alternating_magnitudes(m.rank() - 1))
}

/// `w_k = |[T^{r-k}] χ_M|`.
pub fn whitney_first(m: &Matroid) -> Vec<i64> {
    char_poly_moebius(m)
        .alternating_magnitudes(m.rank())
        .into_iter()
        .map(i64::abs)
        .collect()
}

pub fn whitney_second(m: &Matroid) -> Vec<i64> {
    m.whitney_second().into_iter().map(|w| w as i64).collect()
}

/// `Σ_k (-1)^k f_k T^{r-k}`, the polynomial matched by the reduced
/// characteristic polynomial of the free coextension.
pub fn f_vector_polynomial(f: &[u64]) -> IntPolynomial {
    let r = f.len().saturating_sub(1);
    let mut coeffs = vec![0i64; f.len()];
    for (k, &fk) in f.iter().enumerate() {
        coeffs[r - k] = if k % 2 == 0 { fk as i64 } else { -(fk as i64) };
    }
    IntPolynomial::new(coeffs)
}

/// How the "minimum element" condition on descending flags is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlagInterpretation {
    /// Minima strictly decrease and the least element of the order lies in
    /// none of the flats.
    ExcludeLeast,
    /// Minima strictly decrease, no further condition.
    Unrestricted,
}

/// Flags `P_1 ⊂ .. ⊂ P_k` of flats with `rk P_j = j` whose minima (under
/// `order`, listing the elements from least to greatest) strictly decrease.
pub fn descending_flag_count(
    m: &Matroid,
    k: usize,
    order: &[usize],
    interpretation: FlagInterpretation,
) -> Result<u64> {
    let n = m.ground_size();
    let mut pos = vec![usize::MAX; n];
    for (i, &e) in order.iter().enumerate() {
        if e >= n || pos[e] != usize::MAX {
            return Err(Error::BadParameters(
                "order is not a permutation of the ground set".into(),
            ));
        }
        pos[e] = i;
    }
    if order.len() != n {
        return Err(Error::BadParameters(
            "order is not a permutation of the ground set".into(),
        ));
    }
    if k == 0 {
        return Ok(1);
    }
    let lattice = FlatLattice::new(m);
    let forbidden = match (interpretation, order.first()) {
        (FlagInterpretation::ExcludeLeast, Some(&least)) => Subset::singleton(least),
        _ => Subset::EMPTY,
    };
    let min_pos = |s: Subset| s.iter().map(|e| pos[e]).min().unwrap_or(usize::MAX);

    fn extend(
        lattice: &FlatLattice,
        at: usize,
        depth: usize,
        k: usize,
        forbidden: Subset,
        min_pos: &dyn Fn(Subset) -> usize,
    ) -> u64 {
        if depth == k {
            return 1;
        }
        let below = min_pos(lattice.flat(at));
        lattice
            .upper_covers(at)
            .iter()
            .filter(|&&q| {
                let f = lattice.flat(q);
                f.intersection(forbidden).is_empty() && min_pos(f) < below
            })
            .map(|&q| extend(lattice, q, depth + 1, k, forbidden, min_pos))
            .sum()
    }

    Ok(lattice
        .upper_covers(lattice.bottom())
        .iter()
        .filter(|&&p| lattice.flat(p).intersection(forbidden).is_empty())
        .map(|&p| extend(&lattice, p, 1, k, forbidden, &min_pos))
        .sum())
}

/// Interpretations whose counts reproduce `μ^k` for every `k`, using the
/// natural order of the ground set.
pub fn matching_flag_interpretations(m: &Matroid) -> Result<Vec<FlagInterpretation>> {
    let mu = mu_vector(m)?;
    let order: Vec<usize> = (0..m.ground_size()).collect();
    let mut out = Vec::new();
    for interp in [
        FlagInterpretation::ExcludeLeast,
        FlagInterpretation::Unrestricted,
    ] {
        let mut ok = true;
        for (k, &mk) in mu.iter().enumerate() {
            if descending_flag_count(m, k, &order, interp)? as i64 != mk {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(interp);
        }
    }
    Ok(out)
}

pub fn is_log_concave(a: &[i64]) -> bool {
    a.windows(3)
        .all(|w| (w[0] as i128) * (w[2] as i128) <= (w[1] as i128) * (w[1] as i128))
}

pub fn is_positive(a: &[i64]) -> bool {
    a.iter().all(|&x| x > 0)
}

/// Weakly increases, then weakly decreases.
pub fn is_unimodal(a: &[i64]) -> bool {
    let peak = a
        .windows(2)
        .position(|w| w[1] < w[0])
        .map_or(a.len(), |i| i + 1);
    a[peak.min(a.len())..].windows(2).all(|w| w[1] <= w[0])
}

/// One quotient `f_k^2 / (f_{k-1} f_{k+1})` against the bound `(k+1)/k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MasonRatio {
    pub k: usize,
    pub ratio: String,
    pub bound: String,
    pub meets_bound: bool,
    #[serde(skip)]
    pub exact: Rational,
}

/// Quotients for `1 <= k < r`; terms with `f_{k+1} = 0` are skipped.
pub fn mason_ratios(f: &[u64]) -> Vec<MasonRatio> {
    (1..f.len().saturating_sub(1))
        .filter(|&k| f[k - 1] * f[k + 1] != 0)
        .map(|k| {
            let num = (f[k] as i128) * (f[k] as i128);
            let den = (f[k - 1] as i128) * (f[k + 1] as i128);
            let exact = Rational::new(num.into(), den.into());
            let bound = rat_frac(k as i64 + 1, k as i64);
            MasonRatio {
                k,
                ratio: exact.to_string(),
                bound: bound.to_string(),
                meets_bound: exact >= bound,
                exact,
            }
        })
        .collect()
}

/// The smallest quotient, if any.
pub fn mason_min_ratio(f: &[u64]) -> Option<MasonRatio> {
    mason_ratios(f)
        .into_iter()
        .min_by(|a, b| a.exact.cmp(&b.exact))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{boolean, fano, k4, uniform};

    #[test]
    fn u23_lattice() {
        let m = uniform(2, 3).unwrap();
        let l = FlatLattice::new(&m);
        assert_eq!(l.len(), 5);
        assert!(l.is_graded());
        assert_eq!(l.moebius().get(l.bottom(), l.top()), 2);
        assert!(l.weisner_check(1));
        assert_eq!(l.join(1, 2), l.top());
        assert_eq!(l.meet(1, 2), l.bottom());
    }

    #[test]
    fn chain_of_length_two() {
        let t = moebius_poset(3, |x, y| x <= y);
        assert_eq!((t.get(0, 1), t.get(0, 2)), (-1, 0));
    }

    #[test]
    fn convolution_inverse() {
        let m = fano().unwrap();
        let l = FlatLattice::new(&m);
        let mu = l.moebius().as_incidence(&l);
        assert_eq!(
            mu.convolve(&IncidenceFn::zeta(&l), &l),
            IncidenceFn::delta(&l)
        );
        assert_eq!(
            IncidenceFn::zeta(&l).convolve(&mu, &l),
            IncidenceFn::delta(&l)
        );
    }

    #[test]
    fn base_cases() {
        let one = uniform(1, 1).unwrap();
        for a in CharPolyAlgorithm::ALL {
            assert_eq!(
                char_poly(&one, a).unwrap(),
                IntPolynomial::from(vec![-1, 1])
            );
        }
        let lp = uniform(0, 1).unwrap();
        for a in CharPolyAlgorithm::ALL {
            assert!(char_poly(&lp, a).unwrap().is_zero());
        }
    }

    #[test]
    fn small_polynomials() {
        let m = uniform(2, 3).unwrap();
        assert_eq!(
            char_poly_subset_sum(&m).unwrap(),
            IntPolynomial::from(vec![2, -3, 1])
        );
        assert_eq!(
            reduced_char_poly(&m).unwrap(),
            IntPolynomial::from(vec![-2, 1])
        );
        assert_eq!(mu_vector(&m).unwrap(), vec![1, 2]);
        assert_eq!(whitney_first(&m), vec![1, 3, 2]);
        assert_eq!(mu_vector(&k4().unwrap()).unwrap(), vec![1, 5, 6]);
        assert_eq!(mu_vector(&boolean(1).unwrap()).unwrap(), vec![1]);
    }

    #[test]
    fn fano_algorithms_agree() {
        let m = fano().unwrap();
        let polys: Vec<_> = CharPolyAlgorithm::ALL
            .iter()
            .map(|&a| char_poly(&m, a).unwrap())
            .collect();
        assert!(polys.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(mu_vector(&m).unwrap(), vec![1, 6, 8]);
    }

    #[test]
    fn boolean_signs_alternate() {
        let m = boolean(3).unwrap();
        let l = FlatLattice::new(&m);
        let t = l.moebius();
        for x in 0..l.len() {
            for y in 0..l.len() {
                if l.leq(x, y) {
                    let d = l.flat(y).len() - l.flat(x).len();
                    assert_eq!(t.get(x, y), if d.is_multiple_of(2) { 1 } else { -1 });
                }
            }
        }
        assert!(l.moebius_sign_check());
    }

    #[test]
    fn descending_flags() {
        let ord3: Vec<usize> = (0..3).collect();
        let u23 = uniform(2, 3).unwrap();
        assert_eq!(
            descending_flag_count(&u23, 0, &ord3, FlagInterpretation::ExcludeLeast).unwrap(),
            1
        );
        assert_eq!(
            descending_flag_count(&u23, 1, &ord3, FlagInterpretation::ExcludeLeast).unwrap(),
            2
        );
        let f = fano().unwrap();
        let ord7: Vec<usize> = (0..7).collect();
        assert_eq!(
            descending_flag_count(&f, 1, &ord7, FlagInterpretation::ExcludeLeast).unwrap(),
            6
        );
        assert_eq!(
            descending_flag_count(&f, 2, &ord7, FlagInterpretation::ExcludeLeast).unwrap(),
            8
        );
        assert_eq!(
            matching_flag_interpretations(&f).unwrap(),
            vec![FlagInterpretation::ExcludeLeast]
        );
    }

    #[test]
    fn sequence_predicates() {
        assert!(is_log_concave(&[1, 3, 3, 1]));
        assert!(!is_log_concave(&[1, 1, 2]));
        assert!(is_unimodal(&[1, 3, 3, 1]));
        assert!(!is_unimodal(&[2, 1, 2]));
        assert!(is_unimodal(&[]));
        let r = mason_min_ratio(&[1, 4, 6, 4]).unwrap();
        assert!(r.meets_bound);
    }
}
