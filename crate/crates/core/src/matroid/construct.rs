use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{check_enumerable, Matroid, Provenance};
use crate::error::{Error, Result};
use crate::subset::Subset;

/// Largest ground set for constructors that tabulate all `2^n` subsets.
pub const MAX_ENUMERATED_GROUND: usize = 20;

/// Multigraph; self-loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    vertices: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= vertices || v >= vertices) {
            return Err(Error::IndexOutOfRange(format!(
                "edge {u}-{v} in a graph on {vertices} vertices"
            )));
        }
        Ok(Graph { vertices, edges })
    }

    pub fn complete(k: usize) -> Graph {
        let edges = (0..k)
            .flat_map(|u| (u + 1..k).map(move |v| (u, v)))
            .collect();
        Graph { vertices: k, edges }
    }

    pub fn cycle(k: usize) -> Graph {
        let edges = (0..k).map(|u| (u, (u + 1) % k)).collect();
        Graph { vertices: k, edges }
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Number of connected components of the spanning subgraph on `edges`.
    pub fn components_of(&self, edges: Subset) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        edges.iter().fold(self.vertices, |c, e| {
            let (u, v) = self.edges[e];
            if uf.union(u, v) {
                c - 1
            } else {
                c
            }
        })
    }

    pub fn components(&self) -> usize {
        self.components_of(Subset::full(self.edges.len()))
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Matrix over the prime field `F_p`, entries stored reduced and row-major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteFieldMatrix {
    p: u64,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FiniteFieldMatrix {
    /// Entries are reduced mod `p`; rows must have equal length.
    pub fn new(p: u64, rows: &[Vec<i64>]) -> Result<FiniteFieldMatrix> {
        if !is_prime(p) || p >= 1 << 31 {
            return Err(Error::NotPrime(p));
        }
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::BadParameters("ragged matrix rows".into()));
        }
        let entries = rows
            .iter()
            .flatten()
            .map(|&x| x.rem_euclid(p as i64) as u64)
            .collect();
        Ok(FiniteFieldMatrix {
            p,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn identity(p: u64, n: usize) -> Result<FiniteFieldMatrix> {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
            .collect();
        FiniteFieldMatrix::new(p, &rows)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Rank over `F_p` of the selected columns.
    pub fn rank_of_columns(&self, cols: Subset) -> usize {
        let mut basis: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for j in cols.iter() {
            let mut v = self.column(j);
            for (b, &pc) in basis.iter().zip(&pivots) {
                if v[pc] != 0 {
                    let f = v[pc];
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = (*x + self.p - f * y % self.p) % self.p;
                    }
                }
            }
            if let Some(pc) = v.iter().position(|&x| x != 0) {
                let inv = mod_pow(v[pc], self.p - 2, self.p);
                for x in v.iter_mut() {
                    *x = *x * inv % self.p;
                }
                basis.push(v);
                pivots.push(pc);
            }
        }
        basis.len()
    }
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Flats of the matroid with rank table `rank` (indexed by mask).
pub(crate) fn flats_from_rank_table(n: usize, rank: &[u8]) -> Vec<Subset> {
    let full = Subset::full(n);
    (0..rank.len() as u64)
        .map(Subset)
        .filter(|&s| {
            full.difference(s)
                .iter()
                .all(|e| rank[s.with(e).bits() as usize] > rank[s.bits() as usize])
        })
        .collect()
}

/// Rank table from an independence indicator that is closed under subsets.
fn rank_from_independence(n: usize, indep: &[bool]) -> Vec<u8> {
    let mut rank = vec![0u8; 1 << n];
    for mask in 1..rank.len() {
        rank[mask] = if indep[mask] {
            (mask as u64).count_ones() as u8
        } else {
            Subset(mask as u64)
                .iter()
                .map(|e| rank[mask & !(1 << e)])
                .max()
                .unwrap_or(0)
        };
    }
    rank
}

pub(crate) fn from_rank_table(n: usize, rank: &[u8], provenance: Provenance) -> Matroid {
    Matroid::from_flats_unchecked(n, &flats_from_rank_table(n, rank), provenance)
}

impl Matroid {
    /// Bases must be equicardinal and satisfy the exchange axiom.
    pub fn from_bases(n: usize, bases: &[Subset]) -> Result<Matroid> {
        check_enumerable(n)?;
        let first = *bases
            .first()
            .ok_or_else(|| Error::BadParameters("empty basis list".into()))?;
        if let Some(b) = bases.iter().find(|b| !b.fits(n)) {
            return Err(Error::IndexOutOfRange(format!(
                "basis {b} outside ground set of size {n}"
            )));
        }
        if let Some(b) = bases.iter().find(|b| b.len() != first.len()) {
            return Err(Error::BadParameters(format!(
                "bases {first} and {b} have different sizes"
            )));
        }
        let set: HashSet<Subset> = bases.iter().copied().collect();
        for &b1 in &set {
            for &b2 in &set {
                for e in b1.difference(b2).iter() {
                    let ok = b2
                        .difference(b1)
                        .iter()
                        .any(|f| set.contains(&b1.without(e).with(f)));
                    if !ok {
                        let (first, second) = if b1 < b2 { (b1, b2) } else { (b2, b1) };
                        return Err(Error::ExchangeViolation {
                            first,
                            second,
                            element: e,
                        });
                    }
                }
            }
        }
        let mut indep = vec![false; 1 << n];
        for b in &set {
            indep[b.bits() as usize] = true;
        }
        for mask in (0..indep.len()).rev() {
            if indep[mask] {
                for e in Subset(mask as u64).iter() {
                    indep[mask & !(1 << e)] = true;
                }
            }
        }
        Ok(from_rank_table(
            n,
            &rank_from_independence(n, &indep),
            Provenance::Bases,
        ))
    }

    /// Circuits must be nonempty, pairwise incomparable and satisfy
    /// circuit elimination.
    pub fn from_circuits(n: usize, circuits: &[Subset]) -> Result<Matroid> {
        check_enumerable(n)?;
        if let Some(c) = circuits.iter().find(|c| !c.fits(n)) {
            return Err(Error::IndexOutOfRange(format!(
                "circuit {c} outside ground set of size {n}"
            )));
        }
        if circuits.iter().any(|c| c.is_empty()) {
            return Err(Error::CircuitViolation(
                "the empty set is not a circuit".into(),
            ));
        }
        let set: Vec<Subset> = {
            let mut v = circuits.to_vec();
            v.sort();
            v.dedup();
            v
        };
        for &c1 in &set {
            for &c2 in &set {
                if c1.is_proper_subset_of(c2) {
                    return Err(Error::CircuitViolation(format!(
                        "{c1} is contained in {c2}"
                    )));
                }
                if c1 < c2 {
                    for e in c1.intersection(c2).iter() {
                        let u = c1.union(c2).without(e);
                        if !set.iter().any(|c3| c3.is_subset_of(u)) {
                            return Err(Error::CircuitViolation(format!(
                                "no circuit inside ({c1} ∪ {c2}) - {e}"
                            )));
                        }
                    }
                }
            }
        }
        let mut dependent = vec![false; 1 << n];
        for c in &set {
            dependent[c.bits() as usize] = true;
        }
        for mask in 0..dependent.len() {
            if !dependent[mask] {
                dependent[mask] = Subset(mask as u64)
                    .iter()
                    .any(|e| dependent[mask & !(1 << e)]);
            }
        }
        let indep: Vec<bool> = dependent.iter().map(|d| !d).collect();
        Ok(from_rank_table(
            n,
            &rank_from_independence(n, &indep),
            Provenance::Circuits,
        ))
    }

    /// Cycle matroid: independent sets are the forests.
    pub fn from_graph(g: &Graph) -> Result<Matroid> {
        let m = g.edges.len();
        check_enumerable(m)?;
        let rank: Vec<u8> = (0..1u64 << m)
            .map(|mask| (g.vertices - g.components_of(Subset(mask))) as u8)
            .collect();
        Ok(from_rank_table(m, &rank, Provenance::Graph).with_representable(Some(true)))
    }

    /// Column matroid over `F_p`.
    pub fn from_matrix(a: &FiniteFieldMatrix) -> Result<Matroid> {
        let n = a.cols;
        check_enumerable(n)?;
        let rank: Vec<u8> = (0..1u64 << n)
            .map(|mask| a.rank_of_columns(Subset(mask)) as u8)
            .collect();
        Ok(from_rank_table(n, &rank, Provenance::Matrix).with_representable(Some(true)))
    }
}
