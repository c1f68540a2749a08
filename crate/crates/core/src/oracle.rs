//! Brute-force ground truth computed from definitions only.
//!
//! Nothing here uses the matroid, lattice or ring code; inputs are plain
//! matrices, edge lists and set systems.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

const POINT_LIMIT: u64 = 1_000_000;
const COLORING_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum OracleValue {
    Integer(i128),
    Polynomial(Vec<i64>),
    Sets(Vec<u64>),
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleResult {
    pub name: String,
    /// SHA-256 of the canonical input description.
    pub digest: String,
    pub value: OracleValue,
    #[serde(serialize_with = "micros")]
    pub runtime: Duration,
}

fn micros<S: serde::Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_micros())
}

/// Runs `f`, recording the digest of `inputs` and the elapsed time.
pub fn record(
    name: &str,
    inputs: &str,
    f: impl FnOnce() -> Result<OracleValue>,
) -> Result<OracleResult> {
    let start = Instant::now();
    let value = f()?;
    Ok(OracleResult {
        name: name.to_string(),
        digest: hex::encode(Sha256::digest(inputs.as_bytes())),
        value,
        runtime: start.elapsed(),
    })
}

fn checked_pow(base: u64, exp: usize, limit: u64) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc
            .checked_mul(base)
            .filter(|&a| a <= limit)
            .ok_or_else(|| Error::TooLarge(format!("{base}^{exp} exceeds {limit}")))?;
    }
    Ok(acc)
}

/// Number of vectors in the row space of `rows` over `F_p` with no zero
/// coordinate.
pub fn torus_point_count(p: u64, rows: &[Vec<i64>]) -> Result<u64> {
    if p < 2
        || (2..p)
            .take_while(|d| d * d <= p)
            .any(|d| p.is_multiple_of(d))
    {
        return Err(Error::NotPrime(p));
    }
    let r = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let total = checked_pow(p, r, POINT_LIMIT)?;
    let pi = p as i64;
    let reduced: Vec<Vec<i64>> = rows
        .iter()
        .map(|row| row.iter().map(|&a| a.rem_euclid(pi)).collect())
        .collect();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut x = vec![0i64; r];
    for _ in 0..total {
        let v: Vec<i64> = (0..n)
            .map(|j| {
                (0..r)
                    .map(|i| x[i] * reduced[i][j])
                    .sum::<i64>()
                    .rem_euclid(pi)
            })
            .collect();
        seen.insert(v);
        for xi in x.iter_mut() {
            *xi += 1;
            if *xi < pi {
                break;
            }
            *xi = 0;
        }
    }
    Ok(seen.iter().filter(|v| v.iter().all(|&c| c != 0)).count() as u64)
}

/// Maps `V -> {0..q-1}` with distinct colors on the ends of every edge.
pub fn proper_colorings(vertices: usize, edges: &[(usize, usize)], q: u64) -> Result<u64> {
    if edges.iter().any(|&(a, b)| a >= vertices || b >= vertices) {
        return Err(Error::IndexOutOfRange("edge endpoint".into()));
    }
    if q == 0 {
        return Ok(u64::from(vertices == 0));
    }
    let total = checked_pow(q, vertices, COLORING_LIMIT)?;
    let mut c = vec![0u64; vertices];
    let mut count = 0;
    for _ in 0..total {
        if edges.iter().all(|&(a, b)| c[a] != c[b]) {
            count += 1;
        }
        for ci in c.iter_mut() {
            *ci += 1;
            if *ci < q {
                break;
            }
            *ci = 0;
        }
    }
    Ok(count)
}

/// Connected components, counting isolated vertices.
pub fn component_count(vertices: usize, edges: &[(usize, usize)]) -> usize {
    let mut seen = vec![false; vertices];
    let mut count = 0;
    for s in 0..vertices {
        if seen[s] {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(u) = stack.pop() {
            for &(a, b) in edges {
                let w = if a == u {
                    b
                } else if b == u {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// A matroid given only by its independent sets, as bit masks.
#[derive(Debug, Clone)]
pub struct BruteMatroid {
    n: usize,
    independent: HashSet<u64>,
}

impl BruteMatroid {
    pub fn from_independent(n: usize, sets: impl IntoIterator<Item = u64>) -> Self {
        BruteMatroid {
            n,
            independent: sets.into_iter().collect(),
        }
    }

    /// Independent sets are the subsets of bases.
    pub fn from_bases(n: usize, bases: &[u64]) -> Self {
        let mut ind = HashSet::new();
        for &b in bases {
            let mut s = b;
            loop {
                ind.insert(s);
                if s == 0 {
                    break;
                }
                s = (s - 1) & b;
            }
        }
        BruteMatroid {
            n,
            independent: ind,
        }
    }

    /// Column sets that are linearly independent over `F_p`.
    pub fn from_matrix(p: u64, rows: &[Vec<i64>]) -> Self {
        let n = rows.first().map_or(0, Vec::len);
        let ind = (0u64..1 << n).filter(|&s| columns_independent(p, rows, s));
        BruteMatroid::from_independent(n, ind)
    }

    /// Edge sets without cycles.
    pub fn from_graph(vertices: usize, edges: &[(usize, usize)]) -> Self {
        let n = edges.len();
        let ind = (0u64..1 << n).filter(|&s| {
            let chosen: Vec<(usize, usize)> = (0..n)
                .filter(|i| s >> i & 1 == 1)
                .map(|i| edges[i])
                .collect();
            component_count(vertices, &chosen) + chosen.len() == vertices
        });
        BruteMatroid::from_independent(n, ind)
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn is_independent(&self, s: u64) -> bool {
        self.independent.contains(&s)
    }

    pub fn rank(&self, s: u64) -> usize {
        self.independent
            .iter()
            .filter(|&&i| i & !s == 0)
            .map(|i| i.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn closure(&self, s: u64) -> u64 {
        let r = self.rank(s);
        (0..self.n).fold(s, |acc, e| {
            if self.rank(s | 1 << e) == r {
                acc | 1 << e
            } else {
                acc
            }
        })
    }

    /// All closed sets, sorted by mask.
    pub fn flats(&self) -> Vec<u64> {
        (0u64..1 << self.n)
            .filter(|&s| self.closure(s) == s)
            .collect()
    }

    /// `Σ_S (-1)^{|S|} T^{r - rk S}`, coefficients from the constant term up.
    pub fn char_poly(&self) -> Vec<i64> {
        let full = if self.n == 0 {
            0
        } else {
            u64::MAX >> (64 - self.n)
        };
        let r = self.rank(full);
        let mut c = vec![0i64; r + 1];
        for s in 0u64..1 << self.n {
            let sign = if s.count_ones() % 2 == 0 { 1 } else { -1 };
            c[r - self.rank(s)] += sign;
        }
        c
    }
}

fn columns_independent(p: u64, rows: &[Vec<i64>], s: u64) -> bool {
    let pi = p as i64;
    let cols: Vec<usize> = (0..64).filter(|i| s >> i & 1 == 1).collect();
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|row| cols.iter().map(|&j| row[j].rem_euclid(pi)).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols.len() {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            return false;
        };
        m.swap(rank, piv);
        let inv = (1..pi)
            .find(|x| x * m[rank][c] % pi == 1)
            .expect("field element is invertible");
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * inv % pi;
                for j in 0..cols.len() {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(pi);
                }
            }
        }
        rank += 1;
    }
    true
}

/// Evaluates integer coefficients (constant term first) at `x`.
pub fn eval(coeffs: &[i64], x: i64) -> i128 {
    coeffs
        .iter()
        .rev()
        .fold(0i128, |acc, &c| acc * x as i128 + c as i128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_counts() {
        assert_eq!(torus_point_count(3, &[vec![1, 0], vec![0, 1]]).unwrap(), 4);
        assert_eq!(
            torus_point_count(5, &[vec![1, 0, 1], vec![0, 1, 1]]).unwrap(),
            12
        );
        assert_eq!(torus_point_count(3, &[vec![1, 0], vec![0, 0]]).unwrap(), 0);
        assert!(torus_point_count(4, &[vec![1]]).is_err());
        assert!(matches!(
            torus_point_count(2, &vec![vec![1]; 21]),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn colorings() {
        let k4: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        assert_eq!(proper_colorings(4, &k4, 3).unwrap(), 0);
        assert_eq!(proper_colorings(4, &k4, 4).unwrap(), 24);
        let c5: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        assert_eq!(proper_colorings(5, &c5, 2).unwrap(), 0);
        assert_eq!(proper_colorings(5, &c5, 3).unwrap(), 30);
        assert_eq!(proper_colorings(3, &[], 4).unwrap(), 64);
    }

    #[test]
    fn brute_flats() {
        let u24 = BruteMatroid::from_independent(4, (0u64..16).filter(|s| s.count_ones() <= 2));
        assert_eq!(u24.flats(), vec![0, 1, 2, 4, 8, 15]);
        let b3 = BruteMatroid::from_independent(3, 0..8);
        assert_eq!(b3.flats().len(), 8);
        assert_eq!(b3.char_poly(), vec![-1, 3, -3, 1]);
    }

    #[test]
    fn digest_is_stable() {
        let a = record("x", "input", || Ok(OracleValue::Integer(1))).unwrap();
        let b = record("x", "input", || Ok(OracleValue::Integer(1))).unwrap();
        assert_eq!(a.digest, b.digest);
        assert_eq!(a.digest.len(), 64);
    }
}
