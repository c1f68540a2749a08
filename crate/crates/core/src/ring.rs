//! Graded rings `Z[x_1..x_m] / (I + J)` with `I` a squarefree monomial
//! ideal and `J` generated by linear forms, computed degree by degree.
//!
//! In degree `k` the monomials whose support contains no generator of `I`
//! span `(S/I)^k`; `J` contributes the rows `L · m` for each linear form `L`
//! and each such monomial `m` of degree `k - 1`. Integer row reduction of
//! these rows yields a basis of non-pivot monomials and a normal form for
//! every other monomial.

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Rational};

/// Sorted multiset of generator indices.
pub type Monomial = Vec<u16>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub names: Vec<String>,
    /// Generators of the monomial ideal, each a set of generator indices.
    pub nonfaces: Vec<Vec<usize>>,
    /// Linear relations as sparse `(generator, coefficient)` lists.
    pub linear: Vec<Vec<(usize, i64)>>,
}

impl Presentation {
    pub fn num_generators(&self) -> usize {
        self.names.len()
    }
}

#[derive(Debug, Clone)]
struct Degree {
    columns: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    basis: Vec<usize>,
    /// Normal form of each column as sparse coordinates over `basis`.
    nf: Vec<Vec<(usize, Rational)>>,
}

/// A finite-dimensional graded ring with a monomial basis in each degree.
#[derive(Debug, Clone)]
pub struct GradedRing {
    names: Vec<String>,
    degrees: Vec<Degree>,
}

/// A homogeneous element, as coordinates over the basis of its degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingElement {
    pub degree: usize,
    pub coords: Vec<Rational>,
}

impl RingElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> RingElement {
        RingElement {
            degree: self.degree,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        assert_eq!(
            self.degree, other.degree,
            "adding elements of different degrees"
        );
        RingElement {
            degree: self.degree,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.add(&other.scale(&-Rational::one()))
    }
}

fn face_closed_extension(mon: &Monomial, g: usize, by_gen: &[Vec<Vec<usize>>]) -> bool {
    if mon.binary_search(&(g as u16)).is_ok() {
        return true;
    }
    by_gen[g].iter().all(|nf| {
        nf.iter()
            .any(|&h| h != g && mon.binary_search(&(h as u16)).is_err())
    })
}

fn insert_sorted(mon: &Monomial, g: u16) -> Monomial {
    let mut out = Vec::with_capacity(mon.len() + 1);
    let pos = mon.partition_point(|&x| x <= g);
    out.extend_from_slice(&mon[..pos]);
    out.push(g);
    out.extend_from_slice(&mon[pos..]);
    out
}

fn is_squarefree(mon: &Monomial) -> bool {
    mon.windows(2).all(|w| w[0] != w[1])
}

struct PivotRow {
    col: usize,
    pivot: i64,
    entries: Vec<(usize, i64)>,
}

/// Incremental reduced row echelon form over `Z`.
struct Eliminator {
    rows: Vec<PivotRow>,
    pivot_of: Vec<Option<usize>>,
    occurs: Vec<Vec<usize>>,
    scratch: Vec<i64>,
    touched: Vec<usize>,
    in_touched: Vec<bool>,
}

fn checked(v: Option<i64>) -> Result<i64> {
    v.ok_or(Error::Overflow)
}

impl Eliminator {
    fn new(ncols: usize) -> Self {
        Eliminator {
            rows: Vec::new(),
            pivot_of: vec![None; ncols],
            occurs: vec![Vec::new(); ncols],
            scratch: vec![0; ncols],
            touched: Vec::new(),
            in_touched: vec![false; ncols],
        }
    }

    fn bump(&mut self, c: usize, v: i64) -> Result<()> {
        if !self.in_touched[c] {
            self.in_touched[c] = true;
            self.touched.push(c);
        }
        self.scratch[c] = checked(self.scratch[c].checked_add(v))?;
        Ok(())
    }

    fn add_row(&mut self, row: &[(usize, i64)]) -> Result<()> {
        for &(c, v) in row {
            self.bump(c, v)?;
        }
        let mut i = 0;
        while i < self.touched.len() {
            let c = self.touched[i];
            i += 1;
            let a = self.scratch[c];
            let Some(r) = self.pivot_of[c].filter(|_| a != 0) else {
                continue;
            };
            let p = self.rows[r].pivot;
            if p.abs() == 1 {
                let f = a * p;
                for k in 0..self.rows[r].entries.len() {
                    let (col, v) = self.rows[r].entries[k];
                    self.bump(col, checked(f.checked_mul(v).map(|x| -x))?)?;
                }
            } else {
                for &t in &self.touched {
                    self.scratch[t] = checked(self.scratch[t].checked_mul(p))?;
                }
                for k in 0..self.rows[r].entries.len() {
                    let (col, v) = self.rows[r].entries[k];
                    self.bump(col, checked(a.checked_mul(v).map(|x| -x))?)?;
                }
            }
        }
        let mut entries: Vec<(usize, i64)> = Vec::new();
        for c in std::mem::take(&mut self.touched) {
            self.in_touched[c] = false;
            if self.scratch[c] != 0 {
                entries.push((c, self.scratch[c]));
                self.scratch[c] = 0;
            }
        }
        if entries.is_empty() {
            return Ok(());
        }
        entries.sort_unstable_by_key(|e| e.0);
        let g = entries.iter().fold(0i64, |g, e| g.gcd(&e.1));
        if g > 1 {
            for e in entries.iter_mut() {
                e.1 /= g;
            }
        }
        let (col, pivot) = entries
            .iter()
            .find(|e| e.1.abs() == 1)
            .copied()
            .unwrap_or(entries[0]);

        // clear the new pivot column from the existing rows
        let users = std::mem::take(&mut self.occurs[col]);
        for r in users {
            let Ok(pos) = self.rows[r].entries.binary_search_by_key(&col, |e| e.0) else {
                continue;
            };
            let a = self.rows[r].entries[pos].1;
            let merged = if pivot.abs() == 1 {
                combine(&self.rows[r].entries, 1, &entries, -(a * pivot))?
            } else {
                self.rows[r].pivot = checked(self.rows[r].pivot.checked_mul(pivot))?;
                combine(&self.rows[r].entries, pivot, &entries, -a)?
            };
            for &(c, _) in &merged {
                if self.rows[r]
                    .entries
                    .binary_search_by_key(&c, |e| e.0)
                    .is_err()
                {
                    self.occurs[c].push(r);
                }
            }
            self.rows[r].entries = merged;
        }
        let idx = self.rows.len();
        for &(c, _) in &entries {
            if c != col {
                self.occurs[c].push(idx);
            }
        }
        self.pivot_of[col] = Some(idx);
        self.rows.push(PivotRow {
            col,
            pivot,
            entries,
        });
        Ok(())
    }
}

/// `s * a + t * b` on sorted sparse rows, dropping zeros.
fn combine(a: &[(usize, i64)], s: i64, b: &[(usize, i64)], t: i64) -> Result<Vec<(usize, i64)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (c, v) = match (a.get(i), b.get(j)) {
            (Some(&(ca, va)), Some(&(cb, _))) if ca < cb => {
                i += 1;
                (ca, checked(va.checked_mul(s))?)
            }
            (Some(&(ca, _)), Some(&(cb, vb))) if cb < ca => {
                j += 1;
                (cb, checked(vb.checked_mul(t))?)
            }
            (Some(&(ca, va)), Some(&(_, vb))) => {
                i += 1;
                j += 1;
                (
                    ca,
                    checked(checked(va.checked_mul(s))?.checked_add(checked(vb.checked_mul(t))?))?,
                )
            }
            (Some(&(ca, va)), None) => {
                i += 1;
                (ca, checked(va.checked_mul(s))?)
            }
            (None, Some(&(cb, vb))) => {
                j += 1;
                (cb, checked(vb.checked_mul(t))?)
            }
            (None, None) => unreachable!(),
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    Ok(out)
}

impl GradedRing {
    /// Builds degrees `0..=max_degree`.
    pub fn build(p: &Presentation, max_degree: usize) -> Result<GradedRing> {
        let m = p.num_generators();
        if m > u16::MAX as usize {
            return Err(Error::TooLarge(format!("{m} generators")));
        }
        let mut by_gen: Vec<Vec<Vec<usize>>> = vec![Vec::new(); m];
        for nf in &p.nonfaces {
            let mut nf = nf.clone();
            nf.sort_unstable();
            nf.dedup();
            for &g in &nf {
                by_gen[g].push(nf.clone());
            }
        }
        let one_is_zero = p.nonfaces.iter().any(Vec::is_empty);

        let mut degrees: Vec<Degree> = Vec::with_capacity(max_degree + 1);
        let mut prev: Vec<Monomial> = if one_is_zero {
            Vec::new()
        } else {
            vec![Vec::new()]
        };
        for k in 0..=max_degree {
            let mut mons: Vec<Monomial> = if k == 0 {
                prev.clone()
            } else {
                let mut out = Vec::new();
                for mon in &prev {
                    let start = mon.last().map_or(0, |&x| x as usize);
                    for g in start..m {
                        if face_closed_extension(mon, g, &by_gen) {
                            out.push(insert_sorted(mon, g as u16));
                        }
                    }
                }
                out
            };
            mons.sort_by(|a, b| {
                is_squarefree(a)
                    .cmp(&is_squarefree(b))
                    .then_with(|| a.cmp(b))
            });
            let index: HashMap<Monomial, usize> = mons
                .iter()
                .enumerate()
                .map(|(i, mm)| (mm.clone(), i))
                .collect();

            let mut elim = Eliminator::new(mons.len());
            if k >= 1 {
                let lower = &degrees[k - 1].columns;
                for form in &p.linear {
                    for mon in lower {
                        let row: Vec<(usize, i64)> = form
                            .iter()
                            .filter(|&&(_, c)| c != 0)
                            .filter_map(|&(g, c)| {
                                index.get(&insert_sorted(mon, g as u16)).map(|&i| (i, c))
                            })
                            .collect();
                        if !row.is_empty() {
                            elim.add_row(&row)?;
                        }
                    }
                }
            }
            let basis: Vec<usize> = (0..mons.len())
                .filter(|&c| elim.pivot_of[c].is_none())
                .collect();
            let mut basis_pos = vec![usize::MAX; mons.len()];
            for (i, &c) in basis.iter().enumerate() {
                basis_pos[c] = i;
            }
            let nf: Vec<Vec<(usize, Rational)>> = (0..mons.len())
                .map(|c| match elim.pivot_of[c] {
                    None => vec![(basis_pos[c], Rational::one())],
                    Some(r) => {
                        let row = &elim.rows[r];
                        let p = Rational::from_integer(row.pivot.into());
                        row.entries
                            .iter()
                            .filter(|e| e.0 != row.col)
                            .map(|&(col, v)| {
                                (basis_pos[col], -Rational::from_integer(v.into()) / &p)
                            })
                            .collect()
                    }
                })
                .collect();
            degrees.push(Degree {
                columns: mons.clone(),
                index,
                basis,
                nf,
            });
            prev = mons;
        }
        Ok(GradedRing {
            names: p.names.clone(),
            degrees,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_generators(&self) -> usize {
        self.names.len()
    }

    /// Highest degree computed.
    pub fn max_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn dim(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.basis.len())
    }

    pub fn hilbert(&self) -> Vec<usize> {
        (0..self.degrees.len()).map(|k| self.dim(k)).collect()
    }

    /// True when every monomial of degree `k` has integer coordinates over
    /// the basis monomials, so these span the integral lattice.
    pub fn is_integral(&self, k: usize) -> bool {
        self.degrees
            .get(k)
            .is_none_or(|d| d.nf.iter().flatten().all(|(_, v)| v.is_integer()))
    }

    pub fn basis_monomials(&self, k: usize) -> Vec<&Monomial> {
        self.degrees
            .get(k)
            .map(|d| d.basis.iter().map(|&c| &d.columns[c]).collect())
            .unwrap_or_default()
    }

    pub fn monomial_name(&self, mon: &[u16]) -> String {
        if mon.is_empty() {
            return "1".into();
        }
        mon.iter()
            .map(|&g| self.names[g as usize].as_str())
            .collect::<Vec<_>>()
            .join("*")
    }

    pub fn zero(&self, k: usize) -> RingElement {
        RingElement {
            degree: k,
            coords: vec![Rational::zero(); self.dim(k)],
        }
    }

    pub fn one(&self) -> RingElement {
        self.monomial(&[])
    }

    fn check_degree(&self, k: usize) {
        assert!(
            k < self.degrees.len() || self.degrees.last().is_none_or(|d| d.basis.is_empty()),
            "degree {k} beyond the computed range of a ring not yet known to vanish there"
        );
    }

    /// Normal form of a monomial given as a multiset of generators.
    pub fn monomial(&self, gens: &[usize]) -> RingElement {
        let k = gens.len();
        self.check_degree(k);
        let mut out = self.zero(k);
        let Some(d) = self.degrees.get(k) else {
            return out;
        };
        let mut mon: Monomial = gens.iter().map(|&g| g as u16).collect();
        mon.sort_unstable();
        if let Some(&c) = d.index.get(&mon) {
            for (i, v) in &d.nf[c] {
                out.coords[*i] += v;
            }
        }
        out
    }

    pub fn generator(&self, g: usize) -> RingElement {
        self.monomial(&[g])
    }

    pub fn linear(&self, terms: &[(usize, Rational)]) -> RingElement {
        terms.iter().fold(self.zero(1), |acc, (g, c)| {
            acc.add(&self.generator(*g).scale(c))
        })
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let k = a.degree + b.degree;
        self.check_degree(k);
        let mut out = self.zero(k);
        let Some(target) = self.degrees.get(k) else {
            return out;
        };
        let (da, db) = (&self.degrees[a.degree], &self.degrees[b.degree]);
        for (i, x) in a.coords.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let mi = &da.columns[da.basis[i]];
            for (j, y) in b.coords.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                let mj = &db.columns[db.basis[j]];
                let mut mon: Monomial = mi.iter().chain(mj.iter()).copied().collect();
                mon.sort_unstable();
                if let Some(&c) = target.index.get(&mon) {
                    let xy = x * y;
                    for (t, v) in &target.nf[c] {
                        out.coords[*t] += &xy * v;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &RingElement, e: usize) -> RingElement {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Matrix of `x -> a * x` from degree `k` to degree `k + deg a`;
    /// column `j` holds the image of the `j`-th basis element.
    pub fn multiplication_matrix(&self, a: &RingElement, k: usize) -> QMatrix {
        let cols: Vec<Vec<Rational>> = (0..self.dim(k))
            .map(|j| self.mul(a, &self.basis_element(k, j)).coords)
            .collect();
        QMatrix::from_columns(&cols, self.dim(k + a.degree))
    }

    pub fn basis_element(&self, k: usize, j: usize) -> RingElement {
        let mut e = self.zero(k);
        e.coords[j] = Rational::one();
        e
    }

    /// `true` when every coordinate is an integer.
    pub fn is_integral_element(a: &RingElement) -> bool {
        a.coords.iter().all(|c| c.is_integer())
    }

    /// Largest absolute coordinate, used in diagnostics.
    pub fn max_abs_coord(a: &RingElement) -> Rational {
        a.coords
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}
