//! Exact two-phase simplex over the rationals, Bland's rule throughout.

use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// Maximize `objective · x` subject to the constraints. Variables are free
/// unless listed in `nonnegative`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
    pub nonnegative: Vec<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![Rational::zero(); num_vars],
            constraints: Vec::new(),
            nonnegative: vec![false; num_vars],
        }
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints.push(Constraint {
            coeffs,
            relation,
            rhs,
        });
    }

    pub fn solve(&self) -> LpOutcome {
        solve(self)
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for v in self.rows[r].iter_mut() {
            *v /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (v, pv) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = c;
    }

    /// Maximizes `c · x` over columns `< allowed`; `false` if unbounded.
    fn optimize(&mut self, c: &[Rational], allowed: usize) -> bool {
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let z: Rational = self
                    .basis
                    .iter()
                    .zip(&self.rows)
                    .filter(|(_, row)| !row[j].is_zero())
                    .map(|(&b, row)| &c[b] * &row[j])
                    .sum();
                &c[j] - z > Rational::zero()
            });
            let Some(j) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                if self.rows[i][j].is_positive() {
                    let ratio = &self.rhs[i] / &self.rows[i][j];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => {
                            ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                        }
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let Some((r, _)) = best else { return false };
            self.pivot(r, j);
        }
    }
}

pub fn solve(lp: &LinearProgram) -> LpOutcome {
    let n = lp.num_vars;
    // column layout: x+ (n), x- for free vars, slacks, artificials
    let free: Vec<usize> = (0..n).filter(|&i| !lp.nonnegative[i]).collect();
    let m = lp.constraints.len();
    let slack_rows: Vec<usize> = (0..m)
        .filter(|&i| lp.constraints[i].relation != Relation::Eq)
        .collect();
    let n_struct = n + free.len();
    let n_real = n_struct + slack_rows.len();
    let ncols = n_real + m;

    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, con) in lp.constraints.iter().enumerate() {
        let mut row = vec![Rational::zero(); ncols];
        for (j, a) in con.coeffs.iter().enumerate() {
            row[j] = a.clone();
        }
        for (k, &j) in free.iter().enumerate() {
            row[n + k] = -&con.coeffs[j];
        }
        if let Some(k) = slack_rows.iter().position(|&r| r == i) {
            row[n_struct + k] = match con.relation {
                Relation::Le => Rational::one(),
                _ => -Rational::one(),
            };
        }
        let mut b = con.rhs.clone();
        if b.is_negative() {
            for v in row.iter_mut() {
                *v = -&*v;
            }
            b = -b;
        }
        row[n_real + i] = Rational::one();
        rows.push(row);
        rhs.push(b);
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (n_real..ncols).collect(),
    };

    let mut phase1 = vec![Rational::zero(); ncols];
    for v in &mut phase1[n_real..] {
        *v = -Rational::one();
    }
    t.optimize(&phase1, ncols);
    let infeasibility: Rational = (0..m)
        .filter(|&i| t.basis[i] >= n_real)
        .map(|i| t.rhs[i].clone())
        .sum();
    if infeasibility.is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive zero-level artificials out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n_real {
            match (0..n_real).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }

    let mut c = vec![Rational::zero(); ncols];
    for (j, v) in lp.objective.iter().enumerate() {
        c[j] = v.clone();
    }
    for (k, &j) in free.iter().enumerate() {
        c[n + k] = -&lp.objective[j];
    }
    if !t.optimize(&c, n_real) {
        return LpOutcome::Unbounded;
    }
    let mut col_value = vec![Rational::zero(); ncols];
    for (i, &b) in t.basis.iter().enumerate() {
        col_value[b] = t.rhs[i].clone();
    }
    let x: Vec<Rational> = (0..n)
        .map(|j| match free.iter().position(|&f| f == j) {
            Some(k) => &col_value[j] - &col_value[n + k],
            None => col_value[j].clone(),
        })
        .collect();
    let value = x.iter().zip(&lp.objective).map(|(a, b)| a * b).sum();
    LpOutcome::Optimal { value, x }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, rat_frac};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3, x,y >= 0
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[3, 2]);
        lp.nonnegative = vec![true, true];
        lp.add(v(&[1, 1]), Relation::Le, rat(4));
        lp.add(v(&[1, 3]), Relation::Le, rat(6));
        lp.add(v(&[1, 0]), Relation::Le, rat(3));
        match lp.solve() {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, rat(11));
                assert_eq!(x, v(&[3, 1]));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn free_variables_and_equalities() {
        // max -x, x - y = -5/2, y <= 1
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[-1, 0]);
        lp.add(v(&[1, -1]), Relation::Eq, rat_frac(-5, 2));
        lp.add(v(&[0, 1]), Relation::Le, rat(1));
        lp.add(v(&[0, 1]), Relation::Ge, rat(-3));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat_frac(11, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add(v(&[1]), Relation::Ge, rat(2));
        lp.add(v(&[1]), Relation::Le, rat(1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.objective = v(&[1]);
        lp.add(v(&[1]), Relation::Ge, rat(0));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2);
        lp.objective = v(&[1, 1]);
        lp.add(v(&[1, 1]), Relation::Eq, rat(2));
        lp.add(v(&[2, 2]), Relation::Eq, rat(4));
        lp.add(v(&[1, 0]), Relation::Le, rat(5));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, rat(2)),
            other => panic!("{other:?}"),
        }
    }
}
