//! The bundled test corpus, with explicit realizations over small primes.

use crate::error::Result;
use crate::matroid::io::{self, MatroidFile};
use crate::matroid::{FiniteFieldMatrix, Graph, Matroid};

pub const FILES: &[(&str, &str)] = &[
    ("u11", include_str!("../corpus/u11.matroid")),
    ("u13", include_str!("../corpus/u13.matroid")),
    ("u23", include_str!("../corpus/u23.matroid")),
    ("u24", include_str!("../corpus/u24.matroid")),
    ("u34", include_str!("../corpus/u34.matroid")),
    ("u35", include_str!("../corpus/u35.matroid")),
    ("u46", include_str!("../corpus/u46.matroid")),
    ("boolean2", include_str!("../corpus/boolean2.matroid")),
    ("boolean3", include_str!("../corpus/boolean3.matroid")),
    ("boolean4", include_str!("../corpus/boolean4.matroid")),
    ("boolean5", include_str!("../corpus/boolean5.matroid")),
    ("fano", include_str!("../corpus/fano.matroid")),
    ("k4", include_str!("../corpus/k4.matroid")),
    ("c5", include_str!("../corpus/c5.matroid")),
    ("vamos", include_str!("../corpus/vamos.matroid")),
    ("loop3", include_str!("../corpus/loop3.matroid")),
];

/// Entries added as duals of file entries.
pub const DUALS: &[&str] = &["fano", "k4", "c5", "u24", "vamos"];

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub name: String,
    pub matroid: Matroid,
    pub graph: Option<Graph>,
    /// Matrices whose column matroid is `matroid`.
    pub realizations: Vec<FiniteFieldMatrix>,
}

impl CorpusEntry {
    /// Simple, of positive rank.
    pub fn is_geometry(&self) -> bool {
        self.matroid.is_simple() && self.matroid.rank() > 0
    }

    pub fn primes(&self) -> Vec<u64> {
        self.realizations
            .iter()
            .map(FiniteFieldMatrix::prime)
            .collect()
    }
}

fn identity_rows(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

fn incidence_rows(g: &Graph) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![0i64; g.edges().len()]; g.vertices()];
    for (j, &(a, b)) in g.edges().iter().enumerate() {
        rows[a][j] += 1;
        rows[b][j] -= 1;
    }
    rows
}

fn vandermonde(p: u64, k: usize, infinity: bool) -> Vec<Vec<i64>> {
    (0..k)
        .map(|e| {
            let mut row: Vec<i64> = (0..p as i64).map(|t| t.pow(e as u32) % p as i64).collect();
            if infinity {
                row.push(i64::from(e == k - 1));
            }
            row
        })
        .collect()
}

fn realization_rows(name: &str, file: &MatroidFile) -> Vec<(u64, Vec<Vec<i64>>)> {
    let all = |rows: Vec<Vec<i64>>| vec![(2, rows.clone()), (3, rows.clone()), (5, rows)];
    match name {
        "u11" => all(vec![vec![1]]),
        "u13" => all(vec![vec![1, 1, 1]]),
        "u23" => all(vec![vec![1, 0, 1], vec![0, 1, 1]]),
        "u24" => vec![
            (3, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]),
            (5, vec![vec![1, 0, 1, 1], vec![0, 1, 1, 2]]),
        ],
        "u34" => all(vec![vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]),
        "u35" => vec![(5, vandermonde(5, 3, false))],
        "u46" => vec![(5, vandermonde(5, 4, true))],
        "boolean2" | "boolean3" | "boolean4" | "boolean5" => {
            all(identity_rows(file.matroid.ground_size()))
        }
        "fano" => vec![(
            2,
            (0..3)
                .map(|b| (1..8i64).map(|v| v >> b & 1).collect())
                .collect(),
        )],
        "k4" | "c5" => all(incidence_rows(file.graph.as_ref().expect("graph file"))),
        "loop3" => all(vec![vec![1, 0, 0], vec![0, 1, 0]]),
        _ => Vec::new(),
    }
}

/// Rows of a matrix whose column matroid is the dual of that of `a`.
pub fn dual_matrix(a: &FiniteFieldMatrix) -> FiniteFieldMatrix {
    let p = a.prime() as i64;
    let n = a.ncols();
    let mut m: Vec<Vec<i64>> = (0..a.nrows())
        .map(|i| (0..n).map(|j| a.get(i, j) as i64).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = (1..p)
            .find(|x| x * m[r][c] % p == 1)
            .expect("nonzero element of a field");
        for x in m[r].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..n {
                    m[i][j] = (m[i][j] - f * m[r][j]).rem_euclid(p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let rows: Vec<Vec<i64>> = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|c| {
            let mut v = vec![0i64; n];
            v[c] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = (-m[i][c]).rem_euclid(p);
            }
            v
        })
        .collect();
    FiniteFieldMatrix::new(a.prime(), &rows).expect("prime already checked")
}

fn load(name: &str, text: &str) -> Result<CorpusEntry> {
    let file = io::parse(text)?;
    let realizations = realization_rows(name, &file)
        .into_iter()
        .map(|(p, rows)| FiniteFieldMatrix::new(p, &rows))
        .collect::<Result<Vec<_>>>()?;
    Ok(CorpusEntry {
        name: name.to_string(),
        matroid: file.matroid,
        graph: file.graph,
        realizations,
    })
}

/// All entries: the files in [`FILES`] followed by the duals in [`DUALS`].
pub fn corpus() -> Result<Vec<CorpusEntry>> {
    let mut out: Vec<CorpusEntry> = FILES
        .iter()
        .map(|(n, t)| load(n, t))
        .collect::<Result<_>>()?;
    for &d in DUALS {
        let base = out
            .iter()
            .find(|e| e.name == d)
            .expect("dual of a listed entry")
            .clone();
        out.push(CorpusEntry {
            name: format!("{d}-dual"),
            matroid: base.matroid.dual()?,
            graph: None,
            realizations: base.realizations.iter().map(dual_matrix).collect(),
        });
    }
    Ok(out)
}

pub fn entry(name: &str) -> Result<Option<CorpusEntry>> {
    Ok(corpus()?.into_iter().find(|e| e.name == name))
}
