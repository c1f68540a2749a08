//! Plain-text matroid files.
//!
//! ```text
//! matroid-format 1
//! name: u23
//! ground: 3
//! kind: flats
//! {}
//! {0}
//! ...
//! ```
//!
//! `kind` is one of `flats`, `bases`, `circuits`, `graph` (data lines `u-v`,
//! optional `vertices:` header) or `matrix` (`prime:` header, one row of
//! residues per line). `#` starts a comment.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use super::{FiniteFieldMatrix, Graph, Matroid};
use crate::error::{Error, Result};
use crate::subset::Subset;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Flats,
    Bases,
    Circuits,
    Graph,
    Matrix,
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Ok(match s {
            "flats" => Kind::Flats,
            "bases" => Kind::Bases,
            "circuits" => Kind::Circuits,
            "graph" => Kind::Graph,
            "matrix" => Kind::Matrix,
            other => return Err(format!("unknown kind {other:?}")),
        })
    }
}

/// A parsed file: the matroid plus whatever representation it came with.
#[derive(Debug, Clone)]
pub struct MatroidFile {
    pub name: String,
    pub kind: Kind,
    pub matroid: Matroid,
    pub graph: Option<Graph>,
    pub matrix: Option<FiniteFieldMatrix>,
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn read_file(path: &Path) -> Result<MatroidFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| perr(0, format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<MatroidFile> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, "matroid-format 1")) => {}
        Some((no, other)) => {
            return Err(perr(
                no,
                format!("expected `matroid-format 1`, found {other:?}"),
            ))
        }
        None => return Err(perr(0, "empty file")),
    }

    let mut name = None;
    let mut ground = None;
    let mut kind = None;
    let mut prime = None;
    let mut vertices = None;
    let mut representable = None;
    let mut data: Vec<(usize, &str)> = Vec::new();

    for (no, line) in lines {
        if let Some((key, value)) = line
            .split_once(':')
            .filter(|_| data.is_empty() && !line.starts_with('{'))
        {
            let value = value.trim();
            let num = || {
                value
                    .parse::<u64>()
                    .map_err(|_| perr(no, format!("bad number {value:?}")))
            };
            match key.trim() {
                "name" => name = Some(value.to_string()),
                "ground" => ground = Some(num()? as usize),
                "kind" => kind = Some(value.parse::<Kind>().map_err(|m| perr(no, m))?),
                "prime" => prime = Some(num()?),
                "vertices" => vertices = Some(num()? as usize),
                "representable" => {
                    representable = Some(match value {
                        "yes" => true,
                        "no" => false,
                        _ => return Err(perr(no, "representable must be yes or no")),
                    })
                }
                other => return Err(perr(no, format!("unknown header {other:?}"))),
            }
        } else {
            data.push((no, line));
        }
    }

    let name = name.unwrap_or_default();
    let n = ground.ok_or_else(|| perr(0, "missing `ground:` header"))?;
    let kind = kind.ok_or_else(|| perr(0, "missing `kind:` header"))?;
    let subsets = || -> Result<Vec<Subset>> {
        data.iter()
            .map(|&(no, l)| {
                let s: Subset = l
                    .parse()
                    .map_err(|_| perr(no, format!("bad subset {l:?}")))?;
                if s.fits(n) {
                    Ok(s)
                } else {
                    Err(perr(no, format!("{s} exceeds ground set of size {n}")))
                }
            })
            .collect()
    };

    let mut graph = None;
    let mut matrix = None;
    let matroid = match kind {
        Kind::Flats => Matroid::from_flats(n, &subsets()?)?,
        Kind::Bases => Matroid::from_bases(n, &subsets()?)?,
        Kind::Circuits => Matroid::from_circuits(n, &subsets()?)?,
        Kind::Graph => {
            let edges = data
                .iter()
                .map(|&(no, l)| {
                    let (u, v) = l
                        .split_once('-')
                        .ok_or_else(|| perr(no, format!("bad edge {l:?}")))?;
                    let p = |x: &str| {
                        x.trim()
                            .parse::<usize>()
                            .map_err(|_| perr(no, format!("bad edge {l:?}")))
                    };
                    Ok((p(u)?, p(v)?))
                })
                .collect::<Result<Vec<_>>>()?;
            if edges.len() != n {
                return Err(perr(0, format!("ground: {n} but {} edges", edges.len())));
            }
            let v = vertices
                .unwrap_or_else(|| edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0));
            let g = Graph::new(v, edges)?;
            let m = Matroid::from_graph(&g)?;
            graph = Some(g);
            m
        }
        Kind::Matrix => {
            let p = prime.ok_or_else(|| perr(0, "matrix files need a `prime:` header"))?;
            let rows = data
                .iter()
                .map(|&(no, l)| {
                    let row = l
                        .split_whitespace()
                        .map(|x| {
                            x.parse::<i64>()
                                .map_err(|_| perr(no, format!("bad entry {x:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    if row.len() == n {
                        Ok(row)
                    } else {
                        Err(perr(
                            no,
                            format!("row has {} entries, expected {n}", row.len()),
                        ))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            let a = FiniteFieldMatrix::new(p, &rows)?;
            let m = if rows.is_empty() {
                Matroid::from_flats(n, &[Subset::full(n)])?
            } else {
                Matroid::from_matrix(&a)?
            };
            matrix = Some(a);
            m
        }
    };
    let matroid = match representable {
        Some(r) => matroid.with_representable(Some(r)),
        None => matroid,
    };
    Ok(MatroidFile {
        name,
        kind,
        matroid,
        graph,
        matrix,
    })
}

/// Serializes as a `flats` file.
pub fn write_flats(name: &str, m: &Matroid) -> String {
    let mut out = String::new();
    writeln!(out, "matroid-format 1").unwrap();
    writeln!(out, "name: {name}").unwrap();
    writeln!(out, "ground: {}", m.ground_size()).unwrap();
    writeln!(out, "kind: flats").unwrap();
    if let Some(r) = m.known_representable() {
        writeln!(out, "representable: {}", if r { "yes" } else { "no" }).unwrap();
    }
    for f in m.flats() {
        writeln!(out, "{f}").unwrap();
    }
    out
}
