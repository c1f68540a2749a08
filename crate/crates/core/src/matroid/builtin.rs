use super::{io, FiniteFieldMatrix, Graph, Matroid, Provenance};
use crate::error::{Error, Result};
use crate::subset::Subset;

const MAX_BUILTIN: usize = 16;

const VAMOS: &str = include_str!("../../corpus/vamos.matroid");

/// `U(r, n)`: every subset of size below `r` is a flat.
pub fn uniform(r: usize, n: usize) -> Result<Matroid> {
    if r > n || n > MAX_BUILTIN {
        return Err(Error::BadParameters(format!(
            "uniform({r},{n}) needs r <= n <= {MAX_BUILTIN}"
        )));
    }
    let full = Subset::full(n);
    let mut flats: Vec<Subset> = full.subsets().filter(|s| s.len() < r).collect();
    flats.push(full);
    Ok(Matroid::from_flats_unchecked(n, &flats, Provenance::Flats).with_representable(Some(true)))
}

pub fn boolean(n: usize) -> Result<Matroid> {
    uniform(n, n)
}

/// All nonzero vectors of `F_2^3`.
pub fn fano_matrix() -> FiniteFieldMatrix {
    let rows: Vec<Vec<i64>> = (0..3)
        .map(|bit| (1..8i64).map(|v| v >> bit & 1).collect())
        .collect();
    FiniteFieldMatrix::new(2, &rows).expect("2 is prime")
}

pub fn fano() -> Result<Matroid> {
    Matroid::from_matrix(&fano_matrix())
}

pub fn vamos() -> Result<Matroid> {
    Ok(io::parse(VAMOS)?.matroid)
}

pub fn k4() -> Result<Matroid> {
    Matroid::from_graph(&Graph::complete(4))
}

pub fn c5() -> Result<Matroid> {
    Matroid::from_graph(&Graph::cycle(5))
}

/// Named instances: `uniform(r,n)` or `U(r,n)`, `boolean(n)`, `fano`,
/// `vamos`, `k4`, `c5`.
pub fn builtin(name: &str) -> Result<Matroid> {
    let bad = || Error::BadParameters(format!("unknown builtin {name:?}"));
    let name = name.trim();
    let args = |prefix: &str| -> Option<Vec<usize>> {
        let inner = name
            .strip_prefix(prefix)?
            .strip_prefix('(')?
            .strip_suffix(')')?;
        inner.split(',').map(|x| x.trim().parse().ok()).collect()
    };
    match name.to_ascii_lowercase().as_str() {
        "fano" => return fano(),
        "vamos" => return vamos(),
        "k4" => return k4(),
        "c5" => return c5(),
        _ => {}
    }
    if let Some(a) = args("uniform").or_else(|| args("U")) {
        return match a[..] {
            [r, n] => uniform(r, n),
            _ => Err(bad()),
        };
    }
    if let Some(a) = args("boolean") {
        return match a[..] {
            [n] => boolean(n),
            _ => Err(bad()),
        };
    }
    Err(bad())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_counts() {
        let f = fano().unwrap();
        assert_eq!(f.whitney_second(), vec![1, 7, 7, 1]);
        assert!(f.is_simple());
        for a in 0..7 {
            for b in a + 1..7 {
                assert_eq!(f.rank_of(Subset::from_elems([a, b])), 2);
            }
        }
    }

    #[test]
    fn vamos_shape() {
        let v = vamos().unwrap();
        assert_eq!(v.rank(), 4);
        assert_eq!(v.bases().unwrap().len(), 65);
        assert_eq!(v.known_representable(), Some(false));
        assert_eq!(v.num_flats(), 79);
    }

    #[test]
    fn names() {
        assert_eq!(builtin("U(2,3)").unwrap(), uniform(2, 3).unwrap());
        assert_eq!(builtin("boolean(3)").unwrap().num_flats(), 8);
        assert_eq!(builtin("C5").unwrap(), uniform(4, 5).unwrap());
        assert!(builtin("uniform(4,3)").is_err());
        assert!(builtin("petersen").is_err());
    }
}
