#![allow(dead_code)]

use hodge_matroid::{FiniteFieldMatrix, Graph, Matroid};
use proptest::prelude::*;

/// Column matroid of a random matrix over F_2 or F_3.
pub fn matrix_matroid(
    max_rows: usize,
    max_cols: usize,
) -> impl Strategy<Value = (u64, Vec<Vec<i64>>)> {
    (
        prop_oneof![Just(2u64), Just(3u64)],
        1..=max_rows,
        1..=max_cols,
    )
        .prop_flat_map(|(p, r, n)| {
            (
                Just(p),
                prop::collection::vec(prop::collection::vec(0..p as i64, n), r),
            )
        })
}

pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Matroid {
    Matroid::from_matrix(&FiniteFieldMatrix::new(p, rows).unwrap()).unwrap()
}

pub fn any_matroid(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matroid> {
    matrix_matroid(max_rows, max_cols).prop_map(|(p, rows)| from_rows(p, &rows))
}

/// Simple matroids of positive rank, obtained by simplifying matrix matroids.
pub fn geometry(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matroid> {
    any_matroid(max_rows, max_cols)
        .prop_map(|m| m.simplify().0)
        .prop_filter("positive rank", |m| m.rank() > 0)
}

pub fn graph(max_vertices: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    (2..=max_vertices).prop_flat_map(move |v| {
        prop::collection::vec((0..v, 0..v), 0..=max_edges)
            .prop_map(move |e| Graph::new(v, e).unwrap())
    })
}
