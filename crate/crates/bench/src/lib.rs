//! Shared fixtures for the benchmarks.

use dmv_core::geometry::Polytope;
use dmv_core::mixed::{MinkowskiSequence, MixedCell, MixedSubdivision};

/// Lattice polygon bounded by two parabolic arcs; it has `4k` vertices.
pub fn lattice_polygon(k: i64) -> Polytope {
    let mut pts = Vec::new();
    for i in -k..=k {
        pts.push(vec![i, k * k - i * i]);
        pts.push(vec![i, i * i - k * k]);
    }
    let rows: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
    Polytope::from_i64(&rows).expect("valid lattice points")
}

/// The cross-polytope in dimension `d`.
pub fn cross_polytope(d: usize) -> Polytope {
    let mut rows = Vec::new();
    for i in 0..d {
        for s in [1, -1] {
            let mut v = vec![0i64; d];
            v[i] = s;
            rows.push(v);
        }
    }
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Polytope::from_i64(&refs).expect("valid lattice points")
}

/// Two triangles with a known five-cell mixed subdivision.
pub fn two_triangles() -> (MinkowskiSequence, MixedSubdivision) {
    let p1 = Polytope::from_i64(&[&[1, 0], &[0, 2], &[-1, -1]]).expect("triangle");
    let p2 = Polytope::from_i64(&[&[0, 0], &[2, 0], &[0, 2]]).expect("triangle");
    let seq = MinkowskiSequence::new(vec![p1, p2]).expect("same dimension");
    let cells = [
        [vec![0, 1], vec![0, 1]],
        [vec![1], vec![0, 1, 2]],
        [vec![0, 1, 2], vec![0]],
        [vec![1, 2], vec![0, 2]],
        [vec![0, 2], vec![0, 2]],
    ];
    let sub = MixedSubdivision::new(
        cells
            .into_iter()
            .map(|c| MixedCell::new(c.to_vec()))
            .collect(),
    );
    (seq, sub)
}
