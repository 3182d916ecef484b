//! Seeded generators for test corpora and randomized verification.

use num_traits::Signed;
use rand::Rng;

use crate::exactnum::{rat, RationalVector};
use crate::geometry::{facets, Polytope};
use crate::mixed::MinkowskiSequence;

const MAX_TRIES: usize = 1000;

/// Integer point in `[-range, range]^d`.
pub fn random_point<R: Rng>(rng: &mut R, d: usize, range: i64) -> RationalVector {
    (0..d).map(|_| rat(rng.gen_range(-range..=range))).collect()
}

/// Full-dimensional hull of `points` integer points in `[-range, range]^d`.
pub fn random_polytope<R: Rng>(rng: &mut R, d: usize, points: usize, range: i64) -> Polytope {
    for _ in 0..MAX_TRIES {
        let pts = (0..points).map(|_| random_point(rng, d, range)).collect();
        let p = Polytope::new(d, pts).expect("points have dimension d");
        if p.is_full_dimensional() {
            return p;
        }
    }
    panic!("no full-dimensional sample in {MAX_TRIES} tries");
}

/// True iff the origin lies strictly inside the full-dimensional `p`.
pub fn contains_origin_strictly(p: &Polytope) -> bool {
    facets(p).is_ok_and(|fs| fs.iter().all(|f| f.offset.is_positive()))
}

/// Polytope with at most `max_vertices` vertices and the origin strictly inside.
pub fn random_polytope_with_origin<R: Rng>(
    rng: &mut R,
    d: usize,
    max_vertices: usize,
    range: i64,
) -> Polytope {
    assert!(max_vertices > d, "need at least d+1 vertices");
    for _ in 0..MAX_TRIES {
        let n = rng.gen_range(d + 1..=max_vertices);
        let p = random_polytope(rng, d, n, range);
        if contains_origin_strictly(&p) {
            return p;
        }
    }
    panic!("no sample contained the origin in {MAX_TRIES} tries");
}

/// `r` full-dimensional parts with the origin strictly inside each.
///
/// Every support value is then positive, so the sequence is regular and
/// positive weights keep the origin inside the weighted sum.
pub fn random_origin_sequence<R: Rng>(
    rng: &mut R,
    d: usize,
    r: usize,
    max_vertices: usize,
    range: i64,
) -> MinkowskiSequence {
    let parts = (0..r)
        .map(|_| random_polytope_with_origin(rng, d, max_vertices, range))
        .collect();
    MinkowskiSequence::new(parts).expect("parts share the dimension")
}

/// `r` parts, each the hull of `points` samples, redrawn until the
/// Minkowski sum is full-dimensional. Parts may be lower-dimensional.
pub fn random_sequence<R: Rng>(
    rng: &mut R,
    d: usize,
    r: usize,
    points: usize,
    range: i64,
) -> MinkowskiSequence {
    for _ in 0..MAX_TRIES {
        let parts = (0..r)
            .map(|_| {
                let pts = (0..points).map(|_| random_point(rng, d, range)).collect();
                Polytope::new(d, pts).expect("points have dimension d")
            })
            .collect();
        let seq = MinkowskiSequence::new(parts).expect("parts share the dimension");
        if seq.minkowski_total().is_ok_and(|t| t.is_full_dimensional()) {
            return seq;
        }
    }
    panic!("no full-dimensional sum in {MAX_TRIES} tries");
}
