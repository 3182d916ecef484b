use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use super::cone::{cone_facets, cone_over, triangulate_cone};
use crate::error::{Error, Result};
use crate::exactnum::{
    det, dot, is_extreme_point, primitive_with_scale, rank, sub, Rational, RationalVector,
};

/// Convex hull of finitely many points, stored by its vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<RationalVector>,
}

impl Polytope {
    /// Keeps the extreme points of `points`, deduplicated and sorted.
    pub fn new(dim: usize, points: Vec<RationalVector>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidInput(
                "a polytope needs at least one point".into(),
            ));
        }
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::Dimension(format!(
                "point of length {} in ambient dimension {dim}",
                p.len()
            )));
        }
        let uniq: Vec<RationalVector> = points
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let vertices = extreme_subset(&uniq);
        Ok(Polytope { dim, vertices })
    }

    /// Trusts the caller that `vertices` are distinct extreme points.
    pub(crate) fn from_vertices_unchecked(dim: usize, mut vertices: Vec<RationalVector>) -> Self {
        vertices.sort();
        Polytope { dim, vertices }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.len());
        Polytope::new(dim, rows.iter().map(|r| crate::exactnum::rvec(r)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[RationalVector] {
        &self.vertices
    }

    pub fn affine_dim(&self) -> usize {
        affine_dim(&self.vertices)
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.affine_dim() == self.dim
    }

    pub fn translate(&self, t: &[Rational]) -> Polytope {
        Polytope::from_vertices_unchecked(
            self.dim,
            self.vertices
                .iter()
                .map(|v| crate::exactnum::add(v, t))
                .collect(),
        )
    }

    /// Dilation by a nonzero scalar.
    pub fn scale(&self, s: &Rational) -> Polytope {
        Polytope::from_vertices_unchecked(
            self.dim,
            self.vertices
                .iter()
                .map(|v| crate::exactnum::scale(v, s))
                .collect(),
        )
    }

    /// Index of a vertex, if present.
    pub fn vertex_index(&self, v: &[Rational]) -> Option<usize> {
        self.vertices.binary_search_by(|w| w.as_slice().cmp(v)).ok()
    }
}

fn extreme_subset(points: &[RationalVector]) -> Vec<RationalVector> {
    if points.len() <= 2 {
        return points.to_vec();
    }
    let d = points[0].len();
    // Unique maximisers of a few fixed directions are vertices without an LP.
    let mut certified = vec![false; points.len()];
    let mut dirs: Vec<Vec<i64>> = Vec::new();
    for i in 0..d {
        let mut e = vec![0; d];
        e[i] = 1;
        dirs.push(e.clone());
        e[i] = -1;
        dirs.push(e);
    }
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    for _ in 0..2 * d + 8 {
        dirs.push(
            (0..d)
                .map(|_| {
                    state = state
                        .wrapping_mul(6_364_136_223_846_793_005)
                        .wrapping_add(1_442_695_040_888_963_407);
                    ((state >> 33) % 201) as i64 - 100
                })
                .collect(),
        );
    }
    for dir in &dirs {
        let vals: Vec<Rational> = points
            .iter()
            .map(|p| {
                p.iter()
                    .zip(dir)
                    .map(|(x, &c)| x * Rational::from_integer(c.into()))
                    .sum()
            })
            .collect();
        let best = vals.iter().max().expect("nonempty");
        let mut hits = vals.iter().enumerate().filter(|(_, v)| *v == best);
        if let (Some((i, _)), None) = (hits.next(), hits.next()) {
            certified[i] = true;
        }
    }
    // Dropping interior points as they are found keeps later LPs small.
    let mut alive = vec![true; points.len()];
    for i in 0..points.len() {
        if certified[i] {
            continue;
        }
        let others: Vec<RationalVector> = points
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i && alive[*j])
            .map(|(_, q)| q.clone())
            .collect();
        if !is_extreme_point(&points[i], &others) {
            alive[i] = false;
        }
    }
    points
        .iter()
        .zip(&alive)
        .filter(|(_, &a)| a)
        .map(|(p, _)| p.clone())
        .collect()
}

/// Dimension of the affine hull; -1 is never returned (empty sets give 0).
pub fn affine_dim(points: &[RationalVector]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let diffs: Vec<RationalVector> = points[1..].iter().map(|p| sub(p, &points[0])).collect();
    rank(&diffs)
}

/// `h_P(v) = -min_{y in P} <v, y>`.
pub fn support_value(p: &Polytope, v: &[Rational]) -> Rational {
    p.vertices
        .iter()
        .map(|y| -dot(v, y))
        .max()
        .expect("polytopes are nonempty")
}

/// Facet `{y : <normal, y> = -offset}` with `<normal, y> >= -offset` on P.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    pub normal: RationalVector,
    pub offset: Rational,
    pub vertices: Vec<usize>,
}

pub fn facets(p: &Polytope) -> Result<Vec<Facet>> {
    let ad = p.affine_dim();
    if ad < p.dim {
        return Err(Error::NotFullDimensional {
            found: ad,
            ambient: p.dim,
        });
    }
    let gens = cone_over(&p.vertices);
    let mut out = Vec::new();
    for f in cone_facets(&gens)? {
        // (c, a) with c + <a, y> >= 0: inward normal a, offset c.
        let (s, a) = primitive_with_scale(&f.normal[1..]);
        out.push(Facet {
            normal: a,
            offset: &f.normal[0] / s,
            vertices: f.tight,
        });
    }
    Ok(out)
}

/// Extreme points of `Σ w_i P_i`, accumulated one summand at a time.
pub fn minkowski_sum(ps: &[Polytope], weights: &[Rational]) -> Result<Polytope> {
    if ps.is_empty() {
        return Err(Error::InvalidInput("empty Minkowski sum".into()));
    }
    if ps.len() != weights.len() {
        return Err(Error::Dimension("one weight per summand required".into()));
    }
    let d = ps[0].dim;
    if ps.iter().any(|p| p.dim != d) {
        return Err(Error::Dimension(
            "summands live in different dimensions".into(),
        ));
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return Err(Error::InvalidInput(
            "Minkowski weights must be positive".into(),
        ));
    }
    let mut acc: Vec<RationalVector> = vec![vec![Rational::zero(); d]];
    for (p, w) in ps.iter().zip(weights) {
        let cand: BTreeSet<RationalVector> = acc
            .iter()
            .flat_map(|a| {
                p.vertices.iter().map(move |v| {
                    a.iter()
                        .zip(v)
                        .map(|(x, y)| x + y * w)
                        .collect::<RationalVector>()
                })
            })
            .collect();
        let cand: Vec<RationalVector> = cand.into_iter().collect();
        acc = extreme_subset(&cand);
    }
    Ok(Polytope::from_vertices_unchecked(d, acc))
}

/// Triangulation of a full-dimensional polytope into simplices given as
/// sorted vertex index lists.
pub fn triangulate_polytope(p: &Polytope) -> Result<Vec<Vec<usize>>> {
    let ad = p.affine_dim();
    if ad < p.dim {
        return Err(Error::NotFullDimensional {
            found: ad,
            ambient: p.dim,
        });
    }
    let gens = cone_over(&p.vertices);
    let idx: Vec<usize> = (0..gens.len()).collect();
    triangulate_cone(&gens, &idx, p.dim + 1)
}

/// `d!` times the Euclidean volume; zero for lower-dimensional input.
pub fn normalized_volume(p: &Polytope) -> Rational {
    if p.dim == 0 {
        return Rational::from_integer(1.into());
    }
    let Ok(simplices) = triangulate_polytope(p) else {
        return Rational::zero();
    };
    let gens = cone_over(&p.vertices);
    simplices
        .iter()
        .map(|s| {
            let m: Vec<RationalVector> = s.iter().map(|&i| gens[i].clone()).collect();
            det(&m).expect("square").abs()
        })
        .sum()
}

/// `{v : h_P(v) <= 1}` for P with the origin in its interior.
pub fn polar_dual(p: &Polytope) -> Result<Polytope> {
    let fs = facets(p)?;
    if fs.iter().any(|f| !f.offset.is_positive()) {
        return Err(Error::OriginNotInterior);
    }
    let verts = fs
        .iter()
        .map(|f| crate::exactnum::scale(&f.normal, &f.offset.recip()))
        .collect();
    Ok(Polytope::from_vertices_unchecked(p.dim, verts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, rvec};

    fn quad() -> Polytope {
        Polytope::from_i64(&[&[1, -1], &[1, 1], &[2, 1], &[3, -1]]).unwrap()
    }

    #[test]
    fn support_values() {
        let seg = Polytope::from_i64(&[&[1], &[3]]).unwrap();
        assert_eq!(support_value(&seg, &rvec(&[1])), rat(-1));
        assert_eq!(support_value(&seg, &rvec(&[-1])), rat(3));
        assert_eq!(support_value(&quad(), &rvec(&[-2, -1])), rat(5));
        assert_eq!(support_value(&quad(), &rvec(&[0, 0])), rat(0));
    }

    #[test]
    fn quadrilateral_facets() {
        let mut normals: Vec<_> = facets(&quad())
            .unwrap()
            .into_iter()
            .map(|f| (f.normal, f.offset))
            .collect();
        normals.sort();
        let mut expected = vec![
            (rvec(&[0, 1]), rat(1)),
            (rvec(&[1, 0]), rat(-1)),
            (rvec(&[0, -1]), rat(1)),
            (rvec(&[-2, -1]), rat(5)),
        ];
        expected.sort();
        assert_eq!(normals, expected);
    }

    #[test]
    fn interior_points_are_dropped() {
        let p =
            Polytope::from_i64(&[&[0, 0], &[2, 0], &[0, 2], &[1, 1], &[0, 1], &[2, 2]]).unwrap();
        assert_eq!(p.vertices().len(), 4);
    }

    #[test]
    fn volumes() {
        let simplex =
            Polytope::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).unwrap();
        assert_eq!(normalized_volume(&simplex), rat(1));
        let square = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        assert_eq!(normalized_volume(&square), rat(2));
        let seg = Polytope::from_i64(&[&[0, 0], &[1, 1]]).unwrap();
        assert_eq!(normalized_volume(&seg), rat(0));
        assert!(matches!(
            facets(&seg),
            Err(Error::NotFullDimensional { .. })
        ));
    }

    #[test]
    fn minkowski_examples() {
        let p1 = Polytope::from_i64(&[&[1, 0], &[0, 2], &[-1, -1]]).unwrap();
        let p2 = Polytope::from_i64(&[&[0, 0], &[2, 0], &[0, 2]]).unwrap();
        let s = minkowski_sum(&[p1, p2], &[rat(1), rat(1)]).unwrap();
        let expected =
            Polytope::from_i64(&[&[0, 4], &[2, 2], &[3, 0], &[1, -1], &[-1, -1], &[-1, 1]])
                .unwrap();
        assert_eq!(s, expected);
        let e1 = Polytope::from_i64(&[&[0, 0], &[1, 0]]).unwrap();
        let e2 = Polytope::from_i64(&[&[0, 0], &[0, 1]]).unwrap();
        let sq = minkowski_sum(&[e1, e2], &[rat(1), rat(1)]).unwrap();
        assert_eq!(sq.vertices().len(), 4);
    }

    #[test]
    fn polar_of_cube_is_cross_polytope() {
        let cube = Polytope::from_i64(&[
            &[-1, -1, -1],
            &[-1, -1, 1],
            &[-1, 1, -1],
            &[-1, 1, 1],
            &[1, -1, -1],
            &[1, -1, 1],
            &[1, 1, -1],
            &[1, 1, 1],
        ])
        .unwrap();
        let cross = polar_dual(&cube).unwrap();
        let expected = Polytope::from_i64(&[
            &[1, 0, 0],
            &[-1, 0, 0],
            &[0, 1, 0],
            &[0, -1, 0],
            &[0, 0, 1],
            &[0, 0, -1],
        ])
        .unwrap();
        assert_eq!(cross, expected);
        assert_eq!(polar_dual(&cross).unwrap(), cube);
        assert_eq!(polar_dual(&quad()), Err(Error::OriginNotInterior));
    }
}
