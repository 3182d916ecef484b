use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    dot, feasible_point, injective_coordinates, nullspace, primitive_integer, rank, Rational,
    RationalVector,
};

/// A facet of a full-dimensional cone: inward primitive normal and the
/// indices of generators lying on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFacet {
    pub normal: RationalVector,
    pub tight: Vec<usize>,
}

/// Generators `(1, y)` of the cone over a point set.
pub fn cone_over(points: &[RationalVector]) -> Vec<RationalVector> {
    points
        .iter()
        .map(|y| {
            let mut v = Vec::with_capacity(y.len() + 1);
            v.push(Rational::one());
            v.extend(y.iter().cloned());
            v
        })
        .collect()
}

/// Facets of the cone generated by `gens`, which must span its ambient space.
///
/// Scans all (n-1)-subsets of generators; a subset of rank n-1 whose normal
/// has constant sign on all generators yields a facet.
pub fn cone_facets(gens: &[RationalVector]) -> Result<Vec<ConeFacet>> {
    let n = gens.first().map_or(0, Vec::len);
    if n == 0 {
        return Err(Error::InvalidInput("empty generator list".into()));
    }
    let r = rank(gens);
    if r < n {
        return Err(Error::NotFullDimensional {
            found: r,
            ambient: n,
        });
    }
    let mut seen: BTreeSet<RationalVector> = BTreeSet::new();
    let mut out = Vec::new();
    if n == 1 {
        let pos = gens.iter().any(|g| g[0].is_positive());
        let negs = gens.iter().any(|g| g[0].is_negative());
        if pos && negs {
            return Ok(out);
        }
        let sign = if pos {
            Rational::one()
        } else {
            -Rational::one()
        };
        out.push(ConeFacet {
            normal: vec![sign],
            tight: Vec::new(),
        });
        return Ok(out);
    }
    let mut subset: Vec<usize> = (0..n - 1).collect();
    loop {
        let rows: Vec<RationalVector> = subset.iter().map(|&i| gens[i].clone()).collect();
        let ns = nullspace(&rows, n);
        if ns.len() == 1 {
            let mut normal = primitive_integer(&ns[0]);
            if !seen.contains(&normal) {
                let vals: Vec<Rational> = gens.iter().map(|g| dot(&normal, g)).collect();
                let has_pos = vals.iter().any(Signed::is_positive);
                let has_neg = vals.iter().any(Signed::is_negative);
                if !(has_pos && has_neg) {
                    if has_neg {
                        normal = normal.iter().map(|x| -x).collect();
                    }
                    if seen.insert(normal.clone()) {
                        let tight = (0..gens.len()).filter(|&i| vals[i].is_zero()).collect();
                        out.push(ConeFacet { normal, tight });
                    }
                }
            }
        }
        if !next_combination(&mut subset, gens.len()) {
            break;
        }
    }
    Ok(out)
}

/// Advances to the next k-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Generators of the dual cone `{w : <w, g> >= 0 for all g}`.
pub fn dual_cone(gens: &[RationalVector]) -> Result<Vec<RationalVector>> {
    Ok(cone_facets(gens)?.into_iter().map(|f| f.normal).collect())
}

/// True iff the cone generated by `gens` contains no line.
pub fn is_pointed(gens: &[RationalVector]) -> bool {
    if gens.is_empty() {
        return true;
    }
    let n = gens[0].len();
    let k = gens.len();
    let mut a: Vec<RationalVector> = (0..n)
        .map(|i| gens.iter().map(|g| g[i].clone()).collect())
        .collect();
    a.push(vec![Rational::one(); k]);
    let mut b = vec![Rational::zero(); n];
    b.push(Rational::one());
    feasible_point(&a, &b).is_none()
}

/// Pulling triangulation of the cone spanned by `rays[idx]`, whose linear
/// span has dimension `k`. Returns simplicial cones as sorted index lists.
pub fn triangulate_cone(
    rays: &[RationalVector],
    idx: &[usize],
    k: usize,
) -> Result<Vec<Vec<usize>>> {
    let gens: Vec<RationalVector> = idx.iter().map(|&i| rays[i].clone()).collect();
    if !is_pointed(&gens) {
        return Err(Error::NotPointed);
    }
    pull(rays, idx, k)
}

fn pull(rays: &[RationalVector], idx: &[usize], k: usize) -> Result<Vec<Vec<usize>>> {
    if idx.len() == k {
        let mut s = idx.to_vec();
        s.sort_unstable();
        return Ok(vec![s]);
    }
    if k == 0 {
        return Ok(vec![Vec::new()]);
    }
    if k == 1 {
        return Ok(vec![vec![idx[0]]]);
    }
    let gens: Vec<RationalVector> = idx.iter().map(|&i| rays[i].clone()).collect();
    let coords = injective_coordinates(&gens, k).ok_or_else(|| {
        Error::InvalidInput("cone generators do not span the stated dimension".into())
    })?;
    let local: Vec<RationalVector> = gens
        .iter()
        .map(|g| coords.iter().map(|&c| g[c].clone()).collect())
        .collect();
    let mut out = Vec::new();
    for f in cone_facets(&local)? {
        if f.tight.contains(&0) {
            continue;
        }
        let sub: Vec<usize> = f.tight.iter().map(|&t| idx[t]).collect();
        for mut s in pull(rays, &sub, k - 1)? {
            s.push(idx[0]);
            s.sort_unstable();
            out.push(s);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rvec;

    #[test]
    fn square_cone_gives_two_simplices() {
        let rays = vec![
            rvec(&[1, 0, 1]),
            rvec(&[0, 1, 1]),
            rvec(&[-1, 0, 1]),
            rvec(&[0, -1, 1]),
        ];
        let t = triangulate_cone(&rays, &[0, 1, 2, 3], 3).unwrap();
        assert_eq!(t, vec![vec![0, 1, 2], vec![0, 2, 3]]);
    }

    #[test]
    fn orthant_is_self_dual() {
        let gens = vec![rvec(&[1, 0, 0]), rvec(&[0, 1, 0]), rvec(&[0, 0, 1])];
        let mut d = dual_cone(&gens).unwrap();
        d.sort();
        let mut g = gens.clone();
        g.sort();
        assert_eq!(d, g);
    }

    #[test]
    fn line_is_not_pointed() {
        let rays = vec![rvec(&[1, 0]), rvec(&[-1, 0]), rvec(&[0, 1])];
        assert!(!is_pointed(&rays));
        assert_eq!(
            triangulate_cone(&rays, &[0, 1, 2], 2),
            Err(Error::NotPointed)
        );
    }

    #[test]
    fn combinations_enumerate_all() {
        let mut c = vec![0, 1];
        let mut count = 1;
        while next_combination(&mut c, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
