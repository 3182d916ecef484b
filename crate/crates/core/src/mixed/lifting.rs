use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cayley::cayley_points;
use super::cell::MixedCell;
use super::subdivision::MixedSubdivision;
use super::MinkowskiSequence;
use crate::error::{Error, Result};
use crate::exactnum::{rank, rat, Rational, RationalVector};
use crate::geometry::{cone_facets, cone_over};

const MAX_ATTEMPTS: usize = 20;

/// Source of heights for the regular subdivision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lifting {
    /// Random integer heights in `[1, 10^4]`, redrawn until fine.
    Seed(u64),
    /// One height per vertex of each part.
    Heights(Vec<Vec<Rational>>),
}

#[derive(Clone, Debug)]
pub struct GeneratedSubdivision {
    pub subdivision: MixedSubdivision,
    pub heights: Vec<Vec<Rational>>,
    pub attempts: usize,
}

/// Lower facets of the lifted Cayley configuration; `None` unless every cell
/// is a simplex.
fn lower_cells(
    seq: &MinkowskiSequence,
    heights: &[Vec<Rational>],
) -> Result<Option<Vec<MixedCell>>> {
    let pts = cayley_points(seq);
    let full = seq.dim() + seq.len();
    let lifted: Vec<RationalVector> = pts
        .iter()
        .map(|c| {
            let mut v = c.coords[..full - 1].to_vec();
            v.push(heights[c.part][c.vertex].clone());
            v
        })
        .collect();
    let gens = cone_over(&lifted);
    if rank(&gens) < full + 1 {
        // Affine heights: the only cell is the whole configuration.
        if pts.len() != full {
            return Ok(None);
        }
        let mut parts = vec![Vec::new(); seq.len()];
        for c in &pts {
            parts[c.part].push(c.vertex);
        }
        return Ok(Some(vec![MixedCell::new(parts)]));
    }
    let facets = cone_facets(&gens)?;
    let mut cells = Vec::new();
    for f in facets {
        if !f.normal.last().is_some_and(Signed::is_positive) {
            continue;
        }
        if f.tight.len() != full {
            return Ok(None);
        }
        let mut parts = vec![Vec::new(); seq.len()];
        for &k in &f.tight {
            parts[pts[k].part].push(pts[k].vertex);
        }
        cells.push(MixedCell::new(parts));
    }
    cells.sort();
    Ok(Some(cells))
}

/// Fine mixed subdivision induced by a lifting of the Cayley configuration.
pub fn generate_fine_subdivision(
    seq: &MinkowskiSequence,
    lifting: &Lifting,
) -> Result<GeneratedSubdivision> {
    let total = seq.minkowski_total()?;
    if !total.is_full_dimensional() {
        return Err(Error::NotFullDimensional {
            found: total.affine_dim(),
            ambient: seq.dim(),
        });
    }
    let shape: Vec<usize> = seq.parts().iter().map(|p| p.vertices().len()).collect();
    match lifting {
        Lifting::Heights(h) => {
            if h.len() != shape.len() || h.iter().zip(&shape).any(|(row, &n)| row.len() != n) {
                return Err(Error::Dimension(
                    "heights do not match the part sizes".into(),
                ));
            }
            match lower_cells(seq, h)? {
                Some(cells) => Ok(GeneratedSubdivision {
                    subdivision: MixedSubdivision::new(cells),
                    heights: h.clone(),
                    attempts: 1,
                }),
                None => Err(Error::NonGenericLifting { attempts: 1 }),
            }
        }
        Lifting::Seed(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for attempt in 1..=MAX_ATTEMPTS {
                let h: Vec<Vec<Rational>> = shape
                    .iter()
                    .map(|&n| (0..n).map(|_| rat(rng.gen_range(1..=10_000))).collect())
                    .collect();
                if let Some(cells) = lower_cells(seq, &h)? {
                    return Ok(GeneratedSubdivision {
                        subdivision: MixedSubdivision::new(cells),
                        heights: h,
                        attempts: attempt,
                    });
                }
            }
            Err(Error::NonGenericLifting {
                attempts: MAX_ATTEMPTS,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Polytope;
    use crate::mixed::{validate_mixed_subdivision, verify_subdivision_additivity};

    #[test]
    fn random_lifting_is_fine_and_additive() {
        let p1 = Polytope::from_i64(&[&[1, 0], &[0, 2], &[-1, -1]]).unwrap();
        let p2 = Polytope::from_i64(&[&[0, 0], &[2, 0], &[0, 2]]).unwrap();
        let seq = MinkowskiSequence::new(vec![p1, p2]).unwrap();
        let g = generate_fine_subdivision(&seq, &Lifting::Seed(7)).unwrap();
        validate_mixed_subdivision(&seq, &g.subdivision).unwrap();
        assert!(verify_subdivision_additivity(&seq, &g.subdivision).unwrap());
    }

    #[test]
    fn simplex_configuration_is_one_cell() {
        let tri = Polytope::from_i64(&[&[-2, -2, -1], &[1, 2, 1], &[2, 0, 2]]).unwrap();
        let seg = Polytope::from_i64(&[&[2, -2, 1], &[2, 2, -2]]).unwrap();
        let seq = MinkowskiSequence::new(vec![tri, seg]).unwrap();
        let g = generate_fine_subdivision(&seq, &Lifting::Seed(0)).unwrap();
        assert_eq!(
            g.subdivision.cells,
            vec![MixedCell::new(vec![vec![0, 1, 2], vec![0, 1]])]
        );
        validate_mixed_subdivision(&seq, &g.subdivision).unwrap();
    }

    #[test]
    fn flat_heights_are_not_generic() {
        let sq = Polytope::from_i64(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let seq = MinkowskiSequence::new(vec![sq]).unwrap();
        let h = Lifting::Heights(vec![vec![rat(0); 4]]);
        assert_eq!(
            generate_fine_subdivision(&seq, &h).unwrap_err(),
            Error::NonGenericLifting { attempts: 1 }
        );
    }
}
