use std::sync::Arc;

use super::cone::{is_pointed, triangulate_cone};
use super::polytope::{facets, Polytope};
use crate::error::{Error, Result};
use crate::exactnum::{primitive_integer, rank, Rational, RationalVector};
use crate::symfun::{LinearForm, VariableTable};

/// Rays plus maximal cones given as ray-index sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<RationalVector>,
    pub maximal_cones: Vec<Vec<usize>>,
    pub pure_dim: usize,
}

impl Fan {
    /// Validates ingested fan data: rays are made primitive, cones must be
    /// pointed, nonempty and of a common dimension.
    pub fn new(dim: usize, rays: Vec<RationalVector>, cones: Vec<Vec<usize>>) -> Result<Fan> {
        if let Some(r) = rays.iter().find(|r| r.len() != dim) {
            return Err(Error::Dimension(format!(
                "ray of length {} in dimension {dim}",
                r.len()
            )));
        }
        if rays.iter().any(|r| crate::exactnum::is_zero_vector(r)) {
            return Err(Error::InvalidInput("zero ray".into()));
        }
        let rays: Vec<RationalVector> = rays.iter().map(|r| primitive_integer(r)).collect();
        for i in 0..rays.len() {
            for j in 0..i {
                if rays[i] == rays[j] {
                    return Err(Error::InvalidInput(format!(
                        "rays {j} and {i} are parallel"
                    )));
                }
            }
        }
        let mut pure_dim = None;
        let mut cones_out = Vec::new();
        for c in cones {
            if c.is_empty() || c.iter().any(|&i| i >= rays.len()) {
                return Err(Error::InvalidInput("cone references an unknown ray".into()));
            }
            let gens: Vec<RationalVector> = c.iter().map(|&i| rays[i].clone()).collect();
            if !is_pointed(&gens) {
                return Err(Error::NotPointed);
            }
            let k = rank(&gens);
            match pure_dim {
                None => pure_dim = Some(k),
                Some(p) if p != k => {
                    return Err(Error::InvalidInput(
                        "maximal cones of different dimensions".into(),
                    ))
                }
                _ => {}
            }
            let mut c = c;
            c.sort_unstable();
            c.dedup();
            cones_out.push(c);
        }
        Ok(Fan {
            dim,
            rays,
            maximal_cones: cones_out,
            pure_dim: pure_dim.unwrap_or(0),
        })
    }

    pub fn is_simplicial(&self) -> bool {
        self.maximal_cones.iter().all(|c| c.len() == self.pure_dim)
    }
}

/// Per-ray support values, numeric or symbolic.
#[derive(Clone, Debug)]
pub enum SupportValues {
    Numeric(Vec<Rational>),
    Symbolic {
        vars: Arc<VariableTable>,
        values: Vec<LinearForm>,
    },
}

#[derive(Clone, Debug)]
pub struct SupportData {
    pub fan: Fan,
    pub values: SupportValues,
}

impl SupportData {
    pub fn new(fan: Fan, values: SupportValues) -> Result<Self> {
        let n = match &values {
            SupportValues::Numeric(v) => v.len(),
            SupportValues::Symbolic { values, .. } => values.len(),
        };
        if n != fan.rays.len() {
            return Err(Error::Dimension(format!(
                "{} support values for {} rays",
                n,
                fan.rays.len()
            )));
        }
        Ok(SupportData { fan, values })
    }
}

/// Rays are the inward facet normals; one maximal cone per vertex.
pub fn normal_fan(p: &Polytope) -> Result<Fan> {
    let fs = facets(p)?;
    let rays: Vec<RationalVector> = fs.iter().map(|f| f.normal.clone()).collect();
    let cones = (0..p.vertices().len())
        .map(|v| {
            (0..fs.len())
                .filter(|&j| fs[j].vertices.contains(&v))
                .collect::<Vec<usize>>()
        })
        .collect();
    Ok(Fan {
        dim: p.dim(),
        rays,
        maximal_cones: cones,
        pure_dim: p.dim(),
    })
}

/// Splits every maximal cone into simplicial cones on its own rays.
pub fn triangulate_fan(f: &Fan) -> Result<Fan> {
    let mut cones = Vec::new();
    for c in &f.maximal_cones {
        cones.extend(triangulate_cone(&f.rays, c, f.pure_dim)?);
    }
    Ok(Fan {
        dim: f.dim,
        rays: f.rays.clone(),
        maximal_cones: cones,
        pure_dim: f.pure_dim,
    })
}
