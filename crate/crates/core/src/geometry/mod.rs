//! Vertex-described polytopes, facets, normal fans, cones and volumes.

mod cone;
mod fan;
mod polytope;

pub use cone::{cone_facets, cone_over, dual_cone, is_pointed, triangulate_cone, ConeFacet};
pub use fan::{normal_fan, triangulate_fan, Fan, SupportData, SupportValues};
pub use polytope::{
    affine_dim, facets, minkowski_sum, normalized_volume, polar_dual, support_value,
    triangulate_polytope, Facet, Polytope,
};
