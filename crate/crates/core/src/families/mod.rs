//! Zonotopes, generalized permutohedra, associahedra and the planar φ³
//! amplitude, with their closed forms.

mod assoc;
pub mod genperm;
mod zonotope;

pub use assoc::{
    amplitude_sign, associahedron_dmv, associahedron_dmv_geometric, associahedron_from_genperm,
    associahedron_to_mandelstam, associahedron_vars, catalan, enumerate_plane_binary_trees,
    interval_list, pb_to_pc, phi3_amplitude, MandelstamTable, PlanarCubicTree, PlaneBinaryTree,
    ASSOCIAHEDRON_MAX_N, PLANE_TREE_MAX_N,
};
pub use genperm::{
    fig4_cells, genperm_cell_dmv, genperm_cell_dmv_geometric, genperm_dmv_closed_form,
    genperm_dmv_geometric, genperm_mixed_cell, genperm_sequence, genperm_vars, jm2_sides,
    parse_subset, regular_genperm_subdivision, subset_label, subsets, verify_genperm_identities,
    GENPERM_MAX_N,
};
pub use zonotope::{
    contraction_limit, deletion_contraction_split, tiling_dmv, verify_deletion_contraction,
    zonotope_dmv, Sign, SignVector, Zonotope,
};
