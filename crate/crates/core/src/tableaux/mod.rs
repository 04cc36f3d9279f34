//! Multipartitions, standard tableaux, residues and degrees.

mod charge;
mod degree;
mod index;
mod multipartition;
mod quiver;
mod tableau;

pub use charge::{is_separated, normalize_charge, separation_product};
pub use degree::{add_nodes, defect_degree_p, large_e_bound, node_degree, shape_degree, tableau_degree};
pub use index::{Combinatorics, TabData};
pub use multipartition::{residue_of, Multipartition, Node};
pub use quiver::{cartan, edge, lambda_count, Edge};
pub use tableau::{
    bruhat_le, inversions, linear_key, reduced_word, reduced_word_largest_first, std_tableaux, StdTableau,
};
