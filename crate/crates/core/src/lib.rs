//! Exact computation of the Pfaffian-tree polynomial of 3-graphs and the
//! identities around it.
//!
//! ```
//! use pfaffian_tree::{pfaffian_tree_poly, tree_generating_function, OrientationClass, ThreeGraph};
//!
//! let g = ThreeGraph::complete(5).unwrap();
//! let p = pfaffian_tree_poly(&g, 1).unwrap();
//! assert_eq!(p.len(), 15);
//! assert_eq!(p, tree_generating_function(&g, &OrientationClass::canonical(5)).unwrap());
//! ```

pub mod error;
pub mod hypergraph;
pub mod io;
pub mod linkinv;
pub mod orient;
pub mod pfaffian;
pub mod relations;
pub mod ring;
pub mod treepoly;

pub use error::{Error, Result};
pub use hypergraph::{graph_is_tree, graph_spanning_trees, SimpleGraph, ThreeGraph};
pub use linkinv::{conway_c2m2, conway_cm1, LinkData, LinkingMatrix};
pub use orient::{epsilon, tree_monomial, tree_orientation, OrientationClass, Permutation, Sign};
pub use pfaffian::{pf_combinatorial, pf_numeric, pf_row_development, Matrix, SkewMatrix};
pub use ring::{AntisymPoly, CommPoly, Generator, Monomial, Ring};
pub use treepoly::{
    complete_poly, epsilon_sum_complete, kirchhoff_poly, lambda_matrix, pfaffian_tree_poly,
    tree_generating_function,
};
