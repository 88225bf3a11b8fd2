//! Exact spectral algebra for subdivision products of digraphs and graphs.
//!
//! The crate builds the four subdivision products (vertex/arc join and
//! vertex/arc corona) of simple digraphs and their undirected analogues,
//! computes characteristic polynomials and coronals in exact integer
//! arithmetic, and verifies the closed-form spectral factorizations of
//! these products against direct construction.
//!
//! Everything except [`roots`] is float-free: identities are checked by
//! structural equality of canonical polynomials and rational functions.
//!
//! ```
//! use subspectra::digraph::DigraphMatrixKind;
//! use subspectra::formulas::{closed_form_charpoly_digraph, direct_product_charpoly};
//! use subspectra::products::ProductKind;
//! use subspectra::Digraph;
//!
//! let c3 = Digraph::new(3, [(0, 1), (1, 2), (2, 0)])?;
//! let k1 = Digraph::new(1, [])?;
//! let kind = ProductKind::SubdivisionVertexJoin;
//! let formula = closed_form_charpoly_digraph(kind, DigraphMatrixKind::Adjacency, &c3, &k1)?;
//! // the closed form agrees with the charpoly of the built product
//! assert_eq!(formula, direct_product_charpoly(kind, DigraphMatrixKind::Adjacency, &c3, &k1)?);
//! assert_eq!(formula.to_string(), "λ^7 - 3λ^5 - 3λ^3 - 4λ");
//! # Ok::<(), subspectra::Error>(())
//! ```

pub mod block;
pub mod digraph;
pub mod error;
pub mod formulas;
pub mod harness;
pub mod identities;
pub mod matrix;
pub mod poly;
pub mod products;
pub mod ratfunc;
pub mod roots;

pub use block::BlockSpec;
pub use digraph::{Digraph, Graph};
pub use error::{Error, Result};
pub use matrix::IntMatrix;
pub use poly::IntPoly;
pub use ratfunc::RatFunc;
