//! Generalized-quadrangle cages and the girth-7 graphs obtained from them by
//! excision.
//!
//! The pipeline is: build GF(q) ([`gf`]), build the (q+1, 8)-cage Γ_q from its
//! coordinate labeling ([`cage`]), delete a structured vertex set H and add
//! perfect matchings on the vertices that lost a neighbor ([`excise_even`],
//! [`excise_odd`]), then certify degrees and exact girth ([`verify`]).

pub mod algorithms;
pub mod cage;
pub mod cli;
pub mod excise_even;
pub mod excise_odd;
pub mod factorization;
pub mod format;
pub mod gf;
pub mod graph;
pub mod latin;
pub mod plan;
pub mod verify;

pub use algorithms::{girth, girth_serial, witness};
pub use cage::{build_cage, moore_bound, Cage, Coord, Side, VertexLabel};
pub use gf::{make_field, Field, FieldElement, GfError};
pub use graph::{apply_surgery, Graph, GraphError, SurgerySpec};
