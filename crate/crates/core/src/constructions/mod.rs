//! Diagram constructions: crossing-replacement templates and the transforms
//! built from them, closed 2-braids, recognizers, and diagram enumeration.
pub mod corpus;
pub mod enumerate;
pub mod gadget;
pub mod realize;
pub mod recognize;
pub mod template;
pub mod torus;
pub mod transforms;

pub use enumerate::{enumerate_knot_diagrams, EnumerationItem, ENUMERATION_CAP};
pub use gadget::taniyama_gadget;
pub use recognize::{is_knot_equality_diagram, is_link_equality_diagram};
pub use template::{splice, validate_template, Check, TangleTemplate, ValidationReport};
pub use torus::torus_2p;
pub use transforms::{
    check_minimal_set, doubled_set, doubling_transform, iterate_taniyama, taniyama_transform, TaniyamaOptions, Transformed,
};
