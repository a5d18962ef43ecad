//! Gadget catalog, property verification, substitutions, the prism and the
//! reduction pipelines.

pub mod catalog;
pub mod prism;
pub mod reduce;
pub mod square;
pub mod substitute;
pub mod verify;

pub use catalog::{orientation_of, Gadget, GadgetKind, Interconnector, VerifyMode};
pub use prism::{hairy_prism, prism};
pub use reduce::{reduce, reduce_skeleton, ReduceTarget, Reduction};
pub use square::{h, h_inverse, square_orientation, square_substitution, square_transport};
pub use substitute::{
    compose_orientation, compose_orientation_utree, double_ladder_substitution, strictify, strictify_axis,
    three_plug_substitution, utree_substitution, windmill_substitution, windmill_substitution_with,
    windmill_transport, ActiveEnd, CopyInfo, Link, SubstitutionMap,
};
pub use verify::{verify_gadget, verify_gadget_with, Check, CheckStatus, GadgetReport, DEFAULT_VERIFY_BUDGET};
