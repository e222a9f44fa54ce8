//! Finite Niebrzydowski tribrackets (knot-theoretic ternary quasigroups).
//!
//! A tribracket is a finite set with a ternary operation `[a,b,c]` that is a
//! bijection in each argument separately and satisfies the compatibility law
//! `[c,[a,b,c],[a,c,d]] = [b,[a,b,c],[a,b,d]] = [d,[a,b,d],[a,c,d]]`.
//! This crate validates and constructs such structures, computes their
//! six-variable polynomials and subtribracket polynomials, enumerates all
//! structures of small order, and computes the region-coloring counting
//! invariant of oriented links (from PD codes) together with its
//! subtribracket-polynomial enhancement.
//!
//! Elements are 1-based in every public interface, matching the usual
//! operation-tensor tables; storage is 0-based internally.

pub mod algebra;
pub mod coloring;
pub mod diagram;
pub mod enumeration;
pub mod polynomial;
pub mod reference;
pub mod threads;

pub use algebra::{
    alexander_tribracket, all_subtribrackets, cyclic_group_table, dehn_tribracket,
    find_isomorphism, generated_subtribracket, is_closed, is_homomorphism, make_tribracket,
    validate, AxiomFailure, FamilyError, SubsetError, Tensor3, TensorParseError, Tribracket,
    ValidationReport,
};
pub use coloring::{
    count_colorings, enhancement, enumerate_colorings, image_subtribracket, EnhancementMultiset,
    RegionColoring,
};
pub use diagram::{
    faces, parse_pd, reverse_component, CrossingRelation, LinkDiagram, PDCode, PdError,
};
pub use enumeration::{
    canonical_form, enumerate_tribrackets, polynomial_spectrum, GuardError, Spectrum,
};
pub use polynomial::{
    canonical_string, element_monomial, is_homogeneous, parse_polynomial, profile,
    subtribracket_polynomial, tribracket_polynomial, PolyParseError, Profile, TriPolynomial,
};
