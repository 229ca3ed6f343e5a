//! Exact Kazhdan-Lusztig combinatorics for the affine Weyl group of type B2.
//!
//! The crate provides, from the ground up:
//!
//! * [`laurent`]: the coefficient ring `Z[v, v^-1]`;
//! * [`coxeter`]: the group itself, realized by exact integer geometry on the
//!   alcove tessellation of the plane (words, lengths, descents, Bruhat
//!   order, intervals, coatoms);
//! * [`families`]: the named element families tiling the group (a big
//!   region of translation-like elements, four thick walls, four thin
//!   walls), with classification, interval-size and coatom formulas;
//! * [`hecke`]: the Hecke algebra in the normalization with
//!   `H_s^2 = (v^-1 - v) H_s + 1`, the bar involution, and the recursive
//!   Kazhdan-Lusztig basis algorithm used as the ground-truth oracle;
//! * [`closedforms`]: closed-form evaluations of the KL basis on the big
//!   and thick regions, and a checker for the conjectured thin-wall
//!   decompositions, all cross-verified against the oracle;
//! * [`verify`]: batch verification suites with JSON reports;
//! * [`tessellate`]: SVG rendering of the alcove picture.

pub mod closedforms;
pub mod coxeter;
pub mod families;
pub mod hecke;
pub mod laurent;
pub mod tessellate;
pub mod verify;

pub use hecke::{BarCache, HeckeElem, KlTable};
pub use coxeter::{Element, Generator, Side, Word};
pub use laurent::LaurentPoly;
