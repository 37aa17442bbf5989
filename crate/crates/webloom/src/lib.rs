//! Combinatorics of webs, tableaux and hourglass plabic graphs for quadratic
//! and cubic cluster variables of the Grassmannian `Gr(4,8)`.
//!
//! The crate is organised bottom-up: [`perms`] and [`tableaux`] carry the
//! promotion dynamics, [`planar_map`] is the shared rotation-system substrate,
//! and [`hourglass`], [`growth`], [`webs`], [`dimers`] and [`compatibility`]
//! build on it. [`plucker`] evaluates Plücker polynomials exactly and
//! [`catalog`] loads the transcribed reference data from `data/`.

pub mod error;
pub mod perms;

pub use error::{Error, Result};
pub use perms::Permutation;
pub mod tableaux;
pub use tableaux::{count_syt, RectTableau, TableauKind};
pub mod planar_map;
pub use planar_map::{CanonicalCode, Color, CombMap, Dihedral};
pub mod hourglass;
pub use hourglass::HourglassGraph;
pub mod growth;
pub use growth::{grow, Growth};
pub mod webs;
pub use webs::{SignedWebSum, Web};
pub mod plucker;
pub use plucker::{KSubset, PluckerMonomial, PluckerPolynomial};
pub mod compatibility;
pub use compatibility::{coloring_count, dual_matching, dual_web, Matching, WebUniverse};
pub mod catalog;
pub use catalog::{load_catalog, load_web_atlas, CatalogDual, CatalogEntry};
pub mod dimers;
pub use dimers::{DimerConfig, MultiDimer, PlabicGraph};
pub mod render;
pub use render::RenderSpec;
pub mod acceptance;
