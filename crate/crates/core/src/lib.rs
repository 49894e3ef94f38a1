//! Exact combinatorics for regular right-angled buildings.
//!
//! The crate is organized bottom-up:
//!
//! * [`coxeter`] — right-angled Coxeter systems and the ShortLex word problem;
//! * [`graph_product`] — graph products of finite groups in syllable normal form;
//! * [`building`] — the chamber system of a graph product: panels, galleries,
//!   balls, residues, apartments and retractions;
//! * [`treewall`] — tree-walls, epicormic chambers, wall crossings and the
//!   separation of a building into wall components;
//! * [`lattice`] — edge-indexed rays of groups acting on biregular trees,
//!   with exact covolume sums and machine-checkable disconnection
//!   certificates for orbit-neighborhood sets;
//! * [`presentation`] — the JSON input formats shared by the library and the
//!   command-line front end.
//!
//! Everything is exact: words are integer index sequences, covolumes are
//! arbitrary-precision rationals, and every windowed claim reports its
//! window. Types are immutable after construction and all operations are
//! pure functions of their inputs.

pub mod building;
pub mod coxeter;
pub mod graph_product;
pub mod lattice;
pub mod presentation;
pub mod treewall;

pub use building::{Apartment, Building, BuildingError, Chamber, Gallery, Panel, Residue};
pub use coxeter::{CoxeterError, CoxeterOrder, CoxeterSystem, Gen, PerpClass, WeylWord};
pub use graph_product::{GraphProduct, GroupElement, GroupError, LocalGroup, Syllable};
pub use lattice::{
    CertificateFailure, ChamberId, DisconnectionCertificate, LatticeError, LatticeModel,
    ModelKind, RaySpec, Step, VertexId,
};
pub use presentation::{PresentationError, PresentationFile};
pub use treewall::{SeparationReport, TreeWall, WallClass};
