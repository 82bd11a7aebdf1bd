//! Exact symbolic computation for the level-one Fock representation of the
//! (-1)-twisted quantum toroidal algebra attached to a simply-laced Cartan
//! matrix, together with verification suites for its defining relations.
//!
//! The layers, bottom-up:
//! - [`coeff`]: the coefficient field `Q(q^{1/2})`.
//! - [`polyring`]: sparse multivariate Laurent polynomials and symmetric-group actions.
//! - [`series`]: truncated power series, q-analog binomials and OPE contraction factors.
//! - [`lattice`]: Cartan data, the root lattice and the sign cocycle.
//! - [`fock`]: the Fock space with its Heisenberg and group-algebra actions.
//! - [`vertex`]: twisted vertex operators and their modes.
//! - [`relations`]: witness-producing relation checks.

pub mod coeff;
pub mod error;
pub mod fock;
pub mod lattice;
pub mod polyring;
pub mod relations;
pub mod report;
pub mod series;
pub mod vertex;

pub use coeff::{qint, QRat};
pub use error::{Error, Result};
pub use fock::{BasisState, FockVector};
pub use lattice::{CartanData, LatticeElt};
pub use polyring::MPoly;
pub use relations::{CheckReport, Status};
pub use series::TruncSeries;
