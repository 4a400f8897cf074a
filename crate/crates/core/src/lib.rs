//! Covering numbers of finite groups.
//!
//! `sigma(G)` is the least number of proper subgroups whose union is `G`
//! (infinite for cyclic groups). The crate enumerates permutation groups,
//! computes their subgroup structure, solves the covering problem exactly
//! by branch and bound, evaluates known closed forms, and checks cover and
//! definite-unbeatability certificates.

pub mod analysis;
pub mod certificates;
pub mod config;
pub mod constructions;
pub mod corpus;
pub mod cover;
pub mod error;
pub mod formulas;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod schreier;
pub mod sigma;
pub mod spec_file;
pub mod subgroup;

pub use config::Caps;
pub use error::{Error, Result};
pub use group::{coset_action, direct_product, wreath_cyclic_top, Elem, Group, GroupHom};
pub use perm::Perm;
pub use sigma::{sigma, Method, Mode, Sigma, SigmaOptions, SigmaResult};
pub use subgroup::Subgroup;
