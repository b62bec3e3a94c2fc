//! Exact classification of the special double coverings of a trivial circle
//! bundle over a non-orientable surface.
//!
//! Everything is computed over the two-element field: homology of the base
//! and total spaces, the orthogonal and symplectic isometry groups acting on
//! coverings, orbit decompositions with their invariants (class sums, Arf
//! values), stabilizers with explicit generators, transvection
//! factorizations, and the bridge between the two group actions. Results are
//! exact and deterministic; no tolerance anywhere.
//!
//! Module map:
//! - [`gf2`]: bit-packed vectors and matrices over GF(2);
//! - [`form`]: bilinear forms, isometries, transvections, enumeration and
//!   subgroup closure;
//! - [`quad`]: quadratic refinements and the Arf invariant;
//! - [`orbit`]: generic orbit decomposition with invariant labels;
//! - [`surfaces`]: the specific homology spaces, structure maps, sections
//!   and covering enumerations;
//! - [`orth_action`]: the orthogonal group action on coverings of the
//!   non-orientable side;
//! - [`symp_action`]: the symplectic subgroup actions on pulled-back
//!   coverings of the orientation cover;
//! - [`bridge`]: lifting/projecting isometries between the two sides, and
//!   the realizability / weak-equivalence layer;
//! - [`verify`]: the named checks replayed by the `verify` command.

#![forbid(unsafe_code)]

pub mod bridge;
pub mod error;
pub mod form;
pub mod gf2;
pub mod orbit;
pub mod orth_action;
pub mod quad;
pub mod rng;
pub mod surfaces;
pub mod symp_action;
pub mod verify;

pub use error::{Error, Result};
pub use form::{closure, enumerate_isometries, is_isometry, pair, transvection, FormKind, FormSpace, Isometry};
pub use gf2::{GF2Mat, GF2Vec, LinearSolution};
pub use orbit::{orbit_decompose, Orbit, OrbitReport};
pub use quad::{arf, QuadForm};
pub use surfaces::{
    epi_set, pi_star, pn_star, po_star, presentation, s_eval, sigma_eval, specials,
    tilde_pi_star, EpiMember, Host, NSurface, OSurface, Presentation, SectionParams,
    SpecialCovering, TotalN, TotalO,
};

/// Version tag for all structured output emitted by this workspace.
pub const SCHEMA: &str = "spincover/1";
