//! Congruences on the transformation monoids `T_n`, `PT_n`, `I_n`, on their
//! direct products `Q_m × P_n`, and on the matrix monoids `F_n` and
//! `F_m × F_n` over small prime fields.
//!
//! Every closed-form description comes with a brute-force counterpart in
//! [`oracle`], and [`verify`] runs the two against each other.

pub mod error;
pub mod exec;
pub mod finite_group;
pub mod group;
pub mod matrix;
pub mod monoid;
pub mod oracle;
pub mod perm;
pub mod product;
pub mod qn;
pub mod verify;

pub use error::{Error, Result};
pub use exec::Execution;
pub use group::{NormalSubgroupProduct, NormalSubgroupSk, SubgroupKind};
pub use matrix::{
    principal_fmfn, principal_fn, CongruenceFn, Matrix, MatrixFamily, MatrixPair, MatrixPrincipal,
    MatrixProductFamily,
};
pub use monoid::{Family, GreenRelation, Ideal, MonoidFamily, Transformation};
pub use oracle::{CongruencePartition, FiniteMonoidTable, IndexedMonoid};
pub use perm::{Parity, Permutation};
pub use product::{DlockLandscape, PrincipalDescription, ProductElement, ProductFamily};
pub use qn::CongruenceQn;
pub use verify::{Selection, SweepReport};
