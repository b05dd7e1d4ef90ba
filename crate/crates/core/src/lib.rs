//! Gyrogroups and gyrogroup actions.
//!
//! The crate is organised around a single abstract contract, [`Gyrogroup`],
//! and three concrete carriers:
//!
//! * [`FiniteGyrogroup`]: an exhaustively validated Cayley table,
//! * [`BallGyrogroup`]: the open unit ball under Möbius or Einstein addition,
//! * [`PairGyrogroup`]: ball vectors paired with a finite cyclic rotation group.
//!
//! On top of the finite carrier sit actions on finite sets ([`FiniteGSet`]),
//! orbit/stabilizer analysis, left-gyroaddition coset actions and the
//! equivalence theory of transitive G-sets.

pub mod action;
pub mod ball;
pub mod carrier;
pub mod coset;
pub mod equivalence;
pub mod error;
pub mod finite;
pub mod pair;
pub mod report;
pub mod sampling;

pub use action::{
    ActionClassification, ActionTable, BurnsideReport, FiniteGSet, OrbitDecomposition,
    Representation,
};
pub use ball::{BallElement, BallGyrogroup, BallVariant};
pub use carrier::{
    coaddition, cominus, conjugate, conjugate_set, gyration, GyrationMap, Gyrogroup,
};
pub use coset::{CosetAction, CriterionReport};
pub use equivalence::{ComponentMatching, FundamentalIsomorphism, GMap};
pub use error::{ActionError, AnalysisError, GyroError};
pub use finite::{CayleyTable, CosetPartition, FiniteGyrogroup, Subgyrogroup};
pub use pair::{PairElement, PairGyrogroup, RotationGroup};
