//! Truncated Malcev-Neumann series over an ordered torsion-free nilpotent
//! group, crossed products `k[N][Q; σ, τ]` for `Q = F/N`, the augmentation
//! homomorphism `Φ_N`, the involution on crossed products, and the
//! symmetric pullback `X = P Q⁻¹ (Q*)⁻¹ P*`.

mod crossed;
mod pullback;
mod series;
mod suite;

pub use crossed::{
    augmentation, phi_n, star_on_crossed, CrossedProductCtx, FreeInvolution, KnElem, ScalarRing,
};
pub use pullback::{
    check_pullback, compute_pullback, fixing_involution, hlaurent_to_series, pullback_x, transport_instances, Pullback,
    PullbackCheck, PullbackInstance,
};
pub use series::{GroupOrder, SeriesRing, TruncSeries, INVERSE_CAP};
pub use suite::{homomorphism_suite, random_series, HomWitness, SuiteReport};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MnError {
    #[error("group mismatch: rank {0} against rank {1}")]
    GroupMismatch(usize, usize),
    #[error("leading coefficient is not a trivial unit")]
    NotTrivialUnit,
    #[error("frontier unreachable: {0}")]
    FrontierUnreachable(String),
    #[error("star needs an exact series, got one truncated at {0}")]
    TruncatedStar(String),
    #[error("invalid crossed-product data: {0}")]
    BadContext(String),
    #[error("invalid involution: {0}")]
    BadInvolution(String),
}
