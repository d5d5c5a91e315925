//! Compression bodies as forks, generalized Heegaard splittings and their
//! amalgamation, and splittings extracted from triangulations.

mod fork;
mod generalized;
mod triangulated;

pub use fork::{validate_fork_complex, BoundaryMismatch, Fork, ForkComplex, ForkValidation, ForkViolation, Slot};
pub use generalized::{
    amalgamate, thick_thin_splitting, validate_generalized, Decomposition, GeneralizedSplitting, GenusLedger, Piece,
    PieceGluing, PieceSplitting, Side, SlotRef, SplittingValidation, SplittingViolation,
};
pub use triangulated::{
    splitting_from_boundary_triangulation, splitting_from_closed_triangulation, BoundaryPartition,
    TriangulationSplitting,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum HeegaardError {
    #[error("gluing {gluing} names slot {} of piece {}, which does not exist", slot.slot, slot.piece)]
    UnknownSlot { gluing: usize, slot: SlotRef },
    #[error("gluing {gluing} reuses slot {} of piece {}", slot.slot, slot.piece)]
    SlotReused { gluing: usize, slot: SlotRef },
    #[error("gluing {gluing} joins surfaces of genus {genus_a} and {genus_b}")]
    GluingGenus { gluing: usize, genus_a: u32, genus_b: u32 },
    #[error("stored dual graph does not match the gluings")]
    DualGraphMismatch,
    #[error("splitting is not compatible with its ordering: {0:?}")]
    InvalidSplitting(Vec<SplittingViolation>),
    #[error("the dual graph of the decomposition is disconnected")]
    DisconnectedDecomposition,
    #[error("amalgamated genus {0} is negative")]
    NegativeGenus(i64),
    #[error("a thick piece with {m_thin} torus boundaries needs splitting genus at least 1, got {thick_genus}")]
    InconsistentGenera { thick_genus: u32, m_thin: usize },
    #[error("triangulation is not a closed 3-manifold")]
    NotClosed,
    #[error("triangulation has a disconnected dual graph")]
    DisconnectedTriangulation,
    #[error("tetrahedron {tet} meets more than one boundary component; subdivide first")]
    BoundaryNotIsolated { tet: usize },
    #[error("partition must split the boundary components 0..{components} into two disjoint halves")]
    BadPartition { components: usize },
    #[error("the first side of the splitting has no vertices; subdivide first")]
    EmptyFirstSide,
    #[error("genus counted from the 1-skeleton ({skeleton_side}) differs from the dual side ({dual_side})")]
    GenusDisagreement { skeleton_side: usize, dual_side: usize },
}
