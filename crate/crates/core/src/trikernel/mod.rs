//! Triangulations of 3-manifolds: tetrahedra, face gluings, simplex
//! identification, vertex links and barycentric subdivision.

mod perm;
mod skeleton;
mod subdivision;
mod triangulation;

pub use perm::{BadPerm, VertexPerm};
pub use skeleton::{
    analyze_skeleton, edge_index, is_closed_3_manifold, BoundaryComponent, LinkType, Skeleton, SkeletonReport,
    TET_EDGES,
};
pub use subdivision::{barycentric_subdivision, boundary_isolated, boundary_isolation_subdivision, sub_tet};
pub use triangulation::{FaceGluing, FaceTarget, Triangulation, TriangulationError};

use crate::graph::Multigraph;

/// One node per tetrahedron and one arc per gluing; self-gluings become loops.
pub fn dual_graph(t: &Triangulation) -> Multigraph {
    Multigraph::new(t.n_tetrahedra(), t.gluings().iter().map(|g| (g.src_tet, g.dst_tet)))
        .expect("gluings reference valid tetrahedra")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_of_single_tetrahedron() {
        let g = dual_graph(&Triangulation::unglued(1).unwrap());
        assert_eq!((g.n_nodes(), g.n_arcs()), (1, 0));
    }

    #[test]
    fn self_gluing_is_a_loop() {
        let t = Triangulation::parse("tets 1\n0 0 -> 0 1 1023\n").unwrap();
        assert_eq!(dual_graph(&t).degrees(), vec![2]);
    }
}
