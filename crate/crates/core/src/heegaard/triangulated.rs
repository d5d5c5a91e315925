//! Heegaard splittings read off triangulations.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::fork::{Fork, ForkComplex};
use super::HeegaardError;
use crate::graph::Multigraph;
use crate::trikernel::{dual_graph, Skeleton, Triangulation, TET_EDGES};

/// Boundary component ids on each side of a splitting surface.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryPartition {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

/// A splitting surface found in a triangulation, with its genus computed
/// from both sides.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationSplitting {
    /// Genus counted on the side built from the 1-skeleton.
    pub dual_side_genus: u32,
    pub fork_complex: ForkComplex,
    pub genus: u32,
    pub partition: BoundaryPartition,
    /// Genus counted on the side built from the dual graph.
    pub skeleton_side_genus: u32,
}

impl TriangulationSplitting {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("splitting serializes")
    }
}

/// Thickened 1-skeleton against thickened dual graph of a closed triangulation.
pub fn splitting_from_closed_triangulation(t: &Triangulation) -> Result<TriangulationSplitting, HeegaardError> {
    let sk = Skeleton::new(t);
    if !sk.is_closed_manifold() {
        return Err(HeegaardError::NotClosed);
    }
    let dual = dual_graph(t);
    if !dual.is_connected() {
        return Err(HeegaardError::DisconnectedTriangulation);
    }
    let dual_side = dual.betti_number();
    let skeleton_side = sk.n_edges() + 1 - sk.n_vertices();
    if dual_side != skeleton_side {
        return Err(HeegaardError::GenusDisagreement {
            skeleton_side,
            dual_side,
        });
    }
    let genus = dual_side as u32;
    Ok(TriangulationSplitting {
        dual_side_genus: genus,
        fork_complex: ForkComplex::classical(genus),
        genus,
        partition: BoundaryPartition::default(),
        skeleton_side_genus: genus,
    })
}

/// Cyclomatic number of a graph, counting each component separately.
fn cycle_rank(g: &Multigraph) -> usize {
    g.betti_number()
}

/// Splitting compatible with `partition` of the boundary components.
///
/// The first side thickens the first boundary half together with the
/// 1-skeleton away from the second half; the second side thickens a collar
/// of the second half together with the dual graph, subdivided at triangle
/// barycentres. Each side's genus is the total genus of its boundary
/// surfaces plus the cycle rank of its graph with those surfaces collapsed,
/// and the two counts must agree.
pub fn splitting_from_boundary_triangulation(
    t: &Triangulation,
    partition: &BoundaryPartition,
) -> Result<TriangulationSplitting, HeegaardError> {
    let sk = Skeleton::new(t);
    if !dual_graph(t).is_connected() {
        return Err(HeegaardError::DisconnectedTriangulation);
    }
    let n_components = sk.boundary_components().len();
    if n_components == 0 && partition.first.is_empty() && partition.second.is_empty() {
        return splitting_from_closed_triangulation(t);
    }
    let first: BTreeSet<usize> = partition.first.iter().copied().collect();
    let second: BTreeSet<usize> = partition.second.iter().copied().collect();
    let all: BTreeSet<usize> = (0..n_components).collect();
    if first.len() != partition.first.len()
        || second.len() != partition.second.len()
        || !first.is_disjoint(&second)
        || first.union(&second).copied().collect::<BTreeSet<_>>() != all
    {
        return Err(HeegaardError::BadPartition { components: n_components });
    }
    for tet in 0..t.n_tetrahedra() {
        if sk.tet_components(tet).len() > 1 {
            return Err(HeegaardError::BoundaryNotIsolated { tet });
        }
    }
    let genus_of = |ids: &BTreeSet<usize>| -> usize {
        ids.iter().map(|&c| sk.boundary_components()[c].genus.max(0) as usize).sum()
    };
    let on_side = |v: usize, side: &BTreeSet<usize>| sk.vertex_components(v).iter().any(|c| side.contains(c));

    // First side: vertices off the second half, first-half surfaces collapsed to one node each.
    let mut boundary_edge = vec![false; sk.n_edges()];
    for (tet, f) in t.boundary_faces() {
        for &(a, b) in TET_EDGES.iter().filter(|&&(a, b)| a != f && b != f) {
            boundary_edge[sk.edge_class(tet, a, b)] = true;
        }
    }
    let first_ids: Vec<usize> = first.iter().copied().collect();
    let mut node_of_vertex = vec![usize::MAX; sk.n_vertices()];
    let mut n_nodes = first_ids.len();
    for (v, node) in node_of_vertex.iter_mut().enumerate() {
        if on_side(v, &second) {
            continue;
        }
        *node = match sk.vertex_components(v).iter().next() {
            Some(c) => first_ids.iter().position(|x| x == c).expect("vertex lies on a first-half surface"),
            None => {
                n_nodes += 1;
                n_nodes - 1
            }
        };
    }
    let mut first_graph = Multigraph::empty(n_nodes);
    for (e, &on_boundary) in boundary_edge.iter().enumerate() {
        let (a, b) = sk.edge_ends(e);
        if on_boundary || node_of_vertex[a] == usize::MAX || node_of_vertex[b] == usize::MAX {
            continue;
        }
        first_graph.add_arc(node_of_vertex[a], node_of_vertex[b]).expect("node ids in range");
    }
    if first_graph.n_nodes() == 0 {
        return Err(HeegaardError::EmptyFirstSide);
    }
    let skeleton_side = genus_of(&first) + cycle_rank(&first_graph);

    // Second side: tetrahedron and triangle barycentres; those with a vertex on
    // the second half sit inside its collar and collapse onto it.
    let second_ids: Vec<usize> = second.iter().copied().collect();
    let collar_of = |verts: &mut dyn Iterator<Item = usize>| -> Option<usize> {
        verts
            .flat_map(|v| sk.vertex_components(v).iter().copied().collect::<Vec<_>>())
            .find(|c| second.contains(c))
            .map(|c| second_ids.iter().position(|&x| x == c).expect("second-half id"))
    };
    let mut n_nodes = second_ids.len();
    let mut tet_node = vec![0usize; t.n_tetrahedra()];
    for (tet, slot) in tet_node.iter_mut().enumerate() {
        *slot = match collar_of(&mut (0..4).map(|v| sk.vertex_class(tet, v))) {
            Some(c) => c,
            None => {
                n_nodes += 1;
                n_nodes - 1
            }
        };
    }
    let mut triangle_node = vec![usize::MAX; sk.n_triangles()];
    let mut arcs = Vec::new();
    for (tet, &node) in tet_node.iter().enumerate() {
        for f in 0..4 {
            // Free triangles on the first half lie on that surface, outside this side.
            if let Some(c) = sk.face_component(tet, f) {
                if first.contains(&c) {
                    continue;
                }
            }
            let tri = sk.triangle_class(tet, f);
            if triangle_node[tri] == usize::MAX {
                triangle_node[tri] = match collar_of(&mut (0..4).filter(|&v| v != f).map(|v| sk.vertex_class(tet, v))) {
                    Some(c) => c,
                    None => {
                        n_nodes += 1;
                        n_nodes - 1
                    }
                };
            }
            arcs.push((node, triangle_node[tri]));
        }
    }
    let second_graph = Multigraph::new(n_nodes, arcs.into_iter().filter(|&(a, b)| a != b || a >= second_ids.len()))
        .expect("node ids in range");
    let dual_side = genus_of(&second) + cycle_rank(&second_graph);

    if skeleton_side != dual_side {
        return Err(HeegaardError::GenusDisagreement {
            skeleton_side,
            dual_side,
        });
    }
    let genus = skeleton_side as u32;
    let tines = |ids: &BTreeSet<usize>| -> Vec<u32> {
        ids.iter().map(|&c| sk.boundary_components()[c].genus.max(0) as u32).collect()
    };
    let fork_complex = ForkComplex::new(
        vec![Fork::new(0, genus, tines(&first)), Fork::new(1, genus, tines(&second))],
        vec![(0, 1)],
        Vec::new(),
    );
    Ok(TriangulationSplitting {
        dual_side_genus: dual_side as u32,
        fork_complex,
        genus,
        partition: BoundaryPartition {
            first: first_ids,
            second: second_ids,
        },
        skeleton_side_genus: skeleton_side as u32,
    })
}
