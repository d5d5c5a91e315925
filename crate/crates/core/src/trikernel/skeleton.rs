use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::triangulation::Triangulation;
use crate::unionfind::{ParityUnionFind, UnionFind};

/// The six edges of a tetrahedron as vertex pairs, in index order.
pub const TET_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index into [`TET_EDGES`] of the edge joining `a` and `b`, `a != b`.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    match (a, b) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("({a}, {b}) is not an edge of a tetrahedron"),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkType {
    Sphere,
    Disk,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryComponent {
    pub genus: i64,
    pub id: usize,
    pub triangles: usize,
}

/// Counts and flags describing the quotient complex. Fields are declared in
/// alphabetical order, which fixes the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonReport {
    pub boundary_components: Vec<BoundaryComponent>,
    pub closed: bool,
    pub edge_classes: usize,
    pub euler_characteristic: i64,
    pub has_reversed_edge: bool,
    pub n_gluings: usize,
    pub n_tetrahedra: usize,
    pub orientable: bool,
    pub triangle_classes: usize,
    pub vertex_classes: usize,
    pub vertex_link_types: Vec<LinkType>,
}

impl SkeletonReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Simplex identifications of a triangulation with per-simplex labels.
#[derive(Clone, Debug)]
pub struct Skeleton {
    n: usize,
    /// Vertex class of corner `(t, v)` at `4t + v`.
    vertex_label: Vec<usize>,
    n_vertices: usize,
    /// Edge class of `(t, e)` at `6t + e`.
    edge_label: Vec<usize>,
    n_edges: usize,
    /// Endpoint vertex classes of each edge class.
    edge_ends: Vec<(usize, usize)>,
    /// Triangle class of face `(t, f)` at `4t + f`.
    triangle_label: Vec<usize>,
    n_triangles: usize,
    reversed_edge: bool,
    orientation: Option<Vec<i8>>,
    /// Boundary component of face `(t, f)`, if the face is free.
    face_component: Vec<Option<usize>>,
    components: Vec<BoundaryComponent>,
    /// Boundary components meeting each vertex class.
    vertex_components: Vec<BTreeSet<usize>>,
    link_types: Vec<LinkType>,
    n_gluings: usize,
}

impl Skeleton {
    pub fn new(t: &Triangulation) -> Skeleton {
        let n = t.n_tetrahedra();

        let mut vuf = UnionFind::new(4 * n);
        let mut euf = ParityUnionFind::new(6 * n);
        // Directed edge (t, v, w) sits at 16t + 4v + w; it is a vertex of the link of (t, v).
        let mut duf = UnionFind::new(16 * n);
        for g in t.gluings() {
            let p = g.perm;
            let face_verts: Vec<usize> = (0..4).filter(|&v| v != g.src_face).collect();
            for &v in &face_verts {
                vuf.union(4 * g.src_tet + v, 4 * g.dst_tet + p.apply(v));
                for &w in &face_verts {
                    if v != w {
                        duf.union(16 * g.src_tet + 4 * v + w, 16 * g.dst_tet + 4 * p.apply(v) + p.apply(w));
                    }
                }
            }
            for (i, &a) in face_verts.iter().enumerate() {
                for &b in &face_verts[i + 1..] {
                    let (pa, pb) = (p.apply(a), p.apply(b));
                    euf.union(6 * g.src_tet + edge_index(a, b), 6 * g.dst_tet + edge_index(pa, pb), pa > pb);
                }
            }
        }
        let (vertex_label, n_vertices) = vuf.labels();
        let (edge_label, n_edges) = euf.labels();
        let reversed_edge = euf.has_contradiction();

        let mut edge_ends = vec![(0, 0); n_edges];
        for tet in 0..n {
            for (e, &(a, b)) in TET_EDGES.iter().enumerate() {
                let (va, vb) = (vertex_label[4 * tet + a], vertex_label[4 * tet + b]);
                edge_ends[edge_label[6 * tet + e]] = (va.min(vb), va.max(vb));
            }
        }

        let mut triangle_label = vec![usize::MAX; 4 * n];
        let mut n_triangles = 0;
        for tet in 0..n {
            for f in 0..4 {
                if triangle_label[4 * tet + f] != usize::MAX {
                    continue;
                }
                triangle_label[4 * tet + f] = n_triangles;
                if let Some(nb) = t.neighbor(tet, f) {
                    triangle_label[4 * nb.tet + nb.face] = n_triangles;
                }
                n_triangles += 1;
            }
        }

        let link_types = classify_links(t, &vertex_label, n_vertices, &mut duf);
        let orientation = orient(t);
        let (face_component, components) = boundary_components(t, &vertex_label, &edge_label);
        let mut vertex_components = vec![BTreeSet::new(); n_vertices];
        for tet in 0..n {
            for f in 0..4 {
                if let Some(c) = face_component[4 * tet + f] {
                    for v in (0..4).filter(|&v| v != f) {
                        vertex_components[vertex_label[4 * tet + v]].insert(c);
                    }
                }
            }
        }

        Skeleton {
            n,
            vertex_label,
            n_vertices,
            edge_label,
            n_edges,
            edge_ends,
            triangle_label,
            n_triangles,
            reversed_edge,
            orientation,
            face_component,
            components,
            vertex_components,
            link_types,
            n_gluings: t.gluings().len(),
        }
    }

    pub fn n_tetrahedra(&self) -> usize {
        self.n
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn n_edges(&self) -> usize {
        self.n_edges
    }

    pub fn n_triangles(&self) -> usize {
        self.n_triangles
    }

    pub fn vertex_class(&self, tet: usize, v: usize) -> usize {
        self.vertex_label[4 * tet + v]
    }

    pub fn edge_class(&self, tet: usize, a: usize, b: usize) -> usize {
        self.edge_label[6 * tet + edge_index(a, b)]
    }

    pub fn triangle_class(&self, tet: usize, face: usize) -> usize {
        self.triangle_label[4 * tet + face]
    }

    /// Endpoint vertex classes of an edge class, smaller first.
    pub fn edge_ends(&self, edge: usize) -> (usize, usize) {
        self.edge_ends[edge]
    }

    pub fn has_reversed_edge(&self) -> bool {
        self.reversed_edge
    }

    /// `+1`/`-1` per tetrahedron when a consistent orientation exists.
    pub fn orientation(&self) -> Option<&[i8]> {
        self.orientation.as_deref()
    }

    pub fn boundary_components(&self) -> &[BoundaryComponent] {
        &self.components
    }

    pub fn face_component(&self, tet: usize, face: usize) -> Option<usize> {
        self.face_component[4 * tet + face]
    }

    /// Boundary components containing vertex class `v`.
    pub fn vertex_components(&self, v: usize) -> &BTreeSet<usize> {
        &self.vertex_components[v]
    }

    /// Boundary components that tetrahedron `tet` meets in at least a vertex.
    pub fn tet_components(&self, tet: usize) -> BTreeSet<usize> {
        (0..4)
            .flat_map(|v| self.vertex_components[self.vertex_class(tet, v)].iter().copied())
            .collect()
    }

    pub fn link_types(&self) -> &[LinkType] {
        &self.link_types
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.n_vertices as i64 - self.n_edges as i64 + self.n_triangles as i64 - self.n as i64
    }

    pub fn report(&self) -> SkeletonReport {
        SkeletonReport {
            boundary_components: self.components.clone(),
            closed: self.is_closed_manifold(),
            edge_classes: self.n_edges,
            euler_characteristic: self.euler_characteristic(),
            has_reversed_edge: self.reversed_edge,
            n_gluings: self.n_gluings,
            n_tetrahedra: self.n,
            orientable: self.orientation.is_some(),
            triangle_classes: self.n_triangles,
            vertex_classes: self.n_vertices,
            vertex_link_types: self.link_types.clone(),
        }
    }

    /// Every face glued, every vertex link a sphere and no edge reversed.
    pub fn is_closed_manifold(&self) -> bool {
        self.n_gluings == 2 * self.n && !self.reversed_edge && self.link_types.iter().all(|&l| l == LinkType::Sphere)
    }
}

fn classify_links(t: &Triangulation, vertex_label: &[usize], n_vertices: usize, duf: &mut UnionFind) -> Vec<LinkType> {
    let n = t.n_tetrahedra();
    let mut triangles = vec![0i64; n_vertices];
    let mut free_edges = vec![0i64; n_vertices];
    let mut link_vertices = vec![BTreeSet::new(); n_vertices];
    for tet in 0..n {
        for v in 0..4 {
            let c = vertex_label[4 * tet + v];
            triangles[c] += 1;
            for f in (0..4).filter(|&f| f != v) {
                if t.neighbor(tet, f).is_none() {
                    free_edges[c] += 1;
                }
            }
            for w in (0..4).filter(|&w| w != v) {
                link_vertices[c].insert(duf.find(16 * tet + 4 * v + w));
            }
        }
    }
    (0..n_vertices)
        .map(|c| {
            // Each link triangle has three edges; interior ones are shared by two triangles.
            let edges = (3 * triangles[c] + free_edges[c]) / 2;
            let chi = link_vertices[c].len() as i64 - edges + triangles[c];
            match (chi, free_edges[c] == 0) {
                (2, true) => LinkType::Sphere,
                (1, false) => LinkType::Disk,
                _ => LinkType::Other,
            }
        })
        .collect()
}

fn orient(t: &Triangulation) -> Option<Vec<i8>> {
    let n = t.n_tetrahedra();
    let mut o = vec![0i8; n];
    for start in 0..n {
        if o[start] != 0 {
            continue;
        }
        o[start] = 1;
        let mut stack = vec![start];
        while let Some(tet) = stack.pop() {
            for f in 0..4 {
                let Some(nb) = t.neighbor(tet, f) else { continue };
                let want = -nb.perm.sign() * o[tet];
                if o[nb.tet] == 0 {
                    o[nb.tet] = want;
                    stack.push(nb.tet);
                } else if o[nb.tet] != want {
                    return None;
                }
            }
        }
    }
    Some(o)
}

fn boundary_components(
    t: &Triangulation,
    vertex_label: &[usize],
    edge_label: &[usize],
) -> (Vec<Option<usize>>, Vec<BoundaryComponent>) {
    let n = t.n_tetrahedra();
    let free: Vec<(usize, usize)> = t.boundary_faces().collect();
    let mut uf = UnionFind::new(free.len());
    let mut first_on_edge: Vec<Option<usize>> = vec![None; edge_label.iter().copied().max().map_or(0, |m| m + 1)];
    for (i, &(tet, f)) in free.iter().enumerate() {
        for (e, &(a, b)) in TET_EDGES.iter().enumerate() {
            if a == f || b == f {
                continue;
            }
            let class = edge_label[6 * tet + e];
            match first_on_edge[class] {
                Some(j) => {
                    uf.union(i, j);
                }
                None => first_on_edge[class] = Some(i),
            }
        }
    }
    let (labels, count) = uf.labels();
    let mut face_component = vec![None; 4 * n];
    let mut verts = vec![BTreeSet::new(); count];
    let mut edges = vec![BTreeSet::new(); count];
    let mut tris = vec![0usize; count];
    for (i, &(tet, f)) in free.iter().enumerate() {
        let c = labels[i];
        face_component[4 * tet + f] = Some(c);
        tris[c] += 1;
        for v in (0..4).filter(|&v| v != f) {
            verts[c].insert(vertex_label[4 * tet + v]);
        }
        for (e, &(a, b)) in TET_EDGES.iter().enumerate() {
            if a != f && b != f {
                edges[c].insert(edge_label[6 * tet + e]);
            }
        }
    }
    let components = (0..count)
        .map(|c| {
            let chi = verts[c].len() as i64 - edges[c].len() as i64 + tris[c] as i64;
            BoundaryComponent {
                genus: (2 - chi).div_euclid(2),
                id: c,
                triangles: tris[c],
            }
        })
        .collect();
    (face_component, components)
}

pub fn analyze_skeleton(t: &Triangulation) -> SkeletonReport {
    Skeleton::new(t).report()
}

pub fn is_closed_3_manifold(t: &Triangulation) -> (bool, SkeletonReport) {
    let report = analyze_skeleton(t);
    (report.closed, report)
}
