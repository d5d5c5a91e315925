use super::perm::VertexPerm;
use super::skeleton::Skeleton;
use super::triangulation::{FaceGluing, Triangulation};

/// Index of the sub-tetrahedron of `tet` labelled by the flag `sigma`.
///
/// Vertex `k` of that sub-tetrahedron is the barycentre of the face of `tet`
/// spanned by `sigma(0), ..., sigma(k)`.
pub fn sub_tet(tet: usize, sigma: VertexPerm) -> usize {
    24 * tet + sigma.index()
}

fn swap(sigma: VertexPerm, i: usize) -> VertexPerm {
    let mut img = sigma.image();
    img.swap(i, i + 1);
    VertexPerm::new(img).expect("swapping keeps a permutation")
}

/// First barycentric subdivision; `24 n` tetrahedra.
pub fn barycentric_subdivision(t: &Triangulation) -> Triangulation {
    let n = t.n_tetrahedra();
    let mut gluings = Vec::with_capacity(36 * n + 6 * t.gluings().len());
    for tet in 0..n {
        for sigma in VertexPerm::all() {
            // Face k < 3 is shared with the flag differing in positions k and k + 1.
            for k in 0..3 {
                let other = swap(sigma, k);
                if sigma < other {
                    gluings.push(FaceGluing::new(
                        sub_tet(tet, sigma),
                        k,
                        sub_tet(tet, other),
                        k,
                        VertexPerm::IDENTITY,
                    ));
                }
            }
        }
    }
    for g in t.gluings() {
        // Face 3 of flag sigma lies in the original face sigma(3).
        for sigma in VertexPerm::all().filter(|s| s.apply(3) == g.src_face) {
            gluings.push(FaceGluing::new(
                sub_tet(g.src_tet, sigma),
                3,
                sub_tet(g.dst_tet, g.perm.compose(sigma)),
                3,
                VertexPerm::IDENTITY,
            ));
        }
    }
    Triangulation::new(24 * n, gluings).expect("subdivision of a valid triangulation is valid")
}

/// True when every tetrahedron meets at most one boundary component.
pub fn boundary_isolated(t: &Triangulation) -> bool {
    let sk = Skeleton::new(t);
    (0..t.n_tetrahedra()).all(|tet| sk.tet_components(tet).len() <= 1)
}

/// Subdivides until no tetrahedron meets two boundary components, at most twice.
pub fn boundary_isolation_subdivision(t: &Triangulation) -> Triangulation {
    let once = barycentric_subdivision(t);
    if boundary_isolated(&once) {
        return once;
    }
    barycentric_subdivision(&once)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trikernel::analyze_skeleton;

    #[test]
    fn one_tetrahedron() {
        let t = Triangulation::unglued(1).unwrap();
        let sd = barycentric_subdivision(&t);
        assert_eq!(sd.n_tetrahedra(), 24);
        assert_eq!(sd.gluings().len(), 36);
        let r = analyze_skeleton(&sd);
        assert_eq!(r.euler_characteristic, 1);
        assert_eq!((r.vertex_classes, r.edge_classes, r.triangle_classes), (15, 50, 60));
        assert_eq!(r.boundary_components.len(), 1);
        assert_eq!(r.boundary_components[0].triangles, 24);
        assert!(r.orientable);
        assert_eq!(barycentric_subdivision(&sd).n_tetrahedra(), 576);
    }

    #[test]
    fn orientation_follows_flag_sign() {
        let sd = barycentric_subdivision(&Triangulation::unglued(2).unwrap());
        let sk = Skeleton::new(&sd);
        let o = sk.orientation().unwrap();
        for sigma in VertexPerm::all() {
            assert_eq!(o[sub_tet(0, sigma)] * o[0], sigma.sign());
        }
    }
}
