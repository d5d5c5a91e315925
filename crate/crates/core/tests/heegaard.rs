mod common;

use pathvol::heegaard::{
    amalgamate, splitting_from_boundary_triangulation, splitting_from_closed_triangulation, thick_thin_splitting,
    validate_fork_complex, validate_generalized, BoundaryPartition, Decomposition, GeneralizedSplitting,
    HeegaardError, Piece, PieceGluing, PieceSplitting, Side, SlotRef, SplittingViolation,
};
use pathvol::trikernel::{
    analyze_skeleton, barycentric_subdivision, boundary_isolation_subdivision, Triangulation,
};
use proptest::prelude::*;

fn read(name: &str) -> Triangulation {
    Triangulation::parse(&std::fs::read_to_string(common::corpus_dir().join(name)).unwrap()).unwrap()
}

fn piece(id: usize, genera: Vec<u32>) -> Piece {
    Piece {
        boundary_genera: genera,
        id,
    }
}

fn glue(pa: usize, sa: usize, pb: usize, sb: usize) -> PieceGluing {
    PieceGluing {
        a: SlotRef { piece: pa, slot: sa },
        b: SlotRef { piece: pb, slot: sb },
    }
}

fn split(genus: u32, partition: Vec<Side>) -> PieceSplitting {
    PieceSplitting {
        partition,
        surface_genus: genus,
    }
}

/// Four pieces in a chain 1 - 2 - 3 - 4 glued along tori, with the second
/// piece also glued to the fourth.
fn four_piece(ordering: Vec<usize>) -> GeneralizedSplitting {
    let pieces = vec![
        piece(1, vec![1]),
        piece(2, vec![1, 1, 1]),
        piece(3, vec![1, 1]),
        piece(4, vec![1, 1]),
    ];
    let gluings = vec![glue(0, 0, 1, 0), glue(1, 1, 2, 0), glue(2, 1, 3, 0), glue(1, 2, 3, 1)];
    let decomposition = Decomposition::new(pieces, gluings).unwrap();
    // Partition induced by the identity ordering.
    let splittings = vec![
        split(2, vec![Side::Second]),
        split(3, vec![Side::First, Side::Second, Side::Second]),
        split(2, vec![Side::First, Side::Second]),
        split(2, vec![Side::First, Side::First]),
    ];
    GeneralizedSplitting {
        decomposition,
        ordering,
        splittings,
    }
}

#[test]
fn compatible_and_incompatible_orderings() {
    let ok = four_piece(vec![1, 2, 3, 4]);
    assert!(validate_generalized(&ok).valid);
    let ledger = amalgamate(&ok).unwrap();
    assert_eq!(ledger.euler_char_dual, 0);
    assert_eq!(ledger.amalgamated_genus, 9 - 4 + 1);
    assert!(validate_fork_complex(&ok.fork_complex()).valid);

    // Keeping the partition while swapping two pieces breaks compatibility.
    let bad = four_piece(vec![1, 3, 2, 4]);
    let v = validate_generalized(&bad);
    assert!(!v.valid);
    assert!(v
        .violations
        .iter()
        .any(|x| matches!(x, SplittingViolation::Incompatible { gluing: 1, .. })));
    assert!(matches!(amalgamate(&bad), Err(HeegaardError::InvalidSplitting(_))));
}

#[test]
fn disconnected_decomposition_rejected() {
    let d = Decomposition::new(vec![piece(0, vec![]), piece(1, vec![])], vec![]).unwrap();
    let gs = GeneralizedSplitting {
        decomposition: d,
        ordering: vec![1, 2],
        splittings: vec![split(1, vec![]), split(1, vec![])],
    };
    assert_eq!(amalgamate(&gs), Err(HeegaardError::DisconnectedDecomposition));
}

#[test]
fn self_glued_piece_rejected() {
    let d = Decomposition::new(vec![piece(0, vec![1, 1])], vec![glue(0, 0, 0, 1)]).unwrap();
    let gs = GeneralizedSplitting {
        decomposition: d,
        ordering: vec![1],
        splittings: vec![split(2, vec![Side::First, Side::Second])],
    };
    assert!(matches!(
        validate_generalized(&gs).violations.as_slice(),
        [SplittingViolation::SelfGluedPiece { .. }]
    ));
}

#[test]
fn ordering_must_be_bijective() {
    let gs = four_piece(vec![1, 1, 3, 4]);
    assert_eq!(validate_generalized(&gs).violations, vec![SplittingViolation::OrderingNotBijective]);
}

#[test]
fn closed_corpus_splittings() {
    for entry in common::corpus().into_iter().filter(|e| e.expected.closed && e.expected.dual_connected) {
        let s = splitting_from_closed_triangulation(&entry.tri).unwrap();
        let n = entry.expected.tetrahedra as u32;
        assert_eq!(s.genus, n + 1);
        let r = analyze_skeleton(&entry.tri);
        assert_eq!(s.genus as usize, r.edge_classes + 1 - r.vertex_classes);
        assert!(validate_fork_complex(&s.fork_complex).valid);
        let via_boundary = splitting_from_boundary_triangulation(&entry.tri, &BoundaryPartition::default()).unwrap();
        assert_eq!(via_boundary.genus, s.genus);
    }
    assert_eq!(
        splitting_from_closed_triangulation(&Triangulation::unglued(1).unwrap()),
        Err(HeegaardError::NotClosed)
    );
}

#[test]
fn thickened_torus_splitting() {
    let t = boundary_isolation_subdivision(&read("thickened_torus.tri"));
    let r = analyze_skeleton(&t);
    assert_eq!(r.boundary_components.len(), 2);
    for (a, b) in [(0usize, 1usize), (1, 0)] {
        let p = BoundaryPartition {
            first: vec![a],
            second: vec![b],
        };
        let s = splitting_from_boundary_triangulation(&t, &p).unwrap();
        assert_eq!(s.skeleton_side_genus, s.dual_side_genus);
        let fc = &s.fork_complex;
        assert_eq!(fc.forks[0].tine_genera, vec![1]);
        assert_eq!(fc.forks[1].tine_genera, vec![1]);
        assert!(validate_fork_complex(fc).valid);
        assert!(s.genus >= 1);
    }
    let both_first = BoundaryPartition {
        first: vec![0, 1],
        second: vec![],
    };
    let s = splitting_from_boundary_triangulation(&t, &both_first).unwrap();
    assert_eq!(s.fork_complex.forks[0].tine_genera, vec![1, 1]);
    assert!(validate_fork_complex(&s.fork_complex).valid);
    // The unsubdivided triangulation has tetrahedra meeting both tori.
    assert!(matches!(
        splitting_from_boundary_triangulation(&read("thickened_torus.tri"), &BoundaryPartition { first: vec![0], second: vec![1] }),
        Err(HeegaardError::BoundaryNotIsolated { .. })
    ));
}

#[test]
fn ball_with_sphere_on_the_second_side() {
    let once = barycentric_subdivision(&Triangulation::unglued(1).unwrap());
    let twice = barycentric_subdivision(&once);
    assert_eq!(twice.n_tetrahedra(), 576);
    let p = BoundaryPartition {
        first: vec![],
        second: vec![0],
    };
    let s = splitting_from_boundary_triangulation(&twice, &p).unwrap();
    assert_eq!(s.skeleton_side_genus, s.dual_side_genus);
    assert_eq!(s.fork_complex.forks[1].tine_genera, vec![0]);
    assert!(validate_fork_complex(&s.fork_complex).valid);

    // Before subdividing, every vertex lies on the sphere.
    assert_eq!(
        splitting_from_boundary_triangulation(&Triangulation::unglued(1).unwrap(), &p),
        Err(HeegaardError::EmptyFirstSide)
    );
    // The other assignment is already possible after one subdivision.
    let q = BoundaryPartition {
        first: vec![0],
        second: vec![],
    };
    let s = splitting_from_boundary_triangulation(&once, &q).unwrap();
    assert_eq!(s.genus, 13);
}

#[test]
fn partitions_are_checked() {
    let t = boundary_isolation_subdivision(&read("thickened_torus.tri"));
    for bad in [
        BoundaryPartition { first: vec![0], second: vec![] },
        BoundaryPartition { first: vec![0, 1], second: vec![1] },
        BoundaryPartition { first: vec![0, 0], second: vec![1] },
        BoundaryPartition { first: vec![2], second: vec![0, 1] },
    ] {
        assert!(matches!(
            splitting_from_boundary_triangulation(&t, &bad),
            Err(HeegaardError::BadPartition { components: 2 })
        ));
    }
}

#[test]
fn round_trips() {
    let gs = four_piece(vec![1, 2, 3, 4]);
    let text = gs.to_json();
    let back: GeneralizedSplitting = serde_json::from_str(&text).unwrap();
    assert_eq!(back.to_json(), text);
    let ledger = amalgamate(&gs).unwrap();
    let text = ledger.to_json();
    assert_eq!(serde_json::from_str::<pathvol::heegaard::GenusLedger>(&text).unwrap().to_json(), text);
}

proptest! {
    #[test]
    fn two_piece_formula_matches_simple_sum(g1 in 1u32..40, g2 in 1u32..40, r in 0u32..5) {
        prop_assume!(g1 >= r.max(1) && g2 >= r.max(1));
        let pieces = vec![piece(0, vec![r]), piece(1, vec![r])];
        let gs = GeneralizedSplitting {
            decomposition: Decomposition::new(pieces, vec![glue(0, 0, 1, 0)]).unwrap(),
            ordering: vec![1, 2],
            splittings: vec![split(g1, vec![Side::Second]), split(g2, vec![Side::First])],
        };
        let ledger = amalgamate(&gs).unwrap();
        prop_assert_eq!(ledger.amalgamated_genus, i64::from(g1 + g2) - i64::from(r));
    }

    #[test]
    fn thin_pieces_cancel(g in 1u32..30, m in 0usize..12) {
        let gs = thick_thin_splitting(g, m).unwrap();
        prop_assert!(validate_fork_complex(&gs.fork_complex()).valid);
        prop_assert_eq!(amalgamate(&gs).unwrap().amalgamated_genus, i64::from(g));
    }

    #[test]
    fn ledger_ignores_valid_reorderings(m in 1usize..8, g in 1u32..10, seed in 0u64..1000) {
        // Thin pieces can be ordered arbitrarily among themselves.
        let gs = thick_thin_splitting(g, m).unwrap();
        let mut order: Vec<usize> = (2..=m + 1).collect();
        let k = (seed as usize) % order.len().max(1);
        order.rotate_left(k);
        let mut shuffled = gs.clone();
        shuffled.ordering = std::iter::once(1).chain(order).collect();
        prop_assert_eq!(amalgamate(&shuffled).unwrap(), amalgamate(&gs).unwrap());
    }
}
