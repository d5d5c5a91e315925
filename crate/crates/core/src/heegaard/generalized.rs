use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::fork::{Fork, ForkComplex};
use super::HeegaardError;
use crate::graph::Multigraph;

/// A piece of a decomposition and the genera of its boundary surfaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Piece {
    pub boundary_genera: Vec<u32>,
    pub id: usize,
}

/// Boundary surface `slot` of piece `piece`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SlotRef {
    pub piece: usize,
    pub slot: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceGluing {
    pub a: SlotRef,
    pub b: SlotRef,
}

/// Pieces glued along boundary surfaces, with one dual-graph arc per gluing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDecomposition")]
pub struct Decomposition {
    pub dual_graph: Multigraph,
    pub gluings: Vec<PieceGluing>,
    pub pieces: Vec<Piece>,
}

#[derive(Deserialize)]
struct RawDecomposition {
    dual_graph: Option<Multigraph>,
    gluings: Vec<PieceGluing>,
    pieces: Vec<Piece>,
}

impl TryFrom<RawDecomposition> for Decomposition {
    type Error = HeegaardError;

    fn try_from(raw: RawDecomposition) -> Result<Self, Self::Error> {
        let d = Decomposition::new(raw.pieces, raw.gluings)?;
        match raw.dual_graph {
            Some(g) if g != d.dual_graph => Err(HeegaardError::DualGraphMismatch),
            _ => Ok(d),
        }
    }
}

impl Decomposition {
    /// Rejects gluings naming unknown slots, reusing a slot or joining surfaces of different genus.
    pub fn new(pieces: Vec<Piece>, gluings: Vec<PieceGluing>) -> Result<Self, HeegaardError> {
        let mut used = BTreeSet::new();
        for (index, g) in gluings.iter().enumerate() {
            let mut genera = [0u32; 2];
            for (k, s) in [g.a, g.b].into_iter().enumerate() {
                genera[k] = pieces
                    .get(s.piece)
                    .and_then(|p| p.boundary_genera.get(s.slot))
                    .copied()
                    .ok_or(HeegaardError::UnknownSlot { gluing: index, slot: s })?;
                if !used.insert(s) {
                    return Err(HeegaardError::SlotReused { gluing: index, slot: s });
                }
            }
            if genera[0] != genera[1] {
                return Err(HeegaardError::GluingGenus {
                    gluing: index,
                    genus_a: genera[0],
                    genus_b: genera[1],
                });
            }
        }
        let dual_graph = Multigraph::new(pieces.len(), gluings.iter().map(|g| (g.a.piece, g.b.piece)))
            .expect("slots were checked against the piece list");
        Ok(Decomposition {
            dual_graph,
            gluings,
            pieces,
        })
    }

    pub fn slot_genus(&self, s: SlotRef) -> u32 {
        self.pieces[s.piece].boundary_genera[s.slot]
    }

    /// Gluing and other end for every glued slot of `piece`.
    fn partner(&self, s: SlotRef) -> Option<(usize, SlotRef)> {
        self.gluings.iter().enumerate().find_map(|(i, g)| {
            if g.a == s {
                Some((i, g.b))
            } else if g.b == s {
                Some((i, g.a))
            } else {
                None
            }
        })
    }
}

/// Which half of a piece's boundary partition a surface lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    First,
    Second,
}

/// A splitting of one piece: the surface genus and, per boundary slot, the
/// side of the surface it falls on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceSplitting {
    pub partition: Vec<Side>,
    pub surface_genus: u32,
}

/// Pieces with an ordering and a compatible splitting of each piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneralizedSplitting {
    pub decomposition: Decomposition,
    /// `ordering[i]` is the position of piece `i`, a bijection onto `1..=pieces`.
    pub ordering: Vec<usize>,
    pub splittings: Vec<PieceSplitting>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum SplittingViolation {
    OrderingNotBijective,
    SplittingCount { pieces: usize, splittings: usize },
    PartitionLength { piece: usize, slots: usize, partition: usize },
    /// A surface glued to an earlier piece must lie in the first half of the
    /// partition, one glued to a later piece in the second.
    Incompatible { gluing: usize, piece: usize, slot: usize, expected: Side },
    /// A piece glued to itself admits no ordering that places the two sides apart.
    SelfGluedPiece { gluing: usize, piece: usize },
    SurfaceTooSmall { piece: usize, side: Side, surface_genus: u32, minimum: u32 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplittingValidation {
    pub valid: bool,
    pub violations: Vec<SplittingViolation>,
}

impl GeneralizedSplitting {
    /// Genera of the slots of `piece` on `side`.
    pub fn side_genera(&self, piece: usize, side: Side) -> Vec<u32> {
        let p = &self.decomposition.pieces[piece];
        p.boundary_genera
            .iter()
            .zip(&self.splittings[piece].partition)
            .filter(|(_, &s)| s == side)
            .map(|(&g, _)| g)
            .collect()
    }

    /// The two compression bodies of each piece as forks, with grips paired
    /// inside a piece and tines paired across gluings.
    pub fn fork_complex(&self) -> ForkComplex {
        let mut forks = Vec::new();
        let mut grip_pairings = Vec::new();
        // Fork and tine position of every slot.
        let mut tine_of = std::collections::BTreeMap::new();
        for (i, sp) in self.splittings.iter().enumerate() {
            for side in [Side::First, Side::Second] {
                let fork = forks.len();
                let mut tines = Vec::new();
                for (slot, (&g, &s)) in self.decomposition.pieces[i]
                    .boundary_genera
                    .iter()
                    .zip(&sp.partition)
                    .enumerate()
                {
                    if s == side {
                        tine_of.insert(SlotRef { piece: i, slot }, (fork, tines.len()));
                        tines.push(g);
                    }
                }
                forks.push(Fork::new(fork, sp.surface_genus, tines));
            }
            grip_pairings.push((2 * i, 2 * i + 1));
        }
        let tine_pairings = self
            .decomposition
            .gluings
            .iter()
            .filter_map(|g| Some((*tine_of.get(&g.a)?, *tine_of.get(&g.b)?)))
            .collect();
        ForkComplex::new(forks, grip_pairings, tine_pairings)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("splitting serializes")
    }
}

pub fn validate_generalized(gs: &GeneralizedSplitting) -> SplittingValidation {
    let d = &gs.decomposition;
    let k = d.pieces.len();
    let mut violations = Vec::new();
    let positions: BTreeSet<usize> = gs.ordering.iter().copied().collect();
    if gs.ordering.len() != k || positions != (1..=k).collect() {
        violations.push(SplittingViolation::OrderingNotBijective);
    }
    if gs.splittings.len() != k {
        violations.push(SplittingViolation::SplittingCount {
            pieces: k,
            splittings: gs.splittings.len(),
        });
    }
    if !violations.is_empty() {
        return SplittingValidation {
            valid: false,
            violations,
        };
    }
    for (i, (p, sp)) in d.pieces.iter().zip(&gs.splittings).enumerate() {
        if sp.partition.len() != p.boundary_genera.len() {
            violations.push(SplittingViolation::PartitionLength {
                piece: i,
                slots: p.boundary_genera.len(),
                partition: sp.partition.len(),
            });
        }
    }
    if !violations.is_empty() {
        return SplittingValidation {
            valid: false,
            violations,
        };
    }
    for (i, p) in d.pieces.iter().enumerate() {
        for slot in 0..p.boundary_genera.len() {
            let here = SlotRef { piece: i, slot };
            let Some((gluing, there)) = d.partner(here) else { continue };
            if there.piece == i {
                if here < there {
                    violations.push(SplittingViolation::SelfGluedPiece { gluing, piece: i });
                }
                continue;
            }
            let expected = if gs.ordering[there.piece] < gs.ordering[i] {
                Side::First
            } else {
                Side::Second
            };
            if gs.splittings[i].partition[slot] != expected {
                violations.push(SplittingViolation::Incompatible {
                    gluing,
                    piece: i,
                    slot,
                    expected,
                });
            }
        }
        for side in [Side::First, Side::Second] {
            let minimum = Fork::minimal_grip_genus(&gs.side_genera(i, side));
            let surface_genus = gs.splittings[i].surface_genus;
            if surface_genus < minimum {
                violations.push(SplittingViolation::SurfaceTooSmall {
                    piece: i,
                    side,
                    surface_genus,
                    minimum,
                });
            }
        }
    }
    SplittingValidation {
        valid: violations.is_empty(),
        violations,
    }
}

/// Genus bookkeeping of an amalgamation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusLedger {
    pub amalgamated_genus: i64,
    pub euler_char_dual: i64,
    pub sum_gluing_genera: i64,
    pub sum_splitting_genera: i64,
}

impl GenusLedger {
    /// `Σ g(S_i) − Σ g(R_e) + 1 − χ(Γ)`.
    pub fn from_sums(sum_splitting_genera: i64, sum_gluing_genera: i64, euler_char_dual: i64) -> Self {
        GenusLedger {
            amalgamated_genus: sum_splitting_genera - sum_gluing_genera + 1 - euler_char_dual,
            euler_char_dual,
            sum_gluing_genera,
            sum_splitting_genera,
        }
    }

    pub fn is_consistent(&self) -> bool {
        self.amalgamated_genus == self.sum_splitting_genera - self.sum_gluing_genera + 1 - self.euler_char_dual
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ledger serializes")
    }
}

/// Genus of the classical splitting obtained by amalgamating `gs`.
pub fn amalgamate(gs: &GeneralizedSplitting) -> Result<GenusLedger, HeegaardError> {
    let v = validate_generalized(gs);
    if !v.valid {
        return Err(HeegaardError::InvalidSplitting(v.violations));
    }
    let d = &gs.decomposition;
    if !d.dual_graph.is_connected() {
        return Err(HeegaardError::DisconnectedDecomposition);
    }
    let sum_splitting: i64 = gs.splittings.iter().map(|s| i64::from(s.surface_genus)).sum();
    let sum_gluing: i64 = d.gluings.iter().map(|g| i64::from(d.slot_genus(g.a))).sum();
    let chi = d.pieces.len() as i64 - d.gluings.len() as i64;
    let ledger = GenusLedger::from_sums(sum_splitting, sum_gluing, chi);
    if ledger.amalgamated_genus < 0 {
        return Err(HeegaardError::NegativeGenus(ledger.amalgamated_genus));
    }
    Ok(ledger)
}

/// Star-shaped splitting: a thick piece of splitting genus `thick_genus`
/// with `m_thin` torus boundaries, each glued to a solid torus of splitting
/// genus one. Pieces are ordered thick first.
pub fn thick_thin_splitting(thick_genus: u32, m_thin: usize) -> Result<GeneralizedSplitting, HeegaardError> {
    if m_thin >= 1 && thick_genus < 1 {
        return Err(HeegaardError::InconsistentGenera { thick_genus, m_thin });
    }
    let mut pieces = vec![Piece {
        boundary_genera: vec![1; m_thin],
        id: 0,
    }];
    let mut splittings = vec![PieceSplitting {
        partition: vec![Side::Second; m_thin],
        surface_genus: thick_genus,
    }];
    let mut gluings = Vec::with_capacity(m_thin);
    for i in 1..=m_thin {
        pieces.push(Piece {
            boundary_genera: vec![1],
            id: i,
        });
        splittings.push(PieceSplitting {
            partition: vec![Side::First],
            surface_genus: 1,
        });
        gluings.push(PieceGluing {
            a: SlotRef { piece: 0, slot: i - 1 },
            b: SlotRef { piece: i, slot: 0 },
        });
    }
    let gs = GeneralizedSplitting {
        decomposition: Decomposition::new(pieces, gluings)?,
        ordering: (1..=m_thin + 1).collect(),
        splittings,
    };
    let v = validate_generalized(&gs);
    if !v.valid {
        return Err(HeegaardError::InvalidSplitting(v.violations));
    }
    Ok(gs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_pieces(g1: u32, g2: u32, r: u32) -> GeneralizedSplitting {
        let pieces = vec![
            Piece {
                boundary_genera: vec![r],
                id: 0,
            },
            Piece {
                boundary_genera: vec![r],
                id: 1,
            },
        ];
        let gluings = vec![PieceGluing {
            a: SlotRef { piece: 0, slot: 0 },
            b: SlotRef { piece: 1, slot: 0 },
        }];
        GeneralizedSplitting {
            decomposition: Decomposition::new(pieces, gluings).unwrap(),
            ordering: vec![1, 2],
            splittings: vec![
                PieceSplitting {
                    partition: vec![Side::Second],
                    surface_genus: g1,
                },
                PieceSplitting {
                    partition: vec![Side::First],
                    surface_genus: g2,
                },
            ],
        }
    }

    #[test]
    fn two_piece_substitution() {
        let ledger = amalgamate(&two_pieces(2, 3, 1)).unwrap();
        assert_eq!(ledger.euler_char_dual, 1);
        assert_eq!(ledger.amalgamated_genus, 4);
        assert!(ledger.is_consistent());
    }

    #[test]
    fn star_example() {
        let gs = thick_thin_splitting(5, 3).unwrap();
        let ledger = amalgamate(&gs).unwrap();
        assert_eq!(
            ledger,
            GenusLedger {
                amalgamated_genus: 5,
                euler_char_dual: 1,
                sum_gluing_genera: 3,
                sum_splitting_genera: 8
            }
        );
        assert!(super::super::validate_fork_complex(&gs.fork_complex()).valid);
    }

    #[test]
    fn small_thick_thin_cases() {
        assert_eq!(amalgamate(&thick_thin_splitting(4, 0).unwrap()).unwrap().amalgamated_genus, 4);
        assert_eq!(amalgamate(&thick_thin_splitting(1, 1).unwrap()).unwrap().amalgamated_genus, 1);
        assert!(matches!(
            thick_thin_splitting(0, 2),
            Err(HeegaardError::InconsistentGenera { .. })
        ));
    }

    #[test]
    fn reversed_ordering_is_incompatible() {
        let mut gs = two_pieces(2, 3, 1);
        gs.ordering = vec![2, 1];
        let v = validate_generalized(&gs);
        assert!(!v.valid);
        assert!(matches!(v.violations[0], SplittingViolation::Incompatible { gluing: 0, .. }));
        assert!(matches!(amalgamate(&gs), Err(HeegaardError::InvalidSplitting(_))));
    }

    #[test]
    fn single_piece_any_ordering() {
        let gs = thick_thin_splitting(3, 0).unwrap();
        assert!(validate_generalized(&gs).valid);
    }

    #[test]
    fn json_round_trip() {
        let gs = thick_thin_splitting(5, 3).unwrap();
        let text = gs.to_json();
        let back: GeneralizedSplitting = serde_json::from_str(&text).unwrap();
        assert_eq!(back, gs);
        assert_eq!(back.to_json(), text);
    }

    #[test]
    fn bad_gluings_rejected() {
        let pieces = vec![
            Piece {
                boundary_genera: vec![1],
                id: 0,
            },
            Piece {
                boundary_genera: vec![2],
                id: 1,
            },
        ];
        let g = PieceGluing {
            a: SlotRef { piece: 0, slot: 0 },
            b: SlotRef { piece: 1, slot: 0 },
        };
        assert!(matches!(
            Decomposition::new(pieces, vec![g]),
            Err(HeegaardError::GluingGenus { .. })
        ));
    }
}
