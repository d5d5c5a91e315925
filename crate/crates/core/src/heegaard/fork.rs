use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::Multigraph;

/// A compression body reduced to its boundary genera: one grip (the upper
/// boundary) and one tine per lower boundary component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "RawFork")]
pub struct Fork {
    pub grip_genus: u32,
    pub id: usize,
    pub n_tines: usize,
    pub tine_genera: Vec<u32>,
}

#[derive(Deserialize)]
struct RawFork {
    grip_genus: u32,
    id: usize,
    n_tines: Option<usize>,
    tine_genera: Vec<u32>,
}

impl From<RawFork> for Fork {
    fn from(raw: RawFork) -> Self {
        Fork {
            grip_genus: raw.grip_genus,
            id: raw.id,
            n_tines: raw.n_tines.unwrap_or(raw.tine_genera.len()),
            tine_genera: raw.tine_genera,
        }
    }
}

impl Fork {
    pub fn new(id: usize, grip_genus: u32, tine_genera: Vec<u32>) -> Self {
        Fork {
            grip_genus,
            id,
            n_tines: tine_genera.len(),
            tine_genera,
        }
    }

    /// A handlebody: no tines.
    pub fn handlebody(id: usize, genus: u32) -> Self {
        Fork::new(id, genus, Vec::new())
    }

    /// Node 0 is the root, node 1 the grip, nodes `2..` the tines.
    pub fn tree(&self) -> Multigraph {
        let n = self.tine_genera.len() + 2;
        Multigraph::new(n, (1..n).map(|leaf| (0, leaf))).expect("star arcs in range")
    }

    /// Smallest grip genus a compression body with these tines can have.
    pub fn minimal_grip_genus(tine_genera: &[u32]) -> u32 {
        if tine_genera.is_empty() {
            0
        } else {
            let total: u32 = tine_genera.iter().sum();
            (total + 1).saturating_sub(tine_genera.len() as u32)
        }
    }
}

/// A grip or a tine, addressed by fork position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Slot {
    Grip { fork: usize },
    Tine { fork: usize, tine: usize },
}

/// Forks glued grip to grip and tine to tine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawComplex")]
pub struct ForkComplex {
    pub boundary: Vec<Slot>,
    pub forks: Vec<Fork>,
    /// Pairs of fork positions whose grips are identified.
    pub grip_pairings: Vec<(usize, usize)>,
    /// Pairs of `(fork, tine)` positions that are identified.
    pub tine_pairings: Vec<((usize, usize), (usize, usize))>,
}

#[derive(Deserialize)]
struct RawComplex {
    boundary: Option<Vec<Slot>>,
    forks: Vec<Fork>,
    grip_pairings: Vec<(usize, usize)>,
    tine_pairings: Vec<((usize, usize), (usize, usize))>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("stored boundary does not match the unpaired grips and tines")]
pub struct BoundaryMismatch;

impl TryFrom<RawComplex> for ForkComplex {
    type Error = BoundaryMismatch;

    fn try_from(raw: RawComplex) -> Result<Self, Self::Error> {
        let fc = ForkComplex::new(raw.forks, raw.grip_pairings, raw.tine_pairings);
        match raw.boundary {
            Some(b) if b != fc.boundary => Err(BoundaryMismatch),
            _ => Ok(fc),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum ForkViolation {
    /// The stated tine count disagrees with the listed tine genera, so the
    /// fork tree would not have `n_tines + 2` nodes.
    TineCount { fork: usize, n_tines: usize, listed: usize },
    /// The grip is too small to bound a compression body with these tines.
    CompressionBody { fork: usize, grip_genus: u32, minimum: u32 },
    DuplicateId { id: usize },
    UnknownSlot { slot: Slot },
    SelfPairing { slot: Slot },
    SlotReused { slot: Slot },
    GenusMismatch { a: Slot, b: Slot, genus_a: u32, genus_b: u32 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForkValidation {
    pub valid: bool,
    pub violations: Vec<ForkViolation>,
}

impl ForkComplex {
    pub fn new(
        forks: Vec<Fork>,
        grip_pairings: Vec<(usize, usize)>,
        tine_pairings: Vec<((usize, usize), (usize, usize))>,
    ) -> Self {
        let mut used = BTreeSet::new();
        for &(a, b) in &grip_pairings {
            used.insert(Slot::Grip { fork: a });
            used.insert(Slot::Grip { fork: b });
        }
        for &((fa, ta), (fb, tb)) in &tine_pairings {
            used.insert(Slot::Tine { fork: fa, tine: ta });
            used.insert(Slot::Tine { fork: fb, tine: tb });
        }
        let mut boundary = Vec::new();
        for (i, f) in forks.iter().enumerate() {
            let grip = Slot::Grip { fork: i };
            if !used.contains(&grip) {
                boundary.push(grip);
            }
            for t in 0..f.tine_genera.len() {
                let tine = Slot::Tine { fork: i, tine: t };
                if !used.contains(&tine) {
                    boundary.push(tine);
                }
            }
        }
        ForkComplex {
            boundary,
            forks,
            grip_pairings,
            tine_pairings,
        }
    }

    /// Two handlebodies of genus `g` with their grips identified.
    pub fn classical(genus: u32) -> Self {
        ForkComplex::new(vec![Fork::handlebody(0, genus), Fork::handlebody(1, genus)], vec![(0, 1)], Vec::new())
    }

    pub fn slot_genus(&self, slot: Slot) -> Option<u32> {
        match slot {
            Slot::Grip { fork } => self.forks.get(fork).map(|f| f.grip_genus),
            Slot::Tine { fork, tine } => self.forks.get(fork).and_then(|f| f.tine_genera.get(tine)).copied(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fork complex serializes")
    }

    /// Grips are boxes, tines triangles and roots circles.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph F {\n");
        for (i, f) in self.forks.iter().enumerate() {
            let _ = writeln!(out, "  r{i} [shape=circle,label=\"{}\"];", f.id);
            let _ = writeln!(out, "  g{i} [shape=box,label=\"{}\"];", f.grip_genus);
            let _ = writeln!(out, "  r{i} -- g{i};");
            for (t, genus) in f.tine_genera.iter().enumerate() {
                let _ = writeln!(out, "  t{i}_{t} [shape=triangle,label=\"{genus}\"];");
                let _ = writeln!(out, "  r{i} -- t{i}_{t};");
            }
        }
        for &(a, b) in &self.grip_pairings {
            let _ = writeln!(out, "  g{a} -- g{b} [style=dashed];");
        }
        for &((fa, ta), (fb, tb)) in &self.tine_pairings {
            let _ = writeln!(out, "  t{fa}_{ta} -- t{fb}_{tb} [style=dashed];");
        }
        out.push_str("}\n");
        out
    }
}

pub fn validate_fork_complex(fc: &ForkComplex) -> ForkValidation {
    let mut violations = Vec::new();
    let mut ids = BTreeSet::new();
    for (i, f) in fc.forks.iter().enumerate() {
        if !ids.insert(f.id) {
            violations.push(ForkViolation::DuplicateId { id: f.id });
        }
        if f.n_tines != f.tine_genera.len() {
            violations.push(ForkViolation::TineCount {
                fork: i,
                n_tines: f.n_tines,
                listed: f.tine_genera.len(),
            });
        }
        let minimum = Fork::minimal_grip_genus(&f.tine_genera);
        if f.grip_genus < minimum {
            violations.push(ForkViolation::CompressionBody {
                fork: i,
                grip_genus: f.grip_genus,
                minimum,
            });
        }
    }
    let pairs = fc
        .grip_pairings
        .iter()
        .map(|&(a, b)| (Slot::Grip { fork: a }, Slot::Grip { fork: b }))
        .chain(fc.tine_pairings.iter().map(|&((fa, ta), (fb, tb))| {
            (Slot::Tine { fork: fa, tine: ta }, Slot::Tine { fork: fb, tine: tb })
        }));
    let mut used = BTreeSet::new();
    for (a, b) in pairs {
        if a == b {
            violations.push(ForkViolation::SelfPairing { slot: a });
            continue;
        }
        let (ga, gb) = (fc.slot_genus(a), fc.slot_genus(b));
        for (slot, genus) in [(a, ga), (b, gb)] {
            if genus.is_none() {
                violations.push(ForkViolation::UnknownSlot { slot });
            } else if !used.insert(slot) {
                violations.push(ForkViolation::SlotReused { slot });
            }
        }
        if let (Some(genus_a), Some(genus_b)) = (ga, gb) {
            if genus_a != genus_b {
                violations.push(ForkViolation::GenusMismatch { a, b, genus_a, genus_b });
            }
        }
    }
    ForkValidation {
        valid: violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_splitting_is_valid() {
        let fc = ForkComplex::classical(3);
        assert!(validate_fork_complex(&fc).valid);
        assert!(fc.boundary.is_empty());
    }

    #[test]
    fn unequal_grips_rejected() {
        let fc = ForkComplex::new(vec![Fork::handlebody(0, 2), Fork::handlebody(1, 3)], vec![(0, 1)], vec![]);
        let v = validate_fork_complex(&fc);
        assert!(!v.valid);
        assert!(matches!(v.violations[0], ForkViolation::GenusMismatch { genus_a: 2, genus_b: 3, .. }));
    }

    #[test]
    fn wrong_tine_count_rejected() {
        let mut f = Fork::new(0, 3, vec![1, 1, 1]);
        assert_eq!(f.tree().n_nodes(), 5);
        assert_eq!(f.tree().degree(0), 4);
        f.n_tines = 4;
        let v = validate_fork_complex(&ForkComplex::new(vec![f], vec![], vec![]));
        assert_eq!(
            v.violations,
            vec![ForkViolation::TineCount {
                fork: 0,
                n_tines: 4,
                listed: 3
            }]
        );
    }

    #[test]
    fn grip_must_bound_tines() {
        assert_eq!(Fork::minimal_grip_genus(&[1, 1, 1]), 1);
        assert_eq!(Fork::minimal_grip_genus(&[2, 3]), 4);
        assert_eq!(Fork::minimal_grip_genus(&[0, 0]), 0);
        let fc = ForkComplex::new(vec![Fork::new(0, 3, vec![2, 3])], vec![], vec![]);
        assert!(!validate_fork_complex(&fc).valid);
    }

    #[test]
    fn reuse_and_boundary() {
        let forks = vec![Fork::new(0, 1, vec![1]), Fork::new(1, 1, vec![1]), Fork::handlebody(2, 1)];
        let fc = ForkComplex::new(forks, vec![(0, 2), (1, 2)], vec![((0, 0), (1, 0))]);
        let v = validate_fork_complex(&fc);
        assert_eq!(v.violations, vec![ForkViolation::SlotReused { slot: Slot::Grip { fork: 2 } }]);
        let open = ForkComplex::new(vec![Fork::new(0, 1, vec![1])], vec![], vec![]);
        assert_eq!(open.boundary.len(), 2);
    }

    #[test]
    fn json_round_trip_and_dot() {
        let fc = ForkComplex::new(vec![Fork::new(0, 2, vec![1]), Fork::new(1, 2, vec![1])], vec![(0, 1)], vec![]);
        let text = fc.to_json();
        let back: ForkComplex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, fc);
        assert_eq!(back.to_json(), text);
        let dot = fc.to_dot();
        assert!(dot.contains("shape=box") && dot.contains("shape=triangle") && dot.contains("shape=circle"));
    }
}
