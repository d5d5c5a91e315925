#![allow(dead_code)]

use std::path::PathBuf;

use pathvol::trikernel::Triangulation;
use serde::Deserialize;

#[derive(Debug, Deserialize)]
pub struct Expected {
    pub file: String,
    pub comment: String,
    pub tetrahedra: usize,
    pub gluings: usize,
    pub vertex_classes: usize,
    pub edge_classes: usize,
    pub triangle_classes: usize,
    pub euler_characteristic: i64,
    pub vertex_links: Vec<String>,
    pub has_reversed_edge: bool,
    pub orientable: bool,
    pub boundary_genera: Vec<i64>,
    pub boundary_triangles: Vec<usize>,
    pub dual_degrees: Vec<usize>,
    pub dual_connected: bool,
    pub closed: bool,
}

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data/corpus")
}

pub fn manifest() -> Vec<Expected> {
    let text = std::fs::read_to_string(corpus_dir().join("manifest.json")).expect("manifest present");
    serde_json::from_str(&text).expect("manifest parses")
}

pub struct Entry {
    pub expected: Expected,
    pub text: String,
    pub tri: Triangulation,
}

pub fn corpus() -> Vec<Entry> {
    manifest()
        .into_iter()
        .map(|expected| {
            let text = std::fs::read_to_string(corpus_dir().join(&expected.file)).expect("corpus file present");
            let tri = Triangulation::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", expected.file));
            Entry { expected, text, tri }
        })
        .collect()
}

pub mod oracle;

use pathvol::graph::Multigraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Uniform-ish random labelled tree by attaching each node to an earlier one.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Multigraph {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut g = Multigraph::empty(n);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_arc(perm[i], perm[j]).unwrap();
    }
    g
}

/// Random connected graph: a random tree plus each other pair with probability `p`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64) -> Multigraph {
    let mut g = random_tree(rng, n);
    let present: std::collections::BTreeSet<(usize, usize)> = g.arcs().iter().copied().collect();
    for a in 0..n {
        for b in a + 1..n {
            if !present.contains(&(a, b)) && rng.gen_bool(p) {
                g.add_arc(a, b).unwrap();
            }
        }
    }
    g
}

/// Adds `loops` loops and `extra` duplicated arcs at random.
pub fn add_noise<R: Rng>(rng: &mut R, g: &Multigraph, loops: usize, extra: usize) -> Multigraph {
    let mut h = g.clone();
    for _ in 0..loops {
        let v = rng.gen_range(0..g.n_nodes());
        h.add_arc(v, v).unwrap();
    }
    for _ in 0..extra {
        if let Some(&(a, b)) = g.arcs().choose(rng) {
            h.add_arc(b, a).unwrap();
        }
    }
    h
}

/// The fixed oracle set: 200 random connected graphs on 1 to 12 nodes.
pub fn oracle_graphs() -> Vec<Multigraph> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0200);
    (0..200)
        .map(|i| {
            let n = 1 + i % 12;
            let p = [0.1, 0.25, 0.4, 0.6][i % 4];
            random_connected(&mut rng, n, p)
        })
        .collect()
}
