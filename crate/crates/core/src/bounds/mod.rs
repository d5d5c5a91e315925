//! Width and genus bounds chained from a volume and a tetrahedron budget.
//!
//! Every quantity is recorded as a step with its inputs, so a report can be
//! recomputed from its own contents.

use num_traits::Float;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::graph::Multigraph;
use crate::heegaard::{amalgamate, thick_thin_splitting, HeegaardError};
use crate::trikernel::{dual_graph, Triangulation};
use crate::widths::{exact_width, heuristic_width, Strategy, WidthCertificate, WidthParameter, DEFAULT_EXACT_CUTOFF};

/// Known bracket for the three-dimensional Margulis constant.
pub const MARGULIS_LOWER: f64 = 0.104;
pub const MARGULIS_UPPER: f64 = 0.616;

const SNAP_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum BoundsError {
    #[error("volume must be finite and nonnegative, got {0}")]
    Volume(f64),
    #[error("tetrahedron budget constant must be finite and positive, got {0}")]
    BudgetConstant(f64),
    #[error("epsilon must lie in (0, {MARGULIS_UPPER}], got {0}")]
    Epsilon(f64),
    #[error("tetrahedron budget {0} does not fit in 64 bits")]
    Overflow(f64),
    #[error(transparent)]
    Heegaard(#[from] HeegaardError),
}

/// User-supplied quantities for a bound chain.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundInputs<S> {
    pub volume: S,
    /// Tetrahedra per unit volume in a triangulation of the thick part.
    pub budget_constant: S,
    pub epsilon: S,
    pub heegaard_genus: Option<u64>,
    pub treewidth_ub: Option<u64>,
    pub pathwidth_ub: Option<u64>,
    /// Replace the derived thick-piece splitting genus.
    pub thick_genus: Option<u64>,
    /// Replace the derived number of thin pieces.
    pub m_thin: Option<u64>,
}

impl<S: Float> BoundInputs<S> {
    pub fn new(volume: S, budget_constant: S) -> Self {
        BoundInputs {
            volume,
            budget_constant,
            epsilon: S::from(MARGULIS_LOWER).expect("constant fits"),
            heegaard_genus: None,
            treewidth_ub: None,
            pathwidth_ub: None,
            thick_genus: None,
            m_thin: None,
        }
    }

    pub fn validate(&self) -> Result<(), BoundsError> {
        let v = to_f64(self.volume);
        if !v.is_finite() || v < 0.0 {
            return Err(BoundsError::Volume(v));
        }
        let k = to_f64(self.budget_constant);
        if !k.is_finite() || k <= 0.0 {
            return Err(BoundsError::BudgetConstant(k));
        }
        let e = to_f64(self.epsilon);
        if !(e > 0.0 && e <= MARGULIS_UPPER) {
            return Err(BoundsError::Epsilon(e));
        }
        Ok(())
    }
}

fn to_f64<S: Float>(x: S) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Smallest integer at least `x`, treating values within a relative `1e-9`
/// (or a few ulps of `S`) of an integer as that integer.
pub fn snapped_ceil<S: Float>(x: S) -> S {
    let nearest = x.round();
    let ulps = S::epsilon() * S::from(8.0).expect("small constant");
    let tol = S::from(SNAP_TOLERANCE).expect("small constant").max(ulps) * x.abs().max(S::one());
    if (x - nearest).abs() <= tol {
        nearest
    } else {
        x.ceil()
    }
}

/// `4g − 2`, clamped to zero at `g = 0`; the flag reports the clamp.
pub fn pathwidth_from_genus_flagged(g: u64) -> (u64, bool) {
    if g == 0 {
        (0, true)
    } else {
        (4 * g - 2, false)
    }
}

pub fn pathwidth_from_genus(g: u64) -> u64 {
    pathwidth_from_genus_flagged(g).0
}

/// `18(tw + 1)`, the genus bound valid for closed, irreducible, non-Haken manifolds.
pub fn genus_lower_bound_from_treewidth(tw: u64) -> u64 {
    18 * (tw + 1)
}

pub const NON_HAKEN_HYPOTHESES: &str = "closed, irreducible, non-Haken (not verified)";

/// Width of the dual graph of `t`, an upper bound for the manifold invariant.
/// Exact up to the default cutoff, greedy beyond it.
pub fn manifold_width_upper_bound(t: &Triangulation, parameter: WidthParameter) -> WidthCertificate {
    manifold_width_upper_bound_with(t, parameter, DEFAULT_EXACT_CUTOFF)
}

pub fn manifold_width_upper_bound_with(t: &Triangulation, parameter: WidthParameter, cutoff: usize) -> WidthCertificate {
    width_of(&dual_graph(t), parameter, cutoff)
}

fn width_of(g: &Multigraph, parameter: WidthParameter, cutoff: usize) -> WidthCertificate {
    exact_width(g, parameter, cutoff).unwrap_or_else(|_| heuristic_width(g, parameter, Strategy::MinFill))
}

/// One arithmetic step of a bound chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRecord {
    pub step: String,
    #[serde(rename = "paper_ref")]
    pub reference: String,
    pub inputs: Map<String, Value>,
    pub output: Value,
}

/// Ordered steps of a bound chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BoundChainReport {
    pub records: Vec<BoundRecord>,
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
#[error("step `{step}` does not recompute: stored {stored}, recomputed {recomputed}")]
pub struct VerifyError {
    pub step: String,
    pub stored: Value,
    pub recomputed: Value,
}

impl BoundChainReport {
    pub fn record(&self, step: &str) -> Option<&BoundRecord> {
        self.records.iter().find(|r| r.step == step)
    }

    fn integer(&self, step: &str) -> u64 {
        self.record(step).and_then(|r| r.output.as_u64()).unwrap_or(0)
    }

    pub fn tetrahedra(&self) -> u64 {
        self.integer("tetrahedron_budget")
    }

    pub fn thick_genus(&self) -> u64 {
        self.integer("thick_splitting_genus")
    }

    pub fn amalgamated_genus(&self) -> u64 {
        self.integer("amalgamated_genus")
    }

    pub fn final_pathwidth_bound(&self) -> u64 {
        self.integer("final_pathwidth_bound")
    }

    pub fn degenerate(&self) -> bool {
        self.record("degenerate_volume").and_then(|r| r.output.as_bool()).unwrap_or(false)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Recomputes every step from its recorded inputs.
    pub fn verify(&self) -> Result<(), Box<VerifyError>> {
        for r in &self.records {
            let recomputed = recompute(r);
            if recomputed != r.output {
                return Err(Box::new(VerifyError {
                    step: r.step.clone(),
                    stored: r.output.clone(),
                    recomputed,
                }));
            }
        }
        Ok(())
    }
}

fn input_f64(r: &BoundRecord, key: &str) -> f64 {
    r.inputs.get(key).and_then(Value::as_f64).unwrap_or(f64::NAN)
}

fn input_u64(r: &BoundRecord, key: &str) -> u64 {
    r.inputs.get(key).and_then(Value::as_u64).unwrap_or(u64::MAX)
}

fn input_opt_u64(r: &BoundRecord, key: &str) -> Option<u64> {
    r.inputs.get(key).and_then(Value::as_u64)
}

fn ratio(num: u64, den: f64) -> Value {
    if den > 0.0 {
        json!(num as f64 / den)
    } else {
        Value::Null
    }
}

fn recompute(r: &BoundRecord) -> Value {
    match r.step.as_str() {
        "margulis_bracket" => {
            let e = input_f64(r, "epsilon");
            json!(e > 0.0 && e <= input_f64(r, "upper") && input_f64(r, "lower") <= input_f64(r, "upper"))
        }
        "tetrahedron_budget" => json!(snapped_ceil(input_f64(r, "budget_constant") * input_f64(r, "volume")) as u64),
        "degenerate_volume" => json!(input_f64(r, "volume") == 0.0),
        "thick_splitting_genus" => match input_opt_u64(r, "supplied") {
            Some(g) => json!(g),
            None => {
                let n = input_u64(r, "tetrahedra");
                json!(if n == 0 { 0 } else { n + 1 })
            }
        },
        "thin_piece_count" => json!(input_opt_u64(r, "supplied").unwrap_or_else(|| input_u64(r, "tetrahedra"))),
        "amalgamated_genus" => {
            let s = input_u64(r, "sum_splitting_genera") as i64;
            let g = input_u64(r, "sum_gluing_genera") as i64;
            let chi = r.inputs.get("euler_char_dual").and_then(Value::as_i64).unwrap_or(i64::MIN / 2);
            json!(s - g + 1 - chi)
        }
        "pathwidth_bound" | "pathwidth_from_supplied_genus" => {
            let (pw, clamped) = pathwidth_from_genus_flagged(input_u64(r, "genus"));
            if r.inputs.get("clamped").and_then(Value::as_bool) != Some(clamped) {
                return json!("clamp flag mismatch");
            }
            json!(pw)
        }
        "treewidth_bound" | "final_pathwidth_bound" => json!(input_u64(r, "pathwidth_bound")),
        "genus_from_treewidth" => json!(genus_lower_bound_from_treewidth(input_u64(r, "treewidth"))),
        "supplied_width_order" => json!(input_u64(r, "treewidth") <= input_u64(r, "pathwidth")),
        "effective_genus_constant" => ratio(input_u64(r, "genus"), input_f64(r, "volume")),
        "effective_pathwidth_constant" => ratio(input_u64(r, "pathwidth_bound"), input_f64(r, "volume")),
        other => json!(format!("unknown step {other}")),
    }
}

fn record(step: &str, reference: &str, inputs: Value, output: Value) -> BoundRecord {
    let Value::Object(inputs) = inputs else {
        panic!("inputs must be an object")
    };
    BoundRecord {
        step: step.to_string(),
        reference: reference.to_string(),
        inputs,
        output,
    }
}

/// Composes the chain volume → tetrahedra → splitting genus → amalgamated
/// genus → pathwidth, with optional supplied widths and genus.
pub fn bound_chain<S: Float>(b: &BoundInputs<S>) -> Result<BoundChainReport, BoundsError> {
    b.validate()?;
    let volume = to_f64(b.volume);
    let k = to_f64(b.budget_constant);
    let epsilon = to_f64(b.epsilon);
    let budget = snapped_ceil(b.budget_constant * b.volume);
    let n = budget.to_u64().ok_or(BoundsError::Overflow(to_f64(budget)))?;
    let degenerate = volume == 0.0;
    let mut records = vec![
        record(
            "margulis_bracket",
            "Margulis constant bracket 0.104 ≤ ε₃ ≤ 0.616",
            json!({"epsilon": epsilon, "lower": MARGULIS_LOWER, "upper": MARGULIS_UPPER}),
            json!(true),
        ),
        record(
            "tetrahedron_budget",
            "thick part triangulated with at most K·vol tetrahedra",
            json!({"budget_constant": k, "volume": volume}),
            json!(n),
        ),
        record("degenerate_volume", "zero volume gives an empty thick part", json!({"volume": volume}), json!(degenerate)),
    ];

    let derived_thick = if n == 0 { 0 } else { n + 1 };
    let thick = b.thick_genus.unwrap_or(derived_thick);
    let mut thick_inputs = json!({"tetrahedra": n});
    if let Some(g) = b.thick_genus {
        thick_inputs["supplied"] = json!(g);
    }
    records.push(record(
        "thick_splitting_genus",
        "splitting of a closed triangulation has genus n + 1",
        thick_inputs,
        json!(thick),
    ));

    let m = b.m_thin.unwrap_or(n);
    let mut thin_inputs = json!({"tetrahedra": n});
    if let Some(m) = b.m_thin {
        thin_inputs["supplied"] = json!(m);
    }
    records.push(record(
        "thin_piece_count",
        "after subdivision each boundary torus uses at least one tetrahedron",
        thin_inputs,
        json!(m),
    ));

    let thick_u32 = u32::try_from(thick).map_err(|_| BoundsError::Overflow(thick as f64))?;
    let m_usize = usize::try_from(m).map_err(|_| BoundsError::Overflow(m as f64))?;
    let ledger = amalgamate(&thick_thin_splitting(thick_u32, m_usize)?)?;
    let genus = u64::try_from(ledger.amalgamated_genus).expect("amalgamate rejects negative genus");
    records.push(record(
        "amalgamated_genus",
        "amalgamation genus Σg(S_i) − Σg(R_e) + 1 − χ(Γ)",
        json!({
            "euler_char_dual": ledger.euler_char_dual,
            "m_thin": m,
            "sum_gluing_genera": ledger.sum_gluing_genera,
            "sum_splitting_genera": ledger.sum_splitting_genera,
            "thick_genus": thick,
        }),
        json!(genus),
    ));

    let (pw, clamped) = pathwidth_from_genus_flagged(genus);
    records.push(record(
        "pathwidth_bound",
        "pathwidth at most 4g − 2",
        json!({"clamped": clamped, "genus": genus}),
        json!(pw),
    ));
    records.push(record(
        "treewidth_bound",
        "treewidth at most pathwidth",
        json!({"pathwidth_bound": pw}),
        json!(pw),
    ));

    if let Some(g) = b.heegaard_genus {
        let (p, c) = pathwidth_from_genus_flagged(g);
        records.push(record(
            "pathwidth_from_supplied_genus",
            "pathwidth at most 4g − 2",
            json!({"clamped": c, "genus": g}),
            json!(p),
        ));
    }
    if let Some(tw) = b.treewidth_ub {
        records.push(record(
            "genus_from_treewidth",
            "Heegaard genus at most 18(tw + 1)",
            json!({"hypotheses": NON_HAKEN_HYPOTHESES, "treewidth": tw}),
            json!(genus_lower_bound_from_treewidth(tw)),
        ));
    }
    if let (Some(tw), Some(pwu)) = (b.treewidth_ub, b.pathwidth_ub) {
        records.push(record(
            "supplied_width_order",
            "treewidth at most pathwidth",
            json!({"pathwidth": pwu, "treewidth": tw}),
            json!(tw <= pwu),
        ));
    }

    records.push(record(
        "effective_genus_constant",
        "C″ = genus / vol for this K",
        json!({"genus": genus, "volume": volume}),
        ratio(genus, volume),
    ));
    records.push(record(
        "effective_pathwidth_constant",
        "C′ = pathwidth bound / vol for this K",
        json!({"pathwidth_bound": pw, "volume": volume}),
        ratio(pw, volume),
    ));
    records.push(record(
        "final_pathwidth_bound",
        "pathwidth at most C′·vol",
        json!({"pathwidth_bound": pw}),
        json!(pw),
    ));
    Ok(BoundChainReport { records })
}
