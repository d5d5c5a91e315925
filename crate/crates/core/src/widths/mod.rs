//! Tree and path decompositions: validation, exact and greedy widths, and
//! conversion to nice form.

pub mod bitset;
mod decomposition;
mod elimination;
mod exact;
mod heuristic;
mod nice;

pub use decomposition::{
    bag_label, validate_decomposition, DecompositionError, PathDecomposition, TreeDecomposition, Validation,
    Violation,
};
pub use elimination::{contract_subset_bags, path_from_ordering, tree_from_elimination};
pub use exact::{
    contraction_lower_bound, exact_pathwidth, exact_treewidth, exact_width, DEFAULT_EXACT_CUTOFF, MAX_EXACT_NODES,
};
pub use heuristic::{elimination_ordering, heuristic_width, layout_ordering};
pub use nice::{count_join_bags, to_nice, BagKind, NiceBag, NiceError, NiceTreeDecomposition};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WidthParameter {
    Treewidth,
    Pathwidth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    MinDegree,
    MinFill,
}

impl fmt::Display for WidthParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WidthParameter::Treewidth => "treewidth",
            WidthParameter::Pathwidth => "pathwidth",
        })
    }
}

impl FromStr for WidthParameter {
    type Err = WidthError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "treewidth" => Ok(WidthParameter::Treewidth),
            "pathwidth" => Ok(WidthParameter::Pathwidth),
            other => Err(WidthError::UnknownName(other.to_string())),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::MinDegree => "min_degree",
            Strategy::MinFill => "min_fill",
        })
    }
}

impl FromStr for Strategy {
    type Err = WidthError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "min_degree" => Ok(Strategy::MinDegree),
            "min_fill" => Ok(Strategy::MinFill),
            other => Err(WidthError::UnknownName(other.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WidthError {
    #[error("{nodes} nodes exceed the exact-solver cutoff of {cutoff}; use a heuristic strategy instead")]
    CutoffExceeded { nodes: usize, cutoff: usize },
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
}

/// A width value together with a decomposition attaining it. For pathwidth
/// the decomposition tree is the path `0 - 1 - ... - (k-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCertificate")]
pub struct WidthCertificate {
    pub decomposition: TreeDecomposition,
    pub exact: bool,
    pub parameter: WidthParameter,
    pub value: usize,
}

#[derive(Deserialize)]
struct RawCertificate {
    decomposition: TreeDecomposition,
    exact: bool,
    parameter: WidthParameter,
    value: usize,
}

impl TryFrom<RawCertificate> for WidthCertificate {
    type Error = WidthError;

    fn try_from(raw: RawCertificate) -> Result<Self, Self::Error> {
        if raw.parameter == WidthParameter::Pathwidth && raw.decomposition.as_path().is_none() {
            return Err(DecompositionError::NotAPath.into());
        }
        if raw.value != raw.decomposition.width() {
            return Err(DecompositionError::WidthMismatch {
                stated: raw.value,
                actual: raw.decomposition.width(),
            }
            .into());
        }
        Ok(WidthCertificate {
            decomposition: raw.decomposition,
            exact: raw.exact,
            parameter: raw.parameter,
            value: raw.value,
        })
    }
}

impl WidthCertificate {
    pub fn new(parameter: WidthParameter, exact: bool, decomposition: TreeDecomposition) -> Self {
        WidthCertificate {
            value: decomposition.width(),
            decomposition,
            exact,
            parameter,
        }
    }

    pub fn path(&self) -> Option<PathDecomposition> {
        self.decomposition.as_path()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }
}
