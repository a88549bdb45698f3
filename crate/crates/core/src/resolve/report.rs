use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// A homological dimension: exact, bounded below after the step cap ran out,
/// or the zero object (dimension `-∞`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dim {
    Exact(i32),
    AtLeast(usize),
    ZeroObject,
}

impl Dim {
    pub fn is_exact(&self) -> bool {
        !matches!(self, Dim::AtLeast(_))
    }

    pub fn exact(&self) -> Option<i32> {
        match self {
            Dim::Exact(d) => Some(*d),
            _ => None,
        }
    }

    /// Supremum of two dimensions; a lower bound wins unless the exact value exceeds it.
    pub fn max(self, other: Dim) -> Dim {
        match (self, other) {
            (Dim::ZeroObject, x) | (x, Dim::ZeroObject) => x,
            (Dim::Exact(a), Dim::Exact(b)) => Dim::Exact(a.max(b)),
            (Dim::AtLeast(a), Dim::AtLeast(b)) => Dim::AtLeast(a.max(b)),
            (Dim::AtLeast(a), Dim::Exact(b)) | (Dim::Exact(b), Dim::AtLeast(a)) => {
                Dim::AtLeast(a.max(b.max(0) as usize))
            }
        }
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dim::Exact(d) => write!(f, "{d}"),
            Dim::AtLeast(n) => write!(f, ">= {n}"),
            Dim::ZeroObject => write!(f, "-inf"),
        }
    }
}

impl Serialize for Dim {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(1))?;
        match self {
            Dim::Exact(d) => m.serialize_entry("exact", d)?,
            Dim::AtLeast(n) => m.serialize_entry("at_least", n)?,
            Dim::ZeroObject => m.serialize_entry("exact", "-inf")?,
        }
        m.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DimKind {
    Projective,
    Injective,
    Flat,
}

/// One stage `M_i` of a resolution as seen by the dimension search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageSummary {
    pub index: usize,
    /// `sup` for projective and flat searches, `inf` for injective ones.
    pub anchor: Option<i32>,
    pub total_dim: usize,
    pub cohomology: Vec<(i32, usize)>,
    pub member: bool,
    /// generators added at this stage (absent on the terminal one)
    pub generators: Option<usize>,
    pub free_minimal: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DimensionReport {
    pub kind: DimKind,
    pub status: Dim,
    pub stages: Vec<StageSummary>,
    /// stage `e` at which the search stopped
    pub terminal_stage: Option<usize>,
    /// `sup M` (or `inf M`) and the same for the terminal stage
    pub anchor: Option<i32>,
    pub terminal_anchor: Option<i32>,
    /// `cap + sup M - sup M_cap` when the cap ran out, a sharper valid bound
    pub lower_bound: Option<i64>,
    pub transcript: Vec<String>,
}

impl DimensionReport {
    pub fn anchors(&self) -> Vec<Option<i32>> {
        self.stages.iter().map(|s| s.anchor).collect()
    }
}
