use schemars::JsonSchema;
use serde::{Deserialize, Serialize};
use transversal_lab::claims::{CriterionResult, Suite};
use transversal_lab::delta::SupportCell;
use transversal_lab::dilation::TransferCertificate;
use transversal_lab::search::SearchReport;
use transversal_lab::{Diagonal, GroupElement, Hypercube};

/// Summary of a hypercube written by `construct`, `extend`, `dilate` or
/// `quasi-extend`.
#[derive(Clone, Debug, Serialize, Deserialize, JsonSchema)]
pub struct HypercubeReport {
    pub instance: String,
    pub source: String,
    pub group: String,
    pub dim: usize,
    pub order: usize,
    pub latin: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

impl HypercubeReport {
    pub fn new(h: &Hypercube, source: String, path: Option<String>) -> Self {
        HypercubeReport {
            instance: transversal_lab::search::instance_id(h),
            source,
            group: h.group().to_string(),
            dim: h.dim(),
            order: h.order(),
            latin: h.latin_validated(),
            path,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, JsonSchema)]
pub struct DeltaReport {
    pub instance: String,
    pub group: String,
    pub dim: usize,
    pub order: usize,
    pub support: Vec<SupportCell>,
    /// `A_i`: values taken on axis `i` by support cells.
    pub projections: Vec<Vec<usize>>,
    pub projection_sizes: Vec<usize>,
    /// `(1-d) G_+` for the hypercube's own dimension.
    pub transversal_target: GroupElement,
    /// The support when the target is nonzero, so every transversal meets it.
    pub hitting_set: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, JsonSchema)]
pub struct LiftReport {
    pub base_instance: String,
    pub extension_instance: String,
    pub group: String,
    pub dprime: usize,
    pub diagonal: Diagonal,
    pub transversal: Diagonal,
}

#[derive(Clone, Debug, Serialize, Deserialize, JsonSchema)]
pub struct CertificateReport {
    pub instance: String,
    pub hitting_set: Vec<Vec<usize>>,
    pub certificate: TransferCertificate,
}

#[derive(Clone, Debug, Serialize, Deserialize, JsonSchema)]
pub struct ClaimsReport {
    pub suite: Suite,
    pub passed: bool,
    pub criteria: Vec<CriterionResult>,
}

/// Input accepted by `lift --diagonal`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum DiagonalInput {
    Report(Box<SearchReport>),
    Diagonal(Diagonal),
    Coords(Vec<Vec<usize>>),
}

pub const SCHEMA_KINDS: [&str; 6] = ["hypercube", "delta", "search", "lift", "certificate", "claims"];

pub fn schema(kind: &str) -> Option<schemars::schema::RootSchema> {
    Some(match kind {
        "hypercube" => schemars::schema_for!(HypercubeReport),
        "delta" => schemars::schema_for!(DeltaReport),
        "search" => schemars::schema_for!(SearchReport),
        "lift" => schemars::schema_for!(LiftReport),
        "certificate" => schemars::schema_for!(CertificateReport),
        "claims" => schemars::schema_for!(ClaimsReport),
        _ => return None,
    })
}
