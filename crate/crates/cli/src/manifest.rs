use interference::encoder::EncodingConfig;
use interference::geometry::GeometryConfig;
use interference::mesh::MeshAudit;
use interference::Params;
use serde::{Deserialize, Serialize};

pub const MANIFEST_NAME: &str = "manifest.json";

/// Everything needed to reproduce and verify one `generate` run. Contains no
/// paths or timestamps so reruns are byte-identical.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub generator: String,
    pub dataset_year: i32,
    pub dataset_sha256: String,
    pub seed_note: Option<String>,
    pub encoding: EncodingConfig<f64>,
    pub geometry: GeometryConfig<f64>,
    pub months: Vec<MonthEntry>,
    pub failures: Vec<MonthFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonthEntry {
    pub month: u32,
    pub params: Params,
    pub files: Vec<FileEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileEntry {
    pub name: String,
    pub bytes: u64,
    pub sha256: String,
    pub triangles: u64,
    pub parts: Vec<PartAudit>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartAudit {
    pub part: String,
    pub audit: MeshAudit,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonthFailure {
    pub month: u32,
    pub error: String,
}
