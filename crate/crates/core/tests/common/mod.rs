#![allow(dead_code)]

use interference::data_model::{parse_dataset, YearDataset};
use interference::mesh::TriMesh;
use interference_testkit::Tri;

pub fn fixture() -> YearDataset {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/synth2024.csv");
    parse_dataset(&std::fs::read_to_string(path).expect("fixture readable")).expect("fixture valid")
}

pub fn soup(m: &TriMesh<f64>) -> Vec<Tri> {
    (0..m.triangle_count()).map(|t| m.corners(t).map(|p| [p.x, p.y, p.z])).collect()
}

use interference::data_model::{days_in_month, MonthlyRecord};
use proptest::prelude::*;

/// Twelve valid records for 2024 in month order, with at least one death and one injury.
pub fn records() -> impl Strategy<Value = Vec<MonthlyRecord>> {
    proptest::collection::vec((0u64..120, 1u64..200, 1u64..600, 0u32..=31), 12).prop_map(|rows| {
        rows.into_iter()
            .enumerate()
            .map(|(i, (shootings, killed, wounded, days))| {
                let month = i as u32 + 1;
                let dim = days_in_month(2024, month);
                let days_without_shooting = if shootings == 0 { dim } else { days.min(dim - 1) };
                MonthlyRecord { month, shootings, killed, wounded, days_without_shooting, days_in_month: dim }
            })
            .collect()
    })
}

pub fn dataset() -> impl Strategy<Value = YearDataset> {
    records().prop_map(|r| YearDataset::from_records(2024, &r).expect("generated records are valid"))
}
