mod common;

use interference::encoder::{encode_year, EncodingConfig};
use interference::geometry::{build_sculpture, GeometryConfig};
use interference::mesh::{rotate_about_z, validate_mesh, write_stl_binary, TriMesh, STL_HEADER_TAG};
use interference::Vec3;
use interference_testkit::stl;

fn april_upper() -> (TriMesh<f64>, TriMesh<f64>) {
    let params = encode_year(&common::fixture(), &EncodingConfig::default()).unwrap();
    let a = build_sculpture(&params[3], &GeometryConfig::default()).unwrap();
    (a.inner, a.outer)
}

#[test]
fn stl_round_trip_through_independent_reader() {
    let (inner, outer) = april_upper();
    let mut bytes = Vec::new();
    let n = write_stl_binary(&[inner.clone(), outer.clone()], 25.4, "april", &mut bytes).unwrap();
    assert_eq!(n as usize, bytes.len());
    let file = stl::parse(&bytes).unwrap();
    assert!(file.header.starts_with(STL_HEADER_TAG.as_bytes()));
    assert_eq!(file.facets.len(), inner.triangle_count() + outer.triangle_count());

    let expected: Vec<[f64; 3]> = [&inner, &outer]
        .iter()
        .flat_map(|m| (0..m.triangle_count()).flat_map(move |t| m.corners(t).map(|p| [p.x, p.y, p.z])))
        .collect();
    let read: Vec<[f64; 3]> = file.facets.iter().flat_map(|f| f.vertices.map(|v| v.map(|c| c as f64 / 25.4))).collect();
    assert_eq!(expected.len(), read.len());
    for (e, r) in expected.iter().zip(&read) {
        for k in 0..3 {
            // one f32 ulp at the millimetre value, taken back to inches
            let ulp = ((e[k] * 25.4) as f32).abs().max(f32::MIN_POSITIVE);
            let ulp = (f32::from_bits(ulp.to_bits() + 1) - ulp) as f64 / 25.4;
            assert!((e[k] - r[k]).abs() <= ulp + 1e-15, "{e:?} vs {r:?}");
        }
    }
    for f in &file.facets {
        assert_eq!(f.attribute, 0);
        let len = f.normal.iter().map(|c| c * c).sum::<f32>().sqrt();
        assert!((len - 1.0).abs() < 1e-5);
    }
}

#[test]
fn export_is_byte_deterministic() {
    let (inner, outer) = april_upper();
    let write = || {
        let mut b = Vec::new();
        write_stl_binary(&[inner.clone(), outer.clone()], 25.4, "run", &mut b).unwrap();
        b
    };
    assert_eq!(write(), write());
}

#[test]
fn audit_is_rigid_motion_invariant() {
    let (inner, _) = april_upper();
    let a = validate_mesh(&inner);
    for deg in [17.0, 90.0, 211.5] {
        let b = validate_mesh(&rotate_about_z(&inner, deg));
        assert_eq!(
            (a.watertight, a.shell_count, a.euler_characteristic),
            (b.watertight, b.shell_count, b.euler_characteristic)
        );
        assert_eq!(a.degenerate_count, b.degenerate_count);
        assert!((a.signed_volume - b.signed_volume).abs() < 1e-9);
    }
    let shifted = inner.translate(Vec3::new(0.5, -2.0, 1.0));
    assert!((validate_mesh(&shifted).signed_volume - a.signed_volume).abs() < 1e-9);
}
