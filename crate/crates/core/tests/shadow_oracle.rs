mod common;

use interference::encoder::{encode_year, EncodingConfig, SculptureParams};
use interference::geometry::{pillar_mesh, GeometryConfig, RingRole};
use interference::mesh::rotate_about_z;
use interference::shadow_sim::{
    occlusion_intervals, simulate, write_frame_image, PixelClass, Scene, ShadowRenderer, SimOptions,
};
use interference_testkit::raycast::Occluder;

fn april_scene() -> Scene<f64> {
    let p = encode_year(&common::fixture(), &EncodingConfig::default()).unwrap()[3];
    Scene::new(p, GeometryConfig::default())
}

/// Fraction of pixels whose class matches a ray cast against the tessellated pillars.
fn mesh_agreement(scene: &Scene<f64>, t: f64, width: usize, height: usize) -> f64 {
    let r = ShadowRenderer::new(scene, width, height).unwrap();
    let frame = r.frame(t);
    let (inner, outer) = scene.pillars().unwrap();
    let rot = scene.rotation_at(t);
    let shells = |ps: &[interference::geometry::Pillar<f64>], deg: f64| -> Vec<_> {
        ps.iter().map(|p| common::soup(&rotate_about_z(&pillar_mesh(p, scene.cfg.segments_per_turn), deg))).collect()
    };
    let inner_occ = Occluder::new(&shells(&inner, rot));
    let outer_occ = Occluder::new(&shells(&outer, 0.0));
    let light = [0.0, 0.0, scene.light_height];
    let mut agree = 0;
    for (i, &z) in r.row_heights().iter().enumerate() {
        for j in 0..width {
            let th = r.column_azimuth(j);
            let p = [scene.screen_radius * th.cos(), scene.screen_radius * th.sin(), z];
            let expected = match (inner_occ.blocks(light, p), outer_occ.blocks(light, p)) {
                (false, false) => PixelClass::Lit,
                (true, false) => PixelClass::InnerShadow,
                (false, true) => PixelClass::OuterShadow,
                (true, true) => PixelClass::Both,
            };
            agree += (frame.get(i, j) == expected) as usize;
        }
    }
    agree as f64 / (width * height) as f64
}

#[test]
fn raster_matches_mesh_ray_cast() {
    let scene = april_scene();
    let agreement = mesh_agreement(&scene, 1.7, 512, 256);
    assert!(agreement >= 0.99, "{agreement}");
}

#[test]
fn raster_is_defined_by_intervals() {
    let scene = april_scene();
    let r = ShadowRenderer::new(&scene, 256, 64).unwrap();
    let t = 3.3;
    let frame = r.frame(t);
    let rot = scene.rotation_at(t);
    for (i, &z) in r.row_heights().iter().enumerate() {
        let inner = occlusion_intervals(&scene, RingRole::Inner, rot, z).unwrap();
        let outer = occlusion_intervals(&scene, RingRole::Outer, 0.0, z).unwrap();
        for j in 0..r.width() {
            let th = r.column_azimuth(j);
            let hit = |iv: &[(f64, f64)]| iv.iter().any(|&(a, b)| a <= th && th <= b);
            let class = match (hit(&inner), hit(&outer)) {
                (false, false) => PixelClass::Lit,
                (true, false) => PixelClass::InnerShadow,
                (false, true) => PixelClass::OuterShadow,
                (true, true) => PixelClass::Both,
            };
            assert_eq!(frame.get(i, j), class, "row {i} col {j}");
        }
    }
}

#[test]
fn six_straight_spokes_give_six_even_intervals() {
    let cfg = GeometryConfig { twisted_per_straight: 0, ..GeometryConfig::default() };
    let p = SculptureParams {
        month: 1,
        height: 5.0,
        inner_spoke_count: 6,
        inner_twist: 0.0,
        outer_spoke_count: 1,
        outer_twist: 0.0,
    };
    let scene = Scene::new(p, cfg);
    let (bottom, h) = scene.screen_extent().unwrap();
    let iv = occlusion_intervals(&scene, RingRole::Inner, 10.0, bottom + 0.6 * h).unwrap();
    assert_eq!(iv.len(), 6, "{iv:?}");
    let centers: Vec<f64> = iv.iter().map(|&(a, b)| 0.5 * (a + b)).collect();
    for k in 1..6 {
        assert!((centers[k] - centers[k - 1] - std::f64::consts::PI / 3.0).abs() < 1e-9);
        assert!(iv[k].0 > iv[k - 1].1);
    }
}

#[test]
fn shadow_bands_tilt_in_opposite_directions() {
    let p = SculptureParams {
        month: 1,
        height: 6.0,
        inner_spoke_count: 1,
        inner_twist: 90.0,
        outer_spoke_count: 1,
        outer_twist: -90.0,
    };
    let scene = Scene::new(p, GeometryConfig::default());
    let (bottom, h) = scene.screen_extent().unwrap();
    // the helical pillar starts at π; follow its band upward
    let track = |role: RingRole| {
        let mut prev = std::f64::consts::PI;
        let mut slope_sign = 0.0;
        for k in 0..40 {
            let z = bottom + h * (0.1 + 0.01 * k as f64);
            let iv = occlusion_intervals(&scene, role, 0.0, z).unwrap();
            let c = iv
                .iter()
                .map(|&(a, b)| 0.5 * (a + b))
                .min_by(|x, y| (x - prev).abs().total_cmp(&(y - prev).abs()))
                .unwrap();
            if k > 0 {
                let s = (c - prev).signum();
                assert!(slope_sign == 0.0 || s == slope_sign);
                slope_sign = s;
            }
            prev = c;
        }
        slope_sign
    };
    assert_eq!(track(RingRole::Inner), 1.0);
    assert_eq!(track(RingRole::Outer), -1.0);
}

#[test]
fn revolution_period_and_subsampling() {
    let scene = april_scene();
    let r = ShadowRenderer::new(&scene, 128, 64).unwrap();
    let bytes = |t: f64| {
        let mut b = Vec::new();
        write_frame_image(&r.frame(t), &mut b).unwrap();
        b
    };
    assert_eq!(bytes(0.0), bytes(12.0));

    let fine = SimOptions { duration: 4.0, dt: 0.1, width: 64, height: 32 };
    let coarse = SimOptions { dt: 0.2, ..fine };
    let a = simulate(&scene, &fine).unwrap();
    let b = simulate(&scene, &coarse).unwrap();
    assert_eq!(b.len(), 21);
    for k in 0..b.len() {
        assert_eq!(a.times[2 * k], b.times[k]);
        assert_eq!(a.overlap_fraction[2 * k], b.overlap_fraction[k]);
        assert_eq!(a.inner_coverage[2 * k], b.inner_coverage[k]);
    }
    for k in 0..a.len() {
        assert!(a.overlap_fraction[k] <= a.inner_coverage[k].min(a.outer_coverage[k]));
    }
}

#[test]
fn inner_ring_removed_means_no_overlap() {
    let mut scene = april_scene();
    scene.inner_pillar_width = Some(0.0);
    let s = simulate(&scene, &SimOptions { duration: 2.0, dt: 0.25, width: 96, height: 48 }).unwrap();
    assert!(s.overlap_fraction.iter().all(|&o| o == 0.0));
    assert!(s.inner_coverage.iter().all(|&o| o == 0.0));
    assert!(s.outer_coverage.iter().all(|&o| o > 0.0));
}

#[test]
fn pgm_histogram_matches_coverage() {
    let scene = april_scene();
    let f = ShadowRenderer::new(&scene, 100, 40).unwrap().frame(0.8);
    let mut b = Vec::new();
    let n = write_frame_image(&f, &mut b).unwrap();
    assert_eq!(n as usize, b.len());
    let header = b"P5 100 40 255\n";
    assert_eq!(&b[..header.len()], header);
    let mut hist = [0usize; 4];
    for &byte in &b[header.len()..] {
        let k = PixelClass::ALL.iter().position(|c| c.gray() == byte).unwrap();
        hist[k] += 1;
    }
    assert_eq!(hist, f.counts());
    assert_eq!(hist.iter().sum::<usize>(), 4000);
}
