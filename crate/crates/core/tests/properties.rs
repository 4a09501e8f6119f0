mod common;

use interference::data_model::{parse_dataset, parse_dataset_json, totals, YearDataset};
use interference::encoder::{
    encode_year, outer_twist, spoke_count, EncodingConfig, InnerTwistStrategy, SculptureParams,
};
use interference::geometry::GeometryConfig;
use interference::shadow_sim::{render_frame, Scene};
use proptest::prelude::*;

fn cfg() -> EncodingConfig<f64> {
    EncodingConfig::default()
}

proptest! {
    #[test]
    fn encoding_stays_in_range(ds in common::dataset(), minmax in any::<bool>()) {
        let strategy = if minmax { InnerTwistStrategy::MinMax } else { InnerTwistStrategy::Proportion };
        let cfg = EncodingConfig { inner_twist_strategy: strategy, ..cfg() };
        let agg = totals(&ds);
        prop_assume!(!minmax || agg.max_wounded > agg.min_wounded);
        let params = encode_year(&ds, &cfg).unwrap();
        prop_assert_eq!(params.len(), 12);
        for (p, r) in params.iter().zip(ds.records()) {
            prop_assert_eq!(p.month, r.month);
            prop_assert!((3.0..=8.0).contains(&p.height));
            prop_assert!((0.0..=180.0).contains(&p.inner_twist));
            prop_assert!((-180.0..=0.0).contains(&p.outer_twist));
            prop_assert!(p.inner_spoke_count >= 1 && p.outer_spoke_count >= 1);
        }
        if agg.max_killed > agg.min_killed {
            for (p, r) in params.iter().zip(ds.records()) {
                if r.killed == agg.max_killed { prop_assert_eq!(p.height, 8.0); }
                if r.killed == agg.min_killed { prop_assert_eq!(p.height, 3.0); }
            }
        }
    }

    #[test]
    fn height_is_monotone_in_deaths(ds in common::dataset()) {
        let params = encode_year(&ds, &cfg()).unwrap();
        let recs = ds.records();
        for i in 0..12 {
            for j in 0..12 {
                if recs[i].killed < recs[j].killed {
                    prop_assert!(params[i].height < params[j].height);
                } else if recs[i].killed == recs[j].killed {
                    prop_assert_eq!(params[i].height, params[j].height);
                }
            }
        }
    }

    #[test]
    fn death_shares_round_to_about_one_hundred(ds in common::dataset()) {
        let agg = totals(&ds);
        let raw: f64 = ds.records().iter().map(|r| 100.0 * r.killed as f64 / agg.total_killed as f64).sum();
        prop_assert!((raw - 100.0).abs() < 1e-9);
        let mut rounded = 0i64;
        for r in ds.records() {
            let n = spoke_count(r.killed, agg.total_killed, &cfg()).unwrap() as i64;
            // undo the floor clamp for shares that round to zero
            let clamped = 200 * r.killed < agg.total_killed;
            rounded += if clamped { 0 } else { n };
        }
        prop_assert!((rounded - 100).abs() <= 6, "{}", rounded);
    }

    #[test]
    fn spoke_count_is_scale_invariant(whole in 1u64..100_000, frac in 0.0f64..=1.0, k in 1u64..1000) {
        let part = (whole as f64 * frac).floor() as u64;
        prop_assert_eq!(spoke_count(part, whole, &cfg()).unwrap(), spoke_count(part * k, whole * k, &cfg()).unwrap());
    }

    #[test]
    fn outer_twist_is_linear(n in 28u64..=31, d in 0u64..=31) {
        prop_assume!(d <= n);
        let t: f64 = outer_twist(d, n).unwrap();
        prop_assert!((t + 180.0 * d as f64 / n as f64).abs() <= 1e-12);
    }

    #[test]
    fn csv_and_json_round_trip(ds in common::dataset()) {
        prop_assert_eq!(&parse_dataset(&ds.to_csv()).unwrap(), &ds);
        prop_assert_eq!(&parse_dataset_json(&ds.to_json()).unwrap(), &ds);
    }

    #[test]
    fn row_order_does_not_matter(recs in common::records().prop_shuffle()) {
        let ds = YearDataset::from_records(2024, &recs).unwrap();
        let mut sorted = recs.clone();
        sorted.sort_by_key(|r| r.month);
        let reference = YearDataset::from_records(2024, &sorted).unwrap();
        prop_assert_eq!(encode_year(&ds, &cfg()).unwrap(), encode_year(&reference, &cfg()).unwrap());
    }

    #[test]
    fn frame_classes_partition_the_screen(
        height in 3.0f64..=8.0,
        inner in 1u32..=12,
        outer in 1u32..=12,
        it in 0.0f64..=180.0,
        ot in -180.0f64..=0.0,
        t in 0.0f64..24.0,
        light in 0.0f64..1.0,
    ) {
        let p = SculptureParams { month: 1, height, inner_spoke_count: inner, inner_twist: it, outer_spoke_count: outer, outer_twist: ot };
        let mut scene = Scene::new(p, GeometryConfig::default());
        scene.light_height = light;
        let f = render_frame(&scene, t, 40, 20).unwrap();
        let c = f.counts();
        prop_assert_eq!(c.iter().sum::<usize>(), 800);
        let [lit, i, o, both] = f.coverage();
        prop_assert!((lit + i + o + both - 1.0).abs() < 1e-12);
        prop_assert!(both <= (i + both).min(o + both));
    }
}
