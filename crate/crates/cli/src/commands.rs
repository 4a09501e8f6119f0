use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use interference::data_model::{
    parse_dataset, parse_dataset_json, totals, validate_against_anchors, Anchors, YearDataset,
};
use interference::encoder::{encode_year, inner_twist_strategy_sweep, EncodingConfig};
use interference::geometry::build_sculpture;
use interference::mesh::{validate_mesh, write_stl_binary, MeshAudit, MeshError, TriMesh};
use interference::shadow_sim::{simulate_with, write_frame_image, ShadowError};
use interference::Params;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::RunConfig;
use crate::manifest::{FileEntry, Manifest, MonthEntry, MonthFailure, PartAudit, MANIFEST_NAME};
use crate::output::{io_failure, sha256_hex, write_atomic, write_dir_atomic, Staged};
use crate::Failure;

const MM_PER_INCH: f64 = 25.4;

struct Loaded {
    dataset: YearDataset,
    sha256: String,
}

fn load_dataset(path: &Path) -> Result<Loaded, Failure> {
    let bytes = fs::read(path).map_err(|e| io_failure(path, e))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
    let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let parsed = if is_json { parse_dataset_json(text) } else { parse_dataset(text) };
    let dataset = parsed.map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
    Ok(Loaded { dataset, sha256: sha256_hex(&bytes) })
}

fn encode_params(cfg: &RunConfig, ds: &YearDataset) -> Result<Vec<Params>, Failure> {
    encode_year(ds, &cfg.encoding).map_err(|e| Failure::validation(e.to_string()))
}

pub fn validate(cfg: &RunConfig, anchors: Option<Anchors>) -> Result<(), Failure> {
    let ds = load_dataset(cfg.dataset()?)?.dataset;
    let agg = totals(&ds);
    println!("dataset {}: 12 months valid", ds.year());
    println!("totals: shootings {}, killed {}, wounded {}", agg.total_shootings, agg.total_killed, agg.total_wounded);
    let Some(anchors) = anchors else { return Ok(()) };
    let report = validate_against_anchors(&ds, &anchors);
    for c in &report.checks {
        let verdict = if c.matched { "ok" } else { "MISMATCH" };
        println!("anchor {}: expected {}, found {} ({verdict})", c.field, c.expected, c.actual);
    }
    if report.all_matched() {
        println!("anchors matched");
        Ok(())
    } else {
        let fields: Vec<&str> = report.mismatches().map(|c| c.field.as_str()).collect();
        Err(Failure::validation(format!("anchors did not match: {}", fields.join(", "))))
    }
}

pub struct Sweep {
    pub month: u32,
    pub target: f64,
    pub tolerance: f64,
}

#[derive(Serialize)]
struct ReportEntry<'a> {
    #[serde(flatten)]
    params: &'a Params,
    config: &'a EncodingConfig<f64>,
}

pub fn encode(cfg: &RunConfig, sweep: Option<Sweep>) -> Result<(), Failure> {
    let ds = load_dataset(cfg.dataset()?)?.dataset;
    let params = encode_params(cfg, &ds)?;
    let entries: Vec<ReportEntry> = params.iter().map(|p| ReportEntry { params: p, config: &cfg.encoding }).collect();
    let mut json = serde_json::to_string_pretty(&entries).map_err(|e| Failure::io(e.to_string()))?;
    json.push('\n');
    match &cfg.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| io_failure(dir, e))?;
            let path = dir.join("encoding.json");
            write_atomic(&path, json.as_bytes())?;
            println!("wrote {}", path.display());
        }
        None => print!("{json}"),
    }
    if let Some(s) = sweep {
        if !(1..=12).contains(&s.month) {
            return Err(Failure::validation(format!("sweep month {} outside 1..12", s.month)));
        }
        eprintln!("sweep: month {:02}, target inner twist {} +/- {} deg", s.month, s.target, s.tolerance);
        let trials = inner_twist_strategy_sweep(&ds, &cfg.encoding, s.month, s.target, s.tolerance);
        for t in &trials {
            match t.inner_twist {
                Some(v) => eprintln!(
                    "sweep: {} gives {v:.3} deg ({})",
                    t.strategy,
                    if t.matches_target { "matches" } else { "no match" }
                ),
                None => eprintln!("sweep: {} is undefined for this dataset", t.strategy),
            }
        }
        let hits: Vec<String> = trials.iter().filter(|t| t.matches_target).map(|t| t.strategy.to_string()).collect();
        if hits.is_empty() {
            eprintln!("sweep: neither strategy reproduces the target");
        } else {
            eprintln!("sweep: reproduced by {}", hits.join(" and "));
        }
    }
    Ok(())
}

fn audit_part(month: u32, part: &str, mesh: &TriMesh<f64>) -> Result<PartAudit, Failure> {
    let audit = validate_mesh(mesh);
    if let Some(defect) = defect(&audit) {
        return Err(Failure::geometry(format!("month {month:02} {part}: {defect}")));
    }
    Ok(PartAudit { part: part.into(), audit })
}

fn defect(a: &MeshAudit) -> Option<String> {
    if !a.watertight {
        Some(format!("not watertight ({} boundary, {} non-manifold edges)", a.boundary_edges, a.nonmanifold_edges))
    } else if !a.consistent_winding {
        Some("inconsistent winding".into())
    } else if a.degenerate_count > 0 {
        Some(format!("{} degenerate triangles", a.degenerate_count))
    } else if !(a.min_shell_volume > 0.0) {
        Some("inside-out shell".into())
    } else {
        None
    }
}

fn stl_bytes(shells: &[TriMesh<f64>], note: &str) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    write_stl_binary(shells, MM_PER_INCH, note, &mut buf).map_err(|e| match e {
        MeshError::Io(e) => Failure::io(e.to_string()),
        other => Failure::geometry(other.to_string()),
    })?;
    Ok(buf)
}

fn generate_month(cfg: &RunConfig, params: &Params, out: &Path) -> Result<MonthEntry, Failure> {
    let m = params.month;
    let asm = build_sculpture(params, &cfg.geometry).map_err(|e| Failure::geometry(format!("month {m:02}: {e}")))?;
    let note = |part: &str| match &cfg.seed_note {
        Some(s) => format!("{m:02} {part} {s}"),
        None => format!("{m:02} {part}"),
    };
    let files = [
        (format!("{m:02}_upper.stl"), "upper", vec![("inner", &asm.inner), ("outer", &asm.outer)]),
        (format!("{m:02}_base.stl"), "base", vec![("base", &asm.base)]),
    ];
    let mut staged = Staged::default();
    let mut entries = Vec::new();
    for (name, label, parts) in files {
        let audits = parts.iter().map(|(p, mesh)| audit_part(m, p, mesh)).collect::<Result<Vec<_>, _>>()?;
        let shells: Vec<TriMesh<f64>> = parts.iter().map(|(_, mesh)| (*mesh).clone()).collect();
        let bytes = stl_bytes(&shells, &note(label))?;
        staged.stage(&out.join(&name), &bytes)?;
        entries.push(FileEntry {
            name,
            bytes: bytes.len() as u64,
            sha256: sha256_hex(&bytes),
            triangles: shells.iter().map(|s| s.triangle_count() as u64).sum(),
            parts: audits,
        });
    }
    staged.commit()?;
    Ok(MonthEntry { month: m, params: *params, files: entries })
}

pub fn generate(cfg: &RunConfig) -> Result<(), Failure> {
    let loaded = load_dataset(cfg.dataset()?)?;
    let params = encode_params(cfg, &loaded.dataset)?;
    let out = cfg.out();
    fs::create_dir_all(&out).map_err(|e| io_failure(&out, e))?;
    let months = cfg.selected_months();
    let results: Vec<(u32, Result<MonthEntry, Failure>)> =
        months.par_iter().map(|&m| (m, generate_month(cfg, &params[m as usize - 1], &out))).collect();

    let mut manifest = Manifest {
        generator: concat!("interference ", env!("CARGO_PKG_VERSION")).into(),
        dataset_year: loaded.dataset.year(),
        dataset_sha256: loaded.sha256,
        seed_note: cfg.seed_note.clone(),
        encoding: cfg.encoding,
        geometry: cfg.geometry,
        months: Vec::new(),
        failures: Vec::new(),
    };
    let mut worst: Option<Failure> = None;
    for (m, r) in results {
        match r {
            Ok(entry) => {
                for f in &entry.files {
                    println!(
                        "{m:02} {:<14} {:>9} bytes {:>7} triangles sha256 {}",
                        f.name, f.bytes, f.triangles, f.sha256
                    );
                }
                manifest.months.push(entry);
            }
            Err(e) => {
                eprintln!("{m:02} failed: {e}");
                manifest.failures.push(MonthFailure { month: m, error: e.message.clone() });
                if worst.as_ref().is_none_or(|w| e.code > w.code) {
                    worst = Some(e);
                }
            }
        }
    }
    let mut json = serde_json::to_vec_pretty(&manifest).map_err(|e| Failure::io(e.to_string()))?;
    json.push(b'\n');
    let path = out.join(MANIFEST_NAME);
    write_atomic(&path, &json)?;
    println!("wrote {}", path.display());
    match worst {
        Some(w) => Err(Failure {
            code: w.code,
            message: format!("{} of {} months failed; first: {w}", manifest.failures.len(), months.len()),
        }),
        None => Ok(()),
    }
}

fn shadow_failure(e: ShadowError) -> Failure {
    match e {
        ShadowError::Io(e) => Failure::io(e.to_string()),
        ShadowError::Geometry(e) => Failure::geometry(e.to_string()),
        other => Failure::validation(other.to_string()),
    }
}

pub fn simulate(cfg: &RunConfig, month: u32) -> Result<(), Failure> {
    if !(1..=12).contains(&month) {
        return Err(Failure::validation(format!("month {month} outside 1..12")));
    }
    if !cfg.selected_months().contains(&month) {
        return Err(Failure::validation(format!("month {month} is excluded by the month filter")));
    }
    let ds = load_dataset(cfg.dataset()?)?.dataset;
    let params = encode_params(cfg, &ds)?[month as usize - 1];
    let scene = cfg.scene(params);
    scene.validate().map_err(shadow_failure)?;
    let opts = cfg.sim_options();
    let out = cfg.out();
    fs::create_dir_all(&out).map_err(|e| io_failure(&out, e))?;
    let dir = out.join(format!("{month:02}_shadow"));
    let mut series = None;
    write_dir_atomic(&dir, |tmp| {
        let s = simulate_with(&scene, &opts, |k, frame| {
            let mut w = BufWriter::new(File::create(tmp.join(format!("frame_{k:04}.pgm")))?);
            write_frame_image(frame, &mut w)?;
            w.flush()
        })
        .map_err(shadow_failure)?;
        let path = tmp.join("metrics.csv");
        let mut csv = Vec::new();
        s.write_csv(&mut csv).map_err(|e| io_failure(&path, e))?;
        fs::write(&path, csv).map_err(|e| io_failure(&path, e))?;
        series = Some(s);
        Ok(())
    })?;
    let s = series.expect("filled on success");
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    println!(
        "{month:02}: {} frames {}x{} in {}; mean coverage inner {:.4}, outer {:.4}, overlap {:.4}",
        s.len(),
        opts.width,
        opts.height,
        dir.display(),
        mean(&s.inner_coverage),
        mean(&s.outer_coverage),
        mean(&s.overlap_fraction)
    );
    Ok(())
}

pub fn report(path: &Path) -> Result<(), Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    let m: Manifest =
        serde_json::from_str(&text).map_err(|e| Failure::validation(format!("{}: {e}", path.display())))?;
    println!(
        "{} | dataset {} (sha256 {})",
        m.generator,
        m.dataset_year,
        &m.dataset_sha256[..m.dataset_sha256.len().min(12)]
    );
    println!("inner twist strategy: {}", m.encoding.inner_twist_strategy);
    if let Some(note) = &m.seed_note {
        println!("seed note: {note}");
    }
    println!("month  height  inner  in.twist  outer  out.twist  upper tris  base tris  printable");
    for e in &m.months {
        let p = &e.params;
        let tris = |suffix: &str| e.files.iter().find(|f| f.name.ends_with(suffix)).map_or(0, |f| f.triangles);
        let printable = e.files.iter().flat_map(|f| &f.parts).all(|p| p.audit.printable());
        println!(
            "{:>5}  {:>6.3}  {:>5}  {:>8.2}  {:>5}  {:>9.2}  {:>10}  {:>9}  {}",
            e.month,
            p.height,
            p.inner_spoke_count,
            p.inner_twist,
            p.outer_spoke_count,
            p.outer_twist,
            tris("_upper.stl"),
            tris("_base.stl"),
            if printable { "yes" } else { "NO" }
        );
    }
    for f in &m.failures {
        println!("{:>5}  failed: {}", f.month, f.error);
    }
    let bytes: u64 = m.months.iter().flat_map(|e| &e.files).map(|f| f.bytes).sum();
    println!(
        "{} months, {} files, {bytes} bytes",
        m.months.len(),
        m.months.iter().map(|e| e.files.len()).sum::<usize>()
    );
    Ok(())
}
