use std::path::Path;

use purcellnet::circuits::{build_multi_mode, build_single_mode};
use purcellnet::field::{overlap_metric, rank_port_regions, read_grid_binary, read_grid_csv, RankMode, RankOptions, GRID_MAGIC};
use purcellnet::loss_budget::{extract_budget, ConfigId, LossBudget};
use purcellnet::purcell::{
    find_sweet_spots, frequency_sweep, port_position_sweep, strongest, SpotKind, SweepResult, SweetSpot,
};
use purcellnet::{AnalysisError, FieldError};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::measurement::parse_measurement;
use crate::netlist::{parse_netlist, Model, Netlist};
use crate::output::{num, Outputs};
use crate::{Format, Globals};

fn load_netlist(out: &mut Outputs, path: &Path) -> Result<Netlist, CliError> {
    let text = out.read_input_text(path)?;
    parse_netlist(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

/// Drops repeated positions (first occurrence wins), warning about each.
fn dedup_positions(fracs: &[f64]) -> Vec<f64> {
    let mut kept: Vec<f64> = Vec::new();
    for &f in fracs {
        if kept.iter().any(|&k| (k - f).abs() <= 1e-12) {
            eprintln!("warning: duplicate port position {f} ignored");
        } else {
            kept.push(f);
        }
    }
    kept
}

fn run_sweeps(n: &Netlist, points: usize, positions: Option<&[f64]>) -> Result<Vec<SweepResult<f64>>, CliError> {
    let s = &n.sweep;
    let tag = n.model.kind().tag();
    let single = |net, cq| -> Result<Vec<SweepResult<f64>>, CliError> {
        let mut r = frequency_sweep(&net, cq, s.f_start, s.f_stop, points, s.spacing)?;
        r.model_tag = tag.to_owned();
        Ok(vec![r])
    };
    match &n.model {
        Model::SingleMode(p) => single(build_single_mode(p)?, p.cq),
        Model::MultiMode(p) => single(build_multi_mode(p)?, p.cq),
        Model::Custom { tree, cq, .. } => single(tree.clone(), *cq),
        Model::Tline(p) => {
            let xs: Vec<f64> = match positions {
                Some(fr) => fr.iter().map(|f| f * p.line.length).collect(),
                None => vec![p.port_position],
            };
            let mut r = port_position_sweep(p, &xs, s.f_start, s.f_stop, points, s.spacing)?;
            r.iter_mut().for_each(|r| r.model_tag = tag.to_owned());
            Ok(r)
        }
    }
}

fn sweep_bytes(sweeps: &[SweepResult<f64>], format: Format) -> Vec<u8> {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            purcellnet::purcell::write_sweep_csv(sweeps, &mut buf).expect("in-memory CSV");
            buf
        }
        Format::Json => {
            let doc: Vec<Value> = sweeps
                .iter()
                .map(|s| {
                    json!({
                        "model_tag": s.model_tag,
                        "port_pos_m": s.port_position.map(num),
                        "freq_hz": s.freq_hz.iter().copied().map(num).collect::<Vec<_>>(),
                        "re_y_s": s.y_real.iter().copied().map(num).collect::<Vec<_>>(),
                        "im_y_s": s.y_imag.iter().copied().map(num).collect::<Vec<_>>(),
                        "t1_s": s.t1.iter().copied().map(num).collect::<Vec<_>>(),
                        "marker": s.marker.iter().map(|m| m.as_str()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let mut b = serde_json::to_vec_pretty(&json!({ "sweeps": doc })).expect("JSON values serialize");
            b.push(b'\n');
            b
        }
    }
}

fn spot_json(s: &SweetSpot<f64>) -> Value {
    json!({
        "frequency_hz": num(s.frequency),
        "t1_peak_s": num(s.t1_peak),
        "kind": s.kind,
        "neighborhood_width_hz": num(s.neighborhood_width),
        "prominence": num(s.prominence),
    })
}

fn ext(format: Format) -> &'static str {
    match format {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

fn fmt_t1(t: f64) -> String {
    if t.is_infinite() {
        "open".into()
    } else {
        format!("{:.4e} s", t)
    }
}

pub fn simulate(g: &Globals, netlist: &Path) -> Result<(), CliError> {
    let mut out = Outputs::new(&g.out_dir)?;
    let n = load_netlist(&mut out, netlist)?;
    if let Model::SingleMode(p) = &n.model {
        p.validity_warnings().iter().for_each(|w| eprintln!("warning: {w}"));
    }
    let positions = n.positions_frac.as_deref().map(dedup_positions);
    let points = n.sweep.points(g.points);
    let sweeps = run_sweeps(&n, points, positions.as_deref())?;
    out.write(&format!("sweep.{}", ext(g.format)), &sweep_bytes(&sweeps, g.format))?;

    let f1 = n.model.fundamental();
    let mut entries = Vec::new();
    for (k, s) in sweeps.iter().enumerate() {
        let frac = positions.as_ref().map(|p| p[k]);
        let (spots, note) = match f1 {
            None => (Vec::new(), Some("model defines no fundamental; sweet spots not classified".to_owned())),
            Some(f1) => match find_sweet_spots(s, f1) {
                Ok(v) => (v, None),
                Err(e @ (AnalysisError::Coverage { .. } | AnalysisError::Resolution { .. })) => {
                    eprintln!("warning: sweet-spot search skipped: {e}");
                    (Vec::new(), Some(e.to_string()))
                }
                Err(e) => return Err(e.into()),
            },
        };
        for sp in &spots {
            println!(
                "{:>18} spot at {:.6} GHz, T1 {}, prominence {:.3e}",
                format!("{:?}", sp.kind),
                sp.frequency / 1e9,
                fmt_t1(sp.t1_peak),
                sp.prominence
            );
        }
        entries.push(json!({
            "port_pos_m": s.port_position.map(num),
            "port_pos_frac": frac,
            "spots": spots.iter().map(spot_json).collect::<Vec<_>>(),
            "note": note,
        }));
    }
    out.write_json(
        "sweet_spots.json",
        &json!({ "model": n.model.kind().tag(), "fundamental_hz": f1.map(num), "sweeps": entries }),
    )?;
    println!("{} sweep(s) x {points} points written to {}", sweeps.len(), g.out_dir.display());
    out.finish(
        "simulate",
        json!({ "points": points, "format": ext(g.format), "spacing": n.sweep.spacing }),
        g.seed,
    )
}

pub fn sweep_port(g: &Globals, netlist: &Path) -> Result<(), CliError> {
    let mut out = Outputs::new(&g.out_dir)?;
    let n = load_netlist(&mut out, netlist)?;
    let Model::Tline(p) = &n.model else {
        return Err(CliError::Validation(format!("sweep-port needs model \"tline\", got \"{}\"", n.model.kind().tag())));
    };
    let fracs = match n.positions_frac.as_deref() {
        Some(f) if !f.is_empty() => dedup_positions(f),
        _ => return Err(CliError::Validation("sweep-port needs a non-empty \"positions_frac\"".into())),
    };
    let points = n.sweep.points(g.points);
    let sweeps = run_sweeps(&n, points, Some(&fracs))?;
    let f1 = p.fundamental();
    let mut rows = Vec::new();
    for (k, s) in sweeps.iter().enumerate() {
        let name = format!("sweep_port_{k:03}.{}", ext(g.format));
        out.write(&name, &sweep_bytes(std::slice::from_ref(s), g.format))?;
        let spots = find_sweet_spots(s, f1)?;
        let best = strongest(&spots, SpotKind::BelowFundamental);
        let config = if best.is_some() { "wispe" } else { "anti_wispe" };
        println!(
            "position {:.4} ({:.4} mm): {}",
            fracs[k],
            s.port_position.unwrap_or(0.0) * 1e3,
            match &best {
                Some(b) => format!("spot at {:.6} GHz, T1 {}", b.frequency / 1e9, fmt_t1(b.t1_peak)),
                None => "no spot below the fundamental (anti-WISPE)".into(),
            }
        );
        rows.push(json!({
            "index": k,
            "port_pos_frac": fracs[k],
            "port_pos_m": s.port_position.map(num),
            "spot_frequency_hz": best.map(|b| num(b.frequency)),
            "spot_t1_s": best.map(|b| num(b.t1_peak)),
            "spot_prominence": best.map(|b| num(b.prominence)),
            "config": config,
            "inter_mode_spots": spots.iter().filter(|s| s.kind == SpotKind::InterMode).map(spot_json).collect::<Vec<_>>(),
            "file": name,
        }));
    }
    out.write(&format!("sweep_port_long.{}", ext(g.format)), &sweep_bytes(&sweeps, g.format))?;
    out.write_json(
        "port_summary.json",
        &json!({ "fundamental_hz": num(f1), "line_length_m": num(p.line.length), "positions": rows }),
    )?;
    out.finish(
        "sweep-port",
        json!({ "points": points, "format": ext(g.format), "spacing": n.sweep.spacing, "positions_frac": fracs }),
        g.seed,
    )
}

fn budget_rows(b: &LossBudget<f64>) -> Vec<(&'static str, f64, &'static str)> {
    vec![
        ("gamma_int", b.gamma_int, "1/s"),
        ("gamma_d", b.gamma_d, "1/s"),
        ("gamma_r_wispe", b.gamma_r_wispe, "1/s"),
        ("gamma_r_anti_wispe", b.gamma_r_anti_wispe, "1/s"),
        ("purcell_limit_wispe", b.purcell_limit_wispe, "s"),
        ("internal_limit", b.internal_limit(), "s"),
        ("drive_limit", b.drive_limit(), "s"),
        ("t1_wispe", b.t1_wispe(), "s"),
        ("t1_anti_wispe", b.t1_anti_wispe(), "s"),
    ]
}

fn print_budget_table(b: &LossBudget<f64>) {
    let life = |rate: f64| if rate > 0.0 { format!("{:>12.4e} s", rate.recip()) } else { format!("{:>14}", "unbounded") };
    println!("{:<22}{:>16}{:>16}{:>16}{:>16}", "channel", "anti-WISPE 1/s", "T1 limit", "WISPE 1/s", "T1 limit");
    let row = |name: &str, aw: f64, w: f64| {
        println!("{:<22}{:>16.4e}{:>16}{:>16.4e}{:>16}", name, aw, life(aw), w, life(w));
    };
    row("internal", 0.0, b.gamma_int);
    row("qubit (drive) port", b.gamma_d, b.gamma_d);
    row("readout port", b.gamma_r_anti_wispe, b.gamma_r_wispe);
    row(
        "total",
        b.gamma_d + b.gamma_r_anti_wispe,
        b.gamma_int + b.gamma_d + b.gamma_r_wispe,
    );
    if b.gamma_int_clamped {
        println!("note: a slightly negative internal rate was clamped to zero");
    }
}

pub fn loss_budget(g: &Globals, wispe: &Path, anti_wispe: &Path) -> Result<(), CliError> {
    let mut out = Outputs::new(&g.out_dir)?;
    let read = |out: &mut Outputs, path: &Path, c: ConfigId| -> Result<_, CliError> {
        let text = out.read_input_text(path)?;
        parse_measurement(&text, c).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    };
    let aw = read(&mut out, anti_wispe, ConfigId::AntiWispe)?;
    let w = read(&mut out, wispe, ConfigId::Wispe)?;
    let b = extract_budget(&aw, &w)?;
    match g.format {
        Format::Json => {
            let mut doc = serde_json::Map::new();
            for (name, v, unit) in budget_rows(&b) {
                let key = if unit == "s" { format!("{name}_s") } else { format!("{name}_per_s") };
                doc.insert(key, num(v));
            }
            doc.insert("power_ratio_anti_wispe".into(), num(aw.power_ratio()));
            doc.insert("power_ratio_wispe".into(), num(w.power_ratio()));
            doc.insert("gamma_int_clamped".into(), json!(b.gamma_int_clamped));
            out.write_json("budget.json", &Value::Object(doc))?;
        }
        Format::Csv => {
            let mut s = String::from("quantity,value,unit\n");
            for (name, v, unit) in budget_rows(&b) {
                s.push_str(&format!("{name},{},{unit}\n", purcellnet::purcell::fmt_sig17(v)));
            }
            s.push_str(&format!("gamma_int_clamped,{},\n", b.gamma_int_clamped as u8));
            out.write("budget.csv", s.as_bytes())?;
        }
    }
    print_budget_table(&b);
    out.finish("loss-budget", json!({ "format": ext(g.format) }), g.seed)
}

pub struct OverlapArgs {
    pub mode: RankMode,
    pub q0: f64,
    pub q1: f64,
    pub min_volume_mm3: f64,
}

pub fn field_overlap(g: &Globals, grid: &Path, a: &OverlapArgs) -> Result<(), CliError> {
    let mut out = Outputs::new(&g.out_dir)?;
    let bytes = out.read_input(grid)?;
    let fg = if bytes.starts_with(GRID_MAGIC) { read_grid_binary(&bytes[..]) } else { read_grid_csv(&bytes[..]) }
        .map_err(|e| match e {
            FieldError::Degenerate => CliError::from(e),
            e => CliError::Validation(format!("{}: {e}", grid.display())),
        })?;
    let opts = RankOptions { q0: a.q0, q1: a.q1, mode: a.mode };
    let min_volume = a.min_volume_mm3 * 1e-9;
    let map = rank_port_regions(overlap_metric(&fg)?, min_volume, &opts)?;
    match g.format {
        Format::Csv => {
            let mut buf = Vec::new();
            map.write_metric_csv(&mut buf).expect("in-memory CSV");
            out.write("metric.csv", &buf)?;
        }
        Format::Json => {
            let voxels: Vec<Value> = (0..map.metric.len())
                .map(|i| {
                    let [x, y, z] = fg.position(i);
                    json!({ "pos_m": [x, y, z], "metric": map.metric[i].map(num), "ec_sq": num(map.ec_sq[i]) })
                })
                .collect();
            out.write_json("metric.json", &json!({ "dims": map.dims, "voxels": voxels }))?;
        }
    }
    let regions: Vec<Value> = map
        .candidate_regions
        .iter()
        .enumerate()
        .map(|(k, r)| {
            json!({
                "rank": k + 1,
                "score": num(r.score),
                "mean_ec_sq": num(r.mean_ec_sq),
                "centroid_m": r.centroid.map(num),
                "volume_m3": num(r.volume),
                "n_voxels": r.voxels.len(),
            })
        })
        .collect();
    let defined = map.metric.iter().filter(|m| m.is_some()).count();
    out.write_json(
        "regions.json",
        &json!({
            "mode": a.mode,
            "q0": a.q0,
            "q1": a.q1,
            "min_volume_m3": min_volume,
            "dims": map.dims,
            "defined_voxels": defined,
            "diagnostic": map.diagnostic,
            "regions": regions,
        }),
    )?;
    if let Some(d) = &map.diagnostic {
        eprintln!("note: {d}");
    }
    for (k, r) in map.candidate_regions.iter().take(5).enumerate() {
        let c = r.centroid;
        println!(
            "#{:<2} score {:.4e}  centroid ({:.3}, {:.3}, {:.3}) mm  volume {:.4e} mm^3  {} voxels",
            k + 1,
            r.score,
            c[0] * 1e3,
            c[1] * 1e3,
            c[2] * 1e3,
            r.volume * 1e9,
            r.voxels.len()
        );
    }
    out.finish(
        "field-overlap",
        json!({ "format": ext(g.format), "mode": a.mode, "q0": a.q0, "q1": a.q1, "min_volume_m3": min_volume }),
        g.seed,
    )
}
