use std::collections::VecDeque;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::FieldError;
use crate::field::grid::FieldGrid;
use crate::purcell::fmt_sig17;
use crate::scalar::Real;

/// Voxels with `|E_c|²` below this fraction of the grid maximum have no metric.
pub const EPSILON_FIELD: f64 = 1e-6;

/// Per-voxel overlap `|E_q · E_c*| / |E_c|²` and the candidate port regions.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlapMap<T> {
    pub dims: [usize; 3],
    pub spacing: [T; 3],
    pub origin: [T; 3],
    /// `None` for masked voxels and where the cavity field is too weak.
    pub metric: Vec<Option<T>>,
    /// `|E_c|²` per voxel (zero where masked).
    pub ec_sq: Vec<T>,
    pub candidate_regions: Vec<Region<T>>,
    /// Why the region list is empty, when it is.
    pub diagnostic: Option<String>,
}

/// A 6-connected set of candidate voxels.
#[derive(Debug, Clone, PartialEq)]
pub struct Region<T> {
    /// Voxel indices, ascending.
    pub voxels: Vec<usize>,
    /// Worst metric value inside the region for the ranking mode in use.
    pub score: T,
    pub mean_ec_sq: T,
    /// m.
    pub centroid: [T; 3],
    /// m³.
    pub volume: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMode {
    /// Weak qubit field under strong cavity field (default).
    #[default]
    Min,
    /// Literal maximization of the overlap.
    Max,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankOptions {
    /// Metric quantile gate (`≤ q0` in min mode, `≥ 1 − q0` in max mode).
    pub q0: f64,
    /// Cavity-intensity quantile gate (`|E_c|² ≥ q1`).
    pub q1: f64,
    pub mode: RankMode,
}

impl Default for RankOptions {
    fn default() -> Self {
        Self { q0: 0.05, q1: 0.5, mode: RankMode::Min }
    }
}

fn norm_sq<T: Real>(v: &[crate::scalar::Cx<T>; 3]) -> T {
    v.iter().map(|c| c.norm_sqr()).sum()
}

pub fn overlap_metric<T: Real>(g: &FieldGrid<T>) -> Result<OverlapMap<T>, FieldError> {
    let ec_sq: Vec<T> = g
        .e_cavity
        .par_iter()
        .zip(g.mask.par_iter())
        .map(|(e, &m)| if m { norm_sq(e) } else { T::zero() })
        .collect();
    let max = ec_sq.iter().copied().fold(T::zero(), T::max);
    let floor = T::lit(EPSILON_FIELD) * max;
    let metric: Vec<Option<T>> = (0..g.len())
        .into_par_iter()
        .map(|i| {
            if !g.mask[i] || !(ec_sq[i] > T::zero()) || ec_sq[i] < floor {
                return None;
            }
            let (q, c) = (&g.e_qubit[i], &g.e_cavity[i]);
            let dot = q[0] * c[0].conj() + q[1] * c[1].conj() + q[2] * c[2].conj();
            Some(dot.norm() / ec_sq[i])
        })
        .collect();
    if metric.iter().all(Option::is_none) {
        return Err(FieldError::Degenerate);
    }
    Ok(OverlapMap {
        dims: g.dims,
        spacing: g.spacing,
        origin: g.origin,
        metric,
        ec_sq,
        candidate_regions: Vec::new(),
        diagnostic: None,
    })
}

/// Linear-interpolated quantile of `v` (sorted in place).
pub fn quantile<T: Real>(v: &mut [T], q: f64) -> T {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let pos = q.clamp(0.0, 1.0) * (v.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let t = T::lit(pos - lo as f64);
    v[lo] + (v[hi] - v[lo]) * t
}

impl<T: Real> OverlapMap<T> {
    fn position(&self, idx: usize) -> [T; 3] {
        let [nx, ny, _] = self.dims;
        let c = [idx % nx, (idx / nx) % ny, idx / (nx * ny)];
        std::array::from_fn(|a| self.origin[a] + self.spacing[a] * T::from_count(c[a]))
    }

    fn neighbors(&self, idx: usize) -> impl Iterator<Item = usize> {
        let [nx, ny, nz] = self.dims;
        let (i, j, k) = (idx % nx, (idx / nx) % ny, idx / (nx * ny));
        let stride = [1, nx, nx * ny];
        let c = [i, j, k];
        let n = [nx, ny, nz];
        (0..3).flat_map(move |a| {
            let down = (c[a] > 0).then(|| idx - stride[a]);
            let up = (c[a] + 1 < n[a]).then(|| idx + stride[a]);
            down.into_iter().chain(up)
        })
    }

    /// Writes `x_m,y_m,z_m,metric,ec_sq,defined` per voxel; undefined metrics are left empty.
    pub fn write_metric_csv<W: Write>(&self, w: W) -> csv::Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["x_m", "y_m", "z_m", "metric", "ec_sq", "defined"])?;
        for (idx, m) in self.metric.iter().enumerate() {
            let p = self.position(idx);
            wtr.write_record([
                fmt_sig17(p[0].as_f64()),
                fmt_sig17(p[1].as_f64()),
                fmt_sig17(p[2].as_f64()),
                m.map(|v| fmt_sig17(v.as_f64())).unwrap_or_default(),
                fmt_sig17(self.ec_sq[idx].as_f64()),
                if m.is_some() { "1" } else { "0" }.to_owned(),
            ])?;
        }
        wtr.flush()?;
        Ok(())
    }
}

/// Gates voxels by metric and cavity-intensity quantiles, groups them into
/// 6-connected regions, drops regions below `min_volume` (m³) and ranks the
/// rest: by ascending worst-case metric in min mode (descending in max
/// mode), ties going to the larger mean `|E_c|²`.
pub fn rank_port_regions<T: Real>(mut m: OverlapMap<T>, min_volume: T, opts: &RankOptions) -> Result<OverlapMap<T>, FieldError> {
    for (name, q) in [("q0", opts.q0), ("q1", opts.q1)] {
        if !(0.0..=1.0).contains(&q) {
            return Err(FieldError::InvalidParameter(format!("{name} must lie in [0, 1], got {q}")));
        }
    }
    if !(min_volume >= T::zero()) {
        return Err(FieldError::InvalidParameter(format!("min_volume must be non-negative, got {min_volume}")));
    }
    let defined: Vec<usize> = (0..m.metric.len()).filter(|&i| m.metric[i].is_some()).collect();
    if defined.is_empty() {
        return Err(FieldError::Degenerate);
    }
    let mut mv: Vec<T> = defined.iter().map(|&i| m.metric[i].unwrap()).collect();
    let mut ev: Vec<T> = defined.iter().map(|&i| m.ec_sq[i]).collect();
    let metric_gate = match opts.mode {
        RankMode::Min => quantile(&mut mv, opts.q0),
        RankMode::Max => quantile(&mut mv, 1.0 - opts.q0),
    };
    let ec_gate = quantile(&mut ev, opts.q1);
    let candidate: Vec<bool> = m
        .metric
        .iter()
        .zip(&m.ec_sq)
        .map(|(v, &e)| match (v, opts.mode) {
            (Some(v), RankMode::Min) => *v <= metric_gate && e >= ec_gate,
            (Some(v), RankMode::Max) => *v >= metric_gate && e >= ec_gate,
            (None, _) => false,
        })
        .collect();

    let voxel_volume = m.spacing[0] * m.spacing[1] * m.spacing[2];
    let mut visited = vec![false; candidate.len()];
    let mut regions = Vec::new();
    let mut queue = VecDeque::new();
    let mut n_found = 0usize;
    for seed in 0..candidate.len() {
        if !candidate[seed] || visited[seed] {
            continue;
        }
        n_found += 1;
        visited[seed] = true;
        queue.push_back(seed);
        let mut voxels = Vec::new();
        while let Some(v) = queue.pop_front() {
            voxels.push(v);
            for nb in m.neighbors(v) {
                if candidate[nb] && !visited[nb] {
                    visited[nb] = true;
                    queue.push_back(nb);
                }
            }
        }
        let volume = voxel_volume * T::from_count(voxels.len());
        if volume < min_volume {
            continue;
        }
        voxels.sort_unstable();
        let count = T::from_count(voxels.len());
        let metrics = voxels.iter().map(|&v| m.metric[v].unwrap());
        let score = match opts.mode {
            RankMode::Min => metrics.fold(T::neg_infinity(), T::max),
            RankMode::Max => metrics.fold(T::infinity(), T::min),
        };
        let mean_ec_sq = voxels.iter().map(|&v| m.ec_sq[v]).sum::<T>() / count;
        let mut centroid = [T::zero(); 3];
        for &v in &voxels {
            let p = m.position(v);
            for a in 0..3 {
                centroid[a] = centroid[a] + p[a];
            }
        }
        regions.push(Region { voxels, score, mean_ec_sq, centroid: centroid.map(|c| c / count), volume });
    }
    regions.sort_by(|a, b| {
        let by_score = match opts.mode {
            RankMode::Min => a.score.partial_cmp(&b.score),
            RankMode::Max => b.score.partial_cmp(&a.score),
        };
        by_score
            .unwrap()
            .then(b.mean_ec_sq.partial_cmp(&a.mean_ec_sq).unwrap())
            .then(a.voxels[0].cmp(&b.voxels[0]))
    });
    let flat = mv.first().zip(mv.last()).is_some_and(|(lo, hi)| lo == hi);
    m.diagnostic = if regions.is_empty() {
        Some(if n_found == 0 {
            "no voxel passes both quantile gates".to_owned()
        } else {
            format!("{n_found} connected regions found, none reaches the minimum volume")
        })
    } else if flat {
        Some(format!("overlap metric is constant ({}) over all defined voxels; ranking follows cavity intensity only", mv[0]))
    } else {
        None
    };
    m.candidate_regions = regions;
    Ok(m)
}
