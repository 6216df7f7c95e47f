use std::io::{Read, Write};

use crate::error::FieldError;
use crate::purcell::fmt_sig17;
use crate::scalar::{cx, Cx, Real};

/// Complex 3-vector field sample.
pub type Vec3<T> = [Cx<T>; 3];

/// Two co-registered complex vector fields on a rectilinear lattice,
/// stored x-fastest (`i + nx·(j + ny·k)`).
#[derive(Debug, Clone, PartialEq)]
pub struct FieldGrid<T> {
    pub dims: [usize; 3],
    /// Lattice pitch per axis, m.
    pub spacing: [T; 3],
    /// Position of voxel (0, 0, 0), m.
    pub origin: [T; 3],
    pub e_qubit: Vec<Vec3<T>>,
    pub e_cavity: Vec<Vec3<T>>,
    /// `true` for voxels inside the vacuum region.
    pub mask: Vec<bool>,
}

impl<T: Real> FieldGrid<T> {
    pub fn new(
        dims: [usize; 3],
        spacing: [T; 3],
        origin: [T; 3],
        e_qubit: Vec<Vec3<T>>,
        e_cavity: Vec<Vec3<T>>,
        mask: Vec<bool>,
    ) -> Result<Self, FieldError> {
        let n = dims.iter().product::<usize>();
        if n == 0 {
            return Err(FieldError::Ingestion("grid has no voxels".into()));
        }
        if e_qubit.len() != n || e_cavity.len() != n || mask.len() != n {
            return Err(FieldError::Ingestion(format!(
                "field lengths ({}, {}, mask {}) do not match {}x{}x{} grid",
                e_qubit.len(),
                e_cavity.len(),
                mask.len(),
                dims[0],
                dims[1],
                dims[2]
            )));
        }
        if spacing.iter().any(|&h| !(h.is_finite() && h > T::zero())) || origin.iter().any(|o| !o.is_finite()) {
            return Err(FieldError::Ingestion("spacing must be positive and origin finite".into()));
        }
        Ok(Self { dims, spacing, origin, e_qubit, e_cavity, mask })
    }

    pub fn len(&self) -> usize {
        self.mask.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_empty()
    }

    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.dims[0] * (j + self.dims[1] * k)
    }

    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let [nx, ny, _] = self.dims;
        [idx % nx, (idx / nx) % ny, idx / (nx * ny)]
    }

    /// Voxel center, m.
    pub fn position(&self, idx: usize) -> [T; 3] {
        let c = self.coords(idx);
        std::array::from_fn(|a| self.origin[a] + self.spacing[a] * T::from_count(c[a]))
    }

    pub fn voxel_volume(&self) -> T {
        self.spacing[0] * self.spacing[1] * self.spacing[2]
    }
}

/// Column names of the grid CSV.
pub const GRID_CSV_HEADER: [&str; 16] = [
    "x_m", "y_m", "z_m", "eqx_re", "eqx_im", "eqy_re", "eqy_im", "eqz_re", "eqz_im", "ecx_re", "ecx_im", "ecy_re",
    "ecy_im", "ecz_re", "ecz_im", "mask",
];

/// Distinct sorted coordinates along one axis with a uniform pitch.
fn lattice_axis(mut v: Vec<f64>, axis: &str) -> Result<(f64, f64, usize), FieldError> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let span = (v[v.len() - 1] - v[0]).abs().max(1e-300);
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * span);
    if v.len() == 1 {
        return Ok((v[0], 1.0, 1));
    }
    let h = (v[v.len() - 1] - v[0]) / (v.len() - 1) as f64;
    for (i, &x) in v.iter().enumerate() {
        if (x - (v[0] + h * i as f64)).abs() > 1e-6 * h {
            return Err(FieldError::Ingestion(format!("{axis} coordinates are not uniformly spaced near {x}")));
        }
    }
    Ok((v[0], h, v.len()))
}

fn parse_mask(s: &str) -> Option<bool> {
    match s.trim() {
        "1" | "true" | "True" | "TRUE" => Some(true),
        "0" | "false" | "False" | "FALSE" => Some(false),
        _ => None,
    }
}

/// Reads a grid from CSV; rows may come in any order but must tile a
/// rectilinear lattice exactly once. Row numbers in errors count the header as row 1.
pub fn read_grid_csv<T: Real, R: Read>(r: R) -> Result<FieldGrid<T>, FieldError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(r);
    let header = rdr.headers().map_err(|e| FieldError::Row { row: 1, msg: e.to_string() })?;
    if header.iter().ne(GRID_CSV_HEADER.iter().copied()) {
        return Err(FieldError::Row { row: 1, msg: format!("expected header {}", GRID_CSV_HEADER.join(",")) });
    }
    let mut rows: Vec<([f64; 15], bool)> = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let row = k + 2;
        let rec = rec.map_err(|e| FieldError::Row { row, msg: e.to_string() })?;
        if rec.len() != 16 {
            return Err(FieldError::Row { row, msg: format!("expected 16 fields, got {}", rec.len()) });
        }
        let mut vals = [0.0; 15];
        for (c, v) in vals.iter_mut().enumerate() {
            *v = rec[c]
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| FieldError::Row { row, msg: format!("{}: not a finite number: {:?}", GRID_CSV_HEADER[c], &rec[c]) })?;
        }
        let m = parse_mask(&rec[15]).ok_or_else(|| FieldError::Row { row, msg: format!("mask: expected 0/1, got {:?}", &rec[15]) })?;
        rows.push((vals, m));
    }
    if rows.is_empty() {
        return Err(FieldError::Ingestion("no data rows".into()));
    }
    let axes: Vec<(f64, f64, usize)> = ["x", "y", "z"]
        .iter()
        .enumerate()
        .map(|(a, name)| lattice_axis(rows.iter().map(|r| r.0[a]).collect(), name))
        .collect::<Result<_, _>>()?;
    let dims = [axes[0].2, axes[1].2, axes[2].2];
    let n = dims.iter().product::<usize>();
    if n != rows.len() {
        return Err(FieldError::Ingestion(format!(
            "{} rows do not fill the {}x{}x{} lattice",
            rows.len(),
            dims[0],
            dims[1],
            dims[2]
        )));
    }
    let zero = [cx(T::zero(), T::zero()); 3];
    let mut eq = vec![zero; n];
    let mut ec = vec![zero; n];
    let mut mask = vec![false; n];
    let mut seen = vec![false; n];
    for (k, (v, m)) in rows.iter().enumerate() {
        let c: [usize; 3] = std::array::from_fn(|a| ((v[a] - axes[a].0) / axes[a].1).round() as usize);
        let idx = c[0] + dims[0] * (c[1] + dims[1] * c[2]);
        if std::mem::replace(&mut seen[idx], true) {
            return Err(FieldError::Row { row: k + 2, msg: "duplicate lattice point".into() });
        }
        eq[idx] = std::array::from_fn(|a| cx(T::lit(v[3 + 2 * a]), T::lit(v[4 + 2 * a])));
        ec[idx] = std::array::from_fn(|a| cx(T::lit(v[9 + 2 * a]), T::lit(v[10 + 2 * a])));
        mask[idx] = *m;
    }
    FieldGrid::new(
        dims,
        std::array::from_fn(|a| T::lit(axes[a].1)),
        std::array::from_fn(|a| T::lit(axes[a].0)),
        eq,
        ec,
        mask,
    )
}

pub fn write_grid_csv<T: Real, W: Write>(g: &FieldGrid<T>, w: W) -> Result<(), FieldError> {
    let io = |e: csv::Error| FieldError::Ingestion(e.to_string());
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(GRID_CSV_HEADER).map_err(io)?;
    for idx in 0..g.len() {
        let mut rec: Vec<String> = g.position(idx).iter().map(|p| fmt_sig17(p.as_f64())).collect();
        for field in [&g.e_qubit[idx], &g.e_cavity[idx]] {
            for c in field {
                rec.push(fmt_sig17(c.re.as_f64()));
                rec.push(fmt_sig17(c.im.as_f64()));
            }
        }
        rec.push(if g.mask[idx] { "1" } else { "0" }.into());
        wtr.write_record(&rec).map_err(io)?;
    }
    wtr.flush().map_err(|e| FieldError::Ingestion(e.to_string()))
}

/// Magic tag opening the binary grid format.
pub const GRID_MAGIC: &[u8; 4] = b"FGR1";
pub const GRID_HEADER_LEN: usize = 64;

/// Binary layout, little endian:
///
/// | bytes   | content                                  |
/// |---------|------------------------------------------|
/// | 0..4    | `FGR1`                                   |
/// | 4..16   | nx, ny, nz as `u32`                      |
/// | 16..40  | spacing x, y, z as `f64`, m              |
/// | 40..64  | origin x, y, z as `f64`, m               |
///
/// followed by twelve `f64` arrays of N = nx·ny·nz values in x-fastest order
/// (eqx_re, eqx_im, eqy_re, eqy_im, eqz_re, eqz_im, then the same six for the
/// cavity field) and N mask bytes (0 or 1).
pub fn write_grid_binary<T: Real, W: Write>(g: &FieldGrid<T>, mut w: W) -> std::io::Result<()> {
    let mut head = Vec::with_capacity(GRID_HEADER_LEN);
    head.extend_from_slice(GRID_MAGIC);
    for d in g.dims {
        head.extend_from_slice(&(d as u32).to_le_bytes());
    }
    for v in g.spacing.iter().chain(g.origin.iter()) {
        head.extend_from_slice(&v.as_f64().to_le_bytes());
    }
    w.write_all(&head)?;
    let mut buf = Vec::with_capacity(g.len() * 8);
    for field in [&g.e_qubit, &g.e_cavity] {
        for comp in 0..6 {
            buf.clear();
            for v in field.iter() {
                let z = v[comp / 2];
                let x = if comp % 2 == 0 { z.re } else { z.im };
                buf.extend_from_slice(&x.as_f64().to_le_bytes());
            }
            w.write_all(&buf)?;
        }
    }
    let mask: Vec<u8> = g.mask.iter().map(|&m| m as u8).collect();
    w.write_all(&mask)
}

pub fn read_grid_binary<T: Real, R: Read>(mut r: R) -> Result<FieldGrid<T>, FieldError> {
    let io = |e: std::io::Error| FieldError::Ingestion(format!("binary grid: {e}"));
    let mut head = [0u8; GRID_HEADER_LEN];
    r.read_exact(&mut head).map_err(io)?;
    if &head[0..4] != GRID_MAGIC {
        return Err(FieldError::Ingestion("binary grid: bad magic".into()));
    }
    let u = |o: usize| u32::from_le_bytes(head[o..o + 4].try_into().unwrap()) as usize;
    let f = |o: usize| f64::from_le_bytes(head[o..o + 8].try_into().unwrap());
    let dims = [u(4), u(8), u(12)];
    let n = dims
        .iter()
        .try_fold(1usize, |acc, &d| acc.checked_mul(d))
        .filter(|&n| n > 0 && n <= (1 << 31))
        .ok_or_else(|| FieldError::Ingestion(format!("binary grid: unusable dimensions {dims:?}")))?;
    let spacing = [T::lit(f(16)), T::lit(f(24)), T::lit(f(32))];
    let origin = [T::lit(f(40)), T::lit(f(48)), T::lit(f(56))];
    let mut cols = vec![vec![0.0f64; n]; 12];
    let mut bytes = vec![0u8; n * 8];
    for col in cols.iter_mut() {
        r.read_exact(&mut bytes).map_err(io)?;
        for (v, b) in col.iter_mut().zip(bytes.chunks_exact(8)) {
            *v = f64::from_le_bytes(b.try_into().unwrap());
        }
    }
    let mut mask_bytes = vec![0u8; n];
    r.read_exact(&mut mask_bytes).map_err(io)?;
    if mask_bytes.iter().any(|&b| b > 1) {
        return Err(FieldError::Ingestion("binary grid: mask bytes must be 0 or 1".into()));
    }
    if cols.iter().flatten().any(|v| !v.is_finite()) {
        return Err(FieldError::Ingestion("binary grid: non-finite field value".into()));
    }
    let vecs = |base: usize| -> Vec<Vec3<T>> {
        (0..n)
            .map(|i| std::array::from_fn(|a| cx(T::lit(cols[base + 2 * a][i]), T::lit(cols[base + 2 * a + 1][i]))))
            .collect()
    };
    FieldGrid::new(dims, spacing, origin, vecs(0), vecs(6), mask_bytes.iter().map(|&b| b == 1).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> FieldGrid<f64> {
        let dims = [3, 2, 2];
        let n = 12;
        let eq = (0..n).map(|i| [cx(i as f64, 0.5), cx(0.0, -1.0), cx(2.0, 0.0)]).collect();
        let ec = (0..n).map(|i| [cx(1.0, 0.0), cx(i as f64 * 0.1, 0.0), cx(0.0, 3.0)]).collect();
        let mask = (0..n).map(|i| i != 4).collect();
        FieldGrid::new(dims, [1e-3, 2e-3, 5e-4], [0.1, -0.2, 0.0], eq, ec, mask).unwrap()
    }

    #[test]
    fn csv_round_trip_and_row_order() {
        let g = small();
        let mut buf = Vec::new();
        write_grid_csv(&g, &mut buf).unwrap();
        let back: FieldGrid<f64> = read_grid_csv(buf.as_slice()).unwrap();
        assert_eq!(back.dims, g.dims);
        assert_eq!(back.mask, g.mask);
        assert_eq!(back.e_qubit, g.e_qubit);
        // shuffled rows tile the same lattice
        let text = String::from_utf8(buf).unwrap();
        let mut lines: Vec<&str> = text.lines().collect();
        lines[1..].reverse();
        let shuffled: FieldGrid<f64> = read_grid_csv(lines.join("\n").as_bytes()).unwrap();
        assert_eq!(shuffled.e_cavity, g.e_cavity);
    }

    #[test]
    fn csv_errors_carry_row_numbers() {
        let g = small();
        let mut buf = Vec::new();
        write_grid_csv(&g, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let bad = text.replacen(",1\n", ",maybe\n", 1);
        match read_grid_csv::<f64, _>(bad.as_bytes()) {
            Err(FieldError::Row { row: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
        let missing: Vec<&str> = text.lines().take(5).collect();
        assert!(matches!(read_grid_csv::<f64, _>(missing.join("\n").as_bytes()), Err(FieldError::Ingestion(_))));
        assert!(read_grid_csv::<f64, _>("a,b\n1,2\n".as_bytes()).is_err());
    }

    #[test]
    fn binary_round_trip() {
        let g = small();
        let mut buf = Vec::new();
        write_grid_binary(&g, &mut buf).unwrap();
        assert_eq!(&buf[..4], b"FGR1");
        assert_eq!(buf.len(), GRID_HEADER_LEN + 12 * 8 * 12 + 12);
        let back: FieldGrid<f64> = read_grid_binary(buf.as_slice()).unwrap();
        assert_eq!(back, g);
        buf[0] = b'X';
        assert!(read_grid_binary::<f64, _>(buf.as_slice()).is_err());
    }

    #[test]
    fn mismatched_fields_rejected() {
        let g = small();
        let r = FieldGrid::new(g.dims, g.spacing, g.origin, g.e_qubit[..5].to_vec(), g.e_cavity, g.mask);
        assert!(matches!(r, Err(FieldError::Ingestion(_))));
    }
}
