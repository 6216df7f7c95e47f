//! Netlist documents: one of the built-in circuit models or an explicit
//! network tree, plus the frequency sweep and optional tap positions.
//!
//! ```json
//! {
//!   "model": "tline",
//!   "parameters": { "cq": "70 fF", "length": "21.41 mm" },
//!   "sweep": { "f_start_ghz": 1, "f_stop_ghz": 14, "n_points": 2001, "spacing": "log" },
//!   "positions_frac": [0.125, 0.25]
//! }
//! ```

use std::f64::consts::PI;

use purcellnet::circuits::{defaults, MultiModeParams, SingleModeParams, TLineModelParams};
use purcellnet::network::{Element, NetworkTree, TLine};
use purcellnet::purcell::{default_points, Spacing};
use serde::Deserialize;
use serde_json::value::RawValue;

use crate::units::*;

/// Vacuum phase velocity used when a line omits `vp`, m/s.
const C0: f64 = 299_792_458.0;

#[derive(Debug, Clone, PartialEq)]
pub struct NetlistError {
    pub line: usize,
    pub column: usize,
    pub msg: String,
}

impl std::fmt::Display for NetlistError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.msg)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    SingleMode,
    MultiMode,
    Tline,
    CustomTree,
}

impl ModelKind {
    pub fn tag(self) -> &'static str {
        match self {
            ModelKind::SingleMode => "single_mode",
            ModelKind::MultiMode => "multi_mode",
            ModelKind::Tline => "tline",
            ModelKind::CustomTree => "custom_tree",
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNetlist<'a> {
    model: ModelKind,
    #[serde(borrow, default)]
    parameters: Option<&'a RawValue>,
    #[serde(default)]
    sweep: Option<SweepDoc>,
    #[serde(default)]
    positions_frac: Option<Vec<f64>>,
    #[serde(borrow, default)]
    tree: Option<&'a RawValue>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SweepDoc {
    f_start_ghz: f64,
    f_stop_ghz: f64,
    #[serde(default)]
    n_points: Option<usize>,
    #[serde(default)]
    spacing: Option<Spacing>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct SingleDoc {
    cq: Option<Capacitance>,
    cg: Option<Capacitance>,
    g: Option<Frequency>,
    cr: Option<Capacitance>,
    lr: Option<Inductance>,
    resonator_frequency: Option<Frequency>,
    c_kappa: Option<Capacitance>,
    kappa: Option<Frequency>,
    r_load: Option<Resistance>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct MultiDoc {
    cq: Option<Capacitance>,
    cg: Option<Capacitance>,
    g: Option<Frequency>,
    cr: Option<Capacitance>,
    lr: Option<Inductance>,
    resonator_frequency: Option<Frequency>,
    c_kappa: Option<Capacitance>,
    kappa: Option<Frequency>,
    r_load: Option<Resistance>,
    n_modes: Option<usize>,
    mode_frequencies: Option<Vec<Frequency>>,
    mode_capacitances: Option<Vec<Capacitance>>,
    /// `null` entries are lossless modes.
    mode_losses: Option<Vec<Option<Resistance>>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct TlineDoc {
    cq: Option<Capacitance>,
    cg: Option<Capacitance>,
    g: Option<Frequency>,
    c_kappa: Option<Capacitance>,
    kappa: Option<Frequency>,
    r_load: Option<Resistance>,
    z0: Option<Resistance>,
    length: Option<Length>,
    fundamental: Option<Frequency>,
    vp: Option<Velocity>,
    alpha: Option<Attenuation>,
    far_alpha: Option<Attenuation>,
    port_position: Option<Length>,
    port_position_frac: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct CustomDoc {
    cq: Option<Capacitance>,
    /// Reference fundamental for sweet-spot classification.
    fundamental: Option<Frequency>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum TreeDoc {
    Open,
    Short,
    Resistor { r: Resistance },
    Series { element: ElementDoc, rest: Box<TreeDoc> },
    Shunt { branch: Box<TreeDoc>, rest: Box<TreeDoc> },
    Line { z0: Resistance, length: Length, vp: Option<Velocity>, alpha: Option<Attenuation>, rest: Box<TreeDoc> },
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum ElementDoc {
    Resistor { r: Resistance },
    Capacitor { c: Capacitance },
    Inductor { l: Inductance },
    ParallelRlc { r: Option<Resistance>, l: Inductance, c: Capacitance },
    Tline { z0: Resistance, length: Length, vp: Option<Velocity>, alpha: Option<Attenuation> },
}

fn tline(z0: Resistance, length: Length, vp: Option<Velocity>, alpha: Option<Attenuation>) -> TLine<f64> {
    TLine { z0: z0.si, length: length.si, vp: vp.map_or(C0, |v| v.si), alpha: alpha.map_or(0.0, |a| a.si) }
}

impl TreeDoc {
    fn build(self) -> Result<NetworkTree<f64>, String> {
        Ok(match self {
            TreeDoc::Open => NetworkTree::open(),
            TreeDoc::Short => NetworkTree::short(),
            TreeDoc::Resistor { r } => {
                Element::resistor(r.si).validate().map_err(|e| e.to_string())?;
                NetworkTree::resistor(r.si)
            }
            TreeDoc::Series { element, rest } => NetworkTree::series(element.build(), rest.build()?),
            TreeDoc::Shunt { branch, rest } => NetworkTree::shunt(branch.build()?, rest.build()?),
            TreeDoc::Line { z0, length, vp, alpha, rest } => NetworkTree::line(tline(z0, length, vp, alpha), rest.build()?),
        })
    }
}

impl ElementDoc {
    fn build(self) -> Element<f64> {
        match self {
            ElementDoc::Resistor { r } => Element::resistor(r.si),
            ElementDoc::Capacitor { c } => Element::capacitor(c.si),
            ElementDoc::Inductor { l } => Element::inductor(l.si),
            ElementDoc::ParallelRlc { r, l, c } => Element::ParallelRlc { r: r.map(|r| r.si), l: l.si, c: c.si },
            ElementDoc::Tline { z0, length, vp, alpha } => Element::TLine(tline(z0, length, vp, alpha)),
        }
    }
}

/// A circuit ready for evaluation.
#[derive(Debug, Clone)]
pub enum Model {
    SingleMode(SingleModeParams<f64>),
    MultiMode(MultiModeParams<f64>),
    Tline(TLineModelParams<f64>),
    Custom { tree: NetworkTree<f64>, cq: f64, fundamental: Option<f64> },
}

impl Model {
    pub fn kind(&self) -> ModelKind {
        match self {
            Model::SingleMode(_) => ModelKind::SingleMode,
            Model::MultiMode(_) => ModelKind::MultiMode,
            Model::Tline(_) => ModelKind::Tline,
            Model::Custom { .. } => ModelKind::CustomTree,
        }
    }

    /// Resonator fundamental, Hz, when the model defines one.
    pub fn fundamental(&self) -> Option<f64> {
        match self {
            Model::SingleMode(p) => Some(p.resonator_frequency()),
            Model::MultiMode(p) => Some(p.fundamental()),
            Model::Tline(p) => Some(p.fundamental()),
            Model::Custom { fundamental, .. } => *fundamental,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub f_start: f64,
    pub f_stop: f64,
    pub n_points: Option<usize>,
    pub spacing: Spacing,
}

impl SweepSpec {
    /// Point count after the command-line override, falling back to the default density.
    pub fn points(&self, override_points: Option<usize>) -> usize {
        override_points.or(self.n_points).unwrap_or_else(|| default_points(self.f_start, self.f_stop))
    }
}

impl Default for SweepSpec {
    fn default() -> Self {
        Self { f_start: 1e9, f_stop: 14e9, n_points: None, spacing: Spacing::Log }
    }
}

#[derive(Debug, Clone)]
pub struct Netlist {
    pub model: Model,
    pub sweep: SweepSpec,
    pub positions_frac: Option<Vec<f64>>,
}

/// 1-based line and column of byte `offset` in `text`.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map_or(before.chars().count(), |nl| before[nl + 1..].chars().count()) + 1;
    (line, col)
}

struct Source<'a> {
    text: &'a str,
}

impl<'a> Source<'a> {
    fn top_error(&self, e: serde_json::Error) -> NetlistError {
        NetlistError { line: e.line().max(1), column: e.column().max(1), msg: strip_position(&e) }
    }

    /// Parses a nested raw fragment, reporting positions in the whole document.
    fn parse_fragment<T: for<'de> Deserialize<'de>>(&self, raw: &RawValue) -> Result<T, NetlistError> {
        serde_json::from_str(raw.get()).map_err(|e| {
            let (l0, c0) = self.locate(raw);
            let line = l0 + e.line().max(1) - 1;
            let column = if e.line() <= 1 { c0 + e.column().max(1) - 1 } else { e.column().max(1) };
            NetlistError { line, column, msg: strip_position(&e) }
        })
    }

    fn locate(&self, raw: &RawValue) -> (usize, usize) {
        let offset = (raw.get().as_ptr() as usize).wrapping_sub(self.text.as_ptr() as usize);
        if offset <= self.text.len() {
            line_col(self.text, offset)
        } else {
            (1, 1)
        }
    }

    fn at(&self, raw: Option<&RawValue>, msg: impl Into<String>) -> NetlistError {
        let (line, column) = raw.map_or((1, 1), |r| self.locate(r));
        NetlistError { line, column, msg: msg.into() }
    }
}

/// serde_json appends " at line L column C"; positions are reported separately.
fn strip_position(e: &serde_json::Error) -> String {
    let s = e.to_string();
    match s.rfind(" at line ") {
        Some(i) => s[..i].to_owned(),
        None => s,
    }
}

fn exclusive<A, B>(a: &Option<A>, b: &Option<B>, what: &str) -> Result<(), String> {
    if a.is_some() && b.is_some() {
        Err(format!("give at most one of {what}"))
    } else {
        Ok(())
    }
}

fn resolve_single(d: &SingleDoc) -> Result<SingleModeParams<f64>, String> {
    exclusive(&d.cg, &d.g, "\"cg\" and \"g\"")?;
    exclusive(&d.lr, &d.resonator_frequency, "\"lr\" and \"resonator_frequency\"")?;
    exclusive(&d.c_kappa, &d.kappa, "\"c_kappa\" and \"kappa\"")?;
    let base = SingleModeParams::<f64>::reference_default();
    let circuit_changed = d.cq.is_some() || d.cr.is_some() || d.lr.is_some() || d.resonator_frequency.is_some();
    let mut p = base;
    if let Some(c) = d.cq {
        p.cq = c.si;
    }
    if let Some(c) = d.cr {
        p.cr = c.si;
    }
    if let Some(r) = d.r_load {
        p.r_load = r.si;
    }
    p.lr = match (d.lr, d.resonator_frequency) {
        (Some(l), _) => l.si,
        (None, Some(f)) => 1.0 / ((2.0 * PI * f.si).powi(2) * p.cr),
        (None, None) if d.cr.is_some() => 1.0 / ((2.0 * PI * defaults::RESONATOR_HZ).powi(2) * p.cr),
        (None, None) => base.lr,
    };
    check_positive(&[("cq", p.cq), ("cr", p.cr), ("lr", p.lr), ("r_load", p.r_load)])?;
    p.cg = match (d.cg, d.g) {
        (Some(c), _) => c.si,
        (None, Some(g)) => p.with_coupling(2.0 * PI * g.si).cg,
        (None, None) if circuit_changed => p.with_coupling(2.0 * PI * defaults::COUPLING_HZ).cg,
        (None, None) => base.cg,
    };
    check_positive(&[("cg", p.cg)])?;
    p.c_kappa = match (d.c_kappa, d.kappa) {
        (Some(c), _) => c.si,
        (None, Some(k)) => p.solve_c_kappa(2.0 * PI * k.si).map_err(|e| e.to_string())?,
        (None, None) if circuit_changed || d.cg.is_some() || d.g.is_some() || d.r_load.is_some() => {
            p.solve_c_kappa(2.0 * PI * defaults::KAPPA_HZ).map_err(|e| e.to_string())?
        }
        (None, None) => base.c_kappa,
    };
    p.validate().map_err(|e| e.to_string())?;
    Ok(p)
}

fn check_positive(values: &[(&str, f64)]) -> Result<(), String> {
    for &(name, v) in values {
        if !(v.is_finite() && v > 0.0) {
            return Err(format!("{name} must be positive, got {v:e}"));
        }
    }
    Ok(())
}

fn resolve_multi(d: MultiDoc) -> Result<MultiModeParams<f64>, String> {
    let base = resolve_single(&SingleDoc {
        cq: d.cq,
        cg: d.cg,
        g: d.g,
        cr: d.cr,
        lr: d.lr,
        resonator_frequency: d.resonator_frequency,
        c_kappa: d.c_kappa,
        kappa: d.kappa,
        r_load: d.r_load,
    })?;
    let n = d
        .n_modes
        .or(d.mode_frequencies.as_ref().map(Vec::len))
        .or(d.mode_capacitances.as_ref().map(Vec::len))
        .or(d.mode_losses.as_ref().map(Vec::len))
        .unwrap_or(defaults::N_MODES);
    if n == 0 {
        return Err("n_modes must be at least 1".into());
    }
    let mut p = MultiModeParams::harmonic(&base, n);
    let check_len = |what: &str, len: usize| {
        if len == n {
            Ok(())
        } else {
            Err(format!("{what} has {len} entries but the model has {n} modes"))
        }
    };
    if let Some(f) = &d.mode_frequencies {
        check_len("mode_frequencies", f.len())?;
        p.modes.iter_mut().zip(f).for_each(|(m, f)| m.frequency = f.si);
    }
    if let Some(c) = &d.mode_capacitances {
        check_len("mode_capacitances", c.len())?;
        p.modes.iter_mut().zip(c).for_each(|(m, c)| m.capacitance = c.si);
    }
    if let Some(r) = &d.mode_losses {
        check_len("mode_losses", r.len())?;
        p.modes.iter_mut().zip(r).for_each(|(m, r)| m.loss = r.map(|r| r.si));
    }
    p.validate().map_err(|e| e.to_string())?;
    Ok(p)
}

fn resolve_tline(d: &TlineDoc) -> Result<TLineModelParams<f64>, String> {
    exclusive(&d.cg, &d.g, "\"cg\" and \"g\"")?;
    exclusive(&d.c_kappa, &d.kappa, "\"c_kappa\" and \"kappa\"")?;
    exclusive(&d.length, &d.fundamental, "\"length\" and \"fundamental\"")?;
    exclusive(&d.port_position, &d.port_position_frac, "\"port_position\" and \"port_position_frac\"")?;
    let base = TLineModelParams::<f64>::reference_default();
    let mut p = base;
    if let Some(c) = d.cq {
        p.cq = c.si;
    }
    if let Some(r) = d.r_load {
        p.r_load = r.si;
    }
    if let Some(z) = d.z0 {
        p.line.z0 = z.si;
    }
    if let Some(v) = d.vp {
        p.line.vp = v.si;
    }
    if let Some(a) = d.alpha {
        p.line.alpha = a.si;
    }
    p.far_alpha = d.far_alpha.map(|a| a.si);
    if let Some(l) = d.length {
        p.line.length = l.si;
    }
    if let Some(f) = d.fundamental {
        check_positive(&[("fundamental", f.si)])?;
        p.line.length = p.line.vp / (2.0 * f.si);
    }
    p.line.validate().map_err(|e| e.to_string())?;
    check_positive(&[("cq", p.cq), ("r_load", p.r_load), ("line length", p.line.length)])?;
    let line_changed = d.z0.is_some() || d.vp.is_some() || d.length.is_some() || d.fundamental.is_some();
    let couplings_stale = line_changed || d.cq.is_some();
    // lumped equivalent of the fundamental, used to turn g and κ into capacitances
    let w1 = 2.0 * PI * p.fundamental();
    let cr = p.line.total_capacitance() / 2.0;
    let mut eq = SingleModeParams { cq: p.cq, cg: p.cg, lr: 1.0 / (w1 * w1 * cr), cr, c_kappa: p.c_kappa, r_load: p.r_load };
    p.cg = match (d.cg, d.g) {
        (Some(c), _) => c.si,
        (None, Some(g)) => eq.with_coupling(2.0 * PI * g.si).cg,
        (None, None) if couplings_stale => eq.with_coupling(2.0 * PI * defaults::COUPLING_HZ).cg,
        (None, None) => base.cg,
    };
    eq.cg = p.cg;
    p.c_kappa = match (d.c_kappa, d.kappa) {
        (Some(c), _) => c.si,
        (None, Some(k)) => eq.solve_c_kappa(2.0 * PI * k.si).map_err(|e| e.to_string())?,
        (None, None) if couplings_stale || d.cg.is_some() || d.g.is_some() || d.r_load.is_some() => {
            eq.solve_c_kappa(2.0 * PI * defaults::KAPPA_HZ).map_err(|e| e.to_string())?
        }
        (None, None) => base.c_kappa,
    };
    p.port_position = match (d.port_position, d.port_position_frac) {
        (Some(x), _) => x.si,
        (None, Some(f)) => f * p.line.length,
        (None, None) => 0.0,
    };
    p.validate().map_err(|e| e.to_string())?;
    Ok(p)
}

/// Parses and validates a netlist document.
pub fn parse_netlist(text: &str) -> Result<Netlist, NetlistError> {
    let src = Source { text };
    let raw: RawNetlist = serde_json::from_str(text).map_err(|e| src.top_error(e))?;
    let params = raw.parameters;
    let fail = |msg: String| src.at(params, msg);
    let model = match raw.model {
        ModelKind::SingleMode => {
            let d: SingleDoc = params.map(|r| src.parse_fragment(r)).transpose()?.unwrap_or_default();
            Model::SingleMode(resolve_single(&d).map_err(fail)?)
        }
        ModelKind::MultiMode => {
            let d: MultiDoc = params.map(|r| src.parse_fragment(r)).transpose()?.unwrap_or_default();
            Model::MultiMode(resolve_multi(d).map_err(fail)?)
        }
        ModelKind::Tline => {
            let d: TlineDoc = params.map(|r| src.parse_fragment(r)).transpose()?.unwrap_or_default();
            Model::Tline(resolve_tline(&d).map_err(fail)?)
        }
        ModelKind::CustomTree => {
            let d: CustomDoc = params.map(|r| src.parse_fragment(r)).transpose()?.unwrap_or_default();
            let tree_raw = raw.tree.ok_or_else(|| src.at(None, "model \"custom_tree\" needs a \"tree\""))?;
            let tree = src.parse_fragment::<TreeDoc>(tree_raw)?.build().map_err(|m| src.at(Some(tree_raw), m))?;
            let mut bad = None;
            tree.for_each_element(&mut |e| {
                if let Err(err) = e.validate() {
                    bad.get_or_insert(err.to_string());
                }
            });
            if let Some(msg) = bad {
                return Err(src.at(Some(tree_raw), msg));
            }
            let cq = d.cq.map_or(defaults::CQ_F, |c| c.si);
            check_positive(&[("cq", cq)]).map_err(fail)?;
            Model::Custom { tree, cq, fundamental: d.fundamental.map(|f| f.si) }
        }
    };
    if raw.tree.is_some() && raw.model != ModelKind::CustomTree {
        return Err(src.at(raw.tree, "\"tree\" is only allowed with model \"custom_tree\""));
    }
    let sweep = match raw.sweep {
        Some(s) => SweepSpec { f_start: s.f_start_ghz * 1e9, f_stop: s.f_stop_ghz * 1e9, n_points: s.n_points, spacing: s.spacing.unwrap_or_default() },
        None => SweepSpec::default(),
    };
    if !(sweep.f_start > 0.0 && sweep.f_stop > sweep.f_start) {
        return Err(src.at(None, format!("sweep needs 0 < f_start < f_stop, got {:e} .. {:e} Hz", sweep.f_start, sweep.f_stop)));
    }
    if sweep.n_points.is_some_and(|n| n < 2) {
        return Err(src.at(None, "sweep n_points must be at least 2"));
    }
    if let Some(pos) = &raw.positions_frac {
        if raw.model != ModelKind::Tline {
            return Err(src.at(None, "\"positions_frac\" is only allowed with model \"tline\""));
        }
        if let Some(bad) = pos.iter().find(|f| !(0.0..=1.0).contains(*f)) {
            return Err(src.at(None, format!("positions_frac entries must lie in [0, 1], got {bad}")));
        }
    }
    Ok(Netlist { model, sweep, positions_frac: raw.positions_frac })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_parameters_reproduce_the_reference_circuits() {
        let n = parse_netlist(r#"{"model": "single_mode"}"#).unwrap();
        match n.model {
            Model::SingleMode(p) => assert_eq!(p, SingleModeParams::reference_default()),
            _ => unreachable!(),
        }
        let n = parse_netlist(r#"{"model": "tline", "parameters": {}}"#).unwrap();
        match n.model {
            Model::Tline(p) => assert_eq!(p, TLineModelParams::reference_default()),
            _ => unreachable!(),
        }
        let n = parse_netlist(r#"{"model": "multi_mode"}"#).unwrap();
        match n.model {
            Model::MultiMode(p) => assert_eq!(p, MultiModeParams::reference_default()),
            _ => unreachable!(),
        }
    }

    #[test]
    fn explicit_values_override_defaults() {
        let text = r#"{"model": "single_mode", "parameters": {"cq": "80 fF", "cg": "5 fF", "c_kappa": "10 fF", "resonator_frequency": "6 GHz"}}"#;
        let Model::SingleMode(p) = parse_netlist(text).unwrap().model else { unreachable!() };
        for (got, want) in [(p.cq, 80e-15), (p.cg, 5e-15), (p.c_kappa, 10e-15)] {
            assert!((got / want - 1.0).abs() < 1e-15, "{got} vs {want}");
        }
        assert!((p.resonator_frequency() / 6e9 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn kappa_target_is_solved() {
        let text = r#"{"model": "single_mode", "parameters": {"kappa": "2 MHz"}}"#;
        let Model::SingleMode(p) = parse_netlist(text).unwrap().model else { unreachable!() };
        let (_, k) = p.ringdown_kappa().unwrap();
        assert!((k / (2.0 * PI * 2e6) - 1.0).abs() < 1e-6);
    }

    #[test]
    fn tline_positions_and_lengths() {
        let text = r#"{"model": "tline", "parameters": {"fundamental": "5 GHz", "port_position_frac": 0.5},
                       "positions_frac": [0.125, 1.0]}"#;
        let n = parse_netlist(text).unwrap();
        let Model::Tline(p) = n.model else { unreachable!() };
        assert!((p.fundamental() / 5e9 - 1.0).abs() < 1e-12);
        assert_eq!(p.port_position, 0.5 * p.line.length);
        assert_eq!(n.positions_frac, Some(vec![0.125, 1.0]));
    }

    #[test]
    fn custom_tree_builds() {
        let text = r#"{"model": "custom_tree", "parameters": {"cq": "70 fF", "fundamental": "7 GHz"},
            "tree": {"series": {"element": {"capacitor": {"c": "6 fF"}},
                     "rest": {"line": {"z0": "50 ohm", "length": "10 mm", "rest": "open"}}}}}"#;
        let Model::Custom { tree, cq, fundamental } = parse_netlist(text).unwrap().model else { unreachable!() };
        assert_eq!(cq, 70e-15);
        assert_eq!(fundamental, Some(7e9));
        assert_eq!(tree.depth(), 3);
    }

    #[test]
    fn errors_carry_document_positions() {
        let text = "{\n  \"model\": \"single_mode\",\n  \"parameters\": {\n    \"cq\": \"70 GHz\"\n  }\n}";
        let e = parse_netlist(text).unwrap_err();
        assert_eq!(e.line, 4, "{e}");
        assert!(e.msg.contains("not a capacitance unit"), "{e}");

        let e = parse_netlist("{\n  \"model\": \"single_mode\",\n  \"bogus\": 1\n}").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(e.msg.contains("unknown field"));

        let e = parse_netlist("{\"model\": \"single_mode\", \"parameters\": {\"cq\": 7e-14}}").unwrap_err();
        assert_eq!((e.line, e.column > 40), (1, true), "{e}");
    }

    #[test]
    fn invalid_documents_are_rejected() {
        for text in [
            r#"{"model": "single_mode", "parameters": {"cg": "5 fF", "g": "100 MHz"}}"#,
            r#"{"model": "single_mode", "positions_frac": [0.1]}"#,
            r#"{"model": "tline", "positions_frac": [1.5]}"#,
            r#"{"model": "tline", "parameters": {"port_position": "1 m"}}"#,
            r#"{"model": "custom_tree"}"#,
            r#"{"model": "single_mode", "sweep": {"f_start_ghz": 5, "f_stop_ghz": 1}}"#,
            r#"{"model": "multi_mode", "parameters": {"n_modes": 2, "mode_frequencies": ["7 GHz"]}}"#,
            r#"{"model": "custom_tree", "tree": {"resistor": {"r": "-5 ohm"}}}"#,
        ] {
            assert!(parse_netlist(text).is_err(), "{text}");
        }
    }
}
