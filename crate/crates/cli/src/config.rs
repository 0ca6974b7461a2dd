//! Sectioned `key = value unit` configuration files.
//!
//! ```text
//! [modes]
//! omega_b_over_2pi = 10 MHz
//! kappa_a = 0.4 omega_b
//! [drives]
//! Delta_eff_a = 1 omega_b
//! [axis]
//! parameter = Delta_eff_A1, Delta_m1
//! start = -1 omega_b
//! stop = 1 omega_b
//! count = 101
//! ```
//!
//! Keys are parameter names. Hz-family units and `rad/s` are plain s⁻¹
//! multiples; a key ending in `_over_2pi` is multiplied by 2π. A value may
//! also be a multiple of another parameter, or `default`.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use omm_core::model::DetuningMode;
use omm_core::physics::magnon_frequency_from_field;
use omm_core::sweep::{Parameter, Quantity, Scale};
use omm_core::{Mode, SweepAxis, SweepSpec, SystemConfig};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError {
        line: Some(line),
        message: message.into(),
    })
}

/// A parsed configuration file: the physical system plus optional sweep
/// sections.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigDocument {
    pub config: SystemConfig,
    pub pairs: Vec<(Mode, Mode)>,
    pub axes: Vec<SweepAxis>,
}

impl ConfigDocument {
    pub fn new(config: SystemConfig) -> Self {
        ConfigDocument {
            config,
            pairs: Vec::new(),
            axes: Vec::new(),
        }
    }

    pub fn sweep_spec(&self) -> SweepSpec {
        SweepSpec {
            base: self.config.clone(),
            axes: self.axes.clone(),
            pairs: self.pairs.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Modes,
    Couplings,
    Drives,
    Environment,
    Sweep,
    Axis,
}

impl Section {
    fn parse(name: &str) -> Option<Section> {
        Some(match name {
            "modes" => Section::Modes,
            "couplings" => Section::Couplings,
            "drives" => Section::Drives,
            "environment" => Section::Environment,
            "sweep" => Section::Sweep,
            "axis" => Section::Axis,
            _ => return None,
        })
    }

    fn name(self) -> &'static str {
        match self {
            Section::Modes => "modes",
            Section::Couplings => "couplings",
            Section::Drives => "drives",
            Section::Environment => "environment",
            Section::Sweep => "sweep",
            Section::Axis => "axis",
        }
    }

    fn of(p: Parameter) -> Section {
        match p {
            Parameter::Frequency(_) | Parameter::Decay(_) => Section::Modes,
            Parameter::Optomechanical
            | Parameter::CavityMechanical(_)
            | Parameter::MagnonCavity(_) => Section::Couplings,
            Parameter::Rabi(_)
            | Parameter::CavityDetuning { .. }
            | Parameter::MagnonDetuning(_) => Section::Drives,
            Parameter::Temperature => Section::Environment,
        }
    }
}

struct Entry {
    key: String,
    value: String,
    line: usize,
}

struct Block {
    section: Section,
    line: usize,
    entries: Vec<Entry>,
}

fn split_blocks(text: &str) -> Result<(Vec<Block>, usize), ConfigError> {
    let mut blocks: Vec<Block> = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(name) = content.strip_prefix('[') {
            let Some(name) = name.strip_suffix(']') else {
                return err(line, format!("malformed section header `{content}`"));
            };
            let Some(section) = Section::parse(name.trim()) else {
                return err(line, format!("unknown section `[{}]`", name.trim()));
            };
            if section != Section::Axis && blocks.iter().any(|b| b.section == section) {
                return err(
                    line,
                    format!("section `[{}]` appears twice", section.name()),
                );
            }
            blocks.push(Block {
                section,
                line,
                entries: Vec::new(),
            });
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return err(line, format!("expected `key = value`, got `{content}`"));
        };
        let Some(block) = blocks.last_mut() else {
            return err(line, "key outside of any section");
        };
        block.entries.push(Entry {
            key: key.trim().to_string(),
            value: value.trim().to_string(),
            line,
        });
    }
    Ok((blocks, last))
}

#[derive(Debug, Clone, Copy)]
enum Expr {
    Value(f64),
    Relative { coefficient: f64, target: Parameter },
    Default,
}

/// Parses a decimal number and scales it by `10^exponent` in one correctly
/// rounded step, so `1.7 MHz` is exactly `1.7e6`.
fn parse_scaled(number: &str, exponent: i32) -> Option<f64> {
    let x: f64 = number.parse().ok()?;
    if !x.is_finite() {
        return None;
    }
    if exponent == 0 {
        return Some(x);
    }
    let (mantissa, e0) = match number.find(['e', 'E']) {
        Some(k) => (&number[..k], number[k + 1..].parse::<i32>().ok()?),
        None => (number, 0),
    };
    let y: f64 = format!("{mantissa}e{}", e0 + exponent).parse().ok()?;
    y.is_finite().then_some(y)
}

fn unit_exponent(quantity: Quantity, unit: &str) -> Option<i32> {
    match (quantity, unit) {
        (Quantity::Rate, "Hz" | "rad/s") => Some(0),
        (Quantity::Rate, "kHz") => Some(3),
        (Quantity::Rate, "MHz") => Some(6),
        (Quantity::Rate, "GHz") => Some(9),
        (Quantity::Rate, "THz") => Some(12),
        (Quantity::Temperature, "K") => Some(0),
        (Quantity::Temperature, "mK") => Some(-3),
        (Quantity::Temperature, "uK" | "µK") => Some(-6),
        _ => None,
    }
}

/// How a key's value is to be read.
#[derive(Clone, Copy)]
struct Reading {
    quantity: Quantity,
    over_2pi: bool,
    /// Tesla is accepted (and converted through the gyromagnetic ratio).
    field: bool,
}

fn parse_expr(value: &str, reading: Reading, line: usize) -> Result<Expr, ConfigError> {
    let tokens: Vec<&str> = value.split_whitespace().collect();
    if tokens == ["default"] {
        if reading.over_2pi {
            return err(line, "`default` cannot be combined with an `_over_2pi` key");
        }
        return Ok(Expr::Default);
    }
    let (number, word) = match tokens.as_slice() {
        [one] if one.parse::<f64>().is_ok() => {
            return err(line, format!("missing unit in `{value}`"))
        }
        [one] => ("1", *one),
        [n, w] => (*n, *w),
        [] => return err(line, "missing value"),
        _ => return err(line, format!("cannot read `{value}` as `<number> <unit>`")),
    };
    if reading.field && word == "T" {
        let tesla = parse_scaled(number, 0).ok_or_else(|| bad_number(number, line))?;
        return magnon_frequency_from_field(tesla)
            .map(Expr::Value)
            .map_err(|e| ConfigError {
                line: Some(line),
                message: e.to_string(),
            });
    }
    if let Some(exp) = unit_exponent(reading.quantity, word) {
        let x = parse_scaled(number, exp).ok_or_else(|| bad_number(number, line))?;
        return Ok(Expr::Value(if reading.over_2pi { TAU * x } else { x }));
    }
    if let Ok(target) = word.parse::<Parameter>() {
        if reading.over_2pi {
            return err(
                line,
                "relative values cannot be combined with an `_over_2pi` key",
            );
        }
        if target.quantity() != reading.quantity {
            return err(
                line,
                format!("`{target}` is not a {}", quantity_name(reading.quantity)),
            );
        }
        let coefficient = parse_scaled(number, 0).ok_or_else(|| bad_number(number, line))?;
        return Ok(Expr::Relative {
            coefficient,
            target,
        });
    }
    err(
        line,
        format!(
            "unknown unit or parameter `{word}` for a {}",
            quantity_name(reading.quantity)
        ),
    )
}

fn bad_number(number: &str, line: usize) -> ConfigError {
    ConfigError {
        line: Some(line),
        message: format!("`{number}` is not a finite number"),
    }
}

fn quantity_name(q: Quantity) -> &'static str {
    match q {
        Quantity::Rate => "rate",
        Quantity::Temperature => "temperature",
    }
}

/// Splits `omega_b_over_2pi` into the parameter and the 2π flag.
fn parse_key(key: &str) -> Option<(Parameter, bool)> {
    let (base, over_2pi) = match key.strip_suffix("_over_2pi") {
        Some(base) => (base, true),
        None => (key, false),
    };
    let p: Parameter = base.parse().ok()?;
    if over_2pi && p.quantity() != Quantity::Rate {
        return None;
    }
    Some((p, over_2pi))
}

fn is_magnon_frequency(p: Parameter) -> bool {
    matches!(p, Parameter::Frequency(Mode::Magnon1 | Mode::Magnon2))
}

fn required(section: Section) -> Vec<Parameter> {
    Parameter::all()
        .into_iter()
        .filter(|p| Section::of(*p) == section && section != Section::Drives)
        .collect()
}

struct Resolver<'a> {
    exprs: &'a HashMap<Parameter, (Expr, usize)>,
    done: HashMap<Parameter, f64>,
    stack: Vec<Parameter>,
    defaults: SystemConfig,
}

impl Resolver<'_> {
    fn resolve(&mut self, p: Parameter, from_line: usize) -> Result<f64, ConfigError> {
        if let Some(&v) = self.done.get(&p) {
            return Ok(v);
        }
        let Some(&(expr, line)) = self.exprs.get(&p) else {
            return err(
                from_line,
                format!("reference to `{p}`, which is not set in this file"),
            );
        };
        if let Some(k) = self.stack.iter().position(|q| *q == p) {
            let chain: Vec<String> = self.stack[k..]
                .iter()
                .chain([&p])
                .map(|q| q.name())
                .collect();
            return err(line, format!("circular reference: {}", chain.join(" -> ")));
        }
        self.stack.push(p);
        let v = match expr {
            Expr::Value(v) => v,
            Expr::Default => p.get(&self.defaults),
            Expr::Relative {
                coefficient,
                target,
            } => coefficient * self.resolve(target, line)?,
        };
        self.stack.pop();
        self.done.insert(p, v);
        Ok(v)
    }
}

pub fn parse_config(text: &str) -> Result<ConfigDocument, ConfigError> {
    let (blocks, last_line) = split_blocks(text)?;

    let mut exprs: HashMap<Parameter, (Expr, usize)> = HashMap::new();
    let mut detuning_mode: Option<(DetuningMode, usize)> = None;
    for block in blocks
        .iter()
        .filter(|b| !matches!(b.section, Section::Sweep | Section::Axis))
    {
        for e in &block.entries {
            let Some((p, over_2pi)) =
                parse_key(&e.key).filter(|(p, _)| Section::of(*p) == block.section)
            else {
                return err(
                    e.line,
                    format!("unknown key `{}` in [{}]", e.key, block.section.name()),
                );
            };
            if exprs.contains_key(&p) {
                return err(e.line, format!("`{p}` is set twice"));
            }
            if let Some(mode) = p.required_mode() {
                match detuning_mode {
                    Some((m, first)) if m != mode => {
                        return err(
                            e.line,
                            format!("`{p}` mixes effective and bare detunings (line {first} uses the other kind)"),
                        );
                    }
                    None => detuning_mode = Some((mode, e.line)),
                    _ => {}
                }
            }
            let reading = Reading {
                quantity: p.quantity(),
                over_2pi,
                field: is_magnon_frequency(p) && !over_2pi,
            };
            exprs.insert(p, (parse_expr(&e.value, reading, e.line)?, e.line));
        }
    }

    for section in [Section::Modes, Section::Couplings, Section::Environment] {
        let line = blocks
            .iter()
            .find(|b| b.section == section)
            .map_or(last_line, |b| b.line);
        if let Some(p) = required(section)
            .into_iter()
            .find(|p| !exprs.contains_key(p))
        {
            return err(line, format!("missing key `{p}` in [{}]", section.name()));
        }
    }

    let mode = detuning_mode.map_or(DetuningMode::Effective, |(m, _)| m);
    for p in Parameter::all() {
        let is_drive = Section::of(p) == Section::Drives;
        if is_drive && p.required_mode().is_none_or(|m| m == mode) {
            exprs.entry(p).or_insert((Expr::Value(0.0), 0));
        }
    }

    let mut resolver = Resolver {
        exprs: &exprs,
        done: HashMap::new(),
        stack: Vec::new(),
        defaults: SystemConfig::default_point(),
    };
    let mut config = SystemConfig::default_point();
    config.drives.mode = mode;
    let mut keys: Vec<Parameter> = exprs.keys().copied().collect();
    keys.sort_by_key(|p| exprs[p].1);
    for p in keys {
        let line = exprs[&p].1;
        let v = resolver.resolve(p, line)?;
        p.set(&mut config, v).map_err(|e| ConfigError {
            line: Some(line),
            message: e.to_string(),
        })?;
    }
    config.validate().map_err(|e| ConfigError {
        line: None,
        message: e.to_string(),
    })?;

    let mut doc = ConfigDocument::new(config);
    for block in &blocks {
        match block.section {
            Section::Sweep => {
                for e in &block.entries {
                    if e.key != "pair" {
                        return err(e.line, format!("unknown key `{}` in [sweep]", e.key));
                    }
                    doc.pairs
                        .push(parse_pair(&e.value).map_err(|m| ConfigError {
                            line: Some(e.line),
                            message: m,
                        })?);
                }
            }
            Section::Axis => doc.axes.push(parse_axis(block, &doc.config)?),
            _ => {}
        }
    }
    Ok(doc)
}

pub fn parse_pair(text: &str) -> Result<(Mode, Mode), String> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| format!("expected a pair like `m1,m2`, got `{text}`"))?;
    let a: Mode = a.parse().map_err(|e: omm_core::Error| e.to_string())?;
    let b: Mode = b.parse().map_err(|e: omm_core::Error| e.to_string())?;
    if a == b {
        return Err(format!("pair `{text}` repeats a mode"));
    }
    Ok((a, b))
}

fn parse_axis(block: &Block, config: &SystemConfig) -> Result<SweepAxis, ConfigError> {
    let mut fields: HashMap<&str, &Entry> = HashMap::new();
    for e in &block.entries {
        let canonical = match e.key.as_str() {
            "parameter" | "count" | "scale" => e.key.as_str(),
            "start" | "start_over_2pi" => "start",
            "stop" | "stop_over_2pi" => "stop",
            _ => return err(e.line, format!("unknown key `{}` in [axis]", e.key)),
        };
        if fields.insert(canonical, e).is_some() {
            return err(e.line, format!("`{canonical}` is set twice in this [axis]"));
        }
    }
    let field = |name: &str| {
        fields.get(name).copied().ok_or(ConfigError {
            line: Some(block.line),
            message: format!("[axis] is missing `{name}`"),
        })
    };

    let pe = field("parameter")?;
    let parameters = pe
        .value
        .split(',')
        .map(|s| {
            s.trim().parse::<Parameter>().map_err(|e| ConfigError {
                line: Some(pe.line),
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let quantity = parameters[0].quantity();
    if parameters.iter().any(|p| p.quantity() != quantity) {
        return err(pe.line, "parameters on one axis must share a unit");
    }
    for p in &parameters {
        p.check_applicable(config).map_err(|e| ConfigError {
            line: Some(pe.line),
            message: e.to_string(),
        })?;
    }

    let endpoint = |name: &str| -> Result<f64, ConfigError> {
        let e = field(name)?;
        let reading = Reading {
            quantity,
            over_2pi: e.key.ends_with("_over_2pi"),
            field: false,
        };
        if reading.over_2pi && quantity != Quantity::Rate {
            return err(e.line, "`_over_2pi` applies to rates only");
        }
        match parse_expr(&e.value, reading, e.line)? {
            Expr::Value(v) => Ok(v),
            Expr::Relative {
                coefficient,
                target,
            } => Ok(coefficient * target.get(config)),
            Expr::Default => err(e.line, "`default` is not allowed for axis endpoints"),
        }
    };
    let start = endpoint("start")?;
    let stop = endpoint("stop")?;

    let ce = field("count")?;
    let count: usize = ce.value.parse().map_err(|_| ConfigError {
        line: Some(ce.line),
        message: format!("count must be a positive integer, got `{}`", ce.value),
    })?;
    let scale = match fields.get("scale").map(|e| (e.value.as_str(), e.line)) {
        None | Some(("linear", _)) => Scale::Linear,
        Some(("log", _)) => Scale::Log,
        Some((other, line)) => {
            return err(
                line,
                format!("scale must be `linear` or `log`, got `{other}`"),
            )
        }
    };
    let axis = SweepAxis {
        parameters,
        start,
        stop,
        count,
        scale,
    };
    axis.validate().map_err(|e| ConfigError {
        line: Some(block.line),
        message: e.to_string(),
    })?;
    Ok(axis)
}

fn unit_for(q: Quantity) -> &'static str {
    match q {
        Quantity::Rate => "rad/s",
        Quantity::Temperature => "K",
    }
}

/// Writes `doc` back out with every value in rad/s or kelvin, in shortest
/// round-trip notation, so that parsing the output gives `doc` exactly.
pub fn serialize_config(doc: &ConfigDocument) -> String {
    let cfg = &doc.config;
    let mut out = String::new();
    let mut section = None;
    for p in Parameter::all() {
        if p.required_mode().is_some_and(|m| m != cfg.drives.mode) {
            continue;
        }
        let s = Section::of(p);
        if section != Some(s) {
            if section.is_some() {
                out.push('\n');
            }
            let _ = writeln!(out, "[{}]", s.name());
            section = Some(s);
        }
        let _ = writeln!(out, "{p} = {} {}", p.get(cfg), unit_for(p.quantity()));
    }
    if !doc.pairs.is_empty() {
        out.push_str("\n[sweep]\n");
        for (a, b) in &doc.pairs {
            let _ = writeln!(out, "pair = {a},{b}");
        }
    }
    for axis in &doc.axes {
        let names: Vec<String> = axis.parameters.iter().map(|p| p.name()).collect();
        let unit = unit_for(axis.parameters[0].quantity());
        let scale = match axis.scale {
            Scale::Linear => "linear",
            Scale::Log => "log",
        };
        let _ = write!(
            out,
            "\n[axis]\nparameter = {}\nstart = {} {unit}\nstop = {} {unit}\ncount = {}\nscale = {scale}\n",
            names.join(", "),
            axis.start,
            axis.stop,
            axis.count
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "
[modes]
omega_a_over_2pi = 370 THz
kappa_a = 0.4 omega_b
omega_b_over_2pi = 10 MHz
kappa_b_over_2pi = 100 Hz
omega_A1_over_2pi = 10 GHz
kappa_A1 = 0.1 omega_b
omega_m1_over_2pi = 10 GHz
kappa_m1 = 0.1 omega_b
omega_A2_over_2pi = 10 GHz
kappa_A2 = 0.1 omega_b
omega_m2_over_2pi = 10 GHz
kappa_m2 = 0.1 omega_b
[couplings]
g_ab = 1.2 kappa_b
g_A1b = 0.2 rad/s
g_A2b = 0.2 rad/s
g_1_over_2pi = 1.7 MHz
g_2_over_2pi = 1.7 MHz
[drives]
[environment]
temperature = 10 mK
";

    fn with(extra: &str) -> String {
        format!("{MINIMAL}{extra}")
    }

    fn line_of(r: Result<ConfigDocument, ConfigError>) -> Option<usize> {
        r.unwrap_err().line
    }

    #[test]
    fn empty_drives_section_means_no_drive() {
        let doc = parse_config(MINIMAL).unwrap();
        let d = &doc.config.drives;
        assert_eq!(d.mode, DetuningMode::Effective);
        assert_eq!(d.optical.rabi, 0.0);
        assert_eq!(d.optical.detuning, 0.0);
        assert!(d
            .microwave
            .iter()
            .all(|m| m.rabi == 0.0 && m.cavity_detuning == 0.0 && m.magnon_detuning == 0.0));
    }

    #[test]
    fn over_2pi_and_relative_values() {
        let cfg = parse_config(MINIMAL).unwrap().config;
        assert_eq!(cfg.mode(Mode::Mechanical).frequency, TAU * 1e7);
        assert_eq!(
            cfg.mode(Mode::Optical).decay,
            0.4 * cfg.mode(Mode::Mechanical).frequency
        );
        assert_eq!(cfg.couplings.magnon_cavity[0], TAU * 1.7e6);
        assert_eq!(cfg.couplings.optomechanical, 1.2 * (TAU * 100.0));
        assert_eq!(cfg.temperature, 0.01);
    }

    #[test]
    fn units_scale_exactly() {
        assert_eq!(parse_scaled("1.7", 6), Some(1.7e6));
        assert_eq!(parse_scaled("1.43e12", 0), Some(1.43e12));
        assert_eq!(parse_scaled("2.5e-3", 6), Some(2.5e3));
        assert_eq!(parse_scaled("10", -3), Some(0.01));
        assert_eq!(parse_scaled("inf", 0), None);
        assert_eq!(parse_scaled("1e308", 3), None);
    }

    #[test]
    fn magnon_frequency_from_tesla() {
        let text = MINIMAL.replace("omega_m1_over_2pi = 10 GHz", "omega_m1 = 0.25 T");
        let cfg = parse_config(&text).unwrap().config;
        assert_eq!(
            cfg.mode(Mode::Magnon1).frequency,
            magnon_frequency_from_field(0.25).unwrap()
        );
        let text = MINIMAL.replace("omega_A1_over_2pi = 10 GHz", "omega_A1 = 0.25 T");
        assert_eq!(line_of(parse_config(&text)), Some(7));
    }

    #[test]
    fn default_keyword_takes_the_default_value() {
        let text = MINIMAL.replace("g_A1b = 0.2 rad/s", "g_A1b = default");
        let cfg = parse_config(&text).unwrap().config;
        assert_eq!(
            cfg.couplings.cavity_mechanical[0],
            SystemConfig::default_point().couplings.cavity_mechanical[0]
        );
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            line_of(parse_config(
                &MINIMAL.replace("[drives]", "[drives]\nOmega_0 = 3")
            )),
            Some(22)
        );
        assert_eq!(
            line_of(parse_config(
                &MINIMAL.replace("[drives]", "[drives]\nkapa_a = 1 Hz")
            )),
            Some(22)
        );
        assert_eq!(
            line_of(parse_config(
                &MINIMAL.replace("[drives]", "[drives]\nkappa_a = 1 Hz")
            )),
            Some(22)
        );
        assert_eq!(
            line_of(parse_config(&MINIMAL.replace(
                "[drives]",
                "[drives]\nDelta_eff_a = 1 Hz\nDelta_A1 = 0 Hz"
            ))),
            Some(23)
        );
        assert_eq!(
            line_of(parse_config(
                &MINIMAL.replace("g_A1b = 0.2 rad/s", "g_A1b = 0.2 furlongs")
            )),
            Some(17)
        );
        assert_eq!(
            line_of(parse_config(&MINIMAL.replace("g_A2b = 0.2 rad/s\n", ""))),
            Some(15)
        );
        assert_eq!(
            line_of(parse_config(&MINIMAL.replace("[modes]", "[mode]"))),
            Some(2)
        );
        assert_eq!(
            line_of(parse_config(
                &MINIMAL.replace("kappa_b_over_2pi = 100 Hz", "kappa_b = 1 kappa_b")
            )),
            Some(6)
        );
    }

    #[test]
    fn circular_references_are_reported() {
        let text = MINIMAL
            .replace("omega_b_over_2pi = 10 MHz", "omega_b = 2 kappa_b")
            .replace("kappa_b_over_2pi = 100 Hz", "kappa_b = 0.01 kappa_a");
        let e = parse_config(&text).unwrap_err();
        assert!(e.message.contains("circular"), "{e}");
    }

    #[test]
    fn unphysical_values_are_rejected() {
        let e = parse_config(&MINIMAL.replace("kappa_A1 = 0.1 omega_b", "kappa_A1 = -1 Hz"))
            .unwrap_err();
        assert!(e.line.is_none() && e.message.contains("decay"), "{e}");
    }

    #[test]
    fn sweep_sections() {
        let doc = parse_config(&with(
            "[sweep]\npair = m1,m2\npair = A1, b\n[axis]\nparameter = Delta_eff_A1, Delta_m1\nstart = -1 omega_b\nstop_over_2pi = 10 MHz\ncount = 11\n[axis]\nparameter = g_1, g_2\nstart_over_2pi = 0.1 MHz\nstop_over_2pi = 20 MHz\ncount = 5\nscale = log\n",
        ))
        .unwrap();
        assert_eq!(
            doc.pairs,
            vec![
                (Mode::Magnon1, Mode::Magnon2),
                (Mode::Cavity1, Mode::Mechanical)
            ]
        );
        assert_eq!(doc.axes.len(), 2);
        assert_eq!(doc.axes[0].start, -TAU * 1e7);
        assert_eq!(doc.axes[0].stop, TAU * 1e7);
        assert_eq!(doc.axes[1].scale, Scale::Log);
        assert_eq!(doc.axes[1].start, TAU * 1e5);
        doc.sweep_spec().validate().unwrap();

        let bad = with("[axis]\nparameter = Delta_A1\nstart = 0 Hz\nstop = 1 Hz\ncount = 3\n");
        assert_eq!(line_of(parse_config(&bad)), Some(25));
        let bad = with("[axis]\nparameter = g_1\nstart = 0 Hz\nstop = 1 Hz\n");
        assert_eq!(line_of(parse_config(&bad)), Some(24));
        let bad =
            with("[axis]\nparameter = g_1, temperature\nstart = 0 Hz\nstop = 1 Hz\ncount = 3\n");
        assert_eq!(line_of(parse_config(&bad)), Some(25));
    }

    #[test]
    fn serialization_round_trips() {
        let doc = parse_config(&with(
            "[sweep]\npair = A1,m1\n[axis]\nparameter = temperature\nstart = 1 mK\nstop = 0.2 K\ncount = 7\n",
        ))
        .unwrap();
        let text = serialize_config(&doc);
        assert_eq!(parse_config(&text).unwrap(), doc);
        assert_eq!(serialize_config(&parse_config(&text).unwrap()), text);

        let mut bare = ConfigDocument::new(SystemConfig::default_point());
        bare.config.drives.mode = DetuningMode::Bare;
        bare.config.drives.optical.detuning = -0.0;
        let back = parse_config(&serialize_config(&bare)).unwrap();
        assert_eq!(back, bare);
        assert!(back.config.drives.optical.detuning.is_sign_negative());
    }
}
