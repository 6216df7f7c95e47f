//! Unit-tagged physical quantities as they appear in input documents,
//! e.g. `"70 fF"`, `"7 GHz"`, `"12.5 mm"`, `"50 Ω"`.

use std::fmt;
use std::marker::PhantomData;

use serde::de::{self, Deserialize, Deserializer, Visitor};

pub trait Dimension {
    const NAME: &'static str;
    const EXAMPLE: &'static str;
    /// Accepted unit spellings and their SI scale factors.
    const UNITS: &'static [(&'static str, f64)];
}

macro_rules! dimension {
    ($ty:ident, $name:literal, $example:literal, [$(($unit:literal, $scale:expr)),* $(,)?]) => {
        #[derive(Debug, Clone, Copy, PartialEq)]
        pub struct $ty;
        impl Dimension for $ty {
            const NAME: &'static str = $name;
            const EXAMPLE: &'static str = $example;
            const UNITS: &'static [(&'static str, f64)] = &[$(($unit, $scale)),*];
        }
    };
}

dimension!(FrequencyDim, "frequency", "7 GHz", [("Hz", 1.0), ("kHz", 1e3), ("MHz", 1e6), ("GHz", 1e9), ("THz", 1e12)]);
dimension!(
    CapacitanceDim,
    "capacitance",
    "70 fF",
    [("F", 1.0), ("mF", 1e-3), ("uF", 1e-6), ("µF", 1e-6), ("nF", 1e-9), ("pF", 1e-12), ("fF", 1e-15), ("aF", 1e-18)]
);
dimension!(
    InductanceDim,
    "inductance",
    "4 nH",
    [("H", 1.0), ("mH", 1e-3), ("uH", 1e-6), ("µH", 1e-6), ("nH", 1e-9), ("pH", 1e-12)]
);
dimension!(
    LengthDim,
    "length",
    "12 mm",
    [("m", 1.0), ("cm", 1e-2), ("mm", 1e-3), ("um", 1e-6), ("µm", 1e-6), ("nm", 1e-9)]
);
dimension!(
    ResistanceDim,
    "resistance",
    "50 Ω",
    [
        ("Ω", 1.0),
        ("ohm", 1.0),
        ("Ohm", 1.0),
        ("mΩ", 1e-3),
        ("mohm", 1e-3),
        ("kΩ", 1e3),
        ("kohm", 1e3),
        ("MΩ", 1e6),
        ("Mohm", 1e6),
    ]
);
dimension!(VelocityDim, "velocity", "2.9979e8 m/s", [("m/s", 1.0), ("km/s", 1e3)]);
dimension!(AttenuationDim, "attenuation constant", "0.1 Np/m", [("Np/m", 1.0), ("dB/m", std::f64::consts::LN_10 / 20.0)]);

/// A value in SI base units, parsed from `"<number> <unit>"`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity<D> {
    pub si: f64,
    _dim: PhantomData<D>,
}

pub type Frequency = Quantity<FrequencyDim>;
pub type Capacitance = Quantity<CapacitanceDim>;
pub type Inductance = Quantity<InductanceDim>;
pub type Length = Quantity<LengthDim>;
pub type Resistance = Quantity<ResistanceDim>;
pub type Velocity = Quantity<VelocityDim>;
pub type Attenuation = Quantity<AttenuationDim>;

impl<D: Dimension> Quantity<D> {
    pub fn new(si: f64) -> Self {
        Self { si, _dim: PhantomData }
    }

    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        // longest numeric prefix; tolerates "7GHz" as well as "7 GHz"
        let numeric = s
            .char_indices()
            .take_while(|&(_, c)| c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E'))
            .map(|(i, c)| i + c.len_utf8())
            .last()
            .unwrap_or(0);
        let (value, rest) = (1..=numeric)
            .rev()
            .find_map(|end| s[..end].parse::<f64>().ok().map(|v| (v, &s[end..])))
            .ok_or_else(|| format!("expected a {} such as \"{}\", got \"{s}\"", D::NAME, D::EXAMPLE))?;
        if !value.is_finite() {
            return Err(format!("{} \"{s}\" is not finite", D::NAME));
        }
        let unit = rest.trim();
        if unit.is_empty() {
            return Err(format!("{} \"{s}\" has no unit (e.g. \"{}\")", D::NAME, D::EXAMPLE));
        }
        let scale = D::UNITS.iter().find(|(u, _)| *u == unit).map(|&(_, k)| k).ok_or_else(|| {
            let known: Vec<&str> = D::UNITS.iter().map(|(u, _)| *u).collect();
            format!("unit \"{unit}\" is not a {} unit (expected one of {})", D::NAME, known.join(", "))
        })?;
        Ok(Self::new(value * scale))
    }
}

impl<'de, D: Dimension> Deserialize<'de> for Quantity<D> {
    fn deserialize<De: Deserializer<'de>>(deserializer: De) -> Result<Self, De::Error> {
        struct V<D>(PhantomData<D>);
        impl<D: Dimension> Visitor<'_> for V<D> {
            type Value = Quantity<D>;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "a {} with unit, e.g. \"{}\"", D::NAME, D::EXAMPLE)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                Quantity::parse(v).map_err(E::custom)
            }
        }
        deserializer.deserialize_str(V(PhantomData))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_prefixed_units() {
        assert_eq!(Capacitance::parse("70 fF").unwrap().si, 70.0 * 1e-15);
        assert_eq!(Frequency::parse("7GHz").unwrap().si, 7e9);
        assert_eq!(Frequency::parse(" 1.5e3 MHz ").unwrap().si, 1.5e9);
        assert_eq!(Resistance::parse("50 Ω").unwrap().si, 50.0);
        assert_eq!(Resistance::parse("1.2 kohm").unwrap().si, 1200.0);
        assert_eq!(Length::parse("-3 mm").unwrap().si, -3e-3);
        assert!((Attenuation::parse("20 dB/m").unwrap().si - std::f64::consts::LN_10).abs() < 1e-15);
    }

    #[test]
    fn rejects_missing_or_foreign_units() {
        assert!(Frequency::parse("7").unwrap_err().contains("no unit"));
        assert!(Frequency::parse("7 fF").unwrap_err().contains("not a frequency unit"));
        assert!(Capacitance::parse("fF").is_err());
        assert!(Capacitance::parse("inf fF").is_err());
    }

    #[test]
    fn bare_json_numbers_are_rejected() {
        let e = serde_json::from_str::<Frequency>("7e9").unwrap_err();
        assert!(e.to_string().contains("with unit"), "{e}");
        let ok: Frequency = serde_json::from_str("\"7 GHz\"").unwrap();
        assert_eq!(ok.si, 7e9);
    }
}
