//! Per-configuration lifetime measurement documents; every quantity carries
//! its unit in the field name.
//!
//! ```json
//! {
//!   "config": "wispe",
//!   "t1_us": 80.0,
//!   "qubit_port":   { "port_id": "q",  "amplitude_v": 0.02, "duration_ns": 40, "attenuation_db": 60 },
//!   "readout_port": { "port_id": "ro", "amplitude_v": 1.2,  "duration_ns": 40, "attenuation_db": 60 }
//! }
//! ```

use purcellnet::loss_budget::{ConfigId, ConfigMeasurement, PulseRecord};
use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PulseDoc {
    port_id: String,
    amplitude_v: f64,
    duration_ns: f64,
    attenuation_db: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MeasurementDoc {
    #[serde(default)]
    config: Option<ConfigId>,
    t1_us: f64,
    qubit_port: PulseDoc,
    readout_port: PulseDoc,
}

impl PulseDoc {
    fn record(self) -> PulseRecord<f64> {
        PulseRecord::new(self.port_id, self.amplitude_v, self.duration_ns * 1e-9, self.attenuation_db)
    }
}

pub fn config_name(c: ConfigId) -> &'static str {
    match c {
        ConfigId::Wispe => "wispe",
        ConfigId::AntiWispe => "anti_wispe",
    }
}

/// Parses one measurement; `expected` is the configuration the file was supplied for.
pub fn parse_measurement(text: &str, expected: ConfigId) -> Result<ConfigMeasurement<f64>, String> {
    let doc: MeasurementDoc = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if let Some(c) = doc.config {
        if c != expected {
            return Err(format!(
                "file declares config \"{}\" but was given as the {} measurement",
                config_name(c),
                config_name(expected)
            ));
        }
    }
    let m = ConfigMeasurement {
        config: expected,
        t1_measured: doc.t1_us * 1e-6,
        qubit_port_pulse: doc.qubit_port.record(),
        readout_port_pulse: doc.readout_port.record(),
    };
    m.validate().map_err(|e| e.to_string())?;
    Ok(m)
}
