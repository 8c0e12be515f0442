//! `key = value` configuration files. Command-line flags take precedence.

use std::path::Path;

use crate::sphere::{DEFAULT_SOLVE_TOL, SCAN_SAMPLES};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub tol: f64,
    pub scan_samples: usize,
    pub solve_samples: usize,
    pub ode_step: f64,
    pub ode_s_max: f64,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            tol: DEFAULT_SOLVE_TOL,
            scan_samples: 1000,
            solve_samples: SCAN_SAMPLES,
            ode_step: 1e-3,
            ode_s_max: 20.0,
        }
    }
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Blank lines and `#` comments are ignored; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut s = Self::default();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = |e: &dyn std::fmt::Display| Error::Config(format!("line {}: {key}: {e}", n + 1));
            match key {
                "tol" => s.tol = value.parse().map_err(|e| bad(&e))?,
                "scan_samples" => s.scan_samples = value.parse().map_err(|e| bad(&e))?,
                "solve_samples" => s.solve_samples = value.parse().map_err(|e| bad(&e))?,
                "ode_step" => s.ode_step = value.parse().map_err(|e| bad(&e))?,
                "ode_s_max" => s.ode_s_max = value.parse().map_err(|e| bad(&e))?,
                _ => return Err(Error::Config(format!("line {}: unknown key {key}", n + 1))),
            }
        }
        if !(s.tol > 0.0) {
            return Err(Error::Config(format!("tol must be positive, got {}", s.tol)));
        }
        if s.scan_samples < 2 || s.solve_samples < 2 {
            return Err(Error::Config("sample counts must be at least 2".into()));
        }
        Ok(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_overrides() {
        let s = Settings::parse("# comment\n tol = 1e-10\nscan_samples=200 # trailing\n\node_step = 0.002\n").unwrap();
        assert_eq!(s.tol, 1e-10);
        assert_eq!(s.scan_samples, 200);
        assert_eq!(s.ode_step, 0.002);
        assert_eq!(s.ode_s_max, 20.0);
    }

    #[test]
    fn rejects_bad_input() {
        for text in ["tol", "colour = red", "tol = abc", "tol = -1", "scan_samples = 1"] {
            assert_eq!(Settings::parse(text).unwrap_err().code(), "CONFIG_ERROR", "{text}");
        }
    }
}
