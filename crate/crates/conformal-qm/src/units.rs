//! Physical constants, unit systems, and derived scales.
//!
//! Everything dimensional lives here: ħ, μ, e, ε₀, ω and the derived
//! Bohr radius, oscillator length, and energy levels. The rest of the
//! crate works with whatever unit system these carry, so all residual
//! checks are unit-agnostic.
//!
//! The default unit system is Hartree atomic units (ħ = μ = e = 1,
//! 4πε₀ = 1), in which the Bohr radius is exactly 1.0 and the hydrogen
//! ground energy is exactly -0.5 in IEEE arithmetic. This keeps the
//! exponent range of residual checks tame.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Which bound system a calculation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    Hydrogen,
    Oscillator,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            System::Hydrogen => write!(f, "hydrogen"),
            System::Oscillator => write!(f, "oscillator"),
        }
    }
}

impl FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hydrogen" | "h" => Ok(System::Hydrogen),
            "oscillator" | "ho" | "osc" => Ok(System::Oscillator),
            other => Err(Error::Config(format!("unknown system '{other}'"))),
        }
    }
}

/// Raw physical constants defining a unit system.
///
/// `omega` (the trap angular frequency) only matters for the oscillator;
/// `charge_e` and `epsilon0` only for hydrogen. `m_e`/`m_p` are optional:
/// when both are present the reduced mass is validated against `mu`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhysicalConstants {
    pub hbar: f64,
    pub mu: f64,
    pub charge_e: f64,
    pub epsilon0: f64,
    pub omega: f64,
    pub m_e: Option<f64>,
    pub m_p: Option<f64>,
}

/// CODATA 2018 values, SI units.
pub mod codata {
    pub const HBAR: f64 = 1.054_571_817e-34;
    pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
    pub const PROTON_MASS: f64 = 1.672_621_923_69e-27;
    pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
    pub const VACUUM_PERMITTIVITY: f64 = 8.854_187_812_8e-12;
    /// Bohr radius as tabulated (electron mass, not reduced mass).
    pub const BOHR_RADIUS: f64 = 5.291_772_109_03e-11;
}

/// Reduced mass of a two-body system.
pub fn reduced_mass(m_a: f64, m_b: f64) -> f64 {
    m_a * m_b / (m_a + m_b)
}

impl PhysicalConstants {
    /// Hartree atomic units: ħ = μ = e = 1 and 4πε₀ = 1.
    pub fn atomic() -> Self {
        PhysicalConstants {
            hbar: 1.0,
            mu: 1.0,
            charge_e: 1.0,
            epsilon0: 1.0 / (4.0 * PI),
            omega: 1.0,
            m_e: None,
            m_p: None,
        }
    }

    /// SI constants (CODATA 2018) with the reduced electron-proton mass.
    pub fn si() -> Self {
        PhysicalConstants {
            hbar: codata::HBAR,
            mu: reduced_mass(codata::ELECTRON_MASS, codata::PROTON_MASS),
            charge_e: codata::ELEMENTARY_CHARGE,
            epsilon0: codata::VACUUM_PERMITTIVITY,
            omega: 1.0,
            m_e: Some(codata::ELECTRON_MASS),
            m_p: Some(codata::PROTON_MASS),
        }
    }

    /// Parse constants from `key=value` lines. Unknown keys are rejected;
    /// missing keys fall back to the atomic-unit defaults.
    ///
    /// Recognized keys: `hbar`, `mu`, `e` (or `charge_e`), `epsilon0`,
    /// `omega`, `m_e`, `m_p`. Lines starting with `#` are comments.
    pub fn parse_key_values(text: &str) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key=value, got '{line}'", lineno + 1))
            })?;
            let value: f64 = value.trim().parse().map_err(|_| {
                Error::Config(format!("line {}: cannot parse '{}' as a number", lineno + 1, value.trim()))
            })?;
            map.insert(key.trim().to_string(), value);
        }

        let mu_given = map.contains_key("mu");
        let mut c = PhysicalConstants::atomic();
        for (key, value) in map {
            match key.as_str() {
                "hbar" => c.hbar = value,
                "mu" => c.mu = value,
                "e" | "charge_e" => c.charge_e = value,
                "epsilon0" => c.epsilon0 = value,
                "omega" => c.omega = value,
                "m_e" => c.m_e = Some(value),
                "m_p" => c.m_p = Some(value),
                other => return Err(Error::Config(format!("unknown constant '{other}'"))),
            }
        }
        // mu not given explicitly but both masses are: derive it.
        if !mu_given {
            if let (Some(me), Some(mp)) = (c.m_e, c.m_p) {
                c.mu = reduced_mass(me, mp);
            }
        }
        c.validate()?;
        Ok(c)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse_key_values(&text)
    }

    /// Positivity of every field, and consistency of `mu` with the
    /// constituent masses when both are present (relative 1e-12).
    pub fn validate(&self) -> Result<()> {
        let fields: [(&'static str, f64); 5] = [
            ("hbar", self.hbar),
            ("mu", self.mu),
            ("charge_e", self.charge_e),
            ("epsilon0", self.epsilon0),
            ("omega", self.omega),
        ];
        for (field, value) in fields {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidInput {
                    field,
                    requirement: "strictly positive and finite",
                    value,
                });
            }
        }
        for (field, value) in [("m_e", self.m_e), ("m_p", self.m_p)] {
            if let Some(v) = value {
                if !(v > 0.0) || !v.is_finite() {
                    return Err(Error::InvalidInput {
                        field,
                        requirement: "strictly positive and finite",
                        value: v,
                    });
                }
            }
        }
        if let (Some(me), Some(mp)) = (self.m_e, self.m_p) {
            let mu = reduced_mass(me, mp);
            if (mu - self.mu).abs() > 1e-12 * mu {
                return Err(Error::InvalidInput {
                    field: "mu",
                    requirement: "equal to m_e*m_p/(m_e+m_p) within 1e-12",
                    value: self.mu,
                });
            }
        }
        Ok(())
    }

    /// e²/(4πε₀), the Coulomb coupling.
    pub fn coulomb_coupling(&self) -> f64 {
        self.charge_e * self.charge_e / (4.0 * PI * self.epsilon0)
    }

    /// Bohr radius 4πε₀ħ²/(μe²).
    pub fn bohr_radius(&self) -> f64 {
        4.0 * PI * self.epsilon0 * self.hbar * self.hbar / (self.mu * self.charge_e * self.charge_e)
    }
}

/// Where a unit system comes from: a preset or a constants file.
#[derive(Debug, Clone, PartialEq)]
pub enum UnitSpec {
    Atomic,
    Si,
    File(std::path::PathBuf),
}

impl UnitSpec {
    pub fn load(&self) -> Result<PhysicalConstants> {
        match self {
            UnitSpec::Atomic => Ok(PhysicalConstants::atomic()),
            UnitSpec::Si => Ok(PhysicalConstants::si()),
            UnitSpec::File(path) => PhysicalConstants::from_file(path),
        }
    }

    pub fn label(&self) -> String {
        match self {
            UnitSpec::Atomic => "atomic".to_string(),
            UnitSpec::Si => "si".to_string(),
            UnitSpec::File(path) => format!("file:{}", path.display()),
        }
    }
}

impl FromStr for UnitSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "atomic" => Ok(UnitSpec::Atomic),
            "si" => Ok(UnitSpec::Si),
            other => {
                if let Some(path) = other.strip_prefix("file:") {
                    Ok(UnitSpec::File(path.into()))
                } else {
                    Err(Error::Config(format!(
                        "units must be 'atomic', 'si', or 'file:<path>', got '{other}'"
                    )))
                }
            }
        }
    }
}

/// Derived scales for one system: length scale, map exponent, and energies.
///
/// For hydrogen the map length scale `b` equals the Bohr radius and
/// `lambda` = 1; for the oscillator `b` = sqrt(2ħ/μω) and `lambda` = 2.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DerivedScales {
    pub system: System,
    pub hbar: f64,
    pub mu: f64,
    /// Trap frequency; only meaningful for the oscillator.
    pub omega: f64,
    /// e²/(4πε₀); only meaningful for hydrogen.
    pub coulomb: f64,
    /// Bohr radius 4πε₀ħ²/(μe²).
    pub alpha0: f64,
    /// Map length scale.
    pub b: f64,
    /// Map exponent.
    pub lambda: f64,
    /// Ground-state energy E₀.
    pub e_ground: f64,
}

impl DerivedScales {
    /// Hydrogen level E₀/n².
    pub fn hydrogen_level(&self, n: u32) -> f64 {
        self.e_ground / (n as f64 * n as f64)
    }

    /// Oscillator level ħω(2n_r + l + 3/2).
    pub fn oscillator_level(&self, n_r: u32, l: u32) -> f64 {
        self.hbar * self.omega * (2.0 * n_r as f64 + l as f64 + 1.5)
    }

    /// Central potential V(r) for this system.
    pub fn potential(&self, r: f64) -> f64 {
        match self.system {
            System::Hydrogen => -self.coulomb / r,
            System::Oscillator => 0.5 * self.mu * self.omega * self.omega * r * r,
        }
    }

    /// The natural length scale of bound states: α₀ for hydrogen, b for
    /// the oscillator.
    pub fn length_scale(&self) -> f64 {
        match self.system {
            System::Hydrogen => self.alpha0,
            System::Oscillator => self.b,
        }
    }
}

/// Build the derived scales for a system from raw constants.
///
/// The hydrogen path ignores ω; the oscillator path ignores e and ε₀
/// (they are carried through for reporting but do not enter b or E₀).
pub fn derive_scales(constants: &PhysicalConstants, system: System) -> Result<DerivedScales> {
    constants.validate()?;
    let alpha0 = constants.bohr_radius();
    let (b, lambda, e_ground) = match system {
        System::Hydrogen => {
            let b = alpha0;
            let e0 = -constants.hbar * constants.hbar / (2.0 * constants.mu * b * b);
            (b, 1.0, e0)
        }
        System::Oscillator => {
            let b = (2.0 * constants.hbar / (constants.mu * constants.omega)).sqrt();
            let e0 = 1.5 * constants.hbar * constants.omega;
            (b, 2.0, e0)
        }
    };
    Ok(DerivedScales {
        system,
        hbar: constants.hbar,
        mu: constants.mu,
        omega: constants.omega,
        coulomb: constants.coulomb_coupling(),
        alpha0,
        b,
        lambda,
        e_ground,
    })
}
