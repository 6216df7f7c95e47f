use crate::error::NetworkError;
use crate::network::{ComplexImmittance, TwoPortAbcd};
use crate::scalar::{cx, Real};

/// Uniform transmission-line section.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TLine<T> {
    /// Characteristic impedance, ohms.
    pub z0: T,
    /// Physical length, meters. Zero is allowed and yields the identity matrix.
    pub length: T,
    /// Phase velocity, m/s.
    pub vp: T,
    /// Attenuation constant, nepers per meter.
    pub alpha: T,
}

impl<T: Real> TLine<T> {
    pub fn lossless(z0: T, length: T, vp: T) -> Self {
        Self { z0, length, vp, alpha: T::zero() }
    }

    /// Same line with a different length.
    pub fn with_length(self, length: T) -> Self {
        Self { length, ..self }
    }

    /// Fundamental of the open-open (λ/2) resonance, Hz.
    pub fn half_wave_frequency(&self) -> T {
        self.vp / (T::lit(2.0) * self.length)
    }

    /// Total shunt capacitance `ℓ / (vp · Z0)`, farads.
    pub fn total_capacitance(&self) -> T {
        self.length / (self.vp * self.z0)
    }

    pub fn validate(&self) -> Result<(), NetworkError> {
        positive("tline z0", self.z0)?;
        positive("tline vp", self.vp)?;
        non_negative("tline length", self.length)?;
        non_negative("tline alpha", self.alpha)
    }

    /// Transfer matrix at angular frequency `omega` using `γ = α + jω/vp`.
    pub fn abcd(&self, omega: T) -> TwoPortAbcd<T> {
        let gl = cx(self.alpha, omega / self.vp) * self.length;
        let ch = gl.cosh();
        let sh = gl.sinh();
        let z0 = cx(self.z0, T::zero());
        TwoPortAbcd::new(ch, z0 * sh, sh / z0, ch)
    }
}

/// Two-terminal circuit elements and line sections.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Element<T> {
    Resistor { r: T },
    Capacitor { c: T },
    Inductor { l: T },
    /// R, L and C all in parallel; `r: None` is a lossless tank.
    ParallelRlc { r: Option<T>, l: T, c: T },
    TLine(TLine<T>),
}

fn positive<T: Real>(what: &str, v: T) -> Result<(), NetworkError> {
    if v.is_finite() && v > T::zero() {
        Ok(())
    } else {
        Err(NetworkError::InvalidElement(format!("{what} must be positive and finite, got {v}")))
    }
}

fn non_negative<T: Real>(what: &str, v: T) -> Result<(), NetworkError> {
    if v.is_finite() && v >= T::zero() {
        Ok(())
    } else {
        Err(NetworkError::InvalidElement(format!("{what} must be non-negative and finite, got {v}")))
    }
}

pub(crate) fn check_omega<T: Real>(omega: T) -> Result<(), NetworkError> {
    if omega.is_finite() && omega > T::zero() {
        Ok(())
    } else {
        Err(NetworkError::InvalidFrequency(omega.as_f64()))
    }
}

impl<T: Real> Element<T> {
    pub fn resistor(r: T) -> Self {
        Element::Resistor { r }
    }

    pub fn capacitor(c: T) -> Self {
        Element::Capacitor { c }
    }

    pub fn inductor(l: T) -> Self {
        Element::Inductor { l }
    }

    pub fn parallel_lc(l: T, c: T) -> Self {
        Element::ParallelRlc { r: None, l, c }
    }

    pub fn validate(&self) -> Result<(), NetworkError> {
        match *self {
            Element::Resistor { r } => positive("resistance", r),
            Element::Capacitor { c } => positive("capacitance", c),
            Element::Inductor { l } => positive("inductance", l),
            Element::ParallelRlc { r, l, c } => {
                if let Some(r) = r {
                    positive("parallel resistance", r)?;
                }
                positive("parallel inductance", l)?;
                positive("parallel capacitance", c)
            }
            Element::TLine(t) => t.validate(),
        }
    }

    /// Two-terminal immittance of a lumped element in its natural form
    /// (impedance for R, L, C; admittance for the parallel tank).
    /// Line sections are two-ports and return `None`.
    pub fn immittance(&self, omega: T) -> Option<ComplexImmittance<T>> {
        let j = cx(T::zero(), T::one());
        match *self {
            Element::Resistor { r } => Some(ComplexImmittance::impedance(cx(r, T::zero()))),
            Element::Capacitor { c } => Some(ComplexImmittance::impedance((j * omega * c).inv())),
            Element::Inductor { l } => Some(ComplexImmittance::impedance(j * omega * l)),
            Element::ParallelRlc { r, l, c } => {
                let g = r.map_or(T::zero(), |r| r.recip());
                let b = omega * c - (omega * l).recip();
                Some(ComplexImmittance::admittance(cx(g, b)))
            }
            Element::TLine(_) => None,
        }
    }

    /// Transfer matrix of the element placed in series (or the line section itself).
    pub fn series_abcd(&self, omega: T) -> Result<TwoPortAbcd<T>, NetworkError> {
        self.validate()?;
        check_omega(omega)?;
        Ok(match self {
            Element::TLine(t) => t.abcd(omega),
            lumped => TwoPortAbcd::series(lumped.immittance(omega).expect("lumped element").z()),
        })
    }

    /// Transfer matrix of a lumped element placed in shunt.
    pub fn shunt_abcd(&self, omega: T) -> Result<TwoPortAbcd<T>, NetworkError> {
        self.validate()?;
        check_omega(omega)?;
        match self {
            Element::TLine(_) => Err(NetworkError::InvalidElement(
                "a line section has no shunt stamp; attach it through a subtree".into(),
            )),
            lumped => Ok(TwoPortAbcd::shunt(lumped.immittance(omega).expect("lumped element").y())),
        }
    }
}

/// Standard stamp of `e` at `omega`: series stamp for lumped elements,
/// propagation matrix for line sections.
pub fn element_abcd<T: Real>(e: &Element<T>, omega: T) -> Result<TwoPortAbcd<T>, NetworkError> {
    e.series_abcd(omega)
}
