//! One-port composition trees and their input admittance.
//!
//! A tree is read from the observation node outward. Every interior node
//! adds one element or subtree to what lies behind it and every leaf is a
//! termination, so evaluation is a single recursive pass.

use crate::error::{NetworkError, TreePath};
use crate::network::element::check_omega;
use crate::network::{ComplexImmittance, Element, ImmittanceKind, TLine};
use crate::scalar::{cx, is_finite, Cx, Real};

#[derive(Debug, Clone, PartialEq)]
pub enum NetworkTree<T> {
    /// Open circuit, `Y = 0`.
    Open,
    /// Short circuit to ground.
    Short,
    /// Resistor to ground, ohms.
    Resistor(T),
    /// `element` in series between this node and `rest`.
    Series { element: Element<T>, rest: Box<NetworkTree<T>> },
    /// `branch` and `rest` both hang off this node.
    Shunt { branch: Box<NetworkTree<T>>, rest: Box<NetworkTree<T>> },
    /// Line section between this node and `rest`.
    Line { line: TLine<T>, rest: Box<NetworkTree<T>> },
}

/// Result of evaluating a tree at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub enum PortValue<T> {
    Open,
    /// Exact short; `path` points at the subtree that produced it.
    Short { path: TreePath },
    Finite(ComplexImmittance<T>),
}

impl<T: Real> NetworkTree<T> {
    pub fn open() -> Self {
        NetworkTree::Open
    }

    pub fn short() -> Self {
        NetworkTree::Short
    }

    pub fn resistor(r: T) -> Self {
        NetworkTree::Resistor(r)
    }

    pub fn series(element: Element<T>, rest: Self) -> Self {
        NetworkTree::Series { element, rest: Box::new(rest) }
    }

    pub fn shunt(branch: Self, rest: Self) -> Self {
        NetworkTree::Shunt { branch: Box::new(branch), rest: Box::new(rest) }
    }

    pub fn line(line: TLine<T>, rest: Self) -> Self {
        NetworkTree::Line { line, rest: Box::new(rest) }
    }

    /// Number of nodes on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            NetworkTree::Open | NetworkTree::Short | NetworkTree::Resistor(_) => 1,
            NetworkTree::Series { rest, .. } | NetworkTree::Line { rest, .. } => 1 + rest.depth(),
            NetworkTree::Shunt { branch, rest } => 1 + branch.depth().max(rest.depth()),
        }
    }

    /// Visits every element and line section, depth first.
    pub fn for_each_element(&self, f: &mut impl FnMut(&Element<T>)) {
        match self {
            NetworkTree::Open | NetworkTree::Short | NetworkTree::Resistor(_) => {}
            NetworkTree::Series { element, rest } => {
                f(element);
                rest.for_each_element(f);
            }
            NetworkTree::Line { line, rest } => {
                f(&Element::TLine(*line));
                rest.for_each_element(f);
            }
            NetworkTree::Shunt { branch, rest } => {
                branch.for_each_element(f);
                rest.for_each_element(f);
            }
        }
    }

    /// Immittance seen at the observation node, with opens and shorts kept symbolic.
    pub fn evaluate(&self, omega: T) -> Result<PortValue<T>, NetworkError> {
        check_omega(omega)?;
        let mut path = Vec::new();
        eval(self, omega, &mut path)
    }

    /// Input admittance at the observation node, siemens.
    pub fn input_admittance(&self, omega: T) -> Result<ComplexImmittance<T>, NetworkError> {
        input_admittance(self, omega)
    }
}

/// Input admittance of `net` at angular frequency `omega`.
///
/// An open network yields `Y = 0`; an exact short is a [`NetworkError::Singularity`].
pub fn input_admittance<T: Real>(net: &NetworkTree<T>, omega: T) -> Result<ComplexImmittance<T>, NetworkError> {
    match net.evaluate(omega)? {
        PortValue::Open => Ok(ComplexImmittance::admittance(cx(T::zero(), T::zero()))),
        PortValue::Short { path } => Err(NetworkError::Singularity { path }),
        PortValue::Finite(im) => {
            let y = im.to_admittance();
            if is_finite(y.value) {
                Ok(y)
            } else {
                Err(NetworkError::Singularity { path: Vec::new() })
            }
        }
    }
}

fn zero<T: Real>(z: Cx<T>) -> bool {
    z.re == T::zero() && z.im == T::zero()
}

fn finite<T: Real>(im: ComplexImmittance<T>, path: &TreePath) -> Result<PortValue<T>, NetworkError> {
    if is_finite(im.value) {
        Ok(PortValue::Finite(im))
    } else {
        Err(NetworkError::NumericOverflow { path: path.clone() })
    }
}

/// Impedance of a port value, `None` when open.
fn as_impedance<T: Real>(p: &PortValue<T>) -> Option<Cx<T>> {
    match p {
        PortValue::Open => None,
        PortValue::Short { .. } => Some(cx(T::zero(), T::zero())),
        PortValue::Finite(im) => match im.kind {
            ImmittanceKind::Impedance => Some(im.value),
            ImmittanceKind::Admittance if zero(im.value) => None,
            ImmittanceKind::Admittance => Some(im.value.inv()),
        },
    }
}

fn eval<T: Real>(node: &NetworkTree<T>, omega: T, path: &mut TreePath) -> Result<PortValue<T>, NetworkError> {
    match node {
        NetworkTree::Open => Ok(PortValue::Open),
        NetworkTree::Short => Ok(PortValue::Short { path: path.clone() }),
        NetworkTree::Resistor(r) => {
            Element::resistor(*r).validate()?;
            Ok(PortValue::Finite(ComplexImmittance::admittance(cx(r.recip(), T::zero()))))
        }
        NetworkTree::Series { element: Element::TLine(t), rest } => eval_line(t, rest, omega, path, "series.rest"),
        NetworkTree::Series { element, rest } => {
            element.validate()?;
            path.push("series.rest");
            let behind = eval(rest, omega, path)?;
            path.pop();
            let Some(z_rest) = as_impedance(&behind) else {
                return Ok(PortValue::Open);
            };
            let own = element.immittance(omega).expect("lumped element");
            let z_own = match own.kind {
                ImmittanceKind::Impedance => own.value,
                // lossless tank exactly at resonance
                ImmittanceKind::Admittance if zero(own.value) => return Ok(PortValue::Open),
                ImmittanceKind::Admittance => own.value.inv(),
            };
            let z = z_own + z_rest;
            if zero(z) {
                return Ok(PortValue::Short { path: path.clone() });
            }
            finite(ComplexImmittance::impedance(z), path)
        }
        NetworkTree::Shunt { branch, rest } => {
            path.push("shunt.branch");
            let b = eval(branch, omega, path)?;
            path.pop();
            path.push("shunt.rest");
            let r = eval(rest, omega, path)?;
            path.pop();
            let mut y = cx(T::zero(), T::zero());
            for part in [b, r] {
                match part {
                    PortValue::Open => {}
                    short @ PortValue::Short { .. } => return Ok(short),
                    PortValue::Finite(im) => match im.kind {
                        ImmittanceKind::Admittance => y = y + im.value,
                        ImmittanceKind::Impedance if zero(im.value) => {
                            return Ok(PortValue::Short { path: path.clone() })
                        }
                        ImmittanceKind::Impedance => y = y + im.value.inv(),
                    },
                }
            }
            finite(ComplexImmittance::admittance(y), path)
        }
        NetworkTree::Line { line, rest } => eval_line(line, rest, omega, path, "line.rest"),
    }
}

fn eval_line<T: Real>(
    line: &TLine<T>,
    rest: &NetworkTree<T>,
    omega: T,
    path: &mut TreePath,
    step: &'static str,
) -> Result<PortValue<T>, NetworkError> {
    line.validate()?;
    path.push(step);
    let behind = eval(rest, omega, path)?;
    path.pop();
    let m = line.abcd(omega);
    let short = |path: &TreePath| Ok(PortValue::Short { path: path.clone() });
    match behind {
        // Z_in = A / C
        PortValue::Open => {
            if zero(m.c) {
                Ok(PortValue::Open)
            } else if zero(m.a) {
                short(path)
            } else {
                finite(ComplexImmittance::impedance(m.a / m.c), path)
            }
        }
        // Z_in = B / D
        PortValue::Short { .. } => {
            if zero(m.d) {
                Ok(PortValue::Open)
            } else if zero(m.b) {
                short(path)
            } else {
                finite(ComplexImmittance::impedance(m.b / m.d), path)
            }
        }
        PortValue::Finite(im) => match im.kind {
            ImmittanceKind::Impedance => {
                let den = m.c * im.value + m.d;
                if zero(den) {
                    return Ok(PortValue::Open);
                }
                finite(ComplexImmittance::impedance((m.a * im.value + m.b) / den), path)
            }
            ImmittanceKind::Admittance => {
                let den = m.a + m.b * im.value;
                if zero(den) {
                    return short(path);
                }
                finite(ComplexImmittance::admittance((m.c + m.d * im.value) / den), path)
            }
        },
    }
}
