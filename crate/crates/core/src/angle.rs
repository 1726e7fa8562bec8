//! Measurement angles as exact rational multiples of π.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::ParseError;

/// Pauli classification of a measurement angle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PauliClass {
    /// Angle 0 or π.
    X,
    /// Angle π/2 or 3π/2.
    Y,
    /// Anything else, including symbolic angles.
    NonPauli,
}

impl PauliClass {
    pub fn is_pauli(self) -> bool {
        !matches!(self, PauliClass::NonPauli)
    }

    pub fn letter(self) -> char {
        match self {
            PauliClass::X => 'X',
            PauliClass::Y => 'Y',
            PauliClass::NonPauli => 'N',
        }
    }
}

/// An angle `value · π` with `value` reduced into `[0, 2)`.
///
/// A *symbolic* angle carries an opaque tag instead of a concrete value. It
/// stands for a generic non-Pauli angle: negation flips its sign bit and adding
/// π toggles its offset bit, so the group action of dependent measurements is
/// still tracked exactly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Angle {
    value: Ratio<i64>,
    symbol: Option<Symbol>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Symbol {
    tag: u32,
    negated: bool,
    plus_pi: bool,
}

impl Angle {
    /// The angle `(numer/denom)·π`, normalized. Panics if `denom == 0`.
    pub fn new(numer: i64, denom: i64) -> Angle {
        assert!(denom != 0, "angle denominator must be nonzero");
        Angle::from_ratio(Ratio::new(numer, denom))
    }

    pub fn from_ratio(r: Ratio<i64>) -> Angle {
        let two = Ratio::from_integer(2);
        let mut v = r % two;
        if v < Ratio::zero() {
            v += two;
        }
        Angle {
            value: v,
            symbol: None,
        }
    }

    pub fn zero() -> Angle {
        Angle::new(0, 1)
    }

    pub fn pi() -> Angle {
        Angle::new(1, 1)
    }

    /// An opaque generic non-Pauli angle identified by `tag`.
    pub fn symbolic(tag: u32) -> Angle {
        Angle {
            value: Ratio::zero(),
            symbol: Some(Symbol {
                tag,
                negated: false,
                plus_pi: false,
            }),
        }
    }

    pub fn is_symbolic(&self) -> bool {
        self.symbol.is_some()
    }

    /// Reduced numerator (units of π). Zero for symbolic angles.
    pub fn numer(&self) -> i64 {
        *self.value.numer()
    }

    /// Reduced denominator (units of π). One for symbolic angles.
    pub fn denom(&self) -> i64 {
        *self.value.denom()
    }

    pub fn ratio(&self) -> Ratio<i64> {
        self.value
    }

    pub fn class(&self) -> PauliClass {
        if self.symbol.is_some() {
            return PauliClass::NonPauli;
        }
        let half = Ratio::new(1, 2);
        let v = self.value;
        if v.is_zero() || v.is_one() {
            PauliClass::X
        } else if v == half || v == Ratio::new(3, 2) {
            PauliClass::Y
        } else {
            PauliClass::NonPauli
        }
    }

    /// `−α` modulo 2π.
    pub fn neg(&self) -> Angle {
        match self.symbol {
            Some(sym) => Angle {
                value: Ratio::zero(),
                symbol: Some(Symbol {
                    negated: !sym.negated,
                    ..sym
                }),
            },
            None => Angle::from_ratio(-self.value),
        }
    }

    /// `α + π` modulo 2π.
    pub fn add_pi(&self) -> Angle {
        match self.symbol {
            Some(sym) => Angle {
                value: Ratio::zero(),
                symbol: Some(Symbol {
                    plus_pi: !sym.plus_pi,
                    ..sym
                }),
            },
            None => Angle::from_ratio(self.value + Ratio::one()),
        }
    }

    /// The adapted angle `(−1)^s·α + t·π` of a dependent measurement.
    pub fn adapt(&self, s: bool, t: bool) -> Angle {
        let a = if s { self.neg() } else { self.clone() };
        if t {
            a.add_pi()
        } else {
            a
        }
    }

    /// Numeric value in radians, or `None` for a symbolic angle.
    pub fn radians(&self) -> Option<f64> {
        if self.symbol.is_some() {
            return None;
        }
        Some(self.numer() as f64 / self.denom() as f64 * std::f64::consts::PI)
    }

    /// Radians, resolving a symbolic angle through `lookup(tag)`.
    pub fn radians_with(&self, lookup: impl Fn(u32) -> f64) -> f64 {
        match self.symbol {
            None => self.radians().unwrap_or_default(),
            Some(sym) => {
                let mut r = lookup(sym.tag);
                if sym.negated {
                    r = -r;
                }
                if sym.plus_pi {
                    r += std::f64::consts::PI;
                }
                r
            }
        }
    }

    /// Parses `num/den` or a bare integer, in units of π, or a symbolic
    /// angle written as by `Display` (`@3`, `-@3`, `@3+1`, `-@3+1`).
    pub fn parse(text: &str) -> Result<Angle, ParseError> {
        let bad = || ParseError::syntax(0, format!("invalid angle `{text}`"));
        let text = text.trim();
        if let Some(rest) = text.strip_prefix("-@").or_else(|| text.strip_prefix('@')) {
            let (tag, plus_pi) = match rest.strip_suffix("+1") {
                Some(tag) => (tag, true),
                None => (rest, false),
            };
            let mut a = Angle::symbolic(tag.parse().map_err(|_| bad())?);
            if text.starts_with('-') {
                a = a.neg();
            }
            if plus_pi {
                a = a.add_pi();
            }
            return Ok(a);
        }
        let (n, d) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (text.trim(), "1"),
        };
        let n: i64 = n.parse().map_err(|_| bad())?;
        let d: i64 = d.parse().map_err(|_| bad())?;
        if d <= 0 {
            return Err(bad());
        }
        Ok(Angle::new(n, d))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.symbol {
            Some(sym) => {
                let sign = if sym.negated { "-" } else { "" };
                let pi = if sym.plus_pi { "+1" } else { "" };
                write!(f, "{sign}@{}{pi}", sym.tag)
            }
            None => write!(f, "{}/{}", self.numer(), self.denom()),
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Angle({self})")
    }
}

impl Default for Angle {
    fn default() -> Angle {
        Angle::zero()
    }
}
