use std::fmt;

/// Filtration value of an element: a natural number, or infinity.
///
/// Operationally `Infinite` means "above the cutoff": a truncated algebra
/// cannot distinguish zero from elements of value greater than `D`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Finite(u64),
    Infinite,
}

impl Value {
    pub fn finite(self) -> Option<u64> {
        match self {
            Value::Finite(v) => Some(v),
            Value::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Value::Finite(_))
    }

    /// Saturating sum: anything plus infinity is infinity.
    pub fn plus(self, other: Value) -> Value {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Value::Finite(a + b),
            _ => Value::Infinite,
        }
    }

    pub fn times(self, k: u64) -> Value {
        match self {
            Value::Finite(a) => Value::Finite(a * k),
            Value::Infinite => Value::Infinite,
        }
    }

    /// Collapse finite values above `cutoff` to infinity.
    pub fn capped(self, cutoff: u64) -> Value {
        match self {
            Value::Finite(a) if a <= cutoff => self,
            _ => Value::Infinite,
        }
    }

    /// `self - other` as a signed margin; `None` when either side is infinite.
    pub fn margin_over(self, other: Value) -> Option<i64> {
        match (self, other) {
            (Value::Finite(a), Value::Finite(b)) => Some(a as i64 - b as i64),
            _ => None,
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Finite(v) => write!(f, "{v}"),
            Value::Infinite => f.write_str("inf"),
        }
    }
}
