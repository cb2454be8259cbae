use std::fmt;
use std::ops::{Add, Sub};

/// A half-integer or `+inf`, stored doubled.
///
/// Quadratic defect orders live in `{0, 1, ..., 2e, inf}` and the invariants
/// `alpha_i` are half-integers, so both use this type.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ext(i64);

impl Ext {
    pub const INF: Ext = Ext(i64::MAX);

    pub const fn int(v: i64) -> Ext {
        Ext(2 * v)
    }

    /// The value `twice / 2`.
    pub const fn from_twice(twice: i64) -> Ext {
        Ext(twice)
    }

    pub fn is_inf(self) -> bool {
        self == Ext::INF
    }

    /// Twice the value, or `None` for infinity.
    pub fn twice(self) -> Option<i64> {
        if self.is_inf() {
            None
        } else {
            Some(self.0)
        }
    }

    /// The value if it is a finite integer.
    pub fn as_int(self) -> Option<i64> {
        match self.twice() {
            Some(t) if t % 2 == 0 => Some(t / 2),
            _ => None,
        }
    }

    pub fn is_integer(self) -> bool {
        self.as_int().is_some()
    }

    pub fn to_f64(self) -> f64 {
        match self.twice() {
            Some(t) => t as f64 / 2.0,
            None => f64::INFINITY,
        }
    }
}

impl Add for Ext {
    type Output = Ext;
    fn add(self, rhs: Ext) -> Ext {
        if self.is_inf() || rhs.is_inf() {
            Ext::INF
        } else {
            Ext(self.0 + rhs.0)
        }
    }
}

impl Add<i64> for Ext {
    type Output = Ext;
    fn add(self, rhs: i64) -> Ext {
        self + Ext::int(rhs)
    }
}

impl Sub<i64> for Ext {
    type Output = Ext;
    fn sub(self, rhs: i64) -> Ext {
        self + Ext::int(-rhs)
    }
}

impl PartialEq<i64> for Ext {
    fn eq(&self, other: &i64) -> bool {
        *self == Ext::int(*other)
    }
}

impl PartialOrd<i64> for Ext {
    fn partial_cmp(&self, other: &i64) -> Option<std::cmp::Ordering> {
        self.partial_cmp(&Ext::int(*other))
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.twice() {
            None => write!(f, "inf"),
            Some(t) if t % 2 == 0 => write!(f, "{}", t / 2),
            Some(t) => write!(f, "{}/2", t),
        }
    }
}

impl fmt::Debug for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
