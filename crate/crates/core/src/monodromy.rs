//! Exact `SL(2, Z)` arithmetic for monodromy representatives.
//!
//! Entries are `i64`; every product is checked and overflow surfaces as
//! [`MonodromyError::Overflow`] instead of wrapping.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonodromyError {
    #[error("matrix [[{a},{b}],[{c},{d}]] has determinant {det}, expected 1")]
    NotUnimodular {
        a: i64,
        b: i64,
        c: i64,
        d: i64,
        det: i128,
    },
    #[error("integer overflow in SL(2,Z) arithmetic")]
    Overflow,
}

/// A 2x2 integer matrix `[[a, b], [c, d]]` with `ad - bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SL2Matrix {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

/// Order of a matrix in `SL(2, Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixOrder {
    Finite(u8),
    Infinite,
}

impl SL2Matrix {
    pub const IDENTITY: SL2Matrix = SL2Matrix {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };
    pub const MINUS_IDENTITY: SL2Matrix = SL2Matrix {
        a: -1,
        b: 0,
        c: 0,
        d: -1,
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, MonodromyError> {
        let det = a as i128 * d as i128 - b as i128 * c as i128;
        if det != 1 {
            return Err(MonodromyError::NotUnimodular { a, b, c, d, det });
        }
        Ok(SL2Matrix { a, b, c, d })
    }

    /// Builds a matrix whose determinant is known to be 1 by construction.
    pub(crate) const fn from_entries_unchecked(a: i64, b: i64, c: i64, d: i64) -> Self {
        SL2Matrix { a, b, c, d }
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn trace(&self) -> i128 {
        self.a as i128 + self.d as i128
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::IDENTITY
    }

    pub fn negate(&self) -> Result<Self, MonodromyError> {
        let neg = |x: i64| x.checked_neg().ok_or(MonodromyError::Overflow);
        Ok(SL2Matrix {
            a: neg(self.a)?,
            b: neg(self.b)?,
            c: neg(self.c)?,
            d: neg(self.d)?,
        })
    }

    pub fn inverse(&self) -> Result<Self, MonodromyError> {
        let neg = |x: i64| x.checked_neg().ok_or(MonodromyError::Overflow);
        Ok(SL2Matrix {
            a: self.d,
            b: neg(self.b)?,
            c: neg(self.c)?,
            d: self.a,
        })
    }

    pub fn pow(&self, k: u32) -> Result<Self, MonodromyError> {
        let mut acc = Self::IDENTITY;
        for _ in 0..k {
            acc = compose(&acc, self)?;
        }
        Ok(acc)
    }

    /// gcd of the entries of `M - I`; for a parabolic `M` conjugate to
    /// `[[1, n], [0, 1]]` this is `|n|`.
    pub fn parabolic_width(&self) -> u64 {
        use num_integer::Integer;
        let parts = [
            (self.a as i128 - 1).unsigned_abs(),
            (self.b as i128).unsigned_abs(),
            (self.c as i128).unsigned_abs(),
            (self.d as i128 - 1).unsigned_abs(),
        ];
        parts.iter().fold(0u128, |g, x| g.gcd(x)) as u64
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl Serialize for SL2Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.entries().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SL2Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [[a, b], [c, dd]] = <[[i64; 2]; 2]>::deserialize(d)?;
        SL2Matrix::new(a, b, c, dd).map_err(serde::de::Error::custom)
    }
}

/// Matrix product `left * right`.
pub fn compose(left: &SL2Matrix, right: &SL2Matrix) -> Result<SL2Matrix, MonodromyError> {
    let dot = |x: i64, y: i64, z: i64, w: i64| -> Result<i64, MonodromyError> {
        let p = x.checked_mul(y).ok_or(MonodromyError::Overflow)?;
        let q = z.checked_mul(w).ok_or(MonodromyError::Overflow)?;
        p.checked_add(q).ok_or(MonodromyError::Overflow)
    };
    Ok(SL2Matrix {
        a: dot(left.a, right.a, left.b, right.c)?,
        b: dot(left.a, right.b, left.b, right.d)?,
        c: dot(left.c, right.a, left.d, right.c)?,
        d: dot(left.c, right.b, left.d, right.d)?,
    })
}

/// Smallest `k >= 1` with `m^k = I`.
///
/// An element of `SL(2, Z)` other than `±I` has finite order exactly when
/// `|trace| < 2`, and then the order is fixed by the trace.
pub fn order_of(m: &SL2Matrix) -> MatrixOrder {
    if m.is_identity() {
        return MatrixOrder::Finite(1);
    }
    if *m == SL2Matrix::MINUS_IDENTITY {
        return MatrixOrder::Finite(2);
    }
    match m.trace() {
        1 => MatrixOrder::Finite(6),
        0 => MatrixOrder::Finite(4),
        -1 => MatrixOrder::Finite(3),
        _ => MatrixOrder::Infinite,
    }
}

/// Monodromy around the exceptional curve of the blow-up of a crossing of
/// two branches with monodromies `gamma_x` and `gamma_y`.
pub fn blowup_monodromy(
    gamma_x: &SL2Matrix,
    gamma_y: &SL2Matrix,
) -> Result<SL2Matrix, MonodromyError> {
    compose(gamma_x, gamma_y)
}
