//! Kodaira's singular fiber types and the data attached to each of them:
//! the coefficient `a`, Euler number, monodromy representative and the
//! behaviour of the `J`-invariant near a general point of the divisor.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::monodromy::SL2Matrix;
use crate::rational::{int, ratio, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KodairaError {
    #[error("vanishing orders ({ord_a}, {ord_b}, {ord_delta}) are not Kodaira-minimal")]
    NonMinimal {
        ord_a: u32,
        ord_b: u32,
        ord_delta: u32,
    },
    #[error("vanishing orders ({ord_a}, {ord_b}, {ord_delta}) match no Kodaira type")]
    Inconsistent {
        ord_a: u32,
        ord_b: u32,
        ord_delta: u32,
    },
    #[error("monodromy {matrix} with pole order {pole_order} is not a Kodaira class")]
    UnrecognizedClass { matrix: SL2Matrix, pole_order: u32 },
    #[error("multiplicity {multiplicity} is only allowed on I_b fibers, not {kind}")]
    InvalidMultiplicity { kind: String, multiplicity: u32 },
    #[error("cannot parse fiber type `{0}`")]
    Parse(String),
}

/// The Kodaira symbol, with the `b` parameter of `I_b` and `I*_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FiberKind {
    I(u32),
    IStar(u32),
    II,
    III,
    IV,
    IIStar,
    IIIStar,
    IVStar,
}

/// Value of the `J`-invariant at a general point of the divisor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JBehavior {
    Zero,
    One,
    Regular,
    Pole(u32),
}

/// A fiber type; `multiplicity > 1` is only possible for `I_b` (`_mI_b`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiberType {
    kind: FiberKind,
    multiplicity: u32,
}

/// Euler number Kodaira's table lists for the smooth row `_mI_0`. The crate
/// uses 0 for the smooth fiber so that it contributes nothing to divisor
/// sums; this constant keeps the tabulated value on record.
pub const TABULATED_SMOOTH_EULER: u32 = 1;

impl FiberType {
    pub const SMOOTH: FiberType = FiberType::new(FiberKind::I(0));

    pub const fn new(kind: FiberKind) -> Self {
        FiberType {
            kind,
            multiplicity: 1,
        }
    }

    /// `_mI_b`.
    pub fn multiple(b: u32, multiplicity: u32) -> Result<Self, KodairaError> {
        FiberType::new(FiberKind::I(b)).with_multiplicity(multiplicity)
    }

    pub fn with_multiplicity(self, multiplicity: u32) -> Result<Self, KodairaError> {
        let allowed = multiplicity == 1 || (multiplicity > 1 && matches!(self.kind, FiberKind::I(_)));
        if !allowed {
            return Err(KodairaError::InvalidMultiplicity {
                kind: FiberType::new(self.kind).to_string(),
                multiplicity,
            });
        }
        Ok(FiberType {
            kind: self.kind,
            multiplicity,
        })
    }

    pub fn kind(&self) -> FiberKind {
        self.kind
    }

    pub fn multiplicity(&self) -> u32 {
        self.multiplicity
    }

    pub fn without_multiplicity(&self) -> FiberType {
        FiberType::new(self.kind)
    }

    /// The smooth fiber `I_0` with multiplicity 1: the only type outside the
    /// discriminant.
    pub fn is_smooth(&self) -> bool {
        self.kind == FiberKind::I(0) && self.multiplicity == 1
    }

    /// Order of the pole of `J` (0 when `J` is finite).
    pub fn pole_order(&self) -> u32 {
        match self.kind {
            FiberKind::I(b) | FiberKind::IStar(b) => b,
            _ => 0,
        }
    }

    /// Finite, non-central monodromy: `J` is identically 0 or 1 along the
    /// divisor.
    pub fn is_elliptic(&self) -> bool {
        !matches!(self.kind, FiberKind::I(_) | FiberKind::IStar(_))
    }

    pub fn all_elliptic() -> [FiberType; 6] {
        use FiberKind::*;
        [II, III, IV, IVStar, IIIStar, IIStar].map(FiberType::new)
    }
}

impl From<FiberKind> for FiberType {
    fn from(kind: FiberKind) -> Self {
        FiberType::new(kind)
    }
}

impl fmt::Display for FiberKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberKind::I(b) => write!(f, "I{b}"),
            FiberKind::IStar(b) => write!(f, "I{b}*"),
            FiberKind::II => f.write_str("II"),
            FiberKind::III => f.write_str("III"),
            FiberKind::IV => f.write_str("IV"),
            FiberKind::IIStar => f.write_str("II*"),
            FiberKind::IIIStar => f.write_str("III*"),
            FiberKind::IVStar => f.write_str("IV*"),
        }
    }
}

impl fmt::Display for FiberType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplicity > 1 {
            write!(f, "m{}:", self.multiplicity)?;
        }
        self.kind.fmt(f)
    }
}

impl FromStr for FiberKind {
    type Err = KodairaError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = || KodairaError::Parse(text.to_string());
        Ok(match text {
            "II" => FiberKind::II,
            "III" => FiberKind::III,
            "IV" => FiberKind::IV,
            "II*" => FiberKind::IIStar,
            "III*" => FiberKind::IIIStar,
            "IV*" => FiberKind::IVStar,
            _ => {
                let rest = text.strip_prefix('I').ok_or_else(bad)?;
                let (digits, star) = match rest.strip_suffix('*') {
                    Some(d) => (d, true),
                    None => (rest, false),
                };
                if digits.is_empty() || !digits.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(bad());
                }
                let b: u32 = digits.parse().map_err(|_| bad())?;
                if star {
                    FiberKind::IStar(b)
                } else {
                    FiberKind::I(b)
                }
            }
        })
    }
}

impl FromStr for FiberType {
    type Err = KodairaError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let text = text.trim();
        match text.split_once(':') {
            Some((prefix, kind)) => {
                let m: u32 = prefix
                    .strip_prefix('m')
                    .filter(|d| !d.is_empty() && d.bytes().all(|c| c.is_ascii_digit()))
                    .and_then(|d| d.parse().ok())
                    .filter(|&m| m >= 1)
                    .ok_or_else(|| KodairaError::Parse(text.to_string()))?;
                FiberType::new(kind.parse()?).with_multiplicity(m)
            }
            None => Ok(FiberType::new(text.parse()?)),
        }
    }
}

impl Serialize for FiberType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FiberType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// One row of Kodaira's table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberData {
    #[serde(with = "crate::rational::serde_str")]
    pub a_coeff: Rational,
    pub euler: u32,
    pub monodromy: SL2Matrix,
    pub j_behavior: JBehavior,
}

pub fn fiber_data(t: FiberType) -> FiberData {
    FiberData {
        a_coeff: coefficient_a(t),
        euler: euler_characteristic(t),
        monodromy: monodromy_of(t),
        j_behavior: j_behavior_of(t),
    }
}

/// The coefficient `a_k` of the fiber in the boundary divisor.
pub fn coefficient_a(t: FiberType) -> Rational {
    match t.kind {
        FiberKind::I(_) => int(0),
        FiberKind::IStar(_) => ratio(1, 2),
        FiberKind::II => ratio(1, 6),
        FiberKind::III => ratio(1, 4),
        FiberKind::IV => ratio(1, 3),
        FiberKind::IVStar => ratio(2, 3),
        FiberKind::IIIStar => ratio(3, 4),
        FiberKind::IIStar => ratio(5, 6),
    }
}

/// Euler number of the singular fiber, 0 for the smooth fiber.
pub fn euler_characteristic(t: FiberType) -> u32 {
    match t.kind {
        FiberKind::I(b) => b,
        FiberKind::IStar(b) => b + 6,
        FiberKind::II => 2,
        FiberKind::III => 3,
        FiberKind::IV => 4,
        FiberKind::IVStar => 8,
        FiberKind::IIIStar => 9,
        FiberKind::IIStar => 10,
    }
}

pub fn monodromy_of(t: FiberType) -> SL2Matrix {
    let m = SL2Matrix::from_entries_unchecked;
    match t.kind {
        FiberKind::I(b) => m(1, b as i64, 0, 1),
        FiberKind::IStar(b) => m(-1, -(b as i64), 0, -1),
        FiberKind::II => m(1, 1, -1, 0),
        FiberKind::IIStar => m(0, -1, 1, 1),
        FiberKind::IVStar => m(-1, -1, 1, 0),
        FiberKind::IV => m(0, 1, -1, -1),
        FiberKind::III => m(0, 1, -1, 0),
        FiberKind::IIIStar => m(0, -1, 1, 0),
    }
}

pub fn j_behavior_of(t: FiberType) -> JBehavior {
    match t.kind {
        FiberKind::II | FiberKind::IIStar | FiberKind::IV | FiberKind::IVStar => JBehavior::Zero,
        FiberKind::III | FiberKind::IIIStar => JBehavior::One,
        FiberKind::I(0) | FiberKind::IStar(0) => JBehavior::Regular,
        FiberKind::I(b) | FiberKind::IStar(b) => JBehavior::Pole(b),
    }
}

/// Kodaira type from the vanishing orders of `a`, `b` and `4a^3 + 27b^2`
/// along a divisor of a Weierstrass model `y^2 = x^3 + ax + b`.
///
/// Orders of identically vanishing coefficients may be passed clamped to
/// 4 (for `a`) and 6 (for `b`).
pub fn classify_from_orders(
    ord_a: u32,
    ord_b: u32,
    ord_delta: u32,
) -> Result<FiberType, KodairaError> {
    use FiberKind::*;
    if ord_a >= 4 && ord_b >= 6 {
        return Err(KodairaError::NonMinimal {
            ord_a,
            ord_b,
            ord_delta,
        });
    }
    let kind = match (ord_a, ord_b, ord_delta) {
        (_, _, 0) => I(0),
        (0, 0, n) => I(n),
        (a, 1, 2) if a >= 1 => II,
        (1, b, 3) if b >= 2 => III,
        (a, 2, 4) if a >= 2 => IV,
        (2, b, 6) if b >= 3 => IStar(0),
        (a, 3, 6) if a >= 2 => IStar(0),
        (2, 3, d) if d > 6 => IStar(d - 6),
        (a, 4, 8) if a >= 3 => IVStar,
        (3, b, 9) if b >= 5 => IIIStar,
        (a, 5, 10) if a >= 4 => IIStar,
        _ => {
            return Err(KodairaError::Inconsistent {
                ord_a,
                ord_b,
                ord_delta,
            })
        }
    };
    Ok(FiberType::new(kind))
}

/// Fixed point `tau = re + i*sqrt(im_sq)` of an elliptic element acting on
/// the upper half-plane.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticFixedPoint {
    pub re: Rational,
    pub im_sq: Rational,
}

/// Automorphy factor `c*tau + d` at the fixed point. It lies on the unit
/// circle, and equals `exp(-2 pi i a)` for the fiber coefficient `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphyFactor {
    pub re: Rational,
    pub im_sq: Rational,
    pub im_positive: bool,
}

/// `None` unless `|trace| < 2`.
pub fn elliptic_fixed_point(m: &SL2Matrix) -> Option<EllipticFixedPoint> {
    let t = m.trace();
    if !(-1..=1).contains(&t) {
        return None;
    }
    // c != 0 for every elliptic element
    let c = m.c() as i128;
    let re = Rational::new(((m.a() as i128) - (m.d() as i128)).into(), (2 * c).into());
    let im_sq = Rational::new((4 - t * t).into(), (4 * c * c).into());
    Some(EllipticFixedPoint { re, im_sq })
}

pub fn automorphy_factor(m: &SL2Matrix, tau: &EllipticFixedPoint) -> AutomorphyFactor {
    let c = Rational::from_integer(m.c().into());
    let d = Rational::from_integer(m.d().into());
    let re = &c * &tau.re + d;
    let im_sq = &c * &c * &tau.im_sq;
    debug_assert_eq!(&re * &re + &im_sq, int(1));
    AutomorphyFactor {
        re,
        im_sq,
        im_positive: m.c() > 0,
    }
}

/// Recovers the Kodaira type (without multiplicity) from a monodromy
/// representative and the pole order of `J` along the divisor.
pub fn classify_from_monodromy(
    mat: &SL2Matrix,
    pole_order: u32,
) -> Result<FiberType, KodairaError> {
    let unrecognized = || KodairaError::UnrecognizedClass {
        matrix: *mat,
        pole_order,
    };
    match mat.trace() {
        2 => {
            if mat.is_identity() {
                if pole_order == 0 {
                    Ok(FiberType::new(FiberKind::I(0)))
                } else {
                    Err(unrecognized())
                }
            } else if mat.parabolic_width() == pole_order as u64 {
                Ok(FiberType::new(FiberKind::I(pole_order)))
            } else {
                Err(unrecognized())
            }
        }
        -2 => {
            let positive = mat.negate().map_err(|_| unrecognized())?;
            if positive.parabolic_width() == pole_order as u64 {
                Ok(FiberType::new(FiberKind::IStar(pole_order)))
            } else {
                Err(unrecognized())
            }
        }
        -1..=1 => {
            if pole_order != 0 {
                return Err(unrecognized());
            }
            let tau = elliptic_fixed_point(mat).ok_or_else(unrecognized)?;
            let j = automorphy_factor(mat, &tau);
            // j = cos(2 pi a) - i sin(2 pi a): 2 Re j picks the trace row and
            // the sign of Im j decides between a and 1 - a.
            let twice_cos = &j.re * int(2);
            let lower_half = !j.im_positive;
            FiberType::all_elliptic()
                .into_iter()
                .find(|t| {
                    let a = coefficient_a(*t);
                    let sin_positive = a < ratio(1, 2);
                    let expected_cos = int(match euler_characteristic(*t) {
                        2 | 10 => 1,
                        3 | 9 => 0,
                        _ => -1,
                    });
                    expected_cos == twice_cos && sin_positive == lower_half
                })
                .ok_or_else(unrecognized)
        }
        _ => Err(unrecognized()),
    }
}
