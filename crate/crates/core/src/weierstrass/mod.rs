//! Weierstrass models `y^2 = x^3 + a(s,t) x + b(s,t)` over a surface germ:
//! discriminant, `J`, vanishing orders, point blow-ups of the base and a
//! resolution driver that blows up until the discriminant has simple
//! normal crossings.

mod analyze;
mod parse;
mod poly;
mod univariate;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use analyze::{
    analyze, collision_report, BaseChart, BaseResolution, ChartAxis, CollisionReport,
    DivisorOrigin, DivisorReport, StepReport, DEFAULT_MAX_BLOWUPS,
};
pub use parse::{parse_poly, ParseError};
pub use poly::BivariatePoly;
pub use univariate::{resultant_t, UPoly};

use crate::kodaira::KodairaError;
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeierstrassError {
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("discriminant 4a^3 + 27b^2 vanishes identically")]
    DegenerateFibration,
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("model is not minimal along {divisor}: ord a = {ord_a}, ord b = {ord_b}")]
    NonMinimalModel {
        divisor: String,
        ord_a: u32,
        ord_b: u32,
    },
    #[error("blow-up budget of {budget} exhausted before reaching normal crossings")]
    BudgetExhausted { budget: usize },
    #[error("a center to examine is not a rational point: {0}")]
    IrrationalCenter(String),
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
}

/// Coordinate axis, named by the variable that vanishes on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    /// `{s = 0}`
    S,
    /// `{t = 0}`
    T,
}

/// The two standard charts of the blow-up of the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// `(s, t) -> (s, s t)`; the exceptional curve is `{s = 0}`.
    SOverT,
    /// `(s, t) -> (s t, t)`; the exceptional curve is `{t = 0}`.
    TOverS,
}

impl Chart {
    pub fn exceptional_axis(self) -> Axis {
        match self {
            Chart::SOverT => Axis::S,
            Chart::TOverS => Axis::T,
        }
    }

    /// Images of `s` and `t`.
    pub fn substitution(self) -> (BivariatePoly, BivariatePoly) {
        let st = &BivariatePoly::s() * &BivariatePoly::t();
        match self {
            Chart::SOverT => (BivariatePoly::s(), st),
            Chart::TOverS => (st, BivariatePoly::t()),
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Chart::SOverT => "(s, s*t)",
            Chart::TOverS => "(s*t, t)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlownUp {
    pub total: BivariatePoly,
    pub exceptional_order: u32,
    pub strict: BivariatePoly,
}

/// `4a^3 + 27b^2`.
pub fn discriminant(a: &BivariatePoly, b: &BivariatePoly) -> BivariatePoly {
    &a.pow(3).scale(&int(4)) + &b.pow(2).scale(&int(27))
}

/// `J = 4a^3 / (4a^3 + 27b^2)`, kept as the unreduced pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JInvariant {
    pub numerator: BivariatePoly,
    pub denominator: BivariatePoly,
}

impl JInvariant {
    /// Both numerator and denominator vanish at the origin.
    pub fn undefined_at_origin(&self) -> bool {
        self.numerator.coefficient(0, 0) == int(0) && self.denominator.coefficient(0, 0) == int(0)
    }

    /// The value of `J` when it is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        if self.numerator.is_zero() {
            return Some(int(0));
        }
        let q = self.numerator.divide_exact(&self.denominator)?;
        q.is_constant().then(|| q.coefficient(0, 0))
    }
}

pub fn j_invariant(a: &BivariatePoly, b: &BivariatePoly) -> Result<JInvariant, WeierstrassError> {
    let denominator = discriminant(a, b);
    if denominator.is_zero() {
        return Err(WeierstrassError::DegenerateFibration);
    }
    Ok(JInvariant {
        numerator: a.pow(3).scale(&int(4)),
        denominator,
    })
}

/// Largest `k` such that the axis variable to the `k` divides `f`.
pub fn vanishing_order(f: &BivariatePoly, axis: Axis) -> Result<u32, WeierstrassError> {
    if f.is_zero() {
        return Err(WeierstrassError::ZeroPolynomial);
    }
    Ok(match axis {
        Axis::S => f.s_order(),
        Axis::T => f.t_order(),
    })
}

/// Lowest total degree of a term of `f`.
pub fn multiplicity_at_origin(f: &BivariatePoly) -> Result<u32, WeierstrassError> {
    f.lowest_degree().ok_or(WeierstrassError::ZeroPolynomial)
}

/// Pulls `f` back along one chart of the blow-up of the origin.
pub fn blow_up_chart(f: &BivariatePoly, chart: Chart) -> Result<BlownUp, WeierstrassError> {
    let k = multiplicity_at_origin(f)?;
    let (si, ti) = chart.substitution();
    let total = f.substitute(&si, &ti);
    let strict = match chart {
        Chart::SOverT => total.shift_down(k, 0),
        Chart::TOverS => total.shift_down(0, k),
    };
    Ok(BlownUp {
        total,
        exceptional_order: k,
        strict,
    })
}

/// Normal-crossings test at the origin for the local equations of the
/// discriminant branches: at most two pass through it, each smooth there,
/// with independent tangents. Equations not vanishing at the origin are
/// ignored.
pub fn snc_at_origin(branches: &[BivariatePoly]) -> bool {
    let through: Vec<&BivariatePoly> = branches
        .iter()
        .filter(|f| f.coefficient(0, 0) == int(0))
        .collect();
    if through.len() > 2 || through.iter().any(|f| f.lowest_degree() != Some(1)) {
        return false;
    }
    if let [f, g] = through[..] {
        let (a, b) = f.linear_part();
        let (c, d) = g.linear_part();
        return a * d != b * c;
    }
    true
}
