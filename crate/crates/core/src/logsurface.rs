//! Combinatorial surfaces: a lattice of named divisor classes with an
//! integer intersection form, the canonical class, tracked curves and a
//! record of point blow-ups.
//!
//! Basis classes are always total transforms, so blowing up extends the
//! form orthogonally (`E^2 = -1`, `E . psi^*D = 0`) and never rewrites
//! existing coordinates. Named curves are kept as strict transforms and
//! lose `mult * E` at each blow-up through them. The exceptional curve of
//! a blow-up is itself registered as a curve under the record's name.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kodaira::{coefficient_a, FiberType};
use crate::rational::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("unknown divisor class `{0}`")]
    UnknownClass(String),
    #[error("class name `{0}` is already in use")]
    DuplicateClass(String),
    #[error("`{0}` is a basis class, not a tracked curve")]
    NotACurve(String),
    #[error("negative multiplicity {multiplicity} for `{class}`")]
    InvalidMultiplicity { class: String, multiplicity: i64 },
    #[error("`{0}` is not the exceptional curve of a recorded blow-up with self-intersection -1")]
    NotExceptional(String),
    #[error("intersection matrix must be square of size {expected} and symmetric")]
    BadGram { expected: usize },
}

/// A finitely supported formal sum of named classes with rational
/// coefficients. Zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QDivisor {
    #[serde(with = "crate::rational::serde_map")]
    coeffs: BTreeMap<String, Rational>,
}

impl QDivisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(name: &str, coefficient: Rational) -> Self {
        let mut d = Self::zero();
        d.add_term(name, coefficient);
        d
    }

    pub fn from_terms<'a>(terms: impl IntoIterator<Item = (&'a str, Rational)>) -> Self {
        let mut d = Self::zero();
        for (name, q) in terms {
            d.add_term(name, q);
        }
        d
    }

    pub fn add_term(&mut self, name: &str, coefficient: Rational) {
        let entry = self.coeffs.entry(name.to_string()).or_insert_with(Rational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.coeffs.remove(name);
        }
    }

    pub fn coefficient(&self, name: &str) -> Rational {
        self.coeffs.get(name).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&str, &Rational)> {
        self.coeffs.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.coeffs {
            out.add_term(k, v * factor);
        }
        out
    }

    /// Drops the coefficient of `name`: the push-forward under contracting
    /// that curve.
    pub fn without(&self, name: &str) -> Self {
        let mut out = self.clone();
        out.coeffs.remove(name);
        out
    }
}

impl Add for &QDivisor {
    type Output = QDivisor;
    fn add(self, rhs: &QDivisor) -> QDivisor {
        let mut out = self.clone();
        for (k, v) in &rhs.coeffs {
            out.add_term(k, v.clone());
        }
        out
    }
}

impl Sub for &QDivisor {
    type Output = QDivisor;
    fn sub(self, rhs: &QDivisor) -> QDivisor {
        self + &(-rhs)
    }
}

impl Neg for &QDivisor {
    type Output = QDivisor;
    fn neg(self) -> QDivisor {
        self.scale(&int(-1))
    }
}

impl fmt::Display for QDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, (name, q)) in self.coeffs.iter().enumerate() {
            let sign = if q.is_negative() { "-" } else { "+" };
            let abs = q.abs();
            if i == 0 {
                if q.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if abs == int(1) {
                write!(f, "{name}")?;
            } else {
                write!(f, "{abs} {name}")?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlowUpRecord {
    /// Name of the exceptional class (and curve).
    pub exceptional: String,
    /// Multiplicity at the center of each tracked curve through it.
    pub multiplicities: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Surface {
    basis: Vec<String>,
    gram: Vec<Vec<i64>>,
    canonical: QDivisor,
    #[serde(default)]
    curves: BTreeMap<String, QDivisor>,
    #[serde(default)]
    history: Vec<BlowUpRecord>,
}

impl Surface {
    pub fn new(
        basis: Vec<String>,
        gram: Vec<Vec<i64>>,
        canonical: QDivisor,
    ) -> Result<Self, SurfaceError> {
        let n = basis.len();
        let square = gram.len() == n && gram.iter().all(|row| row.len() == n);
        if !square || (0..n).any(|i| (0..i).any(|j| gram[i][j] != gram[j][i])) {
            return Err(SurfaceError::BadGram { expected: n });
        }
        for (i, name) in basis.iter().enumerate() {
            if basis[..i].contains(name) {
                return Err(SurfaceError::DuplicateClass(name.clone()));
            }
        }
        for (name, _) in canonical.terms() {
            if !basis.iter().any(|b| b == name) {
                return Err(SurfaceError::UnknownClass(name.to_string()));
            }
        }
        Ok(Surface {
            basis,
            gram,
            canonical,
            curves: BTreeMap::new(),
            history: Vec::new(),
        })
    }

    /// The projective plane with hyperplane class `h`.
    pub fn projective_plane() -> Self {
        Surface::new(
            vec!["h".to_string()],
            vec![vec![1]],
            QDivisor::single("h", int(-3)),
        )
        .expect("valid lattice")
    }

    /// Registers a named curve, given in basis coordinates.
    pub fn with_curve(mut self, name: &str, class: QDivisor) -> Result<Self, SurfaceError> {
        self.check_fresh(name)?;
        for (k, _) in class.terms() {
            if !self.basis.iter().any(|b| b == k) {
                return Err(SurfaceError::UnknownClass(k.to_string()));
            }
        }
        self.curves.insert(name.to_string(), class);
        Ok(self)
    }

    /// Marks an existing basis class as the exceptional curve of an earlier
    /// (unrecorded) blow-up, e.g. the `(-1)`-curve of a Hirzebruch surface.
    pub fn with_exceptional(mut self, name: &str) -> Result<Self, SurfaceError> {
        let idx = self.index(name).ok_or_else(|| SurfaceError::UnknownClass(name.to_string()))?;
        if self.gram[idx][idx] != -1 {
            return Err(SurfaceError::NotExceptional(name.to_string()));
        }
        if self.history.iter().any(|r| r.exceptional == name) {
            return Err(SurfaceError::DuplicateClass(name.to_string()));
        }
        self.curves
            .entry(name.to_string())
            .or_insert_with(|| QDivisor::single(name, int(1)));
        self.history.push(BlowUpRecord {
            exceptional: name.to_string(),
            multiplicities: BTreeMap::new(),
        });
        Ok(self)
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &QDivisor {
        &self.canonical
    }

    pub fn history(&self) -> &[BlowUpRecord] {
        &self.history
    }

    pub fn curves(&self) -> &BTreeMap<String, QDivisor> {
        &self.curves
    }

    /// Current class (strict transform) of a tracked curve.
    pub fn curve(&self, name: &str) -> Option<&QDivisor> {
        self.curves.get(name)
    }

    fn index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    fn check_fresh(&self, name: &str) -> Result<(), SurfaceError> {
        if self.index(name).is_some() || self.curves.contains_key(name) {
            return Err(SurfaceError::DuplicateClass(name.to_string()));
        }
        Ok(())
    }

    /// Rewrites a divisor in basis coordinates. A name that is a tracked
    /// curve means the curve's current class (its strict transform), so an
    /// exceptional name refers to the curve, not the total transform.
    pub fn expand(&self, d: &QDivisor) -> Result<Vec<Rational>, SurfaceError> {
        let mut coords = vec![Rational::zero(); self.basis.len()];
        for (name, q) in d.terms() {
            if let Some(curve) = self.curves.get(name) {
                for (b, c) in curve.terms() {
                    let i = self.index(b).expect("curves live in the basis");
                    coords[i] += q * c;
                }
            } else if let Some(i) = self.index(name) {
                coords[i] += q;
            } else {
                return Err(SurfaceError::UnknownClass(name.to_string()));
            }
        }
        Ok(coords)
    }

    /// Coordinates of a divisor written over basis classes only, such as
    /// the canonical class or a curve class.
    fn basis_coords(&self, d: &QDivisor) -> Vec<Rational> {
        let mut coords = vec![Rational::zero(); self.basis.len()];
        for (name, q) in d.terms() {
            coords[self.index(name).expect("basis class")] += q;
        }
        coords
    }

    fn form(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let mut total = Rational::zero();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if self.gram[i][j] != 0 && !yj.is_zero() {
                    total += xi * yj * int(self.gram[i][j]);
                }
            }
        }
        total
    }

    /// `K + lambda` in basis coordinates.
    fn log_canonical_coords(&self, lambda: &QDivisor) -> Result<Vec<Rational>, SurfaceError> {
        let k = self.basis_coords(&self.canonical);
        let l = self.expand(lambda)?;
        Ok(k.iter().zip(&l).map(|(a, b)| a + b).collect())
    }

    /// Intersection number of two divisors.
    pub fn pair(&self, d1: &QDivisor, d2: &QDivisor) -> Result<Rational, SurfaceError> {
        Ok(self.form(&self.expand(d1)?, &self.expand(d2)?))
    }

    pub fn self_intersection(&self, name: &str) -> Result<Rational, SurfaceError> {
        let d = QDivisor::single(name, int(1));
        self.pair(&d, &d)
    }

    /// Blows up a point. `multiplicities` gives the multiplicity at the
    /// center of every tracked curve passing through it; unlisted curves
    /// miss the center.
    pub fn blow_up(
        &self,
        exceptional: &str,
        multiplicities: &BTreeMap<String, i64>,
    ) -> Result<Surface, SurfaceError> {
        self.check_fresh(exceptional)?;
        let mut mults = BTreeMap::new();
        for (name, &m) in multiplicities {
            if m < 0 {
                return Err(SurfaceError::InvalidMultiplicity {
                    class: name.clone(),
                    multiplicity: m,
                });
            }
            if !self.curves.contains_key(name) {
                return Err(if self.index(name).is_some() {
                    SurfaceError::NotACurve(name.clone())
                } else {
                    SurfaceError::UnknownClass(name.clone())
                });
            }
            if m > 0 {
                mults.insert(name.clone(), m as u32);
            }
        }

        let mut next = self.clone();
        for row in &mut next.gram {
            row.push(0);
        }
        let mut last = vec![0; self.basis.len()];
        last.push(-1);
        next.gram.push(last);
        next.basis.push(exceptional.to_string());
        next.canonical.add_term(exceptional, int(1));
        for (name, &m) in &mults {
            let curve = next.curves.get_mut(name).expect("checked above");
            curve.add_term(exceptional, int(-(m as i64)));
        }
        next.curves
            .insert(exceptional.to_string(), QDivisor::single(exceptional, int(1)));
        next.history.push(BlowUpRecord {
            exceptional: exceptional.to_string(),
            multiplicities: mults,
        });
        Ok(next)
    }

    /// An exceptional curve that no later blow-up has touched, so that its
    /// class is a single basis vector with square `-1`.
    pub fn is_contractible(&self, name: &str) -> bool {
        self.history.iter().any(|r| r.exceptional == name)
            && self.curves.get(name) == Some(&QDivisor::single(name, int(1)))
            && self.index(name).map(|i| self.gram[i][i]) == Some(-1)
    }

    /// Contracts an exceptional `(-1)`-curve, undoing its blow-up.
    pub fn contract(&self, name: &str) -> Result<Surface, SurfaceError> {
        if !self.is_contractible(name) {
            return Err(SurfaceError::NotExceptional(name.to_string()));
        }
        let idx = self.index(name).expect("contractible classes are in the basis");
        let mut next = self.clone();
        next.basis.remove(idx);
        next.gram.remove(idx);
        for row in &mut next.gram {
            row.remove(idx);
        }
        next.canonical = next.canonical.without(name);
        next.curves.remove(name);
        for curve in next.curves.values_mut() {
            *curve = curve.without(name);
        }
        next.history.retain(|r| r.exceptional != name);
        for r in &mut next.history {
            r.multiplicities.remove(name);
        }
        Ok(next)
    }

    fn exceptional_curve(&self, gamma: &str) -> Result<QDivisor, SurfaceError> {
        if !self.history.iter().any(|r| r.exceptional == gamma) {
            return Err(SurfaceError::NotExceptional(gamma.to_string()));
        }
        let g = QDivisor::single(gamma, int(1));
        if self.pair(&g, &g)? != int(-1) {
            return Err(SurfaceError::NotExceptional(gamma.to_string()));
        }
        Ok(g)
    }

    /// `(K + lambda) . Gamma`.
    pub fn log_canonical_degree(
        &self,
        lambda: &QDivisor,
        gamma: &str,
    ) -> Result<Rational, SurfaceError> {
        let g = self.exceptional_curve(gamma)?;
        self.log_canonical_pairing(lambda, &g)
    }

    /// `(K + lambda) . d` for any divisor; `K` is read in basis classes.
    pub fn log_canonical_pairing(&self, lambda: &QDivisor, d: &QDivisor) -> Result<Rational, SurfaceError> {
        Ok(self.form(&self.log_canonical_coords(lambda)?, &self.expand(d)?))
    }
}

/// A component of the discriminant together with its fiber type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedComponent {
    pub class_name: String,
    pub fiber_type: FiberType,
    pub is_in_sigma: bool,
}

impl MarkedComponent {
    pub fn new(class_name: &str, fiber_type: FiberType) -> Self {
        MarkedComponent {
            class_name: class_name.to_string(),
            fiber_type,
            is_in_sigma: !fiber_type.is_smooth(),
        }
    }
}

/// Coefficient of a component of type `t` in the boundary divisor:
/// `a + pole/12 + (m - 1)/m`.
pub fn lambda_coefficient(t: FiberType) -> Rational {
    let m = t.multiplicity() as i64;
    coefficient_a(t) + Rational::new((t.pole_order() as i64).into(), 12.into())
        + Rational::new((m - 1).into(), m.into())
}

/// The boundary divisor `Lambda = sum (a_k + b_k/12 + (m_k - 1)/m_k) D_k`.
pub fn lambda_of(components: &[MarkedComponent]) -> QDivisor {
    let mut out = QDivisor::zero();
    for c in components {
        // the a_k and multiple-fiber parts stay below 1; only J_inf/12 can exceed it
        let m = c.fiber_type.multiplicity() as i64;
        debug_assert!(coefficient_a(c.fiber_type) + Rational::new((m - 1).into(), m.into()) < int(1));
        out.add_term(&c.class_name, lambda_coefficient(c.fiber_type));
    }
    out
}

/// `delta = -((K + lambda) . Gamma)`: the coefficient of `Gamma` in
/// `K + lambda - psi^*(K_0 + lambda_0)`.
pub fn delta_of_contraction(
    s: &Surface,
    lambda: &QDivisor,
    gamma: &str,
) -> Result<Rational, SurfaceError> {
    Ok(-s.log_canonical_degree(lambda, gamma)?)
}

/// `(K + lambda) . Gamma < 0`.
pub fn is_log_extremal(s: &Surface, lambda: &QDivisor, gamma: &str) -> Result<bool, SurfaceError> {
    Ok(s.log_canonical_degree(lambda, gamma)? < int(0))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContractionStep {
    pub class: String,
    #[serde(with = "crate::rational::serde_str")]
    pub log_canonical_degree: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub delta: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockedClass {
    pub class: String,
    #[serde(with = "crate::rational::serde_str")]
    pub log_canonical_degree: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MmpStatus {
    /// `K + lambda` is non-negative on every basis class and tracked curve.
    Minimal,
    /// Some tested class is still `(K + lambda)`-negative but is not a
    /// recorded exceptional curve (fibration-type ending).
    NotMinimal { negative_classes: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MmpOutcome {
    pub steps: Vec<ContractionStep>,
    /// Exceptional curves left in place because `(K + lambda) . Gamma >= 0`.
    pub blocked: Vec<BlockedClass>,
    #[serde(flatten)]
    pub status: MmpStatus,
    pub surface: Surface,
    pub lambda: QDivisor,
}

/// Contracts `(K + lambda)`-negative exceptional curves until none is left,
/// pushing `lambda` forward at each step.
pub fn mmp_drive(s: &Surface, lambda: &QDivisor) -> Result<MmpOutcome, SurfaceError> {
    let mut surface = s.clone();
    let mut lambda = lambda.clone();
    let mut steps = Vec::new();
    loop {
        let mut next = None;
        for record in surface.history.iter().rev() {
            let name = &record.exceptional;
            if !surface.is_contractible(name) {
                continue;
            }
            let degree = surface.log_canonical_degree(&lambda, name)?;
            if degree < int(0) {
                next = Some((name.clone(), degree));
                break;
            }
        }
        let Some((name, degree)) = next else { break };
        surface = surface.contract(&name)?;
        lambda = lambda.without(&name);
        steps.push(ContractionStep {
            class: name,
            delta: -degree.clone(),
            log_canonical_degree: degree,
        });
    }

    let mut blocked = Vec::new();
    for record in &surface.history {
        if surface.is_contractible(&record.exceptional) {
            blocked.push(BlockedClass {
                class: record.exceptional.clone(),
                log_canonical_degree: surface.log_canonical_degree(&lambda, &record.exceptional)?,
            });
        }
    }

    let k_lambda = surface.log_canonical_coords(&lambda)?;
    let mut negative = Vec::new();
    let n = surface.basis.len();
    let units = surface.basis.iter().enumerate().map(|(i, name)| {
        let mut e = vec![Rational::zero(); n];
        e[i] = int(1);
        (name, e)
    });
    let curves = surface
        .curves
        .iter()
        .map(|(name, c)| (name, surface.basis_coords(c)));
    for (name, x) in units.chain(curves) {
        if !negative.contains(name) && surface.form(&k_lambda, &x) < int(0) {
            negative.push(name.clone());
        }
    }
    let status = if negative.is_empty() {
        MmpStatus::Minimal
    } else {
        MmpStatus::NotMinimal {
            negative_classes: negative,
        }
    };
    Ok(MmpOutcome {
        steps,
        blocked,
        status,
        surface,
        lambda,
    })
}
