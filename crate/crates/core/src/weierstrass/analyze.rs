//! Resolution of the discriminant by point blow-ups.
//!
//! The discriminant is never factored. Its reduced form is split into
//! pairwise coprime pieces on which `(ord a, ord b, ord Delta)` is constant,
//! using gcds only; lines `s = c` and `t = c` with rational `c` are split
//! off as separate divisors. Each piece becomes one named divisor and is
//! tracked through the blow-ups by its local equation. A piece that is
//! singular at a point (a node included) counts as non-normal-crossing
//! there, since its local branches cannot be told apart without factoring.
//!
//! Points are examined only when rational. The root chart is searched
//! through resultants; on a new exceptional curve only the intersections
//! with the other divisors are examined, by restricting their equations.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::poly::BivariatePoly;
use super::univariate::{common_root_over, resultant_t, UPoly};
use super::{blow_up_chart, discriminant, snc_at_origin, Axis, Chart, WeierstrassError};
use crate::collision::{collide, CollisionClass, CollisionInput, CollisionOutcome};
use crate::kodaira::{classify_from_orders, FiberType, KodairaError};
use crate::logsurface::{lambda_coefficient, QDivisor, Surface};
use crate::rational::{int, Rational};

pub const DEFAULT_MAX_BLOWUPS: usize = 24;

/// Order used for an identically vanishing `a`.
const CLAMP_A: u32 = 4;
/// Order used for an identically vanishing `b`.
const CLAMP_B: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DivisorOrigin {
    /// A piece of the discriminant of the original model.
    Original,
    /// The exceptional curve of a blow-up.
    Exceptional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorReport {
    pub name: String,
    pub origin: DivisorOrigin,
    /// Equation on the original base, for original divisors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equation: Option<BivariatePoly>,
    pub ord_a: u32,
    pub ord_b: u32,
    pub ord_delta: u32,
    pub fiber_type: FiberType,
    #[serde(with = "crate::rational::serde_str")]
    pub lambda_coefficient: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepReport {
    pub exceptional: String,
    pub center: String,
    /// Multiplicity at the center of each discriminant divisor through it.
    pub through: BTreeMap<String, u32>,
    pub ord_a: u32,
    pub ord_b: u32,
    pub ord_delta: u32,
    pub fiber_type: FiberType,
    #[serde(with = "crate::rational::serde_str")]
    pub lambda_coefficient: Rational,
    /// Coefficient of the new curve in the pullback of the old boundary.
    #[serde(with = "crate::rational::serde_str")]
    pub pullback_lambda: Rational,
    pub lambda_pullback_holds: bool,
    /// Pole order of `J` along the new curve predicted by pulling back `J_inf`.
    pub pullback_pole: u32,
    pub pole_pullback_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionReport {
    pub left: String,
    pub right: String,
    pub left_type: FiberType,
    pub right_type: FiberType,
    pub location: String,
    /// Number of points described by `location` (irrational points come in
    /// conjugate sets).
    pub points: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<CollisionOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<CollisionClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartAxis {
    pub axis: Axis,
    pub divisor: String,
}

/// A chart of the base with the Weierstrass data pulled back to it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseChart {
    pub label: String,
    pub a: BivariatePoly,
    pub b: BivariatePoly,
    pub exceptional_axes: Vec<ChartAxis>,
    pub children: Vec<BaseChart>,
}

impl BaseChart {
    pub fn count(&self) -> usize {
        1 + self.children.iter().map(BaseChart::count).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BaseResolution {
    pub a: BivariatePoly,
    pub b: BivariatePoly,
    pub discriminant: BivariatePoly,
    pub divisors: Vec<DivisorReport>,
    pub steps: Vec<StepReport>,
    pub collisions: Vec<CollisionReport>,
    pub snc: bool,
    pub charts: BaseChart,
}

impl BaseResolution {
    pub fn blowups(&self) -> usize {
        self.steps.len()
    }

    pub fn divisor(&self, name: &str) -> Option<&DivisorReport> {
        self.divisors.iter().find(|d| d.name == name)
    }

    /// Every step satisfies the boundary pullback identity.
    pub fn lambda_pullback_holds(&self) -> bool {
        self.steps.iter().all(|s| s.lambda_pullback_holds)
    }

    /// The blown-up germ as a lattice, with the boundary divisor on it.
    ///
    /// Each original divisor is a basis class of square 0 (the germ has no
    /// compact curves before blowing up) and the canonical class starts at
    /// zero; blow-ups are then replayed with their multiplicities, so the
    /// boundary refers to strict transforms.
    pub fn surface(&self) -> (Surface, QDivisor) {
        let originals: Vec<&DivisorReport> = self
            .divisors
            .iter()
            .filter(|d| d.origin == DivisorOrigin::Original)
            .collect();
        let names: Vec<String> = originals.iter().map(|d| d.name.clone()).collect();
        let n = names.len();
        // basis classes are bracketed so the curve names stay free
        let basis = names.iter().map(|b| format!("[{b}]")).collect();
        let mut s = Surface::new(basis, vec![vec![0; n]; n], QDivisor::zero()).expect("zero form is valid");
        for name in &names {
            s = s
                .with_curve(name, QDivisor::single(&format!("[{name}]"), int(1)))
                .expect("fresh names");
        }
        for step in &self.steps {
            let m = step.through.iter().map(|(k, v)| (k.clone(), *v as i64)).collect();
            s = s.blow_up(&step.exceptional, &m).expect("recorded blow-ups replay");
        }
        let lambda = QDivisor::from_terms(
            self.divisors
                .iter()
                .map(|d| (d.name.as_str(), d.lambda_coefficient.clone())),
        );
        (s, lambda)
    }
}

/// Local data at a chart: Weierstrass coefficients and the equations of
/// the discriminant divisors (indices into the divisor list).
#[derive(Clone)]
struct Local {
    a: BivariatePoly,
    b: BivariatePoly,
    divs: Vec<(usize, BivariatePoly)>,
}

impl Local {
    fn translate(&self, s0: &Rational, t0: &Rational) -> Local {
        Local {
            a: self.a.translate(s0, t0),
            b: self.b.translate(s0, t0),
            divs: self
                .divs
                .iter()
                .map(|(i, f)| (*i, f.translate(s0, t0).monic()))
                .collect(),
        }
    }
}

struct Driver {
    divisors: Vec<DivisorReport>,
    steps: Vec<StepReport>,
    collisions: Vec<CollisionReport>,
    budget: usize,
    exceptional_count: usize,
}

fn ord_or(f: &BivariatePoly, axis: Axis, clamp: u32) -> u32 {
    if f.is_zero() {
        clamp
    } else {
        match axis {
            Axis::S => f.s_order(),
            Axis::T => f.t_order(),
        }
    }
}

fn classify(name: &str, ord_a: u32, ord_b: u32, ord_delta: u32) -> Result<FiberType, WeierstrassError> {
    classify_from_orders(ord_a, ord_b, ord_delta).map_err(|e| match e {
        KodairaError::NonMinimal { .. } => WeierstrassError::NonMinimalModel {
            divisor: name.to_string(),
            ord_a,
            ord_b,
        },
        other => other.into(),
    })
}

fn fmt_point(s0: &Rational, t0: &Rational) -> String {
    format!("({s0}, {t0})")
}

impl Driver {
    fn axes(&self, local: &Local) -> Vec<ChartAxis> {
        let mut out = Vec::new();
        for (i, f) in &local.divs {
            let axis = if *f == BivariatePoly::s() {
                Axis::S
            } else if *f == BivariatePoly::t() {
                Axis::T
            } else {
                continue;
            };
            out.push(ChartAxis {
                axis,
                divisor: self.divisors[*i].name.clone(),
            });
        }
        out
    }

    fn record_collision(&mut self, i: usize, j: usize, location: String, points: u32) {
        let (i, j) = (i.min(j), i.max(j));
        let (l, r) = (&self.divisors[i], &self.divisors[j]);
        let mut report = CollisionReport {
            left: l.name.clone(),
            right: r.name.clone(),
            left_type: l.fiber_type,
            right_type: r.fiber_type,
            location,
            points,
            outcome: None,
            class: None,
            error: None,
        };
        match collide(&CollisionInput::section(l.fiber_type, r.fiber_type)) {
            Ok(o) => {
                report.class = Some(o.class());
                report.outcome = Some(o);
            }
            Err(e) => report.error = Some(e.to_string()),
        }
        self.collisions.push(report);
    }

    /// Examines the origin of `local`.
    fn examine(&mut self, local: &Local, location: String, chart: &mut BaseChart) -> Result<(), WeierstrassError> {
        let through: Vec<&(usize, BivariatePoly)> = local
            .divs
            .iter()
            .filter(|(_, f)| f.coefficient(0, 0).is_zero())
            .collect();
        if through.is_empty() {
            return Ok(());
        }
        let eqs: Vec<BivariatePoly> = through.iter().map(|(_, f)| f.clone()).collect();
        if snc_at_origin(&eqs) {
            if let [(i, _), (j, _)] = through[..] {
                self.record_collision(*i, *j, location, 1);
            }
            return Ok(());
        }
        self.blow_up(local, location, chart)
    }

    fn blow_up(&mut self, local: &Local, center: String, chart: &mut BaseChart) -> Result<(), WeierstrassError> {
        if self.steps.len() >= self.budget {
            return Err(WeierstrassError::BudgetExhausted { budget: self.budget });
        }
        self.exceptional_count += 1;
        let name = format!("E{}", self.exceptional_count);

        let mut through = BTreeMap::new();
        let mut pullback_lambda = Rational::zero();
        let mut pullback_pole = 0;
        for (i, f) in &local.divs {
            let m = f.lowest_degree().expect("nonzero equation");
            if m > 0 {
                let d = &self.divisors[*i];
                through.insert(d.name.clone(), m);
                pullback_lambda += &d.lambda_coefficient * int(m as i64);
                pullback_pole += d.fiber_type.pole_order() * m;
            }
        }

        let (si, ti) = Chart::SOverT.substitution();
        let a_s = local.a.substitute(&si, &ti);
        let b_s = local.b.substitute(&si, &ti);
        let delta_s = discriminant(&a_s, &b_s);
        let ord_a = ord_or(&a_s, Axis::S, CLAMP_A);
        let ord_b = ord_or(&b_s, Axis::S, CLAMP_B);
        let ord_delta = delta_s.s_order();
        let fiber_type = classify(&name, ord_a, ord_b, ord_delta)?;
        let lambda = lambda_coefficient(fiber_type);
        let index = self.divisors.len();
        self.divisors.push(DivisorReport {
            name: name.clone(),
            origin: DivisorOrigin::Exceptional,
            equation: None,
            ord_a,
            ord_b,
            ord_delta,
            fiber_type,
            lambda_coefficient: lambda.clone(),
        });
        self.steps.push(StepReport {
            exceptional: name.clone(),
            center,
            through,
            ord_a,
            ord_b,
            ord_delta,
            fiber_type,
            lambda_pullback_holds: pullback_lambda == lambda,
            lambda_coefficient: lambda,
            pullback_lambda,
            pole_pullback_holds: pullback_pole == fiber_type.pole_order(),
            pullback_pole,
        });

        for c in [Chart::SOverT, Chart::TOverS] {
            let (si, ti) = c.substitution();
            let mut divs = Vec::new();
            for (i, f) in &local.divs {
                let strict = blow_up_chart(f, c)?.strict.monic();
                if !strict.is_constant() {
                    divs.push((*i, strict));
                }
            }
            let in_sigma = ord_delta > 0;
            if in_sigma {
                let e = match c.exceptional_axis() {
                    Axis::S => BivariatePoly::s(),
                    Axis::T => BivariatePoly::t(),
                };
                divs.push((index, e));
            }
            let child = Local {
                a: local.a.substitute(&si, &ti),
                b: local.b.substitute(&si, &ti),
                divs,
            };
            let label = format!("{name} {}", c.describe());
            let mut node = BaseChart {
                label: label.clone(),
                a: child.a.clone(),
                b: child.b.clone(),
                exceptional_axes: self.axes(&child),
                children: Vec::new(),
            };
            match c {
                Chart::SOverT => {
                    if in_sigma {
                        self.walk_exceptional(&child, index, &label, &mut node)?;
                    }
                }
                Chart::TOverS => {
                    let z = int(0);
                    self.examine(&child, format!("{label} at {}", fmt_point(&z, &z)), &mut node)?;
                }
            }
            chart.children.push(node);
        }
        Ok(())
    }

    /// Visits the points of the exceptional curve `{s = 0}` of a chart
    /// where another divisor meets it.
    fn walk_exceptional(
        &mut self,
        local: &Local,
        e_index: usize,
        label: &str,
        node: &mut BaseChart,
    ) -> Result<(), WeierstrassError> {
        let zero = int(0);
        let mut rational = BTreeSet::new();
        let mut irrational: Vec<(usize, UPoly)> = Vec::new();
        for (i, f) in &local.divs {
            if *i == e_index {
                continue;
            }
            let u = f.at_s(&zero);
            assert!(!u.is_zero(), "divisors are coprime to the exceptional curve");
            let (roots, _) = u.split_rational();
            let mut rest = u.clone();
            for r in &roots {
                rational.insert(r.clone());
                let lin = UPoly::linear(r);
                while let Some(q) = rest.divide_exact(&lin) {
                    rest = q;
                }
            }
            if rest.degree() > 0 {
                if rest.gcd(&rest.derivative()).degree() > 0 {
                    return Err(WeierstrassError::IrrationalCenter(format!(
                        "tangency with {} at a root of {}",
                        self.divisors[e_index].name,
                        rest.display_in("t")
                    )));
                }
                for (_, other) in &irrational {
                    if other.gcd(&rest).degree() > 0 {
                        return Err(WeierstrassError::IrrationalCenter(format!(
                            "three divisors meet {} at a root of {}",
                            self.divisors[e_index].name,
                            other.gcd(&rest).display_in("t")
                        )));
                    }
                }
                irrational.push((*i, rest.monic()));
            }
        }
        for (i, rest) in irrational {
            let location = format!("{label} at s = 0, t a root of {}", rest.display_in("t"));
            self.record_collision(i, e_index, location, rest.degree() as u32);
        }
        for t0 in rational {
            let moved = local.translate(&zero, &t0);
            self.examine(&moved, format!("{label} at {}", fmt_point(&zero, &t0)), node)?;
        }
        Ok(())
    }
}

/// Splits a square-free `f` by the exact order of `g` along its factors:
/// `(piece, order)` with pairwise coprime pieces.
fn split_by_order(f: &BivariatePoly, g: &BivariatePoly, clamp: u32) -> Vec<(BivariatePoly, u32)> {
    if g.is_zero() {
        return vec![(f.clone(), clamp)];
    }
    let mut out = Vec::new();
    let mut rest = g.clone();
    let mut levels = vec![f.clone()];
    loop {
        let top = levels.last().unwrap();
        let next = top.gcd(&rest);
        if next.is_constant() {
            break;
        }
        rest = rest.divide_exact(&next).expect("gcd divides");
        levels.push(next);
    }
    // levels[k] = product of the factors with order >= k
    for k in 0..levels.len() {
        let piece = match levels.get(k + 1) {
            Some(nxt) => levels[k].divide_exact(nxt).expect("nested"),
            None => levels[k].clone(),
        };
        if !piece.is_constant() {
            out.push((piece.monic(), k as u32));
        }
    }
    out
}

/// Splits off rational lines `s = c` and `t = c`.
fn split_lines(f: &BivariatePoly) -> Vec<BivariatePoly> {
    let mut out = Vec::new();
    let push_univariate = |u: &UPoly, lift: &dyn Fn(&UPoly) -> BivariatePoly, out: &mut Vec<BivariatePoly>| {
        if u.degree() == 0 {
            return;
        }
        let (roots, rest) = u.split_rational();
        for r in roots {
            out.push(lift(&UPoly::linear(&r)).monic());
        }
        if rest.degree() > 0 {
            out.push(lift(&rest).monic());
        }
    };
    let (cs, f1) = f.primitive_in_t();
    push_univariate(&cs, &|u| BivariatePoly::from_s_poly(u), &mut out);
    let (ct, f2) = f1.swap().primitive_in_t();
    push_univariate(&ct, &|u| BivariatePoly::from_s_poly(u).swap(), &mut out);
    let core = f2.swap();
    if !core.is_constant() {
        out.push(core.monic());
    }
    out
}

/// Rational singular points of the square-free curve `r = 0`.
fn singular_points(r: &BivariatePoly) -> Result<Vec<(Rational, Rational)>, WeierstrassError> {
    let mut pts = BTreeSet::new();
    let (c, r1) = r.primitive_in_t();
    let r1_t = r1.derivative_t();
    let r1_s = r1.derivative_s();
    let irrational = |what: String| Err(WeierstrassError::IrrationalCenter(what));

    // vertical lines s = s0 and where they meet the rest
    let (c_roots, c_rest) = c.split_rational();
    for s0 in &c_roots {
        let u = r1.at_s(s0);
        let (t_roots, t_rest) = u.split_rational();
        if t_rest.degree() > 0 && r1.degree_t() > 0 {
            return irrational(format!("s = {s0} meets the discriminant where {} = 0", t_rest.display_in("t")));
        }
        for t0 in t_roots {
            pts.insert((s0.clone(), t0));
        }
    }
    if c_rest.degree() > 0 && r1.degree_t() > 0 {
        let meets = r1
            .coefficients_in_t()
            .iter()
            .skip(1)
            .any(|k| k.div_rem(&c_rest).1 != UPoly::zero());
        if meets {
            return irrational(format!("the lines {} = 0 meet the discriminant", c_rest.display_in("s")));
        }
    }

    // singular points of the primitive part
    if r1.degree_t() > 0 {
        let res_t = resultant_t(&r1, &r1_t);
        // each resultant vanishes at the s-coordinates of singular points
        let mut g = res_t;
        for (f, h) in [(&r1, &r1_s), (&r1_t, &r1_s)] {
            if g.degree() == 0 || h.is_zero() {
                break;
            }
            let res = resultant_t(f, h);
            if !res.is_zero() {
                g = g.gcd(&res);
            }
        }
        let (s_roots, s_rest) = g.split_rational();
        if s_rest.degree() > 0 && common_root_over(&s_rest, &[r1.clone(), r1_t.clone(), r1_s.clone()]) {
            return irrational(format!("candidate singular points over {} = 0", s_rest.display_in("s")));
        }
        for s0 in s_roots {
            let u = r1.at_s(&s0).gcd(&r1_t.at_s(&s0)).gcd(&r1_s.at_s(&s0));
            let (t_roots, t_rest) = u.split_rational();
            if t_rest.degree() > 0 {
                return irrational(format!("singular points at s = {s0}, {} = 0", t_rest.display_in("t")));
            }
            for t0 in t_roots {
                pts.insert((s0.clone(), t0));
            }
        }
    }
    Ok(pts.into_iter().collect())
}

/// Blows up every non-normal-crossing point of the discriminant of
/// `y^2 = x^3 + a x + b` until it has normal crossings, reporting the
/// divisors, the blow-ups and the remaining collisions.
pub fn analyze(
    a: &BivariatePoly,
    b: &BivariatePoly,
    max_blowups: usize,
) -> Result<BaseResolution, WeierstrassError> {
    let delta = discriminant(a, b);
    if delta.is_zero() {
        return Err(WeierstrassError::DegenerateFibration);
    }
    let reduced = delta.square_free_part();

    let mut driver = Driver {
        divisors: Vec::new(),
        steps: Vec::new(),
        collisions: Vec::new(),
        budget: max_blowups,
        exceptional_count: 0,
    };
    let mut divs = Vec::new();
    for (by_delta, ord_delta) in split_by_order(&reduced, &delta, 0) {
        for (by_a, ord_a) in split_by_order(&by_delta, a, CLAMP_A) {
            for (by_b, ord_b) in split_by_order(&by_a, b, CLAMP_B) {
                if ord_delta == 0 {
                    continue;
                }
                for piece in split_lines(&by_b) {
                    let name = format!("D{}", divs.len() + 1);
                    let fiber_type = classify(&name, ord_a, ord_b, ord_delta)?;
                    divs.push((driver.divisors.len(), piece.clone()));
                    driver.divisors.push(DivisorReport {
                        name,
                        origin: DivisorOrigin::Original,
                        equation: Some(piece),
                        ord_a,
                        ord_b,
                        ord_delta,
                        fiber_type,
                        lambda_coefficient: lambda_coefficient(fiber_type),
                    });
                }
            }
        }
    }

    let root = Local {
        a: a.clone(),
        b: b.clone(),
        divs,
    };
    let mut charts = BaseChart {
        label: "S0".to_string(),
        a: a.clone(),
        b: b.clone(),
        exceptional_axes: Vec::new(),
        children: Vec::new(),
    };
    for (s0, t0) in singular_points(&reduced)? {
        let moved = root.translate(&s0, &t0);
        driver.examine(&moved, format!("S0 at {}", fmt_point(&s0, &t0)), &mut charts)?;
    }

    Ok(BaseResolution {
        a: a.clone(),
        b: b.clone(),
        discriminant: delta,
        divisors: driver.divisors,
        steps: driver.steps,
        collisions: driver.collisions,
        snc: true,
        charts,
    })
}

/// The collisions left after resolution, each with its verdict.
pub fn collision_report(resolution: &BaseResolution) -> Vec<CollisionReport> {
    resolution.collisions.clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kodaira::FiberKind::*;
    use crate::logsurface::{mmp_drive, MmpStatus};
    use crate::rational::ratio;
    use crate::weierstrass::parse_poly;

    fn p(text: &str) -> BivariatePoly {
        parse_poly(text).unwrap()
    }

    fn run(a: &str, b: &str) -> BaseResolution {
        analyze(&p(a), &p(b), DEFAULT_MAX_BLOWUPS).unwrap()
    }

    #[test]
    fn cusp_needs_three_blowups() {
        let r = run("s", "t");
        assert_eq!(r.blowups(), 3);
        let orders: Vec<(u32, u32, u32)> = r.steps.iter().map(|s| (s.ord_a, s.ord_b, s.ord_delta)).collect();
        assert_eq!(orders, [(1, 1, 2), (1, 2, 3), (2, 3, 6)]);
        let types: Vec<FiberType> = r.steps.iter().map(|s| s.fiber_type).collect();
        assert_eq!(types, [II, III, IStar(0)].map(FiberType::new));
        let lambdas: Vec<Rational> = r.steps.iter().map(|s| s.lambda_coefficient.clone()).collect();
        assert_eq!(lambdas, [ratio(1, 6), ratio(1, 4), ratio(1, 2)]);
        assert!(r.lambda_pullback_holds());
        // J_inf does not pull back before the discriminant is resolved
        assert!(!r.steps[0].pole_pullback_holds);
        assert_eq!(r.divisor("D1").unwrap().fiber_type, FiberType::new(I(1)));
        assert!(r.snc);
    }

    #[test]
    fn cusp_lambda_telescopes() {
        let r = run("s", "t");
        let lam = |n: &str| r.divisor(n).unwrap().lambda_coefficient.clone();
        assert_eq!(lam("E1"), lam("D1") * int(2));
        assert_eq!(lam("E2"), lam("D1") + lam("E1"));
        assert_eq!(lam("E3"), lam("D1") + lam("E1") + lam("E2"));
    }

    #[test]
    fn cusp_collisions_are_good() {
        let r = run("s", "t");
        let pairs: Vec<(String, String)> = collision_report(&r)
            .iter()
            .map(|c| (c.left_type.to_string(), c.right_type.to_string()))
            .collect();
        let mut expected = vec![
            ("II".to_string(), "I0*".to_string()),
            ("III".to_string(), "I0*".to_string()),
            ("I1".to_string(), "I0*".to_string()),
        ];
        let mut got = pairs.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        assert!(r.collisions.iter().all(|c| c.class == Some(CollisionClass::Good)));
        let betas: BTreeSet<Rational> = r.collisions.iter().map(|c| c.outcome.clone().unwrap().beta).collect();
        assert_eq!(betas, [ratio(2, 3), ratio(3, 4), ratio(1, 2)].into_iter().collect());
    }

    #[test]
    fn cusp_tower_contracts_back() {
        let r = run("s", "t");
        let (surface, lambda) = r.surface();
        let out = mmp_drive(&surface, &lambda).unwrap();
        let contracted: Vec<&str> = out.steps.iter().map(|s| s.class.as_str()).collect();
        assert_eq!(contracted, ["E3", "E2", "E1"]);
        assert!(out.steps.iter().all(|s| s.log_canonical_degree == int(-1)));
        assert_eq!(out.surface.basis(), ["[D1]"]);
        assert_eq!(out.status, MmpStatus::Minimal);
    }

    #[test]
    fn smooth_discriminant_needs_nothing() {
        let r = run("1", "t");
        assert_eq!(r.blowups(), 0);
        assert!(r.collisions.is_empty());
        assert!(r.divisors.iter().all(|d| d.fiber_type == FiberType::new(I(1))));
    }

    #[test]
    fn vanishing_a_is_clamped() {
        let r = run("0", "s*t");
        assert_eq!(r.blowups(), 0);
        assert_eq!(r.divisors.len(), 2);
        for d in &r.divisors {
            assert_eq!((d.ord_a, d.ord_b, d.ord_delta), (CLAMP_A, 1, 2));
            assert_eq!(d.fiber_type, FiberType::new(II));
        }
        assert_eq!(r.collisions.len(), 1);
        // II meets II in a IV fiber: good
        assert_eq!(r.collisions[0].class, Some(CollisionClass::Good));
    }

    #[test]
    fn crossing_lines_collide_once() {
        let r = run("-3", "2 + s*t");
        // Delta = 27 s t (4 + s t): the axes are I1 and cross at the origin
        assert_eq!(r.blowups(), 0);
        let at_origin: Vec<&CollisionReport> = r.collisions.iter().filter(|c| c.location.contains("(0, 0)")).collect();
        assert_eq!(at_origin.len(), 1);
        assert_eq!(at_origin[0].class, Some(CollisionClass::Good));
        assert_eq!(at_origin[0].outcome.as_ref().unwrap().gamma_type, FiberType::new(I(2)));
    }

    #[test]
    fn tangent_components_are_separated() {
        // Delta contains t and t - s^2, tangent at the origin
        let r = run("-3", "2 + t*(t - s^2)");
        assert_eq!(r.blowups(), 2);
        assert!(r.lambda_pullback_holds());
    }

    #[test]
    fn budget_and_minimality() {
        assert_eq!(
            analyze(&p("s"), &p("t"), 2).unwrap_err(),
            WeierstrassError::BudgetExhausted { budget: 2 }
        );
        assert!(matches!(
            analyze(&p("s^4"), &p("s^6*t + s^7"), 24),
            Err(WeierstrassError::NonMinimalModel { .. })
        ));
        assert_eq!(analyze(&p("-3"), &p("2"), 24).unwrap_err(), WeierstrassError::DegenerateFibration);
    }

    #[test]
    fn splitting_pieces() {
        let f = p("s*(s - 1)*(s^2 - 2)*t*(t + 1/2)*(s - t^2)");
        let pieces = split_lines(&f);
        assert!(pieces.contains(&p("s")));
        assert!(pieces.contains(&p("s - 1")));
        assert!(pieces.contains(&p("s^2 - 2")));
        assert!(pieces.contains(&p("t + 1/2")));
        assert!(pieces.contains(&p("s - t^2").monic()));
        assert_eq!(pieces.len(), 6);
        let by = split_by_order(&p("s*t*(s + t + 1)"), &p("s^3*t*(s + t + 1)^0"), 0);
        assert_eq!(by, vec![(p("s + t + 1"), 0), (p("t"), 1), (p("s"), 3)]);
    }

    #[test]
    fn report_round_trips() {
        let r = run("s", "t");
        let text = serde_json::to_string(&r).unwrap();
        let back: BaseResolution = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.charts.count(), 7);
    }
}
