//! Collisions of two discriminant branches and their resolution by blowing
//! up the crossing point.
//!
//! For branches with coefficients `a_l`, `a_m` (and multiplicities `n1`,
//! `n2` of the general fiber) the exceptional curve `Gamma` of the blow-up
//! gets
//!
//! ```text
//! beta  = a_l + a_m + (n1 - 1)/n1 + (n2 - 1)/n2
//! alpha = beta - a(Gamma) - (n(Gamma) - 1)/n(Gamma)
//! delta = 1 - alpha
//! ```
//!
//! where the type on `Gamma` comes from the product of the two branch
//! monodromies. A collision is bad when `alpha >= 1`; bad collisions are
//! replaced by good ones after finitely many further blow-ups ([`resolve`]).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::kodaira::{
    classify_from_monodromy, coefficient_a, monodromy_of, FiberKind, FiberType, KodairaError,
};
use crate::monodromy::{blowup_monodromy, MonodromyError, SL2Matrix};
use crate::rational::{int, Rational};

/// Depth budget used by [`resolve`].
pub const DEFAULT_DEPTH_BUDGET: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CollisionError {
    #[error("{left} and {right} have incompatible J-invariants at the crossing point")]
    IncompatibleJFamilies { left: FiberType, right: FiberType },
    #[error("a multiple branch is involved; the multiplicity n(Gamma) must be supplied")]
    MissingMultiplicity,
    #[error("branch multiplicity {given} disagrees with fiber type {fiber}")]
    MultiplicityMismatch { fiber: FiberType, given: u32 },
    #[error("multiplicities must be positive")]
    ZeroMultiplicity,
    #[error("multiplicities give alpha = {alpha} < 0")]
    InconsistentMultiplicities { alpha: Rational },
    #[error("operation requires the section case (no multiple fibers)")]
    NotSectionCase,
    #[error("collision {left} x {right} is bad")]
    NotGood { left: FiberType, right: FiberType },
    #[error("resolution of {left} x {right} exceeds the depth budget of {budget} blow-ups")]
    DepthBudgetExceeded {
        left: FiberType,
        right: FiberType,
        budget: usize,
    },
    #[error(transparent)]
    Kodaira(#[from] KodairaError),
    #[error(transparent)]
    Monodromy(#[from] MonodromyError),
}

/// Two discriminant branches crossing transversally at a point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionInput {
    pub left: FiberType,
    pub right: FiberType,
    pub n_left: u32,
    pub n_right: u32,
    /// Multiplicity of the general fiber over `Gamma`; `None` when unknown.
    pub n_gamma: Option<u32>,
}

impl CollisionInput {
    /// Collision of a fibration with a section: no multiple fibers anywhere.
    pub fn section(left: impl Into<FiberType>, right: impl Into<FiberType>) -> Self {
        CollisionInput {
            left: left.into(),
            right: right.into(),
            n_left: 1,
            n_right: 1,
            n_gamma: Some(1),
        }
    }

    /// Branch multiplicities taken from the fiber types; `n(Gamma)` is left
    /// unspecified when either branch is multiple.
    pub fn from_types(left: FiberType, right: FiberType) -> Self {
        let n_left = left.multiplicity();
        let n_right = right.multiplicity();
        let n_gamma = (n_left == 1 && n_right == 1).then_some(1);
        CollisionInput {
            left,
            right,
            n_left,
            n_right,
            n_gamma,
        }
    }

    pub fn with_multiplicities(mut self, n_left: u32, n_right: u32, n_gamma: Option<u32>) -> Self {
        self.n_left = n_left;
        self.n_right = n_right;
        self.n_gamma = n_gamma;
        self
    }

    pub fn is_section_case(&self) -> bool {
        self.n_left == 1 && self.n_right == 1 && self.n_gamma.unwrap_or(1) == 1
    }

    pub fn swapped(&self) -> Self {
        CollisionInput {
            left: self.right,
            right: self.left,
            n_left: self.n_right,
            n_right: self.n_left,
            n_gamma: self.n_gamma,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollisionOutcome {
    #[serde(with = "crate::rational::serde_str")]
    pub beta: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub a_gamma: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub alpha: Rational,
    #[serde(with = "crate::rational::serde_str")]
    pub delta: Rational,
    pub gamma_type: FiberType,
    pub gamma_pole: u32,
    pub gamma_monodromy: SL2Matrix,
}

impl CollisionOutcome {
    pub fn class(&self) -> CollisionClass {
        if self.alpha >= int(1) {
            CollisionClass::Bad
        } else {
            CollisionClass::Good
        }
    }

    pub fn equidimensional_verdict(&self, pullback_defect_effective: bool) -> Verdict {
        equidimensional_verdict(&self.delta, pullback_defect_effective)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CollisionClass {
    Good,
    Bad,
}

/// Existence of an equidimensional model over the contracted base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    ExistsWithOneDimFiber,
    ExistsWithDivisorialFiber,
    Impossible,
    ConditionallyPossible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MirandaModel {
    Smooth,
    TerminalNotSmooth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum JFamily {
    Zero,
    One,
    Pole,
    Regular,
}

fn j_family(t: FiberType) -> JFamily {
    match t.kind() {
        FiberKind::II | FiberKind::IV | FiberKind::IVStar | FiberKind::IIStar => JFamily::Zero,
        FiberKind::III | FiberKind::IIIStar => JFamily::One,
        FiberKind::I(0) | FiberKind::IStar(0) => JFamily::Regular,
        FiberKind::I(_) | FiberKind::IStar(_) => JFamily::Pole,
    }
}

/// `J` must take one value at the crossing point: a branch along which `J`
/// is constantly 0 cannot meet one where it is constantly 1 or infinite.
fn j_compatible(left: FiberType, right: FiberType) -> bool {
    use JFamily::*;
    !matches!(
        (j_family(left), j_family(right)),
        (Zero, One) | (One, Zero) | (Zero | One, Pole) | (Pole, Zero | One)
    )
}

fn multiple_part(n: u32) -> Rational {
    Rational::new((n as i64 - 1).into(), (n as i64).into())
}

fn check_branch(fiber: FiberType, n: u32) -> Result<(), CollisionError> {
    if n == 0 {
        return Err(CollisionError::ZeroMultiplicity);
    }
    if fiber.multiplicity() > 1 && fiber.multiplicity() != n {
        return Err(CollisionError::MultiplicityMismatch { fiber, given: n });
    }
    if n > 1 {
        fiber.with_multiplicity(n)?;
    }
    Ok(())
}

/// Blows up the crossing point and computes `beta`, `a(Gamma)`, `alpha`,
/// `delta` and the fiber type over `Gamma`.
pub fn collide(input: &CollisionInput) -> Result<CollisionOutcome, CollisionError> {
    check_branch(input.left, input.n_left)?;
    check_branch(input.right, input.n_right)?;
    let n_gamma = match input.n_gamma {
        Some(0) => return Err(CollisionError::ZeroMultiplicity),
        Some(n) => n,
        None if input.n_left == 1 && input.n_right == 1 => 1,
        None => return Err(CollisionError::MissingMultiplicity),
    };
    if !j_compatible(input.left, input.right) {
        return Err(CollisionError::IncompatibleJFamilies {
            left: input.left,
            right: input.right,
        });
    }

    let beta = coefficient_a(input.left)
        + coefficient_a(input.right)
        + multiple_part(input.n_left)
        + multiple_part(input.n_right);

    let gamma_monodromy = blowup_monodromy(&monodromy_of(input.left), &monodromy_of(input.right))?;
    let gamma_pole = input
        .left
        .pole_order()
        .checked_add(input.right.pole_order())
        .ok_or(MonodromyError::Overflow)?;
    let gamma_type = classify_from_monodromy(&gamma_monodromy, gamma_pole)?.with_multiplicity(n_gamma)?;

    let a_gamma = coefficient_a(gamma_type);
    let alpha = &beta - &a_gamma - multiple_part(n_gamma);
    if alpha < int(0) {
        return Err(CollisionError::InconsistentMultiplicities { alpha });
    }
    let delta = int(1) - &alpha;
    Ok(CollisionOutcome {
        beta,
        a_gamma,
        alpha,
        delta,
        gamma_type,
        gamma_pole,
        gamma_monodromy,
    })
}

/// Good or bad, for collisions of a fibration with a section.
pub fn classify_collision(input: &CollisionInput) -> Result<CollisionClass, CollisionError> {
    if !input.is_section_case() {
        return Err(CollisionError::NotSectionCase);
    }
    Ok(collide(input)?.class())
}

/// Whether the blow-up is a `(K + Lambda)`-extremal contraction.
pub fn log_extremal_verdict(outcome: &CollisionOutcome) -> bool {
    outcome.alpha < int(1)
}

/// Decides existence of an equidimensional model from the sign of `delta`.
///
/// `pullback_defect_effective` states that the canonical class of the
/// threefold is numerically the pullback of `K + Lambda`; when false only
/// the weaker situation with a non-effective defect is known.
pub fn equidimensional_verdict(delta: &Rational, pullback_defect_effective: bool) -> Verdict {
    let zero = int(0);
    if pullback_defect_effective {
        if *delta > zero {
            Verdict::ExistsWithOneDimFiber
        } else if *delta == zero {
            Verdict::ExistsWithDivisorialFiber
        } else {
            Verdict::Impossible
        }
    } else if *delta > zero {
        Verdict::ConditionallyPossible
    } else {
        Verdict::Impossible
    }
}

/// Terminal-but-not-smooth Miranda models occur only at `II-II` and `IV-IV`.
pub fn miranda_model_smoothness(
    left: FiberType,
    right: FiberType,
) -> Result<MirandaModel, CollisionError> {
    if classify_collision(&CollisionInput::section(left, right))? == CollisionClass::Bad {
        return Err(CollisionError::NotGood { left, right });
    }
    let terminal = matches!(
        (left.kind(), right.kind()),
        (FiberKind::II, FiberKind::II) | (FiberKind::IV, FiberKind::IV)
    );
    Ok(if terminal {
        MirandaModel::TerminalNotSmooth
    } else {
        MirandaModel::Smooth
    })
}

/// One collision in a resolution tree. Bad nodes are blown up; their
/// children are the crossings of each strict transform with `Gamma`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionNode {
    pub left: FiberType,
    pub right: FiberType,
    pub class: CollisionClass,
    pub outcome: CollisionOutcome,
    pub children: Vec<ResolutionNode>,
}

impl ResolutionNode {
    /// A bad collision whose exceptional curve carries a smooth fiber: the
    /// blow-up leaves no collision behind.
    pub fn is_vacuous_blowup(&self) -> bool {
        self.class == CollisionClass::Bad && self.outcome.gamma_type.is_smooth()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionTree {
    pub root: ResolutionNode,
}

impl ResolutionTree {
    pub fn blowup_count(&self) -> usize {
        fn count(n: &ResolutionNode) -> usize {
            usize::from(n.class == CollisionClass::Bad)
                + n.children.iter().map(count).sum::<usize>()
        }
        count(&self.root)
    }

    /// Longest chain of blow-ups.
    pub fn depth(&self) -> usize {
        fn depth(n: &ResolutionNode) -> usize {
            match n.class {
                CollisionClass::Good => 0,
                CollisionClass::Bad => 1 + n.children.iter().map(depth).max().unwrap_or(0),
            }
        }
        depth(&self.root)
    }

    /// Nodes without children, in depth-first order.
    pub fn leaves(&self) -> Vec<&ResolutionNode> {
        fn walk<'a>(n: &'a ResolutionNode, out: &mut Vec<&'a ResolutionNode>) {
            if n.children.is_empty() {
                out.push(n);
            }
            for c in &n.children {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        walk(&self.root, &mut out);
        out
    }

    /// `Gamma` types met while following the strict transform of `branch`
    /// through successive bad blow-ups.
    pub fn chain_along(&self, branch: FiberType) -> Vec<FiberType> {
        let mut out = Vec::new();
        let mut node = &self.root;
        loop {
            if node.class == CollisionClass::Good {
                break;
            }
            out.push(node.outcome.gamma_type);
            match node.children.iter().find(|c| c.left == branch) {
                Some(next) => node = next,
                None => break,
            }
        }
        out
    }

    /// Renders the tree with one line per collision.
    pub fn render(&self) -> String {
        fn walk(n: &ResolutionNode, depth: usize, out: &mut String) {
            let o = &n.outcome;
            let verdict = match n.class {
                CollisionClass::Good => "good",
                CollisionClass::Bad => "bad, blow up",
            };
            out.push_str(&format!(
                "{}{} x {}: β = {}, a(Γ) = {}, α = {}, δ = {}, Γ: {} [{}]\n",
                "  ".repeat(depth),
                n.left,
                n.right,
                o.beta,
                o.a_gamma,
                o.alpha,
                o.delta,
                o.gamma_type,
                verdict
            ));
            for c in &n.children {
                walk(c, depth + 1, out);
            }
        }
        let mut out = String::new();
        walk(&self.root, 0, &mut out);
        out
    }
}

/// Resolves a collision of a fibration with a section by blowing up until
/// every remaining collision is good.
pub fn resolve(input: &CollisionInput) -> Result<ResolutionTree, CollisionError> {
    resolve_with_budget(input, DEFAULT_DEPTH_BUDGET)
}

pub fn resolve_with_budget(
    input: &CollisionInput,
    max_depth: usize,
) -> Result<ResolutionTree, CollisionError> {
    if !input.is_section_case() {
        return Err(CollisionError::NotSectionCase);
    }
    let root = resolve_node(input.left, input.right, 0, max_depth, input)?;
    Ok(ResolutionTree { root })
}

fn resolve_node(
    left: FiberType,
    right: FiberType,
    depth: usize,
    max_depth: usize,
    root: &CollisionInput,
) -> Result<ResolutionNode, CollisionError> {
    let outcome = collide(&CollisionInput::section(left, right))?;
    let class = outcome.class();
    let mut children = Vec::new();
    if class == CollisionClass::Bad {
        if depth >= max_depth {
            return Err(CollisionError::DepthBudgetExceeded {
                left: root.left,
                right: root.right,
                budget: max_depth,
            });
        }
        let gamma = outcome.gamma_type;
        if !gamma.is_smooth() {
            for branch in [left, right] {
                children.push(resolve_node(branch, gamma, depth + 1, max_depth, root)?);
            }
        }
    }
    Ok(ResolutionNode {
        left,
        right,
        class,
        outcome,
        children,
    })
}

/// Number of blow-ups needed to resolve the collision.
pub fn blowup_count(input: &CollisionInput) -> Result<usize, CollisionError> {
    Ok(resolve(input)?.blowup_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{fract, ratio};
    use proptest::prelude::*;
    use FiberKind::*;

    fn ft(kind: FiberKind) -> FiberType {
        FiberType::new(kind)
    }

    fn sec(l: FiberKind, r: FiberKind) -> CollisionInput {
        CollisionInput::section(l, r)
    }

    #[test]
    fn ii_star_iv() {
        let o = collide(&sec(IIStar, IV)).unwrap();
        assert_eq!(o.beta, ratio(7, 6));
        assert_eq!(o.gamma_type, ft(II));
        assert_eq!(o.a_gamma, ratio(1, 6));
        assert_eq!(o.alpha, int(1));
        assert_eq!(o.delta, int(0));
    }

    #[test]
    fn smooth_smooth() {
        let o = collide(&sec(I(0), I(0))).unwrap();
        assert_eq!(o.beta, int(0));
        assert_eq!(o.gamma_type, ft(I(0)));
        assert_eq!(o.alpha, int(0));
        assert_eq!(o.delta, int(1));
    }

    #[test]
    fn two_triple_fibers() {
        let m3 = FiberType::multiple(0, 3).unwrap();
        let input = CollisionInput::section(m3, m3).with_multiplicities(3, 3, Some(1));
        let o = collide(&input).unwrap();
        assert_eq!(o.beta, ratio(4, 3));
        assert_eq!(o.a_gamma, int(0));
        assert_eq!(o.alpha, ratio(4, 3));
        assert_eq!(o.delta, ratio(-1, 3));
        assert!(!log_extremal_verdict(&o));
        assert_eq!(o.equidimensional_verdict(true), Verdict::Impossible);
    }

    #[test]
    fn multiple_fiber_over_gamma() {
        let input = sec(III, IIIStar).with_multiplicities(1, 1, Some(2));
        let o = collide(&input).unwrap();
        assert_eq!(o.beta, int(1));
        assert_eq!(o.a_gamma, int(0));
        assert_eq!(o.alpha, ratio(1, 2));
        assert_eq!(o.delta, ratio(1, 2));
        assert_eq!(o.gamma_type, FiberType::multiple(0, 2).unwrap());
    }

    #[test]
    fn one_multiple_branch() {
        // a_l > 0: a(Gamma) = a_l, alpha = 1 - 1/n1
        let m2 = FiberType::multiple(0, 2).unwrap();
        let o = collide(&CollisionInput::section(ft(II), m2).with_multiplicities(1, 2, Some(1)))
            .unwrap();
        assert_eq!(o.a_gamma, ratio(1, 6));
        assert_eq!(o.alpha, ratio(1, 2));
        // a_l = 0: n(Gamma) = n1 and alpha = 0
        let o = collide(&CollisionInput::section(ft(I(3)), m2).with_multiplicities(1, 2, Some(2)))
            .unwrap();
        assert_eq!(o.alpha, int(0));
        assert_eq!(o.gamma_type, FiberType::multiple(3, 2).unwrap());
    }

    #[test]
    fn istar_i() {
        let o = collide(&sec(IStar(2), I(3))).unwrap();
        assert_eq!(o.gamma_type, ft(IStar(5)));
        assert_eq!(o.a_gamma, ratio(1, 2));
        assert_eq!(o.beta, ratio(1, 2));
        assert_eq!(o.alpha, int(0));
        assert_eq!(o.gamma_pole, 5);
    }

    #[test]
    fn special_pole_cases() {
        let o = collide(&sec(I(2), I(5))).unwrap();
        assert_eq!((o.beta.clone(), o.a_gamma.clone()), (int(0), int(0)));
        let o = collide(&sec(IStar(1), IStar(4))).unwrap();
        assert_eq!(o.beta, int(1));
        assert_eq!(o.a_gamma, int(0));
        assert_eq!(o.alpha, int(1));
        assert_eq!(o.gamma_type, ft(I(5)));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            collide(&sec(II, III)),
            Err(CollisionError::IncompatibleJFamilies { .. })
        ));
        assert!(matches!(
            collide(&sec(IV, I(2))),
            Err(CollisionError::IncompatibleJFamilies { .. })
        ));
        let m2 = FiberType::multiple(0, 2).unwrap();
        assert_eq!(
            collide(&CollisionInput::from_types(m2, ft(I(1)))),
            Err(CollisionError::MissingMultiplicity)
        );
        assert!(matches!(
            collide(&sec(II, IV).with_multiplicities(2, 1, Some(1))),
            Err(CollisionError::Kodaira(KodairaError::InvalidMultiplicity { .. }))
        ));
        assert!(matches!(
            collide(&CollisionInput::section(m2, ft(I(1))).with_multiplicities(3, 1, Some(1))),
            Err(CollisionError::MultiplicityMismatch { .. })
        ));
        assert!(matches!(
            collide(&sec(I(0), I(0)).with_multiplicities(1, 1, Some(5))),
            Err(CollisionError::InconsistentMultiplicities { .. })
        ));
        assert_eq!(
            classify_collision(&sec(III, IIIStar).with_multiplicities(1, 1, Some(2))),
            Err(CollisionError::NotSectionCase)
        );
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_collision(&sec(IVStar, II)).unwrap(), CollisionClass::Good);
        assert_eq!(classify_collision(&sec(IStar(1), IStar(0))).unwrap(), CollisionClass::Bad);
        let o = collide(&sec(IIStar, IIStar)).unwrap();
        assert_eq!(o.beta, ratio(5, 3));
        assert_eq!(o.class(), CollisionClass::Bad);
    }

    #[test]
    fn resolve_istar_istar() {
        let tree = resolve(&sec(IStar(2), IStar(3))).unwrap();
        assert_eq!(tree.blowup_count(), 1);
        assert_eq!(tree.root.outcome.gamma_type, ft(I(5)));
        let kids: Vec<_> = tree.root.children.iter().map(|c| (c.left, c.right, c.class)).collect();
        assert_eq!(
            kids,
            vec![
                (ft(IStar(2)), ft(I(5)), CollisionClass::Good),
                (ft(IStar(3)), ft(I(5)), CollisionClass::Good)
            ]
        );
        assert_eq!(tree.root.children[0].outcome.gamma_type, ft(IStar(7)));
    }

    #[test]
    fn resolve_vacuous() {
        let tree = resolve(&sec(IIStar, II)).unwrap();
        assert_eq!(tree.blowup_count(), 1);
        assert_eq!(tree.root.outcome.gamma_type, ft(I(0)));
        assert!(tree.root.children.is_empty());
        assert!(tree.root.is_vacuous_blowup());
    }

    #[test]
    fn resolve_ii_star_iv_star_chain() {
        let tree = resolve(&sec(IIStar, IVStar)).unwrap();
        assert_eq!(
            tree.chain_along(ft(IIStar)),
            vec![ft(IStar(0)), ft(IV), ft(II), ft(I(0))]
        );
        // the IV* side also has one bad step: IV* x I0* has beta 7/6
        assert_eq!(tree.chain_along(ft(IVStar)), vec![ft(IStar(0)), ft(II)]);
        assert_eq!(tree.blowup_count(), 5);
    }

    #[test]
    fn blowup_counts() {
        assert_eq!(blowup_count(&sec(IV, IV)).unwrap(), 0);
        assert_eq!(blowup_count(&sec(I(2), I(5))).unwrap(), 0);
        assert_eq!(blowup_count(&sec(IStar(0), IStar(0))).unwrap(), 1);
        assert_eq!(blowup_count(&sec(IVStar, IVStar)).unwrap(), 3);
    }

    #[test]
    fn budget() {
        assert!(matches!(
            resolve_with_budget(&sec(IIStar, IVStar), 2),
            Err(CollisionError::DepthBudgetExceeded { budget: 2, .. })
        ));
        assert_eq!(resolve_with_budget(&sec(IIStar, IVStar), 4).unwrap().depth(), 4);
    }

    #[test]
    fn log_extremal_examples() {
        let o = collide(&sec(III, IStar(0))).unwrap();
        assert_eq!(o.beta, ratio(3, 4));
        assert!(log_extremal_verdict(&o));
        assert!(!log_extremal_verdict(&collide(&sec(IStar(0), IStar(0))).unwrap()));
    }

    #[test]
    fn verdicts() {
        assert_eq!(equidimensional_verdict(&int(1), true), Verdict::ExistsWithOneDimFiber);
        assert_eq!(equidimensional_verdict(&ratio(-1, 3), true), Verdict::Impossible);
        assert_eq!(equidimensional_verdict(&int(0), true), Verdict::ExistsWithDivisorialFiber);
        assert_eq!(equidimensional_verdict(&int(0), false), Verdict::Impossible);
        assert_eq!(equidimensional_verdict(&ratio(1, 2), false), Verdict::ConditionallyPossible);
    }

    #[test]
    fn smoothness() {
        assert_eq!(miranda_model_smoothness(ft(II), ft(II)).unwrap(), MirandaModel::TerminalNotSmooth);
        assert_eq!(miranda_model_smoothness(ft(IV), ft(IV)).unwrap(), MirandaModel::TerminalNotSmooth);
        assert_eq!(miranda_model_smoothness(ft(I(1)), ft(I(1))).unwrap(), MirandaModel::Smooth);
        assert_eq!(miranda_model_smoothness(ft(III), ft(IStar(0))).unwrap(), MirandaModel::Smooth);
        assert!(matches!(
            miranda_model_smoothness(ft(IIStar), ft(II)),
            Err(CollisionError::NotGood { .. })
        ));
    }

    fn compatible_pair() -> impl Strategy<Value = (FiberType, FiberType)> {
        let zero = prop_oneof![Just(II), Just(IV), Just(IStar(0)), Just(IVStar), Just(IIStar), Just(I(0))];
        let one = prop_oneof![Just(III), Just(IStar(0)), Just(IIIStar), Just(I(0))];
        let pole = prop_oneof![(0u32..50).prop_map(I), (0u32..50).prop_map(IStar)];
        prop_oneof![
            (zero.clone(), zero),
            (one.clone(), one),
            (pole.clone(), pole),
        ]
        .prop_map(|(l, r)| (ft(l), ft(r)))
    }

    proptest! {
        #[test]
        fn symmetric((l, r) in compatible_pair()) {
            let a = collide(&CollisionInput::section(l, r)).unwrap();
            let b = collide(&CollisionInput::section(r, l)).unwrap();
            prop_assert_eq!(&a.beta, &b.beta);
            prop_assert_eq!(&a.alpha, &b.alpha);
            prop_assert_eq!(&a.delta, &b.delta);
            prop_assert_eq!(a.gamma_type, b.gamma_type);
            prop_assert_eq!(a.gamma_pole, b.gamma_pole);
            prop_assert_eq!(a.gamma_monodromy.trace(), b.gamma_monodromy.trace());
        }

        #[test]
        fn fractional_part_matches_matrix((l, r) in compatible_pair()) {
            let o = collide(&CollisionInput::section(l, r)).unwrap();
            prop_assert_eq!(fract(&(coefficient_a(l) + coefficient_a(r))), o.a_gamma.clone());
            prop_assert_eq!(o.alpha.clone(), o.beta.floor());
            prop_assert!(o.alpha == int(0) || o.alpha == int(1));
            prop_assert_eq!(o.delta, int(1) - o.alpha);
        }

        #[test]
        fn good_iff_log_extremal((l, r) in compatible_pair()) {
            let input = CollisionInput::section(l, r);
            let o = collide(&input).unwrap();
            prop_assert_eq!(classify_collision(&input).unwrap() == CollisionClass::Good, log_extremal_verdict(&o));
        }

        #[test]
        fn resolution_terminates_with_good_leaves((l, r) in compatible_pair()) {
            let tree = resolve(&CollisionInput::section(l, r)).unwrap();
            for leaf in tree.leaves() {
                prop_assert!(leaf.class == CollisionClass::Good || leaf.is_vacuous_blowup());
            }
        }

        #[test]
        fn bad_chains_decrease((l, r) in compatible_pair()) {
            let tree = resolve(&CollisionInput::section(l, r)).unwrap();
            fn walk(n: &ResolutionNode) -> Result<(), TestCaseError> {
                for c in &n.children {
                    if c.class == CollisionClass::Bad && n.left.is_elliptic() && n.right.is_elliptic() {
                        prop_assert!(c.outcome.beta < n.outcome.beta);
                    }
                    walk(c)?;
                }
                Ok(())
            }
            walk(&tree.root)?;
        }
    }
}
