//! L∞-actions presented as extensions `0 → M → L ⊕ M → L → 0`.
//!
//! An [`Action`] supplies the target component of the semidirect brackets,
//! `ℓ^⋉_{r+s}(X₁, …, X_r, m₁, …, m_s)` with `s ≥ 1` (actor arguments first).
//! [`Semidirect`] assembles the full algebra on pairs: for `p_i = (X_i, m_i)`
//!
//! ```text
//! ℓ^⋉_k(p₁, …, p_k) = ( ℓ^L_k(X₁, …, X_k),
//!                       Σ_{A ⊊ {1..k}} χ(A first) · mixed(X_A, m_{A^c}) )
//! ```
//!
//! where `χ` is the Koszul sign of moving the arguments indexed by `A` to
//! the front.

use std::fmt::Debug;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{bracket, pairing, Defect, Field, LInfinityAlgebra, Tolerance};
use crate::calculus::{Form, PointSet, VectorField};
use crate::ecp::{top_trace, wedge, EcpElement};
use crate::error::{Error, Result};
use crate::graded::{factorial, binomial, reorder_sign, Permutation, SignConvention};

pub trait Action {
    type Actor: LInfinityAlgebra;
    type Target: LInfinityAlgebra;

    fn actor(&self) -> &Self::Actor;
    fn target(&self) -> &Self::Target;

    /// Largest `r + s` with a possibly nonzero mixed bracket.
    fn max_arity(&self) -> usize;

    /// Target component of `ℓ^⋉_{r+s}(xs…, ms…)`, `ms` nonempty. `xs` empty
    /// gives the target brackets as seen by the extension.
    fn mixed(&self, xs: &[&ActorElement<Self>], ms: &[&TargetElement<Self>]) -> Result<TargetElement<Self>>;
}

pub type ActorElement<T> = <<T as Action>::Actor as LInfinityAlgebra>::Element;
pub type TargetElement<T> = <<T as Action>::Target as LInfinityAlgebra>::Element;

/// `mixed` with argument and degree checks.
pub fn mixed_bracket<T: Action + ?Sized>(
    action: &T,
    xs: &[&ActorElement<T>],
    ms: &[&TargetElement<T>],
) -> Result<TargetElement<T>> {
    if ms.is_empty() {
        return Err(Error::Validation("mixed brackets need at least one target argument".into()));
    }
    let (l, m) = (action.actor(), action.target());
    let k = xs.len() + ms.len();
    let degree = xs.iter().map(|x| l.degree(x)).sum::<i32>() + ms.iter().map(|x| m.degree(x)).sum::<i32>() + 2 - k as i32;
    if k > action.max_arity() {
        return Ok(m.zero(degree));
    }
    let out = action.mixed(xs, ms)?;
    assert_eq!(m.degree(&out), degree, "mixed bracket returned the wrong degree");
    Ok(out)
}

/// The action with all mixed brackets zero: the direct sum `L ⊕ M`.
#[derive(Clone, Debug)]
pub struct TrivialAction<L, M> {
    pub actor: L,
    pub target: M,
}

impl<L: LInfinityAlgebra, M: LInfinityAlgebra> Action for TrivialAction<L, M> {
    type Actor = L;
    type Target = M;

    fn actor(&self) -> &L {
        &self.actor
    }

    fn target(&self) -> &M {
        &self.target
    }

    fn max_arity(&self) -> usize {
        self.target.max_arity()
    }

    fn mixed(&self, xs: &[&L::Element], ms: &[&M::Element]) -> Result<M::Element> {
        if xs.is_empty() {
            return bracket(&self.target, ms);
        }
        let degree = xs.iter().map(|x| self.actor.degree(x)).sum::<i32>()
            + ms.iter().map(|x| self.target.degree(x)).sum::<i32>()
            + 2
            - (xs.len() + ms.len()) as i32;
        Ok(self.target.zero(degree))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelfActionKind {
    /// Target brackets kept: `ℓ^⋉_k` sums `ℓ_k` over all proper subsets.
    InfinityAdjoint,
    /// Target with all brackets zero.
    Adjoint,
    /// Target keeps `ℓ₁` only.
    DgAdjoint,
}

/// An algebra acting on itself. For `r ≥ 1` every kind uses
/// `ℓ_{r+s}(X₁, …, X_r, m₁, …, m_s)`; the kinds differ only at `r = 0`.
#[derive(Clone, Debug)]
pub struct SelfAction<A> {
    pub algebra: A,
    pub kind: SelfActionKind,
}

impl<A> SelfAction<A> {
    pub fn infinity_adjoint(algebra: A) -> Self {
        SelfAction {
            algebra,
            kind: SelfActionKind::InfinityAdjoint,
        }
    }

    pub fn adjoint(algebra: A) -> Self {
        SelfAction {
            algebra,
            kind: SelfActionKind::Adjoint,
        }
    }

    pub fn dg_adjoint(algebra: A) -> Self {
        SelfAction {
            algebra,
            kind: SelfActionKind::DgAdjoint,
        }
    }
}

impl<A: LInfinityAlgebra> Action for SelfAction<A> {
    type Actor = A;
    type Target = A;

    fn actor(&self) -> &A {
        &self.algebra
    }

    fn target(&self) -> &A {
        &self.algebra
    }

    fn max_arity(&self) -> usize {
        self.algebra.max_arity()
    }

    fn mixed(&self, xs: &[&A::Element], ms: &[&A::Element]) -> Result<A::Element> {
        let alg = &self.algebra;
        let k = xs.len() + ms.len();
        let degree = xs.iter().chain(ms).map(|x| alg.degree(x)).sum::<i32>() + 2 - k as i32;
        let keep = match (xs.is_empty(), self.kind) {
            (false, _) | (true, SelfActionKind::InfinityAdjoint) => true,
            (true, SelfActionKind::DgAdjoint) => k == 1,
            (true, SelfActionKind::Adjoint) => false,
        };
        if !keep {
            return Ok(alg.zero(degree));
        }
        let args: Vec<&A::Element> = xs.iter().chain(ms).copied().collect();
        bracket(alg, &args)
    }
}

/// An element of `L ⊕ M`; both components carry the same degree.
#[derive(Clone, Debug, PartialEq)]
pub struct Pair<X, M> {
    pub degree: i32,
    pub x: X,
    pub m: M,
}

/// The L∞-algebra on `L ⊕ M` determined by an action. Its pairing is the
/// target pairing on the `M` components.
#[derive(Clone, Debug)]
pub struct Semidirect<T>(pub T);

impl<T: Action> Semidirect<T> {
    pub fn pair(&self, x: ActorElement<T>, m: TargetElement<T>) -> Result<Pair<ActorElement<T>, TargetElement<T>>> {
        let (dx, dm) = (self.0.actor().degree(&x), self.0.target().degree(&m));
        if dx != dm {
            return Err(Error::Shape(format!("pair components have degrees {dx} and {dm}")));
        }
        Ok(Pair { degree: dx, x, m })
    }
}

impl<T: Action> LInfinityAlgebra for Semidirect<T>
where
    ActorElement<T>: Clone + Debug,
    TargetElement<T>: Clone + Debug,
{
    type Element = Pair<ActorElement<T>, TargetElement<T>>;

    fn name(&self) -> String {
        format!("{}⋉{}", self.0.actor().name(), self.0.target().name())
    }

    fn max_arity(&self) -> usize {
        self.0.actor().max_arity().max(self.0.max_arity())
    }

    fn degrees(&self) -> Vec<i32> {
        let mut d = self.0.actor().degrees();
        d.extend(self.0.target().degrees());
        d.sort();
        d.dedup();
        d
    }

    fn degree(&self, p: &Self::Element) -> i32 {
        p.degree
    }

    fn zero(&self, degree: i32) -> Self::Element {
        Pair {
            degree,
            x: self.0.actor().zero(degree),
            m: self.0.target().zero(degree),
        }
    }

    fn combine(&self, degree: i32, terms: &[(f64, &Self::Element)]) -> Self::Element {
        let xs: Vec<(f64, &ActorElement<T>)> = terms.iter().map(|(s, p)| (*s, &p.x)).collect();
        let ms: Vec<(f64, &TargetElement<T>)> = terms.iter().map(|(s, p)| (*s, &p.m)).collect();
        Pair {
            degree,
            x: self.0.actor().combine(degree, &xs),
            m: self.0.target().combine(degree, &ms),
        }
    }

    fn norm(&self, p: &Self::Element) -> f64 {
        self.0.actor().norm(&p.x).max(self.0.target().norm(&p.m))
    }

    fn bracket_impl(&self, args: &[&Self::Element]) -> Result<Self::Element> {
        let (l, m) = (self.0.actor(), self.0.target());
        let k = args.len();
        let degrees: Vec<i32> = args.iter().map(|p| p.degree).collect();
        let degree = degrees.iter().sum::<i32>() + 2 - k as i32;
        let x = if k <= l.max_arity() {
            let xs: Vec<&ActorElement<T>> = args.iter().map(|p| &p.x).collect();
            bracket(l, &xs)?
        } else {
            l.zero(degree)
        };
        let mut parts: Vec<(f64, TargetElement<T>)> = Vec::new();
        if k <= self.0.max_arity() {
            for subset in 0u32..(1 << k) - 1 {
                let a: Vec<usize> = (0..k).filter(|i| subset & (1 << i) != 0).collect();
                let c: Vec<usize> = (0..k).filter(|i| subset & (1 << i) == 0).collect();
                let perm = Permutation::new(a.iter().chain(&c).copied().collect())?;
                let s = reorder_sign(&perm, &degrees, SignConvention::Antisymmetric)? as f64;
                let xs: Vec<&ActorElement<T>> = a.iter().map(|&i| &args[i].x).collect();
                let ms: Vec<&TargetElement<T>> = c.iter().map(|&i| &args[i].m).collect();
                parts.push((s, mixed_bracket(&self.0, &xs, &ms)?));
            }
        }
        let refs: Vec<(f64, &TargetElement<T>)> = parts.iter().map(|(s, v)| (*s, v)).collect();
        Ok(Pair {
            degree,
            x,
            m: m.combine(degree, &refs),
        })
    }

    fn pairing_degree(&self) -> Option<i32> {
        self.0.target().pairing_degree()
    }

    fn pairing_density(&self, a: &Self::Element, b: &Self::Element) -> Result<f64> {
        self.0.target().pairing_density(&a.m, &b.m)
    }

    fn dynamic_degree(&self) -> i32 {
        self.0.target().dynamic_degree()
    }
}

/// A subalgebra of `A`, given by a projection onto it.
pub struct Subalgebra<A: LInfinityAlgebra> {
    pub name: String,
    projection: Arc<dyn Fn(&A::Element) -> A::Element + Send + Sync>,
}

impl<A: LInfinityAlgebra> Clone for Subalgebra<A> {
    fn clone(&self) -> Self {
        Subalgebra {
            name: self.name.clone(),
            projection: Arc::clone(&self.projection),
        }
    }
}

impl<A: LInfinityAlgebra> Debug for Subalgebra<A> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subalgebra({})", self.name)
    }
}

impl<A: LInfinityAlgebra> Subalgebra<A> {
    pub fn new(name: impl Into<String>, projection: impl Fn(&A::Element) -> A::Element + Send + Sync + 'static) -> Self {
        Subalgebra {
            name: name.into(),
            projection: Arc::new(projection),
        }
    }

    /// The whole algebra.
    pub fn full() -> Self
    where
        A::Element: 'static,
    {
        Self::new("full", |x: &A::Element| x.clone())
    }

    pub fn project(&self, x: &A::Element) -> A::Element {
        (self.projection)(x)
    }

    /// Checks idempotence of the projection and closure of its image under
    /// every bracket, over all tuples drawn from `samples` (with repetition,
    /// up to `max_tuples` per arity).
    pub fn check_closed(&self, alg: &A, samples: &[A::Element], tol: &Tolerance, max_tuples: usize) -> Result<()> {
        let projected: Vec<A::Element> = samples.iter().map(|x| self.project(x)).collect();
        for (i, p) in projected.iter().enumerate() {
            let pp = self.project(p);
            let diff = alg.combine(alg.degree(p), &[(1.0, &pp), (-1.0, p)]);
            let d = Defect {
                absolute: alg.norm(&diff),
                scale: alg.norm(p),
            };
            if !d.passes(tol) {
                return Err(Error::Validation(format!(
                    "projection onto {} is not idempotent on sample {i} (residual {:.3e})",
                    self.name, d.absolute
                )));
            }
        }
        let n = projected.len();
        for k in 1..=alg.max_arity() {
            let total = n.checked_pow(k as u32).unwrap_or(usize::MAX).min(max_tuples);
            for t in 0..total {
                let mut idx = Vec::with_capacity(k);
                let mut rest = t;
                for _ in 0..k {
                    idx.push(rest % n);
                    rest /= n;
                }
                let args: Vec<&A::Element> = idx.iter().map(|&i| &projected[i]).collect();
                let y = bracket(alg, &args)?;
                let py = self.project(&y);
                let diff = alg.combine(alg.degree(&y), &[(1.0, &y), (-1.0, &py)]);
                let d = Defect {
                    absolute: alg.norm(&diff),
                    scale: alg.norm(&y),
                };
                if !d.passes(tol) {
                    return Err(Error::NotClosed {
                        arity: k,
                        witness: idx,
                        residual: d.absolute,
                    });
                }
            }
        }
        Ok(())
    }
}

/// An action with its actor arguments projected onto a subalgebra.
#[derive(Debug)]
pub struct Restricted<T: Action> {
    pub action: T,
    pub sub: Subalgebra<T::Actor>,
}

/// Restricts `action` to `sub` after verifying closure on `samples`.
pub fn restrict<T: Action>(
    action: T,
    sub: Subalgebra<T::Actor>,
    samples: &[ActorElement<T>],
    tol: &Tolerance,
) -> Result<Restricted<T>> {
    sub.check_closed(action.actor(), samples, tol, 4096)?;
    Ok(Restricted { action, sub })
}

impl<T: Action> Action for Restricted<T> {
    type Actor = T::Actor;
    type Target = T::Target;

    fn actor(&self) -> &T::Actor {
        self.action.actor()
    }

    fn target(&self) -> &T::Target {
        self.action.target()
    }

    fn max_arity(&self) -> usize {
        self.action.max_arity()
    }

    fn mixed(&self, xs: &[&ActorElement<T>], ms: &[&TargetElement<T>]) -> Result<TargetElement<T>> {
        let projected: Vec<ActorElement<T>> = xs.iter().map(|x| self.sub.project(x)).collect();
        let refs: Vec<&ActorElement<T>> = projected.iter().collect();
        self.action.mixed(&refs, ms)
    }
}

/// `Vect(M) ⊂ M_ECP`: the `(ξ, 0)` slice of the gauge slot.
pub fn vector_fields() -> Subalgebra<crate::ecp::Ecp> {
    Subalgebra::new("vect", |x: &EcpElement| {
        let mut y = EcpElement::zero(x.degree);
        if x.degree == 0 {
            y.xi = x.xi;
        }
        y
    })
}

/// One argument of a compatibility check.
pub enum Slot<'a, X, M> {
    Actor(&'a Field<X>),
    Target(&'a Field<M>),
}

impl<X, M> Clone for Slot<'_, X, M> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<X, M> Copy for Slot<'_, X, M> {}

enum Sample<X, M> {
    Actor(X),
    Target(M),
}

/// `⟨ℓ^⋉(args[..n]), args[n]⟩` with actor arguments sorted to the front.
fn compat_value<T: Action>(action: &T, samples: &[&Sample<ActorElement<T>, TargetElement<T>>], degrees: &[i32]) -> Result<f64> {
    let n = samples.len() - 1;
    let Sample::Target(last) = samples[n] else {
        return Err(Error::Validation("the last argument of a compatibility check must be a target".into()));
    };
    let a: Vec<usize> = (0..n).filter(|&i| matches!(samples[i], Sample::Actor(_))).collect();
    let c: Vec<usize> = (0..n).filter(|&i| matches!(samples[i], Sample::Target(_))).collect();
    if c.is_empty() {
        return Ok(0.0);
    }
    let perm = Permutation::new(a.iter().chain(&c).copied().collect())?;
    let s = reorder_sign(&perm, &degrees[..n], SignConvention::Antisymmetric)? as f64;
    let xs: Vec<&ActorElement<T>> = a
        .iter()
        .map(|&i| match samples[i] {
            Sample::Actor(x) => x,
            Sample::Target(_) => unreachable!(),
        })
        .collect();
    let ms: Vec<&TargetElement<T>> = c
        .iter()
        .map(|&i| match samples[i] {
            Sample::Target(m) => m,
            Sample::Actor(_) => unreachable!(),
        })
        .collect();
    let out = mixed_bracket(action, &xs, &ms)?;
    Ok(s * pairing(action.target(), &out, last)?)
}

/// Graded antisymmetry of `∫⟨ℓ^⋉_{r+s}(…), m_{s+1}⟩` under exchanging
/// positions `i` and `i + 1` of the full argument list. The last argument
/// must remain a target after the exchange.
pub fn compatibility_defect<T: Action>(
    action: &T,
    args: &[Slot<'_, ActorElement<T>, TargetElement<T>>],
    i: usize,
    points: &PointSet,
) -> Result<Defect> {
    let n = args.len().checked_sub(1).filter(|&n| n >= 1).ok_or_else(|| {
        Error::Validation("compatibility needs at least two arguments".into())
    })?;
    if i + 1 > n {
        return Err(Error::Validation(format!("no adjacent pair at {i}")));
    }
    let Some(pd) = action.target().pairing_degree() else {
        return Err(Error::Validation(format!("{} has no pairing", action.target().name())));
    };
    let (mut fa, mut fb, mut scale) = (0.0, 0.0, 0.0f64);
    let mut koszul = 1.0;
    for (x, w) in points.points.iter().zip(&points.weights) {
        let samples: Vec<Sample<ActorElement<T>, TargetElement<T>>> = args
            .iter()
            .map(|s| {
                Ok(match s {
                    Slot::Actor(f) => Sample::Actor(f.at(x)?),
                    Slot::Target(f) => Sample::Target(f.at(x)?),
                })
            })
            .collect::<Result<_>>()?;
        let degrees: Vec<i32> = samples
            .iter()
            .map(|s| match s {
                Sample::Actor(v) => action.actor().degree(v),
                Sample::Target(v) => action.target().degree(v),
            })
            .collect();
        if degrees.iter().sum::<i32>() + 2 - n as i32 + pd != 0 {
            return Ok(Defect::zero());
        }
        koszul = if (degrees[i] * degrees[i + 1]).rem_euclid(2) == 1 { -1.0 } else { 1.0 };
        let mut order: Vec<&Sample<_, _>> = samples.iter().collect();
        let mut degs = degrees.clone();
        let a = compat_value(action, &order, &degs)?;
        order.swap(i, i + 1);
        degs.swap(i, i + 1);
        let b = compat_value(action, &order, &degs)?;
        fa += w * a;
        fb += w * b;
        scale = scale.max(w * a.abs()).max(w * b.abs());
    }
    Ok(Defect {
        absolute: (fa + koszul * fb).abs(),
        scale: scale.max(fa.abs()).max(fb.abs()),
    })
}

/// How the background-dependent terms of the equivariant action are
/// weighted. Both agree on the background-free terms `1/(k+1)!`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MixedWeighting {
    /// The cyclic functional of the semidirect algebra: `C(k,r)/(k+1)!`
    /// for `r` background insertions in `ℓ^⋉_k`.
    Canonical,
    /// `1/(k+1)!` for every `r`; reproduces the ⅙⟨A,[B,A]⟩ coupling of
    /// Chern–Simons.
    #[default]
    PerBackgroundCount,
}

impl MixedWeighting {
    pub fn weight(self, k: usize, r: usize) -> f64 {
        match self {
            MixedWeighting::Canonical => binomial(k, r) as f64 / factorial(k + 1),
            MixedWeighting::PerBackgroundCount => 1.0 / factorial(k + 1),
        }
    }
}

/// A background-coupling term `S^L(X, m)` of an equivariant action.
pub trait MixedFunctional {
    type Background;
    type Field;

    fn density(&self, background: &Self::Background, field: &Self::Field) -> Result<f64>;
}

/// The background-free part `Σ_k ⟨m, mixed(∅; m, …, m)⟩/(k+1)!`. For the
/// infinity adjoint this is the Lagrangian density of the target.
pub fn target_density<T: Action>(action: &T, m: &TargetElement<T>) -> Result<f64> {
    let mut acc = 0.0;
    for k in 1..=action.max_arity() {
        let ms = vec![m; k];
        let out = mixed_bracket(action, &[], &ms)?;
        acc += pairing(action.target(), m, &out)? / factorial(k + 1);
    }
    Ok(acc)
}

/// `S^L` assembled from the mixed brackets of an action with background
/// insertions `r ≥ 1`.
pub struct BracketCoupling<'a, T> {
    pub action: &'a T,
    pub weighting: MixedWeighting,
}

impl<T: Action> MixedFunctional for BracketCoupling<'_, T> {
    type Background = ActorElement<T>;
    type Field = TargetElement<T>;

    fn density(&self, x: &ActorElement<T>, m: &TargetElement<T>) -> Result<f64> {
        let mut acc = 0.0;
        for k in 2..=self.action.max_arity() {
            for r in 1..k {
                let xs = vec![x; r];
                let ms = vec![m; k - r];
                let out = mixed_bracket(self.action, &xs, &ms)?;
                acc += self.weighting.weight(k, r) * pairing(self.action.target(), m, &out)?;
            }
        }
        Ok(acc)
    }
}

/// `S^tot(X, m) = S(m) + S^L(X, m)`. With no background the coupling is
/// skipped outright, so the value is exactly the background-free action.
pub fn equivariant_action_value<T: Action, F: MixedFunctional<Field = TargetElement<T>>>(
    action: &T,
    coupling: &F,
    background: Option<&Field<F::Background>>,
    m: &Field<TargetElement<T>>,
    points: &PointSet,
) -> Result<f64> {
    points.try_integrate(|x| {
        let mx = m.at(x)?;
        let mut v = target_density(action, &mx)?;
        if let Some(b) = background {
            v += coupling.density(&b.at(x)?, &mx)?;
        }
        Ok(v)
    })
}

/// Background `A = β ⊗ ξ` in Ω¹ ⊗ Vect(M).
#[derive(Clone, Debug, PartialEq)]
pub struct VectorBackground {
    pub beta: Form,
    pub xi: VectorField,
}

/// The minimal coupling of ECP gravity to a vector-field background,
/// `⅙ Tr(2 e⩕e⩕β∧L_ξω − 2 ω⩕e⩕β∧L_ξe)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct EcpMinimalCoupling;

impl MixedFunctional for EcpMinimalCoupling {
    type Background = VectorBackground;
    type Field = EcpElement;

    fn density(&self, a: &VectorBackground, f: &EcpElement) -> Result<f64> {
        if f.degree != 1 {
            return Ok(0.0);
        }
        let (e, w) = (&f.first, &f.second);
        let lw = wedge(&a.beta, &w.lie(&a.xi));
        let le = wedge(&a.beta, &e.lie(&a.xi));
        let t = Form::combine([(2.0, &wedge(&wedge(e, e), &lw)), (-2.0, &wedge(&wedge(w, e), &le))]);
        Ok(top_trace(&t).value() / 6.0)
    }
}
