//! The L∞-algebra interface and the generic identity checks built on it.
//!
//! Brackets follow the ℓ-picture: `ℓ_k` has degree `2 − k`, is graded
//! antisymmetric (Koszul sign times permutation sign), and the generalized
//! Jacobi identity reads
//!
//! ```text
//! Σ_{k=1}^{n} (−1)^{k(n−k)} Σ_{σ ∈ Sh(k,n−k)} χ(σ; v) ℓ_{n−k+1}(ℓ_k(v_σ(1..k)), v_σ(k+1..n)) = 0
//! ```
//!
//! with `χ` the antisymmetric Koszul sign of the unshuffle. The extra
//! `(−1)^{k(n−k)}` is the Lada–Markl sign; without it a differential graded
//! Lie algebra already fails at `n = 2`.
//!
//! Local algebras are evaluated pointwise: an element is a jet sample of a
//! field at one chart point. Statements that hold only up to total
//! derivatives (pairing invariance, actions) are checked on integrated
//! quantities over a [`PointSet`].

pub mod chern_simons;
pub mod structure;

use std::fmt::Debug;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::calculus::PointSet;
use crate::error::{Error, Result};
use crate::graded::{factorial, reorder_sign, shuffles, Permutation, SignConvention};

pub trait LInfinityAlgebra {
    type Element: Clone + Debug;

    fn name(&self) -> String;

    /// Largest `k` with a (possibly) nonzero `ℓ_k`.
    fn max_arity(&self) -> usize;

    /// Degrees in which the algebra has components.
    fn degrees(&self) -> Vec<i32>;

    fn degree(&self, x: &Self::Element) -> i32;

    fn zero(&self, degree: i32) -> Self::Element;

    /// `Σ c_i x_i` for homogeneous `x_i` of the given degree.
    fn combine(&self, degree: i32, terms: &[(f64, &Self::Element)]) -> Self::Element;

    /// Sup norm of all stored data (values and derivatives).
    fn norm(&self, x: &Self::Element) -> f64;

    /// `ℓ_k` on validated arguments, `k = args.len()`.
    fn bracket_impl(&self, args: &[&Self::Element]) -> Result<Self::Element>;

    /// Degree of the cyclic pairing, if there is one.
    fn pairing_degree(&self) -> Option<i32> {
        None
    }

    /// Pointwise pairing density ⟨a, b⟩ (a number for finite-dimensional
    /// algebras, the top-form coefficient for local ones).
    fn pairing_density(&self, _a: &Self::Element, _b: &Self::Element) -> Result<f64> {
        Err(Error::Validation(format!("{} has no pairing", self.name())))
    }

    /// Degree of the dynamical fields (Maurer–Cartan elements).
    fn dynamic_degree(&self) -> i32 {
        1
    }
}

/// Applies `ℓ_k`, checking arity and the output degree.
pub fn bracket<A: LInfinityAlgebra>(alg: &A, args: &[&A::Element]) -> Result<A::Element> {
    let k = args.len();
    if k == 0 || k > alg.max_arity() {
        return Err(Error::Arity {
            arity: k,
            max: alg.max_arity(),
        });
    }
    let out = alg.bracket_impl(args)?;
    let expected: i32 = args.iter().map(|a| alg.degree(a)).sum::<i32>() + 2 - k as i32;
    assert_eq!(
        alg.degree(&out),
        expected,
        "{}: ℓ_{k} returned the wrong degree",
        alg.name()
    );
    Ok(out)
}

/// Pairing with the degree rule applied: structurally zero unless the
/// degrees add up to minus the pairing degree.
pub fn pairing<A: LInfinityAlgebra>(alg: &A, a: &A::Element, b: &A::Element) -> Result<f64> {
    let Some(pd) = alg.pairing_degree() else {
        return Err(Error::Validation(format!("{} has no pairing", alg.name())));
    };
    if alg.degree(a) + alg.degree(b) + pd != 0 {
        return Ok(0.0);
    }
    alg.pairing_density(a, b)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub relative: f64,
    pub absolute: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            relative: 1e-9,
            absolute: 1e-12,
        }
    }
}

impl Tolerance {
    pub fn new(relative: f64, absolute: f64) -> Self {
        Tolerance { relative, absolute }
    }
}

/// Size of an identity violation together with the size of the terms that
/// were supposed to cancel.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Defect {
    pub absolute: f64,
    pub scale: f64,
}

impl Defect {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn relative(&self) -> f64 {
        if self.absolute == 0.0 {
            0.0
        } else {
            self.absolute / self.scale.max(f64::MIN_POSITIVE)
        }
    }

    pub fn passes(&self, tol: &Tolerance) -> bool {
        self.absolute <= (tol.relative * self.scale).max(tol.absolute)
    }

    /// Keeps the worse of two defects (by relative size).
    pub fn worst(self, other: Defect) -> Defect {
        if other.relative() > self.relative() {
            other
        } else {
            self
        }
    }
}

/// Antisymmetric Koszul sign of reordering `degrees` by `p`.
fn sign(p: &Permutation, degrees: &[i32]) -> f64 {
    reorder_sign(p, degrees, SignConvention::Antisymmetric).expect("lengths agree") as f64
}

/// The generalized Jacobi expression for `n = args.len()`, and the largest
/// norm of its individual terms.
pub fn jacobi_sum<A: LInfinityAlgebra>(alg: &A, args: &[&A::Element]) -> Result<(A::Element, f64)> {
    let n = args.len();
    let degrees: Vec<i32> = args.iter().map(|a| alg.degree(a)).collect();
    let out_degree = degrees.iter().sum::<i32>() + 3 - n as i32;
    let mut terms: Vec<(f64, A::Element)> = Vec::new();
    let mut scale = 0.0f64;
    for k in 1..=n {
        let outer = n - k + 1;
        if k > alg.max_arity() || outer > alg.max_arity() {
            continue;
        }
        let lm = if (k * (n - k)) % 2 == 0 { 1.0 } else { -1.0 };
        for sh in shuffles(k, n - k) {
            let s = lm * sign(&sh.perm, &degrees);
            let inner_args: Vec<&A::Element> = sh.first().iter().map(|&i| args[i]).collect();
            let inner = bracket(alg, &inner_args)?;
            let mut outer_args: Vec<&A::Element> = vec![&inner];
            outer_args.extend(sh.second().iter().map(|&i| args[i]));
            let value = bracket(alg, &outer_args)?;
            scale = scale.max(alg.norm(&value));
            terms.push((s, value));
        }
    }
    let refs: Vec<(f64, &A::Element)> = terms.iter().map(|(s, v)| (*s, v)).collect();
    Ok((alg.combine(out_degree, &refs), scale))
}

/// Norm of the generalized Jacobi expression (zero for a genuine L∞-algebra).
///
/// The scale is the largest individual term, floored by the product of the
/// argument norms: the sum is multilinear, and some terms vanish identically
/// (e.g. `d` of an exact form) leaving only roundoff to compare against.
pub fn jacobi_defect<A: LInfinityAlgebra>(alg: &A, args: &[&A::Element]) -> Result<Defect> {
    if args.is_empty() {
        return Err(Error::Validation("Jacobi identity needs n ≥ 1".into()));
    }
    let (sum, scale) = jacobi_sum(alg, args)?;
    let inputs: f64 = args.iter().map(|a| alg.norm(a)).product();
    Ok(Defect {
        absolute: alg.norm(&sum),
        scale: scale.max(inputs),
    })
}

/// `ℓ_k(…, x_{i+1}, x_i, …) + (−1)^{|x_i||x_{i+1}|} ℓ_k(…, x_i, x_{i+1}, …)`.
pub fn antisymmetry_defect<A: LInfinityAlgebra>(alg: &A, args: &[&A::Element], i: usize) -> Result<Defect> {
    if i + 1 >= args.len() {
        return Err(Error::Validation(format!("no adjacent pair at {i}")));
    }
    let mut swapped = args.to_vec();
    swapped.swap(i, i + 1);
    let a = bracket(alg, args)?;
    let b = bracket(alg, &swapped)?;
    let koszul = if (alg.degree(args[i]) * alg.degree(args[i + 1])).rem_euclid(2) == 1 {
        -1.0
    } else {
        1.0
    };
    let d = alg.combine(alg.degree(&a), &[(1.0, &b), (koszul, &a)]);
    Ok(Defect {
        absolute: alg.norm(&d),
        scale: alg.norm(&a).max(alg.norm(&b)),
    })
}

/// `Σ_k ℓ_k(α, …, α) / k!`.
pub fn mc_defect<A: LInfinityAlgebra>(alg: &A, alpha: &A::Element) -> Result<A::Element> {
    let d = alg.degree(alpha) + 1;
    let mut terms = Vec::new();
    for k in 1..=alg.max_arity() {
        let args = vec![alpha; k];
        terms.push((1.0 / factorial(k), bracket(alg, &args)?));
    }
    let refs: Vec<(f64, &A::Element)> = terms.iter().map(|(s, v)| (*s, v)).collect();
    Ok(alg.combine(d, &refs))
}

/// `Σ_{k,m} (−1)^{km}/(k! m!) ℓ_{m+1}(ℓ_k(α, …, α), α, …, α)`: the Jacobi
/// identities summed along the diagonal. For dynamic-degree `α` this is the
/// Noether identity of the classical master equation, and reduces to the
/// Bianchi identity `d_A F_A = 0` for a dgla.
pub fn master_defect<A: LInfinityAlgebra>(alg: &A, alpha: &A::Element) -> Result<Defect> {
    if alg.degree(alpha) != 1 {
        return Err(Error::Validation("the master identity is homogeneous only in degree 1".into()));
    }
    let top = alg.max_arity();
    let out_degree = 3;
    let mut terms: Vec<(f64, A::Element)> = Vec::new();
    let mut scale = 0.0f64;
    for k in 1..=top {
        let inner = bracket(alg, &vec![alpha; k])?;
        for m in 0..top {
            let mut args = vec![&inner];
            args.extend(std::iter::repeat_n(alpha, m));
            let v = bracket(alg, &args)?;
            let s = if (k * m) % 2 == 0 { 1.0 } else { -1.0 };
            let w = s / (factorial(k) * factorial(m));
            scale = scale.max(w.abs() * alg.norm(&v));
            terms.push((w, v));
        }
    }
    let refs: Vec<(f64, &A::Element)> = terms.iter().map(|(s, v)| (*s, v)).collect();
    let sum = alg.combine(out_degree, &refs);
    Ok(Defect {
        absolute: alg.norm(&sum),
        scale: scale.max(alg.norm(alpha)),
    })
}

/// Pointwise Lagrangian density `Σ_k ⟨α, ℓ_k(α, …, α)⟩ / (k+1)!`.
pub fn lagrangian_density<A: LInfinityAlgebra>(alg: &A, alpha: &A::Element) -> Result<f64> {
    let mut acc = 0.0;
    for k in 1..=alg.max_arity() {
        let args = vec![alpha; k];
        let lk = bracket(alg, &args)?;
        acc += pairing(alg, alpha, &lk)? / factorial(k + 1);
    }
    Ok(acc)
}

/// A field: something that yields an algebra element at each chart point.
pub struct Field<E> {
    eval: Arc<dyn Fn(&[f64; 4]) -> Result<E> + Send + Sync>,
}

impl<E> Clone for Field<E> {
    fn clone(&self) -> Self {
        Field {
            eval: Arc::clone(&self.eval),
        }
    }
}

impl<E: Clone + Send + Sync + 'static> Field<E> {
    pub fn constant(e: E) -> Self {
        Field {
            eval: Arc::new(move |_| Ok(e.clone())),
        }
    }
}

impl<E> Field<E> {
    pub fn new(f: impl Fn(&[f64; 4]) -> Result<E> + Send + Sync + 'static) -> Self {
        Field { eval: Arc::new(f) }
    }

    pub fn at(&self, x: &[f64; 4]) -> Result<E> {
        (self.eval)(x)
    }
}

impl<E: Debug> Debug for Field<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Field(..)")
    }
}

/// `S(α) = ∫ Σ_k ⟨α, ℓ_k(α, …, α)⟩ / (k+1)!` over `points`.
pub fn action_value<A: LInfinityAlgebra>(alg: &A, alpha: &Field<A::Element>, points: &PointSet) -> Result<f64> {
    points.try_integrate(|x| lagrangian_density(alg, &alpha.at(x)?))
}

/// Graded antisymmetry of `(α₁, …, α_{n+1}) ↦ ∫⟨ℓ_n(α₁, …, α_n), α_{n+1}⟩`
/// under the transposition of positions `i` and `i + 1`. Returns a zero
/// defect when the degrees cannot pair.
pub fn invariance_defect<A: LInfinityAlgebra>(
    alg: &A,
    fields: &[&Field<A::Element>],
    i: usize,
    points: &PointSet,
) -> Result<Defect> {
    let n = fields.len().checked_sub(1).filter(|&n| n >= 1).ok_or_else(|| {
        Error::Validation("invariance needs at least two arguments".into())
    })?;
    if i + 1 > n {
        return Err(Error::Validation(format!("no adjacent pair at {i}")));
    }
    if n > alg.max_arity() {
        return Ok(Defect::zero());
    }
    let mut fa = 0.0;
    let mut fb = 0.0;
    let mut scale = 0.0f64;
    let mut koszul = 1.0;
    let mut structural_zero = false;
    for (x, w) in points.points.iter().zip(&points.weights) {
        let values: Vec<A::Element> = fields.iter().map(|f| f.at(x)).collect::<Result<_>>()?;
        let degs: Vec<i32> = values.iter().map(|v| alg.degree(v)).collect();
        let Some(pd) = alg.pairing_degree() else {
            return Err(Error::Validation(format!("{} has no pairing", alg.name())));
        };
        if degs.iter().sum::<i32>() + 2 - n as i32 + pd != 0 {
            structural_zero = true;
            break;
        }
        koszul = if (degs[i] * degs[i + 1]).rem_euclid(2) == 1 { -1.0 } else { 1.0 };
        let mut order: Vec<usize> = (0..=n).collect();
        let eval = |order: &[usize]| -> Result<f64> {
            let args: Vec<&A::Element> = order[..n].iter().map(|&j| &values[j]).collect();
            let l = bracket(alg, &args)?;
            pairing(alg, &l, &values[order[n]])
        };
        let a = eval(&order)?;
        order.swap(i, i + 1);
        let b = eval(&order)?;
        fa += w * a;
        fb += w * b;
        scale = scale.max(w * a.abs()).max(w * b.abs());
    }
    if structural_zero {
        return Ok(Defect::zero());
    }
    Ok(Defect {
        absolute: (fa + koszul * fb).abs(),
        scale: scale.max(fa.abs()).max(fb.abs()),
    })
}
