//! Fiber-valued differential forms on a four-dimensional chart, sampled as
//! jets at a single point.
//!
//! A form is a sparse sum of terms `coef · dx^S ⊗ b` where `S` is a set of
//! chart indices (a bitmask, increasing order) and `b` is a fiber basis index
//! below 16. What the fiber index means is decided by the caller: Minkowski
//! multivector blades, `so(3)` generators, or a single scalar slot. Products
//! take a [`FiberProduct`] table; unary fiber maps take a [`FiberMap`].

use std::fmt;

use super::jet::{Jet, DIM};

pub const FIBER_SLOTS: usize = 16;

/// `table[a * 16 + b]` lists `(c, coeff)` with `a * b = Σ coeff · c`.
pub type FiberProduct = [Vec<(u8, f64)>];
/// `table[a]` lists `(c, coeff)` with `f(a) = Σ coeff · c`.
pub type FiberMap = [Vec<(u8, f64)>];

#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub mask: u8,
    pub fiber: u8,
    pub coef: Jet,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Form {
    terms: Vec<Term>,
}

/// Sign of `dx^S ∧ dx^T` relative to `dx^{S ∪ T}`, or `None` when they overlap.
pub fn mask_wedge_sign(s: u8, t: u8) -> Option<f64> {
    if s & t != 0 {
        return None;
    }
    let mut swaps = 0;
    for j in 0..DIM {
        if t & (1 << j) != 0 {
            swaps += (s >> (j + 1)).count_ones();
        }
    }
    Some(if swaps % 2 == 0 { 1.0 } else { -1.0 })
}

/// Number of indices in `mask` below `mu`.
fn below(mask: u8, mu: usize) -> u32 {
    (mask & ((1u8 << mu) - 1)).count_ones()
}

fn parity(n: u32) -> f64 {
    if n.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Accumulates terms by key without repeated searches.
struct Accum {
    slot: [u16; 256],
    terms: Vec<Term>,
}

impl Accum {
    fn new() -> Self {
        Accum {
            slot: [u16::MAX; 256],
            terms: Vec::new(),
        }
    }

    fn entry(&mut self, mask: u8, fiber: u8) -> &mut Jet {
        let key = (mask as usize) << 4 | fiber as usize;
        if self.slot[key] == u16::MAX {
            self.slot[key] = self.terms.len() as u16;
            self.terms.push(Term {
                mask,
                fiber,
                coef: Jet::zero(),
            });
        }
        &mut self.terms[self.slot[key] as usize].coef
    }

    fn add(&mut self, mask: u8, fiber: u8, s: f64, j: &Jet) {
        self.entry(mask, fiber).axpy(s, j);
    }

    fn add_product(&mut self, mask: u8, fiber: u8, s: f64, a: &Jet, b: &Jet) {
        self.entry(mask, fiber).add_product(s, a, b);
    }

    fn finish(mut self) -> Form {
        self.terms.retain(|t| !t.coef.is_zero());
        self.terms.sort_by_key(|t| (t.mask, t.fiber));
        Form { terms: self.terms }
    }
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u8, u8, Jet)>) -> Self {
        let mut acc = Accum::new();
        for (mask, fiber, coef) in terms {
            assert!(mask < 16 && (fiber as usize) < FIBER_SLOTS);
            acc.add(mask, fiber, 1.0, &coef);
        }
        acc.finish()
    }

    /// A 0-form with a single fiber component.
    pub fn scalar(fiber: u8, coef: Jet) -> Self {
        Self::from_terms([(0, fiber, coef)])
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn component(&self, mask: u8, fiber: u8) -> Jet {
        self.terms
            .iter()
            .find(|t| t.mask == mask && t.fiber == fiber)
            .map(|t| t.coef)
            .unwrap_or_default()
    }

    /// The form degree, if every term shares it (`None` for the empty form).
    pub fn degree(&self) -> Option<usize> {
        let d = self.terms.first()?.mask.count_ones();
        self.terms
            .iter()
            .all(|t| t.mask.count_ones() == d)
            .then_some(d as usize)
    }

    /// Lowest jet order among the terms.
    pub fn order(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.coef.order())
            .min()
            .unwrap_or(super::jet::MAX_ORDER)
    }

    pub fn max_abs(&self) -> f64 {
        self.terms.iter().fold(0.0, |m, t| m.max(t.coef.max_abs()))
    }

    /// Largest absolute value of the point values (ignoring derivatives).
    pub fn max_value(&self) -> f64 {
        self.terms.iter().fold(0.0, |m, t| m.max(t.coef.value().abs()))
    }

    pub fn scale(&self, s: f64) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: t.coef.scale(s),
                    ..*t
                })
                .collect(),
        }
    }

    pub fn mul_jet(&self, f: &Jet) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: t.coef * *f,
                    ..*t
                })
                .collect(),
        }
    }

    pub fn axpy(&self, s: f64, other: &Form) -> Form {
        let mut acc = Accum::new();
        for t in &self.terms {
            acc.add(t.mask, t.fiber, 1.0, &t.coef);
        }
        for t in &other.terms {
            acc.add(t.mask, t.fiber, s, &t.coef);
        }
        acc.finish()
    }

    pub fn add(&self, other: &Form) -> Form {
        self.axpy(1.0, other)
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.axpy(-1.0, other)
    }

    pub fn neg(&self) -> Form {
        self.scale(-1.0)
    }

    /// Sum of many scaled forms in one pass.
    pub fn combine<'a>(parts: impl IntoIterator<Item = (f64, &'a Form)>) -> Form {
        let mut acc = Accum::new();
        for (s, f) in parts {
            for t in &f.terms {
                acc.add(t.mask, t.fiber, s, &t.coef);
            }
        }
        acc.finish()
    }

    pub fn truncate(&self, order: usize) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coef: t.coef.truncate(order),
                    ..*t
                })
                .collect(),
        }
    }

    /// Wedge of the form parts, fiber parts multiplied by `table`, no extra
    /// commutation sign between form and fiber factors.
    pub fn wedge(&self, other: &Form, table: &FiberProduct) -> Form {
        let mut acc = Accum::new();
        for a in &self.terms {
            for b in &other.terms {
                let Some(sign) = mask_wedge_sign(a.mask, b.mask) else {
                    continue;
                };
                let entries = &table[(a.fiber as usize) * FIBER_SLOTS + b.fiber as usize];
                for &(c, k) in entries {
                    acc.add_product(a.mask | b.mask, c, sign * k, &a.coef, &b.coef);
                }
            }
        }
        acc.finish()
    }

    pub fn map_fiber(&self, table: &FiberMap) -> Form {
        let mut acc = Accum::new();
        for t in &self.terms {
            for &(c, k) in &table[t.fiber as usize] {
                acc.add(t.mask, c, k, &t.coef);
            }
        }
        acc.finish()
    }

    /// Exterior derivative; lowers the jet order by one.
    pub fn d(&self) -> Form {
        let mut acc = Accum::new();
        for t in &self.terms {
            for mu in 0..DIM {
                let bit = 1u8 << mu;
                if t.mask & bit != 0 {
                    continue;
                }
                let s = parity(below(t.mask, mu));
                acc.add(t.mask | bit, t.fiber, s, &t.coef.partial(mu));
            }
        }
        acc.finish()
    }

    /// Contraction with the coordinate vector field `∂_mu`.
    pub fn interior_mu(&self, mu: usize) -> Form {
        let bit = 1u8 << mu;
        let mut acc = Accum::new();
        for t in &self.terms {
            if t.mask & bit != 0 {
                acc.add(t.mask & !bit, t.fiber, parity(below(t.mask, mu)), &t.coef);
            }
        }
        acc.finish()
    }

    pub fn interior(&self, xi: &VectorField) -> Form {
        let mut acc = Accum::new();
        for t in &self.terms {
            for mu in 0..DIM {
                let bit = 1u8 << mu;
                if t.mask & bit != 0 {
                    let s = parity(below(t.mask, mu));
                    acc.add_product(t.mask & !bit, t.fiber, s, &xi.c[mu], &t.coef);
                }
            }
        }
        acc.finish()
    }

    /// Lie derivative by Cartan's formula `d ι_ξ + ι_ξ d`.
    pub fn lie(&self, xi: &VectorField) -> Form {
        self.interior(xi).d().add(&self.d().interior(xi))
    }

    /// Applies `f` to every coefficient jet.
    pub fn map_coefficients(&self, f: impl Fn(&Jet) -> Jet) -> Form {
        Form::from_terms(self.terms.iter().map(|t| (t.mask, t.fiber, f(&t.coef))))
    }

    /// Keeps only terms whose fiber index satisfies `keep`.
    pub fn filter_fiber(&self, keep: impl Fn(u8) -> bool) -> Form {
        Form {
            terms: self.terms.iter().filter(|t| keep(t.fiber)).cloned().collect(),
        }
    }

    pub fn filter_degree(&self, degree: usize) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|t| t.mask.count_ones() as usize == degree)
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{:.6e}·dx[{:04b}]⊗b{}", t.coef.value(), t.mask, t.fiber)?;
        }
        Ok(())
    }
}

/// A vector field sampled as jets of its components.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct VectorField {
    pub c: [Jet; DIM],
}

impl VectorField {
    pub fn new(c: [Jet; DIM]) -> Self {
        VectorField { c }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// The coordinate field `∂_mu` scaled by `s`.
    pub fn coordinate(mu: usize, s: f64) -> Self {
        let mut v = Self::zero();
        v.c[mu] = Jet::constant(s);
        v
    }

    pub fn scale(&self, s: f64) -> Self {
        VectorField {
            c: std::array::from_fn(|m| self.c[m].scale(s)),
        }
    }

    pub fn axpy(&self, s: f64, other: &VectorField) -> Self {
        VectorField {
            c: std::array::from_fn(|m| {
                let mut j = self.c[m];
                j.axpy(s, &other.c[m]);
                j
            }),
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().fold(0.0, |m, j| m.max(j.max_abs()))
    }

    /// `ξ(f) = ξ^μ ∂_μ f`.
    pub fn apply(&self, f: &Jet) -> Jet {
        let mut out = Jet::zero();
        for mu in 0..DIM {
            out.add_product(1.0, &self.c[mu], &f.partial(mu));
        }
        out
    }

    /// `∂_μ ξ^μ` in the chart's coordinate density.
    pub fn divergence(&self) -> Jet {
        let mut out = Jet::zero();
        for mu in 0..DIM {
            out += self.c[mu].partial(mu);
        }
        out
    }

    /// The Lie bracket `[self, other]`.
    pub fn bracket(&self, other: &VectorField) -> VectorField {
        VectorField {
            c: std::array::from_fn(|nu| self.apply(&other.c[nu]) - other.apply(&self.c[nu])),
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        VectorField {
            c: std::array::from_fn(|m| self.c[m].truncate(order)),
        }
    }
}

/// Jacobi–Lie bracket of two sampled vector fields.
pub fn lie_vf(xi: &VectorField, zeta: &VectorField) -> VectorField {
    xi.bracket(zeta)
}

/// Product table for plain scalar-valued forms (fiber slot 0 only).
pub fn scalar_product() -> &'static FiberProduct {
    use std::sync::OnceLock;
    static T: OnceLock<Vec<Vec<(u8, f64)>>> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = vec![Vec::new(); FIBER_SLOTS * FIBER_SLOTS];
        t[0] = vec![(0, 1.0)];
        t
    })
}
