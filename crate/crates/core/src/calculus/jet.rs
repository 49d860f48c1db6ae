//! Truncated Taylor jets of scalar fields in four chart variables.
//!
//! A jet stores Taylor coefficients `c_α = ∂^α f / α!` for all multi-indices
//! with `|α| <= order`. Every operation tracks the order up to which the
//! coefficients are exact: products take the minimum order, a partial
//! derivative lowers it by one. Coefficients above the order are kept zero.

use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DIM: usize = 4;
pub const MAX_ORDER: usize = 3;
/// Number of monomials of total degree <= MAX_ORDER in four variables.
pub const NCOEF: usize = 35;

struct Tables {
    exps: Vec<[u8; DIM]>,
    degree: Vec<u8>,
    /// Number of monomials of degree <= k, indexed by k.
    count: [usize; MAX_ORDER + 1],
    /// `(i, j, k)` with `exps[i] + exps[j] == exps[k]`, sorted by `degree[k]`.
    products: Vec<(u8, u8, u8)>,
    /// Number of product triples with `degree[k] <= order`.
    products_upto: [usize; MAX_ORDER + 1],
    /// `deriv[mu]` lists `(src, dst, factor)` for `∂_mu`.
    deriv: [Vec<(u8, u8, f64)>; DIM],
    unit: [usize; DIM],
}

fn tables() -> &'static Tables {
    static T: OnceLock<Tables> = OnceLock::new();
    T.get_or_init(|| {
        let mut exps = Vec::new();
        for deg in 0..=MAX_ORDER as u8 {
            // lexicographic within a degree, larger first exponent first
            let mut level = Vec::new();
            for a in (0..=deg).rev() {
                for b in (0..=deg - a).rev() {
                    for c in (0..=deg - a - b).rev() {
                        level.push([a, b, c, deg - a - b - c]);
                    }
                }
            }
            exps.extend(level);
        }
        assert_eq!(exps.len(), NCOEF);
        let degree: Vec<u8> = exps.iter().map(|e| e.iter().sum()).collect();
        let index_of = |e: [u8; DIM]| exps.iter().position(|x| *x == e);
        let mut count = [0; MAX_ORDER + 1];
        for (k, slot) in count.iter_mut().enumerate() {
            *slot = degree.iter().filter(|&&d| d as usize <= k).count();
        }
        let mut products = Vec::new();
        for i in 0..NCOEF {
            for j in 0..NCOEF {
                let mut e = [0u8; DIM];
                for m in 0..DIM {
                    e[m] = exps[i][m] + exps[j][m];
                }
                if let Some(k) = index_of(e) {
                    products.push((i as u8, j as u8, k as u8));
                }
            }
        }
        products.sort_by_key(|&(_, _, k)| degree[k as usize]);
        let mut products_upto = [0; MAX_ORDER + 1];
        for (o, slot) in products_upto.iter_mut().enumerate() {
            *slot = products
                .iter()
                .filter(|&&(_, _, k)| degree[k as usize] as usize <= o)
                .count();
        }
        let deriv = std::array::from_fn(|mu| {
            let mut v = Vec::new();
            for (src, e) in exps.iter().enumerate() {
                if e[mu] > 0 {
                    let mut lowered = *e;
                    lowered[mu] -= 1;
                    let dst = index_of(lowered).unwrap();
                    v.push((src as u8, dst as u8, e[mu] as f64));
                }
            }
            v
        });
        let unit = std::array::from_fn(|mu| {
            let mut e = [0u8; DIM];
            e[mu] = 1;
            index_of(e).unwrap()
        });
        Tables {
            exps,
            degree,
            count,
            products,
            products_upto,
            deriv,
            unit,
        }
    })
}

/// Truncated Taylor data of a scalar field at a chart point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    order: u8,
    c: [f64; NCOEF],
}

impl Jet {
    pub fn constant(value: f64) -> Self {
        let mut c = [0.0; NCOEF];
        c[0] = value;
        Jet {
            order: MAX_ORDER as u8,
            c,
        }
    }

    pub fn zero() -> Self {
        Self::constant(0.0)
    }

    /// The coordinate function `x^mu` expanded around `x0`.
    pub fn variable(mu: usize, x0: f64, order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        let mut j = Self::constant(x0);
        j.order = order as u8;
        if order >= 1 {
            j.c[tables().unit[mu]] = 1.0;
        }
        j
    }

    /// Builds a jet from value, gradient and (symmetric) Hessian.
    pub fn from_derivatives(value: f64, grad: [f64; DIM], hess: [[f64; DIM]; DIM]) -> Self {
        let t = tables();
        let mut j = Jet {
            order: 2,
            c: [0.0; NCOEF],
        };
        j.c[0] = value;
        for mu in 0..DIM {
            j.c[t.unit[mu]] = grad[mu];
        }
        for k in t.count[1]..t.count[2] {
            let e = t.exps[k];
            let idx: Vec<usize> = (0..DIM).flat_map(|m| std::iter::repeat_n(m, e[m] as usize)).collect();
            let (a, b) = (idx[0], idx[1]);
            j.c[k] = if a == b { 0.5 * hess[a][a] } else { hess[a][b] };
        }
        j
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }

    pub fn value(&self) -> f64 {
        self.c[0]
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.c[..tables().count[self.order()]]
    }

    /// First partials; entries are meaningful only when `order >= 1`.
    pub fn grad(&self) -> [f64; DIM] {
        let t = tables();
        std::array::from_fn(|mu| if self.order >= 1 { self.c[t.unit[mu]] } else { f64::NAN })
    }

    /// Second partials `∂_mu ∂_nu`; meaningful only when `order >= 2`.
    pub fn hess(&self) -> [[f64; DIM]; DIM] {
        let mut h = [[f64::NAN; DIM]; DIM];
        if self.order < 2 {
            return h;
        }
        for (mu, row) in h.iter_mut().enumerate() {
            for (nu, entry) in row.iter_mut().enumerate() {
                *entry = self.partial(mu).partial(nu).value();
            }
        }
        h
    }

    /// Truncates to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        let mut out = *self;
        out.order = order as u8;
        let n = tables().count[order];
        out.c[n..].iter_mut().for_each(|x| *x = 0.0);
        out
    }

    pub fn partial(&self, mu: usize) -> Self {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let mut out = Jet {
            order: self.order - 1,
            c: [0.0; NCOEF],
        };
        let t = tables();
        let limit = t.count[self.order()];
        for &(src, dst, f) in &t.deriv[mu] {
            if (src as usize) < limit {
                out.c[dst as usize] += f * self.c[src as usize];
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(|&x| x == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.coefficients().iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        out.c.iter_mut().for_each(|x| *x *= s);
        out
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: f64, other: &Jet) {
        self.order = self.order.min(other.order);
        let n = tables().count[self.order()];
        for i in 0..n {
            self.c[i] += s * other.c[i];
        }
        self.c[n..].iter_mut().for_each(|x| *x = 0.0);
    }

    /// `self += s * a * b`, truncated to the common order.
    pub fn add_product(&mut self, s: f64, a: &Jet, b: &Jet) {
        let order = self.order.min(a.order).min(b.order);
        if order < self.order {
            let n = tables().count[order as usize];
            self.c[n..].iter_mut().for_each(|x| *x = 0.0);
            self.order = order;
        }
        let t = tables();
        for &(i, j, k) in &t.products[..t.products_upto[order as usize]] {
            self.c[k as usize] += s * a.c[i as usize] * b.c[j as usize];
        }
    }

    /// Composes a univariate function with this jet, given the function's
    /// derivatives `[f, f', f'', f''']` at the jet's value.
    pub fn compose(&self, derivs: [f64; MAX_ORDER + 1]) -> Self {
        let mut h = *self;
        h.c[0] = 0.0;
        let mut out = Jet::constant(derivs[0]);
        out.order = self.order;
        let mut power = Jet::constant(1.0);
        let mut fact = 1.0;
        for (k, &dk) in derivs.iter().enumerate().skip(1).take(self.order()) {
            power = power * h;
            fact *= k as f64;
            out.axpy(dk / fact, &power);
        }
        out
    }

    pub fn sin(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose([s, c, -s, -c])
    }

    pub fn cos(&self) -> Self {
        let (s, c) = self.value().sin_cos();
        self.compose([c, -s, -c, s])
    }

    pub fn exp(&self) -> Self {
        let e = self.value().exp();
        self.compose([e; 4])
    }

    pub fn sqrt(&self) -> Result<Self> {
        let v = self.value();
        if v <= 0.0 {
            return Err(Error::Domain(format!("sqrt of non-positive value {v}")));
        }
        let s = v.sqrt();
        Ok(self.compose([s, 0.5 / s, -0.25 / (s * v), 0.375 / (s * v * v)]))
    }

    pub fn recip(&self) -> Result<Self> {
        let v = self.value();
        if v == 0.0 || !v.is_finite() {
            return Err(Error::Domain(format!("reciprocal of {v}")));
        }
        let r = 1.0 / v;
        Ok(self.compose([r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r]))
    }

    /// Integer power, defined for negative exponents away from zero.
    pub fn powi(&self, n: i32) -> Result<Self> {
        let v = self.value();
        if n < 0 && v == 0.0 {
            return Err(Error::Domain(format!("x^{n} at x = 0")));
        }
        let nf = n as f64;
        let d = [
            v.powi(n),
            nf * v.powi(n - 1),
            nf * (nf - 1.0) * v.powi(n - 2),
            nf * (nf - 1.0) * (nf - 2.0) * v.powi(n - 3),
        ];
        // exact for small non-negative powers at v = 0
        let d = if n >= 0 && v == 0.0 {
            std::array::from_fn(|k| {
                if k as i32 == n {
                    (1..=n).map(|i| i as f64).product()
                } else {
                    0.0
                }
            })
        } else {
            d
        };
        Ok(self.compose(d))
    }

    /// `cot(x)`, failing where `sin(x)` vanishes.
    pub fn cot(&self) -> Result<Self> {
        let s = self.sin();
        if s.value().abs() < 1e-300 {
            return Err(Error::Domain(format!("cot at {}", self.value())));
        }
        Ok(self.cos() * s.recip()?)
    }
}

impl Default for Jet {
    fn default() -> Self {
        Jet::zero()
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(mut self, rhs: Jet) -> Jet {
        self.axpy(1.0, &rhs);
        self
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(mut self, rhs: Jet) -> Jet {
        self.axpy(-1.0, &rhs);
        self
    }
}

impl AddAssign for Jet {
    fn add_assign(&mut self, rhs: Jet) {
        self.axpy(1.0, &rhs);
    }
}

impl SubAssign for Jet {
    fn sub_assign(&mut self, rhs: Jet) {
        self.axpy(-1.0, &rhs);
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let mut out = Jet::zero();
        out.add_product(1.0, &self, &rhs);
        out
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

impl MulAssign<f64> for Jet {
    fn mul_assign(&mut self, rhs: f64) {
        self.c.iter_mut().for_each(|x| *x *= rhs);
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(mut self, rhs: f64) -> Jet {
        self.c[0] += rhs;
        self
    }
}

/// Exponents of the monomial stored at `index` (exposed for tests).
pub fn monomial(index: usize) -> [u8; DIM] {
    tables().exps[index]
}

pub fn monomial_degree(index: usize) -> usize {
    tables().degree[index] as usize
}
