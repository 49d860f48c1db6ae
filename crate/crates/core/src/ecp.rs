//! The Einstein–Cartan–Palatini algebra in four dimensions: the four graded
//! components
//!
//! ```text
//! degree 0   (ξ, ρ)   vector field, so(1,3)-valued function
//! degree 1   (e, ω)   ℝ^{1,3}-valued 1-form, so(1,3)-valued 1-form
//! degree 2   (E, Ω)   Λ³-valued 3-form, Λ²-valued 3-form
//! degree 3   (χ, P)   density-valued 1-form, Λ²-valued 4-form
//! ```
//!
//! with brackets ℓ₁, ℓ₂, ℓ₃ and the degree −3 trace pairing. so(1,3) is
//! stored through Φ as grade-2 multivectors, so every fiber index is a blade
//! mask. χ is a 1-form whose coefficients are coordinate densities (its
//! fiber is the scalar slot).

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, LInfinityAlgebra};
use crate::calculus::form::{Form, VectorField};
use crate::calculus::jet::{Jet, DIM};
use crate::error::{Error, Result};
use crate::minkowski::{hodge_table, so_act_table, so_bracket_table, trace_table, wedge_table, VOLUME};
use crate::sampling::{FormProfile, ProfileSpec, VectorProfile};

pub const VECTOR: [u8; 4] = [0b0001, 0b0010, 0b0100, 0b1000];
pub const BIVECTOR: [u8; 6] = [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100];
pub const TRIVECTOR: [u8; 4] = [0b0111, 0b1011, 0b1101, 0b1110];

/// A homogeneous element. `first`/`second` hold (–, ρ), (e, ω), (E, Ω) or
/// (χ, P) according to the degree; `xi` is used in degree 0 only. Degrees
/// outside 0..=3 only occur as structural zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct EcpElement {
    pub degree: i32,
    pub xi: VectorField,
    pub first: Form,
    pub second: Form,
}

impl EcpElement {
    pub fn zero(degree: i32) -> Self {
        EcpElement {
            degree,
            xi: VectorField::zero(),
            first: Form::zero(),
            second: Form::zero(),
        }
    }

    pub fn gauge(xi: VectorField, rho: Form) -> Result<Self> {
        Self::checked(0, xi, Form::zero(), rho)
    }

    pub fn field(e: Form, omega: Form) -> Result<Self> {
        Self::checked(1, VectorField::zero(), e, omega)
    }

    pub fn antifield(e: Form, omega: Form) -> Result<Self> {
        Self::checked(2, VectorField::zero(), e, omega)
    }

    pub fn antighost(chi: Form, p: Form) -> Result<Self> {
        Self::checked(3, VectorField::zero(), chi, p)
    }

    fn checked(degree: i32, xi: VectorField, first: Form, second: Form) -> Result<Self> {
        let x = EcpElement {
            degree,
            xi,
            first,
            second,
        };
        x.validate()?;
        Ok(x)
    }

    /// (form degree, fiber grade) of the two components in this degree.
    fn shape(degree: i32) -> Option<[(usize, usize); 2]> {
        match degree {
            0 => Some([(0, 0), (0, 2)]),
            1 => Some([(1, 1), (1, 2)]),
            2 => Some([(3, 3), (3, 2)]),
            3 => Some([(1, 0), (4, 2)]),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let Some(shape) = Self::shape(self.degree) else {
            return Err(Error::Shape(format!("no component in degree {}", self.degree)));
        };
        for (name, form, (k, g)) in [("first", &self.first, shape[0]), ("second", &self.second, shape[1])] {
            if self.degree == 0 && name == "first" {
                if !form.is_empty() {
                    return Err(Error::Shape("degree 0 has no first form component".into()));
                }
                continue;
            }
            for t in form.terms() {
                if t.mask.count_ones() as usize != k || t.fiber.count_ones() as usize != g {
                    return Err(Error::Shape(format!(
                        "degree-{} {name} component expects {k}-forms of grade {g}, found mask {:04b} fiber {:04b}",
                        self.degree, t.mask, t.fiber
                    )));
                }
            }
        }
        if self.degree != 0 && self.xi.max_abs() != 0.0 {
            return Err(Error::Shape("vector field component outside degree 0".into()));
        }
        Ok(())
    }

    pub fn max_abs(&self) -> f64 {
        self.xi.max_abs().max(self.first.max_abs()).max(self.second.max_abs())
    }

    pub fn truncate(&self, order: usize) -> Self {
        EcpElement {
            degree: self.degree,
            xi: self.xi.truncate(order),
            first: self.first.truncate(order),
            second: self.second.truncate(order),
        }
    }
}

pub fn wedge(a: &Form, b: &Form) -> Form {
    a.wedge(b, wedge_table())
}

/// `a ⋋ b`: form wedge, grade-2 fiber of `a` acting on the fiber of `b`.
pub fn act(a: &Form, b: &Form) -> Form {
    a.wedge(b, so_act_table())
}

/// `[a, b]`: form wedge with the so(1,3) bracket on fibers.
pub fn lie_bracket(a: &Form, b: &Form) -> Form {
    a.wedge(b, so_bracket_table())
}

pub fn hodge(a: &Form) -> Form {
    a.map_fiber(hodge_table())
}

/// `E ⊼ e = ⋆(⋆E ⩕ e)`: a Λ³-valued form contracted with a vector-valued one.
pub fn barwedge(big_e: &Form, e: &Form) -> Form {
    hodge(&wedge(&hodge(big_e), e))
}

/// `Tr(·)` as a real-valued form.
pub fn trace(a: &Form) -> Form {
    a.map_fiber(trace_table())
}

/// Coefficient of `Tr(·)` on the coordinate volume form.
pub fn top_trace(a: &Form) -> Jet {
    trace(a).component(VOLUME, 0)
}

/// `dx^μ ⊗ f_μ`, scalar fiber.
fn covector(f: impl Fn(usize) -> Jet) -> Form {
    Form::from_terms((0..DIM).map(|mu| (1u8 << mu, 0u8, f(mu))))
}

/// Lie derivative of a density-valued form.
fn lie_density(chi: &Form, xi: &VectorField) -> Form {
    chi.lie(xi).add(&chi.mul_jet(&xi.divergence()))
}

/// `F_ω = dω + ½[ω, ω]`.
pub fn curvature(omega: &Form) -> Form {
    omega.d().axpy(0.5, &lie_bracket(omega, omega))
}

/// `T = de + ω ⋋ e`.
pub fn torsion(e: &Form, omega: &Form) -> Form {
    e.d().add(&act(omega, e))
}

/// Classical density `Tr(½ e⩕e⩕F_ω + (Λ/4) e⩕e⩕e⩕e)`.
pub fn action_density(e: &Form, omega: &Form, lambda: f64) -> Jet {
    let ee = wedge(e, e);
    let mut out = top_trace(&wedge(&ee, &curvature(omega))).scale(0.5);
    if lambda != 0.0 {
        out.axpy(0.25 * lambda, &top_trace(&wedge(&ee, &ee)));
    }
    out
}

/// Einstein part of the field equations, `U = e⩕F_ω + Λ e⩕e⩕e`.
pub fn eom_u(e: &Form, omega: &Form, lambda: f64) -> Form {
    let u = wedge(e, &curvature(omega));
    if lambda == 0.0 {
        return u;
    }
    u.axpy(lambda, &wedge(&wedge(e, e), e))
}

/// Torsion part of the field equations, `V = ½ d_ω(e⩕e)`.
pub fn eom_v(e: &Form, omega: &Form) -> Form {
    let ee = wedge(e, e);
    ee.d().add(&act(omega, &ee)).scale(0.5)
}

/// The algebra, parametrized by the cosmological constant and the
/// coefficient `c` of the `c·E ⊼ e` term in ℓ₂((e,ω),(E,Ω)), where
/// `E ⊼ e := ⋆(⋆E ⩕ e)`. The outer ⋆ and `c = −1` are forced by cyclic
/// invariance (Tr(ρ⩕P) must reproduce −Tr((ρ⋋e)⩕E)) and by the Jacobi
/// identity on (ω, e, e); with `⋆E ⩕ e` alone no coefficient works.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Ecp {
    pub lambda: f64,
    pub barwedge: f64,
}

impl Default for Ecp {
    fn default() -> Self {
        Ecp {
            lambda: 0.0,
            barwedge: -1.0,
        }
    }
}

impl Ecp {
    pub fn new(lambda: f64) -> Self {
        Ecp {
            lambda,
            ..Self::default()
        }
    }

    pub fn l1(&self, x: &EcpElement) -> EcpElement {
        let mut out = EcpElement::zero(x.degree + 1);
        match x.degree {
            0 => out.second = x.second.d(),
            2 => out.second = x.second.d().neg(),
            _ => {}
        }
        out
    }

    /// ℓ₂ for `x.degree ≤ y.degree`.
    fn l2_ordered(&self, x: &EcpElement, y: &EcpElement) -> EcpElement {
        let mut out = EcpElement::zero(x.degree + y.degree);
        match (x.degree, y.degree) {
            (0, 0) => {
                out.xi = x.xi.bracket(&y.xi);
                out.second = Form::combine([
                    (-1.0, &lie_bracket(&x.second, &y.second)),
                    (1.0, &y.second.lie(&x.xi)),
                    (-1.0, &x.second.lie(&y.xi)),
                ]);
            }
            (0, 1) | (0, 2) => {
                let (xi, rho) = (&x.xi, &x.second);
                out.first = y.first.lie(xi).sub(&act(rho, &y.first));
                out.second = y.second.lie(xi).sub(&lie_bracket(rho, &y.second));
            }
            (0, 3) => {
                let (xi, rho) = (&x.xi, &x.second);
                let (chi, p) = (&y.first, &y.second);
                let drho = rho.d();
                out.first = covector(|mu| top_trace(&wedge(&drho.interior_mu(mu), p))).add(&lie_density(chi, xi));
                out.second = p.lie(xi).sub(&lie_bracket(rho, p));
            }
            (1, 1) => {
                let (e1, w1, e2, w2) = (&x.first, &x.second, &y.first, &y.second);
                out.first = wedge(e1, &w2.d()).add(&wedge(e2, &w1.d())).neg();
                out.second = wedge(e1, &e2.d()).add(&wedge(e2, &e1.d())).neg();
            }
            (1, 2) => {
                let (e, w, ee, ww) = (&x.first, &x.second, &y.first, &y.second);
                let (de, dw, dee, dww) = (e.d(), w.d(), ee.d(), ww.d());
                out.first = covector(|mu| {
                    let t = Form::combine([
                        (1.0, &wedge(&de.interior_mu(mu), ee)),
                        (-1.0, &wedge(&dw.interior_mu(mu), ww)),
                        (-1.0, &wedge(&e.interior_mu(mu), &dee)),
                        (1.0, &wedge(&w.interior_mu(mu), &dww)),
                    ]);
                    top_trace(&t)
                });
                out.second = barwedge(ee, e).scale(self.barwedge).add(&lie_bracket(w, ww));
            }
            _ => {}
        }
        out
    }

    pub fn l2(&self, x: &EcpElement, y: &EcpElement) -> EcpElement {
        if x.degree <= y.degree {
            return self.l2_ordered(x, y);
        }
        // ℓ₂(x, y) = −(−1)^{|x||y|} ℓ₂(y, x)
        let s = if (x.degree * y.degree).rem_euclid(2) == 1 { 1.0 } else { -1.0 };
        let v = self.l2_ordered(y, x);
        self.combine(v.degree, &[(s, &v)])
    }

    pub fn l3(&self, a: &EcpElement, b: &EcpElement, c: &EcpElement) -> EcpElement {
        let mut out = EcpElement::zero(a.degree + b.degree + c.degree - 1);
        if (a.degree, b.degree, c.degree) != (1, 1, 1) {
            return out;
        }
        let e = [&a.first, &b.first, &c.first];
        let w = [&a.second, &b.second, &c.second];
        let mut first = Form::combine([
            (1.0, &wedge(e[0], &lie_bracket(w[1], w[2]))),
            (1.0, &wedge(e[1], &lie_bracket(w[0], w[2]))),
            (1.0, &wedge(e[2], &lie_bracket(w[1], w[0]))),
        ]);
        if self.lambda != 0.0 {
            first = first.axpy(6.0 * self.lambda, &wedge(&wedge(e[0], e[1]), e[2]));
        }
        let mut second = Form::zero();
        for (i, j, k) in [(0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 1, 0), (2, 0, 1)] {
            second = second.add(&wedge(e[i], &act(w[j], e[k])));
        }
        out.first = first.neg();
        out.second = second.neg();
        out
    }

    /// Seeded random field of the given degree. Periodic specs give fields on
    /// the 4-torus.
    pub fn random_field(seed: u64, degree: i32, spec: ProfileSpec, order: usize) -> Field<EcpElement> {
        let mut rng = crate::sampling::rng(seed ^ 0x9e37_79b9_7f4a_7c15);
        let (xi, first, second) = match degree {
            0 => (
                VectorProfile::random(&mut rng, &spec),
                FormProfile::zero(),
                FormProfile::random(&mut rng, &spec, 0, &BIVECTOR),
            ),
            1 => (
                VectorProfile::zero(),
                FormProfile::random(&mut rng, &spec, 1, &VECTOR),
                FormProfile::random(&mut rng, &spec, 1, &BIVECTOR),
            ),
            2 => (
                VectorProfile::zero(),
                FormProfile::random(&mut rng, &spec, 3, &TRIVECTOR),
                FormProfile::random(&mut rng, &spec, 3, &BIVECTOR),
            ),
            3 => (
                VectorProfile::zero(),
                FormProfile::random(&mut rng, &spec, 1, &[0]),
                FormProfile::random(&mut rng, &spec, 4, &BIVECTOR),
            ),
            _ => (VectorProfile::zero(), FormProfile::zero(), FormProfile::zero()),
        };
        Field::new(move |x| {
            Ok(EcpElement {
                degree,
                xi: xi.eval(x, order),
                first: first.eval(x, order),
                second: second.eval(x, order),
            })
        })
    }
}

impl LInfinityAlgebra for Ecp {
    type Element = EcpElement;

    fn name(&self) -> String {
        "ecp".into()
    }

    fn max_arity(&self) -> usize {
        3
    }

    fn degrees(&self) -> Vec<i32> {
        vec![0, 1, 2, 3]
    }

    fn degree(&self, x: &EcpElement) -> i32 {
        x.degree
    }

    fn zero(&self, degree: i32) -> EcpElement {
        EcpElement::zero(degree)
    }

    fn combine(&self, degree: i32, terms: &[(f64, &EcpElement)]) -> EcpElement {
        let mut xi = VectorField::zero();
        for (s, x) in terms {
            xi = xi.axpy(*s, &x.xi);
        }
        EcpElement {
            degree,
            xi,
            first: Form::combine(terms.iter().map(|(s, x)| (*s, &x.first))),
            second: Form::combine(terms.iter().map(|(s, x)| (*s, &x.second))),
        }
    }

    fn norm(&self, x: &EcpElement) -> f64 {
        x.max_abs()
    }

    fn bracket_impl(&self, args: &[&EcpElement]) -> Result<EcpElement> {
        Ok(match args {
            [a] => self.l1(a),
            [a, b] => self.l2(a, b),
            [a, b, c] => self.l3(a, b, c),
            _ => unreachable!("arity checked by caller"),
        })
    }

    fn pairing_degree(&self) -> Option<i32> {
        Some(-3)
    }

    fn pairing_density(&self, a: &EcpElement, b: &EcpElement) -> Result<f64> {
        let (a, b) = if a.degree <= b.degree { (a, b) } else { (b, a) };
        Ok(match (a.degree, b.degree) {
            (1, 2) => top_trace(&wedge(&a.first, &b.first).add(&wedge(&b.second, &a.second))).value(),
            (0, 3) => {
                let chi = &b.first;
                let contraction: f64 = (0..DIM).map(|mu| a.xi.c[mu].value() * chi.component(1 << mu, 0).value()).sum();
                contraction + top_trace(&wedge(&a.second, &b.second)).value()
            }
            _ => 0.0,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bracket, mc_defect};
    use crate::minkowski::{phi, so_act, Multivector};

    fn sample(seed: u64, degree: i32) -> EcpElement {
        Ecp::random_field(seed, degree, ProfileSpec::local(4), 2).at(&[0.3, -0.4, 0.8, 1.1]).unwrap()
    }

    #[test]
    fn random_elements_have_the_right_shape() {
        for d in 0..4 {
            sample(d as u64, d).validate().unwrap();
        }
        let bad = EcpElement::field(Form::scalar(1, Jet::constant(1.0)), Form::zero());
        assert!(bad.is_err());
    }

    #[test]
    fn l1_examples() {
        let alg = Ecp::default();
        // ρ = x¹ · u₁∧u₂
        let rho = Form::scalar(0b0110, Jet::variable(1, 0.5, 2));
        let x = EcpElement::gauge(VectorField::zero(), rho).unwrap();
        let y = alg.l1(&x);
        assert_eq!(y.degree, 1);
        assert_eq!(y.second.component(0b0010, 0b0110).value(), 1.0);
        assert_eq!(y.second.terms().len(), 1);
        let x2 = sample(3, 2);
        let y2 = alg.l1(&x2);
        assert!(alg.l1(&alg.l1(&sample(4, 0))).max_abs() == 0.0);
        assert!((y2.second.max_value() - x2.second.d().max_value()).abs() < 1e-15);
    }

    #[test]
    fn rho_acts_by_matrices() {
        let alg = Ecp::default();
        let x = sample(5, 0);
        let rho_only = EcpElement::gauge(VectorField::zero(), x.second.clone()).unwrap();
        let y = sample(6, 1);
        let out = alg.l2(&rho_only, &y);
        let rho = Multivector(std::array::from_fn(|b| x.second.component(0, b as u8).value()));
        for mu in 0..4u8 {
            let e = Multivector(std::array::from_fn(|b| y.first.component(1 << mu, b as u8).value()));
            let expect = so_act(&rho, &e).unwrap().scale(-1.0);
            for b in VECTOR {
                assert!((out.first.component(1 << mu, b).value() - expect[b]).abs() < 1e-13);
            }
        }
        let _ = phi;
    }

    #[test]
    fn vector_field_bracket_component() {
        let alg = Ecp::default();
        let (a, b) = (sample(7, 0), sample(8, 0));
        let out = alg.l2(&a, &b);
        let expect = a.xi.bracket(&b.xi);
        for mu in 0..4 {
            assert!((out.xi.c[mu].value() - expect.c[mu].value()).abs() < 1e-14);
        }
    }

    #[test]
    fn stationary_fields_are_invariant_under_time_translation() {
        let alg = Ecp::default();
        let spec = ProfileSpec::local(4);
        let mut rng = crate::sampling::rng(1);
        // t-independent: profiles in the last three coordinates only, via a shifted chart
        let e = FormProfile::random(&mut rng, &spec, 1, &VECTOR);
        let w = FormProfile::random(&mut rng, &spec, 1, &BIVECTOR);
        let x = [0.2, 0.3, 0.4, 0.5];
        let drop_t = |f: Form| f.map_coefficients(|j| Jet::constant(j.value()));
        let y = EcpElement::field(drop_t(e.eval(&x, 2)), drop_t(w.eval(&x, 2))).unwrap();
        let gen = EcpElement::gauge(VectorField::coordinate(0, 1.0), Form::zero()).unwrap();
        assert_eq!(alg.l2(&gen, &y).max_abs(), 0.0);
    }

    #[test]
    fn l3_examples() {
        let alg = Ecp::new(1.0);
        let x = sample(9, 1);
        let e_only = EcpElement::field(x.first.clone(), Form::zero()).unwrap();
        let out = alg.l3(&e_only, &e_only, &e_only);
        let eee = wedge(&wedge(&x.first, &x.first), &x.first).scale(-6.0);
        assert!(out.first.sub(&eee).max_abs() < 1e-12);
        assert!(out.second.is_empty());
        let flat = Ecp::default().l3(&e_only, &e_only, &e_only);
        assert!(flat.max_abs() == 0.0);
        let (a, b, c) = (sample(10, 1), sample(11, 1), sample(12, 1));
        let d = alg.l3(&a, &b, &c).first.sub(&alg.l3(&b, &a, &c).first);
        assert!(d.max_abs() < 1e-12);
    }

    #[test]
    fn mc_on_fields_is_minus_u_and_v() {
        let alg = Ecp::new(0.7);
        let x = sample(13, 1);
        let mc = mc_defect(&alg, &x).unwrap();
        let u = eom_u(&x.first, &x.second, 0.7);
        let v = eom_v(&x.first, &x.second);
        assert!(mc.first.add(&u).max_value() < 1e-12 * u.max_value().max(1.0));
        assert!(mc.second.sub(&v).max_value() < 1e-12 * v.max_value().max(1.0));
    }

    #[test]
    fn pairing_structural_zeros_and_expansion() {
        let alg = Ecp::default();
        let (a, b) = (sample(14, 1), sample(15, 1));
        assert_eq!(crate::algebra::pairing(&alg, &a, &b).unwrap(), 0.0);
        let big = sample(16, 2);
        let e = EcpElement::field(a.first.clone(), Form::zero()).unwrap();
        let ee = EcpElement::antifield(big.first.clone(), Form::zero()).unwrap();
        // Σ over the four (form, fiber) splittings of e_μ^a E_{...}^{bcd}
        let mut expect = 0.0;
        for mu in 0..4u8 {
            let rest = VOLUME & !(1 << mu);
            let fs = crate::calculus::form::mask_wedge_sign(1 << mu, rest).unwrap();
            for a in 0..4u8 {
                let comp = VOLUME & !(1 << a);
                let gs = crate::minkowski::blade_wedge(1 << a, comp).unwrap();
                expect += fs * gs * e.first.component(1 << mu, 1 << a).value() * ee.first.component(rest, comp).value();
            }
        }
        let got = alg.pairing_density(&e, &ee).unwrap();
        assert!((got - expect).abs() < 1e-13);
        assert_eq!(got, alg.pairing_density(&ee, &e).unwrap());
        let _ = bracket(&alg, &[&a]).unwrap();
    }

    #[test]
    fn curvature_satisfies_bianchi() {
        let x = sample(17, 1);
        let f = curvature(&x.second);
        let bianchi = f.d().add(&lie_bracket(&x.second, &f));
        assert!(bianchi.max_value() < 1e-12);
    }
}
