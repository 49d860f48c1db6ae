//! Noether currents and charges of vector fields acting on ECP fields.
//!
//! For the minimal coupling of a background `β ⊗ ξ` the current is
//!
//! ```text
//! J₃[ξ] = ⅓ e∧e∧L_ξω − ⅓ ω∧e∧L_ξe
//! ```
//!
//! and, for `ξ` Killing and `(e, ω)` on shell with Λ = 0, it reduces to
//! `½ e∧e∧L_ξω = dQ[ξ]` with `Q[ξ] = ½ Tr(ι_ξω ∧ e ∧ e)`. Everything here is
//! traced, so forms have scalar fiber.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::calculus::{Form, Jet, SphereQuadrature, VectorField};
use crate::ecp::{curvature, eom_u, eom_v, trace, wedge};
use crate::error::Result;
use crate::minkowski::{ETA, PHI_BLADE_SIGN};

/// A vector field on the chart, evaluated as jets.
#[derive(Clone)]
pub struct Generator {
    pub label: String,
    eval: Arc<dyn Fn(&[f64; 4], usize) -> VectorField + Send + Sync>,
}

impl fmt::Debug for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Generator({})", self.label)
    }
}

impl Generator {
    pub fn new(label: impl Into<String>, eval: impl Fn(&[f64; 4], usize) -> VectorField + Send + Sync + 'static) -> Self {
        Generator {
            label: label.into(),
            eval: Arc::new(eval),
        }
    }

    pub fn zero() -> Self {
        Self::new("0", |_, _| VectorField::zero())
    }

    /// `s ∂_μ`.
    pub fn coordinate(mu: usize, s: f64) -> Self {
        Self::new(format!("{s}*d{mu}"), move |_, _| VectorField::coordinate(mu, s))
    }

    /// `x^μ ∂_μ` for a single coordinate, e.g. `r ∂_r`.
    pub fn dilation(mu: usize) -> Self {
        Self::new(format!("x{mu}*d{mu}"), move |x, order| {
            let mut v = VectorField::zero();
            v.c[mu] = Jet::variable(mu, x[mu], order);
            v
        })
    }

    pub fn combine(a: f64, g: &Generator, b: f64, h: &Generator) -> Self {
        let (g, h) = (g.clone(), h.clone());
        Self::new(format!("{a}*({})+{b}*({})", g.label, h.label), move |x, order| {
            g.at(x, order).scale(a).axpy(b, &h.at(x, order))
        })
    }

    pub fn at(&self, x: &[f64; 4], order: usize) -> VectorField {
        (self.eval)(x, order)
    }
}

/// `(e, ω)` at a chart point.
pub type FieldData<'a> = dyn Fn(&[f64; 4]) -> Result<(Form, Form)> + 'a;

/// `Tr(⅓ e∧e∧L_ξω − ⅓ ω∧e∧L_ξe)`.
pub fn minimal_coupling_current(xi: &VectorField, e: &Form, omega: &Form) -> Form {
    let ee = wedge(e, e);
    let a = wedge(&ee, &omega.lie(xi));
    let b = wedge(&wedge(omega, e), &e.lie(xi));
    trace(&Form::combine([(1.0 / 3.0, &a), (-1.0 / 3.0, &b)]))
}

/// `Tr(½ e∧e∧L_ξω)`, the current once `ξ` is Killing.
pub fn killing_current(xi: &VectorField, e: &Form, omega: &Form) -> Form {
    trace(&wedge(&wedge(e, e), &omega.lie(xi)).scale(0.5))
}

/// `Q[ξ] = ½ Tr(ι_ξω ∧ e ∧ e)`.
pub fn charge_density(xi: &VectorField, e: &Form, omega: &Form) -> Form {
    trace(&wedge(&wedge(&omega.interior(xi), e), e).scale(0.5))
}

/// Residual of the off-shell Noether identity (Λ = 0)
///
/// ```text
/// dQ[ξ] = ½ Tr(e²∧L_ξω) − ½ ι_ξ Tr(e²∧F_ω) + Tr(ι_ξe ∧ U) + Tr(ι_ξω ∧ V)
/// ```
///
/// which holds for every `ξ` and every `(e, ω)`.
pub fn noether_identity_defect(xi: &VectorField, e: &Form, omega: &Form) -> f64 {
    let lhs = charge_density(xi, e, omega).d();
    let rhs = Form::combine([
        (1.0, &killing_current(xi, e, omega)),
        (-0.5, &trace(&wedge(&wedge(e, e), &curvature(omega))).interior(xi)),
        (1.0, &trace(&wedge(&e.interior(xi), &eom_u(e, omega, 0.0)))),
        (1.0, &trace(&wedge(&omega.interior(xi), &eom_v(e, omega)))),
    ]);
    lhs.sub(&rhs).max_value()
}

/// Components `g_μν = η_ab e^a_μ e^b_ν` of the metric of a coframe.
pub fn metric(e: &Form) -> [[Jet; 4]; 4] {
    std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            let mut g = Jet::zero();
            for (a, eta) in ETA.iter().enumerate() {
                let fa = 1u8 << a;
                g.add_product(*eta, &e.component(1 << mu, fa), &e.component(1 << nu, fa));
            }
            g
        })
    })
}

/// `(L_ξ g)_μν = ξ^ρ ∂_ρ g_μν + g_ρν ∂_μ ξ^ρ + g_μρ ∂_ν ξ^ρ`.
pub fn lie_metric(xi: &VectorField, g: &[[Jet; 4]; 4]) -> [[Jet; 4]; 4] {
    std::array::from_fn(|mu| {
        std::array::from_fn(|nu| {
            let mut out = xi.apply(&g[mu][nu]);
            for rho in 0..4 {
                out.add_product(1.0, &g[rho][nu], &xi.c[rho].partial(mu));
                out.add_product(1.0, &g[mu][rho], &xi.c[rho].partial(nu));
            }
            out
        })
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KillingReport {
    /// Largest `|(L_ξ g)_μν|` over the sampled points, relative to the
    /// largest `|g_μν|` there.
    pub max_defect: f64,
    pub sample_count: usize,
    pub points: Vec<[f64; 4]>,
}

pub fn killing_defect(xi: &Generator, fields: &FieldData<'_>, points: &[[f64; 4]]) -> Result<KillingReport> {
    let mut worst = 0.0f64;
    for x in points {
        let (e, _) = fields(x)?;
        let g = metric(&e);
        let scale = g.iter().flatten().fold(0.0f64, |m, j| m.max(j.value().abs()));
        let lg = lie_metric(&xi.at(x, e.order().max(1)), &g);
        let d = lg.iter().flatten().fold(0.0f64, |m, j| m.max(j.value().abs()));
        worst = worst.max(d / scale.max(f64::MIN_POSITIVE));
    }
    Ok(KillingReport {
        max_defect: worst,
        sample_count: points.len(),
        points: points.to_vec(),
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct OnShellReport {
    /// `sup |dQ[ξ] − ½ Tr(e²∧L_ξω)|`.
    pub lemma: f64,
    /// `sup |J₃[ξ] − ½ Tr(e²∧L_ξω)|`, which needs `ξ` Killing.
    pub killing: f64,
    /// Largest value of `½ Tr(e²∧L_ξω)`, for scale.
    pub scale: f64,
}

pub fn onshell_defect(xi: &Generator, fields: &FieldData<'_>, points: &[[f64; 4]]) -> Result<OnShellReport> {
    let mut rep = OnShellReport::default();
    for x in points {
        let (e, w) = fields(x)?;
        let v = xi.at(x, e.order().max(1));
        let k = killing_current(&v, &e, &w);
        let dq = charge_density(&v, &e, &w).d();
        rep.lemma = rep.lemma.max(dq.sub(&k).max_value());
        rep.killing = rep.killing.max(minimal_coupling_current(&v, &e, &w).sub(&k).max_value());
        rep.scale = rep.scale.max(k.max_value());
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChargeReport {
    pub xi: String,
    /// The sphere `{t = t0, r = r0}` in the chart `(t, r, θ, φ)`.
    pub surface: (f64, f64),
    pub value: f64,
    /// The same charge written through the components `ω^{ab}` of the
    /// connection rather than the blade coefficients of `Φ(ω)`.
    pub component_value: f64,
    pub quadrature: SphereQuadrature,
    /// Worst `|dQ − ½Tr(e²∧L_ξω)|` at the quadrature nodes.
    pub on_shell_defect: f64,
}

/// `∫_Σ Q[ξ]` over `Σ = {t = t0, r = r0}`, oriented by `dθ∧dφ`.
pub fn charge(xi: &Generator, fields: &FieldData<'_>, t0: f64, r0: f64, quad: &SphereQuadrature) -> Result<ChargeReport> {
    let mut defect = 0.0f64;
    let value = quad.integrate(|th, ph| {
        let x = [t0, r0, th, ph];
        let (e, w) = fields(&x)?;
        let v = xi.at(&x, e.order().max(1));
        let q = charge_density(&v, &e, &w);
        let k = killing_current(&v, &e, &w);
        defect = defect.max(q.d().sub(&k).max_value());
        Ok(q.component(0b1100, 0).value())
    })?;
    Ok(ChargeReport {
        xi: xi.label.clone(),
        surface: (t0, r0),
        value,
        // + 0.0 keeps reports free of negative zeros
        component_value: PHI_BLADE_SIGN * value + 0.0,
        quadrature: *quad,
        on_shell_defect: defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ecp::{Ecp, BIVECTOR, VECTOR};
    use crate::sampling::{rng, FormProfile, ProfileSpec, VectorProfile};

    fn random(seed: u64) -> (VectorField, Form, Form) {
        let x = [0.3, -0.4, 0.8, 1.1];
        let spec = ProfileSpec::local(4);
        let mut r = rng(seed);
        let xi = VectorProfile::random(&mut r, &spec).eval(&x, 2);
        let e = FormProfile::random(&mut r, &spec, 1, &VECTOR).eval(&x, 2);
        let w = FormProfile::random(&mut r, &spec, 1, &BIVECTOR).eval(&x, 2);
        (xi, e, w)
    }

    #[test]
    fn zero_generator_gives_zero() {
        let (_, e, w) = random(1);
        let z = VectorField::zero();
        assert!(minimal_coupling_current(&z, &e, &w).is_empty());
        assert!(charge_density(&z, &e, &w).is_empty());
    }

    #[test]
    fn current_is_linear_in_xi() {
        let (xi, e, w) = random(2);
        let (eta, _, _) = random(3);
        let lhs = minimal_coupling_current(&xi.axpy(-2.5, &eta), &e, &w);
        let rhs = minimal_coupling_current(&xi, &e, &w).axpy(-2.5, &minimal_coupling_current(&eta, &e, &w));
        assert!(lhs.sub(&rhs).max_abs() < 1e-12 * lhs.max_abs());
        let lhs = charge_density(&xi.axpy(0.5, &eta), &e, &w);
        let rhs = charge_density(&xi, &e, &w).axpy(0.5, &charge_density(&eta, &e, &w));
        assert!(lhs.sub(&rhs).max_abs() < 1e-12 * lhs.max_abs());
    }

    #[test]
    fn current_expands_term_by_term() {
        // J₃ = ⅓ e∧e∧L_ξω − ⅓ ω∧e∧L_ξe, with L_ξ = ι_ξ d + d ι_ξ
        let (xi, e, w) = random(4);
        let lw = w.d().interior(&xi).add(&w.interior(&xi).d());
        let le = e.d().interior(&xi).add(&e.interior(&xi).d());
        let a = trace(&wedge(&wedge(&e, &e), &lw));
        let b = trace(&wedge(&w, &wedge(&e, &le)));
        let want = a.sub(&b).scale(1.0 / 3.0);
        let got = minimal_coupling_current(&xi, &e, &w);
        assert!(got.sub(&want).max_abs() < 1e-12 * want.max_abs());
        assert_eq!(got.degree(), Some(3));
    }

    #[test]
    fn coupling_density_is_beta_wedge_current() {
        use crate::actions::{EcpMinimalCoupling, MixedFunctional, VectorBackground};
        let (xi, e, w) = random(5);
        let beta = FormProfile::random(&mut rng(6), &ProfileSpec::local(4), 1, &[0]).eval(&[0.3, -0.4, 0.8, 1.1], 2);
        let f = crate::ecp::EcpElement::field(e.clone(), w.clone()).unwrap();
        let s = EcpMinimalCoupling.density(&VectorBackground { beta: beta.clone(), xi: xi }, &f).unwrap();
        let j = wedge(&beta, &minimal_coupling_current(&xi, &e, &w)).component(0b1111, 0).value();
        assert!((s - j).abs() < 1e-12 * s.abs());
        let _ = Ecp::default();
    }

    #[test]
    fn noether_identity_holds_off_shell() {
        for seed in 10..14 {
            let (xi, e, w) = random(seed);
            let scale = charge_density(&xi, &e, &w).d().max_value();
            assert!(scale > 1e-2);
            assert!(noether_identity_defect(&xi, &e, &w) < 1e-10 * scale.max(1.0), "seed {seed}");
        }
    }

    #[test]
    fn killing_metric_of_flat_coframe() {
        // e^a = dx^a: boosts and rotations are Killing, dilations are not
        let flat = |x: &[f64; 4]| -> Result<(Form, Form)> {
            let _ = x;
            Ok((Form::from_terms((0..4).map(|a| (1u8 << a, 1u8 << a, Jet::constant(1.0)))), Form::zero()))
        };
        let boost = Generator::new("boost", |x, order| {
            VectorField::new([Jet::variable(1, x[1], order), Jet::variable(0, x[0], order), Jet::zero(), Jet::zero()])
        });
        let pts = [[0.1, 0.2, 0.3, 0.4], [1.0, -2.0, 0.5, 0.0]];
        assert_eq!(killing_defect(&boost, &flat, &pts).unwrap().max_defect, 0.0);
        assert!(killing_defect(&Generator::dilation(1), &flat, &pts).unwrap().max_defect > 1.0);
    }
}
