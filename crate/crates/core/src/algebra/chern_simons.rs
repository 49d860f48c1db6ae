//! Chern–Simons theory as the cyclic dgla Ω*(T³, so(3)): ℓ₁ = d,
//! ℓ₂ = wedge ⊗ cross product, pairing ∫ Σ_i A^i ∧ B^i.
//!
//! The three-torus uses chart coordinates x⁰, x¹, x² (x³ is inert).

use std::sync::OnceLock;

use crate::calculus::form::{FiberProduct, Form, FIBER_SLOTS};
use crate::calculus::jet::Jet;
use crate::error::{Error, Result};
use crate::sampling::{FormProfile, Profile, ProfileSpec};

use super::{Field, LInfinityAlgebra};

pub const TOP: u8 = 0b0111;
pub const SO3: [u8; 3] = [0, 1, 2];

#[derive(Clone, Debug, PartialEq)]
pub struct CsElement {
    pub degree: i32,
    pub form: Form,
}

impl CsElement {
    pub fn new(degree: i32, form: Form) -> Result<Self> {
        if !(0..=3).contains(&degree) {
            return Err(Error::Shape(format!("no forms of degree {degree} on a 3-manifold")));
        }
        if form.terms().iter().any(|t| t.mask.count_ones() as i32 != degree || t.mask & !TOP != 0 || t.fiber > 2) {
            return Err(Error::Shape(format!("form is not an so(3)-valued {degree}-form on T³")));
        }
        Ok(CsElement { degree, form })
    }
}

/// `[e_i, e_j] = ε_ijk e_k`.
pub fn cross_table() -> &'static FiberProduct {
    static T: OnceLock<Vec<Vec<(u8, f64)>>> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = vec![Vec::new(); FIBER_SLOTS * FIBER_SLOTS];
        for i in 0..3usize {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            t[j * FIBER_SLOTS + k] = vec![(i as u8, 1.0)];
            t[k * FIBER_SLOTS + j] = vec![(i as u8, -1.0)];
        }
        t
    })
}

/// Pairing table `e_i · e_j = δ_ij` (into the scalar slot 0).
pub fn dot_table() -> &'static FiberProduct {
    static T: OnceLock<Vec<Vec<(u8, f64)>>> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = vec![Vec::new(); FIBER_SLOTS * FIBER_SLOTS];
        for i in 0..3usize {
            t[i * FIBER_SLOTS + i] = vec![(0, 1.0)];
        }
        t
    })
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ChernSimons;

impl ChernSimons {
    /// `∫ ½⟨A, dA⟩ + ⅙⟨A, [A, A]⟩` density, coded directly.
    pub fn classical_density(a: &Form) -> f64 {
        let da = a.d();
        let aa = a.wedge(a, cross_table());
        let t1 = a.wedge(&da, dot_table()).component(TOP, 0).value();
        let t2 = a.wedge(&aa, dot_table()).component(TOP, 0).value();
        0.5 * t1 + t2 / 6.0
    }

    /// The background coupling `⅙⟨A, [B, A]⟩` density.
    pub fn coupling_density(b: &Form, a: &Form) -> f64 {
        let ba = b.wedge(a, cross_table());
        a.wedge(&ba, dot_table()).component(TOP, 0).value() / 6.0
    }

    pub fn random_field(seed: u64, degree: i32, order: usize) -> Field<CsElement> {
        let mut rng = crate::sampling::rng(seed);
        let profile = FormProfile::random(&mut rng, &ProfileSpec::periodic(3), degree as usize, &SO3);
        Field::new(move |x| {
            Ok(CsElement {
                degree,
                form: profile.eval(x, order),
            })
        })
    }

    /// A pure-gauge connection `g⁻¹dg` for `g = R₁(θ₁)R₂(θ₂)R₃(θ₃)` with
    /// periodic angle profiles; flat by construction.
    pub fn pure_gauge(seed: u64, order: usize) -> Field<CsElement> {
        let mut rng = crate::sampling::rng(seed);
        let spec = ProfileSpec::periodic(3);
        let angles: Vec<Profile> = (0..3).map(|_| Profile::random(&mut rng, &spec)).collect();
        Field::new(move |x| {
            let th: Vec<Jet> = angles.iter().map(|p| p.eval(x, order + 1)).collect();
            let g = mat3_mul(&mat3_mul(&rotation(0, &th[0]), &rotation(1, &th[1])), &rotation(2, &th[2]));
            let mut terms = Vec::new();
            for mu in 0..3 {
                let dg: [[Jet; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| g[i][j].partial(mu)));
                let gt: [[Jet; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| g[j][i]));
                let m = mat3_mul(&gt, &dg);
                // M_jk = −ε_ijk a_i
                let a = [m[2][1], m[0][2], m[1][0]];
                for (i, ai) in a.iter().enumerate() {
                    terms.push((1u8 << mu, i as u8, *ai));
                }
            }
            Ok(CsElement {
                degree: 1,
                form: Form::from_terms(terms),
            })
        })
    }
}

fn rotation(axis: usize, theta: &Jet) -> [[Jet; 3]; 3] {
    let (c, s) = (theta.cos(), theta.sin());
    let mut r = [[Jet::zero(); 3]; 3];
    let (j, k) = ((axis + 1) % 3, (axis + 2) % 3);
    r[axis][axis] = Jet::constant(1.0);
    r[j][j] = c;
    r[k][k] = c;
    r[j][k] = -s;
    r[k][j] = s;
    r
}

fn mat3_mul(a: &[[Jet; 3]; 3], b: &[[Jet; 3]; 3]) -> [[Jet; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = Jet::zero();
            for k in 0..3 {
                acc.add_product(1.0, &a[i][k], &b[k][j]);
            }
            acc
        })
    })
}

impl LInfinityAlgebra for ChernSimons {
    type Element = CsElement;

    fn name(&self) -> String {
        "chern-simons".into()
    }

    fn max_arity(&self) -> usize {
        2
    }

    fn degrees(&self) -> Vec<i32> {
        vec![0, 1, 2, 3]
    }

    fn degree(&self, x: &CsElement) -> i32 {
        x.degree
    }

    fn zero(&self, degree: i32) -> CsElement {
        CsElement {
            degree,
            form: Form::zero(),
        }
    }

    fn combine(&self, degree: i32, terms: &[(f64, &CsElement)]) -> CsElement {
        CsElement {
            degree,
            form: Form::combine(terms.iter().map(|(s, x)| (*s, &x.form))),
        }
    }

    fn norm(&self, x: &CsElement) -> f64 {
        x.form.max_abs()
    }

    fn bracket_impl(&self, args: &[&CsElement]) -> Result<CsElement> {
        match args {
            [a] => Ok(CsElement {
                degree: a.degree + 1,
                form: if a.degree >= 3 { Form::zero() } else { a.form.d() },
            }),
            [a, b] => Ok(CsElement {
                degree: a.degree + b.degree,
                form: a.form.wedge(&b.form, cross_table()),
            }),
            _ => unreachable!("arity checked by caller"),
        }
    }

    fn pairing_degree(&self) -> Option<i32> {
        Some(-3)
    }

    fn pairing_density(&self, a: &CsElement, b: &CsElement) -> Result<f64> {
        Ok(a.form.wedge(&b.form, dot_table()).component(TOP, 0).value())
    }
}
