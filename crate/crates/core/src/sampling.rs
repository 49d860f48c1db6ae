//! Seeded random fields whose jets are exact: trigonometric polynomials
//! with wave vectors in {−1, 0, 1}^dims, optionally plus a quadratic
//! polynomial. On a torus grid with five points per direction, products of
//! up to four such fields integrate exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::form::{Form, VectorField};
use crate::calculus::jet::{Jet, DIM};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProfileSpec {
    /// Coordinates the field depends on (the first `dims` chart coordinates).
    pub dims: usize,
    pub waves: usize,
    /// Adds a quadratic polynomial; breaks periodicity.
    pub quadratic: bool,
}

impl ProfileSpec {
    pub fn periodic(dims: usize) -> Self {
        ProfileSpec {
            dims,
            waves: 2,
            quadratic: false,
        }
    }

    pub fn local(dims: usize) -> Self {
        ProfileSpec {
            dims,
            waves: 2,
            quadratic: true,
        }
    }
}

/// A scalar coefficient function.
#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    constant: f64,
    waves: Vec<([i8; DIM], f64, f64)>,
    linear: [f64; DIM],
    quadratic: [[f64; DIM]; DIM],
}

impl Profile {
    pub fn random(rng: &mut impl Rng, spec: &ProfileSpec) -> Self {
        let mut u = || rng.gen_range(-1.0f64..=1.0);
        let constant = u();
        let mut waves = Vec::with_capacity(spec.waves);
        for _ in 0..spec.waves {
            let mut k = [0i8; DIM];
            for slot in k.iter_mut().take(spec.dims) {
                *slot = (u() * 1.5).round().clamp(-1.0, 1.0) as i8;
            }
            waves.push((k, u(), u()));
        }
        let mut linear = [0.0; DIM];
        let mut quadratic = [[0.0; DIM]; DIM];
        if spec.quadratic {
            for m in 0..spec.dims {
                linear[m] = u();
                for n in m..spec.dims {
                    quadratic[m][n] = 0.5 * u();
                }
            }
        }
        Profile {
            constant,
            waves,
            linear,
            quadratic,
        }
    }

    pub fn eval(&self, x: &[f64; DIM], order: usize) -> Jet {
        let vars: [Jet; DIM] = std::array::from_fn(|m| Jet::variable(m, x[m], order));
        let mut out = Jet::constant(self.constant);
        for (k, a, b) in &self.waves {
            let mut phase = Jet::constant(0.0);
            for m in 0..DIM {
                if k[m] != 0 {
                    phase.axpy(k[m] as f64, &vars[m]);
                }
            }
            let phase = phase.truncate(order);
            out.axpy(*a, &phase.cos());
            out.axpy(*b, &phase.sin());
        }
        for m in 0..DIM {
            if self.linear[m] != 0.0 {
                out.axpy(self.linear[m], &vars[m]);
            }
            for n in m..DIM {
                if self.quadratic[m][n] != 0.0 {
                    out.add_product(self.quadratic[m][n], &vars[m], &vars[n]);
                }
            }
        }
        out.truncate(order)
    }
}

/// A random form of fixed degree with chosen fiber components.
#[derive(Clone, Debug, PartialEq)]
pub struct FormProfile {
    terms: Vec<(u8, u8, Profile)>,
}

impl FormProfile {
    pub fn random(rng: &mut impl Rng, spec: &ProfileSpec, degree: usize, fibers: &[u8]) -> Self {
        let full = ((1u16 << spec.dims) - 1) as u8;
        let mut terms = Vec::new();
        for mask in 0u8..16 {
            if mask.count_ones() as usize != degree || mask & !full != 0 {
                continue;
            }
            for &f in fibers {
                terms.push((mask, f, Profile::random(rng, spec)));
            }
        }
        FormProfile { terms }
    }

    pub fn zero() -> Self {
        FormProfile { terms: Vec::new() }
    }

    pub fn eval(&self, x: &[f64; DIM], order: usize) -> Form {
        Form::from_terms(self.terms.iter().map(|(m, f, p)| (*m, *f, p.eval(x, order))))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VectorProfile {
    components: Vec<Option<Profile>>,
}

impl VectorProfile {
    pub fn random(rng: &mut impl Rng, spec: &ProfileSpec) -> Self {
        VectorProfile {
            components: (0..DIM)
                .map(|m| (m < spec.dims).then(|| Profile::random(rng, spec)))
                .collect(),
        }
    }

    pub fn zero() -> Self {
        VectorProfile {
            components: vec![None; DIM],
        }
    }

    pub fn eval(&self, x: &[f64; DIM], order: usize) -> VectorField {
        VectorField::new(std::array::from_fn(|m| match &self.components[m] {
            Some(p) => p.eval(x, order),
            None => Jet::zero(),
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_profiles_are_reproducible() {
        let spec = ProfileSpec::local(4);
        let a = Profile::random(&mut rng(7), &spec);
        let b = Profile::random(&mut rng(7), &spec);
        assert_eq!(a, b);
        let x = [0.1, 0.2, 0.3, 0.4];
        assert_eq!(a.eval(&x, 2), b.eval(&x, 2));
    }

    #[test]
    fn profile_jets_match_finite_differences() {
        let spec = ProfileSpec::local(4);
        let p = Profile::random(&mut rng(3), &spec);
        let x = [0.3, -0.2, 0.9, 1.4];
        let j = p.eval(&x, 2);
        let h = 1e-5;
        for m in 0..4 {
            let mut xp = x;
            let mut xm = x;
            xp[m] += h;
            xm[m] -= h;
            let fd = (p.eval(&xp, 0).value() - p.eval(&xm, 0).value()) / (2.0 * h);
            assert!((fd - j.grad()[m]).abs() < 1e-8);
        }
    }

    #[test]
    fn periodic_profiles_are_periodic() {
        let spec = ProfileSpec::periodic(3);
        let p = Profile::random(&mut rng(11), &spec);
        let x = [0.5, 1.0, -0.3, 0.0];
        let y = [0.5 + 2.0 * std::f64::consts::PI, 1.0, -0.3, 0.0];
        assert!((p.eval(&x, 0).value() - p.eval(&y, 0).value()).abs() < 1e-12);
    }
}
