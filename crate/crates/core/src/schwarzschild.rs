//! Schwarzschild data in the static diagonal tetrad, chart `(t, r, θ, φ)`,
//! and the horizon entropy built from the Noether charge.
//!
//! ```text
//! e⁰ = c f dt   e¹ = dr / f   e² = r dθ   e³ = r sinθ dφ        f² = 1 − r_S/r
//! ω⁰¹ = f′ e⁰   ω¹² = −(f/r) e²   ω¹³ = −(f/r) e³   ω²³ = −(cotθ/r) e³
//! ```

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::calculus::{Form, Jet, SphereQuadrature, VectorField};
use crate::error::{Error, Result};
use crate::minkowski::{phi, ETA};
use crate::noether::{charge, ChargeReport, Generator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Units {
    /// `G = c = ħ = k_B = 1`.
    #[default]
    Natural,
    /// CODATA SI values.
    Si,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub g: f64,
    pub c: f64,
    pub hbar: f64,
    pub k_b: f64,
}

impl Units {
    pub fn constants(self) -> Constants {
        match self {
            Units::Natural => Constants {
                g: 1.0,
                c: 1.0,
                hbar: 1.0,
                k_b: 1.0,
            },
            Units::Si => Constants {
                g: 6.674_30e-11,
                c: 299_792_458.0,
                hbar: 1.054_571_817e-34,
                k_b: 1.380_649e-23,
            },
        }
    }
}

/// Normalization of the surface gravity in the entropy prefactor, for the
/// Killing field `(1/c)∂_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum KappaConvention {
    /// `κ = 1/(2 r_S)`: `ξ^ν∇_νξ^μ = κξ^μ` on the horizon.
    #[default]
    Standard,
    /// `κ = 1/r_S`.
    InverseRadius,
}

impl KappaConvention {
    pub fn kappa(self, r_s: f64) -> f64 {
        match self {
            KappaConvention::Standard => 0.5 / r_s,
            KappaConvention::InverseRadius => 1.0 / r_s,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SchwarzschildParams {
    pub r_s: f64,
    pub units: Units,
}

impl SchwarzschildParams {
    pub fn new(r_s: f64, units: Units) -> Result<Self> {
        if !(r_s > 0.0 && r_s.is_finite()) {
            return Err(Error::Domain(format!("Schwarzschild radius must be positive, got {r_s}")));
        }
        Ok(SchwarzschildParams { r_s, units })
    }

    pub fn constants(&self) -> Constants {
        self.units.constants()
    }

    /// `m = r_S c² / (2G)`.
    pub fn mass(&self) -> f64 {
        let k = self.constants();
        self.r_s * k.c * k.c / (2.0 * k.g)
    }

    pub fn f(&self, r: f64) -> f64 {
        (1.0 - self.r_s / r).max(0.0).sqrt()
    }

    /// `f f′ = G m / (c² r²) = r_S / (2 r²)`, finite on the horizon.
    pub fn f_df(&self, r: f64) -> f64 {
        0.5 * self.r_s / (r * r)
    }

    /// Chart point `(t, r, θ, φ)`, validated against the exterior region.
    fn check(&self, x: &[f64; 4]) -> Result<()> {
        if !(x[1] > self.r_s) {
            return Err(Error::Domain(format!("r = {} is not outside the horizon r_S = {}", x[1], self.r_s)));
        }
        if !(x[2] > 0.0 && x[2] < PI) {
            return Err(Error::Domain(format!("θ = {} outside (0, π)", x[2])));
        }
        Ok(())
    }

    /// `(e, ω)` as jets at `x`.
    pub fn build_fields(&self, x: &[f64; 4], order: usize) -> Result<(Form, Form)> {
        self.check(x)?;
        let c = self.constants().c;
        let r = Jet::variable(1, x[1], order);
        let th = Jet::variable(2, x[2], order);
        let f = (Jet::constant(1.0) - r.clone().recip()? * self.r_s).sqrt()?;
        let df = (r * r * f).recip()? * (0.5 * self.r_s);
        let (sin, cos) = (th.sin(), th.cos());
        let e = Form::from_terms([
            (0b0001, 0b0001, f * c),
            (0b0010, 0b0010, f.recip()?),
            (0b0100, 0b0100, r),
            (0b1000, 0b1000, r * sin),
        ]);
        // ω^{ab} as coordinate 1-forms, a < b
        let table: [(usize, usize, u8, Jet); 4] = [
            (0, 1, 0b0001, f * df * c),
            (1, 2, 0b0100, -f),
            (1, 3, 0b1000, -(f * sin)),
            (2, 3, 0b1000, -cos),
        ];
        let mut terms = Vec::new();
        for (a, b, mask, coef) in table {
            // ω^a_b = ω^{ab} η_bb, ω^b_a = ω^{ba} η_aa
            let mut m = [[0.0; 4]; 4];
            m[a][b] = ETA[b];
            m[b][a] = -ETA[a];
            let mv = phi(&m);
            for (blade, k) in mv.0.iter().enumerate() {
                if *k != 0.0 {
                    terms.push((mask, blade as u8, coef * *k));
                }
            }
        }
        Ok((e, Form::from_terms(terms)))
    }

    /// Killing field `(1/c)∂_t`.
    pub fn time_translation(&self) -> Generator {
        let mut g = Generator::coordinate(0, 1.0 / self.constants().c);
        g.label = "(1/c)d_t".into();
        g
    }

    /// Killing field `∂_φ`.
    pub fn rotation(&self) -> Generator {
        let mut g = Generator::coordinate(3, 1.0);
        g.label = "d_phi".into();
        g
    }

    /// Killing field `−sinφ ∂_θ − cotθ cosφ ∂_φ`, a rotation that does not
    /// preserve the tetrad.
    pub fn tilted_rotation(&self) -> Generator {
        Generator::new("-sin(phi)*d_theta-cot(theta)*cos(phi)*d_phi", |x, order| {
            let th = Jet::variable(2, x[2], order);
            let ph = Jet::variable(3, x[3], order);
            let cot = th.cos() * th.sin().recip().expect("θ in (0, π)");
            VectorField::new([Jet::zero(), Jet::zero(), -ph.sin(), -(cot * ph.cos())])
        })
    }

    /// `r ∂_r`, not Killing.
    pub fn radial_dilation(&self) -> Generator {
        let mut g = Generator::dilation(1);
        g.label = "r*d_r".into();
        g
    }

    pub fn horizon_area(&self) -> f64 {
        4.0 * PI * self.r_s * self.r_s
    }

    /// `k_B c³ / (4 G ħ)`.
    pub fn bekenstein_hawking_ratio(&self) -> f64 {
        let k = self.constants();
        k.k_b * k.c.powi(3) / (4.0 * k.g * k.hbar)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub r_s: f64,
    pub units: Units,
    pub kappa_convention: KappaConvention,
    pub kappa: f64,
    /// Charge on `{t = 0, r = r₀}` at each `r₀` of the ladder, in the
    /// component normalization (positive for the future-directed `ξ`).
    pub ladder: Vec<(f64, f64)>,
    /// Richardson extrapolation of the ladder to `r₀ = r_S`.
    pub charge_limit: f64,
    pub area: f64,
    pub entropy: f64,
    pub ratio: f64,
    /// Entropy and ratio under the other κ convention.
    pub alternate_entropy: f64,
    pub alternate_ratio: f64,
    pub bekenstein_hawking_ratio: f64,
    /// `k_B c³/(4πG)`, the ħ-free constant sometimes quoted for this ratio.
    pub no_hbar_ratio: f64,
}

/// `S = 2π c³ k_B Q / (8π G κ ħ)`.
pub fn entropy_from_charge(p: &SchwarzschildParams, q: f64, kappa: f64) -> f64 {
    let k = p.constants();
    2.0 * PI * k.c.powi(3) * k.k_b * q / (8.0 * PI * k.g * kappa * k.hbar)
}

/// Radii `(1 + 10^{−k}) r_S`, `k = 2..=5`.
pub fn horizon_ladder(r_s: f64) -> Vec<f64> {
    (2..=5).map(|k| r_s * (1.0 + 10f64.powi(-k))).collect()
}

pub fn wald_entropy(p: &SchwarzschildParams, convention: KappaConvention, quad: &SphereQuadrature) -> Result<EntropyReport> {
    let xi = p.time_translation();
    let ladder: Vec<(f64, f64)> = horizon_ladder(p.r_s)
        .into_iter()
        .map(|r0| Ok((r0, charge_at(p, &xi, r0, quad)?.component_value)))
        .collect::<Result<_>>()?;
    let charge_limit = richardson(&ladder, p.r_s);
    let kappa = convention.kappa(p.r_s);
    let other = match convention {
        KappaConvention::Standard => KappaConvention::InverseRadius,
        KappaConvention::InverseRadius => KappaConvention::Standard,
    };
    let area = p.horizon_area();
    let entropy = entropy_from_charge(p, charge_limit, kappa);
    let alternate_entropy = entropy_from_charge(p, charge_limit, other.kappa(p.r_s));
    let k = p.constants();
    Ok(EntropyReport {
        r_s: p.r_s,
        units: p.units,
        kappa_convention: convention,
        kappa,
        ladder,
        charge_limit,
        area,
        entropy,
        ratio: entropy / area,
        alternate_entropy,
        alternate_ratio: alternate_entropy / area,
        bekenstein_hawking_ratio: p.bekenstein_hawking_ratio(),
        no_hbar_ratio: k.k_b * k.c.powi(3) / (4.0 * PI * k.g),
    })
}

/// Charge on the sphere `{t = 0, r = r₀}`.
pub fn charge_at(p: &SchwarzschildParams, xi: &Generator, r0: f64, quad: &SphereQuadrature) -> Result<ChargeReport> {
    let fields = |x: &[f64; 4]| p.build_fields(x, 2);
    charge(xi, &fields, 0.0, r0, quad)
}

/// Linear extrapolation of `(r₀, Q)` samples to `r₀ = target` from the two
/// closest samples.
fn richardson(ladder: &[(f64, f64)], target: f64) -> f64 {
    let mut pts = ladder.to_vec();
    pts.sort_by(|a, b| (a.0 - target).abs().total_cmp(&(b.0 - target).abs()));
    match pts.as_slice() {
        [] => f64::NAN,
        [(_, q)] => *q,
        [(r1, q1), (r2, q2), ..] => q1 + (q2 - q1) * (target - r1) / (r2 - r1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ecp::{eom_u, torsion};

    #[test]
    fn f_examples() {
        let p = SchwarzschildParams::new(2.0, Units::Natural).unwrap();
        assert_eq!(p.f(2.0), 0.0);
        assert!((p.f(2.0e6) - 1.0).abs() < 1e-6);
        // f f′ from the jet of f
        let (e, _) = p.build_fields(&[0.0, 3.0, 1.0, 0.0], 2).unwrap();
        let f = e.component(0b0001, 0b0001);
        assert!((f.value() * f.grad()[1] - p.f_df(3.0)).abs() < 1e-15);
        assert_eq!(p.f_df(p.r_s), 1.0 / (2.0 * p.r_s));
    }

    #[test]
    fn domain_errors() {
        let p = SchwarzschildParams::new(1.0, Units::Natural).unwrap();
        assert!(matches!(p.build_fields(&[0.0, 1.0, 1.0, 0.0], 2), Err(Error::Domain(_))));
        assert!(matches!(p.build_fields(&[0.0, 2.0, 0.0, 0.0], 2), Err(Error::Domain(_))));
        assert!(SchwarzschildParams::new(-1.0, Units::Natural).is_err());
    }

    #[test]
    fn vacuum_and_torsion_free() {
        for units in [Units::Natural, Units::Si] {
            let p = SchwarzschildParams::new(3.0, units).unwrap();
            for (r, th) in [(3.5, 0.4), (7.0, 1.3), (40.0, 2.9)] {
                let (e, w) = p.build_fields(&[0.1, r, th, 0.7], 2).unwrap();
                let scale = e.max_value().max(w.max_value());
                assert!(torsion(&e, &w).max_value() < 1e-14 * scale, "{units:?} r={r}");
                assert!(eom_u(&e, &w, 0.0).max_value() < 1e-13 * scale.powi(2), "{units:?} r={r}");
            }
        }
    }

    #[test]
    fn ladder_approaches_the_horizon() {
        let l = horizon_ladder(2.0);
        assert_eq!(l.len(), 4);
        assert!(l.windows(2).all(|w| w[1] < w[0] && w[1] > 2.0));
        assert_eq!(richardson(&[(3.0, 5.0), (2.0, 4.0)], 1.0), 3.0);
    }

    fn sample_points(p: &SchwarzschildParams) -> Vec<[f64; 4]> {
        (0..12)
            .map(|i| {
                let u = i as f64 / 11.0;
                [0.3 * u, p.r_s * (1.05 + 18.95 * u * u), 0.2 + 2.7 * u, 6.0 * u]
            })
            .collect()
    }

    #[test]
    fn killing_fields() {
        use crate::noether::killing_defect;
        let p = SchwarzschildParams::new(2.0, Units::Natural).unwrap();
        let fields = |x: &[f64; 4]| p.build_fields(x, 2);
        let pts = sample_points(&p);
        for g in [p.time_translation(), p.rotation(), p.tilted_rotation()] {
            assert!(killing_defect(&g, &fields, &pts).unwrap().max_defect < 1e-14, "{}", g.label);
        }
        assert!(killing_defect(&p.radial_dilation(), &fields, &pts).unwrap().max_defect > 0.1);
    }

    #[test]
    fn charge_lemma_needs_an_invariant_tetrad() {
        use crate::noether::onshell_defect;
        let p = SchwarzschildParams::new(2.0, Units::Natural).unwrap();
        let fields = |x: &[f64; 4]| p.build_fields(x, 2);
        let pts = sample_points(&p);
        let r = onshell_defect(&p.tilted_rotation(), &fields, &pts).unwrap();
        // dQ = ½Tr(e²∧L_ξω) on shell, but J₃ differs from it: L_ξe ≠ 0
        assert!(r.scale > 1.0 && r.lemma < 1e-12 * r.scale);
        assert!(r.killing > 0.1 * r.scale);
        let r = onshell_defect(&p.time_translation(), &fields, &pts).unwrap();
        assert!(r.lemma < 1e-14 && r.killing < 1e-14);
    }

    #[test]
    fn charges_on_spheres() {
        let p = SchwarzschildParams::new(2.0, Units::Natural).unwrap();
        let q = SphereQuadrature::default();
        for r0 in [2.5, 4.0, 30.0] {
            let c = charge_at(&p, &p.time_translation(), r0, &q).unwrap();
            let want = 4.0 * PI * r0 * r0 * p.f_df(r0);
            assert!((c.component_value - want).abs() < 1e-12 * want, "r0={r0}");
            assert_eq!(c.value, -c.component_value);
            assert_eq!(charge_at(&p, &p.rotation(), r0, &q).unwrap().value, 0.0);
            assert_eq!(charge_at(&p, &Generator::zero(), r0, &q).unwrap().value, 0.0);
        }
    }

    #[test]
    fn area_law() {
        let q = SphereQuadrature::default();
        let mut ratios = Vec::new();
        for r_s in [1.0, 2.0, 5.0, 10.0] {
            let p = SchwarzschildParams::new(r_s, Units::Natural).unwrap();
            let rep = wald_entropy(&p, KappaConvention::Standard, &q).unwrap();
            assert!((rep.ratio - 0.25).abs() < 1e-12);
            assert!((rep.alternate_ratio - 0.125).abs() < 1e-12);
            assert!((rep.charge_limit - 2.0 * PI * r_s).abs() < 1e-12 * r_s);
            ratios.push(rep.entropy / rep.area);
        }
        assert!(ratios.iter().all(|r| (r - ratios[0]).abs() < 1e-12));
        let p = SchwarzschildParams::new(2.95e3, Units::Si).unwrap();
        let rep = wald_entropy(&p, KappaConvention::Standard, &q).unwrap();
        let want = p.bekenstein_hawking_ratio() * 4.0 * PI * p.r_s * p.r_s;
        assert!((rep.entropy - want).abs() < 1e-10 * want);
        assert!((rep.no_hbar_ratio / rep.bekenstein_hawking_ratio / (p.constants().hbar / PI) - 1.0).abs() < 1e-12);
    }
}
