// Entropy from the horizon charge, S = Q / (4κ) in natural units, for both
// surface-gravity normalizations and in SI units.
use linfty::calculus::SphereQuadrature;
use linfty::schwarzschild::{wald_entropy, KappaConvention, SchwarzschildParams, Units};

fn main() -> linfty::Result<()> {
    let quad = SphereQuadrature::default();
    for r_s in [1.0, 2.0, 10.0] {
        let p = SchwarzschildParams::new(r_s, Units::Natural)?;
        let s = wald_entropy(&p, KappaConvention::Standard, &quad)?;
        println!(
            "r_S = {r_s:>4}: Q → {:.6}, S = {:.6}, A = {:.6}, S/A = {:.6} (κ = 1/r_S: {:.6})",
            s.charge_limit, s.entropy, s.area, s.ratio, s.alternate_ratio
        );
    }

    // one solar mass: r_S ≈ 2953 m
    let sun = SchwarzschildParams::new(2953.25, Units::Si)?;
    let s = wald_entropy(&sun, KappaConvention::Standard, &quad)?;
    println!(
        "solar-mass hole: S = {:.3e} J/K, S/A / (k_B c³/4Għ) = {:.12}",
        s.entropy,
        s.ratio / s.bekenstein_hawking_ratio
    );
    Ok(())
}
