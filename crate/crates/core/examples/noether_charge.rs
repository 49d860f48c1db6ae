// Noether charges of Schwarzschild on spheres {t = 0, r = r0}.
use linfty::calculus::SphereQuadrature;
use linfty::schwarzschild::{charge_at, SchwarzschildParams, Units};

fn main() -> linfty::Result<()> {
    let p = SchwarzschildParams::new(1.0, Units::Natural)?;
    let quad = SphereQuadrature::default();
    let xi = p.time_translation();
    println!("{:>8} {:>14} {:>14}", "r0", "∫Q[∂_t]", "on-shell dQ");
    for r0 in [1.001, 1.5, 3.0, 10.0, 100.0] {
        let q = charge_at(&p, &xi, r0, &quad)?;
        println!(
            "{r0:>8} {:>14.10} {:>14.1e}",
            q.component_value, q.on_shell_defect
        );
    }
    println!("2π r_S = {:.10}", 2.0 * std::f64::consts::PI * p.r_s);

    // the angular Killing field carries no charge on these spheres
    let q = charge_at(&p, &p.rotation(), 3.0, &quad)?;
    println!("∫Q[∂_φ] = {:.1e}", q.component_value);
    Ok(())
}
