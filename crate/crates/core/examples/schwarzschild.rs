// The Schwarzschild coframe and spin connection as jets: torsion-free, vacuum,
// and invariant under the expected Killing fields.
use linfty::ecp::{curvature, eom_u, torsion};
use linfty::noether::{killing_defect, onshell_defect};
use linfty::schwarzschild::{SchwarzschildParams, Units};

fn main() -> linfty::Result<()> {
    let p = SchwarzschildParams::new(2.0, Units::Natural)?;
    let x = [0.0, 5.0, 1.1, 0.4];
    let (e, w) = p.build_fields(&x, 2)?;
    println!("r_S = {}, M = {}, f(5) = {:.4}", p.r_s, p.mass(), p.f(5.0));
    println!("|T| = {:.1e}", torsion(&e, &w).max_value());
    println!(
        "|U| = {:.1e} (vacuum, Λ = 0)",
        eom_u(&e, &w, 0.0).max_value()
    );
    println!("|F| = {:.3} (curved)", curvature(&w).max_value());

    let points: Vec<[f64; 4]> = (0..12)
        .map(|i| {
            [
                0.1 * i as f64,
                2.5 + i as f64,
                0.3 + 0.2 * i as f64,
                0.5 * i as f64,
            ]
        })
        .collect();
    let fields = |x: &[f64; 4]| p.build_fields(x, 2);
    for xi in [
        p.time_translation(),
        p.rotation(),
        p.tilted_rotation(),
        p.radial_dilation(),
    ] {
        let k = killing_defect(&xi, &fields, &points)?;
        let o = onshell_defect(&xi, &fields, &points)?;
        println!(
            "{:<44} L_ξ g {:.1e}  dQ − ½Tr(e²L_ξω) {:.1e}  J3 − ½Tr(e²L_ξω) {:.1e}",
            xi.label, k.max_defect, o.lemma, o.killing
        );
    }
    Ok(())
}
