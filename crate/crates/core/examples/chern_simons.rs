// Chern–Simons theory as a cyclic dgla of so(3)-valued forms on R³.
use linfty::algebra::chern_simons::ChernSimons;
use linfty::algebra::{
    action_value, invariance_defect, jacobi_defect, mc_defect, LInfinityAlgebra,
};
use linfty::calculus::PointSet;

fn main() -> linfty::Result<()> {
    let cs = ChernSimons;
    let x = [0.4, -1.1, 2.0, 0.0];
    let a = ChernSimons::random_field(1, 1, 2).at(&x)?;
    let b = ChernSimons::random_field(2, 0, 2).at(&x)?;
    let c = ChernSimons::random_field(3, 1, 2).at(&x)?;
    for args in [vec![&a, &b], vec![&a, &b, &c], vec![&b, &a, &c, &a]] {
        let d = jacobi_defect(&cs, &args)?;
        println!(
            "Jacobi n={}: relative defect {:.1e}",
            args.len(),
            d.relative()
        );
    }

    // a flat connection solves Maurer–Cartan; a random one does not
    let flat = ChernSimons::pure_gauge(4, 1).at(&x)?;
    println!("|F(g⁻¹dg)| = {:.1e}", cs.norm(&mc_defect(&cs, &flat)?));
    println!("|F(A)|     = {:.1e}", cs.norm(&mc_defect(&cs, &a)?));

    // cyclic invariance holds after integrating over the 3-torus
    let torus = PointSet::torus(3, 6);
    let f: Vec<_> = (10..13)
        .map(|s| ChernSimons::random_field(s, 1, 1))
        .collect();
    let d = invariance_defect(&cs, &[&f[0], &f[1], &f[2]], 0, &torus)?;
    println!(
        "∫⟨ℓ2(A,B),C⟩ antisymmetry: {:.1e} of {:.2}",
        d.absolute, d.scale
    );
    println!("S_CS[A] = {:.6}", action_value(&cs, &f[0], &torus)?);
    Ok(())
}
