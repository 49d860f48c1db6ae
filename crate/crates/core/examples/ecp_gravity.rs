// Einstein–Cartan–Palatini gravity: Jacobi identities pointwise on jets,
// cyclic invariance integrated over a 4-torus.
use linfty::algebra::{action_value, invariance_defect, jacobi_defect};
use linfty::calculus::PointSet;
use linfty::ecp::{action_density, Ecp};
use linfty::sampling::ProfileSpec;

fn main() -> linfty::Result<()> {
    let ecp = Ecp::new(0.7);
    let x = [0.2, 0.9, -0.3, 1.4];
    let el = |seed, degree| Ecp::random_field(seed, degree, ProfileSpec::local(4), 2).at(&x);
    let (g, f1, f2, af) = (el(1, 0)?, el(2, 1)?, el(3, 1)?, el(4, 2)?);
    let tuples: [(&str, Vec<_>); 4] = [
        ("(e,ω)(e,ω)", vec![&f1, &f2]),
        ("(ξ,ρ)(e,ω)(e,ω)", vec![&g, &f1, &f2]),
        ("(e,ω)⁴", vec![&f1, &f2, &f1, &f2]),
        ("(E,Ω)(e,ω)(ξ,ρ)", vec![&af, &f1, &g]),
    ];
    for (name, args) in tuples {
        let d = jacobi_defect(&ecp, &args)?;
        println!("Jacobi {name:<18} {:.1e}", d.relative());
    }

    let torus = PointSet::torus(4, 5);
    let per = |seed, degree| Ecp::random_field(seed, degree, ProfileSpec::periodic(4), 1);
    let (a, b, c) = (per(5, 1), per(6, 1), per(7, 1));
    let d = invariance_defect(&ecp, &[&a, &b, &c], 0, &torus)?;
    println!(
        "∫⟨ℓ2(a,b),c⟩ + ∫⟨ℓ2(b,a),c⟩ = {:.1e} (terms up to {:.1})",
        d.absolute, d.scale
    );

    // the L∞ action is minus the classical one
    let s = action_value(&ecp, &a, &torus)?;
    let classical = torus.try_integrate(|x| {
        let f = a.at(x)?;
        Ok(action_density(&f.first, &f.second, 0.7).value())
    })?;
    println!("S_L∞ = {s:.6}, S_classical = {classical:.6}");
    Ok(())
}
