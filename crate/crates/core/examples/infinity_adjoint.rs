// The infinity adjoint action of a cyclic L∞-algebra on itself, and the
// semidirect algebra it defines.
use linfty::actions::{compatibility_defect, SelfAction, Semidirect, Slot};
use linfty::algebra::chern_simons::ChernSimons;
use linfty::algebra::{jacobi_defect, master_defect};
use linfty::calculus::PointSet;
use linfty::ecp::Ecp;
use linfty::sampling::ProfileSpec;

fn main() -> linfty::Result<()> {
    let x = [0.1, 0.5, -0.7, 1.2];
    let sd = Semidirect(SelfAction::infinity_adjoint(Ecp::new(0.7)));
    let el = |seed, d| Ecp::random_field(seed, d, ProfileSpec::local(4), 2).at(&x);
    let p = sd.pair(el(1, 1)?, el(2, 1)?)?;
    let q = sd.pair(el(3, 0)?, el(4, 0)?)?;
    println!(
        "semidirect Jacobi (q,p,p):   {:.1e}",
        jacobi_defect(&sd, &[&q, &p, &p])?.relative()
    );
    println!(
        "semidirect Jacobi (p,p,p,p): {:.1e}",
        jacobi_defect(&sd, &[&p, &p, &p, &p])?.relative()
    );
    println!(
        "equivariant master identity: {:.1e}",
        master_defect(&sd, &p)?.relative()
    );

    // the plain adjoint ignores ℓ3 and is not an action on ECP
    let adj = Semidirect(SelfAction::adjoint(Ecp::new(0.7)));
    let p = adj.pair(el(1, 1)?, el(2, 1)?)?;
    println!(
        "adjoint instead, master identity: {:.1e}",
        master_defect(&adj, &p)?.relative()
    );

    // compatibility with the target pairing: ∫⟨ℓ(X, m), m'⟩ is graded antisymmetric
    let act = SelfAction::infinity_adjoint(ChernSimons);
    let torus = PointSet::torus(3, 6);
    let (xf, m1, m2) = (
        ChernSimons::random_field(5, 1, 1),
        ChernSimons::random_field(6, 1, 1),
        ChernSimons::random_field(7, 1, 1),
    );
    let args = [Slot::Actor(&xf), Slot::Target(&m1), Slot::Target(&m2)];
    let d = compatibility_defect(&act, &args, 1, &torus)?;
    println!(
        "Chern–Simons compatibility: {:.1e} of {:.3}",
        d.absolute, d.scale
    );
    Ok(())
}
