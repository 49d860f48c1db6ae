// Restricting the infinity adjoint action of ECP to the diffeomorphism
// subalgebra Vect(M) ⊂ M_ECP.
use linfty::actions::{restrict, vector_fields, SelfAction, Semidirect, Subalgebra};
use linfty::algebra::{jacobi_defect, Tolerance};
use linfty::ecp::{Ecp, EcpElement};
use linfty::sampling::ProfileSpec;

fn main() -> linfty::Result<()> {
    let x = [0.3, -0.2, 0.6, 0.9];
    let samples: Vec<EcpElement> = (0..4)
        .map(|s| Ecp::random_field(s, 0, ProfileSpec::local(4), 2).at(&x))
        .collect::<linfty::Result<_>>()?;
    let tol = Tolerance::default();
    let action = restrict(
        SelfAction::infinity_adjoint(Ecp::new(0.0)),
        vector_fields(),
        &samples,
        &tol,
    )?;
    println!("Vect(M) is closed under ℓ2 on {} samples", samples.len());

    let sd = Semidirect(action);
    let el = |s, d| Ecp::random_field(s, d, ProfileSpec::local(4), 2).at(&x);
    let p = sd.pair(el(10, 0)?, el(11, 1)?);
    // pair components must share a degree
    println!("mismatched pair rejected: {}", p.is_err());
    let (g, f) = (
        sd.pair(el(10, 0)?, el(11, 0)?)?,
        sd.pair(el(12, 1)?, el(13, 1)?)?,
    );
    println!(
        "restricted semidirect Jacobi: {:.1e}",
        jacobi_defect(&sd, &[&g, &f, &f])?.relative()
    );

    // two Lorentz generators do not span a subalgebra: [u01, u12] ∝ u02
    let two: Subalgebra<Ecp> = Subalgebra::new("u01+u12", |x: &EcpElement| {
        if x.degree != 0 {
            return x.clone();
        }
        let mut y = EcpElement::zero(0);
        y.second = x.second.filter_fiber(|f| f == 0b0011 || f == 0b0110);
        y
    });
    match restrict(
        SelfAction::infinity_adjoint(Ecp::new(0.0)),
        two,
        &samples,
        &tol,
    ) {
        Ok(_) => println!("span{{u01, u12}} closed"),
        Err(e) => println!("span{{u01, u12}} rejected: {e}"),
    }
    Ok(())
}
