// Coupling ECP gravity to a vector-field background A = β ⊗ ξ. The β-derivative
// of the coupling is the current J3; on a Killing background it reduces to
// ½ Tr(e²∧L_ξω), which is exact.
use linfty::actions::{
    equivariant_action_value, EcpMinimalCoupling, MixedFunctional, SelfAction, VectorBackground,
};
use linfty::calculus::{Form, Jet, PointSet, VectorField};
use linfty::ecp::{wedge, Ecp};
use linfty::minkowski::VOLUME;
use linfty::noether::minimal_coupling_current;
use linfty::sampling::{rng, FormProfile, ProfileSpec, VectorProfile};

fn main() -> linfty::Result<()> {
    let x = [0.3, 1.0, -0.4, 0.2];
    let spec = ProfileSpec::local(4);
    let mut r = rng(3);
    let beta = FormProfile::random(&mut r, &spec, 1, &[0]).eval(&x, 2);
    let xi = VectorProfile::random(&mut r, &spec).eval(&x, 2);
    let f = Ecp::random_field(5, 1, spec, 2).at(&x)?;

    // the coupling density is linear in β, and equals Tr(β ∧ J3)
    let cpl = EcpMinimalCoupling;
    let bg = |s: f64| VectorBackground {
        beta: beta.scale(s),
        xi: xi,
    };
    let (one, two) = (cpl.density(&bg(1.0), &f)?, cpl.density(&bg(2.0), &f)?);
    let j3 = minimal_coupling_current(&xi, &f.first, &f.second);
    let via_current = wedge(&beta, &j3).component(VOLUME, 0).value();
    println!("density {one:.6}, doubled β {two:.6}, β∧J3 {via_current:.6}");

    // over a torus: S_tot(0, m) is the plain action, exactly
    let torus = PointSet::torus(4, 5);
    let m = Ecp::random_field(7, 1, ProfileSpec::periodic(4), 1);
    let act = SelfAction::infinity_adjoint(Ecp::new(0.0));
    let background = linfty::algebra::Field::new(|x: &[f64; 4]| {
        let t = Jet::variable(0, x[0], 1);
        Ok(VectorBackground {
            beta: Form::from_terms([(0b0001, 0, t.cos())]),
            xi: VectorField::coordinate(3, 1.0),
        })
    });
    let free = equivariant_action_value(&act, &cpl, None, &m, &torus)?;
    let coupled = equivariant_action_value(&act, &cpl, Some(&background), &m, &torus)?;
    println!("S(m) = {free:.6}, S(m) + S_L(cos t dt ⊗ ∂_3, m) = {coupled:.6}");
    Ok(())
}
