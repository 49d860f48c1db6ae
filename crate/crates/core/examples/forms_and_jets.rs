// Differential forms with truncated-Taylor (jet) coefficients and values in
// the exterior algebra of Minkowski space.
use linfty::calculus::quadrature::gauss_legendre;
use linfty::calculus::{Form, Jet, VectorField};
use linfty::ecp::{hodge, wedge};
use linfty::minkowski::{Multivector, VOLUME};

fn main() -> linfty::Result<()> {
    let x0 = [0.2, 0.7, -0.1, 1.3];
    let order = 3;
    let v: Vec<Jet> = (0..4).map(|mu| Jet::variable(mu, x0[mu], order)).collect();

    // a = sin(x1) x2 dx0 ⊗ u1 + exp(x3) dx2 ⊗ u0∧u3
    let a = Form::from_terms([
        (0b0001, 0b0010, v[1].sin() * v[2]),
        (0b0100, 0b1001, v[3].exp()),
    ]);
    println!("a    = {a}");
    println!("da   = {}", a.d());
    println!("|dda| = {:.1e}", a.d().d().max_abs());

    // L_ξ commutes with d, up to the derivatives the jets still carry
    let xi = VectorField::new([
        v[1],
        Jet::constant(1.0),
        v[0] * v[3],
        Jet::zero(),
    ]);
    let comm = a.d().lie(&xi).sub(&a.lie(&xi).d());
    println!("|[L_ξ, d]a| = {:.1e}", comm.max_value());

    // fiber operations: u0∧u1∧u2∧u3 and ⋆ on the fiber
    let e = Form::from_terms((0..4).map(|a| (1u8 << a, 1u8 << a, Jet::constant(1.0))));
    let vol = wedge(&wedge(&e, &e), &wedge(&e, &e));
    println!(
        "e⁴ = {:.0} dx⁰¹²³ ⊗ u⁰¹²³",
        vol.component(VOLUME, VOLUME).value()
    );
    let star = hodge(&Form::scalar(0b1110, Jet::constant(1.0)));
    println!("⋆(u1∧u2∧u3) = {star}");
    println!(
        "⋆⋆ on bivectors: {:?}",
        linfty::minkowski::hodge(&linfty::minkowski::hodge(&Multivector::blade(0b0011)))[0b0011]
    );

    let (nodes, weights) = gauss_legendre(4);
    let q: f64 = nodes.iter().zip(&weights).map(|(x, w)| w * x.powi(6)).sum();
    println!(
        "4-node Gauss–Legendre ∫x⁶ = {q:.15} (exact 2/7 = {:.15})",
        2.0 / 7.0
    );
    Ok(())
}
