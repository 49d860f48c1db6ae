// so(1,3) as a finite-dimensional Lie algebra, and the bivector picture Φ.
use linfty::algebra::structure::StructureAlgebra;
use linfty::algebra::{bracket, jacobi_defect, Tolerance};
use linfty::minkowski::{commutator, is_so13, phi, phi_inv, so_bracket, Matrix4, ETA};

fn generator(a: usize, b: usize) -> Matrix4 {
    // A^a_b = η_bb, A^b_a = −η_aa
    let mut m = [[0.0; 4]; 4];
    m[a][b] = ETA[b];
    m[b][a] = -ETA[a];
    m
}

fn main() -> linfty::Result<()> {
    let so = StructureAlgebra::so13();
    let tol = Tolerance::default();
    let mut worst = 0.0f64;
    for i in 0..6 {
        for j in 0..6 {
            for k in 0..6 {
                let d = jacobi_defect(&so, &[&so.basis(i), &so.basis(j), &so.basis(k)])?;
                assert!(d.passes(&tol));
                worst = worst.max(d.absolute);
            }
        }
    }
    println!("so(1,3): Jacobi on all 216 basis triples, worst {worst:.1e}");
    println!(
        "[L01, L12] = {:?}",
        bracket(&so, &[&so.basis(0), &so.basis(3)])?.coeffs
    );

    // Φ intertwines the matrix commutator with the bivector bracket
    let (boost, rot) = (generator(0, 1), generator(1, 2));
    assert!(is_so13(&boost, 1e-12) && is_so13(&rot, 1e-12));
    let lhs = phi(&commutator(&boost, &rot));
    let rhs = so_bracket(&phi(&boost), &phi(&rot))?;
    println!("|Φ[A,B] − [ΦA,ΦB]| = {:.1e}", (lhs - rhs).max_abs());
    let back = phi_inv(&phi(&boost))?;
    println!("Φ⁻¹Φ(boost) == boost: {}", back == boost);
    Ok(())
}
