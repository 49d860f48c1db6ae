// Finite-dimensional L∞-algebras from structure-constant files.
use linfty::algebra::structure::StructureAlgebra;
use linfty::algebra::{bracket, jacobi_defect, LInfinityAlgebra};

const STRING_LIE2: &str = "\
# so3 ⊕ R[1] with the cocycle ℓ3(e_i, e_j, e_k) = ε_ijk b
slot 0 3
slot -1 1
l2 0 1 2 1.0
l2 1 2 0 1.0
l2 0 2 1 -1.0
l3 0 1 2 3 1.0
";

fn main() -> linfty::Result<()> {
    let alg = StructureAlgebra::parse(STRING_LIE2, "<string>")?;
    println!(
        "dim {}, degrees {:?}",
        alg.dim(),
        (0..alg.dim())
            .map(|i| alg.basis_degree(i))
            .collect::<Vec<_>>()
    );
    let e: Vec<_> = (0..3).map(|i| alg.basis(i)).collect();
    println!(
        "ℓ3(e0, e1, e2) = {:?}",
        bracket(&alg, &[&e[0], &e[1], &e[2]])?.coeffs
    );
    let x = alg.element(0, vec![0.3, -1.0, 2.0, 0.0])?;
    let d = jacobi_defect(&alg, &[&x, &e[1], &e[2], &e[0]])?;
    println!("Jacobi n=4: {:.1e}", d.relative());
    println!("serialized:\n{}", alg.to_text());

    // errors carry file positions
    let bad = "slot 0 2\nl2 0 1 7 1.0\n";
    match StructureAlgebra::parse(bad, "bad.lalg") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }

    // the coadjoint extension is cyclic
    let so3 = |i: usize, j: usize, k: usize| -> f64 {
        let eps = [
            [[0., 0., 0.], [0., 0., 1.], [0., -1., 0.]],
            [[0., 0., -1.], [0., 0., 0.], [1., 0., 0.]],
            [[0., 1., 0.], [-1., 0., 0.], [0., 0., 0.]],
        ];
        eps[i][j][k]
    };
    let cyc = StructureAlgebra::with_coadjoint("so3*", 3, so3);
    println!("{}: pairing degree {:?}", cyc.name(), cyc.pairing_degree());
    Ok(())
}
