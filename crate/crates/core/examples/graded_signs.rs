// Koszul signs, unshuffles and the cocycle property they rely on.
use linfty::graded::{
    all_permutations, koszul_sign, perm_sign, reorder_sign, shuffles, Permutation, SignConvention,
};

fn main() -> linfty::Result<()> {
    let degrees = [1, 0, -1, 2];
    let swap = Permutation::transposition(4, 0, 2);
    println!(
        "degrees {degrees:?}, swap slots 0 and 2: {:?}",
        swap.apply(&degrees)
    );
    println!("  koszul        {:+}", koszul_sign(&swap, &degrees)?);
    println!(
        "  antisymmetric {:+}",
        reorder_sign(&swap, &degrees, SignConvention::Antisymmetric)?
    );

    // (2, 2)-unshuffles: the index sets of the Jacobi sum
    for sh in shuffles(2, 2) {
        println!(
            "  {:?} | {:?}  sign {:+}",
            sh.first(),
            sh.second(),
            sh.sign(&degrees, SignConvention::Antisymmetric)
        );
    }

    // koszul(p then q, d) = koszul(p, d) · koszul(q, p(d))
    let mut checked = 0;
    for p in all_permutations(4) {
        for q in all_permutations(4) {
            let lhs = koszul_sign(&p.then(&q), &degrees)?;
            let rhs = koszul_sign(&p, &degrees)? * koszul_sign(&q, &p.apply(&degrees))?;
            assert_eq!(lhs, rhs);
            assert_eq!(perm_sign(&p.then(&q)), perm_sign(&p) * perm_sign(&q));
            checked += 1;
        }
    }
    println!("cocycle identity holds on all {checked} pairs in S4");
    Ok(())
}
