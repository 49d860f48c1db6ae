// Programmatic use of the verifier behind `lalg verify`.
use linfty::cli::{cmd_verify, RunConfig, Target};

fn main() -> linfty::Result<()> {
    let cfg = RunConfig {
        jacobi_trials: 4,
        invariance_trials: 3,
        ..RunConfig::default()
    };
    for target in ["so13", "chern-simons", "infinity-adjoint:chern-simons"] {
        let target: Target = target.parse()?;
        let rep = cmd_verify(&target, &cfg)?;
        println!("{target}: {}", if rep.pass { "pass" } else { "FAIL" });
        for c in &rep.checks {
            println!(
                "  {:<12} n={} trials {:>3}  max rel {:.1e}",
                c.identity, c.arity, c.trials, c.max_relative
            );
        }
        for n in &rep.notes {
            println!("  note: {n}");
        }
    }
    Ok(())
}
