//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::f64::consts::PI;
use std::path::PathBuf;
use std::time::Instant;

use rand::Rng;

use linfty::actions::{equivariant_action_value, BracketCoupling, MixedWeighting, Semidirect, SelfAction};
use linfty::algebra::chern_simons::{cross_table, dot_table, ChernSimons, TOP};
use linfty::algebra::{action_value, jacobi_sum, master_defect, Tolerance};
use linfty::calculus::{Form, Jet, PointSet, SphereQuadrature};
use linfty::cli::{self, cmd_verify, RunConfig, Target, VerifyReport};
use linfty::ecp::{action_density, eom_u, eom_v, top_trace, torsion, wedge, Ecp, EcpElement};
use linfty::noether::{killing_defect, onshell_defect};
use linfty::sampling::{rng, ProfileSpec};
use linfty::schwarzschild::{wald_entropy, KappaConvention, SchwarzschildParams, Units};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn verify(target: Target, jacobi: usize, invariance: usize) -> Result<VerifyReport, String> {
    let cfg = RunConfig {
        jacobi_trials: jacobi,
        invariance_trials: invariance,
        ..RunConfig::default()
    };
    cmd_verify(&target, &cfg).map_err(|e| e.to_string())
}

fn trials(rep: &VerifyReport, identity: &str) -> usize {
    rep.checks.iter().filter(|c| c.identity == identity).map(|c| c.trials).sum()
}

fn jacobi_suite() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    for target in [Target::So13, Target::ChernSimons, Target::Ecp] {
        let rep = verify(target.clone(), 20, 0)?;
        let (n, worst) = (trials(&rep, "jacobi"), rep.worst("jacobi").unwrap_or(f64::NAN));
        ensure(n >= 100, || format!("{target}: only {n} tuples"))?;
        ensure(worst < 1e-9, || format!("{target}: jacobi defect {worst:.2e}"))?;
        parts.push(format!("{target} {n} tuples max {worst:.1e}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(parts.join("; "))
}

fn infinity_adjoint() -> Outcome {
    let tol = Tolerance::default();
    let x0 = [0.3, -0.4, 0.8, 1.1];
    // (a) compatibility with the target pairing, (b) semidirect Jacobi
    let cs = verify(Target::InfinityAdjoint(Box::new(Target::ChernSimons)), 20, 25)?;
    let ecp = verify(Target::InfinityAdjoint(Box::new(Target::Ecp)), 20, 17)?;
    let so = verify(Target::InfinityAdjoint(Box::new(Target::So13)), 20, 0)?;
    let compat = trials(&cs, "invariance") + trials(&ecp, "invariance");
    let worst_compat = cs.worst("invariance").unwrap().max(ecp.worst("invariance").unwrap());
    ensure(compat >= 100, || format!("only {compat} compatibility tuples"))?;
    ensure(worst_compat < 1e-9, || format!("compatibility defect {worst_compat:.2e}"))?;
    let worst_jac = [&cs, &ecp, &so].iter().map(|r| r.worst("jacobi").unwrap()).fold(0.0, f64::max);
    ensure(worst_jac < 1e-9, || format!("semidirect jacobi defect {worst_jac:.2e}"))?;

    // equivariant master identity on random dynamical pairs, and strictness
    let ecp_alg = Ecp::new(0.7);
    let sd = Semidirect(SelfAction::infinity_adjoint(ecp_alg));
    let el = |seed: u64, d: i32| Ecp::random_field(seed, d, ProfileSpec::local(4), 2).at(&x0).unwrap();
    let mut worst_master = 0.0f64;
    for s in 0..20 {
        let p = sd.pair(el(100 + 2 * s, 1), el(101 + 2 * s, 1)).unwrap();
        let d = master_defect(&sd, &p).map_err(|e| e.to_string())?;
        ensure(d.passes(&tol), || format!("master identity {d:?}"))?;
        worst_master = worst_master.max(d.relative());
        let q = sd.pair(el(300 + s, 0), el(400 + s, 0)).unwrap();
        let args = [&q, &p, &p];
        let (j, _) = jacobi_sum(&sd, &args).map_err(|e| e.to_string())?;
        let (ja, _) = jacobi_sum(&ecp_alg, &[&q.x, &p.x, &p.x]).map_err(|e| e.to_string())?;
        ensure(j.x == ja, || "actor component of the semidirect Jacobiator differs from the actor's".into())?;
    }
    let cs_sd = Semidirect(SelfAction::infinity_adjoint(ChernSimons));
    for s in 0..20 {
        let f = |k: u64| ChernSimons::random_field(k, 1, 2).at(&x0).unwrap();
        let p = cs_sd.pair(f(500 + 2 * s), f(501 + 2 * s)).unwrap();
        let d = master_defect(&cs_sd, &p).map_err(|e| e.to_string())?;
        ensure(d.passes(&tol), || format!("CS master identity {d:?}"))?;
        worst_master = worst_master.max(d.relative());
    }

    // (c) zero background is the plain action; the Chern–Simons coupling term by term
    let pts = PointSet::torus(3, 6);
    let act = SelfAction::infinity_adjoint(ChernSimons);
    let cpl = BracketCoupling {
        action: &act,
        weighting: MixedWeighting::PerBackgroundCount,
    };
    let mut worst_terms = 0.0f64;
    for s in 0..10 {
        let a = ChernSimons::random_field(700 + 2 * s, 1, 1);
        let b = ChernSimons::random_field(701 + 2 * s, 1, 1);
        let free = equivariant_action_value(&act, &cpl, None, &a, &pts).map_err(|e| e.to_string())?;
        let plain = action_value(&ChernSimons, &a, &pts).map_err(|e| e.to_string())?;
        ensure(free == plain, || format!("zero background {free} vs {plain}"))?;
        // S(λA, μB) = λ²(q + μ k) + λ³ c
        let scaled = |l: f64| {
            let a = a.clone();
            linfty::algebra::Field::new(move |x| {
                let v = a.at(x)?;
                Ok(linfty::algebra::chern_simons::CsElement { degree: 1, form: v.form.scale(l) })
            })
        };
        let s1 = equivariant_action_value(&act, &cpl, None, &scaled(1.0), &pts).unwrap();
        let s2 = equivariant_action_value(&act, &cpl, None, &scaled(2.0), &pts).unwrap();
        let c = (s2 - 4.0 * s1) / 4.0;
        let q = s1 - c;
        let k = equivariant_action_value(&act, &cpl, Some(&b), &a, &pts).unwrap() - free;
        let (dq, dc, dk) = {
            let mut acc = (0.0, 0.0, 0.0);
            for (x, w) in pts.points.iter().zip(&pts.weights) {
                let (av, bv) = (a.at(x).unwrap().form, b.at(x).unwrap().form);
                let pair = |u: &Form, v: &Form| u.wedge(v, dot_table()).component(TOP, 0).value();
                acc.0 += w * 0.5 * pair(&av, &av.d());
                acc.1 += w * pair(&av, &av.wedge(&av, cross_table())) / 6.0;
                acc.2 += w * pair(&av, &bv.wedge(&av, cross_table())) / 6.0;
            }
            acc
        };
        // relative to the sum of the three terms: a single term can nearly cancel on the torus
        let scale = dq.abs() + dc.abs() + dk.abs();
        for (got, want) in [(q, dq), (c, dc), (k, dk)] {
            let rel = (got - want).abs() / scale;
            worst_terms = worst_terms.max(rel);
        }
    }
    ensure(worst_terms < 1e-10, || format!("CS terms reproduced only to {worst_terms:.2e}"))?;
    let sum_plain = {
        let m = Ecp::random_field(9, 1, ProfileSpec::periodic(4), 1);
        let ecp_act = SelfAction::infinity_adjoint(Ecp::new(0.7));
        let ecp_cpl = BracketCoupling {
            action: &ecp_act,
            weighting: MixedWeighting::PerBackgroundCount,
        };
        let t4 = PointSet::torus(4, 5);
        let free = equivariant_action_value(&ecp_act, &ecp_cpl, None, &m, &t4).unwrap();
        let plain = action_value(&Ecp::new(0.7), &m, &t4).unwrap();
        ensure(free == plain, || format!("ECP zero background {free} vs {plain}"))?;
        plain
    };
    Ok(format!(
        "compatibility {compat} tuples max {worst_compat:.1e}; semidirect jacobi max {worst_jac:.1e}; \
         master identity max {worst_master:.1e}; zero background exact (ECP S = {sum_plain:.3}); \
         CS terms to {worst_terms:.1e}"
    ))
}

fn ecp_invariance() -> Outcome {
    let rep = verify(Target::Ecp, 0, 34)?;
    let n = trials(&rep, "invariance");
    let worst = rep.worst("invariance").unwrap_or(f64::NAN);
    ensure(n >= 100, || format!("only {n} tuples"))?;
    ensure(worst < 1e-9, || format!("invariance defect {worst:.2e}"))?;
    let arities: Vec<String> = rep
        .checks
        .iter()
        .filter(|c| c.identity == "invariance")
        .map(|c| format!("ℓ{}: {}", c.arity, c.trials))
        .collect();
    Ok(format!("{n} tuples ({}) max {worst:.1e}", arities.join(", ")))
}

fn exterior_points(r_s: f64, count: usize, seed: u64) -> Vec<[f64; 4]> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            [
                r.gen_range(-1.0..1.0),
                r_s * r.gen_range(1.05..20.0),
                r.gen_range(0.1..PI - 0.1),
                r.gen_range(0.0..2.0 * PI),
            ]
        })
        .collect()
}

fn schwarzschild_package() -> Outcome {
    let start = Instant::now();
    let p = SchwarzschildParams::new(1.0, Units::Natural).map_err(|e| e.to_string())?;
    let points = exterior_points(p.r_s, 100, 11);
    let (mut tor, mut eom) = (0.0f64, 0.0f64);
    for x in &points {
        let (e, w) = p.build_fields(x, 2).map_err(|e| e.to_string())?;
        let scale = e.max_value().max(w.max_value()).max(1.0);
        tor = tor.max(torsion(&e, &w).max_value() / scale.powi(2));
        eom = eom.max(eom_u(&e, &w, 0.0).max_value() / scale.powi(3));
    }
    let fields = |x: &[f64; 4]| p.build_fields(x, 2);
    let kt = killing_defect(&p.time_translation(), &fields, &points).map_err(|e| e.to_string())?;
    let kp = killing_defect(&p.rotation(), &fields, &points).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    for (name, v) in [("torsion", tor), ("eom_U", eom), ("L_t g", kt.max_defect), ("L_phi g", kp.max_defect)] {
        ensure(v < 1e-9, || format!("{name} = {v:.2e}"))?;
    }
    ensure(secs < 10.0, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "100 points: torsion {tor:.1e}, eom_U {eom:.1e}, Killing d_t {:.1e}, d_phi {:.1e}",
        kt.max_defect, kp.max_defect
    ))
}

fn onshell_lemma() -> Outcome {
    let p = SchwarzschildParams::new(1.0, Units::Natural).map_err(|e| e.to_string())?;
    let points = exterior_points(p.r_s, 100, 12);
    let fields = |x: &[f64; 4]| p.build_fields(x, 2);
    let t = onshell_defect(&p.time_translation(), &fields, &points).map_err(|e| e.to_string())?;
    ensure(t.lemma < 1e-8 && t.killing < 1e-8, || format!("on shell {t:?}"))?;
    let tilted = onshell_defect(&p.tilted_rotation(), &fields, &points).map_err(|e| e.to_string())?;
    ensure(tilted.lemma < 1e-8 * tilted.scale.max(1.0), || format!("tilted rotation {tilted:?}"))?;

    // off shell: ω + ε r cosθ dt ⊗ u₂∧u₃
    let defect = |eps: f64| -> Result<f64, String> {
        let perturbed = |x: &[f64; 4]| {
            let (e, w) = p.build_fields(x, 2)?;
            let c = Jet::variable(1, x[1], 2) * Jet::variable(2, x[2], 2).cos();
            Ok((e, w.axpy(eps, &Form::from_terms([(0b0001, 0b1100, c)]))))
        };
        Ok(onshell_defect(&p.time_translation(), &perturbed, &points).map_err(|e| e.to_string())?.lemma)
    };
    let ds: Vec<f64> = [1e-3, 1e-4, 1e-5].iter().map(|&e| defect(e)).collect::<Result<_, _>>()?;
    let orders: Vec<f64> = ds.windows(2).map(|w| (w[0] / w[1]).log10()).collect();
    ensure(ds.iter().all(|&d| d > 0.0), || format!("perturbation invisible: {ds:?}"))?;
    ensure(orders.iter().all(|o| (o - 1.0).abs() <= 0.1), || format!("orders {orders:?}"))?;
    Ok(format!(
        "d_t: dQ - K {:.1e}, J3 - K {:.1e}; tilted rotation dQ - K {:.1e} (J3 - K {:.2} of scale {:.2}, \
         tetrad not invariant); off shell defects {:.2e}/{:.2e}/{:.2e}, orders {:.3}, {:.3}",
        t.lemma, t.killing, tilted.lemma, tilted.killing, tilted.scale, ds[0], ds[1], ds[2], orders[0], orders[1]
    ))
}

fn area_law() -> Outcome {
    let start = Instant::now();
    let quad = SphereQuadrature {
        theta_nodes: 32,
        phi_nodes: 64,
    };
    let mut ratios = Vec::new();
    let mut last = None;
    for r_s in [1.0, 2.0, 5.0, 10.0] {
        let p = SchwarzschildParams::new(r_s, Units::Natural).map_err(|e| e.to_string())?;
        let rep = wald_entropy(&p, KappaConvention::Standard, &quad).map_err(|e| e.to_string())?;
        ratios.push(rep.ratio);
        last = Some(rep);
    }
    let rep = last.unwrap();
    let (lo, hi) = ratios.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &r| (a.min(r), b.max(r)));
    let spread = hi / lo - 1.0;
    let bh = rep.bekenstein_hawking_ratio;
    let dev = (ratios[0] / bh - 1.0).abs();
    let secs = start.elapsed().as_secs_f64();
    ensure(spread < 1e-6, || format!("ratio spread {spread:.2e}: {ratios:?}"))?;
    ensure(dev < 1e-6, || format!("ratio {} vs k_B c³/(4Għ) = {bh}", ratios[0]))?;
    ensure(secs < 5.0, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "S/A = {:.12} for r_S in {{1,2,5,10}} (spread {spread:.1e}), k_B c³/(4Għ) = {bh}; \
         κ = 1/r_S gives {:.6}; k_B c³/(4πG) would be {:.6}",
        ratios[0], rep.alternate_ratio, rep.no_hbar_ratio
    ))
}

fn variation_oracle() -> Outcome {
    let pts = PointSet::torus(4, 5);
    let lambda = 0.7;
    let mut worst = 0.0f64;
    for seed in 0..3u64 {
        let base = Ecp::random_field(20 + seed, 1, ProfileSpec::periodic(4), 1);
        let dir = Ecp::random_field(40 + seed, 1, ProfileSpec::periodic(4), 1);
        for (use_e, use_w) in [(true, false), (false, true), (true, true)] {
            let sample = |x: &[f64; 4]| -> (EcpElement, Form, Form) {
                let b = base.at(x).unwrap();
                let d = dir.at(x).unwrap();
                let de = if use_e { d.first.clone() } else { Form::zero() };
                let dw = if use_w { d.second.clone() } else { Form::zero() };
                (b, de, dw)
            };
            let s = |eps: f64| {
                pts.integrate(|x| {
                    let (b, de, dw) = sample(x);
                    action_density(&b.first.axpy(eps, &de), &b.second.axpy(eps, &dw), lambda).value()
                })
            };
            // five-point stencil: exact for the quartic S(ε)
            let h = 0.1;
            let fd = (s(-2.0 * h) - 8.0 * s(-h) + 8.0 * s(h) - s(2.0 * h)) / (12.0 * h);
            let predicted = pts.integrate(|x| {
                let (b, de, dw) = sample(x);
                let (e, w) = (&b.first, &b.second);
                top_trace(&wedge(&de, &eom_u(e, w, lambda))).value() + top_trace(&wedge(&dw, &eom_v(e, w))).value()
            });
            let rel = (fd - predicted).abs() / predicted.abs().max(1e-300);
            ensure(rel < 1e-5, || format!("δS {fd} vs ∫Tr(δe∧U + δω∧V) {predicted}"))?;
            worst = worst.max(rel);
        }
    }
    Ok(format!("δS = ∫Tr(δe∧U) + Tr(δω∧V) to {worst:.1e} (3 seeds × e, ω, both)"))
}

fn parser_corpus() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .map_err(|e| e.to_string())?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "lalg"))
        .collect();
    files.sort();
    let mut by_code = [0usize; 3];
    for f in &files {
        let text = std::fs::read_to_string(f).map_err(|e| e.to_string())?;
        let header = |key: &str| {
            text.lines()
                .find_map(|l| l.strip_prefix(&format!("# {key}:")).map(|v| v.trim().to_string()))
        };
        let expect: i32 = header("expect-exit")
            .ok_or_else(|| format!("{}: no expect-exit header", f.display()))?
            .parse()
            .map_err(|e| format!("{}: {e}", f.display()))?;
        let target = format!("file:{}", f.display());
        let out = cli::run(["lalg", "verify", target.as_str()]);
        ensure(out.code == expect, || format!("{}: exit {} (expected {expect}) {}", f.display(), out.code, out.stderr))?;
        if let Some(pos) = header("expect-error") {
            let want = format!("{}:{pos}:", f.display());
            ensure(out.stderr.contains(&want), || format!("{}: diagnostic {:?} lacks {want}", f.display(), out.stderr))?;
        }
        by_code[expect as usize] += 1;
    }
    ensure(files.len() >= 10, || format!("only {} corpus files", files.len()))?;
    ensure(by_code.iter().all(|&n| n > 0), || format!("exit codes covered {by_code:?}"))?;
    Ok(format!(
        "{} files: {} pass, {} identity violations, {} rejected with positions",
        files.len(),
        by_code[0],
        by_code[1],
        by_code[2]
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("generalized Jacobi, so13 / Chern-Simons / ECP", jacobi_suite),
        ("infinity adjoint action", infinity_adjoint),
        ("cyclic invariance of the ECP pairing", ecp_invariance),
        ("Schwarzschild on-shell package", schwarzschild_package),
        ("on-shell Noether lemma", onshell_lemma),
        ("area law", area_law),
        ("variation oracle for the field equations", variation_oracle),
        ("structure-constant parser corpus", parser_corpus),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS [{name}] {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL [{name}] {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
