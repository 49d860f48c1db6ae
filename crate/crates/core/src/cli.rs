//! The `lalg` command line: identity checks for the built-in and file-defined
//! algebras, Noether charges and horizon entropy of Schwarzschild.
//!
//! Every command prints one JSON report on stdout. Exit codes: 0 when every
//! identity holds within tolerance, 1 when one is violated, 2 for usage,
//! domain, parse and i/o errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::actions::{compatibility_defect, ActorElement, Semidirect, SelfAction, Slot, TargetElement};
use crate::algebra::chern_simons::ChernSimons;
use crate::algebra::structure::StructureAlgebra;
use crate::algebra::{antisymmetry_defect, bracket, pairing, invariance_defect, jacobi_defect, Defect, Field, LInfinityAlgebra, Tolerance};
use crate::calculus::{PointSet, SphereQuadrature};
use crate::ecp::Ecp;
use crate::error::{Error, Result};
use crate::noether::{killing_defect, onshell_defect, ChargeReport, Generator, KillingReport, OnShellReport};
use crate::sampling::{rng, ProfileSpec};
use crate::schwarzschild::{charge_at, wald_entropy, EntropyReport, KappaConvention, SchwarzschildParams, Units};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Run parameters. Loaded from TOML (`--config` or `$LALG_CONFIG`); command
/// line flags override individual fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub tolerance: Tolerance,
    /// Random tuples per arity for Jacobi and antisymmetry.
    pub jacobi_trials: usize,
    /// Random tuples per arity for cyclic invariance.
    pub invariance_trials: usize,
    /// Cosmological constant of the gravity algebra.
    pub lambda: f64,
    pub quadrature: SphereQuadrature,
    pub units: Units,
    pub kappa_convention: KappaConvention,
    /// Also write the report here.
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 0x5eed,
            tolerance: Tolerance::default(),
            jacobi_trials: 20,
            invariance_trials: 12,
            lambda: 0.7,
            quadrature: SphereQuadrature::default(),
            units: Units::Natural,
            kappa_convention: KappaConvention::Standard,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str, path: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e
                .span()
                .map(|s| line_col(text, s.start))
                .unwrap_or((1, 1));
            Error::Parse {
                path: path.to_string(),
                line,
                column,
                message: e.message().to_string(),
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text, &path.display().to_string())
    }
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// What `verify` checks.
#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    So13,
    ChernSimons,
    Ecp,
    File(PathBuf),
    /// `X ⋉ X` for the infinity adjoint action of `X` on itself.
    InfinityAdjoint(Box<Target>),
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "so13" => Ok(Target::So13),
            "chern-simons" | "cs" => Ok(Target::ChernSimons),
            "ecp" => Ok(Target::Ecp),
            _ => {
                if let Some(path) = s.strip_prefix("file:") {
                    Ok(Target::File(PathBuf::from(path)))
                } else if let Some(base) = s.strip_prefix("infinity-adjoint:") {
                    let base: Target = base.parse()?;
                    if matches!(base, Target::InfinityAdjoint(_)) {
                        return Err(Error::UnknownAlgebra(format!("{s} (nested actions are not supported)")));
                    }
                    Ok(Target::InfinityAdjoint(Box::new(base)))
                } else {
                    Err(Error::UnknownAlgebra(s.to_string()))
                }
            }
        }
    }
}

impl std::fmt::Display for Target {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Target::So13 => write!(f, "so13"),
            Target::ChernSimons => write!(f, "chern-simons"),
            Target::Ecp => write!(f, "ecp"),
            Target::File(p) => write!(f, "file:{}", p.display()),
            Target::InfinityAdjoint(b) => write!(f, "infinity-adjoint:{b}"),
        }
    }
}

/// Worst defect of one identity at one arity.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub identity: String,
    pub arity: usize,
    pub trials: usize,
    /// Trials with a nonzero defect scale.
    pub nontrivial: usize,
    pub max_relative: f64,
    pub max_absolute: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub target: String,
    pub algebra: String,
    pub seed: u64,
    pub tolerance: Tolerance,
    pub checks: Vec<CheckSummary>,
    pub notes: Vec<String>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn worst(&self, identity: &str) -> Option<f64> {
        self.checks
            .iter()
            .filter(|c| c.identity == identity)
            .map(|c| c.max_relative)
            .reduce(f64::max)
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            EXIT_PASS
        } else {
            EXIT_VIOLATION
        }
    }
}

/// Random samples of an algebra: pointwise elements for the algebraic
/// identities, fields on a closed domain for the integrated ones.
trait Sampler {
    type A: LInfinityAlgebra;

    fn algebra(&self) -> &Self::A;

    fn element(&self, seed: u64, degree: i32) -> Result<<Self::A as LInfinityAlgebra>::Element>;

    fn field(&self, seed: u64, degree: i32) -> Result<Field<<Self::A as LInfinityAlgebra>::Element>>;

    fn domain(&self) -> PointSet;

    /// Worst invariance defect over the adjacent swaps of one tuple, or
    /// `None` when there is nothing to check.
    fn invariance(&self, seed: u64, degrees: &[i32]) -> Result<Option<Defect>> {
        let alg = self.algebra();
        if alg.pairing_degree().is_none() {
            return Ok(None);
        }
        let fields: Vec<_> = degrees
            .iter()
            .enumerate()
            .map(|(j, &d)| self.field(seed.wrapping_add(j as u64 * 7919), d))
            .collect::<Result<_>>()?;
        let refs: Vec<_> = fields.iter().collect();
        let pts = self.domain();
        let mut worst = Defect::zero();
        for i in 0..degrees.len() - 1 {
            worst = worst.worst(invariance_defect(alg, &refs, i, &pts)?);
        }
        Ok(Some(worst))
    }
}

struct StructureSampler(StructureAlgebra);

impl Sampler for StructureSampler {
    type A = StructureAlgebra;

    fn algebra(&self) -> &StructureAlgebra {
        &self.0
    }

    fn element(&self, seed: u64, degree: i32) -> Result<<StructureAlgebra as LInfinityAlgebra>::Element> {
        let mut r = rng(seed);
        let mut coeffs = vec![0.0; self.0.dim()];
        for i in self.0.indices_of_degree(degree) {
            coeffs[i] = r.gen_range(-1.0..1.0);
        }
        self.0.element(degree, coeffs)
    }

    fn field(&self, seed: u64, degree: i32) -> Result<Field<<StructureAlgebra as LInfinityAlgebra>::Element>> {
        Ok(Field::constant(self.element(seed, degree)?))
    }

    fn domain(&self) -> PointSet {
        PointSet::single([0.0; 4])
    }
}

fn sample_point(seed: u64) -> [f64; 4] {
    let mut r = rng(seed ^ 0x51_7cc1_b727_220a);
    [0; 4].map(|_| r.gen_range(-1.0..1.0))
}

struct CsSampler;

impl Sampler for CsSampler {
    type A = ChernSimons;

    fn algebra(&self) -> &ChernSimons {
        &ChernSimons
    }

    fn element(&self, seed: u64, degree: i32) -> Result<<ChernSimons as LInfinityAlgebra>::Element> {
        ChernSimons::random_field(seed, degree, 2).at(&sample_point(seed))
    }

    fn field(&self, seed: u64, degree: i32) -> Result<Field<<ChernSimons as LInfinityAlgebra>::Element>> {
        Ok(ChernSimons::random_field(seed, degree, 1))
    }

    fn domain(&self) -> PointSet {
        PointSet::torus(3, 6)
    }
}

struct EcpSampler(Ecp);

impl Sampler for EcpSampler {
    type A = Ecp;

    fn algebra(&self) -> &Ecp {
        &self.0
    }

    fn element(&self, seed: u64, degree: i32) -> Result<<Ecp as LInfinityAlgebra>::Element> {
        Ecp::random_field(seed, degree, ProfileSpec::local(4), 2).at(&sample_point(seed))
    }

    fn field(&self, seed: u64, degree: i32) -> Result<Field<<Ecp as LInfinityAlgebra>::Element>> {
        Ok(Ecp::random_field(seed, degree, ProfileSpec::periodic(4), 1))
    }

    fn domain(&self) -> PointSet {
        PointSet::torus(4, 5)
    }
}

/// `X ⋉ X` under the infinity adjoint action. Invariance here means
/// compatibility of the action with the pairing of the target.
struct AdjointSampler<S: Sampler> {
    base: S,
    alg: Semidirect<SelfAction<S::A>>,
}

impl<S: Sampler> AdjointSampler<S>
where
    S::A: Clone,
{
    fn new(base: S) -> Self {
        let alg = Semidirect(SelfAction::infinity_adjoint(base.algebra().clone()));
        AdjointSampler { base, alg }
    }
}

const TARGET_SALT: u64 = 0xa5a5_0f0f_3c3c_9696;

impl<S: Sampler> Sampler for AdjointSampler<S>
where
    S::A: Clone,
    <S::A as LInfinityAlgebra>::Element: Send + Sync + 'static,
{
    type A = Semidirect<SelfAction<S::A>>;

    fn algebra(&self) -> &Self::A {
        &self.alg
    }

    fn element(&self, seed: u64, degree: i32) -> Result<<Self::A as LInfinityAlgebra>::Element> {
        self.alg
            .pair(self.base.element(seed, degree)?, self.base.element(seed ^ TARGET_SALT, degree)?)
    }

    fn field(&self, seed: u64, degree: i32) -> Result<Field<<Self::A as LInfinityAlgebra>::Element>> {
        let (fx, fm) = (self.base.field(seed, degree)?, self.base.field(seed ^ TARGET_SALT, degree)?);
        Ok(Field::new(move |x| {
            Ok(crate::actions::Pair {
                degree,
                x: fx.at(x)?,
                m: fm.at(x)?,
            })
        }))
    }

    fn domain(&self) -> PointSet {
        self.base.domain()
    }

    fn invariance(&self, seed: u64, degrees: &[i32]) -> Result<Option<Defect>> {
        let action = &self.alg.0;
        if action.algebra.pairing_degree().is_none() {
            return Ok(None);
        }
        let n = degrees.len() - 1;
        // a random actor/target pattern; the last slot is always a target
        let mut r = rng(seed);
        let actor: Vec<bool> = (0..n).map(|_| r.gen_bool(0.5)).collect();
        let xs: Vec<Field<ActorElement<SelfAction<S::A>>>> = degrees
            .iter()
            .enumerate()
            .map(|(j, &d)| self.base.field(seed.wrapping_add(j as u64 * 7919), d))
            .collect::<Result<_>>()?;
        let ms: &Vec<Field<TargetElement<SelfAction<S::A>>>> = &xs;
        let slots: Vec<Slot<'_, _, _>> = (0..=n)
            .map(|j| if j < n && actor[j] { Slot::Actor(&xs[j]) } else { Slot::Target(&ms[j]) })
            .collect();
        let pts = self.domain();
        let mut worst = Defect::zero();
        for i in 0..n {
            if i + 1 == n && actor[i] {
                continue;
            }
            worst = worst.worst(compatibility_defect(action, &slots, i, &pts)?);
        }
        Ok(Some(worst))
    }
}

/// All degree tuples of length `len` over `support` accepted by `keep`, in
/// a seeded random order. Falls back to every tuple when none is accepted.
fn degree_tuples(r: &mut impl Rng, support: &[i32], len: usize, keep: impl Fn(&[i32]) -> bool) -> Vec<Vec<i32>> {
    let mut all = vec![Vec::new()];
    for _ in 0..len {
        all = all
            .into_iter()
            .flat_map(|t: Vec<i32>| {
                support.iter().map(move |&d| {
                    let mut u = t.clone();
                    u.push(d);
                    u
                })
            })
            .collect();
    }
    let mut kept: Vec<Vec<i32>> = all.iter().filter(|t| keep(t)).cloned().collect();
    if kept.is_empty() {
        kept = all;
    }
    kept.shuffle(r);
    kept
}

struct Accumulator {
    identity: &'static str,
    arity: usize,
    trials: usize,
    nontrivial: usize,
    worst: Defect,
    worst_relative: f64,
    pass: bool,
}

impl Accumulator {
    fn new(identity: &'static str, arity: usize) -> Self {
        Accumulator {
            identity,
            arity,
            trials: 0,
            nontrivial: 0,
            worst: Defect::zero(),
            worst_relative: 0.0,
            pass: true,
        }
    }

    fn push(&mut self, d: Defect, tol: &Tolerance) {
        self.trials += 1;
        self.nontrivial += usize::from(d.scale > 0.0);
        self.worst_relative = self.worst_relative.max(d.relative());
        self.worst = self.worst.worst(d);
        self.pass &= d.passes(tol);
    }

    fn summary(self) -> CheckSummary {
        CheckSummary {
            identity: self.identity.to_string(),
            arity: self.arity,
            trials: self.trials,
            nontrivial: self.nontrivial,
            max_relative: self.worst_relative,
            max_absolute: self.worst.absolute,
            pass: self.pass,
        }
    }
}

/// Whether `⟨ℓ_n(x_1, …), x_{n+1}⟩` or one of its adjacent swaps is nonzero
/// at a random point.
fn pairs_nontrivially<S: Sampler>(s: &S, seed: u64, degrees: &[i32]) -> Result<bool> {
    let alg = s.algebra();
    let xs: Vec<_> = degrees
        .iter()
        .enumerate()
        .map(|(j, &d)| s.element(seed.wrapping_add(j as u64 * 7919), d))
        .collect::<Result<_>>()?;
    let n = xs.len() - 1;
    for i in 0..=n {
        let mut refs: Vec<_> = xs.iter().collect();
        if i < n {
            refs.swap(i, i + 1);
        }
        let l = bracket(alg, &refs[..n])?;
        if pairing(alg, &l, refs[n])? != 0.0 {
            return Ok(true);
        }
    }
    Ok(false)
}

fn run_checks<S: Sampler>(s: &S, target: &Target, cfg: &RunConfig) -> Result<VerifyReport> {
    let alg = s.algebra();
    let tol = cfg.tolerance;
    let support = alg.degrees();
    let max_out = *support.iter().max().unwrap_or(&0);
    let mut r = rng(cfg.seed);
    let mut checks = Vec::new();
    let mut notes = Vec::new();

    for n in 1..=5 {
        let mut jac = Accumulator::new("jacobi", n);
        let mut anti = Accumulator::new("antisymmetry", n);
        let tuples = degree_tuples(&mut r, &support, n, |d| d.iter().sum::<i32>() + 3 - n as i32 <= max_out);
        for t in 0..cfg.jacobi_trials {
            let degs = &tuples[t % tuples.len()];
            let base = cfg.seed.wrapping_mul(1_000_003).wrapping_add((n * 100_000 + t * 10) as u64);
            let xs: Vec<_> = degs
                .iter()
                .enumerate()
                .map(|(j, &d)| s.element(base + j as u64, d))
                .collect::<Result<_>>()?;
            let refs: Vec<_> = xs.iter().collect();
            jac.push(jacobi_defect(alg, &refs)?, &tol);
            if n <= alg.max_arity() {
                for i in 0..n.saturating_sub(1) {
                    anti.push(antisymmetry_defect(alg, &refs, i)?, &tol);
                }
            }
        }
        checks.push(jac.summary());
        if n >= 2 && n <= alg.max_arity() {
            checks.push(anti.summary());
        }
    }

    match alg.pairing_degree() {
        None => notes.push(format!("{} has no cyclic pairing; invariance not checked", alg.name())),
        Some(pd) => {
            for n in 1..=alg.max_arity() {
                let mut inv = Accumulator::new("invariance", n);
                // Σ deg = n − 2 − pd for a nonzero pairing
                let sum = n as i32 - 2 - pd;
                let tuples = degree_tuples(&mut r, &support, n + 1, |d| d.iter().sum::<i32>() == sum);
                if tuples[0].iter().sum::<i32>() != sum {
                    continue;
                }
                // degree patterns on which every bracket vanishes are skipped
                let budget = cfg.invariance_trials * tuples.len();
                let mut t = 0;
                while inv.trials < cfg.invariance_trials && t < budget {
                    let degs = &tuples[t % tuples.len()];
                    let seed = cfg.seed.wrapping_mul(7_000_003).wrapping_add((n * 100_000 + t * 10) as u64);
                    t += 1;
                    if !pairs_nontrivially(s, seed, degs)? {
                        continue;
                    }
                    if let Some(d) = s.invariance(seed, degs)? {
                        inv.push(d, &tol);
                    }
                }
                if inv.trials == 0 {
                    notes.push(format!("all {}-ary pairings vanish for degree reasons", n));
                }
                if inv.trials > 0 {
                    checks.push(inv.summary());
                }
            }
        }
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(VerifyReport {
        target: target.to_string(),
        algebra: alg.name(),
        seed: cfg.seed,
        tolerance: tol,
        checks,
        notes,
        pass,
    })
}

fn structure_of(target: &Target) -> Result<Option<StructureAlgebra>> {
    Ok(match target {
        Target::So13 => Some(StructureAlgebra::so13()),
        Target::File(p) => Some(StructureAlgebra::from_file(p)?),
        _ => None,
    })
}

/// Checks the generalized Jacobi identities for arities 1 to 5, graded
/// antisymmetry and (when there is a pairing) cyclic invariance.
pub fn cmd_verify(target: &Target, cfg: &RunConfig) -> Result<VerifyReport> {
    match target {
        Target::So13 | Target::File(_) => {
            run_checks(&StructureSampler(structure_of(target)?.expect("structure target")), target, cfg)
        }
        Target::ChernSimons => run_checks(&CsSampler, target, cfg),
        Target::Ecp => run_checks(&EcpSampler(Ecp::new(cfg.lambda)), target, cfg),
        Target::InfinityAdjoint(base) => match base.as_ref() {
            Target::So13 | Target::File(_) => run_checks(
                &AdjointSampler::new(StructureSampler(structure_of(base)?.expect("structure target"))),
                target,
                cfg,
            ),
            Target::ChernSimons => run_checks(&AdjointSampler::new(CsSampler), target, cfg),
            Target::Ecp => run_checks(&AdjointSampler::new(EcpSampler(Ecp::new(cfg.lambda))), target, cfg),
            Target::InfinityAdjoint(_) => Err(Error::UnknownAlgebra(target.to_string())),
        },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Symmetry {
    /// `(1/c)∂_t`
    T,
    /// `∂_φ`
    Phi,
    /// `−sinφ ∂_θ − cotθ cosφ ∂_φ`
    Tilted,
    /// `r ∂_r` (not Killing)
    R,
    Zero,
}

impl Symmetry {
    pub fn generator(self, p: &SchwarzschildParams) -> Generator {
        match self {
            Symmetry::T => p.time_translation(),
            Symmetry::Phi => p.rotation(),
            Symmetry::Tilted => p.tilted_rotation(),
            Symmetry::R => p.radial_dilation(),
            Symmetry::Zero => Generator::zero(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChargeCommandReport {
    pub r_s: f64,
    pub units: Units,
    pub charge: ChargeReport,
    /// `L_ξ g` at the quadrature latitudes of the sphere.
    pub killing: KillingReport,
    pub on_shell: OnShellReport,
    /// `dQ = ½Tr(e²∧L_ξω)` within tolerance on the sphere.
    pub pass: bool,
}

/// `∮ Q[ξ]` over `{t = 0, r = r0}` in Schwarzschild with radius `r_s`.
pub fn cmd_charge(r_s: f64, r0: f64, xi: Symmetry, cfg: &RunConfig) -> Result<ChargeCommandReport> {
    let p = SchwarzschildParams::new(r_s, cfg.units)?;
    if !(r0.is_finite() && r0 > r_s) {
        return Err(Error::Domain(format!("the sphere radius {r0} must exceed r_S = {r_s}")));
    }
    let g = xi.generator(&p);
    let charge = charge_at(&p, &g, r0, &cfg.quadrature)?;
    let fields = |x: &[f64; 4]| p.build_fields(x, 2);
    let points: Vec<[f64; 4]> = (1..8)
        .map(|k| [0.0, r0, std::f64::consts::PI * k as f64 / 8.0, 0.4 * k as f64])
        .collect();
    let killing = killing_defect(&g, &fields, &points)?;
    let on_shell = onshell_defect(&g, &fields, &points)?;
    let scale = on_shell.scale.max(charge.value.abs()).max(1.0);
    let pass = charge.on_shell_defect.max(on_shell.lemma) <= cfg.tolerance.relative * scale + cfg.tolerance.absolute;
    Ok(ChargeCommandReport {
        r_s,
        units: cfg.units,
        charge,
        killing,
        on_shell,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntropyCommandReport {
    #[serde(flatten)]
    pub entropy: EntropyReport,
    /// `|S/A − k_B c³/(4Għ)|` relative to the Bekenstein–Hawking ratio.
    pub area_law_deviation: f64,
}

pub fn cmd_entropy(r_s: f64, cfg: &RunConfig) -> Result<EntropyCommandReport> {
    let p = SchwarzschildParams::new(r_s, cfg.units)?;
    let entropy = wald_entropy(&p, cfg.kappa_convention, &cfg.quadrature)?;
    let area_law_deviation = (entropy.ratio / entropy.bekenstein_hawking_ratio - 1.0).abs();
    Ok(EntropyCommandReport {
        entropy,
        area_law_deviation,
    })
}

#[derive(Debug, Parser)]
#[command(name = "lalg", version, about = "Identity checks for cyclic L∞-algebras and Noether charges of ECP gravity")]
pub struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true, env = "LALG_CONFIG")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Also write the JSON report to this file.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check Jacobi identities, antisymmetry and cyclic invariance.
    Verify {
        /// so13 | chern-simons | ecp | file:<path> | infinity-adjoint:<base>
        target: String,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        invariance_trials: Option<usize>,
        #[arg(long)]
        tolerance: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Noether charge of a symmetry on a sphere around the black hole.
    Charge {
        #[arg(long = "rS", alias = "rs")]
        r_s: f64,
        #[arg(long)]
        r0: f64,
        #[arg(long, value_enum, default_value = "t")]
        xi: Symmetry,
        #[arg(long, value_enum)]
        units: Option<UnitsArg>,
    },
    /// Horizon entropy from the charge of the time translation.
    Entropy {
        #[arg(long = "rS", alias = "rs")]
        r_s: f64,
        #[arg(long, value_enum)]
        units: Option<UnitsArg>,
        #[arg(long, value_enum)]
        kappa_convention: Option<KappaArg>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum UnitsArg {
    Natural,
    Si,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KappaArg {
    Standard,
    InverseRadius,
}

impl From<UnitsArg> for Units {
    fn from(u: UnitsArg) -> Self {
        match u {
            UnitsArg::Natural => Units::Natural,
            UnitsArg::Si => Units::Si,
        }
    }
}

impl From<KappaArg> for KappaConvention {
    fn from(k: KappaArg) -> Self {
        match k {
            KappaArg::Standard => KappaConvention::Standard,
            KappaArg::InverseRadius => KappaConvention::InverseRadius,
        }
    }
}

/// Result of one invocation: the exit code and what to print.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| Error::Validation(format!("report serialization: {e}")))
}

fn execute(cli: Cli) -> Result<(i32, String)> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if cli.output.is_some() {
        cfg.output = cli.output.clone();
    }
    let (code, json) = match cli.command {
        Command::Verify {
            target,
            trials,
            invariance_trials,
            tolerance,
            lambda,
        } => {
            if let Some(t) = trials {
                cfg.jacobi_trials = t;
            }
            if let Some(t) = invariance_trials {
                cfg.invariance_trials = t;
            }
            if let Some(t) = tolerance {
                cfg.tolerance.relative = t;
            }
            if let Some(l) = lambda {
                cfg.lambda = l;
            }
            let report = cmd_verify(&target.parse()?, &cfg)?;
            (report.exit_code(), to_json(&report)?)
        }
        Command::Charge { r_s, r0, xi, units } => {
            if let Some(u) = units {
                cfg.units = u.into();
            }
            let report = cmd_charge(r_s, r0, xi, &cfg)?;
            (if report.pass { EXIT_PASS } else { EXIT_VIOLATION }, to_json(&report)?)
        }
        Command::Entropy {
            r_s,
            units,
            kappa_convention,
        } => {
            if let Some(u) = units {
                cfg.units = u.into();
            }
            if let Some(k) = kappa_convention {
                cfg.kappa_convention = k.into();
            }
            (EXIT_PASS, to_json(&cmd_entropy(r_s, &cfg)?)?)
        }
    };
    if let Some(path) = &cfg.output {
        std::fs::write(path, &json).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok((code, json))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(cli) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome::error(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> RunConfig {
        RunConfig {
            jacobi_trials: 3,
            invariance_trials: 1,
            ..RunConfig::default()
        }
    }

    #[test]
    fn targets_parse_and_print() {
        for s in ["so13", "chern-simons", "ecp", "file:a/b.lalg", "infinity-adjoint:ecp", "infinity-adjoint:file:x"] {
            assert_eq!(s.parse::<Target>().unwrap().to_string(), s);
        }
        assert!("so(3)".parse::<Target>().is_err());
        assert!("infinity-adjoint:infinity-adjoint:ecp".parse::<Target>().is_err());
    }

    #[test]
    fn config_round_trips_and_reports_positions() {
        let cfg = RunConfig {
            seed: 9,
            output: Some("out.json".into()),
            ..RunConfig::default()
        };
        let text = toml::to_string(&cfg).unwrap();
        assert_eq!(RunConfig::from_toml(&text, "c.toml").unwrap(), cfg);
        let partial = RunConfig::from_toml("seed = 4\n[quadrature]\ntheta_nodes = 8\nphi_nodes = 16\n", "p").unwrap();
        assert_eq!((partial.seed, partial.quadrature.theta_nodes), (4, 8));
        match RunConfig::from_toml("seed = 1\nbogus = 2\n", "bad.toml") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn so13_passes_and_skips_invariance() {
        let rep = cmd_verify(&Target::So13, &quick()).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.worst("invariance").is_none());
        assert_eq!(rep.notes.len(), 1);
        assert!(rep.worst("jacobi").unwrap() < 1e-12);
    }

    #[test]
    fn coadjoint_structure_checks_invariance() {
        let so = StructureAlgebra::so13();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cs.lalg");
        let alg = StructureAlgebra::with_coadjoint("so13+", 6, |i, j, k| {
            crate::algebra::bracket(&so, &[&so.basis(i), &so.basis(j)]).unwrap().coeffs[k]
        });
        std::fs::write(&path, alg.to_text()).unwrap();
        let rep = cmd_verify(&Target::File(path), &quick()).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(rep.worst("invariance").is_some());
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run(["lalg", "verify", "chern-simons", "--trials", "2", "--invariance-trials", "1"]);
        let b = run(["lalg", "verify", "chern-simons", "--trials", "2", "--invariance-trials", "1"]);
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a, b);
        let c = run(["lalg", "--seed", "3", "verify", "chern-simons", "--trials", "2", "--invariance-trials", "1"]);
        assert_ne!(a.stdout, c.stdout);
    }

    #[test]
    fn usage_and_domain_errors_exit_2() {
        assert_eq!(run(["lalg"]).code, EXIT_ERROR);
        assert_eq!(run(["lalg", "verify", "nonsense"]).code, EXIT_ERROR);
        assert_eq!(run(["lalg", "charge", "--rS", "1", "--r0", "0.5"]).code, EXIT_ERROR);
        assert_eq!(run(["lalg", "entropy", "--rS", "-1"]).code, EXIT_ERROR);
        assert_eq!(run(["lalg", "verify", "file:/does/not/exist.lalg"]).code, EXIT_ERROR);
        assert_eq!(run(["lalg", "--help"]).code, EXIT_PASS);
    }

    #[test]
    fn charge_command() {
        let out = run(["lalg", "charge", "--rS", "1", "--r0", "3", "--xi", "t"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let rep: ChargeCommandReport = serde_json::from_str(&out.stdout).unwrap();
        assert!((rep.charge.component_value - 2.0 * std::f64::consts::PI).abs() < 1e-10);
        assert!(rep.killing.max_defect < 1e-12);
        let dil = cmd_charge(1.0, 3.0, Symmetry::R, &RunConfig::default()).unwrap();
        assert!(dil.killing.max_defect > 1e-3);
    }

    #[test]
    fn entropy_command_writes_output() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.json");
        let out = run(["lalg", "entropy", "--rS", "2", "-o", path.to_str().unwrap()]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), out.stdout);
        let rep: EntropyCommandReport = serde_json::from_str(&out.stdout).unwrap();
        assert!(rep.area_law_deviation < 1e-6);
    }
}
