//! The fiber algebra Λ*ℝ^{1,3}: multivectors, the Minkowski metric, Hodge
//! dual, trace, the isomorphism Φ: so(1,3) → Λ², and the so(1,3) action.
//!
//! Conventions: η = diag(−1, 1, 1, 1), Tr(u₀∧u₁∧u₂∧u₃) = +1, and
//! `u_S ∧ ⋆u_S = η(u_S, u_S) vol`. Blades are indexed by the bitmask of their
//! (increasing) vector indices, so blade 0 is the scalar 1 and blade 15 is
//! the volume element. so(1,3) elements live in grade 2 via Φ.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};
use std::sync::OnceLock;

use crate::calculus::form::{FiberMap, FiberProduct, FIBER_SLOTS};
use crate::error::{Error, Result};

pub const ETA: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];
pub const VOLUME: u8 = 0b1111;

/// 4×4 matrix acting on column vectors: `m[row][col]`.
pub type Matrix4 = [[f64; 4]; 4];

pub fn grade(blade: u8) -> usize {
    blade.count_ones() as usize
}

/// Blades of a given grade in increasing mask order.
pub fn blades_of_grade(k: usize) -> impl Iterator<Item = u8> {
    (0u8..16).filter(move |b| grade(*b) == k)
}

/// `u_S ∧ u_T = sign · u_{S∪T}`, or `None` when `S ∩ T ≠ ∅`.
pub fn blade_wedge(s: u8, t: u8) -> Option<f64> {
    crate::calculus::form::mask_wedge_sign(s, t)
}

/// η(u_S, u_S) for a basis blade.
pub fn blade_norm(s: u8) -> f64 {
    (0..4)
        .filter(|i| s & (1 << i) != 0)
        .map(|i| ETA[i])
        .product()
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Multivector(pub [f64; 16]);

impl Multivector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn blade(mask: u8) -> Self {
        let mut m = Self::zero();
        m.0[mask as usize] = 1.0;
        m
    }

    pub fn scalar(s: f64) -> Self {
        let mut m = Self::zero();
        m.0[0] = s;
        m
    }

    /// `u_{i₁} ∧ … ∧ u_{i_k}` for arbitrary (possibly unordered) indices.
    pub fn from_indices(indices: &[usize]) -> Self {
        let mut m = Self::scalar(1.0);
        for &i in indices {
            m = m.wedge(&Self::blade(1 << i));
        }
        m
    }

    pub fn vector(v: [f64; 4]) -> Self {
        let mut m = Self::zero();
        for (i, x) in v.iter().enumerate() {
            m.0[1 << i] = *x;
        }
        m
    }

    pub fn grade_part(&self, k: usize) -> Self {
        let mut m = Self::zero();
        for b in blades_of_grade(k) {
            m.0[b as usize] = self.0[b as usize];
        }
        m
    }

    pub fn is_grade(&self, k: usize) -> bool {
        (0u8..16).all(|b| grade(b) == k || self.0[b as usize] == 0.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn scale(&self, s: f64) -> Self {
        Multivector(self.0.map(|x| x * s))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        bilinear(wedge_table(), self, other)
    }

    pub fn hodge(&self) -> Self {
        unary(hodge_table(), self)
    }

    pub fn trace4(&self) -> f64 {
        self.0[VOLUME as usize]
    }
}

impl Index<u8> for Multivector {
    type Output = f64;
    fn index(&self, b: u8) -> &f64 {
        &self.0[b as usize]
    }
}

impl IndexMut<u8> for Multivector {
    fn index_mut(&mut self, b: u8) -> &mut f64 {
        &mut self.0[b as usize]
    }
}

impl Add for Multivector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Multivector(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Multivector(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(s)
    }
}

fn bilinear(table: &FiberProduct, a: &Multivector, b: &Multivector) -> Multivector {
    let mut out = Multivector::zero();
    for i in 0..16 {
        if a.0[i] == 0.0 {
            continue;
        }
        for j in 0..16 {
            if b.0[j] == 0.0 {
                continue;
            }
            for &(c, k) in &table[i * FIBER_SLOTS + j] {
                out.0[c as usize] += k * a.0[i] * b.0[j];
            }
        }
    }
    out
}

fn unary(table: &FiberMap, a: &Multivector) -> Multivector {
    let mut out = Multivector::zero();
    for i in 0..16 {
        for &(c, k) in &table[i] {
            out.0[c as usize] += k * a.0[i];
        }
    }
    out
}

pub fn trace4(a: &Multivector) -> f64 {
    a.trace4()
}

pub fn mv_wedge(a: &Multivector, b: &Multivector) -> Multivector {
    a.wedge(b)
}

pub fn hodge(a: &Multivector) -> Multivector {
    a.hodge()
}

/// Φ(A)_{μν} = η(A u_μ, u_ν) is a 2-form on ℝ^{1,3}; it becomes a bivector
/// by raising both indices with η, Σ_{μ<ν} Φ^{μν} u_μ∧u_ν. Without the
/// raise, Φ is not Lorentz-equivariant: the bracket and the derivation
/// action on Λ² would differ in sign on boost components.
pub fn phi(a: &Matrix4) -> Multivector {
    let mut out = Multivector::zero();
    for mu in 0..4 {
        for nu in mu + 1..4 {
            // η^μμ η^νν η_νν A^ν_μ
            out[(1 << mu) | (1 << nu)] = ETA[mu] * a[nu][mu];
        }
    }
    out
}

/// Blade coefficient of `Φ(A)` on `u_a∧u_b` (a < b) per unit `A^{ab}`
/// (`A^a_b = A^{ac} η_cb`). Component formulas written in `ω^{ab}` pick up
/// this sign once for every connection factor.
pub const PHI_BLADE_SIGN: f64 = -1.0;

pub fn phi_inv(b: &Multivector) -> Result<Matrix4> {
    if !b.is_grade(2) {
        return Err(Error::Shape("Φ⁻¹ expects a grade-2 multivector".into()));
    }
    Ok(generator_matrix(b))
}

/// Φ⁻¹ on the grade-2 part, ignoring other grades.
fn generator_matrix(b: &Multivector) -> Matrix4 {
    let mut m = [[0.0; 4]; 4];
    for mu in 0..4 {
        for nu in mu + 1..4 {
            let c = b[(1 << mu) | (1 << nu)];
            // A^ν_μ = η_νν Φ_{μν} = η_μμ Φ^{μν}, Φ^{νμ} = −Φ^{μν}
            m[nu][mu] += ETA[mu] * c;
            m[mu][nu] -= ETA[nu] * c;
        }
    }
    m
}

pub fn mat_mul(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..4).map(|k| a[i][k] * b[k][j]).sum()))
}

pub fn commutator(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let ab = mat_mul(a, b);
    let ba = mat_mul(b, a);
    std::array::from_fn(|i| std::array::from_fn(|j| ab[i][j] - ba[i][j]))
}

/// Whether ηA is antisymmetric, the defining condition of so(1,3).
pub fn is_so13(a: &Matrix4, tol: f64) -> bool {
    (0..4).all(|i| (0..4).all(|j| (ETA[i] * a[i][j] + ETA[j] * a[j][i]).abs() <= tol))
}

pub fn so_bracket(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    if !a.is_grade(2) || !b.is_grade(2) {
        return Err(Error::Shape("so(1,3) bracket expects grade-2 arguments".into()));
    }
    Ok(bilinear(so_bracket_table(), a, b))
}

/// The so(1,3) generator `a` acting on `v` as a degree-0 derivation.
pub fn so_act(a: &Multivector, v: &Multivector) -> Result<Multivector> {
    if !a.is_grade(2) {
        return Err(Error::Shape("so(1,3) action expects a grade-2 generator".into()));
    }
    Ok(bilinear(so_act_table(), a, v))
}

/// `⋆E ∧ e` for a grade-3 `E` and a grade-1 `e`.
pub fn barwedge_fiber(e3: &Multivector, e1: &Multivector) -> Result<Multivector> {
    if !e3.is_grade(3) || !e1.is_grade(1) {
        return Err(Error::Shape("⊼ expects grade 3 and grade 1".into()));
    }
    Ok(e3.hodge().wedge(e1))
}

fn table(build: impl Fn(u8, u8) -> Multivector) -> Vec<Vec<(u8, f64)>> {
    let mut t = vec![Vec::new(); FIBER_SLOTS * FIBER_SLOTS];
    for a in 0u8..16 {
        for b in 0u8..16 {
            let m = build(a, b);
            t[a as usize * FIBER_SLOTS + b as usize] = (0u8..16)
                .filter(|&c| m[c] != 0.0)
                .map(|c| (c, m[c]))
                .collect();
        }
    }
    t
}

/// Fiber product for ⩕.
pub fn wedge_table() -> &'static FiberProduct {
    static T: OnceLock<Vec<Vec<(u8, f64)>>> = OnceLock::new();
    T.get_or_init(|| {
        table(|a, b| match blade_wedge(a, b) {
            Some(s) => Multivector::blade(a | b).scale(s),
            None => Multivector::zero(),
        })
    })
}

/// Fiber product for ⋋: a grade-2 generator acting on any blade.
pub fn so_act_table() -> &'static FiberProduct {
    static T: OnceLock<Vec<Vec<(u8, f64)>>> = OnceLock::new();
    T.get_or_init(|| {
        table(|a, b| {
            if grade(a) != 2 {
                return Multivector::zero();
            }
            let m = generator_matrix(&Multivector::blade(a));
            let idx: Vec<usize> = (0..4).filter(|i| b & (1 << i) != 0).collect();
            let mut out = Multivector::zero();
            for slot in 0..idx.len() {
                // replace the slot-th factor by A u_i
                for (target, row) in m.iter().enumerate() {
                    let coeff = row[idx[slot]];
                    if coeff == 0.0 {
                        continue;
                    }
                    let mut factors = idx.clone();
                    factors[slot] = target;
                    out = out + Multivector::from_indices(&factors).scale(coeff);
                }
            }
            out
        })
    })
}

/// Fiber product transporting the matrix commutator through Φ.
pub fn so_bracket_table() -> &'static FiberProduct {
    static T: OnceLock<Vec<Vec<(u8, f64)>>> = OnceLock::new();
    T.get_or_init(|| {
        table(|a, b| {
            if grade(a) != 2 || grade(b) != 2 {
                return Multivector::zero();
            }
            let ma = generator_matrix(&Multivector::blade(a));
            let mb = generator_matrix(&Multivector::blade(b));
            phi(&commutator(&ma, &mb))
        })
    })
}

pub fn hodge_table() -> &'static FiberMap {
    static T: OnceLock<Vec<Vec<(u8, f64)>>> = OnceLock::new();
    T.get_or_init(|| {
        (0u8..16)
            .map(|s| {
                let c = VOLUME & !s;
                let sign = blade_wedge(s, c).expect("complement is disjoint");
                vec![(c, blade_norm(s) * sign)]
            })
            .collect()
    })
}

/// Tr: the volume blade to the scalar slot, everything else to zero.
pub fn trace_table() -> &'static FiberMap {
    static T: OnceLock<Vec<Vec<(u8, f64)>>> = OnceLock::new();
    T.get_or_init(|| {
        (0u8..16)
            .map(|s| if s == VOLUME { vec![(0, 1.0)] } else { Vec::new() })
            .collect()
    })
}
