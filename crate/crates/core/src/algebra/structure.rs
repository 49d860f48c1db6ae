//! Finite-dimensional L∞-algebras given by structure constants, and the
//! line-oriented text format they are stored in.
//!
//! ```text
//! # comment
//! slot <degree> <dim>          basis indices are assigned consecutively
//! l<k> i1 … ik j <coeff>       ℓ_k(b_i1, …, b_ik) ∋ coeff · b_j
//! pair i j <coeff>             ⟨b_i, b_j⟩ = coeff (degree −3 pairing)
//! ```
//!
//! Entries are stored with sorted input indices; an entry written in another
//! order is converted with the antisymmetric Koszul sign. Validation is
//! strict and every diagnostic carries a line and column.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graded::{all_permutations, reorder_sign, Permutation, SignConvention};
use crate::minkowski::{blades_of_grade, so_bracket_table};

use super::LInfinityAlgebra;

pub const PAIRING_DEGREE: i32 = -3;
const MAX_ARITY: usize = 8;

#[derive(Clone, Debug, PartialEq)]
pub struct StructureElement {
    pub degree: i32,
    pub coeffs: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StructureAlgebra {
    name: String,
    degrees: Vec<i32>,
    /// brackets[k] maps sorted input tuples to (output, coeff) lists.
    brackets: Vec<BTreeMap<Vec<usize>, Vec<(usize, f64)>>>,
    pairing: BTreeMap<(usize, usize), f64>,
}

impl StructureAlgebra {
    /// An empty algebra over basis vectors of the given degrees.
    pub fn new(name: impl Into<String>, degrees: Vec<i32>) -> Self {
        StructureAlgebra {
            name: name.into(),
            degrees,
            brackets: vec![BTreeMap::new(); MAX_ARITY + 1],
            pairing: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn basis_degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn basis(&self, i: usize) -> StructureElement {
        let mut coeffs = vec![0.0; self.dim()];
        coeffs[i] = 1.0;
        StructureElement {
            degree: self.degrees[i],
            coeffs,
        }
    }

    pub fn element(&self, degree: i32, coeffs: Vec<f64>) -> Result<StructureElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::Shape(format!("expected {} coefficients", self.dim())));
        }
        if coeffs.iter().zip(&self.degrees).any(|(c, d)| *c != 0.0 && *d != degree) {
            return Err(Error::Shape(format!("element is not homogeneous of degree {degree}")));
        }
        Ok(StructureElement { degree, coeffs })
    }

    /// Indices of basis vectors of a degree.
    pub fn indices_of_degree(&self, degree: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == degree).collect()
    }

    /// Adds `coeff · b_out` to `ℓ_k(b_inputs)`, converting to sorted order.
    pub fn add_bracket(&mut self, inputs: &[usize], out: usize, coeff: f64) -> Result<()> {
        let k = inputs.len();
        if k == 0 || k > MAX_ARITY {
            return Err(Error::Arity { arity: k, max: MAX_ARITY });
        }
        let (sorted, sign) = self.canonical(inputs)?;
        let entry = self.brackets[k].entry(sorted).or_default();
        match entry.iter_mut().find(|(j, _)| *j == out) {
            Some((_, c)) => *c += sign * coeff,
            None => entry.push((out, sign * coeff)),
        }
        Ok(())
    }

    pub fn set_pairing(&mut self, i: usize, j: usize, coeff: f64) {
        let (a, b, s) = if i <= j {
            (i, j, 1.0)
        } else {
            let k = if (self.degrees[i] * self.degrees[j]).rem_euclid(2) == 1 { -1.0 } else { 1.0 };
            (j, i, k)
        };
        self.pairing.insert((a, b), s * coeff);
    }

    pub fn has_pairing(&self) -> bool {
        !self.pairing.is_empty()
    }

    /// Sorted indices and the sign `s` with `ℓ(b_inputs) = s · ℓ(b_sorted)`.
    fn canonical(&self, inputs: &[usize]) -> Result<(Vec<usize>, f64)> {
        let mut order: Vec<usize> = (0..inputs.len()).collect();
        order.sort_by_key(|&p| inputs[p]);
        let p = Permutation::new(order)?;
        let degrees: Vec<i32> = inputs.iter().map(|&i| self.degrees[i]).collect();
        let s = reorder_sign(&p, &degrees, SignConvention::Antisymmetric)? as f64;
        Ok((p.apply(inputs), s))
    }

    /// The Lie algebra so(1,3) in degree 0, basis the six grade-2 blades.
    pub fn so13() -> Self {
        let blades: Vec<u8> = blades_of_grade(2).collect();
        let mut alg = StructureAlgebra::new("so13", vec![0; blades.len()]);
        let table = so_bracket_table();
        for (i, &a) in blades.iter().enumerate() {
            for (j, &b) in blades.iter().enumerate().skip(i + 1) {
                for &(c, k) in &table[a as usize * 16 + b as usize] {
                    let out = blades.iter().position(|&x| x == c).expect("closed");
                    alg.add_bracket(&[i, j], out, k).expect("valid");
                }
            }
        }
        alg
    }

    /// Cyclic algebra `g ⊕ g*[−3]` for a Lie algebra `g` given by structure
    /// constants `f[i][j][k]` (`[e_i, e_j] = f_ijk e_k`). Pairs `e_i` with
    /// the dual basis vector.
    pub fn with_coadjoint(name: &str, dim: usize, f: impl Fn(usize, usize, usize) -> f64) -> Self {
        let mut degrees = vec![0; dim];
        degrees.extend(vec![3; dim]);
        let mut alg = StructureAlgebra::new(name, degrees);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let c = f(i, j, k);
                    if c == 0.0 {
                        continue;
                    }
                    if i < j {
                        alg.add_bracket(&[i, j], k, c).unwrap();
                    }
                    // e_i · e*_k = −f_ijk e*_j
                    alg.add_bracket(&[i, dim + k], dim + j, -c).unwrap();
                }
            }
            alg.set_pairing(i, dim + i, 1.0);
        }
        alg
    }

    pub fn parse(text: &str, path: &str) -> Result<Self> {
        Parser::new(path).parse(text)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Renders the algebra back into the text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\n", self.name);
        let mut i = 0;
        while i < self.dim() {
            let d = self.degrees[i];
            let n = self.degrees[i..].iter().take_while(|&&x| x == d).count();
            out.push_str(&format!("slot {d} {n}\n"));
            i += n;
        }
        for (k, map) in self.brackets.iter().enumerate() {
            for (inputs, outs) in map {
                for (j, c) in outs {
                    let idx: Vec<String> = inputs.iter().map(|x| x.to_string()).collect();
                    out.push_str(&format!("l{k} {} {j} {c:?}\n", idx.join(" ")));
                }
            }
        }
        for ((a, b), c) in &self.pairing {
            out.push_str(&format!("pair {a} {b} {c:?}\n"));
        }
        out
    }
}

impl LInfinityAlgebra for StructureAlgebra {
    type Element = StructureElement;

    fn name(&self) -> String {
        self.name.clone()
    }

    fn max_arity(&self) -> usize {
        (1..=MAX_ARITY).rev().find(|&k| !self.brackets[k].is_empty()).unwrap_or(1)
    }

    fn degrees(&self) -> Vec<i32> {
        let mut d = self.degrees.clone();
        d.sort();
        d.dedup();
        d
    }

    fn degree(&self, x: &StructureElement) -> i32 {
        x.degree
    }

    fn zero(&self, degree: i32) -> StructureElement {
        StructureElement {
            degree,
            coeffs: vec![0.0; self.dim()],
        }
    }

    fn combine(&self, degree: i32, terms: &[(f64, &StructureElement)]) -> StructureElement {
        let mut out = self.zero(degree);
        for (s, x) in terms {
            for (o, c) in out.coeffs.iter_mut().zip(&x.coeffs) {
                *o += s * c;
            }
        }
        out
    }

    fn norm(&self, x: &StructureElement) -> f64 {
        x.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    fn bracket_impl(&self, args: &[&StructureElement]) -> Result<StructureElement> {
        let k = args.len();
        let degree = args.iter().map(|a| a.degree).sum::<i32>() + 2 - k as i32;
        let mut out = self.zero(degree);
        if k >= self.brackets.len() {
            return Ok(out);
        }
        let perms = all_permutations(k);
        for (sorted, outs) in &self.brackets[k] {
            let degs: Vec<i32> = sorted.iter().map(|&i| self.degrees[i]).collect();
            // each distinct ordering q = p(sorted) contributes χ(p) ∏ x_i[q_i]
            let mut seen: Vec<Vec<usize>> = Vec::new();
            for p in &perms {
                let q = p.apply(sorted);
                if seen.contains(&q) {
                    continue;
                }
                seen.push(q.clone());
                let w: f64 = q.iter().zip(args).map(|(&b, a)| a.coeffs[b]).product();
                if w == 0.0 {
                    continue;
                }
                let s = reorder_sign(p, &degs, SignConvention::Antisymmetric)? as f64;
                for &(j, c) in outs {
                    out.coeffs[j] += s * w * c;
                }
            }
        }
        Ok(out)
    }

    fn pairing_degree(&self) -> Option<i32> {
        self.has_pairing().then_some(PAIRING_DEGREE)
    }

    fn pairing_density(&self, a: &StructureElement, b: &StructureElement) -> Result<f64> {
        let mut acc = 0.0;
        for (&(i, j), &c) in &self.pairing {
            acc += c * a.coeffs[i] * b.coeffs[j];
            if i != j {
                let s = if (self.degrees[i] * self.degrees[j]).rem_euclid(2) == 1 { -1.0 } else { 1.0 };
                acc += s * c * a.coeffs[j] * b.coeffs[i];
            }
        }
        Ok(acc)
    }
}

struct Parser {
    path: String,
    degrees: Vec<i32>,
    seen_brackets: BTreeMap<(usize, Vec<usize>, usize), usize>,
    seen_pairs: BTreeMap<(usize, usize), usize>,
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

impl Parser {
    fn new(path: &str) -> Self {
        Parser {
            path: path.to_string(),
            degrees: Vec::new(),
            seen_brackets: BTreeMap::new(),
            seen_pairs: BTreeMap::new(),
        }
    }

    fn err(&self, line: usize, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.path.clone(),
            line,
            column,
            message: message.into(),
        }
    }

    fn tokens(line: &str) -> Vec<Token<'_>> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in line.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    out.push(Token {
                        text: &line[s..i],
                        column: line[..s].chars().count() + 1,
                    });
                }
            } else if start.is_none() {
                start = Some(i);
            }
        }
        if let Some(s) = start {
            out.push(Token {
                text: &line[s..],
                column: line[..s].chars().count() + 1,
            });
        }
        out
    }

    fn int<T: std::str::FromStr>(&self, lineno: usize, t: &Token, what: &str) -> Result<T> {
        t.text
            .parse()
            .map_err(|_| self.err(lineno, t.column, format!("expected {what}, found `{}`", t.text)))
    }

    fn index(&self, lineno: usize, t: &Token) -> Result<usize> {
        let i: usize = self.int(lineno, t, "a basis index")?;
        if i >= self.degrees.len() {
            return Err(self.err(
                lineno,
                t.column,
                format!("index {i} out of range (dimension {})", self.degrees.len()),
            ));
        }
        Ok(i)
    }

    fn coeff(&self, lineno: usize, t: &Token) -> Result<f64> {
        let c: f64 = t
            .text
            .parse()
            .map_err(|_| self.err(lineno, t.column, format!("expected a coefficient, found `{}`", t.text)))?;
        if !c.is_finite() {
            return Err(self.err(lineno, t.column, "coefficient must be finite"));
        }
        Ok(c)
    }

    fn parse(mut self, text: &str) -> Result<StructureAlgebra> {
        let mut entries: Vec<(Vec<usize>, usize, f64)> = Vec::new();
        let mut pairs: Vec<(usize, usize, f64)> = Vec::new();
        let mut name = None;
        for (n, raw) in text.lines().enumerate() {
            let lineno = n + 1;
            let line = raw.split('#').next().unwrap_or("");
            if name.is_none() {
                if let Some(rest) = raw.trim().strip_prefix("# name:") {
                    name = Some(rest.trim().to_string());
                }
            }
            let toks = Self::tokens(line);
            let Some(head) = toks.first() else { continue };
            match head.text {
                "slot" => {
                    if !entries.is_empty() || !pairs.is_empty() {
                        return Err(self.err(lineno, head.column, "slot declarations must precede entries"));
                    }
                    if toks.len() != 3 {
                        return Err(self.err(lineno, head.column, "expected `slot <degree> <dim>`"));
                    }
                    let d: i32 = self.int(lineno, &toks[1], "a degree")?;
                    let dim: usize = self.int(lineno, &toks[2], "a dimension")?;
                    if dim == 0 {
                        return Err(self.err(lineno, toks[2].column, "slot dimension must be positive"));
                    }
                    self.degrees.extend(std::iter::repeat_n(d, dim));
                }
                "pair" => {
                    if toks.len() != 4 {
                        return Err(self.err(lineno, head.column, "expected `pair <i> <j> <coeff>`"));
                    }
                    let i = self.index(lineno, &toks[1])?;
                    let j = self.index(lineno, &toks[2])?;
                    let c = self.coeff(lineno, &toks[3])?;
                    let total = self.degrees[i] + self.degrees[j] + PAIRING_DEGREE;
                    if total != 0 {
                        return Err(self.err(
                            lineno,
                            toks[2].column,
                            format!(
                                "pairing degree mismatch: degrees {} + {} must sum to {}",
                                self.degrees[i], self.degrees[j], -PAIRING_DEGREE
                            ),
                        ));
                    }
                    let key = (i.min(j), i.max(j));
                    if let Some(prev) = self.seen_pairs.insert(key, lineno) {
                        return Err(self.err(lineno, head.column, format!("duplicate pairing entry (first on line {prev})")));
                    }
                    pairs.push((i, j, c));
                }
                h if h.starts_with('l') => {
                    let k: usize = h[1..]
                        .parse()
                        .map_err(|_| self.err(lineno, head.column, format!("unknown directive `{h}`")))?;
                    if k == 0 || k > MAX_ARITY {
                        return Err(self.err(lineno, head.column, format!("bracket arity {k} outside 1..={MAX_ARITY}")));
                    }
                    if toks.len() != k + 3 {
                        return Err(self.err(
                            lineno,
                            toks.get(k + 3).or(toks.last()).map(|t| t.column).unwrap_or(1),
                            format!("`l{k}` takes {k} inputs, an output and a coefficient ({} tokens given)", toks.len() - 1),
                        ));
                    }
                    let mut inputs = Vec::with_capacity(k);
                    for t in &toks[1..=k] {
                        inputs.push(self.index(lineno, t)?);
                    }
                    let out = self.index(lineno, &toks[k + 1])?;
                    let c = self.coeff(lineno, &toks[k + 2])?;
                    let expected = inputs.iter().map(|&i| self.degrees[i]).sum::<i32>() + 2 - k as i32;
                    if self.degrees[out] != expected {
                        return Err(self.err(
                            lineno,
                            toks[k + 1].column,
                            format!(
                                "degree mismatch: output b{out} has degree {}, but ℓ_{k} of these inputs has degree {expected}",
                                self.degrees[out]
                            ),
                        ));
                    }
                    // repeated even-degree inputs vanish by antisymmetry
                    for (a, ta) in toks[1..=k].iter().enumerate() {
                        for b in a + 1..k {
                            if inputs[a] == inputs[b] && self.degrees[inputs[a]] % 2 == 0 {
                                return Err(self.err(
                                    lineno,
                                    ta.column,
                                    format!("b{} has even degree and may not repeat in an antisymmetric bracket", inputs[a]),
                                ));
                            }
                        }
                    }
                    let mut sorted = inputs.clone();
                    sorted.sort();
                    if let Some(prev) = self.seen_brackets.insert((k, sorted, out), lineno) {
                        return Err(self.err(lineno, head.column, format!("duplicate bracket entry (first on line {prev})")));
                    }
                    entries.push((inputs, out, c));
                }
                other => {
                    return Err(self.err(lineno, head.column, format!("unknown directive `{other}`")));
                }
            }
        }
        if self.degrees.is_empty() {
            return Err(self.err(1, 1, "no slots declared"));
        }
        let name = name.unwrap_or_else(|| {
            Path::new(&self.path)
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_else(|| "file".into())
        });
        let mut alg = StructureAlgebra::new(name, self.degrees);
        for (inputs, out, c) in entries {
            alg.add_bracket(&inputs, out, c)?;
        }
        for (i, j, c) in pairs {
            alg.set_pairing(i, j, c);
        }
        Ok(alg)
    }
}
