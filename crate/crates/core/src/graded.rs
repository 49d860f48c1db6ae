//! Degree bookkeeping: permutation signs, Koszul signs and shuffles.
//!
//! Permutations act on sequences by position: applying `p` to `x` yields
//! `y[i] = x[p[i]]`. With that convention the Koszul sign of reordering a
//! sequence of homogeneous elements is a cocycle:
//! `koszul(p.then(q), d) == koszul(q, p.apply(d)) * koszul(p, d)`.

use crate::error::{Error, Result};

/// A bijection on `{0, .., n-1}`, stored as the list of images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

/// Which sign rule a graded reordering uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    /// Koszul sign only: `u ⊗ v = (-1)^{|u||v|} v ⊗ u`.
    Symmetric,
    /// Koszul sign times the permutation sign. Brackets of an L∞-algebra
    /// are graded antisymmetric in this sense.
    Antisymmetric,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::Validation(format!(
                    "{images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// The transposition of positions `i` and `j` in `S_n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Self { images }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Reorders `xs` so that slot `i` of the result holds `xs[self[i]]`.
    pub fn apply<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| xs[i].clone()).collect()
    }

    /// The permutation "apply `self`, then apply `next`".
    pub fn then(&self, next: &Permutation) -> Permutation {
        assert_eq!(self.len(), next.len(), "permutation sizes differ");
        Permutation {
            images: next.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    /// Number of pairs `i < j` with `self[i] > self[j]`.
    pub fn inversions(&self) -> usize {
        let n = self.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }
}

impl std::ops::Index<usize> for Permutation {
    type Output = usize;

    fn index(&self, i: usize) -> &usize {
        &self.images[i]
    }
}

pub fn perm_sign(p: &Permutation) -> i32 {
    if p.inversions().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Sign picked up when the homogeneous elements with degrees `degrees` are
/// reordered by `p` under the symmetric Koszul rule.
pub fn koszul_sign(p: &Permutation, degrees: &[i32]) -> Result<i32> {
    if p.len() != degrees.len() {
        return Err(Error::Validation(format!(
            "permutation of length {} applied to {} degrees",
            p.len(),
            degrees.len()
        )));
    }
    let n = p.len();
    let mut odd = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (p[i], p[j]);
            if a > b && (degrees[a] * degrees[b]).rem_euclid(2) == 1 {
                odd += 1;
            }
        }
    }
    Ok(if odd.is_multiple_of(2) { 1 } else { -1 })
}

/// Reordering sign under the chosen convention.
pub fn reorder_sign(p: &Permutation, degrees: &[i32], convention: SignConvention) -> Result<i32> {
    let k = koszul_sign(p, degrees)?;
    Ok(match convention {
        SignConvention::Symmetric => k,
        SignConvention::Antisymmetric => k * perm_sign(p),
    })
}

/// A `(p, q)`-unshuffle: the first `p` output slots and the last `q` output
/// slots each read increasing input positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub perm: Permutation,
    pub split: usize,
}

impl Shuffle {
    pub fn first(&self) -> &[usize] {
        &self.perm.images[..self.split]
    }

    pub fn second(&self) -> &[usize] {
        &self.perm.images[self.split..]
    }

    /// Sign of this shuffle for arguments of the given degrees.
    pub fn sign(&self, degrees: &[i32], convention: SignConvention) -> i32 {
        reorder_sign(&self.perm, degrees, convention).expect("shuffle length matches degrees")
    }
}

/// All `(p, q)`-shuffles in lexicographic order of the first block.
pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    let n = p + q;
    let mut out = Vec::new();
    let mut first = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, p: usize, first: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if first.len() == p {
            out.push(first.clone());
            return;
        }
        for i in start..n {
            first.push(i);
            rec(i + 1, n, p, first, out);
            first.pop();
        }
    }
    let mut blocks = Vec::new();
    rec(0, n, p, &mut first, &mut blocks);
    for block in blocks {
        let mut images = block.clone();
        images.extend((0..n).filter(|i| !block.contains(i)));
        out.push(Shuffle {
            perm: Permutation { images },
            split: p,
        });
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation {
            images: current.clone(),
        });
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_inversions(images: &[usize]) -> usize {
        let mut c = 0;
        for i in 0..images.len() {
            for j in 0..images.len() {
                if i < j && images[i] > images[j] {
                    c += 1;
                }
            }
        }
        c
    }

    #[test]
    fn perm_sign_examples() {
        assert_eq!(perm_sign(&Permutation::identity(3)), 1);
        assert_eq!(perm_sign(&Permutation::transposition(2, 0, 1)), -1);
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert_eq!(brute_inversions(p.images()), 2);
        assert_eq!(perm_sign(&p), 1);
    }

    #[test]
    fn malformed_permutations_are_rejected() {
        assert!(Permutation::new(vec![0, 0, 1]).is_err());
        assert!(Permutation::new(vec![0, 3]).is_err());
    }

    #[test]
    fn koszul_swap_of_odd_elements() {
        let swap = Permutation::transposition(2, 0, 1);
        assert_eq!(koszul_sign(&swap, &[1, 1]).unwrap(), -1);
        assert_eq!(koszul_sign(&swap, &[0, 2]).unwrap(), 1);
        assert_eq!(koszul_sign(&swap, &[-1, 3]).unwrap(), -1);
        assert!(koszul_sign(&swap, &[1]).is_err());
    }

    #[test]
    fn koszul_three_cycle_via_transpositions() {
        // (2,0,1) = swap(1,2) after swap(0,1) applied to positions
        let cycle = Permutation::new(vec![2, 0, 1]).unwrap();
        let degrees = [1, 1, 1];
        let t01 = Permutation::transposition(3, 0, 1);
        let t12 = Permutation::transposition(3, 1, 2);
        let composed = t12.then(&t01);
        assert_eq!(composed, cycle);
        let via_parts = koszul_sign(&t01, &t12.apply(&degrees)).unwrap()
            * koszul_sign(&t12, &degrees).unwrap();
        assert_eq!(koszul_sign(&cycle, &degrees).unwrap(), via_parts);
        assert_eq!(via_parts, 1);
    }

    #[test]
    fn shuffle_counts_and_order() {
        assert_eq!(shuffles(2, 1).len(), 3);
        let s = shuffles(0, 4);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].perm, Permutation::identity(4));
        let firsts: Vec<Vec<usize>> = shuffles(2, 1).iter().map(|s| s.first().to_vec()).collect();
        assert_eq!(firsts, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
    }

    #[test]
    fn shuffles_2_2_match_filtered_s4() {
        let filtered: Vec<Permutation> = all_permutations(4)
            .into_iter()
            .filter(|p| p[0] < p[1] && p[2] < p[3])
            .collect();
        assert_eq!(filtered.len(), 6);
        let ours: Vec<Permutation> = shuffles(2, 2).into_iter().map(|s| s.perm).collect();
        assert_eq!(ours, filtered);
    }

    #[test]
    fn binomial_and_factorial() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(factorial(4), 24.0);
        assert_eq!(all_permutations(4).len(), 24);
    }
}
