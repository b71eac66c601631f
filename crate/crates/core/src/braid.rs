//! Braid words on n strands, the Artin action on the free group (used as a
//! faithful equality test), and the reduced Burau representation.

use crate::exactalg::{LaurentMatrix, LaurentPoly};
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Word in B_n. Letter k (1-based) is the generator σ_k, -k its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(n: usize, letters: Vec<i32>) -> Self {
        assert!(n >= 1);
        assert!(
            letters.iter().all(|&l| l != 0 && (l.unsigned_abs() as usize) < n),
            "letters must satisfy 1 <= |k| <= n-1"
        );
        Self { n, letters }
    }

    pub fn identity(n: usize) -> Self {
        Self { n, letters: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Push a letter, cancelling an adjacent inverse pair.
    pub fn push(&mut self, letter: i32) {
        debug_assert!(letter != 0 && (letter.unsigned_abs() as usize) < self.n);
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for &l in &other.letters {
            out.push(l);
        }
        out
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    /// Image under abelianization B_n -> Z.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&l| l.signum() as i64).sum()
    }

    /// Apply the word to a free-group word, first letter acting first.
    pub fn artin_action(&self, g: &FreeWord) -> FreeWord {
        let mut out = g.clone();
        for &l in &self.letters {
            out = apply_generator(l, &out);
        }
        out
    }

    /// Faithful equality test via the Artin action on all generators.
    pub fn equal(&self, other: &BraidWord) -> bool {
        assert_eq!(self.n, other.n);
        (1..=self.n).all(|i| {
            let g = FreeWord::generator(i as i32);
            self.artin_action(&g) == other.artin_action(&g)
        })
    }

    /// True iff the word induces a braid automorphism of F_n: every generator
    /// maps to a conjugate of a generator and α₁···αₙ is fixed.
    pub fn is_braid_automorphism(&self) -> bool {
        let all_fixed = {
            let rho = FreeWord::new((1..=self.n as i32).collect());
            self.artin_action(&rho) == rho
        };
        all_fixed
            && (1..=self.n as i32).all(|i| {
                self.artin_action(&FreeWord::generator(i)).is_conjugate_of_generator()
            })
    }

    /// Reduced Burau matrix, dimension (n-1)x(n-1), entries in ℚ[t,t⁻¹].
    /// Letters act like function composition: the first letter's matrix is the
    /// rightmost factor, which reproduces the printed monodromy matrices.
    pub fn burau(&self) -> LaurentMatrix {
        assert!(self.n >= 2);
        let mut acc = LaurentMatrix::identity(self.n - 1);
        for &l in &self.letters {
            acc = burau_generator(self.n, l).mul(&acc);
        }
        acc
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        // run-length collapse into "s2^-1 s1^2 s2" style
        let mut i = 0;
        let mut first = true;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let exp = l.signum() as i64 * run as i64;
            if exp == 1 {
                write!(f, "s{}", l.abs())?;
            } else {
                write!(f, "s{}^{}", l.abs(), exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Freely reduced word in F_n. Letter i (1-based) is αᵢ, -i its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeWord {
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn new(letters: Vec<i32>) -> Self {
        let mut out = FreeWord { letters: Vec::with_capacity(letters.len()) };
        for l in letters {
            out.push(l);
        }
        out
    }

    pub fn identity() -> Self {
        FreeWord { letters: Vec::new() }
    }

    pub fn generator(i: i32) -> Self {
        assert!(i != 0);
        FreeWord { letters: vec![i] }
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    fn push(&mut self, letter: i32) {
        debug_assert!(letter != 0);
        if self.letters.last() == Some(&-letter) {
            self.letters.pop();
        } else {
            self.letters.push(letter);
        }
    }

    fn extend(&mut self, letters: &[i32]) {
        for &l in letters {
            self.push(l);
        }
    }

    /// True iff the reduced word has the shape u·αⱼ·u⁻¹ for some generator αⱼ.
    pub fn is_conjugate_of_generator(&self) -> bool {
        let len = self.letters.len();
        if len % 2 == 0 {
            return false;
        }
        let mid = len / 2;
        if self.letters[mid] <= 0 {
            return false;
        }
        (0..mid).all(|i| self.letters[i] == -self.letters[len - 1 - i])
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for (k, &l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if l > 0 {
                write!(f, "a{}", l)?;
            } else {
                write!(f, "a{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

/// σ_k: α_k ↦ α_k α_{k+1} α_k⁻¹, α_{k+1} ↦ α_k (inverse letters invert this),
/// applied letterwise with eager free reduction.
fn apply_generator(letter: i32, w: &FreeWord) -> FreeWord {
    let k = letter.abs();
    let mut out = FreeWord::identity();
    for &l in &w.letters {
        let i = l.abs();
        let img: Vec<i32> = if letter > 0 {
            if i == k {
                if l > 0 { vec![k, k + 1, -k] } else { vec![k, -(k + 1), -k] }
            } else if i == k + 1 {
                vec![l.signum() * k]
            } else {
                vec![l]
            }
        } else {
            // σ_k⁻¹: α_k ↦ α_{k+1}, α_{k+1} ↦ α_{k+1}⁻¹ α_k α_{k+1}
            if i == k {
                vec![l.signum() * (k + 1)]
            } else if i == k + 1 {
                if l > 0 { vec![-(k + 1), k, k + 1] } else { vec![-(k + 1), -k, k + 1] }
            } else {
                vec![l]
            }
        };
        out.extend(&img);
    }
    out
}

/// Reduced Burau matrix of a single generator or inverse generator.
fn burau_generator(n: usize, letter: i32) -> LaurentMatrix {
    let d = n - 1;
    let k = letter.unsigned_abs() as usize; // 1-based generator index
    let one = LaurentPoly::one();
    let t = LaurentPoly::monomial(BigRational::one(), 1);
    let neg_t = t.neg();
    let t_inv = LaurentPoly::monomial(BigRational::one(), -1);
    let neg_t_inv = t_inv.neg();
    let mut m = LaurentMatrix::identity(d);
    if d == 1 {
        // n = 2 degenerates to the 1x1 matrix (-t)
        m.set(0, 0, if letter > 0 { neg_t } else { neg_t_inv });
        return m;
    }
    // rows/cols are 0-based; generator k touches indices k-2..k of the d-dim space
    if letter > 0 {
        if k == 1 {
            m.set(0, 0, neg_t);
            m.set(0, 1, one);
        } else if k == n - 1 {
            m.set(d - 1, d - 2, t);
            m.set(d - 1, d - 1, neg_t);
        } else {
            let r = k - 1;
            m.set(r, r - 1, t);
            m.set(r, r, neg_t);
            m.set(r, r + 1, one);
        }
    } else if k == 1 {
        m.set(0, 0, neg_t_inv);
        m.set(0, 1, t_inv);
    } else if k == n - 1 {
        m.set(d - 1, d - 2, one);
        m.set(d - 1, d - 1, neg_t_inv);
    } else {
        let r = k - 1;
        m.set(r, r - 1, one);
        m.set(r, r, neg_t_inv);
        m.set(r, r + 1, t_inv);
    }
    m
}
