//! Exact arithmetic: Laurent polynomials in t over ℚ, dense matrices of
//! Laurent polynomials, determinants, minors, and polynomial gcd.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("exact division failed: dividend is not a multiple of the divisor")]
    NotDivisible,
}

/// Laurent polynomial over ℚ. `coeffs[j]` is the coefficient of t^(min_deg + j).
/// Canonical form: first and last coefficients nonzero; the zero polynomial has
/// empty coeffs and min_deg = 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_deg: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    pub fn new(min_deg: i64, coeffs: Vec<BigRational>) -> Self {
        let mut p = Self { min_deg, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.min_deg += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.min_deg = 0;
        }
    }

    pub fn zero() -> Self {
        Self { min_deg: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    /// c * t^k
    pub fn monomial(c: BigRational, k: i64) -> Self {
        Self::new(k, vec![c])
    }

    /// Ordinary polynomial from integer coefficients of t^0, t^1, ...
    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(
            0,
            coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_deg(&self) -> i64 {
        self.min_deg
    }

    pub fn max_deg(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.min_deg + self.coeffs.len() as i64 - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, deg: i64) -> BigRational {
        let idx = deg - self.min_deg;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            BigRational::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// True iff the polynomial is a unit ±t^k.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.min_deg.min(other.min_deg);
        let hi = self.max_deg().unwrap().max(other.max_deg().unwrap());
        let mut out = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (j, c) in self.coeffs.iter().enumerate() {
            out[(self.min_deg - lo) as usize + j] += c;
        }
        for (j, c) in other.coeffs.iter().enumerate() {
            out[(other.min_deg - lo) as usize + j] += c;
        }
        LaurentPoly::new(lo, out)
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.min_deg + other.min_deg, out)
    }

    pub fn scale(&self, c: &BigRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            min_deg: self.min_deg,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiply by t^k.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { min_deg: self.min_deg + k, coeffs: self.coeffs.clone() }
    }

    /// Canonical representative up to units ±t^k: min_deg 0, coprime integer
    /// coefficients, positive leading coefficient.
    pub fn normalize(&self) -> LaurentPoly {
        if self.is_zero() {
            return LaurentPoly::zero();
        }
        // clear denominators, divide out integer content
        let denom_lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| lcm(&acc, c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| gcd_int(&acc, c));
        let sign = if ints.last().unwrap().is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let divisor = &content * &sign;
        LaurentPoly {
            min_deg: 0,
            coeffs: ints.iter().map(|c| BigRational::from(c / &divisor)).collect(),
        }
    }

    /// Euclidean gcd, up to units; result in normalized canonical form.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.normalize();
        }
        if other.is_zero() {
            return self.normalize();
        }
        // shift to ordinary polynomials and run the Euclidean algorithm
        let mut a = self.shift(-self.min_deg);
        let mut b = other.shift(-other.min_deg);
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.shift(-r.min_deg);
        }
        a.normalize()
    }

    /// Quotient and remainder of ordinary-polynomial division (both operands
    /// must have min_deg >= 0; remainder degree < divisor degree).
    fn div_rem(&self, divisor: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!divisor.is_zero());
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        let dlead = divisor.coeffs.last().unwrap();
        let ddeg = divisor.max_deg().unwrap();
        while !rem.is_zero() && rem.max_deg().unwrap() >= ddeg {
            let shift = rem.max_deg().unwrap() - ddeg;
            let factor = rem.coeffs.last().unwrap() / dlead;
            let term = LaurentPoly::monomial(factor, shift);
            rem = rem.sub(&term.mul(divisor));
            quot = quot.add(&term);
        }
        (quot, rem)
    }

    /// Exact division: returns q with self = q * divisor, else `NotDivisible`.
    pub fn div_exact(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, ExactError> {
        if divisor.is_zero() {
            return Err(ExactError::NotDivisible);
        }
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let a = self.shift(-self.min_deg);
        let b = divisor.shift(-divisor.min_deg);
        let (q, r) = a.div_rem(&b);
        if !r.is_zero() {
            return Err(ExactError::NotDivisible);
        }
        Ok(q.shift(self.min_deg - divisor.min_deg))
    }

    /// 1 + t + ... + t^(n-1)
    pub fn cyclotomic_sum(n: usize) -> LaurentPoly {
        LaurentPoly::new(0, vec![BigRational::one(); n])
    }
}

fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        BigInt::zero()
    } else {
        (a * b).abs() / gcd_int(a, b)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let deg = self.min_deg + j as i64;
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = !abs.is_one() || deg == 0;
            if show_coeff {
                write!(f, "{}", abs)?;
            }
            match deg {
                0 => {}
                1 => write!(f, "{}t", if show_coeff { "*" } else { "" })?,
                d => write!(f, "{}t^{}", if show_coeff { "*" } else { "" }, d)?,
            }
        }
        Ok(())
    }
}

/// Dense row-major matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<LaurentPoly>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows*cols");
        Self { rows, cols, entries }
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = LaurentPoly::one();
        }
        Self { rows: n, cols: n, entries }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![LaurentPoly::zero(); rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &LaurentPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: LaurentPoly) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = LaurentMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = LaurentPoly::zero();
                for k in 0..self.cols {
                    acc = acc.add(&self.get(i, k).mul(other.get(k, j)));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn sub(&self, other: &LaurentMatrix) -> LaurentMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    /// Stack matrices with equal column counts vertically.
    pub fn vstack(blocks: &[LaurentMatrix]) -> LaurentMatrix {
        assert!(!blocks.is_empty());
        let cols = blocks[0].cols;
        assert!(blocks.iter().all(|b| b.cols == cols));
        let rows = blocks.iter().map(|b| b.rows).sum();
        let entries = blocks.iter().flat_map(|b| b.entries.iter().cloned()).collect();
        LaurentMatrix { rows, cols, entries }
    }

    /// Exact determinant by cofactor expansion along the first row.
    pub fn det(&self) -> Result<LaurentPoly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.det_unchecked())
    }

    fn det_unchecked(&self) -> LaurentPoly {
        match self.rows {
            0 => LaurentPoly::one(),
            1 => self.get(0, 0).clone(),
            2 => self
                .get(0, 0)
                .mul(self.get(1, 1))
                .sub(&self.get(0, 1).mul(self.get(1, 0))),
            n => {
                let mut acc = LaurentPoly::zero();
                for j in 0..n {
                    let piv = self.get(0, j);
                    if piv.is_zero() {
                        continue;
                    }
                    let minor = self.submatrix(0, j);
                    let term = piv.mul(&minor.det_unchecked());
                    acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
                }
                acc
            }
        }
    }

    fn submatrix(&self, skip_row: usize, skip_col: usize) -> LaurentMatrix {
        let entries = (0..self.rows)
            .filter(|&r| r != skip_row)
            .flat_map(|r| {
                (0..self.cols)
                    .filter(|&c| c != skip_col)
                    .map(move |c| self.get(r, c).clone())
            })
            .collect();
        LaurentMatrix { rows: self.rows - 1, cols: self.cols - 1, entries }
    }

    /// Gcd of all d×d minors of a matrix with exactly d columns, in canonical
    /// form. Row subsets containing an all-zero row are skipped; short-circuits
    /// once the running gcd becomes a unit.
    pub fn minors_gcd(&self, d: usize) -> LaurentPoly {
        assert_eq!(self.cols, d, "minors_gcd expects a matrix with exactly d columns");
        assert!(self.rows >= d, "need at least d rows");
        let nonzero_rows: Vec<usize> = (0..self.rows)
            .filter(|&r| (0..self.cols).any(|c| !self.get(r, c).is_zero()))
            .collect();
        let mut acc = LaurentPoly::zero();
        if nonzero_rows.len() < d {
            return acc;
        }
        for combo in nonzero_rows.iter().combinations(d) {
            let entries = combo
                .iter()
                .flat_map(|&&r| (0..d).map(move |c| self.get(r, c).clone()))
                .collect();
            let minor = LaurentMatrix { rows: d, cols: d, entries }.det_unchecked();
            if minor.is_zero() {
                continue;
            }
            acc = acc.gcd(&minor);
            if acc.is_unit() {
                return acc.normalize();
            }
        }
        acc.normalize()
    }
}
