//! Curve model for completely reducible n-gonal curves: text parser, singular
//! fibers, and pairwise intersection multiplicities.
//!
//! Accepted grammar (whitespace insignificant):
//!
//! ```text
//! curve   := factor+ | assign (";" assign)*
//! factor  := "(" "y" (("+"|"-") poly)? ")"
//! assign  := "y" index "=" poly
//! poly    := term (("+"|"-") term)*
//! term    := coef? ("x" ("^" uint)?)?
//! coef    := rational | rational? "i" | "(" rational ("+"|"-") rational "i" ")"
//! ```
//!
//! A factor `(y+1)` is the component y = -1, i.e. the factor y - (-1).

use crate::numpoly::{ComplexPoly, RootError, DEFAULT_CLUSTER_TOL, DEFAULT_ROOT_TOL};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("duplicate component: components {first} and {second} are identical")]
    DuplicateComponent { first: usize, second: usize },
    #[error("curve is not reduced: components {i} and {j} are numerically identical")]
    NonReduced { i: usize, j: usize },
    #[error("x = {x} is not within tolerance of a singular fiber of the pair ({i},{j})")]
    NotAFiber { i: usize, j: usize, x: Complex64 },
    #[error(transparent)]
    Roots(#[from] RootError),
}

/// Completely reducible n-gonal curve (y - y_1(x))···(y - y_n(x)) = 0.
#[derive(Debug, Clone)]
pub struct Curve {
    components: Vec<ComplexPoly>,
    source_text: String,
}

/// One singular fiber: its x-location and the component pairs meeting over it,
/// each with the vanishing order of y_i - y_j at x.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularFiber {
    pub x: Complex64,
    /// (i, j, multiplicity) with i < j.
    pub pairs: Vec<(usize, usize, usize)>,
}

impl Curve {
    pub fn new(components: Vec<ComplexPoly>) -> Result<Self, CurveError> {
        for i in 0..components.len() {
            for j in (i + 1)..components.len() {
                if components[i] == components[j] {
                    return Err(CurveError::DuplicateComponent { first: i, second: j });
                }
            }
        }
        Ok(Self { components, source_text: String::new() })
    }

    pub fn parse(text: &str) -> Result<Self, CurveError> {
        let components = Parser::new(text).parse_curve()?;
        let mut curve = Curve::new(components)?;
        curve.source_text = text.to_string();
        Ok(curve)
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[ComplexPoly] {
        &self.components
    }

    pub fn source_text(&self) -> &str {
        &self.source_text
    }

    /// y_i - y_j
    pub fn difference(&self, i: usize, j: usize) -> ComplexPoly {
        self.components[i].sub(&self.components[j])
    }

    /// All singular fibers: roots of every pairwise difference, merged across
    /// pairs within `tol * max(1, |x|)` and sorted by (Re, Im).
    pub fn singular_fibers(&self, tol: f64) -> Result<Vec<SingularFiber>, CurveError> {
        assert!(self.n() >= 2, "need at least two components");
        let merge_tol = tol.max(DEFAULT_CLUSTER_TOL);
        let mut fibers: Vec<SingularFiber> = Vec::new();
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                let diff = self.difference(i, j);
                if diff.is_zero() {
                    return Err(CurveError::NonReduced { i, j });
                }
                if diff.degree() == Some(0) {
                    continue; // constant nonzero difference: the pair never meets
                }
                for cluster in diff.roots(tol)? {
                    let existing = fibers.iter_mut().find(|f| {
                        (f.x - cluster.location).norm()
                            <= merge_tol * cluster.location.norm().max(1.0)
                    });
                    match existing {
                        Some(f) => f.pairs.push((i, j, cluster.multiplicity)),
                        None => fibers.push(SingularFiber {
                            x: cluster.location,
                            pairs: vec![(i, j, cluster.multiplicity)],
                        }),
                    }
                }
            }
        }
        fibers.sort_by(|a, b| (a.x.re, a.x.im).partial_cmp(&(b.x.re, b.x.im)).unwrap());
        Ok(fibers)
    }

    /// Vanishing order of y_i - y_j at x0 (must be within tolerance of a root).
    pub fn intersection_multiplicity(
        &self,
        i: usize,
        j: usize,
        x0: Complex64,
        tol: f64,
    ) -> Result<usize, CurveError> {
        assert!(i < j && j < self.n());
        let diff = self.difference(i, j);
        if diff.is_zero() {
            return Err(CurveError::NonReduced { i, j });
        }
        if diff.degree() == Some(0) {
            return Err(CurveError::NotAFiber { i, j, x: x0 });
        }
        let merge_tol = tol.max(DEFAULT_CLUSTER_TOL);
        for cluster in diff.roots(tol)? {
            if (cluster.location - x0).norm() <= merge_tol * x0.norm().max(1.0) * 10.0 {
                return Ok(cluster.multiplicity);
            }
        }
        Err(CurveError::NotAFiber { i, j, x: x0 })
    }

    /// Singular fibers at the default tolerance.
    pub fn singular_fibers_default(&self) -> Result<Vec<SingularFiber>, CurveError> {
        self.singular_fibers(DEFAULT_ROOT_TOL)
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Self { text: text.as_bytes(), pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CurveError> {
        Err(CurveError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn expect(&mut self, c: u8) -> Result<(), CurveError> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => self.err(format!("expected '{}', found '{}'", c as char, got as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn parse_curve(&mut self) -> Result<Vec<ComplexPoly>, CurveError> {
        match self.peek() {
            Some(b'(') => self.parse_factored(),
            Some(b'y') => self.parse_assign_list(),
            Some(c) => self.err(format!("expected '(' or 'y', found '{}'", c as char)),
            None => self.err("empty curve description"),
        }
    }

    fn parse_factored(&mut self) -> Result<Vec<ComplexPoly>, CurveError> {
        let mut components = Vec::new();
        while self.peek() == Some(b'(') {
            self.expect(b'(')?;
            self.expect(b'y')?;
            let comp = match self.peek() {
                Some(b')') => ComplexPoly::zero(),
                Some(b'+' | b'-') => {
                    // "(y - x - 1)" reads as y - (x + 1): the whole signed tail
                    // is subtracted from y, so the component is its negation
                    let tail = self.parse_poly()?;
                    negate(&tail)
                }
                Some(c) => return self.err(format!("expected '+', '-' or ')', found '{}'", c as char)),
                None => return self.err("unterminated factor"),
            };
            self.expect(b')')?;
            components.push(comp);
        }
        if components.is_empty() {
            return self.err("expected at least one factor");
        }
        self.end()?;
        Ok(components)
    }

    fn parse_assign_list(&mut self) -> Result<Vec<ComplexPoly>, CurveError> {
        let mut components = Vec::new();
        loop {
            self.expect(b'y')?;
            // the index is syntactic only; components stay in input order
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            self.expect(b'=')?;
            components.push(self.parse_poly()?);
            if self.peek() == Some(b';') {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.end()?;
        Ok(components)
    }

    fn end(&mut self) -> Result<(), CurveError> {
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected trailing input '{}'", c as char));
        }
        Ok(())
    }

    fn parse_poly(&mut self) -> Result<ComplexPoly, CurveError> {
        let mut coeffs: Vec<Complex64> = Vec::new();
        let mut sign = 1.0;
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
            }
            Some(b'-') => {
                self.pos += 1;
                sign = -1.0;
            }
            _ => {}
        }
        loop {
            let (coef, power) = self.parse_term()?;
            if coeffs.len() <= power {
                coeffs.resize(power + 1, Complex64::new(0.0, 0.0));
            }
            coeffs[power] += coef * sign;
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1.0;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1.0;
                }
                _ => break,
            }
        }
        Ok(ComplexPoly::new(coeffs))
    }

    /// One term: coefficient and x-power.
    fn parse_term(&mut self) -> Result<(Complex64, usize), CurveError> {
        let coef = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'(' || c == b'i' || c == b'.' => {
                Some(self.parse_coef()?)
            }
            _ => None,
        };
        // tolerate an explicit '*'
        if self.peek() == Some(b'*') {
            self.pos += 1;
        }
        let power = if self.peek() == Some(b'x') {
            self.pos += 1;
            if self.peek() == Some(b'^') {
                self.pos += 1;
                self.parse_uint()?
            } else {
                1
            }
        } else {
            0
        };
        match coef {
            Some(c) => Ok((c, power)),
            None if power > 0 => Ok((Complex64::new(1.0, 0.0), power)),
            None => self.err("expected a coefficient or 'x'"),
        }
    }

    fn parse_coef(&mut self) -> Result<Complex64, CurveError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let re = self.parse_rational()?;
                let sign = match self.bump() {
                    Some(b'+') => 1.0,
                    Some(b'-') => -1.0,
                    _ => return self.err("expected '+' or '-' in complex literal"),
                };
                let im = if self.peek() == Some(b'i') { 1.0 } else { self.parse_rational()? };
                self.expect(b'i')?;
                self.expect(b')')?;
                Ok(Complex64::new(re, sign * im))
            }
            Some(b'i') => {
                self.pos += 1;
                Ok(Complex64::new(0.0, 1.0))
            }
            _ => {
                let v = self.parse_rational()?;
                if self.peek() == Some(b'i') {
                    self.pos += 1;
                    Ok(Complex64::new(0.0, v))
                } else {
                    Ok(Complex64::new(v, 0.0))
                }
            }
        }
    }

    /// Integer, fraction a/b, or decimal.
    fn parse_rational(&mut self) -> Result<f64, CurveError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len()
            && (self.text[self.pos].is_ascii_digit() || self.text[self.pos] == b'.')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let numer: f64 = std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| CurveError::Syntax { pos: start, msg: "invalid number".into() })?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let dstart = self.pos;
            while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if dstart == self.pos {
                return self.err("expected a denominator");
            }
            let denom: f64 = std::str::from_utf8(&self.text[dstart..self.pos])
                .unwrap()
                .parse()
                .unwrap();
            if denom == 0.0 {
                return self.err("zero denominator");
            }
            Ok(numer / denom)
        } else {
            Ok(numer)
        }
    }

    fn parse_uint(&mut self) -> Result<usize, CurveError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an exponent");
        }
        std::str::from_utf8(&self.text[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| CurveError::Syntax { pos: start, msg: "invalid exponent".into() })
    }
}

fn negate(p: &ComplexPoly) -> ComplexPoly {
    ComplexPoly::new(p.coeffs().iter().map(|&c| -c).collect())
}
