//! Libgober matrix assembly and Alexander polynomial extraction from the
//! global braid monodromy via the reduced Burau representation.

use crate::braid::BraidWord;
use crate::curve::Curve;
use crate::exactalg::{ExactError, LaurentMatrix, LaurentPoly};
use crate::numpoly::DEFAULT_ROOT_TOL;
use crate::tracker::{global_monodromy, TrackError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlexanderError {
    #[error("gcd of minors is not divisible by 1 + t + ... + t^(n-1): inconsistent monodromy")]
    NotDivisible,
    #[error(transparent)]
    Track(#[from] TrackError),
}

/// Vertical stack of burau(w_i) - Id over all monodromy words; N x d with
/// N = r*d and d = n-1.
pub fn libgober_matrix(words: &[BraidWord]) -> LaurentMatrix {
    assert!(!words.is_empty());
    let n = words[0].n();
    assert!(words.iter().all(|w| w.n() == n));
    let id = LaurentMatrix::identity(n - 1);
    let blocks: Vec<LaurentMatrix> = words.iter().map(|w| w.burau().sub(&id)).collect();
    LaurentMatrix::vstack(&blocks)
}

/// Alexander polynomial from a list of monodromy words (finite fibers plus
/// infinity): gcd of maximal minors of the Libgober matrix, divided by
/// 1 + t + ... + t^(n-1), in canonical normalized form.
pub fn alexander_from_words(words: &[BraidWord]) -> Result<LaurentPoly, AlexanderError> {
    let n = words[0].n();
    let matrix = libgober_matrix(words);
    let gcd = matrix.minors_gcd(n - 1);
    let quotient = gcd
        .div_exact(&LaurentPoly::cyclotomic_sum(n))
        .map_err(|e| match e {
            ExactError::NotDivisible => AlexanderError::NotDivisible,
            other => unreachable!("unexpected exact-arithmetic error: {other}"),
        })?;
    Ok(quotient.normalize())
}

/// End-to-end Alexander polynomial of a completely reducible n-gonal curve.
pub fn alexander_polynomial(curve: &Curve) -> Result<LaurentPoly, AlexanderError> {
    alexander_polynomial_with(curve, None, DEFAULT_ROOT_TOL)
}

pub fn alexander_polynomial_with(
    curve: &Curve,
    eps0: Option<f64>,
    tol: f64,
) -> Result<LaurentPoly, AlexanderError> {
    assert!(curve.n() >= 2);
    let results = global_monodromy(curve, eps0, tol)?;
    let words: Vec<BraidWord> = results.into_iter().map(|r| r.word).collect();
    alexander_from_words(&words)
}

/// Cosmetic factorization by trial division against t^k - 1 and t^k + 1,
/// k up to twice the degree; whatever remains is printed verbatim.
pub fn factored_display(p: &LaurentPoly) -> String {
    let p = p.normalize();
    if p.is_zero() {
        return "0".to_string();
    }
    let deg = p.max_deg().unwrap_or(0);
    let mut rest = p;
    let mut factors: Vec<(String, usize)> = Vec::new();
    let mut candidates: Vec<(String, LaurentPoly)> = Vec::new();
    for k in 1..=(2 * deg.max(1)) {
        let mut minus = vec![0i64; k as usize + 1];
        minus[0] = -1;
        minus[k as usize] = 1;
        let mut plus = minus.clone();
        plus[0] = 1;
        let label = if k == 1 { "t".to_string() } else { format!("t^{k}") };
        candidates.push((format!("({label}-1)"), LaurentPoly::from_ints(&minus)));
        candidates.push((format!("({label}+1)"), LaurentPoly::from_ints(&plus)));
    }
    // larger factors first so (t^6-1) is preferred over (t-1)(t^2+t+1)(t+1)
    candidates.reverse();
    for (label, f) in candidates {
        let mut count = 0;
        while let Ok(q) = rest.div_exact(&f) {
            rest = q.normalize();
            count += 1;
        }
        if count > 0 {
            factors.push((label, count));
        }
    }
    if factors.is_empty() {
        return rest.to_string();
    }
    factors.sort_by(|a, b| b.0.len().cmp(&a.0.len()).then(a.0.cmp(&b.0)));
    let mut out = String::new();
    for (label, count) in &factors {
        if *count == 1 {
            out.push_str(label);
        } else {
            out.push_str(&format!("{label}^{count}"));
        }
    }
    if !rest.is_unit() || rest.coeff(0) != num_rational::BigRational::from_integer(1.into()) {
        out.push_str(&format!(" * ({rest})"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::LaurentPoly as LP;

    fn w(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec())
    }

    fn p(cs: &[i64]) -> LP {
        LP::from_ints(cs)
    }

    /// The six monodromy words of the curve (y-x^2)(y-x-1)(y-1).
    fn example_4_1_words() -> Vec<BraidWord> {
        vec![
            w(3, &[1, 1]),
            w(3, &[2, 1, 1, -2]),
            w(3, &[2, 1, 1, -2]),
            w(3, &[2, 2]),
            w(3, &[2, 2]),
            w(3, &[2, 1, 2, 1, 2, 2, 1, 2, 1, 2]),
        ]
    }

    #[test]
    fn libgober_matrix_single_word() {
        // burau(s1^2) - I = [[t^2-1, -t+1], [0, 0]]
        let m = libgober_matrix(&[w(3, &[1, 1])]);
        assert_eq!(m.rows(), 2);
        assert_eq!(m.get(0, 0), &p(&[-1, 0, 1]));
        assert_eq!(m.get(0, 1), &p(&[1, -1]));
        assert_eq!(m.get(1, 0), &LP::zero());
        assert_eq!(m.get(1, 1), &LP::zero());
    }

    #[test]
    fn libgober_matrix_empty_word() {
        let m = libgober_matrix(&[BraidWord::identity(3)]);
        assert_eq!(m.rows(), 2);
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(m.get(r, c), &LP::zero());
            }
        }
    }

    #[test]
    fn libgober_matrix_example_4_1() {
        let m = libgober_matrix(&example_4_1_words());
        assert_eq!((m.rows(), m.cols()), (12, 2));
        let z = LP::zero();
        let expected: [[&LP; 2]; 12] = {
            // rows of the printed 12x2 matrix
            [
                [&p(&[-1, 0, 1]), &p(&[1, -1])],
                [&z, &z],
                [&p(&[-1, 1]), &p(&[0, -1, 1])],
                [&p(&[-1, 1]), &p(&[0, -1, 1])],
                [&p(&[-1, 1]), &p(&[0, -1, 1])],
                [&p(&[-1, 1]), &p(&[0, -1, 1])],
                [&z, &z],
                [&p(&[0, 1, -1]), &p(&[-1, 0, 1])],
                [&z, &z],
                [&p(&[0, 1, -1]), &p(&[-1, 0, 1])],
                [&p(&[-1, 0, 0, 0, 1]), &p(&[0, 0, 0, 0, -1, 1])],
                [&z, &p(&[-1, 0, 0, 0, 0, 0, 1])],
            ]
        };
        for r in 0..12 {
            for c in 0..2 {
                assert_eq!(m.get(r, c), expected[r][c], "entry ({r},{c})");
            }
        }
    }

    #[test]
    fn minors_gcd_of_example_4_1_matrix() {
        let m = libgober_matrix(&example_4_1_words());
        // (t-1)^2 (t^2+t+1)
        let expect = p(&[1, -2, 1]).mul(&p(&[1, 1, 1])).normalize();
        assert_eq!(m.minors_gcd(2), expect);
    }

    #[test]
    fn alexander_from_example_4_1_words() {
        let delta = alexander_from_words(&example_4_1_words()).unwrap();
        assert_eq!(delta, p(&[1, -2, 1]));
    }

    #[test]
    fn alexander_end_to_end_example_4_1() {
        let curve = Curve::parse("(y-x^2)(y-x-1)(y-1)").unwrap();
        let delta = alexander_polynomial(&curve).unwrap();
        assert_eq!(delta, p(&[1, -2, 1]), "got {delta}");
    }

    #[test]
    fn factored_display_examples() {
        assert_eq!(factored_display(&p(&[1, -2, 1])), "(t-1)^2");
        let big = p(&[-1, 0, 0, 0, 0, 0, 1])
            .mul(&p(&[1, 0, 0, 1]))
            .mul(&p(&[-1, 1]));
        let s = factored_display(&big);
        assert!(s.contains("(t^6-1)") && s.contains("(t^3+1)") && s.contains("(t-1)"), "{s}");
    }
}
