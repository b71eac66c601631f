//! Complex floating-point univariate polynomials: arithmetic, evaluation,
//! differentiation, and simultaneous root finding with multiplicity clustering.

use num_complex::Complex64;
use thiserror::Error;

/// Absolute residual tolerance used by [`ComplexPoly::roots`].
pub const DEFAULT_ROOT_TOL: f64 = 1e-10;
/// Relative distance below which two root approximations are merged into one cluster.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("root iteration did not converge after {restarts} restarts")]
    NoConvergence { restarts: usize },
    #[error("cannot take roots of a constant polynomial")]
    ConstantPolynomial,
}

/// Dense univariate polynomial over ℂ. `coeffs[j]` is the coefficient of x^j;
/// trailing zeros are stripped, so the empty list is the zero polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoly {
    coeffs: Vec<Complex64>,
}

/// A group of nearby root approximations treated as one root with multiplicity.
#[derive(Debug, Clone, PartialEq)]
pub struct RootCluster {
    pub location: Complex64,
    pub multiplicity: usize,
    /// The merge radius that was in effect when the cluster formed.
    pub radius: f64,
}

impl ComplexPoly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of a nonzero polynomial; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> ComplexPoly {
        if self.coeffs.len() <= 1 {
            return ComplexPoly::zero();
        }
        ComplexPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(j, &c)| c * (j as f64 + 1.0))
                .collect(),
        )
    }

    pub fn sub(&self, other: &ComplexPoly) -> ComplexPoly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![Complex64::new(0.0, 0.0); len];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[j] += c;
        }
        for (j, &c) in other.coeffs.iter().enumerate() {
            out[j] -= c;
        }
        ComplexPoly::new(out)
    }

    pub fn mul(&self, other: &ComplexPoly) -> ComplexPoly {
        if self.is_zero() || other.is_zero() {
            return ComplexPoly::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPoly::new(out)
    }

    /// Largest coefficient magnitude; the residual scale used by `roots`.
    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max).max(1.0)
    }

    /// All roots with multiplicities, via Aberth–Ehrlich simultaneous iteration
    /// followed by relative-distance clustering at [`DEFAULT_CLUSTER_TOL`].
    pub fn roots(&self, tol: f64) -> Result<Vec<RootCluster>, RootError> {
        self.roots_with(tol, DEFAULT_CLUSTER_TOL)
    }

    pub fn roots_with(&self, tol: f64, cluster_tol: f64) -> Result<Vec<RootCluster>, RootError> {
        let deg = match self.degree() {
            None | Some(0) => return Err(RootError::ConstantPolynomial),
            Some(d) => d,
        };
        let max_restarts = 6;
        for restart in 0..max_restarts {
            if let Some(points) = self.aberth(deg, tol, restart) {
                return Ok(cluster_roots(&points, cluster_tol));
            }
        }
        Err(RootError::NoConvergence { restarts: max_restarts })
    }

    /// One full Aberth–Ehrlich run from a perturbed initial circle.
    /// Returns `None` if it fails to settle.
    fn aberth(&self, deg: usize, tol: f64, restart: usize) -> Option<Vec<Complex64>> {
        let lead = *self.coeffs.last().unwrap();
        // Cauchy bound: all roots lie within 1 + max |a_j / a_deg|.
        let cauchy = 1.0
            + self.coeffs[..deg]
                .iter()
                .map(|c| (c / lead).norm())
                .fold(0.0, f64::max);
        let radius = cauchy * (1.0 + 0.23 * restart as f64);
        let phase = 0.41 + 0.73 * restart as f64;
        let mut z: Vec<Complex64> = (0..deg)
            .map(|k| {
                let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / deg as f64 + phase;
                Complex64::from_polar(radius, theta)
            })
            .collect();

        let dp = self.derivative();
        let scale = self.coeff_scale();
        let max_iter = 400 + 100 * restart;
        let mut converged = false;
        for _ in 0..max_iter {
            let mut max_step = 0.0f64;
            for k in 0..deg {
                let pz = self.eval(z[k]);
                let dpz = dp.eval(z[k]);
                // Newton correction with a tiny kick away from p'(z) = 0.
                let newton = if dpz.norm() > 0.0 {
                    pz / dpz
                } else {
                    Complex64::new(tol.max(1e-12), tol.max(1e-12))
                };
                let mut repulsion = Complex64::new(0.0, 0.0);
                for j in 0..deg {
                    if j != k {
                        let diff = z[k] - z[j];
                        if diff.norm() > 0.0 {
                            repulsion += diff.inv();
                        }
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
                let step = if denom.norm() > 1e-300 { newton / denom } else { newton };
                z[k] -= step;
                let rel = step.norm() / z[k].norm().max(1.0);
                max_step = max_step.max(rel);
            }
            if max_step < 1e-14 {
                converged = true;
                break;
            }
        }
        if !converged {
            // Settled enough if every residual already cleared the tolerance.
            if !z.iter().all(|&zk| self.eval(zk).norm() < tol * scale) {
                return None;
            }
        }
        // Multiple roots stall the stepwise criterion at ~sqrt(eps) accuracy;
        // accept when residuals are small relative to the coefficient scale.
        let loose = tol.max(1e-8);
        if z.iter().all(|&zk| self.eval(zk).norm() <= loose * scale * cauchy.powi(deg as i32).max(1.0)) {
            Some(z)
        } else {
            None
        }
    }
}

/// Greedy single-linkage merge of root approximations within
/// `cluster_tol * max(1, |root|)`; cluster location is the member mean.
fn cluster_roots(points: &[Complex64], cluster_tol: f64) -> Vec<RootCluster> {
    let n = points.len();
    let mut assigned = vec![usize::MAX; n];
    let mut next_cluster = 0usize;
    for i in 0..n {
        if assigned[i] != usize::MAX {
            continue;
        }
        assigned[i] = next_cluster;
        // Grow the cluster transitively.
        let mut changed = true;
        while changed {
            changed = false;
            for j in 0..n {
                if assigned[j] != usize::MAX {
                    continue;
                }
                for k in 0..n {
                    if assigned[k] == next_cluster {
                        let tol_ij = cluster_tol * points[j].norm().max(1.0);
                        if (points[j] - points[k]).norm() <= tol_ij {
                            assigned[j] = next_cluster;
                            changed = true;
                            break;
                        }
                    }
                }
            }
        }
        next_cluster += 1;
    }
    let mut clusters = Vec::with_capacity(next_cluster);
    for c in 0..next_cluster {
        let members: Vec<Complex64> = (0..n).filter(|&i| assigned[i] == c).map(|i| points[i]).collect();
        let mean = members.iter().sum::<Complex64>() / members.len() as f64;
        clusters.push(RootCluster {
            location: mean,
            multiplicity: members.len(),
            radius: cluster_tol * mean.norm().max(1.0),
        });
    }
    clusters.sort_by(|a, b| {
        (a.location.re, a.location.im)
            .partial_cmp(&(b.location.re, b.location.im))
            .unwrap()
    });
    clusters
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_root_of_x2_plus_1() {
        let p = ComplexPoly::from_real(&[1.0, 0.0, 1.0]);
        assert!(p.eval(c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn eval_golden_ratio() {
        // x^2 - x - 1 at the golden ratio
        let p = ComplexPoly::from_real(&[-1.0, -1.0, 1.0]);
        assert!(p.eval(c(1.6180339887, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn eval_zero_poly() {
        assert_eq!(ComplexPoly::zero().eval(c(5.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn derivative_examples() {
        let p = ComplexPoly::from_real(&[0.0, 0.0, 1.0]);
        assert_eq!(p.derivative(), ComplexPoly::from_real(&[0.0, 2.0]));
        let q = ComplexPoly::from_real(&[-1.0, -1.0, 1.0]);
        assert_eq!(q.derivative(), ComplexPoly::from_real(&[-1.0, 2.0]));
        let r = ComplexPoly::from_real(&[7.0]);
        assert!(r.derivative().is_zero());
    }

    #[test]
    fn roots_x2_plus_1() {
        let p = ComplexPoly::from_real(&[1.0, 0.0, 1.0]);
        let roots = p.roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(roots.len(), 2);
        assert!((roots[0].location - c(0.0, -1.0)).norm() < 1e-9);
        assert!((roots[1].location - c(0.0, 1.0)).norm() < 1e-9);
        assert!(roots.iter().all(|r| r.multiplicity == 1));
    }

    #[test]
    fn roots_golden() {
        let p = ComplexPoly::from_real(&[-1.0, -1.0, 1.0]);
        let roots = p.roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(roots.len(), 2);
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((roots[0].location - c(1.0 - phi, 0.0)).norm() < 1e-9);
        assert!((roots[1].location - c(phi, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn roots_double_root() {
        // (x-1)^2
        let p = ComplexPoly::from_real(&[1.0, -2.0, 1.0]);
        let roots = p.roots(DEFAULT_ROOT_TOL).unwrap();
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].multiplicity, 2);
        assert!((roots[0].location - c(1.0, 0.0)).norm() < 1e-6);
    }

    #[test]
    fn roots_of_constant_rejected() {
        let p = ComplexPoly::from_real(&[3.0]);
        assert!(matches!(p.roots(1e-10), Err(RootError::ConstantPolynomial)));
    }

    fn arb_poly() -> impl Strategy<Value = ComplexPoly> {
        (1usize..=8)
            .prop_flat_map(|deg| {
                proptest::collection::vec((-10.0..10.0f64, -10.0..10.0f64), deg + 1)
            })
            .prop_map(|cs| {
                let mut coeffs: Vec<Complex64> =
                    cs.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
                // force nonzero leading coefficient
                if coeffs.last().unwrap().norm() < 0.5 {
                    *coeffs.last_mut().unwrap() = Complex64::new(1.0, 0.3);
                }
                ComplexPoly::new(coeffs)
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn multiplicities_sum_to_degree(p in arb_poly()) {
            let roots = p.roots(DEFAULT_ROOT_TOL).unwrap();
            let total: usize = roots.iter().map(|r| r.multiplicity).sum();
            prop_assert_eq!(total, p.degree().unwrap());
        }

        #[test]
        fn residuals_small_at_cluster_locations(p in arb_poly()) {
            let roots = p.roots(DEFAULT_ROOT_TOL).unwrap();
            let dp = p.derivative();
            for r in &roots {
                let scale = p.coeff_scale() * r.location.norm().max(1.0).powi(p.degree().unwrap() as i32);
                prop_assert!(p.eval(r.location).norm() <= 1e-6 * scale);
                if r.multiplicity == 1 {
                    // simple roots keep the derivative away from zero
                    prop_assert!(dp.eval(r.location).norm() > 1e-8 * scale.max(1.0));
                }
            }
        }

        #[test]
        fn product_reconstruction(p in arb_poly()) {
            let roots = p.roots(DEFAULT_ROOT_TOL).unwrap();
            let mut recon = ComplexPoly::from_real(&[1.0]);
            for r in &roots {
                let factor = ComplexPoly::new(vec![-r.location, Complex64::new(1.0, 0.0)]);
                for _ in 0..r.multiplicity {
                    recon = recon.mul(&factor);
                }
            }
            let lead = *p.coeffs().last().unwrap();
            let scale = p.coeff_scale();
            for (j, &c) in recon.coeffs().iter().enumerate() {
                let target = p.coeffs().get(j).copied().unwrap_or_default() / lead;
                prop_assert!((c - target).norm() <= 1e-5 * (scale / lead.norm()).max(1.0),
                    "coeff {} differs: {} vs {}", j, c, target);
            }
        }
    }
}
