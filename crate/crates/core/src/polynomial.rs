//! Sparse homogeneous multivariate polynomials and their univariate restrictions.

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Monomial {
    pub coef: f64,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    nvars: usize,
    degree: u32,
    terms: Vec<Monomial>,
}

impl Polynomial {
    /// Builds a homogeneous polynomial from `(coefficient, exponents)` pairs.
    /// Like terms are merged and zero coefficients dropped.
    pub fn new(nvars: usize, terms: Vec<(f64, Vec<u32>)>) -> Result<Self> {
        if nvars == 0 {
            return Err(Error::Invalid("polynomial needs at least one variable".into()));
        }
        let mut merged: Vec<Monomial> = Vec::new();
        for (coef, exponents) in terms {
            if exponents.len() != nvars {
                return Err(Error::DimensionMismatch {
                    expected: nvars,
                    got: exponents.len(),
                });
            }
            if !coef.is_finite() {
                return Err(Error::Invalid("non-finite polynomial coefficient".into()));
            }
            match merged.iter_mut().find(|m| m.exponents == exponents) {
                Some(m) => m.coef += coef,
                None => merged.push(Monomial { coef, exponents }),
            }
        }
        merged.retain(|m| m.coef != 0.0);
        let degree = match merged.first() {
            Some(m) => m.exponents.iter().sum(),
            None => return Err(Error::Invalid("zero polynomial".into())),
        };
        if merged
            .iter()
            .any(|m| m.exponents.iter().sum::<u32>() != degree)
        {
            return Err(Error::Invalid("polynomial is not homogeneous".into()));
        }
        if degree == 0 {
            return Err(Error::Invalid("constant polynomial".into()));
        }
        Ok(Self {
            nvars,
            degree,
            terms: merged,
        })
    }

    /// `x_1 x_2 ... x_n`
    pub fn coordinate_product(n: usize) -> Self {
        Self::new(n, vec![(1.0, vec![1; n])]).expect("valid product polynomial")
    }

    /// `x_1^2 - x_2^2 - ... - x_n^2`, hyperbolic in direction `e_1`.
    pub fn lorentz(n: usize) -> Self {
        let mut terms = Vec::with_capacity(n);
        for i in 0..n {
            let mut e = vec![0; n];
            e[i] = 2;
            terms.push((if i == 0 { 1.0 } else { -1.0 }, e));
        }
        Self::new(n, terms).expect("valid Lorentz polynomial")
    }

    /// Elementary symmetric polynomial of degree `k` in `n` variables,
    /// hyperbolic in the all-ones direction.
    pub fn elementary_symmetric(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Invalid(format!("need 1 <= k <= n, got k={k}, n={n}")));
        }
        let mut terms = Vec::new();
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mut e = vec![0; n];
            for &i in &idx {
                e[i] = 1;
            }
            terms.push((1.0, e));
            // next combination
            let mut pos = k;
            while pos > 0 {
                pos -= 1;
                if idx[pos] < n - k + pos {
                    idx[pos] += 1;
                    for j in pos + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
                if pos == 0 {
                    return Self::new(n, terms);
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn eval(&self, x: &Vector) -> f64 {
        self.terms
            .iter()
            .map(|m| m.coef * monomial_value(&m.exponents, x, &[]))
            .sum()
    }

    pub fn gradient(&self, x: &Vector) -> Vector {
        let mut g = Vector::zeros(self.nvars);
        for m in &self.terms {
            for i in 0..self.nvars {
                if m.exponents[i] > 0 {
                    g[i] += m.coef * monomial_value(&m.exponents, x, &[i]);
                }
            }
        }
        g
    }

    pub fn hessian(&self, x: &Vector) -> Matrix {
        let n = self.nvars;
        let mut h = Matrix::zeros(n, n);
        for m in &self.terms {
            for i in 0..n {
                if m.exponents[i] == 0 {
                    continue;
                }
                for j in i..n {
                    if m.exponents[j] == 0 || (i == j && m.exponents[i] < 2) {
                        continue;
                    }
                    let v = m.coef * monomial_value(&m.exponents, x, &[i, j]);
                    h[(i, j)] += v;
                    if i != j {
                        h[(j, i)] += v;
                    }
                }
            }
        }
        h
    }

    /// Exact coefficients of `t -> p(x + t d)`.
    pub fn restrict(&self, x: &Vector, d: &Vector) -> UnivariateRestriction {
        let mut coefficients = vec![0.0; self.degree as usize + 1];
        for m in &self.terms {
            let mut acc = vec![m.coef];
            for (i, &a) in m.exponents.iter().enumerate() {
                for _ in 0..a {
                    acc = poly_mul(&acc, &[x[i], d[i]]);
                }
            }
            for (k, c) in acc.into_iter().enumerate() {
                coefficients[k] += c;
            }
        }
        UnivariateRestriction {
            coefficients,
            base: x.clone(),
            direction: d.clone(),
        }
    }
}

/// Value of the (differentiated) monomial `prod x_i^{a_i}`; `diff` lists the
/// variables to differentiate by, once each.
fn monomial_value(exps: &[u32], x: &Vector, diff: &[usize]) -> f64 {
    let mut v = 1.0;
    for (i, &a) in exps.iter().enumerate() {
        let k = diff.iter().filter(|&&j| j == i).count() as u32;
        if k > a {
            return 0.0;
        }
        let mut factor = 1.0;
        for r in 0..k {
            factor *= (a - r) as f64;
        }
        v *= factor * x[i].powi((a - k) as i32);
    }
    v
}

fn poly_mul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai * bj;
        }
    }
    out
}

/// `t -> p(base + t * direction)` in ascending-power coefficient form.
#[derive(Debug, Clone, PartialEq)]
pub struct UnivariateRestriction {
    pub coefficients: Vec<f64>,
    pub base: Vector,
    pub direction: Vector,
}

impl UnivariateRestriction {
    pub fn eval(&self, t: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * t + c)
    }

    /// Degree after trimming exactly-zero leading coefficients.
    pub fn degree(&self) -> usize {
        self.coefficients
            .iter()
            .rposition(|&c| c != 0.0)
            .unwrap_or(0)
    }

    /// Roots via the eigenvalues of the companion matrix.
    pub fn roots(&self) -> Vec<Complex<f64>> {
        let deg = self.degree();
        if deg == 0 {
            return Vec::new();
        }
        let lead = self.coefficients[deg];
        let mut companion = Matrix::zeros(deg, deg);
        for i in 1..deg {
            companion[(i, i - 1)] = 1.0;
        }
        for i in 0..deg {
            companion[(i, deg - 1)] = -self.coefficients[i] / lead;
        }
        companion.complex_eigenvalues().iter().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_vec(xs.to_vec())
    }

    #[test]
    fn restriction_of_bilinear() {
        let p = Polynomial::coordinate_product(2);
        let r = p.restrict(&v(&[1.0, 1.0]), &v(&[1.0, 0.0]));
        assert_eq!(r.coefficients, vec![1.0, 1.0, 0.0]);
    }

    #[test]
    fn restriction_of_cubic_along_diagonal() {
        let p = Polynomial::coordinate_product(3);
        let r = p.restrict(&v(&[1.0, 1.0, 1.0]), &v(&[1.0, 1.0, 1.0]));
        assert_eq!(r.coefficients, vec![1.0, 3.0, 3.0, 1.0]);
    }

    #[test]
    fn restriction_of_lorentz() {
        let p = Polynomial::lorentz(3);
        let r = p.restrict(&v(&[2.0, 1.0, 0.0]), &v(&[0.0, 0.0, 1.0]));
        assert_eq!(r.coefficients, vec![3.0, 0.0, -1.0]);
    }

    #[test]
    fn derivatives_of_product() {
        let p = Polynomial::coordinate_product(3);
        let x = v(&[1.0, 2.0, 4.0]);
        assert_eq!(p.eval(&x), 8.0);
        assert_eq!(p.gradient(&x), v(&[8.0, 4.0, 2.0]));
        let h = p.hessian(&x);
        assert_eq!(h[(0, 1)], 4.0);
        assert_eq!(h[(0, 2)], 2.0);
        assert_eq!(h[(1, 2)], 1.0);
        assert_eq!(h[(0, 0)], 0.0);
    }

    #[test]
    fn elementary_symmetric_term_count() {
        let p = Polynomial::elementary_symmetric(5, 3).unwrap();
        assert_eq!(p.terms().len(), 10);
        assert_eq!(p.degree(), 3);
        assert_eq!(p.eval(&v(&[1.0; 5])), 10.0);
        assert!(Polynomial::elementary_symmetric(3, 4).is_err());
    }

    #[test]
    fn rejects_inhomogeneous_and_merges_terms() {
        assert!(Polynomial::new(2, vec![(1.0, vec![1, 1]), (1.0, vec![1, 0])]).is_err());
        let p = Polynomial::new(2, vec![(1.0, vec![1, 1]), (2.0, vec![1, 1])]).unwrap();
        assert_eq!(p.terms().len(), 1);
        assert_eq!(p.terms()[0].coef, 3.0);
    }

    #[test]
    fn companion_roots() {
        // (1 + t)^3
        let p = Polynomial::coordinate_product(3);
        let r = p.restrict(&v(&[1.0, 2.0, 4.0]), &v(&[1.0, 1.0, 1.0]));
        let mut re: Vec<f64> = r.roots().iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 4.0).abs() < 1e-10);
        assert!((re[1] + 2.0).abs() < 1e-10);
        assert!((re[2] + 1.0).abs() < 1e-10);
    }
}
