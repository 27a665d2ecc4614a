//! Sparse multivariate polynomials with exact partial differentiation.
//!
//! Coefficient arithmetic stays in `f64`; generators used by the test suites
//! stick to dyadic rationals so that differential identities cancel exactly.

/// A polynomial in `n` variables, stored as sorted `(exponents, coefficient)`
/// terms with like terms combined and exact zeros dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    n: usize,
    terms: Vec<(Vec<u32>, f64)>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: Vec::new(),
        }
    }

    pub fn constant(n: usize, value: f64) -> Self {
        Self::from_terms(n, vec![(vec![0; n], value)])
    }

    /// The coordinate function `x_{axis}` (0-based axis).
    pub fn coordinate(n: usize, axis: usize) -> Self {
        assert!(axis < n);
        let mut e = vec![0u32; n];
        e[axis] = 1;
        Self::from_terms(n, vec![(e, 1.0)])
    }

    /// Build from raw terms; exponent vectors must have length `n`.
    pub fn from_terms(n: usize, terms: Vec<(Vec<u32>, f64)>) -> Self {
        let mut map: std::collections::BTreeMap<Vec<u32>, f64> = Default::default();
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector length must equal n");
            *map.entry(e).or_insert(0.0) += c;
        }
        let terms = map.into_iter().filter(|(_, c)| *c != 0.0).collect();
        Self { n, terms }
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Vec<u32>, f64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree (0 for the zero polynomial).
    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.n);
        let mut acc = 0.0;
        for (e, c) in &self.terms {
            let mut term = *c;
            for (xi, ei) in x.iter().zip(e.iter()) {
                if *ei != 0 {
                    term *= xi.powi(*ei as i32);
                }
            }
            acc += term;
        }
        acc
    }

    /// Exact partial derivative with respect to `x_{axis}`.
    pub fn partial(&self, axis: usize) -> Polynomial {
        assert!(axis < self.n);
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[axis] > 0)
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2[axis] -= 1;
                (e2, c * e[axis] as f64)
            })
            .collect();
        Polynomial::from_terms(self.n, terms)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Polynomial::from_terms(self.n, terms)
    }

    pub fn scaled(&self, factor: f64) -> Polynomial {
        if factor == 0.0 {
            return Polynomial::zero(self.n);
        }
        Polynomial {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n, other.n);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb.iter()).map(|(a, b)| a + b).collect();
                terms.push((e, ca * cb));
            }
        }
        Polynomial::from_terms(self.n, terms)
    }

    /// Componentwise Laplacian `sum_i d^2/dx_i^2`.
    pub fn laplacian(&self) -> Polynomial {
        let mut acc = Polynomial::zero(self.n);
        for axis in 0..self.n {
            acc = acc.add(&self.partial(axis).partial(axis));
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_partial() {
        // p = x1^2 x2 - 3 x3
        let n = 3;
        let p = Polynomial::from_terms(n, vec![(vec![2, 1, 0], 1.0), (vec![0, 0, 1], -3.0)]);
        assert_eq!(p.eval(&[2.0, 5.0, 1.0]), 20.0 - 3.0);
        let dp0 = p.partial(0);
        assert_eq!(dp0.eval(&[2.0, 5.0, 1.0]), 20.0);
        let dp2 = p.partial(2);
        assert_eq!(dp2.eval(&[0.0, 0.0, 0.0]), -3.0);
    }

    #[test]
    fn partials_commute_exactly() {
        let n = 4;
        let p = Polynomial::from_terms(
            n,
            vec![
                (vec![3, 1, 0, 2], 0.5),
                (vec![0, 2, 2, 0], -0.25),
                (vec![1, 1, 1, 1], 1.5),
            ],
        );
        for i in 0..n {
            for j in 0..n {
                let a = p.partial(i).partial(j);
                let b = p.partial(j).partial(i);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn harmonic_examples() {
        let n = 3;
        let x1 = Polynomial::coordinate(n, 0);
        let x2 = Polynomial::coordinate(n, 1);
        let p = x1.mul(&x1).add(&x2.mul(&x2).scaled(-1.0)); // x1^2 - x2^2
        assert!(p.laplacian().is_zero());
        let q = x1.mul(&x1); // x1^2
        assert_eq!(q.laplacian().eval(&[0.0; 3]), 2.0);
    }
}
