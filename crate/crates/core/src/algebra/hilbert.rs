//! Standard-monomial counting for Hilbert functions and weight sums.

use std::collections::BTreeSet;

use super::monomial::Monomial;
use super::univariate::UniPoly;

/// Walks the standard monomials (those outside a monomial ideal) degree by
/// degree. Every standard monomial of degree `k + 1` is a variable times a
/// standard monomial of degree `k`, so each step only touches the previous
/// layer.
pub(crate) struct StandardMonomials<'a> {
    nvars: usize,
    lms: &'a [Monomial],
    degree: usize,
    layer: Vec<Monomial>,
}

impl<'a> StandardMonomials<'a> {
    pub(crate) fn new(nvars: usize, lms: &'a [Monomial]) -> Self {
        let one = Monomial::one(nvars);
        let layer = if lms.iter().any(Monomial::is_one) {
            Vec::new()
        } else {
            vec![one]
        };
        StandardMonomials {
            nvars,
            lms,
            degree: 0,
            layer,
        }
    }

    pub(crate) fn advance(&mut self) {
        let mut next = BTreeSet::new();
        for m in &self.layer {
            for i in 0..self.nvars {
                let c = m.mul(&Monomial::var(self.nvars, i));
                if !self.lms.iter().any(|l| l.divides(&c)) {
                    next.insert(c);
                }
            }
        }
        self.layer = next.into_iter().collect();
        self.degree += 1;
    }

    pub(crate) fn advance_to(&mut self, k: usize) -> &[Monomial] {
        assert!(k >= self.degree, "cannot walk backwards");
        while self.degree < k {
            self.advance();
        }
        &self.layer
    }
}

/// A degree from which the Hilbert function of `S / (lms)` and every linear
/// weight sum over its standard monomials agree with their polynomials.
///
/// By inclusion-exclusion over the generators, both are sums of binomial
/// terms in `k - deg lcm(A)`, each exact once that argument is at least
/// `1 - nvars`; `deg lcm(A)` never exceeds the total generator degree.
pub(crate) fn regularity_bound(nvars: usize, lms: &[Monomial]) -> usize {
    let total: i64 = lms.iter().map(|m| m.degree() as i64).sum();
    (total - nvars as i64 + 1).max(0) as usize
}

/// Hilbert polynomial together with the window it was interpolated from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomial {
    pub poly: UniPoly,
    /// First degree of the interpolation window.
    pub window_start: usize,
}

impl HilbertPolynomial {
    /// Dimension of the projective scheme; `None` when it is empty.
    pub fn dimension(&self) -> Option<usize> {
        self.poly.degree()
    }

    /// `(dim)! * leading coefficient`, the degree of the embedded scheme.
    pub fn degree(&self) -> Option<num_bigint::BigInt> {
        let n = self.dimension()?;
        let fact: num_bigint::BigInt = (1..=n as u64).product::<u64>().into();
        let lead = self.poly.coeff(n) * super::scalar::Scalar::from_integer(fact);
        Some(lead.to_integer())
    }
}
