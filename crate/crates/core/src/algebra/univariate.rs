use std::fmt;

use num_traits::{Signed, Zero};

use super::scalar::{q, Scalar};

/// Polynomial in one variable `k`, coefficients from the constant term up.
/// Trailing zero coefficients are trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `k^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of `k^i` for a possibly negative `i` (zero when `i < 0`).
    pub fn coeff_signed(&self, i: i64) -> Scalar {
        if i < 0 {
            Scalar::zero()
        } else {
            self.coeff(i as usize)
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn eval(&self, k: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_int(&self, k: i64) -> Scalar {
        self.eval(&q(k))
    }

    /// The unique polynomial of degree `< xs.len()` through the points,
    /// by Newton divided differences. Nodes must be distinct.
    pub fn interpolate(xs: &[Scalar], ys: &[Scalar]) -> UniPoly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<Scalar> = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                let num = &dd[i] - &dd[i - 1];
                let den = &xs[i] - &xs[i - level];
                dd[i] = num / den;
            }
        }
        // expand the Newton form from the innermost factor outwards
        let mut coeffs: Vec<Scalar> = Vec::new();
        for i in (0..n).rev() {
            // coeffs <- coeffs * (k - xs[i]) + dd[i]
            let mut next = vec![Scalar::zero(); coeffs.len() + 1];
            for (j, c) in coeffs.iter().enumerate() {
                next[j + 1] += c;
                next[j] -= c * &xs[i];
            }
            next[0] += &dd[i];
            coeffs = next;
        }
        UniPoly::new(coeffs)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}*k")?,
                _ => write!(f, "{a}*k^{i}")?,
            }
        }
        Ok(())
    }
}
