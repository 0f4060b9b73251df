//! One-parameter subgroups of the diagonal torus as integer weight vectors.
//!
//! Two weight vectors give the same point of an apartment when they differ by
//! a positive multiple (`lambda^m ~ lambda^n`) and a central shift
//! (`lambda ~ lambda * xi`, `xi` central). [`canonicalize`] picks the
//! representative with minimum entry 0 and coprime entries.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{monomials_of_degree, q, HomogeneousIdeal, Monomial, Scalar};
use crate::error::{Error, Result};

/// Weights `a_i` of `t . X_i = t^{a_i} X_i` on the eigenbasis `X_0, ..., X_N`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::parse("weights", "need at least two coordinates"));
        }
        Ok(WeightVector(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_central(&self) -> bool {
        self.0.iter().all(|&x| x == self.0[0])
    }

    pub fn scaled(&self, m: i64) -> WeightVector {
        WeightVector(self.0.iter().map(|x| x * m).collect())
    }

    pub fn shifted(&self, c: i64) -> WeightVector {
        WeightVector(self.0.iter().map(|x| x + c).collect())
    }

    /// Projection onto the trace-zero hyperplane: `a - mean(a) * 1`.
    pub fn centered(&self) -> Vec<Scalar> {
        let n = self.0.len() as i64;
        let sum: i64 = self.0.iter().sum();
        self.0.iter().map(|&x| q(x) - Scalar::new(sum.into(), n.into())).collect()
    }

    /// Indices of the minimal entries.
    pub fn argmin(&self) -> Vec<usize> {
        let min = *self.0.iter().min().expect("nonempty");
        (0..self.0.len()).filter(|&i| self.0[i] == min).collect()
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A rational point of the apartment of the diagonal torus: the class of a
/// non-central weight vector, stored as its canonical representative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ApartmentPoint(Vec<i64>);

impl ApartmentPoint {
    pub fn canonical(&self) -> &[i64] {
        &self.0
    }

    pub fn representative(&self) -> WeightVector {
        WeightVector(self.0.clone())
    }
}

impl fmt::Debug for ApartmentPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Subtracts the minimum and divides by the gcd. Constant vectors are central
/// and have no point.
pub fn canonicalize(a: &WeightVector) -> Result<ApartmentPoint> {
    if a.is_central() {
        return Err(Error::CentralSubgroup);
    }
    let min = *a.0.iter().min().expect("nonempty");
    let shifted: Vec<i64> = a.0.iter().map(|x| x - min).collect();
    let g = shifted.iter().fold(0i64, |g, x| g.gcd(x));
    Ok(ApartmentPoint(shifted.into_iter().map(|x| x / g).collect()))
}

/// Canonical point of a rational vector, after clearing denominators.
pub fn canonicalize_rational(v: &[Scalar]) -> Result<ApartmentPoint> {
    let lcm = v.iter().fold(num_bigint::BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|x| (x * Scalar::from_integer(lcm.clone())).to_integer()).collect();
    let min = ints.iter().min().cloned().ok_or(Error::ZeroVector)?;
    let shifted: Vec<num_bigint::BigInt> = ints.iter().map(|x| x - &min).collect();
    let g = shifted.iter().fold(num_bigint::BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::CentralSubgroup);
    }
    let entries = shifted
        .iter()
        .map(|x| (x / &g).to_i64().ok_or_else(|| Error::TooLarge("direction entry exceeds i64".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(ApartmentPoint(entries))
}

/// `|a - mean(a) * 1|^2`, the Euclidean norm on the trace-zero part.
pub fn sl_norm_squared(a: &WeightVector) -> Scalar {
    a.centered().iter().map(|x| x * x).sum()
}

/// Whether two weight vectors define the same test degeneration up to base
/// change (`a -> m a`) and central twists (`a -> a + c 1`).
pub fn are_t_equivalent(a: &WeightVector, b: &WeightVector) -> Result<bool> {
    Error::check_len(a.len(), b.len())?;
    Ok(canonicalize(a)? == canonicalize(b)?)
}

/// The normalized weight `mu / sqrt(normsq)`, kept exact.
#[derive(Clone, Serialize, Deserialize)]
pub struct NormalizedValue {
    #[serde(with = "crate::algebra::rational_string")]
    pub numerator: Scalar,
    #[serde(with = "crate::algebra::rational_string")]
    pub normsq: Scalar,
}

impl NormalizedValue {
    /// Panics when `normsq <= 0`.
    pub fn new(numerator: Scalar, normsq: Scalar) -> Self {
        assert!(normsq.is_positive(), "normalized value needs a positive norm");
        NormalizedValue { numerator, normsq }
    }

    /// `numerator^2 / normsq` with the sign of the numerator: the square of
    /// the value, sign reattached.
    pub fn signed_square(&self) -> Scalar {
        let sq = &self.numerator * &self.numerator / &self.normsq;
        if self.numerator.is_negative() {
            -sq
        } else {
            sq
        }
    }

    pub fn is_negative(&self) -> bool {
        self.numerator.is_negative()
    }

    /// Decimal approximation for display only.
    pub fn approx(&self) -> f64 {
        let num = self.numerator.to_f64().unwrap_or(f64::NAN);
        let den = self.normsq.to_f64().unwrap_or(f64::NAN).sqrt();
        num / den
    }
}

impl PartialEq for NormalizedValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for NormalizedValue {}

impl PartialOrd for NormalizedValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NormalizedValue {
    fn cmp(&self, other: &Self) -> Ordering {
        // x -> x|x| is strictly increasing
        self.signed_square().cmp(&other.signed_square())
    }
}

impl fmt::Debug for NormalizedValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/sqrt({})", self.numerator, self.normsq)
    }
}

/// Weights on the degree-`r * l` monomials induced by weights `a` on the
/// degree-`r` monomials: each monomial gets the minimum, over its
/// factorizations into `l` degree-`r` monomials, of the summed weights.
///
/// Coordinates at every exponent are indexed by [`monomials_of_degree`].
pub fn lift_exponent(a: &WeightVector, r: u32, l: u32, ideal: &HomogeneousIdeal) -> Result<WeightVector> {
    if r == 0 || l == 0 {
        return Err(Error::parse("exponent", "exponents must be positive"));
    }
    let n = ideal.nvars();
    let source = monomials_of_degree(n, r);
    Error::check_len(source.len(), a.len())?;
    let target = monomials_of_degree(n, r * l);
    let lifted = target
        .iter()
        .map(|m| min_factorization_weight(m, &source, a.entries(), 0, l).expect("every monomial factors"))
        .collect();
    Ok(WeightVector(lifted))
}

// Factors are drawn with non-decreasing index so each multiset is seen once.
fn min_factorization_weight(m: &Monomial, source: &[Monomial], a: &[i64], from: usize, parts: u32) -> Option<i64> {
    if parts == 0 {
        return m.is_one().then_some(0);
    }
    (from..source.len())
        .filter_map(|i| {
            let rest = source[i].quotient_of(m)?;
            min_factorization_weight(&rest, source, a, i, parts - 1).map(|w| w + a[i])
        })
        .min()
}
