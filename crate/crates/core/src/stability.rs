//! States and the Hilbert-Mumford weight.
//!
//! A state is the finite set of torus characters appearing in a point of a
//! representation. For a weight vector `a` the weight is the max of linear
//! functions `mu(S, a) = max_{chi in S} -<a, chi>`; the normalized weight
//! `nu` evaluates `mu` on the trace-zero projection of `a` and divides by its
//! length.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{monomials_of_degree, q, HomogeneousIdeal, Polynomial, Scalar, UniPoly};
use crate::error::{Error, Result};
use crate::limits::max_cells;
use crate::opsub::{NormalizedValue, WeightVector};

/// Raw serialized form of a state.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    characters: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    degree: Option<i64>,
}

/// A nonempty set of characters of the diagonal torus, sorted and without
/// duplicates, each optionally labeled by the monomial datum it came from.
/// When `degree` is set every character has that coordinate sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawState", into = "RawState")]
pub struct StateSet {
    characters: Vec<Vec<i64>>,
    labels: Option<Vec<String>>,
    degree: Option<i64>,
}

impl TryFrom<RawState> for StateSet {
    type Error = Error;

    fn try_from(raw: RawState) -> Result<Self> {
        let state = match raw.labels {
            Some(labels) => {
                if labels.len() != raw.characters.len() {
                    return Err(Error::parse("labels", "need one label per character"));
                }
                StateSet::labeled(raw.characters.into_iter().zip(labels).collect())?
            }
            None => StateSet::new(raw.characters)?,
        };
        match raw.degree {
            Some(d) => state.with_degree(d),
            None => Ok(state),
        }
    }
}

impl From<StateSet> for RawState {
    fn from(s: StateSet) -> Self {
        RawState {
            characters: s.characters,
            labels: s.labels,
            degree: s.degree,
        }
    }
}

impl StateSet {
    pub fn new(characters: Vec<Vec<i64>>) -> Result<Self> {
        let map: BTreeMap<Vec<i64>, Option<String>> = characters.into_iter().map(|c| (c, None)).collect();
        Self::from_map(map.into_iter().collect(), false)
    }

    /// Duplicated characters keep the first label.
    pub fn labeled(characters: Vec<(Vec<i64>, String)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (c, l) in characters {
            map.entry(c).or_insert(l);
        }
        Self::from_map(map.into_iter().map(|(c, l)| (c, Some(l))).collect(), true)
    }

    fn from_map(entries: Vec<(Vec<i64>, Option<String>)>, labeled: bool) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::parse("characters", "a state needs at least one character"));
        }
        let n = entries[0].0.len();
        if n < 2 {
            return Err(Error::parse("characters", "need at least two coordinates"));
        }
        let mut characters = Vec::with_capacity(entries.len());
        let mut labels = Vec::new();
        for (c, l) in entries {
            Error::check_len(n, c.len())?;
            characters.push(c);
            if let Some(l) = l {
                labels.push(l);
            }
        }
        Ok(StateSet {
            characters,
            labels: labeled.then_some(labels),
            degree: None,
        })
    }

    /// Records the common coordinate sum, checking every character.
    pub fn with_degree(mut self, d: i64) -> Result<Self> {
        if self.characters.iter().any(|c| c.iter().sum::<i64>() != d) {
            return Err(Error::parse("degree", format!("some character does not have coordinate sum {d}")));
        }
        self.degree = Some(d);
        Ok(self)
    }

    pub fn characters(&self) -> &[Vec<i64>] {
        &self.characters
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn degree(&self) -> Option<i64> {
        self.degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.characters[0].len()
    }

    pub fn len(&self) -> usize {
        self.characters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.characters.is_empty()
    }

    /// Each character projected to the trace-zero hyperplane. For a state of
    /// degree `d` this subtracts `d / (N + 1)` from every entry.
    pub fn centered(&self) -> Vec<Vec<Scalar>> {
        let n = self.ambient_dim() as i64;
        self.characters
            .iter()
            .map(|c| {
                let mean = Scalar::new(c.iter().sum::<i64>().into(), n.into());
                c.iter().map(|&x| q(x) - &mean).collect()
            })
            .collect()
    }
}

/// Hilbert-Mumford weight of a state at a weight vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    #[serde(with = "crate::algebra::rational_string")]
    pub mu: Scalar,
    /// `None` for central weight vectors, which have no direction.
    pub nu: Option<NormalizedValue>,
    pub argmax: Vec<Vec<i64>>,
}

pub fn state_of_point(v: &[Scalar]) -> Result<StateSet> {
    let n = v.len();
    let chars: Vec<Vec<i64>> = (0..n)
        .filter(|&i| !v[i].is_zero())
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    if chars.is_empty() {
        return Err(Error::ZeroVector);
    }
    StateSet::new(chars)?.with_degree(1)
}

pub fn state_of_hypersurface(f: &Polynomial) -> Result<StateSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let chars = f
        .support()
        .map(|m| m.exponents().iter().map(|&e| e as i64).collect())
        .collect();
    StateSet::new(chars)?.with_degree(d as i64)
}

/// State of the `d`-th Hilbert point: the Plucker point of `I_d` inside the
/// degree-`d` forms. Each nonzero maximal minor of a basis of `I_d`, over
/// columns `B`, contributes the character `sum_{m in B} exponent(m)`.
pub fn state_of_hilbert_point(ideal: &HomogeneousIdeal, d: u32) -> Result<StateSet> {
    let basis = ideal.degree_piece(d);
    let monomials = monomials_of_degree(ideal.nvars(), d);
    let r = basis.rows();
    if r == 0 || r == monomials.len() {
        return Err(Error::DegenerateDegree(d as usize));
    }
    let count = binomial(monomials.len(), r);
    if count > max_cells() as u128 {
        return Err(Error::TooLarge(format!("{count} Plucker minors")));
    }
    // columns that vanish identically never appear in a nonzero minor
    let live: Vec<usize> = (0..monomials.len())
        .filter(|&j| (0..r).any(|i| !basis[(i, j)].is_zero()))
        .collect();
    let mut chars = Vec::new();
    let mut subset: Vec<usize> = (0..r).collect();
    if live.len() >= r {
        loop {
            let cols: Vec<usize> = subset.iter().map(|&k| live[k]).collect();
            if !basis.select_cols(&cols).determinant().is_zero() {
                let mut chi = vec![0i64; ideal.nvars()];
                for &j in &cols {
                    for (c, &e) in chi.iter_mut().zip(monomials[j].exponents()) {
                        *c += e as i64;
                    }
                }
                let label = cols
                    .iter()
                    .map(|&j| monomials[j].display_with(ideal.variables()))
                    .collect::<Vec<_>>()
                    .join("^");
                chars.push((chi, label));
            }
            if !next_subset(&mut subset, live.len()) {
                break;
            }
        }
    }
    StateSet::labeled(chars)?.with_degree(r as i64 * d as i64)
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

// lexicographic successor of a k-subset of 0..n
fn next_subset(s: &mut [usize], n: usize) -> bool {
    let k = s.len();
    for i in (0..k).rev() {
        if s[i] < n - k + i {
            s[i] += 1;
            for j in i + 1..k {
                s[j] = s[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// `max_{chi in S} -<a, chi>` for a rational weight vector.
pub fn mu_value(state: &StateSet, a: &[Scalar]) -> Result<Scalar> {
    Error::check_len(state.ambient_dim(), a.len())?;
    Ok(state
        .characters
        .iter()
        .map(|c| -pairing(a, c))
        .max()
        .expect("states are nonempty"))
}

fn pairing(a: &[Scalar], c: &[i64]) -> Scalar {
    a.iter().zip(c).map(|(x, &y)| x * q(y)).sum()
}

pub fn mu(state: &StateSet, a: &WeightVector) -> Result<WeightReport> {
    Error::check_len(state.ambient_dim(), a.len())?;
    let values: Vec<i64> = state
        .characters
        .iter()
        .map(|c| -c.iter().zip(a.entries()).map(|(x, y)| x * y).sum::<i64>())
        .collect();
    let max = *values.iter().max().expect("states are nonempty");
    let argmax = state
        .characters
        .iter()
        .zip(&values)
        .filter(|(_, &v)| v == max)
        .map(|(c, _)| c.clone())
        .collect();
    let nu = if a.is_central() {
        None
    } else {
        let centered = a.centered();
        let normsq: Scalar = centered.iter().map(|x| x * x).sum();
        Some(NormalizedValue::new(mu_value(state, &centered)?, normsq))
    };
    Ok(WeightReport { mu: q(max), nu, argmax })
}

/// Whether `a` lies in the locus where the coordinates of minimal weight cut
/// out nothing on `X = V(I)`.
pub fn s_prime_membership(ideal: &HomogeneousIdeal, a: &WeightVector) -> Result<bool> {
    Error::check_len(ideal.nvars(), a.len())?;
    if ideal.is_unit() {
        return Err(Error::EmptyScheme);
    }
    let n = ideal.nvars();
    let vars: Vec<Polynomial> = a.argmin().into_iter().map(|j| Polynomial::var(n, j)).collect();
    Ok(ideal.sum(&vars)?.is_empty_projective())
}

/// For a one-parameter family of vectors `v(s)`, whether the support at
/// `s = 0` lies inside the generic support.
pub fn support_semicontinuity_check(family: &[UniPoly]) -> Result<bool> {
    let special: Vec<usize> = (0..family.len()).filter(|&i| !family[i].coeff(0).is_zero()).collect();
    if special.is_empty() {
        return Err(Error::ZeroVector);
    }
    Ok(special.iter().all(|&i| !family[i].is_zero()))
}

pub fn is_nondegenerate(ideal: &HomogeneousIdeal) -> bool {
    ideal.is_nondegenerate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, qf};
    use proptest::prelude::*;

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn xyz() -> Vec<String> {
        vec!["x".into(), "y".into(), "z".into()]
    }

    fn qs(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn point_states() {
        assert_eq!(state_of_point(&qs(&[1, 0, 1])).unwrap().characters(), &[vec![0, 0, 1], vec![1, 0, 0]]);
        assert_eq!(state_of_point(&qs(&[0, 1, 0])).unwrap().characters(), &[vec![0, 1, 0]]);
        assert_eq!(state_of_point(&qs(&[1, 1, 1])).unwrap().len(), 3);
        assert_eq!(state_of_point(&qs(&[0, 0])), Err(Error::ZeroVector));
    }

    #[test]
    fn hypersurface_states() {
        let f = |s: &str| parse_polynomial(s, &xyz()).unwrap();
        assert_eq!(state_of_hypersurface(&f("x^2")).unwrap().characters(), &[vec![2, 0, 0]]);
        assert_eq!(
            state_of_hypersurface(&f("x*z - y^2")).unwrap().characters(),
            &[vec![0, 2, 0], vec![1, 0, 1]]
        );
        assert_eq!(state_of_hypersurface(&f("x^3 + y^3 + z^3")).unwrap().len(), 3);
        assert_eq!(state_of_hypersurface(&Polynomial::zero(3)), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn hilbert_point_states() {
        let conic = HomogeneousIdeal::parse(&["x", "y", "z"], &["x*z - y^2"]).unwrap();
        let s = state_of_hilbert_point(&conic, 2).unwrap();
        assert_eq!(s.characters(), &[vec![0, 2, 0], vec![1, 0, 1]]);
        assert_eq!(s.degree(), Some(2));

        let xy = |g: &str| HomogeneousIdeal::parse(&["x", "y"], &[g]).unwrap();
        assert_eq!(state_of_hilbert_point(&xy("x"), 1).unwrap().characters(), &[vec![1, 0]]);
        assert_eq!(state_of_hilbert_point(&xy("x + y"), 1).unwrap().characters(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(state_of_hilbert_point(&conic, 1), Err(Error::DegenerateDegree(1)));
        assert_eq!(state_of_hilbert_point(&xy("x"), 0).unwrap_err(), Error::DegenerateDegree(0));
    }

    #[test]
    fn hilbert_point_minors_match_a_direct_expansion() {
        // twisted cubic, I_2 has dimension 3 inside 10 quadrics
        let tc = HomogeneousIdeal::parse(&["a", "b", "c", "d"], &["a*c - b^2", "b*d - c^2", "a*d - b*c"]).unwrap();
        let s = state_of_hilbert_point(&tc, 2).unwrap();
        assert_eq!(s.degree(), Some(6));
        // each generator contributes one of its terms, so the torus weight of
        // the product of leading terms is always present
        assert!(s.characters().contains(&vec![1, 2, 2, 1]));
        for c in s.characters() {
            assert_eq!(c.iter().sum::<i64>(), 6);
        }
    }

    #[test]
    fn mu_examples() {
        let s = StateSet::new(vec![vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let r = mu(&s, &w(&[1, 0, -1])).unwrap();
        assert_eq!(r.mu, q(1));
        assert_eq!(r.argmax, vec![vec![0, 0, 1]]);
        let zero = mu(&s, &w(&[0, 0, 0])).unwrap();
        assert_eq!(zero.mu, q(0));
        assert_eq!(zero.nu, None);

        let double_line = StateSet::new(vec![vec![2, 0, 0]]).unwrap();
        let r = mu(&double_line, &w(&[2, -1, -1])).unwrap();
        assert_eq!(r.mu, q(-4));
        assert_eq!(r.nu.unwrap().signed_square(), qf(-8, 3));
    }

    #[test]
    fn s_prime_examples() {
        let conic = HomogeneousIdeal::parse(&["x", "y", "z"], &["x*z - y^2"]).unwrap();
        assert!(!s_prime_membership(&conic, &w(&[0, 0, 1])).unwrap());
        assert!(!s_prime_membership(&conic, &w(&[1, 1, 0])).unwrap());
        let line = HomogeneousIdeal::parse(&["x", "y", "z", "w"], &["x", "y"]).unwrap();
        assert!(s_prime_membership(&line, &w(&[1, 1, 0, 0])).unwrap());
        let other = HomogeneousIdeal::parse(&["x", "y", "z", "w"], &["z", "w"]).unwrap();
        assert!(!s_prime_membership(&other, &w(&[1, 1, 0, 0])).unwrap());
        let unit = HomogeneousIdeal::parse(&["x", "y"], &["1"]).unwrap();
        assert_eq!(s_prime_membership(&unit, &w(&[1, 0])), Err(Error::EmptyScheme));
    }

    #[test]
    fn semicontinuity_examples() {
        let s = UniPoly::new(vec![q(0), q(1)]);
        let one = UniPoly::new(vec![q(1)]);
        assert!(support_semicontinuity_check(&[one.clone(), s.clone()]).unwrap());
        assert!(support_semicontinuity_check(&[one.clone(), one]).unwrap());
        let s2 = UniPoly::new(vec![q(0), q(0), q(1)]);
        assert_eq!(support_semicontinuity_check(&[s, s2]), Err(Error::ZeroVector));
    }

    #[test]
    fn nondegeneracy() {
        assert!(is_nondegenerate(&HomogeneousIdeal::parse(&["x", "y", "z"], &["x*z - y^2"]).unwrap()));
        assert!(!is_nondegenerate(&HomogeneousIdeal::parse(&["x", "y", "z"], &["x + y", "z^2"]).unwrap()));
        assert!(is_nondegenerate(&HomogeneousIdeal::zero(xyz()).unwrap()));
    }

    #[test]
    fn serde_round_trip() {
        let s: StateSet = serde_json::from_str(r#"{"characters":[[2,0,0],[2,0,0]],"degree":2}"#).unwrap();
        assert_eq!(s.len(), 1);
        let back: StateSet = serde_json::from_str(&serde_json::to_string(&s).unwrap()).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<StateSet>(r#"{"characters":[]}"#).is_err());
        assert!(serde_json::from_str::<StateSet>(r#"{"characters":[[1,0],[1,1]],"degree":1}"#).is_err());
    }

    fn state() -> impl Strategy<Value = StateSet> {
        (2usize..5).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-5i64..6, n), 1..8)
                .prop_map(|cs| StateSet::new(cs).unwrap())
        })
    }

    proptest! {
        #[test]
        fn nu_and_argmax_are_scale_invariant(s in state(), seed in proptest::collection::vec(-6i64..7, 4), m in 1i64..7, c in -5i64..6) {
            let a = w(&seed[..s.ambient_dim()]);
            prop_assume!(!a.is_central());
            let r = mu(&s, &a).unwrap();
            let scaled = mu(&s, &a.scaled(m)).unwrap();
            prop_assert_eq!(&scaled.argmax, &r.argmax);
            prop_assert_eq!(scaled.nu.clone(), r.nu.clone());
            prop_assert_eq!(mu(&s, &a.shifted(c)).unwrap().nu, r.nu);
        }

        #[test]
        fn mu_is_convex_on_segments(s in state(), a0 in proptest::collection::vec(-6i64..7, 4), a1 in proptest::collection::vec(-6i64..7, 4)) {
            let n = s.ambient_dim();
            let (a0, a1) = (qs(&a0[..n]), qs(&a1[..n]));
            let at = |u: Scalar| {
                let p: Vec<Scalar> = a0.iter().zip(&a1).map(|(x, y)| (q(1) - &u) * x + &u * y).collect();
                mu_value(&s, &p).unwrap()
            };
            for k in 1..10 {
                let (lo, mid, hi) = (qf(k - 1, 10), qf(k, 10), qf(k + 1, 10));
                prop_assert!(q(2) * at(mid) <= at(lo) + at(hi));
            }
        }
    }
}
