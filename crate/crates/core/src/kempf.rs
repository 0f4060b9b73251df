//! The optimal destabilizing direction of a state.
//!
//! Minimizing `nu(S, a)` over the apartment is the same as finding the point
//! `q` of the convex hull of the centered characters nearest to the origin:
//! when `q != 0` the direction of `q` is the unique minimizer and the minimum
//! is `-|q|`. [`min_norm_point`] runs Wolfe's algorithm over exact rationals;
//! [`min_norm_point_oracle`] enumerates faces instead.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{q, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::opsub::{canonicalize_rational, ApartmentPoint, NormalizedValue};
use crate::stability::{mu, StateSet};

/// Nearest point of the centered state polytope to the origin, with the
/// characters and weights of a convex combination realizing it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinNormResult {
    #[serde(with = "crate::algebra::rational_vec")]
    pub q: Vec<Scalar>,
    #[serde(with = "crate::algebra::rational_string")]
    pub normsq: Scalar,
    pub support: Vec<Vec<i64>>,
    #[serde(with = "crate::algebra::rational_vec")]
    pub combination: Vec<Scalar>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Stable,
    Unstable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DestabilizerReport {
    pub status: Status,
    pub direction: Option<ApartmentPoint>,
    pub nu_min: Option<NormalizedValue>,
    pub certificate: MinNormResult,
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Distinct centered characters, each with the first character projecting
/// onto it.
fn centered_points(state: &StateSet) -> (Vec<Vec<Scalar>>, Vec<usize>) {
    let mut points: Vec<Vec<Scalar>> = Vec::new();
    let mut origin = Vec::new();
    for (i, p) in state.centered().into_iter().enumerate() {
        if !points.contains(&p) {
            points.push(p);
            origin.push(i);
        }
    }
    (points, origin)
}

/// Barycentric coordinates of the point of the affine hull of `pts` nearest
/// to the origin, or `None` when the points are affinely dependent.
fn affine_min_norm(points: &[Vec<Scalar>], idx: &[usize]) -> Option<Vec<Scalar>> {
    let k = idx.len();
    let mut rows = vec![vec![Scalar::zero(); k + 1]; k + 1];
    for i in 0..k {
        for j in 0..k {
            rows[i][j] = dot(&points[idx[i]], &points[idx[j]]);
        }
        rows[i][k] = Scalar::one();
        rows[k][i] = Scalar::one();
    }
    let mut rhs = vec![Scalar::zero(); k + 1];
    rhs[k] = Scalar::one();
    Matrix::from_rows(rows)
        .solve(&rhs).map(|mut s| {
        s.truncate(k);
        s
    })
}

fn combine(points: &[Vec<Scalar>], idx: &[usize], coeffs: &[Scalar]) -> Vec<Scalar> {
    let n = points[0].len();
    let mut x = vec![Scalar::zero(); n];
    for (&i, c) in idx.iter().zip(coeffs) {
        for (xj, pj) in x.iter_mut().zip(&points[i]) {
            *xj += c * pj;
        }
    }
    x
}

fn finish(state: &StateSet, origin: &[usize], points: &[Vec<Scalar>], mut pairs: Vec<(usize, Scalar)>) -> MinNormResult {
    pairs.sort_by_key(|(i, _)| *i);
    let idx: Vec<usize> = pairs.iter().map(|(i, _)| *i).collect();
    let coeffs: Vec<Scalar> = pairs.iter().map(|(_, c)| c.clone()).collect();
    let x = combine(points, &idx, &coeffs);
    MinNormResult {
        normsq: dot(&x, &x),
        q: x,
        support: idx.iter().map(|&i| state.characters()[origin[i]].clone()).collect(),
        combination: coeffs,
    }
}

/// Wolfe's minimum-norm-point algorithm with exact comparisons. Minor cycles
/// drop the lowest-index point whose weight reached zero.
pub fn min_norm_point(state: &StateSet) -> MinNormResult {
    let (points, origin) = centered_points(state);
    let norms: Vec<Scalar> = points.iter().map(|p| dot(p, p)).collect();
    let start = (0..points.len()).min_by(|&i, &j| norms[i].cmp(&norms[j])).expect("states are nonempty");
    let mut set = vec![start];
    let mut lambda = vec![Scalar::one()];
    let mut x = points[start].clone();

    loop {
        let xx = dot(&x, &x);
        if xx.is_zero() {
            break;
        }
        let (j, best) = (0..points.len())
            .map(|j| (j, dot(&x, &points[j])))
            .min_by(|a, b| a.1.cmp(&b.1))
            .expect("states are nonempty");
        if best >= xx || set.contains(&j) {
            break;
        }
        set.push(j);
        lambda.push(Scalar::zero());

        loop {
            let alpha = affine_min_norm(&points, &set).expect("Wolfe keeps its corral affinely independent");
            if alpha.iter().all(Signed::is_positive) {
                lambda = alpha;
                break;
            }
            // move from lambda towards alpha until a weight hits zero
            let theta = lambda
                .iter()
                .zip(&alpha)
                .filter(|(_, a)| !a.is_positive())
                .map(|(l, a)| if l == a { Scalar::zero() } else { l / (l - a) })
                .min()
                .expect("some coefficient is non-positive");
            for (l, a) in lambda.iter_mut().zip(&alpha) {
                *l = &*l + &theta * (a - &*l);
            }
            let drop = (0..set.len())
                .filter(|&i| lambda[i].is_zero())
                .min_by_key(|&i| set[i])
                .expect("the step zeroes some weight");
            set.remove(drop);
            lambda.remove(drop);
        }
        x = combine(&points, &set, &lambda);
    }
    finish(state, &origin, &points, set.into_iter().zip(lambda).collect())
}

/// Face enumeration: project the origin onto the affine hull of every
/// affinely independent subset, keep projections in the relative interior
/// and return the shortest after checking global optimality.
pub fn min_norm_point_oracle(state: &StateSet) -> Result<MinNormResult> {
    if state.len() > 12 {
        return Err(Error::TooLarge(format!("{} characters (oracle handles at most 12)", state.len())));
    }
    if state.ambient_dim() > 8 {
        return Err(Error::TooLarge(format!("dimension {} (oracle handles at most 8)", state.ambient_dim())));
    }
    let (points, origin) = centered_points(state);
    let m = points.len();
    let max_size = m.min(state.ambient_dim());
    let mut best: Option<(Scalar, Vec<usize>, Vec<Scalar>)> = None;
    for mask in 1u32..(1 << m) {
        let idx: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
        if idx.len() > max_size {
            continue;
        }
        let Some(alpha) = affine_min_norm(&points, &idx) else { continue };
        if !alpha.iter().all(Signed::is_positive) {
            continue;
        }
        let x = combine(&points, &idx, &alpha);
        let xx = dot(&x, &x);
        if best.as_ref().is_none_or(|(b, _, _)| xx < *b) {
            best = Some((xx, idx, alpha));
        }
    }
    let (xx, idx, alpha) = best.expect("every vertex is a candidate");
    let x = combine(&points, &idx, &alpha);
    assert!(
        points.iter().all(|p| dot(&x, p) >= xx),
        "oracle candidate fails the optimality certificate"
    );
    Ok(finish(state, &origin, &points, idx.into_iter().zip(alpha).collect()))
}

/// Whether `<q, chi> >= <q, q>` for every centered character.
pub fn certificate_holds(state: &StateSet, result: &MinNormResult) -> bool {
    let (points, _) = centered_points(state);
    let sum: Scalar = result.combination.iter().sum();
    sum == q(1)
        && result.combination.iter().all(Signed::is_positive)
        && points.iter().all(|p| dot(&result.q, p) >= result.normsq)
}

/// The normalized-weight minimizer of the state within the standard
/// apartment.
pub fn optimal_destabilizer(state: &StateSet) -> DestabilizerReport {
    let certificate = min_norm_point(state);
    if certificate.normsq.is_zero() {
        return DestabilizerReport {
            status: Status::Stable,
            direction: None,
            nu_min: None,
            certificate,
        };
    }
    let direction = canonicalize_rational(&certificate.q).expect("a nonzero trace-zero vector is not central");
    let nu_min = NormalizedValue::new(-certificate.normsq.clone(), certificate.normsq.clone());
    let check = mu(state, &direction.representative()).expect("lengths agree");
    assert_eq!(check.nu.as_ref(), Some(&nu_min), "normalized weight at the direction differs from -|q|");
    DestabilizerReport {
        status: Status::Unstable,
        direction: Some(direction),
        nu_min: Some(nu_min),
        certificate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qf;
    use crate::opsub::{canonicalize, WeightVector};
    use proptest::prelude::*;

    fn st(cs: &[&[i64]]) -> StateSet {
        StateSet::new(cs.iter().map(|c| c.to_vec()).collect()).unwrap()
    }

    #[test]
    fn symmetric_pairs_contain_the_origin() {
        for s in [st(&[&[1, -1], &[-1, 1]]), st(&[&[1, 0], &[0, 1]])] {
            let r = min_norm_point(&s);
            assert_eq!(r.q, vec![q(0), q(0)]);
            assert_eq!(r, min_norm_point_oracle(&s).unwrap());
        }
    }

    #[test]
    fn double_line() {
        let s = st(&[&[2, 0, 0]]);
        let r = min_norm_point(&s);
        assert_eq!(r.q, vec![qf(4, 3), qf(-2, 3), qf(-2, 3)]);
        assert_eq!(r.normsq, qf(8, 3));
        assert_eq!(r, min_norm_point_oracle(&s).unwrap());
        let d = optimal_destabilizer(&s);
        assert_eq!(d.status, Status::Unstable);
        let three = canonicalize(&WeightVector::new(vec![3, 0, 0]).unwrap()).unwrap();
        assert_eq!(d.direction, Some(three));
        let nu = d.nu_min.unwrap();
        assert!(nu.is_negative());
        assert_eq!(nu.signed_square(), qf(-8, 3));
    }

    #[test]
    fn conic_is_stable() {
        let s = st(&[&[1, 0, 1], &[0, 2, 0]]);
        let d = optimal_destabilizer(&s);
        assert_eq!(d.status, Status::Stable);
        assert_eq!(d.direction, None);
        // 2/3 (1/3, -2/3, 1/3) + 1/3 (-2/3, 4/3, -2/3) = 0
        assert_eq!(d.certificate.support, vec![vec![0, 2, 0], vec![1, 0, 1]]);
        assert_eq!(d.certificate.combination, vec![qf(1, 3), qf(2, 3)]);
    }

    #[test]
    fn full_point_is_stable() {
        let s = st(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(optimal_destabilizer(&s).status, Status::Stable);
        assert_eq!(min_norm_point_oracle(&s).unwrap().q, vec![q(0); 3]);
    }

    #[test]
    fn oracle_caps() {
        let many: Vec<Vec<i64>> = (0..13).map(|i| vec![i, 0]).collect();
        assert!(matches!(min_norm_point_oracle(&StateSet::new(many).unwrap()), Err(Error::TooLarge(_))));
        assert!(matches!(min_norm_point_oracle(&StateSet::new(vec![vec![0; 9]]).unwrap()), Err(Error::TooLarge(_))));
    }

    #[test]
    fn zero_weight_in_minor_cycle() {
        let s = st(&[&[0, 0, 1, 1], &[0, 2, 0, 0], &[1, 0, 0, 1], &[1, 1, 0, 0]]);
        let w = min_norm_point(&s);
        let o = min_norm_point_oracle(&s).unwrap();
        assert_eq!(w.q, o.q);
        assert!(certificate_holds(&s, &w));
    }

    fn state() -> impl Strategy<Value = StateSet> {
        (2usize..6).prop_flat_map(|n| {
            proptest::collection::vec(proptest::collection::vec(-5i64..6, n), 1..9)
                .prop_map(|cs| StateSet::new(cs).unwrap())
        })
    }

    // lattice points of a dilated simplex: many affine coincidences
    fn homogeneous_state() -> impl Strategy<Value = StateSet> {
        (3usize..6, 1usize..4).prop_flat_map(|(n, d)| {
            let ch = proptest::collection::vec(0..n, d).prop_map(move |picks| {
                let mut c = vec![0i64; n];
                for i in picks {
                    c[i] += 1;
                }
                c
            });
            proptest::collection::vec(ch, 1..7).prop_map(|cs| StateSet::new(cs).unwrap())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn wolfe_matches_oracle_on_homogeneous(s in homogeneous_state()) {
            let w = min_norm_point(&s);
            let o = min_norm_point_oracle(&s).unwrap();
            prop_assert_eq!(&w.q, &o.q);
            prop_assert!(certificate_holds(&s, &w));
        }

        #[test]
        fn wolfe_matches_oracle(s in state()) {
            let w = min_norm_point(&s);
            let o = min_norm_point_oracle(&s).unwrap();
            prop_assert_eq!(&w.q, &o.q);
            prop_assert_eq!(&w.normsq, &o.normsq);
            prop_assert!(certificate_holds(&s, &w));
            prop_assert!(certificate_holds(&s, &o));
        }

        #[test]
        fn translation_invariance(s in state(), c in -4i64..5) {
            let shifted = StateSet::new(s.characters().iter().map(|ch| ch.iter().map(|x| x + c).collect()).collect()).unwrap();
            let a = optimal_destabilizer(&s);
            let b = optimal_destabilizer(&shifted);
            prop_assert_eq!(a.status, b.status);
            prop_assert_eq!(a.direction, b.direction);
            prop_assert_eq!(a.nu_min, b.nu_min);
        }
    }
}
