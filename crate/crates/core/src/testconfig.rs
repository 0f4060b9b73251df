//! Test degenerations of an embedded variety by diagonal one-parameter
//! subgroups: flat limits, the almost-trivial screen and the
//! Donaldson-Futaki invariant.
//!
//! The Donaldson-Futaki invariant is read off the central fiber `X_0`. With
//! `h(k) = a0 k^n + a1 k^{n-1} + ...` its Hilbert polynomial and
//! `w(k) = b0 k^{n+1} + b1 k^n + ...` the total weight on `(S / I_0)_k`,
//! `df = 2 (a1 b0 - a0 b1) / a0`. A standard monomial `x^alpha` carries weight
//! `<a - mean(a) 1, alpha>`; with this sign the conic has `df >= 0` on all
//! of its degenerations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{groebner_basis, q, HomogeneousIdeal, Monomial, MonomialOrder, Polynomial, Scalar};
use crate::error::{Error, Result};
use crate::kempf::{optimal_destabilizer, DestabilizerReport};
use crate::limits::max_cells;
use crate::opsub::{canonicalize, ApartmentPoint, WeightVector};
use crate::stability::state_of_hilbert_point;

/// Degrees up to which flat limits are checked to preserve the Hilbert
/// function.
pub const FLATNESS_DEGREE: usize = 8;

/// A test degeneration of `V(ideal)` in its exponent-`r` embedding, by the
/// weight vector `weights` on its coordinates.
#[derive(Clone, Debug)]
pub struct TestDegeneration {
    exponent: u32,
    ideal: HomogeneousIdeal,
    weights: WeightVector,
    point: Option<ApartmentPoint>,
    central_fiber: HomogeneousIdeal,
}

impl TestDegeneration {
    /// Computes and caches the central fiber. `point` is `None` for central
    /// weights, the product configuration.
    pub fn new(ideal: HomogeneousIdeal, exponent: u32, weights: WeightVector) -> Result<Self> {
        Error::check_len(ideal.nvars(), weights.len())?;
        if exponent == 0 {
            return Err(Error::parse("exponent", "must be at least 1"));
        }
        let point = if weights.is_central() { None } else { Some(canonicalize(&weights)?) };
        let central_fiber = match &point {
            None => ideal.clone(),
            Some(p) => checked_initial_ideal(&ideal, p.canonical())?,
        };
        Ok(TestDegeneration {
            exponent,
            ideal,
            weights,
            point,
            central_fiber,
        })
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn ideal(&self) -> &HomogeneousIdeal {
        &self.ideal
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn point(&self) -> Option<&ApartmentPoint> {
        self.point.as_ref()
    }

    pub fn central_fiber(&self) -> &HomogeneousIdeal {
        &self.central_fiber
    }
}

fn checked_initial_ideal(ideal: &HomogeneousIdeal, a: &[i64]) -> Result<HomogeneousIdeal> {
    let limit = ideal.initial_ideal(a)?;
    for k in 0..=FLATNESS_DEGREE {
        if ideal.hilbert_function(k) != limit.hilbert_function(k) {
            return Err(Error::FlatnessViolation(k));
        }
    }
    Ok(limit)
}

/// The `t -> 0` limit of `V(I)` under `t . X_i = t^{a_i} X_i`.
pub fn flat_limit(td: &TestDegeneration) -> HomogeneousIdeal {
    td.central_fiber.clone()
}

/// Outcome of the necessary condition for almost triviality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Fails,
    Possible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlmostTrivialReport {
    /// Number of minimal weights, minus one.
    pub c: usize,
    /// Whether the coordinates of minimal weight have a common zero on `X`.
    pub meets: bool,
    pub verdict: Verdict,
}

/// An almost trivial degeneration of a non-degenerate `X` has more than
/// `dim X + 1` minimal weights, and their coordinate subspace misses `X`.
/// `Possible` never proves almost triviality.
pub fn almost_trivial_necessary(ideal: &HomogeneousIdeal, a: &WeightVector) -> Result<AlmostTrivialReport> {
    Error::check_len(ideal.nvars(), a.len())?;
    if ideal.is_unit() {
        return Err(Error::EmptyScheme);
    }
    let dim = ideal.dimension()?;
    almost_trivial_with_dim(ideal, a, dim)
}

fn almost_trivial_with_dim(ideal: &HomogeneousIdeal, a: &WeightVector, dim: Option<usize>) -> Result<AlmostTrivialReport> {
    if !ideal.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    if a.is_central() {
        return Err(Error::CentralSubgroup);
    }
    let n = ideal.nvars();
    let minimal = a.argmin();
    let c = minimal.len() - 1;
    let vars: Vec<Polynomial> = minimal.iter().map(|&j| Polynomial::var(n, j)).collect();
    let meets = !ideal.sum(&vars)?.is_empty_projective();
    let too_few = dim.is_some_and(|d| c <= d);
    let verdict = if too_few || meets { Verdict::Fails } else { Verdict::Possible };
    Ok(AlmostTrivialReport { c, meets, verdict })
}

/// Whether the ideal generated by `gens`, in variables whose last one is `t`,
/// is `(t^N)` for some `N >= 1`; returns that `N`.
pub fn is_t_power_flag_ideal(gens: &[Polynomial]) -> Option<u32> {
    let basis = groebner_basis(gens, &MonomialOrder::DegLex);
    let [g] = basis.as_slice() else { return None };
    if g.len() != 1 {
        return None;
    }
    let (m, _) = g.terms().next()?;
    let last = m.nvars() - 1;
    match m.pure_power_var() {
        Some(i) if i == last => Some(m.degree()),
        _ => None,
    }
}

/// Hilbert and weight polynomial coefficients and the Donaldson-Futaki
/// invariant of a test degeneration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DfReport {
    #[serde(with = "crate::algebra::rational_string")]
    pub a0: Scalar,
    #[serde(with = "crate::algebra::rational_string")]
    pub a1: Scalar,
    #[serde(with = "crate::algebra::rational_string")]
    pub b0: Scalar,
    #[serde(with = "crate::algebra::rational_string")]
    pub b1: Scalar,
    #[serde(with = "crate::algebra::rational_string")]
    pub df: Scalar,
}

pub fn df_invariant(td: &TestDegeneration) -> Result<DfReport> {
    let weights = td.weights.centered();
    let (h, w) = td.central_fiber.hilbert_and_weight_polynomials(&weights)?;
    let n = h.degree().ok_or(Error::EmptyScheme)? as i64;
    let a0 = h.coeff_signed(n);
    let a1 = h.coeff_signed(n - 1);
    let b0 = w.coeff_signed(n + 1);
    let b1 = w.coeff_signed(n);
    let df = q(2) * (&a1 * &b0 - &a0 * &b1) / &a0;
    Ok(DfReport { a0, a1, b0, b1, df })
}

/// Whether `j = s . i` for a diagonal scaling `s` of the coordinates, over
/// an algebraically closed field. Both reduced degrevlex bases must have the
/// same supports; the coefficient ratios `r_beta` then have to be the values
/// `s^{beta - lm}` of a character, which holds when every integer relation
/// among the exponent differences is respected by the ratios.
pub fn torus_equivalent(i: &HomogeneousIdeal, j: &HomogeneousIdeal) -> bool {
    if i.nvars() != j.nvars() {
        return false;
    }
    let order = MonomialOrder::DegRevLex;
    let (gi, gj) = (i.groebner_basis(&order), j.groebner_basis(&order));
    if gi.len() != gj.len() {
        return false;
    }
    let n = i.nvars();
    let mut vectors: Vec<Vec<i64>> = Vec::new();
    let mut ratios: Vec<Scalar> = Vec::new();
    for (f, g) in gi.iter().zip(gj.iter()) {
        let fs: Vec<&Monomial> = f.support().collect();
        let gs: Vec<&Monomial> = g.support().collect();
        if fs != gs {
            return false;
        }
        let lm = f.leading_term(&order).expect("nonzero").0;
        for m in fs {
            if m == lm {
                continue;
            }
            vectors.push((0..n).map(|k| m.exponents()[k] as i64 - lm.exponents()[k] as i64).collect());
            ratios.push(g.coefficient(m) / f.coefficient(m));
        }
    }
    integer_kernel(&vectors, n).iter().all(|rel| {
        let mut prod = Scalar::one();
        for (k, r) in rel.iter().zip(&ratios) {
            let e = k.to_i32().expect("small relation");
            prod *= num_traits::pow::Pow::pow(r, e);
        }
        prod.is_one()
    })
}

/// A basis of the lattice `{k in Z^m : sum_b k_b v_b = 0}` by unimodular
/// column reduction.
fn integer_kernel(vectors: &[Vec<i64>], n: usize) -> Vec<Vec<BigInt>> {
    let m = vectors.len();
    // columns of `a` are the vectors; `u` tracks the column operations
    let mut a: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut u: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| BigInt::from(i64::from(i == j))).collect())
        .collect();
    let mut pivot_col = 0;
    for row in 0..n {
        if pivot_col >= m {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (pivot_col..m).filter(|&c| !a[c][row].is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let best = *nonzero.iter().min_by_key(|&&c| a[c][row].abs()).expect("nonempty");
            a.swap(pivot_col, best);
            u.swap(pivot_col, best);
            let mut done = true;
            for c in pivot_col + 1..m {
                if a[c][row].is_zero() {
                    continue;
                }
                let f = a[c][row].div_floor(&a[pivot_col][row]);
                for r in 0..n {
                    let t = &f * &a[pivot_col][r];
                    a[c][r] -= t;
                }
                for r in 0..m {
                    let t = &f * &u[pivot_col][r];
                    u[c][r] -= t;
                }
                if !a[c][row].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot_col += 1;
                break;
            }
        }
    }
    (0..m).filter(|&c| a[c].iter().all(Zero::is_zero)).map(|c| u[c].clone()).collect()
}

/// One direction of a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub weights: WeightVector,
    pub point: ApartmentPoint,
    pub almost_trivial: AlmostTrivialReport,
    /// Set when the direction passed the necessary condition and its flat
    /// limit is a coordinate rescaling of `X`; such directions are excluded
    /// from the minimum.
    pub screened: bool,
    pub df: DfReport,
    pub central_fiber: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimumDf {
    #[serde(with = "crate::algebra::rational_string")]
    pub df: Scalar,
    pub point: ApartmentPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentSweep {
    pub exponent: u32,
    pub coordinates: Vec<String>,
    /// The monomial of `X`'s variables behind each coordinate.
    pub coordinate_monomials: Vec<String>,
    pub ideal: Vec<String>,
    pub entries: Vec<SweepEntry>,
    pub minimum: Option<MinimumDf>,
    /// Degree of the Hilbert point used for `kempf`.
    pub kempf_degree: Option<u32>,
    pub kempf: Option<DestabilizerReport>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweepStatus {
    /// No unscreened direction was examined.
    Inconclusive,
    /// Every unscreened direction has `df >= 0`.
    Nonnegative,
    /// Some unscreened direction has `df < 0`.
    Destabilized,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub status: SweepStatus,
    pub exponents: Vec<ExponentSweep>,
}

/// `X` in its exponent-`r` embedding by the degree-`r` standard monomials,
/// with coordinates `u0, u1, ...` in [`HomogeneousIdeal::standard_monomials`]
/// order. For `r = 1` and non-degenerate `X` this is `I` itself.
pub fn exponent_embedding(ideal: &HomogeneousIdeal, r: u32) -> Result<HomogeneousIdeal> {
    if r == 1 && ideal.is_nondegenerate() {
        return Ok(ideal.clone());
    }
    let coords = ideal.standard_monomials(r as usize);
    if coords.len() < 2 {
        return Err(Error::DegenerateDegree(r as usize));
    }
    let names = (0..coords.len()).map(|j| format!("u{j}")).collect();
    ideal.reembed(&coords, names)
}

/// Sweeps the directions with entries in `[0, bound]` on the exponent-`r`
/// coordinates for `r <= r_max`, reporting the minimum DF over directions not
/// screened as almost trivial, and the optimal destabilizer of a Hilbert
/// point of each embedding.
pub fn k_stability_sweep(ideal: &HomogeneousIdeal, r_max: u32, bound: u32) -> Result<SweepReport> {
    if ideal.is_unit() {
        return Err(Error::EmptyScheme);
    }
    let mut exponents = Vec::new();
    for r in 1..=r_max {
        exponents.push(sweep_exponent(ideal, r, bound)?);
    }
    let mins: Vec<&MinimumDf> = exponents.iter().filter_map(|e| e.minimum.as_ref()).collect();
    let status = if mins.is_empty() {
        SweepStatus::Inconclusive
    } else if mins.iter().any(|m| m.df.is_negative()) {
        SweepStatus::Destabilized
    } else {
        SweepStatus::Nonnegative
    };
    Ok(SweepReport { status, exponents })
}

fn grid_points(n: usize, bound: u32) -> Result<Vec<WeightVector>> {
    let side = bound as u128 + 1;
    let count = side.checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > max_cells() as u128 {
        return Err(Error::TooLarge(format!("{count} grid directions")));
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut v = vec![0i64; n];
    loop {
        let w = WeightVector::new(v.clone())?;
        if !w.is_central() && seen.insert(canonicalize(&w)?) {
            out.push(w);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if v[i] < bound as i64 {
                v[i] += 1;
                break;
            }
            v[i] = 0;
        }
    }
}

fn sweep_exponent(ideal: &HomogeneousIdeal, r: u32, bound: u32) -> Result<ExponentSweep> {
    let j = exponent_embedding(ideal, r)?;
    let coordinate_monomials = if r == 1 && ideal.is_nondegenerate() {
        ideal.variables().to_vec()
    } else {
        ideal.standard_monomials(r as usize).iter().map(|m| m.display_with(ideal.variables())).collect()
    };
    let dim = j.dimension()?;
    let grid = grid_points(j.nvars(), bound)?;
    let entries = grid
        .into_par_iter()
        .map(|a| {
            let td = TestDegeneration::new(j.clone(), r, a.clone())?;
            let almost_trivial = almost_trivial_with_dim(&j, &a, dim)?;
            let screened = almost_trivial.verdict == Verdict::Possible && torus_equivalent(&j, td.central_fiber());
            Ok(SweepEntry {
                point: td.point.clone().expect("grid skips central directions"),
                df: df_invariant(&td)?,
                central_fiber: td.central_fiber.generator_strings(),
                weights: a,
                almost_trivial,
                screened,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let minimum = entries
        .iter()
        .filter(|e| !e.screened)
        .min_by(|x, y| x.df.df.cmp(&y.df.df).then_with(|| x.point.cmp(&y.point)))
        .map(|e| MinimumDf {
            df: e.df.df.clone(),
            point: e.point.clone(),
        });
    let mut kempf_degree = None;
    let mut kempf = None;
    for d in 2..=4u32 {
        match state_of_hilbert_point(&j, d) {
            Ok(state) => {
                kempf_degree = Some(d);
                kempf = Some(optimal_destabilizer(&state));
                break;
            }
            Err(Error::DegenerateDegree(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(ExponentSweep {
        exponent: r,
        coordinates: j.variables().to_vec(),
        coordinate_monomials,
        ideal: j.generator_strings(),
        entries,
        minimum,
        kempf_degree,
        kempf,
    })
}
