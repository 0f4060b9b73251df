//! Rational points of the spherical building of `GL(V)` as weighted flags.
//!
//! A framed one-parameter subgroup `lambda_f = f diag(t^{a}) f^{-1}` gives the
//! flag `F_1 < ... < F_k` of frame images of the "weight at least `w_j`"
//! coordinate spans, largest weight first, with barycentric gap coordinates
//! proportional to consecutive weight differences. Subspaces are stored as
//! reduced echelon bases, so equality of points is exact comparison.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{q, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::limits::max_cells;
use crate::opsub::WeightVector;

/// Proper nonzero subspace, stored as its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    /// Span of the rows of `spanning`. Fails unless the span is proper and
    /// nonzero.
    pub fn span(spanning: &Matrix) -> Result<Self> {
        let basis = spanning.row_space();
        if basis.rows() == 0 || basis.rows() == spanning.cols() {
            return Err(Error::parse("subspace", "must be proper and nonzero"));
        }
        Ok(Subspace { basis })
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        let mut rows = self.basis.to_rows();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.dim()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains_vector(other.basis.row(i)))
    }

    /// Whether `g` maps the subspace into itself (`g` acting on column
    /// vectors).
    pub fn is_stable_under(&self, g: &Matrix) -> bool {
        (0..self.dim()).all(|i| self.contains_vector(&g.mul_vec(self.basis.row(i))))
    }
}

/// Strictly increasing chain of proper subspaces: a simplex of the building.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    subspaces: Vec<Subspace>,
}

impl Flag {
    pub fn new(subspaces: Vec<Subspace>) -> Result<Self> {
        if subspaces.is_empty() {
            return Err(Error::parse("flag", "needs at least one subspace"));
        }
        for w in subspaces.windows(2) {
            if w[0].dim() >= w[1].dim() || !w[1].contains(&w[0]) {
                return Err(Error::parse("flag", "subspaces must be strictly increasing"));
            }
        }
        Ok(Flag { subspaces })
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }
}

/// A rational point of the building: a flag with positive gap coordinates
/// summing to 1. Under the correspondence with one-parameter subgroups this
/// is a test degeneration of exponent 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BuildingPoint {
    pub flag: Flag,
    pub gaps: Vec<Scalar>,
}

/// One-parameter subgroup `frame . diag(t^{a}) . frame^{-1}`. Column `j` of the
/// frame spans the eigenline of weight `a_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedOnePS {
    weights: WeightVector,
    frame: Matrix,
}

impl FramedOnePS {
    pub fn new(weights: WeightVector, frame: Matrix) -> Result<Self> {
        Error::check_len(weights.len(), frame.rows())?;
        Error::check_len(weights.len(), frame.cols())?;
        if frame.determinant().is_zero() {
            return Err(Error::SingularMatrix);
        }
        Ok(FramedOnePS { weights, frame })
    }

    pub fn diagonal(weights: WeightVector) -> Self {
        let n = weights.len();
        FramedOnePS {
            weights,
            frame: Matrix::identity(n),
        }
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn frame(&self) -> &Matrix {
        &self.frame
    }

    /// `p lambda p^{-1}`: the same weights on the frame `p . frame`.
    pub fn conjugate(&self, p: &Matrix) -> Result<Self> {
        FramedOnePS::new(self.weights.clone(), p * &self.frame)
    }

    /// `g` expressed in the eigenbasis: `frame^{-1} g frame`.
    fn in_eigenbasis(&self, g: &Matrix) -> Result<Matrix> {
        let inv = self.frame.inverse()?;
        Ok(&(&inv * g) * &self.frame)
    }
}

/// The flag and gaps of the class of `lambda` modulo scaling, central twists
/// and conjugation by its parabolic subgroup.
pub fn building_point_of(lambda: &FramedOnePS) -> Result<BuildingPoint> {
    let a = lambda.weights.entries();
    if lambda.weights.is_central() {
        return Err(Error::CentralSubgroup);
    }
    let mut levels: Vec<i64> = a.to_vec();
    levels.sort_unstable_by(|x, y| y.cmp(x));
    levels.dedup();
    let frame_t = lambda.frame.transpose();
    let mut subspaces = Vec::new();
    for &w in &levels[..levels.len() - 1] {
        let cols: Vec<usize> = (0..a.len()).filter(|&i| a[i] >= w).collect();
        subspaces.push(Subspace::span(&frame_t.select_rows(&cols))?);
    }
    let diffs: Vec<i64> = levels.windows(2).map(|p| p[0] - p[1]).collect();
    let total: i64 = diffs.iter().sum();
    let gaps = diffs.iter().map(|&d| Scalar::new(d.into(), total.into())).collect();
    Ok(BuildingPoint {
        flag: Flag::new(subspaces)?,
        gaps,
    })
}

/// Whether `lambda(t) g lambda(t)^{-1}` has a limit in `GL` as `t -> 0`: in the
/// eigenbasis every entry `g_ij` with `a_i < a_j` vanishes.
pub fn parabolic_contains(lambda: &FramedOnePS, g: &Matrix) -> Result<bool> {
    Error::check_len(lambda.weights.len(), g.rows())?;
    if !g.is_square() || g.determinant().is_zero() {
        return Err(Error::SingularMatrix);
    }
    let h = lambda.in_eigenbasis(g)?;
    let a = lambda.weights.entries();
    let n = a.len();
    Ok((0..n).all(|i| (0..n).all(|j| a[i] >= a[j] || h[(i, j)].is_zero())))
}

/// Equality of building points, hence of test degenerations.
pub fn same_building_point(l1: &FramedOnePS, l2: &FramedOnePS) -> Result<bool> {
    Error::check_len(l1.weights.len(), l2.weights.len())?;
    Ok(building_point_of(l1)? == building_point_of(l2)?)
}

/// Laurent polynomial in two variables `(tau, t)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct Laurent2(BTreeMap<(i64, i64), Scalar>);

impl Laurent2 {
    fn monomial(c: Scalar, tau: i64, t: i64) -> Self {
        let mut m = BTreeMap::new();
        if !c.is_zero() {
            m.insert((tau, t), c);
        }
        Laurent2(m)
    }

    fn add_assign(&mut self, other: &Laurent2) {
        for (k, c) in &other.0 {
            let e = self.0.entry(*k).or_insert_with(Scalar::zero);
            *e += c;
            if e.is_zero() {
                self.0.remove(k);
            }
        }
    }

    fn mul(&self, other: &Laurent2) -> Laurent2 {
        let mut out = Laurent2::default();
        for ((a1, b1), c1) in &self.0 {
            for ((a2, b2), c2) in &other.0 {
                out.add_assign(&Laurent2::monomial(c1 * c2, a1 + a2, b1 + b2));
            }
        }
        out
    }

    /// `t -> tau * t`.
    fn substitute_tau_t(&self) -> Laurent2 {
        Laurent2(self.0.iter().map(|((a, b), c)| ((a + b, *b), c.clone())).collect())
    }

    /// `t -> 1`.
    fn at_t_one(&self) -> Laurent2 {
        let mut out = Laurent2::default();
        for ((a, _), c) in &self.0 {
            out.add_assign(&Laurent2::monomial(c.clone(), *a, 0));
        }
        out
    }

    fn is_polynomial_in_t(&self) -> bool {
        self.0.keys().all(|(_, b)| *b >= 0)
    }
}

type LaurentMatrix = Vec<Vec<Laurent2>>;

fn lmul(x: &LaurentMatrix, y: &LaurentMatrix) -> LaurentMatrix {
    let n = x.len();
    let m = y[0].len();
    let mut out = vec![vec![Laurent2::default(); m]; n];
    for i in 0..n {
        for k in 0..y.len() {
            if x[i][k].0.is_empty() {
                continue;
            }
            for j in 0..m {
                let prod = x[i][k].mul(&y[k][j]);
                out[i][j].add_assign(&prod);
            }
        }
    }
    out
}

fn constant(m: &Matrix) -> LaurentMatrix {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| Laurent2::monomial(m[(i, j)].clone(), 0, 0)).collect())
        .collect()
}

fn diag_tau(a: &[i64], sign: i64) -> LaurentMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Laurent2::monomial(Scalar::one(), sign * a[i], 0) } else { Laurent2::default() })
                .collect()
        })
        .collect()
}

/// Symbolic check of the frame twist. With `p` in the parabolic of
/// `lambda_f`, build `p(t)` by scaling the block of `p` from eigenspace `V_i`
/// to `V_j` by `t^{w_j - w_i}`, and verify
///
/// * `p(t)` is polynomial in `t` (it extends over `t = 0`),
/// * `p(tau t) diag(tau^a) = diag(tau^a) p(t)`, so `p(t) o f` is again an
///   equivariant trivialization,
/// * the one-parameter subgroup read off through `p(t) o f` at `t = 1` is
///   `p lambda_f p^{-1}`,
///
/// all as identities of Laurent polynomials in `(tau, t)`.
pub fn verify_frame_twist(lambda: &FramedOnePS, p: &Matrix) -> Result<bool> {
    if !parabolic_contains(lambda, p)? {
        return Err(Error::NotInParabolic);
    }
    let a = lambda.weights.entries();
    let n = a.len();
    let pe = lambda.in_eigenbasis(p)?;

    // p(t): entry (row r in V_j, column c in V_i) scaled by t^{w_j - w_i}
    let pt: LaurentMatrix = (0..n)
        .map(|r| (0..n).map(|c| Laurent2::monomial(pe[(r, c)].clone(), 0, a[r] - a[c])).collect())
        .collect();
    if !pt.iter().flatten().all(Laurent2::is_polynomial_in_t) {
        return Ok(false);
    }

    let d = diag_tau(a, 1);
    let pt_tau: LaurentMatrix = pt.iter().map(|row| row.iter().map(Laurent2::substitute_tau_t).collect()).collect();
    if lmul(&pt_tau, &d) != lmul(&d, &pt) {
        return Ok(false);
    }

    // transport the action through p(1) o f back to the original coordinates
    let p1: LaurentMatrix = pt.iter().map(|row| row.iter().map(Laurent2::at_t_one).collect()).collect();
    let p1_num = Matrix::from_rows(
        p1.iter()
            .map(|row| row.iter().map(|e| e.0.get(&(0, 0)).cloned().unwrap_or_else(Scalar::zero)).collect())
            .collect(),
    );
    let p1_inv = constant(&p1_num.inverse()?);
    let frame = constant(&lambda.frame);
    let frame_inv = constant(&lambda.frame.inverse()?);
    let twisted = lmul(&lmul(&lmul(&lmul(&frame, &p1), &d), &p1_inv), &frame_inv);

    let lambda_f = lmul(&lmul(&frame, &d), &frame_inv);
    let conj = lmul(&lmul(&constant(p), &lambda_f), &constant(&p.inverse()?));
    Ok(twisted == conj)
}

/// Fubini number minus one: chains of nonempty proper subsets of an
/// `n`-set (ordered set partitions into at least two blocks).
pub fn coordinate_simplex_count(n: usize) -> u128 {
    // a(m) = sum_{k=1}^{m} C(m, k) a(m - k), a(0) = 1
    let mut fubini = vec![1u128];
    for m in 1..=n {
        let mut binom = 1u128;
        let mut total = 0u128;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u128 / k as u128;
            total += binom * fubini[m - k];
        }
        fubini.push(total);
    }
    fubini[n] - 1
}

/// All simplices of the apartment of the diagonal torus in dimension `n`:
/// flags of coordinate subspaces.
pub fn enumerate_coordinate_simplices(n: usize) -> Result<Vec<Flag>> {
    if n < 2 {
        return Err(Error::parse("dimension", "need at least two coordinates"));
    }
    if n > 12 {
        return Err(Error::TooLarge(format!("{n} coordinates (at most 12)")));
    }
    let count = coordinate_simplex_count(n);
    if count > max_cells() as u128 {
        return Err(Error::TooLarge(format!("{count} coordinate flags")));
    }
    let full: u32 = (1 << n) - 1;
    let mut chains: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    extend_chains(0, full, &mut stack, &mut chains);
    let flags = chains
        .into_iter()
        .map(|chain| {
            let subspaces = chain
                .into_iter()
                .map(|mask| {
                    let rows: Vec<Vec<Scalar>> = (0..n)
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect())
                        .collect();
                    Subspace::span(&Matrix::from_rows(rows))
                })
                .collect::<Result<Vec<_>>>()?;
            Flag::new(subspaces)
        })
        .collect::<Result<Vec<_>>>()?;
    debug_assert_eq!(flags.len() as u128, count);
    Ok(flags)
}

fn extend_chains(last: u32, full: u32, stack: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    // strict supersets of `last`, excluding the full set
    let free = full & !last;
    let mut sub = free;
    while sub != 0 {
        let next = last | sub;
        if next != full {
            stack.push(next);
            out.push(stack.clone());
            extend_chains(next, full, stack, out);
            stack.pop();
        }
        sub = (sub - 1) & free;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::qf;

    fn w(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    fn e(n: usize, idx: &[usize]) -> Matrix {
        Matrix::from_rows(
            idx.iter()
                .map(|&i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect())
                .collect(),
        )
    }

    #[test]
    fn single_gap() {
        let p = building_point_of(&FramedOnePS::diagonal(w(&[1, 0, 0]))).unwrap();
        assert_eq!(p.flag.len(), 1);
        assert_eq!(p.flag.subspaces()[0].basis(), &e(3, &[0]));
        assert_eq!(p.gaps, vec![q(1)]);
    }

    #[test]
    fn equal_gaps() {
        let p = building_point_of(&FramedOnePS::diagonal(w(&[2, 1, 0]))).unwrap();
        assert_eq!(p.flag.subspaces()[0].basis(), &e(3, &[0]));
        assert_eq!(p.flag.subspaces()[1].basis(), &e(3, &[0, 1]));
        assert_eq!(p.gaps, vec![qf(1, 2), qf(1, 2)]);
    }

    #[test]
    fn relations_one_and_three() {
        let a = FramedOnePS::diagonal(w(&[3, 1, 1]));
        let b = FramedOnePS::diagonal(w(&[2, 0, 0]));
        assert!(same_building_point(&a, &b).unwrap());
        let c = FramedOnePS::diagonal(w(&[0, 1, 0]));
        assert!(!same_building_point(&FramedOnePS::diagonal(w(&[1, 0, 0])), &c).unwrap());
        assert_eq!(
            building_point_of(&FramedOnePS::diagonal(w(&[4, 4]))),
            Err(Error::CentralSubgroup)
        );
    }

    #[test]
    fn parabolic_membership() {
        let l = FramedOnePS::diagonal(w(&[1, 0]));
        // entry (0, 1) scales by t^{1 - 0}: the limit exists
        assert!(parabolic_contains(&l, &Matrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap());
        // entry (1, 0) scales by t^{-1}: no limit
        assert!(!parabolic_contains(&l, &Matrix::from_i64(&[&[1, 0], &[1, 1]])).unwrap());
        assert!(parabolic_contains(&FramedOnePS::diagonal(w(&[0, 3, 1])), &Matrix::identity(3)).unwrap());
        assert_eq!(
            parabolic_contains(&l, &Matrix::from_i64(&[&[1, 2], &[2, 4]])),
            Err(Error::SingularMatrix)
        );
    }

    #[test]
    fn conjugation_in_the_parabolic_keeps_the_point() {
        let l = FramedOnePS::diagonal(w(&[1, 0, 0]));
        let p = Matrix::from_i64(&[&[2, 1, -1], &[0, 1, 1], &[0, 3, 1]]);
        assert!(parabolic_contains(&l, &p).unwrap());
        assert!(same_building_point(&l, &l.conjugate(&p).unwrap()).unwrap());
        let doubled = FramedOnePS::diagonal(w(&[2, 0, 0]));
        assert!(same_building_point(&l, &doubled).unwrap());
    }

    #[test]
    fn frame_twist_examples() {
        let l = FramedOnePS::diagonal(w(&[1, 0]));
        assert!(verify_frame_twist(&l, &Matrix::identity(2)).unwrap());
        assert!(verify_frame_twist(&l, &Matrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap());
        let l3 = FramedOnePS::diagonal(w(&[2, 1, 0]));
        assert!(verify_frame_twist(&l3, &Matrix::from_i64(&[&[1, 5, -2], &[0, 1, 3], &[0, 0, 1]])).unwrap());
        assert_eq!(
            verify_frame_twist(&l, &Matrix::from_i64(&[&[1, 0], &[1, 1]])),
            Err(Error::NotInParabolic)
        );
        // non-identity frame
        let framed = FramedOnePS::new(w(&[0, 2, 1]), Matrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap();
        let blocky = framed.frame().clone();
        let inv = blocky.inverse().unwrap();
        // upper block in the eigenbasis, pushed back through the frame
        let pe = Matrix::from_i64(&[&[1, 0, 0], &[4, 2, 1], &[-1, 0, 1]]);
        let p = &(&blocky * &pe) * &inv;
        assert!(parabolic_contains(&framed, &p).unwrap());
        assert!(verify_frame_twist(&framed, &p).unwrap());
    }

    #[test]
    fn coordinate_simplices() {
        let two = enumerate_coordinate_simplices(2).unwrap();
        assert_eq!(two.len(), 2);
        let three = enumerate_coordinate_simplices(3).unwrap();
        assert_eq!(three.len(), 12);
        assert_eq!(three.iter().filter(|f| f.len() == 1).count(), 6);
        assert_eq!(three.iter().filter(|f| f.len() == 2).count(), 6);
        assert_eq!(coordinate_simplex_count(2), 2);
        assert_eq!(enumerate_coordinate_simplices(5).unwrap().len() as u128, coordinate_simplex_count(5));
        assert!(matches!(enumerate_coordinate_simplices(13), Err(Error::TooLarge(_))));
    }
}
