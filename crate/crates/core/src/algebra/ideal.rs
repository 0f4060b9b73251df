use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::groebner::{groebner_basis, normal_form};
use super::hilbert::{regularity_bound, HilbertPolynomial, StandardMonomials};
use super::matrix::Matrix;
use super::monomial::{monomials_of_degree, Monomial, MonomialOrder};
use super::parse::parse_polynomial;
use super::polynomial::Polynomial;
use super::scalar::{q, Scalar};
use super::univariate::UniPoly;
use crate::error::{Error, Result};

/// Extra degrees checked past an interpolation window.
const VERIFY_DEGREES: usize = 2;
/// How many times the window is pushed out before giving up.
const MAX_WINDOW_RAISES: usize = 8;

type BasisCache = Arc<Mutex<HashMap<MonomialOrder, Arc<Vec<Polynomial>>>>>;

/// Homogeneous ideal of a polynomial ring with named variables, defining a
/// projective scheme `V(I)`.
///
/// Gröbner bases are computed on demand and cached per monomial order. Clones
/// share the cache. Concurrent readers see either no entry or a complete
/// basis.
#[derive(Clone)]
pub struct HomogeneousIdeal {
    variables: Arc<[String]>,
    generators: Vec<Polynomial>,
    cache: BasisCache,
}

impl HomogeneousIdeal {
    /// Zero generators are dropped. Every remaining generator must be
    /// homogeneous and live in `variables.len()` variables.
    pub fn new(variables: Vec<String>, generators: Vec<Polynomial>) -> Result<Self> {
        if variables.is_empty() {
            return Err(Error::parse("variables", "at least one variable is required"));
        }
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::parse("variables", format!("duplicate variable {v:?}")));
            }
        }
        let n = variables.len();
        let mut gens = Vec::new();
        for g in generators {
            Error::check_len(n, g.nvars())?;
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous);
            }
            gens.push(g);
        }
        Ok(HomogeneousIdeal {
            variables: variables.into(),
            generators: gens,
            cache: Arc::default(),
        })
    }

    pub fn parse(variables: &[&str], generators: &[&str]) -> Result<Self> {
        let names: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let gens = generators
            .iter()
            .map(|g| parse_polynomial(g, &names))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, gens)
    }

    pub fn zero(variables: Vec<String>) -> Result<Self> {
        Self::new(variables, Vec::new())
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn generator_strings(&self) -> Vec<String> {
        self.generators
            .iter()
            .map(|g| g.display_with(&self.variables))
            .collect()
    }

    /// Same variables, different generators.
    pub fn with_generators(&self, generators: Vec<Polynomial>) -> Result<Self> {
        Self::new(self.variables.to_vec(), generators)
    }

    /// `I + (extra)`.
    pub fn sum(&self, extra: &[Polynomial]) -> Result<Self> {
        let mut g = self.generators.clone();
        g.extend(extra.iter().cloned());
        self.with_generators(g)
    }

    /// Reduced Gröbner basis under `order`, cached.
    pub fn groebner_basis(&self, order: &MonomialOrder) -> Arc<Vec<Polynomial>> {
        if let Some(b) = self.cache.lock().expect("basis cache poisoned").get(order) {
            return Arc::clone(b);
        }
        let basis = Arc::new(groebner_basis(&self.generators, order));
        let mut cache = self.cache.lock().expect("basis cache poisoned");
        Arc::clone(cache.entry(order.clone()).or_insert(basis))
    }

    pub fn leading_monomials(&self, order: &MonomialOrder) -> Vec<Monomial> {
        self.groebner_basis(order)
            .iter()
            .map(|g| g.leading_term(order).expect("nonzero basis element").0.clone())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis(&MonomialOrder::DegRevLex)
            .iter()
            .any(Polynomial::is_constant)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        let order = MonomialOrder::DegRevLex;
        normal_form(f, &self.groebner_basis(&order), &order).is_zero()
    }

    /// Equality as ideals, decided by comparing reduced bases.
    pub fn same_ideal(&self, other: &HomogeneousIdeal) -> bool {
        let order = MonomialOrder::DegRevLex;
        self.nvars() == other.nvars() && self.groebner_basis(&order) == other.groebner_basis(&order)
    }

    /// The weighted initial ideal: generated by the initial forms, terms of
    /// minimal `<a, alpha>`, of a Gröbner basis for the weight order of `a`
    /// refined by degrevlex. This is the `t -> 0` flat limit of the family
    /// `t . X_i = t^{a_i} X_i`.
    pub fn initial_ideal(&self, a: &[i64]) -> Result<HomogeneousIdeal> {
        Error::check_len(self.nvars(), a.len())?;
        let gb = self.groebner_basis(&MonomialOrder::min_weight(a));
        let forms = gb.iter().map(|g| g.initial_form(a)).collect();
        self.with_generators(forms)
    }

    /// Basis of the degree-`d` piece `I_d` in reduced echelon form, with
    /// columns indexed by [`monomials_of_degree`].
    pub fn degree_piece(&self, d: u32) -> Matrix {
        let n = self.nvars();
        let cols = monomials_of_degree(n, d);
        let index: HashMap<&Monomial, usize> = cols.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows = Vec::new();
        for g in &self.generators {
            let Some(e) = g.homogeneous_degree() else { continue };
            if e > d {
                continue;
            }
            for m in monomials_of_degree(n, d - e) {
                let mut row = vec![Scalar::zero(); cols.len()];
                for (t, c) in g.terms() {
                    row[index[&t.mul(&m)]] = c.clone();
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Matrix::zeros(0, cols.len());
        }
        Matrix::from_rows(rows).row_space()
    }

    /// `dim_k (S / I)_k`: degree-`k` monomials minus those in the leading
    /// term ideal.
    pub fn hilbert_function(&self, k: usize) -> usize {
        let lms = self.leading_monomials(&MonomialOrder::DegRevLex);
        StandardMonomials::new(self.nvars(), &lms).advance_to(k).len()
    }

    /// Degree-`k` monomials outside the degrevlex leading term ideal: a basis
    /// of `(S / I)_k`, in increasing degrevlex order.
    pub fn standard_monomials(&self, k: usize) -> Vec<Monomial> {
        let lms = self.leading_monomials(&MonomialOrder::DegRevLex);
        StandardMonomials::new(self.nvars(), &lms).advance_to(k).to_vec()
    }

    fn window_start(&self, lms: &[Monomial]) -> usize {
        let gen_degrees: usize = self
            .generators
            .iter()
            .filter_map(|g| g.homogeneous_degree())
            .map(|d| d as usize)
            .sum();
        (gen_degrees + self.nvars()).max(regularity_bound(self.nvars(), lms))
    }

    /// Interpolates `values(k)` for `k` in a window past stabilization with a
    /// polynomial of degree `< samples` and certifies it on further degrees.
    fn interpolate_stable<F>(&self, lms: &[Monomial], samples: usize, mut values: F) -> Result<(UniPoly, usize)>
    where
        F: FnMut(&[Monomial]) -> Scalar,
    {
        let mut start = self.window_start(lms);
        for _ in 0..=MAX_WINDOW_RAISES {
            let mut walker = StandardMonomials::new(self.nvars(), lms);
            let mut xs = Vec::new();
            let mut ys = Vec::new();
            for k in start..start + samples + VERIFY_DEGREES {
                xs.push(q(k as i64));
                ys.push(values(walker.advance_to(k)));
            }
            let poly = UniPoly::interpolate(&xs[..samples], &ys[..samples]);
            if xs[samples..].iter().zip(&ys[samples..]).all(|(x, y)| poly.eval(x) == *y) {
                return Ok((poly, start));
            }
            start += samples;
        }
        Err(Error::NotStabilized(start))
    }

    /// Hilbert polynomial of `S / I`. Its degree is the projective dimension
    /// of `V(I)`; the zero polynomial means `V(I)` is empty.
    pub fn hilbert_polynomial(&self) -> Result<HilbertPolynomial> {
        if self.is_unit() {
            return Err(Error::EmptyScheme);
        }
        let lms = self.leading_monomials(&MonomialOrder::DegRevLex);
        let (poly, window_start) =
            self.interpolate_stable(&lms, self.nvars() + 1, |layer| q(layer.len() as i64))?;
        Ok(HilbertPolynomial { poly, window_start })
    }

    /// Hilbert polynomial `h(k)` and weight polynomial
    /// `w(k) = sum <weights, alpha>` over the degree-`k` standard monomials.
    /// For an ideal homogeneous in the grading by `weights`, `w(k)` is the
    /// total weight of the torus action on `(S / I)_k`.
    pub(crate) fn hilbert_and_weight_polynomials(&self, weights: &[Scalar]) -> Result<(UniPoly, UniPoly)> {
        Error::check_len(self.nvars(), weights.len())?;
        if self.is_unit() {
            return Err(Error::EmptyScheme);
        }
        let lms = self.leading_monomials(&MonomialOrder::DegRevLex);
        let samples = self.nvars() + 2;
        let (h, _) = self.interpolate_stable(&lms, samples, |layer| q(layer.len() as i64))?;
        let (w, _) = self.interpolate_stable(&lms, samples, |layer| weight_sum(layer, weights))?;
        Ok((h, w))
    }

    /// Projective dimension of `V(I)`, `None` when it is empty.
    pub fn dimension(&self) -> Result<Option<usize>> {
        Ok(self.hilbert_polynomial()?.dimension())
    }

    /// Whether `V(I)` is empty in projective space: the leading term ideal
    /// contains a power of every variable. The unit ideal counts as empty.
    pub fn is_empty_projective(&self) -> bool {
        let lms = self.leading_monomials(&MonomialOrder::DegRevLex);
        if lms.iter().any(Monomial::is_one) {
            return true;
        }
        let mut covered = vec![false; self.nvars()];
        for m in &lms {
            if let Some(i) = m.pure_power_var() {
                covered[i] = true;
            }
        }
        covered.into_iter().all(|c| c)
    }

    /// Whether `I` contains no nonzero linear form.
    pub fn is_nondegenerate(&self) -> bool {
        self.degree_piece(1).rows() == 0
    }

    /// The ideal of the image of `V(I)` under the map whose coordinates are
    /// the given monomials, all of one degree: the kernel of
    /// `k[y_0, ..., y_m] -> S / I`, `y_j -> coords[j]`, by elimination.
    pub fn reembed(&self, coords: &[Monomial], names: Vec<String>) -> Result<HomogeneousIdeal> {
        Error::check_len(coords.len(), names.len())?;
        let n = self.nvars();
        let m = coords.len();
        let total = n + m;
        let xmap: Vec<usize> = (0..n).collect();
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| g.embed(total, &xmap)).collect();
        for (j, c) in coords.iter().enumerate() {
            Error::check_len(n, c.nvars())?;
            let mut e = vec![0u32; total];
            e[..n].copy_from_slice(c.exponents());
            let mono = Polynomial::term(Monomial::new(e), q(1));
            gens.push(&Polynomial::var(total, n + j) - &mono);
        }
        let gb = groebner_basis(&gens, &MonomialOrder::Elimination(n));
        let kernel = gb
            .iter()
            .filter(|g| g.support().all(|mono| mono.exponents()[..n].iter().all(|&e| e == 0)))
            .map(|g| {
                Polynomial::from_terms(
                    m,
                    g.terms()
                        .map(|(mono, c)| (Monomial::new(mono.exponents()[n..].to_vec()), c.clone())),
                )
            })
            .collect();
        HomogeneousIdeal::new(names, kernel)
    }

    /// The degree-`l` Veronese re-embedding, coordinates indexed by all
    /// degree-`l` monomials in [`monomials_of_degree`] order.
    pub fn veronese(&self, l: u32) -> Result<HomogeneousIdeal> {
        let coords = monomials_of_degree(self.nvars(), l);
        let names = coords.iter().map(|m| format!("[{}]", m.display_with(&self.variables))).collect();
        self.reembed(&coords, names)
    }
}

fn weight_sum(layer: &[Monomial], weights: &[Scalar]) -> Scalar {
    let mut total = Scalar::zero();
    for m in layer {
        for (e, w) in m.exponents().iter().zip(weights) {
            if *e != 0 {
                total += w * q(*e as i64);
            }
        }
    }
    total
}

impl fmt::Debug for HomogeneousIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.generator_strings().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::qf;

    fn conic() -> HomogeneousIdeal {
        HomogeneousIdeal::parse(&["x", "y", "z"], &["x*z - y^2"]).unwrap()
    }

    #[test]
    fn rejects_inhomogeneous() {
        assert_eq!(
            HomogeneousIdeal::parse(&["x", "y"], &["x^2 - y"]).unwrap_err(),
            Error::NotHomogeneous
        );
    }

    #[test]
    fn initial_ideal_examples() {
        let i = conic();
        assert!(i.initial_ideal(&[0, 0, 0]).unwrap().same_ideal(&i));
        let y2 = HomogeneousIdeal::parse(&["x", "y", "z"], &["y^2"]).unwrap();
        assert!(i.initial_ideal(&[1, 0, 0]).unwrap().same_ideal(&y2));
        let xz = HomogeneousIdeal::parse(&["x", "y", "z"], &["x*z"]).unwrap();
        assert!(i.initial_ideal(&[-1, 0, 0]).unwrap().same_ideal(&xz));
        assert!(i.initial_ideal(&[1, 0]).is_err());
    }

    // Oracle: substitute x -> t^{a_0} x, ... into each generator, divide by the
    // lowest power of t and set t = 0. For a principal ideal that is the
    // whole story.
    #[test]
    fn initial_ideal_matches_substitution_for_principal_ideals() {
        let f = parse_polynomial("x^3 + 2*x*y*z - y^2*z + z^3", conic().variables()).unwrap();
        let i = conic().with_generators(vec![f.clone()]).unwrap();
        for a in [[1, 0, 0], [0, 1, 0], [2, -1, 3], [0, 0, 1]] {
            let min = f.terms().map(|(m, _)| m.dot(&a)).min().unwrap();
            let limit = Polynomial::from_terms(
                3,
                f.terms().filter(|(m, _)| m.dot(&a) == min).map(|(m, c)| (m.clone(), c.clone())),
            );
            let want = i.with_generators(vec![limit]).unwrap();
            assert!(i.initial_ideal(&a).unwrap().same_ideal(&want), "a = {a:?}");
        }
    }

    #[test]
    fn hilbert_function_examples() {
        let zero = HomogeneousIdeal::zero(vec!["x".into(), "y".into(), "z".into()]).unwrap();
        assert_eq!(zero.hilbert_function(2), 6);
        let irrelevant = HomogeneousIdeal::parse(&["x", "y", "z"], &["x", "y", "z"]).unwrap();
        assert_eq!(irrelevant.hilbert_function(1), 0);
        // counting oracle: monomials x^i y^j z^l with j <= 1 span (S/(xz - y^2))_k
        // after rewriting y^2 = xz; there are (k + 1) + k of them
        let c = conic();
        for k in 1..=8 {
            assert_eq!(c.hilbert_function(k), 2 * k + 1);
        }
    }

    #[test]
    fn hilbert_polynomial_examples() {
        let hp = conic().hilbert_polynomial().unwrap();
        assert_eq!(hp.poly, UniPoly::new(vec![q(1), q(2)]));
        assert_eq!(hp.dimension(), Some(1));
        assert_eq!(hp.degree(), Some(2.into()));

        let p1 = HomogeneousIdeal::zero(vec!["x".into(), "y".into()]).unwrap();
        assert_eq!(p1.hilbert_polynomial().unwrap().poly, UniPoly::new(vec![q(1), q(1)]));

        let point = HomogeneousIdeal::parse(&["x", "y"], &["x"]).unwrap();
        assert_eq!(point.hilbert_polynomial().unwrap().poly, UniPoly::new(vec![q(1)]));

        let unit = HomogeneousIdeal::parse(&["x", "y"], &["1"]).unwrap();
        assert_eq!(unit.hilbert_polynomial().unwrap_err(), Error::EmptyScheme);
    }

    #[test]
    fn hilbert_polynomial_agrees_past_window() {
        let cubic = HomogeneousIdeal::parse(&["a", "b", "c", "d"], &["a*c - b^2", "b*d - c^2", "a*d - b*c"]).unwrap();
        let hp = cubic.hilbert_polynomial().unwrap();
        assert_eq!(hp.poly, UniPoly::new(vec![q(1), q(3)]));
        let end = hp.window_start + cubic.nvars() + 1;
        for k in end..end + 5 {
            assert_eq!(hp.poly.eval_int(k as i64), q(cubic.hilbert_function(k) as i64));
        }
    }

    #[test]
    fn emptiness() {
        let irrelevant = HomogeneousIdeal::parse(&["x", "y", "z"], &["x", "y", "z"]).unwrap();
        assert!(irrelevant.is_empty_projective());
        // [1:0:0] lies on every generator
        let i = HomogeneousIdeal::parse(&["x", "y", "z"], &["x*z - y^2", "y", "z"]).unwrap();
        assert!(!i.is_empty_projective());
        // [0:0:1] lies on every generator
        let i = HomogeneousIdeal::parse(&["x", "y", "z"], &["x*z - y^2", "x", "y"]).unwrap();
        assert!(!i.is_empty_projective());
        let i = HomogeneousIdeal::parse(&["x", "y", "z"], &["x*z - y^2", "x", "y", "z"]).unwrap();
        assert!(i.is_empty_projective());
        // x^2, y^2, z^2 cut out nothing without containing the variables
        let i = HomogeneousIdeal::parse(&["x", "y", "z"], &["x^2", "y^2 - x*z", "z^2"]).unwrap();
        assert!(i.is_empty_projective());
    }

    #[test]
    fn nondegeneracy() {
        assert!(conic().is_nondegenerate());
        assert!(!HomogeneousIdeal::parse(&["x", "y", "z"], &["x + y", "z^2"]).unwrap().is_nondegenerate());
        assert!(HomogeneousIdeal::zero(vec!["x".into()]).unwrap().is_nondegenerate());
    }

    #[test]
    fn veronese_of_p1_is_the_conic() {
        let p1 = HomogeneousIdeal::zero(vec!["s".into(), "t".into()]).unwrap();
        let v = p1.veronese(2).unwrap();
        // coordinates s^2, st, t^2: the relation is s^2 * t^2 = (st)^2
        let want = HomogeneousIdeal::parse(&["a", "b", "c"], &["a*c - b^2"]).unwrap();
        assert_eq!(v.generators().len(), 1);
        let g = v.with_generators(want.generators().to_vec()).unwrap();
        assert!(v.same_ideal(&g));
    }

    #[test]
    fn weight_polynomial_of_the_line_pair() {
        // standard monomials of (xz): x^i y^{k-i} and y^{k-j} z^j; with
        // weights (-2/3, 1/3, 1/3) the sum is (k^2 - k)/6
        let i = HomogeneousIdeal::parse(&["x", "y", "z"], &["x*z"]).unwrap();
        let w = [qf(-2, 3), qf(1, 3), qf(1, 3)];
        let (h, wp) = i.hilbert_and_weight_polynomials(&w).unwrap();
        assert_eq!(h, UniPoly::new(vec![q(1), q(2)]));
        assert_eq!(wp, UniPoly::new(vec![q(0), qf(-1, 6), qf(1, 6)]));
    }

    #[test]
    fn cache_is_shared_between_clones() {
        let c = conic();
        let d = c.clone();
        let a = c.groebner_basis(&MonomialOrder::DegLex);
        let b = d.groebner_basis(&MonomialOrder::DegLex);
        assert!(Arc::ptr_eq(&a, &b));
    }
}
