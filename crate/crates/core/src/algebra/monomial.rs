use std::cmp::Ordering;
use std::fmt;

/// Exponent vector, one slot per variable.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        self.divides(other)
            .then(|| Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `<w, alpha>`.
    pub fn dot(&self, w: &[i64]) -> i64 {
        self.0.iter().zip(w).map(|(&e, &x)| e as i64 * x).sum()
    }

    /// Index of the variable when the monomial is a pure power `x_i^e`, `e > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut support = self.0.iter().enumerate().filter(|(_, &e)| e > 0);
        let (i, _) = support.next()?;
        support.next().is_none().then_some(i)
    }

    /// Renders with variable names, e.g. `x*z^2`. The unit monomial renders
    /// as `1`.
    pub fn display_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A total monomial order. `compare(a, b) == Greater` means `a` leads `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    DegLex,
    DegRevLex,
    /// Total degree, then larger `<w, alpha>`, then degree-reverse-lex.
    ///
    /// On homogeneous input this is the weight order of `w` refined by
    /// degrevlex, for any sign of `w`.
    Weighted(Vec<i64>),
    /// Block order eliminating the first `k` variables: degrevlex on the
    /// first block, ties broken by degrevlex on the rest.
    Elimination(usize),
}

impl MonomialOrder {
    /// The order whose leading terms are those of minimal `<a, alpha>`, the
    /// `t -> 0` convention for flat limits.
    pub fn min_weight(a: &[i64]) -> Self {
        MonomialOrder::Weighted(a.iter().map(|x| -x).collect())
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegLex => a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0)),
            MonomialOrder::DegRevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Weighted(w) => a
                .degree()
                .cmp(&b.degree())
                .then_with(|| a.dot(w).cmp(&b.dot(w)))
                .then_with(|| grevlex(&a.0, &b.0)),
            MonomialOrder::Elimination(k) => {
                grevlex(&a.0[..*k], &b.0[..*k]).then_with(|| grevlex(&a.0[*k..], &b.0[*k..]))
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// All monomials of degree `d` in `nvars` variables, in descending
/// degree-reverse-lexicographic order. This is the coordinate enumeration
/// used for exponent-`d` weight vectors.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fill(&mut out, &mut cur, 0, d);
    out.sort_by(|a, b| grevlex(&b.0, &a.0));
    out
}

fn fill(out: &mut Vec<Monomial>, cur: &mut Vec<u32>, i: usize, left: u32) {
    if cur.is_empty() {
        if left == 0 {
            out.push(Monomial(Vec::new()));
        }
        return;
    }
    if i == cur.len() - 1 {
        cur[i] = left;
        out.push(Monomial(cur.clone()));
        cur[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill(out, cur, i + 1, left - e);
    }
    cur[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_enumeration() {
        let got = monomials_of_degree(3, 2);
        let want = [
            [2, 0, 0],
            [1, 1, 0],
            [0, 2, 0],
            [1, 0, 1],
            [0, 1, 1],
            [0, 0, 2],
        ];
        assert_eq!(got, want.iter().map(|e| m(e)).collect::<Vec<_>>());
        assert_eq!(monomials_of_degree(2, 2), vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
        assert_eq!(monomials_of_degree(4, 3).len(), 20);
    }

    #[test]
    fn orders() {
        let o = MonomialOrder::DegRevLex;
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        let o = MonomialOrder::DegLex;
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        // xz has weight 1, y^2 weight 0 under a=(1,0,0): minimal weight leads
        let o = MonomialOrder::min_weight(&[1, 0, 0]);
        assert_eq!(o.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1])), Ordering::Greater);
        let o = MonomialOrder::min_weight(&[-1, 0, 0]);
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
        let o = MonomialOrder::Elimination(1);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 0]).divides(&m(&[2, 1])));
        assert_eq!(m(&[1, 0]).quotient_of(&m(&[2, 1])), Some(m(&[1, 1])));
        assert_eq!(m(&[0, 2]).quotient_of(&m(&[2, 1])), None);
        assert_eq!(m(&[0, 3, 0]).pure_power_var(), Some(1));
        assert_eq!(m(&[1, 3, 0]).pure_power_var(), None);
        assert_eq!(m(&[0, 0]).pure_power_var(), None);
    }
}
