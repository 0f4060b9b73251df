//! Buchberger's algorithm over exact rationals.
//!
//! Pairs are processed smallest-lcm first with the coprime and chain
//! criteria. The output is the reduced basis: monic, minimal, tails fully
//! reduced, sorted by descending leading monomial. It depends only on the
//! ideal and the order.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::monomial::{Monomial, MonomialOrder};
use super::polynomial::Polynomial;
use super::scalar::Scalar;

/// Terms sorted by descending monomial under the working order.
type Terms = Vec<(Monomial, Scalar)>;

fn sorted_terms(p: &Polynomial, order: &MonomialOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
    t.sort_by(|a, b| order.compare(&b.0, &a.0));
    t
}

fn to_poly(nvars: usize, t: Terms) -> Polynomial {
    Polynomial::from_terms(nvars, t)
}

/// `f - c * m * g`, all inputs sorted descending.
fn sub_scaled(f: &[(Monomial, Scalar)], c: &Scalar, m: &Monomial, g: &[(Monomial, Scalar)], order: &MonomialOrder) -> Terms {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let mut i = 0;
    let mut shifted = g.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
    while i < f.len() || shifted.peek().is_some() {
        let take = match (f.get(i), shifted.peek()) {
            (Some(a), Some(b)) => order.compare(&a.0, &b.0),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match take {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (bm, bc) = shifted.next().unwrap();
                out.push((bm, -bc));
            }
            Ordering::Equal => {
                let (bm, bc) = shifted.next().unwrap();
                let v = &f[i].1 - bc;
                if !v.is_zero() {
                    out.push((bm, v));
                }
                i += 1;
            }
        }
    }
    out
}

/// Full reduction of `f` against monic `basis` elements.
fn reduce(mut p: Terms, basis: &[Terms], skip: Option<usize>, order: &MonomialOrder) -> Terms {
    let mut i = 0;
    while i < p.len() {
        let divisor = basis.iter().enumerate().find_map(|(k, g)| {
            if Some(k) == skip {
                return None;
            }
            let lm = &g.first()?.0;
            lm.quotient_of(&p[i].0).map(|q| (k, q))
        });
        match divisor {
            Some((k, quot)) => {
                let c = p[i].1.clone();
                let head: Terms = p[..i].to_vec();
                let tail = sub_scaled(&p[i..], &c, &quot, &basis[k], order);
                p = head;
                p.extend(tail);
            }
            None => i += 1,
        }
    }
    p
}

fn monic(mut t: Terms) -> Terms {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = lc.recip();
            for (_, c) in t.iter_mut() {
                *c *= &inv;
            }
        }
    }
    t
}

/// Normal form of `f` with respect to `basis` under `order`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let b: Vec<Terms> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| monic(sorted_terms(g, order)))
        .collect();
    to_poly(f.nvars(), reduce(sorted_terms(f, order), &b, None, order))
}

/// Reduced Gröbner basis of the ideal generated by `generators`.
///
/// The zero ideal yields an empty basis; the unit ideal yields `[1]`.
pub fn groebner_basis(generators: &[Polynomial], order: &MonomialOrder) -> Vec<Polynomial> {
    let Some(nvars) = generators.first().map(Polynomial::nvars) else {
        return Vec::new();
    };
    let mut basis: Vec<Terms> = Vec::new();
    for g in generators {
        assert_eq!(g.nvars(), nvars, "generators live in different rings");
        let r = reduce(sorted_terms(g, order), &basis, None, order);
        if !r.is_empty() {
            basis.push(monic(r));
        }
    }
    if basis.iter().any(|g| g[0].0.is_one()) {
        return vec![Polynomial::constant(nvars, Scalar::one())];
    }

    // (lcm degree, lcm, i, j) keeps the selection deterministic
    let mut pending: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((basis[i][0].0.lcm(&basis[j][0].0).degree(), i, j));
        }
    }
    while let Some(&key) = pending.iter().next() {
        pending.remove(&key);
        let (_, i, j) = key;
        let lmi = basis[i][0].0.clone();
        let lmj = basis[j][0].0.clone();
        if lmi.is_coprime(&lmj) {
            continue;
        }
        let l = lmi.lcm(&lmj);
        let is_pending = |a: usize, b: usize| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            pending.contains(&(basis[a][0].0.lcm(&basis[b][0].0).degree(), a, b))
        };
        let chain = (0..basis.len()).any(|k| {
            k != i && k != j && basis[k][0].0.divides(&l) && !is_pending(i, k) && !is_pending(j, k)
        });
        if chain {
            continue;
        }
        let qi = lmi.quotient_of(&l).unwrap();
        let qj = lmj.quotient_of(&l).unwrap();
        let left: Terms = basis[i].iter().map(|(m, c)| (m.mul(&qi), c.clone())).collect();
        let s = sub_scaled(&left, &Scalar::one(), &qj, &basis[j], order);
        let r = reduce(s, &basis, None, order);
        if r.is_empty() {
            continue;
        }
        let r = monic(r);
        if r[0].0.is_one() {
            return vec![Polynomial::constant(nvars, Scalar::one())];
        }
        let n = basis.len();
        for k in 0..n {
            pending.insert((basis[k][0].0.lcm(&r[0].0).degree(), k, n));
        }
        basis.push(r);
    }

    // minimize: drop elements whose leading monomial is divisible by another's
    let mut keep: Vec<Terms> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = &g[0].0;
        let redundant = basis.iter().enumerate().any(|(o, h)| {
            o != k && h[0].0.divides(lm) && (h[0].0 != *lm || o < k)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    // interreduce tails
    for k in 0..keep.len() {
        let g = keep[k].clone();
        let r = reduce(g, &keep, Some(k), order);
        keep[k] = monic(r);
    }
    keep.sort_by(|a, b| order.compare(&b[0].0, &a[0].0));
    keep.into_iter().map(|t| to_poly(nvars, t)).collect()
}
