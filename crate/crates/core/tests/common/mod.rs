//! Independent oracles and random generators shared by the integration
//! suites. Nothing here calls the determinant, cofactor or Φ code under test.
#![allow(dead_code)]

use nss_core::{Domain, ExactDiv, ExponentVector, Int, IntPoly, Polynomial, Term};
use rand::seq::SliceRandom;
use rand::Rng;

/// Leibniz formula: sum over all permutations with their signs.
pub fn leibniz_det<D: Domain>(rows: &[Vec<D>]) -> D {
    let n = rows.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = D::zero();
    permute(&mut perm, 0, rows, &mut total);
    total
}

fn permute<D: Domain>(perm: &mut Vec<usize>, k: usize, rows: &[Vec<D>], total: &mut D) {
    if k == perm.len() {
        let mut inversions = 0;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                if perm[i] > perm[j] {
                    inversions += 1;
                }
            }
        }
        let product = perm
            .iter()
            .enumerate()
            .fold(D::one(), |acc, (i, &j)| acc.mul(&rows[i][j]));
        *total = if inversions % 2 == 0 {
            total.add(&product)
        } else {
            total.sub(&product)
        };
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, rows, total);
        perm.swap(k, i);
    }
}

/// Rows of the Vandermonde matrix, entry (i, j) = s_j^i, by repeated
/// multiplication.
pub fn vandermonde_rows<D: Domain>(points: &[D]) -> Vec<Vec<D>> {
    let m = points.len();
    (0..m)
        .map(|i| {
            points
                .iter()
                .map(|s| (0..i).fold(D::one(), |acc, _| acc.mul(s)))
                .collect()
        })
        .collect()
}

/// Solves `A·λ = (0, …, 0, det A)` by Cramer's rule with Leibniz
/// determinants: `λ_j = det(A_j(b)) / det(A)`, an exact division.
pub fn cramer_lambda<D: ExactDiv>(points: &[D]) -> (Vec<D>, D) {
    let rows = vandermonde_rows(points);
    let det = leibniz_det(&rows);
    let m = points.len();
    let mut b = vec![D::zero(); m];
    b[m - 1] = det.clone();
    let lambdas = (0..m)
        .map(|j| {
            let replaced: Vec<Vec<D>> = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let mut row = row.clone();
                    row[j] = b[i].clone();
                    row
                })
                .collect();
            leibniz_det(&replaced).exact_div(&det).unwrap()
        })
        .collect();
    (lambdas, det)
}

/// Evaluates `f` by multiplying out each term by hand.
pub fn naive_eval<D: Domain>(f: &Polynomial<D>, point: &[D]) -> D {
    f.terms().fold(D::zero(), |acc, t| {
        let mut v = t.coefficient.clone();
        for (s, &d) in point.iter().zip(t.exponents.exponents()) {
            for _ in 0..d {
                v = v.mul(s);
            }
        }
        acc.add(&v)
    })
}

/// Φ(f) by its definition, with nested recursion over the axes.
pub fn brute_phi<D: Domain>(f: &Polynomial<D>, sets: &[Vec<D>], lambdas: &[Vec<D>]) -> D {
    fn go<D: Domain>(
        f: &Polynomial<D>,
        sets: &[Vec<D>],
        lambdas: &[Vec<D>],
        point: &mut Vec<D>,
        weight: D,
    ) -> D {
        let k = point.len();
        if k == sets.len() {
            return weight.mul(&naive_eval(f, point));
        }
        let mut acc = D::zero();
        for (s, l) in sets[k].iter().zip(&lambdas[k]) {
            point.push(s.clone());
            acc = acc.add(&go(f, sets, lambdas, point, weight.mul(l)));
            point.pop();
        }
        acc
    }
    go(f, sets, lambdas, &mut Vec::new(), D::one())
}

/// Every grid point in row-major order, with the value of `f` there.
pub fn grid_values<D: Domain>(f: &Polynomial<D>, sets: &[Vec<D>]) -> Vec<(Vec<D>, D)> {
    let mut points: Vec<Vec<D>> = vec![Vec::new()];
    for axis in sets {
        points = points
            .into_iter()
            .flat_map(|p| {
                axis.iter().map(move |s| {
                    let mut q = p.clone();
                    q.push(s.clone());
                    q
                })
            })
            .collect();
    }
    points
        .into_iter()
        .map(|p| {
            let v = naive_eval(f, &p);
            (p, v)
        })
        .collect()
}

pub fn ints(values: &[i64]) -> Vec<Int> {
    values.iter().map(|&v| Int::from(v)).collect()
}

pub fn random_int<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Int {
    Int::from(rng.gen_range(lo..=hi))
}

pub fn random_nonzero_int<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Int {
    loop {
        let v = rng.gen_range(lo..=hi);
        if v != 0 {
            return Int::from(v);
        }
    }
}

pub fn random_intpoly<R: Rng>(rng: &mut R, max_degree: usize, coeff: i64) -> IntPoly {
    let degree = rng.gen_range(0..=max_degree);
    IntPoly::from_coeffs((0..=degree).map(|_| rng.gen_range(-coeff..=coeff)))
}

pub fn random_nonzero_intpoly<R: Rng>(rng: &mut R, max_degree: usize, coeff: i64) -> IntPoly {
    loop {
        let p = random_intpoly(rng, max_degree, coeff);
        if !p.is_zero() {
            return p;
        }
    }
}

/// `size` distinct integers from `[lo, hi]` in random order.
pub fn random_int_set<R: Rng>(rng: &mut R, size: usize, lo: i64, hi: i64) -> Vec<Int> {
    let mut pool: Vec<i64> = (lo..=hi).collect();
    pool.shuffle(rng);
    pool.truncate(size);
    ints(&pool)
}

/// `size` distinct elements of ℤ[t] of degree ≤ 2.
pub fn random_intpoly_set<R: Rng>(rng: &mut R, size: usize) -> Vec<IntPoly> {
    let mut out: Vec<IntPoly> = Vec::new();
    while out.len() < size {
        let p = random_intpoly(rng, 2, 3);
        if !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// Random polynomial with the given arity whose exponents stay within
/// `max_exp` per axis.
pub fn random_poly<D: Domain, R: Rng>(
    rng: &mut R,
    arity: usize,
    max_exp: &[u32],
    terms: usize,
    coeff: &mut impl FnMut(&mut R) -> D,
) -> Polynomial<D> {
    let ts: Vec<Term<D>> = (0..terms)
        .map(|_| {
            let exps: Vec<u32> = (0..arity).map(|k| rng.gen_range(0..=max_exp[k])).collect();
            Term::new(coeff(rng), exps)
        })
        .collect();
    Polynomial::from_terms(arity, ts).unwrap()
}

/// An instance satisfying the size hypothesis: `f` has the designated
/// term `c·x^d` (c ≠ 0) of maximal total degree; other terms have total
/// degree ≤ |d|.
pub struct CertifiableInstance<D> {
    pub f: Polynomial<D>,
    pub designated: ExponentVector,
    pub coefficient: D,
}

pub fn random_certifiable_instance<D: Domain, R: Rng>(
    rng: &mut R,
    arity: usize,
    max_axis_degree: u32,
    extra_terms: usize,
    coeff: &mut impl FnMut(&mut R) -> D,
    nonzero_coeff: &mut impl FnMut(&mut R) -> D,
) -> CertifiableInstance<D> {
    let d: Vec<u32> = (0..arity).map(|_| rng.gen_range(0..=max_axis_degree)).collect();
    let total: u32 = d.iter().sum();
    let designated = ExponentVector::new(d);
    let c = nonzero_coeff(rng);
    let mut terms = vec![Term::new(c.clone(), designated.clone())];
    for _ in 0..extra_terms {
        let mut budget = total;
        let mut exps = vec![0u32; arity];
        let mut order: Vec<usize> = (0..arity).collect();
        order.shuffle(rng);
        for k in order {
            let e = rng.gen_range(0..=budget.min(max_axis_degree + 1));
            exps[k] = e;
            budget -= e;
        }
        let exps = ExponentVector::new(exps);
        if exps != designated {
            terms.push(Term::new(coeff(rng), exps));
        }
    }
    CertifiableInstance {
        f: Polynomial::from_terms(arity, terms).unwrap(),
        designated,
        coefficient: c,
    }
}
