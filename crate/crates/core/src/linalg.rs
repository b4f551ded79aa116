//! Dense exact linear algebra over ℚ, sized for small Lie algebras.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expr::Rational;

pub type Matrix = Vec<Vec<Rational>>;

pub fn zeros(rows: usize, cols: usize) -> Matrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    let mut out = zeros(n, m);
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn scale(a: &Matrix, k: &Rational) -> Matrix {
    a.iter()
        .map(|r| r.iter().map(|x| x * k).collect())
        .collect()
}

pub fn is_zero(a: &Matrix) -> bool {
    a.iter().flatten().all(Zero::is_zero)
}

pub fn mul_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

fn trace(a: &Matrix) -> Rational {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(a: &mut Matrix) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let k = a[i][c].clone();
                for j in 0..cols {
                    let d = &k * &a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(a: &Matrix) -> usize {
    rref(&mut a.clone()).len()
}

/// Basis of `{v : a v = 0}`.
pub fn nullspace(a: &Matrix) -> Vec<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut r = a.clone();
    let pivots = rref(&mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); cols];
            v[f] = Rational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r[row][f].clone();
            }
            v
        })
        .collect()
}

/// Solves `a x = b`; `None` if inconsistent. Free variables are set to zero.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, x)| row.iter().cloned().chain([x.clone()]).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = aug[row][cols].clone();
    }
    Some(x)
}

pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Characteristic polynomial `det(λI − a)` as coefficients `c[0] + c[1] λ + … + λ^n`
/// (Faddeev–LeVerrier).
pub fn charpoly(a: &Matrix) -> Vec<Rational> {
    let n = a.len();
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    let mut m = zeros(n, n);
    for k in 1..=n {
        let mut next = mul(a, &m);
        for i in 0..n {
            next[i][i] += &c[n - k + 1];
        }
        m = next;
        let am = mul(a, &m);
        c[n - k] = -trace(&am) / Rational::from_integer(BigInt::from(k));
    }
    c
}

fn eval_poly(p: &[Rational], x: &Rational) -> Rational {
    p.iter()
        .rev()
        .fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Synthetic division by `(λ − r)`.
fn deflate(p: &[Rational], r: &Rational) -> Vec<Rational> {
    let n = p.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..n).rev() {
        carry = &p[i + 1] + &carry * r;
        q[i] = carry.clone();
    }
    q
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let small = n
        .to_u64()
        .filter(|v| *v <= 1 << 40)
        .ok_or_else(|| Error::UnsupportedAlgebra(format!("coefficient {n} too large to factor")))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Rational roots with multiplicity. Fails if any root is irrational or complex.
pub fn rational_roots(p: &[Rational]) -> Result<Vec<(Rational, usize)>> {
    let mut p: Vec<Rational> = p.to_vec();
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let push = |r: Rational, roots: &mut Vec<(Rational, usize)>| match roots
        .iter_mut()
        .find(|(x, _)| *x == r)
    {
        Some(e) => e.1 += 1,
        None => roots.push((r, 1)),
    };
    while p.len() > 1 && p[0].is_zero() {
        p.remove(0);
        push(Rational::zero(), &mut roots);
    }
    while p.len() > 1 {
        let lcm = p
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p
            .iter()
            .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
            .collect();
        let lead = ints.last().expect("nonempty");
        let mut found = None;
        'search: for num in divisors(&ints[0])? {
            for den in divisors(lead)? {
                for sign in [1, -1] {
                    let r = Rational::new(BigInt::from(sign) * &num, den.clone());
                    if eval_poly(&p, &r).is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some(r) => {
                p = deflate(&p, &r);
                push(r, &mut roots);
            }
            None => {
                return Err(Error::UnsupportedAlgebra(format!(
                    "characteristic polynomial has a factor of degree {} without rational roots",
                    p.len() - 1
                )))
            }
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

/// `exp(s a) = Σ_λ e^{λ s} Σ_j s^j · C_{λ,j}` from the additive
/// Jordan–Chevalley split `a = S + N` over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpDecomposition {
    pub parts: Vec<(Rational, Vec<Matrix>)>,
}

pub fn exp_decomposition(a: &Matrix) -> Result<ExpDecomposition> {
    let n = a.len();
    let roots = rational_roots(&charpoly(a))?;
    // generalized eigenspaces ker (a − λ)^m
    let mut columns: Vec<Vec<Rational>> = Vec::new();
    let mut blocks = Vec::new();
    for (lambda, mult) in &roots {
        let shifted = sub(a, &scale(&identity(n), lambda));
        let mut power = identity(n);
        for _ in 0..*mult {
            power = mul(&power, &shifted);
        }
        let basis = nullspace(&power);
        debug_assert_eq!(basis.len(), *mult);
        blocks.push((columns.len(), basis.len()));
        columns.extend(basis);
    }
    let p: Matrix = (0..n).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
    let p_inv = inverse(&p).ok_or_else(|| {
        Error::UnsupportedAlgebra("generalized eigenvectors do not span".into())
    })?;
    let projections: Vec<Matrix> = blocks
        .iter()
        .map(|&(start, len)| {
            let mut e = zeros(n, n);
            for k in start..start + len {
                e[k][k] = Rational::one();
            }
            mul(&mul(&p, &e), &p_inv)
        })
        .collect();
    let mut semisimple = zeros(n, n);
    for ((lambda, _), pi) in roots.iter().zip(&projections) {
        semisimple = add(&semisimple, &scale(pi, lambda));
    }
    let nilpotent = sub(a, &semisimple);
    let mut parts = Vec::new();
    for ((lambda, _), pi) in roots.iter().zip(&projections) {
        let mut terms = Vec::new();
        let mut npow = pi.clone();
        let mut fact = Rational::one();
        for j in 0..n {
            if j > 0 {
                npow = mul(&npow, &nilpotent);
                fact *= Rational::from_integer(BigInt::from(j));
            }
            if is_zero(&npow) {
                break;
            }
            terms.push(scale(&npow, &fact.recip()));
        }
        parts.push((lambda.clone(), terms));
    }
    Ok(ExpDecomposition { parts })
}
