//! Finite-dimensional algebras of vector fields: structure constants,
//! commutator tables and the exact adjoint action `Ad(exp(s Y_i))`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{Atom, Bindings, Expr, LinearForm, Monomial, Rational, Var};
use crate::field::VectorField;
use crate::linalg::{self, Matrix};

/// Name of the group parameter in adjoint entries.
pub const PARAM: &str = "s";

pub fn commutator(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    x.bracket(y)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    names: Vec<String>,
    basis: Vec<VectorField>,
    /// `constants[i][j][k]`: `[Y_i, Y_j] = Σ_k c_ij^k Y_k`.
    constants: Vec<Vec<Vec<Rational>>>,
}

type Key = (usize, Monomial);

fn flatten(v: &VectorField) -> BTreeMap<Key, Rational> {
    let mut out = BTreeMap::new();
    for (d, c) in v.coeffs().iter().enumerate() {
        for (m, q) in c.terms() {
            out.insert((d, m.clone()), q.clone());
        }
    }
    out
}

struct Span {
    keys: Vec<Key>,
    matrix: Matrix,
}

impl Span {
    fn new(basis: &[VectorField]) -> Span {
        let flat: Vec<_> = basis.iter().map(flatten).collect();
        let keys: Vec<Key> = flat
            .iter()
            .flat_map(|f| f.keys().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let matrix = keys
            .iter()
            .map(|k| {
                flat.iter()
                    .map(|f| f.get(k).cloned().unwrap_or_else(Rational::zero))
                    .collect()
            })
            .collect();
        Span { keys, matrix }
    }

    fn coordinates(&self, v: &VectorField) -> Option<Vec<Rational>> {
        let flat = flatten(v);
        if flat.keys().any(|k| self.keys.binary_search(k).is_err()) {
            return None;
        }
        let rhs: Vec<Rational> = self
            .keys
            .iter()
            .map(|k| flat.get(k).cloned().unwrap_or_else(Rational::zero))
            .collect();
        let n = self.matrix.first().map_or(0, Vec::len);
        if self.keys.is_empty() {
            return Some(vec![Rational::zero(); n]);
        }
        linalg::solve(&self.matrix, &rhs)
    }
}

impl LieAlgebra {
    pub fn new(names: Vec<String>, basis: Vec<VectorField>) -> Result<Self> {
        assert_eq!(names.len(), basis.len(), "one name per basis element");
        if let Some(first) = basis.first() {
            for b in &basis[1..] {
                if b.coords() != first.coords() {
                    return Err(Error::CoordinateMismatch(
                        first.coords().join(","),
                        b.coords().join(","),
                    ));
                }
            }
        }
        for k in 0..basis.len() {
            let span = Span::new(&basis[..=k]);
            if linalg::rank(&span.matrix) <= k {
                return Err(Error::LinearDependence(names[k].clone()));
            }
        }
        let span = Span::new(&basis);
        let m = basis.len();
        let mut constants = vec![vec![vec![Rational::zero(); m]; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let br = basis[i].bracket(&basis[j])?;
                let c = span
                    .coordinates(&br)
                    .ok_or_else(|| Error::NonClosure(names[i].clone(), names[j].clone()))?;
                for k in 0..m {
                    constants[j][i][k] = -c[k].clone();
                }
                constants[i][j] = c;
            }
        }
        Ok(LieAlgebra {
            names,
            basis,
            constants,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn basis(&self) -> &[VectorField] {
        &self.basis
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.constants[i][j][k]
    }

    /// Coordinates of `v` in the basis, if it lies in the span.
    pub fn coordinates(&self, v: &VectorField) -> Option<Vec<Rational>> {
        Span::new(&self.basis).coordinates(v)
    }

    /// `Σ v_k Y_k` as a vector field.
    pub fn element(&self, v: &[Rational]) -> VectorField {
        let zero = self.basis[0].scale(&Rational::zero());
        v.iter()
            .zip(&self.basis)
            .fold(zero, |acc, (c, y)| &acc + &y.scale(c))
    }

    /// `Σ v_k Y_k` with the basis names as symbols.
    pub fn combination(&self, v: &[Expr]) -> Expr {
        v.iter()
            .zip(&self.names)
            .map(|(c, n)| c * &Expr::sym(n))
            .sum()
    }

    pub fn commutator_table(&self) -> Vec<Vec<VectorField>> {
        let m = self.dim();
        (0..m)
            .map(|i| (0..m).map(|j| self.element(&self.constants[i][j])).collect())
            .collect()
    }

    /// Entry `(i, j)` is `[Y_i, Y_j]` written in the basis names.
    pub fn commutator_cells(&self) -> Vec<Vec<Expr>> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        let c: Vec<Expr> = self.constants[i][j].iter().cloned().map(Expr::from).collect();
                        self.combination(&c)
                    })
                    .collect()
            })
            .collect()
    }

    /// Matrix of `−ad(Y_i)`: column `j` holds the coordinates of `−[Y_i, Y_j]`.
    pub fn neg_ad(&self, i: usize) -> Matrix {
        let m = self.dim();
        (0..m)
            .map(|k| (0..m).map(|j| -self.constants[i][j][k].clone()).collect())
            .collect()
    }

    /// `Ad(exp(s Y_i))` as `exp(s · (−ad Y_i))`.
    pub fn adjoint_matrix(&self, i: usize) -> Result<AdjointMatrix> {
        let neg_ad = self.neg_ad(i);
        let decomp = linalg::exp_decomposition(&neg_ad).map_err(|e| match e {
            Error::UnsupportedAlgebra(msg) => {
                Error::UnsupportedAlgebra(format!("ad({}): {msg}", self.names[i]))
            }
            other => other,
        })?;
        let m = self.dim();
        let s = Expr::sym(PARAM);
        let mut entries = vec![vec![Expr::zero(); m]; m];
        for (lambda, terms) in &decomp.parts {
            let e = if lambda.is_zero() {
                Expr::one()
            } else {
                Expr::exp(LinearForm::single(PARAM, lambda.clone()))
            };
            let mut sj = e;
            for (j, c) in terms.iter().enumerate() {
                if j > 0 {
                    sj = &sj * &s;
                }
                for (a, row) in entries.iter_mut().enumerate() {
                    for (b, cell) in row.iter_mut().enumerate() {
                        if !c[a][b].is_zero() {
                            *cell += &sj.scale(&c[a][b]);
                        }
                    }
                }
            }
        }
        Ok(AdjointMatrix {
            generator: i,
            entries,
        })
    }

    /// Entry `(i, j)` is `Ad(exp(s Y_i)) Y_j` written in the basis names.
    pub fn adjoint_table(&self) -> Result<Vec<Vec<Expr>>> {
        (0..self.dim())
            .map(|i| {
                let a = self.adjoint_matrix(i)?;
                Ok((0..self.dim()).map(|j| self.combination(&a.column(j))).collect())
            })
            .collect()
    }

    /// Basis triples where `[[Y_i,Y_j],Y_k] + [[Y_j,Y_k],Y_i] + [[Y_k,Y_i],Y_j] ≠ 0`,
    /// computed on the fields themselves.
    pub fn jacobi_violations(&self) -> Result<Vec<(usize, usize, usize)>> {
        let b = &self.basis;
        let m = self.dim();
        let mut out = Vec::new();
        for i in 0..m {
            for j in i + 1..m {
                for k in j + 1..m {
                    let t1 = b[i].bracket(&b[j])?.bracket(&b[k])?;
                    let t2 = b[j].bracket(&b[k])?.bracket(&b[i])?;
                    let t3 = b[k].bracket(&b[i])?.bracket(&b[j])?;
                    if !(&(&t1 + &t2) + &t3).is_zero() {
                        out.push((i, j, k));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// How a one-parameter adjoint subgroup depends on `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamKind {
    Identity,
    /// Entries polynomial in `s`.
    Translation,
    /// Entries are combinations of `e^{ks}` with integer `k`; parametrised by `σ = e^s`.
    Scaling,
    Mixed,
}

/// A concrete group parameter. Scalings carry `σ = e^s > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Param {
    Translation(#[serde(serialize_with = "crate::expr::ser_rational")] Rational),
    Scaling(#[serde(serialize_with = "crate::expr::ser_rational")] Rational),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Translation(s) => write!(f, "s={s}"),
            Param::Scaling(sigma) => write!(f, "e^s={sigma}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjointMatrix {
    generator: usize,
    /// Column `j` holds the coordinates of `Ad(exp(s Y_i)) Y_j`.
    entries: Vec<Vec<Expr>>,
}

fn s_atom() -> Atom {
    Atom::Sym(crate::expr::name(PARAM))
}

impl AdjointMatrix {
    pub fn generator(&self) -> usize {
        self.generator
    }

    pub fn entries(&self) -> &[Vec<Expr>] {
        &self.entries
    }

    pub fn column(&self, j: usize) -> Vec<Expr> {
        self.entries.iter().map(|row| row[j].clone()).collect()
    }

    /// Entries with `s` replaced by `value`.
    pub fn at(&self, value: &Expr) -> Result<Vec<Vec<Expr>>> {
        let b = Bindings::new().bind(Var::sym(PARAM), value.clone());
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| Ok(e.substitute(&b)?)).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(a, row)| {
            row.iter()
                .enumerate()
                .all(|(b, e)| *e == if a == b { Expr::one() } else { Expr::zero() })
        })
    }

    pub fn kind(&self) -> ParamKind {
        if self.is_identity() {
            return ParamKind::Identity;
        }
        let terms = || self.entries.iter().flatten().flat_map(|e| e.terms());
        let has_exp = terms().any(|(m, _)| !m.exp_form().is_zero());
        let has_poly = terms().any(|(m, _)| m.power_of(&s_atom()) != 0);
        match (has_poly, has_exp) {
            (_, false) => ParamKind::Translation,
            (false, true) => ParamKind::Scaling,
            (true, true) => ParamKind::Mixed,
        }
    }

    /// Rational matrix at a concrete parameter.
    pub fn specialize(&self, p: &Param) -> Result<Matrix> {
        let kind = self.kind();
        match (kind, p) {
            (ParamKind::Mixed, _) => Err(Error::UnsupportedAlgebra(format!(
                "adjoint action of generator {} mixes polynomial and exponential terms",
                self.generator + 1
            ))),
            (ParamKind::Identity | ParamKind::Translation, Param::Translation(s)) => self
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| {
                            e.subs(&Var::sym(PARAM), &Expr::constant(s.clone()))?
                                .as_constant()
                                .ok_or_else(|| Error::Invalid(format!("`{e}` is not constant in s")))
                        })
                        .collect()
                })
                .collect(),
            (ParamKind::Identity | ParamKind::Scaling, Param::Scaling(sigma)) => {
                if *sigma <= Rational::zero() {
                    return Err(Error::Invalid(format!("e^s must be positive, got {sigma}")));
                }
                self.entries
                    .iter()
                    .map(|row| row.iter().map(|e| eval_in_sigma(e, sigma)).collect())
                    .collect()
            }
            (kind, p) => Err(Error::Invalid(format!(
                "generator {} has {kind:?} action; parameter {p} does not apply",
                self.generator + 1
            ))),
        }
    }

    /// `Σ_k e^{ks} c_k` read as a Laurent polynomial in `σ = e^s`: `(k, c_k)`.
    pub fn sigma_terms(e: &Expr) -> Result<Vec<(i64, Rational)>> {
        e.terms()
            .map(|(m, c)| {
                let k = m.exp_form().coeff(PARAM);
                let rest_trivial = m.factors().next().is_none()
                    && m.exp_form().terms().all(|(v, _)| &**v == PARAM);
                if !rest_trivial || !k.is_integer() {
                    return Err(Error::Invalid(format!("`{e}` is not a Laurent polynomial in e^s")));
                }
                let k: i64 = num_traits::ToPrimitive::to_i64(&k.to_integer())
                    .ok_or_else(|| Error::Invalid("exponent out of range".into()))?;
                Ok((k, c.clone()))
            })
            .collect()
    }
}

fn eval_in_sigma(e: &Expr, sigma: &Rational) -> Result<Rational> {
    Ok(AdjointMatrix::sigma_terms(e)?
        .into_iter()
        .map(|(k, c)| c * pow(sigma, k))
        .sum())
}

pub(crate) fn pow(q: &Rational, k: i64) -> Rational {
    let base = if k < 0 { q.recip() } else { q.clone() };
    (0..k.unsigned_abs()).fold(Rational::one(), |acc, _| acc * &base)
}

/// Multiplies two matrices of expressions.
pub fn expr_mul(a: &[Vec<Expr>], b: &[Vec<Expr>]) -> Vec<Vec<Expr>> {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).map(|k| &a[i][k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn expr_identity(n: usize) -> Vec<Vec<Expr>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Expr::one() } else { Expr::zero() })
                .collect()
        })
        .collect()
}

/// Symbolic `A(s1) A(s2) = A(s1 + s2)`.
pub fn group_law_holds(a: &AdjointMatrix) -> Result<bool> {
    let (s1, s2) = (Expr::sym("s1"), Expr::sym("s2"));
    let lhs = expr_mul(&a.at(&s1)?, &a.at(&s2)?);
    Ok(lhs == a.at(&(&s1 + &s2))?)
}

/// `A(s) A(−s) = I` and `A(0) = I`.
pub fn inverse_law_holds(a: &AdjointMatrix) -> Result<bool> {
    let s1 = Expr::sym("s1");
    let n = a.entries.len();
    Ok(expr_mul(&a.at(&s1)?, &a.at(&-&s1)?) == expr_identity(n)
        && a.at(&Expr::zero())? == expr_identity(n))
}

/// `d^n/ds^n A(s)` at `s = 0`.
pub fn derivative_at_zero(a: &AdjointMatrix, n: u32) -> Result<Matrix> {
    let s = Var::sym(PARAM);
    a.entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|e| {
                    let mut d = e.clone();
                    for _ in 0..n {
                        d = d.differentiate(&s);
                    }
                    d.subs(&s, &Expr::zero())?
                        .as_constant()
                        .ok_or_else(|| Error::Invalid(format!("`{e}` has non-constant derivative")))
                })
                .collect()
        })
        .collect()
}

/// Result of comparing a computed table against printed cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableComparison {
    pub total: usize,
    pub matched: usize,
    pub matched_transposed: usize,
    pub orientation: Orientation,
    pub mismatches: Vec<CellDelta>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// Row `i`, column `j` holds the operation of `Y_i` on `Y_j`.
    RowActsOnColumn,
    ColumnActsOnRow,
    Undetermined,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::RowActsOnColumn => "row acts on column",
            Orientation::ColumnActsOnRow => "column acts on row",
            Orientation::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellDelta {
    pub row: usize,
    pub col: usize,
    pub printed: Expr,
    pub computed: Expr,
}

impl TableComparison {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

pub fn compare_tables(printed: &[Vec<Expr>], computed: &[Vec<Expr>]) -> TableComparison {
    let n = computed.len();
    let total = n * n;
    let get = |t: &[Vec<Expr>], i: usize, j: usize| t.get(i).and_then(|r| r.get(j)).cloned();
    let count = |transposed: bool| {
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&(i, j)| {
                let p = if transposed { get(printed, j, i) } else { get(printed, i, j) };
                p.as_ref() == Some(&computed[i][j])
            })
            .count()
    };
    let (matched, matched_transposed) = (count(false), count(true));
    let orientation = if matched == total && matched_transposed < total {
        Orientation::RowActsOnColumn
    } else if matched_transposed == total && matched < total {
        Orientation::ColumnActsOnRow
    } else if matched >= matched_transposed && matched == total {
        Orientation::RowActsOnColumn
    } else {
        Orientation::Undetermined
    };
    let mismatches = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let p = get(printed, i, j).unwrap_or_default();
            (p != computed[i][j]).then(|| CellDelta {
                row: i + 1,
                col: j + 1,
                printed: p,
                computed: computed[i][j].clone(),
            })
        })
        .collect();
    TableComparison {
        total,
        matched,
        matched_transposed,
        orientation,
        mismatches,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{rat, Context};

    fn ctx() -> Context {
        ["t", "x", "u", "f", "g"]
            .iter()
            .fold(Context::new(), |c, s| c.coordinate(s).unwrap())
    }

    fn field(pairs: &[(&str, &str)]) -> VectorField {
        let c = ctx();
        pairs.iter().fold(VectorField::zero(&["t", "x", "u", "f", "g"]), |v, (d, e)| {
            v.with(d, c.parse(e).unwrap())
        })
    }

    fn g5() -> LieAlgebra {
        let basis = vec![
            field(&[("x", "1")]),
            field(&[("t", "1")]),
            field(&[("u", "1")]),
            field(&[("t", "t"), ("u", "u"), ("f", "-2*f"), ("g", "-g")]),
            field(&[("x", "1"), ("f", "2*f"), ("g", "g")]),
        ];
        LieAlgebra::new((1..=5).map(|i| format!("Y{i}")).collect(), basis).unwrap()
    }

    fn table_ctx() -> Context {
        (1..=5)
            .fold(Context::new().group_parameter("s").unwrap(), |c, i| {
                c.constant(&format!("Y{i}")).unwrap()
            })
    }

    #[test]
    fn structure_constants() {
        let a = g5();
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    let expected = match (i, j, k) {
                        (1, 3, 1) | (2, 3, 2) => rat(1),
                        (3, 1, 1) | (3, 2, 2) => rat(-1),
                        _ => rat(0),
                    };
                    assert_eq!(*a.structure_constant(i, j, k), expected, "c_{i}{j}^{k}");
                }
            }
        }
    }

    #[test]
    fn small_algebras() {
        let c = ctx();
        let du = field(&[("u", "1")]);
        let udu = field(&[("u", "u")]);
        let a = LieAlgebra::new(vec!["A".into(), "B".into()], vec![du.clone(), udu]).unwrap();
        assert_eq!(*a.structure_constant(0, 1, 0), rat(1));
        let ab = LieAlgebra::new(
            vec!["A".into(), "B".into()],
            vec![field(&[("x", "1")]), field(&[("t", "1")])],
        )
        .unwrap();
        assert!(ab.commutator_cells().iter().flatten().all(Expr::is_zero));
        assert!(ab.adjoint_matrix(0).unwrap().is_identity());
        let _ = c;
    }

    #[test]
    fn non_closure_names_the_pair() {
        let r = LieAlgebra::new(
            vec!["A".into(), "B".into()],
            vec![field(&[("x", "1")]), field(&[("x", "x^2")])],
        );
        assert_eq!(r.unwrap_err(), Error::NonClosure("A".into(), "B".into()));
    }

    #[test]
    fn dependence_is_rejected() {
        let r = LieAlgebra::new(
            vec!["A".into(), "B".into()],
            vec![field(&[("x", "1")]), field(&[("x", "2")])],
        );
        assert_eq!(r.unwrap_err(), Error::LinearDependence("B".into()));
    }

    #[test]
    fn irrational_eigenvalues_are_unsupported() {
        let c = Context::new().coordinate("x").unwrap().coordinate("y").unwrap();
        let f = |a: &str, b: &str| {
            VectorField::zero(&["x", "y"])
                .with("x", c.parse(a).unwrap())
                .with("y", c.parse(b).unwrap())
        };
        let alg = LieAlgebra::new(
            vec!["A".into(), "B".into(), "C".into()],
            vec![f("1", "0"), f("0", "1"), f("y", "2*x")],
        )
        .unwrap();
        assert!(matches!(alg.adjoint_matrix(2), Err(Error::UnsupportedAlgebra(_))));
    }

    #[test]
    fn adjoint_cells() {
        let a = g5();
        let t = a.adjoint_table().unwrap();
        let c = table_ctx();
        assert_eq!(t[3][1], c.parse("exp(s)*Y2").unwrap());
        assert_eq!(t[1][3], c.parse("Y4 - s*Y2").unwrap());
        assert_eq!(t[2][3], c.parse("Y4 - s*Y3").unwrap());
        assert!(a.adjoint_matrix(0).unwrap().is_identity());
        assert_eq!(a.adjoint_matrix(3).unwrap().kind(), ParamKind::Scaling);
        assert_eq!(a.adjoint_matrix(1).unwrap().kind(), ParamKind::Translation);
    }

    #[test]
    fn laws() {
        let a = g5();
        assert!(a.jacobi_violations().unwrap().is_empty());
        for i in 0..5 {
            let m = a.adjoint_matrix(i).unwrap();
            assert!(group_law_holds(&m).unwrap());
            assert!(inverse_law_holds(&m).unwrap());
        }
    }

    /// Oracle: the n-th derivative at 0 of `Ad(exp(sY_i))Y_j` is `(−ad Y_i)^n Y_j`,
    /// computed by nested brackets of the fields.
    #[test]
    fn taylor_coefficients_match_nested_brackets() {
        let a = g5();
        for i in 0..5 {
            let m = a.adjoint_matrix(i).unwrap();
            for n in 0..4u32 {
                let d = derivative_at_zero(&m, n).unwrap();
                for j in 0..5 {
                    let mut v = a.basis()[j].clone();
                    for _ in 0..n {
                        v = a.basis()[i].bracket(&v).unwrap().scale(&rat(-1));
                    }
                    let col: Vec<Rational> = d.iter().map(|r| r[j].clone()).collect();
                    assert_eq!(a.element(&col), v, "i={i} j={j} n={n}");
                }
            }
        }
    }

    #[test]
    fn specialization() {
        let a = g5();
        let m = a.adjoint_matrix(1).unwrap().specialize(&Param::Translation(rat(3))).unwrap();
        let v = linalg::mul_vec(&m, &[rat(0), rat(0), rat(0), rat(1), rat(0)]);
        assert_eq!(v, vec![rat(0), rat(-3), rat(0), rat(1), rat(0)]);
        let m = a
            .adjoint_matrix(3)
            .unwrap()
            .specialize(&Param::Scaling(crate::expr::ratio(1, 4)))
            .unwrap();
        let v = linalg::mul_vec(&m, &[rat(0), rat(4), rat(0), rat(0), rat(0)]);
        assert_eq!(v, vec![rat(0), rat(1), rat(0), rat(0), rat(0)]);
        assert!(a.adjoint_matrix(3).unwrap().specialize(&Param::Scaling(rat(0))).is_err());
    }

    #[test]
    fn comparison_reports_orientation() {
        let a = g5();
        let c = table_ctx();
        let printed: Vec<Vec<Expr>> = a.commutator_cells();
        let r = compare_tables(&printed, &a.commutator_cells());
        assert_eq!(r.orientation, Orientation::RowActsOnColumn);
        let transposed: Vec<Vec<Expr>> =
            (0..5).map(|i| (0..5).map(|j| printed[j][i].clone()).collect()).collect();
        let r = compare_tables(&transposed, &a.commutator_cells());
        assert_eq!(r.orientation, Orientation::ColumnActsOnRow);
        assert_eq!(r.mismatches.len(), 4);
        let _ = c;
    }
}
