//! Reduction of one-dimensional subalgebras of the five-dimensional
//! equivalence algebra to the listed representatives, following the printed
//! case analysis step by step and certifying every group word by replay.
//!
//! Vectors here use the theorem labeling (`Y1 = ∂_t`, `Y2 = ∂_x`); the
//! permutation to the declared basis is explicit data.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::expr::{ser_rationals, Atom, Context, Expr, Rational};
use crate::field::VectorField;
use crate::fixtures::FixtureSet;
use crate::lie_algebra::{AdjointMatrix, LieAlgebra, Param, ParamKind, PARAM};
use crate::linalg;

pub type Vector = Vec<Rational>;

pub fn render_vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    /// Theorem-labeled generator, 1-based.
    pub generator: usize,
    pub param: Param,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ad(exp(s*Y{})) at {}", self.generator, self.param)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct GroupWord {
    #[serde(serialize_with = "ser_opt_rational")]
    pub rescale: Option<Rational>,
    pub steps: Vec<Step>,
}

fn ser_opt_rational<S: serde::Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_some(&q.to_string()),
        None => s.serialize_none(),
    }
}

impl GroupWord {
    pub fn is_empty(&self) -> bool {
        self.rescale.is_none() && self.steps.is_empty()
    }

    /// The word undoing this one.
    pub fn inverse(&self) -> GroupWord {
        GroupWord {
            rescale: self.rescale.as_ref().map(|k| k.recip()),
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| Step {
                    generator: s.generator,
                    param: match &s.param {
                        Param::Translation(x) => Param::Translation(-x.clone()),
                        Param::Scaling(x) => Param::Scaling(x.recip()),
                    },
                })
                .collect(),
        }
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(k) = &self.rescale {
            parts.push(format!("rescale by {k}"));
        }
        parts.extend(self.steps.iter().map(ToString::to_string));
        if parts.is_empty() {
            f.write_str("(empty)")
        } else {
            f.write_str(&parts.join("; "))
        }
    }
}

/// A claimed simplification that exact arithmetic does not support.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub case: String,
    pub claim: String,
    #[serde(serialize_with = "ser_rationals")]
    pub at: Vector,
    /// For each generator tried: the target coordinate after
    /// `Ad(exp(s Y_i))`, as a function of `s`.
    pub witness: Vec<(usize, Expr)>,
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {}: {} fails at {}", self.case, self.claim, render_vector(&self.at))?;
        for (g, e) in &self.witness {
            write!(f, "; under Y{g} the coordinate is {e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormalizationReport {
    #[serde(serialize_with = "ser_rationals")]
    pub input: Vector,
    #[serde(serialize_with = "ser_rationals")]
    pub achieved: Vector,
    pub case: String,
    pub representative: Option<usize>,
    pub word: GroupWord,
    pub discrepancies: Vec<Discrepancy>,
}

impl fmt::Display for NormalizationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "input           {}", render_vector(&self.input))?;
        writeln!(f, "case            {}", self.case)?;
        writeln!(f, "word            {}", self.word)?;
        writeln!(f, "achieved        {}", render_vector(&self.achieved))?;
        match self.representative {
            Some(r) => writeln!(f, "representative  Y^{r}")?,
            None => writeln!(f, "representative  none")?,
        }
        for d in &self.discrepancies {
            writeln!(f, "discrepancy     {d}")?;
        }
        Ok(())
    }
}

/// `scale · Ad(step) Y^from = Y^to`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Conjugacy {
    pub from: usize,
    pub to: usize,
    pub step: Step,
    #[serde(serialize_with = "crate::expr::ser_rational")]
    pub scale: Rational,
}

impl fmt::Display for Conjugacy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y^{} -> Y^{} by {}", self.from, self.to, self.step)?;
        if !self.scale.is_one() {
            write!(f, ", rescaled by {}", self.scale)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representative {
    pub index: usize,
    #[serde(serialize_with = "ser_rationals")]
    pub coefficients: Vector,
    /// `Σ a_k Y_k` expanded on the coordinates.
    pub field: VectorField,
    /// The operator form printed next to the combination.
    pub printed: Option<VectorField>,
}

impl Representative {
    pub fn printed_matches(&self) -> bool {
        self.printed.as_ref().is_none_or(|p| *p == self.field)
    }
}

#[derive(Debug, Clone)]
pub struct OptimalSystem {
    alg: LieAlgebra,
    /// Theorem index → declared index.
    perm: Vec<usize>,
    adjoints: Vec<AdjointMatrix>,
    reps: Vec<Representative>,
}

impl OptimalSystem {
    /// `perm[k]` is the 1-based declared index of theorem generator `k + 1`.
    pub fn new(alg: LieAlgebra, perm: &[usize], reps: Vec<(usize, Vector, Option<VectorField>)>) -> Result<Self> {
        let m = alg.dim();
        let mut seen = vec![false; m];
        if perm.len() != m {
            return Err(Error::Invalid(format!("labeling permutation needs {m} entries")));
        }
        for &p in perm {
            if p == 0 || p > m || seen[p - 1] {
                return Err(Error::Invalid(format!("{perm:?} is not a permutation of 1..={m}")));
            }
            seen[p - 1] = true;
        }
        let perm: Vec<usize> = perm.iter().map(|p| p - 1).collect();
        let adjoints = (0..m).map(|i| alg.adjoint_matrix(i)).collect::<Result<Vec<_>>>()?;
        let mut sys = OptimalSystem {
            alg,
            perm,
            adjoints,
            reps: Vec::new(),
        };
        for (index, coefficients, printed) in reps {
            if coefficients.len() != m {
                return Err(Error::Invalid(format!("representative {index} needs {m} coefficients")));
            }
            let field = sys.alg.element(&sys.to_declared(&coefficients));
            sys.reps.push(Representative {
                index,
                coefficients,
                field,
                printed,
            });
        }
        Ok(sys)
    }

    /// Representatives and printed operator forms from a fixture set.
    pub fn from_fixtures(alg: LieAlgebra, perm: &[usize], fx: &FixtureSet) -> Result<Self> {
        let coords: Vec<String> = alg.basis()[0].coords().iter().map(|c| c.to_string()).collect();
        let coord_refs: Vec<&str> = coords.iter().map(String::as_str).collect();
        let ctx = coords
            .iter()
            .try_fold(Context::new(), |c, s| c.coordinate(s))?;
        let reps = fx
            .representatives
            .iter()
            .map(|r| {
                let printed = VectorField::parse(&ctx, &coord_refs, &r.printed)?;
                let coeffs = r.coefficients.iter().map(|&a| Rational::from_integer(a.into())).collect();
                Ok((r.index, coeffs, Some(printed)))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(alg, perm, reps)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.alg
    }

    /// 1-based permutation, as declared.
    pub fn permutation(&self) -> Vec<usize> {
        self.perm.iter().map(|p| p + 1).collect()
    }

    pub fn representatives(&self) -> &[Representative] {
        &self.reps
    }

    pub fn to_declared(&self, v: &[Rational]) -> Vector {
        let mut out = vec![Rational::zero(); v.len()];
        for (k, &d) in self.perm.iter().enumerate() {
            out[d] = v[k].clone();
        }
        out
    }

    pub fn to_theorem(&self, v: &[Rational]) -> Vector {
        self.perm.iter().map(|&d| v[d].clone()).collect()
    }

    /// `Ad(exp(s Y_i)) v` in the declared labeling (`i` 0-based).
    pub fn apply_adjoint(&self, v: &[Rational], i: usize, p: &Param) -> Result<Vector> {
        let m = self.adjoints[i].specialize(p)?;
        Ok(linalg::mul_vec(&m, v))
    }

    /// Same, in the theorem labeling (`i` 1-based).
    pub fn apply_theorem(&self, v: &[Rational], i: usize, p: &Param) -> Result<Vector> {
        let d = self.apply_adjoint(&self.to_declared(v), self.perm[i - 1], p)?;
        Ok(self.to_theorem(&d))
    }

    pub fn replay(&self, input: &[Rational], word: &GroupWord) -> Result<Vector> {
        let mut v: Vector = match &word.rescale {
            Some(k) => input.iter().map(|a| a * k).collect(),
            None => input.to_vec(),
        };
        for s in &word.steps {
            v = self.apply_theorem(&v, s.generator, &s.param)?;
        }
        Ok(v)
    }

    pub fn kind(&self, generator: usize) -> ParamKind {
        self.adjoints[self.perm[generator - 1]].kind()
    }

    /// Coordinate `k` (1-based, theorem) of `Ad(exp(s Y_i)) v` as an expression in `s`.
    fn coordinate_expr(&self, v: &[Rational], generator: usize, k: usize) -> Expr {
        let a = &self.adjoints[self.perm[generator - 1]];
        let row = &a.entries()[self.perm[k - 1]];
        self.to_declared(v)
            .iter()
            .zip(row)
            .map(|(c, e)| e.scale(c))
            .sum()
    }

    fn matching_rep(&self, v: &[Rational]) -> Option<usize> {
        self.reps.iter().find(|r| r.coefficients == v).map(|r| r.index)
    }

    /// Pairs `from < to` of listed representatives joined by one adjoint step
    /// followed by a rescaling, searched exactly over every generator.
    pub fn conjugacies(&self) -> Result<Vec<Conjugacy>> {
        let m = self.alg.dim();
        let mut out = Vec::new();
        for from in &self.reps {
            for g in 1..=m {
                let kind = self.kind(g);
                if kind == ParamKind::Identity {
                    continue;
                }
                let image: Vec<Expr> = (1..=m).map(|k| self.coordinate_expr(&from.coefficients, g, k)).collect();
                for to in &self.reps {
                    if to.index <= from.index {
                        continue;
                    }
                    let w = &to.coefficients;
                    let Some(l) = w.iter().position(|q| !q.is_zero()) else { continue };
                    let cross = (0..m)
                        .map(|k| &image[k].scale(&w[l]) - &image[l].scale(&w[k]))
                        .find(|e| !e.is_zero());
                    let Some(cross) = cross else { continue };
                    for param in vanishing_params(&cross, kind)? {
                        let moved = self.apply_theorem(&from.coefficients, g, &param)?;
                        if moved[l].is_zero() {
                            continue;
                        }
                        let scale = &w[l] / &moved[l];
                        if moved.iter().zip(w).all(|(a, b)| &(a * &scale) == b) {
                            out.push(Conjugacy {
                                from: from.index,
                                to: to.index,
                                step: Step { generator: g, param },
                                scale,
                            });
                            break;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn normalize_case_tree(&self, input: &[Rational]) -> Result<NormalizationReport> {
        if input.len() != 5 || self.alg.dim() != 5 {
            return Err(Error::Invalid("the case analysis applies to five-dimensional vectors".into()));
        }
        if input.iter().all(Zero::is_zero) {
            return Err(Error::Invalid("zero vector spans no subalgebra".into()));
        }
        let mut run = Run {
            sys: self,
            v: input.to_vec(),
            word: GroupWord::default(),
            discrepancies: Vec::new(),
        };
        let nz = |run: &Run, k: usize| !run.v[k - 1].is_zero();
        let case;
        if nz(&run, 5) {
            run.rescale(&run.v[4].recip());
            run.eliminate("1", 2, 2)?;
            run.eliminate("1", 3, 3)?;
            case = match (nz(&run, 1), nz(&run, 4)) {
                (true, true) => {
                    run.unit("1a", 1, &[5])?;
                    run.unit("1a", 4, &[5, 1])?;
                    "1a"
                }
                (false, true) => {
                    run.unit("1b", 4, &[5])?;
                    "1b"
                }
                (true, false) => {
                    run.unit("1c", 1, &[5])?;
                    "1c"
                }
                (false, false) => "1",
            };
        } else if nz(&run, 4) {
            run.rescale(&run.v[3].recip());
            run.eliminate("2a", 2, 2)?;
            run.eliminate("2a", 3, 3)?;
            if nz(&run, 1) {
                run.unit("2a", 1, &[4])?;
            }
            case = "2a";
        } else if nz(&run, 2) {
            run.rescale(&run.v[1].recip());
            run.eliminate("2b", 3, 3)?;
            case = if nz(&run, 1) {
                run.unit("2b-1", 1, &[2])?;
                "2b-1"
            } else {
                "2b-2"
            };
        } else {
            let lead = if nz(&run, 1) { run.v[0].clone() } else { run.v[2].clone() };
            run.rescale(&lead.recip());
            case = "2c";
        }
        let representative = self.matching_rep(&run.v);
        if representative.is_none() {
            run.discrepancies.push(Discrepancy {
                case: case.into(),
                claim: "the case ends at a listed representative".into(),
                at: run.v.clone(),
                witness: Vec::new(),
            });
        }
        let replayed = self.replay(input, &run.word)?;
        if replayed != run.v {
            return Err(Error::Verification(format!(
                "group word {} does not reproduce {}",
                run.word,
                render_vector(&run.v)
            )));
        }
        Ok(NormalizationReport {
            input: input.to_vec(),
            achieved: run.v,
            case: case.into(),
            representative,
            word: run.word,
            discrepancies: run.discrepancies,
        })
    }

    /// Normalizes `n` pseudorandom vectors drawn from `seed`.
    pub fn survey(&self, n: usize, seed: u64) -> Result<Survey> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut reports = Vec::with_capacity(n);
        while reports.len() < n {
            let v: Vector = (0..5)
                .map(|_| {
                    if rng.gen_bool(0.5) {
                        Rational::zero()
                    } else {
                        let mut num = rng.gen_range(-5i64..=4);
                        if num >= 0 {
                            num += 1;
                        }
                        Rational::new(num.into(), rng.gen_range(1i64..=4).into())
                    }
                })
                .collect();
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            reports.push(self.normalize_case_tree(&v)?);
        }
        Ok(Survey::new(seed, reports))
    }
}

/// Parameter making `e` vanish, if one exists.
fn vanishing_param(e: &Expr, kind: ParamKind) -> Result<Option<Param>> {
    let roots = vanishing_params(e, kind)?;
    Ok(match kind {
        ParamKind::Scaling => roots.into_iter().next(),
        _ => roots.into_iter().min_by_key(|p| match p {
            Param::Translation(x) | Param::Scaling(x) => x.abs(),
        }),
    })
}

/// Every admissible parameter at which `e` vanishes: rational `s` for
/// translations, positive rational `σ = e^s` for scalings.
fn vanishing_params(e: &Expr, kind: ParamKind) -> Result<Vec<Param>> {
    let roots = |poly: &[Rational]| -> Vec<Rational> {
        linalg::rational_roots(poly)
            .map(|r| r.into_iter().map(|(x, _)| x).collect())
            .unwrap_or_default()
    };
    match kind {
        ParamKind::Identity | ParamKind::Translation => {
            let s_atom = Atom::Sym(crate::expr::name(PARAM));
            let mut poly: Vec<Rational> = Vec::new();
            for (m, c) in e.terms() {
                let j = m.power_of(&s_atom);
                if j < 0 || m.factors().count() > usize::from(j > 0) || !m.exp_form().is_zero() {
                    return Err(Error::Invalid(format!("`{e}` is not polynomial in s")));
                }
                let j = j as usize;
                if poly.len() <= j {
                    poly.resize(j + 1, Rational::zero());
                }
                poly[j] += c;
            }
            Ok(roots(&poly).into_iter().map(Param::Translation).collect())
        }
        ParamKind::Scaling => {
            let terms = AdjointMatrix::sigma_terms(e)?;
            let lo = terms.iter().map(|(k, _)| *k).min().unwrap_or(0);
            let hi = terms.iter().map(|(k, _)| *k).max().unwrap_or(0);
            let mut poly = vec![Rational::zero(); (hi - lo) as usize + 1];
            for (k, c) in terms {
                poly[(k - lo) as usize] += c;
            }
            Ok(roots(&poly)
                .into_iter()
                .filter(|x| x.is_positive())
                .map(Param::Scaling)
                .collect())
        }
        ParamKind::Mixed => Ok(Vec::new()),
    }
}

/// Positive rational `r` with `r^m = q`, if it exists.
fn rational_root(q: &Rational, m: i64) -> Option<Rational> {
    let (num, den) = if m < 0 { (q.denom().clone(), q.numer().clone()) } else { (q.numer().clone(), q.denom().clone()) };
    let m = u32::try_from(m.unsigned_abs()).ok()?;
    let a = num.nth_root(m);
    let b = den.nth_root(m);
    (a.pow(m) == num && b.pow(m) == den).then(|| Rational::new(a, b))
}

struct Run<'a> {
    sys: &'a OptimalSystem,
    v: Vector,
    word: GroupWord,
    discrepancies: Vec<Discrepancy>,
}

impl Run<'_> {
    fn rescale(&mut self, k: &Rational) {
        if k.is_one() {
            return;
        }
        self.v = self.v.iter().map(|a| a * k).collect();
        self.word.rescale = Some(match &self.word.rescale {
            Some(prev) => prev * k,
            None => k.clone(),
        });
    }

    fn push(&mut self, generator: usize, param: Param) -> Result<()> {
        self.v = self.sys.apply_theorem(&self.v, generator, &param)?;
        self.word.steps.push(Step { generator, param });
        Ok(())
    }

    /// Clears coordinate `k` with `Ad(exp(s Y_generator))`.
    fn eliminate(&mut self, case: &str, k: usize, generator: usize) -> Result<()> {
        if self.v[k - 1].is_zero() {
            return Ok(());
        }
        let e = self.sys.coordinate_expr(&self.v, generator, k);
        match vanishing_param(&e, self.sys.kind(generator))? {
            Some(p) => {
                self.push(generator, p)?;
                debug_assert!(self.v[k - 1].is_zero());
                Ok(())
            }
            None => {
                self.discrepancies.push(Discrepancy {
                    case: case.into(),
                    claim: format!("Ad(exp(s*Y{generator})) removes a{k}"),
                    at: self.v.clone(),
                    witness: vec![(generator, e)],
                });
                Ok(())
            }
        }
    }

    /// Brings coordinate `k` to ±1 with a scaling that fixes `protected`.
    fn unit(&mut self, case: &str, k: usize, protected: &[usize]) -> Result<()> {
        let target = self.v[k - 1].abs();
        if target.is_one() {
            return Ok(());
        }
        let mut witness = Vec::new();
        for g in 1..=self.v.len() {
            if self.sys.kind(g) != ParamKind::Scaling {
                continue;
            }
            let e = self.sys.coordinate_expr(&self.v, g, k);
            let terms = AdjointMatrix::sigma_terms(&e)?;
            if let [(m, c)] = terms.as_slice() {
                if *m != 0 {
                    if let Some(sigma) = rational_root(&c.abs().recip(), *m) {
                        let p = Param::Scaling(sigma.clone());
                        let next = self.sys.apply_theorem(&self.v, g, &p)?;
                        let kept = protected.iter().all(|&q| next[q - 1] == self.v[q - 1]);
                        if kept && next[k - 1].abs().is_one() {
                            self.push(g, p)?;
                            return Ok(());
                        }
                    }
                }
            }
            witness.push((g, e));
        }
        self.discrepancies.push(Discrepancy {
            case: case.into(),
            claim: format!("a{k} can be made +1 or -1"),
            at: self.v.clone(),
            witness,
        });
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Survey {
    pub seed: u64,
    pub reports: Vec<NormalizationReport>,
    pub histogram: BTreeMap<usize, usize>,
    pub unmatched: usize,
}

impl Survey {
    fn new(seed: u64, reports: Vec<NormalizationReport>) -> Self {
        let mut histogram = BTreeMap::new();
        let mut unmatched = 0;
        for r in &reports {
            match r.representative {
                Some(i) => *histogram.entry(i).or_insert(0) += 1,
                None => unmatched += 1,
            }
        }
        Survey {
            seed,
            reports,
            histogram,
            unmatched,
        }
    }

    /// `(sample, discrepancy)` pairs in sample order.
    pub fn discrepancies(&self) -> impl Iterator<Item = (usize, &Discrepancy)> {
        self.reports
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.discrepancies.iter().map(move |d| (i, d)))
    }

    /// Discrepancy counts per `(case, claim)`.
    pub fn discrepancy_summary(&self) -> BTreeMap<(String, String), usize> {
        let mut out = BTreeMap::new();
        for (_, d) in self.discrepancies() {
            *out.entry((d.case.clone(), d.claim.clone())).or_insert(0) += 1;
        }
        out
    }
}

impl fmt::Display for Survey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "samples {} (seed {})", self.reports.len(), self.seed)?;
        for (rep, count) in &self.histogram {
            writeln!(f, "  Y^{rep:<3} {count}")?;
        }
        writeln!(f, "  none  {}", self.unmatched)?;
        writeln!(f, "discrepancies by claim")?;
        for ((case, claim), n) in self.discrepancy_summary() {
            writeln!(f, "  case {case}: {claim}: {n}")?;
        }
        writeln!(f, "discrepancies")?;
        for (i, d) in self.discrepancies() {
            writeln!(f, "  #{i} {d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{rat, ratio};
    use crate::fixtures;

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

    fn system() -> OptimalSystem {
        let basis = vec![
            field(&[("x", "1")]),
            field(&[("t", "1")]),
            field(&[("u", "1")]),
            field(&[("t", "t"), ("u", "u"), ("f", "-2*f"), ("g", "-g")]),
            field(&[("x", "1"), ("f", "2*f"), ("g", "g")]),
        ];
        let alg = LieAlgebra::new((1..=5).map(|i| format!("Y{i}")).collect(), basis).unwrap();
        let fx = fixtures::lookup("burgers-g5").unwrap();
        OptimalSystem::from_fixtures(alg, &[2, 1, 3, 4, 5], &fx).unwrap()
    }

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn adjoint_examples_in_declared_labeling() {
        let s = system();
        let out = s.apply_adjoint(&v(&[0, 0, 0, 1, 0]), 1, &Param::Translation(rat(3))).unwrap();
        assert_eq!(out, v(&[0, -3, 0, 1, 0]));
        let out = s.apply_adjoint(&v(&[0, 4, 0, 0, 0]), 3, &Param::Scaling(ratio(1, 4))).unwrap();
        assert_eq!(out, v(&[0, 1, 0, 0, 0]));
        let w = v(&[3, -1, 2, 5, 7]);
        assert_eq!(s.apply_adjoint(&w, 2, &Param::Translation(rat(0))).unwrap(), w);
        assert!(s.apply_adjoint(&w, 3, &Param::Scaling(rat(-1))).is_err());
    }

    #[test]
    fn representative_expansions() {
        let s = system();
        let reps = s.representatives();
        assert_eq!(reps.len(), 17);
        assert_eq!(reps[0].field, field(&[("t", "1")]));
        assert_eq!(reps[4].field, field(&[("x", "1"), ("f", "2*f"), ("g", "g")]));
        assert_eq!(reps[11].field, field(&[("t", "t"), ("x", "1"), ("u", "u")]));
        let bad: Vec<usize> = reps.iter().filter(|r| !r.printed_matches()).map(|r| r.index).collect();
        assert_eq!(bad, [16]);
        assert_eq!(
            reps[15].field,
            field(&[("t", "1 - t"), ("x", "1"), ("u", "-u"), ("f", "4*f"), ("g", "2*g")])
        );
    }

    #[test]
    fn representatives_are_fixed_points() {
        let s = system();
        for r in s.representatives() {
            let rep = s.normalize_case_tree(&r.coefficients).unwrap();
            assert_eq!(rep.representative, Some(r.index), "{rep}");
            assert!(rep.word.is_empty(), "{rep}");
            assert!(rep.discrepancies.is_empty());
        }
    }

    #[test]
    fn scaled_time_translation_plus_y4() {
        let s = system();
        let r = s.normalize_case_tree(&v(&[4, 0, 0, 1, 0])).unwrap();
        assert_eq!(r.case, "2a");
        assert_eq!(r.representative, Some(8));
        assert_eq!(
            r.word.steps,
            [Step {
                generator: 4,
                param: Param::Scaling(ratio(1, 4))
            }]
        );
    }

    #[test]
    fn y5_alone_is_representative_5() {
        let r = system().normalize_case_tree(&v(&[0, 0, 0, 0, 1])).unwrap();
        assert_eq!(r.representative, Some(5));
        assert!(r.word.is_empty());
    }

    #[test]
    fn central_x_translation_cannot_be_removed() {
        let s = system();
        let r = s.normalize_case_tree(&[rat(0), ratio(1, 2), rat(0), rat(0), rat(1)]).unwrap();
        assert_eq!(r.representative, None);
        let d = &r.discrepancies[0];
        assert_eq!(d.claim, "Ad(exp(s*Y2)) removes a2");
        assert_eq!(d.witness, vec![(2, Expr::constant(ratio(1, 2)))]);
        // same with a4 != 0
        let r = s.normalize_case_tree(&v(&[0, 1, 0, 1, 1])).unwrap();
        assert!(r.discrepancies.iter().any(|d| d.claim.contains("removes a2")));
    }

    #[test]
    fn translations_solved_exactly() {
        let s = system();
        let r = s.normalize_case_tree(&[rat(0), rat(0), ratio(3, 2), rat(2), rat(0)]).unwrap();
        assert_eq!(r.representative, Some(4));
        assert_eq!(r.word.rescale, Some(ratio(1, 2)));
        assert_eq!(r.word.steps.len(), 1);
        assert_eq!(s.replay(&r.input, &r.word).unwrap(), r.achieved);
    }

    #[test]
    fn case_2b_1_signs() {
        let s = system();
        assert_eq!(s.normalize_case_tree(&v(&[3, 2, 0, 0, 0])).unwrap().representative, Some(6));
        assert_eq!(s.normalize_case_tree(&v(&[-3, 2, 0, 0, 0])).unwrap().representative, Some(7));
        assert_eq!(s.normalize_case_tree(&v(&[3, -2, 0, 0, 0])).unwrap().representative, Some(7));
    }

    #[test]
    fn survey_is_deterministic_and_certified() {
        let s = system();
        let a = s.survey(60, 7).unwrap();
        let b = s.survey(60, 7).unwrap();
        assert_eq!(a, b);
        for r in &a.reports {
            assert_eq!(s.replay(&r.input, &r.word).unwrap(), r.achieved);
            let back = s.replay(&r.achieved, &r.word.inverse()).unwrap();
            assert_eq!(back, r.input);
        }
    }

    #[test]
    fn roots() {
        assert_eq!(rational_root(&ratio(4, 9), 2), Some(ratio(2, 3)));
        assert_eq!(rational_root(&ratio(4, 9), -1), Some(ratio(9, 4)));
        assert_eq!(rational_root(&rat(2), 2), None);
    }
    #[test]
    fn listed_representatives_conjugate_by_translation() {
        let sys = system();
        let pairs: Vec<(usize, usize)> = sys.conjugacies().unwrap().iter().map(|c| (c.from, c.to)).collect();
        assert_eq!(
            pairs,
            vec![(4, 8), (4, 9), (8, 9), (12, 14), (12, 15), (13, 16), (13, 17), (14, 15), (16, 17)]
        );
        for c in sys.conjugacies().unwrap() {
            let from = &sys.representatives()[c.from - 1].coefficients;
            let to = &sys.representatives()[c.to - 1].coefficients;
            let moved = sys
                .replay(from, &GroupWord { rescale: Some(c.scale.clone()), steps: vec![c.step.clone()] })
                .unwrap();
            assert_eq!(&moved, to);
        }
    }

}
