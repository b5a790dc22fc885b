//! Polynomial multivector fields and differential forms on one affine chart.
//!
//! Conventions: `π♯ξ = π(ξ, ·)`; interior products contract the first slot,
//! so `ι_{X∧Y}φ = ι_Y ι_X φ = φ(X, Y, ·)`; `(∧³π♯φ)(ξ,η,ζ) = φ(π♯ξ, π♯η, π♯ζ)`.

mod algebroid;
mod poisson;

pub use algebroid::{check_quasi_algebroid, Algebroid, SectionDerivation};
pub use poisson::{
    check_twisted, dual_algebroid_bracket, dual_anchor, is_poisson, koszul_bracket, lichnerowicz,
    poisson_action_check, poisson_bracket, twisted_cotangent_structures, BracketSign,
    TwistedStructures,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exterior::Multivector;
use crate::kernel::{Coeff, Poly, Scalar, Vars};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variance {
    Multivector,
    Form,
}

/// A homogeneous multivector field or form; functions are grade 0.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyField {
    chart: Vars,
    variance: Variance,
    body: Multivector<Poly>,
}

impl PolyField {
    pub fn zero(chart: &Vars, variance: Variance, grade: usize) -> Self {
        PolyField {
            chart: chart.clone(),
            variance,
            body: Multivector::zero(chart.len(), grade),
        }
    }

    pub fn from_body(chart: &Vars, variance: Variance, body: Multivector<Poly>) -> Result<Self> {
        if body.dim() != chart.len() {
            return Err(Error::DimensionMismatch {
                expected: chart.len(),
                found: body.dim(),
            });
        }
        Ok(PolyField {
            chart: chart.clone(),
            variance,
            body,
        })
    }

    /// Builds from unsorted coordinate index tuples.
    pub fn from_terms<I: IntoIterator<Item = (Vec<usize>, Poly)>>(
        chart: &Vars,
        variance: Variance,
        grade: usize,
        terms: I,
    ) -> Result<Self> {
        let terms: Vec<(Vec<usize>, Poly)> = terms.into_iter().collect();
        if let Some((_, p)) = terms.iter().find(|(_, p)| p.nvars() != chart.len()) {
            return Err(Error::DimensionMismatch {
                expected: chart.len(),
                found: p.nvars(),
            });
        }
        PolyField::from_body(
            chart,
            variance,
            Multivector::from_terms(chart.len(), grade, terms)?,
        )
    }

    pub fn function(chart: &Vars, variance: Variance, f: Poly) -> Self {
        let mut body = Multivector::zero(chart.len(), 0);
        body.add_term(Vec::new(), f);
        PolyField {
            chart: chart.clone(),
            variance,
            body,
        }
    }

    pub fn vector_field(chart: &Vars, comps: Vec<Poly>) -> Result<Self> {
        PolyField::from_terms(
            chart,
            Variance::Multivector,
            1,
            comps.into_iter().enumerate().map(|(i, p)| (vec![i], p)),
        )
    }

    pub fn one_form(chart: &Vars, comps: Vec<Poly>) -> Result<Self> {
        PolyField::from_terms(
            chart,
            Variance::Form,
            1,
            comps.into_iter().enumerate().map(|(i, p)| (vec![i], p)),
        )
    }

    /// `∂_i`.
    pub fn coordinate_field(chart: &Vars, i: usize) -> Self {
        let n = chart.len();
        PolyField::from_terms(chart, Variance::Multivector, 1, [(vec![i], Poly::one(n))])
            .expect("index in range")
    }

    /// `dx_i`.
    pub fn coordinate_form(chart: &Vars, i: usize) -> Self {
        let n = chart.len();
        PolyField::from_terms(chart, Variance::Form, 1, [(vec![i], Poly::one(n))])
            .expect("index in range")
    }

    /// The bivector `Σ_{i<j} π^{ij} ∂_i∧∂_j` from a brackets table `{x_i, x_j} = π^{ij}`.
    pub fn bivector_from_brackets(chart: &Vars, brackets: &[(usize, usize, Poly)]) -> Result<Self> {
        PolyField::from_terms(
            chart,
            Variance::Multivector,
            2,
            brackets.iter().map(|(i, j, p)| (vec![*i, *j], p.clone())),
        )
    }

    /// `df`.
    pub fn differential(chart: &Vars, f: &Poly) -> Self {
        let comps = (0..chart.len()).map(|i| f.derivative(i)).collect();
        PolyField::one_form(chart, comps).expect("same chart")
    }

    pub fn chart(&self) -> &Vars {
        &self.chart
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn grade(&self) -> usize {
        self.body.grade()
    }

    pub fn dim(&self) -> usize {
        self.chart.len()
    }

    pub fn body(&self) -> &Multivector<Poly> {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Coefficient at an index tuple in any order, with sign; zero when absent.
    pub fn coeff(&self, idx: &[usize]) -> Poly {
        self.body
            .component(idx)
            .unwrap_or_else(|| Poly::zero(self.dim()))
    }

    /// Value of a grade-0 field.
    pub fn as_function(&self) -> Poly {
        self.coeff(&[])
    }

    /// Components of a grade-1 field.
    pub fn components(&self) -> Vec<Poly> {
        (0..self.dim()).map(|i| self.coeff(&[i])).collect()
    }

    fn same_kind(&self, other: &PolyField) -> Result<()> {
        self.same_chart(other)?;
        if self.variance != other.variance && self.grade() > 0 && other.grade() > 0 {
            return Err(Error::InvalidInput(
                "cannot combine a multivector field with a form".into(),
            ));
        }
        Ok(())
    }

    fn same_chart(&self, other: &PolyField) -> Result<()> {
        if self.chart != other.chart {
            return Err(Error::ChartMismatch(format!(
                "[{}] vs [{}]",
                self.chart.names.join(","),
                other.chart.names.join(",")
            )));
        }
        Ok(())
    }

    fn with_body(&self, body: Multivector<Poly>) -> PolyField {
        PolyField {
            chart: self.chart.clone(),
            variance: self.variance,
            body,
        }
    }

    pub fn try_add(&self, other: &PolyField) -> Result<PolyField> {
        self.same_kind(other)?;
        Ok(self.with_body(self.body.try_add(&other.body)?))
    }

    pub fn try_sub(&self, other: &PolyField) -> Result<PolyField> {
        self.same_kind(other)?;
        Ok(self.with_body(self.body.try_sub(&other.body)?))
    }

    pub fn neg(&self) -> PolyField {
        self.with_body(self.body.neg())
    }

    pub fn scale(&self, s: &Scalar) -> PolyField {
        self.with_body(self.body.scale(s))
    }

    /// Multiplication by a function.
    pub fn mul_fn(&self, f: &Poly) -> PolyField {
        self.with_body(self.body.mul_coeff(f))
    }

    pub fn wedge(&self, other: &PolyField) -> Result<PolyField> {
        self.same_kind(other)?;
        let variance = if self.grade() == 0 {
            other.variance
        } else {
            self.variance
        };
        Ok(PolyField {
            chart: self.chart.clone(),
            variance,
            body: self.body.wedge(&other.body)?,
        })
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> PolyField {
        self.with_body(self.body.map(f))
    }

    pub fn format(&self) -> String {
        let prefix = match self.variance {
            Variance::Multivector => "∂",
            Variance::Form => "d",
        };
        let names: Vec<String> = self
            .chart
            .names
            .iter()
            .map(|n| format!("{prefix}{n}"))
            .collect();
        self.body
            .format_with(&names, |c| c.display(&self.chart.names).to_string())
    }
}

impl std::fmt::Display for PolyField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.format())
    }
}

fn require(p: &PolyField, variance: Variance, grade: Option<usize>, what: &str) -> Result<()> {
    if p.variance != variance && p.grade() > 0 {
        return Err(Error::InvalidInput(format!(
            "{what} has the wrong variance"
        )));
    }
    if let Some(g) = grade {
        if p.grade() != g {
            return Err(Error::GradeMismatch {
                expected: g,
                found: p.grade(),
            });
        }
    }
    Ok(())
}

/// Right derivative `∂_r θ_I / ∂θ_i`: removes `i` with sign `(−1)^{p−1−j}`, `j` its position.
fn right_derivative(body: &Multivector<Poly>, i: usize) -> Multivector<Poly> {
    let p = body.grade();
    let mut out = Multivector::zero(body.dim(), p.saturating_sub(1));
    if p == 0 {
        return out;
    }
    for (idx, c) in body.terms() {
        if let Some(j) = idx.iter().position(|&k| k == i) {
            let mut rest = idx.clone();
            rest.remove(j);
            out.add_term(
                rest,
                if (p - 1 - j) % 2 == 1 {
                    c.neg()
                } else {
                    c.clone()
                },
            );
        }
    }
    out
}

fn coord_derivative(body: &Multivector<Poly>, i: usize) -> Multivector<Poly> {
    body.map(|c| c.derivative(i))
}

/// Schouten–Nijenhuis bracket of multivector fields.
///
/// With odd coordinates `θ_i = ∂_i`:
/// `[P,Q] = Σ_i (∂_r P/∂θ_i)(∂_{x_i} Q) − (−1)^{(p−1)(q−1)} (∂_r Q/∂θ_i)(∂_{x_i} P)`.
/// In degree one this is the Lie bracket of vector fields and `[X, f] = X(f)`.
pub fn sn_bracket(p: &PolyField, q: &PolyField) -> Result<PolyField> {
    p.same_chart(q)?;
    require(p, Variance::Multivector, None, "left argument")?;
    require(q, Variance::Multivector, None, "right argument")?;
    let (pg, qg) = (p.grade(), q.grade());
    let n = p.dim();
    let grade = (pg + qg).saturating_sub(1);
    let mut out = Multivector::zero(n, grade);
    if pg + qg == 0 || grade > n {
        return Ok(PolyField {
            chart: p.chart.clone(),
            variance: Variance::Multivector,
            body: out,
        });
    }
    let sign_odd = ((pg as i64 - 1) * (qg as i64 - 1)).rem_euclid(2) == 1;
    for i in 0..n {
        let a = right_derivative(&p.body, i);
        if !a.is_zero() {
            let b = coord_derivative(&q.body, i);
            if !b.is_zero() {
                out = out.try_add(&a.wedge(&b)?)?;
            }
        }
        let c = right_derivative(&q.body, i);
        if !c.is_zero() {
            let d = coord_derivative(&p.body, i);
            if !d.is_zero() {
                let t = c.wedge(&d)?;
                out = if sign_odd {
                    out.try_add(&t)?
                } else {
                    out.try_sub(&t)?
                };
            }
        }
    }
    Ok(PolyField {
        chart: p.chart.clone(),
        variance: Variance::Multivector,
        body: out,
    })
}

/// Exterior derivative of a form.
pub fn de_rham(alpha: &PolyField) -> Result<PolyField> {
    require(alpha, Variance::Form, None, "argument")?;
    let n = alpha.dim();
    let mut out = Multivector::zero(n, alpha.grade() + 1);
    for (idx, c) in alpha.body.terms() {
        for i in 0..n {
            if idx.contains(&i) {
                continue;
            }
            let dc = c.derivative(i);
            if dc.is_zero() {
                continue;
            }
            let mut full = Vec::with_capacity(idx.len() + 1);
            full.push(i);
            full.extend_from_slice(idx);
            out.add_term(full, dc);
        }
    }
    Ok(PolyField {
        chart: alpha.chart.clone(),
        variance: Variance::Form,
        body: out,
    })
}

/// `ι_X α`, contracting the first slot.
pub fn interior(x: &PolyField, alpha: &PolyField) -> Result<PolyField> {
    x.same_chart(alpha)?;
    require(x, Variance::Multivector, Some(1), "vector field")?;
    require(alpha, Variance::Form, None, "form")?;
    let n = alpha.dim();
    let mut out = Multivector::zero(n, alpha.grade().saturating_sub(1));
    if alpha.grade() == 0 {
        return Ok(PolyField {
            chart: alpha.chart.clone(),
            variance: Variance::Form,
            body: out,
        });
    }
    let xs = x.components();
    for (idx, c) in alpha.body.terms() {
        for (k, &i) in idx.iter().enumerate() {
            if xs[i].is_zero() {
                continue;
            }
            let mut rest = idx.clone();
            rest.remove(k);
            let v = c * &xs[i];
            out.add_term(rest, if k % 2 == 1 { v.neg() } else { v });
        }
    }
    Ok(PolyField {
        chart: alpha.chart.clone(),
        variance: Variance::Form,
        body: out,
    })
}

/// `α(X_1, …, X_p)`.
pub fn form_eval(alpha: &PolyField, vectors: &[&PolyField]) -> Result<Poly> {
    if vectors.len() != alpha.grade() {
        return Err(Error::GradeMismatch {
            expected: alpha.grade(),
            found: vectors.len(),
        });
    }
    let mut cur = alpha.clone();
    for v in vectors {
        cur = interior(v, &cur)?;
    }
    Ok(cur.as_function())
}

/// `L_X α = ι_X dα + d ι_X α`.
pub fn lie_derivative(x: &PolyField, alpha: &PolyField) -> Result<PolyField> {
    let a = interior(x, &de_rham(alpha)?)?;
    if alpha.grade() == 0 {
        return Ok(a);
    }
    a.try_add(&de_rham(&interior(x, alpha)?)?)
}

/// `π(ξ, η) = Σ_{i<j} π^{ij} (ξ_i η_j − ξ_j η_i)`.
pub fn bivector_eval(pi: &PolyField, xi: &PolyField, eta: &PolyField) -> Result<Poly> {
    pi.same_chart(xi)?;
    pi.same_chart(eta)?;
    require(pi, Variance::Multivector, Some(2), "bivector")?;
    require(xi, Variance::Form, Some(1), "1-form")?;
    require(eta, Variance::Form, Some(1), "1-form")?;
    let (a, b) = (xi.components(), eta.components());
    let mut s = Poly::zero(pi.dim());
    for (idx, c) in pi.body.terms() {
        let (i, j) = (idx[0], idx[1]);
        let m = &(&a[i] * &b[j]) - &(&a[j] * &b[i]);
        if !m.is_zero() {
            s = &s + &(c * &m);
        }
    }
    Ok(s)
}

/// `π♯ξ = π(ξ, ·)`.
pub fn sharp(pi: &PolyField, xi: &PolyField) -> Result<PolyField> {
    let n = pi.dim();
    let comps = (0..n)
        .map(|j| bivector_eval(pi, xi, &PolyField::coordinate_form(&pi.chart, j)))
        .collect::<Result<Vec<_>>>()?;
    PolyField::vector_field(&pi.chart, comps)
}

/// `(∧³π♯φ)(ξ,η,ζ) = φ(π♯ξ, π♯η, π♯ζ)`, as a trivector field.
pub fn wedge3_sharp(pi: &PolyField, phi: &PolyField) -> Result<PolyField> {
    pi.same_chart(phi)?;
    require(phi, Variance::Form, Some(3), "3-form")?;
    let n = pi.dim();
    let sharps: Vec<PolyField> = (0..n)
        .map(|i| sharp(pi, &PolyField::coordinate_form(&pi.chart, i)))
        .collect::<Result<_>>()?;
    let mut terms = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let v = form_eval(phi, &[&sharps[a], &sharps[b], &sharps[c]])?;
                if !v.is_zero() {
                    terms.push((vec![a, b, c], v));
                }
            }
        }
    }
    PolyField::from_terms(&pi.chart, Variance::Multivector, 3, terms)
}

/// Deterministic random polynomials of total degree ≤ `degree` with small integer coefficients.
pub fn sample_polys(nvars: usize, count: usize, degree: i32, seed: u64) -> Vec<Poly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monomials = monomials_up_to(nvars, degree);
    (0..count)
        .map(|_| {
            let mut terms: Vec<(Scalar, Vec<i32>)> = Vec::new();
            for e in &monomials {
                if rng.random_bool(0.5) {
                    terms.push((Scalar::from_int(rng.random_range(-3..=3)), e.clone()));
                }
            }
            Poly::from_terms(nvars, terms)
        })
        .collect()
}

pub(crate) fn monomials_up_to(nvars: usize, degree: i32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![0; nvars]];
    for i in 0..nvars {
        let mut next = Vec::new();
        for e in &out {
            let used: i32 = e.iter().sum();
            for k in 0..=(degree - used) {
                let mut f = e.clone();
                f[i] = k;
                next.push(f);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests;
