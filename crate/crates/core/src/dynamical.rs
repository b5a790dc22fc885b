//! Dynamical r-matrices `r: h* → Λ²g` with rational coefficients in dual coordinates `λ_i`.

use crate::error::{Error, Result};
use crate::exterior::{schouten, Multivector};
use crate::kernel::{Poly, RatFunc, Scalar};
use crate::lie::{ChevalleyData, LieAlgebra};
use crate::report::{aggregate, CheckReport};

#[derive(Clone, Debug, PartialEq)]
pub struct DynamicalR {
    lie: LieAlgebra,
    cartan: Vec<usize>,
    r: Multivector<RatFunc>,
}

impl DynamicalR {
    /// `cartan` lists the basis indices `h_1, …, h_k`; coefficients are functions of `λ_1, …, λ_k`.
    pub fn new(lie: &LieAlgebra, cartan: Vec<usize>, r: Multivector<RatFunc>) -> Result<Self> {
        if r.dim() != lie.dim() {
            return Err(Error::DimensionMismatch {
                expected: lie.dim(),
                found: r.dim(),
            });
        }
        if r.grade() != 2 {
            return Err(Error::GradeMismatch {
                expected: 2,
                found: r.grade(),
            });
        }
        if let Some(&bad) = cartan.iter().find(|&&i| i >= lie.dim()) {
            return Err(Error::DimensionMismatch {
                expected: lie.dim(),
                found: bad + 1,
            });
        }
        for (a, &i) in cartan.iter().enumerate() {
            for &j in &cartan[a + 1..] {
                if !lie.bracket_basis(i, j).is_empty() {
                    return Err(Error::InvalidInput(format!(
                        "[{}, {}] ≠ 0: the Cartan indices must span an abelian subalgebra",
                        lie.names()[i],
                        lie.names()[j]
                    )));
                }
            }
        }
        let k = cartan.len();
        if let Some((_, c)) = r.terms().find(|(_, c)| c.nvars() != k) {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: c.nvars(),
            });
        }
        Ok(DynamicalR {
            lie: lie.clone(),
            cartan,
            r,
        })
    }

    /// `r(λ) = Σ_α λ_α / (α, λ) · e_α ∧ f_α`, with `(α, λ) = λ(h_α)` for the coroot `h_α`.
    pub fn rational(lie: &LieAlgebra, data: &ChevalleyData, scale: &Scalar) -> Result<Self> {
        DynamicalR::from_root_functions(lie, data, |k, alpha| {
            let num = Poly::constant(k, scale.clone());
            RatFunc::new(num, alpha.clone())
                .ok_or_else(|| Error::InvalidInput("zero root pairing".into()))
        })
    }

    /// `r(λ) = Σ_α λ_α c_α(λ) e_α ∧ f_α` with `c_α` built from the linear form `(α, λ)`.
    pub fn from_root_functions(
        lie: &LieAlgebra,
        data: &ChevalleyData,
        c: impl Fn(usize, &Poly) -> Result<RatFunc>,
    ) -> Result<Self> {
        let k = data.h.len();
        let lambdas = data.lambdas()?;
        let mut r = Multivector::zero(lie.dim(), 2);
        for (a, &(i, j)) in data.positive_roots.iter().enumerate() {
            let coeff = c(k, &coroot_pairing(k, i, j))?.scale(&lambdas[a]);
            r.add_term(vec![data.e[a], data.f[a]], coeff);
        }
        DynamicalR::new(lie, data.h.clone(), r)
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    pub fn r(&self) -> &Multivector<RatFunc> {
        &self.r
    }

    pub fn scale(&self, t: &Scalar) -> Self {
        DynamicalR {
            r: self.r.scale(t),
            ..self.clone()
        }
    }

    pub fn try_add(&self, other: &DynamicalR) -> Result<Self> {
        if self.cartan != other.cartan {
            return Err(Error::InvalidInput("different Cartan data".into()));
        }
        Ok(DynamicalR {
            r: self.r.try_add(&other.r)?,
            ..self.clone()
        })
    }

    /// Display names `λ1, …, λk`.
    pub fn lambda_names(&self) -> Vec<String> {
        (1..=self.cartan.len()).map(|i| format!("λ{i}")).collect()
    }
}

/// `λ(h_α)` for `α = ε_i − ε_j` in `sl_n`: `λ_i + … + λ_{j−1}` in coordinates dual to `H_1, …, H_{n−1}`.
fn coroot_pairing(k: usize, i: usize, j: usize) -> Poly {
    (i..j).fold(Poly::zero(k), |s, m| &s + &Poly::var(k, m))
}

/// `Σ_i h_i ∧ ∂r/∂λ_i + ½[r, r]`.
pub fn cdybe_residual(r: &DynamicalR) -> Result<Multivector<RatFunc>> {
    let n = r.lie.dim();
    let k = r.cartan.len();
    let mut out = schouten(&r.lie, &r.r, &r.r)?.scale(&Scalar::ratio(1, 2));
    for (i, &h) in r.cartan.iter().enumerate() {
        let dr = r.r.map(|c| c.derivative(i));
        if dr.is_zero() {
            continue;
        }
        let hv = Multivector::from_terms(n, 1, [(vec![h], RatFunc::constant(k, Scalar::one()))])?;
        out = out.try_add(&hv.wedge(&dr)?)?;
    }
    Ok(out)
}

/// Passes iff the residual is constant in `λ` and its value is ad-invariant.
pub fn check_dynamical(r: &DynamicalR) -> Result<CheckReport> {
    let res = cdybe_residual(r)?;
    let names = r.lie.names().to_vec();
    let lambda = r.lambda_names();
    let shown = res.format_with(&names, |c| c.display(&lambda).to_string());
    let mut constant = Multivector::<Scalar>::zero(res.dim(), res.grade());
    let mut witness = None;
    for (idx, c) in res.terms() {
        match c.constant_value() {
            Some(v) => constant.add_term(idx.clone(), v),
            None => {
                let basis: Vec<&str> = idx.iter().map(|&i| names[i].as_str()).collect();
                witness = Some(format!(
                    "coefficient of {} is {}",
                    basis.join("∧"),
                    c.display(&lambda)
                ));
                break;
            }
        }
    }
    let const_report =
        CheckReport::from_witness("constant", witness).with_note(format!("residual = {shown}"));
    let inv = if !const_report.passed() {
        CheckReport::skipped("invariant", "residual is not constant")
    } else {
        let mut w = None;
        for x in 0..r.lie.dim() {
            let b = schouten(&r.lie, &Multivector::basis(r.lie.dim(), x), &constant)?;
            if !b.is_zero() {
                w = Some(format!("[{}, residual] = {}", names[x], b.format(&names)));
                break;
            }
        }
        CheckReport::from_witness("invariant", w)
    };
    Ok(aggregate("dynamical_r_matrix", vec![const_report, inv]))
}

/// Numeric, non-certifying check of `r(λ) = Σ_α λ_α coth((α, λ)) e_α ∧ f_α` at sample points.
///
/// Passes when the residual agrees across all points within `tol` and is ad-invariant within `tol`.
pub fn coth_spot_check(
    lie: &LieAlgebra,
    data: &ChevalleyData,
    points: &[Vec<f64>],
    tol: f64,
) -> Result<CheckReport> {
    let k = data.h.len();
    let lambdas: Vec<f64> = data.lambdas()?.iter().map(Scalar::to_f64).collect();
    let names = lie.names().to_vec();
    let mut first: Option<Multivector<f64>> = None;
    let mut witness = None;
    for pt in points {
        if pt.len() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: pt.len(),
            });
        }
        let mut r = Multivector::<f64>::zero(lie.dim(), 2);
        let mut dr = vec![Multivector::<f64>::zero(lie.dim(), 2); k];
        for (a, &(i, j)) in data.positive_roots.iter().enumerate() {
            let s: f64 = pt[i..j].iter().sum();
            let coth = 1.0 / s.tanh();
            let csch2 = 1.0 / s.sinh().powi(2);
            r.add_term(vec![data.e[a], data.f[a]], lambdas[a] * coth);
            for (m, d) in dr.iter_mut().enumerate() {
                if (i..j).contains(&m) {
                    d.add_term(vec![data.e[a], data.f[a]], -lambdas[a] * csch2);
                }
            }
        }
        let mut res = schouten(lie, &r, &r)?.scale(&Scalar::ratio(1, 2));
        for (m, &h) in data.h.iter().enumerate() {
            let mut hv = Multivector::<f64>::zero(lie.dim(), 1);
            hv.add_term(vec![h], 1.0);
            res = res.try_add(&hv.wedge(&dr[m])?)?;
        }
        let res = prune(&res, tol);
        match &first {
            None => first = Some(res),
            Some(f) => {
                let d = prune(&res.try_sub(f)?, tol);
                if !d.is_zero() {
                    witness = Some(format!("residual at {pt:?} differs: {}", d.format(&names)));
                    break;
                }
            }
        }
    }
    let constant = CheckReport::from_witness("constant", witness);
    let mut inv = None;
    if let Some(f) = &first {
        for x in 0..lie.dim() {
            let mut xv = Multivector::<f64>::zero(lie.dim(), 1);
            xv.add_term(vec![x], 1.0);
            let b = prune(&schouten(lie, &xv, f)?, tol);
            if !b.is_zero() {
                inv = Some(format!("[{}, residual] = {}", names[x], b.format(&names)));
                break;
            }
        }
    }
    Ok(aggregate(
        "dynamical_coth_numeric",
        vec![constant, CheckReport::from_witness("invariant", inv)],
    )
    .with_note("numeric, non-certifying"))
}

fn prune(m: &Multivector<f64>, tol: f64) -> Multivector<f64> {
    let mut out = Multivector::zero(m.dim(), m.grade());
    for (idx, c) in m.terms() {
        if c.abs() > tol {
            out.add_term(idx.clone(), *c);
        }
    }
    out
}

#[cfg(test)]
mod tests;
