//! Poisson and twisted Poisson bivectors, their cotangent brackets, and Poisson actions.

use super::algebroid::{Algebroid, SectionDerivation};
use super::{
    bivector_eval, de_rham, lie_derivative, require, sharp, sn_bracket, wedge3_sharp, PolyField,
    Variance,
};
use crate::bialgebra::Cobracket;
use crate::error::{Error, Result};
use crate::exterior::Multivector;
use crate::kernel::Poly;
use crate::lie::LieAlgebra;
use crate::report::{aggregate, CheckReport};

/// Passes iff `[π, π] = 0`.
pub fn is_poisson(pi: &PolyField) -> Result<CheckReport> {
    require(pi, Variance::Multivector, Some(2), "bivector")?;
    let rr = sn_bracket(pi, pi)?;
    Ok(CheckReport::from_witness(
        "poisson",
        (!rr.is_zero()).then(|| format!("[π, π] = {rr}")),
    ))
}

/// `{f, g} = π(df, dg)`.
pub fn poisson_bracket(pi: &PolyField, f: &Poly, g: &Poly) -> Result<Poly> {
    let chart = pi.chart();
    bivector_eval(
        pi,
        &PolyField::differential(chart, f),
        &PolyField::differential(chart, g),
    )
}

/// `[ξ, η]_π = L_{π♯ξ} η − L_{π♯η} ξ − d π(ξ, η)`.
pub fn koszul_bracket(pi: &PolyField, xi: &PolyField, eta: &PolyField) -> Result<PolyField> {
    let a = lie_derivative(&sharp(pi, xi)?, eta)?;
    let b = lie_derivative(&sharp(pi, eta)?, xi)?;
    let c = PolyField::differential(pi.chart(), &bivector_eval(pi, xi, eta)?);
    a.try_sub(&b)?.try_sub(&c)
}

/// `d_π P = [π, P]`.
pub fn lichnerowicz(pi: &PolyField, p: &PolyField) -> Result<PolyField> {
    require(pi, Variance::Multivector, Some(2), "bivector")?;
    sn_bracket(pi, p)
}

/// Sign of the tensorial term `(δX)(ξ, η)` in the dual bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketSign {
    /// `+(δX)(ξ, η)`, as the formula is usually displayed.
    Displayed,
    /// `−(δX)(ξ, η)`, the Chevalley–Eilenberg dual; reproduces the Koszul bracket for `δ = [π, ·]`.
    Cochain,
}

/// `ρ_*ξ`, defined by `ρ_*ξ(f) = ⟨ξ, δf⟩`.
pub fn dual_anchor(delta: &SectionDerivation, xi: &PolyField) -> Result<PolyField> {
    check_dual_datum(delta, xi)?;
    let chart = delta.chart();
    let comps = (0..chart.len())
        .map(|j| pair(xi, &delta.on_coordinate(j)))
        .collect();
    PolyField::vector_field(chart, comps)
}

/// The bracket on 1-forms induced by a 2-differential on vector fields:
/// `⟨[ξ,η], X⟩ = ±(δX)(ξ,η) + ρ_*ξ⟨X,η⟩ − ρ_*η⟨X,ξ⟩`, evaluated on `X = ∂_k`.
pub fn dual_algebroid_bracket(
    delta: &SectionDerivation,
    xi: &PolyField,
    eta: &PolyField,
    sign: BracketSign,
) -> Result<PolyField> {
    check_dual_datum(delta, eta)?;
    let chart = delta.chart();
    let (rx, re) = (dual_anchor(delta, xi)?, dual_anchor(delta, eta)?);
    let (xs, es) = (xi.components(), eta.components());
    let mut comps = Vec::with_capacity(chart.len());
    for k in 0..chart.len() {
        let t = bivector_eval(&delta.on_frame(k), xi, eta)?;
        let t = match sign {
            BracketSign::Displayed => t,
            BracketSign::Cochain => -t,
        };
        let a = derive_along(&rx, &es[k]);
        let b = derive_along(&re, &xs[k]);
        comps.push(&(&t + &a) - &b);
    }
    PolyField::one_form(chart, comps)
}

fn check_dual_datum(delta: &SectionDerivation, xi: &PolyField) -> Result<()> {
    if delta.variance() != Variance::Multivector || delta.k() != 2 {
        return Err(Error::InvalidInput(
            "the dual bracket needs a 2-differential on multivector fields".into(),
        ));
    }
    require(xi, Variance::Form, Some(1), "1-form")?;
    if xi.chart() != delta.chart() {
        return Err(Error::ChartMismatch(
            "form and differential on different charts".into(),
        ));
    }
    Ok(())
}

fn pair(xi: &PolyField, x: &PolyField) -> Poly {
    xi.components()
        .iter()
        .zip(x.components().iter())
        .fold(Poly::zero(xi.dim()), |s, (a, b)| &s + &(a * b))
}

fn derive_along(x: &PolyField, f: &Poly) -> Poly {
    x.components()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .fold(Poly::zero(x.dim()), |s, (i, c)| {
            &s + &(c * &f.derivative(i))
        })
}

/// Passes iff `dφ = 0` and `[π, π] = (∧³π♯)φ`.
pub fn check_twisted(pi: &PolyField, phi: &PolyField) -> Result<CheckReport> {
    require(pi, Variance::Multivector, Some(2), "bivector")?;
    require(phi, Variance::Form, Some(3), "3-form")?;
    let dphi = de_rham(phi)?;
    let closed =
        CheckReport::from_witness("closed", (!dphi.is_zero()).then(|| format!("dφ = {dphi}")));
    let lhs = sn_bracket(pi, pi)?;
    let rhs = wedge3_sharp(pi, phi)?;
    let diff = lhs.try_sub(&rhs)?;
    let ident = CheckReport::from_witness(
        "twisted_identity",
        (!diff.is_zero()).then(|| format!("[π, π] = {lhs}, (∧³π♯)φ = {rhs}")),
    );
    Ok(aggregate("twisted_poisson", vec![closed, ident]))
}

/// The quasi-Lie bialgebroid `((T*M)_{π,φ}, δ, φ)` of a twisted Poisson pair.
#[derive(Clone, Debug)]
pub struct TwistedStructures {
    pub algebroid: Algebroid,
    pub delta: SectionDerivation,
    pub phi: PolyField,
    pub pi: PolyField,
}

impl TwistedStructures {
    /// `[ξ, η] = L_{π♯ξ}η − L_{π♯η}ξ − dπ(ξ,η) + φ(π♯ξ, π♯η, ·)`.
    pub fn bracket(&self, xi: &PolyField, eta: &PolyField) -> Result<PolyField> {
        self.algebroid.bracket(xi, eta)
    }

    /// The anchor `π♯`.
    pub fn anchor(&self, xi: &PolyField) -> Result<PolyField> {
        sharp(&self.pi, xi)
    }

    /// `δf = df`, `δη = dη − ι_{π♯η}φ`, extended as a derivation.
    pub fn delta(&self, p: &PolyField) -> Result<PolyField> {
        self.delta.apply(p)
    }
}

/// Builds the bracket, anchor and 2-differential; `check_twisted` is not enforced.
pub fn twisted_cotangent_structures(pi: &PolyField, phi: &PolyField) -> Result<TwistedStructures> {
    require(pi, Variance::Multivector, Some(2), "bivector")?;
    require(phi, Variance::Form, Some(3), "3-form")?;
    Ok(TwistedStructures {
        algebroid: Algebroid::twisted_cotangent(pi, Some(phi))?,
        delta: SectionDerivation::twisted(pi, phi)?,
        phi: phi.clone(),
        pi: pi.clone(),
    })
}

/// Checks that `ρ` is a Lie algebra action and that `ρ(δX) = [π, ρX]` on every basis element.
///
/// Sub-reports: `action` and `diagram`; the diagram is skipped when `ρ` is not an action.
pub fn poisson_action_check(
    lie: &LieAlgebra,
    rho: &[PolyField],
    delta: &Cobracket,
    pi: &PolyField,
) -> Result<CheckReport> {
    let n = lie.dim();
    if rho.len() != n || delta.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: rho.len(),
        });
    }
    for x in rho {
        require(x, Variance::Multivector, Some(1), "action field")?;
        if x.chart() != pi.chart() {
            return Err(Error::ChartMismatch("action field on another chart".into()));
        }
    }
    let mut action = None;
    'outer: for i in 0..n {
        for j in i + 1..n {
            let br = Multivector::from_terms(
                n,
                1,
                lie.bracket_basis(i, j)
                    .iter()
                    .map(|(m, c)| (vec![*m], c.clone())),
            )?;
            let lhs = extend(rho, &br, pi)?;
            let rhs = sn_bracket(&rho[i], &rho[j])?;
            let d = lhs.try_sub(&rhs)?;
            if !d.is_zero() {
                let names = lie.names();
                action = Some(format!(
                    "ρ[{a}, {b}] − [ρ{a}, ρ{b}] = {d}",
                    a = names[i],
                    b = names[j]
                ));
                break 'outer;
            }
        }
    }
    let action = CheckReport::from_witness("action", action);
    let diagram = if !action.passed() {
        CheckReport::skipped("diagram", "ρ is not a Lie algebra action")
    } else {
        let mut w = None;
        for i in 0..n {
            let lhs = extend(rho, delta.image(i), pi)?;
            let rhs = sn_bracket(pi, &rho[i])?;
            let d = lhs.try_sub(&rhs)?;
            if !d.is_zero() {
                w = Some(format!(
                    "X = {}: ρ(δX) = {lhs}, [π, ρX] = {rhs}",
                    lie.names()[i]
                ));
                break;
            }
        }
        CheckReport::from_witness("diagram", w)
    };
    Ok(aggregate("poisson_action", vec![action, diagram]))
}

/// `ρ(X_1 ∧ … ∧ X_p) = ρX_1 ∧ … ∧ ρX_p`, extended linearly.
fn extend(rho: &[PolyField], m: &Multivector, pi: &PolyField) -> Result<PolyField> {
    let chart = pi.chart();
    let mut out = PolyField::zero(chart, Variance::Multivector, m.grade());
    for (idx, c) in m.terms() {
        let mut t = PolyField::function(
            chart,
            Variance::Multivector,
            Poly::constant(chart.len(), c.clone()),
        );
        for &i in idx {
            t = t.wedge(&rho[i])?;
        }
        out = out.try_add(&t)?;
    }
    Ok(out)
}
