//! (1,1)-tensors, Nijenhuis torsion, and Poisson (quasi-)Nijenhuis structures.
//!
//! `N` acts on vector fields by `(NX)^i = Σ_j N[i][j] X^j`; `N*` acts on 1-forms by the transpose.

use crate::error::{Error, Result};
use crate::kernel::{Poly, Vars};
use crate::polyfield::{
    check_quasi_algebroid, de_rham, is_poisson, koszul_bracket, sharp, sn_bracket, wedge3_sharp,
    Algebroid, PolyField, SectionDerivation, Variance,
};
use crate::report::{aggregate, CheckReport};

#[derive(Clone, Debug, PartialEq)]
pub struct TensorN {
    chart: Vars,
    matrix: Vec<Vec<Poly>>,
}

impl TensorN {
    pub fn new(chart: &Vars, matrix: Vec<Vec<Poly>>) -> Result<Self> {
        let n = chart.len();
        if matrix.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: matrix.len(),
            });
        }
        for row in &matrix {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            if let Some(p) = row.iter().find(|p| p.nvars() != n) {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: p.nvars(),
                });
            }
        }
        Ok(TensorN {
            chart: chart.clone(),
            matrix,
        })
    }

    /// `f · Id`.
    pub fn scalar(chart: &Vars, f: Poly) -> Result<Self> {
        let n = chart.len();
        TensorN::diagonal(chart, vec![f; n])
    }

    pub fn diagonal(chart: &Vars, entries: Vec<Poly>) -> Result<Self> {
        let n = chart.len();
        if entries.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: entries.len(),
            });
        }
        let mut m = vec![vec![Poly::zero(n); n]; n];
        for (i, e) in entries.into_iter().enumerate() {
            m[i][i] = e;
        }
        TensorN::new(chart, m)
    }

    pub fn zero(chart: &Vars) -> Self {
        let n = chart.len();
        TensorN {
            chart: chart.clone(),
            matrix: vec![vec![Poly::zero(n); n]; n],
        }
    }

    /// `N = π♯ ∘ B♭` with `B♭X = ι_X B`.
    pub fn from_two_form(pi: &PolyField, b: &PolyField) -> Result<Self> {
        let chart = pi.chart().clone();
        let n = chart.len();
        let mut m = vec![vec![Poly::zero(n); n]; n];
        for j in 0..n {
            let flat = crate::polyfield::interior(&PolyField::coordinate_field(&chart, j), b)?;
            let col = sharp(pi, &flat)?.components();
            for i in 0..n {
                m[i][j] = col[i].clone();
            }
        }
        TensorN::new(&chart, m)
    }

    pub fn chart(&self) -> &Vars {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.len()
    }

    pub fn matrix(&self) -> &[Vec<Poly>] {
        &self.matrix
    }

    /// `NX`.
    pub fn apply(&self, x: &PolyField) -> Result<PolyField> {
        check_field(self, x, Variance::Multivector)?;
        let xs = x.components();
        let comps = (0..self.dim())
            .map(|i| dot(&self.matrix[i], &xs, self.dim()))
            .collect();
        PolyField::vector_field(&self.chart, comps)
    }

    /// `N*α`, `(N*α)_j = Σ_i α_i N[i][j]`.
    pub fn apply_dual(&self, alpha: &PolyField) -> Result<PolyField> {
        check_field(self, alpha, Variance::Form)?;
        let a = alpha.components();
        let n = self.dim();
        let comps = (0..n)
            .map(|j| {
                let col: Vec<Poly> = (0..n).map(|i| self.matrix[i][j].clone()).collect();
                dot(&col, &a, n)
            })
            .collect();
        PolyField::one_form(&self.chart, comps)
    }

    /// `[NX,NY] − N([NX,Y] + [X,NY] − N[X,Y])`.
    pub fn torsion_on(&self, x: &PolyField, y: &PolyField) -> Result<PolyField> {
        let (nx, ny) = (self.apply(x)?, self.apply(y)?);
        let inner = sn_bracket(&nx, y)?
            .try_add(&sn_bracket(x, &ny)?)?
            .try_sub(&self.apply(&sn_bracket(x, y)?)?)?;
        sn_bracket(&nx, &ny)?.try_sub(&self.apply(&inner)?)
    }

    /// `T(∂_a, ∂_b)` for all coordinate pairs.
    pub fn torsion(&self) -> Result<Torsion> {
        let n = self.dim();
        let mut values = vec![vec![PolyField::zero(&self.chart, Variance::Multivector, 1); n]; n];
        for a in 0..n {
            for b in a + 1..n {
                let t = self.torsion_on(
                    &PolyField::coordinate_field(&self.chart, a),
                    &PolyField::coordinate_field(&self.chart, b),
                )?;
                values[b][a] = t.neg();
                values[a][b] = t;
            }
        }
        Ok(Torsion { values })
    }
}

fn check_field(n: &TensorN, x: &PolyField, variance: Variance) -> Result<()> {
    if x.chart() != &n.chart {
        return Err(Error::ChartMismatch(
            "field and tensor on different charts".into(),
        ));
    }
    if x.grade() != 1 || x.variance() != variance {
        return Err(Error::InvalidInput(
            "expected a vector field or 1-form matching the operation".into(),
        ));
    }
    Ok(())
}

fn dot(a: &[Poly], b: &[Poly], n: usize) -> Poly {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(Poly::zero(n), |s, (x, y)| &s + &(x * y))
}

/// Values `T(∂_a, ∂_b)` of the Nijenhuis torsion.
#[derive(Clone, Debug, PartialEq)]
pub struct Torsion {
    pub values: Vec<Vec<PolyField>>,
}

impl Torsion {
    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(PolyField::is_zero)
    }

    pub fn at(&self, a: usize, b: usize) -> &PolyField {
        &self.values[a][b]
    }

    fn first_nonzero(&self, chart: &Vars) -> Option<String> {
        let n = self.values.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find_map(|(a, b)| {
                let t = &self.values[a][b];
                (!t.is_zero()).then(|| format!("T(∂{}, ∂{}) = {t}", chart.names[a], chart.names[b]))
            })
    }
}

/// `π_N` with `π_N♯ = π♯ ∘ N*`; errors when the result is not antisymmetric.
pub fn pi_n(pi: &PolyField, n: &TensorN) -> Result<PolyField> {
    let table = pi_n_table(pi, n)?;
    if let Some(w) = antisymmetry_witness(&table, pi.chart()) {
        return Err(Error::InvalidInput(format!(
            "π_N is not antisymmetric: {w}"
        )));
    }
    let d = n.dim();
    let mut entries = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            if !table[i][j].is_zero() {
                entries.push((i, j, table[i][j].clone()));
            }
        }
    }
    PolyField::bivector_from_brackets(pi.chart(), &entries)
}

/// `π_N(dx_i, dx_j) = ⟨π♯N*dx_i, dx_j⟩`.
fn pi_n_table(pi: &PolyField, n: &TensorN) -> Result<Vec<Vec<Poly>>> {
    let d = n.dim();
    (0..d)
        .map(|i| {
            Ok(sharp(
                pi,
                &n.apply_dual(&PolyField::coordinate_form(pi.chart(), i))?,
            )?
            .components())
        })
        .collect()
}

fn antisymmetry_witness(table: &[Vec<Poly>], chart: &Vars) -> Option<String> {
    let d = table.len();
    for i in 0..d {
        for j in i..d {
            if table[i][j] != -&table[j][i] {
                return Some(format!(
                    "entries ({}, {}) = {} and ({}, {}) = {}",
                    chart.names[i],
                    chart.names[j],
                    table[i][j].display(&chart.names),
                    chart.names[j],
                    chart.names[i],
                    table[j][i].display(&chart.names)
                ));
            }
        }
    }
    None
}

/// `N∘π♯ = π♯∘N*` and `[α,β]_{π_N} = [N*α,β]_π + [α,N*β]_π − N*[α,β]_π` on coordinate 1-forms.
pub fn check_compatible(pi: &PolyField, n: &TensorN) -> Result<CheckReport> {
    let chart = pi.chart();
    let d = n.dim();
    let forms: Vec<PolyField> = (0..d)
        .map(|i| PolyField::coordinate_form(chart, i))
        .collect();
    let mut commute = None;
    for (i, f) in forms.iter().enumerate() {
        let lhs = n.apply(&sharp(pi, f)?)?;
        let rhs = sharp(pi, &n.apply_dual(f)?)?;
        if lhs != rhs {
            commute = Some(format!(
                "on d{}: N π♯ = {lhs}, π♯ N* = {rhs}",
                chart.names[i]
            ));
            break;
        }
    }
    let commute = CheckReport::from_witness("commutes", commute);
    let bracket = if !commute.passed() {
        CheckReport::skipped("bracket", "π_N is not a bivector")
    } else {
        let pn = pi_n(pi, n)?;
        let mut w = None;
        'outer: for i in 0..d {
            for j in i + 1..d {
                let (a, b) = (&forms[i], &forms[j]);
                let lhs = koszul_bracket(&pn, a, b)?;
                let rhs = koszul_bracket(pi, &n.apply_dual(a)?, b)?
                    .try_add(&koszul_bracket(pi, a, &n.apply_dual(b)?)?)?
                    .try_sub(&n.apply_dual(&koszul_bracket(pi, a, b)?)?)?;
                let diff = lhs.try_sub(&rhs)?;
                if !diff.is_zero() {
                    w = Some(format!(
                        "(d{}, d{}): residual {diff}",
                        chart.names[i], chart.names[j]
                    ));
                    break 'outer;
                }
            }
        }
        CheckReport::from_witness("bracket", w)
    };
    Ok(aggregate("compatible", vec![commute, bracket]))
}

/// The degree-0 derivation with `(i_Nα)(X_1..X_p) = Σ α(.., NX_i, ..)`.
pub fn i_n(n: &TensorN, alpha: &PolyField) -> Result<PolyField> {
    if alpha.variance() != Variance::Form && alpha.grade() > 0 {
        return Err(Error::InvalidInput("i_N acts on forms".into()));
    }
    let chart = &n.chart;
    let mut out = PolyField::zero(chart, Variance::Form, alpha.grade());
    let images: Vec<PolyField> = (0..n.dim())
        .map(|i| n.apply_dual(&PolyField::coordinate_form(chart, i)))
        .collect::<Result<_>>()?;
    for (idx, c) in alpha.body().terms() {
        for k in 0..idx.len() {
            let mut t = PolyField::function(chart, Variance::Form, c.clone());
            for (m, &i) in idx.iter().enumerate() {
                let factor = if m == k {
                    images[i].clone()
                } else {
                    PolyField::coordinate_form(chart, i)
                };
                t = t.wedge(&factor)?;
            }
            out = out.try_add(&t)?;
        }
    }
    Ok(out)
}

/// `d_N = i_N ∘ d − d ∘ i_N`.
pub fn d_n(n: &TensorN, alpha: &PolyField) -> Result<PolyField> {
    let a = i_n(n, &de_rham(alpha)?)?;
    if alpha.grade() == 0 {
        return Ok(a);
    }
    a.try_sub(&de_rham(&i_n(n, alpha)?)?)
}

/// `d_N` as a derivation of forms: `d_N x_j = N*dx_j`, `d_N(dx_i) = −d(N*dx_i)`.
pub fn d_n_derivation(n: &TensorN) -> Result<SectionDerivation> {
    let chart = n.chart.clone();
    let d = n.dim();
    let mut on_coords = Vec::with_capacity(d);
    let mut on_frame = Vec::with_capacity(d);
    for i in 0..d {
        let img = n.apply_dual(&PolyField::coordinate_form(&chart, i))?;
        on_frame.push(de_rham(&img)?.neg());
        on_coords.push(img);
    }
    SectionDerivation::new(&chart, Variance::Form, 2, on_coords, on_frame)
}

/// Searches monomials of degree ≤ `degree` for `f` with `d_N² f ≠ 0`.
pub fn d_n_square_witness(n: &TensorN, degree: i32) -> Result<Option<(Poly, PolyField)>> {
    let d = n.dim();
    for e in crate::polyfield::monomials_up_to(d, degree) {
        let f = Poly::monomial(
            d,
            crate::kernel::Scalar::one(),
            crate::kernel::poly::Exponents(e),
        );
        let once = d_n(n, &PolyField::function(&n.chart, Variance::Form, f.clone()))?;
        let twice = d_n(n, &once)?;
        if !twice.is_zero() {
            return Ok(Some((f, twice)));
        }
    }
    Ok(None)
}

/// Poisson, torsion-free and compatible; on pass also `[π,π_N] = 0` and `[π_N,π_N] = 0`.
pub fn check_pn(pi: &PolyField, n: &TensorN) -> Result<CheckReport> {
    let poisson = is_poisson(pi)?;
    let t = n.torsion()?;
    let torsion = CheckReport::from_witness("torsion_free", t.first_nonzero(pi.chart()));
    let compatible = check_compatible(pi, n)?;
    let mut subs = vec![poisson, torsion, compatible];
    if subs.iter().all(CheckReport::passed) {
        let pn = pi_n(pi, n)?;
        let a = sn_bracket(pi, &pn)?;
        let b = sn_bracket(&pn, &pn)?;
        let w = if !a.is_zero() {
            Some(format!("[π, π_N] = {a}"))
        } else if !b.is_zero() {
            Some(format!("[π_N, π_N] = {b}"))
        } else {
            None
        };
        subs.push(CheckReport::from_witness("bi_hamiltonian", w));
    }
    Ok(aggregate("poisson_nijenhuis", subs))
}

/// Poisson, compatible, `dφ = 0`, `d(i_Nφ) = 0` and `T(X,Y) = π♯(ι_{X∧Y}φ)` on coordinate pairs.
pub fn check_pqn(pi: &PolyField, n: &TensorN, phi: &PolyField) -> Result<CheckReport> {
    let chart = pi.chart();
    let poisson = is_poisson(pi)?;
    let compatible = check_compatible(pi, n)?;
    let dphi = de_rham(phi)?;
    let closed = CheckReport::from_witness(
        "phi_closed",
        (!dphi.is_zero()).then(|| format!("dφ = {dphi}")),
    );
    let dn = de_rham(&i_n(n, phi)?)?;
    let n_closed = CheckReport::from_witness(
        "i_n_phi_closed",
        (!dn.is_zero()).then(|| format!("d(i_N φ) = {dn}")),
    );
    let t = n.torsion()?;
    let d = n.dim();
    let mut w = None;
    'outer: for a in 0..d {
        for b in a + 1..d {
            let (xa, xb) = (
                PolyField::coordinate_field(chart, a),
                PolyField::coordinate_field(chart, b),
            );
            let contracted =
                crate::polyfield::interior(&xb, &crate::polyfield::interior(&xa, phi)?)?;
            let rhs = sharp(pi, &contracted)?;
            if *t.at(a, b) != rhs {
                w = Some(format!(
                    "(∂{}, ∂{}): T = {}, π♯(ι φ) = {rhs}",
                    chart.names[a],
                    chart.names[b],
                    t.at(a, b)
                ));
                break 'outer;
            }
        }
    }
    let torsion = CheckReport::from_witness("torsion_identity", w);
    Ok(aggregate(
        "poisson_quasi_nijenhuis",
        vec![poisson, compatible, closed, n_closed, torsion],
    ))
}

/// `[π, π_N] = 0` and `[π_N, π_N] = 2π♯(φ)`.
///
/// `π♯(φ)` is read as `(∧³π♯)φ`; when that fails the opposite sharp convention `ξ ↦ π(·, ξ)`,
/// which negates `∧³π♯`, is tried and the reading that holds is noted.
pub fn check_pqn_brackets(pi: &PolyField, n: &TensorN, phi: &PolyField) -> Result<CheckReport> {
    let pn = match pi_n(pi, n) {
        Ok(p) => p,
        Err(e) => return Ok(CheckReport::error("nondegenerate_pqn", e.to_string())),
    };
    let a = sn_bracket(pi, &pn)?;
    let first =
        CheckReport::from_witness("pi_pi_n", (!a.is_zero()).then(|| format!("[π, π_N] = {a}")));
    let lhs = sn_bracket(&pn, &pn)?;
    let w3 = wedge3_sharp(pi, phi)?;
    let readings = [(2, "2(∧³π♯)φ"), (-2, "2(∧³π♯)φ with π♯ξ = π(·, ξ)")];
    let hit = readings
        .iter()
        .find(|(k, _)| same_field(&lhs, &w3.scale(&crate::kernel::Scalar::from_int(*k))));
    let second = match hit {
        Some((_, label)) => {
            CheckReport::pass("pi_n_pi_n").with_note(format!("holds as [π_N, π_N] = {label}"))
        }
        None => CheckReport::fail(
            "pi_n_pi_n",
            format!("[π_N, π_N] = {lhs}, (∧³π♯)φ = {w3}; no sign reading holds"),
        ),
    };
    Ok(aggregate("nondegenerate_pqn", vec![first, second]))
}

fn same_field(a: &PolyField, b: &PolyField) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}

/// Solves `T(X,Y) = π♯(ι_{X∧Y}φ)` for `φ` when `π` is constant and nondegenerate.
pub fn phi_from_torsion(pi: &PolyField, n: &TensorN) -> Result<PolyField> {
    let chart = pi.chart();
    let d = n.dim();
    let mut cols = Vec::with_capacity(d);
    for i in 0..d {
        let col = sharp(pi, &PolyField::coordinate_form(chart, i))?.components();
        let col: Option<Vec<_>> = col
            .iter()
            .map(|c| {
                if c.is_zero() {
                    Some(crate::kernel::Scalar::zero())
                } else {
                    c.constant_value()
                }
            })
            .collect();
        cols.push(
            col.ok_or_else(|| Error::InvalidInput("π must have constant coefficients".into()))?,
        );
    }
    let inv = crate::kernel::Matrix::from_columns(&cols)
        .inverse()
        .ok_or_else(|| Error::Singular("π is degenerate".into()))?;
    let t = n.torsion()?;
    let flat = |x: &PolyField| -> Vec<Poly> {
        let v = x.components();
        (0..d)
            .map(|j| {
                (0..d).fold(Poly::zero(d), |s, k| {
                    let c = &inv.row(j)[k];
                    if c.is_zero() {
                        s
                    } else {
                        &s + &v[k].scale(c)
                    }
                })
            })
            .collect()
    };
    let mut terms = Vec::new();
    for a in 0..d {
        for b in a + 1..d {
            let xi = flat(t.at(a, b));
            for (c, v) in xi.into_iter().enumerate().skip(b + 1) {
                terms.push((vec![a, b, c], v));
            }
        }
    }
    let phi = PolyField::from_terms(chart, Variance::Form, 3, terms)?;
    for a in 0..d {
        for b in a + 1..d {
            let (xa, xb) = (
                PolyField::coordinate_field(chart, a),
                PolyField::coordinate_field(chart, b),
            );
            let contracted =
                crate::polyfield::interior(&xb, &crate::polyfield::interior(&xa, &phi)?)?;
            if sharp(pi, &contracted)? != *t.at(a, b) {
                return Err(Error::InvalidInput(format!(
                    "torsion is not of the form π♯(ι φ) at (∂{}, ∂{})",
                    chart.names[a], chart.names[b]
                )));
            }
        }
    }
    Ok(phi)
}

/// A Poisson quasi-Nijenhuis structure with nonzero torsion on `R⁴`.
///
/// `π = ∂x1∧∂x2 + ∂x3∧∂x4`, `N = π♯ ∘ B♭` for the closed form `B = d(x1 x3 dx2)`, and `φ` solved from the torsion.
pub fn constructed_pqn() -> Result<(PolyField, TensorN, PolyField)> {
    let chart = Vars::new(&["x1", "x2", "x3", "x4"]);
    let one = Poly::one(4);
    let pi = PolyField::bivector_from_brackets(&chart, &[(0, 1, one.clone()), (2, 3, one)])?;
    let x1x3 = &Poly::var(4, 0) * &Poly::var(4, 2);
    let theta = PolyField::one_form(
        &chart,
        vec![Poly::zero(4), x1x3, Poly::zero(4), Poly::zero(4)],
    )?;
    let b = de_rham(&theta)?;
    let n = TensorN::from_two_form(&pi, &b)?;
    let phi = phi_from_torsion(&pi, &n)?;
    Ok((pi, n, phi))
}

/// `[δ, d] = δ∘d + d∘δ` vanishes on coordinates, the sample functions and coordinate 1-forms.
pub fn check_lemma_pnij(delta: &SectionDerivation, samples: &[Poly]) -> Result<CheckReport> {
    if delta.variance() != Variance::Form || delta.k() != 2 {
        return Err(Error::InvalidInput(
            "expected a 2-differential on forms".into(),
        ));
    }
    let chart = delta.chart().clone();
    let d = chart.len();
    let mut inputs: Vec<PolyField> = (0..d)
        .map(|j| PolyField::function(&chart, Variance::Form, Poly::var(d, j)))
        .collect();
    inputs.extend(
        samples
            .iter()
            .map(|f| PolyField::function(&chart, Variance::Form, f.clone())),
    );
    inputs.extend((0..d).map(|i| PolyField::coordinate_form(&chart, i)));
    for x in &inputs {
        let a = delta.apply(&de_rham(x)?)?;
        let b = de_rham(&delta.apply(x)?)?;
        let s = a.try_add(&b)?;
        if !s.is_zero() {
            return Ok(CheckReport::fail(
                "commutes_with_d",
                format!("on {x}: [δ, d] = {s}"),
            ));
        }
    }
    Ok(CheckReport::pass("commutes_with_d"))
}

/// The quasi-Lie bialgebroid axioms for `((T*M)_π, d_N, φ)`.
pub fn check_qn_coherence(
    pi: &PolyField,
    n: &TensorN,
    phi: &PolyField,
    samples: &[Poly],
) -> Result<CheckReport> {
    let alg = Algebroid::cotangent(pi)?;
    let delta = d_n_derivation(n)?;
    check_quasi_algebroid(&alg, &delta, phi, samples)
}

#[cfg(test)]
mod tests;
