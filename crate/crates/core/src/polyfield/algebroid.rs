//! Lie algebroids on a trivial bundle with a global frame, and derivations of their sections.

use super::{interior, koszul_bracket, sharp, sn_bracket, PolyField, Variance};
use crate::error::{Error, Result};
use crate::exterior::Multivector;
use crate::kernel::{Coeff, Poly, Vars};
use crate::report::{aggregate, CheckReport};

/// A Lie algebroid with frame `e_1, …, e_r` given by anchors `ρ(e_a)` and brackets `[e_a, e_b]`.
///
/// Sections of `ΛA` are stored as [`PolyField`]s of the algebroid's variance, index `a` standing
/// for `e_a`. The bracket is the Gerstenhaber extension.
#[derive(Clone, Debug)]
pub struct Algebroid {
    chart: Vars,
    variance: Variance,
    anchors: Vec<PolyField>,
    brackets: Vec<Vec<Multivector<Poly>>>,
}

impl Algebroid {
    /// `brackets[a][b] = [e_a, e_b]`, only entries with `a < b` are read.
    pub fn new(
        chart: &Vars,
        variance: Variance,
        anchors: Vec<PolyField>,
        brackets: Vec<Vec<Multivector<Poly>>>,
    ) -> Result<Self> {
        let r = anchors.len();
        if r != chart.len() {
            return Err(Error::DimensionMismatch {
                expected: chart.len(),
                found: r,
            });
        }
        if brackets.len() != r || brackets.iter().any(|row| row.len() != r) {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: brackets.len(),
            });
        }
        for x in &anchors {
            if x.chart() != chart || x.grade() != 1 || x.variance() != Variance::Multivector {
                return Err(Error::InvalidInput(
                    "anchors must be vector fields on the chart".into(),
                ));
            }
        }
        let mut full = vec![vec![Multivector::zero(r, 1); r]; r];
        for a in 0..r {
            for b in a + 1..r {
                let v = &brackets[a][b];
                if v.dim() != r || v.grade() != 1 {
                    return Err(Error::InvalidInput(format!(
                        "bracket [e{a}, e{b}] must be a section"
                    )));
                }
                full[a][b] = v.clone();
                full[b][a] = v.neg();
            }
        }
        Ok(Algebroid {
            chart: chart.clone(),
            variance,
            anchors,
            brackets: full,
        })
    }

    /// The tangent bundle with frame `∂_i`.
    pub fn tangent(chart: &Vars) -> Self {
        let n = chart.len();
        let anchors = (0..n)
            .map(|i| PolyField::coordinate_field(chart, i))
            .collect();
        Algebroid {
            chart: chart.clone(),
            variance: Variance::Multivector,
            anchors,
            brackets: zero_table(n),
        }
    }

    /// `(T*M)_π` with frame `dx_i`, anchor `π♯` and the Koszul bracket.
    pub fn cotangent(pi: &PolyField) -> Result<Self> {
        Algebroid::twisted_cotangent(pi, None)
    }

    /// `(T*M)_{π,φ}`: the Koszul bracket plus `φ(π♯ξ, π♯η, ·)`.
    pub fn twisted_cotangent(pi: &PolyField, phi: Option<&PolyField>) -> Result<Self> {
        let chart = pi.chart().clone();
        let n = chart.len();
        let forms: Vec<PolyField> = (0..n)
            .map(|i| PolyField::coordinate_form(&chart, i))
            .collect();
        let anchors: Vec<PolyField> = forms.iter().map(|f| sharp(pi, f)).collect::<Result<_>>()?;
        let mut brackets = zero_table(n);
        for a in 0..n {
            for b in a + 1..n {
                let mut v = koszul_bracket(pi, &forms[a], &forms[b])?;
                if let Some(phi) = phi {
                    let t = interior(&anchors[b], &interior(&anchors[a], phi)?)?;
                    v = v.try_add(&t)?;
                }
                brackets[a][b] = v.body().clone();
                brackets[b][a] = v.body().neg();
            }
        }
        Ok(Algebroid {
            chart,
            variance: Variance::Form,
            anchors,
            brackets,
        })
    }

    pub fn chart(&self) -> &Vars {
        &self.chart
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn rank(&self) -> usize {
        self.anchors.len()
    }

    pub fn anchor(&self, a: usize) -> &PolyField {
        &self.anchors[a]
    }

    /// `[e_a, e_b]`.
    pub fn frame_bracket(&self, a: usize, b: usize) -> &Multivector<Poly> {
        &self.brackets[a][b]
    }

    /// `e_a` as a section.
    pub fn frame(&self, a: usize) -> PolyField {
        let mut body = Multivector::zero(self.rank(), 1);
        body.add_term(vec![a], Poly::one(self.chart.len()));
        self.section(body)
    }

    pub fn function(&self, f: Poly) -> PolyField {
        PolyField::function(&self.chart, self.variance, f)
    }

    fn section(&self, body: Multivector<Poly>) -> PolyField {
        PolyField {
            chart: self.chart.clone(),
            variance: self.variance,
            body,
        }
    }

    /// `ρ(e_a)(f)`.
    pub fn anchor_apply(&self, a: usize, f: &Poly) -> Poly {
        let mut s = Poly::zero(self.chart.len());
        for (i, c) in self.anchors[a].components().iter().enumerate() {
            if !c.is_zero() {
                let d = f.derivative(i);
                if !d.is_zero() {
                    s = &s + &(c * &d);
                }
            }
        }
        s
    }

    fn check_section(&self, p: &PolyField) -> Result<()> {
        if p.chart() != &self.chart {
            return Err(Error::ChartMismatch(
                "section lives on another chart".into(),
            ));
        }
        if p.grade() > 0 && (p.variance() != self.variance || p.dim() != self.rank()) {
            return Err(Error::InvalidInput(
                "not a section of this algebroid".into(),
            ));
        }
        Ok(())
    }

    /// `[e_I, g] = Σ_k (−1)^{p+k+1} ρ(e_{I_k})(g) e_{I∖k}`.
    fn frame_function(&self, idx: &[usize], g: &Poly) -> Multivector<Poly> {
        let p = idx.len();
        let mut out = Multivector::zero(self.rank(), p.saturating_sub(1));
        for (k, &a) in idx.iter().enumerate() {
            let v = self.anchor_apply(a, g);
            if v.is_zero() {
                continue;
            }
            let mut rest = idx.to_vec();
            rest.remove(k);
            out.add_term(rest, if (p + k + 1) % 2 == 1 { v.neg() } else { v });
        }
        out
    }

    /// `[e_I, e_J] = Σ (−1)^{i+j} [e_{I_i}, e_{J_j}] ∧ e_{I∖i} ∧ e_{J∖j}`.
    fn frame_frame(&self, i_idx: &[usize], j_idx: &[usize]) -> Result<Multivector<Poly>> {
        let r = self.rank();
        let one = Poly::one(self.chart.len());
        let grade = (i_idx.len() + j_idx.len()).saturating_sub(1);
        let mut out = Multivector::zero(r, grade);
        if i_idx.is_empty() || j_idx.is_empty() || grade > r {
            return Ok(out);
        }
        for (i, &a) in i_idx.iter().enumerate() {
            let mut ri = i_idx.to_vec();
            ri.remove(i);
            for (j, &b) in j_idx.iter().enumerate() {
                let br = &self.brackets[a][b];
                if br.is_zero() {
                    continue;
                }
                let mut rj = j_idx.to_vec();
                rj.remove(j);
                let mut rest = ri.clone();
                rest.extend_from_slice(&rj);
                let tail = Multivector::from_terms(r, rest.len(), [(rest, one.clone())])?;
                let t = br.wedge(&tail)?;
                out = if (i + j) % 2 == 1 {
                    out.try_sub(&t)?
                } else {
                    out.try_add(&t)?
                };
            }
        }
        Ok(out)
    }

    /// Gerstenhaber bracket of sections of `ΛA`.
    ///
    /// `[f e_I, g e_J] = fg[e_I,e_J] + f[e_I,g]∧e_J − (−1)^{(p−1)(q−1)} g[e_J,f]∧e_I`.
    pub fn bracket(&self, p: &PolyField, q: &PolyField) -> Result<PolyField> {
        self.check_section(p)?;
        self.check_section(q)?;
        let r = self.rank();
        let (pg, qg) = (p.grade(), q.grade());
        let grade = (pg + qg).saturating_sub(1);
        let mut out = Multivector::zero(r, grade);
        if pg + qg == 0 || grade > r {
            return Ok(self.section(out));
        }
        let one = Poly::one(self.chart.len());
        let sign_odd = ((pg as i64 - 1) * (qg as i64 - 1)).rem_euclid(2) == 1;
        for (i_idx, f) in p.body().terms() {
            let e_i = Multivector::from_terms(r, pg, [(i_idx.clone(), one.clone())])?;
            for (j_idx, g) in q.body().terms() {
                let e_j = Multivector::from_terms(r, qg, [(j_idx.clone(), one.clone())])?;
                let fg = f * g;
                let a = self.frame_frame(i_idx, j_idx)?.mul_coeff(&fg);
                let b = self.frame_function(i_idx, g).wedge(&e_j)?.mul_coeff(f);
                let c = self.frame_function(j_idx, f).wedge(&e_i)?.mul_coeff(g);
                out = out.try_add(&a)?.try_add(&b)?;
                out = if sign_odd {
                    out.try_add(&c)?
                } else {
                    out.try_sub(&c)?
                };
            }
        }
        Ok(self.section(out))
    }

    /// Jacobi on frame triples and the anchor being a bracket morphism.
    pub fn validate(&self) -> Result<CheckReport> {
        let r = self.rank();
        let mut jac = None;
        'outer: for a in 0..r {
            for b in a + 1..r {
                for c in b + 1..r {
                    let (ea, eb, ec) = (self.frame(a), self.frame(b), self.frame(c));
                    let t1 = self.bracket(&self.bracket(&ea, &eb)?, &ec)?;
                    let t2 = self.bracket(&self.bracket(&eb, &ec)?, &ea)?;
                    let t3 = self.bracket(&self.bracket(&ec, &ea)?, &eb)?;
                    let s = t1.try_add(&t2)?.try_add(&t3)?;
                    if !s.is_zero() {
                        jac = Some(format!("cyclic sum on (e{a}, e{b}, e{c}) = {s}"));
                        break 'outer;
                    }
                }
            }
        }
        let mut anchor = None;
        'outer2: for a in 0..r {
            for b in a + 1..r {
                let lhs = self.anchor_of(&self.brackets[a][b])?;
                let rhs = sn_bracket(&self.anchors[a], &self.anchors[b])?;
                let d = lhs.try_sub(&rhs)?;
                if !d.is_zero() {
                    anchor = Some(format!("ρ[e{a}, e{b}] − [ρe{a}, ρe{b}] = {d}"));
                    break 'outer2;
                }
            }
        }
        Ok(aggregate(
            "lie_algebroid",
            vec![
                CheckReport::from_witness("jacobi", jac),
                CheckReport::from_witness("anchor_morphism", anchor),
            ],
        ))
    }

    /// `ρ` applied to a section of `A`.
    pub fn anchor_of(&self, body: &Multivector<Poly>) -> Result<PolyField> {
        let mut out = PolyField::zero(&self.chart, Variance::Multivector, 1);
        for (idx, c) in body.terms() {
            out = out.try_add(&self.anchors[idx[0]].mul_fn(c))?;
        }
        Ok(out)
    }
}

fn zero_table(r: usize) -> Vec<Vec<Multivector<Poly>>> {
    vec![vec![Multivector::zero(r, 1); r]; r]
}

/// A derivation of `ΓΛA` of degree `k − 1`, fixed by its values on coordinate functions and on the frame.
///
/// `δ(f e_I) = δf ∧ e_I + f δ(e_I)` with `δf = Σ_j ∂_j f · δ(x_j)` and
/// `δ(e_{i_1} ∧ … ∧ e_{i_p}) = Σ_m (−1)^{m(k−1)} e_{i_1} ∧ … ∧ δ(e_{i_m}) ∧ … ∧ e_{i_p}`.
#[derive(Clone, Debug)]
pub struct SectionDerivation {
    chart: Vars,
    variance: Variance,
    k: usize,
    on_coords: Vec<Multivector<Poly>>,
    on_frame: Vec<Multivector<Poly>>,
}

impl SectionDerivation {
    pub fn new(
        chart: &Vars,
        variance: Variance,
        k: usize,
        on_coords: Vec<PolyField>,
        on_frame: Vec<PolyField>,
    ) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput(
                "derivation degree k must be at least 1".into(),
            ));
        }
        if on_coords.len() != chart.len() {
            return Err(Error::DimensionMismatch {
                expected: chart.len(),
                found: on_coords.len(),
            });
        }
        for (v, want) in on_coords
            .iter()
            .map(|v| (v, k - 1))
            .chain(on_frame.iter().map(|v| (v, k)))
        {
            if v.grade() != want {
                return Err(Error::GradeMismatch {
                    expected: want,
                    found: v.grade(),
                });
            }
            if v.chart() != chart {
                return Err(Error::ChartMismatch(
                    "derivation datum on another chart".into(),
                ));
            }
        }
        Ok(SectionDerivation {
            chart: chart.clone(),
            variance,
            k,
            on_coords: on_coords.into_iter().map(|v| v.body).collect(),
            on_frame: on_frame.into_iter().map(|v| v.body).collect(),
        })
    }

    /// The de Rham differential on forms.
    pub fn de_rham(chart: &Vars) -> Self {
        let n = chart.len();
        SectionDerivation {
            chart: chart.clone(),
            variance: Variance::Form,
            k: 2,
            on_coords: (0..n)
                .map(|j| PolyField::coordinate_form(chart, j).body)
                .collect(),
            on_frame: vec![Multivector::zero(n, 2); n],
        }
    }

    /// `[Λ, ·]` on multivector fields.
    pub fn coboundary(lambda: &PolyField) -> Result<Self> {
        let chart = lambda.chart().clone();
        let n = chart.len();
        let k = lambda.grade();
        if k == 0 {
            return Err(Error::InvalidInput(
                "coboundary of a function has negative degree".into(),
            ));
        }
        let on_coords = (0..n)
            .map(|j| {
                let x = PolyField::function(&chart, Variance::Multivector, Poly::var(n, j));
                sn_bracket(lambda, &x)
            })
            .collect::<Result<Vec<_>>>()?;
        let on_frame = (0..n)
            .map(|i| sn_bracket(lambda, &PolyField::coordinate_field(&chart, i)))
            .collect::<Result<Vec<_>>>()?;
        SectionDerivation::new(&chart, Variance::Multivector, k, on_coords, on_frame)
    }

    /// `δ = d + D` with `D(dx_i) = −ι_{π♯dx_i} φ`.
    pub fn twisted(pi: &PolyField, phi: &PolyField) -> Result<Self> {
        let chart = pi.chart().clone();
        let n = chart.len();
        let mut on_frame = Vec::with_capacity(n);
        for i in 0..n {
            let x = sharp(pi, &PolyField::coordinate_form(&chart, i))?;
            on_frame.push(interior(&x, phi)?.neg());
        }
        let on_coords = (0..n)
            .map(|j| PolyField::coordinate_form(&chart, j))
            .collect();
        SectionDerivation::new(&chart, Variance::Form, 2, on_coords, on_frame)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn chart(&self) -> &Vars {
        &self.chart
    }

    /// `δ(x_j)`.
    pub fn on_coordinate(&self, j: usize) -> PolyField {
        PolyField {
            chart: self.chart.clone(),
            variance: self.variance,
            body: self.on_coords[j].clone(),
        }
    }

    /// `δ(e_a)`.
    pub fn on_frame(&self, a: usize) -> PolyField {
        PolyField {
            chart: self.chart.clone(),
            variance: self.variance,
            body: self.on_frame[a].clone(),
        }
    }

    fn on_function(&self, f: &Poly) -> Multivector<Poly> {
        let rank = self.on_frame.len();
        let mut out = Multivector::zero(rank, self.k - 1);
        for (j, img) in self.on_coords.iter().enumerate() {
            let d = f.derivative(j);
            if !d.is_zero() && !img.is_zero() {
                out = out.try_add(&img.mul_coeff(&d)).expect("same space");
            }
        }
        out
    }

    fn on_monomial(&self, idx: &[usize]) -> Result<Multivector<Poly>> {
        let rank = self.on_frame.len();
        let one = Poly::one(self.chart.len());
        let mut out = Multivector::zero(rank, idx.len() + self.k - 1);
        for (m, &a) in idx.iter().enumerate() {
            let img = &self.on_frame[a];
            if img.is_zero() {
                continue;
            }
            let left = Multivector::from_terms(rank, m, [(idx[..m].to_vec(), one.clone())])?;
            let right = Multivector::from_terms(
                rank,
                idx.len() - m - 1,
                [(idx[m + 1..].to_vec(), one.clone())],
            )?;
            let t = left.wedge(img)?.wedge(&right)?;
            out = if (m * (self.k - 1)) % 2 == 1 {
                out.try_sub(&t)?
            } else {
                out.try_add(&t)?
            };
        }
        Ok(out)
    }

    pub fn apply(&self, p: &PolyField) -> Result<PolyField> {
        if p.chart() != &self.chart {
            return Err(Error::ChartMismatch(
                "section lives on another chart".into(),
            ));
        }
        if p.grade() > 0 && p.variance() != self.variance {
            return Err(Error::InvalidInput(
                "derivation applied to the wrong kind of field".into(),
            ));
        }
        let rank = self.on_frame.len();
        let one = Poly::one(self.chart.len());
        let mut out = Multivector::zero(rank, p.grade() + self.k - 1);
        if p.grade() + self.k - 1 > rank {
            return Ok(PolyField {
                chart: self.chart.clone(),
                variance: self.variance,
                body: out,
            });
        }
        for (idx, f) in p.body().terms() {
            let df = self.on_function(f);
            if !df.is_zero() {
                let e = Multivector::from_terms(rank, idx.len(), [(idx.clone(), one.clone())])?;
                out = out.try_add(&df.wedge(&e)?)?;
            }
            let de = self.on_monomial(idx)?;
            if !de.is_zero() {
                out = out.try_add(&de.mul_coeff(f))?;
            }
        }
        Ok(PolyField {
            chart: self.chart.clone(),
            variance: self.variance,
            body: out,
        })
    }
}

/// Checks that `(A, δ, φ)` is a quasi-Lie bialgebroid on frame elements, coordinates and the sample functions.
///
/// Sub-reports: `derivation` (`δ[P,Q] = [δP,Q] + (−1)^{(k−1)(p−1)}[P,δQ]`), `square` (`δ² = [φ,·]`)
/// and `phi_closed` (`δφ = 0`).
pub fn check_quasi_algebroid(
    alg: &Algebroid,
    delta: &SectionDerivation,
    phi: &PolyField,
    samples: &[Poly],
) -> Result<CheckReport> {
    if delta.k != 2 {
        return Err(Error::InvalidInput(
            "a quasi-Lie bialgebroid needs a 2-differential".into(),
        ));
    }
    let n = alg.chart.len();
    let mut gens: Vec<PolyField> = (0..n).map(|j| alg.function(Poly::var(n, j))).collect();
    gens.extend(samples.iter().map(|f| alg.function(f.clone())));
    gens.extend((0..alg.rank()).map(|a| alg.frame(a)));

    let mut der = None;
    'outer: for p in &gens {
        for q in &gens {
            let lhs = delta.apply(&alg.bracket(p, q)?)?;
            let a = alg.bracket(&delta.apply(p)?, q)?;
            let b = alg.bracket(p, &delta.apply(q)?)?;
            let rhs = if p.grade() == 0 {
                a.try_sub(&b)?
            } else {
                a.try_add(&b)?
            };
            let d = lhs.try_sub(&rhs)?;
            if !d.is_zero() {
                der = Some(format!("P = {p}, Q = {q}: residual {d}"));
                break 'outer;
            }
        }
    }

    let mut sq = None;
    for p in &gens {
        let lhs = delta.apply(&delta.apply(p)?)?;
        let rhs = alg.bracket(phi, p)?;
        let d = lhs.try_sub(&rhs)?;
        if !d.is_zero() {
            sq = Some(format!("on {p}: δ² − [φ,·] = {d}"));
            break;
        }
    }

    let dphi = delta.apply(phi)?;
    let closed = (!dphi.is_zero()).then(|| format!("δφ = {dphi}"));

    Ok(aggregate(
        "quasi_lie_bialgebroid",
        vec![
            CheckReport::from_witness("derivation", der),
            CheckReport::from_witness("square", sq),
            CheckReport::from_witness("phi_closed", closed),
        ],
    ))
}
