//! Cobrackets, Lie bialgebras, r-matrices and quasi-Lie bialgebras.

use crate::error::{Error, Result};
use crate::exterior::{schouten, KDifferential, Multivector};
use crate::kernel::Scalar;
use crate::lie::{compact_basis, ChevalleyData, LieAlgebra};
use crate::report::{aggregate, CheckReport};

/// A linear map `δ: g → Λ²g`, extended to Λ•g as a degree-one derivation.
#[derive(Clone, Debug, PartialEq)]
pub struct Cobracket {
    pub delta: KDifferential,
}

impl Cobracket {
    pub fn new(images: Vec<Multivector>) -> Result<Self> {
        Ok(Cobracket {
            delta: KDifferential::new(2, images)?,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Cobracket {
            delta: KDifferential::zero(2, dim),
        }
    }

    /// `δ = [r, ·]`.
    pub fn coboundary(lie: &LieAlgebra, r: &Multivector) -> Result<Self> {
        if r.grade() != 2 {
            return Err(Error::GradeMismatch {
                expected: 2,
                found: r.grade(),
            });
        }
        Ok(Cobracket {
            delta: KDifferential::coboundary(lie, r)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.delta.dim
    }

    pub fn image(&self, i: usize) -> &Multivector {
        &self.delta.images[i]
    }

    pub fn apply(&self, p: &Multivector) -> Result<Multivector> {
        self.delta.extend(p)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Cobracket {
            delta: self.delta.scale(s),
        }
    }
}

fn dims_agree(lie: &LieAlgebra, d: &Cobracket, name: &str) -> Option<CheckReport> {
    (lie.dim() != d.dim()).then(|| {
        CheckReport::error(
            name,
            format!("cobracket on {} vs algebra of dim {}", d.dim(), lie.dim()),
        )
    })
}

/// `δ[X,Y] = [δX,Y] + [X,δY]` on basis pairs.
pub fn check_cocycle(lie: &LieAlgebra, d: &Cobracket) -> CheckReport {
    if let Some(e) = dims_agree(lie, d, "cocycle") {
        return e;
    }
    let mut r = d.delta.is_k_differential(lie);
    r.name = "cocycle".into();
    r
}

/// The same condition read as a 1-cocycle for the adjoint action on Λ²g:
/// `δ[X,Y] = ad_X δY − ad_Y δX`.
pub fn check_cocycle_adjoint(lie: &LieAlgebra, d: &Cobracket) -> CheckReport {
    if let Some(e) = dims_agree(lie, d, "adjoint_cocycle") {
        return e;
    }
    let n = lie.dim();
    let names = lie.names();
    let mut witness = None;
    let mut count = 0;
    for i in 0..n {
        for j in i + 1..n {
            let xy =
                Multivector::from_vector(&lie.bracket(&lie.basis_vector(i), &lie.basis_vector(j)));
            let lhs = d.apply(&xy).unwrap();
            let ei = Multivector::basis(n, i);
            let ej = Multivector::basis(n, j);
            let adx_dy = schouten(lie, &ei, d.image(j)).unwrap();
            let ady_dx = schouten(lie, &ej, d.image(i)).unwrap();
            let res = &(&lhs - &adx_dy) + &ady_dx;
            if !res.is_zero() {
                count += 1;
                witness.get_or_insert_with(|| {
                    format!("({},{}): {}", names[i], names[j], res.format(names))
                });
            }
        }
    }
    CheckReport::from_witness("adjoint_cocycle", witness)
        .with_note(format!("{count} failing pairs"))
}

/// `δ(δ(e_i)) = 0` for every basis vector; higher degrees follow by Leibniz.
pub fn check_delta_squared(lie: &LieAlgebra, d: &Cobracket) -> CheckReport {
    if let Some(e) = dims_agree(lie, d, "delta_squared") {
        return e;
    }
    let names = lie.names();
    let sq = d.delta.square_images();
    let bad: Vec<String> = sq
        .iter()
        .enumerate()
        .filter(|(_, m)| !m.is_zero())
        .map(|(i, m)| format!("δ²{} = {}", names[i], m.format(names)))
        .collect();
    CheckReport::from_witness("delta_squared", bad.first().cloned())
        .with_note("checked on degree one; higher degrees follow by the Leibniz rule")
}

/// Bracket on g* with `⟨[ξ_a, ξ_b], e_c⟩ = ⟨ξ_a∧ξ_b, δ e_c⟩` (determinant pairing).
///
/// Jacobi is not guaranteed; validate the result separately.
pub fn dual_bracket(lie: &LieAlgebra, d: &Cobracket) -> Result<LieAlgebra> {
    let n = d.dim();
    if lie.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: lie.dim(),
            found: n,
        });
    }
    let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
    for (k, img) in d.delta.images.iter().enumerate() {
        for (idx, v) in img.terms() {
            let (a, b) = (idx[0], idx[1]);
            c[a][b][k] = v.clone();
            c[b][a][k] = -v;
        }
    }
    LieAlgebra::from_dense(lie.names().iter().map(|s| format!("{s}*")).collect(), c)
}

/// Coadjoint action on g*: `(ad*_X ξ)(Y) = −ξ([X,Y])`, as a matrix on dual coordinates.
fn coadjoint(lie: &LieAlgebra, x: usize, xi: &[Scalar]) -> Vec<Scalar> {
    let n = lie.dim();
    (0..n)
        .map(|j| {
            let xy = lie.bracket(&lie.basis_vector(x), &lie.basis_vector(j));
            -xi.iter()
                .zip(&xy)
                .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
        })
        .collect()
}

/// Whether each `ad*_X` is a derivation of the dual bracket, on basis triples.
pub fn check_coadjoint_derivation(lie: &LieAlgebra, d: &Cobracket) -> CheckReport {
    let name = "coadjoint_derivation";
    let dual = match dual_bracket(lie, d) {
        Ok(g) => g,
        Err(e) => return CheckReport::error(name, e.to_string()),
    };
    let n = lie.dim();
    let mut witness = None;
    let mut count = 0;
    for x in 0..n {
        for a in 0..n {
            for b in a + 1..n {
                let (ea, eb) = (dual.basis_vector(a), dual.basis_vector(b));
                let lhs = coadjoint(lie, x, &dual.bracket(&ea, &eb));
                let r1 = dual.bracket(&coadjoint(lie, x, &ea), &eb);
                let r2 = dual.bracket(&ea, &coadjoint(lie, x, &eb));
                let res: Vec<Scalar> = (0..n).map(|k| &(&lhs[k] - &r1[k]) - &r2[k]).collect();
                if res.iter().any(|v| !v.is_zero()) {
                    count += 1;
                    witness.get_or_insert_with(|| {
                        format!(
                            "X={}, ({},{}): {}",
                            lie.names()[x],
                            dual.names()[a],
                            dual.names()[b],
                            dual.format_element(&res)
                        )
                    });
                }
            }
        }
    }
    CheckReport::from_witness(name, witness).with_note(format!("{count} failing triples"))
}

/// Lie bialgebra axioms: cocycle, `δ² = 0`, and Jacobi for the dual bracket.
pub fn check_bialgebra(lie: &LieAlgebra, d: &Cobracket) -> CheckReport {
    let dual = match dual_bracket(lie, d) {
        Ok(g) => {
            let mut r = g.validate();
            r.name = "dual_jacobi".into();
            r
        }
        Err(e) => CheckReport::error("dual_jacobi", e.to_string()),
    };
    aggregate(
        "bialgebra",
        vec![check_cocycle(lie, d), check_delta_squared(lie, d), dual],
    )
}

/// `[r,r]` must be ad-invariant; `triangular` when `[r,r] = 0`.
pub fn check_r_matrix(lie: &LieAlgebra, r: &Multivector) -> CheckReport {
    let name = "r_matrix";
    if r.grade() != 2 {
        return CheckReport::error(name, format!("r has grade {}", r.grade()));
    }
    let s = match schouten(lie, r, r) {
        Ok(s) => s,
        Err(e) => return CheckReport::error(name, e.to_string()),
    };
    let names = lie.names();
    let n = lie.dim();
    let mut bad = Vec::new();
    for i in 0..n {
        let v = schouten(lie, &Multivector::basis(n, i), &s).unwrap();
        if !v.is_zero() {
            bad.push(format!("[{}, [r,r]] = {}", names[i], v.format(names)));
        }
    }
    let inv = CheckReport::from_witness("ad_invariance", bad.first().cloned());
    aggregate(name, vec![inv])
        .with_note(format!("[r,r] = {}", s.format(names)))
        .with_note(format!("triangular: {}", s.is_zero()))
}

pub fn is_triangular(lie: &LieAlgebra, r: &Multivector) -> Result<bool> {
    Ok(schouten(lie, r, r)?.is_zero())
}

/// `r = Σ_α λ_α e_α∧f_α` with `λ_α = 1/(e_α,f_α)`.
pub fn chevalley_r_matrix(lie: &LieAlgebra, data: &ChevalleyData) -> Result<Multivector> {
    let lambdas = data.lambdas()?;
    let mut r = Multivector::zero(lie.dim(), 2);
    for ((&e, &f), l) in data.e.iter().zip(&data.f).zip(lambdas) {
        r.add_term(vec![e, f], l);
    }
    Ok(r)
}

/// `r̂ = ½ Σ_α λ_α X_α∧Y_α` in the compact basis.
pub fn compact_r_matrix(lie: &LieAlgebra, data: &ChevalleyData) -> Result<Multivector> {
    let cb = compact_basis(lie, data)?;
    let lambdas = data.lambdas()?;
    let half = Scalar::ratio(1, 2);
    let mut r = Multivector::zero(lie.dim(), 2);
    for ((&x, &y), l) in cb.x.iter().zip(&cb.y).zip(lambdas) {
        r.add_term(vec![x, y], &half * &l);
    }
    Ok(r)
}

/// `r̂` has real coefficients and maps to `√−1 · r` in the Chevalley basis.
pub fn check_compact_r_matrix(lie: &LieAlgebra, data: &ChevalleyData) -> CheckReport {
    let name = "compact_r_matrix";
    let run = || -> Result<CheckReport> {
        let cb = compact_basis(lie, data)?;
        let rhat = compact_r_matrix(lie, data)?;
        let r = chevalley_r_matrix(lie, data)?;
        let cols: Vec<Vec<Scalar>> = (0..lie.dim()).map(|j| cb.change.column(j)).collect();
        let image = rhat.map_linear(&cols, lie.dim());
        let target = r.scale(&Scalar::i());
        let diff = &image - &target;
        let real = CheckReport::from_witness(
            "real_coefficients",
            (!rhat.is_real()).then(|| rhat.format(cb.algebra.names())),
        );
        let eq = CheckReport::from_witness(
            "equals_i_r",
            (!diff.is_zero()).then(|| diff.format(lie.names())),
        );
        Ok(aggregate(name, vec![real, eq])
            .with_note(format!("r̂ = {}", rhat.format(cb.algebra.names()))))
    };
    run().unwrap_or_else(|e| CheckReport::error(name, e.to_string()))
}

/// A cobracket together with a trivector `φ`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiBialgebra {
    pub delta: Cobracket,
    pub phi: Multivector,
}

/// Cocycle condition, `δ² = [φ,·]` on basis vectors, and `δφ = 0`.
pub fn check_quasi_bialgebra(lie: &LieAlgebra, q: &QuasiBialgebra) -> CheckReport {
    let name = "quasi_bialgebra";
    if q.phi.grade() != 3 {
        return CheckReport::error(name, format!("φ has grade {}", q.phi.grade()));
    }
    if q.phi.dim() != lie.dim() || q.delta.dim() != lie.dim() {
        return CheckReport::error(name, "dimension mismatch between algebra, δ and φ");
    }
    let names = lie.names();
    let n = lie.dim();
    let sq = q.delta.delta.square_images();
    let mut bad = Vec::new();
    for (i, s) in sq.iter().enumerate() {
        let target = schouten(lie, &q.phi, &Multivector::basis(n, i)).unwrap();
        let res = s.try_sub(&target).unwrap();
        if !res.is_zero() {
            bad.push(format!(
                "δ²{} − [φ,{}] = {}",
                names[i],
                names[i],
                res.format(names)
            ));
        }
    }
    let dsq = CheckReport::from_witness("delta_squared_phi", bad.first().cloned());
    let dphi = q.delta.apply(&q.phi).unwrap();
    let closed =
        CheckReport::from_witness("delta_phi", (!dphi.is_zero()).then(|| dphi.format(names)));
    aggregate(name, vec![check_cocycle(lie, &q.delta), dsq, closed])
}
