//! Rational matrix groups: translations of bivectors, coboundary bivectors `π = ⃖r − ⃗r`,
//! multiplicativity and the group 1-cocycle `π̃`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{schouten, Multivector};
use crate::kernel::{Matrix, Scalar};
use crate::lie::{sl_matrix_basis, LieAlgebra};
use crate::report::{aggregate, CheckReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GroupKind {
    GL,
    SL,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::GL => "GL",
            GroupKind::SL => "SL",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupPoint {
    kind: GroupKind,
    matrix: Matrix,
}

impl GroupPoint {
    pub fn new(kind: GroupKind, matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        let det = matrix.determinant();
        if det.is_zero() {
            return Err(Error::Singular("group element must be invertible".into()));
        }
        if kind == GroupKind::SL && !det.is_one() {
            return Err(Error::InvalidInput(format!("det = {det}, expected 1")));
        }
        Ok(GroupPoint { kind, matrix })
    }

    pub fn identity(kind: GroupKind, n: usize) -> Self {
        GroupPoint {
            kind,
            matrix: Matrix::identity(n),
        }
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn mul(&self, other: &GroupPoint) -> Result<GroupPoint> {
        check_size(self.n(), other.n())?;
        let kind = if self.kind == GroupKind::SL && other.kind == GroupKind::SL {
            GroupKind::SL
        } else {
            GroupKind::GL
        };
        Ok(GroupPoint {
            kind,
            matrix: &self.matrix * &other.matrix,
        })
    }

    pub fn inverse(&self) -> GroupPoint {
        let matrix = self.matrix.inverse().expect("group points are invertible");
        GroupPoint {
            kind: self.kind,
            matrix,
        }
    }

    /// A random element with small rational entries, deterministic in `rng`.
    pub fn random(kind: GroupKind, n: usize, rng: &mut impl Rng) -> Self {
        loop {
            let m = match kind {
                GroupKind::SL => random_sl(n, rng),
                GroupKind::GL => {
                    let rows = (0..n)
                        .map(|_| {
                            (0..n)
                                .map(|_| {
                                    Scalar::ratio(rng.random_range(-4..=4), rng.random_range(1..=3))
                                })
                                .collect()
                        })
                        .collect();
                    Matrix::from_rows(rows)
                }
            };
            if let Ok(p) = GroupPoint::new(kind, m) {
                return p;
            }
        }
    }
}

/// Product of a random lower unipotent, diagonal and upper unipotent matrix.
fn random_sl(n: usize, rng: &mut impl Rng) -> Matrix {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    let mut diag = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = Scalar::ratio(rng.random_range(-3..=3), rng.random_range(1..=3));
            upper[(j, i)] = Scalar::ratio(rng.random_range(-3..=3), rng.random_range(1..=3));
        }
    }
    let mut prod = Scalar::one();
    for i in 0..n.saturating_sub(1) {
        let mut d = Scalar::ratio(rng.random_range(1..=4), rng.random_range(1..=4));
        if rng.random_bool(0.5) {
            d = -&d;
        }
        prod = &prod * &d;
        diag[(i, i)] = d;
    }
    if n > 0 {
        diag[(n - 1, n - 1)] = prod.inv().expect("nonzero");
    }
    &(&lower * &diag) * &upper
}

fn check_size(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A Lie algebra of `n×n` matrices together with its basis matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixAlgebra {
    lie: LieAlgebra,
    basis: Vec<Matrix>,
    n: usize,
    kind: GroupKind,
}

impl MatrixAlgebra {
    pub fn new(kind: GroupKind, names: Vec<String>, basis: Vec<Matrix>) -> Result<Self> {
        let n = basis.first().map_or(0, Matrix::rows);
        if let Some(bad) = basis.iter().find(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.rows().max(bad.cols()),
            });
        }
        if kind == GroupKind::SL {
            if let Some(i) = basis.iter().position(|m| !m.trace().is_zero()) {
                return Err(Error::InvalidInput(format!(
                    "{} is not traceless",
                    names[i]
                )));
            }
        }
        let lie = LieAlgebra::from_matrices(names, &basis)?;
        Ok(MatrixAlgebra {
            lie,
            basis,
            n,
            kind,
        })
    }

    /// `sl_n` with basis `E_ij` (`i<j`), `E_ji`, `H_i`.
    pub fn sl(n: usize) -> Result<Self> {
        let (names, mats) = sl_matrix_basis(n);
        MatrixAlgebra::new(GroupKind::SL, names, mats)
    }

    /// `gl_n` with basis `E_ij` in row-major order.
    pub fn gl(n: usize) -> Result<Self> {
        let mut names = Vec::new();
        let mut mats = Vec::new();
        for i in 0..n {
            for j in 0..n {
                names.push(format!("E{}{}", i + 1, j + 1));
                mats.push(Matrix::unit(n, i, j));
            }
        }
        MatrixAlgebra::new(GroupKind::GL, names, mats)
    }

    pub fn lie(&self) -> &LieAlgebra {
        &self.lie
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    /// Coordinates of `m` in the basis, if `m` lies in the span.
    pub fn coordinates(&self, m: &Matrix) -> Option<Vec<Scalar>> {
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        Matrix::from_columns(&cols).solve(m.entries())
    }

    /// The element `Σ x_i B_i`.
    pub fn matrix_of(&self, x: &[Scalar]) -> Matrix {
        self.basis
            .iter()
            .zip(x)
            .fold(Matrix::zeros(self.n, self.n), |acc, (b, c)| {
                &acc + &b.scale(c)
            })
    }

    /// Embeds `Λ²g` into `Λ²` of ambient `n×n` matrices.
    pub fn embed(&self, r: &Multivector) -> Result<Multivector> {
        check_size(self.lie.dim(), r.dim())?;
        let images: Vec<Vec<Scalar>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        Ok(r.map_linear(&images, self.n * self.n))
    }

    /// `(A*A)⁻¹A*` for the embedding `A` whose columns are the basis matrices.
    fn left_inverse(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.basis.iter().map(|b| b.entries().to_vec()).collect();
        let a = Matrix::from_columns(&cols);
        let rows: Vec<Vec<Scalar>> = cols
            .iter()
            .map(|c| c.iter().map(Scalar::conj).collect())
            .collect();
        let a_star = Matrix::from_rows(rows);
        let gram = &a_star * &a;
        &gram
            .inverse()
            .expect("basis matrices are linearly independent")
            * &a_star
    }

    /// Pulls an ambient multivector back to `Λg` when every leg lies in `g`.
    pub fn restrict(&self, m: &Multivector) -> Result<Multivector> {
        check_size(self.n * self.n, m.dim())?;
        let images = self.left_inverse().transpose();
        let images: Vec<Vec<Scalar>> = (0..self.n * self.n)
            .map(|k| images.row(k).to_vec())
            .collect();
        let out = m.map_linear(&images, self.lie.dim());
        if self.embed(&out)? != *m {
            return Err(Error::InvalidInput(
                "multivector has legs outside the Lie algebra".into(),
            ));
        }
        Ok(out)
    }
}

/// A bivector at a group point, stored in ambient coordinates `E_ab ∧ E_cd` ordered lexicographically.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentBivector {
    base: GroupPoint,
    value: Multivector,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl TangentBivector {
    pub fn new(base: GroupPoint, value: Multivector) -> Result<Self> {
        let n = base.n();
        check_size(n * n, value.dim())?;
        if value.grade() != 2 {
            return Err(Error::GradeMismatch {
                expected: 2,
                found: value.grade(),
            });
        }
        Ok(TangentBivector { base, value })
    }

    pub fn zero(base: GroupPoint) -> Self {
        let n = base.n();
        TangentBivector {
            base,
            value: Multivector::zero(n * n, 2),
        }
    }

    /// `Σ c_k X_k ∧ Y_k`.
    pub fn from_pairs(base: GroupPoint, pairs: &[(Scalar, Matrix, Matrix)]) -> Result<Self> {
        let n = base.n();
        let mut value = Multivector::zero(n * n, 2);
        for (c, x, y) in pairs {
            check_size(n, x.rows())?;
            check_size(n, y.rows())?;
            let xs = Multivector::from_vector(x.entries());
            let ys = Multivector::from_vector(y.entries());
            value = value.try_add(&xs.wedge(&ys)?.scale(c))?;
        }
        TangentBivector::new(base, value)
    }

    pub fn base(&self) -> &GroupPoint {
        &self.base
    }

    pub fn value(&self) -> &Multivector {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn try_add(&self, other: &TangentBivector) -> Result<Self> {
        if self.base.matrix != other.base.matrix {
            return Err(Error::InvalidInput(
                "bivectors live at different points".into(),
            ));
        }
        Ok(TangentBivector {
            base: self.base.clone(),
            value: self.value.try_add(&other.value)?,
        })
    }

    pub fn try_sub(&self, other: &TangentBivector) -> Result<Self> {
        self.try_add(&TangentBivector {
            base: other.base.clone(),
            value: other.value.neg(),
        })
    }

    /// Component on `E_ab ∧ E_cd`.
    pub fn component(&self, ab: (usize, usize), cd: (usize, usize)) -> Scalar {
        let n = self.base.n();
        let (i, j) = (ab.0 * n + ab.1, cd.0 * n + cd.1);
        let sign = if i > j { -Scalar::one() } else { Scalar::one() };
        let c = self
            .value
            .component(&[i.min(j), i.max(j)])
            .unwrap_or_else(Scalar::zero);
        &sign * &c
    }

    /// Human-readable sum over ambient units `E_ab∧E_cd`.
    pub fn format(&self) -> String {
        self.value.format(&ambient_names(self.base.n()))
    }
}

fn ambient_names(n: usize) -> Vec<String> {
    (0..n * n)
        .map(|k| format!("E{}{}", k / n + 1, k % n + 1))
        .collect()
}

/// Multiplication by `b` on every leg: `X ↦ bX` (left) or `X ↦ Xb` (right); the base moves likewise.
pub fn translate(t: &TangentBivector, side: Side, by: &GroupPoint) -> Result<TangentBivector> {
    let n = t.base.n();
    check_size(n, by.n())?;
    let images = leg_images(n, side, &by.matrix);
    let base = match side {
        Side::Left => by.mul(&t.base)?,
        Side::Right => t.base.mul(by)?,
    };
    Ok(TangentBivector {
        base,
        value: t.value.map_linear(&images, n * n),
    })
}

fn leg_images(n: usize, side: Side, b: &Matrix) -> Vec<Vec<Scalar>> {
    (0..n * n)
        .map(|k| {
            let unit = Matrix::unit(n, k / n, k % n);
            let img = match side {
                Side::Left => b * &unit,
                Side::Right => &unit * b,
            };
            img.entries().to_vec()
        })
        .collect()
}

/// `π_g = (L_g)_* r − (R_g)_* r`.
pub fn coboundary_pi(
    alg: &MatrixAlgebra,
    r: &Multivector,
    g: &GroupPoint,
) -> Result<TangentBivector> {
    check_size(alg.n, g.n())?;
    let at_one = TangentBivector::new(GroupPoint::identity(g.kind, g.n()), alg.embed(r)?)?;
    translate(&at_one, Side::Left, g)?.try_sub(&translate(&at_one, Side::Right, g)?)
}

/// `(R_h)_* π_g + (L_g)_* π_h = π_{gh}` for the coboundary bivector of `r`.
pub fn check_multiplicative(
    alg: &MatrixAlgebra,
    r: &Multivector,
    g: &GroupPoint,
    h: &GroupPoint,
) -> Result<CheckReport> {
    let lhs = translate(&coboundary_pi(alg, r, g)?, Side::Right, h)?.try_add(&translate(
        &coboundary_pi(alg, r, h)?,
        Side::Left,
        g,
    )?)?;
    let rhs = coboundary_pi(alg, r, &g.mul(h)?)?;
    let diff = lhs.try_sub(&rhs)?;
    let witness =
        (!diff.is_zero()).then(|| format!("(R_h)_* π_g + (L_g)_* π_h − π_gh = {}", diff.format()));
    Ok(CheckReport::from_witness("multiplicative", witness))
}

/// `Ad_g` on `g` as a linear map on coordinates.
fn adjoint_images(alg: &MatrixAlgebra, g: &GroupPoint) -> Result<Vec<Vec<Scalar>>> {
    let ginv = g.inverse();
    alg.basis
        .iter()
        .map(|b| {
            let img = &(&g.matrix * b) * &ginv.matrix;
            alg.coordinates(&img)
                .ok_or_else(|| Error::InvalidInput("Ad_g leaves the Lie algebra".into()))
        })
        .collect()
}

pub fn adjoint(alg: &MatrixAlgebra, g: &GroupPoint, p: &Multivector) -> Result<Multivector> {
    check_size(alg.n, g.n())?;
    Ok(p.map_linear(&adjoint_images(alg, g)?, alg.lie.dim()))
}

/// `π̃(g) = (R_{g⁻¹})_* π_g = Ad_g r − r`.
pub fn cocycle_tilde(alg: &MatrixAlgebra, r: &Multivector, g: &GroupPoint) -> Result<Multivector> {
    let pi = coboundary_pi(alg, r, g)?;
    let back = translate(&pi, Side::Right, &g.inverse())?;
    alg.restrict(&back.value)
}

/// `π̃(gh) = π̃(g) + Ad_g π̃(h)`.
pub fn check_cocycle(
    alg: &MatrixAlgebra,
    r: &Multivector,
    g: &GroupPoint,
    h: &GroupPoint,
) -> Result<CheckReport> {
    let lhs = cocycle_tilde(alg, r, &g.mul(h)?)?;
    let rhs = cocycle_tilde(alg, r, g)?.try_add(&adjoint(alg, g, &cocycle_tilde(alg, r, h)?)?)?;
    let diff = lhs.try_sub(&rhs)?;
    let witness = (!diff.is_zero()).then(|| {
        format!(
            "π̃(gh) − π̃(g) − Ad_g π̃(h) = {}",
            diff.format(alg.lie.names())
        )
    });
    Ok(CheckReport::from_witness("cocycle", witness))
}

/// A matrix `A + εB` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualMatrix {
    pub re: Matrix,
    pub eps: Matrix,
}

impl DualMatrix {
    /// `1 + εX`, the first-order truncation of `exp(εX)`.
    pub fn exp_first_order(x: &Matrix) -> Self {
        DualMatrix {
            re: Matrix::identity(x.rows()),
            eps: x.clone(),
        }
    }

    pub fn constant(a: &Matrix) -> Self {
        DualMatrix {
            re: a.clone(),
            eps: Matrix::zeros(a.rows(), a.cols()),
        }
    }

    pub fn mul(&self, other: &DualMatrix) -> DualMatrix {
        DualMatrix {
            re: &self.re * &other.re,
            eps: &(&self.re * &other.eps) + &(&self.eps * &other.re),
        }
    }

    /// `(A + εB)⁻¹ = A⁻¹ − ε A⁻¹ B A⁻¹`.
    pub fn inverse(&self) -> Option<DualMatrix> {
        let inv = self.re.inverse()?;
        Some(DualMatrix {
            eps: -&(&(&inv * &self.eps) * &inv),
            re: inv,
        })
    }
}

/// First-order part of `π̃(1 + εX)` computed over dual numbers.
pub fn cocycle_derivative(alg: &MatrixAlgebra, r: &Multivector, x: &Matrix) -> Result<Multivector> {
    check_size(alg.n, x.rows())?;
    if alg.coordinates(x).is_none() {
        return Err(Error::InvalidInput(
            "direction is not in the Lie algebra".into(),
        ));
    }
    let g = DualMatrix::exp_first_order(x);
    let ginv = g
        .inverse()
        .ok_or_else(|| Error::Singular("1 + εX".into()))?;
    let mut re_imgs = Vec::with_capacity(alg.basis.len());
    let mut eps_imgs = Vec::with_capacity(alg.basis.len());
    for b in &alg.basis {
        let img = g.mul(&DualMatrix::constant(b)).mul(&ginv);
        let coords = |m: &Matrix| {
            alg.coordinates(m)
                .ok_or_else(|| Error::InvalidInput("Ad leaves the Lie algebra".into()))
        };
        re_imgs.push(coords(&img.re)?);
        eps_imgs.push(coords(&img.eps)?);
    }
    let d = alg.lie.dim();
    let mut out = Multivector::zero(d, 2);
    for (idx, c) in r.terms() {
        let (a, b) = (idx[0], idx[1]);
        let re_a = Multivector::from_vector(&re_imgs[a]);
        let re_b = Multivector::from_vector(&re_imgs[b]);
        let eps_a = Multivector::from_vector(&eps_imgs[a]);
        let eps_b = Multivector::from_vector(&eps_imgs[b]);
        let term = eps_a.wedge(&re_b)?.try_add(&re_a.wedge(&eps_b)?)?;
        out = out.try_add(&term.scale(c))?;
    }
    Ok(out)
}

/// Compares the first-order part of `π̃` along `X` with `[X, r]`.
pub fn check_cocycle_derivative(
    alg: &MatrixAlgebra,
    r: &Multivector,
    x: &Matrix,
) -> Result<CheckReport> {
    let lhs = cocycle_derivative(alg, r, x)?;
    let xv = Multivector::from_vector(&alg.coordinates(x).expect("checked in cocycle_derivative"));
    let rhs = schouten(&alg.lie, &xv, r)?;
    let diff = lhs.try_sub(&rhs)?;
    let witness =
        (!diff.is_zero()).then(|| format!("dπ̃(X) − [X, r] = {}", diff.format(alg.lie.names())));
    Ok(CheckReport::from_witness("cocycle_derivative", witness))
}

/// Multiplicativity and the cocycle identity on `samples` random pairs.
pub fn check_group(
    alg: &MatrixAlgebra,
    r: &Multivector,
    samples: usize,
    rng: &mut impl Rng,
) -> Result<CheckReport> {
    let mut mult = Vec::with_capacity(samples);
    let mut coc = Vec::with_capacity(samples);
    for _ in 0..samples {
        let g = GroupPoint::random(alg.kind, alg.n, rng);
        let h = GroupPoint::random(alg.kind, alg.n, rng);
        mult.push(check_multiplicative(alg, r, &g, &h)?);
        coc.push(check_cocycle(alg, r, &g, &h)?);
    }
    let first_fail = |rs: &[CheckReport], name: &str| {
        let witness = rs
            .iter()
            .position(CheckReport::failed)
            .map(|i| format!("sample {i}: {}", rs[i].witness.clone().unwrap_or_default()));
        CheckReport::from_witness(name, witness).with_note(format!("{samples} random pairs"))
    };
    Ok(aggregate(
        "multiplicative_bivector",
        vec![
            first_fail(&mult, "multiplicative"),
            first_fail(&coc, "cocycle"),
        ],
    ))
}
