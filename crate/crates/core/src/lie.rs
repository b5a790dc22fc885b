//! Finite-dimensional Lie algebras given by structure constants.
//!
//! `[e_i, e_j] = Σ_k c[i][j][k] e_k`. Constants are stored sparsely per basis
//! pair; antisymmetry and Jacobi are not enforced on construction but are
//! checked by [`LieAlgebra::validate`].

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::kernel::{Matrix, Scalar};
use crate::report::{aggregate, CheckReport};

#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    names: Arc<[String]>,
    consts: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl LieAlgebra {
    /// From a dense table `c[i][j][k]`.
    pub fn from_dense(names: Vec<String>, c: Vec<Vec<Vec<Scalar>>>) -> Result<Self> {
        let n = names.len();
        if c.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: c.len(),
            });
        }
        let mut consts = Vec::with_capacity(n);
        for row in c {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            let mut out_row = Vec::with_capacity(n);
            for v in row {
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: v.len(),
                    });
                }
                out_row.push(
                    v.into_iter()
                        .enumerate()
                        .filter(|(_, s)| !s.is_zero())
                        .collect(),
                );
            }
            consts.push(out_row);
        }
        Ok(LieAlgebra {
            names: names.into(),
            consts,
        })
    }

    /// From one orientation per pair; the mirror `[e_j, e_i] = -[e_i, e_j]` is synthesized.
    /// Pairs not listed bracket to zero.
    pub fn from_brackets(
        names: Vec<String>,
        brackets: &[(usize, usize, Vec<Scalar>)],
    ) -> Result<Self> {
        let n = names.len();
        let mut dense = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for (i, j, v) in brackets {
            if *i >= n || *j >= n {
                return Err(Error::InvalidInput(format!(
                    "basis index out of range in [{i},{j}]"
                )));
            }
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
            if i == j {
                if v.iter().any(|s| !s.is_zero()) {
                    return Err(Error::InvalidInput(format!(
                        "[{0},{0}] must vanish",
                        names[*i]
                    )));
                }
                continue;
            }
            dense[*i][*j] = v.clone();
            dense[*j][*i] = v.iter().map(|s| -s).collect();
        }
        LieAlgebra::from_dense(names, dense)
    }

    pub fn abelian(names: Vec<String>) -> Self {
        let n = names.len();
        LieAlgebra {
            names: names.into(),
            consts: vec![vec![Vec::new(); n]; n],
        }
    }

    /// The Lie algebra spanned by the given matrices, with bracket the commutator.
    /// The matrices must be linearly independent and closed under commutators.
    pub fn from_matrices(names: Vec<String>, mats: &[Matrix]) -> Result<Self> {
        let n = mats.len();
        if names.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: names.len(),
            });
        }
        let coords = Matrix::from_columns(
            &mats
                .iter()
                .map(|m| m.entries().to_vec())
                .collect::<Vec<_>>(),
        );
        if coords.rank() != n {
            return Err(Error::InvalidInput(
                "matrices are linearly dependent".into(),
            ));
        }
        let mut dense = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let c = mats[i].commutator(&mats[j]);
                dense[i][j] = coords.solve(c.entries()).ok_or_else(|| {
                    Error::InvalidInput("matrix span is not closed under commutators".into())
                })?;
            }
        }
        LieAlgebra::from_dense(names, dense)
    }

    /// `a ⊕ b` with `a`'s basis first; names are suffixed `_1` and `_2`.
    pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> Self {
        let (na, nb) = (a.dim(), b.dim());
        let n = na + nb;
        let mut names: Vec<String> = a.names.iter().map(|s| format!("{s}_1")).collect();
        names.extend(b.names.iter().map(|s| format!("{s}_2")));
        let mut consts = vec![vec![Vec::new(); n]; n];
        for i in 0..na {
            for j in 0..na {
                consts[i][j] = a.consts[i][j].clone();
            }
        }
        for i in 0..nb {
            for j in 0..nb {
                consts[na + i][na + j] = b.consts[i][j]
                    .iter()
                    .map(|(k, c)| (na + k, c.clone()))
                    .collect();
            }
        }
        LieAlgebra {
            names: names.into(),
            consts,
        }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Sparse `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.consts[i][j]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.consts[i][j]
            .iter()
            .find(|(kk, _)| *kk == k)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Bracket of two elements in coordinates.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        assert!(x.len() == n && y.len() == n, "element dimension mismatch");
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi * yj;
                for (k, c) in &self.consts[i][j] {
                    out[*k] += &(&w * c);
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// Renders an element such as `2*e - h`.
    pub fn format_element(&self, x: &[Scalar]) -> String {
        format_combination(&self.names, x)
    }

    /// Matrix of `ad_x`; column `j` holds `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim())
            .map(|j| self.bracket(x, &self.basis_vector(j)))
            .collect();
        Matrix::from_columns(&cols)
    }

    /// Structure constants in the basis whose vectors are the columns of `change`.
    pub fn change_basis(&self, change: &Matrix, names: Vec<String>) -> Result<LieAlgebra> {
        let n = self.dim();
        if change.rows() != n || change.cols() != n || names.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: change.cols(),
            });
        }
        let inv = change
            .inverse()
            .ok_or_else(|| Error::Singular("basis change".into()))?;
        let cols: Vec<Vec<Scalar>> = (0..n).map(|j| change.column(j)).collect();
        let mut dense = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for a in 0..n {
            for b in 0..n {
                dense[a][b] = inv.mul_vec(&self.bracket(&cols[a], &cols[b]));
            }
        }
        LieAlgebra::from_dense(names, dense)
    }

    /// Checks antisymmetry and the Jacobi identity on all basis triples.
    pub fn validate(&self) -> CheckReport {
        let n = self.dim();
        let mut anti = Vec::new();
        for i in 0..n {
            for j in i..n {
                let s: Vec<Scalar> = (0..n)
                    .map(|k| &self.constant(i, j, k) + &self.constant(j, i, k))
                    .collect();
                if s.iter().any(|v| !v.is_zero()) {
                    anti.push(format!(
                        "[{a},{b}]+[{b},{a}] = {}",
                        self.format_element(&s),
                        a = self.names[i],
                        b = self.names[j]
                    ));
                }
            }
        }
        let mut jac = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (ei, ej, ek) = (
                        self.basis_vector(i),
                        self.basis_vector(j),
                        self.basis_vector(k),
                    );
                    let t1 = self.bracket(&self.bracket(&ei, &ej), &ek);
                    let t2 = self.bracket(&self.bracket(&ej, &ek), &ei);
                    let t3 = self.bracket(&self.bracket(&ek, &ei), &ej);
                    let s: Vec<Scalar> = (0..n).map(|m| &(&t1[m] + &t2[m]) + &t3[m]).collect();
                    if s.iter().any(|v| !v.is_zero()) {
                        jac.push(format!(
                            "({},{},{}) -> {}",
                            self.names[i],
                            self.names[j],
                            self.names[k],
                            self.format_element(&s)
                        ));
                    }
                }
            }
        }
        let a = CheckReport::from_witness("antisymmetry", anti.first().cloned())
            .with_note(format!("{} nonzero residuals", anti.len()));
        let j = CheckReport::from_witness("jacobi", jac.first().cloned()).with_note(format!(
            "{} nonzero residuals over {} basis triples",
            jac.len(),
            n * n.saturating_sub(1) * n.saturating_sub(2) / 6
        ));
        aggregate("lie_algebra", vec![a, j])
    }
}

pub(crate) fn format_combination(names: &[String], x: &[Scalar]) -> String {
    let mut s = String::new();
    for (name, c) in names.iter().zip(x).filter(|(_, c)| !c.is_zero()) {
        let neg = c.is_negative_real() || c.is_negative_imaginary();
        let abs = if neg { -c } else { c.clone() };
        if s.is_empty() {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            s.push_str(&format!("{abs}*"));
        }
        s.push_str(name);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// A bilinear form `K(e_i, e_j) = matrix[i][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearForm {
    pub matrix: Matrix,
}

impl BilinearForm {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidInput("bilinear form must be square".into()));
        }
        Ok(BilinearForm { matrix })
    }

    /// `K(x, y) = tr(xy)` for a matrix realisation of the basis.
    pub fn trace_form(mats: &[Matrix]) -> Self {
        let n = mats.len();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = (&mats[i] * &mats[j]).trace();
            }
        }
        BilinearForm { matrix: m }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let ky = self.matrix.mul_vec(y);
        x.iter()
            .zip(&ky)
            .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
    }

    pub fn scaled(&self, c: &Scalar) -> Self {
        BilinearForm {
            matrix: self.matrix.scale(c),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix.is_symmetric()
    }

    pub fn is_nondegenerate(&self) -> bool {
        !self.matrix.determinant().is_zero()
    }

    /// `K([x,y],z) + K(y,[x,z]) = 0` on basis triples.
    pub fn invariance_witness(&self, lie: &LieAlgebra) -> Option<String> {
        let n = lie.dim();
        let k = &self.matrix;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut v = Scalar::zero();
                    for (m, c) in lie.bracket_basis(x, y) {
                        v += &(c * &k[(*m, z)]);
                    }
                    for (m, c) in lie.bracket_basis(x, z) {
                        v += &(c * &k[(y, *m)]);
                    }
                    if !v.is_zero() {
                        let nm = lie.names();
                        return Some(format!(
                            "K([{0},{1}],{2}) + K({1},[{0},{2}]) = {v}",
                            nm[x], nm[y], nm[z]
                        ));
                    }
                }
            }
        }
        None
    }

    pub fn validate(&self, lie: &LieAlgebra) -> CheckReport {
        if self.dim() != lie.dim() {
            return CheckReport::error("bilinear_form", "form and algebra dimensions differ");
        }
        aggregate(
            "bilinear_form",
            vec![
                CheckReport::from_witness(
                    "symmetric",
                    (!self.is_symmetric()).then(|| self.matrix.to_string()),
                ),
                CheckReport::from_witness("invariant", self.invariance_witness(lie)),
                CheckReport::from_witness(
                    "nondegenerate",
                    (!self.is_nondegenerate()).then(|| "det K = 0".to_string()),
                ),
            ],
        )
    }
}

/// Positive roots and Chevalley generators of `sl_n` as basis indices.
#[derive(Clone, Debug, PartialEq)]
pub struct ChevalleyData {
    /// `(i, j)` with `i < j` for the root `ε_i - ε_j`.
    pub positive_roots: Vec<(usize, usize)>,
    pub e: Vec<usize>,
    pub f: Vec<usize>,
    pub h: Vec<usize>,
    /// `(e_α, f_α)` under the chosen invariant form.
    pub pairing: Vec<Scalar>,
}

impl ChevalleyData {
    /// `λ_α = 1/(e_α, f_α)`.
    pub fn lambdas(&self) -> Result<Vec<Scalar>> {
        self.pairing
            .iter()
            .map(|p| {
                p.inv()
                    .ok_or_else(|| Error::InvalidInput("zero pairing (e_α, f_α)".into()))
            })
            .collect()
    }

    /// Same data with the pairing recomputed for another invariant form.
    pub fn with_form(&self, form: &BilinearForm, lie: &LieAlgebra) -> Self {
        let pairing = self
            .e
            .iter()
            .zip(&self.f)
            .map(|(&e, &f)| form.eval(&lie.basis_vector(e), &lie.basis_vector(f)))
            .collect();
        ChevalleyData {
            pairing,
            ..self.clone()
        }
    }
}

/// Basis matrices of `sl_n`: `E_ij` for `i<j`, then `E_ji`, then `H_i = E_ii - E_{i+1,i+1}`.
pub fn sl_matrix_basis(n: usize) -> (Vec<String>, Vec<Matrix>) {
    let roots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut names = Vec::new();
    let mut mats = Vec::new();
    for &(i, j) in &roots {
        names.push(format!("E{}{}", i + 1, j + 1));
        mats.push(Matrix::unit(n, i, j));
    }
    for &(i, j) in &roots {
        names.push(format!("E{}{}", j + 1, i + 1));
        mats.push(Matrix::unit(n, j, i));
    }
    for i in 0..n.saturating_sub(1) {
        names.push(format!("H{}", i + 1));
        mats.push(&Matrix::unit(n, i, i) - &Matrix::unit(n, i + 1, i + 1));
    }
    (names, mats)
}

/// `sl_n` with its Chevalley data and the trace form.
pub fn chevalley_sl(n: usize) -> Result<(LieAlgebra, ChevalleyData, BilinearForm)> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("sl_n needs n >= 2, got {n}")));
    }
    let (names, mats) = sl_matrix_basis(n);
    let lie = LieAlgebra::from_matrices(names, &mats)?;
    let form = BilinearForm::trace_form(&mats);
    let positive_roots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let m = positive_roots.len();
    let e: Vec<usize> = (0..m).collect();
    let f: Vec<usize> = (m..2 * m).collect();
    let h: Vec<usize> = (2 * m..2 * m + n - 1).collect();
    let data = ChevalleyData {
        positive_roots,
        e,
        f,
        h,
        pairing: Vec::new(),
    };
    let data = data.with_form(&form, &lie);
    Ok((lie, data, form))
}

/// The compact real form basis `X_α = e_α - f_α`, `Y_α = i(e_α + f_α)`, `t_j = i h_j`.
#[derive(Clone, Debug)]
pub struct CompactBasis {
    /// Columns are the new basis vectors in the Chevalley basis.
    pub change: Matrix,
    /// Structure constants in the new basis.
    pub algebra: LieAlgebra,
    /// Indices of `X_α`, `Y_α` (per positive root) and `t_j`.
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    pub t: Vec<usize>,
}

pub fn compact_basis(lie: &LieAlgebra, data: &ChevalleyData) -> Result<CompactBasis> {
    let n = lie.dim();
    let m = data.positive_roots.len();
    if 2 * m + data.h.len() != n {
        return Err(Error::InvalidInput(
            "Chevalley data does not cover the basis".into(),
        ));
    }
    let mut cols = Vec::with_capacity(n);
    let mut names = Vec::with_capacity(n);
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut t = Vec::new();
    for (k, &(a, b)) in data.positive_roots.iter().enumerate() {
        let mut v = vec![Scalar::zero(); n];
        v[data.e[k]] = Scalar::one();
        v[data.f[k]] = Scalar::from_int(-1);
        x.push(cols.len());
        cols.push(v);
        names.push(format!("X{}{}", a + 1, b + 1));
    }
    for (k, &(a, b)) in data.positive_roots.iter().enumerate() {
        let mut v = vec![Scalar::zero(); n];
        v[data.e[k]] = Scalar::i();
        v[data.f[k]] = Scalar::i();
        y.push(cols.len());
        cols.push(v);
        names.push(format!("Y{}{}", a + 1, b + 1));
    }
    for (k, &hk) in data.h.iter().enumerate() {
        let mut v = vec![Scalar::zero(); n];
        v[hk] = Scalar::i();
        t.push(cols.len());
        cols.push(v);
        names.push(format!("t{}", k + 1));
    }
    let change = Matrix::from_columns(&cols);
    if change.inverse().is_none() {
        return Err(Error::Convention("compact basis change is singular".into()));
    }
    let algebra = lie.change_basis(&change, names)?;
    Ok(CompactBasis {
        change,
        algebra,
        x,
        y,
        t,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn vec_of(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&k| Scalar::from_int(k)).collect()
    }

    /// Jacobi residual straight from the dense table, independent of `bracket`.
    fn jacobi_oracle(c: &[Vec<Vec<Scalar>>]) -> bool {
        let n = c.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for m in 0..n {
                        let mut s = Scalar::zero();
                        for l in 0..n {
                            s += &(&c[i][j][l] * &c[l][k][m]);
                            s += &(&c[j][k][l] * &c[l][i][m]);
                            s += &(&c[k][i][l] * &c[l][j][m]);
                        }
                        if !s.is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn sl2() -> LieAlgebra {
        LieAlgebra::from_brackets(
            names(&["e", "f", "h"]),
            &[
                (2, 0, vec_of(&[2, 0, 0])),
                (2, 1, vec_of(&[0, -2, 0])),
                (0, 1, vec_of(&[0, 0, 1])),
            ],
        )
        .unwrap()
    }

    fn dense(l: &LieAlgebra) -> Vec<Vec<Vec<Scalar>>> {
        let n = l.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|k| l.constant(i, j, k)).collect())
                    .collect()
            })
            .collect()
    }

    #[test]
    fn sl2_validates() {
        let l = sl2();
        assert!(jacobi_oracle(&dense(&l)));
        assert!(l.validate().passed());
    }

    #[test]
    fn abelian_validates() {
        assert!(LieAlgebra::abelian(names(&["a", "b"])).validate().passed());
    }

    #[test]
    fn cyclic_table_agrees_with_oracle() {
        // [e1,e2]=e3, [e1,e3]=e2, [e2,e3]=e1
        let l = LieAlgebra::from_brackets(
            names(&["e1", "e2", "e3"]),
            &[
                (0, 1, vec_of(&[0, 0, 1])),
                (0, 2, vec_of(&[0, 1, 0])),
                (1, 2, vec_of(&[1, 0, 0])),
            ],
        )
        .unwrap();
        assert_eq!(l.validate().passed(), jacobi_oracle(&dense(&l)));
        assert!(l.validate().passed());
    }

    #[test]
    fn broken_jacobi_reports_witness() {
        // [a,b]=c, [b,c]=a, [c,a]=c breaks Jacobi
        let l = LieAlgebra::from_brackets(
            names(&["a", "b", "c"]),
            &[
                (0, 1, vec_of(&[0, 0, 1])),
                (1, 2, vec_of(&[1, 0, 0])),
                (2, 0, vec_of(&[0, 0, 1])),
            ],
        )
        .unwrap();
        assert!(!jacobi_oracle(&dense(&l)));
        let r = l.validate();
        assert!(r.failed());
        assert!(r.child("jacobi").unwrap().witness.is_some());
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = LieAlgebra::from_dense(
            names(&["a", "b"]),
            vec![vec![vec![Scalar::zero(); 2]; 2]; 3],
        );
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn chevalley_sl2_and_sl3() {
        let (l2, d2, k2) = chevalley_sl(2).unwrap();
        assert_eq!(l2.dim(), 3);
        assert_eq!(d2.positive_roots.len(), 1);
        // tr(E12 E21) = 1
        assert_eq!(d2.pairing, vec![Scalar::one()]);
        assert!(l2.validate().passed());
        assert!(k2.validate(&l2).passed());
        let (l3, d3, k3) = chevalley_sl(3).unwrap();
        assert_eq!(l3.dim(), 8);
        assert_eq!(d3.positive_roots.len(), 3);
        assert!(k3.validate(&l3).passed());
        assert!(chevalley_sl(1).is_err());
    }

    #[test]
    fn ad_h_eigenvalues() {
        let (l, d, _) = chevalley_sl(2).unwrap();
        let ad = l.ad_matrix(&l.basis_vector(d.h[0]));
        assert_eq!(ad[(d.e[0], d.e[0])], Scalar::from_int(2));
        assert_eq!(ad[(d.f[0], d.f[0])], Scalar::from_int(-2));
        assert!(ad[(d.h[0], d.h[0])].is_zero());
        assert!(LieAlgebra::abelian(names(&["a", "b"]))
            .ad_matrix(&vec_of(&[1, 2]))
            .is_zero());
    }

    #[test]
    fn compact_constants_are_real() {
        for n in [2, 3] {
            let (l, d, _) = chevalley_sl(n).unwrap();
            let cb = compact_basis(&l, &d).unwrap();
            let k = &cb.algebra;
            for i in 0..k.dim() {
                for j in 0..k.dim() {
                    assert!(k.bracket_basis(i, j).iter().all(|(_, c)| c.is_real()));
                }
            }
            assert!(k.validate().passed());
            // round trip back to the Chevalley basis
            let inv = cb.change.inverse().unwrap();
            let back = k.change_basis(&inv, l.names().to_vec()).unwrap();
            assert_eq!(back, l);
        }
    }

    #[test]
    fn compact_sl2_relations() {
        let (l, d, _) = chevalley_sl(2).unwrap();
        let cb = compact_basis(&l, &d).unwrap();
        let k = &cb.algebra;
        let (x, y, t) = (cb.x[0], cb.y[0], cb.t[0]);
        // [t, X] = i[h, e - f] = i(2e + 2f) = 2Y
        assert_eq!(k.constant(t, x, y), Scalar::from_int(2));
        // [t, Y] = i*i[h, e + f] = -(2e - 2f) = -2X
        assert_eq!(k.constant(t, y, x), Scalar::from_int(-2));
        // [X, Y] = i[e - f, e + f] = 2i h = 2t
        assert_eq!(k.constant(x, y, t), Scalar::from_int(2));
    }
}
