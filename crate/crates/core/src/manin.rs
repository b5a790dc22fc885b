//! Manin pairs and quasi-triples at the Lie algebra level.

use crate::bialgebra::{check_quasi_bialgebra, dual_bracket, Cobracket, QuasiBialgebra};
use crate::error::{Error, Result};
use crate::exterior::Multivector;
use crate::kernel::{Matrix, Scalar};
use crate::lie::{BilinearForm, LieAlgebra};
use crate::report::{aggregate, CheckReport};

/// `d` with an invariant pairing, a Lagrangian subalgebra `g` and an isotropic complement `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct ManinData {
    pub d: LieAlgebra,
    pub pairing: BilinearForm,
    /// Elements of `d` spanning `g`.
    pub g_basis: Vec<Vec<Scalar>>,
    /// Elements of `d` spanning `h`.
    pub h_basis: Vec<Vec<Scalar>>,
    pub g_names: Vec<String>,
    /// Set when `d = g ⊕ g` with pairing `K(u₁,v₁) − K(u₂,v₂)`.
    pub double_of: Option<(LieAlgebra, BilinearForm)>,
}

impl ManinData {
    /// `(g ⊕ g, Δ(g), ½Δ₋(g))` with `((u₁,u₂)|(v₁,v₂)) = K(u₁,v₁) − K(u₂,v₂)`.
    pub fn diagonal_double(lie: &LieAlgebra, k: &BilinearForm) -> Result<Self> {
        let n = lie.dim();
        if k.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: k.dim(),
            });
        }
        let d = LieAlgebra::direct_sum(lie, lie);
        let mut p = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                p[(i, j)] = k.matrix[(i, j)].clone();
                p[(n + i, n + j)] = -&k.matrix[(i, j)];
            }
        }
        let half = Scalar::ratio(1, 2);
        let mut g_basis = Vec::with_capacity(n);
        let mut h_basis = Vec::with_capacity(n);
        for i in 0..n {
            let mut g = vec![Scalar::zero(); 2 * n];
            g[i] = Scalar::one();
            g[n + i] = Scalar::one();
            g_basis.push(g);
            let mut h = vec![Scalar::zero(); 2 * n];
            h[i] = half.clone();
            h[n + i] = -&half;
            h_basis.push(h);
        }
        Ok(ManinData {
            d,
            pairing: BilinearForm::new(p)?,
            g_basis,
            h_basis,
            g_names: lie.names().to_vec(),
            double_of: Some((lie.clone(), k.clone())),
        })
    }

    /// The Drinfeld double `g ⊕ g*` of a Lie bialgebra, with `h = g*` a subalgebra.
    ///
    /// `[e_i, ε^a] = −Σ_b c_{ib}^a ε^b + Σ_b D^{ab}_i e_b` where `D` are the dual constants;
    /// the pairing is `ξ(Y) + η(X)`.
    pub fn drinfeld_double(lie: &LieAlgebra, delta: &Cobracket) -> Result<Self> {
        let n = lie.dim();
        let dual = dual_bracket(lie, delta)?;
        let m = 2 * n;
        let mut c = vec![vec![vec![Scalar::zero(); m]; m]; m];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c[i][j][k] = lie.constant(i, j, k);
                    c[n + i][n + j][n + k] = dual.constant(i, j, k);
                }
            }
        }
        for i in 0..n {
            for a in 0..n {
                for b in 0..n {
                    let ga = -lie.constant(i, b, a);
                    let gb = dual.constant(a, b, i);
                    c[i][n + a][n + b] = ga.clone();
                    c[n + a][i][n + b] = -&ga;
                    c[i][n + a][b] = gb.clone();
                    c[n + a][i][b] = -&gb;
                }
            }
        }
        let mut names: Vec<String> = lie.names().to_vec();
        names.extend(lie.names().iter().map(|s| format!("{s}*")));
        let d = LieAlgebra::from_dense(names, c)?;
        let mut p = Matrix::zeros(m, m);
        for i in 0..n {
            p[(i, n + i)] = Scalar::one();
            p[(n + i, i)] = Scalar::one();
        }
        let unit = |k: usize| {
            let mut v = vec![Scalar::zero(); m];
            v[k] = Scalar::one();
            v
        };
        Ok(ManinData {
            d,
            pairing: BilinearForm::new(p)?,
            g_basis: (0..n).map(unit).collect(),
            h_basis: (n..m).map(unit).collect(),
            g_names: lie.names().to_vec(),
            double_of: None,
        })
    }

    pub fn g_dim(&self) -> usize {
        self.g_basis.len()
    }

    fn pair(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        self.pairing.eval(x, y)
    }

    /// Columns `g_1 … g_n, h_1 … h_n`.
    fn combined(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.g_basis.iter().chain(&self.h_basis).cloned().collect();
        Matrix::from_columns(&cols)
    }

    /// Structure constants of `g` in `g_basis`.
    pub fn g_algebra(&self) -> Result<LieAlgebra> {
        let n = self.g_dim();
        let gm = Matrix::from_columns(&self.g_basis);
        let mut c = vec![vec![vec![Scalar::zero(); n]; n]; n];
        for i in 0..n {
            for j in 0..n {
                let br = self.d.bracket(&self.g_basis[i], &self.g_basis[j]);
                c[i][j] = gm
                    .solve(&br)
                    .ok_or_else(|| Error::InvalidInput("g is not a subalgebra".into()))?;
            }
        }
        LieAlgebra::from_dense(self.g_names.clone(), c)
    }
}

/// All ManinData invariants except the signature.
pub fn validate_manin(m: &ManinData) -> CheckReport {
    let name = "manin";
    let dd = m.d.dim();
    if !dd.is_multiple_of(2) {
        return CheckReport::error(name, format!("double has odd dimension {dd}"));
    }
    let n = dd / 2;
    if m.g_basis.len() != n || m.h_basis.len() != n {
        return CheckReport::error(name, format!("g and h must each have {n} elements"));
    }
    if m.g_basis.iter().chain(&m.h_basis).any(|v| v.len() != dd) || m.pairing.dim() != dd {
        return CheckReport::error(name, "element or pairing size differs from the double");
    }
    let mut subs = vec![{
        let mut r = m.d.validate();
        r.name = "double_is_lie".into();
        r
    }];
    subs.push(CheckReport::from_witness(
        "pairing_symmetric",
        (!m.pairing.is_symmetric()).then(|| m.pairing.matrix.to_string()),
    ));
    subs.push(CheckReport::from_witness(
        "pairing_invariant",
        m.pairing.invariance_witness(&m.d),
    ));
    subs.push(CheckReport::from_witness(
        "pairing_nondegenerate",
        (!m.pairing.is_nondegenerate()).then(|| "determinant is zero".to_string()),
    ));
    let iso = |basis: &[Vec<Scalar>], label: &str| {
        let mut w = None;
        for (a, x) in basis.iter().enumerate() {
            for (b, y) in basis.iter().enumerate().skip(a) {
                let v = m.pair(x, y);
                if !v.is_zero() {
                    w.get_or_insert_with(|| format!("({label}{a}|{label}{b}) = {v}"));
                }
            }
        }
        w
    };
    subs.push(CheckReport::from_witness(
        "g_lagrangian",
        iso(&m.g_basis, "g"),
    ));
    subs.push(CheckReport::from_witness(
        "h_isotropic",
        iso(&m.h_basis, "h"),
    ));
    subs.push(CheckReport::from_witness(
        "complement",
        (m.combined().rank() != dd).then(|| "g and h do not span the double".to_string()),
    ));
    subs.push(CheckReport::from_witness(
        "g_subalgebra",
        m.g_algebra().err().map(|e| e.to_string()),
    ));
    aggregate(name, subs).with_note("signature is not verified; nondegeneracy is")
}

/// The extracted data: `g` in its own basis and `(F, φ)` on it.
#[derive(Clone, Debug, PartialEq)]
pub struct Extracted {
    pub g: LieAlgebra,
    pub quasi: QuasiBialgebra,
}

/// Decomposes the brackets of `h ≅ g*` into `F: g → Λ²g` and `φ ∈ Λ³g`.
///
/// With `ε^a ∈ h` dual to `g_a` under the pairing, `F(g_c)` has coefficient
/// `(h-part of [ε^a,ε^b] | g_c)` on `g_a∧g_b`, and `φ` has coefficient
/// `(pr_g[ε^a,ε^b] | ε^c)` on `g_a∧g_b∧g_c`. The result must pass
/// [`check_quasi_bialgebra`]; otherwise a convention error is returned.
pub fn extract_quasi(m: &ManinData) -> Result<Extracted> {
    let v = validate_manin(m);
    if !v.passed() {
        return Err(Error::InvalidInput(format!(
            "Manin data invalid: {}",
            v.witness.unwrap_or_else(|| format!("{:?}", v.status))
        )));
    }
    let n = m.g_dim();
    let g = m.g_algebra()?;
    let mm = Matrix::from_rows(
        m.h_basis
            .iter()
            .map(|h| m.g_basis.iter().map(|gv| m.pair(h, gv)).collect())
            .collect(),
    );
    let q = mm
        .inverse()
        .ok_or_else(|| Error::Singular("pairing between h and g".into()))?;
    let dd = m.d.dim();
    let eps: Vec<Vec<Scalar>> = (0..n)
        .map(|a| {
            let mut v = vec![Scalar::zero(); dd];
            for c in 0..n {
                for (k, x) in m.h_basis[c].iter().enumerate() {
                    v[k] += &(&q[(a, c)] * x);
                }
            }
            v
        })
        .collect();
    let comb_inv = m
        .combined()
        .inverse()
        .ok_or_else(|| Error::Singular("g ⊕ h".into()))?;
    let mut f_images = vec![Multivector::zero(n, 2); n];
    let mut pr_g = vec![vec![Vec::new(); n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let z = m.d.bracket(&eps[a], &eps[b]);
            let coords = comb_inv.mul_vec(&z);
            let mut gpart = vec![Scalar::zero(); dd];
            let mut hpart = vec![Scalar::zero(); dd];
            for i in 0..n {
                for k in 0..dd {
                    gpart[k] += &(&coords[i] * &m.g_basis[i][k]);
                    hpart[k] += &(&coords[n + i] * &m.h_basis[i][k]);
                }
            }
            for (c, img) in f_images.iter_mut().enumerate() {
                img.add_term(vec![a, b], m.pair(&hpart, &m.g_basis[c]));
            }
            pr_g[a][b] = gpart;
        }
    }
    let mut phi = Multivector::zero(n, 3);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                phi.add_term(vec![a, b, c], m.pair(&pr_g[a][b], &eps[c]));
            }
        }
    }
    let quasi = QuasiBialgebra {
        delta: Cobracket::new(f_images)?,
        phi,
    };
    let check = check_quasi_bialgebra(&g, &quasi);
    if !check.passed() {
        return Err(Error::Convention(format!(
            "extracted (F, φ) fails the quasi-bialgebra axioms: {}",
            check.witness.unwrap_or_default()
        )));
    }
    Ok(Extracted { g, quasi })
}

/// `φ(u,v,w) = ¼K(u,[v,w])` as an element of Λ³g through K-duality.
pub fn phi_quarter(m: &ManinData) -> Result<Multivector> {
    let (lie, k) = m
        .double_of
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("phi_quarter needs a diagonal double g ⊕ g".into()))?;
    phi_quarter_of(lie, k)
}

/// `¼K(K⁻¹ξ, [K⁻¹η, K⁻¹ζ])` on dual basis triples.
pub fn phi_quarter_of(lie: &LieAlgebra, k: &BilinearForm) -> Result<Multivector> {
    let n = lie.dim();
    let kinv = k
        .matrix
        .inverse()
        .ok_or_else(|| Error::Singular("bilinear form".into()))?;
    let lifts: Vec<Vec<Scalar>> = (0..n).map(|a| kinv.column(a)).collect();
    let quarter = Scalar::ratio(1, 4);
    let mut phi = Multivector::zero(n, 3);
    for a in 0..n {
        for b in a + 1..n {
            let vw = (b + 1..n).map(|c| (c, lie.bracket(&lifts[b], &lifts[c])));
            for (c, br) in vw {
                phi.add_term(vec![a, b, c], &quarter * &k.eval(&lifts[a], &br));
            }
        }
    }
    Ok(phi)
}

/// A copy of `m` with `h` replaced by `{ε + t(ε)}` for a skew map `t: h → g`.
///
/// `t` is given by `t_coeffs[a][b]`, the `g_b` coefficient of `t(h_a)`; isotropy
/// of the new `h` holds when `(h_a | t h_b) + (t h_a | h_b) = 0`.
pub fn twist_complement(m: &ManinData, t_coeffs: &[Vec<Scalar>]) -> ManinData {
    let dd = m.d.dim();
    let h_basis = m
        .h_basis
        .iter()
        .zip(t_coeffs)
        .map(|(h, row)| {
            let mut v = h.clone();
            for (b, c) in row.iter().enumerate() {
                for k in 0..dd {
                    v[k] += &(c * &m.g_basis[b][k]);
                }
            }
            v
        })
        .collect();
    ManinData {
        h_basis,
        double_of: None,
        ..m.clone()
    }
}
