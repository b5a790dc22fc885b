//! Loading `.pg` structure documents.

use std::collections::BTreeMap;
use std::fmt;

use poissonkit::bialgebra::{chevalley_r_matrix, compact_r_matrix, Cobracket};
use poissonkit::dynamical::DynamicalR;
use poissonkit::kernel::parse::{parse_linear, parse_poly, parse_ratfunc, parse_scalar};
use poissonkit::lie::{chevalley_sl, BilinearForm, ChevalleyData};
use poissonkit::matgroup::{GroupKind, MatrixAlgebra};
use poissonkit::nijenhuis::TensorN;
use poissonkit::polyfield::{PolyField, Variance};
use poissonkit::{Coeff, LieAlgebra, Matrix, Multivector, Poly, RatFunc, Scalar, Vars};
use serde::de::{MapAccess, Visitor};
use serde::{Deserialize, Deserializer};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {msg}")]
    Schema { path: String, msg: String },
    #[error("missing section `{0}`")]
    Missing(&'static str),
}

fn schema(path: impl Into<String>, msg: impl fmt::Display) -> DocError {
    DocError::Schema {
        path: path.into(),
        msg: msg.to_string(),
    }
}

/// An ordered string table that rejects repeated keys.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table(pub Vec<(String, String)>);

impl<'de> Deserialize<'de> for Table {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Table;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object of string values")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut map: A) -> Result<Table, A::Error> {
                let mut out: Vec<(String, String)> = Vec::new();
                while let Some((k, v)) = map.next_entry::<String, String>()? {
                    if out.iter().any(|(e, _)| *e == k) {
                        return Err(serde::de::Error::custom(format!("duplicate entry `{k}`")));
                    }
                    out.push((k, v));
                }
                Ok(Table(out))
            }
        }
        d.deserialize_map(V)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct Raw {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    lie_algebra: Option<RawLie>,
    #[serde(default)]
    bilinear_form: Option<RawForm>,
    #[serde(default)]
    cobracket: Option<BTreeMap<String, Table>>,
    #[serde(default)]
    r_matrix: Option<RawMulti>,
    #[serde(default)]
    phi: Option<Table>,
    #[serde(default)]
    manin: Option<RawManin>,
    #[serde(default)]
    poisson: Option<RawPoisson>,
    #[serde(default)]
    three_form: Option<Table>,
    #[serde(default)]
    tensor_n: Option<Vec<Vec<String>>>,
    #[serde(default)]
    dynamical: Option<RawDynamical>,
    #[serde(default)]
    matrix_group: Option<RawGroup>,
    #[serde(default)]
    action: Option<Table>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLie {
    #[serde(default)]
    preset: Option<String>,
    #[serde(default)]
    basis: Option<Vec<String>>,
    #[serde(default)]
    brackets: Option<Table>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawForm {
    #[serde(default)]
    preset: Option<String>,
    #[serde(default)]
    matrix: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawMulti {
    Preset(String),
    Terms(Table),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManin {
    kind: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPoisson {
    chart: Vec<String>,
    #[serde(default)]
    laurent: bool,
    brackets: Table,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDynamical {
    cartan: Vec<String>,
    r_of_lambda: RawMulti,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    group: GroupKind,
    n: usize,
    r_matrix: Table,
    #[serde(default)]
    samples: Option<usize>,
    #[serde(default)]
    seed: Option<u64>,
}

/// Which r-matrix a preset names.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RPreset {
    Chevalley,
    Compact,
}

#[derive(Clone, Debug)]
pub struct RMatrix {
    pub r: Multivector,
    pub preset: Option<RPreset>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ManinKind {
    DiagonalDouble,
    DrinfeldDouble,
}

#[derive(Clone, Debug)]
pub struct MatrixGroupSection {
    pub algebra: MatrixAlgebra,
    pub r: Multivector,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

/// A fully resolved document; every present section has been parsed and checked for shape.
#[derive(Clone, Debug, Default)]
pub struct Document {
    pub name: Option<String>,
    pub lie: Option<LieAlgebra>,
    pub chevalley: Option<ChevalleyData>,
    pub bilinear_form: Option<BilinearForm>,
    pub cobracket: Option<Cobracket>,
    pub r_matrix: Option<RMatrix>,
    pub phi: Option<Multivector>,
    pub manin: Option<ManinKind>,
    pub poisson: Option<PolyField>,
    pub three_form: Option<PolyField>,
    pub tensor_n: Option<TensorN>,
    pub dynamical: Option<DynamicalR>,
    pub matrix_group: Option<MatrixGroupSection>,
    pub action: Option<Vec<PolyField>>,
}

impl Document {
    pub fn lie(&self) -> Result<&LieAlgebra, DocError> {
        self.lie.as_ref().ok_or(DocError::Missing("lie_algebra"))
    }

    pub fn poisson(&self) -> Result<&PolyField, DocError> {
        self.poisson.as_ref().ok_or(DocError::Missing("poisson"))
    }

    pub fn three_form(&self) -> Result<&PolyField, DocError> {
        self.three_form
            .as_ref()
            .ok_or(DocError::Missing("three_form"))
    }

    pub fn tensor_n(&self) -> Result<&TensorN, DocError> {
        self.tensor_n.as_ref().ok_or(DocError::Missing("tensor_n"))
    }

    /// The explicit cobracket, or `[r, ·]` when only an r-matrix is given.
    pub fn cobracket_or_coboundary(&self) -> Result<Cobracket, DocError> {
        if let Some(c) = &self.cobracket {
            return Ok(c.clone());
        }
        let r = self
            .r_matrix
            .as_ref()
            .ok_or(DocError::Missing("cobracket"))?;
        Cobracket::coboundary(self.lie()?, &r.r).map_err(|e| schema("r_matrix", e))
    }
}

const GAUSSIAN: bool = true;

/// Parses and resolves a document.
pub fn ingest(text: &str) -> Result<Document, DocError> {
    let raw: Raw = serde_json::from_str(text)?;
    let mut doc = Document {
        name: raw.name,
        ..Document::default()
    };
    if let Some(l) = raw.lie_algebra {
        let (lie, data) = lie_section(l)?;
        doc.lie = Some(lie);
        doc.chevalley = data;
    }
    if let Some(f) = raw.bilinear_form {
        doc.bilinear_form = Some(form_section(f, doc.lie()?)?);
    }
    if let Some(c) = raw.cobracket {
        let lie = doc.lie()?;
        let mut images = vec![Multivector::zero(lie.dim(), 2); lie.dim()];
        for (x, table) in c {
            let i = basis_index(lie, &x, &format!("cobracket.{x}"))?;
            images[i] = multivector(lie.names(), &table, 2, &format!("cobracket.{x}"))?;
        }
        doc.cobracket = Some(Cobracket::new(images).map_err(|e| schema("cobracket", e))?);
    }
    if let Some(r) = raw.r_matrix {
        doc.r_matrix = Some(r_section(r, &doc)?);
    }
    if let Some(p) = raw.phi {
        doc.phi = Some(multivector(doc.lie()?.names(), &p, 3, "phi")?);
    }
    if let Some(m) = raw.manin {
        doc.manin = Some(match m.kind.as_str() {
            "diagonal_double" => ManinKind::DiagonalDouble,
            "drinfeld_double" => ManinKind::DrinfeldDouble,
            other => return Err(schema("manin.kind", format!("unknown kind `{other}`"))),
        });
    }
    if let Some(p) = raw.poisson {
        doc.poisson = Some(poisson_section(p)?);
    }
    if let Some(t) = raw.three_form {
        let chart = doc.poisson()?.chart().clone();
        doc.three_form = Some(form_terms(&chart, &t, 3, "three_form")?);
    }
    if let Some(rows) = raw.tensor_n {
        let chart = doc.poisson()?.chart().clone();
        let matrix = rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, s)| poly(&chart, s, &format!("tensor_n[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        doc.tensor_n = Some(TensorN::new(&chart, matrix).map_err(|e| schema("tensor_n", e))?);
    }
    if let Some(d) = raw.dynamical {
        doc.dynamical = Some(dynamical_section(d, &doc)?);
    }
    if let Some(g) = raw.matrix_group {
        doc.matrix_group = Some(group_section(g)?);
    }
    if let Some(a) = raw.action {
        doc.action = Some(action_section(&a, &doc)?);
    }
    Ok(doc)
}

fn lie_section(l: RawLie) -> Result<(LieAlgebra, Option<ChevalleyData>), DocError> {
    match (l.preset, l.basis, l.brackets) {
        (Some(p), None, None) => {
            let n: usize = p
                .strip_prefix("sl")
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| {
                    schema(
                        "lie_algebra.preset",
                        format!("unknown preset `{p}`; expected sl<n>"),
                    )
                })?;
            let (lie, data, _) = chevalley_sl(n).map_err(|e| schema("lie_algebra.preset", e))?;
            Ok((lie, Some(data)))
        }
        (None, Some(basis), brackets) => {
            let table = brackets.unwrap_or_default();
            let lie = if table.0.is_empty() {
                LieAlgebra::abelian(basis)
            } else {
                let entries = bracket_table(
                    &basis,
                    &table,
                    ('[', ']'),
                    "lie_algebra.brackets",
                    |s, path| parse_linear(s, &basis, GAUSSIAN).map_err(|e| schema(path, e)),
                    |v| v.iter().map(|c| -c).collect(),
                )?;
                LieAlgebra::from_brackets(basis.clone(), &entries)
                    .map_err(|e| schema("lie_algebra", e))?
            };
            Ok((lie, None))
        }
        _ => Err(schema(
            "lie_algebra",
            "give either `preset` or `basis` (with optional `brackets`)",
        )),
    }
}

/// Resolves `"[a,b]": value` entries into index triples, checking orientation consistency.
fn bracket_table<T: PartialEq>(
    names: &[String],
    table: &Table,
    (open, close): (char, char),
    path: &str,
    parse: impl Fn(&str, &str) -> Result<T, DocError>,
    neg: impl Fn(&T) -> T,
) -> Result<Vec<(usize, usize, T)>, DocError> {
    let mut out: Vec<(usize, usize, T)> = Vec::new();
    for (key, value) in &table.0 {
        let at = format!("{path}.{key}");
        let inner = key
            .trim()
            .strip_prefix(open)
            .and_then(|s| s.strip_suffix(close))
            .ok_or_else(|| schema(&at, format!("expected `{open}a,b{close}`")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| schema(&at, format!("expected `{open}a,b{close}`")))?;
        let idx = |n: &str| {
            names
                .iter()
                .position(|x| x == n.trim())
                .ok_or_else(|| schema(&at, format!("unknown name `{}`", n.trim())))
        };
        let (i, j) = (idx(a)?, idx(b)?);
        let v = parse(value, &at)?;
        if i == j {
            return Err(schema(
                &at,
                "a bracket of an element with itself must be omitted",
            ));
        }
        if let Some((_, _, w)) = out.iter().find(|(p, q, _)| (*p, *q) == (j, i)) {
            if *w != neg(&v) {
                return Err(schema(
                    &at,
                    "both orientations given with values that are not negatives",
                ));
            }
            continue;
        }
        if out.iter().any(|(p, q, _)| (*p, *q) == (i, j)) {
            return Err(schema(&at, "duplicate bracket entry"));
        }
        out.push((i, j, v));
    }
    Ok(out)
}

fn form_section(f: RawForm, lie: &LieAlgebra) -> Result<BilinearForm, DocError> {
    match (f.preset, f.matrix) {
        (Some(p), None) if p == "trace" => {
            let n = lie.names().iter().filter(|s| s.starts_with('H')).count() + 1;
            let (_, _, form) = chevalley_sl(n).map_err(|e| schema("bilinear_form", e))?;
            if form.dim() != lie.dim() {
                return Err(schema(
                    "bilinear_form.preset",
                    "`trace` requires an sl<n> preset algebra",
                ));
            }
            Ok(form)
        }
        (Some(p), None) => Err(schema(
            "bilinear_form.preset",
            format!("unknown preset `{p}`"),
        )),
        (None, Some(rows)) => {
            let n = lie.dim();
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(schema(
                    "bilinear_form.matrix",
                    format!("expected a {n}×{n} matrix"),
                ));
            }
            let m = rows
                .iter()
                .enumerate()
                .map(|(i, r)| {
                    r.iter()
                        .enumerate()
                        .map(|(j, s)| scalar(s, &format!("bilinear_form.matrix[{i}][{j}]")))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            BilinearForm::new(Matrix::from_rows(m)).map_err(|e| schema("bilinear_form", e))
        }
        _ => Err(schema("bilinear_form", "give either `preset` or `matrix`")),
    }
}

fn r_section(r: RawMulti, doc: &Document) -> Result<RMatrix, DocError> {
    let lie = doc.lie()?;
    match r {
        RawMulti::Terms(t) => Ok(RMatrix {
            r: multivector(lie.names(), &t, 2, "r_matrix")?,
            preset: None,
        }),
        RawMulti::Preset(p) => {
            let data = doc
                .chevalley
                .as_ref()
                .ok_or_else(|| schema("r_matrix", "presets need an sl<n> preset algebra"))?;
            let (r, preset) = match p.as_str() {
                "chevalley" => (chevalley_r_matrix(lie, data), RPreset::Chevalley),
                "compact" => (compact_r_matrix(lie, data), RPreset::Compact),
                other => return Err(schema("r_matrix", format!("unknown preset `{other}`"))),
            };
            Ok(RMatrix {
                r: r.map_err(|e| schema("r_matrix", e))?,
                preset: Some(preset),
            })
        }
    }
}

fn poisson_section(p: RawPoisson) -> Result<PolyField, DocError> {
    let chart = if p.laurent {
        Vars::laurent(&p.chart)
    } else {
        Vars::new(&p.chart)
    };
    let entries = bracket_table(
        &chart.names,
        &p.brackets,
        ('{', '}'),
        "poisson.brackets",
        |s, path| poly(&chart, s, path),
        |v| v.neg(),
    )?;
    PolyField::bivector_from_brackets(&chart, &entries).map_err(|e| schema("poisson", e))
}

fn dynamical_section(d: RawDynamical, doc: &Document) -> Result<DynamicalR, DocError> {
    let lie = doc.lie()?;
    let cartan = d
        .cartan
        .iter()
        .map(|h| basis_index(lie, h, "dynamical.cartan"))
        .collect::<Result<Vec<_>, _>>()?;
    let k = cartan.len();
    let lambda: Vec<String> = (1..=k).map(|i| format!("l{i}")).collect();
    match d.r_of_lambda {
        RawMulti::Preset(p) if p == "rational" => {
            let data = doc.chevalley.as_ref().ok_or_else(|| {
                schema(
                    "dynamical.r_of_lambda",
                    "`rational` needs an sl<n> preset algebra",
                )
            })?;
            if data.h != cartan {
                return Err(schema(
                    "dynamical.cartan",
                    "`rational` uses the full Cartan subalgebra H1, …",
                ));
            }
            DynamicalR::rational(lie, data, &Scalar::one()).map_err(|e| schema("dynamical", e))
        }
        RawMulti::Preset(p) => Err(schema(
            "dynamical.r_of_lambda",
            format!("unknown preset `{p}`"),
        )),
        RawMulti::Terms(t) => {
            let mut r = Multivector::<RatFunc>::zero(lie.dim(), 2);
            for (key, value) in &t.0 {
                let at = format!("dynamical.r_of_lambda.{key}");
                let idx = legs(lie.names(), key, 2, &at)?;
                let c = parse_ratfunc(value, &lambda, GAUSSIAN).map_err(|e| schema(&at, e))?;
                r = r
                    .try_add(
                        &Multivector::from_terms(lie.dim(), 2, [(idx, c)])
                            .map_err(|e| schema(&at, e))?,
                    )
                    .map_err(|e| schema(&at, e))?;
            }
            DynamicalR::new(lie, cartan, r).map_err(|e| schema("dynamical", e))
        }
    }
}

fn group_section(g: RawGroup) -> Result<MatrixGroupSection, DocError> {
    let algebra = match g.group {
        GroupKind::SL => MatrixAlgebra::sl(g.n),
        GroupKind::GL => MatrixAlgebra::gl(g.n),
    }
    .map_err(|e| schema("matrix_group", e))?;
    let r = multivector(
        algebra.lie().names(),
        &g.r_matrix,
        2,
        "matrix_group.r_matrix",
    )?;
    Ok(MatrixGroupSection {
        algebra,
        r,
        samples: g.samples,
        seed: g.seed,
    })
}

/// `"E12": "expr"` gives the component of `ρ(E12)` on `∂_x` for each chart variable, as `"x: expr, y: expr"`.
fn action_section(a: &Table, doc: &Document) -> Result<Vec<PolyField>, DocError> {
    let lie = doc.lie()?;
    let chart = doc.poisson()?.chart().clone();
    let mut fields = vec![PolyField::zero(&chart, Variance::Multivector, 1); lie.dim()];
    for (x, spec) in &a.0 {
        let at = format!("action.{x}");
        let i = basis_index(lie, x, &at)?;
        let mut comps = vec![Poly::zero(chart.len()); chart.len()];
        for part in spec.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let (v, e) = part
                .split_once(':')
                .ok_or_else(|| schema(&at, "expected `var: expr; …`"))?;
            let j = chart
                .index_of(v.trim())
                .ok_or_else(|| schema(&at, format!("unknown chart variable `{}`", v.trim())))?;
            comps[j] = poly(&chart, e, &at)?;
        }
        fields[i] = PolyField::vector_field(&chart, comps).map_err(|e| schema(&at, e))?;
    }
    Ok(fields)
}

fn basis_index(lie: &LieAlgebra, name: &str, path: &str) -> Result<usize, DocError> {
    lie.index_of(name.trim())
        .ok_or_else(|| schema(path, format!("unknown basis element `{name}`")))
}

/// Splits `"a,b,c"` into basis indices.
fn legs(names: &[String], key: &str, grade: usize, path: &str) -> Result<Vec<usize>, DocError> {
    let idx = key
        .split(',')
        .map(|n| {
            names
                .iter()
                .position(|x| x == n.trim())
                .ok_or_else(|| schema(path, format!("unknown name `{}`", n.trim())))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if idx.len() != grade {
        return Err(schema(
            path,
            format!("expected {grade} comma-separated names"),
        ));
    }
    Ok(idx)
}

/// A multivector given as `{"a,b": "coeff", …}`.
fn multivector(
    names: &[String],
    t: &Table,
    grade: usize,
    path: &str,
) -> Result<Multivector, DocError> {
    let mut terms = Vec::new();
    for (key, value) in &t.0 {
        let at = format!("{path}.{key}");
        terms.push((legs(names, key, grade, &at)?, scalar(value, &at)?));
    }
    let mut out = Multivector::zero(names.len(), grade);
    for (idx, c) in terms {
        let m =
            Multivector::from_terms(names.len(), grade, [(idx, c)]).map_err(|e| schema(path, e))?;
        out = out.try_add(&m).map_err(|e| schema(path, e))?;
    }
    Ok(out)
}

fn form_terms(chart: &Vars, t: &Table, grade: usize, path: &str) -> Result<PolyField, DocError> {
    let mut terms = Vec::new();
    for (key, value) in &t.0 {
        let at = format!("{path}.{key}");
        let idx = legs(&chart.names, key, grade, &at)?;
        terms.push((idx, poly(chart, value, &at)?));
    }
    let mut out = PolyField::zero(chart, Variance::Form, grade);
    for (idx, c) in terms {
        let f = PolyField::from_terms(chart, Variance::Form, grade, [(idx, c)])
            .map_err(|e| schema(path, e))?;
        out = out.try_add(&f).map_err(|e| schema(path, e))?;
    }
    Ok(out)
}

fn scalar(s: &str, path: &str) -> Result<Scalar, DocError> {
    parse_scalar(s, GAUSSIAN).map_err(|e| schema(path, e))
}

fn poly(chart: &Vars, s: &str, path: &str) -> Result<Poly, DocError> {
    parse_poly(s, chart, GAUSSIAN).map_err(|e| schema(path, e))
}
