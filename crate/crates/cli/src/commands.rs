//! Check dispatch for structure documents.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use poissonkit::bialgebra::{
    check_bialgebra, check_compact_r_matrix, check_quasi_bialgebra, check_r_matrix, dual_bracket,
    Cobracket, QuasiBialgebra,
};
use poissonkit::dynamical::{check_dynamical, coth_spot_check};
use poissonkit::manin::{extract_quasi, phi_quarter, validate_manin, ManinData};
use poissonkit::matgroup::check_group;
use poissonkit::nijenhuis::{check_pn, check_pqn, check_pqn_brackets};
use poissonkit::polyfield::{
    check_quasi_algebroid, check_twisted, is_poisson, poisson_action_check, sample_polys,
    twisted_cotangent_structures,
};
use poissonkit::{aggregate, CheckReport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::document::{DocError, Document, ManinKind, RPreset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    CheckLie,
    CheckRMatrix,
    CheckBialgebra,
    CheckQuasi,
    Dualize,
    ManinExtract,
    CheckPoisson,
    CheckTwisted,
    CheckPn,
    CheckPqn,
    CheckPqnBrackets,
    CheckDynamical,
    CheckMultiplicative,
    CheckAction,
    All,
}

impl Command {
    /// Every single check, in the order used by `all` before sorting by report name.
    pub const CHECKS: [Command; 14] = [
        Command::CheckLie,
        Command::CheckRMatrix,
        Command::CheckBialgebra,
        Command::CheckQuasi,
        Command::Dualize,
        Command::ManinExtract,
        Command::CheckPoisson,
        Command::CheckTwisted,
        Command::CheckPn,
        Command::CheckPqn,
        Command::CheckPqnBrackets,
        Command::CheckDynamical,
        Command::CheckMultiplicative,
        Command::CheckAction,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::CheckLie => "check-lie",
            Command::CheckRMatrix => "check-rmatrix",
            Command::CheckBialgebra => "check-bialgebra",
            Command::CheckQuasi => "check-quasi",
            Command::Dualize => "dualize",
            Command::ManinExtract => "manin-extract",
            Command::CheckPoisson => "check-poisson",
            Command::CheckTwisted => "check-twisted",
            Command::CheckPn => "check-pn",
            Command::CheckPqn => "check-pqn",
            Command::CheckPqnBrackets => "check-pqn-brackets",
            Command::CheckDynamical => "check-dynamical",
            Command::CheckMultiplicative => "check-multiplicative",
            Command::CheckAction => "check-action",
            Command::All => "all",
        }
    }

    /// Sections the check needs; `all` skips the check when any is absent.
    fn sections(self, doc: &Document) -> Result<(), &'static str> {
        let need = |present: bool, name: &'static str| if present { Ok(()) } else { Err(name) };
        let lie = need(doc.lie.is_some(), "lie_algebra");
        let delta = need(
            doc.cobracket.is_some() || doc.r_matrix.is_some(),
            "cobracket",
        );
        let poisson = need(doc.poisson.is_some(), "poisson");
        match self {
            Command::CheckLie => lie,
            Command::CheckRMatrix => lie.and(need(doc.r_matrix.is_some(), "r_matrix")),
            Command::CheckBialgebra | Command::Dualize => lie.and(delta),
            Command::CheckQuasi => lie.and(need(doc.phi.is_some(), "phi")),
            Command::ManinExtract => lie.and(need(doc.manin.is_some(), "manin")),
            Command::CheckPoisson => poisson,
            Command::CheckTwisted => poisson.and(need(doc.three_form.is_some(), "three_form")),
            Command::CheckPn => poisson.and(need(doc.tensor_n.is_some(), "tensor_n")),
            Command::CheckPqn | Command::CheckPqnBrackets => poisson
                .and(need(doc.tensor_n.is_some(), "tensor_n"))
                .and(need(doc.three_form.is_some(), "three_form")),
            Command::CheckDynamical => lie.and(need(doc.dynamical.is_some(), "dynamical")),
            Command::CheckMultiplicative => need(doc.matrix_group.is_some(), "matrix_group"),
            Command::CheckAction => lie
                .and(poisson)
                .and(need(doc.action.is_some(), "action"))
                .and(delta),
            Command::All => Ok(()),
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Command::CHECKS
            .iter()
            .chain([Command::All].iter())
            .find(|c| c.name() == s)
            .copied()
            .ok_or_else(|| format!("unknown command `{s}`"))
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub seed: u64,
    pub samples: Option<usize>,
    pub numeric_dynamical: bool,
}

#[derive(Debug, Error)]
pub enum RunError {
    #[error(transparent)]
    Document(#[from] DocError),
    #[error("{command}: {source}")]
    Core {
        command: &'static str,
        source: poissonkit::Error,
    },
}

fn core(command: Command) -> impl Fn(poissonkit::Error) -> RunError {
    move |source| RunError::Core {
        command: command.name(),
        source,
    }
}

/// Runs `command` on `doc`. A missing section is an input error for single checks and a skip under `all`.
pub fn run(command: Command, doc: &Document, opts: &Options) -> Result<CheckReport, RunError> {
    if command == Command::All {
        let reports = Command::CHECKS
            .par_iter()
            .map(|&c| match c.sections(doc) {
                Err(missing) => Ok(CheckReport::skipped(
                    c.name(),
                    format!("missing section `{missing}`"),
                )),
                Ok(()) => run_one(c, doc, opts).map(|r| rename(r, c)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut reports = reports;
        reports.sort_by(|a, b| a.name.cmp(&b.name));
        return Ok(aggregate("all", reports));
    }
    if let Err(missing) = command.sections(doc) {
        return Err(DocError::Missing(missing).into());
    }
    run_one(command, doc, opts).map(|r| rename(r, command))
}

/// Wraps a check's report so the top-level name is the command name.
fn rename(r: CheckReport, c: Command) -> CheckReport {
    let timing = r.timing_ms;
    let mut out = aggregate(c.name(), vec![r]);
    out.timing_ms = timing;
    out
}

fn run_one(command: Command, doc: &Document, opts: &Options) -> Result<CheckReport, RunError> {
    let start = Instant::now();
    let mut report = check(command, doc, opts)?;
    report.timing_ms = Some(start.elapsed().as_millis() as u64);
    Ok(report)
}

fn check(command: Command, doc: &Document, opts: &Options) -> Result<CheckReport, RunError> {
    let err = core(command);
    Ok(match command {
        Command::CheckLie => {
            let mut parts = vec![doc.lie()?.validate()];
            if let Some(k) = &doc.bilinear_form {
                parts.push(k.validate(doc.lie()?));
            }
            aggregate("lie", parts)
        }
        Command::CheckRMatrix => {
            let lie = doc.lie()?;
            let r = doc.r_matrix.as_ref().ok_or(DocError::Missing("r_matrix"))?;
            match (r.preset, &doc.chevalley) {
                (Some(RPreset::Compact), Some(data)) => check_compact_r_matrix(lie, data),
                _ => check_r_matrix(lie, &r.r),
            }
        }
        Command::CheckBialgebra => check_bialgebra(doc.lie()?, &doc.cobracket_or_coboundary()?),
        Command::CheckQuasi => {
            let lie = doc.lie()?;
            let delta = match (&doc.cobracket, &doc.r_matrix) {
                (None, None) => Cobracket::zero(lie.dim()),
                _ => doc.cobracket_or_coboundary()?,
            };
            let phi = doc.phi.clone().ok_or(DocError::Missing("phi"))?;
            check_quasi_bialgebra(lie, &QuasiBialgebra { delta, phi })
        }
        Command::Dualize => {
            let lie = doc.lie()?;
            let dual = dual_bracket(lie, &doc.cobracket_or_coboundary()?).map_err(&err)?;
            let mut notes = Vec::new();
            let names = dual.names().to_vec();
            for i in 0..dual.dim() {
                for j in i + 1..dual.dim() {
                    let b = dual.bracket(&dual.basis_vector(i), &dual.basis_vector(j));
                    if b.iter().any(|c| !c.is_zero()) {
                        notes.push(format!(
                            "[{},{}] = {}",
                            names[i],
                            names[j],
                            dual.format_element(&b)
                        ));
                    }
                }
            }
            let mut r = dual.validate();
            r.name = "dual_lie_algebra".into();
            notes.into_iter().fold(r, CheckReport::with_note)
        }
        Command::ManinExtract => {
            let lie = doc.lie()?;
            let kind = doc.manin.ok_or(DocError::Missing("manin"))?;
            let m = match kind {
                ManinKind::DiagonalDouble => {
                    let k = doc
                        .bilinear_form
                        .as_ref()
                        .ok_or(DocError::Missing("bilinear_form"))?;
                    ManinData::diagonal_double(lie, k)
                }
                ManinKind::DrinfeldDouble => {
                    ManinData::drinfeld_double(lie, &doc.cobracket_or_coboundary()?)
                }
            }
            .map_err(&err)?;
            let valid = validate_manin(&m);
            if !valid.passed() {
                return Ok(aggregate("manin_extract", vec![valid]));
            }
            let ex = extract_quasi(&m).map_err(&err)?;
            let names = ex.g.names().to_vec();
            let mut quasi = check_quasi_bialgebra(&ex.g, &ex.quasi);
            quasi = quasi.with_note(format!("φ = {}", ex.quasi.phi.format(&names)));
            let mut parts = vec![valid, quasi];
            if kind == ManinKind::DiagonalDouble {
                let expected = phi_quarter(&m).map_err(&err)?;
                let diff = ex.quasi.phi.try_sub(&expected).map_err(&err)?;
                let w =
                    (!diff.is_zero()).then(|| format!("φ − ¼K(·,[·,·]) = {}", diff.format(&names)));
                parts.push(CheckReport::from_witness("phi_quarter", w));
            } else {
                parts.push(check_bialgebra(&ex.g, &ex.quasi.delta));
            }
            aggregate("manin_extract", parts)
        }
        Command::CheckPoisson => is_poisson(doc.poisson()?).map_err(&err)?,
        Command::CheckTwisted => {
            let (pi, phi) = (doc.poisson()?, doc.three_form()?);
            let twisted = check_twisted(pi, phi).map_err(&err)?;
            let s = twisted_cotangent_structures(pi, phi).map_err(&err)?;
            let samples = sample_polys(pi.dim(), opts.samples.unwrap_or(4), 2, opts.seed);
            let quasi =
                check_quasi_algebroid(&s.algebroid, &s.delta, phi, &samples).map_err(&err)?;
            let algebroid = s.algebroid.validate().map_err(&err)?;
            aggregate("twisted", vec![twisted, algebroid, quasi])
        }
        Command::CheckPn => check_pn(doc.poisson()?, doc.tensor_n()?).map_err(&err)?,
        Command::CheckPqn => {
            check_pqn(doc.poisson()?, doc.tensor_n()?, doc.three_form()?).map_err(&err)?
        }
        Command::CheckPqnBrackets => {
            check_pqn_brackets(doc.poisson()?, doc.tensor_n()?, doc.three_form()?).map_err(&err)?
        }
        Command::CheckDynamical => {
            let d = doc
                .dynamical
                .as_ref()
                .ok_or(DocError::Missing("dynamical"))?;
            let exact = check_dynamical(d).map_err(&err)?;
            match (&doc.chevalley, opts.numeric_dynamical) {
                (Some(data), true) => {
                    let k = data.h.len();
                    let points: Vec<Vec<f64>> = [0.3, 0.7, 1.9]
                        .iter()
                        .map(|&t| (0..k).map(|i| t + 0.25 * i as f64).collect())
                        .collect();
                    let numeric = coth_spot_check(doc.lie()?, data, &points, 1e-9).map_err(&err)?;
                    aggregate("dynamical", vec![exact, numeric])
                }
                (None, true) => aggregate(
                    "dynamical",
                    vec![
                        exact,
                        CheckReport::skipped(
                            "dynamical_coth_numeric",
                            "needs an sl<n> preset algebra",
                        ),
                    ],
                ),
                _ => exact,
            }
        }
        Command::CheckMultiplicative => {
            let g = doc
                .matrix_group
                .as_ref()
                .ok_or(DocError::Missing("matrix_group"))?;
            let samples = opts.samples.or(g.samples).unwrap_or(20);
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed.unwrap_or(opts.seed));
            check_group(&g.algebra, &g.r, samples, &mut rng).map_err(&err)?
        }
        Command::CheckAction => {
            let rho = doc.action.as_ref().ok_or(DocError::Missing("action"))?;
            poisson_action_check(
                doc.lie()?,
                rho,
                &doc.cobracket_or_coboundary()?,
                doc.poisson()?,
            )
            .map_err(&err)?
        }
        Command::All => unreachable!("`all` is dispatched in run"),
    })
}

/// Exit code for a finished report: 0 on pass or skip, 1 otherwise.
pub fn exit_code(r: &CheckReport) -> i32 {
    if r.passed() || r.status == poissonkit::Status::Skipped {
        0
    } else {
        1
    }
}
