//! Command dispatch. [`run`] returns the report instead of printing it so
//! the binary and the tests share one path.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::ReductivePair;
use crate::catalog::{self, GroupData, PairData, Payload};
use crate::ce::{self, BettiTable};
use crate::format::{self, render_vector, FormatError, ValidationError};
use crate::group;
use crate::relative::{self, GkModule};
use crate::scalar;
use crate::tischler::{self, FoliationProfile, PeriodGroup};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "foliate", version, about = "Exact Lie algebra cohomology and foliation verdicts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Coefficient module for the cohomology commands.
    #[arg(long, global = true, value_enum, default_value_t = ModuleChoice::Trivial)]
    module: ModuleChoice,
    /// Emit cocycle representatives with Betti numbers.
    #[arg(long, global = true)]
    representatives: bool,
    /// Machine-readable report with the same fields.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse and validate a payload.
    Validate { target: String },
    /// Chevalley-Eilenberg Betti numbers.
    Betti { target: String },
    /// Betti numbers of the relative cochain complex.
    RelativeBetti { target: String },
    /// Betti numbers of the relative coinvariant chain complex.
    HomologyBetti { target: String },
    /// Modular character `trace ad`.
    Character { target: String },
    /// `det Ad` of each listed element.
    DetAd { target: String },
    /// Block determinants of each listed element on k and p.
    DecomposeAd { target: String },
    /// Normal core of the marked subgroup.
    Core { target: String },
    /// Averaging projector of a finite action.
    Average { target: String },
    /// Poincare duality check against the twisted module.
    Duality { target: String },
    /// Fixed points of p and K on the module.
    H0 { target: String },
    /// Rational rank and discreteness of the periods.
    Tischler { target: String },
    /// Fibration and unimodularity verdict.
    Verdict { target: String },
    /// List catalog entries, or print one in the text format.
    Catalog { name: Option<String> },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ModuleChoice {
    Trivial,
    Adjoint,
    Coadjoint,
    Modular,
    /// Hazewinkel twist of the trivial module.
    Twisted,
    /// Dual of the twisted trivial module.
    DualTwisted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

enum Failure {
    Parse(String),
    Validation(String),
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Parse { .. } => Failure::Parse(e.to_string()),
            FormatError::Validation { .. } => Failure::Validation(e.to_string()),
        }
    }
}

macro_rules! validation_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::Validation(ValidationError::from(e).to_string())
            }
        }
    )*};
}

validation_failure!(
    crate::algebra::AlgebraError,
    crate::ce::CohomologyError,
    crate::group::GroupError,
    crate::tischler::TischlerError,
    crate::catalog::CatalogError
);

/// A report: ordered key/value fields plus its plain-text rendering.
struct Report {
    text: Vec<String>,
    json: Value,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            };
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let stdout = if cli.json {
                format!("{}\n", serde_json::to_string_pretty(&report.json).expect("json values serialize"))
            } else {
                report.text.iter().map(|l| format!("{l}\n")).collect()
            };
            Outcome { stdout, stderr: String::new(), code: EXIT_OK }
        }
        Err(Failure::Parse(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("parse error: {msg}\n"),
            code: EXIT_PARSE,
        },
        Err(Failure::Validation(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("validation error: {msg}\n"),
            code: EXIT_VALIDATION,
        },
    }
}

/// Resolves `catalog:name`, `file:name`, or a bare file (its last section).
fn resolve(target: &str) -> Result<Payload, Failure> {
    if let Some(name) = target.strip_prefix("catalog:") {
        return Ok(catalog::get(name)?.payload);
    }
    let (path, name) = match target.rsplit_once(':') {
        Some((p, n)) if !p.is_empty() => (p, Some(n)),
        _ => (target, None),
    };
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Parse(format!("{path}: {e}")))?;
    let doc = format::parse(&text)?;
    let found = match name {
        Some(n) => doc.get(n),
        None => doc.payloads().last(),
    };
    found
        .cloned()
        .ok_or_else(|| Failure::Validation(format!("no section `{}` in {path}", name.unwrap_or(""))))
}

fn wrong_kind(p: &Payload, wanted: &str) -> Failure {
    Failure::Validation(format!("`{}` is a {}, expected {wanted}", p.name(), p.kind()))
}

fn as_pair(p: &Payload) -> Result<PairData, Failure> {
    match p {
        Payload::Pair(d) => Ok(d.clone()),
        Payload::Algebra(g) => Ok(PairData {
            name: g.name().to_string(),
            pair: ReductivePair::trivial(g.clone()),
            elements: Vec::new(),
        }),
        other => Err(wrong_kind(other, "an algebra or pair")),
    }
}

fn as_group(p: &Payload) -> Result<GroupData, Failure> {
    match p {
        Payload::Group(d) => Ok(d.clone()),
        other => Err(wrong_kind(other, "a group")),
    }
}

fn as_profile(p: &Payload) -> Result<FoliationProfile, Failure> {
    match p {
        Payload::Profile(d) => Ok(d.profile.clone()),
        other => Err(wrong_kind(other, "a profile")),
    }
}

fn as_periods(p: &Payload) -> Result<PeriodGroup, Failure> {
    match p {
        Payload::Periods(d) => Ok(d.periods.clone()),
        Payload::Profile(d) => d
            .profile
            .periods
            .clone()
            .ok_or_else(|| Failure::Validation(format!("profile `{}` has no periods", d.name))),
        other => Err(wrong_kind(other, "a profile or periods")),
    }
}

fn module(pair: &ReductivePair, choice: ModuleChoice) -> Result<GkModule, Failure> {
    let trivial = GkModule::trivial(pair);
    Ok(match choice {
        ModuleChoice::Trivial => trivial,
        ModuleChoice::Adjoint => GkModule::adjoint(pair),
        ModuleChoice::Coadjoint => GkModule::adjoint(pair).dual(),
        ModuleChoice::Modular => GkModule::modular(pair)?,
        ModuleChoice::Twisted => relative::hazewinkel_twist(pair, &trivial)?.into_module(),
        ModuleChoice::DualTwisted => relative::hazewinkel_twist(pair, &trivial)?.into_module().dual(),
    })
}

fn betti_report(table: &BettiTable) -> Report {
    let mut text = vec![table.to_string()];
    let mut json = json!({ "betti": table.numbers() });
    if let Some(reps) = table.representatives() {
        let rendered: Vec<Vec<String>> = reps
            .iter()
            .map(|vs| vs.iter().map(|v| render_vector(v)).collect())
            .collect();
        for (r, vs) in rendered.iter().enumerate() {
            text.push(format!("H{r} {}", vs.join(" ")).trim_end().to_string());
        }
        json["representatives"] = json!(rendered);
    }
    Report { text, json }
}

fn render(s: &scalar::Scalar) -> String {
    scalar::render(s)
}

fn dispatch(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Catalog { name } => Ok(match name {
            None => {
                let names = catalog::list();
                Report {
                    text: names.iter().map(|s| s.to_string()).collect(),
                    json: json!({ "entries": names }),
                }
            }
            Some(n) => {
                let entry = catalog::get(n)?;
                let text = format::serialize(&entry.payload);
                Report {
                    text: text.lines().map(str::to_string).collect(),
                    json: json!({ "name": entry.name, "kind": entry.payload.kind(), "text": text }),
                }
            }
        }),
        Command::Validate { target } => {
            let p = resolve(target)?;
            let detail = match &p {
                Payload::Algebra(g) => format!("dim {}", g.dim()),
                Payload::Pair(d) => format!("k {} q {}", d.pair.k_dim(), d.pair.q()),
                Payload::Group(d) => format!("order {}", d.group.order()),
                Payload::Profile(_) => "flags 7".to_string(),
                Payload::Periods(d) => format!("generators {}", d.periods.generators().len()),
            };
            Ok(Report {
                text: vec![format!("valid {} {} {detail}", p.kind(), p.name())],
                json: json!({ "valid": true, "kind": p.kind(), "name": p.name(), "detail": detail }),
            })
        }
        Command::Betti { target } => {
            let data = as_pair(&resolve(target)?)?;
            let full = ReductivePair::trivial(data.pair.algebra().clone());
            let v = module(&full, cli.module)?;
            let g = full.algebra();
            let table = if cli.representatives {
                ce::betti_with_representatives(g, v.coefficient())
            } else {
                ce::betti(g, v.coefficient())
            };
            Ok(betti_report(&table))
        }
        Command::RelativeBetti { target } => {
            let data = as_pair(&resolve(target)?)?;
            let v = module(&data.pair, cli.module)?;
            let complex = relative::relative_complex(&data.pair, &v)?;
            let table = if cli.representatives {
                complex.betti_with_representatives()
            } else {
                complex.betti()
            };
            Ok(betti_report(&table))
        }
        Command::HomologyBetti { target } => {
            let data = as_pair(&resolve(target)?)?;
            let v = module(&data.pair, cli.module)?;
            Ok(betti_report(&relative::relative_homology_betti(&data.pair, &v)?))
        }
        Command::Character { target } => {
            let data = as_pair(&resolve(target)?)?;
            let g = data.pair.algebra();
            let chi = g.modular_character();
            let values: Vec<String> = chi.values().iter().map(render).collect();
            Ok(Report {
                text: vec![format!("character {}", values.join(" ")), format!("unimodular {}", chi.is_zero())],
                json: json!({ "character": values, "unimodular": chi.is_zero() }),
            })
        }
        Command::DetAd { target } => {
            let data = as_pair(&resolve(target)?)?;
            let mut text = Vec::new();
            let mut rows = Vec::new();
            for e in &data.elements {
                let d = group::det_ad(e);
                text.push(format!(
                    "{} det {} modular {} strongly_unimodular {} unimodular {}",
                    e.label(),
                    render(&d.det),
                    render(&d.modular),
                    d.strongly_unimodular,
                    d.unimodular
                ));
                rows.push(json!({
                    "label": e.label(),
                    "det": render(&d.det),
                    "modular": render(&d.modular),
                    "strongly_unimodular": d.strongly_unimodular,
                    "unimodular": d.unimodular,
                }));
            }
            Ok(Report { text, json: json!({ "elements": rows }) })
        }
        Command::DecomposeAd { target } => {
            let data = as_pair(&resolve(target)?)?;
            let mut text = Vec::new();
            let mut rows = Vec::new();
            for e in &data.elements {
                let d = group::det_ad_decomposition(&data.pair, e)?;
                text.push(format!(
                    "{} det_k {} det_p {} det {} product_holds {}",
                    e.label(),
                    render(&d.det_k),
                    render(&d.det_p),
                    render(&d.det),
                    d.product_holds
                ));
                rows.push(json!({
                    "label": e.label(),
                    "det_k": render(&d.det_k),
                    "det_p": render(&d.det_p),
                    "det": render(&d.det),
                    "product_holds": d.product_holds,
                }));
            }
            Ok(Report { text, json: json!({ "elements": rows }) })
        }
        Command::Core { target } => {
            let data = as_group(&resolve(target)?)?;
            let Some(k) = &data.subgroup else {
                return Err(Failure::Validation(format!("group `{}` marks no subgroup", data.group.name())));
            };
            let core = group::normal_core(&data.group, k)?;
            let listed: Vec<String> = core.iter().map(usize::to_string).collect();
            let normal = data.group.is_normal(&core);
            Ok(Report {
                text: vec![
                    format!("order {}", core.len()),
                    format!("core {}", listed.join(" ")),
                    format!("normal {normal}"),
                ],
                json: json!({ "order": core.len(), "core": core, "normal": normal }),
            })
        }
        Command::Average { target } => {
            let data = as_group(&resolve(target)?)?;
            let p = group::average_projector(&data.group)?;
            let holds = group::projector_contract_holds(&data.group)?;
            let rows: Vec<String> = p.to_rows().iter().map(|r| render_vector(r)).collect();
            let mut text = vec![format!("rank {}", p.rank()), format!("retraction {holds}")];
            text.extend(rows.iter().map(|r| format!("row {r}")));
            Ok(Report {
                text,
                json: json!({ "rank": p.rank(), "retraction": holds, "projector": rows }),
            })
        }
        Command::Duality { target } => {
            let data = as_pair(&resolve(target)?)?;
            let v = module(&data.pair, cli.module)?;
            let rep = relative::duality_check(&data.pair, &v)?;
            let mut text = vec![format!("holds {}", rep.holds())];
            let mut degrees = Vec::new();
            for r in 0..=rep.q {
                text.push(format!(
                    "degree {r} cohomology {} twisted_homology {} match {}",
                    rep.cohomology[r], rep.twisted_homology[r], rep.per_degree[r]
                ));
                degrees.push(json!({
                    "degree": r,
                    "cohomology": rep.cohomology[r],
                    "twisted_homology": rep.twisted_homology[r],
                    "match": rep.per_degree[r],
                }));
            }
            text.push(format!("top_cohomology_trivial {}", rep.top_cohomology_trivial));
            text.push(format!("h0_dual_twist {}", rep.h0_dual_twist));
            text.push(format!("corollary {}", rep.corollary_holds));
            Ok(Report {
                text,
                json: json!({
                    "holds": rep.holds(),
                    "degrees": degrees,
                    "top_cohomology_trivial": rep.top_cohomology_trivial,
                    "h0_dual_twist": rep.h0_dual_twist,
                    "corollary": rep.corollary_holds,
                }),
            })
        }
        Command::H0 { target } => {
            let data = as_pair(&resolve(target)?)?;
            let v = module(&data.pair, cli.module)?;
            let fixed = relative::h0_fixed_points(&data.pair, &v);
            let basis: Vec<String> = fixed.basis.iter().map(|b| render_vector(b)).collect();
            let mut text = vec![format!("h0 {}", fixed.dim)];
            text.extend(basis.iter().map(|b| format!("basis {b}")));
            Ok(Report {
                text,
                json: json!({ "h0": fixed.dim, "basis": basis }),
            })
        }
        Command::Tischler { target } => {
            let periods = as_periods(&resolve(target)?)?;
            let d = tischler::is_discrete(&periods);
            let generator = d.generator.as_ref().map(|g| periods.render(g));
            let mut text = vec![format!("q_rank {}", d.q_rank), format!("discrete {}", d.discrete)];
            if let Some(g) = &generator {
                text.push(format!("generator {g}"));
            }
            Ok(Report {
                text,
                json: json!({ "q_rank": d.q_rank, "discrete": d.discrete, "generator": generator }),
            })
        }
        Command::Verdict { target } => {
            let profile = as_profile(&resolve(target)?)?;
            let v = tischler::unimodularity_verdict(&profile);
            let mut text = vec![format!("verdict {}", v.kind)];
            text.extend(v.certificate.iter().map(|c| format!("certificate {c}")));
            if let Some(g) = &v.period_generator {
                text.push(format!("period_generator {g}"));
            }
            Ok(Report {
                text,
                json: json!({
                    "verdict": v.kind.to_string(),
                    "certificate": v.certificate,
                    "period_generator": v.period_generator,
                }),
            })
        }
    }
}
