//! The line-oriented text format.
//!
//! ```text
//! # comments run to end of line
//! algebra sl2
//! dim 3
//! basis X Y Z
//! bracket X Y = 2 Y
//! bracket X Z = -2 Z
//! bracket Y Z = 1 X
//!
//! pair sl2_so2_pair
//! over sl2
//! subalgebra 0,1,-1
//! complement 1,0,0 0,1,1
//! element rot 1,0,0 0,1,0 0,0,1
//!
//! group z2
//! order 2
//! table 0 1
//! table 1 0
//! subgroup 0
//! action 0 1
//! action 1 -1
//!
//! profile example
//! g0_unimodular true
//! ...
//! constants log_lambda
//! period = 2*log_lambda
//! ```
//!
//! Vectors are comma-separated coordinates; matrices are whitespace
//! separated rows. An algebra section may also carry `subalgebra`,
//! `complement`, `generator` and `element` lines directly, in which case it
//! denotes the pair on that algebra.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{find_reductive_complement, AlgebraError, LieAlgebra, ReductivePair};
use crate::catalog::{CatalogError, GroupData, PairData, Payload, PeriodsData, ProfileData};
use crate::ce::CohomologyError;
use crate::group::{FiniteGroup, GroupElementAd, GroupError};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};
use crate::tischler::{FoliationProfile, PeriodGroup, TischlerError};

/// A payload failed its module's validator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Tischler(#[from] TischlerError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("section `{section}` (line {line}): {source}")]
    Validation {
        section: String,
        line: usize,
        source: ValidationError,
    },
}

fn perr<T>(line: usize, reason: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError::Parse {
        line,
        reason: reason.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Document {
    payloads: Vec<Payload>,
}

impl Document {
    pub fn payloads(&self) -> &[Payload] {
        &self.payloads
    }

    pub fn get(&self, name: &str) -> Option<&Payload> {
        self.payloads.iter().rev().find(|p| p.name() == name)
    }

    fn algebra(&self, name: &str) -> Option<&LieAlgebra> {
        self.payloads.iter().rev().find_map(|p| match p {
            Payload::Algebra(g) if g.name() == name => Some(g),
            _ => None,
        })
    }
}

struct Line<'a> {
    number: usize,
    tokens: Vec<&'a str>,
}

impl Line<'_> {
    fn key(&self) -> &str {
        self.tokens[0]
    }

    fn args(&self) -> &[&str] {
        &self.tokens[1..]
    }

    fn single(&self) -> Result<&str, FormatError> {
        match self.args() {
            [x] => Ok(x),
            _ => perr(self.number, format!("`{}` takes exactly one argument", self.key())),
        }
    }
}

struct Section<'a> {
    header: Line<'a>,
    body: Vec<Line<'a>>,
}

impl Section<'_> {
    fn name(&self) -> Result<String, FormatError> {
        self.header.single().map(str::to_string)
    }

    fn invalid(&self, source: impl Into<ValidationError>) -> FormatError {
        FormatError::Validation {
            section: self.header.args().first().copied().unwrap_or("").to_string(),
            line: self.header.number,
            source: source.into(),
        }
    }
}

const HEADERS: [&str; 5] = ["algebra", "pair", "group", "profile", "periods"];

pub fn parse(text: &str) -> Result<Document, FormatError> {
    let mut sections: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let line = Line { number: i + 1, tokens };
        if HEADERS.contains(&line.key()) {
            sections.push(Section {
                header: line,
                body: Vec::new(),
            });
        } else if let Some(s) = sections.last_mut() {
            s.body.push(line);
        } else {
            return perr(line.number, format!("`{}` outside of a section", line.key()));
        }
    }
    let mut doc = Document::default();
    for section in &sections {
        let payload = match section.header.key() {
            "algebra" => parse_algebra(section)?,
            "pair" => parse_pair(section, &doc)?,
            "group" => parse_group(section)?,
            "profile" => parse_profile(section)?,
            _ => parse_periods(section)?,
        };
        doc.payloads.push(payload);
    }
    Ok(doc)
}

fn parse_scalar(line: usize, token: &str) -> Result<Scalar, FormatError> {
    scalar::parse(token).or_else(|reason| perr(line, reason))
}

fn parse_usize(line: usize, token: &str) -> Result<usize, FormatError> {
    token
        .parse()
        .or_else(|_| perr(line, format!("expected a nonnegative integer, found `{token}`")))
}

fn parse_vector(line: usize, token: &str, dim: usize) -> Result<Vec<Scalar>, FormatError> {
    let v = token
        .split(',')
        .map(|t| parse_scalar(line, t))
        .collect::<Result<Vec<_>, _>>()?;
    if v.len() != dim {
        return perr(line, format!("vector `{token}` has {} entries, expected {dim}", v.len()));
    }
    Ok(v)
}

/// A vector given as coordinates or as a basis name.
fn parse_vector_or_name(line: usize, token: &str, g: &LieAlgebra) -> Result<Vec<Scalar>, FormatError> {
    match g.basis_index(token) {
        Some(i) => Ok(g.unit(i)),
        None => parse_vector(line, token, g.dim()),
    }
}

fn parse_matrix(line: usize, rows: &[&str], dim: usize) -> Result<Matrix, FormatError> {
    if rows.len() != dim {
        return perr(line, format!("matrix has {} rows, expected {dim}", rows.len()));
    }
    let rows = rows
        .iter()
        .map(|r| parse_vector(line, r, dim))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows))
}

fn parse_bool(line: usize, token: &str) -> Result<bool, FormatError> {
    match token {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => perr(line, format!("expected true or false, found `{token}`")),
    }
}

/// `c1 N1 + c2 N2 - N3 ...`; a missing coefficient is 1.
fn parse_combination(line: usize, tokens: &[&str], basis: &[String]) -> Result<Vec<Scalar>, FormatError> {
    let mut out = vec![Scalar::zero(); basis.len()];
    let mut i = 0;
    let mut first = true;
    while i < tokens.len() {
        let mut sign = Scalar::one();
        if !first || tokens[i] == "-" || tokens[i] == "+" {
            match tokens[i] {
                "+" => {}
                "-" => sign = -sign,
                t => return perr(line, format!("expected `+` or `-`, found `{t}`")),
            }
            i += 1;
        }
        first = false;
        let Some(&t) = tokens.get(i) else {
            return perr(line, "dangling sign");
        };
        let (coef, name) = match basis.iter().position(|b| b == t) {
            Some(_) => (Scalar::one(), t),
            None => {
                let c = parse_scalar(line, t)?;
                i += 1;
                match tokens.get(i) {
                    Some(&n) => (c, n),
                    None if c.is_zero() && tokens.len() == 1 => return Ok(out),
                    None => return perr(line, "coefficient without basis element"),
                }
            }
        };
        let Some(k) = basis.iter().position(|b| b == name) else {
            return perr(line, format!("unknown basis element `{name}`"));
        };
        out[k] += sign * coef;
        i += 1;
    }
    Ok(out)
}

#[derive(Default)]
struct PairLines<'a> {
    subalgebra: Option<&'a Line<'a>>,
    complement: Option<&'a Line<'a>>,
    generators: Vec<&'a Line<'a>>,
    elements: Vec<&'a Line<'a>>,
}

impl<'a> PairLines<'a> {
    fn accept(&mut self, line: &'a Line<'a>) -> Result<bool, FormatError> {
        match line.key() {
            "subalgebra" | "complement" => {
                let slot = if line.key() == "subalgebra" {
                    &mut self.subalgebra
                } else {
                    &mut self.complement
                };
                if slot.is_some() {
                    return perr(line.number, format!("duplicate `{}`", line.key()));
                }
                *slot = Some(line);
            }
            "generator" => self.generators.push(line),
            "element" => self.elements.push(line),
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn is_empty(&self) -> bool {
        self.subalgebra.is_none() && self.complement.is_none() && self.generators.is_empty() && self.elements.is_empty()
    }

    fn build(&self, section: &Section, name: String, g: &LieAlgebra) -> Result<Payload, FormatError> {
        let n = g.dim();
        let vectors = |l: Option<&Line>| -> Result<Option<Vec<Vec<Scalar>>>, FormatError> {
            l.map(|l| l.args().iter().map(|t| parse_vector_or_name(l.number, t, g)).collect())
                .transpose()
        };
        let k = vectors(self.subalgebra)?.unwrap_or_default();
        let generators = self
            .generators
            .iter()
            .map(|l| parse_matrix(l.number, l.args(), n))
            .collect::<Result<Vec<_>, _>>()?;
        let p = match vectors(self.complement)? {
            Some(p) => p,
            None => find_reductive_complement(g, &k, &generators).map_err(|e| section.invalid(e))?,
        };
        let pair = ReductivePair::new(g.clone(), k, p, generators).map_err(|e| section.invalid(e))?;
        let elements = self
            .elements
            .iter()
            .map(|l| {
                let Some((label, rows)) = l.args().split_first() else {
                    return perr(l.number, "`element` needs a label and rows");
                };
                let m = parse_matrix(l.number, rows, n)?;
                GroupElementAd::new(g, *label, m).map_err(|e| section.invalid(e))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Payload::Pair(PairData { name, pair, elements }))
    }
}

fn parse_algebra(section: &Section) -> Result<Payload, FormatError> {
    let name = section.name()?;
    let mut dim: Option<usize> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut brackets: Vec<&Line> = Vec::new();
    let mut pair = PairLines::default();
    for line in &section.body {
        match line.key() {
            "dim" => dim = Some(parse_usize(line.number, line.single()?)?),
            "basis" => basis = Some(line.args().iter().map(|s| s.to_string()).collect()),
            "bracket" => brackets.push(line),
            _ => {
                if !pair.accept(line)? {
                    return perr(line.number, format!("unexpected `{}` in algebra section", line.key()));
                }
            }
        }
    }
    let basis = match (dim, basis) {
        (Some(d), Some(b)) if b.len() != d => {
            return perr(section.header.number, format!("dim {d} but {} basis names", b.len()));
        }
        (_, Some(b)) => b,
        (Some(d), None) => (1..=d).map(|i| format!("e{i}")).collect(),
        (None, None) => return perr(section.header.number, "algebra needs `dim` or `basis`"),
    };
    let mut table = Vec::new();
    let mut seen = BTreeMap::new();
    for line in brackets {
        let args = line.args();
        if args.len() < 4 || args[2] != "=" {
            return perr(line.number, "expected `bracket A B = c C + ...`");
        }
        let idx = |t: &str| {
            basis
                .iter()
                .position(|b| b == t)
                .map_or_else(|| perr(line.number, format!("unknown basis element `{t}`")), Ok)
        };
        let (i, j) = (idx(args[0])?, idx(args[1])?);
        if seen.insert((i.min(j), i.max(j)), line.number).is_some() {
            return perr(line.number, format!("bracket of `{}` and `{}` listed twice", args[0], args[1]));
        }
        table.push((i, j, parse_combination(line.number, &args[3..], &basis)?));
    }
    let g = LieAlgebra::from_brackets(name.clone(), basis, &table).map_err(|e| section.invalid(e))?;
    if pair.is_empty() {
        Ok(Payload::Algebra(g))
    } else {
        pair.build(section, name, &g)
    }
}

fn parse_pair(section: &Section, doc: &Document) -> Result<Payload, FormatError> {
    let name = section.name()?;
    let mut over: Option<&Line> = None;
    let mut pair = PairLines::default();
    for line in &section.body {
        if line.key() == "over" {
            over = Some(line);
        } else if !pair.accept(line)? {
            return perr(line.number, format!("unexpected `{}` in pair section", line.key()));
        }
    }
    let Some(over) = over else {
        return perr(section.header.number, "pair needs `over <algebra>`");
    };
    let algebra_name = over.single()?;
    let Some(g) = doc.algebra(algebra_name) else {
        return perr(over.number, format!("algebra `{algebra_name}` is not defined above"));
    };
    pair.build(section, name, g)
}

fn parse_group(section: &Section) -> Result<Payload, FormatError> {
    let name = section.name()?;
    let mut order = None;
    let mut table = Vec::new();
    let mut subgroup = None;
    let mut actions: Vec<(usize, &Line)> = Vec::new();
    for line in &section.body {
        match line.key() {
            "order" => order = Some(parse_usize(line.number, line.single()?)?),
            "table" => table.push(
                line.args()
                    .iter()
                    .map(|t| parse_usize(line.number, t))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            "subgroup" => {
                subgroup = Some(
                    line.args()
                        .iter()
                        .map(|t| parse_usize(line.number, t))
                        .collect::<Result<Vec<_>, _>>()?,
                )
            }
            "action" => {
                let Some(g) = line.args().first() else {
                    return perr(line.number, "`action` needs an element index and rows");
                };
                actions.push((parse_usize(line.number, g)?, line));
            }
            k => return perr(line.number, format!("unexpected `{k}` in group section")),
        }
    }
    let Some(order) = order else {
        return perr(section.header.number, "group needs `order`");
    };
    if table.len() != order {
        return perr(section.header.number, format!("order {order} but {} table rows", table.len()));
    }
    let mut group = FiniteGroup::new(name, table).map_err(|e| section.invalid(e))?;
    if !actions.is_empty() {
        let dim = actions[0].1.args().len() - 1;
        let mut mats = vec![None; order];
        for (g, line) in actions {
            if g >= order {
                return perr(line.number, format!("element {g} out of range"));
            }
            mats[g] = Some(parse_matrix(line.number, &line.args()[1..], dim)?);
        }
        let Some(mats) = mats.into_iter().collect::<Option<Vec<_>>>() else {
            return perr(section.header.number, "every element needs an `action` line");
        };
        group = group.with_action(mats).map_err(|e| section.invalid(e))?;
    }
    if let Some(k) = &subgroup {
        if !group.is_subgroup(k) {
            return Err(section.invalid(GroupError::NotASubgroup(k.clone())));
        }
    }
    Ok(Payload::Group(GroupData { group, subgroup }))
}

/// `constants` and `period` lines; `None` if neither appears.
fn parse_period_lines(section: &Section, lines: &[&Line]) -> Result<Option<PeriodGroup>, FormatError> {
    let mut constants: Option<Vec<String>> = None;
    let mut periods = Vec::new();
    for line in lines {
        match line.key() {
            "constants" => constants = Some(line.args().iter().map(|s| s.to_string()).collect()),
            _ => {
                let Some(consts) = &constants else {
                    return perr(line.number, "`period` before `constants`");
                };
                let args = line.args();
                if args.first() != Some(&"=") {
                    return perr(line.number, "expected `period = ...`");
                }
                periods.push(parse_period(line.number, &args[1..], consts)?);
            }
        }
    }
    match constants {
        None => Ok(None),
        Some(c) => PeriodGroup::new(c, periods).map(Some).map_err(|e| section.invalid(e)),
    }
}

/// `c*name + name + 0 ...`
fn parse_period(line: usize, tokens: &[&str], constants: &[String]) -> Result<Vec<Scalar>, FormatError> {
    let mut out = vec![Scalar::zero(); constants.len()];
    for (i, t) in tokens.iter().enumerate() {
        if i % 2 == 1 {
            if *t != "+" {
                return perr(line, format!("expected `+`, found `{t}`"));
            }
            continue;
        }
        let (coef, name) = match t.split_once('*') {
            Some((c, n)) => (parse_scalar(line, c)?, n),
            None if constants.iter().any(|c| c == t) => (Scalar::one(), *t),
            None => {
                let c = parse_scalar(line, t)?;
                if !c.is_zero() {
                    return perr(line, format!("term `{t}` lacks a constant"));
                }
                continue;
            }
        };
        let Some(k) = constants.iter().position(|c| c == name) else {
            return perr(line, format!("unknown constant `{name}`"));
        };
        out[k] += coef;
    }
    if tokens.len().is_multiple_of(2) {
        return perr(line, "incomplete period expression");
    }
    Ok(out)
}

fn parse_profile(section: &Section) -> Result<Payload, FormatError> {
    let name = section.name()?;
    let mut flags: [Option<bool>; 7] = [None; 7];
    let mut period_lines = Vec::new();
    for line in &section.body {
        if let Some(k) = FoliationProfile::FLAG_NAMES.iter().position(|f| *f == line.key()) {
            flags[k] = Some(parse_bool(line.number, line.single()?)?);
        } else if matches!(line.key(), "constants" | "period") {
            period_lines.push(line);
        } else {
            return perr(line.number, format!("unexpected `{}` in profile section", line.key()));
        }
    }
    let mut values = [false; 7];
    for (k, f) in flags.iter().enumerate() {
        match f {
            Some(b) => values[k] = *b,
            None => {
                return perr(
                    section.header.number,
                    format!("missing flag `{}`", FoliationProfile::FLAG_NAMES[k]),
                )
            }
        }
    }
    let mut profile = FoliationProfile::from_flags(values);
    profile.periods = parse_period_lines(section, &period_lines)?;
    Ok(Payload::Profile(ProfileData { name, profile }))
}

fn parse_periods(section: &Section) -> Result<Payload, FormatError> {
    let name = section.name()?;
    let lines: Vec<&Line> = section.body.iter().collect();
    if let Some(l) = lines.iter().find(|l| !matches!(l.key(), "constants" | "period")) {
        return perr(l.number, format!("unexpected `{}` in periods section", l.key()));
    }
    match parse_period_lines(section, &lines)? {
        Some(periods) => Ok(Payload::Periods(PeriodsData { name, periods })),
        None => perr(section.header.number, "periods section needs `constants`"),
    }
}

pub fn render_vector(v: &[Scalar]) -> String {
    v.iter().map(scalar::render).collect::<Vec<_>>().join(",")
}

pub fn render_matrix(m: &Matrix) -> String {
    m.to_rows().iter().map(|r| render_vector(r)).collect::<Vec<_>>().join(" ")
}

fn serialize_algebra(g: &LieAlgebra, out: &mut String) {
    let basis = g.basis_names();
    out.push_str(&format!("algebra {}\ndim {}\n", g.name(), g.dim()));
    if !basis.is_empty() {
        out.push_str(&format!("basis {}\n", basis.join(" ")));
    }
    for i in 0..g.dim() {
        for j in i + 1..g.dim() {
            let terms: Vec<String> = g
                .bracket_basis(i, j)
                .iter()
                .zip(basis)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, b)| format!("{} {b}", scalar::render(c)))
                .collect();
            if !terms.is_empty() {
                out.push_str(&format!("bracket {} {} = {}\n", basis[i], basis[j], terms.join(" + ")));
            }
        }
    }
}

fn serialize_periods(p: &PeriodGroup, out: &mut String) {
    out.push_str(&format!("constants {}\n", p.constants().join(" ")));
    for g in p.generators() {
        out.push_str(&format!("period = {}\n", p.render(g)));
    }
}

/// Canonical text of a payload. A pair is preceded by its algebra.
pub fn serialize(payload: &Payload) -> String {
    let mut out = String::new();
    match payload {
        Payload::Algebra(g) => serialize_algebra(g, &mut out),
        Payload::Pair(data) => {
            let pair = &data.pair;
            serialize_algebra(pair.algebra(), &mut out);
            out.push_str(&format!("\npair {}\nover {}\n", data.name, pair.algebra().name()));
            if !pair.k_basis().is_empty() {
                let k: Vec<String> = pair.k_basis().iter().map(|v| render_vector(v)).collect();
                out.push_str(&format!("subalgebra {}\n", k.join(" ")));
            }
            let p: Vec<String> = pair.p_basis().iter().map(|v| render_vector(v)).collect();
            out.push_str(&format!("complement {}\n", p.join(" ")));
            for g in pair.generators() {
                out.push_str(&format!("generator {}\n", render_matrix(g)));
            }
            for e in &data.elements {
                out.push_str(&format!("element {} {}\n", e.label(), render_matrix(e.ad())));
            }
        }
        Payload::Group(data) => {
            let g = &data.group;
            out.push_str(&format!("group {}\norder {}\n", g.name(), g.order()));
            for row in g.table() {
                let row: Vec<String> = row.iter().map(usize::to_string).collect();
                out.push_str(&format!("table {}\n", row.join(" ")));
            }
            if let Some(k) = &data.subgroup {
                let k: Vec<String> = k.iter().map(usize::to_string).collect();
                out.push_str(&format!("subgroup {}\n", k.join(" ")));
            }
            for (i, m) in g.action().unwrap_or_default().iter().enumerate() {
                out.push_str(&format!("action {i} {}\n", render_matrix(m)));
            }
        }
        Payload::Profile(data) => {
            out.push_str(&format!("profile {}\n", data.name));
            for (name, value) in FoliationProfile::FLAG_NAMES.iter().zip(data.profile.flags()) {
                out.push_str(&format!("{name} {value}\n"));
            }
            if let Some(p) = &data.profile.periods {
                serialize_periods(p, &mut out);
            }
        }
        Payload::Periods(data) => {
            out.push_str(&format!("periods {}\n", data.name));
            serialize_periods(&data.periods, &mut out);
        }
    }
    out
}
