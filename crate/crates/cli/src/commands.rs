//! Subcommand handlers.  Each returns structured output; rendering and exit
//! codes are decided by the caller.

use crate::cache;
use crate::config::{Config, Format};
use crate::golden::golden;
use crate::report::{build_record, csv_table, emit, markdown_table, partition_text, set_text, space_name, Record, RecordOptions, Report, SchurStatus};
use crate::tables::{family_key, run_table, TableOutcome};
use rayon::prelude::*;
use schubert_core::hasse::{Chss, HasseElement};
use schubert_core::partitions::{partition_from_aj, Partition};
use schubert_core::rigidity::expected_hplus;
use schubert_core::schubert::{classify, schubert_from_aj};
use schubert_core::{CoreError, LieType};
use serde::{Deserialize, Serialize};

/// Failure of a subcommand, with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Invalid input: exit code 2.
    #[error("{0}")]
    Usage(String),
    /// Internal assertion failure: exit code 1.
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::InvalidRank { .. }
            | CoreError::NotCominuscule { .. }
            | CoreError::NodeOutOfRange(_)
            | CoreError::NotMinimalCoset { .. }
            | CoreError::NotAnIdeal
            | CoreError::NotAutomorphism(_)
            | CoreError::NotRealizable { .. }
            | CoreError::NotGrassmannian(_)
            | CoreError::InvalidPartition(_)
            | CoreError::Parse(_) => CliError::Usage(e.to_string()),
            CoreError::Improper
            | CoreError::Reconstruction { .. }
            | CoreError::NotClassical(_)
            | CoreError::TooManyRoots(_)
            | CoreError::SpanBound { .. } => CliError::Internal(e.to_string()),
        }
    }
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

fn run_in_pool<T: Send>(cfg: &Config, f: impl FnOnce() -> T + Send) -> Result<T, CliError> {
    match cfg.jobs {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(n).build().map_err(|e| CliError::Internal(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn records(cfg: &Config, x: &Chss, cells: &[HasseElement], opts: RecordOptions) -> Result<Vec<Record>, CliError> {
    let out: Result<Vec<Record>, CoreError> = run_in_pool(cfg, || cells.par_iter().map(|w| build_record(x, w, opts)).collect())?;
    Ok(out?)
}

/// All Schubert varieties of the space, including the point and the whole
/// space.  Served from the cache when one is configured.
pub fn catalog(cfg: &Config, x: &Chss, schur: bool) -> Result<Report, CliError> {
    let request = format!("catalog schur={schur} span_bound={}", cfg.span_bound);
    let key = cache::cache_key(&space_name(x), &request);
    if let Some(dir) = &cfg.cache_dir {
        if let Some(r) = cache::load(dir, &key) {
            return Ok(r);
        }
    }
    let opts = RecordOptions { rigidity: true, schur, span_bound: cfg.span_bound };
    let report = Report::new(x, records(cfg, x, &x.enumerate(), opts)?);
    if let Some(dir) = &cfg.cache_dir {
        cache::store(dir, &key, &report)?;
    }
    Ok(report)
}

/// The H₁/H₂ verdict of every proper Schubert variety, with the cells where
/// the root test and the closed-form list disagree.
pub fn rigidity(cfg: &Config, x: &Chss) -> Result<(Report, Vec<String>), CliError> {
    let cells: Vec<HasseElement> = x.enumerate().into_iter().filter(|w| classify(x, w).map(|d| d.is_proper()).unwrap_or(false)).collect();
    let opts = RecordOptions { rigidity: true, schur: false, span_bound: cfg.span_bound };
    let recs = records(cfg, x, &cells, opts)?;
    let mut mismatches = Vec::new();
    for (w, r) in cells.iter().zip(&recs) {
        let d = classify(x, w)?;
        let expected = expected_hplus(x, &d)?;
        if Some(expected) != r.h_plus {
            mismatches.push(format!("(a,J)=({},{}): root test {:?}, closed form {expected}", r.a, set_text(&r.j), r.h_plus));
        }
    }
    Ok((Report::new(x, recs), mismatches))
}

/// Schur equality for the H₊ cells (or every proper cell with `all`), with
/// the H₊ cells found not Schur-equal.
pub fn schur(cfg: &Config, x: &Chss, all: bool) -> Result<(Report, Vec<String>), CliError> {
    let opts = RecordOptions { rigidity: true, schur: false, span_bound: cfg.span_bound };
    let proper: Vec<HasseElement> = x.enumerate().into_iter().filter(|w| classify(x, w).map(|d| d.is_proper()).unwrap_or(false)).collect();
    let cells: Vec<HasseElement> = if all {
        proper
    } else {
        let recs = records(cfg, x, &proper, opts)?;
        proper.into_iter().zip(recs).filter(|(_, r)| r.h_plus == Some(true)).map(|(w, _)| w).collect()
    };
    let recs = records(cfg, x, &cells, RecordOptions { schur: true, ..opts })?;
    let failures = recs
        .iter()
        .filter(|r| r.h_plus == Some(true) && r.schur_equal != Some(SchurStatus::Equal))
        .map(|r| format!("H+ cell (a,J)=({},{}) has Schur status {:?}", r.a, set_text(&r.j), r.schur_equal))
        .collect();
    Ok((Report::new(x, recs), failures))
}

/// The three ways of naming a Schubert variety.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellInput {
    Word(Vec<usize>),
    AJ(i64, Vec<usize>),
    Partition(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjugateData {
    pub chss: String,
    pub delta_w: String,
    pub a: i64,
    pub j: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionView {
    pub partition: String,
    pub a: i64,
    pub j: Vec<usize>,
    pub dim: usize,
    pub suit: String,
}

impl PartitionView {
    fn of(p: &Partition) -> Self {
        let d = p.descriptor();
        PartitionView { partition: partition_text(p), a: d.a, j: d.j, dim: d.dim, suit: p.suit().to_string() }
    }
}

/// A partition with its dual, conjugate and dual-conjugate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionForms {
    pub space: String,
    pub partition: PartitionView,
    pub dual: PartitionView,
    pub conjugate: PartitionView,
    pub dual_conjugate: PartitionView,
}

impl PartitionForms {
    pub fn of(p: &Partition) -> Self {
        let c = p.conjugate();
        PartitionForms {
            space: format!("Gr({},{})", p.i(), p.n_plus_1()),
            partition: PartitionView::of(p),
            dual: PartitionView::of(&p.dual()),
            conjugate: PartitionView::of(&c),
            dual_conjugate: PartitionView::of(&p.dual().conjugate()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub chss: String,
    pub record: Record,
    pub notice: Option<String>,
    pub conjugates: Vec<ConjugateData>,
    pub partition_forms: Option<PartitionForms>,
}

/// Text of the realizability criterion for the family of `x`.
pub fn criterion_text(x: &Chss) -> String {
    let key = family_key(x);
    match golden().bigone.into_iter().find(|r| r.family == key) {
        Some(r) => format!("the realizability criterion for {} is: {} (with a <= {})", r.space, r.criterion, r.bound),
        None => format!("no Schubert variety of {} has these invariants", space_name(x)),
    }
}

fn resolve_cell(x: &Chss, input: &CellInput) -> Result<HasseElement, CliError> {
    match input {
        CellInput::Word(w) => Ok(x.delta_from_word(w)?),
        CellInput::AJ(a, j) => {
            let r = schubert_from_aj(x, *a, j)?;
            if !j.is_empty() && !r.canonical {
                return Err(CliError::Usage(format!(
                    "(a, J) = ({a}, {}) is not realizable in {}: {}",
                    set_text(j),
                    space_name(x),
                    criterion_text(x)
                )));
            }
            Ok(r.element)
        }
        CellInput::Partition(text) => {
            if x.family() != schubert_core::Family::A {
                return Err(CoreError::NotGrassmannian(space_name(x)).into());
            }
            let p = Partition::parse(x.node(), x.rank() + 1, text)?;
            Ok(p.to_hasse(x)?)
        }
    }
}

/// The full record of one Schubert variety with its conjugates and, in a
/// Grassmannian, its partition forms.
pub fn classify_cell(cfg: &Config, x: &Chss, input: &CellInput, schur: bool) -> Result<ClassifyOutput, CliError> {
    let w = resolve_cell(x, input)?;
    let opts = RecordOptions { rigidity: true, schur, span_bound: cfg.span_bound };
    let record = build_record(x, &w, opts)?;
    let notice = (!record.proper).then(|| {
        let what = if w.is_empty() { "the point" } else { "the whole space" };
        format!("not proper: J is empty and the cell is {what}")
    });
    let mut conjugates = Vec::new();
    let identity: Vec<usize> = (1..=x.rank()).collect();
    for phi in x.rs().diagram_automorphisms() {
        if phi == identity {
            continue;
        }
        if let Ok((y, v)) = x.conjugate(&w, &phi) {
            let d = classify(&y, &v)?;
            conjugates.push(ConjugateData { chss: space_name(&y), delta_w: crate::report::hex_bits(v.bits), a: d.a, j: d.j });
        }
    }
    let partition_forms = if x.family() == schubert_core::Family::A {
        Some(PartitionForms::of(&Partition::from_hasse(x, &w)?))
    } else {
        None
    };
    Ok(ClassifyOutput { chss: space_name(x), record, notice, conjugates, partition_forms })
}

/// Conversions in `Gr(i, n+1)` from a partition or from `(a, J)`.
pub fn partition_cmd(i: usize, n_plus_1: usize, input: &CellInput) -> Result<PartitionForms, CliError> {
    if n_plus_1 < 2 {
        return Err(CliError::Usage(format!("Gr({i},{n_plus_1}) is not a Grassmannian")));
    }
    let x = Chss::new(LieType::new(schubert_core::Family::A, n_plus_1 - 1)?, i)?;
    let p = match input {
        CellInput::Partition(text) => Partition::parse(i, n_plus_1, text)?,
        CellInput::AJ(a, j) => partition_from_aj(&x, *a, j).map_err(|e| match e {
            CoreError::NotRealizable { .. } => CliError::Usage(format!("{e}: {}", criterion_text(&x))),
            e => e.into(),
        })?,
        CellInput::Word(w) => Partition::from_hasse(&x, &x.delta_from_word(w)?)?,
    };
    Ok(PartitionForms::of(&p))
}

/// Regenerates a table; the exit code is 1 on any difference.
pub fn tables(id: &str) -> Result<TableOutcome, CliError> {
    Ok(run_table(id)?)
}

fn key_values(pairs: &[(&str, String)], format: Format) -> anyhow::Result<String> {
    let rows: Vec<Vec<String>> = pairs.iter().map(|(k, v)| vec![k.to_string(), v.clone()]).collect();
    match format {
        Format::Md => Ok(markdown_table(&["field", "value"], &rows)),
        _ => csv_table(&["field", "value"], &rows),
    }
}

fn view_text(v: &PartitionView) -> String {
    format!("{} [{}] a={} J={} dim={}", v.partition, v.suit, v.a, set_text(&v.j), v.dim)
}

pub fn render_report(r: &Report, format: Format) -> Result<String, CliError> {
    Ok(emit(r, format)?)
}

pub fn render_classify(o: &ClassifyOutput, format: Format) -> Result<String, CliError> {
    if format == Format::Json {
        return Ok(serde_json::to_string_pretty(o).map_err(anyhow::Error::from)? + "\n");
    }
    let r = &o.record;
    let mut pairs = vec![
        ("chss", o.chss.clone()),
        ("delta_w", r.delta_w.clone()),
        ("word", r.word.as_ref().map(|w| w.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")).unwrap_or_default()),
        ("a", r.a.to_string()),
        ("J", set_text(&r.j)),
        ("dim", r.dim.to_string()),
        ("smooth", r.smooth.to_string()),
        ("dual", r.dual.as_ref().map(|d| format!("({},{})", d.a, set_text(&d.j))).unwrap_or_default()),
        ("h1", r.h1.map(|b| b.to_string()).unwrap_or_default()),
        ("h2", r.h2.map(|b| b.to_string()).unwrap_or_default()),
        ("h_plus", r.h_plus.map(|b| b.to_string()).unwrap_or_default()),
    ];
    if let Some(s) = r.schur_equal {
        pairs.push(("schur_equal", format!("{s:?}")));
    }
    if let Some(n) = &o.notice {
        pairs.push(("notice", n.clone()));
    }
    for c in &o.conjugates {
        pairs.push(("conjugate", format!("{} ({},{})", c.chss, c.a, set_text(&c.j))));
    }
    if let Some(f) = &o.partition_forms {
        pairs.push(("partition", view_text(&f.partition)));
        pairs.push(("dual partition", view_text(&f.dual)));
        pairs.push(("conjugate partition", view_text(&f.conjugate)));
        pairs.push(("dual conjugate partition", view_text(&f.dual_conjugate)));
    }
    Ok(key_values(&pairs, format)?)
}

pub fn render_partition(f: &PartitionForms, format: Format) -> Result<String, CliError> {
    if format == Format::Json {
        return Ok(serde_json::to_string_pretty(f).map_err(anyhow::Error::from)? + "\n");
    }
    let pairs = [
        ("space", f.space.clone()),
        ("pi", view_text(&f.partition)),
        ("pi*", view_text(&f.dual)),
        ("pi'", view_text(&f.conjugate)),
        ("(pi*)'", view_text(&f.dual_conjugate)),
    ];
    Ok(key_values(&pairs, format)?)
}

pub fn render_table(t: &TableOutcome, format: Format) -> Result<String, CliError> {
    let headers: Vec<&str> = t.headers.iter().map(String::as_str).collect();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(t).map_err(anyhow::Error::from)? + "\n",
        Format::Csv => csv_table(&headers, &t.rows)?,
        Format::Md => {
            let mut s = format!("## {}\n\n", t.title);
            s.push_str(&markdown_table(&headers, &t.rows));
            s.push('\n');
            if t.matches() {
                s.push_str("status: identical to the golden data\n");
            } else {
                s.push_str(&format!("status: {} difference(s)\n", t.diffs.len()));
                for d in &t.diffs {
                    s.push_str(&format!("- {d}\n"));
                }
            }
            s
        }
    })
}
