//! Report records and their JSON, CSV and markdown renderings.

use crate::config::Format;
use schubert_core::hasse::{Chss, HasseElement};
use schubert_core::partitions::Partition;
use schubert_core::rigidity::verdict;
use schubert_core::schubert::{classify, dual_descriptor};
use schubert_core::schur::{schur_equal, triviality_filter};
use schubert_core::{CoreError, Family, Root};
use serde::{Deserialize, Serialize};

/// Version of the report layout; bumped on any field change.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchurStatus {
    Equal,
    NotEqual,
    Indeterminate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualData {
    pub a: i64,
    pub j: Vec<usize>,
}

/// One Schubert variety with its invariants and verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    /// `Δ(w)` as a hexadecimal bitset over the ordered roots of `g₁`.
    pub delta_w: String,
    pub word: Option<Vec<usize>>,
    pub a: i64,
    pub j: Vec<usize>,
    pub dim: usize,
    pub smooth: bool,
    pub proper: bool,
    pub dual: Option<DualData>,
    pub h1: Option<bool>,
    pub h2: Option<bool>,
    pub h_plus: Option<bool>,
    pub schur_equal: Option<SchurStatus>,
    pub triviality: Option<bool>,
    pub witnesses: Vec<String>,
    pub partition: Option<String>,
}

/// A report over one space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub chss: String,
    pub generator: String,
    pub generated_at: Option<String>,
    pub records: Vec<Record>,
}

impl Report {
    pub fn new(x: &Chss, mut records: Vec<Record>) -> Self {
        sort_records(&mut records);
        Report {
            schema_version: SCHEMA_VERSION,
            chss: space_name(x),
            generator: format!("schubert-cli {}", env!("CARGO_PKG_VERSION")),
            generated_at: None,
            records,
        }
    }
}

/// `"E6/P6"` style name of a space.
pub fn space_name(x: &Chss) -> String {
    format!("{}/P{}", x.lie_type(), x.node())
}

/// Records ordered by dimension, then `J` lexicographically, then `a` and
/// the bitset.
pub fn sort_records(records: &mut [Record]) {
    records.sort_by(|r, s| (r.dim, &r.j, r.a, &r.delta_w).cmp(&(s.dim, &s.j, s.a, &s.delta_w)));
}

pub fn hex_bits(bits: u128) -> String {
    format!("{bits:x}")
}

pub fn parse_hex_bits(s: &str) -> Option<u128> {
    u128::from_str_radix(s, 16).ok()
}

fn root_label(x: &Chss, r: &Root) -> String {
    let c: Vec<String> = r.coeffs(x.rank()).iter().map(|k| k.to_string()).collect();
    format!("({})", c.join(","))
}

/// What to compute for each record.
#[derive(Clone, Copy, Debug, Default)]
pub struct RecordOptions {
    pub rigidity: bool,
    pub schur: bool,
    pub span_bound: usize,
}

/// Builds the record of `w`.
pub fn build_record(x: &Chss, w: &HasseElement, opts: RecordOptions) -> Result<Record, CoreError> {
    let d = classify(x, w)?;
    let proper = d.is_proper();
    let dual = dual_descriptor(x, &d).ok().map(|e| DualData { a: e.a, j: e.j });
    let mut rec = Record {
        delta_w: hex_bits(w.bits),
        word: Some(x.reduced_word(w)),
        a: d.a,
        j: d.j.clone(),
        dim: d.dim,
        smooth: d.smooth,
        proper,
        dual,
        h1: None,
        h2: None,
        h_plus: None,
        schur_equal: None,
        triviality: None,
        witnesses: Vec::new(),
        partition: None,
    };
    if x.family() == Family::A {
        if let Ok(p) = Partition::from_hasse(x, w) {
            rec.partition = Some(partition_text(&p));
        }
    }
    if !proper {
        return Ok(rec);
    }
    if opts.rigidity || opts.schur {
        let v = verdict(x, w)?;
        rec.h1 = Some(v.h1);
        rec.h2 = Some(v.h2);
        rec.h_plus = Some(v.h_plus);
        for (b, g) in &v.h1_witnesses {
            rec.witnesses.push(format!("H1 beta={} gamma={}", root_label(x, b), root_label(x, g)));
        }
        for (e, g) in &v.h2_witnesses {
            rec.witnesses.push(format!("H2 eps={} gamma={}", root_label(x, e), root_label(x, g)));
        }
    }
    if opts.schur {
        rec.triviality = Some(triviality_filter(x, w));
        rec.schur_equal = Some(match schur_equal(x, w, opts.span_bound) {
            Ok(v) => {
                for p in &v.witnesses {
                    rec.witnesses.push(format!(
                        "Pi gamma={} beta={}",
                        root_label(x, &p.gamma),
                        root_label(x, &p.beta)
                    ));
                }
                if v.equal {
                    SchurStatus::Equal
                } else {
                    SchurStatus::NotEqual
                }
            }
            Err(CoreError::SpanBound { .. }) => SchurStatus::Indeterminate,
            Err(e) => return Err(e),
        });
    }
    Ok(rec)
}

/// Run-length text of a partition, `∅` when empty.
pub fn partition_text(p: &Partition) -> String {
    if p.is_empty() {
        return "∅".to_string();
    }
    p.runs()
        .iter()
        .map(|&(len, mult)| if mult == 1 { len.to_string() } else { format!("{len}^{mult}") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn opt_bool(b: Option<bool>) -> String {
    b.map(|v| v.to_string()).unwrap_or_default()
}

fn join(v: &[usize], sep: &str) -> String {
    v.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(sep)
}

pub fn set_text(v: &[usize]) -> String {
    format!("{{{}}}", join(v, ","))
}

fn schur_text(s: Option<SchurStatus>) -> String {
    match s {
        Some(SchurStatus::Equal) => "equal".into(),
        Some(SchurStatus::NotEqual) => "not_equal".into(),
        Some(SchurStatus::Indeterminate) => "indeterminate".into(),
        None => String::new(),
    }
}

const HEADERS: [&str; 15] = [
    "delta_w", "word", "a", "J", "dim", "smooth", "proper", "dual", "h1", "h2", "h_plus", "schur_equal", "triviality",
    "witnesses", "partition",
];

fn row_cells(r: &Record) -> Vec<String> {
    vec![
        r.delta_w.clone(),
        r.word.as_ref().map(|w| join(w, " ")).unwrap_or_default(),
        r.a.to_string(),
        set_text(&r.j),
        r.dim.to_string(),
        r.smooth.to_string(),
        r.proper.to_string(),
        r.dual.as_ref().map(|d| format!("({},{})", d.a, set_text(&d.j))).unwrap_or_default(),
        opt_bool(r.h1),
        opt_bool(r.h2),
        opt_bool(r.h_plus),
        schur_text(r.schur_equal),
        opt_bool(r.triviality),
        r.witnesses.join("; "),
        r.partition.clone().unwrap_or_default(),
    ]
}

/// A markdown table from a header and rows.
pub fn markdown_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let esc = |s: &str| s.replace('|', "\\|");
    let mut out = format!("| {} |\n", headers.join(" | "));
    out.push_str(&format!("|{}\n", "---|".repeat(headers.len())));
    for r in rows {
        out.push_str(&format!("| {} |\n", r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | ")));
    }
    out
}

/// CSV text from a header and rows.
pub fn csv_table(headers: &[&str], rows: &[Vec<String>]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers)?;
    for r in rows {
        w.write_record(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

/// Renders a report in the requested format.
pub fn emit(report: &Report, format: Format) -> anyhow::Result<String> {
    let rows: Vec<Vec<String>> = report.records.iter().map(row_cells).collect();
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Csv => csv_table(&HEADERS, &rows)?,
        Format::Md => {
            let mut s = format!("## {} ({} records, schema {})\n\n", report.chss, report.records.len(), report.schema_version);
            s.push_str(&markdown_table(&HEADERS, &rows));
            s
        }
    })
}

/// Parses a JSON report.
pub fn parse(text: &str) -> anyhow::Result<Report> {
    Ok(serde_json::from_str(text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use schubert_core::LieType;

    #[test]
    fn hex_encoding_round_trips() {
        for b in [0u128, 1, 0xff, 1 << 100, u128::MAX] {
            assert_eq!(parse_hex_bits(&hex_bits(b)), Some(b));
        }
        assert_eq!(hex_bits(0), "0");
        assert_eq!(hex_bits(0x1f), "1f");
    }

    #[test]
    fn records_of_a_small_grassmannian() {
        let x = Chss::new(LieType::a(3), 2).unwrap();
        let opts = RecordOptions { rigidity: true, schur: true, span_bound: 1000 };
        let recs: Vec<Record> = x.enumerate().iter().map(|w| build_record(&x, w, opts).unwrap()).collect();
        let report = Report::new(&x, recs);
        assert_eq!(report.records.len(), 6);
        assert!(report.records.windows(2).all(|p| p[0].dim <= p[1].dim));
        assert_eq!(parse(&emit(&report, Format::Json).unwrap()).unwrap(), report);
        let csv = emit(&report, Format::Csv).unwrap();
        assert_eq!(csv.lines().count(), 7);
        let md = emit(&report, Format::Md).unwrap();
        assert!(md.contains("| delta_w |"));
    }

    fn arb_record() -> impl Strategy<Value = Record> {
        let opt_b = || proptest::option::of(any::<bool>());
        (
            any::<u128>(),
            proptest::option::of(proptest::collection::vec(1usize..13, 0..8)),
            -3i64..5,
            proptest::collection::vec(1usize..13, 0..5),
            0usize..200,
            (any::<bool>(), any::<bool>()),
            proptest::option::of((0i64..4, proptest::collection::vec(1usize..13, 0..4))),
            (opt_b(), opt_b(), opt_b(), opt_b()),
            proptest::option::of(prop_oneof![
                Just(SchurStatus::Equal),
                Just(SchurStatus::NotEqual),
                Just(SchurStatus::Indeterminate)
            ]),
            proptest::collection::vec("[a-zA-Z0-9 ,;()=|\"]{0,12}", 0..3),
            proptest::option::of("[0-9 ^∅]{0,10}"),
        )
            .prop_map(|(bits, word, a, j, dim, (smooth, proper), dual, (h1, h2, hp, triv), schur, witnesses, partition)| {
                Record {
                    delta_w: hex_bits(bits),
                    word,
                    a,
                    j,
                    dim,
                    smooth,
                    proper,
                    dual: dual.map(|(a, j)| DualData { a, j }),
                    h1,
                    h2,
                    h_plus: hp,
                    schur_equal: schur,
                    triviality: triv,
                    witnesses,
                    partition,
                }
            })
    }

    proptest! {
        #[test]
        fn json_round_trip(records in proptest::collection::vec(arb_record(), 0..6), stamp in proptest::option::of("[0-9]{1,10}")) {
            let report = Report {
                schema_version: SCHEMA_VERSION,
                chss: "A4/P2".into(),
                generator: "test".into(),
                generated_at: stamp,
                records,
            };
            let text = emit(&report, Format::Json).unwrap();
            prop_assert_eq!(parse(&text).unwrap(), report);
        }
    }
}
