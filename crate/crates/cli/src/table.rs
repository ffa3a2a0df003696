//! The binary `ℓ = (2-n)/n` table and the regression corpus.

use clap::Args;
use serde::{Deserialize, Serialize};

use crate::output::{csv_table, opt, Render};
use codebounds::algebra::scalar::{format_rational, parse_rational, Scalar};
use codebounds::diagnostics::distance_distribution;
use codebounds::krawtchouk::HammingSpace;
use codebounds::levenshtein::closed_forms::{
    binary_ell, binary_l2, binary_l2_window, binary_l4_coefficients, binary_l4_derived, binary_l4_printed, binary_l4_window_f64, hkl_bound,
    in_binary_l2_window, in_binary_l4_window,
};
use codebounds::levenshtein::{LevenshteinInstance, ProblemParams};
use codebounds::{BoundError, Result};

/// The regression corpus shipped with the binary.
pub const BUILTIN_CORPUS: &str = include_str!("../data/regressions.toml");

#[derive(Args, Clone, Debug)]
pub struct TableArgs {
    /// Code length of the table.
    #[arg(short = 'n', required_unless_present = "verify")]
    pub n: Option<u32>,
    /// Run the regression corpus instead of printing a table.
    #[arg(long)]
    pub verify: bool,
    /// Corpus file (default: the built-in corpus).
    #[arg(long, requires = "verify")]
    pub corpus: Option<String>,
}

/// One row of the table: `s = t_j ∈ T_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u32,
    pub j: u32,
    /// Minimum distance `d = n - j`.
    pub d: u32,
    #[serde(with = "codebounds::serde_util::rational")]
    pub ell: Scalar,
    #[serde(with = "codebounds::serde_util::rational")]
    pub s: Scalar,
    /// `(-1/n, 2/(n(n-3))]`, exact.
    pub l2_window: String,
    pub in_l2_window: bool,
    #[serde(with = "codebounds::serde_util::rational_opt")]
    pub l2_formula: Option<Scalar>,
    /// `L_2` from the quadrature, when `k = 1` is valid.
    #[serde(with = "codebounds::serde_util::rational_opt")]
    pub l2_computed: Option<Scalar>,
    /// The `L_4` window; its endpoints are irrational and shown rounded.
    pub l4_window: String,
    pub in_l4_window: bool,
    #[serde(with = "codebounds::serde_util::rational_vec")]
    pub l4_coefficients: Vec<Scalar>,
    #[serde(with = "codebounds::serde_util::rational_opt")]
    pub l4_printed: Option<Scalar>,
    #[serde(with = "codebounds::serde_util::rational_opt")]
    pub l4_derived: Option<Scalar>,
    /// `L_4` from the quadrature, when `k = 2` is valid.
    #[serde(with = "codebounds::serde_util::rational_opt")]
    pub l4_computed: Option<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table {
    pub rows: Vec<TableRow>,
}

fn computed(space: &HammingSpace, ell: &Scalar, s: &Scalar, k: usize, prec: u32) -> Option<Scalar> {
    if 2 * k > space.n() as usize {
        return None;
    }
    let params = ProblemParams::from_inner(space.clone(), ell.clone(), s.clone(), k).ok()?;
    LevenshteinInstance::with_precision(&params, prec).ok().map(|inst| inst.value())
}

/// Rows for every `s ∈ T_n` with `s > ℓ`.
pub fn table(n: u32, prec: u32) -> Result<Table> {
    if n < 5 {
        return Err(BoundError::InvalidParams(format!("the table needs n ≥ 5, got {n}")));
    }
    let space = HammingSpace::new(n, 2)?;
    let ell = binary_ell(n);
    let (lo, hi) = binary_l2_window(n);
    let l2_window = format!("({}, {}]", format_rational(&lo), format_rational(&hi));
    let l4_window = if n > 5 {
        let (a, b) = binary_l4_window_f64(n);
        format!("({a:.6}, {b:.6}]")
    } else {
        "empty".to_string()
    };
    let l4_coefficients = binary_l4_coefficients(n).to_vec();
    let rows = (0..n)
        .map(|j| (j, space.t(j as usize).clone()))
        .filter(|(_, s)| s > &ell)
        .map(|(j, s)| TableRow {
            n,
            j,
            d: n - j,
            ell: ell.clone(),
            l2_window: l2_window.clone(),
            in_l2_window: in_binary_l2_window(n, &s),
            l2_formula: binary_l2(n, &s),
            l2_computed: computed(&space, &ell, &s, 1, prec),
            l4_window: l4_window.clone(),
            in_l4_window: in_binary_l4_window(n, &s),
            l4_coefficients: l4_coefficients.clone(),
            l4_printed: binary_l4_printed(n, &s),
            l4_derived: binary_l4_derived(n, &s),
            l4_computed: computed(&space, &ell, &s, 2, prec),
            s,
        })
        .collect();
    Ok(Table { rows })
}

impl Render for Table {
    fn text(&self) -> String {
        self.csv().unwrap_or_default()
    }

    fn csv(&self) -> Result<String> {
        let rows = self.rows.iter().map(|r| {
            let c = &r.l4_coefficients;
            vec![
                r.n.to_string(),
                r.j.to_string(),
                r.d.to_string(),
                r.ell.to_string(),
                r.s.to_string(),
                r.l2_window.clone(),
                r.in_l2_window.to_string(),
                opt(&r.l2_formula),
                opt(&r.l2_computed),
                r.l4_window.clone(),
                r.in_l4_window.to_string(),
                c[0].to_string(),
                c[1].to_string(),
                c[2].to_string(),
                c[3].to_string(),
                opt(&r.l4_printed),
                opt(&r.l4_derived),
                opt(&r.l4_computed),
            ]
        });
        csv_table(
            &[
                "n",
                "j",
                "d",
                "ell",
                "s",
                "l2_window",
                "in_l2_window",
                "l2_formula",
                "l2_computed",
                "l4_window",
                "in_l4_window",
                "A",
                "B",
                "C",
                "D",
                "l4_printed",
                "l4_derived",
                "l4_computed",
            ],
            rows,
        )
    }
}

// ---------------------------------------------------------------- corpus

/// What a corpus record checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordKind {
    /// `L_{2k}` equals `expected`.
    Bound,
    /// `L_2` equals `expected` and the closed `k = 1` formula for general `q`.
    Hkl,
    /// The forced distance distribution equals `counts`.
    Distribution,
}

/// A corpus record: parameters, expected values and a description of
/// where the values come from.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Record {
    pub source: String,
    pub kind: RecordKind,
    pub n: u32,
    pub q: u32,
    pub d: u32,
    #[serde(rename = "D")]
    pub dmax: u32,
    pub k: usize,
    /// Exact value, `"p/q"` or an integer.
    pub expected: Option<String>,
    /// `(distance, count)` pairs.
    pub counts: Option<Vec<(u32, u64)>>,
}

#[derive(Clone, Debug, Deserialize)]
struct Corpus {
    record: Vec<Record>,
}

/// Outcome of one record.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub source: String,
    pub kind: RecordKind,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

pub fn parse_corpus(text: &str) -> Result<Vec<Record>> {
    toml::from_str::<Corpus>(text).map(|c| c.record).map_err(|e| BoundError::InvalidParams(format!("bad corpus: {e}")))
}

fn expected_value(r: &Record) -> Result<Scalar> {
    let e = r.expected.as_deref().ok_or_else(|| BoundError::InvalidParams(format!("record `{}` lacks `expected`", r.source)))?;
    parse_rational(e).map_err(BoundError::InvalidParams)
}

fn check(r: &Record, prec: u32) -> Result<Check> {
    let params = ProblemParams::from_distances(r.n, r.q, r.d, r.dmax, r.k)?;
    let (expected, computed) = match r.kind {
        RecordKind::Bound => {
            let expected = expected_value(r)?;
            let value = LevenshteinInstance::with_precision(&params, prec)?.value();
            (expected.to_string(), value.to_string())
        }
        RecordKind::Hkl => {
            let expected = expected_value(r)?;
            let value = LevenshteinInstance::with_precision(&params, prec)?.value();
            let formula = hkl_bound(&params.space, &params.ell, &params.s);
            let shown = match &formula {
                Some(f) if f == &value => value.to_string(),
                other => format!("{value} (closed form {})", opt(other)),
            };
            (expected.to_string(), shown)
        }
        RecordKind::Distribution => {
            let counts = r.counts.as_ref().ok_or_else(|| BoundError::InvalidParams(format!("record `{}` lacks `counts`", r.source)))?;
            let mut want: Vec<(u32, u64)> = counts.clone();
            want.sort_unstable();
            let dist = distance_distribution(&params, prec)?;
            let got = dist.by_distance().map(|mut v| {
                v.sort();
                v
            });
            let show = |v: &[(u32, String)]| v.iter().map(|(d, c)| format!("{d}:{c}")).collect::<Vec<_>>().join(" ");
            let expected = show(&want.iter().map(|(d, c)| (*d, c.to_string())).collect::<Vec<_>>());
            let computed = match got {
                Some(v) => show(&v.iter().map(|(d, c)| (*d, c.to_string())).collect::<Vec<_>>()),
                None => "not attainable".to_string(),
            };
            (expected, computed)
        }
    };
    let pass = expected == computed;
    Ok(Check { source: r.source.clone(), kind: r.kind, expected, computed, pass })
}

/// Runs every record; a record whose computation errors fails.
pub fn verify(records: &[Record], prec: u32) -> Verification {
    let checks: Vec<Check> = records
        .iter()
        .map(|r| {
            check(r, prec).unwrap_or_else(|e| Check {
                source: r.source.clone(),
                kind: r.kind,
                expected: r.expected.clone().unwrap_or_default(),
                computed: format!("error: {e}"),
                pass: false,
            })
        })
        .collect();
    let passed = checks.iter().filter(|c| c.pass).count();
    Verification { failed: checks.len() - passed, passed, checks }
}

impl Render for Verification {
    fn text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out += &format!("{status} {}: expected {}, computed {}\n", c.source, c.expected, c.computed);
        }
        out += &format!("{} passed, {} failed\n", self.passed, self.failed);
        out
    }

    fn csv(&self) -> Result<String> {
        let rows = self.checks.iter().map(|c| vec![c.source.clone(), format!("{:?}", c.kind), c.expected.clone(), c.computed.clone(), c.pass.to_string()]);
        csv_table(&["source", "kind", "expected", "computed", "pass"], rows)
    }
}
