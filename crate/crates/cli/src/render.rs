//! Serializable command outputs and their JSON, CSV and text renderings.
//! Rationals are always written as `p/q` strings.

use clap::ValueEnum;
use monogenic::extremal::ExtremalReport;
use monogenic::linalg::CertificateStatus;
use monogenic::poly::format_poly;
use monogenic::rational::format_rational;
use monogenic::subharmonic::{GradientField, SampleResult, SubharmonicityCheck, Verdict};
use monogenic::{HPolynomial, Rational, Result, Setting};
use num_traits::{Signed, Zero};
use serde::Serialize;

pub type Rendered = String;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

fn r(x: &Rational) -> String {
    format_rational(x)
}

fn point(x: &[Rational]) -> Vec<String> {
    x.iter().map(r).collect()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: &[String]) -> String {
    let mut line = fields.iter().map(|f| csv_field(f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

fn json<T: Serialize>(value: &T) -> Rendered {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn status_name(s: CertificateStatus) -> &'static str {
    match s {
        CertificateStatus::Certified => "Certified",
        CertificateStatus::Refuted => "Refuted",
    }
}

#[derive(Serialize, Debug)]
pub struct SettingInfo {
    pub name: &'static str,
    pub n: usize,
}

impl SettingInfo {
    fn of(s: Setting) -> Self {
        SettingInfo { name: s.name(), n: s.dimension() }
    }
}

#[derive(Serialize, Debug)]
pub struct TableRow {
    pub m: usize,
    pub m_closed: String,
    pub alpha0: String,
    pub m_certified: Option<String>,
    pub status: &'static str,
    pub random_directions_passed: usize,
    pub random_directions: usize,
}

#[derive(Serialize, Debug)]
pub struct TableOutput {
    pub command: &'static str,
    pub setting: SettingInfo,
    pub seed: u64,
    pub rows: Vec<TableRow>,
}

impl TableOutput {
    pub fn new(setting: Setting, seed: u64, reports: &[ExtremalReport]) -> Self {
        let rows = reports
            .iter()
            .map(|rep| TableRow {
                m: rep.m,
                m_closed: r(&rep.m_closed),
                alpha0: r(&rep.alpha0),
                m_certified: rep.m_certified.as_ref().map(r),
                status: if rep.all_passed() { "Certified" } else { "Refuted" },
                random_directions_passed: rep.random_direction_checks,
                random_directions: rep.random_directions,
            })
            .collect();
        TableOutput { command: "table", setting: SettingInfo::of(setting), seed, rows }
    }

    pub fn render(&self, format: Format) -> Rendered {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let mut out = csv_line(&["setting", "n", "m", "M", "alpha0", "M_certified", "status", "directions"].map(String::from));
                for row in &self.rows {
                    out += &csv_line(&[
                        self.setting.name.to_string(),
                        self.setting.n.to_string(),
                        row.m.to_string(),
                        row.m_closed.clone(),
                        row.alpha0.clone(),
                        row.m_certified.clone().unwrap_or_default(),
                        row.status.to_string(),
                        format!("{}/{}", row.random_directions_passed, row.random_directions),
                    ]);
                }
                out
            }
            Format::Text => {
                let mut out = format!("{} (n = {}), direction seed {}\n", self.setting.name, self.setting.n, self.seed);
                out += &format!("{:>3}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}\n", "m", "M", "alpha0", "certified", "status", "directions");
                for row in &self.rows {
                    out += &format!(
                        "{:>3}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}\n",
                        row.m,
                        row.m_closed,
                        row.alpha0,
                        row.m_certified.as_deref().unwrap_or("-"),
                        row.status,
                        format!("{}/{}", row.random_directions_passed, row.random_directions)
                    );
                }
                out
            }
        }
    }
}

#[derive(Serialize, Debug)]
pub struct PieceRatio {
    pub s: usize,
    pub k: usize,
    pub ratio: String,
}

#[derive(Serialize, Debug)]
pub struct CertificateInfo {
    pub status: &'static str,
    pub lambda: String,
    pub witness: Vec<String>,
    pub failure: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct DirectionChecks {
    pub passed: usize,
    pub total: usize,
    pub seed: u64,
    pub checked_dimensions: Vec<usize>,
}

#[derive(Serialize, Debug)]
pub struct CertifyOutput {
    pub command: &'static str,
    pub setting: SettingInfo,
    pub m: usize,
    pub basis_dimension: usize,
    pub m_closed: String,
    pub m_certified: Option<String>,
    pub alpha0: String,
    pub lambda_star: String,
    pub piece_ratios: Vec<PieceRatio>,
    pub certificate: CertificateInfo,
    pub random_direction_checks: DirectionChecks,
    pub float_lambda: f64,
}

impl CertifyOutput {
    pub fn new(rep: &ExtremalReport, seed: u64) -> Self {
        CertifyOutput {
            command: "certify",
            setting: SettingInfo::of(rep.setting),
            m: rep.m,
            basis_dimension: rep.basis_dimension,
            m_closed: r(&rep.m_closed),
            m_certified: rep.m_certified.as_ref().map(r),
            alpha0: r(&rep.alpha0),
            lambda_star: r(&rep.lambda_star),
            piece_ratios: rep
                .piece_ratios
                .iter()
                .map(|(&s, v)| PieceRatio { s, k: rep.m + 1 - s, ratio: r(v) })
                .collect(),
            certificate: CertificateInfo {
                status: status_name(rep.certificate.status),
                lambda: r(&rep.certificate.lambda),
                witness: point(&rep.certificate.witness),
                failure: rep.certificate.failure.clone(),
            },
            random_direction_checks: DirectionChecks {
                passed: rep.random_direction_checks,
                total: rep.random_directions,
                seed,
                checked_dimensions: rep.direction_check_dimensions.clone(),
            },
            float_lambda: rep.float_lambda,
        }
    }

    fn pairs(&self) -> Vec<(String, String)> {
        let mut v = vec![
            ("setting".to_string(), self.setting.name.to_string()),
            ("n".into(), self.setting.n.to_string()),
            ("m".into(), self.m.to_string()),
            ("basis_dimension".into(), self.basis_dimension.to_string()),
            ("M_closed".into(), self.m_closed.clone()),
            ("M_certified".into(), self.m_certified.clone().unwrap_or_default()),
            ("alpha0".into(), self.alpha0.clone()),
            ("lambda_star".into(), self.lambda_star.clone()),
            ("status".into(), self.certificate.status.to_string()),
            (
                "random_directions".into(),
                format!("{}/{}", self.random_direction_checks.passed, self.random_direction_checks.total),
            ),
        ];
        for p in &self.piece_ratios {
            v.push((format!("piece_ratio_s{}", p.s), p.ratio.clone()));
        }
        if let Some(f) = &self.certificate.failure {
            v.push(("failure".into(), f.clone()));
        }
        v
    }

    pub fn render(&self, format: Format) -> Rendered {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let mut out = csv_line(&["key".into(), "value".into()]);
                for (k, v) in self.pairs() {
                    out += &csv_line(&[k, v]);
                }
                out
            }
            Format::Text => self.pairs().into_iter().map(|(k, v)| format!("{k:<18} {v}\n")).collect(),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct Piece {
    pub j: usize,
    pub degree: usize,
    pub polynomial: String,
}

#[derive(Serialize, Debug)]
pub struct DecomposeOutput {
    pub command: &'static str,
    pub setting: SettingInfo,
    pub input: String,
    pub degree: usize,
    pub pieces: Vec<Piece>,
}

impl DecomposeOutput {
    pub fn new(setting: Setting, p: &HPolynomial, degree: usize, pieces: &[HPolynomial]) -> Self {
        DecomposeOutput {
            command: "decompose",
            setting: SettingInfo::of(setting),
            input: format_poly(p),
            degree,
            pieces: pieces
                .iter()
                .enumerate()
                .map(|(j, m)| Piece { j, degree: degree - j, polynomial: format_poly(m) })
                .collect(),
        }
    }

    pub fn render(&self, format: Format) -> Rendered {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let mut out = csv_line(&["j".into(), "degree".into(), "polynomial".into()]);
                for p in &self.pieces {
                    out += &csv_line(&[p.j.to_string(), p.degree.to_string(), p.polynomial.clone()]);
                }
                out
            }
            Format::Text => {
                let mut out = format!("input: {}\n", self.input);
                for p in &self.pieces {
                    out += &format!("xu^{} * ({})\n", p.j, p.polynomial);
                }
                out
            }
        }
    }
}

#[derive(Serialize, Debug)]
pub struct ExtendOutput {
    pub command: &'static str,
    pub setting: SettingInfo,
    pub input: String,
    pub extension: String,
    pub monogenic: bool,
}

impl ExtendOutput {
    pub fn new(setting: Setting, p: &HPolynomial, f: &HPolynomial, monogenic: bool) -> Self {
        ExtendOutput {
            command: "extend",
            setting: SettingInfo::of(setting),
            input: format_poly(p),
            extension: format_poly(f),
            monogenic,
        }
    }

    pub fn render(&self, format: Format) -> Rendered {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                csv_line(&["input".into(), "extension".into(), "monogenic".into()])
                    + &csv_line(&[self.input.clone(), self.extension.clone(), self.monogenic.to_string()])
            }
            Format::Text => format!("{}\n", self.extension),
        }
    }
}

#[derive(Serialize, Debug)]
pub struct SampleRow {
    pub point: Vec<String>,
    /// `s_α` at the point; absent when skipped.
    pub value: Option<String>,
    pub sign: &'static str,
    pub rayleigh: Option<String>,
}

#[derive(Serialize, Debug)]
pub struct CheckOutput {
    pub command: &'static str,
    pub setting: SettingInfo,
    pub m: usize,
    pub alpha: String,
    pub source: &'static str,
    pub polynomial: String,
    pub seed: u64,
    pub verdict: &'static str,
    pub violation_point: Option<Vec<String>>,
    pub evaluated: usize,
    pub skipped: usize,
    pub violations: usize,
    pub samples: Vec<SampleRow>,
}

impl CheckOutput {
    pub fn new(
        setting: Setting,
        check: &SubharmonicityCheck,
        field: &GradientField,
        source: &'static str,
        seed: u64,
    ) -> Result<Self> {
        let mut samples = Vec::with_capacity(check.samples.len());
        for (x, res) in check.samples.iter().zip(&check.results) {
            let row = match res {
                SampleResult::Skipped => SampleRow { point: point(x), value: None, sign: "skipped", rayleigh: None },
                SampleResult::Value(v) => SampleRow {
                    point: point(x),
                    value: Some(r(v)),
                    sign: if v.is_negative() {
                        "negative"
                    } else if v.is_zero() {
                        "zero"
                    } else {
                        "positive"
                    },
                    rayleigh: field.rayleigh(x)?.as_ref().map(r),
                },
            };
            samples.push(row);
        }
        let (verdict, violation_point) = match &check.verdict {
            Verdict::AllNonnegative => ("AllNonnegative", None),
            Verdict::ViolationAt(x) => ("ViolationAt", Some(point(x))),
        };
        Ok(CheckOutput {
            command: "check",
            setting: SettingInfo::of(setting),
            m: check.m,
            alpha: r(&check.alpha),
            source,
            polynomial: format_poly(&check.f),
            seed,
            verdict,
            violation_point,
            evaluated: check.evaluated(),
            skipped: check.skipped(),
            violations: check.violations(),
            samples,
        })
    }

    pub fn render(&self, format: Format) -> Rendered {
        match format {
            Format::Json => json(self),
            Format::Csv => {
                let mut out = csv_line(&["point".into(), "value".into(), "sign".into(), "rayleigh".into()]);
                for s in &self.samples {
                    out += &csv_line(&[
                        s.point.join(";"),
                        s.value.clone().unwrap_or_default(),
                        s.sign.to_string(),
                        s.rayleigh.clone().unwrap_or_default(),
                    ]);
                }
                out
            }
            Format::Text => {
                let mut out = format!(
                    "{} m={} alpha={} ({}): {}\nevaluated {}, skipped {}, violations {}\n",
                    self.setting.name, self.m, self.alpha, self.source, self.verdict, self.evaluated, self.skipped, self.violations
                );
                if let Some(p) = &self.violation_point {
                    out += &format!("first violation at ({})\n", p.join(", "));
                }
                out
            }
        }
    }
}
