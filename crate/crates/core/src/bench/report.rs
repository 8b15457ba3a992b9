use std::fmt::Write;
use std::str::FromStr;

use super::{BenchReport, BenchRow};
use crate::error::Error;
use crate::pca::Method;

pub const CSV_HEADER: &str = "method,l,accuracy,mean_time_s,p,m,discarded_w,rule,seed";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Markdown,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim().to_ascii_lowercase().as_str() {
            "markdown" | "md" => Ok(ReportFormat::Markdown),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::InvalidParameter(format!(
                "unknown report format `{other}`"
            ))),
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

fn csv(r: &BenchReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &r.rows {
        let (acc, time) = match &row.outcome {
            Ok(res) => (res.accuracy.to_string(), format!("{:.6}", res.mean_time_s)),
            Err(_) => ("error".to_string(), String::new()),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            row.method,
            row.l,
            acc,
            time,
            opt(row.p),
            opt(row.m),
            opt(row.discarded_w),
            opt(row.rule),
            row.seed
        );
    }
    out
}

fn title(m: Method) -> &'static str {
    match m {
        Method::Pca => "PCA",
        Method::Fisher => "Fisher LDA",
        Method::Dlda => "DLDA",
        Method::Dpca => "Discriminative PCA",
    }
}

fn markdown(r: &BenchReport) -> String {
    let mut methods: Vec<Method> = r.rows.iter().map(|row| row.method).collect();
    methods.dedup();
    let mut ls: Vec<usize> = r.rows.iter().map(|row| row.l).collect();
    ls.sort_unstable();
    ls.dedup();
    let cell = |m: Method, l: usize, f: &dyn Fn(&BenchRow) -> String| {
        r.rows
            .iter()
            .find(|row| row.method == m && row.l == l)
            .map(f)
            .unwrap_or_default()
    };

    let mut out = String::from("| Property |");
    for &m in &methods {
        let _ = write!(out, " {} |", title(m));
    }
    out.push_str("\n|---|");
    out.push_str(&"---|".repeat(methods.len()));
    out.push('\n');
    for &l in &ls {
        let _ = write!(out, "| Accuracy_{l} |");
        for &m in &methods {
            let v = cell(m, l, &|row| match &row.outcome {
                Ok(res) => format!("{:.2}%", res.accuracy * 100.0),
                Err(_) => "error".into(),
            });
            let _ = write!(out, " {v} |");
        }
        out.push('\n');
    }
    for &l in &ls {
        let _ = write!(out, "| Running time_{l} |");
        for &m in &methods {
            let v = cell(m, l, &|row| match &row.outcome {
                Ok(res) => format!("{:.6}", res.mean_time_s),
                Err(_) => "error".into(),
            });
            let _ = write!(out, " {v} |");
        }
        out.push('\n');
    }

    let _ = write!(
        out,
        "\nDataset: {} x {} ({} classes), sha256 {}. Running time is the mean of {} runs of fit + evaluation, in seconds.\n\n",
        r.dim, r.samples, r.classes, r.dataset_fingerprint, r.repeats
    );
    out.push_str("| method | l | p | m | discarded_w | rule | seed | note |\n|---|---|---|---|---|---|---|---|\n");
    for row in &r.rows {
        let note = row.outcome.as_ref().err().cloned().unwrap_or_default();
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} |",
            row.method,
            row.l,
            opt(row.p),
            opt(row.m),
            opt(row.discarded_w),
            opt(row.rule),
            row.seed,
            note.replace('|', "/")
        );
    }
    out
}

pub fn emit_report(r: &BenchReport, fmt: ReportFormat) -> Vec<u8> {
    match fmt {
        ReportFormat::Csv => csv(r),
        ReportFormat::Markdown => markdown(r),
    }
    .into_bytes()
}
