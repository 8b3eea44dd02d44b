//! CSV and JSON rendering of cycle, sweep and entanglement results.

use qdotto_core::{CriticalPoint, CycleResult, EntanglementReport, SweepRow};
use serde::Serialize;

use crate::config::RunConfig;
use crate::CliError;

pub const SWEEP_HEADER: [&str; 10] = [
    "lambda_mev",
    "w_mev",
    "q_hot_mev",
    "q_cold_mev",
    "efficiency",
    "mode",
    "c12",
    "c13",
    "c23",
    "tau3",
];
pub const CYCLE_HEADER: [&str; 5] = ["w_mev", "q_hot_mev", "q_cold_mev", "efficiency", "mode"];
pub const ENTANGLE_HEADER: [&str; 6] = ["state", "lambda_mev", "c12", "c13", "c23", "tau3"];
pub const CRITICALS_HEADER: [&str; 3] = ["column", "lambda_mev", "direction"];

/// Formats with 9 significant digits, in plain decimal notation for
/// moderate magnitudes and scientific notation otherwise. Trailing zeros
/// are dropped and negative zero prints as `0`.
pub fn fmt_sig(x: f64) -> String {
    const DIGITS: i32 = 9;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // Round first so the exponent reflects carries such as 9.9999999996 → 10.
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci
        .split_once('e')
        .expect("scientific format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    let t = if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    };
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_default()
}

fn csv_block<const N: usize>(
    header: [&str; N],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("CSV output is UTF-8"))
}

pub fn cycle_csv(r: &CycleResult) -> Result<String, CliError> {
    csv_block(
        CYCLE_HEADER,
        [vec![
            fmt_sig(r.w),
            fmt_sig(r.q_hot),
            fmt_sig(r.q_cold),
            opt(r.efficiency),
            r.mode.to_string(),
        ]],
    )
}

pub fn sweep_csv(
    rows: &[SweepRow],
    criticals: &[(String, CriticalPoint)],
) -> Result<String, CliError> {
    let mut out = csv_block(
        SWEEP_HEADER,
        rows.iter().map(|r| {
            vec![
                fmt_sig(r.lambda_mev),
                fmt_sig(r.w_mev),
                fmt_sig(r.q_hot_mev),
                fmt_sig(r.q_cold_mev),
                opt(r.efficiency),
                r.mode.to_string(),
                opt(r.c12),
                opt(r.c13),
                opt(r.c23),
                opt(r.tau3),
            ]
        }),
    )?;
    if !criticals.is_empty() {
        out.push('\n');
        out.push_str(&criticals_csv(criticals)?);
    }
    Ok(out)
}

/// The critical-λ summary table appended to sweep output.
pub fn criticals_csv(criticals: &[(String, CriticalPoint)]) -> Result<String, CliError> {
    csv_block(
        CRITICALS_HEADER,
        criticals.iter().map(|(col, c)| {
            vec![
                col.clone(),
                fmt_sig(c.lambda_mev),
                c.direction.as_str().to_string(),
            ]
        }),
    )
}

pub fn entangle_csv(lambda_mev: f64, r: &EntanglementReport) -> Result<String, CliError> {
    csv_block(
        ENTANGLE_HEADER,
        [vec![
            r.state_tag.as_str().to_string(),
            fmt_sig(lambda_mev),
            fmt_sig(r.c12),
            fmt_sig(r.c13),
            fmt_sig(r.c23),
            fmt_sig(r.tau3),
        ]],
    )
}

#[derive(Serialize)]
struct Metadata<'a> {
    version: &'static str,
    config: &'a RunConfig,
}

#[derive(Serialize)]
pub struct CycleRecord {
    pub w_mev: f64,
    pub q_hot_mev: f64,
    pub q_cold_mev: f64,
    pub efficiency: Option<f64>,
    pub mode: String,
}

impl From<&CycleResult> for CycleRecord {
    fn from(r: &CycleResult) -> Self {
        Self {
            w_mev: r.w,
            q_hot_mev: r.q_hot,
            q_cold_mev: r.q_cold,
            efficiency: r.efficiency,
            mode: r.mode.to_string(),
        }
    }
}

#[derive(Serialize)]
pub struct EntangleRecord {
    pub state: &'static str,
    pub lambda_mev: f64,
    pub c12: f64,
    pub c13: f64,
    pub c23: f64,
    pub tau3: f64,
}

impl EntangleRecord {
    pub fn new(lambda_mev: f64, r: &EntanglementReport) -> Self {
        Self {
            state: r.state_tag.as_str(),
            lambda_mev,
            c12: r.c12,
            c13: r.c13,
            c23: r.c23,
            tau3: r.tau3,
        }
    }
}

#[derive(Serialize)]
pub struct CriticalRecord<'a> {
    pub column: &'a str,
    pub lambda_mev: f64,
    pub direction: &'static str,
}

#[derive(Serialize)]
struct Document<'a, R: Serialize> {
    metadata: Metadata<'a>,
    rows: &'a [R],
    #[serde(skip_serializing_if = "Option::is_none")]
    criticals: Option<Vec<CriticalRecord<'a>>>,
}

/// A single JSON document: the resolved config, the rows and, when
/// requested, the critical points.
pub fn json_document<R: Serialize>(
    config: &RunConfig,
    rows: &[R],
    criticals: Option<&[(String, CriticalPoint)]>,
) -> String {
    let doc = Document {
        metadata: Metadata {
            version: env!("CARGO_PKG_VERSION"),
            config,
        },
        rows,
        criticals: criticals.map(|cs| {
            cs.iter()
                .map(|(col, c)| CriticalRecord {
                    column: col,
                    lambda_mev: c.lambda_mev,
                    direction: c.direction.as_str(),
                })
                .collect()
        }),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("output serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdotto_core::{Direction, Mode};

    #[test]
    fn nine_significant_digits() {
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(-0.0), "0");
        assert_eq!(fmt_sig(1.0), "1");
        assert_eq!(fmt_sig(0.3), "0.3");
        assert_eq!(fmt_sig(1.392093769255172), "1.39209377");
        assert_eq!(fmt_sig(-1.044070326941379), "-1.04407033");
        assert_eq!(fmt_sig(123456789.4), "123456789");
        assert_eq!(fmt_sig(1234567891.0), "1.23456789e9");
        assert_eq!(fmt_sig(9.9999999996), "10");
        assert_eq!(fmt_sig(0.000123456789123), "0.000123456789");
        assert_eq!(fmt_sig(1.5e-7), "1.5e-7");
        assert_eq!(fmt_sig(-2.5e-12), "-2.5e-12");
    }

    #[test]
    fn nine_digits_survive_reparse() {
        for x in [std::f64::consts::PI, -1e-9 / 3.0, 2.0f64.sqrt() * 1e5] {
            let back: f64 = fmt_sig(x).parse().unwrap();
            assert!(((back - x) / x).abs() < 5e-9);
        }
    }

    #[test]
    fn sweep_csv_layout() {
        let row = SweepRow {
            lambda_mev: 0.5,
            w_mev: 1.0,
            q_hot_mev: 2.0,
            q_cold_mev: -1.0,
            efficiency: Some(0.5),
            mode: Mode::Engine,
            c12: None,
            c13: None,
            c23: None,
            tau3: None,
        };
        let crit = vec![(
            "w_mev".to_string(),
            CriticalPoint {
                lambda_mev: 3.05,
                direction: Direction::Falling,
            },
        )];
        let out = sweep_csv(&[row], &crit).unwrap();
        assert_eq!(
            out,
            "lambda_mev,w_mev,q_hot_mev,q_cold_mev,efficiency,mode,c12,c13,c23,tau3\n\
             0.5,1,2,-1,0.5,Engine,,,,\n\
             \n\
             column,lambda_mev,direction\n\
             w_mev,3.05,falling\n"
        );
    }
}
