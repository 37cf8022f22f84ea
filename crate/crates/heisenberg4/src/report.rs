//! Deterministic text output: significant-digit number formatting and the
//! CSV / JSON / plain-text renderings used by the command-line front end.
//!
//! Rendering is pure string assembly — identical inputs yield identical
//! bytes, and parsing a rendered number back and re-rendering it at the
//! same precision reproduces the same text.

use crate::analysis::{Locus, LocusKind, MeasureRecord, VerifyReport};

/// Default significant digits, enough to survive a parse/re-render cycle.
pub const DEFAULT_PRECISION: usize = 15;

/// Column names of a full record, in wire order.
pub const CSV_HEADER_FULL: &str = "alpha,t,phi,F_analytic,F_oracle,Cl1_rho34_analytic,\
Cl1_rho34_oracle,Cl1_full_oracle,C12_analytic,C12_oracle,C34_analytic,C34_oracle,\
EF12_eq22,EF12_simplified,EF12_oracle,EF34_eq24,EF34_simplified,EF34_oracle";

/// Column names with the oracle columns omitted.
pub const CSV_HEADER_ANALYTIC: &str = "alpha,t,phi,F_analytic,Cl1_rho34_analytic,\
C12_analytic,C34_analytic,EF12_eq22,EF12_simplified,EF34_eq24,EF34_simplified";

/// Render with `sig` significant digits in plain-or-scientific shortest
/// form (printf %g semantics): plain decimal while the exponent fits,
/// scientific otherwise, trailing zeros trimmed.
pub fn format_sig(x: f64, sig: usize) -> String {
    let sig = sig.max(1);
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".to_string()
        } else if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }

    // Correctly rounded scientific form, e.g. "7.07106781186548e-1".
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp_part) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp_part.parse().expect("exponent");
    let negative = mantissa.starts_with('-');
    let digits: Vec<u8> = mantissa.bytes().filter(|b| b.is_ascii_digit()).collect();

    let body = if -4 <= exp && exp < sig as i32 {
        plain_from_digits(&digits, exp)
    } else {
        scientific_from_digits(&digits, exp)
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn trim_fraction(fraction: &[u8]) -> &[u8] {
    let mut end = fraction.len();
    while end > 0 && fraction[end - 1] == b'0' {
        end -= 1;
    }
    &fraction[..end]
}

fn plain_from_digits(digits: &[u8], exp: i32) -> String {
    let mut out = String::new();
    if exp >= 0 {
        let int_len = exp as usize + 1;
        for k in 0..int_len {
            out.push(*digits.get(k).unwrap_or(&b'0') as char);
        }
        let fraction = trim_fraction(digits.get(int_len..).unwrap_or(&[]));
        if !fraction.is_empty() {
            out.push('.');
            out.push_str(std::str::from_utf8(fraction).unwrap());
        }
    } else {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(std::str::from_utf8(trim_fraction(digits)).unwrap());
    }
    out
}

fn scientific_from_digits(digits: &[u8], exp: i32) -> String {
    let mut out = String::new();
    out.push(digits[0] as char);
    let fraction = trim_fraction(&digits[1..]);
    if !fraction.is_empty() {
        out.push('.');
        out.push_str(std::str::from_utf8(fraction).unwrap());
    }
    out.push('e');
    out.push_str(&exp.to_string());
    out
}

/// Wire-name/value pairs of a full record, in column order. The CSV,
/// JSON and Python views all feed from this one mapping.
pub fn record_columns(r: &MeasureRecord) -> [(&'static str, f64); 18] {
    [
        ("alpha", r.alpha),
        ("t", r.t),
        ("phi", r.phi),
        ("F_analytic", r.f_analytic),
        ("F_oracle", r.f_oracle),
        ("Cl1_rho34_analytic", r.cl1_rho34_analytic),
        ("Cl1_rho34_oracle", r.cl1_rho34_oracle),
        ("Cl1_full_oracle", r.cl1_full_oracle),
        ("C12_analytic", r.c12_analytic),
        ("C12_oracle", r.c12_oracle),
        ("C34_analytic", r.c34_analytic),
        ("C34_oracle", r.c34_oracle),
        ("EF12_eq22", r.ef12_published),
        ("EF12_simplified", r.ef12_simplified),
        ("EF12_oracle", r.ef12_oracle),
        ("EF34_eq24", r.ef34_published),
        ("EF34_simplified", r.ef34_simplified),
        ("EF34_oracle", r.ef34_oracle),
    ]
}

fn analytic_columns(r: &MeasureRecord) -> [(&'static str, f64); 11] {
    [
        ("alpha", r.alpha),
        ("t", r.t),
        ("phi", r.phi),
        ("F_analytic", r.f_analytic),
        ("Cl1_rho34_analytic", r.cl1_rho34_analytic),
        ("C12_analytic", r.c12_analytic),
        ("C34_analytic", r.c34_analytic),
        ("EF12_eq22", r.ef12_published),
        ("EF12_simplified", r.ef12_simplified),
        ("EF34_eq24", r.ef34_published),
        ("EF34_simplified", r.ef34_simplified),
    ]
}

fn csv_row(values: &[(&'static str, f64)], sig: usize) -> String {
    values
        .iter()
        .map(|(_, v)| format_sig(*v, sig))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn records_to_csv(records: &[MeasureRecord], sig: usize, include_oracle: bool) -> String {
    let mut out = String::new();
    out.push_str(if include_oracle {
        CSV_HEADER_FULL
    } else {
        CSV_HEADER_ANALYTIC
    });
    out.push('\n');
    for r in records {
        let row = if include_oracle {
            csv_row(&record_columns(r), sig)
        } else {
            csv_row(&analytic_columns(r), sig)
        };
        out.push_str(&row);
        out.push('\n');
    }
    out
}

fn json_object(values: &[(&'static str, f64)], sig: usize) -> String {
    let fields: Vec<String> = values
        .iter()
        .map(|(name, v)| format!("\"{name}\":{}", format_sig(*v, sig)))
        .collect();
    format!("{{{}}}", fields.join(","))
}

/// One object per record under a top-level array, field names identical to
/// the CSV columns.
pub fn records_to_json(records: &[MeasureRecord], sig: usize, include_oracle: bool) -> String {
    let mut rows = Vec::with_capacity(records.len());
    for r in records {
        rows.push(if include_oracle {
            json_object(&record_columns(r), sig)
        } else {
            json_object(&analytic_columns(r), sig)
        });
    }
    format!("[\n{}\n]\n", rows.join(",\n"))
}

pub fn verify_to_text(report: &VerifyReport, sig: usize) -> String {
    let mut out = String::new();
    out.push_str("verify: pinned reference digits vs closed forms vs numerical oracle\n");
    for row in &report.rows {
        let row_ok = row
            .cells
            .iter()
            .all(|c| c.digits_ok && c.rel_err < report.rel_err_bound);
        out.push_str(&format!(
            "[{}] alpha={} t={} phi={}\n",
            if row_ok { "PASS" } else { "FAIL" },
            format_sig(row.alpha, sig),
            format_sig(row.t, sig),
            format_sig(row.phi, sig),
        ));
        for cell in &row.cells {
            out.push_str(&format!(
                "    {:<4} analytic={} oracle={} reference={} (tol {}) rel_err={}{}\n",
                cell.name,
                format_sig(cell.analytic, sig),
                format_sig(cell.oracle, sig),
                format_sig(cell.printed, sig),
                format_sig(cell.printed_tol, 3),
                format_sig(cell.rel_err, 3),
                if cell.digits_ok {
                    ""
                } else {
                    "  <- digit mismatch"
                },
            ));
        }
    }
    out.push_str(&format!(
        "max analytic-vs-oracle relative error: {} (bound {})\n",
        format_sig(report.max_rel_err, 3),
        format_sig(report.rel_err_bound, 3),
    ));
    out.push_str(if report.passed {
        "overall: PASS\n"
    } else {
        "overall: FAIL\n"
    });
    out
}

pub fn verify_to_json(report: &VerifyReport, sig: usize) -> String {
    let mut rows = Vec::new();
    for row in &report.rows {
        let cells: Vec<String> = row
            .cells
            .iter()
            .map(|c| {
                format!(
                    "{{\"name\":\"{}\",\"analytic\":{},\"oracle\":{},\"reference\":{},\
\"reference_tol\":{},\"digits_ok\":{},\"rel_err\":{}}}",
                    c.name,
                    format_sig(c.analytic, sig),
                    format_sig(c.oracle, sig),
                    format_sig(c.printed, sig),
                    format_sig(c.printed_tol, 3),
                    c.digits_ok,
                    format_sig(c.rel_err, 3),
                )
            })
            .collect();
        rows.push(format!(
            "{{\"alpha\":{},\"t\":{},\"phi\":{},\"cells\":[{}]}}",
            format_sig(row.alpha, sig),
            format_sig(row.t, sig),
            format_sig(row.phi, sig),
            cells.join(","),
        ));
    }
    format!(
        "{{\"passed\":{},\"max_rel_err\":{},\"rel_err_bound\":{},\"rows\":[{}]}}\n",
        report.passed,
        format_sig(report.max_rel_err, 3),
        format_sig(report.rel_err_bound, 3),
        rows.join(","),
    )
}

pub fn locus_kind_label(kind: LocusKind) -> &'static str {
    match kind {
        LocusKind::MaxSensitivity => "max_sensitivity",
        LocusKind::CoherenceMaxSlope => "coherence_max_slope",
        LocusKind::Extremum => "extremum",
    }
}

pub fn loci_to_text(alpha: f64, loci: &[Locus], sig: usize) -> String {
    let mut out = format!(
        "loci for alpha={} (phase rate alpha+1 = {})\n",
        format_sig(alpha, sig),
        format_sig(alpha + 1.0, sig),
    );
    for l in loci {
        out.push_str(&format!(
            "  k={:<3} {:<19} phi={:<22} t={}\n",
            l.k,
            locus_kind_label(l.kind),
            format_sig(l.phi, sig),
            format_sig(l.t, sig),
        ));
    }
    out
}

pub fn loci_to_csv(loci: &[Locus], sig: usize) -> String {
    let mut out = String::from("kind,k,phi,t\n");
    for l in loci {
        out.push_str(&format!(
            "{},{},{},{}\n",
            locus_kind_label(l.kind),
            l.k,
            format_sig(l.phi, sig),
            format_sig(l.t, sig),
        ));
    }
    out
}

pub fn loci_to_json(loci: &[Locus], sig: usize) -> String {
    let rows: Vec<String> = loci
        .iter()
        .map(|l| {
            format!(
                "{{\"kind\":\"{}\",\"k\":{},\"phi\":{},\"t\":{}}}",
                locus_kind_label(l.kind),
                l.k,
                format_sig(l.phi, sig),
                format_sig(l.t, sig),
            )
        })
        .collect();
    format!("[\n{}\n]\n", rows.join(",\n"))
}
