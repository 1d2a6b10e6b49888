//! Number formatting and CSV emission.

use std::io::Write;

use anyhow::Result;

use crate::config::RunConfig;

/// Formats with 12 significant digits, like C's `%.12g`.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..12).contains(&exp) {
        format!("{}e{exp}", trim_zeros(mant))
    } else {
        let decimals = (11 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// `x` rounded to the precision [`fmt_num`] prints.
pub fn round_sig(x: f64) -> f64 {
    fmt_num(x).parse().unwrap_or(x)
}

/// Comment line recording the tool version and the resolved configuration.
pub fn header_comment(config: &RunConfig) -> Result<String> {
    Ok(format!("# orum {} {}", env!("CARGO_PKG_VERSION"), serde_json::to_string(config)?))
}

/// Writes the comment line, the column header, then `rows`.
pub fn write_csv<W: Write>(mut w: W, config: &RunConfig, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    writeln!(w, "{}", header_comment(config)?)?;
    let mut csv = csv::Writer::from_writer(w);
    csv.write_record(header)?;
    for r in rows {
        csv.write_record(r)?;
    }
    csv.flush()?;
    Ok(())
}
