//! Report rendering: aligned tables at 6 significant digits, CSV and JSON
//! at full precision.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Formats with 6 significant digits for table output.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (5 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Full-precision decimal that round-trips through parsing.
pub fn full(x: f64) -> String {
    format!("{x}")
}

/// Renders rows as a left-aligned table under a header.
pub fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let render = |cells: Vec<String>, widths: &[usize], out: &mut String| {
        let line: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    };
    render(headers.iter().map(|h| h.to_string()).collect(), &widths, &mut out);
    for row in rows {
        render(row.clone(), &widths, &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sig6_examples() {
        assert_eq!(sig6(0.0976012345), "0.0976012");
        assert_eq!(sig6(123456.789), "123457");
        assert_eq!(sig6(0.5), "0.500000");
        assert_eq!(sig6(0.0), "0");
    }

    #[test]
    fn full_round_trips() {
        for &x in &[0.1, 1.0 / 3.0, 1e-17, 123456.7891234] {
            let s = full(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
        }
    }
}
