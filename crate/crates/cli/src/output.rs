//! Output plumbing: 15-significant-digit decimal formatting (always a
//! period decimal separator) and CSV/JSON writers that stamp the config
//! hash.

use std::io::Write;
use std::path::Path;

/// Format with 15 significant digits, positional where reasonable,
/// exponent notation otherwise.
pub fn fmt15(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if (-4..15).contains(&exp) {
        let decimals = (14 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        return trim_exponential(format!("{x:.14e}"));
    };
    trim_positional(s)
}

fn trim_positional(mut s: String) -> String {
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

fn trim_exponential(s: String) -> String {
    match s.split_once('e') {
        Some((mantissa, exp)) => {
            let m = trim_positional(mantissa.to_string());
            format!("{m}e{exp}")
        }
        None => s,
    }
}

/// Write `content` to the given path or stdout.
pub fn emit(out: Option<&Path>, content: &str) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, content),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(content.as_bytes())
        }
    }
}

/// Builder for CSV bodies: comment lines (config hash first), then a header
/// row naming the columns, then data rows.
pub struct Csv {
    comments: Vec<String>,
    header: String,
    rows: Vec<String>,
}

impl Csv {
    pub fn new(config_hash: &str, header: &[&str]) -> Self {
        Csv {
            comments: vec![format!("# config-hash: {config_hash}")],
            header: header.join(","),
            rows: Vec::new(),
        }
    }

    pub fn comment(&mut self, text: impl AsRef<str>) {
        self.comments.push(format!("# {}", text.as_ref()));
    }

    pub fn row(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().map(|v| fmt15(*v)).collect();
        self.rows.push(cells.join(","));
    }

    pub fn row_mixed(&mut self, cells: &[String]) {
        self.rows.push(cells.join(","));
    }

    pub fn finish(self) -> String {
        let mut lines = self.comments;
        lines.push(self.header);
        lines.extend(self.rows);
        let mut s = lines.join("\n");
        s.push('\n');
        s
    }
}
