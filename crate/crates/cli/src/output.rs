use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

/// C-style `%.12e`: mantissa with 12 decimals, signed exponent of at least two digits.
pub fn sci(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let s = format!("{x:.12e}");
    let (mant, exp) = s.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    format!("{mant}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
}

/// CSV text: `#` metadata lines, one header line, then rows.
#[derive(Debug, Default)]
pub struct Table {
    text: String,
}

impl Table {
    pub fn comment(&mut self, line: impl AsRef<str>) {
        let _ = writeln!(self.text, "# {}", line.as_ref());
    }

    pub fn header(&mut self, cols: &[&str]) {
        self.text.push_str(&cols.join(","));
        self.text.push('\n');
    }

    pub fn header_owned(&mut self, cols: &[String]) {
        self.text.push_str(&cols.join(","));
        self.text.push('\n');
    }

    pub fn row(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().map(|v| sci(*v)).collect();
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    /// A row whose first cell is text.
    pub fn labelled_row(&mut self, label: &str, values: &[f64], tail: &str) {
        self.text.push_str(label);
        for v in values {
            self.text.push(',');
            self.text.push_str(&sci(*v));
        }
        if !tail.is_empty() {
            self.text.push(',');
            self.text.push_str(tail);
        }
        self.text.push('\n');
    }

    pub fn write_to(&self, path: Option<&Path>) -> io::Result<()> {
        match path {
            Some(p) => fs::write(p, &self.text),
            None => {
                let mut out = io::stdout().lock();
                out.write_all(self.text.as_bytes())?;
                out.flush()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_style_exponent() {
        assert_eq!(sci(1.0), "1.000000000000e+00");
        assert_eq!(sci(-0.00123), "-1.230000000000e-03");
        assert_eq!(sci(6.02e123), "6.020000000000e+123");
        assert_eq!(sci(0.0), "0.000000000000e+00");
        assert_eq!(sci(f64::NAN), "nan");
    }

    #[test]
    fn table_layout() {
        let mut t = Table::default();
        t.comment("k=v");
        t.header(&["a", "b"]);
        t.row(&[1.0, 2.5]);
        t.labelled_row("x", &[3.0], "PASS");
        assert_eq!(
            t.text,
            "# k=v\na,b\n1.000000000000e+00,2.500000000000e+00\nx,3.000000000000e+00,PASS\n"
        );
    }
}
