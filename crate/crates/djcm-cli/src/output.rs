//! Deterministic file emission: fixed float formatting and a resolved-config
//! header comment in every file, so identical configurations produce
//! byte-identical output.

use std::io::Write;
use std::path::Path;

use crate::config::{fmt, CliError};

pub fn write_out(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            let mut f = std::fs::File::create(p)
                .map_err(|e| format!("cannot create {}: {e}", p.display()))?;
            f.write_all(content.as_bytes())
                .map_err(|e| format!("cannot write {}: {e}", p.display()))?;
        }
        None => {
            print!("{content}");
        }
    }
    Ok(())
}

pub fn csv_header(lines: &[String]) -> String {
    let mut out = String::new();
    for line in lines {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    out
}

pub fn csv_row(values: &[f64]) -> String {
    let mut out = String::new();
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(&fmt(*v));
    }
    out.push('\n');
    out
}
