//! Deterministic file output: fixed float formatting and atomic writes.

use std::fs;
use std::io;
use std::path::Path;

/// 17 significant digits; identical inputs give byte-identical files.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// Write via a sibling temp file and rename into place.
pub fn atomic_write(path: &Path, contents: &str) -> io::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, contents)?;
    fs::rename(&tmp, path)
}

/// RFC-4180-style CSV: comma separators, LF line endings, one header row.
pub struct Csv {
    buffer: String,
}

impl Csv {
    pub fn new() -> Self {
        Self {
            buffer: String::new(),
        }
    }

    pub fn comment(&mut self, line: &str) {
        self.buffer.push_str("# ");
        self.buffer.push_str(line);
        self.buffer.push('\n');
    }

    pub fn header(&mut self, columns: &[&str]) {
        self.buffer.push_str(&columns.join(","));
        self.buffer.push('\n');
    }

    pub fn row(&mut self, fields: &[String]) {
        self.buffer.push_str(&fields.join(","));
        self.buffer.push('\n');
    }

    pub fn finish(self) -> String {
        self.buffer
    }
}

impl Default for Csv {
    fn default() -> Self {
        Self::new()
    }
}
