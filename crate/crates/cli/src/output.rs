//! CSV/JSON emission. Numbers are printed with 17 significant digits so
//! every file re-parses to bit-identical values; data files never contain
//! timestamps.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

/// 17 significant digits, enough to round-trip any f64.
pub fn full(x: f64) -> String {
    format!("{x:.16e}")
}

/// Destination for tabular output: a file path or `-` for stdout.
#[derive(Debug, Clone)]
pub enum Sink {
    Stdout,
    File(PathBuf),
}

impl Sink {
    pub fn parse(out: &str) -> Sink {
        if out == "-" {
            Sink::Stdout
        } else {
            Sink::File(PathBuf::from(out))
        }
    }

    pub fn write_all(&self, contents: &str) -> Result<(), CliError> {
        match self {
            Sink::Stdout => {
                std::io::stdout()
                    .write_all(contents.as_bytes())
                    .map_err(|e| CliError::Io(format!("stdout: {e}")))?;
            }
            Sink::File(path) => {
                std::fs::write(path, contents)
                    .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            }
        }
        Ok(())
    }

    pub fn path(&self) -> Option<&Path> {
        match self {
            Sink::Stdout => None,
            Sink::File(p) => Some(p),
        }
    }
}

/// Assemble a CSV document: header row plus LF-terminated records.
pub struct Csv {
    buf: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Csv {
        let mut buf = header.join(",");
        buf.push('\n');
        Csv {
            buf,
            columns: header.len(),
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        assert_eq!(fields.len(), self.columns, "csv row width");
        self.buf.push_str(&fields.join(","));
        self.buf.push('\n');
    }

    pub fn finish(self) -> String {
        self.buf
    }
}

/// Write a small matplotlib script next to `csv_path` that plots its
/// columns. The script is a convenience artifact and is never read back.
pub fn emit_plot_script(
    csv_path: &Path,
    x: &str,
    ys: &[&str],
    group_by: Option<&str>,
) -> Result<PathBuf, CliError> {
    let script_path = csv_path.with_extension("py");
    let csv_name = csv_path
        .file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "data.csv".into());
    let ys_list = ys
        .iter()
        .map(|y| format!("{y:?}"))
        .collect::<Vec<_>>()
        .join(", ");
    let group = match group_by {
        Some(g) => format!(
            "for key, sub in df.groupby({g:?}):\n    for y in ys:\n        plt.plot(sub[{x:?}], sub[y], label=f\"{{y}} ({{key}})\")\n"
        ),
        None => format!("for y in ys:\n    plt.plot(df[{x:?}], df[y], label=y)\n"),
    };
    let script = format!(
        "import matplotlib.pyplot as plt\nimport pandas as pd\n\ndf = pd.read_csv({csv_name:?})\nys = [{ys_list}]\n{group}plt.xlabel({x:?})\nplt.legend()\nplt.tight_layout()\nplt.show()\n"
    );
    std::fs::write(&script_path, script)
        .map_err(|e| CliError::Io(format!("{}: {e}", script_path.display())))?;
    Ok(script_path)
}
