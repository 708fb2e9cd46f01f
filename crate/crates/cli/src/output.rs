use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use serde::Serialize;

use crate::config::{Format, Options};
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Rows of one subcommand plus what is needed to describe them.
pub struct Table<R> {
    pub schema: &'static str,
    pub rows: Vec<R>,
}

#[derive(Serialize)]
struct Meta<'a> {
    tool: &'static str,
    version: &'static str,
    schema: String,
    command: &'a str,
    rows: usize,
    elapsed_seconds: f64,
    data_file: String,
    config: &'a Options,
}

pub fn schema_tag(schema: &str) -> String {
    format!("su11.{schema}/v{SCHEMA_VERSION}")
}

pub fn render<R: Serialize>(table: &Table<R>, format: Format) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => {
            let mut buf = format!("# schema: {}\n", schema_tag(table.schema)).into_bytes();
            {
                let mut w = csv::Writer::from_writer(&mut buf);
                for row in &table.rows {
                    w.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
                }
                w.flush().map_err(|e| CliError::Io(e.to_string()))?;
            }
            Ok(buf)
        }
        Format::Json => {
            let mut buf = serde_json::to_vec_pretty(&table.rows).map_err(|e| CliError::Io(e.to_string()))?;
            buf.push(b'\n');
            Ok(buf)
        }
    }
}

pub fn meta_path(data: &Path) -> PathBuf {
    let mut name = data.file_name().unwrap_or_default().to_os_string();
    name.push(".meta.json");
    data.with_file_name(name)
}

/// Writes the data to `--out` (or the output directory) with a metadata
/// sidecar, or to stdout when neither is set.
pub fn emit<R: Serialize>(
    command: &str,
    table: &Table<R>,
    opts: &Options,
    elapsed: Duration,
) -> Result<Option<PathBuf>, CliError> {
    let format = opts.format();
    let bytes = render(table, format)?;
    let Some(path) = opts.output_path(command) else {
        std::io::stdout().write_all(&bytes).map_err(|e| CliError::Io(e.to_string()))?;
        return Ok(None);
    };
    let io = |e: std::io::Error, p: &Path| CliError::Io(format!("cannot write {}: {e}", p.display()));
    std::fs::write(&path, &bytes).map_err(|e| io(e, &path))?;
    let meta = Meta {
        tool: "su11",
        version: env!("CARGO_PKG_VERSION"),
        schema: schema_tag(table.schema),
        command,
        rows: table.rows.len(),
        elapsed_seconds: elapsed.as_secs_f64(),
        data_file: path.display().to_string(),
        config: opts,
    };
    let mpath = meta_path(&path);
    let text = serde_json::to_string_pretty(&meta).map_err(|e| CliError::Io(e.to_string()))?;
    std::fs::write(&mpath, text + "\n").map_err(|e| io(e, &mpath))?;
    Ok(Some(path))
}
