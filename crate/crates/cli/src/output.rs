//! Serialized output: JSON lines or CSV with the union of all record columns.

use std::io::Write;

use horocauchy::record::Record;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

pub fn render(records: &[Record], format: Format) -> Result<Vec<u8>, String> {
    match format {
        Format::Jsonl => {
            let mut out = Vec::new();
            for r in records {
                out.extend_from_slice(r.to_json_line().as_bytes());
                out.push(b'\n');
            }
            Ok(out)
        }
        Format::Csv => {
            let rows: Vec<Vec<(String, String)>> = records.iter().map(Record::flat_fields).collect();
            let mut columns: Vec<String> = Vec::new();
            for row in &rows {
                for (k, _) in row {
                    if !columns.contains(k) {
                        columns.push(k.clone());
                    }
                }
            }
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&columns).map_err(|e| e.to_string())?;
            for row in &rows {
                let cells = columns.iter().map(|c| {
                    row.iter()
                        .find(|(k, _)| k == c)
                        .map(|(_, v)| v.as_str())
                        .unwrap_or("")
                });
                w.write_record(cells).map_err(|e| e.to_string())?;
            }
            w.into_inner().map_err(|e| e.to_string())
        }
    }
}

pub fn emit(bytes: &[u8], out: Option<&std::path::Path>) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, bytes).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| format!("cannot write to stdout: {e}"))
        }
    }
}
