//! Report rendering. Every record carries a claim id, its inputs, the
//! computed outputs, and the operations behind them; JSON key order is
//! struct declaration order with sorted maps, so equal runs render to
//! identical bytes.

use serde::Serialize;

use exatlas_core::atlas::AtlasRecord;
use exatlas_core::SCHEMA_VERSION;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Text,
    Json,
    Markdown,
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub records: Vec<AtlasRecord>,
}

impl Report {
    pub fn new(command: &str, records: Vec<AtlasRecord>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            records,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "# {} (schema {})\n",
            self.command, self.schema_version
        ));
        for r in &self.records {
            out.push_str(&format!("\n## {}\n\n", r.claim));
            if !r.inputs.is_empty() {
                out.push_str("| input | value |\n|---|---|\n");
                for (k, v) in &r.inputs {
                    out.push_str(&format!("| {k} | {v} |\n"));
                }
                out.push('\n');
            }
            out.push_str("```json\n");
            out.push_str(
                &serde_json::to_string_pretty(&r.outputs).expect("outputs serialize"),
            );
            out.push_str("\n```\n\n");
            out.push_str(&format!("derived via: {}\n", r.provenance.join(", ")));
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json(),
            Format::Markdown => self.to_markdown(),
            Format::Text => {
                let mut out = String::new();
                for r in &self.records {
                    out.push_str(&format!(
                        "{}: {}\n",
                        r.claim,
                        serde_json::to_string(&r.outputs).expect("outputs serialize")
                    ));
                }
                out
            }
        }
    }
}
