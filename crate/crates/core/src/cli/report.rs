use std::fmt::Write as _;

use serde::Serialize;

use super::config::{Format, JobConfig};
use crate::algebra::LabeledCoefficient;
use crate::error::Result;
use crate::field::FieldSpec;

/// Leading record of every report.
#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config: JobConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u64>,
}

impl Header {
    pub fn new(command: &str, config: &JobConfig) -> Self {
        Header {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            config: config.clone(),
            field: None,
            seed: config.seed,
            wall_time_ms: None,
        }
    }

    fn tsv_lines(&self, out: &mut String) {
        let _ = writeln!(out, "# tool\t{} {}", self.tool, self.version);
        let _ = writeln!(out, "# command\t{}", self.command);
        let _ = writeln!(
            out,
            "# config\t{}",
            serde_json::to_string(&self.config).unwrap_or_default()
        );
        if let Some(f) = &self.field {
            let _ = writeln!(out, "# field\t{}", serde_json::to_string(f).unwrap_or_default());
        }
        let _ = writeln!(out, "# seed\t{}", self.seed);
        if let Some(t) = self.wall_time_ms {
            let _ = writeln!(out, "# wall_time_ms\t{t}");
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub p: u32,
    pub m: usize,
    pub modulus: Vec<u32>,
    pub seed: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockRow {
    pub index: usize,
    pub idempotent: Vec<LabeledCoefficient>,
    pub residue_degree: usize,
    pub defect_order: usize,
    pub defect_gens: String,
    #[serde(rename = "M")]
    pub m: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlocksReport {
    pub header: Header,
    pub group: String,
    pub n: usize,
    pub p: u32,
    pub field: FieldInfo,
    /// Field degrees tried before the blocks split.
    pub field_history: Vec<usize>,
    pub blocks: Vec<BlockRow>,
}

impl BlocksReport {
    pub fn render(&self, format: Format) -> Result<String> {
        if format == Format::Json {
            return Ok(serde_json::to_string_pretty(self)? + "\n");
        }
        let mut out = String::new();
        self.header.tsv_lines(&mut out);
        let _ = writeln!(out, "# group\t{}\tp={}\tfield=GF({}^{})", self.group, self.p, self.field.p, self.field.m);
        let _ = writeln!(out, "index\tresidue_degree\tdefect_order\tdefect_gens\tM\tidempotent");
        for b in &self.blocks {
            let m: Vec<String> = b.m.iter().map(|x| x.to_string()).collect();
            let e: Vec<String> = b.idempotent.iter().map(|c| format!("{}:{}", c.0, c.1)).collect();
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{{{}}}\t{}",
                b.index,
                b.residue_degree,
                b.defect_order,
                b.defect_gens,
                m.join(","),
                e.join(" ")
            );
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionOutput {
    pub header: Header,
    pub group: String,
    pub p: u32,
    pub reports: Vec<crate::fusion::FusionReport>,
}

impl FusionOutput {
    pub fn render(&self, format: Format) -> Result<String> {
        if format == Format::Json {
            return Ok(serde_json::to_string_pretty(self)? + "\n");
        }
        let mut out = String::new();
        self.header.tsv_lines(&mut out);
        let _ = writeln!(out, "block\tverdict\tdefect_order\tM\tcentrics\tpairs_per_centric\tsaturation");
        for r in &self.reports {
            let m: Vec<String> = r.defect.m.iter().map(|x| x.to_string()).collect();
            let pairs: Vec<String> = r.pairs_per_centric.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{{{}}}\t{}\t{}\t{}",
                r.block,
                r.verdict,
                r.defect.order,
                m.join(","),
                r.centrics.len(),
                pairs.join(","),
                r.saturation
            );
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyOutput {
    pub header: Header,
    pub passed: bool,
    pub suites: Vec<super::verify::SuiteReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl VerifyOutput {
    pub fn render(&self, format: Format) -> Result<String> {
        if format == Format::Json {
            return Ok(serde_json::to_string_pretty(self)? + "\n");
        }
        let mut out = String::new();
        self.header.tsv_lines(&mut out);
        let _ = writeln!(out, "suite\tcases\tfailures\tstatus");
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}",
                s.suite,
                s.cases,
                s.failures,
                if s.passed() { "pass" } else { "FAIL" }
            );
        }
        for s in &self.suites {
            for e in &s.events {
                let _ = writeln!(out, "# event\t{}\t{}\t{}", s.suite, e.target, e.detail);
            }
            for n in &s.notes {
                let _ = writeln!(out, "# note\t{}\t{}", s.suite, n);
            }
        }
        Ok(out)
    }
}
