use std::time::Instant;

use super::cache::Contexts;
use super::config::{JobConfig, Suite};
use super::report::{BlockRow, BlocksReport, FieldInfo, FusionOutput, Header, VerifyOutput};
use super::verify::run_suite;
use crate::blocks::BlockSystem;
use crate::error::Result;
use crate::fusion::Verdict;

fn contexts(config: &JobConfig) -> Contexts {
    Contexts::new(config.cache_dir.clone(), config.max_order, config.seed)
}

fn finish(header: &mut Header, config: &JobConfig, start: Instant) {
    if config.timing {
        header.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
}

pub fn cmd_blocks(config: &JobConfig) -> Result<BlocksReport> {
    let start = Instant::now();
    let (group, n, p) = config.target()?;
    let ctxs = contexts(config);
    let base = ctxs.context(group, n, p)?;
    let sys = BlockSystem::new(&base, config.block_config())?;
    let defects = sys.defect_groups()?;
    let blocks = sys
        .blocks()
        .iter()
        .zip(defects)
        .map(|(b, d)| BlockRow {
            index: b.index,
            idempotent: sys.ctx().labeled(&b.idempotent),
            residue_degree: b.residue_degree,
            defect_order: d.order,
            defect_gens: d.group.generator_string(),
            m: d.moved.iter().map(|x| x + 1).collect(),
        })
        .collect();
    let f = sys.field();
    let mut header = Header::new("blocks", config);
    header.field = Some(f.clone());
    let report = BlocksReport {
        group: group.name(n),
        n,
        p,
        field: FieldInfo {
            p: f.p(),
            m: f.degree(),
            modulus: f.modulus().to_vec(),
            seed: sys.ctx().seed(),
        },
        field_history: sys.field_history().to_vec(),
        blocks,
        header,
    };
    let mut report = report;
    finish(&mut report.header, config, start);
    Ok(report)
}

/// Fusion reports for one block, or every block when `block` is `None`.
pub fn cmd_fusion(config: &JobConfig, block: Option<usize>) -> Result<FusionOutput> {
    let start = Instant::now();
    let (group, n, p) = config.target()?;
    let ctxs = contexts(config);
    let base = ctxs.context(group, n, p)?;
    let (reports, field) = BlockSystem::run(&base, config.block_config(), |sys| {
        let indices: Vec<usize> = match block {
            Some(b) => {
                sys.block(b)?;
                vec![b]
            }
            None => (0..sys.blocks().len()).collect(),
        };
        let reports = indices.into_iter().map(|b| sys.identify(b)).collect::<Result<Vec<_>>>()?;
        Ok((reports, sys.field().clone()))
    })?;
    let mut header = Header::new("fusion", config);
    header.field = Some(field);
    let mut out = FusionOutput {
        header,
        group: group.name(n),
        p,
        reports,
    };
    finish(&mut out.header, config, start);
    Ok(out)
}

impl FusionOutput {
    pub fn falsified(&self) -> bool {
        self.reports.iter().any(|r| r.verdict == Verdict::Falsified)
    }
}

pub fn cmd_verify(config: &JobConfig, suite: Suite) -> Result<VerifyOutput> {
    let start = Instant::now();
    let ctxs = contexts(config);
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut reports = Vec::new();
    for s in suites {
        reports.push(run_suite(s, config, &ctxs)?);
    }
    let mut out = VerifyOutput {
        header: Header::new(&format!("verify {}", suite.name()), config),
        passed: reports.iter().all(|r| r.passed()),
        suites: reports,
        warnings: ctxs.warnings(),
    };
    finish(&mut out.header, config, start);
    Ok(out)
}
