use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use super::catalog::{SubgroupCatalog, DEFAULT_MAX_SYLOW};
use crate::algebra::{primitive_idempotents, AlgebraContext, CentralElement, IdempotentDecomposition};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, DEFAULT_SEED};
use crate::perm::{lcm, sylow_alternating, sylow_subgroup, sylow_symmetric, GroupKind, PermGroup, Permutation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockConfig {
    /// Fixed coefficient field degree; `None` escalates automatically.
    pub field_degree: Option<usize>,
    /// Smallest field degree tried when escalating.
    pub start_degree: usize,
    pub max_sylow: u64,
    pub seed: u64,
}

impl Default for BlockConfig {
    fn default() -> Self {
        BlockConfig {
            field_degree: None,
            start_degree: 1,
            max_sylow: DEFAULT_MAX_SYLOW,
            seed: DEFAULT_SEED,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Block {
    pub index: usize,
    pub idempotent: CentralElement,
    pub residue_degree: usize,
}

/// The blocks of `kC_G(Q)` for a `p`-subgroup `Q`, over the system's field.
#[derive(Debug)]
pub struct LocalBlocks {
    pub q: PermGroup,
    pub q_elements: Vec<Permutation>,
    pub centralizer: PermGroup,
    pub ctx: AlgebraContext,
    pub blocks: Vec<CentralElement>,
}

/// Blocks of `kG` over a field that splits them, with lazily built local
/// data for Brauer pairs and defect groups.
#[derive(Debug)]
pub struct BlockSystem {
    ctx: AlgebraContext,
    decomposition: IdempotentDecomposition,
    blocks: Vec<Block>,
    config: BlockConfig,
    /// Field degrees tried, in order; the last one is in use.
    field_history: Vec<usize>,
    sylow: OnceLock<PermGroup>,
    catalog: OnceLock<Arc<SubgroupCatalog>>,
    locals: Mutex<HashMap<Vec<Permutation>, Arc<LocalBlocks>>>,
    meeting: Mutex<HashMap<usize, Arc<BTreeSet<usize>>>>,
    pub(super) defects: OnceLock<Vec<super::defect::DefectGroup>>,
}

impl BlockSystem {
    /// Decomposes `Z(kG)` starting from the context's group and constants,
    /// rebuilding over `GF(p^L)` until every residue degree is 1.
    pub fn new(base: &AlgebraContext, config: BlockConfig) -> Result<Self> {
        let p = base.p();
        let mut m = config.field_degree.unwrap_or(config.start_degree.max(1));
        let mut history = Vec::new();
        loop {
            history.push(m);
            let ctx = base.over_field(FieldSpec::new(p, m)?)?.with_seed(config.seed);
            let decomposition = primitive_idempotents(&ctx)?;
            let d = decomposition.splitting_degree();
            if d == 1 {
                let blocks = decomposition
                    .components
                    .iter()
                    .enumerate()
                    .map(|(index, c)| Block {
                        index,
                        idempotent: c.idempotent.clone(),
                        residue_degree: c.residue_degree,
                    })
                    .collect();
                return Ok(BlockSystem {
                    ctx,
                    decomposition,
                    blocks,
                    config,
                    field_history: history,
                    sylow: OnceLock::new(),
                    catalog: OnceLock::new(),
                    locals: Mutex::new(HashMap::new()),
                    meeting: Mutex::new(HashMap::new()),
                    defects: OnceLock::new(),
                });
            }
            if config.field_degree.is_some() {
                return Err(Error::FieldTooSmall { have: m, need: m * d });
            }
            m *= d;
        }
    }

    /// Runs `job` on a block system, restarting over a larger field whenever
    /// a local computation reports that the current one does not split.
    pub fn run<T>(base: &AlgebraContext, config: BlockConfig, job: impl Fn(&BlockSystem) -> Result<T>) -> Result<T> {
        let mut config = config;
        loop {
            let system = BlockSystem::new(base, config.clone())?;
            match job(&system) {
                Err(Error::NeedsExtension { degree }) if config.field_degree.is_none() => {
                    config.start_degree = lcm(system.field().degree() as u64, degree as u64) as usize;
                }
                Err(Error::NeedsExtension { degree }) => {
                    return Err(Error::FieldTooSmall {
                        have: system.field().degree(),
                        need: degree,
                    })
                }
                other => return other,
            }
        }
    }

    pub fn ctx(&self) -> &AlgebraContext {
        &self.ctx
    }

    pub fn group(&self) -> &PermGroup {
        self.ctx.group()
    }

    pub fn field(&self) -> &FieldSpec {
        self.ctx.field()
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    pub fn config(&self) -> &BlockConfig {
        &self.config
    }

    pub fn field_history(&self) -> &[usize] {
        &self.field_history
    }

    pub fn decomposition(&self) -> &IdempotentDecomposition {
        &self.decomposition
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, index: usize) -> Result<&Block> {
        self.blocks
            .get(index)
            .ok_or_else(|| Error::Invalid(format!("block index {index} out of range (0..{})", self.blocks.len())))
    }

    /// A Sylow `p`-subgroup of `G` (the structural one for `S_n` and `A_n`).
    pub fn sylow(&self) -> Result<&PermGroup> {
        if let Some(s) = self.sylow.get() {
            return Ok(s);
        }
        let g = self.group();
        let p = self.p() as usize;
        let s = match g.kind() {
            GroupKind::Symmetric => sylow_symmetric(g.degree(), p)?,
            GroupKind::Alternating => sylow_alternating(g.degree(), p)?,
            GroupKind::Generic => sylow_subgroup(g, p as u64)?,
        }
        .with_cap(g.cap());
        let _ = self.sylow.set(s);
        Ok(self.sylow.get().unwrap())
    }

    /// Subgroups of the Sylow subgroup, with `G`-conjugacy representatives marked.
    pub fn catalog(&self) -> Result<Arc<SubgroupCatalog>> {
        if let Some(c) = self.catalog.get() {
            return Ok(c.clone());
        }
        let mut cat = SubgroupCatalog::build(self.sylow()?, self.p() as u64, self.config.max_sylow)?;
        cat.mark_representatives(self.group())?;
        let cat = Arc::new(cat);
        let _ = self.catalog.set(cat.clone());
        Ok(self.catalog.get().cloned().unwrap_or(cat))
    }

    /// Classes of `G` meeting `C_G(Q)`, for catalog entry `index`.
    pub fn classes_meeting_centralizer(&self, index: usize) -> Result<Arc<BTreeSet<usize>>> {
        if let Some(s) = self.meeting.lock().unwrap().get(&index) {
            return Ok(s.clone());
        }
        let cat = self.catalog()?;
        let gens = cat.get(index).group.generators().to_vec();
        let elems = self.ctx.elements();
        let set: BTreeSet<usize> = elems
            .list()
            .iter()
            .enumerate()
            .filter(|(_, x)| gens.iter().all(|s| x.commutes_with(s)))
            .map(|(i, _)| self.ctx.classes().class_of_index(i))
            .collect();
        let set = Arc::new(set);
        Ok(self.meeting.lock().unwrap().entry(index).or_insert(set).clone())
    }

    /// `Br_Q(e) ≠ 0` for a central element `e` of `kG`: some class in the
    /// support of `e` meets `C_G(Q)`.
    pub fn brauer_nonzero(&self, e: &CentralElement, index: usize) -> Result<bool> {
        let meeting = self.classes_meeting_centralizer(index)?;
        Ok(e.support().iter().any(|l| meeting.contains(l)))
    }

    /// Context and blocks of `kC_G(Q)`. Fails with `NeedsExtension` when the
    /// current field does not split them.
    pub fn local(&self, q: &PermGroup) -> Result<Arc<LocalBlocks>> {
        let q_elements = q.elements()?.list().to_vec();
        if let Some(l) = self.locals.lock().unwrap().get(&q_elements) {
            return Ok(l.clone());
        }
        for s in q.generators() {
            if !self.group().contains(s)? {
                return Err(Error::NotInGroup(s.to_string()));
            }
        }
        let local = if q_elements.len() == 1 {
            LocalBlocks {
                q: q.clone(),
                q_elements: q_elements.clone(),
                centralizer: self.group().clone(),
                ctx: self.ctx.clone(),
                blocks: self.blocks.iter().map(|b| b.idempotent.clone()).collect(),
            }
        } else {
            let centralizer = self.group().centralizer_of_subgroup(q)?;
            let base = AlgebraContext::new(centralizer.clone(), self.field().clone())?.with_seed(self.config.seed);
            let decomposition = primitive_idempotents(&base)?;
            let d = decomposition.splitting_degree();
            if d > 1 {
                return Err(Error::NeedsExtension {
                    degree: self.field().degree() * d,
                });
            }
            LocalBlocks {
                q: q.clone(),
                q_elements: q_elements.clone(),
                centralizer,
                ctx: base,
                blocks: decomposition.idempotents(),
            }
        };
        let local = Arc::new(local);
        Ok(self.locals.lock().unwrap().entry(q_elements).or_insert(local).clone())
    }
}
