use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde::{Deserialize, Serialize};

use super::config::GroupArg;
use crate::algebra::{AlgebraContext, StructureConstants};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::perm::{PermGroup, SplitTag};

pub const CACHE_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedClass {
    pub rep: String,
    pub size: usize,
    pub split: SplitTag,
}

/// Integer structure constants of one group, with the class table they
/// refer to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheRecord {
    pub version: u32,
    pub kind: char,
    pub n: usize,
    pub p: u32,
    pub classes: Vec<CachedClass>,
    /// Nonzero `(i, j, l, count)`.
    pub constants: Vec<(u32, u32, u32, u32)>,
}

impl CacheRecord {
    pub fn new(kind: GroupArg, n: usize, p: u32, group: &PermGroup, constants: &StructureConstants) -> Result<Self> {
        Ok(CacheRecord {
            version: CACHE_VERSION,
            kind: kind.letter(),
            n,
            p,
            classes: class_rows(group)?,
            constants: constants.quadruples(),
        })
    }

    /// The constants, provided the record belongs to this group and its
    /// class table matches the one computed now.
    pub fn constants_for(&self, kind: GroupArg, n: usize, p: u32, group: &PermGroup) -> Result<StructureConstants> {
        if self.version != CACHE_VERSION {
            return Err(Error::Invalid(format!("cache version {} (expected {CACHE_VERSION})", self.version)));
        }
        if (self.kind, self.n, self.p) != (kind.letter(), n, p) {
            return Err(Error::Invalid("cache key mismatch".into()));
        }
        if self.classes != class_rows(group)? {
            return Err(Error::Invalid("cached class table differs".into()));
        }
        StructureConstants::from_quadruples(self.classes.len(), &self.constants)
    }
}

fn class_rows(group: &PermGroup) -> Result<Vec<CachedClass>> {
    Ok(group
        .classes()?
        .classes()
        .iter()
        .map(|c| CachedClass {
            rep: c.rep.to_string(),
            size: c.size,
            split: c.split,
        })
        .collect())
}

pub fn cache_path(dir: &Path, kind: GroupArg, n: usize, p: u32) -> PathBuf {
    dir.join(format!("{}{n}-p{p}.json", kind.letter()))
}

pub fn load(path: &Path) -> Result<CacheRecord> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Writes through a temporary file in the same directory and renames it
/// into place.
pub fn store(path: &Path, record: &CacheRecord) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    serde_json::to_writer(&mut tmp, record)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.error))?;
    Ok(())
}

/// Algebra contexts for `S_n` and `A_n`, sharing structure constants across
/// primes in memory and through the optional disk cache.
#[derive(Debug)]
pub struct Contexts {
    cache_dir: Option<PathBuf>,
    max_order: u64,
    seed: u64,
    memory: Mutex<HashMap<(GroupArg, usize), (PermGroup, StructureConstants)>>,
    warnings: Mutex<Vec<String>>,
}

impl Contexts {
    pub fn new(cache_dir: Option<PathBuf>, max_order: u64, seed: u64) -> Self {
        Contexts {
            cache_dir,
            max_order,
            seed,
            memory: Mutex::new(HashMap::new()),
            warnings: Mutex::new(Vec::new()),
        }
    }

    /// Messages about unusable cache files, which were recomputed.
    pub fn warnings(&self) -> Vec<String> {
        self.warnings.lock().unwrap().clone()
    }

    pub fn context(&self, kind: GroupArg, n: usize, p: u32) -> Result<AlgebraContext> {
        let field = FieldSpec::prime(p)?;
        if let Some((g, c)) = self.memory.lock().unwrap().get(&(kind, n)) {
            return AlgebraContext::with_constants(g.clone(), field, c.clone(), self.seed);
        }
        let group = kind.group(n).with_cap(self.max_order);
        group.elements()?;
        let constants = self.constants(kind, n, p, &group)?;
        self.memory
            .lock()
            .unwrap()
            .insert((kind, n), (group.clone(), constants.clone()));
        AlgebraContext::with_constants(group, field, constants, self.seed)
    }

    fn constants(&self, kind: GroupArg, n: usize, p: u32, group: &PermGroup) -> Result<StructureConstants> {
        let Some(dir) = &self.cache_dir else {
            return StructureConstants::compute(group);
        };
        let path = cache_path(dir, kind, n, p);
        if path.exists() {
            match load(&path).and_then(|r| r.constants_for(kind, n, p, group)) {
                Ok(c) => return Ok(c),
                Err(e) => self
                    .warnings
                    .lock()
                    .unwrap()
                    .push(format!("ignoring cache {}: {e}", path.display())),
            }
        }
        let constants = StructureConstants::compute(group)?;
        store(&path, &CacheRecord::new(kind, n, p, group, &constants)?)?;
        Ok(constants)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_rejection() {
        let dir = tempfile::tempdir().unwrap();
        let g = PermGroup::symmetric(4);
        let c = StructureConstants::compute(&g).unwrap();
        let rec = CacheRecord::new(GroupArg::S, 4, 2, &g, &c).unwrap();
        let path = cache_path(dir.path(), GroupArg::S, 4, 2);
        store(&path, &rec).unwrap();
        let back = load(&path).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.constants_for(GroupArg::S, 4, 2, &g).unwrap().quadruples(), c.quadruples());
        let mut old = rec.clone();
        old.version = 0;
        assert!(old.constants_for(GroupArg::S, 4, 2, &g).is_err());
        assert!(rec.constants_for(GroupArg::A, 4, 2, &PermGroup::alternating(4)).is_err());
    }

    #[test]
    fn corrupt_file_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let path = cache_path(dir.path(), GroupArg::S, 3, 2);
        fs::write(&path, "{not json").unwrap();
        let ctxs = Contexts::new(Some(dir.path().to_path_buf()), 1000, 1);
        let ctx = ctxs.context(GroupArg::S, 3, 2).unwrap();
        assert_eq!(ctx.dimension(), 3);
        assert_eq!(ctxs.warnings().len(), 1);
        assert!(load(&path).is_ok());
    }
}
