//! Corpus specifications: which groups, partitions and suites to run.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use ssn_core::{Caps, FiniteGroup, SigmaPartition};

use crate::error::HarnessError;
use crate::families::builtin_family;
use crate::io::{load_group, load_partition};
use crate::suites::Suite;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSource {
    /// A builtin family descriptor such as `wreath_cyclic(2,3)`.
    Family(String),
    File(PathBuf),
}

impl GroupSource {
    pub fn load(&self, caps: Caps) -> Result<FiniteGroup, HarnessError> {
        match self {
            GroupSource::Family(spec) => builtin_family(spec, caps),
            GroupSource::File(path) => load_group(path, caps),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub groups: Vec<(String, GroupSource)>,
    pub partitions: Vec<(String, SigmaPartition)>,
    pub caps: Caps,
    pub suites: Vec<Suite>,
    pub jobs: usize,
}

pub const DEFAULT_FAMILIES: &[&str] = &[
    "cyclic(1)",
    "cyclic(2)",
    "cyclic(3)",
    "cyclic(4)",
    "dihedral(2)",
    "dihedral(3)",
    "dihedral(4)",
    "dihedral(5)",
    "symmetric(3)",
    "symmetric(4)",
    "alternating(4)",
    "wreath_cyclic(2,3)",
    "wreath_cyclic(3,2)",
    "direct_product(cyclic(2),cyclic(3))",
    "direct_product(symmetric(3),cyclic(2))",
    "direct_product(cyclic(2),cyclic(2),cyclic(2))",
    "direct_product(symmetric(3),cyclic(3))",
    "direct_product(alternating(4),cyclic(2))",
    "direct_product(dihedral(4),cyclic(2))",
    "direct_product(symmetric(3),symmetric(3))",
    "direct_product(symmetric(4),cyclic(2))",
    "direct_product(cyclic(5),symmetric(3))",
    "alternating(5)",
    "direct_product(symmetric(4),cyclic(5))",
];

/// `{{2},{3}}`, `{{2,3}}`, `{{2,5},{3}}` and `{ℙ}`, each with the remainder implicit.
pub fn default_partitions() -> Vec<(String, SigmaPartition)> {
    let p = |blocks: Vec<Vec<u64>>| SigmaPartition::new(blocks).expect("valid default partition");
    vec![
        ("p2_p3".to_string(), p(vec![vec![2], vec![3]])),
        ("p23".to_string(), p(vec![vec![2, 3]])),
        ("p25_p3".to_string(), p(vec![vec![2, 5], vec![3]])),
        ("all".to_string(), SigmaPartition::whole()),
    ]
}

impl CorpusSpec {
    pub fn default_corpus() -> Self {
        CorpusSpec {
            groups: DEFAULT_FAMILIES
                .iter()
                .map(|f| (f.to_string(), GroupSource::Family(f.to_string())))
                .collect(),
            partitions: default_partitions(),
            caps: Caps::default(),
            suites: Suite::ALL.to_vec(),
            jobs: 1,
        }
    }

    pub fn empty() -> Self {
        CorpusSpec {
            groups: Vec::new(),
            partitions: default_partitions(),
            caps: Caps::default(),
            suites: Suite::ALL.to_vec(),
            jobs: 1,
        }
    }

    /// Every `*.grp` and `*.sig` file in `dir`, named by file stem.
    ///
    /// Without any `.sig` file the default partitions are used.
    pub fn from_dir(dir: &Path) -> Result<Self, HarnessError> {
        let mut paths: Vec<PathBuf> = fs::read_dir(dir)
            .map_err(|e| HarnessError::io(dir, e))?
            .map(|entry| entry.map(|e| e.path()).map_err(|e| HarnessError::io(dir, e)))
            .collect::<Result<_, _>>()?;
        paths.sort();
        let stem = |p: &Path| p.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
        let mut spec = CorpusSpec::empty();
        let mut partitions = Vec::new();
        for p in paths {
            match p.extension().and_then(|e| e.to_str()) {
                Some("grp") => spec.groups.push((stem(&p), GroupSource::File(p))),
                Some("sig") => {
                    let sigma =
                        load_partition(&p).map_err(|e| HarnessError::Corpus(format!("{}: {e}", p.display())))?;
                    partitions.push((stem(&p), sigma));
                }
                _ => {}
            }
        }
        if !partitions.is_empty() {
            spec.partitions = partitions;
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let mut names = BTreeSet::new();
        for (name, _) in &self.groups {
            if !names.insert(name) {
                return Err(HarnessError::Corpus(format!("duplicate group name `{name}`")));
            }
        }
        let mut names = BTreeSet::new();
        for (name, _) in &self.partitions {
            if !names.insert(name) {
                return Err(HarnessError::Corpus(format!("duplicate partition name `{name}`")));
            }
        }
        if self.caps.order == 0 || self.caps.lattice == 0 || self.jobs == 0 {
            return Err(HarnessError::Corpus("caps and job count must be positive".into()));
        }
        Ok(())
    }
}
