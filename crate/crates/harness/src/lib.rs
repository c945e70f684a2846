//! Verification harness for the σ-subnormality library: builtin group
//! families, `.grp`/`.sig` files, theorem suites over corpora, and JSONL reports.

pub mod context;
pub mod corpus;
pub mod error;
pub mod families;
pub mod io;
pub mod report;
pub mod runner;
pub mod suites;

pub use context::{Corruption, GroupContext, SigmaContext};
pub use corpus::{default_partitions, CorpusSpec, GroupSource, DEFAULT_FAMILIES};
pub use error::HarnessError;
pub use families::{builtin_family, Family};
pub use io::{
    format_group, format_partition, load_group, load_partition, parse_group, parse_partition, save_group,
    save_partition,
};
pub use report::{Report, Status, Summary, Verdict};
pub use runner::{replay, run_corpus, run_corpus_with, run_task, RunOptions};
pub use suites::{check, instances, parse_suites, Instance, Outcome, Suite};
