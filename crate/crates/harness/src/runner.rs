//! Runs suites over a corpus in parallel and replays single verdicts.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::json;
use ssn_core::{FiniteGroup, GroupError, SigmaPartition};

use crate::context::{Corruption, GroupContext, SigmaContext};
use crate::corpus::CorpusSpec;
use crate::error::HarnessError;
use crate::report::{Report, Status, Verdict};
use crate::suites::{check, instances, replay_instance, Outcome, Suite};

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Test hook; see [`Corruption`].
    pub corruption: Option<Corruption>,
    /// Record `elapsed_ms` on summary lines. Off by default so reports are reproducible.
    pub timings: bool,
}

pub fn run_corpus(spec: &CorpusSpec) -> Result<Report, HarnessError> {
    run_corpus_with(spec, &RunOptions::default())
}

fn is_cap_error(e: &HarnessError) -> bool {
    matches!(
        e,
        HarnessError::Group(GroupError::OrderCapExceeded { .. } | GroupError::LatticeCapExceeded { .. })
    )
}

fn skipped(spec: &CorpusSpec, group: &str, reason: &str) -> Vec<Verdict> {
    let mut out = Vec::new();
    for suite in &spec.suites {
        for (pname, _) in &spec.partitions {
            out.push(Verdict {
                suite: suite.id().to_string(),
                group: group.to_string(),
                partition: pname.clone(),
                subjects: Vec::new(),
                status: Status::Skipped,
                reason: Some(reason.to_string()),
                witness: None,
                elapsed_ms: None,
            });
        }
    }
    out
}

pub fn run_corpus_with(spec: &CorpusSpec, options: &RunOptions) -> Result<Report, HarnessError> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.jobs)
        .build()
        .map_err(|e| HarnessError::Corpus(e.to_string()))?;
    pool.install(|| run_in_pool(spec, options))
}

fn run_in_pool(spec: &CorpusSpec, options: &RunOptions) -> Result<Report, HarnessError> {
    let mut verdicts = Vec::new();
    let mut groups: Vec<(&str, FiniteGroup)> = Vec::new();
    for (name, source) in &spec.groups {
        match source.load(spec.caps) {
            Ok(g) => groups.push((name, g)),
            Err(e) if is_cap_error(&e) => verdicts.extend(skipped(spec, name, &e.to_string())),
            Err(e) => return Err(HarnessError::Corpus(format!("group `{name}`: {e}"))),
        }
    }
    let contexts: Vec<Result<GroupContext<'_>, (&str, GroupError)>> = groups
        .par_iter()
        .map(|(name, g)| GroupContext::new(name, g).map_err(|e| (*name, e)))
        .collect();
    let mut live = Vec::new();
    for c in contexts {
        match c {
            Ok(gc) => live.push(gc),
            Err((name, e)) => verdicts.extend(skipped(spec, name, &e.to_string())),
        }
    }
    let pairs: Vec<(&GroupContext<'_>, &(String, SigmaPartition))> = live
        .iter()
        .flat_map(|gc| spec.partitions.iter().map(move |p| (gc, p)))
        .collect();
    let sigma_contexts: Vec<SigmaContext<'_, '_>> = pairs
        .par_iter()
        .map(|(gc, (name, sigma))| SigmaContext::new(gc, name, sigma, options.corruption))
        .collect();
    let tasks: Vec<(Suite, &SigmaContext<'_, '_>)> = spec
        .suites
        .iter()
        .flat_map(|&s| sigma_contexts.iter().map(move |sc| (s, sc)))
        .collect();
    let results: Vec<Vec<Verdict>> = tasks
        .par_iter()
        .map(|&(suite, sc)| run_task(suite, sc, options.timings))
        .collect();
    verdicts.extend(results.into_iter().flatten());
    Ok(Report::new(verdicts))
}

fn verdict(suite: Suite, sc: &SigmaContext<'_, '_>, subjects: Vec<String>, status: Status) -> Verdict {
    Verdict {
        suite: suite.id().to_string(),
        group: sc.gc.name.clone(),
        partition: sc.name.clone(),
        subjects,
        status,
        reason: None,
        witness: None,
        elapsed_ms: None,
    }
}

/// All verdicts for one suite on one (group, partition).
pub fn run_task(suite: Suite, sc: &SigmaContext<'_, '_>, timings: bool) -> Vec<Verdict> {
    let start = Instant::now();
    let insts = instances(suite, sc);
    let mut out = Vec::new();
    let mut passed = 0u64;
    for inst in &insts {
        let (status, witness) = match check(suite, sc, inst) {
            Outcome::Pass => {
                passed += 1;
                continue;
            }
            Outcome::Fail(w) => (Status::Fail, w),
            Outcome::Finding(w) => (Status::Finding, w),
        };
        let subjects = inst.nodes.iter().map(|&i| sc.gc.node(i).describe()).collect();
        let mut v = verdict(suite, sc, subjects, status);
        v.witness = Some(witness);
        out.push(v);
    }
    let mut summary = verdict(suite, sc, Vec::new(), Status::Pass);
    summary.witness = Some(json!({"checked": insts.len(), "passed": passed}));
    if timings {
        summary.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    out.push(summary);
    out
}

/// Re-runs the check behind one verdict and returns the status it reproduces.
///
/// A summary line (no subjects) replays its whole task and reproduces `pass`
/// when the passing count matches.
pub fn replay(spec: &CorpusSpec, v: &Verdict, options: &RunOptions) -> Result<Status, HarnessError> {
    let suite: Suite = v.suite.parse()?;
    let source = spec
        .groups
        .iter()
        .find(|(n, _)| *n == v.group)
        .map(|(_, s)| s)
        .ok_or_else(|| HarnessError::Replay(format!("unknown group `{}`", v.group)))?;
    let sigma = spec
        .partitions
        .iter()
        .find(|(n, _)| *n == v.partition)
        .map(|(_, s)| s)
        .ok_or_else(|| HarnessError::Replay(format!("unknown partition `{}`", v.partition)))?;
    let g = match source.load(spec.caps) {
        Err(e) if is_cap_error(&e) => return Ok(Status::Skipped),
        other => other?,
    };
    let gc = match GroupContext::new(&v.group, &g) {
        Err(e @ GroupError::LatticeCapExceeded { .. }) => {
            let _ = e;
            return Ok(Status::Skipped);
        }
        other => other?,
    };
    let sc = SigmaContext::new(&gc, &v.partition, sigma, options.corruption);
    if v.subjects.is_empty() {
        let rerun = run_task(suite, &sc, false);
        let summary = rerun.last().expect("tasks end with a summary");
        let same = summary.witness.as_ref().map(|w| &w["passed"]) == v.witness.as_ref().map(|w| &w["passed"]);
        return Ok(if same { Status::Pass } else { Status::Fail });
    }
    Ok(match replay_instance(suite, &sc, &v.subjects, v.witness.as_ref())? {
        Outcome::Pass => Status::Pass,
        Outcome::Fail(_) => Status::Fail,
        Outcome::Finding(_) => Status::Finding,
    })
}
