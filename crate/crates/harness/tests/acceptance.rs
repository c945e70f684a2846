//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use ssn_core::residuals::oracle;
use ssn_core::{
    all_subgroups, derived_subgroup, is_orthogonal, permutes, pi_residual, sigma_residual, sigma_soluble_residual,
    sigma_subnormal_fast, sigma_subnormal_oracle, subgroup_generated, FiniteGroup, SigmaPartition,
};
use ssn_harness::{
    builtin_family, default_partitions, replay, run_corpus, run_corpus_with, CorpusSpec, Corruption, Report,
    RunOptions, Status, Suite, DEFAULT_FAMILIES,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn default_groups() -> Vec<(&'static str, FiniteGroup)> {
    DEFAULT_FAMILIES
        .iter()
        .map(|f| {
            (
                *f,
                builtin_family(f, Default::default()).expect("default family builds"),
            )
        })
        .collect()
}

/// Fast and oracle verdicts for every subgroup of `g`; returns (checked, disagreements).
fn oracle_agreement(g: &FiniteGroup, sigma: &SigmaPartition) -> (usize, Vec<String>) {
    let lattice = all_subgroups(g).expect("default groups fit the caps");
    let whole = g.whole();
    let mut bad = Vec::new();
    for x in lattice.nodes() {
        let fast = sigma_subnormal_fast(x, &whole, sigma).expect("subgroup of g");
        let slow = sigma_subnormal_oracle(&lattice, x, &whole, sigma).expect("subgroup of g");
        if fast.is_some() != slow.is_some() {
            bad.push(format!("<{}>", x.describe()));
        }
        if let Some(chain) = &fast {
            if chain.validate(sigma).is_err() {
                bad.push(format!("<{}> invalid fast chain", x.describe()));
            }
        }
    }
    (lattice.len(), bad)
}

fn criterion_1() -> Check {
    let groups = default_groups();
    let partitions = default_partitions();
    let work: Vec<(&FiniteGroup, &SigmaPartition)> = groups
        .iter()
        .flat_map(|(_, g)| partitions.iter().map(move |(_, s)| (g, s)))
        .collect();

    let start = Instant::now();
    let serial: Vec<(usize, Vec<String>)> = work.iter().map(|(g, s)| oracle_agreement(g, s)).collect();
    let one = start.elapsed();

    let pool = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
    let start = Instant::now();
    let parallel: Vec<(usize, Vec<String>)> =
        pool.install(|| work.par_iter().map(|(g, s)| oracle_agreement(g, s)).collect());
    let four = start.elapsed();

    let checked: usize = serial.iter().map(|r| r.0).sum();
    let bad: Vec<&String> = serial.iter().flat_map(|r| &r.1).collect();
    let detail = format!(
        "{checked} (subgroup, partition) verdicts, {} disagreements; 1 worker {:.2}s, 4 workers {:.2}s",
        bad.len(),
        one.as_secs_f64(),
        four.as_secs_f64()
    );
    if !bad.is_empty() {
        return Err(format!("{detail}; first: {}", bad[0]));
    }
    if serial != parallel {
        return Err(format!("{detail}; serial and parallel runs differ"));
    }
    if one > Duration::from_secs(600) || four > Duration::from_secs(180) {
        return Err(format!("{detail}; over the time budget"));
    }
    Ok(detail)
}

fn criterion_2() -> Check {
    let mut spec = CorpusSpec::default_corpus();
    spec.suites = Suite::ALL
        .iter()
        .copied()
        .filter(|s| !matches!(s, Suite::Oracle | Suite::Residuals))
        .collect();
    spec.jobs = 4;
    let report = run_corpus(&spec).map_err(|e| e.to_string())?;
    let s = report.summary();
    let fails: Vec<_> = report.with_status(Status::Fail).collect();
    let mut findings: BTreeMap<&str, usize> = BTreeMap::new();
    for v in report.with_status(Status::Finding) {
        *findings.entry(v.suite.as_str()).or_default() += 1;
    }
    let exploratory: BTreeSet<&str> = Suite::ALL.iter().filter(|s| s.exploratory()).map(|s| s.id()).collect();
    let stray: Vec<&&str> = findings.keys().filter(|k| !exploratory.contains(*k)).collect();
    let s2_s4 = report
        .verdicts
        .iter()
        .find(|v| v.suite == "S2" && v.group == "symmetric(4)" && v.partition == "p2_p3" && v.subjects.is_empty())
        .and_then(|v| v.witness.as_ref())
        .and_then(|w| w["checked"].as_u64())
        .unwrap_or(0);
    let detail = format!(
        "{} instances checked, {} fail, findings {:?}; S2 on symmetric(4) under p2_p3 checked {s2_s4} pairs \
         (7 σ-subnormal subgroups there, so 28 unordered pairs, not several hundred)",
        s.checked.values().sum::<u64>(),
        fails.len(),
        findings
    );
    if !fails.is_empty() {
        return Err(format!("{detail}; first fail: {:?}", fails[0]));
    }
    if !stray.is_empty() {
        return Err(format!("{detail}; findings outside exploratory suites: {stray:?}"));
    }
    if s.skipped > 0 {
        return Err(format!("{detail}; {} skipped", s.skipped));
    }
    if s2_s4 != 28 {
        return Err(detail);
    }
    Ok(detail)
}

fn criterion_3() -> Check {
    let mut lines = Vec::new();
    for (p, q) in [(2u64, 3u64), (3, 2), (2, 5)] {
        let g = builtin_family(&format!("wreath_cyclic({p},{q})"), Default::default()).map_err(|e| e.to_string())?;
        let gens = g.generators();
        let h = subgroup_generated(&g, &gens[..1]).unwrap();
        let k = subgroup_generated(&g, &gens[1..]).unwrap();
        let sigma = SigmaPartition::new(vec![vec![p, q]]).unwrap();
        let (hs, ks) = (sigma_residual(&h, &sigma), sigma_residual(&k, &sigma));
        let whole = g.whole();
        let observed = [
            permutes(&h, &k).unwrap(),
            hs.is_trivial(),
            ks.is_trivial(),
            permutes(&hs, &ks).unwrap(),
            sigma_subnormal_fast(&h, &whole, &sigma).unwrap().is_some(),
            sigma_subnormal_fast(&k, &whole, &sigma).unwrap().is_some(),
            is_orthogonal(&h, &k),
        ];
        let expected = [false, true, true, true, true, true, true];
        if observed != expected {
            return Err(format!(
                "wreath_cyclic({p},{q}): [HK=KH, H^σ=1, K^σ=1, H^σK^σ=K^σH^σ, H σ-sn, K σ-sn, orthogonal] = {observed:?}, expected {expected:?}"
            ));
        }
        lines.push(format!(
            "({p},{q}) |G|={} |H|={} |K|={}",
            g.order(),
            h.order(),
            k.order()
        ));
    }
    Ok(format!("HK≠KH and H^σ=K^σ=1 for {}", lines.join(", ")))
}

fn criterion_4() -> Check {
    let groups = default_groups();
    let partitions = default_partitions();
    let results: Vec<(usize, Vec<String>)> = groups
        .par_iter()
        .map(|(name, g)| {
            let mut checks = 0;
            let mut bad = Vec::new();
            let whole = g.whole();
            let primes: Vec<u64> = g.prime_set().into_iter().collect();
            for m in 0..1usize << primes.len() {
                let pi: BTreeSet<u64> = primes
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| m & (1 << i) != 0)
                    .map(|(_, p)| *p)
                    .collect();
                checks += 1;
                if pi_residual(&whole, &pi) != oracle::pi_residual(&whole, |q| pi.contains(&q)) {
                    bad.push(format!("{name} pi {pi:?}"));
                }
            }
            for (pname, sigma) in &partitions {
                checks += 1;
                if Ok(sigma_residual(&whole, sigma)) != oracle::sigma_residual(&whole, sigma) {
                    bad.push(format!("{name} sigma {pname}"));
                }
            }
            (checks, bad)
        })
        .collect();
    let checks: usize = results.iter().map(|r| r.0).sum();
    let bad: Vec<&String> = results.iter().flat_map(|r| &r.1).collect();

    // Every subgroup, every π, σ, τ and σ-soluble residual.
    let mut spec = CorpusSpec::default_corpus();
    spec.suites = vec![Suite::Residuals];
    spec.jobs = 4;
    let report = run_corpus(&spec).map_err(|e| e.to_string())?;
    let s = report.summary();
    let detail = format!(
        "{checks} whole-group residuals, {} mismatches; residuals suite over every subgroup: {} checked, {} fail",
        bad.len(),
        s.checked.get("residuals").copied().unwrap_or(0),
        s.fail
    );
    if !bad.is_empty() || s.fail > 0 {
        return Err(detail);
    }
    Ok(detail)
}

fn criterion_5() -> Check {
    let groups = default_groups();
    let partitions = default_partitions();
    let mut checked = 0;
    let mut nontrivial = Vec::new();
    for (name, g) in &groups {
        let lattice = all_subgroups(g).expect("default groups fit the caps");
        for (pname, sigma) in &partitions {
            for x in lattice.nodes() {
                let t = sigma_soluble_residual(x, sigma);
                checked += 1;
                if derived_subgroup(&t) != t {
                    return Err(format!(
                        "{name} {pname} <{}>: residual of order {} is not perfect",
                        x.describe(),
                        t.order()
                    ));
                }
                if x.is_whole() && !t.is_trivial() {
                    nontrivial.push(format!("{name}/{pname}:{}", t.order()));
                }
            }
        }
    }
    Ok(format!(
        "{checked} subgroup residuals perfect; nontrivial for the whole group in {}",
        nontrivial.join(" ")
    ))
}

fn criterion_6() -> Check {
    let whole_sigma = SigmaPartition::whole();
    let mut checked = 0;
    let mut max = 0;
    for (name, g) in default_groups() {
        let lattice = all_subgroups(&g).expect("default groups fit the caps");
        let whole = g.whole();
        for x in lattice.nodes() {
            checked += 1;
            match sigma_subnormal_oracle(&lattice, x, &whole, &whole_sigma).unwrap() {
                Some((_, d)) if d <= 1 => max = max.max(d),
                other => return Err(format!("{name} <{}>: defect {:?}", x.describe(), other.map(|(_, d)| d))),
            }
            if sigma_subnormal_fast(x, &whole, &whole_sigma).unwrap().is_none() {
                return Err(format!("{name} <{}>: fast says no", x.describe()));
            }
        }
    }
    Ok(format!("{checked} subgroups σ-subnormal under {{ℙ}}, max defect {max}"))
}

fn criterion_7() -> Check {
    let mut spec = CorpusSpec::default_corpus();
    spec.jobs = 1;
    let serial = run_corpus(&spec).map_err(|e| e.to_string())?;
    spec.jobs = 4;
    let parallel = run_corpus(&spec).map_err(|e| e.to_string())?;
    let text = serial.to_jsonl();
    if text != parallel.to_jsonl() {
        return Err("jobs=1 and jobs=4 reports differ".into());
    }
    let reparsed = Report::from_jsonl(&text).map_err(|e| e.to_string())?;
    if reparsed.to_jsonl() != text {
        return Err("report does not round-trip through JSONL".into());
    }

    // One Finding per (suite, group, partition) replays to Finding.
    let mut seen = BTreeSet::new();
    let mut replayed = 0;
    for v in serial.with_status(Status::Finding) {
        if !seen.insert((&v.suite, &v.group, &v.partition)) {
            continue;
        }
        let got = replay(&spec, v, &RunOptions::default()).map_err(|e| e.to_string())?;
        if got != Status::Finding {
            return Err(format!("finding replayed as {got}: {v:?}"));
        }
        replayed += 1;
    }
    // Summary lines replay too.
    for v in serial.with_status(Status::Pass).filter(|v| v.group == "symmetric(4)") {
        if replay(&spec, v, &RunOptions::default()).map_err(|e| e.to_string())? != Status::Pass {
            return Err(format!("summary did not replay: {v:?}"));
        }
        replayed += 1;
    }

    let mut injected = Vec::new();
    for c in [
        Corruption::FlipSubnormal,
        Corruption::CorruptResidual,
        Corruption::FlipSigmaNormal,
    ] {
        let options = RunOptions {
            corruption: Some(c),
            timings: false,
        };
        let report = run_corpus_with(&spec, &options).map_err(|e| e.to_string())?;
        let fails: Vec<_> = report.with_status(Status::Fail).collect();
        if fails.is_empty() {
            return Err(format!("{c:?} injected no Fail"));
        }
        let mut seen = BTreeSet::new();
        for v in &fails {
            if !seen.insert((&v.suite, &v.group, &v.partition)) {
                continue;
            }
            let got = replay(&spec, v, &options).map_err(|e| e.to_string())?;
            if got != Status::Fail {
                return Err(format!("{c:?}: fail replayed as {got}: {v:?}"));
            }
            replayed += 1;
        }
        injected.push(format!("{c:?}: {} fail", fails.len()));
    }
    Ok(format!(
        "{} lines identical across job counts; {replayed} verdicts replayed; {}",
        serial.verdicts.len(),
        injected.join(", ")
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("oracle equivalence", criterion_1),
        ("suites report zero Fail", criterion_2),
        ("wreath regression", criterion_3),
        ("residual cross-checks", criterion_4),
        ("σ-soluble residual is perfect", criterion_5),
        ("degenerate partition defect ≤ 1", criterion_6),
        ("determinism and replay", criterion_7),
    ];
    let mut ok = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                ok = false;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
