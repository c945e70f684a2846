//! Theorem suites over one group and one partition.
//!
//! Each suite enumerates instances (tuples of lattice nodes, plus a τ mask
//! where relevant) and checks them one at a time; replay re-runs a single
//! instance from its serialized subjects.

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};
use ssn_core::{permutizer_in, sigma_normal_step, PermutizerResult, SigmaChain};

use crate::context::{blocks_label, SigmaContext};
use crate::error::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Oracle,
    Residuals,
    S1,
    S2,
    S3,
    S4,
    S5,
    S5b,
    S6,
    S7,
    S8,
    S9,
    S10,
    S11,
    S11b,
    S12,
}

impl Suite {
    pub const ALL: [Suite; 16] = [
        Suite::Oracle,
        Suite::Residuals,
        Suite::S1,
        Suite::S2,
        Suite::S3,
        Suite::S4,
        Suite::S5,
        Suite::S5b,
        Suite::S6,
        Suite::S7,
        Suite::S8,
        Suite::S9,
        Suite::S10,
        Suite::S11,
        Suite::S11b,
        Suite::S12,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Oracle => "oracle",
            Suite::Residuals => "residuals",
            Suite::S1 => "S1",
            Suite::S2 => "S2",
            Suite::S3 => "S3",
            Suite::S4 => "S4",
            Suite::S5 => "S5",
            Suite::S5b => "S5b",
            Suite::S6 => "S6",
            Suite::S7 => "S7",
            Suite::S8 => "S8",
            Suite::S9 => "S9",
            Suite::S10 => "S10",
            Suite::S11 => "S11",
            Suite::S11b => "S11b",
            Suite::S12 => "S12",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Suite::Oracle => "fast sigma-subnormality agrees with the lattice oracle",
            Suite::Residuals => "residuals agree with brute-force minima; soluble residuals are perfect",
            Suite::S1 => "sigma-subnormal subgroups are closed under join and intersection",
            Suite::S2 => "J^s = H^s K^s, H^s K = K H^s, and HK = KH iff J = H K J^s",
            Suite::S3 => "in sigma-soluble groups H^s K = K H^s and H^s K^s = K^s H^s",
            Suite::S4 => "J^s = H1^s H2^s H3^s for triples",
            Suite::S5 => "G^t = <H^t, K^t> when G = <H, K>",
            Suite::S5b => "search for G^t != H^t K^t (findings only)",
            Suite::S6 => "a unique permutizer P_H(K) is sigma-subnormal",
            Suite::S7 => "maximal sigma-subnormal members of a subgroup are normal in it",
            Suite::S8 => "H sigma-normal in J = <H, K> makes J sigma-subnormal",
            Suite::S9 => "residuals of sigma-subnormal subgroups and joins are subnormal",
            Suite::S10 => "orthogonal sigma-subnormal subgroups have sigma-subnormal join",
            Suite::S11 => "<F> J^s is sigma-subnormal for cyclic F inside J",
            Suite::S11b => "some subnormal X has F <= X <= J, for cyclic F inside J (findings only)",
            Suite::S12 => "T = R S with R, S perfect for subnormal H, K generating G",
        }
    }

    /// Exploratory suites report findings and never fail.
    pub fn exploratory(self) -> bool {
        matches!(self, Suite::S5b | Suite::S11b)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.id().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| HarnessError::Corpus(format!("unknown suite `{s}`")))
    }
}

/// Parses a comma-separated suite list; `all` selects every suite.
pub fn parse_suites(list: &str) -> Result<Vec<Suite>, HarnessError> {
    if list.trim().eq_ignore_ascii_case("all") {
        return Ok(Suite::ALL.to_vec());
    }
    let mut out: Vec<Suite> = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<_, _>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub nodes: Vec<usize>,
    pub tau: Option<usize>,
}

impl Instance {
    fn of(nodes: Vec<usize>) -> Self {
        Instance { nodes, tau: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Outcome {
    Pass,
    Fail(Value),
    Finding(Value),
}

fn chain_json(chain: &SigmaChain<'_>) -> Value {
    json!({
        "terms": chain.terms.iter().map(|t| t.describe()).collect::<Vec<_>>(),
        "steps": chain.steps.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
    })
}

fn pairs(sn: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    sn.iter()
        .enumerate()
        .flat_map(move |(a, &i)| sn[a..].iter().map(move |&j| (i, j)))
}

/// All instances of `suite` for this context, in canonical order.
pub fn instances(suite: Suite, sc: &SigmaContext<'_, '_>) -> Vec<Instance> {
    let gc = sc.gc;
    let n = gc.len();
    let top = gc.top();
    let sn: Vec<usize> = (0..n).filter(|&i| sc.sn[i]).collect();
    match suite {
        Suite::Oracle | Suite::Residuals => (0..n).map(|i| Instance::of(vec![i])).collect(),
        Suite::S1 | Suite::S2 | Suite::S10 => pairs(&sn).map(|(i, j)| Instance::of(vec![i, j])).collect(),
        Suite::S3 if !sc.soluble => Vec::new(),
        Suite::S3 => pairs(&sn).map(|(i, j)| Instance::of(vec![i, j])).collect(),
        Suite::S4 => {
            let mut out = Vec::new();
            for (a, &i) in sn.iter().enumerate() {
                for (b, &j) in sn.iter().enumerate().skip(a) {
                    for &k in &sn[b..] {
                        out.push(Instance::of(vec![i, j, k]));
                    }
                }
            }
            out
        }
        Suite::S5 | Suite::S5b => pairs(&sn)
            .filter(|&(i, j)| gc.join(i, j) == top)
            .flat_map(|(i, j)| {
                (1..sc.tau_masks()).map(move |m| Instance {
                    nodes: vec![i, j],
                    tau: Some(m),
                })
            })
            .collect(),
        Suite::S6 => sn
            .iter()
            .flat_map(|&i| sn.iter().map(move |&j| Instance::of(vec![i, j])))
            .collect(),
        Suite::S7 => {
            let mut out = Vec::new();
            for s in 0..n {
                for &h in sn.iter().filter(|&&h| gc.contains(h, s)) {
                    let maximal = !sn.iter().any(|&m| m != h && gc.contains(h, m) && gc.contains(m, s));
                    if maximal {
                        out.push(Instance::of(vec![s, h]));
                    }
                }
            }
            out
        }
        Suite::S8 => sn
            .iter()
            .flat_map(|&i| sn.iter().map(move |&j| (i, j)))
            .filter(|&(i, j)| {
                let jn = gc.join(i, j);
                sigma_normal_step(gc.node(i), gc.node(jn), &sc.sigma).is_some()
            })
            .map(|(i, j)| Instance::of(vec![i, j]))
            .collect(),
        Suite::S9 => sn
            .iter()
            .map(|&i| Instance::of(vec![i]))
            .chain(pairs(&sn).map(|(i, j)| Instance::of(vec![i, j])))
            .collect(),
        Suite::S11 | Suite::S11b => {
            // The claims depend only on J, so each join is taken once, from its first pair.
            let mut seen = vec![false; n];
            let mut out = Vec::new();
            for (i, j) in pairs(&sn) {
                let jn = gc.join(i, j);
                if std::mem::replace(&mut seen[jn], true) {
                    continue;
                }
                for &f in gc.cyclic.iter().filter(|&&f| gc.contains(f, jn)) {
                    out.push(Instance::of(vec![i, j, f]));
                }
            }
            out
        }
        Suite::S12 => {
            let sub: Vec<usize> = (0..n).filter(|&i| gc.subnormal[i].is_some()).collect();
            pairs(&sub)
                .filter(|&(i, j)| gc.join(i, j) == top)
                .map(|(i, j)| Instance::of(vec![i, j]))
                .collect()
        }
    }
}

/// Checks one instance.
pub fn check(suite: Suite, sc: &SigmaContext<'_, '_>, inst: &Instance) -> Outcome {
    let gc = sc.gc;
    let top = gc.top();
    let desc = |i: usize| gc.node(i).describe();
    let v = &inst.nodes;
    let fail = |w: Value| Outcome::Fail(w);
    match suite {
        Suite::Oracle => {
            let i = v[0];
            let (oracle, defects) = sc.oracle();
            let defect = defects[i];
            if sc.sn[i] != defect.is_some() {
                let chain = match (&sc.chains[i], defect) {
                    (Some(c), _) => Some(chain_json(c)),
                    (None, Some(_)) => oracle.shortest_chain(i, top).map(|(c, _)| chain_json(&c)),
                    _ => None,
                };
                return fail(json!({"fast": sc.sn[i], "oracle": defect.is_some(), "chain": chain}));
            }
            if let Some(c) = &sc.chains[i] {
                if let Err(e) = c.validate(&sc.sigma) {
                    return fail(json!({"invalid_chain": chain_json(c), "violation": e.to_string()}));
                }
            }
            if let Some(d) = gc.subnormal[i] {
                if defect.is_none_or(|s| s > d) {
                    return fail(json!({"subnormal_defect": d, "sigma_defect": defect}));
                }
            }
            if sc.sigma.blocks().is_empty() && defect.is_none_or(|s| s > 1) {
                return fail(json!({"degenerate_partition_defect": defect}));
            }
            Outcome::Pass
        }
        Suite::Residuals => {
            let bad = sc.residual_mismatches(v[0]);
            if bad.is_empty() {
                Outcome::Pass
            } else {
                fail(json!({"mismatched": bad}))
            }
        }
        Suite::S1 => {
            let (i, j) = (v[0], v[1]);
            let (jn, mt) = (gc.join(i, j), gc.meet(i, j));
            if sc.sn[jn] && sc.sn[mt] {
                Outcome::Pass
            } else {
                fail(
                    json!({"join": desc(jn), "join_sigma_subnormal": sc.sn[jn], "meet": desc(mt), "meet_sigma_subnormal": sc.sn[mt]}),
                )
            }
        }
        Suite::S2 => {
            let (h, k) = (v[0], v[1]);
            let jn = gc.join(h, k);
            let (rh, rk, rj) = (sc.res[h], sc.res[k], sc.res[jn]);
            let mut bad = Vec::new();
            if !gc.product_is(rh, rk, rj) {
                bad.push("J^s != H^s K^s");
            }
            if !gc.permutes(rh, k) || !gc.permutes(rk, h) {
                bad.push("H^s K != K H^s");
            }
            // H K J^s = H (K J^s), and K J^s is the subgroup generated by K and J^s.
            let m = gc.join(k, rj);
            let hkr_is_j = gc.product_is(h, m, jn);
            if gc.permutes(h, k) != hkr_is_j {
                bad.push("HK = KH does not match J = H K J^s");
            }
            if bad.is_empty() {
                Outcome::Pass
            } else {
                fail(json!({"violated": bad, "H^s": desc(rh), "K^s": desc(rk), "J^s": desc(rj)}))
            }
        }
        Suite::S3 => {
            let (h, k) = (v[0], v[1]);
            let (rh, rk) = (sc.res[h], sc.res[k]);
            let ok = gc.permutes(rh, k) && gc.permutes(rk, h) && gc.permutes(rh, rk);
            if ok {
                Outcome::Pass
            } else {
                fail(json!({"H^s": desc(rh), "K^s": desc(rk)}))
            }
        }
        Suite::S4 => {
            let (a, b, c) = (sc.res[v[0]], sc.res[v[1]], sc.res[v[2]]);
            let jn = gc.join(gc.join(v[0], v[1]), v[2]);
            let rj = sc.res[jn];
            if triple_product_is(sc, a, b, c, rj) {
                Outcome::Pass
            } else {
                fail(json!({"residuals": [desc(a), desc(b), desc(c)], "J^s": desc(rj)}))
            }
        }
        Suite::S5 | Suite::S5b => {
            let m = inst.tau.expect("tau suites carry a mask");
            let (h, k) = (v[0], v[1]);
            let (rh, rk, rg) = (sc.tau_res(m, h), sc.tau_res(m, k), sc.tau_res(m, top));
            let tau = blocks_label(&sc.tau_blocks(m));
            if suite == Suite::S5 {
                if gc.join(rh, rk) == rg {
                    Outcome::Pass
                } else {
                    fail(json!({"tau": tau, "G^t": desc(rg), "<H^t,K^t>": desc(gc.join(rh, rk))}))
                }
            } else if gc.product_is(rh, rk, rg) {
                Outcome::Pass
            } else {
                Outcome::Finding(json!({"tau": tau, "G^t": desc(rg), "H^t": desc(rh), "K^t": desc(rk)}))
            }
        }
        Suite::S6 => {
            let (h, k) = (v[0], v[1]);
            match permutizer_in(&gc.lattice, gc.node(h), gc.node(k)).expect("nodes share the parent") {
                PermutizerResult::UniqueMaximum(p) => {
                    let pi = gc.lattice.index_of(&p).expect("lattice is complete");
                    if sc.sn[pi] {
                        Outcome::Pass
                    } else {
                        fail(json!({"permutizer": desc(pi)}))
                    }
                }
                PermutizerResult::NoUniqueMaximum(ms) => Outcome::Finding(json!({
                    "no_unique_maximum": ms.iter().map(|m| m.describe()).collect::<Vec<_>>()
                })),
            }
        }
        Suite::S7 => {
            let (s, h) = (v[0], v[1]);
            if gc.node(h).is_normal_in(gc.node(s)) {
                Outcome::Pass
            } else {
                fail(json!({"maximal_member": desc(h), "not_normal_in": desc(s)}))
            }
        }
        Suite::S8 | Suite::S10 => {
            let jn = gc.join(v[0], v[1]);
            if sc.sn[jn] {
                Outcome::Pass
            } else {
                fail(json!({"join": desc(jn)}))
            }
        }
        Suite::S9 => {
            let target = if v.len() == 1 { v[0] } else { gc.join(v[0], v[1]) };
            let r = sc.res[target];
            if gc.subnormal[r].is_some() {
                Outcome::Pass
            } else {
                fail(json!({"residual": desc(r), "of": desc(target)}))
            }
        }
        Suite::S11 => {
            let jn = gc.join(v[0], v[1]);
            let x = gc.join(v[2], sc.res[jn]);
            if sc.sn[x] {
                Outcome::Pass
            } else {
                fail(json!({"J": desc(jn), "J^s": desc(sc.res[jn]), "<F>J^s": desc(x)}))
            }
        }
        Suite::S11b => {
            // Literal form: some subnormal X of G with F <= X <= J.
            let (jn, f) = (gc.join(v[0], v[1]), v[2]);
            let found = (0..gc.len()).find(|&x| gc.subnormal[x].is_some() && gc.contains(f, x) && gc.contains(x, jn));
            match found {
                Some(_) => Outcome::Pass,
                None => {
                    let x = gc.join(f, sc.res[jn]);
                    Outcome::Finding(json!({
                        "J": desc(jn),
                        "J^s": desc(sc.res[jn]),
                        "<F>J^s": desc(x),
                        "<F>J^s_subnormal": gc.subnormal[x].is_some(),
                        "subnormal_between_F_and_J": false,
                    }))
                }
            }
        }
        Suite::S12 => {
            let (h, k) = (v[0], v[1]);
            let (r, s, t) = (sc.soluble_res(h), sc.soluble_res(k), sc.soluble_res(top));
            let perfect = gc.derived[r] == r && gc.derived[s] == s;
            if perfect && gc.product_is(r, s, t) {
                Outcome::Pass
            } else {
                fail(json!({"R": desc(r), "S": desc(s), "T": desc(t), "perfect": perfect}))
            }
        }
    }
}

/// Whether the product set `abc` of three subgroups equals `target`.
fn triple_product_is(sc: &SigmaContext<'_, '_>, a: usize, b: usize, c: usize, target: usize) -> bool {
    let gc = sc.gc;
    if gc.permutes(a, b) {
        return gc.product_is(gc.join(a, b), c, target);
    }
    let g = gc.group;
    let mut set = ssn_core::ElemSet::new(g.order());
    for x in gc.node(a).elements() {
        for y in gc.node(b).elements() {
            let xy = g.mul(x, y);
            for z in gc.node(c).elements() {
                set.insert(g.mul(xy, z));
            }
        }
    }
    set == *gc.node(target).members()
}

/// Replays one instance given its subject strings and witness.
pub fn replay_instance(
    suite: Suite,
    sc: &SigmaContext<'_, '_>,
    subjects: &[String],
    witness: Option<&Value>,
) -> Result<Outcome, HarnessError> {
    let nodes = subjects
        .iter()
        .map(|s| sc.gc.parse_node(s))
        .collect::<Result<Vec<_>, _>>()?;
    let tau = match suite {
        Suite::S5 | Suite::S5b => {
            let label = witness
                .and_then(|w| w["tau"].as_str())
                .ok_or_else(|| HarnessError::Replay("missing tau in witness".into()))?;
            Some(
                (0..sc.tau_masks())
                    .find(|&m| blocks_label(&sc.tau_blocks(m)) == label)
                    .ok_or_else(|| HarnessError::Replay(format!("tau {label} is not relevant here")))?,
            )
        }
        _ => None,
    };
    let inst = Instance { nodes, tau };
    if !instances(suite, sc).contains(&inst) {
        return Err(HarnessError::Replay(
            "subjects do not form an instance of this suite".into(),
        ));
    }
    Ok(check(suite, sc, &inst))
}
