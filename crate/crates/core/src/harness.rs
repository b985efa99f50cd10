//! Exhaustive verification campaigns over the height-(0,1) corpora.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::LiePosetAlgebra;
use crate::enumerate::{corpus_size, graph_from_mask, mask_of_graph, poset_from_mask};
use crate::error::Error;
use crate::frobenius::{analyze, is_fixed_point, is_frobenius_by_graph};
use crate::graph::RelationGraph;
use crate::index::{index_formula, CommutatorMatrix, DEFAULT_TRIALS};
use crate::isomorphism::{verify_b_reduction, verify_cd_isomorphism};
use crate::poset::{Family, SignedPoset};
use crate::reduction::{expected_rank, reduce};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    FormulaVsOracle,
    Additivity,
    FrobeniusCriterion,
    FunctionalKernel,
    PrincipalElement,
    BinarySpectrum,
    Isomorphism,
    ReductionSoundness,
    DimensionCount,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::FormulaVsOracle,
        Check::Additivity,
        Check::FrobeniusCriterion,
        Check::FunctionalKernel,
        Check::PrincipalElement,
        Check::BinarySpectrum,
        Check::Isomorphism,
        Check::ReductionSoundness,
        Check::DimensionCount,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::FormulaVsOracle => "formula-vs-oracle",
            Check::Additivity => "additivity",
            Check::FrobeniusCriterion => "frobenius-criterion",
            Check::FunctionalKernel => "functional-kernel",
            Check::PrincipalElement => "principal-element",
            Check::BinarySpectrum => "binary-spectrum",
            Check::Isomorphism => "isomorphism",
            Check::ReductionSoundness => "reduction-soundness",
            Check::DimensionCount => "dimension-count",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse { line: 0, message: format!("unknown check {s:?}") })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub family: Family,
    pub n: usize,
    pub mask: u64,
    pub check: Check,
    pub status: Status,
    pub witness: Value,
}

impl CheckResult {
    pub fn poset(&self) -> SignedPoset {
        poset_from_mask(self.family, self.n, self.mask)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    /// Each family is enumerated for `n = 1..=n_max`.
    pub families: Vec<(Family, usize)>,
    pub checks: Vec<Check>,
    pub seed: u64,
    pub trials: usize,
    pub jobs: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            families: vec![(Family::C, 3)],
            checks: Check::ALL.to_vec(),
            seed: 0,
            trials: DEFAULT_TRIALS,
            jobs: 1,
        }
    }
}

/// Per-poset seed, so results do not depend on how work is chunked.
fn poset_seed(seed: u64, family: Family, n: usize, mask: u64) -> u64 {
    let tag = family as u64 * 0x100 + n as u64;
    seed ^ mask.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ tag.wrapping_mul(0xc2b2_ae3d_27d4_eb4f)
}

/// Shared data for running checks on one poset.
struct Case {
    family: Family,
    n: usize,
    mask: u64,
    poset: SignedPoset,
    graph: RelationGraph,
    seed: u64,
    trials: usize,
    oracle: std::cell::OnceCell<usize>,
}

impl Case {
    fn new(family: Family, n: usize, poset: SignedPoset, seed: u64, trials: usize) -> Result<Self, Error> {
        let graph = poset.relation_graph()?;
        let mask = mask_of_graph(family, &graph);
        let seed = poset_seed(seed, family, n, mask);
        Ok(Case { family, n, mask, poset, graph, seed, trials, oracle: std::cell::OnceCell::new() })
    }

    fn oracle(&self) -> usize {
        *self.oracle.get_or_init(|| {
            let c = CommutatorMatrix::of(&self.poset).expect("valid posets have closed brackets");
            c.dim() - c.generic_rank(self.trials, self.seed)
        })
    }

    fn result(&self, check: Check, status: Status, witness: Value) -> CheckResult {
        CheckResult { family: self.family, n: self.n, mask: self.mask, check, status, witness }
    }

    fn base_witness(&self) -> serde_json::Map<String, Value> {
        let mut m = serde_json::Map::new();
        m.insert("poset".into(), json!(self.poset.to_string()));
        m.insert("seed".into(), json!(self.seed));
        m
    }

    fn run(&self, check: Check) -> CheckResult {
        let mut w = self.base_witness();
        let outcome = match check {
            Check::FormulaVsOracle => self.formula_vs_oracle(&mut w),
            Check::Additivity => self.additivity(&mut w),
            Check::FrobeniusCriterion => self.frobenius_criterion(&mut w),
            Check::FunctionalKernel | Check::PrincipalElement | Check::BinarySpectrum => self.frobenius(check, &mut w),
            Check::Isomorphism => self.isomorphism(&mut w),
            Check::ReductionSoundness => self.reduction(&mut w),
            Check::DimensionCount => self.dimension(&mut w),
        };
        let status = match outcome {
            Ok(Some(true)) => Status::Pass,
            Ok(Some(false)) => Status::Fail,
            Ok(None) => Status::Skipped,
            Err(e) => {
                w.insert("error".into(), json!(e.code()));
                w.insert("message".into(), json!(e.to_string()));
                Status::Fail
            }
        };
        self.result(check, status, Value::Object(w))
    }

    fn formula_vs_oracle(&self, w: &mut serde_json::Map<String, Value>) -> Result<Option<bool>, Error> {
        let f = index_formula(&self.poset)?;
        let o = self.oracle();
        w.insert("formula".into(), json!(f.value));
        w.insert("rule".into(), json!(f.rule));
        w.insert("oracle".into(), json!(o));
        Ok(Some(f.value == o))
    }

    fn additivity(&self, w: &mut serde_json::Map<String, Value>) -> Result<Option<bool>, Error> {
        let comps = self.graph.graph_components();
        if comps.len() < 2 {
            return Ok(None);
        }
        let mut parts = Vec::new();
        for c in &comps {
            let q = self.poset.restrict_to_vertices(&c.vertices)?;
            let cm = CommutatorMatrix::of(&q)?;
            parts.push(cm.dim() - cm.generic_rank(self.trials, self.seed));
        }
        let total: usize = parts.iter().sum();
        w.insert("components".into(), json!(parts));
        w.insert("oracle".into(), json!(self.oracle()));
        Ok(Some(total == self.oracle()))
    }

    fn frobenius_criterion(&self, w: &mut serde_json::Map<String, Value>) -> Result<Option<bool>, Error> {
        let by_graph = is_frobenius_by_graph(&self.poset)?;
        w.insert("by_graph".into(), json!(by_graph));
        w.insert("oracle".into(), json!(self.oracle()));
        Ok(Some(by_graph == (self.oracle() == 0)))
    }

    fn frobenius(&self, check: Check, w: &mut serde_json::Map<String, Value>) -> Result<Option<bool>, Error> {
        if !is_frobenius_by_graph(&self.poset)? {
            return Ok(None);
        }
        let a = analyze(&self.poset)?;
        let alg = LiePosetAlgebra::new(&self.poset)?;
        Ok(Some(match check {
            Check::FunctionalKernel => {
                w.insert("functional".into(), json!(a.functional.render()));
                w.insert("kernel_dim".into(), json!(a.kernel_dim));
                a.kernel_dim == 0
            }
            Check::PrincipalElement => {
                w.insert("principal".into(), a.principal.to_json());
                let fixed = is_fixed_point(&alg, &a.functional, &a.principal);
                w.insert("fixed_point".into(), json!(fixed));
                fixed && a.principal.has_half_pattern()
            }
            _ => {
                w.insert("spectrum".into(), a.spectrum.to_json());
                let d = alg.dim();
                a.spectrum.is_binary() && a.spectrum.zero_count() * 2 == d && a.spectrum.dim() == d
            }
        }))
    }

    fn isomorphism(&self, w: &mut serde_json::Map<String, Value>) -> Result<Option<bool>, Error> {
        match self.family {
            Family::D => {
                let s = verify_cd_isomorphism(&self.poset)?;
                w.insert("signs".into(), json!(s.render()));
                Ok(Some(true))
            }
            Family::B => {
                let b = verify_b_reduction(&self.poset)?;
                let s = verify_cd_isomorphism(&self.poset.without_zero()?)?;
                w.insert("b_to_d".into(), json!(b));
                w.insert("signs".into(), json!(s.render()));
                Ok(Some(b))
            }
            _ => Ok(None),
        }
    }

    fn reduction(&self, w: &mut serde_json::Map<String, Value>) -> Result<Option<bool>, Error> {
        if self.family != Family::C || !self.graph.is_connected() {
            return Ok(None);
        }
        let t = reduce(&self.poset, self.seed)?;
        let expected = expected_rank(&self.graph);
        let dim = LiePosetAlgebra::new(&self.poset)?.dim();
        w.insert("kinds".into(), json!(t.kinds()));
        w.insert("ranks".into(), json!(t.steps.iter().map(|s| s.rank).collect::<Vec<_>>()));
        w.insert("expected_rank".into(), json!(expected));
        w.insert("oracle".into(), json!(self.oracle()));
        Ok(Some(t.rank_preserved() && t.final_rank() == expected && dim - 2 * t.final_rank() == self.oracle()))
    }

    fn dimension(&self, w: &mut serde_json::Map<String, Value>) -> Result<Option<bool>, Error> {
        let dim = LiePosetAlgebra::new(&self.poset)?.dim();
        let count = self.graph.vertices.len() + self.graph.edge_count();
        w.insert("dim".into(), json!(dim));
        w.insert("vertices_plus_edges".into(), json!(count));
        Ok(Some(dim == count))
    }
}

fn run_poset(cfg: &CampaignConfig, family: Family, n: usize, poset: SignedPoset) -> Vec<CheckResult> {
    match Case::new(family, n, poset, cfg.seed, cfg.trials) {
        Ok(case) => cfg.checks.iter().map(|&c| case.run(c)).collect(),
        Err(e) => unreachable!("corpus posets have relation graphs: {e}"),
    }
}

/// Runs one check on one corpus poset.
pub fn run_check(cfg: &CampaignConfig, check: Check, poset: &SignedPoset) -> Result<CheckResult, Error> {
    Ok(Case::new(poset.family(), poset.n(), poset.clone(), cfg.seed, cfg.trials)?.run(check))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub family: Family,
    pub check: Check,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub status: Status,
}

#[derive(Debug, Clone)]
pub struct Campaign {
    pub config: CampaignConfig,
    pub poset_counts: BTreeMap<String, u64>,
    pub results: Vec<CheckResult>,
}

impl Campaign {
    pub fn summaries(&self) -> Vec<CheckSummary> {
        let mut out = Vec::new();
        for &(family, _) in &self.config.families {
            for &check in &self.config.checks {
                let rs = self.results.iter().filter(|r| r.family == family && r.check == check);
                let (mut passed, mut failed, mut skipped) = (0, 0, 0);
                for r in rs {
                    match r.status {
                        Status::Pass => passed += 1,
                        Status::Fail => failed += 1,
                        Status::Skipped => skipped += 1,
                    }
                }
                let checked = passed + failed;
                let status = if failed > 0 {
                    Status::Fail
                } else if checked == 0 {
                    Status::Skipped
                } else {
                    Status::Pass
                };
                out.push(CheckSummary { family, check, checked, passed, failed, skipped, status });
            }
        }
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn all_passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn report_json(&self) -> Value {
        json!({
            "config": self.config,
            "posets": self.poset_counts,
            "summaries": self.summaries(),
            "failures": self.failures().collect::<Vec<_>>(),
        })
    }

    pub fn report_string(&self) -> String {
        serde_json::to_string_pretty(&self.report_json()).expect("plain data") + "\n"
    }

    pub fn summary_table(&self) -> String {
        let mut s = format!("{:<7} {:<20} {:>8} {:>8} {:>8} {:>8}  status\n", "family", "check", "checked", "passed", "failed", "skipped");
        for r in self.summaries() {
            let status = match r.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skipped",
            };
            s.push_str(&format!(
                "{:<7} {:<20} {:>8} {:>8} {:>8} {:>8}  {status}\n",
                r.family.to_string(),
                r.check.name(),
                r.checked,
                r.passed,
                r.failed,
                r.skipped
            ));
        }
        s
    }
}

pub fn run_campaign(cfg: &CampaignConfig) -> Campaign {
    let mut results = Vec::new();
    let mut poset_counts = BTreeMap::new();
    for &(family, n_max) in &cfg.families {
        for n in 1..=n_max {
            let size = corpus_size(family, n);
            poset_counts.insert(format!("{family}{n}"), size);
            let jobs = cfg.jobs.max(1) as u64;
            let chunk = size.div_ceil(jobs);
            let chunks: Vec<Vec<CheckResult>> = std::thread::scope(|scope| {
                let handles: Vec<_> = (0..jobs)
                    .map(|j| {
                        let (lo, hi) = ((j * chunk).min(size), ((j + 1) * chunk).min(size));
                        scope.spawn(move || {
                            (lo..hi).flat_map(|mask| run_poset(cfg, family, n, poset_from_mask(family, n, mask))).collect()
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            });
            results.extend(chunks.into_iter().flatten());
        }
    }
    Campaign { config: cfg.clone(), poset_counts, results }
}

/// Greedily deletes vertices, then edges and loops, while `fails` still
/// holds; returns a locally minimal failing witness.
pub fn minimize_with(result: &CheckResult, fails: impl Fn(&SignedPoset) -> bool) -> CheckResult {
    if result.status != Status::Fail {
        return result.clone();
    }
    let family = result.family;
    let mut g = graph_from_mask(family, result.n, result.mask);
    loop {
        let candidates = shrink_candidates(&g);
        let next = candidates.into_iter().find(|h| h.to_poset(family).map(|p| fails(&p)).unwrap_or(false));
        match next {
            Some(h) => g = h,
            None => break,
        }
    }
    let p = g.to_poset(family).expect("shrunk graphs are valid");
    let mut w = serde_json::Map::new();
    w.insert("poset".into(), json!(p.to_string()));
    w.insert("minimized_from".into(), json!({ "n": result.n, "mask": result.mask, "witness": result.witness }));
    CheckResult {
        family,
        n: g.vertices.len(),
        mask: mask_of_graph(family, &g),
        check: result.check,
        status: Status::Fail,
        witness: Value::Object(w),
    }
}

fn shrink_candidates(g: &RelationGraph) -> Vec<RelationGraph> {
    let mut out = Vec::new();
    if g.vertices.len() > 1 {
        for &v in &g.vertices {
            out.push(delete_vertex(g, v));
        }
    }
    for &(a, b) in &g.edges {
        let mut h = g.clone();
        h.remove_edge(a, b);
        out.push(h);
    }
    for &v in &g.self_loops {
        let mut h = g.clone();
        h.remove_edge(v, v);
        out.push(h);
    }
    out
}

fn delete_vertex(g: &RelationGraph, v: i64) -> RelationGraph {
    let relabel = |x: i64| if x > v { x - 1 } else { x };
    let mut h = RelationGraph::new(g.vertices.len() - 1);
    for &(a, b) in &g.edges {
        if a != v && b != v {
            h.add_edge(relabel(a), relabel(b));
        }
    }
    for &x in &g.self_loops {
        if x != v {
            h.add_edge(relabel(x), relabel(x));
        }
    }
    h
}

/// Re-runs the result's own check as the failure predicate.
pub fn minimize_failure(cfg: &CampaignConfig, result: &CheckResult) -> CheckResult {
    minimize_with(result, |p| run_check(cfg, result.check, p).map(|r| r.status == Status::Fail).unwrap_or(false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::index_oracle;

    fn cfg(families: Vec<(Family, usize)>) -> CampaignConfig {
        CampaignConfig { families, ..CampaignConfig::default() }
    }

    #[test]
    fn c2_all_checks_pass() {
        let c = run_campaign(&cfg(vec![(Family::C, 2)]));
        assert_eq!(c.poset_counts["C2"], 8);
        assert!(c.all_passed(), "{}", c.summary_table());
        let s = c.summaries();
        let iso = s.iter().find(|r| r.check == Check::Isomorphism).unwrap();
        assert_eq!(iso.status, Status::Skipped);
        let f = s.iter().find(|r| r.check == Check::FormulaVsOracle).unwrap();
        assert_eq!(f.checked, 10);
    }

    #[test]
    fn d1_is_the_antichain() {
        let c = run_campaign(&cfg(vec![(Family::D, 1)]));
        assert_eq!(c.poset_counts["D1"], 1);
        let r = c.results.iter().find(|r| r.check == Check::FormulaVsOracle).unwrap();
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.witness["oracle"], 1);
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let one = run_campaign(&cfg(vec![(Family::C, 3), (Family::B, 2)]));
        let four = run_campaign(&CampaignConfig { jobs: 4, ..cfg(vec![(Family::C, 3), (Family::B, 2)]) });
        let strip = |c: &Campaign| {
            let mut v = c.report_json();
            v["config"]["jobs"] = json!(0);
            serde_json::to_string(&v).unwrap()
        };
        assert_eq!(strip(&one), strip(&four));
        assert_eq!(one.results, four.results);
    }

    #[test]
    fn pass_results_are_not_minimized() {
        let c = run_campaign(&cfg(vec![(Family::C, 1)]));
        let r = &c.results[0];
        assert_eq!(&minimize_with(r, |_| true), r);
    }

    fn failing(family: Family, edges: &[(i64, i64)], n: usize, check: Check) -> CheckResult {
        let mut g = RelationGraph::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        CheckResult { family, n, mask: mask_of_graph(family, &g), check, status: Status::Fail, witness: Value::Null }
    }

    #[test]
    fn off_by_one_formula_shrinks_to_one_edge() {
        let faulty = |p: &SignedPoset| {
            let v = index_formula(p).unwrap().value;
            if p.relation_graph().unwrap().edge_count() >= 1 {
                v + 1
            } else {
                v
            }
        };
        let fails = |p: &SignedPoset| faulty(p) != index_oracle(p, 5, 0).unwrap();
        let r = failing(Family::C, &[(1, 2), (2, 3), (3, 4)], 4, Check::FormulaVsOracle);
        assert!(fails(&r.poset()));
        let m = minimize_with(&r, fails);
        let g = graph_from_mask(m.family, m.n, m.mask);
        assert_eq!(g.edge_count(), 1);
        assert!(fails(&m.poset()));
    }

    #[test]
    fn triangle_blind_detector_shrinks_to_a_triangle() {
        // odd cycles of length three are missed; loops and longer cycles are seen
        let faulty = |g: &RelationGraph| {
            g.graph_components().iter().all(|c| {
                let sub: Vec<Vec<i64>> = g.simple_cycles().into_iter().filter(|cy| c.vertices.contains(&cy[0])).collect();
                let odd = g.self_loops.iter().any(|v| c.vertices.contains(v)) || sub.iter().any(|cy| cy.len() % 2 == 1 && cy.len() > 3);
                c.is_unicyclic && odd
            })
        };
        let fails = |p: &SignedPoset| faulty(&p.relation_graph().unwrap()) != (index_oracle(p, 5, 0).unwrap() == 0);
        let r = failing(Family::C, &[(1, 2), (2, 3), (1, 3), (3, 4)], 4, Check::FrobeniusCriterion);
        assert!(fails(&r.poset()));
        let m = minimize_with(&r, fails);
        let g = graph_from_mask(m.family, m.n, m.mask);
        assert_eq!(g.vertices.len(), 3);
        assert_eq!(g.edges, [(1, 2), (1, 3), (2, 3)].into_iter().collect());
        assert!(g.self_loops.is_empty());
    }

    #[test]
    fn checks_parse_by_name() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("nope".parse::<Check>().is_err());
    }
}
