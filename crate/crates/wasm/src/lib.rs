//! Browser bindings: edit a relation graph and watch the index and spectrum.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use lieposet::algebra::render_matrix_form;
use lieposet::{frobenius, index_formula, index_oracle, reduce, Family, RelationGraph, SignedPoset};

const TRIALS: usize = 5;

#[wasm_bindgen]
pub struct Demo {
    family: Family,
    graph: RelationGraph,
    seed: u64,
}

#[wasm_bindgen]
impl Demo {
    #[wasm_bindgen(constructor)]
    pub fn new(family: &str, n: usize) -> Result<Demo, JsError> {
        let family: Family = family.parse().map_err(|_| JsError::new("family must be B, C or D"))?;
        if !family.is_signed() || n == 0 || n > 6 {
            return Err(JsError::new("family must be B, C or D with 1 <= n <= 6"));
        }
        Ok(Demo { family, graph: RelationGraph::new(n), seed: 0 })
    }

    pub fn set_seed(&mut self, seed: u64) {
        self.seed = seed;
    }

    /// Toggles the edge {i, j}; i == j toggles a loop (type C only).
    pub fn toggle(&mut self, i: u32, j: u32) -> bool {
        let (i, j) = (i as i64, j as i64);
        let n = self.graph.vertices.len() as i64;
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return false;
        }
        if i == j {
            if self.family != Family::C {
                return false;
            }
            if !self.graph.self_loops.remove(&i) {
                self.graph.self_loops.insert(i);
            }
        } else if !self.graph.remove_edge(i, j) {
            self.graph.add_edge(i, j);
        }
        true
    }

    pub fn analyze(&self) -> String {
        match self.poset() {
            Ok(p) => report(&p, &self.graph, self.seed).to_string(),
            Err(e) => json!({ "error": e.to_string() }).to_string(),
        }
    }

    pub fn reduction(&self) -> String {
        match self.poset().and_then(|p| reduce(&p, self.seed)) {
            Ok(t) => t.render(),
            Err(e) => format!("error: {e}"),
        }
    }

    pub fn graph_dot(&self) -> String {
        lieposet::io::relation_graph_dot(&self.graph)
    }
}

impl Demo {
    fn poset(&self) -> lieposet::Result<SignedPoset> {
        self.graph.to_poset(self.family)
    }
}

fn report(p: &SignedPoset, g: &RelationGraph, seed: u64) -> Value {
    let formula = index_formula(p).ok().map(|f| f.value);
    let oracle = index_oracle(p, TRIALS, seed).ok();
    let frob = frobenius::analyze(p).ok();
    let components: Vec<Value> = g
        .graph_components()
        .iter()
        .map(|c| json!({ "vertices": c.vertices, "unicyclic": c.is_unicyclic, "odd_cycle": c.has_odd_cycle }))
        .collect();
    json!({
        "poset": p.to_string(),
        "matrix_form": render_matrix_form(p),
        "components": components,
        "index_formula": formula,
        "index_oracle": oracle,
        "seed": seed,
        "frobenius": frob.is_some(),
        "functional": frob.as_ref().map(|a| a.functional.render()),
        "principal": frob.as_ref().map(|a| a.principal.render()),
        "spectrum": frob.as_ref().map(|a| a.spectrum.to_string()),
        "binary": frob.as_ref().map(|a| a.spectrum.is_binary()),
    })
}
