use std::collections::BTreeMap;

use super::{Formula, Var};
use crate::enumerate::all_simple_graphs_up_to;
use crate::error::{Error, Result};
use crate::graph::{complement, Graph};

/// Values of (at least) the free variables.
pub type Assignment = BTreeMap<Var, usize>;

/// Largest graph order accepted by [`check_self_complementarity`].
pub const MAX_CHECK_ORDER: usize = 5;
/// Largest number of free variables accepted by [`check_self_complementarity`].
pub const MAX_CHECK_FREE_VARIABLES: usize = 3;

/// Tarskian semantics; inner quantifiers shadow outer bindings.
pub fn evaluate(g: &Graph, phi: &Formula, a: &Assignment) -> Result<bool> {
    g.require_simple()?;
    for x in phi.free_variables() {
        match a.get(&x) {
            None => return Err(Error::UncoveredVariable(x)),
            Some(&v) if v >= g.n() => return Err(Error::VertexOutOfRange { vertex: v, n: g.n() }),
            Some(_) => {}
        }
    }
    let mut env: Vec<(&str, usize)> = a.iter().map(|(x, &v)| (x.as_str(), v)).collect();
    Ok(eval(g, phi, &mut env))
}

fn lookup(env: &[(&str, usize)], x: &str) -> usize {
    env.iter().rev().find(|(y, _)| *y == x).expect("free variables are covered").1
}

fn eval<'a>(g: &Graph, phi: &'a Formula, env: &mut Vec<(&'a str, usize)>) -> bool {
    match phi {
        Formula::Bottom => false,
        Formula::Top => true,
        Formula::Eq(x, y) => lookup(env, x) == lookup(env, y),
        Formula::Edge(x, y) => g.has_edge(lookup(env, x), lookup(env, y)),
        Formula::Not(psi) => !eval(g, psi, env),
        Formula::And(a, b) => eval(g, a, env) && eval(g, b, env),
        Formula::Or(a, b) => eval(g, a, env) || eval(g, b, env),
        Formula::Exists(x, psi) => count(g, x, psi, env, 1),
        Formula::Forall(x, psi) => (0..g.n()).all(|v| {
            env.push((x, v));
            let r = eval(g, psi, env);
            env.pop();
            r
        }),
        Formula::CountExists(k, x, psi) => count(g, x, psi, env, *k),
    }
}

/// At least `k` vertices satisfy `psi` at `x`.
fn count<'a>(g: &Graph, x: &'a str, psi: &'a Formula, env: &mut Vec<(&'a str, usize)>, k: usize) -> bool {
    let mut found = 0;
    for v in 0..g.n() {
        env.push((x, v));
        if eval(g, psi, env) {
            found += 1;
        }
        env.pop();
        if found >= k {
            return true;
        }
    }
    false
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LEquivalence {
    Equivalent,
    Separator(Formula),
}

/// The first sentence on which `G` and `H` disagree.
pub fn l_equivalent(g: &Graph, h: &Graph, phis: &[Formula]) -> Result<LEquivalence> {
    if let Some(i) = phis.iter().position(|phi| !phi.is_sentence()) {
        return Err(Error::NotASentence(i));
    }
    let empty = Assignment::new();
    for phi in phis {
        if evaluate(g, phi, &empty)? != evaluate(h, phi, &empty)? {
            return Ok(LEquivalence::Separator(phi.clone()));
        }
    }
    Ok(LEquivalence::Equivalent)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplementCounterexample {
    pub formula: Formula,
    pub graph: Graph,
    pub assignment: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelfComplementReport {
    pub formulas: usize,
    pub graphs: usize,
    /// Number of `(formula, graph, assignment)` triples evaluated.
    pub checks: usize,
    pub counterexample: Option<ComplementCounterexample>,
}

impl SelfComplementReport {
    pub fn passes(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks `G, v ⊨ φ` iff `co-G, v ⊨ φ̄` for every formula, every labeled
/// simple graph on at most `max_n` vertices and every assignment of the free
/// variables. Stops at the first counterexample.
pub fn check_self_complementarity(corpus: &[Formula], max_n: usize) -> Result<SelfComplementReport> {
    if max_n > MAX_CHECK_ORDER {
        return Err(Error::InvalidBound(format!("max_n {max_n} exceeds {MAX_CHECK_ORDER}")));
    }
    for phi in corpus {
        let k = phi.free_variables().len();
        if k > MAX_CHECK_FREE_VARIABLES {
            return Err(Error::InvalidBound(format!(
                "`{phi}` has {k} free variables, limit {MAX_CHECK_FREE_VARIABLES}"
            )));
        }
    }
    let graphs = all_simple_graphs_up_to(max_n);
    let complements: Vec<Graph> = graphs
        .iter()
        .map(|g| complement(g).expect("enumerated graphs are simple"))
        .collect();
    let mut checks = 0;
    for phi in corpus {
        let phi_bar = phi.complement();
        let free: Vec<Var> = phi.free_variables().into_iter().collect();
        for (g, co) in graphs.iter().zip(&complements) {
            for a in assignments(&free, g.n()) {
                checks += 1;
                if evaluate(g, phi, &a)? != evaluate(co, &phi_bar, &a)? {
                    return Ok(SelfComplementReport {
                        formulas: corpus.len(),
                        graphs: graphs.len(),
                        checks,
                        counterexample: Some(ComplementCounterexample {
                            formula: phi.clone(),
                            graph: g.clone(),
                            assignment: a,
                        }),
                    });
                }
            }
        }
    }
    Ok(SelfComplementReport {
        formulas: corpus.len(),
        graphs: graphs.len(),
        checks,
        counterexample: None,
    })
}

/// All maps from `vars` to `0..n`, in lexicographic order.
fn assignments(vars: &[Var], n: usize) -> Vec<Assignment> {
    let total = n.checked_pow(vars.len() as u32).expect("small");
    (0..total)
        .map(|mut code| {
            let mut a = Assignment::new();
            for x in vars.iter().rev() {
                a.insert(x.clone(), code % n);
                code /= n;
            }
            a
        })
        .collect()
}
