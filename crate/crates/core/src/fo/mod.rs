//! First-order logic with counting quantifiers over the graph signature
//! `{E, =}`.

mod eval;
mod parse;

use std::collections::BTreeSet;
use std::fmt;

pub use eval::{
    check_self_complementarity, evaluate, l_equivalent, Assignment, ComplementCounterexample,
    LEquivalence, SelfComplementReport, MAX_CHECK_FREE_VARIABLES, MAX_CHECK_ORDER,
};
pub use parse::{parse_corpus, parse_formula};

pub type Var = String;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Bottom,
    Top,
    Eq(Var, Var),
    Edge(Var, Var),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
    /// At least `k` witnesses; `k >= 1`.
    CountExists(usize, Var, Box<Formula>),
}

impl Formula {
    pub fn eq(x: &str, y: &str) -> Self {
        Formula::Eq(x.into(), y.into())
    }

    pub fn edge(x: &str, y: &str) -> Self {
        Formula::Edge(x.into(), y.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(phi: Formula) -> Self {
        Formula::Not(Box::new(phi))
    }

    pub fn and(phi: Formula, psi: Formula) -> Self {
        Formula::And(Box::new(phi), Box::new(psi))
    }

    pub fn or(phi: Formula, psi: Formula) -> Self {
        Formula::Or(Box::new(phi), Box::new(psi))
    }

    pub fn exists(x: &str, phi: Formula) -> Self {
        Formula::Exists(x.into(), Box::new(phi))
    }

    pub fn forall(x: &str, phi: Formula) -> Self {
        Formula::Forall(x.into(), Box::new(phi))
    }

    pub fn count_exists(k: usize, x: &str, phi: Formula) -> Self {
        assert!(k >= 1, "counting quantifiers need a positive threshold");
        Formula::CountExists(k, x.into(), Box::new(phi))
    }

    pub fn free_variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<Var>) {
        let mut atom = |x: &str, bound: &Vec<&str>| {
            if !bound.contains(&x) {
                out.insert(x.to_string());
            }
        };
        match self {
            Formula::Bottom | Formula::Top => {}
            Formula::Eq(x, y) | Formula::Edge(x, y) => {
                atom(x, bound);
                atom(y, bound);
            }
            Formula::Not(phi) => phi.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(x, phi) | Formula::Forall(x, phi) | Formula::CountExists(_, x, phi) => {
                bound.push(x);
                phi.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Every variable name occurring in the formula, free or bound.
    pub fn variables(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit(&mut |phi| match phi {
            Formula::Eq(x, y) | Formula::Edge(x, y) => {
                out.insert(x.clone());
                out.insert(y.clone());
            }
            Formula::Exists(x, _) | Formula::Forall(x, _) | Formula::CountExists(_, x, _) => {
                out.insert(x.clone());
            }
            _ => {}
        });
        out
    }

    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Bottom | Formula::Top | Formula::Eq(..) | Formula::Edge(..) => 0,
            Formula::Not(phi) => phi.quantifier_depth(),
            Formula::And(a, b) | Formula::Or(a, b) => a.quantifier_depth().max(b.quantifier_depth()),
            Formula::Exists(_, phi) | Formula::Forall(_, phi) | Formula::CountExists(_, _, phi) => {
                1 + phi.quantifier_depth()
            }
        }
    }

    /// Quantifiers in order of a preorder traversal, as `(kind, variable)`.
    pub fn quantifiers(&self) -> Vec<(String, Var)> {
        let mut out = Vec::new();
        self.visit(&mut |phi| match phi {
            Formula::Exists(x, _) => out.push(("exists".into(), x.clone())),
            Formula::Forall(x, _) => out.push(("forall".into(), x.clone())),
            Formula::CountExists(k, x, _) => out.push((format!("exists>={k}"), x.clone())),
            _ => {}
        });
        out
    }

    fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Not(phi)
            | Formula::Exists(_, phi)
            | Formula::Forall(_, phi)
            | Formula::CountExists(_, _, phi) => phi.visit(f),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            _ => {}
        }
    }

    fn is_quantifier(&self) -> bool {
        matches!(self, Formula::Exists(..) | Formula::Forall(..) | Formula::CountExists(..))
    }

    /// The complement transform: `G, v ⊨ φ` iff `co-G, v ⊨ φ̄`.
    ///
    /// Edge atoms become `¬Exy ∧ x ≠ y`; everything else is mapped
    /// homomorphically, counting quantifiers included.
    pub fn complement(&self) -> Formula {
        match self {
            Formula::Bottom => Formula::Bottom,
            Formula::Top => Formula::Top,
            Formula::Eq(x, y) => Formula::Eq(x.clone(), y.clone()),
            Formula::Edge(x, y) => Formula::and(
                Formula::not(Formula::Edge(x.clone(), y.clone())),
                Formula::not(Formula::Eq(x.clone(), y.clone())),
            ),
            Formula::Not(phi) => Formula::not(phi.complement()),
            Formula::And(a, b) => Formula::and(a.complement(), b.complement()),
            Formula::Or(a, b) => Formula::or(a.complement(), b.complement()),
            Formula::Exists(x, phi) => Formula::Exists(x.clone(), Box::new(phi.complement())),
            Formula::Forall(x, phi) => Formula::Forall(x.clone(), Box::new(phi.complement())),
            Formula::CountExists(k, x, phi) => Formula::CountExists(*k, x.clone(), Box::new(phi.complement())),
        }
    }
}

pub fn complement_formula(phi: &Formula) -> Formula {
    phi.complement()
}

/// Quantifiers used as operands are parenthesised, since a quantifier body
/// extends as far right as possible.
struct Operand<'a>(&'a Formula);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_quantifier() {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Bottom => write!(f, "bot"),
            Formula::Top => write!(f, "top"),
            Formula::Eq(x, y) => write!(f, "{x} = {y}"),
            Formula::Edge(x, y) => write!(f, "E({x},{y})"),
            Formula::Not(phi) => match &**phi {
                Formula::Eq(x, y) => write!(f, "{x} != {y}"),
                phi => write!(f, "not {}", Operand(phi)),
            },
            Formula::And(a, b) => write!(f, "({} and {})", Operand(a), Operand(b)),
            Formula::Or(a, b) => write!(f, "({} or {})", Operand(a), Operand(b)),
            Formula::Exists(x, phi) => write!(f, "exists {x}. {phi}"),
            Formula::Forall(x, phi) => write!(f, "forall {x}. {phi}"),
            Formula::CountExists(k, x, phi) => write!(f, "exists>={k} {x}. {phi}"),
        }
    }
}

/// A fixed corpus covering every constructor, counting quantifiers and up to
/// two free variables.
pub const CORPUS: &str = "\
bot
top
x = y
E(x,y)
E(x,x)
not E(x,y)
x != y
(E(x,y) or x = y)
(E(x,y) and not top)
exists x. exists y. E(x,y)
forall x. x = x
forall x. forall y. (x = y or E(x,y))
exists>=2 x. exists y. E(x,y)
exists>=2 x. E(x,y)
exists z. (E(x,z) and E(z,y))
forall z. (E(x,z) or z = x or bot)
exists>=3 x. exists y. (E(x,y) and exists z. (E(y,z) and z != x))
forall x. exists>=2 y. (E(x,y) or x = y)
not exists x. forall y. (x = y or E(x,y))
exists x. (E(x,y) and exists y. (E(x,y) and x != y))
";

pub fn corpus() -> Vec<Formula> {
    parse_corpus(CORPUS).expect("built-in corpus parses")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_base_cases() {
        assert_eq!(
            Formula::edge("x", "y").complement(),
            Formula::and(Formula::not(Formula::edge("x", "y")), Formula::not(Formula::eq("x", "y")))
        );
        assert_eq!(Formula::eq("x", "y").complement(), Formula::eq("x", "y"));
        assert_eq!(Formula::Top.complement(), Formula::Top);
        assert_eq!(Formula::Bottom.complement(), Formula::Bottom);
        assert_eq!(
            Formula::edge("x", "x").complement(),
            Formula::and(Formula::not(Formula::edge("x", "x")), Formula::not(Formula::eq("x", "x")))
        );
    }

    #[test]
    fn complement_preserves_syntax_measures() {
        for phi in corpus() {
            let c = phi.complement();
            assert_eq!(c.free_variables(), phi.free_variables(), "{phi}");
            assert_eq!(c.variables(), phi.variables(), "{phi}");
            assert_eq!(c.quantifier_depth(), phi.quantifier_depth(), "{phi}");
            assert_eq!(c.quantifiers(), phi.quantifiers(), "{phi}");
        }
    }

    #[test]
    fn corpus_shape() {
        let corpus = corpus();
        assert_eq!(corpus.len(), 20);
        assert!(corpus.iter().all(|phi| phi.free_variables().len() <= 2));
        let mut kinds = std::collections::HashSet::new();
        for phi in &corpus {
            phi.visit(&mut |p| {
                kinds.insert(std::mem::discriminant(p));
            });
        }
        assert_eq!(kinds.len(), 10);
    }

    #[test]
    fn free_variables_and_shadowing() {
        let phi = parse_formula("exists x. (E(x,y) and exists y. E(x,y))").unwrap();
        assert_eq!(phi.free_variables(), BTreeSet::from(["y".to_string()]));
        assert_eq!(phi.variables().len(), 2);
        assert_eq!(phi.quantifier_depth(), 2);
        assert!(parse_formula("forall x. x = x").unwrap().is_sentence());
    }
}
