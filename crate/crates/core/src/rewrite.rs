//! The reduction relation on path polynomials: single steps, normal forms,
//! and congruence testing against a complete system.
//!
//! A rule is a monic polynomial `lt + rem`; reducing `f` at an occurrence
//! `u*lt*v` of some term replaces that term by the corresponding multiple
//! of `-rem`. The deterministic strategy rewrites the order-greatest
//! reducible term, picking the lowest-index rule and then the leftmost
//! occurrence; completion makes the result strategy-independent.

use thiserror::Error;

use crate::order::PathOrder;
use crate::poly::{AlgebraError, PathPolynomial};
use crate::quiver::{Path, Quiver};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RewriteError {
    #[error("system is not confirmed complete; congruence would only be a semi-decision")]
    NotComplete,
    #[error("endpoint mismatch between the polynomials")]
    TypeMismatch,
    #[error("a rule must be a nonzero polynomial")]
    ZeroRule,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// An oriented monic relation with cached leading term and remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    poly: PathPolynomial,
    lt: Path,
    rem: PathPolynomial,
    /// Exact bound on the total degree of any product `u*r*v` of original
    /// relations appearing in this rule's derivation; used by the
    /// verification oracles. Equals the leading-term degree for input rules.
    witness_degree: usize,
}

impl Rule {
    pub fn new(poly: &PathPolynomial, order: &PathOrder) -> Result<Rule, RewriteError> {
        let monic = poly.monic().map_err(|_| RewriteError::ZeroRule)?;
        let (lt, _) = monic.leading_term().unwrap();
        let lt = lt.clone();
        let rem = monic.sub(&PathPolynomial::monomial(Scalar::one(), lt.clone()), order)?;
        let witness_degree = lt.len();
        Ok(Rule { poly: monic, lt, rem, witness_degree })
    }

    pub(crate) fn with_witness(mut self, witness_degree: usize) -> Rule {
        self.witness_degree = witness_degree;
        self
    }

    pub fn poly(&self) -> &PathPolynomial {
        &self.poly
    }

    pub fn lt(&self) -> &Path {
        &self.lt
    }

    /// `poly - lt`, so a reduction step adds `-k * u * rem * v`.
    pub fn rem(&self) -> &PathPolynomial {
        &self.rem
    }

    pub fn witness_degree(&self) -> usize {
        self.witness_degree
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SystemStatus {
    Candidate,
    Complete,
}

#[derive(Clone, Debug)]
pub struct RewriteSystem {
    quiver: Quiver,
    order: PathOrder,
    rules: Vec<Rule>,
    status: SystemStatus,
}

/// One reduction opportunity: `rule`'s leading term occurs in the
/// `term_index`-th term of the polynomial at arrow offset `offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Redex {
    pub term_index: usize,
    pub rule_index: usize,
    pub offset: usize,
}

/// Occurrences of `lt` as a contiguous subpath of `hay`. An identity
/// leading term occurs at every position whose visited object is its base.
pub(crate) fn occurrences(quiver: &Quiver, hay: &Path, lt: &Path) -> Vec<usize> {
    let mut out = Vec::new();
    if lt.is_identity() {
        for i in 0..=hay.len() {
            if hay.object_at(quiver, i) == lt.src() {
                out.push(i);
            }
        }
        return out;
    }
    let (h, n) = (hay.arrows(), lt.len());
    if h.len() < n {
        return out;
    }
    for i in 0..=h.len() - n {
        if &h[i..i + n] == lt.arrows() {
            out.push(i);
        }
    }
    out
}

impl RewriteSystem {
    /// Monicizes the relations; zero relations are dropped.
    pub fn new(
        quiver: Quiver,
        order: PathOrder,
        relations: Vec<PathPolynomial>,
    ) -> Result<RewriteSystem, RewriteError> {
        let mut rules = Vec::new();
        for rel in &relations {
            if rel.is_zero() {
                continue;
            }
            rules.push(Rule::new(rel, &order)?);
        }
        Ok(RewriteSystem { quiver, order, rules, status: SystemStatus::Candidate })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn order(&self) -> &PathOrder {
        &self.order
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn status(&self) -> SystemStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == SystemStatus::Complete
    }

    pub(crate) fn set_status(&mut self, status: SystemStatus) {
        self.status = status;
    }

    pub(crate) fn set_rules(&mut self, rules: Vec<Rule>) {
        self.rules = rules;
        self.status = SystemStatus::Candidate;
    }

    pub(crate) fn push_rule(&mut self, rule: Rule) {
        self.rules.push(rule);
        self.status = SystemStatus::Candidate;
    }

    /// First redex under the deterministic strategy, if any.
    pub fn find_redex(&self, f: &PathPolynomial) -> Option<Redex> {
        for (term_index, (path, _)) in f.terms().enumerate() {
            for (rule_index, rule) in self.rules.iter().enumerate() {
                if let Some(&offset) = occurrences(&self.quiver, path, &rule.lt).first() {
                    return Some(Redex { term_index, rule_index, offset });
                }
            }
        }
        None
    }

    /// Every redex of `f`, in deterministic (term, rule, offset) order.
    pub fn all_redexes(&self, f: &PathPolynomial) -> Vec<Redex> {
        let mut out = Vec::new();
        for (term_index, (path, _)) in f.terms().enumerate() {
            for (rule_index, rule) in self.rules.iter().enumerate() {
                for offset in occurrences(&self.quiver, path, &rule.lt) {
                    out.push(Redex { term_index, rule_index, offset });
                }
            }
        }
        out
    }

    /// Applies one reduction step: `f - k * u * rule * v`.
    pub fn apply_redex(&self, f: &PathPolynomial, redex: Redex) -> PathPolynomial {
        let rule = &self.rules[redex.rule_index];
        let (path, coeff) = f
            .terms()
            .nth(redex.term_index)
            .expect("redex term index in range");
        let k = coeff.clone();
        let u = path.slice(&self.quiver, 0, redex.offset);
        let v = path.slice(&self.quiver, redex.offset + rule.lt.len(), path.len());
        // f - k*u*(lt + rem)*v = (f without the k*path term) - k*u*rem*v
        let dropped = f
            .sub(&PathPolynomial::monomial(k.clone(), path.clone()), &self.order)
            .expect("term is parallel");
        let tail = rule
            .rem
            .sandwich(&u, &v, &self.order)
            .expect("remainder terms are parallel to the leading term")
            .scalar_mul(&k);
        dropped.sub(&tail, &self.order).expect("parallel")
    }

    /// One deterministic reduction step; `None` when `f` is irreducible.
    pub fn reduce_once(&self, f: &PathPolynomial) -> Option<PathPolynomial> {
        self.find_redex(f).map(|r| self.apply_redex(f, r))
    }

    pub fn is_irreducible(&self, f: &PathPolynomial) -> bool {
        self.find_redex(f).is_none()
    }

    /// Iterates reduction to a fixed point. Termination is guaranteed by
    /// the admissible order; the step cap only traps implementation bugs.
    pub fn normal_form(&self, f: &PathPolynomial) -> PathPolynomial {
        let mut g = f.clone();
        for _ in 0..STEP_CAP {
            match self.reduce_once(&g) {
                Some(next) => g = next,
                None => return g,
            }
        }
        panic!("internal limit: reduction did not terminate within {STEP_CAP} steps");
    }

    /// Normal form with the (term, rule, occurrence) choice delegated to
    /// `choose`, which receives the number of available redexes and returns
    /// an index below it. Used to exercise strategy independence.
    pub fn normal_form_with<F: FnMut(usize) -> usize>(
        &self,
        f: &PathPolynomial,
        mut choose: F,
    ) -> PathPolynomial {
        let mut g = f.clone();
        for _ in 0..STEP_CAP {
            let redexes = self.all_redexes(&g);
            if redexes.is_empty() {
                return g;
            }
            let pick = choose(redexes.len()) % redexes.len();
            g = self.apply_redex(&g, redexes[pick]);
        }
        panic!("internal limit: reduction did not terminate within {STEP_CAP} steps");
    }

    /// Decides `f =_R h` via normal forms. Requires a complete system.
    pub fn is_congruent(
        &self,
        f: &PathPolynomial,
        h: &PathPolynomial,
    ) -> Result<bool, RewriteError> {
        if !self.is_complete() {
            return Err(RewriteError::NotComplete);
        }
        self.is_congruent_semi(f, h)
    }

    /// Best-effort variant for candidate systems: `true` is sound, `false`
    /// is only meaningful once the system is complete.
    pub fn is_congruent_semi(
        &self,
        f: &PathPolynomial,
        h: &PathPolynomial,
    ) -> Result<bool, RewriteError> {
        if f.src() != h.src() || f.tgt() != h.tgt() {
            return Err(RewriteError::TypeMismatch);
        }
        let diff = f.sub(h, &self.order)?;
        Ok(self.normal_form(&diff).is_zero())
    }

    /// Reduction loop that also propagates the witness-degree bound: a step
    /// rewriting a term of degree `d` with rule `g` expands into original
    /// relation products of degree at most `d - |lt(g)| + witness(g)`.
    pub(crate) fn normal_form_tracked(
        &self,
        f: &PathPolynomial,
        witness_in: usize,
    ) -> (PathPolynomial, usize) {
        let mut g = f.clone();
        let mut witness = witness_in;
        for _ in 0..STEP_CAP {
            match self.find_redex(&g) {
                None => return (g, witness),
                Some(redex) => {
                    let rule = &self.rules[redex.rule_index];
                    let d = g.terms().nth(redex.term_index).unwrap().0.len();
                    witness = witness.max(d - rule.lt.len() + rule.witness_degree);
                    g = self.apply_redex(&g, redex);
                }
            }
        }
        panic!("internal limit: reduction did not terminate within {STEP_CAP} steps");
    }
}

const STEP_CAP: usize = 1_000_000;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::PathOrder;
    use crate::quiver::Quiver;

    fn hecke_quiver() -> (Quiver, PathOrder) {
        let q = Quiver::new(
            vec!["B"],
            vec![("e1", "B", "B"), ("e2", "B", "B"), ("e3", "B", "B")],
        )
        .unwrap();
        let o = PathOrder::deglex(&q, &["e1", "e2", "e3"]).unwrap();
        (q, o)
    }

    fn mono(q: &Quiver, names: &[&str]) -> PathPolynomial {
        PathPolynomial::monomial(Scalar::one(), q.path(names).unwrap())
    }

    fn system(q: &Quiver, o: &PathOrder, rels: Vec<PathPolynomial>) -> RewriteSystem {
        RewriteSystem::new(q.clone(), o.clone(), rels).unwrap()
    }

    #[test]
    fn reduces_idempotent_square() {
        let (q, o) = hecke_quiver();
        let rel = mono(&q, &["e1", "e1"]).sub(&mono(&q, &["e1"]), &o).unwrap();
        let sys = system(&q, &o, vec![rel]);
        let reduced = sys.reduce_once(&mono(&q, &["e1", "e1"])).unwrap();
        assert_eq!(reduced, mono(&q, &["e1"]));
        assert!(sys.reduce_once(&mono(&q, &["e1"])).is_none());
    }

    #[test]
    fn substitutes_inside_a_word() {
        let (q, o) = hecke_quiver();
        let rel = mono(&q, &["e3", "e1"]).sub(&mono(&q, &["e1", "e3"]), &o).unwrap();
        let sys = system(&q, &o, vec![rel]);
        let reduced = sys.reduce_once(&mono(&q, &["e1", "e3", "e1"])).unwrap();
        assert_eq!(reduced, mono(&q, &["e1", "e1", "e3"]));
    }

    #[test]
    fn normal_form_without_rules_is_identity_map() {
        let (q, o) = hecke_quiver();
        let sys = system(&q, &o, vec![]);
        let f = mono(&q, &["e2", "e1"]).sub(&mono(&q, &["e3"]), &o).unwrap();
        assert_eq!(sys.normal_form(&f), f);
    }

    #[test]
    fn identity_leading_term_collapses_through_object() {
        // rule 1(B) alone: every path through B reduces to zero
        let q = Quiver::new(
            vec!["C", "B"],
            vec![("p", "C", "B"), ("qq", "B", "C"), ("y", "C", "C")],
        )
        .unwrap();
        let o = PathOrder::deglex(&q, &["p", "qq", "y"]).unwrap();
        let one_b = PathPolynomial::monomial(Scalar::one(), q.identity("B").unwrap());
        let sys = system(&q, &o, vec![one_b]);
        assert!(sys.normal_form(&mono(&q, &["p", "qq"])).is_zero());
        assert!(sys.normal_form(&mono(&q, &["y"])) == mono(&q, &["y"]));
        // the identity itself reduces
        let idb = PathPolynomial::monomial(Scalar::one(), q.identity("B").unwrap());
        assert!(sys.normal_form(&idb).is_zero());
    }

    #[test]
    fn congruence_requires_completeness() {
        let (q, o) = hecke_quiver();
        let rel = mono(&q, &["e1", "e1"]).sub(&mono(&q, &["e1"]), &o).unwrap();
        let sys = system(&q, &o, vec![rel]);
        let f = mono(&q, &["e1"]);
        assert_eq!(sys.is_congruent(&f, &f), Err(RewriteError::NotComplete));
        assert_eq!(sys.is_congruent_semi(&f, &f), Ok(true));
    }

    #[test]
    fn endpoint_preservation() {
        let q = Quiver::new(
            vec!["B1", "B2"],
            vec![("a", "B1", "B2"), ("b", "B2", "B2")],
        )
        .unwrap();
        let o = PathOrder::deglex(&q, &["a", "b"]).unwrap();
        let rel = mono(&q, &["a", "b"]).sub(&mono(&q, &["a"]), &o).unwrap();
        let sys = system(&q, &o, vec![rel]);
        let f = mono(&q, &["a", "b", "b"]);
        let nf = sys.normal_form(&f);
        assert_eq!(nf.src(), f.src());
        assert_eq!(nf.tgt(), f.tgt());
        assert_eq!(nf, mono(&q, &["a"]));
    }
}
