//! Matches, S-polynomials, the Groebner-basis test, and Buchberger
//! completion.
//!
//! Matches are enumerated in deterministic (rule-index, offset) order; each
//! S-polynomial is normal-formed against the current system, with rules
//! added mid-pass used immediately; the system is interreduced at the end
//! of every pass that added something. Non-termination is expected behavior
//! in the noncommutative setting and is reported, never a crash.

use crate::poly::PathPolynomial;
use crate::quiver::Path;
use crate::rewrite::{occurrences, Rule, RewriteSystem, SystemStatus};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatchKind {
    /// A proper suffix of `LT(r1)` equals a proper prefix of `LT(r2)`.
    LeftOverlap,
    /// `LT(r1)` occurs inside `LT(r2)`.
    Containment,
}

/// A superposition `u1*LT(r1)*v1 = u2*LT(r2)*v2` of two rules' leading
/// terms sharing at least one position.
#[derive(Clone, Debug)]
pub struct Match {
    pub rule1: usize,
    pub rule2: usize,
    pub kind: MatchKind,
    pub u1: Path,
    pub v1: Path,
    pub u2: Path,
    pub v2: Path,
}

impl Match {
    /// The common superposition word.
    pub fn superposition(&self, sys: &RewriteSystem) -> Path {
        let lt = sys.rules()[self.rule1].lt();
        self.u1.compose(lt).unwrap().compose(&self.v1).unwrap()
    }
}

/// All overlap and containment superpositions between ordered rule pairs,
/// including self-overlaps at distinct positions. Full self-coincidence is
/// excluded (its S-polynomial is identically zero).
pub fn find_matches(sys: &RewriteSystem) -> Vec<Match> {
    let rules = sys.rules();
    let quiver = sys.quiver();
    let mut out = Vec::new();
    for (i, ri) in rules.iter().enumerate() {
        for (j, rj) in rules.iter().enumerate() {
            let (wi, wj) = (ri.lt(), rj.lt());
            // left overlaps: proper suffix of wi = proper prefix of wj
            if !wi.is_identity() && !wj.is_identity() {
                let min = wi.len().min(wj.len());
                for k in 1..min {
                    if wi.arrows()[wi.len() - k..] == wj.arrows()[..k] {
                        out.push(Match {
                            rule1: i,
                            rule2: j,
                            kind: MatchKind::LeftOverlap,
                            u1: Path::identity(wi.src()),
                            v1: wj.slice(quiver, k, wj.len()),
                            u2: wi.slice(quiver, 0, wi.len() - k),
                            v2: Path::identity(wj.tgt()),
                        });
                    }
                }
            }
            // containments: wi inside wj (strictly shorter, or equal words
            // of distinct rules counted once)
            let proper = wi.len() < wj.len();
            let equal_words = i < j && wi == wj;
            if proper || equal_words {
                for offset in occurrences(quiver, wj, wi) {
                    out.push(Match {
                        rule1: i,
                        rule2: j,
                        kind: MatchKind::Containment,
                        u1: wj.slice(quiver, 0, offset),
                        v1: wj.slice(quiver, offset + wi.len(), wj.len()),
                        u2: Path::identity(wj.src()),
                        v2: Path::identity(wj.tgt()),
                    });
                }
            }
        }
    }
    out
}

/// The difference `u1*r1*v1 - u2*r2*v2`; the superposed leading terms
/// cancel, so the leading term of a nonzero result is strictly below the
/// superposition word.
pub fn s_polynomial(sys: &RewriteSystem, m: &Match) -> PathPolynomial {
    let order = sys.order();
    let left = sys.rules()[m.rule1]
        .poly()
        .sandwich(&m.u1, &m.v1, order)
        .expect("match multipliers compose");
    let right = sys.rules()[m.rule2]
        .poly()
        .sandwich(&m.u2, &m.v2, order)
        .expect("match multipliers compose");
    left.sub(&right, order).expect("superpositions are parallel")
}

/// True iff every match's S-polynomial reduces to zero; marks the system
/// complete when it holds.
pub fn is_groebner(sys: &mut RewriteSystem) -> bool {
    let ok = find_matches(sys)
        .iter()
        .all(|m| sys.normal_form(&s_polynomial(sys, m)).is_zero());
    if ok {
        sys.set_status(SystemStatus::Complete);
    }
    ok
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_rules: usize,
    pub max_degree: usize,
    pub max_passes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_rules: 1000, max_degree: 50, max_passes: 100 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IncompleteReason {
    MaxRules(usize),
    MaxDegree(usize),
    MaxPasses(usize),
}

impl std::fmt::Display for IncompleteReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            IncompleteReason::MaxRules(n) => write!(f, "rule budget exceeded ({n} rules)"),
            IncompleteReason::MaxDegree(d) => {
                write!(f, "degree budget exceeded (derived rule of degree {d})")
            }
            IncompleteReason::MaxPasses(n) => write!(f, "pass budget exceeded ({n} passes)"),
        }
    }
}

#[derive(Clone, Debug)]
pub enum CompletionOutcome {
    Complete(RewriteSystem),
    Incomplete(RewriteSystem, IncompleteReason),
}

#[derive(Clone, Debug)]
pub struct CompletionReport {
    pub result: CompletionOutcome,
    /// Final forms of the rules not present among the (monicized) inputs.
    pub added: Vec<Rule>,
    pub passes: usize,
    pub spolys_examined: usize,
}

impl CompletionReport {
    pub fn system(&self) -> &RewriteSystem {
        match &self.result {
            CompletionOutcome::Complete(s) => s,
            CompletionOutcome::Incomplete(s, _) => s,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.result, CompletionOutcome::Complete(_))
    }

    pub fn reason(&self) -> Option<IncompleteReason> {
        match &self.result {
            CompletionOutcome::Complete(_) => None,
            CompletionOutcome::Incomplete(_, r) => Some(*r),
        }
    }
}

/// Witness-degree seed for an S-polynomial: each side `u*r*v` expands into
/// original-relation products of degree at most
/// `|superposition| - |lt(r)| + witness(r)`.
fn spoly_witness(sys: &RewriteSystem, m: &Match) -> usize {
    let r1 = &sys.rules()[m.rule1];
    let r2 = &sys.rules()[m.rule2];
    let sup = m.u1.len() + r1.lt().len() + m.v1.len();
    (sup - r1.lt().len() + r1.witness_degree())
        .max(sup - r2.lt().len() + r2.witness_degree())
}

/// Buchberger completion. Loops: compute matches, reduce each
/// S-polynomial, add nonzero normal forms as new monic rules, interreduce,
/// repeat; returns `Complete` when a pass adds nothing, `Incomplete` with
/// the reason when a limit trips.
pub fn buchberger(sys: &RewriteSystem, limits: Limits) -> CompletionReport {
    let mut work = sys.clone();
    work.set_status(SystemStatus::Candidate);
    let input: Vec<PathPolynomial> = work.rules().iter().map(|r| r.poly().clone()).collect();
    let mut passes = 0;
    let mut spolys_examined = 0;

    let finish = |work: RewriteSystem, reason: Option<IncompleteReason>, passes, spolys| {
        let added = work
            .rules()
            .iter()
            .filter(|r| !input.contains(r.poly()))
            .cloned()
            .collect();
        let result = match reason {
            None => CompletionOutcome::Complete(work),
            Some(r) => CompletionOutcome::Incomplete(work, r),
        };
        CompletionReport { result, added, passes, spolys_examined: spolys }
    };

    loop {
        if passes == limits.max_passes {
            return finish(work, Some(IncompleteReason::MaxPasses(passes)), passes, spolys_examined);
        }
        passes += 1;
        let matches = find_matches(&work);
        let mut added_this_pass = false;
        for m in &matches {
            spolys_examined += 1;
            let s = s_polynomial(&work, m);
            let (nf, witness) = work.normal_form_tracked(&s, spoly_witness(&work, m));
            if nf.is_zero() {
                continue;
            }
            let degree = nf.degree().unwrap();
            if degree > limits.max_degree {
                return finish(work, Some(IncompleteReason::MaxDegree(degree)), passes, spolys_examined);
            }
            if work.rules().len() + 1 > limits.max_rules {
                return finish(
                    work,
                    Some(IncompleteReason::MaxRules(limits.max_rules)),
                    passes,
                    spolys_examined,
                );
            }
            let rule = Rule::new(&nf, work.order()).expect("nonzero").with_witness(witness);
            work.push_rule(rule);
            added_this_pass = true;
        }
        if !added_this_pass {
            work.set_status(SystemStatus::Complete);
            return finish(work, None, passes, spolys_examined);
        }
        interreduce(&mut work);
    }
}

/// Reduces each rule against the others until stable: rules whose leading
/// term becomes reducible are rewritten or discarded, remainders are kept
/// normal.
pub(crate) fn interreduce(work: &mut RewriteSystem) {
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < work.rules().len() {
            let rule = work.rules()[i].clone();
            let mut probe = work.clone();
            let mut rest = probe.rules().to_vec();
            rest.remove(i);
            probe.set_rules(rest);
            let (nf, witness) = probe.normal_form_tracked(rule.poly(), rule.witness_degree());
            if nf.is_zero() {
                work.set_rules(probe.rules().to_vec());
                changed = true;
                // do not advance: the rule at position i changed
                continue;
            }
            if &nf != rule.poly() {
                let new_rule = Rule::new(&nf, work.order()).unwrap().with_witness(witness);
                let mut rules = probe.rules().to_vec();
                rules.insert(i, new_rule);
                work.set_rules(rules);
                changed = true;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
}
