//! Presentations of induced actions, the mixed rule system, tag-aware
//! completion, and the computed extension.
//!
//! A presentation is a quintuple: an acting graph, a base quiver, base
//! relations, and a graph morphism `F` sending acting objects to base
//! objects and acting arrows to base polynomials. Each acting arrow
//! `q: A1 -> A2` contributes the tagged rule `A1|F(q) - A2|1`; the base
//! relations stay untagged. Completion treats the two kinds uniformly at
//! the word level while never multiplying a tag on the left, so the
//! computed congruence is a right congruence of the presented category.
//!
//! The acting objects all carry the free rank-one module and acting arrows
//! act as the identity on it; richer module assignments are out of scope.

use thiserror::Error;

use crate::completion::{
    find_matches, interreduce, s_polynomial, IncompleteReason, Limits,
};
use crate::order::PathOrder;
use crate::poly::{AlgebraError, PathPolynomial};
use crate::quiver::{ObjectId, Path, Quiver, QuiverError};
use crate::rewrite::{occurrences, RewriteError, RewriteSystem, Rule, SystemStatus};
use crate::scalar::Scalar;
use crate::tagged::{TagId, TaggedPolynomial, TaggedRule, TaggedTerm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KanError {
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("completion did not finish: {0}")]
    Incomplete(IncompleteReason),
    #[error("mixed system is not confirmed complete")]
    NotComplete,
    #[error("endpoint mismatch")]
    TypeMismatch,
    #[error("no acting object maps to object {0:?}")]
    NoMatchingTag(String),
    #[error("several acting objects map to object {0:?}; the tagged query is ambiguous")]
    AmbiguousTag(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// The quintuple presenting an induced action: acting graph, base quiver,
/// base relations, and the morphism `F`.
#[derive(Clone, Debug)]
pub struct KanPresentation {
    gamma: Quiver,
    delta: Quiver,
    rel_b: Vec<PathPolynomial>,
    f_obj: Vec<ObjectId>,
    f_arr: Vec<PathPolynomial>,
}

impl KanPresentation {
    pub fn new(
        gamma: Quiver,
        delta: Quiver,
        rel_b: Vec<PathPolynomial>,
        f_obj: Vec<ObjectId>,
        f_arr: Vec<PathPolynomial>,
    ) -> Result<KanPresentation, KanError> {
        if f_obj.len() != gamma.object_count() {
            return Err(KanError::InvalidPresentation(format!(
                "F must map each of the {} acting objects",
                gamma.object_count()
            )));
        }
        if f_arr.len() != gamma.arrow_count() {
            return Err(KanError::InvalidPresentation(format!(
                "F must map each of the {} acting arrows",
                gamma.arrow_count()
            )));
        }
        for o in &f_obj {
            if o.0 >= delta.object_count() {
                return Err(KanError::InvalidPresentation("F image object out of range".into()));
            }
        }
        for (id, arrow) in gamma.arrows() {
            let img = &f_arr[id.0];
            let want_src = f_obj[arrow.src.0];
            let want_tgt = f_obj[arrow.tgt.0];
            if img.src() != want_src || img.tgt() != want_tgt {
                return Err(KanError::InvalidPresentation(format!(
                    "image of arrow {:?} must run {} -> {}",
                    arrow.name,
                    delta.object_name(want_src),
                    delta.object_name(want_tgt),
                )));
            }
        }
        Ok(KanPresentation { gamma, delta, rel_b, f_obj, f_arr })
    }

    pub fn gamma(&self) -> &Quiver {
        &self.gamma
    }

    pub fn delta(&self) -> &Quiver {
        &self.delta
    }

    pub fn relations(&self) -> &[PathPolynomial] {
        &self.rel_b
    }

    pub fn f_obj(&self) -> &[ObjectId] {
        &self.f_obj
    }

    pub fn f_arr(&self) -> &[PathPolynomial] {
        &self.f_arr
    }
}

/// Untagged rules over the base quiver together with tagged rules; the
/// tag-extended order compares tagged terms by path, tags ranking strictly
/// below every arrow.
#[derive(Clone, Debug)]
pub struct MixedSystem {
    base: RewriteSystem,
    eps_rules: Vec<TaggedRule>,
    gamma: Quiver,
    f_obj: Vec<ObjectId>,
    status: SystemStatus,
}

/// Which rule list a mixed reduction step used.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixedRuleRef {
    Base(usize),
    Eps(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TaggedRedex {
    pub term_index: usize,
    pub rule: MixedRuleRef,
    pub offset: usize,
}

impl MixedSystem {
    /// Assembles a mixed system from parts (deserialization and tests);
    /// tagged rules are monicized, zero rules dropped.
    pub fn assemble(
        base: RewriteSystem,
        eps_polys: Vec<TaggedPolynomial>,
        gamma: Quiver,
        f_obj: Vec<ObjectId>,
        status: SystemStatus,
    ) -> Result<MixedSystem, KanError> {
        if f_obj.len() != gamma.object_count() {
            return Err(KanError::InvalidPresentation(
                "each acting object needs an image object".into(),
            ));
        }
        let mut eps_rules = Vec::new();
        for poly in &eps_polys {
            if poly.is_zero() {
                continue;
            }
            for (term, _) in poly.terms() {
                if term.tag.0 >= gamma.object_count() {
                    return Err(KanError::InvalidPresentation("tag out of range".into()));
                }
                if term.path.src() != f_obj[term.tag.0] {
                    return Err(KanError::InvalidPresentation(
                        "tagged path must start at the tag's image object".into(),
                    ));
                }
            }
            eps_rules.push(TaggedRule::new(poly, base.order())?);
        }
        let mut sys = MixedSystem { base, eps_rules, gamma, f_obj, status };
        sys.set_status(status);
        Ok(sys)
    }

    pub fn base(&self) -> &RewriteSystem {
        &self.base
    }

    pub fn eps_rules(&self) -> &[TaggedRule] {
        &self.eps_rules
    }

    pub fn gamma(&self) -> &Quiver {
        &self.gamma
    }

    pub fn f_obj(&self) -> &[ObjectId] {
        &self.f_obj
    }

    pub fn order(&self) -> &PathOrder {
        self.base.order()
    }

    pub fn status(&self) -> SystemStatus {
        self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == SystemStatus::Complete
    }

    fn set_status(&mut self, status: SystemStatus) {
        self.status = status;
        self.base.set_status(status);
    }

    /// Tag of the unique acting object mapping to `obj`.
    pub fn tag_for(&self, obj: ObjectId) -> Result<TagId, KanError> {
        let mut found = None;
        for (i, o) in self.f_obj.iter().enumerate() {
            if *o == obj {
                if found.is_some() {
                    return Err(KanError::AmbiguousTag(
                        self.base.quiver().object_name(obj).into(),
                    ));
                }
                found = Some(TagId(i));
            }
        }
        found.ok_or_else(|| KanError::NoMatchingTag(self.base.quiver().object_name(obj).into()))
    }

    /// Tags each term of an untagged polynomial.
    pub fn tag_polynomial(
        &self,
        tag: TagId,
        f: &PathPolynomial,
    ) -> Result<TaggedPolynomial, KanError> {
        if self.f_obj[tag.0] != f.src() {
            return Err(KanError::TypeMismatch);
        }
        if f.is_zero() {
            return Ok(TaggedPolynomial::zero(f.tgt()));
        }
        let terms = f
            .terms()
            .map(|(p, k)| (k.clone(), TaggedTerm::new(tag, p.clone())));
        Ok(TaggedPolynomial::from_terms(self.order(), terms)?)
    }

    fn eps_applies(&self, rule: &TaggedRule, term: &TaggedTerm) -> bool {
        let lt = rule.lt();
        term.tag == lt.tag
            && term.path.len() >= lt.path.len()
            && term.path.arrows()[..lt.path.len()] == *lt.path.arrows()
    }

    pub fn find_tredex(&self, f: &TaggedPolynomial) -> Option<TaggedRedex> {
        for (term_index, (term, _)) in f.terms().enumerate() {
            for (i, rule) in self.base.rules().iter().enumerate() {
                if let Some(&offset) =
                    occurrences(self.base.quiver(), &term.path, rule.lt()).first()
                {
                    return Some(TaggedRedex { term_index, rule: MixedRuleRef::Base(i), offset });
                }
            }
            for (i, rule) in self.eps_rules.iter().enumerate() {
                if self.eps_applies(rule, term) {
                    return Some(TaggedRedex { term_index, rule: MixedRuleRef::Eps(i), offset: 0 });
                }
            }
        }
        None
    }

    pub fn all_tredexes(&self, f: &TaggedPolynomial) -> Vec<TaggedRedex> {
        let mut out = Vec::new();
        for (term_index, (term, _)) in f.terms().enumerate() {
            for (i, rule) in self.base.rules().iter().enumerate() {
                for offset in occurrences(self.base.quiver(), &term.path, rule.lt()) {
                    out.push(TaggedRedex { term_index, rule: MixedRuleRef::Base(i), offset });
                }
            }
            for (i, rule) in self.eps_rules.iter().enumerate() {
                if self.eps_applies(rule, term) {
                    out.push(TaggedRedex { term_index, rule: MixedRuleRef::Eps(i), offset: 0 });
                }
            }
        }
        out
    }

    pub fn apply_tredex(&self, f: &TaggedPolynomial, redex: TaggedRedex) -> TaggedPolynomial {
        let order = self.order();
        let quiver = self.base.quiver();
        let (term, coeff) = f.terms().nth(redex.term_index).expect("term index in range");
        let (term, k) = (term.clone(), coeff.clone());
        let dropped = f
            .sub(&TaggedPolynomial::monomial(k.clone(), term.clone()), order)
            .expect("term shares the target");
        let tail = match redex.rule {
            MixedRuleRef::Base(i) => {
                let rule = &self.base.rules()[i];
                let u = term.path.slice(quiver, 0, redex.offset);
                let v = term
                    .path
                    .slice(quiver, redex.offset + rule.lt().len(), term.path.len());
                let sandwiched = rule
                    .rem()
                    .sandwich(&u, &v, order)
                    .expect("remainder parallel to leading term");
                self.tag_polynomial(term.tag, &sandwiched)
                    .expect("tag image matches")
            }
            MixedRuleRef::Eps(i) => {
                let rule = &self.eps_rules[i];
                let v = term
                    .path
                    .slice(quiver, rule.lt().path.len(), term.path.len());
                rule.rem().mul_path(&v, order).expect("prefix occurrence composes")
            }
        };
        dropped
            .sub(&tail.scalar_mul(&k), order)
            .expect("targets agree")
    }

    pub fn reduce_once_tagged(&self, f: &TaggedPolynomial) -> Option<TaggedPolynomial> {
        self.find_tredex(f).map(|r| self.apply_tredex(f, r))
    }

    pub fn normal_form_tagged(&self, f: &TaggedPolynomial) -> TaggedPolynomial {
        let mut g = f.clone();
        for _ in 0..STEP_CAP {
            match self.reduce_once_tagged(&g) {
                Some(next) => g = next,
                None => return g,
            }
        }
        panic!("internal limit: tagged reduction did not terminate within {STEP_CAP} steps");
    }

    pub fn normal_form_tagged_with<F: FnMut(usize) -> usize>(
        &self,
        f: &TaggedPolynomial,
        mut choose: F,
    ) -> TaggedPolynomial {
        let mut g = f.clone();
        for _ in 0..STEP_CAP {
            let redexes = self.all_tredexes(&g);
            if redexes.is_empty() {
                return g;
            }
            let pick = choose(redexes.len()) % redexes.len();
            g = self.apply_tredex(&g, redexes[pick]);
        }
        panic!("internal limit: tagged reduction did not terminate within {STEP_CAP} steps");
    }

    /// Untagged normal form, delegated to the base rules (tagged rules can
    /// never apply to an untagged polynomial).
    pub fn normal_form(&self, f: &PathPolynomial) -> PathPolynomial {
        self.base.normal_form(f)
    }

    fn normal_form_tagged_tracked(
        &self,
        f: &TaggedPolynomial,
        witness_in: usize,
    ) -> (TaggedPolynomial, usize) {
        let mut g = f.clone();
        let mut witness = witness_in;
        for _ in 0..STEP_CAP {
            match self.find_tredex(&g) {
                None => return (g, witness),
                Some(redex) => {
                    let d = g.terms().nth(redex.term_index).unwrap().0.path.len();
                    let (lt_len, rule_witness) = match redex.rule {
                        MixedRuleRef::Base(i) => {
                            let r = &self.base.rules()[i];
                            (r.lt().len(), r.witness_degree())
                        }
                        MixedRuleRef::Eps(i) => {
                            let r = &self.eps_rules[i];
                            (r.lt().path.len(), r.witness_degree())
                        }
                    };
                    witness = witness.max(d - lt_len + rule_witness);
                    g = self.apply_tredex(&g, redex);
                }
            }
        }
        panic!("internal limit: tagged reduction did not terminate within {STEP_CAP} steps");
    }
}

const STEP_CAP: usize = 1_000_000;

/// Builds the mixed system of a presentation: the base relations as
/// untagged rules plus, for each acting arrow `q: A1 -> A2`, the tagged
/// rule `A1|F(q) - A2|1`. Rules that collapse to zero are dropped.
pub fn build_system(p: &KanPresentation, order: PathOrder) -> Result<MixedSystem, KanError> {
    let base = RewriteSystem::new(p.delta.clone(), order, p.rel_b.clone())?;
    let mut sys = MixedSystem {
        base,
        eps_rules: Vec::new(),
        gamma: p.gamma.clone(),
        f_obj: p.f_obj.clone(),
        status: SystemStatus::Candidate,
    };
    for (id, arrow) in p.gamma.arrows() {
        let src_tag = TagId(arrow.src.0);
        let tgt_tag = TagId(arrow.tgt.0);
        let image = sys.tag_polynomial(src_tag, &p.f_arr[id.0])?;
        let unit = TaggedPolynomial::monomial(
            Scalar::one(),
            TaggedTerm::new(tgt_tag, Path::identity(p.f_obj[arrow.tgt.0])),
        );
        let rule_poly = image.sub(&unit, sys.order())?;
        if rule_poly.is_zero() {
            continue;
        }
        sys.eps_rules.push(TaggedRule::new(&rule_poly, sys.order())?);
    }
    Ok(sys)
}

/// A superposition involving at least one tagged rule.
#[derive(Clone, Debug, PartialEq, Eq)]
enum TaggedMatch {
    /// Untagged leading term inside the tagged path at `offset`.
    Containment { eps: usize, base: usize, offset: usize },
    /// Suffix of the tagged path of length `k` equals a prefix of the
    /// untagged leading term, the rest extending past the tagged word.
    /// `k` may equal the whole tagged path.
    Overlap { eps: usize, base: usize, k: usize },
    /// Equal tags, `lt(eps2)`'s path a prefix of `lt(eps1)`'s path.
    Prefix { eps1: usize, eps2: usize },
}

fn tagged_matches(sys: &MixedSystem) -> Vec<TaggedMatch> {
    let mut out = Vec::new();
    let quiver = sys.base.quiver();
    for (i, t) in sys.eps_rules.iter().enumerate() {
        let w = &t.lt().path;
        for (j, b) in sys.base.rules().iter().enumerate() {
            let u = b.lt();
            for offset in occurrences(quiver, w, u) {
                out.push(TaggedMatch::Containment { eps: i, base: j, offset });
            }
            if !u.is_identity() {
                let upper = w.len().min(u.len().saturating_sub(1));
                for k in 1..=upper {
                    if w.arrows()[w.len() - k..] == u.arrows()[..k] {
                        out.push(TaggedMatch::Overlap { eps: i, base: j, k });
                    }
                }
            }
        }
    }
    for (i, t1) in sys.eps_rules.iter().enumerate() {
        for (j, t2) in sys.eps_rules.iter().enumerate() {
            if i == j || t1.lt().tag != t2.lt().tag {
                continue;
            }
            let (w1, w2) = (&t1.lt().path, &t2.lt().path);
            let prefix = w2.len() <= w1.len() && w1.arrows()[..w2.len()] == *w2.arrows();
            if prefix && (w2.len() < w1.len() || i < j) {
                out.push(TaggedMatch::Prefix { eps1: i, eps2: j });
            }
        }
    }
    out
}

/// S-polynomial of a tagged match and its witness-degree seed.
fn tagged_s_polynomial(sys: &MixedSystem, m: &TaggedMatch) -> (TaggedPolynomial, usize) {
    let order = sys.order();
    let quiver = sys.base.quiver();
    match *m {
        TaggedMatch::Containment { eps, base, offset } => {
            let t = &sys.eps_rules[eps];
            let b = &sys.base.rules()[base];
            let w = &t.lt().path;
            let u = w.slice(quiver, 0, offset);
            let v = w.slice(quiver, offset + b.lt().len(), w.len());
            let sandwiched = b.poly().sandwich(&u, &v, order).expect("containment composes");
            let right = sys
                .tag_polynomial(t.lt().tag, &sandwiched)
                .expect("tag source matches");
            let s = t.poly().sub(&right, order).expect("targets agree");
            let sup = w.len();
            let witness = t
                .witness_degree()
                .max(sup - b.lt().len() + b.witness_degree());
            (s, witness)
        }
        TaggedMatch::Overlap { eps, base, k } => {
            let t = &sys.eps_rules[eps];
            let b = &sys.base.rules()[base];
            let w = &t.lt().path;
            let ext = b.lt().slice(quiver, k, b.lt().len());
            let left = t.poly().mul_path(&ext, order).expect("overlap composes");
            let prefix = w.slice(quiver, 0, w.len() - k);
            let shifted = b
                .poly()
                .sandwich(&prefix, &Path::identity(b.lt().tgt()), order)
                .expect("overlap composes");
            let right = sys
                .tag_polynomial(t.lt().tag, &shifted)
                .expect("tag source matches");
            let s = left.sub(&right, order).expect("targets agree");
            let sup = w.len() + ext.len();
            let witness = (sup - w.len() + t.witness_degree())
                .max(sup - b.lt().len() + b.witness_degree());
            (s, witness)
        }
        TaggedMatch::Prefix { eps1, eps2 } => {
            let t1 = &sys.eps_rules[eps1];
            let t2 = &sys.eps_rules[eps2];
            let w1 = &t1.lt().path;
            let v = w1.slice(quiver, t2.lt().path.len(), w1.len());
            let right = t2.poly().mul_path(&v, order).expect("prefix composes");
            let s = t1.poly().sub(&right, order).expect("targets agree");
            let witness = t1
                .witness_degree()
                .max(w1.len() - t2.lt().path.len() + t2.witness_degree());
            (s, witness)
        }
    }
}

#[derive(Clone, Debug)]
pub enum MixedOutcome {
    Complete(MixedSystem),
    Incomplete(MixedSystem, IncompleteReason),
}

#[derive(Clone, Debug)]
pub struct MixedReport {
    pub result: MixedOutcome,
    pub added_base: Vec<Rule>,
    pub added_eps: Vec<TaggedRule>,
    pub passes: usize,
    pub spolys_examined: usize,
}

impl MixedReport {
    pub fn system(&self) -> &MixedSystem {
        match &self.result {
            MixedOutcome::Complete(s) => s,
            MixedOutcome::Incomplete(s, _) => s,
        }
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.result, MixedOutcome::Complete(_))
    }

    pub fn reason(&self) -> Option<IncompleteReason> {
        match &self.result {
            MixedOutcome::Complete(_) => None,
            MixedOutcome::Incomplete(_, r) => Some(*r),
        }
    }
}

/// Buchberger completion of the mixed system. Untagged pairs behave as in
/// plain completion; pairs involving a tagged rule produce tagged
/// S-polynomials; tags are never multiplied on the left.
pub fn complete_mixed(sys: &MixedSystem, limits: Limits) -> MixedReport {
    let mut work = sys.clone();
    work.set_status(SystemStatus::Candidate);
    let input_base: Vec<PathPolynomial> =
        work.base.rules().iter().map(|r| r.poly().clone()).collect();
    let input_eps: Vec<TaggedPolynomial> =
        work.eps_rules.iter().map(|r| r.poly().clone()).collect();
    let mut passes = 0;
    let mut spolys_examined = 0;

    let finish = |mut work: MixedSystem,
                  reason: Option<IncompleteReason>,
                  passes: usize,
                  spolys: usize| {
        if reason.is_none() {
            work.set_status(SystemStatus::Complete);
        }
        let added_base = work
            .base
            .rules()
            .iter()
            .filter(|r| !input_base.contains(r.poly()))
            .cloned()
            .collect();
        let added_eps = work
            .eps_rules
            .iter()
            .filter(|r| !input_eps.contains(r.poly()))
            .cloned()
            .collect();
        let result = match reason {
            None => MixedOutcome::Complete(work),
            Some(r) => MixedOutcome::Incomplete(work, r),
        };
        MixedReport { result, added_base, added_eps, passes, spolys_examined: spolys }
    };

    loop {
        if passes == limits.max_passes {
            return finish(work, Some(IncompleteReason::MaxPasses(passes)), passes, spolys_examined);
        }
        passes += 1;
        let mut added_this_pass = false;

        // untagged pairs
        for m in &find_matches(&work.base) {
            spolys_examined += 1;
            let s = s_polynomial(&work.base, m);
            let seed = {
                let r1 = &work.base.rules()[m.rule1];
                let r2 = &work.base.rules()[m.rule2];
                let sup = m.u1.len() + r1.lt().len() + m.v1.len();
                (sup - r1.lt().len() + r1.witness_degree())
                    .max(sup - r2.lt().len() + r2.witness_degree())
            };
            let (nf, witness) = work.base.normal_form_tracked(&s, seed);
            if nf.is_zero() {
                continue;
            }
            let degree = nf.degree().unwrap();
            if degree > limits.max_degree {
                return finish(work, Some(IncompleteReason::MaxDegree(degree)), passes, spolys_examined);
            }
            if work.base.rules().len() + work.eps_rules.len() + 1 > limits.max_rules {
                return finish(
                    work,
                    Some(IncompleteReason::MaxRules(limits.max_rules)),
                    passes,
                    spolys_examined,
                );
            }
            let rule = Rule::new(&nf, work.base.order()).expect("nonzero").with_witness(witness);
            work.base.push_rule(rule);
            added_this_pass = true;
        }

        // pairs involving tagged rules
        for m in &tagged_matches(&work) {
            spolys_examined += 1;
            let (s, seed) = tagged_s_polynomial(&work, m);
            let (nf, witness) = work.normal_form_tagged_tracked(&s, seed);
            if nf.is_zero() {
                continue;
            }
            let degree = nf.leading_term().unwrap().0.path.len();
            if degree > limits.max_degree {
                return finish(work, Some(IncompleteReason::MaxDegree(degree)), passes, spolys_examined);
            }
            if work.base.rules().len() + work.eps_rules.len() + 1 > limits.max_rules {
                return finish(
                    work,
                    Some(IncompleteReason::MaxRules(limits.max_rules)),
                    passes,
                    spolys_examined,
                );
            }
            let rule = TaggedRule::new(&nf, work.order()).expect("nonzero").with_witness(witness);
            work.eps_rules.push(rule);
            added_this_pass = true;
        }

        if !added_this_pass {
            return finish(work, None, passes, spolys_examined);
        }
        interreduce_mixed(&mut work);
    }
}

fn interreduce_mixed(work: &mut MixedSystem) {
    interreduce(&mut work.base);
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < work.eps_rules.len() {
            let rule = work.eps_rules[i].clone();
            let mut probe = work.clone();
            probe.eps_rules.remove(i);
            let (nf, witness) =
                probe.normal_form_tagged_tracked(rule.poly(), rule.witness_degree());
            if nf.is_zero() {
                work.eps_rules.remove(i);
                changed = true;
                continue;
            }
            if &nf != rule.poly() {
                work.eps_rules[i] =
                    TaggedRule::new(&nf, probe.order()).unwrap().with_witness(witness);
                changed = true;
            }
            i += 1;
        }
        if !changed {
            break;
        }
    }
}

/// True iff every S-polynomial of the mixed system reduces to zero; marks
/// the system complete when it holds.
pub fn is_groebner_mixed(sys: &mut MixedSystem) -> bool {
    let base_ok = find_matches(&sys.base)
        .iter()
        .all(|m| sys.base.normal_form(&s_polynomial(&sys.base, m)).is_zero());
    let tagged_ok = base_ok
        && tagged_matches(sys)
            .iter()
            .all(|m| sys.normal_form_tagged(&tagged_s_polynomial(sys, m).0).is_zero());
    if tagged_ok {
        sys.set_status(SystemStatus::Complete);
    }
    tagged_ok
}

/// The computed extension: the irreducible tagged terms (a basis of the
/// quotient module at each object), the completed mixed system, and the
/// normal form of each tagged unit.
#[derive(Clone, Debug)]
pub struct KanExtensionResult {
    pub mixed: MixedSystem,
    /// Irreducible tagged terms with path length at most the requested
    /// bound, sorted by tag then ascending path order.
    pub basis: Vec<TaggedTerm>,
    /// Verdict of the cycle analysis: is the full irreducible language
    /// finite?
    pub finite: bool,
    /// True when `finite` and no irreducible term exceeds the bound, i.e.
    /// `basis` is the whole basis.
    pub exhaustive: bool,
    /// Normal form of `A|1` per acting object.
    pub eps: Vec<(TagId, TaggedPolynomial)>,
}

/// Builds and completes the mixed system, then enumerates the extension.
/// Refuses to report a basis when completion did not finish.
pub fn kan_extension(
    p: &KanPresentation,
    order: PathOrder,
    len_bound: usize,
    limits: Limits,
) -> Result<KanExtensionResult, KanError> {
    let sys = build_system(p, order)?;
    let report = complete_mixed(&sys, limits);
    let mixed = match report.result {
        MixedOutcome::Complete(s) => s,
        MixedOutcome::Incomplete(_, reason) => return Err(KanError::Incomplete(reason)),
    };

    let mut basis = Vec::new();
    let mut finite = true;
    let mut exhaustive = true;
    for tag in (0..mixed.gamma.object_count()).map(TagId) {
        let terms = crate::nf::irreducible_tagged(&mixed, Some(tag), None, len_bound)
            .expect("system is complete");
        basis.extend(terms);
        let analysis = crate::nf::tagged_language_analysis(&mixed, tag).expect("complete");
        if let Some(longest) = analysis.longest_word {
            exhaustive = exhaustive && longest <= len_bound;
        } else {
            finite = false;
            exhaustive = false;
        }
    }

    let mut eps = Vec::new();
    for tag in (0..mixed.gamma.object_count()).map(TagId) {
        let unit = TaggedPolynomial::monomial(
            Scalar::one(),
            TaggedTerm::new(tag, Path::identity(mixed.f_obj[tag.0])),
        );
        eps.push((tag, mixed.normal_form_tagged(&unit)));
    }

    Ok(KanExtensionResult { mixed, basis, finite, exhaustive, eps })
}

impl KanExtensionResult {
    /// The induced right action: right-multiplies each tagged term by `b`
    /// and reduces to normal form.
    pub fn act(
        &self,
        t: &TaggedPolynomial,
        b: &PathPolynomial,
    ) -> Result<TaggedPolynomial, KanError> {
        if !self.mixed.is_complete() {
            return Err(KanError::NotComplete);
        }
        let product = t.mul_poly(b, self.mixed.order())?;
        Ok(self.mixed.normal_form_tagged(&product))
    }

    pub fn act_term(
        &self,
        t: &TaggedTerm,
        b: &PathPolynomial,
    ) -> Result<TaggedPolynomial, KanError> {
        self.act(&TaggedPolynomial::monomial(Scalar::one(), t.clone()), b)
    }

    /// Decides whether two parallel base polynomials fall in the same
    /// right-congruence class, by comparing tagged normal forms.
    pub fn congruent_mod_right(
        &self,
        p: &PathPolynomial,
        q: &PathPolynomial,
    ) -> Result<bool, KanError> {
        if !self.mixed.is_complete() {
            return Err(KanError::NotComplete);
        }
        if p.src() != q.src() || p.tgt() != q.tgt() {
            return Err(KanError::TypeMismatch);
        }
        let tag = self.mixed.tag_for(p.src())?;
        let tp = self.mixed.tag_polynomial(tag, p)?;
        let tq = self.mixed.tag_polynomial(tag, q)?;
        Ok(self.mixed.normal_form_tagged(&tp) == self.mixed.normal_form_tagged(&tq))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::PathOrder;
    use crate::quiver::Quiver;

    fn one_loop() -> (Quiver, PathOrder) {
        let q = Quiver::new(vec!["B"], vec![("x", "B", "B")]).unwrap();
        let o = PathOrder::deglex(&q, &["x"]).unwrap();
        (q, o)
    }

    fn trivial_gamma() -> Quiver {
        Quiver::new(vec!["A"], Vec::<(&str, &str, &str)>::new()).unwrap()
    }

    #[test]
    fn trivial_acting_graph_gives_untagged_system() {
        let (q, o) = one_loop();
        let p = KanPresentation::new(
            trivial_gamma(),
            q.clone(),
            vec![],
            vec![q.object_id("B").unwrap()],
            vec![],
        )
        .unwrap();
        let sys = build_system(&p, o).unwrap();
        assert!(sys.eps_rules().is_empty());
    }

    #[test]
    fn identity_image_rule_is_dropped() {
        let (q, o) = one_loop();
        let gamma = Quiver::new(vec!["A"], vec![("q", "A", "A")]).unwrap();
        let b = q.object_id("B").unwrap();
        let p = KanPresentation::new(
            gamma,
            q.clone(),
            vec![],
            vec![b],
            vec![PathPolynomial::monomial(Scalar::one(), Path::identity(b))],
        )
        .unwrap();
        let sys = build_system(&p, o).unwrap();
        assert!(sys.eps_rules().is_empty());
    }

    #[test]
    fn single_eps_rule_collapses_loop_powers() {
        // S_E empty, S_eps = { A|x - A|1 }: every A|x^n reduces to A|1
        let (q, o) = one_loop();
        let gamma = Quiver::new(vec!["A"], vec![("q", "A", "A")]).unwrap();
        let b = q.object_id("B").unwrap();
        let p = KanPresentation::new(
            gamma,
            q.clone(),
            vec![],
            vec![b],
            vec![PathPolynomial::monomial(Scalar::one(), q.path(&["x"]).unwrap())],
        )
        .unwrap();
        let res = kan_extension(&p, o, 6, Limits::default()).unwrap();
        assert!(res.finite);
        assert!(res.exhaustive);
        let names: Vec<String> = res
            .basis
            .iter()
            .map(|t| t.display(res.mixed.gamma(), res.mixed.base().quiver()).to_string())
            .collect();
        assert_eq!(names, vec!["A|1"]);
        let x3 = TaggedPolynomial::monomial(
            Scalar::one(),
            TaggedTerm::new(TagId(0), q.path(&["x", "x", "x"]).unwrap()),
        );
        let nf = res.mixed.normal_form_tagged(&x3);
        assert_eq!(
            nf,
            TaggedPolynomial::monomial(
                Scalar::one(),
                TaggedTerm::new(TagId(0), Path::identity(b))
            )
        );
    }

    #[test]
    fn free_case_is_infinite_and_truncated() {
        let (q, o) = one_loop();
        let p = KanPresentation::new(
            trivial_gamma(),
            q.clone(),
            vec![],
            vec![q.object_id("B").unwrap()],
            vec![],
        )
        .unwrap();
        let res = kan_extension(&p, o, 3, Limits::default()).unwrap();
        assert!(!res.finite);
        assert!(!res.exhaustive);
        let names: Vec<String> = res
            .basis
            .iter()
            .map(|t| t.display(res.mixed.gamma(), res.mixed.base().quiver()).to_string())
            .collect();
        assert_eq!(names, vec!["A|1", "A|x", "A|x*x", "A|x*x*x"]);
    }

    #[test]
    fn retagging_rule_between_two_acting_objects() {
        // gamma has two objects and one arrow with identity image; the rule
        // A1|1 - A2|1 orients toward the later-declared tag.
        let (q, o) = one_loop();
        let gamma = Quiver::new(vec!["A1", "A2"], vec![("q", "A1", "A2")]).unwrap();
        let b = q.object_id("B").unwrap();
        let p = KanPresentation::new(
            gamma,
            q.clone(),
            vec![],
            vec![b, b],
            vec![PathPolynomial::monomial(Scalar::one(), Path::identity(b))],
        )
        .unwrap();
        let sys = build_system(&p, o.clone()).unwrap();
        assert_eq!(sys.eps_rules().len(), 1);
        // A2|1 ranks above A1|1 by declaration order, so the rule rewrites
        // A2-tagged terms to A1-tagged ones.
        assert_eq!(sys.eps_rules()[0].lt().tag, TagId(1));
        let report = complete_mixed(&sys, Limits::default());
        assert!(report.is_complete());
        let done = report.system();
        let a2x = TaggedPolynomial::monomial(
            Scalar::one(),
            TaggedTerm::new(TagId(1), q.path(&["x"]).unwrap()),
        );
        let nf = done.normal_form_tagged(&a2x);
        assert_eq!(
            nf,
            TaggedPolynomial::monomial(
                Scalar::one(),
                TaggedTerm::new(TagId(0), q.path(&["x"]).unwrap())
            )
        );
    }
}
