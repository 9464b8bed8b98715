//! Enumeration of irreducible terms and finiteness of normal-form
//! languages.
//!
//! A path is irreducible exactly when it avoids every rule's leading term
//! as a contiguous subpath; tagged terms additionally avoid tagged leading
//! terms as prefixes. Finiteness is decided on the automaton recognizing
//! obstruction-avoiding paths (states are quiver objects paired with the
//! longest suffix read that is a proper prefix of an obstruction), not by
//! extending a length bound: a hom-set language is infinite exactly when a
//! cycle is reachable from its source and co-reachable to its target.
//!
//! Tagged enumeration reuses the same machinery by prepending a virtual
//! arrow per tag, so a tagged obstruction becomes an ordinary subword
//! obstruction anchored at the start.

use std::collections::HashMap;

use thiserror::Error;

use crate::kan::MixedSystem;
use crate::order::PathOrder;
use crate::quiver::{Arrow, ArrowId, ObjectId, Path, Quiver};
use crate::rewrite::RewriteSystem;
use crate::tagged::{TagId, TaggedTerm};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EnumError {
    #[error("enumeration requires a complete system")]
    NotComplete,
}

pub use crate::quiver::enumerate_paths;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finiteness {
    Finite(usize),
    Infinite(Path),
}

impl Finiteness {
    pub fn is_finite(&self) -> bool {
        matches!(self, Finiteness::Finite(_))
    }
}

/// One hom-set of the quotient: its irreducible paths up to the listing
/// bound and the finiteness verdict for the full language.
#[derive(Clone, Debug)]
pub struct HomSetEntry {
    pub src: ObjectId,
    pub tgt: ObjectId,
    pub paths: Vec<Path>,
    pub finiteness: Finiteness,
}

#[derive(Clone, Debug)]
pub struct HomSetTable {
    pub max_len: usize,
    pub entries: Vec<HomSetEntry>,
}

pub struct LanguageAnalysis {
    /// `None` when infinite.
    pub count: Option<usize>,
    /// Length of the longest accepted word; `None` when infinite.
    pub longest_word: Option<usize>,
    /// A pumpable cycle when infinite.
    pub witness: Option<Path>,
}

/// The forbidden-subword automaton. States pair an object with the longest
/// suffix of the word read that is a proper prefix of some obstruction.
struct AvoidAutomaton {
    states: Vec<State>,
    start: Vec<Option<usize>>,
}

struct State {
    object: ObjectId,
    suffix: Vec<ArrowId>,
    /// outgoing edges, sorted by arrow precedence
    edges: Vec<(ArrowId, usize)>,
}

impl AvoidAutomaton {
    /// `obstructions` are leading-term paths; an identity obstruction kills
    /// its whole object.
    fn build(quiver: &Quiver, order: &PathOrder, obstructions: &[Path]) -> AvoidAutomaton {
        let dead_objects: Vec<ObjectId> = obstructions
            .iter()
            .filter(|p| p.is_identity())
            .map(|p| p.src())
            .collect();
        let words: Vec<&Path> = obstructions.iter().filter(|p| !p.is_identity()).collect();

        let mut out_arrows: Vec<Vec<ArrowId>> = vec![Vec::new(); quiver.object_count()];
        for (id, a) in quiver.arrows() {
            out_arrows[a.src.0].push(id);
        }
        for list in &mut out_arrows {
            list.sort_by_key(|a| order.arrow_rank(*a));
        }

        // longest suffix of `w` that is a proper prefix of some obstruction
        let classify = |w: &[ArrowId]| -> Vec<ArrowId> {
            for start in 0..w.len() {
                let suffix = &w[start..];
                if words
                    .iter()
                    .any(|p| suffix.len() < p.len() && p.arrows()[..suffix.len()] == *suffix)
                {
                    return suffix.to_vec();
                }
            }
            Vec::new()
        };
        // does some obstruction end exactly at the last position of `w`?
        let blocked = |w: &[ArrowId]| -> bool {
            words
                .iter()
                .any(|p| p.len() <= w.len() && w[w.len() - p.len()..] == *p.arrows())
        };

        let mut states: Vec<State> = Vec::new();
        let mut index: HashMap<(ObjectId, Vec<ArrowId>), usize> = HashMap::new();
        let mut start = vec![None; quiver.object_count()];
        let mut queue: Vec<usize> = Vec::new();

        let mut intern =
            |object: ObjectId, suffix: Vec<ArrowId>, states: &mut Vec<State>| -> usize {
                let id = states.len();
                index.insert((object, suffix.clone()), id);
                states.push(State { object, suffix, edges: Vec::new() });
                id
            };

        for o in quiver.objects() {
            if dead_objects.contains(&o) {
                continue;
            }
            let id = intern(o, Vec::new(), &mut states);
            start[o.0] = Some(id);
            queue.push(id);
        }
        let mut head = 0;
        while head < queue.len() {
            let sid = queue[head];
            head += 1;
            let object = states[sid].object;
            let suffix = states[sid].suffix.clone();
            for a in out_arrows[object.0].clone() {
                let tgt = quiver.arrow(a).tgt;
                if dead_objects.contains(&tgt) {
                    continue;
                }
                let mut word = suffix.clone();
                word.push(a);
                if blocked(&word) {
                    continue;
                }
                let next_suffix = classify(&word);
                let key = (tgt, next_suffix.clone());
                let next = match index.get(&key) {
                    Some(&i) => i,
                    None => {
                        let i = states.len();
                        index.insert(key, i);
                        states.push(State { object: tgt, suffix: next_suffix, edges: Vec::new() });
                        queue.push(i);
                        i
                    }
                };
                states[sid].edges.push((a, next));
            }
        }
        AvoidAutomaton { states, start }
    }

    /// All accepted words from `src` ending at `tgt` (when given), length
    /// at most `max_len`, in ascending deglex order.
    fn enumerate(
        &self,
        quiver: &Quiver,
        src: ObjectId,
        tgt: Option<ObjectId>,
        max_len: usize,
    ) -> Vec<Path> {
        let mut out = Vec::new();
        let Some(start) = self.start[src.0] else {
            return out;
        };
        let mut level: Vec<(usize, Vec<ArrowId>)> = vec![(start, Vec::new())];
        for len in 0..=max_len {
            for (sid, word) in &level {
                let object = self.states[*sid].object;
                if tgt.is_none_or(|t| object == t) {
                    out.push(if word.is_empty() {
                        Path::identity(src)
                    } else {
                        Path::from_arrows(quiver, word.clone()).expect("automaton words compose")
                    });
                }
            }
            if len == max_len {
                break;
            }
            let mut next = Vec::new();
            for (sid, word) in &level {
                for (a, n) in &self.states[*sid].edges {
                    let mut w = word.clone();
                    w.push(*a);
                    next.push((*n, w));
                }
            }
            level = next;
        }
        out
    }

    fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(s) = stack.pop() {
            for (_, n) in &self.states[s].edges {
                if !seen[*n] {
                    seen[*n] = true;
                    stack.push(*n);
                }
            }
        }
        seen
    }

    fn coreachable_to(&self, accepting: &[bool]) -> Vec<bool> {
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); self.states.len()];
        for (s, st) in self.states.iter().enumerate() {
            for (_, n) in &st.edges {
                rev[*n].push(s);
            }
        }
        let mut seen = vec![false; self.states.len()];
        let mut stack: Vec<usize> = Vec::new();
        for (i, a) in accepting.iter().enumerate() {
            if *a {
                seen[i] = true;
                stack.push(i);
            }
        }
        while let Some(s) = stack.pop() {
            for &p in &rev[s] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    /// First cycle inside the useful subgraph, as its arrow labels.
    fn find_cycle(&self, useful: &[bool]) -> Option<Vec<ArrowId>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Gray,
            Black,
        }
        fn go(
            aut: &AvoidAutomaton,
            useful: &[bool],
            s: usize,
            color: &mut [Color],
            path: &mut Vec<(usize, ArrowId)>,
        ) -> Option<Vec<ArrowId>> {
            color[s] = Color::Gray;
            for &(a, n) in &aut.states[s].edges {
                if !useful[n] {
                    continue;
                }
                match color[n] {
                    Color::Gray => {
                        // cycle n -> ... -> s -> n; labels from n's edge on
                        // the current path onward, then the back edge
                        let mut labels: Vec<ArrowId> = path
                            .iter()
                            .skip_while(|(state, _)| *state != n)
                            .map(|(_, l)| *l)
                            .collect();
                        labels.push(a);
                        return Some(labels);
                    }
                    Color::White => {
                        path.push((s, a));
                        if let Some(c) = go(aut, useful, n, color, path) {
                            return Some(c);
                        }
                        path.pop();
                    }
                    Color::Black => {}
                }
            }
            color[s] = Color::Black;
            None
        }
        let mut color = vec![Color::White; self.states.len()];
        for root in 0..self.states.len() {
            if useful[root] && color[root] == Color::White {
                let mut path = Vec::new();
                if let Some(c) = go(self, useful, root, &mut color, &mut path) {
                    return Some(c);
                }
            }
        }
        None
    }

    /// Exact count and longest length of the accepted language, or the
    /// infinite verdict with a pumpable cycle.
    fn analyze(&self, quiver: &Quiver, src: ObjectId, tgt: Option<ObjectId>) -> LanguageAnalysis {
        let Some(start) = self.start[src.0] else {
            return LanguageAnalysis { count: Some(0), longest_word: None, witness: None };
        };
        let accepting: Vec<bool> = self
            .states
            .iter()
            .map(|s| tgt.is_none_or(|t| s.object == t))
            .collect();
        let reach = self.reachable_from(start);
        let coreach = self.coreachable_to(&accepting);
        let useful: Vec<bool> = (0..self.states.len())
            .map(|i| reach[i] && coreach[i])
            .collect();

        if let Some(cycle) = self.find_cycle(&useful) {
            let path = Path::from_arrows(quiver, cycle).expect("cycle labels compose");
            return LanguageAnalysis { count: None, longest_word: None, witness: Some(path) };
        }
        if !useful[start] {
            return LanguageAnalysis { count: Some(0), longest_word: None, witness: None };
        }

        // acyclic useful subgraph: fold counts in post-order
        fn post_order(
            aut: &AvoidAutomaton,
            useful: &[bool],
            s: usize,
            visited: &mut [bool],
            order: &mut Vec<usize>,
        ) {
            visited[s] = true;
            for &(_, n) in &aut.states[s].edges {
                if useful[n] && !visited[n] {
                    post_order(aut, useful, n, visited, order);
                }
            }
            order.push(s);
        }
        let mut visited = vec![false; self.states.len()];
        let mut order = Vec::new();
        post_order(self, &useful, start, &mut visited, &mut order);

        let mut count = vec![0usize; self.states.len()];
        let mut longest = vec![None::<usize>; self.states.len()];
        for &s in &order {
            let mut c = usize::from(accepting[s]);
            let mut l = if accepting[s] { Some(0) } else { None };
            for &(_, n) in &self.states[s].edges {
                if !useful[n] {
                    continue;
                }
                c += count[n];
                if let Some(ln) = longest[n] {
                    l = Some(l.map_or(ln + 1, |cur| cur.max(ln + 1)));
                }
            }
            count[s] = c;
            longest[s] = l;
        }
        LanguageAnalysis {
            count: Some(count[start]),
            longest_word: longest[start],
            witness: None,
        }
    }
}

fn obstruction_paths(sys: &RewriteSystem) -> Vec<Path> {
    sys.rules().iter().map(|r| r.lt().clone()).collect()
}

/// All irreducible paths matching the filters with length at most
/// `max_len`, ascending. Requires a complete system.
pub fn irreducible_paths(
    sys: &RewriteSystem,
    src: Option<ObjectId>,
    tgt: Option<ObjectId>,
    max_len: usize,
) -> Result<Vec<Path>, EnumError> {
    if !sys.is_complete() {
        return Err(EnumError::NotComplete);
    }
    let aut = AvoidAutomaton::build(sys.quiver(), sys.order(), &obstruction_paths(sys));
    let mut sources: Vec<ObjectId> = match src {
        Some(o) => vec![o],
        None => sys.quiver().objects().collect(),
    };
    sources.sort_by_key(|o| sys.order().object_rank(*o));
    let per_source: Vec<Vec<Path>> = sources
        .iter()
        .map(|s| aut.enumerate(sys.quiver(), *s, tgt, max_len))
        .collect();
    Ok(merge_ascending(per_source, sys.order()))
}

fn merge_ascending(mut lists: Vec<Vec<Path>>, order: &PathOrder) -> Vec<Path> {
    for list in &mut lists {
        list.reverse(); // pop from the back
    }
    let mut out = Vec::new();
    loop {
        let mut best: Option<usize> = None;
        for (i, list) in lists.iter().enumerate() {
            if let Some(p) = list.last() {
                best = match best {
                    None => Some(i),
                    Some(j) => {
                        if order.compare(p, lists[j].last().unwrap()) == std::cmp::Ordering::Less {
                            Some(i)
                        } else {
                            Some(j)
                        }
                    }
                };
            }
        }
        match best {
            None => break,
            Some(i) => out.push(lists[i].pop().unwrap()),
        }
    }
    out
}

/// Finiteness of one hom-set's irreducible language.
pub fn finiteness(
    sys: &RewriteSystem,
    src: ObjectId,
    tgt: ObjectId,
) -> Result<Finiteness, EnumError> {
    if !sys.is_complete() {
        return Err(EnumError::NotComplete);
    }
    let aut = AvoidAutomaton::build(sys.quiver(), sys.order(), &obstruction_paths(sys));
    let analysis = aut.analyze(sys.quiver(), src, Some(tgt));
    Ok(match analysis.count {
        Some(n) => Finiteness::Finite(n),
        None => Finiteness::Infinite(analysis.witness.expect("infinite language has a cycle")),
    })
}

/// Hom-set tables for every object pair, each with its finiteness verdict;
/// listings are truncated at `max_len`.
pub fn hom_table(sys: &RewriteSystem, max_len: usize) -> Result<HomSetTable, EnumError> {
    if !sys.is_complete() {
        return Err(EnumError::NotComplete);
    }
    let aut = AvoidAutomaton::build(sys.quiver(), sys.order(), &obstruction_paths(sys));
    let mut entries = Vec::new();
    for src in sys.quiver().objects() {
        for tgt in sys.quiver().objects() {
            let paths = aut.enumerate(sys.quiver(), src, Some(tgt), max_len);
            let analysis = aut.analyze(sys.quiver(), src, Some(tgt));
            let finiteness = match analysis.count {
                Some(n) => Finiteness::Finite(n),
                None => Finiteness::Infinite(analysis.witness.expect("cycle witness")),
            };
            entries.push(HomSetEntry { src, tgt, paths, finiteness });
        }
    }
    Ok(HomSetTable { max_len, entries })
}

/// Augments the base quiver with one virtual object and arrow per tag, so
/// tagged prefixes become ordinary subwords anchored at the start.
fn tagged_automaton(sys: &MixedSystem) -> (Quiver, Vec<ArrowId>, AvoidAutomaton) {
    let delta = sys.base().quiver();
    let mut objects: Vec<String> = delta.object_names().map(String::from).collect();
    let mut arrows: Vec<Arrow> = delta.arrows().map(|(_, a)| a.clone()).collect();
    let tag_count = sys.gamma().object_count();
    let mut tag_arrows = Vec::new();
    for t in 0..tag_count {
        let vobj = ObjectId(objects.len());
        objects.push(format!("\u{1}start:{t}"));
        let aid = ArrowId(arrows.len());
        arrows.push(Arrow {
            name: format!("\u{1}tag:{t}"),
            src: vobj,
            tgt: sys.f_obj()[t],
        });
        tag_arrows.push(aid);
    }
    let aug = Quiver::raw(objects, arrows);
    let order = sys.order().clone().extended(aug.arrow_count(), aug.object_count());

    let mut obstructions: Vec<Path> = Vec::new();
    for r in sys.base().rules() {
        let p = r.lt();
        obstructions.push(if p.is_identity() {
            Path::identity(p.src())
        } else {
            Path::from_arrows(&aug, p.arrows().to_vec()).expect("same arrow ids")
        });
    }
    for r in sys.eps_rules() {
        let lt = r.lt();
        let mut word = vec![tag_arrows[lt.tag.0]];
        word.extend_from_slice(lt.path.arrows());
        obstructions.push(Path::from_arrows(&aug, word).expect("tag arrow feeds the image"));
    }
    let aut = AvoidAutomaton::build(&aug, &order, &obstructions);
    (aug, tag_arrows, aut)
}

/// Irreducible tagged terms with the given tag (or all tags) and target,
/// path length at most `max_len`, ascending per tag.
pub fn irreducible_tagged(
    sys: &MixedSystem,
    tag: Option<TagId>,
    tgt: Option<ObjectId>,
    max_len: usize,
) -> Result<Vec<TaggedTerm>, EnumError> {
    if !sys.is_complete() {
        return Err(EnumError::NotComplete);
    }
    let (aug, tag_arrows, aut) = tagged_automaton(sys);
    let delta = sys.base().quiver();
    let tags: Vec<TagId> = match tag {
        Some(t) => vec![t],
        None => (0..sys.gamma().object_count()).map(TagId).collect(),
    };
    let mut out = Vec::new();
    for t in tags {
        let vstart = aug.arrow(tag_arrows[t.0]).src;
        for w in aut.enumerate(&aug, vstart, tgt, max_len + 1) {
            let arrows = w.arrows();
            if arrows.is_empty() {
                continue; // the bare virtual object is not a term
            }
            debug_assert_eq!(arrows[0], tag_arrows[t.0]);
            let path = if arrows.len() == 1 {
                Path::identity(sys.f_obj()[t.0])
            } else {
                Path::from_arrows(delta, arrows[1..].to_vec()).expect("same arrow ids")
            };
            out.push(TaggedTerm::new(t, path));
        }
    }
    Ok(out)
}

/// Language analysis for one tag across all targets. Counts and lengths
/// refer to tagged terms, i.e. the virtual prefix arrow is not counted.
pub fn tagged_language_analysis(
    sys: &MixedSystem,
    tag: TagId,
) -> Result<LanguageAnalysis, EnumError> {
    if !sys.is_complete() {
        return Err(EnumError::NotComplete);
    }
    let (aug, tag_arrows, aut) = tagged_automaton(sys);
    let vstart = aug.arrow(tag_arrows[tag.0]).src;
    let mut analysis = aut.analyze(&aug, vstart, None);
    if let Some(c) = analysis.count {
        // the bare start state is not a term
        analysis.count = Some(c.saturating_sub(1));
    }
    if let Some(l) = analysis.longest_word {
        analysis.longest_word = Some(l.saturating_sub(1));
    }
    if let Some(w) = &analysis.witness {
        // cycles never contain virtual arrows: their sources have no
        // incoming edges
        analysis.witness = Some(
            Path::from_arrows(sys.base().quiver(), w.arrows().to_vec())
                .expect("cycle avoids virtual arrows"),
        );
    }
    Ok(analysis)
}

/// Finiteness of the tagged language for one tag and target object.
pub fn tagged_finiteness(
    sys: &MixedSystem,
    tag: TagId,
    tgt: ObjectId,
) -> Result<Finiteness, EnumError> {
    if !sys.is_complete() {
        return Err(EnumError::NotComplete);
    }
    let (aug, tag_arrows, aut) = tagged_automaton(sys);
    let vstart = aug.arrow(tag_arrows[tag.0]).src;
    let analysis = aut.analyze(&aug, vstart, Some(tgt));
    Ok(match analysis.count {
        Some(n) => Finiteness::Finite(n),
        None => {
            let w = analysis.witness.expect("cycle witness");
            Finiteness::Infinite(
                Path::from_arrows(sys.base().quiver(), w.arrows().to_vec())
                    .expect("cycle avoids virtual arrows"),
            )
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::completion::{buchberger, Limits};
    use crate::poly::PathPolynomial;
    use crate::scalar::Scalar;

    fn completed(rules: Vec<PathPolynomial>, q: &Quiver, o: &PathOrder) -> RewriteSystem {
        let sys = RewriteSystem::new(q.clone(), o.clone(), rules).unwrap();
        let report = buchberger(&sys, Limits::default());
        assert!(report.is_complete());
        report.system().clone()
    }

    #[test]
    fn refuses_incomplete_systems() {
        let q = Quiver::new(vec!["B"], vec![("x", "B", "B")]).unwrap();
        let o = PathOrder::deglex(&q, &["x"]).unwrap();
        let sys = RewriteSystem::new(q.clone(), o, vec![]).unwrap();
        let b = q.object_id("B").unwrap();
        assert_eq!(
            irreducible_paths(&sys, Some(b), Some(b), 3).unwrap_err(),
            EnumError::NotComplete
        );
    }

    #[test]
    fn free_loop_is_infinite_with_loop_witness() {
        let q = Quiver::new(vec!["B"], vec![("x", "B", "B")]).unwrap();
        let o = PathOrder::deglex(&q, &["x"]).unwrap();
        let sys = completed(vec![], &q, &o);
        let b = q.object_id("B").unwrap();
        let paths = irreducible_paths(&sys, Some(b), Some(b), 3).unwrap();
        assert_eq!(paths.len(), 4); // 1, x, x^2, x^3
        match finiteness(&sys, b, b).unwrap() {
            Finiteness::Infinite(w) => assert_eq!(w, q.path(&["x"]).unwrap()),
            other => panic!("expected infinite, got {other:?}"),
        }
    }

    #[test]
    fn collapse_rule_leaves_only_the_identity() {
        let q = Quiver::new(vec!["B"], vec![("x", "B", "B")]).unwrap();
        let o = PathOrder::deglex(&q, &["x"]).unwrap();
        let one = PathPolynomial::monomial(Scalar::one(), q.identity("B").unwrap());
        let x = PathPolynomial::monomial(Scalar::one(), q.path(&["x"]).unwrap());
        let rel = x.sub(&one, &o).unwrap();
        let sys = completed(vec![rel], &q, &o);
        let b = q.object_id("B").unwrap();
        assert_eq!(finiteness(&sys, b, b).unwrap(), Finiteness::Finite(1));
        let paths = irreducible_paths(&sys, Some(b), Some(b), 5).unwrap();
        assert_eq!(paths, vec![q.identity("B").unwrap()]);
    }

    #[test]
    fn quiver_with_no_arrows_has_identity_tables() {
        let q = Quiver::new(vec!["P", "Q"], Vec::<(&str, &str, &str)>::new()).unwrap();
        let o = PathOrder::deglex(&q, &[]).unwrap();
        let sys = completed(vec![], &q, &o);
        let table = hom_table(&sys, 4).unwrap();
        for entry in &table.entries {
            if entry.src == entry.tgt {
                assert_eq!(entry.paths, vec![Path::identity(entry.src)]);
                assert_eq!(entry.finiteness, Finiteness::Finite(1));
            } else {
                assert!(entry.paths.is_empty());
                assert_eq!(entry.finiteness, Finiteness::Finite(0));
            }
        }
    }

    #[test]
    fn identity_obstruction_kills_its_object() {
        // b - 1 and b + 1 force 1_B ~ 0; everything through B vanishes,
        // while the loop at C stays free
        let q = Quiver::new(
            vec!["C", "B"],
            vec![("p", "C", "B"), ("qq", "B", "C"), ("y", "C", "C"), ("b", "B", "B")],
        )
        .unwrap();
        let o = PathOrder::deglex(&q, &["p", "qq", "y", "b"]).unwrap();
        let one_b = PathPolynomial::monomial(Scalar::one(), q.identity("B").unwrap());
        let b = PathPolynomial::monomial(Scalar::one(), q.path(&["b"]).unwrap());
        let sys = completed(
            vec![b.sub(&one_b, &o).unwrap(), b.add(&one_b, &o).unwrap()],
            &q,
            &o,
        );
        let c = q.object_id("C").unwrap();
        let bb = q.object_id("B").unwrap();
        assert_eq!(finiteness(&sys, bb, bb).unwrap(), Finiteness::Finite(0));
        assert_eq!(finiteness(&sys, c, bb).unwrap(), Finiteness::Finite(0));
        match finiteness(&sys, c, c).unwrap() {
            Finiteness::Infinite(w) => assert_eq!(w, q.path(&["y"]).unwrap()),
            other => panic!("expected the free loop at C, got {other:?}"),
        }
        assert!(irreducible_paths(&sys, Some(bb), Some(bb), 4).unwrap().is_empty());
    }

    #[test]
    fn enumeration_agrees_with_direct_scanning() {
        // independent oracle: enumerate all paths, drop those containing an
        // obstruction subword
        let q = Quiver::new(vec!["B"], vec![("x", "B", "B"), ("y", "B", "B")]).unwrap();
        let o = PathOrder::deglex(&q, &["x", "y"]).unwrap();
        let xx = PathPolynomial::monomial(Scalar::one(), q.path(&["x", "x"]).unwrap());
        let yxy = PathPolynomial::monomial(Scalar::one(), q.path(&["y", "x", "y"]).unwrap());
        let x = PathPolynomial::monomial(Scalar::one(), q.path(&["x"]).unwrap());
        let y = PathPolynomial::monomial(Scalar::one(), q.path(&["y"]).unwrap());
        let sys = completed(vec![xx.sub(&x, &o).unwrap(), yxy.sub(&y, &o).unwrap()], &q, &o);
        let b = q.object_id("B").unwrap();
        let got = irreducible_paths(&sys, Some(b), Some(b), 8).unwrap();
        let obstructions: Vec<Vec<ArrowId>> = sys
            .rules()
            .iter()
            .map(|r| r.lt().arrows().to_vec())
            .collect();
        let expected: Vec<Path> = crate::quiver::enumerate_paths(&q, &o, Some(b), Some(b), 8)
            .into_iter()
            .filter(|p| {
                let w = p.arrows();
                !obstructions.iter().any(|ob| {
                    !ob.is_empty()
                        && w.len() >= ob.len()
                        && (0..=w.len() - ob.len()).any(|i| w[i..i + ob.len()] == ob[..])
                })
            })
            .collect();
        assert_eq!(got, expected);
    }
}
