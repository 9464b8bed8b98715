//! Directed multigraphs and composable paths.
//!
//! A [`Quiver`] is a finite set of objects together with named arrows; a
//! [`Path`] is a composable arrow sequence, with identity paths carrying
//! their base object explicitly so that identities at distinct objects are
//! distinct values. Composition reads left to right: `a: B1 -> B2` followed
//! by `b: B2 -> B2` composes to the path written `a*b`.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::order::PathOrder;

/// Index of an object in its quiver's declaration order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ObjectId(pub usize);

/// Index of an arrow in its quiver's declaration order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ArrowId(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub src: ObjectId,
    pub tgt: ObjectId,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QuiverError {
    #[error("duplicate name {0:?}")]
    DuplicateName(String),
    #[error("arrow {arrow:?} references undeclared object {object:?}")]
    DanglingEndpoint { arrow: String, object: String },
    #[error("empty name")]
    EmptyName,
    #[error("unknown object {0:?}")]
    UnknownObject(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("paths are not composable: target {0:?} differs from source {1:?}")]
    NotComposable(String, String),
}

#[derive(Clone, Debug)]
pub struct Quiver {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    object_index: HashMap<String, ObjectId>,
    arrow_index: HashMap<String, ArrowId>,
}

impl Quiver {
    /// Validates names and endpoints. Arrow names must be pairwise distinct
    /// and distinct from object names.
    pub fn new<S: Into<String>>(
        objects: Vec<S>,
        arrows: Vec<(S, S, S)>,
    ) -> Result<Quiver, QuiverError> {
        let mut q = Quiver {
            objects: Vec::new(),
            arrows: Vec::new(),
            object_index: HashMap::new(),
            arrow_index: HashMap::new(),
        };
        for name in objects {
            let name = name.into();
            if name.is_empty() {
                return Err(QuiverError::EmptyName);
            }
            if q.object_index.contains_key(&name) {
                return Err(QuiverError::DuplicateName(name));
            }
            q.object_index.insert(name.clone(), ObjectId(q.objects.len()));
            q.objects.push(name);
        }
        for (name, src, tgt) in arrows {
            let (name, src, tgt) = (name.into(), src.into(), tgt.into());
            if name.is_empty() {
                return Err(QuiverError::EmptyName);
            }
            if q.object_index.contains_key(&name) || q.arrow_index.contains_key(&name) {
                return Err(QuiverError::DuplicateName(name));
            }
            let src = *q.object_index.get(&src).ok_or(QuiverError::DanglingEndpoint {
                arrow: name.clone(),
                object: src.clone(),
            })?;
            let tgt = *q.object_index.get(&tgt).ok_or(QuiverError::DanglingEndpoint {
                arrow: name.clone(),
                object: tgt.clone(),
            })?;
            q.arrow_index.insert(name.clone(), ArrowId(q.arrows.len()));
            q.arrows.push(Arrow { name, src, tgt });
        }
        Ok(q)
    }

    /// Internal constructor for synthesized quivers (automaton plumbing);
    /// skips the name-shape validation but still indexes by name.
    pub(crate) fn raw(objects: Vec<String>, arrows: Vec<Arrow>) -> Quiver {
        let object_index = objects
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), ObjectId(i)))
            .collect();
        let arrow_index = arrows
            .iter()
            .enumerate()
            .map(|(i, a)| (a.name.clone(), ArrowId(i)))
            .collect();
        Quiver { objects, arrows, object_index, arrow_index }
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_name(&self, id: ObjectId) -> &str {
        &self.objects[id.0]
    }

    pub fn object_names(&self) -> impl Iterator<Item = &str> {
        self.objects.iter().map(|s| s.as_str())
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> {
        (0..self.objects.len()).map(ObjectId)
    }

    pub fn arrow(&self, id: ArrowId) -> &Arrow {
        &self.arrows[id.0]
    }

    pub fn arrows(&self) -> impl Iterator<Item = (ArrowId, &Arrow)> {
        self.arrows.iter().enumerate().map(|(i, a)| (ArrowId(i), a))
    }

    pub fn object_id(&self, name: &str) -> Result<ObjectId, QuiverError> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownObject(name.into()))
    }

    pub fn arrow_id(&self, name: &str) -> Result<ArrowId, QuiverError> {
        self.arrow_index
            .get(name)
            .copied()
            .ok_or_else(|| QuiverError::UnknownArrow(name.into()))
    }

    /// Builds a path from arrow names, checking composability.
    pub fn path(&self, names: &[&str]) -> Result<Path, QuiverError> {
        let ids = names
            .iter()
            .map(|n| self.arrow_id(n))
            .collect::<Result<Vec<_>, _>>()?;
        Path::from_arrows(self, ids)
    }

    /// Identity path at a named object.
    pub fn identity(&self, object: &str) -> Result<Path, QuiverError> {
        Ok(Path::identity(self.object_id(object)?))
    }
}

/// A composable arrow sequence. `src` and `tgt` are stored so endpoint
/// checks need no quiver lookup; for the empty path both equal the base
/// object.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Path {
    src: ObjectId,
    tgt: ObjectId,
    arrows: Vec<ArrowId>,
}

impl Path {
    pub fn identity(object: ObjectId) -> Path {
        Path { src: object, tgt: object, arrows: Vec::new() }
    }

    pub fn from_arrows(quiver: &Quiver, arrows: Vec<ArrowId>) -> Result<Path, QuiverError> {
        match arrows.split_first() {
            None => panic!("from_arrows requires at least one arrow; use Path::identity"),
            Some((first, rest)) => {
                let mut at = quiver.arrow(*first).tgt;
                for a in rest {
                    let arr = quiver.arrow(*a);
                    if arr.src != at {
                        return Err(QuiverError::NotComposable(
                            quiver.object_name(at).into(),
                            quiver.object_name(arr.src).into(),
                        ));
                    }
                    at = arr.tgt;
                }
                Ok(Path { src: quiver.arrow(*first).src, tgt: at, arrows })
            }
        }
    }

    pub fn src(&self) -> ObjectId {
        self.src
    }

    pub fn tgt(&self) -> ObjectId {
        self.tgt
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn arrows(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// The object visited after `i` arrows; `object_at(0) = src`,
    /// `object_at(len()) = tgt`.
    pub fn object_at(&self, quiver: &Quiver, i: usize) -> ObjectId {
        if i < self.arrows.len() {
            quiver.arrow(self.arrows[i]).src
        } else {
            self.tgt
        }
    }

    /// Diagrammatic composition: `self` then `other`.
    pub fn compose(&self, other: &Path) -> Result<Path, QuiverError> {
        if self.tgt != other.src {
            return Err(QuiverError::NotComposable(
                format!("#{}", self.tgt.0),
                format!("#{}", other.src.0),
            ));
        }
        let mut arrows = Vec::with_capacity(self.arrows.len() + other.arrows.len());
        arrows.extend_from_slice(&self.arrows);
        arrows.extend_from_slice(&other.arrows);
        Ok(Path { src: self.src, tgt: other.tgt, arrows })
    }

    /// The subpath covering arrow positions `range`, as a path. An empty
    /// range yields the identity at the object visited there.
    pub fn slice(&self, quiver: &Quiver, start: usize, end: usize) -> Path {
        assert!(start <= end && end <= self.arrows.len());
        if start == end {
            return Path::identity(self.object_at(quiver, start));
        }
        let arrows = self.arrows[start..end].to_vec();
        Path {
            src: quiver.arrow(arrows[0]).src,
            tgt: quiver.arrow(*arrows.last().unwrap()).tgt,
            arrows,
        }
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_identity() {
            write!(f, "1({})", self.quiver.object_name(self.path.src()))
        } else {
            let names: Vec<&str> = self
                .path
                .arrows()
                .iter()
                .map(|a| self.quiver.arrow(*a).name.as_str())
                .collect();
            write!(f, "{}", names.join("*"))
        }
    }
}

/// All composable paths matching the endpoint filters with length at most
/// `max_len`, ascending under `order`.
pub fn enumerate_paths(
    quiver: &Quiver,
    order: &PathOrder,
    src: Option<ObjectId>,
    tgt: Option<ObjectId>,
    max_len: usize,
) -> Vec<Path> {
    let mut out = Vec::new();
    let mut starts: Vec<ObjectId> = match src {
        Some(o) => vec![o],
        None => {
            let mut objs: Vec<ObjectId> = quiver.objects().collect();
            objs.sort_by_key(|o| order.object_rank(*o));
            objs
        }
    };
    // arrows leaving each object, in precedence order
    let mut out_arrows: Vec<Vec<ArrowId>> = vec![Vec::new(); quiver.object_count()];
    for (id, a) in quiver.arrows() {
        out_arrows[a.src.0].push(id);
    }
    for list in &mut out_arrows {
        list.sort_by_key(|a| order.arrow_rank(*a));
    }
    let mut level: Vec<Path> = Vec::new();
    for o in starts.drain(..) {
        level.push(Path::identity(o));
    }
    for len in 0..=max_len {
        for p in &level {
            if tgt.is_none_or(|t| p.tgt() == t) {
                out.push(p.clone());
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for p in &level {
            for a in &out_arrows[p.tgt().0] {
                let mut arrows = p.arrows().to_vec();
                arrows.push(*a);
                next.push(Path {
                    src: p.src(),
                    tgt: quiver.arrow(*a).tgt,
                    arrows,
                });
            }
        }
        level = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::PathOrder;

    fn hecke_quiver() -> Quiver {
        Quiver::new(
            vec!["B"],
            vec![("e1", "B", "B"), ("e2", "B", "B"), ("e3", "B", "B")],
        )
        .unwrap()
    }

    pub(crate) fn example_52_quiver() -> Quiver {
        Quiver::new(
            vec!["B1", "B2", "B3", "B4", "B5"],
            vec![
                ("a", "B1", "B2"),
                ("b", "B2", "B2"),
                ("c", "B2", "B3"),
                ("d", "B1", "B3"),
                ("e", "B1", "B5"),
                ("f", "B5", "B4"),
                ("g", "B4", "B3"),
                ("h", "B1", "B4"),
                ("j", "B5", "B3"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn builds_one_object_quiver() {
        let q = hecke_quiver();
        assert_eq!(q.object_count(), 1);
        assert_eq!(q.arrow_count(), 3);
    }

    #[test]
    fn single_object_no_arrows() {
        let q = Quiver::new(vec!["B1"], Vec::<(&str, &str, &str)>::new()).unwrap();
        assert_eq!(q.arrow_count(), 0);
    }

    #[test]
    fn rejects_dangling_endpoint() {
        let err = Quiver::new(vec!["B1", "B2"], vec![("a", "B1", "B3")]).unwrap_err();
        assert_eq!(
            err,
            QuiverError::DanglingEndpoint { arrow: "a".into(), object: "B3".into() }
        );
    }

    #[test]
    fn rejects_duplicate_names() {
        assert!(matches!(
            Quiver::new(vec!["B", "B"], Vec::<(&str, &str, &str)>::new()),
            Err(QuiverError::DuplicateName(_))
        ));
        assert!(matches!(
            Quiver::new(vec!["B"], vec![("B", "B", "B")]),
            Err(QuiverError::DuplicateName(_))
        ));
    }

    #[test]
    fn composes_diagrammatically() {
        let q = example_52_quiver();
        let a = q.path(&["a"]).unwrap();
        let b = q.path(&["b"]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab, q.path(&["a", "b"]).unwrap());
        assert_eq!(ab.src(), q.object_id("B1").unwrap());
        assert_eq!(ab.tgt(), q.object_id("B2").unwrap());

        let id = q.identity("B1").unwrap();
        assert_eq!(id.compose(&a).unwrap(), a);
        assert_eq!(a.compose(&q.identity("B2").unwrap()).unwrap(), a);

        let c = q.path(&["c"]).unwrap();
        assert!(matches!(c.compose(&a), Err(QuiverError::NotComposable(..))));
    }

    #[test]
    fn enumerates_hom_set_up_to_length() {
        let q = example_52_quiver();
        let order = PathOrder::deglex(
            &q,
            &["a", "b", "c", "d", "e", "f", "g", "h", "j"],
        )
        .unwrap();
        let b5 = q.object_id("B5").unwrap();
        let b3 = q.object_id("B3").unwrap();
        let paths = enumerate_paths(&q, &order, Some(b5), Some(b3), 2);
        assert_eq!(paths, vec![q.path(&["j"]).unwrap(), q.path(&["f", "g"]).unwrap()]);
    }

    #[test]
    fn enumerates_identities_at_length_zero() {
        let q = hecke_quiver();
        let order = PathOrder::deglex(&q, &["e1", "e2", "e3"]).unwrap();
        let b = q.object_id("B").unwrap();
        assert_eq!(
            enumerate_paths(&q, &order, Some(b), Some(b), 0),
            vec![Path::identity(b)]
        );
    }

    #[test]
    fn counts_all_words_up_to_length_two() {
        let q = hecke_quiver();
        let order = PathOrder::deglex(&q, &["e1", "e2", "e3"]).unwrap();
        assert_eq!(enumerate_paths(&q, &order, None, None, 2).len(), 13);
    }
}
