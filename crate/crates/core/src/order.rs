//! Admissible well-orderings on paths.
//!
//! Only the degree-lexicographic order is implemented: compare by length
//! first, then lexicographically by a user-declared arrow precedence. This
//! is Noetherian (degree-first) and compatible with concatenation on both
//! sides, which is everything completion needs. Identity paths at distinct
//! objects are ordered by object declaration order so the order is total on
//! all paths, not just parallel ones.

use std::cmp::Ordering;

use thiserror::Error;

use crate::quiver::{ArrowId, ObjectId, Path, Quiver};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OrderKind {
    DegLex,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("precedence mentions unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("precedence mentions arrow {0:?} twice")]
    DuplicateArrow(String),
    #[error("precedence omits arrow {0:?}")]
    MissingArrow(String),
}

#[derive(Clone, Debug)]
pub struct PathOrder {
    kind: OrderKind,
    /// rank per ArrowId; larger rank = greater arrow
    arrow_rank: Vec<usize>,
    /// rank per ObjectId (declaration order) for the identity tie-break
    object_rank: Vec<usize>,
}

impl PathOrder {
    /// Degree-lexicographic order with the given arrow precedence, listed
    /// lowest first. Every arrow of the quiver must appear exactly once.
    pub fn deglex(quiver: &Quiver, precedence_low_to_high: &[&str]) -> Result<PathOrder, OrderError> {
        let mut arrow_rank = vec![usize::MAX; quiver.arrow_count()];
        for (rank, name) in precedence_low_to_high.iter().enumerate() {
            let id = quiver
                .arrow_id(name)
                .map_err(|_| OrderError::UnknownArrow((*name).into()))?;
            if arrow_rank[id.0] != usize::MAX {
                return Err(OrderError::DuplicateArrow((*name).into()));
            }
            arrow_rank[id.0] = rank;
        }
        for (id, a) in quiver.arrows() {
            if arrow_rank[id.0] == usize::MAX {
                return Err(OrderError::MissingArrow(a.name.clone()));
            }
        }
        Ok(PathOrder {
            kind: OrderKind::DegLex,
            arrow_rank,
            object_rank: (0..quiver.object_count()).collect(),
        })
    }

    /// Declaration-order precedence, used when a presentation omits an
    /// explicit order declaration.
    pub fn deglex_by_declaration(quiver: &Quiver) -> PathOrder {
        PathOrder {
            kind: OrderKind::DegLex,
            arrow_rank: (0..quiver.arrow_count()).collect(),
            object_rank: (0..quiver.object_count()).collect(),
        }
    }

    /// Extends the rank tables for an augmented quiver that appends extra
    /// arrows/objects after the originals (automaton plumbing); appended
    /// arrows rank above the originals.
    pub(crate) fn extended(mut self, arrow_count: usize, object_count: usize) -> PathOrder {
        while self.arrow_rank.len() < arrow_count {
            self.arrow_rank.push(self.arrow_rank.len());
        }
        while self.object_rank.len() < object_count {
            self.object_rank.push(self.object_rank.len());
        }
        self
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn arrow_rank(&self, a: ArrowId) -> usize {
        self.arrow_rank[a.0]
    }

    pub fn object_rank(&self, o: ObjectId) -> usize {
        self.object_rank[o.0]
    }

    /// Arrow ids sorted lowest precedence first.
    pub fn arrows_ascending(&self) -> Vec<ArrowId> {
        let mut ids: Vec<ArrowId> = (0..self.arrow_rank.len()).map(ArrowId).collect();
        ids.sort_by_key(|a| self.arrow_rank[a.0]);
        ids
    }

    /// Total order on all paths: length first, then lexicographic by arrow
    /// precedence; identity paths at distinct objects compare by object
    /// declaration order.
    pub fn compare(&self, p: &Path, q: &Path) -> Ordering {
        match p.len().cmp(&q.len()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in p.arrows().iter().zip(q.arrows().iter()) {
            match self.arrow_rank[a.0].cmp(&self.arrow_rank[b.0]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        if p.is_identity() {
            self.object_rank[p.src().0].cmp(&self.object_rank[q.src().0])
        } else {
            Ordering::Equal
        }
    }
}
