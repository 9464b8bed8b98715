//! Ideal-membership oracle: the span of bounded-degree two-sided products
//! of the original relations, in one hom-set, with exact row reduction.
//!
//! For any complete system whose witness degrees stay below the span
//! degree, congruence of bounded-degree polynomials agrees *exactly* with
//! residue equality here: reduction by the completed system expands into
//! original-relation products within the tracked witness degree, so
//! membership never escapes the span, and the span is contained in the
//! congruence by construction.

use std::collections::HashMap;

use kancat_core::{ObjectId, PathOrder, PathPolynomial, Quiver, Scalar};
use kancat_core::quiver::Path;

/// Row-reduced span of `{u * r * v}` within one hom-set.
pub struct BlockSpan {
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    /// fully inter-reduced rows, each normalized at its pivot
    rows: Vec<(usize, Vec<Scalar>)>,
}

/// All paths `src -> tgt` with length at most `max_len`, via plain
/// breadth-first search (kept independent of the library's enumeration).
pub fn all_paths(quiver: &Quiver, src: ObjectId, tgt: ObjectId, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut level = vec![Path::identity(src)];
    for len in 0..=max_len {
        for p in &level {
            if p.tgt() == tgt {
                out.push(p.clone());
            }
        }
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for p in &level {
            for (id, a) in quiver.arrows() {
                if a.src == p.tgt() {
                    let mut arrows = p.arrows().to_vec();
                    arrows.push(id);
                    next.push(Path::from_arrows(quiver, arrows).unwrap());
                }
            }
        }
        level = next;
    }
    out
}

fn all_paths_any(quiver: &Quiver, src: ObjectId, max_len: usize) -> Vec<Path> {
    let mut out = Vec::new();
    let mut level = vec![Path::identity(src)];
    for len in 0..=max_len {
        out.extend(level.iter().cloned());
        if len == max_len {
            break;
        }
        let mut next = Vec::new();
        for p in &level {
            for (id, a) in quiver.arrows() {
                if a.src == p.tgt() {
                    let mut arrows = p.arrows().to_vec();
                    arrows.push(id);
                    next.push(Path::from_arrows(quiver, arrows).unwrap());
                }
            }
        }
        level = next;
    }
    out
}

impl BlockSpan {
    /// Builds the span for the hom-set `(src, tgt)` out of every product
    /// `u * r * v` with `deg u + deg r + deg v <= degree`.
    pub fn build(
        quiver: &Quiver,
        order: &PathOrder,
        relations: &[PathPolynomial],
        src: ObjectId,
        tgt: ObjectId,
        degree: usize,
    ) -> BlockSpan {
        let paths = all_paths(quiver, src, tgt, degree);
        let index: HashMap<Path, usize> =
            paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut span = BlockSpan { paths, index, rows: Vec::new() };
        for r in relations {
            if r.is_zero() {
                continue;
            }
            let deg_r = r.degree().unwrap();
            if deg_r > degree {
                continue;
            }
            for u in all_paths(quiver, src, r.src(), degree - deg_r) {
                let rest = degree - deg_r - u.len();
                for v in all_paths(quiver, r.tgt(), tgt, rest) {
                    let prod = r
                        .sandwich(&u, &v, order)
                        .expect("endpoints chosen to compose");
                    let vec = span.vectorize(&prod);
                    span.insert(vec);
                }
            }
        }
        span
    }

    /// Number of generator products that would be enumerated; used to skip
    /// pathologically large cases before doing any arithmetic.
    pub fn estimated_products(
        quiver: &Quiver,
        relations: &[PathPolynomial],
        src: ObjectId,
        tgt: ObjectId,
        degree: usize,
    ) -> usize {
        let mut n = 0;
        for r in relations {
            if r.is_zero() {
                continue;
            }
            let deg_r = r.degree().unwrap();
            if deg_r > degree {
                continue;
            }
            for u in all_paths(quiver, src, r.src(), degree - deg_r) {
                n += all_paths(quiver, r.tgt(), tgt, degree - deg_r - u.len()).len();
            }
        }
        n
    }

    pub fn block_dimension(&self) -> usize {
        self.paths.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn vectorize(&self, f: &PathPolynomial) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.paths.len()];
        for (p, k) in f.terms() {
            let i = *self
                .index
                .get(p)
                .expect("polynomial degree exceeds the span degree");
            v[i] = k.clone();
        }
        v
    }

    fn reduce_vec(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let k = v[*pivot].clone();
                for (a, b) in v.iter_mut().zip(row.iter()) {
                    *a = &*a - &(&k * b);
                }
            }
        }
        v
    }

    fn insert(&mut self, v: Vec<Scalar>) -> bool {
        let v = self.reduce_vec(v);
        let Some(pivot) = v.iter().position(|a| !a.is_zero()) else {
            return false;
        };
        let inv = v[pivot].recip();
        let v: Vec<Scalar> = v.iter().map(|a| a * &inv).collect();
        for (_, row) in &mut self.rows {
            if !row[pivot].is_zero() {
                let k = row[pivot].clone();
                for (a, b) in row.iter_mut().zip(v.iter()) {
                    *a = &*a - &(&k * b);
                }
            }
        }
        self.rows.push((pivot, v));
        self.rows.sort_by_key(|(p, _)| *p);
        true
    }

    /// Canonical residue of `f` modulo the span; equal residues decide
    /// congruence.
    pub fn residue(&self, f: &PathPolynomial) -> Vec<Scalar> {
        self.reduce_vec(self.vectorize(f))
    }

    pub fn contains(&self, f: &PathPolynomial) -> bool {
        self.residue(f).iter().all(|a| a.is_zero())
    }
}

/// Total number of paths out of `src` up to `max_len`; a cheap size probe.
pub fn path_count_from(quiver: &Quiver, src: ObjectId, max_len: usize) -> usize {
    all_paths_any(quiver, src, max_len).len()
}
