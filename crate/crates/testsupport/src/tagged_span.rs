//! Right-congruence membership oracle for tagged terms: the span of
//! `A|u*r*v` (base relations inside a tagged word) and `g*w` (tagged
//! generators multiplied on the right), row-reduced exactly.

use std::collections::HashMap;

use kancat_core::tagged::{TaggedPolynomial, TaggedTerm};
use kancat_core::{ObjectId, PathOrder, PathPolynomial, Quiver, Scalar, TagId};

use crate::span::all_paths;

pub struct TaggedBlockSpan {
    terms: Vec<TaggedTerm>,
    index: HashMap<TaggedTerm, usize>,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl TaggedBlockSpan {
    /// Span of the mixed congruence restricted to tagged words with target
    /// `tgt` and path length at most `degree`.
    pub fn build(
        quiver: &Quiver,
        order: &PathOrder,
        relations: &[PathPolynomial],
        eps_gens: &[TaggedPolynomial],
        f_obj: &[ObjectId],
        tgt: ObjectId,
        degree: usize,
    ) -> TaggedBlockSpan {
        let mut terms = Vec::new();
        for (t, img) in f_obj.iter().enumerate() {
            for p in all_paths(quiver, *img, tgt, degree) {
                terms.push(TaggedTerm::new(TagId(t), p));
            }
        }
        let index: HashMap<TaggedTerm, usize> =
            terms.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        let mut span = TaggedBlockSpan { terms, index, rows: Vec::new() };

        // base relations under every tag and context
        for r in relations {
            if r.is_zero() {
                continue;
            }
            let deg_r = r.degree().unwrap();
            if deg_r > degree {
                continue;
            }
            for (t, img) in f_obj.iter().enumerate() {
                for u in all_paths(quiver, *img, r.src(), degree - deg_r) {
                    for v in all_paths(quiver, r.tgt(), tgt, degree - deg_r - u.len()) {
                        let inner = r.sandwich(&u, &v, order).expect("composes");
                        let tagged: Vec<(Scalar, TaggedTerm)> = inner
                            .terms()
                            .map(|(p, k)| (k.clone(), TaggedTerm::new(TagId(t), p.clone())))
                            .collect();
                        if let Ok(p) = TaggedPolynomial::from_terms(order, tagged) {
                            let v = span.vectorize(&p);
                            span.insert(v);
                        }
                    }
                }
            }
        }
        // tagged generators, right-multiplied
        for g in eps_gens {
            if g.is_zero() {
                continue;
            }
            let max_path = g.terms().map(|(t, _)| t.path.len()).max().unwrap();
            if max_path > degree {
                continue;
            }
            for w in all_paths(quiver, g.tgt(), tgt, degree - max_path) {
                let shifted = g.mul_path(&w, order).expect("composes");
                let v = span.vectorize(&shifted);
                span.insert(v);
            }
        }
        span
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dimension(&self) -> usize {
        self.terms.len()
    }

    fn vectorize(&self, f: &TaggedPolynomial) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.terms.len()];
        for (t, k) in f.terms() {
            let i = *self.index.get(t).expect("term within the span degree");
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

    fn insert(&mut self, v: Vec<Scalar>) {
        let v = self.reduce_vec(v);
        let Some(pivot) = v.iter().position(|a| !a.is_zero()) else {
            return;
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
    }

    pub fn residue(&self, f: &TaggedPolynomial) -> Vec<Scalar> {
        self.reduce_vec(self.vectorize(f))
    }

    pub fn congruent(&self, f: &TaggedTerm, g: &TaggedTerm) -> bool {
        let one = Scalar::one();
        let fv = self.reduce_vec({
            let mut v = vec![Scalar::zero(); self.terms.len()];
            v[*self.index.get(f).unwrap()] = one.clone();
            v
        });
        let gv = self.reduce_vec({
            let mut v = vec![Scalar::zero(); self.terms.len()];
            v[*self.index.get(g).unwrap()] = one;
            v
        });
        fv == gv
    }

    /// How many vectorized generators the build would enumerate.
    pub fn estimated_products(
        quiver: &Quiver,
        relations: &[PathPolynomial],
        eps_gens: &[TaggedPolynomial],
        f_obj: &[ObjectId],
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
            for img in f_obj {
                for u in all_paths(quiver, *img, r.src(), degree - deg_r) {
                    n += all_paths(quiver, r.tgt(), tgt, degree - deg_r - u.len()).len();
                }
            }
        }
        for g in eps_gens {
            if g.is_zero() {
                continue;
            }
            let max_path = g.terms().map(|(t, _)| t.path.len()).max().unwrap();
            if max_path > degree {
                continue;
            }
            n += all_paths(quiver, g.tgt(), tgt, degree - max_path).len();
        }
        n
    }
}
