//! Right-congruence oracle over a finite-dimensional quotient.
//!
//! Given a complete untagged system with finite irreducible basis, the
//! right ideal generated by elements `g` is spanned by the normal forms of
//! `g * w` over basis words `w`. Row reduction then yields canonical
//! residues, deciding the right congruence without any tagged machinery.

use std::collections::HashMap;

use kancat_core::quiver::Path;
use kancat_core::{PathPolynomial, RewriteSystem, Scalar};

pub struct RightQuotient {
    basis: Vec<Path>,
    index: HashMap<Path, usize>,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl RightQuotient {
    /// `sys` must be complete with `basis` its full irreducible list;
    /// `gens` generate the right ideal.
    pub fn build(sys: &RewriteSystem, basis: Vec<Path>, gens: &[PathPolynomial]) -> RightQuotient {
        assert!(sys.is_complete());
        let index: HashMap<Path, usize> =
            basis.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut q = RightQuotient { basis, index, rows: Vec::new() };
        for g in gens {
            for w in q.basis.clone() {
                let shifted = g
                    .mul(&PathPolynomial::monomial(Scalar::one(), w), sys.order())
                    .expect("generator and basis word compose");
                let nf = sys.normal_form(&shifted);
                let v = q.vectorize(&nf);
                q.insert(v);
            }
        }
        q
    }

    pub fn class_count(&self) -> usize {
        self.basis.len() - self.rows.len()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn vectorize(&self, f: &PathPolynomial) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.basis.len()];
        for (p, k) in f.terms() {
            let i = *self.index.get(p).expect("normal form stays in the basis");
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

    /// Canonical residue of the class of `f` (given by its normal form).
    pub fn residue(&self, sys: &RewriteSystem, f: &PathPolynomial) -> Vec<Scalar> {
        self.reduce_vec(self.vectorize(&sys.normal_form(f)))
    }

    pub fn congruent(
        &self,
        sys: &RewriteSystem,
        f: &PathPolynomial,
        g: &PathPolynomial,
    ) -> bool {
        self.residue(sys, f) == self.residue(sys, g)
    }
}
