//! Tagged terms `A|p` and tag-homogeneous polynomials.
//!
//! A tag is an object of the acting graph; `A|p` pairs a tag with a path
//! whose source is the tag's image object. Tags block multiplication on the
//! left, which is what makes the mixed completion compute a *right*
//! congruence while working in a free structure. Terms of one polynomial
//! all share a target (they may carry different tags: a rule relating two
//! tags is exactly how a naturality condition is expressed).
//!
//! Tagged terms compare by their path component under the ambient order;
//! ties break by tag declaration order, placing every tag strictly below
//! every arrow.

use std::cmp::Ordering;
use std::fmt;

use crate::order::PathOrder;
use crate::poly::{AlgebraError, PathPolynomial};
use crate::quiver::{ObjectId, Path, Quiver};
use crate::scalar::Scalar;

/// Index of an acting-graph object, in declaration order.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TagId(pub usize);

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TaggedTerm {
    pub tag: TagId,
    pub path: Path,
}

impl TaggedTerm {
    pub fn new(tag: TagId, path: Path) -> TaggedTerm {
        TaggedTerm { tag, path }
    }

    pub fn tgt(&self) -> ObjectId {
        self.path.tgt()
    }

    pub fn display<'a>(&'a self, gamma: &'a Quiver, delta: &'a Quiver) -> TaggedTermDisplay<'a> {
        TaggedTermDisplay { term: self, gamma, delta }
    }
}

pub struct TaggedTermDisplay<'a> {
    term: &'a TaggedTerm,
    gamma: &'a Quiver,
    delta: &'a Quiver,
}

impl fmt::Display for TaggedTermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = self.gamma.object_name(ObjectId(self.term.tag.0));
        if self.term.path.is_identity() {
            write!(f, "{tag}|1")
        } else {
            write!(f, "{tag}|{}", self.term.path.display(self.delta))
        }
    }
}

pub fn compare_tagged(order: &PathOrder, a: &TaggedTerm, b: &TaggedTerm) -> Ordering {
    match order.compare(&a.path, &b.path) {
        Ordering::Equal => a.tag.cmp(&b.tag),
        o => o,
    }
}

/// A K-linear combination of tagged terms with a common target.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TaggedPolynomial {
    tgt: ObjectId,
    /// sorted strictly descending; coefficients nonzero
    terms: Vec<(TaggedTerm, Scalar)>,
}

impl TaggedPolynomial {
    pub fn zero(tgt: ObjectId) -> TaggedPolynomial {
        TaggedPolynomial { tgt, terms: Vec::new() }
    }

    pub fn monomial(k: Scalar, term: TaggedTerm) -> TaggedPolynomial {
        let tgt = term.tgt();
        let terms = if k.is_zero() { Vec::new() } else { vec![(term, k)] };
        TaggedPolynomial { tgt, terms }
    }

    pub fn from_terms(
        order: &PathOrder,
        terms: impl IntoIterator<Item = (Scalar, TaggedTerm)>,
    ) -> Result<TaggedPolynomial, AlgebraError> {
        let mut terms: Vec<(TaggedTerm, Scalar)> =
            terms.into_iter().map(|(k, t)| (t, k)).collect();
        let tgt = match terms.first() {
            None => return Err(AlgebraError::ZeroPolynomial),
            Some((t, _)) => t.tgt(),
        };
        if terms.iter().any(|(t, _)| t.tgt() != tgt) {
            return Err(AlgebraError::TypeMismatch);
        }
        terms.sort_by(|(a, _), (b, _)| compare_tagged(order, b, a));
        let mut merged: Vec<(TaggedTerm, Scalar)> = Vec::with_capacity(terms.len());
        for (t, k) in terms {
            match merged.last_mut() {
                Some((u, c)) if *u == t => *c += &k,
                _ => merged.push((t, k)),
            }
        }
        merged.retain(|(_, k)| !k.is_zero());
        Ok(TaggedPolynomial { tgt, terms: merged })
    }

    pub fn tgt(&self) -> ObjectId {
        self.tgt
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TaggedTerm, &Scalar)> {
        self.terms.iter().map(|(t, k)| (t, k))
    }

    pub fn leading_term(&self) -> Result<(&TaggedTerm, &Scalar), AlgebraError> {
        self.terms
            .first()
            .map(|(t, k)| (t, k))
            .ok_or(AlgebraError::ZeroPolynomial)
    }

    pub fn add(&self, other: &TaggedPolynomial, order: &PathOrder) -> Result<Self, AlgebraError> {
        if self.tgt != other.tgt {
            return Err(AlgebraError::TypeMismatch);
        }
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (t, k) = &self.terms[i];
            let (u, c) = &other.terms[j];
            match compare_tagged(order, t, u) {
                Ordering::Greater => {
                    terms.push((t.clone(), k.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((u.clone(), c.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let sum = k + c;
                    if !sum.is_zero() {
                        terms.push((t.clone(), sum));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(self.terms[i..].iter().cloned());
        terms.extend(other.terms[j..].iter().cloned());
        Ok(TaggedPolynomial { tgt: self.tgt, terms })
    }

    pub fn sub(&self, other: &TaggedPolynomial, order: &PathOrder) -> Result<Self, AlgebraError> {
        self.add(&other.neg(), order)
    }

    pub fn neg(&self) -> Self {
        TaggedPolynomial {
            tgt: self.tgt,
            terms: self.terms.iter().map(|(t, k)| (t.clone(), -k)).collect(),
        }
    }

    pub fn scalar_mul(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return TaggedPolynomial::zero(self.tgt);
        }
        TaggedPolynomial {
            tgt: self.tgt,
            terms: self.terms.iter().map(|(t, c)| (t.clone(), k * c)).collect(),
        }
    }

    /// Right multiplication by a single path.
    pub fn mul_path(&self, v: &Path, order: &PathOrder) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Ok(TaggedPolynomial::zero(v.tgt()));
        }
        if self.tgt != v.src() {
            return Err(AlgebraError::NotComposable);
        }
        let terms = self.terms.iter().map(|(t, k)| {
            (k.clone(), TaggedTerm::new(t.tag, t.path.compose(v).unwrap()))
        });
        TaggedPolynomial::from_terms(order, terms)
    }

    /// Right multiplication by an untagged polynomial — the induced right
    /// action, bilinearly.
    pub fn mul_poly(
        &self,
        b: &PathPolynomial,
        order: &PathOrder,
    ) -> Result<Self, AlgebraError> {
        if self.tgt != b.src() {
            return Err(AlgebraError::NotComposable);
        }
        if self.is_zero() || b.is_zero() {
            return Ok(TaggedPolynomial::zero(b.tgt()));
        }
        let mut products = Vec::with_capacity(self.terms.len() * b.term_count());
        for (t, k) in &self.terms {
            for (m, c) in b.terms() {
                products.push((k * c, TaggedTerm::new(t.tag, t.path.compose(m).unwrap())));
            }
        }
        match TaggedPolynomial::from_terms(order, products) {
            Ok(f) => Ok(f),
            Err(AlgebraError::ZeroPolynomial) => Ok(TaggedPolynomial::zero(b.tgt())),
            Err(e) => Err(e),
        }
    }

    pub fn monic(&self) -> Result<Self, AlgebraError> {
        let (_, lc) = self.leading_term()?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scalar_mul(&lc.recip()))
    }

    pub fn display<'a>(
        &'a self,
        gamma: &'a Quiver,
        delta: &'a Quiver,
    ) -> TaggedPolyDisplay<'a> {
        TaggedPolyDisplay { poly: self, gamma, delta }
    }
}

pub struct TaggedPolyDisplay<'a> {
    poly: &'a TaggedPolynomial,
    gamma: &'a Quiver,
    delta: &'a Quiver,
}

impl fmt::Display for TaggedPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (t, k)) in self.poly.terms().enumerate() {
            let (sign, mag) = if k.is_negative() {
                ("-", -k)
            } else {
                ("+", k.clone())
            };
            if i == 0 {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            if !mag.is_one() {
                write!(f, "{} ", mag)?;
            }
            write!(f, "{}", t.display(self.gamma, self.delta))?;
        }
        Ok(())
    }
}

/// An oriented monic tagged relation with cached leading term and remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaggedRule {
    poly: TaggedPolynomial,
    lt: TaggedTerm,
    rem: TaggedPolynomial,
    witness_degree: usize,
}

impl TaggedRule {
    pub fn new(poly: &TaggedPolynomial, order: &PathOrder) -> Result<TaggedRule, AlgebraError> {
        let monic = poly.monic()?;
        let (lt, _) = monic.leading_term().unwrap();
        let lt = lt.clone();
        let rem = monic.sub(&TaggedPolynomial::monomial(Scalar::one(), lt.clone()), order)?;
        let witness_degree = lt.path.len();
        Ok(TaggedRule { poly: monic, lt, rem, witness_degree })
    }

    pub(crate) fn with_witness(mut self, witness_degree: usize) -> TaggedRule {
        self.witness_degree = witness_degree;
        self
    }

    pub fn poly(&self) -> &TaggedPolynomial {
        &self.poly
    }

    pub fn lt(&self) -> &TaggedTerm {
        &self.lt
    }

    pub fn rem(&self) -> &TaggedPolynomial {
        &self.rem
    }

    pub fn witness_degree(&self) -> usize {
        self.witness_degree
    }
}
