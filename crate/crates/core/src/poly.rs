//! K-linear combinations of parallel paths — the arrows of the free
//! K-category on a quiver.
//!
//! A polynomial carries its endpoints even when zero (typed zero), every
//! stored coefficient is nonzero, and terms are kept sorted descending
//! under the ambient path order, so the leading term is the first entry and
//! equality is structural.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::order::PathOrder;
use crate::quiver::{ObjectId, Path, Quiver};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("endpoint mismatch: term is not parallel to the polynomial")]
    TypeMismatch,
    #[error("polynomials are not composable")]
    NotComposable,
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PathPolynomial {
    src: ObjectId,
    tgt: ObjectId,
    /// sorted strictly descending under the ambient order; coefficients nonzero
    terms: Vec<(Path, Scalar)>,
}

impl PathPolynomial {
    pub fn zero(src: ObjectId, tgt: ObjectId) -> Self {
        PathPolynomial { src, tgt, terms: Vec::new() }
    }

    /// Single-term polynomial; a zero coefficient yields the typed zero.
    pub fn monomial(k: Scalar, path: Path) -> Self {
        let (src, tgt) = (path.src(), path.tgt());
        let terms = if k.is_zero() { Vec::new() } else { vec![(path, k)] };
        PathPolynomial { src, tgt, terms }
    }

    /// Builds a polynomial from (coefficient, path) pairs, merging like
    /// terms. All paths must be parallel; the list must be nonempty (use
    /// [`PathPolynomial::zero`] for a typed zero).
    pub fn from_terms(
        order: &PathOrder,
        terms: impl IntoIterator<Item = (Scalar, Path)>,
    ) -> Result<Self, AlgebraError> {
        let mut terms: Vec<(Path, Scalar)> =
            terms.into_iter().map(|(k, p)| (p, k)).collect();
        let (src, tgt) = match terms.first() {
            None => return Err(AlgebraError::ZeroPolynomial),
            Some((p, _)) => (p.src(), p.tgt()),
        };
        if terms.iter().any(|(p, _)| p.src() != src || p.tgt() != tgt) {
            return Err(AlgebraError::TypeMismatch);
        }
        terms.sort_by(|(p, _), (q, _)| order.compare(q, p));
        let mut merged: Vec<(Path, Scalar)> = Vec::with_capacity(terms.len());
        for (p, k) in terms {
            match merged.last_mut() {
                Some((q, c)) if *q == p => *c += &k,
                _ => merged.push((p, k)),
            }
        }
        merged.retain(|(_, k)| !k.is_zero());
        Ok(PathPolynomial { src, tgt, terms: merged })
    }

    pub fn src(&self) -> ObjectId {
        self.src
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

    /// Terms in descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter().map(|(p, k)| (p, k))
    }

    pub fn coefficient(&self, path: &Path) -> Scalar {
        self.terms
            .iter()
            .find(|(p, _)| p == path)
            .map(|(_, k)| k.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// The order-greatest stored path and its coefficient.
    pub fn leading_term(&self) -> Result<(&Path, &Scalar), AlgebraError> {
        self.terms
            .first()
            .map(|(p, k)| (p, k))
            .ok_or(AlgebraError::ZeroPolynomial)
    }

    /// Degree of the leading term. Zero polynomials have no degree.
    pub fn degree(&self) -> Option<usize> {
        self.terms.first().map(|(p, _)| p.len())
    }

    pub fn add(&self, other: &PathPolynomial, order: &PathOrder) -> Result<Self, AlgebraError> {
        if self.src != other.src || self.tgt != other.tgt {
            return Err(AlgebraError::TypeMismatch);
        }
        // merge two descending term lists
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (p, k) = &self.terms[i];
            let (q, c) = &other.terms[j];
            match order.compare(p, q) {
                Ordering::Greater => {
                    terms.push((p.clone(), k.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((q.clone(), c.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let sum = k + c;
                    if !sum.is_zero() {
                        terms.push((p.clone(), sum));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend(other.terms[j..].iter().cloned());
        Ok(PathPolynomial { src: self.src, tgt: self.tgt, terms })
    }

    pub fn sub(&self, other: &PathPolynomial, order: &PathOrder) -> Result<Self, AlgebraError> {
        self.add(&other.neg(), order)
    }

    pub fn neg(&self) -> Self {
        PathPolynomial {
            src: self.src,
            tgt: self.tgt,
            terms: self.terms.iter().map(|(p, k)| (p.clone(), -k)).collect(),
        }
    }

    pub fn scalar_mul(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return PathPolynomial::zero(self.src, self.tgt);
        }
        PathPolynomial {
            src: self.src,
            tgt: self.tgt,
            terms: self.terms.iter().map(|(p, c)| (p.clone(), k * c)).collect(),
        }
    }

    /// Bilinear extension of path concatenation; collects like terms.
    pub fn mul(&self, other: &PathPolynomial, order: &PathOrder) -> Result<Self, AlgebraError> {
        if self.tgt != other.src {
            return Err(AlgebraError::NotComposable);
        }
        if self.is_zero() || other.is_zero() {
            return Ok(PathPolynomial::zero(self.src, other.tgt));
        }
        let mut products = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (p, k) in &self.terms {
            for (q, c) in &other.terms {
                products.push((k * c, p.compose(q).expect("parallel terms compose")));
            }
        }
        PathPolynomial::from_terms(order, products)
    }

    /// Left and right multiplication by single paths, `u * self * v`.
    pub fn sandwich(&self, u: &Path, v: &Path, order: &PathOrder) -> Result<Self, AlgebraError> {
        if u.tgt() != self.src || self.tgt != v.src() {
            return Err(AlgebraError::NotComposable);
        }
        let terms = self.terms.iter().map(|(p, k)| {
            (k.clone(), u.compose(p).unwrap().compose(v).unwrap())
        });
        match PathPolynomial::from_terms(order, terms) {
            Ok(f) => Ok(f),
            Err(AlgebraError::ZeroPolynomial) => Ok(PathPolynomial::zero(u.src(), v.tgt())),
            Err(e) => Err(e),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self, AlgebraError> {
        let (_, lc) = self.leading_term()?;
        if lc.is_one() {
            return Ok(self.clone());
        }
        Ok(self.scalar_mul(&lc.recip()))
    }

    pub fn display<'a>(&'a self, quiver: &'a Quiver) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, quiver }
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a PathPolynomial,
    quiver: &'a Quiver,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, k)) in self.poly.terms().enumerate() {
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
            write!(f, "{}", p.display(self.quiver))?;
        }
        Ok(())
    }
}
