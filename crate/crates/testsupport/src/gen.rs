//! Random small presentations for the oracle-agreement and confluence
//! suites.

use kancat_core::quiver::Path;
use kancat_core::{PathOrder, PathPolynomial, Quiver, Scalar};

use crate::rng::XorShift;
use crate::span::all_paths;

pub struct RandomPresentation {
    pub quiver: Quiver,
    pub order: PathOrder,
    pub relations: Vec<PathPolynomial>,
}

const COEFFS: &[(i64, i64)] = &[(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2), (1, 3), (3, 1)];

/// Up to 3 objects, up to 4 arrows, up to 3 relations of degree at most 3
/// with small rational coefficients. Quivers without enough composable
/// paths are retried under a derived seed.
pub fn random_presentation(rng: &mut XorShift) -> RandomPresentation {
    loop {
        if let Some(p) = try_generate(rng) {
            return p;
        }
    }
}

fn try_generate(rng: &mut XorShift) -> Option<RandomPresentation> {
    let n_obj = 1 + rng.below(3);
    let n_arr = 1 + rng.below(4);
    let objects: Vec<String> = (0..n_obj).map(|i| format!("O{i}")).collect();
    let arrows: Vec<(String, String, String)> = (0..n_arr)
        .map(|i| {
            (
                format!("g{i}"),
                format!("O{}", rng.below(n_obj)),
                format!("O{}", rng.below(n_obj)),
            )
        })
        .collect();
    let quiver = Quiver::new(objects, arrows).ok()?;

    // random arrow precedence
    let mut names: Vec<String> = quiver.arrows().map(|(_, a)| a.name.clone()).collect();
    for i in (1..names.len()).rev() {
        names.swap(i, rng.below(i + 1));
    }
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let order = PathOrder::deglex(&quiver, &name_refs).ok()?;

    let n_rel = 1 + rng.below(3);
    let mut relations = Vec::new();
    for _ in 0..n_rel {
        relations.push(random_relation(rng, &quiver, &order)?);
    }
    Some(RandomPresentation { quiver, order, relations })
}

fn random_relation(
    rng: &mut XorShift,
    quiver: &Quiver,
    order: &PathOrder,
) -> Option<PathPolynomial> {
    // pick a hom-set with at least two short paths
    for _ in 0..20 {
        let src = kancat_core::ObjectId(rng.below(quiver.object_count()));
        let tgt = kancat_core::ObjectId(rng.below(quiver.object_count()));
        let pool: Vec<Path> = all_paths(quiver, src, tgt, 3);
        if pool.len() < 2 {
            continue;
        }
        let n_terms = 2 + rng.below(2.min(pool.len() - 1));
        let mut picked: Vec<usize> = Vec::new();
        while picked.len() < n_terms.min(pool.len()) {
            let i = rng.below(pool.len());
            if !picked.contains(&i) {
                picked.push(i);
            }
        }
        let terms: Vec<(Scalar, Path)> = picked
            .iter()
            .map(|&i| {
                let (n, d) = COEFFS[rng.below(COEFFS.len())];
                (Scalar::ratio(n, d), pool[i].clone())
            })
            .collect();
        let poly = PathPolynomial::from_terms(order, terms).ok()?;
        if !poly.is_zero() {
            return Some(poly);
        }
    }
    None
}
