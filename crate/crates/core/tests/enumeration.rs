//! Cross-validation of the irreducible-term machinery on random completed
//! systems: automaton enumeration versus direct subword scanning, exact
//! finite counts, and pumpable witnesses.

use kancat_core::quiver::Path;
use kancat_core::{buchberger, Finiteness, Limits, PathPolynomial, RewriteSystem, Scalar};
use kancat_testsupport::{random_presentation, XorShift};

fn scan_irreducible(sys: &RewriteSystem, paths: Vec<Path>) -> Vec<Path> {
    let obstructions: Vec<&Path> = sys.rules().iter().map(|r| r.lt()).collect();
    paths
        .into_iter()
        .filter(|p| {
            let w = p.arrows();
            !obstructions.iter().any(|ob| {
                let o = ob.arrows();
                if o.is_empty() {
                    // identity obstruction: reducible if the path visits
                    // its object anywhere
                    return (0..=w.len()).any(|i| p.object_at(sys.quiver(), i) == ob.src());
                }
                w.len() >= o.len() && (0..=w.len() - o.len()).any(|i| w[i..i + o.len()] == *o)
            })
        })
        .collect()
}

#[test]
fn automaton_agrees_with_direct_scanning() {
    let mut rng = XorShift::new(5551);
    let mut checked = 0;
    while checked < 30 {
        let pres = random_presentation(&mut rng);
        let sys =
            RewriteSystem::new(pres.quiver.clone(), pres.order.clone(), pres.relations.clone())
                .unwrap();
        let report = buchberger(&sys, Limits { max_rules: 25, max_degree: 6, max_passes: 15 });
        if !report.is_complete() {
            continue;
        }
        let done = report.system();
        for src in done.quiver().objects() {
            for tgt in done.quiver().objects() {
                let got =
                    kancat_core::irreducible_paths(done, Some(src), Some(tgt), 8).unwrap();
                let all = kancat_core::enumerate_paths(
                    done.quiver(),
                    done.order(),
                    Some(src),
                    Some(tgt),
                    8,
                );
                let expected = scan_irreducible(done, all);
                assert_eq!(got, expected);
            }
        }
        checked += 1;
    }
}

#[test]
fn finite_verdicts_are_exhaustive_and_infinite_witnesses_pump() {
    let mut rng = XorShift::new(777);
    let mut checked = 0;
    while checked < 30 {
        let pres = random_presentation(&mut rng);
        let sys =
            RewriteSystem::new(pres.quiver.clone(), pres.order.clone(), pres.relations.clone())
                .unwrap();
        let report = buchberger(&sys, Limits { max_rules: 25, max_degree: 6, max_passes: 15 });
        if !report.is_complete() {
            continue;
        }
        let done = report.system();
        let longest_obstruction = done.rules().iter().map(|r| r.lt().len()).max().unwrap_or(0);
        for src in done.quiver().objects() {
            for tgt in done.quiver().objects() {
                match kancat_core::finiteness(done, src, tgt).unwrap() {
                    Finiteness::Finite(n) => {
                        let bound = n * (longest_obstruction + 1) + 1;
                        let listed =
                            kancat_core::irreducible_paths(done, Some(src), Some(tgt), bound)
                                .unwrap();
                        assert_eq!(listed.len(), n);
                        let more = kancat_core::irreducible_paths(
                            done,
                            Some(src),
                            Some(tgt),
                            bound + 3,
                        )
                        .unwrap();
                        assert_eq!(more.len(), n, "entries appeared beyond the bound");
                    }
                    Finiteness::Infinite(w) => {
                        assert_eq!(w.src(), w.tgt(), "witness must be a cycle");
                        let mut pumped = w.clone();
                        for _ in 0..5 {
                            assert!(done.is_irreducible(&PathPolynomial::monomial(
                                Scalar::one(),
                                pumped.clone()
                            )));
                            pumped = pumped.compose(&w).unwrap();
                        }
                    }
                }
            }
        }
        checked += 1;
    }
}
