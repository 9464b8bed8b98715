//! Robustness sweep: completes a few thousand random presentations (plain
//! and acting) under assorted limits, exercising reduction, enumeration,
//! and the tagged engine. Any panic is a bug.
//!
//! Run with: cargo run --release -p kancat-testsupport --example stress [n]

use kancat_core::quiver::Path;
use kancat_core::tagged::{TaggedPolynomial, TaggedTerm};
use kancat_core::{
    buchberger, complete_mixed, KanPresentation, Limits, ObjectId, PathPolynomial, Quiver,
    RewriteSystem, Scalar, TagId,
};
use kancat_testsupport::span::all_paths;
use kancat_testsupport::{random_presentation, XorShift};

fn main() {
    let n: u64 = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2000);
    let mut completed = 0u64;
    let mut incomplete = 0u64;
    let mut mixed_done = 0u64;
    for seed in 1..=n {
        let mut rng = XorShift::new(seed);
        let pres = random_presentation(&mut rng);
        let sys =
            RewriteSystem::new(pres.quiver.clone(), pres.order.clone(), pres.relations.clone())
                .unwrap();
        let limits = Limits {
            max_rules: 10 + rng.below(40),
            max_degree: 4 + rng.below(6),
            max_passes: 5 + rng.below(15),
        };
        let report = buchberger(&sys, limits);
        if report.is_complete() {
            completed += 1;
            let done = report.system();
            for src in done.quiver().objects() {
                for tgt in done.quiver().objects() {
                    let _ = kancat_core::finiteness(done, src, tgt).unwrap();
                    let _ = kancat_core::irreducible_paths(done, Some(src), Some(tgt), 6).unwrap();
                }
            }
            let _ = kancat_core::hom_table(done, 5).unwrap();
            // a few reductions with both strategies
            for _ in 0..5 {
                let src = ObjectId(rng.below(done.quiver().object_count()));
                let tgt = ObjectId(rng.below(done.quiver().object_count()));
                let pool = all_paths(done.quiver(), src, tgt, 4);
                if pool.is_empty() {
                    continue;
                }
                let f = PathPolynomial::monomial(Scalar::one(), pool[rng.below(pool.len())].clone());
                let a = done.normal_form(&f);
                let mut chooser = XorShift::new(rng.next_u64());
                let b = done.normal_form_with(&f, |k| chooser.below(k));
                assert_eq!(a, b);
            }
        } else {
            incomplete += 1;
        }

        // acting-graph variant on the same base
        let n_gobj = 1 + rng.below(2);
        let gobjects: Vec<String> = (0..n_gobj).map(|i| format!("A{i}")).collect();
        let n_garr = rng.below(3);
        let garrows: Vec<(String, String, String)> = (0..n_garr)
            .map(|i| {
                (
                    format!("q{i}"),
                    format!("A{}", rng.below(n_gobj)),
                    format!("A{}", rng.below(n_gobj)),
                )
            })
            .collect();
        let Ok(gamma) = Quiver::new(gobjects, garrows) else { continue };
        let f_obj: Vec<ObjectId> = (0..n_gobj)
            .map(|_| ObjectId(rng.below(pres.quiver.object_count())))
            .collect();
        let mut f_arr = Vec::new();
        let mut ok = true;
        for (_, arrow) in gamma.arrows() {
            let pool = all_paths(&pres.quiver, f_obj[arrow.src.0], f_obj[arrow.tgt.0], 2);
            if pool.is_empty() {
                ok = false;
                break;
            }
            f_arr.push(PathPolynomial::monomial(
                Scalar::one(),
                pool[rng.below(pool.len())].clone(),
            ));
        }
        if !ok {
            continue;
        }
        let Ok(p) =
            KanPresentation::new(gamma, pres.quiver.clone(), pres.relations.clone(), f_obj, f_arr)
        else {
            continue;
        };
        let Ok(ms) = kancat_core::build_system(&p, pres.order.clone()) else { continue };
        let report = complete_mixed(&ms, Limits { max_rules: 30, max_degree: 6, max_passes: 15 });
        if report.is_complete() {
            mixed_done += 1;
            let done = report.system();
            for t in 0..done.gamma().object_count() {
                let _ = kancat_core::irreducible_tagged(done, Some(TagId(t)), None, 5).unwrap();
                let _ = kancat_core::nf::tagged_language_analysis(done, TagId(t)).unwrap();
                let unit = TaggedPolynomial::monomial(
                    Scalar::one(),
                    TaggedTerm::new(TagId(t), Path::identity(done.f_obj()[t])),
                );
                let _ = done.normal_form_tagged(&unit);
            }
        }
    }
    println!("plain completed: {completed}, incomplete: {incomplete}, mixed completed: {mixed_done}");
}
