//! Acceptance suite: eight criteria, one test per criterion, each printing
//! a PASS/FAIL line per sub-check before asserting.
//!
//! Criteria 1-4 pin the published reference values of the two worked
//! examples verbatim. Four of those published values are internally
//! inconsistent with the published input relations (the suite's failure
//! messages say which, and `crates/core/tests/worked_examples.rs` certifies
//! the corrected values against independent ideal-membership and
//! right-quotient oracles). Those sub-checks fail honestly rather than
//! being loosened; everything else passes.

use std::process::Command;
use std::time::Instant;

use kancat_core::quiver::Path;
use kancat_core::tagged::{TaggedPolynomial, TaggedTerm};
use kancat_core::{
    buchberger, complete_mixed, is_groebner, kan_extension, Finiteness, IncompleteReason,
    Limits, ObjectId, PathPolynomial, RewriteSystem, Scalar, TagId,
};
use kancat_testsupport::fixtures;
use kancat_testsupport::span::{all_paths, BlockSpan};
use kancat_testsupport::{random_presentation, XorShift};

struct Checker {
    criterion: &'static str,
    failures: Vec<String>,
}

impl Checker {
    fn new(criterion: &'static str) -> Checker {
        Checker { criterion, failures: Vec::new() }
    }

    fn check(&mut self, label: &str, ok: bool, detail: String) {
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("ACCEPTANCE {} [{label}]: {verdict} — {detail}", self.criterion);
        if !ok {
            self.failures.push(format!("[{label}] {detail}"));
        }
    }

    fn finish(self) {
        if self.failures.is_empty() {
            println!("ACCEPTANCE {}: PASS", self.criterion);
        } else {
            println!("ACCEPTANCE {}: FAIL ({} sub-checks)", self.criterion, self.failures.len());
            panic!(
                "criterion {} failed:\n  {}",
                self.criterion,
                self.failures.join("\n  ")
            );
        }
    }
}

fn hecke_system() -> RewriteSystem {
    kancat_core::textio::parse_presentation(fixtures::HECKE)
        .unwrap()
        .to_rewrite_system()
        .unwrap()
}

fn poly(sys: &RewriteSystem, text: &str) -> PathPolynomial {
    kancat_core::textio::parse_polynomial(text, sys.quiver(), sys.order()).unwrap()
}

/// Published form of the element completion adds to the six relations.
const PUBLISHED_ADDED: &str = "e3*e2*e1*e3 - e2*e3*e2*e1 + 2/9 e2*e1 - 2/9 e1*e3";

#[test]
fn criterion_1_hecke_completion() {
    let mut c = Checker::new("1 (completion of the idempotent presentation)");
    let sys = hecke_system();
    let started = Instant::now();
    let report = buchberger(&sys, Limits::default());
    let elapsed = started.elapsed();

    c.check("1.complete", report.is_complete(), "completion finished".into());
    c.check(
        "1.one-added",
        report.added.len() == 1,
        format!("exactly one added element (got {})", report.added.len()),
    );
    c.check(
        "1.seven-rules",
        report.system().rules().len() == 7,
        format!("7-element basis (got {})", report.system().rules().len()),
    );
    let mut confirmed = report.system().clone();
    c.check("1.verified", is_groebner(&mut confirmed), "is_groebner confirms the basis".into());

    let added = report.added[0].poly().display(sys.quiver()).to_string();
    c.check(
        "1.added-value",
        added == PUBLISHED_ADDED,
        format!(
            "added element matches the published polynomial; published: {PUBLISHED_ADDED}; \
             computed: {added}. The published tail signs are inconsistent with the published \
             relations: the computed element equals r6*e1 - e3*e2*r4 - 2/9*r4 exactly, and the \
             published variant differs from it by 4/9 (e2*e1 - e1*e3), which is not in the \
             ideal (see worked_examples.rs for the oracle certification)"
        ),
    );
    c.check(
        "1.runtime",
        elapsed.as_secs_f64() < 1.0,
        format!("completion ran in {elapsed:?} (< 1 s)"),
    );
    c.finish();
}

/// The twenty published irreducibles (lengths 0 through 4).
fn published_20() -> Vec<&'static str> {
    vec![
        "1(B)",
        "e1",
        "e2",
        "e3",
        "e1*e2",
        "e1*e3",
        "e2*e1",
        "e2*e3",
        "e3*e2",
        "e1*e2*e1",
        "e1*e2*e3",
        "e1*e3*e2",
        "e2*e1*e3",
        "e2*e3*e2",
        "e3*e2*e1",
        "e1*e2*e1*e3",
        "e1*e2*e3*e2",
        "e1*e3*e2*e1",
        "e2*e1*e3*e2",
        "e2*e3*e2*e1",
    ]
}

#[test]
fn criterion_2_hecke_irreducibles() {
    let mut c = Checker::new("2 (irreducibles of the completed basis)");
    let report = buchberger(&hecke_system(), Limits::default());
    let done = report.system();
    let b = done.quiver().object_id("B").unwrap();
    let irr = kancat_core::irreducible_paths(done, Some(b), Some(b), 12).unwrap();
    let names: Vec<String> = irr.iter().map(|p| p.display(done.quiver()).to_string()).collect();

    let published = published_20();
    let missing: Vec<&&str> = published.iter().filter(|p| !names.contains(&p.to_string())).collect();
    c.check(
        "2.contains-published",
        missing.is_empty(),
        format!("all 20 published terms are irreducible (missing: {missing:?})"),
    );
    let extra: Vec<&String> =
        names.iter().filter(|n| !published.contains(&n.as_str())).collect();
    c.check(
        "2.exactly-published",
        extra.is_empty(),
        format!(
            "no irreducibles beyond the published 20; computed has {} extra of length >= 5: \
             {extra:?}. The published list stops at length 4 but the completed basis admits \
             irreducible words up to length 6 (24 in total, the dimension of the presented \
             algebra)",
            extra.len()
        ),
    );
    let by_len = |l: usize| irr.iter().filter(|p| p.len() == l).count();
    c.check(
        "2.counts-up-to-4",
        by_len(0) == 1 && by_len(1) == 3 && by_len(2) == 5 && by_len(3) == 6 && by_len(4) == 5,
        format!(
            "published per-length counts 1/3/5/6/5 hold up to length 4 \
             (got {}/{}/{}/{}/{})",
            by_len(0), by_len(1), by_len(2), by_len(3), by_len(4)
        ),
    );
    let fin = kancat_core::finiteness(done, b, b).unwrap();
    c.check(
        "2.finite-20",
        fin == Finiteness::Finite(20),
        format!("finiteness reports Finite(20); computed {fin:?}"),
    );
    c.finish();
}

fn published_8() -> Vec<&'static str> {
    vec![
        "A|1",
        "A|e2",
        "A|e3",
        "A|e2*e3",
        "A|e3*e2",
        "A|e2*e3*e2",
        "A|e3*e2*e1",
        "A|e2*e3*e2*e1",
    ]
}

#[test]
fn criterion_3_tagged_kan_computation() {
    let mut c = Checker::new("3 (tagged computation of the right congruence)");
    let file = kancat_core::textio::parse_presentation(fixtures::HECKE_Q).unwrap();
    let p = file.to_kan_presentation().unwrap();
    let sys = kancat_core::build_system(&p, file.order.clone()).unwrap();

    let started = Instant::now();
    let report = complete_mixed(&sys, Limits::default());
    let elapsed = started.elapsed();
    c.check("3.complete", report.is_complete(), "mixed completion finished".into());
    let done = report.system();
    let total = done.base().rules().len() + done.eps_rules().len();
    c.check(
        "3.nine-elements",
        total == 9,
        format!("9-element mixed basis (got {total})"),
    );
    let eps: Vec<String> = done
        .eps_rules()
        .iter()
        .map(|r| r.poly().display(done.gamma(), done.base().quiver()).to_string())
        .collect();
    c.check(
        "3.has-seed-rule",
        eps.iter().any(|r| r == "A|e2*e1 - A|1"),
        format!(
            "mixed basis contains A|e2*e1 - A|1; computed tagged rules: {eps:?}. The seed rule \
             is interreduced away once A|e2 - A|1 is derived from the overlap of A|e2*e1 with \
             e2*e1*e2, a critical pair the published basis misses (the right ideal generated \
             by e2*e1 - 1 contains 11/9 (1 - e2); see worked_examples.rs)"
        ),
    );
    c.check(
        "3.has-e1-rule",
        eps.iter().any(|r| r == "A|e1 - A|1"),
        format!("mixed basis contains A|e1 - A|1 (tagged rules: {eps:?})"),
    );

    let res = kan_extension(&p, file.order.clone(), 12, Limits::default()).unwrap();
    let basis: Vec<String> = res
        .basis
        .iter()
        .map(|t| t.display(res.mixed.gamma(), res.mixed.base().quiver()).to_string())
        .collect();
    let published = published_8();
    c.check(
        "3.published-irreducibles",
        basis == published,
        format!(
            "tagged irreducibles match the published 8; published: {published:?}; computed: \
             {basis:?}. A|e2 ~ A|1 holds in the right congruence, so the published list \
             double-counts four classes (right-quotient rank oracle: dimension 4)"
        ),
    );

    let base = res.mixed.base();
    let congruent = res
        .congruent_mod_right(&poly(base, "e1*e2*e3"), &poly(base, "e2*e3"))
        .unwrap();
    c.check(
        "3.congruence",
        congruent,
        "e1*e2*e3 and e2*e3 fall in the same right-congruence class".into(),
    );
    c.check(
        "3.runtime",
        elapsed.as_secs_f64() < 1.0,
        format!("mixed completion ran in {elapsed:?} (< 1 s)"),
    );
    c.finish();
}

#[test]
fn criterion_4_five_object_category() {
    let mut c = Checker::new("4 (five-object quiver category)");
    let file = kancat_core::textio::parse_presentation(fixtures::FIVE_OBJECTS).unwrap();
    let mut sys = file.to_rewrite_system().unwrap();
    let started = Instant::now();
    let groebner = is_groebner(&mut sys);
    c.check(
        "4.is-groebner",
        groebner,
        "the 5 published relations already form a Groebner basis; computed: they do not — \
         f*g sits inside e*f*g, and that critical pair's S-polynomial normal-forms to \
         a*b*c - e*j + d, a nonzero ideal member the published set cannot reduce \
         (span-oracle certification in worked_examples.rs)"
            .into(),
    );

    // tables are computed on the completed system
    let report = buchberger(&file.to_rewrite_system().unwrap(), Limits::default());
    let done = report.system();
    let q = done.quiver();
    let table = kancat_core::hom_table(done, 8).unwrap();
    let elapsed = started.elapsed();
    let col = |src: &str, tgt: &str| {
        let e = table
            .entries
            .iter()
            .find(|e| e.src == q.object_id(src).unwrap() && e.tgt == q.object_id(tgt).unwrap())
            .unwrap();
        let names: Vec<String> = e.paths.iter().map(|p| p.display(q).to_string()).collect();
        (names, e.finiteness.clone())
    };

    let published_columns: Vec<(&str, &str, Vec<&str>)> = vec![
        ("B1", "B2", vec!["a", "a*b", "a*b*b"]),
        ("B1", "B3", vec!["a*c", "a*b*c", "a*b*b*c"]),
        ("B1", "B4", vec!["h", "e*f"]),
        ("B1", "B5", vec!["e"]),
        ("B2", "B3", vec!["c", "b*c", "b*b*c"]),
        ("B4", "B3", vec!["g"]),
        ("B5", "B4", vec!["f"]),
        ("B5", "B3", vec!["j"]),
    ];
    for (src, tgt, mut expect) in published_columns {
        let (mut got, fin) = col(src, tgt);
        expect.sort();
        got.sort();
        let ok = got == expect && fin.is_finite();
        let extra_note = if src == "B1" && tgt == "B3" {
            " — the published column omits the arrow d and the class of e*j forced by \
             f*g ~ j together with e*f*g ~ a*b*c + d, and wrongly keeps a*b*c"
        } else {
            ""
        };
        c.check(
            &format!("4.column-{src}->{tgt}"),
            ok,
            format!("published {expect:?}, computed {got:?}{extra_note}"),
        );
    }

    let b2 = q.object_id("B2").unwrap();
    match kancat_core::finiteness(done, b2, b2).unwrap() {
        Finiteness::Infinite(w) => {
            let witness = w.display(q).to_string();
            c.check(
                "4.b2-infinite",
                witness == "b",
                format!("B2 -> B2 flagged infinite with witness b (got witness {witness})"),
            );
        }
        Finiteness::Finite(n) => {
            c.check("4.b2-infinite", false, format!("B2 -> B2 wrongly finite ({n})"));
        }
    }
    let fg = poly(done, "f*g");
    c.check(
        "4.fg-reduces-to-j",
        done.normal_form(&fg) == poly(done, "j"),
        "f*g normal-forms to j".into(),
    );
    c.check(
        "4.runtime",
        elapsed.as_secs_f64() < 1.0,
        format!("check and tables ran in {elapsed:?} (< 1 s)"),
    );
    c.finish();
}

#[test]
fn criterion_5_oracle_equivalence() {
    let mut c = Checker::new("5 (oracle agreement on random presentations)");
    let mut rng = XorShift::new(0xACCE55);
    let mut presentations = 0;
    let mut comparisons: u64 = 0;
    let mut disagreements = 0;
    let mut attempts = 0;

    while presentations < 50 && attempts < 10_000 {
        attempts += 1;
        let pres = random_presentation(&mut rng);
        let sys =
            RewriteSystem::new(pres.quiver.clone(), pres.order.clone(), pres.relations.clone())
                .unwrap();
        let report = buchberger(&sys, Limits { max_rules: 30, max_degree: 7, max_passes: 20 });
        if !report.is_complete() {
            continue;
        }
        let done = report.system();
        // rules with leading terms longer than the query degree can never
        // fire on degree-4 polynomials, so the span degree only needs the
        // witness slack of the short rules
        let excess = done
            .rules()
            .iter()
            .filter(|r| r.lt().len() <= 4)
            .map(|r| r.witness_degree().saturating_sub(r.lt().len()))
            .max()
            .unwrap_or(0);
        let degree = 4 + excess;
        if degree > 7 {
            continue;
        }

        let mut usable = false;
        for src in done.quiver().objects() {
            for tgt in done.quiver().objects() {
                let words = all_paths(done.quiver(), src, tgt, 4);
                if words.len() < 2 || words.len() > 500 {
                    continue;
                }
                if BlockSpan::estimated_products(
                    done.quiver(),
                    &pres.relations,
                    src,
                    tgt,
                    degree,
                ) > 3000
                {
                    continue;
                }
                let span = BlockSpan::build(
                    done.quiver(),
                    done.order(),
                    &pres.relations,
                    src,
                    tgt,
                    degree,
                );
                // partition by oracle residue and by engine normal form
                let residues: Vec<Vec<Scalar>> = words
                    .iter()
                    .map(|w| span.residue(&PathPolynomial::monomial(Scalar::one(), w.clone())))
                    .collect();
                let nfs: Vec<PathPolynomial> = words
                    .iter()
                    .map(|w| done.normal_form(&PathPolynomial::monomial(Scalar::one(), w.clone())))
                    .collect();
                for i in 0..words.len() {
                    for j in (i + 1)..words.len() {
                        let engine = done
                            .is_congruent(
                                &PathPolynomial::monomial(Scalar::one(), words[i].clone()),
                                &PathPolynomial::monomial(Scalar::one(), words[j].clone()),
                            )
                            .unwrap();
                        debug_assert_eq!(engine, nfs[i] == nfs[j]);
                        let oracle = residues[i] == residues[j];
                        comparisons += 1;
                        if engine != oracle {
                            disagreements += 1;
                        }
                    }
                }
                usable = true;
            }
        }
        if usable {
            presentations += 1;
        }
    }

    c.check(
        "5.presentations",
        presentations >= 50,
        format!("at least 50 completed random presentations were checked (got {presentations})"),
    );
    c.check(
        "5.agreement",
        disagreements == 0,
        format!("100% agreement on {comparisons} element pairs ({disagreements} disagreements)"),
    );
    c.finish();
}

#[test]
fn criterion_6_confluence_property() {
    let mut c = Checker::new("6 (strategy independence after completion)");
    let mut rng = XorShift::new(0xC0FFEE);
    let mut systems: Vec<RewriteSystem> = Vec::new();
    systems.push(buchberger(&hecke_system(), Limits::default()).system().clone());
    let ex52 = kancat_core::textio::parse_presentation(fixtures::FIVE_OBJECTS)
        .unwrap()
        .to_rewrite_system()
        .unwrap();
    systems.push(buchberger(&ex52, Limits::default()).system().clone());
    while systems.len() < 8 {
        let pres = random_presentation(&mut rng);
        let sys =
            RewriteSystem::new(pres.quiver.clone(), pres.order.clone(), pres.relations.clone())
                .unwrap();
        let report = buchberger(&sys, Limits { max_rules: 30, max_degree: 7, max_passes: 20 });
        if report.is_complete() && !report.system().rules().is_empty() {
            systems.push(report.system().clone());
        }
    }

    let mut agreed = 0;
    let mut tried = 0;
    'outer: while tried < 1000 {
        for done in &systems {
            let q = done.quiver();
            let src = ObjectId(rng.below(q.object_count()));
            let tgt = ObjectId(rng.below(q.object_count()));
            let pool = all_paths(q, src, tgt, 5);
            if pool.is_empty() {
                continue;
            }
            let n = 1 + rng.below(3.min(pool.len()));
            let terms: Vec<(Scalar, Path)> = (0..n)
                .map(|_| {
                    let k = [1i64, -1, 2, -3, 5][rng.below(5)];
                    (Scalar::integer(k), pool[rng.below(pool.len())].clone())
                })
                .collect();
            let Ok(f) = PathPolynomial::from_terms(done.order(), terms) else { continue };
            let deterministic = done.normal_form(&f);
            let mut chooser = XorShift::new(rng.next_u64());
            let randomized = done.normal_form_with(&f, |k| chooser.below(k));
            tried += 1;
            if deterministic == randomized {
                agreed += 1;
            }
            if tried >= 1000 {
                break 'outer;
            }
        }
    }
    c.check(
        "6.agreement",
        agreed == tried && tried >= 1000,
        format!("{agreed}/{tried} random polynomials reduce identically under both strategies"),
    );
    c.finish();
}

#[test]
fn criterion_7_action_functoriality() {
    let mut c = Checker::new("7 (functoriality of the induced action)");
    let file = kancat_core::textio::parse_presentation(fixtures::HECKE_Q).unwrap();
    let p = file.to_kan_presentation().unwrap();
    let res = kan_extension(&p, file.order.clone(), 10, Limits::default()).unwrap();
    let base = res.mixed.base();
    let q = base.quiver();
    let b = q.object_id("B").unwrap();
    let unit = TaggedPolynomial::monomial(
        Scalar::one(),
        TaggedTerm::new(TagId(0), Path::identity(b)),
    );

    let mut rng = XorShift::new(0xF0F0);
    let pool = all_paths(q, b, b, 4);
    let mut agreed = 0;
    for _ in 0..500 {
        let b1 = PathPolynomial::monomial(Scalar::one(), pool[rng.below(pool.len())].clone());
        let b2 = PathPolynomial::monomial(Scalar::one(), pool[rng.below(pool.len())].clone());
        let stepped = res.act(&res.act(&unit, &b1).unwrap(), &b2).unwrap();
        let direct = res.act(&unit, &b1.mul(&b2, base.order()).unwrap()).unwrap();
        if stepped == direct {
            agreed += 1;
        }
    }
    c.check(
        "7.agreement",
        agreed == 500,
        format!("{agreed}/500 word pairs act identically stepwise and directly"),
    );
    c.finish();
}

#[test]
fn criterion_8_nontermination_is_reported() {
    let mut c = Checker::new("8 (non-termination handling)");
    let file = kancat_core::textio::parse_presentation(fixtures::DIVERGENT).unwrap();
    let sys = file.to_rewrite_system().unwrap();
    let report = buchberger(&sys, Limits { max_rules: 10, ..Limits::default() });
    c.check("8.incomplete", !report.is_complete(), "report is Incomplete".into());
    c.check(
        "8.reason",
        report.reason() == Some(IncompleteReason::MaxRules(10)),
        format!("reason is the rule budget (got {:?})", report.reason()),
    );
    c.check(
        "8.populated",
        report.passes >= 1 && report.spolys_examined > 0 && !report.added.is_empty(),
        format!(
            "report is populated (passes {}, spolys {}, added {})",
            report.passes,
            report.spolys_examined,
            report.added.len()
        ),
    );
    c.check(
        "8.status-not-complete",
        !report.system().is_complete(),
        "the returned system is not marked complete".into(),
    );

    // the binary exits 1 and does not crash
    let data = format!("{}/tests/data/divergent.kan", env!("CARGO_MANIFEST_DIR"));
    let out = Command::new(env!("CARGO_BIN_EXE_kancat"))
        .args(["complete", &data, "--max-rules", "10"])
        .output()
        .unwrap();
    c.check(
        "8.exit-code",
        out.status.code() == Some(1),
        format!("CLI exits 1 (got {:?})", out.status.code()),
    );
    let text = String::from_utf8_lossy(&out.stdout);
    c.check(
        "8.no-silent-basis",
        text.contains("incomplete") && !text.contains("status: complete"),
        "output reports incompleteness, never a silently truncated basis".into(),
    );
    c.finish();
}
