//! Command dispatch for the `kancat` binary.
//!
//! Exit codes: 0 on success (including a decided negative verdict), 1 when
//! a computation is incomplete or undecided (completion budget exceeded,
//! candidate basis), 2 on input errors. User errors never produce a stack
//! trace.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use sha2::{Digest, Sha256};

use kancat_core::textio::{
    parse_polynomial, parse_presentation, serialize_basis, serialize_mixed_basis,
    PresentationFile, Provenance,
};
use kancat_core::{
    buchberger, complete_mixed, find_matches, is_groebner, is_groebner_mixed, s_polynomial,
    CompletionReport, Finiteness, KanError, Limits, MixedReport, MixedSystem,
    RewriteSystem, TagId,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNDECIDED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser)]
#[command(
    name = "kancat",
    about = "Noncommutative Groebner bases over path algebras: completion, normal forms, \
             irreducible terms, hom-set tables, and induced right congruences",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct LimitArgs {
    /// Completion stops with an incomplete report beyond this many rules
    #[arg(long, default_value_t = 1000)]
    max_rules: usize,
    /// Completion stops when a derived rule exceeds this degree
    #[arg(long, default_value_t = 50)]
    max_degree: usize,
    /// Completion stops after this many passes
    #[arg(long, default_value_t = 100)]
    max_passes: usize,
}

impl LimitArgs {
    fn limits(&self) -> Limits {
        Limits {
            max_rules: self.max_rules,
            max_degree: self.max_degree,
            max_passes: self.max_passes,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Complete a presentation into a Groebner basis
    Complete {
        /// Presentation file, or '-' for stdin
        file: String,
        #[command(flatten)]
        limits: LimitArgs,
        /// Write the resulting basis to this file
        #[arg(long)]
        out: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Test whether the presented relations already form a Groebner basis
    Check {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reduce a polynomial to normal form under the presented rules
    Reduce {
        file: String,
        /// Polynomial in the canonical syntax, e.g. "e2*e1*e2 - 2/9 e1"
        poly: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide congruence of two polynomials (completes the system first);
    /// on a presentation with an acting graph this decides the right
    /// congruence of the induced action
    Equal {
        file: String,
        p: String,
        q: String,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List irreducible terms of the completed system
    Irr {
        file: String,
        /// Source object (or tag name, for presentations with an acting graph)
        #[arg(long)]
        src: Option<String>,
        /// Target object
        #[arg(long)]
        tgt: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print hom-set tables with finiteness verdicts
    Table {
        file: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compute the induced action: completed mixed basis, tagged
    /// irreducible terms, and the images of the tagged units
    Kan {
        file: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

struct InputError(String);

impl From<std::io::Error> for InputError {
    fn from(e: std::io::Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<kancat_core::textio::TextError> for InputError {
    fn from(e: kancat_core::textio::TextError) -> Self {
        InputError(e.to_string())
    }
}

impl From<kancat_core::RewriteError> for InputError {
    fn from(e: kancat_core::RewriteError) -> Self {
        InputError(e.to_string())
    }
}

impl From<KanError> for InputError {
    fn from(e: KanError) -> Self {
        InputError(e.to_string())
    }
}

fn read_input(path: &str) -> Result<String, InputError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(fs::read_to_string(path).map_err(|e| InputError(format!("{path}: {e}")))?)
    }
}

/// Runs the CLI; output lines are pushed into `out`, diagnostics into `err`.
pub fn run(args: Vec<String>, out: &mut String, err: &mut String) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap renders its own help/usage; --help and --version exit 0
            let rendered = e.render().to_string();
            if e.exit_code() == 0 {
                out.push_str(&rendered);
                return EXIT_OK;
            }
            err.push_str(&rendered);
            return EXIT_INPUT;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(InputError(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_INPUT
        }
    }
}

fn load(file: &str) -> Result<(PresentationFile, String), InputError> {
    let text = read_input(file)?;
    let parsed = parse_presentation(&text)?;
    Ok((parsed, text))
}

fn sha256_hex(text: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(text.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn has_acting_graph(file: &PresentationFile) -> bool {
    file.gamma.is_some()
}

enum Completed {
    Plain(CompletionReport),
    Mixed(MixedReport),
}

fn complete_file(file: &PresentationFile, limits: Limits) -> Result<Completed, InputError> {
    if has_acting_graph(file) {
        let p = file.to_kan_presentation()?;
        let sys = kancat_core::build_system(&p, file.order.clone())?;
        Ok(Completed::Mixed(complete_mixed(&sys, limits)))
    } else {
        let sys = file.to_rewrite_system()?;
        Ok(Completed::Plain(buchberger(&sys, limits)))
    }
}

fn rule_strings(sys: &RewriteSystem) -> Vec<String> {
    sys.rules()
        .iter()
        .map(|r| r.poly().display(sys.quiver()).to_string())
        .collect()
}

fn eps_strings(sys: &MixedSystem) -> Vec<String> {
    sys.eps_rules()
        .iter()
        .map(|r| r.poly().display(sys.gamma(), sys.base().quiver()).to_string())
        .collect()
}

fn dispatch(command: Command, out: &mut String) -> Result<i32, InputError> {
    match command {
        Command::Complete { file, limits, out: out_file, format } => {
            let (parsed, text) = load(&file)?;
            let completed = complete_file(&parsed, limits.limits())?;
            let prov = Provenance {
                input_sha256: Some(sha256_hex(&text)),
                limits: limits.limits(),
            };
            let (code, reason, passes, spolys) = match &completed {
                Completed::Plain(r) => (
                    if r.is_complete() { EXIT_OK } else { EXIT_UNDECIDED },
                    r.reason().map(|x| x.to_string()),
                    r.passes,
                    r.spolys_examined,
                ),
                Completed::Mixed(r) => (
                    if r.is_complete() { EXIT_OK } else { EXIT_UNDECIDED },
                    r.reason().map(|x| x.to_string()),
                    r.passes,
                    r.spolys_examined,
                ),
            };
            match &completed {
                Completed::Plain(r) => {
                    let sys = r.system();
                    let added: Vec<String> = r
                        .added
                        .iter()
                        .map(|a| a.poly().display(sys.quiver()).to_string())
                        .collect();
                    if format == Format::Json {
                        let _ = writeln!(
                            out,
                            "{}",
                            json!({
                                "status": if r.is_complete() { "complete" } else { "incomplete" },
                                "reason": reason,
                                "passes": passes,
                                "spolys_examined": spolys,
                                "rules": rule_strings(sys),
                                "added": added,
                            })
                        );
                    } else {
                        match &reason {
                            None => {
                                let _ = writeln!(out, "status: complete");
                            }
                            Some(why) => {
                                let _ = writeln!(out, "status: incomplete ({why})");
                            }
                        }
                        let _ = writeln!(out, "passes: {passes}");
                        let _ = writeln!(out, "s-polynomials examined: {spolys}");
                        let _ = writeln!(out, "rules ({}):", sys.rules().len());
                        for rule in rule_strings(sys) {
                            let _ = writeln!(out, "  {rule}");
                        }
                        if !added.is_empty() {
                            let _ = writeln!(out, "added ({}):", added.len());
                            for a in &added {
                                let _ = writeln!(out, "  {a}");
                            }
                        }
                    }
                    if let Some(path) = out_file {
                        fs::write(&path, serialize_basis(sys, &prov))
                            .map_err(|e| InputError(format!("{path}: {e}")))?;
                    }
                }
                Completed::Mixed(r) => {
                    let sys = r.system();
                    let base = sys.base();
                    if format == Format::Json {
                        let _ = writeln!(
                            out,
                            "{}",
                            json!({
                                "status": if r.is_complete() { "complete" } else { "incomplete" },
                                "reason": reason,
                                "passes": passes,
                                "spolys_examined": spolys,
                                "rules": rule_strings(base),
                                "eps_rules": eps_strings(sys),
                            })
                        );
                    } else {
                        match &reason {
                            None => {
                                let _ = writeln!(out, "status: complete");
                            }
                            Some(why) => {
                                let _ = writeln!(out, "status: incomplete ({why})");
                            }
                        }
                        let _ = writeln!(out, "passes: {passes}");
                        let _ = writeln!(out, "s-polynomials examined: {spolys}");
                        let _ = writeln!(out, "rules ({}):", base.rules().len());
                        for rule in rule_strings(base) {
                            let _ = writeln!(out, "  {rule}");
                        }
                        let _ = writeln!(out, "eps-rules ({}):", sys.eps_rules().len());
                        for rule in eps_strings(sys) {
                            let _ = writeln!(out, "  {rule}");
                        }
                    }
                    if let Some(path) = out_file {
                        fs::write(&path, serialize_mixed_basis(sys, &prov))
                            .map_err(|e| InputError(format!("{path}: {e}")))?;
                    }
                }
            }
            Ok(code)
        }

        Command::Check { file, format } => {
            let (parsed, _) = load(&file)?;
            let (groebner, surviving) = if has_acting_graph(&parsed) {
                let p = parsed.to_kan_presentation()?;
                let mut sys = kancat_core::build_system(&p, parsed.order.clone())?;
                (is_groebner_mixed(&mut sys), None)
            } else {
                let mut sys = parsed.to_rewrite_system()?;
                let survivors = find_matches(&sys)
                    .iter()
                    .filter(|m| !sys.normal_form(&s_polynomial(&sys, m)).is_zero())
                    .count();
                (is_groebner(&mut sys), Some(survivors))
            };
            if format == Format::Json {
                let _ = writeln!(out, "{}", json!({ "groebner": groebner }));
            } else if groebner {
                let _ = writeln!(out, "already a Groebner basis");
            } else {
                match surviving {
                    Some(n) => {
                        let _ = writeln!(
                            out,
                            "not a Groebner basis ({n} S-polynomial(s) do not reduce to zero)"
                        );
                    }
                    None => {
                        let _ = writeln!(out, "not a Groebner basis");
                    }
                }
            }
            Ok(if groebner { EXIT_OK } else { EXIT_UNDECIDED })
        }

        Command::Reduce { file, poly, format } => {
            let (parsed, _) = load(&file)?;
            let sys = parsed.to_rewrite_system()?;
            let f = parse_polynomial(&poly, sys.quiver(), sys.order())?;
            let nf = sys.normal_form(&f);
            if format == Format::Json {
                let _ = writeln!(
                    out,
                    "{}",
                    json!({
                        "input": f.display(sys.quiver()).to_string(),
                        "normal_form": nf.display(sys.quiver()).to_string(),
                    })
                );
            } else {
                let _ = writeln!(out, "{}", nf.display(sys.quiver()));
            }
            Ok(EXIT_OK)
        }

        Command::Equal { file, p, q, limits, format } => {
            let (parsed, _) = load(&file)?;
            let verdict = match complete_file(&parsed, limits.limits())? {
                Completed::Plain(report) => {
                    if !report.is_complete() {
                        let _ = writeln!(
                            out,
                            "undecided: completion did not finish ({})",
                            report.reason().unwrap()
                        );
                        return Ok(EXIT_UNDECIDED);
                    }
                    let sys = report.system();
                    let fp = parse_polynomial(&p, sys.quiver(), sys.order())?;
                    let fq = parse_polynomial(&q, sys.quiver(), sys.order())?;
                    sys.is_congruent(&fp, &fq)
                        .map_err(|e| InputError(e.to_string()))?
                }
                Completed::Mixed(report) => {
                    if !report.is_complete() {
                        let _ = writeln!(
                            out,
                            "undecided: completion did not finish ({})",
                            report.reason().unwrap()
                        );
                        return Ok(EXIT_UNDECIDED);
                    }
                    let sys = report.system();
                    let base = sys.base();
                    let fp = parse_polynomial(&p, base.quiver(), base.order())?;
                    let fq = parse_polynomial(&q, base.quiver(), base.order())?;
                    let tag = sys.tag_for(fp.src())?;
                    if fp.src() != fq.src() || fp.tgt() != fq.tgt() {
                        return Err(InputError("polynomials are not parallel".into()));
                    }
                    let tp = sys.tag_polynomial(tag, &fp)?;
                    let tq = sys.tag_polynomial(tag, &fq)?;
                    sys.normal_form_tagged(&tp) == sys.normal_form_tagged(&tq)
                }
            };
            if format == Format::Json {
                let _ = writeln!(out, "{}", json!({ "congruent": verdict }));
            } else {
                let _ = writeln!(out, "{}", if verdict { "congruent" } else { "not congruent" });
            }
            Ok(EXIT_OK)
        }

        Command::Irr { file, src, tgt, max_len, limits, format } => {
            let (parsed, _) = load(&file)?;
            match complete_file(&parsed, limits.limits())? {
                Completed::Plain(report) => {
                    if !report.is_complete() {
                        let _ = writeln!(
                            out,
                            "undecided: completion did not finish ({})",
                            report.reason().unwrap()
                        );
                        return Ok(EXIT_UNDECIDED);
                    }
                    let sys = report.system();
                    let src = src
                        .map(|s| sys.quiver().object_id(&s))
                        .transpose()
                        .map_err(|e| InputError(e.to_string()))?;
                    let tgt = tgt
                        .map(|s| sys.quiver().object_id(&s))
                        .transpose()
                        .map_err(|e| InputError(e.to_string()))?;
                    let terms = kancat_core::irreducible_paths(sys, src, tgt, max_len)
                        .expect("system is complete");
                    if format == Format::Json {
                        let names: Vec<String> = terms
                            .iter()
                            .map(|p| p.display(sys.quiver()).to_string())
                            .collect();
                        let _ = writeln!(out, "{}", json!({ "terms": names }));
                    } else {
                        for p in &terms {
                            let _ = writeln!(out, "{}", p.display(sys.quiver()));
                        }
                    }
                }
                Completed::Mixed(report) => {
                    if !report.is_complete() {
                        let _ = writeln!(
                            out,
                            "undecided: completion did not finish ({})",
                            report.reason().unwrap()
                        );
                        return Ok(EXIT_UNDECIDED);
                    }
                    let sys = report.system();
                    let tag = src
                        .map(|s| sys.gamma().object_id(&s).map(|o| TagId(o.0)))
                        .transpose()
                        .map_err(|e| InputError(e.to_string()))?;
                    let tgt = tgt
                        .map(|s| sys.base().quiver().object_id(&s))
                        .transpose()
                        .map_err(|e| InputError(e.to_string()))?;
                    let terms = kancat_core::irreducible_tagged(sys, tag, tgt, max_len)
                        .expect("system is complete");
                    if format == Format::Json {
                        let names: Vec<String> = terms
                            .iter()
                            .map(|t| t.display(sys.gamma(), sys.base().quiver()).to_string())
                            .collect();
                        let _ = writeln!(out, "{}", json!({ "terms": names }));
                    } else {
                        for t in &terms {
                            let _ = writeln!(out, "{}", t.display(sys.gamma(), sys.base().quiver()));
                        }
                    }
                }
            }
            Ok(EXIT_OK)
        }

        Command::Table { file, max_len, limits, format } => {
            let (parsed, _) = load(&file)?;
            let sys = parsed.to_rewrite_system()?;
            let report = buchberger(&sys, limits.limits());
            if !report.is_complete() {
                let _ = writeln!(
                    out,
                    "undecided: completion did not finish ({})",
                    report.reason().unwrap()
                );
                return Ok(EXIT_UNDECIDED);
            }
            let done = report.system();
            let table = kancat_core::hom_table(done, max_len).expect("system is complete");
            let q = done.quiver();
            if format == Format::Json {
                let entries: Vec<serde_json::Value> = table
                    .entries
                    .iter()
                    .map(|e| {
                        let paths: Vec<String> =
                            e.paths.iter().map(|p| p.display(q).to_string()).collect();
                        match &e.finiteness {
                            Finiteness::Finite(n) => json!({
                                "src": q.object_name(e.src),
                                "tgt": q.object_name(e.tgt),
                                "paths": paths,
                                "finite": true,
                                "count": n,
                            }),
                            Finiteness::Infinite(w) => json!({
                                "src": q.object_name(e.src),
                                "tgt": q.object_name(e.tgt),
                                "paths": paths,
                                "finite": false,
                                "witness": w.display(q).to_string(),
                            }),
                        }
                    })
                    .collect();
                let _ = writeln!(out, "{}", json!({ "max_len": max_len, "entries": entries }));
            } else {
                for e in &table.entries {
                    // identity-only and empty hom-sets are omitted, matching
                    // the usual tabular presentation
                    let identity_only = e.src == e.tgt
                        && e.paths.len() == 1
                        && e.paths[0].is_identity()
                        && e.finiteness == Finiteness::Finite(1);
                    if e.paths.is_empty() || identity_only {
                        continue;
                    }
                    let verdict = match &e.finiteness {
                        Finiteness::Finite(n) => format!("finite, {n}"),
                        Finiteness::Infinite(w) => {
                            format!("infinite, witness {}", w.display(q))
                        }
                    };
                    let _ = writeln!(
                        out,
                        "{} -> {} [{verdict}]:",
                        q.object_name(e.src),
                        q.object_name(e.tgt)
                    );
                    for p in &e.paths {
                        let _ = writeln!(out, "  {}", p.display(q));
                    }
                }
            }
            Ok(EXIT_OK)
        }

        Command::Kan { file, max_len, limits, format } => {
            let (parsed, _) = load(&file)?;
            let p = parsed.to_kan_presentation()?;
            match kancat_core::kan_extension(&p, parsed.order.clone(), max_len, limits.limits())
            {
                Err(KanError::Incomplete(reason)) => {
                    let _ = writeln!(out, "undecided: completion did not finish ({reason})");
                    Ok(EXIT_UNDECIDED)
                }
                Err(e) => Err(InputError(e.to_string())),
                Ok(res) => {
                    let gamma = res.mixed.gamma();
                    let delta = res.mixed.base().quiver();
                    let basis: Vec<String> = res
                        .basis
                        .iter()
                        .map(|t| t.display(gamma, delta).to_string())
                        .collect();
                    let eps: Vec<(String, String)> = res
                        .eps
                        .iter()
                        .map(|(tag, nf)| {
                            (
                                gamma.object_name(kancat_core::ObjectId(tag.0)).to_string(),
                                nf.display(gamma, delta).to_string(),
                            )
                        })
                        .collect();
                    if format == Format::Json {
                        let eps_json: serde_json::Map<String, serde_json::Value> = eps
                            .iter()
                            .map(|(k, v)| (k.clone(), json!(v)))
                            .collect();
                        let _ = writeln!(
                            out,
                            "{}",
                            json!({
                                "finite": res.finite,
                                "exhaustive": res.exhaustive,
                                "basis": basis,
                                "eps": eps_json,
                                "rules": rule_strings(res.mixed.base()),
                                "eps_rules": eps_strings(&res.mixed),
                            })
                        );
                    } else {
                        let flavor = match (res.finite, res.exhaustive) {
                            (true, true) => "finite, exhaustive".to_string(),
                            (true, false) => format!("finite, truncated at {max_len}"),
                            _ => format!("infinite, truncated at {max_len}"),
                        };
                        let _ = writeln!(out, "basis ({}) [{flavor}]:", basis.len());
                        for b in &basis {
                            let _ = writeln!(out, "  {b}");
                        }
                        let _ = writeln!(out, "eps:");
                        for (tag, nf) in &eps {
                            let _ = writeln!(out, "  {tag} -> {nf}");
                        }
                        let _ = writeln!(
                            out,
                            "mixed basis ({} rules + {} eps-rules):",
                            res.mixed.base().rules().len(),
                            res.mixed.eps_rules().len()
                        );
                        for rule in rule_strings(res.mixed.base()) {
                            let _ = writeln!(out, "  {rule}");
                        }
                        for rule in eps_strings(&res.mixed) {
                            let _ = writeln!(out, "  {rule}");
                        }
                    }
                    Ok(EXIT_OK)
                }
            }
        }
    }
}
