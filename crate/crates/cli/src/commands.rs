use finlat_core::congruence::{
    congruence_lattice, is_congruence, is_congruence_representation, search_algebra, AlgebraSearch,
};
use finlat_core::constructions::{m_lattice, pentagon};
use finlat_core::diversity::is_reasonable;
use finlat_core::dot::hasse_dot;
use finlat_core::embed::{birkhoff_oracle, distributive_law_violation, find_sublattice_copy, is_distributive};
use finlat_core::format::JsonFormat;
use finlat_core::ramsey::{canonical_form_on, crt2_survey, find_canonical_subset};
use finlat_core::ranked::{enumerate_ranks, rank_report, Requirements};
use finlat_core::representation::{
    check_ranked_rep, cpp_certificate_tree, family_closure_check, is_0cpp, is_ncpp, is_representation,
    verify_pseudo_rep, ThresholdRankContext,
};
use finlat_core::{Budget, Element, EquivalenceRelation, EquivalencedLattice, Error, FiniteLattice, PairFunction};
use serde_json::json;

use crate::args::{AlgCommand, Command, Crt2Args, RepCommand, SurveyFormat};
use crate::error::{CliError, CliResult};
use crate::input::{self, Loaded};
use crate::report::AnalysisReport;

/// A report, plus raw text (DOT, CSV) that replaces it on output.
pub struct Outcome {
    pub report: AnalysisReport,
    pub text: Option<String>,
}

struct Ctx {
    report: AnalysisReport,
    budget: Budget,
}

impl Ctx {
    fn load(&mut self, source: &str) -> CliResult<Loaded> {
        let l = input::load(source)?;
        self.report.inputs.push(l.digest.clone());
        Ok(l)
    }

    fn lattice(&mut self, source: &str) -> CliResult<(Loaded, FiniteLattice)> {
        let l = self.load(source)?;
        let lat = input::lattice(&l, &self.budget)?;
        Ok((l, lat))
    }
}

pub fn run(command: &Command, report: AnalysisReport) -> CliResult<Outcome> {
    let budget = report.budget;
    let mut ctx = Ctx { report, budget };
    let text = match command {
        Command::Analyze { lattice } => analyze(&mut ctx, lattice)?,
        Command::Ranks {
            lattice,
            blass,
            gaifman,
        } => ranks(&mut ctx, lattice, *blass, *gaifman)?,
        Command::Rep(cmd) => rep(&mut ctx, cmd)?,
        Command::Crt2(args) => crt2(&mut ctx, args)?,
        Command::Alg(cmd) => alg(&mut ctx, cmd)?,
        Command::Reasonable { input } => reasonable(&mut ctx, input)?,
        Command::ExportDot { lattice, name } => {
            let (loaded, l) = ctx.lattice(lattice)?;
            Some(hasse_dot(&l, name.as_deref().unwrap_or(&loaded.name)))
        }
    };
    Ok(Outcome {
        report: ctx.report,
        text,
    })
}

fn analyze(ctx: &mut Ctx, source: &str) -> CliResult<Option<String>> {
    let (_, l) = ctx.lattice(source)?;
    let budget = ctx.budget;
    let r = &mut ctx.report;
    l.validate()?;
    r.verdict("lattice", true);
    r.witness("size", l.size());
    r.witness("join_irreducibles", l.join_irreducibles());
    let dist = r.timed("forbidden_sublattice", || is_distributive(&l));
    r.verdict("distributive", dist.distributive);
    if let Some((pattern, emb)) = &dist.witness {
        r.witness("forbidden_sublattice", json!({ "pattern": pattern, "map": emb.map }));
    }
    let identity = r.timed("identity", || distributive_law_violation(&l));
    r.verdict("distributive_identity", identity.is_none());
    if let Some(t) = identity {
        r.witness("identity_violation", t);
    }
    let birk = r.timed("birkhoff", || birkhoff_oracle(&l, &budget))?;
    r.verdict("birkhoff", birk.distributive);
    r.witness(
        "birkhoff",
        json!({ "join_irreducibles": birk.join_irreducibles, "downset_count": birk.downset_count }),
    );
    for (name, pattern) in [("m3", m_lattice(3)), ("n5", pentagon())] {
        let copy = find_sublattice_copy(&l, &pattern, &budget)?;
        r.verdict(&format!("contains_{name}"), copy.is_some());
        if let Some(emb) = copy {
            r.witness(&format!("{name}_copy"), emb.map);
        }
    }
    Ok(None)
}

fn ranks(ctx: &mut Ctx, source: &str, blass: bool, gaifman: bool) -> CliResult<Option<String>> {
    let (_, l) = ctx.lattice(source)?;
    let budget = ctx.budget;
    let r = &mut ctx.report;
    let found = r.timed("enumerate_ranks", || {
        enumerate_ranks(&l, Requirements { blass, gaifman }, &budget)
    })?;
    let rows = rank_report(&found);
    let mut ranksets: Vec<Vec<String>> = rows
        .iter()
        .map(|row| row.rankset.iter().map(|&x| l.label(x)).collect())
        .collect();
    ranksets.sort();
    ranksets.dedup();
    r.verdict("ranks_exist", !rows.is_empty());
    r.verdict(
        "rho_bottom_is_top",
        rows.iter().all(|row| row.rho[l.bottom()] == l.top()),
    );
    r.witness("count", rows.len());
    r.witness("labels", (0..l.size()).map(|x| l.label(x)).collect::<Vec<_>>());
    r.witness("ranksets", ranksets);
    r.witness("ranks", rows);
    Ok(None)
}

fn rep(ctx: &mut Ctx, cmd: &RepCommand) -> CliResult<Option<String>> {
    let budget = ctx.budget;
    match cmd {
        RepCommand::Verify { rep } => {
            let loaded = ctx.load(rep)?;
            let rep = input::representation(&loaded, &budget)?;
            let r = &mut ctx.report;
            let laws = verify_pseudo_rep(&rep);
            r.verdict("pseudo_representation", laws.is_valid());
            let inj = is_representation(&rep);
            r.verdict("representation", inj.holds);
            let zero = is_0cpp(&rep);
            r.verdict("cpp0", zero.holds);
            r.witness("degenerate", rep.is_degenerate());
            r.witness("ground", rep.ground_size());
            r.witness(
                "class_counts",
                rep.alphas()
                    .iter()
                    .map(EquivalenceRelation::num_classes)
                    .collect::<Vec<_>>(),
            );
            if !laws.is_valid() {
                r.witness("law_violations", laws.violations);
            }
            if let Some(w) = inj.witness {
                r.witness("collision", w);
            }
            if let Some(w) = zero.witness {
                r.witness("two_class_element", w);
            }
        }
        RepCommand::Cpp {
            rep,
            depth,
            certificate,
        } => {
            let loaded = ctx.load(rep)?;
            let rep = input::representation(&loaded, &budget)?;
            let r = &mut ctx.report;
            if *certificate {
                let tree = r.timed("cpp", || cpp_certificate_tree(&rep, *depth, &budget))?;
                r.verdict("cpp", tree.holds);
                r.witness("certificate", tree);
            } else {
                let v = r.timed("cpp", || is_ncpp(&rep, *depth, &budget))?;
                r.verdict("cpp", v.holds);
                r.witness("depth", v.depth);
                r.witness("degenerate", v.degenerate);
                if let Some(e) = v.two_class_element {
                    r.witness(
                        "two_class_element",
                        json!({ "element": e, "label": rep.lattice().label(e) }),
                    );
                }
                if let Some(t) = v.failing_theta {
                    r.witness("failing_theta", t);
                }
                if !v.choices.is_empty() {
                    r.witness("choices", v.choices);
                }
            }
        }
        RepCommand::Ranked { rep, rank, bound } => {
            let loaded = ctx.load(rep)?;
            let rep = input::representation(&loaded, &budget)?;
            let rho = elements(rep.lattice(), rank)?;
            let ctx_b = ThresholdRankContext::new(*bound)?;
            let v = check_ranked_rep(&rep, &rho, &ctx_b)?;
            let r = &mut ctx.report;
            r.verdict("ranked_representation", v.holds);
            r.witness("rho", rho);
            if let Some(w) = v.witness {
                r.witness("violation", w);
            }
        }
        RepCommand::FamilyClosure { family } => {
            let loaded = ctx.load(family)?;
            let fam = input::family(&loaded)?;
            let r = &mut ctx.report;
            let v = r.timed("family_closure", || family_closure_check(&fam, &budget))?;
            r.verdict("family_closure", v.holds);
            r.witness("members", fam.len());
            if !v.failures.is_empty() {
                r.witness("failures", v.failures);
            }
        }
    }
    Ok(None)
}

fn elements(l: &FiniteLattice, names: &[String]) -> CliResult<Vec<Element>> {
    if names.len() != l.size() {
        return Err(CliError::Usage(format!(
            "--rank has {} entries for a lattice of size {}",
            names.len(),
            l.size()
        )));
    }
    names
        .iter()
        .map(|s| {
            let s = s.trim();
            l.element_named(s)
                .or_else(|| s.parse().ok().filter(|&i| i < l.size()))
                .ok_or_else(|| CliError::Usage(format!("--rank: `{s}` names no element")))
        })
        .collect()
}

fn crt2(ctx: &mut Ctx, args: &Crt2Args) -> CliResult<Option<String>> {
    let budget = ctx.budget;
    if args.survey {
        let n = args.n.ok_or_else(|| CliError::Usage("--survey needs --n".into()))?;
        let r = &mut ctx.report;
        let survey = r.timed("survey", || crt2_survey(n, args.k, &budget))?;
        r.verdict("all_kernels_admit", survey.failing == 0);
        r.witness("kernels", survey.kernels);
        r.witness("admitting", survey.admitting);
        r.witness("failing_kernels", &survey.failing_kernels);
        if args.format == SurveyFormat::Csv {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["kernel_id", "admits_canonical", "witness", "form"])
                .map_err(|e| CliError::Usage(e.to_string()))?;
            for row in &survey.rows {
                let witness = row
                    .witness
                    .as_ref()
                    .map(|s| s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default();
                let form = row.form.map(|f| f.to_string()).unwrap_or_default();
                w.write_record([
                    row.kernel_id.to_string(),
                    row.admits_canonical.to_string(),
                    witness,
                    form,
                ])
                .map_err(|e| CliError::Usage(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
            return Ok(Some(String::from_utf8(bytes).expect("csv is utf-8")));
        }
        r.witness("rows", survey.rows);
        return Ok(None);
    }
    let source = args
        .function
        .as_deref()
        .ok_or_else(|| CliError::Usage("crt2 needs --survey or --function".into()))?;
    let loaded = ctx.load(source)?;
    let f: PairFunction = input::parse(&loaded)?;
    if let Some(n) = args.n.filter(|&n| n != f.n()) {
        return Err(CliError::Core(Error::InvalidParameter(format!(
            "--n {n} but the function is on a {}-set",
            f.n()
        ))));
    }
    let r = &mut ctx.report;
    let found = r.timed("search", || find_canonical_subset(&f, args.k, &budget))?;
    r.verdict("canonical_subset", found.is_some());
    if let Some((subset, forms)) = found {
        debug_assert_eq!(canonical_form_on(&f, &subset).ok().as_ref(), Some(&forms));
        r.witness("subset", subset);
        r.witness("forms", &forms.forms);
        r.witness("form", forms.summary());
    }
    Ok(None)
}

fn alg(ctx: &mut Ctx, cmd: &AlgCommand) -> CliResult<Option<String>> {
    let budget = ctx.budget;
    match cmd {
        AlgCommand::Cg { algebra } => {
            let loaded = ctx.load(algebra)?;
            let a = input::algebra(&loaded)?;
            let r = &mut ctx.report;
            let cg = r.timed("congruence_lattice", || congruence_lattice(&a, &budget))?;
            r.verdict("distributive", is_distributive(&cg.lattice).distributive);
            r.verdict("chain", cg.lattice.is_chain());
            r.witness("size", cg.lattice.size());
            r.witness("lattice", cg.lattice.to_doc());
            r.witness(
                "congruences",
                cg.congruences.iter().map(|c| c.to_doc()).collect::<Vec<_>>(),
            );
        }
        AlgCommand::Check {
            algebra,
            relation,
            lattice,
        } => {
            let loaded = ctx.load(algebra)?;
            let a = input::algebra(&loaded)?;
            if let Some(rel) = relation {
                let loaded = ctx.load(rel)?;
                let theta: EquivalenceRelation = input::parse(&loaded)?;
                let v = is_congruence(&theta, &a)?;
                ctx.report.verdict("congruence", v.holds);
                if let Some(w) = v.witness {
                    ctx.report.witness("violation", w);
                }
            } else if let Some(lat) = lattice {
                let (_, l) = ctx.lattice(lat)?;
                let v = is_congruence_representation(&l, &a, &budget)?;
                ctx.report.verdict("congruence_representation", v.holds);
                if let Some(iso) = v.witness {
                    ctx.report.witness("isomorphism_to_dual", iso.map);
                }
            }
        }
        AlgCommand::Search {
            lattice,
            max_carrier_size,
            max_unary,
            max_binary,
            dual,
        } => {
            let (_, l) = ctx.lattice(lattice)?;
            let opts = AlgebraSearch {
                max_carrier: *max_carrier_size,
                max_unary_ops: *max_unary,
                max_binary_ops: *max_binary,
                match_dual: *dual,
            };
            let r = &mut ctx.report;
            let found = r.timed("search", || search_algebra(&l, &opts, &budget))?;
            r.verdict("found", found.found.is_some());
            r.witness("algebras_tried", found.algebras_tried);
            r.witness("note", found.note);
            if let Some(a) = found.found {
                r.witness("algebra", a.to_doc());
            }
        }
    }
    Ok(None)
}

fn reasonable(ctx: &mut Ctx, source: &str) -> CliResult<Option<String>> {
    let budget = ctx.budget;
    let loaded = ctx.load(source)?;
    let el: EquivalencedLattice = input::parse(&loaded)?;
    let r = &mut ctx.report;
    let v = r.timed("reasonable", || is_reasonable(&el, &budget))?;
    r.verdict("reasonable", v.reasonable);
    if let Some(order) = v.order {
        r.witness("order", order);
    }
    if let Some(o) = v.obstruction {
        r.witness("obstruction", o);
    }
    Ok(None)
}
