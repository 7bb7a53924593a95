//! Subcommand implementations.

use modalprob_core::correspondence::{self, possibility_matches_significance};
use modalprob_core::measure::{is_reduction, theorem1_oracle};
use modalprob_core::multinomial::{belief_closure, simulate};
use modalprob_core::possibility::hacking_mismatch;
use modalprob_core::rational::{self, to_f64};
use modalprob_core::{
    bucket_decomposition, check_correspondence, desideratum1_demo, refine_to_correspondence,
    theorem3_oracle, EnumerationCap, Error, EventSet, PossibilitySpace, ProbabilityMeasure,
    Rational, SignificanceClass,
};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{self, Model, ModelError};
use crate::report::{verdict, yes_no, Report};
use crate::spec::SpecFile;

/// Fields with more atoms than this skip the checks that are quadratic in
/// the number of events (every significant `S0` against every sub-event).
pub const EXHAUSTIVE_ATOM_LIMIT: usize = 12;

/// A subcommand with its argument.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    /// Axiom checks on the measure.
    Validate,
    /// Probabilistic and modal class of an event.
    Classify(String),
    /// Conditional space given an event.
    Condition(String),
    /// Axiom of correspondence.
    Correspondence,
    /// Exhaustive oracles, bucket bound and a randomized campaign.
    Theorems,
    /// Refinement on the significant atoms.
    Reduce,
    /// Seeded multinomial simulation.
    Simulate,
    /// Belief closure.
    Beliefs,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Options {
    /// Emit `section.key=value` records.
    pub machine: bool,
    /// Overrides the spec seed.
    pub seed: Option<u64>,
    /// Campaign size for `theorems`.
    pub trials: u64,
    /// Enumeration cap.
    pub cap: EnumerationCap,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            machine: false,
            seed: None,
            trials: 1000,
            cap: EnumerationCap::DEFAULT,
        }
    }
}

/// A command result: the report and whether everything passed.
pub type CommandResult = Result<(Report, bool), ModelError>;

/// Dispatches one subcommand on a parsed spec.
pub fn execute(cmd: &Command, spec: &SpecFile, opts: &Options) -> CommandResult {
    match cmd {
        Command::Validate => validate(spec),
        Command::Classify(name) => classify(spec, name),
        Command::Condition(name) => condition(spec, name),
        Command::Correspondence => correspondence_cmd(spec, opts),
        Command::Theorems => theorems(spec, opts),
        Command::Reduce => reduce(spec, opts),
        Command::Simulate => simulate_cmd(spec, opts),
        Command::Beliefs => beliefs(spec),
    }
}

fn or_none(s: String) -> String {
    if s.is_empty() {
        "none".to_string()
    } else {
        s
    }
}

fn fmt(r: &Rational) -> String {
    rational::format(r)
}

fn validate_section(report: &mut Report, model: &Model) -> Option<ProbabilityMeasure> {
    let result = model.measure();
    let s = report.section("validate");
    s.put("outcomes", model.space.labels().join(" "));
    s.put("atoms", model.field.atom_count());
    for (i, (atom, w)) in model.field.atoms().iter().zip(&model.weights).enumerate() {
        s.put(
            format!("weight.{}", i + 1),
            format!("{} = {}", model.space.show(atom), fmt(w)),
        );
    }
    let sum: Rational = model.weights.iter().sum();
    s.put("sum", fmt(&sum));
    match result {
        Ok(m) => {
            s.put("status", "PASS");
            Some(m)
        }
        Err(r) => {
            s.put("status", "FAIL");
            for (i, v) in r.violations.iter().enumerate() {
                s.put(format!("violation.{}", i + 1), v);
            }
            None
        }
    }
}

/// Builds the model and measure; on axiom failure the report explains why.
fn load(
    spec: &SpecFile,
    report: &mut Report,
) -> Result<Option<(Model, ProbabilityMeasure)>, ModelError> {
    let model = Model::build(spec)?;
    match model.measure() {
        Ok(m) => Ok(Some((model, m))),
        Err(_) => {
            validate_section(report, &model);
            Ok(None)
        }
    }
}

fn validate(spec: &SpecFile) -> CommandResult {
    let model = Model::build(spec)?;
    let mut report = Report::default();
    let ok = validate_section(&mut report, &model).is_some();
    Ok((report, ok))
}

fn short_class(c: SignificanceClass) -> &'static str {
    match c {
        SignificanceClass::Insignificant => "insignificant",
        SignificanceClass::SignificantNotAlmostSure => "significant",
        SignificanceClass::AlmostSure => "almost sure",
    }
}

fn classify(spec: &SpecFile, name: &str) -> CommandResult {
    let mut report = Report::default();
    let Some((model, measure)) = load(spec, &mut report)? else {
        return Ok((report, false));
    };
    let event = model.event(spec, name)?;
    let w = model::possibility(spec, &model.space)?;
    let modal = w.classify_modal(&event);
    let s = report.section("classify");
    s.put("event", format!("{name} = {}", model.space.show(&event)));
    let ok = match measure.prob(&event) {
        Ok(p) => {
            let class = SignificanceClass::of(&p);
            s.put("measurable", "yes");
            s.put("probability", fmt(&p));
            s.put("significance", class);
            s.put("modal", modal);
            let possible = if modal.possible {
                "possible"
            } else {
                "impossible"
            };
            s.put("summary", format!("{possible}, {}", short_class(class)));
            true
        }
        Err(_) => {
            s.put("measurable", "no");
            s.put("probability", "undefined (not a union of atoms)");
            s.put("modal", modal);
            false
        }
    };
    Ok((report, ok))
}

fn condition(spec: &SpecFile, name: &str) -> CommandResult {
    let mut report = Report::default();
    let Some((model, measure)) = load(spec, &mut report)? else {
        return Ok((report, false));
    };
    let event = model.event(spec, name)?;
    let w = model::possibility(spec, &model.space)?;
    let s = report.section("condition");
    s.put("event", format!("{name} = {}", model.space.show(&event)));
    let p = match measure.prob(&event) {
        Ok(p) => p,
        Err(e) => {
            s.put("status", "FAIL").put("error", e);
            return Ok((report, false));
        }
    };
    s.put("probability", fmt(&p));
    match measure.condition(&event) {
        Ok(c) => {
            s.put("space", c.space().labels().join(" "));
            for (i, atom) in c.field().atoms().iter().enumerate() {
                s.put(
                    format!("weight.{}", i + 1),
                    format!("{} = {}", c.space().show(atom), fmt(c.atom_weight(i))),
                );
            }
            let restricted = w.restrict(c.space());
            s.put("possible", c.space().show(restricted.possible()));
            s.put("status", "PASS");
            Ok((report, true))
        }
        Err(e) => {
            s.put("status", "FAIL").put("error", e);
            Ok((report, false))
        }
    }
}

fn correspondence_cmd(spec: &SpecFile, opts: &Options) -> CommandResult {
    let mut report = Report::default();
    let Some((model, measure)) = load(spec, &mut report)? else {
        return Ok((report, false));
    };
    let w = model::possibility(spec, &model.space)?;
    let r = check_correspondence(&w, &measure, opts.cap)?;
    let s = report.section("correspondence");
    s.put("possible", model.space.show(w.possible()));
    s.put("form", r.form_used);
    if let Ok(p) = measure.prob(w.possible()) {
        s.put("P(W)", fmt(&p));
    }
    s.put("holds", yes_no(r.holds));
    s.put("witnesses", r.witness_count);
    for (i, e) in r.witnesses.iter().enumerate() {
        let p = measure.prob(e)?;
        s.put(
            format!("witness.{}", i + 1),
            format!("{} P = {}", model.space.show(e), fmt(&p)),
        );
    }
    let mismatch = hacking_mismatch(&w, &measure, opts.cap)?;
    let s = report.section("conditional-possibility");
    match mismatch {
        Some(m) => {
            s.put("mismatch", "found");
            s.put(
                "event",
                format!("{} P = {}", model.space.show(&m.event), fmt(&m.prob)),
            );
            s.put("given", model.space.show(&m.condition));
            s.put("possibility given", 0);
        }
        None => {
            s.put("mismatch", "none");
        }
    }
    Ok((report, r.holds))
}

fn describe_result(ok: bool, checked: u64) -> String {
    format!("{} ({checked} checked)", verdict(ok))
}

fn theorems(spec: &SpecFile, opts: &Options) -> CommandResult {
    let mut report = Report::default();
    let Some((model, measure)) = load(spec, &mut report)? else {
        return Ok((report, false));
    };
    let w = model::possibility(spec, &model.space)?;
    let space = &model.space;
    let mut all_ok = true;
    measure.field().check_cap(opts.cap)?;
    let atoms = measure.field().atom_count();
    let small = atoms <= EXHAUSTIVE_ATOM_LIMIT;

    // Reductions and almost sure events.
    let s = report.section("reduction");
    if small {
        let (mut checked, mut reductions, mut bad) = (0u64, 0u64, None);
        for (mask, s0) in measure.field().events(opts.cap)? {
            if measure.prob_of_mask(mask).is_zero() {
                continue;
            }
            checked += 1;
            let t = theorem1_oracle(&measure, &s0, opts.cap)?;
            reductions += u64::from(t.reduction);
            if !t.consistent() && bad.is_none() {
                bad = Some(s0);
            }
        }
        s.put("significant S0", checked);
        s.put("reductions", reductions);
        s.put("status", describe_result(bad.is_none(), checked));
        if let Some(e) = bad {
            s.put("counterexample", space.show(&e));
            all_ok = false;
        }
    } else {
        s.put(
            "status",
            format!("SKIPPED ({atoms} atoms, limit {EXHAUSTIVE_ATOM_LIMIT})"),
        );
    }

    // Modal classification against the set definitions.
    let s = report.section("modal");
    let mut checked = 0u64;
    let mut bad = None;
    for (_, e) in measure.field().events(opts.cap)? {
        checked += 1;
        if !modal_laws_hold(&w, &e) && bad.is_none() {
            bad = Some(e);
        }
    }
    s.put("status", describe_result(bad.is_none(), checked));
    if let Some(e) = bad {
        s.put("counterexample", space.show(&e));
        all_ok = false;
    }

    let t3 = theorem3_oracle(&w, &measure, opts.cap)?;
    let s = report.section("consequences");
    s.put("axiom", yes_no(t3.axiom.holds));
    match &t3.clauses {
        Some((a, b)) => {
            s.put(
                "certain => almost sure",
                describe_result(a.passed(), a.checked),
            );
            s.put(
                "significant => possible",
                describe_result(b.passed(), b.checked),
            );
            all_ok &= t3.passed();
        }
        None => {
            s.put("status", "not applicable (axiom fails)");
            s.put("witnesses", t3.axiom.witness_count);
        }
    }

    let s = report.section("buckets");
    match bucket_decomposition(&measure, measure.field().atoms()) {
        Ok(b) => {
            for (k, cells) in &b.buckets {
                let names: Vec<&str> = cells
                    .iter()
                    .map(|&c| model.atom_names[c].as_str())
                    .collect();
                s.put(format!("bucket.{k}"), names.join(" "));
            }
            let zeros: Vec<&str> = b
                .zero_cells
                .iter()
                .map(|&c| model.atom_names[c].as_str())
                .collect();
            s.put("zero cells", or_none(zeros.join(" ")));
            s.put("significant cells", b.significant_count());
            s.put("bound", "PASS");
        }
        Err(e) => {
            s.put("bound", "FAIL").put("error", e);
            all_ok = false;
        }
    }

    let s = report.section("refinement");
    match refine_to_correspondence(&w, &measure, opts.cap) {
        Ok(refined) => {
            let eq =
                possibility_matches_significance(&refined.possibility, &refined.measure, opts.cap)?;
            let red = is_reduction(&refined.measure, &measure, opts.cap)?;
            s.put("removed", space.show(&refined.removed));
            s.put(
                "possible ⇔ significant",
                verdict(eq.possible_vs_significant.is_none()),
            );
            s.put(
                "certain ⇔ almost sure",
                verdict(eq.certain_vs_almost_sure.is_none()),
            );
            s.put("reduction", verdict(red.is_reduction()));
            all_ok &= eq.passed() && red.is_reduction();
        }
        Err(e @ (Error::PossibilityNotMeasurable | Error::CorrespondenceFails { .. })) => {
            s.put("status", format!("not applicable ({e})"));
        }
        Err(e) => return Err(e.into()),
    }

    let s = report.section("exclusion");
    if small {
        match desideratum1_demo(&w, &measure, opts.cap) {
            Ok(d) => {
                let impossible = d.exclusions.iter().filter(|x| x.impossible).count();
                let contrast: Vec<String> = d
                    .exclusions
                    .iter()
                    .filter(|x| !x.impossible && !x.reduction)
                    .map(|x| space.show(&x.excluded))
                    .collect();
                s.put("impossible exclusions", impossible);
                s.put("all reductions", verdict(d.holds()));
                s.put(
                    "non-reductions among possible exclusions",
                    or_none(contrast.join(" ")),
                );
                all_ok &= d.holds();
            }
            Err(e @ (Error::PossibilityNotMeasurable | Error::CorrespondenceFails { .. })) => {
                s.put("status", format!("not applicable ({e})"));
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        s.put(
            "status",
            format!("SKIPPED ({atoms} atoms, limit {EXHAUSTIVE_ATOM_LIMIT})"),
        );
    }

    let seed = campaign_seed(spec, opts);
    let s = report.section("campaign");
    s.put("seed", seed);
    if small {
        let c = campaign(&model, seed, opts.trials, opts.cap)?;
        s.put("trials", opts.trials);
        s.put("axiom held", c.axiom_held);
        s.put("refined", c.refined);
        s.put("failures", c.failures);
        if let Some(f) = &c.first_failure {
            s.put("first failure", f);
        }
        s.put("status", verdict(c.failures == 0));
        all_ok &= c.failures == 0;
    } else {
        s.put(
            "status",
            format!("SKIPPED ({atoms} atoms, limit {EXHAUSTIVE_ATOM_LIMIT})"),
        );
    }
    Ok((report, all_ok))
}

fn modal_laws_hold(w: &PossibilitySpace, e: &EventSet) -> bool {
    let m = w.classify_modal(e);
    let dual = w.classify_modal(&e.complement());
    m.possible == e.intersects(w.possible())
        && m.certain == w.possible().is_subset(e)
        && m.certain == !dual.possible
        && u8::from(m.possible) == w.possibility(e)
}

fn campaign_seed(spec: &SpecFile, opts: &Options) -> u64 {
    opts.seed
        .or_else(|| spec.multinomial.as_ref().map(|m| m.seed))
        .unwrap_or(0)
}

/// Tally of the randomized campaign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Campaign {
    /// Trials whose random `W` satisfied the axiom.
    pub axiom_held: u64,
    /// Trials where the refinement applied.
    pub refined: u64,
    /// Trials with at least one failed check.
    pub failures: u64,
    /// Description of the first failure.
    pub first_failure: Option<String>,
}

/// Random measures on the spec's field and random `W`, checked against every oracle.
///
/// Trial `i` uses its own generator seeded with `seed + i`, so any trial can
/// be replayed alone.
pub fn campaign(
    model: &Model,
    seed: u64,
    trials: u64,
    cap: EnumerationCap,
) -> Result<Campaign, ModelError> {
    let field = &model.field;
    let n = model.space.len();
    let mut c = Campaign {
        axiom_held: 0,
        refined: 0,
        failures: 0,
        first_failure: None,
    };
    for i in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
        let mut raw: Vec<i64> = (0..field.atom_count())
            .map(|_| rng.random_range(0..4))
            .collect();
        if raw.iter().all(|&x| x == 0) {
            let j = rng.random_range(0..raw.len());
            raw[j] = 1;
        }
        let total: i64 = raw.iter().sum();
        let weights = raw.iter().map(|&x| rational::ratio(x, total)).collect();
        let measure = ProbabilityMeasure::validate(field.clone(), weights)?;
        let possible = EventSet::from_indices(n, (0..n).filter(|_| rng.random_bool(0.6)));
        let w = PossibilitySpace::new(model.space.clone(), possible)?;

        let failure = trial_failure(&measure, &w, &mut rng, cap, &mut c)?;
        if let Some(f) = failure {
            c.failures += 1;
            if c.first_failure.is_none() {
                c.first_failure = Some(format!("trial {i}: {f}"));
            }
        }
    }
    Ok(c)
}

fn trial_failure(
    measure: &ProbabilityMeasure,
    w: &PossibilitySpace,
    rng: &mut ChaCha8Rng,
    cap: EnumerationCap,
    tally: &mut Campaign,
) -> Result<Option<&'static str>, ModelError> {
    let field = measure.field();
    // One random significant S0.
    let support = measure.significant_atom_mask();
    let mask = loop {
        let m = rng.random_range(1..(1u64 << field.atom_count()));
        if m & support != 0 {
            break m;
        }
    };
    if !theorem1_oracle(measure, &field.union_of_mask(mask), cap)?.consistent() {
        return Ok(Some("reduction clauses disagree"));
    }
    for (_, e) in field.events(cap)? {
        if !modal_laws_hold(w, &e) {
            return Ok(Some("modal classification"));
        }
    }
    let t3 = theorem3_oracle(w, measure, cap)?;
    if t3.axiom.holds {
        tally.axiom_held += 1;
        if !t3.passed() {
            return Ok(Some("consequence clause"));
        }
    } else if t3.axiom.witnesses.is_empty() || t3.axiom.witness_count == 0 {
        return Ok(Some("axiom fails without witness"));
    }
    if correspondence::possibility_space_almost_sure(w, measure)
        .is_some_and(|p| p != t3.axiom.holds)
    {
        return Ok(Some("axiom forms disagree"));
    }
    if bucket_decomposition(measure, field.atoms()).is_err() {
        return Ok(Some("bucket bound"));
    }
    match refine_to_correspondence(w, measure, cap) {
        Ok(r) => {
            tally.refined += 1;
            let eq = possibility_matches_significance(&r.possibility, &r.measure, cap)?;
            if !eq.passed() || !is_reduction(&r.measure, measure, cap)?.is_reduction() {
                return Ok(Some("refinement"));
            }
        }
        Err(Error::PossibilityNotMeasurable | Error::CorrespondenceFails { .. }) => {}
        Err(e) => return Err(e.into()),
    }
    Ok(None)
}

fn reduce(spec: &SpecFile, opts: &Options) -> CommandResult {
    let mut report = Report::default();
    let Some((model, measure)) = load(spec, &mut report)? else {
        return Ok((report, false));
    };
    let w = model::possibility(spec, &model.space)?;
    match refine_to_correspondence(&w, &measure, opts.cap) {
        Ok(r) => {
            let eq = possibility_matches_significance(&r.possibility, &r.measure, opts.cap)?;
            let red = is_reduction(&r.measure, &measure, opts.cap)?;
            let sub = r.measure.space();
            let s = report.section("reduce");
            s.put("removed", model.space.show(&r.removed));
            s.put("space", sub.labels().join(" "));
            for (i, atom) in r.measure.field().atoms().iter().enumerate() {
                s.put(
                    format!("weight.{}", i + 1),
                    format!("{} = {}", sub.show(atom), fmt(r.measure.atom_weight(i))),
                );
            }
            s.put("possible", sub.show(r.possibility.possible()));
            s.put(
                "possible ⇔ significant",
                verdict(eq.possible_vs_significant.is_none()),
            );
            s.put(
                "certain ⇔ almost sure",
                verdict(eq.certain_vs_almost_sure.is_none()),
            );
            s.put("reduction of original", verdict(red.is_reduction()));
            Ok((report, eq.passed() && red.is_reduction()))
        }
        Err(e @ Error::PossibilityNotMeasurable) => {
            report
                .section("reduce")
                .put("status", "FAIL")
                .put("error", e);
            Ok((report, false))
        }
        Err(e @ Error::CorrespondenceFails { .. }) => {
            let (witnesses, _) =
                correspondence::impossible_significant_events(&w, &measure, opts.cap)?;
            let s = report.section("reduce");
            s.put("status", "FAIL").put("error", e);
            for (i, x) in witnesses.iter().enumerate() {
                s.put(format!("witness.{}", i + 1), model.space.show(x));
            }
            Ok((report, false))
        }
        Err(e) => Err(e.into()),
    }
}

fn simulate_cmd(spec: &SpecFile, opts: &Options) -> CommandResult {
    let block = spec
        .multinomial
        .as_ref()
        .ok_or(ModelError::Missing("multinomial"))?;
    let seed = opts.seed.unwrap_or(block.seed);
    let mut report = Report::default();
    let s = report.section("simulate");
    s.put("seed", seed);
    s.put("m", block.m);
    s.put(
        "theta",
        block.theta.iter().map(fmt).collect::<Vec<_>>().join(","),
    );
    s.put("k", block.k);
    let theta = match model::theta(block) {
        Ok(t) => t,
        Err(e) => {
            s.put("status", "FAIL").put("error", e);
            return Ok((report, false));
        }
    };
    let sim = match simulate(&theta, block.k, seed) {
        Ok(sim) => sim,
        Err(e) => {
            s.put("status", "FAIL").put("error", e);
            return Ok((report, false));
        }
    };
    let last = sim.table.last().expect("k >= 1");
    let counts = sim.sequence.count_vector().counts;
    s.put(
        "counts",
        counts
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(","),
    );
    s.put(
        "estimate",
        last.iter()
            .map(|x| format!("{x:.6}"))
            .collect::<Vec<_>>()
            .join(","),
    );
    let err = last
        .iter()
        .zip(theta.components())
        .map(|(e, t)| (e - to_f64(t)).abs())
        .fold(0.0, f64::max);
    s.put("max abs error", format!("{err:.6}"));
    let sigma = theta
        .components()
        .iter()
        .map(|t| {
            let t = to_f64(t);
            3.0 * (t * (1.0 - t) / block.k as f64).sqrt()
        })
        .fold(0.0, f64::max);
    s.put("3 sigma", format!("{sigma:.6}"));
    let table = report.section("table");
    table.raw = sim
        .table
        .to_delimited(',')
        .lines()
        .map(str::to_string)
        .collect();
    Ok((report, true))
}

fn beliefs(spec: &SpecFile) -> CommandResult {
    let (state, a) = model::beliefs(spec)?;
    let closure = belief_closure(&state);
    let mut report = Report::default();
    let s = report.section("beliefs");
    s.put("category", &a);
    s.put("exchangeable", yes_no(state.exchangeable));
    let render = |set: &mut dyn Iterator<Item = String>| set.collect::<Vec<_>>().join(" ");
    s.put(
        "given",
        or_none(render(&mut state.propositions.iter().map(|p| p.render(&a)))),
    );
    for (i, d) in closure.trace.iter().enumerate() {
        s.put(
            format!("derived.{}", i + 1),
            format!(
                "{}: {} => {}",
                d.rule,
                d.premise.render(&a),
                d.conclusion.render(&a)
            ),
        );
    }
    s.put(
        "closure",
        or_none(render(
            &mut closure.state.propositions.iter().map(|p| p.render(&a)),
        )),
    );
    for (i, (p, q)) in closure.contradictions.iter().enumerate() {
        s.put(
            format!("contradiction.{}", i + 1),
            format!("{} vs {}", p.render(&a), q.render(&a)),
        );
    }
    let ok = !closure.is_contradictory();
    s.put("status", if ok { "CONSISTENT" } else { "CONTRADICTION" });
    Ok((report, ok))
}
