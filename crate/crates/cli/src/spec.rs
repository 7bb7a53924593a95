//! The line-oriented spec-file language.
//!
//! ```text
//! # comments run to end of line
//! outcomes: s1 s2 s3
//! event Tail = s2 s3
//! measure: s1=1/2 Tail=1/2
//! possible: s1 s2
//! multinomial: m=2 theta=1/2,1/2 k=1000 seed=42
//! beliefs: exchangeable possible(a)
//! ```
//!
//! Measure keys are outcome labels or event names; together they must
//! partition the outcomes, and each key becomes one atom of the field.
//! Parsing collects every diagnostic instead of stopping at the first.
//! Axiom checks (sign, norming) are left to the commands.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use modalprob_core::multinomial::Proposition;
use modalprob_core::rational::{self, Rational};

/// Diagnostic severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    /// The file is rejected.
    Error,
    /// The file is accepted but looks suspicious.
    Warning,
}

/// A positioned parser message.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    /// Error or warning.
    pub severity: Severity,
    /// 1-based line.
    pub line: usize,
    /// 1-based column of the offending token.
    pub column: usize,
    /// What went wrong.
    pub message: String,
    /// The offending token, if any.
    pub token: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{}:{}: {sev}: {}", self.line, self.column, self.message)
    }
}

/// The `multinomial:` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultinomialBlock {
    /// Number of categories.
    pub m: usize,
    /// Proportions, one per category.
    pub theta: Vec<Rational>,
    /// Number of trials.
    pub k: u64,
    /// Generator seed.
    pub seed: u64,
}

/// The `beliefs:` block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BeliefsBlock {
    /// `exchangeable` flag present.
    pub exchangeable: bool,
    /// Category the propositions are about.
    pub category: Option<String>,
    /// Propositions in file order, duplicates removed.
    pub propositions: Vec<Proposition>,
}

/// A parsed spec file. Every label it mentions is declared.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SpecFile {
    /// Outcome labels in declaration order.
    pub outcomes: Option<Vec<String>>,
    /// Named events in declaration order.
    pub events: Vec<(String, Vec<String>)>,
    /// Measure cells (outcome label or event name) with their weights.
    pub measure: Option<Vec<(String, Rational)>>,
    /// Possible outcomes.
    pub possible: Option<Vec<String>>,
    /// Repeated-trials parameters.
    pub multinomial: Option<MultinomialBlock>,
    /// Belief state.
    pub beliefs: Option<BeliefsBlock>,
}

impl SpecFile {
    /// Members of a named event.
    pub fn event(&self, name: &str) -> Option<&[String]> {
        self.events
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m.as_slice())
    }

    /// Canonical text. Parsing it gives back an equal `SpecFile`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(outcomes) = &self.outcomes {
            out.push_str(&format!("outcomes: {}\n", outcomes.join(" ")));
        }
        for (name, members) in &self.events {
            if members.is_empty() {
                out.push_str(&format!("event {name} =\n"));
            } else {
                out.push_str(&format!("event {name} = {}\n", members.join(" ")));
            }
        }
        if let Some(measure) = &self.measure {
            let cells: Vec<String> = measure
                .iter()
                .map(|(k, w)| format!("{k}={}", rational::format(w)))
                .collect();
            out.push_str(&format!("measure: {}\n", cells.join(" ")));
        }
        if let Some(possible) = &self.possible {
            out.push_str(&format!("possible: {}\n", possible.join(" ")).replace(": \n", ":\n"));
        }
        if let Some(mb) = &self.multinomial {
            let theta: Vec<String> = mb.theta.iter().map(rational::format).collect();
            out.push_str(&format!(
                "multinomial: m={} theta={} k={} seed={}\n",
                mb.m,
                theta.join(","),
                mb.k,
                mb.seed
            ));
        }
        if let Some(b) = &self.beliefs {
            let mut words = Vec::new();
            if b.exchangeable {
                words.push("exchangeable".to_string());
            }
            let cat = b.category.as_deref().unwrap_or("a");
            words.extend(
                b.propositions
                    .iter()
                    .map(|p| format!("{}({cat})", p.keyword())),
            );
            out.push_str(&format!("beliefs: {}\n", words.join(" ")).replace(": \n", ":\n"));
        }
        out
    }
}

/// Result of parsing: the file if there were no errors, plus every diagnostic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    /// `Some` iff no diagnostic is an error.
    pub spec: Option<SpecFile>,
    /// Errors and warnings in line order.
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Clone)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum BlockKind {
    Outcomes,
    Measure,
    Possible,
    Multinomial,
    Beliefs,
}

impl BlockKind {
    fn from_keyword(word: &str) -> Option<Self> {
        Some(match word {
            "outcomes" => Self::Outcomes,
            "measure" => Self::Measure,
            "possible" => Self::Possible,
            "multinomial" => Self::Multinomial,
            "beliefs" => Self::Beliefs,
            _ => return None,
        })
    }
}

#[derive(Debug)]
enum Statement<'a> {
    Block {
        kind: BlockKind,
        keyword: Token<'a>,
        body: Vec<Token<'a>>,
    },
    Event {
        name: Token<'a>,
        members: Vec<Token<'a>>,
    },
}

struct Parser<'a> {
    diagnostics: Vec<Diagnostic>,
    statements: Vec<(usize, Statement<'a>)>,
}

impl<'a> Parser<'a> {
    fn error(&mut self, line: usize, token: &Token<'_>, message: impl Into<String>) {
        self.push(Severity::Error, line, token, message);
    }

    fn push(
        &mut self,
        severity: Severity,
        line: usize,
        token: &Token<'_>,
        message: impl Into<String>,
    ) {
        self.diagnostics.push(Diagnostic {
            severity,
            line,
            column: token.column,
            message: message.into(),
            token: token.text.to_string(),
        });
    }
}

/// Splits on whitespace, keeping 1-based character columns.
fn tokenize(text: &str, offset: usize) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut column = offset;
    for (byte, ch) in text.char_indices() {
        column += 1;
        if ch.is_whitespace() {
            if let Some((b, c)) = start.take() {
                tokens.push(Token {
                    text: &text[b..byte],
                    column: c,
                });
            }
        } else if start.is_none() {
            start = Some((byte, column));
        }
    }
    if let Some((b, c)) = start {
        tokens.push(Token {
            text: &text[b..],
            column: c,
        });
    }
    tokens
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphanumeric() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

/// Parses spec-file text. LF and CRLF line endings are accepted.
pub fn parse(text: &str) -> Parsed {
    let mut p = Parser {
        diagnostics: Vec::new(),
        statements: Vec::new(),
    };
    for (idx, raw) in text.split('\n').enumerate() {
        let line = idx + 1;
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let content = raw.split('#').next().unwrap_or("");
        let tokens = tokenize(content, 0);
        let Some(first) = tokens.first() else {
            continue;
        };
        if first.text == "event" {
            scan_event(&mut p, line, content, tokens);
            continue;
        }
        let Some(colon) = content.find(':') else {
            p.error(
                line,
                first,
                format!("expected `keyword:` or `event`, found `{}`", first.text),
            );
            continue;
        };
        let keyword_text = content[..colon].trim();
        let keyword = Token {
            text: keyword_text,
            column: first.column,
        };
        let Some(kind) = BlockKind::from_keyword(keyword_text) else {
            p.error(line, &keyword, format!("unknown block `{keyword_text}`"));
            continue;
        };
        let body_offset = content[..=colon].chars().count();
        let body = tokenize(&content[colon + 1..], body_offset);
        p.statements.push((
            line,
            Statement::Block {
                kind,
                keyword,
                body,
            },
        ));
    }
    resolve(p)
}

fn scan_event<'a>(p: &mut Parser<'a>, line: usize, content: &'a str, tokens: Vec<Token<'a>>) {
    let event_kw = &tokens[0];
    let col_of = |byte: usize| content[..byte].chars().count() + 1;
    // `event E=s1 s2` and `event E = s1` both work: split the rest at the first `=`.
    let kw_end = content.find("event").expect("first token") + "event".len();
    let rest = &content[kw_end..];
    let Some(eq) = rest.find('=') else {
        match tokens.get(1) {
            Some(name) => p.error(
                line,
                name,
                format!("missing `=` in definition of event `{}`", name.text),
            ),
            None => p.error(
                line,
                event_kw,
                "event needs a name: `event NAME = outcome ...`",
            ),
        }
        return;
    };
    let lhs = &rest[..eq];
    let name_text = lhs.trim();
    if name_text.is_empty() {
        p.error(
            line,
            event_kw,
            "event needs a name: `event NAME = outcome ...`",
        );
        return;
    }
    let name_byte = kw_end + lhs.find(name_text).expect("trimmed substring");
    let name = Token {
        text: &content[name_byte..name_byte + name_text.len()],
        column: col_of(name_byte),
    };
    if !is_name(name_text) {
        p.error(line, &name, format!("invalid event name `{name_text}`"));
        return;
    }
    let body_byte = kw_end + eq + 1;
    let members = tokenize(&content[body_byte..], col_of(body_byte) - 1);
    p.statements
        .push((line, Statement::Event { name, members }));
}

fn resolve(mut p: Parser<'_>) -> Parsed {
    let mut spec = SpecFile::default();
    let statements = std::mem::take(&mut p.statements);

    // Duplicate blocks are reported at the later occurrence.
    let mut seen: BTreeMap<BlockKind, usize> = BTreeMap::new();
    for (line, st) in &statements {
        if let Statement::Block { kind, keyword, .. } = st {
            if let Some(first) = seen.get(kind) {
                p.error(
                    *line,
                    keyword,
                    format!("duplicate `{}` block (first on line {first})", keyword.text),
                );
            } else {
                seen.insert(*kind, *line);
            }
        }
    }

    // Outcomes first: every other statement refers to them.
    let mut declared: BTreeSet<String> = BTreeSet::new();
    let mut outcomes_line = None;
    for (line, st) in &statements {
        if let Statement::Block {
            kind: BlockKind::Outcomes,
            keyword,
            body,
        } = st
        {
            if outcomes_line.is_some() {
                continue;
            }
            outcomes_line = Some(*line);
            if body.is_empty() {
                p.error(*line, keyword, "outcomes list is empty");
            }
            let mut labels = Vec::new();
            for t in body {
                if !is_name(t.text) {
                    p.error(*line, t, format!("invalid outcome label `{}`", t.text));
                } else if !declared.insert(t.text.to_string()) {
                    p.error(*line, t, format!("outcome `{}` declared twice", t.text));
                } else {
                    labels.push(t.text.to_string());
                }
            }
            spec.outcomes = Some(labels);
        }
    }

    let mut event_names: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (line, st) in &statements {
        let Statement::Event { name, members } = st else {
            continue;
        };
        if declared.contains(name.text) {
            p.error(
                *line,
                name,
                format!("event name `{}` clashes with an outcome label", name.text),
            );
            continue;
        }
        if event_names.contains_key(name.text) {
            p.error(*line, name, format!("event `{}` defined twice", name.text));
            continue;
        }
        let mut list = Vec::new();
        for t in members {
            if check_label(&mut p, *line, t, &declared, outcomes_line)
                && !list.iter().any(|l| l == t.text)
            {
                list.push(t.text.to_string());
            }
        }
        event_names.insert(name.text.to_string(), list.clone());
        spec.events.push((name.text.to_string(), list));
    }

    for (line, st) in &statements {
        let Statement::Block {
            kind,
            keyword,
            body,
        } = st
        else {
            continue;
        };
        if seen.get(kind) != Some(line) {
            continue;
        }
        match kind {
            BlockKind::Outcomes => {}
            BlockKind::Measure => {
                spec.measure =
                    parse_measure(&mut p, *line, keyword, body, &declared, &event_names, &spec);
            }
            BlockKind::Possible => {
                let mut list: Vec<String> = Vec::new();
                for t in body {
                    if !check_label(&mut p, *line, t, &declared, outcomes_line) {
                        continue;
                    }
                    if list.iter().any(|l| l == t.text) {
                        p.error(*line, t, format!("outcome `{}` listed twice", t.text));
                    } else {
                        list.push(t.text.to_string());
                    }
                }
                if body.is_empty() {
                    p.push(
                        Severity::Warning,
                        *line,
                        keyword,
                        "possibility space is empty: every event is impossible",
                    );
                }
                spec.possible = Some(list);
            }
            BlockKind::Multinomial => {
                spec.multinomial = parse_multinomial(&mut p, *line, keyword, body)
            }
            BlockKind::Beliefs => spec.beliefs = parse_beliefs(&mut p, *line, body),
        }
    }

    p.diagnostics.sort_by_key(|d| (d.line, d.column));
    let failed = p.diagnostics.iter().any(|d| d.severity == Severity::Error);
    Parsed {
        spec: (!failed).then_some(spec),
        diagnostics: p.diagnostics,
    }
}

fn check_label(
    p: &mut Parser<'_>,
    line: usize,
    t: &Token<'_>,
    declared: &BTreeSet<String>,
    outcomes_line: Option<usize>,
) -> bool {
    if declared.contains(t.text) {
        return true;
    }
    if outcomes_line.is_none() {
        p.error(
            line,
            t,
            format!(
                "outcome `{}` used but no `outcomes:` block declared",
                t.text
            ),
        );
    } else {
        p.error(line, t, format!("undeclared outcome `{}`", t.text));
    }
    false
}

fn parse_fraction_token(
    p: &mut Parser<'_>,
    line: usize,
    t: &Token<'_>,
    text: &str,
) -> Option<Rational> {
    if let Some(r) = rational::parse_fraction(text) {
        return Some(r);
    }
    if text.contains('.') {
        p.error(
            line,
            t,
            format!("`{text}` is a decimal; weights must be exact fractions like 1/4"),
        );
    } else {
        p.error(line, t, format!("malformed fraction `{text}`"));
    }
    None
}

fn parse_measure(
    p: &mut Parser<'_>,
    line: usize,
    keyword: &Token<'_>,
    body: &[Token<'_>],
    declared: &BTreeSet<String>,
    events: &BTreeMap<String, Vec<String>>,
    spec: &SpecFile,
) -> Option<Vec<(String, Rational)>> {
    let mut cells: Vec<(String, Rational)> = Vec::new();
    let mut owner: BTreeMap<String, String> = BTreeMap::new();
    let mut ok = true;
    if body.is_empty() {
        p.error(line, keyword, "measure block has no weights");
        return None;
    }
    for t in body {
        let Some((key, value)) = t.text.split_once('=') else {
            p.error(
                line,
                t,
                format!("expected `outcome=fraction`, found `{}`", t.text),
            );
            ok = false;
            continue;
        };
        let members: Vec<String> = if declared.contains(key) {
            vec![key.to_string()]
        } else if let Some(m) = events.get(key) {
            m.clone()
        } else {
            if spec.outcomes.is_none() {
                p.error(
                    line,
                    t,
                    format!("outcome `{key}` used but no `outcomes:` block declared"),
                );
            } else {
                p.error(line, t, format!("undeclared outcome or event `{key}`"));
            }
            ok = false;
            continue;
        };
        let Some(weight) = parse_fraction_token(p, line, t, value) else {
            ok = false;
            continue;
        };
        if cells.iter().any(|(k, _)| k == key) {
            p.error(line, t, format!("`{key}` weighted twice"));
            ok = false;
            continue;
        }
        if members.is_empty() {
            p.error(
                line,
                t,
                format!("event `{key}` is empty and cannot be an atom"),
            );
            ok = false;
            continue;
        }
        for m in &members {
            if let Some(prev) = owner.insert(m.clone(), key.to_string()) {
                p.error(
                    line,
                    t,
                    format!("outcome `{m}` weighted twice (via `{prev}` and `{key}`)"),
                );
                ok = false;
            }
        }
        cells.push((key.to_string(), weight));
    }
    if ok {
        if let Some(outcomes) = &spec.outcomes {
            let missing: Vec<&str> = outcomes
                .iter()
                .filter(|o| !owner.contains_key(*o))
                .map(String::as_str)
                .collect();
            if !missing.is_empty() {
                p.error(
                    line,
                    keyword,
                    format!("outcomes without weight: {}", missing.join(" ")),
                );
                ok = false;
            }
        }
    }
    ok.then_some(cells)
}

fn parse_multinomial(
    p: &mut Parser<'_>,
    line: usize,
    keyword: &Token<'_>,
    body: &[Token<'_>],
) -> Option<MultinomialBlock> {
    let mut m = None;
    let mut theta: Option<Vec<Rational>> = None;
    let mut k = None;
    let mut seed = None;
    let mut ok = true;
    for t in body {
        let Some((key, value)) = t.text.split_once('=') else {
            p.error(line, t, format!("expected `key=value`, found `{}`", t.text));
            ok = false;
            continue;
        };
        let slot_seen = match key {
            "m" => m.is_some(),
            "theta" => theta.is_some(),
            "k" => k.is_some(),
            "seed" => seed.is_some(),
            _ => {
                p.error(
                    line,
                    t,
                    format!("unknown multinomial key `{key}` (expected m, theta, k, seed)"),
                );
                ok = false;
                continue;
            }
        };
        if slot_seen {
            p.error(line, t, format!("`{key}` given twice"));
            ok = false;
            continue;
        }
        match key {
            "theta" => {
                let mut comps = Vec::new();
                for part in value.split(',') {
                    match parse_fraction_token(p, line, t, part) {
                        Some(r) => comps.push(r),
                        None => ok = false,
                    }
                }
                theta = Some(comps);
            }
            _ => match value.parse::<u64>() {
                Ok(n) => match key {
                    "m" => m = Some(n as usize),
                    "k" => k = Some(n),
                    _ => seed = Some(n),
                },
                Err(_) => {
                    p.error(
                        line,
                        t,
                        format!("`{key}` must be a non-negative integer, found `{value}`"),
                    );
                    ok = false;
                }
            },
        }
    }
    for (name, present) in [
        ("m", m.is_some()),
        ("theta", theta.is_some()),
        ("k", k.is_some()),
        ("seed", seed.is_some()),
    ] {
        if !present && ok {
            p.error(
                line,
                keyword,
                format!("multinomial block is missing `{name}`"),
            );
            ok = false;
        }
    }
    if !ok {
        return None;
    }
    let (m, theta, k, seed) = (m?, theta?, k?, seed?);
    if m == 0 {
        p.error(line, keyword, "m must be at least 1");
        return None;
    }
    if theta.len() != m {
        let t = body
            .iter()
            .find(|t| t.text.starts_with("theta="))
            .unwrap_or(keyword);
        p.error(
            line,
            t,
            format!("theta has {} components but m={m}", theta.len()),
        );
        return None;
    }
    Some(MultinomialBlock { m, theta, k, seed })
}

fn parse_beliefs(p: &mut Parser<'_>, line: usize, body: &[Token<'_>]) -> Option<BeliefsBlock> {
    let mut block = BeliefsBlock {
        exchangeable: false,
        category: None,
        propositions: Vec::new(),
    };
    let mut ok = true;
    for t in body {
        if t.text == "exchangeable" {
            block.exchangeable = true;
            continue;
        }
        let parsed = t
            .text
            .strip_suffix(')')
            .and_then(|s| s.split_once('('))
            .filter(|(_, cat)| is_name(cat));
        let Some((word, cat)) = parsed else {
            p.error(
                line,
                t,
                format!(
                    "expected `exchangeable` or `proposition(category)`, found `{}`",
                    t.text
                ),
            );
            ok = false;
            continue;
        };
        let Some(prop) = Proposition::from_keyword(word) else {
            p.error(
                line,
                t,
                format!(
                    "unknown proposition `{word}` (expected possible, impossible, prob_zero, prob_positive, theta_zero, theta_positive)"
                ),
            );
            ok = false;
            continue;
        };
        match &block.category {
            Some(c) if c != cat => {
                p.error(line, t, format!("beliefs mix categories `{c}` and `{cat}`"));
                ok = false;
                continue;
            }
            None => block.category = Some(cat.to_string()),
            _ => {}
        }
        if !block.propositions.contains(&prop) {
            block.propositions.push(prop);
        }
    }
    ok.then_some(block)
}
