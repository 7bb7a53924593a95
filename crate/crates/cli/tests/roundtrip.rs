use modalprob::spec::{BeliefsBlock, MultinomialBlock};
use modalprob::{parse, run, Command, Options, Severity, SpecFile};
use modalprob_core::multinomial::Proposition;
use modalprob_core::rational::ratio;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("s{i}")).collect()
}

/// A random well-formed spec: measure cells are a random grouping of the outcomes.
fn arb_spec() -> impl Strategy<Value = SpecFile> {
    (1usize..7)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0usize..3, n),
                proptest::collection::vec((-3i64..9, 1i64..9), n + 2),
                subsequence(labels(n), 0..=n),
                proptest::option::of((1usize..4, 0u64..50, any::<u64>())),
                proptest::option::of((
                    any::<bool>(),
                    subsequence(Proposition::ALL.to_vec(), 0..=6),
                )),
            )
        })
        .prop_map(|(n, group, weights, possible, multi, beliefs)| {
            let outcomes = labels(n);
            let mut events = Vec::new();
            let mut measure = Vec::new();
            // Outcomes with group 0 are their own cell; groups 1 and 2 become events.
            for g in 1..3 {
                let members: Vec<String> = (0..n)
                    .filter(|&i| group[i] == g)
                    .map(|i| outcomes[i].clone())
                    .collect();
                if !members.is_empty() {
                    events.push((format!("G{g}"), members));
                    measure.push((
                        format!("G{g}"),
                        ratio(weights[n + g - 1].0, weights[n + g - 1].1),
                    ));
                }
            }
            for i in (0..n).filter(|&i| group[i] == 0) {
                measure.push((outcomes[i].clone(), ratio(weights[i].0, weights[i].1)));
            }
            events.push(("Empty".to_string(), Vec::new()));
            SpecFile {
                outcomes: Some(outcomes),
                events,
                measure: Some(measure),
                possible: Some(possible),
                multinomial: multi.map(|(m, k, seed)| MultinomialBlock {
                    m,
                    theta: (0..m).map(|i| ratio(i as i64, 7)).collect(),
                    k,
                    seed,
                }),
                beliefs: beliefs.map(|(exchangeable, propositions)| BeliefsBlock {
                    exchangeable,
                    category: if propositions.is_empty() {
                        None
                    } else {
                        Some("a".into())
                    },
                    propositions,
                }),
            }
        })
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(spec in arb_spec()) {
        let text = spec.to_text();
        let parsed = parse(&text);
        prop_assert!(
            parsed.diagnostics.iter().all(|d| d.severity == Severity::Warning),
            "{text}\n{:?}", parsed.diagnostics
        );
        prop_assert_eq!(parsed.spec.as_ref(), Some(&spec));
        prop_assert_eq!(parsed.spec.unwrap().to_text(), text);
    }

    #[test]
    fn crlf_parses_like_lf(spec in arb_spec()) {
        let text = spec.to_text();
        prop_assert_eq!(parse(&text.replace('\n', "\r\n")), parse(&text));
    }

    #[test]
    fn parser_is_total(lines in proptest::collection::vec("[a-z0-9:=/ ().#,-]{0,30}", 0..8)) {
        let text = lines.join("\n");
        let parsed = parse(&text);
        prop_assert_eq!(parsed.spec.is_none(), parsed.diagnostics.iter().any(|d| d.severity == Severity::Error));
        for d in &parsed.diagnostics {
            prop_assert!(d.line >= 1 && d.line <= lines.len().max(1));
            prop_assert!(d.column >= 1);
        }
    }

    #[test]
    fn exit_status_contract(spec in arb_spec(), which in 0usize..8) {
        let cmd = [
            Command::Validate,
            Command::Classify("G1".into()),
            Command::Condition("s1".into()),
            Command::Correspondence,
            Command::Theorems,
            Command::Reduce,
            Command::Simulate,
            Command::Beliefs,
        ][which].clone();
        let opts = Options { trials: 5, ..Options::default() };
        let text = spec.to_text();
        let a = run(&cmd, "p.spec", &text, &opts);
        prop_assert!([0, 1, 2].contains(&a.code));
        // Usage errors print nothing on stdout and explain themselves on stderr.
        if a.code == 2 {
            prop_assert!(a.stdout.is_empty() && !a.stderr.is_empty());
        }
        prop_assert_eq!(a, run(&cmd, "p.spec", &text, &opts));
    }
}
