use nabla_core::calculus::{apply_word, codomain_level, domain_level, ComponentVector};
use nabla_core::verify::{self, Scope};
use nabla_core::{
    build_adjacency, characteristic_polynomial, classify_word, count_sequence, count_total,
    enumerate_words, minimal_recurrence, reduced_characteristic_recurrence, reference_table,
    verify_recurrence, CompositionWord, Dimension, Error, TrivialityClass,
};
use serde_json::{json, Value};

use crate::render::{csv, json, split_vector};
use crate::{Cli, Command, Failure, OutputFormat, VerifyScope};

pub struct Output {
    pub stdout: String,
    pub stderr: Option<String>,
    pub code: u8,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            stderr: None,
            code: 0,
        }
    }
}

fn dimension(n: usize, cap: usize) -> Result<Dimension, Failure> {
    let d = Dimension::new(n)?;
    if n > cap {
        return Err(Error::DimensionCap { n, cap }.into());
    }
    Ok(d)
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    let fmt = |default| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Count { n, k } => count(dimension(*n, cli.max_n)?, *k, fmt(OutputFormat::Plain)),
        Command::Sequence { n, k_max } => {
            sequence(dimension(*n, cli.max_n)?, *k_max, fmt(OutputFormat::Json))
        }
        Command::Recurrence { n } => recurrence(dimension(*n, cli.max_n)?, fmt(OutputFormat::Json)),
        Command::Enumerate {
            n,
            length,
            nontrivial,
        } => enumerate(
            dimension(*n, cli.max_n)?,
            *length,
            *nontrivial,
            cli.enum_cap,
            fmt(OutputFormat::Json),
        ),
        Command::Apply { n, word, input } => apply(
            dimension(*n, cli.symbolic_max_n)?,
            word,
            input,
            fmt(OutputFormat::Json),
        ),
        Command::Verify { scope } => run_verify(*scope, fmt(OutputFormat::Json)),
    }
}

fn count(n: Dimension, k: usize, format: OutputFormat) -> Result<Output, Failure> {
    let c = count_total(n, k).to_string();
    Ok(Output::ok(match format {
        OutputFormat::Plain => format!("{c}\n"),
        OutputFormat::Json => json(&json!({"n": n.n(), "k": k, "count": c})),
        OutputFormat::Csv => csv(
            &["n", "k", "count"],
            [vec![n.to_string(), k.to_string(), c]],
        ),
    }))
}

fn sequence(n: Dimension, k_max: usize, format: OutputFormat) -> Result<Output, Failure> {
    let values: Vec<String> = count_sequence(n, k_max)?
        .values
        .iter()
        .map(|v| v.to_string())
        .collect();
    Ok(Output::ok(match format {
        OutputFormat::Plain => format!("{}\n", values.join(",")),
        OutputFormat::Json => json(&json!({"n": n.n(), "k_max": k_max, "values": values})),
        OutputFormat::Csv => csv(
            &["k", "f_k"],
            values
                .iter()
                .enumerate()
                .map(|(i, v)| vec![(i + 1).to_string(), v.clone()]),
        ),
    }))
}

fn recurrence(n: Dimension, format: OutputFormat) -> Result<Output, Failure> {
    let size = n.n();
    let seq = count_sequence(n, 2 * size + 8)?;
    let minimal = minimal_recurrence(&seq)?;
    let adjacency = build_adjacency(n);
    let charpoly = characteristic_polynomial(&adjacency);
    let reduced = reduced_characteristic_recurrence(&adjacency);
    let table = reference_table();
    let reference = table.get(&size);

    let mut fields: Vec<(&str, Value)> = vec![
        ("n", json!(size)),
        ("recurrence", json!(minimal.to_string())),
        ("order", json!(minimal.order())),
        (
            "coefficients",
            json!(minimal
                .coefficients
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>()),
        ),
        ("valid_from", json!(minimal.valid_from)),
        ("verified", json!(verify_recurrence(&minimal, &seq))),
        ("terms_checked", json!(seq.k_max())),
        ("characteristic_polynomial", json!(charpoly.to_string())),
        (
            "reduced_characteristic_recurrence",
            json!(reduced.to_string()),
        ),
    ];
    if let Some(row) = reference {
        fields.push(("matches_reference_table", json!(minimal.same_relation(row))));
        fields.push(("reference_row", json!(row.to_string())));
        fields.push(("reference_row_holds", json!(verify_recurrence(row, &seq))));
    }

    Ok(Output::ok(match format {
        OutputFormat::Json => json(&Value::Object(
            fields
                .into_iter()
                .map(|(k, v)| (k.to_string(), v))
                .collect(),
        )),
        OutputFormat::Plain => {
            let mut out = String::new();
            for (k, v) in fields {
                let text = match v {
                    Value::String(s) => s,
                    Value::Array(a) => a
                        .iter()
                        .map(|x| {
                            x.as_str()
                                .map(str::to_string)
                                .unwrap_or_else(|| x.to_string())
                        })
                        .collect::<Vec<_>>()
                        .join(","),
                    other => other.to_string(),
                };
                out.push_str(&format!("{k}: {text}\n"));
            }
            out
        }
        OutputFormat::Csv => csv(
            &["field", "value"],
            fields.into_iter().map(|(k, v)| {
                let text = match v {
                    Value::String(s) => s,
                    Value::Array(a) => a
                        .iter()
                        .map(|x| x.as_str().unwrap_or_default().to_string())
                        .collect::<Vec<_>>()
                        .join(" "),
                    other => other.to_string(),
                };
                vec![k.to_string(), text]
            }),
        ),
    }))
}

fn word_json(w: &CompositionWord, class: TrivialityClass) -> Value {
    json!({
        "indices": w.raw(),
        "notation": w.composition_notation(),
        "named": w.named_notation(),
        "class": class.as_str(),
    })
}

fn enumerate(
    n: Dimension,
    length: usize,
    nontrivial_only: bool,
    cap: usize,
    format: OutputFormat,
) -> Result<Output, Failure> {
    let words: Vec<(CompositionWord, TrivialityClass)> = enumerate_words(n, length, cap)?
        .into_iter()
        .map(|w| {
            let c = classify_word(&w);
            (w, c)
        })
        .filter(|(_, c)| !nontrivial_only || *c == TrivialityClass::NonTrivial)
        .collect();

    Ok(Output::ok(match format {
        OutputFormat::Json => json(&json!({
            "n": n.n(),
            "length": length,
            "nontrivial_only": nontrivial_only,
            "count": words.len().to_string(),
            "words": words.iter().map(|(w, c)| word_json(w, *c)).collect::<Vec<_>>(),
        })),
        OutputFormat::Plain => words
            .iter()
            .map(|(w, c)| {
                let named = w
                    .named_notation()
                    .map(|s| format!("  {s}"))
                    .unwrap_or_default();
                format!("{w}  {}{named}  {c}\n", w.composition_notation())
            })
            .collect(),
        OutputFormat::Csv => csv(
            &["indices", "notation", "class"],
            words.iter().map(|(w, c)| {
                let raw: Vec<String> = w.raw().iter().map(|i| i.to_string()).collect();
                vec![raw.join(" "), w.composition_notation(), c.to_string()]
            }),
        ),
    }))
}

fn apply(
    n: Dimension,
    word: &[usize],
    input: &str,
    format: OutputFormat,
) -> Result<Output, Failure> {
    let w = CompositionWord::from_indices(n, word)?;
    if let Some((first, second)) = w.first_undefined_pair() {
        return Err(Error::NotComposable { first, second }.into());
    }
    let entries = split_vector(input).map_err(|message| Failure { code: 2, message })?;
    let level = domain_level(w.indices()[0], n);
    let v = ComponentVector::parse(n, level, &entries)?;
    let out = apply_word(&w, &v)?;
    let last = *w.indices().last().expect("nonempty word");
    debug_assert_eq!(out.level(), codomain_level(last, n));
    let strings = out.to_strings();

    Ok(Output::ok(match format {
        OutputFormat::Plain => format!("{out}\n"),
        OutputFormat::Json => json(&json!({
            "n": n.n(),
            "word": w.raw(),
            "notation": w.composition_notation(),
            "input_level": level,
            "output_level": out.level(),
            "output": strings,
        })),
        OutputFormat::Csv => csv(
            &["slot", "component"],
            strings
                .into_iter()
                .enumerate()
                .map(|(i, s)| vec![(i + 1).to_string(), s]),
        ),
    }))
}

fn run_verify(scope: VerifyScope, format: OutputFormat) -> Result<Output, Failure> {
    let scope = match scope {
        VerifyScope::Counting => Scope::Counting,
        VerifyScope::Recurrence => Scope::Recurrence,
        VerifyScope::Calculus => Scope::Calculus,
        VerifyScope::All => Scope::All,
    };
    let checks = verify::run(scope);
    let passed = checks.iter().filter(|c| c.passed).count();
    let first_failure = checks.iter().find(|c| !c.passed);

    let stdout = match format {
        OutputFormat::Plain => {
            let mut s: String = checks.iter().map(|c| format!("{c}\n")).collect();
            s.push_str(&format!("{passed}/{} checks passed\n", checks.len()));
            s
        }
        OutputFormat::Json => json(&json!({
            "passed": passed,
            "total": checks.len(),
            "all_passed": first_failure.is_none(),
            "checks": checks.iter().map(|c| json!({
                "name": c.name,
                "passed": c.passed,
                "detail": c.detail,
            })).collect::<Vec<_>>(),
        })),
        OutputFormat::Csv => csv(
            &["check", "status", "detail"],
            checks.iter().map(|c| {
                vec![
                    c.name.clone(),
                    if c.passed { "pass" } else { "fail" }.to_string(),
                    c.detail.clone(),
                ]
            }),
        ),
    };
    Ok(Output {
        stdout,
        stderr: first_failure.map(|c| format!("first failure: {c}")),
        code: if first_failure.is_some() { 1 } else { 0 },
    })
}
