use std::fmt::Write as _;
use std::sync::Arc;

use cayley::classify::all_semigroups_of_order;
use cayley::enumeration::{enumerate_machine, EnumOptions, EnumStatus};
use cayley::expansions::{self, ExpansionWord};
use cayley::format::SemigroupFile;
use cayley::green::{self, ReesKind};
use cayley::harness::verify_theorem;
use cayley::tower::TowerContext;
use cayley::{format, CayleyMachine, ElementId, FiniteSemigroup};
use serde_json::{json, Value};

use crate::input::{fail, load, parse_elements, parse_ids, parse_mode, parse_word, read_file, CliResult};
use crate::{Command, MachineArgs, Output, RhodesAction, TowerAction, TowerArgs};

pub(crate) fn execute(command: &Command) -> CliResult<Output> {
    match command {
        Command::Show { input, allow_magma } => {
            let file = read_file(input)?;
            if *allow_magma {
                if let Some(v) = file.violation()? {
                    return Ok(magma_report(&file, v));
                }
            }
            show(&file.into_semigroup()?)
        }
        Command::Green { input } => green_cmd(&load(input)?),
        Command::Rees { input, jclass } => rees(&load(input)?, jclass),
        Command::Enumerate { machine, max } => enumerate_cmd(machine, *max),
        Command::Apply { machine, word, input } => apply(machine, word, input),
        Command::Pascal { machine, word, input } => pascal(machine, word, input),
        Command::Portrait { machine, word, depth, dot } => portrait(machine, word, *depth, *dot),
        Command::Dot { machine, word, out } => dot(machine, word.as_deref(), out.as_deref()),
        Command::Mem { input, word, index } => mem(&load(input)?, word.as_deref(), *index),
        Command::Rhodes { action } => rhodes(action),
        Command::Divide { input, ideal, max_len } => divide(&load(input)?, ideal, *max_len),
        Command::Tower { action } => tower(action),
        Command::VerifyTheorem { order, max } => theorem(*order, *max),
        Command::GenOrder { order } => gen_order(*order),
    }
}

fn names(s: &FiniteSemigroup, ids: &[ElementId]) -> Vec<String> {
    ids.iter().map(|&x| s.element_name(x).to_string()).collect()
}

fn value_names(m: &CayleyMachine, ids: &[ElementId]) -> Vec<String> {
    ids.iter().map(|&x| m.value_name(x).to_string()).collect()
}

fn table_text(s: &FiniteSemigroup) -> String {
    let width = s.names().iter().map(|n| n.chars().count()).max().unwrap_or(1);
    let pad = |n: &str| format!("{n:>width$}");
    let mut text = format!("{} |", " ".repeat(width));
    for x in s.elements() {
        text.push(' ');
        text.push_str(&pad(s.element_name(x)));
    }
    text.push('\n');
    for x in s.elements() {
        text.push_str(&pad(s.element_name(x)));
        text.push_str(" |");
        for y in s.elements() {
            text.push(' ');
            text.push_str(&pad(s.element_name(s.mul(x, y))));
        }
        text.push('\n');
    }
    text
}

fn optional(x: Option<impl ToString>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

fn magma_report(file: &SemigroupFile, (i, j, k): (usize, usize, usize)) -> Output {
    let n = |x: usize| file.elements.get(x).cloned().unwrap_or_else(|| x.to_string());
    let text = format!(
        "{}: not associative: ({}·{})·{} != {}·({}·{})\n",
        file.name,
        n(i),
        n(j),
        n(k),
        n(i),
        n(j),
        n(k)
    );
    let data = json!({
        "name": file.name,
        "associative": false,
        "violation": [n(i), n(j), n(k)],
    });
    Output::verdict(text, data, false)
}

fn show(s: &FiniteSemigroup) -> CliResult<Output> {
    let idempotents: Vec<ElementId> = s.elements().filter(|&x| s.is_idempotent(x)).collect();
    let identity = s.identity().map(|x| s.element_name(x).to_string());
    let zero = s.zero().map(|x| s.element_name(x).to_string());
    let mut text = format!("{} (order {})\n", s.name(), s.order());
    text.push_str(&table_text(s));
    let _ = writeln!(text, "identity: {}", optional(identity.clone()));
    let _ = writeln!(text, "zero: {}", optional(zero.clone()));
    let _ = writeln!(text, "idempotents: {}", names(s, &idempotents).join(", "));
    let _ = writeln!(text, "aperiodicity index: {}", optional(s.aperiodicity_index()));
    let _ = writeln!(text, "nilpotency index: {}", optional(s.nilpotency_index()));
    let _ = writeln!(text, "idempotent semigroup: {}", s.is_idempotent_semigroup());
    let data = json!({
        "name": s.name(),
        "associative": true,
        "elements": s.names(),
        "table": s.rows(),
        "identity": identity,
        "zero": zero,
        "idempotents": names(s, &idempotents),
        "aperiodicity_index": s.aperiodicity_index(),
        "nilpotency_index": s.nilpotency_index(),
        "idempotent_semigroup": s.is_idempotent_semigroup(),
    });
    Ok(Output::ok(text, data))
}

fn green_cmd(s: &FiniteSemigroup) -> CliResult<Output> {
    let g = green::green(s);
    let class_names = |classes: &[Vec<ElementId>]| -> Vec<Vec<String>> {
        classes.iter().map(|c| names(s, c)).collect()
    };
    let mut text = g.eggbox(s);
    let series: Vec<String> = g
        .principal_series
        .iter()
        .map(|&c| format!("{{{}}}", names(s, &g.j_classes[c]).join(",")))
        .collect();
    let _ = writeln!(text, "principal series (bottom up): {}", series.join(" < "));
    let data = json!({
        "r_classes": class_names(&g.r_classes),
        "l_classes": class_names(&g.l_classes),
        "j_classes": class_names(&g.j_classes),
        "regular": g.regular,
        "principal_series": g.principal_series,
    });
    Ok(Output::ok(text, data))
}

fn rees(s: &FiniteSemigroup, jclass: &str) -> CliResult<Output> {
    let j = parse_ids(s, jclass)?;
    let r = green::rees_coordinates(s, &j)?;
    let kind = match r.kind {
        ReesKind::Regular => "regular",
        ReesKind::Null => "null",
    };
    let mut text = format!("{kind} J-class, {} rows x {} columns\n", r.a_index.len(), r.b_index.len());
    for &(x, (a, b)) in &r.coordinates {
        let _ = writeln!(text, "  {} = ({}, {})", s.element_name(x), a, b);
    }
    let _ = writeln!(text, "C (columns by rows):\n{}", r.matrix_text());
    let data = json!({
        "kind": kind,
        "rows": r.a_index.iter().map(|c| names(s, c)).collect::<Vec<_>>(),
        "columns": r.b_index.iter().map(|c| names(s, c)).collect::<Vec<_>>(),
        "c_matrix": r.c_matrix,
        "coordinates": r.coordinates.iter().map(|&(x, c)| json!([s.element_name(x), c.0, c.1])).collect::<Vec<_>>(),
    });
    Ok(Output::ok(text, data))
}

fn machine(args: &MachineArgs) -> CliResult<CayleyMachine> {
    let s = load(&args.input)?;
    let mode = parse_mode(&s, &args.mode)?;
    Ok(CayleyMachine::new(&s, mode)?.with_state_budget(args.state_budget))
}

fn enumerate_cmd(args: &MachineArgs, max: usize) -> CliResult<Output> {
    let m = Arc::new(machine(args)?);
    let options = EnumOptions { max_elements: max, state_budget: args.state_budget };
    let result = enumerate_machine(Arc::clone(&m), options.max_elements)?;
    let mut text = String::new();
    match result.status {
        EnumStatus::Complete => {
            let index = result.aperiodicity_index()?;
            let cayley = result.to_semigroup()?;
            let _ = writeln!(text, "status: complete");
            let _ = writeln!(text, "elements: {}", result.len());
            let _ = writeln!(text, "closure depth: {}", result.closure_depth);
            let _ = writeln!(text, "aperiodicity index: {}", optional(index));
            for i in 0..result.len() {
                let _ = writeln!(text, "  {i}: {}", result.witness_name(i));
            }
            text.push_str(&format::emit(&cayley));
            text.push('\n');
            let data = json!({
                "status": "complete",
                "elements": result.len(),
                "closure_depth": result.closure_depth,
                "aperiodicity_index": index,
                "witnesses": (0..result.len()).map(|i| names(m.base(), &result.witnesses[i])).collect::<Vec<_>>(),
                "semigroup": format::SemigroupFile::from_semigroup(&cayley),
            });
            Ok(Output::ok(text, data))
        }
        EnumStatus::Exceeded(bound) => {
            let _ = writeln!(text, "status: exceeded");
            let _ = writeln!(text, "more than {bound} elements");
            let _ = writeln!(text, "closure depth reached: {}", result.closure_depth);
            let data = json!({
                "status": "exceeded",
                "bound": bound,
                "elements_found": result.len(),
                "closure_depth": result.closure_depth,
            });
            Ok(Output::ok(text, data))
        }
    }
}

fn apply(args: &MachineArgs, word: &str, input: &str) -> CliResult<Output> {
    let m = machine(args)?;
    let w = parse_word(&m, word)?;
    let v = parse_word(&m, input)?;
    let out = value_names(&m, &m.apply(&w, &v)?);
    Ok(Output::ok(format!("{}\n", out.join(",")), json!({ "output": out })))
}

fn pascal(args: &MachineArgs, word: &str, input: &str) -> CliResult<Output> {
    let m = machine(args)?;
    let rows = parse_word(&m, word)?;
    let v = parse_word(&m, input)?;
    let array = m.pascal_array(&rows, &v)?;
    let cells: Vec<Vec<Option<String>>> = array
        .iter()
        .map(|row| row.iter().map(|c| c.map(|x| m.value_name(x).to_string())).collect())
        .collect();
    let width = cells.iter().flatten().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    let mut text = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .map(|c| format!("{:>width$}", c.as_deref().unwrap_or("·")))
            .collect();
        let _ = writeln!(text, "{}", line.join(" "));
    }
    Ok(Output::ok(text, json!({ "array": cells })))
}

fn portrait(args: &MachineArgs, word: &str, depth: usize, as_dot: bool) -> CliResult<Output> {
    let m = machine(args)?;
    let f = m.canonicalize(&parse_word(&m, word)?)?;
    let p = m.portrait(&f, depth)?;
    let text = if as_dot { p.to_dot() } else { p.to_text() };
    let nodes: Vec<Value> = p
        .nodes
        .iter()
        .map(|n| {
            let map: Vec<[String; 2]> = n
                .map
                .iter()
                .map(|&(a, b)| [m.value_name(a).to_string(), m.value_name(b).to_string()])
                .collect();
            json!({ "address": value_names(&m, &n.address), "map": map })
        })
        .collect();
    Ok(Output::ok(text, json!({ "depth": depth, "nodes": nodes })))
}

fn dot(args: &MachineArgs, word: Option<&str>, out: Option<&std::path::Path>) -> CliResult<Output> {
    let m = machine(args)?;
    let (text, states) = match word {
        Some(w) => {
            let f = m.canonicalize(&parse_word(&m, w)?)?;
            (m.machine_dot(&f), f.states())
        }
        None => (m.cayley_dot(), m.base().order()),
    };
    match out {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| crate::input::CliError(format!("{}: {e}", path.display())))?;
            let message = format!("wrote {} ({states} states)\n", path.display());
            Ok(Output::ok(message, json!({ "path": path.display().to_string(), "states": states })))
        }
        None => Ok(Output::ok(text.clone(), json!({ "states": states, "dot": text }))),
    }
}

fn mem(s: &FiniteSemigroup, word: Option<&str>, index: bool) -> CliResult<Output> {
    if word.is_none() && !index {
        return fail("mem needs --word or --index");
    }
    let mut text = String::new();
    let mut data = serde_json::Map::new();
    if let Some(w) = word {
        let m = expansions::phi_mem(s, &parse_elements(s, w)?)?;
        let _ = writeln!(text, "{}", m.display(s));
        data.insert("element".into(), json!(s.element_name(m.element)));
        data.insert("memory".into(), json!(names(s, &m.memory.to_vec())));
    }
    if index {
        let i = expansions::mem_aperiodicity_index(s)?;
        let _ = writeln!(text, "mem aperiodicity index: {}", optional(i));
        data.insert("aperiodicity_index".into(), json!(i));
    }
    Ok(Output::ok(text, Value::Object(data)))
}

fn rhodes(action: &RhodesAction) -> CliResult<Output> {
    let (s, reduced) = match action {
        RhodesAction::Reduce { input, word } => {
            let s = load(input)?;
            let chain = parse_elements(&s, word)?;
            let r = expansions::rhodes_reduce(&s, &chain)?;
            (s, r)
        }
        RhodesAction::Mul { input, left, right } => {
            let s = load(input)?;
            let u = expansions::rhodes_reduce(&s, &parse_elements(&s, left)?)?;
            let v = expansions::rhodes_reduce(&s, &parse_elements(&s, right)?)?;
            let r = expansions::rhodes_mul(&s, &u, &v)?;
            (s, r)
        }
    };
    let ExpansionWord { chain } = reduced;
    let out = names(&s, &chain);
    Ok(Output::ok(format!("{}\n", out.join(",")), json!({ "chain": out })))
}

fn divide(s: &FiniteSemigroup, ideal: &str, max_len: usize) -> CliResult<Output> {
    let mut i = parse_ids(s, ideal)?;
    let normal = s.with_identity_and_zero();
    if s.zero().is_none() {
        i.insert(normal.zero().expect("normalized"));
    }
    let verdict = expansions::division_check(&normal, &i, max_len)?;
    let mut text = String::new();
    if normal.order() != s.order() {
        let _ = writeln!(text, "normalized to {} (order {})", normal.name(), normal.order());
    }
    let _ = writeln!(text, "words checked: {}", verdict.words_checked);
    let _ = writeln!(text, "mem classes: {}", verdict.mem_classes);
    let counterexample = verdict
        .counterexample
        .as_ref()
        .map(|(u, v)| [names(&normal, u), names(&normal, v)]);
    match &counterexample {
        None => text.push_str("division holds\n"),
        Some([u, v]) => {
            let _ = writeln!(text, "counterexample: {} vs {}", u.join(","), v.join(","));
        }
    }
    let data = json!({
        "normalized": normal.order() != s.order(),
        "words_checked": verdict.words_checked,
        "mem_classes": verdict.mem_classes,
        "counterexample": counterexample,
    });
    Ok(Output::verdict(text, data, verdict.holds()))
}

fn context(args: &TowerArgs) -> CliResult<TowerContext> {
    let s = load(&args.input)?;
    let t = parse_ids(&s, &args.ideal)?;
    let j = parse_ids(&s, &args.jclass)?;
    Ok(TowerContext::new(&s, &t, &j)?)
}

fn tower(action: &TowerAction) -> CliResult<Output> {
    match action {
        TowerAction::Verify { tower, max_len, max } => {
            let ctx = context(tower)?;
            let s = ctx.semigroup();
            let verdict = ctx.verify_embedding(*max_len)?;
            let options = EnumOptions::with_max(*max);
            let (union, below, traced) = ctx.indices(&options)?;
            let additive = match (union, below, traced) {
                (Some(u), Some(b), Some(t)) => u <= b + t,
                _ => false,
            };
            let quotient = ctx.trace_matches_quotient(&options)?;
            let pair = |p: &Option<(Vec<ElementId>, Vec<ElementId>)>| {
                p.as_ref().map(|(f, g)| [names(s, f), names(s, g)])
            };
            let (morphism, injectivity) = (pair(&verdict.morphism_counterexample), pair(&verdict.injectivity_counterexample));
            let mut text = String::new();
            if ctx.normalized {
                let _ = writeln!(text, "normalized to {} (order {})", s.name(), s.order());
            }
            let _ = writeln!(text, "words checked: {}", verdict.words_checked);
            let line = |label: &str, c: &Option<[Vec<String>; 2]>| match c {
                None => format!("{label}: holds\n"),
                Some([f, g]) => format!("{label}: fails at {} / {}\n", f.join(","), g.join(",")),
            };
            text.push_str(&line("morphism law", &morphism));
            text.push_str(&line("injectivity", &injectivity));
            let _ = writeln!(
                text,
                "indices: T∪J {}, T {}, trace {} ({})",
                optional(union),
                optional(below),
                optional(traced),
                if additive { "additive" } else { "not additive" }
            );
            let _ = writeln!(text, "trace matches quotient: {quotient}");
            let data = json!({
                "normalized": ctx.normalized,
                "words_checked": verdict.words_checked,
                "morphism_counterexample": morphism,
                "injectivity_counterexample": injectivity,
                "index_union": union,
                "index_ideal": below,
                "index_trace": traced,
                "additive": additive,
                "trace_matches_quotient": quotient,
            });
            Ok(Output::verdict(text, data, verdict.holds() && additive && quotient))
        }
        TowerAction::Stable { tower, word, input } => {
            let ctx = context(tower)?;
            let m = ctx.full_machine();
            let f = parse_elements(ctx.semigroup(), word)?;
            let w = parse_word(m, input)?;
            let image = m.apply(&f, &w)?;
            let stable = ctx.is_stable(&f, &w)?;
            let out = value_names(m, &image);
            let text = format!(
                "output: {}\nJ-prefix: {} -> {}\nstable: {stable}\n",
                out.join(","),
                ctx.j_prefix_len(&w)?,
                ctx.j_prefix_len(&image)?
            );
            let data = json!({
                "output": out,
                "input_prefix": ctx.j_prefix_len(&w)?,
                "output_prefix": ctx.j_prefix_len(&image)?,
                "stable": stable,
            });
            Ok(Output::ok(text, data))
        }
    }
}

fn theorem(order: usize, max: usize) -> CliResult<Output> {
    let report = verify_theorem(order, &EnumOptions::with_max(max))?;
    let mut text = String::new();
    for c in &report.cases {
        let status = match c.status {
            EnumStatus::Complete => format!("complete, {} elements", c.cayley_elements),
            EnumStatus::Exceeded(b) => format!("exceeded {b}"),
        };
        let growth = match &c.free_growth {
            Some(g) => format!(", free growth on {} words: {}", g.words_checked, g.distinct),
            None => String::new(),
        };
        let _ = writeln!(
            text,
            "#{:<3} {:?} aperiodic={} cayley: {status}, index {}{growth} {}",
            c.index,
            c.table,
            c.aperiodic,
            optional(c.cayley_aperiodicity_index),
            if c.passed { "PASS" } else { "FAIL" }
        );
    }
    let _ = writeln!(
        text,
        "order {}: {} cases, {} aperiodic, {}",
        report.order,
        report.cases.len(),
        report.aperiodic_cases,
        if report.passed { "all pass" } else { "FAILED" }
    );
    let data = serde_json::to_value(&report).expect("serializable");
    Ok(Output::verdict(text, data, report.passed))
}

fn gen_order(order: usize) -> CliResult<Output> {
    let all = all_semigroups_of_order(order)?;
    let mut text = String::new();
    for s in &all {
        let _ = writeln!(text, "{} {:?}", s.name(), s.rows());
    }
    let _ = writeln!(text, "{} semigroups of order {order}", all.len());
    let data = json!({
        "order": order,
        "count": all.len(),
        "tables": all.iter().map(FiniteSemigroup::rows).collect::<Vec<_>>(),
    });
    Ok(Output::ok(text, data))
}
