//! One function per subcommand. Every command computes fully, then
//! writes through a single handle, so output is never interleaved and
//! is deterministic for fixed inputs and flags.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use num_bigint::BigUint;
use serde_json::{json, Value};

use hypermono::brute::{self, ScanOptions};
use hypermono::exact;
use hypermono::models::render::{cycle_graph_dot, gluing_svg};
use hypermono::models::{self, GluingDiagram};
use hypermono::{Hypermap, Permutation};

use crate::record::OutputRecord;
use crate::{CliError, ConvertTarget, Ctx, EnumerateOpts, RenderFormat, StreamFormat, TableFormat};

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

enum CountFamily {
    Hultman,
    Reduced,
    Genus,
}

fn parse_family(kind: &str) -> Result<CountFamily, CliError> {
    match kind.to_ascii_lowercase().as_str() {
        "h" | "hultman" => Ok(CountFamily::Hultman),
        "r" | "reduced" => Ok(CountFamily::Reduced),
        "u" | "genus" => Ok(CountFamily::Genus),
        other => Err(usage(format!(
            "unknown count family \"{other}\"; use H, r or u"
        ))),
    }
}

fn two_args(args: &[u64], kind: &str) -> Result<(usize, usize), CliError> {
    match args {
        [n, k] => Ok((*n as usize, *k as usize)),
        _ => Err(usage(format!(
            "count {kind} takes exactly two arguments: n k"
        ))),
    }
}

pub fn count(
    ctx: &Ctx,
    kind: &str,
    args: &[u64],
    verify: bool,
    force: bool,
) -> Result<(), CliError> {
    let scan = ScanOptions { force, ..ctx.scan };
    let family = parse_family(kind)?;
    let (label, params, value, scan_size) = match family {
        CountFamily::Hultman => {
            let (n, k) = two_args(args, "H")?;
            if n < 1 || k < 1 {
                return Err(usage("count H needs n >= 1 and k >= 1"));
            }
            ("H", json!({"n": n, "k": k}), exact::hultman(n, k), Some(n))
        }
        CountFamily::Reduced => {
            let (n, k) = two_args(args, "r")?;
            if n < 2 || k < 1 || 2 * k > n {
                return Err(usage(format!(
                    "count r needs n >= 2 and 1 <= k <= n/2 (got n = {n}, k = {k})"
                )));
            }
            (
                "r",
                json!({"n": n, "k": k}),
                exact::reduced_count(n, k),
                Some(n),
            )
        }
        CountFamily::Genus => {
            let g = match args {
                [g] => *g as usize,
                _ => return Err(usage("count u takes exactly one argument: g")),
            };
            (
                "u",
                json!({"g": g}),
                exact::u_of_g(g),
                if g == 0 { None } else { Some(4 * g) },
            )
        }
    };

    let mut provenance = "formula";
    let mut note = None;
    if verify {
        let feasible = scan_size.is_none_or(|m| m <= scan.limit || scan.force);
        if !feasible {
            note = Some(format!(
                "verify: skipped, scan needs m = {} above limit {} (use --force)",
                scan_size.unwrap_or(0),
                scan.limit
            ));
        } else {
            let scanned = match family {
                CountFamily::Hultman => {
                    let (n, k) = two_args(args, "H")?;
                    brute::count_by_cycles(n, &scan)?.get(k)
                }
                CountFamily::Reduced => {
                    let (n, k) = two_args(args, "r")?;
                    brute::count_reduced(n, &scan)?.get(k)
                }
                CountFamily::Genus => {
                    let g = args[0] as usize;
                    let mut total = BigUint::default();
                    if g >= 1 {
                        for m in 2 * g + 1..=4 * g {
                            total += brute::count_reduced(m, &scan)?.get(m - 2 * g);
                        }
                    }
                    total
                }
            };
            if scanned != value {
                return Err(CliError::Mismatch(format!(
                    "count {label} {params}: formula gives {value}, scan gives {scanned}"
                )));
            }
            provenance = "both-agree";
            note = Some("verify: scan agrees".to_string());
        }
    }

    if ctx.json {
        let mut record = OutputRecord::new("count", provenance).value(value.to_string());
        record.parameters = match params {
            Value::Object(map) => map,
            _ => unreachable!(),
        };
        record = record.param("family", label);
        println!("{}", record.line());
    } else {
        println!("{value}");
        if let Some(note) = note {
            println!("{note}");
        }
    }
    Ok(())
}

/// Cells of one table row; out-of-domain cells are `None` and print blank.
fn table_row(hultman: bool, n: usize, cols: usize) -> Vec<Option<BigUint>> {
    (1..=cols)
        .map(|k| {
            if hultman {
                (k <= n).then(|| exact::hultman(n, k))
            } else {
                (n >= 2 && (1..=n / 2).contains(&k)).then(|| exact::reduced_count(n, k))
            }
        })
        .collect()
}

pub fn table(ctx: &Ctx, kind: &str, max_n: usize, format: TableFormat) -> Result<(), CliError> {
    let hultman = match parse_family(kind)? {
        CountFamily::Hultman => true,
        CountFamily::Reduced => false,
        CountFamily::Genus => return Err(usage("table supports the H and r families")),
    };
    let (start, cols) = if hultman {
        if max_n < 1 {
            return Err(usage("table H needs max_n >= 1"));
        }
        (1, max_n)
    } else {
        if max_n < 3 {
            return Err(usage("table r needs max_n >= 3"));
        }
        (3, max_n / 2)
    };
    let rows: Vec<(usize, Vec<Option<BigUint>>)> = (start..=max_n)
        .map(|n| (n, table_row(hultman, n, cols)))
        .collect();

    if ctx.json {
        let value: Vec<Value> = rows
            .iter()
            .map(|(n, cells)| {
                json!({
                    "n": n,
                    "cells": cells
                        .iter()
                        .map(|c| c.as_ref().map(|v| Value::String(v.to_string())).unwrap_or(Value::Null))
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        let record = OutputRecord::new("table", "formula")
            .param("family", if hultman { "H" } else { "r" })
            .param("max_n", max_n)
            .value(value);
        println!("{}", record.line());
        return Ok(());
    }

    let mut out = io::stdout().lock();
    match format {
        TableFormat::Csv => {
            let header: Vec<String> = std::iter::once("n".to_string())
                .chain((1..=cols).map(|k| k.to_string()))
                .collect();
            writeln!(out, "{}", header.join(","))?;
            for (n, cells) in &rows {
                let mut fields = vec![n.to_string()];
                fields.extend(
                    cells
                        .iter()
                        .map(|c| c.as_ref().map(ToString::to_string).unwrap_or_default()),
                );
                writeln!(out, "{}", fields.join(","))?;
            }
        }
        TableFormat::Text => {
            let mut widths = vec![0usize; cols + 1];
            widths[0] = rows
                .iter()
                .map(|(n, _)| n.to_string().len())
                .max()
                .unwrap_or(1);
            for (_, cells) in &rows {
                for (i, c) in cells.iter().enumerate() {
                    let w = c.as_ref().map(|v| v.to_string().len()).unwrap_or(0);
                    widths[i + 1] = widths[i + 1].max(w).max((i + 1).to_string().len());
                }
            }
            let mut header = format!("{:>w$}", "n", w = widths[0]);
            for (k, &w) in widths.iter().enumerate().skip(1) {
                header.push_str(&format!("  {k:>w$}"));
            }
            writeln!(out, "{header}")?;
            for (n, cells) in &rows {
                let mut line = format!("{:>w$}", n, w = widths[0]);
                for (i, c) in cells.iter().enumerate() {
                    let cell = c.as_ref().map(ToString::to_string).unwrap_or_default();
                    line.push_str(&format!("  {:>w$}", cell, w = widths[i + 1]));
                }
                writeln!(out, "{}", line.trim_end())?;
            }
        }
    }
    Ok(())
}

fn stream_maps(
    ctx: &Ctx,
    query: &str,
    params: Value,
    maps: impl Iterator<Item = Hypermap>,
    formula: BigUint,
    format: StreamFormat,
) -> Result<(), CliError> {
    let json_stream = ctx.json || format == StreamFormat::Json;
    let mut out = io::BufWriter::new(io::stdout().lock());
    let mut count = BigUint::default();
    for h in maps {
        count += 1u32;
        if json_stream {
            let line = serde_json::to_string(&h.to_record(ctx.base))
                .expect("hypermap records always serialize");
            writeln!(out, "{line}")?;
        } else {
            let class = h.class();
            writeln!(
                out,
                "m={} k={} genus={} pi={} alpha={}",
                h.point_count(),
                class.k,
                class.genus,
                h.face().to_cycle_string(ctx.base),
                h.alpha().to_cycle_string(ctx.base)
            )?;
        }
    }
    let agree = count == formula;
    if json_stream {
        let mut record = OutputRecord::new(query, if agree { "both-agree" } else { "bruteforce" })
            .value(json!({"count": count.to_string(), "formula": formula.to_string()}));
        if let Value::Object(map) = params {
            record.parameters = map;
        }
        writeln!(out, "{}", record.line())?;
    } else {
        writeln!(
            out,
            "count={count} formula={formula} {}",
            if agree { "OK" } else { "MISMATCH" }
        )?;
    }
    out.flush()?;
    if agree {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!(
            "{query}: enumerated {count} maps but the formula gives {formula}"
        )))
    }
}

pub fn enumerate_nk(ctx: &Ctx, m: usize, k: usize, opts: &EnumerateOpts) -> Result<(), CliError> {
    if m < 1 || k < 1 || k > m {
        return Err(usage("enumerate nk needs m >= 1 and 1 <= k <= m"));
    }
    let scan = ScanOptions {
        force: opts.force,
        ..ctx.scan
    };
    let maps = brute::enumerate_reduced(m, k, &scan)?;
    let formula = if m >= 2 && (1..=m / 2).contains(&k) {
        exact::reduced_count(m, k)
    } else {
        BigUint::default()
    };
    stream_maps(
        ctx,
        "enumerate nk",
        json!({"m": m, "k": k}),
        maps,
        formula,
        opts.format,
    )
}

pub fn enumerate_genus(ctx: &Ctx, g: usize, opts: &EnumerateOpts) -> Result<(), CliError> {
    let scan = ScanOptions {
        force: opts.force,
        ..ctx.scan
    };
    let maps = brute::enumerate_by_genus(g, &scan)?;
    stream_maps(
        ctx,
        "enumerate genus",
        json!({"g": g}),
        maps,
        exact::u_of_g(g),
        opts.format,
    )
}

/// Re-derives every view of every face of size `m` and reports the
/// first disagreement, if any.
fn cross_check_models(m: usize, scan: &ScanOptions) -> Result<usize, String> {
    let mut checked = 0;
    for pi in brute::circular_faces(m, scan).map_err(|e| e.to_string())? {
        checked += 1;
        let h = Hypermap::from_standard_face(pi.clone()).expect("circular faces build maps");
        let graph = models::build_cycle_graph(&pi).expect("circular");
        if graph.cycle_count() != h.class().k {
            return Err(format!(
                "cycle graph of pi={} has {} alternating cycles but alpha has {} cycles",
                pi.to_cycle_string(0),
                graph.cycle_count(),
                h.class().k
            ));
        }
        if &models::alpha_from_cycle_graph(&graph) != h.alpha() {
            return Err(format!(
                "cycle graph of pi={} projects to the wrong alpha",
                pi.to_cycle_string(0)
            ));
        }
        let d = models::gluing_from_pi(&pi).expect("circular");
        if d.genus() != h.genus() || d.vertex_class_count() != h.class().k + 1 {
            return Err(format!(
                "gluing of pi={} gives genus {} and {} vertices; algebra gives genus {} and {} hyperedges",
                pi.to_cycle_string(0),
                d.genus(),
                d.vertex_class_count(),
                h.genus(),
                h.class().k
            ));
        }
        match models::pi_from_gluing(&d) {
            Ok(back) if back == pi => {}
            _ => {
                return Err(format!(
                    "gluing of pi={} does not round-trip",
                    pi.to_cycle_string(0)
                ))
            }
        }
    }
    Ok(checked)
}

pub fn verify(ctx: &Ctx, max_m: usize, force: bool) -> Result<(), CliError> {
    if max_m < 1 {
        return Err(usage("verify needs max_m >= 1"));
    }
    let scan = ScanOptions { force, ..ctx.scan };
    for m in 1..=max_m {
        let report = brute::distribution_check(m, &scan)?;
        if let Some(first) = report.mismatches.first() {
            return Err(CliError::Mismatch(format!(
                "m = {m}, k = {}: scan gives {} but the formula gives {} ({:?} family)",
                first.k, first.scanned, first.formula, first.family
            )));
        }
        let reduced: Vec<String> = (1..=m / 2)
            .map(|k| format!("k={k}:{}", exact::reduced_count(m, k)))
            .collect();
        if ctx.json {
            let record = OutputRecord::new("verify", "both-agree")
                .param("m", m)
                .value(json!({
                    "faces": exact::factorial(m - 1).to_string(),
                    "hultman": "ok",
                    "reduced": "ok",
                    "reduced_counts": reduced,
                }));
            println!("{}", record.line());
        } else {
            println!(
                "m={m}: {} faces scanned; H ok; r ok{}{}",
                exact::factorial(m - 1),
                if reduced.is_empty() { "" } else { "; reduced " },
                reduced.join(" ")
            );
        }
    }

    let model_max = max_m.min(7);
    let mut faces = 0;
    for m in 1..=model_max {
        faces += cross_check_models(m, &scan).map_err(CliError::Mismatch)?;
    }
    if ctx.json {
        let record = OutputRecord::new("verify-models", "both-agree")
            .param("max_m", model_max)
            .value(json!({"faces": faces, "status": "ok"}));
        println!("{}", record.line());
    } else {
        println!(
            "models: {faces} faces through m={model_max} agree across cycle graph, gluing and algebra"
        );
    }
    Ok(())
}

fn parse_word(text: &str, base: usize) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|part| {
            let part = part.trim();
            let v: usize = part
                .parse()
                .map_err(|_| usage(format!("--gluing: \"{part}\" is not a number")))?;
            v.checked_sub(base)
                .ok_or_else(|| usage(format!("--gluing: label {v} is below base {base}")))
        })
        .collect()
}

fn input_pi(
    ctx: &Ctx,
    pi: Option<&str>,
    alpha: Option<&str>,
    m: Option<usize>,
    gluing: Option<&str>,
) -> Result<Permutation, CliError> {
    let given = pi.is_some() as u8 + alpha.is_some() as u8 + gluing.is_some() as u8;
    if given != 1 {
        return Err(usage("provide exactly one of --pi, --alpha or --gluing"));
    }
    if let Some(text) = pi {
        let p = Permutation::parse_cycles(text, m, ctx.base)
            .map_err(|e| usage(format!("--pi: {e}")))?;
        if !p.is_circular() {
            return Err(usage("--pi must be a single cycle"));
        }
        Ok(p)
    } else if let Some(text) = alpha {
        let a = Permutation::parse_cycles(text, m, ctx.base)
            .map_err(|e| usage(format!("--alpha: {e}")))?;
        let sigma = Permutation::standard_circular(a.point_count());
        let p = a
            .inverse()
            .compose(&sigma)
            .expect("same point count by construction");
        if !p.is_circular() {
            return Err(usage(
                "--alpha does not describe a unicellular monopole: its face rotation splits into several cycles",
            ));
        }
        Ok(p)
    } else {
        let word = parse_word(gluing.expect("checked above"), ctx.base)?;
        let d = GluingDiagram::from_pairing(word).map_err(|e| usage(format!("--gluing: {e}")))?;
        models::pi_from_gluing(&d).map_err(|e| usage(format!("--gluing: {e}")))
    }
}

pub fn convert(
    ctx: &Ctx,
    pi: Option<&str>,
    alpha: Option<&str>,
    m: Option<usize>,
    gluing: Option<&str>,
    to: ConvertTarget,
) -> Result<(), CliError> {
    let p = input_pi(ctx, pi, alpha, m, gluing)?;
    let (kind, value, text) = match to {
        ConvertTarget::Pi => {
            let s = p.to_cycle_string(ctx.base);
            ("pi", Value::String(s.clone()), s)
        }
        ConvertTarget::Alpha => {
            let h = Hypermap::from_standard_face(p).expect("circular faces build maps");
            let s = h.alpha().to_cycle_string(ctx.base);
            ("alpha", Value::String(s.clone()), s)
        }
        ConvertTarget::Cyclegraph => {
            let graph = models::build_cycle_graph(&p).expect("circular");
            let cycles: Vec<Vec<String>> = graph
                .alternating_cycles()
                .iter()
                .map(|c| c.iter().map(|v| v.label(ctx.base)).collect())
                .collect();
            let text = cycles
                .iter()
                .map(|c| c.join(" "))
                .collect::<Vec<_>>()
                .join("\n");
            ("cyclegraph", json!(cycles), text)
        }
        ConvertTarget::Gluing => {
            let d = models::gluing_from_pi(&p).expect("circular");
            let s = d
                .pairing()
                .iter()
                .map(|&g| (g + ctx.base).to_string())
                .collect::<Vec<_>>()
                .join(",");
            ("gluing", Value::String(s.clone()), s)
        }
    };
    if ctx.json {
        let record = OutputRecord::new("convert", "formula")
            .param("to", kind)
            .value(value);
        println!("{}", record.line());
    } else {
        println!("{text}");
    }
    Ok(())
}

pub fn render(
    ctx: &Ctx,
    pi: &str,
    format: RenderFormat,
    out: Option<&Path>,
) -> Result<(), CliError> {
    let p = input_pi(ctx, Some(pi), None, None, None)?;
    let content = match format {
        RenderFormat::Svg => gluing_svg(&models::gluing_from_pi(&p).expect("circular"), ctx.base),
        RenderFormat::Dot => {
            cycle_graph_dot(&models::build_cycle_graph(&p).expect("circular"), ctx.base)
        }
    };
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

pub fn oeis(_ctx: &Ctx, kind: &str, count: usize, out: Option<&Path>) -> Result<(), CliError> {
    let values: Vec<BigUint> = match kind.to_ascii_lowercase().as_str() {
        "u" => (1..=count).map(exact::u_of_g).collect(),
        "h-flat" | "hflat" => {
            let mut v = Vec::with_capacity(count);
            'outer: for n in 1.. {
                for k in 1..=n {
                    if v.len() == count {
                        break 'outer;
                    }
                    v.push(exact::hultman(n, k));
                }
            }
            v
        }
        "r-flat" | "rflat" => {
            let mut v = Vec::with_capacity(count);
            'outer: for n in 3.. {
                for k in 1..=n / 2 {
                    if v.len() == count {
                        break 'outer;
                    }
                    v.push(exact::reduced_count(n, k));
                }
            }
            v
        }
        other => {
            return Err(usage(format!(
                "unknown sequence \"{other}\"; use u, H-flat or r-flat"
            )))
        }
    };
    let mut content = String::new();
    for (i, v) in values.iter().enumerate() {
        content.push_str(&format!("{} {}\n", i + 1, v));
    }
    match out {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}
