//! Text rendering of reports. Everything here is deterministic so that the
//! catalog can be compared byte for byte.

use std::fmt::Write;

use serde_json::{json, Value};
use unitgrp::classify::decide;
use unitgrp::{Class, FGAbelianGroup, FiniteAbelianGroup, StandardDecomposition, Verdict, WitnessDescription};

pub fn moduli(m: &[u64]) -> String {
    let parts: Vec<String> = m.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

pub fn witness(w: &WitnessDescription) -> String {
    let mut out = String::new();
    let status = if w.verified { "verified" } else { "unverified" };
    writeln!(out, "witness: {} ({status})", w.kind).unwrap();
    if !w.moduli.is_empty() {
        writeln!(out, "moduli: {}", moduli(&w.moduli)).unwrap();
    }
    if !w.generators.is_empty() {
        writeln!(out, "generators (component i as a polynomial in x = ζ_(m_i)):").unwrap();
    }
    for (i, g) in w.generators.iter().enumerate() {
        let comps: Vec<String> = g.components().iter().map(|c| format!("({c})")).collect();
        writeln!(out, "  {}: {}", i + 1, comps.join(", ")).unwrap();
    }
    if w.laurent_vars > 0 {
        writeln!(out, "laurent_vars: {}", w.laurent_vars).unwrap();
    }
    writeln!(out, "notes: {}", w.notes).unwrap();
    out
}

pub fn verdict(v: &Verdict) -> String {
    let mut out = String::new();
    writeln!(out, "group: {}", v.group).unwrap();
    writeln!(out, "class: {}", v.class).unwrap();
    writeln!(out, "realizable: {}", if v.realizable { "yes" } else { "no" }).unwrap();
    match v.min_rank {
        Some(r) => writeln!(out, "min_rank: {r}").unwrap(),
        None => writeln!(out, "min_rank: -").unwrap(),
    }
    writeln!(out, "reason: {}", v.reason).unwrap();
    if let Some(w) = &v.witness {
        out.push_str(&witness(w));
    }
    out
}

pub fn gmin(t: &FiniteAbelianGroup, sd: &StandardDecomposition, m0t: &[u64], mt: &[u64]) -> String {
    let mut out = String::new();
    writeln!(out, "T = {t}").unwrap();
    writeln!(out, "g = {}", sd.g()).unwrap();
    let odd: Vec<String> = sd.odd_parts.iter().map(|&(p, a)| p.pow(a).to_string()).collect();
    let two: Vec<String> = sd.eps_list.iter().map(|&e| (1u64 << e).to_string()).collect();
    writeln!(
        out,
        "standard decomposition: 2^eps = {}, sigma = {}, larger 2-parts [{}], odd parts [{}]",
        sd.two_eps(),
        sd.sigma,
        two.join(", "),
        odd.join(", ")
    )
    .unwrap();
    writeln!(out, "s = {}, s0 = {}, rho = {}, d = {}, c(T) = {}", sd.s, sd.s0, sd.rho, sd.d, sd.c_term()).unwrap();
    writeln!(out, "M_0T = {}", moduli(m0t)).unwrap();
    writeln!(out, "M_T = {}", moduli(mt)).unwrap();
    out
}

pub struct CatalogRow {
    pub group: FiniteAbelianGroup,
    pub min_rank: Option<u64>,
    pub realizable: Vec<bool>,
}

/// Applies the decider to every `T × Z^r`, `r ≤ max_rank`. Witnesses are
/// not verified (budget 0): the table reports realizability only.
pub fn catalog_rows(groups: &[FiniteAbelianGroup], class: Class, max_rank: u64) -> Vec<CatalogRow> {
    groups
        .iter()
        .map(|t| {
            let verdicts: Vec<Verdict> =
                (0..=max_rank).map(|r| decide(class, &FGAbelianGroup::new(t.clone(), r), 0)).collect();
            CatalogRow {
                group: t.clone(),
                min_rank: verdicts[0].min_rank,
                realizable: verdicts.iter().map(|v| v.realizable).collect(),
            }
        })
        .collect()
}

pub fn catalog_json(rows: &[CatalogRow]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| json!({ "group": r.group.to_string(), "min_rank": r.min_rank, "realizable": r.realizable }))
            .collect(),
    )
}

pub fn catalog_table(class: Class, max_rank: u64, rows: &[CatalogRow]) -> String {
    let width = rows.iter().map(|r| r.group.to_string().chars().count()).max().unwrap_or(5).max(5);
    let mut out = String::new();
    writeln!(out, "# class {class}, free ranks 0..={max_rank}; Y = realizable").unwrap();
    let ranks: Vec<String> = (0..=max_rank).map(|r| r.to_string()).collect();
    writeln!(out, "{:<width$}  min_rank  {}", "group", ranks.join(" ")).unwrap();
    for r in rows {
        let marks: Vec<String> = r
            .realizable
            .iter()
            .zip(&ranks)
            .map(|(&y, label)| format!("{:<w$}", if y { "Y" } else { "." }, w = label.len()))
            .collect();
        let min = r.min_rank.map_or("-".to_string(), |m| m.to_string());
        writeln!(out, "{:<width$}  {:<8}  {}", r.group.to_string(), min, marks.join(" ")).unwrap();
    }
    out
}
