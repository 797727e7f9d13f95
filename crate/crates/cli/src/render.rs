use std::fmt::Write;

use crate::record::*;

pub fn render_json(record: &OutputRecord) -> String {
    serde_json::to_string_pretty(record).expect("records serialize")
}

fn tuple(v: &[String]) -> String {
    format!("({})", v.join(","))
}

fn levi(names: &[String]) -> String {
    if names.is_empty() {
        "∅".into()
    } else {
        format!("{{{}}}", names.join(","))
    }
}

fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let widths: Vec<usize> = (0..header.len())
        .map(|j| {
            rows.iter()
                .map(|r| r[j].chars().count())
                .chain([header[j].chars().count()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: Vec<&str>| {
        let mut s = String::new();
        for (c, w) in cells.iter().zip(&widths) {
            let pad = w - c.chars().count();
            let _ = write!(s, "{c}{}  ", " ".repeat(pad));
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    out += &line(widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>().iter().map(String::as_str).collect());
    for r in rows {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

fn certificate_summary(t: &Option<TraceRecord>) -> String {
    match t {
        None => "-".into(),
        Some(t) => {
            let test = match &t.semistability {
                SemistabilityRecord::Torus { origin_in_hull } => format!("torus hull contains 0: {origin_in_hull}"),
                SemistabilityRecord::Reductive { candidates } => {
                    format!("{} candidate(s) checked", candidates.len())
                }
            };
            format!("graded dim {}, Levi⊥ rank {}, {test}", t.graded_dim, t.perp_rank)
        }
    }
}

fn stratum_cells(r: &StratumRow) -> Vec<String> {
    vec![
        tuple(&r.mu),
        tuple(&r.lambda),
        r.m.to_string(),
        r.q2.clone(),
        levi(&r.parabolic),
        r.dim_saturation.to_string(),
        r.dim_stratum.to_string(),
        certificate_summary(&r.certificate),
    ]
}

const STRATUM_HEADER: [&str; 8] = ["label", "λ", "m", "q²", "Levi of P", "dim V≥1", "dim S", "nonempty certificate"];

fn weights(ws: &[WeightRecord]) -> String {
    ws.iter()
        .map(|w| {
            if w.mult == 1 {
                tuple(&w.weight)
            } else {
                format!("{}×{}", tuple(&w.weight), w.mult)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render_human(record: &OutputRecord) -> String {
    let mut out = String::new();
    let inputs = &record.inputs;
    let _ = write!(out, "{} {}", record.command, inputs.datum);
    if let Some(l) = &inputs.lattice {
        let _ = write!(out, " (lattice {l})");
    }
    if let Some(g) = &inputs.gram_scales {
        let _ = write!(out, " (Gram scales {})", g.join(","));
    }
    out.push('\n');
    match &record.results {
        Results::Strata { rows } => {
            let cells: Vec<Vec<String>> = rows.iter().map(stratum_cells).collect();
            out += &table(&STRATUM_HEADER, &cells);
        }
        Results::Optimal(k) => {
            let _ = writeln!(out, "μ         {}", tuple(&k.mu));
            let _ = writeln!(out, "λ         {}", tuple(&k.lambda));
            let _ = writeln!(out, "m         {}", k.m);
            let _ = writeln!(out, "q²        {}", k.q2);
            let _ = writeln!(out, "dominant  {}", tuple(&k.dominant));
            let pairs: Vec<String> = k
                .active_set
                .iter()
                .zip(&k.multipliers)
                .map(|(a, c)| format!("{a}:{c}"))
                .collect();
            let _ = writeln!(out, "active    {}", pairs.join(" "));
        }
        Results::MuP(r) => {
            let _ = writeln!(out, "Levi      {}", levi(inputs.levi.as_deref().unwrap_or(&[])));
            let _ = writeln!(out, "Δ_P       {}", levi(&r.delta_p));
            let _ = writeln!(out, "μ_P       {}", tuple(&r.mu_p));
            let _ = writeln!(out, "cone      {}", tuple(&r.cone_route));
            let _ = writeln!(out, "closed    {}", tuple(&r.closed_form_route));
        }
        Results::Induce(r) => {
            let _ = writeln!(out, "Levi      {}", levi(inputs.levi.as_deref().unwrap_or(&[])));
            let _ = writeln!(out, "stratum   {}", inputs.stratum.as_deref().unwrap_or("trivial"));
            let _ = writeln!(out, "status    {}", r.status.to_uppercase());
            let _ = writeln!(out, "method    {}", r.method);
            let _ = writeln!(out, "η         {}", tuple(&r.eta));
            let _ = writeln!(out, "blade     {}", if r.blade_nonempty { "nonempty" } else { "not certified" });
            let _ = writeln!(out, "W_sub     {}", weights(&r.w_sub));
            if let Some(row) = &r.induced {
                out += &table(&STRATUM_HEADER, &[stratum_cells(row)]);
            }
            if let Some(f) = &r.fallback {
                let _ = writeln!(
                    out,
                    "fallback  {} q² {} (seed {:#x}, {} samples, {} evaluated, best effort)",
                    tuple(&f.mu),
                    f.q2,
                    f.seed,
                    f.samples,
                    f.evaluated
                );
            }
        }
    }
    for d in &record.diagnostics {
        match &d.label {
            Some(l) => {
                let _ = writeln!(out, "[{}] {}: {}", d.kind, tuple(l), d.message);
            }
            None => {
                let _ = writeln!(out, "[{}] {}", d.kind, d.message);
            }
        }
    }
    out
}
