//! CSV rendering and the standalone SVG plot.

use std::fmt::Write as _;

use lgryd::coupling::{AggregateTotal, Channel, ChannelGroup, ChannelResult, CompositeTotal, SweepRow};

use crate::error::CliError;

/// Ten significant digits, no negative zero.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        return format!("{:.9e}", 0.0);
    }
    format!("{x:.9e}")
}

fn to_string(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Csv(e.into_error().into()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

const CHANNEL_HEADER: [&str; 15] = [
    "l",
    "sigma",
    "q",
    "l1",
    "l2",
    "l3",
    "m1",
    "m2",
    "m3",
    "M_f",
    "final_state",
    "alpha",
    "beta",
    "N_f",
    "m_s",
];

fn channel_fields(c: &Channel) -> Vec<String> {
    vec![
        c.charge.to_string(),
        c.sigma.to_string(),
        c.q.to_string(),
        c.l1.to_string(),
        c.l2.to_string(),
        c.l3.to_string(),
        c.m1.to_string(),
        c.m2.to_string(),
        c.m3.to_string(),
        c.m_cm_f.to_string(),
        c.final_state.to_string(),
        c.alpha.to_string(),
        c.beta.to_string(),
        c.n_cm_f.to_string(),
        c.spin.to_string(),
    ]
}

pub fn channels_csv(channels: &[Channel]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CHANNEL_HEADER)?;
    for c in channels {
        w.write_record(channel_fields(c))?;
    }
    to_string(w)
}

pub fn rabi_csv(results: &[ChannelResult]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = CHANNEL_HEADER.to_vec();
    header.extend([
        "coeff",
        "radial_e",
        "radial_cm",
        "angular",
        "cg_weight",
        "fs_clebsch",
        "matrix_element",
        "rabi_kHz",
        "lambda_literal",
        "lambda_exact",
        "lambda_ratio",
        "closed",
    ]);
    w.write_record(&header)?;
    for r in results {
        let mut row = channel_fields(&r.channel);
        row.extend([
            num(r.coeff),
            num(r.radial_e),
            num(r.radial_cm),
            num(r.angular),
            num(r.cg_weight),
            num(r.fs_clebsch),
            num(r.matrix_element.re),
            num(r.rabi_khz),
            num(r.audit.literal),
            num(r.audit.exact),
            num(r.audit.ratio),
            r.closed.to_string(),
        ]);
        w.write_record(&row)?;
    }
    to_string(w)
}

/// Composite, per-(level, M_f) and per-level totals in one table.
pub fn totals_csv(
    composite: &[CompositeTotal],
    per_mf: &[AggregateTotal],
    per_level: &[AggregateTotal],
) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["scope", "final_state", "M_f", "N_f", "terms", "rabi_kHz"])?;
    for c in composite {
        w.write_record([
            "composite".to_string(),
            c.key.final_state.to_string(),
            c.key.m_cm_f.to_string(),
            c.key.n_cm_f.to_string(),
            c.channels.to_string(),
            num(c.rabi_khz),
        ])?;
    }
    for (scope, rows) in [("level_mf", per_mf), ("level", per_level)] {
        for a in rows {
            w.write_record([
                scope.to_string(),
                a.final_state.to_string(),
                a.m_cm_f.map_or(String::new(), |m| m.to_string()),
                String::new(),
                a.composites.to_string(),
                num(a.rabi_khz),
            ])?;
        }
    }
    to_string(w)
}

pub fn sweep_csv(rows: &[SweepRow]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["l", "group", "final_state", "rabi_kHz"])?;
    for r in rows {
        w.write_record([
            r.charge.to_string(),
            r.group.name().to_string(),
            r.final_state.to_string(),
            num(r.rabi_khz),
        ])?;
    }
    to_string(w)
}

pub fn wavefunction_csv(radii: &[f64], values: &[f64]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["r", "R", "rR"])?;
    for (r, v) in radii.iter().zip(values) {
        w.write_record([num(*r), num(*v), num(r * v)])?;
    }
    to_string(w)
}

const COLOURS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Rabi frequency against topological charge, one polyline per group.
pub fn sweep_svg(rows: &[SweepRow], log_scale: bool) -> String {
    let (width, height) = (640.0, 420.0);
    let (left, right, top, bottom) = (80.0, 150.0, 30.0, 55.0);
    let pw = width - left - right;
    let ph = height - top - bottom;
    let charges: Vec<i32> = {
        let mut v: Vec<i32> = rows.iter().map(|r| r.charge).collect();
        v.sort();
        v.dedup();
        v
    };
    let positive: Vec<f64> = rows.iter().map(|r| r.rabi_khz).filter(|v| *v > 0.0).collect();
    let (mut lo, mut hi) = positive
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(*v), b.max(*v)));
    if !lo.is_finite() {
        lo = 1e-3;
        hi = 1.0;
    }
    let tf = |v: f64| if log_scale { v.max(lo).log10() } else { v };
    let (mut ylo, mut yhi) = if log_scale {
        (lo.log10().floor(), hi.log10().ceil())
    } else {
        (0.0, hi * 1.1)
    };
    if yhi <= ylo {
        yhi = ylo + 1.0;
        if !log_scale {
            ylo = 0.0;
        }
    }
    let (xmin, xmax) = (
        f64::from(*charges.first().unwrap_or(&0)),
        f64::from(*charges.last().unwrap_or(&1)),
    );
    let xspan = if xmax > xmin { xmax - xmin } else { 1.0 };
    let px = |l: f64| left + (l - xmin) / xspan * pw;
    let py = |v: f64| top + ph - (tf(v) - ylo) / (yhi - ylo) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for &l in &charges {
        let x = px(f64::from(l));
        let _ = writeln!(
            s,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}" stroke="black"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{l}</text>"#,
            top + ph,
            top + ph + 5.0,
            top + ph + 20.0
        );
    }
    if log_scale {
        let mut d = ylo as i32;
        while f64::from(d) <= yhi {
            let y = top + ph - (f64::from(d) - ylo) / (yhi - ylo) * ph;
            let _ = writeln!(
                s,
                r##"<line x1="{left}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">1e{d}</text>"##,
                left + pw,
                left - 6.0,
                y + 4.0
            );
            d += 1;
        }
    } else {
        for k in 0..=5 {
            let v = ylo + (yhi - ylo) * f64::from(k) / 5.0;
            let y = top + ph - f64::from(k) / 5.0 * ph;
            let _ = writeln!(
                s,
                r##"<line x1="{left}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#dddddd"/><text x="{:.2}" y="{:.2}" text-anchor="end">{v:.3}</text>"##,
                left + pw,
                left - 6.0,
                y + 4.0
            );
        }
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">topological charge l</text>"#,
        left + pw / 2.0,
        height - 12.0
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">Rabi frequency (kHz)</text>"#,
        top + ph / 2.0,
        top + ph / 2.0
    );
    for (k, group) in ChannelGroup::ALL.iter().enumerate() {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.group == *group && (!log_scale || r.rabi_khz > 0.0))
            .map(|r| (px(f64::from(r.charge)), py(r.rabi_khz)))
            .collect();
        let colour = COLOURS[k % COLOURS.len()];
        if pts.len() > 1 {
            let path: Vec<String> = pts.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
            let _ = writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{colour}" stroke-width="2"/>"#,
                path.join(" ")
            );
        }
        for (x, y) in &pts {
            let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3.5" fill="{colour}"/>"#);
        }
        let ly = top + 10.0 + 20.0 * k as f64;
        let lx = left + pw + 12.0;
        let label = rows
            .iter()
            .find(|r| r.group == *group)
            .map(|r| format!("{} ({})", group.name(), r.final_state))
            .unwrap_or_else(|| group.name().to_string());
        let _ = writeln!(
            s,
            r#"<line x1="{lx:.2}" y1="{ly:.2}" x2="{:.2}" y2="{ly:.2}" stroke="{colour}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 18.0,
            lx + 22.0,
            ly + 4.0,
            label.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
        );
    }
    s.push_str("</svg>\n");
    s
}
