//! Rendering of command results as text, JSON, CSV or LaTeX.

use clap::ValueEnum;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rug::Float;
use serde_json::{json, Value};

use dyadic_core::{EvalContext, IntPolynomial, ScaledMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Tex,
}

pub struct Emission {
    pub json: Value,
    pub text: String,
    pub csv: String,
    pub tex: String,
    /// Outcome of the command's self-check.
    pub ok: bool,
}

impl Emission {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => serde_json::to_string_pretty(&self.json).expect("json values serialize") + "\n",
            Format::Csv => self.csv.clone(),
            Format::Tex => self.tex.clone(),
        }
    }
}

/// Decimal digits carried by the working precision, capped for readability.
pub fn digits(ctx: &EvalContext) -> usize {
    ((ctx.precision() as f64 * std::f64::consts::LOG10_2) as usize).clamp(6, 60)
}

pub fn float_str(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.to_string_radix(10, Some(digits))
}

pub fn finite_or_null(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn scalar_string(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "null".into(),
        other => other.to_string(),
    }
}

/// "key: value" lines for a flat JSON object.
pub fn kv_text(v: &Value) -> String {
    let Value::Object(map) = v else { return format!("{v}\n") };
    map.iter()
        .filter(|(_, v)| !v.is_null())
        .map(|(k, v)| format!("{}: {}\n", k.replace('_', " "), scalar_string(v)))
        .collect()
}

/// Header row plus one value row for a flat JSON object.
pub fn kv_csv(v: &Value) -> String {
    let Value::Object(map) = v else { return format!("{v}\n") };
    let keys: Vec<&str> = map.keys().map(String::as_str).collect();
    let vals: Vec<String> = map.values().map(scalar_string).collect();
    format!("{}\n{}\n", keys.join(","), vals.join(","))
}

fn scale_string(log2_denom: i64) -> String {
    let p = BigInt::from(1) << log2_denom.unsigned_abs() as usize;
    if log2_denom >= 0 {
        format!("1/{p}")
    } else {
        p.to_string()
    }
}

pub fn matrix_emission(m: &ScaledMatrix, n: u32, r: i64, ok: bool) -> Emission {
    let rows: Vec<Vec<String>> = m.rows().iter().map(|row| row.iter().map(BigInt::to_string).collect()).collect();
    let json = json!({
        "n": n,
        "r": r,
        "basis": m.basis().name(),
        "log2_denom": m.log2_denom(),
        "scale": scale_string(m.log2_denom()),
        "entries": rows,
    });
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    let mut text = format!("n: {n}\nr: {r}\nbasis: {}\nscale: {}\n", m.basis().name(), scale_string(m.log2_denom()));
    for row in &rows {
        let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        text.push_str(&cells.join(" "));
        text.push('\n');
    }
    let csv = rows.iter().map(|row| row.join(",") + "\n").collect();
    let body: Vec<String> = rows.iter().map(|row| row.join(" & ")).collect();
    let prefix = match m.log2_denom() {
        0 => String::new(),
        d if d > 0 => format!("\\frac{{1}}{{2^{{{d}}}}}"),
        d => format!("2^{{{}}}", -d),
    };
    let tex = format!("{prefix}\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}\n", body.join(" \\\\\n"));
    Emission { json, text, csv, tex, ok }
}

pub fn tex_poly(f: &IntPolynomial) -> String {
    let mut out = String::new();
    for (k, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let coef = if k > 0 && mag == BigInt::from(1) { String::new() } else { mag.to_string() };
        let var = match k {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{{{k}}}"),
        };
        match (out.is_empty(), c.is_negative()) {
            (true, false) => {}
            (true, true) => out.push('-'),
            (false, false) => out.push_str(" + "),
            (false, true) => out.push_str(" - "),
        }
        out.push_str(&coef);
        out.push_str(&var);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn tex_table(t: &[Vec<i64>]) -> String {
    let cols = "c".repeat(t.len());
    let rows: Vec<String> =
        t.iter().map(|row| row.iter().map(i64::to_string).collect::<Vec<_>>().join(" & ")).collect();
    format!("\\begin{{array}}{{{cols}}}\n{}\n\\end{{array}}\n", rows.join(" \\\\\n"))
}
