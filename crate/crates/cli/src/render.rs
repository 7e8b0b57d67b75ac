use std::str::FromStr;

use clap::ValueEnum;
use num_traits::ToPrimitive;
use serde_json::Value;

use halfint::Rational;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

pub fn render(mut json: Value, dot: Option<String>, format: Format, approx: bool) -> Result<String, String> {
    if approx {
        add_approx(&mut json);
    }
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json).expect("value serializes");
            s.push('\n');
            Ok(s)
        }
        Format::Dot => dot.ok_or_else(|| "this report has no graph to render as DOT".to_string()),
        Format::Text => Ok(text(&json)),
    }
}

fn text(json: &Value) -> String {
    let mut out = String::new();
    match json {
        Value::Object(map) => {
            for (k, v) in map {
                out.push_str(k);
                out.push_str(": ");
                match v {
                    Value::String(s) => out.push_str(s),
                    other => out.push_str(&other.to_string()),
                }
                out.push('\n');
            }
        }
        other => {
            out.push_str(&other.to_string());
            out.push('\n');
        }
    }
    out
}

/// `"p/q"` or `"p"` with optional sign.
fn parse_rational(s: &str) -> Option<Rational> {
    let body = s.strip_prefix('-').unwrap_or(s);
    let (n, d) = body.split_once('/').unwrap_or((body, "1"));
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    if !(digits(n) && digits(d)) || d.bytes().all(|b| b == b'0') {
        return None;
    }
    Rational::from_str(s).ok()
}

/// Adds `<key>_approx` beside every object field holding a rational string.
fn add_approx(v: &mut Value) {
    match v {
        Value::Object(map) => {
            let extra: Vec<(String, Value)> = map
                .iter()
                .filter_map(|(k, val)| {
                    let r = parse_rational(val.as_str()?)?;
                    Some((format!("{k}_approx"), Value::from(r.to_f64()?)))
                })
                .collect();
            for val in map.values_mut() {
                add_approx(val);
            }
            map.extend(extra);
        }
        Value::Array(items) => items.iter_mut().for_each(add_approx),
        _ => {}
    }
}
