//! Report files: JSON arrays of [`ClaimReport`] and their text rendering.

use serde_json::Value;

use crate::error::{Error, Result};

use super::ClaimReport;

pub fn to_json(reports: &[ClaimReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("serializable");
    s.push('\n');
    s
}

fn field<'a>(v: &'a Value, key: &str, at: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::validation(at.to_string(), format!("missing field `{key}`")))
}

fn compact_system(v: &Value) -> String {
    let Some(map) = v.get("map").and_then(Value::as_object) else {
        return v.to_string();
    };
    let states: Vec<&str> = v
        .get("states")
        .and_then(Value::as_array)
        .map(|a| a.iter().filter_map(Value::as_str).collect())
        .unwrap_or_default();
    states
        .iter()
        .map(|s| {
            let targets: Vec<&str> = map
                .get(*s)
                .and_then(Value::as_array)
                .map(|a| a.iter().filter_map(Value::as_str).collect())
                .unwrap_or_default();
            format!("{s}→{{{}}}", targets.join(","))
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// Human-readable text for a report file's contents.
pub fn render(text: &str) -> Result<String> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::validation(".", e.to_string()))?;
    let items = value
        .as_array()
        .ok_or_else(|| Error::validation(".", "a report is a JSON array"))?;
    let mut out = String::new();
    for (i, r) in items.iter().enumerate() {
        let at = format!("[{i}]");
        let id = field(r, "claim_id", &at)?.as_str().unwrap_or_default();
        let status = field(r, "status", &at)?.as_str().unwrap_or_default();
        let n = field(r, "instances", &at)?.as_u64().unwrap_or_default();
        out.push_str(&format!("{id:<26} {status:<22} {n} instance(s)\n"));
        for note in field(r, "notes", &at)?.as_array().into_iter().flatten() {
            out.push_str(&format!("    {}\n", note.as_str().unwrap_or_default()));
        }
        for w in field(r, "witnesses", &at)?.as_array().into_iter().flatten() {
            if let Some(sys) = w.get("system") {
                out.push_str(&format!("    witness: {}\n", compact_system(sys)));
            }
            if let Some(min) = w.get("minimized") {
                out.push_str(&format!("    minimized: {}\n", compact_system(min)));
            }
            for p in w.get("evidence").and_then(Value::as_array).into_iter().flatten() {
                let name = p.get("name").and_then(Value::as_str).unwrap_or_default();
                let verdict = p.get("verdict");
                let value = verdict.and_then(|v| v.get("value")).and_then(Value::as_str).unwrap_or_default();
                let kind = verdict
                    .and_then(|v| v.get("certificate"))
                    .and_then(|c| c.get("kind"))
                    .and_then(Value::as_str)
                    .unwrap_or_default();
                out.push_str(&format!("      {name}: {value} ({kind})\n"));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{find_claim, run_claim, Family};

    #[test]
    fn renders_counterexample() {
        let r = run_claim(&find_claim("T5.4").unwrap(), &[Family::Exhaustive { n: 2 }]).unwrap();
        let text = render(&to_json(&[r])).unwrap();
        assert!(text.starts_with("T5.4"));
        assert!(text.contains("COUNTEREXAMPLE"));
        assert!(text.contains("minimized: 0→{1}, 1→{0}"));
        assert!(render("{}").is_err());
    }
}
