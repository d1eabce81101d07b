//! Flat `key=value` run configs.
//!
//! One field per line; values are JSON literals, except that bare strings
//! may be written unquoted. Blank lines and `#` comments are ignored.

use std::collections::BTreeMap;

use serde::{de::DeserializeOwned, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub fields: BTreeMap<String, Value>,
}

impl RunConfig {
    pub fn from_value<T: Serialize>(x: &T) -> Result<RunConfig, String> {
        match serde_json::to_value(x).map_err(|e| e.to_string())? {
            Value::Object(m) => Ok(RunConfig {
                fields: m.into_iter().collect(),
            }),
            _ => Err("config must be a record".into()),
        }
    }

    pub fn to_value<T: DeserializeOwned>(&self) -> Result<T, String> {
        let m: Map<String, Value> = self.fields.clone().into_iter().collect();
        serde_json::from_value(Value::Object(m)).map_err(|e| format!("bad config: {e}"))
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("# bimodal run config\n");
        // the command first, then the rest alphabetically
        let mut keys: Vec<&String> = self.fields.keys().collect();
        keys.sort_by_key(|k| (k.as_str() != "command", k.as_str()));
        for k in keys {
            let v = &self.fields[k];
            let text = match v {
                Value::String(s) if bare_ok(s) => s.clone(),
                _ => v.to_string(),
            };
            out.push_str(&format!("{k}={text}\n"));
        }
        out
    }

    pub fn parse(text: &str) -> Result<RunConfig, String> {
        let mut fields = BTreeMap::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key=value", n + 1))?;
            let v = v.trim();
            let val = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
            if fields.insert(k.trim().to_string(), val).is_some() {
                return Err(format!("config line {}: duplicate key {k}", n + 1));
            }
        }
        Ok(RunConfig { fields })
    }
}

/// Whether `s` can be written unquoted and read back as the same string.
fn bare_ok(s: &str) -> bool {
    !s.is_empty()
        && s.trim() == s
        && !s.contains('\n')
        && matches!(serde_json::from_str::<Value>(s), Err(_) | Ok(Value::String(_)))
        && !s.starts_with('"')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let mut fields = BTreeMap::new();
        fields.insert("command".into(), Value::String("scan".into()));
        fields.insert("m".into(), Value::from(128));
        fields.insert("tol".into(), Value::from(0.005));
        fields.insert("out".into(), Value::String("grid.csv".into()));
        fields.insert("odd".into(), Value::String("12".into()));
        fields.insert("window".into(), serde_json::json!([0.74, 0.8, 0.07, 0.13]));
        fields.insert("svg".into(), Value::Null);
        let c = RunConfig { fields };
        let text = c.to_text();
        assert!(text.contains("command=scan\n"));
        assert!(text.contains("odd=\"12\"\n"));
        assert_eq!(RunConfig::parse(&text).unwrap(), c);
    }
}
