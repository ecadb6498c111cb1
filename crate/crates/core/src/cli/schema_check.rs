//! Checks command output against the shipped JSON schemas.

use serde_json::Value;

/// Minimal JSON Schema check covering the keywords used by the shipped
/// schemas: `type`, `required`, `properties`, `additionalProperties`,
/// `items`, `minItems`, `maxItems`, `enum`, `pattern`, `minimum`, `oneOf`
/// and local `$ref`.
pub(crate) fn validate(instance: &Value, schema: &Value) -> Result<(), String> {
    check(instance, schema, schema, "$")
}

fn check(v: &Value, s: &Value, root: &Value, path: &str) -> Result<(), String> {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let target = r
            .strip_prefix("#/")
            .ok_or_else(|| format!("unsupported $ref {r}"))?
            .split('/')
            .try_fold(root, |node, key| node.get(key))
            .ok_or_else(|| format!("dangling $ref {r}"))?;
        return check(v, target, root, path);
    }
    if let Some(options) = s.get("oneOf").and_then(Value::as_array) {
        let hits = options.iter().filter(|o| check(v, o, root, path).is_ok()).count();
        if hits != 1 {
            return Err(format!("{path}: matches {hits} oneOf branches"));
        }
    }
    if let Some(t) = s.get("type").and_then(Value::as_str) {
        let ok = match t {
            "object" => v.is_object(),
            "array" => v.is_array(),
            "string" => v.is_string(),
            "integer" => v.is_i64() || v.is_u64(),
            "number" => v.is_number(),
            "boolean" => v.is_boolean(),
            "null" => v.is_null(),
            _ => return Err(format!("unsupported type {t}")),
        };
        if !ok {
            return Err(format!("{path}: expected {t}, got {v}"));
        }
    }
    if let Some(options) = s.get("enum").and_then(Value::as_array) {
        if !options.contains(v) {
            return Err(format!("{path}: {v} not in enum"));
        }
    }
    if let (Some(p), Some(text)) = (s.get("pattern").and_then(Value::as_str), v.as_str()) {
        let re = regex::Regex::new(p).map_err(|e| e.to_string())?;
        if !re.is_match(text) {
            return Err(format!("{path}: {text:?} does not match {p}"));
        }
    }
    if let (Some(min), Some(x)) = (s.get("minimum").and_then(Value::as_f64), v.as_f64()) {
        if x < min {
            return Err(format!("{path}: {x} below minimum {min}"));
        }
    }
    if let Some(obj) = v.as_object() {
        for key in s.get("required").and_then(Value::as_array).into_iter().flatten() {
            let key = key.as_str().unwrap();
            if !obj.contains_key(key) {
                return Err(format!("{path}: missing {key}"));
            }
        }
        let props = s.get("properties").and_then(Value::as_object);
        for (key, value) in obj {
            match props.and_then(|p| p.get(key)) {
                Some(sub) => check(value, sub, root, &format!("{path}.{key}"))?,
                None => {
                    if s.get("additionalProperties") == Some(&Value::Bool(false)) {
                        return Err(format!("{path}: unexpected key {key}"));
                    }
                }
            }
        }
    }
    if let Some(arr) = v.as_array() {
        if let Some(min) = s.get("minItems").and_then(Value::as_u64) {
            if (arr.len() as u64) < min {
                return Err(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(max) = s.get("maxItems").and_then(Value::as_u64) {
            if (arr.len() as u64) > max {
                return Err(format!("{path}: more than {max} items"));
            }
        }
        if let Some(items) = s.get("items") {
            for (i, item) in arr.iter().enumerate() {
                check(item, items, root, &format!("{path}[{i}]"))?;
            }
        }
    }
    Ok(())
}

