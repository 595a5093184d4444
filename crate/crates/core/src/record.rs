//! Versioned output records.
//!
//! Every record serializes to one JSON object with the fields `schema`
//! (currently 1), `operation`, `inputs`, `value_re`, `value_im`,
//! `quadrature` and `tail_bound`, plus operation-specific extras. The same
//! record flattens to an ordered list of columns for CSV output.

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::quadrature::QuadratureSpec;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub schema: u32,
    pub operation: String,
    pub inputs: Map<String, Value>,
    pub value_re: Option<f64>,
    pub value_im: Option<f64>,
    pub quadrature: Option<QuadratureSpec>,
    pub tail_bound: Option<f64>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl Record {
    pub fn new(operation: impl Into<String>) -> Self {
        Record {
            schema: SCHEMA_VERSION,
            operation: operation.into(),
            inputs: Map::new(),
            value_re: None,
            value_im: None,
            quadrature: None,
            tail_bound: None,
            extra: Map::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn value(mut self, v: Complex64) -> Self {
        self.value_re = Some(v.re);
        self.value_im = Some(v.im);
        self
    }

    pub fn real_value(mut self, v: Option<f64>) -> Self {
        self.value_re = v;
        self.value_im = v.map(|_| 0.0);
        self
    }

    pub fn quadrature(mut self, q: &QuadratureSpec) -> Self {
        self.quadrature = Some(*q);
        self
    }

    pub fn tail_bound(mut self, t: f64) -> Self {
        self.tail_bound = Some(t);
        self
    }

    pub fn extra(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records contain only finite numbers and strings")
    }

    /// Column names and cell values; nested objects contribute one column
    /// per key, prefixed by the object name.
    pub fn flat_fields(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("schema".to_string(), self.schema.to_string()),
            ("operation".to_string(), self.operation.clone()),
        ];
        for (k, v) in &self.inputs {
            out.push((format!("inputs.{k}"), cell(v)));
        }
        out.push(("value_re".into(), opt(self.value_re)));
        out.push(("value_im".into(), opt(self.value_im)));
        match &self.quadrature {
            Some(q) => {
                let v = serde_json::to_value(q).expect("plain struct");
                if let Value::Object(m) = v {
                    for (k, v) in m {
                        out.push((format!("quadrature.{k}"), cell(&v)));
                    }
                }
            }
            None => {
                for k in ["fiber_n", "fiber_t_max", "n_t", "n_theta", "t_max"] {
                    out.push((format!("quadrature.{k}"), String::new()));
                }
            }
        }
        out.push(("tail_bound".into(), opt(self.tail_bound)));
        for (k, v) in &self.extra {
            out.push((k.clone(), cell(v)));
        }
        out
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| Value::from(x).to_string()).unwrap_or_default()
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Serializes a complex 3-vector as `[[re, im], ...]`.
pub fn cvec_value(z: &crate::hyperboloid::CVec3) -> Value {
    Value::Array(z.0.iter().map(|c| Value::from(vec![c.re, c.im])).collect())
}
