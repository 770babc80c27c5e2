use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

/// Outcome of one verification. Field order is the serialization order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: Map<String, Value>,
    pub status: Status,
    pub witness: Option<Value>,
    pub n_cases: u64,
    pub millis: Option<u64>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            params: Map::new(),
            status: Status::Pass,
            witness: None,
            n_cases: 0,
            millis: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Count one case; the first failure is kept as the witness.
    pub fn case(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.n_cases += 1;
        if !ok && self.status != Status::Fail {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: Value) {
        self.status = Status::Fail;
        self.witness = Some(witness);
    }

    pub fn inconclusive(&mut self, why: impl Into<String>) {
        if self.status == Status::Pass {
            self.status = Status::Inconclusive;
            self.witness = Some(Value::String(why.into()));
        }
    }

    /// Merge a sub-report: cases add up, the worst status wins.
    pub fn absorb(&mut self, other: &Report) {
        self.n_cases += other.n_cases;
        match (self.status, other.status) {
            (Status::Fail, _) => {}
            (_, Status::Fail) | (Status::Pass, Status::Inconclusive) => {
                self.status = other.status;
                self.witness = other
                    .witness
                    .clone()
                    .map(|w| serde_json::json!({ "check": other.check, "witness": w }));
            }
            _ => {}
        }
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn summary_line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        };
        let mut line = format!("{status:<12} {}", self.check);
        for (k, v) in &self.params {
            if v.is_number() || v.is_string() {
                let v = v.as_str().map_or_else(|| v.to_string(), str::to_string);
                line.push_str(&format!(" {k}={v}"));
            }
        }
        line.push_str(&format!(" ({} cases)", self.n_cases));
        if let Some(w) = &self.witness {
            line.push_str(&format!(" witness: {w}"));
        }
        line
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape_is_stable() {
        let mut r = Report::new("demo").param("n", 3);
        r.case(true, || Value::Null);
        r.case(false, || Value::from("x"));
        r.case(false, || Value::from("y"));
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"check":"demo","params":{"n":3},"status":"fail","witness":"x","n_cases":3,"millis":null}"#
        );
    }
}
