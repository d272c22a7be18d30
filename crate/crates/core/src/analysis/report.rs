//! Verification reports.

use serde::{Deserialize, Serialize};

/// Where and how a prediction disagreed with the computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub theory: String,
    pub i: i64,
    pub j: i64,
    pub expected: String,
    pub found: String,
}

/// One checked claim about one braid or normal-form spec.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub spec: String,
    #[serde(rename = "claim-id")]
    pub claim_id: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_mismatch: Option<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl Report {
    pub fn pass(spec: &str, claim: &str) -> Self {
        Report {
            spec: spec.to_string(),
            claim_id: claim.to_string(),
            pass: true,
            first_mismatch: None,
            detail: None,
        }
    }

    pub fn fail(spec: &str, claim: &str, m: Mismatch) -> Self {
        Report {
            spec: spec.to_string(),
            claim_id: claim.to_string(),
            pass: false,
            first_mismatch: Some(m),
            detail: None,
        }
    }

    /// A failure that is not located at a single bidegree.
    pub fn fail_with(spec: &str, claim: &str, detail: impl Into<String>) -> Self {
        Report {
            spec: spec.to_string(),
            claim_id: claim.to_string(),
            pass: false,
            first_mismatch: None,
            detail: Some(detail.into()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_shape() {
        let r = Report::pass("abab", "torsion-two");
        assert_eq!(
            r.to_json(),
            r#"{"spec":"abab","claim-id":"torsion-two","pass":true}"#
        );
        let m = Mismatch {
            theory: "reduced Z".into(),
            i: 2,
            j: 6,
            expected: "Z".into(),
            found: "0".into(),
        };
        let r = Report::fail("abab", "x", m);
        let back: Report = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }
}
