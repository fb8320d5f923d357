//! Plain-JSON persistence of computed hierarchies.

use std::fs;
use std::path::Path;

use ddkp_core::symmetry::{Hierarchy, SuiteConfig};
use ddkp_core::{Expression, Orientation};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;
use crate::json::{check_document, ExpressionDoc, JsonError};
use crate::report::{check_json, parameters_json};

pub const CACHE_FORMAT: &str = "ddkp-hierarchy";
pub const CACHE_VERSION: u64 = 1;
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HierarchyRecord {
    /// 1-based position, `H1 = K`.
    pub index: usize,
    pub expression: ExpressionDoc,
    pub terms: usize,
    /// The report checks that mention this member.
    pub verdicts: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HierarchyCache {
    pub format: String,
    pub version: u64,
    pub engine_version: String,
    pub config: Value,
    pub records: Vec<HierarchyRecord>,
}

fn mentions(label: &str, member: &str) -> bool {
    label
        .split(|c: char| !c.is_ascii_alphanumeric())
        .any(|w| w == member)
}

fn config_json(config: &SuiteConfig, orientation: Orientation) -> Value {
    serde_json::json!({
        "hierarchy_orientation": match orientation {
            Orientation::Left => "left",
            Orientation::Right => "right",
        },
        "summation": format!("{:?}", config.summation).to_lowercase(),
        "oracle": parameters_json(&config.zero_test),
    })
}

impl HierarchyCache {
    pub fn new(h: &Hierarchy, config: &SuiteConfig) -> Self {
        let records = h
            .members
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let name = format!("H{}", i + 1);
                HierarchyRecord {
                    index: i + 1,
                    expression: ExpressionDoc::new(e),
                    terms: e.len(),
                    verdicts: h
                        .report
                        .checks
                        .iter()
                        .filter(|c| mentions(&c.label, &name))
                        .map(check_json)
                        .collect(),
                }
            })
            .collect();
        HierarchyCache {
            format: CACHE_FORMAT.into(),
            version: CACHE_VERSION,
            engine_version: ENGINE_VERSION.into(),
            config: config_json(config, h.orientation),
            records,
        }
    }

    pub fn members(&self) -> Result<Vec<Expression>, JsonError> {
        self.records
            .iter()
            .map(|r| r.expression.to_expression())
            .collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("cache documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, JsonError> {
        let v: Value = serde_json::from_str(text)?;
        check_document(&v, CACHE_FORMAT, CACHE_VERSION)?;
        Ok(serde_json::from_value(v)?)
    }

    pub fn save(&self, path: &Path) -> Result<(), Error> {
        fs::write(path, self.to_json() + "\n").map_err(|source| Error::Io {
            path: path.into(),
            source,
        })
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.into(),
            source,
        })?;
        Ok(Self::from_json(&text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ddkp_core::oracle::ZeroTestConfig;
    use ddkp_core::symmetry::Suite;

    #[test]
    fn save_and_reload() {
        let config = SuiteConfig {
            zero_test: ZeroTestConfig::default().with_trials(3),
            ..SuiteConfig::default()
        };
        let h = Suite::new(config.clone()).hierarchy(2).unwrap();
        let cache = HierarchyCache::new(&h, &config);
        assert_eq!(cache.records[1].terms, h.members[1].len());
        assert!(cache.records[1]
            .verdicts
            .iter()
            .any(|v| v["label"] == "[H1,H2] = 0"));
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("h.json");
        cache.save(&path).unwrap();
        let back = HierarchyCache::load(&path).unwrap();
        assert_eq!(back, cache);
        assert_eq!(back.members().unwrap(), h.members);
        let bad = cache.to_json().replace("\"version\": 1", "\"version\": 2");
        assert!(matches!(
            HierarchyCache::from_json(&bad),
            Err(JsonError::Version { .. })
        ));
    }

    #[test]
    fn label_mentions_are_whole_words() {
        assert!(mentions("[H1,H12] = 0", "H12"));
        assert!(!mentions("[H12,H2] = 0", "H1"));
    }
}
