//! Ranking of available monolingual synthesizers for a target language:
//! rule-family match first, then phone-set coverage, then configured
//! linguistic-overlap priors, with the name as the final tiebreak.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inventory::Inventory;
use crate::rules::Family;

/// An available monolingual synthesizer: its language, rule family, base
/// phone inventory and prior scores in [0,1].
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthesizerProfile {
    pub schema_version: u32,
    pub name: String,
    pub language: String,
    pub family: Family,
    pub phone_inventory: BTreeSet<String>,
    #[serde(default)]
    pub priors: BTreeMap<String, f64>,
}

impl SynthesizerProfile {
    pub fn from_json_str(source: &str, json: &str) -> Result<Self> {
        let profile: SynthesizerProfile =
            serde_json::from_str(json).map_err(|e| Error::MalformedProfile {
                path: Some(source.to_string()),
                message: e.to_string(),
            })?;
        if profile.schema_version != 1 {
            return Err(Error::MalformedProfile {
                path: Some(source.to_string()),
                message: format!("unsupported schema_version {}", profile.schema_version),
            });
        }
        for (name, value) in &profile.priors {
            if !(0.0..=1.0).contains(value) {
                return Err(Error::MalformedProfile {
                    path: Some(source.to_string()),
                    message: format!("prior `{name}` = {value} outside [0,1]"),
                });
            }
        }
        Ok(profile)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let json = std::fs::read_to_string(path)?;
        Self::from_json_str(&path.display().to_string(), &json)
    }

    /// Checks the inventory invariant: declared phones must be base labels.
    pub fn check_against(&self, inventory: &Inventory) -> Result<()> {
        for label in &self.phone_inventory {
            if !inventory.is_base(label) {
                return Err(Error::MalformedProfile {
                    path: Some(self.name.clone()),
                    message: format!("phone `{label}` is not a base label"),
                });
            }
        }
        Ok(())
    }

    pub fn prior_sum(&self) -> f64 {
        self.priors.values().sum()
    }
}

/// Share of the target's phones the synthesizer covers.
pub fn coverage(target: &BTreeSet<String>, synth: &BTreeSet<String>) -> Result<f64> {
    if target.is_empty() {
        return Err(Error::EmptyTargetInventory);
    }
    let hit = target.intersection(synth).count();
    Ok(hit as f64 / target.len() as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RankedCandidate {
    pub name: String,
    pub family_match: bool,
    pub coverage: f64,
    pub prior_sum: f64,
    pub rank: usize,
}

/// Total order over candidates: family match, coverage, prior sum, name.
/// `target_family` is the family whose rules the target profile applies.
pub fn rank(
    target_family: Family,
    target_phones: &BTreeSet<String>,
    candidates: &[SynthesizerProfile],
) -> Result<Vec<RankedCandidate>> {
    if candidates.is_empty() {
        return Err(Error::NoCandidates);
    }
    let mut ranked: Vec<RankedCandidate> = candidates
        .iter()
        .map(|c| {
            Ok(RankedCandidate {
                name: c.name.clone(),
                family_match: c.family == target_family,
                coverage: coverage(target_phones, &c.phone_inventory)?,
                prior_sum: c.prior_sum(),
                rank: 0,
            })
        })
        .collect::<Result<_>>()?;
    ranked.sort_by(|a, b| {
        b.family_match
            .cmp(&a.family_match)
            .then(b.coverage.total_cmp(&a.coverage))
            .then(b.prior_sum.total_cmp(&a.prior_sum))
            .then(a.name.cmp(&b.name))
    });
    for (i, c) in ranked.iter_mut().enumerate() {
        c.rank = i + 1;
    }
    Ok(ranked)
}
