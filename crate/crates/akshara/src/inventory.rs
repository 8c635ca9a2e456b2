//! The extended common label set: a fixed 72-label base inventory plus
//! extended labels for borrowed (nukta) consonants, the visarga and the
//! glottal stop, each with a closest-equivalent base fallback.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const BASE_LABEL_COUNT: usize = 72;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    Vowel,
    Consonant,
    Modifier,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VowelLength {
    Short,
    Long,
    Na,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Place {
    Velar,
    Palatal,
    Retroflex,
    Dental,
    Labial,
    Glottal,
    Uvular,
    Na,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Features {
    pub length: VowelLength,
    pub aspirated: bool,
    pub voiced: bool,
    pub place: Place,
    pub nasal: bool,
}

/// One label of the set, with articulatory features and extension status.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Phone {
    pub label: String,
    pub category: Category,
    pub features: Features,
    pub extended: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fallback: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rationale: Option<String>,
}

impl Phone {
    pub fn is_vowel(&self) -> bool {
        self.category == Category::Vowel
    }

    pub fn is_consonant(&self) -> bool {
        self.category == Category::Consonant
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct InventoryFile {
    schema_version: u32,
    version: String,
    #[serde(default)]
    notes: Option<String>,
    phones: Vec<Phone>,
}

/// Immutable label inventory. Built once from its data file; all lookups
/// are pure reads.
#[derive(Debug, Clone)]
pub struct Inventory {
    version: String,
    phones: Vec<Phone>,
    index: HashMap<String, usize>,
}

impl Inventory {
    pub fn from_json_str(name: &str, json: &str) -> Result<Self> {
        let file: InventoryFile =
            serde_json::from_str(json).map_err(|e| Error::MalformedData {
                file: name.to_string(),
                message: e.to_string(),
            })?;
        if file.schema_version != 1 {
            return Err(Error::MalformedData {
                file: name.to_string(),
                message: format!("unsupported schema_version {}", file.schema_version),
            });
        }
        let _ = file.notes;
        Ok(Self::from_phones(file.version, file.phones))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let json = std::fs::read_to_string(path)?;
        Self::from_json_str(&path.display().to_string(), &json)
    }

    /// Builds an inventory directly from phones. Duplicate labels are kept
    /// so that validation can report them; lookup resolves to the first.
    pub fn from_phones(version: String, phones: Vec<Phone>) -> Self {
        let mut index = HashMap::with_capacity(phones.len());
        for (i, p) in phones.iter().enumerate() {
            index.entry(p.label.clone()).or_insert(i);
        }
        Inventory {
            version,
            phones,
            index,
        }
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn phones(&self) -> &[Phone] {
        &self.phones
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn is_base(&self, label: &str) -> bool {
        self.index
            .get(label)
            .map(|&i| !self.phones[i].extended)
            .unwrap_or(false)
    }

    /// Exact-match lookup over the inventory.
    pub fn lookup(&self, label: &str) -> Result<&Phone> {
        self.index
            .get(label)
            .map(|&i| &self.phones[i])
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Resolves a label to its base form: base labels map to themselves,
    /// extended labels to their declared closest equivalent.
    pub fn fallback<'a>(&'a self, label: &str) -> Result<&'a str> {
        let phone = self.lookup(label)?;
        if !phone.extended {
            // identity for base labels; return the interned copy
            return Ok(&phone.label);
        }
        match &phone.fallback {
            Some(f) => Ok(f.as_str()),
            // a validated inventory never hits this; surface it as unknown
            None => Err(Error::UnknownLabel(label.to_string())),
        }
    }

    pub fn base_labels(&self) -> impl Iterator<Item = &str> {
        self.phones
            .iter()
            .filter(|p| !p.extended)
            .map(|p| p.label.as_str())
    }

    /// Checks every structural invariant and reports all violations.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();

        let mut seen: HashMap<&str, usize> = HashMap::new();
        for p in &self.phones {
            *seen.entry(p.label.as_str()).or_insert(0) += 1;
        }
        for (label, count) in &seen {
            if *count > 1 {
                violations.push(Violation::DuplicateLabel {
                    label: label.to_string(),
                });
            }
        }
        if self.phones.iter().any(|p| p.label.is_empty()) {
            violations.push(Violation::EmptyLabel);
        }

        let base: Vec<&Phone> = self.phones.iter().filter(|p| !p.extended).collect();
        if base.len() != BASE_LABEL_COUNT {
            violations.push(Violation::BaseCountMismatch { found: base.len() });
        }
        let vowels = base.iter().filter(|p| p.is_vowel()).count();
        if !(15..=18).contains(&vowels) {
            violations.push(Violation::VowelCountOutOfRange { found: vowels });
        }
        let consonants = base.iter().filter(|p| p.is_consonant()).count();
        if !(35..=38).contains(&consonants) {
            violations.push(Violation::ConsonantCountOutOfRange { found: consonants });
        }

        for p in &self.phones {
            if p.extended {
                match &p.fallback {
                    None => violations.push(Violation::MissingFallback {
                        label: p.label.clone(),
                    }),
                    Some(f) => {
                        // must land on a base label in a single step
                        if !self.is_base(f) {
                            violations.push(Violation::FallbackNotBase {
                                label: p.label.clone(),
                                fallback: f.clone(),
                            });
                        }
                    }
                }
                if p.rationale.as_deref().map_or(true, |r| r.trim().is_empty()) {
                    violations.push(Violation::MissingRationale {
                        label: p.label.clone(),
                    });
                }
            } else if p.fallback.is_some() {
                violations.push(Violation::BaseWithFallback {
                    label: p.label.clone(),
                });
            }
        }

        // doubled long vowels must coexist with their short counterparts
        for p in base.iter().filter(|p| p.is_vowel()) {
            if p.features.length == VowelLength::Long && p.label.len() == 2 {
                let bytes = p.label.as_bytes();
                if bytes[0] == bytes[1] {
                    let short = &p.label[..1];
                    let ok = self
                        .index
                        .get(short)
                        .map(|&i| {
                            let q = &self.phones[i];
                            !q.extended
                                && q.is_vowel()
                                && q.features.length == VowelLength::Short
                        })
                        .unwrap_or(false);
                    if !ok {
                        violations.push(Violation::LongVowelWithoutShort {
                            label: p.label.clone(),
                        });
                    }
                }
            }
        }

        ValidationReport { violations }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    BaseCountMismatch { found: usize },
    VowelCountOutOfRange { found: usize },
    ConsonantCountOutOfRange { found: usize },
    DuplicateLabel { label: String },
    EmptyLabel,
    MissingFallback { label: String },
    FallbackNotBase { label: String, fallback: String },
    BaseWithFallback { label: String },
    MissingRationale { label: String },
    LongVowelWithoutShort { label: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BaseCountMismatch { found } => {
                write!(f, "base count != {BASE_LABEL_COUNT} (found {found})")
            }
            Violation::VowelCountOutOfRange { found } => {
                write!(f, "base vowel count {found} outside 15..=18")
            }
            Violation::ConsonantCountOutOfRange { found } => {
                write!(f, "base consonant count {found} outside 35..=38")
            }
            Violation::DuplicateLabel { label } => write!(f, "duplicate label `{label}`"),
            Violation::EmptyLabel => write!(f, "empty label"),
            Violation::MissingFallback { label } => {
                write!(f, "extended label `{label}` has no fallback")
            }
            Violation::FallbackNotBase { label, fallback } => {
                write!(f, "fallback of `{label}` is `{fallback}`, not a base label")
            }
            Violation::BaseWithFallback { label } => {
                write!(f, "base label `{label}` declares a fallback")
            }
            Violation::MissingRationale { label } => {
                write!(f, "extended label `{label}` has no rationale")
            }
            Violation::LongVowelWithoutShort { label } => {
                write!(f, "long vowel `{label}` has no matching short vowel")
            }
        }
    }
}

/// Every violated invariant of an inventory; empty iff the inventory is valid.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "inventory valid");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}
