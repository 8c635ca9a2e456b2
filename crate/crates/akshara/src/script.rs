//! Script reading: Unicode Indic text to raw label sequences.
//!
//! The reader is script-neutral by construction: each supported script ships
//! a codepoint table mapping letters and signs onto the shared label set, and
//! everything after table lookup (inherent vowels, virama clusters, nukta,
//! anusvara, visarga, chandrabindu) is common code. No family rules are
//! applied here; the output is the raw common representation.

use std::collections::HashMap;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};
use crate::inventory::{Inventory, Place};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Script {
    Devanagari,
    Kannada,
    Telugu,
}

impl Script {
    pub fn name(&self) -> &'static str {
        match self {
            Script::Devanagari => "devanagari",
            Script::Kannada => "kannada",
            Script::Telugu => "telugu",
        }
    }
}

impl FromStr for Script {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "devanagari" => Ok(Script::Devanagari),
            "kannada" => Ok(Script::Kannada),
            "telugu" => Ok(Script::Telugu),
            other => Err(Error::ScriptMismatch(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodepointKind {
    Consonant,
    VowelIndependent,
    Matra,
    Virama,
    Nukta,
    Anusvara,
    Visarga,
    Chandrabindu,
    Ignore,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodepointEntry {
    pub kind: CodepointKind,
    #[serde(default)]
    pub label: Option<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScriptFile {
    schema_version: u32,
    script: Script,
    codepoints: HashMap<String, CodepointEntry>,
}

/// Codepoint table for one script, keyed by hex codepoint in the data file.
#[derive(Debug, Clone)]
pub struct ScriptTable {
    script: Script,
    entries: HashMap<char, CodepointEntry>,
}

impl ScriptTable {
    pub fn from_json_str(name: &str, json: &str) -> Result<Self> {
        let file: ScriptFile = serde_json::from_str(json).map_err(|e| Error::MalformedData {
            file: name.to_string(),
            message: e.to_string(),
        })?;
        if file.schema_version != 1 {
            return Err(Error::MalformedData {
                file: name.to_string(),
                message: format!("unsupported schema_version {}", file.schema_version),
            });
        }
        let mut entries = HashMap::with_capacity(file.codepoints.len());
        for (hex, entry) in file.codepoints {
            let cp = u32::from_str_radix(&hex, 16).map_err(|_| Error::MalformedData {
                file: name.to_string(),
                message: format!("bad codepoint key `{hex}`"),
            })?;
            let c = char::from_u32(cp).ok_or_else(|| Error::MalformedData {
                file: name.to_string(),
                message: format!("invalid codepoint U+{cp:04X}"),
            })?;
            entries.insert(c, entry);
        }
        Ok(ScriptTable {
            script: file.script,
            entries,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let json = std::fs::read_to_string(path)?;
        Self::from_json_str(&path.display().to_string(), &json)
    }

    pub fn script(&self) -> Script {
        self.script
    }

    pub fn entry(&self, c: char) -> Option<&CodepointEntry> {
        self.entries.get(&c)
    }

    /// All labels this script's letters can produce, nukta variants included.
    pub fn emittable_labels(&self, inventory: &Inventory) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for e in self.entries.values() {
            if let Some(label) = &e.label {
                out.push(label.clone());
                let nukta = format!("{label}q");
                if inventory.contains(&nukta) {
                    out.push(nukta);
                }
            }
        }
        out.push("a".to_string()); // inherent vowel
        out.push("hq".to_string()); // visarga
        for l in ["ng", "nj", "nx", "n", "m"] {
            out.push(l.to_string()); // anusvara resolutions
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Canonical text form used by the segmenter: NFC with zero-width joiners
/// removed. Precomposed nukta letters that Unicode excludes from composition
/// come out as base + nukta pairs. Idempotent.
pub fn normalize_text(raw: &str) -> String {
    raw.chars()
        .filter(|c| !matches!(c, '\u{200C}' | '\u{200D}'))
        .nfc()
        .collect()
}

/// One orthographic syllable: a consonant cluster, its vowel, and any
/// trailing signs. A bare consonant with no matra and no virama carries the
/// inherent vowel "a"; a word-final virama leaves the cluster vowel-less.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Akshara {
    pub consonants: Vec<String>,
    pub vowel: Option<String>,
    pub nasalized: bool,
    pub trailing: Option<TrailingSign>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrailingSign {
    Anusvara,
    Visarga,
}

/// Per-word ordered label sequence, the pipeline's common representation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClsSequence {
    pub labels: Vec<String>,
    pub nasal_flags: Vec<bool>,
    pub word: String,
    pub script: Script,
}

impl ClsSequence {
    pub fn vowel_count(&self, inventory: &Inventory) -> usize {
        self.labels
            .iter()
            .filter(|l| inventory.lookup(l).map(|p| p.is_vowel()).unwrap_or(false))
            .count()
    }
}

enum VowelState {
    Inherent,
    Explicit(String),
    Suppressed,
}

struct AksharaBuilder {
    consonants: Vec<String>,
    vowel: VowelState,
    nasalized: bool,
    trailing: Option<TrailingSign>,
    open_cluster: bool,
}

impl AksharaBuilder {
    fn new_consonant(label: String) -> Self {
        AksharaBuilder {
            consonants: vec![label],
            vowel: VowelState::Inherent,
            nasalized: false,
            trailing: None,
            open_cluster: false,
        }
    }

    fn new_vowel(label: String) -> Self {
        AksharaBuilder {
            consonants: Vec::new(),
            vowel: VowelState::Explicit(label),
            nasalized: false,
            trailing: None,
            open_cluster: false,
        }
    }

    fn finish(self) -> Akshara {
        Akshara {
            consonants: self.consonants,
            vowel: match self.vowel {
                VowelState::Inherent => Some("a".to_string()),
                VowelState::Explicit(v) => Some(v),
                VowelState::Suppressed => None,
            },
            nasalized: self.nasalized,
            trailing: self.trailing,
        }
    }
}

/// Reads words of one script against one inventory.
pub struct ScriptReader<'a> {
    inventory: &'a Inventory,
    table: &'a ScriptTable,
}

impl<'a> ScriptReader<'a> {
    pub fn new(inventory: &'a Inventory, table: &'a ScriptTable) -> Self {
        ScriptReader { inventory, table }
    }

    pub fn script(&self) -> Script {
        self.table.script()
    }

    /// Splits a normalized word into aksharas. Virama between consonants
    /// merges them into one cluster; dependent vowel signs replace the
    /// inherent vowel.
    pub fn segment_aksharas(&self, word: &str) -> Result<Vec<Akshara>> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        let mut builders: Vec<AksharaBuilder> = Vec::new();
        for (offset, c) in word.char_indices() {
            let entry = self
                .table
                .entry(c)
                .ok_or_else(|| Error::UnknownCodepoint {
                    codepoint: c as u32,
                    offset,
                })?;
            match entry.kind {
                CodepointKind::Consonant => {
                    let label = entry.label.clone().expect("consonant entry has a label");
                    match builders.last_mut() {
                        Some(b) if b.open_cluster => {
                            b.consonants.push(label);
                            b.vowel = VowelState::Inherent;
                            b.open_cluster = false;
                        }
                        _ => builders.push(AksharaBuilder::new_consonant(label)),
                    }
                }
                CodepointKind::VowelIndependent => {
                    let label = entry.label.clone().expect("vowel entry has a label");
                    builders.push(AksharaBuilder::new_vowel(label));
                }
                CodepointKind::Matra => {
                    let label = entry.label.clone().expect("matra entry has a label");
                    match builders.last_mut() {
                        Some(b) if !b.consonants.is_empty() => {
                            b.vowel = VowelState::Explicit(label);
                            b.open_cluster = false;
                        }
                        // orphan matra reads as an independent vowel
                        _ => builders.push(AksharaBuilder::new_vowel(label)),
                    }
                }
                CodepointKind::Virama => {
                    if let Some(b) = builders.last_mut() {
                        if !b.consonants.is_empty() {
                            b.vowel = VowelState::Suppressed;
                            b.open_cluster = true;
                        }
                    }
                }
                CodepointKind::Nukta => {
                    if let Some(b) = builders.last_mut() {
                        if let Some(last) = b.consonants.last_mut() {
                            // explicit extended row wins; otherwise the base
                            // character's label stands
                            let extended = format!("{last}q");
                            if self.inventory.contains(&extended) {
                                *last = extended;
                            }
                        }
                    }
                }
                CodepointKind::Anusvara => {
                    if let Some(b) = builders.last_mut() {
                        b.trailing = Some(TrailingSign::Anusvara);
                    }
                }
                CodepointKind::Visarga => {
                    if let Some(b) = builders.last_mut() {
                        b.trailing = Some(TrailingSign::Visarga);
                    }
                }
                CodepointKind::Chandrabindu => {
                    if let Some(b) = builders.last_mut() {
                        b.nasalized = true;
                    }
                }
                CodepointKind::Ignore => {}
            }
        }
        if builders.is_empty() {
            return Err(Error::EmptyWord);
        }
        Ok(builders.into_iter().map(AksharaBuilder::finish).collect())
    }

    /// Flattens a word into the raw common representation: inherent "a" for
    /// bare consonants, anusvara resolved to a homorganic nasal, visarga
    /// emitted as "hq", chandrabindu as a nasal flag on the vowel.
    pub fn word_to_raw_cls(&self, word: &str) -> Result<ClsSequence> {
        let aksharas = self.segment_aksharas(word)?;
        let mut labels: Vec<String> = Vec::new();
        let mut flags: Vec<bool> = Vec::new();
        for (i, ak) in aksharas.iter().enumerate() {
            for c in &ak.consonants {
                labels.push(c.clone());
                flags.push(false);
            }
            if let Some(v) = &ak.vowel {
                labels.push(v.clone());
                flags.push(ak.nasalized);
            }
            match ak.trailing {
                Some(TrailingSign::Anusvara) => {
                    let nasal = self.homorganic_nasal(aksharas.get(i + 1));
                    labels.push(nasal.to_string());
                    flags.push(false);
                }
                Some(TrailingSign::Visarga) => {
                    labels.push("hq".to_string());
                    flags.push(false);
                }
                None => {}
            }
        }
        Ok(ClsSequence {
            labels,
            nasal_flags: flags,
            word: word.to_string(),
            script: self.table.script(),
        })
    }

    /// Standard sandhi: the anusvara assimilates to the place of the next
    /// consonant; word-finally or before a vowel it surfaces as m.
    fn homorganic_nasal(&self, next: Option<&Akshara>) -> &'static str {
        let next_consonant = next.and_then(|a| a.consonants.first());
        let place = next_consonant
            .and_then(|l| self.inventory.lookup(l).ok())
            .map(|p| p.features.place);
        match place {
            Some(Place::Velar) => "ng",
            Some(Place::Palatal) => "nj",
            Some(Place::Retroflex) => "nx",
            Some(Place::Dental) => "n",
            Some(Place::Labial) => "m",
            _ => "m",
        }
    }
}
