//! Family-specific phonotactic rules over label sequences.
//!
//! The rule family is a property of the target language, never of its
//! script: a profile names the family whose rules to apply (IA rules delete
//! schwas, DR rules retain them) plus any ordered rule packs. Packs are
//! data-driven rewrite rules over labels; within a pack each rule runs as a
//! single left-to-right pass in file order, so the first matching rule at
//! the leftmost position wins.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inventory::Inventory;
use crate::script::{ClsSequence, Script};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "IA")]
    Ia,
    #[serde(rename = "DR")]
    Dr,
}

/// Target language description: script, phonotactic rule family and the
/// ordered rule packs to run. The family is deliberately decoupled from the
/// script (Sanskrit is Devanagari with DR-style rules, Kurukh is a Dravidian
/// language parsed with IA rules).
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LanguageProfile {
    pub schema_version: u32,
    pub name: String,
    pub script: Script,
    pub family: Family,
    #[serde(default)]
    pub rule_packs: Vec<String>,
    /// Word-level overrides (grapheme form to labels) checked before parsing.
    #[serde(default)]
    pub exceptions: HashMap<String, Vec<String>>,
    #[serde(default)]
    pub priors: BTreeMap<String, f64>,
    /// Declared label set, used as the selector target when no corpus is given.
    #[serde(default)]
    pub phone_inventory: Vec<String>,
    #[serde(default)]
    pub notes: String,
}

impl LanguageProfile {
    pub fn from_json_str(name: &str, json: &str) -> Result<Self> {
        let profile: LanguageProfile =
            serde_json::from_str(json).map_err(|e| Error::MalformedProfile {
                path: Some(name.to_string()),
                message: e.to_string(),
            })?;
        if profile.schema_version != 1 {
            return Err(Error::MalformedProfile {
                path: Some(name.to_string()),
                message: format!("unsupported schema_version {}", profile.schema_version),
            });
        }
        Ok(profile)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let json = std::fs::read_to_string(path)?;
        Self::from_json_str(&path.display().to_string(), &json)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    PreFamily,
    PostFamily,
}

/// One element of a rule context or match window.
#[derive(Debug, Clone, PartialEq, Eq)]
enum PatternItem {
    Literal(String),
    OneOf(Vec<String>),
    Vowel,
    Consonant,
    Sibilant,
    Boundary,
}

impl PatternItem {
    fn parse(s: &str) -> Self {
        match s {
            "^" | "$" => PatternItem::Boundary,
            "@vowel" => PatternItem::Vowel,
            "@consonant" => PatternItem::Consonant,
            "@sibilant" => PatternItem::Sibilant,
            _ if s.contains('|') => {
                PatternItem::OneOf(s.split('|').map(str::to_string).collect())
            }
            _ => PatternItem::Literal(s.to_string()),
        }
    }

    fn matches(&self, label: &str, inventory: &Inventory) -> bool {
        match self {
            PatternItem::Literal(l) => l == label,
            PatternItem::OneOf(ls) => ls.iter().any(|l| l == label),
            PatternItem::Vowel => inventory.lookup(label).map(|p| p.is_vowel()).unwrap_or(false),
            PatternItem::Consonant => inventory
                .lookup(label)
                .map(|p| p.is_consonant())
                .unwrap_or(false),
            PatternItem::Sibilant => matches!(label, "sh" | "sx" | "s"),
            PatternItem::Boundary => false,
        }
    }
}

#[derive(Debug, Clone)]
enum ReplaceItem {
    Emit(String),
    /// 1-based index into the matched window; keeps the nasal flag.
    Copy(usize),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleFile {
    #[serde(default)]
    pre: Vec<String>,
    find: Vec<String>,
    #[serde(default)]
    post: Vec<String>,
    replace: Vec<String>,
    #[serde(default)]
    note: Option<String>,
}

/// An ordered context-sensitive rewrite rule over labels.
#[derive(Debug, Clone)]
pub struct RewriteRule {
    pre: Vec<PatternItem>,
    find: Vec<PatternItem>,
    post: Vec<PatternItem>,
    replace: Vec<ReplaceItem>,
    note: Option<String>,
}

impl RewriteRule {
    fn from_file(rule: RuleFile, source: &str) -> Result<Self> {
        if rule.find.is_empty() {
            return Err(Error::MalformedData {
                file: source.to_string(),
                message: "rule with empty find window".to_string(),
            });
        }
        let find: Vec<PatternItem> = rule.find.iter().map(|s| PatternItem::parse(s)).collect();
        if find.contains(&PatternItem::Boundary) {
            return Err(Error::MalformedData {
                file: source.to_string(),
                message: "boundary anchors belong in pre/post, not find".to_string(),
            });
        }
        let mut replace = Vec::with_capacity(rule.replace.len());
        for r in &rule.replace {
            if let Some(idx) = r.strip_prefix('$') {
                let k: usize = idx.parse().map_err(|_| Error::MalformedData {
                    file: source.to_string(),
                    message: format!("bad capture `{r}`"),
                })?;
                if k == 0 || k > find.len() {
                    return Err(Error::MalformedData {
                        file: source.to_string(),
                        message: format!("capture `{r}` outside find window"),
                    });
                }
                replace.push(ReplaceItem::Copy(k));
            } else {
                replace.push(ReplaceItem::Emit(r.clone()));
            }
        }
        Ok(RewriteRule {
            pre: rule.pre.iter().map(|s| PatternItem::parse(s)).collect(),
            find,
            post: rule.post.iter().map(|s| PatternItem::parse(s)).collect(),
            replace,
            note: rule.note,
        })
    }

    pub fn note(&self) -> Option<&str> {
        self.note.as_deref()
    }

    /// Single left-to-right pass; each match is replaced and scanning
    /// resumes after the replacement.
    fn apply(&self, items: &mut Vec<(String, bool)>, inventory: &Inventory) {
        let mut i = 0;
        while i < items.len() {
            if self.matches_at(items, i, inventory) {
                let replacement: Vec<(String, bool)> = self
                    .replace
                    .iter()
                    .map(|r| match r {
                        ReplaceItem::Emit(l) => (l.clone(), false),
                        ReplaceItem::Copy(k) => items[i + k - 1].clone(),
                    })
                    .collect();
                let advance = replacement.len();
                items.splice(i..i + self.find.len(), replacement);
                i += advance;
            } else {
                i += 1;
            }
        }
    }

    fn matches_at(&self, items: &[(String, bool)], i: usize, inventory: &Inventory) -> bool {
        if i + self.find.len() > items.len() {
            return false;
        }
        for (k, item) in self.find.iter().enumerate() {
            if !item.matches(&items[i + k].0, inventory) {
                return false;
            }
        }
        // pre is read right-to-left ending immediately before the window
        for (k, item) in self.pre.iter().rev().enumerate() {
            match item {
                PatternItem::Boundary => {
                    if i != k {
                        return false;
                    }
                }
                _ => {
                    if i < k + 1 || !item.matches(&items[i - k - 1].0, inventory) {
                        return false;
                    }
                }
            }
        }
        // post starts immediately after the window
        let end = i + self.find.len();
        for (k, item) in self.post.iter().enumerate() {
            match item {
                PatternItem::Boundary => {
                    if end + k != items.len() {
                        return false;
                    }
                }
                _ => {
                    if end + k >= items.len() || !item.matches(&items[end + k].0, inventory) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// A named, staged, ordered list of rewrite rules.
#[derive(Debug, Clone)]
pub struct RulePack {
    pub name: String,
    pub stage: Stage,
    rules: Vec<RewriteRule>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PackFile {
    schema_version: u32,
    name: String,
    stage: Stage,
    rules: Vec<RuleFile>,
}

impl RulePack {
    pub fn from_json_str(source: &str, json: &str) -> Result<Self> {
        let file: PackFile = serde_json::from_str(json).map_err(|e| Error::MalformedData {
            file: source.to_string(),
            message: e.to_string(),
        })?;
        if file.schema_version != 1 {
            return Err(Error::MalformedData {
                file: source.to_string(),
                message: format!("unsupported schema_version {}", file.schema_version),
            });
        }
        let rules = file
            .rules
            .into_iter()
            .map(|r| RewriteRule::from_file(r, source))
            .collect::<Result<Vec<_>>>()?;
        Ok(RulePack {
            name: file.name,
            stage: file.stage,
            rules,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let json = std::fs::read_to_string(path)?;
        Self::from_json_str(&path.display().to_string(), &json)
    }

    pub fn apply(&self, seq: &ClsSequence, inventory: &Inventory) -> ClsSequence {
        let mut items = zip_items(seq);
        for rule in &self.rules {
            rule.apply(&mut items, inventory);
        }
        unzip_items(items, seq)
    }

    /// Labels the pack's replacements can introduce.
    pub fn emitted_labels(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .rules
            .iter()
            .flat_map(|r| r.replace.iter())
            .filter_map(|r| match r {
                ReplaceItem::Emit(l) => Some(l.clone()),
                ReplaceItem::Copy(_) => None,
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

fn zip_items(seq: &ClsSequence) -> Vec<(String, bool)> {
    seq.labels
        .iter()
        .cloned()
        .zip(seq.nasal_flags.iter().copied())
        .collect()
}

fn unzip_items(items: Vec<(String, bool)>, seq: &ClsSequence) -> ClsSequence {
    let (labels, nasal_flags) = items.into_iter().unzip();
    ClsSequence {
        labels,
        nasal_flags,
        word: seq.word.clone(),
        script: seq.script,
    }
}

/// IA schwa deletion over a single word.
///
/// Two steps: the word-final "a" goes when a consonant precedes it and the
/// word keeps at least one vowel, then a single left-to-right pass removes
/// each medial "a" standing in a vowel-consonant-a-consonant-vowel window,
/// provided it is not the word's first vowel and its removal leaves no run
/// of three or more consonants. Never yields a vowel-less word.
pub fn schwa_delete(seq: &ClsSequence, inventory: &Inventory) -> ClsSequence {
    let mut items = zip_items(seq);
    let is_vowel =
        |l: &str| inventory.lookup(l).map(|p| p.is_vowel()).unwrap_or(false);
    let is_consonant =
        |l: &str| inventory.lookup(l).map(|p| p.is_consonant()).unwrap_or(false);

    let n = items.len();
    if n >= 2 && items[n - 1].0 == "a" && is_consonant(&items[n - 2].0) {
        let vowels = items.iter().filter(|(l, _)| is_vowel(l)).count();
        if vowels >= 2 {
            items.pop();
        }
    }

    let first_vowel = items.iter().position(|(l, _)| is_vowel(l));
    let mut i = 2;
    while i + 2 < items.len() {
        let in_window = items[i].0 == "a"
            && is_vowel(&items[i - 2].0)
            && is_consonant(&items[i - 1].0)
            && is_consonant(&items[i + 1].0)
            && is_vowel(&items[i + 2].0);
        if in_window && Some(i) != first_vowel && !would_leave_cluster(&items, i, &is_consonant)
        {
            items.remove(i);
        } else {
            i += 1;
        }
    }
    unzip_items(items, seq)
}

fn would_leave_cluster(
    items: &[(String, bool)],
    i: usize,
    is_consonant: &dyn Fn(&str) -> bool,
) -> bool {
    let left = items[..i]
        .iter()
        .rev()
        .take_while(|(l, _)| is_consonant(l))
        .count();
    let right = items[i + 1..]
        .iter()
        .take_while(|(l, _)| is_consonant(l))
        .count();
    left + right >= 3
}

/// Position-dependent visarga handling (the shipped Sanskrit pack).
pub fn visarga_rules(seq: &ClsSequence, inventory: &Inventory) -> ClsSequence {
    crate::data::embedded()
        .rule_pack("sanskrit_visarga")
        .expect("shipped pack present")
        .apply(seq, inventory)
}

/// Backward transposition of a word-final short i/u (the shipped Maithili pack).
pub fn epenthesis(seq: &ClsSequence, inventory: &Inventory) -> ClsSequence {
    crate::data::embedded()
        .rule_pack("maithili_epenthesis")
        .expect("shipped pack present")
        .apply(seq, inventory)
}

/// Registry of rule packs available to profiles.
pub trait PackRegistry {
    fn rule_pack(&self, name: &str) -> Option<&RulePack>;
}

impl PackRegistry for HashMap<String, RulePack> {
    fn rule_pack(&self, name: &str) -> Option<&RulePack> {
        self.get(name)
    }
}

/// Runs the profile's pre-family packs, the family rule (IA deletes schwas,
/// DR retains them), its post-family packs, and finally the base fallback on
/// every remaining extended label. The output contains only base labels.
pub fn apply_rules(
    seq: &ClsSequence,
    profile: &LanguageProfile,
    registry: &dyn PackRegistry,
    inventory: &Inventory,
) -> Result<ClsSequence> {
    let mut packs: Vec<&RulePack> = Vec::with_capacity(profile.rule_packs.len());
    for name in &profile.rule_packs {
        packs.push(
            registry
                .rule_pack(name)
                .ok_or_else(|| Error::UnknownRulePack(name.clone()))?,
        );
    }

    let mut out = seq.clone();
    for pack in packs.iter().filter(|p| p.stage == Stage::PreFamily) {
        out = pack.apply(&out, inventory);
    }
    if profile.family == Family::Ia {
        out = schwa_delete(&out, inventory);
    }
    for pack in packs.iter().filter(|p| p.stage == Stage::PostFamily) {
        out = pack.apply(&out, inventory);
    }
    for label in &mut out.labels {
        let base = inventory.fallback(label)?;
        if base != label.as_str() {
            *label = base.to_string();
        }
    }
    Ok(out)
}

/// A tokenizer unit: a parsed word or a punctuation break marker.
#[derive(Debug, Clone, PartialEq)]
pub enum Token {
    Word(ClsSequence),
    Break(String),
}

/// Whitespace and punctuation delimit words; punctuation is kept as break
/// markers and never reaches the script reader.
pub fn tokenize(text: &str) -> Vec<(String, bool)> {
    let mut out: Vec<(String, bool)> = Vec::new();
    let mut word = String::new();
    for c in text.chars() {
        if c.is_whitespace() {
            if !word.is_empty() {
                out.push((std::mem::take(&mut word), false));
            }
        } else if is_break_char(c) {
            if !word.is_empty() {
                out.push((std::mem::take(&mut word), false));
            }
            match out.last_mut() {
                Some((run, true)) => run.push(c),
                _ => out.push((c.to_string(), true)),
            }
        } else {
            word.push(c);
        }
    }
    if !word.is_empty() {
        out.push((word, false));
    }
    out
}

fn is_break_char(c: char) -> bool {
    c.is_ascii_punctuation()
        || matches!(
            c,
            '\u{0964}'          // danda
            | '\u{0965}'        // double danda
            | '\u{0970}'        // abbreviation sign
            | '\u{2013}'..='\u{2026}' // dashes, quotes, ellipsis
            | '\u{00AB}'
            | '\u{00BB}'
        )
}
