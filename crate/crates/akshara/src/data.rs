//! Shipped data files and the front-end facade binding them together.
//!
//! The defaults are embedded in the binary; a data directory with the same
//! layout (inventory.json, scripts/, packs/, profiles/, synths/) can replace
//! them at runtime.

use std::collections::{BTreeSet, HashMap};
use std::path::Path;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::inventory::Inventory;
use crate::rules::{
    apply_rules, tokenize, LanguageProfile, PackRegistry, RulePack, Token,
};
use crate::script::{normalize_text, ClsSequence, Script, ScriptReader, ScriptTable};
use crate::selector::SynthesizerProfile;

const INVENTORY_JSON: &str = include_str!("../data/inventory.json");
const DEVANAGARI_JSON: &str = include_str!("../data/scripts/devanagari.json");
const KANNADA_JSON: &str = include_str!("../data/scripts/kannada.json");
const TELUGU_JSON: &str = include_str!("../data/scripts/telugu.json");
const PACK_SANSKRIT_VISARGA: &str = include_str!("../data/packs/sanskrit_visarga.json");
const PACK_MAITHILI_EPENTHESIS: &str = include_str!("../data/packs/maithili_epenthesis.json");

const PROFILES: &[(&str, &str)] = &[
    ("hindi", include_str!("../data/profiles/hindi.json")),
    ("marathi", include_str!("../data/profiles/marathi.json")),
    ("kannada", include_str!("../data/profiles/kannada.json")),
    ("telugu", include_str!("../data/profiles/telugu.json")),
    ("sanskrit", include_str!("../data/profiles/sanskrit.json")),
    (
        "maharashtrian_konkani",
        include_str!("../data/profiles/maharashtrian_konkani.json"),
    ),
    (
        "canara_konkani",
        include_str!("../data/profiles/canara_konkani.json"),
    ),
    ("maithili", include_str!("../data/profiles/maithili.json")),
    ("kurukh", include_str!("../data/profiles/kurukh.json")),
];

const SYNTHS: &[(&str, &str)] = &[
    ("hindi", include_str!("../data/synths/hindi.json")),
    ("marathi", include_str!("../data/synths/marathi.json")),
    ("kannada", include_str!("../data/synths/kannada.json")),
    ("telugu", include_str!("../data/synths/telugu.json")),
];

/// Inventory, script tables, rule packs and shipped profiles as one unit.
#[derive(Debug)]
pub struct Frontend {
    inventory: Inventory,
    tables: HashMap<Script, ScriptTable>,
    packs: HashMap<String, RulePack>,
    profiles: HashMap<String, LanguageProfile>,
    synths: HashMap<String, SynthesizerProfile>,
}

impl PackRegistry for Frontend {
    fn rule_pack(&self, name: &str) -> Option<&RulePack> {
        self.packs.get(name)
    }
}

static EMBEDDED: OnceLock<Frontend> = OnceLock::new();

/// The compiled-in data set.
pub fn embedded() -> &'static Frontend {
    EMBEDDED.get_or_init(|| Frontend::from_embedded().expect("embedded data is well-formed"))
}

/// Convenience accessor for the shipped inventory.
pub fn default_inventory() -> &'static Inventory {
    embedded().inventory()
}

impl Frontend {
    fn from_embedded() -> Result<Self> {
        let inventory = Inventory::from_json_str("inventory.json", INVENTORY_JSON)?;
        let mut tables = HashMap::new();
        for (name, json) in [
            ("devanagari.json", DEVANAGARI_JSON),
            ("kannada.json", KANNADA_JSON),
            ("telugu.json", TELUGU_JSON),
        ] {
            let table = ScriptTable::from_json_str(name, json)?;
            tables.insert(table.script(), table);
        }
        let mut packs = HashMap::new();
        for (name, json) in [
            ("sanskrit_visarga.json", PACK_SANSKRIT_VISARGA),
            ("maithili_epenthesis.json", PACK_MAITHILI_EPENTHESIS),
        ] {
            let pack = RulePack::from_json_str(name, json)?;
            packs.insert(pack.name.clone(), pack);
        }
        let mut profiles = HashMap::new();
        for (name, json) in PROFILES {
            profiles.insert(name.to_string(), LanguageProfile::from_json_str(name, json)?);
        }
        let mut synths = HashMap::new();
        for (name, json) in SYNTHS {
            synths.insert(name.to_string(), SynthesizerProfile::from_json_str(name, json)?);
        }
        Ok(Frontend {
            inventory,
            tables,
            packs,
            profiles,
            synths,
        })
    }

    /// Loads a data directory with the shipped layout. Profiles and synths
    /// are optional; inventory, scripts and packs must be present.
    pub fn from_dir(dir: &Path) -> Result<Self> {
        let inventory = Inventory::load(&dir.join("inventory.json"))?;
        let mut tables = HashMap::new();
        for entry in std::fs::read_dir(dir.join("scripts"))? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                let table = ScriptTable::load(&path)?;
                tables.insert(table.script(), table);
            }
        }
        let mut packs = HashMap::new();
        let packs_dir = dir.join("packs");
        if packs_dir.is_dir() {
            for entry in std::fs::read_dir(packs_dir)? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e == "json") {
                    let pack = RulePack::load(&path)?;
                    packs.insert(pack.name.clone(), pack);
                }
            }
        }
        let mut profiles = HashMap::new();
        let profiles_dir = dir.join("profiles");
        if profiles_dir.is_dir() {
            for entry in std::fs::read_dir(profiles_dir)? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e == "json") {
                    let profile = LanguageProfile::load(&path)?;
                    profiles.insert(profile.name.clone(), profile);
                }
            }
        }
        let mut synths = HashMap::new();
        let synths_dir = dir.join("synths");
        if synths_dir.is_dir() {
            for entry in std::fs::read_dir(synths_dir)? {
                let path = entry?.path();
                if path.extension().is_some_and(|e| e == "json") {
                    let synth = SynthesizerProfile::load(&path)?;
                    synths.insert(synth.name.clone(), synth);
                }
            }
        }
        Ok(Frontend {
            inventory,
            tables,
            packs,
            profiles,
            synths,
        })
    }

    pub fn inventory(&self) -> &Inventory {
        &self.inventory
    }

    pub fn script_table(&self, script: Script) -> Result<&ScriptTable> {
        self.tables
            .get(&script)
            .ok_or_else(|| Error::ScriptMismatch(script.name().to_string()))
    }

    pub fn reader(&self, script: Script) -> Result<ScriptReader<'_>> {
        Ok(ScriptReader::new(&self.inventory, self.script_table(script)?))
    }

    pub fn profile(&self, name: &str) -> Result<&LanguageProfile> {
        self.profiles.get(name).ok_or_else(|| Error::MalformedProfile {
            path: Some(name.to_string()),
            message: "no such profile".to_string(),
        })
    }

    pub fn profile_names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.profiles.keys().map(|s| s.as_str()).collect();
        names.sort_unstable();
        names
    }

    pub fn synth(&self, name: &str) -> Result<&SynthesizerProfile> {
        self.synths.get(name).ok_or_else(|| Error::MalformedProfile {
            path: Some(name.to_string()),
            message: "no such synthesizer profile".to_string(),
        })
    }

    pub fn synth_names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self.synths.keys().map(|s| s.as_str()).collect();
        names.sort_unstable();
        names
    }

    /// Loads and validates a profile file against this data set: family and
    /// schema are checked by the deserializer, referenced packs must resolve.
    pub fn load_profile(&self, path: &Path) -> Result<LanguageProfile> {
        let profile = LanguageProfile::load(path)?;
        for pack in &profile.rule_packs {
            if self.rule_pack(pack).is_none() {
                return Err(Error::UnknownRulePack(pack.clone()));
            }
        }
        self.script_table(profile.script)?;
        Ok(profile)
    }

    /// Full per-word pipeline: normalize, read script, apply family rules.
    pub fn parse_word(&self, word: &str, profile: &LanguageProfile) -> Result<ClsSequence> {
        let normalized = normalize_text(word);
        if let Some(labels) = profile.exceptions.get(&normalized) {
            for l in labels {
                self.inventory.lookup(l)?;
            }
            return Ok(ClsSequence {
                labels: labels.clone(),
                nasal_flags: vec![false; labels.len()],
                word: normalized,
                script: profile.script,
            });
        }
        let reader = self.reader(profile.script)?;
        let raw = reader.word_to_raw_cls(&normalized)?;
        apply_rules(&raw, profile, self, &self.inventory)
    }

    /// Tokenizes text and parses every word; punctuation runs become break
    /// markers. Word order is preserved.
    pub fn parse_text(&self, text: &str, profile: &LanguageProfile) -> Result<Vec<Token>> {
        let mut out = Vec::new();
        let mut word_index = 0usize;
        for (chunk, is_break) in tokenize(text) {
            if is_break {
                out.push(Token::Break(chunk));
                continue;
            }
            let seq = self
                .parse_word(&chunk, profile)
                .map_err(|e| Error::InWord {
                    word_index,
                    word: chunk.clone(),
                    source: Box::new(e),
                })?;
            out.push(Token::Word(seq));
            word_index += 1;
        }
        Ok(out)
    }

    /// Like `parse_text` but yields only the word sequences.
    pub fn parse_words(&self, text: &str, profile: &LanguageProfile) -> Result<Vec<ClsSequence>> {
        Ok(self
            .parse_text(text, profile)?
            .into_iter()
            .filter_map(|t| match t {
                Token::Word(seq) => Some(seq),
                Token::Break(_) => None,
            })
            .collect())
    }

    /// Base labels reachable in this profile's post-rule output: everything
    /// its script can emit plus pack-introduced labels, folded through the
    /// fallback map.
    pub fn reachable_phone_set(&self, profile: &LanguageProfile) -> Result<BTreeSet<String>> {
        let table = self.script_table(profile.script)?;
        let mut labels = table.emittable_labels(&self.inventory);
        for pack_name in &profile.rule_packs {
            let pack = self
                .rule_pack(pack_name)
                .ok_or_else(|| Error::UnknownRulePack(pack_name.clone()))?;
            labels.extend(pack.emitted_labels());
        }
        let mut out = BTreeSet::new();
        for label in labels {
            let base = self.inventory.fallback(&label)?;
            if self
                .inventory
                .lookup(base)
                .map(|p| !matches!(p.category, crate::inventory::Category::Modifier))
                .unwrap_or(false)
            {
                out.insert(base.to_string());
            }
        }
        Ok(out)
    }

    /// Selector target set: the union of labels parsed from a sample corpus,
    /// or the profile's declared inventory when no corpus is given.
    pub fn target_phone_set(
        &self,
        profile: &LanguageProfile,
        corpus: Option<&str>,
    ) -> Result<BTreeSet<String>> {
        match corpus {
            Some(text) => {
                let mut set = BTreeSet::new();
                for line in text.lines() {
                    for seq in self.parse_words(line, profile)? {
                        set.extend(seq.labels);
                    }
                }
                Ok(set)
            }
            None => Ok(profile.phone_inventory.iter().cloned().collect()),
        }
    }
}
