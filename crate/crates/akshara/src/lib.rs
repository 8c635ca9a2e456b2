//! Linguistic front-end for zero-shot speech synthesis of Indic-script text.
//!
//! The pipeline converts Unicode text (Devanagari, Kannada, Telugu) into a
//! shared phone-label representation, then applies the phonotactic rule
//! family of the *target language* rather than of its script: Indo-Aryan
//! rules delete schwas, Dravidian rules retain them, and per-language rule
//! packs handle cases like the Sanskrit visarga and Maithili vowel
//! transposition. A selector ranks available monolingual synthesizers for a
//! target language by rule family, phone coverage and configured priors.

pub mod data;
pub mod error;
pub mod inventory;
pub mod rules;
pub mod script;
pub mod selector;

pub use data::{default_inventory, embedded, Frontend};
pub use error::{Error, Result};
pub use inventory::{Inventory, Phone, ValidationReport};
pub use rules::{
    apply_rules, epenthesis, schwa_delete, visarga_rules, Family, LanguageProfile, RulePack,
    Token,
};
pub use script::{normalize_text, Akshara, ClsSequence, Script, ScriptReader, ScriptTable};
pub use selector::{coverage, rank, RankedCandidate, SynthesizerProfile};
