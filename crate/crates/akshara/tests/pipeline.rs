//! Full-pipeline checks: cross-script consistency on the shipped
//! transliteration pair list and randomized invariants of the rule engine.

use std::collections::BTreeSet;

use proptest::prelude::*;

use akshara::inventory::Category;
use akshara::rules::{apply_rules, epenthesis, schwa_delete, visarga_rules};
use akshara::script::{normalize_text, ClsSequence, Script};
use akshara::{embedded, Family};

const PAIRS_TSV: &str = include_str!("../data/translit_pairs_dev_knda.tsv");

fn pairs() -> Vec<(String, String)> {
    PAIRS_TSV
        .lines()
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (d, k) = l.split_once('\t').expect("two columns");
            (d.to_string(), k.to_string())
        })
        .collect()
}

#[test]
fn pair_list_is_large_enough() {
    assert!(pairs().len() >= 100, "shipped pair list too small");
}

#[test]
fn cross_script_raw_cls_agrees() {
    let fe = embedded();
    let dev = fe.reader(Script::Devanagari).unwrap();
    let knd = fe.reader(Script::Kannada).unwrap();
    for (d, k) in pairs() {
        let from_dev = dev.word_to_raw_cls(&normalize_text(&d)).unwrap();
        let from_knd = knd.word_to_raw_cls(&normalize_text(&k)).unwrap();
        assert_eq!(
            from_dev.labels, from_knd.labels,
            "raw labels differ for {d} / {k}"
        );
        assert_eq!(
            from_dev.nasal_flags, from_knd.nasal_flags,
            "nasal flags differ for {d} / {k}"
        );
    }
}

#[test]
fn cross_script_post_rule_cls_agrees() {
    let fe = embedded();
    let dev = fe.reader(Script::Devanagari).unwrap();
    let knd = fe.reader(Script::Kannada).unwrap();
    // family rules depend on the target language, not the script; check one
    // profile from each family
    for profile_name in ["sanskrit", "hindi"] {
        let profile = fe.profile(profile_name).unwrap();
        for (d, k) in pairs() {
            let a = apply_rules(
                &dev.word_to_raw_cls(&normalize_text(&d)).unwrap(),
                profile,
                fe,
                fe.inventory(),
            )
            .unwrap();
            let b = apply_rules(
                &knd.word_to_raw_cls(&normalize_text(&k)).unwrap(),
                profile,
                fe,
                fe.inventory(),
            )
            .unwrap();
            assert_eq!(a.labels, b.labels, "{profile_name}: {d} / {k}");
        }
    }
}

#[test]
fn golden_transformations() {
    let fe = embedded();
    let one = |text: &str, profile: &str| {
        fe.parse_words(text, fe.profile(profile).unwrap()).unwrap()[0]
            .labels
            .clone()
    };
    assert_eq!(one("विकास", "sanskrit"), ["w", "i", "k", "aa", "s", "a"]);
    assert_eq!(one("विकास", "hindi"), ["w", "i", "k", "aa", "s"]);
    assert_eq!(one("अन्तःस्थ", "sanskrit"), ["a", "n", "t", "a", "s", "s", "th", "a"]);
    assert_eq!(one("नमः", "sanskrit"), ["n", "a", "m", "a", "h", "a"]);
    assert_eq!(one("कृष्णः", "sanskrit"), ["k", "ru", "sx", "nx", "a", "h", "a"]);
    assert_eq!(one("अछि", "maithili"), ["a", "i", "ch"]);
    assert_eq!(one("मधु", "maithili"), ["m", "a", "u", "dh"]);
    assert_eq!(one("बालु", "maithili"), ["b", "aa", "u", "l"]);
}

fn base_vowels() -> Vec<String> {
    embedded()
        .inventory()
        .phones()
        .iter()
        .filter(|p| !p.extended && p.category == Category::Vowel)
        .map(|p| p.label.clone())
        .collect()
}

fn base_consonants() -> Vec<String> {
    embedded()
        .inventory()
        .phones()
        .iter()
        .filter(|p| !p.extended && p.category == Category::Consonant)
        .map(|p| p.label.clone())
        .collect()
}

fn extended_labels() -> Vec<String> {
    embedded()
        .inventory()
        .phones()
        .iter()
        .filter(|p| p.extended)
        .map(|p| p.label.clone())
        .collect()
}

/// Random well-formed word sequences: vowels, consonants and extended labels.
fn arb_sequence() -> impl Strategy<Value = ClsSequence> {
    let vowels = base_vowels();
    let consonants = base_consonants();
    let extended = extended_labels();
    let item = prop_oneof![
        4 => proptest::sample::select(vowels),
        5 => proptest::sample::select(consonants),
        1 => proptest::sample::select(extended),
    ];
    proptest::collection::vec(item, 1..12).prop_map(|labels| {
        let flags = vec![false; labels.len()];
        ClsSequence {
            labels,
            nasal_flags: flags,
            word: String::new(),
            script: Script::Devanagari,
        }
    })
}

fn vowel_multiset(seq: &ClsSequence) -> Vec<String> {
    let inv = embedded().inventory();
    let mut vs: Vec<String> = seq
        .labels
        .iter()
        .filter(|l| inv.lookup(l).map(|p| p.is_vowel()).unwrap_or(false))
        .cloned()
        .collect();
    vs.sort();
    vs
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn dr_family_conserves_vowels(seq in arb_sequence()) {
        let fe = embedded();
        // DR profile with no packs: vowel multiset is preserved exactly
        let profile = fe.profile("kannada").unwrap();
        let out = apply_rules(&seq, profile, fe, fe.inventory()).unwrap();
        // fallback only rewrites consonants, so compare vowel multisets directly
        prop_assert_eq!(vowel_multiset(&seq), vowel_multiset(&out));
    }

    #[test]
    fn ia_schwa_delete_is_safe(seq in arb_sequence()) {
        let fe = embedded();
        let inv = fe.inventory();
        let before_vowels = vowel_multiset(&seq).len();
        let out = schwa_delete(&seq, inv);
        let after_vowels = vowel_multiset(&out).len();
        // never empties the vowels of a voweled word
        if before_vowels > 0 {
            prop_assert!(after_vowels >= 1);
        }
        // only "a" labels disappear, nothing else changes
        let mut removed = 0usize;
        let mut it = out.labels.iter().peekable();
        for l in &seq.labels {
            if it.peek() == Some(&l) {
                it.next();
            } else {
                prop_assert_eq!(l.as_str(), "a", "deleted a non-schwa label");
                removed += 1;
            }
        }
        prop_assert!(it.peek().is_none(), "output is not a subsequence");
        prop_assert_eq!(seq.labels.len() - removed, out.labels.len());
    }

    #[test]
    fn schwa_delete_idempotent(seq in arb_sequence()) {
        let inv = embedded().inventory();
        let once = schwa_delete(&seq, inv);
        prop_assert_eq!(schwa_delete(&once, inv), once);
    }

    #[test]
    fn epenthesis_idempotent_and_local(seq in arb_sequence()) {
        let inv = embedded().inventory();
        let is_cons = |l: &str| inv.lookup(l).map(|p| p.is_consonant()).unwrap_or(false);
        let once = epenthesis(&seq, inv);
        prop_assert_eq!(&epenthesis(&once, inv), &once);
        // identity unless the word ends vowel-consonant-{i,u}
        let n = seq.labels.len();
        let context = n >= 3
            && matches!(seq.labels[n - 1].as_str(), "i" | "u")
            && is_cons(&seq.labels[n - 2])
            && inv.lookup(&seq.labels[n - 3]).map(|p| p.is_vowel()).unwrap_or(false);
        if !context {
            prop_assert_eq!(&once, &seq);
        }
    }

    #[test]
    fn visarga_identity_without_hq(seq in arb_sequence()) {
        let inv = embedded().inventory();
        if !seq.labels.iter().any(|l| l == "hq") {
            prop_assert_eq!(visarga_rules(&seq, inv), seq);
        }
    }

    #[test]
    fn apply_rules_output_is_base_closed(seq in arb_sequence()) {
        let fe = embedded();
        for profile_name in ["hindi", "sanskrit", "maithili", "kurukh", "kannada"] {
            let profile = fe.profile(profile_name).unwrap();
            let out = apply_rules(&seq, profile, fe, fe.inventory()).unwrap();
            for l in &out.labels {
                prop_assert!(fe.inventory().is_base(l), "{}: `{}` not base", profile_name, l);
            }
            prop_assert_eq!(out.labels.len(), out.nasal_flags.len());
        }
    }

    #[test]
    fn normalize_idempotent_random(s in "\\PC*") {
        let once = normalize_text(&s);
        prop_assert_eq!(normalize_text(&once), once);
    }

    #[test]
    fn normalize_idempotent_indic(s in "[\\u0900-\\u097F\\u0C80-\\u0CFF\\u0C00-\\u0C7F ]{0,24}") {
        let once = normalize_text(&s);
        prop_assert_eq!(normalize_text(&once), once);
    }
}

#[test]
fn precomposed_and_decomposed_nukta_parse_identically() {
    let fe = embedded();
    let dev = fe.reader(Script::Devanagari).unwrap();
    // (precomposed letter, base + combining nukta)
    let cases = [
        ("\u{0958}", "\u{0915}\u{093C}"), // qa
        ("\u{0959}", "\u{0916}\u{093C}"),
        ("\u{095A}", "\u{0917}\u{093C}"),
        ("\u{095B}", "\u{091C}\u{093C}"),
        ("\u{095C}", "\u{0921}\u{093C}"),
        ("\u{095D}", "\u{0922}\u{093C}"),
        ("\u{095E}", "\u{092B}\u{093C}"),
        ("\u{095F}", "\u{092F}\u{093C}"),
        ("\u{0929}", "\u{0928}\u{093C}"),
        ("\u{0931}", "\u{0930}\u{093C}"),
        ("\u{0934}", "\u{0933}\u{093C}"),
    ];
    for (pre, dec) in cases {
        let a = dev.word_to_raw_cls(&normalize_text(pre)).unwrap();
        let b = dev.word_to_raw_cls(&normalize_text(dec)).unwrap();
        assert_eq!(a.labels, b.labels, "forms of U+{:04X}", pre.chars().next().unwrap() as u32);
    }
}

#[test]
fn nukta_without_explicit_row_falls_back_to_base_character() {
    let fe = embedded();
    let dev = fe.reader(Script::Devanagari).unwrap();
    // ya + nukta has no extended row; the base character's label stands
    let seq = dev.word_to_raw_cls(&normalize_text("\u{095F}")).unwrap();
    assert_eq!(seq.labels, ["y", "a"]);
    // kha + nukta has one
    let seq = dev.word_to_raw_cls(&normalize_text("\u{0959}")).unwrap();
    assert_eq!(seq.labels, ["khq", "a"]);
}

#[test]
fn reachable_sets_cover_the_golden_outputs() {
    let fe = embedded();
    for (text, profile_name) in [
        ("विकास", "sanskrit"),
        ("अन्तःस्थ", "sanskrit"),
        ("मधु", "maithili"),
        ("विकास", "hindi"),
    ] {
        let profile = fe.profile(profile_name).unwrap();
        let reachable: BTreeSet<String> = fe.reachable_phone_set(profile).unwrap();
        for seq in fe.parse_words(text, profile).unwrap() {
            for l in &seq.labels {
                assert!(reachable.contains(l), "{profile_name}: `{l}` missing");
            }
        }
    }
}
