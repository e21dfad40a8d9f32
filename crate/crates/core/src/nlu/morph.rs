use super::lexicon::Lexicon;

const FALLBACK_SUFFIXES: &[&str] = &["en", "n", "e", "s", "es", "er", "st", "t"];
const MIN_PART: usize = 3;

/// Lemma of an already normalized surface form.
pub fn lemmatize(normalized: &str, lexicon: &Lexicon) -> String {
    if let Some(lemma) = lexicon.lemma_entry(normalized) {
        return lemma.to_owned();
    }
    if lexicon.tag(normalized).is_some() {
        return normalized.to_owned();
    }
    fallback_lemma(normalized, lexicon).unwrap_or_else(|| normalized.to_owned())
}

/// Suffix-stripping guess used when the lemma table has no entry.
pub fn fallback_lemma(word: &str, lexicon: &Lexicon) -> Option<String> {
    for suffix in FALLBACK_SUFFIXES {
        let Some(stem) = word.strip_suffix(suffix) else {
            continue;
        };
        if stem.chars().count() < 2 {
            continue;
        }
        if lexicon.tag(stem).is_some() {
            return Some(stem.to_owned());
        }
        let infinitive = format!("{stem}en");
        if lexicon.tag(&infinitive).is_some() {
            return Some(infinitive);
        }
    }
    None
}

/// Greedy longest-head compound split of a normalized word.
///
/// Parts are substrings of the input; linking elements between parts are
/// dropped, so the input is recovered by re-inserting them.
pub fn split_compound(word: &str, lexicon: &Lexicon) -> Vec<String> {
    let mut parts = Vec::new();
    split_into(word, lexicon, &mut parts);
    parts
}

fn split_into(word: &str, lexicon: &Lexicon, parts: &mut Vec<String>) {
    match split_once(word, lexicon) {
        Some((prefix, head)) => {
            split_into(&prefix, lexicon, parts);
            parts.push(head);
        }
        None => parts.push(word.to_owned()),
    }
}

fn split_once(word: &str, lexicon: &Lexicon) -> Option<(String, String)> {
    let len = word.chars().count();
    let mut heads: Vec<&String> = lexicon
        .heads()
        .iter()
        .filter(|h| {
            let hl = h.chars().count();
            hl < len && word.ends_with(h.as_str())
        })
        .collect();
    heads.sort_by_key(|h| std::cmp::Reverse(h.chars().count()));
    for head in heads {
        let rest = &word[..word.len() - head.len()];
        let options: Vec<&str> = lexicon
            .linking()
            .iter()
            .filter_map(|link| rest.strip_suffix(link.as_str()))
            .filter(|p| p.chars().count() >= MIN_PART)
            .collect();
        let known = options
            .iter()
            .find(|p| lexicon.is_known(p) || lexicon.tag(&lemmatize(p, lexicon)).is_some());
        let splittable = || options.iter().find(|p| split_once(p, lexicon).is_some());
        let bare = || options.iter().find(|p| p.len() == rest.len());
        if let Some(prefix) = known.or_else(splittable).or_else(bare) {
            return Some((prefix.to_string(), head.clone()));
        }
    }
    None
}

/// True when `parts` rebuild `word` with one permitted linking element between neighbours.
pub fn reassembles(word: &str, parts: &[String], linking: &[String]) -> bool {
    fn go(rest: &str, parts: &[String], linking: &[String]) -> bool {
        let Some((first, tail)) = parts.split_first() else {
            return rest.is_empty();
        };
        let Some(after) = rest.strip_prefix(first.as_str()) else {
            return false;
        };
        if tail.is_empty() {
            return after.is_empty();
        }
        linking
            .iter()
            .filter_map(|l| after.strip_prefix(l.as_str()))
            .any(|r| go(r, tail, linking))
    }
    go(word, parts, linking)
}
