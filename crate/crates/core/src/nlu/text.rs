use super::lexicon::Lexicon;
use super::morph;

const DETACHED: &[char] = &['.', ',', '!', '?', ';', ':'];

/// Trims, collapses whitespace, case-folds and restores umlauts.
pub fn normalize(text: &str, lexicon: &Lexicon) -> String {
    text.split_whitespace()
        .map(|w| normalize_word(w, lexicon))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Normalizes a single whitespace-free chunk; surrounding punctuation is kept.
pub fn normalize_word(word: &str, lexicon: &Lexicon) -> String {
    let lower = word.to_lowercase();
    let start = lower.find(|c: char| c.is_alphanumeric());
    let end = lower.rfind(|c: char| c.is_alphanumeric());
    let (Some(start), Some(end)) = (start, end) else {
        return lower;
    };
    let end = end + lower[end..].chars().next().map_or(1, char::len_utf8);
    let core = &lower[start..end];
    if !core.chars().all(char::is_alphabetic) {
        return lower;
    }
    match restore_umlauts(core, lexicon) {
        Some(fixed) => format!("{}{}{}", &lower[..start], fixed, &lower[end..]),
        None => lower,
    }
}

fn recognized(word: &str, lexicon: &Lexicon) -> bool {
    lexicon.is_known(word) || morph::fallback_lemma(word, lexicon).is_some()
}

/// Rewrites plain vowels to umlauts when only the umlauted form is known.
/// Variants with fewer substitutions are tried first.
fn restore_umlauts(word: &str, lexicon: &Lexicon) -> Option<String> {
    if recognized(word, lexicon) {
        return None;
    }
    let chars: Vec<char> = word.chars().collect();
    let slots: Vec<(usize, char)> = chars
        .iter()
        .enumerate()
        .filter_map(|(i, c)| {
            lexicon
                .umlauts()
                .iter()
                .find(|(plain, _)| plain == c)
                .map(|(_, u)| (i, *u))
        })
        .take(8)
        .collect();
    if slots.is_empty() {
        return None;
    }
    let mut masks: Vec<u32> = (1..(1u32 << slots.len())).collect();
    masks.sort_by_key(|m| (m.count_ones(), m.reverse_bits()));
    masks.into_iter().find_map(|mask| {
        let mut candidate = chars.clone();
        for (bit, (pos, umlaut)) in slots.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                candidate[*pos] = *umlaut;
            }
        }
        let candidate: String = candidate.into_iter().collect();
        recognized(&candidate, lexicon).then_some(candidate)
    })
}

/// Splits a message into sentences at `.`, `!` or `?` followed by whitespace or the end.
pub fn segment(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        current.push(c);
        let terminal = matches!(c, '.' | '!' | '?');
        let boundary = match chars.peek() {
            None => true,
            Some(n) => n.is_whitespace(),
        };
        if terminal && boundary {
            push_sentence(&mut out, &mut current);
        }
    }
    push_sentence(&mut out, &mut current);
    out
}

fn push_sentence(out: &mut Vec<String>, current: &mut String) {
    let s = current.split_whitespace().collect::<Vec<_>>().join(" ");
    if !s.is_empty() {
        out.push(s);
    }
    current.clear();
}

/// Whitespace tokenization with sentence punctuation detached.
/// Numbers with a decimal comma stay whole.
pub fn tokenize(sentence: &str) -> Vec<String> {
    let mut out = Vec::new();
    for chunk in sentence.split_whitespace() {
        let mut lead = Vec::new();
        let mut rest = chunk;
        while let Some(c) = rest.chars().next().filter(|c| DETACHED.contains(c)) {
            lead.push(c.to_string());
            rest = &rest[c.len_utf8()..];
        }
        let mut trail = Vec::new();
        while let Some(c) = rest.chars().last().filter(|c| DETACHED.contains(c)) {
            trail.push(c.to_string());
            rest = &rest[..rest.len() - c.len_utf8()];
        }
        out.extend(lead);
        if !rest.is_empty() {
            out.push(rest.to_owned());
        }
        out.extend(trail.into_iter().rev());
    }
    out
}

pub fn is_punct(token: &str) -> bool {
    !token.is_empty() && token.chars().all(|c| DETACHED.contains(&c))
}

pub fn is_number(token: &str) -> bool {
    let mut digits = false;
    for c in token.chars() {
        match c {
            '0'..='9' => digits = true,
            ',' | '.' => {}
            _ => return false,
        }
    }
    digits
}
