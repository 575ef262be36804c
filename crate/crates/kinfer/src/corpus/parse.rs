//! Plain-text narrative parsing: paragraph segmentation, quote-span pairing,
//! and character-mention detection.

use super::lexicon::Lexicons;
use super::{
    CharacterMention, CharacterRegistry, Document, MentionKind, Paragraph, Utterance, UtteranceId,
};
use std::ops::Range;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuoteStyle {
    /// Straight double quotes `"` paired by alternation.
    #[default]
    Straight,
    /// Typographic marks with distinct opening `\u{201C}` and closing `\u{201D}`.
    Typographic,
}

#[derive(Debug, Clone, Default)]
pub struct ParseConfig {
    pub quote_style: QuoteStyle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Word,
    Punct,
}

/// A token with absolute byte offsets into the source text.
#[derive(Debug, Clone)]
pub struct Token {
    pub span: Range<usize>,
    pub kind: TokenKind,
    pub lower: String,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }

    pub fn is_punct(&self) -> bool {
        self.kind == TokenKind::Punct
    }
}

/// Whitespace + punctuation tokenizer. Words keep internal hyphens and
/// apostrophes (`sister-in-law`, `Elizabeth's`); every other non-space
/// character becomes a single punctuation token. Offsets are absolute,
/// shifted by `base`.
pub fn tokenize(text: &str, base: usize) -> Vec<Token> {
    let mut tokens = Vec::new();
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (offset, ch) = bytes[i];
        if ch.is_whitespace() {
            i += 1;
            continue;
        }
        if ch.is_alphanumeric() {
            let start = offset;
            let mut j = i + 1;
            while j < bytes.len() {
                let (_, c) = bytes[j];
                if c.is_alphanumeric() {
                    j += 1;
                } else if matches!(c, '-' | '\'' | '\u{2019}')
                    && j + 1 < bytes.len()
                    && bytes[j + 1].1.is_alphanumeric()
                {
                    j += 2;
                } else {
                    break;
                }
            }
            let end = if j < bytes.len() { bytes[j].0 } else { text.len() };
            tokens.push(Token {
                span: base + start..base + end,
                kind: TokenKind::Word,
                lower: text[start..end].to_lowercase(),
            });
            i = j;
        } else {
            let end = offset + ch.len_utf8();
            tokens.push(Token {
                span: base + offset..base + end,
                kind: TokenKind::Punct,
                lower: ch.to_string(),
            });
            i += 1;
        }
    }
    tokens
}

const ARTICLES: &[&str] = &["a", "an", "the"];
const POSSESSIVE_PRONOUNS: &[&str] = &["my", "your", "his", "her", "its", "our", "their"];
const NUMBER_WORDS: &[&str] = &[
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven",
    "twelve", "first", "second", "third", "fourth", "fifth", "sixth", "seventh", "eighth",
    "ninth", "tenth", "eleventh", "twelfth",
];
const PERSONAL_PRONOUNS: &[&str] = &[
    "i", "me", "you", "he", "him", "she", "her", "we", "us", "they", "them",
];
const SECOND_PERSON: &[&str] = &[
    "you", "your", "yours", "yourself", "yourselves", "thou", "thee", "thy", "thine", "ye",
];

fn is_determiner(lower: &str) -> bool {
    ARTICLES.contains(&lower)
        || POSSESSIVE_PRONOUNS.contains(&lower)
        || NUMBER_WORDS.contains(&lower)
        || lower.chars().all(|c| c.is_ascii_digit())
        || lower.ends_with("'s")
        || lower.ends_with("\u{2019}s")
}

/// Parse a narrative into paragraphs, utterances and character mentions.
///
/// Paragraphs split on blank-line boundaries and tile the text exactly.
/// Quote spans pair left-to-right within a paragraph; an unclosed quote is
/// closed at paragraph end, with a diagnostic unless the next paragraph
/// re-opens one (the continued-speech convention, flagged on the utterance).
pub fn parse_narrative(
    text: &str,
    registry: &CharacterRegistry,
    lexicons: &Lexicons,
    config: &ParseConfig,
) -> Document {
    let mut diagnostics = Vec::new();
    let tiles = split_paragraph_tiles(text);
    let mut paragraphs = Vec::with_capacity(tiles.len());

    for (index, tile) in tiles.iter().enumerate() {
        let slice = &text[tile.clone()];
        let next_opens_with_quote = tiles
            .get(index + 1)
            .map(|next| {
                let next_slice = &text[next.clone()];
                match next_slice.trim_start().chars().next() {
                    Some(c) => is_opening_quote(c, config.quote_style),
                    None => false,
                }
            })
            .unwrap_or(false);

        let quote_spans = pair_quotes(
            slice,
            tile.start,
            index,
            config.quote_style,
            next_opens_with_quote,
            &mut diagnostics,
        );

        let mut utterances = Vec::with_capacity(quote_spans.len());
        for (position, (span, continues)) in quote_spans.into_iter().enumerate() {
            let inner = inner_text(text, &span, config.quote_style);
            let is_speaker = speaker_heuristic(&inner);
            utterances.push(Utterance {
                id: UtteranceId::new(index, position),
                span,
                text: inner,
                paragraph_index: index,
                position_in_paragraph: position,
                is_speaker_utterance: is_speaker,
                continues,
            });
        }

        let mentions = detect_mentions(slice, tile.start, registry, lexicons);

        paragraphs.push(Paragraph {
            index,
            span: tile.clone(),
            utterances,
            mentions,
        });
    }

    Document {
        source_name: String::new(),
        text: text.to_string(),
        paragraphs,
        diagnostics,
    }
}

/// Paragraph tiles: maximal non-blank line runs, each tile extended through
/// its trailing separator so the tiles cover the text exactly.
fn split_paragraph_tiles(text: &str) -> Vec<Range<usize>> {
    let mut content_starts = Vec::new();
    let mut offset = 0;
    let mut in_paragraph = false;
    for line in text.split_inclusive('\n') {
        let blank = line.trim().is_empty();
        if !blank && !in_paragraph {
            content_starts.push(offset);
            in_paragraph = true;
        } else if blank {
            in_paragraph = false;
        }
        offset += line.len();
    }

    if content_starts.is_empty() {
        if text.is_empty() {
            return Vec::new();
        }
        return vec![std::ops::Range { start: 0, end: text.len() }];
    }

    let mut tiles = Vec::with_capacity(content_starts.len());
    for (i, _) in content_starts.iter().enumerate() {
        let start = if i == 0 { 0 } else { content_starts[i] };
        let end = content_starts.get(i + 1).copied().unwrap_or(text.len());
        tiles.push(start..end);
    }
    tiles
}

fn is_opening_quote(c: char, style: QuoteStyle) -> bool {
    match style {
        QuoteStyle::Straight => c == '"',
        QuoteStyle::Typographic => c == '\u{201C}',
    }
}

/// Pair quote marks left-to-right within one paragraph. Returns utterance
/// spans (including the marks) plus the `continues` flag for an utterance
/// closed at paragraph end by the continued-speech convention.
fn pair_quotes(
    slice: &str,
    base: usize,
    paragraph_index: usize,
    style: QuoteStyle,
    next_opens_with_quote: bool,
    diagnostics: &mut Vec<String>,
) -> Vec<(Range<usize>, bool)> {
    let content_end = base + slice.trim_end().len();
    let mut spans: Vec<(Range<usize>, bool)> = Vec::new();
    let mut open: Option<usize> = None;

    for (offset, ch) in slice.char_indices() {
        let position = base + offset;
        match style {
            QuoteStyle::Straight => {
                if ch == '"' {
                    match open.take() {
                        Some(start) => spans.push((start..position + 1, false)),
                        None => open = Some(position),
                    }
                }
            }
            QuoteStyle::Typographic => {
                if ch == '\u{201C}' {
                    if let Some(start) = open.take() {
                        diagnostics.push(format!(
                            "paragraph {paragraph_index}: opening quote inside an open quote; closing the first at the new mark"
                        ));
                        spans.push((start..position, false));
                    }
                    open = Some(position);
                } else if ch == '\u{201D}' {
                    match open.take() {
                        Some(start) => spans.push((start..position + '\u{201D}'.len_utf8(), false)),
                        None => diagnostics.push(format!(
                            "paragraph {paragraph_index}: closing quote without an opening one; ignored"
                        )),
                    }
                }
            }
        }
    }

    if let Some(start) = open {
        if next_opens_with_quote {
            spans.push((start..content_end, true));
        } else {
            diagnostics.push(format!(
                "paragraph {paragraph_index}: unbalanced quotation mark; quote closed at paragraph end"
            ));
            spans.push((start..content_end, false));
        }
    }
    spans
}

fn inner_text(text: &str, span: &Range<usize>, style: QuoteStyle) -> String {
    let raw = &text[span.clone()];
    let raw = match style {
        QuoteStyle::Straight => raw.strip_prefix('"').unwrap_or(raw),
        QuoteStyle::Typographic => raw.strip_prefix('\u{201C}').unwrap_or(raw),
    };
    let raw = match style {
        QuoteStyle::Straight => raw.strip_suffix('"').unwrap_or(raw),
        QuoteStyle::Typographic => raw.strip_suffix('\u{201D}').unwrap_or(raw),
    };
    raw.to_string()
}

/// Quoted phrases and aphorisms are non-speaker utterances: shorter than 3
/// word tokens, no sentence-final punctuation, no second-person pronoun.
/// Gold attribution overrides this at load time.
fn speaker_heuristic(inner: &str) -> bool {
    let tokens = tokenize(inner, 0);
    let words = tokens.iter().filter(|t| t.is_word()).count();
    let has_final_punct = inner
        .trim_end()
        .ends_with(['.', '!', '?']);
    let has_second_person = tokens
        .iter()
        .any(|t| t.is_word() && SECOND_PERSON.contains(&t.lower.as_str()));
    words >= 3 || has_final_punct || has_second_person
}

fn detect_mentions(
    slice: &str,
    base: usize,
    registry: &CharacterRegistry,
    lexicons: &Lexicons,
) -> Vec<CharacterMention> {
    let mut mentions = Vec::new();

    // Named mentions: longest alias match, greedy left-to-right.
    let mut alias_hits: Vec<(usize, usize, &str)> = Vec::new();
    for (alias, _) in registry.aliases() {
        for (start, _) in slice.match_indices(alias.as_str()) {
            let before_ok = start == 0
                || !slice[..start]
                    .chars()
                    .next_back()
                    .is_some_and(|c| c.is_alphanumeric());
            let end = start + alias.len();
            let after_ok = !slice[end..].chars().next().is_some_and(|c| c.is_alphanumeric());
            if before_ok && after_ok {
                alias_hits.push((start, end, alias));
            }
        }
    }
    alias_hits.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut cursor = 0;
    let mut named_spans: Vec<Range<usize>> = Vec::new();
    for (start, end, alias) in alias_hits {
        if start < cursor {
            continue;
        }
        cursor = end;
        named_spans.push(start..end);
        mentions.push(CharacterMention {
            kind: MentionKind::Named,
            span: base + start..base + end,
            surface: alias.to_string(),
            resolved: super::resolve_alias(alias, registry),
        });
    }

    let overlaps = |span: &Range<usize>, taken: &[Range<usize>]| {
        taken.iter().any(|t| span.start < t.end && t.start < span.end)
    };

    // Nominal mentions: determiner + head noun over adjacent word tokens.
    let tokens = tokenize(slice, 0);
    let mut nominal_spans: Vec<Range<usize>> = Vec::new();
    for pair in tokens.windows(2) {
        let (det, noun) = (&pair[0], &pair[1]);
        if !det.is_word() || !noun.is_word() {
            continue;
        }
        if !is_determiner(&det.lower) || !lexicons.is_head_noun(&noun.lower) {
            continue;
        }
        let span = det.span.start..noun.span.end;
        if overlaps(&span, &named_spans) || overlaps(&span, &nominal_spans) {
            continue;
        }
        nominal_spans.push(span.clone());
        mentions.push(CharacterMention {
            kind: MentionKind::Nominal,
            span: base + span.start..base + span.end,
            surface: slice[span].to_string(),
            resolved: None,
        });
    }

    // Pronoun mentions from a fixed personal-pronoun list.
    for token in &tokens {
        if !token.is_word() || !PERSONAL_PRONOUNS.contains(&token.lower.as_str()) {
            continue;
        }
        if overlaps(&token.span, &named_spans) || overlaps(&token.span, &nominal_spans) {
            continue;
        }
        mentions.push(CharacterMention {
            kind: MentionKind::Pronoun,
            span: base + token.span.start..base + token.span.end,
            surface: slice[token.span.clone()].to_string(),
            resolved: None,
        });
    }

    mentions.sort_by_key(|m| m.span.start);
    mentions
}
