use std::fmt;

use serde::{Deserialize, Serialize};

use super::LabelerError;

/// A BILUO tag over an entity type index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Tag {
    Outside,
    Begin(usize),
    Inside(usize),
    Last(usize),
    Unit(usize),
}

impl Tag {
    pub fn entity_type(self) -> Option<usize> {
        match self {
            Tag::Outside => None,
            Tag::Begin(t) | Tag::Inside(t) | Tag::Last(t) | Tag::Unit(t) => Some(t),
        }
    }
}

/// Ordered entity types and the derived tag set `O, B-X, I-X, L-X, U-X, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelScheme {
    entity_types: Vec<String>,
}

impl LabelScheme {
    pub fn new<S: Into<String>>(types: impl IntoIterator<Item = S>) -> Result<Self, LabelerError> {
        let entity_types: Vec<String> = types.into_iter().map(Into::into).collect();
        for (i, t) in entity_types.iter().enumerate() {
            if t.is_empty() || t.chars().any(char::is_whitespace) {
                return Err(LabelerError::Scheme(format!("invalid entity type `{t}`")));
            }
            if entity_types[..i].contains(t) {
                return Err(LabelerError::Scheme(format!("duplicate entity type `{t}`")));
            }
        }
        Ok(LabelScheme { entity_types })
    }

    pub fn entity_types(&self) -> &[String] {
        &self.entity_types
    }

    pub fn type_index(&self, name: &str) -> Option<usize> {
        self.entity_types.iter().position(|t| t == name)
    }

    pub fn n_tags(&self) -> usize {
        4 * self.entity_types.len() + 1
    }

    pub fn index(&self, tag: Tag) -> usize {
        match tag {
            Tag::Outside => 0,
            Tag::Begin(t) => 1 + 4 * t,
            Tag::Inside(t) => 2 + 4 * t,
            Tag::Last(t) => 3 + 4 * t,
            Tag::Unit(t) => 4 + 4 * t,
        }
    }

    pub fn tag(&self, index: usize) -> Tag {
        if index == 0 {
            return Tag::Outside;
        }
        let t = (index - 1) / 4;
        match (index - 1) % 4 {
            0 => Tag::Begin(t),
            1 => Tag::Inside(t),
            2 => Tag::Last(t),
            _ => Tag::Unit(t),
        }
    }

    pub fn tags(&self) -> Vec<Tag> {
        (0..self.n_tags()).map(|i| self.tag(i)).collect()
    }

    pub fn name(&self, tag: Tag) -> String {
        match tag {
            Tag::Outside => "O".to_string(),
            Tag::Begin(t) => format!("B-{}", self.entity_types[t]),
            Tag::Inside(t) => format!("I-{}", self.entity_types[t]),
            Tag::Last(t) => format!("L-{}", self.entity_types[t]),
            Tag::Unit(t) => format!("U-{}", self.entity_types[t]),
        }
    }

    pub fn parse(&self, name: &str) -> Result<Tag, LabelerError> {
        if name == "O" {
            return Ok(Tag::Outside);
        }
        let unknown = || LabelerError::UnknownTag(name.to_string());
        let (prefix, ty) = name.split_once('-').ok_or_else(unknown)?;
        let t = self.type_index(ty).ok_or_else(unknown)?;
        match prefix {
            "B" => Ok(Tag::Begin(t)),
            "I" => Ok(Tag::Inside(t)),
            "L" => Ok(Tag::Last(t)),
            "U" => Ok(Tag::Unit(t)),
            _ => Err(unknown()),
        }
    }
}

/// Inclusive token span over an entity type index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub label: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.start, self.end, self.label)
    }
}

/// Encodes non-overlapping spans over `n_tokens` tokens.
pub fn encode_biluo(spans: &[Span], n_tokens: usize, scheme: &LabelScheme) -> Result<Vec<Tag>, LabelerError> {
    let mut tags = vec![Tag::Outside; n_tokens];
    let mut taken = vec![false; n_tokens];
    for span in spans {
        if span.start > span.end || span.end >= n_tokens {
            return Err(LabelerError::SpanOutOfRange(span.to_string(), n_tokens));
        }
        if span.label >= scheme.entity_types().len() {
            return Err(LabelerError::Scheme(format!("span label {} outside scheme", span.label)));
        }
        if taken[span.start..=span.end].iter().any(|&t| t) {
            return Err(LabelerError::Overlap(span.to_string()));
        }
        taken[span.start..=span.end].iter_mut().for_each(|t| *t = true);
        if span.start == span.end {
            tags[span.start] = Tag::Unit(span.label);
        } else {
            tags[span.start] = Tag::Begin(span.label);
            for t in &mut tags[span.start + 1..span.end] {
                *t = Tag::Inside(span.label);
            }
            tags[span.end] = Tag::Last(span.label);
        }
    }
    Ok(tags)
}

/// Spans decoded from a tag sequence plus the number of repairs applied.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub spans: Vec<Span>,
    pub repairs: usize,
}

/// Decodes any tag sequence. Invalid sequences are repaired: an orphan `I`
/// opens a span as if it were `B`, an orphan `L` becomes `U`, and a span
/// left open is closed at its last consecutive same-type token.
pub fn decode_biluo_with_repairs(tags: &[Tag]) -> Decoded {
    let mut spans = Vec::new();
    let mut repairs = 0;
    // (start, type) of the span being read
    let mut open: Option<(usize, usize)> = None;
    let close_dangling = |open: &mut Option<(usize, usize)>, at: usize, spans: &mut Vec<Span>, repairs: &mut usize| {
        if let Some((start, label)) = open.take() {
            spans.push(Span { start, end: at, label });
            *repairs += 1;
        }
    };
    for (i, &tag) in tags.iter().enumerate() {
        match tag {
            Tag::Outside => {
                if open.is_some() {
                    close_dangling(&mut open, i - 1, &mut spans, &mut repairs);
                }
            }
            Tag::Begin(t) => {
                if open.is_some() {
                    close_dangling(&mut open, i - 1, &mut spans, &mut repairs);
                }
                open = Some((i, t));
            }
            Tag::Inside(t) => match open {
                Some((_, ot)) if ot == t => {}
                _ => {
                    if open.is_some() {
                        close_dangling(&mut open, i - 1, &mut spans, &mut repairs);
                    }
                    repairs += 1;
                    open = Some((i, t));
                }
            },
            Tag::Last(t) => match open {
                Some((start, ot)) if ot == t => {
                    spans.push(Span { start, end: i, label: t });
                    open = None;
                }
                _ => {
                    if open.is_some() {
                        close_dangling(&mut open, i - 1, &mut spans, &mut repairs);
                    }
                    repairs += 1;
                    spans.push(Span { start: i, end: i, label: t });
                }
            },
            Tag::Unit(t) => {
                if open.is_some() {
                    close_dangling(&mut open, i - 1, &mut spans, &mut repairs);
                }
                spans.push(Span { start: i, end: i, label: t });
            }
        }
    }
    if !tags.is_empty() && open.is_some() {
        close_dangling(&mut open, tags.len() - 1, &mut spans, &mut repairs);
    }
    if repairs > 0 {
        log::debug!("repaired {repairs} invalid BILUO transition(s)");
    }
    Decoded { spans, repairs }
}

pub fn decode_biluo(tags: &[Tag]) -> Vec<Span> {
    decode_biluo_with_repairs(tags).spans
}
