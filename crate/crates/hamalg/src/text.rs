//! Canonical text form for algebra elements.
//!
//! An element renders as terms joined by ` + `, each term being
//! `coefficient * x[group|index]` with comma-separated entries and no inner
//! spaces, for example `3/2 * x[1,-2,0,0,0|0,1,0,0]`. The zero element
//! renders as `0`. Parsing is strict: it accepts exactly this shape, reports
//! byte positions on failure, and rejects zero or duplicated terms so that
//! parsing and rendering invert each other.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{AlgebraElement, BasisIndex};
use crate::rational::{format_rational, parse_rational, Int};
use num_traits::Zero;
use thiserror::Error;

/// A strict-parse failure with the byte position of the offending fragment.
#[derive(Debug, Error)]
#[error("parse error at byte {position}: {message}")]
pub struct TextError {
    pub position: usize,
    pub message: String,
}

fn err(position: usize, message: impl Into<String>) -> TextError {
    TextError {
        position,
        message: message.into(),
    }
}

/// Renders a basis key as `x[group|index]`.
pub fn render_key(key: &BasisIndex) -> String {
    let group: Vec<String> = key.group.iter().map(|v| v.to_string()).collect();
    let index: Vec<String> = key.index.iter().map(|v| v.to_string()).collect();
    format!("x[{}|{}]", group.join(","), index.join(","))
}

/// Renders an element in canonical order.
pub fn render_element(el: &AlgebraElement) -> String {
    if el.is_zero() {
        return "0".to_string();
    }
    let terms: Vec<String> = el
        .terms()
        .map(|(key, coeff)| format!("{} * {}", format_rational(coeff), render_key(key)))
        .collect();
    terms.join(" + ")
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_element(self))
    }
}

fn parse_group_entry(text: &str, position: usize) -> Result<Int, TextError> {
    Int::from_str(text).map_err(|_| err(position, format!("bad integer {text:?}")))
}

fn parse_index_entry(text: &str, position: usize) -> Result<u32, TextError> {
    text.parse::<u32>()
        .map_err(|_| err(position, format!("bad index entry {text:?}")))
}

fn parse_key(text: &str, position: usize) -> Result<BasisIndex, TextError> {
    let body = text
        .strip_prefix("x[")
        .ok_or_else(|| err(position, "expected monomial of the form x[group|index]"))?;
    let body = body
        .strip_suffix(']')
        .ok_or_else(|| err(position + text.len(), "missing closing bracket"))?;
    let bar = body
        .find('|')
        .ok_or_else(|| err(position + 2, "missing | between group and index parts"))?;
    let (group_part, index_part) = (&body[..bar], &body[bar + 1..]);
    let mut group = Vec::new();
    let mut offset = position + 2;
    for entry in group_part.split(',') {
        group.push(parse_group_entry(entry, offset)?);
        offset += entry.len() + 1;
    }
    let mut index = Vec::new();
    let mut offset = position + 2 + bar + 1;
    for entry in index_part.split(',') {
        index.push(parse_index_entry(entry, offset)?);
        offset += entry.len() + 1;
    }
    Ok(BasisIndex::new(group, index))
}

/// Parses the canonical element form. Terms may come in any order; shapes
/// must agree across terms.
pub fn parse_element(text: &str) -> Result<AlgebraElement, TextError> {
    if text == "0" {
        return Ok(AlgebraElement::zero());
    }
    if text.is_empty() {
        return Err(err(0, "empty element text"));
    }
    let mut el = AlgebraElement::zero();
    let mut shape: Option<(usize, usize)> = None;
    let mut position = 0usize;
    for piece in text.split(" + ") {
        let star = piece
            .find(" * ")
            .ok_or_else(|| err(position, "expected `coefficient * monomial`"))?;
        let coeff_text = &piece[..star];
        let coeff = parse_rational(coeff_text)
            .map_err(|e| err(position, e.to_string()))?;
        if coeff.is_zero() {
            return Err(err(position, "zero coefficient term"));
        }
        let key_offset = position + star + 3;
        let key = parse_key(&piece[star + 3..], key_offset)?;
        match shape {
            None => shape = Some((key.group.len(), key.index.len())),
            Some((g, i)) => {
                if key.group.len() != g || key.index.len() != i {
                    return Err(err(
                        key_offset,
                        format!(
                            "term shape {}|{} does not match earlier terms {g}|{i}",
                            key.group.len(),
                            key.index.len()
                        ),
                    ));
                }
            }
        }
        if !el.coeff(&key).is_zero() {
            return Err(err(key_offset, format!("duplicate term {}", render_key(&key))));
        }
        el.add_term(key, coeff);
        position += piece.len() + 3;
    }
    Ok(el)
}
