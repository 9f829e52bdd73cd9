//! Plain-text code files.
//!
//! ```text
//! # optional comments
//! space 4 2 2 2 2
//! 0 0 0 0 0
//! 2 1 0 1 0
//! ```
//!
//! The header lists the alphabet orders; each further line is one codeword
//! as base-10 symbol indices. In F_4 the labels are 0, 1, α ↦ 2, β ↦ 3.

use std::fmt::Write;

use super::{Code, MixedSpace, Word, ZeroWord};
use crate::error::{parse_err, Result};

/// Renders a code in the file format, words in lexicographic order.
pub fn format_code(c: &Code) -> String {
    let mut out = String::new();
    out.push_str("space");
    for q in c.space().orders() {
        write!(out, " {q}").unwrap();
    }
    out.push('\n');
    for w in c.words() {
        writeln!(out, "{w}").unwrap();
    }
    out
}

/// Parses a code file. The zero word is not required.
pub fn parse_code(text: &str) -> Result<Code> {
    let mut space: Option<MixedSpace> = None;
    let mut words = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut tokens = line.split_whitespace();
        match &space {
            None => {
                if tokens.next() != Some("space") {
                    return Err(parse_err(line_no, "expected `space q1 ... qn` header"));
                }
                let orders = tokens
                    .map(|t| t.parse::<u8>().map_err(|e| parse_err(line_no, format!("{t}: {e}"))))
                    .collect::<Result<Vec<u8>>>()?;
                space = Some(
                    MixedSpace::new(&orders).map_err(|e| parse_err(line_no, e.to_string()))?,
                );
            }
            Some(s) => {
                let w = tokens
                    .map(|t| t.parse::<u8>().map_err(|e| parse_err(line_no, format!("{t}: {e}"))))
                    .collect::<Result<Vec<u8>>>()?;
                if !s.contains(&w) {
                    return Err(parse_err(
                        line_no,
                        format!("word {w:?} does not belong to the space {:?}", s.orders()),
                    ));
                }
                words.push(Word(w));
            }
        }
    }
    let space = space.ok_or_else(|| parse_err(0, "missing `space` header"))?;
    Code::new(space, words, ZeroWord::Optional)
}
