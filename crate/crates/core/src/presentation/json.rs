//! JSON file format for presentations.
//!
//! ```json
//! { "name": "...", "genus": 5, "convention": "right-to-left",
//!   "generators": ["a1", "b"],
//!   "relators": [ { "tag": "(1)", "word": [["a1", 1], ["a1", 1]] } ] }
//! ```
//!
//! Letters are listed leftmost first; the rightmost letter acts first.

use serde::{Deserialize, Serialize};

use super::{Letter, Presentation, PresentationError, Relator, Word};

pub const CONVENTION: &str = "right-to-left";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationFile {
    name: String,
    genus: usize,
    convention: String,
    generators: Vec<String>,
    relators: Vec<RelatorEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelatorEntry {
    tag: String,
    word: Vec<(String, i64)>,
}

fn malformed(message: impl Into<String>) -> PresentationError {
    PresentationError::Malformed { line: 0, column: 0, message: message.into() }
}

pub fn serialize(p: &Presentation) -> String {
    let file = PresentationFile {
        name: p.name.clone(),
        genus: p.genus,
        convention: CONVENTION.to_string(),
        generators: p.generators.clone(),
        relators: p
            .relators
            .iter()
            .map(|r| RelatorEntry {
                tag: r.tag.clone(),
                word: r.word.letters().iter().map(|l| (l.gen.clone(), l.exp as i64)).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("presentation serializes")
}

/// Parses a presentation file. Relators are taken verbatim (no reduction).
pub fn parse(text: &str) -> Result<Presentation, PresentationError> {
    let file: PresentationFile = serde_json::from_str(text).map_err(|e| {
        PresentationError::Malformed { line: e.line(), column: e.column(), message: e.to_string() }
    })?;
    if file.convention != CONVENTION {
        return Err(malformed(format!("unsupported convention `{}`", file.convention)));
    }
    let mut p = Presentation::new(file.name, file.genus, file.generators)?;
    for entry in file.relators {
        let mut letters = Vec::with_capacity(entry.word.len());
        for (gen, exp) in entry.word {
            if exp != 1 && exp != -1 {
                return Err(malformed(format!("relator {}: exponent {exp} is not ±1", entry.tag)));
            }
            if !p.generators.contains(&gen) {
                return Err(PresentationError::UnknownGenerator { tag: entry.tag, gen });
            }
            letters.push(Letter::new(gen, exp as i8));
        }
        p.push_raw(Relator { tag: entry.tag, word: Word::from_letters(letters) });
    }
    Ok(p)
}
