//! Action tables: per generator (or commutator), the increment of every
//! coordinate as a polynomial in the coordinates.
//!
//! File format: `#` comments, sections headed `[<label>]`, body lines
//! `y_<digits> = <polynomial>`. Unlisted cells are zero.

use std::collections::HashMap;

use sha2::{Digest, Sha256};

use crate::model::{load_scheme, strip_comment, CoordinateScheme, Family};
use crate::word::Term;
use crate::{Error, Poly};

/// How a table's bracket columns relate to the standard commutator
/// `[a,b] = a∘b∘a⁻¹∘b⁻¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketConvention {
    /// The column labelled `[a,b]` is `a∘b∘a⁻¹∘b⁻¹`.
    Standard,
    /// The column labelled `[a,b]` is `b∘a∘b⁻¹∘a⁻¹`.
    Reversed,
}

#[derive(Clone, Debug)]
pub struct TableEntry {
    pub label: Term,
    /// Increment per coordinate, indexed by variable.
    pub deltas: Vec<Poly>,
}

#[derive(Clone, Debug)]
pub struct ActionTable {
    name: String,
    scheme: &'static CoordinateScheme,
    bracket: BracketConvention,
    entries: Vec<TableEntry>,
    index: HashMap<String, usize>,
}

impl ActionTable {
    /// Parses and validates a table: known labels, known coordinates,
    /// vanishing degree-1 rows and triangularity.
    pub fn parse(name: &str, text: &str, scheme: &'static CoordinateScheme) -> Result<Self, Error> {
        let err = |line: usize, msg: String| Error::Table {
            table: name.to_string(),
            line,
            msg,
        };
        let mut entries: Vec<TableEntry> = Vec::new();
        let mut index = HashMap::new();
        let mut seen_rows: Vec<bool> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let ln = k + 1;
            let line = strip_comment(raw).trim();
            if line.is_empty() {
                continue;
            }
            if let Some(inner) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                let label = Term::parse(inner, scheme.n())
                    .map_err(|e| err(ln, format!("unknown generator label `{inner}`: {e}")))?;
                if matches!(label, Term::Group(_)) {
                    return Err(err(ln, format!("unknown generator label `{inner}`")));
                }
                let key = label.to_string();
                if index.insert(key.clone(), entries.len()).is_some() {
                    return Err(err(ln, format!("duplicate section `{key}`")));
                }
                entries.push(TableEntry {
                    label,
                    deltas: vec![Poly::zero(); scheme.len()],
                });
                seen_rows = vec![false; scheme.len()];
                continue;
            }
            let entry = entries
                .last_mut()
                .ok_or_else(|| err(ln, "entry before any `[label]` section".into()))?;
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| err(ln, format!("expected `y_<digits> = <polynomial>`, found `{line}`")))?;
            let lhs = lhs.trim();
            let var = scheme
                .var(lhs)
                .ok_or_else(|| err(ln, format!("unknown coordinate `{lhs}`")))?;
            if std::mem::replace(&mut seen_rows[var as usize], true) {
                return Err(err(ln, format!("duplicate row `{lhs}`")));
            }
            let p = scheme
                .parse_poly(rhs)
                .map_err(|e| err(ln, format!("in `{}`: {e}", rhs.trim())))?;
            let d = scheme.degree(var);
            if d == 1 && !p.is_zero() {
                return Err(err(ln, format!("linking number `{lhs}` must be invariant")));
            }
            if let Some(bad) = p.vars().into_iter().find(|&w| scheme.degree(w) >= d) {
                return Err(err(
                    ln,
                    format!(
                        "triangularity violated: `{lhs}` depends on `{}`",
                        scheme.name(bad)
                    ),
                ));
            }
            entry.deltas[var as usize] = p;
        }
        Ok(ActionTable {
            name: name.to_string(),
            scheme,
            bracket: BracketConvention::Standard,
            entries,
            index,
        })
    }

    /// Reads a table file from disk.
    pub fn load(path: &std::path::Path, scheme: &'static CoordinateScheme) -> Result<Self, Error> {
        let name = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Table {
            table: name.clone(),
            line: 0,
            msg: e.to_string(),
        })?;
        Self::parse(&name, &text, scheme)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn scheme(&self) -> &'static CoordinateScheme {
        self.scheme
    }

    pub fn bracket(&self) -> BracketConvention {
        self.bracket
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    pub fn labels(&self) -> impl Iterator<Item = &Term> {
        self.entries.iter().map(|e| &e.label)
    }

    pub fn get(&self, label: &Term) -> Option<&TableEntry> {
        self.index.get(&label.to_string()).map(|&i| &self.entries[i])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Counts entries that are plain generators of a family.
    pub fn count_family(&self, family: Family) -> usize {
        self.labels()
            .filter(|t| matches!(t, Term::Gen(g) if g.family == family))
            .count()
    }

    /// Renders back to the file format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("[{}]\n", e.label));
            for (v, p) in e.deltas.iter().enumerate() {
                if !p.is_zero() {
                    out.push_str(&format!(
                        "{} = {}\n",
                        self.scheme.name(v as u16),
                        self.scheme.show(p)
                    ));
                }
            }
            out.push('\n');
        }
        out
    }
}

/// A table shipped with the crate.
#[derive(Clone, Copy, Debug)]
pub struct BundledTable {
    pub name: &'static str,
    pub n: usize,
    pub bracket: BracketConvention,
    pub text: &'static str,
}

macro_rules! bundled {
    ($name:literal, $n:literal, $br:ident) => {
        BundledTable {
            name: $name,
            n: $n,
            bracket: BracketConvention::$br,
            text: include_str!(concat!("../tables/", $name, ".tbl")),
        }
    };
}

pub const BUNDLED: [BundledTable; 10] = [
    bundled!("four_partial_conjugations", 4, Standard),
    bundled!("four_commutators", 4, Reversed),
    bundled!("four_simplified", 4, Standard),
    bundled!("four_conjugations", 4, Standard),
    bundled!("five_partial_conjugations", 5, Standard),
    bundled!("five_commutators", 5, Standard),
    bundled!("five_modified_commutators", 5, Standard),
    bundled!("five_three_commutators", 5, Standard),
    bundled!("five_simplified", 5, Standard),
    bundled!("five_conjugations", 5, Standard),
];

const DIGESTS: &str = include_str!("../tables/SHA256SUMS");

/// SHA-256 of a table's text, lowercase hex.
pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// The digest recorded for a bundled table file.
pub fn recorded_digest(name: &str) -> Option<&'static str> {
    let file = format!("{name}.tbl");
    DIGESTS.lines().find_map(|l| {
        let (h, f) = l.split_once(char::is_whitespace)?;
        (f.trim_start_matches([' ', '*']) == file).then_some(h)
    })
}

impl BundledTable {
    pub fn find(name: &str) -> Option<&'static BundledTable> {
        BUNDLED.iter().find(|t| t.name == name)
    }

    /// Verifies the recorded digest, then parses.
    pub fn load(&self) -> Result<ActionTable, Error> {
        verify_and_parse(self.name, self.text, self.n, self.bracket)
    }
}

pub(crate) fn verify_and_parse(
    name: &str,
    text: &str,
    n: usize,
    bracket: BracketConvention,
) -> Result<ActionTable, Error> {
    let expected = recorded_digest(name).ok_or_else(|| Error::UnknownTable(name.to_string()))?;
    let found = digest(text);
    if found != expected {
        return Err(Error::Digest {
            table: name.to_string(),
            expected: expected.to_string(),
            found,
        });
    }
    let mut t = ActionTable::parse(name, text, load_scheme(n)?)?;
    t.bracket = bracket;
    Ok(t)
}

/// Loads a bundled table by name.
pub fn load_table(name: &str) -> Result<ActionTable, Error> {
    BundledTable::find(name)
        .ok_or_else(|| Error::UnknownTable(name.to_string()))?
        .load()
}
