//! Line-oriented knot catalog.
//!
//! ```text
//! [knot]
//! name = trefoil
//! alexander = t^-1 - 1 + t
//! seifert = [[-1,1],[0,-1]]
//! lambda_cover = 2 : 1/18
//! ```
//!
//! `#` starts a comment. Either `alexander` or `seifert` must be present;
//! when both are, they have to agree.

use std::collections::{BTreeMap, HashSet};
use std::sync::OnceLock;

use num_bigint::BigInt;
use sha2::{Digest, Sha256};
use thiserror::Error;

use super::{alexander_from_seifert, is_unimodular_seifert, IntegerMatrix, KnotError, KnotRecord};
use crate::rational::{parse_rational, Rational};
use crate::sympoly::SymPoly;

const BUILTIN: &str = include_str!("../../data/knots.cat");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct CatalogError {
    pub line: usize,
    pub kind: CatalogErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogErrorKind {
    #[error("expected `key = value`")]
    MalformedLine,
    #[error("field outside of a [knot] record")]
    FieldOutsideRecord,
    #[error("unknown field {0:?}")]
    UnknownField(String),
    #[error("field {0:?} given twice")]
    DuplicateField(String),
    #[error("record is missing a name")]
    MissingName,
    #[error("record needs an alexander or seifert field")]
    MissingPolynomial,
    #[error("invalid knot name {0:?}")]
    BadName(String),
    #[error("duplicate knot name {0:?}")]
    DuplicateName(String),
    #[error("invalid matrix {0:?}")]
    BadMatrix(String),
    #[error("invalid lambda_cover entry {0:?}, expected `k : a/b` with k >= 2")]
    BadLambda(String),
    #[error("lambda_cover for k = {0} given twice")]
    DuplicateLambda(u32),
    #[error(transparent)]
    Knot(#[from] KnotError),
}

impl From<crate::sympoly::PolyError> for CatalogErrorKind {
    fn from(e: crate::sympoly::PolyError) -> Self {
        CatalogErrorKind::Knot(KnotError::Poly(e))
    }
}

/// Validated records plus any non-fatal findings.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    records: Vec<KnotRecord>,
    warnings: Vec<String>,
}

impl Catalog {
    pub fn parse(source: &str) -> Result<Catalog, CatalogError> {
        let mut catalog = Catalog::default();
        let mut names = HashSet::new();
        for draft in drafts(source)? {
            let line = draft.line;
            let at = |kind: CatalogErrorKind| CatalogError { line, kind };
            let (record, warning) = draft.validate().map_err(at)?;
            if !names.insert(record.name.clone()) {
                return Err(at(CatalogErrorKind::DuplicateName(record.name)));
            }
            catalog.warnings.extend(warning);
            catalog.records.push(record);
        }
        Ok(catalog)
    }

    /// The catalog compiled into the crate.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(|| Catalog::parse(BUILTIN).expect("built-in catalog is valid"))
    }

    pub fn builtin_source() -> &'static str {
        BUILTIN
    }

    /// First 16 hex digits of the SHA-256 of the built-in catalog text.
    pub fn builtin_fingerprint() -> String {
        let digest = Sha256::digest(BUILTIN.as_bytes());
        digest.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn get(&self, name: &str) -> Option<&KnotRecord> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn records(&self) -> &[KnotRecord] {
        &self.records
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Parses and validates a catalog, returning its records.
pub fn load_catalog(source: &str) -> Result<Vec<KnotRecord>, CatalogError> {
    Catalog::parse(source).map(|c| c.records)
}

#[derive(Default)]
struct Draft {
    line: usize,
    name: Option<String>,
    alexander: Option<SymPoly>,
    seifert: Option<IntegerMatrix>,
    lambdas: BTreeMap<u32, Rational>,
}

impl Draft {
    fn validate(self) -> Result<(KnotRecord, Option<String>), CatalogErrorKind> {
        let name = self.name.ok_or(CatalogErrorKind::MissingName)?;
        let mut warning = None;
        let mut record = match (self.alexander, self.seifert) {
            (None, None) => return Err(CatalogErrorKind::MissingPolynomial),
            (Some(a), None) => KnotRecord::new(name, &a)?,
            (alexander, Some(v)) => {
                let derived = alexander_from_seifert(&v)?;
                if let Some(a) = alexander {
                    let stored = a.normalize()?;
                    if stored != derived {
                        return Err(KnotError::SeifertMismatch {
                            stored: stored.to_string(),
                            derived: derived.to_string(),
                        }
                        .into());
                    }
                }
                if !is_unimodular_seifert(&v)? {
                    warning = Some(format!(
                        "{name}: det(V - V^T) is not +-1, so the matrix is not the Seifert matrix of a knot"
                    ));
                }
                KnotRecord::from_seifert(name, v)?
            }
        };
        record.branched_cover_lambda = self.lambdas;
        Ok((record, warning))
    }
}

fn drafts(source: &str) -> Result<Vec<Draft>, CatalogError> {
    let mut out: Vec<Draft> = Vec::new();
    let mut seen: HashSet<&str> = HashSet::new();
    for (idx, raw) in source.lines().enumerate() {
        let line = idx + 1;
        let at = |kind: CatalogErrorKind| CatalogError { line, kind };
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if text == "[knot]" {
            out.push(Draft { line, ..Draft::default() });
            seen.clear();
            continue;
        }
        let (key, value) = text
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| at(CatalogErrorKind::MalformedLine))?;
        let draft = out
            .last_mut()
            .ok_or_else(|| at(CatalogErrorKind::FieldOutsideRecord))?;
        if key != "lambda_cover" && !seen.insert(key) {
            return Err(at(CatalogErrorKind::DuplicateField(key.to_string())));
        }
        match key {
            "name" => {
                if !is_identifier(value) {
                    return Err(at(CatalogErrorKind::BadName(value.to_string())));
                }
                draft.name = Some(value.to_string());
            }
            "alexander" => {
                draft.alexander = Some(SymPoly::parse(value).map_err(|e| at(e.into()))?);
            }
            "seifert" => {
                draft.seifert = Some(parse_matrix(value).map_err(at)?);
            }
            "lambda_cover" => {
                let (k, lambda) = parse_lambda(value).map_err(at)?;
                if draft.lambdas.insert(k, lambda).is_some() {
                    return Err(at(CatalogErrorKind::DuplicateLambda(k)));
                }
            }
            other => return Err(at(CatalogErrorKind::UnknownField(other.to_string()))),
        }
    }
    Ok(out)
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.' | '+'))
}

fn parse_lambda(value: &str) -> Result<(u32, Rational), CatalogErrorKind> {
    let bad = || CatalogErrorKind::BadLambda(value.to_string());
    let (k, lambda) = value.split_once(':').ok_or_else(bad)?;
    let k: u32 = k.trim().parse().map_err(|_| bad())?;
    if k < 2 {
        return Err(bad());
    }
    Ok((k, parse_rational(lambda).map_err(|_| bad())?))
}

/// Parses `[[a,b],[c,d]]`; `[]` is the empty matrix.
pub(crate) fn parse_matrix(value: &str) -> Result<IntegerMatrix, CatalogErrorKind> {
    let bad = || CatalogErrorKind::BadMatrix(value.to_string());
    let compact: String = value.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(bad)?;
    if inner.is_empty() {
        return Ok(IntegerMatrix::empty());
    }
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        let body = rest.strip_prefix('[').ok_or_else(bad)?;
        let close = body.find(']').ok_or_else(bad)?;
        let row = body[..close]
            .split(',')
            .map(|x| x.parse::<BigInt>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
        rest = &body[close + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest.strip_prefix(',').ok_or_else(bad)?;
    }
    IntegerMatrix::from_rows(rows).map_err(|_| bad())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use crate::sympoly::PolyError;

    #[test]
    fn builtin_contents() {
        let cat = Catalog::builtin();
        let names: Vec<_> = cat.records().iter().map(|r| r.name.as_str()).collect();
        assert_eq!(names, ["unknot", "trefoil", "figure_eight", "pretzel_-2_3_7"]);
        assert!(cat.warnings().is_empty());
        assert_eq!(
            cat.get("trefoil").unwrap().alexander,
            SymPoly::from_int_coeffs(&[1, -1, 1], -1)
        );
        // derived from the genus-5 Seifert matrix
        assert_eq!(
            cat.get("pretzel_-2_3_7").unwrap().alexander,
            SymPoly::from_int_coeffs(&[1, -1, 0, 1, -1, 1, -1, 1, 0, -1, 1], -5)
        );
        assert_eq!(Catalog::builtin_fingerprint().len(), 16);
    }

    #[test]
    fn empty_source() {
        assert!(load_catalog("").unwrap().is_empty());
        assert!(load_catalog("# nothing here\n\n").unwrap().is_empty());
    }

    #[test]
    fn lambdas_and_derived_alexander() {
        let src = "[knot]\nname = t31\nseifert = [[-1, 1], [0, -1]]\nlambda_cover = 2 : 1/18\nlambda_cover=3:-1/2\n";
        let records = load_catalog(src).unwrap();
        assert_eq!(records[0].alexander, SymPoly::from_int_coeffs(&[1, -1, 1], -1));
        assert_eq!(records[0].branched_lambda(2), Some(&frac(1, 18)));
        assert_eq!(records[0].branched_lambda(3), Some(&frac(-1, 2)));
        assert_eq!(records[0].branched_lambda(4), None);
    }

    #[test]
    fn alexander_is_normalized_on_load() {
        let records = load_catalog("[knot]\nname = k\nalexander = 2t^2 - 2t + 2\n").unwrap();
        assert_eq!(records[0].alexander, SymPoly::from_int_coeffs(&[1, -1, 1], -1));
    }

    fn err_kind(src: &str) -> (usize, CatalogErrorKind) {
        let e = load_catalog(src).unwrap_err();
        (e.line, e.kind)
    }

    #[test]
    fn error_reporting() {
        assert_eq!(err_kind("name = x\n"), (1, CatalogErrorKind::FieldOutsideRecord));
        assert_eq!(err_kind("[knot]\nname x\n"), (2, CatalogErrorKind::MalformedLine));
        assert_eq!(
            err_kind("[knot]\nname = a\nalexander = 1\n[knot]\nname = a\nalexander = 1\n"),
            (4, CatalogErrorKind::DuplicateName("a".into()))
        );
        assert_eq!(
            err_kind("[knot]\nname = a\ncolor = red\n"),
            (3, CatalogErrorKind::UnknownField("color".into()))
        );
        assert_eq!(
            err_kind("[knot]\nname = a\nname = b\n"),
            (3, CatalogErrorKind::DuplicateField("name".into()))
        );
        assert_eq!(err_kind("[knot]\nalexander = 1\n"), (1, CatalogErrorKind::MissingName));
        assert_eq!(err_kind("[knot]\nname = a\n"), (1, CatalogErrorKind::MissingPolynomial));
        assert_eq!(
            err_kind("[knot]\nname = a\nalexander = t^2 + 2t + 3\n"),
            (1, CatalogErrorKind::Knot(KnotError::Poly(PolyError::Asymmetric)))
        );
        assert_eq!(
            err_kind("[knot]\nname = a\nalexander = t - 2 + t^-1\n"),
            (1, CatalogErrorKind::Knot(KnotError::Poly(PolyError::VanishesAtOne)))
        );
        assert!(matches!(
            err_kind("[knot]\nname = a\nalexander = t - 1 + t^-1\nseifert = [[-1,1],[0,1]]\n"),
            (1, CatalogErrorKind::Knot(KnotError::SeifertMismatch { .. }))
        ));
        assert!(matches!(
            err_kind("[knot]\nname = a\nalexander = t +* 1\n"),
            (3, CatalogErrorKind::Knot(KnotError::Poly(PolyError::Parse { .. })))
        ));
        assert!(matches!(
            err_kind("[knot]\nname = a\nalexander = 1\nlambda_cover = 1 : 2\n"),
            (4, CatalogErrorKind::BadLambda(_))
        ));
        assert_eq!(
            err_kind("[knot]\nname = a\nalexander = 1\nlambda_cover = 2 : 2\nlambda_cover = 2 : 3\n"),
            (5, CatalogErrorKind::DuplicateLambda(2))
        );
        assert_eq!(
            err_kind("[knot]\nname = a b\n"),
            (2, CatalogErrorKind::BadName("a b".into()))
        );
    }

    #[test]
    fn non_unimodular_seifert_warns() {
        // det(V - tV^T) = -3t^2 + 10t - 3 normalizes fine, but det(V - V^T) = 4
        let cat = Catalog::parse("[knot]\nname = fake\nseifert = [[-2,1],[-1,2]]\n").unwrap();
        assert_eq!(cat.warnings().len(), 1);
    }

    #[test]
    fn matrix_syntax() {
        assert_eq!(parse_matrix("[]").unwrap(), IntegerMatrix::empty());
        assert_eq!(
            parse_matrix(" [ [1, -2] , [3,4] ] ").unwrap(),
            IntegerMatrix::from_i64(&[&[1, -2], &[3, 4]]).unwrap()
        );
        for bad in ["", "[[1,2]", "[[1,2],[3]]", "[[1,x]]", "[1,2]", "[[1,2]][[3,4]]"] {
            assert!(parse_matrix(bad).is_err(), "{bad}");
        }
    }
}
