//! Relative root data from built-in names or a small text format.
//!
//! ```text
//! # SU(2,1)
//! root 1 mult 2
//! root 2 mult 1
//! simple 1
//! gram 1
//! ```
//!
//! Coordinates are whitespace or comma separated rationals (`p/q`). Each
//! `gram` line is one row. Negative roots are added automatically.

use std::path::Path;

use crate::error::{Error, Result};
use crate::exact_geometry::GramForm;
use crate::rational::{parse_rational, Rational, RationalMatrix, RationalVector};
use crate::root_datum::RootDatum;

pub const BUILTINS: &[&str] = &["su21", "bc1(m1,m2)"];

/// Resolves a built-in name or parses the text format.
pub fn build_relative(spec: &str) -> Result<RootDatum> {
    let name = spec.trim();
    if let Some(d) = builtin(name)? {
        return Ok(d);
    }
    parse_relative(spec, "custom")
}

/// Reads `arg` as a built-in name, or failing that as a file path.
pub fn load_relative(arg: &str) -> Result<RootDatum> {
    if let Some(d) = builtin(arg.trim())? {
        return Ok(d);
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).map_err(|e| Error::MalformedRelativeSpec {
        line: 0,
        message: format!("cannot read `{arg}`: {e}"),
    })?;
    let label = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "custom".into());
    parse_relative(&text, &label)
}

fn builtin(name: &str) -> Result<Option<RootDatum>> {
    let lower = name.to_ascii_lowercase();
    if lower == "su21" {
        return bc1("su21", 2, 1).map(Some);
    }
    if let Some(args) = lower.strip_prefix("bc1(").and_then(|s| s.strip_suffix(')')) {
        let parts: Vec<&str> = args.split(',').map(str::trim).collect();
        let bad = || Error::MalformedRelativeSpec {
            line: 0,
            message: format!("expected bc1(m1,m2) with m1 ≥ 1, m2 ≥ 0, got `{name}`"),
        };
        if parts.len() != 2 {
            return Err(bad());
        }
        let m1: u32 = parts[0].parse().map_err(|_| bad())?;
        let m2: u32 = parts[1].parse().map_err(|_| bad())?;
        if m1 == 0 {
            return Err(bad());
        }
        return bc1(&format!("bc1({m1},{m2})"), m1, m2).map(Some);
    }
    Ok(None)
}

fn bc1(label: &str, m1: u32, m2: u32) -> Result<RootDatum> {
    let mut roots = vec![(RationalVector::from_ints(&[1]), m1)];
    if m2 > 0 {
        roots.push((RationalVector::from_ints(&[2]), m2));
    }
    RootDatum::relative_from_table(
        label.to_string(),
        roots,
        vec![RationalVector::from_ints(&[1])],
        GramForm::identity(1),
    )
}

fn parse_coords(text: &str, line: usize) -> Result<RationalVector> {
    let coords: Option<Vec<Rational>> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(parse_rational)
        .collect();
    match coords {
        Some(c) if !c.is_empty() => Ok(RationalVector::new(c)),
        _ => Err(Error::MalformedRelativeSpec {
            line,
            message: format!("bad coordinates `{}`", text.trim()),
        }),
    }
}

pub fn parse_relative(text: &str, label: &str) -> Result<RootDatum> {
    let mut roots = Vec::new();
    let mut simple = Vec::new();
    let mut gram_rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let err = |message: String| Error::MalformedRelativeSpec { line, message };
        match keyword {
            "root" => {
                let (coords, mult) = match rest.split_once("mult") {
                    Some((c, m)) => {
                        let m: u32 = m
                            .trim()
                            .parse()
                            .map_err(|_| err(format!("bad multiplicity `{}`", m.trim())))?;
                        (c, m)
                    }
                    None => (rest, 1),
                };
                if mult == 0 {
                    return Err(err("multiplicity must be at least 1".into()));
                }
                let r = parse_coords(coords, line)?;
                if !r.is_integral() {
                    return Err(err(format!("root {r} must have integer entries")));
                }
                roots.push((r, mult));
            }
            "simple" => simple.push(parse_coords(rest, line)?),
            "gram" => gram_rows.push(parse_coords(rest, line)?),
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }
    let fail = |message: &str| Error::MalformedRelativeSpec {
        line: 0,
        message: message.into(),
    };
    if roots.is_empty() {
        return Err(fail("no roots"));
    }
    if simple.is_empty() {
        return Err(fail("no simple roots"));
    }
    let rank = roots[0].0.len();
    let gram = if gram_rows.is_empty() {
        GramForm::identity(rank)
    } else {
        if gram_rows.len() != rank || gram_rows.iter().any(|r| r.len() != rank) {
            return Err(fail("gram must be a square matrix of the root rank"));
        }
        GramForm::new(RationalMatrix::from_rows(&gram_rows))?
    };
    RootDatum::relative_from_table(label.to_string(), roots, simple, gram)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn su21_builtin() {
        let d = build_relative("su21").unwrap();
        assert!(d.is_relative());
        assert_eq!(
            d.positive_roots_with_mult(),
            vec![(RationalVector::from_ints(&[1]), 2), (RationalVector::from_ints(&[2]), 1)]
        );
        assert_eq!(d.gram(), &GramForm::identity(1));
    }

    #[test]
    fn bc1_echoes_multiplicities() {
        let d = build_relative("bc1(4, 3)").unwrap();
        assert_eq!(
            d.positive_roots_with_mult(),
            vec![(RationalVector::from_ints(&[1]), 4), (RationalVector::from_ints(&[2]), 3)]
        );
        assert!(build_relative("bc1(0,1)").is_err());
    }

    #[test]
    fn text_format() {
        let text = "# su(2,1)\nroot 1 mult 2\nroot 2 mult 1 # divisible\nsimple 1\ngram 1\n";
        let d = parse_relative(text, "t").unwrap();
        assert_eq!(d.dim(), build_relative("su21").unwrap().dim());
        let b2 = "root 1,-1\nroot 0 1 mult 2\nroot 1 1\nroot 1 0 mult 2\nsimple 1 -1\nsimple 0 1\n";
        let d = parse_relative(b2, "b2").unwrap();
        assert_eq!(d.positive_roots().len(), 4);
    }

    #[test]
    fn text_format_errors() {
        for bad in [
            "root 1/2 mult 1\nsimple 1/2",
            "root 1 mult 0\nsimple 1",
            "root 1 mult x\nsimple 1",
            "root 1\n",
            "frobnicate 1",
            "root 1\nsimple 1\ngram 1 0",
        ] {
            assert!(parse_relative(bad, "x").is_err(), "{bad}");
        }
        match parse_relative("root 1\nbogus", "x") {
            Err(Error::MalformedRelativeSpec { line: 2, .. }) => {}
            other => panic!("{other:?}"),
        }
    }
}
