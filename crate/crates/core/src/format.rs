//! Text and file formats for groups, subgroups, amalgam schemes and words.
//!
//! * Group: a catalog name, or a JSON file
//!   `{"degree": n, "generators": {"a": [2, 3, 1], ...}, "subgroups": {"H": "a"}}`.
//!   Generator values are 1-based image arrays or cycle strings.
//! * Element: cycle notation `(1 2)(3 4)`, an image array `[2, 1, 3]`, or a
//!   word in generator names `a b^-1 c^2`.
//! * Subgroup: a named subgroup, `1` for the trivial subgroup, or a list of
//!   elements separated by `,` or `;`.
//! * Scheme: `S3^2/A3` (a free power), or a JSON file with either
//!   `{"power": k, "factor": ..., "subgroup": ...}` or
//!   `{"factors": [...], "subgroups": [...], "isos": [{"from", "to", "images"}]}`.
//! * Word: inline `(0:a b)(1:(1 3))`, or a JSON file
//!   `[{"copy": 0, "elt": "a b"}, ...]`.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use indexmap::IndexMap;
use serde::Deserialize;

use crate::amalgam::{AmalgamScheme, IsoSpec, Syllable, Word};
use crate::catalog::lookup_with_cap;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::subgroup::Subgroup;

/// A group together with the subgroups it names.
#[derive(Debug, Clone)]
pub struct LoadedGroup {
    pub group: Arc<PermGroup>,
    pub subgroups: Vec<(String, Subgroup)>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ElementSpec {
    Images(Vec<u32>),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    degree: usize,
    generators: IndexMap<String, ElementSpec>,
    #[serde(default)]
    subgroups: IndexMap<String, SubgroupSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum GroupSpec {
    Ref(String),
    Inline(GroupFile),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum SubgroupSpec {
    Text(String),
    List(Vec<ElementSpec>),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PowerFile {
    power: usize,
    factor: GroupSpec,
    subgroup: SubgroupSpec,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct IsoFile {
    from: usize,
    to: usize,
    images: Vec<ElementSpec>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct GeneralFile {
    factors: Vec<GroupSpec>,
    subgroups: Vec<SubgroupSpec>,
    #[serde(default)]
    isos: Vec<IsoFile>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum SchemeFile {
    Power(PowerFile),
    General(GeneralFile),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct SyllableFile {
    copy: usize,
    elt: ElementSpec,
}

fn read(path: &Path) -> Result<String> {
    Ok(std::fs::read_to_string(path)?)
}

fn resolve(base: Option<&Path>, reference: &str) -> PathBuf {
    match base {
        Some(dir) if Path::new(reference).is_relative() => dir.join(reference),
        _ => PathBuf::from(reference),
    }
}

/// Loads a group from a catalog name or a JSON file path.
pub fn load_group(reference: &str, cap: usize) -> Result<LoadedGroup> {
    load_group_from(None, reference, cap)
}

fn load_group_from(base: Option<&Path>, reference: &str, cap: usize) -> Result<LoadedGroup> {
    match lookup_with_cap(reference, cap) {
        Ok(entry) => Ok(LoadedGroup {
            group: entry.group,
            subgroups: entry.subgroups,
        }),
        Err(Error::UnknownCatalog(name)) => {
            let path = resolve(base, reference);
            if !path.is_file() {
                return Err(Error::UnknownCatalog(name));
            }
            let file: GroupFile = serde_json::from_str(&read(&path)?)?;
            build_group(&file, cap)
        }
        Err(e) => Err(e),
    }
}

/// Parses a group from the JSON group-file format.
pub fn parse_group_json(text: &str, cap: usize) -> Result<LoadedGroup> {
    let file: GroupFile = serde_json::from_str(text)?;
    build_group(&file, cap)
}

fn build_group(file: &GroupFile, cap: usize) -> Result<LoadedGroup> {
    let mut names = Vec::new();
    let mut gens = Vec::new();
    for (name, spec) in &file.generators {
        if !is_name(name) {
            return Err(Error::Malformed(format!("generator name {name:?}")));
        }
        names.push(name.clone());
        gens.push(spec_to_perm(file.degree, &[], spec)?);
    }
    let group = PermGroup::generate_named(file.degree, names, gens, cap)?;
    let mut subgroups = Vec::new();
    for (name, spec) in &file.subgroups {
        let sub = subgroup_from_spec(&group, &subgroups, spec)?;
        subgroups.push((name.clone(), sub));
    }
    Ok(LoadedGroup { group, subgroups })
}

fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

fn spec_to_perm(degree: usize, named: &[(String, Perm)], spec: &ElementSpec) -> Result<Perm> {
    let p = match spec {
        ElementSpec::Images(images) => Perm::from_images(images)?,
        ElementSpec::Text(text) => parse_element_with(degree, named, text, 0)?,
    };
    if p.degree() != degree {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: p.degree(),
        });
    }
    Ok(p)
}

fn named_generators(group: &PermGroup) -> Vec<(String, Perm)> {
    group
        .generator_names()
        .iter()
        .cloned()
        .zip(group.generators().iter().cloned())
        .collect()
}

/// Parses one element of `group`: cycle notation, an image array, or a word
/// in the generator names.
pub fn parse_element(group: &PermGroup, text: &str) -> Result<Perm> {
    let p = parse_element_with(group.degree(), &named_generators(group), text, 0)?;
    if !group.contains(&p) {
        return Err(Error::NotInGroup(p));
    }
    Ok(p)
}

fn parse_element_with(
    degree: usize,
    named: &[(String, Perm)],
    text: &str,
    offset: usize,
) -> Result<Perm> {
    let trimmed = text.trim();
    let lead = offset + (text.len() - text.trim_start().len());
    if trimmed.starts_with('(') {
        return Perm::from_cycles(degree, trimmed).map_err(|e| match e {
            Error::Parse { position, message } => Error::Parse {
                position: lead + position,
                message,
            },
            other => other,
        });
    }
    if trimmed.starts_with('[') {
        let images: Vec<u32> = serde_json::from_str(trimmed)
            .map_err(|e| Error::parse(lead, format!("image array: {e}")))?;
        let p = Perm::from_images(&images)?;
        if p.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: p.degree(),
            });
        }
        return Ok(p);
    }
    if trimmed.is_empty() || trimmed == "1" || trimmed == "e" {
        return Ok(Perm::identity(degree));
    }
    let mut acc = Perm::identity(degree);
    let mut pos = offset;
    for token in text.split_whitespace() {
        let at = text[pos - offset..].find(token).map_or(pos, |p| pos + p);
        pos = at + token.len();
        let (name, exp) = match token.split_once('^') {
            Some((n, e)) => (
                n,
                e.parse::<i64>()
                    .map_err(|_| Error::parse(at, format!("bad exponent in {token:?}")))?,
            ),
            None => (token, 1),
        };
        let g = named
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::parse(at, format!("unknown generator {name:?}")))?;
        acc = acc.mul(&g.pow(exp));
    }
    Ok(acc)
}

/// Splits at `,` or `;` outside brackets; returns `(offset, item)` pairs.
fn split_top_level(text: &str) -> Result<Vec<(usize, &str)>> {
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::parse(i, "unbalanced bracket"));
                }
            }
            ',' | ';' if depth == 0 => {
                items.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::parse(text.len(), "unbalanced bracket"));
    }
    items.push((start, &text[start..]));
    Ok(items)
}

/// Resolves a subgroup reference: a name from `named`, `1`, or a list of
/// elements separated by `,` or `;`.
pub fn parse_subgroup(
    group: &Arc<PermGroup>,
    named: &[(String, Subgroup)],
    text: &str,
) -> Result<Subgroup> {
    let trimmed = text.trim();
    if let Some((_, sub)) = named.iter().find(|(n, _)| n == trimmed) {
        return sub.within(group);
    }
    if trimmed == "1" || trimmed.is_empty() {
        return Ok(Subgroup::trivial(group));
    }
    let gens_named = named_generators(group);
    let mut gens = Vec::new();
    for (offset, item) in split_top_level(text)? {
        if item.trim().is_empty() {
            continue;
        }
        let p = parse_element_with(group.degree(), &gens_named, item, offset)?;
        if !group.contains(&p) {
            return Err(Error::NotInGroup(p));
        }
        gens.push(p);
    }
    Subgroup::generated(group, &gens)
}

fn subgroup_from_spec(
    group: &Arc<PermGroup>,
    named: &[(String, Subgroup)],
    spec: &SubgroupSpec,
) -> Result<Subgroup> {
    match spec {
        SubgroupSpec::Text(text) => parse_subgroup(group, named, text),
        SubgroupSpec::List(items) => {
            let gens_named = named_generators(group);
            let gens = items
                .iter()
                .map(|s| spec_to_perm(group.degree(), &gens_named, s))
                .collect::<Result<Vec<_>>>()?;
            Subgroup::generated(group, &gens)
        }
    }
}

/// Loads a scheme from `FACTOR^k/SUBGROUP` or a JSON file path.
pub fn load_scheme(reference: &str, cap: usize) -> Result<AmalgamScheme> {
    let path = Path::new(reference);
    if path.is_file() {
        let text = read(path)?;
        return parse_scheme_json(&text, path.parent(), cap);
    }
    let (factor, rest) = reference.split_once('^').ok_or_else(|| {
        Error::UnknownCatalog(format!(
            "{reference}: expected a scheme file or FACTOR^k/SUBGROUP"
        ))
    })?;
    let (copies, sub) = rest
        .split_once('/')
        .ok_or_else(|| Error::parse(factor.len() + 1, "expected /SUBGROUP after the power"))?;
    let copies: usize = copies
        .trim()
        .parse()
        .map_err(|_| Error::parse(factor.len() + 1, format!("bad power {copies:?}")))?;
    let loaded = load_group(factor.trim(), cap)?;
    let h = parse_subgroup(&loaded.group, &loaded.subgroups, sub)?;
    AmalgamScheme::power(&loaded.group, &h, copies)
}

/// Parses the JSON scheme format; group paths resolve against `base`.
pub fn parse_scheme_json(text: &str, base: Option<&Path>, cap: usize) -> Result<AmalgamScheme> {
    let file: SchemeFile = serde_json::from_str(text)?;
    let load = |spec: &GroupSpec| -> Result<LoadedGroup> {
        match spec {
            GroupSpec::Ref(r) => load_group_from(base, r, cap),
            GroupSpec::Inline(f) => build_group(f, cap),
        }
    };
    match file {
        SchemeFile::Power(p) => {
            let g = load(&p.factor)?;
            let h = subgroup_from_spec(&g.group, &g.subgroups, &p.subgroup)?;
            AmalgamScheme::power(&g.group, &h, p.power)
        }
        SchemeFile::General(f) => {
            if f.factors.len() != f.subgroups.len() {
                return Err(Error::Scheme(format!(
                    "{} factors but {} subgroups",
                    f.factors.len(),
                    f.subgroups.len()
                )));
            }
            let loaded = f.factors.iter().map(load).collect::<Result<Vec<_>>>()?;
            let subs = loaded
                .iter()
                .zip(&f.subgroups)
                .map(|(g, s)| subgroup_from_spec(&g.group, &g.subgroups, s))
                .collect::<Result<Vec<_>>>()?;
            let mut isos = Vec::new();
            for iso in &f.isos {
                let target = loaded
                    .get(iso.to)
                    .ok_or_else(|| Error::Scheme(format!("iso target {} out of range", iso.to)))?;
                let names = named_generators(&target.group);
                let images = iso
                    .images
                    .iter()
                    .map(|s| spec_to_perm(target.group.degree(), &names, s))
                    .collect::<Result<Vec<_>>>()?;
                isos.push(IsoSpec {
                    from: iso.from,
                    to: iso.to,
                    images,
                });
            }
            AmalgamScheme::new(loaded.into_iter().map(|g| g.group).collect(), subs, isos)
        }
    }
}

/// Loads a word from inline syntax `(0:a b)(1:(1 3))` or a JSON file path.
pub fn load_word(scheme: &AmalgamScheme, reference: &str) -> Result<Word> {
    let path = Path::new(reference);
    if path.is_file() {
        return parse_word_json(scheme, &read(path)?);
    }
    parse_word(scheme, reference)
}

pub fn parse_word_json(scheme: &AmalgamScheme, text: &str) -> Result<Word> {
    let file: Vec<SyllableFile> = serde_json::from_str(text)?;
    let mut syllables = Vec::new();
    for (position, s) in file.iter().enumerate() {
        let factor = factor_of(scheme, s.copy, position)?;
        let elt = spec_to_perm(factor.degree(), &named_generators(factor), &s.elt)?;
        syllables.push(Syllable::new(s.copy, elt));
    }
    let word = Word::new(syllables);
    scheme.check_word(&word)?;
    Ok(word)
}

fn factor_of(scheme: &AmalgamScheme, copy: usize, position: usize) -> Result<&Arc<PermGroup>> {
    if copy >= scheme.copies() {
        return Err(Error::BadSyllable {
            position,
            reason: format!("copy {copy} out of range 0..{}", scheme.copies()),
        });
    }
    Ok(scheme.factor(copy))
}

/// Inline word syntax: a sequence of `(copy:element)` groups. An empty
/// string, or `1`, is the empty word.
pub fn parse_word(scheme: &AmalgamScheme, text: &str) -> Result<Word> {
    let bytes = text.as_bytes();
    let mut syllables = Vec::new();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if text[pos..].trim() == "1" {
        return Ok(Word::empty());
    }
    while pos < bytes.len() {
        if bytes[pos] != b'(' {
            return Err(Error::parse(pos, "expected '(' starting a syllable"));
        }
        let open = pos;
        let mut depth = 0;
        let mut close = None;
        for (i, &b) in bytes.iter().enumerate().skip(pos) {
            match b {
                b'(' => depth += 1,
                b')' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(i);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close = close.ok_or_else(|| Error::parse(open, "unclosed syllable"))?;
        let inner = &text[open + 1..close];
        let (copy, elt) = inner
            .split_once(':')
            .ok_or_else(|| Error::parse(open + 1, "expected copy:element"))?;
        let copy: usize = copy
            .trim()
            .parse()
            .map_err(|_| Error::parse(open + 1, format!("bad copy index {:?}", copy.trim())))?;
        let factor = factor_of(scheme, copy, syllables.len())?;
        let elt_offset = open + 1 + inner.find(':').expect("split found ':'") + 1;
        let p = parse_element_with(factor.degree(), &named_generators(factor), elt, elt_offset)?;
        syllables.push(Syllable::new(copy, p));
        pos = close + 1;
        skip_ws(&mut pos);
    }
    let word = Word::new(syllables);
    scheme.check_word(&word)?;
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    fn p3(s: &str) -> Perm {
        Perm::from_cycles(3, s).unwrap()
    }

    #[test]
    fn elements_in_three_notations() {
        let s3 = lookup("S3").unwrap().group;
        assert_eq!(parse_element(&s3, "(1 2)").unwrap(), p3("(1 2)"));
        assert_eq!(parse_element(&s3, "[2, 1, 3]").unwrap(), p3("(1 2)"));
        assert_eq!(parse_element(&s3, "a b").unwrap(), p3("(2 3)"));
        assert_eq!(parse_element(&s3, "a^-1").unwrap(), p3("(1 3 2)"));
        assert!(matches!(
            parse_element(&s3, "a z"),
            Err(Error::Parse { position: 2, .. })
        ));
    }

    #[test]
    fn subgroup_refs() {
        let e = lookup("S3").unwrap();
        let a3 = parse_subgroup(&e.group, &e.subgroups, "A3").unwrap();
        assert_eq!(a3.order(), 3);
        let c2 = parse_subgroup(&e.group, &e.subgroups, "(1 2)").unwrap();
        assert_eq!(c2.order(), 2);
        let all = parse_subgroup(&e.group, &e.subgroups, "(1 2), [1, 3, 2]").unwrap();
        assert!(all.is_full());
        assert!(parse_subgroup(&e.group, &e.subgroups, "1").unwrap().is_trivial());
        assert!(parse_subgroup(&e.group, &e.subgroups, "(1 2").is_err());
    }

    #[test]
    fn group_file_keeps_generator_order() {
        let g = parse_group_json(
            r#"{"degree": 4, "generators": {"s": "(1 3)", "r": [2, 3, 4, 1]},
                "subgroups": {"Z": "r^2"}}"#,
            1000,
        )
        .unwrap();
        assert_eq!(g.group.order(), 8);
        assert_eq!(g.group.generator_names(), ["s", "r"]);
        assert_eq!(g.subgroups[0].1.order(), 2);
        assert!(parse_group_json(r#"{"degree": 3, "gens": {}}"#, 1000).is_err());
    }

    #[test]
    fn inline_scheme_and_words() {
        let q = load_scheme("S3^2/A3", 1000).unwrap();
        assert_eq!(q.copies(), 2);
        let w = parse_word(&q, "(0:a b)(1:a c)").unwrap();
        assert_eq!(w.syllables[0].elt, p3("(2 3)"));
        assert_eq!(w.syllables[1].elt, p3("(1 2)"));
        let w = parse_word(&q, "(0:(1 2)) (1:[3, 2, 1])").unwrap();
        assert_eq!(w.syllables[1].elt, p3("(1 3)"));
        assert!(parse_word(&q, "1").unwrap().is_empty());
        assert!(matches!(parse_word(&q, "(2:a)"), Err(Error::BadSyllable { .. })));
        assert!(matches!(parse_word(&q, "(0:a"), Err(Error::Parse { position: 0, .. })));
    }

    #[test]
    fn json_scheme_formats() {
        let q = parse_scheme_json(r#"{"power": 3, "factor": "C4", "subgroup": "C2"}"#, None, 1000)
            .unwrap();
        assert_eq!(q.copies(), 3);
        let q = parse_scheme_json(
            r#"{"factors": ["S3", "S3"], "subgroups": ["A3", "A3"],
                "isos": [{"from": 0, "to": 1, "images": ["a^-1"]}]}"#,
            None,
            1000,
        )
        .unwrap();
        assert!(!q.is_power());
        let w = parse_word_json(&q, r#"[{"copy": 0, "elt": "b"}, {"copy": 1, "elt": [1, 3, 2]}]"#)
            .unwrap();
        assert_eq!(w.len(), 2);
    }
}
