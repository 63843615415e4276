//! Built-in small groups with named generators and notable subgroups.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{PermGroup, DEFAULT_ORDER_CAP};
use crate::perm::Perm;
use crate::subgroup::Subgroup;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: Arc<PermGroup>,
    pub subgroups: Vec<(String, Subgroup)>,
}

impl CatalogEntry {
    pub fn subgroup(&self, name: &str) -> Option<&Subgroup> {
        self.subgroups
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }
}

struct Def {
    name: String,
    degree: usize,
    gens: Vec<(&'static str, String)>,
    subgroups: Vec<(String, Vec<String>)>,
}

fn def(
    name: &str,
    degree: usize,
    gens: &[(&'static str, &str)],
    subgroups: &[(&str, &[&str])],
) -> Def {
    Def {
        name: name.to_string(),
        degree,
        gens: gens.iter().map(|&(n, c)| (n, c.to_string())).collect(),
        subgroups: subgroups
            .iter()
            .map(|&(n, g)| (n.to_string(), g.iter().map(|s| s.to_string()).collect()))
            .collect(),
    }
}

fn cyclic_def(n: usize) -> Def {
    let cycle = if n == 1 {
        "()".to_string()
    } else {
        format!(
            "({})",
            (1..=n).map(|i| i.to_string()).collect::<Vec<_>>().join(" ")
        )
    };
    let gens = if n == 1 {
        Vec::new()
    } else {
        vec![("a", cycle.clone())]
    };
    let mut subgroups = vec![("1".to_string(), Vec::new())];
    for d in (2..=n).filter(|d| n % d == 0) {
        let gen = Perm::from_cycles(n, &cycle)
            .expect("catalog cycle")
            .pow((n / d) as i64)
            .to_string();
        subgroups.push((format!("C{d}"), vec![gen]));
    }
    Def {
        name: format!("C{n}"),
        degree: n,
        gens,
        subgroups,
    }
}

fn definitions() -> Vec<Def> {
    let mut defs: Vec<Def> = (1..=12).map(cyclic_def).collect();
    defs.push(def(
        "C2xC2",
        4,
        &[("a", "(1 2)"), ("b", "(3 4)")],
        &[
            ("1", &[]),
            ("Ca", &["(1 2)"]),
            ("Cb", &["(3 4)"]),
            ("Cab", &["(1 2)(3 4)"]),
            ("C2xC2", &["(1 2)", "(3 4)"]),
        ],
    ));
    defs.push(def(
        "C2xC2xC2",
        6,
        &[("a", "(1 2)"), ("b", "(3 4)"), ("c", "(5 6)")],
        &[
            ("1", &[]),
            ("Ca", &["(1 2)"]),
            ("Cb", &["(3 4)"]),
            ("Cc", &["(5 6)"]),
            ("Cabc", &["(1 2)(3 4)(5 6)"]),
            ("CaxCb", &["(1 2)", "(3 4)"]),
            ("C2xC2xC2", &["(1 2)", "(3 4)", "(5 6)"]),
        ],
    ));
    defs.push(def(
        "S3",
        3,
        &[("a", "(1 2 3)"), ("b", "(1 2)"), ("c", "(1 3)")],
        &[
            ("1", &[]),
            ("A3", &["(1 2 3)"]),
            ("C2", &["(1 2)"]),
            ("S3", &["(1 2 3)", "(1 2)"]),
        ],
    ));
    defs.push(def(
        "S4",
        4,
        &[("a", "(1 2 3 4)"), ("b", "(1 2)")],
        &[
            ("1", &[]),
            ("V4", &["(1 2)(3 4)", "(1 3)(2 4)"]),
            ("C4", &["(1 2 3 4)"]),
            ("D4", &["(1 2 3 4)", "(1 3)"]),
            ("S3", &["(1 2 3)", "(1 2)"]),
            ("A4", &["(1 2 3)", "(1 2)(3 4)"]),
            ("S4", &["(1 2 3 4)", "(1 2)"]),
        ],
    ));
    defs.push(def(
        "A4",
        4,
        &[("a", "(1 2 3)"), ("b", "(1 2)(3 4)")],
        &[
            ("1", &[]),
            ("C2", &["(1 2)(3 4)"]),
            ("C3", &["(1 2 3)"]),
            ("V4", &["(1 2)(3 4)", "(1 3)(2 4)"]),
            ("A4", &["(1 2 3)", "(1 2)(3 4)"]),
        ],
    ));
    defs.push(def(
        "D4",
        4,
        &[("r", "(1 2 3 4)"), ("s", "(1 3)")],
        &[
            ("1", &[]),
            ("S", &["(1 3)"]),
            ("Z", &["(1 3)(2 4)"]),
            ("C2", &["(1 3)(2 4)"]),
            ("C4", &["(1 2 3 4)"]),
            ("V", &["(1 3)", "(2 4)"]),
            ("W", &["(1 2)(3 4)", "(1 4)(2 3)"]),
            ("D4", &["(1 2 3 4)", "(1 3)"]),
        ],
    ));
    defs.push(def(
        "D6",
        6,
        &[("r", "(1 2 3 4 5 6)"), ("s", "(2 6)(3 5)")],
        &[
            ("1", &[]),
            ("S", &["(2 6)(3 5)"]),
            ("Z", &["(1 4)(2 5)(3 6)"]),
            ("C3", &["(1 3 5)(2 4 6)"]),
            ("C6", &["(1 2 3 4 5 6)"]),
            ("D3", &["(1 3 5)(2 4 6)", "(2 6)(3 5)"]),
            ("D6", &["(1 2 3 4 5 6)", "(2 6)(3 5)"]),
        ],
    ));
    defs.push(def(
        "Q8",
        8,
        &[("i", "(1 2 4 8)(3 6 7 5)"), ("j", "(1 3 4 7)(2 5 8 6)")],
        &[
            ("1", &[]),
            ("Z", &["(1 4)(2 8)(3 7)(5 6)"]),
            ("Ci", &["(1 2 4 8)(3 6 7 5)"]),
            ("Cj", &["(1 3 4 7)(2 5 8 6)"]),
            ("Q8", &["(1 2 4 8)(3 6 7 5)", "(1 3 4 7)(2 5 8 6)"]),
        ],
    ));
    defs.push(def(
        "C4xC2",
        6,
        &[("a", "(1 2 3 4)"), ("b", "(5 6)")],
        &[
            ("1", &[]),
            ("Z2", &["(1 3)(2 4)"]),
            ("C2", &["(5 6)"]),
            ("C4", &["(1 2 3 4)"]),
            ("C4xC2", &["(1 2 3 4)", "(5 6)"]),
        ],
    ));
    defs
}

fn build(d: Def, cap: usize) -> Result<CatalogEntry> {
    let perm = |s: &str| Perm::from_cycles(d.degree.max(1), s);
    let names = d.gens.iter().map(|(n, _)| n.to_string()).collect();
    let gens = d
        .gens
        .iter()
        .map(|(_, c)| perm(c))
        .collect::<Result<Vec<_>>>()?;
    let group = PermGroup::generate_named(d.degree.max(1), names, gens, cap)?;
    let subgroups = d
        .subgroups
        .iter()
        .map(|(name, gens)| {
            let gens = gens.iter().map(|c| perm(c)).collect::<Result<Vec<_>>>()?;
            Ok((name.clone(), Subgroup::generated(&group, &gens)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CatalogEntry {
        name: d.name,
        group,
        subgroups,
    })
}

/// The full catalog, in a fixed order.
pub fn catalog() -> Vec<CatalogEntry> {
    definitions()
        .into_iter()
        .map(|d| build(d, DEFAULT_ORDER_CAP).expect("catalog entries are valid"))
        .collect()
}

pub fn catalog_names() -> Vec<String> {
    definitions().into_iter().map(|d| d.name).collect()
}

pub fn lookup(name: &str) -> Result<CatalogEntry> {
    lookup_with_cap(name, DEFAULT_ORDER_CAP)
}

pub fn lookup_with_cap(name: &str, cap: usize) -> Result<CatalogEntry> {
    definitions()
        .into_iter()
        .find(|d| d.name == name)
        .ok_or_else(|| Error::UnknownCatalog(name.to_string()))
        .and_then(|d| build(d, cap))
}
