//! Brute-force oracles shared by the integration tests. They work on plain
//! element sets and avoid the library's index tables, normal-subgroup lattice,
//! amalgam reduction and series arithmetic.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rootres::{PermGroup, Perm, RootClassSpec};

pub type Set = BTreeSet<Perm>;

/// Closure of a generating set under multiplication.
pub fn close(degree: usize, gens: &[Perm]) -> Set {
    let mut set: Set = BTreeSet::new();
    set.insert(Perm::identity(degree));
    let mut frontier = vec![Perm::identity(degree)];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.mul(g);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

pub fn elements(g: &PermGroup) -> Vec<Perm> {
    close(g.degree(), g.generators()).into_iter().collect()
}

/// Every subgroup, as the closure of `{1}` under joining a single element.
pub fn subgroups(g: &PermGroup) -> Vec<Set> {
    let elts = elements(g);
    let trivial = close(g.degree(), &[]);
    let mut found: Vec<Set> = vec![trivial];
    let mut seen: BTreeSet<Set> = found.iter().cloned().collect();
    let mut k = 0;
    while k < found.len() {
        for x in &elts {
            if found[k].contains(x) {
                continue;
            }
            let mut gens: Vec<Perm> = found[k].iter().cloned().collect();
            gens.push(x.clone());
            let s = close(g.degree(), &gens);
            if seen.insert(s.clone()) {
                found.push(s);
            }
        }
        k += 1;
    }
    found
}

pub fn is_normal(g: &PermGroup, n: &Set) -> bool {
    elements(g)
        .iter()
        .all(|x| n.iter().all(|y| n.contains(&x.inv().mul(y).mul(x))))
}

pub fn normal_subgroups(g: &PermGroup) -> Vec<Set> {
    subgroups(g).into_iter().filter(|n| is_normal(g, n)).collect()
}

pub fn is_power_of(mut n: usize, p: usize) -> bool {
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

/// A generating set of `s`, chosen greedily.
pub fn generating_set(degree: usize, s: &Set) -> Vec<Perm> {
    let mut gens = Vec::new();
    let mut span = close(degree, &gens);
    for x in s {
        if !span.contains(x) {
            gens.push(x.clone());
            span = close(degree, &gens);
        }
    }
    gens
}

/// Derived subgroup: the normal closure of the commutators of a generating set.
pub fn derived(degree: usize, s: &Set) -> Set {
    let gens = generating_set(degree, s);
    let mut seeds: Vec<Perm> = Vec::new();
    for a in &gens {
        for b in &gens {
            seeds.push(a.inv().mul(&b.inv()).mul(a).mul(b));
        }
    }
    loop {
        let cur = close(degree, &seeds);
        let extra = cur
            .iter()
            .flat_map(|y| gens.iter().map(move |x| x.inv().mul(y).mul(x)))
            .find(|c| !cur.contains(c));
        match extra {
            Some(c) => seeds.push(c),
            None => return cur,
        }
    }
}

/// Last term of the derived series.
pub fn perfect_core(degree: usize, s: &Set) -> Set {
    let mut cur = s.clone();
    loop {
        let next = derived(degree, &cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

pub fn set_in_class(degree: usize, s: &Set, class: RootClassSpec) -> bool {
    match class {
        RootClassSpec::AllFinite => true,
        RootClassSpec::FiniteP(p) => is_power_of(s.len(), p as usize),
        RootClassSpec::FiniteSolvable => perfect_core(degree, s).len() == 1,
    }
}

/// `G/N` in the class: index a power of `p`, or the derived series of `G`
/// falling into `N`.
pub fn quotient_in_class(g: &PermGroup, n: &Set, class: RootClassSpec) -> bool {
    let all: Set = elements(g).into_iter().collect();
    match class {
        RootClassSpec::AllFinite => true,
        RootClassSpec::FiniteP(p) => is_power_of(all.len() / n.len(), p as usize),
        RootClassSpec::FiniteSolvable => perfect_core(g.degree(), &all).is_subset(n),
    }
}

pub fn product_set(a: &Set, b: &Set) -> Set {
    a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))).collect()
}

/// Elements of `G \ H` with no normal `N` such that `G/N` is in the class and
/// `a ∉ HN`, in canonical order.
pub fn closedness_failures(
    elts: &[Perm],
    good_normals: &[Set],
    h: &Set,
) -> Vec<Perm> {
    let products: Vec<Set> = good_normals.iter().map(|n| product_set(h, n)).collect();
    elts.iter()
        .filter(|a| !h.contains(*a) && products.iter().all(|hn| hn.contains(*a)))
        .cloned()
        .collect()
}

pub fn classes() -> Vec<RootClassSpec> {
    vec![
        RootClassSpec::AllFinite,
        RootClassSpec::FiniteP(2),
        RootClassSpec::FiniteP(3),
        RootClassSpec::FiniteSolvable,
    ]
}

/// Union-find over words in a free power `G *_H ... *_H G` with identity
/// gluing, on all words of at most `max_len` letters. Letters are
/// `(copy, element index)`; edges are single elementary moves: merging two
/// adjacent letters of one copy, deleting an identity letter, and moving an
/// `H`-letter to another copy.
pub struct WordOracle {
    pub copies: usize,
    pub elts: Vec<Perm>,
    pub in_h: Vec<bool>,
    pub max_len: usize,
    parent: Vec<u32>,
    table: Vec<Vec<usize>>,
    identity: usize,
}

impl WordOracle {
    pub fn new(g: &PermGroup, h: &Set, copies: usize, max_len: usize) -> Self {
        let elts = elements(g);
        let index: HashMap<Perm, usize> = elts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let table = elts
            .iter()
            .map(|a| elts.iter().map(|b| index[&a.mul(b)]).collect())
            .collect();
        let in_h = elts.iter().map(|p| h.contains(p)).collect();
        let identity = index[&Perm::identity(g.degree())];
        let alphabet = copies * elts.len();
        let size = (0..=max_len).map(|l| alphabet.pow(l as u32)).sum::<usize>();
        let mut oracle = WordOracle {
            copies,
            elts,
            in_h,
            max_len,
            parent: (0..size as u32).collect(),
            table,
            identity,
        };
        oracle.build();
        oracle
    }

    fn alphabet(&self) -> usize {
        self.copies * self.elts.len()
    }

    /// Dense code: words of length `l` occupy a contiguous block.
    pub fn code(&self, word: &[(usize, usize)]) -> usize {
        let a = self.alphabet();
        let offset: usize = (0..word.len()).map(|l| a.pow(l as u32)).sum();
        let mut v = 0;
        for &(c, e) in word {
            v = v * a + c * self.elts.len() + e;
        }
        offset + v
    }

    pub fn words(&self, len: usize) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|w| {
                    (0..self.copies).flat_map(move |c| {
                        (0..self.elts.len()).map({
                            let w = w.clone();
                            move |e| {
                                let mut w = w.clone();
                                w.push((c, e));
                                w
                            }
                        })
                    })
                })
                .collect();
        }
        out
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] as usize != r {
            r = self.parent[r] as usize;
        }
        let mut y = x;
        while self.parent[y] as usize != r {
            let next = self.parent[y] as usize;
            self.parent[y] = r as u32;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb) as u32;
        }
    }

    fn build(&mut self) {
        for len in 1..=self.max_len {
            for w in self.words(len) {
                let code = self.code(&w);
                for i in 0..len {
                    let (c, e) = w[i];
                    if e == self.identity {
                        let mut v = w.clone();
                        v.remove(i);
                        let other = self.code(&v);
                        self.union(code, other);
                    }
                    if self.in_h[e] {
                        for c2 in 0..self.copies {
                            if c2 != c {
                                let mut v = w.clone();
                                v[i] = (c2, e);
                                let other = self.code(&v);
                                self.union(code, other);
                            }
                        }
                    }
                    if i + 1 < len && w[i + 1].0 == c {
                        let mut v = w.clone();
                        v[i] = (c, self.table[e][w[i + 1].1]);
                        v.remove(i + 1);
                        let other = self.code(&v);
                        self.union(code, other);
                    }
                }
            }
        }
    }

    pub fn class_of(&mut self, word: &[(usize, usize)]) -> usize {
        let c = self.code(word);
        self.find(c)
    }
}

/// Coefficient of a monomial (0-based variables) in the image of a free word
/// under `x_i -> 1 + t_i`, expanding every letter's series term by term.
pub fn magnus_coefficient(letters: &[i32], monomial: &[usize], modulus: u64) -> i128 {
    fn go(letters: &[i32], monomial: &[usize]) -> i128 {
        let Some((&l, rest)) = letters.split_first() else {
            return i128::from(monomial.is_empty());
        };
        let var = l.unsigned_abs() as usize - 1;
        let mut total = go(rest, monomial);
        let mut k = 0;
        while k < monomial.len() && monomial[k] == var {
            k += 1;
            let sign = if l > 0 {
                if k > 1 {
                    break;
                }
                1
            } else if k % 2 == 0 {
                1
            } else {
                -1
            };
            total += sign * go(rest, &monomial[k..]);
        }
        total
    }
    let c = go(letters, monomial);
    if modulus == 0 {
        c
    } else {
        c.rem_euclid(modulus as i128)
    }
}

/// All monomials of degree `d` in `rank` variables, lexicographically.
pub fn monomials(rank: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out
            .into_iter()
            .flat_map(|m: Vec<usize>| {
                (0..rank).map(move |v| {
                    let mut m = m.clone();
                    m.push(v);
                    m
                })
            })
            .collect();
    }
    out
}

/// Freely reduced nonempty words of length `len` over `x1..x_rank`.
pub fn reduced_words(rank: usize, len: usize) -> Vec<Vec<i32>> {
    let letters: Vec<i32> = (1..=rank as i32).flat_map(|i| [i, -i]).collect();
    let mut out: Vec<Vec<i32>> = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().filter_map(move |&l| {
                    (w.last() != Some(&-l)).then(|| {
                        let mut w = w.clone();
                        w.push(l);
                        w
                    })
                })
            })
            .collect();
    }
    out
}

/// Every single-field mutation of a JSON document: numbers +1, strings
/// extended, booleans flipped, nulls replaced by 0, and object keys renamed.
pub fn tamper_variants(value: &serde_json::Value) -> Vec<(String, serde_json::Value)> {
    use serde_json::Value;
    let mut out = Vec::new();
    fn mutate(root: &Value, path: &[String], f: &dyn Fn(&mut Value)) -> Value {
        let mut copy = root.clone();
        let mut cur = &mut copy;
        for p in path {
            cur = match cur {
                Value::Object(m) => m.get_mut(p).expect("path exists"),
                Value::Array(a) => &mut a[p.parse::<usize>().expect("index")],
                _ => unreachable!("paths only traverse containers"),
            };
        }
        f(cur);
        copy
    }
    fn walk(v: &Value, path: &mut Vec<String>, root: &Value, out: &mut Vec<(String, Value)>) {
        let here = path.join(".");
        match v {
            Value::Null => out.push((here, mutate(root, path, &|x| *x = Value::from(0)))),
            Value::Bool(b) => {
                let b = *b;
                out.push((here, mutate(root, path, &|x| *x = Value::Bool(!b))));
            }
            Value::Number(n) => {
                let bumped = if let Some(u) = n.as_u64() {
                    Value::from(u + 1)
                } else if let Some(i) = n.as_i64() {
                    Value::from(i + 1)
                } else {
                    Value::from(n.as_f64().expect("finite") + 1.0)
                };
                out.push((here, mutate(root, path, &|x| *x = bumped.clone())));
            }
            Value::String(s) => {
                let s = format!("{s}x");
                out.push((here, mutate(root, path, &|x| *x = Value::String(s.clone()))));
            }
            Value::Array(a) => {
                for (i, item) in a.iter().enumerate() {
                    path.push(i.to_string());
                    walk(item, path, root, out);
                    path.pop();
                }
            }
            Value::Object(m) => {
                for (k, item) in m {
                    let renamed = mutate(root, path, &|x| {
                        if let Value::Object(m) = x {
                            let val = m.remove(k).expect("key exists");
                            m.insert(format!("{k}x"), val);
                        }
                    });
                    out.push((format!("{here}.{k} (renamed)"), renamed));
                    path.push(k.clone());
                    walk(item, path, root, out);
                    path.pop();
                }
            }
        }
    }
    walk(value, &mut Vec::new(), value, &mut out);
    out
}

pub fn catalog_group(name: &str) -> Arc<PermGroup> {
    rootres::catalog::lookup(name).expect("catalog entry").group
}
