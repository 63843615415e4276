//! Truncated noncommutative power series and the substitution
//! `x_i -> 1 + t_i`, which embeds a free group residually into the unit
//! groups `1 + Δ` of `Z<t_1..t_r>/(degree > d)` (finitely generated
//! torsion-free nilpotent) and of `F_p<t_1..t_r>/(degree > d)` (finite
//! `p`-groups).

use std::collections::BTreeMap;
use std::fmt;

use crate::certificate::{
    free_word_claims, CertificateData, CertificateInputs, CertificateKind, FreeWordData,
    FreeWordInputs, SeparationCertificate, FORMAT_VERSION,
};
use crate::class::RootClassSpec;
use crate::error::{Error, Result};
use crate::group::is_prime;

/// Size guardrails for series arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MagnusLimits {
    pub max_rank: usize,
    pub max_degree: usize,
}

impl Default for MagnusLimits {
    fn default() -> Self {
        MagnusLimits {
            max_rank: 4,
            max_degree: 8,
        }
    }
}

/// A monomial is a sequence of 0-based variable indices.
pub type Monomial = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    rank: usize,
    degree_bound: usize,
    modulus: u64,
    terms: BTreeMap<Monomial, i128>,
}

impl TruncatedSeries {
    pub fn zero(rank: usize, degree_bound: usize, modulus: u64) -> Self {
        TruncatedSeries {
            rank,
            degree_bound,
            modulus,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize, degree_bound: usize, modulus: u64) -> Self {
        let mut s = Self::zero(rank, degree_bound, modulus);
        s.add_term(Vec::new(), 1);
        s
    }

    /// `1 + t_var` (0-based variable index).
    pub fn generator(rank: usize, degree_bound: usize, modulus: u64, var: usize) -> Self {
        let mut s = Self::one(rank, degree_bound, modulus);
        if degree_bound >= 1 {
            s.add_term(vec![var as u8], 1);
        }
        s
    }

    /// `(1 + t_var)^-1 = Σ_k (-t_var)^k`, truncated.
    pub fn generator_inverse(rank: usize, degree_bound: usize, modulus: u64, var: usize) -> Self {
        let mut s = Self::zero(rank, degree_bound, modulus);
        for k in 0..=degree_bound {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            s.add_term(vec![var as u8; k], sign);
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Nonzero terms in monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i128)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn coefficient(&self, monomial: &[u8]) -> i128 {
        self.terms.get(monomial).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coefficient(&[]) == 1
    }

    fn reduce_coeff(&self, c: i128) -> i128 {
        if self.modulus == 0 {
            c
        } else {
            c.rem_euclid(self.modulus as i128)
        }
    }

    fn add_term(&mut self, monomial: Monomial, c: i128) {
        let c = self.reduce_coeff(c);
        if c != 0 {
            self.terms.insert(monomial, c);
        } else {
            self.terms.remove(&monomial);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if (self.rank, self.degree_bound, self.modulus)
            != (other.rank, other.degree_bound, other.modulus)
        {
            return Err(Error::SeriesMismatch(format!(
                "(rank {}, degree {}, modulus {}) vs (rank {}, degree {}, modulus {})",
                self.rank,
                self.degree_bound,
                self.modulus,
                other.rank,
                other.degree_bound,
                other.modulus
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            let sum = out
                .coefficient(m)
                .checked_add(c)
                .ok_or(Error::CoefficientOverflow)?;
            out.add_term(m.clone(), sum);
        }
        Ok(out)
    }

    /// Product, dropping every monomial longer than the degree bound.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut acc: BTreeMap<Monomial, i128> = BTreeMap::new();
        for (ma, &ca) in &self.terms {
            let room = self.degree_bound - ma.len();
            for (mb, &cb) in &other.terms {
                if mb.len() > room {
                    continue;
                }
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                let prod = ca.checked_mul(cb).ok_or(Error::CoefficientOverflow)?;
                let slot = acc.entry(m).or_insert(0);
                *slot = slot.checked_add(prod).ok_or(Error::CoefficientOverflow)?;
                if self.modulus != 0 {
                    *slot = slot.rem_euclid(self.modulus as i128);
                }
            }
        }
        let mut out = Self::zero(self.rank, self.degree_bound, self.modulus);
        for (m, c) in acc {
            out.add_term(m, c);
        }
        Ok(out)
    }

    /// Inverse of a series with constant term 1, as the finite geometric
    /// series `Σ_{k=0}^{d} (-u)^k` of its augmentation part `u`.
    pub fn inv_unit(&self) -> Result<Self> {
        let constant = self.coefficient(&[]);
        if constant != 1 {
            return Err(Error::NotAUnit(constant));
        }
        let mut neg_u = Self::zero(self.rank, self.degree_bound, self.modulus);
        for (m, &c) in self.terms.iter().filter(|(m, _)| !m.is_empty()) {
            neg_u.add_term(m.clone(), c.checked_neg().ok_or(Error::CoefficientOverflow)?);
        }
        let mut sum = Self::one(self.rank, self.degree_bound, self.modulus);
        let mut power = sum.clone();
        for _ in 0..self.degree_bound {
            power = power.mul(&neg_u)?;
            sum = sum.add(&power)?;
        }
        Ok(sum)
    }
}

pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

pub fn series_inv_unit(a: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.inv_unit()
}

pub fn format_monomial(m: &[u8]) -> String {
    if m.is_empty() {
        return "1".to_string();
    }
    let mut out = String::new();
    let mut k = 0;
    while k < m.len() {
        let mut run = 1;
        while k + run < m.len() && m[k + run] == m[k] {
            run += 1;
        }
        if !out.is_empty() {
            out.push('*');
        }
        out.push_str(&format!("t{}", m[k] + 1));
        if run > 1 {
            out.push_str(&format!("^{run}"));
        }
        k += run;
    }
    out
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut ordered: Vec<_> = self.terms.iter().collect();
        ordered.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(b.0)));
        for (k, (m, &c)) in ordered.into_iter().enumerate() {
            let (sign, mag) = if c < 0 { ("-", -c) } else { ("+", c) };
            if k == 0 {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if m.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                f.write_str(&format_monomial(m))?;
            } else {
                write!(f, "{mag}*{}", format_monomial(m))?;
            }
        }
        Ok(())
    }
}

/// A word in the free group on `x1, x2, ...`; letters are signed 1-based
/// generator indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FreeWord {
    pub letters: Vec<i32>,
}

impl FreeWord {
    pub fn new(letters: Vec<i32>) -> Self {
        assert!(letters.iter().all(|&l| l != 0), "letters are nonzero");
        FreeWord { letters }
    }

    /// Parses whitespace-separated letters like `x1 x2^-1 x1^3`.
    pub fn parse(text: &str) -> Result<FreeWord> {
        let mut letters = Vec::new();
        let mut offset = 0;
        for token in text.split_whitespace() {
            let position = text[offset..].find(token).map_or(offset, |p| offset + p);
            offset = position + token.len();
            let bad = |msg: &str| Error::parse(position, format!("{token:?}: {msg}"));
            let body = token
                .strip_prefix('x')
                .ok_or_else(|| bad("expected a letter x<index>"))?;
            let (index, exp) = match body.split_once('^') {
                Some((i, e)) => (i, e.parse::<i32>().map_err(|_| bad("bad exponent"))?),
                None => (body, 1),
            };
            let index: i32 = index.parse().map_err(|_| bad("bad generator index"))?;
            if index <= 0 {
                return Err(bad("generator indices start at 1"));
            }
            let letter = if exp < 0 { -index } else { index };
            letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(FreeWord { letters })
    }

    /// Highest generator index used (0 for the empty word).
    pub fn rank(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Cancels adjacent `x x^-1` pairs.
    pub fn free_reduce(&self) -> FreeWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        FreeWord { letters: out }
    }

    pub fn is_freely_trivial(&self) -> bool {
        self.free_reduce().is_empty()
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        FreeWord { letters }
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for (k, &l) in self.letters.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            if l > 0 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{}^-1", -l)?;
            }
        }
        Ok(())
    }
}

fn check_parameters(rank: usize, d: usize, modulus: u64, limits: MagnusLimits) -> Result<()> {
    if modulus != 0 && !is_prime(modulus) {
        return Err(Error::SeriesLimit(format!("modulus {modulus} is neither 0 nor prime")));
    }
    if rank > limits.max_rank {
        return Err(Error::SeriesLimit(format!(
            "rank {rank} exceeds {}",
            limits.max_rank
        )));
    }
    if d > limits.max_degree {
        return Err(Error::SeriesLimit(format!(
            "degree {d} exceeds {}",
            limits.max_degree
        )));
    }
    Ok(())
}

/// Image of `w` under `x_i -> 1 + t_i`, truncated past degree `d`.
pub fn magnus_eval(w: &FreeWord, rank: usize, d: usize, modulus: u64) -> Result<TruncatedSeries> {
    magnus_eval_with(w, rank, d, modulus, MagnusLimits::default())
}

pub fn magnus_eval_with(
    w: &FreeWord,
    rank: usize,
    d: usize,
    modulus: u64,
    limits: MagnusLimits,
) -> Result<TruncatedSeries> {
    check_parameters(rank, d, modulus, limits)?;
    if w.rank() > rank {
        return Err(Error::SeriesLimit(format!(
            "word uses x{} but rank is {rank}",
            w.rank()
        )));
    }
    let images: Vec<(TruncatedSeries, TruncatedSeries)> = (0..rank)
        .map(|v| {
            (
                TruncatedSeries::generator(rank, d, modulus, v),
                TruncatedSeries::generator_inverse(rank, d, modulus, v),
            )
        })
        .collect();
    let mut acc = TruncatedSeries::one(rank, d, modulus);
    for &l in &w.letters {
        let (pos, neg) = &images[l.unsigned_abs() as usize - 1];
        acc = acc.mul(if l > 0 { pos } else { neg })?;
    }
    Ok(acc)
}

/// Least `d` at which the word's image is not 1, with the first nonzero
/// monomial of degree `d` (all lower-degree terms vanish at the least `d`).
pub fn minimal_separating_degree(
    w: &FreeWord,
    modulus: u64,
    d_max: usize,
    limits: MagnusLimits,
) -> Result<Option<(usize, Monomial, i128)>> {
    let rank = w.rank();
    for d in 1..=d_max {
        let image = magnus_eval_with(w, rank, d, modulus, limits)?;
        let found = image
            .terms()
            .find(|(m, _)| !m.is_empty())
            .map(|(m, c)| (d, m.clone(), c));
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Separates a freely nontrivial word in the unit group of a truncated series
/// ring, searching `d = 1, 2, ...` up to `d_max`.
pub fn separate_free_word(w: &FreeWord, modulus: u64, d_max: usize) -> Result<SeparationCertificate> {
    separate_free_word_with(w, modulus, d_max, MagnusLimits::default())
}

pub fn separate_free_word_with(
    w: &FreeWord,
    modulus: u64,
    d_max: usize,
    limits: MagnusLimits,
) -> Result<SeparationCertificate> {
    let reduced = w.free_reduce();
    if reduced.is_empty() {
        return Err(Error::TrivialWord);
    }
    let (degree, monomial, coefficient) = minimal_separating_degree(&reduced, modulus, d_max, limits)?
        .ok_or_else(|| Error::DegreeExhausted {
            word: reduced.to_string(),
            max_degree: d_max,
        })?;
    let coefficient = i64::try_from(coefficient).map_err(|_| Error::CoefficientOverflow)?;
    let class = if modulus == 0 {
        None
    } else {
        Some(RootClassSpec::FiniteP(modulus))
    };
    let monomial: Vec<u32> = monomial.iter().map(|&v| v as u32 + 1).collect();
    let word = reduced.to_string();
    let rank = reduced.rank();
    let claims = free_word_claims(&word, rank, degree, modulus, &monomial, coefficient);
    Ok(SeparationCertificate {
        format_version: FORMAT_VERSION,
        kind: CertificateKind::FreeWord,
        class,
        inputs: CertificateInputs::FreeWord(FreeWordInputs { word }),
        data: CertificateData::FreeWord(FreeWordData {
            rank,
            degree,
            modulus,
            monomial,
            coefficient,
        }),
        claims,
    })
}
