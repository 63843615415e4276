//! Permutations in image-array form.
//!
//! Points are stored 0-based internally and exposed 1-based in every text and
//! JSON rendering. The derived `Ord` is lexicographic on the image array, which
//! is the canonical element order used throughout the crate; the identity is
//! always the least element.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u32]>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Builds a permutation from 1-based images, checking bijectivity.
    pub fn from_images(images: &[u32]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img as usize > n {
                return Err(Error::InvalidPerm(format!(
                    "image {img} outside 1..={n}"
                )));
            }
            let i = (img - 1) as usize;
            if seen[i] {
                return Err(Error::InvalidPerm(format!("image {img} repeated")));
            }
            seen[i] = true;
            out.push(img - 1);
        }
        Ok(Perm(out.into_boxed_slice()))
    }

    /// Parses cycle notation such as `(1 2 3)(4 5)` or `(1,2)`; `()` is the identity.
    pub fn from_cycles(degree: usize, text: &str) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let bytes = text.as_bytes();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip_ws(&mut pos);
        if pos == bytes.len() {
            return Err(Error::parse(0, "empty cycle notation"));
        }
        while pos < bytes.len() {
            if bytes[pos] != b'(' {
                return Err(Error::parse(pos, "expected '('"));
            }
            pos += 1;
            let mut cycle = Vec::new();
            loop {
                while pos < bytes.len() && (bytes[pos].is_ascii_whitespace() || bytes[pos] == b',')
                {
                    pos += 1;
                }
                if pos >= bytes.len() {
                    return Err(Error::parse(pos, "unterminated cycle"));
                }
                if bytes[pos] == b')' {
                    pos += 1;
                    break;
                }
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                if start == pos {
                    return Err(Error::parse(pos, "expected a point number"));
                }
                let point: usize = text[start..pos]
                    .parse()
                    .map_err(|_| Error::parse(start, "point number out of range"))?;
                if point == 0 || point > degree {
                    return Err(Error::parse(
                        start,
                        format!("point {point} outside 1..={degree}"),
                    ));
                }
                if used[point - 1] {
                    return Err(Error::parse(start, format!("point {point} repeated")));
                }
                used[point - 1] = true;
                cycle.push(point - 1);
            }
            for (k, &p) in cycle.iter().enumerate() {
                images[p] = cycle[(k + 1) % cycle.len()] as u32;
            }
            skip_ws(&mut pos);
        }
        Ok(Perm(images.into_boxed_slice()))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Image of a 0-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.0[point] as usize
    }

    /// 1-based image array.
    pub fn images(&self) -> Vec<u32> {
        self.0.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Product acting left to right: `self` first, then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(self.0.iter().map(|&i| other.0[i as usize]).collect())
    }

    pub fn inv(&self) -> Perm {
        let mut out = vec![0u32; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            out[j as usize] = i as u32;
        }
        Perm(out.into_boxed_slice())
    }

    pub fn pow(&self, mut exp: i64) -> Perm {
        let mut base = if exp < 0 { self.inv() } else { self.clone() };
        exp = exp.abs();
        let mut acc = Perm::identity(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// `self^-1 * x * self`.
    pub fn conjugate(&self, x: &Perm) -> Perm {
        self.inv().mul(x).mul(self)
    }

    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inv().mul(&other.inv()).mul(self).mul(other)
    }

    /// Places `self` on points `0..n` and `other` on `n..n+m`.
    pub fn disjoint_sum(&self, other: &Perm) -> Perm {
        let n = self.degree() as u32;
        let images = self
            .0
            .iter()
            .copied()
            .chain(other.0.iter().map(|&j| j + n))
            .collect();
        Perm(images)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, p) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images())
    }
}

impl Serialize for Perm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Perm {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<u32>::deserialize(deserializer)?;
        Perm::from_images(&images).map_err(serde::de::Error::custom)
    }
}
