//! Dehn twist words on a disk with holes at the vertices of a regular k-gon.
//!
//! A generator is a nonempty hole subset; the curve is the convex one around
//! those holes. Words are stored expanded, one twist per entry, so positions
//! count individual twists.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error("hole {hole} outside page with {k} holes")]
    HoleOutOfRange { hole: usize, k: usize },
    #[error("empty hole set")]
    EmptyGenerator,
}

/// Sorted, deduplicated, nonempty set of 1-based holes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistGen(Vec<usize>);

impl TwistGen {
    pub fn new(holes: impl IntoIterator<Item = usize>) -> Result<Self, WordError> {
        let mut v: Vec<usize> = holes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() || v[0] == 0 {
            return Err(WordError::EmptyGenerator);
        }
        Ok(Self(v))
    }

    pub fn holes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, h: usize) -> bool {
        self.0.binary_search(&h).is_ok()
    }

    pub fn is_subset(&self, other: &TwistGen) -> bool {
        self.0.iter().all(|&h| other.contains(h))
    }

    pub fn meets(&self, other: &TwistGen) -> bool {
        self.0.iter().any(|&h| other.contains(h))
    }

    pub fn union(&self, other: &TwistGen) -> TwistGen {
        TwistGen::new(self.0.iter().chain(&other.0).copied()).expect("nonempty")
    }

    pub fn intersection(&self, other: &TwistGen) -> Option<TwistGen> {
        TwistGen::new(self.0.iter().copied().filter(|&h| other.contains(h))).ok()
    }

    pub fn difference(&self, other: &TwistGen) -> Option<TwistGen> {
        TwistGen::new(self.0.iter().copied().filter(|&h| !other.contains(h))).ok()
    }

    pub fn max_hole(&self) -> usize {
        *self.0.last().expect("nonempty")
    }
}

impl fmt::Display for TwistGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|h| h.to_string()).collect();
        write!(f, "D{{{}}}", parts.join(","))
    }
}

/// The convex curves around `a` and `b` can be made disjoint.
pub fn disjoint(a: &TwistGen, b: &TwistGen) -> bool {
    if a.is_subset(b) || b.is_subset(a) {
        return true;
    }
    if a.meets(b) {
        return false;
    }
    // walk the polygon; the hulls are disjoint iff the labels switch at most twice
    let labels: Vec<bool> = (1..=a.max_hole().max(b.max_hole()))
        .filter_map(|h| {
            if a.contains(h) {
                Some(true)
            } else if b.contains(h) {
                Some(false)
            } else {
                None
            }
        })
        .collect();
    let n = labels.len();
    let switches = (0..n).filter(|&i| labels[i] != labels[(i + 1) % n]).count();
    switches <= 2
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Twist {
    pub gen: TwistGen,
    pub inverse: bool,
}

impl Twist {
    pub fn pos(gen: TwistGen) -> Self {
        Self { gen, inverse: false }
    }

    pub fn neg(gen: TwistGen) -> Self {
        Self { gen, inverse: true }
    }

    pub fn exponent(&self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn commutes(&self, other: &Twist) -> bool {
        disjoint(&self.gen, &other.gen)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistWord {
    pub page_holes: usize,
    pub letters: Vec<Twist>,
}

/// Shorthand for a generator from a hole list; panics on an empty list.
pub fn gen(holes: &[usize]) -> TwistGen {
    TwistGen::new(holes.iter().copied()).expect("nonempty hole list")
}

impl TwistWord {
    pub fn new(page_holes: usize, letters: Vec<Twist>) -> Result<Self, WordError> {
        for t in &letters {
            if t.gen.max_hole() > page_holes {
                return Err(WordError::HoleOutOfRange { hole: t.gen.max_hole(), k: page_holes });
            }
        }
        Ok(Self { page_holes, letters })
    }

    pub fn empty(page_holes: usize) -> Self {
        Self { page_holes, letters: Vec::new() }
    }

    /// Appends `gen` with exponent `e` (expanded).
    pub fn push(&mut self, gen: TwistGen, e: i64) {
        let t = Twist { gen, inverse: e < 0 };
        for _ in 0..e.unsigned_abs() {
            self.letters.push(t.clone());
        }
    }

    pub fn with(mut self, holes: &[usize], e: i64) -> Self {
        self.push(gen(holes), e);
        self
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Sum of exponents.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(Twist::exponent).sum()
    }

    /// Parses `D{1,2}^2 D{3}`, inferring the page from the largest hole.
    pub fn parse_any(s: &str) -> Result<Self, WordError> {
        let letters = parse_letters(s)?;
        let k = letters.iter().map(|t| t.gen.max_hole()).max().unwrap_or(0);
        Ok(Self { page_holes: k, letters })
    }

    pub fn parse(s: &str, page_holes: usize) -> Result<Self, WordError> {
        Self::new(page_holes, parse_letters(s)?)
    }

    pub fn on_page(mut self, page_holes: usize) -> Result<Self, WordError> {
        let w = Self::new(page_holes, std::mem::take(&mut self.letters))?;
        Ok(w)
    }
}

fn parse_letters(s: &str) -> Result<Vec<Twist>, WordError> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let err = |at: usize, msg: &str| WordError::Parse { at, msg: msg.to_string() };
    let skip_ws = |i: &mut usize| {
        while *i < b.len() && (b[*i] as char).is_whitespace() {
            *i += 1;
        }
    };
    let number = |i: &mut usize| -> Option<i64> {
        let start = *i;
        if *i < b.len() && (b[*i] == b'-' || b[*i] == b'+') {
            *i += 1;
        }
        while *i < b.len() && b[*i].is_ascii_digit() {
            *i += 1;
        }
        s[start..*i].parse().ok()
    };
    loop {
        skip_ws(&mut i);
        if i == b.len() {
            return Ok(out);
        }
        if b[i] != b'D' {
            return Err(err(i, "expected 'D'"));
        }
        i += 1;
        skip_ws(&mut i);
        let mut holes = Vec::new();
        if i < b.len() && b[i] == b'{' {
            i += 1;
            loop {
                skip_ws(&mut i);
                let h = number(&mut i).ok_or_else(|| err(i, "expected hole number"))?;
                if h < 1 {
                    return Err(err(i, "holes are numbered from 1"));
                }
                holes.push(h as usize);
                skip_ws(&mut i);
                match b.get(i) {
                    Some(b',') => i += 1,
                    Some(b'}') => {
                        i += 1;
                        break;
                    }
                    _ => return Err(err(i, "expected ',' or '}'")),
                }
            }
        } else {
            let h = number(&mut i).ok_or_else(|| err(i, "expected '{' or hole number"))?;
            if h < 1 {
                return Err(err(i, "holes are numbered from 1"));
            }
            holes.push(h as usize);
        }
        skip_ws(&mut i);
        let mut e = 1;
        if i < b.len() && b[i] == b'^' {
            i += 1;
            skip_ws(&mut i);
            e = number(&mut i).ok_or_else(|| err(i, "expected exponent"))?;
        }
        let g = TwistGen::new(holes).map_err(|_| err(i, "empty generator"))?;
        let t = Twist { gen: g, inverse: e < 0 };
        for _ in 0..e.unsigned_abs() {
            out.push(t.clone());
        }
    }
}

impl FromStr for TwistWord {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_any(s)
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let t = &self.letters[i];
            let mut j = i;
            while j < self.letters.len() && self.letters[j] == *t {
                j += 1;
            }
            let e = (j - i) as i64 * t.exponent();
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "{}", t.gen)?;
            if e != 1 {
                write!(f, "^{e}")?;
            }
            i = j;
        }
        Ok(())
    }
}

impl Serialize for TwistWord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TwistWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "1" {
            return Ok(TwistWord::empty(0));
        }
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Serialize for TwistGen {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TwistGen {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        TwistGen::new(v).map_err(serde::de::Error::custom)
    }
}

/// Entry j-1: exponent-weighted count of letters whose curve encloses hole j.
pub fn hole_degree(w: &TwistWord) -> Vec<i64> {
    let mut d = vec![0; w.page_holes];
    for t in &w.letters {
        for &h in t.gen.holes() {
            if h <= w.page_holes {
                d[h - 1] += t.exponent();
            }
        }
    }
    d
}

/// Exponent-weighted count of letters enclosing both holes of each pair.
pub fn pair_degree(w: &TwistWord) -> BTreeMap<(usize, usize), i64> {
    let mut d = BTreeMap::new();
    for a in 1..=w.page_holes {
        for b in a + 1..=w.page_holes {
            d.insert((a, b), 0);
        }
    }
    for t in &w.letters {
        let h = t.gen.holes();
        for (x, &a) in h.iter().enumerate() {
            for &b in &h[x + 1..] {
                *d.entry((a, b)).or_insert(0) += t.exponent();
            }
        }
    }
    d
}
