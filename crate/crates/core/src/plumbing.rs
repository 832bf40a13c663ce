//! Star-shaped plumbing graphs, Seifert invariants and the intersection form.
//!
//! Vertex order is fixed everywhere: center first, then each arm in input
//! order, walking outward from the center.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::snf;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlumbingError {
    #[error("arm is empty")]
    EmptyArm,
    #[error("arm weight {0} is above -2")]
    WeightTooLarge(i64),
    #[error("rational {0} is not below -1")]
    OutOfRange(String),
    #[error("continued fraction entry does not fit in i64")]
    Overflow,
}

/// A star-shaped plumbing tree: central weight e0 plus arms listed outward.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StarGraph {
    pub central_weight: i64,
    pub arms: Vec<Vec<i64>>,
}

impl StarGraph {
    /// Arms must be nonempty. Zero arms is allowed (a lone vertex).
    pub fn new(central_weight: i64, arms: Vec<Vec<i64>>) -> Result<Self, PlumbingError> {
        if arms.iter().any(|a| a.is_empty()) {
            return Err(PlumbingError::EmptyArm);
        }
        Ok(Self { central_weight, arms })
    }

    pub fn arm_count(&self) -> usize {
        self.arms.len()
    }

    pub fn vertex_count(&self) -> usize {
        1 + self.arms.iter().map(Vec::len).sum::<usize>()
    }

    /// Weights in the global vertex order.
    pub fn weights(&self) -> Vec<i64> {
        let mut w = vec![self.central_weight];
        for arm in &self.arms {
            w.extend_from_slice(arm);
        }
        w
    }

    /// Edges (parent, child) in the global vertex order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        star_edges(self.arms.iter().map(Vec::len))
    }

    pub fn is_dually_positive(&self) -> bool {
        let k = self.arms.len() as i64;
        self.central_weight < -k && self.arms.iter().flatten().all(|&b| b <= -2)
    }

    pub fn intersection_matrix(&self) -> IntegerSymmetricMatrix {
        let w = self.weights();
        let n = w.len();
        let mut entries = vec![vec![0i64; n]; n];
        for (i, &wi) in w.iter().enumerate() {
            entries[i][i] = wi;
        }
        for (a, b) in self.edges() {
            entries[a][b] = 1;
            entries[b][a] = 1;
        }
        IntegerSymmetricMatrix { dimension: n, entries }
    }

    /// H_1 of the boundary, read as the cokernel of the intersection form.
    pub fn homology_of_boundary(&self) -> AbelianGroupInvariants {
        self.intersection_matrix().cokernel()
    }

    pub fn permute_arms(&self, perm: &[usize]) -> StarGraph {
        StarGraph {
            central_weight: self.central_weight,
            arms: perm.iter().map(|&i| self.arms[i].clone()).collect(),
        }
    }
}

impl fmt::Display for StarGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};", self.central_weight)?;
        for (i, arm) in self.arms.iter().enumerate() {
            let parts: Vec<String> = arm.iter().map(|b| b.to_string()).collect();
            write!(f, "{}[{}]", if i == 0 { " " } else { ", " }, parts.join(","))?;
        }
        write!(f, ")")
    }
}

/// Parent/child edges of a star with the given arm lengths.
pub fn star_edges(arm_lengths: impl IntoIterator<Item = usize>) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut next = 1;
    for len in arm_lengths {
        let mut parent = 0;
        for _ in 0..len {
            edges.push((parent, next));
            parent = next;
            next += 1;
        }
    }
    edges
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SeifertData {
    pub e0: i64,
    pub coefficients: Vec<BigRational>,
}

impl SeifertData {
    pub fn new(e0: i64, coefficients: Vec<BigRational>) -> Result<Self, PlumbingError> {
        let minus_one = -BigRational::one();
        for r in &coefficients {
            if *r >= minus_one {
                return Err(PlumbingError::OutOfRange(r.to_string()));
            }
        }
        Ok(Self { e0, coefficients })
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rs: Vec<String> = self.coefficients.iter().map(|r| r.to_string()).collect();
        write!(f, "Y({}; {})", self.e0, rs.join(", "))
    }
}

impl Serialize for SeifertData {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            e0: i64,
            r: Vec<String>,
        }
        Repr { e0: self.e0, r: self.coefficients.iter().map(|r| r.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeifertData {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            e0: i64,
            r: Vec<String>,
        }
        let repr = Repr::deserialize(d)?;
        let coefficients = repr
            .r
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        SeifertData::new(repr.e0, coefficients).map_err(serde::de::Error::custom)
    }
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| format!("bad numerator in {s:?}"))?;
    let q: BigInt = den.parse().map_err(|_| format!("bad denominator in {s:?}"))?;
    if q.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(p, q))
}

/// b_1 - 1/(b_2 - 1/(... - 1/b_n)).
pub fn arm_to_rational(arm: &[i64]) -> Result<BigRational, PlumbingError> {
    let (&last, rest) = arm.split_last().ok_or(PlumbingError::EmptyArm)?;
    if let Some(&b) = arm.iter().find(|&&b| b > -2) {
        return Err(PlumbingError::WeightTooLarge(b));
    }
    let mut r = BigRational::from_integer(last.into());
    for &b in rest.iter().rev() {
        r = BigRational::from_integer(b.into()) - r.recip();
    }
    Ok(r)
}

/// Inverse of `arm_to_rational`: the unique expansion with every entry <= -2.
pub fn rational_to_arm(r: &BigRational) -> Result<Vec<i64>, PlumbingError> {
    if *r >= -BigRational::one() {
        return Err(PlumbingError::OutOfRange(r.to_string()));
    }
    // x = -r > 1; entry -ceil(x), then continue with 1/(ceil(x) - x).
    let mut x = -r.clone();
    let mut arm = Vec::new();
    loop {
        let a = x.ceil();
        arm.push(-a.to_integer().to_i64().ok_or(PlumbingError::Overflow)?);
        let rem = &a - &x;
        if rem.is_zero() {
            return Ok(arm);
        }
        x = rem.recip();
    }
}

pub fn graph_from_seifert(data: &SeifertData) -> Result<StarGraph, PlumbingError> {
    let arms = data.coefficients.iter().map(rational_to_arm).collect::<Result<Vec<_>, _>>()?;
    StarGraph::new(data.e0, arms)
}

pub fn seifert_from_graph(g: &StarGraph) -> Result<SeifertData, PlumbingError> {
    let coefficients = g.arms.iter().map(|a| arm_to_rational(a)).collect::<Result<Vec<_>, _>>()?;
    SeifertData::new(g.central_weight, coefficients)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegerSymmetricMatrix {
    pub dimension: usize,
    pub entries: Vec<Vec<i64>>,
}

impl IntegerSymmetricMatrix {
    pub fn is_symmetric(&self) -> bool {
        (0..self.dimension).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn to_big(&self) -> Vec<Vec<BigInt>> {
        self.entries.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    pub fn determinant(&self) -> BigInt {
        snf::determinant(&self.to_big())
    }

    pub fn cokernel(&self) -> AbelianGroupInvariants {
        let diag = snf::smith_diagonal(&self.to_big());
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        AbelianGroupInvariants {
            free_rank: self.dimension - nonzero,
            torsion_factors: diag
                .into_iter()
                .filter(|d| !d.is_zero() && !d.abs().is_one())
                .map(|d| d.abs())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianGroupInvariants {
    pub free_rank: usize,
    pub torsion_factors: Vec<BigInt>,
}

impl AbelianGroupInvariants {
    pub fn torsion_order(&self) -> BigInt {
        self.torsion_factors.iter().product()
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for t in &self.torsion_factors {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl Serialize for AbelianGroupInvariants {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            free_rank: usize,
            torsion_factors: Vec<String>,
        }
        Repr {
            free_rank: self.free_rank,
            torsion_factors: self.torsion_factors.iter().map(|t| t.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AbelianGroupInvariants {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            free_rank: usize,
            torsion_factors: Vec<String>,
        }
        let repr = Repr::deserialize(d)?;
        let torsion_factors = repr
            .torsion_factors
            .iter()
            .map(|t| t.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<_, _>>()?;
        Ok(Self { free_rank: repr.free_rank, torsion_factors })
    }
}
