//! Lowest-order Alexander–Conway coefficients from linking data.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::hypergraph::SimpleGraph;
use crate::orient::Sign;
use crate::pfaffian::{determinant_integer, Matrix};
use crate::ring::{AntisymAssignment, Generator, Ring};
use crate::treepoly::complete_poly;

/// Pairwise linking numbers `ℓ_ij = ℓ_ji` of an `m`-component link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingMatrix {
    m: usize,
    values: BTreeMap<(usize, usize), BigInt>,
}

impl LinkingMatrix {
    pub fn new(m: usize) -> Self {
        LinkingMatrix { m, values: BTreeMap::new() }
    }

    pub fn components(&self) -> usize {
        self.m
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) -> Result<()> {
        for x in [i, j] {
            if x == 0 || x > self.m {
                return Err(Error::IndexOutOfRange { index: x, size: self.m });
            }
        }
        if i == j {
            return Err(Error::Precondition(format!("linking number ℓ_{i}{i} is undefined")));
        }
        self.values.insert((i.min(j), i.max(j)), v);
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        self.values.get(&(i.min(j), i.max(j))).cloned().unwrap_or_default()
    }

    /// `λ_ij = −ℓ_ij` off the diagonal, `λ_ii = Σ_k ℓ_ik`.
    pub fn laplacian(&self) -> Matrix<BigInt> {
        let m = self.m;
        Matrix::from_fn(m, m, |i, j| {
            if i == j {
                (1..=m).filter(|&k| k != i + 1).map(|k| self.get(i + 1, k)).sum()
            } else {
                -self.get(i + 1, j + 1)
            }
        })
    }
}

/// Milnor triple linking numbers `μ_ijk`, antisymmetric in the indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkData {
    m: usize,
    mu: BTreeMap<Generator, BigInt>,
}

impl LinkData {
    pub fn new(m: usize) -> Self {
        LinkData { m, mu: BTreeMap::new() }
    }

    pub fn components(&self) -> usize {
        self.m
    }

    /// Sets `μ_ijk` for any index order.
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: BigInt) -> Result<()> {
        for x in [i, j, k] {
            if x == 0 || x > self.m {
                return Err(Error::IndexOutOfRange { index: x, size: self.m });
            }
        }
        let (g, s) = Generator::normalize(i, j, k)
            .ok_or_else(|| Error::Precondition(format!("μ_{i}{j}{k} has a repeated index")))?;
        self.mu.insert(g, if s.is_plus() { v } else { -v });
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> BigInt {
        match Generator::normalize(i, j, k) {
            Some((g, s)) => {
                let v = self.mu.get(&g).cloned().unwrap_or_default();
                if s == Sign::Plus {
                    v
                } else {
                    -v
                }
            }
            None => BigInt::from(0),
        }
    }

    /// `λ_ij = Σ_k μ_ijk`.
    pub fn lambda(&self) -> Matrix<BigInt> {
        let m = self.m;
        Matrix::from_fn(m, m, |i, j| (1..=m).map(|k| self.get(i + 1, j + 1, k)).sum())
    }

    pub fn assignment(&self) -> Result<AntisymAssignment> {
        let mut a = AntisymAssignment::new();
        for i in 1..=self.m {
            for j in i + 1..=self.m {
                for k in j + 1..=self.m {
                    a.set(i, j, k, BigRational::from_integer(self.get(i, j, k)))?;
                }
            }
        }
        Ok(a)
    }
}

/// `c_{m−1} = det Λ^(p)`, checked against the sum over spanning trees of `K_m`.
pub fn conway_cm1(lk: &LinkingMatrix) -> Result<BigInt> {
    let m = lk.components();
    if m == 0 {
        return Err(Error::Precondition("a link has at least one component".into()));
    }
    let lap = lk.laplacian();
    let det = determinant_integer(&lap.principal_minor(&[0])?)?;
    let k = SimpleGraph::complete(m)?;
    let tree_sum: BigInt = k
        .spanning_trees()
        .iter()
        .map(|t| {
            t.iter()
                .map(|&i| {
                    let [a, b] = k.edges()[i];
                    lk.get(a, b)
                })
                .product::<BigInt>()
        })
        .sum();
    if det != tree_sum {
        return Err(Error::Inconsistent(format!(
            "determinant {det} differs from tree sum {tree_sum}"
        )));
    }
    Ok(det)
}

/// `c_{2m−2}` together with the tree generating function value `P_m(μ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitLinkCoefficient {
    pub pm: BigInt,
    pub value: BigInt,
}

/// `c_{2m−2} = P_m(μ)²`, checked against `det Λ^(p)(μ)` for every pivot `p`.
pub fn conway_c2m2(link: &LinkData) -> Result<SplitLinkCoefficient> {
    let m = link.components();
    if m == 0 {
        return Err(Error::Precondition("a link has at least one component".into()));
    }
    let pm = complete_poly(m)?.evaluate(&link.assignment()?)?;
    if !pm.is_integer() {
        return Err(Error::Inconsistent(format!("P_m(μ) = {pm} is not an integer")));
    }
    let pm = pm.to_integer();
    let value = &pm * &pm;
    let lambda = link.lambda();
    for p in 0..m {
        let det = determinant_integer(&lambda.principal_minor(&[p])?)?;
        if det != value {
            return Err(Error::Inconsistent(format!(
                "det Λ^({}) = {det} but P_m(μ)² = {value}",
                p + 1
            )));
        }
    }
    debug_assert!(!Ring::is_zero(&value) || Ring::is_zero(&pm));
    Ok(SplitLinkCoefficient { pm, value })
}
