//! The matrix Λ(G), the Pfaffian-tree polynomial, the tree generating
//! function, and the classical Kirchhoff polynomial.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::{SimpleGraph, ThreeGraph};
use crate::orient::{epsilon, tree_monomial, OrientationClass, Sign};
use crate::pfaffian::{determinant, pf_row_development, Matrix, SkewMatrix};
use crate::ring::{AntisymPoly, CommPoly, Generator, Ring};

/// Λ(G): `λ_ij` sums the generators `y_ijk` of the edges through `i` and `j`,
/// with `k` the third vertex. Generator names come from the graph's labels.
pub fn lambda_matrix(g: &ThreeGraph) -> SkewMatrix<AntisymPoly> {
    let m = g.vertex_count();
    let mut upper: HashMap<(usize, usize), AntisymPoly> = HashMap::new();
    for (idx, e) in g.edges().iter().enumerate() {
        let lab = g.generator_labels(idx);
        for (a, b, c) in [(0, 1, 2), (0, 2, 1), (1, 2, 0)] {
            let y = AntisymPoly::y(lab[a], lab[b], lab[c]);
            let entry = upper.entry((e[a] - 1, e[b] - 1)).or_default();
            *entry = &*entry + &y;
        }
    }
    SkewMatrix::from_upper(m, |i, j| upper.remove(&(i, j)).unwrap_or_default())
}

fn check_pivot(pivot: usize, m: usize) -> Result<()> {
    if pivot == 0 || pivot > m {
        return Err(Error::InvalidPivot { pivot, m });
    }
    Ok(())
}

/// `P_G = (-1)^(p-1) Pf(Λ(G)^(p))` for a 1-based pivot `p`; zero for even `m`.
pub fn pfaffian_tree_poly(g: &ThreeGraph, pivot: usize) -> Result<AntisymPoly> {
    let m = g.vertex_count();
    check_pivot(pivot, m)?;
    if m.is_multiple_of(2) {
        return Ok(AntisymPoly::zero_poly());
    }
    let minor = lambda_matrix(g).principal_minor(&[pivot - 1])?;
    let pf = pf_row_development(&minor)?;
    Ok(if pivot % 2 == 1 { pf } else { -pf })
}

/// `P_m = P_{Γ_m}`, cached per `m`.
pub fn complete_poly(m: usize) -> Result<Arc<AntisymPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<AntisymPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache poisoned").get(&m) {
        return Ok(p.clone());
    }
    let p = Arc::new(pfaffian_tree_poly(&ThreeGraph::complete(m)?, 1)?);
    cache.lock().expect("cache poisoned").insert(m, p.clone());
    Ok(p)
}

/// `P(G, o) = Σ_T y(T, o)` over spanning trees `T`.
pub fn tree_generating_function(g: &ThreeGraph, o: &OrientationClass) -> Result<AntisymPoly> {
    let m = g.vertex_count();
    if o.label_set() != (1..=m).collect::<Vec<_>>() {
        return Err(Error::LabelSetMismatch);
    }
    g.spanning_trees()
        .par_iter()
        .map(|t| tree_monomial(&g.spanning_subgraph(t)?, o))
        .try_reduce(AntisymPoly::zero_poly, |a, b| Ok(&a + &b))
}

/// Σ ε((i_1j_1k_1),…,(i_dj_dk_d)) ∏ y over sets of `d = (m-1)/2` distinct edges of Γ_m.
pub fn epsilon_sum_complete(m: usize) -> Result<AntisymPoly> {
    if m.is_multiple_of(2) {
        return Err(Error::EvenVertexCount(m));
    }
    let d = (m - 1) / 2;
    let edges = ThreeGraph::complete(m)?.edges().to_vec();
    if d == 0 {
        return Ok(AntisymPoly::one_poly());
    }
    fn rec(
        edges: &[[usize; 3]],
        m: usize,
        start: usize,
        d: usize,
        chosen: &mut Vec<[usize; 3]>,
        acc: &mut AntisymPoly,
    ) -> Result<()> {
        if chosen.len() == d {
            let e = epsilon(chosen, m)?;
            if e != 0 {
                let gens = chosen
                    .iter()
                    .map(|t| Generator::new(t[0], t[1], t[2]))
                    .collect::<Result<Vec<_>>>()?;
                *acc = &*acc + &AntisymPoly::signed_monomial(Sign::from_parity(e < 0), gens);
            }
            return Ok(());
        }
        for i in start..edges.len() {
            chosen.push(edges[i]);
            rec(edges, m, i + 1, d, chosen, acc)?;
            chosen.pop();
        }
        Ok(())
    }
    let result = (0..edges.len())
        .into_par_iter()
        .map(|first| {
            let mut acc = AntisymPoly::zero_poly();
            let mut chosen = vec![edges[first]];
            rec(&edges, m, first + 1, d, &mut chosen, &mut acc)?;
            Ok(acc)
        })
        .try_reduce(AntisymPoly::zero_poly, |a, b| Ok(&a + &b))?;
    debug_assert!(m != 5 || epsilon_tuple_sum(m)? == result);
    Ok(result)
}

/// `1/(6^d d!) Σ ε ∏ y` over all `3d`-tuples of indices.
pub fn epsilon_tuple_sum(m: usize) -> Result<AntisymPoly> {
    if m.is_multiple_of(2) {
        return Err(Error::EvenVertexCount(m));
    }
    let d = (m - 1) / 2;
    let len = 3 * d;
    let mut total = AntisymPoly::zero_poly();
    let mut idx = vec![1usize; len];
    loop {
        let triples: Vec<[usize; 3]> = idx.chunks(3).map(|c| [c[0], c[1], c[2]]).collect();
        let distinct = triples.iter().all(|t| t[0] != t[1] && t[1] != t[2] && t[0] != t[2]);
        if distinct {
            let e = epsilon(&triples, m)?;
            if e != 0 {
                let mut term = AntisymPoly::constant(e.into());
                for t in &triples {
                    term = &term * &AntisymPoly::y(t[0], t[1], t[2]);
                }
                total = &total + &term;
            }
        }
        let mut pos = 0;
        while pos < len && idx[pos] == m {
            idx[pos] = 1;
            pos += 1;
        }
        if pos == len {
            break;
        }
        idx[pos] += 1;
    }
    let denom: u64 = 6u64.pow(d as u32) * (1..=d as u64).product::<u64>();
    let mut out = AntisymPoly::zero_poly();
    for (mono, c) in total.terms() {
        let (q, r) = (c / denom, c % denom);
        if r != 0.into() {
            return Err(Error::Inconsistent(format!("coefficient {c} not divisible by {denom}")));
        }
        out = &out + &AntisymPoly::from_terms([(mono.clone(), q)]);
    }
    Ok(out)
}

/// The Laplacian of `g` with variable `x_e` (1-based edge index) on edge `e`.
pub fn kirchhoff_matrix(g: &SimpleGraph) -> Matrix<CommPoly> {
    let m = g.vertex_count();
    let mut l: Matrix<CommPoly> = Matrix::zeros(m, m);
    for (idx, e) in g.edges().iter().enumerate() {
        let x = CommPoly::var(idx + 1);
        let (a, b) = (e[0] - 1, e[1] - 1);
        l.set(a, a, l.get(a, a).add(&x));
        l.set(b, b, l.get(b, b).add(&x));
        l.set(a, b, l.get(a, b).sub(&x));
        l.set(b, a, l.get(b, a).sub(&x));
    }
    l
}

/// `det Λ^(p)` of the Laplacian, i.e. `Σ_T x_T`.
pub fn kirchhoff_poly(g: &SimpleGraph, pivot: usize) -> Result<CommPoly> {
    check_pivot(pivot, g.vertex_count())?;
    determinant(&kirchhoff_matrix(g).principal_minor(&[pivot - 1])?)
}
