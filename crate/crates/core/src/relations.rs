//! Identities satisfied by the Pfaffian-tree polynomial: contraction-deletion,
//! the three-term and four-term relations, and the recursive computation of
//! `P_m²` from second derivatives.
//!
//! Slot polynomials are substituted with [`AntisymPoly::slot_substitute`]; a
//! relation written over vertices `v_2, …, v_{m+2}` is evaluated directly in
//! that vertex universe.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hypergraph::ThreeGraph;
use crate::orient::{sorting_sign, tree_monomial, OrientationClass, Sign};
use crate::ring::{AntisymPoly, Generator, Monomial, SlotMap};
use crate::treepoly::{complete_poly, tree_generating_function};

fn require_odd(m: usize) -> Result<()> {
    if m.is_multiple_of(2) {
        Err(Error::EvenVertexCount(m))
    } else {
        Ok(())
    }
}

/// The orientation `o/o_ẽ` of `G/e`.
///
/// `edge` is the cyclic order of the contracted edge and `relabel[v - 1]` the
/// new label of old vertex `v` (the edge's vertices all map to one label).
pub fn induced_orientation(
    o: &OrientationClass,
    edge: [usize; 3],
    relabel: &[usize],
) -> Result<OrientationClass> {
    let mut sorted = edge;
    sorted.sort_unstable();
    if sorted[0] == sorted[1] || sorted[1] == sorted[2] {
        return Err(Error::InvalidCycle(edge.to_vec()));
    }
    let labels = o.label_set();
    if !edge.iter().all(|v| labels.contains(v)) {
        return Err(Error::LabelSetMismatch);
    }
    let merged = relabel
        .get(edge[0] - 1)
        .copied()
        .ok_or(Error::IndexOutOfRange { index: edge[0], size: relabel.len() })?;
    let rest: Vec<usize> = labels.iter().copied().filter(|v| !edge.contains(v)).collect();
    let mut spliced = edge.to_vec();
    spliced.extend_from_slice(&rest);
    let s = o.sign_relative_to(&OrientationClass::new(spliced)?)?;
    let mut order = vec![merged];
    for v in rest {
        order.push(
            *relabel
                .get(v - 1)
                .ok_or(Error::IndexOutOfRange { index: v, size: relabel.len() })?,
        );
    }
    OrientationClass::with_sign(s, order)
}

/// Checks `P(G,o) = y_ẽ P(G/e, o/o_ẽ) + P(G−e, o)` for edge index `edge`
/// oriented by the cyclic order `oriented`.
pub fn contraction_deletion_check(
    g: &ThreeGraph,
    o: &OrientationClass,
    edge: usize,
    oriented: [usize; 3],
) -> Result<bool> {
    let e = *g.edges().get(edge).ok_or(Error::EdgeIndex { index: edge, len: g.edge_count() })?;
    let mut sorted = oriented;
    sorted.sort_unstable();
    if sorted != e {
        return Err(Error::InvalidCycle(oriented.to_vec()));
    }
    let lab = g.generator_labels(edge);
    let name = |v: usize| lab[e.iter().position(|&x| x == v).expect("vertex of edge")];
    let y_e = AntisymPoly::y(name(oriented[0]), name(oriented[1]), name(oriented[2]));
    let c = g.contract(edge)?;
    let o_c = induced_orientation(o, oriented, &c.relabel)?;
    let lhs = tree_generating_function(g, o)?;
    let contracted = tree_generating_function(&c.graph, &o_c)?;
    let deleted = tree_generating_function(&g.delete(edge)?, o)?;
    Ok(lhs == &(&y_e * &contracted) + &deleted)
}

/// Checks `P_m = s·y_abc·P_{m−2}(v_a+v_b+v_c, rest…) + [P_m]_{y_abc=0}`, where
/// `s` compares the canonical order with `(a, b, c, rest…)`.
pub fn complete_recursion_check(m: usize, oriented: [usize; 3]) -> Result<bool> {
    require_odd(m)?;
    if m < 3 {
        return Err(Error::Precondition("needs at least 3 vertices".into()));
    }
    let [a, b, c] = oriented;
    let (g, _) = Generator::normalize(a, b, c).ok_or(Error::InvalidCycle(oriented.to_vec()))?;
    if g.indices()[2] > m {
        return Err(Error::InvalidCycle(oriented.to_vec()));
    }
    let rest: Vec<usize> = (1..=m).filter(|v| !oriented.contains(v)).collect();
    let mut order = oriented.to_vec();
    order.extend_from_slice(&rest);
    let s = sorting_sign(&order);
    let mut slots: SlotMap = BTreeMap::new();
    slots.insert(1, oriented.to_vec());
    for (k, &v) in rest.iter().enumerate() {
        slots.insert(k + 2, vec![v]);
    }
    let p = complete_poly(m)?;
    let inner = complete_poly(m - 2)?.slot_substitute(&slots)?;
    let mut head = &AntisymPoly::y(a, b, c) * &inner;
    if !s.is_plus() {
        head = -head;
    }
    Ok(*p == &head + &p.set_generator_zero(&g))
}

/// Slot `k` goes to the template vertices `head[k-1]`, or to `k + 2` past the
/// head; template vertex `t` is then renamed `tau[t - 1]`.
fn template_slots(n: usize, head: &[&[usize]], tau: &[usize]) -> SlotMap {
    (1..=n)
        .map(|k| {
            let targets = match head.get(k - 1) {
                Some(t) => t.to_vec(),
                None => vec![k + 2],
            };
            (k, targets.into_iter().map(|t| tau[t - 1]).collect())
        })
        .collect()
}

/// Checks `P_m(v_2+v_3, v_4, …) + P_m(v_3+v_4, v_2, …) + P_m(v_2+v_4, v_3, …) = 0`
/// over the vertices `2..=m+2`.
pub fn three_term_check(m: usize) -> Result<bool> {
    require_odd(m)?;
    if m < 3 {
        return Err(Error::Precondition("the three-term relation needs m >= 3".into()));
    }
    let p = complete_poly(m)?;
    let id: Vec<usize> = (1..=m + 2).collect();
    let mut sum = AntisymPoly::zero_poly();
    for head in [[&[2, 3][..], &[4]], [&[3, 4], &[2]], [&[2, 4], &[3]]] {
        sum = &sum + &p.slot_substitute(&template_slots(m, &head, &id))?;
    }
    Ok(sum.is_zero_poly())
}

fn four_distinct(m: usize, v: [usize; 4]) -> Result<()> {
    let mut s = v;
    s.sort_unstable();
    if s[0] == 0 || s[3] > m || s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition(format!(
            "{v:?} are not four distinct vertices of 1..={m}"
        )));
    }
    Ok(())
}

/// Derivative along `Σ sign·Y_abc`, with `Y_abc` the coordinate direction of
/// the ordered generator `y_abc`.
pub fn directional_derivative(p: &AntisymPoly, direction: &[(Sign, [usize; 3])]) -> AntisymPoly {
    direction.iter().fold(AntisymPoly::zero_poly(), |acc, (s, [a, b, c])| {
        let d = p.partial_derivative_ordered(*a, *b, *c);
        if s.is_plus() {
            &acc + &d
        } else {
            &acc - &d
        }
    })
}

/// Checks `∂P/∂y_ijk − ∂P/∂y_ijl = ∂P/∂y_jkl − ∂P/∂y_ikl`, and that both sides
/// equal `±P_{m−2}(v_i+v_j, v_k+v_l, rest…)`.
pub fn four_term_check(m: usize, v: [usize; 4]) -> Result<bool> {
    require_odd(m)?;
    four_distinct(m, v)?;
    let [i, j, k, l] = v;
    let p = complete_poly(m)?;
    let d = |a, b, c| p.partial_derivative_ordered(a, b, c);
    let lhs = &d(i, j, k) - &d(i, j, l);
    let rhs = &d(j, k, l) - &d(i, k, l);
    let mut tau = v.to_vec();
    tau.extend((1..=m).filter(|x| !v.contains(x)));
    let slots = template_slots(m - 2, &[&[1, 2], &[3, 4]], &tau);
    let mut expected = complete_poly(m - 2)?.slot_substitute(&slots)?;
    if !sorting_sign(&tau).is_plus() {
        expected = -expected;
    }
    Ok(lhs == rhs && lhs == expected)
}

/// The derivative of `P_m` along `(Y_ijk − Y_ijl) − (Y_jkl − Y_ikl)` vanishes.
pub fn w0_directional_derivative_check(m: usize, v: [usize; 4]) -> Result<bool> {
    require_odd(m)?;
    four_distinct(m, v)?;
    let [i, j, k, l] = v;
    let dir = [
        (Sign::Plus, [i, j, k]),
        (Sign::Minus, [i, j, l]),
        (Sign::Minus, [j, k, l]),
        (Sign::Plus, [i, k, l]),
    ];
    Ok(directional_derivative(&*complete_poly(m)?, &dir).is_zero_poly())
}

/// `P_m²`, cached per `m`.
pub fn complete_square(m: usize) -> Result<Arc<AntisymPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<AntisymPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache poisoned").get(&m) {
        return Ok(p.clone());
    }
    let p = complete_poly(m)?;
    let sq = Arc::new(&*p * &*p);
    cache.lock().expect("cache poisoned").insert(m, sq.clone());
    Ok(sq)
}

/// How two generators through a common vertex meet.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairPattern {
    /// `g1 = g2`
    Equal,
    /// `g1` and `g2` share two vertices
    ShareTwo,
    /// `g1` and `g2` share only the pivot vertex
    ShareOne,
}

struct Template {
    pattern: PairPattern,
    tau: Vec<usize>,
    sign: Sign,
}

fn others(g: &Generator, p: usize) -> Vec<usize> {
    g.indices().into_iter().filter(|&v| v != p).collect()
}

fn classify(m: usize, p: usize, g1: &Generator, g2: &Generator) -> Result<Template> {
    if !g1.contains(p) || !g2.contains(p) {
        return Err(Error::Precondition(format!("{g1} and {g2} must both contain vertex {p}")));
    }
    if g1.indices()[2] > m || g2.indices()[2] > m {
        return Err(Error::IndexOutOfRange { index: g1.indices()[2].max(g2.indices()[2]), size: m });
    }
    let (o1, o2) = (others(g1, p), others(g2, p));
    let shared: Vec<usize> = o1.iter().copied().filter(|v| o2.contains(v)).collect();
    let (pattern, head, second) = match shared.len() {
        2 => (PairPattern::Equal, vec![p, o1[0], o1[1]], None),
        1 => {
            let a = shared[0];
            let b = o1.iter().copied().find(|&v| v != a).expect("two others");
            let c = o2.iter().copied().find(|&v| v != a).expect("two others");
            (PairPattern::ShareTwo, vec![p, a, b, c], Some([p, a, c]))
        }
        _ => (
            PairPattern::ShareOne,
            vec![p, o1[0], o1[1], o2[0], o2[1]],
            Some([p, o2[0], o2[1]]),
        ),
    };
    let mut tau = head.clone();
    tau.extend((1..=m).filter(|v| !head.contains(v)));
    let s1 = Generator::normalize(head[0], head[1], head[2]).expect("distinct").1;
    let s2 = match second {
        Some([a, b, c]) => Generator::normalize(a, b, c).expect("distinct").1,
        None => s1,
    };
    Ok(Template { pattern, tau, sign: s1 * s2 })
}

/// Right-hand side of the corollary relations for
/// `[∂²P_m²/∂g1∂g2]_{v_p=0}`, built from `inner = P_{m−2}²`.
pub fn square_second_partial_rhs(
    m: usize,
    p: usize,
    g1: &Generator,
    g2: &Generator,
    inner: &AntisymPoly,
) -> Result<AntisymPoly> {
    require_odd(m)?;
    let t = classify(m, p, g1, g2)?;
    let n = m - 2;
    let sub = |head: &[&[usize]]| inner.slot_substitute(&template_slots(n, head, &t.tau));
    let rhs = match t.pattern {
        PairPattern::Equal => sub(&[&[2, 3]])?.scalar_mul(&BigInt::from(2)),
        PairPattern::ShareTwo => {
            let a = sub(&[&[2, 3], &[4]])?;
            let b = sub(&[&[2, 4], &[3]])?;
            let c = sub(&[&[3, 4], &[2]])?;
            &(&a + &b) - &c
        }
        PairPattern::ShareOne => {
            let a = sub(&[&[3, 4], &[2], &[5]])?;
            let b = sub(&[&[2, 5], &[3], &[4]])?;
            let c = sub(&[&[2, 4], &[3], &[5]])?;
            let d = sub(&[&[3, 5], &[2], &[4]])?;
            &(&(&a + &b) - &c) - &d
        }
    };
    Ok(if t.sign.is_plus() { rhs } else { -rhs })
}

/// `[∂²P_m²/∂g1∂g2]_{v_p=0}`, computed from `P_m²` directly and from the
/// corollary relations; the two routes must agree.
pub fn square_second_partial(
    m: usize,
    p: usize,
    g1: &Generator,
    g2: &Generator,
) -> Result<AntisymPoly> {
    require_odd(m)?;
    if m < 3 {
        return Err(Error::Precondition("needs m >= 3".into()));
    }
    let corollary = square_second_partial_rhs(m, p, g1, g2, &*complete_square(m - 2)?)?;
    let direct = complete_square(m)?
        .partial_derivative(g1)
        .partial_derivative(g2)
        .restrict_zero_vertex(p);
    if direct != corollary {
        return Err(Error::Inconsistent(format!(
            "second derivative along {g1}, {g2} at v_{p} = 0 disagrees with the corollary"
        )));
    }
    Ok(direct)
}

/// The smallest vertex occurring exactly twice among the indices of `mono`.
///
/// Requires degree between `(m−1)/2` and `m−1` and indices in `1..=m`.
pub fn twice_vertex(mono: &Monomial, m: usize) -> Result<Option<usize>> {
    let d = mono.degree();
    if m == 0 || d < (m - 1) / 2 || d > m - 1 {
        return Err(Error::Precondition(format!(
            "degree {d} outside [{}, {}]",
            m.saturating_sub(1) / 2,
            m.saturating_sub(1)
        )));
    }
    let counts = mono.index_counts();
    if let Some((&v, _)) = counts.iter().next_back() {
        if v > m {
            return Err(Error::IndexOutOfRange { index: v, size: m });
        }
    }
    Ok(counts.into_iter().find(|&(_, c)| c == 2).map(|(v, _)| v))
}

/// `P_m²` from `P_1 = 1` through the corollary relations, without forming `P_m`.
pub fn square_recursive(m: usize) -> Result<Arc<AntisymPoly>> {
    require_odd(m)?;
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<AntisymPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache poisoned").get(&m) {
        return Ok(p.clone());
    }
    let result = if m == 1 {
        AntisymPoly::one_poly()
    } else {
        let inner = square_recursive(m - 2)?;
        let mut jobs = Vec::new();
        for p in 1..=m {
            let gens: Vec<Generator> = ThreeGraph::complete(m)?
                .edges()
                .iter()
                .filter(|e| e.contains(&p))
                .map(|e| Generator::new(e[0], e[1], e[2]))
                .collect::<Result<_>>()?;
            for (a, g1) in gens.iter().enumerate() {
                for g2 in &gens[a..] {
                    jobs.push((p, *g1, *g2));
                }
            }
        }
        // monomial -> (pivot, coefficient) for every pivot that produced it
        let found: Vec<(Monomial, usize, BigInt)> = jobs
            .par_iter()
            .map(|&(p, g1, g2)| {
                let rhs = square_second_partial_rhs(m, p, &g1, &g2, &inner)?;
                let pair = Monomial::new(vec![g1, g2]);
                let mut out = Vec::new();
                for (n, c) in rhs.terms() {
                    let mono = pair.mul(n);
                    let c = if g1 == g2 { c / 2 } else { c.clone() };
                    out.push((mono, p, c));
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        let mut by_mono: BTreeMap<Monomial, Vec<(usize, BigInt)>> = BTreeMap::new();
        for (mono, p, c) in found {
            by_mono.entry(mono).or_default().push((p, c));
        }
        let mut terms = Vec::new();
        for (mono, entries) in by_mono {
            let counts = mono.index_counts();
            let Some(p) = twice_vertex(&mono, m)? else { continue };
            let Some((_, c)) = entries.iter().find(|(q, _)| *q == p) else { continue };
            debug_assert!(
                counts.iter().filter(|(_, &n)| n == 2).all(|(q, _)| {
                    entries.iter().any(|(r, d)| r == q && d == c)
                }),
                "pivots disagree on the coefficient of {mono}"
            );
            terms.push((mono, c.clone()));
        }
        AntisymPoly::from_terms(terms)
    };
    let result = Arc::new(result);
    cache.lock().expect("cache poisoned").insert(m, result.clone());
    Ok(result)
}

/// Signed count of ordered decompositions of `G_M` into two spanning trees,
/// divided by `2^d` for the `d` generators of multiplicity two.
pub fn square_coefficient_oracle(mono: &Monomial) -> Result<BigInt> {
    let m = mono.degree() + 1;
    if m.is_multiple_of(2) {
        return Ok(BigInt::from(0));
    }
    let edges: Vec<[usize; 3]> = mono.generators().iter().map(Generator::indices).collect();
    if edges.iter().any(|e| e[2] > m) {
        return Ok(BigInt::from(0));
    }
    let g = ThreeGraph::new(m, edges)?;
    let o = OrientationClass::canonical(m);
    let half = (m - 1) / 2;
    let all: Vec<usize> = (0..g.edge_count()).collect();
    let tree_sign = |idx: &[usize]| -> Result<Option<BigInt>> {
        let t = g.spanning_subgraph(idx)?;
        if !t.is_tree() {
            return Ok(None);
        }
        let y = tree_monomial(&t, &o)?;
        let sign = y.terms().next().map(|(_, c)| c.clone());
        Ok(sign)
    };
    let mut total = BigInt::from(0);
    let mut chosen = Vec::with_capacity(half);
    fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> Result<()>) -> Result<()> {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..n {
            cur.push(i);
            subsets(n, k, i + 1, cur, f)?;
            cur.pop();
        }
        Ok(())
    }
    subsets(all.len(), half, 0, &mut chosen, &mut |s| {
        let rest: Vec<usize> = all.iter().copied().filter(|i| !s.contains(i)).collect();
        if let (Some(a), Some(b)) = (tree_sign(s)?, tree_sign(&rest)?) {
            total += a * b;
        }
        Ok(())
    })?;
    let gens = mono.generators();
    let doubled = gens
        .iter()
        .enumerate()
        .filter(|(i, g)| mono.multiplicity(g) == 2 && (*i == 0 || gens[i - 1] != **g))
        .count();
    let aut = BigInt::from(1u64 << doubled);
    if &total % &aut != BigInt::from(0) {
        return Err(Error::Inconsistent(format!("{total} decompositions not divisible by {aut}")));
    }
    Ok(total / aut)
}
