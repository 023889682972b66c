//! Permutations, orientation classes and the sign calculus for trees.
//!
//! Permutations act on labels `1..=n`. Products are applied rightmost first,
//! so `a.compose(&b)` maps `x` to `a(b(x))`.

use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};
use crate::hypergraph::ThreeGraph;
use crate::ring::{AntisymPoly, Generator};

/// A sign `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_plus(self) -> bool {
        self == Sign::Plus
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// Parity of the permutation that sorts `seq` (entries must be distinct).
pub fn sorting_sign<T: Ord>(seq: &[T]) -> Sign {
    // Inversion count; inputs here are short.
    let mut odd = false;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                odd = !odd;
            }
        }
    }
    Sign::from_parity(odd)
}

/// A bijection of `{1..n}`, stored in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (1..=n).collect(),
        }
    }

    /// `image[i]` is the image of `i + 1`.
    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation(format!("{image:?}")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { image })
    }

    /// The single cycle `(c[0] c[1] ... )` on `{1..n}`.
    pub fn cycle(n: usize, cycle: &[usize]) -> Result<Self> {
        let mut image: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n];
        for &x in cycle {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidCycle(cycle.to_vec()));
            }
            seen[x - 1] = true;
        }
        for (pos, &x) in cycle.iter().enumerate() {
            image[x - 1] = cycle[(pos + 1) % cycle.len()];
        }
        Ok(Permutation { image })
    }

    /// Product of disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut p = Permutation::identity(n);
        let mut seen = vec![false; n];
        for c in cycles {
            for &x in c {
                if x == 0 || x > n || seen[x - 1] {
                    return Err(Error::InvalidCycle(c.clone()));
                }
                seen[x - 1] = true;
            }
            for (pos, &x) in c.iter().enumerate() {
                p.image[x - 1] = c[(pos + 1) % c.len()];
            }
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.image.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        Permutation { image: inv }
    }

    /// `self ∘ other`: first apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::GroundSetMismatch(self.len(), other.len()));
        }
        Ok(Permutation {
            image: other.image.iter().map(|&x| self.image[x - 1]).collect(),
        })
    }

    /// Disjoint cycles, each starting at its smallest element, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x - 1] {
                seen[x - 1] = true;
                c.push(x);
                x = self.image[x - 1];
            }
            out.push(c);
        }
        out
    }

    pub fn parity(&self) -> Sign {
        let n = self.len();
        let cycles = self.cycles().len();
        Sign::from_parity((n - cycles) % 2 == 1)
    }

    /// True when the permutation is a single cycle through all `n` points.
    pub fn is_full_cycle(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        let mut x = 1;
        for step in 1..=n {
            x = self.image[x - 1];
            if x == 1 {
                return step == n;
            }
        }
        false
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation without fixed points; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// A cyclic ordering of distinct labels, stored starting at the minimal label.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicOrdering {
    labels: Vec<usize>,
}

impl CyclicOrdering {
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        check_distinct(&labels)?;
        let mut labels = labels;
        if let Some(pos) = labels
            .iter()
            .enumerate()
            .min_by_key(|(_, &x)| x)
            .map(|(i, _)| i)
        {
            labels.rotate_left(pos);
        }
        Ok(CyclicOrdering { labels })
    }

    /// The cyclic ordering traced out by a full cycle.
    pub fn from_full_cycle(p: &Permutation) -> Option<Self> {
        if !p.is_full_cycle() {
            return None;
        }
        let mut labels = Vec::with_capacity(p.len());
        let mut x = 1;
        for _ in 0..p.len() {
            labels.push(x);
            x = p.apply(x);
        }
        Some(CyclicOrdering { labels })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// For an odd number of labels, every rotation is even, so the cyclic
    /// ordering determines an orientation.
    pub fn orientation(&self) -> Result<OrientationClass> {
        if self.labels.len().is_multiple_of(2) {
            return Err(Error::EvenVertexCount(self.labels.len()));
        }
        OrientationClass::new(self.labels.clone())
    }
}

impl fmt::Display for CyclicOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.labels.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(" "))
    }
}

fn check_distinct(labels: &[usize]) -> Result<()> {
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidPermutation(format!(
            "repeated label in {labels:?}"
        )));
    }
    Ok(())
}

/// An ordering of a finite label set up to even permutations.
///
/// Sets with fewer than two elements have a single ordering, so their two
/// orientations are told apart by an explicit sign. For larger sets the
/// stored sign is always `Plus` and the sign lives in the ordering.
#[derive(Debug, Clone, Eq)]
pub struct OrientationClass {
    sign: Sign,
    order: Vec<usize>,
}

impl OrientationClass {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        Self::with_sign(Sign::Plus, order)
    }

    pub fn with_sign(sign: Sign, order: Vec<usize>) -> Result<Self> {
        check_distinct(&order)?;
        let mut o = OrientationClass { sign, order };
        o.normalize();
        Ok(o)
    }

    /// The orientation of `{1..m}` given by the natural order.
    pub fn canonical(m: usize) -> Self {
        OrientationClass {
            sign: Sign::Plus,
            order: (1..=m).collect(),
        }
    }

    fn normalize(&mut self) {
        if self.sign == Sign::Minus && self.order.len() >= 2 {
            self.order.swap(0, 1);
            self.sign = Sign::Plus;
        }
    }

    /// A representative ordering; only meaningful together with [`Self::sign`].
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn label_set(&self) -> Vec<usize> {
        let mut s = self.order.clone();
        s.sort_unstable();
        s
    }

    pub fn reversed(&self) -> Self {
        let mut o = OrientationClass {
            sign: -self.sign,
            order: self.order.clone(),
        };
        o.normalize();
        o
    }

    /// `+1` if `self` and `other` are the same orientation, `-1` if opposite.
    pub fn sign_relative_to(&self, other: &OrientationClass) -> Result<Sign> {
        if self.label_set() != other.label_set() {
            return Err(Error::LabelSetMismatch);
        }
        let pos: std::collections::HashMap<usize, usize> = self
            .order
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, i))
            .collect();
        let relating: Vec<usize> = other.order.iter().map(|x| pos[x]).collect();
        Ok(sorting_sign(&relating) * self.sign * other.sign)
    }
}

impl PartialEq for OrientationClass {
    fn eq(&self, other: &Self) -> bool {
        matches!(self.sign_relative_to(other), Ok(Sign::Plus))
    }
}

impl fmt::Display for OrientationClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            f.write_str("-")?;
        }
        let parts: Vec<String> = self.order.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Sign relating two orientations of the same set.
pub fn orientation_sign(a: &OrientationClass, b: &OrientationClass) -> Result<Sign> {
    a.sign_relative_to(b)
}

/// Product of 3-cycles on `{1..m}`, rightmost applied first.
pub fn cycle_product(cycles: &[[usize; 3]], m: usize) -> Result<Permutation> {
    let mut acc = Permutation::identity(m);
    for c in cycles {
        let p = Permutation::cycle(m, c)?;
        acc = acc.compose(&p)?;
    }
    Ok(acc)
}

/// The sign ε of a sequence of 3-cycles: `0` unless the product is an
/// `m`-cycle `(s(1) ... s(m))`, in which case it is the parity of `s`.
pub fn epsilon(cycles: &[[usize; 3]], m: usize) -> Result<i32> {
    if m.is_multiple_of(2) {
        return Err(Error::EvenVertexCount(m));
    }
    let sigma = cycle_product(cycles, m)?;
    if !sigma.is_full_cycle() {
        return Ok(0);
    }
    let sign = conjugator_sign(&sigma, 1);
    debug_assert!(
        m < 2 || conjugator_sign(&sigma, sigma.apply(1)) == sign,
        "conjugator sign depends on the starting point"
    );
    Ok(sign.to_i32())
}

/// Parity of `s` with `s(1) = start`, `s(i + 1) = sigma(s(i))`.
fn conjugator_sign(sigma: &Permutation, start: usize) -> Sign {
    let mut images = Vec::with_capacity(sigma.len());
    let mut x = start;
    for _ in 0..sigma.len() {
        images.push(x);
        x = sigma.apply(x);
    }
    Permutation { image: images }.parity()
}

/// The orientation `o(T̃)` of a tree whose edges carry the given 3-cycles.
///
/// `edge_orientations[i]` is a 3-cycle `(a b c)` on the vertices of edge `i`.
pub fn tree_orientation(
    tree: &ThreeGraph,
    edge_orientations: &[[usize; 3]],
) -> Result<OrientationClass> {
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    if edge_orientations.len() != tree.edge_count() {
        return Err(Error::Precondition(format!(
            "{} edge orientations for {} edges",
            edge_orientations.len(),
            tree.edge_count()
        )));
    }
    for (i, c) in edge_orientations.iter().enumerate() {
        let mut support = *c;
        support.sort_unstable();
        if support != tree.edges()[i] {
            return Err(Error::InvalidCycle(c.to_vec()));
        }
    }
    let sigma = cycle_product(edge_orientations, tree.vertex_count())?;
    let cyc = CyclicOrdering::from_full_cycle(&sigma).ok_or(Error::NotATree)?;
    cyc.orientation()
}

/// The signed monomial `y(T, o)` of a tree.
///
/// Each edge is oriented by its stored (ascending) vertex triple; the variable
/// attached to it comes from the graph's generator labels.
pub fn tree_monomial(tree: &ThreeGraph, orientation: &OrientationClass) -> Result<AntisymPoly> {
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    let m = tree.vertex_count();
    if orientation.label_set() != (1..=m).collect::<Vec<_>>() {
        return Err(Error::LabelSetMismatch);
    }
    let cycles: Vec<[usize; 3]> = tree.edges().to_vec();
    let sigma = cycle_product(&cycles, m)?;
    let tree_o = CyclicOrdering::from_full_cycle(&sigma)
        .ok_or(Error::NotATree)?
        .orientation()?;
    let mut sign = tree_o.sign_relative_to(orientation)?;
    let mut gens = Vec::with_capacity(cycles.len());
    for i in 0..tree.edge_count() {
        let [a, b, c] = tree.generator_labels(i);
        match Generator::normalize(a, b, c) {
            Some((g, s)) => {
                sign = sign * s;
                gens.push(g);
            }
            None => return Ok(AntisymPoly::zero_poly()),
        }
    }
    Ok(AntisymPoly::signed_monomial(sign, gens))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_cycle(n: usize, c: &[usize]) -> Permutation {
        Permutation::cycle(n, c).unwrap()
    }

    #[test]
    fn parity_examples() {
        assert_eq!(Permutation::identity(5).parity(), Sign::Plus);
        assert_eq!(perm_cycle(3, &[1, 2, 3]).parity(), Sign::Plus);
        assert_eq!(perm_cycle(4, &[1, 2]).parity(), Sign::Minus);
    }

    /// Applies each factor to every point in turn.
    fn brute_product(n: usize, factors: &[&[usize]]) -> Vec<usize> {
        (1..=n)
            .map(|x| {
                let mut y = x;
                for f in factors.iter().rev() {
                    if let Some(pos) = f.iter().position(|&z| z == y) {
                        y = f[(pos + 1) % f.len()];
                    }
                }
                y
            })
            .collect()
    }

    #[test]
    fn compose_examples() {
        let a = perm_cycle(5, &[1, 2, 3]);
        let b = perm_cycle(5, &[1, 4, 5]);
        let ab = a.compose(&b).unwrap();
        assert_eq!(ab.images(), &brute_product(5, &[&[1, 2, 3], &[1, 4, 5]])[..]);
        assert_eq!(ab, perm_cycle(5, &[1, 4, 5, 2, 3]));
        assert_eq!(ab.to_string(), "(1 4 5 2 3)");

        let c = perm_cycle(5, &[1, 2, 4]).compose(&perm_cycle(5, &[1, 3, 5])).unwrap();
        assert_eq!(c.images(), &brute_product(5, &[&[1, 2, 4], &[1, 3, 5]])[..]);
        assert_eq!(c.to_string(), "(1 3 5 2 4)");

        assert_eq!(Permutation::identity(5).compose(&a).unwrap(), a);
        assert!(a.compose(&Permutation::identity(4)).is_err());
    }

    #[test]
    fn display_identity() {
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }

    #[test]
    fn epsilon_examples() {
        assert_eq!(epsilon(&[[1, 2, 3], [1, 4, 5]], 5).unwrap(), 1);
        assert_eq!(epsilon(&[[1, 2, 3], [1, 2, 4]], 5).unwrap(), 0);
        assert_eq!(epsilon(&[[1, 2, 4], [1, 3, 5]], 5).unwrap(), -1);
        assert!(matches!(
            epsilon(&[[1, 2, 3]], 4),
            Err(Error::EvenVertexCount(4))
        ));
    }

    /// ε by brute force: try every rotation of the listed cycle as `s`.
    #[test]
    fn epsilon_rotation_oracle() {
        let sigma = perm_cycle(5, &[1, 3, 5, 2, 4]);
        let listing = [1, 3, 5, 2, 4];
        for r in 0..5 {
            let mut s = listing.to_vec();
            s.rotate_left(r);
            assert_eq!(Permutation::from_images(s).unwrap().parity(), Sign::Minus);
        }
        assert!(sigma.is_full_cycle());
    }

    #[test]
    fn orientation_sign_examples() {
        let a = OrientationClass::new(vec![1, 2, 3, 4, 5]).unwrap();
        let b = OrientationClass::new(vec![2, 1, 3, 4, 5]).unwrap();
        assert_eq!(orientation_sign(&a, &a).unwrap(), Sign::Plus);
        assert_eq!(orientation_sign(&a, &b).unwrap(), Sign::Minus);
        let cyc = CyclicOrdering::new(vec![1, 4, 7, 6, 3, 2, 5])
            .unwrap()
            .orientation()
            .unwrap();
        let ord = OrientationClass::new(vec![1, 4, 3, 2, 7, 6, 5]).unwrap();
        assert_eq!(orientation_sign(&cyc, &ord).unwrap(), Sign::Plus);
        let other = OrientationClass::new(vec![1, 2, 3]).unwrap();
        assert_eq!(orientation_sign(&a, &other), Err(Error::LabelSetMismatch));
    }

    #[test]
    fn singleton_orientations_carry_sign() {
        let plus = OrientationClass::new(vec![7]).unwrap();
        let minus = plus.reversed();
        assert_ne!(plus, minus);
        assert_eq!(plus.sign_relative_to(&minus).unwrap(), Sign::Minus);
        assert_eq!(minus.reversed(), plus);
    }

    #[test]
    fn cyclic_ordering_canonical_start() {
        let a = CyclicOrdering::new(vec![4, 7, 1, 2]).unwrap();
        assert_eq!(a.labels(), &[1, 2, 4, 7]);
        assert_eq!(a, CyclicOrdering::new(vec![2, 4, 7, 1]).unwrap());
        assert!(CyclicOrdering::new(vec![1, 1]).is_err());
        assert!(a.orientation().is_err());
    }

    fn g(m: usize, edges: &[[usize; 3]]) -> ThreeGraph {
        ThreeGraph::new(m, edges.to_vec()).unwrap()
    }

    #[test]
    fn tree_orientation_examples() {
        let single = g(3, &[[1, 2, 3]]);
        assert_eq!(
            tree_orientation(&single, &[[1, 2, 3]]).unwrap(),
            OrientationClass::new(vec![1, 2, 3]).unwrap()
        );

        let t = g(7, &[[1, 4, 5], [2, 3, 4], [4, 6, 7]]);
        let o = tree_orientation(&t, &[[1, 4, 5], [2, 4, 3], [4, 7, 6]]).unwrap();
        let expect = CyclicOrdering::new(vec![1, 4, 7, 6, 3, 2, 5])
            .unwrap()
            .orientation()
            .unwrap();
        assert_eq!(o, expect);
        assert_eq!(o, OrientationClass::new(vec![1, 4, 3, 2, 7, 6, 5]).unwrap());
        assert_eq!(o, OrientationClass::new(vec![1, 3, 2, 7, 6, 4, 5]).unwrap());

        let flipped = tree_orientation(&t, &[[1, 5, 4], [2, 4, 3], [4, 7, 6]]).unwrap();
        assert_eq!(flipped, expect.reversed());

        let not_tree = g(5, &[[1, 2, 3], [2, 3, 4]]);
        assert_eq!(
            tree_orientation(&not_tree, &[[1, 2, 3], [2, 3, 4]]),
            Err(Error::NotATree)
        );
    }

    #[test]
    fn tree_monomial_examples() {
        let t3 = g(3, &[[1, 2, 3]]);
        let m = tree_monomial(&t3, &OrientationClass::canonical(3)).unwrap();
        assert_eq!(m.to_string(), "+1*y[1,2,3]");

        let t5 = g(5, &[[1, 2, 3], [1, 4, 5]]);
        let m = tree_monomial(&t5, &OrientationClass::canonical(5)).unwrap();
        assert_eq!(m.to_string(), "+1*y[1,2,3]*y[1,4,5]");

        let t5b = g(5, &[[1, 2, 4], [1, 3, 5]]);
        let m = tree_monomial(&t5b, &OrientationClass::canonical(5)).unwrap();
        assert_eq!(m.to_string(), "-1*y[1,2,4]*y[1,3,5]");
    }

    use proptest::prelude::*;

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((1..=n).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn parity_is_multiplicative((a, b) in (1usize..9).prop_flat_map(|n| (arb_perm(n), arb_perm(n)))) {
            let ab = a.compose(&b).unwrap();
            prop_assert_eq!(ab.parity(), a.parity() * b.parity());
            prop_assert_eq!(a.compose(&a.inverse()).unwrap(), Permutation::identity(a.len()));
        }
    }
}
