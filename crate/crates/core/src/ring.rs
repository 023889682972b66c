//! Exact sparse polynomials.
//!
//! [`AntisymPoly`] lives in the generators `y_ijk`, which are antisymmetric in
//! their indices. Only the sorted triple `i < j < k` is stored; every other
//! index order is rewritten with the sign of the sorting permutation, and
//! triples with a repeated index vanish. Distinct sorted generators are
//! independent commuting variables.
//!
//! [`CommPoly`] is an ordinary commutative polynomial in edge variables `x_e`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orient::{sorting_sign, Permutation, Sign};

fn nz(c: &BigInt) -> bool {
    !Zero::is_zero(c)
}

/// A commutative ring with exact arithmetic, as needed by the matrix code.
pub trait Ring: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn from_sign(sign: Sign) -> Self {
        match sign {
            Sign::Plus => Self::one(),
            Sign::Minus => Self::one().neg(),
        }
    }
}

macro_rules! num_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn zero() -> Self {
                <$t as Zero>::zero()
            }
            fn one() -> Self {
                <$t as One>::one()
            }
            fn is_zero(&self) -> bool {
                Zero::is_zero(self)
            }
            fn add(&self, other: &Self) -> Self {
                self + other
            }
            fn sub(&self, other: &Self) -> Self {
                self - other
            }
            fn mul(&self, other: &Self) -> Self {
                self * other
            }
            fn neg(&self) -> Self {
                -self
            }
        }
    };
}

num_ring!(BigInt);
num_ring!(BigRational);

/// A canonical generator `y_ijk` with `i < j < k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator([usize; 3]);

impl Generator {
    /// Sorts `(i, j, k)`, returning the generator and the sign of the sorting
    /// permutation, or `None` when an index repeats.
    pub fn normalize(i: usize, j: usize, k: usize) -> Option<(Generator, Sign)> {
        let raw = [i, j, k];
        let mut t = raw;
        t.sort_unstable();
        if t[0] == t[1] || t[1] == t[2] {
            return None;
        }
        Some((Generator(t), sorting_sign(&raw)))
    }

    /// The generator of an already sorted, distinct triple.
    pub fn new(i: usize, j: usize, k: usize) -> Result<Generator> {
        match Self::normalize(i, j, k) {
            Some((g, Sign::Plus)) => Ok(g),
            _ => Err(Error::Precondition(format!(
                "({i},{j},{k}) is not a canonical generator"
            ))),
        }
    }

    pub fn indices(&self) -> [usize; 3] {
        self.0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }
}

/// Normalizes `y_ijk`; see [`Generator::normalize`].
pub fn gen_normalize(i: usize, j: usize, k: usize) -> Option<(Generator, Sign)> {
    Generator::normalize(i, j, k)
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y[{},{},{}]", self.0[0], self.0[1], self.0[2])
    }
}

/// A product of generators, kept sorted (repeats allowed).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn new(mut gens: Vec<Generator>) -> Self {
        gens.sort_unstable();
        Monomial(gens)
    }

    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn multiplicity(&self, g: &Generator) -> usize {
        self.0.iter().filter(|x| *x == g).count()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Removes one copy of `g`, if present.
    pub fn without(&self, g: &Generator) -> Option<Monomial> {
        let pos = self.0.iter().position(|x| x == g)?;
        let mut v = self.0.clone();
        v.remove(pos);
        Some(Monomial(v))
    }

    /// Multiset of vertex indices over all generators.
    pub fn index_counts(&self) -> BTreeMap<usize, usize> {
        let mut counts = BTreeMap::new();
        for g in &self.0 {
            for v in g.0 {
                *counts.entry(v).or_insert(0) += 1;
            }
        }
        counts
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut e = 1;
            while i + e < self.0.len() && self.0[i + e] == g {
                e += 1;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{g}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
            i += e;
        }
        Ok(())
    }
}

fn parse_generator(s: &str) -> Result<(Option<Generator>, Sign, usize)> {
    let err = || Error::Parse(format!("bad generator `{s}`"));
    let (body, exp) = match s.split_once('^') {
        Some((b, e)) => (b, e.parse::<usize>().map_err(|_| err())?),
        None => (s, 1),
    };
    let inner = body
        .strip_prefix("y[")
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(err)?;
    let idx: Vec<usize> = inner
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| err()))
        .collect::<Result<_>>()?;
    if idx.len() != 3 || idx.contains(&0) {
        return Err(err());
    }
    Ok(match Generator::normalize(idx[0], idx[1], idx[2]) {
        Some((g, sign)) => (Some(g), sign, exp),
        None => (None, Sign::Plus, exp),
    })
}

/// Parses `y[..]*y[..]^2*...`. Returns `None` for a product with a vanishing
/// generator, otherwise the canonical monomial and its sign.
fn parse_product(s: &str) -> Result<Option<(Monomial, Sign)>> {
    let mut gens = Vec::new();
    let mut sign = Sign::Plus;
    let mut vanishes = false;
    for factor in s.split('*') {
        let (g, sg, e) = parse_generator(factor.trim())?;
        match g {
            Some(g) => {
                for _ in 0..e {
                    gens.push(g);
                    sign = sign * sg;
                }
            }
            None => vanishes = vanishes || e > 0,
        }
    }
    if vanishes {
        return Ok(None);
    }
    Ok(Some((Monomial::new(gens), sign)))
}

impl FromStr for Monomial {
    type Err = Error;

    /// Accepts `1` or a product of generators. Index order must be ascending.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Monomial::one());
        }
        match parse_product(s)? {
            Some((m, Sign::Plus)) => Ok(m),
            _ => Err(Error::Parse(format!("`{s}` is not a canonical monomial"))),
        }
    }
}

/// An exact polynomial in antisymmetric generators with big-integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AntisymPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

/// Values for generators, used by [`AntisymPoly::evaluate`].
#[derive(Debug, Clone, Default, PartialEq)]
pub struct AntisymAssignment {
    values: BTreeMap<Generator, BigRational>,
}

impl AntisymAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `y_ijk = value` for any index order; the sorted generator receives
    /// the sign-corrected value.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: BigRational) -> Result<()> {
        let (g, sign) = Generator::normalize(i, j, k)
            .ok_or_else(|| Error::Precondition(format!("y[{i},{j},{k}] vanishes")))?;
        let v = if sign.is_plus() { value } else { -value };
        self.values.insert(g, v);
        Ok(())
    }

    pub fn get(&self, g: &Generator) -> Option<&BigRational> {
        self.values.get(g)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Generator, &BigRational)> {
        self.values.iter()
    }
}

/// Slot polynomial variable → vertices substituted for it.
pub type SlotMap = BTreeMap<usize, Vec<usize>>;

impl AntisymPoly {
    pub fn zero_poly() -> Self {
        Self::default()
    }

    pub fn one_poly() -> Self {
        Self::constant(BigInt::from(1))
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::default();
        p.add_term(Monomial::one(), c);
        p
    }

    /// `y_ijk` in any index order (zero for a repeated index).
    pub fn y(i: usize, j: usize, k: usize) -> Self {
        match Generator::normalize(i, j, k) {
            Some((g, sign)) => Self::signed_monomial(sign, vec![g]),
            None => Self::zero_poly(),
        }
    }

    pub fn generator(g: Generator) -> Self {
        Self::signed_monomial(Sign::Plus, vec![g])
    }

    pub fn signed_monomial(sign: Sign, gens: Vec<Generator>) -> Self {
        let mut p = Self::default();
        p.add_term(Monomial::new(gens), BigInt::from(sign.to_i32()));
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut p = Self::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if !nz(&c) {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if !nz(o.get()) {
                    o.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero_poly(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Largest monomial degree; `0` for constants and the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().flat_map(|g| g.0))
            .collect()
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Self {
        if !nz(c) {
            return Self::zero_poly();
        }
        AntisymPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one_poly();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, a: &AntisymAssignment) -> Result<BigRational> {
        let mut total = <BigRational as Zero>::zero();
        for (m, c) in &self.terms {
            let mut v = BigRational::from_integer(c.clone());
            for g in &m.0 {
                let x = a
                    .get(g)
                    .ok_or_else(|| Error::MissingAssignment(g.to_string()))?;
                v *= x;
            }
            total += v;
        }
        Ok(total)
    }

    /// Formal derivative with respect to a canonical generator.
    pub fn partial_derivative(&self, g: &Generator) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            let k = m.multiplicity(g);
            if k > 0 {
                out.add_term(m.without(g).expect("present"), c * BigInt::from(k));
            }
        }
        out
    }

    /// Derivative with respect to `y_ijk` in the given index order.
    pub fn partial_derivative_ordered(&self, i: usize, j: usize, k: usize) -> Self {
        match Generator::normalize(i, j, k) {
            Some((g, Sign::Plus)) => self.partial_derivative(&g),
            Some((g, Sign::Minus)) => -self.partial_derivative(&g),
            None => Self::zero_poly(),
        }
    }

    /// Sets every generator involving vertex `v` to zero.
    pub fn restrict_zero_vertex(&self, v: usize) -> Self {
        AntisymPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.0.iter().any(|g| g.contains(v)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn set_generator_zero(&self, g: &Generator) -> Self {
        AntisymPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.0.contains(g))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Renames vertex indices through `f`, re-normalizing every generator.
    pub fn map_vertices<F: Fn(usize) -> usize>(&self, f: F) -> Self {
        let mut out = Self::default();
        'terms: for (m, c) in &self.terms {
            let mut sign = Sign::Plus;
            let mut gens = Vec::with_capacity(m.0.len());
            for g in &m.0 {
                let [a, b, d] = g.0;
                match Generator::normalize(f(a), f(b), f(d)) {
                    Some((h, s)) => {
                        sign = sign * s;
                        gens.push(h);
                    }
                    None => continue 'terms,
                }
            }
            let c = if sign.is_plus() { c.clone() } else { -c };
            out.add_term(Monomial::new(gens), c);
        }
        out
    }

    /// Replaces `v_i` by `v_{s(i)}` in every generator.
    pub fn permute_vertices(&self, s: &Permutation) -> Result<Self> {
        if let Some(&v) = self.vertices().iter().next_back() {
            if v > s.len() {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    size: s.len(),
                });
            }
        }
        Ok(self.map_vertices(|v| s.apply(v)))
    }

    /// Multilinear substitution `v_slot ↦ Σ v_t` over `t ∈ assignment[slot]`.
    ///
    /// Target lists must be nonempty and pairwise disjoint, and every vertex
    /// of `self` must be a slot of the assignment.
    pub fn slot_substitute(&self, assignment: &SlotMap) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (slot, targets) in assignment {
            if targets.is_empty() {
                return Err(Error::SlotAssignment(format!("slot {slot} has no targets")));
            }
            for &t in targets {
                if !seen.insert(t) {
                    return Err(Error::SlotAssignment(format!(
                        "vertex {t} appears in two target lists"
                    )));
                }
            }
        }
        for v in self.vertices() {
            if !assignment.contains_key(&v) {
                return Err(Error::SlotAssignment(format!("slot {v} is not assigned")));
            }
        }
        let mut out = Self::default();
        for (m, c) in &self.terms {
            // Expand the product of linear forms one generator at a time.
            let mut partial: Vec<(Vec<Generator>, Sign)> = vec![(Vec::new(), Sign::Plus)];
            for g in &m.0 {
                let [a, b, d] = g.0;
                let mut next = Vec::new();
                for (gens, sign) in &partial {
                    for &x in &assignment[&a] {
                        for &y in &assignment[&b] {
                            for &z in &assignment[&d] {
                                if let Some((h, s)) = Generator::normalize(x, y, z) {
                                    let mut v = gens.clone();
                                    v.push(h);
                                    next.push((v, *sign * s));
                                }
                            }
                        }
                    }
                }
                partial = next;
            }
            for (gens, sign) in partial {
                let coeff = if sign.is_plus() { c.clone() } else { -c };
                out.add_term(Monomial::new(gens), coeff);
            }
        }
        Ok(out)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                coeff: c.to_string(),
                gens: m.0.iter().map(|g| g.0.to_vec()).collect(),
            })
            .collect();
        serde_json::to_value(terms).expect("serializable")
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let terms: Vec<TermJson> =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let mut out = Self::default();
        for t in terms {
            let c: BigInt = t
                .coeff
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
            let mut sign = Sign::Plus;
            let mut gens = Vec::new();
            let mut vanishes = false;
            for g in &t.gens {
                if g.len() != 3 {
                    return Err(Error::Parse(format!("generator {g:?} needs 3 indices")));
                }
                match Generator::normalize(g[0], g[1], g[2]) {
                    Some((h, s)) => {
                        sign = sign * s;
                        gens.push(h);
                    }
                    None => vanishes = true,
                }
            }
            if !vanishes {
                let c = if sign.is_plus() { c } else { -c };
                out.add_term(Monomial::new(gens), c);
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct TermJson {
    coeff: String,
    gens: Vec<Vec<usize>>,
}

fn write_coefficient(f: &mut fmt::Formatter<'_>, c: &BigInt) -> fmt::Result {
    if c.is_negative() {
        write!(f, "-{}", c.abs())
    } else {
        write!(f, "+{c}")
    }
}

impl fmt::Display for AntisymPoly {
    /// Terms in canonical order, e.g. `+1*y[1,2,3]*y[1,4,5] -1*y[1,2,4]*y[1,3,5]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write_coefficient(f, c)?;
            if m.degree() > 0 {
                write!(f, "*{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for AntisymPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero_poly());
        }
        let mut out = Self::default();
        for term in s.split_whitespace() {
            let err = || Error::Parse(format!("bad term `{term}`"));
            let (coeff, rest) = match term.split_once('*') {
                Some((c, r)) => (c, Some(r)),
                None => (term, None),
            };
            if !(coeff.starts_with('+') || coeff.starts_with('-')) {
                return Err(err());
            }
            let c: BigInt = coeff.parse().map_err(|_| err())?;
            match rest {
                None => out.add_term(Monomial::one(), c),
                Some(r) => {
                    if let Some((m, sign)) = parse_product(r)? {
                        let c = if sign.is_plus() { c } else { -c };
                        out.add_term(m, c);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl std::ops::Add<&AntisymPoly> for &AntisymPoly {
    type Output = AntisymPoly;
    fn add(self, rhs: &AntisymPoly) -> AntisymPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub<&AntisymPoly> for &AntisymPoly {
    type Output = AntisymPoly;
    fn sub(self, rhs: &AntisymPoly) -> AntisymPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl std::ops::Mul<&AntisymPoly> for &AntisymPoly {
    type Output = AntisymPoly;
    fn mul(self, rhs: &AntisymPoly) -> AntisymPoly {
        let mut out = AntisymPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl std::ops::Neg for &AntisymPoly {
    type Output = AntisymPoly;
    fn neg(self) -> AntisymPoly {
        AntisymPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl std::ops::Neg for AntisymPoly {
    type Output = AntisymPoly;
    fn neg(self) -> AntisymPoly {
        -&self
    }
}

impl Ring for AntisymPoly {
    fn zero() -> Self {
        Self::zero_poly()
    }
    fn one() -> Self {
        Self::one_poly()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

/// A commutative polynomial in edge variables `x_e`, keyed by sorted variable ids.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CommPoly {
    terms: BTreeMap<Vec<usize>, BigInt>,
}

impl CommPoly {
    pub fn var(id: usize) -> Self {
        Self::monomial(vec![id], BigInt::from(1))
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(Vec::new(), c)
    }

    pub fn monomial(mut vars: Vec<usize>, c: BigInt) -> Self {
        vars.sort_unstable();
        let mut p = Self::default();
        p.add_term(vars, c);
        p
    }

    fn add_term(&mut self, m: Vec<usize>, c: BigInt) {
        if !nz(&c) {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e += c;
        if !nz(e) {
            self.terms.retain(|_, v| nz(v));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, vars: &[usize]) -> BigInt {
        let mut v = vars.to_vec();
        v.sort_unstable();
        self.terms.get(&v).cloned().unwrap_or_default()
    }

    pub fn scalar_mul(&self, c: &BigInt) -> Self {
        let mut out = Self::default();
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }
}

impl fmt::Display for CommPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write_coefficient(f, c)?;
            for v in m {
                write!(f, "*x[{v}]")?;
            }
        }
        Ok(())
    }
}

impl Ring for CommPoly {
    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::constant(BigInt::from(1))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = ma.clone();
                m.extend_from_slice(mb);
                m.sort_unstable();
                out.add_term(m, ca * cb);
            }
        }
        out
    }
    fn neg(&self) -> Self {
        CommPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn y(i: usize, j: usize, k: usize) -> AntisymPoly {
        AntisymPoly::y(i, j, k)
    }

    fn g(i: usize, j: usize, k: usize) -> Generator {
        Generator::new(i, j, k).unwrap()
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(gen_normalize(1, 2, 3), Some((g(1, 2, 3), Sign::Plus)));
        assert_eq!(gen_normalize(2, 1, 3), Some((g(1, 2, 3), Sign::Minus)));
        assert_eq!(gen_normalize(2, 3, 1), Some((g(1, 2, 3), Sign::Plus)));
        assert_eq!(gen_normalize(1, 1, 2), None);
    }

    #[test]
    fn arithmetic_examples() {
        assert!((&y(1, 2, 3) + &(-&y(1, 2, 3))).is_zero_poly());
        assert_eq!((&y(1, 2, 3) * &y(1, 4, 5)).to_string(), "+1*y[1,2,3]*y[1,4,5]");
        let s = &y(1, 2, 3) + &y(1, 2, 4);
        assert_eq!(
            (&s * &s).to_string(),
            "+1*y[1,2,3]^2 +2*y[1,2,3]*y[1,2,4] +1*y[1,2,4]^2"
        );
        assert_eq!(y(2, 1, 3), -&y(1, 2, 3));
        assert!(y(1, 1, 2).is_zero_poly());
    }

    #[test]
    fn evaluate_examples() {
        let mut a = AntisymAssignment::new();
        a.set(1, 2, 3, BigRational::from_integer(1.into())).unwrap();
        assert_eq!(y(1, 2, 3).evaluate(&a).unwrap(), <BigRational as One>::one());
        assert_eq!(y(2, 1, 3).evaluate(&a).unwrap(), -<BigRational as One>::one());
        assert_eq!(AntisymPoly::zero_poly().evaluate(&AntisymAssignment::new()).unwrap(), <BigRational as Zero>::zero());
        assert!(matches!(
            y(1, 2, 4).evaluate(&a),
            Err(Error::MissingAssignment(_))
        ));
    }

    #[test]
    fn derivative_examples() {
        let p = &y(1, 2, 3) * &y(1, 4, 5);
        assert_eq!(p.partial_derivative(&g(1, 2, 3)), y(1, 4, 5));
        let sq = &y(1, 2, 3) * &y(1, 2, 3);
        assert_eq!(
            sq.partial_derivative(&g(1, 2, 3)),
            y(1, 2, 3).scalar_mul(&BigInt::from(2))
        );
        assert_eq!(y(1, 2, 3).partial_derivative_ordered(2, 1, 3), AntisymPoly::constant((-1).into()));
    }

    #[test]
    fn restriction_examples() {
        let p = &y(1, 2, 3) * &y(1, 4, 5);
        assert!(p.restrict_zero_vertex(1).is_zero_poly());
        assert_eq!(y(2, 3, 4).restrict_zero_vertex(1), y(2, 3, 4));
        assert!(p.set_generator_zero(&g(1, 2, 3)).is_zero_poly());
        let q = &y(1, 2, 4) * &y(1, 3, 5);
        assert_eq!(q.set_generator_zero(&g(1, 2, 3)), q);
    }

    #[test]
    fn slot_substitution_examples() {
        let map: SlotMap = [(1, vec![1, 2, 3]), (2, vec![4]), (3, vec![5])].into();
        assert_eq!(
            y(1, 2, 3).slot_substitute(&map).unwrap(),
            &(&y(1, 4, 5) + &y(2, 4, 5)) + &y(3, 4, 5)
        );
        let id: SlotMap = (1..=5).map(|v| (v, vec![v])).collect();
        let p = &y(1, 2, 4) * &y(1, 3, 5);
        assert_eq!(p.slot_substitute(&id).unwrap(), p);
        let map: SlotMap = [(1, vec![2, 3]), (2, vec![4]), (3, vec![5])].into();
        assert_eq!(
            y(1, 2, 3).slot_substitute(&map).unwrap(),
            &y(2, 4, 5) + &y(3, 4, 5)
        );
        let overlap: SlotMap = [(1, vec![1, 2]), (2, vec![2]), (3, vec![5])].into();
        assert!(matches!(
            y(1, 2, 3).slot_substitute(&overlap),
            Err(Error::SlotAssignment(_))
        ));
        let missing: SlotMap = [(1, vec![1]), (2, vec![2])].into();
        assert!(y(1, 2, 3).slot_substitute(&missing).is_err());
    }

    #[test]
    fn permute_examples() {
        let t = Permutation::cycle(3, &[1, 2]).unwrap();
        assert_eq!(y(1, 2, 3).permute_vertices(&t).unwrap(), -&y(1, 2, 3));
        let p = &y(1, 2, 4) * &y(1, 3, 5);
        assert_eq!(p.permute_vertices(&Permutation::identity(5)).unwrap(), p);
        assert!(p.permute_vertices(&Permutation::identity(3)).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let p = &(&y(1, 2, 3) * &y(1, 4, 5)) - &(&y(1, 2, 4) * &y(1, 3, 5));
        assert_eq!(p.to_string(), "+1*y[1,2,3]*y[1,4,5] -1*y[1,2,4]*y[1,3,5]");
        assert_eq!(p.to_string().parse::<AntisymPoly>().unwrap(), p);
        assert_eq!("0".parse::<AntisymPoly>().unwrap(), AntisymPoly::zero_poly());
        assert_eq!("+1".parse::<AntisymPoly>().unwrap(), AntisymPoly::one_poly());
        assert_eq!("+1*y[2,1,3]".parse::<AntisymPoly>().unwrap(), -&y(1, 2, 3));
        assert!("y[1,2,3]".parse::<AntisymPoly>().is_err());
        assert!("+1*y[1,2]".parse::<AntisymPoly>().is_err());
    }

    #[test]
    fn json_format() {
        let p = &(&y(1, 2, 3) * &y(1, 4, 5)) - &(&y(1, 2, 4) * &y(1, 3, 5));
        assert_eq!(
            p.to_json(),
            r#"[{"coeff":"1","gens":[[1,2,3],[1,4,5]]},{"coeff":"-1","gens":[[1,2,4],[1,3,5]]}]"#
        );
        assert_eq!(AntisymPoly::from_json(&p.to_json()).unwrap(), p);
        assert!(AntisymPoly::from_json(r#"[{"coeff":"x","gens":[]}]"#).is_err());
    }

    #[test]
    fn monomial_parse_and_counts() {
        let m: Monomial = "y[1,2,3]^2*y[2,4,5]*y[3,4,5]".parse().unwrap();
        assert_eq!(m.degree(), 4);
        assert_eq!(m.to_string(), "y[1,2,3]^2*y[2,4,5]*y[3,4,5]");
        assert_eq!(m.index_counts()[&1], 2);
        assert!("y[2,1,3]".parse::<Monomial>().is_err());
    }

    #[test]
    fn comm_poly_basics() {
        let a = CommPoly::var(1);
        let b = CommPoly::var(2);
        let s = a.add(&b);
        let sq = s.mul(&s);
        assert_eq!(sq.to_string(), "+1*x[1]*x[1] +2*x[1]*x[2] +1*x[2]*x[2]");
        assert!(s.sub(&s).is_zero());
        assert_eq!(sq.coefficient(&[2, 1]), BigInt::from(2));
    }

    const LABELS: usize = 6;

    fn arb_poly() -> impl Strategy<Value = AntisymPoly> {
        let gen = (1..=LABELS, 1..=LABELS, 1..=LABELS);
        let term = (-3i64..=3, proptest::collection::vec(gen, 0..3));
        proptest::collection::vec(term, 0..5).prop_map(|terms| {
            let mut p = AntisymPoly::zero_poly();
            for (c, gens) in terms {
                let mut t = AntisymPoly::constant(c.into());
                for (i, j, k) in gens {
                    t = &t * &AntisymPoly::y(i, j, k);
                }
                p = &p + &t;
            }
            p
        })
    }

    fn arb_perm() -> impl Strategy<Value = Permutation> {
        Just((1..=LABELS).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    fn arb_assignment() -> impl Strategy<Value = AntisymAssignment> {
        proptest::collection::vec(-4i64..=4, 20).prop_map(|vals| {
            let mut a = AntisymAssignment::new();
            let mut it = vals.into_iter();
            for i in 1..=LABELS {
                for j in i + 1..=LABELS {
                    for k in j + 1..=LABELS {
                        a.set(i, j, k, BigRational::from_integer(it.next().unwrap().into()))
                            .unwrap();
                    }
                }
            }
            a
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
        }

        #[test]
        fn normalize_sign_is_sorting_parity(i in 1usize..9, j in 1usize..9, k in 1usize..9) {
            if let Some((g1, s1)) = gen_normalize(i, j, k) {
                let (g2, s2) = gen_normalize(j, i, k).unwrap();
                prop_assert_eq!(g1, g2);
                prop_assert_eq!(s1, -s2);
                let (g3, s3) = gen_normalize(k, i, j).unwrap();
                prop_assert_eq!((g1, s1), (g3, s3));
            } else {
                prop_assert!(i == j || j == k || i == k);
            }
        }

        #[test]
        fn slot_substitution_is_multilinear(a in arb_poly(), x in 7usize..9) {
            // Only polynomials of degree <= 1 in slot 1 are linear in it.
            let a = a.restrict_zero_vertex(1);
            let p = &a + &(&AntisymPoly::y(1, 2, 3) * &a);
            let base: SlotMap = (2..=LABELS).map(|v| (v, vec![v])).collect();
            let mut sx = base.clone();
            sx.insert(1, vec![x]);
            let mut s1 = base.clone();
            s1.insert(1, vec![1]);
            let mut both = base;
            both.insert(1, vec![1, x]);
            let lhs = &p.slot_substitute(&sx).unwrap() + &p.slot_substitute(&s1).unwrap();
            let rhs = p.slot_substitute(&both).unwrap();
            // The slot-1-free part is counted twice on the left.
            prop_assert_eq!(lhs, &rhs + &a);
        }

        #[test]
        fn evaluate_commutes_with_permutation(p in arb_poly(), s in arb_perm(), a in arb_assignment()) {
            let permuted = p.permute_vertices(&s).unwrap();
            let mut pulled = AntisymAssignment::new();
            for (g, _) in a.iter() {
                let [i, j, k] = g.indices();
                let (h, sign) = gen_normalize(s.apply(i), s.apply(j), s.apply(k)).unwrap();
                let v = a.get(&h).unwrap().clone();
                pulled.set(i, j, k, if sign.is_plus() { v } else { -v }).unwrap();
            }
            prop_assert_eq!(permuted.evaluate(&a).unwrap(), p.evaluate(&pulled).unwrap());
        }

        #[test]
        fn derivative_commutes_with_zeroing(p in arb_poly(), i in 1usize..=4) {
            let g1 = g(i, i + 1, i + 2);
            let g2 = g(1, 5, 6);
            prop_assert_eq!(
                p.set_generator_zero(&g2).partial_derivative(&g1),
                p.partial_derivative(&g1).set_generator_zero(&g2)
            );
        }

        #[test]
        fn text_and_json_round_trip(p in arb_poly()) {
            prop_assert_eq!(p.to_string().parse::<AntisymPoly>().unwrap(), p.clone());
            prop_assert_eq!(AntisymPoly::from_json(&p.to_json()).unwrap(), p);
        }
    }
}
