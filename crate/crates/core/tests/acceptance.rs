//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pfaffian_tree::linkinv::{conway_c2m2, conway_cm1, LinkData, LinkingMatrix};
use pfaffian_tree::orient::Permutation;
use pfaffian_tree::pfaffian::{
    determinant_integer, pf_minor_sequence, pf_numeric, pf_row_development, Matrix, SkewMatrix,
};
use pfaffian_tree::relations::{
    complete_square, contraction_deletion_check, four_term_check, square_recursive,
    square_second_partial, three_term_check,
};
use pfaffian_tree::treepoly::{
    complete_poly, kirchhoff_poly, lambda_matrix, pfaffian_tree_poly, tree_generating_function,
};
use pfaffian_tree::{AntisymPoly, CommPoly, Generator, Monomial, OrientationClass, Ring, SimpleGraph, ThreeGraph};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, Option<u64>, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn main_theorem() -> Check {
    for m in [3, 5, 7, 9] {
        let g = ThreeGraph::complete(m).map_err(err)?;
        let pf = pfaffian_tree_poly(&g, 1).map_err(err)?;
        let trees = tree_generating_function(&g, &OrientationClass::canonical(m)).map_err(err)?;
        ensure(pf == trees, || format!("m={m}: Pfaffian and tree sum differ"))?;
    }
    Ok(())
}

fn small_polynomials() -> Check {
    let p3 = complete_poly(3).map_err(err)?;
    ensure(*p3 == AntisymPoly::y(1, 2, 3), || format!("P_3 = {p3}"))?;
    let p5 = complete_poly(5).map_err(err)?;
    ensure(p5.len() == 15, || format!("P_5 has {} terms", p5.len()))?;
    ensure(
        p5.terms().all(|(_, c)| *c == BigInt::from(1) || *c == BigInt::from(-1)),
        || "P_5 has a coefficient other than ±1".into(),
    )?;
    let lead: Monomial = "y[1,2,3]*y[1,4,5]".parse().map_err(err)?;
    ensure(p5.coefficient(&lead) == BigInt::from(1), || "y123*y145 missing".into())?;
    // (1/8) Σ_σ (−1)^σ y_{σ1σ2σ3} y_{σ1σ4σ5}
    let mut sum = AntisymPoly::zero_poly();
    let mut perm: Vec<usize> = (1..=5).collect();
    permutations(&mut perm, 0, &mut |s| {
        let sign = Permutation::from_images(s.to_vec()).expect("permutation").parity();
        let t = &AntisymPoly::y(s[0], s[1], s[2]) * &AntisymPoly::y(s[0], s[3], s[4]);
        sum = if sign.is_plus() { &sum + &t } else { &sum - &t };
    });
    ensure(sum == p5.scalar_mul(&BigInt::from(8)), || "8·P_5 differs from the signed sum".into())
}

fn permutations(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        f(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, f);
        v.swap(k, i);
    }
}

fn tree_counts() -> Check {
    for (m, want) in [(3, 1), (5, 15), (7, 735)] {
        let g = ThreeGraph::complete(m).map_err(err)?;
        let n = g.spanning_trees().len();
        ensure(n == want, || format!("Γ_{m} has {n} trees"))?;
    }
    // independent count: every 3-subset of Γ_7's edges
    let g7 = ThreeGraph::complete(7).map_err(err)?;
    let e = g7.edge_count();
    let mut brute = 0;
    for a in 0..e {
        for b in a + 1..e {
            for c in b + 1..e {
                if g7.spanning_subgraph(&[a, b, c]).map_err(err)?.is_tree() {
                    brute += 1;
                }
            }
        }
    }
    ensure(brute == 735, || format!("brute count {brute}"))?;
    let p7 = complete_poly(7).map_err(err)?;
    ensure(p7.len() == 735, || format!("P_7 has {} monomials", p7.len()))
}

fn pivot_independence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let all: Vec<Vec<[usize; 3]>> = [3, 5, 7, 9]
        .iter()
        .map(|&m| ThreeGraph::complete(m).expect("complete").edges().to_vec())
        .collect();
    for n in 0..50 {
        let (m, idx) = [(3, 0), (5, 1), (7, 2), (9, 3)][n % 4];
        let density = if m == 9 { 0.35 } else { 0.6 };
        let edges = all[idx].iter().copied().filter(|_| rng.gen_bool(density)).collect();
        let g = ThreeGraph::new(m, edges).map_err(err)?;
        let (_, ok) = pf_minor_sequence(&lambda_matrix(&g)).map_err(err)?;
        ensure(ok, || format!("graph {n} (m={m}): pivots disagree"))?;
    }
    Ok(())
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> SkewMatrix<BigInt> {
    SkewMatrix::from_upper(n, |_, _| BigInt::from(rng.gen_range(-6..=6)))
}

fn pfaffian_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for k in 0..200 {
        let n = 2 * (1 + k % 5);
        let a = random_skew(&mut rng, n);
        let pf = pf_row_development(&a).map_err(err)?;
        let det = determinant_integer(a.matrix()).map_err(err)?;
        ensure(&pf * &pf == det, || format!("matrix {k}: Pf² ≠ det"))?;
        let q = pf_numeric(&a.map(|x| BigRational::from_integer(x.clone()))).map_err(err)?;
        ensure(q == BigRational::from_integer(pf.clone()), || format!("matrix {k}: numeric Pf differs"))?;
        let s = Matrix::from_fn(n, n, |_, _| BigInt::from(rng.gen_range(-3..=3)));
        let lhs = pf_row_development(&a.congruence(&s).map_err(err)?).map_err(err)?;
        let rhs = determinant_integer(&s).map_err(err)? * &pf;
        ensure(lhs == rhs, || format!("matrix {k}: Pf(SᵀAS) ≠ det S · Pf A"))?;
    }
    Ok(())
}

fn identity_suites() -> Check {
    for m in [5, 7] {
        let g = ThreeGraph::complete(m).map_err(err)?;
        let o = OrientationClass::canonical(m);
        for (idx, e) in g.edges().iter().enumerate() {
            ensure(contraction_deletion_check(&g, &o, idx, *e).map_err(err)?, || {
                format!("contraction-deletion fails at Γ_{m}, {e:?}")
            })?;
        }
        let idx = g.edges().iter().position(|e| *e == [1, 2, 4]).expect("edge 124");
        ensure(contraction_deletion_check(&g, &o, idx, [1, 2, 4]).map_err(err)?, || {
            format!("contraction-deletion fails at Γ_{m}, (124)")
        })?;
    }
    for m in [3, 5, 7] {
        ensure(three_term_check(m).map_err(err)?, || format!("three-term fails at m={m}"))?;
    }
    for m in [5, 7] {
        for a in 1..=m {
            for b in a + 1..=m {
                for c in b + 1..=m {
                    for d in c + 1..=m {
                        ensure(four_term_check(m, [a, b, c, d]).map_err(err)?, || {
                            format!("four-term fails at m={m}, {{{a},{b},{c},{d}}}")
                        })?;
                    }
                }
            }
        }
    }
    let g7 = ThreeGraph::complete(7).map_err(err)?;
    for p in 1..=7 {
        let gens: Vec<Generator> = g7
            .edges()
            .iter()
            .filter(|e| e.contains(&p))
            .map(|e| Generator::new(e[0], e[1], e[2]).expect("sorted"))
            .collect();
        for (i, g1) in gens.iter().enumerate() {
            for g2 in &gens[i..] {
                square_second_partial(7, p, g1, g2).map_err(err)?;
            }
        }
    }
    Ok(())
}

fn squares() -> Check {
    for m in [3, 5, 7] {
        let rec = square_recursive(m).map_err(err)?;
        let direct = complete_square(m).map_err(err)?;
        ensure(rec == direct, || format!("recursive P_{m}² differs"))?;
    }
    let cases = [
        (3, "y[1,2,3]^2", 1),
        (7, "y[1,4,5]*y[1,4,6]*y[2,5,6]*y[2,5,7]*y[3,4,7]*y[3,6,7]", 6),
        (5, "y[1,2,3]^2*y[2,4,5]*y[3,4,5]", 2),
    ];
    for (m, mono, want) in cases {
        let mono: Monomial = mono.parse().map_err(err)?;
        let c = complete_square(m).map_err(err)?.coefficient(&mono);
        ensure(c == BigInt::from(want), || format!("coefficient of {mono} in P_{m}² is {c}"))?;
    }
    Ok(())
}

fn link_coefficients() -> Check {
    let mut b = LinkData::new(3);
    b.set(1, 2, 3, BigInt::from(1)).map_err(err)?;
    let r = conway_c2m2(&b).map_err(err)?;
    ensure(r.value == BigInt::from(1), || format!("Borromean c_4 = {}", r.value))?;
    let mut lk = LinkingMatrix::new(3);
    for (i, j) in [(1, 2), (1, 3), (2, 3)] {
        lk.set(i, j, BigInt::from(1)).map_err(err)?;
    }
    let c2 = conway_cm1(&lk).map_err(err)?;
    ensure(c2 == BigInt::from(3), || format!("c_2 = {c2}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for n in 0..50 {
        let m = if n % 2 == 0 { 5 } else { 7 };
        let mut d = LinkData::new(m);
        for i in 1..=m {
            for j in i + 1..=m {
                for k in j + 1..=m {
                    d.set(i, j, k, BigInt::from(rng.gen_range(-3..=3))).map_err(err)?;
                }
            }
        }
        // conway_c2m2 compares P_m(μ)² with det Λ^(p)(μ) for every p
        conway_c2m2(&d).map_err(err)?;
    }
    Ok(())
}

fn kirchhoff() -> Check {
    let k3 = SimpleGraph::complete(3).map_err(err)?;
    let x = CommPoly::var;
    // K_3 edges in order 12, 13, 23
    let want = x(1).mul(&x(3)).add(&x(1).mul(&x(2))).add(&x(2).mul(&x(3)));
    ensure(kirchhoff_poly(&k3, 1).map_err(err)? == want, || "D_{K_3} differs".into())?;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for m in 2..=7 {
        for _ in 0..3 {
            let mut edges: Vec<[usize; 2]> = SimpleGraph::complete(m)
                .map_err(err)?
                .edges()
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(0.6))
                .collect();
            edges.shuffle(&mut rng);
            let g = SimpleGraph::new(m, edges).map_err(err)?;
            let k = kirchhoff_poly(&g, 1 + rng.gen_range(0..m)).map_err(err)?;
            ensure(k.terms().all(|(_, c)| *c == BigInt::from(1)), || format!("coefficient ≠ 1 on K_{m} subgraph"))?;
            let mut trees = CommPoly::zero();
            for t in g.spanning_trees() {
                trees = trees.add(&CommPoly::monomial(t.iter().map(|i| i + 1).collect(), BigInt::from(1)));
            }
            ensure(k == trees, || format!("Kirchhoff ≠ tree sum on a {m}-vertex graph"))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("main theorem for m in {3,5,7,9}", Some(60), main_theorem),
        ("P_3, P_5 and the signed permutation sum", None, small_polynomials),
        ("tree counts 1, 15, 735 and |P_7| = 735", None, tree_counts),
        ("pivot independence on 50 random 3-graphs", Some(30), pivot_independence),
        ("Pf² = det and Pf(SᵀAS) = det S · Pf A on 200 matrices", Some(10), pfaffian_laws),
        ("contraction-deletion, three-term, four-term, corollary", Some(120), identity_suites),
        ("recursive squares and remark coefficients", None, squares),
        ("link coefficients and 50 random μ", Some(30), link_coefficients),
        ("Kirchhoff baseline", None, kirchhoff),
    ];
    let mut failed = 0;
    for (n, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let over = budget.is_some_and(|b| elapsed > Duration::from_secs(b));
        let status = match (&result, over) {
            (Ok(()), false) => "PASS".to_string(),
            (Ok(()), true) => format!("FAIL (over {}s budget)", budget.unwrap()),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !status.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {}: {status} {name} [{:.2}s]", n + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
