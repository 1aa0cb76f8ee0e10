//! Builders and checks shared by the property, equivalence and acceptance
//! suites. Builders map raw integer draws to structures so that proptest
//! strategies and seeded loops can share them.

#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;
use toric_poisson::engine;
use toric_poisson::exterior::{ExtElement, Scalar};
use toric_poisson::oracle::{
    affine_block, lift, projective_complex, weight_complex, PolyMultivector,
};
use toric_poisson::toric::{PoissonStructure, Space, Weight};
use toric_poisson::Error;

pub fn cp(n: usize) -> Space {
    Space::projective(n).unwrap()
}

pub fn cn(n: usize) -> Space {
    Space::affine(n).unwrap()
}

pub fn int(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn sign(e: usize) -> Scalar {
    if e % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Four draws per entry: a selector, then numerator/denominator material.
/// Selector residues give zero, ±1, a small integer, or a Gaussian rational
/// with parts bounded by 10, so degenerate structures show up often.
pub fn pi_from(n: usize, raw: &[i64]) -> PoissonStructure {
    let mut entries = Vec::new();
    let mut draws = raw.iter().copied().cycle();
    let mut next = || draws.next().unwrap_or(0);
    for i in 1..=n {
        for j in i + 1..=n {
            let (sel, a, b, c) = (next(), next(), next(), next());
            let value = match sel.rem_euclid(5) {
                0 => continue,
                1 => int(if a % 2 == 0 { 1 } else { -1 }),
                2 => int(a.rem_euclid(5) - 2),
                _ => Scalar::gaussian(
                    a.rem_euclid(21) - 10,
                    b.rem_euclid(10) + 1,
                    c.rem_euclid(21) - 10,
                    (a ^ c).rem_euclid(10) + 1,
                ),
            };
            entries.push((i, j, value));
        }
    }
    PoissonStructure::from_upper(n, &entries).unwrap()
}

pub fn random_raw(rng: &mut StdRng, len: usize) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-1000..1000)).collect()
}

/// Generic Gaussian-rational structure with parts bounded by 10.
pub fn generic_pi(rng: &mut StdRng, n: usize) -> PoissonStructure {
    PoissonStructure::random(n, 10, rng)
}

/// Homogeneous degree-`deg` element of `Λ N_C` with up to three terms.
pub fn ext_from(n: usize, deg: usize, raw: &[i64]) -> ExtElement {
    let mut out = ExtElement::zero(n, deg);
    for chunk in raw.chunks(deg + 1).take(3) {
        if chunk.len() < deg + 1 {
            break;
        }
        let idx: Vec<usize> = chunk[..deg]
            .iter()
            .map(|&x| x.rem_euclid(n as i64) as usize + 1)
            .collect();
        let m = ExtElement::monomial(n, &idx).unwrap();
        out = out
            .add(&m.scale(&int(chunk[deg].rem_euclid(7) - 3)))
            .unwrap();
    }
    out
}

/// Homogeneous multivector of degree `deg` on `ambient` variables with up to
/// three terms, exponents at most 2.
pub fn mv_from(ambient: usize, deg: usize, raw: &[i64]) -> PolyMultivector {
    let width = ambient + deg + 1;
    let mut out = PolyMultivector::zero(ambient);
    for chunk in raw.chunks(width).take(3) {
        if chunk.len() < width {
            break;
        }
        let exps: Vec<u32> = chunk[..ambient]
            .iter()
            .map(|&x| x.rem_euclid(3) as u32)
            .collect();
        let derivs: Vec<usize> = chunk[ambient..ambient + deg]
            .iter()
            .map(|&x| x.rem_euclid(ambient as i64) as usize)
            .collect();
        let c = int(chunk[width - 1].rem_euclid(9) - 4);
        out = out
            .add(&PolyMultivector::monomial(ambient, &exps, &derivs, c).unwrap())
            .unwrap();
    }
    out
}

pub fn check(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

pub fn wedge_bilinear(
    a: &ExtElement,
    b: &ExtElement,
    c: &ExtElement,
    s: i64,
) -> Result<(), String> {
    let s = int(s);
    let sum = a.add(&b.scale(&s)).unwrap();
    let left = sum.wedge(c).unwrap();
    let right = a
        .wedge(c)
        .unwrap()
        .add(&b.wedge(c).unwrap().scale(&s))
        .unwrap();
    check(left == right, || {
        format!("left linearity fails for {a}, {b}, {c}")
    })?;
    let left = c.wedge(&sum).unwrap();
    let right = c
        .wedge(a)
        .unwrap()
        .add(&c.wedge(b).unwrap().scale(&s))
        .unwrap();
    check(left == right, || {
        format!("right linearity fails for {a}, {b}, {c}")
    })
}

pub fn wedge_antisymmetric(a: &ExtElement, b: &ExtElement) -> Result<(), String> {
    let ab = a.wedge(b).unwrap();
    let ba = b.wedge(a).unwrap().scale(&sign(a.degree() * b.degree()));
    check(ab == ba, || {
        format!("graded commutativity fails for {a}, {b}")
    })?;
    if a.degree() % 2 == 1 {
        check(a.wedge(a).unwrap().is_zero(), || {
            format!("{a} ∧ {a} is nonzero")
        })?;
    }
    Ok(())
}

fn deg(p: &PolyMultivector) -> usize {
    p.degree().unwrap_or(0)
}

pub fn schouten_antisymmetric(p: &PolyMultivector, q: &PolyMultivector) -> Result<(), String> {
    let (dp, dq) = (deg(p) as i64, deg(q) as i64);
    let pq = p.schouten(q).unwrap();
    let qp = q.schouten(p).unwrap();
    let e = ((dp - 1) * (dq - 1)).rem_euclid(2) as usize;
    let expected = qp.scale(&(-sign(e)));
    check(pq == expected, || {
        format!("antisymmetry fails for {p} and {q}")
    })
}

pub fn schouten_leibniz(
    p: &PolyMultivector,
    q: &PolyMultivector,
    r: &PolyMultivector,
) -> Result<(), String> {
    let (dp, dq) = (deg(p) as i64, deg(q) as i64);
    let left = p.schouten(&q.wedge(r).unwrap()).unwrap();
    let e = ((dp - 1) * dq).rem_euclid(2) as usize;
    let right = p
        .schouten(q)
        .unwrap()
        .wedge(r)
        .unwrap()
        .add(&q.wedge(&p.schouten(r).unwrap()).unwrap().scale(&sign(e)))
        .unwrap();
    check(left == right, || format!("Leibniz fails for {p}, {q}, {r}"))
}

pub fn schouten_jacobi(
    p: &PolyMultivector,
    q: &PolyMultivector,
    r: &PolyMultivector,
) -> Result<(), String> {
    let (dp, dq) = (deg(p) as i64, deg(q) as i64);
    let left = p.schouten(&q.schouten(r).unwrap()).unwrap();
    let e = ((dp - 1) * (dq - 1)).rem_euclid(2) as usize;
    let right = p
        .schouten(q)
        .unwrap()
        .schouten(r)
        .unwrap()
        .add(&q.schouten(&p.schouten(r).unwrap()).unwrap().scale(&sign(e)))
        .unwrap();
    check(left == right, || format!("Jacobi fails for {p}, {q}, {r}"))
}

pub fn square_zero_projective(space: Space, pi: &PoissonStructure) -> Result<(), String> {
    projective_complex(space, pi)
        .unwrap()
        .check_square_zero()
        .map_err(|e| e.to_string())
}

pub fn square_zero_affine(space: Space, pi: &PoissonStructure, w: &Weight) -> Result<(), String> {
    weight_complex(space, pi, w)
        .unwrap()
        .check_square_zero()
        .map_err(|e| e.to_string())
}

/// `[π̃, v]` has only terms of the weight of the monomial `v`.
pub fn weight_preserved(
    space: Space,
    pi: &PoissonStructure,
    v: &PolyMultivector,
) -> Result<(), String> {
    let lifted = lift(space, pi).unwrap();
    let image = lifted.schouten(v).unwrap();
    let weights: std::collections::BTreeSet<Vec<i64>> =
        v.terms().keys().map(|t| t.weight()).collect();
    for t in image.terms().keys() {
        check(weights.contains(&t.weight()), || {
            format!("[π̃, {v}] has a term of weight {:?}", t.weight())
        })?;
    }
    Ok(())
}

/// Weight blocks on Cⁿ are closed under the differential.
pub fn block_closed(space: Space, pi: &PoissonStructure, w: &Weight) -> Result<(), String> {
    let lifted = lift(space, pi).unwrap();
    for k in 0..space.n {
        let src = affine_block(space, w, k).unwrap();
        let dst = affine_block(space, w, k + 1).unwrap();
        for v in src.representatives() {
            dst.coordinates(&lifted.schouten(&v).unwrap())
                .map_err(|e| e.to_string())?;
        }
    }
    Ok(())
}

pub fn scale_invariant(
    space: Space,
    pi: &PoissonStructure,
    c: &Scalar,
    bound: Option<u64>,
) -> Result<(), String> {
    let scaled = pi.scale(c);
    let a = engine::cohomology(space, pi, space.n, bound, true);
    let b = engine::cohomology(space, &scaled, space.n, bound, true);
    match (a, b) {
        (Ok(a), Ok(b)) => check(a.same_cohomology(&b), || {
            format!("scaling by {c} changes {space} report")
        }),
        (Err(x), Err(y)) => check(x == y, || format!("scaling changes error {x} to {y}")),
        (x, y) => Err(format!(
            "scaling changes outcome: {:?} vs {:?}",
            x.is_ok(),
            y.is_ok()
        )),
    }
}

/// Returns the number of degrees checked; infinite affine families are
/// skipped since the recursion concerns finite dimensions.
pub fn recursion_holds(space: Space, pi: &PoissonStructure) -> Result<usize, String> {
    let mut checked = 0;
    for k in 1..=space.n {
        match engine::recursion_check(space, pi, k) {
            Ok(true) => checked += 1,
            Ok(false) => return Err(format!("recursion fails at k = {k} on {space}")),
            Err(Error::MissingDegreeBound { .. }) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(checked)
}

/// Nonzero Gaussian rational from two draws.
pub fn nonzero_scalar(a: i64, b: i64) -> Scalar {
    let re = a.rem_euclid(11) - 5;
    let im = b.rem_euclid(11) - 5;
    if re == 0 && im == 0 {
        int(3)
    } else {
        Scalar::gaussian(re, b.rem_euclid(4) + 1, im, a.rem_euclid(3) + 1)
    }
}
