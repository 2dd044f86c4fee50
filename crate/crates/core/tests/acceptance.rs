//! Acceptance criteria AC1..AC9. Each criterion prints one PASS/FAIL line.
//!
//! `KNOWN_FAILURES` lists criteria whose stated outcome disagrees with what the
//! exact computation finds. Those lines print FAIL with the observed data, and the
//! suite asserts that the observation is unchanged, so a silent change in either
//! direction is caught.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use homlie_core::catalog::{osp12, osp12_plus_line, sl2, abelian};
use homlie_core::cohomology::{
    central_extension, central_extension_data, coboundary, cohomology, extension_to_cocycle,
    hom_cochain_space, verify_complex, SignConvention,
};
use homlie_core::derivations::{
    alphak_derivations, derivation_commutator, inner_derivations, z1_equals_der,
};
use homlie_core::linalg::{unflatten, SparseVec, Subspace};
use homlie_core::qwitt::{
    b_coefficient, build_window, graded_derivation_solve, inner_coefficient, q_derivation_solve,
    scalar_two_cocycles, Kind, Window, WittIndex,
};
use homlie_core::repr::Representation;
use homlie_core::scalars::{FieldSpec, Rational, Scalar};
use homlie_core::Parity;

const KNOWN_FAILURES: &[&str] = &["AC3"];

struct Line {
    id: &'static str,
    passed: bool,
    detail: String,
}

fn q2() -> FieldSpec {
    FieldSpec::specialized(Rational::from_int(2))
}

fn within(t: Instant, limit: u64) -> (bool, Duration) {
    let e = t.elapsed();
    (e <= Duration::from_secs(limit), e)
}

fn ac1() -> Line {
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    let mut dims = Vec::new();
    for l in ["2", "1/2", "3"] {
        let a = osp12(&l.parse().unwrap()).unwrap();
        let triv = Representation::trivial_scalar(&a);
        for r in 1..=3 {
            let t = Instant::now();
            let h: usize = Parity::BOTH
                .iter()
                .map(|&p| cohomology(&a, &triv, 2, r, p, SignConvention::Standard).unwrap().dim_h())
                .sum();
            let (fast, e) = within(t, 5);
            slowest = slowest.max(e);
            ok &= h == 0 && fast;
            dims.push(h);
        }
    }
    Line { id: "AC1", passed: ok, detail: format!("dim H^2 over 9 cases {dims:?}, slowest {slowest:?}") }
}

fn ac2() -> Line {
    let t = Instant::now();
    let a = osp12(&Rational::from_int(2)).unwrap();
    let modules = [
        ("trivial", Representation::trivial_scalar(&a)),
        ("ad_0", Representation::adjoint(&a, 0).unwrap()),
        ("ad_1", Representation::adjoint(&a, 1).unwrap()),
    ];
    let mut ok = true;
    let mut evaluated = 0;
    for (_, rep) in &modules {
        for r in 1..=2 {
            let rep = verify_complex(&a, rep, r, 3, SignConvention::Standard).unwrap();
            evaluated += rep.evaluated;
            ok &= rep.passed();
        }
    }
    let (fast, e) = within(t, 30);
    Line {
        id: "AC2",
        passed: ok && fast,
        detail: format!("delta^2 = 0 on {evaluated} basis cochains (k <= 3, both parities, r in 1..2), {e:?}"),
    }
}

/// Coefficient `n` on `L_n` and `1` on `G_n`: the shape shared by D1 (degree 0)
/// and D2 (degree -1, odd).
fn stated_shape(w: &Window, x: WittIndex) -> Scalar {
    match x.kind {
        Kind::L => w.field().int(x.n),
        Kind::G => w.field().one(),
    }
}

fn ac3() -> (Line, Vec<(Parity, i64, usize)>) {
    let t = Instant::now();
    let w = build_window(10, q2()).unwrap();
    let mut dims = Vec::new();
    let mut ok = true;
    let mut notes = Vec::new();
    for parity in Parity::BOTH {
        for s in -3..=3 {
            let b = graded_derivation_solve(&w, 0, parity, s).unwrap();
            dims.push((parity, s, b.dim()));
            match (parity, s) {
                (Parity::Even, 0) => {
                    // D1(L_n) = n L_n, D1(G_n) = G_n
                    let d1 = b.is_line_through(|x| stated_shape(&w, x));
                    ok &= d1;
                    notes.push(format!("even s=0: dim {} (D1 spans it: {d1})", b.dim()));
                }
                (Parity::Odd, -1) => {
                    // D2(L_n) = n G_{n-1}, D2(G_n) = L_{n-1}
                    let d2 = b.is_line_through(|x| stated_shape(&w, x));
                    ok &= d2;
                    notes.push(format!("odd s=-1: dim {} (D2 spans it: {d2})", b.dim()));
                }
                _ => {
                    if b.dim() != 0 {
                        ok = false;
                        notes.push(format!("{parity:?} s={s}: dim {}", b.dim()));
                    }
                }
            }
        }
    }
    let (fast, e) = within(t, 20);
    (Line { id: "AC3", passed: ok && fast, detail: format!("{}; {e:?}", notes.join("; ")) }, dims)
}

fn ac4() -> Line {
    let w = build_window(10, q2()).unwrap();
    let mut dims = Vec::new();
    for parity in Parity::BOTH {
        for s in -3..=3 {
            dims.push(graded_derivation_solve(&w, 1, parity, s).unwrap().dim());
        }
    }
    let ok = dims.iter().all(|&d| d == 0);
    Line { id: "AC4", passed: ok, detail: format!("alpha^1-derivation dims for s in [-3,3], both parities: {dims:?}") }
}

fn ac5() -> Line {
    let w = build_window(10, q2()).unwrap();
    let mut ok = true;
    let mut count = 0;
    for parity in Parity::BOTH {
        for s in -2..=2 {
            let b = q_derivation_solve(&w, parity, s).unwrap();
            let inner = b.is_line_through(|x| inner_coefficient(&w, parity, s, x));
            ok &= b.dim() == 1 && inner;
            count += usize::from(b.dim() == 1 && inner);
        }
    }
    Line { id: "AC5", passed: ok, detail: format!("{count}/10 bands are the line through ad_L_s or ad_G_s") }
}

fn ac6() -> Line {
    let t = Instant::now();
    let mut ok = true;
    let mut notes = Vec::new();
    for n_max in [8, 10] {
        let w = build_window(n_max, q2()).unwrap();
        let h = scalar_two_cocycles(&w, SignConvention::Standard).unwrap();
        let mut good = h.dim == 2 && h.representatives.len() == 2 && h.coboundaries_are_cocycles;
        if good {
            // supports on the two antidiagonals
            good &= h.representatives[0].keys().all(|(x, y)| x.kind == Kind::L && y.kind == Kind::L && x.n + y.n == 0);
            good &= h.representatives[1].keys().all(|(x, y)| x.kind != y.kind && x.n + y.n == -1);
            let lim = n_max - h.margin;
            for n in -lim..=lim {
                let b = b_coefficient(w.field(), n).unwrap();
                let v = h.value(0, WittIndex::l(n), WittIndex::l(-n)).unwrap_or_else(|| w.field().zero());
                good &= v == b;
            }
        }
        notes.push(format!("N={n_max}: dim {}", h.dim));
        ok &= good;
    }
    let (fast, e) = within(t, 60);
    Line {
        id: "AC6",
        passed: ok && fast,
        detail: format!("{}; phi1 coefficients equal b_n on the interior; {e:?}", notes.join(", ")),
    }
}

fn random_in(rng: &mut ChaCha8Rng, space: &Subspace, mode: homlie_core::scalars::FieldMode) -> SparseVec {
    space.basis().iter().fold(SparseVec::new(), |acc, b| {
        acc.add_scaled(&Scalar::from_int(mode, rng.gen_range(-3..=3)), b)
    })
}

fn ac7() -> Line {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let a = osp12(&Rational::from_int(2)).unwrap();
    let mode = a.mode();
    let n = a.dim();
    // commutator closure
    let pairs = [(0, 0), (0, 1), (1, 0), (1, 1), (0, 2), (2, 1), (-1, 0), (0, -1)];
    let spaces: std::collections::HashMap<(i64, Parity), _> = [-1, 0, 1, 2]
        .into_iter()
        .flat_map(|k| Parity::BOTH.map(|p| ((k, p), alphak_derivations(&a, k, p).unwrap())))
        .collect();
    let mut closure_ok = 0;
    for i in 0..200 {
        let (k, s) = pairs[i % pairs.len()];
        let (p, q) = (Parity::BOTH[rng.gen_range(0..2)], Parity::BOTH[rng.gen_range(0..2)]);
        let d = unflatten(&random_in(&mut rng, &spaces[&(k, p)].space, mode), n, n, mode);
        let e = unflatten(&random_in(&mut rng, &spaces[&(s, q)].space, mode), n, n, mode);
        closure_ok += usize::from(derivation_commutator(&a, &d, k, &e, s).is_ok());
    }
    // twists and centroids
    let mut twist_ok = a.twist(a.alpha()).map(|b| b.is_hom_lie()).unwrap_or(false);
    for base in [sl2(), abelian(2, 1)] {
        let c = base.centroid().unwrap();
        for _ in 0..3 {
            let theta = unflatten(&random_in(&mut rng, &c, base.mode()), base.dim(), base.dim(), base.mode());
            twist_ok &= base.centroid_twist(&theta).map(|b| b.is_hom_lie()).unwrap_or(false);
        }
    }
    // central extension iff, on the algebra with an extra central line
    let b = osp12_plus_line(&Rational::from_int(2)).unwrap();
    let triv = Representation::trivial_scalar(&b);
    let (space, compat) = hom_cochain_space(&b, &triv, 2, Parity::Even);
    let z = cohomology(&b, &triv, 2, 1, Parity::Even, SignConvention::Standard).unwrap().z;
    let (mut iff_ok, mut cocycles, mut round_trip) = (0, 0, true);
    for i in 0..20 {
        let v = if i % 2 == 0 { random_in(&mut rng, &z, b.mode()) } else { random_in(&mut rng, &compat, b.mode()) };
        let theta = space.to_cochain(&v);
        let is_cocycle = coboundary(&theta, &b, &triv, 1, SignConvention::Standard).unwrap().is_zero();
        let hom_lie = central_extension(&b, &theta).unwrap().is_hom_lie();
        iff_ok += usize::from(is_cocycle == hom_lie);
        cocycles += usize::from(is_cocycle);
        if is_cocycle {
            let data = central_extension_data(&b, &theta).unwrap();
            let back = extension_to_cocycle(&data).unwrap();
            round_trip &= back.is_cocycle && back.cocycle == theta;
        }
    }
    let both_directions = cocycles > 0 && cocycles < 20;
    let ok = closure_ok == 200 && twist_ok && iff_ok == 20 && both_directions && round_trip;
    let (fast, e) = within(t, 60);
    Line {
        id: "AC7",
        passed: ok && fast,
        detail: format!(
            "closure {closure_ok}/200, twist/centroid outputs Hom-Lie: {twist_ok}, extension iff {iff_ok}/20 ({cocycles} cocycles), round trip: {round_trip}; {e:?}"
        ),
    }
}

fn ac8() -> Line {
    let a = osp12(&Rational::from_int(2)).unwrap();
    let mut ok = true;
    let mut notes = Vec::new();
    for s in [-1, 0, 1] {
        for p in Parity::BOTH {
            let c = z1_equals_der(&a, s, p, SignConvention::Standard).unwrap();
            ok &= c.equal();
            notes.push(format!("s={s},{}:{}", p.bit(), c.cocycles.dim()));
        }
    }
    let ad0 = Representation::adjoint(&a, 0).unwrap();
    let mut h1 = 0;
    let mut quotient = 0;
    for p in Parity::BOTH {
        h1 += cohomology(&a, &ad0, 1, 1, p, SignConvention::Standard).unwrap().dim_h();
        quotient += alphak_derivations(&a, 1, p).unwrap().dim() - inner_derivations(&a, 1, p).unwrap().dim();
    }
    ok &= h1 == quotient;
    Line {
        id: "AC8",
        passed: ok,
        detail: format!("Z^1(ad_s) = Der_(alpha^(s+1)) dims [{}]; dim H^1(ad_0) = {h1}, dim Der_alpha - dim Inn_alpha = {quotient}", notes.join(" ")),
    }
}

fn ac9() -> Line {
    Line {
        id: "AC9",
        passed: true,
        detail: "claims about all degrees are checked on windows |n| <= N (N in {8, 10}) with interior margins |s|+2 and 2, and for s in [-3, 3] only; no statement about the infinite algebra is asserted".into(),
    }
}

#[test]
fn acceptance_criteria() {
    let (l3, dims3) = ac3();
    let lines = vec![ac1(), ac2(), l3, ac4(), ac5(), ac6(), ac7(), ac8(), ac9()];
    for l in &lines {
        let tag = if l.passed { "PASS" } else { "FAIL" };
        let known = if !l.passed && KNOWN_FAILURES.contains(&l.id) { " [known deviation]" } else { "" };
        println!("{} {tag}{known}: {}", l.id, l.detail);
    }
    for l in &lines {
        assert_eq!(l.passed, !KNOWN_FAILURES.contains(&l.id), "{} changed status: {}", l.id, l.detail);
    }
    // the observation behind the known AC3 deviation
    let nonzero: Vec<_> = dims3.iter().filter(|(_, _, d)| *d > 0).map(|&(p, s, d)| (p.bit(), s, d)).collect();
    assert_eq!(nonzero, vec![(0, 0, 2), (1, -1, 1), (1, 1, 1)]);
}
