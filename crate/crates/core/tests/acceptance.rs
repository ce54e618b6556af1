//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits nonzero if any fails.

use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use staudt::arith::{RatFunc, Rational, Truncated};
use staudt::arrangement::standard_triangle;
use staudt::deform::h0_h1_dims;
use staudt::gadgets::{
    compose, gadget_add, gadget_const, gadget_identity, gadget_mul, gadget_sub, propagate,
    verify_functional, FunctionalArrangement, Realization, Sign,
};
use staudt::geom::{ProjLine, ProjPoint};
use staudt::geometrizer::{
    check_zero_fiber, compile_system, geo, is_weighted_homogeneous, parse_polys, parse_system, tau,
    violations_at, PolySystem,
};
use staudt::groups::{
    artin_presentation, build_lambda, extended_artin_presentation, malcev_presentation,
    shephard_presentation, LabelledGraph, LieRelation,
};
use staudt::represent::{
    alg, alg_standard, centralizer_dim, eta, group_closure, is_nondegenerate, is_stable,
    projective_order, Representation,
};

type Check = Result<(), String>;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Check {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn c1_mul_symbolic() -> Check {
    let start = Instant::now();
    let a = RatFunc::var(0);
    let b = RatFunc::var(1);
    let r = propagate(&gadget_mul(), &[a.clone(), b.clone()]).map_err(|e| e.to_string())?;
    let one = RatFunc::one();
    let zero = RatFunc::zero();
    let pt = |c: [RatFunc; 3]| ProjPoint::from_coords(c).unwrap();
    let ln = |c: [RatFunc; 3]| ProjLine::from_coords(c).unwrap();
    let lines = [
        ("l1", ln([one.clone(), zero.clone(), -a.clone()])),
        ("l2", ln([one.clone(), b.clone() - one.clone(), -b.clone()])),
        (
            "m1",
            ln([-one.clone(), one.clone() - b.clone(), a.clone() * b.clone()]),
        ),
    ];
    let points = [
        ("v", pt([a.clone(), a.clone(), one.clone()])),
        (
            "u",
            pt([b.clone() - one.clone(), -one.clone(), zero.clone()]),
        ),
        ("w1", pt([a.clone() * b.clone(), zero.clone(), one.clone()])),
    ];
    for (n, want) in &lines {
        ensure(r.line(n).ok() == Some(want), || {
            format!("{n} = {:?}", r.line(n))
        })?;
    }
    for (n, want) in &points {
        ensure(r.point(n).ok() == Some(want), || {
            format!("{n} = {:?}", r.point(n))
        })?;
    }
    within(start, Duration::from_secs(1))
}

type Expr = Box<dyn Fn(&[Rational]) -> Rational>;

fn primitive(rng: &mut ChaCha8Rng) -> (FunctionalArrangement, Expr) {
    match rng.gen_range(0..6) {
        0 => (gadget_mul(), Box::new(|x: &[Rational]| &x[0] * &x[1])),
        1 => (gadget_add(), Box::new(|x: &[Rational]| &x[0] + &x[1])),
        2 => (gadget_sub(), Box::new(|x: &[Rational]| &x[0] - &x[1])),
        3 => (gadget_const(Sign::Plus), Box::new(|_: &[Rational]| q(1))),
        4 => (gadget_const(Sign::Minus), Box::new(|_: &[Rational]| q(-1))),
        _ => (gadget_identity(), Box::new(|x: &[Rational]| x[0].clone())),
    }
}

/// `f` with `g` plugged into input `idx`, matching [`compose`]'s input order.
fn compose_expr(f: Expr, g: Expr, k: usize, idx: usize) -> Expr {
    Box::new(move |x: &[Rational]| {
        let mut args: Vec<Rational> = x[k..].to_vec();
        args.insert(idx, g(&x[..k]));
        f(&args)
    })
}

fn random_composition(
    rng: &mut ChaCha8Rng,
    depth: usize,
) -> Result<(FunctionalArrangement, Expr), String> {
    let (mut fa, mut ex) = primitive(rng);
    for _ in 0..depth {
        let (p, pe) = primitive(rng);
        let (f, fe, g, ge) = if rng.gen_bool(0.5) {
            (fa, ex, p, pe)
        } else {
            (p, pe, fa, ex)
        };
        let idx = rng.gen_range(0..f.inputs().len());
        let k = g.inputs().len();
        fa = compose(&f, &g, idx).map_err(|e| e.to_string())?;
        ex = compose_expr(fe, ge, k, idx);
    }
    Ok((fa, ex))
}

fn c2_gadgets_functional() -> Check {
    let start = Instant::now();
    let names = ["x1".to_string(), "x2".to_string()];
    let cases: [(FunctionalArrangement, &str); 4] = [
        (gadget_add(), "x1 + x2"),
        (gadget_sub(), "x1 - x2"),
        (gadget_const(Sign::Plus), "1"),
        (gadget_const(Sign::Minus), "-1"),
    ];
    for (fa, want) in &cases {
        let out = verify_functional(fa).map_err(|e| e.to_string())?;
        ensure(
            out.len() == 1 && out[0].display_with(&names) == *want,
            || format!("expected {want}, got {:?}", out),
        )?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for i in 0..10 {
        let depth = 1 + i % 5;
        let (fa, ex) = random_composition(&mut rng, depth)?;
        let out = verify_functional(&fa).map_err(|e| format!("composition {i}: {e}"))?;
        ensure(out.len() == 1, || {
            format!("composition {i}: {} outputs", out.len())
        })?;
        for _ in 0..3 {
            let x: Vec<Rational> = (0..fa.inputs().len())
                .map(|_| Rational::new(rng.gen_range(-9..10).into(), rng.gen_range(1..5).into()))
                .collect();
            ensure(out[0].eval(&x) == Some(ex(&x)), || {
                format!("composition {i} disagrees at {x:?}")
            })?;
        }
        let r = propagate(
            &fa,
            &(0..fa.inputs().len())
                .map(|j| q(j as i64 + 2))
                .collect::<Vec<_>>(),
        )
        .map_err(|e| e.to_string())?;
        ensure(r.violations(fa.arrangement()).is_empty(), || {
            format!("composition {i} violates incidences")
        })?;
    }
    within(start, Duration::from_secs(10))
}

fn sample_point(rng: &mut ChaCha8Rng, which: usize) -> Vec<Rational> {
    let rq = |rng: &mut ChaCha8Rng| {
        Rational::new(rng.gen_range(-9..10).into(), rng.gen_range(1..6).into())
    };
    let hit = rng.gen_bool(0.5);
    match which {
        0 => vec![if hit { q(rng.gen_range(0..2)) } else { rq(rng) }],
        1 => {
            let x = loop {
                let x = rq(rng);
                if !x.is_zero() {
                    break x;
                }
            };
            let y = if hit { x.recip() } else { rq(rng) };
            vec![x, y]
        }
        _ => vec![if hit { q(0) } else { rq(rng) }],
    }
}

fn c3_universality() -> Check {
    let start = Instant::now();
    let systems = ["x1*x1 - x1 = 0", "x1*x2 - 1 = 0", "(x1*x1)*(x1*x1)*x1 = 0"];
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (k, src) in systems.iter().enumerate() {
        let sys = parse_system(src).map_err(|e| e.to_string())?;
        let fa = compile_system(&sys).map_err(|e| e.to_string())?;
        let (mut sols, mut non) = (0, 0);
        for _ in 0..100 {
            let x = sample_point(&mut rng, k);
            if sys.first_nonzero(&x).is_none() {
                sols += 1;
                let r = geo(&sys, &fa, &x).map_err(|e| format!("{src} at {x:?}: {e}"))?;
                ensure(tau(&fa, &r).ok() == Some(x.clone()), || {
                    format!("{src}: tau(geo(x)) != x")
                })?;
            } else {
                non += 1;
                ensure(geo(&sys, &fa, &x).is_err(), || {
                    format!("{src}: geo accepted {x:?}")
                })?;
                let v = violations_at(&fa, &x).map_err(|e| e.to_string())?;
                ensure(
                    v.iter().any(|(p, _)| p == fa.based().base_of("v00")),
                    || format!("{src} at {x:?}: output incidence holds, violations {v:?}"),
                )?;
            }
        }
        ensure(sols > 0 && non > 0, || {
            format!("{src}: {sols} solutions, {non} non-solutions sampled")
        })?;
    }
    within(start, Duration::from_secs(30))
}

fn quintic() -> Result<(PolySystem, FunctionalArrangement), String> {
    let sys = parse_system("(x1*x1)*(x1*x1)*x1 = 0").map_err(|e| e.to_string())?;
    let fa = compile_system(&sys).map_err(|e| e.to_string())?;
    Ok((sys, fa))
}

fn c4_zero_fiber() -> Check {
    let (sys, fa) = quintic()?;
    let r = geo(&sys, &fa, &[q(0)]).map_err(|e| e.to_string())?;
    ensure(check_zero_fiber(&fa, &r), || {
        "a non-triangle element leaves the special fibre".into()
    })
}

fn c5_truncated_tangent() -> Check {
    let (sys, fa) = quintic()?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in 1..=4usize {
        for _ in 0..20 {
            let coeffs: Vec<Rational> = std::iter::once(q(0))
                .chain((0..m).map(|_| q(rng.gen_range(-5..6))))
                .collect();
            let x = vec![Truncated::new(m, coeffs)];
            ensure(sys.first_nonzero(&x).is_none(), || {
                format!("x^5 != 0 for {} in trunc({m})", x[0])
            })?;
            let r = geo(&sys, &fa, &x).map_err(|e| format!("trunc({m}) at {}: {e}", x[0]))?;
            ensure(tau(&fa, &r).ok() == Some(x.clone()), || {
                format!("trunc({m}): tau(geo(x)) != x")
            })?;
            let shifted = vec![x[0].clone() + Truncated::new(m, vec![q(rng.gen_range(1..4))])];
            ensure(sys.first_nonzero(&shifted).is_some(), || {
                "unit shift is a solution".into()
            })?;
            let v = violations_at(&fa, &shifted).map_err(|e| e.to_string())?;
            ensure(!v.is_empty(), || {
                format!("trunc({m}): non-solution propagates cleanly")
            })?;
        }
    }
    Ok(())
}

fn c6_triangle_representation() -> Check {
    let rep = alg_standard();
    let bad: Vec<String> = rep
        .verify_relations()
        .into_iter()
        .filter(|c| !c.holds)
        .map(|c| c.relation)
        .collect();
    ensure(bad.is_empty(), || format!("failing relations {bad:?}"))?;
    let g = |n: &str| rep.image(n).unwrap().clone();
    let o3 = projective_order(&g("v00").mul(&g("v11")), 12);
    let o4 = projective_order(&g("v00").mul(&g("v10")), 12);
    ensure(o3 == Some(3), || format!("order of g_v00 g_v11 is {o3:?}"))?;
    ensure(o4 == Some(4), || format!("order of g_v00 g_v10 is {o4:?}"))?;
    let c = centralizer_dim(&rep);
    ensure(c == 0, || format!("centralizer dimension {c}"))?;
    let n = group_closure(&rep, 1000);
    ensure(n == Some(12), || {
        format!("image group has order {n:?}, expected 12")
    })
}

fn graph(n: usize, edges: &[(usize, usize, u32)], labels: &[u32]) -> LabelledGraph {
    let mut g = LabelledGraph::new((0..n).map(|i| format!("g{i}")).collect());
    for &(i, j, l) in edges {
        g.set_edge(i, j, l).unwrap();
    }
    g.vertex_labels = labels.to_vec();
    g
}

fn c7_rigidity() -> Check {
    let limit = Duration::from_secs(5);

    let start = Instant::now();
    let p = artin_presentation(&graph(2, &[(0, 1, 2)], &[0, 0]));
    let rep = Representation::new(
        p.clone(),
        vec![
            eta(&[q(0), q(0), q(1)]).unwrap(),
            eta(&[q(1), q(0), q(0)]).unwrap(),
        ],
    )
    .map_err(|e| e.to_string())?;
    let d = h0_h1_dims(&p, &rep).map_err(|e| e.to_string())?;
    ensure(d.h1 == 0, || format!("abelian rank 2: {d:?}"))?;
    within(start, limit)?;

    let start = Instant::now();
    let rep = alg_standard();
    let lambda = build_lambda(&standard_triangle()).map_err(|e| e.to_string())?;
    let d = h0_h1_dims(&artin_presentation(&lambda), &rep).map_err(|e| e.to_string())?;
    ensure(d.h1 == 0, || format!("triangle Artin group: {d:?}"))?;
    within(start, limit)?;

    let samples = [
        graph(3, &[(0, 1, 4), (1, 2, 2)], &[2, 3, 2]),
        graph(
            4,
            &[(0, 1, 2), (1, 2, 6), (2, 3, 4), (0, 3, 2)],
            &[2, 3, 2, 5],
        ),
        build_lambda(&standard_triangle()).map_err(|e| e.to_string())?,
    ];
    for (i, g) in samples.iter().enumerate() {
        let start = Instant::now();
        let p = shephard_presentation(g);
        let d = h0_h1_dims(&p, &Representation::trivial(p.clone())).map_err(|e| e.to_string())?;
        ensure(d.h1 == 0, || {
            format!("trivial rep of Shephard sample {i}: {d:?}")
        })?;
        within(start, limit)?;
    }
    Ok(())
}

fn c8_shephard_artin() -> Check {
    let fa = gadget_mul();
    let lambda = build_lambda(fa.based()).map_err(|e| e.to_string())?;
    for (a, b) in [(2, 3), (3, 5), (-2, 7), (5, -3), (4, 9)] {
        let psi: Realization<Rational> =
            propagate(&fa, &[q(a), q(b)]).map_err(|e| e.to_string())?;
        let rep = alg(fa.based(), &psi).map_err(|e| e.to_string())?;
        ensure(is_nondegenerate(&rep, &lambda), || {
            format!("degenerate at ({a}, {b})")
        })?;
        let s = h0_h1_dims(&shephard_presentation(&lambda), &rep).map_err(|e| e.to_string())?;
        let r = h0_h1_dims(&artin_presentation(&lambda), &rep).map_err(|e| e.to_string())?;
        ensure(s.z1 == r.z1, || {
            format!("at ({a}, {b}): Shephard Z1 {} vs Artin Z1 {}", s.z1, r.z1)
        })?;
    }
    Ok(())
}

fn c9_stability() -> Check {
    let based = standard_triangle();
    let std = Realization::<Rational>::standard();
    ensure(is_stable(&based, &std) == Ok(true), || {
        "standard realization unstable".into()
    })?;
    let mut collapsed = std.clone();
    for p in collapsed.points.values_mut() {
        *p = ProjPoint::affine(q(0), q(0));
    }
    ensure(is_stable(&based, &collapsed) == Ok(false), || {
        "collapsed realization stable".into()
    })
}

fn c10_emitters() -> Check {
    let g = build_lambda(&standard_triangle()).map_err(|e| e.to_string())?;
    ensure(g.vertices.len() == 9, || {
        format!("{} vertices", g.vertices.len())
    })?;
    let i = |n: &str| g.index(n).unwrap();
    ensure(g.edge(i("v11"), i("v00")) == Some(6), || {
        "[v11, v00] not labelled 6".into()
    })?;
    ensure(g.edge(i("v10"), i("v00")) == Some(4), || {
        "[v10, v00] not labelled 4".into()
    })?;
    ensure(g.edge(i("v01"), i("v00")) == Some(4), || {
        "[v01, v00] not labelled 4".into()
    })?;

    let cases: [(LabelledGraph, Vec<LieRelation>); 3] = [
        (
            graph(2, &[(0, 1, 2)], &[0, 0]),
            vec![LieRelation::Bracket { i: 0, j: 1 }],
        ),
        (
            graph(2, &[(0, 1, 3)], &[0, 0]),
            vec![LieRelation::Equal { i: 0, j: 1 }],
        ),
        (
            graph(4, &[(0, 1, 4), (1, 2, 3), (2, 3, 6)], &[0; 4]),
            vec![
                LieRelation::Bracket { i: 0, j: 1 },
                LieRelation::Equal { i: 1, j: 2 },
                LieRelation::Bracket { i: 2, j: 3 },
            ],
        ),
    ];
    for (k, (g, want)) in cases.iter().enumerate() {
        let got = malcev_presentation(g).relations;
        ensure(&got == want, || format!("Malcev sample {k}: {got:?}"))?;
    }

    let p =
        extended_artin_presentation(&graph(2, &[(0, 1, 2)], &[0, 0])).map_err(|e| e.to_string())?;
    let text: Vec<String> = p.relations.iter().map(|r| p.render_relation(r)).collect();
    for want in ["[g0, tau_g1] = 1", "[g1, tau_g0] = 1"] {
        ensure(text.iter().any(|t| t == want), || {
            format!("missing `{want}` in {text:?}")
        })?;
    }
    Ok(())
}

fn c11_homogeneity() -> Check {
    let vars = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let p = parse_polys("x^2 + y^5 + z^3", &vars(&["x", "y", "z"])).map_err(|e| e.to_string())?;
    let u = is_weighted_homogeneous(&p, &[15, 6, 10]);
    ensure(u == Some(vec![30]), || format!("x^2+y^5+z^3: {u:?}"))?;
    for (n, w) in [(2u64, 3u64), (5, 1), (7, 4)] {
        let p = parse_polys(&format!("x^{n}"), &vars(&["x"])).map_err(|e| e.to_string())?;
        let u = is_weighted_homogeneous(&p, &[w]);
        ensure(u == Some(vec![n * w]), || {
            format!("x^{n} weight {w}: {u:?}")
        })?;
    }
    let p = parse_polys("x^2*y^2 + x^5 + y^5", &vars(&["x", "y"])).map_err(|e| e.to_string())?;
    let u = is_weighted_homogeneous(&p, &[1, 1]);
    ensure(u.is_none(), || format!("x^2y^2+x^5+y^5: {u:?}"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("multiplication gadget symbolic values", c1_mul_symbolic),
        (
            "gadgets and random compositions are functional",
            c2_gadgets_functional,
        ),
        ("geo/tau roundtrip on three systems", c3_universality),
        ("zero fibre of the quintic", c4_zero_fiber),
        ("truncated-ring tangent bijection", c5_truncated_tangent),
        ("triangle representation", c6_triangle_representation),
        ("rigidity suite", c7_rigidity),
        ("Shephard/Artin first-order agreement", c8_shephard_artin),
        ("stability", c9_stability),
        ("presentation emitters", c10_emitters),
        ("weighted homogeneity", c11_homogeneity),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(()) => println!("criterion {:>2} PASS  {name}", k + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {e}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
