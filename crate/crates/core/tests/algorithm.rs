use frobsplit::algorithm::*;
use frobsplit::decompose::{factor_polynomial, minimal_primes};
use frobsplit::frobenius::{frobenius_root, phi_apply, PhiMap};
use frobsplit::parse::parse_polynomial;
use frobsplit::ring::Monomial;
use frobsplit::{Ideal, MonomialOrder, Polynomial, Ring, RingDescriptor};
use proptest::prelude::*;

fn ring(p: u64, vars: &[&str]) -> Ring {
    RingDescriptor::with_vars(p, vars, MonomialOrder::GrevLex).unwrap()
}

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(
        r,
        gens.iter()
            .map(|s| parse_polynomial(r, s).unwrap())
            .collect(),
    )
}

fn phi(r: &Ring, u: &str) -> PhiMap {
    PhiMap::new(parse_polynomial(r, u).unwrap(), 1).unwrap()
}

fn cone() -> (Ring, PhiMap, Ideal) {
    let r = ring(3, &["x", "y", "z", "w"]);
    let f = phi(&r, "(x^2 - y*z)^2 * w^2 * x * (x+1)");
    let i = ideal(&r, &["x^2 - y*z"]);
    (r, f, i)
}

fn radical_equal(a: &Ideal, b: &Ideal) -> bool {
    let ka: Vec<String> = minimal_primes(a)
        .iter()
        .map(|c| c.ideal.canonical_key())
        .collect();
    let kb: Vec<String> = minimal_primes(b)
        .iter()
        .map(|c| c.ideal.canonical_key())
        .collect();
    ka == kb
}

#[test]
fn singular_loci() {
    let (r, _, i) = cone();
    let j = singular_locus_ideal(&i).unwrap();
    assert!(radical_equal(&j, &ideal(&r, &["x", "y", "z"])));
    let q2 = ideal(&r, &["w", "x^2 - y*z"]);
    let j2 = singular_locus_ideal(&q2).unwrap();
    assert!(radical_equal(&j2, &ideal(&r, &["x", "y", "z", "w"])));
    assert!(singular_locus_ideal(&Ideal::zero(&r)).unwrap().is_unit());
    // a smooth hypersurface has an empty singular locus
    assert!(singular_locus_ideal(&ideal(&r, &["x - y^2"]))
        .unwrap()
        .is_unit());
    assert!(singular_locus_ideal(&Ideal::unit(&r)).is_err());
    // over F_2 every partial of x^2 vanishes
    let r1 = ring(2, &["x", "y"]);
    assert!(singular_locus_ideal(&ideal(&r1, &["x^2"])).is_err());
}

#[test]
fn b_ideals_of_the_cone() {
    let (r, f, i) = cone();
    let b = compute_b(&f, &i);
    assert!(b.equals(&ideal(&r, &["x^2 - y*z", "x^2*w^2 + x*w^2"])));
    let q2 = ideal(&r, &["w", "x^2 - y*z"]);
    assert!(compute_b(&f, &q2).equals(&ideal(&r, &["w", "y*z + x", "x^2 + x"])));
    let b0 = compute_b(&f, &Ideal::zero(&r));
    assert!(b0.equals(&Ideal::principal(f.u().clone())));
}

#[test]
fn chains_of_the_cone() {
    let (r, f, i) = cone();
    let j = singular_locus_ideal(&i).unwrap();
    let b = compute_b(&f, &i);
    let target = ideal(&r, &["w", "x^2 - y*z"]);
    let start = chain_start(&j, &b, &i);
    assert!(phi_apply(&f, &start).equals(&target));
    for variant in [Variant::Surjective, Variant::General] {
        let c = compute_c(&f, &i, &start, variant).unwrap();
        assert!(c.ideal.equals(&target));
        assert_eq!(c.length, 1);
        assert!(c.length as u64 <= c.bound);
        // starting from the product instead only delays the chain
        let slow = compute_c(&f, &i, &j.product(&b).sum(&i), variant).unwrap();
        assert!(slow.ideal.equals(&target));
        assert_eq!(slow.length, 2);
    }
    let j2 = singular_locus_ideal(&target).unwrap();
    let b2 = compute_b(&f, &target);
    let c2 = compute_c(
        &f,
        &target,
        &chain_start(&j2, &b2, &target),
        Variant::Surjective,
    )
    .unwrap();
    assert!(c2.ideal.is_unit());
    assert_eq!(c2.length, 1);
}

#[test]
fn image_radicals() {
    let (_, f, _) = cone();
    assert!(image_radical(&f).is_unit());
    let r = ring(2, &["x", "y"]);
    assert!(image_radical(&PhiMap::new(Polynomial::zero(&r), 1).unwrap()).is_zero());
    let r8 = ring(2, &["x11", "x12", "x13", "x14", "x21", "x22", "x23", "x24"]);
    let f8 = phi(
        &r8,
        "(x11*x22 - x21*x12) * (x11*x23 - x21*x13) * (x11*x24 - x21*x14)",
    );
    let k = image_radical(&f8);
    assert!(ideal(&r8, &["x11", "x21"]).contains(&k));
}

#[test]
fn posets() {
    let r = ring(2, &["x", "y", "z"]);
    let chain = [
        ideal(&r, &["x"]),
        ideal(&r, &["x", "y"]),
        ideal(&r, &["x", "y", "z"]),
    ];
    assert_eq!(poset_assemble(&chain), [(0, 1), (1, 2)]);
    assert!(poset_assemble(&[ideal(&r, &["x"]), ideal(&r, &["y"])]).is_empty());
    let diamond = [
        ideal(&r, &["x"]),
        ideal(&r, &["x", "y"]),
        ideal(&r, &["x", "z"]),
        ideal(&r, &["x", "y", "z"]),
    ];
    assert_eq!(poset_assemble(&diamond), [(0, 1), (0, 2), (1, 3), (2, 3)]);
}

#[test]
fn cone_end_to_end() {
    let (r, f, i) = cone();
    let res = compatible_primes(&CompatProblem::new(f, i.clone())).unwrap();
    assert!(res.surjective);
    assert_eq!(res.variant, Variant::Surjective);
    assert_eq!(res.primes.len(), 2);
    assert!(res.primes[0].ideal.equals(&i));
    assert!(res.primes[1].ideal.equals(&ideal(&r, &["w", "x^2 - y*z"])));
    assert_eq!(res.edges, [(0, 1)]);
    assert_eq!(res.trace.len(), 2);
    assert!(res.trace[1].c.as_ref().unwrap().is_unit());
}

#[test]
fn trace_map_has_no_compatible_primes() {
    for p in [2, 3] {
        for n in 1..=3 {
            let r = ring(p, &["x", "y", "z"][..n]);
            let res = compatible_primes(&CompatProblem::new(
                PhiMap::trace_map(&r, 1).unwrap(),
                Ideal::zero(&r),
            ))
            .unwrap();
            assert!(res.primes.is_empty());
            assert!(res.k.is_unit());
        }
    }
}

#[test]
fn modes() {
    let r = ring(2, &["x", "y"]);
    let f = phi(&r, "x*y^2");
    let mut problem = CompatProblem::new(f, Ideal::zero(&r));
    problem.mode = Mode::Surjective;
    assert!(compatible_primes(&problem).is_err());
    problem.mode = Mode::Auto;
    let res = compatible_primes(&problem).unwrap();
    assert!(!res.surjective);
    assert_eq!(res.variant, Variant::General);
    // φ(F_* S) = <y>, so every prime over <y> is compatible by rule
    assert!(res.k.equals(&ideal(&r, &["y"])));
    assert!(res.primes.iter().all(|pc| !pc.ideal.contains(&res.k)));
    assert!(res
        .primes
        .iter()
        .any(|pc| pc.ideal.equals(&ideal(&r, &["x"]))));
    assert!(!res.notes.is_empty());
}

#[test]
fn seed_containing_k_is_closed_by_rule() {
    let r = ring(2, &["x", "y"]);
    let f = phi(&r, "x*y^2");
    let mut problem = CompatProblem::new(f, ideal(&r, &["y"]));
    problem.mode = Mode::General;
    let res = compatible_primes(&problem).unwrap();
    assert_eq!(res.trace.len(), 1);
    assert!(res.trace[0].c.is_none());
    assert!(res.trace[0].note.is_some());
    assert_eq!(res.primes.len(), 1);
}

#[test]
fn incompatible_seed_is_rejected() {
    let r = ring(2, &["x"]);
    let problem = CompatProblem::new(PhiMap::trace_map(&r, 1).unwrap(), ideal(&r, &["x"]));
    assert!(compatible_primes(&problem).unwrap_err().is_precondition());
}

#[test]
fn jacobian_override_is_used() {
    let (r, f, i) = cone();
    let mut problem = CompatProblem::new(f.clone(), i.clone());
    problem.j_override = Some(ideal(&r, &["x", "y", "z"]));
    let res = compatible_primes(&problem).unwrap();
    assert_eq!(res.primes.len(), 2);
    problem.j_override = Some(i.clone());
    let err = compatible_primes(&problem).unwrap_err();
    assert!(!err.is_precondition());
    assert!(err.to_string().contains("round 0"));
}

#[test]
fn threads_do_not_change_the_result() {
    let r = ring(2, &["x21", "x31", "x32", "x41", "x42", "x43"]);
    let f = phi(
        &r,
        "x41 * (x31*x42 - x41*x32) * (x41 - x21*x42 - x31*x43 + x21*x32*x43)",
    );
    let mut problem = CompatProblem::new(f, Ideal::zero(&r));
    let one = compatible_primes(&problem).unwrap();
    problem.threads = 4;
    let four = compatible_primes(&problem).unwrap();
    let keys = |res: &CompatResult| {
        res.primes
            .iter()
            .map(|pc| pc.ideal.canonical_key())
            .collect::<Vec<_>>()
    };
    assert_eq!(keys(&one), keys(&four));
    assert_eq!(one.edges, four.edges);
}

// Structural checks on a finished run.

fn check_result(f: &PhiMap, res: &CompatResult) {
    let keys: Vec<String> = res
        .primes
        .iter()
        .map(|pc| pc.ideal.canonical_key())
        .collect();
    for pc in &res.primes {
        assert!(
            pc.ideal.contains(&phi_apply(f, &pc.ideal)),
            "{} is not compatible",
            pc.ideal
        );
        assert!(!pc.ideal.is_unit());
    }
    for r in &res.trace {
        let Some(c) = &r.c else { continue };
        let start = chain_start(&r.j, &r.b, &r.q);
        for pc in &res.primes {
            if pc.ideal.contains(&r.q) && !r.q.contains(&pc.ideal) && !pc.ideal.contains(&res.k) {
                assert!(
                    pc.ideal.contains(&start),
                    "{} misses the chain start of {}",
                    pc.ideal,
                    r.q
                );
                assert!(pc.ideal.contains(c), "{} misses C of {}", pc.ideal, r.q);
            }
        }
        if res.variant == Variant::Surjective {
            let other = compute_c(f, &r.q, &start, Variant::General).unwrap();
            assert!(other.ideal.equals(c));
        }
    }
    if res.variant == Variant::Surjective {
        for a in &res.primes {
            for b in &res.primes {
                for m in minimal_primes(&a.ideal.sum(&b.ideal)) {
                    assert!(
                        keys.contains(&m.ideal.canonical_key()),
                        "{} missing",
                        m.ideal
                    );
                }
            }
        }
    }
    // edges are the covering relations
    let n = res.primes.len();
    for a in 0..n {
        for b in 0..n {
            let lt = a != b && res.primes[b].ideal.contains(&res.primes[a].ideal);
            let covered = lt
                && !(0..n).any(|c| {
                    c != a
                        && c != b
                        && res.primes[c].ideal.contains(&res.primes[a].ideal)
                        && res.primes[b].ideal.contains(&res.primes[c].ideal)
                });
            assert_eq!(res.edges.contains(&(a, b)), covered);
        }
    }
}

#[test]
fn structural_checks_on_examples() {
    let (_, f, i) = cone();
    check_result(
        &f,
        &compatible_primes(&CompatProblem::new(f.clone(), i)).unwrap(),
    );
    let r = ring(2, &["x1", "x2", "x3", "x4", "x5"]);
    let f = phi(
        &r,
        "x1^3*x2*x3+x1^3*x2*x4+x1^2*x3*x4*x5+x1*x2*x3*x4*x5+x1*x2*x4^2*x5+x2^2*x4^2*x5+x3*x4^2*x5^2+x4^3*x5^2",
    );
    check_result(
        &f,
        &compatible_primes(&CompatProblem::new(f.clone(), Ideal::zero(&r))).unwrap(),
    );
}

// Random maps on small rings, checked against a pool of candidate primes.

fn arb_u() -> impl Strategy<Value = (Ring, Polynomial)> {
    (prop::sample::select(vec![2u64, 3]), 1usize..=2).prop_flat_map(|(p, n)| {
        let r = ring(p, &["x", "y"][..n]);
        let rr = r.clone();
        prop::collection::vec((prop::collection::vec(0u32..=4, n), 1..p as u32), 1..=4).prop_map(
            move |ts| {
                let u = Polynomial::from_terms(
                    &rr,
                    ts.into_iter().map(|(e, c)| (Monomial::from_exps(e), c)),
                );
                (rr.clone(), u)
            },
        )
    })
}

/// Primes we can list directly: coordinate hyperplanes and their sums, the
/// rational points, and the irreducible factors of `u`.
fn candidate_primes(r: &Ring, u: &Polynomial) -> Vec<Ideal> {
    let n = r.nvars();
    let p = r.p();
    let mut out = Vec::new();
    let var = |v: usize, c: u32| &Polynomial::var(r, v) - &Polynomial::constant(r, c as i64);
    for v in 0..n {
        for c in 0..p {
            out.push(Ideal::new(r, vec![var(v, c)]));
        }
    }
    let mut pts = vec![vec![]];
    for v in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|pt: Vec<Polynomial>| (0..p).map(move |c| (pt.clone(), c)))
            .map(|(mut pt, c)| {
                pt.push(var(v, c));
                pt
            })
            .collect();
    }
    out.extend(pts.into_iter().map(|g| Ideal::new(r, g)));
    if let Ok(Some(fs)) = factor_polynomial(u) {
        for (f, _) in fs {
            out.push(Ideal::principal(f.clone()));
            for v in 0..n {
                for c in 0..p {
                    let sum = Ideal::new(r, vec![f.clone(), var(v, c)]);
                    out.extend(minimal_primes(&sum).into_iter().map(|pc| pc.ideal));
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_maps_find_every_candidate((r, u) in arb_u()) {
        prop_assume!(!u.is_zero());
        let f = PhiMap::new(u.clone(), 1).unwrap();
        let res = compatible_primes(&CompatProblem::new(f.clone(), Ideal::zero(&r))).unwrap();
        check_result(&f, &res);
        let image = frobenius_root(&Ideal::principal(u.clone()), f.q());
        prop_assert!(res.k.contains(&image));
        let keys: Vec<String> = res.primes.iter().map(|pc| pc.ideal.canonical_key()).collect();
        for cand in candidate_primes(&r, &u) {
            let compatible = cand.contains(&phi_apply(&f, &cand));
            if compatible && !cand.contains(&res.k) && !cand.is_zero() {
                prop_assert!(keys.contains(&cand.canonical_key()), "{} was not found", cand);
            }
        }
    }
}
