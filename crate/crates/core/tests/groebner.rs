use frobsplit::groebner::{divide, groebner_basis, is_groebner};
use frobsplit::parse::parse_polynomial;
use frobsplit::{Ideal, MonomialOrder, Polynomial, Ring, RingDescriptor};
use proptest::prelude::*;

fn ring(p: u64, vars: &[&str], order: MonomialOrder) -> Ring {
    RingDescriptor::with_vars(p, vars, order).unwrap()
}

fn ideal(r: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(
        r,
        gens.iter()
            .map(|s| parse_polynomial(r, s).unwrap())
            .collect(),
    )
}

fn poly(r: &Ring, s: &str) -> Polynomial {
    parse_polynomial(r, s).unwrap()
}

fn strings(gb: &[Polynomial]) -> Vec<String> {
    gb.iter().map(|g| g.to_string()).collect()
}

#[test]
fn principal_basis_is_itself() {
    let r = ring(3, &["x", "y", "z", "w"], MonomialOrder::GrevLex);
    assert_eq!(
        strings(ideal(&r, &["x^2 - y*z"]).groebner_basis()),
        ["x^2-y*z"]
    );
}

#[test]
fn unit_ideal_over_f2() {
    let r = ring(2, &["x"], MonomialOrder::GrevLex);
    let i = ideal(&r, &["x", "x+1"]);
    assert_eq!(strings(i.groebner_basis()), ["1"]);
    assert!(i.is_unit());
}

#[test]
fn hand_buchberger_run_lex() {
    let r = ring(3, &["x", "y"], MonomialOrder::Lex);
    let i = ideal(&r, &["x*y - 1", "y^2 - 1"]);
    let mut gb = strings(i.groebner_basis());
    gb.sort();
    assert_eq!(gb, ["x-y", "y^2-1"]);
}

#[test]
fn normal_form_examples() {
    let r = ring(3, &["x", "y", "z", "w"], MonomialOrder::GrevLex);
    assert!(ideal(&r, &["x^2 - y*z"]).contains_element(&poly(&r, "x^2 - y*z")));
    assert_eq!(ideal(&r, &["x"]).normal_form(&poly(&r, "1")), poly(&r, "1"));
    let rl = ring(3, &["x", "y"], MonomialOrder::Lex);
    assert_eq!(
        ideal(&rl, &["x^2 - y"]).normal_form(&poly(&rl, "x^3")),
        poly(&rl, "x*y")
    );
}

#[test]
fn containment_and_equality() {
    let r = ring(3, &["x", "y", "z", "w"], MonomialOrder::GrevLex);
    assert!(ideal(&r, &["x", "y"]).equals(&ideal(&r, &["y", "x"])));
    assert!(ideal(&r, &["x"]).contains(&ideal(&r, &["x^2"])));
    assert!(!ideal(&r, &["x^2"]).contains(&ideal(&r, &["x"])));
    let i = ideal(&r, &["w", "x^2 - y*z"]);
    assert!(i.equals(&i.reduced()));
}

#[test]
fn intersections() {
    let r = ring(2, &["x", "y"], MonomialOrder::GrevLex);
    let i = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"]));
    assert!(i.equals(&ideal(&r, &["x*y"])));
    let j = ideal(&r, &["x^2", "y"]);
    assert!(j.intersect(&Ideal::unit(&r)).equals(&j));
    let crt = ideal(&r, &["x"]).intersect(&ideal(&r, &["x+1"]));
    assert!(crt.equals(&ideal(&r, &["x^2+x"])));
}

#[test]
fn colons() {
    let r = ring(3, &["x", "y", "z", "w"], MonomialOrder::GrevLex);
    assert!(ideal(&r, &["x^2"])
        .colon(&ideal(&r, &["x"]))
        .equals(&ideal(&r, &["x"])));
    assert!(Ideal::zero(&r).colon(&Ideal::zero(&r)).is_unit());
    let q = ideal(&r, &["x^2 - y*z"]);
    let q3 = ideal(&r, &["(x^2 - y*z)^3"]);
    let c = q3.colon(&q);
    assert!(c.contains_element(&poly(&r, "(x^2 - y*z)^2")));
}

#[test]
fn saturations() {
    let r = ring(3, &["x", "y", "z"], MonomialOrder::GrevLex);
    let x = ideal(&r, &["x"]);
    assert!(ideal(&r, &["x^2*y"])
        .saturate(&x)
        .equals(&ideal(&r, &["y"])));
    let i = ideal(&r, &["x^2", "y*z"]);
    assert!(i.saturate(&Ideal::unit(&r)).equals(&i));
    let xy_xz = ideal(&r, &["x*y", "x*z"]);
    assert!(xy_xz.saturate(&x).equals(&ideal(&r, &["y", "z"])));
    assert!(xy_xz
        .saturate_element(&poly(&r, "x"))
        .equals(&ideal(&r, &["y", "z"])));
}

#[test]
fn eliminations() {
    let r = ring(3, &["t", "x", "y"], MonomialOrder::GrevLex);
    assert!(ideal(&r, &["t - x", "t - y"])
        .eliminate(&[0])
        .equals(&ideal(&r, &["x - y"])));
    assert!(ideal(&r, &["x"]).eliminate(&[1]).is_zero());
    let i = ideal(&r, &["t*x", "(1-t)*y"]).eliminate(&[0]);
    assert!(i.equals(&ideal(&r, &["x*y"])));
}

#[test]
fn dimensions() {
    let r = ring(3, &["x", "y", "z", "w"], MonomialOrder::GrevLex);
    assert_eq!(ideal(&r, &["x^2 - y*z"]).dimension(), 3);
    assert_eq!(Ideal::unit(&r).dimension(), -1);
    assert_eq!(Ideal::zero(&r).dimension(), 4);
    assert_eq!(ideal(&r, &["w", "x^2 - y*z"]).dimension(), 2);
}

#[test]
fn determinantal_basis_is_groebner() {
    let r = ring(2, &["x1", "x2", "x3", "x4", "x5"], MonomialOrder::GrevLex);
    let i = ideal(
        &r,
        &[
            "x1*x4 - x2*x4",
            "x1*x3 - x2*x4",
            "x1^2 - x4*x5",
            "x2*x3 - x2*x4",
            "x1*x2 - x4*x5",
            "x1*x2 - x3*x5",
        ],
    );
    assert!(is_groebner(i.groebner_basis()));
}

// Random small polynomials in up to three variables.
fn arb_poly(r: Ring, max_terms: usize, max_deg: u32) -> impl Strategy<Value = Polynomial> {
    let n = r.nvars();
    let p = r.p();
    prop::collection::vec((prop::collection::vec(0..=max_deg, n), 1..p), 0..=max_terms).prop_map(
        move |ts| {
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .map(|(e, c)| (frobsplit::ring::Monomial::from_exps(e), c)),
            )
        },
    )
}

fn arb_case() -> impl Strategy<Value = (Ring, Vec<Polynomial>, Polynomial)> {
    arb_sized(3, 3, 3, 4)
}

fn arb_sized(
    max_gens: usize,
    gen_terms: usize,
    gen_deg: u32,
    f_deg: u32,
) -> impl Strategy<Value = (Ring, Vec<Polynomial>, Polynomial)> {
    (
        prop::sample::select(vec![2u64, 3, 5]),
        1usize..=3,
        prop::bool::ANY,
    )
        .prop_flat_map(move |(p, n, lex)| {
            let names = ["x", "y", "z"];
            let order = if lex {
                MonomialOrder::Lex
            } else {
                MonomialOrder::GrevLex
            };
            let r = ring(p, &names[..n], order);
            (
                Just(r.clone()),
                prop::collection::vec(arb_poly(r.clone(), gen_terms, gen_deg), 1..=max_gens),
                arb_poly(r, 3, f_deg),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn membership_matches_cofactor_reconstruction((r, gens, f) in arb_case()) {
        let i = Ideal::new(&r, gens.clone());
        let gb = i.groebner_basis().to_vec();
        prop_assert!(is_groebner(&gb));
        // every GB element and every multiple of a generator reduces to zero
        for g in &gens {
            prop_assert!(i.contains_element(&(g * &f)));
        }
        let (qs, rem) = divide(&f, &gb);
        let mut recon = rem.clone();
        for (q, g) in qs.iter().zip(&gb) {
            recon = &recon + &(q * g);
        }
        prop_assert_eq!(recon, f.clone());
        prop_assert_eq!(rem.is_zero(), i.contains_element(&f));
    }

    #[test]
    fn reduced_basis_is_unique_under_shuffling((r, gens, _f) in arb_case(), seed in any::<u64>()) {
        let mut shuffled = gens.clone();
        let k = shuffled.len();
        shuffled.rotate_left((seed as usize) % k);
        if seed & 1 == 1 {
            shuffled.reverse();
        }
        let extra = &gens[0] * &gens[k - 1];
        shuffled.push(extra);
        prop_assert_eq!(groebner_basis(&r, &gens), groebner_basis(&r, &shuffled));
    }

    #[test]
    fn colon_intersect_duality((r, gens, f) in arb_sized(2, 3, 2, 2)) {
        let i = Ideal::new(&r, gens.clone());
        let j = Ideal::new(&r, vec![f.clone(), gens[0].clone() + Polynomial::var(&r, 0)]);
        let c = i.colon_element(&f);
        prop_assert!(i.contains(&c.scale(&f)) || f.is_zero());
        let m = i.intersect(&j);
        prop_assert!(i.contains(&m));
        prop_assert!(j.contains(&m));
        prop_assert!(m.contains(&i.product(&j)));
    }

    #[test]
    fn dimension_is_monotone((r, gens, f) in arb_case()) {
        prop_assert_eq!(Ideal::zero(&r).dimension(), r.nvars() as i64);
        let i = Ideal::new(&r, gens.clone());
        let bigger = i.add_generators([f]);
        prop_assert!(bigger.dimension() <= i.dimension());
    }
}
