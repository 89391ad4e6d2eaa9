use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;
use rankpit::corpus::{random_polynomial, rng};
use rankpit::measure::{composition_upper_bound, psp_dimension, MeasureSpec};
use rankpit::poly::DEFAULT_TERM_CAP;
use rankpit::{Domain, Polynomial};

const N: usize = 5;

fn poly(seed: u64) -> Polynomial {
    let mut r = rng(seed);
    let deg = r.gen_range(1..=3);
    random_polynomial(&mut r, Domain::Rational, N, deg, 5)
}

fn phi(p: &Polynomial, spec: &MeasureSpec) -> usize {
    psp_dimension(p, spec).unwrap().dimension
}

fn spec(seed: u64) -> MeasureSpec {
    let mut r = rng(seed ^ 0x5eed);
    let deg = r.gen_range(0..=2);
    let m = r.gen_range(0..=2);
    let all = MeasureSpec::all_multilinear(N, deg, m);
    let mut derivs = all.derivatives().to_vec();
    derivs.shuffle(&mut r);
    derivs.truncate(r.gen_range(1..=derivs.len()));
    MeasureSpec::new(derivs, m).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subadditive(a: u64, b: u64, alpha in -3i64..=3, beta in -3i64..=3) {
        let d = Domain::Rational;
        let (p, q) = (poly(a), poly(b));
        let s = spec(a ^ b);
        let combo = p.scale(&d.from_i64(alpha)).add(&q.scale(&d.from_i64(beta)));
        prop_assert!(phi(&combo, &s) <= phi(&p, &s) + phi(&q, &s));
    }

    #[test]
    fn components_do_not_increase(a: u64) {
        let p = poly(a);
        let s = spec(a);
        let whole = phi(&p, &s);
        for i in 0..=p.total_degree() {
            prop_assert!(phi(&p.homogeneous_component(i), &s) <= whole);
        }
    }

    #[test]
    fn permutation_invariant(a: u64, shuffle: u64) {
        let p = poly(a);
        let s = spec(a);
        let mut perm: Vec<usize> = (0..N).collect();
        perm.shuffle(&mut rng(shuffle));
        let moved = p.rename_vars(N, |v| perm[v]);
        let derivs = s.derivatives().iter().map(|g| g.rename(|v| perm[v])).collect();
        prop_assert_eq!(phi(&moved, &MeasureSpec::new(derivs, s.m()).unwrap()), phi(&p, &s));
    }

    #[test]
    fn monotone_in_the_derivative_set(a: u64) {
        let p = poly(a);
        let s = spec(a);
        let full = MeasureSpec::all_multilinear(N, s.r(), s.m());
        prop_assert!(phi(&p, &s) <= phi(&p, &full));
    }

    #[test]
    fn composition_bound_holds(seed: u64) {
        let mut r = rng(seed);
        let big_n = 8usize;
        let t = r.gen_range(1..=3usize);
        // inner polynomials whose monomials have support at most s
        let s = r.gen_range(1..=2u64);
        let inner: Vec<Polynomial> = (0..t)
            .map(|_| {
                let deg = r.gen_range(1..=2);
                random_polynomial(&mut r, Domain::Rational, big_n, deg, 3)
                    .filter_terms(|m| m.support_size() as u64 <= s)
            })
            .collect();
        let outer_deg = r.gen_range(1..=2);
        let f = random_polynomial(&mut r, Domain::Rational, t, outer_deg, 3);
        let p = f.compose(&inner, DEFAULT_TERM_CAP).unwrap().with_nvars(big_n);
        let rr = r.gen_range(0..=1u32);
        let m = r.gen_range(0..=(4 - rr as u64 * s) as u32);
        let spec = MeasureSpec::all_multilinear(big_n, rr, m);
        let bound = composition_upper_bound(big_n as u64, t as u64, rr as u64, m as u64, s).unwrap();
        prop_assert!(num_bigint::BigUint::from(phi(&p, &spec)) <= bound);
    }
}
