//! Property suites: Fox calculus axioms, determinant and SNF oracles,
//! bar/substitute laws, orbit-certificate invariance, and 2-torsion of the
//! mod-(+-H*A*N) quotient.

use magnus_core::foxcalc::{fox_derivative, GroupRingElement};
use magnus_core::laurent::{factor, gcd};
use magnus_core::matrixkh::{smith_normal_form, IntMatrix, Mat, PolyMatrix};
use magnus_core::quotients::{reduce, Level, OrbitCertificate, QuotientError};
use magnus_core::{
    Budget, FactorError, GenTable, Generator, LaurentPoly, RationalFunction, Word,
};
use proptest::prelude::*;

// ---------------------------------------------------------------------------
// strategies
// ---------------------------------------------------------------------------

fn arb_word(rank: u32, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=rank, prop::bool::ANY), 0..max_len).prop_map(|letters| {
        Word::from_letters(
            letters
                .into_iter()
                .map(|(i, pos)| (Generator::plain(i), if pos { 1i8 } else { -1 })),
        )
    })
}

fn arb_poly(rank: usize, max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec(
        (prop::collection::vec(-2i64..=2, rank), -3i128..=3),
        1..=max_terms,
    )
    .prop_map(move |terms| {
        let mut p = LaurentPoly::zero(rank);
        for (e, c) in terms {
            p = p.add(&LaurentPoly::monomial(rank, e, c));
        }
        p
    })
}

/// Random unimodular matrix: a short product of elementary shears, swaps and
/// sign flips.
fn arb_unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    prop::collection::vec((0..n, 0..n, -2i128..=2, prop::bool::ANY), 1..=6).prop_map(
        move |ops| {
            let mut t = IntMatrix::identity(n);
            for (i, j, k, flip) in ops {
                let mut e = IntMatrix::identity(n);
                if i == j {
                    if flip {
                        e.set(i, i, -1);
                    }
                } else if flip {
                    // swap rows i and j
                    e.set(i, i, 0);
                    e.set(j, j, 0);
                    e.set(i, j, 1);
                    e.set(j, i, 1);
                } else {
                    e.set(i, j, k);
                }
                t = t.mul(&e);
            }
            t
        },
    )
}

// ---------------------------------------------------------------------------
// Fox calculus axioms
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// d(uv)/dx = du/dx + u * dv/dx, and the fundamental identity
    /// sum_x (dw/dx)(x - 1) = w - 1.
    #[test]
    fn fox_axioms(u in arb_word(3, 8), v in arb_word(3, 8)) {
        let table = GenTable::free(3);
        let w = u.multiply(&v);
        for x in table.generators() {
            let lhs = fox_derivative(&w, x);
            let rhs = fox_derivative(&u, x).add(&fox_derivative(&v, x).left_mul_word(&u));
            prop_assert_eq!(lhs, rhs);
            // inverse rule: d(u^-1)/dx = -u^-1 * du/dx
            let inv = u.invert();
            let lhs = fox_derivative(&inv, x);
            let rhs = fox_derivative(&u, x).neg().left_mul_word(&inv);
            prop_assert_eq!(lhs, rhs);
        }
        // fundamental identity on w
        let mut acc = GroupRingElement::zero();
        for x in table.generators() {
            let mut xm1 = GroupRingElement::from_word(Word::generator(x));
            xm1.add_term(Word::identity(), -1);
            acc = acc.add(&fox_derivative(&w, x).mul(&xm1));
        }
        let mut expect = GroupRingElement::from_word(w.clone());
        expect.add_term(Word::identity(), -1);
        prop_assert_eq!(acc, expect);
    }
}

// ---------------------------------------------------------------------------
// determinant and SNF oracles
// ---------------------------------------------------------------------------

fn cofactor_oracle(m: &PolyMatrix, rank: usize) -> LaurentPoly {
    let n = m.rows();
    if n == 0 {
        return LaurentPoly::one(rank);
    }
    if n == 1 {
        return m.at(0, 0).clone();
    }
    let mut det = LaurentPoly::zero(rank);
    for j in 0..n {
        let minor = Mat::from_fn(n - 1, n - 1, |r, c| {
            m.at(r + 1, if c < j { c } else { c + 1 }).clone()
        });
        let term = m.at(0, j).mul(&cofactor_oracle(&minor, rank));
        det = if j % 2 == 0 { det.add(&term) } else { det.sub(&term) };
    }
    det
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn bareiss_matches_cofactor(
        n in 1usize..=5,
        seed in prop::collection::vec(prop::collection::vec(
            (prop::collection::vec(-1i64..=1, 2), -2i128..=2), 1..=2), 25..=25)
    ) {
        let entries: Vec<LaurentPoly> = seed
            .into_iter()
            .map(|terms| {
                let mut p = LaurentPoly::zero(2);
                for (e, c) in terms {
                    p = p.add(&LaurentPoly::monomial(2, e, c));
                }
                p
            })
            .collect();
        let m: PolyMatrix = Mat::from_fn(n, n, |i, j| entries[i * 5 + j].clone());
        prop_assert_eq!(m.bareiss_det().unwrap(), cofactor_oracle(&m, 2));
    }
}

/// gcd of all k x k minors of m (0 when all vanish).
fn minor_gcd(m: &IntMatrix, k: usize) -> i128 {
    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for first in 0..n {
            for mut rest in combos(n - first - 1, k - 1) {
                for x in rest.iter_mut() {
                    *x += first + 1;
                }
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    let mut g = 0i128;
    for rows in combos(m.rows(), k) {
        for cols in combos(m.cols(), k) {
            let minor = Mat::from_fn(k, k, |i, j| *m.at(rows[i], cols[j]));
            let d = minor.det().unwrap().abs();
            g = if g == 0 { d } else { num_gcd(g, d) };
        }
    }
    g
}

fn num_gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        num_gcd(b, a % b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// SNF invariant factor d_k = (gcd of k-minors) / (gcd of (k-1)-minors),
    /// and m = u * d * v with u, v unimodular.
    #[test]
    fn snf_matches_minor_gcds(
        rows in 1usize..=4,
        cols in 1usize..=4,
        entries in prop::collection::vec(-5i128..=5, 16..=16)
    ) {
        let m: IntMatrix = Mat::from_fn(rows, cols, |i, j| entries[i * 4 + j]);
        let snf = smith_normal_form(&m);
        prop_assert!(snf.u.is_unimodular());
        prop_assert!(snf.v.is_unimodular());
        prop_assert_eq!(&snf.u.mul(&snf.d).mul(&snf.v), &m);
        prop_assert_eq!(&snf.u.mul(&snf.u_inv), &IntMatrix::identity(rows));
        let factors = snf.invariant_factors();
        let mut prev = 1i128;
        for (k, &d) in factors.iter().enumerate() {
            let g = minor_gcd(&m, k + 1);
            if g == 0 {
                prop_assert_eq!(d, 0);
            } else {
                prop_assert_eq!(d.abs() * prev, g);
            }
            if d != 0 {
                prev = g;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// bar / substitute laws
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bar_and_substitute_laws(
        f in arb_poly(3, 4),
        g in arb_poly(3, 4),
        t1 in arb_unimodular(3),
        t2 in arb_unimodular(3),
    ) {
        // bar is an involutive ring automorphism
        prop_assert_eq!(&f.bar().bar(), &f);
        prop_assert_eq!(f.mul(&g).bar(), f.bar().mul(&g.bar()));
        prop_assert_eq!(f.add(&g).bar(), f.bar().add(&g.bar()));
        // substitute is a ring homomorphism commuting with bar
        prop_assert_eq!(f.mul(&g).substitute(&t1), f.substitute(&t1).mul(&g.substitute(&t1)));
        prop_assert_eq!(f.substitute(&t1).bar(), f.bar().substitute(&t1));
        // composition of actions
        prop_assert_eq!(
            f.substitute(&t2).substitute(&t1),
            f.substitute(&t1.mul(&t2))
        );
        // canonical form is invariant under +-monomial multiplication
        if !f.is_zero() {
            let shifted = f.mul_monomial(&[1, -2, 1], -1);
            prop_assert_eq!(shifted.canonical(), f.canonical());
        }
    }
}

// ---------------------------------------------------------------------------
// certificates and quotients
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// The orbit certificate is unchanged by the Aut(H) action and by +-H.
    #[test]
    fn certificate_invariance(f in arb_poly(3, 4), t in arb_unimodular(3)) {
        prop_assume!(!f.is_zero());
        let a = OrbitCertificate::of(&f.canonical());
        let b = OrbitCertificate::of(&f.substitute(&t).canonical());
        prop_assert_eq!(a.monomial_count, b.monomial_count);
        prop_assert_eq!(a.coeff_multiset, b.coeff_multiset);
        prop_assert_eq!(a.diff_lattice_snf, b.diff_lattice_snf);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// Every class at ModHAN is 2-torsion, and norms f*bar(f) reduce to the
    /// empty class.
    #[test]
    fn modhan_classes_are_two_torsion(f in arb_poly(2, 3)) {
        prop_assume!(!f.is_zero());
        let mut budget = Budget::default();
        let rf = RationalFunction::from_poly(f.clone());
        let class = match reduce(&rf, Level::ModHAN, &mut budget) {
            Ok(c) => c,
            Err(QuotientError::Factor(FactorError::FactorizationIncomplete)) => {
                return Ok(()); // out of method range: skipped, never asserted
            }
            Err(e) => return Err(TestCaseError::fail(std::format!("{:?}", e))),
        };
        prop_assert!(class.add(&class).unwrap().is_empty());
        let norm = RationalFunction::from_poly(f.mul(&f.bar()));
        if let Ok(c) = reduce(&norm, Level::ModHAN, &mut budget) {
            prop_assert!(c.is_empty());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    /// Factorization multiplies back to the input; gcd divides both inputs.
    #[test]
    fn factor_and_gcd_are_consistent(f in arb_poly(2, 3), g in arb_poly(2, 2)) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let mut budget = Budget::default();
        if let Ok(fac) = factor(&f, &mut budget) {
            prop_assert_eq!(&fac.expand(2), &f);
        }
        let d = gcd(&f, &g);
        prop_assert!(f.try_div(d.as_poly()).is_some());
        prop_assert!(g.try_div(d.as_poly()).is_some());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Field axioms for reduced fractions, and canonicity of representation.
    #[test]
    fn rational_function_axioms(
        a in arb_poly(2, 3),
        b in arb_poly(2, 2),
        c in arb_poly(2, 2),
    ) {
        prop_assume!(!b.is_zero() && !c.is_zero());
        let x = RationalFunction::new(a.clone(), b.clone()).unwrap();
        let y = RationalFunction::new(c.clone(), b.clone()).unwrap();
        // same value, different presentation: scale num and den together
        let scaled = RationalFunction::new(a.mul(&c), b.mul(&c)).unwrap();
        prop_assert_eq!(&scaled, &x);
        // ring laws
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert_eq!(x.mul(&y), y.mul(&x));
        prop_assert_eq!(x.sub(&x), RationalFunction::zero(2));
        if !x.is_zero() {
            let inv = x.inverse().unwrap();
            prop_assert!(x.mul(&inv).is_one());
        }
    }
}
