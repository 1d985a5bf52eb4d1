//! Property-based invariants: ring axioms for the polynomial layer, the
//! operator calculus against its action on monomials, multiplicativity of
//! the algebra twists, and associativity of the shift algebra.

use proptest::prelude::*;

use sltensor::poly::{MultiIndex, MultiPoly};
use sltensor::rational::{rat, Rat};
use sltensor::shift::ShiftOp;
use sltensor::weyl::{Twist, WeylOp};

fn arb_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=5).prop_map(|(p, q)| rat(p, q))
}

fn arb_exponents(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = MultiIndex> {
    prop::collection::vec(lo..=hi, n)
}

fn arb_poly(n: usize, laurent: bool) -> impl Strategy<Value = MultiPoly> {
    let lo = if laurent { -2 } else { 0 };
    prop::collection::vec((arb_exponents(n, lo, 3), arb_rat()), 0..4).prop_map(
        move |terms| {
            let mut p = MultiPoly::zero(n, laurent);
            for (e, c) in terms {
                p.add_term(e, c);
            }
            p
        },
    )
}

fn arb_weyl(n: usize) -> impl Strategy<Value = WeylOp> {
    prop::collection::vec(
        (arb_exponents(n, 0, 2), arb_exponents(n, 0, 2), arb_rat()),
        1..4,
    )
    .prop_map(move |terms| {
        let mut w = WeylOp::zero(n);
        for (te, de, c) in terms {
            w.add_term((te, de), c);
        }
        w
    })
}

fn arb_shift(n: usize) -> impl Strategy<Value = ShiftOp> {
    prop::collection::vec((arb_exponents(n, -2, 2), arb_poly(n, false)), 1..3).prop_map(
        move |terms| {
            let mut s = ShiftOp::zero(n);
            for (k, p) in terms {
                s.add_term(k, p);
            }
            s
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn poly_mul_associative_and_commutative(
        p in arb_poly(3, true),
        q in arb_poly(3, true),
        r in arb_poly(3, true),
    ) {
        let pq_r = p.mul(&q).unwrap().mul(&r).unwrap();
        let p_qr = p.mul(&q.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(pq_r, p_qr);
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
    }

    #[test]
    fn poly_eval_is_a_ring_homomorphism(
        p in arb_poly(2, false),
        q in arb_poly(2, false),
        x in arb_rat(),
        y in arb_rat(),
    ) {
        let point = [x, y];
        let lhs = p.mul(&q).unwrap().eval(&point).unwrap();
        let rhs = p.eval(&point).unwrap() * q.eval(&point).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn partials_commute(p in arb_poly(3, true), i in 0usize..3, j in 0usize..3) {
        let a = p.diff(i).unwrap().diff(j).unwrap();
        let b = p.diff(j).unwrap().diff(i).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn weyl_product_matches_composed_action(
        u in arb_weyl(2),
        v in arb_weyl(2),
        m in arb_exponents(2, 0, 4),
    ) {
        // apply(uv, m) = u applied to every term of v(m), exactly
        let product = u.mul(&v);
        let direct = product.apply_to_monomial(&m, None);
        let mut composed: std::collections::BTreeMap<MultiIndex, Rat> =
            std::collections::BTreeMap::new();
        for (mid, c) in v.apply_to_monomial(&m, None) {
            for (end, d) in u.apply_to_monomial(&mid, None) {
                let entry = composed.entry(end).or_insert_with(|| rat(0, 1));
                *entry += c.clone() * d;
            }
        }
        composed.retain(|_, c| !num_traits::Zero::is_zero(c));
        prop_assert_eq!(direct, composed);
    }

    #[test]
    fn weyl_product_matches_composed_action_rank_three(
        u in arb_weyl(3),
        v in arb_weyl(3),
        m in arb_exponents(3, 0, 3),
    ) {
        let product = u.mul(&v);
        let direct = product.apply_to_monomial(&m, None);
        let mut composed: std::collections::BTreeMap<MultiIndex, Rat> =
            std::collections::BTreeMap::new();
        for (mid, c) in v.apply_to_monomial(&m, None) {
            for (end, d) in u.apply_to_monomial(&mid, None) {
                let entry = composed.entry(end).or_insert_with(|| rat(0, 1));
                *entry += c.clone() * d;
            }
        }
        composed.retain(|_, c| !num_traits::Zero::is_zero(c));
        prop_assert_eq!(direct, composed);
    }

    #[test]
    fn corner_action_respects_brackets(
        seed_terms in prop::collection::vec(
            ((-3i64..0, 0i64..3), 0usize..2, arb_rat()),
            1..3,
        ),
        xi in 0usize..15,
        yi in 0usize..15,
    ) {
        use sltensor::glmod::GlModule;
        use sltensor::sl::{sl_basis, sl_bracket};
        use sltensor::tensor::{ModelAction, TensorContext, TensorVector};

        let g = MultiPoly::var(2, false, 0);
        let ctx = TensorContext::new(2, vec![1], g, GlModule::exterior(2, 1)).unwrap();
        let act = ModelAction::corner(&ctx);
        let mut w = TensorVector::zero();
        for ((m1, m2), l, c) in seed_terms {
            w.add_term(vec![m1, m2], l, c);
        }
        let basis = sl_basis(2);
        let x = &basis[xi % basis.len()];
        let y = &basis[yi % basis.len()];
        let lhs = act.apply_combination(&sl_bracket(2, x, y), &w);
        let rhs = act
            .apply(x, &act.apply(y, &w))
            .sub(&act.apply(y, &act.apply(x, &w)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn twists_are_multiplicative(
        u in arb_weyl(2),
        v in arb_weyl(2),
        g in arb_poly(2, false),
    ) {
        let fourier = Twist::Fourier(vec![0]);
        prop_assert_eq!(
            u.mul(&v).twist(&fourier),
            u.twist(&fourier).mul(&v.twist(&fourier))
        );
        // strip the constant term so the exponential twist is defined
        let mut g0 = g.clone();
        g0.add_term(vec![0, 0], -g.constant_term());
        let exp = Twist::Exp(g0);
        prop_assert_eq!(u.mul(&v).twist(&exp), u.twist(&exp).mul(&v.twist(&exp)));
    }

    #[test]
    fn exponential_twist_inverts(g in arb_poly(2, false)) {
        let mut g0 = g.clone();
        g0.add_term(vec![0, 0], -g.constant_term());
        let fwd = Twist::Exp(g0.clone());
        let back = Twist::Exp(g0.neg());
        for gen in [
            WeylOp::t(2, 0),
            WeylOp::t(2, 1),
            WeylOp::d(2, 0),
            WeylOp::d(2, 1),
        ] {
            prop_assert_eq!(gen.twist(&fwd).twist(&back), gen);
        }
    }

    #[test]
    fn canonical_print_reparses_to_the_same_polynomial(p in arb_poly(3, false)) {
        let printed = p.to_string_with("t");
        let reparsed = sltensor::expr::parse_poly_expr(&printed, 3).unwrap();
        prop_assert_eq!(reparsed, p);
    }

    #[test]
    fn shift_algebra_associative(
        a in arb_shift(2),
        b in arb_shift(2),
        c in arb_shift(2),
    ) {
        let ab_c = a.mul(&b).mul(&c);
        let a_bc = a.mul(&b.mul(&c));
        prop_assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn shift_normal_form_matches_application(
        a in arb_shift(2),
        b in arb_shift(2),
        f in arb_poly(2, false),
    ) {
        // (a b) . f = a . (b . f)
        prop_assert_eq!(a.mul(&b).apply(&f), a.apply(&b.apply(&f)));
    }
}
