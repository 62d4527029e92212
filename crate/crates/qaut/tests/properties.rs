//! Property-based checks of the exact algebra core: ring and *-algebra
//! axioms on random polynomials, multiplicativity of the term order,
//! morphism laws of substitution, and normal-form laws of a certified
//! confluent rewrite system.

use once_cell::sync::Lazy;
use proptest::prelude::*;

use qaut::ncalg::{substitute, Algebra, GenId, GeneratorScheme, Word};
use qaut::presentations::magic_presentation;
use qaut::rewrite::Strategy as ReduceStrategy;
use qaut::scalar::{GaussQ, Scalar};
use qaut::{Poly, System};

static ALG: Lazy<Algebra> = Lazy::new(|| Algebra::new(GeneratorScheme::X { n: 2 }));

/// Completed two-point system — certified confluent, so normal forms are
/// canonical representatives of cosets.
static MAGIC2: Lazy<(Algebra, System)> = Lazy::new(|| {
    let pres = magic_presentation(2);
    let mut sys = pres.system().unwrap();
    sys.complete(8, 20000);
    sys.check_local_confluence().unwrap();
    (pres.algebra.clone(), sys)
});

fn coeff() -> impl Strategy<Value = GaussQ> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3).prop_map(|(pn, pd, qn, qd)| {
        let mut c = GaussQ::ratio(pn, pd);
        c = c + GaussQ::i() * GaussQ::ratio(qn, qd);
        c
    })
}

/// Words over the copy-0 letters of the two-point algebra (8 letters:
/// 4 generators and their stars).
fn word() -> impl Strategy<Value = Word> {
    proptest::collection::vec(0u32..8, 0..5).prop_map(|ls| Word::from_letters(&ls))
}

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((word(), coeff()), 0..4).prop_map(|terms| {
        let mut p = Poly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    })
}

/// A fixed total generator map used to exercise the morphism laws:
/// `a[i,j] ↦ a[j,i] + δ_{ij}·1` (star images are handled by substitution).
fn twist(g: &GenId) -> Option<Poly> {
    let (i, j) = (g.indices[0], g.indices[1]);
    let letter = ALG.letter_of(&ALG.a_x(j, i)).ok()?;
    let mut p = Poly::from_letter(letter);
    if i == j {
        p.add_assign_ref(&Poly::one());
    }
    Some(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_is_commutative_and_associative(p in poly(), q in poly(), r in poly()) {
        let mut pq = p.clone();
        pq.add_assign_ref(&q);
        let mut qp = q.clone();
        qp.add_assign_ref(&p);
        prop_assert_eq!(&pq, &qp);

        let mut left = pq.clone();
        left.add_assign_ref(&r);
        let mut qr = q.clone();
        qr.add_assign_ref(&r);
        let mut right = p.clone();
        right.add_assign_ref(&qr);
        prop_assert_eq!(left, right);
    }

    #[test]
    fn multiplication_is_associative_and_distributive(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(p.mul_ref(&q).mul_ref(&r), p.mul_ref(&q.mul_ref(&r)));

        let mut qr = q.clone();
        qr.add_assign_ref(&r);
        let mut sum = p.mul_ref(&q);
        sum.add_assign_ref(&p.mul_ref(&r));
        prop_assert_eq!(p.mul_ref(&qr), sum);
    }

    #[test]
    fn one_is_neutral_and_zero_annihilates(p in poly()) {
        prop_assert_eq!(p.mul_ref(&Poly::one()), p.clone());
        prop_assert_eq!(Poly::one().mul_ref(&p), p.clone());
        prop_assert!(p.mul_ref(&Poly::zero()).is_zero());
    }

    #[test]
    fn star_is_an_involutive_anti_automorphism(p in poly(), q in poly()) {
        prop_assert_eq!(p.star().star(), p.clone());
        prop_assert_eq!(p.mul_ref(&q).star(), q.star().mul_ref(&p.star()));
        let mut sum = p.clone();
        sum.add_assign_ref(&q);
        let mut star_sum = p.star();
        star_sum.add_assign_ref(&q.star());
        prop_assert_eq!(sum.star(), star_sum);
    }

    #[test]
    fn leading_monomial_is_multiplicative(p in poly(), q in poly()) {
        // Over a field, deglex makes LM(p·q) = LM(p)·LM(q) with leading
        // coefficients multiplying — no cross-term can reach that word.
        prop_assume!(!p.is_zero() && !q.is_zero());
        let prod = p.mul_ref(&q);
        let (lw_p, lc_p) = p.leading().unwrap();
        let (lw_q, lc_q) = q.leading().unwrap();
        let (lw, lc) = prod.leading().unwrap();
        prop_assert_eq!(lw, &lw_p.concat(lw_q));
        prop_assert_eq!(lc.clone(), lc_p.clone() * lc_q.clone());
    }

    #[test]
    fn substitution_is_a_unital_star_homomorphism(p in poly(), q in poly()) {
        let id = |g: &GenId| -> Option<Poly> {
            let letter = ALG.letter_of(g).ok()?;
            Some(Poly::from_letter(letter))
        };
        prop_assert_eq!(substitute(&p, &ALG, &id).unwrap(), p.clone());

        let phi = |g: &GenId| twist(g);
        let fp = substitute(&p, &ALG, &phi).unwrap();
        let fq = substitute(&q, &ALG, &phi).unwrap();
        prop_assert_eq!(substitute(&p.mul_ref(&q), &ALG, &phi).unwrap(), fp.mul_ref(&fq));
        let mut sum = p.clone();
        sum.add_assign_ref(&q);
        let mut fsum = fp.clone();
        fsum.add_assign_ref(&fq);
        prop_assert_eq!(substitute(&sum, &ALG, &phi).unwrap(), fsum);
        prop_assert_eq!(substitute(&p.star(), &ALG, &phi).unwrap(), fp.star());
    }

    #[test]
    fn normal_forms_are_idempotent_strategy_free_and_linear(p in poly(), q in poly()) {
        let (_, sys) = &*MAGIC2;
        let np = sys.reduce(&p);
        prop_assert_eq!(&sys.reduce(&np), &np);
        prop_assert_eq!(&sys.reduce_with(&p, ReduceStrategy::Alternate), &np);

        // Linearity: the normal form of a sum is the normal form of the sum
        // of normal forms; consequently p − NF(p) lies in the ideal.
        let nq = sys.reduce(&q);
        let mut sum = p.clone();
        sum.add_assign_ref(&q);
        let mut nsum = np.clone();
        nsum.add_assign_ref(&nq);
        prop_assert_eq!(sys.reduce(&sum), sys.reduce(&nsum));

        let mut diff = p.clone();
        diff.add_scaled(&-GaussQ::from_int(1), &np);
        prop_assert!(sys.reduce(&diff).is_zero());
    }

    #[test]
    fn normal_forms_respect_multiplication(p in poly(), q in poly()) {
        let (_, sys) = &*MAGIC2;
        let np = sys.reduce(&p);
        let nq = sys.reduce(&q);
        prop_assert_eq!(sys.reduce(&p.mul_ref(&q)), sys.reduce(&np.mul_ref(&nq)));
    }
}
