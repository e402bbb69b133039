//! Randomized invariants of the arithmetic kernel, the normal forms and the
//! basis construction.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tricubic::basis::{build, check_congruences, CubicModel, CubicParams, TriBasis};
use tricubic::disc::{ram_classify, IdealFactored, RamKind};
use tricubic::gf::{Field, FieldCtx};
use tricubic::poly::{crt, cubic_disc, Poly};
use tricubic::ratfn::{approx_elem, decompose_p3, decompose_pne3, ApproxTarget, Place, RatFn};
use tricubic::standard_form::{as_root, char3_bad_places, char3_standard_form, hasse_reduce};
use tricubic::verify::{disc_of_basis, model_is_irreducible};
use tricubic::Error;

fn field(idx: usize) -> Field {
    let (p, n) = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1), (5, 2), (11, 1)][idx % 8];
    FieldCtx::new(p, n, None).unwrap()
}

fn char_field(p: u64, idx: usize) -> Field {
    FieldCtx::new(p, 1 + idx % 2, None).unwrap()
}

fn ratfn(field: &Field, max_deg: usize, rng: &mut ChaCha8Rng) -> RatFn {
    loop {
        let n = Poly::random(field, max_deg, rng);
        let d = Poly::random(field, max_deg, rng);
        if !n.is_zero() && !d.is_zero() {
            return RatFn::new(n, d).unwrap();
        }
    }
}

fn irreducible(field: &Field, deg: usize, rng: &mut ChaCha8Rng) -> Poly {
    loop {
        let c = Poly::random_monic(field, deg, rng);
        if c.is_irreducible() {
            return c;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_inverse_in_large_fields(seed in any::<u64>(), which in 0usize..3) {
        let f = [FieldCtx::new(3, 5, None), FieldCtx::prime(101), FieldCtx::new(2, 9, None)][which].clone().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = f.random(&mut rng);
        prop_assume!(!a.is_zero());
        prop_assert!(f.mul(&a, &f.inv(&a).unwrap()).is_one());
        prop_assert_eq!(f.frob_root(&f.frobenius(&a)), a);
    }

    #[test]
    fn factorization_round_trip(seed in any::<u64>(), fi in 0usize..8) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = Poly::random(&f, 20, &mut rng);
        prop_assume!(!g.is_zero());
        let fac = g.factor().unwrap();
        prop_assert_eq!(fac.product(&f), g.clone());
        prop_assert_eq!(fac, g.factor_seeded(seed).unwrap());
    }

    #[test]
    fn crt_reduces_to_each_residue(seed in any::<u64>(), fi in 0usize..8) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut pairs: Vec<(Poly, Poly)> = Vec::new();
        for _ in 0..3 {
            let m = Poly::random_monic(&f, rng.gen_range(1..4), &mut rng);
            if pairs.iter().all(|(_, n)| n.is_coprime(&m)) {
                pairs.push((Poly::random(&f, 5, &mut rng), m));
            }
        }
        let t = crt(&pairs).unwrap();
        for (r, m) in &pairs {
            prop_assert_eq!(t.rem(m), r.rem(m));
        }
    }

    #[test]
    fn depressed_cubic_discriminant(seed in any::<u64>(), fi in 0usize..8) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Poly::random(&f, 6, &mut rng);
        let d = Poly::random(&f, 6, &mut rng);
        let expect = &(&(&c * &c) * &c).scale_int(-4) - &(&d * &d).scale_int(27);
        prop_assert_eq!(cubic_disc(&Poly::zero(&f), &c, &d), expect);
    }

    #[test]
    fn decomposition_reassembles(seed in any::<u64>(), fi in 0usize..8) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = ratfn(&f, 8, &mut rng);
        if f.characteristic() == 3 {
            match decompose_p3(&a) {
                Ok(d) => {
                    prop_assert_eq!(d.reassemble(), a);
                    prop_assert!((&d.xi1 * &d.xi2).is_coprime(&d.beta));
                }
                Err(Error::NotStandardForm(_)) => {
                    prop_assert!(!char3_bad_places(&a).unwrap().is_empty());
                }
                Err(e) => prop_assert!(false, "{e}"),
            }
        } else {
            let d = decompose_pne3(&a).unwrap();
            prop_assert_eq!(d.reassemble(), a);
            prop_assert!(d.alpha.is_monic());
            prop_assert!(d.alpha.is_coprime(&(&d.beta * &d.gamma)));
        }
    }

    #[test]
    fn approx_elem_meets_targets(seed in any::<u64>(), fi in 0usize..8) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut targets = Vec::new();
        let mut used: Vec<Poly> = Vec::new();
        for k in 0..4 {
            let pr = irreducible(&f, rng.gen_range(1..3), &mut rng);
            if used.contains(&pr) {
                continue;
            }
            used.push(pr.clone());
            let place = Place::new(&pr).unwrap();
            targets.push(if k % 2 == 0 {
                ApproxTarget::Monomial { place, exp: -rng.gen_range(1..4i64) }
            } else {
                ApproxTarget::Congruence { place, residue: Poly::random(&f, 4, &mut rng), prec: rng.gen_range(1..4) }
            });
        }
        let y = approx_elem(&f, &targets).unwrap();
        for t in &targets {
            match t {
                ApproxTarget::Monomial { place, exp } => {
                    prop_assert_eq!(y.val_at(place), Some(*exp));
                    let diff = &y - &place.power(*exp);
                    prop_assert!(diff.val_at(place).is_none_or(|v| v > *exp));
                }
                ApproxTarget::Congruence { place, residue, prec } => {
                    let diff = &y - &RatFn::from_poly(residue.clone());
                    prop_assert!(diff.val_at(place).is_none_or(|v| v >= *prec as i64));
                }
            }
        }
        for (place, v) in y.support().unwrap() {
            if v < 0 {
                prop_assert!(used.contains(place.prime()));
            }
        }
    }

    #[test]
    fn hasse_reduction_is_an_idempotent_class_invariant(seed in any::<u64>(), fi in 0usize..2) {
        let f = char_field(2, fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let b = ratfn(&f, 8, &mut rng);
        let r = hasse_reduce(&b).unwrap();
        prop_assert_eq!(&r.b_std + &b, &(&r.shift * &r.shift) + &r.shift);
        for (place, l) in &r.ramified {
            prop_assert!(l % 2 == 1);
            prop_assert_eq!(r.b_std.val_at(place), Some(-(*l as i64)));
        }
        let again = hasse_reduce(&r.b_std).unwrap();
        prop_assert_eq!(again.b_std, r.b_std);
        prop_assert!(again.shift.is_zero());
    }

    #[test]
    fn artin_schreier_roots(seed in any::<u64>(), fi in 0usize..2) {
        let f = char_field(2, fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = ratfn(&f, 5, &mut rng);
        let b = &(&w * &w) + &w;
        let root = as_root(&b).unwrap().expect("w^2 + w has a root");
        prop_assert_eq!(&(&root * &root) + &root, b);
        prop_assert!(root == w || root == &w + &RatFn::one(&f));
        let b2 = ratfn(&f, 5, &mut rng);
        if let Some(r) = as_root(&b2).unwrap() {
            prop_assert_eq!(&(&r * &r) + &r, b2);
        }
    }

    #[test]
    fn char3_reduction_progress(seed in any::<u64>(), fi in 0usize..2, j in 1i64..3) {
        let f = char_field(3, fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a1 = ratfn(&f, 6, &mut rng);
        let form = char3_standard_form(&a1, &f.from_i64(j)).unwrap();
        prop_assert!(char3_bad_places(&form.b).unwrap().is_empty());
        let mut cur = a1.clone();
        for st in &form.trace {
            prop_assert_eq!(&st.a_before, &cur);
            prop_assert!(st.a_after.val_at(&st.place) > st.a_before.val_at(&st.place));
            cur = st.a_after.clone();
        }
        prop_assert_eq!(cur, form.b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_shape_and_identities(seed in any::<u64>(), fi in 0usize..8) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coef = ratfn(&f, 5, &mut rng);
        let p3 = f.characteristic() == 3;
        if p3 {
            coef = char3_standard_form(&coef, &f.one()).unwrap().b;
        }
        let model = if p3 { CubicModel::from_b(&coef) } else { CubicModel::from_a(&coef) };
        prop_assume!(!model.disc().is_zero());
        prop_assume!(model_is_irreducible(&model).unwrap());
        let params = match CubicParams::new(&coef) {
            Err(Error::DegenerateInput(_)) => return Ok(()),
            other => other.unwrap(),
        };
        let r = &params.report;
        prop_assert_eq!(IdealFactored::from_poly(&r.delta_omega).unwrap(), r.index.pow(2).mul(&r.disc));
        let built = build(&params).unwrap();
        let b = &built.basis;
        prop_assert!(b.is_lower_triangular());
        let m = b.matrix();
        let diag = [m[0][0].clone(), m[1][1].clone(), m[2][2].clone()];
        let expect = if let Some(d) = &params.p3 {
            let s1 = RatFn::new(tricubic::disc::p3_scale(d, 1), d.xi2.clone()).unwrap();
            let s2 = RatFn::new(tricubic::disc::p3_scale(d, 2), &d.xi1 * &d.xi2.square()).unwrap();
            [RatFn::one(&f), s1, s2]
        } else {
            let (t, v) = (built.t.as_ref().unwrap(), built.v.as_ref().unwrap());
            prop_assert!(check_congruences(&params.model, &params.index_poly, t, v).unwrap().all());
            [RatFn::one(&f), RatFn::one(&f), RatFn::from_poly(params.index_poly.clone()).inv().unwrap()]
        };
        prop_assert_eq!(diag, expect);
        prop_assert_eq!(disc_of_basis(b, &params.model).unwrap(), r.disc.clone());
        if f.characteristic() == 2 {
            // -1 marks a prime of the numerator where the resolvent is unramified.
            for (_, l) in &r.ell {
                prop_assert!(*l == -1 || (*l > 0 && *l % 2 == 1));
            }
        }
        let total: Vec<_> = ram_classify(&coef)
            .unwrap()
            .into_iter()
            .filter(|e| e.kind == RamKind::TotalE3)
            .map(|e| e.place)
            .collect();
        let beta = params.pne3.as_ref().map(|d| d.beta.clone()).or(params.p3.as_ref().map(|d| d.beta.clone())).unwrap();
        let support: Vec<_> = IdealFactored::from_poly(&beta).unwrap().places().cloned().collect();
        prop_assert_eq!(total, support);
    }

    #[test]
    fn identity_coordinates_give_model_discriminant(seed in any::<u64>(), fi in 0usize..8) {
        let f = field(fi);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = Poly::random(&f, 4, &mut rng);
        let d = Poly::random(&f, 4, &mut rng);
        let model = CubicModel::new(RatFn::from_poly(c.clone()), RatFn::from_poly(d.clone()));
        let delta = cubic_disc(&Poly::zero(&f), &c, &d);
        prop_assume!(!delta.is_zero());
        prop_assert_eq!(disc_of_basis(&TriBasis::power(&f), &model).unwrap(), IdealFactored::from_poly(&delta).unwrap());
    }
}
