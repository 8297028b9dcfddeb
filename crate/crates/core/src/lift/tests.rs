use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::chain_ring::ChainRingElement::Int;
use crate::dcodes::{sample_code, TwistParams};
use crate::gf::FieldCtx;
use crate::polyring::QuotientCtx;

fn z(p: u64, s: u32) -> ChainRingCtx {
    ChainRingCtx::zp_pow(p, s).unwrap()
}

fn f2u(ell: u32) -> ChainRingCtx {
    ChainRingCtx::fq_u(&FieldCtx::new(2, 1).unwrap(), ell).unwrap()
}

fn word(prime: Vec<ChainRingElement>, main: Vec<ChainRingElement>) -> LiftedWord {
    LiftedWord { prime, main }
}

#[test]
fn config_validation() {
    let cfg = RingPairConfig::new(&z(2, 3), &z(2, 2), &Int(5)).unwrap();
    assert_eq!(cfg.lambda_prime(), &Int(1));
    assert_eq!(cfg.order(), 1);
    assert!(matches!(RingPairConfig::new(&z(2, 2), &z(2, 3), &Int(1)), Err(Error::IncompatibleRings(_))));
    assert!(matches!(RingPairConfig::new(&z(2, 3), &z(2, 2), &Int(2)), Err(Error::NotAUnit)));
    assert!(RingPairConfig::new(&z(2, 3), &f2u(2), &Int(1)).is_err());
    assert!(RingPairConfig::new(&z(3, 2), &z(2, 1), &Int(1)).is_err());
    let cfg = RingPairConfig::new(&z(3, 2), &z(3, 1), &Int(5)).unwrap();
    assert_eq!(cfg.order(), 2);
    assert_eq!(cfg.lambda_prime(), &Int(2));
}

#[test]
fn eta_alpha_checks_residue() {
    let f3 = FieldCtx::new(3, 1).unwrap();
    let ctx = QuotientCtx::new(&f3, 4, f3.from_int(2)).unwrap();
    let x = ctx.from_coeffs(vec![f3.from_int(1), f3.from_int(2), f3.zero(), f3.from_int(1)]).unwrap();
    let r = z(3, 2);
    assert_eq!(eta_alpha(&x, &r, &Int(5)).unwrap(), vec![Int(3), Int(6), Int(0), Int(3)]);
    assert!(matches!(eta_alpha(&x, &r, &Int(1)), Err(Error::ResidueMismatch)));
}

#[test]
fn eta_is_semilinear() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (ring, lambda) in [(z(2, 3), Int(5)), (z(3, 2), Int(8)), (f2u(3), f2u(3).one())] {
        let f = ring.residue_field().clone();
        let n_total = 6;
        let ctx = QuotientCtx::new(&f, n_total, ring.residue(&lambda)).unwrap();
        for _ in 0..20 {
            let g = ctx.random(&mut rng);
            let h = ctx.random(&mut rng);
            let lhs = eta_alpha(&g.mul(&h).unwrap(), &ring, &lambda).unwrap();
            let g_hat: Vec<ChainRingElement> = g.coeffs().iter().map(|&c| ring.lift(c)).collect();
            let rhs = ring_mul_mod(&g_hat, &eta_alpha(&h, &ring, &lambda).unwrap(), &ring, &lambda, n_total);
            assert_eq!(lhs, rhs);
            let sum = eta_alpha(&g.add(&h).unwrap(), &ring, &lambda).unwrap();
            let parts: Vec<ChainRingElement> = eta_alpha(&g, &ring, &lambda)
                .unwrap()
                .iter()
                .zip(eta_alpha(&h, &ring, &lambda).unwrap())
                .map(|(a, b)| ring.add(a, &b))
                .collect();
            assert_eq!(sum, parts);
        }
    }
}

#[test]
fn eta_kernel_is_the_ideal() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ring = z(3, 3);
    let lambda = Int(11);
    let f = ring.residue_field().clone();
    let n_total = 5;
    let lambda_bar = ring.residue(&lambda);
    let modulus = Poly::binomial(&f, n_total, lambda_bar);
    let ctx = QuotientCtx::new(&f, n_total, lambda_bar).unwrap();
    for trial in 0..200 {
        let p = if trial % 2 == 0 {
            let coeffs: Vec<FieldElement> = (0..2 * n_total).map(|_| f.random(&mut rng)).collect();
            Poly::new(coeffs)
        } else {
            let m: Vec<FieldElement> = (0..4).map(|_| f.random(&mut rng)).collect();
            Poly::new(m).mul(&modulus, &f)
        };
        let image = eta_poly(&p, &ring, &lambda, n_total).unwrap();
        let in_kernel = image.iter().all(|x| ring.is_zero(x));
        assert_eq!(in_kernel, ctx.from_poly(&p).is_zero(), "trial {trial}");
        assert_eq!(in_kernel, p.rem(&modulus, &f).unwrap().is_zero());
    }
}

fn check_lift(field: &FieldCtx, lambda_bar: u32, alpha: usize, alpha_prime: usize, n: usize, cfg: &RingPairConfig, seeds: u64) {
    let params = TwistParams::new(field, field.gen_power(lambda_bar as u64), alpha, alpha_prime, n).unwrap();
    for seed in 0..seeds {
        let code = sample_code(&params, seed);
        let lifted = lift_code(&code, cfg).unwrap();
        assert!(verify_rr_closure(&lifted), "seed {seed}");
        let report = lifted_report(&lifted, 1 << 16);
        assert!(report.enumerated);
        assert!(report.delta_rescale_check, "seed {seed}: {report:?}");
        assert_eq!(report.min_wt, report.source.min_wt);
        let words = lifted.enumerate(1 << 16).unwrap();
        let distinct: HashSet<&LiftedWord> = words.iter().collect();
        assert_eq!(distinct.len() as u64, (field.q() as u64).pow(code.dim() as u32));
        // shift closure checked directly on the enumerated set
        for w in words.iter().take(64) {
            assert!(distinct.contains(&lifted.double_shift(w)));
        }
    }
}

#[test]
fn lifts_over_integer_residue_rings() {
    let f2 = FieldCtx::new(2, 1).unwrap();
    let cfg = RingPairConfig::new(&z(2, 3), &z(2, 2), &Int(3)).unwrap();
    check_lift(&f2, 0, 1, 2, 3, &cfg, 6);
    let cfg = RingPairConfig::new(&z(2, 2), &z(2, 2), &Int(1)).unwrap();
    check_lift(&f2, 0, 1, 1, 5, &cfg, 4);
    let f3 = FieldCtx::new(3, 1).unwrap();
    let cfg = RingPairConfig::new(&z(3, 2), &z(3, 1), &Int(5)).unwrap();
    check_lift(&f3, 1, 1, 3, 5, &cfg, 4);
}

#[test]
fn lifts_over_truncated_polynomial_rings() {
    let f2 = FieldCtx::new(2, 1).unwrap();
    let cfg = RingPairConfig::new(&f2u(3), &f2u(2), &f2u(3).one()).unwrap();
    check_lift(&f2, 0, 2, 1, 3, &cfg, 4);
    let field = ChainRingCtx::field(&f2);
    let cfg = RingPairConfig::new(&field, &field, &field.one()).unwrap();
    check_lift(&f2, 0, 1, 2, 3, &cfg, 4);
}

#[test]
fn rescaled_distance() {
    let f2 = FieldCtx::new(2, 1).unwrap();
    let params = TwistParams::new(&f2, f2.one(), 1, 2, 7).unwrap();
    let cfg = RingPairConfig::new(&z(2, 3), &z(2, 2), &Int(1)).unwrap();
    let code = sample_code(&params, 1);
    let lifted = lift_code(&code, &cfg).unwrap();
    assert_eq!(lifted.length(), 2 * 7 * 2 + 7 * 3);
    assert_eq!(lifted.rescale_factor(), Ratio::new(3, 7));
    let report = lifted_report(&lifted, 1 << 16);
    let w = report.min_wt.unwrap() as u64;
    assert_eq!(report.delta, Some(Ratio::new(w, 49)));
    assert_eq!(report.rate, Ratio::new(code.dim() as u64, 49));
    let j = report.to_json();
    for key in ["length", "log_q_size", "delta", "rate", "delta_rescale_check"] {
        assert!(j.get(key).is_some(), "{key}");
    }
    // the fallback path reports the source weight
    let small = lifted_report(&lifted, 4);
    assert!(!small.enumerated);
    assert!(small.delta_rescale_check);
}

#[test]
fn lift_rejects_mismatched_lambda() {
    let f3 = FieldCtx::new(3, 1).unwrap();
    let params = TwistParams::new(&f3, f3.from_int(2), 1, 3, 5).unwrap();
    let code = sample_code(&params, 0);
    let cfg = RingPairConfig::new(&z(3, 2), &z(3, 1), &Int(1)).unwrap();
    assert!(matches!(lift_code(&code, &cfg), Err(Error::ResidueMismatch)));
}

#[test]
fn closure_detects_non_closed_rows() {
    let r = z(2, 2);
    let cfg = RingPairConfig::new(&r, &r, &Int(1)).unwrap();
    let e = Int(2);
    let zero = Int(0);
    let single = word(vec![e.clone(), zero.clone()], vec![zero.clone(), zero.clone(), zero.clone()]);
    assert!(!rows_closed(&[single], &cfg));
    let all = word(vec![e.clone(); 2], vec![e.clone(); 3]);
    assert!(rows_closed(&[all], &cfg));
    assert!(rows_closed(&[], &cfg));
}

#[test]
fn membership_needs_annihilator_rows() {
    let r = z(2, 2);
    let m = RowModule::new(&r, &r, &[word(vec![], vec![Int(2), Int(1)])]);
    assert!(m.contains(&word(vec![], vec![Int(0), Int(2)])));
    assert!(m.contains(&word(vec![], vec![Int(2), Int(3)])));
    assert!(!m.contains(&word(vec![], vec![Int(0), Int(1)])));
    assert!(!m.contains(&word(vec![], vec![Int(2), Int(0)])));
    assert_eq!(m.pivot_count(), 2);
}

/// Membership against brute-force enumeration of all `R`-combinations, with
/// the `R'` coordinates acted on through `ρ`.
#[test]
fn membership_matches_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (r, rp) = (z(2, 3), z(2, 2));
    let all_r = r.elements();
    let all_rp = rp.elements();
    for _ in 0..30 {
        let rows: Vec<LiftedWord> = (0..2)
            .map(|_| word(vec![rp.random(&mut rng)], vec![r.random(&mut rng), r.random(&mut rng)]))
            .collect();
        let mut span = HashSet::new();
        for c0 in &all_r {
            for c1 in &all_r {
                let act = |c: &ChainRingElement, w: &LiftedWord| -> LiftedWord {
                    let cp = r.epimorphism(c, &rp).unwrap();
                    word(
                        w.prime.iter().map(|x| rp.mul(&cp, x)).collect(),
                        w.main.iter().map(|x| r.mul(c, x)).collect(),
                    )
                };
                let (a, b) = (act(c0, &rows[0]), act(c1, &rows[1]));
                span.insert(word(
                    vec![rp.add(&a.prime[0], &b.prime[0])],
                    a.main.iter().zip(&b.main).map(|(x, y)| r.add(x, y)).collect(),
                ));
            }
        }
        let m = RowModule::new(&r, &rp, &rows);
        for x in &all_rp {
            for y in &all_r {
                for zz in &all_r {
                    let w = word(vec![x.clone()], vec![y.clone(), zz.clone()]);
                    assert_eq!(m.contains(&w), span.contains(&w));
                }
            }
        }
        let _ = rng.gen::<u8>();
    }
}
