use num_traits::{Signed, Zero};
use proptest::prelude::*;

use sigcocycle::bundle::{bundle_signature, CoeffGroup, Extension, Monodromy};
use sigcocycle::circle::{NiceCochain, PiecewiseCocycle};
use sigcocycle::congruence::{in_k, in_y, parity_generators, reduce_mod, ModMat};
use sigcocycle::forms::signature_of_symmetric;
use sigcocycle::maslov::{wall_maslov, wall_maslov_g1_closed, Lagrangian};
use sigcocycle::meyer::{meyer_cocycle, meyer_via_graphs, Cocycle, MeyerCocycle, ZeroCocycle};
use sigcocycle::rational::{frac, int, Rat};
use sigcocycle::rng::Lcg;
use sigcocycle::symplectic::{random_symplectic, random_symplectic_with, random_word, SpMat};
use sigcocycle::Mat;

/// Characteristic polynomial coefficients `c_0 = 1, c_1, .., c_n` of
/// `det(xI - A) = Σ c_k x^{n-k}` by Faddeev-LeVerrier.
fn char_poly(a: &Mat) -> Vec<Rat> {
    let n = a.rows();
    let mut coeffs = vec![int(1)];
    let mut m = Mat::zeros(n, n);
    for k in 1..=n {
        let shifted = &m + &Mat::identity(n).scale(&coeffs[k - 1]);
        m = a * &shifted;
        let trace: Rat = (0..n).map(|i| m.get(i, i).clone()).sum();
        coeffs.push(-trace / int(k as i64));
    }
    coeffs
}

fn sign_changes(seq: impl Iterator<Item = Rat>) -> usize {
    let signs: Vec<bool> = seq.filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Inertia of a symmetric matrix from Descartes' rule, exact because all
/// roots of its characteristic polynomial are real.
fn inertia_oracle(a: &Mat) -> (usize, usize, usize) {
    let n = a.rows();
    let c = char_poly(a);
    // coefficient of x^j is c[n - j]
    let zero = (0..=n).take_while(|&j| c[n - j].is_zero()).count();
    let plus = sign_changes((0..=n).rev().map(|j| c[n - j].clone()));
    let minus = sign_changes((0..=n).rev().map(|j| if j % 2 == 1 { -c[n - j].clone() } else { c[n - j].clone() }));
    (plus, minus, zero)
}

fn symmetric_from(n: usize, vals: &[i64], rank_cut: usize) -> Mat {
    let b = Mat::from_fn(n, rank_cut.max(1), |i, j| int(vals[(i * 7 + j * 3) % vals.len()]));
    let d = Mat::from_fn(rank_cut.max(1), rank_cut.max(1), |i, j| if i == j { int(vals[i % vals.len()]) } else { Rat::zero() });
    &(&b * &d) * &b.transpose()
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 200,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x51c0),
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn signature_matches_char_poly(n in 1usize..7, vals in prop::collection::vec(-4i64..5, 49)) {
        let a = Mat::from_fn(n, n, |i, j| {
            let (i, j) = (i.min(j), i.max(j));
            int(vals[i * 7 + j])
        });
        let s = signature_of_symmetric(&a).unwrap();
        prop_assert_eq!((s.plus, s.minus, s.zero), inertia_oracle(&a));
    }

    #[test]
    fn signature_low_rank(n in 1usize..7, r in 0usize..4, vals in prop::collection::vec(-3i64..4, 16)) {
        let a = symmetric_from(n, &vals, r);
        let s = signature_of_symmetric(&a).unwrap();
        prop_assert_eq!((s.plus, s.minus, s.zero), inertia_oracle(&a));
    }

    #[test]
    fn kernel_is_kernel(rows in 1usize..5, cols in 1usize..7, vals in prop::collection::vec(-3i64..4, 35)) {
        let m = Mat::from_fn(rows, cols, |i, j| frac(vals[i * 7 + j], 1 + (i + j) as i64 % 2));
        let k = m.kernel_basis();
        prop_assert_eq!(k.cols(), cols - m.rank());
        prop_assert!((&m * &k).is_zero());
        prop_assert_eq!(k.rank(), k.cols());
    }

    #[test]
    fn symplectic_inverse_and_form(g in 1usize..4, len in 0usize..10, seed in any::<u64>()) {
        let a = random_symplectic(g, len, seed);
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert!(a.mat().inverse().unwrap() == a.inverse().into_mat());
    }

    #[test]
    fn meyer_conjugation_invariant(g in 1usize..4, seed in any::<u64>()) {
        let mut rng = Lcg::new(seed);
        let a = random_symplectic_with(g, 6, &mut rng);
        let b = random_symplectic_with(g, 6, &mut rng);
        let c = random_symplectic_with(g, 5, &mut rng);
        let ci = c.inverse();
        let v = meyer_cocycle(&a, &b).unwrap();
        prop_assert_eq!(meyer_cocycle(&c.mul(&a).mul(&ci), &c.mul(&b).mul(&ci)).unwrap(), v);
        prop_assert_eq!(meyer_via_graphs(&a, &b).unwrap(), v);
        prop_assert_eq!(meyer_cocycle(&SpMat::identity(g), &b).unwrap(), 0);
        prop_assert_eq!(meyer_cocycle(&a, &SpMat::identity(g)).unwrap(), 0);
        prop_assert_eq!(meyer_cocycle(&b, &a).unwrap(), v);
        prop_assert_eq!(meyer_cocycle(&a.inverse(), &b.inverse()).unwrap(), -v);
    }

    #[test]
    fn extension_laws(g in 1usize..3, seed in any::<u64>(), zero in any::<bool>()) {
        let mut rng = Lcg::new(seed);
        let xs: Vec<SpMat> = (0..3).map(|_| random_symplectic_with(g, 5, &mut rng)).collect();
        let decs: Vec<i64> = (0..3).map(|_| rng.range_i64(-5, 5)).collect();
        fn laws<C: Cocycle>(ext: &Extension<C>, g: usize, xs: &[SpMat], decs: &[i64]) -> Result<(), TestCaseError> {
            let e: Vec<_> = xs.iter().zip(decs).map(|(x, &d)| ext.element(d, x.clone())).collect();
            let left = ext.mul(&ext.mul(&e[0], &e[1]).unwrap(), &e[2]).unwrap();
            let right = ext.mul(&e[0], &ext.mul(&e[1], &e[2]).unwrap()).unwrap();
            prop_assert_eq!(left, right);
            let one = ext.identity(g).unwrap();
            for x in &e {
                prop_assert_eq!(ext.mul(&ext.inv(x).unwrap(), x).unwrap(), one.clone());
                prop_assert_eq!(ext.mul(x, &ext.inv(x).unwrap()).unwrap(), one.clone());
                prop_assert_eq!(ext.mul(&one, x).unwrap(), x.clone());
            }
            Ok(())
        }
        if zero {
            laws(&Extension::new(ZeroCocycle, CoeffGroup::INTEGERS), g, &xs, &decs)?;
        } else {
            laws(&Extension::new(MeyerCocycle, CoeffGroup::INTEGERS), g, &xs, &decs)?;
            laws(&Extension::new(MeyerCocycle, CoeffGroup::new(8).unwrap()), g, &xs, &decs)?;
        }
    }

    #[test]
    fn open_bundle_sum_is_lift_decoration(g in 1usize..3, h in 1usize..4, seed in any::<u64>()) {
        let mut rng = Lcg::new(seed);
        let pairs: Vec<(SpMat, SpMat)> = (0..h)
            .map(|_| (random_symplectic_with(g, 4, &mut rng), random_symplectic_with(g, 4, &mut rng)))
            .collect();
        let m = Monodromy::new(pairs.clone()).unwrap();
        let ext = Extension::new(MeyerCocycle, CoeffGroup::INTEGERS);
        let mut lifts = Vec::new();
        for (u, v) in &pairs {
            for x in [u.clone(), v.clone(), u.inverse(), v.inverse()] {
                lifts.push(ext.lift(&x));
            }
        }
        let total = ext.product(g, &lifts).unwrap();
        prop_assert_eq!(bundle_signature(&m, true).unwrap(), -total.decoration);
    }

    #[test]
    fn parity_membership_is_mod4(g in 1usize..4, seed in any::<u64>(), level in prop::sample::select(vec![1i64, 2, 4])) {
        let mut rng = Lcg::new(seed);
        let alphabet = sigcocycle::symplectic::transvection_alphabet(g, level);
        let m = random_word(&alphabet, g, 6, &mut rng);
        prop_assert_eq!(in_k(&m), in_y(&reduce_mod(&m, 4).unwrap()).unwrap());
        if level == 4 {
            prop_assert!(in_k(&m));
        }
    }

    #[test]
    fn parity_subgroup_normal(g in 1usize..4, seed in any::<u64>()) {
        let mut rng = Lcg::new(seed);
        let k = random_word(&parity_generators(g), g, 6, &mut rng);
        let s = random_symplectic_with(g, 6, &mut rng);
        prop_assert!(in_k(&k));
        prop_assert!(in_k(&s.mul(&k).mul(&s.inverse())));
    }

    #[test]
    fn modmat_encoding(g in 1usize..3, n in prop::sample::select(vec![2u32, 4, 8, 300]), seed in any::<u64>()) {
        let m = reduce_mod(&random_symplectic(g, 6, seed), n).unwrap();
        prop_assert!(m.is_symplectic());
        prop_assert_eq!(ModMat::decode(g, n, &m.encode()).unwrap(), m.clone());
        prop_assert!(m.mul(&m.inverse()).is_identity());
    }

    #[test]
    fn covering_additive(seed in any::<u64>()) {
        let mut rng = Lcg::new(seed);
        let (f, h) = (NiceCochain::random(&mut rng, 5, 10), NiceCochain::random(&mut rng, 5, 10));
        let (m1, m2) = (rng.range_i64(-4, 4), rng.range_i64(-4, 4));
        let t1 = PiecewiseCocycle::from_standard_plus_coboundary(m1, &f).unwrap();
        let t2 = PiecewiseCocycle::from_standard_plus_coboundary(m2, &h).unwrap();
        let sum = t1.add(&t2).unwrap();
        prop_assert_eq!(sum.covering_number().unwrap(), t1.covering_number().unwrap() + t2.covering_number().unwrap());
        prop_assert_eq!(t1.scale(3).covering_number().unwrap(), 3 * m1);
    }
}

/// Fifty directions `(p, q)` with small entries, distinct as lines.
fn direction_pool() -> Vec<(Rat, Rat)> {
    let mut out: Vec<(Rat, Rat)> = Vec::new();
    'outer: for q in 0i64..9 {
        for p in -6i64..=6 {
            if (p, q) == (0, 0) || (q == 0 && p <= 0) || num_integer::gcd(p, q) != 1 {
                continue;
            }
            out.push((int(p), int(q)));
            if out.len() == 50 {
                break 'outer;
            }
        }
    }
    assert_eq!(out.len(), 50);
    out
}

#[test]
fn genus_one_closed_form_on_direction_pool() {
    let pool = direction_pool();
    let lines: Vec<Lagrangian> = pool.iter().map(|(p, q)| Lagrangian::line(p.clone(), q.clone()).unwrap()).collect();
    for (i, di) in pool.iter().enumerate() {
        for (j, dj) in pool.iter().enumerate() {
            for (k, dk) in pool.iter().enumerate() {
                let closed = wall_maslov_g1_closed((&di.0, &di.1), (&dj.0, &dj.1), (&dk.0, &dk.1)).unwrap();
                assert_eq!(wall_maslov(&lines[i], &lines[j], &lines[k]).unwrap(), closed, "triple {i} {j} {k}");
            }
        }
    }
}
