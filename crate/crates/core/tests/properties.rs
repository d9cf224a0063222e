//! Randomized invariants over arbitrary nonnegative chroma.

use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use tonalspace::descriptors::{
    chromaticity, cosine_similarity, diatonicity, dissonance, euclid, harmonic_change,
    wholetoneness, ChangeOptions,
};
use tonalspace::tiv::wrap_phase;
use tonalspace::{combine, ChromaVector, Tiv, WeightVector, DEFAULT_WEIGHTS};

fn naive_dft(c: &[f64; 12]) -> [Complex64; 6] {
    let total: f64 = c.iter().sum();
    std::array::from_fn(|i| {
        let k = i + 1;
        let s: Complex64 = (0..12)
            .map(|n| Complex64::from_polar(c[n] / total, -2.0 * PI * (k * n) as f64 / 12.0))
            .sum();
        s * DEFAULT_WEIGHTS[i]
    })
}

fn chroma() -> impl Strategy<Value = ChromaVector> {
    prop::array::uniform12(0.0f64..10.0)
        .prop_filter("non-silent", |b| b.iter().sum::<f64>() > 1e-6)
        .prop_map(|b| ChromaVector::new(b).unwrap())
}

fn tiv(c: &ChromaVector) -> Tiv {
    Tiv::from_chroma(c, &WeightVector::default())
}

fn qualities(t: &Tiv) -> [f64; 4] {
    [
        chromaticity(t).value,
        diatonicity(t).value,
        wholetoneness(t).value,
        dissonance(t).value,
    ]
}

proptest! {
    #[test]
    fn matches_naive_dft(c in chroma()) {
        let t = tiv(&c);
        let oracle = naive_dft(c.bins());
        for k in 1..=6 {
            prop_assert!((t.coeff(k) - oracle[k - 1]).norm() <= 1e-9);
        }
    }

    #[test]
    fn bounded_by_weights(c in chroma()) {
        let t = tiv(&c);
        for (m, w) in t.mag().iter().zip(DEFAULT_WEIGHTS) {
            prop_assert!(*m <= w + 1e-12);
        }
        for q in qualities(&t) {
            prop_assert!((0.0..=1.0 + 1e-12).contains(&q));
        }
    }

    #[test]
    fn scale_invariant(c in chroma(), s in 0.01f64..100.0) {
        let a = tiv(&c);
        let b = tiv(&c.scale(s).unwrap());
        for k in 1..=6 {
            prop_assert!((a.coeff(k) - b.coeff(k)).norm() <= 1e-12);
        }
        prop_assert!((b.energy() - s * a.energy()).abs() <= 1e-9 * b.energy());
    }

    #[test]
    fn transposition_rotates_phases(c in chroma(), p in -24i64..24) {
        let a = tiv(&c);
        let b = tiv(&c.rotate(p));
        let direct = a.transpose(p);
        let (pa, pb) = (a.phases(), b.phases());
        for k in 1..=6 {
            prop_assert!((a.mag()[k - 1] - b.mag()[k - 1]).abs() <= 1e-12);
            prop_assert!((direct.coeff(k) - b.coeff(k)).norm() <= 1e-12);
            if let (Some(x), Some(y)) = (pa.get(k), pb.get(k)) {
                if a.mag()[k - 1] > 1e-6 {
                    let expected = wrap_phase(x - 2.0 * PI * (k as i64 * p) as f64 / 12.0);
                    prop_assert!(wrap_phase(y - expected).abs() <= 1e-9);
                }
            }
        }
        for (qa, qb) in qualities(&a).iter().zip(qualities(&b)) {
            prop_assert!((qa - qb).abs() <= 1e-12);
        }
    }

    #[test]
    fn combine_is_linear(c1 in chroma(), c2 in chroma()) {
        let mixed = combine(&[tiv(&c1), tiv(&c2)]).unwrap();
        let direct = tiv(&(c1 + c2));
        for k in 1..=6 {
            prop_assert!((mixed.coeff(k) - direct.coeff(k)).norm() <= 1e-12);
        }
    }

    #[test]
    fn euclid_is_a_metric(a in chroma(), b in chroma(), c in chroma()) {
        let (a, b, c) = (tiv(&a), tiv(&b), tiv(&c));
        prop_assert_eq!(euclid(&a, &a).unwrap(), 0.0);
        prop_assert!((euclid(&a, &b).unwrap() - euclid(&b, &a).unwrap()).abs() <= 1e-12);
        prop_assert!(euclid(&a, &c).unwrap() <= euclid(&a, &b).unwrap() + euclid(&b, &c).unwrap() + 1e-9);
    }

    #[test]
    fn joint_rotation_preserves_cosine(a in chroma(), b in chroma(), p in 0i64..12) {
        let (a, b) = (tiv(&a), tiv(&b));
        prop_assume!(a.norm() > 1e-9 && b.norm() > 1e-9);
        let before = cosine_similarity(&a, &b).unwrap();
        let after = cosine_similarity(&a.transpose(p), &b.transpose(p)).unwrap();
        prop_assert!((before - after).abs() <= 1e-9);
    }

    #[test]
    fn change_curve_is_pairwise_euclid(frames in prop::collection::vec(chroma(), 3..20)) {
        let tivs: Vec<Tiv> = frames.iter().map(tiv).collect();
        let s = harmonic_change(&tivs, &ChangeOptions::default()).unwrap();
        prop_assert_eq!(s.values.len(), tivs.len());
        prop_assert_eq!(s.values[0], 0.0);
        prop_assert_eq!(s.values[tivs.len() - 1], 0.0);
        for m in 1..tivs.len() - 1 {
            prop_assert_eq!(s.values[m], euclid(&tivs[m - 1], &tivs[m + 1]).unwrap());
        }
        for &p in &s.peaks {
            prop_assert!(s.values[p - 1] < s.values[p] && s.values[p] >= s.values[p + 1]);
            prop_assert!(s.values[p] >= s.threshold);
        }
    }
}

#[test]
fn silent_chroma_never_produces_nan() {
    let z = tiv(&ChromaVector::zeros());
    assert!(qualities(&z).iter().all(|q| q.is_finite()));
    let impulse = tiv(&ChromaVector::one_hot(3));
    assert_eq!(euclid(&z, &impulse).unwrap(), impulse.norm());
    let s = harmonic_change(&[z, z, z], &ChangeOptions::default()).unwrap();
    assert!(s.values.iter().all(|v| *v == 0.0) && s.peaks.is_empty());
}
