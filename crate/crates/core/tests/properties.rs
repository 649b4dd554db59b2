use isolyap_core::ensembles::{sample_matrix, EnsembleSpec, FieldIndex, RowDistribution};
use isolyap_core::exact::{det_distribution, det_moment, lyapunov_partial_sums_gaussian, lyapunov_sum};
use isolyap_core::mhg::{enumerate_partitions, gen_pochhammer, mhg_1f1_scalar, MhgParams, Partition};
use isolyap_core::specfun::{digamma, kummer_1f1, pochhammer};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field() -> impl Strategy<Value = FieldIndex> {
    prop_oneof![Just(FieldIndex::Real), Just(FieldIndex::Complex), Just(FieldIndex::Quaternion)]
}

fn isotropic_spec() -> impl Strategy<Value = EnsembleSpec> {
    (field(), 1usize..5, 0usize..3, prop::collection::vec(0.3f64..6.0, 5)).prop_map(|(f, n, family, ps)| {
        let rows = ps[..n]
            .iter()
            .map(|&p| match family {
                0 => RowDistribution::Gaussian { sigma: p },
                1 => RowDistribution::BetaI { nu: p },
                _ => RowDistribution::BetaII { omega: p + 2.0 },
            })
            .collect();
        EnsembleSpec::new(f, rows).unwrap()
    })
}

/// Partition counts from Euler's product, as an independent oracle.
fn partition_numbers(max: usize) -> Vec<usize> {
    let mut p = vec![0usize; max + 1];
    p[0] = 1;
    for part in 1..=max {
        for w in part..=max {
            p[w] += p[w - part];
        }
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn digamma_step(x in 0.05f64..80.0) {
        let d = digamma(x + 1.0).unwrap() - digamma(x).unwrap();
        prop_assert!((d - 1.0 / x).abs() < 1e-11 * (1.0 / x).max(1.0));
    }

    #[test]
    fn pochhammer_step(c in 0.1f64..20.0, n in -0.09f64..15.0) {
        let lhs = pochhammer(c, n + 1.0).unwrap();
        let rhs = pochhammer(c, n).unwrap() * (c + n);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * rhs.abs());
    }

    #[test]
    fn kummer_transform(a in 0.01f64..5.0, b in 0.01f64..5.0, x in -20.0f64..20.0) {
        let lhs = kummer_1f1(a, b, x).unwrap().value;
        let rhs = x.exp() * kummer_1f1(b - a, b, -x).unwrap().value;
        prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(rhs.abs()).max(1e-300), "{lhs} vs {rhs}");
    }

    #[test]
    fn det_moment_matches_factorization(spec in isotropic_spec(), alpha in -0.2f64..2.0) {
        let dist = det_distribution(&spec).unwrap();
        match det_moment(&spec, alpha) {
            Ok(direct) => {
                let via = dist.moment(alpha).unwrap();
                prop_assert!((direct - via).abs() <= 1e-12 * via.abs());
            }
            Err(_) => prop_assert!(dist.moment(alpha).is_err()),
        }
        prop_assert_eq!(det_moment(&spec, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn lyapunov_sum_is_log_moment_slope(spec in isotropic_spec()) {
        // d/dalpha <|det|^{2 alpha}> at 0 equals twice the exponent sum
        let h = 1e-5;
        let up = det_moment(&spec, h).unwrap();
        let down = det_moment(&spec, -h).unwrap();
        let slope = (up - down) / (2.0 * h);
        let sum = lyapunov_sum(&spec).unwrap();
        prop_assert!((0.5 * slope - sum).abs() < 1e-6 * sum.abs().max(1.0), "{slope} vs {sum}");
    }

    #[test]
    fn quaternion_determinants_are_real_and_halved(seed in any::<u64>(), n in 1usize..4) {
        let spec = EnsembleSpec::gaussian(FieldIndex::Quaternion, &vec![1.0; n]).unwrap();
        let m = sample_matrix(&spec, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert!(m.has_quaternion_structure());
        let det = m.embedding().determinant();
        prop_assert!(det.im.abs() <= 1e-10 * det.re.abs());
        prop_assert!(det.re > 0.0);
        prop_assert!((0.5 * det.re.ln() - m.log_abs_det()).abs() < 1e-10);
    }

    #[test]
    fn terminating_series_are_exact_polynomials(f in field(), k in 1usize..4, a in 1usize..4, t in -2.0f64..2.0) {
        let b = 0.5 * f.beta() * 4.0;
        let p = MhgParams::f11(f, -(a as f64), b, t, k);
        let base = mhg_1f1_scalar(&p).unwrap();
        prop_assert!(base.terminated);
        let more = mhg_1f1_scalar(&p.with_max_weight(k * a + 3)).unwrap();
        prop_assert_eq!(base.value, more.value);
    }

    #[test]
    fn pochhammer_of_single_part_is_classical(a in -3.0f64..3.0, len in 0usize..6, alpha in prop_oneof![Just(0.5), Just(1.0), Just(2.0)]) {
        let kappa = Partition::new(vec![len]).unwrap();
        let mut want = 1.0;
        for j in 0..len {
            want *= a + j as f64;
        }
        prop_assert_eq!(gen_pochhammer(a, &kappa, alpha), want);
    }
}

#[test]
fn partition_enumeration_is_complete() {
    let max = 14;
    let p = partition_numbers(max);
    let all = enumerate_partitions(max, max);
    for (w, &count) in p.iter().enumerate() {
        let of_w: Vec<&Partition> = all.iter().filter(|k| k.weight() == w).collect();
        assert_eq!(of_w.len(), count, "weight {w}");
        let mut unique = of_w.clone();
        unique.dedup();
        assert_eq!(unique.len(), of_w.len());
    }
    assert!(all.windows(2).all(|x| x[0].weight() <= x[1].weight()));
    let small: Vec<Vec<usize>> = enumerate_partitions(2, 2).iter().map(|k| k.parts().to_vec()).collect();
    assert_eq!(small, vec![vec![], vec![1], vec![2], vec![1, 1]]);
}

#[test]
fn scalar_gaussian_exponent() {
    let spec = EnsembleSpec::gaussian(FieldIndex::Real, &[1.0]).unwrap();
    let v = lyapunov_sum(&spec).unwrap();
    assert!((v + 0.635_181_422_730_739).abs() < 1e-13, "{v}");
    let sums = lyapunov_partial_sums_gaussian(1, FieldIndex::Real, 1.0).unwrap();
    assert_eq!(sums.values.len(), 1);
    assert!((sums.values[0] - v).abs() < 1e-15);
}
