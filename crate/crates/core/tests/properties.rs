use dilog_core::numeric::roots::count_distinct_real_roots;
use dilog_core::IntPolynomial;
use dilog_core::polylog::{five_term_residual, li2_real, rogers_l};
use dilog_core::qseries::{
    inv_pochhammer_series, kursungoz_sum, nahm_sum_series, product_side_series, NahmSumSpec, ProductSpec,
};
use dilog_core::{recognize_rational, BigReal, ConstExpr, PrecisionContext, Rational};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn config(seed: u64) -> Config {
    Config {
        cases: 100,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..Config::default()
    }
}

fn unit(num: u64, ctx: &PrecisionContext) -> BigReal {
    // num / 2^53, strictly inside (0, 1)
    ctx.float(num) / ctx.float(1u64 << 53)
}

fn unit_num() -> impl Strategy<Value = u64> {
    1u64..(1u64 << 53)
}

fn assert_tiny(v: &BigReal, exp: i32) {
    let bound = BigReal::with_val(v.prec(), 10).pow_ref_i(exp);
    assert!(v.clone().abs() < bound, "|{}| not below 1e{exp}", v.to_f64());
}

trait PowI {
    fn pow_ref_i(self, e: i32) -> BigReal;
}

impl PowI for BigReal {
    fn pow_ref_i(self, e: i32) -> BigReal {
        use rug::ops::Pow;
        self.pow(e)
    }
}

proptest! {
    #![proptest_config(config(1))]

    #[test]
    fn euler_reflection(n in unit_num()) {
        let ctx = PrecisionContext::new(120);
        let x = unit(n, &ctx);
        let y = BigReal::with_val(ctx.working_bits(), 1u32 - &x);
        let r = rogers_l(&x, &ctx).unwrap() + rogers_l(&y, &ctx).unwrap() - ctx.pi_squared() / 6u32;
        assert_tiny(&r, -115);
    }
}

proptest! {
    #![proptest_config(config(2))]

    #[test]
    fn abel_duplication(n in unit_num(), neg in any::<bool>()) {
        let ctx = PrecisionContext::new(120);
        let mut x = unit(n, &ctx);
        if neg {
            x = -x;
        }
        // Li2(x) + Li2(−x) = ½ Li2(x²)
        let mx = BigReal::with_val(ctx.working_bits(), -&x);
        let x2 = BigReal::with_val(ctx.working_bits(), x.square_ref());
        let r = li2_real(&x, &ctx).unwrap() + li2_real(&mx, &ctx).unwrap() - li2_real(&x2, &ctx).unwrap() / 2u32;
        assert_tiny(&r, -115);
        // Rogers form: L(x²) = 2L(x) − 2L(x/(1+x)) for x in (0, 1)
        let ax = x.clone().abs();
        let ax2 = BigReal::with_val(ctx.working_bits(), ax.square_ref());
        let z = BigReal::with_val(ctx.working_bits(), &ax / BigReal::with_val(ctx.working_bits(), &ax + 1u32));
        let r = rogers_l(&ax2, &ctx).unwrap() - rogers_l(&ax, &ctx).unwrap() * 2u32 + rogers_l(&z, &ctx).unwrap() * 2u32;
        assert_tiny(&r, -115);
    }
}

proptest! {
    #![proptest_config(config(3))]

    #[test]
    fn five_term(a in unit_num(), b in unit_num()) {
        let ctx = PrecisionContext::new(120);
        let r = five_term_residual(&unit(a, &ctx), &unit(b, &ctx), &ctx).unwrap();
        assert_tiny(&r, -115);
    }
}

proptest! {
    #![proptest_config(config(4))]

    #[test]
    fn random_reals_not_recognized(words in proptest::collection::vec(any::<u64>(), 7)) {
        let ctx = PrecisionContext::new(120);
        // 448 random bits in (0, 1)
        let mut v = ctx.zero();
        for w in &words {
            v = (v + ctx.float(*w)) / ctx.float(2).pow_ref_i(64);
        }
        prop_assert_eq!(recognize_rational(&v, 10_000, 100), None);
    }

    #[test]
    fn rationals_recognized(p in -100_000i64..100_000, q in 1i64..10_000) {
        let ctx = PrecisionContext::new(120);
        let r = Rational::from((p, q));
        let v = BigReal::with_val(ctx.working_bits(), &r);
        prop_assert_eq!(recognize_rational(&v, 10_000, 100), Some(r));
    }
}

fn leaf() -> impl Strategy<Value = String> {
    prop_oneof![
        (1u32..50).prop_map(|n| n.to_string()),
        (1u32..50, 2u32..20).prop_map(|(n, d)| format!("{n}/{d}")),
        Just("pi".to_string()),
    ]
}

fn expr_text() -> impl Strategy<Value = String> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) + ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) - ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) * ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) / (({b})^2 + 1)")),
            inner.clone().prop_map(|a| format!("-({a})")),
            (inner.clone(), 1u32..4).prop_map(|(a, k)| format!("({a})^{k}")),
            inner.clone().prop_map(|a| format!("sqrt(({a})^2 + 1)")),
            inner.clone().prop_map(|a| format!("sin({a})")),
            inner.clone().prop_map(|a| format!("cos({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(config(5))]

    #[test]
    fn print_parse_round_trip(text in expr_text()) {
        let ctx = PrecisionContext::new(40);
        let e = ConstExpr::parse(&text).unwrap();
        let printed = e.to_string();
        let e2 = ConstExpr::parse(&printed).unwrap();
        prop_assert_eq!(e2.to_string(), printed.clone());
        let (a, b) = (e.eval(&ctx).unwrap(), e2.eval(&ctx).unwrap());
        prop_assert!(dilog_core::numeric::agree_to(&a, &b, 35), "{} vs {}", text, printed);
    }
}

// Sturm-chain count of distinct real roots over exact rationals
fn sturm_count(coeffs: &[i64]) -> usize {
    fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }
    fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut r = a.to_vec();
        while r.len() >= b.len() {
            let f = Rational::from(r.last().unwrap() / b.last().unwrap());
            let shift = r.len() - b.len();
            for (k, c) in b.iter().enumerate() {
                r[k + shift] -= Rational::from(&f * c);
            }
            r = trim(r);
            if r.is_empty() {
                break;
            }
        }
        r
    }
    let p = trim(coeffs.iter().map(|&c| Rational::from(c)).collect());
    let dp: Vec<Rational> = trim(p.iter().enumerate().skip(1).map(|(k, c)| Rational::from(c * k as i64)).collect());
    let mut chain = vec![p, dp];
    while chain.last().is_some_and(|c| !c.is_empty()) {
        let n = chain.len();
        let r: Vec<Rational> = rem(&chain[n - 2], &chain[n - 1]).into_iter().map(|c| -c).collect();
        chain.push(r);
    }
    chain.pop();
    let changes = |signs: Vec<i32>| {
        let s: Vec<i32> = signs.into_iter().filter(|&s| s != 0).collect();
        s.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let sign = |c: &Rational| c.cmp0() as i32;
    let at_pos: Vec<i32> = chain.iter().map(|p| sign(p.last().unwrap())).collect();
    let at_neg: Vec<i32> = chain
        .iter()
        .map(|p| sign(p.last().unwrap()) * if (p.len() - 1) % 2 == 0 { 1 } else { -1 })
        .collect();
    changes(at_neg) - changes(at_pos)
}

proptest! {
    #![proptest_config(config(6))]

    #[test]
    fn root_count_matches_sturm(
        mut coeffs in proptest::collection::vec(-20i64..=20, 2..8),
        roots in proptest::collection::vec(-5i64..=5, 0..3),
    ) {
        if coeffs.iter().skip(1).all(|&c| c == 0) {
            *coeffs.last_mut().unwrap() = 1;
        }
        // multiply in repeated integer roots to exercise multiplicities
        let mut p = IntPolynomial::from_i64s(&coeffs);
        for r in &roots {
            let f = IntPolynomial::from_i64s(&[-r, 1]);
            p = &(&p * &f) * &f;
        }
        let c: Vec<i64> = p.coeffs().iter().map(|c| c.to_i64().unwrap()).collect();
        prop_assert_eq!(count_distinct_real_roots(&p).unwrap(), sturm_count(&c));
    }
}

// partitions of n into parts from `allowed`, by recursion on the largest part
fn brute_partitions(n: usize, allowed: &[usize]) -> u64 {
    fn go(n: usize, max_idx: usize, allowed: &[usize]) -> u64 {
        if n == 0 {
            return 1;
        }
        (0..max_idx)
            .filter(|&k| allowed[k] <= n)
            .map(|k| go(n - allowed[k], k + 1, allowed))
            .sum()
    }
    go(n, allowed.len(), allowed)
}

proptest! {
    #![proptest_config(config(7))]

    #[test]
    fn product_side_counts_partitions(modulus in 1usize..12, mask in 1u32..4096, order in 0usize..30) {
        let residues: Vec<usize> = (1..=modulus).filter(|r| mask & (1 << r) != 0).collect();
        let spec = ProductSpec::new(modulus, &residues);
        let s = product_side_series(&spec, order).unwrap();
        let allowed: Vec<usize> = (1..=order).filter(|p| residues.iter().any(|r| r % modulus == p % modulus)).collect();
        for n in 0..=order {
            prop_assert_eq!(s.coeff(n).to_u64().unwrap(), brute_partitions(n, &allowed));
        }
    }

    #[test]
    fn series_prefix_stable(which in 1u8..=3, order in 1usize..60) {
        let spec = kursungoz_sum(which).unwrap();
        let short = nahm_sum_series(&spec, order).unwrap();
        let long = nahm_sum_series(&spec, 2 * order).unwrap();
        prop_assert_eq!(long.truncate(order), short.clone());
        prop_assert!(long.is_nonnegative());
    }

    #[test]
    fn nahm_sum_matches_lattice_enumeration(b1 in 0i64..3, b2 in 0i64..4, c in 0i64..3, j1 in 1u64..3, j2 in 1u64..4) {
        let order = 24;
        let spec = NahmSumSpec { a: [[2, 3], [3, 6]], b: [b1, b2], c, j: [j1, j2] };
        let s = nahm_sum_series(&spec, order).unwrap();
        // 1/(q^j;q^j)_n counts partitions into parts from {j, 2j, …, nj}
        let mut expect = vec![0u64; order + 1];
        for n1 in 0..=order as i64 {
            for n2 in 0..=order as i64 {
                let e = n1 * n1 + 3 * n1 * n2 + 3 * n2 * n2 + b1 * n1 + b2 * n2 + c;
                if e as usize > order {
                    continue;
                }
                let p1: Vec<usize> = (1..=n1 as usize).map(|k| k * j1 as usize).collect();
                let p2: Vec<usize> = (1..=n2 as usize).map(|k| k * j2 as usize).collect();
                for m in 0..=order - e as usize {
                    let conv: u64 = (0..=m).map(|t| brute_partitions(t, &p1) * brute_partitions(m - t, &p2)).sum();
                    expect[e as usize + m] += conv;
                }
            }
        }
        for k in 0..=order {
            prop_assert_eq!(s.coeff(k).to_u64().unwrap(), expect[k]);
        }
    }
}

#[test]
fn modulus_one_product_is_partition_function() {
    let p = product_side_series(&ProductSpec::new(1, &[1]), 40).unwrap();
    assert_eq!(p, inv_pochhammer_series(1, None, 40));
    let allowed: Vec<usize> = (1..=40).collect();
    assert_eq!(p.coeff(40).to_u64().unwrap(), brute_partitions(40, &allowed));
}
