//! Riemann zeta at integers `n ≥ 2` and Bernoulli numbers.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::numeric::BigReal;

/// `ζ(n)` for `n ≥ 2` at `bits` of precision (Borwein's alternating-series
/// acceleration with exact integer weights).
pub fn zeta(n: u32, bits: u32) -> BigReal {
    assert!(n >= 2, "zeta needs n >= 2");
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), BigReal>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(n, bits)) {
        return v.clone();
    }
    let v = zeta_borwein(n, bits);
    cache.lock().unwrap().insert((n, bits), v.clone());
    v
}

fn zeta_borwein(s: u32, bits: u32) -> BigReal {
    let prec = bits + 32;
    // error ≤ 3 / (3 + √8)^N
    let terms = ((prec as f64 + 4.0) * std::f64::consts::LN_2 / (3.0 + 8f64.sqrt()).ln()).ceil() as u32 + 2;
    let d = borwein_weights(terms);
    let dn = &d[terms as usize];
    let mut sum = BigReal::new(prec);
    for k in 0..terms {
        let w = Integer::from(&d[k as usize] - dn);
        let den = Integer::from(k + 1).pow(s);
        let term = BigReal::with_val(prec, &w) / &den;
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    let one = BigReal::with_val(prec, 1);
    let factor = one.clone() - BigReal::with_val(prec, 2).pow(1 - s as i32);
    let r = -sum / (BigReal::with_val(prec, dn) * factor);
    BigReal::with_val(bits, r)
}

// d_k = N Σ_{i=0}^{k} (N+i−1)! 4^i / ((N−i)! (2i)!), all integers
fn borwein_weights(n: u32) -> Vec<Integer> {
    let mut out = Vec::with_capacity(n as usize + 1);
    let mut acc = Integer::new();
    // t_i = N (N+i−1)! 4^i / ((N−i)! (2i)!), t_0 = 1
    let mut t = Integer::from(1);
    for i in 0..=n {
        if i > 0 {
            // t_i / t_{i-1} = 4 (N+i−1)(N−i+1) / ((2i−1)(2i))
            t *= 4 * (n + i - 1) as u64 * (n - i + 1) as u64;
            t /= ((2 * i - 1) as u64) * (2 * i) as u64;
        }
        acc += &t;
        out.push(acc.clone());
    }
    out
}

/// Bernoulli number `B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    if n == 0 {
        return Rational::from(1);
    }
    if n == 1 {
        return Rational::from((-1, 2));
    }
    if n % 2 == 1 {
        return Rational::new();
    }
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut even = cache.lock().unwrap();
    let k = n / 2;
    if even.len() < k {
        let want = (k.max(16)).max(even.len() * 2);
        *even = even_bernoulli(want);
    }
    even[k - 1].clone()
}

// B_2, B_4, …, B_{2n} from tangent numbers.
fn even_bernoulli(n: usize) -> Vec<Rational> {
    let mut t = vec![Integer::new(); n + 1];
    t[1] = Integer::from(1);
    for k in 2..=n {
        t[k] = Integer::from(&t[k - 1] * (k - 1));
    }
    for k in 2..=n {
        for j in k..=n {
            let a = Integer::from(&t[j - 1] * (j - k));
            let b = Integer::from(&t[j] * (j - k + 2));
            t[j] = a + b;
        }
    }
    (1..=n)
        .map(|k| {
            // B_{2k} = (−1)^(k−1) 2k T_k / (2^{2k} (2^{2k} − 1))
            let p = Integer::from(1) << (2 * k as u32);
            let den = Integer::from(&p * Integer::from(&p - 1u32));
            let num = Integer::from(&t[k] * (2 * k));
            let b = Rational::from((num, den));
            if k % 2 == 1 {
                b
            } else {
                -b
            }
        })
        .collect()
}
