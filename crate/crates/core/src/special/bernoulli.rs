//! Bernoulli numbers `B_0, B_1, …` (with `B_1 = −1/2`), memoized.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::numeric::rational::Rational;

fn table() -> &'static RwLock<Vec<Rational>> {
    static TABLE: OnceLock<RwLock<Vec<Rational>>> = OnceLock::new();
    TABLE.get_or_init(|| RwLock::new(vec![Rational::one()]))
}

/// `B_n`, computed from `Σ_{j=0}^{n} C(n+1, j) B_j = 0`.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = table().read().expect("bernoulli table poisoned").get(n) {
        return b.clone();
    }
    let mut t = table().write().expect("bernoulli table poisoned");
    while t.len() <= n {
        let m = t.len();
        // binomials C(m+1, j) for j = 0..m
        let mut c = BigInt::one();
        let mut s = Rational::zero();
        for (j, b) in t.iter().enumerate() {
            if !b.is_zero() {
                s += Rational::from_integer(c.clone()) * b;
            }
            c = c * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        // c is now C(m+1, m)
        t.push(-s / Rational::from_integer(c));
    }
    t[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational::rat;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), rat(1, 1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), rat(0, 1));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(12), rat(-691, 2730));
        assert_eq!(bernoulli(14), rat(7, 6));
    }
}
