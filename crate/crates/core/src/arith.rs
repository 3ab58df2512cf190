//! Small integer helpers.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1 && factorize(n)[0].1 == 1
}

pub fn is_prime_power(n: u64) -> bool {
    n >= 1 && factorize(n).len() <= 1
}

/// True iff `n` is a power of `p` (including `p^0 = 1`).
pub fn is_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&s| s * s == n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factor_and_friends() {
        assert_eq!(factorize(36), vec![(2, 2), (3, 2)]);
        assert_eq!(factorize(1), vec![]);
        assert!(is_prime(7) && !is_prime(9) && !is_prime(1));
        assert!(is_power_of(27, 3) && is_power_of(1, 5) && !is_power_of(12, 2));
        assert_eq!(exact_sqrt(225), Some(15));
        assert_eq!(exact_sqrt(224), None);
        assert_eq!(lcm(4, 6), 12);
    }
}
