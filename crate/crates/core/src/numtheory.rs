//! Small integer helpers: primality, factoring, modular inverses and
//! `q`-cyclotomic cosets.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization by trial division, primes ascending.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `a^{-1} mod m`, if it exists. For `m == 1` returns `Some(0)`.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// Multiplicative order of `q` modulo `n`; requires `gcd(q, n) = 1`, `n >= 1`.
pub fn mult_order_mod(q: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let q = q % n;
    let mut x = q;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * q as u128 % n as u128) as u64;
        k += 1;
    }
    k
}

/// The `q`-cyclotomic cosets of `Z_n`, each sorted, ordered by their least element.
pub fn cyclotomic_cosets(q: u64, n: u64) -> Vec<Vec<u64>> {
    let mut seen = vec![false; n as usize];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut x = s;
        while !seen[x as usize] {
            seen[x as usize] = true;
            coset.push(x);
            x = (x as u128 * q as u128 % n as u128) as u64;
        }
        coset.sort_unstable();
        out.push(coset);
    }
    out
}

/// `μ(n)`: the least size among the cosets other than `{0}`. `None` for `n < 2`.
pub fn coset_mu(q: u64, n: u64) -> Option<usize> {
    cyclotomic_cosets(q, n).iter().skip(1).map(Vec::len).min()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(gcd(12, 18), 6);
        assert!(is_prime(2) && is_prime(17) && !is_prime(1) && !is_prime(91));
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(inv_mod(3, 4), Some(3));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(mult_order_mod(2, 17), 8);
        assert_eq!(mult_order_mod(2, 7), 3);
    }

    #[test]
    fn cosets() {
        assert_eq!(cyclotomic_cosets(2, 7), vec![vec![0], vec![1, 2, 4], vec![3, 5, 6]]);
        assert_eq!(coset_mu(2, 3), Some(2));
        assert_eq!(coset_mu(2, 9), Some(2));
        assert_eq!(coset_mu(3, 2), Some(1));
        assert_eq!(coset_mu(2, 1), None);
    }
}
