//! Arithmetic in GF(2^k) with elements stored as bit-vectors of polynomial
//! coefficients (bit i is the coefficient of x^i).

/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 16;

/// Fixed reduction polynomials, indexed by degree. Bit i is the coefficient of x^i.
const REDUCTION: [u64; 17] = [
    0,
    0b11,                // x + 1
    0b111,               // x^2 + x + 1
    0b1011,              // x^3 + x + 1
    0b1_0011,            // x^4 + x + 1
    0b10_0101,           // x^5 + x^2 + 1
    0b100_0011,          // x^6 + x + 1
    0b1000_0011,         // x^7 + x + 1
    0x11b,               // x^8 + x^4 + x^3 + x + 1
    0x211,               // x^9 + x^4 + 1
    0x409,               // x^10 + x^3 + 1
    0x805,               // x^11 + x^2 + 1
    0x1053,              // x^12 + x^6 + x^4 + x + 1
    0x201b,              // x^13 + x^4 + x^3 + x + 1
    0x4443,              // x^14 + x^10 + x^6 + x + 1
    0x8003,              // x^15 + x + 1
    0x1_100b,            // x^16 + x^12 + x^3 + x + 1
];

pub fn reduction_polynomial(k: u32) -> Option<u64> {
    if (1..=MAX_DEGREE).contains(&k) {
        Some(REDUCTION[k as usize])
    } else {
        None
    }
}

fn degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Carry-less product of two bit-vectors (no reduction).
fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut b = b;
    let mut shift = 0;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a << shift;
        }
        b >>= 1;
        shift += 1;
    }
    acc
}

/// Remainder of `p` modulo `m` over GF(2).
pub fn poly_rem(mut p: u64, m: u64) -> u64 {
    let dm = degree(m);
    while p != 0 && degree(p) >= dm {
        p ^= m << (degree(p) - dm);
    }
    p
}

pub fn mul(a: u64, b: u64, modulus: u64) -> u64 {
    poly_rem(clmul(a, b), modulus)
}

pub fn pow(a: u64, mut e: u128, modulus: u64) -> u64 {
    let mut base = a;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base, modulus);
        }
        base = mul(base, base, modulus);
        e >>= 1;
    }
    acc
}

/// Multiplicative inverse via Fermat: a^(2^k - 2). Caller guarantees a != 0.
pub fn inverse(a: u64, k: u32, modulus: u64) -> u64 {
    pow(a, (1u128 << k) - 2, modulus)
}

/// The unique square root a^(2^(k-1)); squaring is a bijection in characteristic 2.
pub fn sqrt(a: u64, k: u32, modulus: u64) -> u64 {
    pow(a, 1u128 << (k - 1), modulus)
}

/// Trial division by every polynomial of degree at most deg(p)/2.
pub fn is_irreducible(p: u64) -> bool {
    let d = degree(p);
    if d < 1 {
        return false;
    }
    for divisor in 2u64..(1u64 << (d / 2 + 1)) {
        if degree(divisor) >= 1 && degree(divisor) <= d / 2 && poly_rem(p, divisor) == 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_table_is_irreducible() {
        for k in 1..=MAX_DEGREE {
            let m = reduction_polynomial(k).unwrap();
            assert_eq!(degree(m), k as i32);
            assert!(is_irreducible(m), "k = {k}");
        }
        assert!(!is_irreducible(0b101)); // x^2 + 1 = (x + 1)^2
    }

    #[test]
    fn gf8_inverse_of_x() {
        let m = reduction_polynomial(3).unwrap();
        assert_eq!(inverse(0b10, 3, m), 0b101);
        assert_eq!(mul(0b10, 0b101, m), 1);
    }

    #[test]
    fn gf4_sqrt_of_x() {
        // in GF(4) with x^2 = x + 1, sqrt(x) = x^2 = x + 1 and (x + 1)^2 = x
        let m = reduction_polynomial(2).unwrap();
        assert_eq!(sqrt(0b10, 2, m), 0b11);
        assert_eq!(mul(0b11, 0b11, m), 0b10);
    }
}
