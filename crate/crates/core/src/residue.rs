//! The residue field GF(2^f) as polynomials over GF(2) modulo a fixed irreducible.
//!
//! Elements are bitmasks: bit `j` is the coefficient of `t^j`.

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueField {
    f: u32,
    /// Full modulus including the leading bit `t^f`.
    modulus: u32,
}

impl ResidueField {
    pub fn new(f: u32, modulus: u32) -> Self {
        debug_assert!(modulus >> f == 1);
        ResidueField { f, modulus }
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn size(&self) -> u32 {
        1 << self.f
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let mut acc: u32 = 0;
        let mut a = a;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.f & 1 == 1 {
                a ^= self.modulus;
            }
        }
        acc
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let mut base = a;
        let mut acc = 1;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(self.pow(a, (1u64 << self.f) - 2))
    }

    /// The unique square root; squaring is a bijection in characteristic 2.
    pub fn sqrt(&self, a: u32) -> u32 {
        self.pow(a, 1u64 << (self.f - 1))
    }

    /// Absolute trace to GF(2), returned as 0 or 1.
    pub fn trace(&self, a: u32) -> u32 {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.f {
            acc ^= x;
            x = self.mul(x, x);
        }
        debug_assert!(acc <= 1);
        acc
    }

    /// A root of `z^2 + z = c`, if one exists.
    pub fn artin_schreier_root(&self, c: u32) -> Option<u32> {
        (0..self.size()).find(|&z| self.mul(z, z) ^ z == c)
    }
}

/// Whether the GF(2) polynomial with bitmask `p` (degree `deg`) is irreducible.
pub fn is_irreducible_gf2(p: u32, deg: u32) -> bool {
    if deg == 0 || p >> deg != 1 {
        return false;
    }
    for d in 1..=deg / 2 {
        for q in (1u32 << d)..(1u32 << (d + 1)) {
            if gf2_rem(p, q) == 0 {
                return false;
            }
        }
    }
    true
}

fn gf2_rem(mut p: u32, q: u32) -> u32 {
    let dq = 31 - q.leading_zeros();
    while p != 0 && 31 - p.leading_zeros() >= dq {
        let shift = (31 - p.leading_zeros()) - dq;
        p ^= q << shift;
    }
    p
}

/// The irreducible of degree `f` with the smallest bitmask.
pub fn default_modulus(f: u32) -> u32 {
    ((1u32 << f)..(1u32 << (f + 1)))
        .find(|&p| is_irreducible_gf2(p, f))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(default_modulus(1), 0b10);
        assert_eq!(default_modulus(2), 0b111);
        assert_eq!(default_modulus(3), 0b1011);
        assert!(!is_irreducible_gf2(0b101, 2));
    }

    #[test]
    fn gf4_arithmetic() {
        let k = ResidueField::new(2, 0b111);
        for a in 1..4 {
            let ai = k.inv(a).unwrap();
            assert_eq!(k.mul(a, ai), 1);
            let s = k.sqrt(a);
            assert_eq!(k.mul(s, s), a);
        }
        assert_eq!(k.trace(1), 0);
        assert_eq!(k.trace(2), 1);
        assert_eq!(k.trace(3), 1);
        assert!(k.artin_schreier_root(2).is_none());
        assert!(k.artin_schreier_root(1).is_some());
        assert!(k.artin_schreier_root(0).is_some());
    }

    #[test]
    fn trace_is_additive_and_balanced() {
        for f in 1..=5 {
            let k = ResidueField::new(f, default_modulus(f));
            let ones = (0..k.size()).filter(|&a| k.trace(a) == 1).count();
            assert_eq!(ones as u32, k.size() / 2);
            for a in 0..k.size() {
                for b in 0..k.size() {
                    assert_eq!(k.trace(a ^ b), k.trace(a) ^ k.trace(b));
                }
            }
        }
    }
}
