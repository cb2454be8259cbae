//! Exact arithmetic in `O_F / 2^64 O_F`.
//!
//! `O_F = Z_2[t, pi] / (u(t), E(pi))` is free over `Z_2` with basis `pi^i t^j`
//! (`i < e`, `j < f`), so reducing every coordinate mod `2^64` gives a finite
//! ring where wrapping `u64` arithmetic is exact. A vector stores the
//! coefficient of `pi^i t^j` at index `i * f + j`.

use crate::residue::ResidueField;

pub type Raw = Vec<u64>;

#[derive(Clone, Debug)]
pub struct Ring {
    pub e: usize,
    pub f: usize,
    /// `u(t) = t^f + sum u_low[j] t^j`.
    u_low: Vec<u64>,
    /// `E(pi) = pi^e + sum e_low[i] pi^i`, each coefficient an element of `O_0`.
    e_low: Vec<Vec<u64>>,
    /// Inverse of the unit `eta` with `pi^e = 2 eta`.
    eta_inv: Raw,
    pub residue: ResidueField,
}

impl Ring {
    pub fn new(f: usize, u_low: Vec<u64>, e_low: Vec<Vec<u64>>, residue: ResidueField) -> Ring {
        let e = e_low.len();
        let mut ring = Ring { e, f, u_low, e_low, eta_inv: Vec::new(), residue };
        let mut eta = ring.zero();
        for i in 0..e {
            for j in 0..f {
                eta[i * f + j] = ((ring.e_low[i][j] as i64) >> 1).wrapping_neg() as u64;
            }
        }
        ring.eta_inv = ring.inv_unit(&eta);
        ring
    }

    pub fn coeff_count(&self) -> usize {
        self.e * self.f
    }

    pub fn zero(&self) -> Raw {
        vec![0; self.coeff_count()]
    }

    pub fn one(&self) -> Raw {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Raw {
        let mut r = self.zero();
        r[0] = n as u64;
        r
    }

    /// Teichmuller-free lift of a residue: `sum bit_j(d) t^j`.
    pub fn lift(&self, d: u32) -> Raw {
        let mut r = self.zero();
        for (j, c) in r.iter_mut().take(self.f).enumerate() {
            *c = ((d >> j) & 1) as u64;
        }
        r
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Raw {
        a.iter().zip(b).map(|(x, y)| x.wrapping_add(*y)).collect()
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Raw {
        a.iter().zip(b).map(|(x, y)| x.wrapping_sub(*y)).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Raw {
        a.iter().map(|x| x.wrapping_neg()).collect()
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    fn o0_mul(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let f = self.f;
        let mut prod = vec![0u64; 2 * f - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = prod[i + j].wrapping_add(x.wrapping_mul(y));
            }
        }
        for k in (f..2 * f - 1).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for j in 0..f {
                prod[k - f + j] = prod[k - f + j].wrapping_sub(c.wrapping_mul(self.u_low[j]));
            }
        }
        out.copy_from_slice(&prod[..f]);
    }

    fn o0_mul_acc(&self, a: &[u64], b: &[u64], acc: &mut [u64], subtract: bool) {
        let mut tmp = vec![0u64; self.f];
        self.o0_mul(a, b, &mut tmp);
        for (x, y) in acc.iter_mut().zip(tmp) {
            *x = if subtract { x.wrapping_sub(y) } else { x.wrapping_add(y) };
        }
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Raw {
        let (e, f) = (self.e, self.f);
        let mut prod = vec![0u64; (2 * e - 1) * f];
        for i in 0..e {
            let ai = &a[i * f..(i + 1) * f];
            if ai.iter().all(|&x| x == 0) {
                continue;
            }
            for j in 0..e {
                let bj = &b[j * f..(j + 1) * f];
                let (lo, hi) = ((i + j) * f, (i + j + 1) * f);
                self.o0_mul_acc(ai, bj, &mut prod[lo..hi], false);
            }
        }
        for k in (e..2 * e - 1).rev() {
            let c: Vec<u64> = prod[k * f..(k + 1) * f].to_vec();
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            for x in &mut prod[k * f..(k + 1) * f] {
                *x = 0;
            }
            for i in 0..e {
                let (lo, hi) = ((k - e + i) * f, (k - e + i + 1) * f);
                self.o0_mul_acc(&c, &self.e_low[i], &mut prod[lo..hi], true);
            }
        }
        prod.truncate(e * f);
        prod
    }

    pub fn square(&self, a: &[u64]) -> Raw {
        self.mul(a, a)
    }

    /// Multiply by `pi^k`, `k >= 0`.
    pub fn mul_pi(&self, a: &[u64], k: u64) -> Raw {
        let (e, f) = (self.e, self.f);
        if k >= 64 * e as u64 {
            return self.zero();
        }
        let mut x = a.to_vec();
        for _ in 0..k {
            let top: Vec<u64> = x[(e - 1) * f..].to_vec();
            let mut next = self.zero();
            next[f..].copy_from_slice(&x[..(e - 1) * f]);
            if top.iter().any(|&c| c != 0) {
                for i in 0..e {
                    self.o0_mul_acc(&top, &self.e_low[i], &mut next[i * f..(i + 1) * f], true);
                }
            }
            x = next;
        }
        x
    }

    /// The `pi`-adic order, `None` if the vector is zero.
    pub fn ord(&self, a: &[u64]) -> Option<u64> {
        let (e, f) = (self.e, self.f);
        (0..e)
            .filter_map(|i| {
                let v = a[i * f..(i + 1) * f].iter().map(|c| c.trailing_zeros()).min().unwrap();
                (v < 64).then(|| e as u64 * v as u64 + i as u64)
            })
            .min()
    }

    /// Divide by `pi^r`; the caller guarantees `ord(a) >= r`.
    pub fn div_pi(&self, a: &[u64], r: u64) -> Raw {
        let (e, f) = (self.e, self.f);
        let mut x = a.to_vec();
        let mut r = r as usize;
        while r >= e {
            for c in &mut x {
                *c = ((*c as i64) >> 1) as u64;
            }
            x = self.mul(&x, &self.eta_inv);
            r -= e;
        }
        if r == 0 {
            return x;
        }
        let mut high = self.zero();
        high[..(e - r) * f].copy_from_slice(&x[r * f..]);
        let mut low = self.zero();
        for i in 0..r {
            for j in 0..f {
                low[(i + e - r) * f + j] = ((x[i * f + j] as i64) >> 1) as u64;
            }
        }
        self.add(&high, &self.mul(&low, &self.eta_inv))
    }

    /// The residue of `a` modulo `pi`, as a bitmask in the residue field.
    pub fn residue_of(&self, a: &[u64]) -> u32 {
        (0..self.f).fold(0u32, |acc, j| acc | (((a[j] & 1) as u32) << j))
    }

    pub fn inv_unit(&self, a: &[u64]) -> Raw {
        let r = self.residue_of(a);
        let r_inv = self.residue.inv(r).expect("argument is a unit");
        let one = self.one();
        let two = self.from_i64(2);
        let mut y = self.lift(r_inv);
        for _ in 0..16 {
            let t = self.mul(a, &y);
            if t == one {
                return y;
            }
            y = self.mul(&y, &self.sub(&two, &t));
        }
        debug_assert_eq!(self.mul(a, &y), one);
        y
    }

    pub fn eta_inv(&self) -> &Raw {
        &self.eta_inv
    }
}
