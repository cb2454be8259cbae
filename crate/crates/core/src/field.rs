//! Finite extensions of `Q_2` with exact, precision-tracked arithmetic.
//!
//! A field is an unramified step of degree `f` (fixed by an irreducible
//! polynomial over GF(2)) followed by an Eisenstein step of degree `e`.
//! Square classes are stored as bit vectors over the basis
//! `pi, Delta, 1 + t^i pi^j` (`j` odd, `j < 2e`, `i < f`).

use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ext::Ext;
use crate::residue::{default_modulus, is_irreducible_gf2, ResidueField};
use crate::ring::{Raw, Ring};

/// User-facing description of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub e: u32,
    pub f: u32,
    /// Coefficients of the residue modulus over GF(2), lowest degree first,
    /// including the leading 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unram_poly: Option<Vec<u8>>,
    /// Coefficients of the monic Eisenstein polynomial, lowest degree first.
    /// Each coefficient is an element of the unramified ring written in the
    /// basis `1, t, ..., t^(f-1)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eis_poly: Option<Vec<Vec<i64>>>,
    /// Relative precision in `pi`-adic digits.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prec: Option<i64>,
}

impl FieldSpec {
    pub fn new(e: u32, f: u32) -> FieldSpec {
        FieldSpec { e, f, unram_poly: None, eis_poly: None, prec: None }
    }
}

/// `pi^val * unit`, known modulo `pi^prec`.
///
/// Zero is represented with `val == None`; an exact zero has `prec == i64::MAX`.
#[derive(Clone, Debug)]
pub struct FieldElement {
    val: Option<i64>,
    unit: Raw,
    prec: i64,
}

impl FieldElement {
    pub fn val(&self) -> Option<i64> {
        self.val
    }

    pub fn is_zero(&self) -> bool {
        self.val.is_none()
    }

    /// Absolute precision.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Precision relative to the valuation.
    pub fn rel_prec(&self) -> i64 {
        match self.val {
            Some(v) => self.prec - v,
            None => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SquareClass {
    bits: u32,
    d: Ext,
}

impl SquareClass {
    /// Parity of the valuation of any representative.
    pub fn parity(&self) -> u32 {
        self.bits & 1
    }

    pub fn dval(&self) -> Ext {
        self.d
    }

    pub fn is_square(&self) -> bool {
        self.bits == 0
    }

    /// Coordinates over the class basis: bit 0 is `pi`, bit 1 is `Delta`.
    pub fn bits(&self) -> u32 {
        self.bits
    }
}

struct ClassTable {
    d: Vec<Ext>,
    rep: Vec<FieldElement>,
    /// Digits of the canonical unit representative, truncated after `2e`.
    rep_digits: Vec<Vec<u32>>,
    unit_order: Vec<u32>,
}

pub struct FieldContext {
    spec: FieldSpec,
    e: u32,
    f: u32,
    prec: i64,
    ring: Ring,
    rho: u32,
    delta_raw: Raw,
    delta_inv: Raw,
    /// `1 + t^i pi^j` for odd `j < 2e`, indexed by `((j - 1) / 2) * f + i`.
    basis_raw: Vec<Raw>,
    basis_inv: Vec<Raw>,
    eta_bar_sq: u32,
    classes: OnceLock<ClassTable>,
    pairing: OnceLock<Vec<u32>>,
}

impl std::fmt::Debug for FieldContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldContext(e={}, f={}, prec={})", self.e, self.f, self.prec)
    }
}

struct Descent {
    d: Ext,
    s: Raw,
    stop: Raw,
    bits: u32,
}

pub fn default_prec(e: u32) -> i64 {
    6 * e as i64 + 12
}

/// Shorthand for a field with default polynomials.
pub fn make_field(e: u32, f: u32) -> Result<Arc<FieldContext>> {
    FieldContext::new(FieldSpec::new(e, f))
}

impl FieldContext {
    pub fn new(spec: FieldSpec) -> Result<Arc<FieldContext>> {
        let (e, f) = (spec.e, spec.f);
        if e == 0 || f == 0 {
            return Err(Error::BadParams("e and f must be positive".into()));
        }
        if e * f > 6 || f > 6 {
            return Err(Error::BadParams(format!("e*f = {} is larger than supported (6)", e * f)));
        }
        let modulus = match &spec.unram_poly {
            None => default_modulus(f),
            Some(bits) => {
                if bits.len() != f as usize + 1 || bits.iter().any(|&b| b > 1) {
                    return Err(Error::BadParams(format!(
                        "unram_poly must list {} coefficients in {{0,1}}",
                        f + 1
                    )));
                }
                bits.iter().enumerate().fold(0u32, |acc, (j, &b)| acc | ((b as u32) << j))
            }
        };
        if !is_irreducible_gf2(modulus, f) {
            return Err(Error::ReducibleUnramifiedPoly);
        }
        let eis: Vec<Vec<i64>> = match &spec.eis_poly {
            None => {
                let mut p = vec![vec![0i64; f as usize]; e as usize + 1];
                p[0][0] = -2;
                p[e as usize][0] = 1;
                p
            }
            Some(p) => p.clone(),
        };
        if eis.len() != e as usize + 1 {
            return Err(Error::NonEisenstein(format!("expected {} coefficients", e + 1)));
        }
        let mut e_low: Vec<Vec<u64>> = Vec::new();
        for (i, c) in eis.iter().enumerate() {
            if c.len() > f as usize {
                return Err(Error::NonEisenstein(format!("coefficient {i} has more than f entries")));
            }
            let mut padded = c.clone();
            padded.resize(f as usize, 0);
            if i == e as usize {
                if padded[0] != 1 || padded[1..].iter().any(|&x| x != 0) {
                    return Err(Error::NonEisenstein("polynomial must be monic".into()));
                }
                continue;
            }
            let v2 = padded.iter().map(|&x| if x == 0 { 64 } else { x.trailing_zeros() }).min().unwrap();
            if v2 == 0 {
                return Err(Error::NonEisenstein(format!("coefficient {i} is not divisible by 2")));
            }
            if i == 0 && v2 != 1 {
                return Err(Error::NonEisenstein("constant term is divisible by 4".into()));
            }
            e_low.push(padded.iter().map(|&x| x as u64).collect());
        }
        let prec = spec.prec.unwrap_or_else(|| default_prec(e));
        if prec < 2 * e as i64 + 2 || prec > 60 * e as i64 {
            return Err(Error::BadParams(format!(
                "prec must lie in [{}, {}]",
                2 * e + 2,
                60 * e
            )));
        }
        let residue = ResidueField::new(f, modulus);
        let u_low: Vec<u64> = (0..f).map(|j| ((modulus >> j) & 1) as u64).collect();
        let ring = Ring::new(f as usize, u_low, e_low, residue.clone());
        let rho = (1..residue.size()).find(|&a| residue.trace(a) == 1).expect("trace is onto");

        let one = ring.one();
        let four_rho = ring.mul(&ring.from_i64(4), &ring.lift(rho));
        let delta_raw = ring.sub(&one, &four_rho);
        let delta_inv = ring.inv_unit(&delta_raw);
        let mut basis_raw = Vec::new();
        for j in (1..2 * e).step_by(2) {
            for i in 0..f {
                let b = ring.add(&one, &ring.mul_pi(&ring.lift(1 << i), j as u64));
                basis_raw.push(b);
            }
        }
        let basis_inv = basis_raw.iter().map(|b| ring.inv_unit(b)).collect();
        let eta_bar = residue.inv(ring.residue_of(ring.eta_inv())).expect("eta is a unit");
        let eta_bar_sq = residue.mul(eta_bar, eta_bar);

        let mut normalized = spec.clone();
        normalized.unram_poly = Some((0..=f).map(|j| ((modulus >> j) & 1) as u8).collect());
        normalized.eis_poly = Some(eis);
        normalized.prec = Some(prec);

        let ctx = FieldContext {
            spec: normalized,
            e,
            f,
            prec,
            ring,
            rho,
            delta_raw,
            delta_inv,
            basis_raw,
            basis_inv,
            eta_bar_sq,
            classes: OnceLock::new(),
            pairing: OnceLock::new(),
        };
        ctx.classes.get_or_init(|| ctx.build_class_table());
        Ok(Arc::new(ctx))
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn ei(&self) -> i64 {
        self.e as i64
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn residue_field(&self) -> &ResidueField {
        &self.ring.residue
    }

    /// The residue digit used to build `Delta = 1 - 4 rho`.
    pub fn rho_digit(&self) -> u32 {
        self.rho
    }

    /// Number of class-basis vectors, `e f + 2`.
    pub fn class_rank(&self) -> u32 {
        self.e * self.f + 2
    }

    // ---- elements -------------------------------------------------------

    fn make_element(&self, raw: Raw, rel: i64, shift: i64) -> FieldElement {
        match self.ring.ord(&raw) {
            Some(j) if (j as i64) < rel => FieldElement {
                val: Some(shift + j as i64),
                unit: self.ring.div_pi(&raw, j),
                prec: shift + rel,
            },
            _ => FieldElement { val: None, unit: Vec::new(), prec: shift.saturating_add(rel) },
        }
    }

    fn unit_elem(&self, unit: Raw) -> FieldElement {
        FieldElement { val: Some(0), unit, prec: self.prec }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { val: None, unit: Vec::new(), prec: i64::MAX }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        if n == 0 {
            return self.zero();
        }
        self.make_element(self.ring.from_i64(n), self.prec, 0)
    }

    pub fn pi(&self) -> FieldElement {
        self.pi_pow(1)
    }

    pub fn pi_pow(&self, k: i64) -> FieldElement {
        FieldElement { val: Some(k), unit: self.ring.one(), prec: k + self.prec }
    }

    pub fn delta(&self) -> FieldElement {
        self.unit_elem(self.delta_raw.clone())
    }

    /// The lift of `rho`, a residue of absolute trace 1.
    pub fn rho(&self) -> FieldElement {
        self.unit_elem(self.ring.lift(self.rho))
    }

    /// `pi^val * sum digits[j] pi^j`; each digit encodes a residue in the basis `1, t, ...`.
    pub fn from_digits(&self, val: i64, digits: &[u32]) -> Result<FieldElement> {
        let q = self.ring.residue.size();
        if let Some(&d) = digits.iter().find(|&&d| d >= q) {
            return Err(Error::Parse(format!("digit {d} is not below {q}")));
        }
        let mut acc = self.ring.zero();
        for &d in digits.iter().rev() {
            acc = self.ring.add(&self.ring.mul_pi(&acc, 1), &self.ring.lift(d));
        }
        if self.ring.is_zero(&acc) {
            return Ok(self.zero());
        }
        let rel = self.prec.max(digits.len() as i64);
        let rel = rel.min(60 * self.e as i64);
        Ok(self.make_element(acc, rel, val))
    }

    /// The first `count` digits of the unit part (fewer if precision runs out).
    pub fn digits(&self, x: &FieldElement, count: usize) -> Vec<u32> {
        if x.is_zero() {
            return Vec::new();
        }
        let n = count.min(x.rel_prec().max(0) as usize);
        let mut out = Vec::with_capacity(n);
        let mut w = x.unit.clone();
        for _ in 0..n {
            let d = self.ring.residue_of(&w);
            out.push(d);
            w = self.ring.sub(&w, &self.ring.lift(d));
            w = self.ring.div_pi(&w, 1);
        }
        out
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let prec = x.prec.min(y.prec);
        match (x.val, y.val) {
            (None, None) => FieldElement { val: None, unit: Vec::new(), prec },
            (None, Some(v)) | (Some(v), None) => {
                let nz = if x.is_zero() { y } else { x };
                if v >= prec {
                    FieldElement { val: None, unit: Vec::new(), prec }
                } else {
                    FieldElement { prec, ..nz.clone() }
                }
            }
            (Some(vx), Some(vy)) => {
                let (lo, hi, vlo, vhi) = if vx <= vy { (x, y, vx, vy) } else { (y, x, vy, vx) };
                let shifted = self.ring.mul_pi(&hi.unit, (vhi - vlo) as u64);
                let s = self.ring.add(&lo.unit, &shifted);
                self.make_element(s, prec - vlo, vlo)
            }
        }
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        FieldElement { unit: self.ring.neg(&x.unit), ..x.clone() }
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        match (x.val, y.val) {
            (Some(vx), Some(vy)) => {
                let rel = x.rel_prec().min(y.rel_prec());
                FieldElement { val: Some(vx + vy), unit: self.ring.mul(&x.unit, &y.unit), prec: vx + vy + rel }
            }
            (None, None) => FieldElement { val: None, unit: Vec::new(), prec: x.prec.saturating_add(y.prec) },
            (None, Some(v)) => FieldElement { val: None, unit: Vec::new(), prec: x.prec.saturating_add(v) },
            (Some(v), None) => FieldElement { val: None, unit: Vec::new(), prec: y.prec.saturating_add(v) },
        }
    }

    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        let v = x.val.ok_or(Error::DivisionByZero)?;
        let rel = x.rel_prec();
        Ok(FieldElement { val: Some(-v), unit: self.ring.inv_unit(&x.unit), prec: -v + rel })
    }

    pub fn div(&self, x: &FieldElement, y: &FieldElement) -> Result<FieldElement> {
        Ok(self.mul(x, &self.inv(y)?))
    }

    pub fn mul_pi_pow(&self, x: &FieldElement, k: i64) -> FieldElement {
        FieldElement {
            val: x.val.map(|v| v + k),
            unit: x.unit.clone(),
            prec: x.prec.saturating_add(k),
        }
    }

    pub fn div_by_pi(&self, x: &FieldElement) -> FieldElement {
        self.mul_pi_pow(x, -1)
    }

    /// Whether `x` and `y` agree to the smaller of their precisions.
    pub fn approx_eq(&self, x: &FieldElement, y: &FieldElement) -> bool {
        self.sub(x, y).is_zero()
    }

    // ---- quadratic defect -------------------------------------------------

    fn unit_part(&self, x: &FieldElement) -> Result<(i64, Raw, i64)> {
        let v = x
            .val
            .ok_or_else(|| Error::PrecisionLoss("element is zero to the working precision".into()))?;
        Ok((v, x.unit.clone(), x.rel_prec()))
    }

    fn descend(&self, u: &Raw, rel: i64, full: bool) -> Result<Descent> {
        let ring = &self.ring;
        let k = &ring.residue;
        let two_e = 2 * self.e as i64;
        let one = ring.one();
        let mut w = u.clone();
        let mut s = one.clone();
        let mut found: Option<(Ext, Raw, Raw)> = None;
        let mut bits = 0u32;
        loop {
            let diff = ring.sub(&w, &one);
            let t = ring.ord(&diff).map(|t| t as i64).unwrap_or(i64::MAX);
            if t >= rel {
                if rel > two_e {
                    break;
                }
                return Err(Error::PrecisionLoss(format!(
                    "need {} relative digits to classify, have {}",
                    two_e + 1,
                    rel
                )));
            }
            if t > two_e {
                break;
            }
            let a = ring.residue_of(&ring.div_pi(&diff, t as u64));
            if t % 2 == 1 {
                if found.is_none() {
                    found = Some((Ext::int(t), s.clone(), w.clone()));
                    if !full {
                        break;
                    }
                }
                let base = ((t as usize - 1) / 2) * self.f as usize;
                for i in 0..self.f as usize {
                    if (a >> i) & 1 == 1 {
                        w = ring.mul(&w, &self.basis_inv[base + i]);
                        bits |= 1 << (2 + base + i);
                    }
                }
            } else if t < two_e {
                let b = k.sqrt(a);
                let g = ring.add(&one, &ring.mul_pi(&ring.lift(b), (t / 2) as u64));
                w = ring.mul(&w, &ring.inv_unit(&ring.square(&g)));
                if found.is_none() {
                    s = ring.mul(&s, &g);
                }
            } else {
                let c = k.mul(a, self.eta_bar_sq);
                if k.trace(c) == 1 {
                    if found.is_none() {
                        found = Some((Ext::int(two_e), s.clone(), w.clone()));
                        if !full {
                            break;
                        }
                    }
                    w = ring.mul(&w, &self.delta_inv);
                    bits |= 2;
                } else {
                    let z = k.artin_schreier_root(c).expect("trace zero has a root");
                    let g = ring.add(&one, &ring.mul(&ring.from_i64(2), &ring.lift(z)));
                    w = ring.mul(&w, &ring.inv_unit(&ring.square(&g)));
                    if found.is_none() {
                        s = ring.mul(&s, &g);
                    }
                }
            }
        }
        let (d, s, stop) = found.unwrap_or((Ext::INF, s, w));
        Ok(Descent { d, s, stop, bits })
    }

    /// The order of the quadratic defect, in `{0, 1, 3, ..., 2e-1, 2e, inf}`.
    pub fn defect_order(&self, x: &FieldElement) -> Result<Ext> {
        let (v, u, rel) = self.unit_part(x)?;
        if v.rem_euclid(2) == 1 {
            return Ok(Ext::int(0));
        }
        Ok(self.descend(&u, rel, false)?.d)
    }

    pub fn is_square(&self, x: &FieldElement) -> Result<bool> {
        Ok(self.defect_order(x)?.is_inf())
    }

    /// Write a non-square unit as `s^2 (1 + r pi^d)` with `d` its defect order and `r` a unit.
    pub fn defect_split(&self, x: &FieldElement) -> Result<(FieldElement, FieldElement)> {
        let (v, u, rel) = self.unit_part(x)?;
        if v != 0 {
            return Err(Error::DefectOutOfRange("argument is not a unit".into()));
        }
        let desc = self.descend(&u, rel, false)?;
        let d = desc.d.as_int().ok_or_else(|| Error::DefectOutOfRange("argument is a square".into()))?;
        let diff = self.ring.sub(&desc.stop, &self.ring.one());
        let r = self.ring.div_pi(&diff, d as u64);
        let r_rel = rel - d;
        Ok((
            FieldElement { val: Some(0), unit: desc.s, prec: rel },
            FieldElement { val: Some(0), unit: r, prec: r_rel },
        ))
    }

    /// An element with `d(c#) = 2e - d(c)` and Hilbert symbol `(c#, c) = -1`.
    pub fn sharp(&self, c: &FieldElement) -> Result<FieldElement> {
        let (v, _, _) = self.unit_part(c)?;
        if v.rem_euclid(2) == 1 {
            return Ok(self.delta());
        }
        let unit = self.mul_pi_pow(c, -v);
        let d = self.defect_order(&unit)?;
        if d.is_inf() || d == Ext::int(2 * self.ei()) {
            return Err(Error::SharpUndefined);
        }
        let d = d.as_int().expect("finite");
        let (_, r) = self.defect_split(&unit)?;
        let four_rho = self.mul(&self.from_int(4), &self.rho());
        let term = self.mul_pi_pow(&self.mul(&four_rho, &self.inv(&r)?), -d);
        Ok(self.add(&self.one(), &term))
    }

    // ---- square classes ---------------------------------------------------

    fn unit_bits(&self, u: &Raw, rel: i64) -> Result<u32> {
        Ok(self.descend(u, rel, true)?.bits)
    }

    fn table(&self) -> &ClassTable {
        self.classes.get().expect("class table is built at construction")
    }

    fn class_from_bits(&self, bits: u32) -> SquareClass {
        SquareClass { bits, d: self.table().d[bits as usize] }
    }

    fn build_class_table(&self) -> ClassTable {
        let n = 1usize << self.class_rank();
        let two_e = 2 * self.e as usize;
        let q = self.ring.residue.size() as usize;
        let mut d = vec![Ext::INF; n];
        let mut rep: Vec<Option<FieldElement>> = vec![None; n];
        let mut rep_digits: Vec<Vec<u32>> = vec![Vec::new(); n];
        rep[0] = Some(self.one());
        rep_digits[0] = vec![1];
        rep[2] = Some(self.delta());
        d[2] = Ext::int(two_e as i64);
        rep_digits[2] = self.digits(&self.delta(), two_e + 1);
        for t in (1..two_e).step_by(2) {
            let len = two_e - t + 1;
            let total = q.pow(len as u32);
            for idx in 0..total {
                let mut digits = vec![0u32; two_e + 1];
                digits[0] = 1;
                let mut rest = idx;
                for pos in (t..=two_e).rev() {
                    digits[pos] = (rest % q) as u32;
                    rest /= q;
                }
                if digits[t] == 0 {
                    continue;
                }
                let x = self.from_digits(0, &digits).expect("digits are in range");
                let bits = self.unit_bits(&x.unit, x.rel_prec()).expect("exact candidate");
                if rep[bits as usize].is_none() {
                    d[bits as usize] = Ext::int(t as i64);
                    rep[bits as usize] = Some(x);
                    while digits.last() == Some(&0) {
                        digits.pop();
                    }
                    rep_digits[bits as usize] = digits;
                }
            }
        }
        let mut unit_order: Vec<u32> = (0..n as u32).filter(|b| b & 1 == 0).collect();
        assert!(
            unit_order.iter().all(|&b| rep[b as usize].is_some()),
            "every unit class must receive a representative"
        );
        unit_order.sort_by(|&a, &b| (d[a as usize], &rep_digits[a as usize]).cmp(&(d[b as usize], &rep_digits[b as usize])));
        for b in (0..n as u32).filter(|b| b & 1 == 1) {
            let u = rep[(b ^ 1) as usize].clone().expect("unit class filled");
            rep[b as usize] = Some(self.mul_pi_pow(&u, 1));
            rep_digits[b as usize] = rep_digits[(b ^ 1) as usize].clone();
            d[b as usize] = Ext::int(0);
        }
        ClassTable {
            d,
            rep: rep.into_iter().map(|r| r.expect("filled")).collect(),
            rep_digits,
            unit_order,
        }
    }

    pub fn square_class_of(&self, x: &FieldElement) -> Result<SquareClass> {
        let (v, u, rel) = self.unit_part(x)?;
        let bits = self.unit_bits(&u, rel)? | (v.rem_euclid(2) as u32);
        Ok(self.class_from_bits(bits))
    }

    /// The canonical unit class representatives, each with `d(delta) = ord(delta - 1)`,
    /// sorted by defect order and then by digits.
    pub fn unit_class_reps(&self) -> Vec<SquareClass> {
        self.table().unit_order.iter().map(|&b| self.class_from_bits(b)).collect()
    }

    /// Every square class: the unit classes followed by their multiples by `pi`.
    pub fn all_classes(&self) -> Vec<SquareClass> {
        let units = self.unit_class_reps();
        let mut out = units.clone();
        out.extend(units.iter().map(|c| self.class_from_bits(c.bits | 1)));
        out
    }

    pub fn class_rep(&self, c: SquareClass) -> FieldElement {
        self.table().rep[c.bits as usize].clone()
    }

    /// Digits of the canonical representative (enough to pin down the class).
    pub fn class_digits(&self, c: SquareClass) -> (i64, Vec<u32>) {
        (c.parity() as i64, self.table().rep_digits[c.bits as usize].clone())
    }

    pub fn class_mul(&self, a: SquareClass, b: SquareClass) -> SquareClass {
        self.class_from_bits(a.bits ^ b.bits)
    }

    pub fn class_one(&self) -> SquareClass {
        self.class_from_bits(0)
    }

    pub fn class_delta(&self) -> SquareClass {
        self.class_from_bits(2)
    }

    pub fn class_pi(&self) -> SquareClass {
        self.class_from_bits(1)
    }

    pub fn class_of_int(&self, n: i64) -> SquareClass {
        self.square_class_of(&self.from_int(n)).expect("nonzero integers are exact")
    }

    /// Short human-readable label for a class.
    pub fn class_label(&self, c: SquareClass) -> String {
        let unit = c.bits & !1;
        let pi = if c.parity() == 1 { "π" } else { "" };
        let base = match unit {
            0 if pi.is_empty() => "1".to_string(),
            0 => String::new(),
            2 => "Δ".to_string(),
            _ => {
                let digits = &self.table().rep_digits[unit as usize];
                if self.f == 1 && self.e == 1 {
                    digits.iter().rev().fold(0i64, |acc, &d| 2 * acc + d as i64).to_string()
                } else {
                    let s: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
                    format!("[{}]", s.join(","))
                }
            }
        };
        format!("{base}{pi}")
    }

    // ---- Hilbert symbol ---------------------------------------------------

    fn basis_element_raw(&self, idx: usize) -> Raw {
        match idx {
            0 => self.ring.mul_pi(&self.ring.one(), 1),
            1 => self.delta_raw.clone(),
            _ => self.basis_raw[idx - 2].clone(),
        }
    }

    /// Whether `a x^2 + b y^2 = z^2` has a nonzero solution, for `a`, `b` of order 0 or 1.
    ///
    /// Searches primitive vectors modulo `pi^(2e+3)`, where Hensel lifting applies.
    fn norm_form_isotropic(&self, a: &Raw, b: &Raw) -> bool {
        let ring = &self.ring;
        let levels = 2 * self.e as usize + 3;
        let q = ring.residue.size();
        let lifts: Vec<Vec<Raw>> = (0..levels)
            .map(|l| (0..q).map(|d| ring.mul_pi(&ring.lift(d), l as u64)).collect())
            .collect();
        let eval = |v: &[Raw; 3]| {
            let ax = ring.mul(a, &ring.square(&v[0]));
            let by = ring.mul(b, &ring.square(&v[1]));
            ring.sub(&ring.add(&ax, &by), &ring.square(&v[2]))
        };
        fn dfs(
            ring: &Ring,
            lifts: &[Vec<Raw>],
            eval: &dyn Fn(&[Raw; 3]) -> Raw,
            pivot: usize,
            v: &mut [Raw; 3],
            level: usize,
        ) -> bool {
            if level == lifts.len() {
                return true;
            }
            let free: Vec<usize> = (0..3).filter(|&c| c != pivot).collect();
            let q = lifts[0].len();
            for d0 in 0..q {
                if level == 0 && free[0] < pivot && d0 != 0 {
                    continue;
                }
                for d1 in 0..q {
                    if level == 0 && free[1] < pivot && d1 != 0 {
                        continue;
                    }
                    let saved = (v[free[0]].clone(), v[free[1]].clone());
                    v[free[0]] = ring.add(&saved.0, &lifts[level][d0]);
                    v[free[1]] = ring.add(&saved.1, &lifts[level][d1]);
                    let ok = ring.ord(&eval(v)).is_none_or(|o| o as usize > level);
                    if ok && dfs(ring, lifts, eval, pivot, v, level + 1) {
                        return true;
                    }
                    v[free[0]] = saved.0;
                    v[free[1]] = saved.1;
                }
            }
            false
        }
        (0..3).any(|pivot| {
            let mut v = [ring.zero(), ring.zero(), ring.zero()];
            v[pivot] = ring.one();
            dfs(ring, &lifts, &eval, pivot, &mut v, 0)
        })
    }

    /// Rows of the Hilbert pairing on the class basis: bit `j` of row `i` is set
    /// when the symbol of basis elements `i` and `j` is `-1`.
    pub fn pairing_rows(&self) -> &[u32] {
        self.pairing.get_or_init(|| {
            let r = self.class_rank() as usize;
            let mut rows = vec![0u32; r];
            for i in 0..r {
                for j in i..r {
                    let a = self.basis_element_raw(i);
                    let b = self.basis_element_raw(j);
                    if !self.norm_form_isotropic(&a, &b) {
                        rows[i] |= 1 << j;
                        rows[j] |= 1 << i;
                    }
                }
            }
            rows
        })
    }

    pub fn hilbert_classes(&self, a: SquareClass, b: SquareClass) -> i8 {
        if a.d + b.d > Ext::int(2 * self.ei()) {
            return 1;
        }
        let rows = self.pairing_rows();
        let mut parity = 0u32;
        let mut x = a.bits;
        while x != 0 {
            let i = x.trailing_zeros();
            parity ^= (rows[i as usize] & b.bits).count_ones() & 1;
            x &= x - 1;
        }
        if parity == 1 {
            -1
        } else {
            1
        }
    }

    pub fn hilbert(&self, a: &FieldElement, b: &FieldElement) -> Result<i8> {
        Ok(self.hilbert_classes(self.square_class_of(a)?, self.square_class_of(b)?))
    }
}
