//! Dense univariate polynomials over [`FieldElement`].

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::field::{FieldElement, Rat, Tower};
use crate::error::{Error, Result};

/// Univariate polynomial, dense coefficients, constant term first.
/// Leading coefficient is canonically nonzero unless the polynomial is zero.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly1 {
    coeffs: Vec<FieldElement>,
}

impl Poly1 {
    pub fn zero() -> Poly1 {
        Poly1 { coeffs: vec![] }
    }

    pub fn from_coeffs(coeffs: Vec<FieldElement>) -> Poly1 {
        let mut p = Poly1 { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Poly1 {
        Poly1::from_coeffs(coeffs.iter().map(|&c| FieldElement::from_int(c)).collect())
    }

    pub fn constant(c: FieldElement) -> Poly1 {
        Poly1::from_coeffs(vec![c])
    }

    /// The monomial t.
    pub fn var() -> Poly1 {
        Poly1::from_coeffs(vec![FieldElement::zero(), FieldElement::one()])
    }

    fn trim(&mut self) {
        while self
            .coeffs
            .last()
            .map_or(false, FieldElement::is_canonical_zero)
        {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn lead(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    /// Order of vanishing at 0 of a nonzero polynomial under canonical zero
    /// tests (exact over a field; over an unsplit reducible level a zero
    /// divisor coefficient would be caught later at inversion time).
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_canonical_zero())
    }

    pub fn tower(&self) -> Arc<Tower> {
        for c in &self.coeffs {
            if !c.is_rational() {
                return c.tower().clone();
            }
        }
        Tower::rational()
    }

    pub fn rebase(&self, tower: &Arc<Tower>) -> Poly1 {
        Poly1::from_coeffs(self.coeffs.iter().map(|c| c.rebase(tower)).collect())
    }

    pub fn add(&self, other: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(&self.coeff(i) + &other.coeff(i));
        }
        Poly1::from_coeffs(out)
    }

    pub fn neg(&self) -> Poly1 {
        Poly1::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Poly1) -> Poly1 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly1) -> Poly1 {
        if self.is_zero() || other.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![FieldElement::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_canonical_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly1::from_coeffs(out)
    }

    pub fn scale(&self, s: &FieldElement) -> Poly1 {
        Poly1::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn derivative(&self) -> Poly1 {
        if self.coeffs.len() <= 1 {
            return Poly1::zero();
        }
        Poly1::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * &FieldElement::from_int(i as i64 + 1))
                .collect(),
        )
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn divrem(&self, div: &Poly1) -> Result<(Poly1, Poly1)> {
        let dd = div.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = div
            .lead()
            .unwrap()
            .try_inv()?
            .ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quo = vec![FieldElement::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let k = rd - dd;
            let c = rem.lead().unwrap() * &lead_inv;
            quo[k] = c.clone();
            for i in 0..=dd {
                let t = &div.coeff(i) * &c;
                rem.coeffs[k + i] = &rem.coeffs[k + i] - &t;
            }
            rem.coeffs.truncate(rd);
            rem.trim();
        }
        Ok((Poly1::from_coeffs(quo), rem))
    }

    pub fn exact_div(&self, div: &Poly1) -> Result<Poly1> {
        let (q, r) = self.divrem(div)?;
        if !r.is_zero() {
            return Err(Error::Inconsistency(
                "exact division left a remainder".into(),
            ));
        }
        Ok(q)
    }

    pub fn monic(&self) -> Result<Poly1> {
        match self.lead() {
            None => Ok(Poly1::zero()),
            Some(l) => {
                let inv = l.try_inv()?.ok_or(Error::DivisionByZero)?;
                Ok(self.scale(&inv))
            }
        }
    }

    /// Rescale rational coefficients to primitive integer form (identity on
    /// extension coefficients); controls digit growth in remainder sequences.
    pub fn content_normalize(&self) -> Poly1 {
        use num_traits::One;
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            match c.as_rat() {
                Some(r) => {
                    num_gcd = num_integer::gcd(num_gcd, r.numer().abs());
                    den_lcm = num_integer::lcm(den_lcm, r.denom().clone());
                }
                None => return self.clone(),
            }
        }
        if num_gcd.is_zero() || (num_gcd.is_one() && den_lcm.is_one()) {
            return self.clone();
        }
        self.scale(&FieldElement::from_rat(Rat::new(den_lcm, num_gcd)))
    }

    /// Monic gcd by the Euclidean algorithm with primitive remainders.
    pub fn gcd(&self, other: &Poly1) -> Result<Poly1> {
        let mut a = self.content_normalize();
        let mut b = other.content_normalize();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b)?;
            a = b;
            b = r.content_normalize();
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> Result<Poly1> {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative())?;
        self.exact_div(&g)?.monic()
    }

    /// Resultant of two univariate polynomials by the Euclidean remainder
    /// sequence. Degree-0 arguments follow the convention res(f, c) = c^(deg f).
    pub fn resultant(&self, other: &Poly1) -> Result<FieldElement> {
        let mut a = self.clone();
        let mut b = other.clone();
        let (da0, db0) = (a.degree(), b.degree());
        match (da0, db0) {
            (None, None) => return Ok(FieldElement::zero()),
            (None, Some(db)) => {
                return Ok(if db == 0 { FieldElement::one() } else { FieldElement::zero() })
            }
            (Some(da), None) => {
                return Ok(if da == 0 { FieldElement::one() } else { FieldElement::zero() })
            }
            _ => {}
        }
        let mut acc = FieldElement::one();
        loop {
            let da = a.degree().unwrap();
            let db = match b.degree() {
                None => return Ok(FieldElement::zero()),
                Some(d) => d,
            };
            if db == 0 {
                return Ok(&acc * &b.coeff(0).pow(da as u32));
            }
            if da < db {
                std::mem::swap(&mut a, &mut b);
                if da & 1 == 1 && db & 1 == 1 {
                    acc = -acc;
                }
                continue;
            }
            let (_, r) = a.divrem(&b)?;
            let dr = r.degree();
            let sign = if da & 1 == 1 && db & 1 == 1 { -1i64 } else { 1 };
            let drop = da - dr.map_or(db, |d| d);
            // res(a,b) = (-1)^(da*db) lc(b)^(da - dr) res(b, r)
            acc = &acc * &FieldElement::from_int(sign);
            acc = &acc * &b.lead().unwrap().pow(drop as u32);
            a = b;
            b = r;
        }
    }

    /// All rational roots with multiplicity, found by the rational root
    /// theorem. Only applies to polynomials with rational coefficients and
    /// modest integer height; `None` means the search was not attempted.
    pub fn rational_roots(&self) -> Option<Vec<(Rat, usize)>> {
        if self.is_zero() {
            return None;
        }
        let mut int_coeffs: Vec<BigInt> = Vec::with_capacity(self.coeffs.len());
        let mut denom_lcm = BigInt::from(1);
        for c in &self.coeffs {
            let r = c.as_rat()?;
            denom_lcm = num_integer::lcm(denom_lcm, r.denom().clone());
        }
        for c in &self.coeffs {
            let r = c.as_rat().unwrap();
            int_coeffs.push(r.numer() * (&denom_lcm / r.denom()));
        }
        // strip the root at zero
        let shift = int_coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(int_coeffs.len());
        let mut roots: Vec<(Rat, usize)> = Vec::new();
        if shift > 0 {
            roots.push((Rat::zero(), shift));
            int_coeffs.drain(..shift);
        }
        if int_coeffs.len() <= 1 {
            return Some(roots);
        }
        let bound = BigInt::from(1_000_000_000i64);
        let a0 = int_coeffs.first().unwrap().abs();
        let an = int_coeffs.last().unwrap().abs();
        if a0 > bound || an > bound {
            return None;
        }
        let ps = divisors(&a0);
        let qs = divisors(&an);
        let mut candidates: Vec<Rat> = Vec::new();
        for p in &ps {
            for q in &qs {
                let r = Rat::new(p.clone(), q.clone());
                if !candidates.contains(&r) {
                    candidates.push(r);
                }
            }
        }
        let poly = Poly1::from_coeffs(
            int_coeffs
                .iter()
                .map(|c| FieldElement::from_rat(Rat::from_integer(c.clone())))
                .collect(),
        );
        for cand in candidates {
            for sign in [1i64, -1] {
                let r = &cand * Rat::from_integer(BigInt::from(sign));
                let x = FieldElement::from_rat(r.clone());
                if poly.eval(&x).is_canonical_zero() {
                    // multiplicity by repeated exact division by (t - r)
                    let lin = Poly1::from_coeffs(vec![-&x, FieldElement::one()]);
                    let mut m = 0usize;
                    let mut cur = poly.clone();
                    loop {
                        let (q, rem) = cur.divrem(&lin).expect("rational division");
                        if rem.is_zero() {
                            m += 1;
                            cur = q;
                        } else {
                            break;
                        }
                    }
                    if m > 0 {
                        roots.push((r, m));
                    }
                }
            }
        }
        Some(roots)
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    // n fits in u64 by the caller's bound
    let n: u64 = n.try_into().expect("bounded by caller");
    if n == 0 {
        return vec![BigInt::from(1)];
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d != n / d {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    out
}
