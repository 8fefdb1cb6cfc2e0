//! Sparse bivariate polynomials over [`FieldElement`] with named variables.
//!
//! Variables carry names so that the many local charts appearing during
//! blow-up (x,t), (w,s), ... stay distinguishable in reports and traces.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::field::{FieldElement, Rat, Tower};
use super::poly1::Poly1;
use crate::error::{Error, Result};

/// Names of the two chart variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Vars {
    pub x: Arc<str>,
    pub y: Arc<str>,
}

impl Vars {
    pub fn xy() -> Vars {
        Vars {
            x: "x".into(),
            y: "y".into(),
        }
    }

    pub fn named(x: &str, y: &str) -> Vars {
        Vars {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn swapped(&self) -> Vars {
        Vars {
            x: self.y.clone(),
            y: self.x.clone(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Var {
    X,
    Y,
}

/// Finitely supported map from monomials (i, j) to nonzero coefficients.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly2 {
    vars: Vars,
    terms: BTreeMap<(u32, u32), FieldElement>,
}

impl Poly2 {
    pub fn zero(vars: Vars) -> Poly2 {
        Poly2 {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Vars, c: FieldElement) -> Poly2 {
        let mut p = Poly2::zero(vars);
        if !c.is_canonical_zero() {
            p.terms.insert((0, 0), c);
        }
        p
    }

    pub fn one(vars: Vars) -> Poly2 {
        Poly2::constant(vars, FieldElement::one())
    }

    pub fn int(vars: Vars, n: i64) -> Poly2 {
        Poly2::constant(vars, FieldElement::from_int(n))
    }

    pub fn monomial(vars: Vars, c: FieldElement, i: u32, j: u32) -> Poly2 {
        let mut p = Poly2::zero(vars);
        if !c.is_canonical_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    pub fn var(vars: Vars, v: Var) -> Poly2 {
        match v {
            Var::X => Poly2::monomial(vars, FieldElement::one(), 1, 0),
            Var::Y => Poly2::monomial(vars, FieldElement::one(), 0, 1),
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &FieldElement)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> FieldElement {
        self.terms
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(FieldElement::zero)
    }

    pub fn tower(&self) -> Arc<Tower> {
        for c in self.terms.values() {
            if !c.is_rational() {
                return c.tower().clone();
            }
        }
        Tower::rational()
    }

    pub fn rebase(&self, tower: &Arc<Tower>) -> Poly2 {
        let mut out = Poly2::zero(self.vars.clone());
        for (&m, c) in &self.terms {
            out.insert(m, c.rebase(tower));
        }
        out
    }

    pub fn rename(&self, vars: Vars) -> Poly2 {
        Poly2 {
            vars,
            terms: self.terms.clone(),
        }
    }

    /// Exchange the roles of the two variables (names follow).
    pub fn swap_vars(&self) -> Poly2 {
        let mut out = Poly2::zero(self.vars.swapped());
        for (&(i, j), c) in &self.terms {
            out.terms.insert((j, i), c.clone());
        }
        out
    }

    fn insert(&mut self, m: (u32, u32), c: FieldElement) {
        if !c.is_canonical_zero() {
            self.terms.insert(m, c);
        }
    }

    fn add_term(&mut self, m: (u32, u32), c: &FieldElement) {
        let cur = self.coeff(m.0, m.1);
        let next = &cur + c;
        if next.is_canonical_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, next);
        }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn neg(&self) -> Poly2 {
        let mut out = Poly2::zero(self.vars.clone());
        for (&m, c) in &self.terms {
            out.terms.insert(m, -c);
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Poly2::zero(self.vars.clone());
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &other.terms {
                out.add_term((i1 + i2, j1 + j2), &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, s: &FieldElement) -> Poly2 {
        let mut out = Poly2::zero(self.vars.clone());
        for (&m, c) in &self.terms {
            out.insert(m, c * s);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        let mut acc = Poly2::one(self.vars.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Total degree of a nonzero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| match v {
                Var::X => i,
                Var::Y => j,
            })
            .max()
    }

    /// Lowest total degree of a nonzero term (canonical zero tests).
    pub fn order(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| i + j)
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Order with coefficients certified nonzero by dynamic evaluation; may
    /// request a split when a coefficient is a zero divisor.
    pub fn try_order(&self) -> Result<Option<u32>> {
        let mut monomials: Vec<(u32, u32)> = self.terms.keys().cloned().collect();
        monomials.sort_by_key(|&(i, j)| i + j);
        for (i, j) in monomials {
            if !self.terms[&(i, j)].try_is_zero()? {
                return Ok(Some(i + j));
            }
        }
        Ok(None)
    }

    /// Homogeneous part of degree `order`.
    pub fn initial_form(&self) -> Result<Poly2> {
        let ord = self.order()?;
        let mut out = Poly2::zero(self.vars.clone());
        for (&(i, j), c) in &self.terms {
            if i + j == ord {
                out.insert((i, j), c.clone());
            }
        }
        Ok(out)
    }

    pub fn eval_origin(&self) -> FieldElement {
        self.coeff(0, 0)
    }

    pub fn eval(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero();
        for (&(i, j), c) in &self.terms {
            acc = &acc + &(&(c * &x.pow(i)) * &y.pow(j));
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Poly2 {
        let mut out = Poly2::zero(self.vars.clone());
        for (&(i, j), c) in &self.terms {
            match v {
                Var::X if i > 0 => {
                    out.insert((i - 1, j), c * &FieldElement::from_int(i as i64))
                }
                Var::Y if j > 0 => {
                    out.insert((i, j - 1), c * &FieldElement::from_int(j as i64))
                }
                _ => {}
            }
        }
        out
    }

    /// Restriction to the axis `{other_var = 0}` as a univariate polynomial
    /// in `v`.
    pub fn restrict_to_axis(&self, v: Var) -> Poly1 {
        let mut coeffs: Vec<FieldElement> = Vec::new();
        for (&(i, j), c) in &self.terms {
            let (deg, off_axis) = match v {
                Var::X => (i, j),
                Var::Y => (j, i),
            };
            if off_axis != 0 {
                continue;
            }
            if coeffs.len() <= deg as usize {
                coeffs.resize(deg as usize + 1, FieldElement::zero());
            }
            coeffs[deg as usize] = c.clone();
        }
        Poly1::from_coeffs(coeffs)
    }

    /// Divide by x^k (or y^k) exactly.
    pub fn shift_down(&self, v: Var, k: u32) -> Result<Poly2> {
        let mut out = Poly2::zero(self.vars.clone());
        for (&(i, j), c) in &self.terms {
            let m = match v {
                Var::X => {
                    if i < k {
                        return Err(Error::Inconsistency(
                            "monomial shift below zero".into(),
                        ));
                    }
                    (i - k, j)
                }
                Var::Y => {
                    if j < k {
                        return Err(Error::Inconsistency(
                            "monomial shift below zero".into(),
                        ));
                    }
                    (i, j - k)
                }
            };
            out.insert(m, c.clone());
        }
        Ok(out)
    }

    /// Largest k with x^k (resp. y^k) dividing the polynomial.
    pub fn axis_valuation(&self, v: Var) -> Option<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| match v {
                Var::X => i,
                Var::Y => j,
            })
            .min()
    }

    /// General substitution x -> gx, y -> gy (both over the target vars).
    pub fn substitute(&self, gx: &Poly2, gy: &Poly2) -> Poly2 {
        debug_assert_eq!(gx.vars, gy.vars);
        let out_vars = gx.vars.clone();
        let max_i = self.degree_in(Var::X).unwrap_or(0);
        let max_j = self.degree_in(Var::Y).unwrap_or(0);
        let mut x_pows = Vec::with_capacity(max_i as usize + 1);
        let mut y_pows = Vec::with_capacity(max_j as usize + 1);
        x_pows.push(Poly2::one(out_vars.clone()));
        y_pows.push(Poly2::one(out_vars.clone()));
        for i in 1..=max_i {
            let next = x_pows[i as usize - 1].mul(gx);
            x_pows.push(next);
        }
        for j in 1..=max_j {
            let next = y_pows[j as usize - 1].mul(gy);
            y_pows.push(next);
        }
        let mut out = Poly2::zero(out_vars);
        for (&(i, j), c) in &self.terms {
            let t = x_pows[i as usize].mul(&y_pows[j as usize]).scale(c);
            out = out.add(&t);
        }
        out
    }

    /// Linear coordinate change by an invertible rational matrix
    /// [[a, b], [c, d]]: returns f(a x + b y, c x + d y).
    pub fn linear_change(&self, m: &[[Rat; 2]; 2]) -> Result<Poly2> {
        let det = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0];
        if det == Rat::from_integer(0.into()) {
            return Err(Error::SingularChange);
        }
        let vars = self.vars.clone();
        let lin = |a: &Rat, b: &Rat| {
            let mut p = Poly2::zero(vars.clone());
            p.insert((1, 0), FieldElement::from_rat(a.clone()));
            p.add_term((0, 1), &FieldElement::from_rat(b.clone()));
            p
        };
        let gx = lin(&m[0][0], &m[0][1]);
        let gy = lin(&m[1][0], &m[1][1]);
        Ok(self.substitute(&gx, &gy))
    }

    // ---- division ----

    fn grlex_lead(&self) -> Option<((u32, u32), &FieldElement)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| {
                let (da, db) = (a.0 + a.1, b.0 + b.1);
                da.cmp(&db).then(a.0.cmp(&b.0))
            })
            .map(|(&m, c)| (m, c))
    }

    /// Quotient and remainder by a single divisor (graded-lex reduction).
    pub fn divrem(&self, div: &Poly2) -> Result<(Poly2, Poly2)> {
        debug_assert_eq!(self.vars, div.vars);
        let (dm, dc) = div.grlex_lead().ok_or(Error::DivisionByZero)?;
        let dc_inv = dc.try_inv()?.ok_or(Error::DivisionByZero)?;
        let mut quo = Poly2::zero(self.vars.clone());
        let mut rem = Poly2::zero(self.vars.clone());
        let mut work = self.clone();
        while let Some((m, c)) = work.grlex_lead() {
            if m.0 >= dm.0 && m.1 >= dm.1 {
                let k = (m.0 - dm.0, m.1 - dm.1);
                let q = c * &dc_inv;
                let t = Poly2::monomial(self.vars.clone(), q.clone(), k.0, k.1);
                work = work.sub(&t.mul(div));
                quo.add_term(k, &q);
            } else {
                rem.add_term(m, &c.clone());
                work.terms.remove(&m);
            }
        }
        Ok((quo, rem))
    }

    pub fn divides(&self, other: &Poly2) -> Result<bool> {
        if other.is_zero() {
            return Ok(true);
        }
        if self.is_zero() {
            return Ok(false);
        }
        let (_, r) = other.divrem(self)?;
        Ok(r.is_zero())
    }

    pub fn exact_div(&self, div: &Poly2) -> Result<Poly2> {
        let (q, r) = self.divrem(div)?;
        if !r.is_zero() {
            return Err(Error::Inconsistency(
                "bivariate exact division left a remainder".into(),
            ));
        }
        Ok(q)
    }

    // ---- conversions with (F[x])[y] ----

    pub fn to_main_var_coeffs(&self, main: Var) -> Vec<Poly1> {
        let deg = self.degree_in(main).map_or(0, |d| d as usize);
        let mut out = vec![Poly1::zero(); deg + 1];
        let mut raw: Vec<Vec<FieldElement>> = vec![Vec::new(); deg + 1];
        for (&(i, j), c) in &self.terms {
            let (m, o) = match main {
                Var::X => (i as usize, j as usize),
                Var::Y => (j as usize, i as usize),
            };
            if raw[m].len() <= o {
                raw[m].resize(o + 1, FieldElement::zero());
            }
            raw[m][o] = c.clone();
        }
        for (m, coeffs) in raw.into_iter().enumerate() {
            out[m] = Poly1::from_coeffs(coeffs);
        }
        out
    }

    pub fn from_main_var_coeffs(vars: Vars, main: Var, coeffs: &[Poly1]) -> Poly2 {
        let mut out = Poly2::zero(vars);
        for (m, p) in coeffs.iter().enumerate() {
            for (o, c) in p.coeffs().iter().enumerate() {
                let key = match main {
                    Var::X => (m as u32, o as u32),
                    Var::Y => (o as u32, m as u32),
                };
                if !c.is_canonical_zero() {
                    out.insert(key, c.clone());
                }
            }
        }
        out
    }

    // ---- gcd and squarefree ----

    /// Gcd of two bivariate polynomials (primitive PRS), normalized so the
    /// graded-lex leading coefficient is one.
    pub fn gcd(&self, other: &Poly2) -> Result<Poly2> {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let dy = self
            .degree_in(Var::Y)
            .unwrap()
            .max(other.degree_in(Var::Y).unwrap());
        if dy == 0 {
            let a = self.restrict_to_axis(Var::X);
            let b = other.restrict_to_axis(Var::X);
            let g = a.gcd(&b)?;
            return Ok(Poly2::from_main_var_coeffs(
                self.vars.clone(),
                Var::X,
                g.coeffs()
                    .iter()
                    .map(|c| Poly1::constant(c.clone()))
                    .collect::<Vec<_>>()
                    .as_slice(),
            ));
        }
        let fa = self.to_main_var_coeffs(Var::Y);
        let fb = other.to_main_var_coeffs(Var::Y);
        let (ca, pa) = content_primitive(&fa)?;
        let (cb, pb) = content_primitive(&fb)?;
        let cg = ca.gcd(&cb)?;
        let prim = primitive_prs(pa, pb)?;
        let g2 = mul_univariate(
            &Poly2::from_main_var_coeffs(self.vars.clone(), Var::Y, &prim),
            &cg,
        );
        g2.normalized()
    }

    fn normalized(&self) -> Result<Poly2> {
        match self.grlex_lead() {
            None => Ok(self.clone()),
            Some((_, c)) => {
                let inv = c.try_inv()?.ok_or(Error::DivisionByZero)?;
                Ok(self.scale(&inv))
            }
        }
    }

    pub fn squarefree_part(&self) -> Result<Poly2> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let fx = self.derivative(Var::X);
        let fy = self.derivative(Var::Y);
        let g = self.gcd(&fx)?.gcd(&fy)?;
        if g.degree() == Some(0) {
            return Ok(self.clone());
        }
        self.exact_div(&g)
    }

    /// Sylvester resultant with respect to the eliminated variable, computed
    /// by evaluation and interpolation; returns a univariate polynomial in
    /// the surviving variable.
    pub fn resultant(&self, other: &Poly2, eliminate: Var) -> Result<Poly1> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let keep = match eliminate {
            Var::X => Var::Y,
            Var::Y => Var::X,
        };
        let df = self.degree_in(eliminate).unwrap();
        let dg = other.degree_in(eliminate).unwrap();
        if df == 0 && dg == 0 {
            return Ok(Poly1::from_ints(&[1]));
        }
        if dg == 0 {
            // res(f, c(x)) = c(x)^(deg f)
            let c = other.restrict_to_axis(keep);
            return Ok(pow_poly1(&c, df));
        }
        if df == 0 {
            let c = self.restrict_to_axis(keep);
            return Ok(pow_poly1(&c, dg));
        }
        let fc = self.to_main_var_coeffs(eliminate);
        let gc = other.to_main_var_coeffs(eliminate);
        let lcf = fc.last().unwrap();
        let lcg = gc.last().unwrap();
        let kx = self.degree_in(keep).unwrap_or(0);
        let kg = other.degree_in(keep).unwrap_or(0);
        let bound = (df * kg + dg * kx) as usize;
        let mut nodes: Vec<(FieldElement, FieldElement)> = Vec::with_capacity(bound + 1);
        let mut k: i64 = 0;
        while nodes.len() <= bound {
            let x0 = FieldElement::from_int(k);
            k = if k > 0 { -k } else { -k + 1 };
            if lcf.eval(&x0).try_is_zero()? || lcg.eval(&x0).try_is_zero()? {
                continue;
            }
            let fe = Poly1::from_coeffs(fc.iter().map(|p| p.eval(&x0)).collect());
            let ge = Poly1::from_coeffs(gc.iter().map(|p| p.eval(&x0)).collect());
            let r = fe.resultant(&ge)?;
            nodes.push((x0, r));
        }
        interpolate(&nodes)
    }
}

fn pow_poly1(p: &Poly1, e: u32) -> Poly1 {
    let mut acc = Poly1::from_ints(&[1]);
    for _ in 0..e {
        acc = acc.mul(p);
    }
    acc
}

fn mul_univariate(f: &Poly2, c: &Poly1) -> Poly2 {
    // multiply by a polynomial in the x variable only
    let lifted = Poly2::from_main_var_coeffs(
        f.vars().clone(),
        Var::X,
        c.coeffs()
            .iter()
            .map(|k| Poly1::constant(k.clone()))
            .collect::<Vec<_>>()
            .as_slice(),
    );
    f.mul(&lifted)
}

fn content_primitive(coeffs: &[Poly1]) -> Result<(Poly1, Vec<Poly1>)> {
    let mut content = Poly1::zero();
    for c in coeffs {
        content = content.gcd(c)?;
    }
    if content.is_zero() {
        return Ok((Poly1::zero(), coeffs.to_vec()));
    }
    let prim = coeffs
        .iter()
        .map(|c| c.exact_div(&content))
        .collect::<Result<Vec<_>>>()?;
    Ok((content, prim))
}

fn deg_of(v: &[Poly1]) -> Option<usize> {
    let mut d = None;
    for (i, c) in v.iter().enumerate() {
        if !c.is_zero() {
            d = Some(i);
        }
    }
    d
}

/// Primitive pseudo-remainder sequence in (F[x])[y]; returns the primitive
/// part of the last nonzero member.
fn primitive_prs(mut a: Vec<Poly1>, mut b: Vec<Poly1>) -> Result<Vec<Poly1>> {
    loop {
        let da = match deg_of(&a) {
            None => return content_primitive(&b).map(|(_, p)| p),
            Some(d) => d,
        };
        let db = match deg_of(&b) {
            None => return content_primitive(&a).map(|(_, p)| p),
            Some(d) => d,
        };
        if da < db {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // pseudo-reduce a by b
        let mut r = a.clone();
        loop {
            let dr = match deg_of(&r) {
                None => break,
                Some(d) => d,
            };
            if dr < db {
                break;
            }
            let lb = b[db].clone();
            let lr = r[dr].clone();
            let mut next = vec![Poly1::zero(); dr.max(db + dr - db)];
            next.resize(dr, Poly1::zero());
            for (i, c) in r.iter().enumerate().take(dr) {
                next[i] = c.mul(&lb);
            }
            for (i, c) in b.iter().enumerate().take(db) {
                let t = c.mul(&lr);
                next[i + dr - db] = next[i + dr - db].sub(&t);
            }
            r = next;
        }
        let (_, rp) = content_primitive(&r)?;
        a = b;
        b = rp;
    }
}

/// Newton interpolation through distinct nodes.
fn interpolate(nodes: &[(FieldElement, FieldElement)]) -> Result<Poly1> {
    let n = nodes.len();
    // divided differences
    let mut table: Vec<FieldElement> = nodes.iter().map(|(_, y)| y.clone()).collect();
    let mut coeffs: Vec<FieldElement> = Vec::with_capacity(n);
    if n == 0 {
        return Ok(Poly1::zero());
    }
    coeffs.push(table[0].clone());
    for k in 1..n {
        for i in (k..n).rev() {
            let num = &table[i] - &table[i - 1];
            let den = &nodes[i].0 - &nodes[i - k].0;
            table[i] = num.try_div(&den)?;
        }
        coeffs.push(table[k].clone());
    }
    // Horner expansion of the Newton form
    let mut acc = Poly1::constant(coeffs[n - 1].clone());
    for k in (0..n - 1).rev() {
        let lin = Poly1::from_coeffs(vec![-&nodes[k].0, FieldElement::one()]);
        acc = acc.mul(&lin).add(&Poly1::constant(coeffs[k].clone()));
    }
    Ok(acc)
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<(u32, u32)> = self.terms.keys().cloned().collect();
        keys.sort_by(|a, b| (a.0 + a.1).cmp(&(b.0 + b.1)).then(b.0.cmp(&a.0)));
        let mut first = true;
        for (i, j) in keys {
            let c = &self.terms[&(i, j)];
            let (sign, mag) = match c.as_rat() {
                Some(r) if r < &Rat::from_integer(0.into()) => {
                    ("-", FieldElement::from_rat(-r))
                }
                _ => ("+", c.clone()),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let mut printed = false;
            let is_one = mag.as_rat().map_or(false, |r| r.is_one());
            if !is_one || (i == 0 && j == 0) {
                write!(f, "{}", mag)?;
                printed = true;
            }
            for (name, e) in [(&self.vars.x, i), (&self.vars.y, j)] {
                if e == 0 {
                    continue;
                }
                if printed {
                    write!(f, "*")?;
                }
                write!(f, "{}", name)?;
                if e > 1 {
                    write!(f, "^{}", e)?;
                }
                printed = true;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::FieldElement as FE;

    pub fn p(s: &str) -> Poly2 {
        // tiny test-only builder: terms like "2 x^3 y | -1 y^2" separated by |
        let vars = Vars::xy();
        let mut out = Poly2::zero(vars.clone());
        for term in s.split('|') {
            let mut c = 1i64;
            let mut i = 0u32;
            let mut j = 0u32;
            for piece in term.split_whitespace() {
                if let Ok(n) = piece.parse::<i64>() {
                    c *= n;
                } else if let Some(rest) = piece.strip_prefix("x^") {
                    i += rest.parse::<u32>().unwrap();
                } else if let Some(rest) = piece.strip_prefix("y^") {
                    j += rest.parse::<u32>().unwrap();
                } else if piece == "x" {
                    i += 1;
                } else if piece == "y" {
                    j += 1;
                } else {
                    panic!("bad test term {piece}");
                }
            }
            out = out.add(&Poly2::monomial(vars.clone(), FE::from_int(c), i, j));
        }
        out
    }

    #[test]
    fn order_and_initial_form() {
        let f = p("1 y^2 | -1 x^3");
        assert_eq!(f.order().unwrap(), 2);
        assert_eq!(f.initial_form().unwrap(), p("1 y^2"));
        assert_eq!(p("4 x y").order().unwrap(), 2);
        assert_eq!(p("1 x").order().unwrap(), 1);
        assert_eq!(p("4 x y | 1 y^3").initial_form().unwrap(), p("4 x y"));
        assert!(Poly2::zero(Vars::xy()).order().is_err());
    }

    #[test]
    fn division_and_gcd() {
        let f = p("1 x y");
        let g = p("1 x^2");
        let gcd = f.gcd(&g).unwrap();
        assert_eq!(gcd, p("1 x"));
        assert!(p("1 x").divides(&p("1 x y | 1 x^2")).unwrap());
        assert!(!p("1 x").divides(&p("1 y")).unwrap());
        let q = p("1 x^2 y | 1 x y^2").exact_div(&p("1 x y")).unwrap();
        assert_eq!(q, p("1 x | 1 y"));
    }

    #[test]
    fn squarefree_part_examples() {
        assert_eq!(p("1 x^2 y").squarefree_part().unwrap(), p("1 x y"));
        let f = p("1 y^2 | -1 x^3");
        assert_eq!(f.squarefree_part().unwrap(), f);
    }

    #[test]
    fn resultant_examples() {
        // res_y(y^2 - x^3, y) = +-x^3
        let f = p("1 y^2 | -1 x^3");
        let g = p("1 y");
        let r = f.resultant(&g, Var::Y).unwrap();
        let expect = Poly1::from_ints(&[0, 0, 0, -1]);
        assert!(r == expect || r == expect.neg());
        // res_y(y - x, y + x) = +-2x
        let r2 = p("1 y | -1 x").resultant(&p("1 y | 1 x"), Var::Y).unwrap();
        let expect2 = Poly1::from_ints(&[0, 2]);
        assert!(r2 == expect2 || r2 == expect2.neg());
        // common factor
        let f3 = p("1 y^2 | 1 x y");
        assert!(f3.resultant(&f3, Var::Y).unwrap().is_zero());
    }

    /// Independent oracle: Sylvester matrix determinant by cofactor expansion
    /// over F[x].
    fn sylvester_resultant(f: &Poly2, g: &Poly2) -> Poly1 {
        let fc = f.to_main_var_coeffs(Var::Y);
        let gc = g.to_main_var_coeffs(Var::Y);
        let m = fc.len() - 1;
        let n = gc.len() - 1;
        let size = m + n;
        let mut mat = vec![vec![Poly1::zero(); size]; size];
        for row in 0..n {
            for (k, c) in fc.iter().enumerate() {
                mat[row][row + (m - k)] = c.clone();
            }
        }
        for row in 0..m {
            for (k, c) in gc.iter().enumerate() {
                mat[n + row][row + (n - k)] = c.clone();
            }
        }
        det_poly(&mat)
    }

    fn det_poly(m: &[Vec<Poly1>]) -> Poly1 {
        let n = m.len();
        if n == 0 {
            return Poly1::from_ints(&[1]);
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Poly1::zero();
        for col in 0..n {
            if m[0][col].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Poly1>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != col)
                        .map(|(_, p)| p.clone())
                        .collect()
                })
                .collect();
            let term = m[0][col].mul(&det_poly(&minor));
            if col % 2 == 0 {
                acc = acc.add(&term);
            } else {
                acc = acc.sub(&term);
            }
        }
        acc
    }

    #[test]
    fn resultant_matches_sylvester_oracle() {
        let cases = vec![
            (p("1 y^2 | -1 x^3"), p("1 y | -1 x")),
            (p("1 y^2 | -1 x^3"), p("1 y^2 | 1 x y | 1 x^2")),
            (p("1 y^3 | 1 x y | 2 x^2"), p("1 y^2 | -3 x^3 | 1 x y")),
            (p("2 y | 1 x^2"), p("1 y^2 | 1 x^5")),
        ];
        for (f, g) in cases {
            let fast = f.resultant(&g, Var::Y).unwrap();
            let oracle = sylvester_resultant(&f, &g);
            assert_eq!(fast, oracle, "resultant mismatch for {f} vs {g}");
        }
    }

    #[test]
    fn linear_change_preserves_order() {
        let m = [
            [Rat::from_integer(1.into()), Rat::from_integer(2.into())],
            [Rat::from_integer(1.into()), Rat::from_integer(3.into())],
        ];
        for f in [p("1 y^2 | -1 x^3"), p("4 x y"), p("1 x | 5 y^2")] {
            let g = f.linear_change(&m).unwrap();
            assert_eq!(f.order().unwrap(), g.order().unwrap());
        }
        let singular = [
            [Rat::from_integer(1.into()), Rat::from_integer(2.into())],
            [Rat::from_integer(2.into()), Rat::from_integer(4.into())],
        ];
        assert!(p("1 x").linear_change(&singular).is_err());
    }

    #[test]
    fn display_round_trips_canonically() {
        let f = p("1 y^2 | -1 x^3 | 4 x y");
        assert_eq!(format!("{f}"), "4*x*y + y^2 - x^3");
    }
}
