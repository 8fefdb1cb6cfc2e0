//! Exact coefficient arithmetic: rationals and simple algebraic extensions.
//!
//! Extensions are handled by dynamic evaluation in the style of D5: a tower
//! level adjoins a root of a monic squarefree polynomial that is *presumed*
//! irreducible. Arithmetic (`+`, `-`, `*`) never needs that presumption, and
//! zero tests and inversions check it on the fly: when a gcd against the
//! minimal polynomial uncovers a proper factor, the operation reports a
//! [`SplitRequest`] and the caller re-runs the computation in the two branch
//! towers. Sums over Galois orbits are weighted by tower degree, so a merged
//! orbit gives the same totals as its split refinement.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

pub type Rat = BigRational;

/// Raw representation of a tower element: a rational, or a polynomial in the
/// generator of `level` with coefficients from strictly lower levels.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Rep {
    Rat(Rat),
    Ext { level: usize, coeffs: Vec<Rep> },
}

impl Rep {
    fn zero() -> Rep {
        Rep::Rat(Rat::zero())
    }

    fn is_canonical_zero(&self) -> bool {
        matches!(self, Rep::Rat(r) if r.is_zero())
    }

    fn as_rat(&self) -> Option<&Rat> {
        match self {
            Rep::Rat(r) => Some(r),
            Rep::Ext { .. } => None,
        }
    }

    /// Highest tower level mentioned, or None for pure rationals.
    fn top_level(&self) -> Option<usize> {
        match self {
            Rep::Rat(_) => None,
            Rep::Ext { level, .. } => Some(*level),
        }
    }

    /// Coefficients of `self` viewed as a univariate polynomial in the
    /// generator of `level` (constant if it does not mention that level).
    fn coeffs_at(&self, level: usize) -> Vec<Rep> {
        match self {
            Rep::Ext { level: l, coeffs } if *l == level => coeffs.clone(),
            other => vec![other.clone()],
        }
    }

    fn from_coeffs(level: usize, mut coeffs: Vec<Rep>) -> Rep {
        while coeffs.len() > 1 && coeffs.last().map_or(false, Rep::is_canonical_zero) {
            coeffs.pop();
        }
        match coeffs.len() {
            0 => Rep::zero(),
            1 => coeffs.pop().unwrap(),
            _ => Rep::Ext { level, coeffs },
        }
    }
}

/// One tower level: the generator satisfies `z^d + sum c_i z^i = 0` with the
/// `c_i` from lower levels. Monic by construction, leading 1 implicit.
#[derive(Clone, PartialEq, Debug)]
pub struct Level {
    pub lower_coeffs: Vec<Rep>,
}

impl Level {
    pub fn degree(&self) -> usize {
        self.lower_coeffs.len()
    }
}

/// A tower of simple extensions over the rationals.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Tower {
    pub levels: Vec<Level>,
}

static EMPTY_TOWER: Lazy<Arc<Tower>> = Lazy::new(|| Arc::new(Tower::default()));

impl Tower {
    pub fn rational() -> Arc<Tower> {
        EMPTY_TOWER.clone()
    }

    pub fn is_rational(&self) -> bool {
        self.levels.is_empty()
    }

    /// Number of conjugate embeddings the tower stands for.
    pub fn orbit_weight(&self) -> u64 {
        self.levels.iter().map(|l| l.degree() as u64).product()
    }
}

/// A proper factor of some level's minimal polynomial was discovered; the
/// computation must be re-run over both branch towers.
#[derive(Clone, Debug)]
pub struct SplitRequest {
    pub level: usize,
    /// Monic factor, leading 1 implicit, coefficients from lower levels.
    pub factor: Vec<Rep>,
}

#[derive(Debug, thiserror::Error)]
pub enum FieldError {
    #[error("field split requested at tower level {}", .0.level)]
    Split(SplitRequest),
    #[error("division by zero")]
    DivisionByZero,
}

impl From<SplitRequest> for FieldError {
    fn from(s: SplitRequest) -> Self {
        FieldError::Split(s)
    }
}

pub type FieldResult<T> = Result<T, FieldError>;

/// An exact number: a rational or an element of a simple-extension tower.
#[derive(Clone, Debug)]
pub struct FieldElement {
    tower: Arc<Tower>,
    rep: Rep,
}

impl FieldElement {
    pub fn from_rat(r: Rat) -> FieldElement {
        FieldElement {
            tower: Tower::rational(),
            rep: Rep::Rat(r),
        }
    }

    pub fn from_int(n: i64) -> FieldElement {
        Self::from_rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn zero() -> FieldElement {
        Self::from_int(0)
    }

    pub fn one() -> FieldElement {
        Self::from_int(1)
    }

    pub fn in_tower(tower: Arc<Tower>, rep: Rep) -> FieldElement {
        let rep = normalize(&tower, rep);
        FieldElement { tower, rep }
    }

    /// The generator adjoined at `level` of `tower`.
    pub fn generator(tower: Arc<Tower>, level: usize) -> FieldElement {
        assert!(level < tower.levels.len());
        FieldElement {
            tower,
            rep: Rep::Ext {
                level,
                coeffs: vec![Rep::zero(), Rep::Rat(Rat::one())],
            },
        }
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    /// True when the canonical representative is the zero polynomial. Sound
    /// as a zero test over a field; over an unsplit reducible level use
    /// [`FieldElement::try_is_zero`].
    pub fn is_canonical_zero(&self) -> bool {
        self.rep.is_canonical_zero()
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.rep, Rep::Rat(_))
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.rep.as_rat()
    }

    /// Re-interpret the element in `tower` (e.g. a branch tower after a
    /// split, or a taller tower extending the current one).
    pub fn rebase(&self, tower: &Arc<Tower>) -> FieldElement {
        FieldElement::in_tower(tower.clone(), self.rep.clone())
    }

    /// Decide whether the element is zero, splitting if it is a zero divisor.
    pub fn try_is_zero(&self) -> FieldResult<bool> {
        if self.rep.is_canonical_zero() {
            return Ok(true);
        }
        if self.rep.as_rat().is_some() {
            return Ok(false);
        }
        match self.try_inv()? {
            Some(_) => Ok(false),
            None => Ok(true),
        }
    }

    /// Multiplicative inverse: `Ok(None)` for zero, `Err(Split)` when the
    /// element is a zero divisor of an unsplit level.
    pub fn try_inv(&self) -> FieldResult<Option<FieldElement>> {
        match inv_rep(&self.tower, &self.rep)? {
            Some(rep) => Ok(Some(FieldElement::in_tower(self.tower.clone(), rep))),
            None => Ok(None),
        }
    }

    pub fn try_div(&self, other: &FieldElement) -> FieldResult<FieldElement> {
        match other.try_inv()? {
            Some(inv) => Ok(self * &inv),
            None => Err(FieldError::DivisionByZero),
        }
    }

    pub fn pow(&self, mut e: u32) -> FieldElement {
        let mut base = self.clone();
        let mut acc = FieldElement::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True when the value is a rational perfect square; used by the exact
    /// eigenvalue-ratio test.
    pub fn rational_square_root(&self) -> Option<Rat> {
        let r = self.as_rat()?;
        if r.is_negative() {
            return None;
        }
        let num = r.numer().sqrt();
        let den = r.denom().sqrt();
        if &(&num * &num) == r.numer() && &(&den * &den) == r.denom() {
            Some(Rat::new(num, den))
        } else {
            None
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep
    }
}
impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.rep.hash(state);
    }
}

fn unify_towers(a: &FieldElement, b: &FieldElement) -> Arc<Tower> {
    if a.tower.levels.len() >= b.tower.levels.len() {
        debug_assert!(b.is_rational() || compatible(&a.tower, &b.tower));
        a.tower.clone()
    } else {
        debug_assert!(a.is_rational() || compatible(&b.tower, &a.tower));
        b.tower.clone()
    }
}

fn compatible(tall: &Tower, short: &Tower) -> bool {
    tall.levels.len() >= short.levels.len()
        && tall.levels[..short.levels.len()] == short.levels[..]
}

// ---- raw rep arithmetic -------------------------------------------------

fn add_rep(a: &Rep, b: &Rep) -> Rep {
    match (a, b) {
        (Rep::Rat(x), Rep::Rat(y)) => Rep::Rat(x + y),
        _ => {
            let level = a.top_level().into_iter().chain(b.top_level()).max().unwrap();
            let ca = a.coeffs_at(level);
            let cb = b.coeffs_at(level);
            let n = ca.len().max(cb.len());
            let mut out = Vec::with_capacity(n);
            for i in 0..n {
                let x = ca.get(i).cloned().unwrap_or_else(Rep::zero);
                let y = cb.get(i).cloned().unwrap_or_else(Rep::zero);
                out.push(add_rep(&x, &y));
            }
            Rep::from_coeffs(level, out)
        }
    }
}

fn neg_rep(a: &Rep) -> Rep {
    match a {
        Rep::Rat(x) => Rep::Rat(-x),
        Rep::Ext { level, coeffs } => Rep::Ext {
            level: *level,
            coeffs: coeffs.iter().map(neg_rep).collect(),
        },
    }
}

fn sub_rep(a: &Rep, b: &Rep) -> Rep {
    add_rep(a, &neg_rep(b))
}

fn mul_rep(tower: &Tower, a: &Rep, b: &Rep) -> Rep {
    match (a, b) {
        (Rep::Rat(x), Rep::Rat(y)) => Rep::Rat(x * y),
        _ => {
            if a.is_canonical_zero() || b.is_canonical_zero() {
                return Rep::zero();
            }
            let level = a.top_level().into_iter().chain(b.top_level()).max().unwrap();
            let ca = a.coeffs_at(level);
            let cb = b.coeffs_at(level);
            let mut out = vec![Rep::zero(); ca.len() + cb.len() - 1];
            for (i, x) in ca.iter().enumerate() {
                if x.is_canonical_zero() {
                    continue;
                }
                for (j, y) in cb.iter().enumerate() {
                    if y.is_canonical_zero() {
                        continue;
                    }
                    out[i + j] = add_rep(&out[i + j], &mul_rep(tower, x, y));
                }
            }
            reduce_mod_level(tower, level, out)
        }
    }
}

/// Reduce a coefficient vector modulo the (monic) minimal polynomial of
/// `level`; division by a monic needs no inversions.
fn reduce_mod_level(tower: &Tower, level: usize, mut coeffs: Vec<Rep>) -> Rep {
    let d = tower.levels[level].degree();
    while coeffs.len() > d {
        let top = coeffs.pop().unwrap();
        if top.is_canonical_zero() {
            continue;
        }
        let k = coeffs.len() - d;
        let min = &tower.levels[level].lower_coeffs;
        for (i, c) in min.iter().enumerate() {
            let t = mul_rep(tower, &top, c);
            coeffs[k + i] = sub_rep(&coeffs[k + i], &t);
        }
    }
    Rep::from_coeffs(level, coeffs)
}

/// Fully renormalize a rep into `tower` (used after rebasing across splits,
/// where level degrees may have shrunk).
fn normalize(tower: &Tower, rep: Rep) -> Rep {
    match rep {
        Rep::Rat(r) => Rep::Rat(r),
        Rep::Ext { level, coeffs } => {
            assert!(level < tower.levels.len(), "rep mentions missing tower level");
            let coeffs: Vec<Rep> = coeffs.into_iter().map(|c| normalize(tower, c)).collect();
            reduce_mod_level(tower, level, coeffs)
        }
    }
}

// ---- inversion with dynamic evaluation ----------------------------------

/// Univariate polynomials over reps of level < `level`, dense, used only for
/// the internal extended-Euclid routine.
fn poly_trim(mut v: Vec<Rep>) -> Vec<Rep> {
    while v.last().map_or(false, Rep::is_canonical_zero) {
        v.pop();
    }
    v
}

fn poly_sub_scaled(
    tower: &Tower,
    a: &[Rep],
    b: &[Rep],
    scale: &Rep,
    shift: usize,
) -> Vec<Rep> {
    let n = a.len().max(b.len() + shift);
    let mut out = vec![Rep::zero(); n];
    out[..a.len()].clone_from_slice(a);
    for (i, c) in b.iter().enumerate() {
        let t = mul_rep(tower, c, scale);
        out[i + shift] = sub_rep(&out[i + shift], &t);
    }
    poly_trim(out)
}

fn poly_scale(tower: &Tower, a: &[Rep], s: &Rep) -> Vec<Rep> {
    poly_trim(a.iter().map(|c| mul_rep(tower, c, s)).collect())
}

/// Division of `a` by `b` over the sub-tower below `level`; the leading
/// coefficient of `b` is inverted recursively and may split.
fn poly_divrem(
    tower: &Tower,
    a: &[Rep],
    b: &[Rep],
) -> FieldResult<(Vec<Rep>, Vec<Rep>)> {
    assert!(!b.is_empty());
    let lead = b.last().unwrap();
    let lead_inv = match inv_rep(tower, lead)? {
        Some(i) => i,
        None => unreachable!("trimmed divisor has certified nonzero lead"),
    };
    let mut rem = a.to_vec();
    let mut quo = vec![Rep::zero(); a.len().saturating_sub(b.len() - 1)];
    while rem.len() >= b.len() {
        let k = rem.len() - b.len();
        let c = mul_rep(tower, rem.last().unwrap(), &lead_inv);
        if !c.is_canonical_zero() {
            quo[k] = c.clone();
            rem = poly_sub_scaled(tower, &rem, b, &c, k);
        } else {
            rem.pop();
        }
        rem = poly_trim(rem);
        if rem.len() > k + b.len() - 1 {
            // No progress would loop forever; cannot happen with exact arithmetic.
            unreachable!("division made no progress");
        }
    }
    Ok((poly_trim(quo), rem))
}

/// Inverse of `rep` in the quotient at its top level. `Ok(None)` = zero,
/// `Err(Split)` = proper factor found (dynamic evaluation).
fn inv_rep(tower: &Tower, rep: &Rep) -> FieldResult<Option<Rep>> {
    match rep {
        Rep::Rat(r) => {
            if r.is_zero() {
                Ok(None)
            } else {
                Ok(Some(Rep::Rat(r.recip())))
            }
        }
        Rep::Ext { level, .. } => {
            let level = *level;
            // minimal polynomial of the level, monic with explicit lead
            let mut m: Vec<Rep> = tower.levels[level].lower_coeffs.clone();
            m.push(Rep::Rat(Rat::one()));
            let e = rep.coeffs_at(level);
            // extended Euclid: r0 = m, r1 = e, track Bezout coefficient of e
            let mut r0 = poly_trim(m);
            let mut r1 = poly_trim(e);
            let mut s0: Vec<Rep> = vec![];
            let mut s1: Vec<Rep> = vec![Rep::Rat(Rat::one())];
            while !r1.is_empty() {
                let (q, r) = poly_divrem(tower, &r0, &r1)?;
                let mut s = s0.clone();
                // s = s0 - q*s1
                let mut qs1 = vec![Rep::zero(); q.len() + s1.len()];
                for (i, qc) in q.iter().enumerate() {
                    for (j, sc) in s1.iter().enumerate() {
                        qs1[i + j] = add_rep(&qs1[i + j], &mul_rep(tower, qc, sc));
                    }
                }
                let n = s.len().max(qs1.len());
                s.resize(n, Rep::zero());
                for (i, c) in qs1.iter().enumerate() {
                    s[i] = sub_rep(&s[i], c);
                }
                r0 = r1;
                r1 = r;
                s0 = s1;
                s1 = poly_trim(s);
            }
            // r0 = gcd(e, m) up to a unit
            if r0.len() == 1 {
                let u_inv = match inv_rep(tower, &r0[0])? {
                    Some(i) => i,
                    None => unreachable!("trimmed gcd lead is nonzero"),
                };
                let inv = poly_scale(tower, &s0, &u_inv);
                Ok(Some(reduce_mod_level(tower, level, inv)))
            } else if r0.len() == tower.levels[level].degree() + 1 {
                // gcd is the whole minimal polynomial: e reduces to zero
                Ok(None)
            } else {
                // proper factor: make it monic and report the split
                let lead_inv = match inv_rep(tower, r0.last().unwrap())? {
                    Some(i) => i,
                    None => unreachable!(),
                };
                let mut monic = poly_scale(tower, &r0, &lead_inv);
                monic.pop();
                Err(FieldError::Split(SplitRequest {
                    level,
                    factor: monic,
                }))
            }
        }
    }
}

/// Build the two branch towers for a split: one with the discovered factor
/// as the level's minimal polynomial, one with the cofactor.
pub fn split_tower(tower: &Arc<Tower>, req: &SplitRequest) -> (Arc<Tower>, Arc<Tower>) {
    let level = req.level;
    let mut m: Vec<Rep> = tower.levels[level].lower_coeffs.clone();
    m.push(Rep::Rat(Rat::one()));
    let mut f: Vec<Rep> = req.factor.clone();
    f.push(Rep::Rat(Rat::one()));
    let (cof, rem) = poly_divrem(tower, &m, &f).expect("split factor divides minimal polynomial");
    assert!(rem.is_empty(), "split factor must divide the minimal polynomial");
    let mut cof = cof;
    let lead = cof.pop().expect("cofactor nonconstant");
    assert!(matches!(&lead, Rep::Rat(r) if r.is_one()), "cofactor of monic by monic is monic");

    let branch = |min: Vec<Rep>| {
        let mut t = (**tower).clone();
        t.levels[level] = Level { lower_coeffs: min };
        Arc::new(t)
    };
    (branch(req.factor.clone()), branch(cof))
}

// ---- operator impls ------------------------------------------------------

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $f:expr) => {
        impl std::ops::$trait for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                let tower = unify_towers(self, rhs);
                let rep = $f(&tower, &self.rep, &rhs.rep);
                FieldElement { tower, rep }
            }
        }
        impl std::ops::$trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, |_t: &Arc<Tower>, a, b| add_rep(a, b));
impl_binop!(Sub, sub, |_t: &Arc<Tower>, a, b| sub_rep(a, b));
impl_binop!(Mul, mul, |t: &Arc<Tower>, a, b| mul_rep(t, a, b));

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            tower: self.tower.clone(),
            rep: neg_rep(&self.rep),
        }
    }
}
impl std::ops::Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rep(&self.rep, f)
    }
}

fn fmt_rep(rep: &Rep, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match rep {
        Rep::Rat(r) => write!(f, "{}", r),
        Rep::Ext { level, coeffs } => {
            write!(f, "(")?;
            let mut first = true;
            for (i, c) in coeffs.iter().enumerate() {
                if c.is_canonical_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                fmt_rep(c, f)?;
                if i > 0 {
                    write!(f, "*g{}", level)?;
                    if i > 1 {
                        write!(f, "^{}", i)?;
                    }
                }
            }
            if first {
                write!(f, "0")?;
            }
            write!(f, ")")
        }
    }
}
