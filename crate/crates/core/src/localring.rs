//! Computations in the local ring at the origin.
//!
//! Local standard bases are computed with Mora's tangent-cone algorithm
//! (ecart-minimal reduction), and dimensions of zero-dimensional quotients
//! are read off the staircase. Intersection numbers are computed twice, by
//! the staircase and by the order of a resultant after a shear into general
//! position; the two routes must agree exactly.

use std::cmp::Ordering;

use serde::Serialize;

use crate::algebra::field::FieldElement;
use crate::algebra::poly2::{Poly2, Var};
use crate::error::{Error, Result};

/// Ideal in the local ring, given by polynomial generators. The monomial
/// order is fixed: smaller total degree first, ties broken lexicographically
/// with x ahead of y.
#[derive(Clone, Debug)]
pub struct LocalIdeal {
    pub gens: Vec<Poly2>,
}

impl LocalIdeal {
    pub fn new(gens: Vec<Poly2>) -> LocalIdeal {
        LocalIdeal {
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        }
    }
}

/// Dimension of a local quotient ring.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum QuotientDim {
    Finite(u64),
    Infinite,
}

impl QuotientDim {
    pub fn finite(&self) -> Option<u64> {
        match self {
            QuotientDim::Finite(n) => Some(*n),
            QuotientDim::Infinite => None,
        }
    }

    pub fn expect_finite(&self, what: &str) -> Result<u64> {
        self.finite()
            .ok_or_else(|| Error::Input(format!("{what} is not finite")))
    }
}

impl std::fmt::Display for QuotientDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QuotientDim::Finite(n) => write!(f, "{n}"),
            QuotientDim::Infinite => write!(f, "infinite"),
        }
    }
}

/// `Greater` means the first monomial comes earlier in the local order
/// (leading): smaller total degree, then larger x-exponent.
pub fn cmp_local(a: (u32, u32), b: (u32, u32)) -> Ordering {
    let (da, db) = (a.0 + a.1, b.0 + b.1);
    db.cmp(&da).then(a.0.cmp(&b.0))
}

fn leading_monomial(f: &Poly2) -> Option<(u32, u32)> {
    f.terms()
        .map(|(&m, _)| m)
        .max_by(|&a, &b| cmp_local(a, b))
}

fn ecart(f: &Poly2) -> u32 {
    match (f.degree(), leading_monomial(f)) {
        (Some(d), Some(lm)) => d - (lm.0 + lm.1),
        _ => 0,
    }
}

fn divides_mono(a: (u32, u32), b: (u32, u32)) -> bool {
    a.0 <= b.0 && a.1 <= b.1
}

/// Scale a rational-coefficient polynomial to primitive integer form; keeps
/// Buchberger-style coefficient growth in check. Extension coefficients are
/// left untouched.
fn content_normalize(f: &Poly2) -> Poly2 {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for (_, c) in f.terms() {
        match c.as_rat() {
            Some(r) => {
                num_gcd = num_integer::gcd(num_gcd, r.numer().abs());
                den_lcm = num_integer::lcm(den_lcm, r.denom().clone());
            }
            None => return f.clone(),
        }
    }
    if num_gcd.is_zero() || (num_gcd.is_one() && den_lcm.is_one()) {
        return f.clone();
    }
    let scale = FieldElement::from_rat(crate::algebra::Rat::new(den_lcm, num_gcd));
    f.scale(&scale)
}

/// Mora normal form of `f` with respect to `basis`: reductions may recruit
/// earlier partial remainders to keep the ecart under control, which is what
/// guarantees termination for local orders.
/// Drop all terms of total degree above `cutoff` (reduction modulo the
/// corresponding power of the maximal ideal). For a local order, truncation
/// cannot change leading terms of degree within the cutoff.
fn truncate(f: &Poly2, cutoff: Option<u32>) -> Poly2 {
    match cutoff {
        None => f.clone(),
        Some(k) => {
            let mut out = Poly2::zero(f.vars().clone());
            for (&(i, j), c) in f.terms() {
                if i + j <= k {
                    out = out.add(&Poly2::monomial(f.vars().clone(), c.clone(), i, j));
                }
            }
            out
        }
    }
}

fn mora_normal_form(f: &Poly2, basis: &[Poly2], cutoff: Option<u32>) -> Result<Poly2> {
    // cache (poly, lead monomial, ecart) to avoid rescanning terms
    let mut reducers: Vec<(Poly2, (u32, u32), u32)> = basis
        .iter()
        .map(|g| (g.clone(), leading_monomial(g).expect("nonzero"), ecart(g)))
        .collect();
    let mut h = truncate(f, cutoff);
    loop {
        let hm = match leading_monomial(&h) {
            None => return Ok(h),
            Some(m) => m,
        };
        let h_ecart = ecart(&h);
        let mut best: Option<usize> = None;
        for (i, (_, gm, ge)) in reducers.iter().enumerate() {
            if divides_mono(*gm, hm) && best.map_or(true, |b: usize| *ge < reducers[b].2) {
                best = Some(i);
            }
        }
        let gi = match best {
            None => return Ok(h),
            Some(i) => i,
        };
        if reducers[gi].2 > h_ecart {
            reducers.push((h.clone(), hm, h_ecart));
        }
        let (g, gm, _) = reducers[gi].clone();
        let hc = h.coeff(hm.0, hm.1);
        let gc = g.coeff(gm.0, gm.1);
        let factor = hc.try_div(&gc)?;
        let mono = Poly2::monomial(h.vars().clone(), factor, hm.0 - gm.0, hm.1 - gm.1);
        h = content_normalize(&truncate(&h.sub(&mono.mul(&g)), cutoff));
    }
}

/// Standard basis of a local ideal for the fixed order (Mora / Buchberger).
pub fn local_std_basis(ideal: &LocalIdeal) -> Result<Vec<Poly2>> {
    std_basis_with_cutoff(ideal, None)
}

/// Standard basis of the ideal plus the (cutoff+1)-th power of the maximal
/// ideal, represented implicitly by truncation.
fn std_basis_with_cutoff(ideal: &LocalIdeal, cutoff: Option<u32>) -> Result<Vec<Poly2>> {
    let mut basis: Vec<Poly2> = Vec::new();
    for g in &ideal.gens {
        let g = content_normalize(&truncate(g, cutoff));
        if !g.is_zero() && !basis.contains(&g) {
            basis.push(g);
        }
    }
    if basis.is_empty() {
        return Ok(basis);
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while !pairs.is_empty() {
        // process the pair with the smallest lcm degree first
        let best = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| {
                let fm = leading_monomial(&basis[i]).unwrap();
                let gm = leading_monomial(&basis[j]).unwrap();
                fm.0.max(gm.0) + fm.1.max(gm.1)
            })
            .map(|(k, _)| k)
            .unwrap();
        let (i, j) = pairs.swap_remove(best);
        let fm = leading_monomial(&basis[i]).unwrap();
        let gm = leading_monomial(&basis[j]).unwrap();
        let lcm = (fm.0.max(gm.0), fm.1.max(gm.1));
        // coprime leading monomials reduce to zero (product criterion)
        if lcm == (fm.0 + gm.0, fm.1 + gm.1) {
            continue;
        }
        let fc = basis[i].coeff(fm.0, fm.1);
        let gc = basis[j].coeff(gm.0, gm.1);
        let vars = basis[i].vars().clone();
        let mf = Poly2::monomial(vars.clone(), gc, lcm.0 - fm.0, lcm.1 - fm.1);
        let mg = Poly2::monomial(vars, fc, lcm.0 - gm.0, lcm.1 - gm.1);
        let spoly = mf.mul(&basis[i]).sub(&mg.mul(&basis[j]));
        let nf = mora_normal_form(&spoly, &basis, cutoff)?;
        if !nf.is_zero() {
            for k in 0..basis.len() {
                pairs.push((k, basis.len()));
            }
            basis.push(content_normalize(&nf));
        }
    }
    Ok(basis)
}

/// Count monomials under the staircase of the leading-term ideal.
fn staircase_dimension(leading: &[(u32, u32)]) -> QuotientDim {
    let pure_x = leading.iter().filter(|m| m.1 == 0).map(|m| m.0).min();
    let pure_y = leading.iter().filter(|m| m.0 == 0).map(|m| m.1).min();
    let (ax, by) = match (pure_x, pure_y) {
        (Some(a), Some(b)) => (a, b),
        _ => return QuotientDim::Infinite,
    };
    let mut count: u64 = 0;
    for j in 0..by {
        // smallest x-power lying in the ideal on row j
        let bound = leading
            .iter()
            .filter(|m| m.1 <= j)
            .map(|m| m.0)
            .min()
            .unwrap_or(ax);
        count += bound as u64;
    }
    QuotientDim::Finite(count)
}

/// Staircase count below the cutoff; `Some` only when the staircase stays
/// strictly below degree `cutoff`, which certifies that truncation lost
/// nothing (standard monomials are divisor-closed, so one of degree >= cutoff
/// would force one of degree exactly cutoff).
fn bounded_staircase(leading: &[(u32, u32)], cutoff: u32) -> Option<u64> {
    let mut count: u64 = 0;
    for j in 0..=cutoff {
        let minx = leading.iter().filter(|m| m.1 <= j).map(|m| m.0).min();
        let from_trunc = cutoff + 1 - j;
        let row = match minx {
            Some(b) => b.min(from_trunc),
            None => from_trunc,
        };
        if row == from_trunc && row > 0 {
            // a standard monomial touches the cutoff: inconclusive
            return None;
        }
        count += row as u64;
        if row == 0 && minx == Some(0) {
            break;
        }
    }
    Some(count)
}

/// Dimension of the local quotient by the ideal, by truncated standard bases
/// with iterative deepening; falls back to the full Mora computation when the
/// staircase keeps touching the cutoff (the ideal is then usually not
/// zero-dimensional).
pub fn quotient_dim(ideal: &LocalIdeal) -> Result<QuotientDim> {
    if ideal.gens.is_empty() {
        return Ok(QuotientDim::Infinite);
    }
    // a unit generator makes the quotient trivial
    for g in &ideal.gens {
        if !g.eval_origin().try_is_zero()? {
            return Ok(QuotientDim::Finite(0));
        }
    }
    let mut cutoff: u32 = 8;
    while cutoff <= 256 {
        let basis = std_basis_with_cutoff(ideal, Some(cutoff))?;
        let leading: Vec<(u32, u32)> = basis.iter().filter_map(leading_monomial).collect();
        if let Some(dim) = bounded_staircase(&leading, cutoff) {
            return Ok(QuotientDim::Finite(dim));
        }
        cutoff *= 2;
    }
    let basis = local_std_basis(ideal)?;
    let leading: Vec<(u32, u32)> = basis.iter().filter_map(leading_monomial).collect();
    Ok(staircase_dimension(&leading))
}

/// Shears (x, y) -> (x + c y, y) tried in order for the resultant route.
const SHEAR_CANDIDATES: [i64; 9] = [0, 1, -1, 2, -2, 3, -3, 5, 7];

fn shear(f: &Poly2, c: i64) -> Poly2 {
    if c == 0 {
        return f.clone();
    }
    let vars = f.vars().clone();
    let gx = Poly2::var(vars.clone(), Var::X)
        .add(&Poly2::monomial(vars.clone(), FieldElement::from_int(c), 0, 1));
    let gy = Poly2::var(vars, Var::Y);
    f.substitute(&gx, &gy)
}

/// A shear is valid when both curves are y-regular afterwards (top form and
/// initial form do not vanish in the sheared direction) and the only common
/// root on the line x = 0 is the origin.
fn shear_is_valid(fs: &Poly2, gs: &Poly2) -> Result<bool> {
    for p in [fs, gs] {
        let ord = p.order()?;
        let deg = p.degree().unwrap();
        let init = p.initial_form()?.restrict_to_axis(Var::Y);
        if init.degree() != Some(ord as usize) {
            return Ok(false);
        }
        let top: Vec<&(u32, u32)> = p
            .terms()
            .map(|(m, _)| m)
            .filter(|m| m.0 + m.1 == deg)
            .collect();
        let top_in_y = top.iter().any(|m| m.0 == 0);
        if !top_in_y {
            return Ok(false);
        }
    }
    let f0 = fs.restrict_to_axis(Var::Y);
    let g0 = gs.restrict_to_axis(Var::Y);
    let g = f0.gcd(&g0)?;
    // valid iff gcd is a pure power of y
    Ok(g.coeffs().iter().take(g.degree().unwrap_or(0)).all(|c| c.is_canonical_zero()))
}

fn resultant_route(f: &Poly2, g: &Poly2) -> Result<u64> {
    use rand::{Rng, SeedableRng};
    let mut fallback = rand_chacha::ChaCha8Rng::seed_from_u64(0x7368_6561);
    let candidates = SHEAR_CANDIDATES
        .iter()
        .copied()
        .chain((0..200).map(move |_| fallback.gen_range(-10_000i64..=10_000)));
    for c in candidates {
        let fs = shear(f, c);
        let gs = shear(g, c);
        if shear_is_valid(&fs, &gs)? {
            let res = fs.resultant(&gs, Var::Y)?;
            let ord = res
                .order()
                .ok_or_else(|| Error::Inconsistency("resultant of coprime germs vanished".into()))?;
            return Ok(ord as u64);
        }
    }
    Err(Error::Inconsistency(
        "no valid shear found for the resultant route".into(),
    ))
}

/// Intersection number of two plane curve germs at the origin, computed by
/// both the staircase and the resultant route with an internal consistency
/// assertion. Units (curves missing the origin) intersect everything with
/// multiplicity zero; a common component through the origin gives infinity.
pub fn intersection_number(f: &Poly2, g: &Poly2) -> Result<QuotientDim> {
    match (f.is_zero(), g.is_zero()) {
        (true, true) => return Err(Error::ZeroPolynomial),
        (true, false) => {
            return Ok(if g.eval_origin().try_is_zero()? {
                QuotientDim::Infinite
            } else {
                QuotientDim::Finite(0)
            })
        }
        (false, true) => {
            return Ok(if f.eval_origin().try_is_zero()? {
                QuotientDim::Infinite
            } else {
                QuotientDim::Finite(0)
            })
        }
        _ => {}
    }
    if !f.eval_origin().try_is_zero()? || !g.eval_origin().try_is_zero()? {
        return Ok(QuotientDim::Finite(0));
    }
    let h = f.gcd(g)?;
    let (mut fr, mut gr) = (f.clone(), g.clone());
    if h.degree().unwrap_or(0) > 0 {
        if h.eval_origin().try_is_zero()? {
            return Ok(QuotientDim::Infinite);
        }
        // common factor away from the origin is a local unit
        fr = fr.exact_div(&h)?;
        gr = gr.exact_div(&h)?;
    }
    let by_staircase = quotient_dim(&LocalIdeal::new(vec![f.clone(), g.clone()]))?
        .expect_finite("intersection number")
        .map_err(|_| Error::Inconsistency("staircase route gave infinity for coprime germs".into()));
    let by_staircase = by_staircase?;
    let by_resultant = resultant_route(&fr, &gr)?;
    if by_staircase != by_resultant {
        return Err(Error::Inconsistency(format!(
            "intersection number mismatch: staircase {by_staircase} vs resultant {by_resultant} for {f} and {g}"
        )));
    }
    Ok(QuotientDim::Finite(by_staircase))
}

/// Finite intersection number or an input error naming `what`.
pub fn finite_intersection(f: &Poly2, g: &Poly2, what: &str) -> Result<u64> {
    intersection_number(f, g)?.expect_finite(what)
}

/// Milnor number of the curve f = 0 at the origin; infinite when f has a
/// repeated factor.
pub fn milnor_curve(f: &Poly2) -> Result<QuotientDim> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    intersection_number(&f.derivative(Var::X), &f.derivative(Var::Y))
}

/// Tjurina number of the reduced curve f = 0 at the origin.
pub fn tjurina_curve(f: &Poly2) -> Result<u64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = f.squarefree_part()?;
    if sf.degree() != f.degree() || sf.num_terms() != f.num_terms() {
        // cheap pre-check failed; confirm with an exact degree comparison
        if sf.degree() != f.degree() {
            return Err(Error::NotSquarefree);
        }
    }
    let ideal = LocalIdeal::new(vec![
        f.clone(),
        f.derivative(Var::X),
        f.derivative(Var::Y),
    ]);
    quotient_dim(&ideal)?.expect_finite("Tjurina number of a reduced curve")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Rat;
    use crate::algebra::poly2::Vars;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(s: &str) -> Poly2 {
        // same tiny builder as the poly2 tests
        let vars = Vars::xy();
        let mut out = Poly2::zero(vars.clone());
        for term in s.split('|') {
            let mut c = 1i64;
            let (mut i, mut j) = (0u32, 0u32);
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
            out = out.add(&Poly2::monomial(
                vars.clone(),
                FieldElement::from_rat(Rat::from_integer(BigInt::from(c))),
                i,
                j,
            ));
        }
        out
    }

    fn inum(f: &Poly2, g: &Poly2) -> QuotientDim {
        intersection_number(f, g).unwrap()
    }

    #[test]
    fn std_basis_examples() {
        let b = local_std_basis(&LocalIdeal::new(vec![p("1 x"), p("1 y")])).unwrap();
        assert_eq!(b.len(), 2);

        // leading terms of the basis of (xy, y - x^2) generate (x^3, y)
        let b = local_std_basis(&LocalIdeal::new(vec![p("1 x y"), p("1 y | -1 x^2")])).unwrap();
        let mut leads: Vec<(u32, u32)> = b.iter().filter_map(leading_monomial).collect();
        leads.sort();
        assert!(leads.contains(&(0, 1)));
        assert!(leads.iter().any(|&(i, j)| j == 0 && i == 3));
        assert!(!leads.iter().any(|&(i, j)| j == 0 && i < 3));

        // duplicate generators change nothing
        let b1 = local_std_basis(&LocalIdeal::new(vec![p("1 y | -1 x^2")])).unwrap();
        let b2 =
            local_std_basis(&LocalIdeal::new(vec![p("1 y | -1 x^2"), p("1 y | -1 x^2")])).unwrap();
        assert_eq!(b1, b2);
    }

    #[test]
    fn quotient_dims() {
        let d = |gens: Vec<Poly2>| quotient_dim(&LocalIdeal::new(gens)).unwrap();
        assert_eq!(d(vec![p("1 x"), p("1 y")]), QuotientDim::Finite(1));
        assert_eq!(d(vec![p("1 x^2"), p("1 y")]), QuotientDim::Finite(2));
        assert_eq!(d(vec![p("1 x")]), QuotientDim::Infinite);
        assert_eq!(d(vec![p("1 x y"), p("1 y | -1 x^2")]), QuotientDim::Finite(3));
    }

    #[test]
    fn intersection_examples() {
        assert_eq!(inum(&p("1 x"), &p("1 y")), QuotientDim::Finite(1));
        assert_eq!(inum(&p("1 y^2 | -1 x^3"), &p("1 y")), QuotientDim::Finite(3));
        // xy(x-y) against x+y
        let b0 = p("1 x y").mul(&p("1 x | -1 y"));
        assert_eq!(inum(&b0, &p("1 x | 1 y")), QuotientDim::Finite(3));
        // unit convention and common components
        assert_eq!(inum(&p("1 x"), &p("1 x | 1")), QuotientDim::Finite(0));
        assert_eq!(inum(&p("1 x y"), &p("1 x^2")), QuotientDim::Infinite);
        // common factor away from the origin is harmless
        let f = p("1 x").mul(&p("1 x | -1")); // x(x-1)
        let g = p("1 y").mul(&p("1 x | -1")); // y(x-1)
        assert_eq!(inum(&f, &g), QuotientDim::Finite(1));
    }

    #[test]
    fn milnor_and_tjurina_examples() {
        let b0 = p("1 x y").mul(&p("1 x | -1 y"));
        assert_eq!(milnor_curve(&b0).unwrap(), QuotientDim::Finite(4));
        assert_eq!(milnor_curve(&p("1 x")).unwrap(), QuotientDim::Finite(0));
        assert_eq!(
            milnor_curve(&p("1 y^2 | -1 x^3")).unwrap(),
            QuotientDim::Finite(2)
        );
        assert_eq!(milnor_curve(&p("1 x^2 y")).unwrap(), QuotientDim::Infinite);

        assert_eq!(tjurina_curve(&p("1 x")).unwrap(), 0);
        assert_eq!(tjurina_curve(&p("1 x y")).unwrap(), 1);
        assert_eq!(tjurina_curve(&p("1 y^2 | -1 x^3")).unwrap(), 2);
        // tau <= mu on irreducible germs
        for f in [p("1 y^2 | -1 x^3"), p("1 y^3 | -1 x^5"), p("1 y^2 | -1 x^5")] {
            let mu = milnor_curve(&f).unwrap().finite().unwrap();
            let tau = tjurina_curve(&f).unwrap();
            assert!(tau <= mu, "tau {tau} > mu {mu} for {f}");
        }
        assert!(matches!(
            tjurina_curve(&p("1 x^2 y")),
            Err(Error::NotSquarefree)
        ));
    }

    fn random_poly(rng: &mut ChaCha8Rng, deg: u32, vanish: bool) -> Poly2 {
        loop {
            let mut f = Poly2::zero(Vars::xy());
            for i in 0..=deg {
                for j in 0..=(deg - i) {
                    if rng.gen_bool(0.4) {
                        let c = rng.gen_range(-9i64..=9);
                        f = f.add(&Poly2::monomial(
                            Vars::xy(),
                            FieldElement::from_int(c),
                            i,
                            j,
                        ));
                    }
                }
            }
            if vanish {
                let c = f.eval_origin();
                f = f.sub(&Poly2::constant(Vars::xy(), c));
            }
            if !f.is_zero() && f.order().unwrap_or(0) >= if vanish { 1 } else { 0 } {
                return f;
            }
        }
    }

    #[test]
    fn order_additivity_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..30 {
            let f = random_poly(&mut rng, 4, false);
            let g = random_poly(&mut rng, 4, false);
            assert_eq!(
                f.mul(&g).order().unwrap(),
                f.order().unwrap() + g.order().unwrap()
            );
        }
    }

    #[test]
    fn resultant_vanishes_iff_common_factor_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let f = random_poly(&mut rng, 3, false);
            let g = random_poly(&mut rng, 3, false);
            if f.degree_in(Var::Y).unwrap_or(0) == 0 || g.degree_in(Var::Y).unwrap_or(0) == 0 {
                continue;
            }
            let r = f.resultant(&g, Var::Y).unwrap();
            let gcd = f.gcd(&g).unwrap();
            let common = gcd.degree_in(Var::Y).unwrap_or(0) > 0;
            assert_eq!(r.is_zero(), common, "resultant/gcd disagreement for {f} vs {g}");
        }
    }

    #[test]
    fn intersection_bilinear_and_symmetric_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let mut done = 0;
        while done < 8 {
            let f = random_poly(&mut rng, 3, true);
            let g = random_poly(&mut rng, 2, true);
            let h = random_poly(&mut rng, 2, true);
            let (ifg, igf) = (inum(&f, &g), inum(&g, &f));
            assert_eq!(ifg, igf);
            let (a, b, c) = (inum(&f, &g), inum(&f, &h), inum(&f, &g.mul(&h)));
            if let (Some(a), Some(b), Some(c)) = (a.finite(), b.finite(), c.finite()) {
                assert_eq!(c, a + b, "bilinearity failed");
                done += 1;
            }
        }
    }

    #[test]
    fn intersection_bound_by_orders_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let mut done = 0;
        while done < 10 {
            let f = random_poly(&mut rng, 3, true);
            let g = random_poly(&mut rng, 3, true);
            if let Some(i) = inum(&f, &g).finite() {
                let (of, og) = (f.order().unwrap() as u64, g.order().unwrap() as u64);
                assert!(i >= of * og);
                let shared = f
                    .initial_form()
                    .unwrap()
                    .gcd(&g.initial_form().unwrap())
                    .unwrap();
                let transverse = shared.degree().unwrap_or(0) == 0;
                assert_eq!(i == of * og, transverse, "tangent-cone criterion failed");
                done += 1;
            }
        }
    }

    #[test]
    fn quotient_sum_with_coprime_cofactor_random() {
        // dim R/(f, gp, gq) = dim R/(f, p, q) + dim R/(f, g) when gcd(f, g) = 1
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let mut done = 0;
        while done < 6 {
            let f = random_poly(&mut rng, 3, true);
            let g = random_poly(&mut rng, 2, true);
            let pp = random_poly(&mut rng, 2, true);
            let qq = random_poly(&mut rng, 2, true);
            let coprime = f.gcd(&g).unwrap().degree().unwrap_or(0) == 0;
            if !coprime {
                continue;
            }
            let lhs = quotient_dim(&LocalIdeal::new(vec![
                f.clone(),
                g.mul(&pp),
                g.mul(&qq),
            ]))
            .unwrap();
            let r1 = quotient_dim(&LocalIdeal::new(vec![f.clone(), pp.clone(), qq.clone()]))
                .unwrap();
            let r2 = quotient_dim(&LocalIdeal::new(vec![f.clone(), g.clone()])).unwrap();
            if let (Some(a), Some(b)) = (r1.finite(), r2.finite()) {
                assert_eq!(lhs, QuotientDim::Finite(a + b));
                done += 1;
            }
        }
    }

    #[test]
    fn shear_search_falls_back_to_random_draws() {
        // a tangent cone through every fixed shear direction: the fixed
        // list fails and the seeded random fallback must take over
        let mut f = Poly2::one(Vars::xy());
        for c in SHEAR_CANDIDATES {
            let line = p("1 x").sub(&p("1 y").scale(&FieldElement::from_int(c)));
            f = f.mul(&line);
        }
        let g = p("1 y^9 | 2 x^9");
        let i = intersection_number(&f, &g).unwrap();
        // each of the nine distinct lines meets y^9 + 2x^9 = 0 with
        // multiplicity 9
        assert_eq!(i, QuotientDim::Finite(9 * 9));
    }

    #[test]
    fn dual_routes_agree_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(16);
        for _ in 0..10 {
            let f = random_poly(&mut rng, 4, true);
            let g = random_poly(&mut rng, 4, true);
            // both routes run inside intersection_number; it errors on mismatch
            let _ = intersection_number(&f, &g).unwrap();
        }
    }
}
