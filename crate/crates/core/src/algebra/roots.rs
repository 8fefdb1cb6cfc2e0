//! Root location for univariate polynomials by dynamic evaluation.
//!
//! Rational roots are split off exactly; what remains is kept as unsplit
//! Galois orbits: one representative root per squarefree factor, living in a
//! tower extended by that factor, weighted by the factor degree. Arithmetic
//! downstream refines an orbit automatically whenever a zero test actually
//! distinguishes its conjugates.

use std::sync::Arc;

use super::field::{FieldElement, Level, Tower};
use super::poly1::Poly1;
use crate::error::{Error, Result};

/// One located root (or orbit of conjugate roots).
#[derive(Clone, Debug)]
pub struct Root {
    /// The root as an element of `tower` (the input tower, possibly extended).
    pub value: FieldElement,
    pub tower: Arc<Tower>,
    /// Multiplicity as a root of the input polynomial.
    pub multiplicity: usize,
    /// Number of conjugates the representative stands for.
    pub orbit_degree: usize,
}

/// Locate the roots of `p` over the tower of its coefficients, extending the
/// field lazily. `hints` are monic rational polynomials used to split orbits
/// eagerly when they divide an orbit's minimal polynomial (useful to force a
/// refinement that plain dynamic evaluation would postpone).
pub fn split_extension(p: &Poly1, hints: &[Poly1]) -> Result<Vec<Root>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let base = p.tower();
    if p.degree() == Some(0) {
        return Ok(vec![]);
    }
    let sf = p.squarefree_part()?;
    let mut orbits: Vec<Poly1> = Vec::new();
    let mut roots: Vec<Root> = Vec::new();

    let mut remaining = sf.clone();
    if base.is_rational() {
        if let Some(rational) = remaining.rational_roots() {
            for (r, _) in rational {
                let x = FieldElement::from_rat(r);
                let lin = Poly1::from_coeffs(vec![-&x, FieldElement::one()]);
                remaining = remaining.exact_div(&lin)?;
                roots.push(Root {
                    value: x,
                    tower: base.clone(),
                    multiplicity: 0,
                    orbit_degree: 1,
                });
            }
        }
    } else if remaining.degree() == Some(1) {
        // linear over an extension: solve directly
        let c0 = remaining.coeff(0);
        let c1 = remaining.coeff(1);
        let x = (-&c0).try_div(&c1)?;
        roots.push(Root {
            value: x,
            tower: base.clone(),
            multiplicity: 0,
            orbit_degree: 1,
        });
        remaining = Poly1::from_ints(&[1]);
    }

    if remaining.degree().unwrap_or(0) >= 1 {
        orbits.push(remaining.monic()?);
    }

    // eager refinement by caller-provided factors
    let mut refined: Vec<Poly1> = Vec::new();
    while let Some(orb) = orbits.pop() {
        let mut split_done = false;
        for h in hints {
            let h = h.rebase(&orb.tower());
            let g = orb.gcd(&h)?;
            let gd = g.degree().unwrap_or(0);
            if gd >= 1 && gd < orb.degree().unwrap() {
                orbits.push(g.clone());
                orbits.push(orb.exact_div(&g)?.monic()?);
                split_done = true;
                break;
            }
        }
        if !split_done {
            refined.push(orb);
        }
    }

    for orb in refined {
        if orb.degree() == Some(1) {
            let x = (-&orb.coeff(0)).try_div(&orb.coeff(1))?;
            roots.push(Root {
                value: x,
                tower: base.clone(),
                multiplicity: 0,
                orbit_degree: 1,
            });
            continue;
        }
        let deg = orb.degree().unwrap();
        let mut levels = base.levels.clone();
        levels.push(Level {
            lower_coeffs: orb.coeffs()[..deg].iter().map(|c| c.rep().clone()).collect(),
        });
        let ext = Arc::new(Tower { levels });
        let value = FieldElement::generator(ext.clone(), ext.levels.len() - 1);
        roots.push(Root {
            value,
            tower: ext,
            multiplicity: 0,
            orbit_degree: deg,
        });
    }

    // multiplicities by repeated division
    for root in &mut roots {
        let pr = p.rebase(&root.tower);
        let lin = Poly1::from_coeffs(vec![-&root.value, FieldElement::one()]);
        let mut cur = pr;
        let mut m = 0usize;
        loop {
            let (q, r) = cur.divrem(&lin)?;
            if r.is_zero() {
                m += 1;
                cur = q;
            } else {
                break;
            }
        }
        root.multiplicity = m;
    }
    Ok(roots)
}
