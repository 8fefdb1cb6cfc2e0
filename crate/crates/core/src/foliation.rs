//! Foliation germs given by polynomial 1-forms and their direct invariants:
//! algebraic multiplicity, invariance of curves, Milnor number, polar curves
//! (of the foliation and of meromorphic differentials), generic polar
//! intersection numbers, tangency order and index, and the multiplicity of a
//! foliation along a separatrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::field::FieldElement;
use crate::algebra::poly2::{Poly2, Var, Vars};
use crate::error::{Error, Result};
use crate::localring::{intersection_number, QuotientDim};

/// The 1-form P dx + Q dy. P and Q are kept coprime as germs: a common
/// factor through the origin is rejected at construction.
#[derive(Clone, Debug)]
pub struct OneForm {
    p: Poly2,
    q: Poly2,
}

impl OneForm {
    pub fn new(p: Poly2, q: Poly2) -> Result<OneForm> {
        if p.is_zero() && q.is_zero() {
            return Err(Error::MalformedOneForm("both coefficients vanish".into()));
        }
        if !p.is_zero() && !q.is_zero() {
            let g = p.gcd(&q)?;
            if g.degree().unwrap_or(0) > 0 && g.eval_origin().try_is_zero()? {
                return Err(Error::MalformedOneForm(
                    "coefficients share a factor through the origin".into(),
                ));
            }
        } else {
            let nz = if p.is_zero() { &q } else { &p };
            if nz.eval_origin().try_is_zero()? && nz.degree().unwrap_or(0) > 0 {
                // e.g. P = 0, Q = y: the "gcd" is Q itself
                if nz.squarefree_part()?.degree().unwrap_or(0) > 0 {
                    return Err(Error::MalformedOneForm(
                        "coefficients share a factor through the origin".into(),
                    ));
                }
            }
        }
        Ok(OneForm { p, q })
    }

    /// Construct without the coprimality validation (used for transforms in
    /// local charts, which stay coprime automatically).
    pub fn raw(p: Poly2, q: Poly2) -> OneForm {
        OneForm { p, q }
    }

    pub fn p(&self) -> &Poly2 {
        &self.p
    }

    pub fn q(&self) -> &Poly2 {
        &self.q
    }

    pub fn vars(&self) -> &Vars {
        if self.p.is_zero() {
            self.q.vars()
        } else {
            self.p.vars()
        }
    }

    /// Hamiltonian form df.
    pub fn hamiltonian(f: &Poly2) -> Result<OneForm> {
        OneForm::new(f.derivative(Var::X), f.derivative(Var::Y))
    }

    pub fn is_singular_at_origin(&self) -> Result<bool> {
        Ok(self.p.eval_origin().try_is_zero()? && self.q.eval_origin().try_is_zero()?)
    }

    /// min(ord P, ord Q).
    pub fn algebraic_multiplicity(&self) -> u32 {
        let op = if self.p.is_zero() {
            None
        } else {
            self.p.order().ok()
        };
        let oq = if self.q.is_zero() {
            None
        } else {
            self.q.order().ok()
        };
        match (op, oq) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("validated nonzero"),
        }
    }

    /// The polynomial v(f) = P f_y - Q f_x cutting out the tangency locus of
    /// the dual vector field with the curve f = 0.
    pub fn tangency_poly(&self, f: &Poly2) -> Poly2 {
        self.p
            .mul(&f.derivative(Var::Y))
            .sub(&self.q.mul(&f.derivative(Var::X)))
    }

    /// Exact divisibility test f | (P f_y - Q f_x).
    pub fn is_invariant(&self, curve: &PlaneCurve) -> Result<bool> {
        let f = curve.poly();
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        f.divides(&self.tangency_poly(f))
    }

    /// Milnor number i(P, Q); infinite means the singularity is not isolated,
    /// which the coprimality invariant rules out for valid forms.
    pub fn milnor(&self) -> Result<u64> {
        match intersection_number(&self.p, &self.q)? {
            QuotientDim::Finite(n) => Ok(n),
            QuotientDim::Infinite => Err(Error::MalformedOneForm(
                "non-isolated singularity: i(P, Q) is infinite".into(),
            )),
        }
    }

    /// The polar curve aP + bQ = 0.
    pub fn polar(&self, a: &FieldElement, b: &FieldElement) -> Result<PolarCurve> {
        if a.is_canonical_zero() && b.is_canonical_zero() {
            return Err(Error::Input("polar parameters (0:0)".into()));
        }
        let num = self.p.scale(a).add(&self.q.scale(b));
        if num.is_zero() {
            return Err(Error::Input("degenerate polar: aP + bQ = 0".into()));
        }
        Ok(PolarCurve {
            numerator: num,
            denominator: None,
        })
    }

    pub fn swap_vars(&self) -> OneForm {
        // in (y, x) order the roles of the coefficients exchange
        OneForm {
            p: self.q.swap_vars(),
            q: self.p.swap_vars(),
        }
    }
}

/// A reduced plane curve f = 0 through the origin; `unit` marks the empty
/// curve cut out by a nonvanishing polynomial (e.g. an empty pole divisor).
#[derive(Clone, Debug)]
pub struct PlaneCurve {
    f: Poly2,
    unit: bool,
}

impl PlaneCurve {
    /// A reduced curve germ: squarefree, vanishing at the origin.
    pub fn reduced(f: Poly2) -> Result<PlaneCurve> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.eval_origin().try_is_zero()? {
            return Err(Error::Input(
                "curve equation does not vanish at the origin".into(),
            ));
        }
        let g = f
            .gcd(&f.derivative(Var::X))?
            .gcd(&f.derivative(Var::Y))?;
        if g.degree().unwrap_or(0) > 0 {
            return Err(Error::NotSquarefree);
        }
        Ok(PlaneCurve { f, unit: false })
    }

    /// The unit curve (empty zero locus near the origin).
    pub fn unit(vars: Vars) -> PlaneCurve {
        PlaneCurve {
            f: Poly2::one(vars),
            unit: true,
        }
    }

    pub fn poly(&self) -> &Poly2 {
        &self.f
    }

    pub fn is_unit(&self) -> bool {
        self.unit
    }

    pub fn multiplicity(&self) -> u32 {
        if self.unit {
            0
        } else {
            self.f.order().expect("reduced curve is nonzero")
        }
    }
}

/// A polar curve: the zero divisor `numerator` minus, for polars of
/// meromorphic differentials, the pole divisor `denominator`.
#[derive(Clone, Debug)]
pub struct PolarCurve {
    pub numerator: Poly2,
    pub denominator: Option<Poly2>,
}

impl PolarCurve {
    /// Intersection with a curve, as a divisor: i(num, h) - i(den, h).
    pub fn intersect(&self, h: &Poly2) -> Result<Option<i64>> {
        let top = match intersection_number(&self.numerator, h)? {
            QuotientDim::Finite(n) => n as i64,
            QuotientDim::Infinite => return Ok(None),
        };
        let bottom = match &self.denominator {
            None => 0,
            Some(d) => match intersection_number(d, h)? {
                QuotientDim::Finite(n) => n as i64,
                QuotientDim::Infinite => return Ok(None),
            },
        };
        Ok(Some(top - bottom))
    }
}

/// Something that has polar curves: a foliation 1-form or a meromorphic
/// differential d(f/g).
#[derive(Clone, Debug)]
pub enum PolarSource {
    Foliation(OneForm),
    /// d(f/g); g may be 1 for a holomorphic differential df.
    Differential { f: Poly2, g: Poly2 },
}

impl PolarSource {
    pub fn differential(f: Poly2, g: Poly2) -> PolarSource {
        PolarSource::Differential { f, g }
    }

    /// Polar with respect to (a : b).
    pub fn polar(&self, a: &FieldElement, b: &FieldElement) -> Result<PolarCurve> {
        match self {
            PolarSource::Foliation(form) => form.polar(a, b),
            PolarSource::Differential { f, g } => {
                let df_dir = f.derivative(Var::X).scale(a).add(&f.derivative(Var::Y).scale(b));
                let g_const = g.degree() == Some(0);
                if g_const {
                    if df_dir.is_zero() {
                        return Err(Error::Input("degenerate polar of a differential".into()));
                    }
                    return Ok(PolarCurve {
                        numerator: df_dir,
                        denominator: None,
                    });
                }
                let dg_dir = g.derivative(Var::X).scale(a).add(&g.derivative(Var::Y).scale(b));
                let num = g.mul(&df_dir).sub(&f.mul(&dg_dir));
                if num.is_zero() {
                    return Err(Error::Input("degenerate polar of a differential".into()));
                }
                Ok(PolarCurve {
                    numerator: num,
                    denominator: Some(g.mul(g)),
                })
            }
        }
    }
}

/// Generic polar intersection i(P^source, B): the minimum over a seeded
/// deterministic sample of parameter directions, kept only once a fresh
/// sample reproduces the current minimum and at least four valid samples
/// were seen. Non-generic directions only increase the value, so a confirmed
/// minimum is the generic one.
pub fn generic_polar_intersection(source: &PolarSource, h: &Poly2, seed: u64) -> Result<i64> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut valid = 0u32;
    let mut attempts = 0u32;
    let mut min: Option<i64> = None;
    let mut confirmed = false;
    while !(confirmed && valid >= 4) {
        attempts += 1;
        if attempts > 200 {
            return match min {
                Some(_) => Err(Error::Inconsistency(
                    "generic polar minimum never confirmed".into(),
                )),
                None => Err(Error::Input(
                    "every sampled polar shares a component with the curve".into(),
                )),
            };
        }
        let a = rng.gen_range(-30i64..=30);
        let b = rng.gen_range(-30i64..=30);
        if a == 0 && b == 0 {
            continue;
        }
        let polar = match source.polar(&FieldElement::from_int(a), &FieldElement::from_int(b)) {
            Ok(p) => p,
            Err(Error::Input(_)) => continue,
            Err(e) => return Err(e),
        };
        let value = match polar.intersect(h)? {
            None => continue,
            Some(v) => v,
        };
        valid += 1;
        match min {
            None => min = Some(value),
            Some(m) if value < m => {
                min = Some(value);
                confirmed = false;
            }
            Some(m) if value == m => confirmed = true,
            _ => {}
        }
    }
    Ok(min.unwrap())
}

/// Tangency order of a non-invariant irreducible curve: i(f, P f_y - Q f_x).
pub fn tangency_order(form: &OneForm, curve: &PlaneCurve) -> Result<u64> {
    if form.is_invariant(curve)? {
        return Err(Error::Invariant);
    }
    let t = form.tangency_poly(curve.poly());
    match intersection_number(curve.poly(), &t)? {
        QuotientDim::Finite(n) => Ok(n),
        QuotientDim::Infinite => Err(Error::Inconsistency(
            "tangency locus shares a component with a non-invariant curve".into(),
        )),
    }
}

/// Tangency index of a smooth branch: after a linear change sending the
/// branch tangent to {y = 0}, the intersection of the dy-coefficient with
/// the branch.
pub fn tangency_index(form: &OneForm, curve: &PlaneCurve) -> Result<u64> {
    let f = curve.poly();
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.order()? != 1 {
        return Err(Error::NotSmooth);
    }
    let init = f.initial_form()?;
    let alpha = init.coeff(1, 0); // coefficient of x
    let beta = init.coeff(0, 1); // coefficient of y
    if alpha.is_canonical_zero() {
        // tangent already {y = 0}
        return finite_ind(&form.q, f);
    }
    if beta.is_canonical_zero() {
        // tangent {x = 0}: swap the chart
        let sw = form.swap_vars();
        return finite_ind(&sw.q, &f.swap_vars());
    }
    // shear y_new = alpha x + beta y, i.e. y = (y_new - alpha x)/beta
    let a = alpha.as_rat().ok_or_else(|| {
        Error::Input("tangency index over extensions of the tangent direction unsupported".into())
    })?;
    let b = beta.as_rat().unwrap();
    let m = [
        [crate::algebra::Rat::from_integer(1.into()), crate::algebra::Rat::from_integer(0.into())],
        [-(a / b), (crate::algebra::Rat::from_integer(1.into()) / b)],
    ];
    let fq = form.q.linear_change(&m)?;
    let fnew = f.linear_change(&m)?;
    finite_ind(&fq, &fnew)
}

fn finite_ind(q: &Poly2, f: &Poly2) -> Result<u64> {
    match intersection_number(q, f)? {
        QuotientDim::Finite(n) => Ok(n),
        QuotientDim::Infinite => Err(Error::Inconsistency(
            "dy-coefficient vanishes along the branch".into(),
        )),
    }
}

/// Multiplicity of the source along an invariant branch, computed through
/// the generic polar: i(P^source, B) - ord(B) + 1.
pub fn multiplicity_along(source: &PolarSource, branch: &PlaneCurve, seed: u64) -> Result<i64> {
    if branch.is_unit() {
        return Err(Error::Input("multiplicity along a unit curve".into()));
    }
    match source {
        PolarSource::Foliation(form) => {
            if !form.is_invariant(branch)? {
                return Err(Error::NotInvariant);
            }
        }
        PolarSource::Differential { f, .. } => {
            if !branch.poly().divides(f)? {
                return Err(Error::NotAdapted);
            }
        }
    }
    let polar_int = generic_polar_intersection(source, branch.poly(), seed)?;
    Ok(polar_int - branch.multiplicity() as i64 + 1)
}
