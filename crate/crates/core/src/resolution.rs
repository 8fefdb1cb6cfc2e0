//! Blow-up engine and Seidenberg reduction of foliation singularities.
//!
//! The reduction tree records one node per infinitely near point that the
//! process examines (the root, every singular point on each new exceptional
//! component, and tangency points on dicritical components), together with
//! per-node local 1-form transforms, the exceptional components through each
//! point, singularity classes, and Galois-orbit weights. Points at
//! non-rational divisor positions are kept as unsplit orbits over a field
//! extension; dynamic evaluation refines an orbit in place whenever some
//! zero test actually distinguishes its conjugates.
//!
//! Component multiplicities nu(D) are curvette multiplicities: the
//! multiplicity at the origin of a smooth curve whose strict transform meets
//! D transversally off corners, computed by the backward proximity
//! recursion along the chain of centers.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::field::{split_tower, FieldElement, Rat, Tower};
use crate::algebra::poly1::Poly1;
use crate::algebra::poly2::{Poly2, Var, Vars};
use crate::algebra::roots::split_extension;
use crate::error::{Error, Result};
use crate::foliation::OneForm;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct NodeId(pub usize);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
pub struct CompId(pub usize);

/// Which local coordinate axis a divisor component occupies at a node.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Axis {
    /// the component is {first variable = 0}
    XZero,
    /// the component is {second variable = 0}
    YZero,
}

#[derive(Clone, Debug)]
pub struct DivisorComponent {
    pub id: CompId,
    pub created_at: NodeId,
    pub dicritical: bool,
    /// Curvette multiplicity nu(D) relative to the root.
    pub multiplicity: u64,
    /// Components meeting this one in the final surface.
    pub adjacent: Vec<CompId>,
}

impl DivisorComponent {
    pub fn valence(&self) -> u32 {
        self.adjacent.len() as u32
    }
}

/// Exact eigenvalue analysis of the linear part of the dual vector field.
#[derive(Clone, Debug)]
pub enum SingularityClass {
    /// The form does not vanish at the point.
    Regular,
    /// Nonzero eigenvalues with ratio outside the positive rationals. The
    /// ratio is recorded exactly when it lies in the coefficient field.
    NonDegenerate { ratio: Option<Rat> },
    /// Exactly one zero eigenvalue.
    SaddleNode {
        weak_dir: (FieldElement, FieldElement),
        strong_dir: (FieldElement, FieldElement),
        /// The divisor component containing the weak separatrix, when the
        /// saddle-node is tangent.
        weak_component: Option<CompId>,
        /// Tangency index along the weak separatrix when it is a local axis.
        ind_weak: Option<u64>,
    },
    /// Not reduced: zero or nilpotent linear part, or nonzero eigenvalues
    /// with ratio a positive rational.
    NonReduced { resonant: bool },
}

impl SingularityClass {
    pub fn is_reduced(&self) -> bool {
        matches!(
            self,
            SingularityClass::NonDegenerate { .. } | SingularityClass::SaddleNode { .. }
        )
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            SingularityClass::Regular => "regular",
            SingularityClass::NonDegenerate { .. } => "non-degenerate",
            SingularityClass::SaddleNode { .. } => "saddle-node",
            SingularityClass::NonReduced { .. } => "non-reduced",
        }
    }
}

/// How a node was reached from its parent chart.
#[derive(Clone, Debug)]
pub enum BirthChart {
    Root,
    /// Chart x = x', y = x'(t' + t0): the divisor direction t = t0.
    Dir { t0: FieldElement },
    /// The origin of the complementary chart (direction t = infinity),
    /// normalized so the new divisor is the first-variable axis.
    Infinity,
}

#[derive(Clone, Debug)]
pub struct InfNearPoint {
    pub id: NodeId,
    pub parent: Option<NodeId>,
    pub depth: usize,
    pub tower: Arc<Tower>,
    /// Number of conjugate points this node stands for.
    pub orbit_weight: u64,
    /// Local transform of the foliation in this chart.
    pub form: OneForm,
    pub birth: BirthChart,
    pub incident: Vec<(CompId, Axis)>,
    pub class: SingularityClass,
    /// Algebraic multiplicity of the local form (0 at regular points).
    pub nu: u32,
    pub children: Vec<NodeId>,
    /// Set when the point was blown up.
    pub blowup: Option<BlowupInfo>,
}

#[derive(Clone, Debug)]
pub struct BlowupInfo {
    pub dicritical: bool,
    pub comp: CompId,
}

impl InfNearPoint {
    pub fn is_leaf(&self) -> bool {
        self.blowup.is_none()
    }

    pub fn comp_on_axis(&self, axis: Axis) -> Option<CompId> {
        self.incident
            .iter()
            .find(|(_, a)| *a == axis)
            .map(|(c, _)| *c)
    }
}

#[derive(Clone, Debug)]
pub struct ReductionTree {
    pub nodes: Vec<InfNearPoint>,
    pub comps: Vec<DivisorComponent>,
    pub depth: usize,
    root_form: OneForm,
}

#[derive(Clone, Debug)]
pub struct ReduceOptions {
    pub max_depth: usize,
    /// Monic rational polynomials used to split root orbits eagerly.
    pub split_hints: Vec<Poly1>,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions {
            max_depth: 64,
            split_hints: vec![],
        }
    }
}

/// Which chart of a blow-up to return.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Chart {
    /// y = t x (directions at finite slope)
    Direction,
    /// x = s y, normalized so the divisor is the first axis
    Infinity,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChiMode {
    Literal,
    Polar,
}

// ---- certified helpers ---------------------------------------------------

fn certified_order1(p: &Poly1) -> Result<Option<usize>> {
    for (i, c) in p.coeffs().iter().enumerate() {
        if !c.try_is_zero()? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

fn certified_order2(f: &Poly2) -> Result<Option<u32>> {
    Ok(f.try_order()?)
}

fn certified_multiplicity(form: &OneForm) -> Result<Option<u32>> {
    let op = certified_order2(form.p())?;
    let oq = certified_order2(form.q())?;
    Ok(match (op, oq) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    })
}

fn homogeneous_part(f: &Poly2, d: u32) -> Poly2 {
    let mut out = Poly2::zero(f.vars().clone());
    for (&(i, j), c) in f.terms() {
        if i + j == d {
            out = out.add(&Poly2::monomial(f.vars().clone(), c.clone(), i, j));
        }
    }
    out
}

// ---- blow-up chart transforms --------------------------------------------

fn dir_vars(depth: usize) -> Vars {
    Vars::named(&format!("x{depth}"), &format!("t{depth}"))
}

fn inf_vars(depth: usize) -> Vars {
    Vars::named(&format!("u{depth}"), &format!("s{depth}"))
}

/// Transform in the direction chart x = x', y = x'(t' + t0), divided by
/// x'^k.
fn chart_dir(form: &OneForm, k: u32, vars: Vars, t0: &FieldElement) -> Result<OneForm> {
    let x = Poly2::var(vars.clone(), Var::X);
    let t_shift = Poly2::var(vars.clone(), Var::Y).add(&Poly2::constant(vars.clone(), t0.clone()));
    let y_sub = x.mul(&t_shift);
    let ph = form.p().substitute(&x, &y_sub);
    let qh = form.q().substitute(&x, &y_sub);
    let new_p = ph.add(&t_shift.mul(&qh)).shift_down(Var::X, k)?;
    let new_q = x.mul(&qh).shift_down(Var::X, k)?;
    Ok(OneForm::raw(new_p, new_q))
}

/// Transform at the infinity point, in coordinates (a, b) with x = a b,
/// y = a (so the new divisor is {a = 0}), divided by a^k.
fn chart_inf(form: &OneForm, k: u32, vars: Vars) -> Result<OneForm> {
    let a = Poly2::var(vars.clone(), Var::X);
    let b = Poly2::var(vars.clone(), Var::Y);
    let x_sub = a.mul(&b);
    let ph = form.p().substitute(&x_sub, &a);
    let qh = form.q().substitute(&x_sub, &a);
    let new_p = b.mul(&ph).add(&qh).shift_down(Var::X, k)?;
    let new_q = a.mul(&ph).shift_down(Var::X, k)?;
    Ok(OneForm::raw(new_p, new_q))
}

/// Whether the blow-up at the (singular) origin is dicritical, i.e. the
/// radial combination of the initial forms vanishes identically.
pub fn is_dicritical_blowup(form: &OneForm) -> Result<bool> {
    let nu = certified_multiplicity(form)?
        .ok_or_else(|| Error::MalformedOneForm("zero form".into()))?;
    let vars = form.vars().clone();
    let pn = homogeneous_part(form.p(), nu);
    let qn = homogeneous_part(form.q(), nu);
    let comb = Poly2::var(vars.clone(), Var::X)
        .mul(&pn)
        .add(&Poly2::var(vars, Var::Y).mul(&qn));
    Ok(certified_order2(&comb)?.is_none())
}

/// One chart of the blow-up of a singular point: the strict transform and
/// the dicritical flag.
pub fn blowup(form: &OneForm, chart: Chart) -> Result<(OneForm, bool)> {
    if !form.is_singular_at_origin()? {
        return Err(Error::Input("blow-up of a regular point".into()));
    }
    let nu = certified_multiplicity(form)?.unwrap_or(0);
    let dic = is_dicritical_blowup(form)?;
    let k = if dic { nu + 1 } else { nu };
    let out = match chart {
        Chart::Direction => chart_dir(form, k, dir_vars(1), &FieldElement::zero())?,
        Chart::Infinity => chart_inf(form, k, inf_vars(1))?,
    };
    Ok((out, dic))
}

// ---- classification -------------------------------------------------------

/// Exact eigenvalue classification of the singular point at the local
/// origin, with tangent-saddle-node detection against the incident divisor
/// components.
fn classify_at(
    form: &OneForm,
    incident: &[(CompId, Axis)],
    comps: &[DivisorComponent],
) -> Result<SingularityClass> {
    if !form.is_singular_at_origin()? {
        return Ok(SingularityClass::Regular);
    }
    // linear part of the dual field (-Q, P)
    let m00 = -form.q().coeff(1, 0);
    let m01 = -form.q().coeff(0, 1);
    let m10 = form.p().coeff(1, 0);
    let m11 = form.p().coeff(0, 1);
    let tr = &m00 + &m11;
    let det = &(&m00 * &m11) - &(&m01 * &m10);
    if !det.try_is_zero()? {
        let sigma = (&tr * &tr).try_div(&det)?;
        // the eigenvalue ratio r satisfies r + 1/r = sigma - 2; it is a
        // positive rational iff sigma is rational, sigma > 2... precisely:
        // sigma - 2 > 0 and (sigma-2)^2 - 4 is a rational square
        let two = Rat::from_integer(2.into());
        let four = Rat::from_integer(4.into());
        match sigma.as_rat() {
            Some(s) => {
                let sm2 = s - &two;
                let disc = &sm2 * &sm2 - &four;
                let sqrt = FieldElement::from_rat(disc.clone()).rational_square_root();
                let positive = sm2 > Rat::from_integer(0.into());
                match (positive, sqrt) {
                    (true, Some(_)) => Ok(SingularityClass::NonReduced { resonant: true }),
                    (_, Some(c)) => Ok(SingularityClass::NonDegenerate {
                        ratio: Some((&sm2 + &c) / &two),
                    }),
                    (_, None) => Ok(SingularityClass::NonDegenerate { ratio: None }),
                }
            }
            None => Ok(SingularityClass::NonDegenerate { ratio: None }),
        }
    } else if !tr.try_is_zero()? {
        // saddle-node: weak direction spans ker M, strong spans ker(M - tr)
        let weak = kernel2(&m00, &m01, &m10, &m11)?;
        let strong = kernel2(&(&m00 - &tr), &m01, &m10, &(&m11 - &tr))?;
        let weak_axis = axis_of_direction(&weak)?;
        let mut weak_component = None;
        let mut ind_weak = None;
        if let Some(axis) = weak_axis {
            // the axis curve is the weak separatrix when it is invariant
            let invariant = match axis {
                // {y = 0} invariant iff y | P
                Axis::YZero => certified_order1(&form.p().restrict_to_axis(Var::X))?.is_none(),
                // {x = 0} invariant iff x | Q
                Axis::XZero => certified_order1(&form.q().restrict_to_axis(Var::Y))?.is_none(),
            };
            if invariant {
                ind_weak = Some(match axis {
                    Axis::YZero => certified_order1(&form.q().restrict_to_axis(Var::X))?
                        .ok_or_else(|| {
                            Error::Inconsistency("dy-coefficient vanishes on the weak axis".into())
                        })? as u64,
                    Axis::XZero => certified_order1(&form.p().restrict_to_axis(Var::Y))?
                        .ok_or_else(|| {
                            Error::Inconsistency("dx-coefficient vanishes on the weak axis".into())
                        })? as u64,
                });
                weak_component = incident
                    .iter()
                    .find(|(c, a)| *a == axis && !comps[c.0].dicritical)
                    .map(|(c, _)| *c);
            }
        }
        Ok(SingularityClass::SaddleNode {
            weak_dir: weak,
            strong_dir: strong,
            weak_component,
            ind_weak,
        })
    } else {
        Ok(SingularityClass::NonReduced { resonant: false })
    }
}

/// Classification of an isolated germ (no divisor data).
pub fn classify(form: &OneForm) -> Result<SingularityClass> {
    classify_at(form, &[], &[])
}

/// Nonzero kernel vector of a singular 2x2 matrix.
fn kernel2(
    m00: &FieldElement,
    m01: &FieldElement,
    m10: &FieldElement,
    m11: &FieldElement,
) -> Result<(FieldElement, FieldElement)> {
    if !m00.try_is_zero()? || !m01.try_is_zero()? {
        Ok((-m01, m00.clone()))
    } else if !m10.try_is_zero()? || !m11.try_is_zero()? {
        Ok((-m11, m10.clone()))
    } else {
        // zero matrix: every direction works
        Ok((FieldElement::one(), FieldElement::zero()))
    }
}

/// Whether a direction is along a coordinate axis: (1,0) lies on {y=0},
/// (0,1) on {x=0}.
fn axis_of_direction(v: &(FieldElement, FieldElement)) -> Result<Option<Axis>> {
    let x_zero = v.0.try_is_zero()?;
    let y_zero = v.1.try_is_zero()?;
    Ok(match (x_zero, y_zero) {
        (false, true) => Some(Axis::YZero),
        (true, false) => Some(Axis::XZero),
        _ => None,
    })
}

// ---- the reduction loop ----------------------------------------------------

struct ChildPlan {
    tower: Arc<Tower>,
    birth: BirthChart,
    form: OneForm,
    incident: Vec<(CompId, Axis)>,
}

impl ReductionTree {
    pub fn root(&self) -> &InfNearPoint {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> &InfNearPoint {
        &self.nodes[id.0]
    }

    pub fn comp(&self, id: CompId) -> &DivisorComponent {
        &self.comps[id.0]
    }

    pub fn root_form(&self) -> &OneForm {
        &self.root_form
    }

    /// Ids of every infinitely near point, in creation order.
    pub fn infinitely_near_points(&self) -> Vec<NodeId> {
        self.nodes.iter().map(|n| n.id).collect()
    }

    pub fn tangent_saddle_nodes(&self) -> Vec<NodeId> {
        self.nodes
            .iter()
            .filter(|n| {
                matches!(
                    n.class,
                    SingularityClass::SaddleNode {
                        weak_component: Some(_),
                        ..
                    }
                )
            })
            .map(|n| n.id)
            .collect()
    }

    pub fn has_dicritical_component(&self) -> bool {
        self.comps.iter().any(|c| c.dicritical)
    }

    /// No tangent saddle-nodes anywhere in the reduction.
    pub fn is_second_type(&self) -> bool {
        self.tangent_saddle_nodes().is_empty()
    }

    /// No saddle-nodes at all (tangent or not, including a reduced root).
    pub fn is_generalized_curve(&self) -> bool {
        !self
            .nodes
            .iter()
            .any(|n| matches!(n.class, SingularityClass::SaddleNode { .. }))
    }

    fn path_from(&self, from: NodeId, to: NodeId) -> Vec<NodeId> {
        let mut path = vec![to];
        let mut cur = to;
        while cur != from {
            match self.node(cur).parent {
                Some(p) => {
                    cur = p;
                    path.push(cur);
                }
                // a parentless node other than `from` is a branch root
                // created by splitting the origin's field: same germ,
                // refined scalars, so the chain ends here
                None => break,
            }
        }
        path.reverse();
        path
    }

    fn is_ancestor_or_self(&self, anc: NodeId, mut node: NodeId) -> bool {
        loop {
            if node == anc {
                return true;
            }
            match self.node(node).parent {
                Some(p) => node = p,
                None => return false,
            }
        }
    }

    /// Curvette multiplicity of a component relative to `base`: backward
    /// proximity recursion along the chain of centers from `base` to the
    /// creation point.
    pub fn curvette_multiplicity_from(&self, base: NodeId, comp: CompId) -> u64 {
        let created = self.comp(comp).created_at;
        let path = self.path_from(base, created);
        let mut mult = vec![0u64; path.len()];
        *mult.last_mut().unwrap() = 1;
        for s in (0..path.len() - 1).rev() {
            let comp_s = self
                .node(path[s])
                .blowup
                .as_ref()
                .expect("interior path nodes were blown up")
                .comp;
            let mut m = 0;
            for (r, &rid) in path.iter().enumerate().skip(s + 1) {
                let proximate = self
                    .node(rid)
                    .incident
                    .iter()
                    .any(|(c, _)| *c == comp_s);
                if proximate {
                    m += mult[r];
                }
            }
            mult[s] = m;
        }
        mult[0]
    }

    /// Tangency excess of the transform at `at`: the weighted count of
    /// tangent saddle-nodes above `at`, with curvette multiplicities taken
    /// relative to `at`. Zero at reduced points.
    ///
    /// The conjugate count of a descendant relative to `at` is a ratio of
    /// orbit weights; it is accumulated exactly since a split below `at`'s
    /// levels can make individual ratios fractional (their total over the
    /// split clones is integral).
    pub fn tangency_excess(&self, at: NodeId) -> u64 {
        use num_bigint::BigInt;
        let base = self.node(at);
        if base.is_leaf() {
            return 0;
        }
        let mut sum = Rat::from_integer(0.into());
        for n in &self.nodes {
            if n.id == at || !self.is_ancestor_or_self(at, n.id) {
                continue;
            }
            if let SingularityClass::SaddleNode {
                weak_component: Some(w),
                ind_weak: Some(ind),
                ..
            } = &n.class
            {
                // only components exceptional for the germ at `at` count
                if !self.is_ancestor_or_self(at, self.comp(*w).created_at) {
                    continue;
                }
                let nu_rel = self.curvette_multiplicity_from(at, *w);
                let conjugates = Rat::new(
                    BigInt::from(n.orbit_weight),
                    BigInt::from(base.orbit_weight),
                );
                sum += conjugates * Rat::from_integer(BigInt::from(nu_rel * (ind - 1)));
            }
        }
        assert!(sum.is_integer(), "tangency excess must total an integer");
        let total: BigInt = sum.to_integer();
        u64::try_from(total).expect("tangency excess fits in u64")
    }

    /// Per-node multiplicities of the strict transform of a curve given at
    /// the root; 0 where the curve misses the point.
    pub fn transported_multiplicities(&self, f: &Poly2) -> Result<Vec<u64>> {
        let strict = self.transport_curve(f)?;
        Ok(strict
            .iter()
            .map(|s| match s {
                Some(p) => p.order().unwrap_or(0) as u64,
                None => 0,
            })
            .collect())
    }

    /// Strict transforms of a root curve at every node it passes through.
    pub fn transport_curve(&self, f: &Poly2) -> Result<Vec<Option<Poly2>>> {
        let mut out: Vec<Option<Poly2>> = vec![None; self.nodes.len()];
        for idx in 0..self.nodes.len() {
            let node = &self.nodes[idx];
            let local = match &node.birth {
                BirthChart::Root => {
                    let g = f.rename(node.form.vars().clone());
                    Some(g)
                }
                birth => {
                    let parent = node.parent.unwrap();
                    match &out[parent.0] {
                        None => None,
                        Some(pf) => {
                            let pf = pf.rebase(&node.tower);
                            let m = pf.try_order()?.expect("strict transforms are nonzero");
                            let vars = node.form.vars().clone();
                            let sub = match birth {
                                BirthChart::Dir { t0 } => {
                                    let x = Poly2::var(vars.clone(), Var::X);
                                    let t_shift = Poly2::var(vars.clone(), Var::Y)
                                        .add(&Poly2::constant(vars.clone(), t0.clone()));
                                    pf.substitute(&x, &x.mul(&t_shift))
                                }
                                BirthChart::Infinity => {
                                    let a = Poly2::var(vars.clone(), Var::X);
                                    let b = Poly2::var(vars.clone(), Var::Y);
                                    pf.substitute(&a.mul(&b), &a)
                                }
                                BirthChart::Root => unreachable!(),
                            };
                            Some(sub.shift_down(Var::X, m)?)
                        }
                    }
                }
            };
            out[idx] = match local {
                None => None,
                Some(g) => {
                    if g.eval_origin().try_is_zero()? {
                        Some(g)
                    } else {
                        None
                    }
                }
            };
        }
        Ok(out)
    }

    /// Sampled per-node multiplicities of a generic polar's strict
    /// transform: the componentwise minimum over a seeded sample, confirmed
    /// by a fresh sample, at least four samples.
    pub fn generic_polar_multiplicities(&self, seed: u64) -> Result<Vec<u64>> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x706f6c61);
        let mut min: Option<Vec<u64>> = None;
        let mut confirmed = false;
        let mut valid = 0u32;
        let mut attempts = 0u32;
        while !(confirmed && valid >= 4) {
            attempts += 1;
            if attempts > 200 {
                return Err(Error::Inconsistency(
                    "generic polar multiplicity vector never stabilized".into(),
                ));
            }
            let a = rng.gen_range(-30i64..=30);
            let b = rng.gen_range(-30i64..=30);
            if a == 0 && b == 0 {
                continue;
            }
            let polar = self
                .root_form
                .p()
                .scale(&FieldElement::from_int(a))
                .add(&self.root_form.q().scale(&FieldElement::from_int(b)));
            if polar.is_zero() {
                continue;
            }
            let vec = self.transported_multiplicities(&polar)?;
            valid += 1;
            match &mut min {
                None => min = Some(vec),
                Some(cur) => {
                    if vec == *cur {
                        confirmed = true;
                    } else {
                        let mut changed = false;
                        for (c, v) in cur.iter_mut().zip(vec) {
                            if v < *c {
                                *c = v;
                                changed = true;
                            }
                        }
                        if changed {
                            confirmed = false;
                        }
                    }
                }
            }
        }
        Ok(min.unwrap())
    }

    /// The chi-number: the weighted sum over infinitely near points of
    /// nu_q * xi_q minus the tangency excess at the root, with nu_q read
    /// from the foliation transform (literal mode) or from the strict
    /// transform of a generic polar (polar mode).
    pub fn chi_number(&self, mode: ChiMode, seed: u64) -> Result<u64> {
        let nus: Vec<u64> = match mode {
            ChiMode::Literal => self.nodes.iter().map(|n| n.nu as u64).collect(),
            ChiMode::Polar => self.generic_polar_multiplicities(seed)?,
        };
        let mut total: i64 = 0;
        for (n, nu) in self.nodes.iter().zip(&nus) {
            if n.is_leaf() {
                continue;
            }
            let xi = self.tangency_excess(n.id);
            total += (n.orbit_weight * nu * xi) as i64;
        }
        total -= self.tangency_excess(NodeId(0)) as i64;
        if total < 0 {
            return Err(Error::Inconsistency("negative chi-number".into()));
        }
        Ok(total as u64)
    }

    /// Sum over infinitely near points of nu_q(B) * xi_q(F) for a curve
    /// given at the root (weighted over orbits).
    pub fn weighted_xi_against(&self, multiplicities: &[u64]) -> u64 {
        let mut sum = 0u64;
        for (n, &m) in self.nodes.iter().zip(multiplicities) {
            if n.is_leaf() || m == 0 {
                continue;
            }
            sum += n.orbit_weight * m * self.tangency_excess(n.id);
        }
        sum
    }
}

/// Seidenberg reduction of singularities of the foliation germ.
pub fn reduce(form: &OneForm, opts: &ReduceOptions) -> Result<ReductionTree> {
    let root = InfNearPoint {
        id: NodeId(0),
        parent: None,
        depth: 0,
        tower: form.p().tower(),
        orbit_weight: 1,
        form: form.clone(),
        birth: BirthChart::Root,
        incident: vec![],
        class: SingularityClass::Regular, // placeholder, set on processing
        nu: 0,
        children: vec![],
        blowup: None,
    };
    let mut tree = ReductionTree {
        nodes: vec![root],
        comps: vec![],
        depth: 0,
        root_form: form.clone(),
    };
    let mut stack = vec![NodeId(0)];
    while let Some(nid) = stack.pop() {
        match process_node(&mut tree, nid, opts) {
            Ok(children) => stack.extend(children),
            Err(Error::MaxDepthExceeded(limit)) => {
                return Err(Error::MaxDepthWithPartial {
                    limit,
                    partial: Box::new(tree),
                })
            }
            Err(Error::Split(req)) => {
                let (ta, tb) = split_tower(&tree.nodes[nid.0].tower, &req);
                let clone_id = NodeId(tree.nodes.len());
                let mut clone = tree.nodes[nid.0].clone();
                clone.id = clone_id;
                rebase_node(&mut clone, &tb);
                rebase_node(&mut tree.nodes[nid.0], &ta);
                if let Some(p) = clone.parent {
                    tree.nodes[p.0].children.push(clone_id);
                }
                tree.nodes.push(clone);
                stack.push(nid);
                stack.push(clone_id);
            }
            Err(e) => return Err(e),
        }
    }
    Ok(tree)
}

fn rebase_node(node: &mut InfNearPoint, tower: &Arc<Tower>) {
    node.tower = tower.clone();
    node.orbit_weight = tower.orbit_weight();
    node.form = OneForm::raw(node.form.p().rebase(tower), node.form.q().rebase(tower));
    if let BirthChart::Dir { t0 } = &node.birth {
        node.birth = BirthChart::Dir {
            t0: t0.rebase(tower),
        };
    }
}

/// Classify one node and, when it is not in final position, blow it up and
/// plan its children. All fallible (splittable) work happens before the tree
/// is mutated.
fn process_node(tree: &mut ReductionTree, nid: NodeId, opts: &ReduceOptions) -> Result<Vec<NodeId>> {
    let node = tree.nodes[nid.0].clone();
    let class = classify_at(&node.form, &node.incident, &tree.comps)?;
    let nu = certified_multiplicity(&node.form)?.unwrap_or(0);
    let on_dicritical = node
        .incident
        .iter()
        .any(|(c, _)| tree.comps[c.0].dicritical);
    let needs_blowup = match &class {
        SingularityClass::Regular => {
            // tangency with an incident dicritical component
            let mut tangent = false;
            for (c, axis) in &node.incident {
                if !tree.comps[c.0].dicritical {
                    continue;
                }
                let coeff_at_origin = match axis {
                    Axis::XZero => node.form.q().eval_origin(),
                    Axis::YZero => node.form.p().eval_origin(),
                };
                if coeff_at_origin.try_is_zero()? {
                    tangent = true;
                }
            }
            tangent
        }
        SingularityClass::NonReduced { .. } => true,
        _ => on_dicritical,
    };

    if !needs_blowup {
        let n = &mut tree.nodes[nid.0];
        n.class = class;
        n.nu = if matches!(n.class, SingularityClass::Regular) {
            0
        } else {
            nu
        };
        return Ok(vec![]);
    }

    if node.depth + 1 > opts.max_depth {
        return Err(Error::MaxDepthExceeded(opts.max_depth));
    }

    // ---- plan the blow-up (no tree mutation yet) ----
    let dicritical = is_dicritical_blowup(&node.form)?;
    let k = if dicritical { nu + 1 } else { nu };
    let child_depth = node.depth + 1;
    let new_comp = CompId(tree.comps.len());

    let dvars = dir_vars(child_depth);
    let master = chart_dir(&node.form, k, dvars.clone(), &FieldElement::zero())?;
    let a_poly = master.p().restrict_to_axis(Var::Y);
    let b_poly = master.q().restrict_to_axis(Var::Y);
    // points to process on the new component in this chart
    let locator = if dicritical {
        // singularities and tangencies both make the db-coefficient vanish
        b_poly.clone()
    } else {
        a_poly.gcd(&b_poly)?
    };
    let mut plans: Vec<ChildPlan> = Vec::new();
    if locator.is_zero() {
        return Err(Error::Inconsistency(
            "every point of the new component is singular".into(),
        ));
    }
    if locator.degree().unwrap_or(0) >= 1 {
        for root in split_extension(&locator, &opts.split_hints)? {
            let t0 = root.value;
            let child_tower = root.tower;
            let form_base = OneForm::raw(
                node.form.p().rebase(&child_tower),
                node.form.q().rebase(&child_tower),
            );
            let child_form = chart_dir(&form_base, k, dvars.clone(), &t0)?;
            let mut incident = vec![(new_comp, Axis::XZero)];
            if t0.try_is_zero()? {
                if let Some(c) = node.comp_on_axis(Axis::YZero) {
                    incident.push((c, Axis::YZero));
                }
            }
            plans.push(ChildPlan {
                tower: child_tower,
                birth: BirthChart::Dir { t0 },
                form: child_form,
                incident,
            });
        }
    }
    // the infinity point of the new component
    let ivars = inf_vars(child_depth);
    let inf_form = chart_inf(&node.form, k, ivars)?;
    let inf_q0_zero = inf_form.q().eval_origin().try_is_zero()?;
    let inf_p0_zero = inf_form.p().eval_origin().try_is_zero()?;
    if inf_q0_zero && (inf_p0_zero || dicritical) {
        let mut incident = vec![(new_comp, Axis::XZero)];
        if let Some(c) = node.comp_on_axis(Axis::XZero) {
            incident.push((c, Axis::YZero));
        }
        plans.push(ChildPlan {
            tower: node.tower.clone(),
            birth: BirthChart::Infinity,
            form: inf_form,
            incident,
        });
    }

    // ---- commit ----
    let comp_mult = {
        // curvette multiplicity: path from the root to this node, seeded at
        // this node with 1 (the new component's creation point)
        let path = tree.path_from(NodeId(0), nid);
        let mut mult = vec![0u64; path.len()];
        *mult.last_mut().unwrap() = 1;
        for s in (0..path.len().saturating_sub(1)).rev() {
            let comp_s = tree.nodes[path[s].0]
                .blowup
                .as_ref()
                .expect("interior nodes were blown up")
                .comp;
            let mut m = 0;
            for (r, &rid) in path.iter().enumerate().skip(s + 1) {
                if tree.nodes[rid.0].incident.iter().any(|(c, _)| *c == comp_s) {
                    m += mult[r];
                }
            }
            mult[s] = m;
        }
        mult[0]
    };
    tree.comps.push(DivisorComponent {
        id: new_comp,
        created_at: nid,
        dicritical,
        multiplicity: comp_mult,
        adjacent: vec![],
    });
    // adjacency: the new component meets everything through this point;
    // blowing up a corner separates the two old components
    let incident_comps: Vec<CompId> = node.incident.iter().map(|(c, _)| *c).collect();
    for c in &incident_comps {
        tree.comps[c.0].adjacent.push(new_comp);
        tree.comps[new_comp.0].adjacent.push(*c);
    }
    if incident_comps.len() == 2 {
        let (a, b) = (incident_comps[0], incident_comps[1]);
        tree.comps[a.0].adjacent.retain(|c| *c != b);
        tree.comps[b.0].adjacent.retain(|c| *c != a);
    }

    let mut child_ids = Vec::new();
    for plan in plans {
        let cid = NodeId(tree.nodes.len());
        let weight = plan.tower.orbit_weight();
        tree.nodes.push(InfNearPoint {
            id: cid,
            parent: Some(nid),
            depth: child_depth,
            tower: plan.tower,
            orbit_weight: weight,
            form: plan.form,
            birth: plan.birth,
            incident: plan.incident,
            class: SingularityClass::Regular,
            nu: 0,
            children: vec![],
            blowup: None,
        });
        child_ids.push(cid);
    }
    let n = &mut tree.nodes[nid.0];
    n.class = class;
    n.nu = nu;
    n.children = child_ids.clone();
    n.blowup = Some(BlowupInfo {
        dicritical,
        comp: new_comp,
    });
    tree.depth = tree.depth.max(child_depth);
    Ok(child_ids)
}

// ---- branch walking --------------------------------------------------------

/// Certify that a curve germ is irreducible by resolving it: at every step
/// the strict transform must keep a single tangent direction of orbit
/// weight one, until it becomes smooth.
pub fn certify_irreducible(f: &Poly2) -> Result<()> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.eval_origin().try_is_zero()? {
        return Err(Error::Input("curve does not pass through the origin".into()));
    }
    let mut cur = f.clone();
    for _ in 0..64 {
        let ord = cur
            .try_order()?
            .ok_or_else(|| Error::Inconsistency("strict transform vanished".into()))?;
        if ord == 1 {
            return Ok(());
        }
        let inf = homogeneous_part(&cur, ord);
        // directions: roots of in(1, t), plus t = infinity when x divides in
        let phi = {
            let vars = cur.vars().clone();
            let one = Poly2::one(vars.clone());
            let t = Poly2::var(vars.clone(), Var::Y);
            inf.substitute(&one, &t).restrict_to_axis(Var::Y)
        };
        let phi_deg = certified_order1(&phi)?
            .map(|_| phi.degree().unwrap_or(0))
            .unwrap_or(0);
        let has_infinity = phi_deg < ord as usize;
        if has_infinity && phi_deg > 0 {
            return Err(Error::Reducible(
                "tangent cone has several directions".into(),
            ));
        }
        if has_infinity {
            // single direction at infinity
            let vars = inf_vars(1);
            let a = Poly2::var(vars.clone(), Var::X);
            let b = Poly2::var(vars.clone(), Var::Y);
            cur = cur.substitute(&a.mul(&b), &a).shift_down(Var::X, ord)?;
            continue;
        }
        let sf = phi.squarefree_part()?;
        if sf.degree() != Some(1) {
            return Err(Error::Reducible(
                "tangent cone has several directions".into(),
            ));
        }
        let t0 = (-&sf.coeff(0)).try_div(&sf.coeff(1))?;
        if !t0.is_rational() {
            return Err(Error::Reducible(
                "tangent direction generates a nontrivial orbit".into(),
            ));
        }
        let vars = dir_vars(1);
        let x = Poly2::var(vars.clone(), Var::X);
        let t_shift = Poly2::var(vars.clone(), Var::Y).add(&Poly2::constant(vars.clone(), t0));
        cur = cur
            .substitute(&x, &x.mul(&t_shift))
            .shift_down(Var::X, ord)?;
    }
    Err(Error::MaxDepthExceeded(64))
}

/// Where a branch ends up relative to the reduction tree.
#[derive(Clone, Debug)]
pub struct BranchTrace {
    /// Nodes whose center the strict transform passes through.
    pub through: Vec<NodeId>,
    /// The deepest tree node on the branch.
    pub landing: NodeId,
    /// The divisor component the strict transform is attached to (None for
    /// a tree with no blow-ups).
    pub attachment: Option<CompId>,
    /// Whether the branch had to be separated from a corner.
    pub was_at_corner: bool,
}

/// Follow the strict transform of an irreducible branch through the tree
/// and determine which divisor component it attaches to.
pub fn trace_branch(tree: &ReductionTree, f: &Poly2) -> Result<BranchTrace> {
    let strict = tree.transport_curve(f)?;
    if strict[0].is_none() {
        return Err(Error::Input("branch does not pass through the origin".into()));
    }
    let mut cur = NodeId(0);
    let mut through = vec![cur];
    loop {
        let next: Vec<NodeId> = tree.nodes[cur.0]
            .children
            .iter()
            .copied()
            .filter(|c| strict[c.0].is_some())
            .collect();
        match next.len() {
            0 => break,
            1 => {
                cur = next[0];
                through.push(cur);
            }
            _ => {
                return Err(Error::Reducible(
                    "branch continues into several infinitely near points".into(),
                ))
            }
        }
    }
    let node = tree.node(cur);
    let f_cur = strict[cur.0].as_ref().unwrap();
    match &node.blowup {
        Some(info) => {
            // the branch leaves the tree at a non-node direction of the new
            // component; a corner is possible only with the node's own axes
            let ord = f_cur.try_order()?.expect("strict transform nonzero");
            let inf = homogeneous_part(f_cur, ord);
            let dir_is_zero = inf.axis_valuation(Var::Y).unwrap_or(0) >= 1;
            let dir_is_inf = inf.degree_in(Var::Y) == Some(0);
            let corner_with = if dir_is_zero {
                node.comp_on_axis(Axis::YZero)
            } else if dir_is_inf {
                node.comp_on_axis(Axis::XZero)
            } else {
                None
            };
            match corner_with {
                None => Ok(BranchTrace {
                    through,
                    landing: cur,
                    attachment: Some(info.comp),
                    was_at_corner: false,
                }),
                Some(other) => {
                    let attach = separate_from_corner(f_cur, dir_is_zero, info.comp, other)?;
                    Ok(BranchTrace {
                        through,
                        landing: cur,
                        attachment: Some(attach),
                        was_at_corner: true,
                    })
                }
            }
        }
        None => {
            // landed on a leaf node
            match node.incident.len() {
                0 => Ok(BranchTrace {
                    through,
                    landing: cur,
                    attachment: None,
                    was_at_corner: false,
                }),
                1 => Ok(BranchTrace {
                    through,
                    landing: cur,
                    attachment: Some(node.incident[0].0),
                    was_at_corner: false,
                }),
                _ => {
                    let cx = node.comp_on_axis(Axis::XZero).ok_or(Error::NoAttachment)?;
                    let cy = node.comp_on_axis(Axis::YZero).ok_or(Error::NoAttachment)?;
                    let ord = f_cur.try_order()?.expect("nonzero");
                    let inf = homogeneous_part(f_cur, ord);
                    let dir_is_zero = inf.axis_valuation(Var::Y).unwrap_or(0) >= 1;
                    let attach = separate_from_corner(f_cur, dir_is_zero, cx, cy)?;
                    Ok(BranchTrace {
                        through,
                        landing: cur,
                        attachment: Some(attach),
                        was_at_corner: true,
                    })
                }
            }
        }
    }
}

/// One curve-only blow-up separates the two components of a corner; the
/// branch stays with the component whose axis its tangent direction points
/// along.
fn separate_from_corner(
    f: &Poly2,
    dir_is_zero: bool,
    comp_x: CompId,
    comp_y: CompId,
) -> Result<CompId> {
    // direction t = 0 keeps contact with the {y=0} component, direction
    // infinity with the {x=0} one; a transversal direction touches neither
    let ord = f.try_order()?.expect("nonzero");
    let inf = homogeneous_part(f, ord);
    let dir_inf = inf.degree_in(Var::Y) == Some(0);
    if dir_is_zero {
        Ok(comp_y)
    } else if dir_inf {
        Ok(comp_x)
    } else {
        Err(Error::NoAttachment)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foliation::tests::{dulac, family_fk, four_xy, radial, saddle_node, p};

    fn reduce_default(form: &OneForm) -> ReductionTree {
        reduce(form, &ReduceOptions::default()).unwrap()
    }

    #[test]
    fn blowup_examples() {
        // the radial foliation is dicritical
        let (_, dic) = blowup(&radial(), Chart::Direction).unwrap();
        assert!(dic);
        // 4xy dx + (y - 2x^2) dy in the direction chart:
        // t(t+2x) dx + x(t-2x) dt
        let (f, dic) = blowup(&four_xy(), Chart::Direction).unwrap();
        assert!(!dic);
        let vars = f.vars().clone();
        let expect_p = Poly2::monomial(vars.clone(), FieldElement::from_int(1), 0, 2)
            .add(&Poly2::monomial(vars.clone(), FieldElement::from_int(2), 1, 1));
        let expect_q = Poly2::monomial(vars.clone(), FieldElement::from_int(1), 1, 1)
            .add(&Poly2::monomial(vars.clone(), FieldElement::from_int(-2), 2, 0));
        assert_eq!(f.p(), &expect_p);
        assert_eq!(f.q(), &expect_q);
        // Dulac n=2 in the direction chart: (t+x) dx - x dt
        let (f, dic) = blowup(&dulac(2), Chart::Direction).unwrap();
        assert!(!dic);
        let vars = f.vars().clone();
        let expect_p = Poly2::monomial(vars.clone(), FieldElement::from_int(1), 0, 1)
            .add(&Poly2::monomial(vars.clone(), FieldElement::from_int(1), 1, 0));
        let expect_q = Poly2::monomial(vars.clone(), FieldElement::from_int(-1), 1, 0);
        assert_eq!(f.p(), &expect_p);
        assert_eq!(f.q(), &expect_q);
        // a regular point cannot be blown up through the public operation
        let reg = OneForm::new(p("1 | 1 x"), p("1 y")).unwrap();
        assert!(blowup(&reg, Chart::Direction).is_err());
    }

    #[test]
    fn classify_examples() {
        // (t+x) dx - x dt: eigenvalues (1,1), ratio 1 in Q+
        let f = OneForm::new(p("1 y | 1 x"), p("-1 x")).unwrap();
        assert!(matches!(
            classify(&f).unwrap(),
            SingularityClass::NonReduced { resonant: true }
        ));
        // saddle-node with weak direction along the second axis
        // (u-chart transform of the 4xy example): 2u^2 dx + x(u-2) du
        let f = OneForm::new(p("2 y^2"), p("1 x y | -2 x")).unwrap();
        match classify(&f).unwrap() {
            SingularityClass::SaddleNode { ind_weak, weak_dir, .. } => {
                // weak separatrix is the {x=0} axis here
                assert!(weak_dir.0.is_canonical_zero());
                assert_eq!(ind_weak, Some(2));
            }
            other => panic!("expected saddle-node, got {other:?}"),
        }
        // x(1 + ...) dy - y(-2 + ...) dx: ratio -2 not in Q+
        let f = OneForm::new(p("2 y | 1 y^2"), p("1 x | 1 x^2")).unwrap();
        match classify(&f).unwrap() {
            SingularityClass::NonDegenerate { ratio } => {
                let r = ratio.expect("rational ratio");
                let r_num: i64 = (&r * Rat::from_integer(2.into()))
                    .to_integer()
                    .try_into()
                    .unwrap();
                assert!(r_num == -1 || r_num == -4, "ratio should be -2 or -1/2, got {r}");
            }
            other => panic!("expected non-degenerate, got {other:?}"),
        }
    }

    #[test]
    fn radial_reduction() {
        let tree = reduce_default(&radial());
        assert_eq!(tree.depth, 1);
        assert_eq!(tree.comps.len(), 1);
        assert!(tree.comps[0].dicritical);
        assert_eq!(tree.comps[0].valence(), 0);
        assert_eq!(tree.nodes.len(), 1); // no singular points on the divisor
        assert!(tree.is_generalized_curve());
        assert!(tree.is_second_type());
        assert_eq!(tree.tangency_excess(NodeId(0)), 0);
        assert_eq!(tree.chi_number(ChiMode::Literal, 0).unwrap(), 0);
        assert_eq!(tree.chi_number(ChiMode::Polar, 0).unwrap(), 0);
    }

    #[test]
    fn dulac_reduction() {
        for n in [2u32, 3] {
            let tree = reduce_default(&dulac(n));
            // one tangent saddle-node at a corner, with index 2
            let tsn = tree.tangent_saddle_nodes();
            assert_eq!(tsn.len(), 1, "n = {n}");
            let node = tree.node(tsn[0]);
            assert_eq!(node.incident.len(), 2, "tangent saddle-node at a corner");
            match &node.class {
                SingularityClass::SaddleNode {
                    weak_component: Some(w),
                    ind_weak: Some(ind),
                    ..
                } => {
                    assert_eq!(*ind, 2);
                    assert_eq!(tree.comp(*w).multiplicity, 1, "curvette multiplicity");
                }
                other => panic!("bad class {other:?}"),
            }
            assert_eq!(tree.tangency_excess(NodeId(0)), 1, "n = {n}");
            assert!(!tree.is_second_type());
            assert!(!tree.is_generalized_curve());
            assert!(!tree.has_dicritical_component());
            assert_eq!(tree.chi_number(ChiMode::Polar, 0).unwrap(), 0, "n = {n}");
        }
        // n = 2: depth 2 exactly; n = 3 needs one more blow-up
        assert_eq!(reduce_default(&dulac(2)).depth, 2);
        assert_eq!(reduce_default(&dulac(3)).depth, 3);
        assert_eq!(reduce_default(&dulac(2)).chi_number(ChiMode::Literal, 0).unwrap(), 1);
    }

    #[test]
    fn four_xy_reduction() {
        let tree = reduce_default(&four_xy());
        assert_eq!(tree.tangency_excess(NodeId(0)), 1);
        assert!(!tree.is_second_type());
        assert_eq!(tree.chi_number(ChiMode::Polar, 0).unwrap(), 1);
        assert_eq!(tree.chi_number(ChiMode::Literal, 0).unwrap(), 2);
        // the tangent saddle-node sits at a non-corner point of the second
        // component and its strong separatrix is the strict transform of y=0
        let tsn = tree.tangent_saddle_nodes();
        assert_eq!(tsn.len(), 1);
        assert_eq!(tree.node(tsn[0]).incident.len(), 1);
    }

    #[test]
    fn family_reduction() {
        let tree = reduce_default(&family_fk(3, 0));
        assert!(tree.has_dicritical_component());
        assert_eq!(tree.tangent_saddle_nodes().len(), 1);
        assert_eq!(tree.tangency_excess(NodeId(0)), 2);
        // the intermediate singular point q with nu_q = k-1 = 2
        let q = tree
            .nodes
            .iter()
            .find(|n| n.depth == 1 && !n.is_leaf())
            .expect("intermediate point");
        assert_eq!(q.nu, 2);
        assert_eq!(tree.tangency_excess(q.id), 2);
        assert_eq!(tree.chi_number(ChiMode::Literal, 0).unwrap(), 8);
        assert_eq!(tree.chi_number(ChiMode::Polar, 0).unwrap(), 8);
        // saddle-node normal form at a reduced point: second type but not a
        // generalized curve
        let sn = reduce_default(&saddle_node(2, 1));
        assert_eq!(sn.nodes.len(), 1);
        assert!(sn.is_second_type());
        assert!(!sn.is_generalized_curve());
    }

    #[test]
    fn multiplicity_balance_on_examples() {
        // nu_p(F) = nu_p(B) - 1 + xi_p(F) against the known balanced divisors
        let cases: Vec<(OneForm, Vec<(Poly2, i64)>)> = vec![
            (
                radial(),
                vec![
                    (p("1 x"), 1),
                    (p("1 y"), 1),
                    (p("1 x | -1 y"), 1),
                    (p("1 x | 1 y"), -1),
                ],
            ),
            (dulac(2), vec![(p("1 x"), 1)]),
            (four_xy(), vec![(p("1 y"), 1)]),
            (family_fk(3, 0), vec![(p("1 y"), 1), (p("1 x"), 1)]),
        ];
        for (form, divisor) in cases {
            let tree = reduce_default(&form);
            let nu_f = form.algebraic_multiplicity() as i64;
            let nu_b: i64 = divisor
                .iter()
                .map(|(f, w)| w * f.order().unwrap() as i64)
                .sum();
            let xi = tree.tangency_excess(NodeId(0)) as i64;
            assert_eq!(nu_f, nu_b - 1 + xi, "balance failed");
        }
    }

    #[test]
    fn cusp_satellite_curvette_multiplicity() {
        // 2x dy - 3y dx has the cusp family y^2 = c x^3; its reduction has
        // three components and the satellite one has curvette multiplicity 2
        let form = OneForm::new(p("-3 y"), p("2 x")).unwrap();
        let tree = reduce_default(&form);
        assert_eq!(tree.comps.len(), 3);
        let mut mults: Vec<u64> = tree.comps.iter().map(|c| c.multiplicity).collect();
        mults.sort();
        assert_eq!(mults, vec![1, 1, 2]);
        let dic: Vec<_> = tree.comps.iter().filter(|c| c.dicritical).collect();
        assert_eq!(dic.len(), 1);
        assert_eq!(dic[0].multiplicity, 2, "the dicritical component is the satellite");
        assert_eq!(dic[0].valence(), 2);
        assert!(tree.is_generalized_curve());
    }

    #[test]
    fn tangency_behaviour_under_blowup() {
        // tang_p(F, B) = (nu_p(F) + eps) nu_p(B) + tang_q for the strict
        // transform at the single next point of a non-invariant branch
        use crate::foliation::{tangency_order, PlaneCurve};
        for (form, probe) in [
            (dulac(2), p("1 y")),
            (four_xy(), p("1 y | -1 x^3")),
            (four_xy(), p("1 x")),
        ] {
            let tree = reduce_default(&form);
            let b = PlaneCurve::reduced(probe.clone()).unwrap();
            let tang_root = tangency_order(&form, &b).unwrap();
            let strict = tree.transport_curve(&probe).unwrap();
            let root = tree.root();
            let eps = if root.blowup.as_ref().unwrap().dicritical {
                1
            } else {
                0
            };
            let nu_b = probe.order().unwrap() as u64;
            // locate the next point of the branch (if any inside the tree)
            let next: Vec<NodeId> = root
                .children
                .iter()
                .copied()
                .filter(|c| strict[c.0].is_some())
                .collect();
            let tang_next = match next.as_slice() {
                [] => 0,
                [q] => {
                    let node = tree.node(*q);
                    let fq = strict[q.0].as_ref().unwrap();
                    let t = node.form.p().mul(&fq.derivative(Var::Y)).sub(
                        &node.form.q().mul(&fq.derivative(Var::X)),
                    );
                    crate::localring::finite_intersection(fq, &t, "tangency order").unwrap()
                }
                _ => panic!("probe branch should stay irreducible"),
            };
            assert_eq!(
                tang_root,
                (root.nu as u64 + eps) * nu_b + tang_next,
                "blow-up recursion for the tangency order"
            );
        }
    }

    #[test]
    fn branch_attachments() {
        // radial: every line attaches to the dicritical component
        let tree = reduce_default(&radial());
        for f in [p("1 x"), p("1 y"), p("1 x | -1 y"), p("1 x | 1 y")] {
            let trace = trace_branch(&tree, &f).unwrap();
            assert_eq!(trace.attachment, Some(CompId(0)));
            assert!(!trace.was_at_corner);
        }
        // Dulac: x = 0 attaches to the first component
        let tree = reduce_default(&dulac(2));
        let trace = trace_branch(&tree, &p("1 x")).unwrap();
        let comp = trace.attachment.unwrap();
        assert!(!tree.comp(comp).dicritical);
        assert_eq!(tree.comp(comp).created_at, NodeId(0));
        // F_3: y=0 attaches to the last component (strong separatrix of the
        // tangent saddle-node), x=0 to the dicritical one
        let tree = reduce_default(&family_fk(3, 0));
        let t1 = trace_branch(&tree, &p("1 y")).unwrap();
        assert!(!tree.comp(t1.attachment.unwrap()).dicritical);
        let t2 = trace_branch(&tree, &p("1 x")).unwrap();
        assert!(tree.comp(t2.attachment.unwrap()).dicritical);
        // saddle-node normal form: no components at all
        let tree = reduce_default(&saddle_node(2, 0));
        assert!(trace_branch(&tree, &p("1 x")).unwrap().attachment.is_none());
    }

    #[test]
    fn irreducibility_certification() {
        certify_irreducible(&p("1 x")).unwrap();
        certify_irreducible(&p("1 y^2 | -1 x^3")).unwrap();
        certify_irreducible(&p("1 y^3 | -1 x^5")).unwrap();
        // tangent direction at infinity (tangent cone a power of x)
        certify_irreducible(&p("1 x^2 | -1 y^3")).unwrap();
        // singular branch with a translated tangent: (y - x^2)^2 = x^5
        certify_irreducible(&p("1 y^2 | -2 x^2 y | 1 x^4 | -1 x^5")).unwrap();
        assert!(matches!(
            certify_irreducible(&p("1 x y")),
            Err(Error::Reducible(_))
        ));
        assert!(matches!(
            certify_irreducible(&p("1 y^2 | -1 x^2 | -1 x^3")),
            Err(Error::Reducible(_))
        ));
        // y^2 - 2x^2 splits into two conjugate branches
        assert!(matches!(
            certify_irreducible(&p("1 y^2 | -2 x^2")),
            Err(Error::Reducible(_))
        ));
    }

    #[test]
    fn cabrera_mol_probe_sums() {
        // i(B_div, probe) = tang - sum nu_q(probe) xi_q + 1
        // 4xy example with probe y - x^3: 3 = 4 - 2 + 1
        let tree = reduce_default(&four_xy());
        let probe = p("1 y | -1 x^3");
        let mults = tree.transported_multiplicities(&probe).unwrap();
        assert_eq!(tree.weighted_xi_against(&mults), 2);
        // Dulac with probe y: 1 = 2 - 2 + 1
        let tree = reduce_default(&dulac(2));
        let probe = p("1 y");
        let mults = tree.transported_multiplicities(&probe).unwrap();
        assert_eq!(tree.weighted_xi_against(&mults), 2);
    }

    #[test]
    fn chi_number_properties() {
        // chi >= 0 always (construction errors on a negative value);
        // second type forces chi = 0; chi = 0 with nu > 1 forces second type
        let forms = vec![
            radial(),
            dulac(2),
            dulac(3),
            four_xy(),
            family_fk(3, 0),
            family_fk(4, 1),
            saddle_node(1, 0),
            saddle_node(3, 1),
            OneForm::new(p("-3 y"), p("2 x")).unwrap(),
            OneForm::hamiltonian(&p("1 x y | 1 y^3")).unwrap(),
        ];
        for form in forms {
            let tree = reduce_default(&form);
            for mode in [ChiMode::Literal, ChiMode::Polar] {
                let chi = tree.chi_number(mode, 0).unwrap();
                if tree.is_second_type() {
                    assert_eq!(chi, 0, "second type must have chi = 0");
                }
                if chi == 0 && form.algebraic_multiplicity() > 1 {
                    assert!(
                        tree.is_second_type(),
                        "chi = 0 with nu > 1 must be second type"
                    );
                }
            }
        }
    }

    #[test]
    fn depth_guard_carries_partial_tree() {
        let form = family_fk(3, 0);
        let err = reduce(
            &form,
            &ReduceOptions {
                max_depth: 1,
                split_hints: vec![],
            },
        )
        .unwrap_err();
        match err {
            Error::MaxDepthWithPartial { limit, partial } => {
                assert_eq!(limit, 1);
                assert!(!partial.nodes.is_empty());
            }
            other => panic!("expected depth error, got {other:?}"),
        }
    }

    #[test]
    fn mid_reduction_split_separates_behaviours() {
        // a form over the reducible modulus z^2 - 3z + 2 (roots 1 and 2):
        // the dual linear part is diag(1, a-1), a saddle-node at a = 1 and a
        // resonant non-reduced point at a = 2. Classification must hit the
        // zero divisor a - 1 and split the computation into both branches.
        use crate::algebra::field::{Level, Rep, Tower};
        use std::sync::Arc;
        let tower = Arc::new(Tower {
            levels: vec![Level {
                lower_coeffs: vec![
                    Rep::Rat(Rat::from_integer(2.into())),
                    Rep::Rat(Rat::from_integer((-3).into())),
                ],
            }],
        });
        let a = FieldElement::generator(tower.clone(), 0);
        let a_minus_1 = &a - &FieldElement::one();
        let vars = Vars::xy();
        // omega = ((a-1) y + y^2) dx - x dy; the quadratic term keeps the
        // coefficients coprime on the branch where a - 1 vanishes
        let p = Poly2::monomial(vars.clone(), a_minus_1, 0, 1).add(&Poly2::monomial(
            vars.clone(),
            FieldElement::one().rebase(&tower),
            0,
            2,
        ));
        let q = Poly2::monomial(vars.clone(), -FieldElement::one().rebase(&tower), 1, 0);
        let form = OneForm::raw(p, q);
        let tree = reduce(&form, &ReduceOptions::default()).unwrap();
        // two rank-one branch roots: a saddle-node leaf at a = 1 and a
        // radial-type point at a = 2 (resonant, dicritical blow-up)
        let roots: Vec<_> = tree.nodes.iter().filter(|n| n.parent.is_none()).collect();
        assert_eq!(roots.len(), 2, "the root orbit must split");
        assert!(roots.iter().all(|n| n.orbit_weight == 1));
        let classes: Vec<&str> = roots.iter().map(|n| n.class.short_name()).collect();
        assert!(classes.contains(&"saddle-node"), "{classes:?}");
        assert!(classes.contains(&"non-reduced"), "{classes:?}");
        // the resonant branch was blown up (dicritically); the saddle-node
        // branch is already reduced
        assert!(roots
            .iter()
            .any(|n| n.blowup.as_ref().map_or(false, |b| b.dicritical)));
        assert!(roots.iter().any(|n| n.is_leaf()));
    }

    #[test]
    fn orbit_weights_sum_invariantly() {
        // a foliation with singular divisor directions t^2 = 2: the merged
        // orbit and the hint-split refinement must weight sums identically
        // omega = d(y^2 - x^2(x+... )): take f = y^2 - 2x^2... instead use
        // the hamiltonian of f = (y^2 - 2x^2) x: directions at t^2 = 2 and
        // t = infinity
        let f = p("1 x y^2 | -2 x^3");
        let form = OneForm::hamiltonian(&f).unwrap();
        let plain = reduce(&form, &ReduceOptions::default()).unwrap();
        let hinted = reduce(
            &form,
            &ReduceOptions {
                max_depth: 64,
                split_hints: vec![Poly1::from_ints(&[-2, 0, 1])],
            },
        )
        .unwrap();
        // the hint cannot split an irreducible quadratic, but for the merged
        // tree vs itself the weighted counts agree; more importantly the
        // reduction with an honestly reducible locator splits below
        let w1: u64 = plain.nodes.iter().map(|n| n.orbit_weight * (n.nu as u64 + 1)).sum();
        let w2: u64 = hinted.nodes.iter().map(|n| n.orbit_weight * (n.nu as u64 + 1)).sum();
        assert_eq!(w1, w2);
        assert_eq!(
            plain.chi_number(ChiMode::Literal, 0).unwrap(),
            hinted.chi_number(ChiMode::Literal, 0).unwrap()
        );

        // genuinely mergeable: directions t^4 - 5t^2 + 6 = (t^2-2)(t^2-3)
        let f2 = p("1 y^4 | -5 x^2 y^2 | 6 x^4 | 1 x^5");
        let form2 = OneForm::hamiltonian(&f2).unwrap();
        let merged = reduce(&form2, &ReduceOptions::default()).unwrap();
        let refined = reduce(
            &form2,
            &ReduceOptions {
                max_depth: 64,
                split_hints: vec![Poly1::from_ints(&[-2, 0, 1])],
            },
        )
        .unwrap();
        let total = |t: &ReductionTree| -> (u64, u64) {
            (
                t.nodes.iter().map(|n| n.orbit_weight).sum(),
                t.nodes.iter().map(|n| n.orbit_weight * n.nu as u64).sum(),
            )
        };
        assert!(refined.nodes.len() > merged.nodes.len());
        assert_eq!(total(&merged), total(&refined));
        assert_eq!(
            merged.chi_number(ChiMode::Literal, 0).unwrap(),
            refined.chi_number(ChiMode::Literal, 0).unwrap()
        );
    }
}
