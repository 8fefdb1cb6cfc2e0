//! Integer-weighted divisors of separatrices: assembly, zero/pole split,
//! degree and multiplicity, adaptedness, and validation of the balanced
//! condition against a reduction tree.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::poly2::{Poly2, Vars};
use crate::error::{Error, Result};
use crate::foliation::{OneForm, PlaneCurve};
use crate::resolution::{certify_irreducible, trace_branch, ReductionTree, SingularityClass};

/// One branch entry of a divisor.
#[derive(Clone, Debug)]
pub struct WeightedBranch {
    pub name: String,
    pub curve: PlaneCurve,
    pub weight: i64,
}

/// A finite integer-weighted sum of separatrix branches.
#[derive(Clone, Debug)]
pub struct SeparatrixDivisor {
    branches: Vec<WeightedBranch>,
    vars: Vars,
}

impl SeparatrixDivisor {
    /// Build from (name, equation, weight) entries. Every equation must be
    /// an irreducible germ through the origin, and distinct entries must be
    /// coprime.
    pub fn new(vars: Vars, entries: Vec<(String, Poly2, i64)>) -> Result<SeparatrixDivisor> {
        let mut branches = Vec::new();
        let mut seen = Vec::<String>::new();
        for (name, f, weight) in entries {
            if weight == 0 {
                return Err(Error::Input(format!("branch {name} has weight 0")));
            }
            if seen.contains(&name) {
                return Err(Error::Input(format!("duplicate branch name {name}")));
            }
            seen.push(name.clone());
            certify_irreducible(&f).map_err(|e| match e {
                Error::Reducible(msg) => {
                    Error::Reducible(format!("branch {name} is not a single branch: {msg}"))
                }
                other => other,
            })?;
            let curve = PlaneCurve::reduced(f)?;
            for other in &branches {
                let other: &WeightedBranch = other;
                let g = curve.poly().gcd(other.curve.poly())?;
                if g.degree().unwrap_or(0) > 0 {
                    return Err(Error::Input(format!(
                        "branches {} and {} share a component",
                        name, other.name
                    )));
                }
            }
            branches.push(WeightedBranch {
                name,
                curve,
                weight,
            });
        }
        Ok(SeparatrixDivisor { branches, vars })
    }

    pub fn branches(&self) -> &[WeightedBranch] {
        &self.branches
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn degree(&self) -> i64 {
        self.branches.iter().map(|b| b.weight).sum()
    }

    pub fn is_effective(&self) -> bool {
        self.branches.iter().all(|b| b.weight >= 0)
    }

    /// All weights in {-1, +1} (reduced zero and pole parts).
    pub fn is_reduced(&self) -> bool {
        self.branches.iter().all(|b| b.weight.abs() == 1)
    }

    /// Weighted multiplicity nu(B_0) - nu(B_infty).
    pub fn weighted_multiplicity(&self) -> i64 {
        self.branches
            .iter()
            .map(|b| b.weight * b.curve.multiplicity() as i64)
            .sum()
    }

    /// Multiplicity summed over the support without weights.
    pub fn support_multiplicity(&self) -> i64 {
        self.branches
            .iter()
            .map(|b| b.curve.multiplicity() as i64)
            .sum()
    }

    pub fn zero_branches(&self) -> impl Iterator<Item = &WeightedBranch> {
        self.branches.iter().filter(|b| b.weight > 0)
    }

    pub fn pole_branches(&self) -> impl Iterator<Item = &WeightedBranch> {
        self.branches.iter().filter(|b| b.weight < 0)
    }

    /// Reduced product of the zero-part branch equations.
    pub fn zero_part_poly(&self) -> Poly2 {
        let mut f = Poly2::one(self.vars.clone());
        for b in self.zero_branches() {
            f = f.mul(b.curve.poly());
        }
        f
    }

    /// Reduced product of the pole-part branch equations (1 when empty).
    pub fn pole_part_poly(&self) -> Poly2 {
        let mut f = Poly2::one(self.vars.clone());
        for b in self.pole_branches() {
            f = f.mul(b.curve.poly());
        }
        f
    }

    /// Whether the zero part dominates the given reduced curve.
    pub fn is_adapted(&self, curve: &Poly2) -> Result<bool> {
        if curve.degree() == Some(0) {
            return Ok(true);
        }
        curve.divides(&self.zero_part_poly())
    }

    /// The meromorphic balanced equation as (numerator, denominator), with
    /// weights as exponents; the branch must appear in the zero part.
    pub fn adapted_equation(&self, branch: &str) -> Result<(Poly2, Poly2)> {
        let b = self
            .branches
            .iter()
            .find(|b| b.name == branch)
            .ok_or_else(|| Error::Input(format!("unknown branch {branch}")))?;
        if b.weight < 0 {
            return Err(Error::NotAdapted);
        }
        let mut num = Poly2::one(self.vars.clone());
        let mut den = Poly2::one(self.vars.clone());
        for wb in &self.branches {
            let e = wb.weight.unsigned_abs() as u32;
            if wb.weight > 0 {
                num = num.mul(&wb.curve.poly().pow(e));
            } else {
                den = den.mul(&wb.curve.poly().pow(e));
            }
        }
        Ok((num, den))
    }

    /// A balanced divisor adapted to the named branch, carrying it with
    /// weight exactly one (a higher weight would put the branch inside the
    /// polar of its own balanced differential). The divisor itself works
    /// when the branch already has weight one; otherwise the excess weight
    /// (or, for a pole branch, the whole exchange) moves to a positive
    /// partner attached to the same dicritical component, preserving the
    /// component sums.
    pub fn adapted_to(
        &self,
        branch: &str,
        cert: &BalancedCertificate,
    ) -> Result<SeparatrixDivisor> {
        let b = self
            .branches
            .iter()
            .find(|b| b.name == branch)
            .ok_or_else(|| Error::Input(format!("unknown branch {branch}")))?;
        if b.weight == 1 {
            return Ok(self.clone());
        }
        let comp = cert
            .attachments
            .get(branch)
            .and_then(|a| a.component)
            .ok_or(Error::NotAdapted)?;
        let partner = self
            .branches
            .iter()
            .find(|other| {
                other.name != branch
                    && other.weight > 0
                    && cert
                        .attachments
                        .get(&other.name)
                        .map_or(false, |a| a.component == Some(comp))
            })
            .ok_or_else(|| {
                Error::Input(format!(
                    "no positive partner on the dicritical component of branch {branch}"
                ))
            })?;
        let mut out = self.clone();
        let slack = b.weight - 1;
        let pname = partner.name.clone();
        for entry in &mut out.branches {
            if entry.name == branch {
                entry.weight = 1;
            } else if entry.name == pname {
                entry.weight += slack;
            }
        }
        out.branches.retain(|e| e.weight != 0);
        Ok(out)
    }
}

/// Where one branch attaches in the reduction.
#[derive(Clone, Debug, Serialize)]
pub struct BranchAttachment {
    /// Component met by the strict transform (None over a tree without
    /// blow-ups, where separatrices live at the reduced root).
    pub component: Option<usize_comp>,
    pub dicritical: bool,
    pub at_corner: bool,
    pub landing_node: usize,
}

// serde-friendly alias
#[allow(non_camel_case_types)]
pub type usize_comp = usize;

/// Outcome of validating a divisor against a reduction tree.
#[derive(Clone, Debug, Serialize)]
pub struct BalancedCertificate {
    /// Per-branch attachment data, keyed by branch name.
    pub attachments: BTreeMap<String, BranchAttachmentInfo>,
    /// For each dicritical component: (weight sum, required 2 - Val(D)).
    pub dicritical_sums: BTreeMap<usize, (i64, i64)>,
    /// Isolated separatrix sites and whether each is covered with weight 1.
    pub isolated_sites: Vec<IsolatedSite>,
    pub balanced: bool,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchAttachmentInfo {
    pub component: Option<usize>,
    pub dicritical: bool,
    pub at_corner: bool,
    pub landing_node: usize,
    pub isolated: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsolatedSite {
    /// The singular leaf carrying the site.
    pub node: usize,
    /// Conjugate count of the leaf.
    pub weight: u64,
    pub covered_by: Option<String>,
}

/// Transport every branch through the tree, classify attachments, and check
/// the balanced condition: isolated separatrices appear with weight one and
/// the weights on each dicritical component D sum to 2 - Val(D).
pub fn attach_branches(
    tree: &ReductionTree,
    form: &OneForm,
    divisor: &SeparatrixDivisor,
) -> Result<BalancedCertificate> {
    let mut attachments = BTreeMap::new();
    let mut failures: Vec<String> = Vec::new();

    for b in divisor.branches() {
        if !form.is_invariant(&b.curve)? {
            return Err(Error::NotInvariant);
        }
        let trace = trace_branch(tree, b.curve.poly())?;
        let dicritical = trace
            .attachment
            .map_or(false, |c| tree.comp(c).dicritical);
        attachments.insert(
            b.name.clone(),
            BranchAttachmentInfo {
                component: trace.attachment.map(|c| c.0),
                dicritical,
                at_corner: trace.was_at_corner,
                landing_node: trace.landing.0,
                isolated: !dicritical,
            },
        );
    }

    // isolated separatrix sites: singular leaves not at corners carry one
    // transverse branch each (the root of a reduced tree carries both its
    // branches)
    let mut isolated_sites: Vec<IsolatedSite> = Vec::new();
    if tree.nodes.len() == 1 && tree.root().is_leaf() {
        let root = tree.root();
        let n_branches = match &root.class {
            SingularityClass::NonDegenerate { .. } | SingularityClass::SaddleNode { .. } => 2,
            _ => 0,
        };
        for _ in 0..n_branches {
            isolated_sites.push(IsolatedSite {
                node: 0,
                weight: 1,
                covered_by: None,
            });
        }
        // both sites are at the root: assign branches landing there
        let mut landing_here: Vec<&str> = attachments
            .iter()
            .filter(|(_, a)| a.component.is_none())
            .map(|(n, _)| n.as_str())
            .collect();
        landing_here.sort();
        for (site, name) in isolated_sites.iter_mut().zip(&landing_here) {
            site.covered_by = Some(name.to_string());
        }
    } else {
        for n in &tree.nodes {
            if !n.is_leaf() || n.incident.len() != 1 || !n.class.is_reduced() {
                continue;
            }
            if tree.comp(n.incident[0].0).dicritical {
                continue;
            }
            // tangent saddle-nodes at non-corners still carry the strong
            // separatrix as their transverse branch
            let covered_by = attachments
                .iter()
                .find(|(_, a)| a.landing_node == n.id.0 && a.component == Some(n.incident[0].0 .0))
                .map(|(name, _)| name.clone());
            isolated_sites.push(IsolatedSite {
                node: n.id.0,
                weight: n.orbit_weight,
                covered_by,
            });
        }
    }

    for site in &isolated_sites {
        match &site.covered_by {
            None => failures.push(format!(
                "isolated separatrix at node {} is missing from the divisor",
                site.node
            )),
            Some(name) => {
                if site.weight != 1 {
                    failures.push(format!(
                        "isolated site at node {} is a nontrivial orbit (weight {})",
                        site.node, site.weight
                    ));
                }
                let w = divisor
                    .branches()
                    .iter()
                    .find(|b| &b.name == name)
                    .map(|b| b.weight)
                    .unwrap_or(0);
                if w != 1 {
                    failures.push(format!(
                        "isolated separatrix {} must have weight 1, found {}",
                        name, w
                    ));
                }
            }
        }
    }

    // dicritical component sums
    let mut dicritical_sums: BTreeMap<usize, (i64, i64)> = BTreeMap::new();
    for comp in &tree.comps {
        if !comp.dicritical {
            continue;
        }
        let required = 2 - comp.valence() as i64;
        let sum: i64 = divisor
            .branches()
            .iter()
            .filter(|b| {
                attachments
                    .get(&b.name)
                    .map_or(false, |a| a.component == Some(comp.id.0))
            })
            .map(|b| b.weight)
            .sum();
        dicritical_sums.insert(comp.id.0, (sum, required));
        if sum != required {
            failures.push(format!(
                "dicritical component {} carries weight {} instead of {}",
                comp.id.0, sum, required
            ));
        }
    }

    // a branch attached to a non-dicritical component must be one of the
    // isolated sites (weight check happened above); one attached nowhere on
    // a tree with blow-ups is malformed
    if tree.nodes.len() > 1 {
        for (name, a) in &attachments {
            if a.component.is_none() {
                return Err(Error::NoAttachment);
            }
            if !a.dicritical {
                let covered = isolated_sites
                    .iter()
                    .any(|s| s.covered_by.as_deref() == Some(name));
                if !covered {
                    failures.push(format!(
                        "branch {name} attaches to a non-dicritical component away from any separatrix site"
                    ));
                }
            }
        }
    }

    Ok(BalancedCertificate {
        attachments,
        dicritical_sums,
        isolated_sites,
        balanced: failures.is_empty(),
        failures,
    })
}
