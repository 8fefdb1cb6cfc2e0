//! Headline invariants and the identity-verification suite: polar excess,
//! GSV index (two independent routes), Tjurina numbers of a foliation along
//! curves, their weighted sums over a divisor, and mechanical checks of the
//! identities relating all of them.
//!
//! Identity failures are reported as data (both sides, mode recorded), never
//! as errors: the point of the table is to show exactly where a delicate
//! step breaks on a wild example.

use serde::Serialize;

use crate::algebra::poly2::Poly2;
use crate::divisors::{attach_branches, BalancedCertificate, SeparatrixDivisor};
use crate::error::{Error, Result};
use crate::foliation::{
    generic_polar_intersection, multiplicity_along, tangency_index, tangency_order, OneForm,
    PlaneCurve, PolarSource,
};
use crate::localring::{
    finite_intersection, milnor_curve, quotient_dim, tjurina_curve, LocalIdeal, QuotientDim,
};
use crate::resolution::{reduce, ChiMode, NodeId, ReduceOptions};

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub seed: u64,
    pub max_depth: usize,
    /// Mode whose chi-dependent identity verdicts drive pass/fail exits;
    /// both modes are always computed and reported.
    pub chi_mode: ChiMode,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            seed: 0,
            max_depth: 64,
            chi_mode: ChiMode::Polar,
        }
    }
}

/// Polar excess of the foliation with respect to one branch of a validated
/// balanced divisor: the difference between the generic polar intersection
/// of the foliation and that of the adapted balanced differential.
pub fn polar_excess(
    form: &OneForm,
    divisor: &SeparatrixDivisor,
    cert: &BalancedCertificate,
    branch: &str,
    seed: u64,
) -> Result<i64> {
    let b = divisor
        .branches()
        .iter()
        .find(|b| b.name == branch)
        .ok_or_else(|| Error::Input(format!("unknown branch {branch}")))?;
    let adapted = divisor.adapted_to(branch, cert)?;
    let (num, den) = adapted.adapted_equation(branch)?;
    let src_f = PolarSource::Foliation(form.clone());
    let src_d = PolarSource::differential(num, den);
    let f = b.curve.poly();
    Ok(generic_polar_intersection(&src_f, f, seed)?
        - generic_polar_intersection(&src_d, f, seed)?)
}

/// Tjurina number of the foliation along a reduced invariant curve:
/// dim of the local quotient by (f, P, Q).
pub fn tjurina_foliation(form: &OneForm, f: &Poly2) -> Result<u64> {
    let ideal = LocalIdeal::new(vec![f.clone(), form.p().clone(), form.q().clone()]);
    match quotient_dim(&ideal)? {
        QuotientDim::Finite(n) => Ok(n),
        QuotientDim::Infinite => Err(Error::Input(
            "Tjurina number of the foliation along the curve is not finite".into(),
        )),
    }
}

/// GSV index of the foliation along a reduced invariant curve, by the two
/// independent routes: the polar-intersection difference and the Tjurina
/// difference.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct GsvIndex {
    pub polar_route: i64,
    pub tjurina_route: i64,
    pub agree: bool,
}

pub fn gsv(form: &OneForm, curve: &Poly2, seed: u64) -> Result<GsvIndex> {
    let reduced = PlaneCurve::reduced(curve.clone())?;
    if !form.is_invariant(&reduced)? {
        return Err(Error::NotInvariant);
    }
    let src_f = PolarSource::Foliation(form.clone());
    let src_df = PolarSource::differential(curve.clone(), Poly2::one(curve.vars().clone()));
    let polar_route = generic_polar_intersection(&src_f, curve, seed)?
        - generic_polar_intersection(&src_df, curve, seed)?;
    let tjurina_route = tjurina_foliation(form, curve)? as i64 - tjurina_curve(curve)? as i64;
    Ok(GsvIndex {
        polar_route,
        tjurina_route,
        agree: polar_route == tjurina_route,
    })
}

/// Weighted sum of per-branch foliation Tjurina numbers over the divisor.
pub fn tjurina_sum(form: &OneForm, divisor: &SeparatrixDivisor) -> Result<i64> {
    let mut total = 0i64;
    for b in divisor.branches() {
        total += b.weight * tjurina_foliation(form, b.curve.poly())? as i64;
    }
    Ok(total)
}

// ---- report structures ------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct Flags {
    pub dicritical: bool,
    pub second_type: bool,
    pub generalized_curve: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchReport {
    pub name: String,
    pub weight: i64,
    /// Multiplicity of the branch at the origin.
    pub nu: u32,
    pub mu_curve: u64,
    pub tau_curve: u64,
    /// Tangency index, for smooth branches.
    pub ind: Option<u64>,
    /// Multiplicity of the foliation along the branch.
    #[serde(rename = "mu_F_B")]
    pub mu_f_b: i64,
    /// Multiplicity of d(F_B) along the branch, F_B adapted to it.
    #[serde(rename = "mu_dFB_B")]
    pub mu_dfb_b: Option<i64>,
    /// Per-branch polar excess.
    pub delta: Option<i64>,
    pub gsv: GsvIndex,
    #[serde(rename = "tau_F_B")]
    pub tau_f_b: u64,
    pub attached_component: Option<usize>,
    pub attached_dicritical: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisorReport {
    pub degree: i64,
    /// Weighted multiplicity nu(B_0) - nu(B_infty).
    pub nu_weighted: i64,
    /// The unweighted sum over the support, reported when it differs.
    pub nu_support: i64,
    pub reduced: bool,
    pub effective: bool,
    pub balanced: bool,
    #[serde(rename = "delta_B0")]
    pub delta_b0: Option<i64>,
    #[serde(rename = "delta_B")]
    pub delta_b: Option<i64>,
    #[serde(rename = "gsv_B0")]
    pub gsv_b0: Option<GsvIndex>,
    #[serde(rename = "T")]
    pub tjurina_sum: i64,
    pub certificate: BalancedCertificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub name: String,
    pub tang: u64,
    /// Sum over infinitely near points of nu_q(probe) xi_q(F).
    pub xi_weighted: u64,
    /// i(divisor, probe), when a divisor is present.
    pub i_divisor: Option<i64>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityRow {
    pub id: &'static str,
    pub description: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<ChiMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lhs: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rhs: Option<i64>,
    pub status: RowStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl IdentityRow {
    fn check(id: &'static str, description: &'static str, mode: Option<ChiMode>, lhs: i64, rhs: i64) -> IdentityRow {
        IdentityRow {
            id,
            description,
            mode,
            lhs: Some(lhs),
            rhs: Some(rhs),
            status: if lhs == rhs { RowStatus::Pass } else { RowStatus::Fail },
            note: None,
        }
    }

    fn skipped(id: &'static str, description: &'static str, note: String) -> IdentityRow {
        IdentityRow {
            id,
            description,
            mode: None,
            lhs: None,
            rhs: None,
            status: RowStatus::Skipped,
            note: Some(note),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TreeSummary {
    pub nodes: usize,
    pub components: usize,
    pub depth: usize,
    pub tangent_saddle_nodes: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    #[serde(rename = "nu_F")]
    pub nu_f: u32,
    #[serde(rename = "mu_F")]
    pub mu_f: u64,
    pub xi: u64,
    pub chi_literal: u64,
    pub chi_polar: u64,
    pub chi_mode: ChiMode,
    pub flags: Flags,
    pub tree: TreeSummary,
    pub branches: Vec<BranchReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub divisor: Option<DivisorReport>,
    pub probes: Vec<ProbeReport>,
    pub identities: Vec<IdentityRow>,
    /// True when some dual-route quantity disagreed (surfaced, not hidden).
    pub route_disagreement: bool,
}

impl InvariantReport {
    /// All identity rows pass in the selected mode (skips do not count).
    pub fn all_pass(&self) -> bool {
        self.identities
            .iter()
            .filter(|r| r.mode.is_none() || r.mode == Some(self.chi_mode))
            .all(|r| r.status != RowStatus::Fail)
    }
}

// ---- the analysis ------------------------------------------------------------

struct BranchData {
    name: String,
    weight: i64,
    poly: Poly2,
    nu: u32,
    mu_curve: u64,
    tau_curve: u64,
    polar_int_f: i64,
    polar_int_dfb: Option<i64>,
    mu_f_b: i64,
    mu_dfb_b: Option<i64>,
    tau_f_b: u64,
    adapted: Option<SeparatrixDivisor>,
}

/// Full analysis: reduction, per-branch invariants, divisor aggregates, and
/// the identity table.
pub fn analyze(
    form: &OneForm,
    divisor: Option<&SeparatrixDivisor>,
    probes: &[(String, Poly2)],
    opts: &AnalysisOptions,
) -> Result<InvariantReport> {
    let tree = reduce(
        form,
        &ReduceOptions {
            max_depth: opts.max_depth,
            split_hints: vec![],
        },
    )?;
    let seed = opts.seed;
    let nu_f = form.algebraic_multiplicity();
    let mu_f = form.milnor()?;
    let xi = tree.tangency_excess(NodeId(0));
    let chi_literal = tree.chi_number(ChiMode::Literal, seed)?;
    let chi_polar = tree.chi_number(ChiMode::Polar, seed)?;
    let chi_of = |mode: ChiMode| -> u64 {
        match mode {
            ChiMode::Literal => chi_literal,
            ChiMode::Polar => chi_polar,
        }
    };
    let flags = Flags {
        dicritical: tree.has_dicritical_component(),
        second_type: tree.is_second_type(),
        generalized_curve: tree.is_generalized_curve(),
    };
    let summary = TreeSummary {
        nodes: tree.nodes.len(),
        components: tree.comps.len(),
        depth: tree.depth,
        tangent_saddle_nodes: tree.tangent_saddle_nodes().len(),
    };

    let mut identities: Vec<IdentityRow> = Vec::new();
    let mut route_disagreement = false;

    // ---- probes (non-invariant branches) ----
    let mut probe_reports = Vec::new();
    for (name, f) in probes {
        let curve = PlaneCurve::reduced(f.clone())?;
        let tang = tangency_order(form, &curve)?;
        let mults = tree.transported_multiplicities(f)?;
        let xi_weighted = tree.weighted_xi_against(&mults);
        probe_reports.push(ProbeReport {
            name: name.clone(),
            tang,
            xi_weighted,
            i_divisor: None,
        });
    }

    let divisor = match divisor {
        None => {
            return Ok(InvariantReport {
                nu_f,
                mu_f,
                xi,
                chi_literal,
                chi_polar,
                chi_mode: opts.chi_mode,
                flags,
                tree: summary,
                branches: vec![],
                divisor: None,
                probes: probe_reports,
                identities,
                route_disagreement,
            })
        }
        Some(d) => d,
    };

    let cert = attach_branches(&tree, form, divisor)?;
    let balanced = cert.balanced;

    // ---- per-branch data ----
    let src_f = PolarSource::Foliation(form.clone());
    let mut data: Vec<BranchData> = Vec::new();
    for b in divisor.branches() {
        let f = b.curve.poly().clone();
        let polar_int_f = generic_polar_intersection(&src_f, &f, seed)?;
        let mu_f_b = multiplicity_along(&src_f, &b.curve, seed)?;
        let adapted = if balanced {
            match divisor.adapted_to(&b.name, &cert) {
                Ok(a) => Some(a),
                Err(Error::Input(_)) | Err(Error::NotAdapted) => None,
                Err(e) => return Err(e),
            }
        } else if b.weight == 1 {
            Some(divisor.clone())
        } else {
            None
        };
        let (polar_int_dfb, mu_dfb_b) = match &adapted {
            None => (None, None),
            Some(a) => {
                let (num, den) = a.adapted_equation(&b.name)?;
                let src = PolarSource::differential(num, den);
                let pi = generic_polar_intersection(&src, &f, seed)?;
                let m = multiplicity_along(&src, &b.curve, seed)?;
                (Some(pi), Some(m))
            }
        };
        data.push(BranchData {
            name: b.name.clone(),
            weight: b.weight,
            nu: b.curve.multiplicity(),
            mu_curve: milnor_curve(&f)?
                .expect_finite("Milnor number of an irreducible branch")?,
            tau_curve: tjurina_curve(&f)?,
            polar_int_f,
            polar_int_dfb,
            mu_f_b,
            mu_dfb_b,
            tau_f_b: tjurina_foliation(form, &f)?,
            adapted,
            poly: f,
        });
    }

    // pairwise intersection numbers of the branches
    let n = data.len();
    let mut inter = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..i {
            let v = finite_intersection(&data[i].poly, &data[j].poly, "branch intersection")?
                as i64;
            inter[i][j] = v;
            inter[j][i] = v;
        }
    }

    // ---- branch reports ----
    let mut branch_reports = Vec::new();
    for d in &data {
        let curve = PlaneCurve::reduced(d.poly.clone())?;
        let ind = if d.nu == 1 {
            Some(tangency_index(form, &curve)?)
        } else {
            None
        };
        let g = gsv(form, &d.poly, seed)?;
        if !g.agree {
            route_disagreement = true;
        }
        let att = cert.attachments.get(&d.name);
        branch_reports.push(BranchReport {
            name: d.name.clone(),
            weight: d.weight,
            nu: d.nu,
            mu_curve: d.mu_curve,
            tau_curve: d.tau_curve,
            ind,
            mu_f_b: d.mu_f_b,
            mu_dfb_b: d.mu_dfb_b,
            delta: d.polar_int_dfb.map(|pi| d.polar_int_f - pi),
            gsv: g,
            tau_f_b: d.tau_f_b,
            attached_component: att.and_then(|a| a.component),
            attached_dicritical: att.map_or(false, |a| a.dicritical),
        });
    }

    // ---- divisor aggregates ----
    let zero_poly = divisor.zero_part_poly();
    let zero_reduced = divisor.zero_branches().all(|b| b.weight == 1)
        && divisor.pole_branches().all(|b| b.weight == -1);
    let delta_of = |sel: &dyn Fn(&BranchData) -> bool| -> Option<i64> {
        let mut total = 0i64;
        for d in &data {
            if !sel(d) {
                continue;
            }
            total += d.weight * (d.polar_int_f - d.polar_int_dfb?);
        }
        Some(total)
    };
    let delta_b0 = delta_of(&|d: &BranchData| d.weight > 0);
    let delta_b = delta_of(&|_| true);
    let tjurina_total: i64 = data.iter().map(|d| d.weight * d.tau_f_b as i64).sum();
    let gsv_b0 = if zero_reduced && !zero_poly.is_zero() && zero_poly.degree() != Some(0) {
        let g = gsv(form, &zero_poly, seed)?;
        if !g.agree {
            route_disagreement = true;
        }
        Some(g)
    } else {
        None
    };

    // i(B0, Binfty) and related pairwise sums
    let i_b0_binf: i64 = {
        let mut s = 0;
        for (i, di) in data.iter().enumerate() {
            for (j, dj) in data.iter().enumerate() {
                if di.weight > 0 && dj.weight < 0 {
                    let _ = j;
                    s += inter[i][j];
                }
            }
        }
        s
    };

    // probe intersections with the divisor
    for pr in probe_reports.iter_mut() {
        let f = &probes.iter().find(|(n2, _)| n2 == &pr.name).unwrap().1;
        let mut total = 0i64;
        for d in &data {
            total += d.weight * finite_intersection(&d.poly, f, "probe intersection")? as i64;
        }
        pr.i_divisor = Some(total);
    }

    // ---- identity rows ----
    let both_modes = [ChiMode::Literal, ChiMode::Polar];
    let skip_all = !balanced;
    let non_dicritical = !flags.dicritical;
    macro_rules! row {
        ($id:literal, $desc:literal, $mode:expr, $lhs:expr, $rhs:expr) => {{
            identities.push(IdentityRow::check($id, $desc, $mode, $lhs, $rhs));
        }};
    }
    macro_rules! skip {
        ($id:literal, $desc:literal, $note:expr) => {{
            identities.push(IdentityRow::skipped($id, $desc, $note.to_string()));
        }};
    }

    if skip_all {
        skip!(
            "all",
            "identity table",
            "divisor failed balancedness validation; no identities checked"
        );
    } else {
        let nu_b = divisor.weighted_multiplicity();
        let deg_b = divisor.degree();

        // (i) multiplicity balance
        row!(
            "multiplicity_balance",
            "nu(F) = nu(B) - 1 + xi",
            None,
            nu_f as i64,
            nu_b - 1 + xi as i64
        );

        // quantities of the zero part as a curve
        let zero_curve_data = if zero_reduced && zero_poly.degree().unwrap_or(0) >= 1 {
            let mu0 = milnor_curve(&zero_poly)?;
            let nu0 = zero_poly.order()? as i64;
            let i_pf_b0: i64 = data
                .iter()
                .filter(|d| d.weight > 0)
                .map(|d| d.weight * d.polar_int_f)
                .sum();
            Some((mu0, nu0, i_pf_b0))
        } else {
            None
        };

        // (ii) polar excess of the reduced zero divisor
        match (&zero_curve_data, delta_b0) {
            (Some((QuotientDim::Finite(mu0), nu0, i_pf_b0)), Some(d0)) => {
                row!(
                    "polar_excess_reduced_zero",
                    "Delta(F,B0) = i(P^F,B0) + i(B0,Binf) - mu(B0) - nu(B0) + 1",
                    None,
                    d0,
                    i_pf_b0 + i_b0_binf - *mu0 as i64 - nu0 + 1
                );
            }
            _ => skip!(
                "polar_excess_reduced_zero",
                "Delta(F,B0) = i(P^F,B0) + i(B0,Binf) - mu(B0) - nu(B0) + 1",
                "requires a reduced divisor with adapted equations for every zero branch"
            ),
        }

        // (iii) polar intersection via the excess sum, both modes
        let i_pf_b: i64 = data.iter().map(|d| d.weight * d.polar_int_f).sum();
        for mode in both_modes {
            row!(
                "polar_intersection_excess",
                "i(P^F,B) = mu(F) + nu(F) - sum nu_q xi_q",
                Some(mode),
                i_pf_b,
                mu_f as i64 + nu_f as i64 - (chi_of(mode) + xi) as i64
            );
        }

        // (iv) Milnor number via chi
        for mode in both_modes {
            let rhs: i64 = data.iter().map(|d| d.weight * d.mu_f_b).sum::<i64>()
                + chi_of(mode) as i64
                - deg_b
                + 1;
            row!(
                "milnor_via_chi",
                "mu(F) = sum a_B mu(F,B) + chi - deg(B) + 1",
                Some(mode),
                mu_f as i64,
                rhs
            );
        }

        // (v) Milnor formula for the zero-part curve
        match &zero_curve_data {
            Some((QuotientDim::Finite(mu0), _, _)) => {
                let zero_idx: Vec<usize> = data
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| d.weight > 0)
                    .map(|(i, _)| i)
                    .collect();
                let ell = zero_idx.len() as i64;
                let mu_sum: i64 = zero_idx.iter().map(|&i| data[i].mu_curve as i64).sum();
                let mut cross = 0i64;
                for (a, &i) in zero_idx.iter().enumerate() {
                    for &j in &zero_idx[..a] {
                        cross += inter[i][j];
                    }
                }
                row!(
                    "milnor_formula_branches",
                    "mu(C) + l - 1 = sum mu(C_j) + 2 sum i(C_i,C_j)",
                    None,
                    *mu0 as i64 + ell - 1,
                    mu_sum + 2 * cross
                );
            }
            _ => skip!(
                "milnor_formula_branches",
                "mu(C) + l - 1 = sum mu(C_j) + 2 sum i(C_i,C_j)",
                "zero part is not a reduced curve"
            ),
        }

        // (vi) main polar-excess formula, both modes
        match delta_b {
            Some(db) if data.iter().all(|d| d.mu_dfb_b.is_some()) => {
                let hamiltonian_sum: i64 = data
                    .iter()
                    .map(|d| d.weight * d.mu_dfb_b.unwrap())
                    .sum();
                for mode in both_modes {
                    row!(
                        "polar_excess_main",
                        "Delta(F,B) = mu(F) - sum a_B mu(dF_B,B) + deg(B) - 1 - chi",
                        Some(mode),
                        db,
                        mu_f as i64 - hamiltonian_sum + deg_b - 1 - chi_of(mode) as i64
                    );
                }
                // (vii) via multiplicities
                let rhs: i64 = data
                    .iter()
                    .map(|d| d.weight * (d.mu_f_b - d.mu_dfb_b.unwrap()))
                    .sum();
                row!(
                    "polar_excess_via_multiplicities",
                    "Delta(F,B) = sum a_B (mu(F,B) - mu(dF_B,B))",
                    None,
                    db,
                    rhs
                );
            }
            _ => {
                skip!(
                    "polar_excess_main",
                    "Delta(F,B) = mu(F) - sum a_B mu(dF_B,B) + deg(B) - 1 - chi",
                    "adapted equations unavailable for some branch"
                );
                skip!(
                    "polar_excess_via_multiplicities",
                    "Delta(F,B) = sum a_B (mu(F,B) - mu(dF_B,B))",
                    "adapted equations unavailable for some branch"
                );
            }
        }

        // (viii) generalized-curve criterion via branch multiplicities
        if non_dicritical {
            let all_equal = data
                .iter()
                .all(|d| d.mu_dfb_b.map_or(false, |m| m == d.mu_f_b));
            row!(
                "generalized_curve_multiplicities",
                "GC iff mu(F,C_j) = mu(df,C_j) for all j",
                None,
                flags.generalized_curve as i64,
                all_equal as i64
            );
        } else {
            skip!(
                "generalized_curve_multiplicities",
                "GC iff mu(F,C_j) = mu(df,C_j) for all j",
                "stated for non-dicritical foliations with the total union"
            );
        }

        // (ix) GSV against polar excess (zero part)
        match (&gsv_b0, delta_b0) {
            (Some(g), Some(d0)) => {
                row!(
                    "gsv_via_polar_excess",
                    "GSV(F,B0) = Delta(F,B0) - i(B0,Binf)",
                    None,
                    g.polar_route,
                    d0 - i_b0_binf
                );
            }
            _ => skip!(
                "gsv_via_polar_excess",
                "GSV(F,B0) = Delta(F,B0) - i(B0,Binf)",
                "requires a reduced divisor"
            ),
        }

        // (x) GSV of the zero divisor from its polar intersection
        match (&gsv_b0, &zero_curve_data) {
            (Some(g), Some((QuotientDim::Finite(mu0), nu0, i_pf_b0))) => {
                row!(
                    "gsv_zero_divisor",
                    "GSV(F,B0) = i(P^F,B0) - mu(B0) - nu(B0) + 1",
                    None,
                    g.polar_route,
                    i_pf_b0 - *mu0 as i64 - nu0 + 1
                );
            }
            _ => skip!(
                "gsv_zero_divisor",
                "GSV(F,B0) = i(P^F,B0) - mu(B0) - nu(B0) + 1",
                "requires a reduced divisor"
            ),
        }

        // (xi) GSV via Milnor numbers and chi (non-dicritical, total union)
        match (&gsv_b0, &zero_curve_data, non_dicritical) {
            (Some(g), Some((QuotientDim::Finite(mu0), _, _)), true) => {
                for mode in both_modes {
                    row!(
                        "gsv_milnor_chi",
                        "GSV(F,C) = mu(F) - mu(C) - chi",
                        Some(mode),
                        g.polar_route,
                        mu_f as i64 - *mu0 as i64 - chi_of(mode) as i64
                    );
                }
            }
            _ => skip!(
                "gsv_milnor_chi",
                "GSV(F,C) = mu(F) - mu(C) - chi",
                "stated for non-dicritical foliations with the total union"
            ),
        }

        // (xii) GSV equals the Tjurina difference
        match &gsv_b0 {
            Some(g) => {
                let tau_fc = tjurina_foliation(form, &zero_poly)?;
                let tau_c = tjurina_curve(&zero_poly)?;
                row!(
                    "gsv_tjurina_difference",
                    "tau(F,C) - tau(C) = GSV(F,C)",
                    None,
                    tau_fc as i64 - tau_c as i64,
                    g.polar_route
                );
            }
            None => skip!(
                "gsv_tjurina_difference",
                "tau(F,C) - tau(C) = GSV(F,C)",
                "requires a reduced zero divisor"
            ),
        }

        // (xiii) Milnor/Tjurina difference with chi
        match (&zero_curve_data, non_dicritical) {
            (Some((QuotientDim::Finite(mu0), _, _)), true) => {
                let tau_fc = tjurina_foliation(form, &zero_poly)?;
                let tau_c = tjurina_curve(&zero_poly)?;
                for mode in both_modes {
                    row!(
                        "milnor_tjurina_difference",
                        "mu(F) - tau(F,C) = mu(C) - tau(C) + chi",
                        Some(mode),
                        mu_f as i64 - tau_fc as i64,
                        *mu0 as i64 - tau_c as i64 + chi_of(mode) as i64
                    );
                }
            }
            _ => skip!(
                "milnor_tjurina_difference",
                "mu(F) - tau(F,C) = mu(C) - tau(C) + chi",
                "stated for non-dicritical foliations with the total union"
            ),
        }

        // (xiv) Tjurina-sum excess over the divisor, both modes
        let xiv_ready = zero_reduced && data.iter().all(|d| d.adapted.is_some());
        if xiv_ready {
            let mut correction = 0i64;
            let mut bracket = 0i64;
            for (i, d) in data.iter().enumerate() {
                bracket += d.weight * (d.mu_dfb_b.unwrap() - d.tau_curve as i64);
                // i(B, (F_B)_0 \ B) - i(B, (F_B)_infty) over the adapted divisor
                let adapted = d.adapted.as_ref().unwrap();
                let mut through = 0i64;
                for other in adapted.branches() {
                    if other.name == d.name {
                        continue;
                    }
                    let idx = data.iter().position(|x| x.name == other.name).unwrap();
                    let iv = inter[i][idx];
                    if other.weight > 0 {
                        through += iv;
                    } else {
                        through -= iv;
                    }
                }
                correction += d.weight * through;
            }
            for mode in both_modes {
                row!(
                    "tjurina_sum_excess",
                    "mu(F) - T(F,B) = sum a_B [mu(dF_B,B) - tau(B)] - deg(B) + 1 + chi - sum a_B [i(B,(F_B)0\\B) - i(B,(F_B)inf)]",
                    Some(mode),
                    mu_f as i64 - tjurina_total,
                    bracket - deg_b + 1 + chi_of(mode) as i64 - correction
                );
            }
        } else {
            skip!(
                "tjurina_sum_excess",
                "mu(F) - T(F,B) = sum a_B [mu(dF_B,B) - tau(B)] - deg(B) + 1 + chi - sum a_B [i(B,(F_B)0\\B) - i(B,(F_B)inf)]",
                "requires a reduced divisor with adapted equations for every branch"
            );
        }

        // (xv) non-dicritical Tjurina sum
        match (&zero_curve_data, non_dicritical) {
            (Some((QuotientDim::Finite(mu0), _, _)), true) => {
                let zero_idx: Vec<usize> = data
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| d.weight > 0)
                    .map(|(i, _)| i)
                    .collect();
                let tau_sum: i64 = zero_idx.iter().map(|&i| data[i].tau_curve as i64).sum();
                let mut cross = 0i64;
                for &i in &zero_idx {
                    for &j in &zero_idx {
                        if i != j {
                            cross += inter[i][j];
                        }
                    }
                }
                for mode in both_modes {
                    row!(
                        "tjurina_sum_nondicritical",
                        "mu(F) - T(F,C) = mu(C) - sum tau(C_j) + chi - sum i(C_j, C\\C_j)",
                        Some(mode),
                        mu_f as i64 - tjurina_total,
                        *mu0 as i64 - tau_sum + chi_of(mode) as i64 - cross
                    );
                }
            }
            _ => skip!(
                "tjurina_sum_nondicritical",
                "mu(F) - T(F,C) = mu(C) - sum tau(C_j) + chi - sum i(C_j, C\\C_j)",
                "stated for non-dicritical foliations with the total union"
            ),
        }

        // (xvi) tangency against the divisor on probe branches
        for pr in &probe_reports {
            row!(
                "tangency_via_excess",
                "i(B_div, B) = tang(F,B) - sum nu_q(B) xi_q + 1",
                None,
                pr.i_divisor.unwrap_or(0),
                pr.tang as i64 - pr.xi_weighted as i64 + 1
            );
        }

        // (xvii) generalized-curve criterion via the polar excess
        match delta_b0 {
            Some(d0) => {
                row!(
                    "generalized_curve_polar_excess",
                    "Delta(F,B0) = 0 iff generalized curve",
                    None,
                    (d0 == 0) as i64,
                    flags.generalized_curve as i64
                );
            }
            None => skip!(
                "generalized_curve_polar_excess",
                "Delta(F,B0) = 0 iff generalized curve",
                "adapted equations unavailable for some zero branch"
            ),
        }
    }

    let divisor_report = DivisorReport {
        degree: divisor.degree(),
        nu_weighted: divisor.weighted_multiplicity(),
        nu_support: divisor.support_multiplicity(),
        reduced: divisor.is_reduced(),
        effective: divisor.is_effective(),
        balanced,
        delta_b0,
        delta_b,
        gsv_b0,
        tjurina_sum: tjurina_total,
        certificate: cert,
    };

    Ok(InvariantReport {
        nu_f,
        mu_f,
        xi,
        chi_literal,
        chi_polar,
        chi_mode: opts.chi_mode,
        flags,
        tree: summary,
        branches: branch_reports,
        divisor: Some(divisor_report),
        probes: probe_reports,
        identities,
        route_disagreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::poly2::Vars;
    use crate::foliation::tests::{dulac, family_fk, four_xy, p, radial, saddle_node};

    fn divisor(entries: Vec<(&str, Poly2, i64)>) -> SeparatrixDivisor {
        SeparatrixDivisor::new(
            Vars::xy(),
            entries
                .into_iter()
                .map(|(n, f, w)| (n.to_string(), f, w))
                .collect(),
        )
        .unwrap()
    }

    fn analyze_with(
        form: &OneForm,
        div: &SeparatrixDivisor,
        probes: &[(String, Poly2)],
    ) -> InvariantReport {
        analyze(form, Some(div), probes, &AnalysisOptions::default()).unwrap()
    }

    fn row<'a>(rep: &'a InvariantReport, id: &str, mode: Option<ChiMode>) -> &'a IdentityRow {
        rep.identities
            .iter()
            .find(|r| r.id == id && r.mode == mode)
            .unwrap_or_else(|| panic!("row {id} {mode:?} missing"))
    }

    #[test]
    fn standalone_polar_excess() {
        let form = radial();
        let div = divisor(vec![
            ("x", p("1 x"), 1),
            ("y", p("1 y"), 1),
            ("x-y", p("1 x | -1 y"), 1),
            ("x+y", p("1 x | 1 y"), -1),
        ]);
        let tree = crate::resolution::reduce(&form, &crate::resolution::ReduceOptions::default())
            .unwrap();
        let cert = attach_branches(&tree, &form, &div).unwrap();
        for name in ["x", "y", "x-y", "x+y"] {
            assert_eq!(polar_excess(&form, &div, &cert, name, 0).unwrap(), 0);
        }
        // the dicritical family: Delta(F, B1) = 4, Delta(F, B2) = 2
        let form = family_fk(3, 0);
        let div = divisor(vec![("B1", p("1 y"), 1), ("B2", p("1 x"), 1)]);
        let tree = crate::resolution::reduce(&form, &crate::resolution::ReduceOptions::default())
            .unwrap();
        let cert = attach_branches(&tree, &form, &div).unwrap();
        assert_eq!(polar_excess(&form, &div, &cert, "B1", 0).unwrap(), 4);
        assert_eq!(polar_excess(&form, &div, &cert, "B2", 0).unwrap(), 2);
    }

    #[test]
    fn adapted_differential_independent_of_divisor_choice() {
        // the polar intersection of the adapted balanced differential with
        // a branch does not depend on which adapted divisor is used
        let form = radial();
        let tree = crate::resolution::reduce(&form, &crate::resolution::ReduceOptions::default())
            .unwrap();
        let small = divisor(vec![("x", p("1 x"), 1), ("y", p("1 y"), 1)]);
        let full = divisor(vec![
            ("x", p("1 x"), 1),
            ("y", p("1 y"), 1),
            ("x-y", p("1 x | -1 y"), 1),
            ("x+y", p("1 x | 1 y"), -1),
        ]);
        let mut values = Vec::new();
        for div in [&small, &full] {
            let cert = attach_branches(&tree, &form, div).unwrap();
            let adapted = div.adapted_to("x", &cert).unwrap();
            let (num, den) = adapted.adapted_equation("x").unwrap();
            let src = PolarSource::differential(num, den);
            values.push(generic_polar_intersection(&src, &p("1 x"), 0).unwrap());
        }
        assert_eq!(values[0], values[1]);
    }

    #[test]
    fn gsv_examples() {
        for k in 1..=3u32 {
            let form = saddle_node(k, 1);
            let g = gsv(&form, &p("1 x y"), 0).unwrap();
            assert!(g.agree);
            assert_eq!(g.polar_route, k as i64);
            assert_eq!(gsv(&form, &p("1 x"), 0).unwrap().polar_route, 1);
            assert_eq!(gsv(&form, &p("1 y"), 0).unwrap().polar_route, k as i64 + 1);
        }
        let g = gsv(&dulac(2), &p("1 x"), 0).unwrap();
        assert!(g.agree);
        assert_eq!(g.polar_route, 1);
        let g = gsv(&four_xy(), &p("1 y"), 0).unwrap();
        assert!(g.agree);
        assert_eq!(g.polar_route, 2);
    }

    #[test]
    fn saddle_node_polar_intersection_with_union() {
        // i(P^F, xy) = k + 2 for the saddle-node normal form (1 along the
        // strong branch, k+1 along the weak one)
        for k in 1..=3u32 {
            let form = saddle_node(k, 1);
            let src = PolarSource::Foliation(form);
            let i_x = generic_polar_intersection(&src, &p("1 x"), 0).unwrap();
            let i_y = generic_polar_intersection(&src, &p("1 y"), 0).unwrap();
            assert_eq!(i_x, 1);
            assert_eq!(i_y, k as i64 + 1);
            assert_eq!(i_x + i_y, k as i64 + 2);
        }
    }

    #[test]
    fn gsv_adjunction_on_saddle_node() {
        // GSV(F, C1 u C2) = GSV(F,C1) + GSV(F,C2) - 2 i(C1,C2)
        for k in 1..=3u32 {
            let form = saddle_node(k, 0);
            let g_union = gsv(&form, &p("1 x y"), 0).unwrap().polar_route;
            let g1 = gsv(&form, &p("1 x"), 0).unwrap().polar_route;
            let g2 = gsv(&form, &p("1 y"), 0).unwrap().polar_route;
            assert_eq!(g_union, g1 + g2 - 2);
        }
    }

    #[test]
    fn tjurina_examples() {
        for k in 1..=3u32 {
            assert_eq!(
                tjurina_foliation(&saddle_node(k, 1), &p("1 x y")).unwrap(),
                (k + 1) as u64
            );
        }
        assert_eq!(tjurina_foliation(&dulac(2), &p("1 x")).unwrap(), 1);
        assert_eq!(tjurina_foliation(&four_xy(), &p("1 y")).unwrap(), 2);

        let d = divisor(vec![("B1", p("1 y"), 1), ("B2", p("1 x"), 1)]);
        assert_eq!(tjurina_sum(&family_fk(3, 0), &d).unwrap(), 8);
        let d = divisor(vec![("x", p("1 x"), 1), ("y", p("1 y"), 1)]);
        assert_eq!(tjurina_sum(&radial(), &d).unwrap(), 2);
        let d = divisor(vec![("C", p("1 x"), 1)]);
        assert_eq!(tjurina_sum(&dulac(2), &d).unwrap(), 1);
    }

    #[test]
    fn radial_report() {
        let div = divisor(vec![
            ("x", p("1 x"), 1),
            ("y", p("1 y"), 1),
            ("x-y", p("1 x | -1 y"), 1),
            ("x+y", p("1 x | 1 y"), -1),
        ]);
        let rep = analyze_with(&radial(), &div, &[]);
        assert_eq!(rep.mu_f, 1);
        assert!(rep.flags.generalized_curve);
        let d = rep.divisor.as_ref().unwrap();
        assert_eq!(d.delta_b0, Some(0));
        assert_eq!(d.degree, 2);
        assert!(d.balanced);
        // row (ii): 0 = 3 + 3 - 4 - 3 + 1
        let r = row(&rep, "polar_excess_reduced_zero", None);
        assert_eq!(r.status, RowStatus::Pass);
        assert_eq!((r.lhs, r.rhs), (Some(0), Some(0)));
        assert!(rep.all_pass(), "{:#?}", rep.identities);
        assert!(!rep.route_disagreement);
    }

    #[test]
    fn radial_report_with_empty_pole_part() {
        // the two-line divisor: the pole part is a unit, so i(B0, Binf) = 0,
        // mu(B0) = 1, nu(B0) = 2
        let div = divisor(vec![("x", p("1 x"), 1), ("y", p("1 y"), 1)]);
        let rep = analyze_with(&radial(), &div, &[]);
        let d = rep.divisor.as_ref().unwrap();
        assert!(d.balanced);
        assert_eq!(d.delta_b0, Some(0));
        assert_eq!(d.tjurina_sum, 2);
        let r = row(&rep, "polar_excess_reduced_zero", None);
        assert_eq!(r.status, RowStatus::Pass);
        assert!(rep.all_pass(), "{:#?}", rep.identities);
    }

    #[test]
    fn non_reduced_divisor_degrades_to_skips() {
        // a weight-2 dicritical branch with no partner: adapted equations
        // are unavailable, so the polar-excess rows are skipped, not failed
        let div = divisor(vec![("x", p("1 x"), 2)]);
        let rep = analyze_with(&radial(), &div, &[]);
        let d = rep.divisor.as_ref().unwrap();
        assert!(d.balanced);
        assert!(!d.reduced);
        assert_eq!(d.delta_b0, None);
        let statuses: Vec<_> = rep
            .identities
            .iter()
            .filter(|r| r.id.starts_with("polar_excess"))
            .map(|r| r.status)
            .collect();
        assert!(statuses.iter().all(|s| *s != RowStatus::Fail));
        assert!(statuses.contains(&RowStatus::Skipped));
        assert!(rep.all_pass());
    }

    #[test]
    fn family_report() {
        let div = divisor(vec![("B1", p("1 y"), 1), ("B2", p("1 x"), 1)]);
        let rep = analyze_with(&family_fk(3, 0), &div, &[]);
        assert_eq!(rep.nu_f, 3);
        assert_eq!(rep.mu_f, 15);
        assert_eq!(rep.xi, 2);
        assert_eq!(rep.chi_literal, 8);
        assert_eq!(rep.chi_polar, 8);
        let d = rep.divisor.as_ref().unwrap();
        assert_eq!(d.tjurina_sum, 8);
        assert_eq!(d.delta_b, Some(6));
        // Theorem rows: 15 - 8 = 2 - 2 + 1 + 8 - 2 and Delta = 15 - 2 + 2 - 1 - 8
        let r = row(&rep, "tjurina_sum_excess", Some(ChiMode::Polar));
        assert_eq!(r.status, RowStatus::Pass);
        assert_eq!((r.lhs, r.rhs), (Some(7), Some(7)));
        let r = row(&rep, "polar_excess_main", Some(ChiMode::Polar));
        assert_eq!((r.lhs, r.rhs), (Some(6), Some(6)));
        assert!(rep.all_pass(), "{:#?}", rep.identities);
    }

    #[test]
    fn dulac_report() {
        for n in [2u32, 3] {
            let div = divisor(vec![("C", p("1 x"), 1)]);
            let probes = vec![("y".to_string(), p("1 y"))];
            let rep = analyze_with(&dulac(n), &div, &probes);
            assert_eq!(rep.mu_f, 1);
            assert_eq!(rep.xi, 1);
            assert_eq!(rep.chi_polar, 0);
            assert!(!rep.flags.second_type);
            let d = rep.divisor.as_ref().unwrap();
            assert_eq!(d.tjurina_sum, 1);
            // second-type equality holds even though the flag is false
            let r = row(&rep, "tjurina_sum_excess", Some(ChiMode::Polar));
            assert_eq!(r.status, RowStatus::Pass);
            assert_eq!((r.lhs, r.rhs), (Some(0), Some(0)));
            assert!(rep.all_pass(), "n={n}: {:#?}", rep.identities);
            // probe row: i((x), y) = 1 = n - n + 1... for n=2: 1 = 2 - 2 + 1
            if n == 2 {
                let pr = &rep.probes[0];
                assert_eq!(pr.tang, 2);
                assert_eq!(pr.xi_weighted, 2);
                assert_eq!(pr.i_divisor, Some(1));
            }
        }
    }

    #[test]
    fn four_xy_report() {
        let div = divisor(vec![("C", p("1 y"), 1)]);
        let probes = vec![("cubic".to_string(), p("1 y | -1 x^3"))];
        let rep = analyze_with(&four_xy(), &div, &probes);
        assert_eq!(rep.nu_f, 1);
        assert_eq!(rep.mu_f, 3);
        assert_eq!(rep.chi_polar, 1);
        assert_eq!(rep.chi_literal, 2);
        assert!(!rep.flags.second_type);
        let b = &rep.branches[0];
        assert_eq!(b.tau_f_b, 2);
        assert_eq!(b.tau_curve, 0);
        assert_eq!(b.gsv.polar_route, 2);
        assert_eq!(b.gsv.tjurina_route, 2);
        // gsv_milnor_chi passes in polar mode, fails in literal mode
        let r = row(&rep, "gsv_milnor_chi", Some(ChiMode::Polar));
        assert_eq!(r.status, RowStatus::Pass);
        let r = row(&rep, "gsv_milnor_chi", Some(ChiMode::Literal));
        assert_eq!(r.status, RowStatus::Fail);
        assert!(rep.all_pass(), "{:#?}", rep.identities);
        // probe: 3 = 4 - 2 + 1
        let pr = &rep.probes[0];
        assert_eq!(pr.tang, 4);
        assert_eq!(pr.xi_weighted, 2);
        assert_eq!(pr.i_divisor, Some(3));
        let r = row(&rep, "tangency_via_excess", None);
        assert_eq!(r.status, RowStatus::Pass);
        assert_eq!((r.lhs, r.rhs), (Some(3), Some(3)));
    }

    #[test]
    fn cusp_foliation_polar_excess_vs_naive_difference() {
        // 2x dy - 3y dx with C: y^2 = x^3. The naive polar difference is -1,
        // the adapted polar excess is 0.
        let form = OneForm::new(p("-3 y"), p("2 x")).unwrap();
        let c = p("1 y^2 | -1 x^3");
        let naive = {
            let src_f = PolarSource::Foliation(form.clone());
            let src_df = PolarSource::differential(c.clone(), Poly2::one(Vars::xy()));
            generic_polar_intersection(&src_f, &c, 0).unwrap()
                - generic_polar_intersection(&src_df, &c, 0).unwrap()
        };
        assert_eq!(naive, -1);
        let div = divisor(vec![
            ("x", p("1 x"), 1),
            ("y", p("1 y"), 1),
            ("cusp", c.clone(), 1),
            ("cusp2", p("1 y^2 | -2 x^3"), -1),
        ]);
        let rep = analyze_with(&form, &div, &[]);
        let d = rep.divisor.as_ref().unwrap();
        assert!(d.balanced, "{:#?}", d.certificate.failures);
        let b = rep.branches.iter().find(|b| b.name == "cusp").unwrap();
        assert_eq!(b.delta, Some(0));
        assert!(rep.flags.generalized_curve);
        assert_eq!(d.delta_b0, Some(0));
        assert!(rep.all_pass(), "{:#?}", rep.identities);
    }

    #[test]
    fn saddle_node_reports() {
        for k in 1..=3 {
            for lambda in [0, 1] {
                let form = saddle_node(k, lambda);
                let div = divisor(vec![("strong", p("1 x"), 1), ("weak", p("1 y"), 1)]);
                let rep = analyze_with(&form, &div, &[]);
                assert_eq!(rep.mu_f, (k + 1) as u64);
                assert!(rep.flags.second_type);
                assert!(!rep.flags.generalized_curve);
                assert_eq!(rep.chi_literal, 0);
                assert_eq!(rep.chi_polar, 0);
                let weak = rep.branches.iter().find(|b| b.name == "weak").unwrap();
                assert_eq!(weak.ind, Some((k + 1) as u64));
                assert_eq!(weak.gsv.polar_route, (k + 1) as i64);
                let strong = rep.branches.iter().find(|b| b.name == "strong").unwrap();
                assert_eq!(strong.gsv.polar_route, 1);
                assert!(rep.all_pass(), "k={k} l={lambda}: {:#?}", rep.identities);
            }
        }
    }

    #[test]
    fn smooth_branch_gsv_matches_multiplicity() {
        // for non-singular separatrices mu(F,B) = GSV(F,B)
        let cases: Vec<(OneForm, Poly2)> = vec![
            (dulac(2), p("1 x")),
            (four_xy(), p("1 y")),
            (radial(), p("1 x | -1 y")),
            (saddle_node(2, 0), p("1 y")),
        ];
        for (form, branch) in cases {
            let b = PlaneCurve::reduced(branch.clone()).unwrap();
            let m = multiplicity_along(&PolarSource::Foliation(form.clone()), &b, 0).unwrap();
            let g = gsv(&form, &branch, 0).unwrap();
            assert!(g.agree);
            assert_eq!(m, g.polar_route, "branch {branch}");
        }
    }

    #[test]
    fn hamiltonian_identities_small() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(77);
        let mut done = 0;
        while done < 5 {
            // two or three coprime smooth-ish random branches
            let n_branches = 2 + (rng.gen_range(0..2) as usize);
            let mut branches: Vec<Poly2> = Vec::new();
            for _ in 0..n_branches {
                let a = rng.gen_range(1..=3i64);
                let b = rng.gen_range(-3..=3i64);
                let e = rng.gen_range(1..=2u32);
                // a y + b x^e-ish irreducible germs, or a cusp
                let cand = match rng.gen_range(0..3) {
                    0 => Poly2::monomial(Vars::xy(), crate::FieldElement::from_int(a), 0, 1)
                        .add(&Poly2::monomial(
                            Vars::xy(),
                            crate::FieldElement::from_int(if b == 0 { 1 } else { b }),
                            e,
                            0,
                        )),
                    1 => p("1 y^2 | -1 x^3"),
                    _ => Poly2::monomial(Vars::xy(), crate::FieldElement::from_int(a), 1, 0)
                        .add(&Poly2::monomial(
                            Vars::xy(),
                            crate::FieldElement::from_int(if b == 0 { 2 } else { b }),
                            0,
                            2,
                        )),
                };
                if branches
                    .iter()
                    .all(|f| f.gcd(&cand).unwrap().degree().unwrap_or(0) == 0)
                {
                    branches.push(cand);
                }
            }
            if branches.len() < 2 {
                continue;
            }
            let f = branches
                .iter()
                .fold(Poly2::one(Vars::xy()), |acc, b| acc.mul(b));
            if f.degree().unwrap_or(0) > 5 {
                continue;
            }
            let form = match OneForm::hamiltonian(&f) {
                Ok(x) => x,
                Err(_) => continue,
            };
            let entries: Vec<(String, Poly2, i64)> = branches
                .iter()
                .enumerate()
                .map(|(i, b)| (format!("b{i}"), b.clone(), 1))
                .collect();
            let div = match SeparatrixDivisor::new(Vars::xy(), entries) {
                Ok(d) => d,
                Err(_) => continue,
            };
            let rep = match analyze(&form, Some(&div), &[], &AnalysisOptions::default()) {
                Ok(r) => r,
                Err(Error::NotInvariant) => continue,
                Err(e) => panic!("{e}"),
            };
            if !rep.divisor.as_ref().unwrap().balanced {
                continue;
            }
            let mu_c = milnor_curve(&f).unwrap().finite().unwrap();
            assert_eq!(rep.mu_f, mu_c, "mu(df) = mu(C) for {f}");
            assert_eq!(rep.chi_literal, 0);
            assert_eq!(rep.chi_polar, 0);
            assert_eq!(rep.xi, 0);
            assert_eq!(rep.divisor.as_ref().unwrap().delta_b0, Some(0));
            let g = rep.divisor.as_ref().unwrap().gsv_b0.unwrap();
            assert_eq!(g.polar_route, 0);
            assert!(rep.all_pass(), "hamiltonian of {f}: {:#?}", rep.identities);
            done += 1;
        }
    }
}
