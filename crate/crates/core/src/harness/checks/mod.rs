//! Executable checks. Each returns a [`CheckReport`]; missing inputs become
//! skipped cases, never errors.

mod algebra;
mod alternants;
mod consistency;
mod stable;


use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::harness::fixtures::FixtureSet;
use crate::harness::report::CheckReport;
use crate::macdonald::{self, nabla, to_polynomial};
use crate::negut::epsilon;
use crate::par;
use crate::partition::{FrobeniusHook, Partition, TriangularPartition};
use crate::qt::QTPoly;
use crate::symfunc::{e_perp, Basis, SymExpr};
use crate::tensor::{decompose_qt, TensorExpr};

pub const CHECK_IDS: &[&str] = &[
    "chk.negut_nabla",
    "chk.nabla_fixtures",
    "chk.two_row",
    "chk.whittaker",
    "chk.conjugation",
    "chk.hook_components",
    "chk.hook_alternants",
    "chk.skew_nabla",
    "chk.delta_property",
    "chk.nabla_hook",
    "chk.e1_staircase",
    "chk.commutator",
    "chk.length_conjecture",
    "chk.stability",
    "chk.f_properties",
    "chk.principal_eval",
    "chk.fixtures_selfconsistency",
];

/// Statements whose failure indicates a bug rather than a falsification.
pub const PROVED: &[&str] = &["chk.negut_nabla", "chk.two_row", "chk.whittaker"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckParams {
    /// Overrides each check's own bound on `|τ|`.
    pub max_size: Option<usize>,
    /// Largest `n` for which `E_τ^(n)` is computed.
    pub max_n: usize,
}

impl Default for CheckParams {
    fn default() -> Self {
        CheckParams { max_size: None, max_n: 9 }
    }
}

impl CheckParams {
    pub fn size(&self, default: usize) -> usize {
        self.max_size.unwrap_or(default)
    }
}

pub(crate) struct Ctx<'a> {
    pub params: &'a CheckParams,
    pub fixtures: &'a FixtureSet,
}

impl Ctx<'_> {
    pub fn feasible(&self, n: usize) -> bool {
        n <= self.params.max_n
    }

    fn bound_error(&self, n: usize) -> Error {
        Error::SizeBound { size: n, bound: self.params.max_n }
    }

    pub fn eps(&self, tau: &TriangularPartition, n: usize) -> Result<SymExpr<QTPoly>> {
        if !self.feasible(n) {
            return Err(self.bound_error(n));
        }
        Ok((*epsilon(tau, n)?).clone())
    }

    /// `E_τ^(n)|_{≤2}` in tensor form.
    pub fn etensor(&self, tau: &TriangularPartition, n: usize) -> Result<TensorExpr> {
        if !self.feasible(n) {
            return Err(self.bound_error(n));
        }
        decompose_qt(&*epsilon(tau, n)?)
    }

    /// `A_τ` (its length-≤2 part when `min(ℓ, ℓ') ≥ 3`), read at `n = ℓ(τ)+1`.
    pub fn alternant(&self, tau: &TriangularPartition) -> Result<SymExpr<i64>> {
        let n = tau.len() + 1;
        Ok(crate::tensor::alternant(&self.etensor(tau, n)?, n))
    }

    /// The tabulated `A` of `τ`, or of `τ'`, with the id used.
    pub fn a_fixture(&self, tau: &Partition) -> Option<(String, SymExpr<i64>)> {
        [tau.clone(), tau.conjugate()].iter().find_map(|p| {
            let id = format!("A.{}", fixture_key(p));
            self.fixtures.sym(&id).ok().map(|a| (id, a))
        })
    }
}

/// `τ` written as in fixture ids: parts run together, `0` for the empty partition.
pub fn fixture_key(tau: &Partition) -> String {
    if tau.is_empty() {
        "0".into()
    } else {
        tau.parts().iter().map(|p| p.to_string()).collect()
    }
}

pub(crate) fn tri(p: &Partition) -> Option<TriangularPartition> {
    TriangularPartition::new(p.clone()).ok()
}

/// `min(ℓ(τ), ℓ(τ'))`.
pub(crate) fn min_len(p: &Partition) -> usize {
    p.len().min(p.conjugate().len())
}

/// `e_k^⊥` on the left factor.
pub(crate) fn left_e_perp(t: &TensorExpr, k: usize) -> TensorExpr {
    t.map_left(|l| e_perp(k, &SymExpr::s(l.parts())))
}

/// Hooks `(a|ℓ)` of size `n`.
pub(crate) fn hooks(n: usize) -> Vec<FrobeniusHook> {
    (0..n).map(|a| FrobeniusHook { arm: a, leg: n - 1 - a }).collect()
}

/// `(−1/qt)^e s_{(a|ℓ)}`.
pub(crate) fn scaled_hook(a: usize, leg: usize, e: i32) -> SymExpr<QTPoly> {
    let sign = if e.rem_euclid(2) == 0 { 1 } else { -1 };
    SymExpr::from_terms(Basis::Schur, [(FrobeniusHook { arm: a, leg }.to_partition(), QTPoly::monomial(sign, -e, -e))])
}

/// `∇` of a `(q,t)` expression as a polynomial expression.
pub(crate) fn nabla_poly(f: &SymExpr<QTPoly>) -> Result<SymExpr<QTPoly>> {
    to_polynomial(&nabla(f)?)
}

pub(crate) fn tensor_diff(expected: &TensorExpr, actual: &TensorExpr) -> String {
    format!("expected − actual = {}", expected - actual)
}

pub(crate) fn sym_diff<R: crate::symfunc::Coeff>(expected: &SymExpr<R>, actual: &SymExpr<R>) -> String {
    format!("expected − actual = {}", expected - actual)
}

/// Triangular partitions of size at most `max`, ordered by size then reverse lex.
pub(crate) fn triangular_upto(max: usize) -> Vec<TriangularPartition> {
    crate::partition::enumerate_triangular(max)
}

fn run(id: &str, ctx: &Ctx) -> Option<CheckReport> {
    Some(match id {
        "chk.negut_nabla" => algebra::negut_nabla(ctx),
        "chk.nabla_fixtures" => algebra::nabla_fixtures(ctx),
        "chk.two_row" => algebra::two_row(ctx),
        "chk.whittaker" => algebra::whittaker(ctx),
        "chk.conjugation" => alternants::conjugation(ctx),
        "chk.hook_components" => alternants::hook_components(ctx),
        "chk.hook_alternants" => alternants::hook_alternants(ctx),
        "chk.skew_nabla" => algebra::skew_nabla(ctx),
        "chk.delta_property" => algebra::delta_property(ctx),
        "chk.nabla_hook" => algebra::nabla_hook(ctx),
        "chk.e1_staircase" => algebra::e1_staircase(ctx),
        "chk.commutator" => algebra::commutator(ctx),
        "chk.length_conjecture" => alternants::length_conjecture(ctx),
        "chk.stability" => stable::stability(ctx),
        "chk.f_properties" => stable::f_properties(ctx),
        "chk.principal_eval" => stable::principal_eval(ctx),
        "chk.fixtures_selfconsistency" => consistency::selfconsistency(ctx),
        _ => return None,
    })
}

/// Runs one check. Unknown ids are an error.
pub fn run_check(id: &str, params: &CheckParams, fixtures: &FixtureSet) -> Result<CheckReport> {
    if params.max_n > macdonald::size_bound() {
        macdonald::set_size_bound(params.max_n);
    }
    let ctx = Ctx { params, fixtures };
    run(id, &ctx).ok_or_else(|| Error::Unsupported(format!("unknown check {id:?}")))
}

/// Runs the given checks (all of them when `ids` is empty), reports in the order given.
pub fn run_checks(ids: &[&str], params: &CheckParams, fixtures: &FixtureSet) -> Result<Vec<CheckReport>> {
    let ids: Vec<&str> = if ids.is_empty() { CHECK_IDS.to_vec() } else { ids.to_vec() };
    if let Some(bad) = ids.iter().find(|id| !CHECK_IDS.contains(id)) {
        return Err(Error::Unsupported(format!("unknown check {bad:?}")));
    }
    let reports = par::map(&ids, |id| run_check(id, params, fixtures));
    let mut by_id = BTreeMap::new();
    for (id, r) in ids.iter().zip(reports) {
        by_id.insert(*id, r?);
    }
    Ok(ids.iter().map(|id| by_id[id].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::report::Status;
    use crate::partition::p;

    fn cheap(max_size: usize, max_n: usize) -> CheckParams {
        CheckParams { max_size: Some(max_size), max_n }
    }

    fn fixtures() -> FixtureSet {
        FixtureSet::builtin().unwrap()
    }

    #[test]
    fn unknown_ids_are_rejected() {
        let fx = fixtures();
        assert!(run_check("chk.nope", &CheckParams::default(), &fx).is_err());
        assert!(run_checks(&["chk.two_row", "chk.nope"], &CheckParams::default(), &fx).is_err());
    }

    #[test]
    fn proved_checks_pass_on_small_ranges() {
        let fx = fixtures();
        let reports = run_checks(&["chk.two_row", "chk.negut_nabla", "chk.nabla_fixtures"], &cheap(4, 5), &fx).unwrap();
        assert_eq!(reports.iter().map(|r| r.id.as_str()).collect::<Vec<_>>(), ["chk.two_row", "chk.negut_nabla", "chk.nabla_fixtures"]);
        for r in &reports {
            assert!(r.is_pass(), "{}", r.to_json_line());
        }
        assert!(reports[0].proved && !reports[2].proved);
    }

    #[test]
    fn out_of_range_cases_are_skipped() {
        let r = run_check("chk.negut_nabla", &cheap(4, 1), &fixtures()).unwrap();
        assert!(matches!(r.status, Status::Skipped { .. }));
        assert_eq!(r.skipped, 4);
    }

    #[test]
    fn commutator_reports_the_exponent_discrepancy() {
        let r = run_check("chk.commutator", &cheap(3, 3), &fixtures()).unwrap();
        assert!(r.is_fail());
        assert_eq!(r.counterexample().unwrap().case, "n = 3");
        assert!(r.notes.iter().any(|n| n.contains("1/1 failing cases agree")), "{:?}", r.notes);
    }

    #[test]
    fn staircase_chain_adds_cells_bottom_up() {
        assert_eq!(algebra::staircase_chain(3), vec![p(&[1]), p(&[1, 1]), p(&[2, 1])]);
        let c = algebra::staircase_chain(5);
        assert_eq!(c.len(), 5);
        assert_eq!(c[1], p(&[3, 2, 1, 1]));
        assert_eq!(c[4], p(&[4, 3, 2, 1]));
    }

    #[test]
    fn helpers() {
        assert_eq!(fixture_key(&p(&[4, 3, 2, 1])), "4321");
        assert_eq!(fixture_key(&Partition::empty()), "0");
        assert_eq!(min_len(&p(&[4, 1, 1])), 3);
        assert_eq!(min_len(&p(&[2, 1, 1, 1])), 2);
        assert_eq!(hooks(3).iter().map(|h| h.to_partition()).collect::<Vec<_>>(), [p(&[1, 1, 1]), p(&[2, 1]), p(&[3])]);
        let t = decompose_qt(&SymExpr::parse("(q + t)*s[2,1] + (q^2 + q*t + t^2)*s[1,1,1]").unwrap()).unwrap();
        assert_eq!(left_e_perp(&t, 1).to_string(), "1⊗s[2,1] + s[1]⊗s[1,1,1]");
        assert_eq!(scaled_hook(1, 0, 1).to_string(), "-q^-1*t^-1*s[2]");
    }
}
