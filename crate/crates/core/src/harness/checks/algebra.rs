//! Identities between Negut's expansion and Macdonald eigenoperators.

use crate::harness::report::{CheckReport, Recorder};
use crate::macdonald::{delta_prime, nabla, shat, to_polynomial};
use crate::partition::{p, staircase, subpartitions, Partition};
use crate::qt::{QTPoly, QTRational};
use crate::symfunc::{e_perp, Basis, SymExpr};
use crate::tensor::{decompose_qt, restrict, two_row_alternant, RightBasis, TensorExpr};

use super::{
    left_e_perp, min_len, nabla_poly, scaled_hook, sym_diff, tensor_diff, tri, triangular_upto, Ctx, PROVED,
};

fn recorder(id: &str, params: impl Into<String>) -> Recorder {
    Recorder::new(id, params, PROVED.contains(&id))
}

pub fn negut_nabla(ctx: &Ctx) -> CheckReport {
    let mut r = recorder("chk.negut_nabla", "2 <= n <= 5");
    for n in 2..=5 {
        let case = format!("delta({n}), n = {n}");
        let tau = tri(&staircase(n)).expect("staircases are triangular");
        let lhs = match ctx.eps(&tau, n) {
            Ok(e) => e,
            Err(e) => {
                r.skip(format!("{case}: {e}"));
                continue;
            }
        };
        match nabla_poly(&SymExpr::<QTPoly>::e(&[n]).to_schur()) {
            Ok(rhs) => r.compare(n, case, &rhs, &lhs, || sym_diff(&rhs, &lhs)),
            Err(e) => r.fail(n, case, "nabla(e_n)", e, ""),
        }
    }
    r.finish()
}

pub fn nabla_fixtures(ctx: &Ctx) -> CheckReport {
    let mut r = recorder("chk.nabla_fixtures", "nabla.* fixtures");
    for f in ctx.fixtures.with_prefix("nabla.") {
        let of: Option<Vec<usize>> = f.raw.get("of").and_then(|v| serde_json::from_value(v.clone()).ok());
        let Some(of) = of else {
            r.skip(format!("{}: no \"of\" field", f.id));
            continue;
        };
        let expected = match ctx.fixtures.tensor(&f.id) {
            Ok(t) => t,
            Err(e) => {
                r.skip(format!("{}: {e}", f.id));
                continue;
            }
        };
        let actual = nabla_poly(&SymExpr::<QTPoly>::s(&of)).and_then(|x| decompose_qt(&x));
        match actual {
            Ok(a) => r.compare(of.iter().sum(), f.id.clone(), &expected, &a, || tensor_diff(&expected, &a)),
            Err(e) => r.fail(of.iter().sum(), f.id.clone(), &expected, e, ""),
        }
    }
    r.finish()
}

/// `e_2^⊥A ⊗ s_3 + e_1^⊥A ⊗ s_21 + A ⊗ s_111`.
fn two_row_e3(a: &SymExpr<i64>) -> TensorExpr {
    let s = RightBasis::Schur;
    &(&TensorExpr::tensor(&e_perp(2, a), s, &p(&[3])) + &TensorExpr::tensor(&e_perp(1, a), s, &p(&[2, 1])))
        + &TensorExpr::tensor(a, s, &p(&[1, 1, 1]))
}

pub fn two_row(ctx: &Ctx) -> CheckReport {
    let max_a = ctx.params.size(7);
    let mut r = recorder("chk.two_row", format!("triangular (a,b), a <= {max_a}"));
    for a in 0..=max_a {
        for b in 0..=a {
            let Ok(formula) = two_row_alternant(a, b) else { continue };
            let tau = tri(&Partition::from_unsorted(vec![a, b])).expect("formula accepted it");
            let w = a + b;
            let case = format!("({a},{b})");
            let e = match ctx.etensor(&tau, 3) {
                Ok(e) => e,
                Err(e) => {
                    r.skip(format!("{case}: {e}"));
                    continue;
                }
            };
            let alt = crate::tensor::alternant(&e, 3);
            r.compare(w, format!("A{case}"), &formula, &alt, || sym_diff(&formula, &alt));
            let expected = two_row_e3(&formula);
            r.compare(w, format!("E^(3){case}"), &expected, &e, || tensor_diff(&expected, &e));
            if let Ok(big) = two_row_alternant(a + 2, b + 1) {
                let got = e_perp(2, &big);
                r.compare(w + 3, format!("e2perp A({},{})", a + 2, b + 1), &formula, &got, || sym_diff(&formula, &got));
            }
        }
    }
    r.finish()
}

/// `E_τ^(n)(q, 0)` against `q^{|τ|−η(μ)} W_μ`.
fn whittaker_case(ctx: &Ctx, r: &mut Recorder, tau: &crate::partition::TriangularPartition, n: usize) {
    let case = format!("{tau}, n = {n}");
    let weight = tau.size() * 16 + n;
    let e = match ctx.eps(tau, n) {
        Ok(e) => e,
        Err(e) => {
            r.skip(format!("{case}: {e}"));
            return;
        }
    };
    let at_t0 = match e.try_map_coeffs(|c| c.specialize(None, Some(0))) {
        Ok(x) => x,
        Err(err) => {
            r.fail(weight, case, "t = 0 specialization", err, "");
            return;
        }
    };
    let mu = crate::partition::whittaker_index(tau, n).expect("n >= l + m");
    let shift = tau.size() as i32 - mu.eta() as i32;
    match crate::macdonald::whittaker(&mu) {
        Ok(w) => {
            let rhs = w.map_coeffs(|c| c.shift(shift, 0));
            r.compare(weight, case, &rhs, &at_t0, || sym_diff(&rhs, &at_t0));
        }
        Err(err) => r.skip(format!("{case}: {err}")),
    }
}

pub fn whittaker(ctx: &Ctx) -> CheckReport {
    let max = ctx.params.size(5);
    let mut r = recorder("chk.whittaker", format!("|tau| <= {max}, n in {{l+m, l+m+1}}; W.411, E.321.n6.le1"));
    for tau in triangular_upto(max) {
        let n0 = crate::tensor::stabilization_start(tau.partition());
        for n in n0..=n0 + 1 {
            whittaker_case(ctx, &mut r, &tau, n);
        }
    }
    let fx = ctx.fixtures;
    match (fx.get("W.411"), fx.sym_qt("W.411")) {
        (Some(f), Ok(w)) => {
            let mu: Partition = f
                .raw
                .get("mu")
                .and_then(|v| serde_json::from_value(v.clone()).ok())
                .unwrap_or_else(|| p(&[4, 1, 1]));
            match crate::macdonald::whittaker(&mu) {
                Ok(c) => r.compare(6, "W.411", &w, &c, || sym_diff(&w, &c)),
                Err(e) => r.skip(format!("W.411: {e}")),
            }
        }
        _ => r.skip("W.411: fixture missing"),
    }
    match fx.tensor("E.321.n6.le1") {
        Ok(expected) => {
            let tau = tri(&p(&[3, 2, 1])).expect("triangular");
            whittaker_case(ctx, &mut r, &tau, 6);
            match ctx.etensor(&tau, 6) {
                Ok(e) => {
                    let got = restrict(&e, 1);
                    r.compare(6, "E.321.n6.le1", &expected, &got, || tensor_diff(&expected, &got));
                }
                Err(e) => r.skip(format!("E.321.n6.le1: {e}")),
            }
        }
        Err(e) => r.skip(format!("E.321.n6.le1: {e}")),
    }
    r.finish()
}

/// `τ' + δ(m+1)` conjugated back: the staircase added along the columns.
fn column_lift(tau: &Partition, m: usize) -> Partition {
    tau.conjugate().partwise_add(&staircase(m + 1)).conjugate()
}

pub fn skew_nabla(ctx: &Ctx) -> CheckReport {
    let max = ctx.params.size(8);
    let mut r = recorder("chk.skew_nabla", format!("m <= 2, |tau + delta(m+1)| <= {max}; A fixtures for every m"));
    let mut columns = (0, 0);
    for tau in triangular_upto(max) {
        let m = min_len(&tau);
        if m == 0 || m > 2 {
            continue;
        }
        let mut lifts = vec![(tau.partwise_add(&staircase(m + 1)), true)];
        if tau.conjugate().len() < tau.len() {
            lifts.push((column_lift(&tau, m), false));
        }
        for (sigma, primary) in lifts {
            if sigma.size() > max {
                continue;
            }
            let Some(big) = tri(&sigma) else {
                r.note(format!("{sigma} is not triangular"));
                continue;
            };
            let n0 = crate::tensor::stabilization_start(&tau).max(sigma.len() + 1);
            for n in n0..=n0 + 1 {
                let case = format!("{tau} via {sigma}, n = {n}");
                let weight = sigma.size() * 16 + n;
                match (ctx.etensor(&big, n), ctx.etensor(&tau, n)) {
                    (Ok(eb), Ok(es)) => {
                        let got = left_e_perp(&eb, m);
                        if primary {
                            r.compare(weight, case, &es, &got, || tensor_diff(&es, &got));
                        } else {
                            columns.1 += 1;
                            columns.0 += usize::from(got == es);
                        }
                    }
                    (Err(e), _) | (_, Err(e)) if primary => r.skip(format!("{case}: {e}")),
                    _ => {}
                }
            }
        }
    }
    if columns.1 > 0 {
        r.note(format!("adding delta(m+1) to the columns when l(tau) > l(tau'): {}/{} cases agree", columns.0, columns.1));
    }
    for f in ctx.fixtures.with_prefix("A.") {
        let Some(tau) = f.tau.clone().or_else(|| crate::partition::Partition::parse(&f.id[2..]).ok()) else { continue };
        let m = min_len(&tau);
        if m == 0 {
            continue;
        }
        let sigma = tau.partwise_add(&staircase(m + 1));
        let big_id = format!("A.{}", super::fixture_key(&sigma));
        let (Ok(small), Ok(big)) = (ctx.fixtures.sym(&f.id), ctx.fixtures.sym(&big_id)) else { continue };
        let got = e_perp(m, &big);
        r.compare(sigma.size() * 16, format!("e{m}perp {big_id} = {}", f.id), &small, &got, || sym_diff(&small, &got));
    }
    r.finish()
}

/// `(e_k^⊥ E)|_{≤2}` when it is determined: from exact data, from a full
/// fixture, or trivially at `k = 0`.
fn e_perp_restricted(ctx: &Ctx, tau: &crate::partition::TriangularPartition, n: usize, k: usize) -> Option<crate::error::Result<TensorExpr>> {
    let id = format!("E.{}.n{n}", super::fixture_key(tau));
    if min_len(tau) <= 2 || k == 0 {
        return Some(ctx.etensor(tau, n).map(|e| restrict(&left_e_perp(&e, k), 2)));
    }
    ctx.fixtures.tensor(&id).ok().map(|e| Ok(restrict(&left_e_perp(&e, k), 2)))
}

pub fn delta_property(ctx: &Ctx) -> CheckReport {
    let max = ctx.params.size(10);
    let mut r = recorder("chk.delta_property", format!("dominant tau, n = l+1 <= 5, |tau| <= {max}, 0 <= k < n"));
    for tau in triangular_upto(max) {
        let n = tau.len() + 1;
        if tau.is_empty() || n > 5 || tau.len() > tau.part(0) {
            continue;
        }
        let Some(sigma) = tau.partwise_sub(&staircase(n)) else { continue };
        let Some(small) = tri(&sigma) else { continue };
        let inner = match ctx.eps(&small, n) {
            Ok(e) => e,
            Err(e) => {
                r.skip(format!("{tau}: {e}"));
                continue;
            }
        };
        for k in 0..n {
            let case = format!("{tau}, n = {n}, k = {k}");
            let weight = tau.size() * 16 + k;
            let Some(lhs) = e_perp_restricted(ctx, &tau, n, k) else {
                r.skip(format!("{case}: needs the length-3 part of E"));
                continue;
            };
            let rhs = delta_prime(n - k - 1, &inner).and_then(|x| to_polynomial(&x)).and_then(|x| decompose_qt(&x));
            match (lhs, rhs) {
                (Ok(l), Ok(rr)) => r.compare(weight, case, &rr, &l, || tensor_diff(&rr, &l)),
                (Err(e), _) => r.skip(format!("{case}: {e}")),
                (_, Err(e)) => r.fail(weight, case, "Delta' image", e, ""),
            }
        }
    }
    r.finish()
}

fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// `∇((−1/qt)^e s_{(a|ℓ)})` in tensor form.
fn nabla_hook_tensor(a: usize, leg: usize, e: Option<i32>) -> crate::error::Result<TensorExpr> {
    let f = match e {
        None => shat(a, leg),
        Some(e) => scaled_hook(a, leg, e),
    };
    decompose_qt(&nabla_poly(&f)?)
}

/// Tallies agreement under alternative normalizations of the hook.
struct Alternatives {
    arm: (usize, usize),
    leg: (usize, usize),
}

impl Alternatives {
    fn new() -> Self {
        Alternatives { arm: (0, 0), leg: (0, 0) }
    }

    fn record(&mut self, expected: &TensorExpr, a: usize, leg: usize) {
        for (slot, e) in [(&mut self.arm, a as i32), (&mut self.leg, leg as i32)] {
            slot.1 += 1;
            if nabla_hook_tensor(a, leg, Some(e)).is_ok_and(|t| &t == expected) {
                slot.0 += 1;
            }
        }
    }

    fn notes(&self, r: &mut Recorder) {
        if self.arm.1 > 0 {
            r.note(format!("with (-1/qt)^a in place of (-1/qt)^(a-1): {}/{} cases agree", self.arm.0, self.arm.1));
            r.note(format!("with (-1/qt)^l in place of (-1/qt)^(a-1): {}/{} cases agree", self.leg.0, self.leg.1));
        }
    }
}

pub fn nabla_hook(ctx: &Ctx) -> CheckReport {
    let mut r = recorder("chk.nabla_hook", "n in {4, 5}, delta(n-1) <= tau <= delta(n); NH.* fixtures");
    let mut alt = Alternatives::new();
    let mut dominant = Vec::new();
    for n in 4..=5 {
        let top = staircase(n);
        let bottom = staircase(n - 1);
        for sub in subpartitions(&top) {
            if !sub.contains(&bottom) {
                continue;
            }
            let Some(tau) = tri(&sub) else { continue };
            let a = binom2(n) - tau.size();
            let leg = n - 1 - a;
            let case = format!("{tau}, n = {n}, hook ({a}|{leg})");
            if tau.len() <= tau.part(0) {
                dominant.push(format!("{tau}"));
            }
            let e = match ctx.etensor(&tau, n) {
                Ok(e) => e,
                Err(e) => {
                    r.skip(format!("{case}: {e}"));
                    continue;
                }
            };
            match nabla_hook_tensor(a, leg, None) {
                Ok(h) => {
                    if h != e {
                        alt.record(&e, a, leg);
                    }
                    r.compare(tau.size() * 16 + n, case, &e, &h, || tensor_diff(&e, &h));
                }
                Err(err) => r.fail(tau.size() * 16 + n, case, &e, err, ""),
            }
        }
    }
    for f in ctx.fixtures.with_prefix("NH.") {
        let crate::harness::fixtures::Payload::NablaHook { arm, leg, .. } = &f.payload else { continue };
        let eid = format!("E.{}", &f.id[3..]);
        let case = format!("{} against {eid}", f.id);
        let expected = match ctx.fixtures.tensor(&eid) {
            Ok(t) => restrict(&t, 2),
            Err(e) => {
                r.skip(format!("{case}: {e}"));
                continue;
            }
        };
        if let (Some(tau), Some(n)) = (&f.tau, f.n) {
            if binom2(n) - tau.size() != *arm {
                r.note(format!("{}: tabulated arm {arm} differs from binom(n,2) - |tau|", f.id));
            }
        }
        match nabla_hook_tensor(*arm, *leg, None) {
            Ok(h) => {
                if h != expected {
                    alt.record(&expected, *arm, *leg);
                }
                r.compare(100 + arm, case, &expected, &h, || tensor_diff(&expected, &h));
            }
            Err(err) => r.fail(100 + arm, case, &expected, err, ""),
        }
    }
    alt.notes(&mut r);
    r.note(format!("dominant (l(tau) <= tau_1): {}", dominant.join(" ")));
    r.finish()
}

/// `δ(n−1) = τ_0 ⊂ τ_1 ⊂ ⋯ ⊂ τ_{n−1} = δ(n)`, adding the cells of `δ(n)/δ(n−1)` from the bottom row up.
pub(crate) fn staircase_chain(n: usize) -> Vec<Partition> {
    let mut parts: Vec<usize> = staircase(n - 1).into_parts();
    parts.resize(n - 1, 0);
    let mut chain = vec![Partition::from_unsorted(parts.clone())];
    for row in (0..n - 1).rev() {
        parts[row] += 1;
        chain.push(Partition::from_unsorted(parts.clone()));
    }
    chain
}

pub fn e1_staircase(ctx: &Ctx) -> CheckReport {
    let mut r = recorder("chk.e1_staircase", "n in {3, 4, 5}, length <= 2 parts");
    for n in 3..=5 {
        let chain = staircase_chain(n);
        let case = format!("n = {n}");
        let tau = tri(&staircase(n)).expect("staircases are triangular");
        let Some(lhs) = e_perp_restricted(ctx, &tau, n, 1) else {
            r.skip(format!("{case}: needs the length-3 part of E_{tau}"));
            continue;
        };
        let mut rhs = Ok(TensorExpr::zero(RightBasis::Schur));
        for sub in &chain[..n - 1] {
            let t = tri(sub).expect("chain members are triangular");
            rhs = rhs.and_then(|acc| Ok(&acc + &ctx.etensor(&t, n)?));
        }
        match (lhs, rhs) {
            (Ok(l), Ok(rr)) => r.compare(n, case, &rr, &l, || tensor_diff(&rr, &l)),
            (Err(e), _) | (_, Err(e)) => r.skip(format!("{case}: {e}")),
        }
    }
    r.finish()
}

fn commutator_rhs(n: usize, exponent: impl Fn(usize) -> Option<i32>) -> crate::error::Result<SymExpr<QTRational>> {
    let mut acc = SymExpr::zero(Basis::Schur);
    for a in 1..n {
        let leg = n - 1 - a;
        let f = match exponent(a) {
            None => shat(a, leg),
            Some(e) => scaled_hook(a, leg, e),
        };
        acc = acc + nabla(&f)?;
    }
    Ok(acc)
}

pub fn commutator(ctx: &Ctx) -> CheckReport {
    let top = ctx.params.max_n.min(5);
    let mut r = recorder("chk.commutator", format!("3 <= n <= {top}"));
    let mut alt = 0;
    let mut failing = 0;
    for n in 3..=top {
        let case = format!("n = {n}");
        let en = SymExpr::<QTPoly>::e(&[n]).to_schur();
        let lhs = match delta_prime(n - 2, &en) {
            Ok(x) => x,
            Err(e) => {
                r.fail(n, case, "Delta'_{e_{n-2}} e_n", e, "");
                continue;
            }
        };
        match commutator_rhs(n, |_| None) {
            Ok(rhs) => {
                if rhs != lhs {
                    failing += 1;
                    if commutator_rhs(n, |a| Some(a as i32)).is_ok_and(|x| x == lhs) {
                        alt += 1;
                    }
                }
                r.compare(n, case, &lhs, &rhs, || sym_diff(&lhs, &rhs));
            }
            Err(e) => r.fail(n, case, &lhs, e, ""),
        }
    }
    if failing > 0 {
        r.note(format!("with (-1/qt)^a in place of (-1/qt)^(a-1): {alt}/{failing} failing cases agree"));
    }
    r.finish()
}
