//! The stable limit `Ē_τ`, the universal form `F_τ` and its evaluations.

use crate::error::{Error, Result};
use crate::harness::families::{e_a1_3, e_a1_4, f_a1, f_column, f_row, bar_closed_form};
use crate::harness::report::{CheckReport, Recorder};
use crate::partition::{Partition, TriangularPartition};
use crate::symfunc::{e_perp, Basis, SymExpr};
use crate::tensor::{bar_epsilon, default_cap, restrict, stabilization_start, Stabilization, TensorExpr};
use crate::universal::{area_sum, e_from_f, evaluate_e, f_from_stable, principal_point, shift, EArrowExpr};

use super::{fixture_key, min_len, sym_diff, tensor_diff, tri, triangular_upto, Ctx};

/// `Ē_τ^(n)` from [`stabilization_start`] while `n ≤ min(|τ|+5, max_n)`,
/// stopping at the first repeat.
struct Chain {
    links: Vec<(usize, TensorExpr)>,
    threshold: Option<usize>,
    /// The walk stopped at `max_n` before reaching `|τ|+5`.
    truncated: bool,
}

impl Chain {
    fn walk(ctx: &Ctx, tau: &TriangularPartition) -> Result<Chain> {
        let cap = default_cap(tau);
        let mut links: Vec<(usize, TensorExpr)> = Vec::new();
        let mut n = stabilization_start(tau);
        while n <= cap + 1 {
            if !ctx.feasible(n) {
                return Ok(Chain { links, threshold: None, truncated: true });
            }
            let bar = bar_epsilon(tau, n)?;
            let repeat = links.last().filter(|(_, prev)| *prev == bar).map(|(m, _)| *m);
            links.push((n, bar));
            if repeat.is_some() {
                return Ok(Chain { links, threshold: repeat, truncated: false });
            }
            n += 1;
        }
        Ok(Chain { links, threshold: None, truncated: false })
    }

    fn stabilization(&self, tau: &Partition) -> Result<Stabilization> {
        let threshold = self.threshold.ok_or_else(|| Error::NoStabilization { tau: tau.clone(), cap: default_cap(tau) })?;
        let stable = self.links.last().expect("a repeat needs two links").1.clone();
        Ok(Stabilization { tau: tau.clone(), threshold, stable, chain: self.links.clone() })
    }
}

pub fn stability(ctx: &Ctx) -> CheckReport {
    let max = ctx.params.size(6);
    let mut r = Recorder::new("chk.stability", format!("|tau| <= {max}, fixed point by n <= |tau|+4; Ebar fixtures"), false);
    let mut stable = Vec::new();
    for tau in triangular_upto(max) {
        let start = stabilization_start(&tau);
        let cap = default_cap(&tau);
        let weight = tau.size() * 16;
        if start > cap {
            r.fail(weight, format!("{tau}"), format!("chain starting by n = {cap}"), format!("chain starts at n = {start} = l + m"), "");
            continue;
        }
        let chain = match Chain::walk(ctx, &tau) {
            Ok(c) => c,
            Err(e) => {
                r.fail(weight, format!("{tau}"), "increment chain", e, "");
                continue;
            }
        };
        for w in chain.links.windows(2) {
            let d = &w[1].1 - &w[0].1;
            let case = format!("{tau}: increment at n = {}", w[0].0);
            r.compare(weight + w[0].0, case, &true, &d.is_nonnegative(), || format!("increment {d}"));
        }
        match (chain.threshold, chain.truncated) {
            (Some(n), _) => {
                r.pass();
                stable.push((tau.partition().clone(), chain.links.last().expect("nonempty").1.clone()));
                if let Some(closed) = bar_closed_form(&tau) {
                    let got = &chain.links.last().expect("nonempty").1;
                    r.compare(weight, format!("{tau}: closed form (threshold {n})"), &closed, got, || tensor_diff(&closed, got));
                }
            }
            (None, true) => r.skip(format!("{tau}: no repeat up to n = {}", ctx.params.max_n)),
            (None, false) => r.fail(weight, format!("{tau}"), format!("fixed point by n = {cap}"), "none", ""),
        }
    }
    for f in ctx.fixtures.with_prefix("Ebar.") {
        let Some(tau) = f.tau.as_ref().and_then(tri) else { continue };
        let expected = match ctx.fixtures.tensor(&f.id) {
            Ok(t) => t,
            Err(e) => {
                r.skip(format!("{}: {e}", f.id));
                continue;
            }
        };
        let got = match f.n {
            Some(n) if ctx.feasible(n) => bar_epsilon(&tau, n),
            Some(n) => Err(Error::SizeBound { size: n, bound: ctx.params.max_n }),
            None => stable
                .iter()
                .find(|(t, _)| t == tau.partition())
                .map(|(_, s)| s.clone())
                .ok_or_else(|| Error::Unsupported("stable limit not reached".into())),
        };
        match got {
            Ok(g) => r.compare(tau.size() * 16, f.id.clone(), &expected, &g, || tensor_diff(&expected, &g)),
            Err(e) => r.skip(format!("{}: {e}", f.id)),
        }
    }
    r.finish()
}

/// Computed `F_τ` for every `τ` whose chain repeats within the bounds.
fn computed_f(ctx: &Ctx, max: usize) -> Vec<(TriangularPartition, usize, EArrowExpr)> {
    let mut out = Vec::new();
    for tau in triangular_upto(max) {
        let Ok(chain) = Chain::walk(ctx, &tau) else { continue };
        let Ok(st) = chain.stabilization(&tau) else { continue };
        if let Ok(f) = f_from_stable(&st) {
            out.push((tau, st.threshold, f));
        }
    }
    out
}

fn fixture_f(ctx: &Ctx, tau: &Partition) -> Option<(String, EArrowExpr)> {
    let id = format!("F.{}", fixture_key(tau));
    let t = ctx.fixtures.tensor(&id).ok()?;
    Some((id, EArrowExpr::new(t, min_len(tau) <= 2)))
}

/// `e_1^⊥` on the left factor of `F`.
fn left_e1(f: &EArrowExpr) -> TensorExpr {
    f.tensor().map_left(|l| e_perp(1, &SymExpr::s(l.parts())))
}

pub fn f_properties(ctx: &Ctx) -> CheckReport {
    let max = ctx.params.size(6);
    let mut r = Recorder::new("chk.f_properties", format!("|tau| <= {max}; F fixtures; area identity for |tau| <= 5, n <= 6"), false);
    let computed = computed_f(ctx, max);
    let exact: Vec<_> = computed.iter().filter(|(_, _, f)| f.is_exact()).collect();

    for (tau, threshold, f) in &exact {
        for n in [*threshold, threshold + 1] {
            let case = format!("E from F_{tau} at n = {n}");
            match (e_from_f(f, n), ctx.etensor(tau, n)) {
                (Ok(a), Ok(e)) => r.compare(tau.size() * 16 + n, case, &e, &a, || tensor_diff(&e, &a)),
                (Err(err), _) => r.fail(tau.size() * 16 + n, case, "E", err, ""),
                (_, Err(err)) => r.skip(format!("{case}: {err}")),
            }
        }
        let parts = tau.parts();
        let family = if tau.is_empty() {
            None
        } else if parts.len() == 1 {
            Some(("row", f_row(parts[0])))
        } else if parts.iter().all(|&x| x == 1) {
            Some(("column", f_column(parts.len())))
        } else if parts.len() == 2 && parts[1] == 1 {
            Some(("(a,1)", f_a1(parts[0])))
        } else {
            None
        };
        if let Some((name, expected)) = family {
            let case = format!("F_{tau} against the {name} closed form");
            r.compare(tau.size(), case, expected.tensor(), f.tensor(), || tensor_diff(expected.tensor(), f.tensor()));
        }
    }

    for fx in ctx.fixtures.with_prefix("F.") {
        let Some(tau) = fx.tau.clone() else { continue };
        let Ok(expected) = ctx.fixtures.tensor(&fx.id) else { continue };
        let Some((_, _, f)) = computed.iter().find(|(t, _, _)| t.partition() == &tau) else {
            r.skip(format!("{}: F not computed within the bounds", fx.id));
            continue;
        };
        let (exp, got, how) = if f.is_exact() {
            (expected, f.tensor().clone(), "")
        } else {
            (restrict(&expected, 1), restrict(f.tensor(), 1), " (length <= 1 part)")
        };
        r.compare(tau.size(), format!("{}{how}", fx.id), &exp, &got, || tensor_diff(&exp, &got));
    }

    for a in 3..=5 {
        let f = f_a1(a);
        for (n, expected) in [(3, e_a1_3(a)), (4, e_a1_4(a))] {
            let case = format!("E_({a},1) at n = {n} from F");
            match e_from_f(&f, n) {
                Ok(got) => r.compare(a + 1, case, &expected, &got, || tensor_diff(&expected, &got)),
                Err(e) => r.fail(a + 1, case, &expected, e, ""),
            }
        }
    }

    // (1) A(q+1) = Σ_ν ⟨F, f_ν⟩.
    let mut with_f: Vec<(String, Partition, EArrowExpr)> =
        exact.iter().map(|(t, _, f)| (format!("F_{t}"), t.partition().clone(), f.clone())).collect();
    for fx in ctx.fixtures.with_prefix("F.") {
        if let Some(tau) = &fx.tau {
            if let Some((id, f)) = fixture_f(ctx, tau) {
                with_f.push((id, tau.clone(), f));
            }
        }
    }
    let mut other_side = (0, 0);
    for (label, tau, f) in &with_f {
        let alt = match tri(tau).map(|t| ctx.alternant(&t)) {
            Some(Ok(a)) if min_len(tau) <= 2 => a,
            _ => match ctx.a_fixture(tau) {
                Some((_, a)) => a,
                None => {
                    r.skip(format!("(1) {label}: no full alternant"));
                    continue;
                }
            },
        };
        let lhs = shift(&alt, 1);
        let rhs = f.total();
        r.compare(tau.size(), format!("(1) {label}"), &lhs, &rhs, || sym_diff(&lhs, &rhs));

        let applies = tau.conjugate().len() > tau.len();
        let mut agree = true;
        for k in 0..=alt.degree().unwrap_or(0) {
            let lhs = e_perp(k, &alt);
            let rhs = f.coefficient(&Partition::column(k));
            if applies {
                r.compare(tau.size() * 16 + k, format!("<{label}, f_1^{k}>"), &lhs, &rhs, || sym_diff(&lhs, &rhs));
            } else {
                agree &= lhs == rhs;
            }
        }
        if !applies {
            other_side.1 += 1;
            other_side.0 += usize::from(agree);
        }
    }
    if other_side.1 > 0 {
        r.note(format!("<F, f_1^k> = e_k-perp A where l(tau') <= l(tau): {}/{} shapes agree for every k", other_side.0, other_side.1));
    }

    // (2) length sums agree for τ and τ'.
    for (la, ta, fa) in &with_f {
        for (lb, tb, fb) in &with_f {
            if tb != &ta.conjugate() || ta >= tb || !fa.is_exact() || !fb.is_exact() {
                continue;
            }
            let top = fa.tensor().right_support().iter().chain(fb.tensor().right_support().iter()).map(|nu| nu.len()).max().unwrap_or(0);
            for k in 0..=top {
                let (x, y) = (fa.length_sum(k), fb.length_sum(k));
                r.compare(ta.size() * 16 + k, format!("(2) {la} vs {lb}, length {k}"), &x, &y, || sym_diff(&x, &y));
            }
        }
    }

    // (3) area sum = E(q, 1).
    for tau in triangular_upto(ctx.params.size(5)) {
        for n in tau.len() + 1..=6 {
            let case = format!("(3) {tau}, n = {n}");
            let weight = tau.size() * 16 + n;
            let e = match ctx.eps(&tau, n) {
                Ok(e) => e,
                Err(err) => {
                    r.skip(format!("{case}: {err}"));
                    continue;
                }
            };
            match (e.try_map_coeffs(|c| c.specialize(None, Some(1))), area_sum(&tau, n)) {
                (Ok(lhs), Ok(rhs)) => r.compare(weight, case, &lhs, &rhs, || sym_diff(&lhs, &rhs)),
                (Err(err), _) | (_, Err(err)) => r.fail(weight, case, "t = 1 specialization", err, ""),
            }
        }
    }

    // (5) e_1^⊥ F_σ − F_τ is e-positive for τ ⋖ σ.
    let mut right_side = (0, 0);
    for (small, _, fs) in &exact {
        for (big, _, fb) in &exact {
            if big.size() != small.size() + 1 || !big.contains(small) {
                continue;
            }
            let d = &left_e1(fb) - fs.tensor();
            let case = format!("(5) e1perp F_{big} - F_{small}");
            r.compare(big.size(), case, &true, &d.is_nonnegative(), || format!("difference {d}"));
            right_side.1 += 1;
            if (&fb.e1_perp().tensor().clone() - fs.tensor()).is_nonnegative() {
                right_side.0 += 1;
            }
        }
    }
    if right_side.1 > 0 {
        r.note(format!("(5) with e_1-perp on the e side instead: {}/{} pairs e-positive", right_side.0, right_side.1));
    }
    r.finish()
}

pub fn principal_eval(ctx: &Ctx) -> CheckReport {
    let mut r = Recorder::new("chk.principal_eval", "principal.* fixtures at k = 0, 1, 2", false);
    let mut shifted = (0, 0);
    for fx in ctx.fixtures.with_prefix("principal.") {
        let crate::harness::fixtures::Payload::KPoly(terms) = &fx.payload else { continue };
        let Some(tau) = fx.tau.as_ref().and_then(tri) else { continue };
        let n = match Chain::walk(ctx, &tau).and_then(|c| c.stabilization(&tau)) {
            Ok(st) => st.threshold,
            Err(e) => {
                r.skip(format!("{}: {e}", fx.id));
                continue;
            }
        };
        let expected_at = |k: i64| -> Option<SymExpr<i64>> {
            let mut out = SymExpr::zero(Basis::Elementary);
            for term in terms {
                let mut parts = term.nu.parts().to_vec();
                parts.push(n.checked_sub(term.nu.size())?);
                out.add_term(Partition::from_unsorted(parts), term.eval(k)?);
            }
            Some(out)
        };
        for k in 0..=2usize {
            let case = format!("{} at k = {k}, n = {n}", fx.id);
            let Some(expected) = expected_at(k as i64) else {
                r.fail(k, case, "integral k-polynomial values", "non-integral", "");
                continue;
            };
            match crate::universal::principal_eval(&tau, k, n) {
                Ok(got) => r.compare(k, case, &expected, &got, || sym_diff(&expected, &got)),
                Err(e) => r.fail(k, case, &expected, e, ""),
            }
            if let Ok((q, t)) = principal_point(k + 1) {
                shifted.1 += 1;
                if evaluate_e(&tau, n, q, t).is_ok_and(|g| g == expected) {
                    shifted.0 += 1;
                }
            }
        }
    }
    if shifted.1 > 0 {
        r.note(format!("reading k as the point used for k + 1: {}/{} values agree", shifted.0, shifted.1));
    }
    r.finish()
}
