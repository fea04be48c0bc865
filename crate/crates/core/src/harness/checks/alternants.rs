//! Alternants `A_τ` and their hook components.

use crate::harness::report::{CheckReport, Recorder};
use crate::partition::TriangularPartition;
use crate::symfunc::{e_perp, SymExpr};
use crate::tensor::{hook_product, hook_project};

use super::{hooks, min_len, sym_diff, tri, triangular_upto, Ctx};

/// Length-≤2 part of a Schur expansion.
fn le2(f: &SymExpr<i64>) -> SymExpr<i64> {
    f.filter(|l| l.len() <= 2)
}

/// Fixtures under `prefix` whose shape is triangular.
fn fixture_tau(ctx: &Ctx, prefix: &str) -> Vec<(String, TriangularPartition)> {
    ctx.fixtures
        .with_prefix(prefix)
        .filter_map(|f| Some((f.id.clone(), tri(f.tau.as_ref()?)?)))
        .collect()
}

pub fn conjugation(ctx: &Ctx) -> CheckReport {
    let max = ctx.params.size(8);
    let mut r = Recorder::new("chk.conjugation", format!("A fixtures; computed pairs with |tau| <= {max}"), false);
    for (id, tau) in fixture_tau(ctx, "A.") {
        let conj = tau.conjugate();
        if conj.partition() == tau.partition() {
            continue;
        }
        let case = format!("{id} against computed A_{conj}");
        let Ok(mut expected) = ctx.fixtures.sym(&id) else { continue };
        if !ctx.feasible(conj.len() + 1) {
            r.skip(format!("{case}: n = {} beyond the bound", conj.len() + 1));
            continue;
        }
        match ctx.alternant(&conj) {
            Ok(a) => {
                if min_len(&tau) > 2 {
                    expected = le2(&expected);
                }
                r.compare(tau.size(), case, &expected, &a, || sym_diff(&expected, &a));
            }
            Err(e) => r.skip(format!("{case}: {e}")),
        }
    }
    for tau in triangular_upto(max) {
        let conj = tau.conjugate();
        if conj.partition() <= tau.partition() {
            continue;
        }
        let case = format!("A_{tau} = A_{conj}");
        if !ctx.feasible(tau.len().max(conj.len()) + 1) {
            r.skip(format!("{case}: beyond the bound on n"));
            continue;
        }
        match (ctx.alternant(&tau), ctx.alternant(&conj)) {
            (Ok(a), Ok(b)) => r.compare(tau.size(), case, &a, &b, || sym_diff(&a, &b)),
            (Err(e), _) | (_, Err(e)) => r.skip(format!("{case}: {e}")),
        }
    }
    r.finish()
}

/// The coefficient of `s_{(a|ℓ)}` on the right of `E`, compared with `e_a^⊥ A`.
pub fn hook_components(ctx: &Ctx) -> CheckReport {
    let max = ctx.params.size(6);
    let mut r = Recorder::new("chk.hook_components", format!("|tau| <= {max}, n in {{l+1, l+2}}; E.*.n5 fixtures"), false);
    for tau in triangular_upto(max) {
        let alt = if min_len(&tau) <= 2 {
            if !ctx.feasible(tau.len() + 1) {
                r.skip(format!("{tau}: beyond the bound on n"));
                continue;
            }
            match ctx.alternant(&tau) {
                Ok(a) => a,
                Err(e) => {
                    r.skip(format!("{tau}: {e}"));
                    continue;
                }
            }
        } else {
            match ctx.a_fixture(&tau) {
                Some((_, a)) => a,
                None => {
                    r.skip(format!("{tau}: no full alternant available"));
                    continue;
                }
            }
        };
        for n in tau.len() + 1..=tau.len() + 2 {
            let e = match ctx.etensor(&tau, n) {
                Ok(e) => e,
                Err(e) => {
                    r.skip(format!("{tau}, n = {n}: {e}"));
                    continue;
                }
            };
            for h in hooks(n) {
                let case = format!("{tau}, n = {n}, hook ({}|{})", h.arm, h.leg);
                let got = e.left_coefficient(&h.to_partition());
                let expected = restrict_le(&e_perp(h.arm, &alt), min_len(&tau));
                r.compare(tau.size() * 16 + n, case, &expected, &got, || sym_diff(&expected, &got));
            }
        }
    }
    for f in ctx.fixtures.with_prefix("E.") {
        let (Some(tau), Some(n)) = (f.tau.as_ref(), f.n) else { continue };
        if f.id.ends_with(".le1") {
            continue;
        }
        let Some((aid, alt)) = ctx.a_fixture(tau) else {
            r.skip(format!("{}: no alternant fixture", f.id));
            continue;
        };
        let Ok(e) = ctx.fixtures.tensor(&f.id) else { continue };
        for h in hooks(n) {
            let case = format!("{} hook ({}|{}) against {aid}", f.id, h.arm, h.leg);
            let got = e.left_coefficient(&h.to_partition());
            let expected = e_perp(h.arm, &alt);
            r.compare(tau.size() * 16 + n, case, &expected, &got, || sym_diff(&expected, &got));
        }
    }
    r.finish()
}

pub fn hook_alternants(ctx: &Ctx) -> CheckReport {
    let max = ctx.params.size(8);
    let mut r = Recorder::new("chk.hook_alternants", format!("|tau| <= {max} at n = l+1; A, Ahooks and hookpoly fixtures"), false);
    r.note("the empty partition is excluded: its alternant 1 carries no hook term");
    for tau in triangular_upto(max).into_iter().filter(|t| !t.is_empty()) {
        let case = format!("{tau}");
        let expected = match hook_product(&tau) {
            Ok(h) => h,
            Err(e) => {
                r.fail(tau.size(), case, "hook product", e, "");
                continue;
            }
        };
        if !ctx.feasible(tau.len() + 1) {
            r.skip(format!("{case}: beyond the bound on n"));
            continue;
        }
        match ctx.alternant(&tau) {
            Ok(a) => {
                let got = hook_project(&a);
                let (exp, got) = if min_len(&tau) <= 2 {
                    (expected, got)
                } else {
                    (expected.truncate_leg(1), got.truncate_leg(1))
                };
                r.compare(tau.size(), case, &exp, &got, || format!("expected {exp}, actual {got}"));
            }
            Err(e) => r.skip(format!("{case}: {e}")),
        }
    }
    let mut fixtures = fixture_tau(ctx, "A.");
    fixtures.extend(fixture_tau(ctx, "Ahooks."));
    for (id, tau) in fixtures.into_iter().filter(|(_, t)| !t.is_empty()) {
        let Ok(a) = ctx.fixtures.sym(&id) else { continue };
        match hook_product(&tau) {
            Ok(exp) => {
                let got = hook_project(&a);
                r.compare(tau.size(), id, &exp, &got, || format!("expected {exp}, actual {got}"));
            }
            Err(e) => r.fail(tau.size(), id, "hook product", e, ""),
        }
    }
    for f in ctx.fixtures.with_prefix("hookpoly.") {
        let crate::harness::fixtures::Payload::HookPoly(got) = &f.payload else { continue };
        let Some(tau) = f.tau.as_ref().and_then(tri) else { continue };
        match hook_product(&tau) {
            Ok(exp) => r.compare(tau.size(), f.id.clone(), &exp, got, || format!("expected {exp}, actual {got}")),
            Err(e) => r.fail(tau.size(), f.id.clone(), "hook product", e, ""),
        }
    }
    r.finish()
}

pub fn length_conjecture(ctx: &Ctx) -> CheckReport {
    let max = ctx.params.size(6);
    let mut r = Recorder::new(
        "chk.length_conjecture",
        format!("E, Ebar, F fixtures; min length <= 1 with |tau| <= {max}; A independent of n"),
        false,
    );
    for f in ctx.fixtures.iter() {
        let prefix = f.id.split('.').next().unwrap_or("");
        if !matches!(prefix, "E" | "Ebar" | "F") || f.id.ends_with(".le1") {
            continue;
        }
        let Some(tau) = f.tau.as_ref() else { continue };
        let Ok(t) = ctx.fixtures.tensor(&f.id) else { continue };
        let m = min_len(tau);
        let l = t.left_length();
        r.compare(tau.size(), format!("{}: left length <= {m}", f.id), &true, &(l <= m), || format!("left length {l}"));
    }
    for tau in triangular_upto(max) {
        let m = min_len(&tau);
        if m <= 1 {
            for n in tau.len() + 1..=tau.len() + 2 {
                let case = format!("{tau}, n = {n}: left length <= {m}");
                match ctx.etensor(&tau, n) {
                    Ok(e) => {
                        let l = e.left_length();
                        r.compare(tau.size() * 16 + n, case, &true, &(l <= m), || format!("left length {l}"));
                    }
                    Err(e) => r.skip(format!("{case}: {e}")),
                }
            }
        }
        let base = tau.len() + 1;
        let Ok(a0) = ctx.alternant(&tau).map(|a| restrict_le(&a, m)) else {
            r.skip(format!("{tau}: alternant beyond the bound"));
            continue;
        };
        for n in base + 1..=6.max(base) {
            let case = format!("A_{tau} at n = {n}");
            match ctx.etensor(&tau, n) {
                Ok(e) => {
                    let a = restrict_le(&crate::tensor::alternant(&e, n), m);
                    r.compare(tau.size() * 16 + n, case, &a0, &a, || sym_diff(&a0, &a));
                }
                Err(e) => r.skip(format!("{case}: {e}")),
            }
        }
    }
    r.finish()
}

fn restrict_le(f: &SymExpr<i64>, m: usize) -> SymExpr<i64> {
    if m <= 2 {
        f.clone()
    } else {
        le2(f)
    }
}
