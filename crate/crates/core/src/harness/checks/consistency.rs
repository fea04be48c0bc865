//! Internal agreement of the fixture corpus, and of fixtures with computed data.

use crate::harness::fixtures::Payload;
use crate::harness::report::{CheckReport, Recorder};
use crate::partition::Partition;
use crate::symfunc::e_perp;
use crate::tensor::{hook_project, restrict};
use crate::universal::{e_from_f, EArrowExpr};

use super::{min_len, sym_diff, tensor_diff, tri, Ctx};

pub fn selfconsistency(ctx: &Ctx) -> CheckReport {
    let fx = ctx.fixtures;
    let mut r = Recorder::new("chk.fixtures_selfconsistency", format!("{} fixtures", fx.len()), false);

    for f in fx.iter() {
        if let Some(base) = &f.base {
            r.compare(0, format!("{}: base {base} present", f.id), &true, &fx.get(base).is_some(), String::new);
        }
        let back = crate::harness::fixtures::Fixture::from_json(&f.to_json()).map(|g| g.to_json());
        r.compare(0, format!("{}: JSON round trip", f.id), &true, &back.is_ok_and(|v| v == f.raw), String::new);
    }

    for f in fx.with_prefix("Ebar.") {
        let Some(base) = &f.base else { continue };
        let (Ok(top), Ok(below)) = (fx.tensor(&f.id), fx.tensor(base)) else { continue };
        let d = &top - &below;
        r.compare(1, format!("{}: increment over {base}", f.id), &true, &d.is_nonnegative(), || format!("increment {d}"));
    }

    for f in fx.with_prefix("Ebar.") {
        if f.n.is_some() {
            continue;
        }
        let Some(tau) = &f.tau else { continue };
        let Ok(t) = fx.tensor(&f.id) else { continue };
        let Some((aid, a)) = ctx.a_fixture(tau) else {
            r.skip(format!("{}: no alternant fixture for {tau}", f.id));
            continue;
        };
        let got = t.left_coefficient(&Partition::empty());
        r.compare(2, format!("{}: right-empty coefficient against {aid}", f.id), &a, &got, || sym_diff(&a, &got));
    }

    for f in fx.with_prefix("NH.") {
        let Payload::NablaHook { extra, .. } = &f.payload else { continue };
        let eid = format!("E.{}", &f.id[3..]);
        let Ok(e) = fx.tensor(&eid) else {
            r.skip(format!("{}: {eid} missing", f.id));
            continue;
        };
        let tail = &e - &restrict(&e, 2);
        r.compare(3, format!("{}: extra terms against {eid}", f.id), &tail, extra, || tensor_diff(&tail, extra));
    }

    for f in fx.with_prefix("E.") {
        let (Some(tau), Some(n)) = (&f.tau, f.n) else { continue };
        if f.id.ends_with(".le1") {
            continue;
        }
        let Ok(e) = fx.tensor(&f.id) else { continue };
        if let Some((aid, a)) = ctx.a_fixture(tau) {
            let got = e.left_coefficient(&Partition::column(n));
            r.compare(4, format!("{}: s_1^{n} coefficient against {aid}", f.id), &a, &got, || sym_diff(&a, &got));
        }
        if let Some(t) = tri(tau) {
            match ctx.etensor(&t, n) {
                Ok(c) => {
                    let exp = restrict(&e, 2);
                    r.compare(8, format!("{}: length <= 2 part against computed", f.id), &exp, &c, || tensor_diff(&exp, &c));
                }
                Err(err) => r.skip(format!("{}: {err}", f.id)),
            }
        }
    }

    for f in fx.with_prefix("eperpA.") {
        let mut it = f.id.split('.').skip(1);
        let (Some(key), Some(k)) = (it.next(), it.next().and_then(|k| k.parse::<usize>().ok())) else { continue };
        let aid = format!("A.{key}");
        let (Ok(got), Ok(a)) = (fx.sym(&f.id), fx.sym(&aid)) else {
            r.skip(format!("{}: {aid} missing", f.id));
            continue;
        };
        let exp = e_perp(k, &a);
        r.compare(5, format!("{} = e{k}perp {aid}", f.id), &exp, &got, || sym_diff(&exp, &got));
    }

    for f in fx.with_prefix("F.") {
        let Some(tau) = &f.tau else { continue };
        let Ok(ft) = fx.tensor(&f.id) else { continue };
        for e in fx.with_prefix("E.") {
            if e.tau.as_ref() != Some(tau) || e.id.ends_with(".le1") {
                continue;
            }
            let (Some(n), Ok(et)) = (e.n, fx.tensor(&e.id)) else { continue };
            let case = format!("{} raised to n = {n} against {}", f.id, e.id);
            match e_from_f(&EArrowExpr::new(ft.clone(), true), n) {
                Ok(got) => r.compare(6, case, &et, &got, || tensor_diff(&et, &got)),
                Err(err) => r.fail(6, case, &et, err, ""),
            }
        }
    }

    for f in fx.with_prefix("hookpoly.") {
        let Payload::HookPoly(hp) = &f.payload else { continue };
        let aid = format!("Ahooks.{}", &f.id[9..]);
        let Ok(a) = fx.sym(&aid) else {
            r.skip(format!("{}: {aid} missing", f.id));
            continue;
        };
        let got = hook_project(&a);
        r.compare(7, format!("{} against {aid}", f.id), hp, &got, || format!("expected {hp}, actual {got}"));
    }

    for f in fx.with_prefix("A.") {
        let Some(tau) = f.tau.as_ref().and_then(tri) else { continue };
        let Ok(a) = fx.sym(&f.id) else { continue };
        if !ctx.feasible(tau.len() + 1) {
            r.skip(format!("{}: n = {} beyond the bound", f.id, tau.len() + 1));
            continue;
        }
        match ctx.alternant(&tau) {
            Ok(c) => {
                let exp = if min_len(&tau) <= 2 { a } else { a.filter(|l| l.len() <= 2) };
                r.compare(9, format!("{} against computed", f.id), &exp, &c, || sym_diff(&exp, &c));
            }
            Err(err) => r.skip(format!("{}: {err}", f.id)),
        }
    }
    r.finish()
}
