//! Tensorial form `Σ a_{λμ} s_λ ⊗ s_μ`: the left factor records a symmetric
//! function of the `(q, t)` alphabet, the right factor one of `x`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{is_triangular, Partition, TriangularPartition};
use crate::qt::QTPoly;
use crate::symfunc::{remove_vertical_strips, Basis, SymExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RightBasis {
    #[serde(rename = "s")]
    Schur,
    #[serde(rename = "e")]
    Elementary,
}

impl RightBasis {
    pub fn letter(self) -> char {
        match self {
            RightBasis::Schur => 's',
            RightBasis::Elementary => 'e',
        }
    }

    fn basis(self) -> Basis {
        match self {
            RightBasis::Schur => Basis::Schur,
            RightBasis::Elementary => Basis::Elementary,
        }
    }
}

/// `Σ a_{λμ} s_λ ⊗ b_μ` with `b = s` or `e`, integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorExpr {
    right_basis: RightBasis,
    terms: BTreeMap<(Partition, Partition), i64>,
}

impl TensorExpr {
    pub fn zero(right_basis: RightBasis) -> Self {
        TensorExpr { right_basis, terms: BTreeMap::new() }
    }

    pub fn from_terms(right_basis: RightBasis, terms: impl IntoIterator<Item = ((Partition, Partition), i64)>) -> Self {
        let mut out = TensorExpr::zero(right_basis);
        for (k, c) in terms {
            out.add_term(k.0, k.1, c);
        }
        out
    }

    /// `1 ⊗ s_μ` (or `1 ⊗ e_μ`).
    pub fn right_only(right_basis: RightBasis, mu: Partition) -> Self {
        TensorExpr::from_terms(right_basis, [((Partition::empty(), mu), 1)])
    }

    /// `f ⊗ b_μ` for a left expression in the Schur basis.
    pub fn tensor(left: &SymExpr<i64>, right_basis: RightBasis, mu: &Partition) -> Self {
        TensorExpr::from_terms(
            right_basis,
            left.to_schur().terms().iter().map(|(l, c)| ((l.clone(), mu.clone()), *c)),
        )
    }

    pub fn right_basis(&self) -> RightBasis {
        self.right_basis
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, Partition), i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, left: &Partition, right: &Partition) -> i64 {
        self.terms.get(&(left.clone(), right.clone())).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, left: Partition, right: Partition, c: i64) {
        if c == 0 {
            return;
        }
        let key = (left, right);
        let v = self.terms.entry(key.clone()).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        TensorExpr::from_terms(self.right_basis, self.terms.iter().map(|(k, v)| (k.clone(), v * c)))
    }

    /// Right indices by increasing size, decreasing within a size.
    pub fn right_support(&self) -> Vec<Partition> {
        let mut v: Vec<Partition> = self.terms.keys().map(|(_, r)| r.clone()).collect();
        v.sort_by(|a, b| a.size().cmp(&b.size()).then(b.cmp(a)));
        v.dedup();
        v
    }

    /// The left expression paired with the right basis element `μ`.
    pub fn left_coefficient(&self, mu: &Partition) -> SymExpr<i64> {
        SymExpr::from_terms(
            Basis::Schur,
            self.terms.iter().filter(|((_, r), _)| r == mu).map(|((l, _), c)| (l.clone(), *c)),
        )
    }

    /// The right expression paired with the left Schur function `s_λ`.
    pub fn right_coefficient(&self, lambda: &Partition) -> SymExpr<i64> {
        SymExpr::from_terms(
            self.right_basis.basis(),
            self.terms.iter().filter(|((l, _), _)| l == lambda).map(|((_, r), c)| (r.clone(), *c)),
        )
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|&c| c >= 0)
    }

    /// Terms with a negative coefficient.
    pub fn negative_terms(&self) -> Vec<((Partition, Partition), i64)> {
        self.terms.iter().filter(|(_, &c)| c < 0).map(|(k, c)| (k.clone(), *c)).collect()
    }

    /// Largest number of parts of a left index.
    pub fn left_length(&self) -> usize {
        self.terms.keys().map(|(l, _)| l.len()).max().unwrap_or(0)
    }

    pub fn map_left(&self, f: impl Fn(&Partition) -> SymExpr<i64>) -> TensorExpr {
        let mut out = TensorExpr::zero(self.right_basis);
        for ((l, r), c) in &self.terms {
            for (l2, c2) in f(l).to_schur().terms() {
                out.add_term(l2.clone(), r.clone(), c * c2);
            }
        }
        out
    }

    pub fn map_right(&self, basis: RightBasis, f: impl Fn(&Partition) -> SymExpr<i64>) -> TensorExpr {
        let mut out = TensorExpr::zero(basis);
        for ((l, r), c) in &self.terms {
            for (r2, c2) in f(r).terms() {
                out.add_term(l.clone(), r2.clone(), c * c2);
            }
        }
        out
    }

    /// Rewrites the right factor in the given basis.
    pub fn with_right_basis(&self, basis: RightBasis) -> TensorExpr {
        if basis == self.right_basis {
            return self.clone();
        }
        let from = self.right_basis.basis();
        self.map_right(basis, |r| SymExpr::<i64>::basis_element(from, r.clone()).to_basis(basis.basis()))
    }

    /// Evaluates the left factor in two variables `(q, t)`.
    pub fn recompose(&self) -> SymExpr<QTPoly> {
        let t = self.with_right_basis(RightBasis::Schur);
        let mut out = SymExpr::zero(Basis::Schur);
        for ((l, r), c) in &t.terms {
            let v = schur_qt(l);
            if !v.is_zero() {
                out.add_term(r.clone(), v.scale(&(*c).into()));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|((l, r), c)| serde_json::json!([l.parts(), r.parts(), c]))
            .collect();
        serde_json::json!({ "right_basis": self.right_basis.letter().to_string(), "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("tensor JSON: {what}"));
        let basis = match v.get("right_basis").and_then(|b| b.as_str()) {
            Some("s") => RightBasis::Schur,
            Some("e") => RightBasis::Elementary,
            _ => return Err(bad("right_basis")),
        };
        let mut out = TensorExpr::zero(basis);
        for term in v.get("terms").and_then(|t| t.as_array()).ok_or_else(|| bad("terms"))? {
            let (l, r, c): (Vec<usize>, Vec<usize>, i64) =
                serde_json::from_value(term.clone()).map_err(|e| bad(&e.to_string()))?;
            out.add_term(Partition::new(l)?, Partition::new(r)?, c);
        }
        Ok(out)
    }

    pub fn to_latex(&self) -> String {
        self.render(true)
    }

    fn render(&self, latex: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let letter = self.right_basis.letter();
        let mut pieces = Vec::new();
        for mu in self.right_support() {
            let left = self.left_coefficient(&mu);
            let right = if mu.is_empty() {
                "1".to_string()
            } else if latex {
                format!("{letter}_{{{}}}", compact(&mu))
            } else {
                format!("{letter}[{}]", comma(&mu))
            };
            let op = if latex { " \\otimes " } else { "⊗" };
            let (neg, body) = render_left(&left, latex);
            pieces.push((neg, format!("{body}{op}{right}")));
        }
        let mut out = String::new();
        for (k, (neg, body)) in pieces.into_iter().enumerate() {
            out.push_str(match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            out.push_str(&body);
        }
        out
    }
}

fn comma(p: &Partition) -> String {
    p.parts().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn compact(p: &Partition) -> String {
    if p.parts().iter().all(|&x| x < 10) {
        p.parts().iter().map(|x| x.to_string()).collect()
    } else {
        comma(p)
    }
}

/// Renders a left factor; a lone negative term is pulled out as a sign.
fn render_left(left: &SymExpr<i64>, latex: bool) -> (bool, String) {
    let name = |l: &Partition| {
        if l.is_empty() {
            "1".to_string()
        } else if latex {
            format!("s_{{{}}}", compact(l))
        } else {
            format!("s[{}]", comma(l))
        }
    };
    let terms: Vec<(&Partition, &i64)> = left.terms().iter().rev().collect();
    let term = |l: &Partition, c: i64| match c {
        1 => name(l),
        _ if l.is_empty() => c.to_string(),
        _ if latex => format!("{c}{}", name(l)),
        _ => format!("{c}*{}", name(l)),
    };
    if terms.len() == 1 {
        let (l, &c) = terms[0];
        return if c < 0 { (true, term(l, -c)) } else { (false, term(l, c)) };
    }
    let mut s = String::new();
    for (k, (l, &c)) in terms.iter().enumerate() {
        if k > 0 {
            s.push_str(if c < 0 { " - " } else { " + " });
        } else if c < 0 {
            s.push('-');
        }
        s.push_str(&term(l, c.abs()));
    }
    (false, format!("({s})"))
}

impl fmt::Display for TensorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(false))
    }
}

impl fmt::Debug for TensorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl std::ops::Add<&TensorExpr> for &TensorExpr {
    type Output = TensorExpr;
    fn add(self, rhs: &TensorExpr) -> TensorExpr {
        let rhs = rhs.with_right_basis(self.right_basis);
        let mut out = self.clone();
        for ((l, r), c) in rhs.terms {
            out.add_term(l, r, c);
        }
        out
    }
}

impl std::ops::Sub<&TensorExpr> for &TensorExpr {
    type Output = TensorExpr;
    fn sub(self, rhs: &TensorExpr) -> TensorExpr {
        self + &rhs.scale(-1)
    }
}

/// `s_{(a,b)}(q,t) = (qt)^b (q^{a−b} + q^{a−b−1}t + ⋯ + t^{a−b})`; zero for three or more parts.
pub fn schur_qt(lambda: &Partition) -> QTPoly {
    if lambda.len() > 2 {
        return QTPoly::zero();
    }
    let (a, b) = (lambda.part(0) as i32, lambda.part(1) as i32);
    QTPoly::from_terms((0..=(a - b)).map(|k| ((b + k, a - k), 1.into())))
}

/// Decomposes every `(q,t)` coefficient into two-variable Schur functions.
pub fn decompose_qt(e: &SymExpr<QTPoly>) -> Result<TensorExpr> {
    let mut out = TensorExpr::zero(RightBasis::Schur);
    for (mu, c) in e.to_schur().terms() {
        if !c.is_qt_symmetric() {
            return Err(Error::NotSymmetric(format!("coefficient of s{mu}: {c}")));
        }
        if !c.is_polynomial() {
            return Err(Error::NonPolynomial(format!("coefficient of s{mu}: {c}")));
        }
        let mut rem = c.clone();
        while let Some(((i, j), v)) = rem.leading().map(|(e, v)| (e, v.clone())) {
            let lam = Partition::new(vec![i as usize, j as usize]).expect("leading term has i ≥ j");
            let k = v.to_i64().ok_or(Error::NonIntegral)?;
            rem -= &schur_qt(&lam).scale(&v);
            out.add_term(lam, mu.clone(), k);
        }
    }
    Ok(out)
}

/// Keeps terms whose left index has at most `j` parts.
pub fn restrict(t: &TensorExpr, j: usize) -> TensorExpr {
    TensorExpr {
        right_basis: t.right_basis,
        terms: t.terms.iter().filter(|((l, _), _)| l.len() <= j).map(|(k, c)| (k.clone(), *c)).collect(),
    }
}

/// Removes the first column of every right index.
pub fn bar_stable(t: &TensorExpr) -> TensorExpr {
    let t = t.with_right_basis(RightBasis::Schur);
    TensorExpr::from_terms(
        RightBasis::Schur,
        t.terms.iter().map(|((l, r), c)| ((l.clone(), r.remove_first_column()), *c)),
    )
}

/// Adds a first column of height `n` to every right index.
pub fn unbar(t: &TensorExpr, n: usize) -> Result<TensorExpr> {
    let mut out = TensorExpr::zero(RightBasis::Schur);
    for ((l, r), c) in &t.with_right_basis(RightBasis::Schur).terms {
        let mu = r.add_first_column(n).ok_or_else(|| {
            Error::Unsupported(format!("right index {r} does not fit under a column of height {n}"))
        })?;
        out.add_term(l.clone(), mu, *c);
    }
    Ok(out)
}

/// `Σ_λ a_{λ,1^n} s_λ`.
pub fn alternant(t: &TensorExpr, n: usize) -> SymExpr<i64> {
    let t = t.with_right_basis(RightBasis::Schur);
    t.left_coefficient(&Partition::new(vec![1; n]).expect("column"))
}

/// `A_{(a,b)} = Σ_{0≤d≤b, 3d≤a+b} s_{(a+b−2d, d)}`.
pub fn two_row_alternant(a: usize, b: usize) -> Result<SymExpr<i64>> {
    let tau = Partition::from_unsorted(vec![a, b]);
    if b > a || !is_triangular(&tau) {
        return Err(Error::NonTriangular(tau));
    }
    Ok(SymExpr::from_terms(
        Basis::Schur,
        (0..=b)
            .filter(|d| 3 * d <= a + b)
            .map(|d| (Partition::from_unsorted(vec![a + b - 2 * d, d]), 1)),
    ))
}

/// Polynomial in `u`, `v`: `(arm, leg) ↦ coefficient`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct HookPoly {
    terms: BTreeMap<(usize, usize), i64>,
}

impl HookPoly {
    pub fn from_terms(terms: impl IntoIterator<Item = ((usize, usize), i64)>) -> Self {
        let mut out = HookPoly::default();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), i64> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: usize, l: usize) -> i64 {
        self.terms.get(&(a, l)).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, k: (usize, usize), c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(k).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&k);
        }
    }

    pub fn mul(&self, other: &HookPoly) -> HookPoly {
        let mut out = HookPoly::default();
        for (&(a, l), c) in &self.terms {
            for (&(b, m), d) in &other.terms {
                out.add_term((a + b, l + m), c * d);
            }
        }
        out
    }

    /// The corresponding sum of hook Schur functions `s_{(a|ℓ)}`.
    pub fn to_schur(&self) -> SymExpr<i64> {
        SymExpr::from_terms(
            Basis::Schur,
            self.terms.iter().map(|(&(a, l), &c)| (crate::partition::FrobeniusHook { arm: a, leg: l }.to_partition(), c)),
        )
    }

    /// Terms with `ℓ ≤ max_leg`.
    pub fn truncate_leg(&self, max_leg: usize) -> HookPoly {
        HookPoly { terms: self.terms.iter().filter(|((_, l), _)| *l <= max_leg).map(|(k, c)| (*k, *c)).collect() }
    }
}

impl fmt::Display for HookPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mono = |a: usize, l: usize| {
            let mut parts = Vec::new();
            match a {
                0 => {}
                1 => parts.push("u".to_string()),
                _ => parts.push(format!("u^{a}")),
            }
            match l {
                0 => {}
                1 => parts.push("v".to_string()),
                _ => parts.push(format!("v^{l}")),
            }
            parts.join("*")
        };
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|((a, l), _), ((b, m), _)| (b + m, b).cmp(&(a + l, a)));
        for (k, (&(a, l), &c)) in keys.into_iter().enumerate() {
            let m = mono(a, l);
            let sep = match (k, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let body = match (c.abs(), m.is_empty()) {
                (x, true) => x.to_string(),
                (1, false) => m,
                (x, false) => format!("{x}*{m}"),
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for HookPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Keeps the hook-indexed terms, keyed by `(arm, leg)`.
pub fn hook_project(a: &SymExpr<i64>) -> HookPoly {
    HookPoly::from_terms(
        a.to_schur()
            .terms()
            .iter()
            .filter_map(|(lam, &c)| lam.as_hook().map(|h| ((h.arm, h.leg), c))),
    )
}

/// `u^{|τ| − m(m+1)/2} (u² + v)(u³ + v)⋯(u^m + v)` with `m = min(ℓ(τ), ℓ(τ'))`.
pub fn hook_product(tau: &TriangularPartition) -> Result<HookPoly> {
    let m = tau.len().min(tau.conjugate().len());
    let size = tau.size();
    let prefactor = size as i64 - (m * (m + 1) / 2) as i64;
    if prefactor < 0 {
        return Err(Error::Unsupported(format!("negative hook prefactor exponent {prefactor} for {tau}")));
    }
    let mut out = HookPoly::from_terms([((prefactor as usize, 0), 1)]);
    for k in 2..=m {
        out = out.mul(&HookPoly::from_terms([((k, 0), 1), ((0, 1), 1)]));
    }
    Ok(out)
}

/// `e_k^⊥` on the right factor (Schur basis).
pub fn e_perp_right(t: &TensorExpr, k: usize) -> TensorExpr {
    let t = t.with_right_basis(RightBasis::Schur);
    let mut out = TensorExpr::zero(RightBasis::Schur);
    for ((l, r), c) in &t.terms {
        for nu in remove_vertical_strips(r, k) {
            out.add_term(l.clone(), nu, *c);
        }
    }
    out
}


/// Default last `n` examined when searching for the stable range.
pub fn default_cap(tau: &Partition) -> usize {
    tau.size() + 4
}

/// The chain `Ē_τ^(n)` from [`stabilization_start`] up to its first repeat.
#[derive(Clone, Debug, PartialEq)]
pub struct Stabilization {
    pub tau: Partition,
    /// First `n` with `Ē^(n) = Ē^(n+1)`.
    pub threshold: usize,
    pub stable: TensorExpr,
    pub chain: Vec<(usize, TensorExpr)>,
}

impl Stabilization {
    /// `Ē^(n+1) − Ē^(n)` along the chain, keyed by `n`.
    pub fn increments(&self) -> Vec<(usize, TensorExpr)> {
        self.chain.windows(2).map(|w| (w[0].0, &w[1].1 - &w[0].1)).collect()
    }

    /// First increment with a negative entry, if any.
    pub fn first_negative_increment(&self) -> Option<(usize, TensorExpr)> {
        self.increments().into_iter().find(|(_, d)| !d.is_nonnegative())
    }
}

/// `Ē_τ^(n)` computed from Negut's formula.
pub fn bar_epsilon(tau: &TriangularPartition, n: usize) -> Result<TensorExpr> {
    Ok(bar_stable(&decompose_qt(&*crate::negut::epsilon(tau, n)?)?))
}

/// `max(ℓ(τ)+m(τ), ℓ(τ)+1)`: below `ℓ+m` the expansion need not be Schur positive.
pub fn stabilization_start(tau: &Partition) -> usize {
    (tau.len() + tau.max_multiplicity()).max(tau.len() + 1)
}

/// Runs `n` upward from [`stabilization_start`] until two consecutive `Ē^(n)`
/// agree; the first of the two must be at most `cap`.
pub fn stabilize(tau: &TriangularPartition, cap: usize) -> Result<Stabilization> {
    let mut chain: Vec<(usize, TensorExpr)> = Vec::new();
    let mut n = stabilization_start(tau.partition());
    while n <= cap + 1 {
        let bar = bar_epsilon(tau, n)?;
        if let Some((m, prev)) = chain.last() {
            if *prev == bar {
                let (threshold, stable) = (*m, prev.clone());
                chain.push((n, bar));
                return Ok(Stabilization { tau: tau.partition().clone(), threshold, stable, chain });
            }
        }
        chain.push((n, bar));
        n += 1;
    }
    Err(Error::NoStabilization { tau: tau.partition().clone(), cap })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::{nabla, to_polynomial};
    use crate::negut::epsilon;
    use crate::partition::{p, staircase};

    fn tri(parts: &[usize]) -> TriangularPartition {
        TriangularPartition::new(p(parts)).unwrap()
    }

    fn s(parts: &[usize]) -> SymExpr<i64> {
        SymExpr::s(parts)
    }

    #[test]
    fn decompose_examples() {
        let e: SymExpr<QTPoly> = SymExpr::parse("(q + t)*s[2,1] + (q^2 + q*t + t^2)*s[1,1,1]").unwrap();
        let t = decompose_qt(&e).unwrap();
        assert_eq!(t.to_string(), "s[1]⊗s[2,1] + s[2]⊗s[1,1,1]");
        let qt: SymExpr<QTPoly> = SymExpr::parse("q*t*s[1]").unwrap();
        assert_eq!(decompose_qt(&qt).unwrap().coeff(&p(&[1, 1]), &p(&[1])), 1);
        let bad: SymExpr<QTPoly> = SymExpr::parse("q*s[1]").unwrap();
        assert!(matches!(decompose_qt(&bad), Err(Error::NotSymmetric(_))));
        let n3 = to_polynomial(&nabla(&SymExpr::<QTPoly>::e(&[3]).to_schur()).unwrap()).unwrap();
        assert_eq!(
            decompose_qt(&n3).unwrap().to_string(),
            "1⊗s[3] + (s[2] + s[1])⊗s[2,1] + (s[3] + s[1,1])⊗s[1,1,1]"
        );
        assert_eq!(decompose_qt(&n3).unwrap().recompose(), n3);
    }

    #[test]
    fn restriction_and_bars() {
        let e = decompose_qt(&epsilon(&tri(&[3, 2]), 3).unwrap()).unwrap();
        assert!(restrict(&e, 0).terms().keys().all(|(l, _)| l.is_empty()));
        assert_eq!(restrict(&e, 99), e);
        let bar = bar_stable(&e);
        let expected = TensorExpr::from_terms(
            RightBasis::Schur,
            [
                ((p(&[5]), p(&[])), 1),
                ((p(&[3, 1]), p(&[])), 1),
                ((p(&[3]), p(&[1])), 1),
                ((p(&[4]), p(&[1])), 1),
                ((p(&[2, 1]), p(&[1])), 1),
                ((p(&[2]), p(&[2])), 1),
            ],
        );
        assert_eq!(bar, expected);
        assert_eq!(unbar(&bar, 3).unwrap(), e);
        let e0 = TensorExpr::right_only(RightBasis::Schur, p(&[1, 1, 1]));
        assert_eq!(bar_stable(&e0), TensorExpr::right_only(RightBasis::Schur, p(&[])));
        let e21 = decompose_qt(&epsilon(&tri(&[2, 1]), 3).unwrap()).unwrap();
        assert_eq!(unbar(&bar_stable(&e21), 3).unwrap(), e21);
    }

    #[test]
    fn alternants() {
        let e = decompose_qt(&epsilon(&tri(&[2, 1]), 3).unwrap()).unwrap();
        assert_eq!(alternant(&e, 3), s(&[3]) + s(&[1, 1]));
        let e = decompose_qt(&epsilon(&tri(&[4, 2]), 3).unwrap()).unwrap();
        assert_eq!(alternant(&e, 3), s(&[6]) + s(&[4, 1]) + s(&[2, 2]));
        let e = decompose_qt(&epsilon(&tri(&[]), 3).unwrap()).unwrap();
        assert_eq!(alternant(&e, 3), SymExpr::one());
        assert_eq!(two_row_alternant(4, 2).unwrap(), s(&[6]) + s(&[4, 1]) + s(&[2, 2]));
        assert_eq!(two_row_alternant(3, 2).unwrap(), s(&[5]) + s(&[3, 1]));
        assert_eq!(two_row_alternant(1, 1).unwrap(), s(&[2]));
        assert!(two_row_alternant(2, 2).is_err());
    }

    #[test]
    fn hooks() {
        let prod = hook_product(&tri(&[5, 4, 3, 2, 1])).unwrap();
        assert_eq!(prod.len(), 15);
        assert_eq!(prod.coeff(7, 2), 2);
        assert_eq!(
            prod.to_string(),
            "u^14 + u^12*v + u^11*v + u^10*v + u^9*v^2 + u^9*v + u^8*v^2 + 2*u^7*v^2 + u^6*v^2 + u^5*v^3 \
             + u^5*v^2 + u^4*v^3 + u^3*v^3 + u^2*v^3 + v^4"
        );
        assert_eq!(hook_product(&tri(&[3, 2])).unwrap(), hook_project(&(s(&[5]) + s(&[3, 1]))));
        assert_eq!(hook_product(&tri(&[1])).unwrap(), HookPoly::from_terms([((0, 0), 1)]));
        assert!(hook_project(&s(&[2, 2])).is_empty());
        assert_eq!(hook_project(&s(&[5])), HookPoly::from_terms([((4, 0), 1)]));
    }

    #[test]
    fn stable_chains() {
        let st = stabilize(&tri(&[1, 1]), 8).unwrap();
        assert_eq!(st.threshold, 4);
        let expected = TensorExpr::from_terms(
            RightBasis::Schur,
            [((p(&[2]), p(&[])), 1), ((p(&[1]), p(&[1])), 1), ((p(&[]), p(&[1, 1])), 1)],
        );
        assert_eq!(st.stable, expected);
        assert!(st.first_negative_increment().is_none());
        let st = stabilize(&tri(&[3, 1]), 8).unwrap();
        assert_eq!(st.threshold, 4);
        assert!(matches!(stabilize(&tri(&[1, 1, 1]), 5), Err(Error::NoStabilization { cap: 5, .. })));
        assert_eq!(stabilize(&tri(&[1, 1, 1]), 6).unwrap().threshold, 6);
        assert_eq!(stabilization_start(&p(&[1, 1, 1, 1])), 8);
        assert_eq!(stabilization_start(&p(&[2, 1])), 3);
        assert_eq!(stabilization_start(&p(&[])), 1);
    }

    #[test]
    fn json_round_trip() {
        let e = decompose_qt(&epsilon(&tri(&[2, 1]), 3).unwrap()).unwrap();
        let back = TensorExpr::from_json(&e.to_json()).unwrap();
        assert_eq!(back, e);
        let as_e = e.with_right_basis(RightBasis::Elementary);
        assert_eq!(as_e.with_right_basis(RightBasis::Schur), e);
        assert_eq!(TensorExpr::from_json(&as_e.to_json()).unwrap(), as_e);
    }

    #[test]
    fn negut_outputs_restrict_to_two_rows() {
        for n in 2..=5 {
            let e = decompose_qt(&epsilon(&TriangularPartition::new(staircase(n)).unwrap(), n).unwrap()).unwrap();
            assert_eq!(restrict(&e, 2), e);
            assert_eq!(e.recompose(), *epsilon(&TriangularPartition::new(staircase(n)).unwrap(), n).unwrap());
        }
    }
}
