//! The uniform description `E_τ^(n)(q; x) = ↑^(n) F_τ(q − 1; x)`, where
//! `F_τ = ↓E_τ(q + 1; x)` is written in the `e` basis on the right.

use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::negut::epsilon;
use crate::partition::{subpartitions, Partition, TriangularPartition};
use crate::qt::QTPoly;
use crate::symfunc::{remove_horizontal_strips, remove_vertical_strips, skew_schur, Basis, SymExpr};
use crate::tensor::{default_cap, stabilize, unbar, RightBasis, Stabilization, TensorExpr};

/// `s_ρ(q ± 1)` in one-variable-shifted Schur functions of `q`.
pub fn shift_schur(rho: &Partition, direction: i32) -> SymExpr<i64> {
    let mut out = SymExpr::zero(Basis::Schur);
    for k in 0..=rho.size() {
        if direction >= 0 {
            for mu in remove_horizontal_strips(rho, k) {
                out.add_term(mu, 1);
            }
        } else {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            for mu in remove_vertical_strips(rho, k) {
                out.add_term(mu, sign);
            }
        }
    }
    out
}

/// Plethysm `q ↦ q + 1` (`direction = 1`) or `q ↦ q − 1` (`direction = −1`) on the left factor.
pub fn shift_left(t: &TensorExpr, direction: i32) -> TensorExpr {
    t.map_left(|rho| shift_schur(rho, direction))
}

/// Same plethysm on a plain expression.
pub fn shift(f: &SymExpr<i64>, direction: i32) -> SymExpr<i64> {
    let mut out = SymExpr::zero(Basis::Schur);
    for (rho, c) in f.to_schur().terms() {
        for (mu, d) in shift_schur(rho, direction).terms() {
            out.add_term(mu.clone(), c * d);
        }
    }
    out
}

/// Drops the first (largest) part of every right index `e_λ`.
pub fn down_arrow(t: &TensorExpr) -> TensorExpr {
    t.with_right_basis(RightBasis::Elementary).map_right(RightBasis::Elementary, |lam| {
        SymExpr::e(lam.parts().get(1..).unwrap_or(&[]))
    })
}

/// `e_ν ↦ e_{n−|ν|} e_ν`. Inverse to [`down_arrow`] when `n − |ν| ≥ ν_1` throughout.
pub fn up_arrow(t: &TensorExpr, n: usize) -> Result<TensorExpr> {
    let t = t.with_right_basis(RightBasis::Elementary);
    if let Some(nu) = t.terms().keys().map(|(_, r)| r).find(|r| r.size() > n) {
        return Err(Error::NTooSmall { n, min: nu.size() });
    }
    Ok(t.map_right(RightBasis::Elementary, |nu| {
        let mut parts = nu.parts().to_vec();
        parts.push(n - nu.size());
        SymExpr::e(&Partition::from_unsorted(parts).into_parts())
    }))
}

/// `F_τ` with a flag recording whether the two-variable data determines it.
#[derive(Clone, PartialEq, Eq)]
pub struct EArrowExpr {
    tensor: TensorExpr,
    exact: bool,
}

impl EArrowExpr {
    pub fn new(tensor: TensorExpr, exact: bool) -> Self {
        EArrowExpr { tensor: tensor.with_right_basis(RightBasis::Elementary), exact }
    }

    pub fn tensor(&self) -> &TensorExpr {
        &self.tensor
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// `⟨F, f_ν⟩`, the left factor paired with `e_ν`.
    pub fn coefficient(&self, nu: &Partition) -> SymExpr<i64> {
        self.tensor.left_coefficient(nu)
    }

    /// `Σ_{ℓ(ν)=k} ⟨F, f_ν⟩`.
    pub fn length_sum(&self, k: usize) -> SymExpr<i64> {
        let mut out = SymExpr::zero(Basis::Schur);
        for nu in self.tensor.right_support().iter().filter(|nu| nu.len() == k) {
            out = out + self.coefficient(nu);
        }
        out
    }

    /// `Σ_ν ⟨F, f_ν⟩`.
    pub fn total(&self) -> SymExpr<i64> {
        let mut out = SymExpr::zero(Basis::Schur);
        for nu in self.tensor.right_support() {
            out = out + self.coefficient(&nu);
        }
        out
    }

    /// `e_1^⊥` on the right factor: `e_ν ↦ Σ_i e_{ν − ε_i}`.
    pub fn e1_perp(&self) -> EArrowExpr {
        let t = self.tensor.map_right(RightBasis::Elementary, |nu| {
            let mut out = SymExpr::zero(Basis::Elementary);
            for i in 0..nu.len() {
                let mut parts = nu.parts().to_vec();
                parts[i] -= 1;
                out.add_term(Partition::from_unsorted(parts), 1);
            }
            out
        });
        EArrowExpr { tensor: t, exact: self.exact }
    }
}

impl fmt::Display for EArrowExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tensor)
    }
}

impl fmt::Debug for EArrowExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tensor, if self.exact { "" } else { " (partial)" })
    }
}

/// `min(ℓ(τ), ℓ(τ')) ≤ 2`: the length-≤2 left factors are all there is.
pub fn is_two_variable(tau: &Partition) -> bool {
    tau.len().min(tau.conjugate().len()) <= 2
}

/// `↓E^(n)(q+1)` built from the stable `Ē`.
fn f_at(stable: &TensorExpr, n: usize) -> Result<TensorExpr> {
    let e = unbar(stable, n)?;
    Ok(down_arrow(&shift_left(&e, 1).with_right_basis(RightBasis::Elementary)))
}

/// `F_τ` from an already stabilized chain.
pub fn f_from_stable(st: &Stabilization) -> Result<EArrowExpr> {
    // Past |μ̄| + ℓ(μ̄) + μ̄_1 the added part of every e-index is its largest.
    let wide = st.stable.terms().keys().map(|(_, m)| m.size() + m.len() + m.part(0)).max().unwrap_or(0);
    let n = wide.max(st.threshold);
    let a = f_at(&st.stable, n)?;
    let b = f_at(&st.stable, n + 1)?;
    if a != b {
        return Err(Error::Inexact(format!("F_{} differs between n = {n} and n = {}", st.tau, n + 1)));
    }
    Ok(EArrowExpr::new(a, is_two_variable(&st.tau)))
}

pub fn f_tau(tau: &TriangularPartition) -> Result<EArrowExpr> {
    f_tau_with_cap(tau, default_cap(tau))
}

pub fn f_tau_with_cap(tau: &TriangularPartition, cap: usize) -> Result<EArrowExpr> {
    f_from_stable(&stabilize(tau, cap)?)
}

/// `↑^(n) F(q − 1)` with right factor in the Schur basis.
pub fn e_from_f(f: &EArrowExpr, n: usize) -> Result<TensorExpr> {
    if !f.is_exact() {
        return Err(Error::Inexact("F carries only its length-≤2 part".into()));
    }
    Ok(up_arrow(&shift_left(f.tensor(), -1), n)?.with_right_basis(RightBasis::Schur))
}

/// `|τ| − |α|`.
pub fn area(tau: &Partition, alpha: &Partition) -> usize {
    tau.size() - alpha.size()
}

/// `Σ_{α⊆τ} q^{area(α)} s_{(α+1^n)/α}`.
pub fn area_sum(tau: &TriangularPartition, n: usize) -> Result<SymExpr<QTPoly>> {
    if n <= tau.len() {
        return Err(Error::NTooSmall { n, min: tau.len() + 1 });
    }
    let column = Partition::column(n);
    let mut out = SymExpr::zero(Basis::Schur);
    for alpha in subpartitions(tau.partition()) {
        let outer = alpha.partwise_add(&column);
        let q = QTPoly::monomial(1, area(tau.partition(), &alpha) as i32, 0);
        for (lam, c) in skew_schur(&outer, &alpha)?.terms() {
            out.add_term(lam.clone(), q.scale(&(*c).into()));
        }
    }
    Ok(out)
}

/// `(q, t)` substitution used for principal evaluation at `k`.
pub fn principal_point(k: usize) -> Result<(i64, i64)> {
    match k {
        0 => Ok((0, 0)),
        1 => Ok((1, 0)),
        2 => Ok((1, 1)),
        _ => Err(Error::Unsupported(format!("principal evaluation at k = {k} needs more than two q-variables"))),
    }
}

/// `E_τ^(n)` at a numeric `(q, t)`, in the `e` basis.
pub fn evaluate_e(tau: &TriangularPartition, n: usize, q: i64, t: i64) -> Result<SymExpr<i64>> {
    let e = epsilon(tau, n)?;
    let v = e.try_map_coeffs(|c| {
        c.specialize(Some(q), Some(t))?
            .as_constant()
            .and_then(|b| b.to_i64())
            .ok_or(Error::NonIntegral)
    })?;
    Ok(v.to_basis(Basis::Elementary))
}

/// `(↑^(n) F_τ)(k; x)` for `k ≤ 2`, read off `E_τ^(n)` at the point [`principal_point`].
pub fn principal_eval(tau: &TriangularPartition, k: usize, n: usize) -> Result<SymExpr<i64>> {
    let (q, t) = principal_point(k)?;
    evaluate_e(tau, n, q, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::p;
    use crate::tensor::decompose_qt;

    fn tri(parts: &[usize]) -> TriangularPartition {
        TriangularPartition::new(p(parts)).unwrap()
    }

    fn s(parts: &[usize]) -> SymExpr<i64> {
        SymExpr::s(parts)
    }

    fn te(terms: &[(&[usize], &[usize], i64)]) -> TensorExpr {
        TensorExpr::from_terms(RightBasis::Elementary, terms.iter().map(|(l, r, c)| ((p(l), p(r)), *c)))
    }

    #[test]
    fn shifts() {
        let x = p(&[2, 1]);
        let t = TensorExpr::tensor(&s(&[2]), RightBasis::Schur, &x);
        assert_eq!(shift_left(&t, 1), TensorExpr::tensor(&(s(&[2]) + s(&[1]) + SymExpr::one()), RightBasis::Schur, &x));
        let t = TensorExpr::tensor(&s(&[1, 1]), RightBasis::Schur, &x);
        assert_eq!(shift_left(&t, 1), TensorExpr::tensor(&(s(&[1, 1]) + s(&[1])), RightBasis::Schur, &x));
        assert_eq!(shift(&s(&[3]), -1), s(&[3]) - s(&[2]));
        for rho in crate::partition::partitions_of(5) {
            assert_eq!(shift(&shift(&s(rho.parts()), 1), -1), s(rho.parts()));
            assert_eq!(shift(&shift(&s(rho.parts()), -1), 1), s(rho.parts()));
        }
    }

    #[test]
    fn arrows() {
        let t = te(&[(&[], &[4, 1], 1)]);
        assert_eq!(down_arrow(&t), te(&[(&[], &[1], 1)]));
        assert_eq!(up_arrow(&te(&[(&[], &[1, 1], 1)]), 5).unwrap(), te(&[(&[], &[3, 1, 1], 1)]));
        assert!(matches!(up_arrow(&te(&[(&[], &[3], 1)]), 2), Err(Error::NTooSmall { .. })));
        let f = te(&[(&[2], &[], 1), (&[1], &[1], 2), (&[], &[2], 1)]);
        assert_eq!(down_arrow(&up_arrow(&f, 6).unwrap()), f);
    }

    #[test]
    fn f_small() {
        let f = f_tau(&tri(&[1, 1, 1])).unwrap();
        assert!(f.is_exact());
        assert_eq!(f.tensor(), &te(&[(&[3], &[], 1), (&[2], &[1], 1), (&[1], &[2], 1), (&[], &[3], 1)]));
        let f = f_tau(&tri(&[2])).unwrap();
        assert_eq!(f.tensor(), &te(&[(&[2], &[], 1), (&[], &[1], 1), (&[1], &[1], 1)]));
        let f = f_tau(&tri(&[])).unwrap();
        assert_eq!(f.tensor(), &te(&[(&[], &[], 1)]));
        assert!(!f_tau(&tri(&[3, 2, 1])).unwrap().is_exact());
    }

    #[test]
    fn f_reconstructs_e() {
        for tau in [p(&[3, 1]), p(&[2, 1, 1]), p(&[1, 1]), p(&[3])] {
            let tau = TriangularPartition::new(tau).unwrap();
            let f = f_tau(&tau).unwrap();
            for n in tau.len() + 1..=tau.len() + 3 {
                let direct = decompose_qt(&epsilon(&tau, n).unwrap()).unwrap();
                assert_eq!(e_from_f(&f, n).unwrap(), direct, "{tau} n={n}");
            }
        }
    }

    #[test]
    fn area_sums() {
        let one = area_sum(&tri(&[1]), 3).unwrap();
        let expected: SymExpr<QTPoly> = SymExpr::parse("s[2,1] + (q + 1)*s[1,1,1]").unwrap();
        assert_eq!(one, expected);
        assert_eq!(area_sum(&tri(&[]), 4).unwrap(), SymExpr::s(&[1, 1, 1, 1]));
        for tau in [p(&[1, 1]), p(&[2, 1]), p(&[3, 1])] {
            let tau = TriangularPartition::new(tau).unwrap();
            for n in tau.len() + 1..=5 {
                let e = epsilon(&tau, n).unwrap();
                let at1 = e.try_map_coeffs(|c| c.specialize(None, Some(1))).unwrap();
                assert_eq!(area_sum(&tau, n).unwrap(), at1, "{tau} n={n}");
            }
        }
    }

    #[test]
    fn principal_values_at_two_ones() {
        // Two unit q-variables give the k = 1 values of the staircase polynomials.
        let v = evaluate_e(&tri(&[3, 2, 1]), 6, 1, 1).unwrap();
        let expected = SymExpr::from_terms(
            Basis::Elementary,
            [
                (p(&[6]), 1),
                (p(&[5, 1]), 3),
                (p(&[4, 2]), 2),
                (p(&[3, 3]), 1),
                (p(&[4, 1, 1]), 3),
                (p(&[3, 2, 1]), 3),
                (p(&[3, 1, 1, 1]), 1),
            ],
        );
        assert_eq!(v, expected);
        assert_eq!(evaluate_e(&tri(&[3, 2, 1]), 6, 1, 0).unwrap(), SymExpr::e(&[3, 1, 1, 1]));
        assert!(principal_eval(&tri(&[1]), 3, 4).is_err());
    }
}
