//! Closed forms for the one-row, one-column and `(a,1)` families.

use crate::partition::Partition;
use crate::symfunc::{Basis, SymExpr};
use crate::tensor::{RightBasis, TensorExpr};
use crate::universal::EArrowExpr;

/// `s_λ` for a weakly decreasing list, zero if any part is negative or the list increases.
pub fn s_or_zero(parts: &[i64]) -> SymExpr<i64> {
    if parts.iter().any(|&x| x < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
        return SymExpr::zero(Basis::Schur);
    }
    let parts: Vec<usize> = parts.iter().map(|&x| x as usize).collect();
    SymExpr::s(&parts)
}

/// `1 + s_1 + ⋯ + s_k`, empty when `k < 0`.
pub fn row_sum(k: i64) -> SymExpr<i64> {
    (0..=k).fold(SymExpr::zero(Basis::Schur), |acc, j| acc + s_or_zero(&[j]))
}

fn part(parts: &[usize]) -> Partition {
    Partition::from_unsorted(parts.to_vec())
}

fn add(t: &mut TensorExpr, left: &SymExpr<i64>, right: &[usize]) {
    *t = &*t + &TensorExpr::tensor(left, t.right_basis(), &part(right));
}

/// `2^k 1^{n−2k}`.
fn two_ones(k: usize, n: usize) -> Vec<usize> {
    let mut v = vec![2; k];
    v.extend(std::iter::repeat(1).take(n - 2 * k));
    v
}

/// `E_0^(n) = 1 ⊗ s_{1^n}`.
pub fn e_empty(n: usize) -> TensorExpr {
    let mut t = TensorExpr::zero(RightBasis::Schur);
    add(&mut t, &SymExpr::one(), &vec![1; n]);
    t
}

/// `E_d^(n) = s_{d−1} ⊗ s_{21^{n−2}} + s_d ⊗ s_{1^n}`, `n ≥ 2`.
pub fn e_row(d: usize, n: usize) -> TensorExpr {
    let mut t = TensorExpr::zero(RightBasis::Schur);
    add(&mut t, &s_or_zero(&[d as i64 - 1]), &two_ones(1, n));
    add(&mut t, &s_or_zero(&[d as i64]), &vec![1; n]);
    t
}

/// `E_{1^d}^(n) = Σ_k s_{d−k} ⊗ s_{2^k 1^{n−2k}}`, `n ≥ 2d`.
pub fn e_column(d: usize, n: usize) -> TensorExpr {
    let mut t = TensorExpr::zero(RightBasis::Schur);
    for k in 0..=d {
        add(&mut t, &s_or_zero(&[(d - k) as i64]), &two_ones(k, n));
    }
    t
}

/// `E_{(a,1)}^(3)`, `a ≥ 2`.
pub fn e_a1_3(a: usize) -> TensorExpr {
    let a = a as i64;
    let mut t = TensorExpr::zero(RightBasis::Schur);
    add(&mut t, &s_or_zero(&[a - 2]), &[3]);
    add(&mut t, &(s_or_zero(&[a - 1]) + s_or_zero(&[a]) + s_or_zero(&[a - 2, 1])), &[2, 1]);
    add(&mut t, &(s_or_zero(&[a + 1]) + s_or_zero(&[a - 1, 1])), &[1, 1, 1]);
    t
}

/// `E_{(a,1)}^(4)`, `a ≥ 2`.
pub fn e_a1_4(a: usize) -> TensorExpr {
    let a = a as i64;
    let mut t = TensorExpr::zero(RightBasis::Schur);
    add(&mut t, &s_or_zero(&[a - 2]), &[3, 1]);
    add(&mut t, &(s_or_zero(&[a - 1]) + s_or_zero(&[a]) + s_or_zero(&[a - 2, 1])), &[2, 1, 1]);
    add(&mut t, &(s_or_zero(&[a + 1]) + s_or_zero(&[a - 1, 1])), &[1, 1, 1, 1]);
    add(&mut t, &s_or_zero(&[a - 1]), &[2, 2]);
    t
}

fn f_from(terms: Vec<(SymExpr<i64>, &[usize])>) -> EArrowExpr {
    let mut t = TensorExpr::zero(RightBasis::Elementary);
    for (l, r) in terms {
        add(&mut t, &l, r);
    }
    EArrowExpr::new(t, true)
}

/// `F_d = s_d ⊗ 1 + (1 + s_1 + ⋯ + s_{d−1}) ⊗ e_1`; `F_0 = 1 ⊗ 1`.
pub fn f_row(d: usize) -> EArrowExpr {
    let d = d as i64;
    f_from(vec![(s_or_zero(&[d]), &[]), (row_sum(d - 1), &[1])])
}

/// `F_{1^d} = Σ_k s_{d−k} ⊗ e_k`.
pub fn f_column(d: usize) -> EArrowExpr {
    let ks: Vec<Vec<usize>> = (0..=d).map(|k| if k == 0 { vec![] } else { vec![k] }).collect();
    f_from(ks.iter().enumerate().map(|(k, r)| (s_or_zero(&[(d - k) as i64]), r.as_slice())).collect())
}

/// `F_{(a,1)}`, `a ≥ 2`, with `e_1` coefficient `s_a + (1 + s_1 + ⋯ + s_{a−2}) s_1`.
pub fn f_a1(a: usize) -> EArrowExpr {
    let a = a as i64;
    f_from(vec![
        (s_or_zero(&[a + 1]) + s_or_zero(&[a - 1, 1]), &[]),
        (s_or_zero(&[a]) + row_sum(a - 2).mul(&s_or_zero(&[1])), &[1]),
        (s_or_zero(&[a - 1]), &[2]),
        (row_sum(a - 2), &[1, 1]),
    ])
}

/// Stable `Ē` of the three simplest families.
pub fn bar_empty() -> TensorExpr {
    TensorExpr::tensor(&SymExpr::one(), RightBasis::Schur, &Partition::empty())
}

pub fn bar_row(d: usize) -> TensorExpr {
    let mut t = TensorExpr::zero(RightBasis::Schur);
    add(&mut t, &s_or_zero(&[d as i64 - 1]), &[1]);
    add(&mut t, &s_or_zero(&[d as i64]), &[]);
    t
}

pub fn bar_column(d: usize) -> TensorExpr {
    let mut t = TensorExpr::zero(RightBasis::Schur);
    for k in 0..=d {
        add(&mut t, &s_or_zero(&[(d - k) as i64]), &vec![1; k]);
    }
    t
}

/// The closed-form stable `Ē_τ` when `τ` is empty, a row or a column.
pub fn bar_closed_form(tau: &Partition) -> Option<TensorExpr> {
    if tau.is_empty() {
        Some(bar_empty())
    } else if tau.len() == 1 {
        Some(bar_row(tau.part(0)))
    } else if tau.part(0) == 1 {
        Some(bar_column(tau.len()))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::p;

    #[test]
    fn shapes() {
        assert_eq!(e_row(1, 3), e_column(1, 3));
        assert_eq!(f_row(1).tensor(), f_column(1).tensor());
        assert_eq!(f_row(0).tensor(), &TensorExpr::tensor(&SymExpr::one(), RightBasis::Elementary, &p(&[])));
        assert_eq!(e_a1_3(2).coeff(&p(&[]), &p(&[3])), 1);
        assert_eq!(e_a1_3(2).left_coefficient(&p(&[2, 1])), SymExpr::s(&[2]) + SymExpr::s(&[1]));
        assert_eq!(f_a1(3).tensor().left_coefficient(&p(&[1])), SymExpr::parse("s[3] + s[2] + s[1,1] + s[1]").unwrap());
        assert_eq!(bar_closed_form(&p(&[1, 1])), Some(bar_column(2)));
        assert_eq!(bar_closed_form(&p(&[2, 1])), None);
        assert!(s_or_zero(&[1, 2]).is_zero());
    }
}
