//! Negut's formula: `E_τ^(n)` as a sum over standard tableaux of every shape
//! `μ ⊢ n`, weighted by a rational function `Ω(θ)` and a monomial twist
//! determined by `τ`, against `H̃_μ`.
//!
//! Cells are `(i, j)` = (column, row) and `q` carries the column index
//! throughout. `v_τ` is indexed by tableau entry: `v(1) = 0` and
//! `v(k) = τ_{k−1} − τ_k` for `k ≥ 2`, with `τ` padded by zeros.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use crate::cyclo::{self, Factored, Frac};
use crate::error::{Error, Result};
use crate::macdonald::htilde;
use crate::par;
use crate::partition::{partitions_of, Partition, TriangularPartition};
use crate::qt::{Exp, QTPoly, QTRational};
use crate::symfunc::{Basis, SymExpr};

/// Bijective filling of a diagram by `1..=n`, increasing along rows and up columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StandardTableau {
    shape: Partition,
    /// `rows[j][i]` is the entry of cell `(i, j)`; row 0 is the bottom row.
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.rows[j][i]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Cell holding each entry, indexed by `entry − 1`.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(0, 0); self.shape.size()];
        for (j, row) in self.rows.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                out[v - 1] = (i, j);
            }
        }
        out
    }
}

/// All standard tableaux of shape `μ`.
pub fn enumerate_syt(mu: &Partition) -> Vec<StandardTableau> {
    let n = mu.size();
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); mu.len()];
    fn rec(mu: &Partition, k: usize, n: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<StandardTableau>) {
        if k > n {
            out.push(StandardTableau { shape: mu.clone(), rows: rows.clone() });
            return;
        }
        for j in 0..rows.len() {
            let i = rows[j].len();
            let fits = i < mu.part(j) && (j == 0 || rows[j - 1].len() > i);
            if fits {
                rows[j].push(k);
                rec(mu, k + 1, n, rows, out);
                rows[j].pop();
            }
        }
    }
    rec(mu, 1, n, &mut rows, &mut out);
    out
}

/// `v_τ` of length `n`, indexed by tableau entry minus one.
pub fn v_tau(tau: &Partition, n: usize) -> Vec<i64> {
    (1..=n)
        .map(|k| if k == 1 { 0 } else { tau.part(k - 2) as i64 - tau.part(k - 1) as i64 })
        .collect()
}

/// The per-tableau data entering the sum.
#[derive(Clone, Debug, PartialEq)]
pub struct NegutWeightData {
    pub v_tau: Vec<i64>,
    pub t_mu_tau: QTPoly,
    pub omega: QTRational,
}

/// `T_μ^τ(θ) = Π (q^i t^j)^{v_τ(θ(i,j))}` as an exponent pair.
pub fn t_mu_tau_exponent(theta: &StandardTableau, v: &[i64]) -> Exp {
    let (mut a, mut b) = (0i64, 0i64);
    for (j, row) in theta.rows.iter().enumerate() {
        for (i, &k) in row.iter().enumerate() {
            a += i as i64 * v[k - 1];
            b += j as i64 * v[k - 1];
        }
    }
    (a as i32, b as i32)
}

/// `Ω(θ)` in factored form.
pub fn omega_factored(theta: &StandardTableau) -> Factored {
    let pos = theta.positions();
    let mono = |i: usize, j: usize| (i as i32, j as i32);
    let mut out = Factored::one();
    for (lo, &(i, j)) in pos.iter().enumerate() {
        for &(a, b) in &pos[lo + 1..] {
            let ab = mono(a, b);
            out.mul_assign(&Factored::star_binomial(ab, mono(i, j)));
            out.mul_assign(&Factored::star_binomial(ab, mono(i + 1, j + 1)));
            out.div_assign(&Factored::star_binomial(ab, mono(i + 1, j)));
            out.div_assign(&Factored::star_binomial(ab, mono(i, j + 1)));
        }
        if let Some(&(a, b)) = pos.get(lo + 1) {
            out.mul_assign(&Factored::monomial(mono(a, b)));
            out.div_assign(&Factored::binomial(mono(a, b), mono(i + 1, j + 1)).expect("adjacent entries never sit diagonally"));
        }
        if lo > 0 {
            out.div_assign(&Factored::binomial(mono(i, j), (0, 0)).expect("only entry 1 sits at the corner"));
        }
    }
    out
}

pub fn omega_weight(theta: &StandardTableau) -> QTRational {
    omega_factored(theta).to_rational()
}

pub fn weight_data(tau: &Partition, theta: &StandardTableau) -> NegutWeightData {
    let v = v_tau(tau, theta.shape.size());
    let (a, b) = t_mu_tau_exponent(theta, &v);
    NegutWeightData {
        t_mu_tau: QTPoly::monomial(1, a, b),
        omega: omega_weight(theta),
        v_tau: v,
    }
}

/// `Σ_θ Ω(θ) T_μ^τ(θ) / T_μ` over `SYT(μ)`.
pub fn shape_coefficient(tau: &Partition, mu: &Partition) -> Frac {
    let n = mu.size();
    let v = v_tau(tau, n);
    let t_mu = (mu.eta() as i32, mu.row_weight() as i32);
    let terms: Vec<Frac> = enumerate_syt(mu)
        .iter()
        .map(|theta| {
            let mut w = omega_factored(theta);
            let (a, b) = t_mu_tau_exponent(theta, &v);
            w.mul_assign(&Factored::monomial((a - t_mu.0, b - t_mu.1)));
            w.to_frac()
        })
        .collect();
    cyclo::sum(&terms)
}

type EpsilonCache = RwLock<HashMap<(Partition, usize), Arc<SymExpr<QTPoly>>>>;

fn cache() -> &'static EpsilonCache {
    static CACHE: OnceLock<EpsilonCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `E_τ^(n)(q,t;x)` in the Schur basis.
pub fn epsilon(tau: &TriangularPartition, n: usize) -> Result<Arc<SymExpr<QTPoly>>> {
    let min = tau.len() + 1;
    if n < min {
        return Err(Error::NTooSmall { n, min });
    }
    let key = (tau.partition().clone(), n);
    if let Some(e) = cache().read().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let e = Arc::new(epsilon_uncached(tau.partition(), n)?);
    Ok(cache().write().unwrap().entry(key).or_insert(e).clone())
}

/// Negut's sum for any partition `τ` (no triangularity check, no cache).
pub fn epsilon_uncached(tau: &Partition, n: usize) -> Result<SymExpr<QTPoly>> {
    let mus = partitions_of(n);
    let hs: Vec<_> = mus.iter().map(htilde).collect::<Result<_>>()?;
    let weights = par::map(&mus, |mu| shape_coefficient(tau, mu));
    let vectors: Vec<&BTreeMap<Partition, QTPoly>> = hs.iter().map(|h| h.terms()).collect();
    let combined = cyclo::combine(&weights, &vectors);
    let mut out = SymExpr::zero(Basis::Schur);
    for (lam, f) in combined {
        if !f.is_polynomial() {
            return Err(Error::NonPolynomial(format!("coefficient of s{lam} in E_{tau}^({n})")));
        }
        out.add_term(lam, f.num);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::macdonald::{nabla, to_polynomial};
    use crate::partition::{p, staircase};

    fn tri(parts: &[usize]) -> TriangularPartition {
        TriangularPartition::new(p(parts)).unwrap()
    }

    fn sym(s: &str) -> SymExpr<QTPoly> {
        SymExpr::parse(s).unwrap()
    }

    fn hook_length_count(mu: &Partition) -> usize {
        let n = mu.size();
        let mut num: u128 = (1..=n as u128).product();
        for (i, j) in mu.cells() {
            num /= (mu.arm(i, j) + mu.leg(i, j) + 1) as u128;
        }
        num as usize
    }

    #[test]
    fn syt_counts() {
        assert_eq!(enumerate_syt(&p(&[2, 1])).len(), 2);
        assert_eq!(enumerate_syt(&p(&[1, 1, 1])).len(), 1);
        assert_eq!(enumerate_syt(&p(&[3, 2])).len(), 5);
        for n in 0..=7 {
            for mu in partitions_of(n) {
                let all = enumerate_syt(&mu);
                assert_eq!(all.len(), hook_length_count(&mu), "{mu}");
                let distinct: std::collections::HashSet<_> = all.iter().collect();
                assert_eq!(distinct.len(), all.len());
            }
        }
    }

    #[test]
    fn omega_small_cases() {
        let single = &enumerate_syt(&p(&[1]))[0];
        assert_eq!(omega_weight(single), QTRational::one());
        // Two cells stacked: entry 2 at (0,1).
        // Pair group: (t - 1)^* (t - q t)^* / ((t - q)^* (t - t)^*) = (t - 1)(t - qt)/(t - q);
        // adjacency: t/(t - qt); corner: 1/(t - 1).
        let col = &enumerate_syt(&p(&[1, 1]))[0];
        let expected = QTRational::new(QTPoly::parse("t").unwrap(), QTPoly::parse("t - q").unwrap()).unwrap();
        assert_eq!(omega_weight(col), expected);
        let data = weight_data(&p(&[1]), col);
        assert_eq!(data.v_tau, vec![0, 1]);
        assert_eq!(data.t_mu_tau, QTPoly::parse("t").unwrap());
    }

    #[test]
    fn staircase_gives_nabla_e_n() {
        for n in 2..=4 {
            let e = epsilon(&TriangularPartition::new(staircase(n)).unwrap(), n).unwrap();
            let en = SymExpr::<QTPoly>::e(&[n]).to_schur();
            assert_eq!(*e, to_polynomial(&nabla(&en).unwrap()).unwrap(), "n={n}");
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(*epsilon(&tri(&[]), 3).unwrap(), sym("s[1,1,1]"));
        assert_eq!(*epsilon(&tri(&[]), 4).unwrap(), sym("s[1,1,1,1]"));
        assert_eq!(
            *epsilon(&tri(&[2]), 3).unwrap(),
            sym("(q + t)*s[2,1] + (q^2 + q*t + t^2)*s[1,1,1]")
        );
        assert_eq!(*epsilon(&tri(&[1]), 3).unwrap(), sym("s[2,1] + (q + t)*s[1,1,1]"));
        assert!(matches!(epsilon(&tri(&[2, 1]), 2), Err(Error::NTooSmall { n: 2, min: 3 })));
    }

    #[test]
    fn nabla_shifts_by_staircase() {
        for n in 3..=4 {
            for tau in [p(&[]), p(&[1])] {
                let e = epsilon(&TriangularPartition::new(tau.clone()).unwrap(), n).unwrap();
                let shifted = tau.partwise_add(&staircase(n));
                let lhs = to_polynomial(&nabla(&e).unwrap()).unwrap();
                let rhs = epsilon(&TriangularPartition::new(shifted).unwrap(), n).unwrap();
                assert_eq!(lhs, *rhs, "{tau} n={n}");
            }
        }
    }
}
