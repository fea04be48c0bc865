//! Factored rational functions whose denominators are products of binomials
//! `q^a t^b − q^c t^d`.
//!
//! Every such binomial is a signed monomial times `Π_{d|g} Φ_d(q^x t^y)` with
//! `(x, y)` primitive, so denominators are tracked as multisets of these
//! irreducible factors. Sums then use an exact least common multiple and
//! cancellation is a trial division per factor.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::par;
use crate::qt::{Exp, QTPoly, QTRational};

/// `Φ_d(q^a t^b)` with `gcd(a, b) = 1` and `a > 0`, or `a = 0, b = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factor {
    pub d: u32,
    pub a: i32,
    pub b: i32,
}

fn cyclotomic(d: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(v) = cache.read().unwrap().get(&d) {
        return v.clone();
    }
    // x^d - 1 divided by Φ_e for every proper divisor e of d.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); d as usize + 1];
    num[0] = -BigInt::one();
    num[d as usize] = BigInt::one();
    for e in 1..d {
        if d % e == 0 {
            num = monic_div(&num, &cyclotomic(e));
        }
    }
    let v = Arc::new(num);
    cache.write().unwrap().insert(d, v.clone());
    v
}

fn monic_div(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        for (i, x) in b.iter().enumerate() {
            r[k + i] -= &c * x;
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

impl Factor {
    pub fn poly(&self) -> QTPoly {
        static CACHE: OnceLock<RwLock<HashMap<Factor, QTPoly>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(p) = cache.read().unwrap().get(self) {
            return p.clone();
        }
        let p = QTPoly::from_univariate(&cyclotomic(self.d), self.a, self.b);
        cache.write().unwrap().insert(*self, p.clone());
        p
    }
}

/// `±q^x t^y · Π Φ^{e}` with signed exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub negative: bool,
    pub mono: Exp,
    pub factors: BTreeMap<Factor, i32>,
}

impl Default for Factored {
    fn default() -> Self {
        Factored::one()
    }
}

impl Factored {
    pub fn one() -> Self {
        Factored { negative: false, mono: (0, 0), factors: BTreeMap::new() }
    }

    pub fn monomial(e: Exp) -> Self {
        Factored { mono: e, ..Factored::one() }
    }

    /// `q^{m1} − q^{m2}` (both monomials with coefficient 1); `None` when zero.
    pub fn binomial(m1: Exp, m2: Exp) -> Option<Self> {
        let (mut x, mut y) = (m1.0 - m2.0, m1.1 - m2.1);
        if x == 0 && y == 0 {
            return None;
        }
        let mut out = Factored::monomial(m2);
        if x < 0 || (x == 0 && y < 0) {
            out.negative = true;
            out.mono = (out.mono.0 + x, out.mono.1 + y);
            x = -x;
            y = -y;
        }
        let g = (x as i64).gcd(&(y as i64)) as i32;
        let (a, b) = (x / g, y / g);
        for d in 1..=g {
            if g % d == 0 {
                *out.factors.entry(Factor { d: d as u32, a, b }).or_insert(0) += 1;
            }
        }
        Some(out)
    }

    /// `(m1 − m2)^*`: the binomial, or 1 when it vanishes.
    pub fn star_binomial(m1: Exp, m2: Exp) -> Self {
        Factored::binomial(m1, m2).unwrap_or_else(Factored::one)
    }

    pub fn mul_assign(&mut self, other: &Factored) {
        self.negative ^= other.negative;
        self.mono = (self.mono.0 + other.mono.0, self.mono.1 + other.mono.1);
        for (f, e) in &other.factors {
            let v = self.factors.entry(*f).or_insert(0);
            *v += e;
            if *v == 0 {
                self.factors.remove(f);
            }
        }
    }

    pub fn div_assign(&mut self, other: &Factored) {
        self.mul_assign(&other.inverse());
    }

    pub fn inverse(&self) -> Factored {
        Factored {
            negative: self.negative,
            mono: (-self.mono.0, -self.mono.1),
            factors: self.factors.iter().map(|(f, e)| (*f, -e)).collect(),
        }
    }

    pub fn to_frac(&self) -> Frac {
        let mut num = QTPoly::monomial(if self.negative { -1 } else { 1 }, self.mono.0, self.mono.1);
        let mut den = BTreeMap::new();
        for (f, &e) in &self.factors {
            if e > 0 {
                for _ in 0..e {
                    num = &num * &f.poly();
                }
            } else if e < 0 {
                den.insert(*f, (-e) as u32);
            }
        }
        Frac { num, den }
    }

    pub fn to_rational(&self) -> QTRational {
        self.to_frac().to_rational()
    }
}

/// `num / Π factor^mult`.
#[derive(Clone, Debug, PartialEq)]
pub struct Frac {
    pub num: QTPoly,
    pub den: BTreeMap<Factor, u32>,
}

impl Frac {
    pub fn zero() -> Self {
        Frac { num: QTPoly::zero(), den: BTreeMap::new() }
    }

    pub fn from_poly(p: QTPoly) -> Self {
        Frac { num: p, den: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn den_poly(&self) -> QTPoly {
        den_poly(&self.den)
    }

    /// Multiplies the numerator by the factors of `lcm / den`.
    fn lift_to(&self, lcm: &BTreeMap<Factor, u32>) -> QTPoly {
        let mut num = self.num.clone();
        for (f, &m) in lcm {
            let have = self.den.get(f).copied().unwrap_or(0);
            for _ in have..m {
                num = &num * &f.poly();
            }
        }
        num
    }

    /// Cancels every denominator factor that divides the numerator.
    pub fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut left = BTreeMap::new();
        for (f, &m) in &self.den {
            let p = f.poly();
            let mut keep = m;
            while keep > 0 {
                match self.num.div_exact(&p) {
                    Some(q) => {
                        self.num = q;
                        keep -= 1;
                    }
                    None => break,
                }
            }
            if keep > 0 {
                left.insert(*f, keep);
            }
        }
        self.den = left;
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn to_rational(&self) -> QTRational {
        if self.den.is_empty() {
            QTRational::from_poly(self.num.clone())
        } else {
            QTRational::new(self.num.clone(), self.den_poly()).expect("nonzero denominator")
        }
    }

    pub fn scale(&self, p: &QTPoly) -> Frac {
        Frac { num: &self.num * p, den: self.den.clone() }
    }
}

pub fn den_poly(den: &BTreeMap<Factor, u32>) -> QTPoly {
    let mut out = QTPoly::one();
    for (f, &m) in den {
        for _ in 0..m {
            out = &out * &f.poly();
        }
    }
    out
}

pub fn lcm(dens: impl IntoIterator<Item = impl std::borrow::Borrow<BTreeMap<Factor, u32>>>) -> BTreeMap<Factor, u32> {
    let mut out: BTreeMap<Factor, u32> = BTreeMap::new();
    for d in dens {
        for (f, &m) in d.borrow() {
            let v = out.entry(*f).or_insert(0);
            *v = (*v).max(m);
        }
    }
    out
}

/// Exact sum of fractions over their least common denominator, then reduced.
pub fn sum(terms: &[Frac]) -> Frac {
    let l = lcm(terms.iter().map(|t| &t.den));
    let mut num = QTPoly::zero();
    for t in terms {
        if !t.is_zero() {
            num += &t.lift_to(&l);
        }
    }
    let mut out = Frac { num, den: l };
    out.reduce();
    out
}

/// `Σ_μ w_μ · v_μ` for fractional weights `w_μ` and polynomial vectors `v_μ`,
/// computed over a common denominator and reduced per coordinate.
pub fn combine<K: Ord + Clone + Send + Sync>(weights: &[Frac], vectors: &[&BTreeMap<K, QTPoly>]) -> BTreeMap<K, Frac> {
    assert_eq!(weights.len(), vectors.len());
    let l = lcm(weights.iter().map(|w| &w.den));
    let lifted: Vec<QTPoly> = par::map(weights, |w| if w.is_zero() { QTPoly::zero() } else { w.lift_to(&l) });
    let mut keys: Vec<K> = vectors.iter().flat_map(|v| v.keys().cloned()).collect();
    keys.sort();
    keys.dedup();
    let entries = par::map(&keys, |k| {
        let mut num = QTPoly::zero();
        for (m, v) in lifted.iter().zip(vectors) {
            if m.is_zero() {
                continue;
            }
            if let Some(c) = v.get(k) {
                num += &(m * c);
            }
        }
        let mut f = Frac { num, den: l.clone() };
        f.reduce();
        f
    });
    keys.into_iter().zip(entries).filter(|(_, f)| !f.is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(s: &str) -> QTPoly {
        QTPoly::parse(s).unwrap()
    }

    #[test]
    fn cyclotomic_values() {
        let six: Vec<i64> = cyclotomic(6).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(six, vec![1, -1, 1]);
        let twelve: Vec<i64> = cyclotomic(12).iter().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(twelve, vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn binomials_expand_back() {
        for (m1, m2) in [((2, 0), (0, 4)), ((0, 0), (3, 3)), ((1, 2), (4, 2)), ((0, 5), (0, 1)), ((2, -1), (0, 3))] {
            let f = Factored::binomial(m1, m2).unwrap();
            let expected = &QTPoly::monomial(1, m1.0, m1.1) - &QTPoly::monomial(1, m2.0, m2.1);
            assert_eq!(f.to_frac().num, expected, "{m1:?} {m2:?}");
        }
        assert!(Factored::binomial((1, 1), (1, 1)).is_none());
        assert_eq!(Factored::star_binomial((1, 1), (1, 1)), Factored::one());
    }

    #[test]
    fn sums_cancel() {
        // 1/(q-1) - q/(q-1) = -1
        let a = Factored::binomial((1, 0), (0, 0)).unwrap().inverse().to_frac();
        let b = a.scale(&qp("-q"));
        let s = sum(&[a, b]);
        assert!(s.is_polynomial());
        assert_eq!(s.num, QTPoly::constant(-1));
        // 1/(q^2-1) + 1/(q-1) = (q+2)/(q^2-1)
        let c = Factored::binomial((2, 0), (0, 0)).unwrap().inverse().to_frac();
        let d = Factored::binomial((1, 0), (0, 0)).unwrap().inverse().to_frac();
        let s = sum(&[c, d]);
        assert_eq!(s.to_rational(), QTRational::new(qp("q + 2"), qp("q^2 - 1")).unwrap());
    }
}
