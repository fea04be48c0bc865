//! Exact Laurent polynomials and rational functions in two parameters `q`, `t`
//! with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Exponent pair `(e_q, e_t)`.
pub type Exp = (i32, i32);

/// Sparse Laurent polynomial `Σ c · q^e_q t^e_t`. No zero coefficient is stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QTPoly {
    terms: BTreeMap<Exp, BigInt>,
}

impl QTPoly {
    pub fn zero() -> Self {
        QTPoly::default()
    }

    pub fn one() -> Self {
        QTPoly::constant(1)
    }

    pub fn q() -> Self {
        QTPoly::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        QTPoly::monomial(1, 0, 1)
    }

    pub fn constant(c: i64) -> Self {
        QTPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, eq: i32, et: i32) -> Self {
        let mut p = QTPoly::zero();
        p.add_term((eq, et), c.into());
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exp, BigInt)>) -> Self {
        let mut p = QTPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, eq: i32, et: i32) -> BigInt {
        self.terms.get(&(eq, et)).cloned().unwrap_or_default()
    }

    /// Single term `c·q^a t^b`, if the polynomial is one.
    pub fn as_monomial(&self) -> Option<(Exp, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (*e, c))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.as_monomial() {
            None if self.is_zero() => Some(BigInt::zero()),
            Some(((0, 0), c)) => Some(c.clone()),
            _ => None,
        }
    }

    /// Leading term in lexicographic order (q first).
    pub fn leading(&self) -> Option<(Exp, &BigInt)> {
        self.terms.iter().next_back().map(|(e, c)| (*e, c))
    }

    pub fn min_exponents(&self) -> Exp {
        let mq = self.terms.keys().map(|e| e.0).min().unwrap_or(0);
        let mt = self.terms.keys().map(|e| e.1).min().unwrap_or(0);
        (mq, mt)
    }

    pub fn max_exponents(&self) -> Exp {
        let mq = self.terms.keys().map(|e| e.0).max().unwrap_or(0);
        let mt = self.terms.keys().map(|e| e.1).max().unwrap_or(0);
        (mq, mt)
    }

    pub fn total_degree(&self) -> Option<i32> {
        self.terms.keys().map(|e| e.0 + e.1).max()
    }

    pub fn is_polynomial(&self) -> bool {
        let (a, b) = self.min_exponents();
        a >= 0 && b >= 0
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn shift(&self, dq: i32, dt: i32) -> QTPoly {
        QTPoly {
            terms: self.terms.iter().map(|(&(a, b), c)| ((a + dq, b + dt), c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> QTPoly {
        if c.is_zero() {
            return QTPoly::zero();
        }
        QTPoly {
            terms: self.terms.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    pub fn swap_qt(&self) -> QTPoly {
        QTPoly {
            terms: self.terms.iter().map(|(&(a, b), c)| ((b, a), c.clone())).collect(),
        }
    }

    pub fn is_qt_symmetric(&self) -> bool {
        self.terms.iter().all(|(&(a, b), c)| self.terms.get(&(b, a)) == Some(c))
    }

    /// Substitutes `q^k t^l` monomial `(dq, dt)` for `x` in `Σ c_i x^i`.
    pub fn from_univariate(coeffs: &[BigInt], dq: i32, dt: i32) -> QTPoly {
        QTPoly::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| ((dq * i as i32, dt * i as i32), c.clone())),
        )
    }

    pub fn pow(&self, k: u32) -> QTPoly {
        let mut acc = QTPoly::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes integer values. Negative exponents need a unit value
    /// (`±1`); substituting zero into them is an error.
    pub fn specialize(&self, q0: Option<i64>, t0: Option<i64>) -> Result<QTPoly> {
        let eval = |base: i64, e: i32| -> Result<BigInt> {
            if e >= 0 {
                Ok(num_traits::pow(BigInt::from(base), e as usize))
            } else if base == 0 {
                Err(Error::ZeroSubstitution)
            } else if base == 1 || base == -1 {
                Ok(num_traits::pow(BigInt::from(base), (-e) as usize))
            } else {
                Err(Error::NonIntegral)
            }
        };
        let mut out = QTPoly::zero();
        for (&(a, b), c) in &self.terms {
            let mut c = c.clone();
            let (mut ea, mut eb) = (a, b);
            if let Some(v) = q0 {
                c *= eval(v, a)?;
                ea = 0;
            }
            if let Some(v) = t0 {
                c *= eval(v, b)?;
                eb = 0;
            }
            out.add_term((ea, eb), c);
        }
        Ok(out)
    }

    pub fn eval(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.terms {
            if (a < 0 && q0.is_zero()) || (b < 0 && t0.is_zero()) {
                return Err(Error::ZeroSubstitution);
            }
            acc += BigRational::from(c.clone()) * rpow(q0, a) * rpow(t0, b);
        }
        Ok(acc)
    }

    /// Integer evaluation for polynomials with nonnegative exponents.
    pub fn eval_int(&self, q0: &BigInt, t0: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(a, b), c) in &self.terms {
            debug_assert!(a >= 0 && b >= 0);
            acc += c * num_traits::pow(q0.clone(), a as usize) * num_traits::pow(t0.clone(), b as usize);
        }
        acc
    }

    /// Exact quotient `self / d` in the Laurent ring, `None` if `d` does not divide.
    pub fn div_exact(&self, d: &QTPoly) -> Option<QTPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(QTPoly::zero());
        }
        if let Some(((dq, dt), c)) = d.as_monomial() {
            let mut out = QTPoly::zero();
            for (&(a, b), v) in &self.terms {
                let (quo, rem) = v.div_rem(c);
                if !rem.is_zero() {
                    return None;
                }
                out.terms.insert((a - dq, b - dt), quo);
            }
            return Some(out);
        }
        let (nq, nt) = self.min_exponents();
        let (dq, dt) = d.min_exponents();
        let mut rem = self.shift(-nq, -nt);
        let div = d.shift(-dq, -dt);
        let ((lq, lt), lc) = div.leading().map(|(e, c)| (e, c.clone())).unwrap();
        let mut quot = QTPoly::zero();
        while let Some(((rq, rt), rc)) = rem.leading().map(|(e, c)| (e, c.clone())) {
            if rq < lq || rt < lt {
                return None;
            }
            let (qc, r) = rc.div_rem(&lc);
            if !r.is_zero() {
                return None;
            }
            let (eq, et) = (rq - lq, rt - lt);
            for (&(a, b), c) in &div.terms {
                rem.add_term((a + eq, b + et), -(c * &qc));
            }
            quot.add_term((eq, et), qc);
        }
        Some(quot.shift(nq - dq, nt - dt))
    }

    /// Integer content (gcd of coefficients), positive.
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Greatest common divisor in `Z[q^±, t^±]`, normalized to nonnegative
    /// minimal exponents `(0, 0)` and a positive leading coefficient.
    pub fn gcd(&self, other: &QTPoly) -> QTPoly {
        if self.is_zero() {
            return other.normalized_associate();
        }
        if other.is_zero() {
            return self.normalized_associate();
        }
        let a = BiPoly::from_qt(self);
        let b = BiPoly::from_qt(other);
        bipoly_gcd(&a, &b).to_qt().normalized_associate()
    }

    /// Associate with minimal exponents `(0,0)` and positive leading coefficient.
    pub fn normalized_associate(&self) -> QTPoly {
        let (mq, mt) = self.min_exponents();
        let mut p = self.shift(-mq, -mt);
        if p.leading().is_some_and(|(_, c)| c.is_negative()) {
            p = -p;
        }
        p
    }

    pub fn parse(s: &str) -> Result<QTPoly> {
        parse_qtpoly(s)
    }
}

fn rpow(x: &BigRational, e: i32) -> BigRational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

impl fmt::Debug for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn render_monomial(a: i32, b: i32) -> String {
    let mut parts = Vec::new();
    match a {
        0 => {}
        1 => parts.push("q".to_string()),
        _ => parts.push(format!("q^{a}")),
    }
    match b {
        0 => {}
        1 => parts.push("t".to_string()),
        _ => parts.push(format!("t^{b}")),
    }
    parts.join("*")
}

/// Renders like `q^2*t - 3`: terms by decreasing total degree, then by the
/// `q` exponent.
impl fmt::Display for QTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Exp, &BigInt)> = self.terms.iter().collect();
        terms.sort_by(|(x, _), (y, _)| (y.0 + y.1, y.0).cmp(&(x.0 + x.1, x.0)));
        let mut out = String::new();
        for (k, (&(a, b), c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(a, b);
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        write!(f, "{out}")
    }
}

fn parse_qtpoly(s: &str) -> Result<QTPoly> {
    let err = || Error::Parse(format!("bad polynomial {s:?}"));
    let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if cleaned.is_empty() {
        return Err(err());
    }
    let mut out = QTPoly::zero();
    let mut chunks: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let chars: Vec<char> = cleaned.chars().collect();
    for (k, &ch) in chars.iter().enumerate() {
        let after_caret = k > 0 && chars[k - 1] == '^';
        if (ch == '+' || ch == '-') && !after_caret {
            if !cur.is_empty() {
                chunks.push((neg, std::mem::take(&mut cur)));
            } else if k != 0 {
                return Err(err());
            }
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
    }
    if cur.is_empty() {
        return Err(err());
    }
    chunks.push((neg, cur));
    for (neg, chunk) in chunks {
        let mut coeff = BigInt::one();
        let (mut a, mut b) = (0i32, 0i32);
        for factor in chunk.split('*') {
            if factor.is_empty() {
                return Err(err());
            }
            if let Some(rest) = factor.strip_prefix('q') {
                a += parse_power(rest).ok_or_else(err)?;
            } else if let Some(rest) = factor.strip_prefix('t') {
                b += parse_power(rest).ok_or_else(err)?;
            } else {
                coeff *= factor.parse::<BigInt>().map_err(|_| err())?;
            }
        }
        if neg {
            coeff = -coeff;
        }
        out.add_term((a, b), coeff);
    }
    Ok(out)
}

fn parse_power(rest: &str) -> Option<i32> {
    if rest.is_empty() {
        Some(1)
    } else {
        rest.strip_prefix('^')?.parse().ok()
    }
}

impl Serialize for QTPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| {
                let coeff = match c.to_i64() {
                    Some(v) => serde_json::Value::from(v),
                    None => serde_json::Value::from(c.to_string()),
                };
                serde_json::json!([a, b, coeff])
            })
            .collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QTPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<(i32, i32, serde_json::Value)>::deserialize(d)?;
        let mut out = QTPoly::zero();
        for (a, b, c) in raw {
            let c = match c {
                serde_json::Value::Number(n) => BigInt::from(n.as_i64().ok_or_else(|| D::Error::custom("coefficient"))?),
                serde_json::Value::String(s) => s.parse().map_err(D::Error::custom)?,
                _ => return Err(D::Error::custom("coefficient must be a number or string")),
            };
            out.add_term((a, b), c);
        }
        Ok(out)
    }
}

impl Add<&QTPoly> for &QTPoly {
    type Output = QTPoly;
    fn add(self, rhs: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for QTPoly {
    type Output = QTPoly;
    fn add(mut self, rhs: QTPoly) -> QTPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&QTPoly> for QTPoly {
    fn add_assign(&mut self, rhs: &QTPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl SubAssign<&QTPoly> for QTPoly {
    fn sub_assign(&mut self, rhs: &QTPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, -c.clone());
        }
    }
}

impl Sub<&QTPoly> for &QTPoly {
    type Output = QTPoly;
    fn sub(self, rhs: &QTPoly) -> QTPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for QTPoly {
    type Output = QTPoly;
    fn sub(mut self, rhs: QTPoly) -> QTPoly {
        self -= &rhs;
        self
    }
}

impl Neg for QTPoly {
    type Output = QTPoly;
    fn neg(mut self) -> QTPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &QTPoly {
    type Output = QTPoly;
    fn neg(self) -> QTPoly {
        -self.clone()
    }
}

impl Mul<&QTPoly> for &QTPoly {
    type Output = QTPoly;
    fn mul(self, rhs: &QTPoly) -> QTPoly {
        if self.is_zero() || rhs.is_zero() {
            return QTPoly::zero();
        }
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut acc: std::collections::HashMap<Exp, BigInt> = std::collections::HashMap::with_capacity(large.len() * 2);
        for (&(a, b), c) in &small.terms {
            for (&(x, y), d) in &large.terms {
                *acc.entry((a + x, b + y)).or_default() += c * d;
            }
        }
        QTPoly {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl Mul for QTPoly {
    type Output = QTPoly;
    fn mul(self, rhs: QTPoly) -> QTPoly {
        &self * &rhs
    }
}

impl<'a> Mul<&'a QTPoly> for QTPoly {
    type Output = QTPoly;
    fn mul(self, rhs: &'a QTPoly) -> QTPoly {
        &self * rhs
    }
}

impl Zero for QTPoly {
    fn zero() -> Self {
        QTPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for QTPoly {
    fn one() -> Self {
        QTPoly::one()
    }
}

impl From<i64> for QTPoly {
    fn from(v: i64) -> Self {
        QTPoly::constant(v)
    }
}

/// `(A)^*`: 1 when `A` is zero, `A` otherwise.
pub fn star_poly(p: QTPoly) -> QTPoly {
    if p.is_zero() {
        QTPoly::one()
    } else {
        p
    }
}

/// Fraction `num / den`, kept unreduced until [`QTRational::reduced`] is asked for.
#[derive(Clone)]
pub struct QTRational {
    num: QTPoly,
    den: QTPoly,
}

impl QTRational {
    pub fn new(num: QTPoly, den: QTPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Singular);
        }
        Ok(QTRational { num, den }.normalize_monomial_den())
    }

    pub fn from_poly(p: QTPoly) -> Self {
        QTRational { num: p, den: QTPoly::one() }
    }

    pub fn zero() -> Self {
        QTRational::from_poly(QTPoly::zero())
    }

    pub fn one() -> Self {
        QTRational::from_poly(QTPoly::one())
    }

    pub fn numer(&self) -> &QTPoly {
        &self.num
    }

    pub fn denom(&self) -> &QTPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Moves a monomial denominator into the numerator when it divides evenly.
    fn normalize_monomial_den(self) -> Self {
        if let Some(((a, b), c)) = self.den.as_monomial() {
            if c.is_one() || (-c).is_one() {
                let sign = if c.is_one() { BigInt::one() } else { -BigInt::one() };
                return QTRational {
                    num: self.num.shift(-a, -b).scale(&sign),
                    den: QTPoly::one(),
                };
            }
        }
        self
    }

    /// `(A)^*`.
    pub fn star(&self) -> QTRational {
        if self.is_zero() {
            QTRational::one()
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Result<QTRational> {
        QTRational::new(self.den.clone(), self.num.clone())
    }

    pub fn is_polynomial(&self) -> bool {
        self.num.div_exact(&self.den).is_some()
    }

    pub fn to_polynomial(&self) -> Result<QTPoly> {
        self.num
            .div_exact(&self.den)
            .ok_or_else(|| Error::NonPolynomial(self.to_string()))
    }

    /// Cancels the polynomial gcd of numerator and denominator.
    pub fn reduced(&self) -> QTRational {
        if let Some(p) = self.num.div_exact(&self.den) {
            return QTRational::from_poly(p);
        }
        let g = self.num.gcd(&self.den);
        let num = self.num.div_exact(&g).expect("gcd divides numerator");
        let mut den = self.den.div_exact(&g).expect("gcd divides denominator");
        let mut num = num;
        let (mq, mt) = den.min_exponents();
        den = den.shift(-mq, -mt);
        num = num.shift(-mq, -mt);
        if den.leading().is_some_and(|(_, c)| c.is_negative()) {
            den = -den;
            num = -num;
        }
        QTRational { num, den }.normalize_monomial_den()
    }

    pub fn swap_qt(&self) -> QTRational {
        QTRational {
            num: self.num.swap_qt(),
            den: self.den.swap_qt(),
        }
    }

    pub fn eval(&self, q0: &BigRational, t0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q0, t0)?;
        if d.is_zero() {
            return Err(Error::Singular);
        }
        Ok(self.num.eval(q0, t0)? / d)
    }

    pub fn parse(s: &str) -> Result<QTRational> {
        let s = s.trim();
        match split_fraction(s) {
            Some((n, d)) => QTRational::new(parse_qtpoly(n)?, parse_qtpoly(d)?),
            None => Ok(QTRational::from_poly(parse_qtpoly(s)?)),
        }
    }
}

fn strip_parens(x: &str) -> &str {
    let x = x.trim();
    x.strip_prefix('(').and_then(|y| y.strip_suffix(')')).unwrap_or(x)
}

fn split_fraction(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '/' if depth == 0 => {
                return Some((strip_parens(&s[..k]), strip_parens(&s[k + 1..])));
            }
            _ => {}
        }
    }
    None
}

impl PartialEq for QTRational {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl fmt::Debug for QTRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QTRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl QTPoly {
    fn is_one(&self) -> bool {
        self.as_monomial().is_some_and(|(e, c)| e == (0, 0) && c.is_one())
    }
}

impl Add for QTRational {
    type Output = QTRational;
    fn add(self, rhs: QTRational) -> QTRational {
        if self.den == rhs.den {
            return QTRational { num: &self.num + &rhs.num, den: self.den };
        }
        QTRational {
            num: &self.num * &rhs.den + &rhs.num * &self.den,
            den: &self.den * &rhs.den,
        }
    }
}

impl<'a> AddAssign<&'a QTRational> for QTRational {
    fn add_assign(&mut self, rhs: &'a QTRational) {
        *self = std::mem::replace(self, QTRational::zero()) + rhs.clone();
    }
}

impl Sub for QTRational {
    type Output = QTRational;
    fn sub(self, rhs: QTRational) -> QTRational {
        self + (-rhs)
    }
}

impl Neg for QTRational {
    type Output = QTRational;
    fn neg(self) -> QTRational {
        QTRational { num: -self.num, den: self.den }
    }
}

impl Mul for QTRational {
    type Output = QTRational;
    fn mul(self, rhs: QTRational) -> QTRational {
        &self * &rhs
    }
}

impl<'a> Mul<&'a QTRational> for QTRational {
    type Output = QTRational;
    fn mul(self, rhs: &'a QTRational) -> QTRational {
        &self * rhs
    }
}

impl Mul<&QTRational> for &QTRational {
    type Output = QTRational;
    fn mul(self, rhs: &QTRational) -> QTRational {
        QTRational {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
        .normalize_monomial_den()
    }
}

impl Zero for QTRational {
    fn zero() -> Self {
        QTRational::from_poly(QTPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QTRational {
    fn one() -> Self {
        QTRational::from_poly(QTPoly::one())
    }
}

impl From<QTPoly> for QTRational {
    fn from(p: QTPoly) -> Self {
        QTRational::from_poly(p)
    }
}

// ---------------------------------------------------------------------------
// Bivariate gcd: polynomials in q whose coefficients are polynomials in t,
// primitive pseudo-remainder sequences at both levels.

type UPoly = Vec<BigInt>;

fn utrim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn ucontent(p: &UPoly) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn uprimitive(p: &UPoly) -> UPoly {
    let c = ucontent(p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: UPoly = p.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|x| x.is_negative()) {
        out.iter_mut().for_each(|x| *x = -std::mem::take(x));
    }
    out
}

fn umul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    utrim(out)
}

fn usub(a: &UPoly, b: &UPoly) -> UPoly {
    let len = a.len().max(b.len());
    utrim(
        (0..len)
            .map(|k| a.get(k).cloned().unwrap_or_default() - b.get(k).cloned().unwrap_or_default())
            .collect(),
    )
}

fn uprem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    let db = b.len() - 1;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        r = r.iter().map(|x| x * &lb).collect();
        for (k, c) in b.iter().enumerate() {
            r[k + shift] -= c * &lr;
        }
        r = utrim(r);
    }
    r
}

fn udiv_exact(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    if b.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - db];
    while !r.is_empty() && r.len() > db {
        let lr = r.last().unwrap();
        let (c, rem) = lr.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - 1 - db;
        for (k, x) in b.iter().enumerate() {
            r[k + shift] -= x * &c;
        }
        q[shift] = c;
        r = utrim(r);
    }
    if r.is_empty() {
        Some(utrim(q))
    } else {
        None
    }
}

fn ugcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return uprimitive(b);
    }
    if b.is_empty() {
        return uprimitive(a);
    }
    let content = ucontent(a).gcd(&ucontent(b));
    let (mut x, mut y) = (uprimitive(a), uprimitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = uprimitive(&uprem(&x, &y));
        x = y;
        y = r;
    }
    x.iter().map(|c| c * &content).collect()
}

/// Polynomial in `q` (index = q power) with coefficients in `Z[t]`.
#[derive(Clone, Debug)]
struct BiPoly(Vec<UPoly>);

impl BiPoly {
    fn from_qt(p: &QTPoly) -> BiPoly {
        let (mq, mt) = p.min_exponents();
        let (xq, _) = p.max_exponents();
        let mut rows: Vec<UPoly> = vec![Vec::new(); (xq - mq + 1) as usize];
        for (&(a, b), c) in p.terms() {
            let row = &mut rows[(a - mq) as usize];
            let k = (b - mt) as usize;
            if row.len() <= k {
                row.resize(k + 1, BigInt::zero());
            }
            row[k] = c.clone();
        }
        BiPoly(rows.into_iter().map(utrim).collect()).trim()
    }

    fn to_qt(&self) -> QTPoly {
        let mut out = QTPoly::zero();
        for (a, row) in self.0.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                out.add_term((a as i32, b as i32), c.clone());
            }
        }
        out
    }

    fn trim(mut self) -> BiPoly {
        while self.0.last().is_some_and(|r| r.is_empty()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn content(&self) -> UPoly {
        self.0.iter().fold(Vec::new(), |g, r| ugcd(&g, r))
    }

    fn primitive(&self) -> BiPoly {
        let c = self.content();
        if c.is_empty() {
            return BiPoly(Vec::new());
        }
        BiPoly(self.0.iter().map(|r| udiv_exact(r, &c).expect("content divides")).collect())
    }

    fn prem(&self, b: &BiPoly) -> BiPoly {
        let mut r = self.clone();
        let lb = b.0.last().unwrap().clone();
        let db = b.0.len() - 1;
        while !r.is_zero() && r.0.len() > db {
            let lr = r.0.last().unwrap().clone();
            let shift = r.0.len() - 1 - db;
            let mut rows: Vec<UPoly> = r.0.iter().map(|x| umul(x, &lb)).collect();
            for (k, c) in b.0.iter().enumerate() {
                rows[k + shift] = usub(&rows[k + shift], &umul(c, &lr));
            }
            r = BiPoly(rows).trim();
        }
        r
    }
}

fn bipoly_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let content = ugcd(&a.content(), &b.content());
    let (mut x, mut y) = (a.primitive(), b.primitive());
    if x.0.len() < y.0.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = x.prem(&y).primitive();
        x = y;
        y = r;
    }
    BiPoly(x.0.iter().map(|r| umul(r, &content)).collect()).trim()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qp(s: &str) -> QTPoly {
        QTPoly::parse(s).unwrap()
    }

    #[test]
    fn star_rule() {
        assert_eq!(QTRational::zero().star(), QTRational::one());
        let d = QTRational::from_poly(qp("q - t"));
        assert_eq!(d.star(), d);
        let unreduced = QTRational::from_poly(&qp("q") - &qp("q"));
        assert_eq!(unreduced.star(), QTRational::one());
    }

    #[test]
    fn specialization() {
        assert_eq!(qp("q^2*t + q^3").specialize(None, Some(0)).unwrap(), qp("q^3"));
        assert_eq!(qp("q + t").specialize(Some(1), Some(1)).unwrap(), QTPoly::constant(2));
        assert_eq!(qp("q^2 + q*t + t^2").specialize(Some(1), Some(1)).unwrap(), QTPoly::constant(3));
        assert_eq!(qp("q^-1 + t").specialize(Some(0), None), Err(Error::ZeroSubstitution));
        assert_eq!(qp("q^-1").specialize(Some(-1), None).unwrap(), QTPoly::constant(-1));
    }

    #[test]
    fn to_polynomial_examples() {
        let r = QTRational::new(qp("q^2 - t^2"), qp("q - t")).unwrap();
        assert_eq!(r.to_polynomial().unwrap(), qp("q + t"));
        let r = QTRational::new(qp("q*t"), qp("q*t")).unwrap();
        assert_eq!(r.to_polynomial().unwrap(), QTPoly::one());
        let r = QTRational::new(QTPoly::one(), qp("q - 1")).unwrap();
        assert!(matches!(r.to_polynomial(), Err(Error::NonPolynomial(_))));
    }

    #[test]
    fn render_and_parse() {
        let p = qp("q^2*t - 3");
        assert_eq!(p.to_string(), "q^2*t - 3");
        assert_eq!(qp("-q^-1 + 2*t").to_string(), "2*t - q^-1");
        assert_eq!(QTPoly::parse(&p.to_string()).unwrap(), p);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[[0,0,-3],[2,1,1]]");
        assert_eq!(serde_json::from_str::<QTPoly>(&json).unwrap(), p);
        let r = QTRational::parse("(q + t)/(q - 1)").unwrap();
        assert_eq!(r.to_string(), "(q + t)/(q - 1)");
    }

    #[test]
    fn gcd_and_reduction() {
        let a = qp("q^2 - t^2");
        let b = qp("q^3 - q*t^2 + q - t");
        assert_eq!(a.gcd(&b), qp("q - t"));
        let r = QTRational::new(&qp("q + 1") * &qp("q*t - 1"), &qp("q*t - 1") * &qp("q - t^2")).unwrap();
        let red = r.reduced();
        assert_eq!(red.numer(), &qp("q + 1"));
        assert_eq!(red.denom(), &qp("q - t^2"));
        assert_eq!(red, r);
    }

    fn arb_poly() -> impl Strategy<Value = QTPoly> {
        proptest::collection::vec((-2i32..4, -2i32..4, -5i64..6), 0..6)
            .prop_map(|v| QTPoly::from_terms(v.into_iter().map(|(a, b, c)| ((a, b), BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!((&a * &b).swap_qt(), &a.swap_qt() * &b.swap_qt());
            prop_assert_eq!(a.swap_qt().swap_qt(), a.clone());
        }

        #[test]
        fn reduction_soundness(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let r = QTRational::new(&a * &b, b.clone()).unwrap();
            prop_assert_eq!(r.to_polynomial().unwrap(), a.clone());
            let g = (&a * &b).gcd(&b);
            prop_assert!(b.div_exact(&g).is_some());
        }
    }
}
