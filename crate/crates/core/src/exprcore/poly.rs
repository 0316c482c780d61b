//! Sparse multivariate polynomials over ℚ.
//!
//! Monomials are ordered graded-lexicographically, with symbols compared by
//! name. The leading term of a polynomial is its largest monomial.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::symbol::{FrameIndex, Symbol};

/// A power product `x1^e1 * x2^e2 * ...`, stored as sorted `(symbol, exponent)`
/// pairs with positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Symbol, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(sym: Symbol, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(sym, exp)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| *e).sum()
    }

    pub fn degree_in(&self, sym: &Symbol) -> u32 {
        self.0.iter().find(|(s, _)| s == sym).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self / other` when every exponent of `other` is dominated.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        let mut j = 0;
        for (s, e) in &self.0 {
            if j < other.0.len() && other.0[j].0 < *s {
                return None;
            }
            if j < other.0.len() && other.0[j].0 == *s {
                let f = other.0[j].1;
                j += 1;
                match e.cmp(&f) {
                    Ordering::Less => return None,
                    Ordering::Equal => continue,
                    Ordering::Greater => out.push((s.clone(), e - f)),
                }
            } else {
                out.push((s.clone(), *e));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Splits off the power of `sym`: returns `(exponent, rest)`.
    pub fn split(&self, sym: &Symbol) -> (u32, Monomial) {
        let mut exp = 0;
        let rest = self
            .0
            .iter()
            .filter(|(s, e)| {
                if s == sym {
                    exp = *e;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (exp, Monomial(rest))
    }

    /// Componentwise minimum of exponents.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        for (s, e) in &self.0 {
            let f = other.degree_in(s);
            if f > 0 {
                out.push((s.clone(), (*e).min(f)));
            }
        }
        Monomial(out)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the monomial with the
    /// larger exponent on the first differing symbol is greater.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((s, e)), Some((t, f))) => match s.cmp(t) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match e.cmp(f) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, BigRational>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolyEvalError {
    #[error("unbound symbol `{0}`")]
    Unbound(String),
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial::one(), q);
        }
        Poly { terms }
    }

    pub fn from_int(n: i64) -> Self {
        Poly::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(sym: Symbol) -> Self {
        Poly::term(BigRational::one(), Monomial::var(sym, 1))
    }

    pub fn term(coeff: BigRational, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return self.terms.values().next().cloned();
        }
        None
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigRational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(s, _)| s.clone()))
            .collect()
    }

    pub fn degree_in(&self, sym: &Symbol) -> u32 {
        self.terms.keys().map(|m| m.degree_in(sym)).max().unwrap_or(0)
    }

    fn add_term(&mut self, mono: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Poly {
        if q.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }

    pub fn mul_term(&self, coeff: &BigRational, mono: &Monomial) -> Poly {
        if coeff.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c * coeff)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Coefficients of `self` viewed as a polynomial in `sym`; index = power.
    pub fn coefficients_in(&self, sym: &Symbol) -> Vec<Poly> {
        let mut out = vec![Poly::zero(); self.degree_in(sym) as usize + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(sym);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    /// Divides by the leading coefficient; zero stays zero.
    /// The associate with coprime integer coefficients and a positive
    /// leading coefficient.
    pub fn integer_primitive(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut k = BigRational::new(den, num);
        if self.leading_coefficient().is_negative() {
            k = -k;
        }
        self.scale(&k)
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some((_, lc)) if lc.is_one() => self.clone(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(&lm)?;
            let qc = rc / &lc;
            rem = rem.sub(&divisor.mul_term(&qc, &qm));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Greatest common divisor over ℚ, normalized to leading coefficient 1.
    /// `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.is_constant() || other.is_constant() {
            return Poly::one();
        }
        if self.terms.len() == 1 && other.terms.len() == 1 {
            let m = self.leading().unwrap().0.gcd(other.leading().unwrap().0);
            return Poly::term(BigRational::one(), m);
        }
        let mut syms = self.symbols();
        syms.extend(other.symbols());
        let x = syms.into_iter().next().expect("non-constant polynomial has a symbol");
        let (da, db) = (self.degree_in(&x), other.degree_in(&x));
        if da == 0 {
            return self.gcd(&other.content_in(&x));
        }
        if db == 0 {
            return self.content_in(&x).gcd(other);
        }
        let ca = self.content_in(&x);
        let cb = other.content_in(&x);
        let pa = self.div_exact(&ca).expect("content divides");
        let pb = other.div_exact(&cb).expect("content divides");
        let g = ca.gcd(&cb);
        let h = primitive_gcd(pa, pb, &x);
        g.mul(&h).monic()
    }

    /// Gcd of the coefficients of `self` as a polynomial in `sym`.
    pub fn content_in(&self, sym: &Symbol) -> Poly {
        let mut g = Poly::zero();
        for c in self.coefficients_in(sym) {
            if c.is_zero() {
                continue;
            }
            g = g.gcd(&c);
            if g.is_constant() {
                return Poly::one();
            }
        }
        g
    }

    fn primitive_part_in(&self, sym: &Symbol) -> Poly {
        let c = self.content_in(sym);
        self.div_exact(&c).expect("content divides")
    }

    /// Simultaneous replacement of symbols by polynomials.
    pub fn substitute(&self, bindings: &HashMap<Symbol, Poly>) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let mut acc = Poly::constant(c.clone());
            let mut kept = Monomial::one();
            for (s, e) in m.factors() {
                match bindings.get(s) {
                    Some(p) => acc = acc.mul(&p.pow(*e)),
                    None => kept = kept.mul(&Monomial::var(s.clone(), *e)),
                }
            }
            out = out.add(&acc.mul_term(&BigRational::one(), &kept));
        }
        out
    }

    /// Directional derivative along `dir`, where each non-constant symbol `f`
    /// differentiates to its formal-derivative symbol `D(dir, f)`.
    pub fn derive(&self, dir: FrameIndex) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            for (s, e) in m.factors() {
                let Some(ds) = Symbol::derivative(dir, s) else {
                    continue;
                };
                let rest = m.div(&Monomial::var(s.clone(), 1)).expect("factor present");
                let coeff = c * BigRational::from_integer(BigInt::from(*e));
                out.add_term(rest.mul(&Monomial::var(ds, 1)), coeff);
            }
        }
        out
    }

    /// Returns the value and the sum of absolute term magnitudes, the latter
    /// being a scale for judging cancellation.
    pub fn eval_f64_scaled(&self, value: &dyn Fn(&Symbol) -> Option<f64>) -> Result<(f64, f64), PolyEvalError> {
        let mut total = 0.0;
        let mut scale = 0.0;
        for (m, c) in &self.terms {
            let mut t = c.to_f64().unwrap_or(f64::NAN);
            for (s, e) in m.factors() {
                let v = value(s).ok_or_else(|| PolyEvalError::Unbound(s.name().to_string()))?;
                t *= v.powi(*e as i32);
            }
            total += t;
            scale += t.abs();
        }
        Ok((total, scale))
    }

    pub fn eval_f64(&self, value: &dyn Fn(&Symbol) -> Option<f64>) -> Result<f64, PolyEvalError> {
        self.eval_f64_scaled(value).map(|(v, _)| v)
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Monomial::one();
        };
        it.fold(first.clone(), |g, m| g.gcd(m))
    }

    pub fn all_coefficients_negative(&self) -> bool {
        !self.is_zero() && self.terms.values().all(|c| c.is_negative())
    }
}

/// Gcd of two polynomials that are primitive in `x` and both have positive
/// degree in `x`, via the primitive pseudo-remainder sequence.
/// Cheap sufficient test for `gcd(a, b) = 1` with `a`, `b` primitive in `x`:
/// specialize every other symbol at a point where both leading coefficients
/// survive. The specialized gcd has degree at least that of the true gcd, so
/// a constant image proves coprimality; an unlucky point only costs the
/// fast path.
fn coprime_by_evaluation(a: &Poly, b: &Poly, x: &Symbol) -> bool {
    let mut others = a.symbols();
    others.extend(b.symbols());
    others.remove(x);
    if others.is_empty() {
        return false;
    }
    const POINTS: [i64; 4] = [3, -5, 7, -11];
    for (k, base) in POINTS.iter().enumerate() {
        let point: HashMap<Symbol, Poly> = others
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), Poly::from_int(base + 2 * i as i64 + k as i64)))
            .collect();
        let (ea, eb) = (a.substitute(&point), b.substitute(&point));
        if ea.degree_in(x) != a.degree_in(x) || eb.degree_in(x) != b.degree_in(x) {
            continue;
        }
        if primitive_gcd(ea.integer_primitive(), eb.integer_primitive(), x).degree_in(x) == 0 {
            return true;
        }
    }
    false
}

fn primitive_gcd(a: Poly, b: Poly, x: &Symbol) -> Poly {
    if coprime_by_evaluation(&a, &b, x) {
        return Poly::one();
    }
    let (mut r0, mut r1) = if a.degree_in(x) >= b.degree_in(x) {
        (a, b)
    } else {
        (b, a)
    };
    loop {
        if r1.is_zero() {
            return r0;
        }
        if r1.degree_in(x) == 0 {
            return Poly::one();
        }
        let r = pseudo_remainder(&r0, &r1, x);
        r0 = r1;
        // Without the integer normalization the coefficients of the
        // remainders grow exponentially in the sequence length.
        r1 = if r.is_zero() {
            r
        } else {
            r.primitive_part_in(x).integer_primitive()
        };
    }
}

fn pseudo_remainder(a: &Poly, b: &Poly, x: &Symbol) -> Poly {
    let db = b.degree_in(x);
    let lcb = b.coefficients_in(x).pop().expect("nonzero divisor");
    let mut r = a.clone();
    while !r.is_zero() {
        let dr = r.degree_in(x);
        if dr < db {
            break;
        }
        let lcr = r.coefficients_in(x).pop().expect("nonzero remainder");
        let shift = Monomial::var(x.clone(), dr - db);
        let t = lcr.mul(&b.mul_term(&BigRational::one(), &shift));
        r = r.mul(&lcb).sub(&t);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Symbol {
        Symbol::geometric("x")
    }
    fn y() -> Symbol {
        Symbol::geometric("y")
    }

    #[test]
    fn grlex_order() {
        let x2 = Monomial::var(x(), 2);
        let xy = Monomial::var(x(), 1).mul(&Monomial::var(y(), 1));
        let y2 = Monomial::var(y(), 2);
        let x1 = Monomial::var(x(), 1);
        assert!(x2 > xy && xy > y2 && y2 > x1 && x1 > Monomial::one());
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let px = Poly::var(x());
        let py = Poly::var(y());
        let a = px.mul(&px).sub(&py.mul(&py));
        let b = px.sub(&py).mul(&px.add(&Poly::one()));
        assert_eq!(a.gcd(&b), px.sub(&py));
    }

    #[test]
    fn gcd_coprime_is_one() {
        let px = Poly::var(x());
        let py = Poly::var(y());
        assert_eq!(px.add(&py).gcd(&px.sub(&py)), Poly::one());
    }

    #[test]
    fn integer_primitive_normalizes_content() {
        let px = Poly::var(x());
        let half = BigRational::new(1.into(), 2.into());
        let p = px
            .scale(&-half)
            .sub(&Poly::constant(BigRational::new(3.into(), 4.into())));
        assert_eq!(
            p.integer_primitive(),
            px.scale(&BigRational::from_integer(2.into())).add(&Poly::from_int(3))
        );
    }

    #[test]
    fn gcd_with_unlucky_specialization() {
        // At y = 3 both sides share 1 + x², but the true gcd is 1.
        let (px, py) = (Poly::var(x()), Poly::var(y()));
        let u = Poly::from_int(3).sub(&px).sub(&py);
        let q = Poly::one().add(&u.mul(&u));
        let a = px.mul(&px).add(&Poly::one()).mul(&q.mul(&q).add(&Poly::one()));
        let b = px.pow(3).add(&py).mul(&q.mul(&q));
        assert_eq!(a.gcd(&b), Poly::one());
        assert_eq!(a.mul(&q).gcd(&b), q.monic());
    }

    #[test]
    fn exact_division_detects_remainder() {
        let px = Poly::var(x());
        let a = px.mul(&px).sub(&Poly::one());
        let b = px.sub(&Poly::one());
        assert_eq!(a.div_exact(&b), Some(px.add(&Poly::one())));
        assert_eq!(a.div_exact(&px), None);
    }

    #[test]
    fn derivative_leibniz() {
        let px = Poly::var(x());
        let c = Poly::var(Symbol::constant("c"));
        let p = px.mul(&px).mul(&c);
        let d = p.derive(FrameIndex::E1);
        let dx = Poly::var(Symbol::derivative(FrameIndex::E1, &x()).unwrap());
        assert_eq!(d, px.mul(&c).mul(&dx).scale(&BigRational::from_integer(2.into())));
    }
}
