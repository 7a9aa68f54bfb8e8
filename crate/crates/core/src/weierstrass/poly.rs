//! Sparse bivariate polynomials over `Q` in the variables `s` and `t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::univariate::UPoly;
use crate::rational::{common_denominator, int, Rational};

/// `sum c_ij s^i t^j`, keyed by `(i, j)`. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(int(1))
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn s() -> Self {
        Self::monomial(int(1), 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(int(1), 0, 1)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), Rational)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    pub fn degree_s(&self) -> u32 {
        self.terms.keys().map(|k| k.0).max().unwrap_or(0)
    }

    pub fn degree_t(&self) -> u32 {
        self.terms.keys().map(|k| k.1).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|k| k.0 + k.1).max().unwrap_or(0)
    }

    /// Lowest total degree of a term; `None` for the zero polynomial.
    pub fn lowest_degree(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0 + k.1).min()
    }

    /// Homogeneous part of lowest degree (the tangent cone at the origin).
    pub fn lowest_form(&self) -> BivariatePoly {
        let Some(m) = self.lowest_degree() else {
            return Self::zero();
        };
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.0 + k.1 == m)
                .map(|(k, c)| (*k, c.clone())),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(self.terms.iter().map(|(k, v)| (*k, v * c)))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for ((i, j), c) in &self.terms {
            acc += c * num_traits::pow(s.clone(), *i as usize) * num_traits::pow(t.clone(), *j as usize);
        }
        acc
    }

    /// `f(s_img, t_img)`.
    pub fn substitute(&self, s_img: &BivariatePoly, t_img: &BivariatePoly) -> BivariatePoly {
        let mut s_pows = vec![Self::one()];
        for _ in 0..self.degree_s() {
            s_pows.push(s_pows.last().unwrap() * s_img);
        }
        let mut t_pows = vec![Self::one()];
        for _ in 0..self.degree_t() {
            t_pows.push(t_pows.last().unwrap() * t_img);
        }
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            out = &out + &(&s_pows[*i as usize] * &t_pows[*j as usize]).scale(c);
        }
        out
    }

    /// Moves the point `(s0, t0)` to the origin.
    pub fn translate(&self, s0: &Rational, t0: &Rational) -> BivariatePoly {
        let s = &Self::s() + &Self::constant(s0.clone());
        let t = &Self::t() + &Self::constant(t0.clone());
        self.substitute(&s, &t)
    }

    pub fn derivative_s(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.0 > 0)
                .map(|(&(i, j), c)| ((i - 1, j), c * int(i as i64))),
        )
    }

    pub fn derivative_t(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(k, _)| k.1 > 0)
                .map(|(&(i, j), c)| ((i, j - 1), c * int(j as i64))),
        )
    }

    /// Largest `k` with `s^k` dividing `self` (for a nonzero polynomial).
    pub fn s_order(&self) -> u32 {
        self.terms.keys().map(|k| k.0).min().unwrap_or(0)
    }

    /// Largest `k` with `t^k` dividing `self` (for a nonzero polynomial).
    pub fn t_order(&self) -> u32 {
        self.terms.keys().map(|k| k.1).min().unwrap_or(0)
    }

    /// Divides by `s^i t^j`; the caller guarantees divisibility.
    pub fn shift_down(&self, i: u32, j: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(a, b), c)| ((a - i, b - j), c.clone())))
    }

    /// Restriction to the line `s = s0`, as a polynomial in `t`.
    pub fn at_s(&self, s0: &Rational) -> UPoly {
        let mut coeffs = vec![Rational::zero(); self.degree_t() as usize + 1];
        for ((i, j), c) in &self.terms {
            coeffs[*j as usize] += c * num_traits::pow(s0.clone(), *i as usize);
        }
        UPoly::new(coeffs)
    }

    /// Restriction to the line `t = t0`, as a polynomial in `s`.
    pub fn at_t(&self, t0: &Rational) -> UPoly {
        self.swap().at_s(t0)
    }

    /// Exchanges the roles of `s` and `t`.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())))
    }

    /// Coefficients of `t^0, t^1, ...` as polynomials in `s`.
    pub fn coefficients_in_t(&self) -> Vec<UPoly> {
        let mut rows = vec![vec![Rational::zero(); self.degree_s() as usize + 1]; self.degree_t() as usize + 1];
        for ((i, j), c) in &self.terms {
            rows[*j as usize][*i as usize] = c.clone();
        }
        rows.into_iter().map(UPoly::new).collect()
    }

    pub fn from_coefficients_in_t(coeffs: &[UPoly]) -> Self {
        let mut p = Self::zero();
        for (j, u) in coeffs.iter().enumerate() {
            for (i, c) in u.coeffs().iter().enumerate() {
                p.add_term(i as u32, j as u32, c.clone());
            }
        }
        p
    }

    /// A polynomial in `s` alone, lifted.
    pub fn from_s_poly(u: &UPoly) -> Self {
        Self::from_coefficients_in_t(std::slice::from_ref(u))
    }

    /// Leading term in the order comparing `t`-degree first.
    fn leading(&self) -> Option<((u32, u32), &Rational)> {
        self.terms
            .iter()
            .max_by_key(|(k, _)| (k.1, k.0))
            .map(|(k, c)| (*k, c))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn divide_exact(&self, d: &BivariatePoly) -> Option<BivariatePoly> {
        let ((di, dj), dc) = d.leading()?;
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(((ri, rj), rc)) = rem.leading() {
            if ri < di || rj < dj {
                return None;
            }
            let q = Self::monomial(rc / dc, ri - di, rj - dj);
            rem = &rem - &(&q * d);
            quot = &quot + &q;
        }
        Some(quot)
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }

    /// Rational multiple with coprime integer coefficients.
    fn integer_primitive(&self) -> Self {
        let den = common_denominator(self.terms.values());
        let num = self.terms.values().fold(BigInt::zero(), |g, c| {
            g.gcd(&(c * Rational::from_integer(den.clone())).to_integer())
        });
        if num.is_zero() {
            return self.clone();
        }
        self.scale(&Rational::new(den, num))
    }

    /// gcd in `Q[s]` of the coefficients in `t`.
    pub fn content_in_t(&self) -> UPoly {
        self.coefficients_in_t()
            .iter()
            .fold(UPoly::zero(), |g, c| g.gcd(c))
    }

    fn divide_by_s_poly(&self, c: &UPoly) -> Self {
        let rows: Vec<UPoly> = self
            .coefficients_in_t()
            .iter()
            .map(|u| u.divide_exact(c).expect("content divides each coefficient"))
            .collect();
        Self::from_coefficients_in_t(&rows)
    }

    /// Splits into `(content in Q[s], primitive part)`.
    pub fn primitive_in_t(&self) -> (UPoly, BivariatePoly) {
        if self.is_zero() {
            return (UPoly::zero(), Self::zero());
        }
        let c = self.content_in_t();
        (c.clone(), self.divide_by_s_poly(&c))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &BivariatePoly) -> BivariatePoly {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (ca, pa) = self.primitive_in_t();
        let (cb, pb) = other.primitive_in_t();
        let content = Self::from_s_poly(&ca.gcd(&cb));
        let (pa, pb) = (pa.integer_primitive(), pb.integer_primitive());
        let (mut a, mut b) = if pa.degree_t() >= pb.degree_t() { (pa, pb) } else { (pb, pa) };
        // primitive pseudo-remainder sequence in Q[s][t]
        let g = loop {
            if b.is_zero() {
                break a;
            }
            if b.degree_t() == 0 {
                break Self::one();
            }
            let r = a.pseudo_remainder_t(&b);
            a = b;
            b = r.primitive_in_t().1.integer_primitive();
        };
        (&content * &g).monic()
    }

    fn pseudo_remainder_t(&self, d: &BivariatePoly) -> BivariatePoly {
        let dc = d.coefficients_in_t();
        let lc_d = Self::from_s_poly(dc.last().unwrap());
        let n = d.degree_t();
        let mut r = self.clone();
        while !r.is_zero() && r.degree_t() >= n {
            let rc = r.coefficients_in_t();
            let lc_r = Self::from_s_poly(rc.last().unwrap());
            let shift = Self::monomial(int(1), 0, r.degree_t() - n);
            r = &(&lc_d * &r) - &(&(&lc_r * &shift) * d);
        }
        r
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn square_free_part(&self) -> BivariatePoly {
        if self.is_constant() {
            return if self.is_zero() { Self::zero() } else { Self::one() };
        }
        let g = self.gcd(&self.derivative_s()).gcd(&self.derivative_t());
        self.divide_exact(&g).expect("gcd divides").monic()
    }

    /// Lowest-degree linear part `(c_s, c_t)` for `c_s s + c_t t`.
    pub fn linear_part(&self) -> (Rational, Rational) {
        (self.coefficient(1, 0), self.coefficient(0, 1))
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for ((i, j), c) in &rhs.terms {
            out.add_term(*i, *j, c.clone());
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        self + &(-rhs)
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        BivariatePoly::from_terms(self.terms.iter().map(|(k, c)| (*k, -c)))
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, i: u32, j: u32) -> fmt::Result {
    let mut first = true;
    for (name, e) in [("s", i), ("t", j)] {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        if e == 1 {
            f.write_str(name)?;
        } else {
            write!(f, "{name}^{e}")?;
        }
    }
    Ok(())
}

/// Terms by descending total degree, then descending power of `s`; the
/// output is accepted by the parser.
impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut keys: Vec<&(u32, u32)> = self.terms.keys().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        for (n, k) in keys.into_iter().enumerate() {
            let c = &self.terms[k];
            let mag = c.abs();
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let constant = k.0 == 0 && k.1 == 0;
            if constant {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                write_monomial(f, k.0, k.1)?;
            }
        }
        Ok(())
    }
}

impl Serialize for BivariatePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BivariatePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        super::parse::parse_poly(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p(text: &str) -> BivariatePoly {
        super::super::parse::parse_poly(text).unwrap()
    }

    #[test]
    fn display_round_trips() {
        for text in ["4*s^3 + 27*t^2", "-s*t + 1/2", "s - t", "0", "-3/4*s^2*t^5 - 7"] {
            let q = p(text);
            assert_eq!(q.to_string(), text);
            assert_eq!(p(&q.to_string()), q);
        }
    }

    #[test]
    fn arithmetic() {
        let f = p("s + t");
        assert_eq!(&f * &f, p("s^2 + 2*s*t + t^2"));
        assert_eq!(&f - &f, BivariatePoly::zero());
        assert_eq!(f.pow(3).divide_exact(&f), Some(f.pow(2)));
        assert_eq!(p("s^2 + 1").divide_exact(&p("s")), None);
        assert_eq!(f.eval(&ratio(1, 2), &int(3)), ratio(7, 2));
        assert_eq!(p("s^2*t").translate(&int(1), &int(0)), p("s^2*t + 2*s*t + t"));
    }

    #[test]
    fn gcd_and_square_free() {
        let a = p("s - t^2");
        let b = p("s*t + 1");
        let c = p("s + 2");
        let g = (&(&a * &b) * &c).gcd(&(&a * &c).pow(2));
        assert_eq!(g, (&a * &c).monic());
        assert_eq!(p("s^2*t").gcd(&p("s*t^3")), p("s*t"));
        assert_eq!(a.gcd(&b), BivariatePoly::one());
        let f = &(&a.pow(3) * &b) * &p("s").pow(2);
        assert_eq!(f.square_free_part(), (&(&a * &b) * &p("s")).monic());
        assert_eq!(p("4*s^3 + 27*t^2").square_free_part(), p("4*s^3 + 27*t^2").monic());
    }

    #[test]
    fn lowest_forms() {
        let f = p("4*s^3 + 27*t^2");
        assert_eq!(f.lowest_degree(), Some(2));
        assert_eq!(f.lowest_form(), p("27*t^2"));
        assert_eq!(p("s*t^3").s_order(), 1);
        assert_eq!(p("s*t^3").t_order(), 3);
    }
}
