//! Dense univariate polynomials over `Q`, used for restrictions of
//! bivariate polynomials to lines, contents, resultants and exact rational
//! root finding.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::BivariatePoly;
use crate::rational::{common_denominator, int, Rational};

/// `c[0] + c[1] x + ...` with no trailing zero coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct UPoly {
    c: Vec<Rational>,
}

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(x: Rational) -> Self {
        Self::new(vec![x])
    }

    /// `x - r`.
    pub fn linear(r: &Rational) -> Self {
        Self::new(vec![-r.clone(), int(1)])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.c.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.c
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, k| acc * x + k)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, k)| k * int(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let l = self.leading().recip();
        Self::new(self.c.iter().map(|k| k * &l).collect())
    }

    pub fn add(&self, o: &UPoly) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(
            (0..n)
                .map(|i| {
                    self.c.get(i).cloned().unwrap_or_else(Rational::zero)
                        + o.c.get(i).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &UPoly) -> Self {
        self.add(&o.scale(&int(-1)))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn mul(&self, o: &UPoly) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            for (j, y) in o.c.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, n: usize) -> Self {
        (0..n).fold(Self::constant(int(1)), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.c.clone();
        let dl = d.leading();
        let dd = d.degree();
        if self.c.len() < d.c.len() {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); self.c.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] / &dl;
            if q.is_zero() {
                continue;
            }
            for (i, dc) in d.c.iter().enumerate() {
                rem[k + i] -= &q * dc;
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn divide_exact(&self, d: &UPoly) -> Option<UPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic gcd (zero only when both inputs are zero).
    /// Monic gcd, via a primitive remainder sequence over the integers.
    pub fn gcd(&self, o: &UPoly) -> UPoly {
        let (mut a, mut b) = (integer_form(self), integer_form(o));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_empty() {
            let r = primitive(pseudo_remainder(&a, &b).0);
            a = b;
            b = r;
        }
        UPoly::new(a.into_iter().map(Rational::from_integer).collect()).monic()
    }

    pub fn square_free_part(&self) -> UPoly {
        if self.degree() == 0 {
            return if self.is_zero() { Self::zero() } else { Self::constant(int(1)) };
        }
        let g = self.gcd(&self.derivative());
        self.divide_exact(&g).expect("gcd divides").monic()
    }

    /// Distinct rational roots in increasing order.
    pub fn rational_roots(&self) -> Vec<Rational> {
        if self.is_zero() || self.degree() == 0 {
            return Vec::new();
        }
        let q = self.square_free_part();
        // integer form: a rational root k/m in lowest terms has m | lead
        let den = common_denominator(q.c.iter());
        let lead = (q.leading() * Rational::from_integer(den)).to_integer().abs();
        let sturm = sturm_sequence(&q);
        let changes = |x: &Rational| sign_changes(&sturm, x);
        let bound = int(1)
            + q.c
                .iter()
                .map(|k| (k / q.leading()).abs())
                .fold(Rational::zero(), |m, x| if x > m { x } else { m });
        let target = Rational::new(BigInt::one(), lead.clone());
        let mut roots = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = changes(&lo) - changes(&hi);
            if n == 0 {
                continue;
            }
            if n > 1 {
                let mid = (&lo + &hi) / int(2);
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
                continue;
            }
            let (mut lo, mut hi) = (lo, hi);
            while &hi - &lo >= target {
                let mid = (&lo + &hi) / int(2);
                if changes(&lo) - changes(&mid) == 1 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            let k = (&hi * Rational::from_integer(lead.clone())).floor();
            let cand = k / Rational::from_integer(lead.clone());
            if cand > lo && q.eval(&cand).is_zero() {
                roots.push(cand);
            }
        }
        roots.sort();
        roots
    }

    /// Splits off all rational roots: `(roots, cofactor)` where the
    /// cofactor is square-free with no rational root.
    pub fn split_rational(&self) -> (Vec<Rational>, UPoly) {
        let roots = self.rational_roots();
        let mut rest = self.square_free_part();
        for r in &roots {
            rest = rest.divide_exact(&UPoly::linear(r)).expect("root divides");
        }
        (roots, rest.monic())
    }

    pub fn rem(&self, m: &UPoly) -> UPoly {
        self.div_rem(m).1
    }

    /// Inverse modulo `m`, when the two are coprime.
    pub fn inverse_mod(&self, m: &UPoly) -> Option<UPoly> {
        let (mut r0, mut r1) = (m.clone(), self.rem(m));
        let (mut s0, mut s1) = (UPoly::zero(), UPoly::constant(int(1)));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let next = s0.sub(&q.mul(&s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, next);
        }
        if r0.degree() > 0 || r0.is_zero() {
            return None;
        }
        Some(s0.scale(&r0.leading().recip()).rem(m))
    }

    pub fn display_in(&self, var: &str) -> String {
        let mut p = BivariatePoly::zero();
        for (i, k) in self.c.iter().enumerate() {
            p.add_term(i as u32, 0, k.clone());
        }
        p.to_string().replace('s', var)
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("x"))
    }
}

/// A polynomial in `t` over `Q[s]/(h)`, lowest coefficient first.
type ModPoly = Vec<UPoly>;

fn reduce(p: &[UPoly], h: &UPoly) -> ModPoly {
    let mut out: ModPoly = p.iter().map(|c| c.rem(h)).collect();
    while out.last().is_some_and(UPoly::is_zero) {
        out.pop();
    }
    out
}

/// Scales by a rational so all coefficients are coprime integers.
fn normalize(mut p: ModPoly) -> ModPoly {
    let den = common_denominator(p.iter().flat_map(|c| c.c.iter()));
    let num = p
        .iter()
        .flat_map(|c| c.c.iter())
        .fold(BigInt::zero(), |g, x| g.gcd(&(x * Rational::from_integer(den.clone())).to_integer()));
    if num.is_zero() {
        return p;
    }
    let k = Rational::new(den, num);
    for c in &mut p {
        *c = c.scale(&k);
    }
    p
}

/// gcd of `a` and `b` over `Q[s]/(h)`. When a leading coefficient is a
/// zero divisor, `h` is split and both factors are followed; the result
/// lists each factor of `h` with the gcd over it.
fn gcd_split(h: &UPoly, a: &[UPoly], b: &[UPoly]) -> Vec<(UPoly, ModPoly)> {
    let mut a = reduce(a, h);
    let mut b = reduce(b, h);
    loop {
        let Some(lc) = b.last().cloned() else {
            return vec![(h.clone(), a)];
        };
        let g = lc.gcd(h);
        if g.degree() > 0 {
            let other = h.divide_exact(&g).expect("gcd divides");
            let mut out = gcd_split(&g, &a, &b);
            out.extend(gcd_split(&other, &a, &b));
            return out;
        }
        // lc is a unit, so pseudo-division keeps the gcd; content is
        // stripped after each step to hold coefficient growth down
        while a.len() >= b.len() {
            let f = a.last().unwrap().clone();
            let shift = a.len() - b.len();
            for c in a.iter_mut() {
                *c = c.mul(&lc).rem(h);
            }
            for (k, c) in b.iter().enumerate() {
                a[k + shift] = a[k + shift].sub(&f.mul(c)).rem(h);
            }
            a = normalize(reduce(&a, h));
        }
        std::mem::swap(&mut a, &mut b);
    }
}

/// Whether the polynomials have a common zero `(s, t)` with `h(s) = 0`,
/// for a square-free `h`.
pub fn common_root_over(h: &UPoly, polys: &[BivariatePoly]) -> bool {
    let Some((first, rest)) = polys.split_first() else {
        return true;
    };
    let mut branches = vec![(h.clone(), reduce(&first.coefficients_in_t(), h))];
    for p in rest {
        let pc = p.coefficients_in_t();
        branches = branches
            .into_iter()
            .flat_map(|(m, g)| gcd_split(&m, &g, &pc))
            .collect();
    }
    // an identically vanishing restriction also counts as a common zero
    branches.iter().any(|(_, g)| g.len() != 1)
}

/// Primitive integer polynomial with the same sign as `p` everywhere.
fn integer_form(p: &UPoly) -> Vec<BigInt> {
    let den = common_denominator(p.c.iter());
    let ints: Vec<BigInt> = p
        .c
        .iter()
        .map(|k| (k * Rational::from_integer(den.clone())).to_integer())
        .collect();
    primitive(ints)
}

fn primitive(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let g = c.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut c {
            *x /= &g;
        }
    }
    c
}

/// Remainder of `lc(b)^k a` by `b`, and whether `lc(b)^k` is negative.
fn pseudo_remainder(a: &[BigInt], b: &[BigInt]) -> (Vec<BigInt>, bool) {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").clone();
    let db = b.len() - 1;
    let mut k = 0;
    while r.len() > db && !r.is_empty() {
        k += 1;
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        for x in r.iter_mut() {
            *x *= &lb;
        }
        for (i, y) in b.iter().enumerate() {
            r[shift + i] -= &lr * y;
        }
        r.pop();
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    let negated = lb.is_negative() && k % 2 == 1;
    (r, negated)
}

/// Sturm sequence of integer polynomials, each a positive multiple of the
/// rational one.
fn sturm_sequence(p: &UPoly) -> Vec<Vec<BigInt>> {
    let mut seq = vec![integer_form(p), integer_form(&p.derivative())];
    loop {
        let n = seq.len();
        if seq[n - 1].is_empty() {
            seq.pop();
            break;
        }
        if seq[n - 2].len() < seq[n - 1].len() {
            break;
        }
        let (r, negated) = pseudo_remainder(&seq[n - 2], &seq[n - 1]);
        if r.is_empty() {
            break;
        }
        let r = primitive(r);
        seq.push(if negated { r } else { r.into_iter().map(|x| -x).collect() });
    }
    seq
}

/// Sign of `p(x)` by homogeneous Horner evaluation in integers.
fn sign_at(p: &[BigInt], x: &Rational) -> i8 {
    let (num, den) = (x.numer(), x.denom());
    let Some(top) = p.last() else { return 0 };
    let mut acc = top.clone();
    let mut dpow = BigInt::one();
    for c in p.iter().rev().skip(1) {
        dpow *= den;
        acc = acc * num + c * &dpow;
    }
    if acc.is_positive() {
        1
    } else if acc.is_negative() {
        -1
    } else {
        0
    }
}

fn sign_changes(seq: &[Vec<BigInt>], x: &Rational) -> i64 {
    let mut last = 0i8;
    let mut n = 0;
    for p in seq {
        let s = sign_at(p, x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Fraction-free (Bareiss) elimination after clearing row denominators.
fn determinant(m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut scale = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = m
        .into_iter()
        .map(|row| {
            let den = common_denominator(row.iter());
            scale *= &den;
            row.iter()
                .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = if n == 0 { BigInt::one() } else { prev };
    Rational::new(sign * det, scale)
}

/// Sylvester resultant of two polynomials given by coefficient lists of
/// fixed formal degrees.
fn sylvester(f: &[Rational], g: &[Rational]) -> Rational {
    let m = f.len() - 1;
    let n = g.len() - 1;
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for k in 0..n {
        let mut row = vec![Rational::zero(); size];
        for (i, c) in f.iter().rev().enumerate() {
            row[k + i] = c.clone();
        }
        rows.push(row);
    }
    for k in 0..m {
        let mut row = vec![Rational::zero(); size];
        for (i, c) in g.iter().rev().enumerate() {
            row[k + i] = c.clone();
        }
        rows.push(row);
    }
    determinant(rows)
}

/// Newton interpolation through `(x_k, y_k)`.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> UPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for k in (level..n).rev() {
            dd[k] = (&dd[k] - &dd[k - 1]) / (&xs[k] - &xs[k - level]);
        }
    }
    let mut out = UPoly::zero();
    let mut basis = UPoly::constant(int(1));
    for k in 0..n {
        out = out.add(&basis.scale(&dd[k]));
        basis = basis.mul(&UPoly::linear(&xs[k]));
    }
    out
}

/// `Res_t(f, g)` as a polynomial in `s`.
pub fn resultant_t(f: &BivariatePoly, g: &BivariatePoly) -> UPoly {
    let (m, n) = (f.degree_t() as usize, g.degree_t() as usize);
    let fc = f.coefficients_in_t();
    let gc = g.coefficients_in_t();
    if f.is_zero() || g.is_zero() {
        return UPoly::zero();
    }
    if n == 0 {
        return gc[0].pow(m);
    }
    if m == 0 {
        return fc[0].pow(n);
    }
    let bound = m * g.degree_s() as usize + n * f.degree_s() as usize;
    let xs: Vec<Rational> = (0..=bound as i64).map(int).collect();
    let ys: Vec<Rational> = xs
        .iter()
        .map(|x| {
            let fv: Vec<Rational> = fc.iter().map(|u| u.eval(x)).collect();
            let gv: Vec<Rational> = gc.iter().map(|u| u.eval(x)).collect();
            sylvester(&fv, &gv)
        })
        .collect();
    interpolate(&xs, &ys)
}
