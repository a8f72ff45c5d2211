//! Exact truncated power series and the generating-function machinery.
//!
//! A [`TruncatedSeries`] is a sparse series in x, y, z with exact rational
//! coefficients, truncated at a total x-degree. The y-degree tracks `1-χ`
//! (twice the genus), and the z-degree tracks `1-χ+σ`, which stays in
//! `[0, 2·y-degree]` throughout the signature pipeline; the substitution
//! `z -> 1/z` is therefore a monomial re-indexing inside that window, never
//! a series inverse.
//!
//! Closed forms live in [`gf_catalog`] as numerator/denominator polynomial
//! pairs and are expanded by coefficient recursion against the denominator.
//! The coefficient-product and coefficient-selection operations are
//! implemented exactly: the Hadamard product is a coefficientwise product,
//! and the signature selection is a filter on (z-degree vs y-degree)
//! followed by re-indexing. No numerical quadrature appears anywhere.

use std::collections::BTreeMap;
use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub type Coeff = BigRational;

fn q_int(n: i64) -> Coeff {
    BigRational::from_integer(BigInt::from(n))
}

// ---------------------------------------------------------------------------
// Polynomials (closed-form numerators and denominators)

/// A polynomial in x, y, z with integer coefficients, used for closed-form
/// generating functions. Exponent keys are (x, y, z).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<(u32, u32, u32), BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: BTreeMap::new() }
    }

    pub fn int(c: i64) -> Poly {
        Poly::term(c, 0, 0, 0)
    }

    pub fn term(c: i64, x: u32, y: u32, z: u32) -> Poly {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert((x, y, z), BigInt::from(c));
        }
        Poly { terms }
    }

    pub fn x() -> Poly {
        Poly::term(1, 1, 0, 0)
    }

    pub fn y() -> Poly {
        Poly::term(1, 0, 1, 0)
    }

    pub fn z() -> Poly {
        Poly::term(1, 0, 0, 1)
    }

    pub fn xp(e: u32) -> Poly {
        Poly::term(1, e, 0, 0)
    }

    pub fn zp(e: u32) -> Poly {
        Poly::term(1, 0, 0, e)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        let mut terms = self.terms.clone();
        for (k, v) in &rhs.terms {
            let e = terms.entry(*k).or_insert_with(BigInt::zero);
            *e += v;
        }
        terms.retain(|_, v| !v.is_zero());
        Poly { terms }
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        let mut terms: BTreeMap<(u32, u32, u32), BigInt> = BTreeMap::new();
        for ((x1, y1, z1), c1) in &self.terms {
            for ((x2, y2, z2), c2) in &rhs.terms {
                let k = (x1 + x2, y1 + y2, z1 + z2);
                let e = terms.entry(k).or_insert_with(BigInt::zero);
                *e += c1 * c2;
            }
        }
        terms.retain(|_, v| !v.is_zero());
        Poly { terms }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Formal derivative with respect to z.
    pub fn d_dz(&self) -> Poly {
        let mut terms = BTreeMap::new();
        for (&(x, y, z), c) in &self.terms {
            if z > 0 {
                terms.insert((x, y, z - 1), c * BigInt::from(z));
            }
        }
        Poly { terms }
    }

    /// Substitutes z = 1.
    pub fn at_z_one(&self) -> Poly {
        let mut out = Poly::zero();
        for (&(x, y, _), c) in &self.terms {
            let e = out.terms.entry((x, y, 0)).or_insert_with(BigInt::zero);
            *e += c;
        }
        out.terms.retain(|_, v| !v.is_zero());
        out
    }

    fn constant(&self) -> BigInt {
        self.terms.get(&(0, 0, 0)).cloned().unwrap_or_else(BigInt::zero)
    }
}

/// A closed-form generating function: a pair of integer polynomials. The
/// denominator keeps a nonzero constant term so the quotient expands by
/// coefficient recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    pub num: Poly,
    pub den: Poly,
}

impl RationalGF {
    pub fn new(num: Poly, den: Poly) -> RationalGF {
        assert!(!den.constant().is_zero(), "denominator needs a nonzero constant term");
        RationalGF { num, den }
    }

    pub fn add(&self, rhs: &RationalGF) -> RationalGF {
        RationalGF::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }

    pub fn sub(&self, rhs: &RationalGF) -> RationalGF {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RationalGF {
        RationalGF { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &RationalGF) -> RationalGF {
        RationalGF::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }

    /// d/dz by the quotient rule (no cancellation attempted).
    pub fn d_dz(&self) -> RationalGF {
        RationalGF::new(
            self.num.d_dz().mul(&self.den).sub(&self.num.mul(&self.den.d_dz())),
            self.den.mul(&self.den),
        )
    }

    pub fn at_z_one(&self) -> RationalGF {
        RationalGF::new(self.num.at_z_one(), self.den.at_z_one())
    }
}

// ---------------------------------------------------------------------------
// Truncated series

type Stratum = HashMap<(u32, i32), Coeff>;

/// Sparse exact series in x, y, z truncated at a total x-degree, stored as
/// one (y, z)-stratum per x-degree. The z-degree may go negative within a
/// bounded window (Laurent monomials appear transiently).
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    order: u32,
    strata: Vec<Stratum>,
}

impl TruncatedSeries {
    pub fn zero(order: u32) -> TruncatedSeries {
        TruncatedSeries { order, strata: vec![Stratum::new(); order as usize + 1] }
    }

    pub fn one(order: u32) -> TruncatedSeries {
        TruncatedSeries::monomial(order, 0, 0, 0, q_int(1))
    }

    pub fn monomial(order: u32, x: u32, y: u32, z: i32, c: Coeff) -> TruncatedSeries {
        let mut s = TruncatedSeries::zero(order);
        if x <= order && !c.is_zero() {
            s.strata[x as usize].insert((y, z), c);
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeff(&self, x: u32, y: u32, z: i32) -> Coeff {
        if x > self.order {
            return Coeff::zero();
        }
        self.strata[x as usize].get(&(y, z)).cloned().unwrap_or_else(Coeff::zero)
    }

    fn insert_add(&mut self, x: u32, y: u32, z: i32, c: Coeff) {
        if x > self.order || c.is_zero() {
            return;
        }
        let e = self.strata[x as usize].entry((y, z)).or_insert_with(Coeff::zero);
        *e += c;
        if e.is_zero() {
            self.strata[x as usize].remove(&(y, z));
        }
    }

    /// Lowest x-degree with a nonzero stratum; None for the zero series.
    pub fn x_order(&self) -> Option<u32> {
        self.strata.iter().position(|s| !s.is_empty()).map(|i| i as u32)
    }

    pub fn add(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        let mut out = self.truncated(order);
        for (m, stratum) in rhs.strata.iter().enumerate().take(order as usize + 1) {
            for (&(y, z), c) in stratum {
                out.insert_add(m as u32, y, z, c.clone());
            }
        }
        out
    }

    pub fn sub(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        let mut out = self.clone();
        for stratum in &mut out.strata {
            for c in stratum.values_mut() {
                *c = -c.clone();
            }
        }
        out
    }

    pub fn scale(&self, k: &Coeff) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.order);
        for (m, stratum) in self.strata.iter().enumerate() {
            for (&(y, z), c) in stratum {
                out.insert_add(m as u32, y, z, c * k);
            }
        }
        out
    }

    pub fn truncated(&self, order: u32) -> TruncatedSeries {
        let order = order.min(self.order);
        TruncatedSeries { order, strata: self.strata[..=order as usize].to_vec() }
    }

    pub fn mul(&self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(rhs.order);
        let mut out = TruncatedSeries::zero(order);
        for (m1, s1) in self.strata.iter().enumerate().take(order as usize + 1) {
            if s1.is_empty() {
                continue;
            }
            for (m2, s2) in rhs.strata.iter().enumerate().take(order as usize + 1 - m1) {
                if s2.is_empty() {
                    continue;
                }
                let m = (m1 + m2) as u32;
                for (&(y1, z1), c1) in s1 {
                    for (&(y2, z2), c2) in s2 {
                        out.insert_add(m, y1 + y2, z1 + z2, c1 * c2);
                    }
                }
            }
        }
        out
    }

    /// `1/(1 - self)` for a series of positive x-order.
    pub fn geometric(&self) -> TruncatedSeries {
        assert!(
            self.x_order().map(|o| o >= 1).unwrap_or(true),
            "geometric sum needs positive x-order"
        );
        let mut acc = TruncatedSeries::one(self.order);
        let mut pw = TruncatedSeries::one(self.order);
        loop {
            pw = pw.mul(self);
            if pw.x_order().is_none() {
                break;
            }
            acc = acc.add(&pw);
        }
        acc
    }

    /// Applies a monomial map `(x, y, z) -> (x', y', z')`, merging images;
    /// images beyond the truncation order are dropped.
    pub fn map_monomials(
        &self,
        f: impl Fn(u32, u32, i32) -> (u32, u32, i32),
    ) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(self.order);
        for (m, stratum) in self.strata.iter().enumerate() {
            for (&(y, z), c) in stratum {
                let (x2, y2, z2) = f(m as u32, y, z);
                out.insert_add(x2, y2, z2, c.clone());
            }
        }
        out
    }

    /// y -> -y.
    pub fn negate_y(&self) -> TruncatedSeries {
        let mut out = self.clone();
        for stratum in &mut out.strata {
            for (&(y, _), c) in stratum.iter_mut() {
                if y % 2 == 1 {
                    *c = -c.clone();
                }
            }
        }
        out
    }

    /// Substitutes z = 1 (sums z-degrees away).
    pub fn at_z_one(&self) -> TruncatedSeries {
        self.map_monomials(|x, y, _| (x, y, 0))
    }

    /// Substitutes y = 1.
    pub fn at_y_one(&self) -> TruncatedSeries {
        self.map_monomials(|x, _, z| (x, 0, z))
    }

    /// z -> z².
    pub fn z_squared(&self) -> TruncatedSeries {
        self.map_monomials(|x, y, z| (x, y, 2 * z))
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.strata.iter().all(|s| s.values().all(|c| c.is_integer()))
    }

    /// Univariate view: the x-coefficients, requiring all y/z degrees zero.
    pub fn univariate(&self) -> Vec<Coeff> {
        let mut out = Vec::with_capacity(self.order as usize + 1);
        for stratum in &self.strata {
            let mut c = Coeff::zero();
            for (&(y, z), v) in stratum {
                assert!(y == 0 && z == 0, "series is not univariate");
                c += v;
            }
            out.push(c);
        }
        out
    }

    /// Univariate integer coefficients (panics on fractional ones).
    pub fn univariate_ints(&self) -> Vec<BigInt> {
        self.univariate()
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "fractional coefficient in integer series");
                c.to_integer()
            })
            .collect()
    }

    /// Sorted monomial dump: `(x, y, z, coefficient)`.
    pub fn monomials(&self) -> Vec<(u32, u32, i32, Coeff)> {
        let mut out = Vec::new();
        for (m, stratum) in self.strata.iter().enumerate() {
            let mut row: Vec<_> = stratum.iter().map(|(&(y, z), c)| (y, z, c.clone())).collect();
            row.sort_by_key(|&(y, z, _)| (y, z));
            for (y, z, c) in row {
                out.push((m as u32, y, z, c));
            }
        }
        out
    }

    /// Square root of a univariate series with constant term 1.
    pub fn sqrt_univariate(&self) -> TruncatedSeries {
        let a = self.univariate();
        assert!(a[0].is_one(), "sqrt needs constant term 1");
        let n = a.len();
        let mut s = vec![Coeff::zero(); n];
        s[0] = Coeff::one();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        for m in 1..n {
            let mut conv = Coeff::zero();
            for j in 1..m {
                conv += &s[j] * &s[m - j];
            }
            s[m] = (&a[m] - conv) * &half;
        }
        let mut out = TruncatedSeries::zero(self.order);
        for (m, c) in s.into_iter().enumerate() {
            out.insert_add(m as u32, 0, 0, c);
        }
        out
    }

    /// Division by a series whose x⁰ stratum is a nonzero constant.
    pub fn div(&self, den: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order.min(den.order);
        let c0 = {
            let s0 = &den.strata[0];
            assert!(
                s0.len() <= 1 && s0.keys().all(|&(y, z)| y == 0 && z == 0),
                "denominator x⁰ stratum must be constant"
            );
            s0.get(&(0, 0)).cloned().expect("denominator constant term is zero")
        };
        let inv_c0 = Coeff::one() / c0;
        let mut quot = TruncatedSeries::zero(order);
        for m in 0..=order {
            // stratum_m(quot) = (stratum_m(num) - Σ_{j≥1} den_j·quot_{m-j}) / c0
            let mut acc: Stratum = self.strata[m as usize].clone();
            for j in 1..=m {
                let dj = &den.strata[j as usize];
                if dj.is_empty() {
                    continue;
                }
                let qk = &quot.strata[(m - j) as usize];
                if qk.is_empty() {
                    continue;
                }
                for (&(y1, z1), c1) in dj {
                    for (&(y2, z2), c2) in qk {
                        let e = acc.entry((y1 + y2, z1 + z2)).or_insert_with(Coeff::zero);
                        *e -= c1 * c2;
                    }
                }
            }
            let stratum: Stratum = acc
                .into_iter()
                .filter_map(|(k, v)| {
                    let v = v * &inv_c0;
                    (!v.is_zero()).then_some((k, v))
                })
                .collect();
            quot.strata[m as usize] = stratum;
        }
        quot
    }
}

/// Embeds a polynomial as a truncated series.
pub fn poly_series(p: &Poly, order: u32) -> TruncatedSeries {
    let mut out = TruncatedSeries::zero(order);
    for (&(x, y, z), c) in &p.terms {
        out.insert_add(x, y, z as i32, BigRational::from_integer(c.clone()));
    }
    out
}

/// Expands a closed-form quotient to a truncated series, exactly.
pub fn expand(gf: &RationalGF, order: u32) -> TruncatedSeries {
    poly_series(&gf.num, order).div(&poly_series(&gf.den, order))
}

/// Coefficientwise (Hadamard) product of two univariate series.
pub fn hadamard(s: &TruncatedSeries, t: &TruncatedSeries) -> TruncatedSeries {
    assert_eq!(s.order, t.order, "hadamard needs matching orders");
    let a = s.univariate();
    let b = t.univariate();
    let mut out = TruncatedSeries::zero(s.order);
    for (m, (ca, cb)) in a.into_iter().zip(b).enumerate() {
        out.insert_add(m as u32, 0, 0, ca * cb);
    }
    out
}

// ---------------------------------------------------------------------------
// Generating function catalog

fn one() -> Poly {
    Poly::int(1)
}

/// Named closed forms. Each entry is an exact transcription of a
/// generating function used by the census and lens checks; the expansions
/// are validated against enumeration in the verification suites.
pub fn gf_catalog(name: &str) -> Result<RationalGF> {
    let x = Poly::x;
    let z = Poly::z;
    let gf = match name {
        // Fibonacci numbers, the recurring baseline.
        "fibonacci" => RationalGF::new(one(), one().sub(&x()).sub(&Poly::xp(2))),

        // Fibered knots by crossing number:
        //   -x³(1+x)(x⁴+x³+x²-1) / ((x⁴+2x³+x²-1)(x⁴+x²-1)).
        "fibered" => {
            let num = Poly::term(-1, 3, 0, 0)
                .mul(&one().add(&x()))
                .mul(&Poly::xp(4).add(&Poly::xp(3)).add(&Poly::xp(2)).sub(&one()));
            let den1 = Poly::xp(4).add(&Poly::term(2, 3, 0, 0)).add(&Poly::xp(2)).sub(&one());
            let den2 = Poly::xp(4).add(&Poly::xp(2)).sub(&one());
            RationalGF::new(num, den1.mul(&den2))
        }

        // Odd-length compositions into parts 1 and 2: (x+x²)/(1-(x+x²)²).
        "f1" => {
            let u = x().add(&Poly::xp(2));
            RationalGF::new(u.clone(), one().sub(&u.mul(&u)))
        }

        // Palindromic such compositions: (x+x²)/(1-x²-x⁴).
        "f2" => {
            RationalGF::new(x().add(&Poly::xp(2)), one().sub(&Poly::xp(2)).sub(&Poly::xp(4)))
        }

        // Positive knots: (x³-2x⁵) / ((1-3x²+x⁴)(1-x²-x⁴)).
        "positive" => {
            let num = Poly::xp(3).sub(&Poly::term(2, 5, 0, 0));
            let den1 = one().sub(&Poly::term(3, 2, 0, 0)).add(&Poly::xp(4));
            let den2 = one().sub(&Poly::xp(2)).sub(&Poly::xp(4));
            RationalGF::new(num, den1.mul(&den2))
        }

        // Unknotting number one:
        //   x³ + x⁴(x+1)·(2/(1-2x²) + 1/(x²-1)) + x⁸/(x⁴-1).
        "u1" => {
            let a = RationalGF::new(Poly::xp(3), one());
            let bracket = RationalGF::new(Poly::int(2), one().sub(&Poly::term(2, 2, 0, 0)))
                .add(&RationalGF::new(one(), Poly::xp(2).sub(&one())));
            let b = RationalGF::new(Poly::xp(4).mul(&x().add(&one())), one()).mul(&bracket);
            let c = RationalGF::new(Poly::xp(8), Poly::xp(4).sub(&one()));
            a.add(&b).add(&c)
        }

        // Components of the same count: twist knots, the two
        // middle-mirrored families, and the duplication series.
        "u1-twist" => RationalGF::new(Poly::xp(3), one().sub(&x())),
        "u1-form1" => RationalGF::new(
            Poly::term(2, 6, 0, 0),
            one().sub(&Poly::xp(2)).sub(&Poly::term(2, 4, 0, 0)).mul(&one().sub(&x())),
        ),
        "u1-form2" => RationalGF::new(
            Poly::term(2, 8, 0, 0),
            one().sub(&Poly::xp(2)).sub(&Poly::term(2, 4, 0, 0)).mul(&one().sub(&x())),
        ),
        "u1-duplication" => RationalGF::new(Poly::xp(8), one().sub(&Poly::xp(4))),

        // Unknotting number one knots that unknot inside their even
        // diagrams: (x³-x⁵+2x⁶-2x⁷) / ((1-x²-2x⁴)(1-x)).
        "non-counterexample" => {
            let num = Poly::xp(3)
                .sub(&Poly::xp(5))
                .add(&Poly::term(2, 6, 0, 0))
                .sub(&Poly::term(2, 7, 0, 0));
            let den =
                one().sub(&Poly::xp(2)).sub(&Poly::term(2, 4, 0, 0)).mul(&one().sub(&x()));
            RationalGF::new(num, den)
        }

        // Knots by crossing number (x) and genus (z):
        //   -x³z(-1+x³z+x⁴z+x²(1+z)) /
        //   ((1+x)(1+x²)(-1+2x+x²(-1+z))(-1+x²(1+z))).
        "genus" | "genus-f" => {
            let num = Poly::term(-1, 3, 0, 1).mul(
                &Poly::int(-1)
                    .add(&Poly::term(1, 3, 0, 1))
                    .add(&Poly::term(1, 4, 0, 1))
                    .add(&Poly::xp(2).mul(&one().add(&z()))),
            );
            let den = one()
                .add(&x())
                .mul(&one().add(&Poly::xp(2)))
                .mul(
                    &Poly::int(-1)
                        .add(&Poly::term(2, 1, 0, 0))
                        .add(&Poly::xp(2).mul(&z().sub(&one()))),
                )
                .mul(&Poly::int(-1).add(&Poly::xp(2).mul(&one().add(&z()))));
            RationalGF::new(num, den)
        }

        // The three composition counters behind the genus formula:
        //   g = zx³/((1+x)((1-x)²-zx²)),
        //   h = zx²/((1+x)(1-x-zx)),
        //   h₁ = zx³(1+x)/((1+x²)(1-x²-zx²)).
        "genus-g" => RationalGF::new(
            Poly::term(1, 3, 0, 1),
            one().add(&x()).mul(&one().sub(&x()).pow(2).sub(&Poly::term(1, 2, 0, 1))),
        ),
        "genus-h" => RationalGF::new(
            Poly::term(1, 2, 0, 1),
            one().add(&x()).mul(&one().sub(&x()).sub(&Poly::term(1, 1, 0, 1))),
        ),
        "genus-h1" => RationalGF::new(
            Poly::term(1, 3, 0, 1).mul(&one().add(&x())),
            one().add(&Poly::xp(2)).mul(&one().sub(&Poly::xp(2)).sub(&Poly::term(1, 2, 0, 1))),
        ),

        // Knots by crossing number (x) and braid index (z):
        //   -x³z²(-1-xz+2x⁴z²+x⁵z³+x²(1+z)+x³z(2+z)) /
        //   ((1+x)(-1+x+2x²z)(-1+x²+2x⁴z²)).
        "braid" => {
            let num = Poly::term(-1, 3, 0, 2).mul(
                &Poly::int(-1)
                    .sub(&Poly::term(1, 1, 0, 1))
                    .add(&Poly::term(2, 4, 0, 2))
                    .add(&Poly::term(1, 5, 0, 3))
                    .add(&Poly::xp(2).mul(&one().add(&z())))
                    .add(&Poly::term(1, 3, 0, 1).mul(&Poly::int(2).add(&z()))),
            );
            let den = one()
                .add(&x())
                .mul(&Poly::int(-1).add(&x()).add(&Poly::term(2, 2, 0, 1)))
                .mul(&Poly::int(-1).add(&Poly::xp(2)).add(&Poly::term(2, 4, 0, 2)));
            RationalGF::new(num, den)
        }

        // Exceptional determinant sequences.
        "p-seq" => RationalGF::new(
            Poly::int(29).sub(&Poly::term(5, 1, 0, 0)),
            one().sub(&Poly::term(6, 1, 0, 0)).add(&Poly::xp(2)),
        ),
        "q-seq" => RationalGF::new(
            Poly::int(65).sub(&Poly::term(74, 1, 0, 0)).add(&Poly::term(5, 2, 0, 0)),
            one().sub(&x()).mul(&one().sub(&Poly::term(14, 1, 0, 0)).add(&Poly::xp(2))),
        ),

        // Closed form of the trivariate signature counter; checked
        // coefficient-by-coefficient against the pipeline in the tests.
        "g1-closed" => g1_closed_form(),

        _ => return Err(Error::UnknownGf(name.to_string())),
    };
    Ok(gf)
}

/// Catalog names accepted by [`gf_catalog`] that expand in x alone or in
/// (x, z); listed for the CLI.
pub const GF_NAMES: [&str; 17] = [
    "fibonacci",
    "fibered",
    "f1",
    "f2",
    "positive",
    "u1",
    "u1-twist",
    "u1-form1",
    "u1-form2",
    "u1-duplication",
    "non-counterexample",
    "genus",
    "genus-g",
    "genus-h",
    "genus-h1",
    "braid",
    "p-seq",
];

fn g1_closed_form() -> RationalGF {
    let x = Poly::x;
    let y2z2 = Poly::term(1, 0, 2, 2);
    let t = |c: i64, x: u32, y: u32, z: u32| Poly::term(c, x, y, z);

    // Numerator block, grouped by x-power.
    let n0 = Poly::int(-1).sub(&Poly::zp(4));
    let n8 =
        t(1, 8, 0, 2).mul(&Poly::int(-1).add(&y2z2).pow(2)).mul(&Poly::int(1).add(&y2z2));
    let n1 = t(-1, 1, 0, 0).mul(&Poly::int(1).add(&Poly::zp(2)).add(&Poly::zp(4)));
    let n6 = t(1, 6, 0, 2).mul(
        &Poly::int(1)
            .add(&t(2, 0, 6, 6))
            .add(&t(2, 0, 2, 0).mul(&Poly::int(1).add(&Poly::zp(4))))
            .sub(&t(1, 0, 4, 2).mul(&t(2, 0, 0, 0).add(&t(3, 0, 0, 2)).add(&t(2, 0, 0, 4)))),
    );
    let n7 = t(1, 7, 0, 2).mul(
        &Poly::int(1)
            .add(&t(1, 0, 6, 6))
            .add(&t(1, 0, 2, 0).mul(&Poly::int(1).add(&Poly::zp(2)).add(&Poly::zp(4))))
            .sub(&t(1, 0, 4, 0).mul(&Poly::zp(2).add(&t(3, 0, 0, 4)).add(&Poly::zp(6)))),
    );
    let n2 = Poly::xp(2).mul(
        &t(-1, 0, 0, 2)
            .add(&t(1, 0, 2, 0).mul(&Poly::int(1).add(&t(4, 0, 0, 4)).add(&Poly::zp(8)))),
    );
    let n3 = Poly::xp(3).mul(&t(-1, 0, 0, 2).add(&t(1, 0, 2, 0).mul(
        &Poly::int(1).add(&Poly::zp(2)).add(&t(3, 0, 0, 4)).add(&Poly::zp(6)).add(&Poly::zp(8)),
    )));
    let n5 = Poly::xp(5).mul(
        &Poly::int(1)
            .add(&Poly::zp(2))
            .add(&Poly::zp(4))
            .sub(&t(1, 0, 4, 4).mul(&t(2, 0, 0, 0).add(&Poly::zp(2)).add(&t(2, 0, 0, 4))))
            .add(&t(1, 0, 2, 0).mul(
                &Poly::int(1).add(&t(2, 0, 0, 2)).add(&t(2, 0, 0, 6)).add(&Poly::zp(8)),
            )),
    );
    let n4 = Poly::xp(4).mul(
        &Poly::int(1)
            .sub(&Poly::zp(2))
            .add(&Poly::zp(4))
            .sub(&t(3, 0, 4, 0).mul(&Poly::zp(4).add(&Poly::zp(8))))
            .add(&t(1, 0, 2, 0).mul(
                &Poly::int(1)
                    .add(&t(2, 0, 0, 2))
                    .add(&Poly::zp(4))
                    .add(&t(2, 0, 0, 6))
                    .add(&Poly::zp(8)),
            )),
    );
    let block = n0.add(&n8).add(&n1).add(&n6).add(&n7).add(&n2).add(&n3).add(&n5).add(&n4);
    let num = t(-1, 3, 2, 0).mul(&block);

    let xy_z2 = t(1, 1, 1, 0).mul(&Poly::int(1).add(&Poly::zp(2)));
    let x2m = Poly::xp(2).mul(&Poly::int(-1).add(&y2z2));
    let d3 = Poly::int(1).sub(&xy_z2).add(&x2m);
    let d4 = Poly::int(1).add(&xy_z2).add(&x2m);
    let d5 = Poly::int(1)
        .sub(&t(1, 2, 2, 0).mul(&Poly::int(1).add(&Poly::zp(4))))
        .add(&Poly::xp(4).mul(&Poly::int(-1).add(&t(1, 0, 4, 4))));
    let den =
        Poly::int(1).add(&x()).mul(&Poly::int(1).add(&Poly::xp(2))).mul(&d3).mul(&d4).mul(&d5);
    RationalGF::new(num, den)
}

// ---------------------------------------------------------------------------
// The signature pipeline

/// Output of [`build_g1`]: the trivariate counter and the palindromic part
/// needed for the selection step.
pub struct SignaturePipeline {
    /// Counts knots by (crossing number, 1-χ, 1-χ+σ) with both members of
    /// every chiral pair counted. Integer coefficients.
    pub g1: TruncatedSeries,
    /// The palindromic-word counter (achiral knots; z-degree = y-degree).
    pub f3: TruncatedSeries,
}

/// Builds the trivariate signature counter by composing the group series:
/// the per-group counter F̂, its σ-negative (z = 1) and σ-positive (z → z²)
/// specializations, the alternating concatenation, parity selection in y,
/// and the palindromic/antipalindromic corrections. Ends with an
/// integrality check: every half-integer contribution must cancel.
pub fn build_g1(order: u32) -> SignaturePipeline {
    // F̂(x,y,z) = yz·x²/(1-x²) · 1/(1 - y·xz/(1-x²))
    let inv_1mx2 = poly_series(&Poly::xp(2), order).geometric();
    let f_hat = {
        let head = TruncatedSeries::monomial(order, 2, 1, 1, q_int(1)).mul(&inv_1mx2);
        let tail = TruncatedSeries::monomial(order, 1, 1, 1, q_int(1)).mul(&inv_1mx2);
        head.mul(&tail.geometric())
    };
    let f1 = f_hat.at_z_one();
    let f2 = f_hat.z_squared();

    // Ř = (1 + 1/F₂)·F₁F₂/(1-F₁F₂) = F₁(1+F₂)/(1-F₁F₂)
    let f1f2 = f1.mul(&f2);
    let r = f1.mul(&TruncatedSeries::one(order).add(&f2)).mul(&f1f2.geometric());

    // F: keep even powers of y only.
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let f = r.add(&r.negate_y()).scale(&half);

    // F₀ = (1/x)·Ř(x², y², z²): antipalindromic words.
    let f0 = r.map_monomials(|m, l, k| (2 * m - 1, 2 * l, 2 * k));

    // F₃ = Ř(x², y²z², 1): palindromic words.
    let f3 = r.map_monomials(|m, l, _| (2 * m, 2 * l, 2 * l as i32));

    let g = f.add(&f0).add(&f3).scale(&half);

    // G₁ = G + G(x, yz², 1/z) - F₃; the substitution is the re-indexing
    // k -> 2l-k on the support window 0 ≤ k ≤ 2l.
    let g_swap = g.map_monomials(|m, l, k| {
        debug_assert!(k >= 0 && k <= 2 * l as i32, "support violation in swap");
        (m, l, 2 * l as i32 - k)
    });
    let g1 = g.add(&g_swap).sub(&f3);
    assert!(g1.is_integral(), "half-integer contributions failed to cancel in G1");
    SignaturePipeline { g1, f3 }
}

/// Selects `|σ|` from the mirror-symmetric counter: G₂ = G₁ + F₃, weighted
/// 0 / ½ / 1 according to (z-degree vs y-degree), then re-indexed
/// `z^k -> z^{k-l}`. Counts knots by (crossing number, 1-χ, |σ|) with
/// chiral pairs counted once.
pub fn select_j(pipeline: &SignaturePipeline) -> TruncatedSeries {
    let g2 = pipeline.g1.add(&pipeline.f3);
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let order = g2.order();
    let mut out = TruncatedSeries::zero(order);
    for (m, l, k, c) in g2.monomials() {
        let l_i = l as i32;
        if k < l_i {
            continue;
        }
        let w = if k == l_i { &c * &half } else { c };
        out.insert_add(m, l, k - l_i, w);
    }
    assert!(out.is_integral(), "signature selection must be integral");
    out
}

/// The σ = 0 diagonal of G₁ (z-degree = y-degree) as integer coefficients
/// by crossing number; chiral pairs counted twice.
pub fn diagonal_sigma0(g1: &TruncatedSeries) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); g1.order() as usize + 1];
    for (m, l, k, c) in g1.monomials() {
        if k == l as i32 {
            assert!(c.is_integer());
            out[m as usize] += c.to_integer();
        }
    }
    out
}

/// Closed-form series for the σ = 0 count (the expression in √(1-4x²) and
/// √(1-4x⁴)); exact rational arithmetic throughout.
pub fn sigma0_closed_series(order: u32) -> Vec<BigInt> {
    let one = TruncatedSeries::one(order);
    let x1 = TruncatedSeries::monomial(order, 1, 0, 0, q_int(1));
    let xp = |e: u32| TruncatedSeries::monomial(order, e, 0, 0, q_int(1));
    let a = one.sub(&xp(2).scale(&q_int(4))).sqrt_univariate(); // √(1-4x²)
    let b = one.sub(&xp(4).scale(&q_int(4))).sqrt_univariate(); // √(1-4x⁴)
    let c = a.mul(&b); // √((-1+4x²)(-1+4x⁴))

    let apb = a.add(&b);
    let apb_m2c = apb.sub(&c.scale(&q_int(2)));
    let t = a
        .neg()
        .add(&xp(5).scale(&q_int(2)).mul(&a))
        .sub(&b)
        .add(&c.scale(&q_int(2)))
        .add(&xp(4).scale(&q_int(2)).mul(&apb))
        .sub(&x1.mul(&apb_m2c))
        .sub(&xp(3).mul(&apb_m2c))
        .add(&xp(2).mul(&a.neg().add(&b).add(&c.scale(&q_int(2)))));

    let den = poly_series(
        &Poly::int(2).mul(&Poly::int(1).add(&Poly::x())).mul(&Poly::int(1).add(&Poly::xp(2))),
        order,
    )
    .mul(&c);
    let f0 = x1.neg().mul(&t).div(&den);
    f0.univariate_ints()
}

/// Per-n exact statistics derived from the series and the signature sum.
#[derive(Debug, Clone)]
pub struct MeanStats {
    pub n: u32,
    /// Rational knots of n crossings up to mirroring.
    pub total: BigInt,
    pub mean_genus: BigRational,
    pub mean_abs_signature: BigRational,
}

/// Exact mean genus and mean |σ| per crossing number up to `order`.
///
/// The genus means come from the z-derivative of the genus counter at
/// z = 1 (both rational functions, expanded exactly). The |σ| sums come
/// from the signature dynamic program, which agrees with the
/// series-selection values on the range where both are computed; dividing
/// by the same exact totals keeps everything rational.
pub fn mean_statistics(order: u32) -> Vec<MeanStats> {
    let f = gf_catalog("genus").unwrap();
    let totals = expand(&f.at_z_one(), order).univariate_ints();
    let genus_weighted = expand(&f.d_dz().at_z_one(), order).univariate_ints();
    let sigma_sums = crate::census::sum_abs_signature_upto(order as u64);
    let mut out = Vec::new();
    for n in 3..=order as usize {
        let total = &totals[n];
        if total.is_zero() {
            continue;
        }
        out.push(MeanStats {
            n: n as u32,
            total: total.clone(),
            mean_genus: BigRational::new(genus_weighted[n].clone(), total.clone()),
            mean_abs_signature: BigRational::new(
                BigInt::from(sigma_sums[n].clone()),
                total.clone(),
            ),
        });
    }
    out
}

/// Σ k · [x^m y^l z^k] J: the |σ| sums implied by the selected series,
/// used to cross-check the dynamic program.
pub fn sigma_sums_from_j(j: &TruncatedSeries) -> Vec<BigUint> {
    let mut out = vec![BigInt::zero(); j.order() as usize + 1];
    for (m, _, k, c) in j.monomials() {
        out[m as usize] += c.to_integer() * BigInt::from(k);
    }
    out.into_iter()
        .map(|v| {
            assert!(!v.is_negative());
            v.to_biguint().unwrap()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(name: &str, order: u32) -> Vec<BigInt> {
        expand(&gf_catalog(name).unwrap(), order).univariate_ints()
    }

    fn small(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|b| i64::try_from(b).unwrap()).collect()
    }

    #[test]
    fn fibonacci_expansion() {
        assert_eq!(small(&ints("fibonacci", 7)), vec![1, 1, 2, 3, 5, 8, 13, 21]);
    }

    #[test]
    fn u1_series() {
        let c = small(&ints("u1", 12));
        assert_eq!(c[3..], [1, 1, 1, 3, 3, 6, 7, 15, 15, 30]);
        // Equal to the component sum: twist + form1 + form2 - duplication.
        let combined = gf_catalog("u1-twist")
            .unwrap()
            .add(&gf_catalog("u1-form1").unwrap())
            .add(&gf_catalog("u1-form2").unwrap())
            .sub(&gf_catalog("u1-duplication").unwrap());
        assert_eq!(ints("u1", 20), expand(&combined, 20).univariate_ints());
    }

    #[test]
    fn positive_series() {
        let c = small(&ints("positive", 13));
        assert_eq!(c[3], 1);
        assert_eq!(c[5], 2);
        assert_eq!(c[7], 5);
        assert_eq!(c[9], 12);
        assert_eq!(c[11], 30);
        assert_eq!(c[13], 76);
        assert!(c.iter().step_by(2).all(|&v| v == 0));
    }

    #[test]
    fn fibered_series_and_parts() {
        let c = small(&ints("fibered", 9));
        assert_eq!(c[3..], [1, 1, 1, 2, 3, 4, 7]);
        // fibered = x²(f1+f2)/2 coefficientwise.
        let f1 = ints("f1", 18);
        let f2 = ints("f2", 18);
        let fib = ints("fibered", 20);
        for n in 3..=20usize {
            let sum = &f1[n - 2] + &f2[n - 2];
            assert_eq!(&fib[n] * BigInt::from(2), sum, "n={n}");
        }
    }

    #[test]
    fn non_counterexample_series() {
        let c = small(&ints("non-counterexample", 11));
        assert_eq!(c[3..], [1, 1, 1, 3, 3, 5, 5, 11, 11]);
    }

    #[test]
    fn sequence_gfs() {
        assert_eq!(small(&ints("p-seq", 5)), vec![29, 169, 985, 5741, 33461, 195025]);
        assert_eq!(small(&ints("q-seq", 4)), vec![65, 901, 12545, 174725, 2433601]);
    }

    #[test]
    fn hadamard_examples() {
        let order = 8;
        let geo1 = expand(&RationalGF::new(Poly::int(1), Poly::int(1).sub(&Poly::x())), order);
        let geo2 = expand(
            &RationalGF::new(Poly::int(1), Poly::int(1).sub(&Poly::term(2, 1, 0, 0))),
            order,
        );
        assert_eq!(hadamard(&geo1, &geo2).univariate_ints(), geo2.univariate_ints());
        // 1/(1-x) is the identity element.
        let fib = expand(&gf_catalog("fibonacci").unwrap(), order);
        assert_eq!(hadamard(&fib, &geo1), fib);
        // Fibonacci ⊙ Fibonacci = squares of Fibonacci numbers.
        let sq = hadamard(&fib, &fib).univariate_ints();
        assert_eq!(small(&sq)[..6], [1, 1, 4, 9, 25, 64]);
    }

    #[test]
    fn ring_axioms_spot() {
        let order = 10;
        let a = expand(&gf_catalog("fibered").unwrap(), order);
        let b = expand(&gf_catalog("positive").unwrap(), order);
        let c = expand(&gf_catalog("u1").unwrap(), order);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
    }

    #[test]
    fn expansion_times_denominator_is_numerator() {
        for name in GF_NAMES.iter().chain(["q-seq", "g1-closed"].iter()) {
            let gf = gf_catalog(name).unwrap();
            let order = 14;
            let s = expand(&gf, order);
            let back = s.mul(&poly_series(&gf.den, order));
            assert_eq!(back, poly_series(&gf.num, order).truncated(order), "{name}");
        }
    }

    #[test]
    fn genus_substitutions() {
        // f = (g + h₁)/2, checked on expansions.
        let order = 16;
        let f = expand(&gf_catalog("genus").unwrap(), order);
        let g = expand(&gf_catalog("genus-g").unwrap(), order);
        let h1 = expand(&gf_catalog("genus-h1").unwrap(), order);
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        assert_eq!(f, g.add(&h1).scale(&half));

        // h₁ is h with n -> ceil(n/2): divide by x, substitute x -> x²,
        // multiply by x + x².
        let h = expand(&gf_catalog("genus-h").unwrap(), order);
        let h_reindexed = h
            .map_monomials(|m, l, k| (2 * (m - 1), l, k))
            .mul(&poly_series(&Poly::x().add(&Poly::xp(2)), order));
        assert_eq!(h1, h_reindexed.truncated(order));
    }

    #[test]
    fn g1_pipeline_small_coefficients() {
        let pipe = build_g1(10);
        let g1 = &pipe.g1;
        // Trefoil and its mirror at n = 3: genus 1, σ = ±2.
        assert_eq!(g1.coeff(3, 2, 4), q_int(1));
        assert_eq!(g1.coeff(3, 2, 0), q_int(1));
        assert_eq!(g1.coeff(3, 2, 4) + g1.coeff(3, 2, 0), q_int(2));
        // Figure-eight at n = 4: self-mirror, σ = 0.
        assert_eq!(g1.coeff(4, 2, 2), q_int(1));
        // Pairs-twice totals at small n (2·total - achiral).
        let totals = g1.at_y_one().at_z_one().univariate_ints();
        assert_eq!(small(&totals)[3..=8], [2, 1, 4, 5, 14, 21]);
    }

    #[test]
    fn g1_matches_closed_form() {
        let order = 14;
        let pipe = build_g1(order);
        let closed = expand(&gf_catalog("g1-closed").unwrap(), order);
        assert_eq!(pipe.g1, closed);
    }

    #[test]
    fn g1_symmetry_and_remark_identities() {
        let order = 16;
        let pipe = build_g1(order);
        // Invariance under (y, z) -> (yz², 1/z).
        let swapped = pipe.g1.map_monomials(|m, l, k| (m, l, 2 * l as i32 - k));
        assert_eq!(swapped, pipe.g1);

        // G₁(x, y, 1) = 2 f(x, y²) - (h₁(-x, y²) + h₁(x, y²))/2, where f
        // and h₁ count the genus in their z variable.
        let g1_y = pipe.g1.at_z_one();
        let f_y2 = expand(&gf_catalog("genus").unwrap(), order)
            .map_monomials(|m, _, k| (m, 2 * k as u32, 0));
        let h1 = expand(&gf_catalog("genus-h1").unwrap(), order);
        let h1_y2 = h1.map_monomials(|m, _, k| (m, 2 * k as u32, 0));
        let h1_neg = {
            let mut out = TruncatedSeries::zero(order);
            for (m, l, k, c) in h1_y2.monomials() {
                let c = if m % 2 == 1 { -c } else { c };
                out.insert_add(m, l, k, c);
            }
            out
        };
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let rhs = f_y2.scale(&q_int(2)).sub(&h1_neg.add(&h1_y2).scale(&half));
        assert_eq!(g1_y, rhs);

        // G₁(x, 1, 0) counts negative knots; equal to the positive GF.
        let mut neg_counts = vec![BigInt::zero(); order as usize + 1];
        for (m, _, k, c) in pipe.g1.monomials() {
            if k == 0 {
                neg_counts[m as usize] += c.to_integer();
            }
        }
        assert_eq!(neg_counts, ints("positive", order));
    }

    #[test]
    fn braid_consistency() {
        let order = 20;
        let braid_tot = expand(&gf_catalog("braid").unwrap().at_z_one(), order).univariate_ints();
        let all = expand(&gf_catalog("genus").unwrap().at_z_one(), order).univariate_ints();
        assert_eq!(braid_tot, all);
    }

    #[test]
    fn sigma0_diagonal_series() {
        let pipe = build_g1(10);
        let f0 = diagonal_sigma0(&pipe.g1);
        assert_eq!(small(&f0)[4..], [1, 0, 3, 2, 9, 6, 29]);
        assert_eq!(sigma0_closed_series(10), f0);
    }

    #[test]
    fn selection_examples() {
        let pipe = build_g1(10);
        let j = select_j(&pipe);
        assert_eq!(j.coeff(3, 2, 2), q_int(1)); // trefoil once, |σ| = 2
        assert_eq!(j.coeff(4, 2, 0), q_int(1)); // figure-eight, σ = 0
        // J(x,1,1): all knots up to mirroring.
        let totals = j.at_y_one().at_z_one().univariate_ints();
        let all = expand(&gf_catalog("genus").unwrap().at_z_one(), 10).univariate_ints();
        assert_eq!(totals, all);
        // J(x,1,0): σ = 0 up to mirroring = (diagonal + achiral)/2.
        let mut sigma0_once = vec![BigInt::zero(); 11];
        for (m, _, k, c) in j.monomials() {
            if k == 0 {
                sigma0_once[m as usize] += c.to_integer();
            }
        }
        let diag = diagonal_sigma0(&pipe.g1);
        let f3_tot = pipe.f3.at_y_one().at_z_one().univariate_ints();
        for m in 0..=10usize {
            assert_eq!(&sigma0_once[m] * BigInt::from(2), &diag[m] + &f3_tot[m], "m={m}");
        }
    }

    #[test]
    fn square_root_series() {
        let order = 12;
        let s = TruncatedSeries::one(order)
            .sub(&TruncatedSeries::monomial(order, 2, 0, 0, q_int(4)));
        let r = s.sqrt_univariate();
        assert_eq!(r.mul(&r).univariate(), s.univariate());
    }
}
