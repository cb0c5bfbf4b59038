//! Exact arithmetic on the circle R/Z.
//!
//! Angles are reduced fractions in `[0, 1)` over big integers, so pulling
//! back many times never loses precision.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{LamError, Result};

/// A point of the circle, kept in canonical reduced form in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Angle(BigRational);

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let small = |a: &Angle| Some((a.numer().to_u64()?, a.denom().to_u64()?));
        match (small(self), small(other)) {
            (Some((an, ad)), Some((bn, bd))) => (an as u128 * bd as u128).cmp(&(bn as u128 * ad as u128)),
            _ => self.0.cmp(&other.0),
        }
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Reduce a rational into `[0, 1)`.
pub fn frac(r: BigRational) -> BigRational {
    let fl = r.floor();
    r - fl
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Angle {
    pub fn new(r: BigRational) -> Self {
        Angle(frac(r))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Angle::new(ratio(n, d))
    }

    pub fn zero() -> Self {
        Angle(BigRational::zero())
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// `self + t` on the circle.
    pub fn shift(&self, t: &BigRational) -> Angle {
        Angle::new(&self.0 + t)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Angle {
    type Err = LamError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || LamError::Parse { what: "angle", token: s.to_string() };
        let t = s.trim();
        if t.is_empty() {
            return Err(bad());
        }
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Angle::new(BigRational::new(n, d)))
    }
}

/// Positively oriented arc from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    pub start: Angle,
    pub end: Angle,
}

impl Arc {
    pub fn new(start: Angle, end: Angle) -> Self {
        Arc { start, end }
    }

    pub fn is_degenerate(&self) -> bool {
        self.start == self.end
    }

    pub fn length(&self) -> BigRational {
        arc_length(&self.start, &self.end)
    }

    pub fn reverse(&self) -> Arc {
        Arc::new(self.end.clone(), self.start.clone())
    }

    /// Membership in the open arc.
    pub fn contains(&self, x: &Angle) -> bool {
        let (s, e) = (&self.start, &self.end);
        match s.cmp(e) {
            std::cmp::Ordering::Less => s < x && x < e,
            std::cmp::Ordering::Greater => x > s || x < e,
            std::cmp::Ordering::Equal => false,
        }
    }

    /// Membership in the closed arc.
    pub fn contains_closed(&self, x: &Angle) -> bool {
        let (s, e) = (&self.start, &self.end);
        match s.cmp(e) {
            std::cmp::Ordering::Less => s <= x && x <= e,
            std::cmp::Ordering::Greater => x >= s || x <= e,
            std::cmp::Ordering::Equal => x == s,
        }
    }

    /// Whether `other` lies inside the closure of this arc.
    pub fn contains_arc(&self, other: &Arc) -> bool {
        // Order points by their distance from `start` going counterclockwise.
        let key = |x: &Angle| (x < &self.start, x.clone());
        let (a, b, e) = (key(&other.start), key(&other.end), key(&self.end));
        a <= b && b <= e
    }

    /// Image of the arc under the map, taken endpoint-wise.
    pub fn image(&self, d: u32) -> Arc {
        Arc::new(sigma(d, &self.start), sigma(d, &self.end))
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.start, self.end)
    }
}

/// `(end - start) mod 1`.
pub fn arc_length(start: &Angle, end: &Angle) -> BigRational {
    frac(&end.0 - &start.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Negative,
    Degenerate,
}

/// Orientation of the triple: positive when `b` is met strictly between
/// `a` and `c` going counterclockwise from `a`.
pub fn cyclic_order(a: &Angle, b: &Angle, c: &Angle) -> Orientation {
    if a == b || b == c || a == c {
        return Orientation::Degenerate;
    }
    if arc_length(a, b) < arc_length(a, c) {
        Orientation::Positive
    } else {
        Orientation::Negative
    }
}

pub fn sigma(d: u32, a: &Angle) -> Angle {
    let q = a.denom();
    let n = (a.numer() * BigInt::from(d)).mod_floor(q);
    // gcd(n d, q) = gcd(d, q) because the input is reduced.
    let g = BigInt::from(d).gcd(q);
    if g.is_one() {
        Angle(BigRational::new_raw(n, q.clone()))
    } else {
        Angle(BigRational::new_raw(n / &g, q / &g))
    }
}

pub fn sigma_n(d: u32, n: usize, a: &Angle) -> Angle {
    let mut x = a.clone();
    for _ in 0..n {
        x = sigma(d, &x);
    }
    x
}

/// The `d` preimages of `a`, in increasing order from 0.
pub fn preimages(d: u32, a: &Angle) -> Vec<Angle> {
    let (n, q) = (a.numer(), a.denom());
    let dq = q * BigInt::from(d);
    (0..d)
        .map(|k| {
            let m = n + q * BigInt::from(k);
            // Any common factor of m and d q divides d.
            let g = m.gcd(&BigInt::from(d));
            if g.is_one() {
                Angle(BigRational::new_raw(m, dq.clone()))
            } else {
                Angle(BigRational::new_raw(m / &g, &dq / &g))
            }
        })
        .collect()
}

/// Points fixed by the `n`-th iterate: `j / (d^n - 1)`.
pub fn fixed_points(d: u32, n: usize) -> Vec<Angle> {
    let m = BigInt::from(d).pow(n as u32) - BigInt::one();
    let count = m.to_u64().expect("period too large");
    (0..count).map(|j| Angle(BigRational::new(BigInt::from(j), m.clone()))).collect()
}

/// Split the forward orbit of `a` into its preperiodic part and its cycle.
///
/// Rational angles are always eventually periodic.
pub fn orbit(d: u32, a: &Angle) -> (Vec<Angle>, Vec<Angle>) {
    let mut seen: std::collections::HashMap<Angle, usize> = std::collections::HashMap::new();
    let mut path = Vec::new();
    let mut x = a.clone();
    loop {
        if let Some(&i) = seen.get(&x) {
            let cycle = path.split_off(i);
            return (path, cycle);
        }
        seen.insert(x.clone(), path.len());
        path.push(x.clone());
        x = sigma(d, &x);
    }
}

/// Exact period of `a`, or `None` if `a` is strictly preperiodic.
pub fn period(d: u32, a: &Angle) -> Option<usize> {
    let (pre, cycle) = orbit(d, a);
    if pre.is_empty() {
        Some(cycle.len())
    } else {
        None
    }
}

pub fn is_fixed_point(d: u32, a: &Angle) -> bool {
    sigma(d, a) == *a
}

/// Positive distance traveled from `a` to `b`, as a rational in `[0, 1)`.
pub fn forward_distance(a: &Angle, b: &Angle) -> BigRational {
    arc_length(a, b)
}

/// Sign-aware lift: the representative of `b - a` in `[-1/2, 1/2)`.
pub fn signed_offset(a: &Angle, b: &Angle) -> BigRational {
    let half = ratio(1, 2);
    let r = arc_length(a, b);
    if r >= half {
        r - BigRational::one()
    } else {
        r
    }
}

pub fn is_nonnegative(r: &BigRational) -> bool {
    !r.is_negative()
}
