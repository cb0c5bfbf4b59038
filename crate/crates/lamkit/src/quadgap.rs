//! Invariant quadratic gaps of the tripling map and related periodic gaps.
//!
//! Every infinite gap handled here except caterpillars is given by a cycle
//! of "outer" arcs `O_0, ..., O_{p-1}`: member `j` of the cycle has as its
//! basis the points `x` with `sigma^i(x)` in the closed complement of
//! `O_{j+i}` for all `i`. Its holes are `O_j` together with the pullbacks
//! of holes of member `j + 1` that land in that closed complement.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::chords::{is_critical, Chord};
use crate::circle::{
    arc_length, fixed_points, orbit, period, preimages, ratio, sigma, sigma_n, signed_offset, Angle, Arc,
};
use crate::error::{LamError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CriticalTag {
    RegularCritical,
    Caterpillar,
    PeriodicType,
}

impl fmt::Display for CriticalTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CriticalTag::RegularCritical => "RegularCritical",
            CriticalTag::Caterpillar => "Caterpillar",
            CriticalTag::PeriodicType => "PeriodicType",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalClass {
    pub tag: CriticalTag,
    pub chord: Chord,
    pub n_c: Option<usize>,
    /// The major of the associated invariant gap, written as
    /// `hole end - hole start`.
    pub major: Chord,
    pub major_period: Option<usize>,
    /// The critical value stays in the closure of `L(c)`, so all three of
    /// its preimages belong to `Pi(c)`.
    pub value_in_pi: bool,
}

impl CriticalClass {
    pub fn summary(&self) -> String {
        match self.tag {
            CriticalTag::PeriodicType => {
                format!("PeriodicType n_c={} major={}", self.n_c.unwrap_or(0), self.major)
            }
            CriticalTag::RegularCritical => format!("RegularCritical major={}", self.major),
            CriticalTag::Caterpillar => {
                format!("Caterpillar major={} period={}", self.major, self.major_period.unwrap_or(0))
            }
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = self.summary();
        s.push('\n');
        s.push_str(&format!("chord: {}\n", self.chord));
        s.push_str(&format!("critical_value_in_pi: {}\n", self.value_in_pi));
        s
    }
}

/// The side of a critical chord cut off with length `1/d`.
pub fn short_arc(d: u32, c: &Chord) -> Arc {
    let third = ratio(1, d as i64);
    if arc_length(&c.a, &c.b) == third {
        c.arc_ab()
    } else {
        c.arc_ba()
    }
}

fn period_modulus(d: u32, n: usize) -> BigInt {
    BigInt::from(d).pow(n as u32) - BigInt::one()
}

/// First point of the form `j/(d^n - 1)` strictly after `x`.
pub fn first_fixed_after(d: u32, n: usize, x: &Angle) -> Angle {
    let m = period_modulus(d, n);
    let j = (x.numer() * &m).div_floor(x.denom()) + BigInt::one();
    Angle::new(BigRational::new(j.mod_floor(&m), m))
}

/// Last point of the form `j/(d^n - 1)` strictly before `x`.
pub fn last_fixed_before(d: u32, n: usize, x: &Angle) -> Angle {
    let m = period_modulus(d, n);
    let j = Integer::div_ceil(&(x.numer() * &m), x.denom()) - BigInt::one();
    Angle::new(BigRational::new(j.mod_floor(&m), m))
}

fn forward_orbit(d: u32, x: &Angle) -> Vec<Angle> {
    let (mut pre, cyc) = orbit(d, x);
    pre.extend(cyc);
    pre
}

pub fn classify_critical(c: &Chord) -> Result<CriticalClass> {
    if !is_critical(3, c)? {
        return Err(LamError::NotCritical(c.to_string()));
    }
    let h = short_arc(3, c);
    let (s, e) = (h.start.clone(), h.end.clone());
    let l = Arc::new(e.clone(), s.clone());
    let zs = forward_orbit(3, &sigma(3, &c.a));
    if let Some(i) = zs.iter().position(|z| h.contains(z)) {
        let n = i + 1;
        let ze = first_fixed_after(3, n, &e);
        let zst = last_fixed_before(3, n, &s);
        return Ok(CriticalClass {
            tag: CriticalTag::PeriodicType,
            chord: c.clone(),
            n_c: Some(n),
            major: Chord::new(ze, zst),
            major_period: Some(n),
            value_in_pi: false,
        });
    }
    if zs.iter().all(|z| l.contains(z)) {
        return Ok(CriticalClass {
            tag: CriticalTag::RegularCritical,
            chord: c.clone(),
            n_c: None,
            major: c.clone(),
            major_period: None,
            value_in_pi: true,
        });
    }
    let (hole, k) = caterpillar_major_hole(c)?;
    Ok(CriticalClass {
        tag: CriticalTag::Caterpillar,
        chord: c.clone(),
        n_c: None,
        major: Chord::new(hole.end, hole.start),
        major_period: Some(k),
        value_in_pi: true,
    })
}

/// For a critical chord with a periodic endpoint `y`: the hole of the
/// periodic major through `y`, and the period of `y`.
///
/// The other endpoint of the major is the nearest point fixed by
/// `sigma^k` met when leaving the non-periodic endpoint into `L(c)`.
fn caterpillar_major_hole(c: &Chord) -> Result<(Arc, usize)> {
    let h = short_arc(3, c);
    let (s, e) = (h.start.clone(), h.end.clone());
    if let Some(k) = period(3, &s) {
        let z = first_fixed_after(3, k, &e);
        Ok((Arc::new(s, z), k))
    } else if let Some(k) = period(3, &e) {
        let z = last_fixed_before(3, k, &s);
        Ok((Arc::new(z, e), k))
    } else {
        Err(LamError::NoPeriodicEndpoint(c.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GapKind {
    RegularCriticalGap,
    PeriodicTypeGap,
    Vassal,
    CaterpillarGap,
    AboveDiameter,
    BelowDiameter,
    AttachedFatou,
}

impl GapKind {
    pub fn name(&self) -> &'static str {
        match self {
            GapKind::RegularCriticalGap => "RegularCriticalGap",
            GapKind::PeriodicTypeGap => "PeriodicTypeGap",
            GapKind::Vassal => "Vassal",
            GapKind::CaterpillarGap => "CaterpillarGap",
            GapKind::AboveDiameter => "AboveDiameter",
            GapKind::BelowDiameter => "BelowDiameter",
            GapKind::AttachedFatou => "AttachedFatou",
        }
    }

    fn from_name(s: &str) -> Option<GapKind> {
        let all = [
            GapKind::RegularCriticalGap,
            GapKind::PeriodicTypeGap,
            GapKind::Vassal,
            GapKind::CaterpillarGap,
            GapKind::AboveDiameter,
            GapKind::BelowDiameter,
            GapKind::AttachedFatou,
        ];
        all.into_iter().find(|k| k.name() == s)
    }

    /// Kinds that are invariant quadratic gaps.
    pub fn is_invariant_quadratic(&self) -> bool {
        matches!(
            self,
            GapKind::RegularCriticalGap | GapKind::PeriodicTypeGap | GapKind::AboveDiameter | GapKind::BelowDiameter
        )
    }
}

/// Symbolic description of an infinite gap.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GapGen {
    pub kind: GapKind,
    pub d: u32,
    /// Defining chords. For a caterpillar: `[head, critical leaf]`.
    pub chords: Vec<Chord>,
    /// Cycle of outer arcs; empty for a caterpillar.
    pub arcs: Vec<Arc>,
    pub depth: usize,
}

fn sort_arcs(mut v: Vec<Arc>) -> Vec<Arc> {
    v.sort();
    v.dedup();
    v
}

impl GapGen {
    pub fn markov(kind: GapKind, d: u32, chords: Vec<Chord>, arcs: Vec<Arc>, depth: usize) -> Self {
        GapGen { kind, d, chords, arcs, depth }
    }

    pub fn is_markov(&self) -> bool {
        !self.arcs.is_empty()
    }

    /// Return time of the gap to itself.
    pub fn period(&self) -> usize {
        if self.is_markov() {
            self.arcs.len()
        } else {
            period(self.d, &self.chords[0].a).or_else(|| period(self.d, &self.chords[0].b)).unwrap_or(1)
        }
    }

    pub fn with_depth(&self, depth: usize) -> GapGen {
        GapGen { depth, ..self.clone() }
    }

    pub fn outer(&self, j: usize) -> &Arc {
        &self.arcs[j % self.arcs.len()]
    }

    /// Closed complement of the `j`-th outer arc.
    pub fn inner(&self, j: usize) -> Arc {
        self.outer(j).reverse()
    }

    /// The gap `sigma^j` of this one, as its own generator.
    pub fn member(&self, j: usize) -> GapGen {
        let p = self.arcs.len();
        if p == 0 {
            return self.clone();
        }
        let arcs = (0..p).map(|i| self.arcs[(i + j) % p].clone()).collect();
        let chords = if self.chords.len() == p {
            (0..p).map(|i| self.chords[(i + j) % p].clone()).collect()
        } else {
            self.chords.iter().map(|c| Chord::new(sigma_n(self.d, j, &c.a), sigma_n(self.d, j, &c.b))).collect()
        };
        GapGen { kind: self.kind, d: self.d, chords, arcs, depth: self.depth }
    }

    /// The edge bounding the main outer arc: `Chord(O_0.end, O_0.start)`.
    pub fn major(&self) -> Chord {
        if self.is_markov() {
            let o = &self.arcs[0];
            Chord::new(o.end.clone(), o.start.clone())
        } else {
            self.chords[0].clone()
        }
    }

    pub fn in_basis(&self, x: &Angle) -> bool {
        if !self.is_markov() {
            return self.caterpillar_contains(x);
        }
        let p = self.arcs.len();
        let mut seen: HashSet<(Angle, usize)> = HashSet::new();
        let mut y = x.clone();
        let mut j = 0;
        loop {
            if !self.inner(j).contains_closed(&y) {
                return false;
            }
            if !seen.insert((y.clone(), j)) {
                return true;
            }
            y = sigma(self.d, &y);
            j = (j + 1) % p;
        }
    }

    /// Holes of every member, level by level. Entry `[n][j]` holds the
    /// holes of member `j` at pullback level `n`.
    fn hole_levels(&self, depth: usize) -> Vec<Vec<Vec<Arc>>> {
        let p = self.arcs.len();
        let d = BigRational::from_integer(BigInt::from(self.d));
        let mut levels: Vec<Vec<Vec<Arc>>> = vec![(0..p).map(|j| vec![self.arcs[j].clone()]).collect()];
        for _ in 0..depth {
            let prev = levels.last().unwrap();
            let mut next = Vec::with_capacity(p);
            for j in 0..p {
                let inner = self.inner(j);
                let mut out = Vec::new();
                for h in &prev[(j + 1) % p] {
                    let len = h.length() / &d;
                    for q in preimages(self.d, &h.start) {
                        let end = q.shift(&len);
                        let a = Arc::new(q, end);
                        if inner.contains_arc(&a) {
                            out.push(a);
                        }
                    }
                }
                next.push(out);
            }
            levels.push(next);
        }
        levels
    }

    /// Holes of this gap obtained within `depth` pullbacks, in circular
    /// order of their starting points.
    pub fn holes(&self, depth: usize) -> Vec<Arc> {
        if !self.is_markov() {
            return self.caterpillar_holes(depth);
        }
        let levels = self.hole_levels(depth);
        sort_arcs(levels.into_iter().flat_map(|mut l| l.swap_remove(0)).collect())
    }

    /// Boundary edges found within `depth`, one per hole.
    pub fn edges(&self, depth: usize) -> Vec<Chord> {
        self.holes(depth).into_iter().map(|h| Chord::new(h.start, h.end)).collect()
    }

    /// Hole endpoints within `depth`, plus basis points fixed by
    /// `sigma^n` for `n <= depth`.
    pub fn vertices(&self, depth: usize) -> Vec<Angle> {
        let mut out: BTreeSet<Angle> = BTreeSet::new();
        for h in self.holes(depth) {
            out.insert(h.start);
            out.insert(h.end);
        }
        if self.is_markov() {
            for n in 1..=depth {
                for x in fixed_points(self.d, n) {
                    if !out.contains(&x) && self.in_basis(&x) {
                        out.insert(x);
                    }
                }
            }
        }
        out.into_iter().collect()
    }

    /// Whether `a` is a hole of member `j`.
    pub fn is_hole_of(&self, j: usize, a: &Arc) -> bool {
        let p = self.arcs.len();
        let mut a = a.clone();
        let mut j = j % p;
        let one = BigRational::one();
        let d = BigRational::from_integer(BigInt::from(self.d));
        loop {
            if a == self.arcs[j] {
                return true;
            }
            if a.is_degenerate() || !self.inner(j).contains_arc(&a) || a.length() * &d >= one {
                return false;
            }
            a = a.image(self.d);
            j = (j + 1) % p;
        }
    }

    pub fn is_hole(&self, a: &Arc) -> bool {
        if !self.is_markov() {
            return self.caterpillar_holes(self.depth).contains(a);
        }
        self.is_hole_of(0, a)
    }

    /// The hole of member 0 that contains `x`, or `None` when `x` is in
    /// the basis.
    pub fn hole_containing(&self, x: &Angle) -> Option<Arc> {
        if !self.is_markov() {
            return self.caterpillar_holes(self.depth).into_iter().find(|h| h.contains(x));
        }
        let p = self.arcs.len();
        let mut path = vec![x.clone()];
        let mut seen: HashSet<(Angle, usize)> = HashSet::new();
        let mut j = 0;
        loop {
            let y = path.last().unwrap().clone();
            if self.outer(j).contains(&y) {
                break;
            }
            if !seen.insert((y.clone(), j)) {
                return None;
            }
            path.push(sigma(self.d, &y));
            j = (j + 1) % p;
        }
        let n = path.len() - 1;
        let d = BigRational::from_integer(BigInt::from(self.d));
        let mut hole = self.outer(n).clone();
        for t in (0..n).rev() {
            let len = hole.length() / &d;
            let q = preimages(self.d, &hole.start)
                .into_iter()
                .find(|q| arc_length(q, &path[t]) < len)
                .expect("pullback branch");
            let end = q.shift(&len);
            hole = Arc::new(q, end);
        }
        Some(hole)
    }

    /// Whether `l` stays out of the interior of the gap: it is an edge or
    /// lies in the closure of a single hole.
    pub fn admits(&self, l: &Chord) -> bool {
        if l.is_degenerate() {
            return true;
        }
        for (u, v) in [(&l.a, &l.b), (&l.b, &l.a)] {
            if let Some(h) = self.hole_containing(u) {
                return h.contains_closed(v);
            }
            let _ = v;
        }
        self.is_hole(&l.arc_ab()) || self.is_hole(&l.arc_ba())
    }

    /// Whether `l` is an edge of the gap; returns its hole.
    pub fn edge_hole(&self, l: &Chord) -> Option<Arc> {
        [l.arc_ab(), l.arc_ba()].into_iter().find(|h| self.is_hole(h))
    }

    /// Points of the return map's fibre over `y` that lie in the basis.
    fn return_preimages(&self, y: &Angle) -> Vec<Angle> {
        let p = self.arcs.len();
        let mut cur = vec![y.clone()];
        for j in (0..p).rev() {
            let inner = self.inner(j);
            let mut next = Vec::new();
            for z in &cur {
                for q in preimages(self.d, z) {
                    if inner.contains_closed(&q) {
                        next.push(q);
                    }
                }
            }
            cur = next;
        }
        cur.sort();
        cur.dedup();
        cur
    }

    fn return_fixed(&self, x: &Angle) -> bool {
        sigma_n(self.d, self.arcs.len(), x) == *x
    }

    /// The point sent to 0 by `psi`, and the first other point of its fibre.
    fn psi_base(&self) -> Result<(Angle, Angle)> {
        if !self.is_markov() {
            return Err(LamError::Unsupported("psi of a caterpillar gap".into()));
        }
        let o = &self.arcs[0];
        let mut cands = vec![o.end.clone(), o.start.clone()];
        cands.extend(fixed_points(self.d, self.arcs.len()));
        let f =
            cands.into_iter().find(|x| self.return_fixed(x) && self.in_basis(x)).ok_or(LamError::NotQuadratic(0))?;
        let fibre = self.return_preimages(&f);
        let deg = self.collapsed_count(&fibre);
        if deg != 2 {
            return Err(LamError::NotQuadratic(deg));
        }
        let f2 = fibre
            .iter()
            .filter(|q| **q != f)
            .min_by(|x, y| arc_length(&f, x).cmp(&arc_length(&f, y)))
            .cloned()
            .ok_or(LamError::NotQuadratic(1))?;
        Ok((f, f2))
    }

    /// Size of a fibre once endpoints of a common hole are identified.
    fn collapsed_count(&self, fibre: &[Angle]) -> usize {
        let mut n = fibre.len();
        for i in 0..fibre.len() {
            for k in 0..fibre.len() {
                if i != k && self.is_hole(&Arc::new(fibre[i].clone(), fibre[k].clone())) {
                    n -= 1;
                }
            }
        }
        n
    }

    /// Degree of the return map on the basis.
    pub fn degree(&self) -> Result<usize> {
        if !self.is_markov() {
            return Ok(1);
        }
        let x = self.vertices(1).into_iter().next().ok_or(LamError::NotQuadratic(0))?;
        let y = sigma_n(self.d, self.arcs.len(), &x);
        Ok(self.collapsed_count(&self.return_preimages(&y)))
    }
}

/// Value of an eventually periodic binary expansion.
fn binary_value(digits: &[u8], cycle_start: usize) -> BigRational {
    let two = BigInt::from(2);
    let mut pre = BigInt::zero();
    for &b in &digits[..cycle_start] {
        pre = pre * &two + BigInt::from(b);
    }
    let mut cyc = BigInt::zero();
    for &b in &digits[cycle_start..] {
        cyc = cyc * &two + BigInt::from(b);
    }
    let clen = (digits.len() - cycle_start) as u32;
    let tail = BigRational::new(cyc, two.pow(clen) - BigInt::one());
    (BigRational::from_integer(pre) + tail) / BigRational::from_integer(two.pow(cycle_start as u32))
}

/// The monotone collapse of a quadratic gap's basis onto the circle,
/// semiconjugating the return map to doubling.
///
/// A return-fixed point `f` of the basis goes to 0 and the nearest other
/// point of its fibre goes to 1/2. The binary digits of `psi(x)` record
/// which of the two arcs `[f, f')`, `[f', f)` the successive returns of
/// `x` visit.
pub fn psi(g: &GapGen, x: &Angle) -> Result<Angle> {
    let (f, f2) = g.psi_base()?;
    psi_with_base(g, &f, &f2, x)
}

fn psi_with_base(g: &GapGen, f: &Angle, f2: &Angle, x: &Angle) -> Result<Angle> {
    if !g.in_basis(x) {
        return Err(LamError::NotInBasis(x.to_string()));
    }
    let p = g.arcs.len();
    let cut = arc_length(f, f2);
    let mut seen: HashMap<Angle, usize> = HashMap::new();
    let mut digits = Vec::new();
    let mut y = x.clone();
    loop {
        if let Some(&i) = seen.get(&y) {
            return Ok(Angle::new(binary_value(&digits, i)));
        }
        seen.insert(y.clone(), digits.len());
        digits.push(if arc_length(f, &y) < cut { 0 } else { 1 });
        y = sigma_n(g.d, p, &y);
    }
}

/// A `psi` evaluator with its base point computed once.
pub struct Psi<'a> {
    gap: &'a GapGen,
    f: Angle,
    f2: Angle,
}

impl<'a> Psi<'a> {
    pub fn new(gap: &'a GapGen) -> Result<Self> {
        let (f, f2) = gap.psi_base()?;
        Ok(Psi { gap, f, f2 })
    }

    pub fn base(&self) -> (&Angle, &Angle) {
        (&self.f, &self.f2)
    }

    pub fn eval(&self, x: &Angle) -> Result<Angle> {
        psi_with_base(self.gap, &self.f, &self.f2, x)
    }
}

/// The invariant gap `U(c)` of a regular critical or periodic type chord.
pub fn build_gap(c: &Chord, depth: usize) -> Result<GapGen> {
    let cls = classify_critical(c)?;
    match cls.tag {
        CriticalTag::Caterpillar => Err(LamError::CaterpillarInput(c.to_string())),
        CriticalTag::RegularCritical => {
            Ok(GapGen::markov(GapKind::RegularCriticalGap, 3, vec![c.clone()], vec![short_arc(3, c)], depth))
        }
        CriticalTag::PeriodicType => {
            let m = cls.major;
            let hole = Arc::new(m.b.clone(), m.a.clone());
            Ok(GapGen::markov(GapKind::PeriodicTypeGap, 3, vec![m], vec![hole], depth))
        }
    }
}

/// Points whose orbits stay in `[0, 1/2]`.
pub fn fg_a(depth: usize) -> GapGen {
    let m = Chord::new(Angle::zero(), Angle::from_ratio(1, 2));
    let o = Arc::new(Angle::from_ratio(1, 2), Angle::zero());
    GapGen::markov(GapKind::AboveDiameter, 3, vec![m], vec![o], depth)
}

/// Points whose orbits stay in `[1/2, 1]`.
pub fn fg_b(depth: usize) -> GapGen {
    let m = Chord::new(Angle::from_ratio(1, 2), Angle::zero());
    let o = Arc::new(Angle::zero(), Angle::from_ratio(1, 2));
    GapGen::markov(GapKind::BelowDiameter, 3, vec![m], vec![o], depth)
}

#[derive(Clone, Debug)]
pub struct VassalGap {
    pub gap: GapGen,
    /// The edge of the vassal with the same image as the major.
    pub m2: Chord,
    /// The two closed arcs `[a, b - 1/3]` and `[a + 1/3, b]`.
    pub pieces: [Arc; 2],
}

/// The vassal of an invariant gap with a periodic major.
pub fn vassal(u: &GapGen, depth: usize) -> Result<VassalGap> {
    let periodic = matches!(u.kind, GapKind::PeriodicTypeGap | GapKind::AboveDiameter | GapKind::BelowDiameter);
    if !periodic || u.arcs.len() != 1 {
        return Err(LamError::NotPeriodicType);
    }
    let h = &u.arcs[0];
    let (a, b) = (h.start.clone(), h.end.clone());
    let k = period(u.d, &a).ok_or(LamError::NotPeriodicType)?;
    let third = ratio(1, 3);
    let a2 = a.shift(&third);
    let b2 = b.shift(&-third);
    let arcs = (0..k).map(|j| Arc::new(sigma_n(u.d, j, &b), sigma_n(u.d, j, &a))).collect();
    let m = Chord::new(a.clone(), b.clone());
    let gap = GapGen::markov(GapKind::Vassal, u.d, vec![m], arcs, depth);
    Ok(VassalGap { gap, m2: Chord::new(b2.clone(), a2.clone()), pieces: [Arc::new(a, b2), Arc::new(a2, b)] })
}

impl GapGen {
    /// Head `y-z`, critical leaf `y-x`, head period `k`.
    fn caterpillar_parts(&self) -> (Angle, Angle, Angle, usize) {
        let head = &self.chords[0];
        let crit = &self.chords[1];
        let y = if crit.has_endpoint(&head.a) { head.a.clone() } else { head.b.clone() };
        let z = if head.a == y { head.b.clone() } else { head.a.clone() };
        let x = if crit.a == y { crit.b.clone() } else { crit.a.clone() };
        let k = period(self.d, &y).unwrap_or(1);
        (y, z, x, k)
    }

    /// Chain points `t_1 = x`, `t_{r+1} = z + (t_r - z) / d^k`.
    pub fn caterpillar_chain(&self, n: usize) -> Vec<Angle> {
        let (_, z, x, k) = self.caterpillar_parts();
        let scale = BigRational::from_integer(BigInt::from(self.d).pow(k as u32));
        let mut off = signed_offset(&z, &x);
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            out.push(z.shift(&off));
            off /= &scale;
        }
        out
    }

    fn caterpillar_holes(&self, depth: usize) -> Vec<Arc> {
        let (y, z, _, _) = self.caterpillar_parts();
        let chain = self.caterpillar_chain(depth + 1);
        let mut out = Vec::new();
        out.push(oriented_hole(&y, &chain[0], &z));
        for w in chain.windows(2) {
            out.push(oriented_hole(&w[0], &w[1], &y));
        }
        out.push(oriented_hole(&z, &y, &chain[0]));
        sort_arcs(out)
    }

    fn caterpillar_contains(&self, x: &Angle) -> bool {
        let (y, z, _, _) = self.caterpillar_parts();
        if *x == y || *x == z {
            return true;
        }
        let chain = self.caterpillar_chain(self.depth + 1);
        chain.contains(x)
    }
}

/// The arc between `u` and `v` that avoids `away`.
fn oriented_hole(u: &Angle, v: &Angle, away: &Angle) -> Arc {
    let a = Arc::new(u.clone(), v.clone());
    if a.contains(away) {
        a.reverse()
    } else {
        a
    }
}

/// The caterpillar gap of a critical chord with a periodic endpoint.
pub fn build_caterpillar(c: &Chord, depth: usize) -> Result<GapGen> {
    if !is_critical(3, c)? {
        return Err(LamError::NotCritical(c.to_string()));
    }
    let (hole, _) = caterpillar_major_hole(c)?;
    let y = if c.has_endpoint(&hole.start) { hole.start.clone() } else { hole.end.clone() };
    let z = if hole.start == y { hole.end.clone() } else { hole.start.clone() };
    Ok(GapGen::markov(GapKind::CaterpillarGap, 3, vec![Chord::new(y, z), c.clone()], Vec::new(), depth))
}

/// The two canonical caterpillar gaps of a gap with periodic major `a-b`,
/// with critical leaves `a-(a+1/3)` and `b-(b-1/3)`.
pub fn canonical_caterpillars(u: &GapGen, depth: usize) -> Result<[GapGen; 2]> {
    if u.arcs.len() != 1 || u.kind == GapKind::RegularCriticalGap {
        return Err(LamError::NotPeriodicType);
    }
    let h = &u.arcs[0];
    let third = ratio(1, 3);
    let c1 = Chord::new(h.start.clone(), h.start.shift(&third));
    let c2 = Chord::new(h.end.clone(), h.end.shift(&-third));
    Ok([build_caterpillar(&c1, depth)?, build_caterpillar(&c2, depth)?])
}

impl fmt::Display for GapGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chords: Vec<String> = self.chords.iter().map(|c| c.to_string()).collect();
        let arcs: Vec<String> = self.arcs.iter().map(|a| format!("{}:{}", a.start, a.end)).collect();
        let arcs = if arcs.is_empty() { "-".to_string() } else { arcs.join(";") };
        write!(
            f,
            "gap kind={} d={} depth={} chords={} arcs={}",
            self.kind.name(),
            self.d,
            self.depth,
            chords.join(";"),
            arcs
        )
    }
}

impl FromStr for GapGen {
    type Err = LamError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || LamError::Parse { what: "gap", token: s.to_string() };
        let mut it = s.split_whitespace();
        if it.next() != Some("gap") {
            return Err(bad());
        }
        let mut fields: HashMap<&str, &str> = HashMap::new();
        for tok in it {
            let (k, v) = tok.split_once('=').ok_or_else(bad)?;
            fields.insert(k, v);
        }
        let get = |k: &str| fields.get(k).copied().ok_or_else(bad);
        let kind = GapKind::from_name(get("kind")?).ok_or_else(bad)?;
        let d: u32 = get("d")?.parse().map_err(|_| bad())?;
        let depth: usize = get("depth")?.parse().map_err(|_| bad())?;
        let chords = get("chords")?
            .split(';')
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<Chord>())
            .collect::<Result<Vec<_>>>()?;
        let arcs_s = get("arcs")?;
        let arcs = if arcs_s == "-" {
            Vec::new()
        } else {
            arcs_s
                .split(';')
                .map(|t| {
                    let (a, b) = t.split_once(':').ok_or_else(bad)?;
                    Ok(Arc::new(a.parse()?, b.parse()?))
                })
                .collect::<Result<Vec<_>>>()?
        };
        if d < 2 || chords.is_empty() {
            return Err(bad());
        }
        Ok(GapGen { kind, d, chords, arcs, depth })
    }
}
