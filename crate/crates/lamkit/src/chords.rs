//! Chords of the closed disk: images, criticality, linking and siblings.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_rational::BigRational;

use crate::circle::{arc_length, preimages, sigma, Angle, Arc};
use crate::error::{LamError, Result};

/// An unordered pair of angles. The written order is kept for display only.
#[derive(Clone)]
pub struct Chord {
    pub a: Angle,
    pub b: Angle,
}

impl Chord {
    pub fn new(a: Angle, b: Angle) -> Self {
        Chord { a, b }
    }

    pub fn lo(&self) -> &Angle {
        if self.a <= self.b {
            &self.a
        } else {
            &self.b
        }
    }

    pub fn hi(&self) -> &Angle {
        if self.a <= self.b {
            &self.b
        } else {
            &self.a
        }
    }

    /// Same chord written with the smaller endpoint first.
    pub fn normalized(&self) -> Chord {
        Chord::new(self.lo().clone(), self.hi().clone())
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn has_endpoint(&self, x: &Angle) -> bool {
        self.a == *x || self.b == *x
    }

    /// Arc from `a` to `b`.
    pub fn arc_ab(&self) -> Arc {
        Arc::new(self.a.clone(), self.b.clone())
    }

    /// Arc from `b` to `a`.
    pub fn arc_ba(&self) -> Arc {
        Arc::new(self.b.clone(), self.a.clone())
    }

    /// Length of the shorter side.
    pub fn short_length(&self) -> BigRational {
        let l = arc_length(&self.a, &self.b);
        let r = arc_length(&self.b, &self.a);
        if l <= r {
            l
        } else {
            r
        }
    }

    pub fn shift(&self, t: &BigRational) -> Chord {
        Chord::new(self.a.shift(t), self.b.shift(t))
    }
}

impl PartialEq for Chord {
    fn eq(&self, other: &Self) -> bool {
        self.lo() == other.lo() && self.hi() == other.hi()
    }
}

impl Eq for Chord {}

impl Hash for Chord {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.lo().hash(state);
        self.hi().hash(state);
    }
}

impl PartialOrd for Chord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Chord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lo().cmp(other.lo()).then_with(|| self.hi().cmp(other.hi()))
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl fmt::Debug for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chord({}, {})", self.a, self.b)
    }
}

impl FromStr for Chord {
    type Err = LamError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || LamError::Parse { what: "chord", token: s.to_string() };
        let t = s.trim();
        // Split on the first '-' that is not a leading sign.
        let idx = t.char_indices().skip(1).find(|&(_, c)| c == '-').map(|(i, _)| i).ok_or_else(bad)?;
        let a: Angle = t[..idx].parse().map_err(|_| bad())?;
        let b: Angle = t[idx + 1..].parse().map_err(|_| bad())?;
        Ok(Chord::new(a, b))
    }
}

pub fn image(d: u32, l: &Chord) -> Chord {
    Chord::new(sigma(d, &l.a), sigma(d, &l.b))
}

pub fn is_critical(d: u32, l: &Chord) -> Result<bool> {
    if l.is_degenerate() {
        return Err(LamError::DegenerateChord(l.to_string()));
    }
    Ok(sigma(d, &l.a) == sigma(d, &l.b))
}

/// True when the endpoints strictly alternate, so the open segments cross.
pub fn linked(l1: &Chord, l2: &Chord) -> bool {
    if l1.is_degenerate() || l2.is_degenerate() {
        return false;
    }
    if l1.has_endpoint(&l2.a) || l1.has_endpoint(&l2.b) {
        return false;
    }
    let side = l1.arc_ab();
    side.contains(&l2.a) != side.contains(&l2.b)
}

fn pairwise_unlinked(chords: &[Chord]) -> bool {
    for i in 0..chords.len() {
        for j in i + 1..chords.len() {
            if linked(&chords[i], &chords[j]) {
                return false;
            }
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// All pairwise-unlinked perfect matchings between the fibres over the two
/// endpoints of `target`.
pub fn sibling_collections(d: u32, target: &Chord) -> Vec<Vec<Chord>> {
    let pa = preimages(d, &target.a);
    let pb = preimages(d, &target.b);
    let mut out = Vec::new();
    for perm in permutations(d as usize) {
        let chords: Vec<Chord> = (0..d as usize).map(|i| Chord::new(pa[i].clone(), pb[perm[i]].clone())).collect();
        if pairwise_unlinked(&chords) {
            out.push(chords);
        }
    }
    out
}

/// The sibling collection of `l`: `d` pairwise-unlinked chords with the same
/// image, one of which is `l`.
///
/// When the unlinked matchings containing `l` are not unique (this happens
/// for `d = 3` when `l` cuts off an arc with no other fibre point), the
/// collection closed under rotation by `1/d` is returned.
pub fn siblings(d: u32, l: &Chord) -> Result<Vec<Chord>> {
    let target = image(d, l);
    if target.is_degenerate() {
        return Err(LamError::NoSiblings(l.to_string()));
    }
    let mut cands: Vec<Vec<Chord>> = sibling_collections(d, &target).into_iter().filter(|c| c.contains(l)).collect();
    match cands.len() {
        0 => Err(LamError::NoSiblings(l.to_string())),
        1 => Ok(sorted_chords(cands.pop().unwrap())),
        _ => {
            let step = BigRational::new(1.into(), (d as i64).into());
            let rotated: Vec<Chord> =
                (0..d as i64).map(|k| l.shift(&(step.clone() * BigRational::from_integer(k.into())))).collect();
            let mut rotated_sorted = sorted_chords(rotated);
            rotated_sorted.dedup();
            let hit: Vec<Vec<Chord>> = cands.into_iter().map(sorted_chords).filter(|c| *c == rotated_sorted).collect();
            if hit.len() == 1 {
                Ok(hit.into_iter().next().unwrap())
            } else {
                Err(LamError::AmbiguousSiblings(l.to_string()))
            }
        }
    }
}

fn sorted_chords(mut v: Vec<Chord>) -> Vec<Chord> {
    v.sort();
    v
}

/// Check that chords are pairwise unlinked in `O(n log n)`.
///
/// Returns a crossing pair when one exists.
pub fn find_crossing(chords: &[Chord]) -> Option<(Chord, Chord)> {
    let mut iv: Vec<&Chord> = chords.iter().filter(|c| !c.is_degenerate()).collect();
    iv.sort_by(|x, y| x.lo().cmp(y.lo()).then_with(|| y.hi().cmp(x.hi())));
    let mut stack: Vec<&Chord> = Vec::new();
    for c in iv {
        while let Some(top) = stack.last() {
            if top.hi() <= c.lo() {
                stack.pop();
            } else {
                break;
            }
        }
        if let Some(top) = stack.last() {
            if c.hi() > top.hi() {
                return Some(((*top).clone(), c.clone()));
            }
        }
        stack.push(c);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Chord {
        s.parse().unwrap()
    }

    #[test]
    fn images() {
        assert_eq!(image(3, &c("12/13-7/26")), c("10/13-21/26"));
        assert!(image(3, &c("1/12-5/12")).is_degenerate());
        assert_eq!(image(2, &c("1/7-2/7")), c("2/7-4/7"));
    }

    #[test]
    fn criticality() {
        assert!(is_critical(3, &c("1/12-5/12")).unwrap());
        assert!(!is_critical(3, &c("12/13-7/26")).unwrap());
        assert!(is_critical(2, &c("1/4-3/4")).unwrap());
        assert!(is_critical(3, &c("1/5-1/5")).is_err());
    }

    #[test]
    fn linking() {
        assert!(linked(&c("0-1/2"), &c("1/4-3/4")));
        assert!(!linked(&c("0-1/2"), &c("1/2-3/4")));
        // Both 8/26 and 20/26 lie inside (7/26, 21/26): nested, not linked.
        assert!(!linked(&c("7/26-21/26"), &c("4/13-10/13")));
        // Edges taken from the two alternating 3-cycles do cross.
        assert!(linked(&c("7/26-11/26"), &c("4/13-10/13")));
        assert!(!linked(&c("0-1/2"), &c("0-1/2")));
    }

    #[test]
    fn sibling_examples() {
        let s = siblings(2, &c("1/7-2/7")).unwrap();
        assert_eq!(s, vec![c("1/7-2/7"), c("9/14-11/14")]);
        let s = siblings(3, &c("0-1/2")).unwrap();
        assert_eq!(s, vec![c("0-1/2"), c("1/6-1/3"), c("2/3-5/6")]);
        let s = siblings(3, &c("0-1/9")).unwrap();
        assert_eq!(s, vec![c("0-1/9"), c("1/3-4/9"), c("2/3-7/9")]);
    }

    #[test]
    fn crossing_detection() {
        assert!(find_crossing(&[c("0-1/2"), c("1/4-3/4")]).is_some());
        assert!(find_crossing(&[c("0-1/2"), c("1/2-3/4"), c("1/8-1/4"), c("0-1/4")]).is_none());
    }

    #[test]
    fn parse_round_trip() {
        let x = c("12/13-7/26");
        assert_eq!(x.to_string(), "12/13-7/26");
        assert_eq!(x, c("7/26-12/13"));
        assert!("12/13".parse::<Chord>().is_err());
    }
}
