//! Bounded-period census of periodic classes and separation tests.
//!
//! Classes are the connected components of the leaf graph. Only periodic
//! classes up to a period bound are examined.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;

use crate::circle::{sigma, Angle, Arc};
use crate::error::{LamError, Result};
use crate::lamination::Lamination;
use crate::lamsets::{fmt_rational, LamSet};

/// Vertex sets of the connected components of the leaf graph.
pub fn components(l: &Lamination) -> Vec<Vec<Angle>> {
    let mut index: HashMap<&Angle, usize> = HashMap::new();
    let mut points: Vec<&Angle> = Vec::new();
    for c in &l.leaves {
        for x in [&c.a, &c.b] {
            index.entry(x).or_insert_with(|| {
                points.push(x);
                points.len() - 1
            });
        }
    }
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for c in &l.leaves {
        let (i, j) = (index[&c.a], index[&c.b]);
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
        }
    }
    let mut groups: HashMap<usize, Vec<Angle>> = HashMap::new();
    for (i, x) in points.iter().enumerate() {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push((*x).clone());
    }
    let mut out: Vec<Vec<Angle>> = groups
        .into_values()
        .map(|mut v| {
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

fn is_periodic_point(d: u32, x: &Angle) -> bool {
    x.denom().gcd(&BigInt::from(d)) == BigInt::from(1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicClass {
    pub vertices: LamSet,
    pub return_time: usize,
    /// Rotation number of the return map, when it acts as a rotation.
    pub rotation: Option<BigRational>,
}

impl PeriodicClass {
    pub fn is_rotational(&self) -> bool {
        matches!(&self.rotation, Some(r) if *r != BigRational::from_integer(0.into()))
    }
}

/// Periodic classes with return time at most `bound`. The flag is set
/// when some class made of periodic points does not return in time.
pub fn periodic_classes(l: &Lamination, bound: usize) -> (Vec<PeriodicClass>, bool) {
    let mut out = Vec::new();
    let mut inconclusive = false;
    for comp in components(l) {
        if comp.len() < 2 || !comp.iter().all(|x| is_periodic_point(l.d, x)) {
            continue;
        }
        let set: BTreeSet<Angle> = comp.iter().cloned().collect();
        let mut cur = set.clone();
        let mut ret = None;
        for n in 1..=bound {
            cur = cur.iter().map(|x| sigma(l.d, x)).collect();
            if cur == set {
                ret = Some(n);
                break;
            }
        }
        let Some(n) = ret else {
            inconclusive = true;
            continue;
        };
        let m = comp.len();
        let pos: HashMap<&Angle, usize> = comp.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let image = |x: &Angle| {
            let mut y = x.clone();
            for _ in 0..n {
                y = sigma(l.d, &y);
            }
            y
        };
        let s = pos[&image(&comp[0])];
        let uniform = comp.iter().enumerate().all(|(i, x)| pos[&image(x)] == (i + s) % m);
        let rotation = uniform.then(|| BigRational::new(BigInt::from(s), BigInt::from(m)));
        let vertices = LamSet::new(l.d, comp).expect("nonempty class");
        out.push(PeriodicClass { vertices, return_time: n, rotation });
    }
    (out, inconclusive)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreSummary {
    EmptyCore,
    SinglePoint,
    MultipleRotational,
    /// Kept for completeness; no construction here produces it.
    SiegelBoundary,
}

impl fmt::Display for CoreSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CoreSummary::EmptyCore => "EmptyCore",
            CoreSummary::SinglePoint => "SinglePoint",
            CoreSummary::MultipleRotational => "MultipleRotational",
            CoreSummary::SiegelBoundary => "SiegelBoundary",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct CoreReport {
    pub period_bound: usize,
    pub rotational_classes: Vec<(LamSet, BigRational)>,
    pub cut_classes: Vec<Vec<Angle>>,
    pub summary: CoreSummary,
    pub inconclusive: bool,
}

impl CoreReport {
    pub fn to_text(&self) -> String {
        let mut s = format!("summary: {}\n", self.summary);
        s.push_str(&format!("period_bound: {}\n", self.period_bound));
        s.push_str(&format!("inconclusive: {}\n", self.inconclusive));
        s.push_str(&format!("rotational_classes: {}\n", self.rotational_classes.len()));
        for (g, r) in &self.rotational_classes {
            s.push_str(&format!("  {} rho={}\n", g, fmt_rational(r)));
        }
        s.push_str(&format!("cut_classes: {}\n", self.cut_classes.len()));
        for c in &self.cut_classes {
            let v: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            s.push_str(&format!("  {}\n", v.join(",")));
        }
        s
    }
}

pub fn periodic_rotational_classes(l: &Lamination, bound: usize) -> CoreReport {
    let (classes, inconclusive) = periodic_classes(l, bound);
    let rotational_classes: Vec<(LamSet, BigRational)> = classes
        .iter()
        .filter(|c| c.is_rotational())
        .map(|c| (c.vertices.clone(), c.rotation.clone().unwrap()))
        .collect();
    let cut_classes = classes.iter().map(|c| c.vertices.vertices().to_vec()).collect();
    let summary = match rotational_classes.len() {
        0 => CoreSummary::EmptyCore,
        1 => CoreSummary::SinglePoint,
        _ => CoreSummary::MultipleRotational,
    };
    CoreReport { period_bound: bound, rotational_classes, cut_classes, summary, inconclusive }
}

/// Index of the hole of `g` (between consecutive vertices) holding `x`.
fn hole_index(g: &[Angle], x: &Angle) -> Option<usize> {
    let m = g.len();
    (0..m).find(|&i| Arc::new(g[i].clone(), g[(i + 1) % m].clone()).contains(x))
}

fn single_hole(g: &[Angle], pts: &[Angle]) -> Result<Option<usize>> {
    let mut idx = None;
    for x in pts {
        let h = hole_index(g, x).ok_or_else(|| LamError::Overlap(x.to_string()))?;
        match idx {
            None => idx = Some(h),
            Some(i) if i != h => {
                return Err(LamError::Overlap(format!("{x} lies across the class")));
            }
            _ => {}
        }
    }
    Ok(idx)
}

/// Whether the class `g` separates the point sets `a` and `b`: they lie in
/// different components of the disk minus the convex hull of `g`.
pub fn separates(g: &[Angle], a: &[Angle], b: &[Angle]) -> Result<bool> {
    let mut gs: Vec<Angle> = g.to_vec();
    gs.sort();
    gs.dedup();
    for x in a {
        if b.contains(x) {
            return Err(LamError::Overlap(x.to_string()));
        }
    }
    if gs.len() < 2 {
        if let Some(x) = a.iter().chain(b).find(|x| gs.contains(x)) {
            return Err(LamError::Overlap(x.to_string()));
        }
        return Ok(false);
    }
    let ia = single_hole(&gs, a)?;
    let ib = single_hole(&gs, b)?;
    Ok(matches!((ia, ib), (Some(i), Some(j)) if i != j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    #[test]
    fn separation_basics() {
        let g = [a("0"), a("1/2")];
        assert!(separates(&g, &[a("1/4")], &[a("3/4")]).unwrap());
        assert!(!separates(&g, &[a("1/4")], &[a("1/3")]).unwrap());
        assert!(!separates(&[a("1/4")], &[a("0")], &[a("1/2")]).unwrap());
        assert!(separates(&g, &[a("0")], &[a("3/4")]).is_err());
    }

    #[test]
    fn separation_is_symmetric() {
        let g = [a("7/26"), a("11/26"), a("21/26")];
        let x = [a("1/26")];
        let y = [a("1/2")];
        assert_eq!(separates(&g, &x, &y).unwrap(), separates(&g, &y, &x).unwrap());
    }
}
