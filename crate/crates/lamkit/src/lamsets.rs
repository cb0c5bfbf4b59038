//! Finite laminational sets: holes, majors, rotation numbers and types.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::chords::Chord;
use crate::circle::{fixed_points, sigma, Angle, Arc};
use crate::error::{LamError, Result};

/// A finite vertex set in increasing order from 0, with the ambient degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LamSet {
    vertices: Vec<Angle>,
    pub d: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeTag {
    A,
    B,
    C,
    D,
    NotRotational,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TypeTag::A => "A",
            TypeTag::B => "B",
            TypeTag::C => "C",
            TypeTag::D => "D",
            TypeTag::NotRotational => "NotRotational",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationalReport {
    pub is_invariant: bool,
    pub is_rotational: bool,
    pub rotation_number: Option<BigRational>,
    pub type_tag: TypeTag,
    pub majors: Vec<Chord>,
    pub orbit_count: usize,
    pub diameter_special: bool,
}

impl RotationalReport {
    /// Line-oriented `key: value` form.
    pub fn to_text(&self) -> String {
        let rho = match &self.rotation_number {
            Some(r) => fmt_rational(r),
            None => "none".to_string(),
        };
        let majors: Vec<String> = self.majors.iter().map(|m| m.to_string()).collect();
        format!(
            "invariant: {}\nrotational: {}\nrotation_number: {}\ntype: {}\nmajors: {}\norbits: {}\ndiameter_special: {}\n",
            self.is_invariant,
            self.is_rotational,
            rho,
            self.type_tag,
            majors.join(","),
            self.orbit_count,
            self.diameter_special
        )
    }
}

pub fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl LamSet {
    pub fn new(d: u32, vertices: Vec<Angle>) -> Result<Self> {
        let set: BTreeSet<Angle> = vertices.into_iter().collect();
        if set.is_empty() {
            return Err(LamError::Unsupported("empty vertex set".into()));
        }
        Ok(LamSet { vertices: set.into_iter().collect(), d })
    }

    pub fn parse(d: u32, s: &str) -> Result<Self> {
        let vs: Result<Vec<Angle>> = s.split(',').map(|t| t.trim().parse()).collect();
        LamSet::new(d, vs?)
    }

    pub fn vertices(&self) -> &[Angle] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, x: &Angle) -> bool {
        self.vertices.binary_search(x).is_ok()
    }

    pub fn index_of(&self, x: &Angle) -> Option<usize> {
        self.vertices.binary_search(x).ok()
    }

    /// Edge `i` joins vertex `i` to vertex `i + 1`; its hole is the arc
    /// between them.
    pub fn holes(&self) -> Vec<(Chord, Arc)> {
        let m = self.vertices.len();
        if m < 2 {
            return Vec::new();
        }
        (0..m)
            .map(|i| {
                let a = self.vertices[i].clone();
                let b = self.vertices[(i + 1) % m].clone();
                (Chord::new(a.clone(), b.clone()), Arc::new(a, b))
            })
            .collect()
    }

    fn threshold(&self) -> BigRational {
        BigRational::new(BigInt::one(), BigInt::from(self.d))
    }

    pub fn major_indices(&self) -> Vec<usize> {
        let t = self.threshold();
        self.holes().iter().enumerate().filter(|(_, (_, h))| h.length() >= t).map(|(i, _)| i).collect()
    }

    /// Edges whose hole has length at least `1/d`, written hole-first.
    pub fn majors(&self) -> Vec<Chord> {
        let holes = self.holes();
        self.major_indices().into_iter().map(|i| holes[i].0.clone()).collect()
    }

    pub fn image(&self) -> BTreeSet<Angle> {
        self.vertices.iter().map(|v| sigma(self.d, v)).collect()
    }

    pub fn is_invariant(&self) -> bool {
        let img = self.image();
        img.len() == self.vertices.len() && img.iter().all(|v| self.contains(v))
    }

    /// Edges whose closed hole holds a fixed point are exactly the majors.
    pub fn fixed_point_major_check(&self) -> Result<bool> {
        if !self.is_invariant() {
            return Err(LamError::NotInvariant);
        }
        let fixed = fixed_points(self.d, 1);
        let with_fixed: Vec<usize> = self
            .holes()
            .iter()
            .enumerate()
            .filter(|(_, (_, h))| fixed.iter().any(|f| h.contains_closed(f)))
            .map(|(i, _)| i)
            .collect();
        Ok(with_fixed == self.major_indices())
    }

    /// Uniform positional shift `s` with `sigma(v_i) = v_{i+s}`, if any.
    pub fn displacement(&self) -> Option<usize> {
        if !self.is_invariant() {
            return None;
        }
        let m = self.vertices.len();
        let first = self.index_of(&sigma(self.d, &self.vertices[0]))?;
        for i in 0..m {
            let j = self.index_of(&sigma(self.d, &self.vertices[i]))?;
            if j != (i + first) % m {
                return None;
            }
        }
        Some(first)
    }

    fn permutation_cycles(&self) -> usize {
        let m = self.vertices.len();
        let mut seen = vec![false; m];
        let mut cycles = 0;
        for i in 0..m {
            if seen[i] {
                continue;
            }
            cycles += 1;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = match self.index_of(&sigma(self.d, &self.vertices[j])) {
                    Some(k) => k,
                    None => break,
                };
            }
        }
        cycles
    }

    pub fn is_diameter(&self) -> bool {
        self.d == 3 && self.vertices == vec![Angle::zero(), Angle::from_ratio(1, 2)]
    }

    pub fn classify_rotational(&self) -> RotationalReport {
        let majors = self.majors();
        if !self.is_invariant() {
            return RotationalReport {
                is_invariant: false,
                is_rotational: false,
                rotation_number: None,
                type_tag: TypeTag::NotRotational,
                majors,
                orbit_count: 0,
                diameter_special: false,
            };
        }
        if self.is_diameter() {
            return RotationalReport {
                is_invariant: true,
                is_rotational: false,
                rotation_number: Some(BigRational::zero()),
                type_tag: TypeTag::D,
                majors,
                orbit_count: 2,
                diameter_special: true,
            };
        }
        let m = self.vertices.len();
        let shift = match self.displacement() {
            Some(s) if s != 0 => s,
            other => {
                return RotationalReport {
                    is_invariant: true,
                    is_rotational: false,
                    rotation_number: other.map(|_| BigRational::zero()),
                    type_tag: TypeTag::NotRotational,
                    majors,
                    orbit_count: self.permutation_cycles(),
                    diameter_special: false,
                }
            }
        };
        let orbits = shift.gcd(&m);
        let rho = BigRational::new(BigInt::from(shift), BigInt::from(m));
        let idx = self.major_indices();
        let tag = match idx.len() {
            1 => TypeTag::A,
            2 if idx[0] % orbits == idx[1] % orbits => TypeTag::B,
            2 => TypeTag::D,
            _ => TypeTag::NotRotational,
        };
        RotationalReport {
            is_invariant: true,
            is_rotational: tag != TypeTag::NotRotational,
            rotation_number: Some(rho),
            type_tag: tag,
            majors,
            orbit_count: orbits,
            diameter_special: false,
        }
    }

    /// Minimal `n` with `sigma^n(V) = V`, and the induced permutation.
    pub fn remap(&self) -> Result<(usize, Vec<usize>)> {
        let mut bound = 1usize;
        for v in &self.vertices {
            let p = crate::circle::period(self.d, v).ok_or(LamError::NotPeriodic)?;
            bound = bound.lcm(&p);
        }
        let mut cur: Vec<Angle> = self.vertices.clone();
        for n in 1..=bound {
            cur = cur.iter().map(|v| sigma(self.d, v)).collect();
            let set: BTreeSet<&Angle> = cur.iter().collect();
            if set.len() == self.len() && set.iter().all(|v| self.contains(v)) {
                let perm = cur.iter().map(|v| self.index_of(v).unwrap()).collect();
                return Ok((n, perm));
            }
        }
        Err(LamError::NotPeriodic)
    }

    pub fn to_text(&self) -> String {
        let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
        vs.join(",")
    }
}

impl fmt::Display for LamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_text())
    }
}

/// Cycles of exact period `q` among angles `j / (d^q - 1)`, each given by its
/// sorted vertex list.
fn cycles_of_period(d: u32, q: usize) -> Vec<Vec<Angle>> {
    let n = BigInt::from(d).pow(q as u32) - BigInt::one();
    let count = n.to_u64().expect("period too large");
    let mut seen: HashMap<Angle, ()> = HashMap::new();
    let mut out = Vec::new();
    for j in 0..count {
        let x = Angle::new(BigRational::new(BigInt::from(j), n.clone()));
        if seen.contains_key(&x) {
            continue;
        }
        let mut orbit = vec![x.clone()];
        let mut y = sigma(d, &x);
        while y != x && orbit.len() <= q {
            orbit.push(y.clone());
            y = sigma(d, &y);
        }
        for o in &orbit {
            seen.insert(o.clone(), ());
        }
        if orbit.len() == q && y == x {
            orbit.sort();
            out.push(orbit);
        }
    }
    out
}

fn alternate(a: &[Angle], b: &[Angle]) -> bool {
    let mut tagged: Vec<(&Angle, bool)> = a.iter().map(|x| (x, true)).chain(b.iter().map(|x| (x, false))).collect();
    tagged.sort();
    let m = tagged.len();
    (0..m).all(|i| tagged[i].1 != tagged[(i + 1) % m].1)
}

/// All invariant rotational sets with rotation number `rho` built from at
/// most `max_orbits` cycles.
pub fn enumerate_rotational(d: u32, rho: &BigRational, max_orbits: usize) -> Result<Vec<LamSet>> {
    let q = rho.denom().to_usize().ok_or_else(|| LamError::Unsupported("denominator".into()))?;
    let p = rho.numer().to_usize().ok_or_else(|| LamError::Unsupported("numerator".into()))?;
    if q < 2 || p == 0 || p >= q {
        return Err(LamError::Unsupported(format!("rotation number {}", fmt_rational(rho))));
    }
    let cycles: Vec<Vec<Angle>> = cycles_of_period(d, q)
        .into_iter()
        .filter(|c| {
            let s = LamSet { vertices: c.clone(), d };
            s.displacement() == Some(p)
        })
        .collect();
    let mut out: BTreeSet<LamSet> = BTreeSet::new();
    for c in &cycles {
        out.insert(LamSet { vertices: c.clone(), d });
    }
    if max_orbits >= 2 {
        for i in 0..cycles.len() {
            for j in i + 1..cycles.len() {
                if alternate(&cycles[i], &cycles[j]) {
                    let mut v = cycles[i].clone();
                    v.extend(cycles[j].iter().cloned());
                    out.insert(LamSet::new(d, v)?);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::ratio;

    fn set(s: &str) -> LamSet {
        LamSet::parse(3, s).unwrap()
    }

    fn c(s: &str) -> Chord {
        s.parse().unwrap()
    }

    #[test]
    fn holes_of_triangle_a() {
        let h = set("1/26,3/26,9/26").holes();
        let lens: Vec<BigRational> = h.iter().map(|(_, a)| a.length()).collect();
        assert_eq!(lens, vec![ratio(2, 26), ratio(6, 26), ratio(18, 26)]);
        assert_eq!(h[2].0, c("9/26-1/26"));
    }

    #[test]
    fn majors_and_types() {
        let g1 = set("7/26,4/13,11/26,10/13,21/26,12/13");
        let mut m = g1.majors();
        m.sort();
        let mut want = vec![c("12/13-7/26"), c("11/26-10/13")];
        want.sort();
        assert_eq!(m, want);
        let r = g1.classify_rotational();
        assert_eq!(r.type_tag, TypeTag::D);
        assert_eq!(r.rotation_number, Some(ratio(2, 3)));
        assert_eq!(r.orbit_count, 2);

        let g2 = set("7/26,11/26,21/26");
        let r = g2.classify_rotational();
        assert_eq!(r.type_tag, TypeTag::B);
        assert_eq!(r.rotation_number, Some(ratio(2, 3)));

        let g3 = set("1/26,3/26,9/26");
        let r = g3.classify_rotational();
        assert_eq!(r.type_tag, TypeTag::A);
        assert_eq!(r.majors, vec![c("9/26-1/26")]);
        assert_eq!(r.rotation_number, Some(ratio(1, 3)));
    }

    #[test]
    fn diameter_is_special() {
        let r = set("0,1/2").classify_rotational();
        assert!(r.diameter_special);
        assert!(!r.is_rotational);
        assert_eq!(r.rotation_number, Some(ratio(0, 1)));
        assert!(set("0,1/2").fixed_point_major_check().unwrap());
    }

    #[test]
    fn remap_examples() {
        let (n, perm) = set("7/26,11/26,21/26").remap().unwrap();
        assert_eq!(n, 1);
        assert_eq!(perm, vec![2, 0, 1]);
        assert_eq!(set("0,1/2").remap().unwrap(), (1, vec![0, 1]));
        assert_eq!(set("5/8,7/8").remap().unwrap(), (1, vec![1, 0]));
        assert!(set("1/12,1/4").remap().is_err());
    }

    #[test]
    fn enumerate_small() {
        let out = enumerate_rotational(2, &ratio(1, 3), 1).unwrap();
        assert_eq!(out, vec![LamSet::parse(2, "1/7,2/7,4/7").unwrap()]);
        let out = enumerate_rotational(3, &ratio(1, 3), 1).unwrap();
        assert!(out.contains(&set("1/26,3/26,9/26")));
        let out = enumerate_rotational(3, &ratio(2, 3), 2).unwrap();
        assert!(out.contains(&set("7/26,4/13,11/26,10/13,21/26,12/13")));
    }
}
