//! Invariant laminations: canonical constructions by pullback, the
//! invariance checker, cleaning, SMP classification and projection.
//!
//! Leaves are stored normalized. Infinite and finite gaps known from the
//! construction are kept in a registry; cleaning and classification read it.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::chords::{find_crossing, image, linked, Chord};
use crate::circle::{arc_length, fixed_points, preimages, sigma, Angle, Arc};
use crate::dyncore::periodic_classes;
use crate::error::{LamError, Result};
use crate::lamsets::{LamSet, TypeTag};
use crate::quadgap::{build_gap, classify_critical, fg_a, fg_b, vassal, CriticalTag, GapGen, GapKind, Psi};

/// A set of pairwise-disjoint critical chords splitting the circle into `d`
/// regions of length `1/d`. Each region is mapped injectively by `sigma`.
#[derive(Clone, Debug)]
pub struct Portrait {
    d: u32,
    chords: Vec<Chord>,
    bounds: Vec<Angle>,
    region_of: Vec<usize>,
}

impl Portrait {
    pub fn new(d: u32, chords: Vec<Chord>) -> Result<Self> {
        let bad = |why: &str| LamError::Unsupported(format!("critical portrait: {why}"));
        if chords.len() + 1 != d as usize {
            return Err(bad("needs d-1 chords"));
        }
        for c in &chords {
            if c.is_degenerate() || sigma(d, &c.a) != sigma(d, &c.b) {
                return Err(bad(&format!("{c} is not critical")));
            }
        }
        if let Some((x, y)) = find_crossing(&chords) {
            return Err(bad(&format!("{x} crosses {y}")));
        }
        let bounds: Vec<Angle> =
            chords.iter().flat_map(|c| [c.a.clone(), c.b.clone()]).collect::<BTreeSet<_>>().into_iter().collect();
        let r = bounds.len();
        let half = BigRational::new(1.into(), 2.into());
        let mut sigs: Vec<Vec<bool>> = Vec::new();
        let mut region_of = Vec::with_capacity(r);
        let mut lengths: Vec<BigRational> = Vec::new();
        for i in 0..r {
            let arc = Arc::new(bounds[i].clone(), bounds[(i + 1) % r].clone());
            let len = arc.length();
            let mid = arc.start.shift(&(&len * &half));
            let sig: Vec<bool> = chords.iter().map(|c| c.arc_ab().contains(&mid)).collect();
            let id = match sigs.iter().position(|s| *s == sig) {
                Some(k) => k,
                None => {
                    sigs.push(sig);
                    lengths.push(BigRational::from_integer(0.into()));
                    sigs.len() - 1
                }
            };
            lengths[id] += len;
            region_of.push(id);
        }
        let want = BigRational::new(BigInt::one(), BigInt::from(d));
        if sigs.len() != d as usize || lengths.iter().any(|l| *l != want) {
            return Err(bad("regions do not have length 1/d"));
        }
        Ok(Portrait { d, chords, bounds, region_of })
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    fn region(&self, x: &Angle) -> Result<usize> {
        match self.bounds.binary_search(x) {
            Ok(_) => Err(LamError::AmbiguousPullback(format!("{x} lies on the portrait"))),
            Err(i) => {
                let r = self.bounds.len();
                Ok(self.region_of[(i + r - 1) % r])
            }
        }
    }

    fn lift(&self, x: &Angle) -> Result<Vec<Angle>> {
        let mut out: Vec<Option<Angle>> = vec![None; self.d as usize];
        for q in preimages(self.d, x) {
            let r = self.region(&q)?;
            if out[r].is_some() {
                return Err(LamError::AmbiguousPullback(format!("two preimages of {x} in a region")));
            }
            out[r] = Some(q);
        }
        Ok(out.into_iter().map(|q| q.expect("one preimage per region")).collect())
    }

    /// The `d` pullbacks of `l`, one per region.
    pub fn pullbacks(&self, l: &Chord) -> Result<Vec<Chord>> {
        let pa = self.lift(&l.a)?;
        let pb = self.lift(&l.b)?;
        Ok(pa.into_iter().zip(pb).map(|(a, b)| Chord::new(a, b).normalized()).collect())
    }
}

/// Seeds together with all their pullbacks of level at most `depth`.
pub fn pull_back(seeds: &[Chord], portrait: &Portrait, depth: usize) -> Result<BTreeSet<Chord>> {
    let mut leaves: BTreeSet<Chord> = seeds.iter().map(|c| c.normalized()).collect();
    let mut frontier: Vec<Chord> = leaves.iter().cloned().collect();
    for _ in 0..depth {
        let mut next = Vec::new();
        for l in &frontier {
            for p in portrait.pullbacks(l)? {
                if leaves.insert(p.clone()) {
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(leaves)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lamination {
    pub d: u32,
    pub depth: usize,
    pub recipe: String,
    pub leaves: BTreeSet<Chord>,
    /// Registered infinite gaps, one generator per gap.
    pub gaps: Vec<GapGen>,
    /// Registered finite gaps.
    pub finite_gaps: Vec<LamSet>,
}

impl Lamination {
    pub fn new(d: u32, depth: usize, recipe: &str) -> Self {
        Lamination {
            d,
            depth,
            recipe: recipe.to_string(),
            leaves: BTreeSet::new(),
            gaps: Vec::new(),
            finite_gaps: Vec::new(),
        }
    }

    pub fn from_leaves<I: IntoIterator<Item = Chord>>(d: u32, depth: usize, recipe: &str, leaves: I) -> Self {
        let mut l = Lamination::new(d, depth, recipe);
        l.leaves = leaves.into_iter().map(|c| c.normalized()).collect();
        l
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    pub fn contains(&self, c: &Chord) -> bool {
        self.leaves.contains(c)
    }

    pub fn has_registry(&self) -> bool {
        !self.gaps.is_empty() || !self.finite_gaps.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("d={} depth={} recipe={}\n", self.d, self.depth, self.recipe);
        for g in &self.gaps {
            s.push_str(&format!("{g}\n"));
        }
        for f in &self.finite_gaps {
            s.push_str(&format!("finite {}\n", f.to_text()));
        }
        for l in &self.leaves {
            s.push_str(&format!("leaf {l}\n"));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or(LamError::Parse { what: "lamination header", token: String::new() })?;
        let bad = |what: &'static str, t: &str| LamError::Parse { what, token: t.to_string() };
        let mut d = None;
        let mut depth = None;
        let mut recipe = None;
        for tok in header.split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| bad("header field", tok))?;
            match k {
                "d" => d = Some(v.parse::<u32>().map_err(|_| bad("degree", v))?),
                "depth" => depth = Some(v.parse::<usize>().map_err(|_| bad("depth", v))?),
                "recipe" => recipe = Some(v.to_string()),
                _ => return Err(bad("header field", tok)),
            }
        }
        let d = d.ok_or_else(|| bad("header", header))?;
        if d != 2 && d != 3 {
            return Err(bad("degree", &d.to_string()));
        }
        let mut lam =
            Lamination::new(d, depth.ok_or_else(|| bad("header", header))?, &recipe.unwrap_or_else(|| "custom".into()));
        for line in lines {
            if line.starts_with("gap ") {
                lam.gaps.push(line.parse()?);
            } else if let Some(rest) = line.strip_prefix("finite ") {
                lam.finite_gaps.push(LamSet::parse(d, rest)?);
            } else if let Some(rest) = line.strip_prefix("leaf ") {
                let c: Chord = rest.trim().parse()?;
                lam.leaves.insert(c.normalized());
            } else {
                return Err(bad("lamination line", line));
            }
        }
        Ok(lam)
    }
}

/// Union of the forward orbits of the given points.
fn forward_orbits<'a, I: IntoIterator<Item = &'a Angle>>(d: u32, pts: I) -> HashSet<Angle> {
    let mut out = HashSet::new();
    for x in pts {
        let mut y = x.clone();
        while out.insert(y.clone()) {
            y = sigma(d, &y);
        }
    }
    out
}

/// Critical chords inside the critical gap `g`, joining the `need` points of
/// a fibre in the closure of its main complementary arc. The fibre lies over
/// a periodic basis point whose orbit avoids `avoid`.
fn critical_chords_in(g: &GapGen, avoid: &HashSet<Angle>, need: usize) -> Result<Vec<Chord>> {
    let inner = g.inner(0);
    for n in 1..=12 {
        for x in fixed_points(g.d, n) {
            if avoid.contains(&x) || !g.in_basis(&x) {
                continue;
            }
            let y = sigma(g.d, &x);
            let mut fib: Vec<Angle> = preimages(g.d, &y).into_iter().filter(|q| inner.contains_closed(q)).collect();
            if fib.len() != need {
                continue;
            }
            fib.sort();
            return Ok(fib.windows(2).map(|w| Chord::new(w[0].clone(), w[1].clone())).collect());
        }
    }
    Err(LamError::Unsupported(format!("no critical chord found in {g}")))
}

/// Canonical lamination of an invariant quadratic gap: the major cycle (or
/// the critical edge) pulled back avoiding the gap and, for periodic type,
/// its vassal.
pub fn canonical_of_quadratic_gap(u: &GapGen, depth: usize) -> Result<Lamination> {
    let d = u.d;
    let recipe = format!("quadratic-gap:{}", u.chords[0]);
    match u.kind {
        GapKind::RegularCriticalGap => {
            let c = u.chords[0].clone();
            let avoid = forward_orbits(d, [&c.a, &c.b]);
            let mut pc = vec![c.clone()];
            pc.extend(critical_chords_in(u, &avoid, 2)?);
            let portrait = Portrait::new(d, pc)?;
            let mut lam = Lamination::new(d, depth, &recipe);
            lam.leaves = pull_back(&[c], &portrait, depth)?;
            lam.gaps.push(u.with_depth(depth));
            Ok(lam)
        }
        GapKind::PeriodicTypeGap | GapKind::AboveDiameter | GapKind::BelowDiameter => {
            let v = vassal(u, depth)?;
            let m = u.major();
            let k = v.gap.period();
            let seeds: Vec<Chord> = (0..k)
                .map(|j| Chord::new(crate::circle::sigma_n(d, j, &m.a), crate::circle::sigma_n(d, j, &m.b)))
                .collect();
            let avoid = forward_orbits(d, [&m.a, &m.b]);
            let mut pc = critical_chords_in(u, &avoid, 2)?;
            pc.extend(critical_chords_in(&v.gap, &avoid, 2)?);
            let portrait = Portrait::new(d, pc)?;
            let mut lam = Lamination::new(d, depth, &recipe);
            lam.leaves = pull_back(&seeds, &portrait, depth)?;
            lam.gaps.push(u.with_depth(depth));
            lam.gaps.extend((0..k).map(|j| v.gap.member(j)));
            Ok(lam)
        }
        _ => Err(LamError::Unsupported(format!("no canonical lamination for a {} gap", u.kind.name()))),
    }
}

/// The lamination generated by the diameter `0-1/2`, with gaps above and
/// below it.
pub fn canonical_diameter(depth: usize) -> Result<Lamination> {
    let mut lam = canonical_of_quadratic_gap(&fg_a(depth), depth)?;
    lam.recipe = "diameter".into();
    lam.gaps = vec![fg_a(depth), fg_b(depth)];
    Ok(lam)
}

/// The Fatou gaps attached to the edges of a rotational set, one generator
/// per gap, each paired with its local degree.
pub fn attached_gaps(g: &LamSet, depth: usize) -> Result<Vec<(GapGen, usize)>> {
    let s = g.displacement().filter(|s| *s != 0).ok_or_else(|| LamError::NotRotational(g.to_string()))?;
    let m = g.len();
    let holes = g.holes();
    let dq = BigRational::from_integer(BigInt::from(g.d));
    let mut seen = vec![false; m];
    let mut out = Vec::new();
    for i0 in 0..m {
        if seen[i0] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut i = i0;
        while !seen[i] {
            seen[i] = true;
            cycle.push(i);
            i = (i + s) % m;
        }
        let arcs = cycle.iter().map(|&e| holes[e].1.reverse()).collect();
        let chords = cycle.iter().map(|&e| holes[e].0.clone()).collect();
        let gen = GapGen::markov(GapKind::AttachedFatou, g.d, chords, arcs, depth);
        for (t, &e) in cycle.iter().enumerate() {
            let deg = (holes[e].1.length() * &dq).floor().to_integer().to_usize().unwrap_or(0) + 1;
            out.push((gen.member(t), deg));
        }
    }
    Ok(out)
}

/// Canonical lamination of a rotational set: its edges pulled back while
/// avoiding the critical attached Fatou gaps. Works for `d = 2` as well.
pub fn canonical_of_rotational(g: &LamSet, depth: usize) -> Result<Lamination> {
    let rep = g.classify_rotational();
    if rep.diameter_special {
        return canonical_diameter(depth);
    }
    if !rep.is_rotational {
        return Err(LamError::NotRotational(g.to_string()));
    }
    let d = g.d;
    let attached = attached_gaps(g, depth)?;
    let avoid = forward_orbits(d, g.vertices());
    let mut pc = Vec::new();
    for (gap, deg) in &attached {
        if *deg >= 2 {
            pc.extend(critical_chords_in(gap, &avoid, *deg)?);
        }
    }
    let portrait = Portrait::new(d, pc)?;
    let seeds: Vec<Chord> = g.holes().into_iter().map(|(c, _)| c).collect();
    let tag = if d == 2 { "quadratic-d2" } else { "rotational" };
    let mut lam = Lamination::new(d, depth, &format!("{tag}:{}", g.to_text()));
    lam.leaves = pull_back(&seeds, &portrait, depth)?;
    lam.gaps = attached.into_iter().map(|(gap, _)| gap).collect();
    if g.len() >= 3 {
        lam.finite_gaps.push(g.clone());
    }
    Ok(lam)
}

/// Canonical lamination of a `sigma_2` rotational set.
pub fn quadratic_canonical(g: &LamSet, depth: usize) -> Result<Lamination> {
    if g.d != 2 {
        return Err(LamError::Unsupported("quadratic_canonical needs d = 2".into()));
    }
    canonical_of_rotational(g, depth)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Crossing(Chord, Chord),
    MissingImage(Chord),
    MissingPreimage(Chord),
    Siblings(Chord),
    GapHole { gap: Vec<Angle>, edge: Chord },
    GapImage { gap: Vec<Angle> },
    EntersGap { leaf: Chord, gap: String },
}

fn join(v: &[Angle]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Crossing(a, b) => write!(f, "crossing {a} {b}"),
            Violation::MissingImage(c) => write!(f, "missing-image {c}"),
            Violation::MissingPreimage(c) => write!(f, "missing-preimage {c}"),
            Violation::Siblings(c) => write!(f, "siblings {c}"),
            Violation::GapHole { gap, edge } => write!(f, "gap-hole {} edge {edge}", join(gap)),
            Violation::GapImage { gap } => write!(f, "gap-image {}", join(gap)),
            Violation::EntersGap { leaf, gap } => write!(f, "enters-gap {leaf} {gap}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct InvarianceReport {
    pub leaves: usize,
    pub finite_gaps: usize,
    pub violations: Vec<Violation>,
}

impl InvarianceReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "leaves: {}\nfinite_gaps: {}\nviolations: {}\n",
            self.leaves,
            self.finite_gaps,
            self.violations.len()
        );
        for v in &self.violations {
            s.push_str(&format!("  {v}\n"));
        }
        s
    }
}

/// Pullback level of each leaf: steps until it reaches a periodic leaf, a
/// critical leaf or a leaf whose image is missing.
fn levels(d: u32, leaves: &BTreeSet<Chord>) -> HashMap<&Chord, usize> {
    let mut level: HashMap<&Chord, usize> = HashMap::new();
    for start in leaves {
        if level.contains_key(start) {
            continue;
        }
        let mut path: Vec<&Chord> = Vec::new();
        let mut pos: HashMap<&Chord, usize> = HashMap::new();
        let mut cur = start;
        let base;
        loop {
            if let Some(&lv) = level.get(cur) {
                base = lv + 1;
                break;
            }
            if let Some(&i) = pos.get(cur) {
                for c in &path[i..] {
                    level.insert(c, 0);
                }
                path.truncate(i);
                base = 1;
                break;
            }
            pos.insert(cur, path.len());
            path.push(cur);
            let img = image(d, cur);
            match (!img.is_degenerate()).then(|| leaves.get(&img)).flatten() {
                Some(n) => cur = n,
                None => {
                    level.insert(cur, 0);
                    path.pop();
                    base = 1;
                    break;
                }
            }
        }
        for (k, c) in path.iter().rev().enumerate() {
            level.insert(c, base + k);
        }
    }
    level
}

fn disjoint(a: &Chord, b: &Chord) -> bool {
    !a.has_endpoint(&b.a) && !a.has_endpoint(&b.b)
}

/// Whether `group` holds `d - 1` pairwise-disjoint chords disjoint from `l`.
fn has_siblings(d: u32, l: &Chord, group: &[&Chord]) -> bool {
    let others: Vec<&Chord> = group.iter().copied().filter(|c| *c != l && disjoint(c, l)).collect();
    match d {
        2 => !others.is_empty(),
        _ => others.iter().enumerate().any(|(i, x)| others[i + 1..].iter().any(|y| disjoint(x, y))),
    }
}

/// Finite gaps bounded by leaves, found by walking around faces.
pub fn finite_faces(l: &Lamination) -> Vec<Vec<Angle>> {
    let mut adj: HashMap<&Angle, Vec<&Angle>> = HashMap::new();
    for c in &l.leaves {
        adj.entry(&c.a).or_default().push(&c.b);
        adj.entry(&c.b).or_default().push(&c.a);
    }
    let next = |prev: &Angle, cur: &Angle| -> Option<&Angle> {
        let arc = Arc::new(cur.clone(), prev.clone());
        adj.get(cur)?
            .iter()
            .copied()
            .filter(|w| arc.contains(w))
            .max_by(|x, y| arc_length(cur, x).cmp(&arc_length(cur, y)))
    };
    let mut visited: HashSet<(&Angle, &Angle)> = HashSet::new();
    let mut faces: BTreeSet<Vec<Angle>> = BTreeSet::new();
    for (v, ns) in &adj {
        if ns.len() < 2 {
            continue;
        }
        for u in ns {
            if visited.contains(&(*u, *v)) {
                continue;
            }
            let mut verts = Vec::new();
            let (mut p, mut c): (&Angle, &Angle) = (u, v);
            let mut closed = false;
            for _ in 0..256 {
                visited.insert((p, c));
                verts.push(c.clone());
                let Some(w) = next(p, c) else { break };
                if c == *u && w == *v {
                    closed = true;
                    break;
                }
                p = c;
                c = w;
            }
            if closed && verts.len() >= 3 {
                verts.sort();
                faces.insert(verts);
            }
        }
    }
    faces.into_iter().collect()
}

/// Check invariance of a truncated lamination. Leaves of level `depth` are
/// not required to have preimages.
pub fn check_invariance(l: &Lamination) -> InvarianceReport {
    let d = l.d;
    let mut violations = Vec::new();
    let all: Vec<Chord> = l.leaves.iter().cloned().collect();
    if let Some((a, b)) = find_crossing(&all) {
        violations.push(Violation::Crossing(a, b));
    }
    let lv = levels(d, &l.leaves);
    let mut by_image: HashMap<Chord, Vec<&Chord>> = HashMap::new();
    for c in &l.leaves {
        let img = image(d, c);
        if img.is_degenerate() {
            continue;
        }
        if !l.leaves.contains(&img) {
            violations.push(Violation::MissingImage(c.clone()));
        }
        by_image.entry(img.normalized()).or_default().push(c);
    }
    for c in &l.leaves {
        if lv[c] < l.depth && !by_image.contains_key(c) {
            violations.push(Violation::MissingPreimage(c.clone()));
        }
        let img = image(d, c);
        if img.is_degenerate() {
            continue;
        }
        if let Some(i) = l.leaves.get(&img) {
            if lv[i] < l.depth && !has_siblings(d, c, &by_image[&img.normalized()]) {
                violations.push(Violation::Siblings(c.clone()));
            }
        }
    }
    let faces = finite_faces(l);
    for f in &faces {
        let imgs: BTreeSet<Angle> = f.iter().map(|x| sigma(d, x)).collect();
        if imgs.len() == 1 {
            continue;
        }
        let m = f.len();
        for i in 0..m {
            let (a, b) = (&f[i], &f[(i + 1) % m]);
            let (sa, sb) = (sigma(d, a), sigma(d, b));
            if sa == sb {
                continue;
            }
            let arc = Arc::new(sa, sb);
            if imgs.iter().any(|x| arc.contains(x)) {
                violations.push(Violation::GapHole { gap: f.clone(), edge: Chord::new(a.clone(), b.clone()) });
            }
        }
        let iv: Vec<Angle> = imgs.into_iter().collect();
        let k = iv.len();
        let edges_ok = if k == 2 {
            l.leaves.contains(&Chord::new(iv[0].clone(), iv[1].clone()))
        } else {
            (0..k).all(|i| l.leaves.contains(&Chord::new(iv[i].clone(), iv[(i + 1) % k].clone())))
        };
        if !edges_ok {
            violations.push(Violation::GapImage { gap: f.clone() });
        }
    }
    for c in &l.leaves {
        for g in &l.gaps {
            if !g.admits(c) {
                violations.push(Violation::EntersGap { leaf: c.clone(), gap: g.to_string() });
            }
        }
        for f in &l.finite_gaps {
            if f.contains(&c.a) && f.contains(&c.b) {
                let (i, j) = (f.index_of(&c.a).unwrap(), f.index_of(&c.b).unwrap());
                let m = f.len();
                if (i + 1) % m != j && (j + 1) % m != i {
                    violations.push(Violation::EntersGap { leaf: c.clone(), gap: f.to_string() });
                }
            }
        }
    }
    InvarianceReport { leaves: l.len(), finite_gaps: faces.len(), violations }
}

/// Decides, from the registry, which leaf sides border gaps.
pub struct Isolation<'a> {
    lam: &'a Lamination,
    memo: HashMap<(Angle, Angle), bool>,
}

impl<'a> Isolation<'a> {
    pub fn new(lam: &'a Lamination) -> Self {
        Isolation { lam, memo: HashMap::new() }
    }

    /// Whether `p-q` is an edge of a registered gap lying on the side of
    /// the arc `(p, q)`.
    fn registered_side(&self, p: &Angle, q: &Angle) -> bool {
        let behind = Arc::new(q.clone(), p.clone());
        if self.lam.gaps.iter().any(|g| g.is_hole(&behind)) {
            return true;
        }
        self.lam
            .finite_gaps
            .iter()
            .any(|f| f.contains(p) && f.contains(q) && !f.vertices().iter().any(|x| behind.contains(x)))
    }

    /// Whether a gap borders the leaf `p-q` on the side of the arc `(p, q)`.
    /// Sides are followed forward until a periodic or critical leaf.
    pub fn borders_gap(&mut self, p: &Angle, q: &Angle) -> bool {
        let d = self.lam.d;
        let mut path: Vec<(Angle, Angle)> = Vec::new();
        let mut seen: HashSet<(Angle, Angle)> = HashSet::new();
        let (mut p, mut q) = (p.clone(), q.clone());
        let result = loop {
            if let Some(&r) = self.memo.get(&(p.clone(), q.clone())) {
                break r;
            }
            path.push((p.clone(), q.clone()));
            if self.registered_side(&p, &q) {
                break true;
            }
            let (sp, sq) = (sigma(d, &p), sigma(d, &q));
            if sp == sq {
                let one_over_d = BigRational::new(BigInt::one(), BigInt::from(d));
                break arc_length(&p, &q) == one_over_d && self.lam.gaps.iter().any(|g| g.in_basis(&sp));
            }
            if !seen.insert((p.clone(), q.clone())) {
                break false;
            }
            p = sp;
            q = sq;
        };
        for k in path {
            self.memo.insert(k, result);
        }
        result
    }

    /// A leaf is isolated when gaps border it on both sides.
    pub fn is_isolated(&mut self, l: &Chord) -> bool {
        self.borders_gap(&l.a, &l.b) && self.borders_gap(&l.b, &l.a)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SuperGaps {
    WholeDisk,
    /// Number of complementary regions of the remaining leaves.
    Regions(usize),
}

#[derive(Clone, Debug)]
pub struct CleanReport {
    /// Leaf counts before cleaning and after each round.
    pub counts: Vec<usize>,
    pub core: Lamination,
    pub super_gaps: SuperGaps,
}

impl CleanReport {
    pub fn rounds(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn to_text(&self) -> String {
        let counts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        let sg = match &self.super_gaps {
            SuperGaps::WholeDisk => "whole-disk".to_string(),
            SuperGaps::Regions(n) => format!("regions={n}"),
        };
        format!(
            "rounds: {}\ncounts: {}\ncore_leaves: {}\nsuper_gaps: {}\n",
            self.rounds(),
            counts.join(" "),
            self.core.len(),
            sg
        )
    }
}

/// Remove isolated leaves until none are left.
pub fn clean(l: &Lamination) -> Result<CleanReport> {
    let mut core = l.clone();
    let mut counts = vec![core.len()];
    if !core.is_empty() && !core.has_registry() {
        return Err(LamError::NoRegistry);
    }
    loop {
        let isolated: Vec<Chord> = {
            let mut iso = Isolation::new(&core);
            core.leaves.iter().filter(|c| iso.is_isolated(c)).cloned().collect()
        };
        if isolated.is_empty() {
            break;
        }
        for c in &isolated {
            core.leaves.remove(c);
        }
        counts.push(core.len());
    }
    let super_gaps = if core.is_empty() { SuperGaps::WholeDisk } else { SuperGaps::Regions(core.len() + 1) };
    Ok(CleanReport { counts, core, super_gaps })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coexistence {
    EqualsCanonical,
    MajorIsLeaf,
    Neither,
}

impl fmt::Display for Coexistence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coexistence::EqualsCanonical => "equals-canonical",
            Coexistence::MajorIsLeaf => "major-is-leaf",
            Coexistence::Neither => "neither",
        })
    }
}

#[derive(Clone, Debug)]
pub enum SmpVerdict {
    /// No rotational class; the lamination is that of an invariant
    /// quadratic gap.
    Case1 {
        gap: GapGen,
    },
    /// A type D rotational set and its canonical lamination.
    Case2 {
        set: LamSet,
    },
    /// A rotational set inside an invariant quadratic gap `U(c)` that
    /// co-exists with the lamination.
    Case3 {
        set: LamSet,
        tag: TypeTag,
        witness: Chord,
        branch: Coexistence,
    },
    NotSmp(String),
    Empty,
    Inconclusive(String),
}

impl SmpVerdict {
    pub fn case(&self) -> Option<u8> {
        match self {
            SmpVerdict::Case1 { .. } => Some(1),
            SmpVerdict::Case2 { .. } => Some(2),
            SmpVerdict::Case3 { .. } => Some(3),
            _ => None,
        }
    }

    pub fn summary(&self) -> String {
        match self {
            SmpVerdict::Case1 { gap } => format!("case=1 gap={}", gap.chords[0]),
            SmpVerdict::Case2 { set } => format!("case=2 type=D set={}", set.to_text()),
            SmpVerdict::Case3 { set, tag, witness, branch } => {
                format!("case=3 type={tag} set={} witness={witness} branch={branch}", set.to_text())
            }
            SmpVerdict::NotSmp(r) => format!("case=none verdict=NotSMP reason={r}"),
            SmpVerdict::Empty => "case=none verdict=Empty".into(),
            SmpVerdict::Inconclusive(r) => format!("case=none verdict=Inconclusive reason={r}"),
        }
    }
}

/// Whether `l` crosses an edge of `g`.
fn crosses_edge(g: &GapGen, l: &Chord) -> bool {
    for (u, v) in [(&l.a, &l.b), (&l.b, &l.a)] {
        if let Some(h) = g.hole_containing(u) {
            if !h.contains_closed(v) {
                return true;
            }
        }
    }
    false
}

/// A regular critical chord `c` inside a critical attached gap of `g` with
/// `g` inside `U(c)` and no leaf of `l` crossing an edge of `U(c)`.
fn smp_witness(l: &Lamination, g: &LamSet) -> Result<Option<GapGen>> {
    for (gap, deg) in attached_gaps(g, l.depth)? {
        if deg < 2 {
            continue;
        }
        let inner = gap.inner(0);
        for x in gap.vertices(3) {
            if crate::circle::period(l.d, &x).is_some() {
                continue;
            }
            let y = sigma(l.d, &x);
            let fib: Vec<Angle> = preimages(l.d, &y).into_iter().filter(|q| inner.contains_closed(q)).collect();
            for i in 0..fib.len() {
                for j in i + 1..fib.len() {
                    let c = Chord::new(fib[i].clone(), fib[j].clone());
                    let Ok(cls) = classify_critical(&c) else { continue };
                    if cls.tag != CriticalTag::RegularCritical {
                        continue;
                    }
                    let u = build_gap(&c, l.depth)?;
                    if !g.vertices().iter().all(|v| u.in_basis(v)) {
                        continue;
                    }
                    if l.leaves.iter().all(|leaf| !crosses_edge(&u, leaf)) {
                        return Ok(Some(u));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Sort a cubic lamination into the three cases of the SMP description.
pub fn classify_smp(l: &Lamination, period_bound: usize) -> Result<SmpVerdict> {
    if l.d != 3 {
        return Err(LamError::Unsupported("SMP classification is for d = 3".into()));
    }
    if l.is_empty() {
        return Ok(SmpVerdict::Empty);
    }
    let all: Vec<Chord> = l.leaves.iter().cloned().collect();
    if let Some((a, b)) = find_crossing(&all) {
        return Ok(SmpVerdict::NotSmp(format!("{a} crosses {b}")));
    }
    let (classes, inconclusive) = periodic_classes(l, period_bound);
    let rot: Vec<_> = classes.into_iter().filter(|c| c.is_rotational()).collect();
    if rot.len() >= 2 {
        return Ok(SmpVerdict::NotSmp(format!("{} rotational classes", rot.len())));
    }
    if inconclusive {
        return Ok(SmpVerdict::Inconclusive(format!("a periodic class has period above {period_bound}")));
    }
    if !l.has_registry() {
        return Err(LamError::NoRegistry);
    }
    let Some(class) = rot.into_iter().next() else {
        for g in l.gaps.iter().filter(|g| g.kind.is_invariant_quadratic()) {
            let can = canonical_of_quadratic_gap(g, l.depth)?;
            if can.leaves == l.leaves {
                return Ok(SmpVerdict::Case1 { gap: g.clone() });
            }
        }
        return Ok(SmpVerdict::NotSmp("no rotational class and not a quadratic-gap lamination".into()));
    };
    let g = class.vertices;
    let mut iso = Isolation::new(l);
    if !g.holes().iter().all(|(c, _)| iso.is_isolated(c)) {
        return Ok(SmpVerdict::NotSmp("edges of the rotational class are not isolated".into()));
    }
    let rep = g.classify_rotational();
    let canonical = canonical_of_rotational(&g, l.depth)?;
    let equals = canonical.leaves == l.leaves;
    if rep.type_tag == TypeTag::D && equals {
        return Ok(SmpVerdict::Case2 { set: g });
    }
    match smp_witness(l, &g)? {
        Some(u) => {
            let branch = if equals {
                Coexistence::EqualsCanonical
            } else if l.contains(&u.major()) {
                Coexistence::MajorIsLeaf
            } else {
                Coexistence::Neither
            };
            Ok(SmpVerdict::Case3 { set: g, tag: rep.type_tag, witness: u.chords[0].clone(), branch })
        }
        None => Ok(SmpVerdict::Inconclusive("no regular critical witness found".into())),
    }
}

/// Push the leaves of `l` inside the basis of `u` through `psi` to a
/// `sigma_2` lamination.
pub fn project_through_gap(u: &GapGen, l: &Lamination) -> Result<Lamination> {
    let major = u.major();
    if let Some(c) = l.leaves.iter().find(|c| linked(c, &major)) {
        return Err(LamError::CrossesMajor(c.to_string()));
    }
    let psi = Psi::new(u)?;
    let mut out = Lamination::new(2, l.depth, "projection");
    for c in &l.leaves {
        if u.in_basis(&c.a) && u.in_basis(&c.b) {
            let img = Chord::new(psi.eval(&c.a)?, psi.eval(&c.b)?);
            if !img.is_degenerate() {
                out.leaves.insert(img.normalized());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Chord {
        s.parse().unwrap()
    }

    #[test]
    fn diameter_lamination_leaves() {
        let lam = canonical_diameter(3).unwrap();
        for s in ["0-1/2", "1/6-1/3", "2/3-5/6"] {
            assert!(lam.contains(&c(s)), "{s}");
        }
        let r = check_invariance(&lam);
        assert!(r.is_ok(), "{}", r.to_text());
    }

    #[test]
    fn single_leaf_is_not_invariant() {
        let lam = Lamination::from_leaves(3, 1, "custom", [c("0-1/4")]);
        assert!(!check_invariance(&lam).is_ok());
    }

    #[test]
    fn portrait_regions() {
        let p = Portrait::new(3, vec![c("1/3-2/3"), c("1/4-11/12")]).unwrap();
        let pb = p.pullbacks(&c("1/8-3/8")).unwrap();
        assert!(p.pullbacks(&c("0-1/2")).is_err());
        assert_eq!(pb.len(), 3);
        assert!(Portrait::new(3, vec![c("0-1/3"), c("1/6-1/2")]).is_err());
    }

    #[test]
    fn regular_critical_lamination() {
        let u = build_gap(&c("1/3-2/3"), 4).unwrap();
        let lam = canonical_of_quadratic_gap(&u, 4).unwrap();
        assert!(lam.contains(&c("1/3-2/3")));
        let r = check_invariance(&lam);
        assert!(r.is_ok(), "{}", r.to_text());
    }

    #[test]
    fn text_round_trip() {
        let lam = canonical_diameter(2).unwrap();
        let t = lam.to_text();
        let back = Lamination::from_text(&t).unwrap();
        assert_eq!(back, lam);
        assert_eq!(back.to_text(), t);
    }
}
