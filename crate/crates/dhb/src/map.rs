//! Hurwitz maps: transitive (2,3,7)-permutation pairs with a reflection.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{is_transitive, orbit, CycleType, PermError, Permutation, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    XSquared,
    YCubed,
    XYSeventh,
    TSquared,
    XTSquared,
    YTSquared,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::XSquared => "x^2 = 1",
            Relation::YCubed => "y^3 = 1",
            Relation::XYSeventh => "(xy)^7 = 1",
            Relation::TSquared => "t^2 = 1",
            Relation::XTSquared => "(xt)^2 = 1",
            Relation::YTSquared => "(yt)^2 = 1",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("relation {0} fails")]
    Relation(Relation),
    #[error("<x, y> is intransitive: orbit of 0 has {orbit} of {n} points")]
    Intransitive { orbit: usize, n: usize },
    #[error("Riemann-Hurwitz gives no non-negative integral genus: n={n}, v=({alpha},{beta},{gamma})")]
    NonIntegralGenus { n: usize, alpha: usize, beta: usize, gamma: usize },
    #[error("not an involution")]
    NotInvolution,
    #[error("map file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Numbers of fixed points of x, y and z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FixedPointVector {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
}

impl FixedPointVector {
    pub fn new(alpha: usize, beta: usize, gamma: usize) -> Self {
        FixedPointVector { alpha, beta, gamma }
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.alpha, self.beta, self.gamma]
    }

    pub fn difference(&self, other: &FixedPointVector) -> [i64; 3] {
        let a = self.as_array();
        let b = other.as_array();
        [0, 1, 2].map(|i| a[i] as i64 - b[i] as i64)
    }
}

impl fmt::Display for FixedPointVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.alpha, self.beta, self.gamma)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signature {
    pub genus: u64,
    pub fixed: FixedPointVector,
}

impl Signature {
    /// Degree determined by `84(g-1) + 21a + 28b + 36c`.
    pub fn degree(&self) -> i64 {
        84 * (self.genus as i64 - 1)
            + 21 * self.fixed.alpha as i64
            + 28 * self.fixed.beta as i64
            + 36 * self.fixed.gamma as i64
    }
}

/// A pair of x-fixed points `a`, `b` with `b = a(xy)^k`.
///
/// `symmetric` records whether also `b = a t`; only symmetric handles can
/// be used for composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Handle {
    pub k: u8,
    pub a: u32,
    pub b: u32,
    pub symmetric: bool,
}

impl Handle {
    pub fn min_point(&self) -> u32 {
        self.a.min(self.b)
    }

    pub fn points(&self) -> [u32; 2] {
        [self.a, self.b]
    }

    pub fn shares_point(&self, other: &Handle) -> bool {
        self.points().iter().any(|p| other.points().contains(p))
    }

    pub fn shifted(&self, offset: u32) -> Handle {
        Handle { a: self.a + offset, b: self.b + offset, ..*self }
    }
}

/// Cycle decomposition of w with a point to cycle index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WCycles {
    pub cycles: Vec<Vec<u32>>,
    pub index: Vec<usize>,
}

impl WCycles {
    pub fn of(w: &Permutation) -> Self {
        let cycles = w.cycles();
        let mut index = vec![0; w.degree()];
        for (i, c) in cycles.iter().enumerate() {
            for &p in c {
                index[p as usize] = i;
            }
        }
        WCycles { cycles, index }
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles.iter().map(Vec::len).collect())
    }

    pub fn length_at(&self, point: u32) -> usize {
        self.cycles[self.index[point as usize]].len()
    }

    pub fn same_cycle(&self, a: u32, b: u32) -> bool {
        self.index[a as usize] == self.index[b as usize]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UsefulCycle {
    pub cycle: usize,
    pub length: usize,
    /// A point `p` of the cycle with `p x` in the cycle, not a fixed point of x lying in a handle.
    pub x_witness: u32,
    /// A point `q` of the cycle with `q y` in the cycle.
    pub y_witness: u32,
}

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "MapData", into = "MapData")]
pub struct HurwitzMap {
    x: Permutation,
    y: Permutation,
    t: Permutation,
}

/// Unvalidated wire form of a map.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapData {
    pub n: usize,
    pub x: Permutation,
    pub y: Permutation,
    pub t: Permutation,
}

impl TryFrom<MapData> for HurwitzMap {
    type Error = MapError;
    fn try_from(d: MapData) -> Result<Self, MapError> {
        if d.x.degree() != d.n {
            return Err(PermError::DegreeMismatch(d.n, d.x.degree()).into());
        }
        HurwitzMap::new(d.x, d.y, d.t)
    }
}

impl From<HurwitzMap> for MapData {
    fn from(m: HurwitzMap) -> MapData {
        MapData { n: m.n(), x: m.x, y: m.y, t: m.t }
    }
}

impl fmt::Debug for HurwitzMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HurwitzMap[n={}, v={}]", self.n(), self.fixed_point_vector())
    }
}

impl HurwitzMap {
    pub fn new(x: Permutation, y: Permutation, t: Permutation) -> Result<Self, MapError> {
        let n = x.degree();
        for g in [&y, &t] {
            if g.degree() != n {
                return Err(PermError::DegreeMismatch(n, g.degree()).into());
            }
        }
        let xy = &x * &y;
        let xt = &x * &t;
        let yt = &y * &t;
        let checks = [
            (x.power(2), Relation::XSquared),
            (y.power(3), Relation::YCubed),
            (xy.power(7), Relation::XYSeventh),
            (t.power(2), Relation::TSquared),
            (xt.power(2), Relation::XTSquared),
            (yt.power(2), Relation::YTSquared),
        ];
        for (g, rel) in checks {
            if !g.is_identity() {
                return Err(MapError::Relation(rel));
            }
        }
        let gens = [x.clone(), y.clone()];
        if !is_transitive(&gens, n)? {
            return Err(MapError::Intransitive { orbit: orbit(&gens, n, 0).len(), n });
        }
        Ok(HurwitzMap { x, y, t })
    }

    pub fn n(&self) -> usize {
        self.x.degree()
    }

    pub fn x(&self) -> &Permutation {
        &self.x
    }

    pub fn y(&self) -> &Permutation {
        &self.y
    }

    pub fn t(&self) -> &Permutation {
        &self.t
    }

    pub fn xy(&self) -> Permutation {
        &self.x * &self.y
    }

    /// `z = (xy)^-1`.
    pub fn z(&self) -> Permutation {
        self.xy().inverse()
    }

    /// `w = xyt`.
    pub fn w(&self) -> Permutation {
        &self.xy() * &self.t
    }

    pub fn t_parity(&self) -> Sign {
        self.t.parity()
    }

    pub fn fixed_point_vector(&self) -> FixedPointVector {
        FixedPointVector::new(self.x.fixed_points(), self.y.fixed_points(), self.z().fixed_points())
    }

    pub fn genus(&self) -> Result<u64, MapError> {
        let v = self.fixed_point_vector();
        let n = self.n();
        let num = n as i64 - 21 * v.alpha as i64 - 28 * v.beta as i64 - 36 * v.gamma as i64;
        if num % 84 != 0 || num / 84 + 1 < 0 {
            return Err(MapError::NonIntegralGenus { n, alpha: v.alpha, beta: v.beta, gamma: v.gamma });
        }
        Ok((num / 84 + 1) as u64)
    }

    pub fn signature(&self) -> Result<Signature, MapError> {
        Ok(Signature { genus: self.genus()?, fixed: self.fixed_point_vector() })
    }

    /// All `(k)`-handles, symmetric or not, ordered by least point.
    pub fn all_handles(&self, k: u8) -> Vec<Handle> {
        assert!((1..=3).contains(&k), "handle kind must be 1, 2 or 3");
        let step = self.xy().power(k as i64);
        let mut out: Vec<Handle> = (0..self.n())
            .filter_map(|a| {
                let b = step.apply(a);
                (a != b && self.x.apply(a) == a && self.x.apply(b) == b).then(|| Handle {
                    k,
                    a: a as u32,
                    b: b as u32,
                    symmetric: self.t.apply(a) == b,
                })
            })
            .collect();
        out.sort_by_key(|h| (h.min_point(), h.a));
        out
    }

    /// Handles usable for composition: those with `b = a t`.
    pub fn handles(&self, k: u8) -> Vec<Handle> {
        self.all_handles(k).into_iter().filter(|h| h.symmetric).collect()
    }

    pub fn handle_counts(&self) -> [usize; 3] {
        [1, 2, 3].map(|k| self.all_handles(k).len())
    }

    pub fn w_cycles(&self) -> WCycles {
        WCycles::of(&self.w())
    }

    /// Points lying in some handle of any kind.
    pub fn handle_points(&self) -> BTreeSet<u32> {
        (1..=3).flat_map(|k| self.all_handles(k)).flat_map(|h| h.points()).collect()
    }

    pub fn useful_cycles(&self) -> Vec<UsefulCycle> {
        let wc = self.w_cycles();
        let blocked = self.handle_points();
        let mut out = Vec::new();
        for (i, c) in wc.cycles.iter().enumerate() {
            let x_witness = c.iter().copied().find(|&p| {
                let img = self.x.apply(p as usize) as u32;
                wc.index[img as usize] == i && !(img == p && blocked.contains(&p))
            });
            let y_witness = c.iter().copied().find(|&p| wc.index[self.y.apply(p as usize)] == i);
            if let (Some(xw), Some(yw)) = (x_witness, y_witness) {
                out.push(UsefulCycle { cycle: i, length: c.len(), x_witness: xw, y_witness: yw });
            }
        }
        out
    }

    /// Re-checks a usefulness claim against the raw permutations.
    pub fn is_useful_witness(&self, cycle: &[u32], x_witness: u32, y_witness: u32) -> bool {
        let in_cycle = |p: u32| cycle.contains(&p);
        let xi = self.x.apply(x_witness as usize) as u32;
        let yi = self.y.apply(y_witness as usize) as u32;
        in_cycle(x_witness)
            && in_cycle(xi)
            && !(xi == x_witness && self.handle_points().contains(&x_witness))
            && in_cycle(y_witness)
            && in_cycle(yi)
    }

    /// Primes dividing some w-cycle length.
    pub fn prime_set(&self) -> BTreeSet<u64> {
        let mut out = BTreeSet::new();
        for l in self.w_cycles().cycle_type().lengths() {
            let mut m = *l as u64;
            let mut d = 2;
            while d * d <= m {
                while m.is_multiple_of(d) {
                    out.insert(d);
                    m /= d;
                }
                d += 1;
            }
            if m > 1 {
                out.insert(m);
            }
        }
        out
    }

    /// Conjugates x, y and t by `sigma`.
    pub fn relabel(&self, sigma: &Permutation) -> HurwitzMap {
        HurwitzMap { x: self.x.conjugate_by(sigma), y: self.y.conjugate_by(sigma), t: self.t.conjugate_by(sigma) }
    }

    pub fn to_map_file(&self) -> String {
        format!("hurwitz-map 1\ndegree {}\nx {}\ny {}\nt {}\n", self.n(), self.x, self.y, self.t)
    }

    /// Parses the text map format:
    ///
    /// ```text
    /// hurwitz-map 1
    /// degree 14
    /// x (0 12)(1 3)(2 6)(4 13)(5 8)(7 11)
    /// y (0 1 2)(3 4 5)(6 7 8)(9 10 11)
    /// t (0 4)(1 3)(2 5)(6 8)(9 10)(12 13)
    /// ```
    ///
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse_map_file(text: &str) -> Result<HurwitzMap, MapError> {
        let err = |line: usize, msg: &str| MapError::Parse { line, msg: msg.to_string() };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or_else(|| err(0, "empty map file"))?;
        if header != "hurwitz-map 1" {
            return Err(err(ln, "expected header 'hurwitz-map 1'"));
        }
        let mut degree: Option<usize> = None;
        let mut fields: [Option<(usize, &str)>; 3] = [None, None, None];
        for (ln, line) in lines {
            let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match key {
                "degree" => {
                    if degree.is_some() {
                        return Err(err(ln, "duplicate degree"));
                    }
                    let d: usize = rest.parse().map_err(|_| err(ln, "degree is not a number"))?;
                    if d == 0 || d > 1 << 20 {
                        return Err(err(ln, "degree out of range"));
                    }
                    degree = Some(d);
                }
                "x" | "y" | "t" => {
                    let slot = &mut fields[match key {
                        "x" => 0,
                        "y" => 1,
                        _ => 2,
                    }];
                    if slot.is_some() {
                        return Err(err(ln, "duplicate generator line"));
                    }
                    *slot = Some((ln, rest));
                }
                _ => return Err(err(ln, "unknown key")),
            }
        }
        let n = degree.ok_or_else(|| err(0, "missing degree"))?;
        let mut perms = Vec::with_capacity(3);
        for (slot, name) in fields.iter().zip(["x", "y", "t"]) {
            let (ln, body) = slot.ok_or_else(|| err(0, &format!("missing {name}")))?;
            let p = Permutation::parse_cycles(body, n).map_err(|e| err(ln, &e.to_string()))?;
            perms.push(p);
        }
        let t = perms.pop().expect("three generators");
        let y = perms.pop().expect("three generators");
        let x = perms.pop().expect("three generators");
        HurwitzMap::new(x, y, t)
    }
}

/// Number of transpositions of an involution, `(n - |Fix g|) / 2`.
///
/// The identity counts as an involution with no transpositions.
pub fn tau(g: &Permutation) -> Result<usize, MapError> {
    if !g.power(2).is_identity() {
        return Err(MapError::NotInvolution);
    }
    Ok((g.degree() - g.fixed_points()) / 2)
}
