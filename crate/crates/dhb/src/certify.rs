//! Generation certificates via Jordan's theorem, Beauville evidence,
//! the minimum-degree search and the double cover adjustment.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atlas::{basic_map, BasicMapId};
use crate::compose::{k_compose, self_join, useful_persists, ComposeError};
use crate::construct::{build_pair, ConstructError, ConstructionPlan, MapPair};
use crate::map::{tau, FixedPointVector, Handle, HurwitzMap, MapError};
use crate::perm::{an_conjugate, group_order, Permutation};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// One hypothesis of the Jordan criterion that does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "hypothesis", rename_all = "snake_case")]
pub enum JordanFailure {
    NotPrime { p: u64 },
    Intransitive { orbit: usize, n: usize },
    NoCycleOfLength { p: u64 },
    TooLarge { p: u64, n: usize },
    NotCoprime { p: u64, length: usize },
    RepeatedCycle { p: u64, count: usize },
    NotUseful { p: u64 },
    BadEvidence { detail: String },
}

impl fmt::Display for JordanFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JordanFailure::NotPrime { p } => write!(f, "primality: {p} is not prime"),
            JordanFailure::Intransitive { orbit, n } => {
                write!(f, "transitivity: <x, y> has an orbit of size {orbit} on {n} points")
            }
            JordanFailure::NoCycleOfLength { p } => write!(f, "prime cycle: w has no cycle of length {p}"),
            JordanFailure::TooLarge { p, n } => write!(f, "prime bound: p = {p} exceeds n - 3 = {}", *n as i64 - 3),
            JordanFailure::NotCoprime { p, length } => {
                write!(f, "coprimality: p = {p} is not coprime to cycle length {length}")
            }
            JordanFailure::RepeatedCycle { p, count } => {
                write!(f, "coprimality: w has {count} cycles of length {p}")
            }
            JordanFailure::NotUseful { p } => write!(f, "usefulness: the {p}-cycle of w is not useful"),
            JordanFailure::BadEvidence { detail } => write!(f, "evidence: {detail}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub struct JordanError {
    pub failures: Vec<JordanFailure>,
}

impl fmt::Display for JordanError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.failures.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// Spanning tree of the orbit of 0 under x and y: `order` lists every
/// point once starting with 0, and `parent[p] = (q, g)` with `q g = p`,
/// where `q` precedes `p` in `order` and `g` is `'x'` or `'y'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityWitness {
    pub order: Vec<u32>,
    pub parent: Vec<(u32, char)>,
}

impl TransitivityWitness {
    pub fn build(m: &HurwitzMap) -> Self {
        let n = m.n();
        let mut parent = vec![(0, '-'); n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([0u32]);
        if n > 0 {
            seen[0] = true;
        }
        while let Some(p) = queue.pop_front() {
            order.push(p);
            for (g, name) in [(m.x(), 'x'), (m.y(), 'y')] {
                let q = g.apply(p as usize);
                if !seen[q] {
                    seen[q] = true;
                    parent[q] = (p, name);
                    queue.push_back(q as u32);
                }
            }
        }
        TransitivityWitness { order, parent }
    }

    pub fn verify(&self, m: &HurwitzMap) -> bool {
        let n = m.n();
        if self.order.len() != n || self.parent.len() != n || (n > 0 && self.order[0] != 0) {
            return false;
        }
        let mut pos = vec![usize::MAX; n];
        for (i, &p) in self.order.iter().enumerate() {
            if p as usize >= n || pos[p as usize] != usize::MAX {
                return false;
            }
            pos[p as usize] = i;
        }
        self.order.iter().skip(1).all(|&p| {
            let (q, g) = self.parent[p as usize];
            let gen = match g {
                'x' => m.x(),
                'y' => m.y(),
                _ => return false,
            };
            (q as usize) < n && pos[q as usize] < pos[p as usize] && gen.apply(q as usize) == p as usize
        })
    }
}

/// Evidence that `<x, y>` contains, and so equals, the alternating group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanCertificate {
    pub n: usize,
    pub prime: u64,
    /// The p-cycle of w, in cycle order.
    pub cycle: Vec<u32>,
    /// `(p, p x)`, both in the cycle, not a handle point fixed by x.
    pub x_witness: (u32, u32),
    /// `(q, q y)`, both in the cycle.
    pub y_witness: (u32, u32),
    pub w_cycle_type: Vec<usize>,
    pub transitivity: TransitivityWitness,
    pub conclusion: String,
}

const CONCLUSION: &str = "<x, y, t> contains A_n; x and y are even and <x, y> has index at most 2, so <x, y> = A_n";

fn jordan_failures(m: &HurwitzMap, p: u64) -> (Vec<JordanFailure>, Option<Vec<u32>>) {
    let n = m.n();
    let mut failures = Vec::new();
    if !is_prime(p) {
        failures.push(JordanFailure::NotPrime { p });
    }
    let tree = TransitivityWitness::build(m);
    if tree.order.len() != n {
        failures.push(JordanFailure::Intransitive { orbit: tree.order.len(), n });
    }
    let wc = m.w_cycles();
    let hits: Vec<&Vec<u32>> = wc.cycles.iter().filter(|c| c.len() as u64 == p).collect();
    for &l in wc.cycle_type().lengths() {
        if p > 0 && (l as u64).is_multiple_of(p) && l as u64 != p {
            failures.push(JordanFailure::NotCoprime { p, length: l });
        }
    }
    if hits.len() > 1 {
        failures.push(JordanFailure::RepeatedCycle { p, count: hits.len() });
    }
    if p as i64 > n as i64 - 3 {
        failures.push(JordanFailure::TooLarge { p, n });
    }
    let cycle = match hits.first() {
        None => {
            failures.push(JordanFailure::NoCycleOfLength { p });
            None
        }
        Some(c) => {
            let idx = wc.index[c[0] as usize];
            if !m.useful_cycles().iter().any(|u| u.cycle == idx) {
                failures.push(JordanFailure::NotUseful { p });
            }
            Some((*c).clone())
        }
    };
    (failures, cycle)
}

pub fn jordan_certify(m: &HurwitzMap, p: u64) -> Result<JordanCertificate, JordanError> {
    let (failures, cycle) = jordan_failures(m, p);
    if !failures.is_empty() {
        return Err(JordanError { failures });
    }
    let cycle = cycle.expect("no failure implies a cycle");
    let wc = m.w_cycles();
    let idx = wc.index[cycle[0] as usize];
    let u = m.useful_cycles().into_iter().find(|u| u.cycle == idx).expect("usefulness checked");
    // Re-rotate the cycle to start where w's cycle listing starts.
    let start = cycle.iter().copied().min().unwrap_or(0);
    let w = m.w();
    let mut ordered = Vec::with_capacity(cycle.len());
    let mut cur = start;
    for _ in 0..cycle.len() {
        ordered.push(cur);
        cur = w.apply(cur as usize) as u32;
    }
    Ok(JordanCertificate {
        n: m.n(),
        prime: p,
        cycle: ordered,
        x_witness: (u.x_witness, m.x().apply(u.x_witness as usize) as u32),
        y_witness: (u.y_witness, m.y().apply(u.y_witness as usize) as u32),
        w_cycle_type: wc.cycle_type().lengths().to_vec(),
        transitivity: TransitivityWitness::build(m),
        conclusion: CONCLUSION.to_string(),
    })
}

impl JordanCertificate {
    /// Re-checks every claim against the permutations of `m` alone.
    pub fn verify(&self, m: &HurwitzMap) -> Result<(), JordanError> {
        let mut failures = Vec::new();
        let mut bad = |detail: String| failures.push(JordanFailure::BadEvidence { detail });
        let n = m.n();
        if self.n != n {
            bad(format!("degree {} recorded, map has {n}", self.n));
        }
        if !self.transitivity.verify(m) {
            bad("spanning tree does not reach every point".into());
        }
        let w = m.w();
        let on_cycle = self.cycle.iter().all(|&p| (p as usize) < n);
        let closes = on_cycle
            && !self.cycle.is_empty()
            && self
                .cycle
                .iter()
                .enumerate()
                .all(|(i, &p)| w.apply(p as usize) as u32 == self.cycle[(i + 1) % self.cycle.len()]);
        if !closes || self.cycle.len() as u64 != self.prime {
            bad(format!("recorded cycle is not a {}-cycle of w", self.prime));
        }
        if w.cycle_type().lengths() != self.w_cycle_type.as_slice() {
            bad("recorded w cycle type differs from the map".into());
        }
        let (xa, xb) = self.x_witness;
        let (ya, yb) = self.y_witness;
        let in_range = [xa, xb, ya, yb].iter().all(|&p| (p as usize) < n);
        if !in_range
            || m.x().apply(xa as usize) as u32 != xb
            || m.y().apply(ya as usize) as u32 != yb
            || !m.is_useful_witness(&self.cycle, xa, ya)
        {
            bad("usefulness witnesses do not hold".into());
        }
        let (rest, _) = jordan_failures(m, self.prime);
        failures.extend(rest);
        if failures.is_empty() {
            Ok(())
        } else {
            Err(JordanError { failures })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertifyError {
    #[error(transparent)]
    Construct(#[from] ConstructError),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("W_{member}: {error}")]
    Jordan { member: u8, error: JordanError },
    #[error("triple {member} is not of type (2,3,7): orders {orders:?}")]
    NotHurwitzType { member: u8, orders: [String; 3] },
    #[error("degrees differ: {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("Beauville condition fails at position {0}")]
    Beauville(Position),
    #[error("search bounds {0:?} admit no pair of signatures")]
    NoSolution(SearchBounds),
    #[error("tau(x)/2 parities ({0}, {1}) match neither adjustment branch")]
    ParityCase(usize, usize),
    #[error("no room for the cover adjustment after {0} extra G copies")]
    NoRoom(u32),
    #[error("cover check failed: {0}")]
    Cover(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    X,
    Y,
    Z,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Position::X => "x",
            Position::Y => "y",
            Position::Z => "z",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    /// The cycle types differ, so no power of one is conjugate to the other.
    DistinctCycleTypes,
    /// Equal cycle types, but no power is conjugate inside A_n.
    NotConjugateInAn,
    Conjugate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionEvidence {
    pub position: Position,
    pub order: u32,
    pub cycle_type_1: String,
    pub cycle_type_2: String,
    pub resolution: Resolution,
}

impl PositionEvidence {
    pub fn passed(&self) -> bool {
        self.resolution != Resolution::Conjugate
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeauvilleEvidence {
    pub positions: Vec<PositionEvidence>,
    pub v_difference: [i64; 3],
}

impl BeauvilleEvidence {
    pub fn passed(&self) -> bool {
        self.positions.iter().all(PositionEvidence::passed)
    }

    pub fn first_failure(&self) -> Option<Position> {
        self.positions.iter().find(|p| !p.passed()).map(|p| p.position)
    }
}

fn generators(m: &HurwitzMap) -> [(Position, u32, Permutation); 3] {
    [(Position::X, 2, m.x().clone()), (Position::Y, 3, m.y().clone()), (Position::Z, 7, m.z())]
}

fn check_type(m: &HurwitzMap, member: u8) -> Result<(), CertifyError> {
    let gens = generators(m);
    let ok = gens.iter().all(|(_, ord, g)| g.order() == BigUint::from(*ord));
    if ok {
        Ok(())
    } else {
        Err(CertifyError::NotHurwitzType { member, orders: gens.map(|(_, _, g)| g.order().to_string()) })
    }
}

/// Compares generators position by position. Generators of different
/// orders have powers of different orders, so only equal positions matter;
/// all non-identity powers of an element of prime order share its cycle
/// type, and equal cycle types are resolved by conjugacy in A_n.
pub fn beauville_check(m1: &HurwitzMap, m2: &HurwitzMap) -> Result<BeauvilleEvidence, CertifyError> {
    if m1.n() != m2.n() {
        return Err(CertifyError::DegreeMismatch(m1.n(), m2.n()));
    }
    check_type(m1, 1)?;
    check_type(m2, 2)?;
    let mut positions = Vec::with_capacity(3);
    for ((pos, ord, g1), (_, _, g2)) in generators(m1).into_iter().zip(generators(m2)) {
        let (ct1, ct2) = (g1.cycle_type(), g2.cycle_type());
        let resolution = if ct1 != ct2 {
            Resolution::DistinctCycleTypes
        } else {
            let conj = (1..ord as i64).any(|k| an_conjugate(&g1, &g2.power(k)).expect("equal degrees"));
            if conj {
                Resolution::Conjugate
            } else {
                Resolution::NotConjugateInAn
            }
        };
        positions.push(PositionEvidence {
            position: pos,
            order: ord,
            cycle_type_1: ct1.to_string(),
            cycle_type_2: ct2.to_string(),
            resolution,
        });
    }
    let v_difference = m1.fixed_point_vector().difference(&m2.fixed_point_vector());
    Ok(BeauvilleEvidence { positions, v_difference })
}

/// A pair of (2,3,7) triples generating A_n with the Beauville condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DhbCertificate {
    pub plan: ConstructionPlan,
    pub degree: usize,
    pub prime: u64,
    pub pair: MapPair,
    pub jordan: [JordanCertificate; 2],
    pub beauville: BeauvilleEvidence,
    pub fixed_points: [FixedPointVector; 2],
}

impl DhbCertificate {
    /// Re-checks all evidence from the stored permutations.
    pub fn verify(&self) -> Result<(), CertifyError> {
        for (i, m) in [(1u8, &self.pair.w1), (2, &self.pair.w2)] {
            self.jordan[i as usize - 1].verify(m).map_err(|error| CertifyError::Jordan { member: i, error })?;
            if self.jordan[i as usize - 1].prime != self.prime {
                return Err(CertifyError::Jordan {
                    member: i,
                    error: JordanError {
                        failures: vec![JordanFailure::BadEvidence {
                            detail: "prime differs from the certificate's".into(),
                        }],
                    },
                });
            }
        }
        let again = beauville_check(&self.pair.w1, &self.pair.w2)?;
        if again != self.beauville {
            return Err(CertifyError::Cover("recorded Beauville evidence differs from recomputation".into()));
        }
        if let Some(pos) = again.first_failure() {
            return Err(CertifyError::Beauville(pos));
        }
        if self.degree != self.pair.degree()
            || self.fixed_points != [self.pair.w1.fixed_point_vector(), self.pair.w2.fixed_point_vector()]
        {
            return Err(CertifyError::Cover("recorded degree or fixed points differ from the maps".into()));
        }
        Ok(())
    }
}

fn certify_pair(plan: ConstructionPlan, pair: MapPair, prime: u64) -> Result<DhbCertificate, CertifyError> {
    let j1 = jordan_certify(&pair.w1, prime).map_err(|error| CertifyError::Jordan { member: 1, error })?;
    let j2 = jordan_certify(&pair.w2, prime).map_err(|error| CertifyError::Jordan { member: 2, error })?;
    let beauville = beauville_check(&pair.w1, &pair.w2)?;
    if let Some(pos) = beauville.first_failure() {
        return Err(CertifyError::Beauville(pos));
    }
    Ok(DhbCertificate {
        plan,
        degree: pair.degree(),
        prime,
        fixed_points: [pair.w1.fixed_point_vector(), pair.w2.fixed_point_vector()],
        pair,
        jordan: [j1, j2],
        beauville,
    })
}

pub fn certify_dhb(plan: &ConstructionPlan) -> Result<DhbCertificate, CertifyError> {
    let built = build_pair(plan)?;
    certify_pair(*plan, built.pair, built.prime)
}

/// Default degree cap for the stabilizer chain oracle.
pub const ORACLE_CAP: usize = 400;

/// Whether `<x, y>` has order exactly n!/2, or `None` above the cap.
pub fn generation_oracle(m: &HurwitzMap, cap: usize) -> Option<bool> {
    if m.n() > cap {
        return None;
    }
    let order = group_order(&[m.x().clone(), m.y().clone()]).ok()?;
    let half: BigUint = (2..=m.n() as u64).fold(BigUint::one(), |acc, k| acc * k) / 2u32;
    Some(order == half)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub g_max: u32,
    pub alpha_max: u32,
    pub beta_max: u32,
    pub gamma_max: u32,
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { g_max: 3, alpha_max: 16, beta_max: 12, gamma_max: 14 }
    }
}

/// A point stabilizer signature `(g; alpha, beta, gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SearchSignature {
    pub genus: u32,
    pub alpha: u32,
    pub beta: u32,
    pub gamma: u32,
}

impl SearchSignature {
    pub fn degree(&self) -> i64 {
        84 * (self.genus as i64 - 1) + 21 * self.alpha as i64 + 28 * self.beta as i64 + 36 * self.gamma as i64
    }

    /// Fixed point counts must match the cycle structure of an involution,
    /// an element of order 3 and one of order 7 on `n` points.
    fn realizable(&self, n: i64) -> bool {
        n > 0
            && (self.alpha as i64) <= n
            && (self.beta as i64) <= n
            && (self.gamma as i64) <= n
            && (n - self.alpha as i64) % 2 == 0
            && (n - self.beta as i64) % 3 == 0
            && (n - self.gamma as i64) % 7 == 0
    }
}

impl fmt::Display for SearchSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {},{},{})", self.genus, self.alpha, self.beta, self.gamma)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinDegree {
    pub n: i64,
    pub bounds: SearchBounds,
    /// Unordered witness pairs, each with the smaller signature first.
    pub witnesses: Vec<(SearchSignature, SearchSignature)>,
}

impl MinDegree {
    pub fn has_witness(&self, a: SearchSignature, b: SearchSignature) -> bool {
        self.witnesses.iter().any(|&(p, q)| (p, q) == (a, b) || (p, q) == (b, a))
    }
}

/// Least n carried by two signatures whose fixed point differences,
/// scaled by 4, 3 and 7, are all non-zero integers.
pub fn min_degree_search(bounds: SearchBounds) -> Result<MinDegree, CertifyError> {
    let mut sigs = Vec::new();
    for genus in 0..=bounds.g_max {
        for alpha in 0..=bounds.alpha_max {
            for beta in 0..=bounds.beta_max {
                for gamma in 0..=bounds.gamma_max {
                    let s = SearchSignature { genus, alpha, beta, gamma };
                    if s.realizable(s.degree()) {
                        sigs.push(s);
                    }
                }
            }
        }
    }
    sigs.sort_by_key(|s| (s.degree(), *s));
    let mut best: Option<MinDegree> = None;
    let mut i = 0;
    while i < sigs.len() {
        let n = sigs[i].degree();
        let j = sigs[i..].iter().position(|s| s.degree() != n).map_or(sigs.len(), |k| i + k);
        let group = &sigs[i..j];
        let mut witnesses = Vec::new();
        for (a, s1) in group.iter().enumerate() {
            for s2 in &group[a + 1..] {
                let da = s1.alpha as i64 - s2.alpha as i64;
                let db = s1.beta as i64 - s2.beta as i64;
                let dc = s1.gamma as i64 - s2.gamma as i64;
                if da != 0 && db != 0 && dc != 0 && da % 4 == 0 && db % 3 == 0 && dc % 7 == 0 {
                    witnesses.push((*s1, *s2));
                }
            }
        }
        if !witnesses.is_empty() {
            best = Some(MinDegree { n, bounds, witnesses });
            break;
        }
        i = j;
    }
    best.ok_or(CertifyError::NoSolution(bounds))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoverBranch {
    /// E joined to W_1 and two copies of A joined to W_2.
    AttachEAndTwoA,
    /// Two free stock handles of W_2 joined to each other.
    InternalJoin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub dhb: DhbCertificate,
    /// τ(x_i)/2 before the adjustment.
    pub base_tau_half: [usize; 2],
    pub tau: [usize; 2],
    pub branch: CoverBranch,
    pub extra_g: u32,
    pub v_difference: [i64; 3],
    pub useful_persisted: bool,
}

impl CoverCertificate {
    pub fn verify(&self) -> Result<(), CertifyError> {
        self.dhb.verify()?;
        let tau_now = [tau(self.dhb.pair.w1.x())?, tau(self.dhb.pair.w2.x())?];
        if tau_now != self.tau || tau_now.iter().any(|t| t % 4 != 0) {
            return Err(CertifyError::Cover(format!("tau(x_i) = {tau_now:?} not both divisible by 4")));
        }
        let expected = match self.branch {
            CoverBranch::AttachEAndTwoA => [8, 3, -7],
            CoverBranch::InternalJoin => [8, 6, -7],
        };
        if self.dhb.beauville.v_difference != expected || self.v_difference != expected {
            return Err(CertifyError::Cover(format!("v-difference {:?}, expected {expected:?}", self.v_difference)));
        }
        Ok(())
    }
}

/// τ(x)/2 of the markers X_1 and X_2.
pub fn marker_tau_halves() -> Result<[usize; 2], CertifyError> {
    let mut out = [0; 2];
    for i in [1u8, 2] {
        let x = crate::construct::x_map(i)?;
        out[i as usize - 1] = tau(x.x())? / 2;
    }
    Ok(out)
}

fn free_stock(m: &HurwitzMap, stock: &std::ops::Range<u32>) -> Vec<Handle> {
    m.handles(1).into_iter().filter(|h| stock.contains(&h.min_point())).collect()
}

/// Makes τ(x_i) divisible by 4 in both members, enlarging the stock by
/// whole G copies until the adjustment has the handles it needs.
pub fn certify_cover(plan: &ConstructionPlan) -> Result<CoverCertificate, CertifyError> {
    const MAX_EXTRA: u32 = 4;
    let base = build_pair(plan)?;
    let half = |m: &HurwitzMap| tau(m.x()).map(|t| t / 2);
    let base_tau_half = [half(&base.pair.w1)?, half(&base.pair.w2)?];
    let branch = match (base_tau_half[0] % 2, base_tau_half[1] % 2) {
        (1, 0) => CoverBranch::AttachEAndTwoA,
        (0, 1) => CoverBranch::InternalJoin,
        _ => return Err(CertifyError::ParityCase(base_tau_half[0], base_tau_half[1])),
    };
    for extra_g in 0..=MAX_EXTRA {
        let plan_g = plan.with_extra_g(extra_g)?;
        let built = build_pair(&plan_g)?;
        let stock = built.base.stock.clone();
        let (w1, w2) = (&built.pair.w1, &built.pair.w2);
        let (f1, f2) = (free_stock(w1, &stock), free_stock(w2, &stock));
        let (a1, a2, persisted) = match branch {
            CoverBranch::AttachEAndTwoA => {
                if f1.is_empty() || f2.len() < 2 {
                    continue;
                }
                let (e, a) = (basic_map(BasicMapId::E), basic_map(BasicMapId::A));
                let he = e.handles(1)[0];
                let ha = a.handles(1)[0];
                let a1 = k_compose(w1, &f1[0], e, &he)?;
                let mid = k_compose(w2, &f2[0], a, &ha)?;
                let next = free_stock(&mid, &stock);
                let Some(h) = next.first() else { continue };
                let a2 = k_compose(&mid, h, a, &ha)?;
                let persisted = useful_persists(&[(w1, 0), (e, w1.n() as u32)], &a1)
                    && useful_persists(&[(w2, 0), (a, w2.n() as u32)], &mid)
                    && useful_persists(&[(&mid, 0), (a, mid.n() as u32)], &a2);
                (a1, a2, persisted)
            }
            CoverBranch::InternalJoin => {
                if f2.len() < 2 {
                    continue;
                }
                let a2 = self_join(w2, &f2[0], &f2[1])?;
                let persisted = useful_persists(&[(w2, 0)], &a2);
                (w1.clone(), a2, persisted)
            }
        };
        let pair = MapPair { w1: a1, w2: a2 };
        let tau_now = [tau(pair.w1.x())?, tau(pair.w2.x())?];
        let v_difference = pair.v_difference();
        let dhb = certify_pair(plan_g, pair, built.prime)?;
        let cert = CoverCertificate {
            dhb,
            base_tau_half,
            tau: tau_now,
            branch,
            extra_g,
            v_difference,
            useful_persisted: persisted,
        };
        cert.verify()?;
        return Ok(cert);
    }
    Err(CertifyError::NoRoom(MAX_EXTRA))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&p| is_prime(p)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn map_a_fails_prime_bound() {
        let err = jordan_certify(basic_map(BasicMapId::A), 13).unwrap_err();
        assert!(err.failures.contains(&JordanFailure::TooLarge { p: 13, n: 14 }), "{err}");
    }

    #[test]
    fn missing_prime_is_reported() {
        let err = jordan_certify(basic_map(BasicMapId::A), 11).unwrap_err();
        assert!(err.failures.contains(&JordanFailure::NoCycleOfLength { p: 11 }));
    }

    #[test]
    fn search_signature_degree() {
        let s = SearchSignature { genus: 0, alpha: 4, beta: 6, gamma: 0 };
        assert_eq!(s.degree(), 168);
    }
}
