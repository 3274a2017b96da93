//! Lifting a Hurwitz pair of A_n to matrices over a prime field: a rank-2
//! modification of the permutation matrix of x, relation checks, and
//! fixed-space dimensions as Beauville evidence.
//!
//! Matrices act on row vectors, so `e_i P(g) = e_{i g}` and products read
//! left to right like the permutation products. Only prime fields are
//! supported, and generation of SL_n(p) is not certified.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certify::{is_prime, Position};
use crate::construct::{build_pair, BuiltPair, ConstructError, ConstructionPlan, MapPair};
use crate::map::HurwitzMap;
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("t1 = {t1} does not generate the multiplicative group mod {p}")]
    NotPrimitive { p: u64, t1: u64 },
    #[error("lift points {0:?} are not two (1)-handles {{a, a xy}}, {{a', a' xy}} of fixed points of x")]
    BadPoints([u32; 4]),
    #[error("relation {0} fails")]
    Relation(&'static str),
    #[error("fixed-space dimensions coincide at position {0}")]
    Coincidence(Position),
    #[error("no G copy of the stock has two free (1)-handles")]
    NoLiftHandles,
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn is_primitive_root(t: u64, p: u64) -> bool {
    if p == 2 {
        return t % 2 == 1;
    }
    if t.is_multiple_of(p) {
        return false;
    }
    let mut m = p - 1;
    let mut d = 2;
    let mut factors = Vec::new();
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    factors.iter().all(|&q| pow_mod(t, (p - 1) / q, p) != 1)
}

/// Square matrix over the integers mod `p`, stored as sorted sparse rows.
#[derive(Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    p: u64,
    rows: Vec<Vec<(u32, u64)>>,
}

impl fmt::Debug for PrimeFieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeFieldMatrix(n = {}, p = {}, nnz = {})", self.n(), self.p, self.nnz())
    }
}

impl PrimeFieldMatrix {
    pub fn identity(n: usize, p: u64) -> Self {
        PrimeFieldMatrix { p, rows: (0..n).map(|i| vec![(i as u32, 1 % p)]).collect() }
    }

    pub fn from_permutation(g: &Permutation, p: u64) -> Self {
        PrimeFieldMatrix { p, rows: g.images().iter().map(|&j| vec![(j, 1 % p)]).collect() }
    }

    /// Builds from dense rows, reducing entries mod `p`.
    pub fn from_dense(rows: &[Vec<i64>], p: u64) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(j, &v)| (j as u32, v.rem_euclid(p as i64) as u64))
                    .filter(|&(_, v)| v != 0)
                    .collect()
            })
            .collect();
        PrimeFieldMatrix { p, rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i].iter().find(|&&(c, _)| c as usize == j).map_or(0, |&(_, v)| v)
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.n();
        let mut a = vec![0; n * n];
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, v) in r {
                a[i * n + j as usize] = v;
            }
        }
        DenseMatrix { p: self.p, n, a }
    }

    pub fn mul(&self, other: &PrimeFieldMatrix) -> PrimeFieldMatrix {
        assert_eq!(self.n(), other.n(), "dimension mismatch");
        assert_eq!(self.p, other.p, "modulus mismatch");
        let (n, p) = (self.n(), self.p);
        let mut acc = vec![0u64; n];
        let mut touched = Vec::new();
        let rows = self
            .rows
            .iter()
            .map(|r| {
                for &(k, a) in r {
                    for &(j, b) in &other.rows[k as usize] {
                        if acc[j as usize] == 0 {
                            touched.push(j);
                        }
                        acc[j as usize] = (acc[j as usize] + a * b) % p;
                        if acc[j as usize] == 0 {
                            // Cancelled; keep it listed so the slot is reset below.
                            acc[j as usize] = p;
                        }
                    }
                }
                touched.sort_unstable();
                let row = touched
                    .drain(..)
                    .filter_map(|j| {
                        let v = std::mem::take(&mut acc[j as usize]) % p;
                        (v != 0).then_some((j, v))
                    })
                    .collect();
                row
            })
            .collect();
        PrimeFieldMatrix { p, rows }
    }

    pub fn pow(&self, mut e: u64) -> PrimeFieldMatrix {
        let mut result = PrimeFieldMatrix::identity(self.n(), self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn is_identity(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.len() == 1 && r[0] == (i as u32, 1 % self.p))
    }

    /// `self - c I`.
    pub fn minus_scalar(&self, c: u64) -> PrimeFieldMatrix {
        let p = self.p;
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut r = r.clone();
                match r.binary_search_by_key(&(i as u32), |&(j, _)| j) {
                    Ok(k) => {
                        r[k].1 = (r[k].1 + p - c % p) % p;
                        if r[k].1 == 0 {
                            r.remove(k);
                        }
                    }
                    Err(k) if !c.is_multiple_of(p) => r.insert(k, (i as u32, p - c % p)),
                    Err(_) => {}
                }
                r
            })
            .collect();
        PrimeFieldMatrix { p, rows }
    }

    /// Sparse elimination choosing the shortest remaining row as pivot.
    /// Returns the rank and, for full rank, the determinant.
    fn eliminate(&self) -> (usize, Option<u64>) {
        let (n, p) = (self.n(), self.p);
        let mut rows: Vec<Vec<(u32, u64)>> = self.rows.clone();
        let mut cols: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (i, r) in rows.iter().enumerate() {
            for &(j, _) in r {
                cols[j as usize].push(i as u32);
            }
        }
        let mut done = vec![false; n];
        let mut pivot_col = vec![u32::MAX; n];
        let mut det = 1 % p;
        let mut rank = 0;
        while let Some(i) = (0..n).filter(|&i| !done[i] && !rows[i].is_empty()).min_by_key(|&i| rows[i].len()) {
            done[i] = true;
            let (j, piv) = rows[i][0];
            rank += 1;
            pivot_col[i] = j;
            det = det * piv % p;
            let inv = inv_mod(piv, p);
            let pivot_row = rows[i].clone();
            let users = std::mem::take(&mut cols[j as usize]);
            for &r in &users {
                let r = r as usize;
                if done[r] {
                    continue;
                }
                let Ok(k) = rows[r].binary_search_by_key(&j, |&(c, _)| c) else { continue };
                let f = rows[r][k].1 * inv % p;
                let mut merged = Vec::with_capacity(rows[r].len() + pivot_row.len());
                let (mut a, mut b) = (0, 0);
                let (ra, rb) = (&rows[r], &pivot_row);
                while a < ra.len() || b < rb.len() {
                    let ca = ra.get(a).map_or(u32::MAX, |e| e.0);
                    let cb = rb.get(b).map_or(u32::MAX, |e| e.0);
                    let (c, v) = if ca < cb {
                        a += 1;
                        (ca, ra[a - 1].1)
                    } else if cb < ca {
                        b += 1;
                        if !cols[cb as usize].contains(&(r as u32)) && cb != j {
                            cols[cb as usize].push(r as u32);
                        }
                        (cb, (p - f * rb[b - 1].1 % p) % p)
                    } else {
                        a += 1;
                        b += 1;
                        (ca, (ra[a - 1].1 + p - f * rb[b - 1].1 % p) % p)
                    };
                    if v != 0 {
                        merged.push((c, v));
                    }
                }
                rows[r] = merged;
            }
            cols[j as usize] = users;
        }
        if rank < n {
            return (rank, None);
        }
        // Sign of the row-to-pivot-column permutation.
        let sigma = Permutation::from_images(pivot_col).expect("full rank pivots form a permutation");
        let det = if sigma.parity().is_even() { det } else { (p - det) % p };
        (rank, Some(det))
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn det(&self) -> u64 {
        self.eliminate().1.unwrap_or(0)
    }
}

/// Dense matrix mod `p`, used to cross-check the sparse arithmetic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    p: u64,
    n: usize,
    a: Vec<u64>,
}

impl DenseMatrix {
    pub fn mul(&self, other: &DenseMatrix) -> DenseMatrix {
        let (n, p) = (self.n, self.p);
        let mut a = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    a[i * n + j] = (a[i * n + j] + x * other.a[k * n + j]) % p;
                }
            }
        }
        DenseMatrix { p, n, a }
    }

    /// Rank and determinant by plain Gaussian elimination.
    pub fn rank_det(&self) -> (usize, u64) {
        let (n, p) = (self.n, self.p);
        let mut a = self.a.clone();
        let mut det = 1 % p;
        let mut rank = 0;
        for c in 0..n {
            let Some(r) = (rank..n).find(|&r| a[r * n + c] != 0) else {
                det = 0;
                continue;
            };
            if r != rank {
                for j in 0..n {
                    a.swap(r * n + j, rank * n + j);
                }
                det = (p - det) % p;
            }
            let piv = a[rank * n + c];
            det = det * piv % p;
            let inv = inv_mod(piv, p);
            for r2 in rank + 1..n {
                let f = a[r2 * n + c] * inv % p;
                if f != 0 {
                    for j in c..n {
                        a[r2 * n + j] = (a[r2 * n + j] + p - f * a[rank * n + j] % p) % p;
                    }
                }
            }
            rank += 1;
        }
        (rank, if rank == n { det } else { 0 })
    }

    pub fn entries(&self) -> &[u64] {
        &self.a
    }
}

/// Dimension of the subspace fixed by `m`.
pub fn fixed_space_dim(m: &PrimeFieldMatrix) -> usize {
    m.n() - m.minus_scalar(1).rank()
}

/// `x'`: each listed pair `(u, v)` sends `e_u` to `-e_u + t1 e_v`; every
/// other basis vector is fixed. The `v` must not themselves be listed.
pub fn x_prime(n: usize, pairs: &[(u32, u32)], p: u64, t1: u64) -> PrimeFieldMatrix {
    let mut m = PrimeFieldMatrix::identity(n, p);
    for &(u, v) in pairs {
        let mut row = vec![(u, (p - 1) % p), (v, t1 % p)];
        row.sort_unstable();
        row.retain(|&(_, x)| x != 0);
        m.rows[u as usize] = row;
    }
    m
}

#[derive(Debug, Clone)]
pub struct LinearTriple {
    pub p: u64,
    pub t1: u64,
    /// Points `[a, b, a', b']`; empty for the plain permutation triple.
    pub points: Vec<u32>,
    pub x_prime: PrimeFieldMatrix,
    pub xi: Permutation,
    pub y_perm: Permutation,
    pub x: PrimeFieldMatrix,
    pub y: PrimeFieldMatrix,
    pub z: PrimeFieldMatrix,
}

fn check_field(p: u64, t1: u64) -> Result<(), LiftError> {
    if !is_prime(p) {
        return Err(LiftError::NotPrime(p));
    }
    if !is_primitive_root(t1, p) {
        return Err(LiftError::NotPrimitive { p, t1 });
    }
    Ok(())
}

fn assemble(
    m: &HurwitzMap,
    xp: PrimeFieldMatrix,
    points: Vec<u32>,
    p: u64,
    t1: u64,
) -> Result<LinearTriple, LiftError> {
    let xi = PrimeFieldMatrix::from_permutation(m.x(), p);
    let y = PrimeFieldMatrix::from_permutation(m.y(), p);
    if !xp.pow(2).is_identity() {
        return Err(LiftError::Relation("x'^2 = 1"));
    }
    if xp.mul(&xi) != xi.mul(&xp) {
        return Err(LiftError::Relation("x' commutes with xi"));
    }
    let x = xp.mul(&xi);
    let xy = x.mul(&y);
    let z = xy.pow(6);
    let triple = LinearTriple { p, t1, points, x_prime: xp, xi: m.x().clone(), y_perm: m.y().clone(), x, y, z };
    triple.verify()?;
    Ok(triple)
}

impl LinearTriple {
    /// Checks `x^2 = y^3 = (xy)^7 = 1`, `xyz = 1` and `det x = det y = 1`.
    pub fn verify(&self) -> Result<(), LiftError> {
        if !self.x.pow(2).is_identity() {
            return Err(LiftError::Relation("x^2 = 1"));
        }
        if !self.y.pow(3).is_identity() {
            return Err(LiftError::Relation("y^3 = 1"));
        }
        let xy = self.x.mul(&self.y);
        if !xy.pow(7).is_identity() {
            return Err(LiftError::Relation("(xy)^7 = 1"));
        }
        if !xy.mul(&self.z).is_identity() {
            return Err(LiftError::Relation("xyz = 1"));
        }
        let one = 1 % self.p;
        if self.x.det() != one {
            return Err(LiftError::Relation("det x = 1"));
        }
        if self.y.det() != one {
            return Err(LiftError::Relation("det y = 1"));
        }
        if self.z.det() != one {
            return Err(LiftError::Relation("det z = 1"));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.x.n()
    }

    /// Cycle count of `xi y`, whose permutation matrix is conjugate to `xy`.
    pub fn xi_y_cycles(&self) -> usize {
        (&self.xi * &self.y_perm).num_cycles()
    }
}

/// The unmodified triple `x = xi`.
pub fn permutation_triple(m: &HurwitzMap, p: u64) -> Result<LinearTriple, LiftError> {
    if !is_prime(p) {
        return Err(LiftError::NotPrime(p));
    }
    assemble(m, PrimeFieldMatrix::identity(m.n(), p), Vec::new(), p, 1)
}

/// Checks that `[a, b, a', b']` are fixed points of x with `b = a xy` and
/// `b' = a' xy`.
pub fn valid_lift_points(m: &HurwitzMap, pts: [u32; 4]) -> bool {
    let xy = m.xy();
    let distinct = (0..4).all(|i| (i + 1..4).all(|j| pts[i] != pts[j]));
    distinct
        && pts.iter().all(|&q| (q as usize) < m.n() && m.x().apply(q as usize) == q as usize)
        && xy.apply(pts[0] as usize) == pts[1] as usize
        && xy.apply(pts[2] as usize) == pts[3] as usize
}

pub fn build_linear_triple(m: &HurwitzMap, pts: [u32; 4], p: u64, t1: u64) -> Result<LinearTriple, LiftError> {
    check_field(p, t1)?;
    if !valid_lift_points(m, pts) {
        return Err(LiftError::BadPoints(pts));
    }
    let [a, b, a2, b2] = pts;
    let xp = x_prime(m.n(), &[(a, a2), (b, b2)], p, t1);
    assemble(m, xp, pts.to_vec(), p, t1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimPosition {
    pub position: Position,
    pub dims: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimEvidence {
    /// Fixed-space dimensions of x and y, and for z the cycle count of `xi y`.
    pub positions: Vec<DimPosition>,
    /// Fixed-space dimensions of the z matrices themselves.
    pub z_matrix_dims: [usize; 2],
}

impl DimEvidence {
    pub fn passed(&self) -> bool {
        self.positions.iter().all(|d| d.dims[0] != d.dims[1])
    }
}

pub fn beauville_dims(t1: &LinearTriple, t2: &LinearTriple) -> Result<DimEvidence, LiftError> {
    let positions = vec![
        DimPosition { position: Position::X, dims: [fixed_space_dim(&t1.x), fixed_space_dim(&t2.x)] },
        DimPosition { position: Position::Y, dims: [fixed_space_dim(&t1.y), fixed_space_dim(&t2.y)] },
        DimPosition { position: Position::Z, dims: [t1.xi_y_cycles(), t2.xi_y_cycles()] },
    ];
    let z_matrix_dims = [fixed_space_dim(&t1.z), fixed_space_dim(&t2.z)];
    if let Some(d) = positions.iter().find(|d| d.dims[0] == d.dims[1]) {
        return Err(LiftError::Coincidence(d.position));
    }
    Ok(DimEvidence { positions, z_matrix_dims })
}

/// The two free (1)-handles of the first G copy in the stock that has two.
pub fn lift_points(built: &BuiltPair) -> Option<[u32; 4]> {
    let free: Vec<_> = built.pair.w1.handles(1).into_iter().filter(|h| built.pair.w2.handles(1).contains(h)).collect();
    built.base.g_copies.iter().find_map(|g| {
        let mut hs = free.iter().filter(|h| g.contains(&h.min_point()));
        let (h1, h2) = (hs.next()?, hs.next()?);
        Some([h1.a, h1.b, h2.a, h2.b])
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LiftReport {
    pub plan: ConstructionPlan,
    pub degree: usize,
    pub p: u64,
    pub t1: u64,
    pub points: [u32; 4],
    pub relations: Vec<String>,
    pub dims: DimEvidence,
    pub pair: MapPair,
    pub generation_certified: bool,
}

pub const VERIFIED_RELATIONS: [&str; 9] = [
    "x'^2 = 1",
    "x' commutes with xi",
    "x^2 = 1",
    "y^3 = 1",
    "(xy)^7 = 1",
    "xyz = 1",
    "det x = 1",
    "det y = 1",
    "det z = 1",
];

/// Lifts both members of a pair at the given points.
pub fn lift_pair(
    pair: &MapPair,
    pts: [u32; 4],
    p: u64,
    t1: u64,
) -> Result<(LinearTriple, LinearTriple, DimEvidence), LiftError> {
    let a = build_linear_triple(&pair.w1, pts, p, t1)?;
    let b = build_linear_triple(&pair.w2, pts, p, t1)?;
    let dims = beauville_dims(&a, &b)?;
    Ok((a, b, dims))
}

/// Lifts the pair of `plan`, adding G copies to the stock until some copy
/// keeps two free (1)-handles.
pub fn lift_plan(plan: &ConstructionPlan, p: u64, t1: u64) -> Result<LiftReport, LiftError> {
    check_field(p, t1)?;
    for extra_g in plan.extra_g..=plan.extra_g + 3 {
        let plan_g = plan.with_extra_g(extra_g)?;
        let built = build_pair(&plan_g)?;
        let Some(points) = lift_points(&built) else { continue };
        let (_, _, dims) = lift_pair(&built.pair, points, p, t1)?;
        let relations: Vec<String> = VERIFIED_RELATIONS.iter().map(|s| s.to_string()).collect();
        return Ok(LiftReport {
            plan: plan_g,
            degree: built.pair.degree(),
            p,
            t1,
            points,
            relations,
            dims,
            pair: built.pair,
            generation_certified: false,
        });
    }
    Err(LiftError::NoLiftHandles)
}

/// Least primitive root mod `p` (1 for p = 2).
pub fn least_primitive_root(p: u64) -> Option<u64> {
    (1..p.max(2)).find(|&t| is_primitive_root(t, p))
}
