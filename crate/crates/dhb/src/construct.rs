//! Stock maps, the fourteen V_r, the markers X_1 and X_2, and paired maps
//! W_1, W_2 for every residue class of the degree mod 14.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atlas::{basic_map, BasicMapId};
use crate::compose::{
    eval_expr_traced, k_compose, merge_law_check, parse_expr, useful_persists, ComposeError, JoinStep,
};
use crate::map::{Handle, HurwitzMap};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error("no free (1)-handle left in the {0}")]
    NoFreeHandle(&'static str),
    #[error("W_{member}: coprimality: p = {prime} is not coprime to cycle length {length}")]
    NotCoprime { member: u8, length: usize, prime: u64 },
    #[error("W_{member}: prime cycle: no w-cycle of length p = {prime}")]
    MissingPrimeCycle { member: u8, prime: u64 },
    #[error("r = {r} rejected: the small-degree cycle length {length} is divisible by the prime {prime}")]
    SmallCaseRejected { r: u8, length: usize, prime: u64 },
}

/// One row of the table of maps V_r: the expression, its degree, the pair
/// `1, l_r` at the unused (1)-handle, the remaining cycle lengths, the
/// certifying prime `p_r` and `l'_r = l_r + 13`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VRow {
    pub r: u8,
    pub expr: &'static str,
    pub degree: usize,
    pub l: usize,
    pub rest: &'static [usize],
    pub prime: u64,
    pub l_prime: usize,
}

impl VRow {
    /// Full w cycle type: `1, l_r` followed by the rest, sorted.
    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut v = vec![1, self.l];
        v.extend_from_slice(self.rest);
        v.sort_unstable();
        v
    }
}

const fn t3(
    r: u8,
    expr: &'static str,
    degree: usize,
    l: usize,
    rest: &'static [usize],
    prime: u64,
    l_prime: usize,
) -> VRow {
    VRow { r, expr, degree, l, rest, prime, l_prime }
}

pub const V_ROWS: [VRow; 14] = [
    t3(0, "H", 42, 10, &[3, 11, 17], 17, 23),
    t3(1, "B(3)H", 57, 10, &[3, 5, 14, 24], 5, 23),
    t3(2, "F(2)E(1)G(1)H", 142, 13, &[2, 2, 3, 11, 17, 22, 23, 24, 24], 17, 26),
    t3(3, "E(2)I(2)F", 115, 9, &[4, 10, 17, 22, 22, 30], 17, 22),
    t3(4, "J(1)K", 144, 11, &[2, 5, 10, 16, 17, 22, 60], 17, 24),
    t3(5, "C(3)N(1)E(2)F", 187, 17, &[2, 8, 18, 20, 24, 24, 30, 43], 43, 30),
    t3(6, "B(3)C(1)G(1)M(2)F", 216, 13, &[2, 2, 5, 8, 11, 12, 14, 24, 26, 34, 64], 5, 26),
    t3(7, "C(1)E(2)E", 77, 9, &[2, 4, 8, 17, 18, 18], 17, 22),
    t3(8, "B(3)C", 36, 11, &[5, 8, 11], 5, 24),
    t3(9, "C(3)H(1)J", 135, 11, &[1, 2, 3, 8, 10, 16, 19, 21, 21, 22], 19, 24),
    t3(10, "B(3)C(1)G(1)E(2)F", 136, 13, &[2, 2, 5, 8, 11, 22, 24, 24, 24], 5, 26),
    t3(11, "C(1)J(1)J", 165, 11, &[2, 2, 4, 8, 10, 10, 16, 16, 19, 22, 22, 22], 19, 24),
    t3(12, "J(1)M", 180, 11, &[2, 10, 12, 14, 16, 19, 22, 26, 47], 47, 24),
    t3(13, "F(2)I(2)M", 195, 51, &[4, 10, 12, 14, 23, 26, 26, 28], 23, 64),
];

/// Least degrees covered in each residue class by the standard recipes.
pub const MINIMAL_DEGREES: [usize; 14] = [294, 589, 394, 367, 396, 439, 510, 329, 540, 457, 430, 459, 432, 447];

pub const SMALL_DEGREES: [(u8, usize); 11] =
    [(0, 252), (1, 267), (2, 352), (3, 325), (5, 397), (7, 287), (8, 246), (9, 345), (11, 375), (12, 390), (13, 405)];

pub const S3_DEGREES: [(u8, usize); 5] = [(1, 547), (6, 468), (9, 415), (10, 388), (11, 417)];

fn shifted_partner(r: u8) -> Option<u8> {
    match r {
        6 => Some(13),
        9 => Some(2),
        10 => Some(3),
        11 => Some(4),
        _ => None,
    }
}

/// A map together with the region of labels occupied by its stock part.
#[derive(Debug, Clone)]
pub struct Stock {
    pub map: HurwitzMap,
    /// Label ranges of the G copies, in chain order.
    pub g_copies: Vec<Range<u32>>,
}

/// Outcome of one join performed during a construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct JoinRecord {
    pub k: u8,
    pub left_degree: usize,
    pub right_degree: usize,
    pub merge_law: bool,
    pub useful_persisted: bool,
}

impl JoinRecord {
    fn of(d: &HurwitzMap, h: &Handle, d2: &HurwitzMap, h2: &Handle, result: &HurwitzMap) -> Self {
        JoinRecord {
            k: h.k,
            left_degree: d.n(),
            right_degree: d2.n(),
            merge_law: merge_law_check(d, h, d2, h2, result).passed,
            useful_persisted: useful_persists(&[(d, 0), (d2, d.n() as u32)], result),
        }
    }

    fn from_step(step: &JoinStep) -> Self {
        JoinRecord::of(&step.left, &step.left_handle, &step.right, &step.right_handle, &step.result)
    }
}

fn join(
    log: &mut Vec<JoinRecord>,
    d: &HurwitzMap,
    h: &Handle,
    d2: &HurwitzMap,
    h2: &Handle,
) -> Result<HurwitzMap, ConstructError> {
    let result = k_compose(d, h, d2, h2)?;
    log.push(JoinRecord::of(d, h, d2, h2, &result));
    Ok(result)
}

fn first_free(m: &HurwitzMap, k: u8, region: &Range<u32>) -> Option<Handle> {
    m.handles(k).into_iter().find(|h| region.contains(&h.min_point()))
}

fn first_handle(m: &HurwitzMap, k: u8) -> Result<Handle, ConstructError> {
    m.handles(k).first().copied().ok_or(ConstructError::NoFreeHandle("attached piece"))
}

/// Chain of `copies` G maps joined by (1)-handles, each new copy attached to
/// the previous one.
fn chain_g(copies: u32, log: &mut Vec<JoinRecord>) -> Result<Stock, ConstructError> {
    let g = basic_map(BasicMapId::G);
    let mut map = g.clone();
    let first = 0..g.n() as u32;
    let mut g_copies = vec![first];
    for _ in 1..copies {
        let last = g_copies.last().expect("at least one copy").clone();
        let h = first_free(&map, 1, &last).ok_or(ConstructError::NoFreeHandle("G chain"))?;
        let start = map.n() as u32;
        map = join(log, &map, &h, g, &first_handle(g, 1)?)?;
        g_copies.push(start..start + g.n() as u32);
    }
    Ok(Stock { map, g_copies })
}

fn stock_with_extra(s: u32, extra_g: u32, log: &mut Vec<JoinRecord>) -> Result<Stock, ConstructError> {
    if s < 3 {
        return Err(ConstructError::InvalidPlan(format!("stock parameter s = {s} must be at least 3")));
    }
    let mut stock = chain_g(s / 3 + extra_g, log)?;
    let tail = match s % 3 {
        1 => Some(BasicMapId::A),
        2 => Some(BasicMapId::E),
        _ => None,
    };
    if let Some(id) = tail {
        let region = 0..stock.map.n() as u32;
        let h = first_free(&stock.map, 1, &region).ok_or(ConstructError::NoFreeHandle("stock"))?;
        let piece = basic_map(id);
        stock.map = join(log, &stock.map, &h, piece, &first_handle(piece, 1)?)?;
    }
    Ok(stock)
}

/// The stock map U_s of degree 14s.
pub fn stock_u(s: u32) -> Result<HurwitzMap, ConstructError> {
    Ok(stock_with_extra(s, 0, &mut Vec::new())?.map)
}

/// V_r with its designated unused (1)-handle.
#[derive(Debug, Clone)]
pub struct VMap {
    pub r: u8,
    pub map: HurwitzMap,
    pub handle: Handle,
    pub joins: Vec<JoinStep>,
}

/// Evaluates the row's expression; the designated handle is the last free
/// (1)-handle, which belongs to the most recently attached basic map.
pub fn v_map(r: u8) -> Result<VMap, ConstructError> {
    let row = V_ROWS.get(r as usize).ok_or_else(|| ConstructError::InvalidPlan(format!("r = {r} is not in 0..13")))?;
    let (map, joins) = eval_expr_traced(&parse_expr(row.expr)?)?;
    let handle = *map.handles(1).last().ok_or(ConstructError::NoFreeHandle("V_r"))?;
    Ok(VMap { r, map, handle, joins })
}

/// X_1 = 4G + 3A and X_2 = L(2)M, both of degree 210.
pub fn x_map(i: u8) -> Result<HurwitzMap, ConstructError> {
    x_map_logged(i, &mut Vec::new())
}

fn x_map_logged(i: u8, log: &mut Vec<JoinRecord>) -> Result<HurwitzMap, ConstructError> {
    match i {
        1 => {
            let mut stock = chain_g(4, log)?;
            let region = 0..stock.map.n() as u32;
            let a = basic_map(BasicMapId::A);
            for _ in 0..3 {
                let h = first_free(&stock.map, 1, &region).ok_or(ConstructError::NoFreeHandle("4G"))?;
                stock.map = join(log, &stock.map, &h, a, &first_handle(a, 1)?)?;
            }
            Ok(stock.map)
        }
        2 => {
            let (m, steps) = eval_expr_traced(&parse_expr("L(2)M")?)?;
            log.extend(steps.iter().map(JoinRecord::from_step));
            Ok(m)
        }
        _ => Err(ConstructError::InvalidPlan(format!("X_{i} does not exist"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Standard,
    Shifted,
    R1Special,
    R8Special,
    SmallN,
    S3Shortcut,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Standard => "standard",
            Variant::Shifted => "shifted",
            Variant::R1Special => "r1-special",
            Variant::R8Special => "r8-special",
            Variant::SmallN => "small-n",
            Variant::S3Shortcut => "s3-shortcut",
        })
    }
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "standard" => Variant::Standard,
            "shifted" => Variant::Shifted,
            "r1-special" => Variant::R1Special,
            "r8-special" => Variant::R8Special,
            "small-n" => Variant::SmallN,
            "s3-shortcut" => Variant::S3Shortcut,
            _ => return Err(format!("unknown variant {s}")),
        })
    }
}

/// Which recipe to follow for a residue class `r` and stock parameter `s`.
///
/// `extra_g` appends further copies of G to the stock chain; it is used to
/// make room for later adjustments and adds `42 * extra_g` to the degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConstructionPlan {
    pub r: u8,
    pub s: u32,
    pub variant: Variant,
    pub extra_g: u32,
}

impl ConstructionPlan {
    pub fn new(r: u8, s: u32, variant: Variant) -> Result<Self, ConstructError> {
        let plan = ConstructionPlan { r, s, variant, extra_g: 0 };
        plan.validate()?;
        Ok(plan)
    }

    /// The default variant for `r` with stock parameter `s`.
    pub fn for_class(r: u8, s: u32) -> Result<Self, ConstructError> {
        let variant = match r {
            1 => Variant::R1Special,
            8 => Variant::R8Special,
            6 | 9 | 10 | 11 => Variant::Shifted,
            0..=13 => Variant::Standard,
            _ => return Err(ConstructError::InvalidPlan(format!("r = {r} is not in 0..13"))),
        };
        ConstructionPlan::new(r, s, variant)
    }

    /// The plan attaining the least degree in class `r`.
    pub fn minimal(r: u8) -> Result<Self, ConstructError> {
        let s = match r {
            1 | 6 | 9 | 10 | 11 => 6,
            _ => 3,
        };
        ConstructionPlan::for_class(r, s)
    }

    pub fn small(r: u8) -> Result<Self, ConstructError> {
        ConstructionPlan::new(r, 0, Variant::SmallN)
    }

    pub fn s3_shortcut(r: u8) -> Result<Self, ConstructError> {
        ConstructionPlan::new(r, 3, Variant::S3Shortcut)
    }

    pub fn with_extra_g(self, extra_g: u32) -> Result<Self, ConstructError> {
        let plan = ConstructionPlan { extra_g, ..self };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<(), ConstructError> {
        let bad = |msg: String| Err(ConstructError::InvalidPlan(msg));
        let (r, s) = (self.r, self.s);
        if r > 13 {
            return bad(format!("r = {r} is not in 0..13"));
        }
        match self.variant {
            Variant::Standard if ![0, 2, 3, 4, 5, 7, 12, 13].contains(&r) => {
                bad(format!("the standard recipe does not certify r = {r}"))
            }
            Variant::Standard | Variant::R8Special if s < 3 => bad(format!("s = {s} must be at least 3")),
            Variant::Shifted if shifted_partner(r).is_none() => {
                bad(format!("the shifted recipe needs r in {{6, 9, 10, 11}}, got {r}"))
            }
            Variant::Shifted | Variant::R1Special if s < 4 => {
                bad(format!("s = {s} must be at least 4 (use the s3-shortcut variant for s = 3)"))
            }
            Variant::R1Special if r != 1 => bad(format!("the r1-special recipe needs r = 1, got {r}")),
            Variant::R8Special if r != 8 => bad(format!("the r8-special recipe needs r = 8, got {r}")),
            Variant::SmallN if s != 0 || self.extra_g != 0 => bad("small-n plans have no stock (s = 0)".into()),
            Variant::SmallN if [4, 6, 10].contains(&r) => bad(format!(
                "small-n is excluded for r = {r}: the small-degree cycle length {} is divisible by the prime {}",
                V_ROWS[r as usize].l + 57,
                V_ROWS[r as usize].prime
            )),
            Variant::S3Shortcut if ![1, 6, 9, 10, 11].contains(&r) => {
                bad(format!("the s3-shortcut recipe needs r in {{1, 6, 9, 10, 11}}, got {r}"))
            }
            Variant::S3Shortcut if s != 3 => bad(format!("the s3-shortcut recipe needs s = 3, got {s}")),
            _ => Ok(()),
        }
    }

    /// Stock parameter actually used, `s*`.
    pub fn stock_s(&self) -> u32 {
        match self.variant {
            Variant::Shifted | Variant::R1Special if self.s == 4 || self.s == 5 => self.s + 3,
            Variant::SmallN => 0,
            _ => self.s,
        }
    }

    /// Index of the V map used, `r*` for the shifted recipes.
    pub fn v_index(&self) -> u8 {
        match (self.variant, self.r) {
            (Variant::R1Special, _) | (Variant::S3Shortcut, 1) => 5,
            (Variant::R8Special, _) => 12,
            (Variant::Shifted, r) | (Variant::S3Shortcut, r) => shifted_partner(r).unwrap_or(r),
            (_, r) => r,
        }
    }

    pub fn expected_prime(&self) -> u64 {
        match self.variant {
            Variant::R8Special => 83,
            _ => V_ROWS[self.v_index() as usize].prime,
        }
    }

    pub fn expected_degree(&self) -> usize {
        let d = V_ROWS[self.v_index() as usize].degree;
        let stock = 14 * self.stock_s() as usize + 42 * self.extra_g as usize;
        let extra = match (self.variant, self.r) {
            (Variant::R1Special, _) | (Variant::S3Shortcut, 1) => 108,
            (Variant::R8Special, _) => 108,
            (Variant::Shifted, _) | (Variant::S3Shortcut, _) => 21,
            _ => 0,
        };
        stock + d + extra + 210
    }
}

impl fmt::Display for ConstructionPlan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r={} s={} {}", self.r, self.s, self.variant)?;
        if self.extra_g > 0 {
            write!(f, " +{}G", self.extra_g)?;
        }
        Ok(())
    }
}

/// W before the markers are attached.
#[derive(Debug, Clone)]
pub struct BaseMap {
    pub map: HurwitzMap,
    /// Labels of the stock part (empty for small-n plans).
    pub stock: Range<u32>,
    pub g_copies: Vec<Range<u32>>,
    /// Handle at which the markers X_i are attached.
    pub marker_handle: Handle,
    pub joins: Vec<JoinRecord>,
}

impl BaseMap {
    pub fn free_stock_handles(&self) -> Vec<Handle> {
        self.map.handles(1).into_iter().filter(|h| self.stock.contains(&h.min_point())).collect()
    }
}

fn attach_at_stock(
    log: &mut Vec<JoinRecord>,
    w: &HurwitzMap,
    stock: &Range<u32>,
    piece: &HurwitzMap,
    k: u8,
) -> Result<HurwitzMap, ConstructError> {
    let h = first_free(w, k, stock).ok_or(ConstructError::NoFreeHandle("stock"))?;
    join(log, w, &h, piece, &first_handle(piece, k)?)
}

pub fn build_base(plan: &ConstructionPlan) -> Result<BaseMap, ConstructError> {
    plan.validate()?;
    let v = v_map(plan.v_index())?;
    let mut joins: Vec<JoinRecord> = v.joins.iter().map(JoinRecord::from_step).collect();
    if plan.variant == Variant::SmallN {
        return Ok(BaseMap { marker_handle: v.handle, map: v.map, stock: 0..0, g_copies: Vec::new(), joins });
    }
    let stock = stock_with_extra(plan.stock_s(), plan.extra_g, &mut joins)?;
    let region = 0..stock.map.n() as u32;
    let h = first_free(&stock.map, 1, &region).ok_or(ConstructError::NoFreeHandle("stock"))?;
    let mut w = join(&mut joins, &stock.map, &h, &v.map, &v.handle)?;
    match (plan.variant, plan.r) {
        (Variant::Shifted, _) | (Variant::S3Shortcut, 6 | 9 | 10 | 11) => {
            w = attach_at_stock(&mut joins, &w, &region, basic_map(BasicMapId::C), 1)?;
        }
        (Variant::R1Special, _) | (Variant::S3Shortcut, 1) => {
            w = attach_at_stock(&mut joins, &w, &region, basic_map(BasicMapId::M), 1)?;
        }
        (Variant::R8Special, _) => {
            let v_region = region.end..region.end + v.map.n() as u32;
            let h2 = first_free(&w, 2, &v_region).ok_or(ConstructError::NoFreeHandle("V_12"))?;
            let m = basic_map(BasicMapId::M);
            w = join(&mut joins, &w, &h2, m, &first_handle(m, 2)?)?;
        }
        _ => {}
    }
    let marker_handle = first_free(&w, 1, &region).ok_or(ConstructError::NoFreeHandle("stock"))?;
    Ok(BaseMap { map: w, stock: region, g_copies: stock.g_copies, marker_handle, joins })
}

/// Two maps of equal degree whose fixed point vectors differ everywhere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapPair {
    pub w1: HurwitzMap,
    pub w2: HurwitzMap,
}

impl MapPair {
    pub fn degree(&self) -> usize {
        self.w1.n()
    }

    pub fn member(&self, i: u8) -> &HurwitzMap {
        if i == 1 {
            &self.w1
        } else {
            &self.w2
        }
    }

    pub fn v_difference(&self) -> [i64; 3] {
        self.w1.fixed_point_vector().difference(&self.w2.fixed_point_vector())
    }
}

#[derive(Debug, Clone)]
pub struct BuiltPair {
    pub plan: ConstructionPlan,
    pub pair: MapPair,
    pub prime: u64,
    pub base: BaseMap,
}

/// Attaches X_1 and X_2 to copies of W at the marker handle.
pub fn build_pair_unchecked(plan: &ConstructionPlan) -> Result<BuiltPair, ConstructError> {
    let mut base = build_base(plan)?;
    let mut members = Vec::with_capacity(2);
    for i in [1, 2] {
        let x = x_map_logged(i, &mut base.joins)?;
        members.push(join(&mut base.joins, &base.map, &base.marker_handle, &x, &first_handle(&x, 1)?)?);
    }
    let w2 = members.pop().expect("two members");
    let w1 = members.pop().expect("two members");
    Ok(BuiltPair { plan: *plan, pair: MapPair { w1, w2 }, prime: plan.expected_prime(), base })
}

/// Checks that `p` divides exactly one w-cycle length, which equals `p`.
pub fn coprimality(m: &HurwitzMap, p: u64, member: u8) -> Result<(), ConstructError> {
    let ct = m.w_cycles().cycle_type();
    let mut hits = ct.lengths().iter().filter(|&&l| (l as u64).is_multiple_of(p));
    let first = hits.next();
    if let Some(&other) = hits.next().or(first.filter(|&&l| l as u64 != p)) {
        return Err(ConstructError::NotCoprime { member, length: other, prime: p });
    }
    if first.is_none() {
        return Err(ConstructError::MissingPrimeCycle { member, prime: p });
    }
    Ok(())
}

pub fn build_pair(plan: &ConstructionPlan) -> Result<BuiltPair, ConstructError> {
    let built = build_pair_unchecked(plan)?;
    for (i, m) in [(1, &built.pair.w1), (2, &built.pair.w2)] {
        coprimality(m, built.prime, i)?;
    }
    Ok(built)
}

/// W = V_r with the markers attached directly; r = 4, 6, 10 are rejected
/// with the offending cycle length found in W_2.
pub fn small_case(r: u8) -> Result<BuiltPair, ConstructError> {
    if [4, 6, 10].contains(&r) {
        let plan = ConstructionPlan { r, s: 0, variant: Variant::SmallN, extra_g: 0 };
        let v = v_map(r)?;
        let x2 = x_map(2)?;
        let w2 = k_compose(&v.map, &v.handle, &x2, &first_handle(&x2, 1)?)?;
        let prime = plan.expected_prime();
        let length = w2
            .w_cycles()
            .cycle_type()
            .lengths()
            .iter()
            .copied()
            .find(|&l| (l as u64).is_multiple_of(prime) && l as u64 != prime);
        return match length {
            Some(length) => Err(ConstructError::SmallCaseRejected { r, length, prime }),
            None => Err(ConstructError::InvalidPlan(format!("r = {r}: expected obstruction not found"))),
        };
    }
    build_pair(&ConstructionPlan::small(r)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_rows_sum_to_degree() {
        for row in V_ROWS {
            assert_eq!(row.cycle_lengths().iter().sum::<usize>(), row.degree, "r = {}", row.r);
            assert_eq!(row.l_prime, row.l + 13);
            assert_eq!(row.degree % 14, row.r as usize);
        }
    }

    #[test]
    fn minimal_plan_degrees() {
        for r in 0..14u8 {
            let plan = ConstructionPlan::minimal(r).unwrap();
            assert_eq!(plan.expected_degree(), MINIMAL_DEGREES[r as usize], "r = {r}");
        }
    }

    #[test]
    fn plan_validation() {
        assert!(ConstructionPlan::new(6, 3, Variant::Standard).is_err());
        assert!(ConstructionPlan::new(6, 3, Variant::Shifted).is_err());
        assert!(ConstructionPlan::new(0, 2, Variant::Standard).is_err());
        assert!(ConstructionPlan::new(4, 0, Variant::SmallN).is_err());
        assert!(ConstructionPlan::new(0, 3, Variant::S3Shortcut).is_err());
        assert_eq!(ConstructionPlan::new(6, 4, Variant::Shifted).unwrap().stock_s(), 7);
        assert_eq!(ConstructionPlan::new(6, 6, Variant::Shifted).unwrap().stock_s(), 6);
    }

    #[test]
    fn variant_names_round_trip() {
        for v in [
            Variant::Standard,
            Variant::Shifted,
            Variant::R1Special,
            Variant::R8Special,
            Variant::SmallN,
            Variant::S3Shortcut,
        ] {
            assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
        }
    }
}
