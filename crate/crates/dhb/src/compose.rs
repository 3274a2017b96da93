//! Joining maps along handles and evaluating composition expressions.

use std::fmt;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atlas::{basic_map, BasicMapId};
use crate::map::{Handle, HurwitzMap, MapError, WCycles};
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComposeError {
    #[error("handle kinds differ: ({0}) vs ({1})")]
    KindMismatch(u8, u8),
    #[error("({k})-handle {{{a}, {b}}} is not a reflection-compatible handle of its map")]
    NotAHandle { k: u8, a: u32, b: u32 },
    #[error("handles share a point")]
    Overlapping,
    #[error("no free ({k})-handle on the {side} operand of join {join}")]
    NoHandle { k: u8, side: &'static str, join: usize },
    #[error("composition expression, byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error(transparent)]
    Map(#[from] MapError),
}

fn check_handle(m: &HurwitzMap, h: &Handle) -> Result<(), ComposeError> {
    let ok = (1..=3).contains(&h.k) && m.handles(h.k).iter().any(|g| g.a == h.a && g.b == h.b);
    if ok {
        Ok(())
    } else {
        Err(ComposeError::NotAHandle { k: h.k, a: h.a, b: h.b })
    }
}

fn pair(images: &mut [u32], u: u32, v: u32) {
    images[u as usize] = v;
    images[v as usize] = u;
}

/// `D(k)D'`: D keeps its labels, D' is shifted by `|D|`, and x gains the
/// 2-cycles `(a, a')` and `(b, b')`.
pub fn k_compose(d: &HurwitzMap, h: &Handle, d2: &HurwitzMap, h2: &Handle) -> Result<HurwitzMap, ComposeError> {
    if h.k != h2.k {
        return Err(ComposeError::KindMismatch(h.k, h2.k));
    }
    check_handle(d, h)?;
    check_handle(d2, h2)?;
    let n = d.n() as u32;
    let mut x = d.x().direct_sum(d2.x());
    let y = d.y().direct_sum(d2.y());
    let t = d.t().direct_sum(d2.t());
    pair(x.images_mut(), h.a, h2.a + n);
    pair(x.images_mut(), h.b, h2.b + n);
    Ok(HurwitzMap::new(x, y, t)?)
}

/// Joins two disjoint handles of one map to each other.
pub fn self_join(d: &HurwitzMap, h: &Handle, h2: &Handle) -> Result<HurwitzMap, ComposeError> {
    if h.k != h2.k {
        return Err(ComposeError::KindMismatch(h.k, h2.k));
    }
    check_handle(d, h)?;
    check_handle(d, h2)?;
    if h.shares_point(h2) {
        return Err(ComposeError::Overlapping);
    }
    let mut x = d.x().clone();
    pair(x.images_mut(), h.a, h2.a);
    pair(x.images_mut(), h.b, h2.b);
    Ok(HurwitzMap::new(x, d.y().clone(), d.t().clone())?)
}

/// Composition expression: chains such as `F(2)E(1)G(1)H`, with `mG`
/// standing for `m` copies of G chained by (1)-handles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Expr {
    Atom(BasicMapId),
    Repeat(u32, BasicMapId),
    Join(Box<Expr>, u8, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Atom(id) => write!(f, "{id}"),
            Expr::Repeat(m, id) => write!(f, "{m}{id}"),
            Expr::Join(l, k, r) => write!(f, "{l}({k}){r}"),
        }
    }
}

pub const MAX_REPEAT: u32 = 1000;

pub fn parse_expr(text: &str) -> Result<Expr, ComposeError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let err = |pos: usize, msg: &str| ComposeError::Parse { pos, msg: msg.to_string() };
    let skip = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let term = |pos: &mut usize| -> Result<Expr, ComposeError> {
        skip(pos);
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        let count = if *pos > start {
            let m: u32 = text[start..*pos].parse().map_err(|_| err(start, "repeat count too large"))?;
            if m == 0 || m > MAX_REPEAT {
                return Err(err(start, "repeat count out of range"));
            }
            Some(m)
        } else {
            None
        };
        let id = bytes
            .get(*pos)
            .and_then(|&c| BasicMapId::from_letter(c as char))
            .ok_or_else(|| err(*pos, "expected a basic map letter A-N"))?;
        *pos += 1;
        Ok(match count {
            Some(m) if m > 1 => Expr::Repeat(m, id),
            _ => Expr::Atom(id),
        })
    };
    let mut expr = term(&mut pos)?;
    loop {
        skip(&mut pos);
        if pos == bytes.len() {
            return Ok(expr);
        }
        if bytes[pos] != b'(' {
            return Err(err(pos, "expected '(' introducing a join"));
        }
        let k = match bytes.get(pos + 1) {
            Some(c @ b'1'..=b'3') => c - b'0',
            _ => return Err(err(pos + 1, "join kind must be 1, 2 or 3")),
        };
        if bytes.get(pos + 2) != Some(&b')') {
            return Err(err(pos + 2, "expected ')'"));
        }
        pos += 3;
        let rhs = term(&mut pos)?;
        expr = Expr::Join(Box::new(expr), k, Box::new(rhs));
    }
}

/// One join performed while evaluating an expression.
#[derive(Debug, Clone)]
pub struct JoinStep {
    pub left: HurwitzMap,
    pub left_handle: Handle,
    pub right: HurwitzMap,
    pub right_handle: Handle,
    pub result: HurwitzMap,
}

/// Picks the first free handle lying in `region`, else the first anywhere.
pub fn handle_in_region(m: &HurwitzMap, k: u8, region: &Range<u32>) -> Option<Handle> {
    let hs = m.handles(k);
    hs.iter().find(|h| region.contains(&h.min_point())).or_else(|| hs.first()).copied()
}

struct Evaluated {
    map: HurwitzMap,
    last: Range<u32>,
}

fn eval_inner(e: &Expr, steps: &mut Vec<JoinStep>) -> Result<Evaluated, ComposeError> {
    match e {
        Expr::Atom(id) => {
            let map = basic_map(*id).clone();
            let last = 0..map.n() as u32;
            Ok(Evaluated { map, last })
        }
        Expr::Repeat(m, id) => {
            let mut acc = eval_inner(&Expr::Atom(*id), steps)?;
            for _ in 1..*m {
                acc = join_evaluated(acc, 1, eval_inner(&Expr::Atom(*id), steps)?, steps)?;
            }
            Ok(acc)
        }
        Expr::Join(l, k, r) => {
            let left = eval_inner(l, steps)?;
            let right = eval_inner(r, steps)?;
            join_evaluated(left, *k, right, steps)
        }
    }
}

fn join_evaluated(
    left: Evaluated,
    k: u8,
    right: Evaluated,
    steps: &mut Vec<JoinStep>,
) -> Result<Evaluated, ComposeError> {
    let join = steps.len() + 1;
    let lh = handle_in_region(&left.map, k, &left.last).ok_or(ComposeError::NoHandle { k, side: "left", join })?;
    let rh = *right.map.handles(k).first().ok_or(ComposeError::NoHandle { k, side: "right", join })?;
    let result = k_compose(&left.map, &lh, &right.map, &rh)?;
    let n = left.map.n() as u32;
    let last = right.last.start + n..right.last.end + n;
    steps.push(JoinStep {
        left: left.map,
        left_handle: lh,
        right: right.map,
        right_handle: rh,
        result: result.clone(),
    });
    Ok(Evaluated { map: result, last })
}

/// Evaluates an expression left to right. Each join uses the first free
/// handle of the most recently attached basic map on the left (falling
/// back to the first free handle anywhere) and the first free handle of
/// the right operand.
pub fn eval_expr(e: &Expr) -> Result<HurwitzMap, ComposeError> {
    Ok(eval_inner(e, &mut Vec::new())?.map)
}

/// As [`eval_expr`], also returning every join performed.
pub fn eval_expr_traced(e: &Expr) -> Result<(HurwitzMap, Vec<JoinStep>), ComposeError> {
    let mut steps = Vec::new();
    let ev = eval_inner(e, &mut steps)?;
    Ok((ev.map, steps))
}

pub fn eval_str(text: &str) -> Result<HurwitzMap, ComposeError> {
    eval_expr(&parse_expr(text)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MergeCase {
    NeitherShares,
    LeftShares,
    RightShares,
    BothShare,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeVerdict {
    pub case: MergeCase,
    pub merged_lengths: Vec<usize>,
    pub passed: bool,
}

/// The segment of `p`'s w-cycle that starts after `from` and ends at `p`.
fn segment(wc: &WCycles, w: &Permutation, from: u32, p: u32, offset: u32) -> Vec<u32> {
    debug_assert!(wc.same_cycle(from, p));
    let mut out = Vec::new();
    let mut cur = w.apply(from as usize) as u32;
    loop {
        out.push(cur + offset);
        if cur == p {
            return out;
        }
        cur = w.apply(cur as usize) as u32;
    }
}

/// Checks the w-cycles of `result = k_compose(d, h, d2, h2)` against the
/// predicted concatenations, insertions and splits.
pub fn merge_law_check(d: &HurwitzMap, h: &Handle, d2: &HurwitzMap, h2: &Handle, result: &HurwitzMap) -> MergeVerdict {
    let n = d.n() as u32;
    let (w1, w2, w) = (d.w(), d2.w(), result.w());
    let (c1, c2) = (d.w_cycles(), d2.w_cycles());
    let left_shares = c1.same_cycle(h.a, h.b);
    let right_shares = c2.same_cycle(h2.a, h2.b);
    // A cycle "ending at p" when p's cycle is not shared is the whole cycle.
    let whole = |wc: &WCycles, wp: &Permutation, p: u32, off: u32| segment(wc, wp, p, p, off);
    let (ca, cb) = if left_shares {
        (segment(&c1, &w1, h.b, h.a, 0), segment(&c1, &w1, h.a, h.b, 0))
    } else {
        (whole(&c1, &w1, h.a, 0), whole(&c1, &w1, h.b, 0))
    };
    let (ca2, cb2) = if right_shares {
        (segment(&c2, &w2, h2.b, h2.a, n), segment(&c2, &w2, h2.a, h2.b, n))
    } else {
        (whole(&c2, &w2, h2.a, n), whole(&c2, &w2, h2.b, n))
    };
    let cat = |parts: &[&Vec<u32>]| parts.iter().flat_map(|p| p.iter().copied()).collect::<Vec<u32>>();
    let (case, predicted) = match (left_shares, right_shares) {
        (false, false) => (MergeCase::NeitherShares, vec![cat(&[&ca, &ca2]), cat(&[&cb, &cb2])]),
        (true, false) => (MergeCase::LeftShares, vec![cat(&[&ca, &ca2, &cb, &cb2])]),
        (false, true) => (MergeCase::RightShares, vec![cat(&[&ca2, &ca, &cb2, &cb])]),
        (true, true) => (MergeCase::BothShare, vec![cat(&[&ca, &cb2]), cat(&[&cb, &ca2])]),
    };
    let mut touched = vec![false; result.n()];
    let mut passed = result.n() == d.n() + d2.n();
    if passed {
        for cyc in &predicted {
            for (i, &p) in cyc.iter().enumerate() {
                touched[p as usize] = true;
                passed &= w.apply(p as usize) as u32 == cyc[(i + 1) % cyc.len()];
            }
        }
        for (p, _) in touched.iter().enumerate().filter(|(_, &t)| !t) {
            let old = if (p as u32) < n { w1.apply(p) as u32 } else { w2.apply(p - n as usize) as u32 + n };
            passed &= w.apply(p) as u32 == old;
        }
    }
    MergeVerdict { case, merged_lengths: predicted.iter().map(Vec::len).collect(), passed }
}

/// Checks that the x-witness of every useful cycle of every operand lies in
/// a useful cycle of `result`. Each operand is paired with its label offset
/// in the result.
pub fn useful_persists(parts: &[(&HurwitzMap, u32)], result: &HurwitzMap) -> bool {
    let wc = result.w_cycles();
    let useful: Vec<usize> = result.useful_cycles().iter().map(|u| u.cycle).collect();
    parts
        .iter()
        .all(|(m, off)| m.useful_cycles().iter().all(|u| useful.contains(&wc.index[(u.x_witness + off) as usize])))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["H", "B(3)H", "F(2)E(1)G(1)H", "4G(1)A", "C(1)J(1)J"] {
            assert_eq!(parse_expr(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_expr(" B (3) C ").unwrap().to_string(), "B(3)C");
        assert_eq!(parse_expr("1G").unwrap(), Expr::Atom(BasicMapId::G));
    }

    #[test]
    fn parse_is_left_associative() {
        let e = parse_expr("A(1)B(2)C").unwrap();
        match e {
            Expr::Join(l, 2, r) => {
                assert_eq!(*r, Expr::Atom(BasicMapId::C));
                assert_eq!(l.to_string(), "A(1)B");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let cases = [("", 0), ("O", 0), ("A(4)B", 2), ("A(1", 3), ("A B", 2), ("0G", 0), ("A(1)", 4)];
        for (s, at) in cases {
            match parse_expr(s) {
                Err(ComposeError::Parse { pos, .. }) => assert_eq!(pos, at, "{s}"),
                other => panic!("{s}: {other:?}"),
            }
        }
    }
}
