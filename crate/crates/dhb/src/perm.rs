//! Permutations on `0..n` acting on the right.
//!
//! The product `p * q` maps a point `a` to `(a^p)^q`.

use std::collections::VecDeque;
use std::fmt;
use std::ops::Mul;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("image list is not a bijection on 0..{0}")]
    NotBijection(usize),
    #[error("degree must be at least 1")]
    EmptyDegree,
    #[error("odd permutation where an even one is required")]
    OddPermutation,
    #[error("empty generator list on {0} points")]
    NoGenerators(usize),
    #[error("cycle notation, byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Even,
    Odd,
}

impl Sign {
    pub fn is_even(self) -> bool {
        self == Sign::Even
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Even => '+',
            Sign::Odd => '-',
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Even
        } else {
            Sign::Odd
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Permutation {
    images: Vec<u32>,
}

impl TryFrom<Vec<u32>> for Permutation {
    type Error = PermError;
    fn try_from(images: Vec<u32>) -> Result<Self, PermError> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<u32> {
    fn from(p: Permutation) -> Vec<u32> {
        p.images
    }
}

impl Permutation {
    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        if n == 0 {
            return Err(PermError::EmptyDegree);
        }
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(PermError::NotBijection(n));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    /// Builds a permutation from disjoint cycles given as point lists.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self, PermError> {
        if n == 0 {
            return Err(PermError::EmptyDegree);
        }
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut used = vec![false; n];
        for c in cycles {
            for (i, &a) in c.iter().enumerate() {
                if a as usize >= n || used[a as usize] {
                    return Err(PermError::NotBijection(n));
                }
                used[a as usize] = true;
                images[a as usize] = c[(i + 1) % c.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `(0 1)(2 3 4)`; `()` is the identity.
    pub fn parse_cycles(text: &str, n: usize) -> Result<Self, PermError> {
        let cycles = parse_cycle_list(text)?;
        Permutation::from_cycles(n, &cycles).map_err(|e| match e {
            PermError::NotBijection(_) => {
                PermError::Parse { pos: 0, msg: format!("repeated or out-of-range point for degree {n}") }
            }
            other => other,
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn compose(&self, q: &Permutation) -> Result<Permutation, PermError> {
        if self.degree() != q.degree() {
            return Err(PermError::DegreeMismatch(self.degree(), q.degree()));
        }
        Ok(Permutation { images: self.images.iter().map(|&a| q.images[a as usize]).collect() })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn power(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut result = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        result
    }

    /// `sigma^-1 * self * sigma`.
    pub fn conjugate_by(&self, sigma: &Permutation) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (a, &b) in self.images.iter().enumerate() {
            images[sigma.images[a] as usize] = sigma.images[b as usize];
        }
        Permutation { images }
    }

    /// All cycles including fixed points, each starting at its least point,
    /// ordered by least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut c = vec![start as u32];
            seen[start] = true;
            let mut j = self.images[start] as usize;
            while j != start {
                seen[j] = true;
                c.push(j as u32);
                j = self.images[j] as usize;
            }
            out.push(c);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                j = self.images[j] as usize;
            }
        }
        count
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::new(self.cycles().iter().map(|c| c.len()).collect())
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &j)| *i as u32 == j).count()
    }

    pub fn parity(&self) -> Sign {
        if (self.degree() - self.num_cycles()).is_multiple_of(2) {
            Sign::Even
        } else {
            Sign::Odd
        }
    }

    pub fn order(&self) -> BigUint {
        let mut lens: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        lens.sort_unstable();
        lens.dedup();
        lens.into_iter().fold(BigUint::one(), |acc, l| {
            let l = BigUint::from(l);
            let g = gcd_big(&acc, &l);
            acc * l / g
        })
    }

    /// Permutation on `n + m` points acting as `self` shifted by `offset`
    /// and fixing everything else.
    pub fn embed(&self, total: usize, offset: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (a, &b) in self.images.iter().enumerate() {
            images[a + offset] = b + offset as u32;
        }
        Permutation { images }
    }

    /// Disjoint union: `self` on the first block, `other` shifted after it.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let n = self.degree() as u32;
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&b| b + n));
        Permutation { images }
    }

    pub(crate) fn images_mut(&mut self) -> &mut Vec<u32> {
        &mut self.images
    }
}

fn gcd_big(a: &BigUint, b: &BigUint) -> BigUint {
    let (mut a, mut b) = (a.clone(), b.clone());
    while b != BigUint::from(0u32) {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

impl<'a> Mul<&'a Permutation> for &'a Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] for a checked product.
    fn mul(self, rhs: &'a Permutation) -> Permutation {
        self.compose(rhs).expect("degree mismatch in permutation product")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for c in self.cycles() {
            if c.len() < 2 {
                continue;
            }
            any = true;
            write!(f, "(")?;
            for (i, a) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}; {}]", self.degree(), self)
    }
}

/// Parses a list of cycles without fixing the degree.
pub fn parse_cycle_list(text: &str) -> Result<Vec<Vec<u32>>, PermError> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut cycles = Vec::new();
    let err = |pos: usize, msg: &str| PermError::Parse { pos, msg: msg.to_string() };
    loop {
        while i < bytes.len() && bytes[i].is_ascii_whitespace() {
            i += 1;
        }
        if i == bytes.len() {
            break;
        }
        if bytes[i] != b'(' {
            return Err(err(i, "expected '('"));
        }
        i += 1;
        let mut cycle: Vec<u32> = Vec::new();
        loop {
            while i < bytes.len() && (bytes[i].is_ascii_whitespace() || bytes[i] == b',') {
                i += 1;
            }
            if i == bytes.len() {
                return Err(err(i, "unterminated cycle"));
            }
            if bytes[i] == b')' {
                i += 1;
                break;
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            if start == i {
                return Err(err(i, "expected a point"));
            }
            let v: u32 = text[start..i].parse().map_err(|_| err(start, "point out of range"))?;
            if cycle.contains(&v) {
                return Err(err(start, "point repeated within a cycle"));
            }
            cycle.push(v);
        }
        if !cycle.is_empty() {
            cycles.push(cycle);
        }
    }
    Ok(cycles)
}

/// Multiset of cycle lengths, sorted ascending, fixed points included.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(Vec<usize>);

impl CycleType {
    pub fn new(mut lengths: Vec<usize>) -> Self {
        lengths.sort_unstable();
        CycleType(lengths)
    }

    pub fn lengths(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn num_cycles(&self) -> usize {
        self.0.len()
    }

    pub fn count(&self, len: usize) -> usize {
        self.0.iter().filter(|&&l| l == len).count()
    }

    /// Pairs `(length, multiplicity)` in ascending length order.
    pub fn grouped(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &l in &self.0 {
            match out.last_mut() {
                Some((len, m)) if *len == l => *m += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (l, m)) in self.grouped().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if m == 1 {
                write!(f, "{l}")?;
            } else {
                write!(f, "{l}^{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycleType[{self}]")
    }
}

/// Some `sigma` with `sigma^-1 p sigma = q`, if the cycle types agree.
pub fn sn_conjugator(p: &Permutation, q: &Permutation) -> Option<Permutation> {
    if p.degree() != q.degree() {
        return None;
    }
    let mut cp = p.cycles();
    let mut cq = q.cycles();
    cp.sort_by_key(|c| c.len());
    cq.sort_by_key(|c| c.len());
    if cp.iter().map(Vec::len).ne(cq.iter().map(Vec::len)) {
        return None;
    }
    let mut images = vec![0u32; p.degree()];
    for (a, b) in cp.iter().zip(&cq) {
        for (&u, &v) in a.iter().zip(b) {
            images[u as usize] = v;
        }
    }
    Some(Permutation { images })
}

/// An odd permutation commuting with `p`, if one exists.
pub fn odd_centralizer_element(p: &Permutation) -> Option<Permutation> {
    let n = p.degree();
    let cycles = p.cycles();
    if let Some(c) = cycles.iter().find(|c| c.len() % 2 == 0) {
        return Some(Permutation::from_cycles(n, std::slice::from_ref(c)).expect("cycle of p"));
    }
    let mut by_len = cycles.clone();
    by_len.sort_by_key(|c| c.len());
    for w in by_len.windows(2) {
        if w[0].len() == w[1].len() {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for (&u, &v) in w[0].iter().zip(&w[1]) {
                images[u as usize] = v;
                images[v as usize] = u;
            }
            return Some(Permutation { images });
        }
    }
    None
}

/// An even conjugator taking `p` to `q`, or `None` if they are not conjugate in `A_n`.
pub fn an_conjugator(p: &Permutation, q: &Permutation) -> Result<Option<Permutation>, PermError> {
    if p.degree() != q.degree() {
        return Err(PermError::DegreeMismatch(p.degree(), q.degree()));
    }
    if !p.parity().is_even() || !q.parity().is_even() {
        return Err(PermError::OddPermutation);
    }
    let Some(sigma) = sn_conjugator(p, q) else {
        return Ok(None);
    };
    if sigma.parity().is_even() {
        return Ok(Some(sigma));
    }
    Ok(odd_centralizer_element(p).map(|c| &c * &sigma))
}

pub fn an_conjugate(p: &Permutation, q: &Permutation) -> Result<bool, PermError> {
    an_conjugator(p, q).map(|c| c.is_some())
}

fn check_gens(gens: &[Permutation], n: usize) -> Result<(), PermError> {
    for g in gens {
        if g.degree() != n {
            return Err(PermError::DegreeMismatch(n, g.degree()));
        }
    }
    Ok(())
}

pub fn orbit(gens: &[Permutation], n: usize, start: usize) -> Vec<u32> {
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut out = vec![start as u32];
    let mut queue = VecDeque::from([start]);
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let b = g.apply(a);
            if !seen[b] {
                seen[b] = true;
                out.push(b as u32);
                queue.push_back(b);
            }
        }
    }
    out
}

pub fn is_transitive(gens: &[Permutation], n: usize) -> Result<bool, PermError> {
    if n == 0 {
        return Err(PermError::EmptyDegree);
    }
    if gens.is_empty() {
        return if n == 1 { Ok(true) } else { Err(PermError::NoGenerators(n)) };
    }
    check_gens(gens, n)?;
    Ok(orbit(gens, n, 0).len() == n)
}

fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

struct Level {
    base_point: u32,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    /// `-1` outside the orbit, `-2` at the base point, otherwise the index
    /// of the strong generator whose image reached the point.
    tree: Vec<i32>,
}

/// Stabilizer chain built by random Schreier-Sims, completed deterministically
/// unless the orbit product already meets the parity bound.
pub struct StabChain {
    n: usize,
    gens: Vec<Permutation>,
    inverses: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(input: &[Permutation]) -> Result<StabChain, PermError> {
        let Some(first) = input.first() else {
            return Err(PermError::NoGenerators(0));
        };
        let n = first.degree();
        check_gens(input, n)?;
        let mut chain = StabChain { n, gens: Vec::new(), inverses: Vec::new(), levels: Vec::new() };
        for g in input {
            chain.sift_and_add(g.clone());
        }
        let bound = if input.iter().all(|g| g.parity().is_even()) {
            if n >= 2 {
                factorial(n) / BigUint::from(2u32)
            } else {
                BigUint::one()
            }
        } else {
            factorial(n)
        };
        chain.random_phase(input, &bound);
        if chain.order() != bound {
            chain.complete();
        }
        Ok(chain)
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        g.degree() == self.n && {
            let (h, _) = self.sift_from(g.clone(), 0);
            h.is_identity()
        }
    }

    fn random_phase(&mut self, input: &[Permutation], bound: &BigUint) {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2337);
        let mut slots: Vec<Permutation> = input.to_vec();
        while slots.len() < 10 {
            let k = slots.len() % input.len();
            slots.push(input[k].clone());
        }
        let mut acc = Permutation::identity(self.n);
        let step = |rng: &mut ChaCha8Rng, slots: &mut Vec<Permutation>, acc: &mut Permutation| {
            let i = rng.gen_range(0..slots.len());
            let mut j = rng.gen_range(0..slots.len() - 1);
            if j >= i {
                j += 1;
            }
            slots[i] = if rng.gen_bool(0.5) { &slots[i] * &slots[j] } else { &slots[j] * &slots[i] };
            *acc = &*acc * &slots[i];
        };
        for _ in 0..50 {
            step(&mut rng, &mut slots, &mut acc);
        }
        let mut quiet = 0;
        while quiet < 40 && &self.order() != bound {
            step(&mut rng, &mut slots, &mut acc);
            if self.sift_and_add(acc.clone()) {
                quiet = 0;
            } else {
                quiet += 1;
            }
        }
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            i -= 1;
            if let Some(level) = self.check_level(i) {
                i = level + 1;
            }
        }
    }

    /// Sifts every Schreier generator of level `i`; on a non-trivial residue,
    /// adds it and returns the level it was added at.
    fn check_level(&mut self, i: usize) -> Option<usize> {
        let orbit = self.levels[i].orbit.clone();
        let gens = self.levels[i].gens.clone();
        for &beta in &orbit {
            let u_beta = self.transversal(i, beta as usize);
            for &s in &gens {
                let img = self.gens[s].apply(beta as usize);
                let u_img = self.transversal(i, img);
                let schreier = &(&u_beta * &self.gens[s]) * &u_img.inverse();
                let (h, level) = self.sift_from(schreier, i + 1);
                if !h.is_identity() {
                    self.add_at(h, level);
                    return Some(level);
                }
            }
        }
        None
    }

    /// Element of level `i` mapping its base point to `beta`.
    fn transversal(&self, i: usize, beta: usize) -> Permutation {
        let level = &self.levels[i];
        let mut path = Vec::new();
        let mut cur = beta;
        while level.tree[cur] >= 0 {
            let g = level.tree[cur] as usize;
            path.push(g);
            cur = self.inverses[g].apply(cur);
        }
        let mut u = Permutation::identity(self.n);
        for &g in path.iter().rev() {
            u = &u * &self.gens[g];
        }
        u
    }

    fn sift_from(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let mut beta = h.apply(level.base_point as usize);
            if level.tree[beta] == -1 {
                return (h, i);
            }
            while level.tree[beta] >= 0 {
                let g = level.tree[beta] as usize;
                let inv = &self.inverses[g];
                for v in h.images_mut().iter_mut() {
                    *v = inv.images[*v as usize];
                }
                beta = inv.apply(beta);
            }
        }
        let len = self.levels.len();
        (h, len)
    }

    /// Returns true if the chain grew.
    fn sift_and_add(&mut self, g: Permutation) -> bool {
        let (h, level) = self.sift_from(g, 0);
        if h.is_identity() {
            return false;
        }
        self.add_at(h, level);
        true
    }

    fn add_at(&mut self, h: Permutation, level: usize) {
        if level == self.levels.len() {
            let moved = (0..self.n).find(|&a| h.apply(a) != a).expect("non-identity residue");
            let mut tree = vec![-1; self.n];
            tree[moved] = -2;
            self.levels.push(Level { base_point: moved as u32, gens: Vec::new(), orbit: vec![moved as u32], tree });
        }
        let idx = self.gens.len();
        self.inverses.push(h.inverse());
        self.gens.push(h);
        for j in 0..=level {
            self.levels[j].gens.push(idx);
            self.extend_orbit(j, idx);
        }
    }

    fn extend_orbit(&mut self, j: usize, new_gen: usize) {
        let level = &mut self.levels[j];
        let g = &self.gens[new_gen];
        if level.orbit.iter().all(|&a| level.tree[g.apply(a as usize)] != -1) {
            return;
        }
        let root = level.base_point as usize;
        level.tree.iter_mut().for_each(|t| *t = -1);
        level.tree[root] = -2;
        level.orbit.clear();
        level.orbit.push(root as u32);
        let mut head = 0;
        while head < level.orbit.len() {
            let a = level.orbit[head] as usize;
            head += 1;
            for &s in &level.gens {
                let b = self.gens[s].apply(a);
                if level.tree[b] == -1 {
                    level.tree[b] = s as i32;
                    level.orbit.push(b as u32);
                }
            }
        }
    }
}

/// Exact order of the group generated by `gens`.
pub fn group_order(gens: &[Permutation]) -> Result<BigUint, PermError> {
    Ok(StabChain::new(gens)?.order())
}

/// Every element of the generated group, for small groups only.
pub fn enumerate_group(gens: &[Permutation], cap: usize) -> Option<Vec<Permutation>> {
    let n = gens.first()?.degree();
    let id = Permutation::identity(n);
    let mut seen = std::collections::HashSet::new();
    seen.insert(id.clone());
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(a) = queue.pop_front() {
        for g in gens {
            let b = &a * g;
            if seen.insert(b.clone()) {
                if out.len() >= cap {
                    return None;
                }
                out.push(b.clone());
                queue.push_back(b);
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse_cycles(s, n).unwrap()
    }

    #[test]
    fn right_action_product() {
        assert_eq!(&p(3, "(0 1)") * &p(3, "(1 2)"), p(3, "(0 2 1)"));
    }

    #[test]
    fn power_and_inverse() {
        let c = p(7, "(0 1 2 3 4 5 6)");
        assert!(c.power(7).is_identity());
        assert_eq!(p(3, "(0 1 2)").power(2), p(3, "(0 2 1)"));
        assert_eq!(c.power(-1), c.inverse());
        assert!((&c * &c.inverse()).is_identity());
    }

    #[test]
    fn display_round_trip() {
        let q = p(6, "(0 3)(1 5 2)");
        assert_eq!(q.to_string(), "(0 3)(1 5 2)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!(p(4, "()"), Permutation::identity(4));
    }

    #[test]
    fn parse_errors() {
        assert!(Permutation::parse_cycles("(0 1", 3).is_err());
        assert!(Permutation::parse_cycles("(0 5)", 3).is_err());
        assert!(Permutation::parse_cycles("(0 1)(1 2)", 3).is_err());
        assert!(Permutation::parse_cycles("0 1", 3).is_err());
        assert!(Permutation::parse_cycles("(0 0)", 3).is_err());
    }

    #[test]
    fn split_class_small_cases() {
        let a = p(4, "(0 1 2)");
        let b = p(4, "(0 2 1)");
        assert!(!an_conjugate(&a, &b).unwrap());
        let a = p(5, "(0 1 2)");
        let b = p(5, "(0 2 1)");
        assert!(an_conjugate(&a, &b).unwrap());
        assert!(an_conjugate(&a, &a).unwrap());
        assert!(an_conjugate(&p(3, "(0 1)"), &p(3, "(0 2)")).is_err());
    }

    #[test]
    fn orders() {
        let g = [p(5, "(0 1 2 3 4)"), p(5, "(0 1 2)")];
        assert_eq!(group_order(&g).unwrap(), BigUint::from(60u32));
        assert_eq!(group_order(&[Permutation::identity(3)]).unwrap(), BigUint::one());
        let s4 = [p(4, "(0 1)"), p(4, "(0 1 2 3)")];
        assert_eq!(group_order(&s4).unwrap(), BigUint::from(24u32));
        let d4 = [p(4, "(0 1 2 3)"), p(4, "(1 3)")];
        assert_eq!(group_order(&d4).unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn transitivity() {
        assert!(!is_transitive(&[Permutation::identity(2)], 2).unwrap());
        assert!(is_transitive(&[p(5, "(0 1 2 3 4)")], 5).unwrap());
        assert!(is_transitive(&[], 3).is_err());
    }
}
