//! Class structure constants: the Frobenius character formula over a
//! character table, and a brute-force count over an enumerated group.
//!
//! Generic tables in a parameter q (such as those of G_2(q)) are not
//! handled; tables are finite and shipped as data files.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::perm::{enumerate_group, Permutation};

/// Absolute tolerance on the distance of a computed count to an integer.
pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;
/// Relative tolerance for the row orthogonality relations.
pub const ORTHOGONALITY_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_CAP: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrobeniusError {
    #[error("character table, line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("character table is inconsistent: {0}")]
    Invalid(String),
    #[error("unknown class {0}")]
    UnknownClass(String),
    #[error("value {0} is not an integer within tolerance; the table is probably wrong")]
    NonIntegral(String),
    #[error("group has more than {0} elements")]
    CapExceeded(usize),
    #[error("representative does not lie in the generated group")]
    NotInGroup,
    #[error("cannot match table classes to group classes: {0}")]
    ClassMatch(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Scalar::Float(x) => *x,
        }
    }

    fn parse(s: &str) -> Result<Scalar, String> {
        let s = s.strip_prefix('+').unwrap_or(s);
        if s.contains(['.', 'e', 'E']) {
            let x: f64 = s.parse().map_err(|_| format!("bad number {s:?}"))?;
            if !x.is_finite() {
                return Err(format!("bad number {s:?}"));
            }
            return Ok(Scalar::Float(x));
        }
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a, b),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| format!("bad numerator {num:?}"))?;
        let den: BigInt = den.parse().map_err(|_| format!("bad denominator {den:?}"))?;
        if den.is_zero() {
            return Err("zero denominator".into());
        }
        Ok(Scalar::Exact(BigRational::new(num, den)))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float(x) => write!(f, "{x:?}"),
        }
    }
}

/// A character value `re + im i`.
#[derive(Debug, Clone, PartialEq)]
pub struct CharValue {
    pub re: Scalar,
    pub im: Scalar,
}

impl CharValue {
    pub fn is_exact(&self) -> bool {
        matches!((&self.re, &self.im), (Scalar::Exact(_), Scalar::Exact(_)))
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    fn exact(&self) -> Option<Complex<BigRational>> {
        match (&self.re, &self.im) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(Complex::new(a.clone(), b.clone())),
            _ => None,
        }
    }

    /// Parses `a/b`, a decimal, `c/d i`, or `a/b+c/d i`.
    pub fn parse(tok: &str) -> Result<CharValue, String> {
        let zero = || Scalar::Exact(BigRational::zero());
        let Some(body) = tok.strip_suffix('i') else {
            return Ok(CharValue { re: Scalar::parse(tok)?, im: zero() });
        };
        let bytes = body.as_bytes();
        let split =
            (1..bytes.len()).rev().find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(k) => (Scalar::parse(&body[..k])?, &body[k..]),
            None => (zero(), body),
        };
        let im = match im {
            "" | "+" => Scalar::Exact(BigRational::one()),
            "-" => Scalar::Exact(-BigRational::one()),
            s => Scalar::parse(s)?,
        };
        Ok(CharValue { re, im })
    }
}

impl fmt::Display for CharValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_zero = matches!(&self.im, Scalar::Exact(q) if q.is_zero());
        if im_zero {
            write!(f, "{}", self.re)
        } else if self.im.to_f64() < 0.0 {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassInfo {
    pub name: String,
    #[serde(with = "crate::report::big_string")]
    pub size: BigUint,
    pub order: u32,
    pub inverse: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    pub name: String,
    pub order: BigUint,
    pub precision: f64,
    pub classes: Vec<ClassInfo>,
    pub characters: Vec<Vec<CharValue>>,
}

fn big_to_f64(b: &BigUint) -> f64 {
    b.to_f64().unwrap_or(f64::INFINITY)
}

impl CharacterTable {
    pub fn class_index(&self, name: &str) -> Result<usize, FrobeniusError> {
        self.classes.iter().position(|c| c.name == name).ok_or_else(|| FrobeniusError::UnknownClass(name.to_string()))
    }

    /// Parses and validates a table file.
    ///
    /// ```text
    /// character-table 1
    /// group S3
    /// order 6
    /// precision 1e-15
    /// class 1A 1 1 1A
    /// class 2A 3 2 2A
    /// class 3A 2 3 3A
    /// char 1 1 1
    /// char 1 -1 1
    /// char 2 0 -1
    /// ```
    pub fn parse(text: &str) -> Result<CharacterTable, FrobeniusError> {
        let err = |line: usize, msg: String| FrobeniusError::Parse { line, msg };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        match lines.next() {
            Some((_, "character-table 1")) => {}
            Some((i, l)) => return Err(err(i, format!("expected header \"character-table 1\", found {l:?}"))),
            None => return Err(err(1, "empty input".into())),
        }
        let (mut name, mut order, mut precision) = (None, None, 1e-12);
        let mut classes = Vec::new();
        let mut characters = Vec::new();
        let mut last_line = 1;
        for (i, line) in lines {
            last_line = i;
            let mut words = line.split_whitespace();
            let key = words.next().unwrap_or("");
            let rest: Vec<&str> = words.collect();
            match key {
                "group" if rest.len() == 1 => name = Some(rest[0].to_string()),
                "order" if rest.len() == 1 => {
                    order =
                        Some(rest[0].parse::<BigUint>().map_err(|_| err(i, format!("bad group order {:?}", rest[0])))?)
                }
                "precision" if rest.len() == 1 => {
                    precision = rest[0].parse().map_err(|_| err(i, format!("bad precision {:?}", rest[0])))?;
                    if !(0.0..1.0).contains(&precision) {
                        return Err(err(i, "precision must lie in [0, 1)".into()));
                    }
                }
                "class" if rest.len() == 4 => {
                    if !characters.is_empty() {
                        return Err(err(i, "class lines must precede char lines".into()));
                    }
                    let size = rest[1].parse().map_err(|_| err(i, format!("bad class size {:?}", rest[1])))?;
                    let ord = rest[2].parse().map_err(|_| err(i, format!("bad element order {:?}", rest[2])))?;
                    classes.push(ClassInfo { name: rest[0].into(), size, order: ord, inverse: rest[3].into() });
                }
                "char" => {
                    if rest.len() != classes.len() {
                        return Err(err(i, format!("expected {} values, found {}", classes.len(), rest.len())));
                    }
                    let row =
                        rest.iter().map(|t| CharValue::parse(t).map_err(|m| err(i, m))).collect::<Result<_, _>>()?;
                    characters.push(row);
                }
                _ => return Err(err(i, format!("unrecognised line {line:?}"))),
            }
        }
        let name = name.ok_or_else(|| err(last_line, "missing group line".into()))?;
        let order = order.ok_or_else(|| err(last_line, "missing order line".into()))?;
        let table = CharacterTable { name, order, precision, classes, characters };
        table.validate()?;
        Ok(table)
    }

    pub fn validate(&self) -> Result<(), FrobeniusError> {
        let bad = |m: String| Err(FrobeniusError::Invalid(m));
        if self.classes.is_empty() {
            return bad("no classes".into());
        }
        let first = &self.classes[0];
        if first.size != BigUint::one() || first.order != 1 {
            return bad("the first class must be the identity class".into());
        }
        let total: BigUint = self.classes.iter().map(|c| &c.size).sum();
        if total != self.order {
            return bad(format!("class sizes sum to {total}, group order is {}", self.order));
        }
        for (i, c) in self.classes.iter().enumerate() {
            if self.classes[..i].iter().any(|d| d.name == c.name) {
                return bad(format!("class {} listed twice", c.name));
            }
            let inv = self.class_index(&c.inverse)?;
            if self.classes[inv].inverse != c.name || self.classes[inv].size != c.size {
                return bad(format!("inverse of {} is not consistent", c.name));
            }
        }
        if self.characters.len() != self.classes.len() {
            return bad(format!("{} characters for {} classes", self.characters.len(), self.classes.len()));
        }
        for (k, row) in self.characters.iter().enumerate() {
            let d = row[0].to_complex64();
            if d.im != 0.0 || d.re < 1.0 || d.re.fract() != 0.0 {
                return bad(format!("character {} has degree {}", k + 1, row[0]));
            }
        }
        let defect = self.orthogonality_defect();
        if defect > ORTHOGONALITY_TOLERANCE {
            return bad(format!("row orthogonality fails by a relative {defect:e}"));
        }
        Ok(())
    }

    /// Largest relative deviation of `sum |C| chi(C) conj(psi(C))` from
    /// `|G| [chi = psi]`.
    pub fn orthogonality_defect(&self) -> f64 {
        let g = big_to_f64(&self.order);
        let sizes: Vec<f64> = self.classes.iter().map(|c| big_to_f64(&c.size)).collect();
        let mut worst: f64 = 0.0;
        for (a, chi) in self.characters.iter().enumerate() {
            for (b, psi) in self.characters.iter().enumerate() {
                let s: Complex64 = chi
                    .iter()
                    .zip(psi)
                    .zip(&sizes)
                    .map(|((u, v), &c)| u.to_complex64() * v.to_complex64().conj() * c)
                    .sum();
                let want = if a == b { g } else { 0.0 };
                worst = worst.max((s - want).norm() / g);
            }
        }
        worst
    }

    fn exact_sum(&self, idx: [usize; 3]) -> Option<Complex<BigRational>> {
        let mut sum = Complex::new(BigRational::zero(), BigRational::zero());
        for row in &self.characters {
            let d = row[0].exact()?;
            let prod = row[idx[0]].exact()? * row[idx[1]].exact()? * row[idx[2]].exact()?;
            sum += prod / d;
        }
        Some(sum)
    }

    /// Number of solutions of `xyz = 1` with x, y, z in the named classes.
    pub fn frobenius_count(&self, x: &str, y: &str, z: &str) -> Result<BigUint, FrobeniusError> {
        let idx = [self.class_index(x)?, self.class_index(y)?, self.class_index(z)?];
        let sizes: BigUint = idx.iter().map(|&i| &self.classes[i].size).product();
        if let Some(sum) = self.exact_sum(idx) {
            let scale = BigRational::new(BigInt::from(sizes), BigInt::from(self.order.clone()));
            let v = sum * scale;
            if !v.im.is_zero() || !v.re.is_integer() || v.re < BigRational::zero() {
                return Err(FrobeniusError::NonIntegral(format!("{}+{}i", v.re, v.im)));
            }
            return Ok(v.re.to_integer().to_biguint().expect("non-negative"));
        }
        let sum: Complex64 = self
            .characters
            .iter()
            .map(|row| {
                row[idx[0]].to_complex64() * row[idx[1]].to_complex64() * row[idx[2]].to_complex64()
                    / row[0].to_complex64()
            })
            .sum();
        let v = sum * (big_to_f64(&sizes) / big_to_f64(&self.order));
        let rounded = v.re.round();
        if v.im.abs() > INTEGRALITY_TOLERANCE || (v.re - rounded).abs() > INTEGRALITY_TOLERANCE || rounded < 0.0 {
            return Err(FrobeniusError::NonIntegral(format!("{v}")));
        }
        Ok(BigUint::from(rounded as u128))
    }

    /// Coefficient of the class sum of Z in the product of the class sums
    /// of X and Y.
    pub fn class_sum_coefficient(&self, x: &str, y: &str, z: &str) -> Result<BigRational, FrobeniusError> {
        let zi = self.class_index(z)?;
        let inv = self.classes[zi].inverse.clone();
        let n = self.frobenius_count(x, y, &inv)?;
        Ok(BigRational::new(BigInt::from(n), BigInt::from(self.classes[zi].size.clone())))
    }
}

/// Conjugacy classes of an enumerated permutation group.
#[derive(Debug, Clone)]
pub struct GroupClasses {
    pub elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    class_of: Vec<usize>,
    /// Element indices of each class, classes ordered by first element.
    pub classes: Vec<Vec<usize>>,
}

impl GroupClasses {
    pub fn new(gens: &[Permutation], cap: usize) -> Result<GroupClasses, FrobeniusError> {
        let elements = enumerate_group(gens, cap).ok_or(FrobeniusError::CapExceeded(cap))?;
        let index: HashMap<Permutation, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut class_of = vec![usize::MAX; elements.len()];
        let mut classes = Vec::new();
        for start in 0..elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let c = classes.len();
            class_of[start] = c;
            let mut members = vec![start];
            let mut i = 0;
            while i < members.len() {
                let g = &elements[members[i]];
                for s in gens {
                    let h = index[&g.conjugate_by(s)];
                    if class_of[h] == usize::MAX {
                        class_of[h] = c;
                        members.push(h);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            classes.push(members);
        }
        Ok(GroupClasses { elements, index, class_of, classes })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn class_of(&self, g: &Permutation) -> Option<usize> {
        self.index.get(g).map(|&i| self.class_of[i])
    }

    pub fn representative(&self, class: usize) -> &Permutation {
        &self.elements[self.classes[class][0]]
    }

    pub fn element_order(&self, class: usize) -> u32 {
        self.representative(class).order().to_u32().unwrap_or(u32::MAX)
    }

    /// Ordered triples `(x, y, z)` in the given classes with `xyz = 1`.
    pub fn count(&self, cx: usize, cy: usize, cz: usize) -> u64 {
        let mut total = 0;
        for &i in &self.classes[cx] {
            for &j in &self.classes[cy] {
                let z = (&self.elements[i] * &self.elements[j]).inverse();
                if self.class_of(&z) == Some(cz) {
                    total += 1;
                }
            }
        }
        total
    }

    /// Assigns each table class a group class. Classes sharing element
    /// order and size are told apart by powers: the first is an arbitrary
    /// class, the next ones hold its successive powers.
    pub fn match_table(&self, table: &CharacterTable) -> Result<Vec<usize>, FrobeniusError> {
        let bad = |m: String| Err(FrobeniusError::ClassMatch(m));
        if BigUint::from(self.order()) != table.order {
            return bad(format!("group has order {}, table {}", self.order(), table.order));
        }
        let key = |c: usize| (self.element_order(c), self.classes[c].len());
        let mut out = vec![usize::MAX; table.classes.len()];
        let mut taken = vec![false; self.classes.len()];
        for (i, info) in table.classes.iter().enumerate() {
            if out[i] != usize::MAX {
                continue;
            }
            let size = info.size.to_usize().unwrap_or(usize::MAX);
            let family: Vec<usize> = (i..table.classes.len())
                .filter(|&j| table.classes[j].order == info.order && table.classes[j].size == info.size)
                .collect();
            let Some(first) = (0..self.classes.len()).find(|&c| !taken[c] && key(c) == (info.order, size)) else {
                return bad(format!("no group class of order {} and size {size} for {}", info.order, info.name));
            };
            let g = self.representative(first).clone();
            let mut slots = family.into_iter();
            for k in 1..=info.order.max(1) as i64 {
                let c = self.class_of(&g.power(k)).expect("powers stay in the group");
                if taken[c] || key(c) != (info.order, size) {
                    continue;
                }
                let Some(slot) = slots.next() else { break };
                out[slot] = c;
                taken[c] = true;
            }
            if let Some(slot) = slots.next() {
                return bad(format!("class {} is not a power of {}", table.classes[slot].name, info.name));
            }
        }
        Ok(out)
    }
}

/// Enumerates the group and counts solutions of `xyz = 1` with x, y, z
/// conjugate in the group to the given representatives.
pub fn brute_count(
    gens: &[Permutation],
    x: &Permutation,
    y: &Permutation,
    z: &Permutation,
    cap: usize,
) -> Result<BigUint, FrobeniusError> {
    let gc = GroupClasses::new(gens, cap)?;
    let c = |g: &Permutation| gc.class_of(g).ok_or(FrobeniusError::NotInGroup);
    Ok(BigUint::from(gc.count(c(x)?, c(y)?, c(z)?)))
}

/// One compared class triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleCheck {
    pub classes: [String; 3],
    #[serde(with = "crate::report::big_string")]
    pub frobenius: BigUint,
    #[serde(with = "crate::report::big_string")]
    pub brute: BigUint,
}

/// Compares both counts on every triple of classes with element orders in
/// `orders`.
pub fn cross_check(
    table: &CharacterTable,
    gens: &[Permutation],
    orders: &[u32],
    cap: usize,
) -> Result<Vec<TripleCheck>, FrobeniusError> {
    let gc = GroupClasses::new(gens, cap)?;
    let matching = gc.match_table(table)?;
    let chosen: Vec<usize> = (0..table.classes.len()).filter(|&i| orders.contains(&table.classes[i].order)).collect();
    let mut out = Vec::new();
    for &a in &chosen {
        for &b in &chosen {
            for &c in &chosen {
                let names = [a, b, c].map(|i| table.classes[i].name.clone());
                let frobenius = table.frobenius_count(&names[0], &names[1], &names[2])?;
                let brute = BigUint::from(gc.count(matching[a], matching[b], matching[c]));
                out.push(TripleCheck { classes: names, frobenius, brute });
            }
        }
    }
    Ok(out)
}

pub const BUNDLED: [&str; 5] = ["S3", "S4", "A4", "A5", "L2(13)"];

pub fn bundled_source(name: &str) -> Option<&'static str> {
    Some(match name {
        "S3" => include_str!("../data/tables/S3.tbl"),
        "S4" => include_str!("../data/tables/S4.tbl"),
        "A4" => include_str!("../data/tables/A4.tbl"),
        "A5" => include_str!("../data/tables/A5.tbl"),
        "L2(13)" => include_str!("../data/tables/L2_13.tbl"),
        _ => return None,
    })
}

pub fn bundled_table(name: &str) -> Option<CharacterTable> {
    bundled_source(name).map(|s| CharacterTable::parse(s).unwrap_or_else(|e| panic!("bundled table {name}: {e}")))
}

/// Permutation generators of a bundled group; L2(13) is the monodromy
/// group of basic map A.
pub fn bundled_generators(name: &str) -> Option<Vec<Permutation>> {
    let cyc = |n: usize, s: &str| Permutation::parse_cycles(s, n).expect("valid literal");
    Some(match name {
        "S3" => vec![cyc(3, "(0 1)"), cyc(3, "(0 1 2)")],
        "S4" => vec![cyc(4, "(0 1)"), cyc(4, "(0 1 2 3)")],
        "A4" => vec![cyc(4, "(0 1 2)"), cyc(4, "(0 1)(2 3)")],
        "A5" => vec![cyc(5, "(0 1 2 3 4)"), cyc(5, "(0 1 2)")],
        "L2(13)" => {
            let a = crate::atlas::basic_map(crate::atlas::BasicMapId::A);
            vec![a.x().clone(), a.y().clone()]
        }
        _ => return None,
    })
}
