//! The fourteen basic maps A to N and their tabulated invariants.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::map::{FixedPointVector, HurwitzMap};
use crate::perm::{group_order, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BasicMapId {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
    I,
    J,
    K,
    L,
    M,
    N,
}

impl BasicMapId {
    pub const ALL: [BasicMapId; 14] = [
        BasicMapId::A,
        BasicMapId::B,
        BasicMapId::C,
        BasicMapId::D,
        BasicMapId::E,
        BasicMapId::F,
        BasicMapId::G,
        BasicMapId::H,
        BasicMapId::I,
        BasicMapId::J,
        BasicMapId::K,
        BasicMapId::L,
        BasicMapId::M,
        BasicMapId::N,
    ];

    pub fn letter(self) -> char {
        (b'A' + self as u8) as char
    }

    pub fn from_letter(c: char) -> Option<BasicMapId> {
        let i = (c as u32).checked_sub('A' as u32)? as usize;
        BasicMapId::ALL.get(i).copied()
    }

    fn source(self) -> &'static str {
        match self {
            BasicMapId::A => include_str!("../data/atlas/A.map"),
            BasicMapId::B => include_str!("../data/atlas/B.map"),
            BasicMapId::C => include_str!("../data/atlas/C.map"),
            BasicMapId::D => include_str!("../data/atlas/D.map"),
            BasicMapId::E => include_str!("../data/atlas/E.map"),
            BasicMapId::F => include_str!("../data/atlas/F.map"),
            BasicMapId::G => include_str!("../data/atlas/G.map"),
            BasicMapId::H => include_str!("../data/atlas/H.map"),
            BasicMapId::I => include_str!("../data/atlas/I.map"),
            BasicMapId::J => include_str!("../data/atlas/J.map"),
            BasicMapId::K => include_str!("../data/atlas/K.map"),
            BasicMapId::L => include_str!("../data/atlas/L.map"),
            BasicMapId::M => include_str!("../data/atlas/M.map"),
            BasicMapId::N => include_str!("../data/atlas/N.map"),
        }
    }
}

impl fmt::Display for BasicMapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for BasicMapId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(c), None) => BasicMapId::from_letter(c).ok_or_else(|| format!("no basic map {s}")),
            _ => Err(format!("no basic map {s}")),
        }
    }
}

/// The stored, pre-validated basic map.
pub fn basic_map(id: BasicMapId) -> &'static HurwitzMap {
    static MAPS: OnceLock<Vec<HurwitzMap>> = OnceLock::new();
    let maps = MAPS.get_or_init(|| {
        BasicMapId::ALL
            .iter()
            .map(|id| {
                HurwitzMap::parse_map_file(id.source()).unwrap_or_else(|e| panic!("atlas map {id} is corrupt: {e}"))
            })
            .collect()
    });
    &maps[id as usize]
}

/// One row of the stored table of basic maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Row {
    pub degree: usize,
    pub t_parity: Sign,
    pub fixed_points: FixedPointVector,
    pub handles: [usize; 3],
    pub w_cycles: Vec<usize>,
    pub useful_lengths: Vec<usize>,
}

fn row(
    degree: usize,
    even: bool,
    fixed: [usize; 3],
    handles: [usize; 3],
    w_cycles: &[usize],
    useful_lengths: &[usize],
) -> Table2Row {
    Table2Row {
        degree,
        t_parity: if even { Sign::Even } else { Sign::Odd },
        fixed_points: FixedPointVector::new(fixed[0], fixed[1], fixed[2]),
        handles,
        w_cycles: w_cycles.to_vec(),
        useful_lengths: useful_lengths.to_vec(),
    }
}

pub fn table2_row(id: BasicMapId) -> Table2Row {
    use BasicMapId::*;
    match id {
        A => row(14, true, [2, 2, 0], [1, 0, 0], &[1, 13], &[]),
        B => row(15, true, [3, 0, 1], [0, 2, 1], &[3, 5, 7], &[5]),
        C => row(21, false, [5, 0, 0], [1, 0, 1], &[1, 4, 8, 8], &[4, 8]),
        D => row(22, false, [2, 1, 1], [0, 1, 0], &[5, 6, 11], &[]),
        E => row(28, true, [4, 1, 0], [1, 1, 0], &[1, 9, 9, 9], &[]),
        F => row(30, true, [2, 0, 2], [0, 1, 0], &[15, 15], &[]),
        G => row(42, true, [6, 0, 0], [3, 0, 0], &[1, 1, 1, 13, 13, 13], &[]),
        H => row(42, false, [6, 0, 0], [1, 0, 1], &[1, 3, 10, 11, 17], &[17]),
        I => row(57, false, [5, 0, 1], [0, 2, 0], &[4, 7, 8, 10, 13, 15], &[]),
        J => row(72, false, [4, 0, 2], [2, 0, 0], &[1, 1, 10, 11, 11, 16, 22], &[]),
        K => row(72, true, [4, 0, 2], [1, 0, 0], &[1, 5, 17, 49], &[17]),
        L => row(102, false, [2, 0, 4], [0, 1, 0], &[21, 23, 58], &[]),
        M => row(108, true, [4, 0, 3], [1, 1, 0], &[1, 12, 14, 19, 26, 36], &[]),
        N => row(108, true, [4, 0, 3], [1, 0, 1], &[1, 9, 18, 20, 21, 39], &[]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Degree,
    Parity,
    FixedPoints,
    Handles,
    WCycles,
    UsefulLengths,
}

impl Field {
    pub const ALL: [Field; 6] =
        [Field::Degree, Field::Parity, Field::FixedPoints, Field::Handles, Field::WCycles, Field::UsefulLengths];
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Field::Degree => "degree",
            Field::Parity => "parity",
            Field::FixedPoints => "fixed points",
            Field::Handles => "handles",
            Field::WCycles => "w cycles",
            Field::UsefulLengths => "useful lengths",
        })
    }
}

/// Invariants recomputed from the permutations of one basic map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputedRow {
    pub row: Table2Row,
    pub genus: Option<u64>,
    /// Every tabulated bold length is carried by a distinct useful cycle.
    pub bold_contained: bool,
    pub handles_disjoint: bool,
}

pub fn computed_row(m: &HurwitzMap) -> ComputedRow {
    let mut useful: Vec<usize> = m.useful_cycles().iter().map(|u| u.length).collect();
    useful.sort_unstable();
    let all: Vec<_> = (1..=3).flat_map(|k| m.all_handles(k)).collect();
    let handles_disjoint = all.iter().enumerate().all(|(i, h)| all[i + 1..].iter().all(|g| !h.shares_point(g)));
    let row = Table2Row {
        degree: m.n(),
        t_parity: m.t_parity(),
        fixed_points: m.fixed_point_vector(),
        handles: m.handle_counts(),
        w_cycles: m.w_cycles().cycle_type().lengths().to_vec(),
        useful_lengths: useful,
    };
    ComputedRow { row, genus: m.genus().ok(), bold_contained: false, handles_disjoint }
}

fn multiset_contains(big: &[usize], small: &[usize]) -> bool {
    let mut pool = big.to_vec();
    small.iter().all(|l| match pool.iter().position(|x| x == l) {
        Some(i) => {
            pool.swap_remove(i);
            true
        }
        None => false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapConformance {
    pub id: BasicMapId,
    pub expected: Table2Row,
    pub computed: ComputedRow,
    pub failed: Vec<Field>,
}

impl MapConformance {
    pub fn passed(&self, field: Field) -> bool {
        !self.failed.contains(&field)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasReport {
    pub maps: Vec<MapConformance>,
    #[serde(with = "crate::report::big_string")]
    pub a_group_order: BigUint,
}

impl AtlasReport {
    pub fn passed(&self) -> bool {
        self.maps.iter().all(|m| m.failed.is_empty()) && self.a_group_order == BigUint::from(1092u32)
    }

    pub fn field_pass_count(&self, field: Field) -> usize {
        self.maps.iter().filter(|m| m.passed(field)).count()
    }

    pub fn failures(&self) -> Vec<(BasicMapId, Field)> {
        self.maps.iter().flat_map(|m| m.failed.iter().map(move |f| (m.id, *f))).collect()
    }
}

pub fn check_map(id: BasicMapId, m: &HurwitzMap) -> MapConformance {
    let expected = table2_row(id);
    let mut computed = computed_row(m);
    computed.bold_contained = multiset_contains(&computed.row.useful_lengths, &expected.useful_lengths);
    let c = &computed.row;
    let checks = [
        (Field::Degree, c.degree == expected.degree),
        (Field::Parity, c.t_parity == expected.t_parity),
        (Field::FixedPoints, c.fixed_points == expected.fixed_points),
        (Field::Handles, c.handles == expected.handles),
        (Field::WCycles, c.w_cycles == expected.w_cycles),
        (Field::UsefulLengths, c.useful_lengths == expected.useful_lengths),
    ];
    let failed = checks.iter().filter(|(_, ok)| !ok).map(|(f, _)| *f).collect();
    MapConformance { id, expected, computed, failed }
}

pub fn validate_atlas() -> AtlasReport {
    let maps = BasicMapId::ALL.iter().map(|&id| check_map(id, basic_map(id))).collect();
    let a = basic_map(BasicMapId::A);
    let a_group_order = group_order(&[a.x().clone(), a.y().clone()]).expect("non-empty generators");
    AtlasReport { maps, a_group_order }
}
