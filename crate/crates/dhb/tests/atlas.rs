use dhb::atlas::*;
use dhb::map::{FixedPointVector, HurwitzMap, MapError};
use dhb::perm::Sign;
use num_bigint::BigUint;

#[test]
fn tabulated_fields_except_useful_lengths_match() {
    let report = validate_atlas();
    for field in [Field::Degree, Field::Parity, Field::FixedPoints, Field::Handles, Field::WCycles] {
        assert_eq!(report.field_pass_count(field), 14, "{field}");
    }
    assert_eq!(report.a_group_order, BigUint::from(1092u32));
}

#[test]
fn computed_useful_lengths_are_frozen() {
    use BasicMapId::*;
    let expected: [(BasicMapId, &[usize]); 14] = [
        (A, &[13]),
        (B, &[5, 7]),
        (C, &[4, 8, 8]),
        (D, &[6, 11]),
        (E, &[9, 9, 9]),
        (F, &[15, 15]),
        (G, &[13, 13, 13]),
        (H, &[10, 11, 17]),
        (I, &[8, 10, 13, 15]),
        (J, &[10, 11, 11, 16, 22]),
        (K, &[17, 49]),
        (L, &[21, 23, 58]),
        (M, &[12, 14, 19, 26, 36]),
        (N, &[18, 20, 21, 39]),
    ];
    for (id, lengths) in expected {
        let row = computed_row(basic_map(id));
        assert_eq!(row.row.useful_lengths, lengths, "map {id}");
    }
}

#[test]
fn tabulated_bold_lengths_are_carried_by_useful_cycles() {
    let report = validate_atlas();
    for m in &report.maps {
        assert!(m.computed.bold_contained, "map {}", m.id);
        assert_eq!(m.computed.genus, Some(0), "map {}", m.id);
    }
}

#[test]
fn map_e_row() {
    let row = computed_row(basic_map(BasicMapId::E)).row;
    assert_eq!(row.degree, 28);
    assert_eq!(row.t_parity, Sign::Even);
    assert_eq!(row.fixed_points, FixedPointVector::new(4, 1, 0));
    assert_eq!(row.handles, [1, 1, 0]);
    assert_eq!(row.w_cycles, vec![1, 9, 9, 9]);
}

#[test]
fn map_files_round_trip() {
    for id in BasicMapId::ALL {
        let m = basic_map(id);
        assert_eq!(&HurwitzMap::parse_map_file(&m.to_map_file()).unwrap(), m);
    }
}

#[test]
fn map_file_errors_carry_line_numbers() {
    let bad = "hurwitz-map 1\ndegree 3\nx ()\ny (0 1 2)\nt (0 1)\n";
    assert!(matches!(HurwitzMap::parse_map_file(bad), Err(MapError::Relation(_))));
    let bad = "hurwitz-map 1\ndegree 3\nx ()\ny (0 1 2\nt (1 2)\n";
    assert!(matches!(HurwitzMap::parse_map_file(bad), Err(MapError::Parse { line: 4, .. })));
    let bad = "hurwitz-map 2\n";
    assert!(matches!(HurwitzMap::parse_map_file(bad), Err(MapError::Parse { line: 1, .. })));
    let bad = "hurwitz-map 1\ndegree 3\nx ()\ny (0 1 2)\n";
    assert!(HurwitzMap::parse_map_file(bad).is_err());
    let ok = "# comment\nhurwitz-map 1\n\ndegree 1\nx ()\ny ()\nt ()\n";
    assert_eq!(HurwitzMap::parse_map_file(ok).unwrap().n(), 1);
}
