//! Holds the `acceptance` integration test, which prints one PASS or FAIL
//! line per criterion. Run it with `cargo test -p dhb-tests --test acceptance`.
