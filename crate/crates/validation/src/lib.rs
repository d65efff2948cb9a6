//! Holds the `acceptance` test target; run it with
//! `cargo test -p multifiber-validation --test acceptance`.
