#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(alg) = operadkit::algebras::parse_algebra(src) {
            // a table that parses must survive a print/parse round trip
            let again = operadkit::algebras::parse_algebra(
                &operadkit::algebras::algebra_to_json(&alg),
            )
            .expect("round trip");
            assert_eq!(alg.dim, again.dim);
        }
    }
});
