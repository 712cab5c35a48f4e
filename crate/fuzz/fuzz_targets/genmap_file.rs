#![no_main]
use libfuzzer_sys::fuzz_target;

use operadkit::presentations::catalog_get;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(parsed) = operadkit::dsl::parse_genmap(src) {
            if let (Ok(s), Ok(t)) = (catalog_get(&parsed.source), catalog_get(&parsed.target)) {
                if let Ok(map) = operadkit::presentations::GenMap::from_parsed(&parsed, s, t) {
                    let _ = operadkit::presentations::morphism_check(&map, s, t);
                }
            }
        }
    }
});
