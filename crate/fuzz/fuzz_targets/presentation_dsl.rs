#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(src) = std::str::from_utf8(data) {
        if let Ok(parsed) = operadkit::dsl::parse_operads(src) {
            for block in parsed {
                let _ = operadkit::presentations::Presentation::from_parsed(block);
            }
        }
    }
});
