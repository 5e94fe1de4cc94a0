#![no_main]

use libfuzzer_sys::fuzz_target;
use transurf::fixtures::Fixture;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(f) = text.parse::<Fixture>() {
            let _ = f.surface(5);
        }
    }
});
