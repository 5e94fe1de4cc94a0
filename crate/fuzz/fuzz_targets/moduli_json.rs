#![no_main]

use libfuzzer_sys::fuzz_target;
use transurf::Moduli;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(m) = Moduli::from_json(text) {
            let _ = m.validate();
            let _ = Moduli::from_json(&m.to_json());
        }
    }
});
