#![no_main]

use libfuzzer_sys::fuzz_target;
use transurf::io::parse_curve_csv;
use transurf::verify::verify_curve;

fuzz_target!(|data: &[u8]| {
    // Whatever parses must also verify (or fail) without panicking.
    if let Ok(curve) = parse_curve_csv(data) {
        let _ = verify_curve(&curve, None, 1.0);
    }
});
