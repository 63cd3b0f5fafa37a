#![no_main]

use libfuzzer_sys::fuzz_target;
use pflab::orientation::KOrientation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for edge_count in [1usize, 6, 9] {
        if let Ok(kd) = KOrientation::parse(text, edge_count) {
            assert!(kd.k() >= 1);
            let again = KOrientation::parse(&kd.to_text(), edge_count).unwrap();
            assert_eq!(again, kd);
        }
    }
});
