#![no_main]

use libfuzzer_sys::fuzz_target;
use pflab::orientation::Orientation;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for edge_count in [0usize, 1, 4, 9, 16] {
        if let Ok(d) = Orientation::parse(text, edge_count) {
            assert_eq!(d.edge_count(), edge_count);
            let again = Orientation::parse(&d.to_bit_string(), edge_count).unwrap();
            assert_eq!(again, d);
        }
    }
});
