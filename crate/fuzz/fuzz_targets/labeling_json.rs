#![no_main]

use libfuzzer_sys::fuzz_target;
use pflab::limits::Limits;
use pflab::symbolic::SymbolicLabeling;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(value) = serde_json::from_str::<serde_json::Value>(text) else {
        return;
    };
    let limits = Limits::default();
    for edge_count in [0usize, 4, 9] {
        if let Ok(l) = SymbolicLabeling::from_json(&value, edge_count, &limits) {
            let again = SymbolicLabeling::from_json(&l.to_json(), edge_count, &limits).unwrap();
            assert_eq!(again, l);
        }
    }
});
