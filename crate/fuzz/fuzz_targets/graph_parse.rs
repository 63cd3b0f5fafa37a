#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(g) = pflab::graph::Graph::parse(text) {
        // accepted graphs must round-trip through the emitter
        let again = pflab::graph::Graph::parse(&g.to_edge_list()).unwrap();
        assert_eq!(again.vertex_count(), g.vertex_count());
        assert_eq!(again.edges(), g.edges());
    }
});
