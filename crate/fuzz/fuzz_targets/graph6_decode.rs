#![no_main]

use libfuzzer_sys::fuzz_target;

// The decoder must reject garbage with an error, never panic, and every
// accepted graph must be well formed and survive a round trip through the
// canonical encoder.
fuzz_target!(|data: &[u8]| {
    if let Ok(line) = std::str::from_utf8(data) {
        if let Ok(g) = kempe::graph6::decode(line) {
            assert!(g.check_invariants());
            let canonical = kempe::graph6::encode(&g);
            let back = kempe::graph6::decode(&canonical).expect("encoder output decodes");
            assert_eq!(back, g);
            assert_eq!(kempe::graph6::encode(&back), canonical);
        }
    }
});
