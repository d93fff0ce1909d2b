#![no_main]

use libfuzzer_sys::fuzz_target;

// Multi-line stream ingestion: errors must carry line numbers, accepted
// graphs must be well formed, and nothing panics.
fuzz_target!(|data: &[u8]| {
    match kempe::scan::parse_graph6_stream(std::io::Cursor::new(data)) {
        Ok(graphs) => {
            for g in graphs {
                assert!(g.check_invariants());
            }
        }
        Err(err) => {
            assert!(err.to_string().contains("line "));
        }
    }
});
