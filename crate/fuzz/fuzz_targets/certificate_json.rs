#![no_main]

use libfuzzer_sys::fuzz_target;

// Certificates are accepted from untrusted files for re-validation; the
// checks must fail cleanly on forged input, never panic.
fuzz_target!(|data: &[u8]| {
    if let Ok(cert) = serde_json::from_slice::<kempe::Certificate>(data) {
        let _ = kempe::verify::revalidate(&cert);
    }
});
