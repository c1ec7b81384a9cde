#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(phi) = ifg::syntax::parse(text, None) {
        let again =
            ifg::syntax::parse(&phi.pretty(), Some(phi.vars)).expect("pretty output parses");
        assert_eq!(again, phi);
        let _ = phi.desugar();
    }
});
