#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(a) = ifg::model::Structure::from_json(text) {
        let back = ifg::model::Structure::from_json(&a.to_json()).expect("round trip");
        assert_eq!(back.universe(), a.universe());
    }
});
