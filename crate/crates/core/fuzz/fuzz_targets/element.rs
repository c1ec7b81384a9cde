#![no_main]

use ifg::algebra::Element;
use ifg::model::Space;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&shape, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let space = Space::new(1 + (shape % 3) as usize, 1 + (shape / 3 % 2) as usize).unwrap();
    if let Ok(x) = Element::parse(text, space) {
        assert_eq!(Element::parse(&x.format(), space).unwrap(), x);
    }
});
