#![no_main]

use ifg::calc::Calculator;
use ifg::model::Structure;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&shape, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let a = Structure::builtin(if shape % 2 == 0 { "2" } else { "3" }).unwrap();
    let calc = Calculator::with_structure(a, 1).unwrap();
    let _ = calc.eval(text);
});
