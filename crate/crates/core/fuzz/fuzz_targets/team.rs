#![no_main]

use ifg::model::{Space, Team};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&shape, rest)) = data.split_first() else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    let space = Space::new(1 + (shape % 3) as usize, 1 + (shape / 3 % 2) as usize).unwrap();
    if let Ok(v) = Team::parse(text, &space) {
        assert_eq!(Team::parse(&v.format(&space), &space).unwrap(), v);
    }
    let _ = ifg::algebra::parse_team_list(text, &space);
    let _ = space.parse_valuation(text);
});
