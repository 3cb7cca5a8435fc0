#![no_main]

use libfuzzer_sys::fuzz_target;
use sdml::parse_ld;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_ld(text) {
        let printed = f.to_string();
        assert_eq!(parse_ld(&printed).expect("printed formula reparses"), f, "{printed}");
    }
});
