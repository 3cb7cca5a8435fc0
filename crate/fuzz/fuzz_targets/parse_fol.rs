#![no_main]

use libfuzzer_sys::fuzz_target;
use sdml::parse_fol;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_fol(text) {
        let printed = f.to_string();
        assert_eq!(parse_fol(&printed).expect("printed formula reparses"), f, "{printed}");
    }
});
