#![no_main]

use libfuzzer_sys::fuzz_target;
use sdml::KripkeModel;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = KripkeModel::from_json(text) {
        let again = KripkeModel::from_json(&m.to_json()).expect("saved model loads");
        assert!(again == m);
        let _ = sdml::kripke::to_dot(&m);
    }
});
