#![no_main]

use libfuzzer_sys::fuzz_target;
use sdml::lab::Schema;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(s) = Schema::from_json(text) else { return };
    let combos: usize = s.pools.values().map(|p| p.len().max(1)).product();
    if combos <= 256 && s.template.len() <= 4096 {
        if let Ok(instances) = s.instances() {
            let _ = s.sweep_atoms(&instances);
        }
    }
});
