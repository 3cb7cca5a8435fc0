#![no_main]

use libfuzzer_sys::fuzz_target;
use sdml::formula::NamedFormulas;
use sdml::{FolFormula, HybridFormula, LdFormula};

// First byte picks the language.
fuzz_target!(|data: &[u8]| {
    let Some((&tag, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    match tag % 3 {
        0 => {
            if let Ok(n) = NamedFormulas::<LdFormula>::parse_ld(text) {
                let _ = n.conjunction();
            }
        }
        1 => {
            if let Ok(n) = NamedFormulas::<HybridFormula>::parse_hybrid(text) {
                let _ = n.conjunction();
            }
        }
        _ => {
            if let Ok(n) = NamedFormulas::<FolFormula>::parse_fol(text) {
                let _ = n.conjunction();
            }
        }
    }
});
