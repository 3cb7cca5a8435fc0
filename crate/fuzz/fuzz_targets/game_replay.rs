#![no_main]

use libfuzzer_sys::fuzz_target;
use sdml::fixtures;
use sdml::game::{replay, GameSpec, Variant};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let spec = GameSpec::named(
        fixtures::intro_graph(),
        "i",
        &["t", "g"],
        Variant::Definable,
        &["p", "q"],
        Some(4),
    )
    .expect("intro game");
    let _ = replay(&spec, text);
});
