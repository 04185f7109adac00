#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(settings) = evobandit_cli::parse_config(text) {
        // Whatever parses must survive a round trip through its rendered form.
        let again =
            evobandit_cli::parse_config(&settings.to_toml(7)).expect("rendered config parses");
        assert_eq!(again.experiment.dim, settings.experiment.dim);
        assert_eq!(again.population_sizes, settings.population_sizes);
        assert_eq!(again.arms.len(), settings.arms.len());
    }
});
