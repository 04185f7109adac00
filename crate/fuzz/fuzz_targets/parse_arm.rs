#![no_main]

use evobandit_core::ExperimentConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(arm) = evobandit_cli::parse_arm(text, &ExperimentConfig::default()) {
        arm.config.validate().expect("parsed arms are valid");
        let again = evobandit_cli::parse_arm(&arm.spec, &ExperimentConfig::default())
            .expect("label reparses");
        assert_eq!(again, arm);
    }
});
