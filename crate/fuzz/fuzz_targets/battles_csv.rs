#![no_main]

use blotto::WinningRule;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(file) = blotto::data::parse_battles(text) {
        assert_eq!(file.values.len(), file.advantages.len());
        assert!(file.values.iter().all(|v| *v > 0.0 && v.is_finite()));
        if let Ok(spec) = file.to_game(3, 4, WinningRule::ElectoralVote) {
            let sum: f64 = spec.normalized_values().iter().sum();
            assert!((sum - 1.0).abs() < 1e-9);
        }
    }
});
