#![no_main]

use blotto_cli::output::{parse_regret_csv, regret_csv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(log) = parse_regret_csv(text) {
        if log.iter().all(|c| c.total_regret.is_finite() && c.regret.iter().all(|r| r.is_finite())) {
            let again = parse_regret_csv(&regret_csv(&log)).expect("serialized log parses");
            assert_eq!(again.len(), log.len());
        }
    }
});
