#![no_main]

use blotto::data::{parse_election, visits_to_allocation};
use blotto::Player;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(dataset) = parse_election(text) {
        let again = parse_election(&dataset.to_csv()).expect("serialized dataset parses");
        assert_eq!(again, dataset);
        for party in Player::BOTH {
            assert_eq!(visits_to_allocation(&dataset, party).total(), dataset.total(party));
        }
    }
});
