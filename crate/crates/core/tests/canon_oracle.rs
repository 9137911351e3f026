mod common;

use std::collections::HashMap;

use common::*;
use mpqenum_core::{build_mpq, canonize, isomorphic, validate_mpq, CanonicalString};
use mpqenum_oracle::{canonical_bruteforce, GraphKey};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn canonical_classes_match_bruteforce_classes() {
    for n in 1..=6 {
        let mut by_key: HashMap<GraphKey, CanonicalString> = HashMap::new();
        let mut by_canon: HashMap<CanonicalString, GraphKey> = HashMap::new();
        for s in all_interval_strings(n) {
            let key = canonical_bruteforce(&dense(&s)).unwrap();
            let c = CanonicalString::of(&s);
            assert_eq!(by_key.entry(key.clone()).or_insert_with(|| c.clone()), &c, "{s}");
            assert_eq!(by_canon.entry(c).or_insert(key.clone()), &key, "{s}");
        }
    }
}

#[test]
fn canonical_string_is_a_fixed_point_and_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..3000 {
        let n = 1 + (rand::Rng::gen_range(&mut rng, 0..14));
        let s = random_string(&mut rng, n);
        let t = build_mpq(&s);
        assert!(validate_mpq(&t).is_empty(), "{s}\n{t}");
        let (ct, c) = canonize(&t);
        assert!(validate_mpq(&ct).is_empty(), "{s}");
        assert_eq!(CanonicalString::of(c.as_rep()), c, "{s}");
        let sigma = random_perm(&mut rng, n);
        assert_eq!(CanonicalString::of(&s.relabel(&sigma)), c, "{s}");
        assert!(isomorphic(&s, c.as_rep()));
    }
}
