#![allow(dead_code)]

use std::path::PathBuf;

use jonquieres::analysis::{random_map, RandomSpec};
use jonquieres::jonq::{load_instance, DeJonquieresMap};
use jonquieres::oracle::{Oracle, DEFAULT_PRIME};
use jonquieres::poly::Mode;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

pub fn load(name: &str) -> DeJonquieresMap {
    load_instance(&fixture(name), None, &Oracle::default()).unwrap()
}

pub const SHAPES: [(usize, u32); 6] = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (3, 4)];

/// The `k`-th random instance of `mode`, cycling through the desk-scale shapes.
pub fn random_instance(mode: Mode, k: u64) -> DeJonquieresMap {
    let (n, d) = SHAPES[(k % SHAPES.len() as u64) as usize];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + k);
    random_map(RandomSpec { mode, n, d, prime: DEFAULT_PRIME }, &mut rng)
}

/// Alternates modes: even `k` standard, odd `k` generalized.
pub fn random_mixed(k: u64) -> DeJonquieresMap {
    let mode = if k.is_multiple_of(2) { Mode::Standard } else { Mode::Generalized };
    random_instance(mode, k / 2)
}
