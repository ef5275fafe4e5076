//! Verdicts and seeding shared by the sampled checks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// The sampling budget ran out before a decision.
    Inconclusive,
    /// A precondition of the check does not hold.
    NotApplicable,
}

impl Verdict {
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
            (NotApplicable, x) | (x, NotApplicable) => x,
            (Pass, Pass) => Pass,
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
            Verdict::NotApplicable => "not-applicable",
        })
    }
}

/// Independent stream for a named task under a master seed.
pub fn derived_rng(seed: u64, label: &str) -> ChaCha8Rng {
    // FNV-1a over the label, mixed with the seed
    let mut h: u64 = 0xcbf2_9ce4_8422_2325 ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn labels_give_distinct_streams() {
        let a: u64 = derived_rng(0, "radical").gen();
        let b: u64 = derived_rng(0, "duality").gen();
        let c: u64 = derived_rng(0, "radical").gen();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn fail_dominates() {
        assert_eq!(Verdict::Pass.and(Verdict::Fail), Verdict::Fail);
        assert_eq!(
            Verdict::Inconclusive.and(Verdict::Pass),
            Verdict::Inconclusive
        );
        assert_eq!(Verdict::NotApplicable.and(Verdict::Pass), Verdict::Pass);
    }
}
