//! Deterministic, counter-based random draws.
//!
//! Every stochastic decision in a scenario is a pure function of
//! `(scenario seed, stream, vehicle id, step index, slot)`. This keeps the
//! draws of one behavior independent of whether another behavior consumed
//! randomness earlier in the step, which is what makes common-random-number
//! comparisons between controllers meaningful: enabling lane changing for the
//! subject cannot shift the spawn draws of a surrounding vehicle.

/// Named sub-streams, one per simulated behavior.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    WarmupNoise,
    WarmupPlatoon,
    Spawn,
    Exit,
    Merge,
    LaneChange,
    SplitSchedule,
}

impl Stream {
    fn tag(self) -> u64 {
        match self {
            Stream::WarmupNoise => 0x57_41_52_4d,
            Stream::WarmupPlatoon => 0x57_50_4c_54,
            Stream::Spawn => 0x53_50_41_57,
            Stream::Exit => 0x45_58_49_54,
            Stream::Merge => 0x4d_52_47_45,
            Stream::LaneChange => 0x4c_43_48_47,
            Stream::SplitSchedule => 0x53_43_48_44,
        }
    }
}

/// Seeded source of independent draws for one scenario.
#[derive(Debug, Clone, Copy)]
pub struct DrawSource {
    seed: u64,
}

impl DrawSource {
    pub fn new(seed: u64) -> Self {
        DrawSource { seed }
    }

    /// Uniform draw in [0, 1).
    pub fn uniform(&self, stream: Stream, id: u64, step: u64, slot: u64) -> f64 {
        let bits = self.mix(stream, id, step, slot);
        // 53 high bits -> uniform double in [0, 1)
        (bits >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal draw (Box-Muller on two counter draws).
    pub fn normal(&self, stream: Stream, id: u64, step: u64, slot: u64) -> f64 {
        let u1 = self.uniform(stream, id, step, slot.wrapping_mul(2));
        let u2 = self.uniform(stream, id, step, slot.wrapping_mul(2) + 1);
        let r = (-2.0 * (1.0 - u1).ln()).sqrt();
        r * (2.0 * std::f64::consts::PI * u2).cos()
    }

    fn mix(&self, stream: Stream, id: u64, step: u64, slot: u64) -> u64 {
        let mut x = self.seed;
        x = splitmix64(x ^ stream.tag());
        x = splitmix64(x ^ id.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        x = splitmix64(x ^ step.wrapping_mul(0xbf58_476d_1ce4_e5b9));
        x = splitmix64(x ^ slot.wrapping_mul(0x94d0_49bb_1331_11eb));
        x
    }
}

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = x;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a scenario seed from the experiment base seed, the traffic state,
/// and the instance index. The controller and value of time are deliberately
/// excluded so paired runs share their warm-up world and surrounding draws.
pub fn scenario_seed(base: u64, state_tag: u64, instance: u32) -> u64 {
    splitmix64(splitmix64(base ^ state_tag.wrapping_mul(0xd134_2543_de82_ef95)) ^ instance as u64)
}
