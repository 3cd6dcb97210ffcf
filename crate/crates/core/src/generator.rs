//! Random link streams from groups of moving particles.
//!
//! Particles live in a rectangular arena and are split round-robin into
//! groups; groups are the vertices. At each instant two groups are linked
//! when some particle of one is closer than `radius` to some particle of the
//! other. Between instants every velocity keeps a `friction` fraction of its
//! previous value, receives a random increment of norm at most `wind`, and is
//! truncated to `max_speed`. Particles bounce off the arena walls.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::stream::{LinkStream, Time, TimeInterval};

/// Name of the PRNG behind [`generate`], recorded in metadata sidecars.
pub const RNG_ALGORITHM: &str = "rand_chacha::ChaCha8Rng (seed_from_u64)";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub group_count: usize,
    /// Total number of particles, dealt round-robin to the groups.
    pub particle_count: usize,
    pub radius: f64,
    /// Fraction of the velocity kept from one step to the next.
    pub friction: f64,
    pub wind: f64,
    pub max_speed: f64,
    pub width: f64,
    pub height: f64,
    /// `|T|`; instants are `0..duration`.
    pub duration: u64,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    /// 100 groups over 200 instants: about 1.9·10⁵ timed edges and 10⁵
    /// γ-edges at γ = 5.
    fn default() -> Self {
        GeneratorConfig {
            group_count: 100,
            particle_count: 600,
            radius: 45.0,
            friction: 0.5,
            wind: 12.0,
            max_speed: 25.0,
            width: 1000.0,
            height: 1000.0,
            duration: 200,
            seed: 1,
        }
    }
}

/// False for NaN as well as for non-positive values.
fn positive(x: f64) -> bool {
    x > 0.0
}

impl GeneratorConfig {
    /// A small configuration for quick tests.
    pub fn small(group_count: usize, duration: u64, seed: u64) -> Self {
        GeneratorConfig {
            group_count,
            particle_count: group_count * 2,
            radius: 12.0,
            friction: 0.8,
            wind: 2.0,
            max_speed: 4.0,
            width: 60.0,
            height: 60.0,
            duration,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidConfig(what.to_string()));
        if self.group_count == 0 {
            return bad("group_count must be positive");
        }
        if self.particle_count == 0 {
            return bad("particle_count must be positive");
        }
        if !positive(self.radius) {
            return bad("radius must be positive");
        }
        if !(0.0..=1.0).contains(&self.friction) {
            return bad("friction must lie in [0, 1]");
        }
        if self.wind.is_nan() || self.wind < 0.0 {
            return bad("wind must be non-negative");
        }
        if !positive(self.max_speed) {
            return bad("max_speed must be positive");
        }
        if !(positive(self.width) && positive(self.height)) {
            return bad("arena must have positive width and height");
        }
        if self.duration == 0 {
            return bad("duration must be at least 1");
        }
        Ok(())
    }

    pub fn group_name(index: usize) -> String {
        format!("P{}", index + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Particle {
    pub x: f64,
    pub y: f64,
    pub vx: f64,
    pub vy: f64,
    pub group: usize,
}

impl Particle {
    pub fn speed(&self) -> f64 {
        self.vx.hypot(self.vy)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParticleState {
    pub particles: Vec<Particle>,
}

impl ParticleState {
    /// Uniform positions, zero velocities.
    pub fn initial(config: &GeneratorConfig, rng: &mut impl Rng) -> Self {
        let particles = (0..config.particle_count)
            .map(|i| Particle {
                x: rng.random::<f64>() * config.width,
                y: rng.random::<f64>() * config.height,
                vx: 0.0,
                vy: 0.0,
                group: i % config.group_count,
            })
            .collect();
        ParticleState { particles }
    }

    /// Advances every particle by one instant.
    pub fn step(&mut self, config: &GeneratorConfig, rng: &mut impl Rng) {
        for p in &mut self.particles {
            let (dx, dy) = random_in_disk(rng, config.wind);
            p.vx = config.friction * p.vx + dx;
            p.vy = config.friction * p.vy + dy;
            let speed = p.speed();
            if speed > config.max_speed {
                let scale = config.max_speed / speed;
                p.vx *= scale;
                p.vy *= scale;
            }
            (p.x, p.vx) = reflect(p.x + p.vx, p.vx, config.width);
            (p.y, p.vy) = reflect(p.y + p.vy, p.vy, config.height);
        }
    }

    /// Group pairs `(i, j)`, `i < j`, in contact at the current positions.
    /// Sorted, no duplicates.
    pub fn contacts(&self, config: &GeneratorConfig) -> Vec<(usize, usize)> {
        let grid = Grid::new(config);
        let mut cell_of: Vec<(usize, usize)> = self
            .particles
            .iter()
            .enumerate()
            .map(|(i, p)| (grid.cell(p.x, p.y), i))
            .collect();
        cell_of.sort_unstable();
        let mut start = vec![0usize; grid.cols * grid.rows + 1];
        for &(c, _) in &cell_of {
            start[c + 1] += 1;
        }
        for c in 0..grid.cols * grid.rows {
            start[c + 1] += start[c];
        }
        let members = |c: usize| cell_of[start[c]..start[c + 1]].iter().map(|&(_, i)| i);

        let r2 = config.radius * config.radius;
        let mut pairs = Vec::new();
        for cy in 0..grid.rows {
            for cx in 0..grid.cols {
                let here = cy * grid.cols + cx;
                if start[here] == start[here + 1] {
                    continue;
                }
                for (ny, nx) in grid.neighbours(cx, cy) {
                    let there = ny * grid.cols + nx;
                    for i in members(here) {
                        for j in members(there) {
                            if there == here && j <= i {
                                continue;
                            }
                            let (a, b) = (&self.particles[i], &self.particles[j]);
                            if a.group == b.group {
                                continue;
                            }
                            let (ddx, ddy) = (a.x - b.x, a.y - b.y);
                            if ddx * ddx + ddy * ddy < r2 {
                                pairs.push((a.group.min(b.group), a.group.max(b.group)));
                            }
                        }
                    }
                }
            }
        }
        pairs.sort_unstable();
        pairs.dedup();
        pairs
    }

    /// `E_t` as timed edges over group indices.
    pub fn edges_at(&self, config: &GeneratorConfig, t: Time) -> Vec<(Time, usize, usize)> {
        self.contacts(config)
            .into_iter()
            .map(|(i, j)| (t, i, j))
            .collect()
    }
}

fn random_in_disk(rng: &mut impl Rng, radius: f64) -> (f64, f64) {
    if radius == 0.0 {
        return (0.0, 0.0);
    }
    loop {
        let x = rng.random::<f64>() * 2.0 - 1.0;
        let y = rng.random::<f64>() * 2.0 - 1.0;
        if x * x + y * y <= 1.0 {
            return (x * radius, y * radius);
        }
    }
}

fn reflect(pos: f64, vel: f64, limit: f64) -> (f64, f64) {
    if pos < 0.0 {
        ((-pos).min(limit), -vel)
    } else if pos > limit {
        ((2.0 * limit - pos).max(0.0), -vel)
    } else {
        (pos, vel)
    }
}

/// Uniform grid with cells at least `radius` wide, so contacts only occur
/// between neighbouring cells.
struct Grid {
    cell: f64,
    cols: usize,
    rows: usize,
}

impl Grid {
    const MAX_SIDE: usize = 1024;

    fn new(config: &GeneratorConfig) -> Self {
        let longest = config.width.max(config.height);
        let cell = config.radius.max(longest / Self::MAX_SIDE as f64);
        let cols = ((config.width / cell).ceil() as usize).max(1);
        let rows = ((config.height / cell).ceil() as usize).max(1);
        Grid { cell, cols, rows }
    }

    fn cell(&self, x: f64, y: f64) -> usize {
        let cx = ((x / self.cell) as usize).min(self.cols - 1);
        let cy = ((y / self.cell) as usize).min(self.rows - 1);
        cy * self.cols + cx
    }

    /// The cell itself and the forward half of its 8-neighbourhood, so each
    /// unordered cell pair is visited once.
    fn neighbours(&self, cx: usize, cy: usize) -> impl Iterator<Item = (usize, usize)> + '_ {
        const OFFSETS: [(isize, isize); 5] = [(0, 0), (0, 1), (1, -1), (1, 0), (1, 1)];
        OFFSETS.iter().filter_map(move |&(dy, dx)| {
            let ny = cy as isize + dy;
            let nx = cx as isize + dx;
            (ny >= 0 && nx >= 0 && (ny as usize) < self.rows && (nx as usize) < self.cols)
                .then_some((ny as usize, nx as usize))
        })
    }
}

/// Runs the simulation for `config.duration` instants.
pub fn generate(config: &GeneratorConfig) -> Result<LinkStream> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut state = ParticleState::initial(config, &mut rng);
    let mut edges = Vec::new();
    for t in 0..config.duration {
        if t > 0 {
            state.step(config, &mut rng);
        }
        edges.extend(state.edges_at(config, t));
    }
    let names = (0..config.group_count).map(GeneratorConfig::group_name).collect();
    Ok(LinkStream::from_indexed(
        TimeInterval::new(0, config.duration - 1),
        names,
        edges,
    ))
}

/// JSON sidecar written next to generated streams.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorMetadata {
    pub config: GeneratorConfig,
    pub rng: String,
    pub vertices: usize,
    pub instants: u64,
    pub edges: usize,
}

impl GeneratorMetadata {
    pub fn new(config: &GeneratorConfig, stream: &LinkStream) -> Self {
        GeneratorMetadata {
            config: config.clone(),
            rng: RNG_ALGORITHM.to_string(),
            vertices: stream.vertex_count(),
            instants: stream.instant_count(),
            edges: stream.edge_count(),
        }
    }
}
