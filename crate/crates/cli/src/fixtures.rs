//! Deterministic example profiles.

use std::f64::consts::PI;

use fcprofile::Profile;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SEED: u64 = 5436;

#[derive(Debug, Clone)]
pub struct Example {
    pub name: &'static str,
    pub description: &'static str,
    /// A specification that shows the profile's structure.
    pub spec: &'static str,
    pub profile: Profile,
}

/// Sine, turned, riblet and plateau-honed profiles.
pub fn examples() -> Vec<Example> {
    vec![
        Example {
            name: "sine-1200",
            description: "Sine, amplitude 1 µm, wavelength 1200 µm, dx 0.5 µm over 4000 µm",
            spec: "FC;D;None;All;HDh;Mean",
            profile: sine(),
        },
        Example {
            name: "turned",
            description: "Turned surface, 20 feed marks of 100 µm from an 800 µm tool nose with micro-roughness",
            spec: "FC;D;Width 50;All;Count;Sum",
            profile: turned().0,
        },
        Example {
            name: "riblet",
            description: "Riblet foil, 15 blade ridges 90 µm apart on a flat ground",
            spec: "FC;H;Wolfprune 10 %;All;HDh;Mean",
            profile: riblet().0,
        },
        Example {
            name: "plateau-honed",
            description: "Plateau-honed liner, 7 deep grooves and 5 shallow scratches in a smooth plateau",
            spec: "FC;D;Wolfprune 5 %;Closed 95 %;Count;Sum",
            profile: plateau_honed().0,
        },
    ]
}

pub fn example(name: &str) -> Option<Example> {
    examples().into_iter().find(|e| e.name == name)
}

pub fn sine() -> Profile {
    let (dx, wavelength) = (0.5, 1200.0);
    let z = (0..8000)
        .map(|k| (2.0 * PI * k as f64 * dx / wavelength).sin())
        .collect();
    Profile::new(z, dx).unwrap()
}

/// Smooth random roughness: a few sinusoids with random wavelength and phase.
fn waviness(rng: &mut ChaCha8Rng, terms: usize, amplitude: f64, wavelengths: (f64, f64)) -> impl Fn(f64) -> f64 {
    let parts: Vec<(f64, f64, f64)> = (0..terms)
        .map(|_| {
            (
                amplitude * rng.random_range(0.5..1.0),
                rng.random_range(wavelengths.0..wavelengths.1),
                rng.random_range(0.0..2.0 * PI),
            )
        })
        .collect();
    move |x| parts.iter().map(|(a, l, p)| a * (2.0 * PI * x / l + p).sin()).sum()
}

/// Parabolic feed marks with ridges at multiples of the feed. Returns the
/// profile and the number of feed marks.
pub fn turned() -> (Profile, usize) {
    let (feed, radius, marks, dx) = (100.0, 800.0, 20, 0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let rough = waviness(&mut rng, 3, 0.008, (8.0, 20.0));
    let start = -feed / 4.0;
    let n = ((marks as f64 * feed + feed / 2.0) / dx) as usize + 1;
    let z = (0..n)
        .map(|k| {
            let x = start + k as f64 * dx;
            let c = ((x / feed).floor() + 0.5) * feed;
            (x - c).powi(2) / (2.0 * radius) + rough(x) + 0.001 * rng.random_range(-1.0..1.0)
        })
        .collect();
    (Profile::new(z, dx).unwrap(), marks)
}

/// Thin trapezoidal blades on a flat, slightly rough ground. Returns the
/// profile and the number of blades.
pub fn riblet() -> (Profile, usize) {
    let (pitch, blades, height, dx) = (90.0, 15, 8.0, 0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let rough = waviness(&mut rng, 4, 0.03, (5.0, 25.0));
    let n = (blades as f64 * pitch / dx) as usize;
    let z = (0..n)
        .map(|k| {
            let x = k as f64 * dx;
            let d = (x - ((x / pitch).floor() + 0.5) * pitch).abs();
            // 4 µm flat top, flanks 8 µm wide
            let blade = if d <= 2.0 {
                height
            } else if d <= 10.0 {
                height * (10.0 - d) / 8.0
            } else {
                0.0
            };
            blade + rough(x) + 0.005 * rng.random_range(-1.0..1.0)
        })
        .collect();
    (Profile::new(z, dx).unwrap(), blades)
}

/// Smooth plateau with V-shaped deep grooves (2.5 to 4 µm, 40 µm wide) and
/// shallow scratches (about 0.25 µm). Returns the profile and the number of
/// deep grooves.
pub fn plateau_honed() -> (Profile, usize) {
    let (length, dx) = (4000.0, 0.5);
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let rough = waviness(&mut rng, 5, 0.03, (15.0, 60.0));
    let deep: Vec<(f64, f64, f64)> = (0..7)
        .map(|k| (250.0 + 520.0 * k as f64 + rng.random_range(-60.0..60.0), rng.random_range(2.5..4.0), 20.0))
        .collect();
    let shallow: Vec<(f64, f64, f64)> = (0..5)
        .map(|k| (510.0 + 780.0 * k as f64 + rng.random_range(-40.0..40.0), rng.random_range(0.2..0.3), 10.0))
        .collect();
    let n = (length / dx) as usize;
    let z = (0..n)
        .map(|k| {
            let x = k as f64 * dx;
            let cut = deep
                .iter()
                .chain(&shallow)
                .map(|&(c, depth, half)| depth * (1.0 - (x - c).abs() / half).max(0.0))
                .fold(0.0, f64::max);
            rough(x) - cut + 0.005 * rng.random_range(-1.0..1.0)
        })
        .collect();
    (Profile::new(z, dx).unwrap(), deep.len())
}
