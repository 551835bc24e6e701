use alloc::vec::Vec;
use core::fmt;

use crate::math;

/// Equidistantly sampled profile. Ordinates and sampling interval are in µm.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    z: Vec<f64>,
    dx: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProfileError {
    TooShort { len: usize },
    InvalidSpacing { dx: f64 },
    NonFinite { index: usize },
}

impl fmt::Display for ProfileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileError::TooShort { len } => {
                write!(f, "profile needs at least 2 samples, got {len}")
            }
            ProfileError::InvalidSpacing { dx } => {
                write!(f, "sampling interval must be finite and positive, got {dx}")
            }
            ProfileError::NonFinite { index } => {
                write!(f, "ordinate at sample {} is not finite", index + 1)
            }
        }
    }
}

impl core::error::Error for ProfileError {}

impl Profile {
    pub fn new(z: Vec<f64>, dx: f64) -> Result<Self, ProfileError> {
        if z.len() < 2 {
            return Err(ProfileError::TooShort { len: z.len() });
        }
        if !(dx.is_finite() && dx > 0.0) {
            return Err(ProfileError::InvalidSpacing { dx });
        }
        if let Some(index) = z.iter().position(|v| !v.is_finite()) {
            return Err(ProfileError::NonFinite { index });
        }
        Ok(Self { z, dx })
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    /// Always false; a profile holds at least two samples.
    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// Evaluation length `n * dx`.
    pub fn evaluation_length(&self) -> f64 {
        self.z.len() as f64 * self.dx
    }

    /// Ordinate at 1-based sample `i`.
    #[inline]
    pub fn sample(&self, i: usize) -> f64 {
        self.z[i - 1]
    }

    /// Ordinate at an interpolated 1-based index, read at `floor(index)`.
    /// On a plateau center this is the plateau height.
    #[inline]
    pub fn height_at(&self, index: f64) -> f64 {
        self.sample(math::floor(index) as usize)
    }

    /// Lateral position of a 1-based (interpolated) index.
    pub fn x_at(&self, index: f64) -> f64 {
        (index - 1.0) * self.dx
    }

    pub fn max(&self) -> f64 {
        self.z.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.z.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Profile mirrored on the x axis.
    pub fn mirrored(&self) -> Profile {
        Profile {
            z: self.z.iter().map(|v| -v).collect(),
            dx: self.dx,
        }
    }

    pub fn into_parts(self) -> (Vec<f64>, f64) {
        (self.z, self.dx)
    }
}
