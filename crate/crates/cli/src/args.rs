//! Shared command-line arguments and their conversion to library inputs.

use clap::{Args, ValueEnum};
use codebounds::algebra::scalar::{parse_rational, Scalar};
use codebounds::energy::{Potential, PotentialSpec};
use codebounds::krawtchouk::HammingSpace;
use codebounds::levenshtein::{select_k, ProblemParams};
use codebounds::{BoundError, Result};

/// Parses `p/q`, an integer or a finite decimal.
pub fn rational(s: &str) -> std::result::Result<Scalar, String> {
    parse_rational(s)
}

/// Output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// Space and constraint parameters: `n`, `q`, and either distances
/// `(d, D)` or inner products `(ℓ, s)`.
#[derive(Args, Clone, Debug)]
pub struct ParamArgs {
    /// Code length.
    #[arg(short = 'n')]
    pub n: u32,
    /// Alphabet size.
    #[arg(short = 'q', default_value_t = 2)]
    pub q: u32,
    /// Minimum distance.
    #[arg(short = 'd', long = "dmin", conflicts_with = "s")]
    pub d: Option<u32>,
    /// Maximum distance.
    #[arg(short = 'D', long = "dmax", conflicts_with = "ell")]
    pub dmax: Option<u32>,
    /// Smallest inner product ℓ = 1 - 2D/n (rational).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub ell: Option<Scalar>,
    /// Largest inner product s = 1 - 2d/n (rational).
    #[arg(long, value_parser = rational, allow_hyphen_values = true)]
    pub s: Option<Scalar>,
    /// Half the degree of the bounding polynomial.
    #[arg(short = 'k')]
    pub k: Option<usize>,
    /// Largest k tried when k is not given (default n/2).
    #[arg(long)]
    pub k_max: Option<usize>,
}

fn inner_of(space: &HammingSpace, dist: u32, name: &str) -> Result<Scalar> {
    if dist < 1 || dist > space.n() {
        return Err(BoundError::InvalidParams(format!("{name} = {dist} must lie in [1, {}]", space.n())));
    }
    Ok(space.inner_of_distance(dist))
}

impl ParamArgs {
    pub fn space(&self) -> Result<HammingSpace> {
        HammingSpace::new(self.n, self.q)
    }

    pub fn k_max(&self) -> usize {
        self.k_max.unwrap_or((self.n as usize / 2).max(1))
    }

    /// `ℓ`, from `--ell` or `-D`.
    pub fn ell(&self, space: &HammingSpace) -> Result<Scalar> {
        match (&self.ell, self.dmax) {
            (Some(ell), _) => Ok(ell.clone()),
            (None, Some(dmax)) => inner_of(space, dmax, "D"),
            (None, None) => Err(BoundError::InvalidParams("give the maximum distance -D or --ell".into())),
        }
    }

    /// `s`, from `--s` or `-d`, when given.
    pub fn s_opt(&self, space: &HammingSpace) -> Result<Option<Scalar>> {
        match (&self.s, self.d) {
            (Some(s), _) => Ok(Some(s.clone())),
            (None, Some(d)) => inner_of(space, d, "d").map(Some),
            (None, None) => Ok(None),
        }
    }

    pub fn s(&self, space: &HammingSpace) -> Result<Scalar> {
        self.s_opt(space)?.ok_or_else(|| BoundError::InvalidParams("give the minimum distance -d or --s".into()))
    }

    /// Instance with the given `k`.
    pub fn params_with_k(&self, k: usize) -> Result<ProblemParams> {
        let space = self.space()?;
        match (self.d, self.dmax) {
            (Some(d), Some(dmax)) => ProblemParams::with_space_distances(space, d, dmax, k),
            _ => {
                let (ell, s) = (self.ell(&space)?, self.s(&space)?);
                ProblemParams::from_inner(space, ell, s, k)
            }
        }
    }

    /// Instance with `-k`, or with the valid `k` giving the smallest bound.
    pub fn params(&self) -> Result<ProblemParams> {
        let k = match self.k {
            Some(k) => k,
            None => {
                let base = self.params_with_k(1)?;
                select_k(&base.space, &base.ell, &base.s, self.k_max())?.best.k
            }
        };
        self.params_with_k(k)
    }
}

/// A potential descriptor with the table attestation flag.
#[derive(Args, Clone, Debug)]
pub struct PotentialArgs {
    /// Potential: invpow:sigma=<r>, exp:c=<r>, monomial:m=<int> or table:@<file>.
    #[arg(long, default_value = "exp:c=1")]
    pub potential: String,
    /// Declare a table potential absolutely monotone (required for tables).
    #[arg(long)]
    pub attest: bool,
}

impl PotentialArgs {
    pub fn resolve(&self) -> Result<Potential> {
        resolve_potential(&self.potential, self.attest)
    }
}

/// Parses a descriptor, reading table files.
pub fn resolve_potential(descriptor: &str, attest: bool) -> Result<Potential> {
    match descriptor.parse::<PotentialSpec>()? {
        PotentialSpec::Builtin(p) => Ok(p),
        PotentialSpec::TableFile(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| BoundError::Potential(format!("cannot read {path}: {e}")))?;
            Potential::parse_table(&text, attest)
        }
    }
}
