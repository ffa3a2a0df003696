//! Front ends of the library computations.

use clap::{Args, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::args::{rational, ParamArgs, PotentialArgs};
use crate::output::{bounds, csv_table, distance_of, opt, Render};
use codebounds::algebra::interval::Interval;
use codebounds::algebra::scalar::Scalar;
use codebounds::diagnostics::{
    distance_distribution, improving_polynomial, refine_polynomials, scan_test_functions, scan_test_functions_m, DistanceDistribution, ExtraNode,
    ImprovingPolynomial, RefineOptions, RefineReport, TestFunctionReport, Verdict,
};
use codebounds::energy::{energy_lower_bound, energy_lower_bound_at_k, energy_upper_bound, EnergyReport};
use codebounds::krawtchouk::HammingSpace;
use codebounds::levenshtein::{select_k, BoundReport, KSelection, LevenshteinInstance};
use codebounds::oracle::{design_strength, exhaustive_energy_extrema, exhaustive_max_code, macwilliams, Code, EnergyExtrema, Limits, MacWilliamsVector, MaxCode};
use codebounds::{BoundError, Result};

fn flag_line(report: &BoundReport) -> String {
    let f = &report.flags;
    let items = [
        ("ell_condition", f.ell_condition),
        ("ell_below_first_zero", f.ell_below_first_zero),
        ("ell_above_next_zero", f.ell_above_next_zero),
        ("s_location", f.s_location),
        ("s_condition", f.s_condition),
        ("constant_positive", f.constant_positive),
        ("krein", f.krein),
        ("f_nonnegative", f.f_nonnegative),
        ("f_positive", f.f_positive),
        ("interior_nodes", f.interior_nodes),
        ("weights_positive", f.weights_positive),
        ("closed_form_agrees", f.closed_form_agrees),
    ];
    items.iter().map(|(name, v)| format!("{name}={v}")).collect::<Vec<_>>().join(" ")
}

fn header(n: u32, q: u32, ell: &Scalar, s: Option<&Scalar>) -> String {
    let dmax = opt(&distance_of(n, ell));
    match s {
        Some(s) => format!("n = {n}, q = {q}, ℓ = {ell} (D = {dmax}), s = {s} (d = {})", opt(&distance_of(n, s))),
        None => format!("n = {n}, q = {q}, ℓ = {ell} (D = {dmax})"),
    }
}

// ---------------------------------------------------------------- bound

/// Cardinality bound with the selected `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundOutput {
    pub selection: KSelection,
}

pub fn bound(args: &ParamArgs, prec: u32) -> Result<BoundOutput> {
    let selection = match args.k {
        Some(k) => {
            let report = LevenshteinInstance::with_precision(&args.params_with_k(k)?, prec)?.report();
            KSelection { best: report, valid: vec![k], rejected: Vec::new() }
        }
        None => {
            let base = args.params_with_k(1)?;
            select_k(&base.space, &base.ell, &base.s, args.k_max())?
        }
    };
    Ok(BoundOutput { selection })
}

impl Render for BoundOutput {
    fn text(&self) -> String {
        let r = &self.selection.best;
        let mut out = format!("{}\n", header(r.n, r.q, &r.ell, Some(&r.s)));
        out += &format!("k = {}\nL = {}\nfloor(L) = {}\n", r.k, r.value, r.floor);
        out += &format!("closed form = {}\n", r.closed_form.as_ref().map_or("undefined".to_string(), ToString::to_string));
        out += &format!("valid k = {:?}\n", self.selection.valid);
        for (k, reason) in &self.selection.rejected {
            out += &format!("rejected k = {k}: {reason}\n");
        }
        out += &format!("flags: {}\n", flag_line(r));
        out
    }

    fn csv(&self) -> Result<String> {
        let r = &self.selection.best;
        csv_table(
            &["n", "q", "ell", "s", "k", "L", "floor", "closed_form", "valid"],
            [vec![
                r.n.to_string(),
                r.q.to_string(),
                r.ell.to_string(),
                r.s.to_string(),
                r.k.to_string(),
                r.value.to_string(),
                r.floor.to_string(),
                opt(&r.closed_form),
                r.flags.valid().to_string(),
            ]],
        )
    }
}

// ---------------------------------------------------------------- energy

/// Which energy bounds to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnergyMode {
    /// Lower bound, plus the upper bound when `s` is given.
    Auto,
    Lower,
    Upper,
}

#[derive(Args, Clone, Debug)]
pub struct EnergyArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Code size M (rational).
    #[arg(short = 'M', value_parser = rational)]
    pub m: Scalar,
    #[command(flatten)]
    pub potential: PotentialArgs,
    #[arg(long, value_enum, default_value_t = EnergyMode::Auto)]
    pub mode: EnergyMode,
}

/// Energy bounds; `consistent` is set when both are present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnergyOutput {
    pub lower: Option<EnergyReport>,
    pub upper: Option<EnergyReport>,
    pub consistent: Option<bool>,
}

pub fn energy(args: &EnergyArgs, prec: u32) -> Result<EnergyOutput> {
    let p = &args.params;
    let space = p.space()?;
    let h = args.potential.resolve()?;
    let ell = p.ell(&space)?;
    let s = p.s_opt(&space)?;
    let want_lower = args.mode != EnergyMode::Upper;
    let want_upper = args.mode == EnergyMode::Upper || (args.mode == EnergyMode::Auto && s.is_some());
    let lower = if want_lower {
        Some(match p.k {
            Some(k) => energy_lower_bound_at_k(&space, &ell, &args.m, &h, k, prec)?,
            None => energy_lower_bound(&space, &ell, &args.m, &h, p.k_max(), prec)?,
        })
    } else {
        None
    };
    let upper = if want_upper {
        let params = p.params()?;
        Some(energy_upper_bound(&space, &args.m, &params.ell, &params.s, params.k, &h, prec)?)
    } else {
        None
    };
    let consistent = match (&lower, &upper) {
        (Some(l), Some(u)) => Some(l.lower.as_ref().zip(u.upper.as_ref()).is_some_and(|(l, u)| l.lo <= u.hi)),
        _ => None,
    };
    Ok(EnergyOutput { lower, upper, consistent })
}

fn energy_text(r: &EnergyReport, out: &mut String) {
    *out += &format!("{}\n", header(r.n, r.q, &r.ell, r.s.as_ref()));
    *out += &format!("M = {}, k = {}, potential = {}\n", r.m, r.k, r.potential);
    if let Some(s) = &r.s_solved {
        *out += &format!("s solved from L(s) = M: {s}\n");
    }
    if let Some(l) = &r.lower {
        *out += &format!("lower bound = {l}\n  lo = {}\n  hi = {}\n", l.lo, l.hi);
    }
    if let Some(u) = &r.upper {
        *out += &format!("upper bound = {u}\n  lo = {}\n  hi = {}\n", u.lo, u.hi);
    }
    if let Some(lambda) = &r.lambda {
        *out += &format!("lambda = {lambda}\n");
    }
    *out += &format!("flags: {:?}\n", r.flags);
}

impl Render for EnergyOutput {
    fn text(&self) -> String {
        let mut out = String::new();
        for r in self.lower.iter().chain(&self.upper) {
            energy_text(r, &mut out);
        }
        if let Some(c) = self.consistent {
            out += &format!("lower ≤ upper: {c}\n");
        }
        out
    }

    fn csv(&self) -> Result<String> {
        let rows = self.lower.iter().chain(&self.upper).map(|r| {
            let [llo, lhi] = bounds(&r.lower);
            let [ulo, uhi] = bounds(&r.upper);
            vec![r.n.to_string(), r.q.to_string(), r.k.to_string(), r.m.to_string(), r.ell.to_string(), opt(&r.s), r.potential.clone(), llo, lhi, ulo, uhi]
        });
        csv_table(&["n", "q", "k", "M", "ell", "s", "potential", "lower_lo", "lower_hi", "upper_lo", "upper_hi"], rows)
    }
}

// ---------------------------------------------------------------- distdist

#[derive(Args, Clone, Debug)]
pub struct DistArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Also report the energy of an attaining code under this potential.
    #[arg(long)]
    pub potential: Option<String>,
    #[arg(long)]
    pub attest: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistOutput {
    pub distribution: DistanceDistribution,
    pub potential: Option<String>,
    pub energy: Option<Interval>,
}

pub fn distdist(args: &DistArgs, prec: u32) -> Result<DistOutput> {
    let params = args.params.params()?;
    let distribution = distance_distribution(&params, prec)?;
    let (potential, energy) = match &args.potential {
        Some(desc) => {
            let h = crate::args::resolve_potential(desc, args.attest)?;
            (Some(h.descriptor()), Some(distribution.energy(&h, prec + 32)?))
        }
        None => (None, None),
    };
    Ok(DistOutput { distribution, potential, energy })
}

impl Render for DistOutput {
    fn text(&self) -> String {
        let d = &self.distribution;
        let mut out = format!("n = {}, q = {}, k = {}, |C| = {}\n", d.n, d.q, d.k, d.size);
        for e in &d.entries {
            let count = e.integer.as_ref().map_or_else(|| e.count.to_string(), ToString::to_string);
            out += &format!("node {} distance {}: A = {count}\n", e.node, opt(&e.distance));
        }
        out += &format!("attainable: {}\n", d.attainable);
        if let (Some(p), Some(e)) = (&self.potential, &self.energy) {
            out += &format!("energy ({p}) = {e}\n");
        }
        out
    }

    fn csv(&self) -> Result<String> {
        let rows = self.distribution.entries.iter().map(|e| {
            vec![opt(&e.distance), e.node.lo.to_string(), e.node.hi.to_string(), e.count.lo.to_string(), e.count.hi.to_string(), opt(&e.integer)]
        });
        csv_table(&["distance", "node_lo", "node_hi", "count_lo", "count_hi", "count"], rows)
    }
}

// ---------------------------------------------------------------- testfn

#[derive(Args, Clone, Debug)]
pub struct TestfnArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Largest j scanned (default 2k + 10, capped at n).
    #[arg(long)]
    pub j_max: Option<usize>,
    /// Scan S_j(M) for the energy bound instead of R_j(s).
    #[arg(short = 'M', value_parser = rational)]
    pub m: Option<Scalar>,
    /// Build the improving polynomial when some R_j is negative.
    #[arg(long)]
    pub improve: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TestfnOutput {
    pub report: TestFunctionReport,
    pub improving: Option<ImprovingPolynomial>,
}

pub fn testfn(args: &TestfnArgs, prec: u32) -> Result<TestfnOutput> {
    let p = &args.params;
    match &args.m {
        Some(m) => {
            let space = p.space()?;
            let k = p.k.ok_or_else(|| BoundError::InvalidParams("-k is required with -M".into()))?;
            let j_max = args.j_max.unwrap_or(2 * k + 10);
            let report = scan_test_functions_m(&space, &p.ell(&space)?, k, m, j_max, prec)?;
            Ok(TestfnOutput { report, improving: None })
        }
        None => {
            let params = p.params()?;
            let j_max = args.j_max.unwrap_or(2 * params.k + 10);
            let report = scan_test_functions(&params, j_max, prec)?;
            let improving = match (&report.verdict, args.improve) {
                (Verdict::Improvable { j }, true) => Some(improving_polynomial(&params, *j, prec)?),
                _ => None,
            };
            Ok(TestfnOutput { report, improving })
        }
    }
}

impl Render for TestfnOutput {
    fn text(&self) -> String {
        let r = &self.report;
        let mut out = format!("{}\n", header(r.n, r.q, &r.ell, r.s.as_ref()));
        if let Some(m) = &r.m {
            out += &format!("M = {m}\n");
        }
        out += &format!("k = {}, scanned j = {}..={}\n", r.k, r.j_range.0, r.j_range.1);
        for (j, v) in &r.values {
            out += &format!("j = {j}: {v}\n");
        }
        out += &format!("verdict: {:?}\n", r.verdict);
        if let Some(v) = &self.improving {
            out += &format!("improving polynomial at j = {}: bound {} (value {})\n", v.j, v.bound, v.value);
        }
        out
    }

    fn csv(&self) -> Result<String> {
        let rows = self.report.values.iter().map(|(j, v)| {
            let sign = match (v.is_negative(), v.is_nonnegative()) {
                (true, _) => "negative",
                (_, true) => "nonnegative",
                _ => "undecided",
            };
            vec![j.to_string(), v.lo.to_string(), v.hi.to_string(), sign.to_string()]
        });
        csv_table(&["j", "lo", "hi", "sign"], rows)
    }
}

// ---------------------------------------------------------------- refine

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtraNodeArg {
    Below,
    Above,
}

#[derive(Args, Clone, Debug)]
pub struct RefineArgs {
    #[command(flatten)]
    pub params: ParamArgs,
    /// Also refine the energy bound for this code size.
    #[arg(short = 'M', value_parser = rational)]
    pub m: Option<Scalar>,
    /// Potential of the refined energy bound.
    #[arg(long)]
    pub potential: Option<String>,
    #[arg(long)]
    pub attest: bool,
    /// Grid neighbour of s used as the extra interpolation node.
    #[arg(long, value_enum, default_value_t = ExtraNodeArg::Below)]
    pub extra_node: ExtraNodeArg,
}

pub fn refine(args: &RefineArgs, prec: u32) -> Result<RefineReport> {
    let params = args.params.params()?;
    let h = args.potential.as_deref().map(|d| crate::args::resolve_potential(d, args.attest)).transpose()?;
    if h.is_some() != args.m.is_some() {
        return Err(BoundError::InvalidParams("the energy refinement needs both -M and --potential".into()));
    }
    let extra_node = match args.extra_node {
        ExtraNodeArg::Below => ExtraNode::Below,
        ExtraNodeArg::Above => ExtraNode::Above,
    };
    let options = RefineOptions { extra_node, m: args.m.clone() };
    refine_polynomials(&params, h.as_ref(), &options, prec)
}

impl Render for RefineReport {
    fn text(&self) -> String {
        let mut out = format!("{}\n", header(self.n, self.q, &self.ell, Some(&self.s)));
        out += &format!("k = {}, original bound = {}\n", self.k, self.original_bound);
        for (i, c) in self.candidates.iter().enumerate() {
            let gammas = c.gammas.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
            out += &format!(
                "candidate {i}: gammas [{gammas}] feasible = {} nonpositive on grid = {} bound = {}\n",
                c.feasible,
                c.nonpositive_on_grid,
                opt(&c.bound)
            );
        }
        out += &format!("refined bound = {}\n", self.bound());
        if let Some(e) = &self.energy {
            out += &format!("refined energy bound ({}, M = {}): {} (feasible = {})\n", e.potential, e.m, opt(&e.bound), e.feasible);
        }
        out
    }

    fn csv(&self) -> Result<String> {
        let rows = self.candidates.iter().enumerate().map(|(i, c)| {
            let gammas = c.gammas.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
            vec![i.to_string(), gammas, c.feasible.to_string(), c.nonpositive_on_grid.to_string(), opt(&c.bound), (self.chosen == Some(i)).to_string()]
        });
        csv_table(&["candidate", "gammas", "feasible", "nonpositive_on_grid", "bound", "chosen"], rows)
    }
}

// ---------------------------------------------------------------- oracle

#[derive(Subcommand, Clone, Debug)]
pub enum OracleCommand {
    /// Exact largest code with distances in [d, D], compared with the bound.
    MaxCode(OracleSpaceArgs),
    /// Exact minimum and maximum energies of M-point codes.
    Energy {
        #[command(flatten)]
        space: OracleSpaceArgs,
        #[arg(short = 'M')]
        m: usize,
        #[command(flatten)]
        potential: PotentialArgs,
    },
    /// Design strength and MacWilliams transform of an explicit code.
    Design {
        /// File with one word per line.
        #[arg(long, conflicts_with = "even_weight", required_unless_present = "even_weight")]
        file: Option<String>,
        #[arg(short = 'q', default_value_t = 2)]
        q: u32,
        /// Use the binary even-weight code of this length.
        #[arg(long)]
        even_weight: Option<u32>,
    },
}

#[derive(Args, Clone, Debug)]
pub struct OracleSpaceArgs {
    #[arg(short = 'n')]
    pub n: u32,
    #[arg(short = 'q', default_value_t = 2)]
    pub q: u32,
    #[arg(short = 'd')]
    pub d: u32,
    #[arg(short = 'D')]
    pub dmax: u32,
    /// Largest admissible q^n.
    #[arg(long, default_value_t = codebounds::oracle::DEFAULT_BUDGET)]
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum OracleOutput {
    MaxCode {
        max_code: MaxCode,
        /// The cardinality bound with the best valid `k`, if any.
        bound: Option<BoundReport>,
        /// `|C| ≤ ⌊L⌋` when a bound is available.
        dominated: Option<bool>,
    },
    Energy {
        n: u32,
        q: u32,
        extrema: Option<EnergyExtrema>,
    },
    Design {
        code: Code,
        #[serde(with = "codebounds::serde_util::rational_vec")]
        distance_distribution: Vec<Scalar>,
        macwilliams: MacWilliamsVector,
        strength: usize,
    },
}

pub fn oracle(cmd: &OracleCommand, prec: u32) -> Result<OracleOutput> {
    match cmd {
        OracleCommand::MaxCode(a) => {
            let space = HammingSpace::new(a.n, a.q)?;
            let max_code = exhaustive_max_code(&space, a.d, a.dmax, a.budget)?;
            let bound = if a.d < a.dmax {
                let (ell, s) = (space.inner_of_distance(a.dmax), space.inner_of_distance(a.d));
                let k_max = (a.n as usize / 2).max(1);
                select_k(&space, &ell, &s, k_max).ok().map(|sel| sel.best)
            } else {
                None
            };
            let dominated = bound.as_ref().map(|b| num_bigint::BigInt::from(max_code.size) <= b.floor);
            Ok(OracleOutput::MaxCode { max_code, bound, dominated })
        }
        OracleCommand::Energy { space: a, m, potential } => {
            let space = HammingSpace::new(a.n, a.q)?;
            let h = potential.resolve()?;
            let limits = Limits { space: a.budget, ..Limits::default() };
            let extrema = exhaustive_energy_extrema(&space, *m, a.d, a.dmax, &h, limits, prec + 32)?;
            Ok(OracleOutput::Energy { n: a.n, q: a.q, extrema })
        }
        OracleCommand::Design { file, q, even_weight } => {
            let code = match (file, even_weight) {
                (_, Some(n)) => Code::even_weight(*n)?,
                (Some(path), None) => {
                    let text = std::fs::read_to_string(path).map_err(|e| BoundError::InvalidParams(format!("cannot read {path}: {e}")))?;
                    Code::parse(*q, &text)?
                }
                (None, None) => return Err(BoundError::InvalidParams("give --file or --even-weight".into())),
            };
            let strength = design_strength(&code, codebounds::oracle::DEFAULT_BUDGET)?;
            Ok(OracleOutput::Design { distance_distribution: code.distance_distribution(), macwilliams: macwilliams(&code)?, strength, code })
        }
    }
}

impl Render for OracleOutput {
    fn text(&self) -> String {
        match self {
            OracleOutput::MaxCode { max_code, bound, dominated } => {
                let mut out = format!("max code size with distances in [{}, {}]: {}\n", max_code.d, max_code.dmax, max_code.size);
                if let Some(b) = bound {
                    out += &format!("bound (k = {}): {} (floor {})\n", b.k, b.value, b.floor);
                }
                if let Some(dom) = dominated {
                    out += &format!("size ≤ floor(bound): {dom}\n");
                }
                out += "witness:\n";
                out += &max_code.witness.to_string();
                out
            }
            OracleOutput::Energy { n, q, extrema } => match extrema {
                None => format!("no code of this size exists in F_{q}^{n}\n"),
                Some(e) => format!(
                    "M = {}, distances in [{}, {}], potential = {}\nmin energy = {}\nmax energy = {}\ndistinct distance profiles: {}\nmin witness:\n{}max witness:\n{}",
                    e.m, e.d, e.dmax, e.potential, e.min, e.max, e.distributions, e.min_witness, e.max_witness
                ),
            },
            OracleOutput::Design { code, distance_distribution, macwilliams, strength } => {
                let b = distance_distribution.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                let mw = macwilliams.values.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                format!("|C| = {}, n = {}, q = {}\ndistance distribution: [{b}]\nMacWilliams transform: [{mw}]\nstrength = {strength}\n", code.len(), code.n, code.q)
            }
        }
    }

    fn csv(&self) -> Result<String> {
        match self {
            OracleOutput::MaxCode { max_code, bound, dominated } => csv_table(
                &["d", "D", "size", "bound", "floor", "dominated"],
                [vec![
                    max_code.d.to_string(),
                    max_code.dmax.to_string(),
                    max_code.size.to_string(),
                    bound.as_ref().map(|b| b.value.to_string()).unwrap_or_default(),
                    bound.as_ref().map(|b| b.floor.to_string()).unwrap_or_default(),
                    opt(dominated),
                ]],
            ),
            OracleOutput::Energy { extrema, .. } => {
                let rows = extrema.iter().map(|e| {
                    vec![e.m.to_string(), e.d.to_string(), e.dmax.to_string(), e.potential.clone(), e.min.lo.to_string(), e.min.hi.to_string(), e.max.lo.to_string(), e.max.hi.to_string()]
                });
                csv_table(&["M", "d", "D", "potential", "min_lo", "min_hi", "max_lo", "max_hi"], rows)
            }
            OracleOutput::Design { distance_distribution, macwilliams, .. } => {
                let rows = distance_distribution.iter().zip(&macwilliams.values).enumerate().map(|(i, (b, m))| vec![i.to_string(), b.to_string(), m.to_string()]);
                csv_table(&["i", "B", "B_dual"], rows)
            }
        }
    }
}
