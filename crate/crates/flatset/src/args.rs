use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flatset_core::BoundaryKind;

#[derive(Debug, Parser)]
#[command(
    name = "flatset",
    version,
    about = "Minimisers of ∫(Δu)² + λ|{u≠0}|: closed forms, solver cross-checks, diagnostics"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output file (stdout when absent).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format; reports default to json, sweeps to csv.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Seed for randomised fixtures (never used by the solvers).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bc {
    Navier,
    Dirichlet,
}

impl From<Bc> for BoundaryKind {
    fn from(b: Bc) -> Self {
        match b {
            Bc::Navier => BoundaryKind::Navier,
            Bc::Dirichlet => BoundaryKind::Dirichlet,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryKind {
    Interval,
    Disk,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Interval [-R, R] with Navier data: closed form, penalised solve, diagnostics.
    Solve1d(Solve1dArgs),
    /// Disk B_R: closed-form infimum, candidate, penalised cross-check, diagnostics.
    Radial(RadialArgs),
    /// Penalised solve alone, with the full grid profile.
    Grid(GridArgs),
    /// Closed-form infima over a parameter range, or the energy curve in ρ.
    Sweep(SweepArgs),
    /// Annular rearrangement and comparison function of a cell function.
    Rearrange(RearrangeArgs),
    /// All applicable diagnostics for a candidate file.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ScheduleArgs {
    /// Smallest relative penalty width (the schedule is 1e-1, 3e-2, 1e-2, ... down to it).
    #[arg(long, default_value_t = 1e-6)]
    pub eps_floor: f64,
    /// Stage tolerance on the step, relative to u0.
    #[arg(long, default_value_t = 1e-8)]
    pub inner_tol: f64,
    #[arg(long, default_value_t = 2000)]
    pub max_inner_iters: usize,
}

#[derive(Debug, Clone, Args)]
pub struct Solve1dArgs {
    /// Half-length of the interval.
    #[arg(long = "R", allow_negative_numbers = true)]
    pub r: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub u0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Grid nodes for the penalised solve.
    #[arg(long, default_value_t = 4096)]
    pub m: usize,
    /// Report the closed form only.
    #[arg(long)]
    pub skip_solver: bool,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
}

#[derive(Debug, Clone, Args)]
pub struct RadialArgs {
    #[arg(long, value_enum)]
    pub bc: Bc,
    #[arg(long, allow_negative_numbers = true)]
    pub u0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long = "R", default_value_t = 1.0, allow_negative_numbers = true)]
    pub r: f64,
    /// Dimension; closed forms exist for n = 2.
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    #[arg(long, default_value_t = 2048)]
    pub m: usize,
    /// Samples of the energy curve in ρ included in the report.
    #[arg(long, default_value_t = 101)]
    pub curve_points: usize,
    #[arg(long)]
    pub skip_solver: bool,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
}

#[derive(Debug, Clone, Args)]
pub struct GridArgs {
    #[arg(long, value_enum, default_value = "interval")]
    pub geometry: GeometryKind,
    #[arg(long, value_enum, default_value = "navier")]
    pub bc: Bc,
    #[arg(long = "R", default_value_t = 1.0, allow_negative_numbers = true)]
    pub r: f64,
    /// Dimension of the ball (disk geometry only).
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub u0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Nodes (default 4096 on intervals, 2048 on disks).
    #[arg(long)]
    pub m: Option<usize>,
    #[command(flatten)]
    pub schedule: ScheduleArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepMode {
    /// One closed-form infimum per parameter value.
    Param,
    /// Energy of the flat-core family as a function of ρ at fixed data.
    Curve,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepParam {
    U0,
    #[value(name = "R")]
    R,
    Lambda,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum, default_value = "param")]
    pub mode: SweepMode,
    #[arg(long, value_enum)]
    pub param: Option<SweepParam>,
    #[arg(long, allow_negative_numbers = true)]
    pub from: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub to: Option<f64>,
    #[arg(long)]
    pub points: usize,
    #[arg(long, value_enum, default_value = "disk")]
    pub geometry: GeometryKind,
    #[arg(long, value_enum, default_value = "navier")]
    pub bc: Bc,
    /// Boundary value (ignored when it is the swept parameter).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub u0: f64,
    #[arg(long = "R", default_value_t = 1.0, allow_negative_numbers = true)]
    pub r: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,
}

#[derive(Debug, Clone, Args)]
pub struct RearrangeArgs {
    /// Cell-function JSON: {"n", "hole_measure", "cells": [{"value", "measure"}]}.
    #[arg(long, conflicts_with = "random_cells")]
    pub input: Option<PathBuf>,
    /// Generate this many random equal-measure cells from --seed instead.
    #[arg(long)]
    pub random_cells: Option<usize>,
    /// Dimension of generated input.
    #[arg(long, default_value_t = 2)]
    pub n: u32,
    /// Hole as a fraction of the unit-ball volume, for generated input.
    #[arg(long, default_value_t = 0.25)]
    pub hole_fraction: f64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// Candidate JSON: {"n", "rho", "R", "coeffs": [4], "bc_kind", "u0"}.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub lambda: f64,
    /// Nodes of the sampling grid (default 4096 for n = 1, 2048 otherwise).
    #[arg(long)]
    pub m: Option<usize>,
}
