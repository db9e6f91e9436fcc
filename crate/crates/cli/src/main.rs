//! Command-line front end: every analysis as a subcommand with
//! machine-readable, reproducible output (JSON or CSV).

mod config;
mod fmt;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use fmt::sig9;
use psthresh::bounds::{self, FaultySetSpec, GateNoiseProfile};
use psthresh::concat::{self, ConcatenationScheme, FixedPoint, Mode};
use psthresh::noise::{
    all_order_edge_model, leading_order_edge_model, sample_location_model, CircuitNoiseParams, EdgeErrorModel,
};
use psthresh::saw::{self, SingularCountTable};
use psthresh::sim::{
    exact_distributions, mc_sample, parse_netlist, verify_postselected_regime, BuiltinCircuit, CliffordCircuit, EnumOptions,
    McOptions, StochasticPauliNoise,
};
use psthresh::surface::{self, Order};

const VERSION: &str = env!("CARGO_PKG_VERSION");
/// Default RNG seed for every sampling subcommand, so default runs are
/// bit-reproducible.
const DEFAULT_SEED: u64 = 20180712;

#[derive(Parser)]
#[command(
    name = "psthresh",
    version,
    about = "Noise-threshold analysis for postselected fault tolerance",
    long_about = "Noise-threshold analysis for postselected fault tolerance.\n\
                  Outputs are deterministic: identical flags (and seeds, which\n\
                  default to a fixed value) produce byte-identical artifacts.\n\
                  Thread count only affects speed; set RAYON_NUM_THREADS to pin it."
)]
struct Cli {
    /// Write the artifact to this path instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the faulty-path error bounds (standard or postselected).
    Bounds(BoundsArgs),
    /// Concatenated-code level recursion and threshold estimates (CSV).
    Concat(ConcatArgs),
    /// Self-avoiding-walk counts (CSV) and the chain-series tails (JSON).
    Saw(SawArgs),
    /// Phenomenological thresholds: topological and singular (JSON).
    Phenom(PhenomArgs),
    /// Circuit-level threshold by bisection (JSON).
    Circuit(CircuitArgs),
    /// Sweep p_e and emit leading vs all-order edge rates (CSV).
    Fig2(Fig2Args),
    /// Map physical noise parameters to edge error rates (JSON or CSV).
    Noise(NoiseArgs),
    /// Run the exact fault-path simulator on a small circuit (JSON).
    Validate(ValidateArgs),
}

#[derive(Args)]
struct BoundsArgs {
    /// Per-location noise strength.
    #[arg(long)]
    eps: f64,
    /// Number of noisy locations S.
    #[arg(long)]
    locations: usize,
    /// Paths with at least this many faults are faulty.
    #[arg(long)]
    min_weight: usize,
    /// Evaluate the postselected bound instead of the standard one.
    #[arg(long)]
    postselected: bool,
    /// Declare the noise stochastic (required by the postselected bound).
    #[arg(long)]
    stochastic: bool,
}

#[derive(Args)]
struct ConcatArgs {
    /// Level-(l-1) gates per level-l gate (M).
    #[arg(long)]
    gates: usize,
    /// Code distance d.
    #[arg(long)]
    distance: usize,
    /// Concatenation levels to iterate.
    #[arg(long)]
    levels: usize,
    /// Physical error rate fed into level 0.
    #[arg(long)]
    eps0: f64,
}

#[derive(Args)]
struct SawArgs {
    /// Enumerate walk counts up to this length.
    #[arg(long)]
    max_length: Option<usize>,
    /// Use the naive reference enumerator instead of the optimized one.
    #[arg(long)]
    naive: bool,
    /// Long-chain series: edge error rate (requires --max-length).
    #[arg(long)]
    topo_eps: Option<f64>,
    /// Long-chain series: minimum chain length d.
    #[arg(long)]
    min_chain: Option<usize>,
    /// Long-chain series: polynomial prefactor.
    #[arg(long, default_value_t = 1.0)]
    poly_factor: f64,
    /// Short-chain counts near singular qubits, CSV with columns l,count.
    #[arg(long)]
    singular: Option<PathBuf>,
    /// Short-chain series: edge error rate.
    #[arg(long)]
    eps: Option<f64>,
    /// Short-chain series: code distance d.
    #[arg(long)]
    distance: Option<usize>,
}

#[derive(Args)]
struct PhenomArgs {
    /// Override the singular-region critical ratio (default 0.134).
    #[arg(long)]
    singular_ratio: Option<f64>,
}

#[derive(Args)]
struct CircuitArgs {
    #[arg(long, value_enum)]
    order: OrderArg,
}

#[derive(Args)]
struct Fig2Args {
    /// Explicit comma-separated p_e values (overrides the range flags).
    #[arg(long)]
    points: Option<String>,
    #[arg(long, default_value_t = 0.005)]
    from: f64,
    #[arg(long, default_value_t = 0.04)]
    to: f64,
    #[arg(long, default_value_t = 0.005)]
    step: f64,
}

#[derive(Args)]
struct NoiseArgs {
    /// Uniform rate p_e = p1 = p2 = pp = pm.
    #[arg(long)]
    pe: Option<f64>,
    #[arg(long)]
    p1: Option<f64>,
    #[arg(long)]
    p2: Option<f64>,
    #[arg(long)]
    pp: Option<f64>,
    #[arg(long)]
    pm: Option<f64>,
    /// key=value noise configuration file (pe, p1, p2, pp, pm).
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = NoiseOrderArg::AllOrder)]
    order: NoiseOrderArg,
    /// Samples for --order sample.
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
}

#[derive(Args)]
struct ValidateArgs {
    /// Built-in circuit: baseline, parity, or d2patch.
    #[arg(long)]
    circuit: Option<String>,
    /// Load the circuit from a netlist file instead.
    #[arg(long)]
    netlist: Option<PathBuf>,
    /// Uniform physical rate feeding the depolarizing noise profile.
    #[arg(long)]
    pe: Option<f64>,
    /// key=value noise configuration file for the depolarizing profile.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Alternative uniform profiles: xz or x, at strength --eps.
    #[arg(long, value_enum)]
    profile: Option<ProfileArg>,
    /// Strength for --profile.
    #[arg(long)]
    eps: Option<f64>,
    /// Truncate enumeration to paths of at most this many faults.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Path budget for the enumeration.
    #[arg(long, default_value_t = 10_000_000)]
    budget: u64,
    /// Also verify the postselected bound at this faulty-set weight.
    #[arg(long)]
    min_weight: Option<usize>,
    /// Cross-check with this many Monte Carlo shots.
    #[arg(long)]
    mc_shots: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Force single-threaded enumeration.
    #[arg(long)]
    serial: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Leading,
    AllOrder,
}

impl From<OrderArg> for Order {
    fn from(value: OrderArg) -> Self {
        match value {
            OrderArg::Leading => Order::Leading,
            OrderArg::AllOrder => Order::AllOrder,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NoiseOrderArg {
    Leading,
    AllOrder,
    Sample,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ProfileArg {
    Depolarizing,
    Xz,
    X,
}

#[derive(Serialize)]
struct Envelope<I: Serialize, R: Serialize> {
    version: &'static str,
    command: &'static str,
    inputs: I,
    #[serde(flatten)]
    result: R,
}

fn envelope_json<I: Serialize, R: Serialize>(command: &'static str, inputs: I, result: R) -> anyhow::Result<String> {
    let env = Envelope {
        version: VERSION,
        command,
        inputs,
        result,
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&env)?))
}

fn csv_header(command: &str, params: &str) -> String {
    format!("# psthresh v{VERSION} {command} {params}\n")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok(artifact) => {
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, artifact) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{artifact}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: &Command) -> anyhow::Result<String> {
    match command {
        Command::Bounds(args) => run_bounds(args),
        Command::Concat(args) => run_concat(args),
        Command::Saw(args) => run_saw(args),
        Command::Phenom(args) => run_phenom(args),
        Command::Circuit(args) => run_circuit(args),
        Command::Fig2(args) => run_fig2(args),
        Command::Noise(args) => run_noise(args),
        Command::Validate(args) => run_validate(args),
    }
}

fn run_bounds(args: &BoundsArgs) -> anyhow::Result<String> {
    #[derive(Serialize)]
    struct Inputs {
        eps: f64,
        locations: usize,
        min_weight: usize,
        postselected: bool,
        stochastic: bool,
    }
    #[derive(Serialize)]
    struct Result_ {
        value: f64,
        regime: bounds::Regime,
        q_postselect_floor: f64,
    }

    let mut profile = GateNoiseProfile::iid(args.eps, args.locations)?;
    if args.stochastic {
        profile = profile.assume_stochastic();
    }
    let spec = FaultySetSpec::min_weight(args.min_weight);
    let report = if args.postselected {
        bounds::postselected_error_bound(&profile, &spec)?
    } else {
        bounds::standard_error_bound(&profile, &spec)?
    };
    envelope_json(
        "bounds",
        Inputs {
            eps: args.eps,
            locations: args.locations,
            min_weight: args.min_weight,
            postselected: args.postselected,
            stochastic: args.stochastic,
        },
        Result_ {
            value: report.value,
            regime: report.regime,
            q_postselect_floor: bounds::postselection_prob_lower_bound(&profile),
        },
    )
}

fn run_concat(args: &ConcatArgs) -> anyhow::Result<String> {
    let scheme = ConcatenationScheme::new(args.gates, args.distance, args.levels)?;
    let mut out = csv_header(
        "concat",
        &format!(
            "gates={} distance={} levels={} eps0={}",
            args.gates,
            args.distance,
            args.levels,
            sig9(args.eps0)
        ),
    );
    out.push_str("record,mode,level,value\n");
    for mode in [Mode::Correction, Mode::Detection] {
        let tag = match mode {
            Mode::Correction => "correction",
            Mode::Detection => "detection",
        };
        let levels = concat::iterate_levels(args.eps0, &scheme, mode)?;
        for (l, eps) in levels.iter().enumerate() {
            out.push_str(&format!("level_eps,{tag},{l},{}\n", sig9(*eps)));
        }
        let est = concat::threshold_estimate(&scheme, mode);
        if let Some(rough) = est.rough {
            out.push_str(&format!("threshold_rough,{tag},,{}\n", sig9(rough)));
        }
        if let Some(asym) = est.rough_asymptotic {
            out.push_str(&format!("threshold_rough_asymptotic,{tag},,{}\n", sig9(asym)));
        }
        match est.fixed_point {
            FixedPoint::Found(fp) => out.push_str(&format!("threshold_fixed_point,{tag},,{}\n", sig9(fp.value))),
            FixedPoint::NoThreshold => out.push_str(&format!("threshold_fixed_point,{tag},,none\n")),
        }
    }
    Ok(out)
}

fn run_saw(args: &SawArgs) -> anyhow::Result<String> {
    // Short-chain (singular) series mode.
    if let Some(path) = &args.singular {
        let eps = args.eps.ok_or_else(|| anyhow!("--singular needs --eps"))?;
        let distance = args.distance.ok_or_else(|| anyhow!("--singular needs --distance"))?;
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let table = SingularCountTable::from_csv_str(&text)?;
        let value = saw::singular_tail(eps, distance, &table)?;
        let margin = surface::msd_margin(value.min(1.0))?;

        #[derive(Serialize)]
        struct Inputs {
            singular_csv: String,
            eps: f64,
            distance: usize,
        }
        #[derive(Serialize)]
        struct Result_ {
            mode: &'static str,
            value: f64,
            msd_margin: f64,
            distillable: bool,
        }
        return envelope_json(
            "saw",
            Inputs {
                singular_csv: path.display().to_string(),
                eps,
                distance,
            },
            Result_ {
                mode: "singular-tail",
                value,
                msd_margin: margin,
                distillable: margin > 0.0,
            },
        );
    }

    let max_length = args
        .max_length
        .ok_or_else(|| anyhow!("--max-length is required (unless --singular is used)"))?;
    let table = if args.naive {
        saw::count_saws_naive(max_length)?
    } else {
        saw::count_saws(max_length)?
    };

    // Long-chain (topological) series mode.
    if let Some(topo_eps) = args.topo_eps {
        let min_chain = args.min_chain.ok_or_else(|| anyhow!("--topo-eps needs --min-chain"))?;
        let tail = saw::topological_tail(topo_eps, min_chain, args.poly_factor, &table)?;

        #[derive(Serialize)]
        struct Inputs {
            max_length: usize,
            eps: f64,
            min_chain: usize,
            poly_factor: f64,
        }
        #[derive(Serialize)]
        struct Result_ {
            mode: &'static str,
            partial_sum: f64,
            closure_remainder: f64,
            value: f64,
        }
        return envelope_json(
            "saw",
            Inputs {
                max_length,
                eps: topo_eps,
                min_chain,
                poly_factor: args.poly_factor,
            },
            Result_ {
                mode: "topological-tail",
                partial_sum: tail.partial_sum,
                closure_remainder: tail.closure_remainder,
                value: tail.value,
            },
        );
    }

    // Plain counts table.
    let mut out = csv_header("saw", &format!("max-length={max_length} naive={}", args.naive));
    out.push_str("length,count\n");
    for l in 1..=table.max_length() {
        out.push_str(&format!("{l},{}\n", table.count(l).expect("within table")));
    }
    Ok(out)
}

fn run_phenom(args: &PhenomArgs) -> anyhow::Result<String> {
    #[derive(Serialize)]
    struct Inputs {
        singular_ratio: f64,
    }
    #[derive(Serialize)]
    struct Result_ {
        topological: f64,
        singular: f64,
        detail: surface::PhenomThresholds,
        constants: surface::CriticalConstants,
    }

    let ratio = args.singular_ratio.unwrap_or(surface::SINGULAR_RATIO_LIMIT.value);
    let thresholds = surface::phenomenological_thresholds_with_ratio(ratio)?;
    envelope_json(
        "phenom",
        Inputs { singular_ratio: ratio },
        Result_ {
            topological: thresholds.topological.value,
            singular: thresholds.singular.value,
            detail: thresholds,
            constants: surface::CRITICAL_CONSTANTS,
        },
    )
}

fn run_circuit(args: &CircuitArgs) -> anyhow::Result<String> {
    #[derive(Serialize)]
    struct Inputs {
        order: &'static str,
        target_ratio: f64,
    }
    #[derive(Serialize)]
    struct Result_ {
        threshold: f64,
        method: psthresh::SolveMethod,
        residual: f64,
        bracket: psthresh::Bracket,
    }

    let order: Order = args.order.into();
    let solved = surface::circuit_threshold(order)?;
    envelope_json(
        "circuit",
        Inputs {
            order: match order {
                Order::Leading => "leading",
                Order::AllOrder => "all-order",
            },
            target_ratio: surface::SINGULAR_RATIO_LIMIT.value,
        },
        Result_ {
            threshold: solved.value,
            method: solved.method,
            residual: solved.residual,
            bracket: solved.bracket,
        },
    )
}

fn run_fig2(args: &Fig2Args) -> anyhow::Result<String> {
    let grid: Vec<f64> = if let Some(points) = &args.points {
        points
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad point `{s}`")))
            .collect::<anyhow::Result<_>>()?
    } else {
        if args.step <= 0.0 {
            bail!("--step must be positive");
        }
        let mut grid = Vec::new();
        let mut p = args.from;
        while p <= args.to + 1e-12 {
            grid.push(p);
            p += args.step;
        }
        grid
    };
    for &p in &grid {
        if !(0.0..=0.05).contains(&p) {
            bail!("p_e = {p} outside the supported sweep range [0, 0.05]");
        }
    }

    let mut out = csv_header(
        "fig2",
        &grid.iter().map(|p| sig9(*p)).collect::<Vec<_>>().join(","),
    );
    out.push_str("p_e,q1_lead,q1_all,q3_lead,q3_all,q12_lead,q12_all,q23_lead,q23_all,eps_lead,eps_all,eps_ref\n");
    for &p_e in &grid {
        let params = CircuitNoiseParams::uniform(p_e)?;
        let lead = leading_order_edge_model(&params);
        let all = all_order_edge_model(&params)?;
        let eps_lead = surface::effective_epsilon(lead.nu(), lead.mu())?;
        let eps_all = surface::effective_epsilon(all.nu(), all.mu())?;
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}\n",
            sig9(p_e),
            sig9(lead.q1),
            sig9(all.q1),
            sig9(lead.q3),
            sig9(all.q3),
            sig9(lead.q12),
            sig9(all.q12),
            sig9(lead.q23),
            sig9(all.q23),
            sig9(eps_lead),
            sig9(eps_all),
            sig9(surface::SINGULAR_RATIO_LIMIT.value),
        ));
    }
    Ok(out)
}

fn noise_params(
    pe: Option<f64>,
    p1: Option<f64>,
    p2: Option<f64>,
    pp: Option<f64>,
    pm: Option<f64>,
    config: &Option<PathBuf>,
) -> anyhow::Result<CircuitNoiseParams> {
    let mut params = match config {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            config::parse_noise_config(&text)?
        }
        None => CircuitNoiseParams::uniform(pe.unwrap_or(0.0))?,
    };
    if let Some(pe) = pe {
        if config.is_some() {
            params = CircuitNoiseParams::uniform(pe)?;
        }
    }
    params = CircuitNoiseParams::new(
        p1.unwrap_or(params.p1),
        p2.unwrap_or(params.p2),
        pp.unwrap_or(params.pp),
        pm.unwrap_or(params.pm),
    )?;
    Ok(params)
}

fn run_noise(args: &NoiseArgs) -> anyhow::Result<String> {
    let params = noise_params(args.pe, args.p1, args.p2, args.pp, args.pm, &args.config)?;
    let uniform = args.pe.filter(|_| args.p1.is_none() && args.p2.is_none() && args.pp.is_none() && args.pm.is_none());

    let (order_tag, model, std_error) = match args.order {
        NoiseOrderArg::Leading => ("leading", leading_order_edge_model(&params), None),
        NoiseOrderArg::AllOrder => ("all-order", all_order_edge_model(&params)?, None),
        NoiseOrderArg::Sample => {
            let sampled = sample_location_model(&params, args.samples, args.seed)?;
            ("sample", sampled.rates, Some(sampled.std_error))
        }
    };

    match args.format {
        FormatArg::Json => {
            #[derive(Serialize)]
            struct Inputs {
                p1: f64,
                p2: f64,
                pp: f64,
                pm: f64,
                order: &'static str,
                samples: Option<u64>,
                seed: Option<u64>,
            }
            #[derive(Serialize)]
            struct Result_ {
                model: EdgeErrorModel,
                nu: f64,
                mu: f64,
                #[serde(skip_serializing_if = "Option::is_none")]
                std_error: Option<[f64; 6]>,
            }
            envelope_json(
                "noise",
                Inputs {
                    p1: params.p1,
                    p2: params.p2,
                    pp: params.pp,
                    pm: params.pm,
                    order: order_tag,
                    samples: (args.order == NoiseOrderArg::Sample).then_some(args.samples),
                    seed: (args.order == NoiseOrderArg::Sample).then_some(args.seed),
                },
                Result_ {
                    model,
                    nu: model.nu(),
                    mu: model.mu(),
                    std_error,
                },
            )
        }
        FormatArg::Csv => {
            let mut out = csv_header(
                "noise",
                &format!(
                    "p1={} p2={} pp={} pm={} order={order_tag}",
                    sig9(params.p1),
                    sig9(params.p2),
                    sig9(params.pp),
                    sig9(params.pm)
                ),
            );
            out.push_str("p_e,q1,q2,q3,q12,q23,q31,order\n");
            let pe_field = uniform.map(sig9).unwrap_or_default();
            out.push_str(&format!(
                "{pe_field},{},{},{},{},{},{},{order_tag}\n",
                sig9(model.q1),
                sig9(model.q2),
                sig9(model.q3),
                sig9(model.q12),
                sig9(model.q23),
                sig9(model.q31),
            ));
            Ok(out)
        }
    }
}

fn run_validate(args: &ValidateArgs) -> anyhow::Result<String> {
    let circuit: CliffordCircuit = match (&args.circuit, &args.netlist) {
        (Some(name), None) => BuiltinCircuit::parse(name)?.build(),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
            parse_netlist(&name.unwrap_or_else(|| "netlist".into()), &text)?
        }
        _ => bail!("exactly one of --circuit or --netlist is required"),
    };

    let noise = match args.profile {
        None | Some(ProfileArg::Depolarizing) => {
            let params = noise_params(args.pe, None, None, None, None, &args.config)?;
            StochasticPauliNoise::depolarizing(&circuit, &params)
        }
        Some(ProfileArg::Xz) => {
            let eps = args.eps.ok_or_else(|| anyhow!("--profile xz needs --eps"))?;
            StochasticPauliNoise::iid_xz(&circuit, eps)
        }
        Some(ProfileArg::X) => {
            let eps = args.eps.ok_or_else(|| anyhow!("--profile x needs --eps"))?;
            StochasticPauliNoise::iid_x(&circuit, eps)
        }
    };

    let opts = EnumOptions {
        weight_cutoff: args.cutoff,
        path_budget: args.budget,
        force_serial: args.serial,
    };
    let report = exact_distributions(&circuit, &noise, &opts)?;

    let verification = match args.min_weight {
        Some(w) => Some(verify_postselected_regime(&circuit, &noise, &FaultySetSpec::min_weight(w), &opts)?),
        None => None,
    };

    #[derive(Serialize)]
    struct McSummary {
        shots: u64,
        seed: u64,
        q_estimate: f64,
    }
    let monte_carlo = match args.mc_shots {
        Some(shots) => {
            let mc = mc_sample(
                &circuit,
                &noise,
                McOptions {
                    shots,
                    seed: args.seed,
                    force_serial: args.serial,
                },
            )?;
            Some(McSummary {
                shots,
                seed: args.seed,
                q_estimate: mc.q_postselect(report.xy_bits),
            })
        }
        None => None,
    };

    #[derive(Serialize)]
    struct Inputs {
        circuit: String,
        profile: &'static str,
        pe: Option<f64>,
        eps: Option<f64>,
        cutoff: Option<usize>,
        budget: u64,
        min_weight: Option<usize>,
        mc_shots: Option<u64>,
        seed: u64,
    }
    #[derive(Serialize)]
    struct Result_ {
        report: psthresh::sim::SimReport,
        #[serde(skip_serializing_if = "Option::is_none")]
        verification: Option<psthresh::sim::VerifyOutcome>,
        #[serde(skip_serializing_if = "Option::is_none")]
        monte_carlo: Option<McSummary>,
    }

    envelope_json(
        "validate",
        Inputs {
            circuit: circuit.name().to_string(),
            profile: match args.profile {
                None | Some(ProfileArg::Depolarizing) => "depolarizing",
                Some(ProfileArg::Xz) => "xz",
                Some(ProfileArg::X) => "x",
            },
            pe: args.pe,
            eps: args.eps,
            cutoff: args.cutoff,
            budget: args.budget,
            min_weight: args.min_weight,
            mc_shots: args.mc_shots,
            seed: args.seed,
        },
        Result_ {
            report,
            verification,
            monte_carlo,
        },
    )
}
