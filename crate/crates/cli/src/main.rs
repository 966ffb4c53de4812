//! `transversal-lab`: constructions, Delta analysis, transversal search,
//! extensions and dilations from the command line.

mod io;
mod reports;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use transversal_lab::claims::{self, Suite};
use transversal_lab::constructions::ConstructionId;
use transversal_lab::delta::{self, DeltaProfile};
use transversal_lab::extension::{self, Quasigroup};
use transversal_lab::search::{self, SearchBudget, SearchReport, SearchStatus};
use transversal_lab::{dilation, AbelianGroup, Diagonal, Hypercube};

use reports::*;

#[derive(Parser, Debug)]
#[command(name = "transversal-lab", version, about = "Transversals of Latin hypercubes")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Output file; stdout when absent. Hypercube commands write `.lhc` here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Labeling group, e.g. Z6 or Z2xZ4; defaults to Z_n.
    #[arg(long, global = true)]
    group: Option<String>,
    #[arg(long, global = true, env = "TRANSVERSAL_LAB_THREADS", default_value_t = 1)]
    threads: usize,
    #[arg(long, global = true)]
    max_nodes: Option<u64>,
    #[arg(long, global = true)]
    max_results: Option<u64>,
    /// Wall-clock cap in seconds.
    #[arg(long, global = true)]
    time_cap: Option<f64>,
    #[arg(long, global = true, default_value_t = search::DEFAULT_SEED)]
    seed: u64,
    /// Include elapsed time in reports (makes them non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    TextGrid,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build one of the named hypercubes.
    Construct {
        #[arg(value_enum)]
        id: ConstructKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
    },
    /// Delta profile analysis.
    Analyze {
        #[command(subcommand)]
        what: AnalyzeCommand,
    },
    /// Exact searches over diagonals.
    Search {
        #[command(subcommand)]
        what: SearchCommand,
    },
    /// The `d'`-dimensional G-extension of a hypercube.
    Extend {
        input: PathBuf,
        #[arg(long)]
        dprime: usize,
    },
    /// Lift a suitable diagonal to a transversal of the G-extension.
    Lift {
        input: PathBuf,
        /// JSON diagonal: a list of coordinates, `{"entries": [...]}` or a search report.
        #[arg(long)]
        diagonal: PathBuf,
        #[arg(long)]
        dprime: usize,
        /// Shuffle the padding permutations with `--seed`.
        #[arg(long)]
        shuffle: bool,
    },
    /// Append coordinates `H(x) * x_{d+1}` for each quasigroup in turn.
    QuasiExtend {
        input: PathBuf,
        /// Order-n squares in `.lhc` format, applied in order.
        #[arg(long = "quasigroup", required = true)]
        quasigroups: Vec<PathBuf>,
    },
    /// The lambda-dilation of a Z_n hypercube.
    Dilate {
        input: PathBuf,
        #[arg(long)]
        lambda: usize,
    },
    /// Certify that a hitting set of suitable diagonals survives dilation.
    CertifyDilation {
        input: PathBuf,
        /// JSON list of cell coordinates.
        #[arg(long)]
        hitting_set: PathBuf,
        #[arg(long)]
        lambda: usize,
        /// Also check the dilation exhaustively.
        #[arg(long)]
        cross_check: bool,
    },
    /// Run the built-in acceptance checks.
    Verify {
        #[command(subcommand)]
        what: VerifyCommand,
    },
    /// Print the JSON schema of a report kind.
    Schema {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(SCHEMA_KINDS))]
        kind: String,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ConstructKind {
    Cyclic,
    ConfirmedBachelor,
    #[value(name = "third-species-44")]
    ThirdSpecies44,
    TurnedCyclic,
    Ord8,
    Ord6m,
    Z6Isotope,
    L8,
}

#[derive(Subcommand, Debug)]
enum AnalyzeCommand {
    Delta { input: PathBuf },
}

#[derive(Subcommand, Debug)]
enum SearchCommand {
    /// Count transversals and report the first few.
    Transversals {
        input: PathBuf,
        /// Witnesses kept in the report.
        #[arg(long, default_value_t = 8)]
        witnesses: usize,
    },
    /// Diagonals whose Delta sum is `(1-d') G_+`.
    Suitable {
        input: PathBuf,
        #[arg(long)]
        dprime: usize,
        #[arg(long, default_value_t = 8)]
        witnesses: usize,
    },
    /// Cells on no transversal.
    Bachelors { input: PathBuf },
    /// A maximum set of disjoint transversals.
    Packing { input: PathBuf },
    /// Decomposition into transversals by hill climbing.
    Decompose { input: PathBuf },
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    PaperClaims {
        #[arg(long, value_parser = ["quick", "full"], default_value = "quick")]
        suite: String,
    },
}

/// Exit 1 when `failed`, 3 when `exhausted`; errors exit 2.
struct Outcome {
    exhausted: bool,
    failed: bool,
}

impl Outcome {
    fn ok() -> Self {
        Outcome {
            exhausted: false,
            failed: false,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(o) if o.failed => ExitCode::from(1),
        Ok(o) if o.exhausted => ExitCode::from(3),
        Ok(_) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

impl Common {
    fn budget(&self) -> Result<SearchBudget> {
        let mut b = SearchBudget::default().with_threads(self.threads).with_seed(self.seed);
        if let Some(n) = self.max_nodes {
            b = b.with_max_nodes(n);
        }
        if let Some(n) = self.max_results {
            b = b.with_max_results(n);
        }
        if let Some(t) = self.time_cap {
            b = b.with_time_cap(t);
        }
        b.validate()?;
        Ok(b)
    }

    fn group(&self) -> Result<Option<AbelianGroup>> {
        self.group
            .as_deref()
            .map(|g| g.parse::<AbelianGroup>().with_context(|| format!("bad --group {g:?}")))
            .transpose()
    }

    fn load(&self, path: &Path) -> Result<Hypercube> {
        io::read_hypercube(path, self.group()?.as_ref())
    }

    fn out(&self) -> Option<&Path> {
        self.out.as_deref()
    }

    fn emit_json<T: serde::Serialize>(&self, value: &T) -> Result<()> {
        io::write_text(self.out(), &io::json(value)?)
    }

    /// Writes `h` as `.lhc` (or a grid) to `--out`; with `--out` set a JSON
    /// summary also goes to stdout.
    fn emit_hypercube(&self, h: &Hypercube, source: String) -> Result<()> {
        let text = match self.format {
            Format::Json => io::lhc_text(h),
            Format::TextGrid => h.to_grid(&[]),
        };
        io::write_text(self.out(), &text)?;
        if let Some(p) = self.out() {
            let report = HypercubeReport::new(h, source, Some(p.display().to_string()));
            io::write_text(None, &io::json(&report)?)?;
        }
        Ok(())
    }

    fn emit_search(&self, h: &Hypercube, report: &SearchReport, highlight: &[&Diagonal]) -> Result<Outcome> {
        report.revalidate(h)?;
        match self.format {
            Format::Json => self.emit_json(report)?,
            Format::TextGrid => {
                let mut text = h.to_grid(highlight);
                text.push_str(&format!(
                    "{}: count {} ({})\n",
                    report.operation,
                    report.count,
                    if report.complete { "complete" } else { "partial" }
                ));
                io::write_text(self.out(), &text)?;
            }
        }
        Ok(Outcome {
            exhausted: !report.complete,
            failed: false,
        })
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let c = &cli.common;
    match &cli.command {
        Command::Construct { id, n, d, m } => {
            let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("--{name} is required for this construction"));
            let cid = match id {
                ConstructKind::Cyclic => ConstructionId::Cyclic {
                    group: match (&c.group, n) {
                        (Some(g), _) => g.clone(),
                        (None, Some(n)) => format!("Z{n}"),
                        (None, None) => bail!("cyclic needs --group or --n"),
                    },
                    d: need(*d, "d")?,
                },
                ConstructKind::ConfirmedBachelor => ConstructionId::ConfirmedBachelor { n: need(*n, "n")?, d: need(*d, "d")? },
                ConstructKind::ThirdSpecies44 => ConstructionId::ThirdSpecies44,
                ConstructKind::TurnedCyclic => ConstructionId::TurnedCyclic { n: need(*n, "n")?, d: need(*d, "d")? },
                ConstructKind::Ord8 => ConstructionId::Ord8,
                ConstructKind::Ord6m => ConstructionId::Ord6m { m: need(*m, "m")? },
                ConstructKind::Z6Isotope => ConstructionId::Z6Isotope,
                ConstructKind::L8 => ConstructionId::L8,
            };
            let h = cid.build()?;
            c.emit_hypercube(&h, cid.to_string())?;
            Ok(Outcome::ok())
        }
        Command::Analyze {
            what: AnalyzeCommand::Delta { input },
        } => {
            let h = c.load(input)?;
            let g = h.group().clone();
            let prof = DeltaProfile::new(&h, &g)?;
            let report = DeltaReport {
                instance: search::instance_id(&h),
                group: g.to_string(),
                dim: h.dim(),
                order: h.order(),
                support: prof.support_cells(),
                projections: prof.projections().iter().map(|s| s.iter().copied().collect()).collect(),
                projection_sizes: prof.projection_sizes(),
                transversal_target: delta::suitable_target(&g, h.dim())?,
                hitting_set: delta::delta_lemma_hitting_set(&h, &g)?
                    .map(|cells| cells.into_iter().map(|f| h.coords_of(f)).collect()),
            };
            match c.format {
                Format::Json => c.emit_json(&report)?,
                Format::TextGrid => {
                    let marks = Diagonal::new(prof.support_coords().iter().map(|x| h.entry(x)).collect());
                    let mut text = h.to_grid(&[&marks]);
                    text.push_str(&format!("support {} cells, projections {:?}\n", report.support.len(), report.projection_sizes));
                    io::write_text(c.out(), &text)?;
                }
            }
            Ok(Outcome::ok())
        }
        Command::Search { what } => run_search(c, what),
        Command::Extend { input, dprime } => {
            let l = io::read_hypercube(input, None)?;
            let g = c.group()?.map_or_else(|| AbelianGroup::cyclic(l.order()), Ok)?;
            let h = extension::g_extension(&l, &g, *dprime)?;
            c.emit_hypercube(&h, format!("{g}-extension to d'={dprime} of {}", search::instance_id(&l)))?;
            Ok(Outcome::ok())
        }
        Command::Lift {
            input,
            diagonal,
            dprime,
            shuffle,
        } => {
            let l = io::read_hypercube(input, None)?;
            let g = c.group()?.map_or_else(|| AbelianGroup::cyclic(l.order()), Ok)?;
            let base = l.with_group(g.clone())?;
            let d = match io::read_json::<DiagonalInput>(diagonal)? {
                DiagonalInput::Report(r) => r
                    .witnesses
                    .first()
                    .cloned()
                    .ok_or_else(|| anyhow!("report in {} has no witnesses", diagonal.display()))?,
                DiagonalInput::Diagonal(d) => {
                    base.check_complete_diagonal(&d)?;
                    d
                }
                DiagonalInput::Coords(cells) => base.diagonal_from_coords(&cells)?,
            };
            let seed = shuffle.then_some(c.seed);
            let t = extension::lift_diagonal_with(&l, &d, &g, *dprime, seed)?;
            let ext = extension::g_extension(&l, &g, *dprime)?;
            ext.check_transversal(&t)?;
            let report = LiftReport {
                base_instance: search::instance_id(&base),
                extension_instance: search::instance_id(&ext),
                group: g.to_string(),
                dprime: *dprime,
                diagonal: d,
                transversal: t,
            };
            match c.format {
                Format::Json => c.emit_json(&report)?,
                Format::TextGrid => io::write_text(c.out(), &ext.to_grid(&[&report.transversal]))?,
            }
            Ok(Outcome::ok())
        }
        Command::QuasiExtend { input, quasigroups } => {
            let mut h = c.load(input)?;
            for q in quasigroups {
                let sq = io::read_hypercube(q, None)?;
                h = extension::quasi_extend(&h, &Quasigroup::from_square(&sq)?)?;
            }
            c.emit_hypercube(&h, format!("quasigroup extension by {} squares", quasigroups.len()))?;
            Ok(Outcome::ok())
        }
        Command::Dilate { input, lambda } => {
            let h = c.load(input)?;
            let big = dilation::dilate(&h, *lambda)?;
            c.emit_hypercube(&big, format!("{lambda}-dilation of {}", search::instance_id(&h)))?;
            Ok(Outcome::ok())
        }
        Command::CertifyDilation {
            input,
            hitting_set,
            lambda,
            cross_check,
        } => {
            let h = c.load(input)?;
            let u: Vec<Vec<usize>> = io::read_json(hitting_set)?;
            for x in &u {
                h.diagonal_from_coords(std::slice::from_ref(x))
                    .with_context(|| format!("hitting set cell {x:?}"))?;
            }
            let cert = dilation::transfer_hitting_set(&h, &u, *lambda, *cross_check, &c.budget()?)?;
            let failed = !cert.holds || cert.cross_check == Some(false);
            let report = CertificateReport {
                instance: search::instance_id(&h),
                hitting_set: u,
                certificate: cert,
            };
            c.emit_json(&report)?;
            Ok(Outcome {
                exhausted: false,
                failed,
            })
        }
        Command::Verify {
            what: VerifyCommand::PaperClaims { suite },
        } => {
            let suite: Suite = suite.parse()?;
            let results: Vec<_> = claims::titles()
                .into_iter()
                .map(|(id, _)| {
                    let r = claims::run_criterion(id, suite);
                    if c.format != Format::Json || c.out.is_some() {
                        println!("{r}");
                    }
                    r
                })
                .collect();
            let passed = results.iter().all(|r| r.passed);
            if c.format == Format::Json {
                let report = ClaimsReport {
                    suite,
                    passed,
                    criteria: results,
                };
                c.emit_json(&report)?;
            }
            Ok(Outcome {
                exhausted: false,
                failed: !passed,
            })
        }
        Command::Schema { kind } => {
            let s = reports::schema(kind).ok_or_else(|| anyhow!("unknown schema kind {kind}"))?;
            c.emit_json(&s)?;
            Ok(Outcome::ok())
        }
    }
}

fn finish(report: &mut SearchReport, status: SearchStatus, start: std::time::Instant, timings: bool) {
    report.status = status;
    report.complete = status.is_complete();
    if timings {
        report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
}

fn run_search(c: &Common, what: &SearchCommand) -> Result<Outcome> {
    let budget = c.budget()?;
    let start = std::time::Instant::now();
    match what {
        SearchCommand::Transversals { input, witnesses } => {
            let h = c.load(input)?;
            let mut r = SearchReport::new(&h, "transversals", &budget);
            let (count, status) = search::count_transversals(&h, Default::default(), &budget)?;
            r.count = count;
            if count > 0 && *witnesses > 0 {
                let capped = budget.clone().with_max_results((*witnesses as u64).min(budget.max_results));
                r.witnesses = search::enumerate_transversals(&h, &capped)?.diagonals;
            }
            finish(&mut r, status, start, c.timings);
            let hl: Vec<&Diagonal> = r.witnesses.iter().take(2).collect();
            c.emit_search(&h, &r, &hl)
        }
        SearchCommand::Suitable { input, dprime, witnesses } => {
            let h = c.load(input)?;
            let g = h.group().clone();
            let target = delta::suitable_target(&g, *dprime)?;
            let mut r = SearchReport::new(&h, &format!("suitable-d{dprime}"), &budget);
            let mut kept = Vec::new();
            let mut count = 0u64;
            let (status, _) = search::for_each_diagonal(&h, &g, Some(&target), &budget, |d| {
                count += 1;
                if kept.len() < *witnesses {
                    kept.push(d);
                }
                true
            })?;
            r.count = count;
            r.witnesses = kept;
            finish(&mut r, status, start, c.timings);
            let hl: Vec<&Diagonal> = r.witnesses.iter().take(2).collect();
            c.emit_search(&h, &r, &hl)
        }
        SearchCommand::Bachelors { input } => {
            let h = c.load(input)?;
            let b = search::bachelor_cells(&h, &budget)?;
            let mut r = SearchReport::new(&h, "bachelors", &budget);
            r.count = b.cells.len() as u64;
            r.bachelor_cells = b.cells;
            r.undecided_cells = b.undecided;
            r.witnesses = b.witnesses;
            let status = match (b.complete, budget.time_cap) {
                (true, _) => SearchStatus::Complete,
                (false, Some(_)) => SearchStatus::TimeCap,
                (false, None) => SearchStatus::NodeCap,
            };
            finish(&mut r, status, start, c.timings);
            let marks = Diagonal::new(r.bachelor_cells.iter().map(|x| h.entry(x)).collect());
            c.emit_search(&h, &r, &[&marks])
        }
        SearchCommand::Packing { input } => {
            let h = c.load(input)?;
            let p = search::max_disjoint_transversals(&h, &budget)?;
            let mut r = SearchReport::new(&h, "packing", &budget);
            r.count = p.transversals.len() as u64;
            r.packing = p.transversals;
            r.optimal = Some(p.optimal);
            r.upper_bound = Some(p.upper_bound as u64);
            r.certificate_cells = p.certificate;
            finish(&mut r, p.status, start, c.timings);
            let hl: Vec<&Diagonal> = r.packing.iter().take(3).collect();
            c.emit_search(&h, &r, &hl)
        }
        SearchCommand::Decompose { input } => {
            let h = c.load(input)?;
            let out = search::hill_climb_decomposition(&h, &budget)?;
            let mut r = SearchReport::new(&h, "decompose", &budget);
            let status = match out.decomposition {
                Some(parts) => {
                    r.count = parts.len() as u64;
                    r.packing = parts;
                    SearchStatus::Complete
                }
                None if budget.time_cap.is_some() => SearchStatus::TimeCap,
                None => SearchStatus::NodeCap,
            };
            finish(&mut r, status, start, c.timings);
            let hl: Vec<&Diagonal> = r.packing.iter().take(3).collect();
            c.emit_search(&h, &r, &hl)
        }
    }
}
