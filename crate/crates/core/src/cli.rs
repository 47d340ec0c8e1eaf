//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 invalid
//! input (unreadable file, parse or structural error).

use std::ffi::OsString;
use std::fs;
use std::io::{Read, Write};

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use crate::adders::{
    build_hng_reference, build_ppkn, build_rca, verify_full_adder, verify_rca, VerifyMode,
};
use crate::error::Error;
use crate::metrics::{analyze, compare_report, published_rows, CostModel, CSV_HEADER};
use crate::netlist::{parse_netlist, serialize_netlist, Layout};
use crate::qasm::export_qasm;
use crate::sim::{simulate, BitState};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID_INPUT: i32 = 3;

/// Seed used by `verify` when a cascade is too wide for exhaustive checking.
pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_TRIALS: usize = 10_000;

#[derive(Debug, Parser)]
#[command(
    name = "revadd",
    version,
    about = "Build, simulate, verify and analyze reversible NCT adder circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit the netlist of a built-in circuit.
    Build {
        #[arg(value_enum)]
        circuit: BuiltIn,
        /// Operand width, required for `rca`.
        #[arg(long)]
        bits: Option<usize>,
        /// Output file, `-` for standard output.
        #[arg(short, long, default_value = "-")]
        output: String,
    },
    /// Run a netlist on one basis state.
    Simulate {
        file: String,
        /// One bit per line, line 0 first.
        #[arg(long)]
        input: String,
    },
    /// Check a netlist against the integer-addition oracle.
    Verify {
        file: String,
        /// Random vectors for cascades too wide to enumerate.
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Force randomized checking even where exhaustive is possible.
        #[arg(long)]
        randomized: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Gate counts, quantum cost, logical depth and the witness schedule.
    Metrics {
        file: String,
        #[arg(long)]
        csv: bool,
    },
    /// Computed metrics next to published figures.
    Compare {
        #[arg(long)]
        csv: bool,
    },
    /// Convert a netlist to another format.
    Export {
        file: String,
        #[arg(long, value_enum, default_value = "qasm")]
        format: ExportFormat,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BuiltIn {
    Ppkn,
    Hng,
    Rca,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExportFormat {
    Qasm,
}

struct Failure {
    code: i32,
    message: String,
    usage: Option<&'static str>,
}

impl Failure {
    fn usage(message: impl Into<String>, subcommand: &'static str) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
            usage: Some(subcommand),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVALID_INPUT,
            message: message.into(),
            usage: None,
        }
    }
}

struct Io<'a> {
    stdin: &'a mut dyn Read,
    stdout: &'a mut dyn Write,
}

impl Io<'_> {
    fn read(&mut self, path: &str) -> Result<String, Failure> {
        if path == "-" {
            let mut text = String::new();
            self.stdin
                .read_to_string(&mut text)
                .map_err(|e| Failure::input(format!("<stdin>: {e}")))?;
            Ok(text)
        } else {
            fs::read_to_string(path).map_err(|e| Failure::input(format!("{path}: {e}")))
        }
    }

    fn write(&mut self, text: &str) -> Result<(), Failure> {
        self.stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::input(format!("write failed: {e}")))
    }

    fn load(&mut self, path: &str) -> Result<(crate::circuit::Circuit, Option<Layout>), Failure> {
        let text = self.read(path)?;
        let name = if path == "-" { "<stdin>" } else { path };
        parse_netlist(&text).map_err(|e| match e {
            Error::Parse { line, message } => Failure::input(format!("{name}:{line}: {message}")),
            other => Failure::input(format!("{name}: {other}")),
        })
    }
}

/// Runs the CLI with explicit streams and returns the exit status.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
                EXIT_OK
            };
        }
    };
    let mut io = Io { stdin, stdout };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            if let Some(sub) = failure.usage {
                let mut cmd = Cli::command();
                if let Some(sc) = cmd.find_subcommand_mut(sub) {
                    let _ = writeln!(stderr, "\n{}", sc.render_usage());
                }
            }
            failure.code
        }
    }
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<i32, Failure> {
    match command {
        Command::Build {
            circuit,
            bits,
            output,
        } => {
            let (circuit, layout) = match (circuit, bits) {
                (BuiltIn::Ppkn, None) => {
                    let (c, _) = build_ppkn();
                    let layout = crate::adders::AdderLayout::canonical(1).expect("one bit");
                    (c, Layout::Adder(layout))
                }
                (BuiltIn::Hng, None) => {
                    let (c, spec) = build_hng_reference();
                    (c, Layout::FullAdder(spec))
                }
                (BuiltIn::Rca, Some(n)) => {
                    let (c, layout) =
                        build_rca(n).map_err(|e| Failure::usage(e.to_string(), "build"))?;
                    (c, Layout::Adder(layout))
                }
                (BuiltIn::Rca, None) => {
                    return Err(Failure::usage("`build rca` requires --bits N", "build"))
                }
                (_, Some(_)) => {
                    return Err(Failure::usage(
                        "--bits only applies to `build rca`",
                        "build",
                    ))
                }
            };
            let text = serialize_netlist(&circuit, Some(&layout));
            if output == "-" {
                io.write(&text)?;
            } else {
                fs::write(&output, text).map_err(|e| Failure::input(format!("{output}: {e}")))?;
            }
            Ok(EXIT_OK)
        }
        Command::Simulate { file, input } => {
            let (circuit, _) = io.load(&file)?;
            if input.len() != circuit.width() || !input.chars().all(|c| c == '0' || c == '1') {
                return Err(Failure::usage(
                    format!(
                        "--input must be {} characters of 0/1 (line 0 first), got {input:?}",
                        circuit.width()
                    ),
                    "simulate",
                ));
            }
            let state = BitState::from_bits(input.chars().map(|c| c == '1').collect());
            let out = simulate(&circuit, &state).map_err(|e| Failure::input(e.to_string()))?;
            let mut text = format!("output: {out}\n");
            for (role, bit) in circuit.roles().iter().zip(out.bits()) {
                if let Some(label) = &role.output {
                    text.push_str(&format!("{label}={}\n", u8::from(*bit)));
                }
            }
            io.write(&text)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            file,
            trials,
            seed,
            randomized,
            csv,
        } => {
            let (circuit, layout) = io.load(&file)?;
            let report = match layout {
                None => {
                    return Err(Failure::input(format!(
                        "{file}: no `layout` statement, nothing to verify against"
                    )))
                }
                Some(Layout::FullAdder(spec)) => verify_full_adder(&circuit, &spec),
                Some(Layout::Adder(layout)) if layout.n_bits == 1 && !randomized => {
                    verify_full_adder(&circuit, &layout.block(0))
                }
                Some(Layout::Adder(layout)) => {
                    let mode = if randomized || layout.n_bits > crate::adders::EXHAUSTIVE_RCA_BITS {
                        VerifyMode::Randomized { trials, seed }
                    } else {
                        VerifyMode::Exhaustive
                    };
                    verify_rca(&circuit, &layout, mode)
                }
            }
            .map_err(|e| Failure::input(e.to_string()))?;
            io.write(&if csv {
                report.to_csv()
            } else {
                report.render()
            })?;
            Ok(if report.passed() {
                EXIT_OK
            } else {
                EXIT_VERIFY_FAILED
            })
        }
        Command::Metrics { file, csv } => {
            let (circuit, _) = io.load(&file)?;
            let report = analyze(&circuit, &CostModel::NCT);
            let text = if csv {
                format!(
                    "{CSV_HEADER}\n{},computed,{},{},{},{},{},{}\n",
                    file,
                    report.gate_count,
                    report.toffoli_count,
                    report.cnot_count,
                    report.not_count,
                    report.quantum_cost,
                    report.logical_depth
                )
            } else {
                report.render(&circuit)
            };
            io.write(&text)?;
            Ok(EXIT_OK)
        }
        Command::Compare { csv } => {
            let model = CostModel::NCT;
            let (rca, _) = build_rca(3).expect("3 bits");
            let computed = vec![
                ("PPKN".to_string(), analyze(&build_ppkn().0, &model)),
                ("HNG".to_string(), analyze(&build_hng_reference().0, &model)),
                ("RCA3".to_string(), analyze(&rca, &model)),
            ];
            let table = compare_report(&computed, &published_rows())
                .map_err(|e| Failure::input(e.to_string()))?;
            let text = if csv {
                table.to_csv()
            } else {
                let mut t = table.render();
                t.push_str(
                    "note: computed HNG is a 5-gate reference netlist; RCA3 is three cascaded PPKN blocks\n",
                );
                t
            };
            io.write(&text)?;
            Ok(EXIT_OK)
        }
        Command::Export { file, format } => {
            let (circuit, _) = io.load(&file)?;
            match format {
                ExportFormat::Qasm => io.write(&export_qasm(&circuit))?,
            }
            Ok(EXIT_OK)
        }
    }
}
