use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lattice_actions_cli::commands;
use lattice_actions_cli::report::{Format, Report, Status};

#[derive(Parser)]
#[command(name = "latact", about = "Finite group actions on integral lattices")]
struct Cli {
    /// `lines` prints one key=value pair per line.
    #[arg(long, value_enum, default_value_t = OutputFormat::Human, global = true)]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Human,
    Lines,
}

#[derive(Subcommand)]
enum Command {
    /// Fundamental data, eigenlattices and the geometric test.
    Check { file: String },
    /// Walls and components of the rank-2 slice.
    Walls {
        file: String,
        /// Coordinate bound for candidate roots of indefinite eigenlattices.
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Degenerate at the system generated by the given roots.
    Degenerate {
        file: String,
        /// One root per flag, comma-separated; missing trailing coordinates are zero.
        #[arg(long, required = true, allow_hyphen_values = true)]
        roots: Vec<String>,
        /// Where to write the new action file (`-` for standard output).
        #[arg(long)]
        output: Option<String>,
    },
    /// Print a named fixture as an action file, or list the fixtures.
    Catalog { name: Option<String> },
    /// Order-3 isometries of 2U with bounded entries.
    Classify {
        kind: String,
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Weyl groups bounding symplectic torus actions.
    Survey { kind: String },
    /// Discriminant form of the file's lattice.
    Discr { file: String },
}

fn read_input(path: &str) -> Result<String, Report> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map(|_| s).map_err(|e| {
        let mut r = Report::new("input");
        r.push("error", format!("{path}: {e}"));
        r.status = Status::Input;
        r
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = match cli.format {
        OutputFormat::Human => Format::Human,
        OutputFormat::Lines => Format::Lines,
    };
    let with_file = |path: &str, f: &dyn Fn(&str) -> Report| read_input(path).map(|t| f(&t)).unwrap_or_else(|r| r);
    let report = match &cli.command {
        Command::Check { file } => with_file(file, &commands::check),
        Command::Walls { file, bound } => with_file(file, &|t| commands::walls(t, *bound)),
        Command::Degenerate { file, roots, output } => match read_input(file) {
            Err(r) => r,
            Ok(text) => {
                let (mut r, action) = commands::degenerate_roots(&text, roots);
                if let (Some(path), Some(body)) = (output, action) {
                    if path == "-" {
                        print!("{body}");
                    } else if let Err(e) = std::fs::write(path, body) {
                        r.push("error", format!("{path}: {e}"));
                        r.status = Status::Input;
                    }
                }
                r
            }
        },
        Command::Catalog { name } => match commands::catalog(name.as_deref()) {
            Ok(body) => {
                print!("{body}");
                return ExitCode::SUCCESS;
            }
            Err(r) => r,
        },
        Command::Classify { kind, bound } => commands::classify(kind, *bound),
        Command::Survey { kind } => commands::survey(kind),
        Command::Discr { file } => with_file(file, &commands::discr),
    };
    let text = report.render(format);
    let action_on_stdout = matches!(&cli.command, Command::Degenerate { output: Some(p), .. } if p == "-");
    if report.status == Status::Ok && !action_on_stdout {
        print!("{text}");
    } else {
        eprint!("{text}");
    }
    ExitCode::from(report.status as u8)
}
