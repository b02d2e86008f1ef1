//! `selfsim`: command-line workbench for automaton groups.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Failure;

#[derive(Parser, Debug)]
#[command(name = "selfsim", version, about = "Invertible Mealy automata and the self-similar groups they generate")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Read catalogue entries from this directory instead of the built-in set.
    #[arg(long, global = true)]
    pub catalogue_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    /// Pretty-printed JSON.
    Structured,
    Dot,
    Csv,
}

/// Where the automaton comes from: exactly one of a catalogue key or a file.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Source {
    /// Catalogue key, e.g. 861.
    #[arg(long)]
    pub catalogue: Option<String>,
    /// Automaton file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct OrderArgs {
    #[arg(long, default_value_t = 16)]
    pub max_depth: usize,
    #[arg(long, default_value_t = 4096)]
    pub ord_threshold: u64,
    #[arg(long, default_value_t = 4)]
    pub min_increases: usize,
    /// Largest level (in words) a level permutation may cover.
    #[arg(long, default_value_t = selfsim::element::DEFAULT_LEVEL_WORDS)]
    pub level_words: usize,
    #[command(flatten)]
    pub closure: ClosureArgs,
}

#[derive(Args, Debug, Clone)]
pub struct ClosureArgs {
    /// Cap on the section closure used by the word problem.
    #[arg(long, default_value_t = selfsim::element::DEFAULT_CLOSURE_CAP)]
    pub closure_cap: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// States, activity and output permutations.
    Info {
        #[command(flatten)]
        source: Source,
    },
    /// Image of a finite word.
    Act {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        g: String,
        #[arg(long)]
        word: String,
    },
    /// Section of an element at a finite word.
    Section {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        g: String,
        #[arg(long)]
        word: String,
    },
    /// Equality in the group.
    Equal {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Whether an element is trivial.
    Identity {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        g: String,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Order semi-decision.
    Order {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        g: String,
        #[command(flatten)]
        budget: OrderArgs,
    },
    /// Image of an eventually periodic word `u(w)^inf`.
    EpAct {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        g: String,
        #[arg(long)]
        word: String,
    },
    /// Whether two eventually periodic words share a suffix.
    ShiftEq {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Fixed-section witnesses for non-contraction.
    Witness {
        #[command(subcommand)]
        action: WitnessCommand,
    },
    /// Nucleus semi-algorithm.
    Nucleus {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 5000)]
        size: usize,
        /// Maximum number of product rounds.
        #[arg(long, default_value_t = 20)]
        depth: usize,
        #[command(flatten)]
        closure: ClosureArgs,
    },
    /// Ball of the self-similarity graph.
    Ball {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        depth: usize,
        #[arg(long, default_value_t = selfsim::graph::DEFAULT_BALL_VERTICES)]
        max_vertices: usize,
        /// Print the distance between two words.
        #[arg(long, num_args = 2, value_names = ["U", "V"])]
        distance: Option<Vec<String>>,
        /// Restrict the distance query to words of at least this length.
        #[arg(long, requires = "distance")]
        radius: Option<usize>,
    },
    /// Corridor length against outside-ball distance.
    Divergence {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        g: String,
        #[arg(long)]
        v: String,
        /// Base word; searched for when omitted.
        #[arg(long, requires = "n")]
        w: Option<String>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 4)]
        k_max: usize,
        /// Ball depth.
        #[arg(long, default_value_t = 14)]
        depth: usize,
        /// Smallest in-ball distance d(w, g^n(w)) accepted when searching.
        #[arg(long, default_value_t = 1)]
        min_distance: usize,
        /// Largest n tried when searching.
        #[arg(long, default_value_t = 16)]
        max_n: u32,
        #[arg(long, default_value_t = selfsim::graph::DEFAULT_BALL_VERTICES)]
        max_vertices: usize,
    },
    /// Built-in automata and their verification suites.
    Catalogue {
        #[command(subcommand)]
        action: CatalogueCommand,
    },
    /// Graphviz rendering of an automaton.
    Dot {
        #[command(flatten)]
        source: Source,
        /// Render the product automaton of this element instead.
        #[arg(long)]
        product: Option<String>,
        /// Minimize before rendering.
        #[arg(long)]
        minimize: bool,
    },
    /// Seeded random checks of the action/section identities.
    Properties {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 4)]
        max_element_len: usize,
        #[arg(long, default_value_t = 6)]
        max_word_len: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum WitnessCommand {
    /// Check one pair (g, v).
    Check {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        g: String,
        #[arg(long)]
        v: String,
        #[command(flatten)]
        budget: OrderArgs,
    },
    /// Enumerate pairs with |g| <= max-word-len and |v| <= max-v-len.
    Search {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 2)]
        max_word_len: usize,
        #[arg(long, default_value_t = 3)]
        max_v_len: usize,
        #[command(flatten)]
        budget: OrderArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogueCommand {
    /// Keys and witnesses.
    List,
    /// Run one suite, or all of them.
    Verify {
        #[arg(default_value = "all")]
        key: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = commands::run(&cli).and_then(|out| output::emit(&cli, &out).map(|()| out.success));
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(Failure::CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
