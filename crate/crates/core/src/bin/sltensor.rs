//! Command-line front end: individual checks and the full verification
//! suite, with JSON or table reports.

use std::collections::BTreeMap;
use std::process::ExitCode;

use sltensor::rational::{rat_from_str, Rat};
use sltensor::report::{emit_report, CheckStatus, ReportFormat};
use sltensor::suite::{criterion_entries, default_suite, run_suite, Check, SuiteConfig};

const USAGE: &str = "\
sltensor <command> [flags]

commands:
  relations    bracket tables of the differential-operator presentation
  simplicity   simplicity verdict against the classifier prediction
  derham       square-zero and equivariance of the graded differential
  witten       deformed differential against the classical one (S full)
  whittaker    eigenvector property of the exponential vector
  coherent     weight multiplicities and root-map injectivity
  hfree        bracket tables of the free realization over C[h]
  nilsson      bracket tables of the rank-one difference realization
  weighting    weighting fibers against the coherent family
  suite        the full verification suite (or one criterion)

also available: fourier, exterior, classify, intertwiner, casimir,
model-equivalence

flags:
  --n <rank>          ambient variable count (default 2)
  --V <spec>          module spec: va:1/3 | wedge:2 | hw:2,0 | tensor(a,b)
  --S <set>           comma list like 1,3; empty string for {}; 'all'
  --g <expr>          twist polynomial, e.g. 't1*t2 - 1/2*t1' (default 0)
  --b <list>          comma list of rationals for hfree/nilsson/weighting
  --a <rational>      one-dimensional weight for nilsson
  --lam <list>        comma list of rationals (base weights)
  --box <int>         box size / degree bound (default 4)
  --deg <int>         alias of --box
  --l <int>           1-based basis index for whittaker (default 1)
  --k <int>           exterior degree (default 1)
  --samples <int>     sample count for sampled checks (default 10)
  --seed <int>        PRNG seed (default 20240501)
  --criterion <1-12>  restrict 'suite' to one criterion
  --out <path>        write the report to a file instead of stdout
  --format <fmt>      json | table (default table)

exit status is 0 exactly when no check failed.";

struct Args {
    flags: BTreeMap<String, String>,
}

impl Args {
    fn parse(argv: &[String]) -> Result<Args, String> {
        let mut flags = BTreeMap::new();
        let mut i = 0;
        while i < argv.len() {
            let key = argv[i]
                .strip_prefix("--")
                .ok_or_else(|| format!("expected a flag, got {:?}", argv[i]))?;
            let value = argv
                .get(i + 1)
                .ok_or_else(|| format!("flag --{key} needs a value"))?;
            flags.insert(key.to_string(), value.clone());
            i += 2;
        }
        Ok(Args { flags })
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.flags.get(key).map(|s| s.as_str())
    }

    fn usize_or(&self, key: &str, default: usize) -> Result<usize, String> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| format!("--{key} expects an integer")),
        }
    }

    fn i64_or(&self, key: &str, default: i64) -> Result<i64, String> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| format!("--{key} expects an integer")),
        }
    }

    fn u64_or(&self, key: &str, default: u64) -> Result<u64, String> {
        match self.get(key) {
            None => Ok(default),
            Some(v) => v.parse().map_err(|_| format!("--{key} expects an integer")),
        }
    }

    fn rat_or(&self, key: &str, default: &str) -> Result<Rat, String> {
        let text = self.get(key).unwrap_or(default);
        rat_from_str(text).ok_or_else(|| format!("--{key} expects a rational"))
    }

    fn rats(&self, key: &str) -> Result<Option<Vec<Rat>>, String> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => {
                let parts: Option<Vec<Rat>> = v.split(',').map(rat_from_str).collect();
                parts
                    .map(Some)
                    .ok_or_else(|| format!("--{key} expects a comma list of rationals"))
            }
        }
    }

    fn set(&self, key: &str, n: usize) -> Result<Vec<usize>, String> {
        match self.get(key) {
            None => Ok(Vec::new()),
            Some("") => Ok(Vec::new()),
            Some("all") => Ok((1..=n).collect()),
            Some(v) => {
                let mut out = Vec::new();
                for part in v.split(',') {
                    let i: usize = part
                        .trim()
                        .parse()
                        .map_err(|_| format!("--{key}: bad index {part:?}"))?;
                    if i < 1 || i > n {
                        return Err(format!("--{key}: index {i} out of range 1..={n}"));
                    }
                    out.push(i);
                }
                Ok(out)
            }
        }
    }
}

fn build_entries(command: &str, args: &Args) -> Result<Vec<Check>, String> {
    let n = args.usize_or("n", 2)?;
    let s = args.set("S", n)?;
    let v = args.get("V").unwrap_or("va:1/2").to_string();
    let g = args.get("g").unwrap_or("0").to_string();
    let box_n = args.i64_or("box", args.i64_or("deg", 4)?)?;
    let samples = args.usize_or("samples", 10)?;
    match command {
        "relations" => Ok(vec![Check::Relations { n, v, s }]),
        "fourier" => Ok(vec![Check::FourierCoherence { n, v, s }]),
        "simplicity" => Ok(vec![Check::Simplicity { n, v, s, g, box_n, window: 4 }]),
        "exterior" => {
            let k = args.usize_or("k", 1)?;
            Ok(vec![Check::ExteriorImage { n, k, s, g, box_n }])
        }
        "classify" => {
            let lam = args
                .rats("lam")?
                .ok_or_else(|| "--lam is required for 'classify'".to_string())?;
            Ok(vec![Check::ClassifierConsistency { n, lam, s, window: box_n }])
        }
        "derham" => Ok(vec![Check::DeRham { n, s, g, box_n, randoms: samples }]),
        "witten" => Ok(vec![Check::Witten { n, g, deg: box_n }]),
        "whittaker" => {
            let b = args
                .rats("b")?
                .ok_or_else(|| "--b is required for 'whittaker'".to_string())?;
            let l = args.usize_or("l", 1)?;
            if l < 1 {
                return Err("--l is 1-based".to_string());
            }
            Ok(vec![Check::Whittaker { n, b, s, v, l: l - 1 }])
        }
        "coherent" => {
            let lam = args
                .rats("lam")?
                .ok_or_else(|| "--lam is required for 'coherent'".to_string())?;
            Ok(vec![Check::Coherent { n, v, s, lam, radius: box_n.min(3) }])
        }
        "hfree" => {
            let b = args
                .rats("b")?
                .ok_or_else(|| "--b is required for 'hfree'".to_string())?;
            Ok(vec![Check::HFree { n, b, v, s }])
        }
        "nilsson" => {
            let a = args.rat_or("a", "0")?;
            if let Some(b) = args.rats("b")? {
                // with --b given, also run the correspondence
                Ok(vec![
                    Check::Nilsson { n, b: a.clone(), s: s.clone() },
                    Check::NilssonCorrespondence { n, a, b, s },
                ])
            } else {
                Ok(vec![Check::Nilsson { n, b: a, s }])
            }
        }
        "intertwiner" => {
            let b = args
                .rats("b")?
                .ok_or_else(|| "--b is required for 'intertwiner'".to_string())?;
            Ok(vec![Check::Intertwiner { n, b, v, s, deg: box_n }])
        }
        "weighting" => {
            let b = args
                .rats("b")?
                .ok_or_else(|| "--b is required for 'weighting'".to_string())?;
            Ok(vec![Check::Weighting { n, b, v, s, samples }])
        }
        "casimir" => {
            let lam = args
                .rats("lam")?
                .ok_or_else(|| "--lam is required for 'casimir'".to_string())?;
            Ok(vec![Check::Casimir { n, v, lam, g }])
        }
        "model-equivalence" => Ok(vec![Check::ModelEquivalence { n, v, s, g, deg: box_n }]),
        other => Err(format!("unknown command {other:?}\n\n{USAGE}")),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match run(&argv) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(argv: &[String]) -> Result<ExitCode, String> {
    let Some(command) = argv.first() else {
        println!("{USAGE}");
        return Ok(ExitCode::SUCCESS);
    };
    if command == "--help" || command == "help" {
        println!("{USAGE}");
        return Ok(ExitCode::SUCCESS);
    }
    let args = Args::parse(&argv[1..])?;
    let seed = args.u64_or("seed", 20240501)?;

    let config = if command == "suite" {
        match args.get("criterion") {
            Some(c) => {
                let c: usize = c
                    .parse()
                    .map_err(|_| "--criterion expects a number 1..=12".to_string())?;
                if !(1..=12).contains(&c) {
                    return Err("--criterion expects a number 1..=12".to_string());
                }
                SuiteConfig { seed, entries: criterion_entries(c) }
            }
            None => default_suite(seed),
        }
    } else {
        SuiteConfig { seed, entries: build_entries(command, &args)? }
    };

    let records = run_suite(&config)?;
    let format = match args.get("format").unwrap_or("table") {
        "json" => ReportFormat::Json,
        "table" => ReportFormat::Table,
        other => return Err(format!("unknown format {other:?}")),
    };
    let text = emit_report(&records, format);
    match args.get("out") {
        Some(path) => std::fs::write(path, &text).map_err(|e| e.to_string())?,
        None => print!("{text}"),
    }
    let failed = records.iter().filter(|r| r.status == CheckStatus::Fail).count();
    if failed == 0 {
        Ok(ExitCode::SUCCESS)
    } else {
        eprintln!("{failed} check(s) failed");
        Ok(ExitCode::FAILURE)
    }
}
