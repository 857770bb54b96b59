use std::path::PathBuf;

use clap::{Args as ClapArgs, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use spectra_qkit::{EtaReading, EtaSign, IndexBase, RReading};

/// Spectral functions, q-series tables and identity audits.
#[derive(Debug, Parser)]
#[command(name = "spectra-qkit", version)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a function at a point.
    Eval {
        function: Function,
        #[command(flatten)]
        common: Common,
        /// Spectral argument, e.g. `2` or `0.5-1.2i`.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        s: Option<Complex64>,
        /// Ratio variant for `zratio`.
        #[arg(long, value_enum, default_value_t = Variant::Plain)]
        variant: Variant,
    },
    /// Expand a series into a table of exact coefficients.
    Expand {
        series: SeriesName,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        series_args: SeriesArgs,
    },
    /// Run a verification suite and print its reports.
    Verify {
        /// all, table1, ftriple, ruelletriple, eulerbracket, crossz, zeros or goettsche-spectral
        suite: String,
        #[command(flatten)]
        common: Common,
        /// Zero search box `re_min,re_max,im_min,im_max`.
        #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true)]
        zero_box: Option<[f64; 4]>,
        /// Order of the exact-series checks.
        #[arg(long)]
        order: Option<u32>,
    },
    /// Betti numbers of Hilbert schemes of points (same as `expand goettsche`).
    Hilbert {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        series_args: SeriesArgs,
    },
    /// Check `Z_Γ` at every predicted zero inside a box.
    Zeros {
        #[command(flatten)]
        common: Common,
        #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true, default_value = "-3,1,-7,7")]
        zero_box: [f64; 4],
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Zgamma,
    Ruelle,
    Zratio,
    Eta,
    F1,
    F2,
    F3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Plain,
    Conjugate,
    EtaShifted,
    ConjugateEtaShifted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesName {
    Partition,
    Eta,
    F1,
    F2,
    F3,
    Goettsche,
    Character,
    Ktheory,
    Fock,
    Point,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, ClapArgs)]
pub struct Common {
    /// Modular parameter `a+bi` with `b > 0`.
    #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
    pub tau: Option<Complex64>,
    /// Fixed lattice cutoff instead of the adaptive one.
    #[arg(long = "K")]
    pub cutoff: Option<u32>,
    /// Largest number of terms of the logarithmic series.
    #[arg(long = "N")]
    pub terms: Option<u32>,
    /// Tolerance.
    #[arg(long, env = "SPECTRA_QKIT_EPS")]
    pub eps: Option<f64>,
    /// First product index of the f functions: 0 or 1
    #[arg(long = "m-base", value_parser = parse_flag::<IndexBase>)]
    pub m_base: Option<IndexBase>,
    /// Sign of the η shift: + or -
    #[arg(long = "eta-sign", value_parser = parse_flag::<EtaSign>, allow_hyphen_values = true)]
    pub eta_sign: Option<EtaSign>,
    /// η magnitude: half-period (1/(2 Im τ)) or literal (1/(2τ))
    #[arg(long = "eta-reading", value_parser = parse_flag::<EtaReading>)]
    pub eta_reading: Option<EtaReading>,
    /// R as the ratio Z(s)/Z(s+1±it) or the triple product
    #[arg(long = "r-reading", value_parser = parse_flag::<RReading>)]
    pub r_reading: Option<RReading>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, ClapArgs)]
pub struct SeriesArgs {
    /// Exclusive truncation order in `q`.
    #[arg(long)]
    pub order: Option<u32>,
    #[arg(long = "order-q")]
    pub order_q: Option<u32>,
    #[arg(long = "order-r")]
    pub order_r: Option<u32>,
    /// `b0,b1,b2,b3,b4`
    #[arg(long)]
    pub betti: Option<String>,
    /// `dim_even,dim_odd`
    #[arg(long)]
    pub dims: Option<String>,
    /// Orbifold Euler number.
    #[arg(long, allow_hyphen_values = true)]
    pub euler: Option<i64>,
    /// Number of conjugacy classes.
    #[arg(long)]
    pub classes: Option<u32>,
}

fn parse_flag<T: std::str::FromStr<Err = spectra_qkit::Error>>(s: &str) -> Result<T, String> {
    s.parse().map_err(|e: spectra_qkit::Error| e.to_string())
}

fn parse_real(s: &str) -> Option<f64> {
    let body = s.strip_prefix('+').unwrap_or(s);
    if body.is_empty()
        || !body
            .chars()
            .all(|c| c.is_ascii_digit() || ".eE+-".contains(c))
    {
        return None;
    }
    body.parse::<f64>().ok().filter(|x| x.is_finite())
}

/// `a`, `bi`, `a+bi` or `a-bi` with optional leading sign; `i` alone means `1i`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let bad = || format!("`{s}` is not of the form a+bi");
    let Some(body) = s.strip_suffix('i') else {
        return parse_real(s)
            .map(|re| Complex64::new(re, 0.0))
            .ok_or_else(bad);
    };
    let imag = |text: &str| match text {
        "" | "+" => Some(1.0),
        "-" => Some(-1.0),
        t => parse_real(t),
    };
    // the real/imaginary split is the last sign not at the start and not in an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&j| (bytes[j] == b'+' || bytes[j] == b'-') && !matches!(bytes[j - 1], b'e' | b'E'));
    match split {
        Some(j) => {
            let re = parse_real(&body[..j]).ok_or_else(bad)?;
            let im = imag(&body[j..]).ok_or_else(bad)?;
            Ok(Complex64::new(re, im))
        }
        None => imag(body).map(|im| Complex64::new(0.0, im)).ok_or_else(bad),
    }
}

fn parse_box(s: &str) -> Result<[f64; 4], String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| parse_real(p.trim()).ok_or_else(|| format!("`{p}` is not a number")))
        .collect::<Result<_, _>>()?;
    parts
        .try_into()
        .map_err(|_| format!("`{s}` must be re_min,re_max,im_min,im_max"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let c = |re, im| Complex64::new(re, im);
        assert_eq!(parse_complex("0.25+1.0i").unwrap(), c(0.25, 1.0));
        assert_eq!(parse_complex("i").unwrap(), c(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), c(0.0, -1.0));
        assert_eq!(parse_complex("2").unwrap(), c(2.0, 0.0));
        assert_eq!(parse_complex("-0.3-1.1i").unwrap(), c(-0.3, -1.1));
        assert_eq!(parse_complex("+1.5i").unwrap(), c(0.0, 1.5));
        assert_eq!(parse_complex("1e-3+2E+1i").unwrap(), c(1e-3, 20.0));
        assert_eq!(parse_complex("0.5-i").unwrap(), c(0.5, -1.0));
    }

    #[test]
    fn complex_rejects() {
        for bad in [
            "", "1+2j", "1 + 2i", "1+2i+3i", "inf", "nan+1i", "1+i2", "ii", "0x1",
        ] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn box_parses() {
        assert_eq!(parse_box("-3,1,-7,7").unwrap(), [-3.0, 1.0, -7.0, 7.0]);
        assert!(parse_box("1,2,3").is_err());
    }
}
