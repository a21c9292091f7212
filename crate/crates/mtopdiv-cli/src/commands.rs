//! Implementations behind the CLI subcommands.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use mtopdiv::{
    barcode_stat, betti_oracle, build_quotient, circle_centers, cross_barcode, cross_distances,
    disk_cloud, gaussian_mixture, h0_oracle, mtop_div, mtop_div_barcodes, pairwise_distances,
    ring_cloud, Barcode, Direction, DiskSpec, GaussianMixtureSpec, Interval, MTopDivConfig,
    MTopDivResult, PointCloud, RingSpec, StatKind, BETTI_ORACLE_MAX_POINTS,
};

use crate::io::{fmt_f64, load_cloud, save_cloud, CloudFormat};
use crate::svg;
use crate::{
    BarcodeArgs, CliError, DirectionArg, FormatArg, MtopdivArgs, OracleArgs, Profile, SweepArgs,
    SweepName, SynthArgs, SynthKind, TableFormat,
};

fn write_output(path: Option<&Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            fs::write(p, content).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn write_svg(path: &Path, content: &str) -> Result<(), CliError> {
    fs::write(path, content).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn parse_f64_list(s: &str, what: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Usage(format!("{what}: bad number {:?}: {e}", t.trim())))
        })
        .collect()
}

fn parse_center(s: &str) -> Result<[f64; 2], CliError> {
    let v = parse_f64_list(s, "--center")?;
    if v.len() != 2 {
        return Err(CliError::Usage(format!(
            "--center expects \"x,y\", got {} coordinates",
            v.len()
        )));
    }
    Ok([v[0], v[1]])
}

/// Mixture centers: inline `x,y;x,y;…` or a path to a cloud file whose rows
/// are the centers.
fn parse_centers(s: &str) -> Result<Vec<Vec<f64>>, CliError> {
    let inline: Result<Vec<Vec<f64>>, CliError> = s
        .split(';')
        .map(|point| {
            point
                .split(',')
                .map(|t| {
                    t.trim().parse::<f64>().map_err(|_| {
                        CliError::Usage(format!("--centers: bad number {:?}", t.trim()))
                    })
                })
                .collect()
        })
        .collect();
    if let Ok(centers) = inline {
        return Ok(centers);
    }
    if Path::new(s).exists() {
        let cloud = load_cloud(Path::new(s))?;
        return Ok(cloud.rows().map(|r| r.to_vec()).collect());
    }
    Err(CliError::Usage(format!(
        "--centers expects inline \"x,y;x,y;…\" or a path to a cloud file; {s:?} is neither"
    )))
}

/// Inclusive range `start:stop:step`; the count is computed up front so
/// accumulated floating-point drift cannot drop the final endpoint.
fn parse_range(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::Usage(format!(
            "range must be start:stop:step, got {s:?}"
        )));
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|e| CliError::Usage(format!("range {s:?}: bad number {t:?}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !start.is_finite() || !stop.is_finite() || !(step > 0.0) || step.is_infinite() {
        return Err(CliError::Usage(format!(
            "range {s:?}: need finite endpoints and a positive step"
        )));
    }
    if stop < start {
        return Err(CliError::Usage(format!("range {s:?}: stop is below start")));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| start + i as f64 * step).collect())
}

/// Derives independent sub-seeds for sweep cells (splitmix64 steps over the
/// user seed and the cell coordinates).
fn mix(seed: u64, parts: &[u64]) -> u64 {
    let mut z = seed ^ 0x9e37_79b9_7f4a_7c15;
    for &p in parts {
        z = z.wrapping_add(p).wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
    }
    z
}

fn mean(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    values.iter().sum::<f64>() / values.len() as f64
}

fn std_error(values: &[f64]) -> f64 {
    let n = values.len();
    if n < 2 {
        return 0.0;
    }
    let m = mean(values);
    let var = values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (n - 1) as f64;
    var.sqrt() / (n as f64).sqrt()
}

fn max_h0_death(b: &Barcode) -> f64 {
    b.intervals(0).iter().map(|iv| iv.death).fold(0.0, f64::max)
}

fn max_h1_length(b: &Barcode) -> f64 {
    b.intervals(1).iter().map(|iv| iv.length()).fold(0.0, f64::max)
}

fn output_format(path: &Path, explicit: Option<FormatArg>) -> Result<CloudFormat, CliError> {
    if let Some(f) = explicit {
        return Ok(match f {
            FormatArg::Csv => CloudFormat::Csv,
            FormatArg::Mtdb => CloudFormat::Mtdb,
        });
    }
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => Ok(CloudFormat::Csv),
        Some("mtdb") => Ok(CloudFormat::Mtdb),
        _ => Err(CliError::Usage(format!(
            "cannot infer cloud format from {:?}; pass --format csv|mtdb",
            path.display()
        ))),
    }
}

pub fn cmd_synth(a: &SynthArgs) -> Result<(), CliError> {
    let cloud = match a.kind {
        SynthKind::Ring => ring_cloud(&RingSpec {
            n: a.n,
            center: parse_center(&a.center)?,
            radius: a.radius,
            seed: a.seed,
        })?,
        SynthKind::Disk => disk_cloud(&DiskSpec {
            n: a.n,
            center: parse_center(&a.center)?,
            radius: a.radius,
            seed: a.seed,
        })?,
        SynthKind::GaussMixture => {
            let centers = match &a.centers {
                Some(s) => parse_centers(s)?,
                None => circle_centers(5, 2.0),
            };
            let weights = match &a.weights {
                Some(s) => parse_f64_list(s, "--weights")?,
                None => vec![1.0 / centers.len().max(1) as f64; centers.len()],
            };
            gaussian_mixture(&GaussianMixtureSpec {
                n: a.n,
                centers,
                sigma: a.sigma,
                weights,
                seed: a.seed,
            })?
        }
    };
    let format = output_format(&a.out, a.format)?;
    save_cloud(&a.out, &cloud, format)
}

fn barcode_rows(b: &Barcode, max_dim: usize) -> Vec<(usize, f64, f64)> {
    (0..=max_dim)
        .flat_map(|d| b.intervals(d).iter().map(move |iv| (d, iv.birth, iv.death)))
        .collect()
}

fn barcode_csv(rows: &[(usize, f64, f64)]) -> String {
    let mut out = String::from("dim,birth,death\n");
    for &(dim, birth, death) in rows {
        let death_s = if death.is_finite() { fmt_f64(death) } else { "inf".into() };
        out.push_str(&format!("{dim},{},{death_s}\n", fmt_f64(birth)));
    }
    out
}

fn barcode_json(rows: &[(usize, f64, f64)]) -> String {
    let mut out = String::from("{\n  \"intervals\": [");
    for (i, &(dim, birth, death)) in rows.iter().enumerate() {
        let death_s = if death.is_finite() { fmt_f64(death) } else { "null".into() };
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        out.push_str(&format!(
            "    {{\"dim\": {dim}, \"birth\": {}, \"death\": {death_s}}}",
            fmt_f64(birth)
        ));
    }
    out.push_str(if rows.is_empty() { "]\n}\n" } else { "\n  ]\n}\n" });
    out
}

pub fn cmd_barcode(a: &BarcodeArgs) -> Result<(), CliError> {
    let p = load_cloud(&a.p)?;
    let q = load_cloud(&a.q)?;
    let b = cross_barcode(&p, &q, a.dim)?;
    let rows = barcode_rows(&b, a.dim);
    let table = match a.format {
        TableFormat::Csv => barcode_csv(&rows),
        TableFormat::Json => barcode_json(&rows),
    };
    write_output(a.out.as_deref(), &table)?;
    if let Some(path) = &a.svg {
        write_svg(path, &svg::barcode_svg(&rows))?;
    }
    Ok(())
}

fn mtopdiv_json(cfg: &MTopDivConfig, results: &[MTopDivResult]) -> String {
    let mut out = String::from("{\n");
    out.push_str(&format!("  \"b_p\": {},\n", cfg.b_p));
    out.push_str(&format!("  \"b_q\": {},\n", cfg.b_q));
    out.push_str(&format!("  \"n_runs\": {},\n", cfg.n_runs));
    out.push_str(&format!("  \"hom_dim\": {},\n", cfg.hom_dim));
    out.push_str(&format!("  \"stat\": \"{}\",\n", cfg.stat));
    out.push_str(&format!("  \"seed\": {},\n", cfg.seed));
    out.push_str("  \"results\": [");
    for (i, r) in results.iter().enumerate() {
        let dir = match r.direction {
            Direction::PQ => "pq",
            Direction::QP => "qp",
            Direction::Both => "both",
        };
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        out.push_str(&format!("    {{\n      \"direction\": \"{dir}\",\n"));
        out.push_str(&format!("      \"mean\": {},\n", fmt_f64(r.mean)));
        out.push_str(&format!("      \"std_error\": {},\n", fmt_f64(r.std_error)));
        let runs: Vec<String> = r.per_run.iter().map(|&v| fmt_f64(v)).collect();
        out.push_str(&format!("      \"per_run\": [{}]\n    }}", runs.join(", ")));
    }
    out.push_str("\n  ]\n}\n");
    out
}

pub fn cmd_mtopdiv(a: &MtopdivArgs) -> Result<(), CliError> {
    let p = load_cloud(&a.p)?;
    let q = load_cloud(&a.q)?;
    let (bp_default, bq_default, runs_default) = match a.profile {
        Profile::Full => (1000, 10_000, 100),
        Profile::Desk => (100, 1000, 10),
    };
    let stat = StatKind::from_str(&a.stat)?;
    let cfg = MTopDivConfig {
        b_p: a.bp.unwrap_or(bp_default),
        b_q: a.bq.unwrap_or(bq_default),
        n_runs: a.runs.unwrap_or(runs_default),
        hom_dim: a.dim,
        stat,
        seed: a.seed,
        direction: match a.direction {
            DirectionArg::Pq => Direction::PQ,
            DirectionArg::Qp => Direction::QP,
            DirectionArg::Both => Direction::Both,
        },
    };
    let results = mtop_div(&p, &q, &cfg)?;
    write_output(a.out.as_deref(), &mtopdiv_json(&cfg, &results))
}

/// One sweep table: header names plus rows of (x, columns…).
struct SweepTable {
    header: Vec<&'static str>,
    /// `true` marks the column as an integer count.
    integer: Vec<bool>,
    rows: Vec<Vec<f64>>,
}

impl SweepTable {
    fn csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&self.integer)
                .map(|(&v, &is_int)| if is_int { format!("{}", v as u64) } else { fmt_f64(v) })
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn svg(&self, title: &str) -> String {
        let series: Vec<(String, Vec<(f64, f64)>)> = (1..self.header.len())
            .map(|c| {
                (
                    self.header[c].to_string(),
                    self.rows.iter().map(|r| (r[0], r[c])).collect(),
                )
            })
            .collect();
        svg::trend_svg(title, self.header[0], &series)
    }
}

fn rings_sweep(a: &SweepArgs) -> Result<SweepTable, CliError> {
    let ds = parse_range(a.range.as_deref().unwrap_or("0:2:0.25"))?;
    let n = a.n.unwrap_or(1000);
    let runs = a.runs.unwrap_or(3);
    let (bp, bq, mruns) = (a.bp.unwrap_or(100), a.bq.unwrap_or(1000), a.mruns.unwrap_or(10));
    let mut rows = Vec::new();
    for (i, &d) in ds.iter().enumerate() {
        let i = i as u64;
        let mut seed_means = Vec::new();
        let mut h0_values = Vec::new();
        for s in 0..runs as u64 {
            let p = ring_cloud(&RingSpec {
                n,
                center: [0.0, 0.0],
                radius: 1.0,
                seed: mix(a.seed, &[i, s, 0]),
            })?;
            let q = ring_cloud(&RingSpec {
                n,
                center: [d, 0.0],
                radius: 1.0,
                seed: mix(a.seed, &[i, s, 1]),
            })?;
            let cfg = MTopDivConfig {
                b_p: bp,
                b_q: bq,
                n_runs: mruns,
                seed: mix(a.seed, &[i, s, 2]),
                ..MTopDivConfig::default()
            };
            let groups = mtop_div_barcodes(&p, &q, &cfg)?;
            let barcodes = &groups[0].1;
            let sums: Vec<f64> = barcodes
                .iter()
                .map(|b| barcode_stat(b.intervals(1), StatKind::Sum))
                .collect::<Result<_, _>>()?;
            seed_means.push(mean(&sums));
            h0_values.extend(barcodes.iter().map(max_h0_death));
        }
        rows.push(vec![d, mean(&seed_means), std_error(&seed_means), mean(&h0_values)]);
    }
    Ok(SweepTable {
        header: vec!["d", "mtopdiv_mean", "mtopdiv_stderr", "h0_max_mean"],
        integer: vec![false, false, false, false],
        rows,
    })
}

fn disks_sweep(a: &SweepArgs) -> Result<SweepTable, CliError> {
    let ds = parse_range(a.range.as_deref().unwrap_or("2.5:3.5:0.5"))?;
    let n = a.n.unwrap_or(1000);
    let runs = a.runs.unwrap_or(10);
    let mut rows = Vec::new();
    for (i, &d) in ds.iter().enumerate() {
        let i = i as u64;
        let mut h0 = Vec::new();
        let mut h1 = Vec::new();
        for s in 0..runs as u64 {
            let p = disk_cloud(&DiskSpec {
                n,
                center: [0.0, 0.0],
                radius: 1.0,
                seed: mix(a.seed, &[i, s, 0]),
            })?;
            let q = disk_cloud(&DiskSpec {
                n,
                center: [d, 0.0],
                radius: 1.0,
                seed: mix(a.seed, &[i, s, 1]),
            })?;
            let b = cross_barcode(&p, &q, 1)?;
            h0.push(max_h0_death(&b));
            h1.push(barcode_stat(b.intervals(1), StatKind::Sum)?);
        }
        rows.push(vec![d, mean(&h0), mean(&h1)]);
    }
    Ok(SweepTable {
        header: vec!["d", "h0_max_mean", "h1_sum_mean"],
        integer: vec![false, false, false],
        rows,
    })
}

fn decay_sweep(a: &SweepArgs) -> Result<SweepTable, CliError> {
    let sizes: Vec<usize> = a
        .sizes
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| CliError::Usage(format!("--sizes: bad count {:?}: {e}", t.trim())))
        })
        .collect::<Result<_, _>>()?;
    let runs = a.runs.unwrap_or(20);
    let mut rows = Vec::new();
    for (i, &size) in sizes.iter().enumerate() {
        let i = i as u64;
        let mut h1 = Vec::new();
        for s in 0..runs as u64 {
            let p = disk_cloud(&DiskSpec {
                n: size,
                center: [0.0, 0.0],
                radius: 1.0,
                seed: mix(a.seed, &[i, s, 0]),
            })?;
            let q = disk_cloud(&DiskSpec {
                n: size,
                center: [0.0, 0.0],
                radius: 1.0,
                seed: mix(a.seed, &[i, s, 1]),
            })?;
            let b = cross_barcode(&p, &q, 1)?;
            h1.push(max_h1_length(&b));
        }
        rows.push(vec![size as f64, mean(&h1)]);
    }
    Ok(SweepTable {
        header: vec!["n", "h1_max_mean"],
        integer: vec![true, false],
        rows,
    })
}

pub fn cmd_sweep(a: &SweepArgs) -> Result<(), CliError> {
    let (table, title) = match a.name {
        SweepName::Rings => (rings_sweep(a)?, "rings sweep"),
        SweepName::Disks => (disks_sweep(a)?, "disks sweep"),
        SweepName::Decay => (decay_sweep(a)?, "decay sweep"),
    };
    write_output(a.out.as_deref(), &table.csv())?;
    if let Some(path) = &a.svg {
        write_svg(path, &table.svg(title))?;
    }
    Ok(())
}

/// Alive-interval count with the half-open convention `birth ≤ α < death`,
/// kept local so fault injection can corrupt the data it runs on.
fn alive(intervals: &[Interval], alpha: f64) -> usize {
    intervals.iter().filter(|iv| iv.birth <= alpha && alpha < iv.death).count()
}

pub fn cmd_oracle(a: &OracleArgs) -> Result<(), CliError> {
    let p = load_cloud(&a.p)?;
    let q = match &a.q {
        Some(path) => load_cloud(path)?,
        None => PointCloud::new(Vec::new(), 0, p.dim())?,
    };
    let n_total = p.len() + q.len();
    if n_total > BETTI_ORACLE_MAX_POINTS {
        return Err(CliError::Usage(format!(
            "oracle diff accepts at most {BETTI_ORACLE_MAX_POINTS} points in total, got {n_total}"
        )));
    }

    let barcode = cross_barcode(&p, &q, 1)?;
    let mut dims: Vec<Vec<Interval>> = (0..=1).map(|d| barcode.intervals(d).to_vec()).collect();
    if a.inject_fault {
        // Deliberate corruption: proves the diff actually bites.
        dims[0].push(Interval::finite(0.0, 0.123456789));
        dims[0].sort_by(|x, y| x.birth.total_cmp(&y.birth).then(x.death.total_cmp(&y.death)));
    }

    let quotient = if q.is_empty() {
        None
    } else {
        Some(build_quotient(&pairwise_distances(&p)?, &cross_distances(&p, &q)?)?)
    };
    let weights = match &quotient {
        Some(qm) => qm.matrix().clone(),
        None => pairwise_distances(&p)?,
    };

    // Probe at every distinct weight, between consecutive weights, and
    // outside the range on both sides.
    let mut values: Vec<f64> = weights.as_slice().to_vec();
    values.push(0.0);
    values.sort_by(f64::total_cmp);
    values.dedup();
    let mut probes = vec![-0.5];
    for i in 0..values.len() {
        probes.push(values[i]);
        if i + 1 < values.len() {
            probes.push((values[i] + values[i + 1]) / 2.0);
        }
    }
    probes.push(values.last().copied().unwrap_or(0.0) + 0.5);

    let mut mismatches: Vec<String> = Vec::new();
    let mut checks = 0usize;
    for &alpha in &probes {
        for (k, intervals) in dims.iter().enumerate() {
            let expected = betti_oracle(&weights, alpha, k)?;
            let mut got = alive(intervals, alpha);
            if k == 0 && quotient.is_some() && alpha >= 0.0 {
                // The reported barcode is relative to the collapsed block;
                // the block's own component makes up the difference.
                got += 1;
            }
            checks += 1;
            if got != expected {
                mismatches.push(format!(
                    "alpha={}, k={k}: reduction has {got} classes, rank oracle has {expected}",
                    fmt_f64(alpha)
                ));
            }
        }
    }

    if let Some(qm) = &quotient {
        let oracle = h0_oracle(qm)?;
        checks += 1;
        let same = oracle.len() == dims[0].len()
            && oracle.iter().zip(&dims[0]).all(|(x, y)| {
                x.birth.to_bits() == y.birth.to_bits() && x.death.to_bits() == y.death.to_bits()
            });
        if !same {
            mismatches.push(format!(
                "dimension-0 intervals: reduction has {}, clustering oracle has {}",
                dims[0].len(),
                oracle.len()
            ));
        }
    }

    for m in &mismatches {
        eprintln!("mismatch: {m}");
    }
    if mismatches.is_empty() {
        println!("oracle diff: {checks} checks, all match");
        Ok(())
    } else {
        Err(CliError::Mismatch(format!(
            "{} of {checks} oracle checks failed",
            mismatches.len()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing_hits_every_endpoint() {
        let v = parse_range("0:2:0.25").unwrap();
        assert_eq!(v.len(), 9);
        assert_eq!(v[0], 0.0);
        assert!((v[8] - 2.0).abs() < 1e-12);
        // Single-value range.
        assert_eq!(parse_range("3:3:1").unwrap(), vec![3.0]);
        // Step that does not divide the span still stops at or before `stop`.
        let v = parse_range("0:1:0.4").unwrap();
        assert_eq!(v.len(), 3);
        assert!((v[2] - 0.8).abs() < 1e-12);
    }

    #[test]
    fn range_parsing_rejects_malformed_input() {
        for bad in ["0:2", "0:2:0.25:9", "a:2:1", "0:2:0", "0:2:-1", "2:0:1", "0:inf:1"] {
            assert!(
                matches!(parse_range(bad), Err(CliError::Usage(_))),
                "{bad:?} should be a usage error"
            );
        }
    }

    #[test]
    fn seed_mixing_is_deterministic_and_sensitive() {
        assert_eq!(mix(7, &[1, 2, 3]), mix(7, &[1, 2, 3]));
        assert_ne!(mix(7, &[1, 2, 3]), mix(8, &[1, 2, 3]));
        assert_ne!(mix(7, &[1, 2, 3]), mix(7, &[1, 2, 4]));
        assert_ne!(mix(7, &[0, 0, 0]), mix(7, &[0, 0, 1]));
    }

    #[test]
    fn center_and_centers_parsing() {
        assert_eq!(parse_center("1.5, -2").unwrap(), [1.5, -2.0]);
        assert!(parse_center("1,2,3").is_err());
        assert!(parse_center("x,2").is_err());

        let c = parse_centers("0,0;1,2.5;-3,4").unwrap();
        assert_eq!(c, vec![vec![0.0, 0.0], vec![1.0, 2.5], vec![-3.0, 4.0]]);
        assert!(matches!(
            parse_centers("/no/such/file.csv"),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn centers_can_come_from_a_cloud_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("centers.csv");
        fs::write(&path, "0.0,0.0\n2.0,0.0\n").unwrap();
        let c = parse_centers(path.to_str().unwrap()).unwrap();
        assert_eq!(c, vec![vec![0.0, 0.0], vec![2.0, 0.0]]);
    }

    #[test]
    fn output_format_prefers_explicit_flag_over_extension() {
        let p = Path::new("cloud.csv");
        assert_eq!(output_format(p, None).unwrap(), CloudFormat::Csv);
        assert_eq!(
            output_format(p, Some(FormatArg::Mtdb)).unwrap(),
            CloudFormat::Mtdb
        );
        assert_eq!(
            output_format(Path::new("cloud.mtdb"), None).unwrap(),
            CloudFormat::Mtdb
        );
        assert!(output_format(Path::new("cloud.dat"), None).is_err());
        assert!(output_format(Path::new("cloud"), None).is_err());
    }

    #[test]
    fn barcode_tables_render_infinite_deaths() {
        let rows = vec![(0, 0.0, f64::INFINITY), (1, 1.0, 2.5)];
        let csv = barcode_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "dim,birth,death");
        assert!(lines[1].starts_with("0,") && lines[1].ends_with(",inf"), "{}", lines[1]);
        assert!(lines[2].starts_with("1,"), "{}", lines[2]);

        let json = barcode_json(&rows);
        assert!(json.contains("\"death\": null"), "{json}");
        assert!(json.contains("\"dim\": 1"), "{json}");
        // Empty barcode renders an empty interval list, not a dangling comma.
        let empty = barcode_json(&[]);
        assert!(empty.contains("\"intervals\": []"), "{empty}");
    }

    #[test]
    fn sweep_tables_format_integer_columns_without_exponents() {
        let t = SweepTable {
            header: vec!["n", "value"],
            integer: vec![true, false],
            rows: vec![vec![50.0, 0.125], vec![400.0, 0.5]],
        };
        let csv = t.csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,value");
        assert!(lines[1].starts_with("50,"), "{}", lines[1]);
        assert!(lines[2].starts_with("400,"), "{}", lines[2]);
        assert!(lines[1].contains("1.25"), "{}", lines[1]);
    }

    #[test]
    fn summary_statistics_match_hand_computation() {
        assert_eq!(mean(&[]), 0.0);
        assert_eq!(mean(&[2.0, 4.0]), 3.0);
        assert_eq!(std_error(&[5.0]), 0.0);
        // Sample std of {1,3} is sqrt(2); stderr = sqrt(2)/sqrt(2) = 1.
        assert!((std_error(&[1.0, 3.0]) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn alive_counting_uses_the_half_open_convention() {
        let ivs = vec![Interval::finite(1.0, 3.0), Interval::essential(0.0)];
        assert_eq!(alive(&ivs, 0.5), 1); // only the essential class
        assert_eq!(alive(&ivs, 1.0), 2); // birth is inclusive
        assert_eq!(alive(&ivs, 3.0), 1); // death is exclusive
        assert_eq!(alive(&ivs, -1.0), 0);
    }

    #[test]
    fn numeric_list_parsing_reports_the_offending_token() {
        assert_eq!(parse_f64_list("1, 2,3.5", "--weights").unwrap(), vec![1.0, 2.0, 3.5]);
        let e = parse_f64_list("1,x,3", "--weights").unwrap_err();
        assert!(e.to_string().contains("--weights"), "{e}");
    }
}
