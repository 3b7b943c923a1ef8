//! Scenario files and the figure-data commands behind the `udqkd` binary.
//!
//! A scenario file is flat `key = value` text; `#` starts a comment. Every
//! key can also be given on the command line as `--<key> <value>`, which
//! wins over the file. Unknown keys are rejected.
//!
//! | key | default | meaning |
//! |-----|---------|---------|
//! | `r` | 1.1 | phase-quadrature variance of the signal state |
//! | `v_mod` | 3 | modulation variance V_M |
//! | `t_x` | 0.1 | channel x transmission (ignored by `sweep-distance`) |
//! | `eps_x` | 0.01 | excess noise, channel-input referred |
//! | `eta` | 0.6 | detector efficiency |
//! | `v_el` | 0.1 | electronic noise |
//! | `beta` | 0.99 | reconciliation efficiency |
//! | `atten` | 0.2 | fiber loss in dB/km |
//! | `distance_min`, `distance_max`, `distance_points` | 0, 60, 61 | distance grid (km) |
//! | `r_grid` | 0.6,0.8,1.0,1.2,1.4 | comma-separated r values |
//! | `vy_span`, `vy_points` | 0.2, 101 | `V_y` grid from the vertex `V0` to `V0 + vy_span` |
//! | `eps_y_expected` | `eps_x` | phase excess noise used for the expected line |
//! | `t_y`, `eps_y` | `t_x`, `eps_x` | simulated phase-quadrature channel |
//! | `n_pulses`, `seed`, `reveal_fraction` | 1000000, 1, 0.5 | Monte Carlo settings |
//! | `out` | stdout | output CSV path |
//! | `json` | false | also write `<out>.json` |
//! | `raw` | none | raw-sample dump path (`simulate` only) |

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::protocol::{ebs_variance, noise_budget, ProtocolParams};
use crate::security::{
    distance_to_transmission, expected_vy_with_eps, min_key_rate_at_vy, mutual_information,
    mutual_information_conditioned, parabola, safe_line, DEFAULT_ATTEN_DB_PER_KM,
};
use crate::sim::{moment_checks, simulate, simulate_with_samples, write_raw_dump, SimConfig};

/// Every recognised scenario key, in header order.
pub const KEYS: &[&str] = &[
    "r",
    "v_mod",
    "t_x",
    "eps_x",
    "eta",
    "v_el",
    "beta",
    "atten",
    "distance_min",
    "distance_max",
    "distance_points",
    "r_grid",
    "vy_span",
    "vy_points",
    "eps_y_expected",
    "t_y",
    "eps_y",
    "n_pulses",
    "seed",
    "reveal_fraction",
    "out",
    "json",
    "raw",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub params: ProtocolParams,
    pub atten_db_per_km: f64,
    pub distance_min: f64,
    pub distance_max: f64,
    pub distance_points: usize,
    pub r_grid: Vec<f64>,
    pub vy_span: f64,
    pub vy_points: usize,
    pub eps_y_expected: Option<f64>,
    pub t_y: Option<f64>,
    pub eps_y: Option<f64>,
    pub n_pulses: u64,
    pub seed: u64,
    pub reveal_fraction: f64,
    pub out: Option<PathBuf>,
    pub json: bool,
    pub raw: Option<PathBuf>,
}

impl Default for Scenario {
    fn default() -> Self {
        Self {
            params: ProtocolParams::reference(),
            atten_db_per_km: DEFAULT_ATTEN_DB_PER_KM,
            distance_min: 0.0,
            distance_max: 60.0,
            distance_points: 61,
            r_grid: vec![0.6, 0.8, 1.0, 1.2, 1.4],
            vy_span: 0.2,
            vy_points: 101,
            eps_y_expected: None,
            t_y: None,
            eps_y: None,
            n_pulses: 1_000_000,
            seed: 1,
            reveal_fraction: 0.5,
            out: None,
            json: false,
            raw: None,
        }
    }
}

/// Splits scenario text into `(key, value)` pairs.
pub fn parse_config_text(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((k, v)) = line.split_once('=') else {
            return Err(Error::Config(format!("line {}: expected `key = value`", lineno + 1)));
        };
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(pairs)
}

fn num(key: &str, v: &str) -> Result<f64> {
    v.parse::<f64>()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{v}` as a number")))
}

fn count(key: &str, v: &str) -> Result<u64> {
    v.parse::<u64>()
        .map_err(|_| Error::Config(format!("`{key}`: cannot parse `{v}` as a non-negative integer")))
}

fn range_err(field: &'static str, value: f64, range: &'static str) -> Error {
    Error::InvalidParameter { field, value, range }
}

impl Scenario {
    /// Defaults, then the config file pairs, then the overrides.
    pub fn resolve(config: &[(String, String)], overrides: &[(String, String)]) -> Result<Self> {
        let mut s = Scenario::default();
        let mut raw = RawParams::from(&s.params);
        for (k, v) in config.iter().chain(overrides) {
            s.apply(&mut raw, k, v)?;
        }
        s.params = ProtocolParams::new(raw.r, raw.v_mod, raw.t_x, raw.eps_x, raw.eta, raw.v_el, raw.beta)?;
        s.validate()?;
        Ok(s)
    }

    pub fn from_file(path: &Path, overrides: &[(String, String)]) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::resolve(&parse_config_text(&text)?, overrides)
    }

    fn apply(&mut self, raw: &mut RawParams, key: &str, v: &str) -> Result<()> {
        match key {
            "r" => raw.r = num(key, v)?,
            "v_mod" => raw.v_mod = num(key, v)?,
            "t_x" => raw.t_x = num(key, v)?,
            "eps_x" => raw.eps_x = num(key, v)?,
            "eta" => raw.eta = num(key, v)?,
            "v_el" => raw.v_el = num(key, v)?,
            "beta" => raw.beta = num(key, v)?,
            "atten" => self.atten_db_per_km = num(key, v)?,
            "distance_min" => self.distance_min = num(key, v)?,
            "distance_max" => self.distance_max = num(key, v)?,
            "distance_points" => self.distance_points = count(key, v)? as usize,
            "r_grid" => {
                self.r_grid = v
                    .split(',')
                    .map(|x| num(key, x.trim()))
                    .collect::<Result<Vec<_>>>()?
            }
            "vy_span" => self.vy_span = num(key, v)?,
            "vy_points" => self.vy_points = count(key, v)? as usize,
            "eps_y_expected" => self.eps_y_expected = Some(num(key, v)?),
            "t_y" => self.t_y = Some(num(key, v)?),
            "eps_y" => self.eps_y = Some(num(key, v)?),
            "n_pulses" => self.n_pulses = count(key, v)?,
            "seed" => self.seed = count(key, v)?,
            "reveal_fraction" => self.reveal_fraction = num(key, v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            "json" => {
                self.json = v
                    .parse::<bool>()
                    .map_err(|_| Error::Config(format!("`json`: expected true or false, got `{v}`")))?
            }
            "raw" => self.raw = Some(PathBuf::from(v)),
            other => return Err(Error::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    fn validate(&self) -> Result<()> {
        if !(self.atten_db_per_km > 0.0) {
            return Err(range_err("atten", self.atten_db_per_km, "atten > 0"));
        }
        if !(self.distance_min >= 0.0) {
            return Err(range_err("distance_min", self.distance_min, "distance_min >= 0"));
        }
        if self.distance_points == 0 {
            return Err(range_err("distance_points", 0.0, "distance_points >= 1"));
        }
        if self.distance_points > 1 && !(self.distance_max > self.distance_min) {
            return Err(range_err("distance_max", self.distance_max, "distance_max > distance_min"));
        }
        if self.r_grid.is_empty() {
            return Err(Error::Config("`r_grid` must not be empty".into()));
        }
        for &r in &self.r_grid {
            if !(r > 0.0) {
                return Err(range_err("r_grid", r, "every r > 0"));
            }
        }
        if self.r_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Config("`r_grid` must be strictly increasing".into()));
        }
        if self.vy_points == 0 {
            return Err(range_err("vy_points", 0.0, "vy_points >= 1"));
        }
        if self.vy_points > 1 && !(self.vy_span > 0.0) {
            return Err(range_err("vy_span", self.vy_span, "vy_span > 0"));
        }
        if let Some(e) = self.eps_y_expected {
            if !(e >= 0.0) {
                return Err(range_err("eps_y_expected", e, "eps_y_expected >= 0"));
            }
        }
        self.sim_config().validate()
    }

    pub fn distance_grid(&self) -> Vec<f64> {
        linspace(self.distance_min, self.distance_max, self.distance_points)
    }

    /// `V_y` grid starting at the parabola vertex of `p`.
    pub fn vy_grid(&self, p: &ProtocolParams) -> Vec<f64> {
        let v0 = parabola(p).v0;
        linspace(v0, v0 + self.vy_span, self.vy_points)
    }

    pub fn expected_vy(&self, p: &ProtocolParams) -> f64 {
        expected_vy_with_eps(p, self.eps_y_expected.unwrap_or(p.eps_x()))
    }

    pub fn sim_config(&self) -> SimConfig {
        SimConfig {
            params: self.params,
            t_y: self.t_y.unwrap_or(self.params.t_x()),
            eps_y: self.eps_y.unwrap_or(self.params.eps_x()),
            n_pulses: self.n_pulses,
            seed: self.seed,
            reveal_fraction: self.reveal_fraction,
        }
    }

    /// The resolved configuration as `(key, value)` text, in [`KEYS`] order.
    pub fn resolved_pairs(&self) -> Vec<(String, String)> {
        let p = &self.params;
        let opt = |x: Option<f64>| x.map_or_else(|| "default".to_string(), |v| v.to_string());
        let path = |x: &Option<PathBuf>| x.as_ref().map_or_else(|| "none".to_string(), |v| v.display().to_string());
        let values = [
            p.r().to_string(),
            p.v_mod().to_string(),
            p.t_x().to_string(),
            p.eps_x().to_string(),
            p.eta().to_string(),
            p.v_el().to_string(),
            p.beta().to_string(),
            self.atten_db_per_km.to_string(),
            self.distance_min.to_string(),
            self.distance_max.to_string(),
            self.distance_points.to_string(),
            self.r_grid.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(","),
            self.vy_span.to_string(),
            self.vy_points.to_string(),
            opt(self.eps_y_expected),
            opt(self.t_y),
            opt(self.eps_y),
            self.n_pulses.to_string(),
            self.seed.to_string(),
            self.reveal_fraction.to_string(),
            path(&self.out),
            self.json.to_string(),
            path(&self.raw),
        ];
        KEYS.iter().map(|k| k.to_string()).zip(values).collect()
    }
}

struct RawParams {
    r: f64,
    v_mod: f64,
    t_x: f64,
    eps_x: f64,
    eta: f64,
    v_el: f64,
    beta: f64,
}

impl From<&ProtocolParams> for RawParams {
    fn from(p: &ProtocolParams) -> Self {
        Self {
            r: p.r(),
            v_mod: p.v_mod(),
            t_x: p.t_x(),
            eps_x: p.eps_x(),
            eta: p.eta(),
            v_el: p.v_el(),
            beta: p.beta(),
        }
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + (b - a) * i as f64 / (n - 1) as f64 })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Bool(bool),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Num(x) => x.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            _ => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}
impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}
impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// Tabular command output with a self-describing header.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    /// Resolved configuration followed by derived scalars.
    pub header: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Report {
    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[idx]).collect())
    }

    /// CSV preceded by `# key = value` lines.
    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        writeln!(out, "# command = {}", self.command).unwrap();
        for (k, v) in &self.header {
            writeln!(out, "# {k} = {v}").unwrap();
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        let body = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        out.push_str(&String::from_utf8(body).map_err(|e| Error::Io(e.to_string()))?);
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        let header: Map<String, Value> = self.header.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .cloned()
                        .zip(r.iter().map(Cell::to_json))
                        .collect(),
                )
            })
            .collect();
        let doc = json!({
            "command": self.command,
            "header": header,
            "columns": self.columns,
            "rows": rows,
        });
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    }

    /// Writes CSV to `out` (and `out` with a `.json` extension when `json`),
    /// or prints to stdout when no path is given.
    pub fn write(&self, out: Option<&Path>, json: bool) -> Result<()> {
        match out {
            Some(path) => {
                std::fs::write(path, self.to_csv()?)?;
                if json {
                    std::fs::write(path.with_extension("json"), self.to_json()?)?;
                }
            }
            None if json => print!("{}", self.to_json()?),
            None => print!("{}", self.to_csv()?),
        }
        Ok(())
    }
}

fn header_with(s: &Scenario, extra: Vec<(&str, f64)>) -> Vec<(String, String)> {
    let mut h = s.resolved_pairs();
    h.extend(extra.into_iter().map(|(k, v)| (k.to_string(), v.to_string())));
    h
}

/// Single-point breakdown at the expected line.
pub fn cmd_keyrate(s: &Scenario) -> Result<Report> {
    let p = &s.params;
    let nb = noise_budget(p);
    let pb = parabola(p);
    let vy = s.expected_vy(p);
    let kp = min_key_rate_at_vy(p, vy)?;
    let rows: Vec<(&str, Cell)> = vec![
        ("V", ebs_variance(p).into()),
        ("chi_linex", nb.chi_linex.into()),
        ("chi_hom", nb.chi_hom.into()),
        ("chi_totx", nb.chi_totx.into()),
        ("c0", pb.c0.into()),
        ("v0", pb.v0.into()),
        ("k", pb.k.into()),
        ("expected_vy", vy.into()),
        ("i_ab", mutual_information(p).into()),
        ("i_ab_conditioned", mutual_information_conditioned(p)?.into()),
        ("chi_be", kp.chi_be.into()),
        ("delta_i_min", kp.delta_i.into()),
        ("c_y_min", kp.c_y_at_min.into()),
        ("on_boundary", kp.on_boundary.into()),
    ];
    Ok(Report {
        command: "keyrate",
        header: s.resolved_pairs(),
        columns: vec!["quantity".into(), "value".into()],
        rows: rows.into_iter().map(|(k, v)| vec![Cell::from(k), v]).collect(),
    })
}

/// Physical-region boundary, safe line and expected line over the `V_y` grid.
pub fn cmd_region(s: &Scenario) -> Result<Report> {
    let p = &s.params;
    let pb = parabola(p);
    let grid = s.vy_grid(p);
    let line = safe_line(p, &grid)?;
    let vy_expected = s.expected_vy(p);
    let rows = grid
        .iter()
        .zip(&line)
        .map(|(&vy, kp)| {
            let (lo, hi) = pb.interval(vy)?;
            Ok(vec![
                vy.into(),
                lo.into(),
                hi.into(),
                kp.c_y_at_min.into(),
                kp.delta_i.into(),
                kp.chi_be.into(),
                kp.on_boundary.into(),
                vy_expected.into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        command: "region",
        header: header_with(
            s,
            vec![("vertex_v0", pb.v0), ("vertex_c0", pb.c0), ("k", pb.k), ("expected_vy", vy_expected)],
        ),
        columns: [
            "v_y",
            "c_lower",
            "c_upper",
            "c_y_min",
            "delta_i_min",
            "chi_be",
            "on_boundary",
            "expected_vy",
        ]
        .map(String::from)
        .to_vec(),
        rows,
    })
}

fn r_column(r: f64) -> String {
    format!("delta_i_r{r}")
}

/// Minimum key rate at the expected line against distance, one column per r.
pub fn cmd_sweep_distance(s: &Scenario) -> Result<Report> {
    let distances = s.distance_grid();
    let jobs: Vec<(usize, usize)> = (0..distances.len())
        .flat_map(|i| (0..s.r_grid.len()).map(move |j| (i, j)))
        .collect();
    let values = jobs
        .par_iter()
        .map(|&(i, j)| {
            let t = distance_to_transmission(distances[i], s.atten_db_per_km);
            let p = s.params.with_t_x(t)?.with_r(s.r_grid[j])?;
            Ok(min_key_rate_at_vy(&p, s.expected_vy(&p))?.delta_i)
        })
        .collect::<Result<Vec<f64>>>()?;
    let nr = s.r_grid.len();
    let rows = distances
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            let mut row = vec![Cell::Num(d), Cell::Num(distance_to_transmission(d, s.atten_db_per_km))];
            row.extend(values[i * nr..(i + 1) * nr].iter().map(|&v| Cell::Num(v)));
            row
        })
        .collect();
    let mut columns = vec!["distance_km".to_string(), "t_x".to_string()];
    columns.extend(s.r_grid.iter().map(|&r| r_column(r)));
    Ok(Report {
        command: "sweep-distance",
        header: s.resolved_pairs(),
        columns,
        rows,
    })
}

/// Parabola parameters and minimum key rate against r at a fixed channel.
pub fn cmd_sweep_r(s: &Scenario) -> Result<Report> {
    let rows = s
        .r_grid
        .par_iter()
        .map(|&r| {
            let p = s.params.with_r(r)?;
            let pb = parabola(&p);
            let vy = s.expected_vy(&p);
            let kp = min_key_rate_at_vy(&p, vy)?;
            Ok(vec![
                r.into(),
                ebs_variance(&p).into(),
                pb.c0.into(),
                pb.v0.into(),
                pb.k.into(),
                vy.into(),
                kp.i_ab.into(),
                kp.chi_be.into(),
                kp.delta_i.into(),
                kp.c_y_at_min.into(),
                kp.on_boundary.into(),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Report {
        command: "sweep-r",
        header: s.resolved_pairs(),
        columns: [
            "r",
            "V",
            "c0",
            "v0",
            "k",
            "expected_vy",
            "i_ab",
            "chi_be",
            "delta_i_min",
            "c_y_min",
            "on_boundary",
        ]
        .map(String::from)
        .to_vec(),
        rows,
    })
}

/// Monte Carlo run: empirical moments and estimates against the model.
pub fn cmd_simulate(s: &Scenario) -> Result<Report> {
    let cfg = s.sim_config();
    let out = match &s.raw {
        Some(path) => {
            let (out, records) = simulate_with_samples(&cfg)?;
            write_raw_dump(path, &records)?;
            out
        }
        None => simulate(&cfg)?,
    };
    let mut rows: Vec<Vec<Cell>> = moment_checks(&cfg, &out)?
        .into_iter()
        .map(|c| vec![c.name.into(), c.empirical.into(), c.analytic.into(), c.std_err.into(), c.z().into()])
        .collect();
    let e = &out.estimates;
    for (name, hat, truth, se) in [
        ("t_x_hat", e.t_x_hat, cfg.params.t_x(), e.t_x_se),
        ("eps_x_hat", e.eps_x_hat, cfg.params.eps_x(), e.eps_x_se),
        ("v_y_hat", e.v_y_hat, cfg.true_v_y(), e.v_y_se),
    ] {
        rows.push(vec![name.into(), hat.into(), truth.into(), se.into(), ((hat - truth) / se).into()]);
    }
    Ok(Report {
        command: "simulate",
        header: header_with(
            s,
            vec![
                ("n_x_sifted", out.n_x_sifted as f64),
                ("n_y_sifted", out.n_y_sifted as f64),
                ("n_revealed", out.n_revealed as f64),
            ],
        ),
        columns: ["quantity", "empirical", "analytic", "std_err", "z"].map(String::from).to_vec(),
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kv(pairs: &[(&str, &str)]) -> Vec<(String, String)> {
        pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
    }

    #[test]
    fn config_text_parsing() {
        let text = "# reference\nr = 1.2   # squeezed\n\n t_x=0.5\nr_grid = 0.8, 1.0\n";
        let pairs = parse_config_text(text).unwrap();
        assert_eq!(pairs, kv(&[("r", "1.2"), ("t_x", "0.5"), ("r_grid", "0.8, 1.0")]));
        assert!(parse_config_text("r 1.2").is_err());
    }

    #[test]
    fn overrides_win_over_file() {
        let s = Scenario::resolve(&kv(&[("r", "1.2"), ("seed", "5")]), &kv(&[("r", "0.9")])).unwrap();
        assert_eq!(s.params.r(), 0.9);
        assert_eq!(s.seed, 5);
        assert_eq!(s.params.t_x(), 0.1);
    }

    #[test]
    fn validation_messages_name_the_field() {
        let err = Scenario::resolve(&kv(&[("eta", "1.5")]), &[]).unwrap_err();
        assert!(err.to_string().contains("`eta`"), "{err}");
        assert!(err.to_string().contains("0 < eta <= 1"), "{err}");
        let err = Scenario::resolve(&kv(&[("r_grid", "1.0,0.8")]), &[]).unwrap_err();
        assert!(err.to_string().contains("strictly increasing"));
        let err = Scenario::resolve(&kv(&[("bogus", "1")]), &[]).unwrap_err();
        assert!(err.to_string().contains("unknown key `bogus`"));
        let err = Scenario::resolve(&kv(&[("reveal_fraction", "1")]), &[]).unwrap_err();
        assert!(err.to_string().contains("reveal_fraction"));
        assert!(Scenario::resolve(&kv(&[("t_x", "abc")]), &[]).is_err());
    }

    #[test]
    fn grids() {
        let s = Scenario::default();
        let d = s.distance_grid();
        assert_eq!(d.len(), 61);
        assert_eq!((d[0], d[60]), (0.0, 60.0));
        let vy = s.vy_grid(&s.params);
        assert_eq!(vy[0], parabola(&s.params).v0);
        assert_eq!(linspace(3.0, 4.0, 1), vec![3.0]);
    }

    #[test]
    fn resolved_pairs_cover_every_key() {
        let pairs = Scenario::default().resolved_pairs();
        let keys: Vec<&str> = pairs.iter().map(|(k, _)| k.as_str()).collect();
        assert_eq!(keys, KEYS);
        // every key in the header is accepted back
        let text: Vec<(String, String)> = pairs
            .into_iter()
            .filter(|(_, v)| v != "default" && v != "none")
            .collect();
        assert_eq!(Scenario::resolve(&text, &[]).unwrap(), Scenario::default());
    }
}
