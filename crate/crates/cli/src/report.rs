use clap::ValueEnum;
use lefforge::grid::GridShape;
use lefforge::VertexSet;
use serde::Serialize;

/// Bumped whenever a JSON field is renamed or removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Human,
    Json,
    Csv,
}

/// Run parameters echoed into every JSON document.
#[derive(Debug, Clone, Serialize)]
pub struct Config {
    pub field: String,
    pub characteristic: u64,
    pub seed: u64,
    pub trials: usize,
    pub budget: Option<u64>,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    config: &'a Config,
    result: &'a T,
}

pub fn json<T: Serialize>(command: &str, config: &Config, result: &T) -> String {
    let doc = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        config,
        result,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("reports are plain data");
    s.push('\n');
    s
}

/// 1-based `[row, column]` pairs.
pub fn cells(shape: GridShape, s: VertexSet) -> Vec<[usize; 2]> {
    shape.cells(s).into_iter().map(|(r, c)| [r, c]).collect()
}

pub fn cell_text(shape: GridShape, s: VertexSet) -> String {
    let parts: Vec<String> = shape
        .cells(s)
        .into_iter()
        .map(|(r, c)| format!("({r},{c})"))
        .collect();
    format!("{{{}}}", parts.join(" "))
}

/// Parses `r,c;r,c;...`.
pub fn parse_cells(text: &str) -> Result<Vec<(usize, usize)>, String> {
    text.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (r, c) = p
                .split_once(',')
                .ok_or_else(|| format!("cell `{p}` is not of the form r,c"))?;
            let r = r.trim().parse().map_err(|_| format!("bad row in `{p}`"))?;
            let c = c
                .trim()
                .parse()
                .map_err(|_| format!("bad column in `{p}`"))?;
            Ok((r, c))
        })
        .collect()
}

pub fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}
